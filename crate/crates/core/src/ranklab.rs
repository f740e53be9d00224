//! Linear relations over `Z[q^±1]` among truncated Habiro elements.
//!
//! A family `x_1, ..., x_K` at level `n` and a degree bound `d` give the
//! space `N_d` of tuples `(c_i)` with `deg c_i <= d` and
//! `Σ c_i x_i ≡ 0 mod (q;q)_n`. It is the degree `<= d` part of a
//! `Q[q]`-module, so it has a minimal basis `g_1, ..., g_s` with
//! `N_d = ⊕_j span{q^t g_j : t <= d - deg g_j}` and `s` is the rank of `N_d`
//! over `Q(q)`. Ordering the shifted columns `q^e x_i` degree first, `g_j`
//! sits at the free column `(i, e)` whose predecessor `(i, e-1)` is a pivot.
//! The generators are reconstructed exactly from residues modulo word primes
//! and checked over `Z`; since modular ranks never exceed rational ranks, a
//! full set of exactly verified generators pins every rank down.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::dense::modulus;
use crate::error::{Error, Result};
use crate::habiro::HabiroTrunc;
use crate::qlaurent::LaurentPoly;

/// Gives up on exact reconstruction beyond this many primes.
const MAX_PRIMES: usize = 1 << 14;

/// Word-sized primes below `2^31`, largest first.
pub(crate) fn primes() -> impl Iterator<Item = u64> {
    (1u64 << 20..1u64 << 31)
        .rev()
        .filter(|&p| p % 2 == 1 && is_prime(p))
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub(crate) fn residue(x: &BigInt, p: u64) -> u64 {
    let r = (x % p).to_i64().expect("residue fits");
    if r < 0 {
        (r + p as i64) as u64
    } else {
        r as u64
    }
}

/// Reduced row echelon form modulo `p` of a row-major matrix.
pub(crate) struct Echelon {
    pub pivots: Vec<usize>,
    /// Original indices of the rows that produced the pivots.
    pub pivot_rows: Vec<usize>,
    /// `pivots.len()` reduced rows.
    pub rows: Vec<Vec<u64>>,
}

pub(crate) fn echelon_mod(mut a: Vec<Vec<u64>>, ncols: usize, p: u64) -> Echelon {
    let mut order: Vec<usize> = (0..a.len()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        let Some(s) = (r..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, s);
        order.swap(r, s);
        let inv = inv_mod(a[r][c], p);
        for x in a[r][c..].iter_mut() {
            *x = *x * inv % p;
        }
        let (head, tail) = a.split_at_mut(r);
        let (prow, rest) = tail.split_first_mut().expect("row r exists");
        for row in head.iter_mut().chain(rest.iter_mut()) {
            let f = row[c];
            if f == 0 {
                continue;
            }
            let g = p - f;
            for (x, y) in row[c..].iter_mut().zip(&prow[c..]) {
                *x = (*x + g * y) % p;
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    order.truncate(r);
    Echelon {
        pivots,
        pivot_rows: order,
        rows: a,
    }
}

/// `a/b ≡ x mod m` with `|a|, b <= sqrt(m/2)`.
fn rational_reconstruction(x: &BigInt, m: &BigInt) -> Option<(BigInt, BigInt)> {
    let bound = (m >> 1u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), x.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let (qt, r2) = r0.div_rem(&r1);
        let t2 = &t0 - &qt * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    if t1.is_negative() {
        Some((-r1, -t1))
    } else {
        Some((r1, t1))
    }
}

/// `Σ coeffs[i] · x_i ≡ 0 mod (q;q)_n` for the members named in `members`,
/// each taken with its offset factored out (`x_i = q^(-offset/4) · value`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationCertificate {
    pub members: Vec<String>,
    pub coeffs: Vec<LaurentPoly>,
    pub verified_level: usize,
}

/// `Σ c_i x_i mod (q;q)_n`, zero exactly when the relation holds.
pub fn relation_residue(coeffs: &[LaurentPoly], family: &[HabiroTrunc]) -> Result<HabiroTrunc> {
    if coeffs.len() != family.len() {
        return Err(Error::InvalidArgument(format!(
            "{} coefficients for {} members",
            coeffs.len(),
            family.len()
        )));
    }
    let n = common_level(family)?.unwrap_or(0);
    let m = modulus(n);
    let mut acc = vec![BigInt::zero(); m.degree];
    for (c, x) in coeffs.iter().zip(family) {
        let a = m.reduce_laurent(c)?;
        let b = m.reduce_laurent(x.rep())?;
        for (s, t) in acc.iter_mut().zip(m.mul(&a, &b)) {
            *s += t;
        }
    }
    HabiroTrunc::from_rep(n, 0, &m.to_laurent(&acc))
}

fn common_level(family: &[HabiroTrunc]) -> Result<Option<usize>> {
    let Some(first) = family.first() else {
        return Ok(None);
    };
    let n = first.level();
    if let Some(x) = family.iter().find(|x| x.level() != n) {
        return Err(Error::LevelMismatch(n, x.level()));
    }
    Ok(Some(n))
}

/// Columns `q^e x_i mod (q;q)_n`, degree first: column `e*K + i`.
fn shifted_columns(family: &[HabiroTrunc], d: usize) -> Result<Vec<Vec<BigInt>>> {
    let Some(n) = common_level(family)? else {
        return Ok(Vec::new());
    };
    let m = modulus(n);
    let mut by_member: Vec<Vec<Vec<BigInt>>> = Vec::with_capacity(family.len());
    for x in family {
        let mut v = m.reduce_laurent(x.rep())?;
        let mut shifts = Vec::with_capacity(d + 1);
        for e in 0..=d {
            if e > 0 {
                v = m.shift(&v, 1);
            }
            shifts.push(v.clone());
        }
        by_member.push(shifts);
    }
    let k = family.len();
    Ok((0..(d + 1) * k)
        .map(|j| std::mem::take(&mut by_member[j % k][j / k]))
        .collect())
}

fn rows_mod(cols: &[Vec<BigInt>], rows: &[usize], keep: &[usize], p: u64) -> Vec<Vec<u64>> {
    rows.iter()
        .map(|&i| keep.iter().map(|&j| residue(&cols[j][i], p)).collect())
        .collect()
}

/// Exact data of the relation space `N_d`.
struct RelationSpace {
    k: usize,
    /// `image_ranks[e]` is the rank of the columns of degree `<= e`.
    image_ranks: Vec<usize>,
    /// Minimal generators as `(column, integer vector over all columns)`.
    generators: Vec<(usize, Vec<BigInt>)>,
}

fn relation_space(family: &[HabiroTrunc], d: usize) -> Result<RelationSpace> {
    let k = family.len();
    let cols = shifted_columns(family, d)?;
    let ncols = cols.len();
    let nrows = cols.first().map_or(0, Vec::len);
    let all_rows: Vec<usize> = (0..nrows).collect();
    let all_cols: Vec<usize> = (0..ncols).collect();

    // reference echelon: the larger rank of two primes
    let mut ps = primes();
    let mut best: Option<Echelon> = None;
    for _ in 0..2 {
        let p = ps.next().expect("enough primes");
        let e = echelon_mod(rows_mod(&cols, &all_rows, &all_cols, p), ncols, p);
        if best.as_ref().map_or(true, |b| e.pivots.len() > b.pivots.len()) {
            best = Some(e);
        }
    }
    let reference = best.expect("two primes tried");
    let mut is_pivot = vec![false; ncols];
    for &c in &reference.pivots {
        is_pivot[c] = true;
    }
    let image_ranks: Vec<usize> = (0..=d)
        .map(|e| reference.pivots.iter().filter(|&&c| c < (e + 1) * k).count())
        .collect();
    let gen_cols: Vec<usize> = (0..ncols)
        .filter(|&j| !is_pivot[j] && (j < k || is_pivot[j - k]))
        .collect();
    let Some(&last) = gen_cols.last() else {
        return Ok(RelationSpace {
            k,
            image_ranks,
            generators: Vec::new(),
        });
    };
    let used_pivots: Vec<usize> = reference.pivots.iter().copied().filter(|&c| c < last).collect();
    let used_rows: Vec<usize> = reference.pivot_rows[..used_pivots.len()].to_vec();
    let mut keep: Vec<usize> = used_pivots.iter().chain(&gen_cols).copied().collect();
    keep.sort_unstable();
    let pos = |c: usize| keep.binary_search(&c).expect("kept column");
    let expected: Vec<usize> = used_pivots.iter().map(|&c| pos(c)).collect();

    // (generator, pivot row) pairs whose reduced entries are reconstructed
    let entries: Vec<(usize, usize)> = gen_cols
        .iter()
        .enumerate()
        .flat_map(|(gi, &g)| {
            used_pivots
                .iter()
                .take_while(move |&&c| c < g)
                .enumerate()
                .map(move |(t, _)| (gi, t))
        })
        .collect();
    let mut acc = vec![BigInt::zero(); entries.len()];
    let mut m = BigInt::one();
    let mut used = 0usize;
    let mut next_try = 2usize;
    let mut done: Vec<Option<Vec<BigInt>>> = vec![None; gen_cols.len()];
    for p in primes() {
        if used >= MAX_PRIMES {
            return Err(Error::LinearAlgebra(format!(
                "relation vectors not reconstructed with {MAX_PRIMES} primes"
            )));
        }
        let ech = echelon_mod(rows_mod(&cols, &used_rows, &keep, p), keep.len(), p);
        if ech.pivots != expected {
            continue;
        }
        let minv = inv_mod(residue(&m, p), p);
        for (slot, &(gi, t)) in acc.iter_mut().zip(&entries) {
            if done[gi].is_some() {
                continue;
            }
            let a = ech.rows[t][pos(gen_cols[gi])];
            let diff = (a + p - residue(slot, p)) % p;
            *slot += &m * (diff * minv % p);
        }
        m *= p;
        used += 1;
        if used < next_try {
            continue;
        }
        next_try = used + used.div_ceil(4).max(2);
        let mut start = 0;
        for (gi, &g) in gen_cols.iter().enumerate() {
            let count = entries[start..].iter().take_while(|e| e.0 == gi).count();
            let slice = &acc[start..start + count];
            start += count;
            if done[gi].is_some() {
                continue;
            }
            if let Some(v) = lift_vector(slice, &m, &used_pivots, g, ncols) {
                if is_relation(&cols, &v) {
                    done[gi] = Some(v);
                }
            }
        }
        if done.iter().all(Option::is_some) {
            break;
        }
    }
    let generators = gen_cols
        .into_iter()
        .zip(done)
        .map(|(g, v)| (g, v.expect("all reconstructed")))
        .collect();
    Ok(RelationSpace {
        k,
        image_ranks,
        generators,
    })
}

/// The primitive integer multiple of `e_g - Σ_t R[t][g] e_(pivot t)`.
fn lift_vector(
    residues: &[BigInt],
    m: &BigInt,
    pivots: &[usize],
    g: usize,
    ncols: usize,
) -> Option<Vec<BigInt>> {
    let mut den = BigInt::one();
    let mut nums = Vec::with_capacity(residues.len());
    for x in residues {
        let (a, b) = rational_reconstruction(&(x * &den), m)?;
        if !b.is_one() {
            for y in nums.iter_mut() {
                *y *= &b;
            }
            den *= &b;
        }
        nums.push(a);
    }
    let mut v = vec![BigInt::zero(); ncols];
    v[g] = den;
    for (a, &c) in nums.into_iter().zip(pivots) {
        v[c] = -a;
    }
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g > BigInt::one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
    Some(v)
}

fn is_relation(cols: &[Vec<BigInt>], v: &[BigInt]) -> bool {
    let nrows = cols.first().map_or(0, Vec::len);
    let support: Vec<usize> = (0..v.len()).filter(|&j| !v[j].is_zero()).collect();
    (0..nrows).all(|i| {
        support
            .iter()
            .map(|&j| &v[j] * &cols[j][i])
            .sum::<BigInt>()
            .is_zero()
    })
}

/// Splits a vector over the shifted columns into one polynomial per member.
fn member_polys(v: &[BigInt], k: usize) -> Vec<Vec<BigInt>> {
    (0..k)
        .map(|i| v.iter().skip(i).step_by(k).cloned().collect())
        .collect()
}

/// Exact rank over `Q` by fraction-free elimination.
fn bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let ncols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        let Some(s) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, s);
        for i in r + 1..a.len() {
            for j in c + 1..ncols {
                let x = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = x / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Rank over `Q(q)` of polynomial vectors with entries of degree `<= d`
/// (coefficient lists in `q`): the largest exact rank at the points
/// `2, 3, ...`, continued until no larger minor can survive, since a
/// nonzero minor of size `s` vanishes at no more than `s*d` points.
pub(crate) fn function_field_rank(vectors: &[Vec<Vec<BigInt>>], d: usize) -> usize {
    let Some(width) = vectors.first().map(Vec::len) else {
        return 0;
    };
    let cap = vectors.len().min(width);
    let mut best = 0;
    let mut point = 2i64;
    let mut tried = 0usize;
    while best < cap && tried <= (best + 1) * d {
        let x = BigInt::from(point);
        let rows: Vec<Vec<BigInt>> = vectors
            .iter()
            .map(|v| {
                v.iter()
                    .map(|c| c.iter().rev().fold(BigInt::zero(), |acc, a| acc * &x + a))
                    .collect()
            })
            .collect();
        best = best.max(bareiss_rank(rows));
        tried += 1;
        point += 1;
    }
    best
}

/// A rank estimate labeled by the window `(level, degree)` it was computed in.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankEstimate {
    pub level: usize,
    pub degree: usize,
    pub family_size: usize,
    /// `|family|` minus the rank of the relation vectors over `Q(q)`.
    pub rank: usize,
    /// Dimension over `Q` of the span of `{q^e x_i : e <= t}` for `t = 0..=degree`.
    pub image_ranks: Vec<usize>,
    pub certificates: Vec<RelationCertificate>,
}

fn certificates(
    family: &[(String, HabiroTrunc)],
    n: usize,
    space: &RelationSpace,
) -> Vec<RelationCertificate> {
    let members: Vec<String> = family.iter().map(|(id, _)| id.clone()).collect();
    space
        .generators
        .iter()
        .map(|(_, v)| RelationCertificate {
            members: members.clone(),
            coeffs: member_polys(v, space.k)
                .iter()
                .map(|c| LaurentPoly::from_q_coeffs(c))
                .collect(),
            verified_level: n,
        })
        .collect()
}

/// Minimal relations of degree `<= d` among the members of `family`; every
/// relation of degree `<= d` is a `Q[q]`-combination of them.
pub fn relation_search(
    family: &[(String, HabiroTrunc)],
    d: usize,
) -> Result<Vec<RelationCertificate>> {
    let values: Vec<HabiroTrunc> = family.iter().map(|(_, x)| x.clone()).collect();
    let n = common_level(&values)?.unwrap_or(0);
    let space = relation_space(&values, d)?;
    Ok(certificates(family, n, &space))
}

/// Projects `family` to level `n` and estimates the rank of its span over
/// `Z[q^±1]` using relations of degree `<= d`.
pub fn rank_estimate(
    family: &[(String, HabiroTrunc)],
    n: usize,
    d: usize,
) -> Result<RankEstimate> {
    let projected: Vec<(String, HabiroTrunc)> = family
        .iter()
        .map(|(id, x)| Ok((id.clone(), x.project(n)?)))
        .collect::<Result<_>>()?;
    let values: Vec<HabiroTrunc> = projected.iter().map(|(_, x)| x.clone()).collect();
    let space = relation_space(&values, d)?;
    let k = family.len();
    let shifted: usize = space.generators.iter().map(|(g, _)| d + 1 - g / k).sum();
    let image = space.image_ranks.last().copied().unwrap_or(0);
    if shifted + image != k * (d + 1) {
        return Err(Error::LinearAlgebra(format!(
            "{shifted} shifted relations against an image of rank {image} in {} columns",
            k * (d + 1)
        )));
    }
    let vectors: Vec<Vec<Vec<BigInt>>> = space
        .generators
        .iter()
        .map(|(_, v)| member_polys(v, k))
        .collect();
    let rho = function_field_rank(&vectors, d);
    if rho != space.generators.len() {
        return Err(Error::LinearAlgebra(format!(
            "{} minimal relations but rank {rho} over Q(q)",
            space.generators.len()
        )));
    }
    Ok(RankEstimate {
        level: n,
        degree: d,
        family_size: k,
        rank: k - rho,
        image_ranks: space.image_ranks.clone(),
        certificates: certificates(&projected, n, &space),
    })
}

/// Whether `coeffs` is a `Q[q]`-combination of the certificates, all of
/// degree `<= d` and with nonnegative exponents.
pub fn spans_relation(
    certs: &[RelationCertificate],
    coeffs: &[LaurentPoly],
    d: usize,
) -> Result<bool> {
    let flat = |c: &[LaurentPoly], t: i64| -> Result<Vec<BigInt>> {
        if c.len() != coeffs.len() {
            return Err(Error::InvalidArgument("certificates of different sizes".into()));
        }
        let mut out = Vec::with_capacity(c.len() * (d + 1));
        for p in c {
            if let Some(e) = p.terms().map(|(e, _)| e).find(|&e| e % 4 != 0 || e < 0 || e / 4 + t > d as i64) {
                return Err(Error::InvalidArgument(format!("exponent q^({e}/4) outside 0..=d")));
            }
            out.extend((0..=d as i64).map(|e| p.coeff(4 * (e - t))));
        }
        Ok(out)
    };
    let mut rows = Vec::new();
    for c in certs {
        let deg = c
            .coeffs
            .iter()
            .filter_map(LaurentPoly::max_exponent)
            .max()
            .unwrap_or(0)
            / 4;
        for t in 0..=(d as i64 - deg) {
            rows.push(flat(&c.coeffs, t)?);
        }
    }
    let before = bareiss_rank(rows.clone());
    rows.push(flat(coeffs, 0)?);
    Ok(bareiss_rank(rows) == before)
}

/// Outcome of re-checking a certificate at a higher level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCheck {
    pub level: usize,
    /// `Σ c_i x_i mod (q;q)_level`; zero when the relation persists.
    pub residue: HabiroTrunc,
}

impl RelationCheck {
    pub fn holds(&self) -> bool {
        self.residue.is_zero()
    }
}

/// Recomputes the members at level `n` and re-checks the relation, raising
/// `verified_level` when it holds.
pub fn verify_relation<F>(
    cert: &mut RelationCertificate,
    n: usize,
    mut recompute: F,
) -> Result<RelationCheck>
where
    F: FnMut(&str, usize) -> Result<HabiroTrunc>,
{
    if n <= cert.verified_level {
        return Err(Error::InvalidArgument(format!(
            "level {n} is not above the verified level {}",
            cert.verified_level
        )));
    }
    if cert.coeffs.iter().all(LaurentPoly::is_zero) {
        return Err(Error::InvalidArgument("all coefficients are zero".into()));
    }
    let family: Vec<HabiroTrunc> = cert
        .members
        .iter()
        .map(|id| recompute(id, n))
        .collect::<Result<_>>()?;
    let residue = relation_residue(&cert.coeffs, &family)?;
    if residue.is_zero() {
        cert.verified_level = n;
    }
    Ok(RelationCheck { level: n, residue })
}
