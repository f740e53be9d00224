//! Invariants of `M = S³_{K,-1/b}` and of the surgery core colored by `V_m`.
//!
//! `I_M = Σ_k J_K(P'_k) α^(b)_k(q)` with
//! `α^(b)_k = q^(k(k+3)/4) Σ_{k>=ℓ_1>=...>=ℓ_(b-1)>=0} q^(Σ ℓ_j(ℓ_j+1)) (q;q)_k / (...)`,
//! its descendants (monomial weights `q^(k m_0 + Σ ℓ_j m_j)`), colored
//! insertions, cables, and the rewriting of colored invariants as
//! combinations of descendants.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cyclo::{cyclo_from_laurent, CyclotomicNumber};
use crate::dense::{self, add_assign_vec, PochhammerModulus};
use crate::error::{Error, Result};
use crate::habiro::HabiroTrunc;
use crate::knotdata::KnotOracle;
use crate::qlaurent::{pochhammer, LaurentPoly};
use crate::reptheory::{cable_expand, gamma_coeff, gamma_quotient, TwoVarLaurent};

/// How the denominator of the general-`b` kernel is read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelReading {
    /// `(q;q)_(ℓ_1) (q;q)_(ℓ_1-ℓ_2) ... (q;q)_(ℓ_(b-2)-ℓ_(b-1)) (q;q)_(ℓ_(b-1))`.
    Literal,
    /// `(q;q)_(k-ℓ_1) (q;q)_(ℓ_1-ℓ_2) ... (q;q)_(ℓ_(b-2)-ℓ_(b-1)) (q;q)_(ℓ_(b-1))`,
    /// a product of Gaussian binomials.
    Multinomial,
}

/// Which readings reproduce the `b = 2` kernel `q^(k(k+3)/4+ℓ(ℓ+1)) [k, ℓ]_q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReadingReport {
    pub selected: KernelReading,
    pub literal_matches: bool,
    pub multinomial_matches: bool,
    pub max_k: usize,
}

fn qq(n: usize) -> LaurentPoly {
    pochhammer(n as u32, 0)
}

fn check_tuple(b: usize, k: usize, ells: &[usize]) -> Result<()> {
    if b == 0 {
        return Err(Error::InvalidArgument("b must be >= 1".into()));
    }
    if ells.len() != b - 1 {
        return Err(Error::InvalidArgument(format!(
            "b = {b} needs {} inner indices, got {}",
            b - 1,
            ells.len()
        )));
    }
    let mut prev = k;
    for &l in ells {
        if l > prev {
            return Err(Error::IndexOrder(format!(
                "need k >= ℓ_1 >= ... >= 0, got k = {k}, ℓ = {ells:?}"
            )));
        }
        prev = l;
    }
    Ok(())
}

pub fn kernel_alpha_with(
    reading: KernelReading,
    b: usize,
    k: usize,
    ells: &[usize],
) -> Result<LaurentPoly> {
    check_tuple(b, k, ells)?;
    let ki = k as i64;
    let mut exponent = ki * (ki + 3);
    for &l in ells {
        let l = l as i64;
        exponent += 4 * l * (l + 1);
    }
    if b == 1 {
        return Ok(LaurentPoly::monomial(1, exponent));
    }
    let first = match reading {
        KernelReading::Literal => ells[0],
        KernelReading::Multinomial => k - ells[0],
    };
    let mut den = qq(first);
    for w in ells.windows(2) {
        den = &den * &qq(w[0] - w[1]);
    }
    den = &den * &qq(ells[b - 2]);
    Ok(qq(k).exact_div(&den)?.shift(exponent))
}

/// Compares both readings with the `b = 2` formula for `k <= 8` and picks the
/// first one that matches, preferring the literal text.
pub fn kernel_reading_report() -> &'static ReadingReport {
    static REPORT: OnceLock<ReadingReport> = OnceLock::new();
    REPORT.get_or_init(|| {
        let max_k = 8;
        let matches = |reading| {
            (0..=max_k).all(|k| {
                (0..=k).all(|l| {
                    let ki = k as i64;
                    let li = l as i64;
                    let expected = qq(k)
                        .exact_div(&(&qq(l) * &qq(k - l)))
                        .expect("Gaussian binomial")
                        .shift(ki * (ki + 3) + 4 * li * (li + 1));
                    kernel_alpha_with(reading, 2, k, &[l]).ok() == Some(expected)
                })
            })
        };
        let literal_matches = matches(KernelReading::Literal);
        let multinomial_matches = matches(KernelReading::Multinomial);
        let selected = if literal_matches {
            KernelReading::Literal
        } else {
            KernelReading::Multinomial
        };
        ReadingReport {
            selected,
            literal_matches,
            multinomial_matches,
            max_k,
        }
    })
}

/// `α^(b)_(k, ℓ)` under the selected reading.
pub fn kernel_alpha(b: usize, k: usize, ells: &[usize]) -> Result<LaurentPoly> {
    kernel_alpha_with(kernel_reading_report().selected, b, k, ells)
}

/// A member of the descendant family `I^(m_0, ..., m_(b-1))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DescendantSpec {
    pub b: usize,
    pub shifts: Vec<i64>,
    pub level: usize,
}

impl DescendantSpec {
    pub fn new(b: usize, shifts: Vec<i64>, level: usize) -> Result<Self> {
        let s = DescendantSpec { b, shifts, level };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.b == 0 {
            return Err(Error::InvalidArgument("b must be >= 1".into()));
        }
        if self.shifts.len() != self.b {
            return Err(Error::InvalidArgument(format!(
                "b = {} needs {} shifts, got {}",
                self.b,
                self.b,
                self.shifts.len()
            )));
        }
        if self.level == 0 {
            return Err(Error::InvalidArgument("level must be >= 1".into()));
        }
        Ok(())
    }
}

/// Cut-off of the outer sum. Every term with `k > kmax` lies in `((q;q)_n)`
/// when `kmax >= n - 1`, since the `k`-th summand is divisible by `(q;q)_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SummationBound {
    pub kmax: usize,
}

impl SummationBound {
    pub fn for_level(level: usize) -> Self {
        SummationBound {
            kmax: level.saturating_sub(1),
        }
    }
}

/// Precomputed data for sums at one truncation level.
pub struct Evaluator {
    level: usize,
    kmax: usize,
    modulus: Arc<PochhammerModulus>,
    coeffs: Vec<LaurentPoly>,
    /// `J(P'_k) q^(k(k+3)/4)` reduced mod `(q;q)_n`.
    base: Vec<Vec<BigInt>>,
    /// `gauss[k][ℓ] = [k, ℓ]_q`.
    gauss: Vec<Vec<LaurentPoly>>,
}

impl Evaluator {
    /// Supports colors up to `max_color`.
    pub fn new(o: &KnotOracle, level: usize, max_color: usize) -> Result<Self> {
        Self::with_bound(o, level, SummationBound::for_level(level), max_color)
    }

    pub fn with_bound(
        o: &KnotOracle,
        level: usize,
        bound: SummationBound,
        max_color: usize,
    ) -> Result<Self> {
        if level == 0 {
            return Err(Error::InvalidArgument("level must be >= 1".into()));
        }
        let kmax = bound.kmax;
        let coeffs = o.coeffs_upto(kmax + max_color)?;
        let modulus = dense::modulus(level);
        let base = (0..=kmax)
            .into_par_iter()
            .map(|k| {
                let ki = k as i64;
                modulus.reduce_laurent(&coeffs[k].shift(ki * (ki + 3)))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut gauss: Vec<Vec<LaurentPoly>> = Vec::with_capacity(kmax + 1);
        for k in 0..=kmax {
            let mut row = Vec::with_capacity(k + 1);
            for l in 0..=k {
                row.push(if l == 0 || l == k {
                    LaurentPoly::one()
                } else {
                    &gauss[k - 1][l - 1] + &gauss[k - 1][l].shift(4 * l as i64)
                });
            }
            gauss.push(row);
        }
        Ok(Evaluator {
            level,
            kmax,
            modulus,
            coeffs,
            base,
            gauss,
        })
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn kmax(&self) -> usize {
        self.kmax
    }

    fn max_color(&self) -> usize {
        self.coeffs.len() - 1 - self.kmax
    }

    /// `α^(b)_k q^(-k(k+3)/4)` summed over the inner indices with weights
    /// `q^(Σ ℓ_j m_j)`, for every `k <= kmax`.
    fn inner_sums(&self, b: usize, tail: &[i64]) -> Result<Vec<LaurentPoly>> {
        if b == 1 {
            return Ok(vec![LaurentPoly::one(); self.kmax + 1]);
        }
        match kernel_reading_report().selected {
            KernelReading::Multinomial => Ok(self.inner_sums_multinomial(b, tail)),
            reading => self.inner_sums_direct(reading, b, tail),
        }
    }

    fn inner_sums_multinomial(&self, b: usize, tail: &[i64]) -> Vec<LaurentPoly> {
        let weight = |l: usize, m: i64| {
            let l = l as i64;
            LaurentPoly::q_pow(l * (l + 1) + l * m)
        };
        let n = self.kmax + 1;
        let mut t: Vec<LaurentPoly> = (0..n).map(|l| weight(l, tail[b - 2])).collect();
        for j in (0..b - 2).rev() {
            t = (0..n)
                .into_par_iter()
                .map(|l| {
                    let s: LaurentPoly = (0..=l).map(|lp| &self.gauss[l][lp] * &t[lp]).sum();
                    &weight(l, tail[j]) * &s
                })
                .collect();
        }
        (0..n)
            .into_par_iter()
            .map(|k| (0..=k).map(|l| &self.gauss[k][l] * &t[l]).sum())
            .collect()
    }

    fn inner_sums_direct(
        &self,
        reading: KernelReading,
        b: usize,
        tail: &[i64],
    ) -> Result<Vec<LaurentPoly>> {
        (0..=self.kmax)
            .map(|k| {
                let ki = k as i64;
                let mut acc = LaurentPoly::zero();
                for ells in tuples(k, b - 1) {
                    let w: i64 = ells.iter().zip(tail).map(|(&l, m)| l as i64 * m).sum();
                    acc += kernel_alpha_with(reading, b, k, &ells)?.shift(4 * w - ki * (ki + 3));
                }
                Ok(acc)
            })
            .collect()
    }

    fn finish(&self, terms: Vec<Vec<BigInt>>, offset: i64) -> HabiroTrunc {
        let mut acc = vec![BigInt::default(); self.modulus.degree];
        for t in &terms {
            add_assign_vec(&mut acc, t);
        }
        HabiroTrunc::from_canonical(self.level, offset, self.modulus.to_laurent(&acc))
    }

    /// `Σ_k J(P'_k) α^(b)_k q^(k m_0 + Σ ℓ_j m_j)`.
    pub fn descendant(&self, b: usize, shifts: &[i64]) -> Result<HabiroTrunc> {
        DescendantSpec::new(b, shifts.to_vec(), self.level)?;
        let inner = self.inner_sums(b, &shifts[1..])?;
        let m0 = shifts[0];
        let terms = (0..=self.kmax)
            .into_par_iter()
            .map(|k| {
                let s = k as i64 * m0;
                if b == 1 {
                    return Ok(self.modulus.shift(&self.base[k], s));
                }
                let w = self.modulus.reduce_laurent(&inner[k].shift(4 * s))?;
                Ok(self.modulus.mul(&self.base[k], &w))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.finish(terms, 0))
    }

    pub fn invariant(&self, b: usize) -> Result<HabiroTrunc> {
        self.descendant(b, &vec![0; b])
    }

    fn check_color(&self, m: usize) -> Result<()> {
        if m > self.max_color() {
            return Err(Error::OracleTooShort {
                needed: self.kmax + m,
                available: self.coeffs.len() - 1,
            });
        }
        Ok(())
    }

    /// `Σ_j γ^j_m(v, v^k) J(P'_(k+j)) q^(k(k+3)/4)`.
    fn colored_core(&self, gammas: &[TwoVarLaurent], k: usize) -> LaurentPoly {
        let ki = k as i64;
        gammas
            .iter()
            .enumerate()
            .map(|(j, g)| &g.eval(ki) * &self.coeffs[k + j])
            .sum::<LaurentPoly>()
            .shift(ki * (ki + 3))
    }

    fn gammas(m: usize) -> Result<Vec<TwoVarLaurent>> {
        (0..=m as i64).map(|j| gamma_coeff(j, m as i64)).collect()
    }

    /// The surgery core colored by `V_m`; the offset is `2m`.
    pub fn colored(&self, b: usize, m: usize) -> Result<HabiroTrunc> {
        self.check_color(m)?;
        let gammas = Self::gammas(m)?;
        let inner = self.inner_sums(b, &vec![0; b.saturating_sub(1)])?;
        let g = 2 * m as i64;
        let terms = (0..=self.kmax)
            .into_par_iter()
            .map(|k| {
                let core = self.modulus.reduce_laurent(&self.colored_core(&gammas, k).shift(-g))?;
                if b == 1 {
                    return Ok(core);
                }
                let w = self.modulus.reduce_laurent(&inner[k])?;
                Ok(self.modulus.mul(&core, &w))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.finish(terms, g))
    }

    /// The `k`-th summand of [`Self::colored`] as an exact Laurent polynomial.
    pub fn colored_summand(&self, b: usize, m: usize, k: usize) -> Result<LaurentPoly> {
        self.check_color(m)?;
        if k > self.kmax {
            return Err(Error::OracleTooShort {
                needed: k,
                available: self.kmax,
            });
        }
        let gammas = Self::gammas(m)?;
        let inner = self.inner_sums(b, &vec![0; b.saturating_sub(1)])?;
        Ok(&self.colored_core(&gammas, k) * &inner[k])
    }

    /// `φ(K^(m)) = (-1)^m Σ_ℓ c_(m,ℓ) I_(M, K_ℓ)`.
    pub fn phi_cable(&self, b: usize, m: usize) -> Result<HabiroTrunc> {
        let mut acc = HabiroTrunc::zero(self.level)?;
        for (l, c) in cable_expand(m) {
            acc = acc.add(&self.colored(b, l)?.scale(&LaurentPoly::constant(c))?)?;
        }
        let sign = if m % 2 == 1 { -1 } else { 1 };
        acc.scale(&LaurentPoly::constant(sign))
    }

    /// `φ(K^(m))` for `m = 0..=mmax`, sharing the colored invariants.
    pub fn cable_family(&self, b: usize, mmax: usize) -> Result<Vec<HabiroTrunc>> {
        let colored = (0..=mmax)
            .map(|l| self.colored(b, l))
            .collect::<Result<Vec<_>>>()?;
        (0..=mmax)
            .map(|m| {
                let mut acc = HabiroTrunc::zero(self.level)?;
                for (l, c) in cable_expand(m) {
                    acc = acc.add(&colored[l].scale(&LaurentPoly::constant(c))?)?;
                }
                let sign = if m % 2 == 1 { -1 } else { 1 };
                acc.scale(&LaurentPoly::constant(sign))
            })
            .collect()
    }

    /// `Σ_k (-1)^k J(P'_k) q^(-k(k+3)/4)`, the invariant of `+1` surgery.
    pub fn invariant_positive(&self) -> Result<HabiroTrunc> {
        let terms = (0..=self.kmax)
            .into_par_iter()
            .map(|k| {
                let ki = k as i64;
                let c = self.coeffs[k].shift(-ki * (ki + 3));
                let c = if k % 2 == 0 { c } else { -c };
                self.modulus.reduce_laurent(&c)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.finish(terms, 0))
    }
}

/// Non-increasing tuples `k >= ℓ_1 >= ... >= ℓ_len >= 0`.
fn tuples(k: usize, len: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for l in 0..=k {
        for mut rest in tuples(l, len - 1) {
            rest.insert(0, l);
            out.push(rest);
        }
    }
    out
}

pub fn descendant(o: &KnotOracle, spec: &DescendantSpec) -> Result<HabiroTrunc> {
    spec.validate()?;
    Evaluator::new(o, spec.level, 0)?.descendant(spec.b, &spec.shifts)
}

pub fn descendant_with_bound(
    o: &KnotOracle,
    spec: &DescendantSpec,
    bound: SummationBound,
) -> Result<HabiroTrunc> {
    spec.validate()?;
    Evaluator::with_bound(o, spec.level, bound, 0)?.descendant(spec.b, &spec.shifts)
}

pub fn invariant(o: &KnotOracle, b: usize, level: usize) -> Result<HabiroTrunc> {
    Evaluator::new(o, level, 0)?.invariant(b)
}

/// Orientation reversal, `q -> q^-1`.
pub fn mirror(x: &HabiroTrunc) -> HabiroTrunc {
    x.mirror()
}

pub fn colored_invariant(o: &KnotOracle, b: usize, m: usize, level: usize) -> Result<HabiroTrunc> {
    Evaluator::new(o, level, m)?.colored(b, m)
}

pub fn phi_cable(o: &KnotOracle, b: usize, m: usize, level: usize) -> Result<HabiroTrunc> {
    Evaluator::new(o, level, m)?.phi_cable(b, m)
}

/// A colored invariant written as `constant + Σ coeff · I^(shifts)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub b: usize,
    pub color: usize,
    pub constant: LaurentPoly,
    pub terms: Vec<(Vec<i64>, LaurentPoly)>,
}

impl Decomposition {
    pub fn evaluate(&self, ev: &Evaluator) -> Result<HabiroTrunc> {
        let level = ev.level();
        let parts = self
            .terms
            .par_iter()
            .map(|(shifts, c)| Ok(HabiroTrunc::from_laurent(level, c)?.mul(&ev.descendant(self.b, shifts)?)))
            .collect::<Result<Vec<_>>>()?;
        let mut acc = HabiroTrunc::from_laurent(level, &self.constant)?;
        for p in &parts {
            acc = acc.add(p)?;
        }
        Ok(acc)
    }
}

/// Rewrites the `V_m`-colored invariant of `S³_{K,-1/b}` (`b ∈ {1, 2}`) as a
/// combination of descendants. The identity holds for every knot.
///
/// With `t = k + j`, `γ^j_m(v, v^(t-j))` splits off `{t-j+1}...{t}`, which is
/// `(-1)^j v^-(j(t-j)+j(j+1)/2) (q^(t-j+1);q)_j`. For `b = 1` the kernel
/// `q^((t-j)(t-j+3)/4)` becomes `q^(t(t+3)/4)` times a monomial in `T = q^t`;
/// for `b = 2` the Pochhammer factor turns `α_(t-j,ℓ)` into
/// `α_(t,ℓ) (q^(t-j-ℓ+1);q)_j`. Terms outside the original range carry a
/// factor `1 - q^0` and vanish, so no boundary corrections are needed.
pub fn decompose_to_descendants(b: usize, m: usize) -> Result<Decomposition> {
    if b != 1 && b != 2 {
        return Err(Error::InvalidArgument(format!(
            "descendant rewriting is implemented for b = 1, 2, not {b}"
        )));
    }
    let l_step = if b == 2 { -1 } else { 0 };
    let mut acc: BTreeMap<(i64, i64), LaurentPoly> = BTreeMap::new();
    for j in 0..=m as i64 {
        let delta = gamma_quotient(j, m as i64)?;
        // polynomial in (T, L) with coefficients in Z[q^±1/4]
        let mut poly: BTreeMap<(i64, i64), LaurentPoly> = BTreeMap::new();
        for ((e, u), c) in delta.terms() {
            if u % 2 != 0 {
                return Err(Error::RewriteFailure(format!(
                    "odd power u^{u} in the γ quotient for j = {j}, m = {m}"
                )));
            }
            let term = LaurentPoly::monomial(c.clone(), e - 2 * u * j + 2 * j * j - 4 * j);
            *poly.entry((u / 2 - j, 0)).or_default() += term;
        }
        if j % 2 == 1 {
            poly = poly.into_iter().map(|(k, c)| (k, -c)).collect();
        }
        for i in 1..=j {
            let mut next: BTreeMap<(i64, i64), LaurentPoly> = BTreeMap::new();
            for ((t, l), c) in poly {
                *next.entry((t, l)).or_default() += c.clone();
                *next.entry((t + 1, l + l_step)).or_default() -= c.shift(4 * (i - j));
            }
            poly = next;
        }
        for (key, c) in poly {
            *acc.entry(key).or_default() += c;
        }
    }
    let terms = acc
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((t, l), c)| (if b == 1 { vec![t] } else { vec![t, l] }, c))
        .collect();
    Ok(Decomposition {
        b,
        color: m,
        constant: LaurentPoly::zero(),
        terms,
    })
}

/// Where the outer sum is cut off when evaluating at an `N`-th root of unity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Cutoff {
    /// `k <= (N-1)/3`.
    Third,
    /// `k <= (N-1)/2`, past which `(ξ^(k+1);ξ)_(k+1)` contains `1 - ξ^N`.
    Half,
    /// `k <= N-1`, the exact truncation at level `N`.
    Full,
}

impl Cutoff {
    pub fn kmax(self, n: u64) -> usize {
        let n = n as usize;
        match self {
            Cutoff::Third => (n - 1) / 3,
            Cutoff::Half => (n - 1) / 2,
            Cutoff::Full => n - 1,
        }
    }
}

/// The colored invariant at `q^(1/4) = ζ_N^(4^-1 mod N)`, summed directly in
/// `Z[ζ_N]` over `k <= cutoff.kmax(N)`.
pub fn wrt_at_root(
    o: &KnotOracle,
    b: usize,
    m: usize,
    n: u64,
    cutoff: Cutoff,
) -> Result<CyclotomicNumber> {
    if n % 2 == 0 {
        return Err(Error::EvenOrder(n));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("root order must be >= 1".into()));
    }
    let ev = Evaluator::new(o, n as usize, m)?;
    let mut acc = CyclotomicNumber::zero(n)?;
    for k in 0..=cutoff.kmax(n) {
        acc = &acc + &cyclo_from_laurent(&ev.colored_summand(b, m, k)?, n)?;
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecurrenceFailure {
    pub recurrence: u8,
    pub k: usize,
    pub l: usize,
    pub residual: LaurentPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecurrenceReport {
    pub checked: usize,
    pub failures: Vec<RecurrenceFailure>,
}

/// Checks the two `q`-difference equations of the `b = 2` kernel:
/// `(1-q^(k+1-ℓ)) α_(k+1,ℓ) = q^(k/2+1) (1-q^(k+1)) α_(k,ℓ)` and
/// `(1-q^(ℓ+1)) α_(k,ℓ+1) = q^(2ℓ+2) (1-q^(k-ℓ)) α_(k,ℓ)`.
pub fn verify_alpha_recurrences(range_k: usize, range_l: usize) -> Result<RecurrenceReport> {
    let alpha = |k: usize, l: usize| -> Result<LaurentPoly> {
        if l > k {
            Ok(LaurentPoly::zero())
        } else {
            kernel_alpha(2, k, &[l])
        }
    };
    let one_minus = |e: i64| &LaurentPoly::one() - &LaurentPoly::q_pow(e);
    let mut report = RecurrenceReport {
        checked: 0,
        failures: Vec::new(),
    };
    for k in 0..=range_k {
        for l in 0..=k.min(range_l) {
            let (ki, li) = (k as i64, l as i64);
            let a = alpha(k, l)?;
            let first = &(&one_minus(ki + 1 - li) * &alpha(k + 1, l)?)
                - &(&one_minus(ki + 1) * &a).shift(2 * ki + 4);
            let second = &(&one_minus(li + 1) * &alpha(k, l + 1)?)
                - &(&one_minus(ki - li) * &a).shift(8 * li + 8);
            for (idx, r) in [(1u8, first), (2u8, second)] {
                report.checked += 1;
                if !r.is_zero() {
                    report.failures.push(RecurrenceFailure {
                        recurrence: idx,
                        k,
                        l,
                        residual: r,
                    });
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knotdata::{oracle_fig8, oracle_unknot};
    use crate::qlaurent::qint;

    #[test]
    fn kernel_examples() {
        assert!(kernel_alpha(1, 0, &[]).unwrap().is_one());
        assert_eq!(kernel_alpha(2, 1, &[0]).unwrap(), LaurentPoly::q_pow(1));
        assert!(matches!(kernel_alpha(2, 1, &[2]), Err(Error::IndexOrder(_))));
        assert!(matches!(kernel_alpha(2, 1, &[]), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn reading_selection() {
        let r = kernel_reading_report();
        assert!(!r.literal_matches);
        assert!(r.multinomial_matches);
        assert_eq!(r.selected, KernelReading::Multinomial);
        // b = 3 specializes: summing out ℓ_2 is not required to reproduce b = 2,
        // but ℓ_2 = 0 with ℓ_1 = ℓ must give the b = 2 binomial times 1.
        for k in 0..6 {
            for l in 0..=k {
                let b3 = kernel_alpha(3, k, &[l, 0]).unwrap();
                assert_eq!(b3, kernel_alpha(2, k, &[l]).unwrap());
            }
        }
    }

    #[test]
    fn recurrences_hold() {
        let r = verify_alpha_recurrences(12, 12).unwrap();
        assert!(r.failures.is_empty(), "{:?}", r.failures.first());
        assert!(r.checked > 100);
    }

    #[test]
    fn fast_inner_sums_match_direct() {
        let ev = Evaluator::new(&oracle_fig8(), 7, 0).unwrap();
        for (b, tail) in [(2, vec![1]), (2, vec![-2]), (3, vec![1, -1]), (4, vec![0, 2, -1])] {
            assert_eq!(
                ev.inner_sums_multinomial(b, &tail),
                ev.inner_sums_direct(KernelReading::Multinomial, b, &tail).unwrap()
            );
        }
    }

    #[test]
    fn unknot_gives_one() {
        for b in 1..=3 {
            for level in [1, 4, 9] {
                assert!(invariant(&oracle_unknot(), b, level).unwrap().value().is_one());
            }
        }
    }

    #[test]
    fn unknot_colored_is_quantum_dimension() {
        for m in 0..4 {
            let x = colored_invariant(&oracle_unknot(), 1, m, 6).unwrap();
            let expected = HabiroTrunc::from_laurent(6, &qint(m as i64 + 1).unwrap()).unwrap();
            assert_eq!(x.with_offset(expected.offset()).unwrap(), expected);
        }
    }

    #[test]
    fn decomposition_b1_m1() {
        let d = decompose_to_descendants(1, 1).unwrap();
        let v = LaurentPoly::v_pow;
        assert_eq!(d.terms, vec![(vec![0], v(-1)), (vec![1], v(1))]);
    }

    #[test]
    fn tuples_enumerate() {
        assert_eq!(tuples(2, 1).len(), 3);
        assert_eq!(tuples(2, 2).len(), 6);
        assert_eq!(tuples(5, 0), vec![Vec::<usize>::new()]);
    }
}
