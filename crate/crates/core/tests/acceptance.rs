//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::time::Instant;

use habiro_core::cyclo::vanishing_check;
use habiro_core::habiro::{evaluate_at_root, integrality_of, HabiroTrunc};
use habiro_core::knotdata::{oracle_fig8, oracle_unknot, KnotOracle};
use habiro_core::qlaurent::{pochhammer, qbrace_fact, qbrace_range, reduce_mod};
use habiro_core::ranklab::{rank_estimate, relation_search, RelationCertificate};
use habiro_core::reptheory::{a_coeff_at, gamma_divisibility, v_ell_times_pprime, v_ell_times_pprime_composed};
use habiro_core::surgery::{decompose_to_descendants, wrt_at_root, Cutoff, Decomposition, Evaluator};
use habiro_core::{LaurentPoly, Result};
use num_bigint::BigInt;
use num_traits::Zero;

type Outcome = Result<(bool, String)>;

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("basis-change consistency", basis_change),
        ("divisibility", divisibility),
        ("integrality of the figure-eight coefficients", integrality),
        ("explicit b = 2 sum for the figure-eight", explicit_sum),
        ("colored b = 1 identity and its recovery", colored_identity),
        ("descendant decomposition", decomposition),
        ("root-of-unity consistency", roots_of_unity),
        ("unknot controls", unknot),
        ("rank of the descendant and cable families", rank_experiment),
        ("tower coherence", tower),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (ok, detail) = run().unwrap_or_else(|e| (false, format!("error: {e}")));
        if !ok {
            failed += 1;
        }
        println!(
            "{} {:>2} {name} [{:.1}s]: {detail}",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            start.elapsed().as_secs_f64()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

/// Polynomials in `V` with coefficients in `Z[q^±1/4]`, lowest degree first.
type VPoly = Vec<LaurentPoly>;

fn vmul(a: &VPoly, b: &VPoly) -> VPoly {
    let mut out = vec![LaurentPoly::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn vsub(a: &VPoly, b: &VPoly) -> VPoly {
    (0..a.len().max(b.len()))
        .map(|i| {
            let z = LaurentPoly::zero();
            a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)
        })
        .collect()
}

/// `V_ℓ` from `V_(n+1) = V V_n - V_(n-1)`.
fn chebyshev(l: usize) -> VPoly {
    let mut prev = vec![LaurentPoly::one()];
    if l == 0 {
        return prev;
    }
    let mut cur = vec![LaurentPoly::zero(), LaurentPoly::one()];
    for _ in 1..l {
        let next = vsub(&vmul(&cur, &[LaurentPoly::zero(), LaurentPoly::one()].to_vec()), &prev);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

fn root(j: usize) -> LaurentPoly {
    let j = j as i64;
    &LaurentPoly::v_pow(2 * j + 1) + &LaurentPoly::v_pow(-2 * j - 1)
}

/// `P_k = Π_(j<k) (V - v^(2j+1) - v^-(2j+1))`.
fn p_poly(k: usize) -> VPoly {
    (0..k).fold(vec![LaurentPoly::one()], |acc, j| vmul(&acc, &vec![-root(j), LaurentPoly::one()]))
}

/// Coefficients `d_j` of `f = Σ d_j P_j` by repeated synthetic division.
fn newton_coeffs(mut f: VPoly) -> Vec<LaurentPoly> {
    let mut out = Vec::new();
    let mut j = 0;
    while f.iter().any(|c| !c.is_zero()) {
        let c = root(j);
        // f = (V - c) g + f(c)
        let n = f.len();
        let mut g = vec![LaurentPoly::zero(); n.saturating_sub(1)];
        let mut carry = LaurentPoly::zero();
        for i in (1..n).rev() {
            carry = &f[i] + &(&carry * &c);
            g[i - 1] = carry.clone();
        }
        out.push(&f[0] + &(&carry * &c));
        f = g;
        j += 1;
    }
    out
}

fn basis_change() -> Outcome {
    let mut checked = 0;
    for k in 0..=10 {
        for l in 0..=k {
            let a = v_ell_times_pprime(l, k)?;
            let b = v_ell_times_pprime_composed(l, k)?;
            if a != b {
                return Ok((false, format!("expansions differ at ℓ = {l}, k = {k}")));
            }
            checked += 1;
        }
    }
    let mut brute = 0;
    for k in 0..=6 {
        let kfact = qbrace_fact(k as i64)?;
        for l in 0..=k {
            // V_ℓ P'_k = Σ d_j {j}!/{k}! P'_j where V_ℓ P_k = Σ d_j P_j
            let d = newton_coeffs(vmul(&chebyshev(l), &p_poly(k)));
            let e = v_ell_times_pprime(l, k)?;
            for j in 0..d.len().max(k + l + 1) {
                let dj = d.get(j).cloned().unwrap_or_else(LaurentPoly::zero);
                if &e.coeff(j) * &kfact != &dj * &qbrace_fact(j as i64)? {
                    return Ok((false, format!("model ring disagrees at ℓ = {l}, k = {k}, P'_{j}")));
                }
            }
            brute += 1;
        }
    }
    Ok((true, format!("{checked} pairs agree; {brute} pairs match the V-polynomial model")))
}

fn divisibility() -> Outcome {
    let mut count = 0;
    for k in 0..=10i64 {
        for i in 0..=10i64 {
            for s in 0..=i {
                let a = a_coeff_at(s, i, k)?;
                if a.exact_div(&qbrace_range(k + 1, k + s)).is_err() {
                    return Ok((false, format!("a^{s}_({i},{k}) not divisible")));
                }
                count += 1;
            }
            for l in i..=10 {
                if !gamma_divisibility(i, l, k)?.by_braces {
                    return Ok((false, format!("γ^{i}_({l},{k}) not divisible")));
                }
                count += 1;
            }
        }
    }
    Ok((true, format!("{count} coefficients divisible")))
}

fn integrality() -> Outcome {
    let o = oracle_fig8();
    for k in 0..=20u32 {
        if !integrality_of(&o.coeff(k as usize)?, k).strong {
            return Ok((false, format!("k = {k} fails")));
        }
    }
    Ok((true, "k <= 20".into()))
}

fn qq(n: i64) -> LaurentPoly {
    pochhammer(n as u32, 0)
}

fn explicit_sum() -> Outcome {
    let level = 20;
    let ev = Evaluator::new(&oracle_fig8(), level, 0)?;
    let one_minus_q = &LaurentPoly::one() - &LaurentPoly::q_pow(1);
    for m0 in -1..=1i64 {
        for m1 in -1..=1i64 {
            let mut direct = LaurentPoly::zero();
            for k in 0..level as i64 {
                for l in 0..=k {
                    let frac = qq(2 * k + 1).exact_div(&(&qq(l) * &qq(k - l)))?;
                    let e = -k * (k + 1) / 2 + l * (l + 1) + k * m0 + l * m1;
                    let term = frac.shift(4 * e);
                    direct += if k % 2 == 0 { term } else { -term };
                }
            }
            let lhs = ev.descendant(2, &[m0, m1])?.scale(&one_minus_q)?;
            if lhs.offset() != 0 || lhs.rep() != &reduce_mod(&direct, level)? {
                return Ok((false, format!("shifts ({m0}, {m1}) differ")));
            }
        }
    }
    Ok((true, "9 shifts agree mod (q;q)_20".into()))
}

/// Exact rank over `Q` of integer vectors.
fn rank_q(mut rows: Vec<Vec<BigInt>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(s) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, s);
        for i in r + 1..rows.len() {
            let (a, b) = (rows[r][c].clone(), rows[i][c].clone());
            for j in 0..ncols {
                rows[i][j] = &a * &rows[i][j] - &b * &rows[r][j];
            }
        }
        r += 1;
    }
    r
}

fn flatten(coeffs: &[LaurentPoly], d: usize) -> Vec<BigInt> {
    coeffs
        .iter()
        .flat_map(|c| (0..=d as i64).map(move |e| c.coeff(4 * e)))
        .collect()
}

/// Whether `coeffs` is a `Q[q]`-combination of the certificates within degree `d`.
fn in_span(certs: &[RelationCertificate], coeffs: &[LaurentPoly], d: usize) -> bool {
    let mut rows = Vec::new();
    for c in certs {
        let deg = c.coeffs.iter().filter_map(|p| p.max_exponent()).max().unwrap_or(0) / 4;
        for t in 0..=(d as i64 - deg) {
            let shifted: Vec<LaurentPoly> = c.coeffs.iter().map(|p| p.shift(4 * t)).collect();
            rows.push(flatten(&shifted, d));
        }
    }
    let before = rank_q(rows.clone());
    rows.push(flatten(coeffs, d));
    rank_q(rows) == before
}

fn colored_identity() -> Outcome {
    let level = 25;
    let ev = Evaluator::new(&oracle_fig8(), level, 1)?;
    let v = LaurentPoly::v_pow;
    let one = HabiroTrunc::one(level)?;
    let c = |f: LaurentPoly| HabiroTrunc::from_laurent(level, &f);
    let i = |m: i64| ev.descendant(1, &[m]);
    let rhs = [
        c(v(-1))?.mul(&i(0)?.sub(&one)?),
        c(-(&v(-3) * &LaurentPoly::q_pow(1)))?.mul(&i(-1)?.sub(&one)?),
        c(v(1))?.mul(&i(1)?),
        c(v(-1))?.mul(&i(-1)?),
    ]
    .iter()
    .try_fold(HabiroTrunc::zero(level)?, |a, x| a.add(x))?;
    let lhs = ev.colored(1, 1)?;
    if lhs.with_offset(rhs.offset())? != rhs {
        return Ok((false, "identity fails mod (q;q)_25".into()));
    }
    let family: Vec<(String, HabiroTrunc)> = vec![
        ("1".into(), one),
        ("I(0)".into(), i(0)?),
        ("I(-1)".into(), i(-1)?),
        ("I(1)".into(), i(1)?),
        ("I(M,K)".into(), lhs),
    ];
    let d = 3;
    let certs = relation_search(&family, d)?;
    let q = LaurentPoly::q_pow;
    // q^(-1/2) I(M,K) = q^-1 (I(0) + q I(1)), cleared to integral powers
    let target = [LaurentPoly::zero(), -q(0), LaurentPoly::zero(), -q(1), q(1)];
    if !in_span(&certs, &target, d) {
        return Ok((false, format!("{} certificates do not contain it", certs.len())));
    }
    Ok((true, format!("exact mod (q;q)_25; in the span of {} certificates at d = 3", certs.len())))
}

/// Evaluates a decomposition, computing each descendant once.
fn evaluate_cached(
    dec: &Decomposition,
    ev: &Evaluator,
    cache: &mut BTreeMap<Vec<i64>, HabiroTrunc>,
) -> Result<HabiroTrunc> {
    let level = ev.level();
    let mut acc = HabiroTrunc::from_laurent(level, &dec.constant)?;
    for (shifts, c) in &dec.terms {
        if !cache.contains_key(shifts) {
            cache.insert(shifts.clone(), ev.descendant(dec.b, shifts)?);
        }
        acc = acc.add(&HabiroTrunc::from_laurent(level, c)?.mul(&cache[shifts]))?;
    }
    Ok(acc)
}

fn decomposition_matches(ev: &Evaluator, b: usize, m: usize, cache: &mut BTreeMap<Vec<i64>, HabiroTrunc>) -> Result<bool> {
    let lhs = ev.colored(b, m)?;
    let rhs = evaluate_cached(&decompose_to_descendants(b, m)?, ev, cache)?;
    Ok(rhs.with_offset(lhs.offset()).map(|r| r == lhs).unwrap_or(false))
}

fn decomposition() -> Outcome {
    let ev = Evaluator::new(&oracle_fig8(), 25, 3)?;
    for b in 1..=2 {
        let mut cache = BTreeMap::new();
        for m in 0..=3 {
            if !decomposition_matches(&ev, b, m, &mut cache)? {
                return Ok((false, format!("b = {b}, m = {m} differs")));
            }
        }
    }
    Ok((true, "b in {1,2}, m <= 3 mod (q;q)_25".into()))
}

fn roots_of_unity() -> Outcome {
    let o = oracle_fig8();
    let mut mismatches = Vec::new();
    let mut half_ok = true;
    for n in [1u64, 3, 5, 7, 9] {
        let ev = Evaluator::new(&o, n as usize, 2)?;
        for b in 1..=2 {
            for m in 0..=2 {
                let full = evaluate_at_root(&ev.colored(b, m)?, n)?;
                if full != wrt_at_root(&o, b, m, n, Cutoff::Third)? {
                    mismatches.push(format!("N={n} b={b} m={m}"));
                }
                half_ok &= full == wrt_at_root(&o, b, m, n, Cutoff::Half)?;
            }
        }
    }
    let mut not_vanishing = Vec::new();
    for n in (1..=15u64).step_by(2) {
        for k in 0..=n as u32 {
            if 3 * k > n as u32 - 1 && !vanishing_check(n, k)? {
                not_vanishing.push(format!("N={n} k={k}"));
            }
        }
    }
    let ok = mismatches.is_empty() && not_vanishing.is_empty();
    let detail = if ok {
        "sums cut at (N-1)/3 agree; vanishing holds for k > (N-1)/3, N <= 15".to_string()
    } else {
        format!(
            "cut at (N-1)/3 differs for [{}]; no vanishing for [{}]; cut at (N-1)/2 agrees everywhere: {half_ok}",
            mismatches.join(", "),
            not_vanishing.join(", ")
        )
    };
    Ok((ok, detail))
}

fn unknot() -> Outcome {
    let o = oracle_unknot();
    let v1 = &LaurentPoly::v_pow(1) + &LaurentPoly::v_pow(-1);
    for level in 1..=20 {
        let ev = Evaluator::new(&o, level, 4)?;
        for b in 1..=3 {
            if !ev.invariant(b)?.value().is_one() {
                return Ok((false, format!("invariant at level {level}, b = {b}")));
            }
            for s in [-2i64, 0, 3] {
                if !ev.descendant(b, &vec![s; b])?.value().is_one() {
                    return Ok((false, format!("descendant {s} at level {level}, b = {b}")));
                }
            }
            for m in 0..=4 {
                let sign = if m % 2 == 0 { 1 } else { -1 };
                let expected = HabiroTrunc::from_laurent(level, &v1.pow(m as u32).scale(&sign.into()))?;
                let x = ev.phi_cable(b, m)?;
                if expected.with_offset(x.offset())? != x {
                    return Ok((false, format!("cable m = {m} at level {level}, b = {b}")));
                }
            }
        }
    }
    Ok((true, "levels 1..=20, b <= 3, m <= 4".into()))
}

fn ranks(family: &[(String, HabiroTrunc)], levels: &[usize], d: usize) -> Result<Vec<usize>> {
    levels
        .iter()
        .map(|&n| Ok(rank_estimate(family, n, d)?.rank))
        .collect()
}

fn stabilized_at(r: &[usize], value: usize) -> bool {
    r.iter().all(|&x| x == value)
}

fn rank_experiment() -> Outcome {
    let o: KnotOracle = oracle_fig8();
    let top = 40;
    let levels: Vec<usize> = (30..=top).collect();
    let d = 10;
    let ev = Evaluator::new(&o, top, 10)?;
    let mut descendants = Vec::new();
    for m0 in -2..=2i64 {
        for m1 in -2..=2i64 {
            descendants.push((format!("I({m0},{m1})"), ev.descendant(2, &[m0, m1])?));
        }
    }
    let dr = ranks(&descendants, &levels, d)?;
    let cables: Vec<(String, HabiroTrunc)> = ev
        .cable_family(2, 10)?
        .into_iter()
        .enumerate()
        .map(|(m, x)| (format!("phi({m})"), x))
        .collect();
    let cr = ranks(&cables, &levels, d)?;
    let first_eight = [10, 14, 18, 22]
        .iter()
        .map(|&dd| Ok((dd, rank_estimate(&cables, top, dd)?.rank)))
        .collect::<Result<Vec<_>>>()?;
    let cr18 = ranks(&cables, &levels, 18)?;

    // every cable is a combination of colored invariants, each of which decomposes
    let low = Evaluator::new(&o, 25, 10)?;
    let mut cache = BTreeMap::new();
    let mut decomposes = true;
    for m in 0..=10 {
        decomposes &= decomposition_matches(&low, 2, m, &mut cache)?;
    }

    let ok = stabilized_at(&dr, 8) && stabilized_at(&cr, 8) && decomposes;
    Ok((
        ok,
        format!(
            "n = 30..=40, d = 10: descendants {dr:?}; cables {cr:?}; cable rank at n = 40 by d {first_eight:?}; \
             cables at d = 18 {cr18:?}; colored m <= 10 decompose mod (q;q)_25 ({} descendants): {decomposes}",
            cache.len()
        ),
    ))
}

fn tower() -> Outcome {
    let o = oracle_fig8();
    let top = Evaluator::new(&o, 25, 3)?;
    let compute = |ev: &Evaluator| -> Result<Vec<HabiroTrunc>> {
        let mut out = vec![ev.invariant(1)?, ev.invariant(2)?, ev.invariant_positive()?];
        for s in -1..=1i64 {
            out.push(ev.descendant(1, &[s])?);
            out.push(ev.descendant(2, &[s, -s])?);
        }
        for m in 1..=3 {
            out.push(ev.colored(1, m)?);
            out.push(ev.colored(2, m)?);
        }
        out.extend(ev.cable_family(2, 3)?);
        Ok(out)
    };
    let high = compute(&top)?;
    for m in [5, 10, 15, 20] {
        let low = compute(&Evaluator::new(&o, m, 3)?)?;
        for (i, (h, l)) in high.iter().zip(&low).enumerate() {
            if &h.project(m)? != l {
                return Ok((false, format!("member {i} at level {m}")));
            }
        }
    }
    Ok((true, format!("{} members at levels 5, 10, 15, 20", high.len())))
}
