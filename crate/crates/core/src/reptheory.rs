//! The cyclotomic basis `P'_k = P_k / {k}!` of the representation ring,
//! with `P_k = Π_{j<k} (V - v^(2j+1) - v^-(2j+1))`.
//!
//! Provides the change of basis from `V_n`, the product `P'_m P'_n`, the
//! coefficients `a^s_i` and `γ^i_ℓ` (also as two-variable Laurent polynomials
//! in `v` and `u = v^k`), and Clebsch–Gordan multiplicities of `V^⊗m`.

use std::collections::BTreeMap;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::qlaurent::{pochhammer, qbinom, qbrace, qbrace_fact, qbrace_range, LaurentPoly};

/// Finite combination `Σ_k coeffs[k] P'_k`; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PPrimeVector {
    coeffs: BTreeMap<usize, LaurentPoly>,
}

impl PPrimeVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(k: usize) -> Self {
        let mut v = Self::zero();
        v.add_term(k, LaurentPoly::one());
        v
    }

    pub fn add_term(&mut self, k: usize, c: LaurentPoly) {
        let entry = self.coeffs.entry(k).or_default();
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn coeff(&self, k: usize) -> LaurentPoly {
        self.coeffs.get(&k).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &LaurentPoly)> + '_ {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::zero();
        for (k, x) in &self.coeffs {
            out.add_term(*k, x * c);
        }
        out
    }
}

impl Add<&PPrimeVector> for &PPrimeVector {
    type Output = PPrimeVector;
    fn add(self, rhs: &PPrimeVector) -> PPrimeVector {
        let mut out = self.clone();
        for (k, c) in &rhs.coeffs {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl FromIterator<(usize, LaurentPoly)> for PPrimeVector {
    fn from_iter<I: IntoIterator<Item = (usize, LaurentPoly)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}

impl Serialize for PPrimeVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Coeffs<'a>(&'a BTreeMap<usize, LaurentPoly>);
        impl Serialize for Coeffs<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(Some(self.0.len()))?;
                for (k, c) in self.0 {
                    m.serialize_entry(&k.to_string(), c)?;
                }
                m.end()
            }
        }
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("basis", "Pprime")?;
        m.serialize_entry("coeffs", &Coeffs(&self.coeffs))?;
        m.end()
    }
}

impl<'de> Deserialize<'de> for PPrimeVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            basis: String,
            coeffs: BTreeMap<String, LaurentPoly>,
        }
        let raw = Raw::deserialize(d)?;
        if raw.basis != "Pprime" {
            return Err(D::Error::custom(format!("unknown basis {:?}", raw.basis)));
        }
        let mut out = PPrimeVector::zero();
        for (k, c) in raw.coeffs {
            let k: usize = k
                .parse()
                .map_err(|_| D::Error::custom(format!("bad index {k:?}")))?;
            if c.is_zero() {
                return Err(D::Error::custom("zero coefficients are not allowed"));
            }
            out.add_term(k, c);
        }
        Ok(out)
    }
}

/// Element of `Z[q^(±1/4), u^±1]`, stored as `(quarter exponent of q, exponent of u) -> coeff`.
///
/// Used for coefficients that depend on `k` only through `u = v^k`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TwoVarLaurent {
    terms: BTreeMap<(i64, i64), BigInt>,
}

impl TwoVarLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(&LaurentPoly::one())
    }

    /// Embeds a polynomial that does not depend on `u`.
    pub fn constant(f: &LaurentPoly) -> Self {
        Self::from_terms(f.terms().map(|(e, c)| ((e, 0), c.clone())))
    }

    pub fn from_terms<I: IntoIterator<Item = ((i64, i64), BigInt)>>(iter: I) -> Self {
        let mut terms: BTreeMap<(i64, i64), BigInt> = BTreeMap::new();
        for (key, c) in iter {
            *terms.entry(key).or_default() += c;
        }
        terms.retain(|_, c| !c.is_zero());
        TwoVarLaurent { terms }
    }

    /// The lift of `{k + c}`: `u v^c - u^-1 v^-c`.
    pub fn brace_lift(c: i64) -> Self {
        Self::from_terms([((2 * c, 1), BigInt::one()), ((-2 * c, -1), -BigInt::one())])
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), &BigInt)> + '_ {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficients of the powers of `u`, as polynomials in `q^(1/4)`.
    pub fn by_u_power(&self) -> BTreeMap<i64, LaurentPoly> {
        let mut out: BTreeMap<i64, Vec<(i64, BigInt)>> = BTreeMap::new();
        for ((e, b), c) in &self.terms {
            out.entry(*b).or_default().push((*e, c.clone()));
        }
        out.into_iter()
            .map(|(b, t)| (b, LaurentPoly::from_terms(t)))
            .collect()
    }

    /// Specializes `u = v^k`.
    pub fn eval(&self, k: i64) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms.iter().map(|((e, b), c)| (e + 2 * k * b, c.clone())))
    }
}

impl Add<&TwoVarLaurent> for &TwoVarLaurent {
    type Output = TwoVarLaurent;
    fn add(self, rhs: &TwoVarLaurent) -> TwoVarLaurent {
        TwoVarLaurent::from_terms(
            self.terms
                .iter()
                .chain(rhs.terms.iter())
                .map(|(k, c)| (*k, c.clone())),
        )
    }
}

impl Mul<&TwoVarLaurent> for &TwoVarLaurent {
    type Output = TwoVarLaurent;
    fn mul(self, rhs: &TwoVarLaurent) -> TwoVarLaurent {
        let mut terms: BTreeMap<(i64, i64), BigInt> = BTreeMap::new();
        for ((e1, b1), c1) in &self.terms {
            for ((e2, b2), c2) in &rhs.terms {
                *terms.entry((e1 + e2, b1 + b2)).or_default() += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        TwoVarLaurent { terms }
    }
}

/// `V_n = Σ_{i=0}^n [n+i+1, 2i+1] {i}! P'_i`.
pub fn vn_to_pprime(n: usize) -> PPrimeVector {
    let n = n as i64;
    (0..=n)
        .map(|i| {
            let c = &qbinom(n + i + 1, 2 * i + 1) * &qbrace_fact(i).expect("i >= 0");
            (i as usize, c)
        })
        .collect()
}

/// `P'_m P'_n = Σ_{i=0}^{min(m,n)} {m+n}!/({i}!{m-i}!{n-i}!) P'_{m+n-i}`.
pub fn pprime_mul(m: usize, n: usize) -> Result<PPrimeVector> {
    let (mi, ni) = (m as i64, n as i64);
    let top = qbrace_fact(mi + ni)?;
    let mut out = PPrimeVector::zero();
    for i in 0..=mi.min(ni) {
        let den = &(&qbrace_fact(i)? * &qbrace_fact(mi - i)?) * &qbrace_fact(ni - i)?;
        out.add_term((mi + ni - i) as usize, top.exact_div(&den)?);
    }
    Ok(out)
}

/// Product of two combinations, expanded with [`pprime_mul`].
pub fn pprime_vector_mul(x: &PPrimeVector, y: &PPrimeVector) -> Result<PPrimeVector> {
    let mut out = PPrimeVector::zero();
    for (i, a) in x.iter() {
        for (j, b) in y.iter() {
            let ab = a * b;
            for (k, c) in pprime_mul(i, j)?.iter() {
                out.add_term(k, &ab * c);
            }
        }
    }
    Ok(out)
}

fn check_indices(s: i64, i: i64) -> Result<()> {
    if s < 0 || s > i {
        return Err(Error::IndexOrder(format!("need 0 <= s <= i, got s = {s}, i = {i}")));
    }
    Ok(())
}

/// Two-variable lift `a^s_i(v, u)` of the coefficient of `P'_{k+s}` in `{i}! P'_i P'_k`:
/// `[i, s] Π_{j'=1}^{s+2j} (u v^(j'-j) - u^-1 v^(j-j'))` with `j = i - s`.
pub fn a_coeff(s: i64, i: i64) -> Result<TwoVarLaurent> {
    check_indices(s, i)?;
    let j = i - s;
    let mut acc = TwoVarLaurent::constant(&qbinom(i, s));
    for jp in 1..=(s + 2 * j) {
        acc = &acc * &TwoVarLaurent::brace_lift(jp - j);
    }
    Ok(acc)
}

/// `a^s_{i,k}(q) = [i, s] {k-j+1}{k-j+2}...{k+s+j}` with `j = i - s`.
pub fn a_coeff_at(s: i64, i: i64, k: i64) -> Result<LaurentPoly> {
    check_indices(s, i)?;
    let j = i - s;
    Ok(&qbinom(i, s) * &qbrace_range(k - j + 1, k + s + j))
}

/// Two-variable lift `γ^i_ℓ(v, u)` with `V_ℓ P'_k = Σ_i γ^i_ℓ(v, v^k) P'_{k+i}`.
///
/// Built by composing [`vn_to_pprime`] with the `a^s_t` expansion.
pub fn gamma_coeff(i: i64, ell: i64) -> Result<TwoVarLaurent> {
    check_indices(i, ell)?;
    let mut acc = TwoVarLaurent::zero();
    for t in i..=ell {
        let c = TwoVarLaurent::constant(&qbinom(ell + t + 1, 2 * t + 1));
        acc = &acc + &(&c * &a_coeff(i, t)?);
    }
    Ok(acc)
}

pub fn gamma_at(i: i64, ell: i64, k: i64) -> Result<LaurentPoly> {
    Ok(gamma_coeff(i, ell)?.eval(k))
}

/// `γ^i_ℓ(v, u)` divided by the lift of `{k+1}...{k+i}`.
pub fn gamma_quotient(i: i64, ell: i64) -> Result<TwoVarLaurent> {
    check_indices(i, ell)?;
    let mut acc = TwoVarLaurent::zero();
    for t in i..=ell {
        let j = t - i;
        let mut term = TwoVarLaurent::constant(&(&qbinom(ell + t + 1, 2 * t + 1) * &qbinom(t, i)));
        for jp in 1..=j {
            term = &term * &TwoVarLaurent::brace_lift(jp - j);
            term = &term * &TwoVarLaurent::brace_lift(i + jp);
        }
        acc = &acc + &term;
    }
    Ok(acc)
}

/// `V_ℓ P'_k` expanded through the `γ` coefficients.
pub fn v_ell_times_pprime(ell: usize, k: usize) -> Result<PPrimeVector> {
    let mut out = PPrimeVector::zero();
    for i in 0..=ell {
        out.add_term(k + i, gamma_at(i as i64, ell as i64, k as i64)?);
    }
    Ok(out)
}

/// `V_ℓ P'_k` expanded by composing `V_ℓ = Σ [..]{t}! P'_t` with the product formula.
pub fn v_ell_times_pprime_composed(ell: usize, k: usize) -> Result<PPrimeVector> {
    pprime_vector_mul(&vn_to_pprime(ell), &PPrimeVector::basis(k))
}

/// `V P'_k = {k+1} P'_{k+1} + (v^(2k+1) + v^-(2k+1)) P'_k`.
pub fn v_times_pprime(k: usize) -> PPrimeVector {
    let ki = k as i64;
    let mut out = PPrimeVector::zero();
    out.add_term(k + 1, qbrace(ki + 1));
    out.add_term(k, &LaurentPoly::v_pow(2 * ki + 1) + &LaurentPoly::v_pow(-2 * ki - 1));
    out
}

/// Outcome of the two divisibility readings for `γ^i_{ℓ,k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaDivisibility {
    /// Divisible by `{k+1}...{k+i}`.
    pub by_braces: bool,
    /// Divisible by `(1-q^(k+1))...(1-q^(k+i))`.
    pub by_pochhammer: bool,
}

pub fn gamma_divisibility(i: i64, ell: i64, k: i64) -> Result<GammaDivisibility> {
    let g = gamma_at(i, ell, k)?;
    let by_braces = g.exact_div(&qbrace_range(k + 1, k + i)).is_ok();
    let by_pochhammer = if k + 1 >= 1 {
        g.exact_div(&pochhammer(i as u32, k as u32)).is_ok()
    } else {
        false
    };
    Ok(GammaDivisibility {
        by_braces,
        by_pochhammer,
    })
}

/// Multiplicities `c_{m,ℓ}` with `V^⊗m = Σ_ℓ c_{m,ℓ} V_ℓ`.
pub fn cable_expand(m: usize) -> BTreeMap<usize, BigInt> {
    let mut cur: BTreeMap<usize, BigInt> = BTreeMap::from([(0, BigInt::one())]);
    for _ in 0..m {
        let mut next: BTreeMap<usize, BigInt> = BTreeMap::new();
        for (l, c) in &cur {
            *next.entry(l + 1).or_default() += c;
            if *l >= 1 {
                *next.entry(l - 1).or_default() += c;
            }
        }
        cur = next;
    }
    cur.retain(|_, c| !c.is_zero());
    cur
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(k: i64) -> LaurentPoly {
        LaurentPoly::v_pow(k)
    }

    #[test]
    fn vn_expansions() {
        assert_eq!(vn_to_pprime(0), PPrimeVector::basis(0));
        let one = vn_to_pprime(1);
        assert_eq!(one.coeff(0), &v(1) + &v(-1));
        assert_eq!(one.coeff(1), qbrace(1));
        for n in 0..=10 {
            assert_eq!(vn_to_pprime(n).coeff(n), qbrace_fact(n as i64).unwrap());
        }
    }

    #[test]
    fn products() {
        for n in 0..6 {
            assert_eq!(pprime_mul(0, n).unwrap(), PPrimeVector::basis(n));
        }
        let p = pprime_mul(1, 1).unwrap();
        assert_eq!(p.coeff(1), qbrace(2));
        assert_eq!(p.coeff(2), &v(1) + &v(-1));
        for m in 0..=6 {
            for n in 0..=6 {
                assert_eq!(pprime_mul(m, n).unwrap(), pprime_mul(n, m).unwrap());
            }
        }
    }

    #[test]
    fn a_coefficients() {
        for k in 0..=10 {
            assert!(a_coeff_at(0, 0, k).unwrap().is_one());
        }
        assert!(matches!(a_coeff(3, 2), Err(Error::IndexOrder(_))));
        for i in 0..=5 {
            for s in 0..=i {
                let lift = a_coeff(s, i).unwrap();
                for k in 0..=10 {
                    assert_eq!(lift.eval(k), a_coeff_at(s, i, k).unwrap());
                }
            }
        }
    }

    #[test]
    fn gamma_base_cases() {
        for k in 0..=10i64 {
            assert_eq!(gamma_at(0, 1, k).unwrap(), &v(2 * k + 1) + &v(-2 * k - 1));
            assert_eq!(gamma_at(1, 1, k).unwrap(), qbrace(k + 1));
            assert!(gamma_at(0, 0, k).unwrap().is_one());
        }
    }

    #[test]
    fn v_times_pprime_matches_gamma() {
        assert_eq!(v_times_pprime(0), vn_to_pprime(1));
        for k in 0..=10 {
            assert_eq!(v_times_pprime(k), v_ell_times_pprime(1, k).unwrap());
            // V P_k = P_{k+1} + (...) P_k, divided by {k}!
            let ki = k as i64;
            let top = qbrace_fact(ki + 1)
                .unwrap()
                .exact_div(&qbrace_fact(ki).unwrap())
                .unwrap();
            assert_eq!(top, v_times_pprime(k).coeff(k + 1));
        }
    }

    #[test]
    fn gamma_quotient_recovers_gamma() {
        for ell in 0..=4 {
            for i in 0..=ell {
                let mut lift = gamma_quotient(i, ell).unwrap();
                for jp in 1..=i {
                    lift = &lift * &TwoVarLaurent::brace_lift(jp);
                }
                assert_eq!(lift, gamma_coeff(i, ell).unwrap());
            }
        }
    }

    #[test]
    fn gamma_holds_below_ell() {
        // The γ expansion is valid for every k, not just k >= ℓ.
        for ell in 0..=5 {
            for k in 0..ell {
                assert_eq!(
                    v_ell_times_pprime(ell, k).unwrap(),
                    v_ell_times_pprime_composed(ell, k).unwrap()
                );
            }
        }
    }

    #[test]
    fn clebsch_gordan() {
        assert_eq!(cable_expand(0), BTreeMap::from([(0, BigInt::one())]));
        assert_eq!(
            cable_expand(2),
            BTreeMap::from([(0, BigInt::one()), (2, BigInt::one())])
        );
        assert_eq!(
            cable_expand(3),
            BTreeMap::from([(1, BigInt::from(2)), (3, BigInt::one())])
        );
        for m in 0..=12usize {
            let dim: BigInt = cable_expand(m)
                .iter()
                .map(|(l, c)| c * BigInt::from(*l + 1))
                .sum();
            assert_eq!(dim, BigInt::from(1u64 << m));
            assert!(cable_expand(m).keys().all(|l| l % 2 == m % 2));
        }
    }

    #[test]
    fn json_round_trip() {
        let x = vn_to_pprime(2);
        let s = serde_json::to_string(&x).unwrap();
        assert!(s.starts_with(r#"{"basis":"Pprime","coeffs":{"0":"#));
        let back: PPrimeVector = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
    }
}
