//! Laurent polynomials in `q^(1/4)` with arbitrary-precision integer
//! coefficients, and the q-symbols built from them.
//!
//! Exponents are stored in quarter units: the stored exponent `e` stands for
//! `q^(e/4)`. So `q` has exponent 4 and `v = q^(1/2)` has exponent 2.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::dense::QPoly;
use crate::error::{Error, Result};

/// Exact element of `Z[q^(±1/4)]`. No stored coefficient is zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// `c q^(exponent/4)`.
    pub fn monomial(c: impl Into<BigInt>, exponent: i64) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exponent, c);
        }
        LaurentPoly { terms }
    }

    /// `q^k`.
    pub fn q_pow(k: i64) -> Self {
        Self::monomial(1, 4 * k)
    }

    /// `v^k = q^(k/2)`.
    pub fn v_pow(k: i64) -> Self {
        Self::monomial(1, 2 * k)
    }

    /// Builds a polynomial from `(quarter exponent, coefficient)` pairs,
    /// summing repeated exponents.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut map: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            *map.entry(e).or_default() += c.into();
        }
        map.retain(|_, c| !c.is_zero());
        LaurentPoly { terms: map }
    }

    /// Polynomial in `q` from coefficients of `q^0, q^1, ...`.
    pub fn from_q_coeffs<C: Into<BigInt> + Clone>(coeffs: &[C]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (4 * i as i64, c.clone().into())),
        )
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exponent: i64) -> BigInt {
        self.terms.get(&exponent).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// True iff every exponent is a multiple of 4, i.e. the value lies in `Z[q^±1]`.
    pub fn lies_in_integral_q(&self) -> bool {
        self.terms.keys().all(|e| e.rem_euclid(4) == 0)
    }

    /// True iff the value lies in `Z[q^(±1/2)]`.
    pub fn lies_in_half_q(&self) -> bool {
        self.terms.keys().all(|e| e.rem_euclid(2) == 0)
    }

    /// The common residue of all exponents mod 4, if there is one.
    /// The zero polynomial has no residue.
    pub fn uniform_residue(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(|e| e.rem_euclid(4));
        let first = it.next()?;
        it.all(|r| r == first).then_some(first)
    }

    /// Splits into the four residue classes of exponents mod 4.
    pub fn residue_classes(&self) -> BTreeMap<i64, LaurentPoly> {
        let mut out: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            out.entry(e.rem_euclid(4))
                .or_default()
                .terms
                .insert(*e, c.clone());
        }
        out
    }

    /// Multiplies by `q^(e/4)`.
    pub fn shift(&self, e: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(k, c)| (k + e, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(k, x)| (*k, x * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// The substitution `q^(1/4) -> q^(-1/4)`.
    pub fn invert_q(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(k, c)| (-k, c.clone())).collect(),
        }
    }

    /// Evaluates at `q^(1/4) = 1`.
    pub fn value_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Exact quotient `self / g`.
    ///
    /// Fails with [`Error::NotDivisible`] carrying the remainder of the long
    /// division when `g` does not divide `self` in `Z[q^(±1/4)]`.
    pub fn exact_div(&self, g: &LaurentPoly) -> Result<LaurentPoly> {
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let fmin = self.min_exponent().unwrap();
        let gmin = g.min_exponent().unwrap();
        let mut step = 0i64;
        for (e, _) in self.terms() {
            step = step.gcd(&(e - fmin));
        }
        for (e, _) in g.terms() {
            step = step.gcd(&(e - gmin));
        }
        if step == 0 {
            step = 1;
        }
        let dense = |p: &LaurentPoly, min: i64| {
            let top = (p.max_exponent().unwrap() - min) / step;
            let mut v = vec![BigInt::zero(); top as usize + 1];
            for (e, c) in p.terms() {
                v[((e - min) / step) as usize] = c.clone();
            }
            v
        };
        let mut rem = dense(self, fmin);
        let div = dense(g, gmin);
        let shift = fmin - gmin;
        let to_laurent = |v: &[BigInt], base: i64| {
            LaurentPoly::from_terms(
                v.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| (base + step * i as i64, c.clone())),
            )
        };
        if rem.len() < div.len() {
            return Err(Error::NotDivisible {
                remainder: self.clone(),
            });
        }
        let lead = div.last().unwrap().clone();
        let qlen = rem.len() - div.len() + 1;
        let mut quot = vec![BigInt::zero(); qlen];
        for i in (0..qlen).rev() {
            let top = i + div.len() - 1;
            if rem[top].is_zero() {
                continue;
            }
            let (qc, r) = rem[top].div_rem(&lead);
            if !r.is_zero() {
                return Err(Error::NotDivisible {
                    remainder: to_laurent(&rem, fmin),
                });
            }
            for (j, d) in div.iter().enumerate() {
                if !d.is_zero() {
                    rem[i + j] -= &qc * d;
                }
            }
            quot[i] = qc;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::NotDivisible {
                remainder: to_laurent(&rem, fmin),
            });
        }
        Ok(to_laurent(&quot, shift))
    }
}

fn mul_sparse(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let mut terms: BTreeMap<i64, BigInt> = BTreeMap::new();
    for (e, c) in &a.terms {
        for (f, d) in &b.terms {
            *terms.entry(e + f).or_default() += c * d;
        }
    }
    terms.retain(|_, c| !c.is_zero());
    LaurentPoly { terms }
}

fn mul_impl(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() || b.is_zero() {
        return LaurentPoly::zero();
    }
    if a.len() * b.len() <= 64 {
        return mul_sparse(a, b);
    }
    let amin = a.min_exponent().unwrap();
    let bmin = b.min_exponent().unwrap();
    let mut step = 0i64;
    for (e, _) in a.terms() {
        step = step.gcd(&(e - amin));
    }
    for (e, _) in b.terms() {
        step = step.gcd(&(e - bmin));
    }
    let step = step.max(1);
    let alen = ((a.max_exponent().unwrap() - amin) / step + 1) as usize;
    let blen = ((b.max_exponent().unwrap() - bmin) / step + 1) as usize;
    if alen * blen > 8 * a.len() * b.len() {
        return mul_sparse(a, b);
    }
    let mut av = vec![BigInt::zero(); alen];
    for (e, c) in a.terms() {
        av[((e - amin) / step) as usize] = c.clone();
    }
    let mut bv = vec![BigInt::zero(); blen];
    for (e, c) in b.terms() {
        bv[((e - bmin) / step) as usize] = c.clone();
    }
    let prod = crate::dense::convolve(&av, &bv);
    let base = amin + bmin;
    LaurentPoly::from_terms(
        prod.into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (base + step * i as i64, c)),
    )
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        mul_impl(self, rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            let entry = self.terms.entry(*e).or_default();
            *entry += c;
            if entry.is_zero() {
                self.terms.remove(e);
            }
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            let entry = self.terms.entry(*e).or_default();
            *entry -= c;
            if entry.is_zero() {
                self.terms.remove(e);
            }
        }
    }
}

impl AddAssign<LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        *self += &rhs;
    }
}

impl SubAssign<LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: LaurentPoly) {
        *self -= &rhs;
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        let mut acc = LaurentPoly::zero();
        for x in iter {
            acc += x;
        }
        acc
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mono = match (*e, e.rem_euclid(4)) {
                (0, _) => String::new(),
                (4, _) => "q".to_string(),
                (e, 0) => format!("q^{}", e / 4),
                (e, 2) => format!("q^({}/2)", e / 2),
                (e, _) => format!("q^({}/4)", e),
            };
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct LaurentJson {
    unit: String,
    terms: Vec<(i64, String)>,
}

const UNIT: &str = "q^(1/4)";

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LaurentJson {
            unit: UNIT.to_string(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, c.to_str_radix(10)))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = LaurentJson::deserialize(d)?;
        if raw.unit != UNIT {
            return Err(D::Error::custom(format!("unsupported unit {:?}", raw.unit)));
        }
        let mut terms = BTreeMap::new();
        let mut last: Option<i64> = None;
        for (e, c) in raw.terms {
            if last.is_some_and(|l| l >= e) {
                return Err(D::Error::custom("terms must be strictly ascending in exponent"));
            }
            last = Some(e);
            let c: BigInt = c
                .parse()
                .map_err(|_| D::Error::custom(format!("bad coefficient {c:?}")))?;
            if c.is_zero() {
                return Err(D::Error::custom("zero coefficients are not allowed"));
            }
            terms.insert(e, c);
        }
        Ok(LaurentPoly { terms })
    }
}

/// Quantum integer `[n] = (v^n - v^-n)/(v - v^-1) = Σ_{j<n} v^(n-1-2j)`.
pub fn qint(n: i64) -> Result<LaurentPoly> {
    if n < 0 {
        return Err(Error::InvalidArgument(format!("qint({n}): n must be >= 0")));
    }
    Ok(LaurentPoly::from_terms(
        (0..n).map(|j| (2 * (n - 1 - 2 * j), BigInt::one())),
    ))
}

/// `{n} = v^n - v^-n`.
pub fn qbrace(n: i64) -> LaurentPoly {
    LaurentPoly::from_terms([(2 * n, BigInt::one()), (-2 * n, -BigInt::one())])
}

/// `{n}! = {1}{2}...{n}`.
pub fn qbrace_fact(n: i64) -> Result<LaurentPoly> {
    if n < 0 {
        return Err(Error::InvalidArgument(format!(
            "qbrace_fact({n}): n must be >= 0"
        )));
    }
    Ok(qbrace_range(1, n))
}

/// `{a}{a+1}...{b}` (empty product is 1).
pub fn qbrace_range(a: i64, b: i64) -> LaurentPoly {
    let mut acc = LaurentPoly::one();
    for j in a..=b {
        acc = &acc * &qbrace(j);
    }
    acc
}

/// Balanced quantum binomial `{n}!/({k}!{n-k}!)`; zero outside `0 <= k <= n`.
pub fn qbinom(n: i64, k: i64) -> LaurentPoly {
    if n < 0 || k < 0 || k > n {
        return LaurentPoly::zero();
    }
    let k = k.min(n - k);
    let num = qbrace_range(n - k + 1, n);
    let den = qbrace_range(1, k);
    num.exact_div(&den)
        .expect("balanced quantum binomials are Laurent polynomials")
}

/// `(q^(1+shift); q)_n = Π_{j=1}^n (1 - q^(shift+j))`.
pub fn pochhammer(n: u32, shift: u32) -> LaurentPoly {
    let mut coeffs = vec![BigInt::one()];
    for j in 1..=n as usize {
        let e = shift as usize + j;
        let mut next = coeffs.clone();
        next.resize(coeffs.len() + e, BigInt::zero());
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                next[i + e] -= c;
            }
        }
        coeffs = next;
    }
    LaurentPoly::from_q_coeffs(&coeffs)
}

/// Canonical representative of `f` in `Z[q^±1]/((q;q)_n)`: a polynomial of
/// degree below `n(n+1)/2` with nonnegative exponents. Negative powers are
/// cleared with the inverse of `q` modulo `(q;q)_n`.
pub fn reduce_mod(f: &LaurentPoly, n: usize) -> Result<LaurentPoly> {
    if n == 0 {
        return Err(Error::InvalidArgument("reduce_mod: level must be >= 1".into()));
    }
    let p = QPoly::from_laurent(f).map_err(|exponent| Error::FractionalExponent { exponent })?;
    let r = crate::dense::modulus(n).reduce(&p);
    Ok(QPoly { low: 0, coeffs: r }.to_laurent())
}

/// Same as [`LaurentPoly::invert_q`].
pub fn invert_q(f: &LaurentPoly) -> LaurentPoly {
    f.invert_q()
}

/// Same as [`LaurentPoly::exact_div`].
pub fn exact_div(f: &LaurentPoly, g: &LaurentPoly) -> Result<LaurentPoly> {
    f.exact_div(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, BigInt::from(c))))
    }

    #[test]
    fn quantum_integers() {
        assert!(qint(0).unwrap().is_zero());
        assert!(qint(1).unwrap().is_one());
        // [3] = q^-1 + 1 + q
        assert_eq!(qint(3).unwrap(), lp(&[(-4, 1), (0, 1), (4, 1)]));
        assert!(qint(-1).is_err());
        // cross-check against the quotient definition
        for n in 0..12 {
            let quotient = qbrace(n).exact_div(&qbrace(1)).unwrap();
            assert_eq!(quotient, qint(n).unwrap());
        }
    }

    #[test]
    fn braces() {
        assert_eq!(qbrace(1), lp(&[(2, 1), (-2, -1)]));
        assert!(qbrace_fact(0).unwrap().is_one());
        let expected = &lp(&[(2, 1), (-2, -1)]) * &lp(&[(4, 1), (-4, -1)]);
        assert_eq!(qbrace_fact(2).unwrap(), expected);
        for n in 0..10i64 {
            let f = qbrace_fact(n).unwrap();
            assert_eq!(f.min_exponent(), Some(-2 * (n * (n + 1) / 2)));
        }
    }

    #[test]
    fn binomials() {
        for n in 0..8 {
            assert!(qbinom(n, 0).is_one());
        }
        assert_eq!(qbinom(2, 1), lp(&[(2, 1), (-2, 1)]));
        let direct = qbrace_fact(4)
            .unwrap()
            .exact_div(&(&qbrace_fact(2).unwrap() * &qbrace_fact(2).unwrap()))
            .unwrap();
        assert_eq!(qbinom(4, 2), direct);
        assert!(qbinom(3, 4).is_zero());
        assert!(qbinom(3, -1).is_zero());
    }

    #[test]
    fn pochhammer_symbols() {
        assert!(pochhammer(0, 5).is_one());
        assert_eq!(
            pochhammer(2, 0),
            LaurentPoly::from_q_coeffs(&[1, -1, -1, 1])
        );
        let expected = &LaurentPoly::from_q_coeffs(&[1, 0, -1])
            * &LaurentPoly::from_q_coeffs(&[1, 0, 0, -1]);
        assert_eq!(pochhammer(2, 1), expected);
        for n in 0..8u32 {
            for s in 0..4u32 {
                let deg = (n * (n + 1) / 2 + n * s) as i64;
                assert_eq!(pochhammer(n, s).max_exponent(), Some(4 * deg));
            }
        }
    }

    #[test]
    fn exact_division() {
        let one_minus_q = LaurentPoly::from_q_coeffs(&[1, -1]);
        assert_eq!(
            pochhammer(2, 0).exact_div(&one_minus_q).unwrap(),
            LaurentPoly::from_q_coeffs(&[1, 0, -1])
        );
        assert_eq!(
            qbrace_fact(2).unwrap().exact_div(&qbrace(1)).unwrap(),
            qbrace(2)
        );
        let err = LaurentPoly::from_q_coeffs(&[1, 0, -1])
            .exact_div(&LaurentPoly::from_q_coeffs(&[1, 0, 0, -1]))
            .unwrap_err();
        assert!(matches!(err, Error::NotDivisible { .. }));
        assert_eq!(
            LaurentPoly::one().exact_div(&LaurentPoly::zero()),
            Err(Error::DivisionByZero)
        );
        // quarter-power quotient
        let f = lp(&[(1, 2), (5, -2)]);
        let g = lp(&[(0, 1), (4, -1)]);
        assert_eq!(f.exact_div(&g).unwrap(), lp(&[(1, 2)]));
    }

    #[test]
    fn reduction() {
        assert!(reduce_mod(&LaurentPoly::q_pow(3), 1).unwrap().is_one());
        let x = LaurentPoly::from_q_coeffs(&[3, -7, 0, 2, 9, 1]);
        let r = LaurentPoly::from_q_coeffs(&[5, 1]).shift(-8);
        let lifted = &(&pochhammer(2, 0) * &x) + &r;
        assert_eq!(reduce_mod(&lifted, 2).unwrap(), reduce_mod(&r, 2).unwrap());
        // q^-1 mod (q;q)_2
        let p = reduce_mod(&LaurentPoly::q_pow(-1), 2).unwrap();
        let check = &(&LaurentPoly::q_pow(1) * &p) - &LaurentPoly::one();
        assert!(check.exact_div(&pochhammer(2, 0)).is_ok());
        assert!(p.min_exponent().unwrap() >= 0 && p.max_exponent().unwrap() < 12);
        assert!(matches!(
            reduce_mod(&LaurentPoly::v_pow(1), 3),
            Err(Error::FractionalExponent { exponent: 2 })
        ));
    }

    #[test]
    fn inversion() {
        assert_eq!(invert_q(&LaurentPoly::q_pow(1)), LaurentPoly::q_pow(-1));
        for n in 0..8 {
            assert_eq!(qint(n).unwrap().invert_q(), qint(n).unwrap());
        }
    }

    #[test]
    fn json_format() {
        let f = lp(&[(-3, -12), (8, 5)]);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"unit":"q^(1/4)","terms":[[-3,"-12"],[8,"5"]]}"#);
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        assert!(serde_json::from_str::<LaurentPoly>(
            r#"{"unit":"q^(1/4)","terms":[[8,"5"],[-3,"1"]]}"#
        )
        .is_err());
        assert!(serde_json::from_str::<LaurentPoly>(r#"{"unit":"q^(1/4)","terms":[[1,"0"]]}"#)
            .is_err());
    }

    #[test]
    fn display() {
        assert_eq!(lp(&[(-4, 1), (0, -2), (2, 3), (5, 1)]).to_string(), "q^-1 - 2 + 3*q^(1/2) + q^(5/4)");
    }
}
