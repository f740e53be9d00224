//! Truncations of the Habiro ring `lim Z[q]/((q;q)_n)` with `q^(1/4)` offsets.

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize};

use crate::cyclo::{cyclo_from_laurent, CyclotomicNumber};
use crate::dense::{self, QPoly};
use crate::error::{Error, Result};
use crate::qlaurent::{pochhammer, reduce_mod, LaurentPoly};

/// `q^(offset/4) · rep` modulo `(q;q)_level`, with `rep` canonical.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HabiroTrunc {
    level: usize,
    offset: i64,
    rep: LaurentPoly,
}

fn check_level(level: usize) -> Result<()> {
    if level == 0 {
        return Err(Error::InvalidArgument("truncation level must be >= 1".into()));
    }
    Ok(())
}

impl HabiroTrunc {
    /// Reduces `rep` (which must lie in `Z[q^±1]`) and attaches the offset.
    pub fn from_rep(level: usize, offset: i64, rep: &LaurentPoly) -> Result<Self> {
        check_level(level)?;
        Ok(HabiroTrunc {
            level,
            offset,
            rep: reduce_mod(rep, level)?,
        })
    }

    /// The class of `value`, which must lie in `q^(offset/4) Z[q^±1]`.
    pub fn from_value(level: usize, offset: i64, value: &LaurentPoly) -> Result<Self> {
        Self::from_rep(level, offset, &value.shift(-offset))
    }

    /// Like [`Self::from_value`] with the offset read off from `value`
    /// (its common quarter residue, or 0 if `value` is zero).
    pub fn from_laurent(level: usize, value: &LaurentPoly) -> Result<Self> {
        let offset = match value.uniform_residue() {
            Some(r) => r,
            None if value.is_zero() => 0,
            None => {
                return Err(Error::FractionalExponent {
                    exponent: value.residue_classes().keys().nth(1).copied().unwrap_or(0),
                })
            }
        };
        Self::from_value(level, offset, value)
    }

    /// Wraps a representative that is already canonical at `level`.
    pub(crate) fn from_canonical(level: usize, offset: i64, rep: LaurentPoly) -> Self {
        HabiroTrunc { level, offset, rep }
    }

    pub fn one(level: usize) -> Result<Self> {
        Self::from_rep(level, 0, &LaurentPoly::one())
    }

    pub fn zero(level: usize) -> Result<Self> {
        Self::from_rep(level, 0, &LaurentPoly::zero())
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn rep(&self) -> &LaurentPoly {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    /// `q^(offset/4) · rep` as a Laurent polynomial.
    pub fn value(&self) -> LaurentPoly {
        self.rep.shift(self.offset)
    }

    /// Re-expresses the element with offset `g`, which must differ from the
    /// current one by a multiple of 4.
    pub fn with_offset(&self, g: i64) -> Result<Self> {
        let d = self.offset - g;
        if d % 4 != 0 {
            return Err(Error::OffsetMismatch {
                left: self.offset,
                right: g,
            });
        }
        let m = dense::modulus(self.level);
        let p = QPoly::from_laurent(&self.rep).expect("canonical rep");
        let shifted = m.reduce(&QPoly {
            low: p.low + d / 4,
            coeffs: p.coeffs,
        });
        Ok(HabiroTrunc {
            level: self.level,
            offset: g,
            rep: QPoly {
                low: 0,
                coeffs: shifted,
            }
            .to_laurent(),
        })
    }

    /// Multiplies by `q^(e/4)`; only the offset changes.
    pub fn scale_quarter(&self, e: i64) -> Self {
        HabiroTrunc {
            offset: self.offset + e,
            ..self.clone()
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let level = self.level.min(other.level);
        if other.is_zero() {
            return self.project(level);
        }
        if self.is_zero() {
            return other.project(level);
        }
        let g = self.offset.min(other.offset);
        let a = self.project(level)?.with_offset(g)?;
        let b = other.project(level)?.with_offset(g)?;
        Self::from_rep(level, g, &(&a.rep + &b.rep))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&LaurentPoly::constant(-1))?)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let level = self.level.min(other.level);
        let m = dense::modulus(level);
        let a = m.reduce(&QPoly::from_laurent(&self.rep).expect("canonical"));
        let b = m.reduce(&QPoly::from_laurent(&other.rep).expect("canonical"));
        HabiroTrunc {
            level,
            offset: self.offset + other.offset,
            rep: QPoly {
                low: 0,
                coeffs: m.mul(&a, &b),
            }
            .to_laurent(),
        }
    }

    /// Multiplies by `c ∈ Z[q^±1]`.
    pub fn scale(&self, c: &LaurentPoly) -> Result<Self> {
        if let Some((e, _)) = c.terms().find(|(e, _)| e.rem_euclid(4) != 0) {
            return Err(Error::FractionalExponent { exponent: e });
        }
        Self::from_rep(self.level, self.offset, &(&self.rep * c))
    }

    /// Image in the level-`m` truncation.
    pub fn project(&self, m: usize) -> Result<Self> {
        if m == 0 || m > self.level {
            return Err(Error::LevelOutOfRange {
                requested: m,
                available: self.level,
            });
        }
        if m == self.level {
            return Ok(self.clone());
        }
        Self::from_rep(m, self.offset, &self.rep)
    }

    /// Image under `q -> q^-1`, which preserves the ideal `((q;q)_n)`.
    pub fn mirror(&self) -> Self {
        Self::from_rep(self.level, -self.offset, &self.rep.invert_q()).expect("integral rep")
    }
}

impl<'de> Deserialize<'de> for HabiroTrunc {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            level: usize,
            offset: i64,
            rep: LaurentPoly,
        }
        let raw = Raw::deserialize(d)?;
        let x = HabiroTrunc::from_rep(raw.level, raw.offset, &raw.rep).map_err(D::Error::custom)?;
        if x.rep != raw.rep {
            return Err(D::Error::custom("rep is not the canonical representative"));
        }
        Ok(x)
    }
}

/// Linking data of a colored link, plus optional surgery components.
///
/// `lk` is the linking matrix of the `V`-colored components (framings on the
/// diagonal), `colors` their colors `ℓ_i`, `cyclotomic_colors` the colors
/// `k_i` of `P'`-colored components. `surgery_lk` is the linking matrix of
/// the surgery components and `surgery_colored[i][j]` the linking number of
/// surgery component `i` with colored component `j`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkingData {
    pub lk: Vec<Vec<i64>>,
    pub colors: Vec<u64>,
    #[serde(default)]
    pub cyclotomic_colors: Vec<u64>,
    #[serde(default)]
    pub surgery_lk: Vec<Vec<i64>>,
    #[serde(default)]
    pub surgery_colored: Vec<Vec<i64>>,
}

impl LinkingData {
    pub fn validate(&self) -> Result<()> {
        let r = self.colors.len();
        let square = |m: &Vec<Vec<i64>>, n: usize, what: &str| -> Result<()> {
            if m.len() != n || m.iter().any(|row| row.len() != n) {
                return Err(Error::InvalidArgument(format!("{what} must be {n}x{n}")));
            }
            for i in 0..n {
                for j in 0..i {
                    if m[i][j] != m[j][i] {
                        return Err(Error::InvalidArgument(format!("{what} is not symmetric")));
                    }
                }
            }
            Ok(())
        };
        square(&self.lk, r, "lk")?;
        let s = self.surgery_lk.len();
        square(&self.surgery_lk, s, "surgery_lk")?;
        if !self.surgery_colored.is_empty()
            && (self.surgery_colored.len() != s
                || self.surgery_colored.iter().any(|row| row.len() != r))
        {
            return Err(Error::InvalidArgument(format!(
                "surgery_colored must be {s}x{r}"
            )));
        }
        Ok(())
    }

    fn colored_part(&self) -> i64 {
        let l: Vec<i64> = self.colors.iter().map(|&c| c as i64).collect();
        let mut acc = 0;
        for (i, li) in l.iter().enumerate() {
            for (j, lj) in l.iter().enumerate() {
                acc += self.lk[i][j] * li * lj;
            }
            acc += 2 * (self.lk[i][i] + 1) * li;
        }
        acc
    }

    /// `ε_i = Σ_j lk(L'_i, L_j) ℓ_j` for each surgery component.
    pub fn epsilons(&self) -> Vec<i64> {
        self.surgery_colored
            .iter()
            .map(|row| row.iter().zip(&self.colors).map(|(a, &l)| a * l as i64).sum())
            .collect()
    }
}

/// `Σ lk(L_i,L_j) ℓ_i ℓ_j + 2 Σ (lk(L_i,L_i)+1) ℓ_i + Σ k_i(k_i-1)/2`.
pub fn offset_f(d: &LinkingData) -> Result<i64> {
    d.validate()?;
    let k: i64 = d
        .cyclotomic_colors
        .iter()
        .map(|&k| (k as i64) * (k as i64 - 1) / 2)
        .sum();
    Ok(d.colored_part() + k)
}

/// [`offset_f`] without the cyclotomic term.
pub fn offset_g(d: &LinkingData) -> Result<i64> {
    d.validate()?;
    Ok(d.colored_part())
}

/// Surgery components pairwise unlinked and every `ε_i` even.
pub fn evenness_check(d: &LinkingData) -> Result<bool> {
    d.validate()?;
    let s = d.surgery_lk.len();
    for i in 0..s {
        for j in 0..s {
            if i != j && d.surgery_lk[i][j] != 0 {
                return Ok(false);
            }
        }
    }
    Ok(d.epsilons().iter().all(|e| e % 2 == 0))
}

/// Membership of a value in the two ideals attached to a color `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Integrality {
    /// In `(q^(k+1);q)_(k+1)/(1-q) · Z[q^±1]` up to a power of `q^(1/4)`.
    pub strong: bool,
    /// In `(q;q)_k · Z[q^±1]` up to a power of `q^(1/4)`.
    pub weak: bool,
    /// Remainder of the failed strong division.
    pub witness: Option<LaurentPoly>,
}

/// Divisibility of a genuine Laurent polynomial by the color-`k` ideals.
pub fn integrality_of(f: &LaurentPoly, k: u32) -> Integrality {
    let one_minus_q = &LaurentPoly::one() - &LaurentPoly::q_pow(1);
    let strong_div = pochhammer(k + 1, k)
        .exact_div(&one_minus_q)
        .expect("(q^(k+1);q)_(k+1) has the factor 1 - q^(k+1)");
    let (strong, witness) = match f.exact_div(&strong_div) {
        Ok(_) => (true, None),
        Err(Error::NotDivisible { remainder }) => (false, Some(remainder)),
        Err(_) => (false, None),
    };
    let weak = f.exact_div(&pochhammer(k, 0)).is_ok();
    Integrality {
        strong,
        weak,
        witness,
    }
}

/// [`integrality_of`] applied to the representative of `x`; meaningful when the
/// level is high enough that the representative is the exact value.
pub fn integrality_check(x: &HabiroTrunc, k: u32) -> Integrality {
    integrality_of(x.rep(), k)
}

/// Value at `q^(1/4) = ζ_N^(4^-1 mod N)`.
pub fn evaluate_at_root(x: &HabiroTrunc, n: u64) -> Result<CyclotomicNumber> {
    if n % 2 == 0 {
        return Err(Error::EvenOrder(n));
    }
    if (x.level as u64) < n {
        return Err(Error::LevelTooLow {
            level: x.level,
            order: n,
        });
    }
    let r = cyclo_from_laurent(x.rep(), n)?;
    let u = cyclo_from_laurent(&LaurentPoly::monomial(BigInt::from(1), x.offset), n)?;
    Ok(&r * &u)
}

/// Sum of a sequence, projected to `level`; the empty sum is zero.
pub fn sum_all<'a, I: IntoIterator<Item = &'a HabiroTrunc>>(level: usize, items: I) -> Result<HabiroTrunc> {
    let mut acc: Option<HabiroTrunc> = None;
    for x in items {
        acc = Some(match acc {
            None => x.project(level)?,
            Some(a) => a.add(x)?,
        });
    }
    acc.map_or_else(|| HabiroTrunc::zero(level), Ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_q_coeffs(c)
    }

    #[test]
    fn ring_basics() {
        let x = HabiroTrunc::from_rep(6, 2, &lp(&[3, -1, 0, 7])).unwrap();
        let zero = HabiroTrunc::zero(6).unwrap().scale_quarter(2);
        assert_eq!(x.add(&zero).unwrap(), x);
        assert_eq!(x.mul(&HabiroTrunc::one(6).unwrap()), x);
        assert_eq!(x.project(6).unwrap(), x);
    }

    #[test]
    fn offsets_must_be_compatible() {
        let x = HabiroTrunc::one(4).unwrap();
        let y = x.scale_quarter(2);
        assert!(matches!(x.add(&y), Err(Error::OffsetMismatch { .. })));
        let z = x.scale_quarter(4);
        // 1 + q = 1 + q at any level
        assert_eq!(
            x.add(&z).unwrap().value(),
            reduce_mod(&lp(&[1, 1]), 4).unwrap()
        );
    }

    #[test]
    fn product_respects_exponents() {
        let x = HabiroTrunc::from_rep(5, 0, &lp(&[0, 0, 1])).unwrap();
        let y = HabiroTrunc::from_rep(5, 0, &lp(&[0, 1])).unwrap();
        assert_eq!(x.mul(&y), HabiroTrunc::from_rep(5, 0, &lp(&[0, 0, 0, 1])).unwrap());
    }

    #[test]
    fn mirror_is_an_involution() {
        let x = HabiroTrunc::from_rep(5, 3, &lp(&[1, 2, 3, 4, 5, 6, 7])).unwrap();
        assert_eq!(x.mirror().mirror(), x);
    }

    #[test]
    fn offsets() {
        assert_eq!(offset_f(&LinkingData::default()).unwrap(), 0);
        let knot = |l: u64| LinkingData {
            lk: vec![vec![0]],
            colors: vec![l],
            ..Default::default()
        };
        for l in 0..6 {
            assert_eq!(offset_g(&knot(l)).unwrap(), 2 * l as i64);
        }
        for k in 0..6u64 {
            let d = LinkingData {
                cyclotomic_colors: vec![k],
                ..Default::default()
            };
            assert_eq!(offset_f(&d).unwrap(), (k * k - k) as i64 / 2);
        }
    }

    #[test]
    fn evenness() {
        assert!(evenness_check(&LinkingData::default()).unwrap());
        let d = |l: u64| LinkingData {
            lk: vec![vec![0]],
            colors: vec![l],
            surgery_lk: vec![vec![-1]],
            surgery_colored: vec![vec![1]],
            ..Default::default()
        };
        assert!(evenness_check(&d(2)).unwrap());
        assert!(!evenness_check(&d(1)).unwrap());
    }

    #[test]
    fn integrality_examples() {
        assert!(integrality_of(&LaurentPoly::one(), 0).strong);
        let r = integrality_of(&LaurentPoly::one(), 3);
        assert!(!r.strong && !r.weak && r.witness.is_some());
    }

    #[test]
    fn root_evaluation() {
        for n in [1, 3, 5] {
            let one = HabiroTrunc::one(5).unwrap();
            assert_eq!(
                evaluate_at_root(&one, n).unwrap(),
                CyclotomicNumber::one(n).unwrap()
            );
        }
        let x = HabiroTrunc::one(3).unwrap();
        assert!(matches!(evaluate_at_root(&x, 5), Err(Error::LevelTooLow { .. })));
        assert!(matches!(evaluate_at_root(&x, 2), Err(Error::EvenOrder(2))));
    }

    #[test]
    fn json_rejects_noncanonical() {
        let x = HabiroTrunc::from_rep(2, 1, &lp(&[0, 0, 0, 5])).unwrap();
        let s = serde_json::to_string(&x).unwrap();
        assert!(s.starts_with(r#"{"level":2,"offset":1,"rep":"#));
        assert_eq!(serde_json::from_str::<HabiroTrunc>(&s).unwrap(), x);
        let bad = r#"{"level":2,"offset":0,"rep":{"unit":"q^(1/4)","terms":[[12,"1"]]}}"#;
        assert!(serde_json::from_str::<HabiroTrunc>(bad).is_err());
    }
}
