//! Dense integer polynomials in `q` and reduction modulo `(q;q)_n`.
//!
//! The public scalar type is the sparse [`LaurentPoly`]; the hot loops of the
//! surgery sums and the relation search work on the dense forms here.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::qlaurent::LaurentPoly;

/// `Σ coeffs[i] q^(low + i)`.
#[derive(Clone, Debug, Default)]
pub(crate) struct QPoly {
    pub low: i64,
    pub coeffs: Vec<BigInt>,
}

impl QPoly {
    /// Converts an element of `Z[q^±1]`. Returns the offending quarter exponent
    /// if some term is not an integral power of `q`.
    pub fn from_laurent(f: &LaurentPoly) -> Result<Self, i64> {
        let (Some(lo), Some(hi)) = (f.min_exponent(), f.max_exponent()) else {
            return Ok(QPoly::default());
        };
        for (e, _) in f.terms() {
            if e.rem_euclid(4) != 0 {
                return Err(e);
            }
        }
        let low = lo / 4;
        let mut coeffs = vec![BigInt::zero(); ((hi - lo) / 4 + 1) as usize];
        for (e, c) in f.terms() {
            coeffs[(e / 4 - low) as usize] = c.clone();
        }
        Ok(QPoly { low, coeffs })
    }

    pub fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (4 * (self.low + i as i64), c.clone())),
        )
    }
}

/// Plain convolution of coefficient slices.
pub(crate) fn convolve(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// The ideal `((q;q)_n)` of `Z[q^±1]` with canonical remainders.
///
/// Representatives are coefficient vectors of length `n(n+1)/2`, i.e. the
/// unique polynomial of degree below `deg (q;q)_n` congruent to the input.
#[derive(Clone, Debug)]
pub(crate) struct PochhammerModulus {
    pub degree: usize,
    /// Nonzero coefficients of `(q;q)_n` as `(exponent, coefficient)`.
    terms: Vec<(usize, BigInt)>,
    lead_sign_negative: bool,
}

impl PochhammerModulus {
    pub fn new(level: usize) -> Self {
        let degree = level * (level + 1) / 2;
        let mut poly = vec![BigInt::zero(); degree + 1];
        poly[0] = BigInt::one();
        let mut top = 0usize;
        for j in 1..=level {
            // multiply by (1 - q^j)
            for i in (0..=top).rev() {
                if !poly[i].is_zero() {
                    let c = poly[i].clone();
                    poly[i + j] -= c;
                }
            }
            top += j;
        }
        let terms: Vec<(usize, BigInt)> = poly
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let lead_sign_negative = terms.last().map(|(_, c)| c.is_negative()).unwrap_or(false);
        PochhammerModulus {
            degree,
            terms,
            lead_sign_negative,
        }
    }

    /// Canonical remainder of `p` modulo `(q;q)_n`.
    pub fn reduce(&self, p: &QPoly) -> Vec<BigInt> {
        let d = self.degree;
        if d == 0 {
            return Vec::new();
        }
        // Work on a buffer covering q^min(low,0) ..= q^max(top, d-1).
        let low = p.low.min(0);
        let top = (p.low + p.coeffs.len() as i64 - 1).max(d as i64 - 1);
        let len = (top - low + 1) as usize;
        let mut buf = vec![BigInt::zero(); len + d];
        for (i, c) in p.coeffs.iter().enumerate() {
            buf[(p.low - low) as usize + i] = c.clone();
        }
        // Negative exponents: the constant term of (q;q)_n is 1, so subtracting
        // c q^e (q;q)_n clears q^e and only touches higher exponents.
        let zero_idx = (-low) as usize;
        for i in 0..zero_idx {
            if buf[i].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut buf[i]);
            for (j, m) in self.terms.iter().skip(1) {
                buf[i + j] -= &c * m;
            }
        }
        // Exponents >= d: leading coefficient of (q;q)_n is ±1.
        let mut hi = len - 1;
        while hi >= zero_idx + d {
            if !buf[hi].is_zero() {
                let mut c = std::mem::take(&mut buf[hi]);
                if self.lead_sign_negative {
                    c = -c;
                }
                let base = hi - d;
                for (j, m) in self.terms.iter() {
                    if *j == d {
                        continue;
                    }
                    buf[base + j] -= &c * m;
                }
            }
            hi -= 1;
        }
        buf.drain(..zero_idx);
        buf.truncate(d);
        buf
    }

    /// Canonical remainder of an element of `Z[q^±1]`.
    pub fn reduce_laurent(&self, f: &LaurentPoly) -> crate::Result<Vec<BigInt>> {
        let p = QPoly::from_laurent(f)
            .map_err(|exponent| crate::Error::FractionalExponent { exponent })?;
        Ok(self.reduce(&p))
    }

    pub fn to_laurent(&self, v: &[BigInt]) -> LaurentPoly {
        QPoly {
            low: 0,
            coeffs: v.to_vec(),
        }
        .to_laurent()
    }

    pub fn reduce_vec(&self, v: Vec<BigInt>) -> Vec<BigInt> {
        if v.len() <= self.degree {
            let mut v = v;
            v.resize(self.degree, BigInt::zero());
            return v;
        }
        self.reduce(&QPoly { low: 0, coeffs: v })
    }

    pub fn mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        self.reduce_vec(convolve(a, b))
    }

    /// Multiplies a canonical representative by `q^s` for any integer `s`.
    pub fn shift(&self, a: &[BigInt], s: i64) -> Vec<BigInt> {
        if s == 0 {
            return a.to_vec();
        }
        self.reduce(&QPoly {
            low: s,
            coeffs: a.to_vec(),
        })
    }
}

/// Shared moduli, built once per level.
pub(crate) fn modulus(level: usize) -> Arc<PochhammerModulus> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<PochhammerModulus>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(m) = cache.lock().expect("modulus cache").get(&level) {
        return m.clone();
    }
    let m = Arc::new(PochhammerModulus::new(level));
    cache
        .lock()
        .expect("modulus cache")
        .entry(level)
        .or_insert(m)
        .clone()
}

pub(crate) fn add_assign_vec(acc: &mut Vec<BigInt>, v: &[BigInt]) {
    if acc.len() < v.len() {
        acc.resize(v.len(), BigInt::zero());
    }
    for (a, b) in acc.iter_mut().zip(v) {
        *a += b;
    }
}
