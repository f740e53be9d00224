//! Exact arithmetic in `Z[ζ_N]` for odd `N`.
//!
//! Elements are coordinate vectors in the power basis `1, x, ..., x^(φ(N)-1)`
//! of `Z[x]/Φ_N(x)`. `N = 1` gives `Z`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::qlaurent::{pochhammer, LaurentPoly};

fn check_odd(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("root order must be >= 1".into()));
    }
    if n % 2 == 0 {
        return Err(Error::EvenOrder(n));
    }
    Ok(())
}

/// Coefficients of `Φ_N`, lowest degree first.
pub fn cyclotomic_poly(n: u64) -> Arc<Vec<BigInt>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().expect("cyclotomic cache").get(&n) {
        return p.clone();
    }
    // x^N - 1 divided by Φ_d for every proper divisor d
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            num = div_monic(&num, &cyclotomic_poly(d));
        }
    }
    let p = Arc::new(num);
    cache
        .lock()
        .expect("cyclotomic cache")
        .insert(n, p.clone());
    p
}

/// Quotient of `a` by the monic `b`; the division is exact.
fn div_monic(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let mut rem = a.to_vec();
    let mut quot = vec![BigInt::zero(); a.len() - db];
    for i in (0..quot.len()).rev() {
        let c = std::mem::take(&mut rem[i + db]);
        for (j, bj) in b.iter().enumerate().take(db) {
            rem[i + j] -= &c * bj;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

/// `4^-1 mod N`; for `N = 1` this is 0.
pub fn fourth_root_exponent(n: u64) -> Result<u64> {
    check_odd(n)?;
    if n == 1 {
        return Ok(0);
    }
    Ok((0..n).find(|x| (4 * x) % n == 1).expect("4 is invertible mod odd N"))
}

/// Element of `Z[ζ_N]` in canonical coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclotomicNumber {
    order: u64,
    coords: Vec<BigInt>,
}

impl CyclotomicNumber {
    /// Reduces `Σ c_e x^e` (exponents taken mod N) modulo `Φ_N`.
    pub fn from_exponents<I: IntoIterator<Item = (i64, BigInt)>>(n: u64, terms: I) -> Result<Self> {
        check_odd(n)?;
        let mut full = vec![BigInt::zero(); n as usize];
        for (e, c) in terms {
            full[e.rem_euclid(n as i64) as usize] += c;
        }
        Ok(Self::reduce(n, full))
    }

    fn reduce(n: u64, mut full: Vec<BigInt>) -> Self {
        let phi = cyclotomic_poly(n);
        let d = phi.len() - 1;
        for i in (d..full.len()).rev() {
            let c = std::mem::take(&mut full[i]);
            if c.is_zero() {
                continue;
            }
            for (j, pj) in phi.iter().enumerate().take(d) {
                full[i - d + j] -= &c * pj;
            }
        }
        full.truncate(d);
        CyclotomicNumber {
            order: n,
            coords: full,
        }
    }

    pub fn zero(n: u64) -> Result<Self> {
        Self::from_exponents(n, [])
    }

    pub fn one(n: u64) -> Result<Self> {
        Self::zeta_pow(n, 0)
    }

    pub fn integer(n: u64, c: BigInt) -> Result<Self> {
        Self::from_exponents(n, [(0, c)])
    }

    pub fn zeta_pow(n: u64, e: i64) -> Result<Self> {
        Self::from_exponents(n, [(e, BigInt::one())])
    }

    /// Builds from raw power-basis coordinates, which must have length `φ(N)`.
    pub fn from_coords(n: u64, coords: Vec<BigInt>) -> Result<Self> {
        check_odd(n)?;
        let d = cyclotomic_poly(n).len() - 1;
        if coords.len() != d {
            return Err(Error::InvalidArgument(format!(
                "Z[ζ_{n}] has rank {d}, got {} coordinates",
                coords.len()
            )));
        }
        Ok(CyclotomicNumber { order: n, coords })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.order).expect("order already checked");
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn same_order(&self, other: &Self) {
        assert_eq!(
            self.order, other.order,
            "cyclotomic numbers of different orders"
        );
    }
}

impl Add<&CyclotomicNumber> for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        self.same_order(rhs);
        CyclotomicNumber {
            order: self.order,
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub<&CyclotomicNumber> for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        self.same_order(rhs);
        CyclotomicNumber {
            order: self.order,
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            order: self.order,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul<&CyclotomicNumber> for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        self.same_order(rhs);
        let n = self.order as usize;
        let mut full = vec![BigInt::zero(); n];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coords.iter().enumerate() {
                full[(i + j) % n] += a * b;
            }
        }
        CyclotomicNumber::reduce(self.order, full)
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.sign() == num_bigint::Sign::Minus;
            let mag = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "z^{i}")?,
                (_, false) => write!(f, "{mag}*z^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for CyclotomicNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Raw {
            order: u64,
            coords: Vec<String>,
        }
        Raw {
            order: self.order,
            coords: self.coords.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CyclotomicNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            order: u64,
            coords: Vec<String>,
        }
        let raw = Raw::deserialize(d)?;
        let coords = raw
            .coords
            .iter()
            .map(|c| c.parse::<BigInt>().map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        CyclotomicNumber::from_coords(raw.order, coords).map_err(D::Error::custom)
    }
}

/// Substitutes `q^(1/4) -> ζ_N^(4^-1 mod N)`.
pub fn cyclo_from_laurent(f: &LaurentPoly, n: u64) -> Result<CyclotomicNumber> {
    let inv4 = fourth_root_exponent(n)? as i64;
    let m = n as i64;
    CyclotomicNumber::from_exponents(
        n,
        f.terms()
            .map(|(e, c)| ((e.rem_euclid(m) * inv4) % m.max(1), c.clone())),
    )
}

/// Whether `(ξ^(k+1);ξ)_(k+1)/(1-ξ)` is zero for a primitive `N`-th root `ξ`.
pub fn vanishing_check(n: u64, k: u32) -> Result<bool> {
    let top = pochhammer(k + 1, k);
    let one_minus_q = &LaurentPoly::one() - &LaurentPoly::q_pow(1);
    let quotient = top.exact_div(&one_minus_q)?;
    Ok(cyclo_from_laurent(&quotient, n)?.is_zero())
}

/// Smallest `k0` such that [`vanishing_check`] holds for all `k0 <= k <= N`.
pub fn vanishing_threshold(n: u64) -> Result<u32> {
    let mut k0 = n as u32 + 1;
    for k in (0..=n as u32).rev() {
        if !vanishing_check(n, k)? {
            break;
        }
        k0 = k;
    }
    Ok(k0)
}
