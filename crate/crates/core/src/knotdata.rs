//! Cyclotomic coefficients `J_K(P'_k)` of knots: built-in tables, inversion
//! of colored Jones data, and knot files.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::habiro::integrality_of;
use crate::qlaurent::{pochhammer, qbinom, qbrace_fact, LaurentPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleKind {
    Builtin,
    DerivedFromColoredJones,
    File,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Source {
    Unknot,
    FigureEight,
    Table(Vec<LaurentPoly>),
    Mirror(Box<KnotOracle>),
}

/// A knot given by its cyclotomic coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotOracle {
    name: String,
    kind: OracleKind,
    source: Source,
}

impl KnotOracle {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> OracleKind {
        self.kind
    }

    /// Largest supported index; `None` for the built-in knots.
    pub fn max_k(&self) -> Option<usize> {
        match &self.source {
            Source::Table(v) => Some(v.len() - 1),
            Source::Mirror(o) => o.max_k(),
            _ => None,
        }
    }

    /// `J_K(P'_k)`.
    pub fn coeff(&self, k: usize) -> Result<LaurentPoly> {
        match &self.source {
            Source::Unknot => Ok(if k == 0 {
                LaurentPoly::one()
            } else {
                LaurentPoly::zero()
            }),
            Source::FigureEight => Ok(fig8_coeff(k)),
            Source::Table(v) => v.get(k).cloned().ok_or(Error::OracleTooShort {
                needed: k,
                available: v.len() - 1,
            }),
            Source::Mirror(o) => {
                let c = o.coeff(k)?.invert_q();
                Ok(if k % 2 == 0 { c } else { -c })
            }
        }
    }

    /// `J_K(P'_0), ..., J_K(P'_kmax)`.
    pub fn coeffs_upto(&self, kmax: usize) -> Result<Vec<LaurentPoly>> {
        if let Some(m) = self.max_k() {
            if kmax > m {
                return Err(Error::OracleTooShort {
                    needed: kmax,
                    available: m,
                });
            }
        }
        (0..=kmax).map(|k| self.coeff(k)).collect()
    }

    /// A table-backed oracle; checks `J(P'_0) = 1` and integrality.
    pub fn from_table(name: &str, kind: OracleKind, values: Vec<LaurentPoly>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidArgument("no coefficients given".into()));
        }
        if !values[0].is_one() {
            return Err(Error::InvariantViolation {
                index: 0,
                reason: format!("J(P'_0) must be 1, got {}", values[0]),
            });
        }
        for (k, c) in values.iter().enumerate() {
            if !integrality_of(c, k as u32).strong {
                return Err(Error::InvariantViolation {
                    index: k,
                    reason: "not in (q^(k+1);q)_(k+1)/(1-q) Z[q^±1]".into(),
                });
            }
        }
        Ok(KnotOracle {
            name: name.to_string(),
            kind,
            source: Source::Table(values),
        })
    }
}

/// `J(P'_k) = δ_(k,0)`.
pub fn oracle_unknot() -> KnotOracle {
    KnotOracle {
        name: "unknot".into(),
        kind: OracleKind::Builtin,
        source: Source::Unknot,
    }
}

/// The figure-eight knot `4_1`.
pub fn oracle_fig8() -> KnotOracle {
    KnotOracle {
        name: "4_1".into(),
        kind: OracleKind::Builtin,
        source: Source::FigureEight,
    }
}

/// The mirror image: `J(P'_k)(q) -> (-1)^k J(P'_k)(q^-1)`, the sign coming
/// from `{k}!` under `v -> v^-1`.
pub fn mirror_oracle(o: &KnotOracle) -> KnotOracle {
    KnotOracle {
        name: format!("{}*", o.name),
        kind: o.kind,
        source: Source::Mirror(Box::new(o.clone())),
    }
}

/// Looks up a built-in knot by name.
pub fn builtin(name: &str) -> Option<KnotOracle> {
    match name {
        "unknot" | "0_1" => Some(oracle_unknot()),
        "4_1" | "fig8" | "figure-eight" => Some(oracle_fig8()),
        _ => None,
    }
}

/// `(-1)^k q^(-k(k+1)/2 - k(k+3)/4) (q^(k+1);q)_(k+1) / (1-q)`.
fn fig8_coeff(k: usize) -> LaurentPoly {
    let ki = k as i64;
    let one_minus_q = &LaurentPoly::one() - &LaurentPoly::q_pow(1);
    let body = pochhammer(k as u32 + 1, k as u32)
        .exact_div(&one_minus_q)
        .expect("1 - q^(k+1) is a factor");
    let sign = if k % 2 == 0 { 1 } else { -1 };
    body.shift(-2 * ki * (ki + 1) - ki * (ki + 3))
        .scale(&sign.into())
}

/// `J_K(V_n) = Σ_{i<=n} [n+i+1, 2i+1] {i}! J_K(P'_i)` for `n <= nmax`.
pub fn colored_jones_from_cyclotomic(o: &KnotOracle, nmax: usize) -> Result<Vec<LaurentPoly>> {
    let c = o.coeffs_upto(nmax)?;
    (0..=nmax as i64)
        .map(|n| {
            (0..=n)
                .map(|i| {
                    Ok(&(&qbinom(n + i + 1, 2 * i + 1) * &qbrace_fact(i)?) * &c[i as usize])
                })
                .sum::<Result<LaurentPoly>>()
        })
        .collect()
}

/// Inverts [`colored_jones_from_cyclotomic`].
pub fn cyclotomic_from_colored_jones(name: &str, values: &[LaurentPoly]) -> Result<KnotOracle> {
    let mut coeffs: Vec<LaurentPoly> = Vec::with_capacity(values.len());
    for (n, jn) in values.iter().enumerate() {
        let ni = n as i64;
        let mut rest = jn.clone();
        for (i, c) in coeffs.iter().enumerate() {
            let i = i as i64;
            rest -= &(&qbinom(ni + i + 1, 2 * i + 1) * &qbrace_fact(i)?) * c;
        }
        // the diagonal coefficient is [2n+1, 2n+1] {n}! = {n}!
        let c = match rest.exact_div(&qbrace_fact(ni)?) {
            Ok(c) => c,
            Err(Error::NotDivisible { .. }) => return Err(Error::NotLaurent { index: n }),
            Err(e) => return Err(e),
        };
        coeffs.push(c);
    }
    KnotOracle::from_table(name, OracleKind::DerivedFromColoredJones, coeffs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KnotFileKind {
    Cyclotomic,
    ColoredJones,
}

/// On-disk knot data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KnotFile {
    pub name: String,
    pub kind: KnotFileKind,
    pub max_index: usize,
    pub values: Vec<LaurentPoly>,
}

impl KnotFile {
    pub fn into_oracle(self) -> Result<KnotOracle> {
        if self.values.len() != self.max_index + 1 {
            return Err(Error::Parse(format!(
                "max_index is {} but {} values are given",
                self.max_index,
                self.values.len()
            )));
        }
        match self.kind {
            KnotFileKind::Cyclotomic => {
                KnotOracle::from_table(&self.name, OracleKind::File, self.values)
            }
            KnotFileKind::ColoredJones => cyclotomic_from_colored_jones(&self.name, &self.values),
        }
    }

    /// Cyclotomic data of `o` up to `max_index`.
    pub fn from_oracle(o: &KnotOracle, max_index: usize) -> Result<Self> {
        Ok(KnotFile {
            name: o.name().to_string(),
            kind: KnotFileKind::Cyclotomic,
            max_index,
            values: o.coeffs_upto(max_index)?,
        })
    }
}

pub fn parse_knot_file(text: &str) -> Result<KnotOracle> {
    serde_json::from_str::<KnotFile>(text)?.into_oracle()
}

pub fn load_knot_file(path: &Path) -> Result<KnotOracle> {
    parse_knot_file(&std::fs::read_to_string(path)?)
}
