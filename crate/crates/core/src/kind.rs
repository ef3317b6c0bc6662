//! Mean identifiers and power-type orders.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// The ten base means.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MeanKind {
    /// Arithmetic, `(a + b) / 2`.
    A,
    /// Geometric, `sqrt(ab)`.
    G,
    /// Heronian, `(a + b + sqrt(ab)) / 3`.
    He,
    /// Logarithmic, `(a - b) / (ln a - ln b)`.
    L,
    /// Identric, `e^-1 (a^a / b^b)^(1 / (a - b))`.
    I,
    /// First Seiffert, `(a - b) / (2 arcsin((a - b) / (a + b)))`.
    P,
    /// Second Seiffert, `(a - b) / (2 arctan((a - b) / (a + b)))`.
    T,
    /// Neuman-Sándor, `(a - b) / (2 arcsinh((a - b) / (a + b)))`.
    N,
    /// Power-exponential, `a^(a / (a + b)) b^(b / (a + b))`.
    Z,
    /// Exponential-geometric, `I exp(1 - G^2 / L^2)`.
    Y,
}

impl MeanKind {
    pub const ALL: [MeanKind; 10] = [
        MeanKind::A,
        MeanKind::G,
        MeanKind::He,
        MeanKind::L,
        MeanKind::I,
        MeanKind::P,
        MeanKind::T,
        MeanKind::N,
        MeanKind::Z,
        MeanKind::Y,
    ];

    /// Kinds whose power-type transform is a genuine one-parameter family
    /// (`G_p = G` for every `p`).
    pub const PARAMETRIZED: [MeanKind; 9] = [
        MeanKind::A,
        MeanKind::He,
        MeanKind::L,
        MeanKind::I,
        MeanKind::Y,
        MeanKind::P,
        MeanKind::T,
        MeanKind::N,
        MeanKind::Z,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            MeanKind::A => "A",
            MeanKind::G => "G",
            MeanKind::He => "He",
            MeanKind::L => "L",
            MeanKind::I => "I",
            MeanKind::P => "P",
            MeanKind::T => "T",
            MeanKind::N => "N",
            MeanKind::Z => "Z",
            MeanKind::Y => "Y",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for MeanKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for MeanKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        MeanKind::ALL
            .iter()
            .copied()
            .find(|k| k.tag().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                Error::Parse(format!(
                    "unknown mean `{s}` (expected one of A, G, He, L, I, P, T, N, Z, Y)"
                ))
            })
    }
}

impl Serialize for MeanKind {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.tag())
    }
}

/// A mean together with the order `p` of its power-type transform
/// `M_p(a, b) = M(a^p, b^p)^(1/p)`, with `M_0 = sqrt(ab)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerTypeSpec {
    pub kind: MeanKind,
    pub p: f64,
}

impl PowerTypeSpec {
    pub fn new(kind: MeanKind, p: f64) -> Result<Self> {
        if !p.is_finite() {
            return Err(Error::Domain(format!("order p must be finite, got {p}")));
        }
        Ok(PowerTypeSpec { kind, p })
    }

    /// The base mean itself (`p = 1`).
    pub const fn base(kind: MeanKind) -> Self {
        PowerTypeSpec { kind, p: 1.0 }
    }

    /// Panicking constructor for literal orders.
    pub fn of(kind: MeanKind, p: f64) -> Self {
        Self::new(kind, p).expect("finite order")
    }

    pub fn with_order(self, p: f64) -> Result<Self> {
        Self::new(self.kind, p)
    }
}

impl fmt::Display for PowerTypeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p == 1.0 {
            write!(f, "{}", self.kind)
        } else {
            write!(f, "{}:{}", self.kind, format_order(self.p))
        }
    }
}

impl FromStr for PowerTypeSpec {
    type Err = Error;

    /// Parses `KIND` or `KIND:P`, where `P` is a decimal or a ratio such as `2/3`.
    fn from_str(s: &str) -> Result<Self> {
        match s.split_once(':') {
            None => Ok(PowerTypeSpec::base(s.parse()?)),
            Some((kind, order)) => PowerTypeSpec::new(kind.parse()?, parse_order(order)?),
        }
    }
}

impl Serialize for PowerTypeSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Parses a real order written as a decimal (`0.5`, `-2`, `1e-3`) or a ratio (`2/3`, `-1/2`).
pub fn parse_order(s: &str) -> Result<f64> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid order `{s}`"));
    let value = match s.split_once('/') {
        Some((num, den)) => {
            let num: f64 = num.trim().parse().map_err(|_| bad())?;
            let den: f64 = den.trim().parse().map_err(|_| bad())?;
            if den == 0.0 {
                return Err(bad());
            }
            num / den
        }
        None => s.parse().map_err(|_| bad())?,
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(bad())
    }
}

/// Formats an order, preferring a small ratio (denominator up to 12) when one
/// matches to within 1e-12 relative.
pub fn format_order(p: f64) -> String {
    for den in 1..=12i64 {
        let num = (p * den as f64).round();
        if (num / den as f64 - p).abs() <= 1e-12 * p.abs().max(1.0) {
            let num = num as i64;
            return if den == 1 {
                format!("{num}")
            } else {
                format!("{num}/{den}")
            };
        }
    }
    format!("{p}")
}
