//! Numerical verification: inequality chains, monotonicity in the order,
//! and the auxiliary functions behind the sharp bounds.

use std::f64::consts::{LN_2, PI, SQRT_2};
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{Grid, GridSummary, STRICT_SLACK};
use crate::jet::Jet;
use crate::kind::{MeanKind, PowerTypeSpec};
use crate::means::{ln_power_type, mean_eval, power_type_eval, relative_gap};

/// A strict chain `links[0] < links[1] < ...` of power-type means.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainSpec {
    pub name: String,
    pub links: Vec<PowerTypeSpec>,
}

pub const BUILTIN_CHAINS: [&str; 5] = ["yang1", "yang2", "yang3", "costin_toader", "chu_yang"];

impl ChainSpec {
    pub fn new(name: impl Into<String>, links: Vec<PowerTypeSpec>) -> Result<ChainSpec> {
        if links.len() < 2 {
            return Err(Error::Domain("a chain needs at least two means".into()));
        }
        Ok(ChainSpec {
            name: name.into(),
            links,
        })
    }

    /// One of [`BUILTIN_CHAINS`].
    pub fn builtin(name: &str) -> Result<ChainSpec> {
        use MeanKind::*;
        let m = PowerTypeSpec::of;
        let b = PowerTypeSpec::base;
        let links = match name {
            "yang1" => vec![
                m(L, 2.0),
                b(He),
                m(A, 2.0 / 3.0),
                b(I),
                m(Z, 1.0 / 3.0),
                m(Y, 0.5),
            ],
            "yang3" => vec![
                m(L, 2.0),
                b(P),
                m(N, 0.5),
                b(He),
                m(A, 2.0 / 3.0),
                b(I),
                m(Z, 1.0 / 3.0),
                m(Y, 0.5),
            ],
            "costin_toader" => vec![b(G), b(L), m(A, 0.5), b(P), b(A), b(N), b(T), m(A, 2.0)],
            "chu_yang" => vec![
                m(T, 0.4),
                b(He),
                m(A, 2.0 / 3.0),
                b(I),
                m(Z, 1.0 / 3.0),
                m(Y, 0.5),
            ],
            "yang2" => {
                let c = LN_2 / (3.0 + 2.0 * SQRT_2).ln().ln();
                vec![
                    m(A, 0.0),
                    b(L),
                    m(A, 1.0 / 3.0),
                    m(A, LN_2 / PI.ln()),
                    b(P),
                    m(A, 2.0 / 3.0),
                    b(I),
                    m(A, LN_2),
                    m(A, c),
                    b(N),
                    m(A, 4.0 / 3.0),
                    m(A, LN_2 / (PI / 2.0).ln()),
                    b(T),
                    m(A, 5.0 / 3.0),
                ]
            }
            _ => {
                return Err(Error::Parse(format!(
                    "unknown chain `{name}`; built-in chains: {}",
                    BUILTIN_CHAINS.join(", ")
                )))
            }
        };
        ChainSpec::new(name, links)
    }
}

impl fmt::Display for ChainSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.links.iter().map(|s| s.to_string()).collect();
        write!(f, "{}: {}", self.name, parts.join(" < "))
    }
}

/// One `(x, link)` sample of a chain scan.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapRecord {
    pub name: String,
    pub x: f64,
    pub lhs_spec: PowerTypeSpec,
    pub rhs_spec: PowerTypeSpec,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs / lhs - 1`.
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinkSummary {
    pub lhs: PowerTypeSpec,
    pub rhs: PowerTypeSpec,
    pub min_gap: f64,
    pub argmin_x: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainReport {
    pub spec: ChainSpec,
    pub grid: GridSummary,
    pub links: Vec<LinkSummary>,
    /// Records with `gap < -STRICT_SLACK`, ordered by `x` then link.
    pub violations: Vec<GapRecord>,
    #[serde(skip)]
    pub records: Vec<GapRecord>,
}

impl ChainReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn min_gap(&self) -> f64 {
        self.links
            .iter()
            .map(|l| l.min_gap)
            .fold(f64::INFINITY, f64::min)
    }
}

/// Checks every adjacent link of `spec` at `(x, 1)` for each grid point.
pub fn verify_chain(spec: &ChainSpec, grid: &Grid) -> Result<ChainReport> {
    let mut links: Vec<LinkSummary> = spec
        .links
        .windows(2)
        .map(|w| LinkSummary {
            lhs: w[0],
            rhs: w[1],
            min_gap: f64::INFINITY,
            argmin_x: f64::NAN,
        })
        .collect();
    let mut records = Vec::with_capacity(grid.len() * links.len());
    let mut violations = Vec::new();
    for &x in grid.points() {
        let values = spec
            .links
            .iter()
            .map(|&s| Ok(power_type_eval(s, x, 1.0)?.value))
            .collect::<Result<Vec<f64>>>()?;
        for (i, link) in links.iter_mut().enumerate() {
            let gap = relative_gap(link.lhs, link.rhs, x, 1.0)?;
            if gap < link.min_gap {
                link.min_gap = gap;
                link.argmin_x = x;
            }
            let record = GapRecord {
                name: spec.name.clone(),
                x,
                lhs_spec: link.lhs,
                rhs_spec: link.rhs,
                lhs: values[i],
                rhs: values[i + 1],
                gap,
            };
            if gap < -STRICT_SLACK {
                violations.push(record.clone());
            }
            records.push(record);
        }
    }
    Ok(ChainReport {
        spec: spec.clone(),
        grid: grid.summary(),
        links,
        violations,
        records,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonotonicityViolation {
    pub a: f64,
    pub b: f64,
    pub p_lo: f64,
    pub p_hi: f64,
    pub value_lo: f64,
    pub value_hi: f64,
    pub rel_gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonotonicityReport {
    pub kind: MeanKind,
    pub p_grid: Vec<f64>,
    pub points: Vec<(f64, f64)>,
    /// Smallest `M_{p_{i+1}} / M_{p_i} - 1` over all points and steps.
    pub min_step_gap: f64,
    pub violations: Vec<MonotonicityViolation>,
}

impl MonotonicityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that `p -> M_p(a, b)` increases along the sorted `p_grid` at every point.
pub fn verify_monotonicity_in_p(
    kind: MeanKind,
    p_grid: &[f64],
    points: &[(f64, f64)],
) -> Result<MonotonicityReport> {
    if kind == MeanKind::G {
        return Err(Error::Unsupported("G_p = G does not depend on p".into()));
    }
    if p_grid.iter().any(|p| !p.is_finite()) {
        return Err(Error::Domain("orders must be finite".into()));
    }
    let mut ps = p_grid.to_vec();
    ps.sort_by(f64::total_cmp);
    ps.dedup();
    let mut report = MonotonicityReport {
        kind,
        p_grid: ps.clone(),
        points: points.to_vec(),
        min_step_gap: f64::INFINITY,
        violations: Vec::new(),
    };
    for &(a, b) in points {
        for w in ps.windows(2) {
            let (lo, hi) = (
                PowerTypeSpec::new(kind, w[0])?,
                PowerTypeSpec::new(kind, w[1])?,
            );
            let gap = relative_gap(lo, hi, a, b)?;
            report.min_step_gap = report.min_step_gap.min(gap);
            if gap < -STRICT_SLACK {
                report.violations.push(MonotonicityViolation {
                    a,
                    b,
                    p_lo: w[0],
                    p_hi: w[1],
                    value_lo: power_type_eval(lo, a, b)?.value,
                    value_hi: power_type_eval(hi, a, b)?.value,
                    rel_gap: gap,
                });
            }
        }
    }
    Ok(report)
}

/// `d/dp ln Z_p(a, b) = a^p b^p (ln a - ln b)^2 / (a^p + b^p)^2`.
pub fn z_log_derivative(p: f64, a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0) || !p.is_finite() {
        return Err(Error::Domain(format!(
            "need a, b > 0 and finite p, got ({a}, {b}, {p})"
        )));
    }
    let d = a.ln() - b.ln();
    // a^p b^p / (a^p + b^p)^2 = 1 / (4 cosh^2(p d / 2))
    let s = 0.5 / (0.5 * p * d).cosh();
    Ok(d * d * s * s)
}

/// `d^2 ln M / dx dy` by central differences with one Richardson step.
pub fn mixed_log_partial(kind: MeanKind, x: f64, y: f64) -> Result<f64> {
    if !(x > 0.0 && y > 0.0 && x.is_finite() && y.is_finite()) {
        return Err(Error::Domain(format!(
            "need positive arguments, got ({x}, {y})"
        )));
    }
    let h = 1e-4 * x.min(y);
    if (x - y).abs() < 10.0 * h {
        return Err(Error::IllConditioned(format!(
            "|x - y| = {} is within 10 steps of the diagonal",
            (x - y).abs()
        )));
    }
    let spec = PowerTypeSpec::base(kind);
    let f = |u: f64, v: f64| ln_power_type(spec, u, v);
    let stencil = |h: f64| -> Result<f64> {
        let s = f(x + h, y + h)? - f(x + h, y - h)? - f(x - h, y + h)? + f(x - h, y - h)?;
        Ok(s / (4.0 * h * h))
    };
    let coarse = stencil(h)?;
    let fine = stencil(0.5 * h)?;
    Ok((4.0 * fine - coarse) / 3.0)
}

/// `N(x, y) - A(x, y)^2 / A_2(x, y)`.
pub fn n_lower_bound_check(x: f64, y: f64) -> Result<f64> {
    let n = mean_eval(MeanKind::N, x, y)?.value;
    let a = mean_eval(MeanKind::A, x, y)?.value;
    let a2 = power_type_eval(PowerTypeSpec::of(MeanKind::A, 2.0), x, y)?.value;
    Ok(n - a * a / a2)
}

/// The three auxiliary functions on `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Witness {
    F1,
    F2,
    F3,
}

impl Witness {
    pub const ALL: [Witness; 3] = [Witness::F1, Witness::F2, Witness::F3];

    pub fn from_index(which: u8) -> Result<Witness> {
        match which {
            1 => Ok(Witness::F1),
            2 => Ok(Witness::F2),
            3 => Ok(Witness::F3),
            _ => Err(Error::Domain(format!(
                "witness index must be 1, 2 or 3, got {which}"
            ))),
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Witness::F1 => 1,
            Witness::F2 => 2,
            Witness::F3 => 3,
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f{}", self.index())
    }
}

// Below this |u| each witness is summed from its Taylor series in u; the
// direct formula cancels down to ~u^5 and loses about 1e-10 at |u| = 0.1.
const WITNESS_SERIES_CUTOFF: f64 = 0.5;
// 0.5^(ORDER - 4) stays below 1e-23
const WITNESS_ORDER: usize = 81;

fn witness_jet(which: Witness) -> Result<Jet> {
    let n = WITNESS_ORDER + 2;
    let u = Jet::variable(0.0, n);
    let jet = match which {
        Witness::F1 => {
            let s = u.asin()?.square().scale(2.0).div(&u)?;
            let two_atanh = u.ln_1p()?.sub(&u.neg().ln_1p()?)?;
            s.sub(&two_atanh.truncate(s.order())?)?
        }
        Witness::F2 => {
            let s = u.asinh().square().scale(2.0).div(&u)?;
            s.sub(&u.atan().scale(2.0).truncate(s.order())?)?
        }
        Witness::F3 => {
            let root = u.square().scale(1.0 / 3.0).add_scalar(1.0).sqrt()?;
            let q = u.scale(2.0).div(&root)?;
            q.sub(&u.asinh().scale(2.0))?
        }
    };
    // each witness is odd in u and starts at u^5; drop the rounding residue elsewhere
    let coeffs = jet
        .truncate(WITNESS_ORDER)?
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, &c)| if k >= 5 && k % 2 == 1 { c } else { 0.0 })
        .collect();
    Jet::new(coeffs)
}

fn witness_coeffs(which: Witness) -> &'static Jet {
    static CACHE: OnceLock<Vec<Jet>> = OnceLock::new();
    let table = CACHE.get_or_init(|| {
        Witness::ALL
            .iter()
            .map(|&w| witness_jet(w).expect("witness expansion"))
            .collect()
    });
    &table[which.index() as usize - 1]
}

/// Evaluates `f_1`, `f_2` or `f_3` at `x` in `(0, 1)`.
///
/// With `u = (x - 1) / (x + 1)`:
/// `f_1 = 2 arcsin(u)^2 / u - ln x`,
/// `f_2 = 2 arcsinh(u)^2 / u - arcsin((x^2 - 1) / (x^2 + 1))`,
/// `f_3 = 2u / sqrt(1 + u^2 / 3) - 2 arcsinh(u)`.
pub fn witness_f(which: Witness, x: f64) -> Result<f64> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::Domain(format!(
            "witness functions live on (0, 1), got {x}"
        )));
    }
    let u = (x - 1.0) / (x + 1.0);
    if u.abs() < WITNESS_SERIES_CUTOFF {
        return Ok(witness_coeffs(which).eval(u));
    }
    Ok(match which {
        Witness::F1 => 2.0 * u.asin().powi(2) / u - x.ln(),
        // arcsin((x^2 - 1) / (x^2 + 1)) = 2 arctan(u) for |u| < 1
        Witness::F2 => 2.0 * u.asinh().powi(2) / u - 2.0 * u.atan(),
        Witness::F3 => 2.0 * u / (1.0 + u * u / 3.0).sqrt() - 2.0 * u.asinh(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessReport {
    pub which: Witness,
    pub points: usize,
    pub min_value: f64,
    /// Value at the grid point closest to 1.
    pub value_near_one: f64,
    pub non_positive: Vec<f64>,
    /// Left ends `x_i` of steps where `f(x_{i+1}) >= f(x_i)`.
    pub non_decreasing: Vec<f64>,
}

impl WitnessReport {
    pub fn passed(&self) -> bool {
        self.non_positive.is_empty() && self.non_decreasing.is_empty()
    }
}

/// Checks positivity and strict decrease of a witness over the grid.
pub fn witness_profile(which: Witness, grid: &Grid) -> Result<WitnessReport> {
    let values = grid
        .points()
        .iter()
        .map(|&x| witness_f(which, x))
        .collect::<Result<Vec<f64>>>()?;
    let pts = grid.points();
    Ok(WitnessReport {
        which,
        points: pts.len(),
        min_value: values.iter().copied().fold(f64::INFINITY, f64::min),
        value_near_one: values.last().copied().unwrap_or(f64::NAN),
        non_positive: pts
            .iter()
            .zip(&values)
            .filter(|(_, v)| **v <= 0.0)
            .map(|(x, _)| *x)
            .collect(),
        non_decreasing: (1..pts.len())
            .filter(|&i| values[i] >= values[i - 1])
            .map(|i| pts[i - 1])
            .collect(),
    })
}
