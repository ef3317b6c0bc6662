//! Sharp exponents from the diagonal expansion.
//!
//! For a comparison `F_p < G` (or `G < F_p`) the coefficient of `(x - 1)^2`
//! in `lesser(x, 1) - greater(x, 1)` must be `<= 0` for the inequality to
//! hold near the diagonal. That coefficient, `c2(p)`, is affine in `p` for
//! every pair handled here, and its root is the sharp exponent `p*`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{Grid, STRICT_SLACK};
use crate::kind::{format_order, MeanKind, PowerTypeSpec};
use crate::means::{endpoint_limit, power_type_eval, relative_gap};
use crate::series::{power_type_series, DEFAULT_ORDER};

/// Which side of the reference the parametrized family is claimed to lie on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    FamilyBelow,
    FamilyAbove,
}

impl Direction {
    pub fn flip(self) -> Direction {
        match self {
            Direction::FamilyBelow => Direction::FamilyAbove,
            Direction::FamilyAbove => Direction::FamilyBelow,
        }
    }
}

impl std::str::FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "below" | "family_below" => Ok(Direction::FamilyBelow),
            "above" | "family_above" => Ok(Direction::FamilyAbove),
            _ => Err(Error::Parse(format!(
                "direction must be `below` or `above`, got `{s}`"
            ))),
        }
    }
}

/// `family_p` compared against a fixed power-type mean.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComparisonPair {
    pub family: MeanKind,
    pub reference: PowerTypeSpec,
    pub direction: Direction,
}

/// Which half of the sharp statement is established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sufficiency {
    Proven,
    Conjectural,
    Unknown,
}

/// Range of `p` on which the inequality can hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HoldsWhen {
    AtMost,
    AtLeast,
}

impl HoldsWhen {
    fn symbol(self) -> &'static str {
        match self {
            HoldsWhen::AtMost => "<=",
            HoldsWhen::AtLeast => ">=",
        }
    }
}

/// The six comparisons with a known sharp exponent.
pub fn known_pairs() -> [(ComparisonPair, f64, Sufficiency); 6] {
    use Direction::*;
    use MeanKind::*;
    let pair = |family, reference, direction| ComparisonPair {
        family,
        reference: PowerTypeSpec::base(reference),
        direction,
    };
    [
        (pair(L, P, FamilyBelow), 2.0, Sufficiency::Proven),
        (pair(P, N, FamilyBelow), 2.0, Sufficiency::Proven),
        (pair(He, N, FamilyAbove), 2.0, Sufficiency::Proven),
        (pair(Z, I, FamilyAbove), 1.0 / 3.0, Sufficiency::Proven),
        (pair(Z, Y, FamilyBelow), 2.0 / 3.0, Sufficiency::Proven),
        (pair(T, N, FamilyAbove), 0.8, Sufficiency::Conjectural),
    ]
}

/// `N < T_p`, the conjectured comparison.
pub fn conjecture_pair() -> ComparisonPair {
    ComparisonPair {
        family: MeanKind::T,
        reference: PowerTypeSpec::base(MeanKind::N),
        direction: Direction::FamilyAbove,
    }
}

impl ComparisonPair {
    pub fn new(family: MeanKind, reference: PowerTypeSpec, direction: Direction) -> Self {
        ComparisonPair {
            family,
            reference,
            direction,
        }
    }

    pub fn family_at(&self, p: f64) -> Result<PowerTypeSpec> {
        PowerTypeSpec::new(self.family, p)
    }

    /// `(lesser, greater)` at order `p`.
    pub fn sides(&self, p: f64) -> Result<(PowerTypeSpec, PowerTypeSpec)> {
        let family = self.family_at(p)?;
        Ok(match self.direction {
            Direction::FamilyBelow => (family, self.reference),
            Direction::FamilyAbove => (self.reference, family),
        })
    }

    /// Symbolic form such as `N < T_p`.
    pub fn label(&self) -> String {
        let family = format!("{}_p", self.family);
        let reference = self.reference.to_string();
        match self.direction {
            Direction::FamilyBelow => format!("{family} < {reference}"),
            Direction::FamilyAbove => format!("{reference} < {family}"),
        }
    }

    pub fn sufficiency(&self) -> Sufficiency {
        known_pairs()
            .iter()
            .find(|(known, _, _)| {
                known.family == self.family
                    && known.reference.kind == self.reference.kind
                    && (known.reference.p - self.reference.p).abs() < 1e-12
                    && known.direction == self.direction
            })
            .map(|(_, _, s)| *s)
            .unwrap_or(Sufficiency::Unknown)
    }
}

fn c2_of_spec(spec: PowerTypeSpec) -> Result<f64> {
    if spec.p == 0.0 {
        // M_0 = G, whose series is sqrt(1 + t)
        return Ok(-0.125);
    }
    Ok(power_type_series(spec, DEFAULT_ORDER)?.coeff(2))
}

/// Coefficient of `(x - 1)^2` in `lesser(x, 1) - greater(x, 1)` with the family at order `p`.
pub fn c2_of_p(pair: &ComparisonPair, p: f64) -> Result<f64> {
    if p == 0.0 {
        return Err(Error::Unsupported(
            "c2 analysis excludes p = 0 (M_0 = G)".into(),
        ));
    }
    let (lesser, greater) = pair.sides(p)?;
    Ok(c2_of_spec(lesser)? - c2_of_spec(greater)?)
}

/// Orders at which `c2` is sampled for the affine fit.
pub const SAMPLE_ORDERS: [f64; 9] = [-2.0, -1.0, -0.5, 1.0 / 3.0, 0.5, 1.0, 2.0, 3.0, 4.0];

/// Offset used for the endpoint and sharpness probes around `p*`.
pub const PROBE_DELTA: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EndpointCheck {
    pub delta: f64,
    pub at_star: f64,
    pub below: Option<f64>,
    pub above: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriticalExponentReport {
    pub pair: ComparisonPair,
    pub label: String,
    pub c2_samples: Vec<(f64, f64)>,
    pub p_star: f64,
    pub c2_slope: f64,
    pub c2_intercept: f64,
    /// Largest deviation of the samples from the fitted line.
    pub affine_deviation: f64,
    pub holds_when: HoldsWhen,
    pub sufficiency: Sufficiency,
    pub endpoint_check: Option<EndpointCheck>,
}

impl CriticalExponentReport {
    pub fn verdict(&self) -> String {
        let condition = format!(
            "p {} {}",
            self.holds_when.symbol(),
            format_order(self.p_star)
        );
        match self.sufficiency {
            Sufficiency::Proven => {
                format!(
                    "{} holds for all a != b if and only if {condition}",
                    self.label
                )
            }
            Sufficiency::Conjectural => format!(
                "{} requires {condition}; sufficiency is conjectural (numerical evidence only)",
                self.label
            ),
            Sufficiency::Unknown => format!(
                "{} requires {condition} (necessary condition from the diagonal expansion)",
                self.label
            ),
        }
    }
}

/// Bracket for the root of `c2`, expanded by doubling.
const INITIAL_BRACKET: f64 = 8.0;
const MAX_BRACKET: f64 = 64.0;
const ROOT_TOL: f64 = 1e-12;

/// Root of `c2(p)` by bisection, plus the affine fit and endpoint probes.
pub fn critical_exponent(pair: &ComparisonPair) -> Result<CriticalExponentReport> {
    let c2 = |p: f64| c2_of_p(pair, p);
    let mut half = INITIAL_BRACKET;
    let (mut lo, mut hi, mut f_lo) = loop {
        let (lo, hi) = (-half, half);
        let (f_lo, f_hi) = (c2(lo)?, c2(hi)?);
        if f_lo == 0.0 {
            break (lo, lo, f_lo);
        }
        if f_hi == 0.0 {
            break (hi, hi, f_hi);
        }
        if f_lo.signum() != f_hi.signum() {
            break (lo, hi, f_lo);
        }
        if half >= MAX_BRACKET {
            return Err(Error::NoRoot { lo, hi });
        }
        half *= 2.0;
    };
    while hi - lo > ROOT_TOL {
        let mut mid = 0.5 * (lo + hi);
        if mid == 0.0 {
            mid = lo + 0.25 * (hi - lo);
        }
        let f_mid = c2(mid)?;
        if f_mid == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    let p_star = 0.5 * (lo + hi);

    let c2_samples = SAMPLE_ORDERS
        .iter()
        .map(|&p| Ok((p, c2(p)?)))
        .collect::<Result<Vec<_>>>()?;
    let (slope, intercept) = least_squares(&c2_samples);
    let affine_deviation = c2_samples
        .iter()
        .map(|&(p, c)| (c - (slope * p + intercept)).abs())
        .fold(0.0, f64::max);
    let holds_when = if slope > 0.0 {
        HoldsWhen::AtMost
    } else {
        HoldsWhen::AtLeast
    };

    let endpoint_check = endpoint_gap(pair, p_star)
        .ok()
        .map(|at_star| EndpointCheck {
            delta: PROBE_DELTA,
            at_star,
            below: endpoint_gap(pair, p_star - PROBE_DELTA).ok(),
            above: endpoint_gap(pair, p_star + PROBE_DELTA).ok(),
        });

    Ok(CriticalExponentReport {
        pair: *pair,
        label: pair.label(),
        c2_samples,
        p_star,
        c2_slope: slope,
        c2_intercept: intercept,
        affine_deviation,
        holds_when,
        sufficiency: pair.sufficiency(),
        endpoint_check,
    })
}

fn least_squares(points: &[(f64, f64)]) -> (f64, f64) {
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points
        .iter()
        .map(|&(x, y)| (x - mean_x) * (y - mean_y))
        .sum();
    let sxx: f64 = points.iter().map(|&(x, _)| (x - mean_x).powi(2)).sum();
    let slope = sxy / sxx;
    (slope, mean_y - slope * mean_x)
}

/// A comparison moved to the other side by `M_{pt}(a, b)^t = M_p(a^t, b^t)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RestatedPair {
    pub pair: ComparisonPair,
    pub p_star: f64,
}

/// `F_p < G_r` for `p > 0` is `F < G_{r/p}` at `(a^p, b^p)`, so the free order
/// moves to the reference side and `p*` becomes `r / p*`.
pub fn restate_by_rescaling(pair: &ComparisonPair, p_star: f64) -> Result<RestatedPair> {
    if p_star == 0.0 || pair.reference.p == 0.0 {
        return Err(Error::Unsupported(
            "rescaling needs a nonzero sharp exponent and a nonzero reference order".into(),
        ));
    }
    if pair.reference.kind == MeanKind::G {
        return Err(Error::Unsupported(
            "G_p = G has no free order to move".into(),
        ));
    }
    Ok(RestatedPair {
        pair: ComparisonPair {
            family: pair.reference.kind,
            reference: PowerTypeSpec::base(pair.family),
            direction: pair.direction.flip(),
        },
        p_star: pair.reference.p / p_star,
    })
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct RescalingCheck {
    pub agree: usize,
    pub disagree: usize,
    /// Samples where either gap was within the strictness slack.
    pub indeterminate: usize,
}

/// Compares the outcome of `pair` at `(a, b, p)` with `restated` at `(a^p, b^p, r / p)`.
pub fn rescaling_agreement(
    pair: &ComparisonPair,
    restated: &ComparisonPair,
    samples: &[(f64, f64, f64)],
) -> Result<RescalingCheck> {
    let mut check = RescalingCheck::default();
    for &(a, b, p) in samples {
        if !(p > 0.0) {
            return Err(Error::Domain(format!(
                "rescaling samples need p > 0, got {p}"
            )));
        }
        let (lesser, greater) = pair.sides(p)?;
        let original = relative_gap(lesser, greater, a, b)?;
        let (lesser, greater) = restated.sides(pair.reference.p / p)?;
        let moved = relative_gap(lesser, greater, a.powf(p), b.powf(p))?;
        if original.abs() <= STRICT_SLACK || moved.abs() <= STRICT_SLACK {
            check.indeterminate += 1;
        } else if (original > 0.0) == (moved > 0.0) {
            check.agree += 1;
        } else {
            check.disagree += 1;
        }
    }
    Ok(check)
}

/// `lim_{x -> 0+} [lesser(x, 1) - greater(x, 1)]` with the family at order `p`.
pub fn endpoint_gap(pair: &ComparisonPair, p: f64) -> Result<f64> {
    let (lesser, greater) = pair.sides(p)?;
    Ok(endpoint_limit(lesser)? - endpoint_limit(greater)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanViolation {
    pub x: f64,
    pub lesser: f64,
    pub greater: f64,
    pub rel_gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairScan {
    pub label: String,
    pub p: f64,
    pub points: usize,
    /// Smallest `greater / lesser - 1` over the grid.
    pub min_gap: f64,
    pub argmin_x: f64,
    pub violations: Vec<ScanViolation>,
}

impl PairScan {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `lesser(x, 1) < greater(x, 1)` at every grid point.
pub fn scan_pair(pair: &ComparisonPair, p: f64, grid: &Grid) -> Result<PairScan> {
    let (lesser, greater) = pair.sides(p)?;
    let mut scan = PairScan {
        label: format!("{lesser} < {greater}"),
        p,
        points: grid.len(),
        min_gap: f64::INFINITY,
        argmin_x: f64::NAN,
        violations: Vec::new(),
    };
    for &x in grid.points() {
        let gap = relative_gap(lesser, greater, x, 1.0)?;
        if gap < scan.min_gap {
            scan.min_gap = gap;
            scan.argmin_x = x;
        }
        if gap < -STRICT_SLACK {
            scan.violations.push(ScanViolation {
                x,
                lesser: power_type_eval(lesser, x, 1.0)?.value,
                greater: power_type_eval(greater, x, 1.0)?.value,
                rel_gap: gap,
            });
        }
    }
    Ok(scan)
}

/// The default scan grid: [`Grid::blended`] merged with [`Grid::diagonal_refined`].
pub fn scan_grid(samples: usize) -> Result<Grid> {
    Ok(Grid::blended(samples)?.merge(&Grid::diagonal_refined()))
}

/// Sign of `T_p(x, 1) - N(x, 1)` over the grid.
pub fn conjecture_scan(p: f64, grid: &Grid) -> Result<PairScan> {
    if !(p > 0.0) {
        return Err(Error::Domain(format!(
            "conjecture scan needs p > 0, got {p}"
        )));
    }
    scan_pair(&conjecture_pair(), p, grid)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SharpnessWitness {
    pub p_star: f64,
    pub failing: PairScan,
    pub passing: PairScan,
}

/// Scans at `p* +- PROBE_DELTA`: the side excluded by `c2` must fail, the other must not.
pub fn sharpness_witness(report: &CriticalExponentReport, grid: &Grid) -> Result<SharpnessWitness> {
    let sigma = match report.holds_when {
        HoldsWhen::AtMost => 1.0,
        HoldsWhen::AtLeast => -1.0,
    };
    let p_fail = report.p_star + sigma * PROBE_DELTA;
    let p_pass = report.p_star - sigma * PROBE_DELTA;
    Ok(SharpnessWitness {
        p_star: report.p_star,
        failing: scan_pair(&report.pair, p_fail, grid)?,
        passing: scan_pair(&report.pair, p_pass, grid)?,
    })
}
