//! Evaluation of the means and their power-type transforms.
//!
//! Every mean here is symmetric and homogeneous, so it factors as
//! `M(a, b) = G(a, b) exp(phi(w))` with `w = |ln(a / b)| / 2` and an even
//! log-profile `phi` that depends only on the kind:
//!
//! | kind | `phi(w)` |
//! |------|----------|
//! | A  | `ln cosh w` |
//! | G  | `0` |
//! | He | `ln((2 cosh w + 1) / 3)` |
//! | L  | `ln(sinh w / w)` |
//! | I  | `w coth w - 1` |
//! | P  | `ln(sinh w / arcsin(tanh w))` |
//! | T  | `ln(sinh w / arctan(tanh w))` |
//! | N  | `ln(sinh w / arcsinh(tanh w))` |
//! | Z  | `w tanh w` |
//! | Y  | `w coth w - (w / sinh w)^2` |
//!
//! The power-type transform becomes `phi_p(w) = phi(|p| w) / p`, so large
//! orders never form `a^p` explicitly. Below [`SERIES_CUTOFF`] the profile is
//! summed from its cached Taylor coefficients, which keeps the 0/0 quotients
//! exact at the diagonal and makes differences of nearly tangent means
//! accurate to full relative precision.

use std::f64::consts::{E, FRAC_1_PI, LN_2, PI, SQRT_2};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kind::{MeanKind, PowerTypeSpec};
use crate::series::profile_coeffs;

/// Profile arguments below this use the Taylor coefficients.
pub const SERIES_CUTOFF: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeanValue {
    pub value: f64,
    /// Estimated relative accuracy of `value`.
    pub rel_error_bound: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiagonalWeights {
    pub wx: f64,
    pub wy: f64,
}

fn check_args(a: f64, b: f64) -> Result<()> {
    if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
        return Err(Error::Domain(format!(
            "means need positive finite arguments, got ({a}, {b})"
        )));
    }
    Ok(())
}

/// Half the absolute log-ratio, `|ln(a / b)| / 2`.
pub fn half_log_ratio(a: f64, b: f64) -> f64 {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    if hi < 2.0 * lo {
        0.5 * ((hi - lo) / lo).ln_1p()
    } else {
        0.5 * (hi.ln() - lo.ln())
    }
}

fn ln_sinh(v: f64) -> f64 {
    if v < 20.0 {
        v.sinh().ln()
    } else {
        v - LN_2 + (-(-2.0 * v).exp()).ln_1p()
    }
}

fn ln_cosh(v: f64) -> f64 {
    if v < 20.0 {
        v.cosh().ln()
    } else {
        v - LN_2 + (-2.0 * v).exp().ln_1p()
    }
}

/// `ln(sinh v / den)`.
fn sinh_quotient(v: f64, den: f64) -> f64 {
    if v < 20.0 {
        (v.sinh() / den).ln()
    } else {
        ln_sinh(v) - den.ln()
    }
}

fn profile_direct(kind: MeanKind, v: f64) -> f64 {
    match kind {
        MeanKind::A => ln_cosh(v),
        MeanKind::G => 0.0,
        MeanKind::He => ln_cosh(v) + ((2.0 + 1.0 / v.cosh()) / 3.0).ln(),
        MeanKind::L => sinh_quotient(v, v),
        // arcsin(tanh v) = arctan(sinh v), which stays well conditioned as tanh v -> 1
        MeanKind::P => sinh_quotient(v, v.sinh().atan()),
        MeanKind::T => sinh_quotient(v, v.tanh().atan()),
        MeanKind::N => sinh_quotient(v, v.tanh().asinh()),
        MeanKind::I => v / v.tanh() - 1.0,
        MeanKind::Y => {
            let r = v / v.sinh();
            v / v.tanh() - r * r
        }
        MeanKind::Z => v * v.tanh(),
    }
}

fn profile_from_series(kind: MeanKind, v: f64) -> f64 {
    let v2 = v * v;
    profile_coeffs(kind)
        .iter()
        .rev()
        .fold(0.0, |acc, &k| acc * v2 + k)
}

/// The log-profile `phi(v)` of a base mean, `v >= 0`.
pub fn profile(kind: MeanKind, v: f64) -> f64 {
    let v = v.abs();
    if v < SERIES_CUTOFF {
        profile_from_series(kind, v)
    } else {
        profile_direct(kind, v)
    }
}

/// `phi(|p| w) / p`, the log-profile of `M_p`.
pub fn power_profile(spec: PowerTypeSpec, w: f64) -> f64 {
    if spec.p == 0.0 || spec.kind == MeanKind::G {
        0.0
    } else {
        profile(spec.kind, spec.p.abs() * w) / spec.p
    }
}

/// Coefficient of `w^(2j)` in the profile of `M_p`.
fn power_profile_coeff(spec: PowerTypeSpec, j: usize) -> f64 {
    if spec.p == 0.0 {
        return 0.0;
    }
    let k = profile_coeffs(spec.kind)[j];
    k * spec.p.abs().powi(2 * j as i32) / spec.p
}

/// `M(a, b)` for a base mean.
pub fn mean_eval(kind: MeanKind, a: f64, b: f64) -> Result<MeanValue> {
    power_type_eval(PowerTypeSpec::base(kind), a, b)
}

/// `M_p(a, b) = M(a^p, b^p)^(1/p)`, or `sqrt(ab)` at `p = 0`.
pub fn power_type_eval(spec: PowerTypeSpec, a: f64, b: f64) -> Result<MeanValue> {
    check_args(a, b)?;
    if !spec.p.is_finite() {
        return Err(Error::Domain(format!(
            "order p must be finite, got {}",
            spec.p
        )));
    }
    if a == b {
        return Ok(MeanValue {
            value: a,
            rel_error_bound: 0.0,
        });
    }
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    if spec.p == 1.0 && spec.kind == MeanKind::A {
        return Ok(MeanValue {
            value: 0.5 * lo + 0.5 * hi,
            rel_error_bound: f64::EPSILON,
        });
    }
    let w = half_log_ratio(lo, hi);
    let phi = power_profile(spec, w);
    let g = lo.sqrt() * hi.sqrt();
    let value = (g * phi.exp()).clamp(lo, hi);
    let amplification = if spec.p != 0.0 && spec.p.abs() < 1.0 {
        1.0 / spec.p.abs()
    } else {
        1.0
    };
    Ok(MeanValue {
        value,
        rel_error_bound: 4.0 * f64::EPSILON * (2.0 + phi.abs() + w * amplification),
    })
}

/// `ln M_p(a, b)`, computed without forming `M_p`.
pub fn ln_power_type(spec: PowerTypeSpec, a: f64, b: f64) -> Result<f64> {
    check_args(a, b)?;
    let c = 0.5 * (a.ln() + b.ln());
    Ok(c + power_profile(spec, half_log_ratio(a, b)))
}

/// `ln(rhs(a, b) / lhs(a, b))`, accurate even where the two means are tangent.
///
/// The common geometric factor cancels exactly; near the diagonal the two
/// profiles are subtracted coefficient by coefficient before summation.
pub fn log_gap(lhs: PowerTypeSpec, rhs: PowerTypeSpec, a: f64, b: f64) -> Result<f64> {
    check_args(a, b)?;
    let w = half_log_ratio(a, b);
    let reach = lhs.p.abs().max(rhs.p.abs()) * w;
    if reach < SERIES_CUTOFF {
        let w2 = w * w;
        let terms = profile_coeffs(lhs.kind).len();
        let mut acc = 0.0;
        for j in (1..terms).rev() {
            acc = acc * w2 + (power_profile_coeff(rhs, j) - power_profile_coeff(lhs, j));
        }
        Ok(acc * w2)
    } else {
        Ok(power_profile(rhs, w) - power_profile(lhs, w))
    }
}

/// `rhs / lhs - 1` at `(a, b)`.
pub fn relative_gap(lhs: PowerTypeSpec, rhs: PowerTypeSpec, a: f64, b: f64) -> Result<f64> {
    Ok(log_gap(lhs, rhs, a, b)?.exp_m1())
}

/// `lim_{x -> 0+} M(x, 1)` of each base mean.
pub fn base_endpoint(kind: MeanKind) -> f64 {
    match kind {
        MeanKind::A => 0.5,
        MeanKind::G => 0.0,
        MeanKind::He => 1.0 / 3.0,
        MeanKind::L => 0.0,
        MeanKind::I => 1.0 / E,
        MeanKind::P => FRAC_1_PI,
        MeanKind::T => 2.0 / PI,
        MeanKind::N => 0.5 / (1.0 + SQRT_2).ln(),
        MeanKind::Z => 1.0,
        MeanKind::Y => 1.0,
    }
}

/// `lim_{x -> 0+} M_p(x, 1)`, available in closed form for `p > 0`.
pub fn endpoint_limit(spec: PowerTypeSpec) -> Result<f64> {
    if !(spec.p > 0.0) || !spec.p.is_finite() {
        return Err(Error::NotAvailable(format!(
            "endpoint limit of {spec} (closed forms cover p > 0 only)"
        )));
    }
    let base = base_endpoint(spec.kind);
    if spec.p == 1.0 {
        Ok(base)
    } else if base == 0.0 {
        Ok(0.0)
    } else {
        Ok((base.ln() / spec.p).exp())
    }
}

/// `(M_x(1, 1), M_y(1, 1))` by central differences with one Richardson step.
pub fn diagonal_weights(kind: MeanKind) -> DiagonalWeights {
    const H: f64 = 1e-6;
    let m = |a: f64, b: f64| mean_eval(kind, a, b).expect("positive arguments").value;
    let central = |f: &dyn Fn(f64) -> f64, h: f64| (f(1.0 + h) - f(1.0 - h)) / (2.0 * h);
    let richardson = |f: &dyn Fn(f64) -> f64| (4.0 * central(f, H / 2.0) - central(f, H)) / 3.0;
    DiagonalWeights {
        wx: richardson(&|x| m(x, 1.0)),
        wy: richardson(&|y| m(1.0, y)),
    }
}

/// `|M_{pt}(a, b)^t - M_p(a^t, b^t)| / M_p(a^t, b^t)`.
pub fn rescaling_identity_residual(spec: PowerTypeSpec, t: f64, a: f64, b: f64) -> Result<f64> {
    check_args(a, b)?;
    let scaled = spec.with_order(spec.p * t)?;
    let lhs = power_type_eval(scaled, a, b)?.value.powf(t);
    let rhs = power_type_eval(spec, a.powf(t), b.powf(t))?.value;
    if !lhs.is_finite() {
        return Err(Error::Domain(format!("M_pt(a, b)^t overflows for t = {t}")));
    }
    Ok((lhs - rhs).abs() / rhs)
}
