//! Diagonal expansions of the means, built by composing jets.
//!
//! [`mean_series`] and [`power_type_series`] expand `x -> M(x, 1)` in
//! `t = x - 1` directly from each defining formula. [`profile_series`]
//! expands the even log-profile `phi(w) = ln M(e^w, e^-w)` used by the
//! evaluator near the diagonal.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::kind::{MeanKind, PowerTypeSpec};

/// Order used wherever only `c_2` matters.
pub const DEFAULT_ORDER: usize = 8;

/// Extra working order absorbed by removable divisions.
const SLACK: usize = 4;

/// `M(x, 1)` for a jet `x` with constant term 1.
///
/// Quotient means lose one order per removable division (two for `Y`);
/// callers work at a raised order and truncate.
pub fn mean_of_jet(kind: MeanKind, x: &Jet) -> Result<Jet> {
    if x.coeff(0) != 1.0 {
        return Err(Error::Domain(format!(
            "diagonal expansion needs x(0) = 1, got {}",
            x.coeff(0)
        )));
    }
    let n = x.order();
    let one = Jet::constant(1.0, n);
    let tau = x.add_scalar(-1.0);
    let sum = x.add_scalar(1.0);
    let ratio = || tau.div(&sum);
    let quotient = |den: Jet| -> Result<Jet> {
        let num = tau.truncate(den.order())?;
        num.div(&den.scale(2.0))
    };
    let x_ln_x = || -> Result<Jet> { x.mul(&x.ln()?) };
    match kind {
        MeanKind::A => Ok(sum.scale(0.5)),
        MeanKind::G => x.sqrt(),
        MeanKind::He => Ok(sum.add(&x.sqrt()?)?.scale(1.0 / 3.0)),
        MeanKind::L => tau.div(&x.ln()?),
        MeanKind::I => identric(x, &tau),
        MeanKind::P => quotient(ratio()?.asin()?),
        MeanKind::T => quotient(ratio()?.atan()),
        MeanKind::N => quotient(ratio()?.asinh()),
        MeanKind::Z => Ok(x_ln_x()?.div(&sum)?.exp()),
        MeanKind::Y => {
            let i = identric(x, &tau)?;
            let ln_x = x.ln()?;
            let g2_over_l2 = x.mul(&ln_x.square())?.div(&tau.square())?;
            let correction = one.truncate(g2_over_l2.order())?.sub(&g2_over_l2)?.exp();
            let m = i.order().min(correction.order());
            i.truncate(m)?.mul(&correction.truncate(m)?)
        }
    }
}

fn identric(x: &Jet, tau: &Jet) -> Result<Jet> {
    Ok(x.mul(&x.ln()?)?.div(tau)?.add_scalar(-1.0).exp())
}

/// Taylor series of `x -> M(x, 1)` at `x = 1`, in `t = x - 1`, to order `order`.
pub fn mean_series(kind: MeanKind, order: usize) -> Result<Jet> {
    check_order(order)?;
    let x = Jet::variable(1.0, order + SLACK);
    mean_of_jet(kind, &x)?.truncate(order)
}

/// Taylor series of `x -> M_p(x, 1) = M(x^p, 1)^(1/p)` at `x = 1`.
pub fn power_type_series(spec: PowerTypeSpec, order: usize) -> Result<Jet> {
    check_order(order)?;
    if spec.p == 0.0 {
        return Err(Error::Unsupported(
            "p = 0 has no power-type series; M_0 is the geometric mean".into(),
        ));
    }
    let x = Jet::variable(1.0, order + SLACK);
    let mut xp = x.powf(spec.p)?;
    // exp(p ln 1) is exactly 1, but pin it so the removable divisions see an exact zero.
    xp = pin_constant(xp, 1.0);
    let inner = pin_constant(mean_of_jet(spec.kind, &xp)?, 1.0);
    pin_constant(inner.powf(1.0 / spec.p)?, 1.0).truncate(order)
}

fn pin_constant(jet: Jet, c0: f64) -> Jet {
    let mut coeffs = jet.into_coeffs();
    coeffs[0] = c0;
    Jet::new(coeffs).expect("non-empty")
}

fn check_order(order: usize) -> Result<()> {
    if order < 2 {
        return Err(Error::Unsupported(format!(
            "series order must be at least 2, got {order}"
        )));
    }
    Ok(())
}

/// Highest power of `w` kept in the cached log-profiles.
pub const PROFILE_DEGREE: usize = 24;

/// Series in `w` of the log-profile `phi(w) = ln M(e^w, e^-w)`.
///
/// Every mean is `G(a, b) exp(phi(w))` with `w = ln(a / b) / 2`, and `phi`
/// is even because each mean is symmetric.
pub fn profile_series(kind: MeanKind, order: usize) -> Result<Jet> {
    let work = order + SLACK;
    let w = Jet::variable(0.0, work);
    let sinh = w.sinh();
    let cosh = w.cosh();
    let tanh = w.tanh();
    let ln_ratio = |num: &Jet, den: Jet| -> Result<Jet> {
        let q = num.truncate(den.order())?.div(&den)?;
        q.ln()
    };
    let phi = match kind {
        MeanKind::A => cosh.ln()?,
        MeanKind::G => Jet::constant(0.0, work),
        MeanKind::He => cosh.scale(2.0 / 3.0).add_scalar(1.0 / 3.0).ln()?,
        MeanKind::L => ln_ratio(&sinh, w.clone())?,
        MeanKind::P => ln_ratio(&sinh, tanh.asin()?)?,
        MeanKind::T => ln_ratio(&sinh, tanh.atan())?,
        MeanKind::N => ln_ratio(&sinh, tanh.asinh())?,
        MeanKind::I => w.div(&tanh)?.add_scalar(-1.0),
        MeanKind::Y => {
            let coth_part = w.div(&tanh)?;
            let csch_part = w.div(&sinh)?.square();
            coth_part.sub(&csch_part)?
        }
        MeanKind::Z => w.mul(&tanh)?,
    };
    phi.truncate(order)
}

/// Cached even coefficients `k_j` of `phi(w) = sum_j k_j w^(2j)`, `j = 0..=PROFILE_DEGREE/2`.
pub fn profile_coeffs(kind: MeanKind) -> &'static [f64] {
    static CACHE: OnceLock<Vec<Vec<f64>>> = OnceLock::new();
    let table = CACHE.get_or_init(|| {
        MeanKind::ALL
            .iter()
            .map(|&k| {
                let jet = profile_series(k, PROFILE_DEGREE).expect("profile expansion");
                jet.coeffs().iter().step_by(2).copied().collect()
            })
            .collect()
    });
    &table[kind.index()]
}
