//! Truncated Taylor series ("jets") with dense coefficient storage.
//!
//! A [`Jet`] of order `n` holds `c_0 ..= c_n`, the coefficients of
//! `t^0 ..= t^n`. Binary operations require equal orders; division shifts
//! out common leading zeros so removable singularities such as `t / ln(1 + t)`
//! come out as ordinary series of reduced order.

use crate::error::{Error, Result};

/// Coefficients below this magnitude count as exact zeros in [`Jet::div`].
pub const ZERO_TOL: f64 = 1e-300;

#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    coeffs: Vec<f64>,
}

/// Elementary functions accepted by [`Jet::compose`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Elementary {
    Exp,
    Ln,
    /// `ln(1 + g)`.
    Ln1p,
    Sqrt,
    Asin,
    Atan,
    Asinh,
    /// `g^q`, computed as `exp(q ln g)`.
    Pow(f64),
}

impl Jet {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Domain("a jet needs at least one coefficient".into()));
        }
        Ok(Jet { coeffs })
    }

    pub fn constant(c: f64, order: usize) -> Self {
        let mut coeffs = vec![0.0; order + 1];
        coeffs[0] = c;
        Jet { coeffs }
    }

    /// `c + t`.
    pub fn variable(c: f64, order: usize) -> Self {
        let mut jet = Jet::constant(c, order);
        if order >= 1 {
            jet.coeffs[1] = 1.0;
        }
        jet
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    /// Coefficient of `t^k`, zero beyond the order.
    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    /// Index of the first coefficient with `|c| >= ZERO_TOL`.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| c.abs() >= ZERO_TOL)
    }

    pub fn truncate(&self, order: usize) -> Result<Jet> {
        if order > self.order() {
            return Err(Error::OrderMismatch(order, self.order()));
        }
        Ok(Jet {
            coeffs: self.coeffs[..=order].to_vec(),
        })
    }

    /// Evaluates the truncated polynomial at `t`.
    pub fn eval(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c)
    }

    fn check_order(&self, rhs: &Jet) -> Result<()> {
        if self.order() != rhs.order() {
            Err(Error::OrderMismatch(self.order(), rhs.order()))
        } else {
            Ok(())
        }
    }

    pub fn add(&self, rhs: &Jet) -> Result<Jet> {
        self.check_order(rhs)?;
        Ok(self.zip_with(rhs, |a, b| a + b))
    }

    pub fn sub(&self, rhs: &Jet) -> Result<Jet> {
        self.check_order(rhs)?;
        Ok(self.zip_with(rhs, |a, b| a - b))
    }

    fn zip_with(&self, rhs: &Jet, f: impl Fn(f64, f64) -> f64) -> Jet {
        Jet {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, s: f64) -> Jet {
        Jet {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn add_scalar(&self, s: f64) -> Jet {
        let mut out = self.clone();
        out.coeffs[0] += s;
        out
    }

    pub fn neg(&self) -> Jet {
        self.scale(-1.0)
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, rhs: &Jet) -> Result<Jet> {
        self.check_order(rhs)?;
        let n = self.order();
        let mut coeffs = vec![0.0; n + 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for (j, &b) in rhs.coeffs[..=n - i].iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Ok(Jet { coeffs })
    }

    pub fn square(&self) -> Jet {
        self.mul(self).expect("same order")
    }

    /// Series of `self / den`.
    ///
    /// With `z` the valuation of `den`, the numerator must vanish to at least
    /// order `z`; both are shifted down by `z` and the result has order `n - z`.
    pub fn div(&self, den: &Jet) -> Result<Jet> {
        self.check_order(den)?;
        let n = self.order();
        let z = den.valuation().ok_or(Error::Pole {
            num: self.valuation().unwrap_or(n + 1),
            den: n + 1,
        })?;
        if let Some(v) = self.valuation() {
            if v < z {
                return Err(Error::Pole { num: v, den: z });
            }
        }
        let a = &self.coeffs[z..];
        let b = &den.coeffs[z..];
        let m = n - z;
        let mut q = vec![0.0; m + 1];
        for k in 0..=m {
            let mut acc = a[k];
            for j in 1..=k {
                acc -= b[j] * q[k - j];
            }
            q[k] = acc / b[0];
        }
        Ok(Jet { coeffs: q })
    }

    pub fn recip(&self) -> Result<Jet> {
        Jet::constant(1.0, self.order()).div(self)
    }

    /// Term-wise derivative; the order drops by one (a constant stays a zero constant).
    pub fn derivative(&self) -> Jet {
        if self.order() == 0 {
            return Jet::constant(0.0, 0);
        }
        Jet {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| k as f64 * c)
                .collect(),
        }
    }

    /// Antiderivative with constant term `c0`; the order grows by one.
    pub fn integral(&self, c0: f64) -> Jet {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(c0);
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, &c)| c / (k + 1) as f64),
        );
        Jet { coeffs }
    }

    pub fn compose(&self, f: Elementary) -> Result<Jet> {
        match f {
            Elementary::Exp => Ok(self.exp()),
            Elementary::Ln => self.ln(),
            Elementary::Ln1p => self.ln_1p(),
            Elementary::Sqrt => self.sqrt(),
            Elementary::Asin => self.asin(),
            Elementary::Atan => Ok(self.atan()),
            Elementary::Asinh => Ok(self.asinh()),
            Elementary::Pow(q) => self.powf(q),
        }
    }

    pub fn exp(&self) -> Jet {
        let g = &self.coeffs;
        let n = self.order();
        let mut h = vec![0.0; n + 1];
        h[0] = g[0].exp();
        for k in 1..=n {
            let mut acc = 0.0;
            for j in 1..=k {
                acc += j as f64 * g[j] * h[k - j];
            }
            h[k] = acc / k as f64;
        }
        Jet { coeffs: h }
    }

    pub fn ln(&self) -> Result<Jet> {
        let g = &self.coeffs;
        if !(g[0] > 0.0) {
            return Err(Error::Domain(format!(
                "ln of a jet with constant term {}",
                g[0]
            )));
        }
        let n = self.order();
        let mut h = vec![0.0; n + 1];
        h[0] = g[0].ln();
        for k in 1..=n {
            let mut acc = k as f64 * g[k];
            for j in 1..k {
                acc -= j as f64 * h[j] * g[k - j];
            }
            h[k] = acc / (k as f64 * g[0]);
        }
        Ok(Jet { coeffs: h })
    }

    pub fn ln_1p(&self) -> Result<Jet> {
        if !(self.coeffs[0] > -1.0) {
            return Err(Error::Domain(format!(
                "ln(1 + g) with constant term {}",
                self.coeffs[0]
            )));
        }
        let mut out = self.add_scalar(1.0).ln()?;
        out.coeffs[0] = self.coeffs[0].ln_1p();
        Ok(out)
    }

    pub fn sqrt(&self) -> Result<Jet> {
        let g = &self.coeffs;
        if !(g[0] > 0.0) {
            return Err(Error::Domain(format!(
                "sqrt of a jet with constant term {}",
                g[0]
            )));
        }
        let n = self.order();
        let mut h = vec![0.0; n + 1];
        h[0] = g[0].sqrt();
        for k in 1..=n {
            let mut acc = g[k];
            for j in 1..k {
                acc -= h[j] * h[k - j];
            }
            h[k] = acc / (2.0 * h[0]);
        }
        Ok(Jet { coeffs: h })
    }

    /// `exp(q ln g)`, for any real `q`.
    pub fn powf(&self, q: f64) -> Result<Jet> {
        let mut out = self.ln()?.scale(q).exp();
        out.coeffs[0] = self.coeffs[0].powf(q);
        Ok(out)
    }

    /// Builds `f(g)` from `f'(g) g'` and the known value `f(g_0)`.
    fn integrate_composition(&self, value: f64, dfdg: Jet) -> Jet {
        if self.order() == 0 {
            return Jet::constant(value, 0);
        }
        let dg = self.derivative();
        let slope = dfdg
            .truncate(dg.order())
            .expect("shorter")
            .mul(&dg)
            .expect("same order");
        slope.integral(value)
    }

    pub fn asin(&self) -> Result<Jet> {
        let g0 = self.coeffs[0];
        if !(g0.abs() < 1.0) {
            return Err(Error::Domain(format!(
                "arcsin of a jet with constant term {g0}"
            )));
        }
        let root = self.square().neg().add_scalar(1.0).sqrt()?;
        Ok(self.integrate_composition(g0.asin(), root.recip()?))
    }

    pub fn atan(&self) -> Jet {
        let den = self.square().add_scalar(1.0);
        let inv = den.recip().expect("1 + g^2 has a positive constant term");
        self.integrate_composition(self.coeffs[0].atan(), inv)
    }

    pub fn asinh(&self) -> Jet {
        let root = self.square().add_scalar(1.0).sqrt().expect("positive");
        let inv = root.recip().expect("positive");
        self.integrate_composition(self.coeffs[0].asinh(), inv)
    }

    pub fn sinh(&self) -> Jet {
        let e = self.exp();
        let f = self.neg().exp();
        e.sub(&f).expect("same order").scale(0.5)
    }

    pub fn cosh(&self) -> Jet {
        let e = self.exp();
        let f = self.neg().exp();
        e.add(&f).expect("same order").scale(0.5)
    }

    pub fn tanh(&self) -> Jet {
        self.sinh()
            .div(&self.cosh())
            .expect("cosh has a positive constant term")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_coeffs(jet: &Jet, expected: &[f64], tol: f64) {
        assert_eq!(jet.order() + 1, expected.len(), "order of {jet:?}");
        for (k, (&a, &b)) in jet.coeffs().iter().zip(expected).enumerate() {
            assert!((a - b).abs() <= tol, "coefficient {k}: {a} vs {b}");
        }
    }

    #[test]
    fn product_of_conjugates() {
        let a = Jet::new(vec![1.0, 1.0, 0.0]).unwrap();
        let b = Jet::new(vec![1.0, -1.0, 0.0]).unwrap();
        assert_coeffs(&a.mul(&b).unwrap(), &[1.0, 0.0, -1.0], 0.0);
    }

    #[test]
    fn additive_identity() {
        let a = Jet::new(vec![1.0, 0.5, 0.0]).unwrap();
        let zero = Jet::constant(0.0, 2);
        assert_eq!(a.add(&zero).unwrap(), a);
    }

    #[test]
    fn t_times_t() {
        let t = Jet::variable(0.0, 4);
        assert_coeffs(&t.mul(&t).unwrap(), &[0.0, 0.0, 1.0, 0.0, 0.0], 0.0);
    }

    #[test]
    fn order_mismatch_is_an_error() {
        let a = Jet::constant(1.0, 2);
        let b = Jet::constant(1.0, 3);
        assert_eq!(a.add(&b), Err(Error::OrderMismatch(2, 3)));
        assert!(a.mul(&b).is_err());
        assert!(a.div(&b).is_err());
    }

    #[test]
    fn removable_quotients() {
        let t = Jet::variable(0.0, 3);
        assert_coeffs(&t.div(&t).unwrap(), &[1.0, 0.0, 0.0], 0.0);
        // t / (t - t^2/2 + t^3/3), the series of t / ln(1 + t)
        let den = Jet::new(vec![0.0, 1.0, -0.5, 1.0 / 3.0]).unwrap();
        assert_coeffs(&t.div(&den).unwrap(), &[1.0, 0.5, -1.0 / 12.0], 1e-15);
    }

    #[test]
    fn genuine_pole() {
        let one = Jet::constant(1.0, 3);
        let t = Jet::variable(0.0, 3);
        assert_eq!(one.div(&t), Err(Error::Pole { num: 0, den: 1 }));
        assert!(one.div(&Jet::constant(0.0, 3)).is_err());
    }

    #[test]
    fn elementary_series() {
        let t = Jet::variable(0.0, 4);
        assert_coeffs(&t.exp(), &[1.0, 1.0, 0.5, 1.0 / 6.0, 1.0 / 24.0], 1e-16);
        let t3 = Jet::variable(0.0, 3);
        assert_coeffs(&t3.asin().unwrap(), &[0.0, 1.0, 0.0, 1.0 / 6.0], 1e-16);
        assert_coeffs(&t3.atan(), &[0.0, 1.0, 0.0, -1.0 / 3.0], 1e-16);
        assert_coeffs(&t3.asinh(), &[0.0, 1.0, 0.0, -1.0 / 6.0], 1e-16);
        let x = Jet::variable(1.0, 2);
        assert_coeffs(&x.sqrt().unwrap(), &[1.0, 0.5, -0.125], 1e-16);
        assert_coeffs(&x.ln().unwrap(), &[0.0, 1.0, -0.5], 1e-16);
        assert_coeffs(&t3.ln_1p().unwrap(), &[0.0, 1.0, -0.5, 1.0 / 3.0], 1e-16);
        assert_coeffs(&x.powf(-1.0).unwrap(), &[1.0, -1.0, 1.0], 1e-15);
        assert_coeffs(&t3.tanh(), &[0.0, 1.0, 0.0, -1.0 / 3.0], 1e-16);
    }

    #[test]
    fn domain_errors() {
        let bad = Jet::variable(-1.0, 2);
        assert!(bad.ln().is_err());
        assert!(bad.sqrt().is_err());
        assert!(bad.powf(0.5).is_err());
        assert!(bad.ln_1p().is_err());
        assert!(Jet::variable(1.0, 2).asin().is_err());
        assert!(bad.compose(Elementary::Ln).is_err());
        assert!(Jet::variable(0.0, 2).compose(Elementary::Atan).is_ok());
    }

    #[test]
    fn odd_functions_keep_odd_jets_odd() {
        let g = Jet::new(vec![0.0, 0.7, 0.0, -0.2, 0.0, 0.05, 0.0, 0.3]).unwrap();
        for f in [Elementary::Asin, Elementary::Atan, Elementary::Asinh] {
            let h = g.compose(f).unwrap();
            for k in (0..=h.order()).step_by(2) {
                assert_eq!(h.coeff(k), 0.0, "{f:?} coefficient {k}");
            }
        }
    }

    #[test]
    fn calculus_helpers() {
        let g = Jet::new(vec![1.0, 2.0, 3.0]).unwrap();
        assert_eq!(g.derivative().coeffs(), &[2.0, 6.0]);
        assert_eq!(g.derivative().integral(1.0), g);
        assert_eq!(g.eval(2.0), 1.0 + 4.0 + 12.0);
        assert!(g.truncate(3).is_err());
        assert_eq!(g.truncate(1).unwrap().coeffs(), &[1.0, 2.0]);
    }
}
