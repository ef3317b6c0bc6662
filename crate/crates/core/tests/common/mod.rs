//! High-precision reference evaluations straight from the defining formulas.

#![allow(dead_code)]

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use powmean::{MeanKind, PowerTypeSpec};

/// Working precision in bits (about 77 decimal digits).
pub const PREC: usize = 256;
const RM: RoundingMode = RoundingMode::ToEven;

pub fn num(x: f64) -> BigFloat {
    BigFloat::from_f64(x, PREC)
}

pub fn int(n: i64) -> BigFloat {
    BigFloat::from_i64(n, PREC)
}

pub fn ratio(n: i64, d: i64) -> BigFloat {
    int(n).div(&int(d), PREC, RM)
}

pub fn add(a: &BigFloat, b: &BigFloat) -> BigFloat {
    a.add(b, PREC, RM)
}

pub fn sub(a: &BigFloat, b: &BigFloat) -> BigFloat {
    a.sub(b, PREC, RM)
}

pub fn mul(a: &BigFloat, b: &BigFloat) -> BigFloat {
    a.mul(b, PREC, RM)
}

pub fn div(a: &BigFloat, b: &BigFloat) -> BigFloat {
    a.div(b, PREC, RM)
}

pub fn sqrt(a: &BigFloat) -> BigFloat {
    a.sqrt(PREC, RM)
}

pub struct Oracle {
    cc: Consts,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle::new()
    }
}

impl Oracle {
    pub fn new() -> Oracle {
        Oracle {
            cc: Consts::new().expect("constant cache"),
        }
    }

    pub fn to_f64(&mut self, x: &BigFloat) -> f64 {
        let s = x.format(Radix::Dec, RM, &mut self.cc).expect("formatting");
        s.parse()
            .unwrap_or_else(|_| panic!("unparsable oracle output {s}"))
    }

    pub fn ln(&mut self, a: &BigFloat) -> BigFloat {
        a.ln(PREC, RM, &mut self.cc)
    }
    pub fn exp(&mut self, a: &BigFloat) -> BigFloat {
        a.exp(PREC, RM, &mut self.cc)
    }
    /// `a^q` as `exp(q ln a)`; the library power loops forever on exactly representable results.
    pub fn pow(&mut self, a: &BigFloat, q: &BigFloat) -> BigFloat {
        let l = self.ln(a);
        self.exp(&mul(q, &l))
    }
    pub fn asin(&mut self, a: &BigFloat) -> BigFloat {
        a.asin(PREC, RM, &mut self.cc)
    }
    pub fn atan(&mut self, a: &BigFloat) -> BigFloat {
        a.atan(PREC, RM, &mut self.cc)
    }
    pub fn asinh(&mut self, a: &BigFloat) -> BigFloat {
        a.asinh(PREC, RM, &mut self.cc)
    }
    pub fn pi(&mut self) -> BigFloat {
        self.cc.pi(PREC, RM)
    }
    pub fn e(&mut self) -> BigFloat {
        self.cc.e(PREC, RM)
    }

    /// `M(a, b)` from the textbook definition of each mean.
    pub fn mean(&mut self, kind: MeanKind, a: &BigFloat, b: &BigFloat) -> BigFloat {
        let sum = add(a, b);
        let diff = sub(a, b);
        let two = int(2);
        let g = sqrt(&mul(a, b));
        match kind {
            MeanKind::A => div(&sum, &two),
            MeanKind::G => g,
            MeanKind::He => div(&add(&sum, &g), &int(3)),
            MeanKind::L => {
                let d = sub(&self.ln(a), &self.ln(b));
                div(&diff, &d)
            }
            MeanKind::I => self.identric(a, b),
            MeanKind::P | MeanKind::T | MeanKind::N => {
                let u = div(&diff, &sum);
                let f = match kind {
                    MeanKind::P => self.asin(&u),
                    MeanKind::T => self.atan(&u),
                    _ => self.asinh(&u),
                };
                div(&diff, &mul(&two, &f))
            }
            MeanKind::Z => {
                // a^(a/(a+b)) b^(b/(a+b))
                let la = mul(a, &self.ln(a));
                let lb = mul(b, &self.ln(b));
                let e = div(&add(&la, &lb), &sum);
                self.exp(&e)
            }
            MeanKind::Y => {
                let i = self.identric(a, b);
                let l = self.mean(MeanKind::L, a, b);
                let q = div(&mul(&g, &g), &mul(&l, &l));
                let one = int(1);
                let corr = self.exp(&sub(&one, &q));
                mul(&i, &corr)
            }
        }
    }

    fn identric(&mut self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        // e^-1 (a^a / b^b)^(1/(a-b))
        let la = mul(a, &self.ln(a));
        let lb = mul(b, &self.ln(b));
        let e = div(&sub(&la, &lb), &sub(a, b));
        let one = int(1);
        self.exp(&sub(&e, &one))
    }

    /// `M_p(a, b) = M(a^p, b^p)^(1/p)`, `sqrt(ab)` at `p = 0`.
    pub fn power_mean(
        &mut self,
        kind: MeanKind,
        p: &BigFloat,
        a: &BigFloat,
        b: &BigFloat,
    ) -> BigFloat {
        if p.is_zero() {
            return sqrt(&mul(a, b));
        }
        let ap = self.pow(a, p);
        let bp = self.pow(b, p);
        let m = self.mean(kind, &ap, &bp);
        let inv = div(&int(1), p);
        self.pow(&m, &inv)
    }

    pub fn eval(&mut self, spec: PowerTypeSpec, a: f64, b: f64) -> f64 {
        let (p, a, b) = (num(spec.p), num(a), num(b));
        let v = self.power_mean(spec.kind, &p, &a, &b);
        self.to_f64(&v)
    }

    /// The auxiliary functions evaluated from their original `x` forms.
    pub fn witness(&mut self, which: u8, x: f64) -> f64 {
        let x = num(x);
        let one = int(1);
        let two = int(2);
        let xm = sub(&x, &one);
        let xp = add(&x, &one);
        let u = div(&xm, &xp);
        // ln((x - 1 + sqrt(2(x^2 + 1))) / (x + 1))
        let log_form = |o: &mut Oracle| {
            let x2p1 = add(&mul(&x, &x), &one);
            let r = sqrt(&mul(&two, &x2p1));
            let q = div(&add(&xm, &r), &xp);
            o.ln(&q)
        };
        let v = match which {
            1 => {
                let s = self.asin(&u);
                let lhs = div(&mul(&two, &mul(&s, &s)), &u);
                sub(&lhs, &self.ln(&x))
            }
            2 => {
                let l = log_form(self);
                let lhs = div(&mul(&two, &mul(&l, &l)), &u);
                let x2 = mul(&x, &x);
                let arg = div(&sub(&x2, &one), &add(&x2, &one));
                sub(&lhs, &self.asin(&arg))
            }
            3 => {
                let x2 = mul(&x, &x);
                let q = div(&add(&add(&x2, &x), &one), &int(3));
                let lhs = div(&xm, &sqrt(&q));
                let l = log_form(self);
                sub(&lhs, &mul(&two, &l))
            }
            _ => panic!("no witness {which}"),
        };
        self.to_f64(&v)
    }
}

pub fn rel_err(got: f64, want: f64) -> f64 {
    if want == 0.0 {
        got.abs()
    } else {
        ((got - want) / want).abs()
    }
}
