//! Ball arithmetic (midpoint + radius) over MPFR floats.
//!
//! A ball certifies that the true value lies within `rad` of `mid`.
//! Every operation propagates input radii through a Lipschitz bound for
//! the operation and adds one ulp of the result for the rounding of the
//! midpoint. Radii are kept at low precision and rounded up.

use rug::float::{Constant, Round};
use rug::{Float, Rational};
use std::fmt;

/// Precision used for radius bookkeeping.
const RAD_PREC: u32 = 32;

fn rad_zero() -> Float {
    Float::with_val(RAD_PREC, 0)
}

fn f32up(x: &Float) -> Float {
    Float::with_val_round(RAD_PREC, x, Round::Up).0
}

fn f32down(x: &Float) -> Float {
    Float::with_val_round(RAD_PREC, x, Round::Down).0
}

/// Upper bound for the rounding error of the operation that produced `x`
/// at its own precision (one ulp, which over-covers the half-ulp of
/// round-to-nearest).
fn ulp(x: &Float) -> Float {
    if x.is_zero() {
        return rad_zero();
    }
    let e = x.get_exp().unwrap_or(i32::MIN / 4);
    let p = x.prec() as i32;
    Float::with_val(RAD_PREC, Float::i_exp(1, e.saturating_sub(p)))
}

/// Float ops that report a rounding-error bound (zero when exact).
fn fadd(p: u32, a: &Float, b: &Float) -> (Float, Float) {
    let (v, ord) = Float::with_val_round(p, a + b, Round::Nearest);
    let e = if ord == std::cmp::Ordering::Equal { rad_zero() } else { ulp(&v) };
    (v, e)
}

fn fsub(p: u32, a: &Float, b: &Float) -> (Float, Float) {
    let (v, ord) = Float::with_val_round(p, a - b, Round::Nearest);
    let e = if ord == std::cmp::Ordering::Equal { rad_zero() } else { ulp(&v) };
    (v, e)
}

fn fmul(p: u32, a: &Float, b: &Float) -> (Float, Float) {
    let (v, ord) = Float::with_val_round(p, a * b, Round::Nearest);
    let e = if ord == std::cmp::Ordering::Equal { rad_zero() } else { ulp(&v) };
    (v, e)
}

fn fdiv(p: u32, a: &Float, b: &Float) -> (Float, Float) {
    let (v, ord) = Float::with_val_round(p, a / b, Round::Nearest);
    let e = if ord == std::cmp::Ordering::Equal { rad_zero() } else { ulp(&v) };
    (v, e)
}

fn radd(a: &Float, b: &Float) -> Float {
    Float::with_val_round(RAD_PREC, a + b, Round::Up).0
}

fn rmul(a: &Float, b: &Float) -> Float {
    Float::with_val_round(RAD_PREC, a * b, Round::Up).0
}

fn rdiv(a: &Float, b: &Float) -> Float {
    Float::with_val_round(RAD_PREC, a / b, Round::Up).0
}

/// A real ball.
#[derive(Clone, Debug)]
pub struct RBall {
    pub mid: Float,
    pub rad: Float,
}

impl fmt::Display for RBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} +/- {:.3e}]", self.mid, self.rad.to_f64())
    }
}

impl RBall {
    pub fn new(prec: u32, v: f64) -> Self {
        RBall { mid: Float::with_val(prec, v), rad: rad_zero() }
    }

    pub fn zero(prec: u32) -> Self {
        Self::new(prec, 0.0)
    }

    pub fn from_i64(prec: u32, v: i64) -> Self {
        RBall { mid: Float::with_val(prec, v), rad: rad_zero() }
    }

    pub fn from_rational(prec: u32, q: &Rational) -> Self {
        let mid = Float::with_val(prec, q);
        let rad = if mid == *q { rad_zero() } else { ulp(&mid) };
        RBall { mid, rad }
    }

    pub fn pi(prec: u32) -> Self {
        let mid = Float::with_val(prec, Constant::Pi);
        let rad = ulp(&mid);
        RBall { mid, rad }
    }

    pub fn prec(&self) -> u32 {
        self.mid.prec()
    }

    /// Upper bound for |self|.
    pub fn abs_ub(&self) -> Float {
        let a = f32up(&self.mid.clone().abs());
        radd(&a, &self.rad)
    }

    /// Lower bound for |self| (clamped at zero).
    pub fn abs_lb(&self) -> Float {
        let a = f32down(&self.mid.clone().abs());
        let d = Float::with_val_round(RAD_PREC, &a - &self.rad, Round::Down).0;
        if d < 0 {
            rad_zero()
        } else {
            d
        }
    }

    pub fn add(&self, o: &RBall) -> RBall {
        let p = self.prec().max(o.prec());
        let (mid, e) = fadd(p, &self.mid, &o.mid);
        let rad = radd(&radd(&self.rad, &o.rad), &e);
        RBall { mid, rad }
    }

    pub fn sub(&self, o: &RBall) -> RBall {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> RBall {
        RBall { mid: Float::with_val(self.prec(), -&self.mid), rad: self.rad.clone() }
    }

    pub fn mul(&self, o: &RBall) -> RBall {
        let p = self.prec().max(o.prec());
        let (mid, e) = fmul(p, &self.mid, &o.mid);
        let mut rad = e;
        if !o.rad.is_zero() {
            rad = radd(&rad, &rmul(&self.abs_ub(), &o.rad));
        }
        if !self.rad.is_zero() {
            rad = radd(&rad, &rmul(&o.abs_ub(), &self.rad));
        }
        RBall { mid, rad }
    }

    pub fn mul_i64(&self, k: i64) -> RBall {
        let p = self.prec();
        let (mid, e) = fmul(p, &self.mid, &Float::with_val(p, k));
        let kk = Float::with_val(RAD_PREC, k).abs();
        RBall { rad: radd(&rmul(&self.rad, &kk), &e), mid }
    }

    pub fn div(&self, o: &RBall) -> RBall {
        let lb = o.abs_lb();
        assert!(lb > 0u32, "ball division by a ball containing zero");
        let p = self.prec().max(o.prec());
        let (mid, e) = fdiv(p, &self.mid, &o.mid);
        let mut rad = e;
        if !self.rad.is_zero() || !o.rad.is_zero() {
            // |a/b - a~/b~| <= (|a~| rb + |b~| ra) / (|b~| (|b~|-rb))
            let num = radd(&rmul(&self.abs_ub(), &o.rad), &rmul(&o.abs_ub(), &self.rad));
            let den = rmul(&lb, &lb);
            rad = radd(&rad, &rdiv(&num, &den));
        }
        RBall { mid, rad }
    }

    pub fn exp(&self) -> RBall {
        let mid = Float::with_val(self.prec(), self.mid.clone().exp());
        let grow = Float::with_val_round(RAD_PREC, self.rad.clone().exp(), Round::Up).0;
        let mag = radd(&f32up(&mid.clone().abs()), &ulp(&mid));
        let rad = radd(&rmul(&rmul(&mag, &grow), &self.rad), &ulp(&mid));
        RBall { mid, rad }
    }

    pub fn ln(&self) -> RBall {
        let lb = self.abs_lb();
        assert!(self.mid > 0u32 && lb > 0u32, "ball log requires positive argument");
        let mid = Float::with_val(self.prec(), self.mid.clone().ln());
        let rad = radd(&rdiv(&self.rad, &lb), &ulp(&mid));
        RBall { mid, rad }
    }

    pub fn sqrt(&self) -> RBall {
        let lb = self.abs_lb();
        assert!(self.mid >= 0u32, "ball sqrt requires nonneg argument");
        let mid = Float::with_val(self.prec(), self.mid.clone().sqrt());
        let rad = if lb > 0u32 {
            let s = f32down(&Float::with_val(RAD_PREC, lb.clone().sqrt()));
            let two_s = rmul(&s, &Float::with_val(RAD_PREC, 2));
            radd(&rdiv(&self.rad, &two_s), &ulp(&mid))
        } else {
            radd(&Float::with_val_round(RAD_PREC, self.rad.clone().sqrt(), Round::Up).0, &ulp(&mid))
        };
        RBall { mid, rad }
    }

    pub fn powi(&self, k: u32) -> RBall {
        let mut acc = RBall::from_i64(self.prec(), 1);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// atan2(self, x): angle of the point (x, self). The ball of points
    /// must avoid the origin and, on the left half plane, the cut.
    pub fn atan2(&self, x: &RBall) -> RBall {
        let y = self;
        let dist2 = x.mul(x).add(&y.mul(y));
        let lb2 = dist2.abs_lb();
        assert!(lb2 > 0u32, "atan2 ball contains origin");
        let dist = f32down(&Float::with_val(RAD_PREC, lb2.clone().sqrt()));
        if x.mid < 0u32 {
            assert!(y.abs_lb() > 0u32, "atan2 ball touches the branch cut");
        }
        let mid = Float::with_val(self.prec(), self.mid.clone().atan2(&x.mid));
        let spread = radd(&self.rad, &x.rad);
        let rad = radd(&rdiv(&spread, &dist), &ulp(&mid));
        RBall { mid, rad }
    }

    pub fn contains_zero(&self) -> bool {
        let a = Float::with_val(RAD_PREC, self.mid.clone().abs());
        a <= self.rad
    }

    pub fn to_f64(&self) -> f64 {
        self.mid.to_f64()
    }

    pub fn rad_f64(&self) -> f64 {
        self.rad.to_f64()
    }

    pub fn widen(&self, r: &Float) -> RBall {
        RBall { mid: self.mid.clone(), rad: radd(&self.rad, r) }
    }

    pub fn contains_rational(&self, q: &Rational) -> bool {
        let d = Float::with_val(self.prec() + 16, &self.mid - Float::with_val(self.prec() + 16, q)).abs();
        d <= Float::with_val(RAD_PREC, &self.rad + ulp(&self.mid))
    }
}

/// A complex ball (disc): center `re + i im`, radius `rad`.
#[derive(Clone, Debug)]
pub struct CBall {
    pub re: Float,
    pub im: Float,
    pub rad: Float,
}

impl fmt::Display for CBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} + {}i +/- {:.3e}]", self.re, self.im, self.rad.to_f64())
    }
}

impl CBall {
    pub fn new(prec: u32, re: f64, im: f64) -> Self {
        CBall { re: Float::with_val(prec, re), im: Float::with_val(prec, im), rad: rad_zero() }
    }

    pub fn zero(prec: u32) -> Self {
        Self::new(prec, 0.0, 0.0)
    }

    pub fn one(prec: u32) -> Self {
        Self::new(prec, 1.0, 0.0)
    }

    pub fn from_i64(prec: u32, v: i64) -> Self {
        CBall { re: Float::with_val(prec, v), im: Float::with_val(prec, 0), rad: rad_zero() }
    }

    pub fn from_rational(prec: u32, q: &Rational) -> Self {
        let re = Float::with_val(prec, q);
        let rad = if re == *q { rad_zero() } else { ulp(&re) };
        CBall { re, im: Float::with_val(prec, 0), rad }
    }

    pub fn from_rball(r: &RBall) -> Self {
        CBall { re: r.mid.clone(), im: Float::with_val(r.prec(), 0), rad: r.rad.clone() }
    }

    pub fn from_parts(re: &RBall, im: &RBall) -> Self {
        let rad = radd(&re.rad, &im.rad);
        CBall { re: re.mid.clone(), im: im.mid.clone(), rad }
    }

    /// e^{2 pi i k / m}.
    pub fn root_of_unity(prec: u32, k: i64, m: i64) -> Self {
        assert!(m > 0);
        let kk = k.rem_euclid(m);
        let pi = Float::with_val(prec, Constant::Pi);
        let ang = Float::with_val(prec, Float::with_val(prec, 2 * kk) * pi / m);
        let (s, c) = ang.clone().sin_cos(Float::new(prec));
        let rad = radd(&radd(&ulp(&s), &ulp(&c)), &rmul(&ulp(&ang), &Float::with_val(RAD_PREC, 4)));
        CBall { re: c, im: s, rad }
    }

    pub fn i(prec: u32) -> Self {
        CBall { re: Float::with_val(prec, 0), im: Float::with_val(prec, 1), rad: rad_zero() }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn abs_ub(&self) -> Float {
        let h = self.re.clone().hypot(&self.im);
        let h32 = f32up(&h);
        radd(&radd(&h32, &self.rad), &ulp(&h))
    }

    pub fn abs_lb(&self) -> Float {
        let h = self.re.clone().hypot(&self.im);
        let h32 = f32down(&h);
        let d = Float::with_val_round(RAD_PREC, &h32 - &self.rad, Round::Down).0;
        let d = Float::with_val_round(RAD_PREC, &d - &ulp(&h), Round::Down).0;
        if d < 0 {
            rad_zero()
        } else {
            d
        }
    }

    /// |self| as a real ball.
    pub fn abs(&self) -> RBall {
        let h = self.re.clone().hypot(&self.im);
        let rad = radd(&self.rad, &ulp(&h));
        RBall { mid: h, rad }
    }

    pub fn add(&self, o: &CBall) -> CBall {
        let p = self.prec().max(o.prec());
        let (re, e1) = fadd(p, &self.re, &o.re);
        let (im, e2) = fadd(p, &self.im, &o.im);
        let rad = radd(&radd(&self.rad, &o.rad), &radd(&e1, &e2));
        CBall { re, im, rad }
    }

    pub fn sub(&self, o: &CBall) -> CBall {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> CBall {
        CBall {
            re: Float::with_val(self.prec(), -&self.re),
            im: Float::with_val(self.prec(), -&self.im),
            rad: self.rad.clone(),
        }
    }

    pub fn conj(&self) -> CBall {
        CBall {
            re: self.re.clone(),
            im: Float::with_val(self.prec(), -&self.im),
            rad: self.rad.clone(),
        }
    }

    pub fn mul(&self, o: &CBall) -> CBall {
        let p = self.prec().max(o.prec());
        let (t1, e1) = fmul(p, &self.re, &o.re);
        let (t2, e2) = fmul(p, &self.im, &o.im);
        let (re, e3) = fsub(p, &t1, &t2);
        let (t3, e4) = fmul(p, &self.re, &o.im);
        let (t4, e5) = fmul(p, &self.im, &o.re);
        let (im, e6) = fadd(p, &t3, &t4);
        let mut rad = radd(&radd(&e1, &e2), &radd(&e3, &e4));
        rad = radd(&rad, &radd(&e5, &e6));
        if !o.rad.is_zero() {
            rad = radd(&rad, &rmul(&self.abs_ub(), &o.rad));
        }
        if !self.rad.is_zero() {
            rad = radd(&rad, &rmul(&o.abs_ub(), &self.rad));
        }
        CBall { re, im, rad }
    }

    pub fn mul_i64(&self, k: i64) -> CBall {
        let p = self.prec();
        let kf = Float::with_val(p, k);
        let (re, e1) = fmul(p, &self.re, &kf);
        let (im, e2) = fmul(p, &self.im, &kf);
        let kk = Float::with_val(RAD_PREC, k).abs();
        CBall { rad: radd(&rmul(&self.rad, &kk), &radd(&e1, &e2)), re, im }
    }

    pub fn mul_rball(&self, k: &RBall) -> CBall {
        self.mul(&CBall::from_rball(k))
    }

    pub fn inv(&self) -> CBall {
        let lb = self.abs_lb();
        assert!(lb > 0u32, "ball inversion of ball containing zero");
        let p = self.prec();
        let (s1, e1) = fmul(p, &self.re, &self.re);
        let (s2, e2) = fmul(p, &self.im, &self.im);
        let (n, e3) = fadd(p, &s1, &s2);
        let (re, e4) = fdiv(p, &self.re, &n);
        let nim = Float::with_val(p, -&self.im);
        let (im, e5) = fdiv(p, &nim, &n);
        // rounding of the norm feeds through the quotient: bound crudely
        // by (e1+e2+e3)/lb^2 plus the quotient roundings
        let den = rmul(&lb, &lb);
        let mut rad = radd(&radd(&e4, &e5), &rdiv(&radd(&radd(&e1, &e2), &e3), &rmul(&den, &lb)));
        if !self.rad.is_zero() {
            rad = radd(&rad, &rdiv(&self.rad, &den));
        }
        CBall { re, im, rad }
    }

    pub fn div(&self, o: &CBall) -> CBall {
        self.mul(&o.inv())
    }

    pub fn powi(&self, k: i64) -> CBall {
        if k < 0 {
            return self.inv().powi(-k);
        }
        let mut acc = CBall::one(self.prec());
        let mut base = self.clone();
        let mut k = k as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    pub fn exp(&self) -> CBall {
        let p = self.prec();
        let ex = Float::with_val(p, self.re.clone().exp());
        let (s, c) = self.im.clone().sin_cos(Float::new(p));
        let re = Float::with_val(p, &ex * &c);
        let im = Float::with_val(p, &ex * &s);
        let mag = radd(&f32up(&ex), &ulp(&ex));
        let grow = Float::with_val_round(RAD_PREC, self.rad.clone().exp(), Round::Up).0;
        let rad = radd(
            &rmul(&rmul(&mag, &grow), &self.rad),
            &rmul(&radd(&ulp(&re), &ulp(&im)), &Float::with_val(RAD_PREC, 4)),
        );
        CBall { re, im, rad }
    }

    /// Principal logarithm. The ball must not meet the branch cut
    /// (-inf, 0), except for exact points on the negative axis, which
    /// take the limit from above (argument pi).
    pub fn ln(&self) -> CBall {
        let lb = self.abs_lb();
        assert!(lb > 0u32, "ball log of ball containing zero");
        if self.re < 0u32 && !(self.im.is_zero() && self.rad.is_zero()) {
            let a = f32down(&self.im.clone().abs());
            let imlb = Float::with_val_round(RAD_PREC, &a - &self.rad, Round::Down).0;
            assert!(imlb > 0u32, "ball log touches the branch cut");
        }
        let p = self.prec();
        let modulus = self.re.clone().hypot(&self.im);
        let re = Float::with_val(p, modulus.ln());
        let im = Float::with_val(p, self.im.clone().atan2(&self.re));
        let rad = radd(
            &rdiv(&self.rad, &lb),
            &rmul(&radd(&ulp(&re), &ulp(&im)), &Float::with_val(RAD_PREC, 4)),
        );
        CBall { re, im, rad }
    }

    /// sin(pi z) and cos(pi z) as balls.
    pub fn sin_cos_pi(&self) -> (CBall, CBall) {
        let p = self.prec();
        let pi = Float::with_val(p, Constant::Pi);
        let x = Float::with_val(p, &self.re * &pi);
        let y = Float::with_val(p, &self.im * &pi);
        let (sx, cx) = x.clone().sin_cos(Float::new(p));
        let shy = y.clone().sinh();
        let chy = y.clone().cosh();
        let s_re = Float::with_val(p, &sx * &chy);
        let s_im = Float::with_val(p, &cx * &shy);
        let c_re = Float::with_val(p, &cx * &chy);
        let c_im = Float::with_val(p, Float::with_val(p, -&sx) * &shy);
        // Lipschitz constant of z -> sin(pi z) on the ball: pi cosh(pi(|Im z|+rad))
        let ylim = radd(&f32up(&y.clone().abs()), &rmul(&self.rad, &Float::with_val(RAD_PREC, 4)));
        let lip = rmul(
            &Float::with_val_round(RAD_PREC, ylim.cosh(), Round::Up).0,
            &Float::with_val(RAD_PREC, 4),
        );
        let mut base = rmul(&lip, &self.rad);
        for v in [&s_re, &s_im, &c_re, &c_im] {
            base = radd(&base, &rmul(&ulp(v), &Float::with_val(RAD_PREC, 4)));
        }
        (
            CBall { re: s_re, im: s_im, rad: base.clone() },
            CBall { re: c_re, im: c_im, rad: base },
        )
    }

    pub fn re_ball(&self) -> RBall {
        RBall { mid: self.re.clone(), rad: self.rad.clone() }
    }

    pub fn im_ball(&self) -> RBall {
        RBall { mid: self.im.clone(), rad: self.rad.clone() }
    }

    pub fn widen(&self, r: &Float) -> CBall {
        CBall { re: self.re.clone(), im: self.im.clone(), rad: radd(&self.rad, r) }
    }

    pub fn rad_f64(&self) -> f64 {
        self.rad.to_f64()
    }

    pub fn contains_rational_pair(&self, a: &Rational, b: &Rational) -> bool {
        let p = self.prec() + 16;
        let dre = Float::with_val(p, &self.re - Float::with_val(p, a)).abs();
        let dim = Float::with_val(p, &self.im - Float::with_val(p, b)).abs();
        let d = dre.hypot(&dim);
        d <= Float::with_val(RAD_PREC, &self.rad + radd(&ulp(&self.re), &ulp(&self.im)))
    }

    pub fn center_dist(&self, o: &CBall) -> f64 {
        let p = self.prec();
        let d = Float::with_val(p, &self.re - &o.re).hypot(&Float::with_val(p, &self.im - &o.im));
        d.to_f64()
    }
}

/// Richardson extrapolation in 1/M for partial evaluations S(M_0..M_k)
/// with increasing M. Returns the extrapolated value and a heuristic
/// error estimate (last two corrections, times ten).
pub fn richardson(samples: &[(u64, RBall)]) -> (RBall, f64) {
    assert!(!samples.is_empty());
    let n = samples.len();
    let mut tab: Vec<RBall> = samples.iter().map(|(_, s)| s.clone()).collect();
    let ms: Vec<f64> = samples.iter().map(|(m, _)| *m as f64).collect();
    let mut last_corr = 0.0f64;
    for j in 1..n {
        for i in (j..n).rev() {
            let ratio = ms[i] / ms[i - j];
            let diff = tab[i].sub(&tab[i - 1]);
            let corr = diff.div(&RBall::new(tab[i].prec(), ratio - 1.0));
            if i == n - 1 {
                last_corr = corr.to_f64().abs();
            }
            tab[i] = tab[i].add(&corr);
        }
    }
    let est = if n >= 2 {
        let c = tab[n - 1].sub(&tab[n - 2]).to_f64().abs();
        (c.max(last_corr)) * 10.0
    } else {
        f64::INFINITY
    };
    (tab[n - 1].clone(), est)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_basics() {
        let prec = 128;
        let a = RBall::new(prec, 2.0);
        let b = a.sqrt();
        let c = b.mul(&b);
        assert!(c.contains_rational(&Rational::from(2)));
        assert!(c.rad_f64() < 1e-30);
    }

    #[test]
    fn complex_exp_log_roundtrip() {
        let prec = 128;
        let z = CBall::new(prec, 0.3, 1.2);
        let w = z.exp().ln();
        assert!(w.center_dist(&z) < 1e-35);
        assert!(w.rad_f64() < 1e-30);
    }

    #[test]
    fn root_of_unity_power() {
        let prec = 128;
        let z = CBall::root_of_unity(prec, 1, 5);
        let w = z.powi(5);
        assert!(w.contains_rational_pair(&Rational::from(1), &Rational::from(0)));
    }

    #[test]
    fn sin_cos_pi_half() {
        let prec = 128;
        let z = CBall::new(prec, 0.5, 0.0);
        let (s, c) = z.sin_cos_pi();
        assert!(s.contains_rational_pair(&Rational::from(1), &Rational::from(0)));
        assert!(c.contains_rational_pair(&Rational::from(0), &Rational::from(0)));
    }

    #[test]
    fn richardson_extrapolates_harmonic_tail() {
        // S(M) = 1 - 1/M + 1/M^2 should extrapolate to 1
        let prec = 128;
        let samples: Vec<(u64, RBall)> = [100u64, 200, 400, 800, 1600]
            .iter()
            .map(|&m| {
                let mf = m as f64;
                (m, RBall::new(prec, 1.0 - 1.0 / mf + 1.0 / (mf * mf)))
            })
            .collect();
        let (v, est) = richardson(&samples);
        assert!((v.to_f64() - 1.0).abs() < 1e-12);
        assert!(est < 1e-6);
    }
}
