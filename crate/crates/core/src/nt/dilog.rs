//! The dilogarithm and the single-valued Bloch-Wigner function
//! D2(z) = Im Li2(z) + log|z| arg(1 - z).

use crate::error::Error;
use crate::num::{CBall, RBall};
use crate::Result;
use rug::{Float, Rational};

/// Li2 on |z| <= 1/2 by the defining series, with a rigorous geometric
/// tail bound.
fn li2_series(z: &CBall, prec: u32) -> CBall {
    let zabs = z.abs_ub().to_f64();
    assert!(zabs < 0.75, "series region only");
    let terms = ((prec as f64) * std::f64::consts::LN_2 / (-zabs.ln()).max(0.3)) as usize + 8;
    let mut acc = CBall::zero(prec);
    let mut zp = CBall::one(prec);
    for k in 1..=terms {
        zp = zp.mul(z);
        acc = acc.add(&zp.mul(&CBall::from_rational(prec, &Rational::from((1, (k * k) as i64)))));
    }
    // tail <= |z|^{T+1} / ((T+1)^2 (1-|z|))
    let tail = zabs.powi(terms as i32 + 1) / (((terms + 1) * (terms + 1)) as f64 * (1.0 - zabs));
    acc.widen(&Float::with_val(32, tail * 2.0))
}

/// Li2 via the Bernoulli (Debye) series in u = -log(1-z), valid for
/// |u| < 2 pi: Li2(z) = sum_{k>=0} B_k u^{k+1} / (k+1)!.
fn li2_debye(z: &CBall, prec: u32) -> CBall {
    let one = CBall::one(prec);
    let u = one.sub(z).ln().neg();
    let uabs = u.abs_ub().to_f64();
    assert!(uabs < 6.0, "debye region |u| < 2 pi with margin");
    let ratio: f64 = uabs / (2.0 * std::f64::consts::PI);
    let terms = ((prec as f64) * std::f64::consts::LN_2 / (-ratio.ln()).max(0.05)) as usize + 12;
    let mut acc = CBall::zero(prec);
    let mut upow = u.clone(); // u^{k+1}
    let mut fact = Rational::from(1); // (k+1)!
    for k in 0..=terms {
        let b = super::bernoulli::bernoulli_number(k);
        if b != 0 {
            let c = Rational::from(&b / &fact);
            acc = acc.add(&upow.mul(&CBall::from_rational(prec, &c)));
        }
        upow = upow.mul(&u);
        fact *= Rational::from(k as i64 + 2);
    }
    // |B_{2k}/(2k+1)!| <= 4 (2 pi)^{-2k-1}; geometric tail in ratio^2
    let tail = 4.0 * uabs * ratio.powi(terms as i32) / (1.0 - ratio * ratio).max(1e-3);
    acc.widen(&Float::with_val(32, tail * 2.0))
}

/// The principal-branch dilogarithm as a complex ball. The input ball
/// must avoid z = 1 (and z = 0 is fine, Li2(0) = 0).
pub fn li2(z: &CBall, prec: u32) -> Result<CBall> {
    let one = CBall::one(prec);
    // singular guard
    if z.sub(&one).abs_lb() == 0 && z.sub(&one).abs_ub().to_f64() < 1e-12 {
        return Err(Error::SingularPoint("1".into()));
    }
    let zabs = z.abs_ub().to_f64();
    if zabs < 0.5 {
        return Ok(li2_series(z, prec));
    }
    if zabs <= 1.2 {
        // reflect into Re <= 1/2 if needed, then Debye
        let reb = z.re.to_f64();
        if reb <= 0.55 {
            return Ok(li2_debye(z, prec));
        }
        // Li2(z) = pi^2/6 - log z log(1-z) - Li2(1-z)
        let w = one.sub(z);
        let lw = li2(&w, prec)?;
        let pi = RBall::pi(prec);
        let pisq6 = CBall::from_rball(&pi.mul(&pi).div(&RBall::from_i64(prec, 6)));
        let cross = z.ln().mul(&w.ln());
        return Ok(pisq6.sub(&cross).sub(&lw));
    }
    // inversion: Li2(z) = -Li2(1/z) - pi^2/6 - log^2(-z)/2
    let zinv = z.inv();
    let li = li2(&zinv, prec)?;
    let pi = RBall::pi(prec);
    let pisq6 = CBall::from_rball(&pi.mul(&pi).div(&RBall::from_i64(prec, 6)));
    let lg = z.neg().ln();
    let half_lg2 = lg.mul(&lg).mul(&CBall::from_rational(prec, &Rational::from((1, 2))));
    Ok(li.neg().sub(&pisq6).sub(&half_lg2))
}

/// The Bloch-Wigner function D2(z) = Im Li2(z) + log|z| arg(1-z),
/// single-valued and real on C \ {0, 1}; vanishes on the real line.
pub fn bloch_wigner(z: &CBall, prec: u32) -> Result<RBall> {
    let zero_dist = z.abs_lb().to_f64();
    let one_dist = z.sub(&CBall::one(prec)).abs_lb().to_f64();
    if zero_dist == 0.0 && z.abs_ub().to_f64() < 1e-10 {
        return Err(Error::SingularPoint("0".into()));
    }
    if one_dist == 0.0 && z.sub(&CBall::one(prec)).abs_ub().to_f64() < 1e-10 {
        return Err(Error::SingularPoint("1".into()));
    }
    // exactly real input: D2 = 0
    if z.im.is_zero() && z.rad.is_zero() {
        return Ok(RBall::zero(prec));
    }
    let li = li2(z, prec)?;
    let one = CBall::one(prec);
    let w = one.sub(z);
    let log_abs_z = z.abs().ln();
    let arg_w = w.im_ball().atan2(&w.re_ball());
    Ok(li.im_ball().add(&log_abs_z.mul(&arg_w)))
}

/// A formal rational combination of points of C* (divisor notation for
/// Bloch-Wigner evaluations). Points are exact cyclotomic numbers.
#[derive(Clone, Debug)]
pub struct DivisorOnCstar {
    pub terms: Vec<(Rational, crate::cyclotomic::CycNum)>,
}

impl DivisorOnCstar {
    pub fn new(terms: Vec<(Rational, crate::cyclotomic::CycNum)>) -> Result<Self> {
        for (_, p) in &terms {
            if p.is_zero() {
                return Err(Error::InvalidArgument("divisor point must be nonzero".into()));
            }
        }
        Ok(DivisorOnCstar { terms })
    }
}

/// D2 extended to divisors: sum q_i D2(xi_i), skipping xi = 1 terms
/// (where D2 vanishes); returns the number of skipped terms as well.
pub fn d2_divisor(div: &DivisorOnCstar, prec: u32) -> Result<(RBall, usize)> {
    let mut acc = RBall::zero(prec);
    let mut skipped = 0usize;
    for (q, p) in &div.terms {
        if *q == 0 {
            continue;
        }
        if p.as_rational().map(|r| r == 1).unwrap_or(false) {
            skipped += 1;
            continue;
        }
        let z = p.embed(prec);
        let d = bloch_wigner(&z, prec)?;
        acc = acc.add(&d.mul(&RBall::from_rational(prec, q)));
    }
    Ok((acc, skipped))
}
