//! Dedekind eta quotients as q-series.

use crate::error::Error;
use crate::series::QSeries;
use crate::Result;
use rug::Rational;

/// The Euler product prod_{n>=1} (1 - x^n) to the given order, via the
/// pentagonal number theorem.
pub fn euler_product(order: usize) -> QSeries {
    let mut s = QSeries::zero(order);
    s.coeffs[0] = Rational::from(1);
    let mut k: i64 = 1;
    loop {
        let g1 = k * (3 * k - 1) / 2;
        let g2 = k * (3 * k + 1) / 2;
        if g1 as usize > order && g2 as usize > order {
            break;
        }
        let sign = if k % 2 == 0 { 1 } else { -1 };
        if (g1 as usize) <= order {
            s.coeffs[g1 as usize] += Rational::from(sign);
        }
        if (g2 as usize) <= order {
            s.coeffs[g2 as usize] += Rational::from(sign);
        }
        k += 1;
    }
    s
}

/// Computes prod_i eta(q^{d_i})^{e_i} as a power series in the variable
/// q0, where q = q0^var_scale. The total q0-exponent of the eta
/// prefactors, var_scale * sum(d_i e_i) / 24, must be a nonnegative
/// integer; otherwise `NonintegralExponent` is returned.
pub fn eta_quotient(factors: &[(u32, i32)], var_scale: u32, order: usize) -> Result<QSeries> {
    assert!(var_scale >= 1);
    let s = var_scale as i64;
    let mut pref24: i64 = 0;
    for (d, e) in factors {
        pref24 += s * (*d as i64) * (*e as i64);
    }
    if pref24 % 24 != 0 || pref24 < 0 {
        return Err(Error::NonintegralExponent(format!("{}", Rational::from((pref24, 24)))));
    }
    let shift = (pref24 / 24) as usize;
    if shift > order {
        return Err(Error::NonintegralExponent(format!(
            "prefactor exponent {} exceeds truncation order {}",
            shift, order
        )));
    }
    let mut acc = QSeries::one(order);
    for (d, e) in factors {
        let step = (*d as i64 * s) as usize;
        let inner = euler_product(order / step.max(1));
        // stretch into a series of full truncation order
        let mut base = QSeries::zero(order);
        for (j, c) in inner.coeffs.iter().enumerate() {
            if j * step <= order {
                base.coeffs[j * step] = c.clone();
            }
        }
        let p = if *e >= 0 {
            series_pow(&base, *e as u32)
        } else {
            series_pow(&base.recip()?, (-*e) as u32)
        };
        acc = acc.mul(&p);
    }
    Ok(acc.shift_up(shift))
}

fn series_pow(s: &QSeries, k: u32) -> QSeries {
    let mut acc = QSeries::one(s.order());
    let mut base = s.clone();
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
