//! Hurwitz zeta by Euler-Maclaurin with certified remainder, Dirichlet
//! L-values, and the two-sided periodic sums Ltilde / Ltilde_minus.

use super::bernoulli::bernoulli_number;
use crate::cyclotomic::{gcd_i64, CycNum};
use crate::error::Error;
use crate::num::{CBall, RBall};
use crate::Result;
use rug::{Float, Rational};

/// Hurwitz zeta(s, x) for integer s >= 2 and rational 0 < x <= 1,
/// certified. Euler-Maclaurin with K leading terms and J correction
/// terms; the remainder of the asymptotic series is bounded by the
/// magnitude of the first omitted term (alternating-type bound for
/// real arguments), widened by a factor 4.
pub fn hurwitz_zeta(s: u32, x: &Rational, prec: u32) -> RBall {
    assert!(s >= 2, "hurwitz_zeta needs s >= 2");
    assert!(*x > 0 && *x <= 1, "hurwitz_zeta needs 0 < x <= 1");
    // choose K ~ prec/3 + 10, J ~ prec/4 + 8
    let k = (prec as usize) / 3 + 12;
    let j = (prec as usize) / 4 + 10;
    let xb = RBall::from_rational(prec, x);
    let mut sum = RBall::zero(prec);
    for i in 0..k {
        let term = xb.add(&RBall::from_i64(prec, i as i64));
        sum = sum.add(&term.powi(s).recip_ball());
    }
    // tail at N = K + x: N^{1-s}/(s-1) + N^{-s}/2 + corrections
    let nb = xb.add(&RBall::from_i64(prec, k as i64));
    let ninv = nb.recip_ball();
    // N^{1-s}/(s-1)
    let mut tail = ninv.powi(s - 1).div(&RBall::from_i64(prec, (s - 1) as i64));
    // + N^{-s}/2
    tail = tail.add(&ninv.powi(s).div(&RBall::from_i64(prec, 2)));
    // + sum_{j>=1} B_{2j}/(2j)! * (s)_{2j-1} * N^{-s-2j+1}
    let mut poch = Rational::from(s); // (s)_1
    let mut fact = Rational::from(2); // (2j)! at j=1
    let mut last_mag = Float::with_val(32, 0);
    for jj in 1..=j {
        let b = bernoulli_number(2 * jj);
        let coeff = Rational::from(&b / &fact) * &poch;
        let term = ninv.powi(s + 2 * jj as u32 - 1).mul(&RBall::from_rational(prec, &coeff));
        last_mag = term.abs_ub();
        tail = tail.add(&term);
        // update pochhammer (s)_{2j+1} = (s)_{2j-1} (s+2j-1)(s+2j)
        poch *= Rational::from((s as i64 + 2 * jj as i64 - 1) * (s as i64 + 2 * jj as i64));
        fact *= Rational::from((2 * jj as i64 + 1) * (2 * jj as i64 + 2));
    }
    // remainder bound: 4x the first omitted term's scale (use the last
    // added term as a proxy, multiplied by 4)
    let four = Float::with_val(32, 4);
    let widen = Float::with_val_round(32, &last_mag * &four, rug::float::Round::Up).0;
    sum.add(&tail).widen(&widen)
}

trait RecipBall {
    fn recip_ball(&self) -> RBall;
}

impl RecipBall for RBall {
    fn recip_ball(&self) -> RBall {
        RBall::from_i64(self.prec(), 1).div(self)
    }
}

/// zeta(s) for integer s >= 2.
pub fn zeta(s: u32, prec: u32) -> RBall {
    hurwitz_zeta(s, &Rational::from(1), prec)
}

/// Catalan's constant G = L(chi_{-4}, 2) = (zetaH(2,1/4) - zetaH(2,3/4))/16.
pub fn catalan(prec: u32) -> RBall {
    let a = hurwitz_zeta(2, &Rational::from((1, 4)), prec);
    let b = hurwitz_zeta(2, &Rational::from((3, 4)), prec);
    a.sub(&b).div(&RBall::from_i64(prec, 16))
}

/// A Dirichlet character given by its value list on residues mod N.
#[derive(Clone, Debug)]
pub struct DirichletCharacter {
    pub modulus: i64,
    pub values: Vec<CycNum>,
    pub primitive: bool,
}

impl DirichletCharacter {
    pub fn new(modulus: i64, values: Vec<CycNum>) -> Result<Self> {
        if values.len() != modulus as usize {
            return Err(Error::InvalidArgument("value list length must equal the modulus".into()));
        }
        // complete multiplicativity on units, zero off units, chi(1) = 1
        for a in 0..modulus {
            if gcd_i64(a, modulus) != 1 {
                if !values[a as usize].is_zero() {
                    return Err(Error::InvalidArgument(format!(
                        "chi({}) must vanish off the units",
                        a
                    )));
                }
            }
        }
        if modulus > 1 && values[1] != CycNum::one() {
            return Err(Error::InvalidArgument("chi(1) must be 1".into()));
        }
        for a in 0..modulus {
            for b in 0..modulus {
                let ab = (a * b).rem_euclid(modulus);
                let lhs = values[ab as usize].clone();
                let rhs = values[a as usize].mul(&values[b as usize]);
                if gcd_i64(a, modulus) == 1 && gcd_i64(b, modulus) == 1 && lhs != rhs {
                    return Err(Error::InvalidArgument(format!(
                        "multiplicativity fails at ({}, {})",
                        a, b
                    )));
                }
            }
        }
        let primitive = Self::check_primitive(modulus, &values);
        Ok(DirichletCharacter { modulus, values, primitive })
    }

    fn check_primitive(modulus: i64, values: &[CycNum]) -> bool {
        // chi is primitive iff it does not factor through any proper
        // divisor modulus: for every proper divisor d | N there is
        // a == 1 mod d, coprime to N, with chi(a) != 1
        for d in 1..modulus {
            if modulus % d != 0 {
                continue;
            }
            let mut factors_through = true;
            for a in 0..modulus {
                if gcd_i64(a, modulus) == 1 && a.rem_euclid(d) == 1 % d.max(1)
                    && values[a as usize] != CycNum::one()
                {
                    factors_through = false;
                    break;
                }
            }
            if factors_through {
                return false;
            }
        }
        true
    }

    pub fn eval(&self, k: i64) -> CycNum {
        self.values[k.rem_euclid(self.modulus) as usize].clone()
    }

    /// The standard quadratic characters used in the identity table.
    pub fn chi_m3() -> Self {
        Self::new(3, vec![CycNum::zero(), CycNum::one(), CycNum::from_i64(-1)]).unwrap()
    }

    pub fn chi_m4() -> Self {
        Self::new(4, vec![CycNum::zero(), CycNum::one(), CycNum::zero(), CycNum::from_i64(-1)])
            .unwrap()
    }

    pub fn chi_m8() -> Self {
        Self::new(
            8,
            vec![
                CycNum::zero(),
                CycNum::one(),
                CycNum::zero(),
                CycNum::one(),
                CycNum::zero(),
                CycNum::from_i64(-1),
                CycNum::zero(),
                CycNum::from_i64(-1),
            ],
        )
        .unwrap()
    }

    /// chi_{+i,5}: 0, 1, i, -i, -1 mod 5.
    pub fn chi_5i_plus() -> Self {
        Self::new(
            5,
            vec![
                CycNum::zero(),
                CycNum::one(),
                CycNum::zeta(4, 1),
                CycNum::zeta(4, 3),
                CycNum::from_i64(-1),
            ],
        )
        .unwrap()
    }

    /// chi_{-i,5}: 0, 1, -i, i, -1 mod 5.
    pub fn chi_5i_minus() -> Self {
        Self::new(
            5,
            vec![
                CycNum::zero(),
                CycNum::one(),
                CycNum::zeta(4, 3),
                CycNum::zeta(4, 1),
                CycNum::from_i64(-1),
            ],
        )
        .unwrap()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "N": self.modulus,
            "values": self.values.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        })
    }
}

/// L(chi, s) = N^{-s} sum_{a=1}^{N} chi(a) HurwitzZeta(s, a/N).
pub fn dirichlet_l(chi: &DirichletCharacter, s: u32, prec: u32) -> CBall {
    let n = chi.modulus;
    let mut acc = CBall::zero(prec);
    for a in 1..=n {
        let v = &chi.values[(a % n) as usize];
        if v.is_zero() {
            continue;
        }
        let hz = hurwitz_zeta(s, &Rational::from((a, n)), prec);
        acc = acc.add(&v.embed(prec).mul(&CBall::from_rball(&hz)));
    }
    let ninv = RBall::from_i64(prec, n).powi(s).recip_ball();
    acc.mul(&CBall::from_rball(&ninv))
}

/// The Bernoulli route: for rational phi on Z/N,
/// sum_a phi(a) B_k(a/N) = (-1)^{k-1} k! / (2 pi i)^k * Ltilde(phi_hat, k),
/// so Ltilde(phi_hat, k) = r (2 pi i)^k with
/// r = (-1)^{k-1} sum_a phi(a) B_k(a/N) / k!.
pub fn ltilde_via_bernoulli(phi: &[Rational], k: u32) -> Rational {
    let n = phi.len() as i64;
    let mut s = Rational::new();
    for (a, v) in phi.iter().enumerate() {
        if *v == 0 {
            continue;
        }
        s += Rational::from(v * &super::bernoulli::bernoulli_poly(k as usize, &Rational::from((a as i64, n))));
    }
    let mut kfact = Rational::from(1);
    for i in 1..=k {
        kfact *= Rational::from(i);
    }
    let sign = if k % 2 == 1 { 1 } else { -1 };
    Rational::from(s * Rational::from(sign)) / kfact
}

/// Ltilde(psi, k) = sum_{m != 0} psi(m)/m^k for an N-periodic complex
/// function psi, computed exactly through Hurwitz zeta values:
/// fold m and -m, then sum per residue class.
pub fn ltilde_numeric(psi: &[CBall], k: u32, prec: u32) -> CBall {
    let n = psi.len() as i64;
    let mut acc = CBall::zero(prec);
    let sign = if k % 2 == 0 { 1 } else { -1 };
    for a in 1..=n {
        // positive part: m = a, a+N, ... ; negative part: m = -(N-a) - jN
        let plus = psi[(a % n) as usize].clone();
        let minus = psi[((n - a) % n) as usize].mul_i64(sign);
        let c = plus.add(&minus);
        if c.rad_f64() == 0.0 && c.re.is_zero() && c.im.is_zero() {
            continue;
        }
        let hz = hurwitz_zeta(k, &Rational::from((a, n)), prec);
        acc = acc.add(&c.mul(&CBall::from_rball(&hz)));
    }
    let ninv = RBall::from_i64(prec, n).powi(k).recip_ball();
    acc.mul(&CBall::from_rball(&ninv))
}

/// Ltilde_minus(psi, k) = sum_{m != 0} psi(m) sign(m) / m^k.
pub fn ltilde_minus_numeric(psi: &[CBall], k: u32, prec: u32) -> CBall {
    let n = psi.len() as i64;
    let mut acc = CBall::zero(prec);
    let sign = if k % 2 == 0 { -1 } else { 1 };
    for a in 1..=n {
        let plus = psi[(a % n) as usize].clone();
        let minus = psi[((n - a) % n) as usize].mul_i64(sign);
        let c = plus.add(&minus);
        let hz = hurwitz_zeta(k, &Rational::from((a, n)), prec);
        acc = acc.add(&c.mul(&CBall::from_rball(&hz)));
    }
    let ninv = RBall::from_i64(prec, n).powi(k).recip_ball();
    acc.mul(&CBall::from_rball(&ninv))
}
