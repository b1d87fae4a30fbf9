//! Numeric cross-validation of the lattice-sum period formulas against
//! q-expansions and cusp limits. These checks pin the overall signs of
//! the cusp-limit mechanism by following periods along vertical
//! geodesics into the cusps, independently of the closed forms.

use rug::Rational;
use toric_regulator::cyclotomic::CycNum;
use toric_regulator::eisenstein::*;
use toric_regulator::nt::catalan;
use toric_regulator::num::CBall;

fn ball(prec: u32, re: f64, im: f64) -> CBall {
    CBall::new(prec, re, im)
}

/// Inverse symplectic Fourier transform: ft(ft(phi)) = N^2 phi.
fn ft_inv(hat: &TorsionFunction) -> TorsionFunction {
    let n = hat.modulus;
    hat.ft().scale(&Rational::from((1, n * n)))
}

/// Direct two-sided signed L-sum of a ball sequence (oracle).
fn lsum_minus_direct(psi: &[CBall], k: u32, terms: i64, prec: u32) -> CBall {
    let n = psi.len() as i64;
    let mut acc = CBall::zero(prec);
    for m in 1..terms {
        let sign = if k % 2 == 0 { -1 } else { 1 };
        let t1 = psi[(m % n) as usize].clone();
        let t2 = psi[((-m).rem_euclid(n)) as usize].mul_i64(sign);
        let mut mk = Rational::from(1);
        for _ in 0..k {
            mk *= Rational::from(m);
        }
        acc = acc.add(&t1.add(&t2).mul(&CBall::from_rational(prec, &Rational::from(mk.recip_ref()))));
    }
    acc
}

/// The imaginary part of the beta-period limit at infinity carries the
/// sign (-1)^{l+1} relative to -(1/2N) Ltilde_minus; validated here for
/// both parities by following the period up the imaginary axis.
#[test]
fn beta_period_limit_sign_ell1() {
    let prec = 128;
    let n = 3i64;
    let iu = CycNum::zeta(4, 1).scale(&Rational::from(5));
    let mut hat = TorsionFunction::zero(n, 2);
    hat.set2(1, 1, iu.clone());
    hat.set2(2, 2, iu.neg());
    let phi = ft_inv(&hat);
    assert!(phi.is_degree_zero());
    let inf = cusps(n).unwrap().into_iter().find(|c| c.is_infinity()).unwrap();
    let psi: Vec<CBall> = (0..n)
        .map(|a| {
            let mut acc = CBall::zero(prec);
            for b in 0..n {
                acc = acc.add(&hat.get2(a, b).embed(prec));
            }
            acc
        })
        .collect();
    let lt = lsum_minus_direct(&psi, 2, 4000, prec);
    // l = 1: limit Im = +(1/2N) Im Ltilde_minus
    let target = lt.im.to_f64() / (2.0 * n as f64);
    let v8 = psi_fk_lattice(&phi, 1, 1, &inf, &ball(prec, 0.0, 8.0), 500, prec).unwrap();
    let v11 = psi_fk_lattice(&phi, 1, 1, &inf, &ball(prec, 0.0, 11.0), 680, prec).unwrap();
    let d8 = (v8.im.to_f64() - target).abs();
    let d11 = (v11.im.to_f64() - target).abs();
    assert!(
        d11 <= d8 + 1e-12 && d11 < 1e-4,
        "l=1 beta-period: err {} then {}, target {}",
        d8,
        d11,
        target
    );
}

#[test]
fn beta_period_limit_sign_ell2() {
    let prec = 128;
    let n = 3i64;
    let iu = CycNum::zeta(4, 1).scale(&Rational::from(5));
    let mut hat = TorsionFunction::zero(n, 2);
    hat.set2(1, 1, iu.clone());
    hat.set2(2, 2, iu.clone());
    let phi = ft_inv(&hat);
    let inf = cusps(n).unwrap().into_iter().find(|c| c.is_infinity()).unwrap();
    let psi: Vec<CBall> = (0..n)
        .map(|a| {
            let mut acc = CBall::zero(prec);
            for b in 0..n {
                acc = acc.add(&hat.get2(a, b).embed(prec));
            }
            acc
        })
        .collect();
    let lt = lsum_minus_direct(&psi, 3, 4000, prec);
    // l = 2: limit Im = -(1/2N) Im Ltilde_minus (matches the printed sign)
    let target = -lt.im.to_f64() / (2.0 * n as f64);
    let v8 = psi_fk_lattice(&phi, 2, 2, &inf, &ball(prec, 0.0, 8.0), 500, prec).unwrap();
    let v11 = psi_fk_lattice(&phi, 2, 2, &inf, &ball(prec, 0.0, 11.0), 680, prec).unwrap();
    let d8 = (v8.im.to_f64() - target).abs();
    let d11 = (v11.im.to_f64() - target).abs();
    assert!(
        d11 <= d8 + 1e-12 && d11 < 1e-4,
        "l=2 beta-period: err {} then {}, target {}",
        d8,
        d11,
        target
    );
}

#[test]
fn level_four_cusp_limit_value_and_path() {
    // phi_hat_f = -(1/4) pi_[0]^* phi_hat_4: the alpha-period limit at
    // the cusp [0] matches the D5 toric value -16iG, both by the closed
    // form and along the geodesic tau = ib, b -> 0.
    let prec = 128;
    let n = 4i64;
    let f4 = fundamental_vector(n, 1).unwrap();
    let f4hat = f4.ft();
    let all = cusps(n).unwrap();
    let zero = all.iter().find(|c| c.matches(0, 1)).unwrap().clone();
    let inf = all.iter().find(|c| c.is_infinity()).unwrap().clone();
    let hat_f = pi_pull(&f4hat, &zero).unwrap().scale(&Rational::from((-1, 4)));
    let phi_f = ft_inv(&hat_f);
    assert!(phi_f.is_degree_zero());
    assert!(phi_f.is_rational(), "the level-four divisor function should be rational");

    let cl = cusp_limit(&phi_f, &zero, 1, prec).unwrap();
    let g = catalan(prec);
    let minus_16ig = CBall::i(prec).mul(&CBall::from_rball(&g)).mul_i64(-16);
    assert!(
        cl.value.center_dist(&minus_16ig) < 1e-25,
        "cusp limit {} vs -16iG {}",
        cl.value,
        minus_16ig
    );
    assert_eq!(cl.ambiguity_weight, 2);

    // path check: Im Psi_{f,0}(ib) approaches -16G
    let v1 = psi_fk_lattice(&phi_f, 1, 0, &inf, &ball(prec, 0.0, 1.0 / 7.0), 420, prec).unwrap();
    let v2 = psi_fk_lattice(&phi_f, 1, 0, &inf, &ball(prec, 0.0, 1.0 / 11.0), 800, prec).unwrap();
    let target = minus_16ig.im.to_f64();
    let d1 = (v1.im.to_f64() - target).abs();
    let d2 = (v2.im.to_f64() - target).abs();
    assert!(
        d2 <= d1 + 1e-12 && d2 < 1e-6,
        "path to [0]: Im err {} then {}, target {}",
        d1,
        d2,
        target
    );
}

#[test]
fn sl2_equivariance_spot_check() {
    // Psi_{f,l}(tau) = -Psi_{gamma0^* f, 0}(-1/tau) with gamma0^* the
    // right multiplication by [[0,1],[-1,0]] on phi (the transformed
    // function is (0,1)-vertical, evaluated with the [0]-adapted lift).
    let prec = 128;
    let n = 4i64;
    let fv = fundamental_vector(n, 1).unwrap();
    let all = cusps(n).unwrap();
    let inf = all.iter().find(|c| c.is_infinity()).unwrap().clone();
    let zero = all.iter().find(|c| c.matches(0, 1)).unwrap().clone();
    let phi = pi_pull(&fv, &inf).unwrap().scale(&Rational::from((1, n)));
    let tau = ball(prec, 0.0, 2.0);
    let lhs = psi_fk_lattice(&phi, 1, 1, &inf, &tau, 220, prec).unwrap();
    let phi_t = act_matrix(&phi, [[0, 1], [-1, 0]]).unwrap();
    let tau_p = ball(prec, 0.0, 0.5); // -1/(2i) = i/2
    let rhs = psi_fk_lattice(&phi_t, 1, 0, &zero, &tau_p, 520, prec).unwrap();
    assert!(
        lhs.center_dist(&rhs.neg()) < 1e-9,
        "SL2 spot check: lhs {} vs -rhs {}",
        lhs,
        rhs.neg()
    );
}

#[test]
fn zero_function_period_is_zero() {
    let prec = 64;
    let n = 4i64;
    let phi = TorsionFunction::zero(n, 2);
    let inf = cusps(n).unwrap().into_iter().find(|c| c.is_infinity()).unwrap();
    let v = psi_fk_lattice(&phi, 1, 0, &inf, &ball(prec, 0.0, 1.5), 30, prec).unwrap();
    assert!(v.abs_ub().to_f64() < 1e-15);
}

#[test]
fn period_derivative_identity_middle_index() {
    // d Psi_{f,k}/d tau = (-1)^l (2 pi i)^{l+1} tau^k F_f(tau), checked
    // by a central difference at the middle index k = 1, l = 2.
    let prec = 128;
    let n = 3i64;
    let fv = fundamental_vector(n, 2).unwrap();
    let inf = cusps(n).unwrap().into_iter().find(|c| c.is_infinity()).unwrap();
    let phi = pi_pull(&fv, &inf).unwrap().scale(&Rational::from((1, n)));
    let tau = ball(prec, 0.3, 1.4);
    let h = 1e-4;
    let vp = psi_fk_lattice(&phi, 2, 1, &inf, &ball(prec, 0.3 + h, 1.4), 80, prec).unwrap();
    let vm = psi_fk_lattice(&phi, 2, 1, &inf, &ball(prec, 0.3 - h, 1.4), 80, prec).unwrap();
    let diff = vp.sub(&vm).mul(&CBall::new(prec, 1.0 / (2.0 * h), 0.0));
    let e = eisenstein_lattice(&phi, 2, &tau, 40, prec).unwrap();
    let pi = toric_regulator::num::RBall::pi(prec);
    let two_pi_i = CBall::from_rball(&pi.mul_i64(2)).mul(&CBall::i(prec));
    let expect = two_pi_i.powi(3).mul(&tau).mul(&e);
    let d = diff.center_dist(&expect);
    let scale = expect.abs_ub().to_f64().max(1.0);
    assert!(
        d < 1e-5 * scale,
        "derivative identity: {} vs {} (dist {})",
        diff,
        expect,
        d
    );
}
