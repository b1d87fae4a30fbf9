//! Exact q0-expansions: Eisenstein series attached to degree-zero
//! torsion functions, the distinguished basis elements with a single
//! cusp residue, regulator-period log-series, and higher normal
//! functions.

use super::cusps::{cusp_infinity, Cusp};
use super::fourier::{fundamental_vector, horospherical, pi_pull, residue_vector};
use super::TorsionFunction;
use crate::cyclotomic::CycNum;
use crate::error::Error;
use crate::num::{CBall, RBall};
use crate::series::{LogSeries, QSeries, Series};
use crate::Result;
use rug::Rational;

/// An Eisenstein series of weight l+2 and level N: exact q0-expansion
/// (q0 = e^{2 pi i tau / N}) with cyclotomic coefficients, and the cusp
/// residue vector. Coefficients collapse to rationals whenever parity
/// forces reality (e.g. for the infinity-adapted lifts).
#[derive(Clone, Debug)]
pub struct EisensteinSeries {
    pub level: i64,
    pub ell: u32,
    /// Coefficients of q0^0 .. q0^T; the constant term is the residue
    /// at infinity.
    pub series: Series<CycNum>,
    pub residues: Vec<(Cusp, Rational)>,
}

impl EisensteinSeries {
    pub fn residue_at(&self, c: &Cusp) -> Rational {
        self.residues
            .iter()
            .find(|(cc, _)| cc == c)
            .map(|(_, r)| r.clone())
            .unwrap_or_default()
    }

    /// The rational collapse of the expansion; errors if a coefficient
    /// is genuinely irrational.
    pub fn rational_series(&self) -> Result<QSeries> {
        let coeffs = self
            .series
            .coeffs
            .iter()
            .map(|c| {
                c.as_rational().ok_or_else(|| {
                    Error::Numeric("Eisenstein coefficient is not rational".into())
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Series::new(coeffs))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "level": self.level,
            "weight": self.ell + 2,
            "coeffs": self.series.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "residues": self.residues.iter()
                .map(|(c, r)| (c.key(), r.to_string()))
                .collect::<std::collections::BTreeMap<_, _>>(),
        })
    }
}

/// The symmetrization phi_hat(m, n) + (-1)^l phi_hat(-m, -n).
fn symmetrized(hat: &TorsionFunction, ell: u32, m: i64, n: i64) -> CycNum {
    let a = hat.get2(m, n).clone();
    let b = hat.get2(-m, -n);
    if ell % 2 == 0 {
        a.add(b)
    } else {
        a.sub(b)
    }
}

/// The inner divisor sum of the weight-(l+2) expansion at q0^M:
/// sum_{r | M} r^{l+1} sum_{n0 mod N} zeta_N^{n0 r} symfhat(M/r, n0).
fn inner_divisor_sum(hat: &TorsionFunction, ell: u32, bigm: usize) -> CycNum {
    let n = hat.modulus;
    let mut acc = CycNum::zero();
    for r in 1..=bigm {
        if bigm % r != 0 {
            continue;
        }
        let mr = (bigm / r) as i64;
        let mut inner = CycNum::zero();
        for n0 in 0..n {
            let v = symmetrized(hat, ell, mr, n0);
            if v.is_zero() {
                continue;
            }
            inner = inner.add(&v.mul(&CycNum::zeta(n, n0 * r as i64)));
        }
        if inner.is_zero() {
            continue;
        }
        let mut rp = Rational::from(1);
        for _ in 0..=(ell) {
            rp *= Rational::from(r as i64);
        }
        acc = acc.add(&inner.scale(&rp));
    }
    acc
}

fn factorial(k: u32) -> Rational {
    let mut f = Rational::from(1);
    for i in 1..=(k as i64) {
        f *= Rational::from(i);
    }
    f
}

fn pow_i64(b: i64, e: u32) -> Rational {
    let mut p = Rational::from(1);
    for _ in 0..e {
        p *= Rational::from(b);
    }
    p
}

/// The q0-expansion of the Eisenstein series attached to a degree-zero
/// rational torsion function:
/// E = H_infinity(phi) + ((-1)^{l+1}/(N^{l+2} l!)) sum_M q0^M {inner_M}.
pub fn eisenstein_q(phi: &TorsionFunction, ell: u32, order: usize) -> Result<EisensteinSeries> {
    if phi.arity != 2 {
        return Err(Error::ArityMismatch(2, phi.arity));
    }
    if !phi.is_degree_zero() {
        return Err(Error::NotDegreeZero);
    }
    let n = phi.modulus;
    let hat = phi.ft();
    let mut coeffs = vec![CycNum::zero(); order + 1];
    coeffs[0] = CycNum::from_rational(horospherical(phi, &cusp_infinity(n), ell)?);
    let sign = if ell % 2 == 0 { -1 } else { 1 };
    let scale = Rational::from(sign) / (pow_i64(n, ell + 2) * factorial(ell));
    for (bigm, c) in coeffs.iter_mut().enumerate().skip(1) {
        *c = inner_divisor_sum(&hat, ell, bigm).scale(&scale);
    }
    let residues = residue_vector(phi, ell)?;
    Ok(EisensteinSeries { level: n, ell, series: Series::new(coeffs), residues })
}

/// The basis series E~_sigma: the Eisenstein series of
/// (1/N) pi_sigma^* phi_N^[l], whose residue vector is the indicator
/// of sigma.
pub fn tilde_e_sigma(n: i64, ell: u32, sigma: &Cusp, order: usize) -> Result<EisensteinSeries> {
    let fv = fundamental_vector(n, ell)?;
    let phi = pi_pull(&fv, sigma)?.scale(&Rational::from((1, n)));
    eisenstein_q(&phi, ell, order)
}

/// The regulator-period q0-expansion (the coefficient of (2 pi i)^l):
/// Psi_{f,0}/(2 pi i)^l = (-1)^l N H_infinity(phi) log q0
///   - (1/(N^{l+1} l!)) sum_M (q0^M / M) {inner_M}.
pub fn psi_f0_q(phi: &TorsionFunction, ell: u32, order: usize) -> Result<LogSeries<CycNum>> {
    if phi.arity != 2 {
        return Err(Error::ArityMismatch(2, phi.arity));
    }
    if !phi.is_degree_zero() {
        return Err(Error::NotDegreeZero);
    }
    let n = phi.modulus;
    let hat = phi.ft();
    let h = horospherical(phi, &cusp_infinity(n), ell)?;
    let sgn = if ell % 2 == 0 { 1 } else { -1 };
    let log_coeff = CycNum::from_rational(Rational::from(h * Rational::from(sgn * n)));
    let mut tail = Series::<CycNum>::zero(order);
    let scale = Rational::from(-1) / (pow_i64(n, ell + 1) * factorial(ell));
    for bigm in 1..=order {
        let s = inner_divisor_sum(&hat, ell, bigm);
        tail.coeffs[bigm] =
            s.scale(&Rational::from(&scale / Rational::from(bigm as i64)));
    }
    Ok(LogSeries::new(log_coeff, tail))
}

/// The higher normal function expansion attached to an arity-1
/// degree-zero rational function phi0 (through the infinity-adapted
/// lift): a polynomial in log q0 with (2 pi i)-power-tagged rational
/// coefficients, a zeta(l+1) Theta constant, and a q0^{MN} tail.
#[derive(Clone, Debug)]
pub struct NormalFunction {
    pub level: i64,
    pub ell: u32,
    /// (power of log q0, power of 2 pi i, exact coefficient).
    pub log_terms: Vec<(usize, usize, Rational)>,
    /// Exact coefficient of zeta(l+1) Theta_l(phi0).
    pub zeta_coeff: Rational,
    /// Theta_l(phi0): exact for even l (= phi0(0)); a ball for odd l.
    pub theta_rational: Option<Rational>,
    pub theta_ball_prec: u32,
    /// q0-series tail (supported on multiples of N).
    pub series: QSeries,
    phi0: TorsionFunction,
}

impl NormalFunction {
    /// Numeric value of Theta_l(phi0).
    pub fn theta(&self, prec: u32) -> CBall {
        if let Some(q) = &self.theta_rational {
            return CBall::from_rational(prec, q);
        }
        // -(i/N) sum_xi phi0_hat(xi) cot(pi xi / N)
        let n = self.level;
        let hat = self.phi0.ft();
        let mut acc = CBall::zero(prec);
        for xi in 1..n {
            let v = hat.get1(xi);
            if v.is_zero() {
                continue;
            }
            // cot(pi xi / N)
            let w = CBall::from_rational(prec, &Rational::from((xi, n)));
            let (s, c) = w.sin_cos_pi();
            acc = acc.add(&v.embed(prec).mul(&c.div(&s)));
        }
        let i_over_n = CBall::i(prec).mul(&CBall::from_rational(prec, &Rational::from((1, n))));
        acc.mul(&i_over_n).neg()
    }
}

/// Builds the higher-normal-function expansion from its displayed
/// closed form.
pub fn normal_function_q(phi0: &TorsionFunction, ell: u32, order: usize) -> Result<NormalFunction> {
    if phi0.arity != 1 {
        return Err(Error::ArityMismatch(1, phi0.arity));
    }
    if !phi0.is_degree_zero() {
        return Err(Error::NotDegreeZero);
    }
    let n = phi0.modulus;
    let vals = phi0
        .rational_values()
        .ok_or_else(|| Error::Numeric("normal function needs rational values".into()))?;
    let sign_l2 = if (ell as i64) * (ell as i64 - 1) / 2 % 2 == 0 { 1 } else { -1 };
    let p1 = Rational::from(sign_l2) * pow_i64(n, ell + 1) / factorial(ell + 2);
    let p2 = Rational::from(sign_l2) / pow_i64(n, ell + 1);
    let bsum = |k: usize| -> Rational {
        let mut s = Rational::new();
        for (a, v) in vals.iter().enumerate() {
            if *v != 0 {
                s += Rational::from(
                    v * &crate::nt::bernoulli_poly(k, &Rational::from((a as i64, n))),
                );
            }
        }
        s
    };
    let mut log_terms = vec![];
    // leading term: P1 * (sum phi0(a) B_{l+2}(a/N)) log^{l+1}
    log_terms.push((ell as usize + 1, 0usize, Rational::from(&p1 * &bsum(ell as usize + 2))));
    // correction terms: P1 (-2 pi i)^{2J} N^{-4J} C(l+2, 2J) B_{2J} (sum B_{l-2J+2}) log^{l-2J+1}
    for j in 1..=(ell as usize / 2) {
        let bin = crate::recurrence::binomial(ell as u64 + 2, 2 * j as u64);
        let b2j = crate::nt::bernoulli_number(2 * j);
        let c = Rational::from(&p1 * &bin) * b2j * bsum(ell as usize - 2 * j + 2)
            / pow_i64(n, 4 * j as u32);
        log_terms.push((ell as usize - 2 * j + 1, 2 * j, c));
    }
    // theta
    let theta_rational = if ell % 2 == 0 { Some(vals[0].clone()) } else { None };
    // q0 tail: -(P2) sum_M q0^{MN} (sum_{r|M} r^{l+1} symphi0(r)) / M^{l+1}
    let mut series = QSeries::zero(order);
    let sgn = if ell % 2 == 0 { 1 } else { -1 };
    for bigm in 1..=(order / n as usize) {
        let mut s = Rational::new();
        for r in 1..=bigm {
            if bigm % r != 0 {
                continue;
            }
            let a = &vals[(r as i64).rem_euclid(n) as usize];
            let b = &vals[(-(r as i64)).rem_euclid(n) as usize];
            let sym = Rational::from(a + Rational::from(b * Rational::from(sgn)));
            if sym == 0 {
                continue;
            }
            let mut rp = Rational::from(1);
            for _ in 0..=ell {
                rp *= Rational::from(r as i64);
            }
            s += sym * rp;
        }
        let mut mp = Rational::from(1);
        for _ in 0..=ell {
            mp *= Rational::from(bigm as i64);
        }
        series.coeffs[bigm * n as usize] = Rational::from(-&p2) * s / mp;
    }
    Ok(NormalFunction {
        level: n,
        ell,
        log_terms,
        zeta_coeff: Rational::from(-&p2),
        theta_rational,
        theta_ball_prec: crate::DEFAULT_PREC,
        series,
        phi0: phi0.clone(),
    })
}

/// Numeric evaluation helper used by tests: the full normal function at
/// a point q0 (with |q0| < 1), for cross-validation.
pub fn normal_function_eval(nf: &NormalFunction, q0: &CBall, prec: u32) -> Result<CBall> {
    let lq = q0.ln();
    let mut acc = CBall::zero(prec);
    let pi = RBall::pi(prec);
    let two_pi_i = CBall::from_rball(&pi.mul_i64(2)).mul(&CBall::i(prec));
    for (lp, tp, c) in &nf.log_terms {
        let term = lq
            .powi(*lp as i64)
            .mul(&two_pi_i.powi(*tp as i64))
            .mul(&CBall::from_rational(prec, c));
        acc = acc.add(&term);
    }
    // zeta(l+1) Theta
    let z = crate::nt::zeta(nf.ell + 1, prec);
    acc = acc.add(
        &CBall::from_rball(&z)
            .mul(&nf.theta(prec))
            .mul(&CBall::from_rational(prec, &nf.zeta_coeff)),
    );
    // series
    let mut qp = CBall::one(prec);
    for k in 1..=nf.series.order() {
        qp = qp.mul(q0);
        let c = &nf.series.coeffs[k];
        if *c != 0 {
            acc = acc.add(&qp.mul(&CBall::from_rational(prec, c)));
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eisenstein::cusps::cusps;
    use crate::eisenstein::fourier::iota_push;
    use crate::series::qs;

    fn chi_m3_divisor_sum(k: usize) -> i64 {
        // sum_{r | k} r^2 chi_{-3}(r)
        let chi = [0i64, 1, -1];
        let mut s = 0;
        for r in 1..=k {
            if k % r == 0 {
                s += (r * r) as i64 * chi[r % 3];
            }
        }
        s
    }

    #[test]
    fn level_three_fundamental_expansion() {
        // l=1, N=3 fundamental: 1 - 9 sum q0^{3mu} sum_{r|mu} r^2 chi_-3(r)
        let n = 3i64;
        let inf = cusp_infinity(n);
        let e = tilde_e_sigma(n, 1, &inf, 30).unwrap();
        let ser = e.rational_series().unwrap();
        assert_eq!(ser.coeffs[0], 1);
        for mu in 1..=10usize {
            assert_eq!(
                ser.coeffs[3 * mu],
                Rational::from(-9 * chi_m3_divisor_sum(mu)),
                "mu = {}",
                mu
            );
            assert_eq!(ser.coeffs[3 * mu - 1], 0);
            assert_eq!(ser.coeffs[3 * mu - 2], 0);
        }
        // residue vector = indicator of infinity
        for (c, r) in &e.residues {
            let expect = if c == &inf { Rational::from(1) } else { Rational::new() };
            assert_eq!(*r, expect, "residue at {}", c);
        }
    }

    #[test]
    fn tilde_basis_residues_all_cusps() {
        let n = 4i64;
        for sigma in cusps(n).unwrap() {
            let e = tilde_e_sigma(n, 1, &sigma, 8).unwrap();
            for (c, r) in &e.residues {
                let expect = if *c == sigma { Rational::from(1) } else { Rational::new() };
                assert_eq!(*r, expect, "E~_{} residue at {}", sigma, c);
            }
        }
    }

    #[test]
    fn zero_function_gives_zero_series() {
        let phi = TorsionFunction::zero(4, 2);
        let e = eisenstein_q(&phi, 2, 10).unwrap();
        assert!(e.series.is_zero());
    }

    #[test]
    fn reconstruction_from_residues() {
        // any degree-zero phi's series equals the residue-weighted
        // sum_sigma H_sigma(phi) E~_sigma, tested at N = 3
        let n = 3i64;
        let ell = 1u32;
        let order = 12usize;
        let vals: Vec<i64> = vec![-9, 2, 1, 3, 0, 1, 1, 0, 1];
        let phi = TorsionFunction::from_i64s(n, 2, &vals).unwrap();
        let e = eisenstein_q(&phi, ell, order).unwrap();
        let mut combo = Series::<CycNum>::zero(order);
        for (c, r) in &e.residues {
            let basis = tilde_e_sigma(n, ell, c, order).unwrap();
            combo = combo.add(&basis.series.scale(&CycNum::from_rational(r.clone())));
        }
        assert_eq!(e.series, combo);
    }

    #[test]
    fn zero_cusp_iota_lift_expansion() {
        // phi_f = (1/3) iota_{[0]*} phi_3^[1]:
        // F = -1/3 + 3 sum q0^K sum_{r|K} r^2 chi_-3(r)
        let n = 3i64;
        let fv = fundamental_vector(n, 1).unwrap();
        let zero = super::super::cusps::cusp_zero(n);
        let phi = iota_push(&fv, &zero).unwrap().scale(&Rational::from((1, 3)));
        let e = eisenstein_q(&phi, 1, 8).unwrap();
        let ser = e.rational_series().unwrap();
        assert_eq!(ser.coeffs[0], Rational::from((-1, 3)));
        for k in 1..=8usize {
            assert_eq!(
                ser.coeffs[k],
                Rational::from(3 * chi_m3_divisor_sum(k)),
                "K = {}",
                k
            );
        }
    }

    #[test]
    fn psi_f0_derivative_identity() {
        // delta_{q0} psi_f0 = (-1)^l N eisenstein_q exactly, for a
        // generic degree-zero function and both parities
        for (n, ell) in [(3i64, 1u32), (4, 2)] {
            let len = (n * n) as usize;
            let vals: Vec<i64> =
                (0..len as i64).map(|i| (i * i * 3 + i) % 7 - 2).collect();
            let mut vals = vals;
            let s: i64 = vals.iter().sum();
            vals[0] -= s;
            let phi = TorsionFunction::from_i64s(n, 2, &vals).unwrap();
            let order = 14usize;
            let psi = psi_f0_q(&phi, ell, order).unwrap();
            let e = eisenstein_q(&phi, ell, order).unwrap();
            let sgn = if ell % 2 == 0 { 1 } else { -1 };
            let expect = e.series.scale(&CycNum::from_i64(sgn * n));
            assert_eq!(psi.delta(), expect, "N={} l={}", n, ell);
        }
    }

    #[test]
    fn psi_f0_hesse_matches_regulator_shape() {
        // l=1, N=3 fundamental scaled by -1: log q0^3-coefficient 3 i.e.
        // log q, and tail -9 sum (sum r^2 chi)/K q^K
        let n = 3i64;
        let fv = fundamental_vector(n, 1).unwrap().neg();
        let inf = cusp_infinity(n);
        let phi = pi_pull(&fv, &inf).unwrap().scale(&Rational::from((1, 3)));
        let psi = psi_f0_q(&phi, 1, 30).unwrap();
        assert_eq!(psi.log_coeff, CycNum::from_i64(3));
        // in q = q0^3: log q - 9 sum_K (sum_{r|K} r^2 chi(r)) q^K / K
        for mu in 1..=9usize {
            assert_eq!(
                psi.tail.coeffs[3 * mu],
                CycNum::from_rational(
                    Rational::from(-9 * chi_m3_divisor_sum(mu)) / Rational::from(mu as i64)
                ),
                "mu = {}",
                mu
            );
        }
    }

    #[test]
    fn normal_function_eichler_identity() {
        // (d/dtau)^{l+1} term-by-term reproduces
        // (-1)^{C(l+1,2)} (2 pi i)^{l+1} l! E_phi, exactly
        for (n, ell) in [(3i64, 1u32), (4, 1), (3, 2), (6, 2)] {
            let len = n as usize;
            let mut vals: Vec<i64> = (0..len as i64).map(|i| (2 * i * i + 5 * i) % 9 - 3).collect();
            let s: i64 = vals.iter().sum();
            vals[0] -= s;
            let phi0 = TorsionFunction::from_i64s(n, 1, &vals).unwrap();
            let order = (6 * n) as usize;
            let nf = normal_function_q(&phi0, ell, order).unwrap();
            let inf = cusp_infinity(n);
            let lifted = pi_pull(&phi0, &inf).unwrap().scale(&Rational::from((1, n)));
            let e = eisenstein_q(&lifted, ell, order).unwrap().rational_series().unwrap();
            let csign = if (ell as i64 + 1) * (ell as i64) / 2 % 2 == 0 { 1 } else { -1 };
            let lfact = factorial(ell);
            // constant: coefficient of log^{l+1} q0 term
            let lead = nf
                .log_terms
                .iter()
                .find(|(lp, _, _)| *lp == ell as usize + 1)
                .map(|(_, _, c)| c.clone())
                .unwrap();
            // (l+1)! / N^{l+1} * lead = csign * l! * E_0
            let lhs = Rational::from(&lead * &factorial(ell + 1)) / pow_i64(n, ell + 1);
            let rhs = Rational::from(&e.coeffs[0] * &lfact) * Rational::from(csign);
            assert_eq!(lhs, rhs, "constant term at N={} l={}", n, ell);
            // series: v_M M^{l+1} = csign l! E_{MN}
            for bigm in 1..=(order / n as usize) {
                let v = &nf.series.coeffs[bigm * n as usize];
                let mut mp = Rational::from(1);
                for _ in 0..=ell {
                    mp *= Rational::from(bigm as i64);
                }
                let lhs = Rational::from(v * &mp);
                let rhs = Rational::from(&e.coeffs[bigm * n as usize] * &lfact)
                    * Rational::from(csign);
                assert_eq!(lhs, rhs, "M={} at N={} l={}", bigm, n, ell);
            }
            // between multiples of N the E-series must vanish for lifted phi
            for k in 1..order {
                if k % n as usize != 0 {
                    assert_eq!(e.coeffs[k], 0);
                }
            }
        }
    }

    #[test]
    fn normal_function_even_theta_is_phi0_at_zero() {
        let n = 4i64;
        let phi0 = TorsionFunction::from_i64s(n, 1, &[-6, 1, 2, 3]).unwrap();
        let nf = normal_function_q(&phi0, 2, 8).unwrap();
        assert_eq!(nf.theta_rational, Some(Rational::from(-6)));
        let t = nf.theta(64);
        assert!((t.re.to_f64() + 6.0).abs() < 1e-12);
    }

    #[test]
    fn psi_f0_no_log_when_residue_vanishes() {
        // a function with vanishing residue at infinity gives a pure
        // power series (zero log coefficient)
        let n = 4i64;
        let fv = fundamental_vector(n, 1).unwrap();
        let zero = super::super::cusps::cusp_zero(n);
        let phi = pi_pull(&fv, &zero).unwrap().scale(&Rational::from((1, n)));
        assert_eq!(
            horospherical(&phi, &super::super::cusps::cusp_infinity(n), 1).unwrap(),
            Rational::new()
        );
        let ls = psi_f0_q(&phi, 1, 12).unwrap();
        assert!(ls.log_coeff.is_zero());
        assert!(!ls.tail.is_zero());
    }

    #[test]
    fn normal_function_odd_theta_cot_value() {
        // l = 1, phi0 = phi_4^[1]: Theta = -(i/4)(64i cot(pi/4) - 64i cot(3pi/4)) = 32
        let phi0 = super::super::fourier::fundamental_vector(4, 1).unwrap();
        let nf = normal_function_q(&phi0, 1, 8).unwrap();
        assert!(nf.theta_rational.is_none());
        let t = nf.theta(128);
        assert!((t.re.to_f64() - 32.0).abs() < 1e-25, "{}", t);
        assert!(t.im.to_f64().abs() < 1e-25);
    }

    #[test]
    fn normal_function_zero_is_zero() {
        let phi0 = TorsionFunction::zero(3, 1);
        let nf = normal_function_q(&phi0, 1, 9).unwrap();
        assert!(nf.series.is_zero());
        assert!(nf.log_terms.iter().all(|(_, _, c)| *c == 0));
    }

    #[test]
    fn eisenstein_rejects_bad_inputs() {
        let phi = TorsionFunction::from_i64s(3, 2, &[1, 0, 0, 0, 0, 0, 0, 0, 0]).unwrap();
        assert!(matches!(eisenstein_q(&phi, 1, 4), Err(Error::NotDegreeZero)));
        let one = TorsionFunction::from_i64s(3, 1, &[1, -1, 0]).unwrap();
        assert!(matches!(eisenstein_q(&one, 1, 4), Err(Error::ArityMismatch(2, 1))));
        let _ = qs(&[0]);
    }
}
