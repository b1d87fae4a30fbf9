//! Fundamental and regulator period series of toric pencils, boundary
//! special values, Frobenius solutions, mirror maps and Yukawa
//! couplings.

use crate::error::Error;
use crate::laurent::Laurent;
use crate::num::{richardson, RBall};
use crate::recurrence::{fit_recurrence, PFOperator, QPoly};
use crate::series::{LogSeries, QSeries, Series};
use crate::Result;
use rug::Rational;

/// The period data attached to a pencil 1 - t phi = 0.
#[derive(Clone, Debug)]
pub struct PeriodData {
    pub a: Vec<Rational>,
    /// n = number of torus variables of phi.
    pub n: usize,
    /// Set when a_0 != 1 (the normalization hypotheses fail).
    pub nonstandard_normalization: bool,
}

/// Exact constant terms a_m = [phi^m]_0 for m = 0..=order.
///
/// Integer-coefficient polynomials take a dense-array convolution path
/// pruned to the exponents that can still reach the origin; others fall
/// back to generic Laurent powers.
pub fn constant_term_sequence(phi: &Laurent, order: usize) -> Result<Vec<Rational>> {
    if let Some(fast) = constant_term_sequence_int(phi, order) {
        return Ok(fast);
    }
    let mut out = Vec::with_capacity(order + 1);
    let mut pw = Laurent::one(phi.nvars);
    for _ in 0..=order {
        let c = pw.constant_term();
        let q = c.as_rational().ok_or_else(|| {
            Error::Numeric("constant term is not rational; embed coefficients first".into())
        })?;
        out.push(q);
        pw = pw.mul(phi)?;
    }
    Ok(out)
}

fn constant_term_sequence_int(phi: &Laurent, order: usize) -> Option<Vec<Rational>> {
    use rug::Integer;
    let n = phi.nvars;
    let mut terms: Vec<(Vec<i64>, Integer)> = vec![];
    for (e, c) in &phi.terms {
        let q = c.as_rational()?;
        if !q.is_integer() {
            return None;
        }
        terms.push((e.clone(), q.numer().clone()));
    }
    let mut lo = vec![0i64; n];
    let mut hi = vec![0i64; n];
    for (e, _) in &terms {
        for i in 0..n {
            lo[i] = lo[i].min(e[i]);
            hi[i] = hi[i].max(e[i]);
        }
    }
    // box for half the order (pruned growth): |e_i| <= half * s_i
    let half = order.div_ceil(2) as i64;
    let span: Vec<i64> = (0..n).map(|i| hi[i].max(-lo[i])).collect();
    let dims: Vec<i64> = (0..n).map(|i| 2 * span[i] * half + 1).collect();
    let offs: Vec<i64> = (0..n).map(|i| span[i] * half).collect();
    let total: i64 = dims.iter().product();
    if total > 40_000_000 {
        return None;
    }
    let index = |e: &[i64]| -> Option<usize> {
        let mut idx: i64 = 0;
        for i in 0..n {
            let c = e[i] + offs[i];
            if c < 0 || c >= dims[i] {
                return None;
            }
            idx = idx * dims[i] + c;
        }
        Some(idx as usize)
    };
    let mut cur: Vec<Integer> = vec![Integer::new(); total as usize];
    cur[index(&vec![0; n]).unwrap()] = Integer::from(1);
    let mut active: Vec<usize> = vec![index(&vec![0; n]).unwrap()];
    let mut out = vec![Rational::from(1)];
    // decode helper
    let decode = |mut idx: i64| -> Vec<i64> {
        let mut e = vec![0i64; n];
        for i in (0..n).rev() {
            e[i] = idx % dims[i] - offs[i];
            idx /= dims[i];
        }
        e
    };
    for m in 1..=order {
        let remaining = (order - m) as i64;
        let mut next: Vec<Integer> = vec![Integer::new(); total as usize];
        let mut nactive: Vec<usize> = vec![];
        for &idx in &active {
            if cur[idx] == 0 {
                continue;
            }
            let e = decode(idx as i64);
            for (te, tc) in &terms {
                let ne: Vec<i64> = e.iter().zip(te.iter()).map(|(a, b)| a + b).collect();
                // prune: must be able to return to the origin in the
                // remaining steps
                let reachable = (0..n).all(|i| {
                    ne[i] >= -remaining * hi[i] && ne[i] <= -remaining * lo[i]
                });
                if !reachable {
                    continue;
                }
                if let Some(nidx) = index(&ne) {
                    if next[nidx] == 0 {
                        nactive.push(nidx);
                    }
                    next[nidx] += Integer::from(&cur[idx] * tc);
                }
            }
        }
        nactive.sort_unstable();
        nactive.dedup();
        cur = next;
        active = nactive;
        let ct = cur[index(&vec![0; n]).unwrap()].clone();
        out.push(Rational::from(ct));
    }
    Some(out)
}

pub fn period_data(phi: &Laurent, order: usize) -> Result<PeriodData> {
    let a = constant_term_sequence(phi, order)?;
    Ok(PeriodData { nonstandard_normalization: a[0] != 1, a, n: phi.nvars })
}

/// The fundamental period series A(t) = sum a_m t^m.
pub fn fundamental_period_series(phi: &Laurent, order: usize) -> Result<QSeries> {
    Ok(Series::new(constant_term_sequence(phi, order)?))
}

/// The regulator period as a log-series: log t + sum_{m>=1} a_m t^m / m
/// (the prefactor (2 pi i)^{n-1} is factored out).
pub fn regulator_period(phi: &Laurent, order: usize) -> Result<LogSeries<Rational>> {
    let a = constant_term_sequence(phi, order)?;
    let mut tail = QSeries::zero(order);
    for (m, am) in a.iter().enumerate().skip(1) {
        tail.coeffs[m] = Rational::from(am / Rational::from(m as i64));
    }
    Ok(LogSeries::new(Rational::from(1), tail))
}

/// Acceleration mode for boundary evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Accel {
    None,
    Richardson,
}

/// Result of a psi evaluation: value ball plus a heuristic error bound
/// for accelerated boundary sums.
#[derive(Clone, Debug)]
pub struct PsiValue {
    pub value: RBall,
    pub heuristic_error: f64,
    pub boundary: bool,
}

/// Evaluates log|t0| + sum_{m=1}^{M} a_m t0^m / m at a real t0 in the
/// closed disk of convergence, streaming a_m through the fitted
/// recurrence in ball arithmetic. Interior points get a certified
/// geometric tail; boundary points use Richardson extrapolation in 1/M
/// with a heuristic error estimate.
pub fn psi_value_real(
    phi: &Laurent,
    t0: &RBall,
    terms: usize,
    accel: Accel,
    prec: u32,
) -> Result<PsiValue> {
    let seed = constant_term_sequence(phi, 40)?;
    let op = fit_recurrence(&seed, 4, 4)
        .ok_or_else(|| Error::Numeric("no recurrence found for constant terms".into()))?;
    psi_value_from_recurrence(&seed, &op, t0, terms, accel, prec)
}

/// Same, with the sequence seed and recurrence supplied by the caller
/// (used for the closed-form a_m of the identity table).
pub fn psi_value_from_recurrence(
    seed: &[Rational],
    op: &PFOperator,
    t0: &RBall,
    terms: usize,
    accel: Accel,
    prec: u32,
) -> Result<PsiValue> {
    if t0.contains_zero() {
        return Err(Error::DivergentOutsideDisk("t0 = 0 is the log pole".into()));
    }
    // radius-of-convergence estimate: the term ratios of a holonomic
    // sequence approach their limit like R(1 + s/m); extrapolate the
    // last ratios linearly in 1/m. Vanishing terms (sparse support)
    // are bridged by taking ratios over the support gaps.
    let mut ratios: Vec<(f64, f64)> = vec![]; // (m, |a_{m+gap}/a_m|^{1/gap})
    let mut last_nz: Option<(usize, f64)> = None;
    for (m, am) in seed.iter().enumerate() {
        if *am != 0 {
            if let Some((pm, _)) = last_nz {
                let gap = m - pm;
                let r = Rational::from(am / &seed[pm]).to_f64().abs().powf(1.0 / gap as f64);
                ratios.push((m as f64, r));
            }
            last_nz = Some((m, 0.0));
        }
    }
    if ratios.len() < 2 {
        return Err(Error::Numeric("not enough seed terms for a ratio estimate".into()));
    }
    let (m2, r2) = ratios[ratios.len() - 1];
    let (m1, r1) = ratios[ratios.len() - 2];
    // fit r(m) = R + s/m through the last two points
    let ratio_est = if (1.0 / m2 - 1.0 / m1).abs() > 0.0 {
        let s = (r2 - r1) / (1.0 / m2 - 1.0 / m1);
        r2 - s / m2
    } else {
        r2
    };
    // the exact radius of convergence is the smallest modulus of a root
    // of the leading delta coefficient; fall back to the ratio fit when
    // the denominator does not factor into low-degree pieces
    let radius = radius_from_operator(op).unwrap_or(1.0 / ratio_est.max(1e-300));
    let t_abs = t0.abs_ub().to_f64();
    let rho = t_abs / radius;
    if rho > 1.0 + 1e-9 {
        return Err(Error::DivergentOutsideDisk(format!("|t0| / radius = {:.6} > 1", rho)));
    }
    let boundary = rho > 1.0 - 1e-9;

    let s = op.shift.len() - 1;
    // rolling window of the last s+1 ball values a_{m-s} .. a_m
    let mut window: Vec<RBall> = Vec::new();
    let mut sum = RBall::zero(prec);
    let mut tpow = RBall::from_i64(prec, 1);
    let init = (s + 1).min(seed.len()).min(terms + 1);
    for (m, q) in seed.iter().enumerate().take(init) {
        window.push(RBall::from_rational(prec, q));
        if m >= 1 {
            tpow = tpow.mul(t0);
            let term =
                RBall::from_rational(prec, q).mul(&tpow).div(&RBall::from_i64(prec, m as i64));
            sum = sum.add(&term);
        }
    }
    let logt = {
        let a = RBall { mid: t0.mid.clone().abs(), rad: t0.rad.clone() };
        a.ln()
    };
    let mut samples: Vec<(u64, RBall)> = vec![];
    let mut next_sample = (terms >> 6).max(init);
    let mut last_term_abs = RBall::zero(prec);
    for m in init..=terms {
        // a_m from the recurrence at mm = m - s
        let mm = (m as i64) - (s as i64);
        let lead = op.shift[s].eval_i64(mm);
        if lead == 0 {
            return Err(Error::Numeric(format!("recurrence leading term vanishes at {}", mm)));
        }
        let mut acc = RBall::zero(prec);
        for (k, p) in op.shift.iter().enumerate().take(s) {
            let idx = mm + k as i64;
            if idx < 0 {
                continue;
            }
            let c = p.eval_i64(mm);
            if c == 0 {
                continue;
            }
            // window holds a_{m-s} .. a_{m-1}: a_idx at window[idx - (m-s)]
            let w = &window[(idx - mm + 1) as usize];
            acc = acc.add(&w.mul(&RBall::from_rational(prec, &c)));
        }
        let am = acc.neg().div(&RBall::from_rational(prec, &lead));
        window.push(am.clone());
        if window.len() > s + 1 {
            window.remove(0);
        }
        tpow = tpow.mul(t0);
        let term = am.mul(&tpow).div(&RBall::from_i64(prec, m as i64));
        last_term_abs = term.clone();
        sum = sum.add(&term);
        if m == next_sample || m == terms {
            samples.push((m as u64, sum.add(&logt)));
            next_sample = (next_sample * 2).min(terms).max(m + 1);
        }
    }
    if samples.is_empty() {
        samples.push((init.max(1) as u64, sum.add(&logt)));
    }

    if boundary {
        match accel {
            Accel::Richardson => {
                let (v, est) = richardson(&samples);
                Ok(PsiValue { value: v, heuristic_error: est, boundary })
            }
            Accel::None => {
                let last = samples.last().unwrap().1.clone();
                let est = last_term_abs.abs_ub().to_f64() * terms as f64;
                Ok(PsiValue { value: last, heuristic_error: est, boundary })
            }
        }
    } else {
        // certified geometric tail: the term ratio approaches rho < 1
        let last = samples.last().unwrap().1.clone();
        let l = last_term_abs.abs_ub().to_f64().abs();
        let tail = l * rho / (1.0 - rho).max(1e-30) * 2.0;
        let v = last.widen(&rug::Float::with_val(32, tail));
        Ok(PsiValue { value: v, heuristic_error: tail, boundary })
    }
}

/// The radius of convergence of solutions at 0: the minimum modulus of
/// the roots of the leading delta-form coefficient, when it factors
/// into pieces of degree at most two.
pub fn radius_from_operator(op: &PFOperator) -> Option<f64> {
    let lead = &op.delta[op.order()];
    if lead.degree() == 0 {
        return Some(f64::INFINITY);
    }
    let factors = factor_low_degree(lead).ok()?;
    let mut best = f64::INFINITY;
    for f in &factors {
        match f.degree() {
            1 => {
                let r = Rational::from(-&f.coeffs[0]) / f.coeffs[1].clone();
                let v = r.to_f64().abs();
                if v > 0.0 {
                    best = best.min(v);
                }
            }
            2 => {
                let a = f.coeffs[2].to_f64();
                let b = f.coeffs[1].to_f64();
                let c = f.coeffs[0].to_f64();
                let disc = b * b - 4.0 * a * c;
                if disc >= 0.0 {
                    for sgn in [1.0, -1.0] {
                        let v = ((-b + sgn * disc.sqrt()) / (2.0 * a)).abs();
                        if v > 1e-300 {
                            best = best.min(v);
                        }
                    }
                } else {
                    // conjugate pair: |root| = sqrt(c/a)
                    let v = (c / a).abs().sqrt();
                    if v > 1e-300 {
                        best = best.min(v);
                    }
                }
            }
            _ => return None,
        }
    }
    Some(best)
}

/// Complex-parameter variant of the psi evaluation for strictly
/// interior t0: log t0 + sum a_m t0^m/m with a certified geometric
/// tail (principal log branch; t0 must avoid (-inf, 0]).
pub fn psi_value_complex(
    seed: &[Rational],
    op: &PFOperator,
    t0: &crate::num::CBall,
    terms: usize,
    prec: u32,
) -> Result<crate::num::CBall> {
    use crate::num::CBall;
    if t0.abs_lb().to_f64() == 0.0 {
        return Err(Error::DivergentOutsideDisk("t0 = 0 is the log pole".into()));
    }
    let radius = radius_from_operator(op).ok_or_else(|| {
        Error::Numeric("cannot certify the convergence radius".into())
    })?;
    let t_abs = t0.abs_ub().to_f64();
    let rho = t_abs / radius;
    if rho > 1.0 - 1e-9 {
        return Err(Error::DivergentOutsideDisk(format!(
            "|t0|/radius = {:.6} not strictly inside",
            rho
        )));
    }
    let s = op.shift.len() - 1;
    let mut window: Vec<CBall> = Vec::new();
    let mut sum = CBall::zero(prec);
    let mut tpow = CBall::one(prec);
    let init = (s + 1).min(seed.len()).min(terms + 1);
    for (m, q) in seed.iter().enumerate().take(init) {
        window.push(CBall::from_rational(prec, q));
        if m >= 1 {
            tpow = tpow.mul(t0);
            sum = sum.add(
                &CBall::from_rational(prec, q).mul(&tpow).mul(&CBall::from_rational(
                    prec,
                    &Rational::from((1, m as i64)),
                )),
            );
        }
    }
    let mut last = CBall::zero(prec);
    for m in init..=terms {
        let mm = (m as i64) - (s as i64);
        let lead = op.shift[s].eval_i64(mm);
        if lead == 0 {
            return Err(Error::Numeric(format!("recurrence leading term vanishes at {}", mm)));
        }
        let mut acc = CBall::zero(prec);
        for (k, p) in op.shift.iter().enumerate().take(s) {
            let idx = mm + k as i64;
            if idx < 0 {
                continue;
            }
            let c = p.eval_i64(mm);
            if c == 0 {
                continue;
            }
            let w = &window[(idx - mm + 1) as usize];
            acc = acc.add(&w.mul(&CBall::from_rational(prec, &c)));
        }
        let am = acc.neg().div(&CBall::from_rational(prec, &lead));
        window.push(am.clone());
        if window.len() > s + 1 {
            window.remove(0);
        }
        tpow = tpow.mul(t0);
        last = am.mul(&tpow).mul(&CBall::from_rational(prec, &Rational::from((1, m as i64))));
        sum = sum.add(&last);
    }
    let tail = last.abs_ub().to_f64() * rho / (1.0 - rho).max(1e-30) * 2.0;
    Ok(sum.add(&t0.ln()).widen(&rug::Float::with_val(32, tail)))
}

/// A Frobenius pair at a maximally unipotent point: holomorphic
/// solution A (A(0)=1) and log partner Btilde (Btilde(0)=0) with
/// second solution A log t + Btilde.
#[derive(Clone, Debug)]
pub struct FrobeniusPair {
    pub a: QSeries,
    pub btilde: QSeries,
}

/// Solves PF(A) = 0, PF(A log t + Btilde) = 0 to the given order.
pub fn frobenius_solutions(op: &PFOperator, order: usize) -> Result<FrobeniusPair> {
    if !op.is_mum_at_zero() {
        return Err(Error::NotMumPoint(format!("{}", op.indicial_at_zero())));
    }
    let qpolys = &op.delta;
    let r = op.order();
    let c = qpolys[r].coeffs[0].clone();
    assert!(c != 0);
    let tdeg = qpolys.iter().map(|p| p.degree()).max().unwrap_or(0);

    // A: sum_i sum_j q_{j,i} (M-i)^j alpha_{M-i} = 0
    let mut alpha: Vec<Rational> = vec![Rational::from(1)];
    for bigm in 1..=order {
        let mut rhs = Rational::new();
        for i in 1..=tdeg.min(bigm) {
            let mpow = bigm as i64 - i as i64;
            for (j, qj) in qpolys.iter().enumerate() {
                let qji = qj.coeffs.get(i).cloned().unwrap_or_else(Rational::new);
                if qji == 0 {
                    continue;
                }
                let mut term = qji;
                for _ in 0..j {
                    term *= Rational::from(mpow);
                }
                rhs += term * &alpha[bigm - i];
            }
        }
        let mut den = c.clone();
        for _ in 0..r {
            den *= Rational::from(bigm as i64);
        }
        alpha.push(Rational::from(-rhs / den));
    }
    let a = QSeries::new(alpha.clone());

    // Btilde: L(Btilde) = -L'(A), L' = sum_j j q_j(t) delta^{j-1}
    let mut beta: Vec<Rational> = vec![Rational::new()];
    for bigm in 1..=order {
        let mut rhs = Rational::new();
        for i in 1..=tdeg.min(bigm) {
            let mpow = bigm as i64 - i as i64;
            for (j, qj) in qpolys.iter().enumerate() {
                let qji = qj.coeffs.get(i).cloned().unwrap_or_else(Rational::new);
                if qji == 0 {
                    continue;
                }
                let mut term = qji;
                for _ in 0..j {
                    term *= Rational::from(mpow);
                }
                rhs += term * &beta[bigm - i];
            }
        }
        for i in 0..=tdeg.min(bigm) {
            let mpow = bigm as i64 - i as i64;
            for (j, qj) in qpolys.iter().enumerate().skip(1) {
                let qji = qj.coeffs.get(i).cloned().unwrap_or_else(Rational::new);
                if qji == 0 {
                    continue;
                }
                let mut term = Rational::from(j as i64) * qji;
                for _ in 0..(j - 1) {
                    term *= Rational::from(mpow);
                }
                rhs += term * &alpha[bigm - i];
            }
        }
        let mut den = c.clone();
        for _ in 0..r {
            den *= Rational::from(bigm as i64);
        }
        beta.push(Rational::from(-rhs / den));
    }
    let btilde = QSeries::new(beta);
    Ok(FrobeniusPair { a, btilde })
}

/// The mirror map q(t) = t exp(Btilde/A) and its reversion t(q).
pub fn mirror_map(pair: &FrobeniusPair, order: usize) -> Result<(QSeries, QSeries)> {
    let a = pair.a.truncate(order);
    let b = pair.btilde.truncate(order);
    let ratio = b.div(&a)?;
    let q_of_t = Series::identity(order).mul(&ratio.exp()?);
    let t_of_q = q_of_t.reverse()?;
    Ok((q_of_t, t_of_q))
}

/// The exp-of-psi local mirror map Q(t) = t exp(sum a_m t^m / m) and
/// its reversion.
pub fn exp_psi_map(a: &QSeries, order: usize) -> Result<(QSeries, QSeries)> {
    let mut tail = QSeries::zero(order);
    for m in 1..=order.min(a.order()) {
        tail.coeffs[m] = Rational::from(&a.coeffs[m] / Rational::from(m as i64));
    }
    let q_of_t = Series::identity(order).mul(&tail.exp()?);
    let t_of_q = q_of_t.reverse()?;
    Ok((q_of_t, t_of_q))
}

/// A Yukawa coupling in factored rational form:
/// Y(t) = y0 * prod_i (p_i(t)/p_i(0))^{e_i}.
#[derive(Clone, Debug)]
pub struct Yukawa {
    pub y0: Rational,
    pub factors: Vec<(QPoly, i64)>,
}

impl Yukawa {
    pub fn eval_ball(&self, t: &RBall, prec: u32) -> RBall {
        let mut acc = RBall::from_rational(prec, &self.y0);
        for (p, e) in &self.factors {
            let p0 = p.eval(&Rational::new());
            let v = p.eval_ball(t).div(&RBall::from_rational(prec, &p0));
            let pw = v.powi(e.unsigned_abs() as u32);
            if *e >= 0 {
                acc = acc.mul(&pw);
            } else {
                acc = acc.div(&pw);
            }
        }
        acc
    }

    /// Y(t) as a power series (with Y(0) = y0).
    pub fn series(&self, order: usize) -> QSeries {
        let mut acc = QSeries::one(order);
        for (p, e) in &self.factors {
            let p0 = p.eval(&Rational::new());
            let mut s = QSeries::zero(order);
            for (k, c) in p.coeffs.iter().enumerate() {
                if k <= order {
                    s.coeffs[k] = Rational::from(c / &p0);
                }
            }
            let pw = if *e >= 0 {
                pow_series(&s, *e as u32)
            } else {
                pow_series(&s.recip().expect("factor with nonzero constant"), (-*e) as u32)
            };
            acc = acc.mul(&pw);
        }
        acc.scale(&self.y0)
    }
}

fn pow_series(s: &QSeries, k: u32) -> QSeries {
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

/// Computes the Yukawa coupling from a Picard-Fuchs operator of order
/// n via dlog Y = -q_n f_{n-1}(t) dt, where g_{n-1} = t f_{n-1} and
/// q_2 = 1, q_3 = 2/3, q_4 = 1/2. The normalization Y(0) is supplied
/// by the caller.
pub fn yukawa(op: &PFOperator, y0: Rational) -> Result<Yukawa> {
    let n = op.order();
    let qn = match n {
        2 => Rational::from(1),
        3 => Rational::from((2, 3)),
        4 => Rational::from((1, 2)),
        _ => {
            return Err(Error::InvalidArgument(format!(
                "Yukawa extraction needs operator order 2..4, got {}",
                n
            )))
        }
    };
    let g_num = op.delta[n - 1].clone();
    let g_den = op.delta[n].clone();
    if g_num.is_zero() {
        return Ok(Yukawa { y0, factors: vec![] });
    }
    if g_num.coeffs[0] != 0 {
        return Err(Error::NonrationalYukawa("g_{n-1} has nonzero constant term".into()));
    }
    let f_num = QPoly::from_coeffs(g_num.coeffs[1..].to_vec());
    let g = f_num.gcd(&g_den);
    let f_num = f_num.divmod(&g).0;
    let f_den = g_den.divmod(&g).0;
    let sf = f_den.squarefree_part();
    if sf.degree() != f_den.degree() {
        return Err(Error::NonrationalYukawa("denominator is not squarefree".into()));
    }
    let factors = factor_low_degree(&f_den)?;
    // solve f_num = sum_i c_i (den/d_i) d_i'
    let k = factors.len();
    let mut basis: Vec<QPoly> = vec![];
    for d in &factors {
        let cof = f_den.divmod(d).0;
        basis.push(cof.mul(&d.derivative()));
    }
    let deg = f_den.degree();
    let rows = deg.max(1);
    let mut mat: Vec<Vec<Rational>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Rational> = basis
                .iter()
                .map(|b| b.coeffs.get(r).cloned().unwrap_or_else(Rational::new))
                .collect();
            row.push(f_num.coeffs.get(r).cloned().unwrap_or_else(Rational::new));
            row
        })
        .collect();
    let sol = solve_linear(&mut mat, k).ok_or_else(|| {
        Error::NonrationalYukawa("partial fractions do not reduce to dlog form".into())
    })?;
    let mut out = vec![];
    for (d, c) in factors.iter().zip(sol.iter()) {
        if *c == 0 {
            continue;
        }
        let e = Rational::from(-(qn.clone() * c));
        if !e.is_integer() {
            return Err(Error::NonrationalYukawa(format!("exponent {} is not an integer", e)));
        }
        out.push((d.clone(), e.numer().to_i64().unwrap()));
    }
    Ok(Yukawa { y0, factors: out })
}

/// Factors a rational polynomial into irreducible pieces of degree at
/// most 2 (errors otherwise).
fn factor_low_degree(p: &QPoly) -> Result<Vec<QPoly>> {
    let mut rest = p.primitive_integer();
    let mut out: Vec<QPoly> = vec![];
    'outer: loop {
        if rest.degree() == 0 {
            break;
        }
        let a0 = rest.coeffs[0].clone();
        let an = rest.coeffs[rest.degree()].clone();
        if a0 == 0 {
            let lin = QPoly::from_i64s(&[0, 1]);
            out.push(lin.clone());
            rest = rest.divmod(&lin).0;
            continue;
        }
        let num_divs = divisors_of(a0.numer().to_i64().unwrap_or(0).unsigned_abs());
        let den_divs = divisors_of(an.numer().to_i64().unwrap_or(0).unsigned_abs());
        for nn in &num_divs {
            for dd in &den_divs {
                for sign in [1i64, -1] {
                    let cand = Rational::from((sign * (*nn as i64), *dd as i64));
                    if rest.eval(&cand) == 0 {
                        let lin = QPoly::from_coeffs(vec![
                            Rational::from(-cand.clone()),
                            Rational::from(1),
                        ]);
                        out.push(lin.clone());
                        rest = rest.divmod(&lin).0;
                        continue 'outer;
                    }
                }
            }
        }
        break;
    }
    match rest.degree() {
        0 => {}
        1 | 2 => out.push(rest.clone()),
        _ => {
            return Err(Error::NonrationalYukawa(format!(
                "cannot factor degree-{} denominator into degree <= 2 pieces",
                rest.degree()
            )))
        }
    }
    Ok(out)
}

fn divisors_of(n: u64) -> Vec<u64> {
    if n == 0 {
        return vec![1];
    }
    let mut v = vec![];
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            v.push(d);
            v.push(n / d);
        }
        d += 1;
    }
    v.sort_unstable();
    v.dedup();
    v
}

fn solve_linear(mat: &mut [Vec<Rational>], unknowns: usize) -> Option<Vec<Rational>> {
    let rows = mat.len();
    let mut pivots: Vec<(usize, usize)> = vec![];
    let mut r0 = 0;
    for c in 0..unknowns {
        let mut pr = None;
        for (r, row) in mat.iter().enumerate().take(rows).skip(r0) {
            if row[c] != 0 {
                pr = Some(r);
                break;
            }
        }
        let Some(pr) = pr else { continue };
        mat.swap(r0, pr);
        let inv = Rational::from(mat[r0][c].clone().recip());
        for cc in c..=unknowns {
            let t = Rational::from(&mat[r0][cc] * &inv);
            mat[r0][cc] = t;
        }
        for r in 0..rows {
            if r != r0 && mat[r][c] != 0 {
                let f = mat[r][c].clone();
                for cc in c..=unknowns {
                    let t = Rational::from(&mat[r0][cc] * &f);
                    mat[r][cc] -= t;
                }
            }
        }
        pivots.push((r0, c));
        r0 += 1;
    }
    for row in mat.iter().take(rows).skip(r0) {
        if row[unknowns] != 0 {
            return None;
        }
    }
    let mut sol = vec![Rational::new(); unknowns];
    for (r, c) in pivots {
        sol[c] = mat[r][unknowns].clone();
    }
    Some(sol)
}
