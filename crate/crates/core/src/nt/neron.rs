//! The Abel-Jacobi regulator value on a Néron N-gon: the dilogarithm
//! plus log-product formula and its unambiguous imaginary part.

use super::dilog::{li2, DivisorOnCstar};
use crate::cyclotomic::CycNum;
use crate::error::Error;
use crate::num::{CBall, RBall};
use crate::Result;
use rug::Rational;

/// One component of the N-gon: the toric coordinates restricted to the
/// component are f(z) = A prod_j (1 - alpha_j/z)^{d_j} and
/// g(z) = B prod_k (1 - z/beta_k)^{e_k}.
#[derive(Clone, Debug)]
pub struct NGonComponent {
    pub a_const: CycNum,
    pub b_const: CycNum,
    /// Zero/pole data of f: (alpha_j, d_j), sum d_j = 0.
    pub alphas: Vec<(CycNum, i64)>,
    /// Zero/pole data of g: (beta_k, e_k), sum e_k = 0.
    pub betas: Vec<(CycNum, i64)>,
}

#[derive(Clone, Debug)]
pub struct NGonData {
    pub components: Vec<NGonComponent>,
    /// Orientation sign epsilon (supplied by the caller).
    pub epsilon: i64,
}

/// The result of the N-gon evaluation.
#[derive(Clone, Debug)]
pub struct NeronValue {
    /// The full dilogarithm + log-product sum (principal branches),
    /// before the orientation sign.
    pub full_sum: CBall,
    /// epsilon * full_sum: the regulator value mod Q(2) ambiguities.
    pub value: CBall,
    /// The imaginary part computed independently as -epsilon * D2(N),
    /// which is branch-unambiguous.
    pub im_via_d2: RBall,
    /// Im(value) - im_via_d2: the branch defect (a multiple of
    /// pi*log|rational| + Im Q(2) contributions).
    pub defect: RBall,
    /// The divisor N_alpha = sum' d_j e_k [alpha_j/beta_k].
    pub divisor: DivisorOnCstar,
}

fn degree_zero(v: &[(CycNum, i64)]) -> bool {
    v.iter().map(|(_, d)| *d).sum::<i64>() == 0
}

/// Computes the divisor N = sum_i sum'_{j,k} d_ij e_ik [alpha_ij/beta_ik],
/// omitting terms with alpha = beta (the primed-sum convention).
pub fn ngon_divisor(data: &NGonData) -> Result<DivisorOnCstar> {
    let mut terms: Vec<(Rational, CycNum)> = vec![];
    for comp in &data.components {
        for (al, d) in &comp.alphas {
            for (be, e) in &comp.betas {
                if al == be {
                    continue; // primed sum
                }
                let ratio = al.div(be);
                let mult = Rational::from(d * e);
                if let Some(pos) = terms.iter().position(|(_, p)| *p == ratio) {
                    terms[pos].0 += mult;
                } else {
                    terms.push((mult, ratio));
                }
            }
        }
    }
    terms.retain(|(q, _)| *q != 0);
    DivisorOnCstar::new(terms)
}

/// Evaluates the full N-gon regulator formula:
///
///  -sum' d e { Li2(a/b) + (log a - log b) log(1 - a/b) }
///  + sum_i log g_i(0) (log f_i(0) - log f_i(oo))
///  - sum_i log B_i sum_j d_ij log alpha_ij
///  + sum_i log A_i sum_k e_ik log beta_ik,
///
/// and independently Im = -epsilon D2(N). Both are returned; the
/// `defect` field records the branch ambiguity of the principal-branch
/// evaluation against the unambiguous dilogarithm route.
pub fn neron_regulator(data: &NGonData, prec: u32) -> Result<NeronValue> {
    for comp in &data.components {
        if !degree_zero(&comp.alphas) || !degree_zero(&comp.betas) {
            return Err(Error::InvalidArgument(
                "divisor data must have degree zero on each component".into(),
            ));
        }
        for (p, _) in comp.alphas.iter().chain(comp.betas.iter()) {
            if p.is_zero() {
                return Err(Error::InvalidArgument("alpha/beta must avoid 0 and infinity".into()));
            }
        }
    }
    let mut total = CBall::zero(prec);
    for comp in &data.components {
        let a_em = comp.a_const.embed(prec);
        let b_em = comp.b_const.embed(prec);
        // first row
        for (al, d) in &comp.alphas {
            for (be, e) in &comp.betas {
                if al == be {
                    continue;
                }
                let ratio = al.div(be).embed(prec);
                let one = CBall::one(prec);
                let li = li2(&ratio, prec)?;
                let lr = al.embed(prec).ln().sub(&be.embed(prec).ln());
                let lomr = one.sub(&ratio).ln();
                let term = li.add(&lr.mul(&lomr)).mul_i64(d * e);
                total = total.sub(&term);
            }
        }
        // f(0) = A prod alpha^d, f(oo) = A, g(0) = B
        let mut f0 = a_em.clone();
        for (al, d) in &comp.alphas {
            f0 = f0.mul(&al.embed(prec).powi(*d));
        }
        let log_g0 = b_em.ln();
        let log_f0 = f0.ln();
        let log_finf = a_em.ln();
        total = total.add(&log_g0.mul(&log_f0.sub(&log_finf)));
        // - log B sum d log alpha + log A sum e log beta
        let mut sum_d_log_alpha = CBall::zero(prec);
        for (al, d) in &comp.alphas {
            sum_d_log_alpha = sum_d_log_alpha.add(&al.embed(prec).ln().mul_i64(*d));
        }
        let mut sum_e_log_beta = CBall::zero(prec);
        for (be, e) in &comp.betas {
            sum_e_log_beta = sum_e_log_beta.add(&be.embed(prec).ln().mul_i64(*e));
        }
        total = total.sub(&b_em.ln().mul(&sum_d_log_alpha));
        total = total.add(&a_em.ln().mul(&sum_e_log_beta));
    }
    let value = total.mul_i64(data.epsilon);
    let divisor = ngon_divisor(data)?;
    let (d2, _) = super::dilog::d2_divisor(&divisor, prec)?;
    let im_via_d2 = d2.mul_i64(-data.epsilon);
    let defect = value.im_ball().sub(&im_via_d2);
    Ok(NeronValue { full_sum: total, value, im_via_d2, defect, divisor })
}

/// The D5 one-gon data of the singular fiber at t0 = 1/16:
/// f(z) = -(1+1/z)^2/(1-1/z)^2, g(z) = -(1+z/i)^2/(1-z/i)^2.
pub fn d5_ngon() -> NGonData {
    let m1 = CycNum::from_i64(-1);
    let i = CycNum::zeta(4, 1);
    let mi = CycNum::zeta(4, 3);
    NGonData {
        components: vec![NGonComponent {
            a_const: m1.clone(),
            b_const: m1.clone(),
            alphas: vec![(m1.clone(), 2), (CycNum::one(), -2)],
            betas: vec![(mi, 2), (i, -2)],
        }],
        epsilon: -1,
    }
}

/// The E6 three-gon data at t0 = 1/3 (Hesse vertex family).
pub fn e6_ngon() -> NGonData {
    let z3 = CycNum::zeta(3, 1);
    let z3b = CycNum::zeta(3, 2);
    let one = CycNum::one();
    // f_i has zeros at zeta_3 and poles at 1; g_i zeros at conj zeta_3
    // wait: g_i(z) = (1 - z/zeta3bar)/(1 - z) scaled; betas: (zeta3bar, 1), (1, -1)
    let mk = |ac: CycNum, bc: CycNum| NGonComponent {
        a_const: ac,
        b_const: bc,
        alphas: vec![(z3.clone(), 1), (one.clone(), -1)],
        betas: vec![(z3b.clone(), 1), (one.clone(), -1)],
    };
    NGonData {
        components: vec![
            mk(z3b.clone(), one.clone()),
            mk(one.clone(), z3b.clone()),
            mk(z3.clone(), z3.clone()),
        ],
        epsilon: -1,
    }
}

/// The A5 one-gon data at t0 = 2/(11+5 sqrt 5):
/// f(z) = gamma (1-1/z)^2 / ((1-zeta5^2/z)(1-zeta5^3/z)),
/// g(z) = gamma (1-z/zeta5)^2 / ((1-z/zeta5^4)(1-z/zeta5^3)),
/// gamma = -(1+sqrt5)/2 = zeta5^2 (zeta5 + 1).
pub fn a5_ngon() -> NGonData {
    let z5 = |k: i64| CycNum::zeta(5, k);
    let gamma = z5(2).mul(&z5(1).add(&CycNum::one()));
    NGonData {
        components: vec![NGonComponent {
            a_const: gamma.clone(),
            b_const: gamma,
            alphas: vec![(CycNum::one(), 2), (z5(2), -1), (z5(3), -1)],
            betas: vec![(z5(1), 2), (z5(4), -1), (z5(3), -1)],
        }],
        epsilon: -1,
    }
}
