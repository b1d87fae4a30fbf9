//! The toric/Eisenstein comparison pipeline and the local mirror
//! symmetry computations: Mori data, diagonal pencils, instanton
//! extraction, growth rates, and the Hauptmodul equality checks.

mod cases;
mod theorem83;

pub use cases::{builtin_cases, load_case, run_all_cases, CaseOutcome};
pub use theorem83::{
    e4_combination, theorem83_check, theorem83_lhs, HauptmodulSpec, ModularCase, PhiFSpec,
    Theorem83Report,
};

use crate::cyclotomic::{gcd_i64, CycNum};
use crate::error::Error;
use crate::laurent::Laurent;
use crate::num::RBall;
use crate::periods::{psi_value_from_recurrence, Accel, PsiValue};
use crate::recurrence::{fit_recurrence, PFOperator};
use crate::series::QSeries;
use crate::Result;
use rug::{Integer, Rational};

/// Mori data of a 2-dimensional reflexive polytope: for each vertex, the
/// minimal integral relation vector, plus the dual-edge lengths d_i and
/// the edge lengths e_i.
#[derive(Clone, Debug)]
pub struct MoriData {
    /// Vertices in counterclockwise order.
    pub vertices: Vec<Vec<i64>>,
    /// Relation vectors l^(k) indexed like (l_0; l_1..l_{r+2}).
    pub relations: Vec<Vec<i64>>,
    /// d_i = lattice length of the dual edge of the polar polytope.
    pub d: Vec<i64>,
    /// e_i = lattice length of the edge [v_i, v_{i+1}].
    pub e: Vec<i64>,
    /// N_0 = sum of the d_i.
    pub n0: i64,
}

fn cross(a: &[i64], b: &[i64]) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

/// Orders polygon vertices counterclockwise around the origin.
fn ccw_vertices(p: &crate::polytope::LatticePolytope) -> Vec<Vec<i64>> {
    let mut vs = p.vertices.clone();
    vs.sort_by(|a, b| {
        let aa = (a[1] as f64).atan2(a[0] as f64);
        let bb = (b[1] as f64).atan2(b[0] as f64);
        aa.partial_cmp(&bb).unwrap()
    });
    vs
}

/// Computes the Mori relations per the minimal positive combination
/// recipe and checks them against the closed forms in the edge lengths.
pub fn mori_relations(delta: &crate::polytope::LatticePolytope) -> Result<MoriData> {
    if delta.dim != 2 {
        return Err(Error::Not2dReflexive(format!("dimension {}", delta.dim)));
    }
    if !delta.origin_interior() || !delta.is_reflexive()? {
        return Err(Error::Not2dReflexive("polytope is not reflexive".into()));
    }
    let vs = ccw_vertices(delta);
    let r2 = vs.len();
    // edge lengths e_j of [v_j, v_{j+1}]
    let e: Vec<i64> = (0..r2)
        .map(|j| {
            let a = &vs[j];
            let b = &vs[(j + 1) % r2];
            gcd_i64(a[0] - b[0], a[1] - b[1])
        })
        .collect();
    // d_i: lattice length of the dual edge {y in polar : <y, v_i> = -1}
    let polar = delta.polar_dual()?.to_integral().map_err(|_| {
        Error::Not2dReflexive("polar dual is not integral".into())
    })?;
    let d: Vec<i64> = vs
        .iter()
        .map(|v| {
            let on_edge: Vec<&Vec<i64>> = polar
                .vertices
                .iter()
                .filter(|y| y[0] * v[0] + y[1] * v[1] == -1)
                .collect();
            assert_eq!(on_edge.len(), 2, "dual edge should have two vertices");
            gcd_i64(on_edge[0][0] - on_edge[1][0], on_edge[0][1] - on_edge[1][1])
        })
        .collect();
    // relations
    let mut relations = vec![];
    for k in 0..r2 {
        let vm = &vs[(k + r2 - 1) % r2];
        let v0 = &vs[k];
        let vp = &vs[(k + 1) % r2];
        let c_m = cross(vm, v0);
        let c_p = cross(vp, v0);
        if c_m == 0 || c_p == 0 {
            return Err(Error::Not2dReflexive(
                "neighbor vertex collinear with the ray through a vertex".into(),
            ));
        }
        // a vm + b vp parallel to v0: a c_m + b c_p = 0
        let g = gcd_i64(c_m, c_p);
        let mut a = (c_p / g).abs();
        let mut b = (c_m / g).abs();
        // both positive by convexity (c_m > 0 > c_p in ccw order)
        a = a.abs();
        b = b.abs();
        let sum = [a * vm[0] + b * vp[0], a * vm[1] + b * vp[1]];
        // sum = lambda v0
        let lambda = if v0[0] != 0 { sum[0] / v0[0] } else { sum[1] / v0[1] };
        assert_eq!(sum[0], lambda * v0[0]);
        assert_eq!(sum[1], lambda * v0[1]);
        let lk = -lambda;
        let l0 = lambda - a - b;
        if l0 > 0 {
            return Err(Error::Not2dReflexive("positive l_0 in a Mori relation".into()));
        }
        let mut rel = vec![0i64; r2 + 1];
        rel[0] = l0;
        rel[1 + (k + r2 - 1) % r2] = a;
        rel[1 + k] += lk;
        rel[1 + (k + 1) % r2] += b;
        relations.push(rel);
        // closed-form check: l_0 = -e_k e_{k-1} d_k / gcd(e_k, e_{k-1}),
        // l_{k-1} = e_k/gcd, l_{k+1} = e_{k-1}/gcd (with e_{k-1} the
        // edge ending at v_k)
        let ek = e[k];
        let ekm = e[(k + r2 - 1) % r2];
        let gg = gcd_i64(ek, ekm);
        assert_eq!(a, ek / gg, "closed form l_(k-1) at k = {}", k);
        assert_eq!(b, ekm / gg, "closed form l_(k+1) at k = {}", k);
        assert_eq!(l0, -ek * ekm * d[k] / gg, "closed form l_0 at k = {}", k);
        assert_eq!(lk, (ek * ekm * d[k] - ek - ekm) / gg, "closed form l_k at k = {}", k);
    }
    // defining identity: sum_j l_j^(k) nu-hat^(j) = 0 in Z^3
    for rel in &relations {
        let mut sx = 0i64;
        let mut sy = 0i64;
        let mut sz = rel[0];
        for (j, v) in vs.iter().enumerate() {
            sx += rel[j + 1] * v[0];
            sy += rel[j + 1] * v[1];
            sz += rel[j + 1];
        }
        assert_eq!((sx, sy, sz), (0, 0, 0), "relation fails the lattice identity");
    }
    let n0 = d.iter().sum();
    Ok(MoriData { vertices: vs, relations, d, e, n0 })
}

/// The diagonal-slice Laurent polynomial phi = sum alpha_j x^{v_j} with
/// the sign recipe alpha_j = (-1)^{sigma_j + sigma_{j-1} + 1},
/// sigma_j = |v^(j,j+1)_1 v^(j,j+1)_2| / e_j^2.
pub fn diagonal_phi(delta: &crate::polytope::LatticePolytope) -> Result<Laurent> {
    let md = mori_relations(delta)?;
    let vs = &md.vertices;
    let r2 = vs.len();
    let sigma: Vec<i64> = (0..r2)
        .map(|j| {
            let a = &vs[j];
            let b = &vs[(j + 1) % r2];
            let dx = b[0] - a[0];
            let dy = b[1] - a[1];
            (dx * dy).abs() / (md.e[j] * md.e[j])
        })
        .collect();
    let mut phi = Laurent::zero(2);
    for (j, v) in vs.iter().enumerate() {
        let sj = sigma[j];
        let sjm = sigma[(j + r2 - 1) % r2];
        let sign = if (sj + sjm + 1) % 2 == 0 { 1 } else { -1 };
        phi.add_assign_term(v.clone(), &CycNum::from_i64(sign));
    }
    Ok(phi)
}

/// Conventions for instanton extraction.
#[derive(Clone, Debug)]
pub struct InstantonConvention {
    /// The generating identity is prefactor * (1 - Y(t(Q))/Y(0) A(t(Q))^3)
    /// = sum_D (sum_{d | D} d^3 n_d) Q^D.
    pub prefactor: Rational,
    /// Apply the divisor (multi-cover) inversion to extract integers.
    pub multicover: bool,
}

impl Default for InstantonConvention {
    fn default() -> Self {
        InstantonConvention { prefactor: Rational::from(1), multicover: true }
    }
}

/// Extracts local Gromov-Witten integers from the fundamental period
/// series, the normalized Yukawa series y(t) = Y(t)/Y(0), and the
/// exp-psi mirror map Q(t) (with reversion t(Q)), asserting
/// integrality.
pub fn instanton_numbers(
    a_series: &QSeries,
    yukawa_normalized: &QSeries,
    q_of_t: &QSeries,
    d_max: usize,
    conv: &InstantonConvention,
) -> Result<Vec<Integer>> {
    let order = d_max.max(1);
    let a = a_series.truncate(order);
    let y = yukawa_normalized.truncate(order);
    let q = q_of_t.truncate(order);
    let t_of_q = q.reverse()?;
    let a3 = a.mul(&a).mul(&a);
    let rhs_t = y.div(&a3)?;
    let rhs_q = rhs_t.compose(&t_of_q)?;
    // c_D = prefactor * -(rhs_q)_D for D >= 1
    let c: Vec<Rational> = (0..=order)
        .map(|dd| Rational::from(-(rhs_q.coeffs[dd].clone() * &conv.prefactor)))
        .collect();
    let mut out = vec![];
    for dd in 1..=d_max {
        let val = if conv.multicover {
            // D^3 n_D = sum_{d | D} mu(D/d) c_d
            let mut s = Rational::new();
            for e in 1..=dd {
                if dd % e == 0 {
                    let m = moebius((dd / e) as i64);
                    if m != 0 {
                        s += Rational::from(&c[e] * Rational::from(m));
                    }
                }
            }
            s
        } else {
            c[dd].clone()
        };
        let d3 = Rational::from((dd * dd * dd) as i64);
        let n = Rational::from(val / d3);
        if !n.is_integer() {
            return Err(Error::NonintegralInstanton(dd, n.to_string()));
        }
        out.push(n.numer().clone());
    }
    Ok(out)
}

fn moebius(n: i64) -> i64 {
    let mut n = n;
    let mut res = 1i64;
    let mut p = 2i64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            res = -res;
        }
        p += 1;
    }
    if n > 1 {
        res = -res;
    }
    res
}

/// The exponential growth rate exp(-Im Psi(t0) / 2 pi) of the local
/// Gromov-Witten numbers, computed from the boundary regulator value:
/// for real 0 < t0 on the convergence circle this is
/// exp(log(1/t0) - sum a_m t0^m / m).
pub fn growth_rate(
    seed: &[Rational],
    op: &PFOperator,
    t0: &RBall,
    terms: usize,
    prec: u32,
) -> Result<(RBall, PsiValue)> {
    let pv = psi_value_from_recurrence(seed, op, t0, terms, Accel::Richardson, prec)?;
    // psi = log t0 + sum; rate = exp(-psi)
    let rate = pv.value.neg().exp();
    Ok((rate, pv))
}

/// Convenience: the full K3-free local mirror pipeline for a reflexive
/// polygon: Mori data, diagonal phi, compressed period series, fitted
/// operator, Yukawa, instantons.
pub struct LocalMirrorPipeline {
    pub mori: MoriData,
    pub phi: Laurent,
    pub kappa: usize,
    pub a_compressed: QSeries,
    pub op: PFOperator,
    pub yukawa_series: QSeries,
    pub instantons: Vec<Integer>,
}

pub fn local_mirror_pipeline(
    delta: &crate::polytope::LatticePolytope,
    d_max: usize,
) -> Result<LocalMirrorPipeline> {
    let mori = mori_relations(delta)?;
    let phi = diagonal_phi(delta)?;
    // the diagonal family may be supported on multiples of kappa
    let probe = crate::periods::constant_term_sequence(&phi, 12)?;
    let mut kappa = 0usize;
    for (m, v) in probe.iter().enumerate().skip(1) {
        if *v != 0 {
            kappa = crate::cyclotomic::gcd_i64(kappa as i64, m as i64) as usize;
        }
    }
    let kappa = if kappa == 0 { 1 } else { kappa };
    let raw_order = (d_max + 14) * kappa;
    let a_full = crate::periods::constant_term_sequence(&phi, raw_order)?;
    let a_compressed = QSeries::new(a_full.clone()).compress(kappa)?;
    let op = fit_recurrence(&a_compressed.coeffs, 4, 4)
        .ok_or_else(|| Error::Numeric("no recurrence for the diagonal family".into()))?;
    let yk = crate::periods::yukawa(&op, Rational::from(1))?;
    let yukawa_series = yk.series(a_compressed.order());
    let (q_of_t, _) = crate::periods::exp_psi_map(&a_compressed, a_compressed.order())?;
    // N_0 (1 - Y/Y(0)A^3) = sum_D D^3 N_D Q^D with lattice degree
    // D = kappa d; reindexing by the Gromov-Witten degree d divides the
    // cubes by kappa^3
    let conv = InstantonConvention {
        prefactor: Rational::from((mori.n0, (kappa * kappa * kappa) as i64)),
        multicover: true,
    };
    let instantons = instanton_numbers(&a_compressed, &yukawa_series, &q_of_t, d_max, &conv)?;
    Ok(LocalMirrorPipeline { mori, phi, kappa, a_compressed, op, yukawa_series, instantons })
}
