//! Cusp-adapted projections and inclusions on torsion functions,
//! Pontryagin products, the horospherical map and fundamental vectors.

use super::cusps::{cusps, Cusp};
use super::TorsionFunction;
use crate::cyclotomic::{gcd_i64, CycNum};
use crate::error::Error;
use crate::nt::bernoulli_poly;
use crate::Result;
use rug::Rational;

/// The trace (pi_sigma)_*: arity 2 -> arity 1,
/// (pi_* phi)(a) = sum_b phi(a (p,q) + b (-s,r)).
pub fn pi_push(phi: &TorsionFunction, sigma: &Cusp) -> Result<TorsionFunction> {
    if phi.arity != 2 {
        return Err(Error::ArityMismatch(2, phi.arity));
    }
    let n = phi.modulus;
    let mut out = TorsionFunction::zero(n, 1);
    for a in 0..n {
        let mut acc = CycNum::zero();
        for b in 0..n {
            let m = a * sigma.p - b * sigma.s;
            let nn = a * sigma.q + b * sigma.r;
            acc = acc.add(phi.get2(m, nn));
        }
        out.set1(a, acc);
    }
    Ok(out)
}

/// The section pi_sigma^*: arity 1 -> arity 2,
/// (pi^* phi0)(m, n) = phi0(a) where (m, n) = a (p,q) + b (-s,r),
/// i.e. a = m r + n s.
pub fn pi_pull(phi0: &TorsionFunction, sigma: &Cusp) -> Result<TorsionFunction> {
    if phi0.arity != 1 {
        return Err(Error::ArityMismatch(1, phi0.arity));
    }
    let n = phi0.modulus;
    let mut out = TorsionFunction::zero(n, 2);
    for m in 0..n {
        for nn in 0..n {
            let a = m * sigma.r + nn * sigma.s;
            out.set2(m, nn, phi0.get1(a).clone());
        }
    }
    Ok(out)
}

/// The inclusion pushforward (iota_sigma)_*: arity 1 -> arity 2,
/// supported on the subgroup generated by (-s, r):
/// (iota_* phi0)(b(-s, r)) = phi0(b).
pub fn iota_push(phi0: &TorsionFunction, sigma: &Cusp) -> Result<TorsionFunction> {
    if phi0.arity != 1 {
        return Err(Error::ArityMismatch(1, phi0.arity));
    }
    let n = phi0.modulus;
    let mut out = TorsionFunction::zero(n, 2);
    for b in 0..n {
        let m = -b * sigma.s;
        let nn = b * sigma.r;
        out.set2(m, nn, phi0.get1(b).clone());
    }
    Ok(out)
}

/// The restriction iota_sigma^*: arity 2 -> arity 1,
/// (iota^* phi)(a) = phi(a (-s, r)).
pub fn iota_pull(phi: &TorsionFunction, sigma: &Cusp) -> Result<TorsionFunction> {
    if phi.arity != 2 {
        return Err(Error::ArityMismatch(2, phi.arity));
    }
    let n = phi.modulus;
    let mut out = TorsionFunction::zero(n, 1);
    for a in 0..n {
        out.set1(a, phi.get2(-a * sigma.s, a * sigma.r).clone());
    }
    Ok(out)
}

/// Right action of an integer matrix [[a, b], [c, d]] on arity-2
/// functions: (M^* phi)(m, n) = phi(m a + n c, m b + n d).
pub fn act_matrix(phi: &TorsionFunction, mat: [[i64; 2]; 2]) -> Result<TorsionFunction> {
    if phi.arity != 2 {
        return Err(Error::ArityMismatch(2, phi.arity));
    }
    let n = phi.modulus;
    let mut out = TorsionFunction::zero(n, 2);
    for m in 0..n {
        for nn in 0..n {
            let mm = m * mat[0][0] + nn * mat[1][0];
            let nn2 = m * mat[0][1] + nn * mat[1][1];
            out.set2(m, nn, phi.get2(mm, nn2).clone());
        }
    }
    Ok(out)
}

/// The (l+1)-fold Pontryagin product (convolution on (Z/N)^2).
pub fn pontryagin(factors: &[&TorsionFunction]) -> Result<TorsionFunction> {
    assert!(!factors.is_empty());
    let n = factors[0].modulus;
    for f in factors {
        if f.modulus != n || f.arity != 2 {
            return Err(Error::ArityMismatch(2, f.arity));
        }
    }
    let mut acc = factors[0].clone();
    for f in &factors[1..] {
        let mut next = TorsionFunction::zero(n, 2);
        for m1 in 0..n {
            for n1 in 0..n {
                let v1 = acc.get2(m1, n1);
                if v1.is_zero() {
                    continue;
                }
                for m2 in 0..n {
                    for n2 in 0..n {
                        let v2 = f.get2(m2, n2);
                        if v2.is_zero() {
                            continue;
                        }
                        let i = next.idx2(m1 + m2, n1 + n2);
                        next.values[i] = next.values[i].add(&v1.mul(v2));
                    }
                }
            }
        }
        acc = next;
    }
    Ok(acc)
}

/// The function beta_N with phi * beta_N = phi for degree-zero phi
/// (value (N^2-1)/N^2 at the origin and -1/N^2 elsewhere).
pub fn beta_n(n: i64) -> TorsionFunction {
    let mut out = TorsionFunction::zero(n, 2);
    let nn = Rational::from(n * n);
    for m in 0..n {
        for k in 0..n {
            let v = if m == 0 && k == 0 {
                Rational::from((&nn - Rational::from(1)) / &nn)
            } else {
                Rational::from(Rational::from(-1) / &nn)
            };
            out.set2(m, k, CycNum::from_rational(v));
        }
    }
    out
}

/// The horospherical map H_sigma^[l](phi) =
/// ((-1)^l (l+1) / (l+2)!) sum_a (pi_sigma)_* phi (a) B_{l+2}(a/N),
/// for degree-zero rational phi.
pub fn horospherical(phi: &TorsionFunction, sigma: &Cusp, ell: u32) -> Result<Rational> {
    if !phi.is_degree_zero() {
        return Err(Error::NotDegreeZero);
    }
    let n = phi.modulus;
    let tr = pi_push(phi, sigma)?;
    let trv = tr
        .rational_values()
        .ok_or_else(|| Error::Numeric("horospherical needs rational values".into()))?;
    let mut s = Rational::new();
    for (a, v) in trv.iter().enumerate() {
        if *v == 0 {
            continue;
        }
        s += Rational::from(v * &bernoulli_poly(ell as usize + 2, &Rational::from((a as i64, n))));
    }
    let mut fact = Rational::from(1);
    for i in 1..=(ell as i64 + 2) {
        fact *= Rational::from(i);
    }
    let sign = if ell % 2 == 0 { 1 } else { -1 };
    Ok(Rational::from(s * Rational::from(sign * (ell as i64 + 1))) / fact)
}

/// The residue vector {H_sigma(phi)} over all cusps of the level.
pub fn residue_vector(phi: &TorsionFunction, ell: u32) -> Result<Vec<(Cusp, Rational)>> {
    let mut out = vec![];
    for c in cusps(phi.modulus)? {
        let h = horospherical(phi, &c, ell)?;
        out.push((c, h));
    }
    Ok(out)
}

/// The unique fundamental vector phi_N^[l]: the rational arity-1
/// function whose horospherical values through (1/N) pi_sigma^* form
/// the delta at sigma. Solved from the linear conditions: normalized
/// Bernoulli pairing one at a = 1, zero at units a != +-1, coset sums
/// zero for each proper divisor, parity (-1)^l, degree zero.
pub fn fundamental_vector(n: i64, ell: u32) -> Result<TorsionFunction> {
    if n < 3 {
        return Err(Error::InvalidArgument("fundamental vector needs N >= 3".into()));
    }
    let nn = n as usize;
    // unknowns phi(0..N-1); build rows of (row, rhs)
    let mut rows: Vec<(Vec<Rational>, Rational)> = vec![];
    let bern: Vec<Rational> = (0..n)
        .map(|c| bernoulli_poly(ell as usize + 2, &Rational::from((c, n))))
        .collect();
    // (i') normalization: ((-1)^l (l+1)/(l+2)!) sum_c phi(c) B(c/N) = 1
    {
        let mut fact = Rational::from(1);
        for i in 1..=(ell as i64 + 2) {
            fact *= Rational::from(i);
        }
        let sign = if ell % 2 == 0 { 1 } else { -1 };
        let scale = Rational::from((sign * (ell as i64 + 1), 1)) / fact;
        let row: Vec<Rational> = bern.iter().map(|b| Rational::from(b * &scale)).collect();
        rows.push((row, Rational::from(1)));
    }
    // (ii') sum_c phi(a c) B(c/N) = 0 for units a != +-1
    for a in 2..n {
        if gcd_i64(a, n) != 1 || (a + 1) % n == 0 {
            continue;
        }
        let mut row = vec![Rational::new(); nn];
        for c in 0..n {
            row[((a * c) % n) as usize] += &bern[c as usize];
        }
        rows.push((row, Rational::new()));
    }
    // (iii') coset sums vanish: for each r | N, r != 1, N:
    // sum_b phi(a + b N/r) = 0 for a = 0..N/r-1
    for r in 2..n {
        if n % r != 0 {
            continue;
        }
        let step = n / r;
        for a in 0..step {
            let mut row = vec![Rational::new(); nn];
            for b in 0..r {
                row[((a + b * step) % n) as usize] += Rational::from(1);
            }
            rows.push((row, Rational::new()));
        }
    }
    // degree zero
    {
        let row = vec![Rational::from(1); nn];
        rows.push((row, Rational::new()));
    }
    // (iv) parity: phi(-a) = (-1)^l phi(a)
    let sign = if ell % 2 == 0 { 1 } else { -1 };
    for a in 0..n {
        let mut row = vec![Rational::new(); nn];
        row[a as usize] += Rational::from(1);
        row[((n - a) % n) as usize] -= Rational::from(sign);
        rows.push((row, Rational::new()));
    }
    // solve least-structured: Gaussian elimination expecting a unique solution
    let sol = solve_unique(&mut rows, nn)?;
    TorsionFunction::from_rationals(n, 1, &sol)
}

fn solve_unique(rows: &mut Vec<(Vec<Rational>, Rational)>, unknowns: usize) -> Result<Vec<Rational>> {
    let m = rows.len();
    let mut r0 = 0usize;
    let mut pivots: Vec<(usize, usize)> = vec![];
    for c in 0..unknowns {
        let mut pr = None;
        for r in r0..m {
            if rows[r].0[c] != 0 {
                pr = Some(r);
                break;
            }
        }
        let Some(pr) = pr else { continue };
        rows.swap(r0, pr);
        let inv = Rational::from(rows[r0].0[c].clone().recip());
        for cc in 0..unknowns {
            let t = Rational::from(&rows[r0].0[cc] * &inv);
            rows[r0].0[cc] = t;
        }
        let t = Rational::from(&rows[r0].1 * &inv);
        rows[r0].1 = t;
        for r in 0..m {
            if r != r0 && rows[r].0[c] != 0 {
                let f = rows[r].0[c].clone();
                for cc in 0..unknowns {
                    let t = Rational::from(&rows[r0].0[cc] * &f);
                    rows[r].0[cc] -= t;
                }
                let t = Rational::from(&rows[r0].1 * &f);
                rows[r].1 -= t;
            }
        }
        pivots.push((r0, c));
        r0 += 1;
    }
    if pivots.len() != unknowns {
        return Err(Error::Numeric(format!(
            "fundamental-vector system rank {} < {}",
            pivots.len(),
            unknowns
        )));
    }
    for r in rows.iter().skip(r0) {
        if r.1 != 0 {
            return Err(Error::Numeric("fundamental-vector system inconsistent".into()));
        }
    }
    let mut sol = vec![Rational::new(); unknowns];
    for (r, c) in pivots {
        sol[c] = rows[r].1.clone();
    }
    Ok(sol)
}
