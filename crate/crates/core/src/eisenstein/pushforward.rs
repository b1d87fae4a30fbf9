//! Pushforward transforms on Fourier coefficients for the index-N
//! subgroup quotients, and the residue transform of the Fricke
//! symmetrization.

use super::TorsionFunction;
use crate::cyclotomic::CycNum;
use crate::error::Error;
use crate::Result;
use rug::Rational;

/// (rho_* phi_hat)(m, n) = sum_j phi_hat(m, n - m j).
pub fn rho_push(hat: &TorsionFunction) -> Result<TorsionFunction> {
    if hat.arity != 2 {
        return Err(Error::ArityMismatch(2, hat.arity));
    }
    let n = hat.modulus;
    let mut out = TorsionFunction::zero(n, 2);
    for m in 0..n {
        for nn in 0..n {
            let mut acc = CycNum::zero();
            for j in 0..n {
                acc = acc.add(hat.get2(m, nn - m * j));
            }
            out.set2(m, nn, acc);
        }
    }
    Ok(out)
}

/// (rho'_* phi_hat)(m, n) = sum_j phi_hat(m - n j, n).
pub fn rho_push_prime(hat: &TorsionFunction) -> Result<TorsionFunction> {
    if hat.arity != 2 {
        return Err(Error::ArityMismatch(2, hat.arity));
    }
    let n = hat.modulus;
    let mut out = TorsionFunction::zero(n, 2);
    for m in 0..n {
        for nn in 0..n {
            let mut acc = CycNum::zero();
            for j in 0..n {
                acc = acc.add(hat.get2(m - nn * j, nn));
            }
            out.set2(m, nn, acc);
        }
    }
    Ok(out)
}

/// The residue transform of the Fricke symmetrization
/// F+ = (F + sign * F|_{iota_N}) / 2: from the residues of F at
/// [i-infinity] and [0] to those of F+ (weight 4 normalization):
/// res_inf(F+) = (res_inf(F) + sign N^2 res_0(F)) / 2,
/// res_0(F+)  = (sign res_inf(F)/N^2 + res_0(F)) / 2.
/// The residues at the integer cusps [j] equal the one at [0].
pub fn fricke_plus_residues(
    res_inf: &Rational,
    res_zero: &Rational,
    n: i64,
    sign: i64,
) -> (Rational, Rational) {
    assert!(sign == 1 || sign == -1);
    let n2 = Rational::from(n * n);
    let new_inf = Rational::from(
        (res_inf + Rational::from(&n2 * res_zero) * Rational::from(sign)) / Rational::from(2),
    );
    let new_zero = Rational::from(
        (Rational::from(res_inf / &n2) * Rational::from(sign) + res_zero) / Rational::from(2),
    );
    (new_inf, new_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eisenstein::cusps::{cusp_infinity, cusp_zero};
    use crate::eisenstein::fourier::{fundamental_vector, iota_push, pi_pull};

    #[test]
    fn rho_prime_turns_iota_into_pi() {
        // rho'_* of iota_{inf *} psi = pi_{[0]}^* psi (checked at N = 4)
        // the identity needs psi to vanish off the units (condition (iii)
        // of the fundamental vectors), as with phi_hat_4
        let n = 4i64;
        let psi = TorsionFunction::from_i64s(n, 1, &[0, -5, 0, 2]).unwrap();
        let inf = cusp_infinity(n);
        let zero = cusp_zero(n);
        let lhs = rho_push_prime(&iota_push(&psi, &inf).unwrap()).unwrap();
        let rhs = pi_pull(&psi, &zero).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn rho_multiplies_rows_divisible_by_n() {
        // on an m = 0 supported function, rho_* multiplies by N
        let n = 5i64;
        let mut hat = TorsionFunction::zero(n, 2);
        for nn in 0..n {
            hat.set2(0, nn, CycNum::from_i64(nn + 1));
        }
        let pushed = rho_push(&hat).unwrap();
        for nn in 0..n {
            assert_eq!(*pushed.get2(0, nn), CycNum::from_i64((nn + 1) * n));
        }
    }

    #[test]
    fn fricke_minus_variant_residues() {
        // residues (-24 at inf, 0 at [0]) with the minus-sign variant at
        // N = 6 give (-12 at inf, +1/3 at the integer cusps)
        let (ninf, nzero) =
            fricke_plus_residues(&Rational::from(-24), &Rational::new(), 6, -1);
        assert_eq!(ninf, Rational::from(-12));
        assert_eq!(nzero, Rational::from((1, 3)));
    }

    #[test]
    fn zero_pull_transform_shape() {
        // phi_hat = -(1/4) rho'_* iota_{inf *} fhat_4 = -(1/4) pi_0^* fhat_4
        let n = 4i64;
        let f = fundamental_vector(n, 1).unwrap();
        let fhat = f.ft();
        let inf = cusp_infinity(n);
        let zero = cusp_zero(n);
        let lhs = rho_push_prime(&iota_push(&fhat, &inf).unwrap())
            .unwrap()
            .scale(&Rational::from((-1, 4)));
        let rhs = pi_pull(&fhat, &zero).unwrap().scale(&Rational::from((-1, 4)));
        assert_eq!(lhs, rhs);
        // fhat_4 = (0, 64i, 0, -64i) under the displayed kernel... with
        // phi_4 = (0,-32,0,32): hat(1) = -32 zeta^-1 + 32 zeta^-3 = 64i
        let i64x = CycNum::zeta(4, 1).scale(&Rational::from(64));
        assert_eq!(*fhat.get1(1), i64x);
    }
}
