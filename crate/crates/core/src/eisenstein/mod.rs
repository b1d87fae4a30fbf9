//! Finite Fourier theory on (Z/N)^m, cusps of Gamma(N), horospherical
//! maps, fundamental vectors, Eisenstein series (lattice sums and
//! q-expansions), regulator-period expansions, higher normal functions,
//! cusp limits, and pushforward/Fricke transforms.

mod cusps;
mod fourier;
mod lattice;
mod pushforward;
mod qexp;

pub use cusps::{cusp_count, cusp_for, cusp_infinity, cusp_zero, cusps, Cusp};
pub use fourier::{
    act_matrix, beta_n, fundamental_vector, horospherical, iota_pull, iota_push, pi_pull,
    pi_push, pontryagin, residue_vector,
};
pub use lattice::{cot_sum, cusp_limit, eisenstein_lattice, ltilde_minus_balls, psi_fk_lattice, CuspLimit};
pub use pushforward::{fricke_plus_residues, rho_push, rho_push_prime};
pub use qexp::{
    eisenstein_q, normal_function_eval, normal_function_q, psi_f0_q, tilde_e_sigma,
    EisensteinSeries, NormalFunction,
};

use crate::cyclotomic::CycNum;
use crate::error::Error;
use crate::Result;
use rug::Rational;

/// A K-valued function on (Z/N)^m for m = 1, 2, with exact cyclotomic
/// values. Arity-2 values are stored row-major: index(m, n) = m N + n.
#[derive(Clone, PartialEq)]
pub struct TorsionFunction {
    pub modulus: i64,
    pub arity: usize,
    pub values: Vec<CycNum>,
}

impl std::fmt::Debug for TorsionFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "TorsionFunction(N={}, arity={})", self.modulus, self.arity)
    }
}

impl TorsionFunction {
    pub fn zero(modulus: i64, arity: usize) -> Self {
        assert!(arity == 1 || arity == 2);
        let len = (modulus as usize).pow(arity as u32);
        TorsionFunction { modulus, arity, values: vec![CycNum::zero(); len] }
    }

    pub fn from_rationals(modulus: i64, arity: usize, vals: &[Rational]) -> Result<Self> {
        let len = (modulus as usize).pow(arity as u32);
        if vals.len() != len {
            return Err(Error::InvalidArgument(format!(
                "expected {} values, got {}",
                len,
                vals.len()
            )));
        }
        Ok(TorsionFunction {
            modulus,
            arity,
            values: vals.iter().map(|q| CycNum::from_rational(q.clone())).collect(),
        })
    }

    pub fn from_i64s(modulus: i64, arity: usize, vals: &[i64]) -> Result<Self> {
        let v: Vec<Rational> = vals.iter().map(|&x| Rational::from(x)).collect();
        Self::from_rationals(modulus, arity, &v)
    }

    pub fn idx1(&self, a: i64) -> usize {
        a.rem_euclid(self.modulus) as usize
    }

    pub fn idx2(&self, m: i64, n: i64) -> usize {
        (m.rem_euclid(self.modulus) * self.modulus + n.rem_euclid(self.modulus)) as usize
    }

    pub fn get1(&self, a: i64) -> &CycNum {
        assert_eq!(self.arity, 1);
        &self.values[self.idx1(a)]
    }

    pub fn get2(&self, m: i64, n: i64) -> &CycNum {
        assert_eq!(self.arity, 2);
        &self.values[self.idx2(m, n)]
    }

    pub fn set1(&mut self, a: i64, v: CycNum) {
        assert_eq!(self.arity, 1);
        let i = self.idx1(a);
        self.values[i] = v;
    }

    pub fn set2(&mut self, m: i64, n: i64, v: CycNum) {
        assert_eq!(self.arity, 2);
        let i = self.idx2(m, n);
        self.values[i] = v;
    }

    /// Recomputed flag: the values sum to zero.
    pub fn is_degree_zero(&self) -> bool {
        let mut s = CycNum::zero();
        for v in &self.values {
            s = s.add(v);
        }
        s.is_zero()
    }

    /// Recomputed flag: phi(0) = 0 resp. phi(0,0) = 0.
    pub fn vanishes_at_zero(&self) -> bool {
        self.values[0].is_zero()
    }

    /// Recomputed parity under negation: Some(+1) even, Some(-1) odd,
    /// None neither.
    pub fn parity(&self) -> Option<i64> {
        let n = self.modulus;
        let mut even = true;
        let mut odd = true;
        match self.arity {
            1 => {
                for a in 0..n {
                    let v = self.get1(a);
                    let w = self.get1(-a);
                    if *v != *w {
                        even = false;
                    }
                    if *v != w.neg() {
                        odd = false;
                    }
                }
            }
            _ => {
                for m in 0..n {
                    for nn in 0..n {
                        let v = self.get2(m, nn);
                        let w = self.get2(-m, -nn);
                        if *v != *w {
                            even = false;
                        }
                        if *v != w.neg() {
                            odd = false;
                        }
                    }
                }
            }
        }
        if even {
            Some(1)
        } else if odd {
            Some(-1)
        } else {
            None
        }
    }

    pub fn is_rational(&self) -> bool {
        self.values.iter().all(|v| v.is_rational())
    }

    pub fn rational_values(&self) -> Option<Vec<Rational>> {
        self.values.iter().map(|v| v.as_rational()).collect()
    }

    pub fn add(&self, o: &TorsionFunction) -> Result<TorsionFunction> {
        if self.modulus != o.modulus || self.arity != o.arity {
            return Err(Error::ArityMismatch(self.arity, o.arity));
        }
        Ok(TorsionFunction {
            modulus: self.modulus,
            arity: self.arity,
            values: self.values.iter().zip(o.values.iter()).map(|(a, b)| a.add(b)).collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> TorsionFunction {
        TorsionFunction {
            modulus: self.modulus,
            arity: self.arity,
            values: self.values.iter().map(|v| v.scale(c)).collect(),
        }
    }

    pub fn scale_cyc(&self, c: &CycNum) -> TorsionFunction {
        TorsionFunction {
            modulus: self.modulus,
            arity: self.arity,
            values: self.values.iter().map(|v| v.mul(c)).collect(),
        }
    }

    pub fn neg(&self) -> TorsionFunction {
        self.scale(&Rational::from(-1))
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// The finite Fourier transform. Arity 1:
    /// phi_hat(k) = sum_a phi(a) e^{-2 pi i k a / N}; arity 2:
    /// phi_hat(mu, eta) = sum_{m,n} phi(m, n) e^{(2 pi i/N)(mu n - eta m)}.
    pub fn ft(&self) -> TorsionFunction {
        let n = self.modulus;
        let mut out = TorsionFunction::zero(n, self.arity);
        match self.arity {
            1 => {
                for k in 0..n {
                    let mut acc = CycNum::zero();
                    for a in 0..n {
                        let v = self.get1(a);
                        if v.is_zero() {
                            continue;
                        }
                        acc = acc.add(&v.mul(&CycNum::zeta(n, -(k * a))));
                    }
                    out.set1(k, acc);
                }
            }
            _ => {
                for mu in 0..n {
                    for eta in 0..n {
                        let mut acc = CycNum::zero();
                        for m in 0..n {
                            for nn in 0..n {
                                let v = self.get2(m, nn);
                                if v.is_zero() {
                                    continue;
                                }
                                acc = acc.add(&v.mul(&CycNum::zeta(n, mu * nn - eta * m)));
                            }
                        }
                        out.set2(mu, eta, acc);
                    }
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "N": self.modulus,
            "arity": self.arity,
            "values": self.values.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            "degree_zero": self.is_degree_zero(),
            "vanishes_at_zero": self.vanishes_at_zero(),
            "parity": self.parity(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<TorsionFunction> {
        let n = v["N"].as_i64().ok_or_else(|| Error::Parse("missing N".into()))?;
        let arity = v["arity"].as_u64().unwrap_or(1) as usize;
        let vals = v["values"]
            .as_array()
            .ok_or_else(|| Error::Parse("missing values".into()))?
            .iter()
            .map(|x| -> Result<Rational> {
                if let Some(s) = x.as_str() {
                    s.parse().map_err(|_| Error::Parse(format!("bad rational {}", s)))
                } else if let Some(i) = x.as_i64() {
                    Ok(Rational::from(i))
                } else {
                    Err(Error::Parse("value must be string or integer".into()))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rationals(n, arity, &vals)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ft_example_58() {
        // N=4, phi=(0,1,0,-1): the displayed kernel gives (0,-2i,0,2i)
        let phi = TorsionFunction::from_i64s(4, 1, &[0, 1, 0, -1]).unwrap();
        let hat = phi.ft();
        let two_i = CycNum::zeta(4, 1).scale(&Rational::from(2));
        assert!(hat.get1(0).is_zero());
        assert_eq!(*hat.get1(1), two_i.neg());
        assert!(hat.get1(2).is_zero());
        assert_eq!(*hat.get1(3), two_i);
    }

    #[test]
    fn ft_delta_is_ones() {
        let mut phi = TorsionFunction::zero(5, 1);
        phi.set1(0, CycNum::one());
        let hat = phi.ft();
        for k in 0..5 {
            assert_eq!(*hat.get1(k), CycNum::one());
        }
    }

    #[test]
    fn ft_inversion_arity1() {
        // ft(ft(phi))(a) = N phi(-a)
        let phi = TorsionFunction::from_i64s(6, 1, &[3, -1, 4, 1, -5, 9]).unwrap();
        let hh = phi.ft().ft();
        for a in 0..6 {
            assert_eq!(*hh.get1(a), phi.get1(-a).scale(&Rational::from(6)));
        }
    }

    #[test]
    fn ft_inversion_arity2() {
        // the symplectic arity-2 kernel squares to N^2 times the identity
        let n = 4i64;
        let vals: Vec<i64> = (0..16).map(|i| (i * i + 3) % 11 - 5).collect();
        let phi = TorsionFunction::from_i64s(n, 2, &vals).unwrap();
        let hh = phi.ft().ft();
        for m in 0..n {
            for nn in 0..n {
                assert_eq!(*hh.get2(m, nn), phi.get2(m, nn).scale(&Rational::from(n * n)));
            }
        }
    }

    #[test]
    fn degree_zero_maps_to_vanishing_at_zero() {
        let phi = TorsionFunction::from_i64s(5, 1, &[-10, 1, 2, 3, 4]).unwrap();
        assert!(phi.is_degree_zero());
        let hat = phi.ft();
        assert!(hat.vanishes_at_zero());
        // and conversely
        let psi = TorsionFunction::from_i64s(5, 1, &[0, 1, 7, -2, 3]).unwrap();
        assert!(psi.vanishes_at_zero());
        let psihat = psi.ft();
        assert!(psihat.is_degree_zero());
    }

    #[test]
    fn parity_flags() {
        let even = TorsionFunction::from_i64s(4, 1, &[2, 1, 5, 1]).unwrap();
        assert_eq!(even.parity(), Some(1));
        let odd = TorsionFunction::from_i64s(4, 1, &[0, 3, 0, -3]).unwrap();
        assert_eq!(odd.parity(), Some(-1));
        let neither = TorsionFunction::from_i64s(4, 1, &[0, 3, 1, 2]).unwrap();
        assert_eq!(neither.parity(), None);
    }

    #[test]
    fn json_roundtrip() {
        let phi = TorsionFunction::from_i64s(3, 2, &[1, -2, 1, 0, 4, -4, 0, 0, 0]).unwrap();
        let j = phi.to_json();
        let back = TorsionFunction::from_json(&j).unwrap();
        assert_eq!(phi, back);
    }
}
