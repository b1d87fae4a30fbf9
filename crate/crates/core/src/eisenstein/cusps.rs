//! Cusps of Gamma(N): classes of order-N vectors (-s, r) in (Z/N)^2
//! modulo +-1, with canonical representatives and integral companion
//! matrices [[p, q], [-s, r]] of determinant one.

use crate::cyclotomic::gcd_i64;
use crate::error::Error;
use crate::Result;

/// A cusp [r/s] of Gamma(N) with its chosen representative and
/// companion matrix. The integers r, s, p, q satisfy p r + q s = 1 and
/// reduce to the canonical class representative mod N.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cusp {
    pub level: i64,
    pub r: i64,
    pub s: i64,
    pub p: i64,
    pub q: i64,
}

impl std::fmt::Display for Cusp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.s.rem_euclid(self.level) == 0 {
            write!(f, "[i-inf{}]", if self.r.rem_euclid(self.level) == 1 { "" } else { "*" })?;
            if self.r.rem_euclid(self.level) != 1 {
                write!(f, "(r={})", self.r.rem_euclid(self.level))?;
            }
            Ok(())
        } else {
            write!(f, "[{}/{}]", self.r.rem_euclid(self.level), self.s.rem_euclid(self.level))
        }
    }
}

impl Cusp {
    /// Canonical key "r/s" with the class representative reduced mod N.
    pub fn key(&self) -> String {
        format!("{}/{}", self.r.rem_euclid(self.level), self.s.rem_euclid(self.level))
    }

    /// Is this the cusp of the class of (r, s) mod N (up to +-)?
    pub fn matches(&self, r: i64, s: i64) -> bool {
        let n = self.level;
        let a = (self.r.rem_euclid(n), self.s.rem_euclid(n));
        let b1 = (r.rem_euclid(n), s.rem_euclid(n));
        let b2 = ((-r).rem_euclid(n), (-s).rem_euclid(n));
        a == b1 || a == b2
    }

    pub fn is_infinity(&self) -> bool {
        self.matches(1, 0)
    }
}

/// Builds the cusp for the class of (r, s) mod N: canonicalizes the
/// representative (0 <= s <= N/2, tie-break smallest r >= 0), lifts to
/// integers with gcd(r, s) = 1, and completes to an SL2(Z) matrix with
/// minimal |q|.
pub fn cusp_for(level: i64, r: i64, s: i64) -> Result<Cusp> {
    let n = level;
    if n < 3 {
        return Err(Error::InvalidArgument("cusp level must be >= 3".into()));
    }
    let rr = r.rem_euclid(n);
    let ss = s.rem_euclid(n);
    if gcd_i64(gcd_i64(rr, ss), n) != 1 {
        return Err(Error::InvalidArgument(format!(
            "({}, {}) does not generate Z/{}",
            -ss, rr, n
        )));
    }
    // canonical representative among (r, s) and (-r, -s)
    let cand1 = (rr, ss);
    let cand2 = ((-rr).rem_euclid(n), (-ss).rem_euclid(n));
    let hm = n / 2;
    let pick = |a: (i64, i64), b: (i64, i64)| -> (i64, i64) {
        let a_ok = a.1 <= hm;
        let b_ok = b.1 <= hm;
        match (a_ok, b_ok) {
            (true, false) => a,
            (false, true) => b,
            _ => {
                if a.1 != b.1 {
                    if a.1 < b.1 {
                        a
                    } else {
                        b
                    }
                } else if a.0 <= b.0 {
                    a
                } else {
                    b
                }
            }
        }
    };
    let (cr, cs) = pick(cand1, cand2);
    // integral lift with gcd(r, s) = 1
    let mut lift: Option<(i64, i64)> = None;
    'search: for di in 0..=4i64 {
        for dj in 0..=4i64 {
            for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let rl = cr + si * di * n;
                let sl = cs + sj * dj * n;
                if gcd_i64(rl, sl) == 1 {
                    lift = Some((rl, sl));
                    break 'search;
                }
            }
        }
    }
    let (rl, sl) =
        lift.ok_or_else(|| Error::Numeric("no coprime lift found for cusp".into()))?;
    // p r + q s = 1 by extended gcd; (p, q) -> (p + k s, q - k r)
    // preserves the identity, so minimize |q| over k when r != 0
    let (mut p, mut q) = ext_gcd_pair(rl, sl)?;
    if rl != 0 {
        let k = (q as f64 / rl as f64).round() as i64;
        q -= k * rl;
        p += k * sl;
    }
    assert_eq!(p * rl + q * sl, 1);
    Ok(Cusp { level: n, r: rl, s: sl, p, q })
}

/// Returns (p, q) with p*r + q*s = 1.
fn ext_gcd_pair(r: i64, s: i64) -> Result<(i64, i64)> {
    // extended euclid on (r, s)
    let (mut old_r, mut rr) = (r, s);
    let (mut old_x, mut x) = (1i64, 0i64);
    let (mut old_y, mut y) = (0i64, 1i64);
    while rr != 0 {
        let qq = old_r.div_euclid(rr);
        let t = old_r - qq * rr;
        old_r = rr;
        rr = t;
        let t = old_x - qq * x;
        old_x = x;
        x = t;
        let t = old_y - qq * y;
        old_y = y;
        y = t;
    }
    if old_r == 1 {
        Ok((old_x, old_y))
    } else if old_r == -1 {
        Ok((-old_x, -old_y))
    } else {
        Err(Error::Numeric(format!("gcd({}, {}) != 1", r, s)))
    }
}

/// The number of cusps kappa(N) = (N^2/2) prod_{p | N} (1 - 1/p^2).
pub fn cusp_count(n: i64) -> i64 {
    let mut num = n * n;
    let mut den = 2i64;
    let mut m = n;
    let mut p = 2i64;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            num *= p * p - 1;
            den *= p * p;
        }
        p += 1;
    }
    if m > 1 {
        num *= m * m - 1;
        den *= m * m;
    }
    num / den
}

/// Enumerates all cusps of Gamma(N) with canonical representatives,
/// sorted by (s, r).
pub fn cusps(n: i64) -> Result<Vec<Cusp>> {
    if n < 3 {
        return Err(Error::InvalidArgument("cusp level must be >= 3".into()));
    }
    let mut out: Vec<Cusp> = vec![];
    for s in 0..=n / 2 {
        for r in 0..n {
            if gcd_i64(gcd_i64(r, s), n) != 1 {
                continue;
            }
            let c = cusp_for(n, r, s)?;
            // keep only when (r, s) is the canonical representative
            if c.r.rem_euclid(n) == r && c.s.rem_euclid(n) == s && !out.iter().any(|o| o == &c) {
                out.push(c);
            }
        }
    }
    out.sort_by_key(|c| (c.s.rem_euclid(n), c.r.rem_euclid(n)));
    Ok(out)
}

/// The cusp at infinity [1/0].
pub fn cusp_infinity(n: i64) -> Cusp {
    cusp_for(n, 1, 0).expect("infinity cusp")
}

/// The cusp [0/1].
pub fn cusp_zero(n: i64) -> Cusp {
    cusp_for(n, 0, 1).expect("zero cusp")
}
