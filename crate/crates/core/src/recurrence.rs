//! Linear-recurrence fitting for holonomic sequences and the resulting
//! Picard-Fuchs operators in the logarithmic derivative delta = t d/dt.

use crate::error::Error;
use crate::num::RBall;
use crate::Result;
use rug::{Integer, Rational};
use std::fmt;

/// Dense univariate polynomial over Q, low-to-high coefficients with no
/// trailing zeros (zero polynomial = empty vector).
#[derive(Clone, PartialEq, Eq)]
pub struct QPoly {
    pub coeffs: Vec<Rational>,
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly{:?}", self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>())
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if k == 0 {
                write!(f, "{}", c)?;
            } else {
                write!(f, "{}*t^{}", c, k)?;
            }
        }
        Ok(())
    }
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: vec![] }
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = QPoly { coeffs: vec![c] };
        p.trim();
        p
    }

    pub fn from_coeffs(v: Vec<Rational>) -> Self {
        let mut p = QPoly { coeffs: v };
        p.trim();
        p
    }

    pub fn from_i64s(v: &[i64]) -> Self {
        Self::from_coeffs(v.iter().map(|&x| Rational::from(x)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().map(|c| *c == 0).unwrap_or(false) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        if self.coeffs.is_empty() {
            0
        } else {
            self.coeffs.len() - 1
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::new();
        for c in self.coeffs.iter().rev() {
            acc = Rational::from(&acc * x) + c;
        }
        acc
    }

    pub fn eval_i64(&self, x: i64) -> Rational {
        self.eval(&Rational::from(x))
    }

    pub fn eval_ball(&self, x: &RBall) -> RBall {
        let prec = x.prec();
        let mut acc = RBall::zero(prec);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&RBall::from_rational(prec, c));
        }
        acc
    }

    pub fn add(&self, o: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut v = vec![Rational::new(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i] += c;
        }
        for (i, c) in o.coeffs.iter().enumerate() {
            v[i] += c;
        }
        QPoly::from_coeffs(v)
    }

    pub fn sub(&self, o: &QPoly) -> QPoly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> QPoly {
        QPoly { coeffs: self.coeffs.iter().map(|c| Rational::from(-c)).collect() }
    }

    pub fn mul(&self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly::zero();
        }
        let mut v = vec![Rational::new(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += Rational::from(a * b);
            }
        }
        QPoly::from_coeffs(v)
    }

    pub fn scale(&self, c: &Rational) -> QPoly {
        QPoly::from_coeffs(self.coeffs.iter().map(|x| Rational::from(x * c)).collect())
    }

    /// Shifts the argument: p(x) -> p(x + a).
    pub fn shift_arg(&self, a: &Rational) -> QPoly {
        // Horner in (x + a)
        let mut acc = QPoly::zero();
        let xa = QPoly::from_coeffs(vec![a.clone(), Rational::from(1)]);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&xa).add(&QPoly::constant(c.clone()));
        }
        acc
    }

    pub fn derivative(&self) -> QPoly {
        if self.coeffs.len() <= 1 {
            return QPoly::zero();
        }
        QPoly::from_coeffs(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| Rational::from(c * Rational::from(i as i64 + 1)))
                .collect(),
        )
    }

    pub fn divmod(&self, o: &QPoly) -> (QPoly, QPoly) {
        assert!(!o.is_zero());
        let mut r = self.clone();
        let db = o.degree();
        let lead = o.coeffs[db].clone();
        let mut q = vec![Rational::new(); self.coeffs.len().saturating_sub(db)];
        while !r.is_zero() && r.degree() >= db && r.coeffs.len() >= o.coeffs.len() {
            let dr = r.degree();
            let c = Rational::from(&r.coeffs[dr] / &lead);
            q[dr - db] = c.clone();
            for k in 0..=db {
                let t = Rational::from(&o.coeffs[k] * &c);
                r.coeffs[dr - db + k] -= t;
            }
            r.trim();
        }
        (QPoly::from_coeffs(q), r)
    }

    pub fn gcd(&self, o: &QPoly) -> QPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let (_, r) = a.divmod(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        // monic normalization
        let lead = a.coeffs[a.degree()].clone();
        a.scale(&Rational::from(lead.recip_ref()))
    }

    /// Squarefree part: self / gcd(self, self').
    pub fn squarefree_part(&self) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == 0 {
            return self.clone();
        }
        self.divmod(&g).0
    }

    /// Clears denominators and content: primitive integer multiple.
    pub fn primitive_integer(&self) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let mut den = Integer::from(1);
        for c in &self.coeffs {
            den.lcm_mut(&c.denom().clone());
        }
        let ints: Vec<Integer> = self
            .coeffs
            .iter()
            .map(|c| Rational::from(c * Rational::from(&den)).numer().clone())
            .collect();
        let mut g = Integer::new();
        for c in &ints {
            g.gcd_mut(c);
        }
        if g == 0 {
            return QPoly::zero();
        }
        QPoly::from_coeffs(ints.iter().map(|c| Rational::from(Integer::from(c / &g))).collect())
    }
}

/// A rational function num/den in t.
#[derive(Clone, Debug, PartialEq)]
pub struct QRatFunc {
    pub num: QPoly,
    pub den: QPoly,
}

impl fmt::Display for QRatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

impl QRatFunc {
    pub fn new(num: QPoly, den: QPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let g = num.gcd(&den);
        if g.degree() > 0 {
            let n = num.divmod(&g).0;
            let d = den.divmod(&g).0;
            return QRatFunc { num: n, den: d };
        }
        QRatFunc { num, den }
    }
}

/// A Picard-Fuchs operator delta^r + sum_{k<r} g_k(t) delta^k, stored
/// both in shift form (the recurrence) and in cleared delta form
/// sum_j q_j(t) delta^j with polynomial coefficients.
#[derive(Clone, Debug)]
pub struct PFOperator {
    /// Shift-form coefficients p_0..p_s of sum_k p_k(m) a_{m+k} = 0.
    pub shift: Vec<QPoly>,
    /// Cleared delta-form coefficients q_0..q_r of sum_j q_j(t) delta^j.
    pub delta: Vec<QPoly>,
    /// Number of sequence terms on which the relation was verified.
    pub verified_depth: usize,
}

impl PFOperator {
    /// The delta-order r.
    pub fn order(&self) -> usize {
        self.delta.len() - 1
    }

    /// Monic coefficients g_k = q_k / q_r, k = 0..r-1.
    pub fn monic_coeffs(&self) -> Vec<QRatFunc> {
        let r = self.order();
        (0..r).map(|k| QRatFunc::new(self.delta[k].clone(), self.delta[r].clone())).collect()
    }

    /// Indicial polynomial at t = 0: sum_j q_j(0) lambda^j.
    pub fn indicial_at_zero(&self) -> QPoly {
        QPoly::from_coeffs(
            self.delta
                .iter()
                .map(|q| q.coeffs.first().cloned().unwrap_or_else(Rational::new))
                .collect(),
        )
    }

    /// True if t=0 is a maximally unipotent point: the indicial
    /// polynomial is c * lambda^r.
    pub fn is_mum_at_zero(&self) -> bool {
        let ind = self.indicial_at_zero();
        if ind.is_zero() {
            return false;
        }
        let r = self.order();
        ind.degree() == r && ind.coeffs[..r].iter().all(|c| *c == 0)
    }

    /// Applies the shift-form recurrence to verify a sequence prefix:
    /// sum_k p_k(m) a_{m+k} = 0 for m = -s..len-1-s (a_{<0} = 0).
    pub fn annihilates(&self, a: &[Rational]) -> bool {
        let s = self.shift.len() - 1;
        for m in -(s as i64)..=(a.len() as i64 - 1 - s as i64) {
            let mut acc = Rational::new();
            for (k, p) in self.shift.iter().enumerate() {
                let idx = m + k as i64;
                if idx < 0 {
                    continue;
                }
                acc += Rational::from(p.eval_i64(m) * &a[idx as usize]);
            }
            if acc != 0 {
                return false;
            }
        }
        true
    }

    /// Extends a sequence prefix using the recurrence. The leading
    /// shift coefficient must not vanish at the needed indices.
    pub fn extend_sequence(&self, a: &mut Vec<Rational>, upto: usize) -> Result<()> {
        let s = self.shift.len() - 1;
        while a.len() <= upto {
            let m = a.len() as i64 - s as i64;
            let lead = self.shift[s].eval_i64(m);
            if lead == 0 {
                return Err(Error::Numeric(format!(
                    "leading recurrence coefficient vanishes at m = {}",
                    m
                )));
            }
            let mut acc = Rational::new();
            for (k, p) in self.shift.iter().enumerate().take(s) {
                let idx = m + k as i64;
                if idx < 0 {
                    continue;
                }
                acc += Rational::from(p.eval_i64(m) * &a[idx as usize]);
            }
            a.push(Rational::from(-acc / lead));
        }
        Ok(())
    }
}

/// Finds a linear recurrence sum_{k=0}^{r} p_k(m) a_{m+k} = 0 with
/// polynomial coefficients of degree <= d, valid for all provided terms
/// including 10 guard terms, trying orders r = 1..max_r and degrees
/// d = 0..max_d in increasing total size. Returns `None` if none fits.
pub fn fit_recurrence(a: &[Rational], max_r: usize, max_d: usize) -> Option<PFOperator> {
    let mut shapes: Vec<(usize, usize)> = vec![];
    for r in 1..=max_r {
        for d in 0..=max_d {
            shapes.push((r, d));
        }
    }
    shapes.sort_by_key(|&(r, d)| ((r + 1) * (d + 1), r));
    for (r, d) in shapes {
        if a.len() < (r + 1) * (d + 1) + 10 {
            continue;
        }
        if let Some(op) = try_fit(a, r, d) {
            return Some(op);
        }
    }
    None
}

fn try_fit(a: &[Rational], r: usize, d: usize) -> Option<PFOperator> {
    let unknowns = (r + 1) * (d + 1);
    // rows for m = -r .. len-1-r, with a_{<0} = 0
    let mut rows: Vec<Vec<Rational>> = vec![];
    for m in -(r as i64)..=(a.len() as i64 - 1 - r as i64) {
        let mut row = vec![Rational::new(); unknowns];
        for k in 0..=r {
            let idx = m + k as i64;
            if idx < 0 || idx >= a.len() as i64 {
                continue;
            }
            let av = &a[idx as usize];
            if *av == 0 {
                continue;
            }
            let mut mp = Rational::from(1);
            for j in 0..=d {
                row[k * (d + 1) + j] = Rational::from(av * &mp);
                mp *= Rational::from(m);
            }
        }
        rows.push(row);
    }
    let ns = nullspace(&mut rows, unknowns)?;
    // build polynomials
    let mut shift: Vec<QPoly> = (0..=r)
        .map(|k| QPoly::from_coeffs(ns[k * (d + 1)..(k + 1) * (d + 1)].to_vec()))
        .collect();
    // require a genuine order-r relation
    if shift[r].is_zero() || shift[0].is_zero() {
        return None;
    }
    // clear denominators / content jointly
    let mut den = Integer::from(1);
    for p in &shift {
        for c in &p.coeffs {
            den.lcm_mut(&c.denom().clone());
        }
    }
    let mut gall = Integer::new();
    for p in &shift {
        for c in &p.coeffs {
            let n = Rational::from(c * Rational::from(&den)).numer().clone();
            gall.gcd_mut(&n);
        }
    }
    if gall == 0 {
        return None;
    }
    let factor = Rational::from((den, gall));
    for p in shift.iter_mut() {
        *p = p.scale(&factor);
    }
    // convert to delta form: sum_k t^{r-k} p_k(delta - k)
    let mut delta_coeffs: Vec<QPoly> = vec![];
    for (k, p) in shift.iter().enumerate() {
        let pk = p.shift_arg(&Rational::from(-(k as i64)));
        // contributes pk_j to q_j with t-power (r-k)
        for (j, c) in pk.coeffs.iter().enumerate() {
            if delta_coeffs.len() <= j {
                delta_coeffs.resize(j + 1, QPoly::zero());
            }
            let mut tpow = vec![Rational::new(); r - k + 1];
            tpow[r - k] = c.clone();
            delta_coeffs[j] = delta_coeffs[j].add(&QPoly::from_coeffs(tpow));
        }
    }
    while delta_coeffs.last().map(|p| p.is_zero()).unwrap_or(false) {
        delta_coeffs.pop();
    }
    let op = PFOperator { shift, delta: delta_coeffs, verified_depth: a.len() };
    if !op.annihilates(a) {
        return None;
    }
    Some(op)
}

/// One vector spanning the nullspace of the given row system (if the
/// nullity is at least 1); exact Gaussian elimination.
fn nullspace(rows: &mut Vec<Vec<Rational>>, unknowns: usize) -> Option<Vec<Rational>> {
    let nrows = rows.len();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; unknowns];
    let mut r0 = 0usize;
    for c in 0..unknowns {
        let mut pr = None;
        for r in r0..nrows {
            if rows[r][c] != 0 {
                pr = Some(r);
                break;
            }
        }
        let Some(pr) = pr else { continue };
        rows.swap(r0, pr);
        let inv = Rational::from(rows[r0][c].clone().recip());
        for cc in c..unknowns {
            let t = Rational::from(&rows[r0][cc] * &inv);
            rows[r0][cc] = t;
        }
        for r in 0..nrows {
            if r != r0 && rows[r][c] != 0 {
                let f = rows[r][c].clone();
                for cc in c..unknowns {
                    let t = Rational::from(&rows[r0][cc] * &f);
                    rows[r][cc] -= t;
                }
            }
        }
        pivot_of_col[c] = Some(r0);
        r0 += 1;
        if r0 == nrows {
            break;
        }
    }
    // first free column
    let free = (0..unknowns).find(|&c| pivot_of_col[c].is_none())?;
    let mut v = vec![Rational::new(); unknowns];
    v[free] = Rational::from(1);
    for c in 0..unknowns {
        if let Some(pr) = pivot_of_col[c] {
            v[c] = Rational::from(-&rows[pr][free]);
        }
    }
    Some(v)
}

/// Convenience: binomial coefficient as Rational.
pub fn binomial(n: u64, k: u64) -> Rational {
    if k > n {
        return Rational::new();
    }
    let mut acc = Rational::from(1);
    for i in 0..k {
        acc *= Rational::from((n - i, i + 1));
    }
    acc
}
