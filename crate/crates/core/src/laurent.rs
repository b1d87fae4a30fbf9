//! Laurent polynomials with cyclotomic coefficients, and the text
//! grammar used by the CLI.
//!
//! Grammar: terms separated by `+`/`-`; a term is a `*`-product of
//! factors; a factor is a variable power `x^k` (k possibly negative), a
//! rational `p/q`, `zeta(M)^k`, or a parenthesized sum, with an optional
//! integer power. Parenthesized powers are expanded on parse, so
//! `(x-1)^2*(y-1)^2*x^-1*y^-1` is accepted.

use crate::cyclotomic::CycNum;
use crate::error::Error;
use crate::Result;
use rug::Rational;
use std::collections::BTreeMap;
use std::fmt;

/// A Laurent polynomial: finitely supported map from integer exponent
/// vectors to nonzero cyclotomic coefficients.
#[derive(Clone, PartialEq)]
pub struct Laurent {
    pub nvars: usize,
    pub terms: BTreeMap<Vec<i64>, CycNum>,
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({} vars, {} terms)", self.nvars, self.terms.len())
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = ["x", "y", "z", "w"];
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", c)?;
            for (i, k) in e.iter().enumerate() {
                if *k != 0 {
                    let nm = if self.nvars <= 4 { names[i].to_string() } else { format!("x{}", i + 1) };
                    write!(f, "*{}^{}", nm, k)?;
                }
            }
        }
        Ok(())
    }
}

impl Laurent {
    pub fn zero(nvars: usize) -> Self {
        Laurent { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: CycNum) -> Self {
        let mut l = Self::zero(nvars);
        if !c.is_zero() {
            l.terms.insert(vec![0; nvars], c);
        }
        l
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, CycNum::one())
    }

    /// Single monomial c * x^e.
    pub fn monomial(nvars: usize, e: Vec<i64>, c: CycNum) -> Self {
        assert_eq!(e.len(), nvars);
        let mut l = Self::zero(nvars);
        if !c.is_zero() {
            l.terms.insert(e, c);
        }
        l
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_assign_term(&mut self, e: Vec<i64>, c: &CycNum) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = v.add(c);
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    pub fn add(&self, o: &Laurent) -> Result<Laurent> {
        if self.nvars != o.nvars {
            return Err(Error::VariableCountMismatch(self.nvars, o.nvars));
        }
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_assign_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Laurent {
        Laurent {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, o: &Laurent) -> Result<Laurent> {
        self.add(&o.neg())
    }

    /// Exact convolution product.
    pub fn mul(&self, o: &Laurent) -> Result<Laurent> {
        if self.nvars != o.nvars {
            return Err(Error::VariableCountMismatch(self.nvars, o.nvars));
        }
        let mut out = Laurent::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e: Vec<i64> = ea.iter().zip(eb.iter()).map(|(a, b)| a + b).collect();
                out.add_assign_term(e, &ca.mul(cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &CycNum) -> Laurent {
        if c.is_zero() {
            return Laurent::zero(self.nvars);
        }
        Laurent {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v.mul(c))).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Result<Laurent> {
        let mut acc = Laurent::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            k >>= 1;
        }
        Ok(acc)
    }

    /// Coefficient at exponent zero (the "constant term").
    pub fn constant_term(&self) -> CycNum {
        self.terms.get(&vec![0; self.nvars]).cloned().unwrap_or_else(CycNum::zero)
    }

    /// The set of exponent vectors.
    pub fn support(&self) -> Vec<Vec<i64>> {
        self.terms.keys().cloned().collect()
    }

    /// Rewrites the polynomial in new coordinates: exponent e becomes the
    /// coordinate vector of (e - origin) with respect to `basis`.
    /// Every support point must lie in origin + span(basis) with
    /// integral coordinates.
    pub fn change_lattice_coords(&self, origin: &[i64], basis: &[Vec<i64>]) -> Result<Laurent> {
        let k = basis.len();
        let mut out = Laurent::zero(k);
        for (e, c) in &self.terms {
            let diff: Vec<i64> = e.iter().zip(origin.iter()).map(|(a, b)| a - b).collect();
            let coords = solve_integer_combination(basis, &diff)
                .ok_or(Error::FaceNotOfNewtonPolytope)?;
            out.add_assign_term(coords, c);
        }
        Ok(out)
    }

    /// For one-variable Laurent polynomials: shift by the minimal
    /// exponent so the result is an ordinary polynomial, returned as a
    /// dense coefficient vector (low to high).
    pub fn univariate_coeffs(&self) -> Result<Vec<CycNum>> {
        if self.nvars != 1 {
            return Err(Error::InvalidArgument(format!(
                "univariate_coeffs on {}-variable polynomial",
                self.nvars
            )));
        }
        if self.terms.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        let lo = self.terms.keys().map(|e| e[0]).min().unwrap();
        let hi = self.terms.keys().map(|e| e[0]).max().unwrap();
        let mut v = vec![CycNum::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            v[(e[0] - lo) as usize] = c.clone();
        }
        Ok(v)
    }
}

/// Solves sum_i c_i basis_i = target over the integers, if possible.
pub fn solve_integer_combination(basis: &[Vec<i64>], target: &[i64]) -> Option<Vec<i64>> {
    let k = basis.len();
    let n = target.len();
    let mut m: Vec<Vec<Rational>> = (0..n)
        .map(|r| {
            let mut row: Vec<Rational> = (0..k).map(|c| Rational::from(basis[c][r])).collect();
            row.push(Rational::from(target[r]));
            row
        })
        .collect();
    let mut pivots = vec![];
    let mut r0 = 0;
    for c in 0..k {
        let mut pr = None;
        for (r, row) in m.iter().enumerate().take(n).skip(r0) {
            if row[c] != 0 {
                pr = Some(r);
                break;
            }
        }
        let Some(pr) = pr else { continue };
        m.swap(r0, pr);
        let inv = Rational::from(m[r0][c].clone().recip());
        for cc in c..=k {
            let t = Rational::from(&m[r0][cc] * &inv);
            m[r0][cc] = t;
        }
        for r in 0..n {
            if r != r0 && m[r][c] != 0 {
                let f = m[r][c].clone();
                for cc in c..=k {
                    let t = Rational::from(&m[r0][cc] * &f);
                    m[r][cc] -= t;
                }
            }
        }
        pivots.push((r0, c));
        r0 += 1;
        if r0 == n {
            break;
        }
    }
    for row in m.iter().take(n).skip(r0) {
        if row[k] != 0 {
            return None;
        }
    }
    let mut sol = vec![Rational::new(); k];
    for (r, c) in &pivots {
        sol[*c] = m[*r][k].clone();
    }
    let mut out = vec![0i64; k];
    for (i, s) in sol.iter().enumerate() {
        if !s.is_integer() {
            return None;
        }
        out[i] = s.numer().to_i64()?;
    }
    Some(out)
}

// ---------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, nvars: usize) -> Self {
        Parser { src: src.as_bytes(), pos: 0, nvars }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && (self.src[self.pos] as char).is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src.get(self.pos).map(|&b| b as char)
    }

    fn bump(&mut self) -> Option<char> {
        self.skip_ws();
        let c = self.src.get(self.pos).map(|&b| b as char);
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.bump() {
            Some(x) if x == c => Ok(()),
            other => Err(Error::Parse(format!("expected '{}', found {:?}", c, other))),
        }
    }

    fn parse_integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let mut sign = 1i64;
        if self.peek() == Some('-') {
            self.bump();
            sign = -1;
        } else if self.peek() == Some('+') {
            self.bump();
        }
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos] as char).is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(Error::Parse("expected integer".into()));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        s.parse::<i64>().map(|v| sign * v).map_err(|e| Error::Parse(format!("bad integer: {}", e)))
    }

    fn parse_expr(&mut self) -> Result<Laurent> {
        let mut acc;
        match self.peek() {
            Some('-') => {
                self.bump();
                acc = self.parse_term()?.neg();
            }
            Some('+') => {
                self.bump();
                acc = self.parse_term()?;
            }
            _ => acc = self.parse_term()?,
        }
        loop {
            match self.peek() {
                Some('+') => {
                    self.bump();
                    let t = self.parse_term()?;
                    acc = acc.add(&t)?;
                }
                Some('-') => {
                    self.bump();
                    let t = self.parse_term()?;
                    acc = acc.sub(&t)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_term(&mut self) -> Result<Laurent> {
        let mut acc = self.parse_factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.bump();
                    let f = self.parse_factor()?;
                    acc = acc.mul(&f)?;
                }
                Some('/') => {
                    self.bump();
                    let f = self.parse_factor()?;
                    if f.terms.len() != 1 {
                        return Err(Error::Parse(
                            "division by a non-monomial is not a Laurent polynomial".into(),
                        ));
                    }
                    let (e, c) = f.terms.iter().next().unwrap();
                    let einv: Vec<i64> = e.iter().map(|x| -x).collect();
                    let inv = Laurent::monomial(self.nvars, einv, c.inv());
                    acc = acc.mul(&inv)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_factor(&mut self) -> Result<Laurent> {
        let atom = self.parse_atom()?;
        if self.peek() == Some('^') {
            self.bump();
            let k = self.parse_integer()?;
            if k >= 0 {
                atom.pow(k as u32)
            } else {
                if atom.terms.len() != 1 {
                    return Err(Error::Parse(
                        "negative power of a non-monomial is not a Laurent polynomial".into(),
                    ));
                }
                let (e, c) = atom.terms.iter().next().unwrap();
                let einv: Vec<i64> = e.iter().map(|x| -x).collect();
                let base = Laurent::monomial(self.nvars, einv, c.inv());
                base.pow((-k) as u32)
            }
        } else {
            Ok(atom)
        }
    }

    fn parse_atom(&mut self) -> Result<Laurent> {
        match self.peek() {
            Some('(') => {
                self.bump();
                let e = self.parse_expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.parse_integer()?;
                // rational p/q only when the next factor is a digit
                let save = self.pos;
                if self.peek() == Some('/') {
                    self.bump();
                    if self.peek().map(|c| c.is_ascii_digit()).unwrap_or(false) {
                        let den = self.parse_integer()?;
                        if den == 0 {
                            return Err(Error::Parse("zero denominator".into()));
                        }
                        return Ok(Laurent::constant(
                            self.nvars,
                            CycNum::from_rational(Rational::from((num, den))),
                        ));
                    }
                    self.pos = save;
                }
                Ok(Laurent::constant(self.nvars, CycNum::from_i64(num)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                self.skip_ws();
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos] as char).is_ascii_alphanumeric()
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_string();
                if name == "zeta" {
                    self.expect('(')?;
                    let m = self.parse_integer()?;
                    if m < 1 {
                        return Err(Error::Parse("zeta order must be >= 1".into()));
                    }
                    self.expect(')')?;
                    return Ok(Laurent::constant(self.nvars, CycNum::zeta(m, 1)));
                }
                let idx = match name.as_str() {
                    "x" | "x1" => 0usize,
                    "y" | "x2" => 1,
                    "z" | "x3" => 2,
                    "w" | "x4" => 3,
                    _ => return Err(Error::Parse(format!("unknown variable '{}'", name))),
                };
                if idx >= self.nvars {
                    return Err(Error::Parse(format!(
                        "variable '{}' out of range for {} variables",
                        name, self.nvars
                    )));
                }
                let mut e = vec![0i64; self.nvars];
                e[idx] = 1;
                Ok(Laurent::monomial(self.nvars, e, CycNum::one()))
            }
            other => Err(Error::Parse(format!("unexpected token {:?}", other))),
        }
    }
}

/// Determines the variable count from the variables appearing in the
/// source text (x..w, x1..x4), then parses.
pub fn parse_laurent(src: &str) -> Result<Laurent> {
    let stripped = src.replace("zeta", "");
    let mut nvars = 0usize;
    for (name, idx) in [("w", 4usize), ("x4", 4), ("z", 3), ("x3", 3), ("y", 2), ("x2", 2), ("x", 1)] {
        if stripped.contains(name) && nvars < idx {
            nvars = idx;
        }
    }
    if nvars == 0 {
        nvars = 1;
    }
    parse_laurent_with_vars(src, nvars)
}

pub fn parse_laurent_with_vars(src: &str, nvars: usize) -> Result<Laurent> {
    let mut p = Parser::new(src, nvars);
    let e = p.parse_expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(Error::Parse(format!("trailing input at byte {}", p.pos)));
    }
    Ok(e)
}

// ---------------------------------------------------------------------
// JSON serialization
// ---------------------------------------------------------------------

impl Laurent {
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(e, c)| {
                serde_json::json!({
                    "e": e,
                    "c": {
                        "M": c.order,
                        "num": c.coeffs.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
                    }
                })
            })
            .collect();
        serde_json::json!({ "n": self.nvars, "terms": terms })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Laurent> {
        let n = v["n"].as_u64().ok_or_else(|| Error::Parse("missing n".into()))? as usize;
        let mut out = Laurent::zero(n);
        let terms = v["terms"].as_array().ok_or_else(|| Error::Parse("missing terms".into()))?;
        for t in terms {
            let e: Vec<i64> = t["e"]
                .as_array()
                .ok_or_else(|| Error::Parse("missing e".into()))?
                .iter()
                .map(|x| x.as_i64().unwrap_or(0))
                .collect();
            if e.len() != n {
                return Err(Error::Parse("exponent length mismatch".into()));
            }
            let m = t["c"]["M"].as_i64().unwrap_or(1);
            let nums = t["c"]["num"].as_array().ok_or_else(|| Error::Parse("missing num".into()))?;
            let mut coeffs = vec![];
            for s in nums {
                let qs = s.as_str().ok_or_else(|| Error::Parse("coeff not a string".into()))?;
                let q: Rational =
                    qs.parse().map_err(|_| Error::Parse(format!("bad rational {}", qs)))?;
                coeffs.push(q);
            }
            let phi = crate::cyclotomic::euler_phi(m) as usize;
            coeffs.resize(phi, Rational::new());
            let c = CycNum { order: m, coeffs };
            out.add_assign_term(e, &c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_d5_box() {
        let phi = parse_laurent("(x-1)^2*(y-1)^2*x^-1*y^-1").unwrap();
        assert_eq!(phi.nvars, 2);
        assert_eq!(phi.terms.len(), 9);
        assert_eq!(phi.constant_term(), CycNum::from_i64(4));
    }

    #[test]
    fn parse_triangle() {
        let phi = parse_laurent("x+y+x^-1*y^-1").unwrap();
        assert_eq!(phi.terms.len(), 3);
        assert_eq!(phi.constant_term(), CycNum::zero());
    }

    #[test]
    fn parse_division_sugar() {
        let a = parse_laurent("(1-1/x)*(1-1/y)").unwrap();
        let b = parse_laurent("(x-1)*(y-1)*x^-1*y^-1").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn laurent_mul_identity() {
        let f = parse_laurent("(x-1)^2*(y-1)^2*x^-1*y^-1").unwrap();
        let one = Laurent::one(2);
        assert_eq!(f.mul(&one).unwrap(), f);
    }

    #[test]
    fn laurent_mul_difference_of_squares() {
        let a = parse_laurent_with_vars("x + x^-1", 1).unwrap();
        let b = parse_laurent_with_vars("x - x^-1", 1).unwrap();
        let c = a.mul(&b).unwrap();
        let expect = parse_laurent_with_vars("x^2 - x^-2", 1).unwrap();
        assert_eq!(c, expect);
    }

    #[test]
    fn parse_zeta_coefficient() {
        let f = parse_laurent_with_vars("zeta(3)*x + zeta(3)^2*x^-1", 1).unwrap();
        assert_eq!(f.terms.len(), 2);
        let cubed = f.pow(3).unwrap();
        assert_eq!(cubed.terms[&vec![3]], CycNum::one().promote(3));
    }

    #[test]
    fn json_roundtrip() {
        let f = parse_laurent("(x-1)^2*(y-1)^2*x^-1*y^-1").unwrap();
        let j = f.to_json();
        let g = Laurent::from_json(&j).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn constant_term_of_powers() {
        let f = parse_laurent("x+y+x^-1*y^-1").unwrap();
        let c = f.pow(3).unwrap().constant_term();
        assert_eq!(c, CycNum::from_i64(6));
    }

    #[test]
    fn variable_mismatch_error() {
        let a = parse_laurent_with_vars("x+1", 1).unwrap();
        let b = parse_laurent_with_vars("x+y", 2).unwrap();
        assert!(matches!(a.mul(&b), Err(Error::VariableCountMismatch(1, 2))));
    }
}
