//! Bernoulli numbers and polynomials, exact.

use once_cell::sync::Lazy;
use rug::Rational;
use std::sync::Mutex;

static BERNOULLI_CACHE: Lazy<Mutex<Vec<Rational>>> =
    Lazy::new(|| Mutex::new(vec![Rational::from(1)]));

/// The k-th Bernoulli number (B_1 = -1/2 convention).
pub fn bernoulli_number(k: usize) -> Rational {
    let mut cache = BERNOULLI_CACHE.lock().unwrap();
    while cache.len() <= k {
        // B_m = -1/(m+1) sum_{j<m} C(m+1, j) B_j
        let m = cache.len();
        let mut s = Rational::new();
        let mut c = Rational::from(1); // C(m+1, j) built incrementally
        for (j, bj) in cache.iter().enumerate().take(m) {
            if j > 0 {
                c *= Rational::from(((m + 2 - j) as i64, j as i64));
            }
            s += Rational::from(&c * bj);
        }
        let b = Rational::from(-s / Rational::from((m + 1) as i64));
        cache.push(b);
    }
    cache[k].clone()
}

/// B_k(x) = sum_j C(k, j) B_j x^{k-j}.
pub fn bernoulli_poly(k: usize, x: &Rational) -> Rational {
    let mut acc = Rational::new();
    let mut binom = Rational::from(1);
    for j in 0..=k {
        if j > 0 {
            binom *= Rational::from(((k + 1 - j) as i64, j as i64));
        }
        let bj = bernoulli_number(j);
        if bj != 0 {
            // x^{k-j}
            let mut xp = Rational::from(1);
            for _ in 0..(k - j) {
                xp *= x;
            }
            acc += Rational::from(&binom * &bj) * xp;
        }
    }
    acc
}
