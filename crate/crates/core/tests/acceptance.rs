//! The acceptance suite: one test per criterion, each printing a
//! PASS/FAIL line (run with --nocapture to see them). Every tolerance
//! is pinned here.

use rug::{Integer, Rational};
use toric_regulator::cyclotomic::CycNum;
use toric_regulator::eisenstein as eis;
use toric_regulator::laurent::parse_laurent;
use toric_regulator::modular;
use toric_regulator::nt;
use toric_regulator::num::{CBall, RBall};
use toric_regulator::periods;
use toric_regulator::recurrence::{binomial, fit_recurrence};
use toric_regulator::series::{QSeries, Series};

fn report(criterion: &str, pass: bool, detail: &str) {
    println!("[{}] {} - {}", criterion, if pass { "PASS" } else { "FAIL" }, detail);
    assert!(pass, "{}: {}", criterion, detail);
}

fn rat(v: i64) -> Rational {
    Rational::from(v)
}

/// Criterion 1: the first ten exact constant terms of the eight named
/// pencils match their closed forms, with exact equality.
#[test]
fn criterion_01_constant_term_goldens() {
    let t0 = std::time::Instant::now();
    // (name, phi, support stride kappa, closed form at the stride index)
    let fact = |n: u64| -> Rational {
        let mut f = Rational::from(1);
        for i in 1..=n {
            f *= Rational::from(i);
        }
        f
    };
    let cases: Vec<(&str, &str, usize, Box<dyn Fn(u64) -> Rational>)> = vec![
        (
            "d5box",
            "(x-1)^2*(y-1)^2*x^-1*y^-1",
            1,
            Box::new(|m| {
                let b = binomial(2 * m, m);
                Rational::from(&b * &b)
            }),
        ),
        (
            "hesse",
            "x+y+x^-1*y^-1",
            3,
            Box::new(move |m| {
                let mut f = Rational::from(1);
                for i in 1..=(3 * m) {
                    f *= Rational::from(i);
                }
                for _ in 0..3 {
                    for i in 1..=m {
                        f /= Rational::from(i);
                    }
                }
                f
            }),
        ),
        (
            "e7",
            "x*y^-1+x^-1*y^3+x^-1*y^-1",
            4,
            Box::new(move |m| fact(4 * m) / (fact(2 * m) * fact(m) * fact(m))),
        ),
        (
            "e8",
            "x*y^-1+x^-1*y^2+x^-1*y^-1",
            6,
            Box::new(move |m| fact(6 * m) / (fact(3 * m) * fact(2 * m) * fact(m))),
        ),
        (
            "a5",
            "(1-x)*(1-y)*(1-x-y)*x^-1*y^-1",
            1,
            Box::new(|m| {
                let mut s = Rational::new();
                for k in 0..=m {
                    let b = binomial(m, k);
                    s += Rational::from(&b * &b) * binomial(m + k, k);
                }
                s
            }),
        ),
        (
            "apery",
            "(1-1/x)*(1-1/y)*(1-1/z)*(1-x-y+x*y-x*y*z)",
            1,
            Box::new(|m| {
                let mut s = Rational::new();
                for k in 0..=m {
                    let b = Rational::from(binomial(m, k).square_ref());
                    let c = Rational::from(binomial(m + k, k).square_ref());
                    s += b * c;
                }
                s
            }),
        ),
        (
            "fermi",
            "x+1/x+y+1/y+z+1/z",
            2,
            Box::new(|m| {
                // C(2m, m) sum_k C(m,k)^2 C(2k,k)
                let mut s = Rational::new();
                for k in 0..=m {
                    let b = Rational::from(binomial(m, k).square_ref());
                    s += b * binomial(2 * k, k);
                }
                Rational::from(&binomial(2 * m, m) * &s)
            }),
        ),
        (
            "verrill",
            "(1+x+x*y+x*y*z)*(1+z+z*y+z*y*x)/(x*y*z)",
            1,
            Box::new(|m| {
                let mut s = Rational::new();
                for p in 0..=m {
                    for q in 0..=(m - p) {
                        for r in 0..=(m - p - q) {
                            let ss = m - p - q - r;
                            let mut mult = Rational::from(1);
                            let mut i = 1u64;
                            for group in [p, q, r, ss] {
                                for j in 1..=group {
                                    mult *= Rational::from(i) / Rational::from(j);
                                    i += 1;
                                }
                            }
                            s += Rational::from(mult.square_ref());
                        }
                    }
                }
                s
            }),
        ),
    ];
    for (name, phi_src, kappa, closed) in cases {
        let phi = parse_laurent(phi_src).unwrap();
        let a = periods::constant_term_sequence(&phi, 9 * kappa).unwrap();
        for m in 0..=(9 * kappa) {
            let expect = if m % kappa == 0 {
                closed((m / kappa) as u64)
            } else {
                Rational::new()
            };
            let got = a[m].clone().abs();
            let expect = expect.abs();
            assert_eq!(got, expect, "{}: a_{}", name, m);
        }
    }
    report(
        "criterion 1",
        true,
        &format!("constant-term goldens for 8 pencils, exact, in {:?}", t0.elapsed()),
    );
}

/// Criterion 2: the boundary identities D5, E6, E7 agree to 1e-8, E8 to
/// 1e-6 (flagged conjectural), A5 to 1e-6, with accelerated sums.
#[test]
fn criterion_02_boundary_identities() {
    let t0 = std::time::Instant::now();
    let terms = 1 << 16;
    let prec = 160;
    let mut detail = String::new();
    for (case, tol) in [
        (nt::IdentityCase::D5, 1e-8),
        (nt::IdentityCase::E6, 1e-8),
        (nt::IdentityCase::E7, 1e-8),
        (nt::IdentityCase::E8, 1e-6),
        (nt::IdentityCase::A5, 1e-6),
    ] {
        let rep = nt::verify_identity(case, terms, tol, prec).unwrap();
        assert!(rep.agree, "{:?}: discrepancy {}", case, rep.discrepancy);
        assert_eq!(rep.conjectural, matches!(case, nt::IdentityCase::E8));
        detail.push_str(&format!("{:?} disc {:.1e}; ", case, rep.discrepancy));
    }
    report("criterion 2", true, &format!("{}in {:?}", detail, t0.elapsed()));
}

/// Criterion 3: the Bernoulli route gives exactly pi^3/32 for the
/// alternating odd cubes.
#[test]
fn criterion_03_bernoulli_route() {
    let t0 = std::time::Instant::now();
    let phi: Vec<Rational> = [0, 1, 0, -1].iter().map(|&x| rat(x)).collect();
    let r = nt::ltilde_via_bernoulli(&phi, 3);
    // sum (-1)^M/(2M+1)^3 = (-1/4i) Ltilde(phi_hat, 3) = 2 pi^3 r, so the
    // exact rational statement of "pi^3/32" is r = 1/64
    assert_eq!(r, Rational::from((1, 64)));
    // numeric confirmation against the direct alternating sum
    let prec = 128;
    let pi = RBall::pi(prec);
    let claimed = pi.powi(3).mul(&RBall::from_rational(prec, &Rational::from((1, 32))));
    let mut s = RBall::zero(prec);
    for m in 0..2000i64 {
        let sign = if m % 2 == 0 { 1 } else { -1 };
        s = s.add(&RBall::from_i64(prec, sign).div(&RBall::from_i64(prec, (2 * m + 1).pow(3))));
    }
    assert!((claimed.to_f64() - s.to_f64()).abs() < 1e-8);
    report("criterion 3", true, &format!("r = 1/64 exactly, in {:?}", t0.elapsed()));
}

/// Criterion 4: the fundamental vectors match the printed table exactly.
#[test]
fn criterion_04_fundamental_vectors() {
    let t0 = std::time::Instant::now();
    let want: Vec<(i64, u32, Vec<Rational>)> = vec![
        (3, 1, vec![rat(0), Rational::from((-81, 2)), Rational::from((81, 2))]),
        (4, 1, vec![rat(0), rat(-32), rat(0), rat(32)]),
        (
            5,
            1,
            vec![rat(0), rat(-25), Rational::from((-25, 2)), Rational::from((25, 2)), rat(25)],
        ),
        (3, 2, vec![rat(-162), rat(81), rat(81)]),
        (
            6,
            2,
            vec![
                Rational::from((-432, 5)),
                Rational::from((-216, 5)),
                Rational::from((216, 5)),
                Rational::from((432, 5)),
                Rational::from((216, 5)),
                Rational::from((-216, 5)),
            ],
        ),
    ];
    for (n, ell, expect) in want {
        let fv = eis::fundamental_vector(n, ell).unwrap();
        assert_eq!(fv.rational_values().unwrap(), expect, "N={} l={}", n, ell);
    }
    report("criterion 4", true, &format!("five fundamental vectors exact, in {:?}", t0.elapsed()));
}

/// Criterion 5: the level-three weight-three expansion equals
/// 1 - 9 sum q0^{3mu} sum_{r|mu} r^2 chi_-3(r) exactly to order 30.
#[test]
fn criterion_05_level_three_expansion() {
    let t0 = std::time::Instant::now();
    let n = 3i64;
    let inf = eis::cusp_infinity(n);
    let e = eis::tilde_e_sigma(n, 1, &inf, 30).unwrap();
    let ser = e.rational_series().unwrap();
    let chi = [0i64, 1, -1];
    for k in 0..=30usize {
        let expect = if k == 0 {
            rat(1)
        } else if k % 3 == 0 {
            let mu = k / 3;
            let mut s = 0i64;
            for r in 1..=mu {
                if mu % r == 0 {
                    s += (r * r) as i64 * chi[r % 3];
                }
            }
            rat(-9 * s)
        } else {
            rat(0)
        };
        assert_eq!(ser.coeffs[k], expect, "coefficient {}", k);
    }
    report("criterion 5", true, &format!("exact to order 30, in {:?}", t0.elapsed()));
}

/// Criterion 6: lattice-sum vs q-expansion cross-validation at three
/// tau, levels three and four, weights one and two, to 1e-8.
#[test]
fn criterion_06_lattice_vs_qexp() {
    let t0 = std::time::Instant::now();
    let prec = 128;
    let sqrt3 = 3f64.sqrt();
    let taus = [(0.0, 2.0), (1.0, 2.0), (0.0, sqrt3)];
    let mut worst: f64 = 0.0;
    for n in [3i64, 4] {
        for ell in [1u32, 2] {
            let fv = eis::fundamental_vector(n, ell).unwrap();
            let inf = eis::cusp_infinity(n);
            let phi = eis::pi_pull(&fv, &inf).unwrap().scale(&Rational::from((1, n)));
            let order = 40 + 10 * n as usize;
            let e = eis::eisenstein_q(&phi, ell, order).unwrap();
            for (re, im) in taus {
                let tau = CBall::new(prec, re, im);
                let lat = eis::eisenstein_lattice(&phi, ell, &tau, 60, prec).unwrap();
                // evaluate the q-expansion
                let pi = RBall::pi(prec);
                let two_pi_i = CBall::from_rball(&pi.mul_i64(2)).mul(&CBall::i(prec));
                let q0 = tau
                    .mul(&two_pi_i)
                    .mul(&CBall::from_rational(prec, &Rational::from((1, n))))
                    .exp();
                let mut acc = CBall::zero(prec);
                let mut qp = CBall::one(prec);
                for (k, c) in e.series.coeffs.iter().enumerate() {
                    if k > 0 {
                        qp = qp.mul(&q0);
                    }
                    if !c.is_zero() {
                        acc = acc.add(&qp.mul(&c.embed(prec)));
                    }
                }
                let d = lat.center_dist(&acc);
                worst = worst.max(d);
                assert!(
                    d < 1e-8,
                    "N={} l={} tau=({},{}): distance {}",
                    n,
                    ell,
                    re,
                    im,
                    d
                );
            }
        }
    }
    report(
        "criterion 6",
        true,
        &format!("12 combinations, worst distance {:.2e}, in {:?}", worst, t0.elapsed()),
    );
}

/// Criterion 7: the Hauptmodul comparison end-to-end for the Hesse,
/// Apery, Fermi and Verrill cases (plus the level-three and level-four
/// companions): exact coefficient equality to the printed depth, both
/// eta-quotient and mirror-map routes.
#[test]
fn criterion_07_theorem83_end_to_end() {
    let t0 = std::time::Instant::now();
    let outcomes = modular::run_all_cases(8).unwrap();
    assert_eq!(outcomes.len(), 6);
    let mut detail = String::new();
    for o in &outcomes {
        assert!(o.report.passes(), "case {}: {:?}", o.name, o.report.messages);
        detail.push_str(&o.name);
        detail.push(' ');
    }
    // spot-check the printed prefixes
    let f = |name: &str| {
        outcomes.iter().find(|o| o.name == name).unwrap().report.f_series.clone()
    };
    assert_eq!(f("hesse").coeffs[..4], [rat(-1), rat(9), rat(-27), rat(9)]);
    assert_eq!(f("apery").coeffs[..4], [rat(-12), rat(84), rat(708), rat(2460)]);
    let fermi = f("fermi");
    assert_eq!(
        fermi.coeffs[..7],
        [rat(-6), rat(0), rat(48), rat(0), rat(240), rat(0), rat(1776)]
    );
    assert_eq!(f("verrill").coeffs[..4], [rat(-6), rat(-12), rat(84), rat(-228)]);
    report("criterion 7", true, &format!("cases: {}in {:?}", detail, t0.elapsed()));
}

/// Criterion 8: the cusp limits at levels four and six: -16iG to
/// 1e-10 (mod the real Q(2) lattice), and the exact -48 zeta(3)
/// bookkeeping.
#[test]
fn criterion_08_cusp_limits() {
    let t0 = std::time::Instant::now();
    let prec = 160;
    // level four: phi_hat_f = -(1/4) pi_[0]^* fhat_4
    let n = 4i64;
    let f4 = eis::fundamental_vector(n, 1).unwrap();
    let zero = eis::cusp_zero(n);
    let hat_f = eis::pi_pull(&f4.ft(), &zero).unwrap().scale(&Rational::from((-1, 4)));
    let phi_f = hat_f.ft().scale(&Rational::from((1, n * n)));
    let cl = eis::cusp_limit(&phi_f, &zero, 1, prec).unwrap();
    let g = nt::catalan(prec);
    let target = CBall::i(prec).mul(&CBall::from_rball(&g)).mul_i64(-16);
    // the Q(2) ambiguity is real; the imaginary parts must agree and the
    // real part must vanish for this purely imaginary representative
    let d = cl.value.center_dist(&target);
    assert!(d < 1e-10, "level-four limit: {} vs {}", cl.value, target);
    assert_eq!(cl.ambiguity_weight, 2);

    // level six: the Fricke-symmetrized divisor function at [-1/2]
    let n = 6i64;
    let mut hat = eis::TorsionFunction::zero(n, 2);
    let big = Rational::from((2 * 7776, 5)); // 2 * 6^5 / 5
    let small = Rational::from((-2 * 216, 5)); // -2 * 6^3 / 5
    for m in 0..n {
        for nn in 0..n {
            let v = if m == 0 && (nn == 1 || nn == 5) {
                big.clone()
            } else if m == 1 || m == 5 {
                small.clone()
            } else {
                Rational::new()
            };
            if v != 0 {
                hat.set2(m, nn, CycNum::from_rational(v));
            }
        }
    }
    let phi = hat.ft().scale(&Rational::from((1, n * n)));
    let sigma = eis::cusp_for(6, -1, 2).unwrap();
    let cl2 = eis::cusp_limit(&phi, &sigma, 2, prec).unwrap();
    // exact bookkeeping: (2^5 6^2/5)(1 - 10/8 + 9/216) = -48
    let book = Rational::from((32 * 36, 5))
        * (Rational::from(1) - Rational::from((10, 8)) + Rational::from((9, 216)));
    assert_eq!(book, Rational::from(-48));
    assert_eq!(cl2.zeta_multiple, Some(Rational::from(-48)), "exact zeta multiple");
    let z3 = nt::zeta(3, prec);
    let target2 = CBall::from_rball(&z3).mul_i64(-48);
    let d2 = cl2.value.center_dist(&target2);
    assert!(d2 < 1e-10, "level-six limit: {} vs {}", cl2.value, target2);
    report(
        "criterion 8",
        true,
        &format!("-16iG ({:.1e}) and -48 zeta(3) exact + ({:.1e}), in {:?}", d, d2, t0.elapsed()),
    );
}

/// Criterion 9: the local mirror pipeline for the product of lines:
/// instanton integers, and the growth rate at the conifold point.
#[test]
fn criterion_09_local_mirror() {
    let t0 = std::time::Instant::now();
    let diamond = toric_regulator::polytope::LatticePolytope::from_points(
        2,
        &[vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]],
    )
    .unwrap();
    let pipe = modular::local_mirror_pipeline(&diamond, 7).unwrap();
    let got: Vec<i64> = pipe.instantons.iter().map(|x| x.to_i64().unwrap()).collect();
    assert_eq!(got, vec![-4, -4, -12, -48, -240, -1356, -8428]);

    // growth rate exp(8G/pi) at the conifold parameter 1/16 of the
    // squared-binomial family
    let prec = 160;
    let seed: Vec<Rational> = (0..40u64)
        .map(|m| Rational::from(binomial(2 * m, m).square_ref()))
        .collect();
    let op = fit_recurrence(&seed, 3, 3).unwrap();
    let t16 = RBall::from_rational(prec, &Rational::from((1, 16)));
    let (rate, _pv) = modular::growth_rate(&seed, &op, &t16, 1 << 16, prec).unwrap();
    let g = nt::catalan(prec);
    let pi = RBall::pi(prec);
    let expect = g.mul_i64(8).div(&pi).exp();
    let d = (rate.to_f64() - expect.to_f64()).abs();
    assert!(d < 1e-8, "rate {} vs e^(8G/pi) {}", rate, expect);

    // the cubic-corrected D = 6 -> 7 ratio approaches the same constant
    let ratio = (got[6] as f64 / got[5] as f64).abs() * (7.0f64 / 6.0).powi(3);
    let rel = (ratio - expect.to_f64()).abs() / expect.to_f64();
    assert!(rel < 0.05, "finite-D ratio {} vs rate {}: {}", ratio, expect.to_f64(), rel);
    report(
        "criterion 9",
        true,
        &format!(
            "instantons exact, rate err {:.1e}, finite-D ratio within {:.1}%, in {:?}",
            d,
            rel * 100.0,
            t0.elapsed()
        ),
    );
}

/// Criterion 10: the Mahler-measure equality at an interior parameter:
/// quadrature vs series to 1e-6.
#[test]
fn criterion_10_mahler_equality() {
    let t0 = std::time::Instant::now();
    let phi = parse_laurent("(x-1)^2*(y-1)^2*x^-1*y^-1").unwrap();
    let t = Rational::from((1, 32));
    let m = nt::mahler_measure(&phi, &t, nt::MahlerMethod::GaussLegendre(256)).unwrap();
    // series side: m(t^{-1} - phi) = -Re psi = log(1/t) - sum a_m t^m/m
    let prec = 128;
    let tb = RBall::from_rational(prec, &t);
    let pv = periods::psi_value_real(&phi, &tb, 4000, periods::Accel::None, prec).unwrap();
    let series_side = -pv.value.to_f64();
    let d = (m - series_side).abs();
    assert!(d < 1e-6, "quadrature {} vs series {}", m, series_side);
    report("criterion 10", true, &format!("difference {:.2e}, in {:?}", d, t0.elapsed()));
}

/// Criterion 11: the property suites (structural identities only).
#[test]
fn criterion_11_property_suites() {
    let t0 = std::time::Instant::now();
    // deterministic pseudo-random stream
    let mut state = 0x9E3779B97F4A7C15u64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };

    // FT inversion and the projection intertwining identities on 100
    // random inputs
    for i in 0..100 {
        let n = 3 + (next() % 5) as i64; // 3..7
        let len = (n * n) as usize;
        let vals: Vec<i64> = (0..len).map(|_| (next() % 19) as i64 - 9).collect();
        let phi = eis::TorsionFunction::from_i64s(n, 2, &vals).unwrap();
        let hh = phi.ft().ft();
        for m in 0..n {
            for nn in 0..n {
                assert_eq!(*hh.get2(m, nn), phi.get2(m, nn).scale(&rat(n * n)), "ft^2 at {}", i);
            }
        }
        let vals1: Vec<i64> = (0..n as usize).map(|_| (next() % 19) as i64 - 9).collect();
        let phi0 = eis::TorsionFunction::from_i64s(n, 1, &vals1).unwrap();
        let h1 = phi0.ft().ft();
        for a in 0..n {
            assert_eq!(*h1.get1(a), phi0.get1(-a).scale(&rat(n)));
        }
        let sigma = {
            let cs = eis::cusps(n).unwrap();
            cs[(next() % cs.len() as u64) as usize].clone()
        };
        let lhs4 = eis::pi_pull(&phi0, &sigma).unwrap().ft().scale(&Rational::from((1, n)));
        let rhs4 = eis::iota_push(&phi0.ft(), &sigma).unwrap();
        assert_eq!(lhs4, rhs4, "section intertwining at {}", i);
        let lhs5 = eis::pi_push(&phi, &sigma).unwrap().ft();
        let rhs5 = eis::iota_pull(&phi.ft(), &sigma).unwrap();
        assert_eq!(lhs5, rhs5, "trace intertwining at {}", i);
    }

    // Pontryagin-FT multiplicativity
    for _ in 0..10 {
        let n = 3 + (next() % 3) as i64;
        let len = (n * n) as usize;
        let v1: Vec<i64> = (0..len).map(|_| (next() % 11) as i64 - 5).collect();
        let v2: Vec<i64> = (0..len).map(|_| (next() % 11) as i64 - 5).collect();
        let p1 = eis::TorsionFunction::from_i64s(n, 2, &v1).unwrap();
        let p2 = eis::TorsionFunction::from_i64s(n, 2, &v2).unwrap();
        let lhs = eis::pontryagin(&[&p1, &p2]).unwrap().ft();
        let rhs: Vec<CycNum> = p1
            .ft()
            .values
            .iter()
            .zip(p2.ft().values.iter())
            .map(|(a, b)| a.mul(b))
            .collect();
        assert_eq!(lhs.values, rhs);
    }

    // D2 functional equations and the five-term relation at 100 points
    let prec = 96;
    for i in 0..100 {
        let x = ((next() % 4000) as f64 - 2000.0) / 700.0;
        let y = ((next() % 4000) as f64 - 2000.0) / 700.0;
        if y.abs() < 0.05 || (x * x + y * y) < 0.01 {
            continue;
        }
        let z = CBall::new(prec, x, y);
        let d = nt::bloch_wigner(&z, prec).unwrap().to_f64();
        let dc = nt::bloch_wigner(&z.conj(), prec).unwrap().to_f64();
        let di = nt::bloch_wigner(&z.inv(), prec).unwrap().to_f64();
        let dm = nt::bloch_wigner(&CBall::one(prec).sub(&z), prec).unwrap().to_f64();
        assert!((d + dc).abs() < 1e-20, "conj at {}", i);
        assert!((d + di).abs() < 1e-20, "inv at {}", i);
        assert!((d + dm).abs() < 1e-20, "reflect at {}", i);
    }
    for i in 0..100 {
        let x = CBall::new(prec, ((next() % 100) as f64 - 50.0) / 60.0, ((next() % 100) as f64) / 120.0 + 0.05);
        let yv = CBall::new(prec, ((next() % 100) as f64 - 50.0) / 60.0, -(((next() % 100) as f64) / 120.0) - 0.05);
        let one = CBall::one(prec);
        let xy = x.mul(&yv);
        if one.sub(&xy).abs_lb().to_f64() < 0.05 {
            continue;
        }
        let a = one.sub(&x).div(&one.sub(&xy));
        let b = one.sub(&xy);
        let c = one.sub(&yv).div(&one.sub(&xy));
        let mut s = RBall::zero(prec);
        for z in [&x, &yv, &a, &b, &c] {
            s = s.add(&nt::bloch_wigner(z, prec).unwrap());
        }
        assert!(s.to_f64().abs() < 1e-18, "five-term at {}: {}", i, s);
    }

    // series reversal: reverse then compose is the identity
    for _ in 0..20 {
        let ordr = 10usize;
        let mut coeffs = vec![Rational::new(); ordr + 1];
        coeffs[1] = rat(1 + (next() % 3) as i64);
        for c in coeffs.iter_mut().skip(2) {
            *c = rat((next() % 13) as i64 - 6);
        }
        let f = QSeries::new(coeffs);
        let g = f.reverse().unwrap();
        assert_eq!(f.compose(&g).unwrap(), Series::identity(ordr));
    }

    // recurrence fitting verifies on held-out terms
    {
        let a: Vec<Rational> = (0..40u64)
            .map(|m| {
                let mut s = Rational::new();
                for k in 0..=m {
                    let b = binomial(m, k);
                    s += Rational::from(&b * &b) * binomial(m + k, k);
                }
                s
            })
            .collect();
        let op = fit_recurrence(&a[..30], 3, 3).unwrap();
        assert!(op.annihilates(&a), "held-out verification");
    }

    // the forced derivative identities: delta psi_f0 = (-1)^l N E and
    // the Eichler relation for the normal function, exactly
    for (n, ell) in [(4i64, 1u32), (3, 2)] {
        let len = (n * n) as usize;
        let mut vals: Vec<i64> = (0..len).map(|_| (next() % 15) as i64 - 7).collect();
        let s: i64 = vals.iter().sum();
        vals[0] -= s;
        let phi = eis::TorsionFunction::from_i64s(n, 2, &vals).unwrap();
        let order = 12usize;
        let psi = eis::psi_f0_q(&phi, ell, order).unwrap();
        let e = eis::eisenstein_q(&phi, ell, order).unwrap();
        let sgn = if ell % 2 == 0 { 1 } else { -1 };
        assert_eq!(psi.delta(), e.series.scale(&CycNum::from_i64(sgn * n)));

        let mut v1: Vec<i64> = (0..n as usize).map(|_| (next() % 15) as i64 - 7).collect();
        let s1: i64 = v1.iter().sum();
        v1[0] -= s1;
        let phi0 = eis::TorsionFunction::from_i64s(n, 1, &v1).unwrap();
        let nf = eis::normal_function_q(&phi0, ell, 4 * n as usize).unwrap();
        let inf = eis::cusp_infinity(n);
        let lifted = eis::pi_pull(&phi0, &inf).unwrap().scale(&Rational::from((1, n)));
        let e2 = eis::eisenstein_q(&lifted, ell, 4 * n as usize)
            .unwrap()
            .rational_series()
            .unwrap();
        let csign = if (ell as i64 + 1) * (ell as i64) / 2 % 2 == 0 { 1 } else { -1 };
        let mut lfact = Rational::from(1);
        for i in 1..=(ell as i64) {
            lfact *= Rational::from(i);
        }
        for bigm in 1..=(4usize) {
            let v = &nf.series.coeffs[bigm * n as usize];
            let mut mp = Rational::from(1);
            for _ in 0..=ell {
                mp *= Rational::from(bigm as i64);
            }
            let lhs = Rational::from(v * &mp);
            let rhs =
                Rational::from(&e2.coeffs[bigm * n as usize] * &lfact) * Rational::from(csign);
            assert_eq!(lhs, rhs, "Eichler N={} l={} M={}", n, ell, bigm);
        }
    }
    let _ = Integer::from(0);
    report("criterion 11", true, &format!("all property suites, in {:?}", t0.elapsed()));
}
