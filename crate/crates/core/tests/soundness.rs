//! Pointwise checks of the exact engine against plain floating evaluation,
//! and structural properties of the quadrature transform.

use cherednik_bc1::exact::{direct_q_span, int, rat, rodrigues_span, to_f64, AlgebraParams, Monomial, SigmaSpan};
use cherednik_bc1::model::{q_eval, BC1Params, QSpec};
use cherednik_bc1::specfun::C64;
use cherednik_bc1::transform::{forward_transform, QuadConfig};
use cherednik_bc1::Parity;
use proptest::prelude::*;

const TS: [f64; 6] = [-1.7, -0.9, -0.3, 0.3, 0.9, 1.7];

/// `(b, ι, σ)` as `(numerator, denominator)` pairs.
type Triple = ((i64, i64), (i64, i64), (i64, i64));

const PARAM_GRID: [Triple; 4] =
    [((1, 1), (1, 1), (6, 1)), ((1, 2), (2, 1), (8, 1)), ((2, 1), (1, 2), (13, 2)), ((1, 3), (5, 4), (7, 3))];

fn params(i: usize) -> AlgebraParams {
    let (b, io, s) = PARAM_GRID[i];
    AlgebraParams::from_ratios(b, io, s).unwrap()
}

fn span_from(base: &AlgebraParams, terms: &[(u32, bool, i64, i64)]) -> SigmaSpan {
    let mut s = SigmaSpan::zero(base);
    for &(m, odd, num, den) in terms {
        s.add_term(Monomial { shift: m, odd }, rat(num, den));
    }
    s
}

/// `(value, derivative, Σ|terms|)` straight from the defining expression.
fn direct(base: &AlgebraParams, terms: &[(u32, bool, i64, i64)], t: f64) -> (f64, f64, f64) {
    let sigma = to_f64(base.sigma());
    let cosh = 0.5 * (t.exp() + (-t).exp());
    let tanh = (t.exp() - (-t).exp()) / (t.exp() + (-t).exp());
    let (mut v, mut d, mut mag) = (0.0, 0.0, 0.0);
    for &(m, odd, num, den) in terms {
        let c = num as f64 / den as f64;
        let a = sigma + 2.0 * f64::from(m);
        let e = cosh.powf(-a);
        if odd {
            v += c * e * tanh;
            d += c * (e / (cosh * cosh) - a * e * tanh * tanh);
            mag += (c * e * tanh).abs();
        } else {
            v += c * e;
            d -= c * a * e * tanh;
            mag += (c * e).abs();
        }
    }
    (v, d, mag)
}

fn term_strategy() -> impl Strategy<Value = Vec<(u32, bool, i64, i64)>> {
    prop::collection::vec((0u32..5, any::<bool>(), -9i64..10, 1i64..6), 1..6)
}

proptest! {
    #[test]
    fn span_matches_direct_evaluation(pi in 0usize..4, terms in term_strategy()) {
        let base = params(pi);
        let s = span_from(&base, &terms);
        for t in TS {
            let (want, _, mag) = direct(&base, &terms, t);
            prop_assert!((s.evaluate(t) - want).abs() <= 1e-12 * mag.max(f64::MIN_POSITIVE), "t={t}");
        }
    }

    #[test]
    fn cherednik_matches_defining_formula(pi in 0usize..4, terms in term_strategy()) {
        let base = params(pi);
        let (b, iota, _) = base.as_f64();
        let rho = to_f64(&base.rho());
        let s = span_from(&base, &terms);
        let ds = s.cherednik();
        for t in TS {
            let (f, df, mag) = direct(&base, &terms, t);
            let (fm, _, mag_m) = direct(&base, &terms, -t);
            let k = 2.0 * iota / (1.0 - (-4.0 * t).exp()) + 2.0 * b / (1.0 - (-2.0 * t).exp());
            let want = df + k * (f - fm) - rho * f;
            let scale = (df.abs() + k.abs() * (mag + mag_m) + rho * mag).max(f64::MIN_POSITIVE);
            prop_assert!((ds.evaluate(t) - want).abs() <= 1e-10 * scale, "t={t}");
        }
    }
}

#[test]
fn rodrigues_and_direct_agree_pointwise() {
    for i in 0..PARAM_GRID.len() {
        let base = params(i);
        let p = BC1Params::from_exact(&base);
        for n in 0..=3 {
            for k in 0..=2 {
                for parity in Parity::BOTH {
                    let rod = rodrigues_span(&base, n, k, parity).unwrap();
                    assert_eq!(rod, direct_q_span(&base, n, k, parity).unwrap());
                    for t in TS {
                        let want = q_eval(&p, QSpec::new(n, k, parity), t).unwrap();
                        assert!((rod.evaluate(t) - want).abs() <= 1e-10 * (1.0 + want.abs()), "n={n} k={k} {parity} t={t}");
                    }
                }
            }
        }
    }
}

#[test]
fn cherednik_is_linear() {
    let base = params(2);
    let f = span_from(&base, &[(0, false, 3, 2), (2, true, -1, 3)]);
    let g = span_from(&base, &[(1, true, 5, 1), (2, false, 7, 4)]);
    let lhs = (&f.scaled(&int(2)) + &g).cherednik();
    let rhs = &f.cherednik().scaled(&int(2)) + &g.cherednik();
    assert_eq!(lhs, rhs);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn transform_is_linear(c in -3.0f64..3.0, nu in 0.1f64..3.0) {
        let p = BC1Params::for_transform(1.0, 1.0, 6.0).unwrap();
        let cfg = QuadConfig::default();
        let lam = C64::new(0.0, nu);
        let f = |t: f64| q_eval(&p, QSpec::new(1, 0, Parity::Even), t);
        let g = |t: f64| q_eval(&p, QSpec::new(0, 1, Parity::Odd), t);
        let h = |t: f64| Ok(f(t)? + c * g(t)?);
        let tf = forward_transform(&p, &f, lam, &cfg).unwrap();
        let tg = forward_transform(&p, &g, lam, &cfg).unwrap();
        let th = forward_transform(&p, &h, lam, &cfg).unwrap();
        let scale = tf.plus.norm() + c.abs() * tg.plus.norm() + tf.minus.norm() + c.abs() * tg.minus.norm();
        prop_assert!(th.max_abs_diff(&(tf + tg * c)) <= 1e-8 * scale);
    }

    #[test]
    fn transform_components_conjugate(n in 0u32..3, k in 0u32..2, odd in any::<bool>(), nu in 0.1f64..3.0) {
        let p = BC1Params::for_transform(0.5, 2.0, 8.0).unwrap();
        let parity = if odd { Parity::Odd } else { Parity::Even };
        let f = |t: f64| q_eval(&p, QSpec::new(n, k, parity), t);
        let v = forward_transform(&p, &f, C64::new(0.0, nu), &QuadConfig::default()).unwrap();
        prop_assert!((v.minus - v.plus.conj()).norm() <= 1e-10 * v.plus.norm().max(1e-12));
    }
}
