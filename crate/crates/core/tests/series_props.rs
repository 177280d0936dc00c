use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use setoperads::series::{
    elementary, gk_dual_candidate, gk_first_negative, verify_ode, ExactSeries, OdeExpression,
    Provenance, RationalSeries,
};

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Truncated product of plain coefficient vectors.
fn mul(a: &[BigRational], b: &[BigRational], n: usize) -> Vec<BigRational> {
    let mut c = vec![BigRational::zero(); n + 1];
    for (i, x) in a.iter().enumerate().take(n + 1) {
        for (j, y) in b.iter().enumerate().take(n + 1 - i) {
            c[i + j] += x * y;
        }
    }
    c
}

/// Lagrange inversion: `[t^n] rev(f) = (1/n) [t^(n-1)] (t/f)^n`.
fn lagrange_reverse(f: &[BigRational], n: usize) -> Vec<BigRational> {
    // t/f = 1/(c1 + c2 t + ...)
    let g: Vec<BigRational> = (0..n)
        .map(|k| f.get(k + 1).cloned().unwrap_or_default())
        .collect();
    let mut inv = vec![BigRational::zero(); n];
    inv[0] = BigRational::one() / &g[0];
    for k in 1..n {
        let s: BigRational = (1..=k).map(|j| &g[j] * &inv[k - j]).sum();
        inv[k] = -s / &g[0];
    }
    let mut out = vec![BigRational::zero(); n + 1];
    let mut power = vec![BigRational::one()];
    for m in 1..=n {
        power = mul(&power, &inv, n);
        out[m] = &power[m - 1] / q(m as i64);
    }
    out
}

fn series(c: Vec<BigRational>) -> RationalSeries {
    ExactSeries::new(c, Provenance::Computed)
}

fn unit_series() -> impl Strategy<Value = Vec<BigRational>> {
    prop::collection::vec((-20i64..20, 1i64..6), 1..8).prop_map(|v| {
        let mut c = vec![BigRational::zero(), BigRational::one()];
        c.extend(
            v.into_iter()
                .map(|(a, b)| BigRational::new(a.into(), b.into())),
        );
        c
    })
}

#[test]
fn lagrange_oracle_on_catalan() {
    // rev(t - t^2) has Catalan coefficients
    let r = lagrange_reverse(&[q(0), q(1), q(-1)], 6);
    assert_eq!(r[1..], [q(1), q(1), q(2), q(5), q(14), q(42)]);
}

#[test]
fn gk_examples() {
    // n^(n-1) dims: rev(t exp(-t)), whose dual candidate is t exp(t)
    let f = RationalSeries::from_dimension_list(&[1, 2, 9, 64, 625, 7776]);
    let g = gk_dual_candidate(&f, 6).unwrap();
    let perm = RationalSeries::from_dimension_list(&[1, 2, 3, 4, 5, 6]);
    assert_eq!(g, perm);
    // a row of the obstruction table
    let f = RationalSeries::from_dimension_list(&[1, 2, 5, 2, 2]);
    let o = gk_first_negative(&f, 5).unwrap().unwrap();
    assert_eq!(
        (o.degree, o.negative_term),
        (5, BigRational::new((-112).into(), 120.into()))
    );
}

#[test]
fn closed_forms_satisfy_their_equations() {
    for (form, eq) in [
        ("exp(t)-1", "f-f'+1"),
        ("t exp(t)", "(1+t)f-tf'"),
        ("1-sqrt(1-2t-t^2)", "f^2-2f+2t+t^2"),
        ("rev(t exp(-t))", "tff'-tf'+f"),
    ] {
        let f: RationalSeries = elementary(form, 21).unwrap();
        let e: OdeExpression = eq.parse().unwrap();
        assert!(verify_ode(&f, &e, 20).unwrap().passed(), "{form}");
    }
}

proptest! {
    #[test]
    fn reverse_agrees_with_lagrange(c in unit_series()) {
        let r = series(c.clone()).reverse().unwrap();
        let want = lagrange_reverse(&c, c.len() - 1);
        for (k, w) in want.iter().enumerate() {
            prop_assert_eq!(&r.coeff(k), w);
        }
    }

    #[test]
    fn reverse_round_trips(c in unit_series()) {
        let n = c.len() - 1;
        let f = series(c);
        let r = f.reverse().unwrap();
        prop_assert_eq!(f.compose(&r).unwrap(), RationalSeries::t(n));
        prop_assert_eq!(r.reverse().unwrap(), f);
    }

    #[test]
    fn dual_candidate_is_an_involution(c in unit_series()) {
        let n = c.len() - 1;
        let f = series(c);
        let g = gk_dual_candidate(&f, n).unwrap();
        prop_assert_eq!(gk_dual_candidate(&g, n).unwrap(), f);
    }

    #[test]
    fn derivative_inverts_integral(c in unit_series()) {
        let f = series(c);
        prop_assert_eq!(f.integrate().derive(), f.truncate(f.order()));
    }
}
