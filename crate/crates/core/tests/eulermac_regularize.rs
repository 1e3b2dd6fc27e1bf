use fracsum_core::numeric::EULER_GAMMA;
use fracsum_core::specfun::zeta_int;
use fracsum_core::{euler_maclaurin_sum, frac_sum, hash_sum, CatalogExpr, Complex64, Error};
use proptest::prelude::*;

mod common;
use common::{catalog, coeff, complex, exp_times_x_term, exponential_term, inverse_term, polynomial_term, rel};

fn polynomial() -> impl Strategy<Value = CatalogExpr> {
    prop::collection::vec(complex(-1.0..=1.0, -1.0..=1.0), 1..=11).prop_map(|cs| {
        cs.iter()
            .enumerate()
            .map(|(j, &c)| {
                if j == 0 { CatalogExpr::constant(c) } else { CatalogExpr::monomial(j as u32) * c }
            })
            .fold(CatalogExpr::zero(), |acc, t| acc + t)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn euler_maclaurin_is_the_fractional_sum(p in polynomial(), x in complex(-2.0..=2.0, -2.0..=2.0)) {
        let em = euler_maclaurin_sum(&p, x).unwrap();
        let fs = frac_sum(&p, Complex64::new(1.0, 0.0), x).unwrap().value;
        prop_assert!(rel(em, fs) <= 1e-9, "{p} at {x}: {em} vs {fs}");
    }

    #[test]
    fn euler_maclaurin_at_integers(p in polynomial(), n in 1usize..=50) {
        let classical: Complex64 = (1..=n).map(|k| p.evaluate(Complex64::new(k as f64, 0.0))).sum();
        prop_assert!(rel(euler_maclaurin_sum(&p, Complex64::new(n as f64, 0.0)).unwrap(), classical) <= 1e-9);
    }

    #[test]
    fn hash_sum_is_linear(f in catalog(prop_oneof![polynomial_term(), inverse_term(), exponential_term(), exp_times_x_term()]),
                          g in catalog(prop_oneof![polynomial_term(), inverse_term(), exponential_term(), exp_times_x_term()]),
                          l in coeff(), m in coeff()) {
        let lhs = hash_sum(&(f.scale(l) + g.scale(m))).unwrap().value;
        let rhs = l * hash_sum(&f).unwrap().value + m * hash_sum(&g).unwrap().value;
        prop_assert!(rel(lhs, rhs) <= 1e-10);
    }
}

#[test]
fn euler_maclaurin_examples() {
    let c = |re: f64| Complex64::new(re, 0.0);
    let x = Complex64::new(1.3, -0.2);
    let got = euler_maclaurin_sum(&CatalogExpr::monomial(1), x).unwrap();
    assert!((got - (x * x / 2.0 + x / 2.0)).norm() < 1e-15);
    assert!((euler_maclaurin_sum(&CatalogExpr::monomial(1), c(10.0)).unwrap() - c(55.0)).norm() < 1e-12);
    assert_eq!(euler_maclaurin_sum(&CatalogExpr::constant(c(1.0)), x).unwrap(), x);
    assert!(matches!(euler_maclaurin_sum(&CatalogExpr::logarithm(), x), Err(Error::NonPolynomial(_))));
}

#[test]
fn classical_hash_sums() {
    let pi = std::f64::consts::PI;
    let z = Complex64::new(0.0, pi);
    let cases = [
        (CatalogExpr::monomial(1), -1.0 / 12.0),
        (CatalogExpr::inverse_monomial(1), EULER_GAMMA),
        (-CatalogExpr::exponential(z), 0.5),
        (-CatalogExpr::exp_times_x(z), 0.25),
    ];
    for (f, want) in cases {
        assert!((hash_sum(&f).unwrap().value - want).norm() <= 1e-10, "{f}");
    }
    assert!(matches!(hash_sum(&CatalogExpr::logarithm()), Err(Error::NoPrimitiveInCatalog(_))));
}

#[test]
fn hash_sums_of_powers_match_zeta() {
    for a in 1..=8u32 {
        let got = hash_sum(&CatalogExpr::monomial(a)).unwrap().value;
        let want = zeta_int(-(a as i64)).unwrap();
        assert!((got - want).norm() <= 1e-10, "a = {a}: {got} vs {want}");
    }
}
