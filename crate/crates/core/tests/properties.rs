use num_bigint::BigInt;
use proptest::prelude::*;
use somos_core::exactring::{Monomial, Var};
use somos_core::{LaurentElem, QuadElem, Rat, ResidueInt, Ring, SparsePoly};

const VARS: [Var; 3] = [Var::Alpha, Var::Beta, Var::X1];

fn monomial() -> impl Strategy<Value = Monomial> {
    proptest::collection::vec(0u32..3, 3).prop_map(|e| {
        VARS.iter()
            .zip(e)
            .fold(Monomial::ONE, |m, (&v, e)| m.mul(&Monomial::var_pow(v, e)))
    })
}

fn poly() -> impl Strategy<Value = SparsePoly> {
    proptest::collection::vec((monomial(), -9i64..=9), 0..5)
        .prop_map(|ts| SparsePoly::from_terms(ts.into_iter().map(|(m, c)| (m, BigInt::from(c)))))
}

fn rat() -> impl Strategy<Value = Rat> {
    (-50i64..=50, 1i64..=12).prop_map(|(n, d)| Rat::new(n.into(), d.into()))
}

fn laurent() -> impl Strategy<Value = LaurentElem> {
    (poly(), proptest::collection::vec(0u32..3, 2)).prop_map(|(p, e)| {
        let den = Monomial::var_pow(Var::X1, e[0]).mul(&Monomial::var_pow(Var::X2, e[1]));
        LaurentElem::new(p, den)
    })
}

proptest! {
    #[test]
    fn polynomial_ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(a.plus(&b), b.plus(&a));
        prop_assert_eq!(a.times(&b), b.times(&a));
        prop_assert_eq!(a.times(&b).times(&c), a.times(&b.times(&c)));
        prop_assert_eq!(a.times(&b.plus(&c)), a.times(&b).plus(&a.times(&c)));
        prop_assert!(a.minus(&a).is_zero_elem());
        prop_assert_eq!(a.times(&a.one_like()), a.clone());
    }

    #[test]
    fn exact_division_undoes_multiplication(a in poly(), b in poly()) {
        prop_assume!(!b.is_zero_elem());
        prop_assert_eq!(a.times(&b).div_exact(&b).unwrap(), a);
    }

    #[test]
    fn adding_a_constant_breaks_divisibility(b in poly()) {
        prop_assume!(b.degree() > 0);
        let a = b.times(&b).plus(&SparsePoly::one());
        prop_assert!(a.div_exact(&b).is_err());
    }

    #[test]
    fn laurent_normalization_is_idempotent(x in laurent()) {
        let n = x.normalized();
        prop_assert_eq!(n.normalized(), n.clone());
        prop_assert_eq!(n, x);
    }

    #[test]
    fn laurent_ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(a.times(&b.plus(&c)), a.times(&b).plus(&a.times(&c)));
        prop_assert!(a.minus(&a).is_zero_elem());
    }

    #[test]
    fn quadratic_norm_is_multiplicative(a in rat(), b in rat(), c in rat(), e in rat()) {
        let d = Rat::from_integer(BigInt::from(-7));
        let x = QuadElem::new(a, b, d.clone());
        let y = QuadElem::new(c, e, d);
        prop_assert_eq!(x.times(&y).norm(), x.norm().times(&y.norm()));
        prop_assert_eq!(x.times(&x.conjugate()).a, x.norm());
        if !y.is_zero_elem() {
            prop_assert_eq!(x.times(&y).div_exact(&y).unwrap(), x);
        }
    }

    #[test]
    fn residue_inverse(v in 1i64..1009) {
        let x = ResidueInt::from_i64(v, 1009);
        prop_assert!(x.times(&x.try_inverse().unwrap()).is_one_elem());
    }

    #[test]
    fn rational_division_round_trip(a in rat(), b in rat()) {
        prop_assume!(!b.is_zero_elem());
        prop_assert_eq!(a.times(&b).div_exact(&b).unwrap(), a);
    }
}
