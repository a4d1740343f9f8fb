mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn pbw_product_is_associative_on_carrier(
        a in element(4, 3, 3), b in element(4, 3, 3), c in element(4, 2, 3)
    ) {
        prop_assert!(assoc_holds(&carrier_uea(), &a, &b, &c));
    }

    #[test]
    fn pbw_product_is_associative_on_gl3(
        a in element(9, 2, 3), b in element(9, 2, 3), c in element(9, 2, 2)
    ) {
        prop_assert!(assoc_holds(&gl3_uea(), &a, &b, &c));
    }

    #[test]
    fn twisted_coproduct_is_coassociative(x in element(4, 2, 3)) {
        prop_assert!(coassoc_holds(twisted("carrier_pet_ii"), &x));
    }

    #[test]
    fn twisted_coproduct_is_multiplicative(x in element(4, 2, 2), y in element(4, 2, 2)) {
        prop_assert!(homomorphism_holds(twisted("carrier_et_internal"), &x, &y));
    }

    #[test]
    fn twisted_antipode_axioms(x in element(4, 2, 3)) {
        prop_assert!(antipode_holds(twisted("carrier_pet_ii"), &x));
    }

    #[test]
    fn twisted_coproduct_is_graded(m in mono(4, 3)) {
        prop_assert!(grading_holds(twisted("carrier_et_internal"), &m));
    }

    #[test]
    fn expression_parse_emit_is_idempotent(text in expression_text()) {
        prop_assert!(parse_emit_idempotent(&text), "{}", text);
    }
}

#[test]
fn corrupted_table_is_caught() {
    let t = twisted("carrier_pet_ii");
    let uea = &t.job.uea;
    let twistlab::twist::Coproduct::Table(table) = &t.coproduct else { panic!("expected a table") };
    let mut entries = table.entries().to_vec();
    // Delta(A) += xi H (x) 1
    let a = uea.algebra().index_of("A").unwrap();
    let h = uea.algebra().index_of("H").unwrap();
    let extra = uea.generator(h).tensor(&twistlab::pbw::Tensor::unit(1, uea.dim()));
    entries[a].coeff_mut(1).add_assign(&extra);
    let bad = Twisted {
        job: build_job("carrier_pet_ii", ORDER),
        coproduct: twistlab::twist::Coproduct::table(entries),
        antipode: t.antipode.clone(),
    };
    let x = uea.generator(a);
    assert!(!coassoc_holds(&bad, &x));
    assert!(!antipode_holds(&bad, &x));
    assert!(coassoc_holds(t, &x) && antipode_holds(t, &x));
}

mod series_laws {
    use super::common::*;
    use proptest::prelude::*;
    use twistlab::pbw::Series;

    const N: usize = 3;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn exp_times_exp_of_negative_is_one(x in series_of_positive_order(4, N)) {
            let uea = carrier_uea();
            let p = uea.series_mul(&uea.series_exp(&x).unwrap(), &uea.series_exp(&x.neg()).unwrap()).unwrap();
            prop_assert_eq!(p, Series::unit(1, 4, N));
        }

        #[test]
        fn log_inverts_exp(x in series_of_positive_order(4, N)) {
            let uea = carrier_uea();
            prop_assert_eq!(uea.series_log(&uea.series_exp(&x).unwrap()).unwrap(), x.clone());
            let u = Series::unit(1, 4, N).add(&x);
            prop_assert_eq!(uea.series_exp(&uea.series_log(&u).unwrap()).unwrap(), u);
        }

        #[test]
        fn powers_add(x in series_of_positive_order(4, N), p in small_rat(), q in small_rat()) {
            let uea = carrier_uea();
            let u = Series::unit(1, 4, N).add(&x);
            let lhs = uea.series_mul(&uea.series_pow(&u, &p).unwrap(), &uea.series_pow(&u, &q).unwrap()).unwrap();
            prop_assert_eq!(lhs, uea.series_pow(&u, &(p + q)).unwrap());
            let inv = uea.series_inverse(&u).unwrap();
            prop_assert_eq!(uea.series_mul(&u, &inv).unwrap(), Series::unit(1, 4, N));
        }
    }
}

mod primitive_structure {
    use super::common::*;
    use proptest::prelude::*;
    use twistlab::pbw::{Series, Tensor};
    use twistlab::twist::{Antipode, Coproduct};

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn coproduct_is_coassociative(x in element(9, 3, 3)) {
            let uea = gl3_uea();
            let dx = Coproduct::Primitive.apply(&uea, &Series::constant(x, 0));
            prop_assert_eq!(Coproduct::Primitive.apply_at(&uea, &dx, 0), Coproduct::Primitive.apply_at(&uea, &dx, 1));
        }

        #[test]
        fn structure_maps_respect_products(a in element(4, 2, 3), b in element(4, 2, 3)) {
            let uea = carrier_uea();
            let ab = uea.mul(&a, &b).unwrap();
            prop_assert_eq!(uea.primitive_coproduct(&ab), uea.mul(&uea.primitive_coproduct(&a), &uea.primitive_coproduct(&b)).unwrap());
            prop_assert_eq!(uea.counit(&ab), uea.counit(&a) * uea.counit(&b));
            prop_assert_eq!(uea.antipode0(&ab), uea.mul(&uea.antipode0(&b), &uea.antipode0(&a)).unwrap());
        }

        #[test]
        fn antipode_axiom(x in element(9, 3, 3)) {
            let uea = gl3_uea();
            let dx = Series::constant(uea.primitive_coproduct(&x), 0);
            let left = uea.series_slot_product(&Antipode::Primitive.apply_at(&uea, &dx, 0), 0);
            prop_assert_eq!(left.coeff(0), &Tensor::scalar(1, 9, uea.counit(&x)));
        }
    }
}
