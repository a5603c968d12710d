use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use supercohom::cochain::{coboundary, CochainSpace};
use supercohom::graded::Parity;
use supercohom::nr::{bracket_to_element, coboundary_sign_table, nr_bracket, NRElement};
use supercohom::random::{random_cochain, random_instance};
use supercohom::scalar::FieldSpec;
use supercohom::superalgebra::LModule;

fn parity(odd: bool) -> Parity {
    if odd {
        Parity::Odd
    } else {
        Parity::Even
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn coboundary_squares_to_zero(seed in any::<u64>(), arity in 0usize..3, odd in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = random_instance(&mut rng);
        let l = &inst.algebra;
        let m = LModule::adjoint(l);
        let f = random_cochain(&mut rng, CochainSpace::for_pair(l, &m, arity), parity(odd));
        let df = coboundary(&f, l, &m, None).unwrap();
        prop_assert!(coboundary(&df, l, &m, None).unwrap().is_zero());
    }

    #[test]
    fn bracket_is_graded_antisymmetric(seed in any::<u64>(), a in 1usize..3, b in 1usize..3, p in any::<bool>(), q in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = random_instance(&mut rng);
        let l = &inst.algebra;
        let m = LModule::adjoint(l);
        let f = NRElement::from_cochain(random_cochain(&mut rng, CochainSpace::for_pair(l, &m, a), parity(p))).unwrap();
        let g = NRElement::from_cochain(random_cochain(&mut rng, CochainSpace::for_pair(l, &m, b), parity(q))).unwrap();
        let e = f.degree() * g.degree() + (p && q) as i64;
        let s = if e % 2 == 0 { -1 } else { 1 };
        let fg = nr_bracket(&f, &g).unwrap();
        prop_assert_eq!(fg, nr_bracket(&g, &f).unwrap().scale(&FieldSpec::Rational.from_int(s)));
    }

    #[test]
    fn coboundary_is_bracket_with_structure(seed in any::<u64>(), arity in 1usize..3, odd in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = random_instance(&mut rng);
        let l = &inst.algebra;
        let m = LModule::adjoint(l);
        let f = random_cochain(&mut rng, CochainSpace::for_pair(l, &m, arity), parity(odd));
        let df = coboundary(&f, l, &m, None).unwrap();
        let br = nr_bracket(&bracket_to_element(l), &NRElement::from_cochain(f).unwrap()).unwrap();
        prop_assert_eq!(br.cochain().unwrap().coords(), df.coords());
    }
}

#[test]
fn sign_table_is_plus_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..4 {
        let inst = random_instance(&mut rng);
        for entry in coboundary_sign_table(&inst.algebra, 3).unwrap() {
            assert!(matches!(entry.sign, Some(1) | Some(0)), "{}: {entry:?}", inst.name);
        }
    }
}
