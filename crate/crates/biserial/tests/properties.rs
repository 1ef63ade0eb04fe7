use std::sync::LazyLock;

use biserial::arquiver::{classify_with, SweepOptions};
use biserial::field::FieldSpec;
use biserial::homology::{hom_basis_string, intertwiner_space, is_isomorphic, omega, omega_string, stable_end_dim};
use biserial::presentations::{build_a7, build_psl1, build_psl2, QuiverPresentation};
use biserial::repmod::{band_module, string_module};
use biserial::strings::{canonical_unchecked, enumerate_bands, enumerate_strings, is_projective_string, Band, StringWord};
use proptest::prelude::*;

struct Family {
    p: QuiverPresentation,
    strings: Vec<StringWord>,
    bands: Vec<Band>,
}

static FAMILIES: LazyLock<Vec<Family>> = LazyLock::new(|| {
    [build_psl1(3).unwrap(), build_psl2(3).unwrap(), build_a7(), build_psl1(4).unwrap()]
        .into_iter()
        .map(|p| {
            let strings = enumerate_strings(&p, 9);
            let bands = enumerate_bands(&p, 8);
            Family { p, strings, bands }
        })
        .collect()
});

fn f2() -> FieldSpec {
    FieldSpec::default()
}

fn pick(k: usize, i: usize) -> (&'static QuiverPresentation, &'static StringWord) {
    let f = &FAMILIES[k % FAMILIES.len()];
    (&f.p, &f.strings[i % f.strings.len()])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn inverse_word_gives_isomorphic_module(k in 0usize..4, i in any::<usize>()) {
        let (p, s) = pick(k, i);
        let inv = s.inverse(p);
        prop_assert_eq!(canonical_unchecked(p, s), canonical_unchecked(p, &inv));
        let a = string_module(p, s, f2()).unwrap();
        let b = string_module(p, &inv, f2()).unwrap();
        prop_assert!(is_isomorphic(p, &a, &b, 7).unwrap().isomorphic);
    }

    #[test]
    fn stable_end_is_omega_invariant(k in 0usize..4, i in any::<usize>()) {
        let (p, s) = pick(k, i);
        prop_assume!(!is_projective_string(p, s));
        let m = string_module(p, s, f2()).unwrap();
        let om = omega(p, &m).unwrap();
        let w = omega_string(p, s).unwrap().expect("non-projective string");
        prop_assert_eq!(om.dim(), w.len() + 1);
        prop_assert_eq!(stable_end_dim(p, &m).unwrap(), stable_end_dim(p, &om).unwrap());
    }

    #[test]
    fn combinatorial_basis_matches_solver(k in 0usize..4, i in any::<usize>(), j in any::<usize>()) {
        let (p, s) = pick(k, i);
        let (_, t) = pick(k, j);
        let comb = hom_basis_string(p, s, t, f2()).unwrap();
        let solve = intertwiner_space(p, &string_module(p, s, f2()).unwrap(), &string_module(p, t, f2()).unwrap()).unwrap();
        prop_assert_eq!(comb.dim(), solve.dim());
    }

    #[test]
    fn hom_dimension_is_field_independent(k in 0usize..4, i in any::<usize>(), j in any::<usize>()) {
        let (p, s) = pick(k, i);
        let (_, t) = pick(k, j);
        let gf4 = FieldSpec::new(2).unwrap();
        let d2 = intertwiner_space(p, &string_module(p, s, f2()).unwrap(), &string_module(p, t, f2()).unwrap()).unwrap().dim();
        let d4 = intertwiner_space(p, &string_module(p, s, gf4).unwrap(), &string_module(p, t, gf4).unwrap()).unwrap().dim();
        prop_assert_eq!(d2, d4);
    }

    #[test]
    fn band_modules_satisfy_relations(k in 0usize..4, i in any::<usize>(), lambda in 1u8..4, m in 1usize..3) {
        let f = &FAMILIES[k % FAMILIES.len()];
        prop_assume!(!f.bands.is_empty());
        let b = &f.bands[i % f.bands.len()];
        let gf4 = FieldSpec::new(2).unwrap();
        let bm = band_module(&f.p, b, lambda, m, gf4).unwrap();
        prop_assert!(bm.check_relations(&f.p).is_ok());
        prop_assert_eq!(bm.dim(), b.word.len() * m);
    }
}

#[test]
fn sweep_is_independent_of_scheduling() {
    for p in [build_psl2(3).unwrap(), build_a7()] {
        let mut opts = SweepOptions::new(8);
        let par = classify_with(&p, &opts).unwrap();
        opts.sequential = true;
        let seq = classify_with(&p, &opts).unwrap();
        assert_eq!(par, seq);
        assert!(par.violations().is_empty());
    }
}
