use biserial::arquiver::{classify_stable_k, component_strings, component_type, Classification};
use biserial::homology::omega_string;
use biserial::presentations::{build_psl1, build_psl2};
use biserial::strings::{canonical_unchecked, parse_word, StringWord};

#[test]
fn psl1_sweep_has_no_violations() {
    let p = build_psl1(3).unwrap();
    let t = classify_stable_k(&p, 12).unwrap();
    assert!(t.violations().is_empty(), "{:#?}", t.violations());
    // both simples S1, S2 and the four uniserials are reached as Ω-orbit hits
    for label in ["S1", "S2", "U1", "U3"] {
        assert!(t.hits().any(|r| r.orbit.as_deref() == Some(label)), "no hit for {label}");
    }
    assert!(t.hits().all(|r| r.dim_stable_end == 1));
}

#[test]
fn uniserial_component_is_omega_stable_only_for_d3() {
    for (d, expect) in [(3, true), (4, false)] {
        let p = build_psl1(d).unwrap();
        let x = canonical_unchecked(&p, &parse_word(&p, "be- de- et-").unwrap());
        let ox = omega_string(&p, &x).unwrap().unwrap();
        let comp = component_strings(&p, &x, 24);
        assert_eq!(comp.contains(&canonical_unchecked(&p, &ox)), expect, "d = {d}");
    }
}

#[test]
fn component_types() {
    let p = build_psl1(3).unwrap();
    assert_eq!(component_type(&p, &StringWord::trivial(1), 6).unwrap(), Classification::Tube { rank: 3 });
    assert!(matches!(component_type(&p, &StringWord::trivial(0), 6).unwrap(), Classification::ZaInfinityEvidence { .. }));
    let x = parse_word(&p, "be- de- et-").unwrap();
    assert!(matches!(component_type(&p, &x, 6).unwrap(), Classification::ZaInfinityEvidence { .. }));
    let q = build_psl2(3).unwrap();
    assert_eq!(component_type(&q, &parse_word(&q, "be").unwrap(), 6).unwrap(), Classification::Tube { rank: 3 });
}
