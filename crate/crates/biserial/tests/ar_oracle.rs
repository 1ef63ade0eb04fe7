use biserial::homology::omega_string;
use biserial::presentations::{build_a7, build_psl1, build_psl2};
use biserial::strings::{canonical_unchecked, enumerate_strings, format_word, is_projective_string, tau_inverse_string, tau_string};

#[test]
fn hooks_agree_with_omega_squared() {
    for p in [build_psl1(3).unwrap(), build_psl2(3).unwrap(), build_a7(), build_psl1(4).unwrap()] {
        let mut bad = Vec::new();
        for s in enumerate_strings(&p, 9) {
            if is_projective_string(&p, &s) {
                continue;
            }
            let o2 = omega_string(&p, &s).unwrap().and_then(|o| omega_string(&p, &o).unwrap());
            let ti = tau_inverse_string(&p, &s);
            let back = ti.as_ref().and_then(|t| omega_string(&p, t).unwrap()).and_then(|o| omega_string(&p, &o).unwrap());
            let t = tau_string(&p, &s);
            if back.as_ref() != Some(&canonical_unchecked(&p, &s)) || t != o2 {
                bad.push(format!(
                    "{}: tau^-1={:?} tau={:?} omega2={:?}",
                    format_word(&p, &s),
                    ti.map(|x| format_word(&p, &x)),
                    t.map(|x| format_word(&p, &x)),
                    o2.map(|x| format_word(&p, &x))
                ));
            }
        }
        assert!(bad.is_empty(), "{}: {} failures, first: {:#?}", p.tag(), bad.len(), &bad[..bad.len().min(8)]);
    }
}
