//! Verifiers for the mod-2 deformation statements.
//!
//! `examine_uniserial` walks through the hypotheses of the uniserial tower
//! criterion for a module Y with radical series (T1, ..., Tl): End(Y) = k,
//! Ext^1(Y, Y) = k, an arm of P(T1) repeating the series of Y 2^s times, and
//! Ext^1(U, Y) = 0 for the uniserial quotient U of P(T1) along that arm.
//! It then certifies that U is free over k[t]/(t^(2^s)) for the shift t.
//! `verify_middle_term` decides whether a module X is the middle term of a
//! non-split extension of Y by itself.

use serde::{Deserialize, Serialize};

use crate::homology::{self, HomElement};
use crate::linalg;
use crate::presentations::{Path, QuiverPresentation};
use crate::repmod::{local_index, projective_basis, projective_module, Graded, Provenance, Representation};
use crate::{Error, Result, FORMAT_VERSION};

const SEARCH_LIMIT: usize = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisCheck {
    pub id: String,
    pub description: String,
    pub passed: bool,
    pub observed: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UdrMod2Report {
    pub format_version: String,
    pub presentation: String,
    pub subject: String,
    pub subject_series: Vec<usize>,
    pub checks: Vec<HypothesisCheck>,
    /// s with dim U = 2^s dim Y.
    pub exponent: Option<u32>,
    pub lift_dimension: usize,
    pub lift_series: Vec<usize>,
    /// Nilpotency index of the shift induced on U / t^(2^s - 1) U.
    pub truncation_nilpotency: Option<usize>,
    /// `k[t]/(t^n)`, present only when every check passed.
    pub verdict: Option<String>,
}

impl UdrMod2Report {
    pub fn passed(&self) -> bool {
        self.verdict.is_some()
    }

    pub fn first_failure(&self) -> Option<&HypothesisCheck> {
        self.checks.iter().find(|c| !c.passed)
    }
}

pub fn describe(prov: &Provenance) -> String {
    match prov {
        Provenance::String { word } => format!("M({word})"),
        Provenance::Band { word, lambda, m } => format!("M({word}, {lambda}, {m})"),
        Provenance::Projective { vertex } => format!("P({vertex})"),
        Provenance::Syzygy { of, power } => format!("Omega^{power} {}", describe(of)),
        Provenance::Abstract { note } => note.clone(),
    }
}

struct Ledger(Vec<HypothesisCheck>);

impl Ledger {
    fn record(&mut self, id: &str, description: &str, passed: bool, observed: impl Into<String>) -> bool {
        self.0.push(HypothesisCheck { id: id.into(), description: description.into(), passed, observed: observed.into() });
        passed
    }
}

fn vertices_along(p: &QuiverPresentation, u: usize, arm: &Path) -> Vec<usize> {
    let mut out = vec![u];
    out.extend(arm.iter().map(|&a| p.arrows[a].target));
    out
}

/// The arm of P(u) whose interior repeats `series[1..], series[0], ...`
/// and has length l * 2^s - 1 for some s >= 1; returns (arm, s).
fn matching_arm(p: &QuiverPresentation, series: &[usize]) -> Option<(Path, u32)> {
    let u = series[0];
    let l = series.len();
    for arm in p.arms(u) {
        let vs = vertices_along(p, u, &arm);
        let len = arm.len();
        if len % l != 0 || !(len / l).is_power_of_two() || len / l < 2 {
            continue;
        }
        if vs.iter().enumerate().all(|(i, &v)| v == series[i % l]) {
            return Some((arm, (len / l).trailing_zeros()));
        }
    }
    None
}

/// U = P(u) modulo the socle and the submodule generated by the first
/// arrow of the other arm.
fn uniserial_quotient(p: &QuiverPresentation, y: &Representation, arm: &Path) -> Result<Representation> {
    let u = p.path_source(arm);
    let proj = projective_module(p, u, y.field)?;
    let basis = projective_basis(p, u);
    let verts: Vec<usize> = basis
        .iter()
        .map(|b| match b {
            Some(path) if !path.is_empty() => p.path_target(path),
            _ => u,
        })
        .collect();
    let local = local_index(&verts);
    let mut gens: Graded = proj.socle_space(p);
    for (i, b) in basis.iter().enumerate() {
        if let Some(path) = b {
            if path.len() == 1 && path[0] != arm[0] {
                let mut e = vec![0u8; proj.dims[verts[i]]];
                e[local[i]] = 1;
                gens[verts[i]].push(e);
            }
        }
    }
    let sub = proj.generated(p, &gens);
    let (q, _) = proj.quotient(p, &sub);
    Ok(q.with_provenance(Provenance::Abstract { note: format!("P({u}) / (soc + other arm)") }))
}

fn flat_series(p: &QuiverPresentation, m: &Representation) -> Vec<usize> {
    m.radical_series(p).into_iter().flatten().collect()
}

fn coefficient_vectors(q: usize, n: usize) -> impl Iterator<Item = Vec<u8>> {
    let total = q.pow(n as u32);
    (0..total).map(move |mut x| {
        let mut c = vec![0u8; n];
        for slot in c.iter_mut() {
            *slot = (x % q) as u8;
            x /= q;
        }
        c
    })
}

/// An endomorphism of a uniserial module of length `len` with image
/// rad^l, i.e. the shift down by l layers.
fn find_shift(p: &QuiverPresentation, m: &Representation, l: usize) -> Result<Option<HomElement>> {
    let f = m.f();
    let end = homology::end_space(p, m)?;
    let target = m.dim() - l;
    if let Some(h) = end.basis.iter().find(|h| h.rank(f) == target) {
        return Ok(Some(h.clone()));
    }
    let q = f.order();
    if q.checked_pow(end.dim() as u32).is_none_or(|n| n > SEARCH_LIMIT) {
        return Ok(None);
    }
    Ok(coefficient_vectors(q, end.dim()).map(|c| end.combine(f, &c, &end.basis[0])).find(|h| h.rank(f) == target))
}

fn power(f: &crate::field::Field, t: &HomElement, k: usize, m: &Representation) -> HomElement {
    let mut out = HomElement::identity(m);
    for _ in 0..k {
        out = t.compose(f, &out);
    }
    out
}

fn image(f: &crate::field::Field, h: &HomElement) -> Graded {
    h.blocks.iter().map(|b| linalg::span(f, &b.col_vecs(), b.rows)).collect()
}

fn contained(f: &crate::field::Field, a: &Graded, b: &Graded, dims: &[usize]) -> bool {
    a.iter().zip(b).zip(dims).all(|((av, bv), &n)| {
        let base = linalg::rank_of_vectors(f, bv, n);
        let mut all = bv.clone();
        all.extend(av.iter().cloned());
        linalg::rank_of_vectors(f, &all, n) == base
    })
}

/// Run every hypothesis of the uniserial tower criterion and report.
pub fn examine_uniserial(p: &QuiverPresentation, y: &Representation, seed: u64) -> Result<UdrMod2Report> {
    if !y.is_uniserial(p) {
        return Err(Error::NotUniserial);
    }
    let f = y.f();
    let series = flat_series(p, y);
    let l = series.len();
    let mut report = UdrMod2Report {
        format_version: FORMAT_VERSION.into(),
        presentation: p.tag(),
        subject: describe(&y.provenance),
        subject_series: series.clone(),
        checks: Vec::new(),
        exponent: None,
        lift_dimension: 0,
        lift_series: Vec::new(),
        truncation_nilpotency: None,
        verdict: None,
    };
    let mut ledger = Ledger(Vec::new());

    let end = homology::intertwiner_space(p, y, y)?.dim();
    let ok_end = ledger.record("end", "End(Y) = k", end == 1, format!("dim End(Y) = {end}"));
    let ext = homology::ext1_dim(p, y, y)?;
    let ok_ext = ledger.record("ext", "Ext^1(Y,Y) = k", ext == 1, format!("dim Ext^1(Y,Y) = {ext}"));

    let arm = matching_arm(p, &series);
    let shape = ledger.record(
        "shape",
        "P(T1) has an arm with series (T2..Tl, T1, ..., Tl) of length l*2^s - 1",
        arm.is_some(),
        match &arm {
            Some((a, s)) => format!("arm {} gives s = {s}", p.path_text(a)),
            None => "no arm of P(T1) repeats the series of Y".into(),
        },
    );
    let Some((arm, s)) = arm.filter(|_| shape) else {
        report.checks = ledger.0;
        return Ok(report);
    };
    report.exponent = Some(s);
    let reps = 1usize << s;

    let lift = uniserial_quotient(p, y, &arm)?;
    let lift_series = flat_series(p, &lift);
    report.lift_dimension = lift.dim();
    report.lift_series = lift_series.clone();
    let expected: Vec<usize> = (0..reps * l).map(|i| series[i % l]).collect();
    let ok_lift = ledger.record(
        "lift_shape",
        "U is uniserial with series (T1..Tl)^(2^s)",
        lift.is_uniserial(p) && lift_series == expected,
        format!("dim U = {}, series {:?}", lift.dim(), lift_series),
    );

    let ext_uy = homology::ext1_dim(p, &lift, y)?;
    let ok_obstruction = ledger.record("ext_lift", "Ext^1(U,Y) = 0", ext_uy == 0, format!("dim Ext^1(U,Y) = {ext_uy}"));

    let shift = find_shift(p, &lift, l)?;
    let ranks: Vec<usize> = match &shift {
        Some(t) => (0..=reps).map(|k| power(f, t, k, &lift).rank(f)).collect(),
        None => Vec::new(),
    };
    let free = !ranks.is_empty() && ranks.iter().enumerate().all(|(k, &r)| r == lift.dim() - k * l);
    let ok_free = ledger.record(
        "free",
        "the shift t makes U free over k[t]/(t^(2^s))",
        free,
        if ranks.is_empty() { "no shift endomorphism found".to_string() } else { format!("rank t^k = {ranks:?}") },
    );

    let mut ok_top = false;
    let mut ok_trunc = false;
    if let (Some(t), true) = (&shift, free) {
        // U / tU is Y
        let (top, _) = lift.quotient(p, &image(f, t));
        ok_top = homology::is_isomorphic(p, &top, y, seed)?.isomorphic;
        ledger.record("lift_of_y", "U / tU is isomorphic to Y", ok_top, format!("dim U/tU = {}", top.dim()));

        // truncation U' = U / t^(2^s - 1) U
        let bottom = image(f, &power(f, t, reps - 1, &lift));
        let bottom_mod = lift.subrep(p, &bottom)?;
        let bottom_is_y = homology::is_isomorphic(p, &bottom_mod, y, seed)?.isomorphic;
        let nil = (0..=reps).find(|&k| contained(f, &image(f, &power(f, t, k, &lift)), &bottom, &lift.dims));
        report.truncation_nilpotency = nil;
        ok_trunc = bottom_is_y && nil == Some(reps - 1);
        ledger.record(
            "truncation",
            "t^(2^s-1) U is Y and t has nilpotency 2^s - 1 on U / Y",
            ok_trunc,
            format!("socle piece iso Y: {bottom_is_y}, nilpotency {nil:?}"),
        );
    }

    report.checks = ledger.0;
    if ok_end && ok_ext && ok_lift && ok_obstruction && ok_free && ok_top && ok_trunc {
        report.verdict = Some(format!("k[t]/(t^{reps})"));
    }
    Ok(report)
}

/// Like `examine_uniserial`, but fails with the first violated hypothesis.
pub fn verify_uniserial_udr(p: &QuiverPresentation, y: &Representation) -> Result<UdrMod2Report> {
    let report = examine_uniserial(p, y, 0)?;
    if let Some(c) = report.first_failure() {
        return Err(Error::HypothesisFailed(format!("{}: {} ({})", c.id, c.description, c.observed)));
    }
    Ok(report)
}

/// Invariants that must agree between isomorphic modules.
fn invariants(p: &QuiverPresentation, m: &Representation) -> (Vec<usize>, Vec<Vec<usize>>, Vec<usize>, Vec<usize>) {
    (m.dims.clone(), m.radical_series(p), m.top(p), m.socle(p))
}

fn same_module(p: &QuiverPresentation, a: &Representation, b: &Representation, seed: u64) -> Result<bool> {
    if invariants(p, a) != invariants(p, b) {
        return Ok(false);
    }
    Ok(homology::is_isomorphic(p, a, b, seed)?.isomorphic)
}

/// Is there a non-split short exact sequence 0 -> Y -> X -> Y -> 0?
pub fn verify_middle_term(p: &QuiverPresentation, y: &Representation, x: &Representation, seed: u64) -> Result<bool> {
    if x.dim() != 2 * y.dim() || x.dims.iter().zip(&y.dims).any(|(a, b)| *a != 2 * b) {
        return Err(Error::DimensionMismatch(format!("dim X = {:?}, dim Y = {:?}", x.dims, y.dims)));
    }
    let f = y.f();
    let split = y.direct_sum(y)?;
    if same_module(p, x, &split, seed)? {
        return Ok(false);
    }
    let hom = homology::intertwiner_space(p, y, x)?;
    if hom.dim() == 0 {
        return Ok(false);
    }
    let try_map = |h: &HomElement| -> Result<bool> {
        if h.rank(f) != y.dim() {
            return Ok(false);
        }
        let (coker, _) = x.quotient(p, &image(f, h));
        same_module(p, &coker, y, seed)
    };
    for h in &hom.basis {
        if try_map(h)? {
            return Ok(true);
        }
    }
    let q = f.order();
    if q.checked_pow(hom.dim() as u32).is_some_and(|n| n <= SEARCH_LIMIT) {
        for c in coefficient_vectors(q, hom.dim()) {
            if try_map(&hom.combine(f, &c, &hom.basis[0]))? {
                return Ok(true);
            }
        }
        return Ok(false);
    }
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..4096 {
        let c: Vec<u8> = (0..hom.dim()).map(|_| rng.gen_range(0..q) as u8).collect();
        if try_map(&hom.combine(f, &c, &hom.basis[0]))? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// P(T1) + P(T2)/soc for a7, the middle term attached to Y01102.
pub fn a7_middle_term(p: &QuiverPresentation, field: crate::field::FieldSpec) -> Result<Representation> {
    let p1 = projective_module(p, 1, field)?;
    let p2 = projective_module(p, 2, field)?;
    let (p2s, _) = p2.quotient(p, &p2.socle_space(p));
    let mut x = p1.direct_sum(&p2s)?;
    x.provenance = Provenance::Abstract { note: "P(1) + P(2)/soc".into() };
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::presentations::{build_a7, build_psl1, build_psl2};
    use crate::repmod::string_module;
    use crate::strings::{parse_word, StringWord};

    fn module(p: &QuiverPresentation, w: &str) -> Representation {
        string_module(p, &parse_word(p, w).unwrap(), FieldSpec::default()).unwrap()
    }

    #[test]
    fn psl1_uniserial() {
        let p = build_psl1(3).unwrap();
        let r = verify_uniserial_udr(&p, &module(&p, "be- de- et-")).unwrap();
        assert_eq!(r.verdict.as_deref(), Some("k[t]/(t^2)"));
        assert_eq!(r.lift_series, vec![1, 0, 2, 0, 1, 0, 2, 0]);
        assert_eq!(r.truncation_nilpotency, Some(1));
    }

    #[test]
    fn psl2_and_a7() {
        let p = build_psl2(3).unwrap();
        let r = verify_uniserial_udr(&p, &module(&p, "de")).unwrap();
        assert_eq!(r.verdict.as_deref(), Some("k[t]/(t^2)"));
        assert_eq!(r.lift_series, vec![1, 2, 1, 2]);
        let a = build_a7();
        let t1 = string_module(&a, &StringWord::trivial(1), FieldSpec::default()).unwrap();
        let r = verify_uniserial_udr(&a, &t1).unwrap();
        assert_eq!(r.lift_series, vec![1, 1]);
    }

    #[test]
    fn failures_are_named() {
        let p = build_psl1(3).unwrap();
        let s0 = string_module(&p, &StringWord::trivial(0), FieldSpec::default()).unwrap();
        assert!(matches!(verify_uniserial_udr(&p, &s0), Err(Error::HypothesisFailed(_))));
        let a11 = crate::strings::named::a(&p, 1, 1, false).unwrap();
        let m = string_module(&p, &a11, FieldSpec::default()).unwrap();
        assert!(matches!(verify_uniserial_udr(&p, &m), Err(Error::NotUniserial)));
    }

    #[test]
    fn a7_middle_term_sequence() {
        let p = build_a7();
        let y = module(&p, "be al- ga et");
        let x = a7_middle_term(&p, FieldSpec::default()).unwrap();
        assert!(verify_middle_term(&p, &y, &x, 0).unwrap());
        assert!(!verify_middle_term(&p, &y, &y.direct_sum(&y).unwrap(), 0).unwrap());
        assert!(matches!(verify_middle_term(&p, &y, &y, 0), Err(Error::DimensionMismatch(_))));
    }
}
