//! Named verification suites.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::{Arc, OnceLock};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use biserial::arquiver::{self, Classification, ComponentView, SweepOptions};
use biserial::field::FieldSpec;
use biserial::homology::{self, hom_basis_string, intertwiner_space, is_isomorphic, stable_end_dim};
use biserial::mod2defo;
use biserial::par;
use biserial::presentations::{Family, QuiverPresentation};
use biserial::repmod::{band_module, projective_module, string_module};
use biserial::strings::{canonical_unchecked, enumerate_bands, enumerate_strings, format_word, named, parse_word, StringWord};
use biserial::wittrings;
use biserial::{Error, Result};

use crate::report::{execute, Job, SuiteReport};

pub const SUITES: &[&str] = &["projectives", "endk-psl1", "psl1-endos0", "psl1-tube", "psl1-uniserial", "bands-psl1", "classify-rest", "witt", "krause"];

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Clone, Debug, Default)]
pub struct Params {
    pub family: Option<Family>,
    pub d: Option<u32>,
    pub max_len: Option<usize>,
    pub field_ext: Option<u32>,
    pub radius: Option<usize>,
    pub seed: Option<u64>,
}

impl Params {
    fn seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }

    fn record(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        let mut put = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                m.insert(k.to_string(), v);
            }
        };
        put("family", self.family.map(|f| f.name().to_string()));
        put("d", self.d.map(|x| x.to_string()));
        put("max_len", self.max_len.map(|x| x.to_string()));
        put("field_ext", self.field_ext.map(|x| x.to_string()));
        put("radius", self.radius.map(|x| x.to_string()));
        put("seed", Some(self.seed().to_string()));
        m
    }
}

pub fn run_suite(name: &str, params: &Params) -> Result<SuiteReport> {
    if name == "all" {
        let mut checks = Vec::new();
        let mut prints = Vec::new();
        for s in SUITES {
            let (jobs, fp) = jobs_for(s, params)?;
            for mut c in execute(jobs) {
                c.id = format!("{s}/{}", c.id);
                checks.push(c);
            }
            prints.extend(fp);
        }
        return Ok(SuiteReport::new("all", params.record(), checks, &prints));
    }
    let (jobs, prints) = jobs_for(name, params)?;
    Ok(SuiteReport::new(name, params.record(), execute(jobs), &prints))
}

fn jobs_for(name: &str, params: &Params) -> Result<(Vec<Job>, Vec<String>)> {
    match name {
        "projectives" => projectives(params),
        "endk-psl1" => endk_psl1(params),
        "psl1-endos0" => psl1_endos0(params),
        "psl1-tube" => psl1_tube(params),
        "psl1-uniserial" => psl1_uniserial(params),
        "bands-psl1" => bands_psl1(params),
        "classify-rest" => classify_rest(params),
        "witt" => witt(params),
        "krause" => krause(params),
        _ => Err(Error::InvalidParameter(format!("unknown suite `{name}`; available: {}, all", SUITES.join(", ")))),
    }
}

fn f2() -> FieldSpec {
    FieldSpec::default()
}

fn word(p: &QuiverPresentation, text: &str) -> StringWord {
    canonical_unchecked(p, &parse_word(p, text).expect("fixed words"))
}

fn psl1(params: &Params) -> Result<Arc<QuiverPresentation>> {
    Ok(Arc::new(Family::Psl1.build(params.d.unwrap_or(3))?))
}

fn series_text(s: &[Vec<usize>]) -> String {
    s.iter().map(|l| l.iter().map(ToString::to_string).collect::<Vec<_>>().join("+")).collect::<Vec<_>>().join(" / ")
}

/// Radical layers of P(u) as drawn in the block figures, each layer sorted.
pub fn figure_series(family: Family, d: u32, u: usize) -> Vec<Vec<usize>> {
    let cycle = |start: &[usize], len: usize| -> Vec<usize> { start.iter().copied().cycle().take(len).collect() };
    let n = 1usize << d;
    let half = 1usize << (d - 1);
    let mut layers: Vec<Vec<usize>> = match (family, u) {
        (Family::Psl1, 0) => {
            let left = cycle(&[1, 0, 2, 0], n - 1);
            let right = cycle(&[2, 0, 1, 0], n - 1);
            let mut l = vec![vec![0]];
            l.extend(left.into_iter().zip(right).map(|(a, b)| vec![a, b]));
            l.push(vec![0]);
            l
        }
        (Family::Psl1, 1) => cycle(&[1, 0, 2, 0], n + 1).into_iter().map(|x| vec![x]).collect(),
        (Family::Psl1, _) => cycle(&[2, 0, 1, 0], n + 1).into_iter().map(|x| vec![x]).collect(),
        (Family::Psl2, 0) => vec![vec![0], vec![1, 2], vec![0]],
        (Family::Psl2, i) => {
            let j = 3 - i;
            // rad/soc = S0 + uniserial (j, i, j, ..., j) of length 2^(d-1) - 1
            let arm = cycle(&[j, i], half - 1);
            let mut l = vec![vec![i], vec![0, arm[0]]];
            l.extend(arm[1..].iter().map(|&x| vec![x]));
            l.push(vec![i]);
            l
        }
        (Family::A7, 0) => vec![vec![0], vec![1, 2], vec![0, 0], vec![2, 1], vec![0]],
        (Family::A7, 1) => vec![vec![1], vec![1, 0], vec![2], vec![0], vec![1]],
        (Family::A7, _) => vec![vec![2], vec![0], vec![1], vec![0], vec![2]],
    };
    layers.iter_mut().for_each(|l| l.sort());
    layers
}

fn projectives(params: &Params) -> Result<(Vec<Job>, Vec<String>)> {
    let targets: Vec<(Family, u32)> = match params.family {
        Some(Family::A7) => vec![(Family::A7, 3)],
        Some(f) => vec![(f, params.d.unwrap_or(3))],
        None => vec![(Family::Psl1, 3), (Family::Psl1, 4), (Family::Psl2, 3), (Family::Psl2, 4), (Family::A7, 3)],
    };
    let mut jobs = Vec::new();
    let mut prints = Vec::new();
    for (family, d) in targets {
        let p = Arc::new(family.build(d)?);
        prints.push(p.fingerprint());
        let tag = format!("{}_d{}", family.name(), d);
        let q = p.clone();
        jobs.push(Job::new(format!("{tag}.validate"), format!("{} satisfies the special biserial conditions", p.tag()), "all conditions hold", move || {
            let r = q.validate();
            let failed: Vec<String> = r.checks.iter().filter(|c| !c.passed).map(|c| c.name.clone()).collect();
            Ok((r.passed, if failed.is_empty() { "all conditions hold".into() } else { format!("failed: {}", failed.join(", ")) }))
        }));
        for u in 0..3 {
            let expected = figure_series(family, d, u);
            let q = p.clone();
            jobs.push(Job::new(format!("{tag}.P{u}.radical_series"), format!("radical series of P{u} for {}", p.tag()), series_text(&expected), move || {
                let m = projective_module(&q, u, f2())?;
                let mut got = m.radical_series(&q);
                got.iter_mut().for_each(|l| l.sort());
                Ok((got == expected && m.check_relations(&q).is_ok(), series_text(&got)))
            }));
        }
        if family == Family::Psl1 {
            let q = p.clone();
            let want = (1usize << d) + 1;
            jobs.push(Job::new(format!("{tag}.P1.dimension"), "dim P1 = 2^d + 1", want.to_string(), move || {
                let got = projective_module(&q, 1, f2())?.dim();
                Ok((got == want, got.to_string()))
            }));
        }
    }
    Ok((jobs, prints))
}

type EndTable = Vec<(StringWord, usize)>;

fn endk_psl1(params: &Params) -> Result<(Vec<Job>, Vec<String>)> {
    let p = psl1(params)?;
    let max_len = params.max_len.unwrap_or(9);
    let table: Arc<OnceLock<Result<EndTable>>> = Arc::new(OnceLock::new());
    let compute = {
        let p = p.clone();
        let table = table.clone();
        move || -> Result<EndTable> {
            table
                .get_or_init(|| {
                    let strings = enumerate_strings(&p, max_len);
                    let dims: Result<Vec<usize>> = par::map(&strings, |s| {
                        let m = string_module(&p, s, f2())?;
                        Ok(intertwiner_space(&p, &m, &m)?.dim())
                    })
                    .into_iter()
                    .collect();
                    Ok(strings.into_iter().zip(dims?).collect())
                })
                .clone()
        }
    };
    let compute = Arc::new(compute);
    let simples: Vec<StringWord> = (0..3).map(StringWord::trivial).collect();
    let unis: Vec<StringWord> = named::uniserial_length_four(&p).iter().map(|w| canonical_unchecked(&p, w)).collect();
    let mut jobs = Vec::new();
    let names = |p: &QuiverPresentation, ws: &[StringWord]| ws.iter().map(|w| format_word(p, w)).collect::<Vec<_>>().join(", ");

    {
        let (p, c, want) = (p.clone(), compute.clone(), simples.clone());
        jobs.push(Job::new("simples", "the three simples have End = k", "End = k for 1_0, 1_1, 1_2", move || {
            let t = c()?;
            let bad: Vec<String> = want.iter().filter(|w| !t.iter().any(|(s, e)| s == *w && *e == 1)).map(|w| format_word(&p, w)).collect();
            Ok((bad.is_empty(), if bad.is_empty() { "all End = k".into() } else { format!("End != k: {}", bad.join(", ")) }))
        }));
    }
    {
        let (p, c, want) = (p.clone(), compute.clone(), unis.clone());
        let expected = names(&p, &want);
        jobs.push(Job::new("uniserial_length_four", "the four uniserial modules of length 4 have End = k", format!("End = k for {expected}"), move || {
            let t = c()?;
            let ok: Vec<bool> = want.iter().map(|w| t.iter().any(|(s, e)| s == w && *e == 1)).collect();
            Ok((ok.iter().all(|&b| b), format!("{} of 4 with End = k", ok.iter().filter(|&&b| b).count())))
        }));
    }
    {
        let (p, c) = (p.clone(), compute.clone());
        let mut want: BTreeSet<StringWord> = unis.iter().cloned().collect();
        want.insert(StringWord::trivial(1));
        want.insert(StringWord::trivial(2));
        let expected = names(&p, &want.iter().cloned().collect::<Vec<_>>());
        jobs.push(Job::new(
            "outside_c0",
            format!("strings of length <= {max_len} with End = k and not in the component of S0"),
            expected,
            move || {
                let t = c()?;
                let c0 = arquiver::component_strings(&p, &StringWord::trivial(0), max_len + 8);
                let got: BTreeSet<StringWord> = t.iter().filter(|(s, e)| *e == 1 && !c0.contains(s)).map(|(s, _)| s.clone()).collect();
                Ok((got == want, names(&p, &got.into_iter().collect::<Vec<_>>())))
            },
        ));
    }
    {
        let (p, c) = (p.clone(), compute.clone());
        jobs.push(Job::new("inside_c0", "End = k strings inside the component of S0 (census)", "at least one, S0 among them", move || {
            let t = c()?;
            let c0 = arquiver::component_strings(&p, &StringWord::trivial(0), max_len + 8);
            let inside: Vec<&StringWord> = t.iter().filter(|(s, e)| *e == 1 && c0.contains(s)).map(|(s, _)| s).collect();
            let total = t.iter().filter(|(_, e)| *e == 1).count();
            Ok((inside.contains(&&StringWord::trivial(0)), format!("{} of {} End = k strings ({} strings scanned)", inside.len(), total, t.len())))
        }));
    }
    {
        let p = p.clone();
        jobs.push(Job::new("uniserial_length_five", "End of the length-5 uniserial S_{2,1,1}", "dim End >= 2", move || {
            let m = string_module(&p, &named::s(&p, 2, 1, 1)?, f2())?;
            let e = intertwiner_space(&p, &m, &m)?.dim();
            Ok((e >= 2, format!("dim End = {e}")))
        }));
    }
    Ok((jobs, vec![p.fingerprint()]))
}

fn stable_and_ext(p: &QuiverPresentation, w: &StringWord) -> Result<(usize, usize)> {
    let m = string_module(p, w, f2())?;
    let st = stable_end_dim(p, &m)?;
    let ext = homology::ext1_dim(p, &m, &m)?;
    Ok((st, ext))
}

fn psl1_endos0(params: &Params) -> Result<(Vec<Job>, Vec<String>)> {
    let p = psl1(params)?;
    let mut jobs = Vec::new();
    for primed in [false, true] {
        for k in 1..=3 {
            for n in 1..=3 {
                let w = named::a(&p, k, n, primed)?;
                let label = format!("A{}_{k}_{n}", if primed { "'" } else { "" });
                let q = p.clone();
                jobs.push(Job::new(
                    label.clone(),
                    format!("{label} = M({}) has stable End k and no self-extensions", format_word(&p, &w)),
                    "stable End = 1, Ext1 = 0",
                    move || {
                        let (st, ext) = stable_and_ext(&q, &w)?;
                        Ok((st == 1 && ext == 0, format!("stable End = {st}, Ext1 = {ext}")))
                    },
                ));
            }
        }
    }
    let q = p.clone();
    jobs.push(Job::new("S0", "S0 has stable End k and no self-extensions", "stable End = 1, Ext1 = 0", move || {
        let (st, ext) = stable_and_ext(&q, &StringWord::trivial(0))?;
        Ok((st == 1 && ext == 0, format!("stable End = {st}, Ext1 = {ext}")))
    }));
    Ok((jobs, vec![p.fingerprint()]))
}

fn psl1_tube(params: &Params) -> Result<(Vec<Job>, Vec<String>)> {
    let p = psl1(params)?;
    let radius = params.radius.unwrap_or(6);
    let seed = params.seed();
    let mut jobs = Vec::new();
    for i in 1..=2usize {
        let q = p.clone();
        jobs.push(Job::new(format!("S{i}.component_type"), format!("component of S{i}"), format!("tube(3) with S{i} on the boundary"), move || {
            let s = StringWord::trivial(i);
            let view = ComponentView::explore(&q, &s, radius)?;
            let on_boundary = view.boundary.contains(&format_word(&q, &s));
            Ok((view.classification == Classification::Tube { rank: 3 } && on_boundary, format!("{}, boundary: {on_boundary}", view.classification)))
        }));
        let q = p.clone();
        jobs.push(Job::new(format!("S{i}.omega3"), format!("Omega^3(S{i}) is isomorphic to S{i}"), "isomorphic", move || {
            let s = string_module(&q, &StringWord::trivial(i), f2())?;
            let o3 = homology::omega_power(&q, &s, 3)?;
            let v = is_isomorphic(&q, &o3, &s, seed)?;
            Ok((v.isomorphic, if v.isomorphic { "isomorphic".into() } else { format!("not isomorphic (dim {})", o3.dim()) }))
        }));
        let q = p.clone();
        jobs.push(Job::new(format!("S{i}.omega2"), format!("Omega^2(S{i}) is isomorphic to P{i}/soc P{i}"), "isomorphic", move || {
            let s = string_module(&q, &StringWord::trivial(i), f2())?;
            let o2 = homology::omega_power(&q, &s, 2)?;
            let pm = projective_module(&q, i, f2())?;
            let (quot, _) = pm.quotient(&q, &pm.socle_space(&q));
            let v = is_isomorphic(&q, &o2, &quot, seed)?;
            Ok((v.isomorphic, format!("{} (dims {} vs {})", if v.isomorphic { "isomorphic" } else { "not isomorphic" }, o2.dim(), quot.dim())))
        }));
    }
    for l in 1..=3 {
        let q = p.clone();
        jobs.push(Job::new(format!("X{l}_1.stable_end"), format!("off-boundary tube member X_{{{l},1}}"), "stable End >= 2", move || {
            let w = named::x(&q, l, 1)?;
            let st = stable_end_dim(&q, &string_module(&q, &w, f2())?)?;
            Ok((st >= 2, format!("M({}): stable End = {st}", format_word(&q, &w))))
        }));
    }
    Ok((jobs, vec![p.fingerprint()]))
}

fn psl1_uniserial(params: &Params) -> Result<(Vec<Job>, Vec<String>)> {
    let ds: Vec<u32> = match params.d {
        Some(d) => vec![d],
        None => vec![3, 4],
    };
    let mut jobs = Vec::new();
    let mut prints = Vec::new();
    for d in ds {
        let p = Arc::new(Family::Psl1.build(d)?);
        prints.push(p.fingerprint());
        for w in named::uniserial_length_four(&p) {
            let q = p.clone();
            let text = format_word(&p, &w);
            jobs.push(Job::new(format!("d{d}.{}.stable_end_ext", text.replace(' ', "_")), format!("uniserial M({text}) of length 4"), "stable End = 1, Ext1 = 1", move || {
                let (st, ext) = stable_and_ext(&q, &w)?;
                Ok((st == 1 && ext == 1, format!("stable End = {st}, Ext1 = {ext}")))
            }));
        }
        let n = 1usize << (d - 2);
        for (label, text, i, j) in [("Y1", "be- de- et-", 1usize, 2usize), ("Y2", "et- ga- be-", 2, 1)] {
            let q = p.clone();
            let expected_series: Vec<usize> = [i, 0, j, 0].iter().copied().cycle().take(4 * n).collect();
            let want = format!("k[t]/(t^{n})");
            jobs.push(Job::new(
                format!("d{d}.{label}.udr"),
                format!("universal mod-2 deformation of {label} = M({text})"),
                format!("{want}, lift series {:?}, truncation nilpotency {}", expected_series, n - 1),
                move || {
                    let y = string_module(&q, &parse_word(&q, text)?, f2())?;
                    let r = mod2defo::verify_uniserial_udr(&q, &y)?;
                    let ok = r.verdict.as_deref() == Some(want.as_str()) && r.lift_series == expected_series && r.truncation_nilpotency == Some(n - 1);
                    Ok((ok, format!("{}, lift series {:?}, truncation nilpotency {:?}", r.verdict.clone().unwrap_or_else(|| "none".into()), r.lift_series, r.truncation_nilpotency)))
                },
            ));
        }
    }
    Ok((jobs, prints))
}

fn bands_psl1(params: &Params) -> Result<(Vec<Job>, Vec<String>)> {
    let p = psl1(params)?;
    let max_len = params.max_len.unwrap_or(12);
    let field = FieldSpec::new(params.field_ext.unwrap_or(2))?;
    let bands = enumerate_bands(&p, max_len);
    let mut jobs = Vec::new();
    for (idx, b) in bands.iter().enumerate() {
        let (q, band) = (p.clone(), b.clone());
        let text = format_word(&p, &b.word);
        jobs.push(Job::new(format!("m1.{idx:03}"), format!("band {text}, every lambda, m = 1"), "stable End >= 2", move || {
            let mut dims = Vec::new();
            for lambda in field.field().units() {
                dims.push(stable_end_dim(&q, &band_module(&q, &band, lambda, 1, field)?)?);
            }
            Ok((dims.iter().all(|&x| x >= 2), format!("stable End dims {dims:?}")))
        }));
    }
    for (idx, b) in bands.iter().take(3).enumerate() {
        let (q, band) = (p.clone(), b.clone());
        let text = format_word(&p, &b.word);
        jobs.push(Job::new(format!("m2.{idx:03}"), format!("band {text}, lambda = 1, m = 2"), "stable End >= 2", move || {
            let st = stable_end_dim(&q, &band_module(&q, &band, 1, 2, field)?)?;
            Ok((st >= 2, format!("stable End = {st}")))
        }));
    }
    let count = bands.len();
    jobs.push(Job::new("census", format!("bands of length <= {max_len}"), "at least one band", move || Ok((count > 0, format!("{count} bands")))));
    Ok((jobs, vec![p.fingerprint()]))
}

fn classify_rest(params: &Params) -> Result<(Vec<Job>, Vec<String>)> {
    let max_len = params.max_len.unwrap_or(14);
    let seed = params.seed();
    let psl2 = Arc::new(Family::Psl2.build(params.d.unwrap_or(3))?);
    let a7 = Arc::new(Family::A7.build(3)?);
    let mut jobs = Vec::new();
    for p in [psl2.clone(), a7.clone()] {
        let q = p.clone();
        let field_ext = params.field_ext.unwrap_or(2);
        jobs.push(Job::new(
            format!("{}.classify", p.tag()),
            format!("stable End = k sweep over strings of length <= {max_len} and bands"),
            "no violations; every named component has a hit",
            move || {
                let mut opts = SweepOptions::new(max_len);
                opts.field_ext = field_ext;
                let t = arquiver::classify_with(&q, &opts)?;
                let mut groups: BTreeMap<String, usize> = BTreeMap::new();
                for r in t.hits() {
                    let g = r.component.clone().or_else(|| r.orbit.clone().map(|o| format!("orbit {o}"))).unwrap_or_else(|| "none".into());
                    *groups.entry(g).or_default() += 1;
                }
                let seeds = arquiver::family_seeds(&q);
                let covered = seeds.iter().all(|s| t.hits().any(|r| r.component.as_deref() == Some(&format!("C[{}]", s.label)) || r.orbit.as_deref() == Some(&s.label)));
                let viol = t.violations().len();
                let summary: Vec<String> = groups.iter().map(|(k, v)| format!("{k}: {v}")).collect();
                Ok((viol == 0 && covered, format!("{} rows, {viol} violations; {}", t.rows.len(), summary.join(", "))))
            },
        ));
    }
    for (label, text) in [("T01", "be"), ("T02", "ka")] {
        let q = psl2.clone();
        jobs.push(Job::new(format!("{}.{label}.tube", psl2.tag()), format!("component of {label} = M({text})"), "tube(3) with the module on the boundary", move || {
            let w = word(&q, text);
            let view = ComponentView::explore(&q, &w, 6)?;
            let on = view.boundary.contains(&format_word(&q, &w));
            Ok((view.classification == Classification::Tube { rank: 3 } && on, format!("{}, boundary: {on}", view.classification)))
        }));
    }
    {
        let q = a7.clone();
        jobs.push(Job::new("a7_d3.Y01102.stable_end", "Y01102 = M(be al- ga et)", "stable End = 1, Ext1 = 1", move || {
            let (st, ext) = stable_and_ext(&q, &word(&q, "be al- ga et"))?;
            Ok((st == 1 && ext == 1, format!("stable End = {st}, Ext1 = {ext}")))
        }));
        let q = a7.clone();
        jobs.push(Job::new("a7_d3.Y01102.middle_term", "P(T1) + P(T2)/soc is a non-split self-extension of Y01102", "non-split extension found", move || {
            let y = string_module(&q, &parse_word(&q, "be al- ga et")?, f2())?;
            let x = mod2defo::a7_middle_term(&q, f2())?;
            let ok = mod2defo::verify_middle_term(&q, &y, &x, seed)?;
            Ok((ok, if ok { "non-split extension found".into() } else { "no such extension".into() }))
        }));
        let q = a7.clone();
        jobs.push(Job::new("a7_d3.Y01102.split_rejected", "Y01102 + Y01102 is rejected as a middle term", "rejected", move || {
            let y = string_module(&q, &parse_word(&q, "be al- ga et")?, f2())?;
            let ok = !mod2defo::verify_middle_term(&q, &y, &y.direct_sum(&y)?, seed)?;
            Ok((ok, if ok { "rejected".into() } else { "accepted".into() }))
        }));
    }
    Ok((jobs, vec![psl2.fingerprint(), a7.fingerprint()]))
}

fn witt(params: &Params) -> Result<(Vec<Job>, Vec<String>)> {
    let ds: Vec<u32> = match params.d {
        Some(d) => vec![d],
        None => (3..=12).collect(),
    };
    let mut jobs = Vec::new();
    for d in ds {
        let q = 1usize << (d - 2);
        jobs.push(Job::new(
            format!("d{d:02}"),
            format!("p_{d} and the group-ring identities in Z[C_{}]", 2 * q),
            format!("degree {}, mod 2 = t^{}, rho and theta hold, ranks ({}, {}, {}), ring k[t]/(t^{q})", q - 1, q - 1, q + 1, q - 1, q),
            move || {
                let r = wittrings::witt_report(d)?;
                let ranks: Vec<String> = r.lattices.iter().map(|l| l.rank.to_string()).collect();
                Ok((
                    r.passed(),
                    format!(
                        "degree {}, mod 2 = {}, rho {}, theta {}, ranks ({}), ring {}",
                        r.degree,
                        r.mod2_image,
                        r.rho.passed(),
                        r.theta_ok,
                        ranks.join(", "),
                        r.mod2_presentation.ring
                    ),
                ))
            },
        ));
    }
    Ok((jobs, Vec::new()))
}

fn krause_pair(p: &QuiverPresentation, s: &StringWord, t: &StringWord) -> Result<(usize, usize)> {
    let comb = hom_basis_string(p, s, t, f2())?.dim();
    let solve = intertwiner_space(p, &string_module(p, s, f2())?, &string_module(p, t, f2())?)?.dim();
    Ok((comb, solve))
}

fn krause(params: &Params) -> Result<(Vec<Job>, Vec<String>)> {
    let p1 = Arc::new(Family::Psl1.build(3)?);
    let total = params.max_len.unwrap_or(12);
    let seed = params.seed();
    let mut jobs = Vec::new();
    let strings = Arc::new(enumerate_strings(&p1, total.saturating_sub(2)));
    for a in 0..=total.saturating_sub(2) {
        let (q, all) = (p1.clone(), strings.clone());
        jobs.push(Job::new(
            format!("psl1_d3.len{a:02}"),
            format!("all pairs (S, T) with len S = {a} and dim M(S) + dim M(T) <= {total}"),
            "combinatorial basis size = solver dimension",
            move || {
                let lefts: Vec<&StringWord> = all.iter().filter(|s| s.len() == a).collect();
                let mut pairs = 0usize;
                let mut bad = Vec::new();
                for s in lefts {
                    for t in all.iter().filter(|t| s.len() + t.len() + 2 <= total) {
                        let (c, v) = krause_pair(&q, s, t)?;
                        pairs += 1;
                        if c != v {
                            bad.push(format!("({}, {}): {c} vs {v}", format_word(&q, s), format_word(&q, t)));
                        }
                    }
                }
                Ok((bad.is_empty(), if bad.is_empty() { format!("{pairs} pairs agree") } else { format!("{} mismatches, first {}", bad.len(), bad[0]) }))
            },
        ));
    }
    let mut prints = vec![p1.fingerprint()];
    for (k, family) in [Family::Psl2, Family::A7].into_iter().enumerate() {
        let p = Arc::new(family.build(3)?);
        prints.push(p.fingerprint());
        let pool = enumerate_strings(&p, 11);
        for batch in 0..4u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((k as u64) << 32) ^ batch);
            let pairs: Vec<(StringWord, StringWord)> = (0..50).map(|_| (pool.choose(&mut rng).unwrap().clone(), pool.choose(&mut rng).unwrap().clone())).collect();
            let q = p.clone();
            jobs.push(Job::new(format!("{}.random{batch}", p.tag()), "50 seeded random pairs of strings of length <= 11", "combinatorial basis size = solver dimension", move || {
                let mut bad = Vec::new();
                for (s, t) in &pairs {
                    let (c, v) = krause_pair(&q, s, t)?;
                    if c != v {
                        bad.push(format!("({}, {}): {c} vs {v}", format_word(&q, s), format_word(&q, t)));
                    }
                }
                Ok((bad.is_empty(), if bad.is_empty() { format!("{} pairs agree", pairs.len()) } else { format!("{} mismatches, first {}", bad.len(), bad[0]) }))
            }));
        }
    }
    Ok((jobs, prints))
}
