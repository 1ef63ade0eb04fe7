//! Stable Auslander-Reiten components of string modules.
//!
//! Neighbours come from hooks and cohooks (`strings::ar_neighbors`), the
//! translate from `tau_string`, and syzygies from `omega_string`. The sweep in
//! `classify_stable_k` records End, stable End and Ext^1 of every string and
//! band module up to a length bound and sorts the stable-End-k hits into the
//! components they belong to.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::field::FieldSpec;
use crate::homology::{self, omega_string};
use crate::presentations::{Family, QuiverPresentation};
use crate::repmod::{band_module, projective_basis, string_module, Representation};
use crate::strings::{self, canonical_unchecked, enumerate_bands, format_word, parse_word, tau_string, Band, StringWord};
use crate::{par, Error, Result, FORMAT_VERSION};

pub use crate::strings::{ar_neighbors, ArNeighbors};

/// Shape of a stable AR component as far as it was explored.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Classification {
    Tube { rank: usize },
    /// No τ-period up to `bound` and dimensions grow along the τ-orbit.
    ZaInfinityEvidence { bound: usize },
    Unknown,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Tube { rank } => write!(f, "tube({rank})"),
            Classification::ZaInfinityEvidence { bound } => write!(f, "ZA_inf_inf-evidence({bound})"),
            Classification::Unknown => write!(f, "unknown"),
        }
    }
}

/// Dimensions of τ^k(s) for k = 0..=steps, stopping early when the orbit
/// returns to s or leaves the string modules.
fn tau_orbit(p: &QuiverPresentation, s: &StringWord, steps: usize) -> (Vec<usize>, Option<usize>) {
    let start = canonical_unchecked(p, s);
    let mut dims = vec![start.len() + 1];
    let mut cur = start.clone();
    for k in 1..=steps {
        match tau_string(p, &cur) {
            Some(t) if t == start => return (dims, Some(k)),
            Some(t) => {
                dims.push(t.len() + 1);
                cur = t;
            }
            None => break,
        }
    }
    (dims, None)
}

pub fn component_type(p: &QuiverPresentation, s: &StringWord, radius: usize) -> Result<Classification> {
    if radius == 0 {
        return Err(Error::InvalidParameter("radius must be at least 1".into()));
    }
    ar_neighbors(p, s)?;
    let (dims, period) = tau_orbit(p, s, radius);
    if let Some(r) = period {
        return Ok(Classification::Tube { rank: r });
    }
    // each translate adds at most two hooks and two cohooks
    let slope = 2 * (0..p.vertices).map(|u| projective_basis(p, u).len()).max().unwrap_or(1);
    let complete = dims.len() == radius + 1;
    let half = radius / 2;
    let growing = complete && dims[half + 1..].iter().max() > dims[..=half].iter().max();
    let linear = growing && dims.iter().enumerate().all(|(k, &d)| d <= dims[0] + k * slope);
    Ok(if linear { Classification::ZaInfinityEvidence { bound: radius } } else { Classification::Unknown })
}

/// Forward Ω-orbit of a string: s, Ωs, Ω²s, ... until it repeats, hits a
/// projective, passes `max_len`, or `steps` syzygies were taken.
pub fn omega_orbit(p: &QuiverPresentation, s: &StringWord, steps: usize, max_len: usize) -> Result<Vec<StringWord>> {
    let mut out = vec![canonical_unchecked(p, s)];
    let mut seen: HashSet<StringWord> = out.iter().cloned().collect();
    for _ in 0..steps {
        let Some(next) = omega_string(p, out.last().unwrap())? else { break };
        if next.len() > max_len || !seen.insert(next.clone()) {
            break;
        }
        out.push(next);
    }
    Ok(out)
}

/// Ω-period of s, if Ω^r(s) = s for some r <= steps.
pub fn omega_period(p: &QuiverPresentation, s: &StringWord, steps: usize) -> Result<Option<usize>> {
    let start = canonical_unchecked(p, s);
    let mut cur = start.clone();
    for r in 1..=steps {
        match omega_string(p, &cur)? {
            Some(w) if w == start => return Ok(Some(r)),
            Some(w) => cur = w,
            None => return Ok(None),
        }
    }
    Ok(None)
}

fn successors(p: &QuiverPresentation, s: &StringWord) -> (Vec<StringWord>, Vec<StringWord>) {
    match ar_neighbors(p, s) {
        Ok(n) => {
            let mut outs: Vec<StringWord> = [n.h_right, n.h_left].into_iter().flatten().collect();
            let mut ins: Vec<StringWord> = [n.c_right, n.c_left].into_iter().flatten().collect();
            outs.sort_by(strings::word_cmp);
            outs.dedup();
            ins.sort_by(strings::word_cmp);
            ins.dedup();
            (outs, ins)
        }
        Err(_) => (Vec::new(), Vec::new()),
    }
}

/// All strings of length <= `max_len` reachable from `seed` through
/// irreducible maps between strings of length <= `max_len`.
pub fn component_strings(p: &QuiverPresentation, seed: &StringWord, max_len: usize) -> BTreeSet<StringWord> {
    let start = canonical_unchecked(p, seed);
    let mut seen = BTreeSet::new();
    if start.len() > max_len || strings::is_projective_string(p, &start) {
        return seen;
    }
    let mut queue = VecDeque::from([start.clone()]);
    seen.insert(start);
    while let Some(s) = queue.pop_front() {
        let (outs, ins) = successors(p, &s);
        for t in outs.into_iter().chain(ins) {
            if t.len() <= max_len && seen.insert(t.clone()) {
                queue.push_back(t);
            }
        }
    }
    seen
}

/// A neighbourhood of a string in its stable AR component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentView {
    pub center: String,
    pub radius: usize,
    pub nodes: Vec<String>,
    /// Irreducible maps (source, target) between nodes.
    pub edges: Vec<(String, String)>,
    /// Nodes with at most one neighbour on each side.
    pub boundary: Vec<String>,
    pub classification: Classification,
}

impl ComponentView {
    pub fn explore(p: &QuiverPresentation, center: &StringWord, radius: usize) -> Result<ComponentView> {
        let classification = component_type(p, center, radius)?;
        let start = canonical_unchecked(p, center);
        let mut dist: BTreeMap<StringWord, usize> = BTreeMap::new();
        let mut queue = VecDeque::from([start.clone()]);
        dist.insert(start, 0);
        let mut adjacency = BTreeMap::new();
        while let Some(s) = queue.pop_front() {
            let d = dist[&s];
            let (outs, ins) = successors(p, &s);
            if d < radius {
                for t in outs.iter().chain(&ins) {
                    if !dist.contains_key(t) {
                        dist.insert(t.clone(), d + 1);
                        queue.push_back(t.clone());
                    }
                }
            }
            adjacency.insert(s, (outs, ins));
        }
        let mut edges = BTreeSet::new();
        let mut boundary = Vec::new();
        for (s, (outs, ins)) in &adjacency {
            if outs.len() <= 1 && ins.len() <= 1 {
                boundary.push(s.clone());
            }
            edges.extend(outs.iter().filter(|t| dist.contains_key(*t)).map(|t| (s.clone(), t.clone())));
            edges.extend(ins.iter().filter(|t| dist.contains_key(*t)).map(|t| (t.clone(), s.clone())));
        }
        let name = |w: &StringWord| format_word(p, w);
        let mut nodes: Vec<&StringWord> = dist.keys().collect();
        nodes.sort_by(|a, b| strings::word_cmp(a, b));
        boundary.sort_by(strings::word_cmp);
        let mut edge_list: Vec<(String, String)> = edges.iter().map(|(a, b)| (name(a), name(b))).collect();
        edge_list.sort();
        Ok(ComponentView {
            center: name(&canonical_unchecked(p, center)),
            radius,
            nodes: nodes.into_iter().map(name).collect(),
            edges: edge_list,
            boundary: boundary.iter().map(name).collect(),
            classification,
        })
    }

    /// Node-link adjacency document (`directed`, `nodes`, `adjacency`).
    pub fn to_adjacency_json(&self) -> serde_json::Value {
        let index: HashMap<&str, usize> = self.nodes.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        let mut adj: Vec<Vec<serde_json::Value>> = vec![Vec::new(); self.nodes.len()];
        for (a, b) in &self.edges {
            if let (Some(&i), Some(_)) = (index.get(a.as_str()), index.get(b.as_str())) {
                adj[i].push(serde_json::json!({ "id": b }));
            }
        }
        serde_json::json!({
            "directed": true,
            "multigraph": false,
            "graph": { "center": self.center, "radius": self.radius, "classification": self.classification.to_string() },
            "nodes": self.nodes.iter().map(|n| serde_json::json!({ "id": n, "boundary": self.boundary.contains(n) })).collect::<Vec<_>>(),
            "adjacency": adj,
        })
    }
}

/// How the hits of a component are expected to look.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeedKind {
    /// Every module of the component (and of its Ω-image) has stable End k.
    Whole,
    /// Hits are exactly the Ω-orbit of the seed.
    Orbit,
}

/// A named module generating one of the components singled out in the
/// classification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seed {
    pub label: String,
    pub word: StringWord,
    pub kind: SeedKind,
}

/// Seeds for the built-in families.
pub fn family_seeds(p: &QuiverPresentation) -> Vec<Seed> {
    let w = |t: &str| canonical_unchecked(p, &parse_word(p, t).expect("fixed words"));
    let mut out = vec![Seed { label: "S0".into(), word: w("1_0"), kind: SeedKind::Whole }];
    let orbit = |label: &str, word: StringWord| Seed { label: label.into(), word, kind: SeedKind::Orbit };
    match p.family.as_ref().map(|t| t.family) {
        Some(Family::Psl1) => {
            out.push(orbit("S1", w("1_1")));
            out.push(orbit("S2", w("1_2")));
            for (i, t) in ["be- de- et-", "de- et- ga-", "et- ga- be-", "ga- be- de-"].iter().enumerate() {
                out.push(orbit(&format!("U{}", i + 1), w(t)));
            }
        }
        Some(Family::Psl2) => {
            out.push(orbit("T01", w("be")));
            out.push(orbit("T02", w("ka")));
            out.push(orbit("T12", w("de")));
            out.push(orbit("T21", w("et")));
        }
        Some(Family::A7) => {
            out.push(orbit("T1020", w("be- de- et-")));
            out.push(orbit("T2010", w("et- ga- be-")));
            out.push(orbit("S1", w("1_1")));
            out.push(orbit("Y01102", w("be al- ga et")));
        }
        None => {}
    }
    out
}

/// One row of the classification table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationRow {
    pub kind: String,
    pub word: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    pub dim: usize,
    pub dim_end: usize,
    pub dim_stable_end: usize,
    pub ext1: usize,
    pub hit: bool,
    /// Named component the module was reached from, if any.
    pub component: Option<String>,
    /// Seed whose Ω-orbit contains the module, if any.
    pub orbit: Option<String>,
    pub verdict: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentSummary {
    pub label: String,
    pub seed: String,
    pub kind: SeedKind,
    pub classification: String,
    pub omega_period: Option<usize>,
    /// Labels of components that turned out to coincide with this one.
    pub aliases: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationTable {
    pub format_version: String,
    pub presentation: String,
    pub max_len: usize,
    pub band_max_len: usize,
    pub field_extension: u32,
    pub components: Vec<ComponentSummary>,
    pub rows: Vec<ClassificationRow>,
}

impl ClassificationTable {
    pub fn hits(&self) -> impl Iterator<Item = &ClassificationRow> {
        self.rows.iter().filter(|r| r.hit)
    }

    /// Rows contradicting the expected picture.
    pub fn violations(&self) -> Vec<&ClassificationRow> {
        self.rows.iter().filter(|r| r.verdict.starts_with("violation")).collect()
    }

    pub fn to_markdown(&self) -> String {
        let mut s = format!("# Stable End = k sweep: {} (strings <= {}, bands <= {})\n\n", self.presentation, self.max_len, self.band_max_len);
        s.push_str("| component | seed | type | Omega-period |\n|---|---|---|---|\n");
        for c in &self.components {
            let per = c.omega_period.map(|r| r.to_string()).unwrap_or_else(|| "-".into());
            s.push_str(&format!("| {} | {} | {} | {} |\n", c.label, c.seed, c.classification, per));
        }
        s.push_str("\n| kind | word | lambda | m | dim | End | stable End | Ext1 | component | orbit | verdict |\n");
        s.push_str("|---|---|---|---|---|---|---|---|---|---|---|\n");
        for r in self.rows.iter().filter(|r| r.hit || r.verdict.starts_with("violation")) {
            let opt = |x: &Option<String>| x.clone().unwrap_or_else(|| "-".into());
            s.push_str(&format!(
                "| {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |\n",
                r.kind,
                r.word,
                r.lambda.map(|l| l.to_string()).unwrap_or_else(|| "-".into()),
                r.m.map(|m| m.to_string()).unwrap_or_else(|| "-".into()),
                r.dim,
                r.dim_end,
                r.dim_stable_end,
                r.ext1,
                opt(&r.component),
                opt(&r.orbit),
                r.verdict
            ));
        }
        s
    }
}

/// Knobs for `classify_stable_k`.
#[derive(Clone, Debug)]
pub struct SweepOptions {
    pub max_len: usize,
    pub band_max_len: usize,
    /// Bands get λ over GF(2^e); strings always use GF(2).
    pub field_ext: u32,
    /// Number of bands (shortest first) also scanned with m = 2.
    pub m2_bands: usize,
    /// Extra length allowed while walking components.
    pub slack: usize,
    pub sequential: bool,
}

impl SweepOptions {
    pub fn new(max_len: usize) -> SweepOptions {
        SweepOptions { max_len, band_max_len: max_len, field_ext: 2, m2_bands: 3, slack: 8, sequential: false }
    }
}

struct Dims {
    dim: usize,
    end: usize,
    stable: usize,
    ext1: usize,
}

fn module_dims(p: &QuiverPresentation, m: &Representation, om: &Representation) -> Result<Dims> {
    let end = homology::intertwiner_space(p, m, m)?.dim();
    let stable = end - homology::projective_maps(p, m, m)?.len();
    let ext1 = if om.is_zero() { 0 } else { homology::stable_hom_dim(p, om, m)? };
    Ok(Dims { dim: m.dim(), end, stable, ext1 })
}

fn string_dims(p: &QuiverPresentation, s: &StringWord) -> Result<Dims> {
    let f2 = FieldSpec::default();
    let m = string_module(p, s, f2)?;
    let om = match omega_string(p, s)? {
        Some(w) => string_module(p, &w, f2)?,
        None => Representation::zero(p, f2),
    };
    module_dims(p, &m, &om)
}

fn band_dims(p: &QuiverPresentation, b: &Band, lambda: u8, m: usize, field: FieldSpec) -> Result<Dims> {
    let bm = band_module(p, b, lambda, m, field)?;
    let om = homology::omega(p, &bm)?;
    module_dims(p, &bm, &om)
}

enum Item {
    Str(StringWord),
    Band(Band, u8, usize),
}

pub fn classify_stable_k(p: &QuiverPresentation, max_len: usize) -> Result<ClassificationTable> {
    classify_with(p, &SweepOptions::new(max_len))
}

pub fn classify_with(p: &QuiverPresentation, opts: &SweepOptions) -> Result<ClassificationTable> {
    if opts.max_len == 0 {
        return Err(Error::InvalidParameter("max_len must be at least 1".into()));
    }
    let field = FieldSpec::new(opts.field_ext)?;
    let mut items: Vec<Item> = strings::enumerate_strings(p, opts.max_len).into_iter().map(Item::Str).collect();
    let bands = enumerate_bands(p, opts.band_max_len);
    for (i, b) in bands.iter().enumerate() {
        for lambda in field.field().units() {
            items.push(Item::Band(b.clone(), lambda, 1));
            if i < opts.m2_bands {
                items.push(Item::Band(b.clone(), lambda, 2));
            }
        }
    }

    let measured: Vec<Result<Dims>> = par::map_with(&items, opts.sequential, |it| match it {
        Item::Str(s) => string_dims(p, s),
        Item::Band(b, l, m) => band_dims(p, b, *l, *m, field),
    });

    // components and orbits of the seeds
    let cap = opts.max_len + opts.slack;
    let seeds = family_seeds(p);
    let mut regions: Vec<(String, SeedKind, BTreeSet<StringWord>)> = Vec::new();
    let mut components = Vec::new();
    for seed in &seeds {
        let mut variants = vec![(seed.label.clone(), seed.word.clone())];
        if seed.kind == SeedKind::Whole {
            if let Some(o) = omega_string(p, &seed.word)? {
                variants.push((format!("Omega({})", seed.label), o));
            }
        }
        for (label, word) in variants {
            let comp_label = format!("C[{label}]");
            let classification = match component_type(p, &word, 6) {
                Ok(c) => c.to_string(),
                Err(_) => "projective".into(),
            };
            let omega_period = omega_period(p, &word, 12)?;
            if let Some(owner) = regions.iter().position(|(_, _, set)| set.contains(&word)) {
                let owner_label = regions[owner].0.clone();
                if let Some(c) = components.iter_mut().find(|c: &&mut ComponentSummary| c.label == owner_label) {
                    c.aliases.push(comp_label.clone());
                }
            }
            let set = component_strings(p, &word, cap);
            regions.push((comp_label.clone(), seed.kind, set));
            components.push(ComponentSummary {
                label: comp_label,
                seed: format_word(p, &word),
                kind: seed.kind,
                classification,
                omega_period,
                aliases: Vec::new(),
            });
        }
    }
    let orbit_sets: Vec<(String, HashSet<StringWord>)> = seeds
        .iter()
        .filter(|s| s.kind == SeedKind::Orbit)
        .map(|s| Ok((s.label.clone(), omega_orbit(p, &s.word, 64, 4 * cap)?.into_iter().collect())))
        .collect::<Result<_>>()?;

    let tags: Vec<Result<(Option<String>, Option<String>)>> = par::map_with(&items, opts.sequential, |it| {
        let Item::Str(s) = it else { return Ok((None, None)) };
        let component = regions.iter().find(|(_, _, set)| set.contains(s)).map(|(l, _, _)| l.clone());
        let mut orbit = None;
        let trail = omega_orbit(p, s, 16, 4 * cap)?;
        'outer: for w in &trail {
            for (label, set) in &orbit_sets {
                if set.contains(w) {
                    orbit = Some(label.clone());
                    break 'outer;
                }
            }
        }
        Ok((component, orbit))
    });

    let whole: HashSet<&str> = regions.iter().filter(|(_, k, _)| *k == SeedKind::Whole).map(|(l, _, _)| l.as_str()).collect();
    let mut rows = Vec::with_capacity(items.len());
    for ((it, d), t) in items.iter().zip(measured).zip(tags) {
        let d = d?;
        let (component, orbit) = t?;
        let hit = d.stable == 1;
        let in_whole = component.as_deref().is_some_and(|c| whole.contains(c));
        let verdict = match (hit, in_whole, &orbit) {
            (true, true, _) => "hit: whole component",
            (true, false, Some(_)) => "hit: omega orbit",
            (true, false, None) => "violation: unexpected hit",
            (false, true, _) => "violation: non-hit in whole component",
            (false, false, Some(_)) => "violation: orbit member without stable End k",
            (false, false, None) => "ok",
        };
        let (kind, word, lambda, m) = match it {
            Item::Str(s) => ("string", format_word(p, s), None, None),
            Item::Band(b, l, m) => ("band", format_word(p, &b.word), Some(*l), Some(*m)),
        };
        rows.push(ClassificationRow {
            kind: kind.into(),
            word,
            lambda,
            m,
            dim: d.dim,
            dim_end: d.end,
            dim_stable_end: d.stable,
            ext1: d.ext1,
            hit,
            component,
            orbit,
            verdict: verdict.into(),
        });
    }
    Ok(ClassificationTable {
        format_version: FORMAT_VERSION.into(),
        presentation: p.tag(),
        max_len: opts.max_len,
        band_max_len: opts.band_max_len,
        field_extension: opts.field_ext,
        components,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::build_psl1;

    #[test]
    fn simple_one_is_in_a_three_tube() {
        let p = build_psl1(3).unwrap();
        let s1 = StringWord::trivial(1);
        assert_eq!(component_type(&p, &s1, 6).unwrap(), Classification::Tube { rank: 3 });
        assert_eq!(omega_period(&p, &s1, 6).unwrap(), Some(3));
    }

    #[test]
    fn simple_zero_has_no_period() {
        let p = build_psl1(3).unwrap();
        let s0 = StringWord::trivial(0);
        assert_eq!(component_type(&p, &s0, 6).unwrap(), Classification::ZaInfinityEvidence { bound: 6 });
        let n = ar_neighbors(&p, &s0).unwrap();
        assert!(n.h_right.is_some() && n.h_left.is_some());
    }

    #[test]
    fn radius_zero_rejected() {
        let p = build_psl1(3).unwrap();
        assert!(component_type(&p, &StringWord::trivial(0), 0).is_err());
    }
}
