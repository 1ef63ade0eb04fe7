//! Quivers with relations for special biserial algebras, and the three
//! built-in block families.
//!
//! Paths are lists of arrow indices in application order: the composite
//! written `γβ` (first β, then γ) is stored as `[β, γ]`.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::{Error, Result, FORMAT_VERSION};

pub type Path = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Psl1,
    Psl2,
    A7,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Psl1 => "psl1",
            Family::Psl2 => "psl2",
            Family::A7 => "a7",
        }
    }

    pub fn parse(s: &str) -> Result<Family> {
        match s {
            "psl1" => Ok(Family::Psl1),
            "psl2" => Ok(Family::Psl2),
            "a7" => Ok(Family::A7),
            _ => Err(Error::InvalidParameter(format!("unknown family `{s}` (expected psl1, psl2 or a7)"))),
        }
    }

    pub fn build(self, d: u32) -> Result<QuiverPresentation> {
        match self {
            Family::Psl1 => build_psl1(d),
            Family::Psl2 => build_psl2(d),
            Family::A7 => {
                if d != 3 {
                    return Err(Error::InvalidParameter(format!("a7 has defect d = 3, got {d}")));
                }
                Ok(build_a7())
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilyTag {
    pub family: Family,
    pub d: u32,
}

/// A set of paths with fast contiguous-subpath queries.
#[derive(Clone, Debug, Default)]
pub struct PathSet {
    paths: HashSet<Path>,
    max_len: usize,
}

impl PathSet {
    pub fn new(paths: &[Path]) -> PathSet {
        PathSet { paths: paths.iter().cloned().collect(), max_len: paths.iter().map(Vec::len).max().unwrap_or(0) }
    }

    pub fn contains(&self, p: &[usize]) -> bool {
        self.paths.contains(p)
    }

    /// Does some contiguous window of `p` lie in the set?
    pub fn hits(&self, p: &[usize]) -> bool {
        for start in 0..p.len() {
            for len in 1..=self.max_len.min(p.len() - start) {
                if self.paths.contains(&p[start..start + len]) {
                    return true;
                }
            }
        }
        false
    }

    /// Does some prefix of `p` lie in the set?
    pub fn hits_prefix(&self, p: &[usize]) -> bool {
        (1..=self.max_len.min(p.len())).any(|len| self.paths.contains(&p[..len]))
    }

    /// Does some suffix of `p` lie in the set?
    pub fn hits_suffix(&self, p: &[usize]) -> bool {
        (1..=self.max_len.min(p.len())).any(|len| self.paths.contains(&p[p.len() - len..]))
    }
}

/// A special biserial presentation kQ/I together with derived string data.
#[derive(Clone, Debug)]
pub struct QuiverPresentation {
    pub vertices: usize,
    pub arrows: Vec<Arrow>,
    /// Monomial relations.
    pub forbidden_paths: Vec<Path>,
    /// Binomial relations p1 = p2 between maximal paths.
    pub socle_pairs: Vec<(Path, Path)>,
    /// Zero paths of the string algebra obtained by killing the socles of the
    /// biserial projectives.
    pub string_forbidden: Vec<Path>,
    /// Zero paths of Lambda / soc(Lambda); used for hooks and cohooks.
    pub stable_forbidden: Vec<Path>,
    pub family: Option<FamilyTag>,
    string_set: PathSet,
    stable_set: PathSet,
}

/// Drop every path that contains another member as a proper contiguous subpath.
fn minimize(paths: &[Path]) -> Vec<Path> {
    let uniq: BTreeSet<Path> = paths.iter().cloned().collect();
    let all: Vec<Path> = uniq.into_iter().collect();
    let mut out: Vec<Path> = Vec::new();
    for p in &all {
        let redundant = all.iter().any(|q| q != p && q.len() <= p.len() && p.windows(q.len()).any(|w| w == q.as_slice()));
        if !redundant {
            out.push(p.clone());
        }
    }
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    out
}

impl QuiverPresentation {
    pub fn new(
        vertices: usize,
        arrows: Vec<Arrow>,
        forbidden_paths: Vec<Path>,
        socle_pairs: Vec<(Path, Path)>,
        family: Option<FamilyTag>,
    ) -> Result<QuiverPresentation> {
        for a in &arrows {
            if a.source >= vertices || a.target >= vertices {
                return Err(Error::InvalidParameter(format!("arrow {} references a missing vertex", a.name)));
            }
        }
        for p in forbidden_paths.iter().chain(socle_pairs.iter().flat_map(|(a, b)| [a, b])) {
            if p.iter().any(|&i| i >= arrows.len()) {
                return Err(Error::InvalidParameter("relation references a missing arrow".into()));
            }
        }
        let mut sf = forbidden_paths.clone();
        for (a, b) in &socle_pairs {
            sf.push(a.clone());
            sf.push(b.clone());
        }
        let string_forbidden = minimize(&sf);
        let mut p = QuiverPresentation {
            vertices,
            arrows,
            forbidden_paths,
            socle_pairs,
            string_set: PathSet::new(&string_forbidden),
            string_forbidden,
            stable_forbidden: Vec::new(),
            stable_set: PathSet::default(),
            family,
        };
        let mut st = p.string_forbidden.clone();
        for u in 0..vertices {
            if p.socle_pair_at(u).is_none() {
                if let Some(full) = p.uniserial_path(u) {
                    st.push(full);
                }
            }
        }
        p.stable_forbidden = minimize(&st);
        p.stable_set = PathSet::new(&p.stable_forbidden);
        Ok(p)
    }

    pub fn tag(&self) -> String {
        match self.family {
            Some(FamilyTag { family: Family::A7, .. }) => "a7".to_string(),
            Some(t) => format!("{}(d={})", t.family.name(), t.d),
            None => "custom".to_string(),
        }
    }

    pub fn d(&self) -> Option<u32> {
        self.family.map(|t| t.d)
    }

    pub fn string_set(&self) -> &PathSet {
        &self.string_set
    }

    pub fn stable_set(&self) -> &PathSet {
        &self.stable_set
    }

    pub fn arrow_index(&self, name: &str) -> Result<usize> {
        self.arrows.iter().position(|a| a.name == name).ok_or_else(|| Error::UnknownArrow(name.to_string()))
    }

    pub fn out_arrows(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&i| self.arrows[i].source == v).collect()
    }

    pub fn in_arrows(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&i| self.arrows[i].target == v).collect()
    }

    pub fn is_composable(&self, p: &[usize]) -> bool {
        p.windows(2).all(|w| self.arrows[w[0]].target == self.arrows[w[1]].source)
    }

    pub fn path_source(&self, p: &[usize]) -> usize {
        self.arrows[p[0]].source
    }

    pub fn path_target(&self, p: &[usize]) -> usize {
        self.arrows[*p.last().unwrap()].target
    }

    /// Space-separated arrow names in application order.
    pub fn path_text(&self, p: &[usize]) -> String {
        p.iter().map(|&i| self.arrows[i].name.as_str()).collect::<Vec<_>>().join(" ")
    }

    /// The socle pair whose paths start at `u`, if any.
    pub fn socle_pair_at(&self, u: usize) -> Option<&(Path, Path)> {
        self.socle_pairs.iter().find(|(a, _)| self.path_source(a) == u)
    }

    pub fn is_socle_member(&self, p: &[usize]) -> bool {
        self.socle_pairs.iter().any(|(a, b)| a == p || b == p)
    }

    /// Directed paths from `u` avoiding `set`, in breadth-first order.
    pub fn paths_from(&self, u: usize, set: &PathSet) -> Vec<Path> {
        let mut out = Vec::new();
        let mut frontier: Vec<Path> = vec![vec![]];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for p in &frontier {
                let end = if p.is_empty() { u } else { self.path_target(p) };
                for a in self.out_arrows(end) {
                    let mut q = p.clone();
                    q.push(a);
                    if !set.hits_suffix(&q) {
                        next.push(q);
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
            if out.len() > 1 << 16 {
                break;
            }
        }
        out
    }

    /// Maximal directed paths from `u` in the string algebra.
    pub fn maximal_paths(&self, u: usize, set: &PathSet) -> Vec<Path> {
        let mut all = self.paths_from(u, set);
        all.insert(0, vec![]);
        all.into_iter()
            .filter(|p| {
                let end = if p.is_empty() { u } else { self.path_target(p) };
                self.out_arrows(end).into_iter().all(|a| {
                    let mut q = p.clone();
                    q.push(a);
                    set.hits_suffix(&q)
                })
            })
            .collect()
    }

    /// For a vertex without a socle pair, the unique maximal nonzero path.
    pub fn uniserial_path(&self, u: usize) -> Option<Path> {
        let m = self.maximal_paths(u, &self.string_set);
        if m.len() == 1 && !m[0].is_empty() {
            Some(m[0].clone())
        } else {
            None
        }
    }

    /// The arms of P(u): full top-to-socle paths, one per arrow leaving `u`.
    pub fn arms(&self, u: usize) -> Vec<Path> {
        if let Some((a, b)) = self.socle_pair_at(u) {
            let mut v = vec![a.clone(), b.clone()];
            v.sort();
            v
        } else {
            self.uniserial_path(u).into_iter().collect()
        }
    }

    /// Check that the string-algebra paths from each vertex reproduce the
    /// arms of the projective indecomposables.
    pub fn check_projective_arms(&self) -> std::result::Result<(), String> {
        for u in 0..self.vertices {
            let maximal = self.maximal_paths(u, &self.string_set);
            if let Some((a, b)) = self.socle_pair_at(u) {
                let mut expected = vec![a[..a.len() - 1].to_vec(), b[..b.len() - 1].to_vec()];
                expected.retain(|p| !p.is_empty());
                let mut got: Vec<Path> = maximal.into_iter().filter(|p| !p.is_empty()).collect();
                expected.sort();
                got.sort();
                if expected != got {
                    return Err(format!("vertex {u}: maximal paths {got:?} do not match arms {expected:?}"));
                }
            } else if maximal.len() != 1 {
                return Err(format!("vertex {u}: uniserial projective expected, found {} maximal paths", maximal.len()));
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> ValidationReport {
        let mut checks = Vec::new();
        let mut witness = None;
        for v in 0..self.vertices {
            let (o, i) = (self.out_arrows(v).len(), self.in_arrows(v).len());
            if o > 2 || i > 2 {
                witness = Some(format!("vertex {v} has {o} outgoing and {i} incoming arrows"));
                break;
            }
        }
        checks.push(ValidationCheck::new("at_most_two_arrows", witness));

        let mut witness = None;
        'outer: for b in 0..self.arrows.len() {
            let after: Vec<usize> = self
                .out_arrows(self.arrows[b].target)
                .into_iter()
                .filter(|&g| !self.string_set.hits(&[b, g]))
                .collect();
            let before: Vec<usize> = self
                .in_arrows(self.arrows[b].source)
                .into_iter()
                .filter(|&a| !self.string_set.hits(&[a, b]))
                .collect();
            if after.len() > 1 || before.len() > 1 {
                witness = Some(format!("arrow {} has {} continuations and {} predecessors", self.arrows[b].name, after.len(), before.len()));
                break 'outer;
            }
        }
        checks.push(ValidationCheck::new("unique_continuation", witness));

        let witness = self
            .forbidden_paths
            .iter()
            .chain(self.socle_pairs.iter().flat_map(|(a, b)| [a, b]))
            .find(|p| p.is_empty() || !self.is_composable(p))
            .map(|p| format!("relation [{}] is not a composable path", self.path_text(p)));
        checks.push(ValidationCheck::new("relations_composable", witness));

        let witness = self
            .forbidden_paths
            .iter()
            .chain(self.socle_pairs.iter().flat_map(|(a, b)| [a, b]))
            .find(|p| !self.string_set.hits(p))
            .map(|p| format!("[{}] survives in the string algebra", self.path_text(p)));
        checks.push(ValidationCheck::new("string_forbidden_covers_relations", witness));

        let witness = self
            .socle_pairs
            .iter()
            .find(|(a, b)| {
                self.path_source(a) != self.path_source(b)
                    || self.path_target(a) != self.path_target(b)
                    || a.first() == b.first()
                    || a.last() == b.last()
            })
            .map(|(a, b)| format!("socle pair [{}] / [{}] is not a pair of parallel arms", self.path_text(a), self.path_text(b)));
        checks.push(ValidationCheck::new("socle_pairs_parallel", witness));

        checks.push(ValidationCheck::new("projective_arms", self.check_projective_arms().err()));

        let passed = checks.iter().all(|c| c.passed);
        ValidationReport { presentation: self.tag(), checks, passed }
    }

    pub fn to_document(&self) -> PresentationDoc {
        PresentationDoc {
            version: FORMAT_VERSION.to_string(),
            vertices: (0..self.vertices).collect(),
            arrows: self.arrows.clone(),
            forbidden_paths: self.forbidden_paths.iter().map(|p| self.names(p)).collect(),
            socle_pairs: self.socle_pairs.iter().map(|(a, b)| [self.names(a), self.names(b)]).collect(),
            string_forbidden: self.string_forbidden.iter().map(|p| self.names(p)).collect(),
            family_tag: self.family,
        }
    }

    pub fn from_document(doc: &PresentationDoc) -> Result<QuiverPresentation> {
        let resolve = |names: &Vec<String>| -> Result<Path> {
            names
                .iter()
                .map(|n| doc.arrows.iter().position(|a| &a.name == n).ok_or_else(|| Error::UnknownArrow(n.clone())))
                .collect()
        };
        let forbidden = doc.forbidden_paths.iter().map(resolve).collect::<Result<Vec<_>>>()?;
        let pairs = doc
            .socle_pairs
            .iter()
            .map(|[a, b]| Ok((resolve(a)?, resolve(b)?)))
            .collect::<Result<Vec<_>>>()?;
        QuiverPresentation::new(doc.vertices.len(), doc.arrows.clone(), forbidden, pairs, doc.family_tag)
    }

    fn names(&self, p: &[usize]) -> Vec<String> {
        p.iter().map(|&i| self.arrows[i].name.clone()).collect()
    }

    /// Stable fingerprint of the presentation document.
    pub fn fingerprint(&self) -> String {
        let json = serde_json::to_string(&self.to_document()).expect("serializable");
        format!("{:016x}", crate::fnv1a(json.as_bytes()))
    }
}

/// Versioned JSON interchange form of a presentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationDoc {
    pub version: String,
    pub vertices: Vec<usize>,
    pub arrows: Vec<Arrow>,
    pub forbidden_paths: Vec<Vec<String>>,
    pub socle_pairs: Vec<[Vec<String>; 2]>,
    pub string_forbidden: Vec<Vec<String>>,
    pub family_tag: Option<FamilyTag>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationCheck {
    pub name: String,
    pub passed: bool,
    pub witness: Option<String>,
}

impl ValidationCheck {
    fn new(name: &str, witness: Option<String>) -> ValidationCheck {
        ValidationCheck { name: name.to_string(), passed: witness.is_none(), witness }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub presentation: String,
    pub checks: Vec<ValidationCheck>,
    pub passed: bool,
}

fn arrow(name: &str, source: usize, target: usize) -> Arrow {
    Arrow { name: name.to_string(), source, target }
}

fn repeat(p: &[usize], n: usize) -> Path {
    p.iter().copied().cycle().take(p.len() * n).collect()
}

fn check_d(d: u32) -> Result<usize> {
    if !(3..=20).contains(&d) {
        return Err(Error::InvalidParameter(format!("defect parameter d must satisfy 3 <= d <= 20, got {d}")));
    }
    Ok(1usize << (d - 2))
}

/// Blocks of PSL2(q), q = 1 mod 4, with defect groups of order 2^d.
pub fn build_psl1(d: u32) -> Result<QuiverPresentation> {
    let n = check_d(d)?;
    let (be, ga, de, et) = (0, 1, 2, 3);
    let arrows = vec![arrow("be", 1, 0), arrow("ga", 0, 1), arrow("de", 0, 2), arrow("et", 2, 0)];
    let forbidden = vec![vec![be, ga], vec![et, de]];
    let pairs = vec![(repeat(&[ga, be, de, et], n), repeat(&[de, et, ga, be], n))];
    QuiverPresentation::new(3, arrows, forbidden, pairs, Some(FamilyTag { family: Family::Psl1, d }))
}

/// Blocks of PSL2(q), q = 3 mod 4, with defect groups of order 2^d.
pub fn build_psl2(d: u32) -> Result<QuiverPresentation> {
    let n = check_d(d)?;
    let (be, ga, ka, la, de, et) = (0, 1, 2, 3, 4, 5);
    let arrows = vec![
        arrow("be", 0, 1),
        arrow("ga", 1, 0),
        arrow("ka", 0, 2),
        arrow("la", 2, 0),
        arrow("de", 1, 2),
        arrow("et", 2, 1),
    ];
    let forbidden = vec![vec![be, de], vec![de, la], vec![la, be], vec![ga, ka], vec![ka, et], vec![et, ga]];
    let pairs = vec![
        (vec![be, ga], vec![ka, la]),
        (vec![la, ka], repeat(&[et, de], n)),
        (repeat(&[de, et], n), vec![ga, be]),
    ];
    QuiverPresentation::new(3, arrows, forbidden, pairs, Some(FamilyTag { family: Family::Psl2, d }))
}

/// The principal block of A7 (defect 3).
pub fn build_a7() -> QuiverPresentation {
    let (al, be, ga, de, et) = (0, 1, 2, 3, 4);
    let arrows = vec![arrow("al", 1, 1), arrow("be", 1, 0), arrow("ga", 0, 1), arrow("de", 0, 2), arrow("et", 2, 0)];
    let forbidden = vec![vec![al, be], vec![ga, al], vec![be, ga], vec![et, de]];
    let pairs = vec![(vec![ga, be, de, et], vec![de, et, ga, be]), (vec![al, al], vec![be, de, et, ga])];
    QuiverPresentation::new(3, arrows, forbidden, pairs, Some(FamilyTag { family: Family::A7, d: 3 }))
        .expect("a7 presentation is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builders_validate() {
        for p in [build_psl1(3).unwrap(), build_psl1(4).unwrap(), build_psl2(3).unwrap(), build_psl2(5).unwrap(), build_a7()] {
            let r = p.validate();
            assert!(r.passed, "{}: {:?}", p.tag(), r.checks);
        }
    }

    #[test]
    fn parameter_errors() {
        assert!(matches!(build_psl1(2), Err(Error::InvalidParameter(_))));
        assert!(matches!(build_psl2(1), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn psl1_shape() {
        let p = build_psl1(3).unwrap();
        assert_eq!(p.arrows.len(), 4);
        assert_eq!(p.socle_pairs.len(), 1);
        assert_eq!(p.socle_pairs[0].0.len(), 8);
        assert_eq!(p.uniserial_path(1).unwrap().len(), 8);
        assert_eq!(p.arms(0).len(), 2);
    }

    #[test]
    fn three_arrows_out_fails_condition_one() {
        let arrows = vec![arrow("a", 0, 1), arrow("b", 0, 1), arrow("c", 0, 1)];
        let p = QuiverPresentation::new(2, arrows, vec![], vec![], None).unwrap();
        let r = p.validate();
        assert!(!r.passed);
        let c = &r.checks[0];
        assert!(!c.passed);
        assert!(c.witness.as_ref().unwrap().contains("vertex 0"));
    }

    #[test]
    fn document_roundtrip() {
        let p = build_psl2(4).unwrap();
        let doc = p.to_document();
        let json = serde_json::to_string(&doc).unwrap();
        let back: PresentationDoc = serde_json::from_str(&json).unwrap();
        let q = QuiverPresentation::from_document(&back).unwrap();
        assert_eq!(q.string_forbidden, p.string_forbidden);
        assert_eq!(q.fingerprint(), p.fingerprint());
    }
}
