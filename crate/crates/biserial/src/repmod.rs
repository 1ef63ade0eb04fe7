//! Explicit representations over GF(2^e): string, band and projective
//! modules, subquotients, and radical/socle structure.

use serde::{Deserialize, Serialize};

use crate::field::{Field, FieldSpec};
use crate::linalg::{self, Mat};
use crate::presentations::{Path, QuiverPresentation};
use crate::strings::{self, direct_rotation, format_word, Band, StringWord};
use crate::{Error, Result, FORMAT_VERSION};

/// Where a representation came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    String { word: String },
    Band { word: String, lambda: u8, m: usize },
    Projective { vertex: usize },
    /// Ω^power of a module with the given provenance.
    Syzygy { of: Box<Provenance>, power: usize },
    Abstract { note: String },
}

/// Per-vertex subspaces, each a list of local coordinate vectors.
pub type Graded = Vec<Vec<Vec<u8>>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    pub field: FieldSpec,
    pub dims: Vec<usize>,
    /// One matrix per arrow, `dims[target] x dims[source]`.
    pub maps: Vec<Mat>,
    pub provenance: Provenance,
}

impl Representation {
    pub fn zero(p: &QuiverPresentation, field: FieldSpec) -> Representation {
        let dims = vec![0; p.vertices];
        let maps = p.arrows.iter().map(|_| Mat::zeros(0, 0)).collect();
        Representation { field, dims, maps, provenance: Provenance::Abstract { note: "zero".into() } }
    }

    pub fn f(&self) -> &'static Field {
        self.field.field()
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn dimension_vector(&self) -> Vec<usize> {
        self.dims.clone()
    }

    pub fn offsets(&self) -> Vec<usize> {
        let mut off = Vec::with_capacity(self.dims.len() + 1);
        let mut acc = 0;
        for &d in &self.dims {
            off.push(acc);
            acc += d;
        }
        off.push(acc);
        off
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Representation {
        self.provenance = provenance;
        self
    }

    /// Matrix of a path (application order) from its source space to its target space.
    pub fn path_map(&self, p: &QuiverPresentation, path: &[usize]) -> Mat {
        let f = self.f();
        let mut m = Mat::identity(self.dims[p.arrows[path[0]].source]);
        for &a in path {
            m = self.maps[a].mul(f, &m);
        }
        m
    }

    /// Every monomial relation vanishes and every socle pair agrees.
    pub fn check_relations(&self, p: &QuiverPresentation) -> std::result::Result<(), String> {
        for (a, arrow) in p.arrows.iter().enumerate() {
            let m = &self.maps[a];
            if m.rows != self.dims[arrow.target] || m.cols != self.dims[arrow.source] {
                return Err(format!("arrow {} has shape {}x{}", arrow.name, m.rows, m.cols));
            }
        }
        for path in &p.forbidden_paths {
            if !self.path_map(p, path).is_zero() {
                return Err(format!("relation {} does not vanish", p.path_text(path)));
            }
        }
        for (x, y) in &p.socle_pairs {
            if self.path_map(p, x) != self.path_map(p, y) {
                return Err(format!("socle pair {} = {} fails", p.path_text(x), p.path_text(y)));
            }
        }
        Ok(())
    }

    fn full(&self) -> Graded {
        self.dims
            .iter()
            .map(|&d| {
                (0..d)
                    .map(|i| {
                        let mut v = vec![0; d];
                        v[i] = 1;
                        v
                    })
                    .collect()
            })
            .collect()
    }

    /// Sum of the arrow images of a graded subspace.
    pub fn radical_of(&self, p: &QuiverPresentation, sub: &Graded) -> Graded {
        let f = self.f();
        let mut images: Graded = vec![Vec::new(); p.vertices];
        for (a, arrow) in p.arrows.iter().enumerate() {
            for v in &sub[arrow.source] {
                let w = self.maps[a].apply(f, v);
                if w.iter().any(|&x| x != 0) {
                    images[arrow.target].push(w);
                }
            }
        }
        images.into_iter().enumerate().map(|(v, vecs)| linalg::span(f, &vecs, self.dims[v])).collect()
    }

    /// Radical layers, each as a sorted multiset of vertices.
    pub fn radical_series(&self, p: &QuiverPresentation) -> Vec<Vec<usize>> {
        let mut layers = Vec::new();
        let mut cur = self.full();
        while cur.iter().any(|s| !s.is_empty()) {
            let next = self.radical_of(p, &cur);
            let mut layer = Vec::new();
            for v in 0..p.vertices {
                layer.extend(std::iter::repeat_n(v, cur[v].len() - next[v].len()));
            }
            layers.push(layer);
            cur = next;
        }
        layers
    }

    pub fn radical(&self, p: &QuiverPresentation) -> Graded {
        self.radical_of(p, &self.full())
    }

    pub fn top(&self, p: &QuiverPresentation) -> Vec<usize> {
        let rad = self.radical(p);
        (0..p.vertices).map(|v| self.dims[v] - rad[v].len()).collect()
    }

    /// Socle: common kernel of all arrows, per vertex.
    pub fn socle_space(&self, p: &QuiverPresentation) -> Graded {
        let f = self.f();
        (0..p.vertices)
            .map(|v| {
                let outs = p.out_arrows(v);
                if outs.is_empty() || self.dims[v] == 0 {
                    return self.full()[v].clone();
                }
                let mut stacked = Mat::zeros(0, self.dims[v]);
                for a in outs {
                    stacked = stacked.vstack(&self.maps[a]);
                }
                linalg::nullspace(f, &stacked)
            })
            .collect()
    }

    pub fn socle(&self, p: &QuiverPresentation) -> Vec<usize> {
        self.socle_space(p).iter().map(Vec::len).collect()
    }

    pub fn is_uniserial(&self, p: &QuiverPresentation) -> bool {
        !self.is_zero() && self.radical_series(p).iter().all(|l| l.len() == 1)
    }

    /// Smallest submodule containing the given graded vectors.
    pub fn generated(&self, p: &QuiverPresentation, gens: &Graded) -> Graded {
        let f = self.f();
        let mut sub: Graded = gens.iter().enumerate().map(|(v, g)| linalg::span(f, g, self.dims[v])).collect();
        loop {
            let img = self.radical_of(p, &sub);
            let mut grew = false;
            for v in 0..p.vertices {
                let mut all = sub[v].clone();
                all.extend(img[v].iter().cloned());
                let s = linalg::span(f, &all, self.dims[v]);
                if s.len() > sub[v].len() {
                    grew = true;
                }
                sub[v] = s;
            }
            if !grew {
                return sub;
            }
        }
    }

    /// The submodule on a graded subspace (which must be arrow-stable).
    pub fn subrep(&self, p: &QuiverPresentation, sub: &Graded) -> Result<Representation> {
        let f = self.f();
        let dims: Vec<usize> = sub.iter().map(Vec::len).collect();
        let mut maps = Vec::with_capacity(p.arrows.len());
        for (a, arrow) in p.arrows.iter().enumerate() {
            let basis_t = Mat::from_cols(&sub[arrow.target], self.dims[arrow.target]);
            let mut m = Mat::zeros(dims[arrow.target], dims[arrow.source]);
            for (j, v) in sub[arrow.source].iter().enumerate() {
                let w = self.maps[a].apply(f, v);
                let x = linalg::solve(f, &basis_t, &w)
                    .ok_or_else(|| Error::DimensionMismatch("subspace is not a submodule".into()))?;
                for (i, &c) in x.iter().enumerate() {
                    m.set(i, j, c);
                }
            }
            maps.push(m);
        }
        Ok(Representation { field: self.field, dims, maps, provenance: Provenance::Abstract { note: "submodule".into() } })
    }

    /// The quotient by an arrow-stable graded subspace, with the projection.
    pub fn quotient(&self, p: &QuiverPresentation, sub: &Graded) -> (Representation, Vec<Mat>) {
        let f = self.f();
        let mut coords = Vec::with_capacity(p.vertices);
        let mut dims = Vec::with_capacity(p.vertices);
        let mut reps = Vec::with_capacity(p.vertices);
        for v in 0..p.vertices {
            let n = self.dims[v];
            let s = linalg::span(f, &sub[v], n);
            let comp = linalg::standard_complement(f, &s, n);
            let mut cols = s.clone();
            for &j in &comp {
                let mut e = vec![0; n];
                e[j] = 1;
                cols.push(e);
            }
            let b = Mat::from_cols(&cols, n);
            let inv = linalg::inverse(f, &b).expect("basis extension is invertible");
            let rows: Vec<usize> = (s.len()..n).collect();
            let proj = Mat::from_rows(&rows.iter().map(|&r| inv.row(r).to_vec()).collect::<Vec<_>>(), n);
            dims.push(comp.len());
            reps.push(comp);
            coords.push(proj);
        }
        let mut maps = Vec::with_capacity(p.arrows.len());
        for (a, arrow) in p.arrows.iter().enumerate() {
            let lifted = self.maps[a].select_cols(&reps[arrow.source]);
            maps.push(coords[arrow.target].mul(f, &lifted));
        }
        let q = Representation { field: self.field, dims, maps, provenance: Provenance::Abstract { note: "quotient".into() } };
        (q, coords)
    }

    pub fn direct_sum(&self, other: &Representation) -> Result<Representation> {
        if self.field != other.field || self.dims.len() != other.dims.len() {
            return Err(Error::FieldMismatch);
        }
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a.direct_sum(b)).collect();
        Ok(Representation { field: self.field, dims, maps, provenance: Provenance::Abstract { note: "direct sum".into() } })
    }

    /// Block matrix of an arrow on the concatenated vertex spaces.
    pub fn arrow_global(&self, p: &QuiverPresentation, a: usize) -> Mat {
        let off = self.offsets();
        let n = self.dim();
        let arrow = &p.arrows[a];
        let mut g = Mat::zeros(n, n);
        let m = &self.maps[a];
        for i in 0..m.rows {
            for j in 0..m.cols {
                g.set(off[arrow.target] + i, off[arrow.source] + j, m.get(i, j));
            }
        }
        g
    }

    pub fn to_document(&self, p: &QuiverPresentation) -> RepresentationDoc {
        RepresentationDoc {
            format_version: FORMAT_VERSION.to_string(),
            field_extension: self.field.e,
            dimension_vector: self.dims.clone(),
            arrows: p
                .arrows
                .iter()
                .zip(&self.maps)
                .map(|(a, m)| ArrowMatrix { arrow: a.name.clone(), rows: m.rows, cols: m.cols, hex: pack_hex(m, self.field.e) })
                .collect(),
            provenance: self.provenance.clone(),
        }
    }

    pub fn from_document(p: &QuiverPresentation, doc: &RepresentationDoc) -> Result<Representation> {
        let field = FieldSpec::new(doc.field_extension)?;
        let mut maps = vec![Mat::zeros(0, 0); p.arrows.len()];
        for am in &doc.arrows {
            let a = p.arrow_index(&am.arrow)?;
            maps[a] = unpack_hex(&am.hex, am.rows, am.cols, field.e)?;
        }
        let r = Representation { field, dims: doc.dimension_vector.clone(), maps, provenance: doc.provenance.clone() };
        r.check_relations(p).map_err(Error::Parse)?;
        Ok(r)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowMatrix {
    pub arrow: String,
    pub rows: usize,
    pub cols: usize,
    /// One string per row; four entries per hex digit over GF(2), two digits per entry otherwise.
    pub hex: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentationDoc {
    pub format_version: String,
    pub field_extension: u32,
    pub dimension_vector: Vec<usize>,
    pub arrows: Vec<ArrowMatrix>,
    pub provenance: Provenance,
}

fn pack_hex(m: &Mat, e: u32) -> Vec<String> {
    (0..m.rows)
        .map(|i| {
            let row = m.row(i);
            if e == 1 {
                row.chunks(4)
                    .map(|c| {
                        let mut nib = 0u8;
                        for (k, &b) in c.iter().enumerate() {
                            nib |= b << (3 - k);
                        }
                        format!("{nib:x}")
                    })
                    .collect()
            } else {
                row.iter().map(|b| format!("{b:02x}")).collect()
            }
        })
        .collect()
}

fn unpack_hex(rows: &[String], r: usize, c: usize, e: u32) -> Result<Mat> {
    if rows.len() != r {
        return Err(Error::Parse("row count mismatch".into()));
    }
    let mut m = Mat::zeros(r, c);
    for (i, s) in rows.iter().enumerate() {
        let digits: Vec<u8> = s
            .chars()
            .map(|ch| ch.to_digit(16).map(|d| d as u8).ok_or_else(|| Error::Parse(format!("bad hex digit {ch}"))))
            .collect::<Result<_>>()?;
        for j in 0..c {
            let v = if e == 1 {
                let d = digits.get(j / 4).ok_or_else(|| Error::Parse("short row".into()))?;
                (d >> (3 - j % 4)) & 1
            } else {
                let hi = digits.get(2 * j).ok_or_else(|| Error::Parse("short row".into()))?;
                let lo = digits.get(2 * j + 1).ok_or_else(|| Error::Parse("short row".into()))?;
                (hi << 4) | lo
            };
            m.set(i, j, v);
        }
    }
    Ok(m)
}

/// Build a representation from a global basis labelled by vertices and a list
/// of arrow actions `(arrow, from, to, coefficient)` between basis indices.
fn from_basis_action(
    p: &QuiverPresentation,
    field: FieldSpec,
    verts: &[usize],
    action: &[(usize, usize, usize, u8)],
    provenance: Provenance,
) -> Representation {
    let mut dims = vec![0; p.vertices];
    let mut local = Vec::with_capacity(verts.len());
    for &v in verts {
        local.push(dims[v]);
        dims[v] += 1;
    }
    let mut maps: Vec<Mat> = p.arrows.iter().map(|a| Mat::zeros(dims[a.target], dims[a.source])).collect();
    let f = field.field();
    for &(a, from, to, c) in action {
        let m = &mut maps[a];
        let old = m.get(local[to], local[from]);
        m.set(local[to], local[from], f.add(old, c));
    }
    Representation { field, dims, maps, provenance }
}

/// Position of each global basis vector inside its vertex space.
pub fn local_index(verts: &[usize]) -> Vec<usize> {
    let mut seen = vec![0usize; verts.iter().max().map_or(0, |m| m + 1)];
    verts
        .iter()
        .map(|&v| {
            let i = seen[v];
            seen[v] += 1;
            i
        })
        .collect()
}

/// Canonical string module on basis z_0..z_n.
pub fn string_module(p: &QuiverPresentation, s: &StringWord, field: FieldSpec) -> Result<Representation> {
    if !strings::is_valid_string(p, s) {
        return Err(Error::InvalidString(format_word(p, s)));
    }
    let verts = s.vertices(p);
    let mut action = Vec::new();
    for (k, l) in s.letters.iter().enumerate() {
        // letter w_{k+1} joins z_k and z_{k+1}
        if l.inverse {
            action.push((l.arrow, k, k + 1, 1));
        } else {
            action.push((l.arrow, k + 1, k, 1));
        }
    }
    Ok(from_basis_action(p, field, &verts, &action, Provenance::String { word: format_word(p, s) }))
}

/// Band module M(B, λ, m): the first (direct) letter acts by J_m(λ).
pub fn band_module(p: &QuiverPresentation, b: &Band, lambda: u8, m: usize, field: FieldSpec) -> Result<Representation> {
    let f = field.field();
    if lambda == 0 {
        return Err(Error::ZeroLambda);
    }
    if lambda as usize >= f.order() {
        return Err(Error::InvalidParameter(format!("lambda {lambda} outside GF(2^{})", field.e)));
    }
    if m == 0 {
        return Err(Error::InvalidParameter("band multiplicity must be positive".into()));
    }
    if !strings::is_band(p, &b.word) {
        return Err(Error::NotABand(format_word(p, &b.word)));
    }
    let w = direct_rotation(p, b);
    let n = w.len();
    let verts: Vec<usize> = (0..n).flat_map(|i| std::iter::repeat_n(w.vertex(p, i), m)).collect();
    let slot = |i: usize, r: usize| (i % n) * m + r;
    let mut action = Vec::new();
    for (k, l) in w.letters.iter().enumerate() {
        let (from, to) = if l.inverse { (k, k + 1) } else { (k + 1, k) };
        for r in 0..m {
            if k == 0 {
                // J_m(λ): λ on the diagonal, 1 above it
                action.push((l.arrow, slot(from, r), slot(to, r), lambda));
                if r + 1 < m {
                    action.push((l.arrow, slot(from, r + 1), slot(to, r), 1));
                }
            } else {
                action.push((l.arrow, slot(from, r), slot(to, r), 1));
            }
        }
    }
    let prov = Provenance::Band { word: format_word(p, &b.word), lambda, m };
    Ok(from_basis_action(p, field, &verts, &action, prov))
}

/// Basis of P(u): the trivial path, the nonzero paths of the string algebra
/// from u, and (if u has a socle pair) one socle vector, shown as `None`.
pub fn projective_basis(p: &QuiverPresentation, u: usize) -> Vec<Option<Path>> {
    let mut out: Vec<Option<Path>> = vec![Some(Vec::new())];
    let mut paths = p.paths_from(u, p.string_set());
    paths.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    out.extend(paths.into_iter().map(Some));
    if p.socle_pair_at(u).is_some() {
        out.push(None);
    }
    out
}

pub fn projective_module(p: &QuiverPresentation, u: usize, field: FieldSpec) -> Result<Representation> {
    if u >= p.vertices {
        return Err(Error::InvalidParameter(format!("vertex {u} out of range")));
    }
    let basis = projective_basis(p, u);
    let socle = basis.len() - 1;
    let index = |q: &Path| basis.iter().position(|b| b.as_ref() == Some(q));
    let mut verts = Vec::with_capacity(basis.len());
    let mut action = Vec::new();
    for (i, b) in basis.iter().enumerate() {
        let Some(path) = b else {
            verts.push(u);
            continue;
        };
        let end = if path.is_empty() { u } else { p.path_target(path) };
        verts.push(end);
        for a in p.out_arrows(end) {
            let mut q = path.clone();
            q.push(a);
            if let Some(j) = index(&q) {
                action.push((a, i, j, 1));
            } else if p.socle_pair_at(u).is_some_and(|(x, y)| *x == q || *y == q) {
                action.push((a, i, socle, 1));
            }
        }
    }
    Ok(from_basis_action(p, field, &verts, &action, Provenance::Projective { vertex: u }))
}

/// Is the representation (up to isomorphism) a direct sum of projectives?
/// For a self-injective algebra: M is projective iff dim M equals the
/// dimension of its projective cover.
pub fn is_projective(p: &QuiverPresentation, m: &Representation) -> Result<bool> {
    let top = m.top(p);
    let mut total = 0;
    for (u, &t) in top.iter().enumerate() {
        if t > 0 {
            total += t * projective_module(p, u, m.field)?.dim();
        }
    }
    Ok(total == m.dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::{build_a7, build_psl1, build_psl2};
    use crate::strings::{canonical_band, named, parse_word};

    fn f2() -> FieldSpec {
        FieldSpec::default()
    }

    #[test]
    fn psl1_projectives() {
        let p = build_psl1(3).unwrap();
        let p1 = projective_module(&p, 1, f2()).unwrap();
        assert!(p1.check_relations(&p).is_ok());
        assert_eq!(p1.dim(), 9);
        let flat: Vec<usize> = p1.radical_series(&p).into_iter().flatten().collect();
        assert_eq!(flat, vec![1, 0, 2, 0, 1, 0, 2, 0, 1]);
        let p0 = projective_module(&p, 0, f2()).unwrap();
        assert_eq!(p0.dim(), 16);
        assert_eq!(p0.radical_series(&p).len(), 9);
        assert_eq!(p0.top(&p), vec![1, 0, 0]);
        assert_eq!(p0.socle(&p), vec![1, 0, 0]);
    }

    #[test]
    fn a7_and_psl2_projectives() {
        let p = build_a7();
        let p0 = projective_module(&p, 0, f2()).unwrap();
        assert!(p0.check_relations(&p).is_ok());
        assert_eq!(p0.radical_series(&p), vec![vec![0], vec![1, 2], vec![0, 0], vec![1, 2], vec![0]]);
        let p1 = projective_module(&p, 1, f2()).unwrap();
        assert_eq!((p1.dim(), p1.top(&p), p1.socle(&p)), (6, vec![0, 1, 0], vec![0, 1, 0]));
        let q = build_psl2(3).unwrap();
        let q0 = projective_module(&q, 0, f2()).unwrap();
        assert_eq!(q0.radical_series(&q), vec![vec![0], vec![1, 2], vec![0]]);
    }

    #[test]
    fn string_and_band_modules() {
        let p = build_psl1(3).unwrap();
        let a = string_module(&p, &named::a(&p, 1, 1, false).unwrap(), f2()).unwrap();
        assert_eq!(a.dims, vec![5, 3, 2]);
        assert!(a.check_relations(&p).is_ok());
        let x1 = string_module(&p, &parse_word(&p, "be- de- et-").unwrap(), f2()).unwrap();
        assert_eq!(x1.radical_series(&p), vec![vec![1], vec![0], vec![2], vec![0]]);
        let b = canonical_band(&p, &parse_word(&p, "ga- be- et de").unwrap()).unwrap();
        let gf4 = FieldSpec::new(2).unwrap();
        let m1 = band_module(&p, &b, 1, 1, gf4).unwrap();
        assert_eq!(m1.dims, vec![2, 1, 1]);
        assert!(m1.check_relations(&p).is_ok());
        assert!(!m1.is_uniserial(&p));
        let m2 = band_module(&p, &b, 3, 2, gf4).unwrap();
        assert_eq!(m2.dim(), 8);
        assert!(m2.check_relations(&p).is_ok());
        assert_eq!(band_module(&p, &b, 0, 1, gf4), Err(Error::ZeroLambda));
    }

    #[test]
    fn quotient_and_document() {
        let p = build_psl1(3).unwrap();
        let p1 = projective_module(&p, 1, f2()).unwrap();
        let soc = p1.socle_space(&p);
        let (q, _) = p1.quotient(&p, &soc);
        assert_eq!(q.dim(), 8);
        assert!(q.check_relations(&p).is_ok());
        let doc = p1.to_document(&p);
        let json = serde_json::to_string(&doc).unwrap();
        let back = Representation::from_document(&p, &serde_json::from_str(&json).unwrap()).unwrap();
        assert_eq!(back, p1);
        assert!(is_projective(&p, &p1).unwrap());
        assert!(!is_projective(&p, &q).unwrap());
    }
}
