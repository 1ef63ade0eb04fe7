//! Words, strings and bands; hooks, cohooks and the upside-down involution.
//!
//! A word `w1 w2 ... wn` is stored in the usual left-to-right order with
//! `s(w_i) = e(w_{i+1})`. Text form: whitespace-separated arrow names, a
//! trailing `-` marks a formal inverse, and `1_<v>` is the trivial string.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::par;
use crate::presentations::{PathSet, QuiverPresentation};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub arrow: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn direct(arrow: usize) -> Letter {
        Letter { arrow, inverse: false }
    }

    pub fn inv(arrow: usize) -> Letter {
        Letter { arrow, inverse: true }
    }

    pub fn inverted(self) -> Letter {
        Letter { arrow: self.arrow, inverse: !self.inverse }
    }

    /// Ordering key: arrows in constructor order, direct before inverse.
    pub fn key(self) -> usize {
        2 * self.arrow + self.inverse as usize
    }

    pub fn s(self, p: &QuiverPresentation) -> usize {
        let a = &p.arrows[self.arrow];
        if self.inverse {
            a.target
        } else {
            a.source
        }
    }

    pub fn e(self, p: &QuiverPresentation) -> usize {
        let a = &p.arrows[self.arrow];
        if self.inverse {
            a.source
        } else {
            a.target
        }
    }
}

/// A word in the arrows and their formal inverses. `anchor` is `e(w)`, the
/// vertex of the basis vector z_0 (the vertex itself for a trivial word).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StringWord {
    pub letters: Vec<Letter>,
    pub anchor: usize,
}

impl StringWord {
    pub fn trivial(u: usize) -> StringWord {
        StringWord { letters: Vec::new(), anchor: u }
    }

    pub fn from_letters(p: &QuiverPresentation, letters: Vec<Letter>) -> StringWord {
        let anchor = letters[0].e(p);
        StringWord { letters, anchor }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.letters.is_empty()
    }

    /// Vertex of the basis vector z_i.
    pub fn vertex(&self, p: &QuiverPresentation, i: usize) -> usize {
        if i == 0 {
            self.anchor
        } else {
            self.letters[i - 1].s(p)
        }
    }

    /// `s(w)`: the vertex at the right end.
    pub fn end_vertex(&self, p: &QuiverPresentation) -> usize {
        self.vertex(p, self.letters.len())
    }

    pub fn vertices(&self, p: &QuiverPresentation) -> Vec<usize> {
        (0..=self.len()).map(|i| self.vertex(p, i)).collect()
    }

    pub fn inverse(&self, p: &QuiverPresentation) -> StringWord {
        if self.is_trivial() {
            return self.clone();
        }
        StringWord { anchor: self.end_vertex(p), letters: self.letters.iter().rev().map(|l| l.inverted()).collect() }
    }

    pub fn keys(&self) -> Vec<usize> {
        self.letters.iter().map(|l| l.key()).collect()
    }

    pub fn dimension_vector(&self, p: &QuiverPresentation) -> Vec<usize> {
        let mut dv = vec![0; p.vertices];
        for v in self.vertices(p) {
            dv[v] += 1;
        }
        dv
    }

    pub fn has_direct(&self) -> bool {
        self.letters.iter().any(|l| !l.inverse)
    }

    pub fn has_inverse(&self) -> bool {
        self.letters.iter().any(|l| l.inverse)
    }

    pub fn concat(&self, other: &StringWord) -> StringWord {
        if self.is_trivial() {
            return other.clone();
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        StringWord { letters, anchor: self.anchor }
    }
}

/// Total order used for sorting: by length, then letter keys, then anchor.
pub fn word_cmp(a: &StringWord, b: &StringWord) -> Ordering {
    (a.len(), a.keys(), a.anchor).cmp(&(b.len(), b.keys(), b.anchor))
}

impl Ord for StringWord {
    fn cmp(&self, other: &Self) -> Ordering {
        word_cmp(self, other)
    }
}

impl PartialOrd for StringWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn parse_word(p: &QuiverPresentation, text: &str) -> Result<StringWord> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    if tokens.is_empty() {
        return Err(Error::Parse("empty word".into()));
    }
    if tokens.len() == 1 {
        if let Some(v) = tokens[0].strip_prefix("1_") {
            let u: usize = v.parse().map_err(|_| Error::Parse(format!("bad vertex in `{}`", tokens[0])))?;
            if u >= p.vertices {
                return Err(Error::Parse(format!("vertex {u} out of range")));
            }
            return Ok(StringWord::trivial(u));
        }
    }
    let mut letters = Vec::with_capacity(tokens.len());
    for t in tokens {
        let (name, inverse) = match t.strip_suffix('-') {
            Some(n) => (n, true),
            None => (t, false),
        };
        letters.push(Letter { arrow: p.arrow_index(name)?, inverse });
    }
    Ok(StringWord::from_letters(p, letters))
}

pub fn format_word(p: &QuiverPresentation, w: &StringWord) -> String {
    if w.is_trivial() {
        return format!("1_{}", w.anchor);
    }
    w.letters
        .iter()
        .map(|l| format!("{}{}", p.arrows[l.arrow].name, if l.inverse { "-" } else { "" }))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Letters compose and never backtrack.
pub fn is_word(p: &QuiverPresentation, w: &StringWord) -> bool {
    if let Some(first) = w.letters.first() {
        if first.e(p) != w.anchor {
            return false;
        }
    }
    w.letters.windows(2).all(|x| x[0].s(p) == x[1].e(p) && x[0] != x[1].inverted())
}

/// Maximal runs of equal direction, each as a path in application order.
fn runs(letters: &[Letter]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < letters.len() {
        let mut j = i;
        while j + 1 < letters.len() && letters[j + 1].inverse == letters[i].inverse {
            j += 1;
        }
        let mut path: Vec<usize> = letters[i..=j].iter().map(|l| l.arrow).collect();
        if !letters[i].inverse {
            path.reverse();
        }
        out.push(path);
        i = j + 1;
    }
    out
}

pub fn is_valid_with(p: &QuiverPresentation, w: &StringWord, set: &PathSet) -> bool {
    is_word(p, w) && runs(&w.letters).iter().all(|r| !set.hits(r))
}

/// Validity as a string of the string algebra.
pub fn is_valid_string(p: &QuiverPresentation, w: &StringWord) -> bool {
    w.anchor < p.vertices && w.letters.iter().all(|l| l.arrow < p.arrows.len()) && is_valid_with(p, w, p.string_set())
}

/// Can `x` be appended on the right of the valid word `w`?
pub fn can_append(p: &QuiverPresentation, w: &StringWord, x: Letter, set: &PathSet) -> bool {
    let Some(&last) = w.letters.last() else {
        return x.e(p) == w.anchor;
    };
    if x.e(p) != last.s(p) || x == last.inverted() {
        return false;
    }
    let tail = w.letters.iter().rev().take_while(|l| l.inverse == x.inverse).count();
    let run = &w.letters[w.letters.len() - tail..];
    if x.inverse {
        let mut path: Vec<usize> = run.iter().map(|l| l.arrow).collect();
        path.push(x.arrow);
        !set.hits_suffix(&path)
    } else {
        let mut path = vec![x.arrow];
        path.extend(run.iter().rev().map(|l| l.arrow));
        !set.hits_prefix(&path)
    }
}

fn append(p: &QuiverPresentation, w: &StringWord, x: Letter) -> StringWord {
    let mut letters = w.letters.clone();
    letters.push(x);
    let anchor = if w.is_trivial() { x.e(p) } else { w.anchor };
    StringWord { letters, anchor }
}

/// Representative of {w, w^-1} with lexicographically least letter keys.
pub fn canonical_string(p: &QuiverPresentation, w: &StringWord) -> Result<StringWord> {
    if !is_valid_string(p, w) {
        return Err(Error::InvalidString(format_word(p, w)));
    }
    Ok(canonical_unchecked(p, w))
}

pub fn canonical_unchecked(p: &QuiverPresentation, w: &StringWord) -> StringWord {
    if w.is_trivial() {
        return w.clone();
    }
    let inv = w.inverse(p);
    if inv.keys() < w.keys() {
        inv
    } else {
        w.clone()
    }
}

/// All valid words (both orientations) of each length up to `max_len`, by length.
fn words_by_length(p: &QuiverPresentation, max_len: usize, set: &PathSet) -> Vec<Vec<StringWord>> {
    let mut levels: Vec<Vec<StringWord>> = vec![(0..p.vertices).map(StringWord::trivial).collect()];
    let letters: Vec<Letter> = (0..p.arrows.len()).flat_map(|a| [Letter::direct(a), Letter::inv(a)]).collect();
    for len in 1..=max_len {
        let prev = &levels[len - 1];
        let next: Vec<Vec<StringWord>> = par::map(prev, |w| {
            letters.iter().filter(|&&x| can_append(p, w, x, set)).map(|&x| append(p, w, x)).collect()
        });
        let mut flat: Vec<StringWord> = next.into_iter().flatten().collect();
        if len == 1 {
            // a single letter is reached from its own anchor only once
            flat.sort_by(word_cmp);
            flat.dedup();
        }
        levels.push(flat);
    }
    levels
}

/// All canonical strings of length at most `max_len`, sorted by (length, letters).
pub fn enumerate_strings(p: &QuiverPresentation, max_len: usize) -> Vec<StringWord> {
    let levels = words_by_length(p, max_len, p.string_set());
    let mut out = Vec::new();
    for (len, level) in levels.iter().enumerate() {
        let mut keep: Vec<StringWord> = if len == 0 {
            level.clone()
        } else {
            level.iter().filter(|w| w.keys() <= w.inverse(p).keys()).cloned().collect()
        };
        keep.sort_by(word_cmp);
        out.extend(keep);
    }
    out
}

/// A band: a cyclic word, stored as its canonical rotation/inversion.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Band {
    pub word: StringWord,
}

fn rotations(p: &QuiverPresentation, w: &StringWord) -> Vec<StringWord> {
    let n = w.len();
    (0..n)
        .map(|i| {
            let mut letters = w.letters[i..].to_vec();
            letters.extend_from_slice(&w.letters[..i]);
            StringWord::from_letters(p, letters)
        })
        .collect()
}

fn is_primitive(w: &StringWord) -> bool {
    let n = w.len();
    (1..n).filter(|d| n.is_multiple_of(*d)).all(|d| (0..n).any(|i| w.letters[i] != w.letters[(i + d) % n]))
}

/// Cyclic, primitive, mixed-direction and every power is a valid string.
pub fn is_band(p: &QuiverPresentation, w: &StringWord) -> bool {
    if w.is_trivial() || !w.has_direct() || !w.has_inverse() {
        return false;
    }
    if w.end_vertex(p) != w.anchor || !is_primitive(w) {
        return false;
    }
    is_valid_with(p, &w.concat(w), p.string_set())
}

pub fn canonical_band(p: &QuiverPresentation, w: &StringWord) -> Result<Band> {
    if !is_band(p, w) {
        return Err(Error::NotABand(format_word(p, w)));
    }
    let mut best = w.clone();
    for cand in rotations(p, w).into_iter().chain(rotations(p, &w.inverse(p))) {
        if cand.keys() < best.keys() {
            best = cand;
        }
    }
    Ok(Band { word: best })
}

/// All canonical bands of length at most `max_len`.
pub fn enumerate_bands(p: &QuiverPresentation, max_len: usize) -> Vec<Band> {
    let levels = words_by_length(p, max_len, p.string_set());
    let mut out = Vec::new();
    for level in levels.iter().skip(1) {
        let found: Vec<Option<Band>> = par::map(level, |w| {
            if !is_band(p, w) {
                return None;
            }
            let b = canonical_band(p, w).ok()?;
            (b.word == *w).then_some(b)
        });
        let mut bands: Vec<Band> = found.into_iter().flatten().collect();
        bands.sort_by(|a, b| word_cmp(&a.word, &b.word));
        out.extend(bands);
    }
    out
}

/// Rotation of a band starting with a direct letter.
pub fn direct_rotation(p: &QuiverPresentation, b: &Band) -> StringWord {
    rotations(p, &b.word).into_iter().find(|w| !w.letters[0].inverse).expect("bands contain direct letters")
}

/// The side of a string end; for a trivial string it selects which pair of
/// arrows at the vertex is available.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// Arrows available at each side of the trivial string at `u`:
/// (arrow ending at u, used for hooks; arrow starting at u, used for cohooks).
/// The right side takes the first incoming arrow; each side pairs its
/// incoming arrow with an outgoing arrow whose composite with it is a
/// monomial relation of the algebra.
pub fn trivial_sides(p: &QuiverPresentation, u: usize) -> [(Option<usize>, Option<usize>); 2] {
    let ins = p.in_arrows(u);
    let outs = p.out_arrows(u);
    let zero = |b: Option<usize>, g: usize| b.is_none_or(|b| p.forbidden_paths.iter().any(|f| f[..] == [b, g]));
    let (ir, il) = (ins.first().copied(), ins.get(1).copied());
    let (or, ol) = match outs.len() {
        0 => (None, None),
        1 => {
            let o = outs[0];
            if zero(ir, o) {
                (Some(o), None)
            } else {
                (None, Some(o))
            }
        }
        _ => {
            let score = |a: usize, b: usize| zero(ir, a) as u8 + zero(il, b) as u8;
            if score(outs[1], outs[0]) > score(outs[0], outs[1]) {
                (Some(outs[1]), Some(outs[0]))
            } else {
                (Some(outs[0]), Some(outs[1]))
            }
        }
    };
    [(ir, or), (il, ol)]
}

fn side_index(side: Side) -> usize {
    match side {
        Side::Right => 0,
        Side::Left => 1,
    }
}

/// The side of 1_u on which `x` can be appended (a direct letter as a hook,
/// an inverse letter as a cohook).
pub fn side_of_letter(p: &QuiverPresentation, u: usize, x: Letter) -> Option<Side> {
    let t = trivial_sides(p, u);
    [Side::Right, Side::Left].into_iter().find(|&s| {
        let (h, c) = t[side_index(s)];
        if x.inverse {
            c == Some(x.arrow)
        } else {
            h == Some(x.arrow)
        }
    })
}

/// Letters that may be appended on the right, as (hook arrows, cohook arrows).
fn right_continuations(p: &QuiverPresentation, w: &StringWord, table: Side, set: &PathSet) -> (Vec<usize>, Vec<usize>) {
    let (mut hooks, mut cohooks) = (Vec::new(), Vec::new());
    let allowed = if w.is_trivial() { Some(trivial_sides(p, w.anchor)[side_index(table)]) } else { None };
    for a in 0..p.arrows.len() {
        if can_append(p, w, Letter::direct(a), set) && allowed.is_none_or(|(h, _)| h == Some(a)) {
            hooks.push(a);
        }
        if can_append(p, w, Letter::inv(a), set) && allowed.is_none_or(|(_, c)| c == Some(a)) {
            cohooks.push(a);
        }
    }
    (hooks, cohooks)
}

fn extend_greedy(p: &QuiverPresentation, mut w: StringWord, inverse: bool, set: &PathSet) -> StringWord {
    loop {
        let next = (0..p.arrows.len()).map(|a| Letter { arrow: a, inverse }).find(|&x| can_append(p, &w, x, set));
        match next {
            Some(x) => w = append(p, &w, x),
            None => return w,
        }
    }
}

fn orient(p: &QuiverPresentation, w: &StringWord, side: Side) -> StringWord {
    match side {
        Side::Right => w.clone(),
        Side::Left => w.inverse(p),
    }
}

/// No arrow can be added as a direct letter at this end.
pub fn on_peak(p: &QuiverPresentation, w: &StringWord, side: Side) -> bool {
    right_continuations(p, &orient(p, w, side), side, p.stable_set()).0.is_empty()
}

/// No arrow can be added as an inverse letter at this end.
pub fn in_deep(p: &QuiverPresentation, w: &StringWord, side: Side) -> bool {
    right_continuations(p, &orient(p, w, side), side, p.stable_set()).1.is_empty()
}

/// `S_h = S β M^{-1}` on the right, `_hS = M β^{-1} S` on the left.
pub fn add_hook(p: &QuiverPresentation, w: &StringWord, side: Side) -> Result<StringWord> {
    hook_with_table(p, w, side, side)
}

fn hook_with_table(p: &QuiverPresentation, w: &StringWord, side: Side, table: Side) -> Result<StringWord> {
    let set = p.stable_set();
    let v = orient(p, w, side);
    let (hooks, _) = right_continuations(p, &v, table, set);
    let Some(&b) = hooks.first() else {
        return Err(Error::PeakDeepViolation(format!("{} is on a peak ({side:?} side)", format_word(p, w))));
    };
    let grown = extend_greedy(p, append(p, &v, Letter::direct(b)), true, set);
    Ok(orient(p, &grown, side))
}

/// `S_c = S γ^{-1} N` on the right, `_cS = N^{-1} γ S` on the left.
pub fn add_cohook(p: &QuiverPresentation, w: &StringWord, side: Side) -> Result<StringWord> {
    cohook_with_table(p, w, side, side)
}

fn cohook_with_table(p: &QuiverPresentation, w: &StringWord, side: Side, table: Side) -> Result<StringWord> {
    let set = p.stable_set();
    let v = orient(p, w, side);
    let (_, cohooks) = right_continuations(p, &v, table, set);
    let Some(&g) = cohooks.first() else {
        return Err(Error::PeakDeepViolation(format!("{} is in a deep ({side:?} side)", format_word(p, w))));
    };
    let grown = extend_greedy(p, append(p, &v, Letter::inv(g)), false, set);
    Ok(orient(p, &grown, side))
}

/// A string together with, for a trivial word produced by deleting letters,
/// the side of its vertex that faces right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Oriented {
    pub word: StringWord,
    pub right_table: Option<Side>,
}

impl Oriented {
    pub fn new(word: StringWord) -> Oriented {
        Oriented { word, right_table: None }
    }

    fn table_side(&self, end: Side) -> Side {
        match self.right_table {
            Some(r) if end == Side::Right => r,
            Some(r) => r.other(),
            None => end,
        }
    }
}

/// Remove the trailing letter of the given direction together with the run of
/// the opposite direction after it; `None` if there is no such letter.
fn subtract(p: &QuiverPresentation, w: &StringWord, letter_inverse: bool) -> Option<(StringWord, Letter)> {
    let pos = w.letters.iter().rposition(|l| l.inverse == letter_inverse)?;
    let removed = w.letters[pos];
    if pos == 0 {
        Some((StringWord::trivial(removed.e(p)), removed))
    } else {
        Some((StringWord { letters: w.letters[..pos].to_vec(), anchor: w.anchor }, removed))
    }
}

/// The AR moves of Figure "stable component near M(S)": `h` adds a hook or
/// removes a cohook, `c` adds a cohook or removes a hook.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Move {
    H,
    C,
}

pub fn ar_move(p: &QuiverPresentation, s: &Oriented, mv: Move, side: Side) -> Option<Oriented> {
    let w = &s.word;
    let table = s.table_side(side);
    let (hooks, cohooks) = right_continuations(p, &orient(p, w, side), table, p.stable_set());
    let grow = match mv {
        Move::H => !hooks.is_empty(),
        Move::C => !cohooks.is_empty(),
    };
    if grow {
        let word = match mv {
            Move::H => hook_with_table(p, w, side, table),
            Move::C => cohook_with_table(p, w, side, table),
        }
        .ok()?;
        return Some(Oriented::new(word));
    }
    let v = orient(p, w, side);
    // h' removes a cohook (last inverse letter), c' removes a hook (last direct letter)
    let (rest, removed) = subtract(p, &v, mv == Move::H)?;
    let right_table = if rest.is_trivial() {
        side_of_letter(p, rest.anchor, removed).map(|at| match side {
            Side::Right => at,
            Side::Left => at.other(),
        })
    } else {
        None
    };
    Some(Oriented { word: orient(p, &rest, side), right_table })
}

/// Is M(w) projective (a uniserial projective string)?
pub fn is_projective_string(p: &QuiverPresentation, w: &StringWord) -> bool {
    if w.is_trivial() {
        return false;
    }
    (0..p.vertices).filter(|&u| p.socle_pair_at(u).is_none()).filter_map(|u| p.uniserial_path(u)).any(|path| {
        let direct: Vec<Letter> = path.iter().rev().map(|&a| Letter::direct(a)).collect();
        let word = StringWord::from_letters(p, direct);
        canonical_unchecked(p, &word) == canonical_unchecked(p, w)
    })
}

/// Neighbours of M(S) in its stable AR component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArNeighbors {
    /// S_{h'}: target of an irreducible map from M(S).
    pub h_right: Option<StringWord>,
    /// _{h'}S: target of an irreducible map from M(S).
    pub h_left: Option<StringWord>,
    /// S_{c'}: source of an irreducible map into M(S).
    pub c_right: Option<StringWord>,
    /// _{c'}S: source of an irreducible map into M(S).
    pub c_left: Option<StringWord>,
}

pub fn ar_neighbors(p: &QuiverPresentation, s: &StringWord) -> Result<ArNeighbors> {
    if !is_valid_string(p, s) {
        return Err(Error::InvalidString(format_word(p, s)));
    }
    if is_projective_string(p, s) {
        return Err(Error::ProjectiveCenter(format_word(p, s)));
    }
    let o = Oriented::new(s.clone());
    let canon = |x: Option<Oriented>| x.filter(|x| !is_projective_string(p, &x.word)).map(|x| canonical_unchecked(p, &x.word));
    Ok(ArNeighbors {
        h_right: canon(ar_move(p, &o, Move::H, Side::Right)),
        h_left: canon(ar_move(p, &o, Move::H, Side::Left)),
        c_right: canon(ar_move(p, &o, Move::C, Side::Right)),
        c_left: canon(ar_move(p, &o, Move::C, Side::Left)),
    })
}

fn two_sided(p: &QuiverPresentation, s: &StringWord, mv: Move) -> Option<StringWord> {
    let o = Oriented::new(s.clone());
    let first = ar_move(p, &o, mv, Side::Right)
        .and_then(|r| ar_move(p, &r, mv, Side::Left))
        .or_else(|| ar_move(p, &o, mv, Side::Left).and_then(|l| ar_move(p, &l, mv, Side::Right)));
    first.map(|x| canonical_unchecked(p, &x.word))
}

/// AR translate inverse, `_{h'}(S_{h'})`.
pub fn tau_inverse_string(p: &QuiverPresentation, s: &StringWord) -> Option<StringWord> {
    two_sided(p, s, Move::H)
}

/// AR translate, `_{c'}(S_{c'})`.
pub fn tau_string(p: &QuiverPresentation, s: &StringWord) -> Option<StringWord> {
    two_sided(p, s, Move::C)
}

/// The arrow involution α -> τ(α) of the upside-down lemma, after checking its
/// three hypotheses (no double arrows, reversed arrows exist, relations are
/// τ-reversal stable).
pub fn tau_involution(p: &QuiverPresentation) -> Result<Vec<usize>> {
    let mut tau = Vec::with_capacity(p.arrows.len());
    for (i, a) in p.arrows.iter().enumerate() {
        let parallel = p.arrows.iter().filter(|b| b.source == a.source && b.target == a.target).count();
        if parallel > 1 {
            return Err(Error::TauUndefined(format!("condition (a): double arrow at {}", a.name)));
        }
        let Some(j) = p.arrows.iter().position(|b| b.source == a.target && b.target == a.source) else {
            return Err(Error::TauUndefined(format!("condition (b): no reversed arrow for {}", a.name)));
        };
        let _ = i;
        tau.push(j);
    }
    let reversal = |q: &Vec<usize>| -> Vec<usize> { q.iter().rev().map(|&a| tau[a]).collect() };
    for u in 0..p.vertices {
        if let Some((a, b)) = p.socle_pair_at(u) {
            let mut lhs = vec![a.clone(), b.clone()];
            let mut rhs = vec![reversal(a), reversal(b)];
            lhs.sort();
            rhs.sort();
            if lhs != rhs {
                return Err(Error::TauUndefined(format!("condition (c): socle pair at vertex {u} is not reversal stable")));
            }
        } else if let Some(q) = p.uniserial_path(u) {
            if reversal(&q) != q {
                return Err(Error::TauUndefined(format!("condition (c): uniserial projective at vertex {u} is not reversal stable")));
            }
        }
    }
    Ok(tau)
}

/// τ(S) = τ(w1)^{-1} ... τ(wn)^{-1}.
pub fn tau_dual(p: &QuiverPresentation, s: &StringWord) -> Result<StringWord> {
    let tau = tau_involution(p)?;
    if !is_valid_string(p, s) {
        return Err(Error::InvalidString(format_word(p, s)));
    }
    let letters: Vec<Letter> = s.letters.iter().map(|l| Letter { arrow: tau[l.arrow], inverse: !l.inverse }).collect();
    let out = StringWord { letters, anchor: s.anchor };
    debug_assert!(is_valid_string(p, &out));
    Ok(out)
}

/// Words named in the classification for psl1(d): the families A, A', X and
/// the uniserial pieces S_{i,j,n}.
pub mod named {
    use super::*;

    fn tokens(parts: &[(&str, usize)]) -> String {
        let mut s = String::new();
        for (t, k) in parts {
            for _ in 0..*k {
                s.push_str(t);
                s.push(' ');
            }
        }
        s
    }

    fn half(p: &QuiverPresentation) -> usize {
        1usize << (p.d().unwrap_or(3) - 2)
    }

    fn block(p: &QuiverPresentation, primed: bool) -> String {
        let n = half(p);
        if primed {
            tokens(&[("et de ", 1), ("ga- be- de- et- ", n - 1), ("ga- be- ", 1)])
        } else {
            tokens(&[("be ga ", 1), ("de- et- ga- be- ", n - 1), ("de- et- ", 1)])
        }
    }

    /// A_{k,n} (or A'_{k,n} when `primed`), k in 1..=3, n >= 1.
    pub fn a(p: &QuiverPresentation, k: usize, n: usize, primed: bool) -> Result<StringWord> {
        let tail = match (k, primed) {
            (1, false) => "ga-",
            (3, false) => "be",
            (1, true) => "de-",
            (3, true) => "et",
            (2, _) => "",
            _ => return Err(Error::InvalidParameter(format!("A family index {k}"))),
        };
        let text = format!("{}{}", block(p, primed).repeat(n), tail);
        parse_word(p, &text)
    }

    /// X_{k,n}, k in 1..=3, n >= 1: off-boundary members of the 3-tubes.
    pub fn x(p: &QuiverPresentation, k: usize, n: usize) -> Result<StringWord> {
        let m = half(p);
        let head = tokens(&[("ga ", 1), ("de- et- ga- be- ", m - 1), ("de- et- ", 1)]);
        let tail = match k {
            1 => "ga-",
            2 => "",
            3 => "be",
            _ => return Err(Error::InvalidParameter(format!("X family index {k}"))),
        };
        let text = format!("{}{}{}", head, block(p, false).repeat(n - 1), tail);
        parse_word(p, &text)
    }

    /// The uniserial strings S_{i,j,n}.
    pub fn s(p: &QuiverPresentation, i: usize, j: usize, n: usize) -> Result<StringWord> {
        let text = match (i, j) {
            (1, 1) => tokens(&[("ga- be- de- et- ", n), ("ga- be- ", 1)]),
            (1, 2) => tokens(&[("ga- be- de- et- ", n)]),
            (2, 2) => tokens(&[("de- et- ga- be- ", n), ("de- et- ", 1)]),
            (2, 1) => tokens(&[("de- et- ga- be- ", n)]),
            _ => return Err(Error::InvalidParameter(format!("S index ({i},{j})"))),
        };
        if text.trim().is_empty() {
            return Ok(StringWord::trivial(0));
        }
        parse_word(p, &text)
    }

    /// The four uniserial modules of length 4 for psl1: X1, Ω²X1, X2, Ω²X2.
    pub fn uniserial_length_four(p: &QuiverPresentation) -> Vec<StringWord> {
        ["be- de- et-", "de- et- ga-", "et- ga- be-", "ga- be- de-"].iter().map(|t| parse_word(p, t).expect("fixed words")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::{build_a7, build_psl1, build_psl2};

    #[test]
    fn validity_examples() {
        let p = build_psl1(3).unwrap();
        assert!(!is_valid_string(&p, &parse_word(&p, "ga be").unwrap()));
        assert!(is_valid_string(&p, &parse_word(&p, "be ga").unwrap()));
        assert!(!is_valid_string(&p, &parse_word(&p, "be be-").unwrap()));
        assert!(matches!(parse_word(&p, "xx"), Err(Error::UnknownArrow(_))));
    }

    #[test]
    fn canonical_examples() {
        let p = build_psl1(3).unwrap();
        let a = canonical_string(&p, &parse_word(&p, "be ga").unwrap()).unwrap();
        let b = canonical_string(&p, &parse_word(&p, "ga- be-").unwrap()).unwrap();
        assert_eq!(a, b);
        let t = parse_word(&p, "1_0").unwrap();
        assert_eq!(canonical_string(&p, &t).unwrap(), t);
        let w = named::a(&p, 1, 1, false).unwrap();
        assert_eq!(canonical_string(&p, &w).unwrap(), canonical_string(&p, &w.inverse(&p)).unwrap());
    }

    #[test]
    fn enumeration_counts() {
        let p = build_psl1(3).unwrap();
        assert_eq!(enumerate_strings(&p, 0).len(), 3);
        assert_eq!(enumerate_strings(&p, 1).len(), 7);
        assert_eq!(enumerate_strings(&p, 2).len(), 13);
    }

    #[test]
    fn band_examples() {
        let p = build_psl1(3).unwrap();
        assert!(enumerate_bands(&p, 3).is_empty());
        let b = canonical_band(&p, &parse_word(&p, "ga- be- et de").unwrap()).unwrap();
        assert!(enumerate_bands(&p, 4).contains(&b));
        assert!(!is_band(&p, &parse_word(&p, "be ga be ga").unwrap()));
    }

    #[test]
    fn a11_dimension_vector() {
        let p = build_psl1(3).unwrap();
        let w = named::a(&p, 1, 1, false).unwrap();
        assert_eq!(format_word(&p, &w), "be ga de- et- ga- be- de- et- ga-");
        assert_eq!(w.dimension_vector(&p), vec![5, 3, 2]);
    }

    #[test]
    fn tau_conditions() {
        for p in [build_psl1(3).unwrap(), build_psl2(3).unwrap(), build_a7()] {
            let tau = tau_involution(&p).unwrap();
            for (a, &t) in tau.iter().enumerate() {
                assert_eq!(tau[t], a);
            }
        }
        let p = build_psl1(3).unwrap();
        let s = parse_word(&p, "be ga").unwrap();
        let t = tau_dual(&p, &s).unwrap();
        assert_eq!(format_word(&p, &t), "ga- be-");
    }

    #[test]
    fn hook_length_bookkeeping() {
        let p = build_psl1(3).unwrap();
        let s = parse_word(&p, "be- de- et-").unwrap();
        let h = add_hook(&p, &s, Side::Right).unwrap();
        assert!(is_valid_string(&p, &h));
        assert!(h.len() > s.len());
        assert_eq!(&h.letters[..s.len()], &s.letters[..]);
    }
}
