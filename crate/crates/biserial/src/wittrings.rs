//! Exact integer checks of the ring identities behind the deformation rings.
//!
//! Everything is done over Z: integer polynomials, the group ring of a
//! cyclic group of order 2^(d-1), and Smith normal forms of the lattices
//! obtained from its σ -> σ^(-1) invariants.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result, FORMAT_VERSION};

fn check_d(d: u32) -> Result<()> {
    if !(3..=20).contains(&d) {
        return Err(Error::InvalidParameter(format!("d must lie in 3..=20, got {d}")));
    }
    Ok(())
}

/// Dense integer polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> IntPoly {
        let mut p = IntPoly { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> IntPoly {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn t() -> IntPoly {
        IntPoly::from_i64(&[0, 1])
    }

    pub fn constant(c: i64) -> IntPoly {
        IntPoly::from_i64(&[c])
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::new(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        IntPoly::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Coefficients reduced mod 2, as 0/1 bytes without trailing zeros.
    pub fn mod2(&self) -> Vec<u8> {
        let mut out: Vec<u8> = self.coeffs.iter().map(|c| if (c % 2u32).is_zero() { 0 } else { 1 }).collect();
        while out.last() == Some(&0) {
            out.pop();
        }
        out
    }

    /// Only odd (`Some(true)`) or only even (`Some(false)`) powers occur.
    pub fn parity(&self) -> Option<bool> {
        let odd = self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).all(|(i, _)| i % 2 == 1);
        let even = self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).all(|(i, _)| i % 2 == 0);
        match (odd, even) {
            (true, false) => Some(true),
            (false, true) => Some(false),
            _ => None,
        }
    }

    /// Evaluate at a group-ring element by Horner's rule.
    pub fn eval(&self, x: &CyclicRingElt) -> CyclicRingElt {
        let mut acc = CyclicRingElt::zero(x.order());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&CyclicRingElt::scalar(x.order(), c.clone()));
        }
        acc
    }
}

fn write_terms(f: &mut fmt::Formatter<'_>, terms: &[(usize, &BigInt)], var: &str, always_exp: bool) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (k, (e, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if k == 0 {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { "-" } else { "+" })?;
        }
        let mono = match (*e, always_exp) {
            (0, false) => String::new(),
            (1, false) => var.to_string(),
            (e, _) => format!("{var}^{e}"),
        };
        if mono.is_empty() {
            write!(f, "{mag}")?;
        } else if mag.is_one() {
            write!(f, "{mono}")?;
        } else {
            write!(f, "{mag}*{mono}")?;
        }
    }
    Ok(())
}

/// Highest degree first: `t^3 - 2*t`.
impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(usize, &BigInt)> = self.coeffs.iter().enumerate().rev().filter(|(_, c)| !c.is_zero()).collect();
        write_terms(f, &terms, "t", false)
    }
}

/// Element of Z[<σ>] with σ of order `coeffs.len()`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicRingElt {
    coeffs: Vec<BigInt>,
}

impl CyclicRingElt {
    pub fn zero(order: usize) -> CyclicRingElt {
        CyclicRingElt { coeffs: vec![BigInt::zero(); order] }
    }

    pub fn scalar(order: usize, c: BigInt) -> CyclicRingElt {
        let mut x = CyclicRingElt::zero(order);
        x.coeffs[0] = c;
        x
    }

    /// σ^k (k taken mod the order).
    pub fn sigma_pow(order: usize, k: i64) -> CyclicRingElt {
        let mut x = CyclicRingElt::zero(order);
        x.coeffs[k.rem_euclid(order as i64) as usize] = BigInt::one();
        x
    }

    /// σ^k + σ^(-k).
    pub fn sym(order: usize, k: i64) -> CyclicRingElt {
        CyclicRingElt::sigma_pow(order, k).add(&CyclicRingElt::sigma_pow(order, -k))
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn add(&self, other: &CyclicRingElt) -> CyclicRingElt {
        CyclicRingElt { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &CyclicRingElt) -> CyclicRingElt {
        CyclicRingElt { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> CyclicRingElt {
        CyclicRingElt { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, other: &CyclicRingElt) -> CyclicRingElt {
        let n = self.order();
        let mut out = CyclicRingElt::zero(n);
        let rhs: Vec<(usize, &BigInt)> = other.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()).collect();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for &(j, b) in &rhs {
                out.coeffs[(i + j) % n] += a * b;
            }
        }
        out
    }

    /// Image under σ -> σ^(-1).
    pub fn tau(&self) -> CyclicRingElt {
        let n = self.order();
        CyclicRingElt { coeffs: (0..n).map(|i| self.coeffs[(n - i) % n].clone()).collect() }
    }

    pub fn is_invariant(&self) -> bool {
        self.tau() == *self
    }
}

/// Lowest exponent first: `s^1 + s^3`.
impl fmt::Display for CyclicRingElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(usize, &BigInt)> = self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        write_terms(f, &terms, "s", true)
    }
}

/// Minimal polynomial of ζ_{2^l} + ζ_{2^l}^{-1}: t for l = 2, then m^2 - 2.
pub fn min_poly(l: u32) -> Result<IntPoly> {
    if l < 2 {
        return Err(Error::InvalidParameter(format!("l must be at least 2, got {l}")));
    }
    let mut m = IntPoly::t();
    for _ in 3..=l {
        m = m.mul(&m).sub(&IntPoly::constant(2));
    }
    Ok(m)
}

/// p_d(t), the product of the minimal polynomials for l = 2..d-1.
pub fn pd_poly(d: u32) -> Result<IntPoly> {
    check_d(d)?;
    let mut p = IntPoly::constant(1);
    let mut m = IntPoly::t();
    for l in 2..d {
        if l > 2 {
            m = m.mul(&m).sub(&IntPoly::constant(2));
        }
        p = p.mul(&m);
    }
    Ok(p)
}

fn group_order(d: u32) -> usize {
    1usize << (d - 1)
}

/// T(σ^2) = 1 + σ^2 + ... + σ^(2^(d-1) - 2).
pub fn t_sigma2(d: u32) -> CyclicRingElt {
    let n = group_order(d);
    let mut x = CyclicRingElt::zero(n);
    for k in (0..n).step_by(2) {
        x.coeffs[k] = BigInt::one();
    }
    x
}

fn rho_t(d: u32) -> CyclicRingElt {
    CyclicRingElt::sym(group_order(d), 1)
}

/// Checks of p_d(σ + σ^(-1)) against its product form and σT(σ^2).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RhoCheck {
    pub d: u32,
    pub factors_ok: bool,
    pub product_form_ok: bool,
    pub sigma_t_ok: bool,
    pub value: String,
}

impl RhoCheck {
    pub fn passed(&self) -> bool {
        self.factors_ok && self.product_form_ok && self.sigma_t_ok
    }
}

pub fn rho_check(d: u32) -> Result<RhoCheck> {
    check_d(d)?;
    let n = group_order(d);
    let x = rho_t(d);
    let mut factors_ok = true;
    let mut product = CyclicRingElt::scalar(n, BigInt::one());
    for l in 2..d {
        let lhs = min_poly(l)?.eval(&x);
        let rhs = CyclicRingElt::sym(n, 1i64 << (l - 2));
        factors_ok &= lhs == rhs;
        product = product.mul(&rhs);
    }
    let value = pd_poly(d)?.eval(&x);
    let sigma_t = CyclicRingElt::sigma_pow(n, 1).mul(&t_sigma2(d));
    Ok(RhoCheck { d, factors_ok, product_form_ok: value == product, sigma_t_ok: value == sigma_t, value: value.to_string() })
}

/// p_d(σ+σ^(-1)) = ∏ (σ^(2^(l-2)) + σ^(-2^(l-2))) = σ T(σ^2).
pub fn verify_rho_identity(d: u32) -> Result<bool> {
    Ok(rho_check(d)?.passed())
}

/// p_d(x)(x - 2) = 2[T(σ^2) - σT(σ^2)] for x = σ + σ^(-1).
pub fn verify_theta_identity(d: u32) -> Result<bool> {
    check_d(d)?;
    let n = group_order(d);
    let x = rho_t(d);
    let lhs = pd_poly(d)?.eval(&x).mul(&x.sub(&CyclicRingElt::scalar(n, BigInt::from(2))));
    let t = t_sigma2(d);
    let rhs = t.sub(&CyclicRingElt::sigma_pow(n, 1).mul(&t)).scale(&BigInt::from(2));
    Ok(lhs == rhs)
}

/// Smith normal form D = U A V with unimodular U, V.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    pub diag: Vec<BigInt>,
    pub u: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
    pub d: Vec<Vec<BigInt>>,
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

fn row_combine(m: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let src = m[source].clone();
    for (a, b) in m[target].iter_mut().zip(&src) {
        if !b.is_zero() {
            *a -= q * b;
        }
    }
}

fn col_combine(m: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for row in m.iter_mut() {
        if !row[source].is_zero() {
            let s = row[source].clone();
            row[target] -= q * s;
        }
    }
}

fn swap_cols(m: &mut [Vec<BigInt>], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// Smith normal form by alternating row and column reduction.
pub fn smith_normal_form(a: &[Vec<BigInt>], cols: usize) -> Snf {
    let rows = a.len();
    let mut d: Vec<Vec<BigInt>> = a.to_vec();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        // smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        'scan: for i in t..rows {
            for j in t..cols {
                if !d[i][j].is_zero() && best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs()) {
                    best = Some((i, j));
                    if d[i][j].abs().is_one() {
                        break 'scan;
                    }
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        d.swap(t, bi);
        u.swap(t, bi);
        swap_cols(&mut d, t, bj);
        swap_cols(&mut v, t, bj);
        loop {
            let mut done = true;
            for i in t + 1..rows {
                if d[i][t].is_zero() {
                    continue;
                }
                let q = &d[i][t] / &d[t][t];
                row_combine(&mut d, i, t, &q);
                row_combine(&mut u, i, t, &q);
                if !d[i][t].is_zero() {
                    d.swap(t, i);
                    u.swap(t, i);
                    done = false;
                }
            }
            for j in t + 1..cols {
                if d[t][j].is_zero() {
                    continue;
                }
                let q = &d[t][j] / &d[t][t];
                col_combine(&mut d, j, t, &q);
                col_combine(&mut v, j, t, &q);
                if !d[t][j].is_zero() {
                    swap_cols(&mut d, t, j);
                    swap_cols(&mut v, t, j);
                    done = false;
                }
            }
            if done && d[t][t].abs().is_one() {
                break;
            }
            if done {
                // divisibility: fold in any entry not divisible by the pivot
                let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&d[i][j] % &d[t][t]).is_zero()));
                match bad {
                    Some(i) => {
                        let one = BigInt::from(-1);
                        row_combine(&mut d, t, i, &one);
                        row_combine(&mut u, t, i, &one);
                    }
                    None => break,
                }
            }
        }
        if d[t][t].is_negative() {
            for x in d[t].iter_mut() {
                *x = -&*x;
            }
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
        }
        diag.push(d[t][t].clone());
    }
    Snf { diag, u, v, d }
}

fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    a.iter()
        .map(|row| {
            let mut out = vec![BigInt::zero(); cols];
            for (k, x) in row.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (o, y) in out.iter_mut().zip(&b[k]) {
                    if !y.is_zero() {
                        *o += x * y;
                    }
                }
            }
            out
        })
        .collect()
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    /// U A V = D with D diagonal and each entry dividing the next.
    pub fn certify(&self, a: &[Vec<BigInt>], cols: usize) -> bool {
        let uav = mat_mul(&mat_mul(&self.u, a, cols), &self.v, cols);
        let diagonal = uav.iter().enumerate().all(|(i, row)| row.iter().enumerate().all(|(j, x)| (i == j && i < self.diag.len() && *x == self.diag[i]) || x.is_zero()));
        let divides = self.diag.windows(2).all(|w| (&w[1] % &w[0]).is_zero());
        uav == self.d && diagonal && divides && self.diag.iter().all(|x| x.is_positive())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LatticeKind {
    FullInvariants,
    Sprime,
    Theta,
}

impl LatticeKind {
    pub fn parse(s: &str) -> Result<LatticeKind> {
        match s {
            "full" | "full_invariants" => Ok(LatticeKind::FullInvariants),
            "sprime" | "Sprime" => Ok(LatticeKind::Sprime),
            "theta" | "Theta" => Ok(LatticeKind::Theta),
            _ => Err(Error::InvalidParameter(format!("unknown lattice `{s}`"))),
        }
    }
}

/// Coordinates of a σ -> σ^(-1) invariant element in the basis
/// 1, σ+σ^(-1), ..., σ^(n/2-1)+σ^(-n/2+1), σ^(n/2).
fn invariant_coords(x: &CyclicRingElt) -> Vec<BigInt> {
    let half = x.order() / 2;
    x.coeffs[..=half].to_vec()
}

fn invariant_basis(d: u32) -> Vec<CyclicRingElt> {
    let n = group_order(d);
    let half = n / 2;
    let mut out = vec![CyclicRingElt::scalar(n, BigInt::one())];
    out.extend((1..half as i64).map(|k| CyclicRingElt::sym(n, k)));
    out.push(CyclicRingElt::sigma_pow(n, half as i64));
    out
}

/// A lattice or quotient lattice with its rank certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantLattice {
    pub d: u32,
    pub kind: LatticeKind,
    /// Rank of the ambient lattice of invariants.
    pub ambient_rank: usize,
    /// Rank of the lattice (or of the quotient).
    pub rank: usize,
    /// Nontrivial invariant factors of the relevant SNF.
    pub torsion: Vec<String>,
    pub torsion_free: bool,
    /// Every generator is fixed by σ -> σ^(-1).
    pub generators_invariant: bool,
    pub certified: bool,
}

/// Rank of the invariants, S' or Θ, via Smith normal form.
pub fn invariant_lattice(d: u32, kind: LatticeKind) -> Result<InvariantLattice> {
    check_d(d)?;
    let n = group_order(d);
    let basis = invariant_basis(d);
    let m = basis.len();
    let sigma = CyclicRingElt::sigma_pow(n, 1);
    let t = t_sigma2(d);
    let (gens, whole) = match kind {
        LatticeKind::FullInvariants => (Vec::new(), true),
        LatticeKind::Sprime => (vec![t.clone(), sigma.mul(&t)], false),
        LatticeKind::Theta => (vec![t.sub(&sigma.mul(&t))], false),
    };
    let generators_invariant = basis.iter().chain(&gens).all(CyclicRingElt::is_invariant);
    if whole {
        // the basis inside Z^n
        let a: Vec<Vec<BigInt>> = basis.iter().map(|b| b.coeffs.clone()).collect();
        let snf = smith_normal_form(&a, n);
        let torsion: Vec<String> = snf.diag.iter().filter(|x| !x.is_one()).map(ToString::to_string).collect();
        return Ok(InvariantLattice {
            d,
            kind,
            ambient_rank: m,
            rank: snf.rank(),
            torsion_free: torsion.is_empty(),
            torsion,
            generators_invariant,
            certified: snf.certify(&a, n),
        });
    }
    // the ideal generated by `gens` inside the invariants, as a Z-span
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for g in &gens {
        for b in &basis {
            let mut r = invariant_coords(&b.mul(g));
            if let Some(first) = r.iter().find(|x| !x.is_zero()) {
                if first.is_negative() {
                    r.iter_mut().for_each(|x| *x = -&*x);
                }
                if !rows.contains(&r) {
                    rows.push(r);
                }
            }
        }
    }
    let snf = smith_normal_form(&rows, m);
    let torsion: Vec<String> = snf.diag.iter().filter(|x| !x.is_one()).map(ToString::to_string).collect();
    Ok(InvariantLattice {
        d,
        kind,
        ambient_rank: m,
        rank: m - snf.rank(),
        torsion_free: torsion.is_empty(),
        torsion,
        generators_invariant,
        certified: snf.certify(&rows, m),
    })
}

pub fn invariant_lattice_rank(d: u32, kind: LatticeKind) -> Result<usize> {
    Ok(invariant_lattice(d, kind)?.rank)
}

/// The ideal (p_d(t)(t-2), 2 p_d(t)) reduced mod 2, in k[[t]].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mod2Presentation {
    pub d: u32,
    /// Generators reduced mod 2, as `t`-polynomials over GF(2).
    pub reduced_generators: Vec<String>,
    /// n with ideal (t^n).
    pub exponent: usize,
    pub ideal: String,
    pub ring: String,
    /// The reduced generators are exactly t^n and 0.
    pub certified: bool,
}

fn gf2_text(bits: &[u8]) -> String {
    IntPoly::new(bits.iter().map(|&b| BigInt::from(b)).collect()).to_string()
}

pub fn ring_mod2_presentation(d: u32) -> Result<Mod2Presentation> {
    check_d(d)?;
    let p = pd_poly(d)?;
    let g1 = p.mul(&IntPoly::from_i64(&[-2, 1])).mod2();
    let g2 = p.scale(&BigInt::from(2)).mod2();
    // in k[[t]] the ideal is generated by t^(least order)
    let order = |g: &Vec<u8>| g.iter().position(|&c| c == 1);
    let exponent = [order(&g1), order(&g2)].into_iter().flatten().min().unwrap_or(0);
    let n = 1usize << (d - 2);
    let monomial = |g: &Vec<u8>, e: usize| g.len() == e + 1 && g[..e].iter().all(|&c| c == 0);
    let certified = monomial(&g1, n) && g2.is_empty() && exponent == n;
    Ok(Mod2Presentation {
        d,
        reduced_generators: vec![gf2_text(&g1), gf2_text(&g2)],
        exponent,
        ideal: format!("(t^{exponent})"),
        ring: format!("k[t]/(t^{exponent})"),
        certified,
    })
}

/// Every check for one d, as emitted by the CLI.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WittReport {
    pub format_version: String,
    pub d: u32,
    pub pd_poly: String,
    pub degree: usize,
    pub monic: bool,
    pub lower_coefficients_even: bool,
    pub odd_polynomial: bool,
    pub mod2_image: String,
    pub mod2_ok: bool,
    pub rho: RhoCheck,
    pub theta_ok: bool,
    pub lattices: Vec<InvariantLattice>,
    pub lattice_ranks_ok: bool,
    pub mod2_presentation: Mod2Presentation,
}

impl WittReport {
    pub fn passed(&self) -> bool {
        let deg = (1usize << (self.d - 2)) - 1;
        self.degree == deg
            && self.monic
            && self.lower_coefficients_even
            && self.odd_polynomial
            && self.mod2_ok
            && self.rho.passed()
            && self.theta_ok
            && self.lattice_ranks_ok
            && self.mod2_presentation.certified
    }
}

pub fn witt_report(d: u32) -> Result<WittReport> {
    check_d(d)?;
    let p = pd_poly(d)?;
    let degree = p.degree().unwrap_or(0);
    let lower_even = p.coeffs()[..degree].iter().all(|c| (c % 2u32).is_zero());
    let image = p.mod2();
    let mod2_ok = image.len() == degree + 1 && image[..degree].iter().all(|&c| c == 0);
    let lattices: Vec<InvariantLattice> =
        [LatticeKind::FullInvariants, LatticeKind::Sprime, LatticeKind::Theta].into_iter().map(|k| invariant_lattice(d, k)).collect::<Result<_>>()?;
    let q = 1usize << (d - 2);
    let expected = [q + 1, q - 1, q];
    let lattice_ranks_ok = lattices.iter().zip(expected).all(|(l, e)| l.rank == e && l.torsion_free && l.certified && l.generators_invariant);
    Ok(WittReport {
        format_version: FORMAT_VERSION.into(),
        d,
        pd_poly: p.to_string(),
        degree,
        monic: p.is_monic(),
        lower_coefficients_even: lower_even,
        odd_polynomial: p.parity() == Some(true),
        mod2_image: gf2_text(&image),
        mod2_ok,
        rho: rho_check(d)?,
        theta_ok: verify_theta_identity(d)?,
        lattices,
        lattice_ranks_ok,
        mod2_presentation: ring_mod2_presentation(d)?,
    })
}

/// Reports for several d, computed in parallel unless `sequential`.
pub fn witt_sweep(ds: &[u32], sequential: bool) -> Result<Vec<WittReport>> {
    crate::par::map_with(ds, sequential, |&d| witt_report(d)).into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_polynomials() {
        assert_eq!(pd_poly(3).unwrap().to_string(), "t");
        assert_eq!(pd_poly(4).unwrap().to_string(), "t^3 - 2*t");
        assert_eq!(pd_poly(5).unwrap().degree(), Some(7));
        assert!(pd_poly(2).is_err());
    }

    #[test]
    fn rho_small() {
        let r = rho_check(3).unwrap();
        assert_eq!(r.value, "s^1 + s^3");
        assert!(r.passed());
        assert_eq!(rho_check(4).unwrap().value, "s^1 + s^3 + s^5 + s^7");
        assert!(verify_theta_identity(3).unwrap());
        assert!(matches!(verify_theta_identity(2), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn lattice_ranks_d4() {
        assert_eq!(invariant_lattice_rank(4, LatticeKind::FullInvariants).unwrap(), 5);
        assert_eq!(invariant_lattice_rank(4, LatticeKind::Sprime).unwrap(), 3);
        assert_eq!(invariant_lattice_rank(4, LatticeKind::Theta).unwrap(), 4);
    }

    #[test]
    fn snf_with_torsion() {
        let a: Vec<Vec<BigInt>> = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]].iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let s = smith_normal_form(&a, 3);
        assert!(s.certify(&a, 3));
        assert_eq!(s.diag, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
    }

    #[test]
    fn mod2_ideal() {
        assert_eq!(ring_mod2_presentation(3).unwrap().ideal, "(t^2)");
        let r = ring_mod2_presentation(5).unwrap();
        assert_eq!(r.ring, "k[t]/(t^8)");
        assert!(r.certified);
    }
}
