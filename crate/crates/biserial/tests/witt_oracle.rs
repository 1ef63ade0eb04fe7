use biserial::wittrings::{invariant_lattice, pd_poly, witt_report, witt_sweep, LatticeKind, IntPoly};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use std::f64::consts::PI;

fn eval_f64(p: &IntPoly, x: f64) -> f64 {
    p.coeffs().iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64().unwrap())
}

// Under the character σ -> ζ^k the rho identity reads
// p_d(2cos(2πk/n)) = ζ^k T(ζ^2k), which is real and equals
// (n/2)·(-1)^(k/(n/2)) when 2k ≡ 0 mod n and 0 otherwise.
#[test]
fn rho_identity_under_characters() {
    for d in 3..=6u32 {
        let n = 1usize << (d - 1);
        let p = pd_poly(d).unwrap();
        for k in 0..n {
            let x = 2.0 * (2.0 * PI * k as f64 / n as f64).cos();
            let expect = if (2 * k) % n == 0 { (n / 2) as f64 * if k == 0 { 1.0 } else { -1.0 } } else { 0.0 };
            let got = eval_f64(&p, x);
            assert!((got - expect).abs() < 1e-6, "d={d} k={k}: {got} vs {expect}");
        }
    }
}

fn rank_mod(rows: &[Vec<i64>], prime: i64) -> usize {
    let mut m: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|x| x.rem_euclid(prime)).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, piv);
        let inv = pow_mod(m[rank][c], prime - 2, prime);
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c] * inv % prime;
                for j in 0..cols {
                    m[r][j] = (m[r][j] - f * m[rank][j]).rem_euclid(prime);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: i64, mut e: i64, p: i64) -> i64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

// Generators of T and σT in invariant coordinates, built by hand:
// T has ones on even exponents, σT on odd ones.
fn sprime_rows(d: u32) -> Vec<Vec<i64>> {
    let half = 1usize << (d - 2);
    let t: Vec<i64> = (0..=half).map(|i| i64::from(i % 2 == 0)).collect();
    let st: Vec<i64> = (0..=half).map(|i| i64::from(i % 2 == 1)).collect();
    vec![t, st]
}

#[test]
fn quotient_ranks_match_modular_ranks() {
    for d in 3..=9u32 {
        let half = 1usize << (d - 2);
        let rows = sprime_rows(d);
        for prime in [2, 3, 1_000_003] {
            assert_eq!(half + 1 - rank_mod(&rows, prime), half - 1, "d={d} p={prime}");
        }
        let theta: Vec<Vec<i64>> = vec![rows[0].iter().zip(&rows[1]).map(|(a, b)| a - b).collect()];
        for prime in [2, 3, 1_000_003] {
            assert_eq!(half + 1 - rank_mod(&theta, prime), half, "d={d} p={prime}");
        }
        assert_eq!(invariant_lattice(d, LatticeKind::Sprime).unwrap().rank, half - 1);
        assert_eq!(invariant_lattice(d, LatticeKind::Theta).unwrap().rank, half);
        assert_eq!(invariant_lattice(d, LatticeKind::FullInvariants).unwrap().rank, half + 1);
    }
}

#[test]
fn sweep_three_to_twelve() {
    let start = std::time::Instant::now();
    let reports = witt_sweep(&(3..=12).collect::<Vec<_>>(), false).unwrap();
    for r in &reports {
        assert!(r.passed(), "d={} failed: {:?}", r.d, r);
        assert_eq!(r.mod2_presentation.exponent, 1 << (r.d - 2));
    }
    eprintln!("witt sweep d=3..12 in {:?}", start.elapsed());
}

#[test]
fn sequential_and_parallel_agree() {
    let ds: Vec<u32> = (3..=8).collect();
    assert_eq!(witt_sweep(&ds, true).unwrap(), witt_sweep(&ds, false).unwrap());
}

#[test]
fn bad_d_rejected() {
    assert!(witt_report(2).is_err());
    assert!(pd_poly(0).is_err());
}

proptest! {
    #[test]
    fn recursion_and_parity(d in 3u32..11) {
        let p = pd_poly(d).unwrap();
        let q = pd_poly(d + 1).unwrap();
        let m = biserial::wittrings::min_poly(d).unwrap();
        prop_assert_eq!(p.mul(&m), q);
        prop_assert_eq!(p.parity(), Some(true));
        prop_assert!(p.is_monic());
        let deg = p.degree().unwrap();
        prop_assert!(p.coeffs()[..deg].iter().all(|c| c % BigInt::from(2) == BigInt::from(0)));
    }
}
