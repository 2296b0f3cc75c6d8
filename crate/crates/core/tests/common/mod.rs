//! Independent reference computations used by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use num_rational::Rational64;
use slicedeg::knot_model::{parse_knot_db, KnotDatabase};

pub fn db_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join("knots.json")
}

pub fn bundled_db() -> KnotDatabase {
    let text = std::fs::read_to_string(db_path()).expect("bundled database readable");
    parse_knot_db(&text).expect("bundled database parses")
}

/// Expected `(name, rendered interval)` pairs for the crossing tables.
pub fn expected_table() -> Vec<(String, String)> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/expected_table.txt");
    std::fs::read_to_string(path)
        .expect("expected table readable")
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let (name, value) = l.split_once(' ').expect("name value");
            (name.to_string(), value.replace(", ", ","))
        })
        .collect()
}

/// Number of multisets of positive integers whose squares sum to `k`.
pub fn count_square_partitions(k: usize) -> u64 {
    let mut ways = vec![0u64; k + 1];
    ways[0] = 1;
    let mut j = 1;
    while j * j <= k {
        let sq = j * j;
        for t in sq..=k {
            ways[t] += ways[t - sq];
        }
        j += 1;
    }
    ways[k]
}

/// All multisets with `Σaᵢ² = k` by nested recursion, largest part first.
pub fn brute_classes(k: i64) -> Vec<Vec<i64>> {
    fn go(rest: i64, max: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for a in (1..=max).rev() {
            if a * a <= rest {
                cur.push(a);
                go(rest - a * a, a, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    let max = (k as f64).sqrt() as i64 + 1;
    go(k, max, &mut Vec::new(), &mut out);
    out
}

/// Brute-force `κ_min` and its argmin over the box `|zᵢ| ≤ |aᵢ| + 2`.
pub fn brute_kappa(a: &[i64], c: &[i64]) -> (Rational64, Vec<Vec<i64>>) {
    let ranges: Vec<Vec<i64>> = a.iter().map(|&x| (-(x.abs()) - 2..=x.abs() + 2).collect()).collect();
    let mut best: Option<Rational64> = None;
    let mut arg: Vec<Vec<i64>> = Vec::new();
    let mut idx = vec![0usize; a.len()];
    loop {
        let z: Vec<i64> = idx.iter().zip(&ranges).map(|(&i, r)| r[i]).collect();
        let val: Rational64 = z
            .iter()
            .zip(a.iter().zip(c))
            .map(|(&zi, (&ai, &ci))| {
                let t = Rational64::from(zi) + Rational64::new(ai, 4) - Rational64::new(ci, 2);
                t * t
            })
            .sum();
        match best {
            Some(b) if val > b => {}
            Some(b) if val == b => arg.push(z),
            _ => {
                best = Some(val);
                arg = vec![z];
            }
        }
        let mut pos = 0;
        loop {
            if pos == a.len() {
                arg.sort();
                return (best.unwrap_or_default(), arg);
            }
            idx[pos] += 1;
            if idx[pos] < ranges[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// `η = Σ_{z ∈ Φ_min} (−1)^{Σzᵢ²} T^{Σaᵢ(cᵢ − 2zᵢ)}` as exponent → coefficient.
pub fn brute_eta(a: &[i64], c: &[i64]) -> BTreeMap<i64, i64> {
    let (_, phi) = brute_kappa(a, c);
    let mut out: BTreeMap<i64, i64> = BTreeMap::new();
    for z in phi {
        let mu: i64 = z.iter().map(|x| x * x).sum();
        let nu: i64 = z.iter().zip(a.iter().zip(c)).map(|(&zi, (&ai, &ci))| ai * (ci - 2 * zi)).sum();
        let sign = if mu % 2 == 0 { 1 } else { -1 };
        *out.entry(nu).or_default() += sign;
    }
    out.retain(|_, v| *v != 0);
    out
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division of integer polynomials (ascending coefficients).
fn poly_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dl = den.len();
    let lead = *den.last().unwrap();
    let mut q = vec![0; num.len() + 1 - dl];
    for i in (0..q.len()).rev() {
        let coef = rem[i + dl - 1] / lead;
        q[i] = coef;
        for (j, d) in den.iter().enumerate() {
            rem[i + j] -= coef * d;
        }
    }
    assert!(rem.iter().all(|&r| r == 0), "inexact division");
    q
}

fn t_pow_minus_one(n: usize) -> Vec<i64> {
    let mut v = vec![0; n + 1];
    v[0] = -1;
    v[n] = 1;
    v
}

/// Symmetric Alexander coefficients of `T(p,q)`:
/// `(t^{pq} − 1)(t − 1) / ((t^p − 1)(t^q − 1))`.
pub fn torus_alexander(p: usize, q: usize) -> Vec<i64> {
    let num = poly_mul(&t_pow_minus_one(p * q), &t_pow_minus_one(1));
    let den = poly_mul(&t_pow_minus_one(p), &t_pow_minus_one(q));
    let mut coeffs = poly_div(&num, &den);
    while coeffs.last() == Some(&0) {
        coeffs.pop();
    }
    coeffs.reverse();
    coeffs
}

/// `t_s = Σ_{j ≥ 1} j·a_{s+j}` with `coeffs` indexed by exponent `−g … g`.
pub fn torsion_oracle(coeffs: &[i64], s: i64) -> i64 {
    let g = (coeffs.len() as i64 - 1) / 2;
    (1..=g).filter(|&j| s + j <= g).map(|j| j * coeffs[(s + j + g) as usize]).sum()
}

/// Symmetric Alexander coefficients of the staircase with exponents `n`.
pub fn staircase_alexander(n: &[u64]) -> Vec<i64> {
    let m = n.len();
    let top = *n.last().unwrap() as usize;
    let mut coeffs = vec![0i64; 2 * top + 1];
    coeffs[top] = if m.is_multiple_of(2) { 1 } else { -1 };
    for (i, &ni) in n.iter().enumerate() {
        let sign = if (m - (i + 1)).is_multiple_of(2) { 1 } else { -1 };
        coeffs[top + ni as usize] = sign;
        coeffs[top - ni as usize] = sign;
    }
    coeffs
}

/// `V_s` for a thin knot straight from `max(⌊(τ + 1 − s)/2⌋, 0)`.
pub fn thin_oracle(tau: i64, s: i64) -> i64 {
    if tau <= 0 {
        0
    } else {
        ((tau + 1 - s).div_euclid(2)).max(0)
    }
}
