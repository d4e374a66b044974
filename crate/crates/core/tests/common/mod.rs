//! Generators and independent reference computations shared by the
//! integration tests. Nothing here calls into the library's algorithms;
//! oracles work on plain arrays.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use qmop_core::{IntMatrix, RatMatrix, Rational};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

pub fn int_matrix(rows: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()).unwrap()
}

pub fn random_int_rows(rng: &mut ChaCha8Rng, d: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    (0..d).map(|_| (0..d).map(|_| rng.gen_range(lo..=hi)).collect()).collect()
}

pub fn random_mmp8(rng: &mut ChaCha8Rng) -> Vec<Vec<Vec<i64>>> {
    (0..8).map(|_| random_int_rows(rng, 3, -5, 5)).collect()
}

// ---------------------------------------------------------------------------
// Plain integer 3x3 arithmetic (i128) for checking zero products.

pub type M3 = [[i128; 3]; 3];

pub fn m3(rows: &[Vec<i64>]) -> M3 {
    let mut m = [[0i128; 3]; 3];
    for r in 0..3 {
        for c in 0..3 {
            m[r][c] = rows[r][c] as i128;
        }
    }
    m
}

pub fn m3_mul(a: &M3, b: &M3) -> M3 {
    let mut out = [[0i128; 3]; 3];
    for r in 0..3 {
        for c in 0..3 {
            out[r][c] = (0..3).map(|k| a[r][k] * b[k][c]).sum();
        }
    }
    out
}

/// `M_{w_n} ⋯ M_{w_1}` with 1-based indices.
pub fn m3_word(gens: &[M3], word: &[usize]) -> M3 {
    let mut acc = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    for &j in word {
        acc = m3_mul(&gens[j - 1], &acc);
    }
    acc
}

pub fn m3_is_zero(m: &M3) -> bool {
    m.iter().flatten().all(|&x| x == 0)
}

// ---------------------------------------------------------------------------
// Planted mortal instances.

fn cross(a: [i64; 3], b: [i64; 3]) -> [i64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn small_vec(rng: &mut ChaCha8Rng) -> [i64; 3] {
    loop {
        let v = [rng.gen_range(-2..=2), rng.gen_range(-2..=2), rng.gen_range(-2..=2)];
        if v != [0, 0, 0] {
            return v;
        }
    }
}

fn outer(x: [i64; 3], y: [i64; 3]) -> Vec<Vec<i64>> {
    (0..3).map(|r| (0..3).map(|c| x[r] * y[c]).collect()).collect()
}

fn orthogonal_to(rng: &mut ChaCha8Rng, x: [i64; 3]) -> [i64; 3] {
    loop {
        let w = cross(x, small_vec(rng));
        if w != [0, 0, 0] {
            return w;
        }
    }
}

/// Eight integer 3x3 generators with a zero product of length at most 4
/// planted among random fillers. `kind` picks the planted pattern.
pub fn planted_mortal(rng: &mut ChaCha8Rng, kind: usize) -> Vec<Vec<Vec<i64>>> {
    let mut gens = random_mmp8(rng);
    let mut slots: Vec<usize> = (0..8).collect();
    slots.shuffle(rng);
    match kind % 4 {
        // Rank-one nilpotent x yᵀ with y ⟂ x: squares to zero.
        0 => {
            let x = small_vec(rng);
            gens[slots[0]] = outer(x, orthogonal_to(rng, x));
        }
        // Two rank-one matrices, B·A = z (wᵀx) yᵀ = 0.
        1 => {
            let (x, y, z) = (small_vec(rng), small_vec(rng), small_vec(rng));
            gens[slots[0]] = outer(x, y);
            gens[slots[1]] = outer(z, orthogonal_to(rng, x));
        }
        // Strictly triangular after a coordinate permutation: cube is zero.
        2 => {
            let (a, b, c) = (rng.gen_range(1..=5), rng.gen_range(1..=5), rng.gen_range(-5..=5));
            let upper = [[0, a, c], [0, 0, b], [0, 0, 0]];
            let mut perm = [0usize, 1, 2];
            perm.shuffle(rng);
            gens[slots[0]] = (0..3).map(|r| (0..3).map(|col| upper[perm[r]][perm[col]]).collect()).collect();
        }
        // P = diag(1,1,0) and K = v e1 e3ᵀ, which only reads the coordinate
        // P removes: K·P = 0.
        _ => {
            gens[slots[0]] = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 0]];
            let v = rng.gen_range(1..=5);
            gens[slots[1]] = vec![vec![0, 0, v], vec![0, 0, 0], vec![0, 0, 0]];
        }
    }
    gens
}

// ---------------------------------------------------------------------------
// Random complete quantum devices from rational orthogonal matrices.

fn identity_rat(n: usize) -> Vec<Vec<Rational>> {
    (0..n)
        .map(|r| (0..n).map(|c| if r == c { Rational::one() } else { Rational::zero() }).collect())
        .collect()
}

fn mul_rat(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let (n, m, p) = (a.len(), b.len(), b[0].len());
    (0..n)
        .map(|r| {
            (0..p)
                .map(|c| (0..m).fold(Rational::zero(), |acc, k| acc + &a[r][k] * &b[k][c]))
                .collect()
        })
        .collect()
}

/// `1 - 2 v vᵀ / (vᵀ v)`.
fn reflection(v: &[i64]) -> Vec<Vec<Rational>> {
    let n = v.len();
    let norm: i64 = v.iter().map(|x| x * x).sum();
    let mut h = identity_rat(n);
    for r in 0..n {
        for c in 0..n {
            h[r][c] -= ratio(2 * v[r] * v[c], norm);
        }
    }
    h
}

/// A `Kd x d` rational isometry: a random signed permutation followed by a
/// few reflections along sparse integer vectors, first `d` columns kept.
pub fn random_isometry(rng: &mut ChaCha8Rng, d: usize, k: usize) -> RatMatrix {
    let n = k * d;
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut q: Vec<Vec<Rational>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    if perm[r] == c {
                        if rng.gen_bool(0.5) { Rational::one() } else { -Rational::one() }
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    let reflections = rng.gen_range(0..=3);
    for _ in 0..reflections {
        let mut v = vec![0i64; n];
        let support = rng.gen_range(1..=n.min(3));
        for _ in 0..support {
            v[rng.gen_range(0..n)] = rng.gen_range(-2..=2);
        }
        if v.iter().all(|&x| x == 0) {
            v[0] = 1;
        }
        q = mul_rat(&reflection(&v), &q);
    }
    let data: Vec<Rational> = q.iter().flat_map(|row| row[..d].to_vec()).collect();
    RatMatrix::new(n, d, data).unwrap()
}

/// `Σ_j A_j† A_j` by plain loops.
pub fn completeness_oracle(kraus: &[RatMatrix]) -> Vec<Vec<Rational>> {
    let d = kraus[0].cols();
    let mut s = vec![vec![Rational::zero(); d]; d];
    for a in kraus {
        for r in 0..d {
            for c in 0..d {
                for k in 0..a.rows() {
                    s[r][c] += &a[(k, r)] * &a[(k, c)];
                }
            }
        }
    }
    s
}

pub fn is_identity_rows(m: &[Vec<Rational>]) -> bool {
    m.iter().enumerate().all(|(r, row)| {
        row.iter().enumerate().all(|(c, x)| if r == c { x.is_one() } else { x.is_zero() })
    })
}

/// `tr(P P†) / d` for `P = A_{w_n} ⋯ A_{w_1}`: the probability of `word` on
/// the maximally mixed input, by plain loops.
pub fn mixed_probability_oracle(kraus: &[RatMatrix], word: &[usize]) -> Rational {
    let d = kraus[0].rows();
    let to_rows = |m: &RatMatrix| -> Vec<Vec<Rational>> {
        (0..d).map(|r| (0..d).map(|c| m[(r, c)].clone()).collect()).collect()
    };
    let mut p = identity_rat(d);
    for &j in word {
        p = mul_rat(&to_rows(&kraus[j - 1]), &p);
    }
    let total = p.iter().flatten().fold(Rational::zero(), |acc, x| acc + x * x);
    total / Rational::from_integer(BigInt::from(d))
}

/// `1 / (d · max_j N_j²)`, `N_j` the lcm of the denominators of `A_j`.
pub fn gap_oracle(kraus: &[RatMatrix]) -> Rational {
    let d = kraus[0].rows();
    let n = kraus
        .iter()
        .map(|a| {
            let nj = a.entries().iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            &nj * &nj
        })
        .max()
        .unwrap();
    Rational::new(BigInt::one(), BigInt::from(d) * n)
}

/// All words of length `len` over `1..=k`, lexicographic.
pub fn words_of_length(k: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (1..=k).map(move |j| {
                    let mut w2 = w.clone();
                    w2.push(j);
                    w2
                })
            })
            .collect();
    }
    out
}

// ---------------------------------------------------------------------------
// Zero-pattern enumeration on plain boolean arrays.

pub type Pattern = Vec<Vec<bool>>;

pub fn pattern_of(rows: &[Vec<i64>]) -> Pattern {
    rows.iter().map(|r| r.iter().map(|&x| x > 0).collect()).collect()
}

pub fn pattern_mul(a: &Pattern, b: &Pattern) -> Pattern {
    let n = a.len();
    (0..n)
        .map(|r| (0..n).map(|c| (0..n).any(|k| a[r][k] && b[k][c])).collect())
        .collect()
}

fn pattern_is_zero(p: &Pattern) -> bool {
    p.iter().flatten().all(|&x| !x)
}

/// Result of the plain enumeration: the shortest, then lexicographically
/// smallest, zero word if one of length `<= max_len` exists.
#[derive(Debug, PartialEq, Eq)]
pub enum Enumerated {
    Zero(Vec<usize>),
    /// No zero product exists at any length (the level sets cycled or died).
    NeverZero,
    /// No zero up to `max_len`, and the enumeration could not close.
    Unknown,
}

/// Walks the sets `S_n` of products of words of length `n`, each product
/// tagged with its lexicographically smallest word. Stops at the first zero,
/// or when `S_n` repeats an earlier level (then no new products can ever
/// appear), or at `max_len`.
pub fn enumerate_patterns(gens: &[Pattern], max_len: usize) -> Enumerated {
    let n = gens[0].len();
    let id: Pattern = (0..n).map(|r| (0..n).map(|c| r == c).collect()).collect();
    let mut level: Vec<(Pattern, Vec<usize>)> = vec![(id, Vec::new())];
    let mut history: Vec<Vec<Pattern>> = Vec::new();
    for _ in 1..=max_len {
        let mut next: Vec<(Pattern, Vec<usize>)> = Vec::new();
        // Level entries are in increasing word order, and extending a
        // smaller prefix always gives a smaller word.
        for (p, w) in &level {
            for (j, g) in gens.iter().enumerate() {
                let q = pattern_mul(g, p);
                if next.iter().all(|(r, _)| *r != q) {
                    let mut w2 = w.clone();
                    w2.push(j + 1);
                    next.push((q, w2));
                }
            }
        }
        if let Some((_, w)) = next.iter().find(|(q, _)| pattern_is_zero(q)) {
            return Enumerated::Zero(w.clone());
        }
        let mut set: Vec<Pattern> = next.iter().map(|(q, _)| q.clone()).collect();
        set.sort();
        if history.contains(&set) {
            return Enumerated::NeverZero;
        }
        history.push(set);
        level = next;
    }
    Enumerated::Unknown
}
