//! Independent oracles and fixture loading shared by the integration tests.
//!
//! Nothing here calls into the search or validation code of the library;
//! matrices are plain `Vec<Vec<usize>>` with 1-based entries.

#![allow(dead_code)]

use std::path::PathBuf;

use cyclemat::{CycleMatrix, LabelMatrix};

pub type Rows = Vec<Vec<usize>>;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

pub fn fixture_labels(name: &str) -> LabelMatrix {
    let text = std::fs::read_to_string(fixture_path(name)).expect("fixture readable");
    LabelMatrix::parse(&text).expect("fixture parses")
}

pub fn fixture(name: &str) -> CycleMatrix {
    CycleMatrix::new(fixture_labels(name)).expect("fixture is a cycle matrix")
}

/// The cycle-set axioms checked literally: left translations bijective,
/// `(x·y)·(x·z) = (y·x)·(y·z)` for all triples, squaring bijective.
pub fn is_cycle_set(m: &Rows) -> bool {
    let n = m.len();
    let op = |x: usize, y: usize| m[x - 1][y - 1];
    let bijective = |f: &dyn Fn(usize) -> usize| {
        let mut seen = vec![false; n + 1];
        (1..=n).all(|x| {
            let y = f(x);
            (1..=n).contains(&y) && !std::mem::replace(&mut seen[y], true)
        })
    };
    if m.iter().any(|r| r.len() != n) {
        return false;
    }
    for x in 1..=n {
        if !bijective(&|y| op(x, y)) {
            return false;
        }
    }
    for x in 1..=n {
        for y in 1..=n {
            for z in 1..=n {
                if op(op(x, y), op(x, z)) != op(op(y, x), op(y, z)) {
                    return false;
                }
            }
        }
    }
    bijective(&|x| op(x, x))
}

/// All permutations of `1..=n` as image lists, by Heap's algorithm, sorted.
pub fn all_perms(n: usize) -> Rows {
    fn heap(k: usize, a: &mut Vec<usize>, out: &mut Rows) {
        if k <= 1 {
            out.push(a.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, a, out);
            if k % 2 == 0 {
                a.swap(i, k - 1);
            } else {
                a.swap(0, k - 1);
            }
        }
    }
    let mut a: Vec<usize> = (1..=n).collect();
    let mut out = Vec::new();
    heap(n, &mut a, &mut out);
    out.sort();
    out
}

/// `(σM)_{ij} = σ(M_{σ⁻¹(i), σ⁻¹(j)})`, written directly.
pub fn relabel(sigma: &[usize], m: &Rows) -> Rows {
    let n = m.len();
    let mut inv = vec![0; n + 1];
    for (i, &s) in sigma.iter().enumerate() {
        inv[s] = i + 1;
    }
    (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| sigma[m[inv[i] - 1][inv[j] - 1] - 1])
                .collect()
        })
        .collect()
}

/// Every valid matrix of order `n`, from all `n`-tuples of permutations.
pub fn naive_enumeration(n: usize) -> Vec<Rows> {
    let perms = all_perms(n);
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        let m: Rows = idx.iter().map(|&i| perms[i].clone()).collect();
        if is_cycle_set(&m) {
            out.push(m);
        }
        let mut d = n;
        loop {
            if d == 0 {
                out.sort();
                return out;
            }
            d -= 1;
            idx[d] += 1;
            if idx[d] < perms.len() {
                break;
            }
            idx[d] = 0;
        }
    }
}

/// Orbit minimum by trying every relabelling.
pub fn brute_canonical(m: &Rows) -> Rows {
    all_perms(m.len())
        .iter()
        .map(|s| relabel(s, m))
        .min()
        .expect("non-empty")
}

/// Stabilizer size by trying every relabelling.
pub fn brute_stabilizer_order(m: &Rows) -> usize {
    all_perms(m.len())
        .iter()
        .filter(|s| relabel(s, m) == *m)
        .count()
}

pub fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&x| a[x - 1]).collect()
}

/// Number of `τ ∈ S_n` with `τσ = στ`.
pub fn centralizer_order(sigma: &[usize]) -> usize {
    all_perms(sigma.len())
        .iter()
        .filter(|t| compose(t, sigma) == compose(sigma, t))
        .count()
}

/// Partition numbers `p(0..=n)` by the standard recurrence over part sizes.
pub fn partition_numbers(n: usize) -> Vec<u64> {
    let mut p = vec![0u64; n + 1];
    p[0] = 1;
    for part in 1..=n {
        for total in part..=n {
            p[total] += p[total - part];
        }
    }
    p
}

/// Leibniz expansion with exact `i128` arithmetic.
pub fn leibniz_det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    all_perms(n)
        .iter()
        .map(|p| {
            let inversions = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            let sign = if inversions % 2 == 0 { 1 } else { -1 };
            (0..n).fold(sign as i128, |acc, i| acc * m[i][p[i] - 1] as i128)
        })
        .sum()
}

/// Orbits of `1..=n` under the rows, by repeated merging.
pub fn naive_orbits(m: &Rows) -> Vec<Vec<usize>> {
    let n = m.len();
    let mut comp: Vec<usize> = (0..=n).collect();
    let mut changed = true;
    while changed {
        changed = false;
        for row in m {
            for y in 1..=n {
                let (a, b) = (comp[y], comp[row[y - 1]]);
                if a != b {
                    let (lo, hi) = (a.min(b), a.max(b));
                    for c in comp.iter_mut() {
                        if *c == hi {
                            *c = lo;
                        }
                    }
                    changed = true;
                }
            }
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for x in 1..=n {
        match blocks.iter_mut().find(|b| comp[b[0]] == comp[x]) {
            Some(b) => b.push(x),
            None => blocks.push(vec![x]),
        }
    }
    blocks
}

pub fn transpose(m: &Rows) -> Rows {
    let n = m.len();
    (0..n).map(|j| (0..n).map(|i| m[i][j]).collect()).collect()
}

/// Class counts of small orders. Up to order 4 they are confirmed by the
/// naive enumeration with brute-force canonical forms; order 5 by agreement
/// of both dedup modes and the orbit-stabilizer sum.
pub const CLASS_COUNTS: [(usize, usize); 5] = [(1, 1), (2, 2), (3, 5), (4, 23), (5, 88)];

/// Raw matrix counts for the same orders.
pub const RAW_COUNTS: [(usize, u64); 5] = [(1, 1), (2, 2), (3, 12), (4, 168), (5, 2640)];
