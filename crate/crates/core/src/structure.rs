//! Orbits of the permutation group, decomposability and transpose cycle
//! matrices.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::matrix::{validate, CycleMatrix};
use crate::perm::Permutation;

pub const DEFAULT_GROUP_LIMIT: usize = 1_000_000;

/// Orbits of `{1..n}` under the group generated by the rows `ψ_1..ψ_n`.
///
/// Blocks are sorted internally and ordered by least element.
pub fn point_orbits(m: &CycleMatrix) -> Vec<Vec<usize>> {
    let n = m.n();
    let mut block: Vec<Option<usize>> = vec![None; n];
    let mut out = Vec::new();
    for start in 0..n {
        if block[start].is_some() {
            continue;
        }
        let id = out.len();
        let mut members = vec![start];
        block[start] = Some(id);
        let mut queue = VecDeque::from([start]);
        while let Some(y) = queue.pop_front() {
            // column y is carried to the columns m[x][y]
            for x in 0..n {
                let z = m.at(x, y);
                if block[z].is_none() {
                    block[z] = Some(id);
                    members.push(z);
                    queue.push_back(z);
                }
            }
        }
        members.sort_unstable();
        out.push(members.into_iter().map(|x| x + 1).collect());
    }
    out
}

/// More than one orbit, i.e. the rows generate an intransitive group.
pub fn is_decomposable(m: &CycleMatrix) -> bool {
    point_orbits(m).len() > 1
}

/// Closure of the rows under composition. Fails with
/// [`Error::GroupOverflow`] once more than `limit` elements are found.
///
/// Elements are returned in lexicographic order of image lists.
pub fn permutation_group(m: &CycleMatrix, limit: usize) -> Result<Vec<Permutation>> {
    let mut generators = m.row_permutations();
    generators.sort();
    generators.dedup();
    generators.retain(|g| !g.is_identity());
    closure(&generators, m.n(), limit)
}

pub(crate) fn closure(
    generators: &[Permutation],
    n: usize,
    limit: usize,
) -> Result<Vec<Permutation>> {
    let identity = Permutation::identity(n);
    let mut seen: HashSet<Permutation> = HashSet::from([identity.clone()]);
    let mut queue = VecDeque::from([identity]);
    while let Some(g) = queue.pop_front() {
        for s in generators {
            let h = s.compose(&g);
            if seen.insert(h.clone()) {
                if seen.len() > limit {
                    return Err(Error::GroupOverflow { limit });
                }
                queue.push_back(h);
            }
        }
    }
    let mut out: Vec<Permutation> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// True when the transpose is again a cycle matrix.
pub fn is_transpose_cycle_matrix(m: &CycleMatrix) -> bool {
    let via_transpose = validate(&m.labels().transpose()).valid;
    debug_assert_eq!(via_transpose, transpose_conditions_hold(m));
    via_transpose
}

/// Direct characterisation of transpose cycle sets: every column
/// `x ↦ x·y` is bijective and `(z·x)·(y·x) = (z·y)·(x·y)` for all labels.
pub fn transpose_conditions_hold(m: &CycleMatrix) -> bool {
    let n = m.n();
    let mut seen = vec![false; n];
    for y in 0..n {
        seen.iter_mut().for_each(|s| *s = false);
        for x in 0..n {
            if std::mem::replace(&mut seen[m.at(x, y)], true) {
                return false;
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            let (yx, xy) = (m.at(y, x), m.at(x, y));
            for z in 0..n {
                if m.at(m.at(z, x), yx) != m.at(m.at(z, y), xy) {
                    return false;
                }
            }
        }
    }
    true
}
