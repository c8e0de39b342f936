//! Exhaustive generation of cycle matrices and isomorphism-class census.
//!
//! The raw search fills the matrix cell by cell in row-major order, trying
//! values in increasing order, so matrices come out in row-major
//! lexicographic order. A cell value is rejected when
//!
//! * it repeats a value in its row or, on the diagonal, an earlier diagonal
//!   entry,
//! * it breaks `i·j ≠ j·i` against an earlier row, or
//! * some cycloid identity that the filled cells already decide fails.
//!
//! Relabelling by a permutation that fixes label 1 conjugates the first
//! row, so the matrices with first row `σrσ⁻¹` are exactly the relabelled
//! matrices with first row `r`. The search therefore runs once per
//! conjugacy class of first rows under that stabilizer and
//! [`enumerate_raw`] produces the rest by relabelling.
//!
//! Classes are deduplicated either by a set of canonical forms or, in
//! orderly mode, by keeping only matrices that equal their own canonical
//! form. Orderly mode also restricts the first row to the least conjugate
//! for each anchored cycle type (see [`Permutation::anchored_type`](crate::Permutation::anchored_type)) and
//! rejects later rows whose anchored type is smaller than the first row's.
//! Canonical matrices satisfy both.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::io;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use crate::action::{automorphisms, canonical_form};
use crate::matrix::{CycleMatrix, LabelMatrix};
use crate::perm::{anchored_type0, next_permutation, CycleType};
use crate::retract::multipermutation_level;
use crate::structure::{is_decomposable, is_transpose_cycle_matrix};

/// Orders up to this use canonical-key dedup under [`DedupMode::Auto`].
pub const KEYED_MAX_ORDER: usize = 5;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// Rows placed successfully.
    pub nodes: u64,
    /// Candidate rows rejected.
    pub prunes: u64,
    /// Complete matrices reached.
    pub leaves: u64,
}

impl std::ops::AddAssign for SearchStats {
    fn add_assign(&mut self, o: Self) {
        self.nodes += o.nodes;
        self.prunes += o.prunes;
        self.leaves += o.leaves;
    }
}

/// Least conjugate for each anchored type at point 1, as 0-based image
/// lists in ascending order: the anchored cycle on `1..L`, then the other
/// cycles on consecutive labels, shortest first.
fn orderly_first_rows(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for parts in partitions(n) {
        let mut anchors = parts.clone();
        anchors.dedup();
        for anchor in anchors {
            let mut rest = parts.clone();
            let at = rest.iter().position(|&l| l == anchor).expect("present");
            rest.remove(at);
            let mut images = Vec::with_capacity(n);
            let mut start = 0;
            for len in std::iter::once(anchor).chain(rest) {
                for k in 0..len {
                    images.push(start + (k + 1) % len);
                }
                start += len;
            }
            out.push(images);
        }
    }
    out.sort_unstable();
    out
}

/// Partitions of `n` as ascending part lists.
fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in min..=rest {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, 1, &mut Vec::new(), &mut out);
    out
}

const UNSET: usize = usize::MAX;

/// Largest order the search supports (row masks are `u64`).
pub const MAX_ORDER: usize = 64;

/// Lazy depth-first enumeration of valid cycle matrices of one order.
///
/// Row 1 is taken whole from a candidate list. The remaining cells are
/// filled one at a time, and each cell value must pass every check that the
/// filled cells already decide.
pub(crate) struct RawEnumerator {
    n: usize,
    first_rows: Vec<Vec<usize>>,
    first_cursor: usize,
    orderly: bool,
    first_key: Option<(usize, CycleType)>,
    /// Index of the next cell to fill; 0 means row 1 is not placed.
    pos: usize,
    /// Next value to try, per cell.
    cursor: Vec<usize>,
    data: Vec<usize>,
    row_used: Vec<u64>,
    diag_used: u64,
    exhausted: bool,
    stats: SearchStats,
}

impl RawEnumerator {
    fn with_first_rows(n: usize, first_rows: Vec<Vec<usize>>, orderly: bool) -> Self {
        assert!(
            (1..=MAX_ORDER).contains(&n),
            "order must be in 1..={MAX_ORDER}"
        );
        RawEnumerator {
            n,
            first_rows,
            first_cursor: 0,
            orderly,
            first_key: None,
            pos: 0,
            cursor: vec![0; n * n],
            data: vec![UNSET; n * n],
            row_used: vec![0; n],
            diag_used: 0,
            exhausted: false,
            stats: SearchStats::default(),
        }
    }

    pub(crate) fn stats(&self) -> SearchStats {
        self.stats
    }

    fn place_first(&mut self, row: usize) {
        let n = self.n;
        let images = &self.first_rows[row];
        self.data[..n].copy_from_slice(images);
        self.row_used[0] = u64::MAX >> (64 - n);
        self.diag_used = 1 << images[0];
        if self.orderly {
            self.first_key = Some(anchored_type0(images, 0));
        }
    }

    fn clear_first(&mut self) {
        let n = self.n;
        self.data[..n].fill(UNSET);
        self.row_used[0] = 0;
        self.diag_used = 0;
    }

    fn unset(&mut self, cell: usize) {
        let (d, c) = (cell / self.n, cell % self.n);
        let v = self.data[cell];
        self.row_used[d] &= !(1 << v);
        if c == d {
            self.diag_used &= !(1 << v);
        }
        self.data[cell] = UNSET;
    }

    /// Steps back one cell, undoing it. Row 1 is undone as a unit.
    fn retreat(&mut self) {
        let n = self.n;
        self.pos -= 1;
        if self.pos < n {
            self.pos = 0;
            self.clear_first();
        } else {
            self.unset(self.pos);
        }
    }

    fn admissible(&self, d: usize, c: usize, v: usize) -> bool {
        if self.row_used[d] & (1 << v) != 0 {
            return false;
        }
        if c == d {
            self.diag_used & (1 << v) == 0
        } else if c < d {
            // i·j ≠ j·i
            v != self.data[c * self.n + d]
        } else {
            true
        }
    }

    /// Checks every decided instance of `(i·j)·(i·k) = (j·i)·(j·k)` whose
    /// four rows are filled up to row `d`.
    fn cycloid_ok(&self, d: usize) -> bool {
        let n = self.n;
        let at = |r: usize, c: usize| self.data[r * n + c];
        for i in 0..=d {
            for j in i + 1..=d {
                let (a, b) = (at(i, j), at(j, i));
                if a == UNSET || b == UNSET || a > d || b > d || i.max(j).max(a).max(b) != d {
                    continue;
                }
                for k in 0..n {
                    let (x, y) = (at(i, k), at(j, k));
                    if x == UNSET || y == UNSET {
                        continue;
                    }
                    let (p, q) = (at(a, x), at(b, y));
                    if p != UNSET && q != UNSET && p != q {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn matrix(&self) -> LabelMatrix {
        LabelMatrix::from_zero_based(self.n, self.data.clone())
    }
}

impl Iterator for RawEnumerator {
    type Item = LabelMatrix;

    fn next(&mut self) -> Option<LabelMatrix> {
        let n = self.n;
        loop {
            if self.exhausted {
                return None;
            }
            if self.pos == 0 {
                if self.first_cursor == self.first_rows.len() {
                    self.exhausted = true;
                    return None;
                }
                self.place_first(self.first_cursor);
                self.first_cursor += 1;
                self.stats.nodes += 1;
                self.pos = n;
                if n == 1 {
                    self.stats.leaves += 1;
                    return Some(self.matrix());
                }
                self.cursor[n] = 0;
                continue;
            }
            if self.pos == n * n {
                self.retreat();
                continue;
            }
            let cell = self.pos;
            let v = self.cursor[cell];
            if v == n {
                self.retreat();
                continue;
            }
            self.cursor[cell] += 1;
            let (d, c) = (cell / n, cell % n);
            if !self.admissible(d, c, v) {
                continue;
            }
            self.data[cell] = v;
            self.row_used[d] |= 1 << v;
            if c == d {
                self.diag_used |= 1 << v;
            }
            let mut ok = self.cycloid_ok(d);
            if ok && c + 1 == n && self.orderly {
                let key = anchored_type0(&self.data[d * n..(d + 1) * n], d);
                ok = Some(&key) >= self.first_key.as_ref();
            }
            if !ok {
                self.unset(cell);
                self.stats.prunes += 1;
                continue;
            }
            if c + 1 == n {
                self.stats.nodes += 1;
            }
            self.pos += 1;
            if self.pos == n * n {
                self.stats.leaves += 1;
                return Some(self.matrix());
            }
            self.cursor[self.pos] = 0;
        }
    }
}

/// Every valid `n×n` cycle matrix exactly once, in row-major lexicographic
/// order. Panics unless `1 ≤ n ≤ 64`.
///
/// Matrices sharing a first row are produced together; only the
/// representative first rows are searched and their results are cached.
pub fn enumerate_raw(n: usize) -> RawStream {
    assert!(
        (1..=MAX_ORDER).contains(&n),
        "order must be in 1..={MAX_ORDER}"
    );
    let reps = orderly_first_rows(n);
    let keys = reps
        .iter()
        .enumerate()
        .map(|(i, r)| (anchored_type0(r, 0), i))
        .collect();
    RawStream {
        n,
        found: vec![None; reps.len()],
        reps,
        keys,
        next_first: Some((0..n).collect()),
        chunk: Vec::new().into_iter(),
        stats: SearchStats::default(),
    }
}

/// Lazy stream of raw matrices returned by [`enumerate_raw`].
pub struct RawStream {
    n: usize,
    reps: Vec<Vec<usize>>,
    keys: BTreeMap<(usize, CycleType), usize>,
    found: Vec<Option<Vec<LabelMatrix>>>,
    next_first: Option<Vec<usize>>,
    chunk: std::vec::IntoIter<LabelMatrix>,
    stats: SearchStats,
}

impl RawStream {
    /// Statistics of the searches run so far.
    pub fn stats(&self) -> SearchStats {
        self.stats
    }

    fn matrices_with_first_row(&mut self, first: &[usize]) -> Vec<LabelMatrix> {
        let rep = self.keys[&anchored_type0(first, 0)];
        if self.found[rep].is_none() {
            let mut it =
                RawEnumerator::with_first_rows(self.n, vec![self.reps[rep].clone()], false);
            let found: Vec<LabelMatrix> = it.by_ref().collect();
            self.stats += it.stats();
            self.found[rep] = Some(found);
        }
        let sigma = conjugator(&self.reps[rep], first);
        let mut out: Vec<LabelMatrix> = self.found[rep]
            .as_ref()
            .expect("searched above")
            .iter()
            .map(|m| relabel0(&sigma, m))
            .collect();
        out.sort_unstable();
        out
    }
}

impl Iterator for RawStream {
    type Item = LabelMatrix;

    fn next(&mut self) -> Option<LabelMatrix> {
        loop {
            if let Some(m) = self.chunk.next() {
                return Some(m);
            }
            let first = self.next_first.take()?;
            self.chunk = self.matrices_with_first_row(&first).into_iter();
            let mut succ = first;
            if next_permutation(&mut succ) {
                self.next_first = Some(succ);
            }
        }
    }
}

/// Cycles of a 0-based permutation: the one through 0 first, then the rest
/// by length and least element.
fn anchored_cycles(images: &[usize]) -> Vec<Vec<usize>> {
    let n = images.len();
    let mut seen = vec![false; n];
    let mut cycles = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cycle.push(x);
            x = images[x];
        }
        cycles.push(cycle);
    }
    cycles[1..].sort_by_key(|c| c.len());
    cycles
}

/// A permutation `σ` with `σ(0) = 0` and `σ r σ⁻¹ = t`, for `r` and `t` of
/// equal anchored type at 0.
fn conjugator(r: &[usize], t: &[usize]) -> Vec<usize> {
    let mut sigma = vec![0; r.len()];
    for (a, b) in anchored_cycles(r).iter().zip(anchored_cycles(t)) {
        debug_assert_eq!(a.len(), b.len());
        for (&x, y) in a.iter().zip(b) {
            sigma[x] = y;
        }
    }
    sigma
}

/// `(σM)_{σi,σj} = σ(M_ij)` on 0-based data.
fn relabel0(sigma: &[usize], m: &LabelMatrix) -> LabelMatrix {
    let n = m.n;
    let mut data = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            data[sigma[i] * n + sigma[j]] = sigma[m.data[i * n + j]];
        }
    }
    LabelMatrix::from_zero_based(n, data)
}

/// Number of first rows conjugate to `r` under the permutations fixing 0.
fn conjugate_count(r: &[usize]) -> u64 {
    let cycles = anchored_cycles(r);
    let anchor = cycles[0].len();
    let mut multiplicity: BTreeMap<usize, u64> = BTreeMap::new();
    for c in &cycles {
        *multiplicity.entry(c.len()).or_default() += 1;
    }
    // centralizer in the stabilizer of 0: the full centralizer divided by
    // the rotations and moves of the anchored cycle
    let mut centralizer: u128 = 1;
    for (&len, &mult) in &multiplicity {
        for k in 1..=mult {
            centralizer *= len as u128 * k as u128;
        }
    }
    centralizer /= anchor as u128 * multiplicity[&anchor] as u128;
    let stabilizer: u128 = (1..r.len() as u128).product();
    u64::try_from(stabilizer / centralizer).expect("order too large to count")
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DedupMode {
    /// Canonical keys up to [`KEYED_MAX_ORDER`], orderly above.
    #[default]
    Auto,
    CanonicalKeys,
    Orderly,
}

impl DedupMode {
    fn resolve(self, n: usize) -> DedupMode {
        match self {
            DedupMode::Auto if n <= KEYED_MAX_ORDER => DedupMode::CanonicalKeys,
            DedupMode::Auto => DedupMode::Orderly,
            m => m,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ClassEnumeration {
    /// One canonical representative per class, ascending.
    pub classes: Vec<CycleMatrix>,
    /// Number of raw matrices, from the representative subtrees weighted by
    /// the size of their first-row class; only in canonical-key mode.
    pub raw_seen: Option<u64>,
    pub stats: SearchStats,
    pub mode: DedupMode,
}

/// Class representatives in orderly mode, lazily and in ascending order.
pub fn enumerate_classes_lazy(n: usize) -> impl Iterator<Item = CycleMatrix> {
    assert!(n >= 1, "order must be positive");
    RawEnumerator::with_first_rows(n, orderly_first_rows(n), true).filter_map(keep_if_canonical)
}

fn keep_if_canonical(m: LabelMatrix) -> Option<CycleMatrix> {
    let m = CycleMatrix::new_unchecked(m);
    let (canon, _) = canonical_form(&m);
    (canon == m).then_some(m)
}

/// One canonical representative per isomorphism class, ascending.
pub fn enumerate_classes(n: usize) -> Vec<CycleMatrix> {
    enumerate_classes_with(n, DedupMode::Auto, 1).classes
}

/// Splits the search on the first row and runs the subtrees on `jobs`
/// worker threads. The result does not depend on `jobs`.
pub fn enumerate_classes_with(n: usize, mode: DedupMode, jobs: usize) -> ClassEnumeration {
    assert!(n >= 1, "order must be positive");
    let mode = mode.resolve(n);
    let orderly = mode == DedupMode::Orderly;
    // every raw matrix is a relabelling of one whose first row is a
    // representative, so both modes search only those subtrees
    let first_rows = orderly_first_rows(n);

    let run_subtree = |first: &Vec<usize>| -> (Vec<CycleMatrix>, u64, SearchStats) {
        let mut it = RawEnumerator::with_first_rows(n, vec![first.clone()], orderly);
        let weight = if orderly { 0 } else { conjugate_count(first) };
        let mut found = BTreeSet::new();
        let mut raw = 0u64;
        for m in it.by_ref() {
            raw += weight;
            if orderly {
                if let Some(c) = keep_if_canonical(m) {
                    found.insert(c);
                }
            } else {
                found.insert(canonical_form(&CycleMatrix::new_unchecked(m)).0);
            }
        }
        (found.into_iter().collect(), raw, it.stats())
    };

    let results: Vec<_> = if jobs <= 1 {
        first_rows.iter().map(run_subtree).collect()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("worker pool")
            .install(|| first_rows.par_iter().map(run_subtree).collect())
    };

    let mut classes = BTreeSet::new();
    let mut raw = 0;
    let mut stats = SearchStats::default();
    for (found, r, s) in results {
        classes.extend(found);
        raw += r;
        stats += s;
    }
    ClassEnumeration {
        classes: classes.into_iter().collect(),
        raw_seen: (!orderly).then_some(raw),
        stats,
        mode,
    }
}

/// Constraints on class representatives; unset fields do not constrain.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EnumFilter {
    pub square_free: Option<bool>,
    pub indecomposable: Option<bool>,
    pub transpose: Option<bool>,
    pub max_level: Option<usize>,
    pub permutation_only: Option<bool>,
}

impl EnumFilter {
    pub fn is_empty(&self) -> bool {
        *self == EnumFilter::default()
    }

    pub fn matches(&self, m: &CycleMatrix) -> bool {
        self.square_free
            .is_none_or(|want| m.is_square_free() == want)
            && self
                .indecomposable
                .is_none_or(|want| !is_decomposable(m) == want)
            && self
                .transpose
                .is_none_or(|want| is_transpose_cycle_matrix(m) == want)
            && self
                .permutation_only
                .is_none_or(|want| m.is_permutation_solution() == want)
            && self
                .max_level
                .is_none_or(|max| multipermutation_level(m).is_some_and(|l| l <= max))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PredicateCounts {
    pub square_free: u64,
    pub indecomposable: u64,
    pub transpose: u64,
    pub permutation: u64,
    pub irretractable: u64,
    /// Multipermutation level histogram over retractable classes.
    pub levels: BTreeMap<usize, u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub n: usize,
    pub mode: DedupMode,
    pub raw_count: u64,
    pub iso_count: u64,
    pub filter: EnumFilter,
    /// Classes satisfying every constraint of `filter`.
    pub matching: u64,
    pub counts: PredicateCounts,
    pub stats: SearchStats,
}

/// Enumerates the classes of order `n` and tallies them.
///
/// `raw_count` is the number of raw matrices; in orderly mode it is
/// recovered as `Σ n!/|Aut(rep)|` over the representatives.
pub fn census(n: usize, filter: &EnumFilter, jobs: usize) -> CensusReport {
    census_with(n, filter, jobs, DedupMode::Auto)
}

pub fn census_with(n: usize, filter: &EnumFilter, jobs: usize, mode: DedupMode) -> CensusReport {
    let run = enumerate_classes_with(n, mode, jobs);
    let factorial: u64 = (1..=n as u64).product();
    let orbit_total: u64 = run
        .classes
        .iter()
        .map(|c| factorial / automorphisms(c).len() as u64)
        .sum();
    if let Some(raw) = run.raw_seen {
        assert_eq!(
            raw, orbit_total,
            "orbit sizes do not add up to the raw count"
        );
    }

    let mut counts = PredicateCounts::default();
    let mut matching = 0;
    for c in &run.classes {
        counts.square_free += c.is_square_free() as u64;
        counts.indecomposable += !is_decomposable(c) as u64;
        counts.transpose += is_transpose_cycle_matrix(c) as u64;
        counts.permutation += c.is_permutation_solution() as u64;
        match multipermutation_level(c) {
            Some(l) => *counts.levels.entry(l).or_default() += 1,
            None => counts.irretractable += 1,
        }
        matching += filter.matches(c) as u64;
    }
    CensusReport {
        n,
        mode: run.mode,
        raw_count: orbit_total,
        iso_count: run.classes.len() as u64,
        filter: filter.clone(),
        matching,
        counts,
        stats: run.stats,
    }
}

impl CensusReport {
    /// Plain-text table, one `key value` pair per line.
    pub fn to_table(&self) -> String {
        let mut s = String::new();
        let mode = match self.mode {
            DedupMode::CanonicalKeys => "canonical-keys",
            DedupMode::Orderly => "orderly",
            DedupMode::Auto => "auto",
        };
        let _ = writeln!(s, "{:<16}{}", "n", self.n);
        let _ = writeln!(s, "{:<16}{}", "mode", mode);
        let _ = writeln!(s, "{:<16}{}", "raw", self.raw_count);
        let _ = writeln!(s, "{:<16}{}", "classes", self.iso_count);
        if !self.filter.is_empty() {
            let _ = writeln!(s, "{:<16}{}", "matching", self.matching);
        }
        let _ = writeln!(s, "{:<16}{}", "square-free", self.counts.square_free);
        let _ = writeln!(s, "{:<16}{}", "indecomposable", self.counts.indecomposable);
        let _ = writeln!(s, "{:<16}{}", "transpose", self.counts.transpose);
        let _ = writeln!(s, "{:<16}{}", "permutation", self.counts.permutation);
        let _ = writeln!(s, "{:<16}{}", "irretractable", self.counts.irretractable);
        for (level, count) in &self.counts.levels {
            let _ = writeln!(s, "{:<16}{}", format!("level {level}"), count);
        }
        let _ = writeln!(s, "{:<16}{}", "nodes", self.stats.nodes);
        let _ = writeln!(s, "{:<16}{}", "prunes", self.stats.prunes);
        s
    }
}

/// Writes one text-format file per matrix, named `class_0001.txt`, … .
pub fn write_representatives(dir: &Path, classes: &[CycleMatrix]) -> io::Result<()> {
    std::fs::create_dir_all(dir)?;
    let width = classes.len().to_string().len().max(4);
    for (k, c) in classes.iter().enumerate() {
        let name = format!("class_{:0width$}.txt", k + 1, width = width);
        std::fs::write(dir.join(name), c.to_string())?;
    }
    Ok(())
}
