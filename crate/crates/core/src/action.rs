//! The `Sym_n` action on cycle matrices and everything built on it:
//! canonical forms, isomorphism search and automorphism groups.
//!
//! `σ` acts by relabelling, `(σM)_{ij} = σ(M_{σ⁻¹(i), σ⁻¹(j)})`. Two cycle
//! matrices are isomorphic exactly when they share an orbit, and the
//! stabilizer of `M` is its automorphism group.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::matrix::{CycleMatrix, LabelMatrix};
use crate::perm::{anchored_type0, CycleType, Permutation};

/// Relabels `m` by `sigma`.
pub fn act(sigma: &Permutation, m: &CycleMatrix) -> Result<CycleMatrix> {
    if sigma.len() != m.n() {
        return Err(Error::SizeMismatch {
            expected: m.n(),
            found: sigma.len(),
        });
    }
    Ok(CycleMatrix::new_unchecked(act_labels(sigma, m.labels())))
}

pub(crate) fn act_labels(sigma: &Permutation, m: &LabelMatrix) -> LabelMatrix {
    let n = m.n;
    let mut data = vec![0; n * n];
    for x in 0..n {
        let sx = sigma.apply0(x);
        for y in 0..n {
            data[sx * n + sigma.apply0(y)] = sigma.apply0(m.at(x, y));
        }
    }
    LabelMatrix::from_zero_based(n, data)
}

/// True when `alpha` maps `m` to itself, i.e. `α(x·y) = α(x)·α(y)`.
pub fn is_automorphism(alpha: &Permutation, m: &CycleMatrix) -> bool {
    automorphism_witness(alpha, m).is_none()
}

/// First 1-based label `i` with `α∘ψ_i ≠ ψ_{α(i)}∘α`, if any.
pub fn automorphism_witness(alpha: &Permutation, m: &CycleMatrix) -> Option<usize> {
    if alpha.len() != m.n() {
        return Some(1);
    }
    let n = m.n();
    (0..n)
        .find(|&i| {
            let ai = alpha.apply0(i);
            (0..n).any(|j| alpha.apply0(m.at(i, j)) != m.at(ai, alpha.apply0(j)))
        })
        .map(|i| i + 1)
}

/// The row-major lexicographically least matrix in the orbit of `m`,
/// together with a `σ` such that `act(σ, m)` equals it.
pub fn canonical_form(m: &CycleMatrix) -> (CycleMatrix, Permutation) {
    let n = m.n();
    let keys: Vec<_> = (0..n)
        .map(|x| anchored_type0(m.labels().row0(x), x))
        .collect();
    let min_key = keys.iter().min().expect("order is positive").clone();
    let mut search = CanonSearch {
        m: m.labels(),
        n,
        first_row: least_anchored_row(&min_key),
        best: None,
        best_sigma: Vec::new(),
        generation: 0,
        autos: Vec::new(),
    };
    // Row 1 of σM is σψ_xσ⁻¹ with x = σ⁻¹(1). Its least possible value is
    // fixed by the least anchored cycle type, so only rows with that key
    // can start the minimum, and every candidate shares the same row 1.
    let mut explored = Vec::new();
    for (first, key) in keys.iter().enumerate() {
        if *key != min_key || search.equivalent_to_explored(&[], &explored, first) {
            continue;
        }
        explored.push(first);
        let mut st = PartialRelabel::new(n);
        st.assign(first);
        search.node(&mut st, 0, n, Ordering::Equal);
    }
    let best = search.best.expect("orbit is non-empty");
    let sigma = Permutation::from_zero_based_unchecked(search.best_sigma);
    let canon = CycleMatrix::new_unchecked(LabelMatrix::from_zero_based(n, best));
    debug_assert_eq!(act_labels(&sigma, m.labels()), *canon.labels());
    (canon, sigma)
}

/// The least image list with the given anchored type at label 0: the
/// anchored cycle on `0..L`, then the other cycles shortest first.
fn least_anchored_row((anchor, rest): &(usize, CycleType)) -> Vec<usize> {
    let mut images = Vec::new();
    let mut start = 0;
    for &len in std::iter::once(anchor).chain(rest.0.iter()) {
        images.extend((0..len).map(|k| start + (k + 1) % len));
        start += len;
    }
    images
}

/// Partial bijection between original labels and new labels, where new
/// labels are handed out in increasing order.
#[derive(Clone)]
struct PartialRelabel {
    /// original -> new
    sigma: Vec<Option<usize>>,
    /// new -> original, `len()` is the next free new label
    tau: Vec<usize>,
}

impl PartialRelabel {
    fn new(n: usize) -> Self {
        PartialRelabel {
            sigma: vec![None; n],
            tau: Vec::with_capacity(n),
        }
    }

    fn assign(&mut self, original: usize) -> usize {
        debug_assert!(self.sigma[original].is_none());
        let label = self.tau.len();
        self.sigma[original] = Some(label);
        self.tau.push(original);
        label
    }
}

struct CanonSearch<'a> {
    m: &'a LabelMatrix,
    n: usize,
    /// Row 1 shared by every candidate.
    first_row: Vec<usize>,
    best: Option<Vec<usize>>,
    best_sigma: Vec<usize>,
    /// Bumped whenever `best` changes.
    generation: u64,
    /// Automorphisms of `m` found from ties, on original labels.
    autos: Vec<Vec<usize>>,
}

impl CanonSearch<'_> {
    /// Extends the relabelling so that row 1 comes out as `first_row`,
    /// column by column. Every column is touched in row 1, so once it is
    /// complete the relabelling is total.
    ///
    /// Cells of later rows are compared with the best matrix as soon as
    /// they are decided; `frontier` is the first row-major cell not yet
    /// compared and `cmp` the comparison of everything before it.
    fn node(&mut self, st: &mut PartialRelabel, col: usize, frontier: usize, cmp: Ordering) {
        let n = self.n;
        let Some((frontier, mut cmp)) = self.advance(st, frontier, cmp) else {
            return;
        };
        if col == n {
            self.finish(st, cmp);
            return;
        }
        if col < st.tau.len() {
            let v = self.m.at(st.tau[0], st.tau[col]);
            let want = self.first_row[col];
            match st.sigma[v] {
                Some(label) if label == want => self.node(st, col + 1, frontier, cmp),
                Some(_) => {}
                None if want == st.tau.len() => {
                    st.assign(v);
                    self.node(st, col + 1, frontier, cmp);
                    undo(st, v);
                }
                None => {}
            }
            return;
        }
        // column `col` has no preimage yet: branch over the free originals
        debug_assert_eq!(col, st.tau.len());
        let mut explored = Vec::new();
        for x in 0..n {
            if st.sigma[x].is_some() || self.equivalent_to_explored(&st.tau, &explored, x) {
                continue;
            }
            explored.push(x);
            let gen = self.generation;
            st.assign(x);
            self.node(st, col, frontier, cmp);
            undo(st, x);
            if self.generation != gen {
                // a new best was found below; our prefix now equals it
                cmp = Ordering::Equal;
            }
        }
    }

    /// Compares decided cells from `frontier` on. Returns `None` when the
    /// branch is already worse than the best matrix.
    fn advance(
        &self,
        st: &PartialRelabel,
        mut frontier: usize,
        mut cmp: Ordering,
    ) -> Option<(usize, Ordering)> {
        let n = self.n;
        let Some(best) = &self.best else {
            return Some((frontier, Ordering::Less));
        };
        while cmp == Ordering::Equal && frontier < n * n {
            let (i, j) = (frontier / n, frontier % n);
            if i >= st.tau.len() || j >= st.tau.len() {
                break;
            }
            let Some(value) = st.sigma[self.m.at(st.tau[i], st.tau[j])] else {
                // an unlabelled value will receive a label ≥ tau.len()
                if best[frontier] < st.tau.len() {
                    return None;
                }
                break;
            };
            match value.cmp(&best[frontier]) {
                Ordering::Greater => return None,
                Ordering::Less => cmp = Ordering::Less,
                Ordering::Equal => {}
            }
            frontier += 1;
        }
        Some((frontier, cmp))
    }

    fn finish(&mut self, st: &PartialRelabel, cmp: Ordering) {
        let n = self.n;
        let sigma: Vec<usize> = st
            .sigma
            .iter()
            .map(|s| s.expect("total relabelling"))
            .collect();
        match cmp {
            Ordering::Less => {
                let data = (0..n * n)
                    .map(|idx| sigma[self.m.at(st.tau[idx / n], st.tau[idx % n])])
                    .collect();
                self.best = Some(data);
                self.best_sigma = sigma;
                self.generation += 1;
            }
            Ordering::Equal => {
                // two relabellings give the same matrix: σ_best⁻¹σ fixes m
                let mut best_tau = vec![0; n];
                for (o, &s) in self.best_sigma.iter().enumerate() {
                    best_tau[s] = o;
                }
                let g: Vec<usize> = sigma.iter().map(|&s| best_tau[s]).collect();
                debug_assert!(is_automorphism(
                    &Permutation::from_zero_based_unchecked(g.clone()),
                    &CycleMatrix::new_unchecked(self.m.clone())
                ));
                self.autos.push(g);
            }
            Ordering::Greater => unreachable!("worse branches are cut in advance"),
        }
    }

    /// True when a known automorphism fixing every label in `fixed` maps
    /// `x` into the orbit of an already explored candidate. Such a branch
    /// yields exactly the matrices of the explored one.
    fn equivalent_to_explored(&self, fixed: &[usize], explored: &[usize], x: usize) -> bool {
        if explored.is_empty() || self.autos.is_empty() {
            return false;
        }
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], mut a: usize) -> usize {
            while parent[a] != a {
                parent[a] = parent[parent[a]];
                a = parent[a];
            }
            a
        }
        for g in &self.autos {
            if fixed.iter().any(|&f| g[f] != f) {
                continue;
            }
            for (a, &b) in g.iter().enumerate() {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let root = find(&mut parent, x);
        explored.iter().any(|&e| find(&mut parent, e) == root)
    }
}

fn undo(st: &mut PartialRelabel, original: usize) {
    let popped = st.tau.pop();
    debug_assert_eq!(popped, Some(original));
    st.sigma[original] = None;
}

/// A `σ` with `act(σ, a) = b`, if the two matrices are isomorphic.
pub fn are_isomorphic(a: &CycleMatrix, b: &CycleMatrix) -> Option<Permutation> {
    let mut found = None;
    IsoSearch::new(a, b)?.run(&mut |sigma| {
        found = Some(sigma);
        false
    });
    found
}

/// The full stabilizer of `m` under the action, in lexicographic order of
/// image lists.
pub fn automorphisms(m: &CycleMatrix) -> Vec<Permutation> {
    let mut out = Vec::new();
    if let Some(search) = IsoSearch::new(m, m) {
        search.run(&mut |alpha| {
            out.push(alpha);
            true
        });
    }
    out.sort();
    out
}

/// Backtracking over bijections `σ` with `σ(a_{xy}) = b_{σ(x)σ(y)}`.
///
/// Candidates for `σ(x)` must have the same row cycle type as `x`
/// (`σψ_xσ⁻¹ = ψ'_{σ(x)}`), and every new pair is propagated through the
/// tables until a fixpoint or a contradiction.
struct IsoSearch<'a> {
    a: &'a CycleMatrix,
    b: &'a CycleMatrix,
    types_a: Vec<CycleType>,
    types_b: Vec<CycleType>,
}

#[derive(Clone)]
struct IsoState {
    forward: Vec<Option<usize>>,
    backward: Vec<Option<usize>>,
    assigned: Vec<usize>,
}

impl<'a> IsoSearch<'a> {
    fn new(a: &'a CycleMatrix, b: &'a CycleMatrix) -> Option<Self> {
        if a.n() != b.n() {
            return None;
        }
        if a.diagonal().cycle_type() != b.diagonal().cycle_type() {
            return None;
        }
        let types_a = a.row_cycle_types();
        let types_b = b.row_cycle_types();
        let mut sa = types_a.clone();
        let mut sb = types_b.clone();
        sa.sort();
        sb.sort();
        if sa != sb {
            return None;
        }
        Some(IsoSearch {
            a,
            b,
            types_a,
            types_b,
        })
    }

    /// Calls `emit` on every isomorphism until it returns false.
    fn run(&self, emit: &mut dyn FnMut(Permutation) -> bool) {
        let n = self.a.n();
        let st = IsoState {
            forward: vec![None; n],
            backward: vec![None; n],
            assigned: Vec::with_capacity(n),
        };
        self.branch(st, emit);
    }

    fn branch(&self, st: IsoState, emit: &mut dyn FnMut(Permutation) -> bool) -> bool {
        let n = self.a.n();
        let Some(x) = (0..n).find(|&x| st.forward[x].is_none()) else {
            let images = st.forward.iter().map(|v| v.expect("total")).collect();
            return emit(Permutation::from_zero_based_unchecked(images));
        };
        for y in 0..n {
            if st.backward[y].is_some() || self.types_a[x] != self.types_b[y] {
                continue;
            }
            let mut next = st.clone();
            if self.extend(&mut next, x, y) && !self.branch(next, emit) {
                return false;
            }
        }
        true
    }

    /// Adds `x ↦ y` and closes under the table constraints.
    fn extend(&self, st: &mut IsoState, x: usize, y: usize) -> bool {
        let mut queue = vec![(x, y)];
        while let Some((x, y)) = queue.pop() {
            match (st.forward[x], st.backward[y]) {
                (Some(fy), _) if fy == y => continue,
                (Some(_), _) | (None, Some(_)) => return false,
                (None, None) => {}
            }
            if self.types_a[x] != self.types_b[y] {
                return false;
            }
            st.forward[x] = Some(y);
            st.backward[y] = Some(x);
            st.assigned.push(x);
            for k in 0..st.assigned.len() {
                let x2 = st.assigned[k];
                let y2 = st.forward[x2].expect("assigned");
                queue.push((self.a.at(x, x2), self.b.at(y, y2)));
                queue.push((self.a.at(x2, x), self.b.at(y2, y)));
            }
        }
        true
    }
}
