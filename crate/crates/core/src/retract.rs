//! Retraction: the quotient by "equal rows" and its iterates.

use serde::Serialize;

use crate::matrix::{CycleMatrix, LabelMatrix};

/// Surjection from the labels of one stage onto the next. `classes[x]` is
/// the 1-based class of the 1-based label `x + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassMap {
    pub classes: Vec<usize>,
}

impl ClassMap {
    pub fn class_of(&self, label: usize) -> usize {
        self.classes[label - 1]
    }

    pub fn class_count(&self) -> usize {
        self.classes.iter().copied().max().unwrap_or(0)
    }

    /// Members of each class, 1-based, classes in order.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.class_count()];
        for (x, &c) in self.classes.iter().enumerate() {
            out[c - 1].push(x + 1);
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum RetractionOutcome {
    /// Stage `level` is the one-point cycle set.
    Terminates { level: usize },
    /// Stage `stage` has pairwise distinct rows and more than one label.
    Irretractable { stage: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RetractionChain {
    /// `stages[0]` is the input.
    pub stages: Vec<CycleMatrix>,
    /// `class_maps[t]` maps stage `t` onto stage `t + 1`.
    pub class_maps: Vec<ClassMap>,
    pub outcome: RetractionOutcome,
}

impl RetractionChain {
    pub fn level(&self) -> Option<usize> {
        match self.outcome {
            RetractionOutcome::Terminates { level } => Some(level),
            RetractionOutcome::Irretractable { .. } => None,
        }
    }
}

/// Groups labels with identical rows, numbers the classes by their least
/// member and builds the induced cycle set `x̄·ȳ = (x·y)‾`.
///
/// Panics if the quotient is not well defined, which cannot happen for a
/// valid cycle matrix.
pub fn retract_once(m: &CycleMatrix) -> (CycleMatrix, ClassMap) {
    let n = m.n();
    let lm = m.labels();
    let mut class: Vec<usize> = vec![usize::MAX; n];
    let mut reps: Vec<usize> = Vec::new();
    for x in 0..n {
        if class[x] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(x);
        for y in x..n {
            if class[y] == usize::MAX && lm.row0(y) == lm.row0(x) {
                class[y] = c;
            }
        }
    }
    let k = reps.len();

    for x in 0..n {
        let rep = reps[class[x]];
        for y in 0..n {
            assert_eq!(
                class[m.at(x, y)],
                class[m.at(rep, y)],
                "retraction not well defined at rows {} and {}",
                x + 1,
                rep + 1
            );
            assert_eq!(
                class[m.at(x, y)],
                class[m.at(x, reps[class[y]])],
                "retraction not well defined at columns {} and {}",
                y + 1,
                reps[class[y]] + 1
            );
        }
    }

    let mut data = Vec::with_capacity(k * k);
    for &rx in &reps {
        for &ry in &reps {
            data.push(class[m.at(rx, ry)]);
        }
    }
    let quotient = CycleMatrix::new_unchecked(LabelMatrix::from_zero_based(k, data));
    let map = ClassMap {
        classes: class.into_iter().map(|c| c + 1).collect(),
    };
    (quotient, map)
}

pub fn retraction_chain(m: &CycleMatrix) -> RetractionChain {
    let mut stages = vec![m.clone()];
    let mut class_maps = Vec::new();
    loop {
        let current = stages.last().expect("non-empty");
        if current.n() == 1 {
            let level = stages.len() - 1;
            return RetractionChain {
                stages,
                class_maps,
                outcome: RetractionOutcome::Terminates { level },
            };
        }
        let (next, map) = retract_once(current);
        if next.n() == current.n() {
            let stage = stages.len() - 1;
            return RetractionChain {
                stages,
                class_maps,
                outcome: RetractionOutcome::Irretractable { stage },
            };
        }
        stages.push(next);
        class_maps.push(map);
    }
}

/// Least `r` with `|Ret^r(X)| = 1`, `Some(0)` for the one-point set and
/// `None` when the chain stalls at an irretractable stage.
pub fn multipermutation_level(m: &CycleMatrix) -> Option<usize> {
    retraction_chain(m).level()
}

/// True when `x ↦ ψ_x` is injective.
pub fn is_irretractable(m: &CycleMatrix) -> bool {
    m.n() > 1 && retract_once(m).0.n() == m.n()
}
