//! Declarative JSON description of a construction.
//!
//! ```json
//! {"kind": "union2",
//!  "factors": [{"n": 2, "rows": [[1,2],[1,2]]}, "x3.txt"],
//!  "alphas": [[2,1], [2,3,1]]}
//! ```
//!
//! Factors are inline matrices or paths (relative paths resolve against
//! the directory of the recipe file). Permutations are 1-based image lists.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{
    abelian_solution, multiperm_tower, partitioned_construction, tensor, theta_construction,
    union2, union_iterated,
};
use crate::error::{ConstructionError, Error, Result};
use crate::matrix::{CycleMatrix, LabelMatrix, MatrixJson};
use crate::perm::Permutation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockKind {
    Tensor,
    Partitioned,
    Union2,
    UnionIterated,
    Theta,
    Tower,
    Abelian,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixSource {
    Inline(MatrixJson),
    Path(PathBuf),
}

impl MatrixSource {
    fn load(&self, base: Option<&Path>) -> Result<CycleMatrix> {
        match self {
            MatrixSource::Inline(json) => CycleMatrix::new(json.clone().into_matrix()?),
            MatrixSource::Path(p) => {
                let path = match base {
                    Some(dir) if p.is_relative() => dir.join(p),
                    _ => p.clone(),
                };
                let text = std::fs::read_to_string(&path).map_err(|e| {
                    ConstructionError::Spec(format!("cannot read {}: {e}", path.display()))
                })?;
                CycleMatrix::new(LabelMatrix::parse(&text)?)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockSpec {
    pub kind: BlockKind,
    #[serde(default)]
    pub factors: Vec<MatrixSource>,
    /// Per-factor automorphisms on local labels.
    #[serde(default)]
    pub alphas: Vec<Permutation>,
    /// Image table on factor indices.
    #[serde(default)]
    pub theta: Option<Permutation>,
    /// Contiguous block sizes of the first factor.
    #[serde(default)]
    pub partition: Option<Vec<usize>>,
    /// Per-block permutations of the first factor, local to each block.
    #[serde(default)]
    pub block_alpha1: Vec<Permutation>,
    /// Per-block permutations of the second factor.
    #[serde(default)]
    pub block_alpha2: Vec<Permutation>,
    /// Automorphisms of the partial unions, stages 2..l-1.
    #[serde(default)]
    pub cumulative: Vec<Permutation>,
    #[serde(default)]
    pub generators: Vec<Permutation>,
    /// Tower exponent, or the acted-on size for `abelian`.
    #[serde(default)]
    pub m: Option<usize>,
}

impl BlockSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| ConstructionError::Spec(e.to_string()).into())
    }

    /// Builds the described matrix. `base` resolves relative factor paths.
    pub fn build(&self, base: Option<&Path>) -> Result<CycleMatrix> {
        let factors = self
            .factors
            .iter()
            .map(|f| f.load(base))
            .collect::<Result<Vec<_>>>()?;
        let need_factors = |k: usize| -> Result<()> {
            if factors.len() == k {
                Ok(())
            } else {
                Err(ConstructionError::Count {
                    what: "factors",
                    expected: k,
                    found: factors.len(),
                }
                .into())
            }
        };
        let need_m = || -> Result<usize> {
            self.m
                .ok_or_else(|| Error::from(ConstructionError::Spec("missing field `m`".into())))
        };
        match self.kind {
            BlockKind::Tensor => {
                let mut it = factors.iter();
                let first = it.next().ok_or(ConstructionError::Count {
                    what: "factors",
                    expected: 2,
                    found: 0,
                })?;
                it.try_fold(first.clone(), |acc, f| tensor(&acc, f))
            }
            BlockKind::Partitioned => {
                need_factors(2)?;
                let partition = self.partition.clone().ok_or_else(|| {
                    Error::from(ConstructionError::Spec("missing field `partition`".into()))
                })?;
                partitioned_construction(
                    &factors[0],
                    &factors[1],
                    &partition,
                    &self.block_alpha1,
                    &self.block_alpha2,
                )
            }
            BlockKind::Union2 => {
                need_factors(2)?;
                if self.alphas.len() != 2 {
                    return Err(ConstructionError::Count {
                        what: "factor automorphisms",
                        expected: 2,
                        found: self.alphas.len(),
                    }
                    .into());
                }
                union2(&factors[0], &factors[1], &self.alphas[0], &self.alphas[1])
            }
            BlockKind::UnionIterated => union_iterated(&factors, &self.alphas, &self.cumulative),
            BlockKind::Theta => {
                let theta = self.theta.clone().ok_or_else(|| {
                    Error::from(ConstructionError::Spec("missing field `theta`".into()))
                })?;
                theta_construction(&factors, &self.alphas, &theta)
            }
            BlockKind::Tower => multiperm_tower(need_m()?),
            BlockKind::Abelian => abelian_solution(&self.generators, need_m()?),
        }
    }
}
