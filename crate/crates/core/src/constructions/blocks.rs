//! The shared block assembler behind every construction.
//!
//! The matrix is cut into square diagonal blocks, one per factor. The
//! diagonal block of factor `μ` is the factor's table shifted into place.
//! In an off-diagonal block, row `x` (in factor `μ`) and column `y` (in
//! factor `ν`) hold `π(local(y)) + offset(ν)`, where `π` is the permutation
//! of `ν`'s local labels attached to row `x` and block `ν`: local action
//! first, then the global shift.

use crate::error::ConstructionError;
use crate::matrix::LabelMatrix;
use crate::perm::Permutation;

#[derive(Clone, Debug)]
pub struct BlockPlan {
    factors: Vec<LabelMatrix>,
    offsets: Vec<usize>,
    /// `off[row][block]`, identity when `None`.
    off: Vec<Vec<Option<Permutation>>>,
}

impl BlockPlan {
    /// A plan with the given diagonal factors and identity off-diagonal
    /// blocks.
    pub fn new(factors: Vec<LabelMatrix>) -> Self {
        let mut offsets = Vec::with_capacity(factors.len());
        let mut total = 0;
        for f in &factors {
            offsets.push(total);
            total += f.n();
        }
        let off = vec![vec![None; factors.len()]; total];
        BlockPlan {
            factors,
            offsets,
            off,
        }
    }

    pub fn order(&self) -> usize {
        self.off.len()
    }

    pub fn block_count(&self) -> usize {
        self.factors.len()
    }

    pub fn block_size(&self, block: usize) -> usize {
        self.factors[block - 1].n()
    }

    /// 1-based labels covered by a 1-based block.
    pub fn block_range(&self, block: usize) -> std::ops::RangeInclusive<usize> {
        let start = self.offsets[block - 1] + 1;
        start..=start + self.block_size(block) - 1
    }

    /// 1-based block containing the 1-based global label.
    pub fn block_of(&self, label: usize) -> usize {
        self.offsets.partition_point(|&o| o < label)
    }

    /// Attaches `perm` (on the local labels of `block`) to one global row.
    pub fn set_row(
        &mut self,
        row: usize,
        block: usize,
        perm: Permutation,
    ) -> Result<(), ConstructionError> {
        if row == 0 || row > self.order() || block == 0 || block > self.block_count() {
            return Err(ConstructionError::Spec(format!(
                "row {row} or block {block} out of range"
            )));
        }
        if self.block_of(row) == block {
            return Err(ConstructionError::DiagonalBlock { row, block });
        }
        let expected = self.block_size(block);
        if perm.len() != expected {
            return Err(ConstructionError::LabelOutOfBlock {
                row,
                block,
                expected,
                found: perm.len(),
            });
        }
        self.off[row - 1][block - 1] = Some(perm);
        Ok(())
    }

    /// Attaches `perm` to every row of `row_block` in the column block `block`.
    pub fn set_block(
        &mut self,
        row_block: usize,
        block: usize,
        perm: &Permutation,
    ) -> Result<(), ConstructionError> {
        for row in self.block_range(row_block) {
            self.set_row(row, block, perm.clone())?;
        }
        Ok(())
    }

    /// Builds the matrix. No cycle-matrix promise is made.
    pub fn assemble(&self) -> LabelMatrix {
        let n = self.order();
        let mut data = vec![0; n * n];
        for (b, factor) in self.factors.iter().enumerate() {
            let base = self.offsets[b];
            for row in 0..factor.n() {
                let x = base + row;
                for (c, other) in self.factors.iter().enumerate() {
                    let cbase = self.offsets[c];
                    for col in 0..other.n() {
                        let value = if c == b {
                            factor.at(row, col) + base
                        } else {
                            match &self.off[x][c] {
                                Some(p) => p.apply0(col) + cbase,
                                None => col + cbase,
                            }
                        };
                        data[x * n + cbase + col] = value;
                    }
                }
            }
        }
        LabelMatrix::from_zero_based(n, data)
    }
}

/// Builds the block matrix described by `plan`.
pub fn assemble_blocks(plan: &BlockPlan) -> LabelMatrix {
    plan.assemble()
}
