//! Recipes that build new cycle matrices from old ones.
//!
//! Every constructor checks its preconditions (automorphisms, commuting
//! families, triviality of factors) and re-validates its output, so the
//! result is either a verified [`CycleMatrix`] or a precise error.

mod blocks;
mod spec;

pub use blocks::{assemble_blocks, BlockPlan};
pub use spec::{BlockKind, BlockSpec, MatrixSource};

use crate::action::{automorphism_witness, automorphisms};
use crate::error::{ConstructionError, Error, Result};
use crate::matrix::{validate, CycleMatrix, LabelMatrix};
use crate::perm::Permutation;

/// Largest tower exponent accepted by [`multiperm_tower`] (order 1024).
pub const MAX_TOWER_EXPONENT: usize = 10;

fn verified(m: LabelMatrix) -> Result<CycleMatrix> {
    let report = validate(&m);
    if report.valid {
        Ok(CycleMatrix::new_unchecked(m))
    } else {
        Err(ConstructionError::Internal(report).into())
    }
}

/// The product cycle set on `U_m × U_n`, relabelled by
/// `(i, j) ↦ (i − 1)·n + j`.
pub fn tensor(a: &CycleMatrix, b: &CycleMatrix) -> Result<CycleMatrix> {
    let (na, nb) = (a.n(), b.n());
    let n = na * nb;
    let mut data = vec![0; n * n];
    for i in 0..na {
        for j in 0..nb {
            let row = i * nb + j;
            for k in 0..na {
                for l in 0..nb {
                    data[row * n + k * nb + l] = a.at(i, k) * nb + b.at(j, l);
                }
            }
        }
    }
    verified(LabelMatrix::from_zero_based(n, data))
}

/// Two trivial solutions glued along a partition of the first one.
///
/// `partition` lists the sizes of the contiguous blocks of `x1`.
/// `alpha1[i]` permutes the local labels of block `i`; `alpha2[i]` permutes
/// the labels of `x2` and is used by the rows of block `i`. The `alpha2`
/// family must commute pairwise.
pub fn partitioned_construction(
    x1: &CycleMatrix,
    x2: &CycleMatrix,
    partition: &[usize],
    alpha1: &[Permutation],
    alpha2: &[Permutation],
) -> Result<CycleMatrix> {
    if !x1.is_trivial() {
        return Err(ConstructionError::NotTrivial { factor: 1 }.into());
    }
    if !x2.is_trivial() {
        return Err(ConstructionError::NotTrivial { factor: 2 }.into());
    }
    let (k1, k2) = (x1.n(), x2.n());
    if partition.contains(&0) || partition.iter().sum::<usize>() != k1 {
        return Err(ConstructionError::BadPartition {
            blocks: partition.to_vec(),
            size: k1,
        }
        .into());
    }
    for (what, family) in [
        ("first-factor block permutations", alpha1),
        ("second-factor block permutations", alpha2),
    ] {
        if family.len() != partition.len() {
            return Err(ConstructionError::Count {
                what,
                expected: partition.len(),
                found: family.len(),
            }
            .into());
        }
    }
    for (a, &size) in alpha1.iter().zip(partition) {
        if a.len() != size {
            return Err(ConstructionError::Count {
                what: "labels in a first-factor block permutation",
                expected: size,
                found: a.len(),
            }
            .into());
        }
    }
    for a in alpha2 {
        if a.len() != k2 {
            return Err(ConstructionError::Count {
                what: "labels in a second-factor permutation",
                expected: k2,
                found: a.len(),
            }
            .into());
        }
    }
    for i in 0..alpha2.len() {
        for j in i + 1..alpha2.len() {
            if !alpha2[i].commutes_with(&alpha2[j]) {
                return Err(ConstructionError::NonCommuting { i: i + 1, j: j + 1 }.into());
            }
        }
    }

    // rows of x2 act on x1 by the direct sum of the block permutations
    let mut direct_sum = Vec::with_capacity(k1);
    let mut offset = 0;
    for (a, &size) in alpha1.iter().zip(partition) {
        direct_sum.extend(a.as_slice().iter().map(|&x| x + offset));
        offset += size;
    }
    let direct_sum = Permutation::from_zero_based_unchecked(direct_sum);

    let mut plan = BlockPlan::new(vec![x1.labels().clone(), x2.labels().clone()]);
    let mut row = 1;
    for (a, &size) in alpha2.iter().zip(partition) {
        for _ in 0..size {
            plan.set_row(row, 2, a.clone())?;
            row += 1;
        }
    }
    plan.set_block(2, 1, &direct_sum)?;
    verified(plan.assemble())
}

/// A solution whose permutation group, restricted to the last `m`
/// labels, is the group generated by `generators`.
///
/// Uses one singleton block per generator in a trivial first factor. With
/// no generators the result is the trivial solution of order `m`.
pub fn abelian_solution(generators: &[Permutation], m: usize) -> Result<CycleMatrix> {
    if m == 0 {
        return Err(ConstructionError::Spec("the acted-on factor must be non-empty".into()).into());
    }
    if generators.is_empty() {
        return Ok(CycleMatrix::trivial(m));
    }
    let k = generators.len();
    let singles = vec![Permutation::identity(1); k];
    partitioned_construction(
        &CycleMatrix::trivial(k),
        &CycleMatrix::trivial(m),
        &vec![1; k],
        &singles,
        generators,
    )
}

fn check_automorphism(alpha: &Permutation, x: &CycleMatrix, factor: usize) -> Result<()> {
    if alpha.len() != x.n() {
        return Err(Error::SizeMismatch {
            expected: x.n(),
            found: alpha.len(),
        });
    }
    match automorphism_witness(alpha, x) {
        None => Ok(()),
        Some(witness) => Err(ConstructionError::NotAutomorphism { factor, witness }.into()),
    }
}

/// `X1 ∪_{α1,α2} X2`: rows of `x1` act on `x2` by `alpha2`, rows of `x2`
/// act on `x1` by `alpha1`.
pub fn union2(
    x1: &CycleMatrix,
    x2: &CycleMatrix,
    alpha1: &Permutation,
    alpha2: &Permutation,
) -> Result<CycleMatrix> {
    check_automorphism(alpha1, x1, 1)?;
    check_automorphism(alpha2, x2, 2)?;
    union2_unchecked(x1, x2, alpha1, alpha2)
}

fn union2_unchecked(
    x1: &CycleMatrix,
    x2: &CycleMatrix,
    alpha1: &Permutation,
    alpha2: &Permutation,
) -> Result<CycleMatrix> {
    let mut plan = BlockPlan::new(vec![x1.labels().clone(), x2.labels().clone()]);
    plan.set_block(1, 2, alpha2)?;
    plan.set_block(2, 1, alpha1)?;
    verified(plan.assemble())
}

/// Left fold of [`union2`]: `(…(X1 ∪ X2) ∪ X3 …) ∪ Xl`.
///
/// `cumulative[t - 2]` is the automorphism of the partial union of the
/// first `t` factors used when gluing factor `t + 1`, for `t = 2..l-1`.
pub fn union_iterated(
    factors: &[CycleMatrix],
    alphas: &[Permutation],
    cumulative: &[Permutation],
) -> Result<CycleMatrix> {
    let mut cumulative = cumulative.iter();
    let l = factors.len();
    if l >= 2 && cumulative.len() != l - 2 {
        return Err(ConstructionError::Count {
            what: "cumulative automorphisms",
            expected: l - 2,
            found: cumulative.len(),
        }
        .into());
    }
    union_iterated_with(factors, alphas, |_, _| cumulative.next().cloned())
}

/// Like [`union_iterated`], but asks `choose` for each cumulative
/// automorphism. `choose(stage, partial)` sees the partial union of the
/// first `stage` factors; returning `None` aborts.
pub fn union_iterated_with(
    factors: &[CycleMatrix],
    alphas: &[Permutation],
    mut choose: impl FnMut(usize, &CycleMatrix) -> Option<Permutation>,
) -> Result<CycleMatrix> {
    let l = factors.len();
    if l < 2 {
        return Err(ConstructionError::Count {
            what: "factors",
            expected: 2,
            found: l,
        }
        .into());
    }
    if alphas.len() != l {
        return Err(ConstructionError::Count {
            what: "factor automorphisms",
            expected: l,
            found: alphas.len(),
        }
        .into());
    }
    for (i, (a, x)) in alphas.iter().zip(factors).enumerate() {
        check_automorphism(a, x, i + 1)?;
    }
    let mut partial = union2_unchecked(&factors[0], &factors[1], &alphas[0], &alphas[1])?;
    for t in 2..l {
        let beta = choose(t, &partial).ok_or_else(|| {
            ConstructionError::Spec(format!("no cumulative automorphism for stage {t}"))
        })?;
        if beta.len() != partial.n() {
            return Err(Error::SizeMismatch {
                expected: partial.n(),
                found: beta.len(),
            });
        }
        if let Some(witness) = automorphism_witness(&beta, &partial) {
            return Err(ConstructionError::NotCumulativeAutomorphism { stage: t, witness }.into());
        }
        partial = union2_unchecked(&partial, &factors[t], &beta, &alphas[t])?;
    }
    Ok(partial)
}

/// Automorphisms of a partial union, for picking cumulative automorphisms.
pub fn partial_union_automorphisms(partial: &CycleMatrix) -> Vec<Permutation> {
    automorphisms(partial)
}

/// Block `(μ, μ)` is `X_μ`; block `(μ, ν)` is `α_ν` when `Θ(μ) = ν ≠ μ`
/// and the identity otherwise. `theta` is an image table on block indices.
pub fn theta_construction(
    factors: &[CycleMatrix],
    alphas: &[Permutation],
    theta: &Permutation,
) -> Result<CycleMatrix> {
    let k = factors.len();
    if k == 0 {
        return Err(ConstructionError::Count {
            what: "factors",
            expected: 1,
            found: 0,
        }
        .into());
    }
    if alphas.len() != k {
        return Err(ConstructionError::Count {
            what: "factor automorphisms",
            expected: k,
            found: alphas.len(),
        }
        .into());
    }
    if theta.len() != k {
        return Err(Error::SizeMismatch {
            expected: k,
            found: theta.len(),
        });
    }
    for (i, (a, x)) in alphas.iter().zip(factors).enumerate() {
        check_automorphism(a, x, i + 1)?;
    }
    let mut plan = BlockPlan::new(factors.iter().map(|f| f.labels().clone()).collect());
    for mu in 1..=k {
        let nu = theta.image(mu);
        if nu != mu {
            plan.set_block(mu, nu, &alphas[nu - 1])?;
        }
    }
    verified(plan.assemble())
}

/// `∏_{i=1}^{h} (i, i + h)` on `2h` labels.
pub fn half_swap(order: usize) -> Permutation {
    assert!(order % 2 == 0, "half swap needs an even order");
    let h = order / 2;
    Permutation::from_zero_based_unchecked((0..order).map(|i| (i + h) % order).collect())
}

/// The tower `X_2, X_4, X_8, …`: `X_2` is the trivial solution on two
/// points and `X_{2h} = X_h ∪_{σ,σ} X_h` with `σ` the half swap of `h`
/// labels. Returns `X_{2^m}`, of multipermutation level `m`.
pub fn multiperm_tower(m: usize) -> Result<CycleMatrix> {
    if m == 0 || m > MAX_TOWER_EXPONENT {
        return Err(ConstructionError::Spec(format!(
            "tower exponent must lie in 1..={MAX_TOWER_EXPONENT}, got {m}"
        ))
        .into());
    }
    let mut x = CycleMatrix::trivial(2);
    for _ in 1..m {
        let sigma = half_swap(x.n());
        x = union2(&x, &x, &sigma, &sigma)?;
    }
    Ok(x)
}
