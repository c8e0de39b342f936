//! Construction recipes against direct block formulas and structural laws.

mod common;

use common::*;
use cyclemat::constructions::{
    abelian_solution, multiperm_tower, partitioned_construction, tensor, theta_construction,
    union2, union_iterated, BlockSpec,
};
use cyclemat::enumerate::enumerate_classes;
use cyclemat::{
    are_isomorphic, is_decomposable, is_transpose_cycle_matrix, multipermutation_level,
    permutation_group, point_orbits, retract_once, ConstructionError, CycleMatrix, Error,
    Permutation,
};

fn perm(images: &[usize]) -> Permutation {
    Permutation::from_images(images).unwrap()
}

fn identity(n: usize) -> Vec<usize> {
    (1..=n).collect()
}

/// Matrix with blocks given by sizes, trivial diagonal blocks and
/// `off(μ, ν)` as the local image table of block `(μ, ν)`.
fn block_rows(sizes: &[usize], off: impl Fn(usize, usize) -> Vec<usize>) -> Rows {
    let offsets: Vec<usize> = sizes
        .iter()
        .scan(0, |acc, &s| {
            let o = *acc;
            *acc += s;
            Some(o)
        })
        .collect();
    let mut rows = Vec::new();
    for (mu, &smu) in sizes.iter().enumerate() {
        for _ in 0..smu {
            let mut row = Vec::new();
            for (nu, &snu) in sizes.iter().enumerate() {
                let local = if mu == nu { identity(snu) } else { off(mu, nu) };
                row.extend(local.iter().map(|&v| v + offsets[nu]));
            }
            rows.push(row);
        }
    }
    rows
}

/// Advances a mixed-radix counter; false once it wraps to zero.
fn step(idx: &mut [usize], radix: usize) -> bool {
    for d in (0..idx.len()).rev() {
        idx[d] += 1;
        if idx[d] < radix {
            return true;
        }
        idx[d] = 0;
    }
    false
}

#[test]
fn tensor_follows_the_product_formula() {
    let classes: Vec<CycleMatrix> = (1..=3).flat_map(enumerate_classes).collect();
    for a in &classes {
        for b in &classes {
            let (m, n) = (a.n(), b.n());
            let t = tensor(a, b).unwrap();
            let (ra, rb) = (a.rows(), b.rows());
            let phi = |i: usize, j: usize| (i - 1) * n + j;
            for i in 1..=m {
                for j in 1..=n {
                    for k in 1..=m {
                        for l in 1..=n {
                            let v = phi(ra[i - 1][k - 1], rb[j - 1][l - 1]);
                            assert_eq!(t.entry(phi(i, j), phi(k, l)), v);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn tensor_of_the_cyclic_pair_has_a_three_point_orbit() {
    let t = tensor(&fixture("a3.txt"), &fixture("b3.txt")).unwrap();
    assert_eq!(t.n(), 9);
    assert!(point_orbits(&t).contains(&vec![1, 6, 8]));
    assert!(is_decomposable(&t));
}

#[test]
fn tensor_with_the_singleton_is_neutral() {
    let one = CycleMatrix::trivial(1);
    for m in (1..=4).flat_map(enumerate_classes) {
        assert_eq!(tensor(&m, &one).unwrap(), m);
        assert_eq!(tensor(&one, &m).unwrap(), m);
    }
}

#[test]
fn tensor_orbits_refine_products_and_decomposable_factors_propagate() {
    let classes: Vec<CycleMatrix> = (1..=5).flat_map(enumerate_classes).collect();
    let mut pairs = 0;
    for a in &classes {
        for b in &classes {
            if a.n() * b.n() > 16 {
                continue;
            }
            pairs += 1;
            let n = b.n();
            let t = tensor(a, b).unwrap();
            let oa = naive_orbits(&a.rows());
            let ob = naive_orbits(&b.rows());
            let block_of =
                |blocks: &[Vec<usize>], x: usize| blocks.iter().position(|o| o.contains(&x));
            for orbit in point_orbits(&t) {
                let split = |x: usize| ((x - 1) / n + 1, (x - 1) % n + 1);
                let (i0, j0) = split(orbit[0]);
                for &x in &orbit {
                    let (i, j) = split(x);
                    assert_eq!(block_of(&oa, i), block_of(&oa, i0));
                    assert_eq!(block_of(&ob, j), block_of(&ob, j0));
                }
            }
            if is_decomposable(a) || is_decomposable(b) {
                assert!(is_decomposable(&t), "{a:?} ⊗ {b:?}");
            }
        }
    }
    assert!(pairs > 1000);
}

#[test]
fn tensor_of_transpose_fixtures_is_transpose() {
    let t = tensor(&fixture("transpose4_a.txt"), &fixture("transpose4_b.txt")).unwrap();
    assert_eq!(t.n(), 16);
    assert!(is_transpose_cycle_matrix(&t));
    assert!(is_cycle_set(&transpose(&t.rows())));
}

#[test]
fn union2_matches_the_block_rule() {
    let u = union2(
        &CycleMatrix::trivial(2),
        &CycleMatrix::trivial(3),
        &perm(&[2, 1]),
        &perm(&[2, 3, 1]),
    )
    .unwrap();
    assert_eq!(u, fixture("union5.txt"));
    let expected = block_rows(
        &[2, 3],
        |mu, _| if mu == 0 { vec![2, 3, 1] } else { vec![2, 1] },
    );
    assert_eq!(u.rows(), expected);
}

#[test]
fn union2_rejects_non_automorphisms() {
    let a3 = fixture("a3.txt");
    let err = union2(&a3, &a3, &perm(&[2, 1, 3]), &perm(&[1, 2, 3])).unwrap_err();
    assert!(matches!(
        err,
        Error::Construction(ConstructionError::NotAutomorphism { factor: 1, .. })
    ));
}

#[test]
fn union2_of_trivial_factors_is_the_one_block_partitioned_construction() {
    let mut built = 0;
    for k1 in 1..=3 {
        for k2 in 1..=3 {
            for a1 in all_perms(k1) {
                for a2 in all_perms(k2) {
                    let (x1, x2) = (CycleMatrix::trivial(k1), CycleMatrix::trivial(k2));
                    let u = union2(&x1, &x2, &perm(&a1), &perm(&a2));
                    let p = partitioned_construction(&x1, &x2, &[k1], &[perm(&a1)], &[perm(&a2)]);
                    match (u, p) {
                        (Ok(u), Ok(p)) => {
                            assert_eq!(u, p);
                            built += 1;
                        }
                        (Err(_), Err(_)) => {}
                        (u, p) => panic!("disagreement for {a1:?} {a2:?}: {u:?} vs {p:?}"),
                    }
                }
            }
        }
    }
    assert!(built > 0);
}

#[test]
fn union_iterated_with_three_factors() {
    let x2 = CycleMatrix::trivial(2);
    let swap = perm(&[2, 1]);
    let beta = perm(&[2, 1, 4, 3]);
    let u = union_iterated(
        &[x2.clone(), x2.clone(), x2.clone()],
        &[swap.clone(), swap.clone(), swap.clone()],
        &[beta.clone()],
    )
    .unwrap();
    // the partial union is X4; gluing X2 uses beta on it and the swap on X2
    let x4 = fixture("tower4.txt").rows();
    let mut expected: Rows = x4
        .iter()
        .map(|r| [r.clone(), vec![6, 5]].concat())
        .collect();
    for _ in 0..2 {
        expected.push(vec![2, 1, 4, 3, 5, 6]);
    }
    assert_eq!(u.rows(), expected);
    assert!(is_cycle_set(&expected));

    let wrong = union_iterated(
        &[x2.clone(), x2.clone(), x2.clone()],
        &[swap.clone(), swap.clone(), swap.clone()],
        &[perm(&[3, 2, 1, 4])],
    );
    assert!(matches!(
        wrong,
        Err(Error::Construction(
            ConstructionError::NotCumulativeAutomorphism { stage: 2, .. }
        ))
    ));
}

#[test]
fn union_iterated_reproduces_the_tower() {
    let mut x = CycleMatrix::trivial(2);
    for m in 2..=5 {
        let h = x.n();
        let sigma = perm(&(1..=h).map(|i| (i - 1 + h / 2) % h + 1).collect::<Vec<_>>());
        x = union_iterated(&[x.clone(), x.clone()], &[sigma.clone(), sigma], &[]).unwrap();
        assert_eq!(x, multiperm_tower(m).unwrap());
    }
}

#[test]
fn partitioned_construction_exhaustive_small() {
    fn compositions(k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        (1..=k)
            .flat_map(|first| {
                compositions(k - first).into_iter().map(move |mut rest| {
                    rest.insert(0, first);
                    rest
                })
            })
            .collect()
    }
    let (mut built, mut rejected) = (0, 0);
    for k1 in 1..=3 {
        for k2 in 1..=3 {
            let s2 = all_perms(k2);
            for partition in compositions(k1) {
                let blocks = partition.len();
                let mut idx = vec![0usize; blocks];
                loop {
                    let family: Vec<Vec<usize>> = idx.iter().map(|&i| s2[i].clone()).collect();
                    let commuting = family
                        .iter()
                        .all(|a| family.iter().all(|b| compose(a, b) == compose(b, a)));
                    // a rotation inside each block of the first factor
                    let alpha1: Vec<Permutation> = partition
                        .iter()
                        .map(|&s| perm(&(1..=s).map(|i| i % s + 1).collect::<Vec<_>>()))
                        .collect();
                    let alpha2: Vec<Permutation> = family.iter().map(|a| perm(a)).collect();
                    let result = partitioned_construction(
                        &CycleMatrix::trivial(k1),
                        &CycleMatrix::trivial(k2),
                        &partition,
                        &alpha1,
                        &alpha2,
                    );
                    if commuting {
                        let m = result.expect("commuting families always build");
                        assert!(is_cycle_set(&m.rows()));
                        let level = multipermutation_level(&m).expect("retractable");
                        assert!(level <= 2);
                        assert!(retract_once(&m).0.is_permutation_solution());
                        built += 1;
                    } else {
                        assert!(matches!(
                            result,
                            Err(Error::Construction(ConstructionError::NonCommuting { .. }))
                        ));
                        rejected += 1;
                    }
                    if !step(&mut idx, s2.len()) {
                        break;
                    }
                }
            }
        }
    }
    assert!(
        built > 100 && rejected > 10,
        "{built} built, {rejected} rejected"
    );
}

#[test]
fn partitioned_construction_rejects_bad_inputs() {
    let t3 = CycleMatrix::trivial(3);
    let t2 = CycleMatrix::trivial(2);
    let id = |n| Permutation::identity(n);
    let bad_partition =
        partitioned_construction(&t3, &t2, &[2, 2], &[id(2), id(2)], &[id(2), id(2)]);
    assert!(matches!(
        bad_partition,
        Err(Error::Construction(ConstructionError::BadPartition { .. }))
    ));
    let not_trivial = partitioned_construction(&fixture("a3.txt"), &t2, &[3], &[id(3)], &[id(2)]);
    assert!(matches!(
        not_trivial,
        Err(Error::Construction(ConstructionError::NotTrivial {
            factor: 1
        }))
    ));
}

/// Closure of generators under composition, by breadth-first search.
fn naive_group(generators: &[Vec<usize>], n: usize) -> Vec<Vec<usize>> {
    let mut seen = vec![identity(n)];
    let mut i = 0;
    while i < seen.len() {
        for g in generators {
            let h = compose(g, &seen[i]);
            if !seen.contains(&h) {
                seen.push(h);
            }
        }
        i += 1;
    }
    seen.sort();
    seen
}

#[test]
fn abelian_solution_realises_the_generated_group() {
    let cases: Vec<(usize, Vec<Vec<usize>>)> = vec![
        (2, vec![vec![2, 1]]),
        (3, vec![vec![2, 3, 1]]),
        (4, vec![vec![2, 1, 3, 4], vec![1, 2, 4, 3]]),
        (5, vec![vec![2, 1, 3, 4, 5], vec![1, 2, 4, 5, 3]]),
        (6, vec![vec![2, 1, 3, 4, 5, 6], vec![1, 2, 4, 5, 6, 3]]),
    ];
    for (m, gens) in cases {
        let k = gens.len();
        let perms: Vec<Permutation> = gens.iter().map(|g| perm(g)).collect();
        let x = abelian_solution(&perms, m).unwrap();
        assert_eq!(x.n(), k + m);
        let group = permutation_group(&x, 10_000).unwrap();
        let restricted: Vec<Vec<usize>> = {
            let mut r: Vec<Vec<usize>> = group
                .iter()
                .map(|g| (k + 1..=k + m).map(|x| g.image(x) - k).collect())
                .collect();
            r.sort();
            r.dedup();
            r
        };
        assert_eq!(restricted, naive_group(&gens, m));
        // the group acts trivially on the first k labels
        assert!(group.iter().all(|g| (1..=k).all(|x| g.image(x) == x)));
        assert_eq!(group.len(), restricted.len());
    }
    assert_eq!(
        permutation_group(
            &abelian_solution(&[perm(&[2, 1, 3, 4, 5]), perm(&[1, 2, 4, 5, 3])], 5).unwrap(),
            100
        )
        .unwrap()
        .len(),
        6
    );
}

#[test]
fn theta_fixtures_and_their_row_types() {
    let factors = [
        CycleMatrix::trivial(4),
        CycleMatrix::trivial(3),
        CycleMatrix::trivial(2),
    ];
    let alphas = [perm(&[2, 1, 4, 3]), perm(&[2, 3, 1]), perm(&[2, 1])];
    let a = theta_construction(&factors, &alphas, &perm(&[2, 3, 1])).unwrap();
    let b = theta_construction(&factors, &alphas, &perm(&[3, 1, 2])).unwrap();
    assert_eq!(a, fixture("theta9_a.txt"));
    assert_eq!(b, fixture("theta9_b.txt"));
    assert!(are_isomorphic(&a, &b).is_none());
}

#[test]
fn theta_row_types_over_trivial_factors() {
    // rows of block μ move block Θ(μ) by α_Θ(μ) and fix everything else
    let sizes = [2usize, 3, 2];
    let n: usize = sizes.iter().sum();
    let factors: Vec<CycleMatrix> = sizes.iter().map(|&s| CycleMatrix::trivial(s)).collect();
    let mut built = 0;
    for theta in all_perms(3) {
        for a0 in all_perms(2) {
            for a1 in all_perms(3) {
                for a2 in all_perms(2) {
                    let alphas = [a0.clone(), a1.clone(), a2.clone()];
                    let ps: Vec<Permutation> = alphas.iter().map(|a| perm(a)).collect();
                    let Ok(m) = theta_construction(&factors, &ps, &perm(&theta)) else {
                        continue;
                    };
                    built += 1;
                    let expected = block_rows(&sizes, |mu, nu| {
                        if theta[mu] == nu + 1 {
                            alphas[nu].clone()
                        } else {
                            identity(sizes[nu])
                        }
                    });
                    assert_eq!(m.rows(), expected);
                    for (x, row) in expected.iter().enumerate() {
                        let mu = sizes
                            .iter()
                            .scan(0, |acc, &s| {
                                *acc += s;
                                Some(*acc)
                            })
                            .position(|end| x < end)
                            .unwrap();
                        let nu = theta[mu] - 1;
                        let mut want = vec![1; n - sizes[nu]];
                        if nu == mu {
                            want.extend(std::iter::repeat(1).take(sizes[nu]));
                        } else {
                            want.extend(perm(&alphas[nu]).cycle_type().0);
                        }
                        want.sort_unstable();
                        let mut got = perm(row).cycle_type().0;
                        got.sort_unstable();
                        assert_eq!(got, want);
                    }
                }
            }
        }
    }
    assert!(built > 0);
}

#[test]
fn identity_theta_is_the_disjoint_union() {
    let factors = [fixture("a3.txt"), CycleMatrix::trivial(2)];
    let alphas = [Permutation::identity(3), Permutation::identity(2)];
    let m = theta_construction(&factors, &alphas, &Permutation::identity(2)).unwrap();
    let u = union2(&factors[0], &factors[1], &alphas[0], &alphas[1]).unwrap();
    assert_eq!(m, u);
    assert_eq!(point_orbits(&m), vec![vec![1, 2, 3], vec![4], vec![5]]);
}

#[test]
fn spec_files_build_every_kind() {
    let cases = [
        (r#"{"kind": "tower", "m": 3}"#, multiperm_tower(3).unwrap()),
        (
            r#"{"kind": "tensor", "factors": [{"n": 3, "rows": [[2,3,1],[2,3,1],[2,3,1]]}, {"n": 1, "rows": [[1]]}]}"#,
            fixture("a3.txt"),
        ),
        (
            r#"{"kind": "union2", "factors": [{"n": 2, "rows": [[1,2],[1,2]]}, {"n": 3, "rows": [[1,2,3],[1,2,3],[1,2,3]]}], "alphas": [[2,1],[2,3,1]]}"#,
            fixture("union5.txt"),
        ),
        (
            r#"{"kind": "theta", "factors": [{"n": 4, "rows": [[1,2,3,4],[1,2,3,4],[1,2,3,4],[1,2,3,4]]}, {"n": 3, "rows": [[1,2,3],[1,2,3],[1,2,3]]}, {"n": 2, "rows": [[1,2],[1,2]]}], "alphas": [[2,1,4,3],[2,3,1],[2,1]], "theta": [2,3,1]}"#,
            fixture("theta9_a.txt"),
        ),
        (
            r#"{"kind": "abelian", "m": 2, "generators": [[2,1]]}"#,
            CycleMatrix::from_rows(&[vec![1, 3, 2], vec![1, 2, 3], vec![1, 2, 3]]).unwrap(),
        ),
        (
            r#"{"kind": "partitioned", "factors": [{"n": 1, "rows": [[1]]}, {"n": 2, "rows": [[1,2],[1,2]]}], "partition": [1], "block_alpha1": [[1]], "block_alpha2": [[2,1]]}"#,
            CycleMatrix::from_rows(&[vec![1, 3, 2], vec![1, 2, 3], vec![1, 2, 3]]).unwrap(),
        ),
        (
            r#"{"kind": "union_iterated", "factors": [{"n": 2, "rows": [[1,2],[1,2]]}, {"n": 2, "rows": [[1,2],[1,2]]}], "alphas": [[2,1],[2,1]]}"#,
            fixture("tower4.txt"),
        ),
    ];
    for (json, expected) in cases {
        let built = BlockSpec::from_json(json).unwrap().build(None).unwrap();
        assert_eq!(built, expected, "{json}");
    }
}
