use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, ensure, Context, Result};
use cyclemat::constructions::{
    abelian_solution, multiperm_tower, partitioned_construction, tensor, theta_construction,
    union2, union_iterated, BlockSpec,
};
use cyclemat::enumerate::{
    census_with, enumerate_classes_with, enumerate_raw, write_representatives, MAX_ORDER,
};
use cyclemat::{
    are_isomorphic, automorphisms, canonical_form, determinant, is_decomposable,
    is_transpose_cycle_matrix, point_orbits, retract_once, retraction_chain, validate, CycleMatrix,
    LabelMatrix, Permutation, RetractionOutcome,
};
use serde_json::{json, Value};

use crate::report::{Report, Status};
use crate::{BuildArgs, BuildKind, Command};

pub fn run(command: Command, as_json: bool) -> Result<Report> {
    match command {
        Command::Check { matrix } => check(&matrix),
        Command::Canon { matrix } => canon(&matrix),
        Command::Iso { a, b, all } => iso(&a, &b, all),
        Command::Aut { matrix, count } => aut(&matrix, count),
        Command::Retract { matrix, chain } => retract(&matrix, chain),
        Command::Level { matrix } => level(&matrix),
        Command::Orbits { matrix } => orbits(&matrix),
        Command::Det { matrix } => det(&matrix),
        Command::TransposeCheck { matrix } => transpose_check(&matrix),
        Command::Build(args) => build(args),
        Command::Enumerate {
            n,
            raw,
            jobs,
            mode,
            dump,
            filter,
        } => {
            check_order(n, jobs)?;
            let filter = filter.to_filter();
            let matrices: Box<dyn Iterator<Item = CycleMatrix>> = if raw {
                Box::new(
                    enumerate_raw(n)
                        .map(|m| CycleMatrix::new(m).expect("enumerated matrices are valid")),
                )
            } else {
                Box::new(
                    enumerate_classes_with(n, mode.into(), jobs)
                        .classes
                        .into_iter(),
                )
            };
            let matrices = matrices.filter(move |m| filter.matches(m));
            let what = if raw { "matrix" } else { "class" };
            match dump {
                Some(dir) => dump_matrices(n, matrices, &dir),
                None if as_json => {
                    let list: Vec<Value> = matrices.map(|m| matrix_json(&m)).collect();
                    Ok(Report::ok(
                        "",
                        json!({"n": n, "raw": raw, "count": list.len(), "matrices": list}),
                    ))
                }
                None => {
                    let stdout = io::stdout();
                    let mut out = BufWriter::new(stdout.lock());
                    let mut count = 0usize;
                    for m in matrices {
                        count += 1;
                        write!(out, "# {what} {count}\n{m}")?;
                    }
                    writeln!(out, "# total {count}")?;
                    out.flush()?;
                    Ok(Report::streamed(Status::Ok))
                }
            }
        }
        Command::Census {
            n,
            jobs,
            mode,
            filter,
        } => {
            check_order(n, jobs)?;
            let report = census_with(n, &filter.to_filter(), jobs, mode.into());
            Ok(Report::ok(
                report.to_table(),
                serde_json::to_value(&report)?,
            ))
        }
    }
}

fn check_order(n: usize, jobs: usize) -> Result<()> {
    ensure!(
        (1..=MAX_ORDER).contains(&n),
        "order must lie in 1..={MAX_ORDER}, got {n}"
    );
    ensure!(jobs >= 1, "--jobs must be at least 1");
    Ok(())
}

fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .context("reading stdin")?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn load_labels(path: &Path) -> Result<LabelMatrix> {
    LabelMatrix::parse(&read_input(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn load(path: &Path) -> Result<CycleMatrix> {
    CycleMatrix::new(load_labels(path)?).with_context(|| format!("loading {}", path.display()))
}

fn matrix_json(m: &CycleMatrix) -> Value {
    serde_json::to_value(m.labels().to_json()).expect("matrices serialize")
}

fn perm_list(perms: &[Permutation]) -> String {
    perms.iter().map(|p| format!("{p}\n")).collect()
}

fn check(path: &Path) -> Result<Report> {
    let m = load_labels(path)?;
    let report = validate(&m);
    let fields = json!({"n": m.n(), "valid": report.valid, "violation": report.violation});
    Ok(if report.valid {
        Report::ok("valid\n", fields)
    } else {
        Report::negative(format!("{report}\n"), fields)
    })
}

fn canon(path: &Path) -> Result<Report> {
    let m = load(path)?;
    let (c, sigma) = canonical_form(&m);
    Ok(Report::ok(
        format!("{c}# sigma: {sigma}\n"),
        json!({"matrix": matrix_json(&c), "sigma": sigma}),
    ))
}

fn iso(a: &Path, b: &Path, all: bool) -> Result<Report> {
    let (ma, mb) = (load(a)?, load(b)?);
    let Some(sigma) = are_isomorphic(&ma, &mb) else {
        return Ok(Report::negative(
            "not isomorphic\n",
            json!({"isomorphic": false, "sigma": null}),
        ));
    };
    if !all {
        return Ok(Report::ok(
            format!("{sigma}\n"),
            json!({"isomorphic": true, "sigma": sigma}),
        ));
    }
    // every isomorphism is sigma after an automorphism of the source
    let mut every: Vec<Permutation> = automorphisms(&ma)
        .iter()
        .map(|g| sigma.compose(g))
        .collect();
    every.sort();
    Ok(Report::ok(
        perm_list(&every),
        json!({"isomorphic": true, "sigma": sigma, "all": every}),
    ))
}

fn aut(path: &Path, count: bool) -> Result<Report> {
    let m = load(path)?;
    let group = automorphisms(&m);
    Ok(if count {
        Report::ok(format!("{}\n", group.len()), json!({"order": group.len()}))
    } else {
        Report::ok(
            perm_list(&group),
            json!({"order": group.len(), "automorphisms": group}),
        )
    })
}

fn classes_text(members: &[Vec<usize>]) -> String {
    members
        .iter()
        .map(|c| {
            let labels: Vec<String> = c.iter().map(usize::to_string).collect();
            format!("{{{}}}", labels.join(","))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn retract(path: &Path, chain: bool) -> Result<Report> {
    let m = load(path)?;
    if !chain {
        let (r, map) = retract_once(&m);
        let members = map.members();
        return Ok(Report::ok(
            format!("{r}# classes: {}\n", classes_text(&members)),
            json!({"matrix": matrix_json(&r), "classes": members}),
        ));
    }
    let chain = retraction_chain(&m);
    let mut text = String::new();
    for (t, stage) in chain.stages.iter().enumerate() {
        text += &format!("# stage {t}\n{stage}");
        if let Some(map) = chain.class_maps.get(t) {
            text += &format!("# classes: {}\n", classes_text(&map.members()));
        }
    }
    text += &match chain.outcome {
        RetractionOutcome::Terminates { level } => format!("# level {level}\n"),
        RetractionOutcome::Irretractable { stage } => format!("# irretractable at stage {stage}\n"),
    };
    let stages: Vec<Value> = chain.stages.iter().map(matrix_json).collect();
    let maps: Vec<Vec<Vec<usize>>> = chain.class_maps.iter().map(|c| c.members()).collect();
    Ok(Report::ok(
        text,
        json!({"stages": stages, "classes": maps, "outcome": chain.outcome}),
    ))
}

fn level(path: &Path) -> Result<Report> {
    let chain = retraction_chain(&load(path)?);
    Ok(match chain.outcome {
        RetractionOutcome::Terminates { level } => Report::ok(
            format!("{level}\n"),
            json!({"level": level, "irretractable": false}),
        ),
        RetractionOutcome::Irretractable { stage } => Report::negative(
            format!("irretractable: stage {stage} has pairwise distinct rows\n"),
            json!({"level": null, "irretractable": true, "stage": stage}),
        ),
    })
}

fn orbits(path: &Path) -> Result<Report> {
    let m = load(path)?;
    let orbits = point_orbits(&m);
    let text: String = orbits
        .iter()
        .map(|o| {
            let labels: Vec<String> = o.iter().map(usize::to_string).collect();
            format!("{}\n", labels.join(","))
        })
        .collect();
    Ok(Report::ok(
        text,
        json!({"orbits": orbits, "decomposable": is_decomposable(&m)}),
    ))
}

fn det(path: &Path) -> Result<Report> {
    let d = determinant(&load(path)?);
    Ok(Report::ok(
        format!("{d}\n"),
        json!({"determinant": d.to_string()}),
    ))
}

fn transpose_check(path: &Path) -> Result<Report> {
    let m = load(path)?;
    Ok(if is_transpose_cycle_matrix(&m) {
        Report::ok("transpose\n", json!({"transpose": true}))
    } else {
        let why = validate(&m.labels().transpose());
        Report::negative(
            format!("not transpose: the transpose is {why}\n"),
            json!({"transpose": false, "violation": why.violation}),
        )
    })
}

fn build(args: BuildArgs) -> Result<Report> {
    let m = match (args.spec, args.kind) {
        (Some(path), _) => {
            let spec = BlockSpec::from_json(&read_input(&path)?)
                .with_context(|| format!("parsing {}", path.display()))?;
            let base = path
                .parent()
                .map(Path::to_path_buf)
                .unwrap_or_else(PathBuf::new);
            spec.build(Some(&base))?
        }
        (None, Some(kind)) => build_kind(kind)?,
        (None, None) => bail!("build needs a construction kind or --spec FILE"),
    };
    Ok(Report::ok(
        m.to_string(),
        json!({"matrix": matrix_json(&m)}),
    ))
}

fn load_all(paths: &[PathBuf]) -> Result<Vec<CycleMatrix>> {
    paths.iter().map(|p| load(p)).collect()
}

fn build_kind(kind: BuildKind) -> Result<CycleMatrix> {
    Ok(match kind {
        BuildKind::Trivial { n } => {
            ensure!(n >= 1, "order must be positive");
            CycleMatrix::trivial(n)
        }
        BuildKind::Permutation { sigma } => CycleMatrix::permutation_solution(&sigma),
        BuildKind::Tower { m } => multiperm_tower(m)?,
        BuildKind::Tensor { factors } => {
            let factors = load_all(&factors)?;
            let (first, rest) = factors.split_first().expect("clap requires two factors");
            rest.iter()
                .try_fold(first.clone(), |acc, f| tensor(&acc, f))?
        }
        BuildKind::Union2 {
            x1,
            x2,
            alpha1,
            alpha2,
        } => union2(&load(&x1)?, &load(&x2)?, &alpha1, &alpha2)?,
        BuildKind::UnionIterated {
            factors,
            alphas,
            cumulative,
        } => union_iterated(&load_all(&factors)?, &alphas, &cumulative)?,
        BuildKind::Theta {
            factors,
            alphas,
            theta,
        } => theta_construction(&load_all(&factors)?, &alphas, &theta)?,
        BuildKind::Partitioned {
            k1,
            k2,
            partition,
            alpha1,
            alpha2,
        } => {
            ensure!(k1 >= 1 && k2 >= 1, "factor orders must be positive");
            partitioned_construction(
                &CycleMatrix::trivial(k1),
                &CycleMatrix::trivial(k2),
                &partition,
                &alpha1,
                &alpha2,
            )?
        }
        BuildKind::Abelian { m, generators } => abelian_solution(&generators, m)?,
    })
}

fn dump_matrices(
    n: usize,
    matrices: impl Iterator<Item = CycleMatrix>,
    dir: &Path,
) -> Result<Report> {
    let list: Vec<CycleMatrix> = matrices.collect();
    write_representatives(dir, &list).with_context(|| format!("writing {}", dir.display()))?;
    Ok(Report::ok(
        format!("wrote {} matrices to {}\n", list.len(), dir.display()),
        json!({"n": n, "count": list.len(), "dir": dir.display().to_string()}),
    ))
}
