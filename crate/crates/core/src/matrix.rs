//! Square label matrices and the cycle-matrix axioms.
//!
//! A [`LabelMatrix`] is any `n×n` table with entries in `1..=n`; a
//! [`CycleMatrix`] is one that passed [`validate`]: rows are permutations,
//! the diagonal is a permutation and the cycloid law
//! `(i·j)·(i·k) = (j·i)·(j·k)` holds for all labels.
//!
//! Text format: first line `n`, then `n` lines of `n` space-separated
//! entries. Blank lines and lines starting with `#` are skipped. JSON
//! format: `{"n": 3, "rows": [[...], ...]}`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, InputError, Result};
use crate::perm::{CycleType, Permutation};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelMatrix {
    pub(crate) n: usize,
    /// Row-major, 0-based labels.
    pub(crate) data: Vec<usize>,
}

impl LabelMatrix {
    /// Builds a matrix from 1-based rows, rejecting bad shapes and
    /// out-of-range entries.
    pub fn from_rows<T: Copy + TryInto<i64>>(rows: &[Vec<T>]) -> Result<Self, InputError> {
        let n = rows.len();
        if n == 0 {
            return Err(InputError::ZeroOrder);
        }
        let mut data = Vec::with_capacity(n * n);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(InputError::NotSquare {
                    row: r + 1,
                    len: row.len(),
                    n,
                });
            }
            for (c, &v) in row.iter().enumerate() {
                let v: i64 = v.try_into().unwrap_or(i64::MAX);
                if v < 1 || v > n as i64 {
                    return Err(InputError::EntryOutOfRange {
                        row: r + 1,
                        col: c + 1,
                        value: v,
                        n,
                    });
                }
                data.push(v as usize - 1);
            }
        }
        Ok(LabelMatrix { n, data })
    }

    pub(crate) fn from_zero_based(n: usize, data: Vec<usize>) -> Self {
        debug_assert_eq!(data.len(), n * n);
        debug_assert!(data.iter().all(|&x| x < n));
        LabelMatrix { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry `i·j` for 1-based labels.
    pub fn entry(&self, i: usize, j: usize) -> usize {
        assert!(
            i >= 1 && i <= self.n && j >= 1 && j <= self.n,
            "label out of range"
        );
        self.data[(i - 1) * self.n + (j - 1)] + 1
    }

    #[inline]
    pub(crate) fn at(&self, i: usize, j: usize) -> usize {
        self.data[i * self.n + j]
    }

    #[inline]
    pub(crate) fn row0(&self, i: usize) -> &[usize] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    /// Rows with 1-based entries.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|i| self.row0(i).iter().map(|&x| x + 1).collect())
            .collect()
    }

    pub fn transpose(&self) -> LabelMatrix {
        let n = self.n;
        let mut data = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.at(i, j);
            }
        }
        LabelMatrix { n, data }
    }

    /// Signed integer entries (1-based labels), for the determinant.
    pub fn to_integer_rows(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|i| self.row0(i).iter().map(|&x| x as i64 + 1).collect())
            .collect()
    }

    pub fn parse_text(text: &str) -> Result<Self, InputError> {
        let mut lines = data_lines(text);
        let m = parse_one_text(&mut lines)?;
        if let Some((line, _)) = lines.next() {
            return Err(InputError::Syntax {
                line,
                message: "trailing content after matrix".into(),
            });
        }
        Ok(m)
    }

    /// Parses a stream of text-format matrices written back to back.
    pub fn parse_text_many(text: &str) -> Result<Vec<Self>, InputError> {
        let mut lines = data_lines(text).peekable();
        let mut out = Vec::new();
        while lines.peek().is_some() {
            out.push(parse_one_text(&mut lines)?);
        }
        Ok(out)
    }

    pub fn parse_json(text: &str) -> Result<Self, InputError> {
        let doc: MatrixJson =
            serde_json::from_str(text).map_err(|e| InputError::Json(e.to_string()))?;
        doc.into_matrix()
    }

    /// Accepts either format; JSON is recognised by a leading `{`.
    pub fn parse(text: &str) -> Result<Self, InputError> {
        if text.trim_start().starts_with('{') {
            Self::parse_json(text)
        } else {
            Self::parse_text(text)
        }
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            n: self.n,
            rows: self
                .rows()
                .into_iter()
                .map(|r| r.into_iter().map(|x| x as i64).collect())
                .collect(),
        }
    }
}

/// JSON form of a matrix: `{"n": 3, "rows": [[2,3,1],[2,3,1],[2,3,1]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub rows: Vec<Vec<i64>>,
}

impl MatrixJson {
    pub fn into_matrix(self) -> Result<LabelMatrix, InputError> {
        if self.n == 0 {
            return Err(InputError::ZeroOrder);
        }
        if self.rows.len() != self.n {
            return Err(InputError::RowCount {
                n: self.n,
                found: self.rows.len(),
            });
        }
        LabelMatrix::from_rows(&self.rows)
    }
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_one_text<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
) -> Result<LabelMatrix, InputError> {
    let (line, header) = lines.next().ok_or(InputError::Empty)?;
    let n: usize = header.parse().map_err(|_| InputError::Syntax {
        line,
        message: format!("expected the order n, found `{header}`"),
    })?;
    if n == 0 {
        return Err(InputError::ZeroOrder);
    }
    let mut data = Vec::with_capacity(n * n);
    for r in 0..n {
        let (line, text) = lines.next().ok_or(InputError::RowCount { n, found: r })?;
        let mut count = 0;
        for (c, tok) in text.split_whitespace().enumerate() {
            let v: i64 = tok.parse().map_err(|_| InputError::Syntax {
                line,
                message: format!("`{tok}` is not an integer"),
            })?;
            if c >= n {
                return Err(InputError::NotSquare {
                    row: r + 1,
                    len: text.split_whitespace().count(),
                    n,
                });
            }
            if v < 1 || v > n as i64 {
                return Err(InputError::EntryOutOfRange {
                    row: r + 1,
                    col: c + 1,
                    value: v,
                    n,
                });
            }
            data.push(v as usize - 1);
            count += 1;
        }
        if count != n {
            return Err(InputError::NotSquare {
                row: r + 1,
                len: count,
                n,
            });
        }
    }
    Ok(LabelMatrix { n, data })
}

impl fmt::Display for LabelMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for i in 0..self.n {
            let row: Vec<String> = self.row0(i).iter().map(|x| (x + 1).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for LabelMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LabelMatrix{:?}", self.rows())
    }
}

impl FromStr for LabelMatrix {
    type Err = InputError;
    fn from_str(s: &str) -> Result<Self, InputError> {
        LabelMatrix::parse(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    RowBijectivity,
    DiagonalBijectivity,
    Cycloid,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::RowBijectivity => "row-bijectivity",
            Axiom::DiagonalBijectivity => "diagonal-bijectivity",
            Axiom::Cycloid => "cycloid",
        })
    }
}

/// The first violated axiom and the 1-based labels that witness it:
/// `[i]` for a row, `[i, j]` for two diagonal entries that collide,
/// `[i, j, k]` for a cycloid triple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violation: Option<Violation>,
}

impl ValidationReport {
    fn ok() -> Self {
        ValidationReport {
            valid: true,
            violation: None,
        }
    }

    fn fail(axiom: Axiom, witness: Vec<usize>) -> Self {
        ValidationReport {
            valid: false,
            violation: Some(Violation { axiom, witness }),
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.violation {
            None => f.write_str("valid"),
            Some(v) => {
                let w: Vec<String> = v.witness.iter().map(usize::to_string).collect();
                write!(f, "invalid: {} violated at ({})", v.axiom, w.join(","))
            }
        }
    }
}

/// Checks the three cycle-matrix axioms in the order row-bijectivity,
/// diagonal-bijectivity, cycloid, reporting the first failure found when
/// scanning labels in ascending order.
pub fn validate(m: &LabelMatrix) -> ValidationReport {
    let n = m.n;
    let mut seen = vec![false; n];
    for i in 0..n {
        seen.iter_mut().for_each(|s| *s = false);
        for &x in m.row0(i) {
            if std::mem::replace(&mut seen[x], true) {
                return ValidationReport::fail(Axiom::RowBijectivity, vec![i + 1]);
            }
        }
    }

    let mut first_with_square: Vec<Option<usize>> = vec![None; n];
    for i in 0..n {
        let d = m.at(i, i);
        if let Some(j) = first_with_square[d] {
            return ValidationReport::fail(Axiom::DiagonalBijectivity, vec![j + 1, i + 1]);
        }
        first_with_square[d] = Some(i);
    }

    for i in 0..n {
        for j in 0..n {
            let (ij, ji) = (m.at(i, j), m.at(j, i));
            for k in 0..n {
                if m.at(ij, m.at(i, k)) != m.at(ji, m.at(j, k)) {
                    return ValidationReport::fail(Axiom::Cycloid, vec![i + 1, j + 1, k + 1]);
                }
            }
        }
    }
    ValidationReport::ok()
}

/// Validates raw 1-based rows. Shape and range problems are input errors,
/// not reports.
pub fn validate_rows<T: Copy + TryInto<i64>>(
    rows: &[Vec<T>],
) -> Result<ValidationReport, InputError> {
    Ok(validate(&LabelMatrix::from_rows(rows)?))
}

/// The multiplication table of a non-degenerate cycle set on `{1..n}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleMatrix(LabelMatrix);

impl CycleMatrix {
    pub fn new(m: LabelMatrix) -> Result<Self> {
        let report = validate(&m);
        if report.valid {
            Ok(CycleMatrix(m))
        } else {
            Err(Error::Invalid(report))
        }
    }

    pub fn from_rows<T: Copy + TryInto<i64>>(rows: &[Vec<T>]) -> Result<Self> {
        Self::new(LabelMatrix::from_rows(rows)?)
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::new(LabelMatrix::parse(text)?)
    }

    /// Caller guarantees validity; checked in debug builds.
    pub(crate) fn new_unchecked(m: LabelMatrix) -> Self {
        debug_assert!(validate(&m).valid, "internal: invalid cycle matrix {m:?}");
        CycleMatrix(m)
    }

    /// The trivial solution: every row is the identity.
    pub fn trivial(n: usize) -> Self {
        Self::permutation_solution(&Permutation::identity(n))
    }

    /// The permutation solution of `sigma`: every row equals `sigma`.
    pub fn permutation_solution(sigma: &Permutation) -> Self {
        let n = sigma.len();
        let mut data = Vec::with_capacity(n * n);
        for _ in 0..n {
            data.extend_from_slice(sigma.as_slice());
        }
        CycleMatrix::new_unchecked(LabelMatrix::from_zero_based(n, data))
    }

    pub fn n(&self) -> usize {
        self.0.n
    }

    pub fn labels(&self) -> &LabelMatrix {
        &self.0
    }

    pub fn into_labels(self) -> LabelMatrix {
        self.0
    }

    pub fn entry(&self, i: usize, j: usize) -> usize {
        self.0.entry(i, j)
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.0.rows()
    }

    #[inline]
    pub(crate) fn at(&self, i: usize, j: usize) -> usize {
        self.0.at(i, j)
    }

    /// The left translation `ψ_i: j ↦ i·j` for a 1-based label.
    pub fn row(&self, i: usize) -> Result<Permutation> {
        if i == 0 || i > self.n() {
            return Err(Error::LabelOutOfRange {
                label: i,
                n: self.n(),
            });
        }
        Ok(self.row_perm0(i - 1))
    }

    pub(crate) fn row_perm0(&self, i: usize) -> Permutation {
        Permutation::from_zero_based_unchecked(self.0.row0(i).to_vec())
    }

    /// All left translations `ψ_1, …, ψ_n`.
    pub fn row_permutations(&self) -> Vec<Permutation> {
        (0..self.n()).map(|i| self.row_perm0(i)).collect()
    }

    /// The diagonal map `x ↦ x·x`.
    pub fn diagonal(&self) -> Permutation {
        Permutation::from_zero_based_unchecked((0..self.n()).map(|i| self.at(i, i)).collect())
    }

    pub fn is_square_free(&self) -> bool {
        (0..self.n()).all(|i| self.at(i, i) == i)
    }

    /// True when all rows coincide.
    pub fn is_permutation_solution(&self) -> bool {
        let first = self.0.row0(0);
        (1..self.n()).all(|i| self.0.row0(i) == first)
    }

    pub fn is_trivial(&self) -> bool {
        self.is_permutation_solution() && self.is_square_free()
    }

    pub fn row_cycle_types(&self) -> Vec<CycleType> {
        (0..self.n())
            .map(|i| self.row_perm0(i).cycle_type())
            .collect()
    }
}

impl fmt::Display for CycleMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for CycleMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycleMatrix{:?}", self.rows())
    }
}

impl AsRef<LabelMatrix> for CycleMatrix {
    fn as_ref(&self) -> &LabelMatrix {
        &self.0
    }
}

impl TryFrom<LabelMatrix> for CycleMatrix {
    type Error = Error;
    fn try_from(m: LabelMatrix) -> Result<Self> {
        CycleMatrix::new(m)
    }
}
