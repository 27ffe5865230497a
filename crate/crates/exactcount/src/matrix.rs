use crate::error::{Error, Result};
use crate::ring::Ring;

/// Dense square matrix over an arbitrary ring, row major.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<R: Ring> {
    n: usize,
    entries: Vec<R::Elem>,
}

impl<R: Ring> Matrix<R> {
    pub fn from_rows(rows: Vec<Vec<R::Elem>>) -> Result<Self> {
        let n = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::invalid(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    n
                )));
            }
        }
        Ok(Matrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_int_rows(ring: &R, rows: &[Vec<i64>]) -> Result<Self> {
        Matrix::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&v| ring.from_i64(v)).collect())
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &R::Elem {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R::Elem) {
        self.entries[i * self.n + j] = v;
    }
}

/// Symmetric matrix with zero diagonal and even dimension 2n: the input
/// shape hafnians are defined on. Construction validates the shape, so the
/// counting code can take it as given.
#[derive(Clone, Debug, PartialEq)]
pub struct SymZeroDiag<R: Ring> {
    dim: usize,
    entries: Vec<R::Elem>,
}

impl<R: Ring> SymZeroDiag<R> {
    /// Strict constructor: rows must be square of even dimension, exactly
    /// symmetric, with an exactly zero diagonal.
    pub fn new(ring: &R, rows: Vec<Vec<R::Elem>>) -> Result<Self> {
        let dim = rows.len();
        if dim % 2 != 0 {
            return Err(Error::invalid(format!(
                "dimension {dim} is odd; hafnians need an even dimension"
            )));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::invalid(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    dim
                )));
            }
        }
        for i in 0..dim {
            if !ring.is_zero(&rows[i][i]) {
                return Err(Error::invalid(format!("diagonal entry ({i},{i}) is not zero")));
            }
            for j in 0..i {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::invalid(format!(
                        "entries ({j},{i}) and ({i},{j}) differ; matrix is not symmetric"
                    )));
                }
            }
        }
        Ok(SymZeroDiag {
            dim,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Lenient constructor: only the strict upper triangle is read; the
    /// lower triangle and diagonal of the input are ignored.
    pub fn from_upper(ring: &R, rows: Vec<Vec<R::Elem>>) -> Result<Self> {
        let dim = rows.len();
        if dim % 2 != 0 {
            return Err(Error::invalid(format!(
                "dimension {dim} is odd; hafnians need an even dimension"
            )));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::invalid(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    dim
                )));
            }
        }
        let mut m = SymZeroDiag {
            dim,
            entries: vec![ring.zero(); dim * dim],
        };
        for i in 0..dim {
            for j in i + 1..dim {
                m.entries[i * dim + j] = rows[i][j].clone();
                m.entries[j * dim + i] = rows[i][j].clone();
            }
        }
        Ok(m)
    }

    pub fn from_int_rows(ring: &R, rows: &[Vec<i64>]) -> Result<Self> {
        SymZeroDiag::new(
            ring,
            rows.iter()
                .map(|row| row.iter().map(|&v| ring.from_i64(v)).collect())
                .collect(),
        )
    }

    /// For counting code that produces the shape by construction
    /// (squeezed stage matrices, adjacency matrices).
    pub(crate) fn from_parts_unchecked(dim: usize, entries: Vec<R::Elem>) -> Self {
        debug_assert_eq!(entries.len(), dim * dim);
        debug_assert_eq!(dim % 2, 0);
        SymZeroDiag { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &R::Elem {
        &self.entries[i * self.dim + j]
    }
}

/// [[0, A], [A^T, 0]]: the symmetric embedding whose hafnian equals the
/// permanent of A.
pub fn block_antidiagonal<R: Ring>(ring: &R, a: &Matrix<R>) -> SymZeroDiag<R> {
    let n = a.n();
    let dim = 2 * n;
    let mut entries = vec![ring.zero(); dim * dim];
    for i in 0..n {
        for j in 0..n {
            entries[i * dim + (n + j)] = a.get(i, j).clone();
            entries[(n + j) * dim + i] = a.get(i, j).clone();
        }
    }
    SymZeroDiag::from_parts_unchecked(dim, entries)
}

/// 0/1 matrix with rows as bitmasks, the input shape of the set-cover
/// reduction. Dimension is capped at 63 so a row fits a u64.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryMatrix {
    n: usize,
    rows: Vec<u64>,
}

impl BinaryMatrix {
    pub fn from_int_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if n > 63 {
            return Err(Error::cap("matrix dimension", 63, n as u64));
        }
        let mut bits = Vec::with_capacity(n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::invalid(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    n
                )));
            }
            let mut mask = 0u64;
            for (j, &v) in row.iter().enumerate() {
                match v {
                    0 => {}
                    1 => mask |= 1 << j,
                    other => {
                        return Err(Error::invalid(format!(
                            "entry ({i},{j}) is {other}; a 0/1 matrix was expected"
                        )))
                    }
                }
            }
            bits.push(mask);
        }
        Ok(BinaryMatrix { n, rows: bits })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    pub fn row_mask(&self, i: usize) -> u64 {
        self.rows[i]
    }

    pub fn to_matrix<R: Ring>(&self, ring: &R) -> Matrix<R> {
        let rows: Vec<Vec<R::Elem>> = (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| if self.get(i, j) { ring.one() } else { ring.zero() })
                    .collect()
            })
            .collect();
        Matrix::from_rows(rows).expect("bit rows are square")
    }
}

/// Parse the matrix text format:
///
/// ```text
/// # optional comments
/// m <dim>
/// <dim> rows of <dim> integers
/// ```
///
/// Comment lines (leading '#') and blank lines are ignored anywhere; any
/// other content beyond the expected rows is rejected.
pub fn parse_int_matrix(text: &str) -> Result<Vec<Vec<i64>>> {
    let mut lines = significant_lines(text);
    let (line_no, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing 'm <dim>' header"))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() != 2 || tokens[0] != "m" {
        return Err(Error::parse(line_no, "expected header 'm <dim>'"));
    }
    let dim: usize = tokens[1]
        .parse()
        .map_err(|_| Error::parse(line_no, format!("bad dimension '{}'", tokens[1])))?;

    let mut rows = Vec::with_capacity(dim);
    for _ in 0..dim {
        let (line_no, line) = lines
            .next()
            .ok_or_else(|| Error::parse(line_no, format!("expected {dim} matrix rows")))?;
        let row: Vec<i64> = line
            .split_whitespace()
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|_| Error::parse(line_no, format!("bad integer '{t}'")))
            })
            .collect::<Result<_>>()?;
        if row.len() != dim {
            return Err(Error::parse(
                line_no,
                format!("row has {} entries, expected {dim}", row.len()),
            ));
        }
        rows.push(row);
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(Error::parse(line_no, "trailing content after matrix rows"));
    }
    Ok(rows)
}

/// Numbered lines with comments and blanks stripped, shared by all three
/// text formats.
pub(crate) fn significant_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}
