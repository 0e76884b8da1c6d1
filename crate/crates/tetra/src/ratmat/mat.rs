use super::Rat;
use crate::error::{shape, Result};
use std::fmt;

/// Exact rational matrix.
///
/// Entries are held row by row with zeros omitted, so the stored form is
/// canonical and `==` is exact matrix equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    indptr: Vec<usize>,
    idx: Vec<usize>,
    vals: Vec<Rat>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, indptr: vec![0; rows + 1], idx: Vec::new(), vals: Vec::new() }
    }

    pub fn identity(n: usize) -> Mat {
        Mat {
            rows: n,
            cols: n,
            indptr: (0..=n).collect(),
            idx: (0..n).collect(),
            vals: vec![Rat::one(); n],
        }
    }

    /// Builds from sparse rows; each row is a list of `(col, value)` pairs in any
    /// order, duplicates summed.
    pub fn from_sparse_rows(cols: usize, rows: Vec<Vec<(usize, Rat)>>) -> Mat {
        let mut m = Mat::zeros(0, cols);
        m.indptr.clear();
        m.indptr.push(0);
        for mut r in rows {
            r.sort_by_key(|e| e.0);
            let mut last: Option<usize> = None;
            for (j, v) in r {
                assert!(j < cols, "column index out of range");
                if last == Some(j) {
                    let k = m.vals.len() - 1;
                    m.vals[k] += &v;
                } else {
                    m.idx.push(j);
                    m.vals.push(v);
                    last = Some(j);
                }
            }
            let start = m.indptr[m.indptr.len() - 1];
            let mut w = start;
            for k in start..m.idx.len() {
                if !m.vals[k].is_zero() {
                    m.idx.swap(w, k);
                    m.vals.swap(w, k);
                    w += 1;
                }
            }
            m.idx.truncate(w);
            m.vals.truncate(w);
            m.indptr.push(w);
            m.rows += 1;
        }
        m
    }

    pub fn from_triplets(rows: usize, cols: usize, entries: impl IntoIterator<Item = (usize, usize, Rat)>) -> Mat {
        let mut buckets: Vec<Vec<(usize, Rat)>> = vec![Vec::new(); rows];
        for (i, j, v) in entries {
            assert!(i < rows, "row index out of range");
            buckets[i].push((j, v));
        }
        Mat::from_sparse_rows(cols, buckets)
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Mat> {
        let cols = rows.first().map_or(0, |r| r.len());
        Mat::from_rows_with_cols(rows, cols)
    }

    pub fn from_rows_with_cols(rows: Vec<Vec<Rat>>, cols: usize) -> Result<Mat> {
        if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
            return Err(shape(format!("row {bad} has length {} but expected {cols}", rows[bad].len())));
        }
        Ok(Mat::from_sparse_rows(
            cols,
            rows.into_iter().map(|r| r.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect()).collect(),
        ))
    }

    pub fn from_i64(rows: &[&[i64]]) -> Mat {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&v| Rat::int(v)).collect()).collect())
            .expect("ragged integer rows")
    }

    pub fn col_vector(v: &[Rat]) -> Mat {
        Mat::from_sparse_rows(1, v.iter().map(|x| if x.is_zero() { vec![] } else { vec![(0, x.clone())] }).collect())
    }

    pub fn row_vector(v: &[Rat]) -> Mat {
        Mat::from_rows_with_cols(vec![v.to_vec()], v.len()).unwrap()
    }

    /// Matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_cols(rows: usize, cols: &[Vec<Rat>]) -> Mat {
        let mut t = Vec::new();
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, v) in c.iter().enumerate() {
                if !v.is_zero() {
                    t.push((i, j, v.clone()));
                }
            }
        }
        Mat::from_triplets(rows, cols.len(), t)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, &Rat)> + '_ {
        let r = self.indptr[i]..self.indptr[i + 1];
        self.idx[r.clone()].iter().copied().zip(self.vals[r].iter())
    }

    pub fn get(&self, i: usize, j: usize) -> Rat {
        let r = self.indptr[i]..self.indptr[i + 1];
        match self.idx[r.clone()].binary_search(&j) {
            Ok(k) => self.vals[r.start + k].clone(),
            Err(_) => Rat::zero(),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rat)> + '_ {
        (0..self.rows).flat_map(move |i| self.row(i).map(move |(j, v)| (i, j, v)))
    }

    pub fn to_dense(&self) -> Vec<Vec<Rat>> {
        let mut out = vec![vec![Rat::zero(); self.cols]; self.rows];
        for (i, j, v) in self.entries() {
            out[i][j] = v.clone();
        }
        out
    }

    pub fn row_dense(&self, i: usize) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.cols];
        for (j, v) in self.row(i) {
            out[j] = v.clone();
        }
        out
    }

    pub fn col(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.vals.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat::identity(self.rows) && self.rows == self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_triplets(self.cols, self.rows, self.entries().map(|(i, j, v)| (j, i, v.clone())))
    }

    /// Exact product; errors on inner dimension mismatch.
    pub fn try_mul(&self, b: &Mat) -> Result<Mat> {
        if self.cols != b.rows {
            return Err(shape(format!("product of {}x{} and {}x{}", self.rows, self.cols, b.rows, b.cols)));
        }
        let mut acc: Vec<Option<Rat>> = vec![None; b.cols];
        let mut touched: Vec<usize> = Vec::new();
        let mut out = Mat::zeros(0, b.cols);
        for i in 0..self.rows {
            for (k, a) in self.row(i) {
                for (j, v) in b.row(k) {
                    let p = a * v;
                    match &mut acc[j] {
                        Some(s) => *s += &p,
                        slot @ None => {
                            *slot = Some(p);
                            touched.push(j);
                        }
                    }
                }
            }
            touched.sort_unstable();
            for &j in &touched {
                let v = acc[j].take().unwrap();
                if !v.is_zero() {
                    out.idx.push(j);
                    out.vals.push(v);
                }
            }
            touched.clear();
            out.indptr.push(out.idx.len());
            out.rows += 1;
        }
        Ok(out)
    }

    fn zip_with(&self, b: &Mat, f: impl Fn(&Rat, &Rat) -> Rat) -> Result<Mat> {
        if self.shape() != b.shape() {
            return Err(shape(format!("elementwise op on {:?} and {:?}", self.shape(), b.shape())));
        }
        let zero = Rat::zero();
        let mut out = Mat::zeros(0, self.cols);
        for i in 0..self.rows {
            let mut x = self.row(i).peekable();
            let mut y = b.row(i).peekable();
            loop {
                let (j, v) = match (x.peek(), y.peek()) {
                    (None, None) => break,
                    (Some(&(j, a)), None) => {
                        x.next();
                        (j, f(a, &zero))
                    }
                    (None, Some(&(j, c))) => {
                        y.next();
                        (j, f(&zero, c))
                    }
                    (Some(&(j1, a)), Some(&(j2, c))) => {
                        if j1 < j2 {
                            x.next();
                            (j1, f(a, &zero))
                        } else if j2 < j1 {
                            y.next();
                            (j2, f(&zero, c))
                        } else {
                            x.next();
                            y.next();
                            (j1, f(a, c))
                        }
                    }
                };
                if !v.is_zero() {
                    out.idx.push(j);
                    out.vals.push(v);
                }
            }
            out.indptr.push(out.idx.len());
            out.rows += 1;
        }
        Ok(out)
    }

    pub fn try_add(&self, b: &Mat) -> Result<Mat> {
        self.zip_with(b, |x, y| x + y)
    }

    pub fn try_sub(&self, b: &Mat) -> Result<Mat> {
        self.zip_with(b, |x, y| x - y)
    }

    pub fn scale(&self, s: &Rat) -> Mat {
        if s.is_zero() {
            return Mat::zeros(self.rows, self.cols);
        }
        let mut m = self.clone();
        for v in &mut m.vals {
            *v = &*v * s;
        }
        m
    }

    /// Kronecker product, left factor most significant.
    pub fn kron(&self, b: &Mat) -> Mat {
        let rows = self.rows * b.rows;
        let cols = self.cols * b.cols;
        let mut out = Mat::zeros(0, cols);
        for i in 0..self.rows {
            for k in 0..b.rows {
                for (j, a) in self.row(i) {
                    for (l, v) in b.row(k) {
                        out.idx.push(j * b.cols + l);
                        out.vals.push(a * v);
                    }
                }
                out.indptr.push(out.idx.len());
                out.rows += 1;
            }
        }
        debug_assert_eq!(out.rows, rows);
        out
    }

    pub fn hstack(parts: &[&Mat]) -> Result<Mat> {
        let rows = parts.first().map_or(0, |p| p.rows);
        if parts.iter().any(|p| p.rows != rows) {
            return Err(shape("hstack with differing row counts"));
        }
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Mat::zeros(0, cols);
        for i in 0..rows {
            let mut off = 0;
            for p in parts {
                for (j, v) in p.row(i) {
                    out.idx.push(off + j);
                    out.vals.push(v.clone());
                }
                off += p.cols;
            }
            out.indptr.push(out.idx.len());
            out.rows += 1;
        }
        Ok(out)
    }

    pub fn vstack(parts: &[&Mat]) -> Result<Mat> {
        let cols = parts.first().map_or(0, |p| p.cols);
        if parts.iter().any(|p| p.cols != cols) {
            return Err(shape("vstack with differing column counts"));
        }
        let mut out = Mat::zeros(0, cols);
        for p in parts {
            for i in 0..p.rows {
                for (j, v) in p.row(i) {
                    out.idx.push(j);
                    out.vals.push(v.clone());
                }
                out.indptr.push(out.idx.len());
                out.rows += 1;
            }
        }
        Ok(out)
    }

    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Mat {
        assert!(r0 + nr <= self.rows && c0 + nc <= self.cols, "block out of range");
        let mut out = Mat::zeros(0, nc);
        for i in r0..r0 + nr {
            for (j, v) in self.row(i) {
                if j >= c0 && j < c0 + nc {
                    out.idx.push(j - c0);
                    out.vals.push(v.clone());
                }
            }
            out.indptr.push(out.idx.len());
            out.rows += 1;
        }
        out
    }

    /// Writes `b` into a zero matrix of the given shape at offset `(r0, c0)`.
    pub fn embed(rows: usize, cols: usize, r0: usize, c0: usize, b: &Mat) -> Mat {
        assert!(r0 + b.rows <= rows && c0 + b.cols <= cols, "embed out of range");
        Mat::from_triplets(rows, cols, b.entries().map(|(i, j, v)| (i + r0, j + c0, v.clone())))
    }

    pub fn apply(&self, x: &[Rat]) -> Vec<Rat> {
        assert_eq!(x.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut s = Rat::zero();
                for (j, v) in self.row(i) {
                    if !x[j].is_zero() {
                        s += &(v * &x[j]);
                    }
                }
                s
            })
            .collect()
    }

    /// Matrix with rows reindexed: row `i` of the result is row `perm[i]` of `self`.
    pub fn select_rows(&self, sel: &[usize]) -> Mat {
        Mat::from_sparse_rows(self.cols, sel.iter().map(|&i| self.row(i).map(|(j, v)| (j, v.clone())).collect()).collect())
    }

    pub fn rank(&self) -> usize {
        super::elim::Echelon::from_mat(self).rank()
    }

    /// Dense rows of `"p/q"` strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.to_dense()
                .into_iter()
                .map(|r| serde_json::Value::Array(r.into_iter().map(|v| serde_json::Value::String(v.to_string())).collect()))
                .collect(),
        )
    }

    pub fn from_json(v: &serde_json::Value, rows: usize, cols: usize) -> Result<Mat> {
        let rs: Vec<Vec<Rat>> = serde_json::from_value(v.clone()).map_err(|e| crate::Error::Input(format!("matrix: {e}")))?;
        if rs.len() != rows {
            return Err(shape(format!("expected {rows} rows, found {}", rs.len())));
        }
        Mat::from_rows_with_cols(rs, cols)
    }
}

impl std::ops::Mul for &Mat {
    type Output = Mat;
    fn mul(self, b: &Mat) -> Mat {
        self.try_mul(b).unwrap()
    }
}

impl std::ops::Add for &Mat {
    type Output = Mat;
    fn add(self, b: &Mat) -> Mat {
        self.try_add(b).unwrap()
    }
}

impl std::ops::Sub for &Mat {
    type Output = Mat;
    fn sub(self, b: &Mat) -> Mat {
        self.try_sub(b).unwrap()
    }
}

impl std::ops::Neg for &Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        self.scale(&Rat::int(-1))
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{}", self.rows, self.cols)?;
        if self.rows * self.cols <= 400 {
            for r in self.to_dense() {
                let cells: Vec<String> = r.iter().map(|v| v.to_string()).collect();
                writeln!(f, "  [{}]", cells.join(", "))?;
            }
        } else {
            writeln!(f, "  ({} nonzeros)", self.nnz())?;
        }
        Ok(())
    }
}

/// Matrix product with dimension check.
pub fn mat_mul(a: &Mat, b: &Mat) -> Result<Mat> {
    a.try_mul(b)
}

pub fn kron(a: &Mat, b: &Mat) -> Mat {
    a.kron(b)
}

/// Kronecker product of a list of factors, leftmost most significant.
pub fn kron_all(parts: &[&Mat]) -> Mat {
    let mut acc = Mat::identity(1);
    for p in parts {
        acc = acc.kron(p);
    }
    acc
}
