use super::{Mat, Rat};
use std::collections::BTreeMap;

type SparseRow = Vec<(usize, Rat)>;

fn axpy(row: &SparseRow, s: &Rat, p: &SparseRow) -> SparseRow {
    // row - s * p
    let mut out = Vec::with_capacity(row.len() + p.len());
    let (mut i, mut k) = (0, 0);
    while i < row.len() || k < p.len() {
        let take_row = k >= p.len() || (i < row.len() && row[i].0 < p[k].0);
        let take_p = i >= row.len() || (k < p.len() && p[k].0 < row[i].0);
        if take_row {
            out.push(row[i].clone());
            i += 1;
        } else if take_p {
            out.push((p[k].0, -(s * &p[k].1)));
            k += 1;
        } else {
            let v = &row[i].1 - &(s * &p[k].1);
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            k += 1;
        }
    }
    out
}

/// Incremental exact row echelon form over sparse rows.
pub struct Echelon {
    ncols: usize,
    pivots: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Echelon {
        Echelon { ncols, pivots: BTreeMap::new() }
    }

    pub fn from_mat(a: &Mat) -> Echelon {
        let mut e = Echelon::new(a.cols());
        for i in 0..a.rows() {
            e.insert(a.row(i).map(|(j, v)| (j, v.clone())).collect());
        }
        e
    }

    /// Adds a row; returns the pivot column it created, if independent.
    pub fn insert(&mut self, mut row: SparseRow) -> Option<usize> {
        row.retain(|e| !e.1.is_zero());
        row.sort_by_key(|e| e.0);
        loop {
            let (c, lead) = match row.first() {
                None => return None,
                Some((c, v)) => (*c, v.clone()),
            };
            match self.pivots.get(&c) {
                Some(p) => row = axpy(&row, &lead, p),
                None => {
                    let inv = lead.recip();
                    for e in &mut row {
                        e.1 = &e.1 * &inv;
                    }
                    self.pivots.insert(c, row);
                    return Some(c);
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_cols(&self) -> Vec<usize> {
        self.pivots.keys().copied().collect()
    }

    /// Back-substitutes so every pivot column is zero outside its own row.
    pub fn reduce(&mut self) {
        let cols: Vec<usize> = self.pivots.keys().rev().copied().collect();
        for &p in &cols {
            let mut row = self.pivots.remove(&p).unwrap();
            loop {
                let hit = row.iter().skip(1).find(|(j, _)| self.pivots.contains_key(j)).cloned();
                match hit {
                    Some((j, v)) => row = axpy(&row, &v, &self.pivots[&j]),
                    None => break,
                }
            }
            self.pivots.insert(p, row);
        }
    }

    pub fn rows(&self) -> impl Iterator<Item = (&usize, &SparseRow)> {
        self.pivots.iter()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }
}

/// Affine set `particular + span(kernel)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSpace {
    pub particular: Vec<Rat>,
    pub kernel: Vec<Vec<Rat>>,
}

impl AffineSpace {
    pub fn dim(&self) -> usize {
        self.kernel.len()
    }

    pub fn point(&self, coeffs: &[Rat]) -> Vec<Rat> {
        assert_eq!(coeffs.len(), self.kernel.len());
        let mut x = self.particular.clone();
        for (c, k) in coeffs.iter().zip(&self.kernel) {
            if c.is_zero() {
                continue;
            }
            for (xi, ki) in x.iter_mut().zip(k) {
                *xi += &(c * ki);
            }
        }
        x
    }
}

/// Solves the sparse system `rows · x = rhs` over `nvars` unknowns exactly.
pub fn solve_affine(nvars: usize, rows: Vec<SparseRow>, rhs: Vec<Rat>) -> Option<AffineSpace> {
    assert_eq!(rows.len(), rhs.len());
    let mut e = Echelon::new(nvars + 1);
    for (mut r, b) in rows.into_iter().zip(rhs) {
        if !b.is_zero() {
            r.push((nvars, b));
        }
        if e.insert(r) == Some(nvars) {
            return None;
        }
    }
    e.reduce();
    let mut particular = vec![Rat::zero(); nvars];
    let mut is_pivot = vec![false; nvars];
    for (&p, row) in e.rows() {
        is_pivot[p] = true;
        if let Some((_, v)) = row.iter().find(|(j, _)| *j == nvars) {
            particular[p] = v.clone();
        }
    }
    let mut kernel = Vec::new();
    for f in (0..nvars).filter(|&f| !is_pivot[f]) {
        let mut v = vec![Rat::zero(); nvars];
        v[f] = Rat::one();
        for (&p, row) in e.rows() {
            if let Some((_, c)) = row.iter().find(|(j, _)| *j == f) {
                v[p] = -c;
            }
        }
        kernel.push(v);
    }
    Some(AffineSpace { particular, kernel })
}

/// Basis of the null space of `a`, one vector per free column in ascending order.
pub fn kernel_basis(a: &Mat) -> Vec<Vec<Rat>> {
    let rows = (0..a.rows()).map(|i| a.row(i).map(|(j, v)| (j, v.clone())).collect()).collect();
    solve_affine(a.cols(), rows, vec![Rat::zero(); a.rows()]).expect("homogeneous system is consistent").kernel
}

/// Some `x` with `a · x = b` (free variables set to zero), or `None`.
pub fn solve(a: &Mat, b: &Mat) -> Option<Mat> {
    assert_eq!(a.rows(), b.rows(), "solve: row mismatch");
    let mut cols = Vec::with_capacity(b.cols());
    for c in 0..b.cols() {
        let rows = (0..a.rows()).map(|i| a.row(i).map(|(j, v)| (j, v.clone())).collect()).collect();
        let sol = solve_affine(a.cols(), rows, b.col(c))?;
        cols.push(sol.particular);
    }
    Some(Mat::from_cols(a.cols(), &cols))
}

pub fn inverse(a: &Mat) -> Option<Mat> {
    if !a.is_square() || a.rank() != a.rows() {
        return None;
    }
    solve(a, &Mat::identity(a.rows()))
}

/// Projection onto `U / im(a)` together with a section.
///
/// The complement is spanned by the standard basis vectors that are not pivot
/// coordinates of the column echelon form of `a`, in ascending order.
pub fn coker_projection(a: &Mat) -> (Mat, Mat) {
    let n = a.rows();
    let mut e = Echelon::from_mat(&a.transpose());
    e.reduce();
    let pivots = e.pivot_cols();
    let keep: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
    let mut proj_rows: Vec<Vec<(usize, Rat)>> = Vec::with_capacity(keep.len());
    for &j in &keep {
        let mut r = vec![(j, Rat::one())];
        for (&p, row) in e.rows() {
            if let Some((_, v)) = row.iter().find(|(c, _)| *c == j) {
                r.push((p, -v));
            }
        }
        proj_rows.push(r);
    }
    let proj = Mat::from_sparse_rows(n, proj_rows);
    let section = Mat::from_triplets(n, keep.len(), keep.iter().enumerate().map(|(k, &j)| (j, k, Rat::one())));
    (proj, section)
}
