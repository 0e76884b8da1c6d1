#![allow(dead_code)]

use proptest::prelude::*;
use tetra::ratmat::{Mat, Rat};

pub fn q(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

pub fn dense(m: &Mat) -> Vec<Vec<Rat>> {
    m.to_dense()
}

/// Schoolbook product on dense rows.
pub fn naive_mul(a: &[Vec<Rat>], b: &[Vec<Rat>], inner: usize, cols: usize) -> Vec<Vec<Rat>> {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut s = Rat::zero();
                    for k in 0..inner {
                        s += &(&row[k] * &b[k][j]);
                    }
                    s
                })
                .collect()
        })
        .collect()
}

pub fn rat() -> impl Strategy<Value = Rat> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| Rat::new(n, d))
}

pub fn mat(rows: usize, cols: usize) -> impl Strategy<Value = Mat> {
    prop::collection::vec(rat(), rows * cols).prop_map(move |v| {
        Mat::from_triplets(rows, cols, v.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(k, x)| (k / cols, k % cols, x)))
    })
}

pub fn sized_mat(max: usize) -> impl Strategy<Value = Mat> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| mat(r, c))
}

/// Structure constants `c[k][i][j]` of a bracket `n × n²` (column `i*n+j`).
pub fn constants(bracket: &Mat, n: usize) -> Vec<Vec<Vec<Rat>>> {
    (0..n).map(|k| (0..n).map(|i| (0..n).map(|j| bracket.get(k, i * n + j)).collect()).collect()).collect()
}

/// `[a, b]` from structure constants.
pub fn br(c: &[Vec<Vec<Rat>>], a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let n = a.len();
    (0..n)
        .map(|k| {
            let mut s = Rat::zero();
            for i in 0..n {
                for j in 0..n {
                    s += &(&(&a[i] * &b[j]) * &c[k][i][j]);
                }
            }
            s
        })
        .collect()
}

pub fn basis(n: usize, i: usize) -> Vec<Rat> {
    (0..n).map(|k| if k == i { Rat::one() } else { Rat::zero() }).collect()
}

pub fn add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `[[x,y],z] = [[x,z],y] + [x,[y,z]]` by exhaustion.
pub fn brute_leibniz(c: &[Vec<Vec<Rat>>]) -> bool {
    let n = c.len();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (bx, by, bz) = (basis(n, x), basis(n, y), basis(n, z));
                let l = br(c, &br(c, &bx, &by), &bz);
                let r = add(&br(c, &br(c, &bx, &bz), &by), &br(c, &bx, &br(c, &by, &bz)));
                if l != r {
                    return false;
                }
            }
        }
    }
    true
}

/// Braid relation on `V^{⊗3}` by explicit index loops over a dense `n²×n²` matrix.
pub fn brute_braid(b: &Mat, n: usize) -> bool {
    let bd = b.to_dense();
    let n3 = n * n * n;
    let apply12 = |v: &[Rat]| -> Vec<Rat> {
        let mut out = vec![Rat::zero(); n3];
        for (idx, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let (ij, k) = (idx / n, idx % n);
            for r in 0..n * n {
                let c = &bd[r][ij];
                if !c.is_zero() {
                    out[r * n + k] += &(x * c);
                }
            }
        }
        out
    };
    let apply23 = |v: &[Rat]| -> Vec<Rat> {
        let mut out = vec![Rat::zero(); n3];
        for (idx, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let (i, jk) = (idx / (n * n), idx % (n * n));
            for r in 0..n * n {
                let c = &bd[r][jk];
                if !c.is_zero() {
                    out[i * n * n + r] += &(x * c);
                }
            }
        }
        out
    };
    (0..n3).all(|k| {
        let v = basis(n3, k);
        apply12(&apply23(&apply12(&v))) == apply23(&apply12(&apply23(&v)))
    })
}
