//! 3×3 matrices over A.

use std::fmt;

use crate::error::{Error, Result};
use crate::ffpoly::Poly;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat3 {
    pub e: [[Poly; 3]; 3],
}

impl Mat3 {
    pub fn from_fn(f: impl Fn(usize, usize) -> Poly) -> Self {
        Self {
            e: std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))),
        }
    }

    pub fn zero(q: u32) -> Self {
        Self::from_fn(|_, _| Poly::zero(q))
    }

    pub fn identity(q: u32) -> Self {
        Self::from_fn(|i, j| if i == j { Poly::one(q) } else { Poly::zero(q) })
    }

    pub fn diag(a: [Poly; 3]) -> Self {
        let q = a[0].modulus();
        Self::from_fn(|i, j| if i == j { a[i].clone() } else { Poly::zero(q) })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(c: &[[Poly; 3]; 3]) -> Self {
        Self::from_fn(|i, j| c[j][i].clone())
    }

    pub fn column(&self, j: usize) -> [Poly; 3] {
        std::array::from_fn(|i| self.e[i][j].clone())
    }

    pub fn modulus(&self) -> u32 {
        self.e[0][0].modulus()
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.e[i][j]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.e[j][i].clone())
    }

    pub fn is_symmetric(&self) -> bool {
        (0..3).all(|i| (0..3).all(|j| self.e[i][j] == self.e[j][i]))
    }

    pub fn mul(&self, o: &Mat3) -> Mat3 {
        let q = self.modulus();
        Self::from_fn(|i, j| {
            let mut s = Poly::zero(q);
            for k in 0..3 {
                s = &s + &(&self.e[i][k] * &o.e[k][j]);
            }
            s
        })
    }

    pub fn mul_vec(&self, v: &[Poly; 3]) -> [Poly; 3] {
        let q = self.modulus();
        std::array::from_fn(|i| {
            let mut s = Poly::zero(q);
            for k in 0..3 {
                s = &s + &(&self.e[i][k] * &v[k]);
            }
            s
        })
    }

    /// Bᵀ · self · B.
    pub fn congruence(&self, b: &Mat3) -> Mat3 {
        b.transpose().mul(self).mul(b)
    }

    fn minor(&self, r: usize, c: usize) -> Poly {
        let rows: Vec<usize> = (0..3).filter(|&i| i != r).collect();
        let cols: Vec<usize> = (0..3).filter(|&j| j != c).collect();
        &(&self.e[rows[0]][cols[0]] * &self.e[rows[1]][cols[1]]) - &(&self.e[rows[0]][cols[1]] * &self.e[rows[1]][cols[0]])
    }

    pub fn det(&self) -> Poly {
        let m = &self.e;
        let a = &m[0][0] * &self.minor(0, 0);
        let b = &m[0][1] * &self.minor(0, 1);
        let c = &m[0][2] * &self.minor(0, 2);
        &(&a - &b) + &c
    }

    /// Classical adjugate: self · adj = det · I.
    pub fn adjugate(&self) -> Mat3 {
        let q = self.modulus();
        Self::from_fn(|i, j| {
            let m = self.minor(j, i);
            if (i + j) % 2 == 1 {
                &Poly::zero(q) - &m
            } else {
                m
            }
        })
    }

    /// Inverse of a unimodular matrix (det a nonzero constant).
    pub fn inverse_unimodular(&self) -> Result<Mat3> {
        let d = self.det();
        if d.degree() != Some(0) {
            return Err(Error::Precondition("matrix is not unimodular".into()));
        }
        let inv = crate::ffpoly::inv_mod(d.lc(), d.modulus());
        Ok(Self::from_fn(|i, j| self.adjugate().e[i][j].scale(inv)))
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().degree() == Some(0)
    }

    pub fn max_degree(&self) -> i64 {
        self.e.iter().flatten().map(|p| p.degree_or_neg()).max().unwrap()
    }
}

/// Hermite normal form of the row span of `rows` (assumed rank 3): an upper
/// triangular basis with monic diagonal and off-diagonal entries reduced
/// modulo the pivot below them.
pub fn hermite_rows(rows: &[[Poly; 3]]) -> Result<[[Poly; 3]; 3]> {
    let mut rows: Vec<[Poly; 3]> = rows.to_vec();
    let mut out: Vec<[Poly; 3]> = Vec::with_capacity(3);
    for col in 0..3 {
        // Euclid on column `col` among remaining rows.
        loop {
            rows.retain(|r| r.iter().any(|x| !x.is_zero()));
            let nz: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i][col].is_zero()).collect();
            if nz.len() <= 1 {
                break;
            }
            let piv = *nz.iter().min_by_key(|&&i| rows[i][col].degree().unwrap()).unwrap();
            let pr = rows[piv].clone();
            for &i in &nz {
                if i == piv {
                    continue;
                }
                let (quot, _) = rows[i][col].divmod(&pr[col])?;
                for k in 0..3 {
                    rows[i][k] = &rows[i][k] - &(&quot * &pr[k]);
                }
            }
        }
        let Some(pi) = (0..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            return Err(Error::Singular);
        };
        let mut pr = rows.remove(pi);
        let inv = crate::ffpoly::inv_mod(pr[col].lc(), pr[col].modulus());
        for x in pr.iter_mut() {
            *x = x.scale(inv);
        }
        out.push(pr);
    }
    // reduce above the diagonal
    for col in 1..3 {
        for r in 0..col {
            let (quot, _) = out[r][col].divmod(&out[col][col])?;
            if quot.is_zero() {
                continue;
            }
            let pr = out[col].clone();
            for k in 0..3 {
                out[r][k] = &out[r][k] - &(&quot * &pr[k]);
            }
        }
    }
    Ok([out[0].clone(), out[1].clone(), out[2].clone()])
}

impl fmt::Debug for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.e.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{}, {}, {}", row[0], row[1], row[2])?;
        }
        write!(f, "]")
    }
}
