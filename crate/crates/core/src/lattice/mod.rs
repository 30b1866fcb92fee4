//! Definite ternary lattices over A: reduction, short vectors, Epstein
//! coefficients, representation counts, isometries and automorphisms.

mod enumerate;
mod isometry;
mod reduce;
mod shells;

pub use enumerate::{primitive_representations, representation_count, short_vectors, BoxIter};
pub use isometry::{automorphisms, is_decomposable, isometry, orbit_sizes, Automorphisms};
pub use reduce::reduce;
pub(crate) use reduce::is_reduced_gram;
pub use shells::{epstein_alpha, epstein_beta, shell_counts, shell_counts_direct, twisted_zeta_coefficients, ShellCounts, Twist};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffpoly::{check_modulus, Poly};
use crate::matrix::Mat3;

/// Coordinates of a lattice vector in the current basis.
pub type Vector = [Poly; 3];

/// Monic gcd of the coordinates (zero for the zero vector).
pub fn content(x: &Vector) -> Poly {
    let g = x[0].gcd(&x[1]).expect("same modulus");
    g.gcd(&x[2]).expect("same modulus")
}

pub fn is_primitive(x: &Vector) -> bool {
    content(x).is_one()
}

/// A rank-3 A-lattice with symmetric Gram matrix B(e_i, e_j), Q(x) = B(x, x).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TernaryLattice {
    q: u32,
    gram: Mat3,
    det: Poly,
    minima: Option<[usize; 3]>,
}

impl TernaryLattice {
    pub fn new(gram: Mat3) -> Result<Self> {
        let q = gram.modulus();
        check_modulus(q)?;
        if !gram.is_symmetric() {
            return Err(Error::Precondition("Gram matrix must be symmetric".into()));
        }
        let det = gram.det();
        if det.is_zero() {
            return Err(Error::Singular);
        }
        Ok(Self { q, gram, det, minima: None })
    }

    pub fn diagonal(a: [Poly; 3]) -> Result<Self> {
        Self::new(Mat3::diag(a))
    }

    /// From the six upper-triangular entries g11, g22, g33, g12, g13, g23.
    pub fn from_entries(g: [&Poly; 6]) -> Result<Self> {
        let [g11, g22, g33, g12, g13, g23] = g;
        let rows = [[g11, g12, g13], [g12, g22, g23], [g13, g23, g33]];
        Self::new(Mat3::from_fn(|i, j| rows[i][j].clone()))
    }

    pub(crate) fn with_minima(gram: Mat3, det: Poly, minima: [usize; 3]) -> Self {
        Self { q: gram.modulus(), gram, det, minima: Some(minima) }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn gram(&self) -> &Mat3 {
        &self.gram
    }

    pub fn det(&self) -> &Poly {
        &self.det
    }

    pub fn delta(&self) -> usize {
        self.det.degree().unwrap()
    }

    /// Successive minima, available once the lattice is reduced.
    pub fn minima(&self) -> Option<[usize; 3]> {
        self.minima
    }

    pub fn is_reduced(&self) -> bool {
        self.minima.is_some()
    }

    pub fn require_reduced(&self) -> Result<[usize; 3]> {
        self.minima.ok_or(Error::NotReduced)
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.gram.e[i][j]
    }

    pub fn bilinear(&self, x: &Vector, y: &Vector) -> Poly {
        let gy = self.gram.mul_vec(y);
        let mut s = Poly::zero(self.q);
        for i in 0..3 {
            s = &s + &(&x[i] * &gy[i]);
        }
        s
    }

    pub fn q_value(&self, x: &Vector) -> Poly {
        self.bilinear(x, x)
    }

    /// The isometric lattice with Gram Tᵀ G T (T need not be unimodular).
    pub fn transform(&self, t: &Mat3) -> Result<Self> {
        Self::new(self.gram.congruence(t))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(LatticeFile::from(self)).expect("lattice serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let f: LatticeFile = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        f.to_lattice()
    }
}

/// Text/JSON exchange format: {"q": 3, "gram": [["1","0","0"], ...]}.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct LatticeFile {
    pub q: u32,
    pub gram: [[String; 3]; 3],
}

impl From<&TernaryLattice> for LatticeFile {
    fn from(l: &TernaryLattice) -> Self {
        Self {
            q: l.q,
            gram: std::array::from_fn(|i| std::array::from_fn(|j| l.gram.e[i][j].to_string())),
        }
    }
}

impl LatticeFile {
    pub fn to_lattice(&self) -> Result<TernaryLattice> {
        let mut e: Vec<Vec<Poly>> = Vec::new();
        for row in &self.gram {
            let mut r = Vec::new();
            for s in row {
                r.push(Poly::parse(self.q, s)?);
            }
            e.push(r);
        }
        TernaryLattice::new(Mat3::from_fn(|i, j| e[i][j].clone()))
    }
}

impl fmt::Debug for TernaryLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lattice(q={}, gram={:?}", self.q, self.gram)?;
        if let Some(m) = self.minima {
            write!(f, ", minima={m:?}")?;
        }
        write!(f, ")")
    }
}
