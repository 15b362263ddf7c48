//! Integer lattices with a symmetric bilinear form: the Picard lattices of
//! del Pezzo surfaces, their sublattices, saturation and orthogonal
//! complements.

use std::fmt;

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::intmat;

/// Coefficient tuple of a class over the fixed basis of an ambient lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct LatticeVector(Vec<i64>);

impl LatticeVector {
    pub fn new(coeffs: Vec<i64>) -> Self {
        LatticeVector(coeffs)
    }

    pub fn zero(rank: usize) -> Self {
        LatticeVector(vec![0; rank])
    }

    /// The `i`-th basis vector.
    pub fn unit(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        LatticeVector(v)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// `self + k * other`; panics on length mismatch, aborts on overflow.
    pub fn add_scaled(&self, k: i64, other: &LatticeVector) -> LatticeVector {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        LatticeVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| k.checked_mul(b).and_then(|kb| a.checked_add(kb)).expect("lattice vector overflow"))
                .collect(),
        )
    }

    pub fn scaled(&self, k: i64) -> LatticeVector {
        LatticeVector(self.0.iter().map(|&a| a.checked_mul(k).expect("lattice vector overflow")).collect())
    }
}

impl std::ops::Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        self.scaled(-1)
    }
}

impl std::ops::Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        self.add_scaled(1, rhs)
    }
}

impl std::ops::Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        self.add_scaled(-1, rhs)
    }
}

impl From<Vec<i64>> for LatticeVector {
    fn from(v: Vec<i64>) -> Self {
        LatticeVector(v)
    }
}

/// Recognized surface lattices. Root and line enumeration is only defined
/// for these.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SurfaceShape {
    /// Blowup of the plane in `n` points: basis `h, e1..en`, form
    /// `diag(1, -1, ..., -1)`, canonical class `-3h + sum e_i`.
    BlownUpPlane(usize),
    /// The quadric surface: basis `f1, f2`, hyperbolic form, canonical class
    /// `-2f1 - 2f2`.
    Quadric,
    Other,
}

/// A free abelian group with a symmetric integer Gram matrix and a
/// distinguished canonical class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerLattice {
    gram: Vec<Vec<i64>>,
    canonical: LatticeVector,
    shape: SurfaceShape,
}

impl IntegerLattice {
    pub fn new(gram: Vec<Vec<i64>>, canonical: LatticeVector) -> Result<Self> {
        let rank = gram.len();
        if rank == 0 {
            return invalid("lattice rank must be positive");
        }
        if gram.iter().any(|row| row.len() != rank) {
            return invalid("gram matrix is not square");
        }
        for i in 0..rank {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return invalid(format!("gram matrix not symmetric at ({i}, {j})"));
                }
            }
        }
        if canonical.len() != rank {
            return invalid("canonical class has the wrong length");
        }
        let shape = detect_shape(&gram, &canonical);
        Ok(IntegerLattice { gram, canonical, shape })
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn canonical(&self) -> &LatticeVector {
        &self.canonical
    }

    pub fn shape(&self) -> SurfaceShape {
        self.shape
    }

    /// `K^2`, the degree of the surface.
    pub fn degree(&self) -> i64 {
        self.inner(&self.canonical, &self.canonical).expect("canonical class pairing")
    }

    pub fn basis_vector(&self, i: usize) -> LatticeVector {
        LatticeVector::unit(self.rank(), i)
    }

    /// `v^T G w`.
    pub fn inner(&self, v: &LatticeVector, w: &LatticeVector) -> Result<i64> {
        let n = self.rank();
        if v.len() != n || w.len() != n {
            return invalid(format!(
                "dimension mismatch: lattice rank {n}, vectors of length {} and {}",
                v.len(),
                w.len()
            ));
        }
        let overflow = || Error::Overflow("lattice pairing");
        let mut total: i64 = 0;
        for (i, &vi) in v.coeffs().iter().enumerate() {
            if vi == 0 {
                continue;
            }
            let mut row: i64 = 0;
            for (j, &wj) in w.coeffs().iter().enumerate() {
                let g = self.gram[i][j];
                if g != 0 && wj != 0 {
                    row = row.checked_add(g.checked_mul(wj).ok_or_else(overflow)?).ok_or_else(overflow)?;
                }
            }
            total = total.checked_add(vi.checked_mul(row).ok_or_else(overflow)?).ok_or_else(overflow)?;
        }
        Ok(total)
    }

    pub fn square(&self, v: &LatticeVector) -> Result<i64> {
        self.inner(v, v)
    }

    /// Human-readable linear combination of basis names, e.g. `h - e1 - e2`.
    pub fn format_vector(&self, v: &LatticeVector) -> String {
        let names: Vec<String> = match self.shape {
            SurfaceShape::BlownUpPlane(n) => {
                std::iter::once("h".to_string()).chain((1..=n).map(|i| format!("e{i}"))).collect()
            }
            SurfaceShape::Quadric => vec!["f1".into(), "f2".into()],
            SurfaceShape::Other => (0..self.rank()).map(|i| format!("b{i}")).collect(),
        };
        let mut out = String::new();
        for (c, name) in v.coeffs().iter().zip(&names) {
            if *c == 0 {
                continue;
            }
            let sign = if *c < 0 { "-" } else { "+" };
            let mag = c.unsigned_abs();
            if out.is_empty() {
                if *c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            if mag != 1 {
                out.push_str(&mag.to_string());
            }
            out.push_str(name);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

fn detect_shape(gram: &[Vec<i64>], canonical: &LatticeVector) -> SurfaceShape {
    let rank = gram.len();
    let diagonal = (0..rank).all(|i| {
        (0..rank).all(|j| {
            let expected = match (i == j, i) {
                (false, _) => 0,
                (true, 0) => 1,
                (true, _) => -1,
            };
            gram[i][j] == expected
        })
    });
    let standard_k = canonical.coeffs().iter().enumerate().all(|(i, &c)| c == if i == 0 { -3 } else { 1 });
    if diagonal && standard_k && rank <= 9 {
        return SurfaceShape::BlownUpPlane(rank - 1);
    }
    if gram == [vec![0, 1], vec![1, 0]] && canonical.coeffs() == [-2, -2] {
        return SurfaceShape::Quadric;
    }
    SurfaceShape::Other
}

/// Picard lattice of the plane blown up in `n` points, `0 <= n <= 8`.
pub fn standard_dp_lattice(n: usize) -> Result<IntegerLattice> {
    if n > 8 {
        return invalid(format!("number of blown-up points must be in 0..=8, got {n}"));
    }
    let rank = n + 1;
    let gram = (0..rank)
        .map(|i| {
            (0..rank)
                .map(|j| match (i == j, i) {
                    (false, _) => 0,
                    (true, 0) => 1,
                    (true, _) => -1,
                })
                .collect()
        })
        .collect();
    let mut k = vec![1; rank];
    k[0] = -3;
    IntegerLattice::new(gram, LatticeVector::new(k))
}

/// Picard lattice of the quadric surface `P1 x P1`.
pub fn p1xp1_lattice() -> IntegerLattice {
    IntegerLattice::new(vec![vec![0, 1], vec![1, 0]], LatticeVector::new(vec![-2, -2]))
        .expect("hyperbolic plane is a valid lattice")
}

/// A sublattice given by independent generators. After [`Sublattice::saturate`]
/// or [`Sublattice::orthogonal_complement`] the generators are the canonical
/// Hermite basis, so equal sublattices compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sublattice {
    ambient: IntegerLattice,
    generators: Vec<LatticeVector>,
    saturated: bool,
}

impl Sublattice {
    /// Rejects generators of the wrong length or that are linearly dependent
    /// over the rationals.
    pub fn new(ambient: &IntegerLattice, generators: Vec<LatticeVector>) -> Result<Self> {
        let n = ambient.rank();
        if let Some(g) = generators.iter().find(|g| g.len() != n) {
            return invalid(format!("generator of length {} in a lattice of rank {n}", g.len()));
        }
        let rows: Vec<Vec<i64>> = generators.iter().map(|g| g.coeffs().to_vec()).collect();
        let hnf = intmat::hermite(&rows, n)?;
        if hnf.len() != generators.len() {
            return invalid(format!(
                "generators are linearly dependent ({} generators, rank {})",
                generators.len(),
                hnf.len()
            ));
        }
        let saturation = intmat::kernel(&intmat::kernel(&rows, n)?, n)?;
        let saturated = saturation == hnf;
        Ok(Sublattice { ambient: ambient.clone(), generators, saturated })
    }

    /// The zero sublattice.
    pub fn zero(ambient: &IntegerLattice) -> Self {
        Sublattice { ambient: ambient.clone(), generators: Vec::new(), saturated: true }
    }

    fn from_hermite(ambient: &IntegerLattice, rows: Vec<Vec<i64>>) -> Self {
        Sublattice {
            ambient: ambient.clone(),
            generators: rows.into_iter().map(LatticeVector::new).collect(),
            saturated: true,
        }
    }

    pub fn ambient(&self) -> &IntegerLattice {
        &self.ambient
    }

    pub fn generators(&self) -> &[LatticeVector] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    fn rows(&self) -> Vec<Vec<i64>> {
        self.generators.iter().map(|g| g.coeffs().to_vec()).collect()
    }

    /// Smallest sublattice containing `self` with torsion-free quotient,
    /// returned in Hermite form.
    pub fn saturate(&self) -> Result<Sublattice> {
        let n = self.ambient.rank();
        let rows = intmat::kernel(&intmat::kernel(&self.rows(), n)?, n)?;
        debug_assert_eq!(rows.len(), self.rank());
        Ok(Sublattice::from_hermite(&self.ambient, rows))
    }

    /// All `v` with `v . g = 0` for every generator `g`.
    pub fn orthogonal_complement(&self) -> Result<Sublattice> {
        let n = self.ambient.rank();
        let mut constraints = Vec::with_capacity(self.rank());
        for g in &self.generators {
            let row: Result<Vec<i64>> = (0..n).map(|i| self.ambient.inner(&self.ambient.basis_vector(i), g)).collect();
            constraints.push(row?);
        }
        let rows = intmat::kernel(&constraints, n)?;
        Ok(Sublattice::from_hermite(&self.ambient, rows))
    }

    /// Whether `v` is an integer combination of the generators.
    pub fn contains(&self, v: &LatticeVector) -> Result<bool> {
        let n = self.ambient.rank();
        if v.len() != n {
            return invalid(format!("vector of length {} in a lattice of rank {n}", v.len()));
        }
        let hnf = intmat::hermite(&self.rows(), n)?;
        intmat::in_span(&hnf, v.coeffs())
    }

    /// Whether `v` pairs to zero with every generator.
    pub fn is_orthogonal_to(&self, v: &LatticeVector) -> Result<bool> {
        for g in &self.generators {
            if self.ambient.inner(g, v)? != 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for Sublattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.generators.iter().map(|g| self.ambient.format_vector(g)).collect();
        write!(f, "<{}>", parts.join(", "))
    }
}
