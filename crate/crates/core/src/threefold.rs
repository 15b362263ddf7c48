//! Del Pezzo threefold models and the image of their class group in the
//! Picard lattice of a smooth anticanonical surface.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::dynkin::DynkinType;
use crate::error::{inconsistent, invalid, Error, Result};
use crate::lattice::{p1xp1_lattice, standard_dp_lattice, IntegerLattice, LatticeVector, Sublattice};
use crate::rootsys::{classify, enumerate_lines, enumerate_roots, RootSet};

/// Primitive model the threefold is obtained from by blowing up points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseKind {
    /// `V_1` .. `V_5`, or `P3` at degree 8.
    FactorialRank1(u8),
    QuadricBundleOverP1(u8),
    /// Degree 6 is the flag variety `V6`.
    P1BundleOverP2(u8),
    P1BundleOverP1xP1(u8),
    P1xP1xP1,
}

impl BaseKind {
    pub fn new(kind: &str, degree: u8) -> Result<BaseKind> {
        let base = match kind {
            "P3" => BaseKind::FactorialRank1(degree),
            "V1" | "V2" | "V3" | "V4" | "V5" => BaseKind::FactorialRank1(degree),
            "V6" => BaseKind::P1BundleOverP2(degree),
            "quadric/P1" => BaseKind::QuadricBundleOverP1(degree),
            "P1bundle/P2" => BaseKind::P1BundleOverP2(degree),
            "P1bundle/P1xP1" => BaseKind::P1BundleOverP1xP1(degree),
            "P1xP1xP1" => BaseKind::P1xP1xP1,
            other => return invalid(format!("unknown base '{other}'")),
        };
        let implied = match kind {
            "P3" => Some(8),
            "V6" | "P1xP1xP1" => Some(6),
            v if v.starts_with('V') => v[1..].parse().ok(),
            _ => None,
        };
        if let Some(expected) = implied {
            if degree != expected {
                return invalid(format!("base {kind} has degree {expected}, not {degree}"));
            }
        }
        base.validate()?;
        Ok(base)
    }

    fn validate(self) -> Result<()> {
        let ok = match self {
            BaseKind::FactorialRank1(d) => matches!(d, 1..=5 | 8),
            BaseKind::QuadricBundleOverP1(d) => matches!(d, 1 | 2 | 4),
            BaseKind::P1BundleOverP2(d) => matches!(d, 1 | 2 | 3 | 5 | 6 | 7),
            BaseKind::P1BundleOverP1xP1(d) => matches!(d, 2 | 4 | 6),
            BaseKind::P1xP1xP1 => true,
        };
        if ok {
            Ok(())
        } else {
            invalid(format!("no primitive model {self:?}"))
        }
    }

    pub fn degree(self) -> u8 {
        match self {
            BaseKind::FactorialRank1(d)
            | BaseKind::QuadricBundleOverP1(d)
            | BaseKind::P1BundleOverP2(d)
            | BaseKind::P1BundleOverP1xP1(d) => d,
            BaseKind::P1xP1xP1 => 6,
        }
    }

    /// Rank of the class group of the primitive model.
    pub fn rank(self) -> usize {
        match self {
            BaseKind::FactorialRank1(_) => 1,
            BaseKind::QuadricBundleOverP1(_) | BaseKind::P1BundleOverP2(_) => 2,
            BaseKind::P1BundleOverP1xP1(_) | BaseKind::P1xP1xP1 => 3,
        }
    }

    pub fn is_projective_space(self) -> bool {
        self == BaseKind::FactorialRank1(8)
    }

    /// Wire name as accepted by [`BaseKind::new`].
    pub fn wire_name(self) -> String {
        match self {
            BaseKind::FactorialRank1(8) => "P3".into(),
            BaseKind::FactorialRank1(d) => format!("V{d}"),
            BaseKind::P1BundleOverP2(6) => "V6".into(),
            BaseKind::P1BundleOverP2(_) => "P1bundle/P2".into(),
            BaseKind::QuadricBundleOverP1(_) => "quadric/P1".into(),
            BaseKind::P1BundleOverP1xP1(_) => "P1bundle/P1xP1".into(),
            BaseKind::P1xP1xP1 => "P1xP1xP1".into(),
        }
    }
}

impl fmt::Display for BaseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (degree {})", self.wire_name(), self.degree())
    }
}

impl FromStr for BaseKind {
    type Err = Error;

    /// Parses `NAME` or `NAME:DEGREE`; the degree may be omitted only where
    /// the name implies it.
    fn from_str(s: &str) -> Result<Self> {
        let (name, degree) = match s.split_once(':') {
            Some((n, d)) => (n, d.parse::<u8>().map_err(|_| Error::InvalidInput(format!("bad degree in '{s}'")))?),
            None => {
                let d = match s {
                    "P3" => 8,
                    "V6" | "P1xP1xP1" => 6,
                    v if v.starts_with('V') => {
                        v[1..].parse().map_err(|_| Error::InvalidInput(format!("unknown base '{s}'")))?
                    }
                    _ => return invalid(format!("base '{s}' needs an explicit degree")),
                };
                (s, d)
            }
        };
        BaseKind::new(name, degree)
    }
}

/// A primitive model blown up in `blowups` general points, with the Picard
/// rank `rho` of the resulting anticanonical model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ThreefoldModel {
    base: BaseKind,
    blowups: usize,
    rho: usize,
}

impl ThreefoldModel {
    /// `rho` defaults to [`ThreefoldModel::default_rho`].
    pub fn new(base: BaseKind, blowups: usize, rho: Option<usize>) -> Result<Self> {
        base.validate()?;
        let d = base.degree() as i64 - blowups as i64;
        if d < 1 {
            return invalid(format!("{base} blown up in {blowups} points has degree {d} < 1"));
        }
        let r = base.rank() + blowups;
        if r as i64 + d > 9 {
            return invalid(format!("class group rank {r} plus degree {d} exceeds 9"));
        }
        let rho = rho.unwrap_or_else(|| Self::default_rho(base, d as u8));
        if rho == 0 || rho > r {
            return invalid(format!("Picard rank {rho} must lie in 1..={r}"));
        }
        Ok(ThreefoldModel { base, blowups, rho })
    }

    /// Picard rank of the anticanonical model when it is not given: the
    /// degree-6 models with nonsingular anticanonical image keep their
    /// Picard rank (2 or 3), degree 7 is `P(O + O(1))`, everything else is 1.
    pub fn default_rho(base: BaseKind, degree: u8) -> usize {
        match (degree, base) {
            (6, BaseKind::P1xP1xP1) => 3,
            (6, _) | (7, _) => 2,
            _ => 1,
        }
    }

    pub fn base(&self) -> BaseKind {
        self.base
    }

    pub fn blowups(&self) -> usize {
        self.blowups
    }

    pub fn rho(&self) -> usize {
        self.rho
    }

    pub fn degree(&self) -> u8 {
        self.base.degree() - self.blowups as u8
    }

    /// Rank of the class group.
    pub fn r(&self) -> usize {
        self.base.rank() + self.blowups
    }
}

impl fmt::Display for ThreefoldModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {} blowups (d = {}, r = {})", self.base, self.blowups, self.degree(), self.r())
    }
}

/// The surface lattice together with the saturated image of the class group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeData {
    pub model: ThreefoldModel,
    pub surface: IntegerLattice,
    pub cl_image: Sublattice,
    pub r: usize,
}

impl LatticeData {
    /// Replaces the class-group image by its image under `f`, which should be
    /// an isometry fixing `K` (a Weyl group element, say).
    pub fn transform(&self, f: impl Fn(&LatticeVector) -> Result<LatticeVector>) -> Result<LatticeData> {
        let gens: Result<Vec<LatticeVector>> = self.cl_image.generators().iter().map(f).collect();
        let cl_image = Sublattice::new(&self.surface, gens?)?.saturate()?;
        Ok(LatticeData { cl_image, ..self.clone() })
    }
}

/// Builds the surface lattice and the class-group image for `model`.
pub fn realize(model: &ThreefoldModel) -> Result<LatticeData> {
    let n = model.blowups;
    let (surface, gens) = if model.base.is_projective_space() {
        if n == 0 {
            (p1xp1_lattice(), vec![LatticeVector::new(vec![1, 1])])
        } else {
            // The quadric blown up in one point is the plane blown up in two:
            // f1 = h - e1, f2 = h - e2, and the exceptional curve is h - e1 - e2.
            let s = standard_dp_lattice(n + 1)?;
            let mut hyperplane = vec![0; n + 2];
            hyperplane[..3].copy_from_slice(&[2, -1, -1]);
            let mut first = vec![0; n + 2];
            first[..3].copy_from_slice(&[1, -1, -1]);
            let mut gens = vec![LatticeVector::new(hyperplane), LatticeVector::new(first)];
            gens.extend((3..n + 2).map(|i| s.basis_vector(i)));
            (s, gens)
        }
    } else {
        let nbar = 9 - model.base.degree() as usize;
        let s = standard_dp_lattice(nbar + n)?;
        let k = s.canonical().clone();
        let h = s.basis_vector(0);
        let ruling = |i: usize| &h - &s.basis_vector(i);
        let mut gens = match model.base {
            BaseKind::FactorialRank1(_) => vec![k],
            BaseKind::P1BundleOverP2(_) => vec![h.clone(), k],
            BaseKind::QuadricBundleOverP1(_) => vec![ruling(1), k],
            BaseKind::P1BundleOverP1xP1(_) | BaseKind::P1xP1xP1 => vec![ruling(1), ruling(2), k],
        };
        gens.extend((nbar + 1..=nbar + n).map(|i| s.basis_vector(i)));
        (s, gens)
    };
    let cl_image = Sublattice::new(&surface, gens)?.saturate()?;
    let r = cl_image.rank();
    if r != model.r() {
        return inconsistent(format!("class group image of {model} has rank {r}"));
    }
    if !cl_image.contains(surface.canonical())? {
        return inconsistent(format!("class group image of {model} misses K"));
    }
    Ok(LatticeData { model: *model, surface, cl_image, r })
}

/// Roots orthogonal to the class-group image.
pub fn delta_prime(data: &LatticeData) -> Result<(RootSet, DynkinType)> {
    let all = enumerate_roots(&data.surface)?;
    let mut err = None;
    let roots = all.filter(|a| match data.cl_image.is_orthogonal_to(a) {
        Ok(b) => b,
        Err(e) => {
            err = Some(e);
            false
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    let ty = classify(&roots)?;
    Ok((roots, ty))
}

/// Roots contained in the class-group image.
pub fn delta_second(data: &LatticeData) -> Result<(RootSet, DynkinType)> {
    let all = enumerate_roots(&data.surface)?;
    let mut err = None;
    let roots = all.filter(|a| match data.cl_image.contains(a) {
        Ok(b) => b,
        Err(e) => {
            err = Some(e);
            false
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    let ty = classify(&roots)?;
    Ok((roots, ty))
}

/// Line classes orthogonal to every root of `delta_prime`.
pub fn lines_orthogonal_to_delta_prime(data: &LatticeData) -> Result<Vec<LatticeVector>> {
    let (dp, _) = delta_prime(data)?;
    let mut out = Vec::new();
    for e in enumerate_lines(&data.surface)?.lines() {
        let mut orthogonal = true;
        for a in dp.roots() {
            if data.surface.inner(e, a)? != 0 {
                orthogonal = false;
                break;
            }
        }
        if orthogonal {
            out.push(e.clone());
        }
    }
    Ok(out)
}

/// Line classes lying in the class-group image.
pub fn lines_in_class_group(data: &LatticeData) -> Result<Vec<LatticeVector>> {
    let mut out = Vec::new();
    for e in enumerate_lines(&data.surface)?.lines() {
        if data.cl_image.contains(e)? {
            out.push(e.clone());
        }
    }
    Ok(out)
}

/// Number of planes: line classes orthogonal to `delta_prime`. Errors if this
/// set differs from the line classes inside the class-group image.
pub fn plane_count(data: &LatticeData) -> Result<usize> {
    let by_orthogonality = lines_orthogonal_to_delta_prime(data)?;
    let by_membership = lines_in_class_group(data)?;
    let a: HashSet<_> = by_orthogonality.iter().collect();
    let b: HashSet<_> = by_membership.iter().collect();
    if a != b {
        return inconsistent(format!(
            "{}: {} lines orthogonal to the roots but {} lines in the class group",
            data.model,
            a.len(),
            b.len()
        ));
    }
    Ok(a.len())
}

/// `rk(delta_prime) + r + d = 10`.
pub fn rank_identity(data: &LatticeData, d: u8) -> Result<bool> {
    let (_, ty) = delta_prime(data)?;
    Ok(ty.rank() + data.r + d as usize == 10)
}
