//! Roots and line classes of del Pezzo lattices, Dynkin classification,
//! reflections and Weyl group computations.

use std::collections::{HashMap, HashSet};

use crate::dynkin::{Component, DynkinType, Family};
use crate::error::{inconsistent, invalid, Result};
use crate::lattice::{IntegerLattice, LatticeVector, SurfaceShape};
use crate::perm::{Perm, StabChain};

/// A finite set of roots (`a^2 = -2`, `a.K = 0`) of an ambient lattice, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSet {
    ambient: IntegerLattice,
    roots: Vec<LatticeVector>,
}

impl RootSet {
    /// Validates each vector as a root and that the set is negation closed.
    pub fn new(ambient: &IntegerLattice, mut roots: Vec<LatticeVector>) -> Result<Self> {
        for r in &roots {
            if ambient.square(r)? != -2 || ambient.inner(r, ambient.canonical())? != 0 {
                return invalid(format!("{} is not a root", ambient.format_vector(r)));
            }
        }
        roots.sort();
        roots.dedup();
        let set: HashSet<&LatticeVector> = roots.iter().collect();
        if roots.iter().any(|r| !set.contains(&-r)) {
            return invalid("root set is not closed under negation");
        }
        Ok(RootSet { ambient: ambient.clone(), roots })
    }

    pub fn empty(ambient: &IntegerLattice) -> Self {
        RootSet { ambient: ambient.clone(), roots: Vec::new() }
    }

    pub fn ambient(&self) -> &IntegerLattice {
        &self.ambient
    }

    pub fn roots(&self) -> &[LatticeVector] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn contains(&self, v: &LatticeVector) -> bool {
        self.roots.binary_search(v).is_ok()
    }

    /// Subset of roots satisfying `keep`; stays negation closed whenever
    /// `keep` is invariant under negation.
    pub fn filter(&self, mut keep: impl FnMut(&LatticeVector) -> bool) -> RootSet {
        RootSet { ambient: self.ambient.clone(), roots: self.roots.iter().filter(|r| keep(r)).cloned().collect() }
    }

    /// Splits into irreducible components: classes of the relation generated
    /// by non-orthogonality. Ordered by smallest member.
    pub fn components(&self) -> Result<Vec<RootSet>> {
        let n = self.roots.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for i in 0..n {
            for j in i + 1..n {
                if self.ambient.inner(&self.roots[i], &self.roots[j])? != 0 {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut groups: Vec<(usize, Vec<LatticeVector>)> = Vec::new();
        for i in 0..n {
            let root = find(&mut parent, i);
            match groups.iter_mut().find(|(r, _)| *r == root) {
                Some((_, g)) => g.push(self.roots[i].clone()),
                None => groups.push((root, vec![self.roots[i].clone()])),
            }
        }
        Ok(groups.into_iter().map(|(_, roots)| RootSet { ambient: self.ambient.clone(), roots }).collect())
    }
}

/// Line classes (`e^2 = e.K = -1`) of a lattice, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineSet {
    ambient: IntegerLattice,
    lines: Vec<LatticeVector>,
}

impl LineSet {
    pub fn ambient(&self) -> &IntegerLattice {
        &self.ambient
    }

    pub fn lines(&self) -> &[LatticeVector] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }
}

/// How far the coefficient search reaches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchBound {
    /// Cauchy-Schwarz interval for the `h` coefficient and pruning of the
    /// exceptional coefficients by both the norm and the sum constraint.
    Tight,
    /// The `h` interval widened by the given margin on both sides and only
    /// the norm budget used for pruning. For completeness checks.
    Widened(i64),
}

/// All roots of a supported surface lattice.
pub fn enumerate_roots(l: &IntegerLattice) -> Result<RootSet> {
    let roots = solve_norm_and_degree(l, -2, 0, SearchBound::Tight)?;
    Ok(RootSet { ambient: l.clone(), roots })
}

/// All line classes of a supported surface lattice.
pub fn enumerate_lines(l: &IntegerLattice) -> Result<LineSet> {
    let lines = solve_norm_and_degree(l, -1, -1, SearchBound::Tight)?;
    Ok(LineSet { ambient: l.clone(), lines })
}

/// Inclusive range of the `h` coefficient `a` allowed by Cauchy-Schwarz for
/// `v^2 = square`, `v.K = kdot` on the plane blown up in `n` points:
/// `(9 - n) a^2 + 6 kdot a + kdot^2 + n square <= 0`.
pub fn h_coefficient_range(n: usize, square: i64, kdot: i64) -> Option<(i64, i64)> {
    let n = n as i64;
    let q = |a: i64| (9 - n) * a * a + 6 * kdot * a + kdot * kdot + n * square;
    // The vertex sits at -3 kdot / (9 - n); scan outward from it.
    let centre = (-3 * kdot).div_euclid(9 - n);
    let start = (centre - 1..=centre + 1).find(|&a| q(a) <= 0)?;
    let mut lo = start;
    while q(lo - 1) <= 0 {
        lo -= 1;
    }
    let mut hi = start;
    while q(hi + 1) <= 0 {
        hi += 1;
    }
    Some((lo, hi))
}

/// Every `v` with `v^2 = square` and `v.K = kdot`, in sorted order.
pub fn solve_norm_and_degree(
    l: &IntegerLattice,
    square: i64,
    kdot: i64,
    bound: SearchBound,
) -> Result<Vec<LatticeVector>> {
    let mut out = match l.shape() {
        SurfaceShape::BlownUpPlane(n) => solve_blown_up_plane(n, square, kdot, bound),
        SurfaceShape::Quadric => solve_quadric(square, kdot, bound),
        SurfaceShape::Other => return invalid("unsupported lattice: not a del Pezzo surface lattice"),
    };
    out.sort();
    Ok(out)
}

fn solve_blown_up_plane(n: usize, square: i64, kdot: i64, bound: SearchBound) -> Vec<LatticeVector> {
    // v = a h + sum b_i e_i: sum b_i = -3a - kdot, sum b_i^2 = a^2 - square
    let range = h_coefficient_range(n, square, kdot);
    let (lo, hi, prune) = match (bound, range) {
        (SearchBound::Tight, None) => return Vec::new(),
        (SearchBound::Tight, Some((lo, hi))) => (lo, hi, true),
        (SearchBound::Widened(m), Some((lo, hi))) => (lo - m, hi + m, false),
        (SearchBound::Widened(m), None) => (-m, m, false),
    };
    let mut out = Vec::new();
    let mut coeffs = vec![0i64; n + 1];
    for a in lo..=hi {
        let budget = a * a - square;
        if budget < 0 {
            continue;
        }
        coeffs[0] = a;
        search_exceptional(&mut coeffs, 1, -3 * a - kdot, budget, prune, &mut out);
    }
    out
}

fn isqrt(x: i64) -> i64 {
    let mut r = (x as f64).sqrt() as i64;
    while r * r > x {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    r
}

fn search_exceptional(
    coeffs: &mut [i64],
    pos: usize,
    sum: i64,
    budget: i64,
    prune: bool,
    out: &mut Vec<LatticeVector>,
) {
    let remaining = (coeffs.len() - pos) as i64;
    if remaining == 0 {
        if sum == 0 && budget == 0 {
            out.push(LatticeVector::new(coeffs.to_vec()));
        }
        return;
    }
    if remaining == 1 {
        if sum * sum == budget {
            coeffs[pos] = sum;
            out.push(LatticeVector::new(coeffs.to_vec()));
        }
        return;
    }
    let r = isqrt(budget);
    for b in -r..=r {
        let rest_budget = budget - b * b;
        let rest_sum = sum - b;
        if prune && rest_sum * rest_sum > (remaining - 1) * rest_budget {
            continue;
        }
        coeffs[pos] = b;
        search_exceptional(coeffs, pos + 1, rest_sum, rest_budget, prune, out);
    }
}

fn solve_quadric(square: i64, kdot: i64, bound: SearchBound) -> Vec<LatticeVector> {
    // v = x f1 + y f2: v.K = -2(x + y), v^2 = 2xy
    if kdot % 2 != 0 {
        return Vec::new();
    }
    let s = -kdot / 2;
    let margin = match bound {
        SearchBound::Tight => 0,
        SearchBound::Widened(m) => m,
    };
    // |x (s - x)| grows past |square| / 2 once |x| > |s| + |square| + 1
    let r = s.abs() + square.abs() + 1 + margin;
    (-r..=r).filter(|&x| 2 * x * (s - x) == square).map(|x| LatticeVector::new(vec![x, s - x])).collect()
}

/// `v + (v.a) a`, the reflection in the root `a`.
pub fn reflect(l: &IntegerLattice, alpha: &LatticeVector, v: &LatticeVector) -> Result<LatticeVector> {
    if l.square(alpha)? != -2 {
        return invalid(format!("{} does not have square -2", l.format_vector(alpha)));
    }
    Ok(v.add_scaled(l.inner(v, alpha)?, alpha))
}

/// Closure of `{seed}` under the reflections in `roots`, in breadth-first
/// order with the reflections applied in sorted root order.
pub fn weyl_orbit(roots: &RootSet, seed: &LatticeVector) -> Result<Vec<LatticeVector>> {
    let l = &roots.ambient;
    let mut seen: HashSet<LatticeVector> = HashSet::from([seed.clone()]);
    let mut orbit = vec![seed.clone()];
    let mut head = 0;
    while head < orbit.len() {
        let v = orbit[head].clone();
        head += 1;
        for alpha in &roots.roots {
            let w = v.add_scaled(l.inner(&v, alpha)?, alpha);
            if seen.insert(w.clone()) {
                orbit.push(w);
            }
        }
    }
    Ok(orbit)
}

/// Roots positive for the functional with weights `(N^{k-1}, ..., N, 1)`,
/// `N` starting at 10 and raised until no root evaluates to zero.
pub fn positive_roots(roots: &RootSet) -> Vec<LatticeVector> {
    if roots.is_empty() {
        return Vec::new();
    }
    let k = roots.ambient.rank() as u32;
    let mut base: i128 = 10;
    loop {
        let weights: Vec<i128> = (0..k).map(|i| base.pow(k - 1 - i)).collect();
        let eval = |v: &LatticeVector| -> i128 { v.coeffs().iter().zip(&weights).map(|(&c, &w)| c as i128 * w).sum() };
        if roots.roots.iter().all(|r| eval(r) != 0) {
            return roots.roots.iter().filter(|r| eval(r) > 0).cloned().collect();
        }
        base += 1;
    }
}

/// Positive roots that are not the sum of two positive roots.
pub fn simple_roots(roots: &RootSet) -> Vec<LatticeVector> {
    let positive = positive_roots(roots);
    let set: HashSet<&LatticeVector> = positive.iter().collect();
    positive.iter().filter(|alpha| !positive.iter().any(|beta| set.contains(&(*alpha - beta)))).cloned().collect()
}

/// Dynkin type of a root set, from the diagram of its simple roots.
pub fn classify(roots: &RootSet) -> Result<DynkinType> {
    if roots.is_empty() {
        return Ok(DynkinType::empty());
    }
    let l = &roots.ambient;
    let simple = simple_roots(roots);
    let k = simple.len();
    let mut adj = vec![Vec::new(); k];
    for i in 0..k {
        for j in i + 1..k {
            let p = l.inner(&simple[i], &simple[j])?;
            if p.abs() >= 2 {
                return invalid(format!(
                    "simple roots {} and {} pair to {p}: not simply laced",
                    l.format_vector(&simple[i]),
                    l.format_vector(&simple[j])
                ));
            }
            if p != 0 {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
    }
    let mut seen = vec![false; k];
    let mut components = Vec::new();
    for start in 0..k {
        if seen[start] {
            continue;
        }
        let mut verts = vec![start];
        seen[start] = true;
        let mut head = 0;
        while head < verts.len() {
            for &w in &adj[verts[head]] {
                if !seen[w] {
                    seen[w] = true;
                    verts.push(w);
                }
            }
            head += 1;
        }
        components.extend(identify_diagram(&verts, &adj)?);
    }
    let ty = DynkinType::from_components(components);
    if ty.root_count() != roots.len() {
        return inconsistent(format!(
            "diagram {ty} predicts {} roots but the set has {}",
            ty.root_count(),
            roots.len()
        ));
    }
    Ok(ty)
}

fn identify_diagram(verts: &[usize], adj: &[Vec<usize>]) -> Result<Vec<Component>> {
    let k = verts.len();
    let edges: usize = verts.iter().map(|&v| adj[v].len()).sum::<usize>() / 2;
    if edges + 1 != k {
        return inconsistent("simple-root diagram contains a cycle");
    }
    let branch: Vec<usize> = verts.iter().copied().filter(|&v| adj[v].len() >= 3).collect();
    match branch.as_slice() {
        [] => Component::new(Family::A, k),
        [b] if adj[*b].len() == 3 => {
            let mut arms: Vec<usize> = adj[*b].iter().map(|&n| arm_length(*b, n, adj)).collect();
            arms.sort();
            match arms.as_slice() {
                [1, 1, r] => Component::new(Family::D, r + 3),
                [1, 2, 2] => Component::new(Family::E, 6),
                [1, 2, 3] => Component::new(Family::E, 7),
                [1, 2, 4] => Component::new(Family::E, 8),
                _ => inconsistent(format!("branched diagram with arms {arms:?} is not ADE")),
            }
        }
        _ => inconsistent("simple-root diagram has a vertex of degree > 3 or two branch points"),
    }
}

fn arm_length(from: usize, first: usize, adj: &[Vec<usize>]) -> usize {
    let (mut prev, mut cur, mut len) = (from, first, 1);
    while let Some(&next) = adj[cur].iter().find(|&&n| n != prev) {
        prev = cur;
        cur = next;
        len += 1;
    }
    len
}

/// The Weyl group acting on the indices of `roots.roots()`, generated by the
/// simple reflections.
pub fn weyl_permutation_group(roots: &RootSet) -> Result<StabChain> {
    let index: HashMap<&LatticeVector, u32> = roots.roots.iter().enumerate().map(|(i, r)| (r, i as u32)).collect();
    let l = &roots.ambient;
    let mut gens: Vec<Perm> = Vec::new();
    for alpha in simple_roots(roots) {
        let mut p = Vec::with_capacity(roots.len());
        for r in &roots.roots {
            let image = reflect(l, &alpha, r)?;
            match index.get(&image) {
                Some(&j) => p.push(j),
                None => return invalid("root set is not closed under its reflections"),
            }
        }
        gens.push(p);
    }
    Ok(StabChain::new(roots.len(), &gens))
}

/// Order of the Weyl group generated by `roots`.
pub fn weyl_group_order(roots: &RootSet) -> Result<u128> {
    Ok(weyl_permutation_group(roots)?.order())
}

/// Whether `v -> -v` on the span of `roots` is a product of reflections in
/// `roots`.
pub fn minus_id_in_weyl(roots: &RootSet) -> Result<bool> {
    if roots.is_empty() {
        return invalid("the Weyl group of an empty root set has no -id to test");
    }
    let group = weyl_permutation_group(roots)?;
    let index: HashMap<&LatticeVector, u32> = roots.roots.iter().enumerate().map(|(i, r)| (r, i as u32)).collect();
    let negation: Perm = roots.roots.iter().map(|r| index[&-r]).collect();
    Ok(group.contains(&negation))
}
