//! Pencil classes on primitive rank-3 models and the rank-2 case list.
//!
//! Divisor classes are written `a S + b1 F1 + b2 F2`, where `S` is the half
//! anticanonical class and `F1`, `F2` are the two pencils of a fixed pair.

use std::fmt;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{invalid, Result};

/// `a S + b1 F1 + b2 F2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PencilClass {
    pub a: i64,
    pub b1: i64,
    pub b2: i64,
}

impl PencilClass {
    pub const S: PencilClass = PencilClass { a: 1, b1: 0, b2: 0 };
    pub const F1: PencilClass = PencilClass { a: 0, b1: 1, b2: 0 };
    pub const F2: PencilClass = PencilClass { a: 0, b1: 0, b2: 1 };

    pub fn new(a: i64, b1: i64, b2: i64) -> Self {
        PencilClass { a, b1, b2 }
    }

    fn coeffs(&self) -> [i64; 3] {
        [self.a, self.b1, self.b2]
    }

    /// Both defining relations at degree `d`:
    /// `a^2 d + 4a(b1 + b2) + 2 b1 b2 = 0` and `a d + 2(b1 + b2) = 2`.
    pub fn satisfies_relations(&self, d: i64) -> bool {
        let PencilClass { a, b1, b2 } = *self;
        a * a * d + 4 * a * (b1 + b2) + 2 * b1 * b2 == 0 && a * d + 2 * (b1 + b2) == 2
    }
}

impl fmt::Display for PencilClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b1, self.b2)
    }
}

/// Intersection number of three basis classes (0 = S, 1 = F1, 2 = F2).
fn basis_product(d: i64, i: usize, j: usize, k: usize) -> i64 {
    let mut idx = [i, j, k];
    idx.sort();
    match idx {
        [0, 0, 0] => d,
        [0, 0, _] => 2,
        [0, 1, 2] => 1,
        _ => 0,
    }
}

/// Trilinear intersection product at degree `d`.
pub fn triple_product(d: i64, x: &PencilClass, y: &PencilClass, z: &PencilClass) -> i64 {
    let (x, y, z) = (x.coeffs(), y.coeffs(), z.coeffs());
    let mut total = 0;
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                total += x[i] * y[j] * z[k] * basis_product(d, i, j, k);
            }
        }
    }
    total
}

/// The values `a d` examined for nontrivial solutions.
pub const ADMISSIBLE_AD: [i64; 4] = [2, 4, 6, 8];

/// All solutions with `a >= 0` and `a d <= 8`, sorted lexicographically;
/// includes `F1` and `F2` themselves.
pub fn solve_pencils(d: i64) -> Result<Vec<PencilClass>> {
    if !(1..=8).contains(&d) {
        return invalid(format!("degree must be in 1..=8, got {d}"));
    }
    let mut out = vec![PencilClass::F1, PencilClass::F2];
    for ad in ADMISSIBLE_AD {
        if ad % d != 0 {
            continue;
        }
        let a = ad / d;
        // b1 + b2 = s, b1 b2 = p
        let s = (2 - ad) / 2;
        let p = a * (ad - 4) / 2;
        let disc = s * s - 4 * p;
        if disc < 0 {
            continue;
        }
        let root = (disc as f64).sqrt() as i64;
        let Some(root) = (root.saturating_sub(1)..=root + 1).find(|r| r * r == disc) else {
            continue;
        };
        if (s + root) % 2 != 0 {
            continue;
        }
        for b1 in [(s - root) / 2, (s + root) / 2] {
            out.push(PencilClass::new(a, b1, s - b1));
        }
    }
    out.sort();
    out.dedup();
    debug_assert!(out.iter().all(|c| c.satisfies_relations(d)));
    Ok(out)
}

/// Which of the admissible `a d` values carry a nontrivial solution.
pub fn realized_ad_values(d: i64) -> Result<Vec<i64>> {
    let mut ads: Vec<i64> = solve_pencils(d)?.iter().filter(|c| c.a > 0).map(|c| c.a * d).collect();
    ads.dedup();
    Ok(ads)
}

/// Solutions joined when `Fi . Fj . S = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PencilGraph {
    pub degree: i64,
    pub vertices: Vec<PencilClass>,
    pub edges: Vec<(usize, usize)>,
    /// Every vertex has degree two and the graph is connected.
    pub consistent: bool,
}

impl PencilGraph {
    pub fn vertex_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertices.len()];
        for &(i, j) in &self.edges {
            deg[i] += 1;
            deg[j] += 1;
        }
        deg
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(i, j) in &self.edges {
                let w = if i == v {
                    j
                } else if j == v {
                    i
                } else {
                    continue;
                };
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Whether the graph is a single cycle through all vertices.
    pub fn is_cycle(&self) -> bool {
        self.vertices.len() >= 3 && self.vertex_degrees().iter().all(|&k| k == 2) && self.is_connected()
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "graph pencils_d{} {{", self.degree);
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(s, "  v{i} [label=\"{v}\"];");
        }
        for (i, j) in &self.edges {
            let _ = writeln!(s, "  v{i} -- v{j};");
        }
        s.push_str("}\n");
        s
    }
}

pub fn conjugacy_graph(d: i64) -> Result<PencilGraph> {
    let vertices = solve_pencils(d)?;
    if vertices.len() < 3 {
        return invalid(format!("degree {d} has only {} pencil classes", vertices.len()));
    }
    let mut edges = Vec::new();
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            if triple_product(d, &vertices[i], &vertices[j], &PencilClass::S) == 1 {
                edges.push((i, j));
            }
        }
    }
    let mut g = PencilGraph { degree: d, vertices, edges, consistent: false };
    g.consistent = g.is_cycle();
    Ok(g)
}

/// Type of an extremal contraction of a rank-2 model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Contraction {
    P1Bundle,
    QuadricBundle,
    Birational,
}

impl Contraction {
    /// Dimension of the base for fiber types.
    fn base_dim(self) -> Option<i64> {
        match self {
            Contraction::P1Bundle => Some(2),
            Contraction::QuadricBundle => Some(1),
            Contraction::Birational => None,
        }
    }

    fn divisor(self, primed: bool) -> &'static str {
        match (self, primed) {
            (Contraction::Birational, false) => "E",
            (Contraction::Birational, true) => "E'",
            (_, false) => "L",
            (_, true) => "L'",
        }
    }
}

impl fmt::Display for Contraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Contraction::P1Bundle => "P1-bundle",
            Contraction::QuadricBundle => "quadric bundle",
            Contraction::Birational => "birational",
        })
    }
}

/// One case `D + m D' ~ a S` for the pair of contractions of a rank-2 model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Rank2Case {
    pub f_type: Contraction,
    pub f_plus_type: Contraction,
    pub d: i64,
    pub a: i64,
    /// Coefficient of the second divisor; 2 only when the birational side
    /// contracts onto `P3`.
    pub second_multiplicity: i64,
}

impl Rank2Case {
    pub fn relation(&self) -> String {
        let m = match self.second_multiplicity {
            1 => String::new(),
            m => m.to_string(),
        };
        let a = match self.a {
            1 => String::new(),
            a => a.to_string(),
        };
        format!("{} + {m}{} ~ {a}S", self.f_type.divisor(false), self.f_plus_type.divisor(true))
    }
}

/// Every admissible pair of contractions with its relation coefficient.
pub fn enumerate_rank2_cases() -> Vec<Rank2Case> {
    use Contraction::*;
    let case = |f_type, f_plus_type, d, a| Rank2Case { f_type, f_plus_type, d, a, second_multiplicity: 1 };
    let mut out = Vec::new();
    let divisors = |m: i64| (1..=8).filter(move |d| m % d == 0);
    // both fiber type: a d = n + n' + 2, and d >= 3 unless n = n'
    for (f, g) in [(P1Bundle, P1Bundle), (P1Bundle, QuadricBundle), (QuadricBundle, QuadricBundle)] {
        let (n, n2) = (f.base_dim().unwrap(), g.base_dim().unwrap());
        for d in divisors(n + n2 + 2) {
            if n != n2 && d < 3 {
                continue;
            }
            out.push(case(f, g, d, (n + n2 + 2) / d));
        }
    }
    // birational and fiber type: a d = n' + 2 with d >= 3
    for g in [P1Bundle, QuadricBundle] {
        let m = g.base_dim().unwrap() + 2;
        for d in divisors(m).filter(|&d| d >= 3) {
            out.push(case(Birational, g, d, m / d));
        }
        if g == P1Bundle {
            // contraction onto P3: the exceptional divisor is not a
            // generator together with S
            out.push(Rank2Case { second_multiplicity: 2, ..case(Birational, P1Bundle, 7, 1) });
        }
    }
    // both birational: a d = 2
    for d in divisors(2) {
        out.push(case(Birational, Birational, d, 2 / d));
    }
    out
}
