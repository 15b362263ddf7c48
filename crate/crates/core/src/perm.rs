//! Permutation groups on `0..n` via a Schreier-Sims stabilizer chain.
//! Used to decide membership of the negation map in a Weyl group acting on
//! its root set.

/// `p[x]` is the image of `x`.
pub type Perm = Vec<u32>;

pub fn identity(n: usize) -> Perm {
    (0..n as u32).collect()
}

pub fn is_identity(p: &Perm) -> bool {
    p.iter().enumerate().all(|(i, &x)| i as u32 == x)
}

/// Apply `a`, then `b`.
pub fn compose(a: &Perm, b: &Perm) -> Perm {
    a.iter().map(|&x| b[x as usize]).collect()
}

pub fn inverse(p: &Perm) -> Perm {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x as usize] = i as u32;
    }
    inv
}

#[derive(Clone, Debug)]
struct Level {
    base: u32,
    /// Strong generators first introduced at this level.
    gens: Vec<Perm>,
    /// `transversal[p]` maps `base` to `p` when `p` is in the basic orbit.
    transversal: Vec<Option<Perm>>,
}

/// Stabilizer chain for the group generated by a list of permutations.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize, generators: &[Perm]) -> Self {
        let mut chain = StabChain { degree, levels: Vec::new() };
        for g in generators {
            assert_eq!(g.len(), degree, "generator of the wrong degree");
            let (residue, level) = chain.sift(g.clone(), 0);
            if !is_identity(&residue) {
                chain.insert(residue, level);
            }
        }
        chain.complete();
        chain
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Group order as the product of basic orbit lengths.
    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.transversal.iter().filter(|t| t.is_some()).count() as u128).product()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        p.len() == self.degree && is_identity(&self.sift(p.clone(), 0).0)
    }

    fn sift(&self, mut g: Perm, from: usize) -> (Perm, usize) {
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let image = g[level.base as usize] as usize;
            match &level.transversal[image] {
                Some(u) => g = compose(&g, &inverse(u)),
                None => return (g, i),
            }
        }
        (g, self.levels.len())
    }

    /// Records a nontrivial sifted residue at `level`, opening a new level
    /// when it survived the whole chain.
    fn insert(&mut self, h: Perm, level: usize) {
        if level == self.levels.len() {
            let base = h
                .iter()
                .enumerate()
                .find(|&(i, &x)| i as u32 != x)
                .map(|(i, _)| i as u32)
                .expect("nontrivial residue moves a point");
            self.levels.push(Level { base, gens: Vec::new(), transversal: Vec::new() });
        }
        self.levels[level].gens.push(h);
        for i in 0..=level {
            self.rebuild_orbit(i);
        }
    }

    fn level_generators(&self, i: usize) -> Vec<&Perm> {
        self.levels[i..].iter().flat_map(|l| l.gens.iter()).collect()
    }

    fn rebuild_orbit(&mut self, i: usize) {
        let gens: Vec<Perm> = self.level_generators(i).into_iter().cloned().collect();
        let base = self.levels[i].base as usize;
        let mut transversal: Vec<Option<Perm>> = vec![None; self.degree];
        transversal[base] = Some(identity(self.degree));
        let mut queue = vec![base];
        let mut head = 0;
        while head < queue.len() {
            let p = queue[head];
            head += 1;
            for s in &gens {
                let q = s[p] as usize;
                if transversal[q].is_none() {
                    let u = compose(transversal[p].as_ref().unwrap(), s);
                    transversal[q] = Some(u);
                    queue.push(q);
                }
            }
        }
        self.levels[i].transversal = transversal;
    }

    /// Makes the chain a base and strong generating set: every Schreier
    /// generator of each level sifts to the identity through the deeper
    /// levels.
    fn complete(&mut self) {
        let mut i = self.levels.len();
        while i > 0 {
            let level = i - 1;
            match self.find_unsifted_schreier_generator(level) {
                Some((residue, at)) => {
                    self.insert(residue, at);
                    // everything from `at` upward has new generators
                    i = at + 1;
                }
                None => i -= 1,
            }
        }
    }

    fn find_unsifted_schreier_generator(&self, level: usize) -> Option<(Perm, usize)> {
        let gens = self.level_generators(level);
        let transversal = &self.levels[level].transversal;
        for (p, up) in transversal.iter().enumerate() {
            let Some(up) = up else { continue };
            for s in &gens {
                let sp = s[p] as usize;
                let usp = transversal[sp].as_ref().expect("orbit closed under generators");
                let schreier = compose(&compose(up, s), &inverse(usp));
                if is_identity(&schreier) {
                    continue;
                }
                let (residue, at) = self.sift(schreier, level + 1);
                if !is_identity(&residue) {
                    return Some((residue, at));
                }
            }
        }
        None
    }
}
