//! Deterministic Schreier–Sims.
//!
//! Level `l` stores the base point `b_l`, the strong generators that fix
//! `b_0, …, b_{l−1}`, and the orbit of `b_l` under them with a transversal.
//! Base points are always the smallest point moved by the element that
//! forces a new level, so the chain depends only on the generator sequence.

use super::perm::Permutation;

const NOT_IN_ORBIT: u32 = u32::MAX;

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    gens: Vec<Permutation>,
    orbit: Vec<u16>,
    position: Vec<u32>,
    transversal: Vec<Permutation>,
    inverse: Vec<Permutation>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut level = Level {
            base,
            gens: Vec::new(),
            orbit: Vec::new(),
            position: vec![NOT_IN_ORBIT; degree],
            transversal: Vec::new(),
            inverse: Vec::new(),
        };
        level.rebuild_orbit(degree);
        level
    }

    fn rebuild_orbit(&mut self, degree: usize) {
        self.orbit.clear();
        self.transversal.clear();
        self.inverse.clear();
        self.position.iter_mut().for_each(|p| *p = NOT_IN_ORBIT);

        let id = Permutation::identity(degree);
        self.orbit.push(self.base as u16);
        self.position[self.base] = 0;
        self.transversal.push(id.clone());
        self.inverse.push(id);
        let mut head = 0;
        while head < self.orbit.len() {
            let beta = self.orbit[head] as usize;
            for s in &self.gens {
                let gamma = s.apply(beta);
                if self.position[gamma] == NOT_IN_ORBIT {
                    let u = self.transversal[head].then(s);
                    self.position[gamma] = self.orbit.len() as u32;
                    self.orbit.push(gamma as u16);
                    self.inverse.push(u.inverse());
                    self.transversal.push(u);
                }
            }
            head += 1;
        }
    }
}

/// A base and strong generating set with transversals.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize) -> Self {
        StabChain {
            degree,
            levels: Vec::new(),
        }
    }

    pub fn from_generators(degree: usize, gens: &[Permutation]) -> Self {
        let mut chain = StabChain::new(degree);
        for g in gens {
            chain.add_generator(g);
        }
        chain
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Strong generators, deduplicated, in insertion order.
    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for level in &self.levels {
            for g in &level.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    /// Strips `h` starting at level `from`. Returns the residue and the level
    /// at which stripping stopped (`levels.len()` when it passed every level).
    fn strip(&self, mut h: Permutation, from: usize) -> (Permutation, usize) {
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let beta = h.apply(level.base);
            let pos = level.position[beta];
            if pos == NOT_IN_ORBIT {
                return (h, l);
            }
            if pos != 0 {
                h = h.then(&level.inverse[pos as usize]);
            }
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        if p.degree() != self.degree {
            return false;
        }
        let (residue, level) = self.strip(p.clone(), 0);
        level == self.levels.len() && residue.is_identity()
    }

    /// Mixed-radix index of `p` in the enumeration order, or `None` if `p`
    /// is not a member.
    pub fn rank(&self, p: &Permutation) -> Option<u64> {
        if p.degree() != self.degree {
            return None;
        }
        let mut h = p.clone();
        let mut rank = 0u64;
        for level in &self.levels {
            let beta = h.apply(level.base);
            let pos = level.position[beta];
            if pos == NOT_IN_ORBIT {
                return None;
            }
            rank = rank * level.orbit.len() as u64 + pos as u64;
            if pos != 0 {
                h = h.then(&level.inverse[pos as usize]);
            }
        }
        h.is_identity().then_some(rank)
    }

    /// Inverse of [`rank`](Self::rank). `index` must be below the order.
    pub fn unrank(&self, mut index: u64) -> Permutation {
        let mut coords = vec![0usize; self.levels.len()];
        for (l, level) in self.levels.iter().enumerate().rev() {
            let len = level.orbit.len() as u64;
            coords[l] = (index % len) as usize;
            index /= len;
        }
        debug_assert_eq!(index, 0, "index out of range");
        // g = u_k ⋯ u_1 u_0 under left-to-right products.
        let mut g = Permutation::identity(self.degree);
        for (l, level) in self.levels.iter().enumerate().rev() {
            if coords[l] != 0 {
                g = g.then(&level.transversal[coords[l]]);
            }
        }
        g
    }

    /// Adds a generator and restores the strong generating property.
    /// Returns `false` when `g` was already a member.
    pub fn add_generator(&mut self, g: &Permutation) -> bool {
        assert_eq!(g.degree(), self.degree, "generator degree mismatch");
        if g.is_identity() || self.contains(g) {
            return false;
        }
        // g belongs at every level whose earlier base points it fixes.
        let mut deepest = self.levels.len();
        for (l, level) in self.levels.iter().enumerate() {
            if g.apply(level.base) != level.base {
                deepest = l;
                break;
            }
        }
        if deepest == self.levels.len() {
            let base = g.smallest_moved_point().expect("non-identity");
            self.levels.push(Level::new(base, self.degree));
        }
        let mut dirty = vec![false; self.levels.len()];
        for l in 0..=deepest {
            self.levels[l].gens.push(g.clone());
            self.levels[l].rebuild_orbit(self.degree);
            dirty[l] = true;
        }
        self.close(dirty);
        true
    }

    /// Schreier–Sims main loop. Processes the deepest dirty level first so that
    /// all deeper levels are complete whenever Schreier generators are stripped.
    fn close(&mut self, mut dirty: Vec<bool>) {
        while let Some(i) = dirty.iter().rposition(|&d| d) {
            match self.find_residue(i) {
                None => dirty[i] = false,
                Some((residue, j)) => {
                    if j == self.levels.len() {
                        let base = residue.smallest_moved_point().expect("non-identity");
                        self.levels.push(Level::new(base, self.degree));
                        dirty.push(false);
                    }
                    for l in (i + 1)..=j {
                        self.levels[l].gens.push(residue.clone());
                        self.levels[l].rebuild_orbit(self.degree);
                        dirty[l] = true;
                    }
                }
            }
        }
    }

    /// First Schreier generator of level `i` that does not strip through the
    /// deeper levels, with the level where stripping failed.
    fn find_residue(&self, i: usize) -> Option<(Permutation, usize)> {
        let level = &self.levels[i];
        for (k, &beta) in level.orbit.iter().enumerate() {
            let u = &level.transversal[k];
            for s in &level.gens {
                let image = s.apply(beta as usize);
                let pos = level.position[image] as usize;
                let schreier = u.then(s).then(&level.inverse[pos]);
                if schreier.is_identity() {
                    continue;
                }
                let (residue, j) = self.strip(schreier, i + 1);
                if j < self.levels.len() || !residue.is_identity() {
                    return Some((residue, j));
                }
            }
        }
        None
    }
}
