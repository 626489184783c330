//! Deterministic Schreier–Sims with explicit transversals.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::One;

use crate::perm::{Perm, Point};

#[derive(Debug, Clone)]
struct Level {
    base_point: Point,
    /// Indices into `StabChain::gens` of the strong generators fixing all
    /// earlier base points.
    gen_ids: Vec<usize>,
    orbit: Vec<Point>,
    /// `reps[x]` maps the base point to `x`; `inv[x]` is its inverse.
    reps: Vec<Option<Perm>>,
    inv: Vec<Option<Perm>>,
    /// Schreier pairs (orbit point, generator) already known to sift.
    tested: HashSet<(u32, u32)>,
}

impl Level {
    fn new(base_point: Point, degree: usize) -> Level {
        let mut reps = vec![None; degree];
        let mut inv = vec![None; degree];
        reps[base_point] = Some(Perm::identity(degree));
        inv[base_point] = Some(Perm::identity(degree));
        Level {
            base_point,
            gen_ids: Vec::new(),
            orbit: vec![base_point],
            reps,
            inv,
            tested: HashSet::new(),
        }
    }
}

/// Base and strong generating set of a permutation group.
#[derive(Debug, Clone)]
pub struct StabChain {
    degree: usize,
    gens: Vec<Perm>,
    levels: Vec<Level>,
}

impl StabChain {
    /// Empty chain (the trivial group) of the given degree.
    pub fn trivial(degree: usize) -> StabChain {
        StabChain {
            degree,
            gens: Vec::new(),
            levels: Vec::new(),
        }
    }

    pub fn new(gens: &[Perm], degree: usize) -> StabChain {
        Self::with_base_prefix(gens, degree, &[])
    }

    /// Chain whose base starts with `prefix`; further base points are the
    /// smallest point moved by the element that needs them.
    pub fn with_base_prefix(gens: &[Perm], degree: usize, prefix: &[Point]) -> StabChain {
        let mut chain = StabChain::trivial(degree);
        for &b in prefix {
            assert!(b < degree, "base point out of range");
            if chain.levels.iter().all(|l| l.base_point != b) {
                chain.levels.push(Level::new(b, degree));
            }
        }
        for g in gens {
            chain.insert_generator(g);
        }
        chain
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<Point> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn strong_generators(&self) -> &[Perm] {
        &self.gens
    }

    /// Fundamental orbit of the `i`-th base point.
    pub fn orbit(&self, i: usize) -> &[Point] {
        &self.levels[i].orbit
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// Strong generators of the stabilizer of the first `i` base points.
    pub fn level_generators(&self, i: usize) -> Vec<Perm> {
        if i < self.levels.len() {
            self.levels[i].gen_ids.iter().map(|&j| self.gens[j].clone()).collect()
        } else {
            self.gens
                .iter()
                .filter(|g| self.levels.iter().all(|l| g.image(l.base_point) == l.base_point))
                .cloned()
                .collect()
        }
    }

    /// Product of the fundamental orbit lengths.
    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn contains(&self, g: &Perm) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (residue, depth) = self.sift(g, 0);
        depth == self.levels.len() && residue.is_identity()
    }

    /// Sifts `h` through levels `from..`; returns the residue and the
    /// level at which sifting stopped (`depth()` if it went all the way).
    fn sift(&self, h: &Perm, from: usize) -> (Perm, usize) {
        let mut h = h.clone();
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let beta = h.image(level.base_point);
            match &level.inv[beta] {
                Some(inv) => h = h.then(inv),
                None => return (h, i),
            }
        }
        (h, self.levels.len())
    }

    /// Adds `g` to the group; returns `false` when it was already a member.
    pub fn insert_generator(&mut self, g: &Perm) -> bool {
        assert_eq!(g.degree(), self.degree, "degree mismatch");
        let (residue, depth) = self.sift(g, 0);
        if depth == self.levels.len() && residue.is_identity() {
            return false;
        }
        let j = self.add_strong_generator(residue, depth);
        self.complete(j);
        true
    }

    /// Records `y`, which fixes the first `j` base points, as a strong
    /// generator of levels `0..=j`, opening a new level if needed.
    fn add_strong_generator(&mut self, y: Perm, j: usize) -> usize {
        if j == self.levels.len() {
            let b = (0..self.degree)
                .find(|&x| y.image(x) != x)
                .expect("non-identity residue moves a point");
            self.levels.push(Level::new(b, self.degree));
        }
        let id = self.gens.len();
        self.gens.push(y);
        for l in 0..=j {
            self.levels[l].gen_ids.push(id);
            self.extend_orbit(l);
        }
        j
    }

    fn extend_orbit(&mut self, l: usize) {
        let level = &mut self.levels[l];
        let mut k = 0;
        while k < level.orbit.len() {
            let delta = level.orbit[k];
            for &s in &level.gen_ids {
                let gamma = self.gens[s].image(delta);
                if level.reps[gamma].is_none() {
                    let u = level.reps[delta]
                        .as_ref()
                        .expect("orbit point has a rep")
                        .then(&self.gens[s]);
                    level.inv[gamma] = Some(u.inverse());
                    level.reps[gamma] = Some(u);
                    level.orbit.push(gamma);
                }
            }
            k += 1;
        }
    }

    /// Tests Schreier generators from level `i` upward to the top, adding
    /// residues that fail to sift, until every level is complete.
    fn complete(&mut self, mut i: usize) {
        loop {
            match self.failing_schreier_generator(i) {
                Some((y, j)) => i = self.add_strong_generator(y, j),
                None if i == 0 => break,
                None => i -= 1,
            }
        }
    }

    fn failing_schreier_generator(&mut self, i: usize) -> Option<(Perm, usize)> {
        let mut k = 0;
        while k < self.levels[i].orbit.len() {
            let beta = self.levels[i].orbit[k];
            let n_gens = self.levels[i].gen_ids.len();
            for t in 0..n_gens {
                let s = self.levels[i].gen_ids[t];
                if !self.levels[i].tested.insert((beta as u32, s as u32)) {
                    continue;
                }
                let level = &self.levels[i];
                let image = self.gens[s].image(beta);
                let h = level.reps[beta]
                    .as_ref()
                    .expect("orbit point has a rep")
                    .then(&self.gens[s])
                    .then(level.inv[image].as_ref().expect("orbit is closed"));
                if h.is_identity() {
                    continue;
                }
                let (residue, depth) = self.sift(&h, i + 1);
                if depth < self.levels.len() || !residue.is_identity() {
                    return Some((residue, depth));
                }
            }
            k += 1;
        }
        None
    }

    /// Generators of the stabilizer of the first base point, when it is `point`.
    pub fn point_stabilizer_generators(&self, point: Point) -> Option<Vec<Perm>> {
        match self.levels.first() {
            Some(l) if l.base_point == point => Some(self.level_generators(1)),
            _ => None,
        }
    }
}
