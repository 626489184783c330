//! Orbits, transitivity and primitivity of a group given by generators.

use serde::Serialize;
use thiserror::Error;

use super::chain::StabChain;
use crate::perm::{Perm, Point};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("group is not transitive ({orbits} orbits)")]
    Intransitive { orbits: usize },
}

/// Orbits of `⟨gens⟩` on `0..n`, each sorted, ordered by smallest point.
pub fn orbits(gens: &[Perm], n: usize) -> Vec<Vec<Point>> {
    let mut uf = UnionFind::new(n);
    for g in gens {
        for x in 0..n {
            uf.union(x, g.image(x));
        }
    }
    uf.classes()
}

pub fn is_transitive(gens: &[Perm], n: usize) -> bool {
    n <= 1 || orbits(gens, n).len() == 1
}

/// Largest `k ≤ n` such that the group is `k`-transitive, read off a chain
/// whose base starts `0, 1, …`: level `i` must have an orbit of `n − i`.
pub fn transitivity_degree(gens: &[Perm], n: usize) -> usize {
    if !is_transitive(gens, n) {
        return 0;
    }
    let prefix: Vec<Point> = (0..n).collect();
    let chain = StabChain::with_base_prefix(gens, n, &prefix);
    (0..n)
        .take_while(|&i| i < chain.depth() && chain.orbit(i).len() == n - i)
        .count()
}

pub fn is_2_transitive(gens: &[Perm], n: usize) -> bool {
    n >= 2 && transitivity_degree(gens, n) >= 2
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Primitivity {
    pub primitive: bool,
    /// A nontrivial block of imprimitivity, when one exists.
    pub block: Option<Vec<Point>>,
}

/// Smallest block containing `{alpha, beta}`, by merging images of every
/// identified pair until the partition is `gens`-invariant.
pub fn minimal_block(gens: &[Perm], n: usize, alpha: Point, beta: Point) -> Vec<Point> {
    let mut uf = UnionFind::new(n);
    let mut queue = vec![(alpha, beta)];
    uf.union(alpha, beta);
    while let Some((a, b)) = queue.pop() {
        for g in gens {
            let (x, y) = (g.image(a), g.image(b));
            if uf.union(x, y) {
                queue.push((x, y));
            }
        }
    }
    let root = uf.find(alpha);
    (0..n).filter(|&x| uf.find(x) == root).collect()
}

pub fn is_primitive(gens: &[Perm], n: usize) -> Result<Primitivity, ActionError> {
    let orbs = orbits(gens, n);
    if orbs.len() > 1 {
        return Err(ActionError::Intransitive { orbits: orbs.len() });
    }
    for beta in 1..n {
        let block = minimal_block(gens, n, 0, beta);
        if block.len() < n {
            return Ok(Primitivity {
                primitive: false,
                block: Some(block),
            });
        }
    }
    Ok(Primitivity {
        primitive: true,
        block: None,
    })
}

/// Transitive, with the stabilizer of point 0 primitive on the other points.
pub fn is_2_primitive(gens: &[Perm], n: usize) -> bool {
    if n < 2 || !is_transitive(gens, n) {
        return false;
    }
    let chain = StabChain::with_base_prefix(gens, n, &[0]);
    let rest: Vec<Point> = (1..n).collect();
    let stab: Vec<Perm> = chain
        .point_stabilizer_generators(0)
        .expect("0 is the first base point")
        .iter()
        .map(|g| g.restrict(&rest))
        .collect();
    matches!(is_primitive(&stab, n - 1), Ok(Primitivity { primitive: true, .. }))
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `true` if two classes were merged.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    fn classes(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for x in 0..n {
            let r = self.find(x);
            by_root[r].push(x);
        }
        by_root.into_iter().filter(|c| !c.is_empty()).collect()
    }
}
