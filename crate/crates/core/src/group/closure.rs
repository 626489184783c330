//! Explicit enumeration of a permutation group by breadth-first closure.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::chain::StabChain;
use crate::perm::{compose_into, Perm};
use crate::perm_set::PermSet;

/// Default bound on the number of enumerated elements.
pub const DEFAULT_CAP: usize = 4_000_000;

/// Elements taken off the frontier per parallel step.
const BATCH: usize = 8192;

/// A permutation group: its generators, a stabilizer chain and, when the
/// order is at most the cap, every element.
#[derive(Debug)]
pub struct GroupSet {
    degree: usize,
    generators: Vec<Perm>,
    chain: StabChain,
    elements: Option<PermSet>,
}

impl GroupSet {
    /// Builds the chain, then enumerates when `|G| ≤ cap`.
    pub fn generate(generators: Vec<Perm>, degree: usize, cap: usize) -> GroupSet {
        let chain = StabChain::new(&generators, degree);
        let order = chain.order();
        let elements = match order.to_usize() {
            Some(k) if k <= cap => Some(enumerate(&generators, degree, k)),
            _ => None,
        };
        GroupSet {
            degree,
            generators,
            chain,
            elements,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn chain(&self) -> &StabChain {
        &self.chain
    }

    pub fn order(&self) -> BigUint {
        self.chain.order()
    }

    pub fn is_enumerated(&self) -> bool {
        self.elements.is_some()
    }

    pub fn elements(&self) -> Option<&PermSet> {
        self.elements.as_ref()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        match &self.elements {
            Some(set) => set.contains_perm(p),
            None => self.chain.contains(p),
        }
    }
}

/// Generators that each enlarge the group generated by their predecessors.
pub fn reduce_generators(generators: &[Perm], degree: usize) -> Vec<Perm> {
    let mut chain = StabChain::trivial(degree);
    generators
        .iter()
        .filter(|g| chain.insert_generator(g))
        .cloned()
        .collect()
}

/// Closure of `generators` under right multiplication. `expected` is the
/// order from the chain, used for preallocation and checked at the end.
fn enumerate(generators: &[Perm], degree: usize, expected: usize) -> PermSet {
    let gens = reduce_generators(generators, degree);
    let mut set = PermSet::with_capacity(degree, expected);
    set.insert_perm(&Perm::identity(degree));
    let mut buf: Vec<u16> = Vec::new();
    let mut next = 0;
    if gens.is_empty() || degree == 0 {
        next = set.len();
    }
    while next < set.len() {
        let end = (next + BATCH).min(set.len());
        let per_elem = gens.len() * degree;
        buf.resize((end - next) * per_elem, 0);
        {
            let set = &set;
            buf.par_chunks_mut(per_elem).enumerate().for_each(|(k, out)| {
                let x = set.get(next + k);
                for (g, chunk) in gens.iter().zip(out.chunks_mut(degree)) {
                    compose_into(x, g.images(), chunk);
                }
            });
        }
        for images in buf.chunks(degree) {
            set.insert(images);
        }
        next = end;
    }
    assert_eq!(set.len(), expected, "closure size disagrees with stabilizer chain");
    for g in generators {
        assert!(set.contains_perm(g), "generator missing from closure");
    }
    set
}
