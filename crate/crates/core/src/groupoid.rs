//! The hole-stabilizer `π∞` and the Conway groupoid `L∞` of a design.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::design::{Block, Design};
use crate::group::{GroupSet, StabChain};
use crate::moves::MoveTable;
use crate::perm::{compose_into, Perm, Point};
use crate::perm_set::PermSet;

/// Generators `[∞, x, y, ∞]` of `π∞` for distinct `x, y ≠ ∞`, identities
/// and repeats dropped, in `(x, y)` order.
pub fn hole_stabilizer_generators(t: &MoveTable, base: Point) -> Vec<Perm> {
    let n = t.n();
    let mut seen = HashSet::new();
    let mut gens = Vec::new();
    for x in (0..n).filter(|&x| x != base) {
        for y in (0..n).filter(|&y| y != base && y != x) {
            let g = t.move_sequence(&[base, x, y, base]);
            if !g.is_identity() && seen.insert(g.images().to_vec()) {
                gens.push(g);
            }
        }
    }
    gens
}

/// `π∞`, enumerated when its order is at most `cap`.
pub fn hole_stabilizer(t: &MoveTable, base: Point, cap: usize) -> GroupSet {
    GroupSet::generate(hole_stabilizer_generators(t, base), t.n(), cap)
}

/// `L∞ = ⋃_x π∞·[∞, x]`.
#[derive(Debug)]
pub struct GroupoidSet {
    base: Point,
    pi: GroupSet,
    coset_reps: Vec<Perm>,
    elements: Option<PermSet>,
    coset_check: CosetCheck,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CosetCheck {
    /// Whether the cosets were built element by element.
    pub enumerated: bool,
    /// Every element of `π∞·[∞, x]` sends `∞` to `x`.
    pub endpoint_law: bool,
    /// The union has exactly `n·|π∞|` elements.
    pub disjoint: bool,
}

impl GroupoidSet {
    /// Builds `L∞` from `π∞`; without an enumerated `π∞`, or when
    /// `n·|π∞| > cap`, only the size is known.
    pub fn new(t: &MoveTable, base: Point, pi: GroupSet, cap: usize) -> GroupoidSet {
        let n = t.n();
        let coset_reps: Vec<Perm> = (0..n).map(|x| t.get(base, x).clone()).collect();
        let size = pi.order() * BigUint::from(n);
        let enumerable = pi.is_enumerated() && size.to_usize().is_some_and(|s| s <= cap);
        let (elements, coset_check) = if enumerable {
            let (set, endpoint_law) = coset_union(pi.elements().expect("enumerated"), &coset_reps, base);
            let disjoint = BigUint::from(set.len()) == size;
            (
                Some(set),
                CosetCheck {
                    enumerated: true,
                    endpoint_law,
                    disjoint,
                },
            )
        } else {
            // Elements of π∞ fix ∞, so π∞·[∞, x] sends ∞ to x and the
            // cosets are disjoint whatever the elements are.
            let endpoint_law = coset_reps.iter().enumerate().all(|(x, r)| r.image(base) == x);
            (
                None,
                CosetCheck {
                    enumerated: false,
                    endpoint_law,
                    disjoint: endpoint_law,
                },
            )
        };
        GroupoidSet {
            base,
            pi,
            coset_reps,
            elements,
            coset_check,
        }
    }

    pub fn base(&self) -> Point {
        self.base
    }

    pub fn pi(&self) -> &GroupSet {
        &self.pi
    }

    /// `n·|π∞|`.
    pub fn size(&self) -> BigUint {
        self.pi.order() * BigUint::from(self.coset_reps.len())
    }

    pub fn elements(&self) -> Option<&PermSet> {
        self.elements.as_ref()
    }

    pub fn coset_check(&self) -> &CosetCheck {
        &self.coset_check
    }

    /// `g ∈ L∞` iff `g·[∞, ∞^g] ∈ π∞`.
    pub fn contains(&self, g: &Perm) -> bool {
        if let Some(set) = &self.elements {
            return set.contains_perm(g);
        }
        g.degree() == self.coset_reps.len() && self.pi.contains(&g.then(&self.coset_reps[g.image(self.base)]))
    }
}

fn coset_union(pi: &PermSet, reps: &[Perm], base: Point) -> (PermSet, bool) {
    let n = reps.len();
    let mut set = PermSet::with_capacity(n, pi.len() * n);
    let mut endpoint_law = true;
    let mut buf = vec![0u16; pi.len() * n];
    for (x, r) in reps.iter().enumerate() {
        buf.par_chunks_mut(n).enumerate().for_each(|(i, out)| {
            compose_into(pi.get(i), r.images(), out);
        });
        for images in buf.chunks(n) {
            endpoint_law &= images[base] as usize == x;
            set.insert(images);
        }
    }
    (set, endpoint_law)
}

/// `L∞` by a breadth-first walk over move sequences from `∞`, expanding
/// `g` to `g·[∞^g, y]`. Gives up (returns `None`) past `limit` elements.
pub fn direct_walk(t: &MoveTable, base: Point, limit: usize) -> Option<PermSet> {
    let n = t.n();
    let mut set = PermSet::new(n);
    set.insert_perm(&Perm::identity(n));
    let mut out = vec![0u16; n];
    let mut k = 0;
    while k < set.len() {
        let g = set.perm(k);
        let end = g.image(base);
        for y in (0..n).filter(|&y| y != end) {
            compose_into(g.images(), t.get(end, y).images(), &mut out);
            if set.insert(&out) && set.len() > limit {
                return None;
            }
        }
        k += 1;
    }
    Some(set)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupEvidence {
    /// `|⟨E⟩|`, from a stabilizer chain.
    #[serde(serialize_with = "crate::big::ser")]
    pub group_order: BigUint,
    #[serde(serialize_with = "crate::big::ser")]
    pub l_size: BigUint,
    pub is_group: bool,
    pub transitive: bool,
    /// `|stab_G(∞)| = |π∞|` and its generators lie in `π∞` (groups only).
    pub stabilizer_is_pi: Option<bool>,
    /// Random products of elements of `L∞` that stayed in `L∞` (groups only).
    pub spot_check: Option<SpotCheck>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpotCheck {
    pub pairs: usize,
    pub closed: bool,
}

pub const SPOT_CHECK_PAIRS: usize = 10_000;

/// Compares `|⟨E⟩|` with `|L∞| = n·|π∞|`.
pub fn is_group(t: &MoveTable, l: &GroupoidSet) -> GroupEvidence {
    let n = t.n();
    let base = l.base();
    let chain = StabChain::with_base_prefix(t.distinct(), n, &[base]);
    let group_order = chain.order();
    let l_size = l.size();
    let is_group = group_order == l_size;
    let transitive = n <= 1 || chain.orbit(0).len() == n;
    let (stabilizer_is_pi, spot_check) = if is_group {
        let orbit = BigUint::from(chain.orbit(0).len());
        let stab_gens = chain.point_stabilizer_generators(base).expect("base is first");
        let same = &group_order / orbit == l.pi().order() && stab_gens.iter().all(|g| l.pi().contains(g));
        (Some(same), Some(spot_check(t, l, SPOT_CHECK_PAIRS)))
    } else {
        (None, None)
    };
    GroupEvidence {
        group_order,
        l_size,
        is_group,
        transitive,
        stabilizer_is_pi,
        spot_check,
    }
}

/// Multiplies random pairs of elements of `L∞` and tests membership.
/// Elements are random move sequences from `∞`, so the check does not rely
/// on the order comparison.
pub fn spot_check(t: &MoveTable, l: &GroupoidSet, pairs: usize) -> SpotCheck {
    let n = t.n();
    let base = l.base();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let random_element = |rng: &mut ChaCha8Rng| {
        let len = rng.gen_range(1..=2 * n);
        let mut g = Perm::identity(n);
        let mut at = base;
        for _ in 0..len {
            let y = rng.gen_range(0..n);
            g = g.then(t.get(at, y));
            at = y;
        }
        g
    };
    let samples: Vec<(Perm, Perm)> = (0..pairs)
        .map(|_| (random_element(&mut rng), random_element(&mut rng)))
        .collect();
    let closed = samples.par_iter().all(|(a, b)| l.contains(&a.then(b)));
    SpotCheck { pairs, closed }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AutomorphismCheck {
    pub is_automorphism_group: bool,
    /// A move and a block it sends outside the design.
    pub witness: Option<(String, Block)>,
}

/// Whether every elementary move preserves the blocks; enough for `⟨E⟩`.
pub fn is_automorphism_group(d: &Design, t: &MoveTable) -> AutomorphismCheck {
    let witness = t
        .distinct()
        .iter()
        .find_map(|g| d.automorphism_witness(g).map(|b| (g.to_string(), b)));
    AutomorphismCheck {
        is_automorphism_group: witness.is_none(),
        witness,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BaseSweep {
    /// `|π_x|` for every point `x`.
    #[serde(serialize_with = "crate::big::ser_vec")]
    pub orders: Vec<BigUint>,
    pub agree: bool,
}

/// `|π_x|` by stabilizer chain for every base point `x`.
pub fn all_bases(t: &MoveTable) -> BaseSweep {
    let orders: Vec<BigUint> = (0..t.n())
        .into_par_iter()
        .map(|x| StabChain::new(&hole_stabilizer_generators(t, x), t.n()).order())
        .collect();
    let agree = orders.windows(2).all(|w| w[0] == w[1]);
    BaseSweep { orders, agree }
}
