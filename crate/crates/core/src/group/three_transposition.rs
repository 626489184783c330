//! Checks that a set of involutions is a conjugacy class of 3-transpositions.

use std::collections::{HashMap, HashSet};

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use super::chain::StabChain;
use crate::perm::Perm;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThreeTranspositionReport {
    pub size: usize,
    pub involutions: bool,
    /// `⟨E⟩` has the expected order (always true with no expectation).
    pub generates: bool,
    /// `E` is closed under conjugation by its own elements.
    pub class_closed: bool,
    /// Conjugation by `E` is transitive on `E`.
    pub single_class: bool,
    /// Every product of two elements has order 1, 2 or 3.
    pub orders_ok: bool,
    /// Counts of product orders over unordered pairs of distinct elements.
    pub product_orders: Vec<(u128, usize)>,
    /// First pair (by index) whose product has order above 3.
    pub order_witness: Option<(String, String, u128)>,
}

impl ThreeTranspositionReport {
    /// `E` is a union of classes of involutions generating the group, with
    /// all products of order at most 3.
    pub fn is_3_transposition(&self) -> bool {
        self.involutions && self.generates && self.class_closed && self.orders_ok
    }

    /// As above, with `E` a single class.
    pub fn all_ok(&self) -> bool {
        self.involutions && self.generates && self.class_closed && self.single_class && self.orders_ok
    }
}

pub fn three_transposition_report(e: &[Perm], expected_order: Option<&BigUint>) -> ThreeTranspositionReport {
    let size = e.len();
    let involutions = e.iter().all(Perm::is_involution);
    let generates = match (expected_order, e.first()) {
        (None, _) => true,
        (Some(target), Some(first)) => StabChain::new(e, first.degree()).order() == *target,
        (Some(target), None) => *target == BigUint::from(1u32),
    };

    let index: HashMap<&[u16], usize> = e.iter().enumerate().map(|(i, t)| (t.images(), i)).collect();
    let class_closed = e
        .par_iter()
        .all(|t| e.iter().all(|g| index.contains_key(t.conjugate_by(g).images())));

    let single_class = match e.first() {
        None => true,
        Some(_) => {
            let mut seen = HashSet::from([0usize]);
            let mut stack = vec![0usize];
            while let Some(i) = stack.pop() {
                for g in e {
                    if let Some(&j) = index.get(e[i].conjugate_by(g).images()) {
                        if seen.insert(j) {
                            stack.push(j);
                        }
                    }
                }
            }
            seen.len() == size
        }
    };

    let orders: Vec<Vec<u128>> = (0..size)
        .into_par_iter()
        .map(|i| ((i + 1)..size).map(|j| e[i].then(&e[j]).order()).collect())
        .collect();
    let mut counts: HashMap<u128, usize> = HashMap::new();
    let mut order_witness = None;
    for (i, row) in orders.iter().enumerate() {
        for (k, &o) in row.iter().enumerate() {
            *counts.entry(o).or_default() += 1;
            if o > 3 && order_witness.is_none() {
                let j = i + 1 + k;
                order_witness = Some((e[i].to_string(), e[j].to_string(), o));
            }
        }
    }
    let mut product_orders: Vec<(u128, usize)> = counts.into_iter().collect();
    product_orders.sort_unstable();

    ThreeTranspositionReport {
        size,
        involutions,
        generates,
        class_closed,
        single_class,
        orders_ok: order_witness.is_none(),
        product_orders,
        order_witness,
    }
}
