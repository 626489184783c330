use std::collections::HashMap;

use serde::Serialize;

use super::{Block, Design, DesignError};
use crate::perm::Point;

/// Pair coverage, supersimplicity and the symmetric-difference condition (△).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DesignStats {
    pub n: usize,
    pub block_count: usize,
    pub is_2_design: bool,
    /// Constant pair coverage; `None` unless `is_2_design`.
    pub lambda: Option<usize>,
    /// Smallest and largest pair coverage.
    pub lambda_range: (usize, usize),
    pub is_supersimple: bool,
    /// Two blocks sharing three points, when not supersimple.
    pub supersimple_witness: Option<(Block, Block)>,
    pub satisfies_triangle_delta: bool,
    /// Two blocks meeting in exactly two points whose symmetric difference
    /// is not a block.
    pub triangle_delta_witness: Option<(Block, Block)>,
}

impl DesignStats {
    pub fn compute(d: &Design) -> DesignStats {
        let n = d.n();
        let blocks = d.blocks();

        let mut through_pair: Vec<Vec<u32>> = vec![Vec::new(); n * n];
        for (i, b) in blocks.iter().enumerate() {
            for (x, y) in block_pairs(b) {
                through_pair[x * n + y].push(i as u32);
            }
        }
        let (mut min, mut max) = (usize::MAX, 0);
        for x in 0..n {
            for y in x + 1..n {
                let c = through_pair[x * n + y].len();
                min = min.min(c);
                max = max.max(c);
            }
        }
        if n < 2 {
            min = 0;
        }
        let is_2_design = !blocks.is_empty() && min == max && min > 0;

        let mut first_with_triple: HashMap<[Point; 3], usize> = HashMap::new();
        let mut supersimple_witness = None;
        'outer: for (i, b) in blocks.iter().enumerate() {
            for skip in 0..4 {
                let t = triple_without(b, skip);
                if let Some(&j) = first_with_triple.get(&t) {
                    supersimple_witness = Some((blocks[j], *b));
                    break 'outer;
                }
                first_with_triple.insert(t, i);
            }
        }

        let mut triangle_delta_witness = None;
        'pairs: for x in 0..n {
            for y in x + 1..n {
                let list = &through_pair[x * n + y];
                for (k, &i) in list.iter().enumerate() {
                    for &j in &list[k + 1..] {
                        let (b1, b2) = (&blocks[i as usize], &blocks[j as usize]);
                        if let Some(sd) = symmetric_difference(b1, b2) {
                            if !d.has_block(sd) {
                                triangle_delta_witness = Some((*b1, *b2));
                                break 'pairs;
                            }
                        }
                    }
                }
            }
        }

        DesignStats {
            n,
            block_count: blocks.len(),
            is_2_design,
            lambda: is_2_design.then_some(min),
            lambda_range: (min, max),
            is_supersimple: supersimple_witness.is_none(),
            supersimple_witness,
            satisfies_triangle_delta: triangle_delta_witness.is_none(),
            triangle_delta_witness,
        }
    }

    /// Supersimple 2-design.
    pub fn is_supersimple_2_design(&self) -> bool {
        self.is_2_design && self.is_supersimple
    }
}

/// Computes the statistics and insists on a non-empty 2-design.
pub fn validate(d: &Design) -> Result<DesignStats, DesignError> {
    if d.blocks().is_empty() {
        return Err(DesignError::Degenerate("empty block set".into()));
    }
    let stats = DesignStats::compute(d);
    if !stats.is_2_design {
        let (min, max) = stats.lambda_range;
        return Err(DesignError::NotA2Design { min, max });
    }
    Ok(stats)
}

pub(crate) fn block_pairs(b: &Block) -> impl Iterator<Item = (Point, Point)> + '_ {
    (0..4).flat_map(move |i| (i + 1..4).map(move |j| (b[i], b[j])))
}

fn triple_without(b: &Block, skip: usize) -> [Point; 3] {
    let mut t = [0; 3];
    let mut k = 0;
    for (i, &x) in b.iter().enumerate() {
        if i != skip {
            t[k] = x;
            k += 1;
        }
    }
    t
}

/// `B₁ △ B₂` when `|B₁ ∩ B₂| = 2`.
fn symmetric_difference(b1: &Block, b2: &Block) -> Option<Block> {
    let common = b1.iter().filter(|x| b2.contains(x)).count();
    if common != 2 {
        return None;
    }
    let mut out = [0; 4];
    let mut k = 0;
    for &x in b1.iter().chain(b2.iter()) {
        if !(b1.contains(&x) && b2.contains(&x)) {
            out[k] = x;
            k += 1;
        }
    }
    out.sort_unstable();
    Some(out)
}
