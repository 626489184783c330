use fixedbitset::FixedBitSet;

use super::stats::block_pairs;
use super::{Design, DesignError, DesignStats};
use crate::perm::Point;

/// Lines through each pair of points, in the form needed by elementary moves.
///
/// For distinct `x, y` the blocks through `{x, y}` are `{x, y, a_i, b_i}`;
/// `completing(x, y)` lists the pairs `(a_i, b_i)` with `a_i < b_i`, in
/// block order. In a supersimple design these pairs are pairwise disjoint.
#[derive(Debug, Clone)]
pub struct CollinearityIndex {
    n: usize,
    lambda: usize,
    completing: Vec<Vec<(Point, Point)>>,
    // third[x*n + y]: points z ∉ {x, y} with {x, y, z} collinear.
    third: Vec<FixedBitSet>,
}

impl CollinearityIndex {
    /// Requires a supersimple 2-design.
    pub fn new(d: &Design) -> Result<CollinearityIndex, DesignError> {
        let stats = DesignStats::compute(d);
        if !stats.is_2_design {
            let (min, max) = stats.lambda_range;
            return Err(DesignError::NotA2Design { min, max });
        }
        if let Some((b1, b2)) = stats.supersimple_witness {
            return Err(DesignError::NotSupersimple(b1, b2));
        }
        Ok(Self::build(d, stats.lambda.unwrap_or(0)))
    }

    fn build(d: &Design, lambda: usize) -> CollinearityIndex {
        let n = d.n();
        let mut completing = vec![Vec::with_capacity(lambda); n * n];
        let mut third = vec![FixedBitSet::with_capacity(n); n * n];
        for b in d.blocks() {
            for (x, y) in block_pairs(b) {
                let mut rest = b.iter().copied().filter(|&z| z != x && z != y);
                let (a, c) = (rest.next().unwrap(), rest.next().unwrap());
                for key in [x * n + y, y * n + x] {
                    completing[key].push((a, c));
                    third[key].insert(a);
                    third[key].insert(c);
                }
            }
        }
        CollinearityIndex {
            n,
            lambda,
            completing,
            third,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    /// The pairs `{a_i, b_i}` completing `{x, y}` to a block.
    pub fn completing(&self, x: Point, y: Point) -> &[(Point, Point)] {
        &self.completing[x * self.n + y]
    }

    /// `z ∈ overline(x, y)` for distinct `x, y`.
    pub fn in_overline(&self, x: Point, y: Point, z: Point) -> bool {
        z == x || z == y || self.third[x * self.n + y].contains(z)
    }

    /// `overline(x, y)`: the points on some block through `x` and `y`.
    pub fn overline(&self, x: Point, y: Point) -> Vec<Point> {
        let mut out: Vec<Point> = self.third[x * self.n + y].ones().collect();
        out.push(x);
        out.push(y);
        out.sort_unstable();
        out
    }

    /// Bitset of the points `z ∉ {x, y}` collinear with `x` and `y`.
    pub fn collinear_with(&self, x: Point, y: Point) -> &FixedBitSet {
        &self.third[x * self.n + y]
    }

    /// Whether the three (distinct) points lie on a common block.
    pub fn is_collinear(&self, a: Point, b: Point, c: Point) -> bool {
        self.third[a * self.n + b].contains(c)
    }

    /// The set C of collinear triples, each sorted, in lexicographic order.
    pub fn collinear_triples(&self) -> Vec<[Point; 3]> {
        let n = self.n;
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                out.extend(self.third[a * n + b].ones().filter(|&c| c > b).map(|c| [a, b, c]));
            }
        }
        out
    }
}
