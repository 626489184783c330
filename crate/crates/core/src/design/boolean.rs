//! Recovering `F₂^m` from a 3-(n,4,1) design with (△).
//!
//! With a base point `∞`, set `a*a = ∞`, `a*∞ = a`, and for distinct
//! `a, b ≠ ∞` let `a*b` be the fourth point of the block through `∞, a, b`.
//! When the design is Boolean this is an elementary abelian 2-group with
//! identity `∞`, and blocks are exactly the 4-sets with product `∞`.

use serde::Serialize;

use super::{validate, Design, DesignError};
use crate::perm::Point;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BooleanReconstruction {
    pub base: Point,
    pub m: u32,
    /// `table[a * n + b] = a*b`.
    pub table: Vec<Point>,
    /// Coordinates of each point in `F₂^m` (as an `m`-bit word); `∞ ↦ 0`.
    pub coordinates: Vec<u32>,
    /// The points sent to the standard basis vectors.
    pub basis: Vec<Point>,
}

impl BooleanReconstruction {
    pub fn product(&self, a: Point, b: Point) -> Point {
        self.table[a * self.coordinates.len() + b]
    }
}

pub fn reconstruct_boolean(d: &Design, base: Point) -> Result<BooleanReconstruction, DesignError> {
    let n = d.n();
    if base >= n {
        return Err(DesignError::InvalidParameter(format!("base point {base} out of range")));
    }
    let stats = validate(d)?;
    let lambda = stats.lambda.expect("validated");
    if n != 2 * lambda + 2 {
        return Err(DesignError::Precondition(format!(
            "n = {n} but 2λ+2 = {}; reconstruction needs n = 2λ+2",
            2 * lambda + 2
        )));
    }
    if let Some((b1, b2)) = stats.supersimple_witness {
        return Err(DesignError::NotSupersimple(b1, b2));
    }

    let mut table = vec![usize::MAX; n * n];
    for a in 0..n {
        table[a * n + a] = base;
        table[a * n + base] = a;
        table[base * n + a] = a;
    }
    for b in d.blocks().iter().filter(|b| b.contains(&base)) {
        let rest: Vec<Point> = b.iter().copied().filter(|&x| x != base).collect();
        for (i, j, k) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
            let (x, y, z) = (rest[i], rest[j], rest[k]);
            table[x * n + y] = z;
            table[y * n + x] = z;
        }
    }
    if let Some(pos) = table.iter().position(|&c| c == usize::MAX) {
        return Err(DesignError::NotBoolean(format!(
            "no block through {base}, {}, {}",
            pos / n,
            pos % n
        )));
    }

    for a in 0..n {
        for b in 0..n {
            let ab = table[a * n + b];
            for c in 0..n {
                if table[ab * n + c] != table[a * n + table[b * n + c]] {
                    return Err(DesignError::NotBoolean(format!(
                        "(a*b)*c ≠ a*(b*c) for a={a}, b={b}, c={c}"
                    )));
                }
            }
        }
    }

    if !n.is_power_of_two() {
        return Err(DesignError::NotBoolean(format!("n = {n} is not a power of 2")));
    }
    let m = n.trailing_zeros();
    // Greedy basis: repeatedly adjoin the smallest point outside the span.
    let mut coordinates = vec![u32::MAX; n];
    coordinates[base] = 0;
    let mut span = vec![base];
    let mut basis = Vec::new();
    while span.len() < n {
        let g = (0..n)
            .find(|&x| coordinates[x] == u32::MAX)
            .expect("span is a proper subset");
        let bit = 1u32 << basis.len();
        basis.push(g);
        let shifted: Vec<Point> = span.iter().map(|&x| table[x * n + g]).collect();
        for (&x, &y) in span.iter().zip(&shifted) {
            if coordinates[y] != u32::MAX {
                return Err(DesignError::NotBoolean("span is not closed".into()));
            }
            coordinates[y] = coordinates[x] | bit;
        }
        span.extend(shifted);
    }
    debug_assert_eq!(basis.len() as u32, m);

    for (a, &ca) in coordinates.iter().enumerate() {
        for (b, &cb) in coordinates.iter().enumerate() {
            if coordinates[table[a * n + b]] != ca ^ cb {
                return Err(DesignError::NotBoolean("coordinates are not a homomorphism".into()));
            }
        }
    }
    if let Some(b) = d
        .blocks()
        .iter()
        .find(|b| b.iter().fold(0, |acc, &x| acc ^ coordinates[x]) != 0)
    {
        return Err(DesignError::NotBoolean(format!("block {b:?} does not sum to zero")));
    }
    // Distinct zero-sum blocks; equal counts makes them all of them.
    let zero_sum = n * (n - 1) * (n - 2) / 24;
    if d.blocks().len() != zero_sum {
        return Err(DesignError::NotBoolean(format!(
            "{} blocks but {zero_sum} zero-sum 4-subsets",
            d.blocks().len()
        )));
    }

    Ok(BooleanReconstruction {
        base,
        m,
        table,
        coordinates,
        basis,
    })
}
