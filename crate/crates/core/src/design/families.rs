//! Constructors for the Boolean, symplectic and orthogonal families and the
//! projective plane of order 3.
//!
//! Vector points are numbered by the integer value of their bit-word, in
//! ascending order, so the labelling is reproducible.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Design, DesignError, FormSpace};
use crate::perm::Point;

/// Type of a quadratic form, `ε' = ±`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

impl FromStr for Sign {
    type Err = DesignError;

    fn from_str(s: &str) -> Result<Sign, DesignError> {
        match s {
            "+" | "plus" => Ok(Sign::Plus),
            "-" | "minus" => Ok(Sign::Minus),
            _ => Err(DesignError::InvalidParameter(format!("sign must be + or -, got {s:?}"))),
        }
    }
}

fn check_m(m: u32, max: u32) -> Result<(), DesignError> {
    if m < 2 {
        return Err(DesignError::InvalidParameter(format!("m must be at least 2, got {m}")));
    }
    if m > max {
        return Err(DesignError::InvalidParameter(format!(
            "m = {m} exceeds the supported maximum {max}"
        )));
    }
    Ok(())
}

/// All 4-subsets `{a, b, c, a^b^c}` of `points` (a sorted list of words)
/// that `accept` keeps, relabelled by position in `points`.
fn zero_sum_blocks(points: &[u32], accept: impl Fn([u32; 4]) -> bool) -> Vec<[Point; 4]> {
    let max = points.iter().copied().max().unwrap_or(0) as usize;
    let mut index = vec![usize::MAX; max + 1];
    for (i, &v) in points.iter().enumerate() {
        index[v as usize] = i;
    }
    let mut blocks = Vec::new();
    for (i, &a) in points.iter().enumerate() {
        for (j, &b) in points.iter().enumerate().skip(i + 1) {
            for (k, &c) in points.iter().enumerate().skip(j + 1) {
                let d = a ^ b ^ c;
                if d <= c || d as usize > max {
                    continue;
                }
                let l = index[d as usize];
                if l != usize::MAX && accept([a, b, c, d]) {
                    blocks.push([i, j, k, l]);
                }
            }
        }
    }
    blocks
}

/// Boolean quadruple system on `F₂^m`: the zero-sum 4-subsets.
pub fn boolean_design(m: u32) -> Result<Design, DesignError> {
    check_m(m, 8)?;
    let points: Vec<u32> = (0..1u32 << m).collect();
    let blocks = zero_sum_blocks(&points, |_| true);
    Design::new(format!("boolean(m={m})"), points.len(), blocks)
}

/// The affine-symplectic family on `F₂^{2m}`: zero-sum 4-subsets whose
/// `θ`-values also sum to zero.
pub fn symplectic_design(m: u32) -> Result<Design, DesignError> {
    check_m(m, 4)?;
    let space = FormSpace::new(m)?;
    let points: Vec<u32> = (0..space.size() as u32).collect();
    let blocks = zero_sum_blocks(&points, |b| b.iter().map(|&v| space.theta(v)).sum::<u32>() % 2 == 0);
    Design::new(format!("symplectic(m={m})"), points.len(), blocks)
}

/// The orthogonal family: zero-sum 4-subsets of the singular vectors of a
/// non-degenerate quadratic form of type `sign` on `F₂^{2m}`.
pub fn orthogonal_design(m: u32, sign: Sign) -> Result<Design, DesignError> {
    check_m(m, 5)?;
    if m == 2 && sign == Sign::Minus {
        return Err(DesignError::Degenerate(
            "m = 2 with sign - has 6 points and no blocks; not a 2-design".into(),
        ));
    }
    let space = FormSpace::new(m)?;
    let points = space.singular_vectors(sign);
    if points.len() != space.expected_singular_count(sign) {
        return Err(DesignError::Degenerate(format!(
            "quadratic form of type {sign} has {} singular vectors, expected {}",
            points.len(),
            space.expected_singular_count(sign)
        )));
    }
    let blocks = zero_sum_blocks(&points, |_| true);
    Design::new(format!("orthogonal(m={m},sign={sign})"), points.len(), blocks)
}

/// Points and lines of PG(2,3) as a 2-(13,4,1) design.
///
/// Points are the nonzero vectors of `F₃³` whose first nonzero coordinate is
/// 1, numbered in lexicographic order; lines are their orthogonal
/// complements.
pub fn projective_plane_3() -> Design {
    let mut points = Vec::new();
    for a in 0..3u32 {
        for b in 0..3u32 {
            for c in 0..3u32 {
                let v = [a, b, c];
                if v.iter().find(|&&x| x != 0) == Some(&1) {
                    points.push(v);
                }
            }
        }
    }
    let blocks = points
        .iter()
        .map(|l| {
            let on: Vec<Point> = (0..points.len())
                .filter(|&i| points[i].iter().zip(l).map(|(x, y)| x * y).sum::<u32>() % 3 == 0)
                .collect();
            [on[0], on[1], on[2], on[3]]
        })
        .collect();
    Design::new("pg(2,3)", points.len(), blocks).expect("PG(2,3) is a valid design")
}

/// The development of base blocks under `x ↦ x + 1 (mod n)`.
pub fn cyclic_development(name: &str, n: usize, bases: &[[Point; 4]]) -> Result<Design, DesignError> {
    let mut blocks = Vec::new();
    for base in bases {
        for shift in 0..n {
            let mut b = base.map(|x| (x + shift) % n);
            b.sort_unstable();
            blocks.push(b);
        }
    }
    blocks.sort_unstable();
    blocks.dedup();
    Design::new(name, n, blocks)
}
