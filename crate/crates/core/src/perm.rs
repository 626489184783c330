//! Permutations of a dense point set `0..n`.
//!
//! Permutations act on the right and products read left to right: the
//! image of `x` under `p * q` is `(x^p)^q`. Conjugation follows the same
//! convention, `p^g = g⁻¹ p g`, so that `[a,b]^g = [a^g, b^g]` reads the
//! way move identities are usually written.

use std::fmt;
use std::ops::Mul;

use thiserror::Error;

/// A point of the ambient set; always `< degree`.
pub type Point = usize;

/// Largest supported degree. Images are stored as `u16`.
pub const MAX_DEGREE: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("image list is not a bijection of 0..{0}")]
    NotBijection(usize),
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("degree {0} exceeds the supported maximum")]
    DegreeTooLarge(usize),
}

/// A bijection of `0..n`, stored as its image sequence.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Box<[u16]>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        assert!(degree <= MAX_DEGREE, "degree {degree} too large");
        Perm {
            images: (0..degree).map(|x| x as u16).collect(),
        }
    }

    pub fn from_images(images: &[usize]) -> Result<Perm, PermError> {
        let n = images.len();
        if n > MAX_DEGREE {
            return Err(PermError::DegreeTooLarge(n));
        }
        let mut seen = vec![false; n];
        for &y in images {
            if y >= n || seen[y] {
                return Err(PermError::NotBijection(n));
            }
            seen[y] = true;
        }
        Ok(Perm {
            images: images.iter().map(|&y| y as u16).collect(),
        })
    }

    /// Wraps a raw image slice that is already known to be a bijection.
    pub(crate) fn from_raw(images: &[u16]) -> Perm {
        debug_assert!(is_bijection(images));
        Perm { images: images.into() }
    }

    pub(crate) fn from_raw_vec(images: Vec<u16>) -> Perm {
        debug_assert!(is_bijection(&images));
        Perm {
            images: images.into_boxed_slice(),
        }
    }

    /// Builds a permutation from disjoint cycles, e.g. `&[&[0, 1], &[2, 3]]`.
    pub fn from_cycles(degree: usize, cycles: &[&[Point]]) -> Result<Perm, PermError> {
        if degree > MAX_DEGREE {
            return Err(PermError::DegreeTooLarge(degree));
        }
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= degree {
                    return Err(PermError::PointOutOfRange { point: x, degree });
                }
                if touched[x] {
                    return Err(PermError::NotBijection(degree));
                }
                touched[x] = true;
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Perm::from_images(&images)
    }

    pub fn transposition(degree: usize, a: Point, b: Point) -> Result<Perm, PermError> {
        if a == b {
            if a >= degree {
                return Err(PermError::PointOutOfRange { point: a, degree });
            }
            return Ok(Perm::identity(degree));
        }
        Perm::from_cycles(degree, &[&[a, b]])
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// `x^p`.
    #[inline]
    pub fn image(&self, x: Point) -> Point {
        self.images[x] as Point
    }

    #[inline]
    pub fn images(&self) -> &[u16] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x == y as usize)
    }

    pub fn is_involution(&self) -> bool {
        !self.is_identity()
            && self
                .images
                .iter()
                .enumerate()
                .all(|(x, &y)| self.images[y as usize] as usize == x)
    }

    /// The product `self * other`: first `self`, then `other`.
    pub fn compose(&self, other: &Perm) -> Result<Perm, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.then(other))
    }

    /// Unchecked product; panics on degree mismatch.
    pub(crate) fn then(&self, other: &Perm) -> Perm {
        let mut out = vec![0u16; self.degree()];
        compose_into(&self.images, &other.images, &mut out);
        Perm::from_raw_vec(out)
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u16; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y as usize] = x as u16;
        }
        Perm::from_raw_vec(inv)
    }

    /// `g⁻¹ · self · g`.
    pub fn conjugate(&self, g: &Perm) -> Result<Perm, PermError> {
        if self.degree() != g.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), g.degree()));
        }
        Ok(self.conjugate_by(g))
    }

    /// Conjugation without the degree check. `p^g` maps `x^g` to `(x^p)^g`.
    pub(crate) fn conjugate_by(&self, g: &Perm) -> Perm {
        let mut out = vec![0u16; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            out[g.images[x] as usize] = g.images[y as usize];
        }
        Perm::from_raw_vec(out)
    }

    pub fn pow(&self, mut k: u64) -> Perm {
        let mut base = self.clone();
        let mut acc = Perm::identity(self.degree());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            k >>= 1;
        }
        acc
    }

    /// Least `k ≥ 1` with `p^k = 1`, as the lcm of the cycle lengths.
    ///
    /// Panics if the order does not fit in a `u128`, which cannot happen
    /// below degree 400 or so.
    pub fn order(&self) -> u128 {
        self.cycle_lengths().into_iter().fold(1u128, |acc, len| {
            let len = len as u128;
            let l = acc / gcd(acc, len);
            l.checked_mul(len).expect("element order overflows u128")
        })
    }

    pub fn support(&self) -> Vec<Point> {
        (0..self.degree()).filter(|&x| self.image(x) != x).collect()
    }

    pub fn fixed_points(&self) -> Vec<Point> {
        (0..self.degree()).filter(|&x| self.image(x) == x).collect()
    }

    /// Disjoint cycle decomposition, including fixed points as 1-cycles.
    /// Each cycle starts at its smallest point; cycles are ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<Point>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.image(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.image(x);
            }
            out.push(cycle);
        }
        out
    }

    /// Sorted multiset of cycle lengths (fixed points included).
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t = self.cycle_lengths();
        t.sort_unstable();
        t
    }

    fn cycle_lengths(&self) -> Vec<usize> {
        self.cycles().iter().map(Vec::len).collect()
    }

    /// Same permutation with the points of `keep` relabelled `0..keep.len()`.
    /// `keep` must be a union of cycles.
    pub fn restrict(&self, keep: &[Point]) -> Perm {
        let mut index = vec![usize::MAX; self.degree()];
        for (i, &x) in keep.iter().enumerate() {
            index[x] = i;
        }
        let images: Vec<u16> = keep
            .iter()
            .map(|&x| {
                let y = index[self.image(x)];
                assert!(y != usize::MAX, "restriction domain is not invariant");
                y as u16
            })
            .collect();
        Perm::from_raw_vec(images)
    }
}

/// `out[x] = q[p[x]]`.
#[inline]
pub(crate) fn compose_into(p: &[u16], q: &[u16], out: &mut [u16]) {
    assert_eq!(p.len(), q.len(), "degree mismatch");
    for (o, &y) in out.iter_mut().zip(p.iter()) {
        *o = q[y as usize];
    }
}

fn is_bijection(images: &[u16]) -> bool {
    let mut seen = vec![false; images.len()];
    images.iter().all(|&y| {
        let y = y as usize;
        y < seen.len() && !std::mem::replace(&mut seen[y], true)
    })
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Mul for &Perm {
    type Output = Perm;

    fn mul(self, rhs: &Perm) -> Perm {
        self.then(rhs)
    }
}

impl fmt::Display for Perm {
    /// Cycle notation without fixed points; the identity is `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for cycle in self.cycles() {
            if cycle.len() < 2 {
                continue;
            }
            any = true;
            write!(f, "(")?;
            for (i, x) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{}; {}]", self.degree(), self)
    }
}
