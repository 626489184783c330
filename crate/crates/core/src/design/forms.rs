//! The symplectic space `F₂^{2m}` with its standard quadratic form.
//!
//! Vectors are `2m`-bit words; coordinate `i` is bit `i`. The first `m`
//! coordinates pair with the last `m` as hyperbolic pairs, so
//! `θ(u) = Σ u_i u_{m+i}` and `φ(u, v) = Σ (u_i v_{m+i} + u_{m+i} v_i)`.

use super::{DesignError, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FormSpace {
    m: u32,
}

impl FormSpace {
    pub fn new(m: u32) -> Result<FormSpace, DesignError> {
        if m < 1 {
            return Err(DesignError::InvalidParameter("form space needs m ≥ 1".into()));
        }
        if 2 * m > 24 {
            return Err(DesignError::InvalidParameter(format!("m = {m} is too large")));
        }
        Ok(FormSpace { m })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn dimension(&self) -> u32 {
        2 * self.m
    }

    /// Number of vectors, `2^{2m}`.
    pub fn size(&self) -> usize {
        1 << (2 * self.m)
    }

    fn low_mask(&self) -> u32 {
        (1 << self.m) - 1
    }

    /// `θ(u) = u·e·uᵀ`.
    pub fn theta(&self, u: u32) -> u32 {
        ((u & self.low_mask()) & (u >> self.m)).count_ones() & 1
    }

    /// `φ(u, v) = u·f·vᵀ`, the polarisation of `θ`.
    pub fn phi(&self, u: u32, v: u32) -> u32 {
        let lo = self.low_mask();
        let cross = (u & lo) & (v >> self.m) ^ (u >> self.m) & (v & lo);
        cross.count_ones() & 1
    }

    /// A non-degenerate quadratic form of the given type polarising to `φ`.
    ///
    /// `+` is `θ` itself. `−` replaces `x₀y₀` by `x₀² + x₀y₀ + y₀²` on the
    /// first hyperbolic pair, which adds the linear term `x₀ + y₀`.
    pub fn quadratic(&self, sign: Sign, u: u32) -> u32 {
        match sign {
            Sign::Plus => self.theta(u),
            Sign::Minus => self.theta(u) ^ ((u ^ (u >> self.m)) & 1),
        }
    }

    /// Number of singular vectors (zero included) of the form of type
    /// `sign`: `2^{2m−1} + ε·2^{m−1}`.
    pub fn expected_singular_count(&self, sign: Sign) -> usize {
        let big = 1usize << (2 * self.m - 1);
        let small = 1usize << (self.m - 1);
        match sign {
            Sign::Plus => big + small,
            Sign::Minus => big - small,
        }
    }

    /// Singular vectors of the form of type `sign`, ascending.
    pub fn singular_vectors(&self, sign: Sign) -> Vec<u32> {
        (0..self.size() as u32)
            .filter(|&u| self.quadratic(sign, u) == 0)
            .collect()
    }
}
