//! Block designs with 4-point blocks.

mod boolean;
mod collinearity;
mod families;
mod forms;
mod io;
mod orders;
mod stats;

use std::collections::HashSet;

use thiserror::Error;

use crate::perm::{Perm, Point, MAX_DEGREE};

pub use boolean::{reconstruct_boolean, BooleanReconstruction};
pub use collinearity::CollinearityIndex;
pub use families::{
    boolean_design, cyclic_development, orthogonal_design, projective_plane_3, symplectic_design, Sign,
};
pub use forms::FormSpace;
pub use io::{read_design, write_design, DesignFile};
pub use orders::{o_order, sp_order};
pub use stats::{validate, DesignStats};

/// A block: four distinct points, sorted ascending.
pub type Block = [Point; 4];

#[derive(Debug, Error)]
pub enum DesignError {
    #[error("block {index} has a repeated point")]
    RepeatedPoint { index: usize },
    #[error("block {index} contains point {point} outside 0..{n}")]
    PointOutOfRange { index: usize, point: usize, n: usize },
    #[error("duplicate block {0:?}")]
    DuplicateBlock(Block),
    #[error("degenerate: {0}")]
    Degenerate(String),
    #[error("not a 2-design: pair coverage ranges over {min}..={max}")]
    NotA2Design { min: usize, max: usize },
    #[error("not supersimple: blocks {0:?} and {1:?} share three points")]
    NotSupersimple(Block, Block),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("not Boolean: {0}")]
    NotBoolean(String),
    #[error("malformed design file: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// A point set `0..n` with a set of 4-point blocks.
#[derive(Debug, Clone)]
pub struct Design {
    name: String,
    n: usize,
    blocks: Vec<Block>,
    lookup: HashSet<Block>,
}

impl Design {
    /// Validates the block structure, sorts every block and the block list.
    pub fn new(name: impl Into<String>, n: usize, blocks: Vec<[Point; 4]>) -> Result<Design, DesignError> {
        if n > MAX_DEGREE {
            return Err(DesignError::InvalidParameter(format!("n = {n} is too large")));
        }
        let mut sorted = Vec::with_capacity(blocks.len());
        let mut lookup = HashSet::with_capacity(blocks.len());
        for (index, mut b) in blocks.into_iter().enumerate() {
            b.sort_unstable();
            if let Some(&point) = b.iter().find(|&&x| x >= n) {
                return Err(DesignError::PointOutOfRange { index, point, n });
            }
            if b.windows(2).any(|w| w[0] == w[1]) {
                return Err(DesignError::RepeatedPoint { index });
            }
            if !lookup.insert(b) {
                return Err(DesignError::DuplicateBlock(b));
            }
            sorted.push(b);
        }
        sorted.sort_unstable();
        Ok(Design {
            name: name.into(),
            n,
            blocks: sorted,
            lookup,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Membership for an arbitrary (unsorted) 4-set.
    pub fn has_block(&self, mut b: [Point; 4]) -> bool {
        b.sort_unstable();
        self.lookup.contains(&b)
    }

    /// The same design with point `x` renamed `relabel[x]`.
    pub fn relabeled(&self, relabel: &[Point]) -> Result<Design, DesignError> {
        let perm = Perm::from_images(relabel).map_err(|e| DesignError::InvalidParameter(format!("relabeling: {e}")))?;
        if perm.degree() != self.n {
            return Err(DesignError::InvalidParameter("relabeling has the wrong degree".into()));
        }
        let blocks = self.blocks.iter().map(|b| b.map(|x| perm.image(x))).collect();
        Design::new(self.name.clone(), self.n, blocks)
    }

    /// Whether `g` maps every block to a block; returns the first block
    /// whose image is not a block.
    pub fn automorphism_witness(&self, g: &Perm) -> Option<Block> {
        self.blocks
            .iter()
            .find(|b| !self.has_block(b.map(|x| g.image(x))))
            .copied()
    }

    pub fn is_automorphism(&self, g: &Perm) -> bool {
        g.degree() == self.n && self.automorphism_witness(g).is_none()
    }
}

impl PartialEq for Design {
    fn eq(&self, other: &Design) -> bool {
        self.n == other.n && self.blocks == other.blocks
    }
}

impl Eq for Design {}
