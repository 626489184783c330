//! Insertion-ordered set of permutations of one degree, stored in a flat
//! arena. Large closures (a million elements of degree 64) would otherwise
//! pay one heap allocation per element.

use std::hash::{BuildHasher, RandomState};

use hashbrown::HashTable;

use crate::perm::Perm;

pub struct PermSet {
    degree: usize,
    data: Vec<u16>,
    index: HashTable<u32>,
    hasher: RandomState,
}

impl PermSet {
    pub fn new(degree: usize) -> PermSet {
        PermSet {
            degree,
            data: Vec::new(),
            index: HashTable::new(),
            hasher: RandomState::new(),
        }
    }

    pub fn with_capacity(degree: usize, capacity: usize) -> PermSet {
        PermSet {
            degree,
            data: Vec::with_capacity(degree * capacity),
            index: HashTable::with_capacity(capacity),
            hasher: RandomState::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    /// Image slice of the `i`-th inserted element.
    pub fn get(&self, i: usize) -> &[u16] {
        &self.data[i * self.degree..(i + 1) * self.degree]
    }

    pub fn perm(&self, i: usize) -> Perm {
        Perm::from_raw(self.get(i))
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u16]> + '_ {
        (0..self.len()).map(move |i| self.get(i))
    }

    pub fn contains(&self, images: &[u16]) -> bool {
        self.position(images).is_some()
    }

    pub fn contains_perm(&self, p: &Perm) -> bool {
        p.degree() == self.degree && self.contains(p.images())
    }

    pub fn position(&self, images: &[u16]) -> Option<usize> {
        let hash = self.hasher.hash_one(images);
        let (data, degree) = (&self.data, self.degree);
        self.index
            .find(hash, |&i| {
                let i = i as usize;
                &data[i * degree..(i + 1) * degree] == images
            })
            .map(|&i| i as usize)
    }

    /// Inserts the images (a bijection of the set's degree); returns
    /// `true` when the element was new.
    pub fn insert(&mut self, images: &[u16]) -> bool {
        assert_eq!(images.len(), self.degree, "degree mismatch");
        let hash = self.hasher.hash_one(images);
        let id = self.len() as u32;
        let (data, degree, hasher) = (&self.data, self.degree, &self.hasher);
        let entry = self.index.entry(
            hash,
            |&i| {
                let i = i as usize;
                &data[i * degree..(i + 1) * degree] == images
            },
            |&i| {
                let i = i as usize;
                hasher.hash_one(&data[i * degree..(i + 1) * degree])
            },
        );
        match entry {
            hashbrown::hash_table::Entry::Occupied(_) => false,
            hashbrown::hash_table::Entry::Vacant(slot) => {
                slot.insert(id);
                self.data.extend_from_slice(images);
                true
            }
        }
    }

    pub fn insert_perm(&mut self, p: &Perm) -> bool {
        self.insert(p.images())
    }
}

impl std::fmt::Debug for PermSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PermSet")
            .field("degree", &self.degree)
            .field("len", &self.len())
            .finish()
    }
}
