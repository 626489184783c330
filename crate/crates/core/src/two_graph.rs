//! Regular two-graphs, derived graphs and the triangle property.

use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::design::{CollinearityIndex, Design};
use crate::perm::Point;

/// A set of unordered triples of `0..n`, with constant-time lookup.
#[derive(Debug, Clone)]
pub struct TripleSet {
    n: usize,
    bits: FixedBitSet,
    triples: Vec<[Point; 3]>,
}

impl TripleSet {
    pub fn new(n: usize, triples: impl IntoIterator<Item = [Point; 3]>) -> TripleSet {
        let mut bits = FixedBitSet::with_capacity(n * n * n);
        let mut list = Vec::new();
        for mut t in triples {
            t.sort_unstable();
            let [a, b, c] = t;
            assert!(
                a < b && b < c && c < n,
                "triple {t:?} is not three distinct points of 0..{n}"
            );
            if bits.contains((a * n + b) * n + c) {
                continue;
            }
            for [x, y, z] in [[a, b, c], [a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]] {
                bits.insert((x * n + y) * n + z);
            }
            list.push(t);
        }
        list.sort_unstable();
        TripleSet { n, bits, triples: list }
    }

    /// The collinear triples of a design.
    pub fn collinear(idx: &CollinearityIndex) -> TripleSet {
        TripleSet::new(idx.n(), idx.collinear_triples())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn triples(&self) -> &[[Point; 3]] {
        &self.triples
    }

    #[inline]
    pub fn contains(&self, a: Point, b: Point, c: Point) -> bool {
        self.bits.contains((a * self.n + b) * self.n + c)
    }
}

/// The number `s` of coherent 4-sets through a triple of C.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coherence {
    Constant(usize),
    NonConstant { min: usize, max: usize },
}

impl Serialize for Coherence {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Coherence::Constant(v) => s.serialize_u64(*v as u64),
            Coherence::NonConstant { .. } => s.serialize_str("non-constant"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwoGraphReport {
    pub n: usize,
    pub triple_count: usize,
    pub is_regular_two_graph: bool,
    /// Number of 4-sets containing exactly 0..=4 triples of C.
    pub four_set_histogram: [u64; 5],
    /// First 4-set (lexicographically) with an odd number of triples in C.
    pub odd_four_set: Option<[Point; 4]>,
    /// Triples of C through a pair: `Some(μ)` when constant.
    pub mu: Option<usize>,
    pub pair_count_range: (usize, usize),
    /// A pair attaining the smallest count, when counts vary.
    pub pair_witness: Option<(Point, Point)>,
    pub s: Coherence,
    /// `n = 3μ − 2s`, when both are constant.
    pub identity_n_eq: bool,
    pub n_even: bool,
}

pub fn two_graph_report(c: &TripleSet) -> TwoGraphReport {
    let n = c.n();

    // One task per smallest point; merged in order so the witness is the
    // lexicographically first.
    let per_a: Vec<([u64; 5], Option<[Point; 4]>)> = (0..n)
        .into_par_iter()
        .map(|a| {
            let mut hist = [0u64; 5];
            let mut witness = None;
            for b in a + 1..n {
                for cc in b + 1..n {
                    let abc = c.contains(a, b, cc) as usize;
                    for d in cc + 1..n {
                        let k = abc
                            + c.contains(a, b, d) as usize
                            + c.contains(a, cc, d) as usize
                            + c.contains(b, cc, d) as usize;
                        hist[k] += 1;
                        if k % 2 == 1 && witness.is_none() {
                            witness = Some([a, b, cc, d]);
                        }
                    }
                }
            }
            (hist, witness)
        })
        .collect();
    let mut four_set_histogram = [0u64; 5];
    let mut odd_four_set = None;
    for (hist, w) in per_a {
        for k in 0..5 {
            four_set_histogram[k] += hist[k];
        }
        odd_four_set = odd_four_set.or(w);
    }

    let mut pair_counts = vec![0usize; n * n];
    for &[a, b, cc] in c.triples() {
        for (x, y) in [(a, b), (a, cc), (b, cc)] {
            pair_counts[x * n + y] += 1;
        }
    }
    let mut pair_min = (usize::MAX, (0, 0));
    let mut pair_max = 0;
    for x in 0..n {
        for y in x + 1..n {
            let k = pair_counts[x * n + y];
            if k < pair_min.0 {
                pair_min = (k, (x, y));
            }
            pair_max = pair_max.max(k);
        }
    }
    let pair_count_range = if n < 2 { (0, 0) } else { (pair_min.0, pair_max) };
    let mu = (n >= 2 && pair_count_range.0 == pair_count_range.1).then_some(pair_max);
    let pair_witness = if mu.is_none() && n >= 2 { Some(pair_min.1) } else { None };

    let coherent: Vec<usize> = c
        .triples()
        .par_iter()
        .map(|&[a, b, cc]| {
            (0..n)
                .filter(|&d| d != a && d != b && d != cc)
                .filter(|&d| c.contains(a, b, d) && c.contains(a, cc, d) && c.contains(b, cc, d))
                .count()
        })
        .collect();
    let s = match (coherent.iter().min(), coherent.iter().max()) {
        (Some(&lo), Some(&hi)) if lo == hi => Coherence::Constant(lo),
        (Some(&min), Some(&max)) => Coherence::NonConstant { min, max },
        _ => Coherence::Constant(0),
    };

    let identity_n_eq = match (mu, s) {
        (Some(mu), Coherence::Constant(s)) => n as i64 == 3 * mu as i64 - 2 * s as i64,
        _ => false,
    };
    TwoGraphReport {
        n,
        triple_count: c.len(),
        is_regular_two_graph: odd_four_set.is_none() && mu.is_some(),
        four_set_histogram,
        odd_four_set,
        mu,
        pair_count_range,
        pair_witness,
        s,
        identity_n_eq,
        n_even: n.is_multiple_of(2),
    }
}

/// A simple graph on a subset of `0..n`.
#[derive(Debug, Clone)]
pub struct DerivedGraph {
    base: Option<Point>,
    vertices: Vec<Point>,
    vertex_mask: FixedBitSet,
    adj: Vec<FixedBitSet>,
}

impl DerivedGraph {
    /// Vertices `Ω ∖ {∞}`, with `a ~ b` iff `{∞, a, b}` is collinear.
    pub fn derived(idx: &CollinearityIndex, base: Point) -> DerivedGraph {
        let n = idx.n();
        assert!(base < n, "base point out of range");
        let vertices: Vec<Point> = (0..n).filter(|&x| x != base).collect();
        let adj = (0..n)
            .map(|a| {
                if a == base {
                    FixedBitSet::with_capacity(n)
                } else {
                    idx.collinear_with(base, a).clone()
                }
            })
            .collect();
        Self::from_parts(n, Some(base), vertices, adj)
    }

    /// Graph on all of `0..n` with the given edges.
    pub fn from_edges(n: usize, edges: &[(Point, Point)]) -> DerivedGraph {
        let mut adj = vec![FixedBitSet::with_capacity(n); n];
        for &(a, b) in edges {
            assert!(a != b && a < n && b < n, "bad edge ({a}, {b})");
            adj[a].insert(b);
            adj[b].insert(a);
        }
        Self::from_parts(n, None, (0..n).collect(), adj)
    }

    fn from_parts(n: usize, base: Option<Point>, vertices: Vec<Point>, adj: Vec<FixedBitSet>) -> DerivedGraph {
        let mut vertex_mask = FixedBitSet::with_capacity(n);
        vertices.iter().for_each(|&v| vertex_mask.insert(v));
        DerivedGraph {
            base,
            vertices,
            vertex_mask,
            adj,
        }
    }

    pub fn base(&self) -> Option<Point> {
        self.base
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn adjacent(&self, a: Point, b: Point) -> bool {
        self.adj[a].contains(b)
    }

    pub fn degree(&self, a: Point) -> usize {
        self.adj[a].count_ones(..)
    }

    pub fn edges(&self) -> Vec<(Point, Point)> {
        self.vertices
            .iter()
            .flat_map(|&u| self.adj[u].ones().filter(move |&v| v > u).map(move |v| (u, v)))
            .collect()
    }

    /// `F(u, v)`: common neighbours `w` such that every other vertex is
    /// adjacent to one or three of `u, v, w`.
    pub fn f_set(&self, u: Point, v: Point) -> Vec<Point> {
        let mut common = self.adj[u].clone();
        common.intersect_with(&self.adj[v]);
        common
            .ones()
            .filter(|&w| {
                let mut odd = self.adj[u].clone();
                odd.symmetric_difference_with(&self.adj[v]);
                odd.symmetric_difference_with(&self.adj[w]);
                for x in [u, v, w] {
                    odd.insert(x);
                }
                self.vertex_mask.is_subset(&odd)
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriangleReport {
    pub base: Option<Point>,
    pub edge_count: usize,
    pub has_triangle_property: bool,
    pub has_strong_triangle_property: bool,
    /// Reason the property is not even meaningful ("E=∅").
    pub reason: Option<String>,
    /// How many edges have `|F(u, v)| = k`, keyed by `k`.
    pub f_size_histogram: BTreeMap<usize, usize>,
    /// First edge with `F` empty, or with `|F| > 1`, and its `F`.
    pub witness: Option<(Point, Point, Vec<Point>)>,
    /// `F(u, v)` for every edge `u < v`.
    #[serde(skip)]
    pub f_sets: BTreeMap<(Point, Point), Vec<Point>>,
}

impl TriangleReport {
    /// `f(u, v)` when the strong triangle property holds.
    pub fn f(&self, u: Point, v: Point) -> Option<Point> {
        if !self.has_strong_triangle_property {
            return None;
        }
        self.f_sets.get(&(u.min(v), u.max(v))).map(|f| f[0])
    }
}

pub fn triangle_report(g: &DerivedGraph) -> TriangleReport {
    let edges = g.edges();
    if edges.is_empty() {
        return TriangleReport {
            base: g.base(),
            edge_count: 0,
            has_triangle_property: false,
            has_strong_triangle_property: false,
            reason: Some("E=∅".into()),
            f_size_histogram: BTreeMap::new(),
            witness: None,
            f_sets: BTreeMap::new(),
        };
    }
    let sets: Vec<Vec<Point>> = edges.par_iter().map(|&(u, v)| g.f_set(u, v)).collect();
    let mut f_size_histogram = BTreeMap::new();
    for f in &sets {
        *f_size_histogram.entry(f.len()).or_insert(0) += 1;
    }
    let has_triangle_property = sets.iter().all(|f| !f.is_empty());
    let has_strong_triangle_property = sets.iter().all(|f| f.len() == 1);
    let witness = if has_strong_triangle_property {
        None
    } else {
        let bad = |f: &Vec<Point>| {
            if has_triangle_property {
                f.len() > 1
            } else {
                f.is_empty()
            }
        };
        edges
            .iter()
            .zip(&sets)
            .find(|(_, f)| bad(f))
            .map(|(&(u, v), f)| (u, v, f.clone()))
    };
    TriangleReport {
        base: g.base(),
        edge_count: edges.len(),
        has_triangle_property,
        has_strong_triangle_property,
        reason: None,
        f_size_histogram,
        witness,
        f_sets: edges.into_iter().zip(sets).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FLinesError {
    #[error("the derived graph does not have the triangle property")]
    NoTriangleProperty,
    #[error("triangle report belongs to base {found:?}, not {expected}")]
    WrongBase { expected: Point, found: Option<Point> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FLinesReport {
    pub base: Point,
    pub strong: bool,
    pub blocks_through_base: usize,
    pub matches: bool,
    /// An edge `{a, b}` whose block through `∞` disagrees with `F(a, b)`.
    pub witness: Option<(Point, Point)>,
}

/// Checks the blocks through `∞` against the triangle data. With the
/// strong property they must be exactly `{∞, a, b, f(a, b)}` over the
/// edges; otherwise each edge `{a, b}` must lie in exactly one block
/// `{∞, a, b, c}` and `c ∈ F(a, b)`.
pub fn verify_f_lines(d: &Design, base: Point, t: &TriangleReport) -> Result<FLinesReport, FLinesError> {
    if t.base != Some(base) {
        return Err(FLinesError::WrongBase {
            expected: base,
            found: t.base,
        });
    }
    if !t.has_triangle_property {
        return Err(FLinesError::NoTriangleProperty);
    }
    let through: Vec<&[Point; 4]> = d.blocks().iter().filter(|b| b.contains(&base)).collect();
    let mut witness = None;
    for (&(a, b), f) in &t.f_sets {
        let lines: Vec<Point> = through
            .iter()
            .filter(|blk| blk.contains(&a) && blk.contains(&b))
            .map(|blk| {
                *blk.iter()
                    .find(|&&x| x != base && x != a && x != b)
                    .expect("four points")
            })
            .collect();
        let ok = lines.len() == 1 && f.contains(&lines[0]) && (!t.has_strong_triangle_property || f.len() == 1);
        if !ok {
            witness = Some((a, b));
            break;
        }
    }
    if witness.is_none() && t.has_strong_triangle_property {
        // Every block through ∞ accounts for three edges.
        if 3 * through.len() != t.f_sets.len() {
            witness = t.f_sets.keys().next().copied();
        }
    }
    Ok(FLinesReport {
        base,
        strong: t.has_strong_triangle_property,
        blocks_through_base: through.len(),
        matches: witness.is_none(),
        witness,
    })
}
