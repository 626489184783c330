//! Elementary moves `[a, b]`, move sequences and the identities they satisfy.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::design::{CollinearityIndex, Design};
use crate::perm::{Perm, Point};

/// `[a, b] = (a, b) ∏ (a_i, b_i)` over the blocks `{a, b, a_i, b_i}`; `[a, a] = 1`.
pub fn elementary_move(idx: &CollinearityIndex, a: Point, b: Point) -> Perm {
    let n = idx.n();
    assert!(a < n && b < n, "point out of range");
    let mut images: Vec<u16> = (0..n as u16).collect();
    if a != b {
        images.swap(a, b);
        for &(x, y) in idx.completing(a, b) {
            images.swap(x, y);
        }
    }
    Perm::from_raw_vec(images)
}

/// Every elementary move of a design and the set `E` of distinct ones.
#[derive(Debug, Clone)]
pub struct MoveTable {
    n: usize,
    lambda: usize,
    moves: Vec<Perm>,
    distinct: Vec<Perm>,
    /// `class[a*n + b]`: index into `distinct` (`usize::MAX` on the diagonal).
    class: Vec<usize>,
}

impl MoveTable {
    pub fn new(idx: &CollinearityIndex) -> MoveTable {
        let n = idx.n();
        let moves: Vec<Perm> = (0..n * n)
            .into_par_iter()
            .map(|k| elementary_move(idx, k / n, k % n))
            .collect();
        let mut distinct = Vec::new();
        let mut seen: HashMap<&[u16], usize> = HashMap::new();
        let mut class = vec![usize::MAX; n * n];
        for a in 0..n {
            for b in a + 1..n {
                let m = &moves[a * n + b];
                let id = *seen.entry(m.images()).or_insert_with(|| {
                    distinct.push(m.clone());
                    distinct.len() - 1
                });
                class[a * n + b] = id;
                class[b * n + a] = id;
            }
        }
        MoveTable {
            n,
            lambda: idx.lambda(),
            moves,
            distinct,
            class,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    #[inline]
    pub fn get(&self, a: Point, b: Point) -> &Perm {
        &self.moves[a * self.n + b]
    }

    /// The distinct non-identity elementary moves, in order of first
    /// appearance over pairs `a < b`.
    pub fn distinct(&self) -> &[Perm] {
        &self.distinct
    }

    pub fn class_of(&self, a: Point, b: Point) -> Option<usize> {
        let c = self.class[a * self.n + b];
        (c != usize::MAX).then_some(c)
    }

    /// `[p_0, p_1, …, p_k] = [p_0, p_1][p_1, p_2]⋯[p_{k−1}, p_k]`.
    pub fn move_sequence(&self, pts: &[Point]) -> Perm {
        assert!(!pts.is_empty(), "a move sequence needs a starting point");
        pts.windows(2)
            .fold(Perm::identity(self.n), |acc, w| acc.then(self.get(w[0], w[1])))
    }
}

/// An instance where an identity fails, with both sides in cycle notation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaWitness {
    pub points: Vec<Point>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaCheck {
    pub name: &'static str,
    pub holds: bool,
    pub cases: u64,
    /// Cases on each side of a dichotomy, when the identity has one:
    /// `(x ∈ overline(y, z), x ∉ overline(y, z))`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branches: Option<(u64, u64)>,
    pub witness: Option<LemmaWitness>,
}

fn witness(points: Vec<Point>, lhs: &Perm, rhs: &Perm) -> LemmaWitness {
    LemmaWitness {
        points,
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
    }
}

/// Runs `f` over each `x`, keeping the first witness in `x` order.
fn scan_points<F>(n: usize, f: F) -> (u64, (u64, u64), Option<LemmaWitness>)
where
    F: Fn(Point) -> (u64, (u64, u64), Option<LemmaWitness>) + Sync + Send,
{
    let parts: Vec<_> = (0..n).into_par_iter().map(f).collect();
    let mut cases = 0;
    let mut branches = (0, 0);
    let mut first = None;
    for (c, (b0, b1), w) in parts {
        cases += c;
        branches.0 += b0;
        branches.1 += b1;
        if first.is_none() {
            first = w;
        }
    }
    (cases, branches, first)
}

/// `[w, x] = [y, z]` for every block `{w, x, y, z}` and each of its three
/// pairings.
pub fn check_line_move_identity(t: &MoveTable, d: &Design) -> LemmaCheck {
    let mut cases = 0;
    let mut found = None;
    'blocks: for b in d.blocks() {
        let [w, x, y, z] = *b;
        for (p, q) in [((w, x), (y, z)), ((w, y), (x, z)), ((w, z), (x, y))] {
            cases += 1;
            let (l, r) = (t.get(p.0, p.1), t.get(q.0, q.1));
            if l != r {
                found = Some(witness(vec![p.0, p.1, q.0, q.1], l, r));
                break 'blocks;
            }
        }
    }
    LemmaCheck {
        name: "line_move_identity",
        holds: found.is_none(),
        cases,
        branches: None,
        witness: found,
    }
}

/// `[y, z][x, y][y, z]` is `[x, y]` when `x ∈ overline(y, z)` and `[x, z]`
/// otherwise, for pairwise distinct `x, y, z`.
pub fn check_sympeq(t: &MoveTable, idx: &CollinearityIndex) -> LemmaCheck {
    let n = t.n();
    let (cases, branches, found) = scan_points(n, |x| {
        let mut cases = 0;
        let mut br = (0, 0);
        for y in (0..n).filter(|&y| y != x) {
            for z in (0..n).filter(|&z| z != x && z != y) {
                cases += 1;
                let yz = t.get(y, z);
                let lhs = yz.then(t.get(x, y)).then(yz);
                let rhs = if idx.in_overline(y, z, x) {
                    br.0 += 1;
                    t.get(x, y)
                } else {
                    br.1 += 1;
                    t.get(x, z)
                };
                if &lhs != rhs {
                    return (cases, br, Some(witness(vec![x, y, z], &lhs, rhs)));
                }
            }
        }
        (cases, br, None)
    });
    LemmaCheck {
        name: "conjugation_trichotomy",
        holds: found.is_none(),
        cases,
        branches: Some(branches),
        witness: found,
    }
}

/// `o([x, y][y, z])` is 2 when `x ∈ overline(y, z)` and 3 otherwise, and
/// in the second case `[z, x, y, z] = [x, y]`.
pub fn check_braid_orders(t: &MoveTable, idx: &CollinearityIndex) -> LemmaCheck {
    let n = t.n();
    let (cases, branches, found) = scan_points(n, |x| {
        let mut cases = 0;
        let mut br = (0, 0);
        for y in (0..n).filter(|&y| y != x) {
            for z in (0..n).filter(|&z| z != x && z != y) {
                cases += 1;
                let xy = t.get(x, y);
                let prod = xy.then(t.get(y, z));
                let collinear = idx.in_overline(y, z, x);
                let expected = if collinear { 2 } else { 3 };
                if collinear {
                    br.0 += 1;
                } else {
                    br.1 += 1;
                }
                if prod.order() != expected {
                    let w = LemmaWitness {
                        points: vec![x, y, z],
                        lhs: format!("o({prod}) = {}", prod.order()),
                        rhs: expected.to_string(),
                    };
                    return (cases, br, Some(w));
                }
                if !collinear {
                    let seq = t.move_sequence(&[z, x, y, z]);
                    if &seq != xy {
                        return (cases, br, Some(witness(vec![x, y, z], &seq, xy)));
                    }
                }
            }
        }
        (cases, br, None)
    });
    LemmaCheck {
        name: "braid_orders",
        holds: found.is_none(),
        cases,
        branches: Some(branches),
        witness: found,
    }
}

/// `[x, y]^g = [x^g, y^g]` for every pair and every `g ∈ E`.
pub fn check_conjugation(t: &MoveTable) -> LemmaCheck {
    let n = t.n();
    let e = t.distinct();
    let (cases, _, found) = scan_points(n, |x| {
        let mut cases = 0;
        for y in x + 1..n {
            for g in e {
                cases += 1;
                let lhs = t.get(x, y).conjugate_by(g);
                let rhs = t.get(g.image(x), g.image(y));
                if &lhs != rhs {
                    return (cases, (0, 0), Some(witness(vec![x, y], &lhs, rhs)));
                }
            }
        }
        (cases, (0, 0), None)
    });
    LemmaCheck {
        name: "class_closure",
        holds: found.is_none(),
        cases,
        branches: None,
        witness: found,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MoveSummary {
    pub distinct_moves: usize,
    /// `n(n−1) / (2(λ+1))`, when it is an integer.
    pub expected_distinct_moves: Option<usize>,
    pub count_identity: bool,
    pub all_involutions: bool,
    /// Every `[a, b]` with `a ≠ b` moves exactly `2λ+2` points.
    pub supports_ok: bool,
}

pub fn move_summary(t: &MoveTable) -> MoveSummary {
    let n = t.n();
    let pairs = n * n.saturating_sub(1) / 2;
    let expected = pairs.is_multiple_of(t.lambda() + 1).then(|| pairs / (t.lambda() + 1));
    let mut all_involutions = true;
    let mut supports_ok = true;
    for a in 0..n {
        for b in a + 1..n {
            let m = t.get(a, b);
            all_involutions &= m.is_involution();
            supports_ok &= m.support().len() == 2 * t.lambda() + 2;
        }
    }
    MoveSummary {
        distinct_moves: t.distinct().len(),
        expected_distinct_moves: expected,
        count_identity: expected == Some(t.distinct().len()),
        all_involutions,
        supports_ok,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::{
        boolean_design, cyclic_development, orthogonal_design, projective_plane_3, symplectic_design, Sign,
    };

    fn table(d: &Design) -> (CollinearityIndex, MoveTable) {
        let idx = CollinearityIndex::new(d).unwrap();
        let t = MoveTable::new(&idx);
        (idx, t)
    }

    #[test]
    fn single_block_move() {
        let (_, t) = table(&boolean_design(2).unwrap());
        assert_eq!(t.get(0, 1), &Perm::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap());
        assert!(t.get(2, 2).is_identity());
    }

    #[test]
    fn projective_plane_moves_are_double_transpositions() {
        let (_, t) = table(&projective_plane_3());
        for a in 0..13 {
            for b in 0..13 {
                if a != b {
                    assert_eq!(t.get(a, b).cycle_type(), [vec![1; 9], vec![2, 2]].concat());
                }
            }
        }
        assert_eq!(t.distinct().len(), 39);
    }

    #[test]
    fn sequences() {
        let (_, t) = table(&orthogonal_design(2, Sign::Plus).unwrap());
        assert!(t.move_sequence(&[4]).is_identity());
        assert!(t.move_sequence(&[4, 7, 4]).is_identity());
        let path = [0, 3, 8, 1, 5, 2];
        for k in 1..=path.len() {
            assert_eq!(t.move_sequence(&path[..k]).image(0), path[k - 1]);
        }
    }

    #[test]
    fn distinct_move_counts() {
        for (d, e) in [
            (boolean_design(3).unwrap(), 7),
            (boolean_design(4).unwrap(), 15),
            (orthogonal_design(2, Sign::Plus).unwrap(), 15),
            (symplectic_design(2).unwrap(), 30),
            (projective_plane_3(), 39),
        ] {
            let (_, t) = table(&d);
            let s = move_summary(&t);
            assert_eq!(s.distinct_moves, e, "{}", d.name());
            assert!(s.count_identity && s.all_involutions && s.supports_ok);
        }
    }

    #[test]
    fn identities_hold_on_small_families() {
        for d in [
            boolean_design(3).unwrap(),
            orthogonal_design(2, Sign::Plus).unwrap(),
            symplectic_design(2).unwrap(),
        ] {
            let (idx, t) = table(&d);
            assert!(check_line_move_identity(&t, &d).holds);
            assert!(check_sympeq(&t, &idx).holds);
            assert!(check_braid_orders(&t, &idx).holds);
            assert!(check_conjugation(&t).holds);
        }
    }

    #[test]
    fn braid_branches() {
        let (idx, t) = table(&boolean_design(3).unwrap());
        let r = check_braid_orders(&t, &idx);
        assert_eq!(r.branches, Some((336, 0)));
        let (idx, t) = table(&symplectic_design(2).unwrap());
        let (a, b) = check_braid_orders(&t, &idx).branches.unwrap();
        assert!(a > 0 && b > 0);
        assert_eq!(a + b, 16 * 15 * 14);
    }

    #[test]
    fn projective_plane_line_identity() {
        let d = projective_plane_3();
        let (_, t) = table(&d);
        assert!(check_line_move_identity(&t, &d).holds);
    }

    #[test]
    fn design_without_symmetric_difference_gives_witness() {
        let d = cyclic_development("cyclic(13;{0,1,3,9},{0,1,4,6})", 13, &[[0, 1, 3, 9], [0, 1, 4, 6]]).unwrap();
        let stats = crate::design::validate(&d).unwrap();
        assert!(stats.is_supersimple && !stats.satisfies_triangle_delta);
        let (idx, t) = table(&d);
        let r = check_sympeq(&t, &idx);
        assert!(!r.holds);
        let w = r.witness.unwrap();
        let [x, y, z] = [w.points[0], w.points[1], w.points[2]];
        let lhs = t.get(y, z).then(t.get(x, y)).then(t.get(y, z));
        assert_eq!(lhs.to_string(), w.lhs);
        assert_ne!(w.lhs, w.rhs);
    }
}
