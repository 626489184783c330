//! Brute-force oracles that only look at the block list. They share no
//! code with the library beyond reading `Design::blocks`.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};

use conway_groupoids::Design;

pub type Images = Vec<usize>;

/// Left-to-right product: `x` goes through `p` first.
pub fn mul(p: &[usize], q: &[usize]) -> Images {
    p.iter().map(|&x| q[x]).collect()
}

pub fn identity(n: usize) -> Images {
    (0..n).collect()
}

pub fn blocks(d: &Design) -> Vec<[usize; 4]> {
    d.blocks().iter().map(|b| [b[0], b[1], b[2], b[3]]).collect()
}

/// Pair coverage counts, or `None` if they vary.
pub fn lambda(d: &Design) -> Option<usize> {
    let n = d.n();
    let mut count = vec![0usize; n * n];
    for b in blocks(d) {
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    count[b[i] * n + b[j]] += 1;
                }
            }
        }
    }
    let first = count[1];
    (0..n)
        .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
        .all(|(a, b)| count[a * n + b] == first)
        .then_some(first)
}

/// `[a, b]` straight from the definition.
pub fn elementary(d: &Design, a: usize, b: usize) -> Images {
    let mut g = identity(d.n());
    if a == b {
        return g;
    }
    g.swap(a, b);
    for blk in blocks(d) {
        if blk.contains(&a) && blk.contains(&b) {
            let rest: Vec<usize> = blk.iter().copied().filter(|&x| x != a && x != b).collect();
            g.swap(rest[0], rest[1]);
        }
    }
    g
}

pub fn move_table(d: &Design) -> Vec<Vec<Images>> {
    let n = d.n();
    (0..n).map(|a| (0..n).map(|b| elementary(d, a, b)).collect()).collect()
}

pub fn distinct_moves(d: &Design) -> usize {
    let n = d.n();
    let mut set = HashSet::new();
    for a in 0..n {
        for b in a + 1..n {
            set.insert(elementary(d, a, b));
        }
    }
    set.len()
}

/// Breadth-first walk over (product, endpoint) pairs. Returns `(|L|, |π|)`.
pub fn groupoid_sizes(d: &Design, base: usize) -> (usize, usize) {
    let n = d.n();
    let moves = move_table(d);
    let start = (identity(n), base);
    let mut seen: HashSet<(Images, usize)> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    let mut l = HashSet::new();
    let mut pi = HashSet::new();
    while let Some((g, end)) = queue.pop_front() {
        l.insert(g.clone());
        if end == base {
            pi.insert(g.clone());
        }
        for y in (0..n).filter(|&y| y != end) {
            let next = (mul(&g, &moves[end][y]), y);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    (l.len(), pi.len())
}

/// Order of the group generated by all moves, by closure.
pub fn move_group_order(d: &Design) -> usize {
    let n = d.n();
    let gens: Vec<Images> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .map(|(a, b)| elementary(d, a, b))
        .collect();
    let mut seen = HashSet::from([identity(n)]);
    let mut queue = VecDeque::from([identity(n)]);
    while let Some(g) = queue.pop_front() {
        for s in &gens {
            let h = mul(&g, s);
            if seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
    }
    seen.len()
}

fn collinear(d: &Design) -> HashSet<[usize; 3]> {
    let mut c = HashSet::new();
    for b in blocks(d) {
        let mut b = b;
        b.sort_unstable();
        for skip in 0..4 {
            let t: Vec<usize> = (0..4).filter(|&i| i != skip).map(|i| b[i]).collect();
            c.insert([t[0], t[1], t[2]]);
        }
    }
    c
}

fn sorted3(mut t: [usize; 3]) -> [usize; 3] {
    t.sort_unstable();
    t
}

/// How many of the four triples of `q` are collinear.
pub fn collinear_in(d: &Design, q: [usize; 4]) -> usize {
    let c = collinear(d);
    (0..4)
        .filter(|&skip| {
            let t: Vec<usize> = (0..4).filter(|&i| i != skip).map(|i| q[i]).collect();
            c.contains(&sorted3([t[0], t[1], t[2]]))
        })
        .count()
}

/// Coherent 4-sets through each collinear triple: `Some(s)` when constant.
pub fn coherent_s(d: &Design) -> Option<usize> {
    let n = d.n();
    let c = collinear(d);
    let mut values = HashSet::new();
    for t in &c {
        let s = (0..n)
            .filter(|w| !t.contains(w))
            .filter(|&w| {
                c.contains(&sorted3([t[0], t[1], w]))
                    && c.contains(&sorted3([t[0], t[2], w]))
                    && c.contains(&sorted3([t[1], t[2], w]))
            })
            .count();
        values.insert(s);
    }
    (values.len() == 1).then(|| *values.iter().next().unwrap())
}

/// Strong triangle property at `base`, and that every block through `base`
/// is `{base, u, v, f(u, v)}`.
pub fn strong_triangle_and_f_lines(d: &Design, base: usize) -> bool {
    let n = d.n();
    let c = collinear(d);
    let adj = |u: usize, v: usize| u != v && c.contains(&sorted3([base, u, v]));
    let verts: Vec<usize> = (0..n).filter(|&x| x != base).collect();
    let mut f = HashMap::new();
    for (i, &u) in verts.iter().enumerate() {
        for &v in &verts[i + 1..] {
            if !adj(u, v) {
                continue;
            }
            let good: Vec<usize> = verts
                .iter()
                .copied()
                .filter(|&w| w != u && w != v && adj(u, w) && adj(v, w))
                .filter(|&w| {
                    verts
                        .iter()
                        .filter(|&&x| x != u && x != v && x != w)
                        .all(|&x| [u, v, w].iter().filter(|&&y| adj(x, y)).count() % 2 == 1)
                })
                .collect();
            if good.len() != 1 {
                return false;
            }
            f.insert((u, v), good[0]);
        }
    }
    let mut through: Vec<[usize; 4]> = blocks(d)
        .into_iter()
        .filter(|b| b.contains(&base))
        .map(|mut b| {
            b.sort_unstable();
            b
        })
        .collect();
    through.sort_unstable();
    let mut predicted: Vec<[usize; 4]> = f
        .iter()
        .map(|(&(u, v), &w)| {
            let mut b = [base, u, v, w];
            b.sort_unstable();
            b
        })
        .collect();
    predicted.sort_unstable();
    predicted.dedup();
    through == predicted
}
