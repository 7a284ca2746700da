//! Finite posets and lattices: validation, Hasse diagrams, meet/join tables,
//! modularity and order-isomorphism search.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use crate::{Error, Result};

/// A finite partial order on `0..n`, stored as up-sets and down-sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
}

impl FinitePoset {
    /// Builds a poset from a dense boolean relation, `rel[i][j]` meaning `i ≤ j`.
    pub fn from_relation(rel: &[Vec<bool>]) -> Result<Self> {
        let n = rel.len();
        let mut up = Vec::with_capacity(n);
        for (i, row) in rel.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotSquare {
                    rows: n,
                    row: i,
                    cols: row.len(),
                });
            }
            let mut set = FixedBitSet::with_capacity(n);
            for (j, &b) in row.iter().enumerate() {
                set.set(j, b);
            }
            up.push(set);
        }
        Self::from_up_sets(up)
    }

    /// Builds a poset from up-sets: `up[i]` holds every `j` with `i ≤ j`.
    ///
    /// The relation must already be reflexive and transitive; it is
    /// checked against its own closure, never silently closed.
    pub fn from_up_sets(up: Vec<FixedBitSet>) -> Result<Self> {
        let n = up.len();
        for (i, set) in up.iter().enumerate() {
            if set.len() != n {
                return Err(Error::InvalidOrder(format!(
                    "up-set {i} has universe {} instead of {n}",
                    set.len()
                )));
            }
            if !set.contains(i) {
                return Err(Error::InvalidOrder(format!("{i} is not related to itself")));
            }
        }
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for (i, set) in up.iter().enumerate() {
            for j in set.ones() {
                if j != i && up[j].contains(i) {
                    return Err(Error::InvalidOrder(format!(
                        "antisymmetry fails for {i} and {j}"
                    )));
                }
                if !up[j].is_subset(set) {
                    return Err(Error::InvalidOrder(format!(
                        "relation is not transitively closed at {i} <= {j}"
                    )));
                }
                down[j].insert(i);
            }
        }
        Ok(Self { up, down })
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    pub fn up_set(&self, a: usize) -> &FixedBitSet {
        &self.up[a]
    }

    pub fn down_set(&self, a: usize) -> &FixedBitSet {
        &self.down[a]
    }

    /// Covering pairs `(lower, upper)`, sorted.
    pub fn covering_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.len() {
            for y in self.up[x].ones() {
                // x < y is a cover iff the interval [x, y] is just {x, y}
                if y != x && self.down[y].intersection_count(&self.up[x]) == 2 {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// A linear extension: ids sorted by down-set size, ties by id.
    fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&x| (self.down[x].count_ones(..), x));
        order
    }
}

/// A finite lattice with its Hasse diagram and meet/join tables.
#[derive(Debug, Clone)]
pub struct FiniteLattice {
    poset: FinitePoset,
    hasse: Vec<(usize, usize)>,
    lower_covers: Vec<Vec<usize>>,
    upper_covers: Vec<Vec<usize>>,
    meet: Vec<u32>,
    join: Vec<u32>,
    bottom: usize,
    top: usize,
}

impl FiniteLattice {
    /// Computes meets and joins, failing with a witness pair if some pair
    /// has no greatest lower or least upper bound.
    pub fn from_poset(poset: FinitePoset) -> Result<Self> {
        let n = poset.len();
        if n == 0 {
            return Err(Error::NotALattice(0, 0, "bottom"));
        }
        let hasse = poset.covering_pairs();
        let mut lower_covers = vec![Vec::new(); n];
        let mut upper_covers = vec![Vec::new(); n];
        for &(lo, hi) in &hasse {
            upper_covers[lo].push(hi);
            lower_covers[hi].push(lo);
        }
        let order = poset.linear_extension();
        let meet = bound_table(&poset, &order, &lower_covers, |p, a, b| p.leq(a, b), "meet")?;
        let rev: Vec<usize> = order.iter().rev().copied().collect();
        let join = bound_table(&poset, &rev, &upper_covers, |p, a, b| p.leq(b, a), "join")?;
        let bottom = (0..n).fold(0usize, |m, x| meet[m * n + x] as usize);
        let top = (0..n).fold(0usize, |j, x| join[j * n + x] as usize);
        Ok(Self {
            poset,
            hasse,
            lower_covers,
            upper_covers,
            meet,
            join,
            bottom,
            top,
        })
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.poset.leq(a, b)
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b] as usize
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b] as usize
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Covering pairs `(lower, upper)` sorted by lower then upper id.
    pub fn hasse_edges(&self) -> &[(usize, usize)] {
        &self.hasse
    }

    pub fn lower_covers(&self, a: usize) -> &[usize] {
        &self.lower_covers[a]
    }

    pub fn upper_covers(&self, a: usize) -> &[usize] {
        &self.upper_covers[a]
    }

    /// Length of the longest chain from the bottom to each element.
    pub fn ranks(&self) -> Vec<usize> {
        let mut rank = vec![0usize; self.len()];
        for x in self.poset.linear_extension() {
            rank[x] = self.lower_covers[x]
                .iter()
                .map(|&z| rank[z] + 1)
                .max()
                .unwrap_or(0);
        }
        rank
    }

    /// Checks the modular law `x ≤ z ⇒ x ∨ (y ∧ z) = (x ∨ y) ∧ z` for every
    /// triple.
    pub fn is_modular(&self) -> bool {
        self.modular_violation().is_none()
    }

    /// First triple `(x, y, z)` breaking the modular law, if any.
    pub fn modular_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.len();
        for x in 0..n {
            for z in self.poset.up_set(x).ones() {
                if z == x {
                    continue;
                }
                for y in 0..n {
                    if self.join(x, self.meet(y, z)) != self.meet(self.join(x, y), z) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    /// Isomorphism-invariant summary compared before any search.
    pub fn fingerprint(&self) -> Fingerprint {
        let ranks = self.ranks();
        let mut per_rank: Vec<(usize, usize, usize)> = (0..self.len())
            .map(|x| {
                (
                    ranks[x],
                    self.upper_covers[x].len(),
                    self.lower_covers[x].len(),
                )
            })
            .collect();
        per_rank.sort_unstable();
        Fingerprint {
            size: self.len(),
            per_rank,
        }
    }
}

/// Size plus the multiset of (rank, up-degree, down-degree) triples.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fingerprint {
    size: usize,
    per_rank: Vec<(usize, usize, usize)>,
}

/// Fills a meet (or, with the order reversed, join) table row by row in
/// linear-extension order. For incomparable `x, y` every common lower bound
/// lies below some lower cover `z` of `x`, so the meet is the greatest of
/// the already known `z ∧ y`.
fn bound_table(
    poset: &FinitePoset,
    order: &[usize],
    covers: &[Vec<usize>],
    below: impl Fn(&FinitePoset, usize, usize) -> bool,
    what: &'static str,
) -> Result<Vec<u32>> {
    let n = poset.len();
    let mut table = vec![u32::MAX; n * n];
    for &x in order {
        for y in 0..n {
            let v = if below(poset, x, y) {
                x
            } else if below(poset, y, x) {
                y
            } else {
                let mut best: Option<usize> = None;
                for &z in &covers[x] {
                    let c = table[z * n + y] as usize;
                    best = match best {
                        None => Some(c),
                        Some(b) if below(poset, b, c) => Some(c),
                        keep => keep,
                    };
                }
                let best = best.ok_or(Error::NotALattice(x, y, what))?;
                for &z in &covers[x] {
                    if !below(poset, table[z * n + y] as usize, best) {
                        return Err(Error::NotALattice(x, y, what));
                    }
                }
                best
            };
            table[x * n + y] = v as u32;
        }
    }
    Ok(table)
}

/// Whether an order-isomorphism between the two lattices exists.
pub fn are_isomorphic(a: &FiniteLattice, b: &FiniteLattice) -> bool {
    find_isomorphism(a, b).is_some()
}

/// Searches for an order-isomorphism `a → b`, returned as `map[x] = image`.
///
/// Fingerprints are compared first. The search itself is
/// individualization-refinement: colour both Hasse diagrams jointly by
/// rank, up/down-set sizes and degrees, refine by neighbour colours until
/// stable, then branch on the smallest non-singleton colour class. Any map
/// returned has been checked to preserve and reflect the order.
pub fn find_isomorphism(a: &FiniteLattice, b: &FiniteLattice) -> Option<Vec<usize>> {
    if a.len() != b.len() || a.fingerprint() != b.fingerprint() {
        return None;
    }
    let (mut ca, mut cb) = initial_colours(a, b);
    let map = search(a, b, &mut ca, &mut cb)?;
    is_order_isomorphism(a.poset(), b.poset(), &map).then_some(map)
}

/// Checks that `map` is a bijection with `x ≤ y ⇔ map[x] ≤ map[y]`.
pub fn is_order_isomorphism(a: &FinitePoset, b: &FinitePoset, map: &[usize]) -> bool {
    let n = a.len();
    if b.len() != n || map.len() != n {
        return false;
    }
    let mut seen = FixedBitSet::with_capacity(n);
    for &y in map {
        if y >= n || seen.put(y) {
            return false;
        }
    }
    (0..n).all(|x| {
        a.up_set(x).count_ones(..) == b.up_set(map[x]).count_ones(..)
            && a.up_set(x).ones().all(|y| b.leq(map[x], map[y]))
    })
}

fn initial_colours(a: &FiniteLattice, b: &FiniteLattice) -> (Vec<u32>, Vec<u32>) {
    let key = |l: &FiniteLattice| -> Vec<[usize; 5]> {
        let ranks = l.ranks();
        (0..l.len())
            .map(|x| {
                [
                    ranks[x],
                    l.poset.up_set(x).count_ones(..),
                    l.poset.down_set(x).count_ones(..),
                    l.upper_covers[x].len(),
                    l.lower_covers[x].len(),
                ]
            })
            .collect()
    };
    let (ka, kb) = (key(a), key(b));
    let mut all: Vec<[usize; 5]> = ka.iter().chain(kb.iter()).copied().collect();
    all.sort_unstable();
    all.dedup();
    let idx = |k: &[usize; 5]| all.binary_search(k).expect("key present") as u32;
    (ka.iter().map(idx).collect(), kb.iter().map(idx).collect())
}

/// Joint colour refinement. Returns `false` as soon as some colour class
/// has different sizes in the two diagrams.
fn refine(a: &FiniteLattice, b: &FiniteLattice, ca: &mut Vec<u32>, cb: &mut Vec<u32>) -> bool {
    const SEP: u32 = u32::MAX;
    let mut classes = distinct(ca, cb);
    loop {
        let keys = |l: &FiniteLattice, c: &[u32]| -> Vec<Vec<u32>> {
            (0..l.len())
                .map(|x| {
                    let mut up: Vec<u32> = l.upper_covers[x].iter().map(|&y| c[y]).collect();
                    let mut down: Vec<u32> = l.lower_covers[x].iter().map(|&y| c[y]).collect();
                    up.sort_unstable();
                    down.sort_unstable();
                    let mut k = Vec::with_capacity(up.len() + down.len() + 2);
                    k.push(c[x]);
                    k.extend(up);
                    k.push(SEP);
                    k.extend(down);
                    k
                })
                .collect()
        };
        let (ka, kb) = (keys(a, ca), keys(b, cb));
        let mut all: Vec<&Vec<u32>> = ka.iter().chain(kb.iter()).collect();
        all.sort_unstable();
        all.dedup();
        let idx = |k: &Vec<u32>| all.binary_search(&k).expect("key present") as u32;
        *ca = ka.iter().map(idx).collect();
        *cb = kb.iter().map(idx).collect();
        let mut count = vec![0i64; all.len()];
        for &c in ca.iter() {
            count[c as usize] += 1;
        }
        for &c in cb.iter() {
            count[c as usize] -= 1;
        }
        if count.iter().any(|&c| c != 0) {
            return false;
        }
        if all.len() == classes {
            return true;
        }
        classes = all.len();
    }
}

fn distinct(ca: &[u32], cb: &[u32]) -> usize {
    let mut all: Vec<u32> = ca.iter().chain(cb.iter()).copied().collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

fn search(
    a: &FiniteLattice,
    b: &FiniteLattice,
    ca: &mut Vec<u32>,
    cb: &mut Vec<u32>,
) -> Option<Vec<usize>> {
    if !refine(a, b, ca, cb) {
        return None;
    }
    let colours = ca.iter().copied().max().map_or(0, |m| m as usize + 1);
    let mut size = vec![0usize; colours];
    for &c in ca.iter() {
        size[c as usize] += 1;
    }
    // most constrained first: smallest class with a real choice, ties by colour
    let target = (0..colours)
        .filter(|&c| size[c] > 1)
        .min_by_key(|&c| (size[c], c));
    let Some(target) = target else {
        let mut inv = vec![usize::MAX; colours];
        for (y, &c) in cb.iter().enumerate() {
            inv[c as usize] = y;
        }
        return Some(ca.iter().map(|&c| inv[c as usize]).collect());
    };
    let x = ca.iter().position(|&c| c as usize == target)?;
    let fresh = colours as u32;
    for y in (0..cb.len()).filter(|&y| cb[y] as usize == target) {
        let mut na = ca.clone();
        let mut nb = cb.clone();
        na[x] = fresh;
        nb[y] = fresh;
        if let Some(map) = search(a, b, &mut na, &mut nb) {
            if is_order_isomorphism(a.poset(), b.poset(), &map) {
                return Some(map);
            }
        }
    }
    None
}
