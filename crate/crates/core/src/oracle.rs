//! Brute-force ground truth: explicit subgroups of `Z_{d1} × … × Z_{dk}`
//! found by closure, independent of the matrix description.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use crate::fundamental::{FundamentalLattice, SubgroupMatrix};
use crate::poset::{FiniteLattice, FinitePoset};
use crate::{Error, GroupSignature, Result};

/// Default upper bound on the group order for [`all_subgroups`].
pub const DEFAULT_ORDER_BOUND: u64 = 400;

/// A tuple of residues, coordinate `i` in `[0, d_i)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    pub coords: Vec<u64>,
}

/// A subgroup as an explicit, lexicographically sorted element list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupSet {
    elements: Vec<GroupElement>,
    mask: FixedBitSet,
}

impl SubgroupSet {
    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_subset(&self, other: &SubgroupSet) -> bool {
        self.mask.is_subset(&other.mask)
    }

    /// Validates an explicit element set: identity present, closed under
    /// addition and negation, size dividing the group order.
    pub fn from_elements(sig: &GroupSignature, elements: &[GroupElement]) -> Result<Self> {
        let g = Ambient::new(sig)?;
        let mut mask = FixedBitSet::with_capacity(g.order);
        for e in elements {
            mask.insert(g.encode(e)?);
        }
        let set = g.subgroup(mask);
        if !set.mask.contains(0) {
            return Err(Error::InvalidElement("subgroup lacks the identity".into()));
        }
        for x in set.mask.ones() {
            if !set.mask.contains(g.neg(x)) {
                return Err(Error::InvalidElement(format!(
                    "not closed under negation at {x}"
                )));
            }
            for y in set.mask.ones() {
                if !set.mask.contains(g.add(x, y)) {
                    return Err(Error::InvalidElement(format!(
                        "not closed under addition at {x} + {y}"
                    )));
                }
            }
        }
        if g.order % set.len() != 0 {
            return Err(Error::Internal(format!(
                "subgroup of size {} in a group of order {}",
                set.len(),
                g.order
            )));
        }
        Ok(set)
    }
}

/// Index arithmetic on `Z_{d1} × … × Z_{dk}`; coordinate 0 is the most
/// significant digit, so index order is lexicographic coordinate order.
struct Ambient {
    moduli: Vec<u64>,
    order: usize,
}

impl Ambient {
    fn new(sig: &GroupSignature) -> Result<Self> {
        let order = sig
            .order_u64()
            .and_then(|o| usize::try_from(o).ok())
            .ok_or_else(|| Error::InvalidSignature(format!("order of ({sig}) is too large")))?;
        Ok(Self {
            moduli: sig.factors().to_vec(),
            order,
        })
    }

    fn encode(&self, e: &GroupElement) -> Result<usize> {
        if e.coords.len() != self.moduli.len() {
            return Err(Error::InvalidElement(format!(
                "element has {} coordinates, expected {}",
                e.coords.len(),
                self.moduli.len()
            )));
        }
        let mut idx = 0usize;
        for (i, (&c, &d)) in e.coords.iter().zip(&self.moduli).enumerate() {
            if c >= d {
                return Err(Error::InvalidElement(format!(
                    "coordinate {} is {c}, outside [0, {d})",
                    i + 1
                )));
            }
            idx = idx * d as usize + c as usize;
        }
        Ok(idx)
    }

    fn decode(&self, mut idx: usize) -> GroupElement {
        let mut coords = vec![0u64; self.moduli.len()];
        for (c, &d) in coords.iter_mut().zip(&self.moduli).rev() {
            *c = (idx % d as usize) as u64;
            idx /= d as usize;
        }
        GroupElement { coords }
    }

    fn combine(&self, x: usize, y: usize, f: impl Fn(u64, u64, u64) -> u64) -> usize {
        let (mut x, mut y) = (x, y);
        let mut out = 0usize;
        let mut place = 1usize;
        for &d in self.moduli.iter().rev() {
            let d_us = d as usize;
            let r = f((x % d_us) as u64, (y % d_us) as u64, d);
            out += r as usize * place;
            place *= d_us;
            x /= d_us;
            y /= d_us;
        }
        out
    }

    fn add(&self, x: usize, y: usize) -> usize {
        self.combine(x, y, |a, b, d| (a + b) % d)
    }

    fn neg(&self, x: usize) -> usize {
        self.combine(x, 0, |a, _, d| (d - a) % d)
    }

    fn subgroup(&self, mask: FixedBitSet) -> SubgroupSet {
        SubgroupSet {
            elements: mask.ones().map(|i| self.decode(i)).collect(),
            mask,
        }
    }

    /// Smallest subgroup containing the generator indices.
    fn close(&self, generators: &[usize]) -> FixedBitSet {
        let mut mask = FixedBitSet::with_capacity(self.order);
        mask.insert(0);
        let mut stack = vec![0usize];
        while let Some(x) = stack.pop() {
            for &g in generators {
                let y = self.add(x, g);
                if !mask.put(y) {
                    stack.push(y);
                }
            }
        }
        mask
    }

    /// `⟨H ∪ {g}⟩`, built as the union of the cosets `H + t·g`.
    fn extend(&self, h: &FixedBitSet, g: usize) -> FixedBitSet {
        let members: Vec<usize> = h.ones().collect();
        let mut out = h.clone();
        let mut step = g;
        while !out.contains(step) {
            for &x in &members {
                out.insert(self.add(x, step));
            }
            step = self.add(step, g);
        }
        out
    }
}

/// The subgroup generated by `generators`.
pub fn closure(sig: &GroupSignature, generators: &[GroupElement]) -> Result<SubgroupSet> {
    let g = Ambient::new(sig)?;
    let gens = generators
        .iter()
        .map(|e| g.encode(e))
        .collect::<Result<Vec<_>>>()?;
    let mask = g.close(&gens);
    Ok(g.subgroup(mask))
}

/// Every subgroup exactly once, ordered by size and then by element list.
///
/// Fixpoint search: starting from the trivial subgroup, each known subgroup
/// `H` is extended by every `g ∉ H` until nothing new appears.
pub fn all_subgroups(sig: &GroupSignature, order_bound: u64) -> Result<Vec<SubgroupSet>> {
    match sig.order_u64() {
        Some(order) if order <= order_bound => {}
        order => {
            return Err(Error::ResourceLimit {
                order: order.unwrap_or(u64::MAX),
                bound: order_bound,
            })
        }
    }
    let g = Ambient::new(sig)?;
    // dedup on the element set itself
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let trivial = g.close(&[]);
    let mut queue = vec![trivial.clone()];
    let key = |m: &FixedBitSet| m.as_slice().to_vec();
    seen.insert(key(&trivial));
    let mut found = vec![trivial];
    while let Some(h) = queue.pop() {
        for x in 0..g.order {
            if h.contains(x) {
                continue;
            }
            let k = g.extend(&h, x);
            if seen.insert(key(&k)) {
                queue.push(k.clone());
                found.push(k);
            }
        }
    }
    found.sort_by(|a, b| {
        a.count_ones(..)
            .cmp(&b.count_ones(..))
            .then_with(|| a.ones().cmp(b.ones()))
    });
    Ok(found.into_iter().map(|m| g.subgroup(m)).collect())
}

/// Subgroups ordered by inclusion.
pub fn inclusion_lattice(subgroups: &[SubgroupSet]) -> Result<FiniteLattice> {
    let n = subgroups.len();
    let up = subgroups
        .iter()
        .map(|a| {
            let mut set = FixedBitSet::with_capacity(n);
            for (j, b) in subgroups.iter().enumerate() {
                set.set(j, a.is_subset(b));
            }
            set
        })
        .collect();
    FiniteLattice::from_poset(FinitePoset::from_up_sets(up)?)
}

/// Checks that lattice meets are intersections and joins are the closures
/// of unions, for every pair. Quadratic in closures; meant for small groups.
pub fn meets_and_joins_are_set_operations(
    sig: &GroupSignature,
    subgroups: &[SubgroupSet],
    lattice: &FiniteLattice,
) -> Result<bool> {
    let g = Ambient::new(sig)?;
    for (i, a) in subgroups.iter().enumerate() {
        for (j, b) in subgroups.iter().enumerate() {
            let mut inter = a.mask.clone();
            inter.intersect_with(&b.mask);
            if subgroups[lattice.meet(i, j)].mask != inter {
                return Ok(false);
            }
            let gens: Vec<usize> = a.mask.union(&b.mask).collect();
            if subgroups[lattice.join(i, j)].mask != g.close(&gens) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Which vectors of a matrix generate its subgroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Convention {
    /// Row `i` of `A`, reduced mod `d_j` in coordinate `j`.
    #[default]
    Rows,
    /// Column `j` of `A`, reduced mod `d_i` in coordinate `i`.
    Columns,
}

/// The subgroup generated by the images of the rows (or columns) of `m`.
pub fn matrix_subgroup(
    sig: &GroupSignature,
    m: &SubgroupMatrix,
    convention: Convention,
) -> Result<SubgroupSet> {
    let k = sig.k();
    if m.k() != k {
        return Err(Error::Dimension {
            expected: k,
            found: m.k(),
        });
    }
    let d = sig.factors();
    let gens: Vec<GroupElement> = (0..k)
        .map(|v| GroupElement {
            coords: (0..k)
                .map(|c| {
                    let entry = match convention {
                        Convention::Rows => m.get(v, c),
                        Convention::Columns => m.get(c, v),
                    };
                    entry.rem_euclid(d[c] as i64) as u64
                })
                .collect(),
        })
        .collect();
    closure(sig, &gens)
}

/// Checks that `A ↦ matrix_subgroup(A)` is a bijection onto `subgroups`
/// sending `≤` to inclusion and `subgroup_order` to cardinality. Returns a
/// description of the first failure.
pub fn correspondence_mismatch(
    lattice: &FundamentalLattice,
    subgroups: &[SubgroupSet],
    convention: Convention,
) -> Result<Option<String>> {
    let sig = &lattice.signature;
    if lattice.elements.len() != subgroups.len() {
        return Ok(Some(format!(
            "{} matrices but {} subgroups",
            lattice.elements.len(),
            subgroups.len()
        )));
    }
    let index: BTreeMap<Vec<usize>, usize> = subgroups
        .iter()
        .enumerate()
        .map(|(i, s)| (s.mask.ones().collect(), i))
        .collect();
    let mut image = Vec::with_capacity(subgroups.len());
    let mut hit = vec![false; subgroups.len()];
    for e in &lattice.elements {
        let s = matrix_subgroup(sig, &e.matrix, convention)?;
        let Some(&i) = index.get(&s.mask.ones().collect::<Vec<_>>()) else {
            return Ok(Some(format!("{} maps to a non-subgroup", e.matrix)));
        };
        if core::mem::replace(&mut hit[i], true) {
            return Ok(Some(format!(
                "{} maps to an already used subgroup",
                e.matrix
            )));
        }
        if s.len() as u64 != e.subgroup_order {
            return Ok(Some(format!(
                "{} has subgroup_order {} but generates {} elements",
                e.matrix,
                e.subgroup_order,
                s.len()
            )));
        }
        image.push(i);
    }
    let n = image.len();
    for a in 0..n {
        for b in 0..n {
            let by_matrix = lattice.lattice.leq(a, b);
            let by_sets = subgroups[image[a]].is_subset(&subgroups[image[b]]);
            if by_matrix != by_sets {
                return Ok(Some(format!(
                    "{} <= {} is {by_matrix} but inclusion is {by_sets}",
                    lattice.elements[a].matrix, lattice.elements[b].matrix
                )));
            }
        }
    }
    Ok(None)
}
