//! The fundamental group lattice of a signature `(d1, …, dk)`.
//!
//! Its elements are upper-triangular `k×k` integer matrices `A` with
//! `0 ≤ a_ij < a_jj` above the diagonal whose rows generate a subgroup of
//! `Z^k` containing `d1 Z × … × dk Z`. Membership is tested column by
//! column: for each `j`, `a_jj` must divide `d_j` and every quotient
//!
//! ```text
//! Q(j, i) = d_i · det(rows i..j-1, cols i+1..j of A) / (a_ii ⋯ a_(j-1)(j-1))
//! ```
//!
//! for `i < j`. `A ≤ B` holds when, for each `j`, `b_jj` divides `a_jj` and
//! each
//!
//! ```text
//! E(i, j) / (b_ii ⋯ b_(j-1)(j-1))
//! ```
//!
//! where `E(i, j)` is the determinant with first row `a_i,i..j` followed by
//! rows `i..j-1` of `B` restricted to columns `i..j`.
//!
//! Both quotients are integers once the earlier columns pass; a remainder at
//! that point is reported as [`Error::Internal`].

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;

use crate::arith::{bareiss, divisors, Exact};
use crate::poset::{FiniteLattice, FinitePoset};
use crate::{Error, GroupSignature, Result};

/// Upper-triangular square matrix with `0 ≤ a_ij < a_jj` above the diagonal.
///
/// Ordering is lexicographic on the row-major entry list (for equal sizes).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubgroupMatrix {
    k: usize,
    entries: Vec<i64>,
}

impl SubgroupMatrix {
    /// Checks squareness and the triangular/reduced shape.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let k = square_dim(rows)?;
        let entries: Vec<i64> = rows.iter().flatten().copied().collect();
        if let Some(why) = shape_violation(&entries, k) {
            return Err(Error::NotAMember(why));
        }
        Ok(Self { k, entries })
    }

    /// Like [`from_rows`](Self::from_rows) but also requires membership in
    /// the lattice of `sig`.
    pub fn member_of(sig: &GroupSignature, rows: &[Vec<i64>]) -> Result<Self> {
        if !is_member(sig, rows)? {
            return Err(Error::NotAMember(format!(
                "matrix fails the divisibility conditions for ({sig})"
            )));
        }
        Self::from_rows(rows)
    }

    pub fn identity(k: usize) -> Self {
        let mut entries = vec![0; k * k];
        for i in 0..k {
            entries[i * k + i] = 1;
        }
        Self { k, entries }
    }

    /// `diag(d1, …, dk)`, the trivial subgroup.
    pub fn diagonal(sig: &GroupSignature) -> Self {
        let k = sig.k();
        let mut entries = vec![0; k * k];
        for (i, &d) in sig.factors().iter().enumerate() {
            entries[i * k + i] = d as i64;
        }
        Self { k, entries }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.k + j]
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.k).map(<[i64]>::to_vec).collect()
    }
}

/// Rows separated by `;`, entries by `,`, e.g. `1,1;0,2`.
impl fmt::Display for SubgroupMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (r, row) in self.entries.chunks(self.k).enumerate() {
            if r > 0 {
                f.write_str(";")?;
            }
            for (c, v) in row.iter().enumerate() {
                if c > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeElement {
    pub id: usize,
    pub matrix: SubgroupMatrix,
    /// `(d1 ⋯ dk) / (a_11 ⋯ a_kk)`.
    pub subgroup_order: u64,
}

/// Elements of the fundamental lattice together with the lattice itself;
/// lattice index `i` is element id `i`.
#[derive(Debug, Clone)]
pub struct FundamentalLattice {
    pub signature: GroupSignature,
    pub elements: Vec<LatticeElement>,
    pub lattice: FiniteLattice,
}

fn square_dim(rows: &[Vec<i64>]) -> Result<usize> {
    let k = rows.len();
    if k == 0 {
        return Err(Error::Empty("matrix with no rows"));
    }
    for (row, r) in rows.iter().enumerate() {
        if r.len() != k {
            return Err(Error::NotSquare {
                rows: k,
                row,
                cols: r.len(),
            });
        }
    }
    Ok(k)
}

fn shape_violation(a: &[i64], k: usize) -> Option<alloc::string::String> {
    for i in 0..k {
        for j in 0..k {
            let v = a[i * k + j];
            if i > j && v != 0 {
                return Some(format!(
                    "entry ({},{}) below the diagonal is {v}",
                    i + 1,
                    j + 1
                ));
            }
            if i == j && v < 1 {
                return Some(format!("diagonal entry ({0},{0}) is {v}", i + 1));
            }
            if i < j && !(0 <= v && v < a[j * k + j]) {
                return Some(format!(
                    "entry ({},{}) = {v} is outside [0, {})",
                    i + 1,
                    j + 1,
                    a[j * k + j]
                ));
            }
        }
    }
    None
}

enum Verdict {
    Holds,
    Fails,
    /// `(i, j)`, zero-based, of the offending quotient.
    NonIntegral(usize, usize),
}

/// Reusable buffer for the `i128` determinant fast path.
#[derive(Default)]
struct Scratch {
    small: Vec<i128>,
}

impl Scratch {
    /// Runs `f` on the `i128` path, falling back to big integers on overflow.
    fn eval(
        &mut self,
        f_small: impl FnOnce(&mut Vec<i128>) -> Option<Verdict>,
        f_big: impl FnOnce(&mut Vec<BigInt>) -> Option<Verdict>,
    ) -> Verdict {
        if let Some(v) = f_small(&mut self.small) {
            return v;
        }
        f_big(&mut Vec::new()).expect("big integer arithmetic does not overflow")
    }
}

/// Divisibility test of column `j` for membership, on the row-major `k×k` buffer `a`.
fn member_column<T: Exact>(
    d: &[u64],
    a: &[i64],
    k: usize,
    j: usize,
    buf: &mut Vec<T>,
) -> Option<Verdict> {
    let ajj = T::from_i64(a[j * k + j]);
    if !ajj.divides(&T::from_i64(d[j] as i64)) {
        return Some(Verdict::Fails);
    }
    let mut den = T::from_i64(1);
    for i in (0..j).rev() {
        den = den.mul(&T::from_i64(a[i * k + i]))?;
        let m = j - i;
        buf.clear();
        for r in i..j {
            for c in i + 1..=j {
                buf.push(T::from_i64(a[r * k + c]));
            }
        }
        let num = T::from_i64(d[i] as i64).mul(&bareiss(buf, m)?)?;
        match num.div_exact(&den)? {
            Ok(q) if ajj.divides(&q) => {}
            Ok(_) => return Some(Verdict::Fails),
            Err(()) => return Some(Verdict::NonIntegral(i, j)),
        }
    }
    Some(Verdict::Holds)
}

/// Divisibility test of column `j` for `A ≤ B`.
fn leq_column<T: Exact>(
    a: &[i64],
    b: &[i64],
    k: usize,
    j: usize,
    buf: &mut Vec<T>,
) -> Option<Verdict> {
    let bjj = T::from_i64(b[j * k + j]);
    if !bjj.divides(&T::from_i64(a[j * k + j])) {
        return Some(Verdict::Fails);
    }
    let mut den = T::from_i64(1);
    for i in (0..j).rev() {
        den = den.mul(&T::from_i64(b[i * k + i]))?;
        let m = j - i + 1;
        buf.clear();
        for c in i..=j {
            buf.push(T::from_i64(a[i * k + c]));
        }
        for r in i..j {
            for c in i..=j {
                buf.push(T::from_i64(b[r * k + c]));
            }
        }
        match bareiss(buf, m)?.div_exact(&den)? {
            Ok(q) if bjj.divides(&q) => {}
            Ok(_) => return Some(Verdict::Fails),
            Err(()) => return Some(Verdict::NonIntegral(i, j)),
        }
    }
    Some(Verdict::Holds)
}

fn non_integral(what: &str, i: usize, j: usize) -> Error {
    Error::Internal(format!(
        "{what} quotient for (i={}, j={}) is not an integer although earlier columns passed",
        i + 1,
        j + 1
    ))
}

fn members_iii(d: &[u64], a: &[i64], k: usize, scratch: &mut Scratch) -> Result<bool> {
    for j in 0..k {
        match scratch.eval(
            |b| member_column(d, a, k, j, b),
            |b| member_column(d, a, k, j, b),
        ) {
            Verdict::Holds => {}
            Verdict::Fails => return Ok(false),
            Verdict::NonIntegral(i, j) => return Err(non_integral("membership", i, j)),
        }
    }
    Ok(true)
}

fn leq_entries(a: &[i64], b: &[i64], k: usize, scratch: &mut Scratch) -> Result<bool> {
    // the diagonal conditions alone reject most pairs
    if (0..k).any(|j| a[j * k + j] % b[j * k + j] != 0) {
        return Ok(false);
    }
    for j in 1..k {
        match scratch.eval(|s| leq_column(a, b, k, j, s), |s| leq_column(a, b, k, j, s)) {
            Verdict::Holds => {}
            Verdict::Fails => return Ok(false),
            Verdict::NonIntegral(i, j) => return Err(non_integral("order", i, j)),
        }
    }
    Ok(true)
}

/// Whether `rows` belongs to the fundamental lattice of `sig`.
///
/// Shape violations (nonzero below the diagonal, diagonal `< 1`,
/// off-diagonal outside `[0, a_jj)`) give `Ok(false)`; a matrix of the wrong
/// size is an error.
pub fn is_member(sig: &GroupSignature, rows: &[Vec<i64>]) -> Result<bool> {
    let k = square_dim(rows)?;
    if k != sig.k() {
        return Err(Error::Dimension {
            expected: sig.k(),
            found: k,
        });
    }
    let a: Vec<i64> = rows.iter().flatten().copied().collect();
    if shape_violation(&a, k).is_some() {
        return Ok(false);
    }
    members_iii(sig.factors(), &a, k, &mut Scratch::default())
}

/// `A ≤ B` in the lattice of `sig`, i.e. the subgroup of `A` lies inside
/// that of `B`. Both matrices must be members.
pub fn leq(sig: &GroupSignature, a: &SubgroupMatrix, b: &SubgroupMatrix) -> Result<bool> {
    for m in [a, b] {
        if !is_member(sig, &m.rows())? {
            return Err(Error::NotAMember(format!(
                "{m} is not in the lattice of ({sig})"
            )));
        }
    }
    leq_entries(&a.entries, &b.entries, a.k, &mut Scratch::default())
}

/// All members of the lattice of `sig`, sorted row-major lexicographically,
/// with ids in that order.
pub fn enumerate(sig: &GroupSignature) -> Result<Vec<LatticeElement>> {
    Ok(enumerate_capped(sig, usize::MAX)?.expect("no cap"))
}

/// Like [`enumerate`], but gives up with `Ok(None)` once more than `cap`
/// members have been found.
pub fn enumerate_capped(sig: &GroupSignature, cap: usize) -> Result<Option<Vec<LatticeElement>>> {
    let order = sig
        .order_u64()
        .ok_or_else(|| Error::InvalidSignature(format!("order of ({sig}) exceeds 64 bits")))?;
    let k = sig.k();
    let d = sig.factors();
    let divs: Vec<Vec<u64>> = d.iter().map(|&x| divisors(x)).collect::<Result<_>>()?;
    let mut search = Enumeration {
        d,
        k,
        divs: &divs,
        cap,
        a: vec![0; k * k],
        out: Vec::new(),
        scratch: Scratch::default(),
    };
    if !search.column(0)? {
        return Ok(None);
    }
    let mut found = search.out;
    found.sort_unstable();
    Ok(Some(
        found
            .into_iter()
            .enumerate()
            .map(|(id, matrix)| {
                let diag: u64 = (0..k).map(|i| matrix.get(i, i) as u64).product();
                LatticeElement {
                    id,
                    subgroup_order: order / diag,
                    matrix,
                }
            })
            .collect(),
    ))
}

struct Enumeration<'a> {
    d: &'a [u64],
    k: usize,
    divs: &'a [Vec<u64>],
    cap: usize,
    a: Vec<i64>,
    out: Vec<SubgroupMatrix>,
    scratch: Scratch,
}

impl Enumeration<'_> {
    /// Fills column `j` and recurses; `Ok(false)` once the cap is exceeded.
    fn column(&mut self, j: usize) -> Result<bool> {
        let k = self.k;
        if j == k {
            self.out.push(SubgroupMatrix {
                k,
                entries: self.a.clone(),
            });
            return Ok(self.out.len() <= self.cap);
        }
        for &diag in &self.divs[j] {
            self.a[j * k + j] = diag as i64;
            for i in 0..j {
                self.a[i * k + j] = 0;
            }
            loop {
                let (d, a) = (self.d, &self.a);
                match self.scratch.eval(
                    |b| member_column(d, a, k, j, b),
                    |b| member_column(d, a, k, j, b),
                ) {
                    Verdict::Holds => {
                        if !self.column(j + 1)? {
                            return Ok(false);
                        }
                    }
                    Verdict::Fails => {}
                    Verdict::NonIntegral(i, j) => return Err(non_integral("membership", i, j)),
                }
                // odometer over the off-diagonal entries of column j
                let mut i = 0;
                while i < j {
                    let e = &mut self.a[i * k + j];
                    *e += 1;
                    if *e < diag as i64 {
                        break;
                    }
                    *e = 0;
                    i += 1;
                }
                if i == j {
                    break;
                }
            }
        }
        for i in 0..=j {
            self.a[i * k + j] = 0;
        }
        Ok(true)
    }
}

/// Order relation over a list of members of one lattice, as up-sets.
fn order_up_sets(elements: &[LatticeElement]) -> Result<Vec<FixedBitSet>> {
    let n = elements.len();
    let mut scratch = Scratch::default();
    let mut up = Vec::with_capacity(n);
    for a in elements {
        let mut set = FixedBitSet::with_capacity(n);
        for b in elements {
            if leq_entries(
                &a.matrix.entries,
                &b.matrix.entries,
                a.matrix.k,
                &mut scratch,
            )? {
                set.insert(b.id);
            }
        }
        up.push(set);
    }
    Ok(up)
}

/// Enumerates the lattice of `sig`, computes the full order, the Hasse
/// diagram and meet/join tables, and checks the lattice axioms and the
/// modular law.
pub fn build_lattice(sig: &GroupSignature) -> Result<FundamentalLattice> {
    let elements = enumerate(sig)?;
    lattice_from_elements(sig, elements)
}

pub(crate) fn lattice_from_elements(
    sig: &GroupSignature,
    elements: Vec<LatticeElement>,
) -> Result<FundamentalLattice> {
    let poset = FinitePoset::from_up_sets(order_up_sets(&elements)?)
        .map_err(|e| Error::Internal(format!("order on ({sig}) is not a partial order: {e}")))?;
    let lattice = FiniteLattice::from_poset(poset)
        .map_err(|e| Error::Internal(format!("order on ({sig}) is not a lattice: {e}")))?;
    if let Some((x, y, z)) = lattice.modular_violation() {
        return Err(Error::Internal(format!(
            "lattice of ({sig}) breaks the modular law at ({x}, {y}, {z})"
        )));
    }
    let top = SubgroupMatrix::identity(sig.k());
    let bottom = SubgroupMatrix::diagonal(sig);
    if elements[lattice.top()].matrix != top || elements[lattice.bottom()].matrix != bottom {
        return Err(Error::Internal(format!(
            "lattice of ({sig}) has unexpected top or bottom"
        )));
    }
    Ok(FundamentalLattice {
        signature: sig.clone(),
        elements,
        lattice,
    })
}
