//! Catalog sweeps checking the structural claims about subgroup lattices of
//! finite abelian groups, each cross-checked by brute force where affordable.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::time::Duration;

use crate::equivalence::{is_lattice_determined, lattices_isomorphic, power_signature};
use crate::fundamental::{enumerate_capped, lattice_from_elements, FundamentalLattice};
use crate::oracle::{all_subgroups, correspondence_mismatch, inclusion_lattice, Convention};
use crate::poset::{are_isomorphic, Fingerprint};
use crate::{Error, GroupSignature, Result};

/// Exponent tuples in the power sweeps have at most this many entries.
pub const MAX_TUPLE_LEN: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TheoremId {
    /// `L(G)` is isomorphic to the fundamental lattice.
    A,
    /// The `~` criterion decides lattice isomorphism.
    B,
    /// Groups whose top factor brings no new prime are determined by `L(G)`.
    One,
    /// `L(G^n) ≅ L(H^n)` for some `n ≥ 2` forces `G ≅ H`.
    Two,
    /// `L(G^{m_i}) ≅ L(H^{n_i})` with `gcd(m) = gcd(n)` forces `G ≅ H`.
    Three,
}

impl TheoremId {
    pub fn name(self) -> &'static str {
        match self {
            TheoremId::A => "theorem-a",
            TheoremId::B => "theorem-b",
            TheoremId::One => "theorem-1",
            TheoremId::Two => "theorem-2",
            TheoremId::Three => "theorem-3",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        [Self::A, Self::B, Self::One, Self::Two, Self::Three]
            .into_iter()
            .find(|t| t.name() == name)
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub left: GroupSignature,
    pub right: GroupSignature,
    /// Exponents applied to `left` (empty when no powers are involved).
    pub left_exponents: Vec<u64>,
    pub right_exponents: Vec<u64>,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremReport {
    pub theorem: TheoremId,
    pub max_order: u64,
    pub cases: u64,
    /// Sorted by catalog position.
    pub counterexamples: Vec<Counterexample>,
    /// How many cases were also decided by brute force.
    pub oracle_checked: u64,
    /// Wall-clock time; filled in by callers that have a clock.
    pub elapsed: Option<Duration>,
}

impl TheoremReport {
    fn new(theorem: TheoremId, max_order: u64) -> Self {
        Self {
            theorem,
            max_order,
            cases: 0,
            counterexamples: Vec::new(),
            oracle_checked: 0,
            elapsed: None,
        }
    }

    pub fn pass(&self) -> bool {
        self.counterexamples.is_empty()
    }

    fn fail(
        &mut self,
        left: &GroupSignature,
        right: &GroupSignature,
        m: &[u64],
        n: &[u64],
        note: String,
    ) {
        self.counterexamples.push(Counterexample {
            left: left.clone(),
            right: right.clone(),
            left_exponents: m.to_vec(),
            right_exponents: n.to_vec(),
            note,
        });
    }
}

/// Limits on brute-force work inside the sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HarnessConfig {
    /// Largest group order handed to the subgroup oracle or built as a
    /// full lattice.
    pub oracle_order_bound: u64,
    /// Largest lattice (element count) built for a brute-force isomorphism
    /// check; bigger ones are left to the criterion alone.
    pub lattice_size_cap: usize,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        Self {
            oracle_order_bound: crate::oracle::DEFAULT_ORDER_BOUND,
            lattice_size_cap: 3000,
        }
    }
}

/// Fundamental lattices built on demand, keyed by signature.
pub struct LatticeCache {
    config: HarnessConfig,
    built: BTreeMap<GroupSignature, Option<(FundamentalLattice, Fingerprint)>>,
}

impl LatticeCache {
    pub fn new(config: HarnessConfig) -> Self {
        Self {
            config,
            built: BTreeMap::new(),
        }
    }

    /// The lattice of `sig`, or `None` if it exceeds the configured limits.
    pub fn get(&mut self, sig: &GroupSignature) -> Result<Option<&FundamentalLattice>> {
        self.ensure(sig)?;
        Ok(self.built[sig].as_ref().map(|(l, _)| l))
    }

    fn ensure(&mut self, sig: &GroupSignature) -> Result<()> {
        if self.built.contains_key(sig) {
            return Ok(());
        }
        let affordable = sig
            .order_u64()
            .is_some_and(|o| o <= self.config.oracle_order_bound);
        let entry = if affordable {
            match enumerate_capped(sig, self.config.lattice_size_cap)? {
                Some(elements) => {
                    let fl = lattice_from_elements(sig, elements)?;
                    let fp = fl.lattice.fingerprint();
                    Some((fl, fp))
                }
                None => None,
            }
        } else {
            None
        };
        self.built.insert(sig.clone(), entry);
        Ok(())
    }

    /// Brute-force lattice isomorphism, or `None` when either lattice is
    /// too big to build.
    pub fn isomorphic(&mut self, a: &GroupSignature, b: &GroupSignature) -> Result<Option<bool>> {
        self.ensure(a)?;
        self.ensure(b)?;
        let (Some((la, fa)), Some((lb, fb))) = (&self.built[a], &self.built[b]) else {
            return Ok(None);
        };
        if fa != fb {
            return Ok(Some(false));
        }
        Ok(Some(are_isomorphic(&la.lattice, &lb.lattice)))
    }
}

/// For each signature up to `max_order`: the fundamental lattice and the
/// oracle's subgroups agree in size, as abstract lattices, and through the
/// row correspondence.
pub fn verify_theorem_a(max_order: u64, config: HarnessConfig) -> Result<TheoremReport> {
    let mut report = TheoremReport::new(TheoremId::A, max_order);
    for sig in GroupSignature::catalog(max_order) {
        report.cases += 1;
        let elements = enumerate_capped(&sig, usize::MAX)?.expect("uncapped");
        let subgroups = all_subgroups(&sig, config.oracle_order_bound)?;
        report.oracle_checked += 1;
        if elements.len() != subgroups.len() {
            let note = format!(
                "{} matrices but {} subgroups",
                elements.len(),
                subgroups.len()
            );
            report.fail(&sig, &sig, &[], &[], note);
            continue;
        }
        let fl = lattice_from_elements(&sig, elements)?;
        let incl = inclusion_lattice(&subgroups)?;
        if !are_isomorphic(&fl.lattice, &incl) {
            report.fail(&sig, &sig, &[], &[], "lattices are not isomorphic".into());
        }
        if let Some(why) = correspondence_mismatch(&fl, &subgroups, Convention::Rows)? {
            report.fail(&sig, &sig, &[], &[], format!("row correspondence: {why}"));
        }
    }
    Ok(report)
}

/// For every unordered pair up to `max_order`: the `~` criterion agrees
/// with brute-force isomorphism of the fundamental lattices.
pub fn verify_theorem_b(max_order: u64, config: HarnessConfig) -> Result<TheoremReport> {
    let mut report = TheoremReport::new(TheoremId::B, max_order);
    let catalog = GroupSignature::catalog(max_order);
    let mut cache = LatticeCache::new(config);
    for (i, g) in catalog.iter().enumerate() {
        for h in &catalog[i..] {
            report.cases += 1;
            let criterion = lattices_isomorphic(g, h);
            if let Some(brute) = cache.isomorphic(g, h)? {
                report.oracle_checked += 1;
                if brute != criterion {
                    let note = format!("criterion says {criterion}, brute force says {brute}");
                    report.fail(g, h, &[], &[], note);
                }
            }
        }
    }
    Ok(report)
}

pub fn verify_theorem_1(max_order: u64, config: HarnessConfig) -> Result<TheoremReport> {
    verify_theorem_1_with(max_order, config, lattices_isomorphic)
}

/// [`verify_theorem_1`] with a pluggable isomorphism criterion.
///
/// Covers ordered pairs where at least one side is lattice-determined and
/// expects `criterion(G, H)` exactly when `G = H`.
pub fn verify_theorem_1_with(
    max_order: u64,
    config: HarnessConfig,
    criterion: impl Fn(&GroupSignature, &GroupSignature) -> bool,
) -> Result<TheoremReport> {
    let mut report = TheoremReport::new(TheoremId::One, max_order);
    let catalog = GroupSignature::catalog(max_order);
    let mut cache = LatticeCache::new(config);
    for g in &catalog {
        for h in &catalog {
            if !is_lattice_determined(g) && !is_lattice_determined(h) {
                continue;
            }
            report.cases += 1;
            let iso = criterion(g, h);
            if iso != (g == h) {
                report.fail(g, h, &[], &[], format!("criterion says isomorphic = {iso}"));
            }
            if let Some(brute) = cache.isomorphic(g, h)? {
                report.oracle_checked += 1;
                if brute != iso {
                    let note = format!("criterion says {iso}, brute force says {brute}");
                    report.fail(g, h, &[], &[], note);
                }
            }
        }
    }
    Ok(report)
}

/// For every unordered pair up to `max_order`: `L(G^n) ≅ L(H^n)` exactly
/// when `G = H`.
pub fn verify_theorem_2(max_order: u64, n: u64, config: HarnessConfig) -> Result<TheoremReport> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "power must be at least 2, got {n}"
        )));
    }
    let mut report = TheoremReport::new(TheoremId::Two, max_order);
    let catalog = GroupSignature::catalog(max_order);
    let powers = catalog
        .iter()
        .map(|s| power_signature(s, n))
        .collect::<Result<Vec<_>>>()?;
    let mut cache = LatticeCache::new(config);
    for i in 0..catalog.len() {
        for j in i..catalog.len() {
            let (g, h) = (&catalog[i], &catalog[j]);
            report.cases += 1;
            let iso = lattices_isomorphic(&powers[i], &powers[j]);
            if iso != (i == j) {
                report.fail(
                    g,
                    h,
                    &[n],
                    &[n],
                    format!("criterion says isomorphic = {iso}"),
                );
            }
            if let Some(brute) = cache.isomorphic(&powers[i], &powers[j])? {
                report.oracle_checked += 1;
                if brute != iso {
                    let note = format!("criterion says {iso}, brute force says {brute}");
                    report.fail(g, h, &[n], &[n], note);
                }
            }
        }
    }
    Ok(report)
}

/// `gcd` with Bézout coefficients: `Σ coeffs[i] · xs[i] = g`.
fn bezout(xs: &[u64]) -> (i64, Vec<i64>) {
    let mut g = 0i64;
    let mut coeffs: Vec<i64> = Vec::with_capacity(xs.len());
    for &x in xs {
        // extended Euclid on (g, x)
        let (mut r0, mut r1) = (g, x as i64);
        let (mut s0, mut s1) = (1i64, 0i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        for c in &mut coeffs {
            *c *= s0;
        }
        coeffs.push(t0);
        g = r0;
    }
    (g, coeffs)
}

/// Exponent tuples of length `1..=MAX_TUPLE_LEN` with entries in
/// `[2, max_exp]`, shortest first.
fn exponent_tuples(max_exp: u64) -> Vec<Vec<u64>> {
    let mut out: Vec<Vec<u64>> = Vec::new();
    if max_exp < 2 {
        return out;
    }
    let mut layer: Vec<Vec<u64>> = vec![Vec::new()];
    for _ in 0..MAX_TUPLE_LEN {
        layer = layer
            .iter()
            .flat_map(|t| {
                (2..=max_exp).map(move |e| {
                    let mut t = t.clone();
                    t.push(e);
                    t
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn gcd_of(xs: &[u64]) -> u64 {
    bezout(xs).0 as u64
}

/// `iso[g][h][m][n]` for single exponents, by the criterion, with brute-force
/// cross-checks counted into `report`.
struct PowerTable {
    exps: Vec<u64>,
    table: Vec<bool>,
}

impl PowerTable {
    fn build(
        catalog: &[GroupSignature],
        max_exp: u64,
        config: HarnessConfig,
        report: &mut TheoremReport,
    ) -> Result<Self> {
        let exps: Vec<u64> = (2..=max_exp).collect();
        let mut powers = Vec::with_capacity(catalog.len());
        for s in catalog {
            powers.push(
                exps.iter()
                    .map(|&e| power_signature(s, e))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        let mut cache = LatticeCache::new(config);
        let (c, e) = (catalog.len(), exps.len());
        let mut table = vec![false; c * c * e * e];
        for g in 0..c {
            for h in 0..c {
                for (mi, m) in exps.iter().enumerate() {
                    for (ni, n) in exps.iter().enumerate() {
                        let (pg, ph) = (&powers[g][mi], &powers[h][ni]);
                        let iso = lattices_isomorphic(pg, ph);
                        if let Some(brute) = cache.isomorphic(pg, ph)? {
                            report.oracle_checked += 1;
                            if brute != iso {
                                let note =
                                    format!("criterion says {iso}, brute force says {brute}");
                                report.fail(&catalog[g], &catalog[h], &[*m], &[*n], note);
                            }
                        }
                        table[((g * c + h) * e + mi) * e + ni] = iso;
                    }
                }
            }
        }
        Ok(Self { exps, table })
    }

    fn get(&self, c: usize, g: usize, h: usize, m: u64, n: u64) -> bool {
        let e = self.exps.len();
        let (mi, ni) = ((m - 2) as usize, (n - 2) as usize);
        self.table[((g * c + h) * e + mi) * e + ni]
    }
}

/// For all pairs up to `max_order` and exponent tuples `m`, `n` of equal
/// length with entries in `[2, max_exp]` and `gcd(m) = gcd(n)`: if every
/// `L(G^{m_i}) ≅ L(H^{n_i})` then `G = H`. The harness also replays the
/// Bézout argument that forces `k = k'`.
pub fn verify_theorem_3(
    max_order: u64,
    max_exp: u64,
    config: HarnessConfig,
) -> Result<TheoremReport> {
    if max_exp < 2 {
        return Err(Error::InvalidArgument(format!(
            "max exponent must be at least 2, got {max_exp}"
        )));
    }
    let mut report = TheoremReport::new(TheoremId::Three, max_order);
    let catalog = GroupSignature::catalog(max_order);
    let table = PowerTable::build(&catalog, max_exp, config, &mut report)?;
    let tuples = exponent_tuples(max_exp);
    let c = catalog.len();
    for g in 0..c {
        for h in g..c {
            let (sg, sh) = (&catalog[g], &catalog[h]);
            for m in &tuples {
                for n in tuples.iter().filter(|n| n.len() == m.len()) {
                    if gcd_of(m) != gcd_of(n) {
                        continue;
                    }
                    report.cases += 1;
                    let all_iso = m.iter().zip(n).all(|(&mi, &ni)| table.get(c, g, h, mi, ni));
                    if !all_iso {
                        continue;
                    }
                    if let Some(note) = replay_bezout(sg.k() as i64, sh.k() as i64, m, n) {
                        report.fail(sg, sh, m, n, note);
                    } else if sg != sh {
                        report.fail(sg, sh, m, n, "isomorphic power lattices but G != H".into());
                    }
                }
            }
        }
    }
    Ok(report)
}

/// From `k·m_i = k'·n_i` and `d = gcd(m) = Σ α_i m_i`, derive `k' | k`,
/// `k | k'`, hence `k = k'` and `m = n`. Returns the first failing step.
fn replay_bezout(k: i64, k2: i64, m: &[u64], n: &[u64]) -> Option<String> {
    for (&mi, &ni) in m.iter().zip(n) {
        if k * mi as i64 != k2 * ni as i64 {
            return Some(format!(
                "k*m_i = {} but k'*n_i = {}",
                k * mi as i64,
                k2 * ni as i64
            ));
        }
    }
    let (d, alpha) = bezout(m);
    let (d2, beta) = bezout(n);
    if d != d2 {
        return Some(format!("gcd(m) = {d} but gcd(n) = {d2}"));
    }
    // k·d = Σ α_i k m_i = k' Σ α_i n_i, and d | n_i
    let sum_n: i64 = alpha.iter().zip(n).map(|(&a, &ni)| a * ni as i64).sum();
    if k * d != k2 * sum_n || sum_n % d != 0 {
        return Some("Bezout identity for m does not transfer to n".into());
    }
    let sum_m: i64 = beta.iter().zip(m).map(|(&b, &mi)| b * mi as i64).sum();
    if k2 * d != k * sum_m || sum_m % d != 0 {
        return Some("Bezout identity for n does not transfer to m".into());
    }
    // k = k' · (sum_n / d) and k' = k · (sum_m / d)
    if k % k2 != 0 || k2 % k != 0 {
        return Some(format!("k = {k} and k' = {k2} do not divide each other"));
    }
    if m != n {
        return Some("k = k' but the exponent tuples differ".into());
    }
    None
}

/// One instance where non-isomorphic groups have isomorphic power lattices
/// for every paired exponent although `gcd(m) ≠ gcd(n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Finding {
    pub left: GroupSignature,
    pub right: GroupSignature,
    pub left_exponents: Vec<u64>,
    pub right_exponents: Vec<u64>,
    /// `power_signature(left, m_i)` for each `i`.
    pub left_powers: Vec<GroupSignature>,
    pub right_powers: Vec<GroupSignature>,
}

/// Collects evidence about which relations between the exponents could
/// replace `gcd(m) = gcd(n)`: every pair `G ≠ H` up to `max_order` and
/// every pair of equal-length exponent tuples with different gcds whose
/// power lattices are all isomorphic.
pub fn explore_open_problem(max_order: u64, max_exp: u64) -> Result<Vec<Finding>> {
    let catalog = GroupSignature::catalog(max_order);
    let tuples = exponent_tuples(max_exp);
    let mut findings = Vec::new();
    for (i, g) in catalog.iter().enumerate() {
        for h in &catalog[i + 1..] {
            for m in &tuples {
                for n in tuples.iter().filter(|n| n.len() == m.len()) {
                    if gcd_of(m) == gcd_of(n) {
                        continue;
                    }
                    let left_powers = m
                        .iter()
                        .map(|&e| power_signature(g, e))
                        .collect::<Result<Vec<_>>>()?;
                    let right_powers = n
                        .iter()
                        .map(|&e| power_signature(h, e))
                        .collect::<Result<Vec<_>>>()?;
                    if left_powers
                        .iter()
                        .zip(&right_powers)
                        .all(|(a, b)| lattices_isomorphic(a, b))
                    {
                        findings.push(Finding {
                            left: g.clone(),
                            right: h.clone(),
                            left_exponents: m.clone(),
                            right_exponents: n.clone(),
                            left_powers,
                            right_powers,
                        });
                    }
                }
            }
        }
    }
    Ok(findings)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(d: &[u64]) -> GroupSignature {
        GroupSignature::new(d.to_vec()).unwrap()
    }

    #[test]
    fn bezout_identity() {
        for xs in [&[4u64, 6][..], &[6, 10, 15], &[3], &[2, 2, 2], &[12, 18, 8]] {
            let (g, c) = bezout(xs);
            assert_eq!(
                g as u64,
                crate::arith::gcd_many(&xs.iter().map(|&x| x as i64).collect::<Vec<_>>()).unwrap()
            );
            let s: i64 = c.iter().zip(xs).map(|(&a, &x)| a * x as i64).sum();
            assert_eq!(s, g);
        }
    }

    #[test]
    fn tuples() {
        let t = exponent_tuples(3);
        assert_eq!(t.len(), 2 + 4 + 8);
        assert_eq!(t[0], vec![2]);
        assert!(exponent_tuples(1).is_empty());
    }

    #[test]
    fn bezout_replay_accepts_only_equal_k() {
        assert_eq!(replay_bezout(2, 2, &[2, 3], &[2, 3]), None);
        assert!(replay_bezout(2, 3, &[3], &[2]).is_some());
    }

    #[test]
    fn theorem_1_small() {
        let r = verify_theorem_1(4, HarnessConfig::default()).unwrap();
        assert!(r.pass());
        assert!(r.cases > 0);
        assert_eq!(r.oracle_checked, r.cases);
    }

    #[test]
    fn theorem_1_detects_a_broken_criterion() {
        let ignore_prefix =
            |g: &GroupSignature, h: &GroupSignature| g.k() == h.k() && g.top() == h.top();
        let r = verify_theorem_1_with(20, HarnessConfig::default(), ignore_prefix).unwrap();
        assert!(!r.pass());
    }

    #[test]
    fn theorem_2_instances() {
        let (g, h) = (sig(&[6]), sig(&[10]));
        assert!(lattices_isomorphic(&g, &h));
        let (g2, h2) = (
            power_signature(&g, 2).unwrap(),
            power_signature(&h, 2).unwrap(),
        );
        assert!(!lattices_isomorphic(&g2, &h2));
        let k = sig(&[2, 2]);
        assert!(lattices_isomorphic(
            &power_signature(&k, 3).unwrap(),
            &power_signature(&k, 3).unwrap()
        ));
        assert!(verify_theorem_2(12, 1, HarnessConfig::default()).is_err());
    }

    #[test]
    fn theorem_3_excluded_case() {
        let (g, h) = (sig(&[2, 2]), sig(&[2, 2, 2]));
        let (a, b) = (
            power_signature(&g, 3).unwrap(),
            power_signature(&h, 2).unwrap(),
        );
        assert_eq!(a, b);
        assert!(lattices_isomorphic(&a, &b));
        assert_ne!(gcd_of(&[3]), gcd_of(&[2]));
    }

    #[test]
    fn open_problem_bounds() {
        assert!(explore_open_problem(0, 5).unwrap().is_empty());
        assert!(explore_open_problem(4, 2).unwrap().is_empty());
        let f = explore_open_problem(8, 3).unwrap();
        assert!(f.iter().any(|f| f.left == sig(&[2, 2])
            && f.right == sig(&[2, 2, 2])
            && f.left_exponents == [3]
            && f.right_exponents == [2]));
    }

    #[test]
    fn names_round_trip() {
        for t in [
            TheoremId::A,
            TheoremId::B,
            TheoremId::One,
            TheoremId::Two,
            TheoremId::Three,
        ] {
            assert_eq!(TheoremId::from_name(t.name()), Some(t));
        }
        assert_eq!(TheoremId::from_name("theorem-4"), None);
    }
}
