//! Finite posets, their downset lattices, and ingestion of hand-built
//! distributive lattices into that canonical form.
//!
//! Every finite distributive lattice is the lattice of downsets of its poset
//! of join-irreducibles. A [`FiniteFrame`] stores exactly that presentation:
//! elements are downsets encoded as `u64` bitmasks over the poset, so binary
//! meet and join are bitwise intersection and union.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::caps::caps;

/// Index of an element in a frame's canonical element order.
pub type Elem = usize;

/// Largest poset a bitmask element can address.
pub const MAX_POSET: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("relation is not square: row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("relation is not reflexive at {0}")]
    NotReflexive(usize),
    #[error("relation is not antisymmetric: {0} <= {1} and {1} <= {0}")]
    NotAntisymmetric(usize, usize),
    #[error("relation is not transitive: {0} <= {1} <= {2} but not {0} <= {2}")]
    NotTransitive(usize, usize, usize),
    #[error("{what} needs {needed} but the cap is {cap}")]
    SizeCap {
        what: &'static str,
        needed: usize,
        cap: usize,
    },
    #[error("tables do not define a lattice: {0}")]
    NotALattice(String),
    #[error("lattice is not distributive: {a} ∧ ({b} ∨ {c}) ≠ ({a} ∧ {b}) ∨ ({a} ∧ {c})")]
    NotDistributive { a: usize, b: usize, c: usize },
}

/// A finite partial order on `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    le: Vec<Vec<bool>>,
    down: Vec<u64>,
    up: Vec<u64>,
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut rel = Vec::new();
        for i in 0..self.n() {
            for j in 0..self.n() {
                if i != j && self.le(i, j) {
                    rel.push((i, j));
                }
            }
        }
        f.debug_struct("Poset")
            .field("n", &self.n())
            .field("lt", &rel)
            .finish()
    }
}

/// Checks that `relation` is a partial order and wraps it.
pub fn validate_poset(relation: Vec<Vec<bool>>) -> Result<Poset, OrderError> {
    let n = relation.len();
    for (row, r) in relation.iter().enumerate() {
        if r.len() != n {
            return Err(OrderError::NotSquare {
                row,
                len: r.len(),
                n,
            });
        }
    }
    if n > MAX_POSET {
        return Err(OrderError::SizeCap {
            what: "poset elements",
            needed: n,
            cap: MAX_POSET,
        });
    }
    for i in 0..n {
        if !relation[i][i] {
            return Err(OrderError::NotReflexive(i));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if relation[i][j] && relation[j][i] {
                return Err(OrderError::NotAntisymmetric(i, j));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if !relation[i][j] {
                continue;
            }
            for k in 0..n {
                if relation[j][k] && !relation[i][k] {
                    return Err(OrderError::NotTransitive(i, j, k));
                }
            }
        }
    }
    Ok(Poset::from_valid(relation))
}

impl Poset {
    fn from_valid(le: Vec<Vec<bool>>) -> Poset {
        let n = le.len();
        let mut down = vec![0u64; n];
        let mut up = vec![0u64; n];
        for i in 0..n {
            for j in 0..n {
                if le[i][j] {
                    down[j] |= 1 << i;
                    up[i] |= 1 << j;
                }
            }
        }
        Poset { le, down, up }
    }

    pub fn antichain(n: usize) -> Poset {
        let le = (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect();
        Poset::from_valid(le)
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Poset {
        let le = (0..n).map(|i| (0..n).map(|j| i <= j).collect()).collect();
        Poset::from_valid(le)
    }

    /// Order generated by the strict relations `lt` (reflexive-transitive closure).
    pub fn from_relations(n: usize, lt: &[(usize, usize)]) -> Result<Poset, OrderError> {
        let mut le: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect();
        for &(a, b) in lt {
            le[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if le[i][k] {
                    for j in 0..n {
                        if le[k][j] {
                            le[i][j] = true;
                        }
                    }
                }
            }
        }
        validate_poset(le)
    }

    pub fn n(&self) -> usize {
        self.le.len()
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        self.le[i][j]
    }

    pub fn relation(&self) -> &[Vec<bool>] {
        &self.le
    }

    /// Bitmask of `↓i`.
    pub fn down_mask(&self, i: usize) -> u64 {
        self.down[i]
    }

    /// Bitmask of `↑i`.
    pub fn up_mask(&self, i: usize) -> u64 {
        self.up[i]
    }

    pub fn full_mask(&self) -> u64 {
        mask_of(self.n())
    }

    pub fn is_antichain(&self) -> bool {
        (0..self.n()).all(|i| self.down[i] == 1 << i)
    }

    pub fn is_downset(&self, mask: u64) -> bool {
        bits(mask).all(|i| self.down[i] & !mask == 0)
    }

    /// Smallest downset containing `mask`.
    pub fn down_closure(&self, mask: u64) -> u64 {
        bits(mask).fold(0, |acc, i| acc | self.down[i])
    }

    /// Smallest upset containing `mask`.
    pub fn up_closure(&self, mask: u64) -> u64 {
        bits(mask).fold(0, |acc, i| acc | self.up[i])
    }

    /// Maximal elements of the subset `mask`.
    pub fn maximal_in(&self, mask: u64) -> u64 {
        bits(mask)
            .filter(|&i| self.up[i] & mask == 1 << i)
            .fold(0, |acc, i| acc | 1 << i)
    }

    /// Minimal elements of the subset `mask`.
    pub fn minimal_in(&self, mask: u64) -> u64 {
        bits(mask)
            .filter(|&i| self.down[i] & mask == 1 << i)
            .fold(0, |acc, i| acc | 1 << i)
    }

    /// Relabels the poset: new element `k` is old element `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Poset {
        let n = self.n();
        let le = (0..n)
            .map(|i| (0..n).map(|j| self.le[perm[i]][perm[j]]).collect())
            .collect();
        Poset::from_valid(le)
    }

    /// Induced suborder on the listed elements, in the listed order.
    pub fn induced(&self, elems: &[usize]) -> Poset {
        self.permuted_partial(elems)
    }

    fn permuted_partial(&self, elems: &[usize]) -> Poset {
        let le = elems
            .iter()
            .map(|&i| elems.iter().map(|&j| self.le[i][j]).collect())
            .collect();
        Poset::from_valid(le)
    }
}

#[derive(Serialize, Deserialize)]
struct PosetDoc {
    n: usize,
    le: Vec<Vec<bool>>,
}

impl Serialize for Poset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PosetDoc {
            n: self.n(),
            le: self.le.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poset {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Poset, D::Error> {
        let doc = PosetDoc::deserialize(d)?;
        if doc.le.len() != doc.n {
            return Err(serde::de::Error::custom(format!(
                "poset has n = {} but {} rows",
                doc.n,
                doc.le.len()
            )));
        }
        validate_poset(doc.le).map_err(serde::de::Error::custom)
    }
}

pub(crate) fn mask_of(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterator over the set bits of a mask.
pub fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

/// Canonical element order: by popcount, then by integer value of the mask.
pub fn canonical_cmp(a: u64, b: u64) -> Ordering {
    a.count_ones().cmp(&b.count_ones()).then(a.cmp(&b))
}

struct FrameData {
    jposet: Poset,
    elems: Vec<u64>,
    index: HashMap<u64, Elem>,
}

/// A finite frame in Birkhoff form: the downsets of a poset of
/// join-irreducibles, canonically sorted.
///
/// Cloning is cheap; the carrier is shared.
#[derive(Clone)]
pub struct FiniteFrame {
    data: Arc<FrameData>,
}

impl PartialEq for FiniteFrame {
    fn eq(&self, other: &Self) -> bool {
        self.data.jposet == other.data.jposet
    }
}

impl Eq for FiniteFrame {}

impl fmt::Debug for FiniteFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteFrame")
            .field("jposet", &self.data.jposet)
            .field("len", &self.len())
            .finish()
    }
}

#[derive(Serialize, Deserialize)]
struct FrameDoc {
    poset: Poset,
}

impl Serialize for FiniteFrame {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        FrameDoc {
            poset: self.data.jposet.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FiniteFrame {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<FiniteFrame, D::Error> {
        let doc = FrameDoc::deserialize(d)?;
        downset_frame(&doc.poset).map_err(serde::de::Error::custom)
    }
}

/// All downsets of `p`, failing once more than `cap` have been produced.
pub fn downsets(p: &Poset, cap: usize) -> Result<Vec<u64>, OrderError> {
    // Elements in a linear extension order: an element is added only once
    // everything below it is present.
    let n = p.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| p.down_mask(i).count_ones());
    let mut out = Vec::new();
    let mut stack = vec![(0usize, 0u64)];
    while let Some((k, mask)) = stack.pop() {
        if k == n {
            if out.len() >= cap {
                return Err(OrderError::SizeCap {
                    what: "downset lattice",
                    needed: cap + 1,
                    cap,
                });
            }
            out.push(mask);
            continue;
        }
        let x = order[k];
        stack.push((k + 1, mask));
        let below = p.down_mask(x) & !(1 << x);
        if below & !mask == 0 {
            stack.push((k + 1, mask | 1 << x));
        }
    }
    Ok(out)
}

/// The frame of downsets of `p`, with the process-wide size cap.
pub fn downset_frame(p: &Poset) -> Result<FiniteFrame, OrderError> {
    downset_frame_capped(p, caps().frame)
}

pub fn downset_frame_capped(p: &Poset, cap: usize) -> Result<FiniteFrame, OrderError> {
    let mut elems = downsets(p, cap)?;
    elems.sort_by(|&a, &b| canonical_cmp(a, b));
    let index = elems.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    Ok(FiniteFrame {
        data: Arc::new(FrameData {
            jposet: p.clone(),
            elems,
            index,
        }),
    })
}

impl FiniteFrame {
    /// The one-element frame, `0 = 1`.
    pub fn one() -> FiniteFrame {
        downset_frame_capped(&Poset::antichain(0), 1).expect("one element")
    }

    /// The two-element frame `0 < 1`.
    pub fn two() -> FiniteFrame {
        downset_frame_capped(&Poset::chain(1), 2).expect("two elements")
    }

    /// The chain with `n` elements.
    pub fn chain(n: usize) -> FiniteFrame {
        assert!(n >= 1);
        downset_frame_capped(&Poset::chain(n - 1), n).expect("chain")
    }

    /// The Boolean algebra with `k` atoms.
    pub fn boolean(k: usize) -> FiniteFrame {
        downset_frame_capped(&Poset::antichain(k), usize::MAX).expect("boolean")
    }

    pub fn jposet(&self) -> &Poset {
        &self.data.jposet
    }

    pub fn len(&self) -> usize {
        self.data.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.len()
    }

    pub fn bottom(&self) -> Elem {
        0
    }

    pub fn top(&self) -> Elem {
        self.len() - 1
    }

    pub fn bits(&self, e: Elem) -> u64 {
        self.data.elems[e]
    }

    pub fn index_of(&self, mask: u64) -> Option<Elem> {
        self.data.index.get(&mask).copied()
    }

    fn at(&self, mask: u64) -> Elem {
        self.data.index[&mask]
    }

    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.at(self.bits(a) & self.bits(b))
    }

    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.at(self.bits(a) | self.bits(b))
    }

    pub fn le(&self, a: Elem, b: Elem) -> bool {
        self.bits(a) & !self.bits(b) == 0
    }

    pub fn lt(&self, a: Elem, b: Elem) -> bool {
        a != b && self.le(a, b)
    }

    pub fn join_all<I: IntoIterator<Item = Elem>>(&self, it: I) -> Elem {
        self.at(it.into_iter().fold(0, |acc, e| acc | self.bits(e)))
    }

    pub fn meet_all<I: IntoIterator<Item = Elem>>(&self, it: I) -> Elem {
        let full = self.data.jposet.full_mask();
        self.at(it.into_iter().fold(full, |acc, e| acc & self.bits(e)))
    }

    /// `a → b`, the largest `c` with `c ∧ a ≤ b`.
    pub fn heyting(&self, a: Elem, b: Elem) -> Elem {
        let p = &self.data.jposet;
        let bad = p.up_closure(self.bits(a) & !self.bits(b));
        self.at(p.full_mask() & !bad)
    }

    /// Pseudocomplement `a → 0`.
    pub fn pseudocomplement(&self, a: Elem) -> Elem {
        self.heyting(a, self.bottom())
    }

    /// The complement of `a`, if it has one.
    pub fn complement(&self, a: Elem) -> Option<Elem> {
        self.index_of(self.data.jposet.full_mask() & !self.bits(a))
    }

    pub fn lower_covers(&self, e: Elem) -> Vec<Elem> {
        let m = self.bits(e);
        bits(self.data.jposet.maximal_in(m))
            .map(|i| self.at(m & !(1 << i)))
            .collect()
    }

    pub fn upper_covers(&self, e: Elem) -> Vec<Elem> {
        let p = &self.data.jposet;
        let m = self.bits(e);
        bits(p.minimal_in(p.full_mask() & !m))
            .map(|i| self.at(m | 1 << i))
            .collect()
    }

    /// All covering pairs `(a, b)` with `a ≺ b`.
    pub fn covering_pairs(&self) -> Vec<(Elem, Elem)> {
        let mut out = Vec::new();
        for b in self.elements() {
            for a in self.lower_covers(b) {
                out.push((a, b));
            }
        }
        out.sort_unstable();
        out
    }

    /// `↓p` for a join-irreducible poset element `p`.
    pub fn principal(&self, p: usize) -> Elem {
        self.at(self.data.jposet.down_mask(p))
    }

    pub fn is_boolean(&self) -> bool {
        self.data.jposet.is_antichain()
    }
}

/// Elements with exactly one lower cover, in canonical element order.
pub fn join_irreducibles(f: &FiniteFrame) -> Vec<Elem> {
    f.elements()
        .filter(|&e| f.lower_covers(e).len() == 1)
        .collect()
}

/// The join-irreducibles of `f` with their induced order, as a poset whose
/// element `k` is the `k`-th join-irreducible.
pub fn join_irreducible_poset(f: &FiniteFrame) -> Poset {
    let js = join_irreducibles(f);
    let le = js
        .iter()
        .map(|&a| js.iter().map(|&b| f.le(a, b)).collect())
        .collect();
    Poset::from_valid(le)
}

/// Heyting implication on a frame.
pub fn heyting_implication(f: &FiniteFrame, a: Elem, b: Elem) -> Elem {
    f.heyting(a, b)
}

/// Ingests a lattice given by meet and join tables, validating the lattice
/// axioms and distributivity, and returns its Birkhoff form together with
/// the map from input indices to canonical elements.
pub fn lattice_from_tables(
    meet: &[Vec<usize>],
    join: &[Vec<usize>],
) -> Result<(FiniteFrame, Vec<Elem>), OrderError> {
    let n = meet.len();
    if n == 0 {
        return Err(OrderError::NotALattice("empty carrier".into()));
    }
    for (name, t) in [("meet", meet), ("join", join)] {
        if t.len() != n || t.iter().any(|r| r.len() != n) {
            return Err(OrderError::NotALattice(format!("{name} table is not {n}×{n}")));
        }
        if t.iter().flatten().any(|&v| v >= n) {
            return Err(OrderError::NotALattice(format!("{name} table leaves the carrier")));
        }
    }
    for a in 0..n {
        if meet[a][a] != a || join[a][a] != a {
            return Err(OrderError::NotALattice(format!("{a} is not idempotent")));
        }
        for b in 0..n {
            if meet[a][b] != meet[b][a] || join[a][b] != join[b][a] {
                return Err(OrderError::NotALattice(format!("({a}, {b}) not commutative")));
            }
            if meet[a][join[a][b]] != a || join[a][meet[a][b]] != a {
                return Err(OrderError::NotALattice(format!("({a}, {b}) violates absorption")));
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if meet[meet[a][b]][c] != meet[a][meet[b][c]]
                    || join[join[a][b]][c] != join[a][join[b][c]]
                {
                    return Err(OrderError::NotALattice(format!(
                        "({a}, {b}, {c}) not associative"
                    )));
                }
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if meet[a][join[b][c]] != join[meet[a][b]][meet[a][c]] {
                    return Err(OrderError::NotDistributive { a, b, c });
                }
            }
        }
    }
    let le = |a: usize, b: usize| meet[a][b] == a;
    // Lower covers in the table order.
    let covers_below = |a: usize| {
        (0..n)
            .filter(|&b| b != a && le(b, a))
            .filter(|&b| !(0..n).any(|c| c != a && c != b && le(b, c) && le(c, a)))
            .count()
    };
    let js: Vec<usize> = (0..n).filter(|&a| covers_below(a) == 1).collect();
    if js.len() > MAX_POSET {
        return Err(OrderError::SizeCap {
            what: "join-irreducibles",
            needed: js.len(),
            cap: MAX_POSET,
        });
    }
    let rel = js
        .iter()
        .map(|&a| js.iter().map(|&b| le(a, b)).collect())
        .collect();
    let jposet = Poset::from_valid(rel);
    let frame = downset_frame_capped(&jposet, caps().frame.max(n))?;
    if frame.len() != n {
        return Err(OrderError::NotALattice(format!(
            "{} join-irreducibles generate {} downsets, expected {n}",
            js.len(),
            frame.len()
        )));
    }
    let embed: Vec<Elem> = (0..n)
        .map(|x| {
            let m = js
                .iter()
                .enumerate()
                .filter(|&(_, &j)| le(j, x))
                .fold(0u64, |acc, (k, _)| acc | 1 << k);
            frame.at(m)
        })
        .collect();
    let mut seen = vec![false; n];
    for &e in &embed {
        if std::mem::replace(&mut seen[e], true) {
            return Err(OrderError::NotALattice("Birkhoff map is not injective".into()));
        }
    }
    Ok((frame, embed))
}

/// Ingests a family of sets closed under union and intersection (each set
/// a list of `u64` words) as a frame ordered by inclusion.
pub fn lattice_of_sets(family: &[Vec<u64>]) -> Result<(FiniteFrame, Vec<Elem>), OrderError> {
    let index: HashMap<&[u64], usize> = family
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_slice(), i))
        .collect();
    let n = family.len();
    let mut meet = vec![vec![0; n]; n];
    let mut join = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            let m: Vec<u64> = family[a].iter().zip(&family[b]).map(|(x, y)| x & y).collect();
            let j: Vec<u64> = family[a].iter().zip(&family[b]).map(|(x, y)| x | y).collect();
            meet[a][b] = *index.get(m.as_slice()).ok_or_else(|| {
                OrderError::NotALattice(format!("family not closed under ∩ at ({a}, {b})"))
            })?;
            join[a][b] = *index.get(j.as_slice()).ok_or_else(|| {
                OrderError::NotALattice(format!("family not closed under ∪ at ({a}, {b})"))
            })?;
        }
    }
    lattice_from_tables(&meet, &join)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c3() -> FiniteFrame {
        FiniteFrame::chain(3)
    }

    #[test]
    fn validate_examples() {
        assert_eq!(validate_poset(vec![vec![true, true], vec![false, true]]).unwrap().n(), 2);
        assert_eq!(
            validate_poset(vec![vec![true, true], vec![true, true]]),
            Err(OrderError::NotAntisymmetric(0, 1))
        );
        assert_eq!(Poset::antichain(3), validate_poset(vec![
            vec![true, false, false],
            vec![false, true, false],
            vec![false, false, true],
        ]).unwrap());
        assert_eq!(
            validate_poset(vec![vec![false]]),
            Err(OrderError::NotReflexive(0))
        );
        let nt = vec![
            vec![true, true, false],
            vec![false, true, true],
            vec![false, false, true],
        ];
        assert_eq!(validate_poset(nt), Err(OrderError::NotTransitive(0, 1, 2)));
        assert!(matches!(
            validate_poset(vec![vec![true, false]]),
            Err(OrderError::NotSquare { .. })
        ));
    }

    // Brute-force downset count over all subsets.
    fn count_downsets(p: &Poset) -> usize {
        (0..1u64 << p.n()).filter(|&m| p.is_downset(m)).count()
    }

    #[test]
    fn downset_examples() {
        let one = downset_frame(&Poset::antichain(0)).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one.bottom(), one.top());
        let c3 = downset_frame(&Poset::chain(2)).unwrap();
        assert_eq!(c3.len(), count_downsets(&Poset::chain(2)));
        assert_eq!(c3.len(), 3);
        let b2 = downset_frame(&Poset::antichain(2)).unwrap();
        assert_eq!(b2.len(), 4);
        assert!(b2.is_boolean());
        let kite = Poset::from_relations(3, &[(0, 1), (0, 2)]).unwrap();
        assert_eq!(downset_frame(&kite).unwrap().len(), count_downsets(&kite));
    }

    #[test]
    fn size_cap_is_enforced() {
        let err = downset_frame_capped(&Poset::antichain(5), 16).unwrap_err();
        assert!(matches!(err, OrderError::SizeCap { .. }));
    }

    #[test]
    fn canonical_order_is_popcount_then_value() {
        let b2 = FiniteFrame::boolean(2);
        let masks: Vec<u64> = b2.elements().map(|e| b2.bits(e)).collect();
        assert_eq!(masks, vec![0b00, 0b01, 0b10, 0b11]);
    }

    fn tables(n: usize, le: impl Fn(usize, usize) -> bool) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
        // meet = greatest lower bound, join = least upper bound, if they exist.
        let glb = |a: usize, b: usize| {
            let lower: Vec<usize> = (0..n).filter(|&c| le(c, a) && le(c, b)).collect();
            *lower
                .iter()
                .find(|&&c| lower.iter().all(|&d| le(d, c)))
                .expect("glb")
        };
        let lub = |a: usize, b: usize| {
            let upper: Vec<usize> = (0..n).filter(|&c| le(a, c) && le(b, c)).collect();
            *upper
                .iter()
                .find(|&&c| upper.iter().all(|&d| le(c, d)))
                .expect("lub")
        };
        let meet = (0..n).map(|a| (0..n).map(|b| glb(a, b)).collect()).collect();
        let join = (0..n).map(|a| (0..n).map(|b| lub(a, b)).collect()).collect();
        (meet, join)
    }

    #[test]
    fn lattice_from_tables_examples() {
        let (m, j) = tables(3, |a, b| a <= b);
        let (f, embed) = lattice_from_tables(&m, &j).unwrap();
        assert_eq!(f, c3());
        assert_eq!(embed, vec![0, 1, 2]);

        // M3: 0 < a, b, c < 1 with a, b, c pairwise incomparable.
        let m3 = |a: usize, b: usize| a == b || a == 0 || b == 4;
        let (m, j) = tables(5, m3);
        assert!(matches!(
            lattice_from_tables(&m, &j),
            Err(OrderError::NotDistributive { .. })
        ));

        // N5: 0 < a < b < 1, 0 < c < 1.
        let n5 = |x: usize, y: usize| {
            x == y || x == 0 || y == 4 || (x == 1 && y == 2)
        };
        let (m, j) = tables(5, n5);
        assert!(matches!(
            lattice_from_tables(&m, &j),
            Err(OrderError::NotDistributive { .. })
        ));
    }

    // Oracle: largest c with c ∧ a ≤ b by scanning every c.
    fn heyting_oracle(f: &FiniteFrame, a: Elem, b: Elem) -> Elem {
        let cands: Vec<Elem> = f.elements().filter(|&c| f.le(f.meet(c, a), b)).collect();
        *cands
            .iter()
            .find(|&&c| cands.iter().all(|&d| f.le(d, c)))
            .unwrap()
    }

    #[test]
    fn heyting_examples() {
        let c3 = c3();
        assert_eq!(c3.heyting(1, 0), 0);
        let b2 = FiniteFrame::boolean(2);
        // a = {0} (index 1), b = {1} (index 2)
        assert_eq!(b2.heyting(1, 0), 2);
        for f in [c3, b2] {
            for x in f.elements() {
                assert_eq!(f.heyting(f.top(), x), x);
                for y in f.elements() {
                    assert_eq!(f.heyting(x, y), heyting_oracle(&f, x, y));
                }
            }
        }
    }

    #[test]
    fn join_irreducible_examples() {
        let b2 = FiniteFrame::boolean(2);
        assert_eq!(join_irreducibles(&b2), vec![1, 2]);
        assert_eq!(join_irreducibles(&c3()), vec![1, 2]);
        assert!(join_irreducibles(&FiniteFrame::one()).is_empty());
    }

    #[test]
    fn lattice_of_sets_builds_inclusion_order() {
        let fam = vec![vec![0b00], vec![0b10], vec![0b11]];
        let (f, _) = lattice_of_sets(&fam).unwrap();
        assert_eq!(f, c3());
        let bad = vec![vec![0b00], vec![0b01], vec![0b10], vec![0b11 << 2]];
        assert!(lattice_of_sets(&bad).is_err());
    }

    #[test]
    fn serde_round_trip() {
        let kite = Poset::from_relations(3, &[(0, 1), (0, 2)]).unwrap();
        let f = downset_frame(&kite).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        let g: FiniteFrame = serde_json::from_str(&s).unwrap();
        assert_eq!(f, g);
        let bad = r#"{"n": 2, "le": [[true, true], [true, true]]}"#;
        assert!(serde_json::from_str::<Poset>(bad).is_err());
    }
}
