//! Frame and lattice congruences on finite frames, the congruence frame
//! `C L`, the frame of lattice congruences `C_lat L`, and the comparison
//! map `g: C_lat L → C L`.
//!
//! Congruences are stored as canonical partitions: `class_of[x]` numbers
//! classes in order of first appearance along the element order.
//!
//! Two independent constructions are kept deliberately apart:
//!
//! * [`congruence_frame`] uses the Birkhoff presentation. For a set `S` of
//!   join-irreducibles, `θ_S` identifies downsets that agree outside `S`;
//!   these are all the congruences, and `S ↦ θ_S` is an isomorphism from
//!   the powerset of `J(L)`.
//! * [`clat_frame`] works only with covering pairs: a lattice congruence is
//!   determined by the prime quotients it collapses, and that set is closed
//!   under transfer along joins and meets with arbitrary elements.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::caps::caps;
use crate::hom::{is_dense, is_surjective, validate_hom, FrameHom, HomError};
use crate::order::{bits, downset_frame_capped, lattice_of_sets, Elem, FiniteFrame, OrderError, Poset};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CongruenceError {
    #[error("partition has {len} entries but the frame has {expected} elements")]
    WrongLength { len: usize, expected: usize },
    #[error("not compatible: {a} ~ {b} but not ({a} {op} {c}) ~ ({b} {op} {c})")]
    NotCompatible { a: Elem, b: Elem, c: Elem, op: char },
    #[error("class of {0} is not an interval")]
    NotInterval(Elem),
    #[error("chain relation is not an equivalence at ({0}, {1})")]
    ChainRelation(Elem, Elem),
    #[error("{what} needs {needed} but the cap is {cap}")]
    SizeCap {
        what: &'static str,
        needed: usize,
        cap: usize,
    },
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Hom(#[from] HomError),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

/// A canonical partition of a frame's carrier.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    class_of: Vec<usize>,
}

impl Partition {
    /// Canonicalises arbitrary class labels.
    pub fn from_labels<K: Eq + std::hash::Hash>(labels: impl IntoIterator<Item = K>) -> Partition {
        let mut ids: HashMap<K, usize> = HashMap::new();
        let class_of = labels
            .into_iter()
            .map(|k| {
                let next = ids.len();
                *ids.entry(k).or_insert(next)
            })
            .collect();
        Partition { class_of }
    }

    pub fn len(&self) -> usize {
        self.class_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class_of.is_empty()
    }

    pub fn class(&self, x: Elem) -> usize {
        self.class_of[x]
    }

    pub fn class_of(&self) -> &[usize] {
        &self.class_of
    }

    pub fn related(&self, a: Elem, b: Elem) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    pub fn num_classes(&self) -> usize {
        self.class_of.iter().max().map_or(0, |m| m + 1)
    }

    pub fn classes(&self) -> Vec<Vec<Elem>> {
        let mut out = vec![Vec::new(); self.num_classes()];
        for (x, &c) in self.class_of.iter().enumerate() {
            out[c].push(x);
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        self.num_classes() == self.len()
    }

    pub fn is_all(&self) -> bool {
        self.num_classes() <= 1
    }

    /// Inclusion of relations.
    pub fn le(&self, other: &Partition) -> bool {
        let mut image = vec![usize::MAX; self.num_classes()];
        self.class_of.iter().zip(&other.class_of).all(|(&c, &d)| {
            if image[c] == usize::MAX {
                image[c] = d;
            }
            image[c] == d
        })
    }

    pub fn meet(&self, other: &Partition) -> Partition {
        Partition::from_labels(self.class_of.iter().zip(&other.class_of).map(|(&a, &b)| (a, b)))
    }

    /// Equivalence generated by the union.
    pub fn join(&self, other: &Partition) -> Partition {
        let mut uf = UnionFind::new(self.len());
        for p in [self, other] {
            let mut first = vec![usize::MAX; p.num_classes()];
            for (x, &c) in p.class_of.iter().enumerate() {
                if first[c] == usize::MAX {
                    first[c] = x;
                } else {
                    uf.union(first[c], x);
                }
            }
        }
        uf.partition()
    }

    /// Pairs `(x, r)` with `r` the first member of `x`'s class; these
    /// generate the partition as an equivalence.
    pub fn spanning_pairs(&self) -> Vec<(Elem, Elem)> {
        let mut first = vec![usize::MAX; self.num_classes()];
        let mut out = Vec::new();
        for (x, &c) in self.class_of.iter().enumerate() {
            if first[c] == usize::MAX {
                first[c] = x;
            } else {
                out.push((first[c], x));
            }
        }
        out
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true if the classes were distinct.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }

    pub(crate) fn partition(&mut self) -> Partition {
        let roots: Vec<usize> = (0..self.parent.len()).map(|x| self.find(x)).collect();
        Partition::from_labels(roots)
    }
}

/// Checks compatibility with binary meets and joins against every element.
fn check_compatible(f: &FiniteFrame, p: &Partition) -> Result<(), CongruenceError> {
    for (a, b) in p.spanning_pairs() {
        for c in f.elements() {
            if !p.related(f.meet(a, c), f.meet(b, c)) {
                return Err(CongruenceError::NotCompatible { a, b, c, op: '∧' });
            }
            if !p.related(f.join(a, c), f.join(b, c)) {
                return Err(CongruenceError::NotCompatible { a, b, c, op: '∨' });
            }
        }
    }
    Ok(())
}

fn check_intervals(f: &FiniteFrame, p: &Partition) -> Result<(), CongruenceError> {
    for class in p.classes() {
        let lo = f.meet_all(class.iter().copied());
        let hi = f.join_all(class.iter().copied());
        let size = f.elements().filter(|&x| f.le(lo, x) && f.le(x, hi)).count();
        if size != class.len() || !p.related(lo, class[0]) || !p.related(hi, class[0]) {
            return Err(CongruenceError::NotInterval(class[0]));
        }
    }
    Ok(())
}

/// A frame congruence: an equivalence that is a subframe of `L × L`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FrameCongruence(Partition);

/// A lattice congruence: compatible with binary meets and joins only.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeCongruence(Partition);

impl std::ops::Deref for FrameCongruence {
    type Target = Partition;
    fn deref(&self) -> &Partition {
        &self.0
    }
}

impl std::ops::Deref for LatticeCongruence {
    type Target = Partition;
    fn deref(&self) -> &Partition {
        &self.0
    }
}

impl FrameCongruence {
    /// Validates class labels as a frame congruence on `f`.
    pub fn new(f: &FiniteFrame, labels: &[usize]) -> Result<FrameCongruence, CongruenceError> {
        if labels.len() != f.len() {
            return Err(CongruenceError::WrongLength {
                len: labels.len(),
                expected: f.len(),
            });
        }
        let p = Partition::from_labels(labels.iter().copied());
        check_compatible(f, &p)?;
        check_intervals(f, &p)?;
        Ok(FrameCongruence(p))
    }

    pub fn from_classes(f: &FiniteFrame, classes: &[Vec<Elem>]) -> Result<FrameCongruence, CongruenceError> {
        let mut labels = vec![usize::MAX; f.len()];
        for (c, class) in classes.iter().enumerate() {
            for &x in class {
                if x >= f.len() || labels[x] != usize::MAX {
                    return Err(CongruenceError::Internal(format!("classes are not a partition at {x}")));
                }
                labels[x] = c;
            }
        }
        if let Some(x) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(CongruenceError::Internal(format!("element {x} is in no class")));
        }
        FrameCongruence::new(f, &labels)
    }

    /// Kernel of a key function; the caller guarantees it is a congruence.
    pub(crate) fn from_key<K: Eq + std::hash::Hash>(f: &FiniteFrame, key: impl Fn(Elem) -> K) -> FrameCongruence {
        FrameCongruence(Partition::from_labels(f.elements().map(key)))
    }

    pub fn diagonal(f: &FiniteFrame) -> FrameCongruence {
        FrameCongruence(Partition::from_labels(f.elements()))
    }

    pub fn all(f: &FiniteFrame) -> FrameCongruence {
        FrameCongruence(Partition::from_labels(f.elements().map(|_| ())))
    }

    pub fn partition(&self) -> &Partition {
        &self.0
    }

    pub fn meet(&self, other: &FrameCongruence) -> FrameCongruence {
        FrameCongruence(self.0.meet(&other.0))
    }

    pub fn join(&self, other: &FrameCongruence) -> FrameCongruence {
        FrameCongruence(self.0.join(&other.0))
    }

    pub fn le(&self, other: &FrameCongruence) -> bool {
        self.0.le(&other.0)
    }

    /// Largest member of each class, indexed by class id.
    pub fn class_tops(&self, f: &FiniteFrame) -> Vec<Elem> {
        let mut tops = vec![f.bottom(); self.num_classes()];
        for x in f.elements() {
            let c = self.class(x);
            tops[c] = f.join(tops[c], x);
        }
        tops
    }

    pub fn as_lattice_congruence(&self) -> LatticeCongruence {
        LatticeCongruence(self.0.clone())
    }
}

impl LatticeCongruence {
    pub fn new(f: &FiniteFrame, labels: &[usize]) -> Result<LatticeCongruence, CongruenceError> {
        if labels.len() != f.len() {
            return Err(CongruenceError::WrongLength {
                len: labels.len(),
                expected: f.len(),
            });
        }
        let p = Partition::from_labels(labels.iter().copied());
        check_compatible(f, &p)?;
        Ok(LatticeCongruence(p))
    }

    pub fn partition(&self) -> &Partition {
        &self.0
    }

    pub fn diagonal(f: &FiniteFrame) -> LatticeCongruence {
        LatticeCongruence(Partition::from_labels(f.elements()))
    }
}

/// `∇_a`: `x ~ y` iff `x ∨ a = y ∨ a`.
pub fn closed_congruence(f: &FiniteFrame, a: Elem) -> FrameCongruence {
    FrameCongruence::from_key(f, |x| f.join(x, a))
}

/// `Δ_a`: `x ~ y` iff `x ∧ a = y ∧ a`.
pub fn open_congruence(f: &FiniteFrame, a: Elem) -> FrameCongruence {
    FrameCongruence::from_key(f, |x| f.meet(x, a))
}

/// `⟨(a, b)⟩ = ∇_{a∨b} ∩ Δ_{a∧b}`.
pub fn principal_congruence(f: &FiniteFrame, a: Elem, b: Elem) -> FrameCongruence {
    closed_congruence(f, f.join(a, b)).meet(&open_congruence(f, f.meet(a, b)))
}

/// Least congruence containing `pairs`, by saturation: equivalence closure
/// alternated with meet/join compatibility until nothing changes.
pub fn congruence_closure(f: &FiniteFrame, pairs: &[(Elem, Elem)]) -> FrameCongruence {
    let mut uf = UnionFind::new(f.len());
    for &(a, b) in pairs {
        uf.union(a, b);
    }
    loop {
        let p = uf.partition();
        let mut changed = false;
        for (a, b) in p.spanning_pairs() {
            for c in f.elements() {
                changed |= uf.union(f.meet(a, c), f.meet(b, c));
                changed |= uf.union(f.join(a, c), f.join(b, c));
            }
        }
        if !changed {
            return FrameCongruence(uf.partition());
        }
    }
}

/// Pairs `(a, b)` admitting an increasing sequence `x_0 ≤ … ≤ x_k` with
/// `x_0 ≤ a, b ≤ x_k` and consecutive terms related by `c`.
///
/// On a finite carrier no limit stages occur, so finite sequences suffice.
pub fn chain_closure(f: &FiniteFrame, c: &LatticeCongruence) -> Result<FrameCongruence, CongruenceError> {
    let n = f.len();
    // reach[x]: elements reachable from x by increasing c-steps.
    let step: Vec<Vec<Elem>> = f
        .elements()
        .map(|x| f.elements().filter(|&y| y != x && f.le(x, y) && c.related(x, y)).collect())
        .collect();
    let reach: Vec<Vec<bool>> = f
        .elements()
        .map(|x0| {
            let mut seen = vec![false; n];
            seen[x0] = true;
            let mut stack = vec![x0];
            while let Some(x) = stack.pop() {
                for &y in &step[x] {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
            seen
        })
        .collect();
    let related = |a: Elem, b: Elem| {
        let lo = f.meet(a, b);
        let hi = f.join(a, b);
        f.elements()
            .filter(|&x0| f.le(x0, lo))
            .any(|x0| f.elements().any(|xk| reach[x0][xk] && f.le(hi, xk)))
    };
    let mut labels = vec![usize::MAX; n];
    let mut reps: Vec<Elem> = Vec::new();
    for x in f.elements() {
        match reps.iter().position(|&r| related(r, x)) {
            Some(k) => labels[x] = k,
            None => {
                labels[x] = reps.len();
                reps.push(x);
            }
        }
    }
    // The relation must be an equivalence that matches the labeling.
    for a in f.elements() {
        for b in f.elements() {
            if related(a, b) != (labels[a] == labels[b]) {
                return Err(CongruenceError::ChainRelation(a, b));
            }
        }
    }
    FrameCongruence::new(f, &labels)
}

/// `C L` in Birkhoff form, with each element's congruence.
#[derive(Clone, Debug)]
pub struct CongruenceFrame {
    source: FiniteFrame,
    frame: FiniteFrame,
    congruences: Vec<FrameCongruence>,
    nabla: FrameHom,
}

impl CongruenceFrame {
    pub fn source(&self) -> &FiniteFrame {
        &self.source
    }

    pub fn frame(&self) -> &FiniteFrame {
        &self.frame
    }

    pub fn congruence(&self, e: Elem) -> &FrameCongruence {
        &self.congruences[e]
    }

    pub fn congruences(&self) -> &[FrameCongruence] {
        &self.congruences
    }

    /// The embedding `∇: L → C L`.
    pub fn nabla_hom(&self) -> &FrameHom {
        &self.nabla
    }

    /// Element of `∇_a`.
    pub fn nabla(&self, a: Elem) -> Elem {
        self.nabla.apply(a)
    }

    /// Element of `Δ_a`.
    pub fn delta(&self, a: Elem) -> Elem {
        let full = self.source.jposet().full_mask();
        self.frame.index_of(full & !self.source.bits(a)).expect("Δ_a is a subset of J")
    }

    /// Element of `C L` holding `theta`: the join-irreducibles it collapses
    /// onto their lower covers.
    pub fn element_of(&self, theta: &Partition) -> Elem {
        let f = &self.source;
        let p = f.jposet();
        let mask = (0..p.n())
            .filter(|&j| {
                let top = f.principal(j);
                let below = f.index_of(p.down_mask(j) & !(1 << j)).unwrap();
                theta.related(top, below)
            })
            .fold(0u64, |acc, j| acc | 1 << j);
        self.frame.index_of(mask).expect("subset of J")
    }
}

/// The congruence identifying downsets that agree outside `s`.
fn theta_of(f: &FiniteFrame, s: u64) -> FrameCongruence {
    FrameCongruence::from_key(f, |x| f.bits(x) & !s)
}

/// `C L` with the embedding `a ↦ ∇_a`.
pub fn congruence_frame(f: &FiniteFrame) -> Result<CongruenceFrame, CongruenceError> {
    congruence_frame_capped(f, caps().frame)
}

pub fn congruence_frame_capped(f: &FiniteFrame, cap: usize) -> Result<CongruenceFrame, CongruenceError> {
    let j = f.jposet().n();
    if j >= 63 || 1usize << j > cap {
        return Err(CongruenceError::SizeCap {
            what: "congruence frame",
            needed: if j >= 63 { usize::MAX } else { 1 << j },
            cap,
        });
    }
    let frame = downset_frame_capped(&Poset::antichain(j), cap)?;
    let congruences = frame.elements().map(|e| theta_of(f, frame.bits(e))).collect();
    let map = f.elements().map(|a| frame.index_of(f.bits(a)).unwrap()).collect();
    let nabla = validate_hom(f, &frame, map)?;
    Ok(CongruenceFrame {
        source: f.clone(),
        frame,
        congruences,
        nabla,
    })
}

/// Every frame congruence on `f` by enumerating all set partitions of the
/// carrier; the independent oracle for [`congruence_frame`].
pub fn congruences_by_partition_search(f: &FiniteFrame) -> Result<Vec<FrameCongruence>, CongruenceError> {
    let cap = caps().partition_oracle;
    if f.len() > cap {
        return Err(CongruenceError::SizeCap {
            what: "partition oracle carrier",
            needed: f.len(),
            cap,
        });
    }
    let n = f.len();
    let mut out = Vec::new();
    // Restricted growth strings.
    let mut labels = vec![0usize; n];
    fn go(f: &FiniteFrame, k: usize, max: usize, labels: &mut Vec<usize>, out: &mut Vec<FrameCongruence>) {
        if k == labels.len() {
            if let Ok(c) = FrameCongruence::new(f, labels) {
                out.push(c);
            }
            return;
        }
        for l in 0..=max + 1 {
            labels[k] = l;
            go(f, k + 1, max.max(l), labels, out);
        }
    }
    if n > 0 {
        labels[0] = 0;
        go(f, 1, 0, &mut labels, &mut out);
    }
    out.sort();
    Ok(out)
}

/// `C_lat L`, built from covering pairs only.
#[derive(Clone, Debug)]
pub struct ClatFrame {
    source: FiniteFrame,
    frame: FiniteFrame,
    covers: Vec<(Elem, Elem)>,
    edge_sets: Vec<Vec<u64>>,
    congruences: Vec<LatticeCongruence>,
    by_edges: HashMap<Vec<u64>, Elem>,
}

fn words_for(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

impl ClatFrame {
    pub fn source(&self) -> &FiniteFrame {
        &self.source
    }

    pub fn frame(&self) -> &FiniteFrame {
        &self.frame
    }

    pub fn congruence(&self, e: Elem) -> &LatticeCongruence {
        &self.congruences[e]
    }

    pub fn congruences(&self) -> &[LatticeCongruence] {
        &self.congruences
    }

    /// Collapsed covering pairs of the element `e`.
    pub fn collapsed_covers(&self, e: Elem) -> Vec<(Elem, Elem)> {
        let set = &self.edge_sets[e];
        self.covers
            .iter()
            .enumerate()
            .filter(|(i, _)| set[i / 64] >> (i % 64) & 1 == 1)
            .map(|(_, &c)| c)
            .collect()
    }

    fn cover_index(&self) -> HashMap<(Elem, Elem), usize> {
        self.covers.iter().enumerate().map(|(i, &c)| (c, i)).collect()
    }

    /// Element of the lattice congruence generated by `pairs`.
    pub fn generated(&self, pairs: &[(Elem, Elem)]) -> Elem {
        let f = &self.source;
        let index = self.cover_index();
        let mut set = vec![0u64; words_for(self.covers.len())];
        for &(a, b) in pairs {
            // Any maximal chain from a ∧ b up to a ∨ b.
            let hi = f.join(a, b);
            let mut x = f.meet(a, b);
            while x != hi {
                let y = f
                    .upper_covers(x)
                    .into_iter()
                    .find(|&y| f.le(y, hi))
                    .expect("a maximal chain continues below hi");
                let i = index[&(x, y)];
                set[i / 64] |= 1 << (i % 64);
                x = y;
            }
        }
        let closed = transfer_closure(f, &self.covers, &index, set);
        self.by_edges[&closed]
    }

    /// Element of `∇_a` (generated by `(0, a)`).
    pub fn nabla(&self, a: Elem) -> Elem {
        self.generated(&[(self.source.bottom(), a)])
    }

    /// Element of `Δ_a` (generated by `(a, 1)`).
    pub fn delta(&self, a: Elem) -> Elem {
        self.generated(&[(a, self.source.top())])
    }
}

/// Closes a set of covering pairs under `[a,b] ↦ [a∨c, b∨c]` and
/// `[a,b] ↦ [a∧c, b∧c]` for every `c` (dropping collapsed images).
fn transfer_closure(
    f: &FiniteFrame,
    covers: &[(Elem, Elem)],
    index: &HashMap<(Elem, Elem), usize>,
    mut set: Vec<u64>,
) -> Vec<u64> {
    let mut work: Vec<usize> = (0..covers.len())
        .filter(|i| set[i / 64] >> (i % 64) & 1 == 1)
        .collect();
    while let Some(i) = work.pop() {
        let (a, b) = covers[i];
        for c in f.elements() {
            for (x, y) in [(f.join(a, c), f.join(b, c)), (f.meet(a, c), f.meet(b, c))] {
                if x == y {
                    continue;
                }
                let k = *index
                    .get(&(x, y))
                    .expect("distributive lattices transfer prime quotients to prime quotients");
                if set[k / 64] >> (k % 64) & 1 == 0 {
                    set[k / 64] |= 1 << (k % 64);
                    work.push(k);
                }
            }
        }
    }
    set
}

/// `C_lat L` by weak-projectivity closure over covering pairs.
pub fn clat_frame(f: &FiniteFrame) -> Result<ClatFrame, CongruenceError> {
    let covers = f.covering_pairs();
    let index: HashMap<(Elem, Elem), usize> = covers.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let words = words_for(covers.len());
    let generators: Vec<Vec<u64>> = (0..covers.len())
        .map(|i| {
            let mut s = vec![0u64; words];
            s[i / 64] |= 1 << (i % 64);
            transfer_closure(f, &covers, &index, s)
        })
        .collect();
    let cap = caps().frame;
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut family = vec![vec![0u64; words]];
    seen.insert(family[0].clone());
    let mut k = 0;
    while k < family.len() {
        let cur = family[k].clone();
        k += 1;
        for g in &generators {
            let u: Vec<u64> = cur.iter().zip(g).map(|(x, y)| x | y).collect();
            if seen.insert(u.clone()) {
                if family.len() >= cap {
                    return Err(CongruenceError::SizeCap {
                        what: "lattice congruence frame",
                        needed: family.len() + 1,
                        cap,
                    });
                }
                family.push(u);
            }
        }
    }
    let (frame, embed) = lattice_of_sets(&family)?;
    let mut edge_sets = vec![Vec::new(); family.len()];
    for (i, set) in family.into_iter().enumerate() {
        edge_sets[embed[i]] = set;
    }
    let mut congruences = Vec::with_capacity(edge_sets.len());
    for set in &edge_sets {
        let mut uf = UnionFind::new(f.len());
        for (i, &(a, b)) in covers.iter().enumerate() {
            if set[i / 64] >> (i % 64) & 1 == 1 {
                uf.union(a, b);
            }
        }
        let p = uf.partition();
        congruences.push(LatticeCongruence::new(f, p.class_of())?);
    }
    let by_edges = edge_sets.iter().enumerate().map(|(e, s)| (s.clone(), e)).collect();
    Ok(ClatFrame {
        source: f.clone(),
        frame,
        covers,
        edge_sets,
        congruences,
        by_edges,
    })
}

/// The map `g: C_lat L → C L`, `C ↦` the frame congruence generated by `C`.
#[derive(Clone, Debug)]
pub struct GMap {
    pub clat: ClatFrame,
    pub cf: CongruenceFrame,
    pub hom: FrameHom,
}

impl GMap {
    pub fn is_dense(&self) -> bool {
        is_dense(&self.hom)
    }

    pub fn is_surjective(&self) -> bool {
        is_surjective(&self.hom)
    }

    /// `ker g` as a congruence on `C_lat L`.
    pub fn kernel(&self) -> FrameCongruence {
        self.hom.kernel()
    }
}

pub fn g_map(f: &FiniteFrame) -> Result<GMap, CongruenceError> {
    let clat = clat_frame(f)?;
    let cf = congruence_frame(f)?;
    let mut map = Vec::with_capacity(clat.frame.len());
    for c in clat.congruences() {
        let g = chain_closure(f, c)?;
        map.push(cf.element_of(&g));
    }
    let hom = validate_hom(&clat.frame, &cf.frame, map)?;
    Ok(GMap { clat, cf, hom })
}

/// `C f(θ)`: the congruence on the codomain generated by `(f × f)(θ)`.
pub fn congruence_functor(f: &FrameHom, theta: &FrameCongruence) -> FrameCongruence {
    let pairs: Vec<(Elem, Elem)> = theta
        .spanning_pairs()
        .into_iter()
        .map(|(a, b)| (f.apply(a), f.apply(b)))
        .collect();
    congruence_closure(f.cod(), &pairs)
}

/// Every congruence is the join of the open congruences below it.
pub fn is_fit(f: &FiniteFrame) -> Result<bool, CongruenceError> {
    let cf = congruence_frame(f)?;
    let c = cf.frame();
    let opens: Vec<Elem> = f.elements().map(|a| cf.delta(a)).collect();
    Ok(c.elements().all(|t| c.join_all(opens.iter().copied().filter(|&o| c.le(o, t))) == t))
}

/// Sets of join-irreducibles as a compact display of a congruence.
pub fn collapsed_join_irreducibles(cf: &CongruenceFrame, e: Elem) -> Vec<usize> {
    bits(cf.frame().bits(e)).collect()
}

/// A congruence with the frame it lives on; JSON shape `{frame, classes}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCongruence {
    pub frame: FiniteFrame,
    pub congruence: FrameCongruence,
}

#[derive(Serialize, Deserialize)]
struct CongruenceDoc {
    frame: FiniteFrame,
    classes: Vec<Vec<Elem>>,
}

impl Serialize for BoundCongruence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CongruenceDoc {
            frame: self.frame.clone(),
            classes: self.congruence.classes(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BoundCongruence {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<BoundCongruence, D::Error> {
        let doc = CongruenceDoc::deserialize(d)?;
        let congruence = FrameCongruence::from_classes(&doc.frame, &doc.classes).map_err(serde::de::Error::custom)?;
        Ok(BoundCongruence {
            frame: doc.frame,
            congruence,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::validate_hom;
    use crate::order::Poset;

    fn c3() -> FiniteFrame {
        FiniteFrame::chain(3)
    }

    fn classes(c: &FrameCongruence) -> Vec<Vec<Elem>> {
        c.classes()
    }

    #[test]
    fn closed_and_open_examples() {
        let f = c3();
        assert!(closed_congruence(&f, 0).is_diagonal());
        assert!(open_congruence(&f, f.top()).is_diagonal());
        assert_eq!(classes(&closed_congruence(&f, 1)), vec![vec![0, 1], vec![2]]);
        assert_eq!(classes(&open_congruence(&f, 1)), vec![vec![0], vec![1, 2]]);
    }

    #[test]
    fn principal_examples() {
        let f = c3();
        assert!(principal_congruence(&f, 1, 1).is_diagonal());
        assert_eq!(principal_congruence(&f, 0, 1), closed_congruence(&f, 1));
        assert_eq!(congruence_closure(&f, &[(0, 1)]), principal_congruence(&f, 0, 1));
        let b2 = FiniteFrame::boolean(2);
        assert_eq!(classes(&principal_congruence(&b2, 0, 1)), vec![vec![0, 1], vec![2, 3]]);
        for a in b2.elements() {
            for b in b2.elements() {
                assert_eq!(principal_congruence(&b2, a, b), congruence_closure(&b2, &[(a, b)]));
            }
        }
    }

    #[test]
    fn closure_examples() {
        let f = c3();
        assert!(congruence_closure(&f, &[]).is_diagonal());
        assert_eq!(congruence_closure(&f, &[(0, 1)]), closed_congruence(&f, 1));
        assert!(congruence_closure(&f, &[(0, 2)]).is_all());
    }

    #[test]
    fn chain_closure_examples() {
        let f = c3();
        let diag = LatticeCongruence::diagonal(&f);
        assert!(chain_closure(&f, &diag).unwrap().is_diagonal());
        let nm = closed_congruence(&f, 1).as_lattice_congruence();
        assert_eq!(chain_closure(&f, &nm).unwrap(), closed_congruence(&f, 1));
        let b2 = FiniteFrame::boolean(2);
        let na = closed_congruence(&b2, 1).as_lattice_congruence();
        assert!(chain_closure(&b2, &na).unwrap().related(2, 3));
    }

    #[test]
    fn congruence_frame_examples() {
        let one = congruence_frame(&FiniteFrame::one()).unwrap();
        assert_eq!(one.frame().len(), 1);
        let cc3 = congruence_frame(&c3()).unwrap();
        assert_eq!(cc3.frame().len(), 4);
        assert!(cc3.frame().is_boolean());
        let two = congruence_frame(&FiniteFrame::two()).unwrap();
        assert_eq!(two.frame().len(), 2);
        // ∇_m and Δ_m are complements.
        let c = cc3.frame();
        assert_eq!(c.meet(cc3.nabla(1), cc3.delta(1)), c.bottom());
        assert_eq!(c.join(cc3.nabla(1), cc3.delta(1)), c.top());
        assert_eq!(cc3.congruence(cc3.nabla(1)), &closed_congruence(&c3(), 1));
        assert_eq!(cc3.congruence(cc3.delta(1)), &open_congruence(&c3(), 1));
    }

    #[test]
    fn fast_congruence_frame_matches_partition_oracle() {
        let posets = [
            Poset::antichain(0),
            Poset::chain(1),
            Poset::chain(2),
            Poset::antichain(2),
            Poset::from_relations(3, &[(0, 1), (0, 2)]).unwrap(),
        ];
        for p in posets {
            let f = crate::order::downset_frame(&p).unwrap();
            let cf = congruence_frame(&f).unwrap();
            let mut fast: Vec<FrameCongruence> = cf.congruences().to_vec();
            fast.sort();
            assert_eq!(fast, congruences_by_partition_search(&f).unwrap());
            for (e, theta) in cf.congruences().iter().enumerate() {
                assert_eq!(cf.element_of(theta), e);
            }
        }
    }

    #[test]
    fn clat_examples() {
        let cl = clat_frame(&c3()).unwrap();
        assert_eq!(cl.frame().len(), 4);
        assert_eq!(clat_frame(&FiniteFrame::boolean(2)).unwrap().frame().len(), 4);
        assert_eq!(clat_frame(&FiniteFrame::one()).unwrap().frame().len(), 1);
        let f = c3();
        assert_eq!(cl.congruence(cl.nabla(1)).partition(), closed_congruence(&f, 1).partition());
        assert_eq!(cl.congruence(cl.delta(1)).partition(), open_congruence(&f, 1).partition());
    }

    #[test]
    fn g_map_examples() {
        for f in [c3(), FiniteFrame::boolean(2), FiniteFrame::one()] {
            let g = g_map(&f).unwrap();
            assert!(g.hom.is_isomorphism());
            assert!(g.is_dense() && g.is_surjective());
            assert!(g.kernel().is_diagonal());
            for a in f.elements() {
                assert_eq!(g.hom.apply(g.clat.nabla(a)), g.cf.nabla(a));
                assert_eq!(g.hom.apply(g.clat.delta(a)), g.cf.delta(a));
            }
        }
    }

    #[test]
    fn functor_examples() {
        let f = c3();
        let q = validate_hom(&f, &FiniteFrame::two(), vec![0, 1, 1]).unwrap();
        let qp = validate_hom(&f, &FiniteFrame::two(), vec![0, 0, 1]).unwrap();
        assert!(congruence_functor(&q, &FrameCongruence::diagonal(&f)).is_diagonal());
        assert!(congruence_functor(&q, &closed_congruence(&f, 1)).is_all());
        assert!(congruence_functor(&qp, &open_congruence(&f, 1)).is_all());
    }

    #[test]
    fn fitness_examples() {
        assert!(is_fit(&FiniteFrame::one()).unwrap());
        assert!(!is_fit(&c3()).unwrap());
        assert!(is_fit(&FiniteFrame::boolean(2)).unwrap());
    }

    #[test]
    fn validation_rejects_bad_partitions() {
        let b2 = FiniteFrame::boolean(2);
        // {0, 1, 2} and {3}: 1 ~ 2 but 1 ∨ 1 = 1 and 2 ∨ 1 = 3 split.
        assert!(matches!(
            FrameCongruence::new(&b2, &[0, 0, 0, 1]),
            Err(CongruenceError::NotCompatible { .. })
        ));
        assert!(FrameCongruence::new(&b2, &[0, 0, 1, 1]).is_ok());
    }
}
