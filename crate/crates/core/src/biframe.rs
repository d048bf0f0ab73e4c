//! Biframes, part pseudocomplements, the regularity ladder, Skula and
//! congruence biframes, and the congruential coreflection `χ`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canon::{decorated_key, CanonicalKey};
use crate::congruence::{congruence_frame, CongruenceError, CongruenceFrame};
use crate::hom::{is_dense, is_surjective, subframe_generated, validate_hom, FrameHom, HomError};
use crate::order::{bits, lattice_from_tables, lattice_of_sets, Elem, FiniteFrame, OrderError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BiframeError {
    #[error("part {0} is not a subframe of the total part")]
    NotSubframe(usize),
    #[error("the parts do not generate the total part")]
    NotGenerating,
    #[error("element {0} is outside the total part")]
    OutOfRange(Elem),
    #[error("points {0} and {1} have the same open neighbourhoods")]
    NotT0(usize, usize),
    #[error("not a topology: {0}")]
    NotATopology(String),
    #[error("biframe is not strictly zero-dimensional")]
    NotStrictlyZeroDimensional,
    #[error("map does not preserve part {0}")]
    PartNotPreserved(usize),
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
    #[error(transparent)]
    Congruence(#[from] CongruenceError),
}

/// A total frame with two subframes that together generate it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Biframe {
    total: FiniteFrame,
    parts: [Vec<Elem>; 2],
}

fn normalize(total: &FiniteFrame, part: &[Elem]) -> Result<Vec<Elem>, BiframeError> {
    if let Some(&x) = part.iter().find(|&&x| x >= total.len()) {
        return Err(BiframeError::OutOfRange(x));
    }
    let mut v = part.to_vec();
    v.sort_unstable();
    v.dedup();
    Ok(v)
}

fn is_subframe(total: &FiniteFrame, part: &[Elem]) -> bool {
    let mut member = vec![false; total.len()];
    for &x in part {
        member[x] = true;
    }
    member[total.bottom()]
        && member[total.top()]
        && part
            .iter()
            .all(|&a| part.iter().all(|&b| member[total.meet(a, b)] && member[total.join(a, b)]))
}

pub fn make_biframe(total: &FiniteFrame, part1: &[Elem], part2: &[Elem]) -> Result<Biframe, BiframeError> {
    let p1 = normalize(total, part1)?;
    let p2 = normalize(total, part2)?;
    for (i, p) in [(1, &p1), (2, &p2)] {
        if !is_subframe(total, p) {
            return Err(BiframeError::NotSubframe(i));
        }
    }
    let union: Vec<Elem> = p1.iter().chain(&p2).copied().collect();
    if subframe_generated(total, &union).len() != total.len() {
        return Err(BiframeError::NotGenerating);
    }
    Ok(Biframe {
        total: total.clone(),
        parts: [p1, p2],
    })
}

/// A part as a frame in its own right, with its inclusion into the total.
#[derive(Clone, Debug)]
pub struct PartFrame {
    pub frame: FiniteFrame,
    /// `embed[e]` is the total element of the part element `e`.
    pub embed: Vec<Elem>,
}

impl PartFrame {
    /// Part element of a total element lying in the part.
    pub fn locate(&self, x: Elem) -> Option<Elem> {
        self.embed.iter().position(|&y| y == x)
    }

    pub fn inclusion(&self, total: &FiniteFrame) -> Result<FrameHom, HomError> {
        validate_hom(&self.frame, total, self.embed.clone())
    }
}

impl Biframe {
    /// The symmetric biframe `(F, F, F)`.
    pub fn symmetric(f: &FiniteFrame) -> Biframe {
        let all: Vec<Elem> = f.elements().collect();
        Biframe {
            total: f.clone(),
            parts: [all.clone(), all],
        }
    }

    pub fn total(&self) -> &FiniteFrame {
        &self.total
    }

    /// Part `i` (1 or 2) as a sorted list of total elements.
    pub fn part(&self, i: usize) -> &[Elem] {
        &self.parts[i - 1]
    }

    pub fn in_part(&self, i: usize, x: Elem) -> bool {
        self.parts[i - 1].binary_search(&x).is_ok()
    }

    pub fn part_frame(&self, i: usize) -> Result<PartFrame, BiframeError> {
        let part = self.part(i);
        let pos = |x: Elem| part.binary_search(&x).expect("parts are subframes");
        let k = part.len();
        let meet: Vec<Vec<usize>> = (0..k)
            .map(|a| (0..k).map(|b| pos(self.total.meet(part[a], part[b]))).collect())
            .collect();
        let join: Vec<Vec<usize>> = (0..k)
            .map(|a| (0..k).map(|b| pos(self.total.join(part[a], part[b]))).collect())
            .collect();
        let (frame, to_frame) = lattice_from_tables(&meet, &join)?;
        let mut embed = vec![0; k];
        for (a, &e) in to_frame.iter().enumerate() {
            embed[e] = part[a];
        }
        Ok(PartFrame { frame, embed })
    }

    /// Isomorphism key respecting both parts.
    pub fn canonical_key(&self) -> CanonicalKey {
        let fams: Vec<Vec<u64>> = self
            .parts
            .iter()
            .map(|p| p.iter().map(|&x| self.total.bits(x)).collect())
            .collect();
        decorated_key(&self.total, &fams)
    }

    /// `x^•`: the largest element of the other part disjoint from `x`.
    pub fn bipseudocomplement(&self, i: usize, x: Elem) -> Elem {
        let t = &self.total;
        t.join_all(self.part(3 - i).iter().copied().filter(|&y| t.meet(x, y) == t.bottom()))
    }

    /// `x ≺_i y` iff `x^• ∨ y = 1`, over part `i`.
    pub fn rather_below(&self, i: usize) -> Relation {
        let t = &self.total;
        let part = self.part(i).to_vec();
        let pc: Vec<Elem> = part.iter().map(|&x| self.bipseudocomplement(i, x)).collect();
        let holds = (0..part.len())
            .map(|a| part.iter().map(|&y| t.join(pc[a], y) == t.top()).collect())
            .collect();
        Relation { elems: part, holds }
    }

    /// `≺≺_i`, the largest interpolative relation inside `≺_i`.
    pub fn completely_below(&self, i: usize) -> Relation {
        interpolative_core(&self.rather_below(i))
    }

    fn approximated_by(&self, i: usize, r: &Relation) -> bool {
        let t = &self.total;
        self.part(i)
            .iter()
            .all(|&x| t.join_all(self.part(i).iter().copied().filter(|&y| r.contains(y, x))) == x)
    }

    pub fn is_regular(&self) -> bool {
        (1..=2).all(|i| self.approximated_by(i, &self.rather_below(i)))
    }

    pub fn is_completely_regular(&self) -> bool {
        (1..=2).all(|i| self.approximated_by(i, &self.completely_below(i)))
    }

    /// Each part is join-generated by its elements with `x ∨ x^• = 1`.
    ///
    /// Those elements are closed under finite meets, so frame generation
    /// and join generation coincide.
    pub fn is_zero_dimensional(&self) -> bool {
        let t = &self.total;
        (1..=2).all(|i| {
            let clopen: Vec<Elem> = self
                .part(i)
                .iter()
                .copied()
                .filter(|&x| t.join(x, self.bipseudocomplement(i, x)) == t.top())
                .collect();
            self.part(i)
                .iter()
                .all(|&x| t.join_all(clopen.iter().copied().filter(|&y| t.le(y, x))) == x)
        })
    }

    /// Every first-part element has a total complement in the second part,
    /// and these complements generate the second part.
    pub fn is_strictly_zero_dimensional(&self) -> bool {
        let t = &self.total;
        let mut comps = Vec::with_capacity(self.part(1).len());
        for &a in self.part(1) {
            match t.complement(a) {
                Some(c) if self.in_part(2, c) => comps.push(c),
                _ => return false,
            }
        }
        subframe_generated(t, &comps) == self.part(2)
    }

    /// Every cover of the total part has a finite subcover. A cover of a
    /// finite frame is finite, so it is its own subcover; the check still
    /// confirms that the join of all elements is the top.
    pub fn is_compact(&self) -> bool {
        self.total.join_all(self.total.elements()) == self.total.top()
    }

    /// The total complement `a^c` of a first-part element, when the biframe
    /// is strictly zero-dimensional.
    pub fn complement(&self, a: Elem) -> Option<Elem> {
        self.total.complement(a)
    }
}

/// A binary relation on a list of total elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    elems: Vec<Elem>,
    holds: Vec<Vec<bool>>,
}

impl Relation {
    pub fn new(elems: Vec<Elem>, holds: Vec<Vec<bool>>) -> Relation {
        Relation { elems, holds }
    }

    pub fn elems(&self) -> &[Elem] {
        &self.elems
    }

    fn pos(&self, x: Elem) -> Option<usize> {
        self.elems.iter().position(|&y| y == x)
    }

    pub fn contains(&self, x: Elem, y: Elem) -> bool {
        match (self.pos(x), self.pos(y)) {
            (Some(a), Some(b)) => self.holds[a][b],
            _ => false,
        }
    }

    pub fn pairs(&self) -> Vec<(Elem, Elem)> {
        let mut out = Vec::new();
        for (a, row) in self.holds.iter().enumerate() {
            for (b, &h) in row.iter().enumerate() {
                if h {
                    out.push((self.elems[a], self.elems[b]));
                }
            }
        }
        out
    }

    pub fn compose(&self, other: &Relation) -> Relation {
        let n = self.elems.len();
        let holds = (0..n)
            .map(|a| (0..n).map(|c| (0..n).any(|b| self.holds[a][b] && other.holds[b][c])).collect())
            .collect();
        Relation {
            elems: self.elems.clone(),
            holds,
        }
    }

    pub fn intersect(&self, other: &Relation) -> Relation {
        let holds = self
            .holds
            .iter()
            .zip(&other.holds)
            .map(|(r, s)| r.iter().zip(s).map(|(&x, &y)| x && y).collect())
            .collect();
        Relation {
            elems: self.elems.clone(),
            holds,
        }
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.holds
            .iter()
            .zip(&other.holds)
            .all(|(r, s)| r.iter().zip(s).all(|(&x, &y)| !x || y))
    }

    pub fn interpolates(&self) -> bool {
        self.is_subset(&self.compose(self))
    }
}

/// Greatest fixpoint of `R ↦ R ∩ (R ∘ R)` below `r`.
pub fn interpolative_core(r: &Relation) -> Relation {
    let mut cur = r.clone();
    loop {
        let next = cur.intersect(&cur.compose(&cur));
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

/// A finite space given by its open sets (bitmasks over the points).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Space {
    pub points: usize,
    pub opens: Vec<Vec<usize>>,
}

impl Space {
    pub fn open_masks(&self) -> Result<Vec<u64>, BiframeError> {
        if self.points > 16 {
            return Err(BiframeError::SizeCap {
                what: "space points",
                needed: self.points,
                cap: 16,
            });
        }
        let mut masks = Vec::with_capacity(self.opens.len());
        for o in &self.opens {
            let mut m = 0u64;
            for &x in o {
                if x >= self.points {
                    return Err(BiframeError::NotATopology(format!("point {x} out of range")));
                }
                m |= 1 << x;
            }
            masks.push(m);
        }
        masks.sort_unstable();
        masks.dedup();
        Ok(masks)
    }

    /// Validates the topology axioms and the T0 separation axiom.
    pub fn validate(&self) -> Result<Vec<u64>, BiframeError> {
        let masks = self.open_masks()?;
        let full = (1u64 << self.points) - 1;
        if !masks.contains(&0) || !masks.contains(&full) {
            return Err(BiframeError::NotATopology("missing the empty set or the whole space".into()));
        }
        for &a in &masks {
            for &b in &masks {
                if masks.binary_search(&(a | b)).is_err() || masks.binary_search(&(a & b)).is_err() {
                    return Err(BiframeError::NotATopology("not closed under union and intersection".into()));
                }
            }
        }
        for x in 0..self.points {
            for y in x + 1..self.points {
                if masks.iter().all(|&o| (o >> x & 1) == (o >> y & 1)) {
                    return Err(BiframeError::NotT0(x, y));
                }
            }
        }
        Ok(masks)
    }
}

/// `(P(X), Ω(X), generated by closed sets)` for a finite T0 space.
pub fn skula_biframe(space: &Space) -> Result<Biframe, BiframeError> {
    skula_biframe_with_sets(space).map(|(b, _)| b)
}

/// The Skula biframe together with the point set (as a mask) of each
/// total element.
pub fn skula_biframe_with_sets(space: &Space) -> Result<(Biframe, Vec<u64>), BiframeError> {
    let opens = space.validate()?;
    let full = (1u64 << space.points) - 1;
    let family: Vec<Vec<u64>> = (0..=full).map(|m| vec![m]).collect();
    let (total, embed) = lattice_of_sets(&family)?;
    let at = |m: u64| embed[m as usize];
    let part1: Vec<Elem> = opens.iter().map(|&o| at(o)).collect();
    let closed: Vec<Elem> = opens.iter().map(|&o| at(full & !o)).collect();
    let part2 = subframe_generated(&total, &closed);
    let mut sets = vec![0u64; total.len()];
    for (m, &e) in embed.iter().enumerate() {
        sets[e] = m as u64;
    }
    Ok((make_biframe(&total, &part1, &part2)?, sets))
}

/// `(C F, ∇F, ΔF)` with the underlying congruence frame.
pub fn congruence_biframe(f: &FiniteFrame) -> Result<(Biframe, CongruenceFrame), BiframeError> {
    let cf = congruence_frame(f)?;
    let part1: Vec<Elem> = f.elements().map(|a| cf.nabla(a)).collect();
    let deltas: Vec<Elem> = f.elements().map(|a| cf.delta(a)).collect();
    let part2 = subframe_generated(cf.frame(), &deltas);
    let b = make_biframe(cf.frame(), &part1, &part2)?;
    Ok((b, cf))
}

/// A biframe map: a frame map on totals preserving both parts.
#[derive(Clone, Debug)]
pub struct BiframeHom {
    pub dom: Biframe,
    pub cod: Biframe,
    pub hom: FrameHom,
}

pub fn validate_biframe_hom(dom: &Biframe, cod: &Biframe, map: Vec<Elem>) -> Result<BiframeHom, BiframeError> {
    let hom = validate_hom(dom.total(), cod.total(), map)?;
    for i in 1..=2 {
        if !dom.part(i).iter().all(|&x| cod.in_part(i, hom.apply(x))) {
            return Err(BiframeError::PartNotPreserved(i));
        }
    }
    Ok(BiframeHom {
        dom: dom.clone(),
        cod: cod.clone(),
        hom,
    })
}

impl BiframeHom {
    pub fn is_dense(&self) -> bool {
        is_dense(&self.hom)
    }

    pub fn is_surjective(&self) -> bool {
        is_surjective(&self.hom)
    }

    pub fn is_isomorphism(&self) -> bool {
        self.hom.is_isomorphism()
            && (1..=2).all(|i| self.cod.part(i).len() == self.dom.part(i).len())
    }
}

/// The coreflection data: `C 𝓛₁`, its biframe, and `χ: C 𝓛₁ → 𝓛`.
#[derive(Clone, Debug)]
pub struct Coreflection {
    pub part1: PartFrame,
    pub cf: CongruenceFrame,
    pub chi: BiframeHom,
}

/// `χ` sends `∇_a ↦ a` and `Δ_a ↦ a^c`. In Birkhoff form an element of
/// `C 𝓛₁` is a set `S` of join-irreducibles of `𝓛₁`, equal to
/// `⋁_{p∈S} ∇_{↓p} ∧ Δ_{↓p∖p}`.
pub fn coreflection_chi(b: &Biframe) -> Result<Coreflection, BiframeError> {
    if !b.is_strictly_zero_dimensional() {
        return Err(BiframeError::NotStrictlyZeroDimensional);
    }
    let t = b.total();
    let part1 = b.part_frame(1)?;
    let l1 = &part1.frame;
    let (cb, cf) = congruence_biframe(l1)?;
    let jp = l1.jposet();
    // Image of each join-irreducible's prime quotient.
    let piece: Vec<Elem> = (0..jp.n())
        .map(|p| {
            let top = part1.embed[l1.principal(p)];
            let below = part1.embed[l1.index_of(jp.down_mask(p) & !(1 << p)).unwrap()];
            let c = t.complement(below).expect("first part is complemented");
            t.meet(top, c)
        })
        .collect();
    let map: Vec<Elem> = cf
        .frame()
        .elements()
        .map(|e| t.join_all(bits(cf.frame().bits(e)).map(|p| piece[p])))
        .collect();
    let chi = validate_biframe_hom(&cb, b, map)?;
    Ok(Coreflection { part1, cf, chi })
}

#[derive(Serialize, Deserialize)]
struct BiframeDoc {
    total: FiniteFrame,
    part1: Vec<Elem>,
    part2: Vec<Elem>,
}

impl Serialize for Biframe {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        BiframeDoc {
            total: self.total.clone(),
            part1: self.parts[0].clone(),
            part2: self.parts[1].clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Biframe {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Biframe, D::Error> {
        let doc = BiframeDoc::deserialize(d)?;
        make_biframe(&doc.total, &doc.part1, &doc.part2).map_err(serde::de::Error::custom)
    }
}
