//! Paircovers, stars, quasi-uniformities, quasi-proximities and the
//! Fletcher construction (Pervin and well-monotone quasi-uniformities).
//!
//! A downset of `𝓛₁ × 𝓛₂` is stored as the antichain of its maximal pairs.
//! A quasi-uniformity is stored as a finite base; the filter it generates
//! is the set of paircovers above some base member. The axioms are checked
//! on base members only, which is exact: stars are monotone in the
//! paircover, and the largest strong downset below `U` is `strongify(U)`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::biframe::{Biframe, BiframeError, BiframeHom, Relation};
use crate::caps::caps;
use crate::completion::{validate_uniformity, Cover, Uniformity, UniformityError};
use crate::order::{Elem, FiniteFrame};

pub type Pair = (Elem, Elem);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PaircoverError {
    #[error("pairs do not cover: total join is {value}")]
    NotCovering { value: Elem },
    #[error("element {x} is not in part {part}")]
    NotInPart { part: usize, x: Elem },
    #[error("quasi-uniformity base is empty")]
    EmptyBase,
    #[error("base members {0} and {1} have no common refinement in the base")]
    NotDirected(usize, usize),
    #[error("base member {0} has no strong paircover of the filter below it")]
    NoStrongRefinement(usize),
    #[error("base member {0} has no star refinement in the filter")]
    NoStarRefinement(usize),
    #[error("not admissible: {x} in part {part} has uniformly-below join {join}")]
    NotAdmissible { part: usize, x: Elem, join: Elem },
    #[error("C_A is not a paircover: total join is {value}")]
    NotFletcher { value: Elem },
    #[error("closed and intersection forms of C_A differ")]
    FletcherMismatch,
    #[error("successor form differs from the Fletcher paircover of chain {0:?}")]
    SuccessorMismatch(Vec<Elem>),
    #[error("map is not surjective")]
    NotSurjective,
    #[error("{what} needs {needed} but the cap is {cap}")]
    SizeCap {
        what: &'static str,
        needed: usize,
        cap: usize,
    },
    #[error(transparent)]
    Biframe(#[from] BiframeError),
    #[error(transparent)]
    Uniformity(#[from] UniformityError),
}

/// A downset of `𝓛₁ × 𝓛₂`, given by its maximal pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PairDownset {
    #[serde(rename = "pairs")]
    gens: Vec<Pair>,
}

fn pair_le(t: &FiniteFrame, a: Pair, b: Pair) -> bool {
    t.le(a.0, b.0) && t.le(a.1, b.1)
}

impl PairDownset {
    /// The empty downset.
    pub fn empty() -> PairDownset {
        PairDownset { gens: Vec::new() }
    }

    /// `↓(1, 1)`.
    pub fn top(b: &Biframe) -> PairDownset {
        let t = b.total().top();
        PairDownset { gens: vec![(t, t)] }
    }

    /// Normalizes without checking part membership.
    pub(crate) fn from_pairs_unchecked(t: &FiniteFrame, pairs: impl IntoIterator<Item = Pair>) -> PairDownset {
        let mut v: Vec<Pair> = pairs.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        let gens = v
            .iter()
            .copied()
            .filter(|&p| !v.iter().any(|&q| q != p && pair_le(t, p, q)))
            .collect();
        PairDownset { gens }
    }

    /// The downset generated by `pairs`, which must lie in `𝓛₁ × 𝓛₂`.
    pub fn generated(b: &Biframe, pairs: &[Pair]) -> Result<PairDownset, PaircoverError> {
        for &(x, y) in pairs {
            if !b.in_part(1, x) {
                return Err(PaircoverError::NotInPart { part: 1, x });
            }
            if !b.in_part(2, y) {
                return Err(PaircoverError::NotInPart { part: 2, x: y });
            }
        }
        Ok(PairDownset::from_pairs_unchecked(b.total(), pairs.iter().copied()))
    }

    pub fn gens(&self) -> &[Pair] {
        &self.gens
    }

    pub fn contains(&self, b: &Biframe, p: Pair) -> bool {
        self.gens.iter().any(|&g| pair_le(b.total(), p, g))
    }

    /// Downset inclusion.
    pub fn le(&self, b: &Biframe, other: &PairDownset) -> bool {
        self.gens.iter().all(|&g| other.contains(b, g))
    }

    pub fn meet(&self, b: &Biframe, other: &PairDownset) -> PairDownset {
        let t = b.total();
        PairDownset::from_pairs_unchecked(
            t,
            self.gens
                .iter()
                .flat_map(|&(x, y)| other.gens.iter().map(move |&(u, v)| (t.meet(x, u), t.meet(y, v)))),
        )
    }

    pub fn union(&self, b: &Biframe, other: &PairDownset) -> PairDownset {
        PairDownset::from_pairs_unchecked(b.total(), self.gens.iter().chain(&other.gens).copied())
    }

    /// `⋁ x ∧ y` over the downset.
    pub fn join_value(&self, b: &Biframe) -> Elem {
        let t = b.total();
        t.join_all(self.gens.iter().map(|&(x, y)| t.meet(x, y)))
    }

    pub fn is_covering(&self, b: &Biframe) -> bool {
        self.join_value(b) == b.total().top()
    }

    pub fn is_strong(&self, b: &Biframe) -> bool {
        let t = b.total();
        self.gens.iter().all(|&(x, y)| t.meet(x, y) != t.bottom())
    }

    /// The largest strong downset inside `self`.
    pub fn strongify(&self, b: &Biframe) -> PairDownset {
        let t = b.total();
        PairDownset {
            gens: self
                .gens
                .iter()
                .copied()
                .filter(|&(x, y)| t.meet(x, y) != t.bottom())
                .collect(),
        }
    }

    /// `st_i(x, U)`. Joining over generators gives the same value as joining
    /// over the whole downset, since smaller pairs meet `x` less and
    /// contribute smaller components.
    pub fn star(&self, b: &Biframe, i: usize, x: Elem) -> Elem {
        let t = b.total();
        let comp = |p: &Pair, k: usize| if k == 1 { p.0 } else { p.1 };
        t.join_all(
            self.gens
                .iter()
                .filter(|p| t.meet(x, comp(p, 3 - i)) != t.bottom())
                .map(|p| comp(p, i)),
        )
    }

    /// `U*`.
    pub fn star_cover(&self, b: &Biframe) -> PairDownset {
        PairDownset::from_pairs_unchecked(
            b.total(),
            self.gens.iter().map(|&(u, v)| (self.star(b, 1, u), self.star(b, 2, v))),
        )
    }

    pub fn is_transitive(&self, b: &Biframe) -> bool {
        self.star_cover(b) == *self
    }

    /// `↓(q₁ × q₂)(U)` along a biframe map.
    pub fn image(&self, q: &BiframeHom) -> PairDownset {
        PairDownset::from_pairs_unchecked(
            q.cod.total(),
            self.gens.iter().map(|&(x, y)| (q.hom.apply(x), q.hom.apply(y))),
        )
    }

    /// The symmetrised covering downset `⟨u ∧ v | (u, v) ∈ U⟩`.
    pub fn symmetrised(&self, b: &Biframe) -> Cover {
        let t = b.total();
        Cover::generated(t, self.gens.iter().map(|&(x, y)| t.meet(x, y)))
    }
}

/// A validated paircover.
pub fn make_paircover(b: &Biframe, pairs: &[Pair]) -> Result<PairDownset, PaircoverError> {
    let d = PairDownset::generated(b, pairs)?;
    let value = d.join_value(b);
    if value != b.total().top() {
        return Err(PaircoverError::NotCovering { value });
    }
    Ok(d)
}

/// A quasi-uniformity given by a finite base.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuasiUniformity {
    biframe: Biframe,
    base: Vec<PairDownset>,
}

#[derive(Deserialize)]
struct QuDoc {
    biframe: Biframe,
    base: Vec<PairDownset>,
}

impl<'de> Deserialize<'de> for QuasiUniformity {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<QuasiUniformity, D::Error> {
        let doc = QuDoc::deserialize(d)?;
        validate_quasi_uniformity(&doc.biframe, doc.base).map_err(serde::de::Error::custom)
    }
}

/// Index of a base member below every other one, if any.
fn minimum_index(b: &Biframe, base: &[PairDownset]) -> Option<usize> {
    (0..base.len()).find(|&k| base.iter().all(|u| base[k].le(b, u)))
}

fn uniformly_below_in(b: &Biframe, base: &[PairDownset], i: usize, x: Elem, y: Elem) -> bool {
    base.iter().any(|u| b.total().le(u.star(b, i, x), y))
}

pub fn validate_quasi_uniformity(b: &Biframe, base: Vec<PairDownset>) -> Result<QuasiUniformity, PaircoverError> {
    if base.is_empty() {
        return Err(PaircoverError::EmptyBase);
    }
    let mut base = base;
    base.sort();
    base.dedup();
    for u in &base {
        for &(x, y) in u.gens() {
            if !b.in_part(1, x) {
                return Err(PaircoverError::NotInPart { part: 1, x });
            }
            if !b.in_part(2, y) {
                return Err(PaircoverError::NotInPart { part: 2, x: y });
            }
        }
        let value = u.join_value(b);
        if value != b.total().top() {
            return Err(PaircoverError::NotCovering { value });
        }
    }
    if minimum_index(b, &base).is_none() {
        for k in 0..base.len() {
            for l in k + 1..base.len() {
                let m = base[k].meet(b, &base[l]);
                if !base.iter().any(|w| w.le(b, &m)) {
                    return Err(PaircoverError::NotDirected(k, l));
                }
            }
        }
    }
    for (k, u) in base.iter().enumerate() {
        let s = u.strongify(b);
        if !base.iter().any(|w| w.le(b, &s)) {
            return Err(PaircoverError::NoStrongRefinement(k));
        }
        if !base.iter().any(|v| v.star_cover(b).le(b, u)) {
            return Err(PaircoverError::NoStarRefinement(k));
        }
    }
    let t = b.total();
    for i in 1..=2 {
        for &x in b.part(i) {
            let join = t.join_all(
                b.part(i)
                    .iter()
                    .copied()
                    .filter(|&y| uniformly_below_in(b, &base, i, y, x)),
            );
            if join != x {
                return Err(PaircoverError::NotAdmissible { part: i, x, join });
            }
        }
    }
    Ok(QuasiUniformity {
        biframe: b.clone(),
        base,
    })
}

impl QuasiUniformity {
    pub fn biframe(&self) -> &Biframe {
        &self.biframe
    }

    pub fn base(&self) -> &[PairDownset] {
        &self.base
    }

    /// Filter membership.
    pub fn contains(&self, u: &PairDownset) -> bool {
        self.base.iter().any(|w| w.le(&self.biframe, u))
    }

    /// The base member below all others. Finite directed bases have one.
    pub fn minimum(&self) -> &PairDownset {
        let k = minimum_index(&self.biframe, &self.base).expect("validated bases are directed");
        &self.base[k]
    }

    /// Same filter: each base refines a member of the other.
    pub fn same_filter(&self, other: &QuasiUniformity) -> bool {
        self.base.iter().all(|u| other.contains(u)) && other.base.iter().all(|u| self.contains(u))
    }

    pub fn is_transitive(&self) -> bool {
        let b = &self.biframe;
        self.base
            .iter()
            .all(|u| self.base.iter().any(|v| v.le(b, u) && v.is_transitive(b)))
    }

    /// Every uniform paircover has a finite sub-paircover. Base members are
    /// finitely generated, so their generator sets serve.
    pub fn is_totally_bounded(&self) -> bool {
        let b = &self.biframe;
        self.base.iter().all(|u| {
            let finite = PairDownset::from_pairs_unchecked(b.total(), u.gens().iter().copied());
            finite.is_covering(b) && finite.le(b, u)
        })
    }

    /// Re-bases on the finite sub-paircovers of the base.
    pub fn totally_bounded_coreflection(&self) -> Result<QuasiUniformity, PaircoverError> {
        let b = &self.biframe;
        let base = self
            .base
            .iter()
            .map(|u| PairDownset::from_pairs_unchecked(b.total(), u.gens().iter().copied()))
            .collect();
        validate_quasi_uniformity(b, base)
    }
}

pub fn uniformly_below(qu: &QuasiUniformity, i: usize, x: Elem, y: Elem) -> bool {
    uniformly_below_in(&qu.biframe, &qu.base, i, x, y)
}

/// `(◁₁, ◁₂)` on the parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiProximity {
    pub rel1: Relation,
    pub rel2: Relation,
}

impl QuasiProximity {
    pub fn rel(&self, i: usize) -> &Relation {
        if i == 1 {
            &self.rel1
        } else {
            &self.rel2
        }
    }
}

pub fn quasi_proximity_of(qu: &QuasiUniformity) -> QuasiProximity {
    let b = &qu.biframe;
    let rel = |i: usize| {
        let part = b.part(i).to_vec();
        let holds = part
            .iter()
            .map(|&x| part.iter().map(|&y| uniformly_below(qu, i, x, y)).collect())
            .collect();
        Relation::new(part, holds)
    };
    QuasiProximity {
        rel1: rel(1),
        rel2: rel(2),
    }
}

/// `(≺₁, ≺₂)`.
pub fn rather_below_pair(b: &Biframe) -> QuasiProximity {
    QuasiProximity {
        rel1: b.rather_below(1),
        rel2: b.rather_below(2),
    }
}

/// First violated quasi-proximity axiom.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("axiom {axiom} fails in part {part} at {witness:?}")]
pub struct ProximityViolation {
    pub axiom: u8,
    pub part: usize,
    pub witness: Vec<Elem>,
}

/// Checks the six axioms. Axiom 1 is read as `a ≤ b ◁ c ≤ d ⟹ a ◁ d` and
/// axiom 5 as `a ◁_i b ⟹ b^• ◁_j a^•`.
pub fn validate_quasi_proximity(b: &Biframe, qp: &QuasiProximity) -> Result<(), ProximityViolation> {
    let t = b.total();
    let fail = |axiom: u8, part: usize, witness: Vec<Elem>| Err(ProximityViolation { axiom, part, witness });
    for i in 1..=2 {
        let r = qp.rel(i);
        let part = b.part(i);
        if r.elems() != part {
            return fail(2, i, Vec::new());
        }
        let pairs = r.pairs();
        for &(bb, c) in &pairs {
            for &a in part.iter().filter(|&&a| t.le(a, bb)) {
                for &d in part.iter().filter(|&&d| t.le(c, d)) {
                    if !r.contains(a, d) {
                        return fail(1, i, vec![a, bb, c, d]);
                    }
                }
            }
        }
        if !r.contains(t.bottom(), t.bottom()) || !r.contains(t.top(), t.top()) {
            return fail(2, i, Vec::new());
        }
        for &(a, bb) in &pairs {
            for &(c, d) in &pairs {
                if !r.contains(t.meet(a, c), t.meet(bb, d)) || !r.contains(t.join(a, c), t.join(bb, d)) {
                    return fail(2, i, vec![a, bb, c, d]);
                }
            }
        }
        let rb = b.rather_below(i);
        if let Some(&(a, bb)) = pairs.iter().find(|&&(a, bb)| !rb.contains(a, bb)) {
            return fail(3, i, vec![a, bb]);
        }
        if !r.interpolates() {
            let comp = r.compose(r);
            let (a, bb) = pairs.iter().copied().find(|&(a, bb)| !comp.contains(a, bb)).unwrap();
            return fail(4, i, vec![a, bb]);
        }
        let other = qp.rel(3 - i);
        for &(a, bb) in &pairs {
            if !other.contains(b.bipseudocomplement(i, bb), b.bipseudocomplement(i, a)) {
                return fail(5, i, vec![a, bb]);
            }
        }
        for &x in part {
            if t.join_all(part.iter().copied().filter(|&y| r.contains(y, x))) != x {
                return fail(6, i, vec![x]);
            }
        }
    }
    Ok(())
}

/// The uniformity on the total part generated by symmetrised base members.
pub fn symmetrisation(qu: &QuasiUniformity) -> Result<Uniformity, PaircoverError> {
    let b = &qu.biframe;
    let base: Vec<Cover> = qu.base.iter().map(|u| u.symmetrised(b)).collect();
    Ok(validate_uniformity(b.total(), base)?)
}

/// `C_A` and `C̃_A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fletcher {
    pub c: PairDownset,
    pub tilde: PairDownset,
    /// Whether the closed form over all `B ⊆ A` was evaluated and compared.
    pub closed_form_checked: bool,
}

/// `C_A = ⋂_{a∈A} (↓(a,1) ∪ ↓(1,a^c))`, with the closed form
/// `⟨(⋀B, (⋁(A∖B))^c) | B ⊆ A⟩` cross-checked when `2^|A|` is within the cap.
pub fn fletcher_paircover(b: &Biframe, a: &[Elem]) -> Result<Fletcher, PaircoverError> {
    if !b.is_strictly_zero_dimensional() {
        return Err(BiframeError::NotStrictlyZeroDimensional.into());
    }
    let t = b.total();
    for &x in a {
        if !b.in_part(1, x) {
            return Err(PaircoverError::NotInPart { part: 1, x });
        }
    }
    let comp = |x: Elem| t.complement(x).expect("first part is complemented");
    // 0 and 1 contribute the whole product.
    let mut rel: Vec<Elem> = a.iter().copied().filter(|&x| x != t.bottom() && x != t.top()).collect();
    rel.sort_unstable();
    rel.dedup();
    let mut c = PairDownset::top(b);
    for &x in &rel {
        let piece = PairDownset::from_pairs_unchecked(t, [(x, t.top()), (t.top(), comp(x))]);
        c = c.meet(b, &piece);
    }
    let closed_form_checked = rel.len() < usize::BITS as usize - 1 && (1usize << rel.len()) <= caps().fletcher;
    if closed_form_checked {
        let closed = PairDownset::from_pairs_unchecked(
            t,
            (0..1u64 << rel.len()).map(|s| {
                let inb = |k: usize| s >> k & 1 == 1;
                let lo = t.meet_all((0..rel.len()).filter(|&k| inb(k)).map(|k| rel[k]));
                let rest = t.join_all((0..rel.len()).filter(|&k| !inb(k)).map(|k| rel[k]));
                (lo, comp(rest))
            }),
        );
        if closed != c {
            return Err(PaircoverError::FletcherMismatch);
        }
    }
    let value = c.join_value(b);
    if value != t.top() {
        return Err(PaircoverError::NotFletcher { value });
    }
    let tilde = c.strongify(b);
    Ok(Fletcher {
        c,
        tilde,
        closed_form_checked,
    })
}

/// Chains of `𝓛₁` containing 0 and 1, each listed bottom-up. On a finite
/// part these are exactly the join-closed well-ordered covers.
pub fn join_closed_chains(b: &Biframe) -> Result<Vec<Vec<Elem>>, PaircoverError> {
    let t = b.total();
    let part = b.part(1);
    let cap = caps().chains;
    let mut out = Vec::new();
    let mut cur = vec![t.bottom()];
    fn go(
        t: &FiniteFrame,
        part: &[Elem],
        cur: &mut Vec<Elem>,
        out: &mut Vec<Vec<Elem>>,
        cap: usize,
    ) -> Result<(), PaircoverError> {
        let last = *cur.last().unwrap();
        if last == t.top() {
            if out.len() >= cap {
                return Err(PaircoverError::SizeCap {
                    what: "join-closed chains",
                    needed: out.len() + 1,
                    cap,
                });
            }
            out.push(cur.clone());
            return Ok(());
        }
        for &y in part.iter().filter(|&&y| t.lt(last, y)) {
            cur.push(y);
            go(t, part, cur, out, cap)?;
            cur.pop();
        }
        Ok(())
    }
    if t.bottom() == t.top() {
        out.push(cur);
        return Ok(out);
    }
    go(t, part, &mut cur, &mut out, cap)?;
    Ok(out)
}

/// `↓{(a⁺, a^c) | a ∈ A ∖ {1}}` for a chain listed bottom-up.
pub fn successor_paircover(b: &Biframe, chain: &[Elem]) -> PairDownset {
    let t = b.total();
    PairDownset::from_pairs_unchecked(
        t,
        chain.windows(2).map(|w| (w[1], t.complement(w[0]).expect("first part is complemented"))),
    )
}

/// The well-monotone quasi-uniformity: one successor paircover per
/// join-closed chain, each checked against `C̃_A`, plus the strong part of
/// their meet. The chain paircovers alone need not be directed, and the
/// plain meet can contain pairs with zero meet.
pub fn well_monotone_qu(b: &Biframe) -> Result<QuasiUniformity, PaircoverError> {
    if !b.is_strictly_zero_dimensional() {
        return Err(BiframeError::NotStrictlyZeroDimensional.into());
    }
    let chains = join_closed_chains(b)?;
    let covers: Vec<PairDownset> = chains
        .par_iter()
        .map(|chain| {
            let s = successor_paircover(b, chain);
            let f = fletcher_paircover(b, chain)?;
            if f.tilde != s {
                return Err(PaircoverError::SuccessorMismatch(chain.clone()));
            }
            Ok(s)
        })
        .collect::<Result<_, _>>()?;
    let mut base = covers;
    base.sort();
    base.dedup();
    let meet = base
        .iter()
        .skip(1)
        .fold(base[0].clone(), |acc, u| acc.meet(b, u));
    base.push(meet.strongify(b));
    validate_quasi_uniformity(b, base)
}

/// The Pervin quasi-uniformity. `A ↦ C̃_A` reverses inclusion, so the
/// finite cover `A = 𝓛₁` gives the least member and a one-element base.
pub fn pervin_qu(b: &Biframe) -> Result<QuasiUniformity, PaircoverError> {
    let f = fletcher_paircover(b, b.part(1))?;
    validate_quasi_uniformity(b, vec![f.tilde])
}

/// `C̃_A` for every subset `A ⊆ 𝓛₁` with join 1; the exhaustive family
/// behind [`pervin_qu`]. Exponential in `|𝓛₁|`.
pub fn all_finite_cover_paircovers(b: &Biframe) -> Result<Vec<PairDownset>, PaircoverError> {
    let t = b.total();
    let part = b.part(1);
    let cap = caps().fletcher;
    if part.len() >= usize::BITS as usize - 1 || 1usize << part.len() > cap {
        return Err(PaircoverError::SizeCap {
            what: "finite covers of the first part",
            needed: if part.len() >= 63 { usize::MAX } else { 1 << part.len() },
            cap,
        });
    }
    (0..1u64 << part.len())
        .into_par_iter()
        .filter_map(|s| {
            let a: Vec<Elem> = (0..part.len()).filter(|&k| s >> k & 1 == 1).map(|k| part[k]).collect();
            (t.join_all(a.iter().copied()) == t.top()).then_some(a)
        })
        .map(|a| fletcher_paircover(b, &a).map(|f| f.tilde))
        .collect()
}

/// The image quasi-uniformity along a surjective biframe map, on strong
/// images of the base.
pub fn quotient_qu(q: &BiframeHom, qu: &QuasiUniformity) -> Result<QuasiUniformity, PaircoverError> {
    if !q.is_surjective() {
        return Err(PaircoverError::NotSurjective);
    }
    let base = qu.base.iter().map(|u| u.image(q).strongify(&q.cod)).collect();
    validate_quasi_uniformity(&q.cod, base)
}

/// Paircovers as the pair lists of a frame map's parts, for reporting.
pub fn describe(u: &PairDownset) -> Vec<[Elem; 2]> {
    u.gens().iter().map(|&(x, y)| [x, y]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::biframe::{congruence_biframe, skula_biframe, validate_biframe_hom, Space};
    use crate::congruence::CongruenceFrame;

    fn cc3() -> (Biframe, CongruenceFrame) {
        congruence_biframe(&FiniteFrame::chain(3)).unwrap()
    }

    fn one_biframe() -> Biframe {
        Biframe::symmetric(&FiniteFrame::one())
    }

    fn fletcher_cover(b: &Biframe, cf: &CongruenceFrame) -> PairDownset {
        let t = b.total();
        make_paircover(b, &[(cf.nabla(1), t.top()), (t.top(), cf.delta(1))]).unwrap()
    }

    #[test]
    fn make_paircover_examples() {
        let (b, cf) = cc3();
        let t = b.total();
        assert_eq!(make_paircover(&b, &[(t.top(), t.top())]).unwrap(), PairDownset::top(&b));
        fletcher_cover(&b, &cf);
        assert_eq!(
            make_paircover(&b, &[(cf.nabla(1), cf.delta(1))]),
            Err(PaircoverError::NotCovering { value: t.bottom() })
        );
    }

    #[test]
    fn strongify_examples() {
        let one = one_biframe();
        let zero = PairDownset::generated(&one, &[(0, 0)]).unwrap();
        assert_ne!(zero, PairDownset::empty());
        assert!(!zero.is_strong(&one));
        assert_eq!(zero.strongify(&one), PairDownset::empty());
        let (b, cf) = cc3();
        let u = fletcher_cover(&b, &cf);
        assert_eq!(u.strongify(&b), u);
        let t = b.total();
        let v = PairDownset::generated(&b, &[(cf.nabla(1), t.top()), (t.top(), t.bottom())]).unwrap();
        assert_eq!(v.strongify(&b).gens(), &[(cf.nabla(1), t.top())]);
    }

    #[test]
    fn star_examples() {
        let (b, cf) = cc3();
        let u = fletcher_cover(&b, &cf);
        assert_eq!(u.star(&b, 1, b.total().bottom()), b.total().bottom());
        assert_eq!(u.star(&b, 1, cf.nabla(1)), cf.nabla(1));
        assert_eq!(u.star_cover(&b), u);
        assert!(u.is_transitive(&b));
        assert!(PairDownset::top(&b).is_transitive(&b));
        let s = Biframe::symmetric(&FiniteFrame::boolean(2));
        let w = make_paircover(&s, &[(1, 3), (2, 3)]).unwrap();
        assert!(!w.is_transitive(&s));
        assert_eq!(w.star_cover(&s), PairDownset::top(&s));
    }

    #[test]
    fn validate_examples() {
        let (b, cf) = cc3();
        let qu = validate_quasi_uniformity(&b, vec![fletcher_cover(&b, &cf)]).unwrap();
        assert!(uniformly_below(&qu, 1, cf.nabla(1), cf.nabla(1)));
        for x in b.part(1) {
            assert!(uniformly_below(&qu, 1, 0, *x));
        }
        let s = Biframe::symmetric(&FiniteFrame::boolean(2));
        assert_eq!(
            validate_quasi_uniformity(&s, vec![PairDownset::top(&s)]),
            Err(PaircoverError::NotAdmissible { part: 1, x: 1, join: 0 })
        );
        let t = PairDownset::top(&s);
        let fake = QuasiUniformity {
            biframe: s.clone(),
            base: vec![t],
        };
        assert!(uniformly_below(&fake, 1, 1, 3));
        assert!(!uniformly_below(&fake, 1, 1, 1));
        let one = one_biframe();
        let q1 = validate_quasi_uniformity(&one, vec![PairDownset::empty()]).unwrap();
        let zero = PairDownset::generated(&one, &[(0, 0)]).unwrap();
        assert!(q1.contains(&zero));
        // Without strongness the single-member filter on {(0,0)} is rejected.
        assert_eq!(
            validate_quasi_uniformity(&one, vec![zero]),
            Err(PaircoverError::NoStrongRefinement(0))
        );
    }

    #[test]
    fn quasi_proximity_examples() {
        let (b, _) = cc3();
        let wm = well_monotone_qu(&b).unwrap();
        let qp = quasi_proximity_of(&wm);
        validate_quasi_proximity(&b, &qp).unwrap();
        validate_quasi_proximity(&b, &rather_below_pair(&b)).unwrap();
        let s = Biframe::symmetric(&FiniteFrame::chain(3));
        let le = Relation::new(
            (0..3).collect(),
            (0..3).map(|a| (0..3).map(|c| a <= c).collect()).collect(),
        );
        let err = validate_quasi_proximity(
            &s,
            &QuasiProximity {
                rel1: le.clone(),
                rel2: le,
            },
        )
        .unwrap_err();
        assert_eq!(err.axiom, 3);
    }

    #[test]
    fn symmetrisation_examples() {
        let (b, cf) = cc3();
        let wm = well_monotone_qu(&b).unwrap();
        let u = symmetrisation(&wm).unwrap();
        let m = u.minimum();
        let mut gens = m.gens().to_vec();
        gens.sort_unstable();
        let mut want = vec![cf.nabla(1), cf.delta(1)];
        want.sort_unstable();
        assert_eq!(gens, want);
        assert!(m.is_partition(b.total()));
        assert!(u.base().len() <= wm.base().len());
        let two = Biframe::symmetric(&FiniteFrame::two());
        let q = validate_quasi_uniformity(&two, vec![PairDownset::top(&two)]).unwrap();
        assert_eq!(symmetrisation(&q).unwrap().base(), &[Cover::generated(two.total(), [1])]);
    }

    #[test]
    fn total_boundedness() {
        let (b, _) = cc3();
        let wm = well_monotone_qu(&b).unwrap();
        assert!(wm.is_totally_bounded());
        let c = wm.totally_bounded_coreflection().unwrap();
        assert_eq!(c, wm);
        assert_eq!(c.totally_bounded_coreflection().unwrap(), c);
    }

    #[test]
    fn fletcher_examples() {
        let (b, cf) = cc3();
        let t = b.total();
        assert_eq!(fletcher_paircover(&b, &[t.top()]).unwrap().tilde, PairDownset::top(&b));
        let want = fletcher_cover(&b, &cf);
        let f = fletcher_paircover(&b, &[t.bottom(), cf.nabla(1), t.top()]).unwrap();
        assert!(f.closed_form_checked);
        assert_eq!(f.tilde, want);
        assert_eq!(fletcher_paircover(&b, &[cf.nabla(1)]).unwrap().tilde, want);
        assert!(want.is_transitive(&b));
    }

    #[test]
    fn well_monotone_and_pervin() {
        let (b, cf) = cc3();
        let t = b.total();
        assert_eq!(successor_paircover(&b, &[t.bottom(), t.top()]), PairDownset::top(&b));
        assert_eq!(
            successor_paircover(&b, &[t.bottom(), cf.nabla(1), t.top()]),
            fletcher_cover(&b, &cf)
        );
        let wm = well_monotone_qu(&b).unwrap();
        let pv = pervin_qu(&b).unwrap();
        assert!(wm.same_filter(&pv));
        assert_eq!(quasi_proximity_of(&pv), rather_below_pair(&b));
        for u in all_finite_cover_paircovers(&b).unwrap() {
            assert!(pv.contains(&u));
        }
        let sk = skula_biframe(&Space {
            points: 2,
            opens: vec![vec![], vec![1], vec![0, 1]],
        })
        .unwrap();
        let pv = pervin_qu(&sk).unwrap();
        assert!(pv.same_filter(&well_monotone_qu(&sk).unwrap()));
        let one = one_biframe();
        let q1 = pervin_qu(&one).unwrap();
        assert_eq!(q1.base(), &[PairDownset::empty()]);
    }

    #[test]
    fn quotient_examples() {
        let (b, cf) = cc3();
        let wm = well_monotone_qu(&b).unwrap();
        let id = validate_biframe_hom(&b, &b, b.total().elements().collect()).unwrap();
        assert!(quotient_qu(&id, &wm).unwrap().same_filter(&wm));
        // Collapse Δ_m to 0: the quotient of C C3 by ∇_{∇_m}.
        let t = b.total();
        let two = FiniteFrame::two();
        let cod = Biframe::symmetric(&two);
        let map: Vec<Elem> = t.elements().map(|x| usize::from(t.le(cf.nabla(1), x))).collect();
        let q = validate_biframe_hom(&b, &cod, map).unwrap();
        assert_eq!(q.hom.apply(cf.delta(1)), 0);
        let image = quotient_qu(&q, &wm).unwrap();
        assert_eq!(fletcher_cover(&b, &cf).image(&q).strongify(&cod), PairDownset::top(&cod));
        assert!(image.same_filter(&well_monotone_qu(&cod).unwrap()));
    }

    #[test]
    fn serde_round_trip() {
        let (b, _) = cc3();
        let wm = well_monotone_qu(&b).unwrap();
        let s = serde_json::to_string(&wm).unwrap();
        let back: QuasiUniformity = serde_json::from_str(&s).unwrap();
        assert_eq!(back, wm);
    }
}
