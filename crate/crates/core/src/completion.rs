//! Uniformities on finite frames, the completeness and ultraparacompactness
//! deciders, fine uniformities, the bicompletion pipeline, the universal
//! compactification `g`, and the kernel check for congruence biframes.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::biframe::{congruence_biframe, make_biframe, validate_biframe_hom, Biframe, BiframeError, BiframeHom, Relation};
use crate::canon::canonical_form;
use crate::caps::caps;
use crate::congruence::{congruence_closure, g_map, open_congruence, CongruenceError, FrameCongruence};
use crate::hom::{quotient_by_congruence, subframe_generated, HomError};
use crate::order::{lattice_from_tables, Elem, FiniteFrame, OrderError};
use crate::paircover::{join_closed_chains, validate_quasi_uniformity, PairDownset, PaircoverError, QuasiUniformity};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UniformityError {
    #[error("uniformity base is empty")]
    EmptyBase,
    #[error("base member {0} does not cover")]
    NotCovering(usize),
    #[error("element {0} is outside the frame")]
    OutOfRange(Elem),
    #[error("base members {0} and {1} have no common refinement in the base")]
    NotDirected(usize, usize),
    #[error("base member {0} has no strong covering downset of the filter below it")]
    NoStrongRefinement(usize),
    #[error("base member {0} has no star refinement in the filter")]
    NoStarRefinement(usize),
    #[error("not admissible: {x} has uniformly-below join {join}")]
    NotAdmissible { x: Elem, join: Elem },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompletionError {
    #[error("frame is not completely regular")]
    NotCompletelyRegular,
    #[error("frame is not zero-dimensional")]
    NotZeroDimensional,
    #[error("ultraparacompactness equivalence fails: {0:?}")]
    EquivalenceViolation([bool; 4]),
    #[error("kernel check violated: {0}")]
    InclusionViolation(String),
    #[error("{what} needs more than {cap}")]
    SizeCap { what: &'static str, cap: usize },
    #[error(transparent)]
    Uniformity(#[from] UniformityError),
    #[error(transparent)]
    Paircover(#[from] PaircoverError),
    #[error(transparent)]
    Biframe(#[from] BiframeError),
    #[error(transparent)]
    Congruence(#[from] CongruenceError),
    #[error(transparent)]
    Hom(#[from] HomError),
    #[error(transparent)]
    Order(#[from] OrderError),
}

/// A downset of a frame, given by its maximal elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cover {
    gens: Vec<Elem>,
}

impl Cover {
    pub fn generated(f: &FiniteFrame, elems: impl IntoIterator<Item = Elem>) -> Cover {
        let mut v: Vec<Elem> = elems.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        let gens = v
            .iter()
            .copied()
            .filter(|&x| !v.iter().any(|&y| y != x && f.le(x, y)))
            .collect();
        Cover { gens }
    }

    pub fn gens(&self) -> &[Elem] {
        &self.gens
    }

    pub fn contains(&self, f: &FiniteFrame, x: Elem) -> bool {
        self.gens.iter().any(|&g| f.le(x, g))
    }

    pub fn le(&self, f: &FiniteFrame, other: &Cover) -> bool {
        self.gens.iter().all(|&g| other.contains(f, g))
    }

    pub fn meet(&self, f: &FiniteFrame, other: &Cover) -> Cover {
        Cover::generated(
            f,
            self.gens
                .iter()
                .flat_map(|&x| other.gens.iter().map(move |&y| f.meet(x, y))),
        )
    }

    pub fn is_covering(&self, f: &FiniteFrame) -> bool {
        f.join_all(self.gens.iter().copied()) == f.top()
    }

    /// Generated by nonzero elements.
    pub fn is_strong(&self, f: &FiniteFrame) -> bool {
        self.gens.iter().all(|&g| g != f.bottom())
    }

    pub fn strongify(&self, f: &FiniteFrame) -> Cover {
        Cover {
            gens: self.gens.iter().copied().filter(|&g| g != f.bottom()).collect(),
        }
    }

    pub fn star(&self, f: &FiniteFrame, x: Elem) -> Elem {
        f.join_all(self.gens.iter().copied().filter(|&g| f.meet(x, g) != f.bottom()))
    }

    pub fn star_cover(&self, f: &FiniteFrame) -> Cover {
        Cover::generated(f, self.gens.iter().map(|&g| self.star(f, g)))
    }

    pub fn is_transitive(&self, f: &FiniteFrame) -> bool {
        self.star_cover(f) == *self
    }

    /// Nonzero, pairwise disjoint generators joining to 1.
    pub fn is_partition(&self, f: &FiniteFrame) -> bool {
        self.is_strong(f)
            && self.is_covering(f)
            && self
                .gens
                .iter()
                .enumerate()
                .all(|(k, &x)| self.gens[k + 1..].iter().all(|&y| f.meet(x, y) == f.bottom()))
    }
}

/// A uniformity on a finite frame, given by a finite base.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Uniformity {
    frame: FiniteFrame,
    base: Vec<Cover>,
}

#[derive(Deserialize)]
struct UniformityDoc {
    frame: FiniteFrame,
    base: Vec<Cover>,
}

impl<'de> Deserialize<'de> for Uniformity {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Uniformity, D::Error> {
        let doc = UniformityDoc::deserialize(d)?;
        let base = doc
            .base
            .iter()
            .map(|c| Cover::generated(&doc.frame, c.gens.iter().copied()))
            .collect();
        validate_uniformity(&doc.frame, base).map_err(serde::de::Error::custom)
    }
}

fn min_cover_index(f: &FiniteFrame, base: &[Cover]) -> Option<usize> {
    (0..base.len()).find(|&k| base.iter().all(|c| base[k].le(f, c)))
}

/// Checks the symmetric axioms: a directed base of covering downsets with
/// strong refinements, star refinements and admissibility.
pub fn validate_uniformity(f: &FiniteFrame, base: Vec<Cover>) -> Result<Uniformity, UniformityError> {
    if base.is_empty() {
        return Err(UniformityError::EmptyBase);
    }
    let mut base = base;
    base.sort();
    base.dedup();
    for (k, c) in base.iter().enumerate() {
        if let Some(&x) = c.gens.iter().find(|&&x| x >= f.len()) {
            return Err(UniformityError::OutOfRange(x));
        }
        if !c.is_covering(f) {
            return Err(UniformityError::NotCovering(k));
        }
    }
    if min_cover_index(f, &base).is_none() {
        for k in 0..base.len() {
            for l in k + 1..base.len() {
                let m = base[k].meet(f, &base[l]);
                if !base.iter().any(|w| w.le(f, &m)) {
                    return Err(UniformityError::NotDirected(k, l));
                }
            }
        }
    }
    for (k, c) in base.iter().enumerate() {
        let s = c.strongify(f);
        if !base.iter().any(|w| w.le(f, &s)) {
            return Err(UniformityError::NoStrongRefinement(k));
        }
        if !base.iter().any(|v| v.star_cover(f).le(f, c)) {
            return Err(UniformityError::NoStarRefinement(k));
        }
    }
    for x in f.elements() {
        let join = f.join_all(f.elements().filter(|&y| base.iter().any(|c| f.le(c.star(f, y), x))));
        if join != x {
            return Err(UniformityError::NotAdmissible { x, join });
        }
    }
    Ok(Uniformity {
        frame: f.clone(),
        base,
    })
}

impl Uniformity {
    pub fn frame(&self) -> &FiniteFrame {
        &self.frame
    }

    pub fn base(&self) -> &[Cover] {
        &self.base
    }

    pub fn minimum(&self) -> &Cover {
        &self.base[min_cover_index(&self.frame, &self.base).expect("validated bases are directed")]
    }

    pub fn contains(&self, c: &Cover) -> bool {
        self.base.iter().any(|w| w.le(&self.frame, c))
    }

    pub fn same_filter(&self, other: &Uniformity) -> bool {
        self.base.iter().all(|c| other.contains(c)) && other.base.iter().all(|c| self.contains(c))
    }

    /// Has a base of transitive covering downsets.
    pub fn is_transitive(&self) -> bool {
        let f = &self.frame;
        self.base
            .iter()
            .all(|c| self.base.iter().any(|v| v.le(f, c) && v.is_transitive(f)))
    }
}

/// A decider's answer together with whether it is exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Decision {
    pub value: bool,
    /// False when the candidate enumeration stopped at the cap.
    pub exact: bool,
    pub examined: usize,
}

/// Calls `visit` on every antichain drawn from `elems`; stops after `cap`
/// antichains. Returns the count visited and whether enumeration finished.
fn for_each_antichain(
    f: &FiniteFrame,
    elems: &[Elem],
    cap: usize,
    visit: &mut dyn FnMut(&[Elem]) -> bool,
) -> (usize, bool) {
    fn go(
        f: &FiniteFrame,
        elems: &[Elem],
        start: usize,
        cur: &mut Vec<Elem>,
        count: &mut usize,
        cap: usize,
        visit: &mut dyn FnMut(&[Elem]) -> bool,
    ) -> bool {
        if *count >= cap {
            return false;
        }
        *count += 1;
        if !visit(cur) {
            return false;
        }
        for k in start..elems.len() {
            let x = elems[k];
            if cur.iter().all(|&y| !f.le(x, y) && !f.le(y, x)) {
                cur.push(x);
                let more = go(f, elems, k + 1, cur, count, cap, visit);
                cur.pop();
                if !more {
                    return false;
                }
            }
        }
        true
    }
    let mut count = 0;
    let finished = go(f, elems, 0, &mut Vec::new(), &mut count, cap, visit);
    (count, finished)
}

/// Least downset containing `d` and closed under
/// `↓a ∩ W ⊆ D ⟹ a ∈ D`.
pub fn saturate(f: &FiniteFrame, w: &Cover, d: &[bool]) -> Vec<bool> {
    let mut d = d.to_vec();
    loop {
        let mut changed = false;
        for a in f.elements() {
            if !d[a] && w.gens().iter().all(|&g| d[f.meet(a, g)]) {
                d[a] = true;
                changed = true;
            }
        }
        if !changed {
            return d;
        }
    }
}

/// Completeness against the least uniform cover `w`: every covering
/// downset saturates to the whole frame. Testing `w` alone suffices since
/// larger uniform covers make the rule harder to apply.
pub fn complete_against(f: &FiniteFrame, w: &Cover) -> Decision {
    let elems: Vec<Elem> = f.elements().collect();
    let mut value = true;
    let (examined, finished) = for_each_antichain(f, &elems, caps().antichains, &mut |a| {
        if f.join_all(a.iter().copied()) != f.top() {
            return true;
        }
        let d: Vec<bool> = f.elements().map(|x| a.iter().any(|&g| f.le(x, g))).collect();
        value = saturate(f, w, &d)[f.top()];
        value
    });
    Decision {
        value,
        exact: finished || !value,
        examined,
    }
}

pub fn is_complete_uniform(u: &Uniformity) -> Decision {
    complete_against(&u.frame, u.minimum())
}

/// Partitions whose members lie in `eligible` (nonzero, pairwise disjoint,
/// joining to 1). `visit` returns false to stop.
fn for_each_partition(f: &FiniteFrame, eligible: &[Elem], visit: &mut dyn FnMut(&[Elem]) -> bool) -> bool {
    fn go(
        f: &FiniteFrame,
        eligible: &[Elem],
        used: u64,
        full: u64,
        cur: &mut Vec<Elem>,
        visit: &mut dyn FnMut(&[Elem]) -> bool,
    ) -> bool {
        if used == full {
            return visit(cur);
        }
        let j = (full & !used).trailing_zeros();
        for &x in eligible {
            let m = f.bits(x);
            if m >> j & 1 == 1 && m & used == 0 {
                cur.push(x);
                let more = go(f, eligible, used | m, full, cur, visit);
                cur.pop();
                if !more {
                    return false;
                }
            }
        }
        true
    }
    go(f, eligible, 0, f.jposet().full_mask(), &mut Vec::new(), visit)
}

/// Every partition of `f`, up to the antichain cap.
pub fn partitions(f: &FiniteFrame) -> Result<Vec<Vec<Elem>>, CompletionError> {
    let cap = caps().antichains;
    let nonzero: Vec<Elem> = f.elements().filter(|&x| x != f.bottom()).collect();
    let mut out = Vec::new();
    let finished = for_each_partition(f, &nonzero, &mut |p| {
        let mut p = p.to_vec();
        p.sort_unstable();
        out.push(p);
        out.len() < cap
    });
    if !finished {
        return Err(CompletionError::SizeCap {
            what: "partition enumeration",
            cap,
        });
    }
    out.sort();
    Ok(out)
}

/// Every cover is refined by a partition. Covers are checked through their
/// antichains of maximal nonzero elements.
pub fn is_ultraparacompact(f: &FiniteFrame) -> Result<bool, CompletionError> {
    let nonzero: Vec<Elem> = f.elements().filter(|&x| x != f.bottom()).collect();
    let cap = caps().antichains;
    let mut covers: Vec<Vec<Elem>> = Vec::new();
    let (_, finished) = for_each_antichain(f, &nonzero, cap, &mut |a| {
        if f.join_all(a.iter().copied()) == f.top() {
            covers.push(a.to_vec());
        }
        true
    });
    if !finished {
        return Err(CompletionError::SizeCap {
            what: "cover enumeration",
            cap,
        });
    }
    Ok(covers.par_iter().all(|cover| {
        let eligible: Vec<Elem> = nonzero
            .iter()
            .copied()
            .filter(|&x| cover.iter().any(|&c| f.le(x, c)))
            .collect();
        let mut found = false;
        for_each_partition(f, &eligible, &mut |_| {
            found = true;
            false
        });
        found
    }))
}

/// Largest uniformity: all strong covering downsets.
pub fn fine_uniformity(f: &FiniteFrame) -> Result<Uniformity, CompletionError> {
    if !Biframe::symmetric(f).is_completely_regular() {
        return Err(CompletionError::NotCompletelyRegular);
    }
    let nonzero: Vec<Elem> = f.elements().filter(|&x| x != f.bottom()).collect();
    let cap = caps().antichains;
    let mut base = Vec::new();
    let (_, finished) = for_each_antichain(f, &nonzero, cap, &mut |a| {
        if f.join_all(a.iter().copied()) == f.top() {
            base.push(Cover::generated(f, a.iter().copied()));
        }
        true
    });
    if !finished {
        return Err(CompletionError::SizeCap {
            what: "strong cover enumeration",
            cap,
        });
    }
    Ok(validate_uniformity(f, base)?)
}

/// The uniformity generated by all partitions.
pub fn fine_transitive_uniformity(f: &FiniteFrame) -> Result<Uniformity, CompletionError> {
    if !Biframe::symmetric(f).is_zero_dimensional() {
        return Err(CompletionError::NotZeroDimensional);
    }
    let base = partitions(f)?
        .into_iter()
        .map(|p| Cover::generated(f, p))
        .collect();
    Ok(validate_uniformity(f, base)?)
}

fn exact(d: Decision, what: &'static str) -> Result<bool, CompletionError> {
    if d.exact {
        Ok(d.value)
    } else {
        Err(CompletionError::SizeCap {
            what,
            cap: caps().antichains,
        })
    }
}

/// The four conditions: ultraparacompact; fine uniformity complete and
/// transitive; zero-dimensional and complete in the fine transitive
/// uniformity; some complete transitive uniformity exists.
pub fn check_ultraparacompact_equivalences(f: &FiniteFrame) -> Result<[bool; 4], CompletionError> {
    let sym = Biframe::symmetric(f);
    if !sym.is_completely_regular() {
        return Err(CompletionError::NotCompletelyRegular);
    }
    let c1 = is_ultraparacompact(f)?;
    let fine = fine_uniformity(f)?;
    let c2 = exact(is_complete_uniform(&fine), "completeness")? && fine.is_transitive();
    let c3 = sym.is_zero_dimensional() && {
        let ft = fine_transitive_uniformity(f)?;
        exact(is_complete_uniform(&ft), "completeness")?
    };
    // A finite uniformity has a least member, which is strong and
    // transitive when the uniformity is transitive, hence a partition.
    let mut c4 = false;
    for p in partitions(f)? {
        if let Ok(u) = validate_uniformity(f, vec![Cover::generated(f, p)]) {
            if u.is_transitive() && exact(is_complete_uniform(&u), "completeness")? {
                c4 = true;
                break;
            }
        }
    }
    let all = [c1, c2, c3, c4];
    if all.iter().any(|&c| c != c1) {
        return Err(CompletionError::EquivalenceViolation(all));
    }
    Ok(all)
}

/// `g: C_lat L → C L` as a biframe map with its verification flags.
#[derive(Clone, Debug)]
pub struct UniversalCompactification {
    pub clat_biframe: Biframe,
    pub congruence_biframe: Biframe,
    pub g: BiframeHom,
    pub dense: bool,
    pub surjective: bool,
    pub codomain_compact_zero_dimensional: bool,
    pub ideal_lattice_matches: bool,
    pub induces_rather_below: bool,
}

impl UniversalCompactification {
    pub fn holds(&self) -> bool {
        self.dense
            && self.surjective
            && self.codomain_compact_zero_dimensional
            && self.ideal_lattice_matches
            && self.induces_rather_below
    }
}

/// Ideals of `f` (nonempty downsets closed under binary joins), ordered by
/// inclusion. Meets are intersections; joins are generated ideals.
pub fn ideal_lattice(f: &FiniteFrame) -> Result<FiniteFrame, CompletionError> {
    let cap = caps().antichains;
    let elems: Vec<Elem> = f.elements().collect();
    let mut family: Vec<Vec<bool>> = Vec::new();
    let (_, finished) = for_each_antichain(f, &elems, cap, &mut |a| {
        let d: Vec<bool> = f.elements().map(|x| a.iter().any(|&g| f.le(x, g))).collect();
        let members: Vec<Elem> = f.elements().filter(|&x| d[x]).collect();
        let closed = !members.is_empty() && members.iter().all(|&x| members.iter().all(|&y| d[f.join(x, y)]));
        if closed {
            family.push(d);
        }
        true
    });
    if !finished {
        return Err(CompletionError::SizeCap {
            what: "ideal enumeration",
            cap,
        });
    }
    let n = family.len();
    let subset = |a: &[bool], b: &[bool]| a.iter().zip(b).all(|(&x, &y)| !x || y);
    // Least family member containing a set.
    let least_above = |s: &[bool]| {
        let above: Vec<usize> = (0..n).filter(|&k| subset(s, &family[k])).collect();
        *above
            .iter()
            .find(|&&k| above.iter().all(|&l| subset(&family[k], &family[l])))
            .expect("ideals form a complete lattice")
    };
    let mut meet = vec![vec![0; n]; n];
    let mut join = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            let i: Vec<bool> = family[a].iter().zip(&family[b]).map(|(&x, &y)| x && y).collect();
            let u: Vec<bool> = family[a].iter().zip(&family[b]).map(|(&x, &y)| x || y).collect();
            meet[a][b] = least_above(&i);
            join[a][b] = least_above(&u);
        }
    }
    Ok(lattice_from_tables(&meet, &join)?.0)
}

/// The strong inclusion a surjection `g` induces on its codomain:
/// `a ◁ b` iff some preimages in the same part are rather below.
fn induced_inclusion(g: &BiframeHom, i: usize) -> Relation {
    let src = g.dom.rather_below(i);
    let part = g.cod.part(i).to_vec();
    let holds = part
        .iter()
        .map(|&a| {
            part.iter()
                .map(|&b| src.pairs().iter().any(|&(x, y)| g.hom.apply(x) == a && g.hom.apply(y) == b))
                .collect()
        })
        .collect();
    Relation::new(part, holds)
}

pub fn universal_compactification_g(f: &FiniteFrame) -> Result<UniversalCompactification, CompletionError> {
    let gm = g_map(f)?;
    let clat = &gm.clat;
    let m = clat.frame();
    let nablas: Vec<Elem> = f.elements().map(|a| clat.nabla(a)).collect();
    let deltas: Vec<Elem> = f.elements().map(|a| clat.delta(a)).collect();
    let clat_biframe = make_biframe(m, &subframe_generated(m, &nablas), &subframe_generated(m, &deltas))?;
    let (cb, _) = congruence_biframe(f)?;
    let g = validate_biframe_hom(&clat_biframe, &cb, gm.hom.map().to_vec())?;
    let part1 = clat_biframe.part_frame(1)?;
    let ideal_lattice_matches = canonical_form(&part1.frame) == canonical_form(&ideal_lattice(f)?);
    let induces_rather_below = (1..=2).all(|i| induced_inclusion(&g, i) == cb.rather_below(i));
    Ok(UniversalCompactification {
        dense: g.is_dense(),
        surjective: g.is_surjective(),
        codomain_compact_zero_dimensional: clat_biframe.is_compact() && clat_biframe.is_zero_dimensional(),
        ideal_lattice_matches,
        induces_rather_below,
        clat_biframe,
        congruence_biframe: cb,
        g,
    })
}

/// Output of the bicompletion pipeline.
#[derive(Clone, Debug)]
pub struct Bicompletion {
    pub biframe: Biframe,
    pub qu: QuasiUniformity,
    pub nu: BiframeHom,
    pub gamma: BiframeHom,
    pub theta: FrameCongruence,
    /// `k_U` for each base member, in the compactification's total part.
    pub k: Vec<Elem>,
    pub nu_dense_surjective: bool,
    pub gamma_dense_surjective: bool,
    pub gamma_isomorphism: bool,
    pub transported_base_strong: bool,
}

/// Right adjoint of the part map `ρ_i` as a map on part elements.
fn part_adjoint(rho: &BiframeHom, i: usize) -> impl Fn(Elem) -> Elem + '_ {
    move |u| {
        let t = rho.dom.total();
        t.join_all(
            rho.dom
                .part(i)
                .iter()
                .copied()
                .filter(|&x| rho.cod.total().le(rho.hom.apply(x), u)),
        )
    }
}

/// Bicompletion of `(𝓛, 𝒰)` as the quotient of a compactification
/// `ρ: 𝓒 ↠ 𝓛` by `Θ = ⋁_U Δ_{k_U}`. Without `ρ`, the identity is used.
pub fn bicompletion(qu: &QuasiUniformity, rho: Option<&BiframeHom>) -> Result<Bicompletion, CompletionError> {
    let b = qu.biframe();
    let id;
    let rho = match rho {
        Some(r) => r,
        None => {
            id = validate_biframe_hom(b, b, b.total().elements().collect())?;
            &id
        }
    };
    if rho.cod != *b {
        return Err(CompletionError::InclusionViolation("ρ does not land in the biframe".into()));
    }
    if !(rho.is_dense() && rho.is_surjective() && rho.dom.is_compact()) {
        return Err(CompletionError::InclusionViolation("ρ is not a compact dense surjection".into()));
    }
    let c = rho.dom.total();
    let r1 = part_adjoint(rho, 1);
    let r2 = part_adjoint(rho, 2);
    let ks: Vec<PairDownset> = qu
        .base()
        .iter()
        .map(|u| PairDownset::generated(&rho.dom, &u.gens().iter().map(|&(x, y)| (r1(x), r2(y))).collect::<Vec<_>>()))
        .collect::<Result<_, _>>()?;
    let k: Vec<Elem> = ks.iter().map(|kk| kk.join_value(&rho.dom)).collect();
    let pairs: Vec<(Elem, Elem)> = k
        .iter()
        .flat_map(|&kv| open_congruence(c, kv).spanning_pairs())
        .collect();
    let theta = congruence_closure(c, &pairs);
    let (q, proj) = quotient_by_congruence(c, &theta)?;
    let image = |i: usize| -> Vec<Elem> { rho.dom.part(i).iter().map(|&x| proj.apply(x)).collect() };
    let biframe = make_biframe(&q, &image(1), &image(2))?;
    let nu = validate_biframe_hom(&rho.dom, &biframe, proj.map().to_vec())?;
    let mut gmap = vec![usize::MAX; q.len()];
    for x in c.elements() {
        let slot = &mut gmap[proj.apply(x)];
        let y = rho.hom.apply(x);
        if *slot != usize::MAX && *slot != y {
            return Err(CompletionError::InclusionViolation("ρ does not factor through ν".into()));
        }
        *slot = y;
    }
    let gamma = validate_biframe_hom(&biframe, b, gmap)?;
    let transported: Vec<PairDownset> = ks.iter().map(|kk| kk.image(&nu)).collect();
    let transported_base_strong = transported
        .iter()
        .zip(qu.base())
        .all(|(t, u)| !u.is_strong(b) || t.is_strong(&biframe));
    let new_qu = validate_quasi_uniformity(&biframe, transported)?;
    Ok(Bicompletion {
        nu_dense_surjective: nu.is_dense() && nu.is_surjective(),
        gamma_dense_surjective: gamma.is_dense() && gamma.is_surjective(),
        gamma_isomorphism: gamma.is_isomorphism(),
        transported_base_strong,
        biframe,
        qu: new_qu,
        nu,
        gamma,
        theta,
        k,
    })
}

/// Report of the kernel inclusion `ker g ≤ K` on `C_lat L`.
#[derive(Clone, Debug, Serialize)]
pub struct KernelReport {
    pub chains: usize,
    pub kernel_contained: bool,
    pub kernel_diagonal: bool,
    /// Congruences `C` with `g(C) = 1` whose chain witness was verified.
    pub witnesses_checked: usize,
    pub witnesses_ok: bool,
}

impl KernelReport {
    pub fn holds(&self) -> bool {
        self.kernel_contained && self.witnesses_ok
    }
}

/// Increasing sequence `0 = x_0 < … < x_k = 1` with consecutive terms
/// related, found by breadth-first search.
fn chain_witness(f: &FiniteFrame, related: impl Fn(Elem, Elem) -> bool) -> Option<Vec<Elem>> {
    let mut prev = vec![usize::MAX; f.len()];
    let mut queue = std::collections::VecDeque::from([f.bottom()]);
    prev[f.bottom()] = f.bottom();
    while let Some(x) = queue.pop_front() {
        if x == f.top() {
            let mut path = vec![x];
            let mut cur = x;
            while cur != f.bottom() {
                cur = prev[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for y in f.elements() {
            if prev[y] == usize::MAX && f.lt(x, y) && related(x, y) {
                prev[y] = x;
                queue.push_back(y);
            }
        }
    }
    None
}

/// `K` is generated by `⋁_{a∈A∖{1}} ∇_{a⁺} ∧ Δ_a ~ 1` over join-closed
/// chains `A`; checks `ker g ≤ K` and replays the chain argument for every
/// `C` with `g(C) = 1`.
pub fn theorem_kernel_check(f: &FiniteFrame) -> Result<KernelReport, CompletionError> {
    let gm = g_map(f)?;
    let clat = &gm.clat;
    let m = clat.frame();
    let chains = join_closed_chains(&Biframe::symmetric(f))?;
    let gen_of = |chain: &[Elem]| {
        m.join_all(chain.windows(2).map(|w| m.meet(clat.nabla(w[1]), clat.delta(w[0]))))
    };
    let generators: Vec<Elem> = chains.iter().map(|a| gen_of(a)).collect();
    let pairs: Vec<(Elem, Elem)> = generators.iter().map(|&e| (e, m.top())).collect();
    let k = congruence_closure(m, &pairs);
    let kernel = gm.kernel();
    let kernel_contained = kernel.le(&k);
    let top = gm.cf.frame().top();
    let mut witnesses_checked = 0;
    let mut witnesses_ok = true;
    for c in m.elements().filter(|&c| gm.hom.apply(c) == top) {
        witnesses_checked += 1;
        let lc = clat.congruence(c);
        let Some(seq) = chain_witness(f, |x, y| lc.related(x, y)) else {
            witnesses_ok = false;
            continue;
        };
        let steps_ok = seq.windows(2).all(|w| {
            let p = clat.generated(&[(w[0], w[1])]);
            p == m.meet(clat.nabla(w[1]), clat.delta(w[0])) && m.le(p, c)
        });
        let listed = generators.contains(&gen_of(&seq));
        witnesses_ok &= steps_ok && listed && k.related(c, m.top());
    }
    Ok(KernelReport {
        chains: chains.len(),
        kernel_contained,
        kernel_diagonal: kernel.is_diagonal(),
        witnesses_checked,
        witnesses_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::biframe::{coreflection_chi, skula_biframe, Space};
    use crate::order::{downset_frame, Poset};
    use crate::paircover::{symmetrisation, well_monotone_qu};

    fn kite() -> FiniteFrame {
        downset_frame(&Poset::from_relations(3, &[(0, 1), (0, 2)]).unwrap()).unwrap()
    }

    #[test]
    fn completeness_examples() {
        let two = FiniteFrame::two();
        let u = validate_uniformity(&two, vec![Cover::generated(&two, [1])]).unwrap();
        assert_eq!(is_complete_uniform(&u), Decision { value: true, exact: true, examined: 3 });
        let b2 = FiniteFrame::boolean(2);
        let u = validate_uniformity(&b2, vec![Cover::generated(&b2, [3]), Cover::generated(&b2, [1, 2])]).unwrap();
        assert!(is_complete_uniform(&u).value);
        assert!(is_complete_uniform(&u).exact);
    }

    #[test]
    fn saturation_can_stall() {
        // Against ↓1 the rule only adds what is already there, so the
        // covering downset ↓{a, b} of B2 never reaches 1.
        let b2 = FiniteFrame::boolean(2);
        let d = complete_against(&b2, &Cover::generated(&b2, [3]));
        assert!(!d.value && d.exact);
        let start = vec![true, true, true, false];
        assert_eq!(saturate(&b2, &Cover::generated(&b2, [3]), &start), start);
        assert_eq!(saturate(&b2, &Cover::generated(&b2, [1, 2]), &start), vec![true; 4]);
    }

    #[test]
    fn ultraparacompact_examples() {
        assert!(is_ultraparacompact(&FiniteFrame::one()).unwrap());
        assert!(is_ultraparacompact(&FiniteFrame::two()).unwrap());
        assert!(!is_ultraparacompact(&kite()).unwrap());
        assert!(is_ultraparacompact(&FiniteFrame::chain(3)).unwrap());
        assert!(is_ultraparacompact(&FiniteFrame::boolean(2)).unwrap());
    }

    #[test]
    fn fine_examples() {
        let b2 = FiniteFrame::boolean(2);
        let ft = fine_transitive_uniformity(&b2).unwrap();
        assert!(ft.base().contains(&Cover::generated(&b2, [1, 2])));
        assert!(ft.base().contains(&Cover::generated(&b2, [3])));
        let two = FiniteFrame::two();
        assert_eq!(fine_transitive_uniformity(&two).unwrap().base(), &[Cover::generated(&two, [1])]);
        assert_eq!(
            fine_uniformity(&FiniteFrame::chain(3)).unwrap_err(),
            CompletionError::NotCompletelyRegular
        );
    }

    #[test]
    fn equivalence_examples() {
        assert_eq!(check_ultraparacompact_equivalences(&FiniteFrame::boolean(2)).unwrap(), [true; 4]);
        assert_eq!(check_ultraparacompact_equivalences(&FiniteFrame::two()).unwrap(), [true; 4]);
        assert_eq!(
            check_ultraparacompact_equivalences(&kite()).unwrap_err(),
            CompletionError::NotCompletelyRegular
        );
    }

    #[test]
    fn universal_compactification_examples() {
        let u = universal_compactification_g(&FiniteFrame::chain(3)).unwrap();
        assert!(u.holds());
        assert!(u.g.is_isomorphism());
        assert_eq!(u.clat_biframe.total().len(), 4);
        let one = universal_compactification_g(&FiniteFrame::one()).unwrap();
        assert!(one.holds());
        assert!(universal_compactification_g(&kite()).unwrap().holds());
    }

    #[test]
    fn bicompletion_examples() {
        let (cc3, _) = congruence_biframe(&FiniteFrame::chain(3)).unwrap();
        let wm = well_monotone_qu(&cc3).unwrap();
        let bc = bicompletion(&wm, None).unwrap();
        assert!(bc.k.iter().all(|&k| k == cc3.total().top()));
        assert!(bc.gamma_isomorphism && bc.nu_dense_surjective && bc.gamma_dense_surjective);
        assert_eq!(bc.biframe.canonical_key(), cc3.canonical_key());
        // With ρ = χ (an isomorphism here) the result is the same.
        let chi = coreflection_chi(&cc3).unwrap().chi;
        let bc2 = bicompletion(&wm, Some(&chi)).unwrap();
        assert!(bc2.gamma_isomorphism);
        let sk = skula_biframe(&Space {
            points: 2,
            opens: vec![vec![], vec![1], vec![0, 1]],
        })
        .unwrap();
        let bc = bicompletion(&well_monotone_qu(&sk).unwrap(), None).unwrap();
        assert!(bc.gamma_isomorphism);
        let (omega, _) = congruence_biframe(&sk.part_frame(1).unwrap().frame).unwrap();
        assert_eq!(bc.biframe.canonical_key(), omega.canonical_key());
        let one = Biframe::symmetric(&FiniteFrame::one());
        let q1 = well_monotone_qu(&one).unwrap();
        assert_eq!(bicompletion(&q1, None).unwrap().biframe.total().len(), 1);
    }

    #[test]
    fn non_samuel_compactification_is_rejected() {
        // C3 → TWO onto the symmetric TWO biframe is a compact dense
        // surjection that does not induce the well-monotone structure.
        let c3 = Biframe::symmetric(&FiniteFrame::chain(3));
        let two = Biframe::symmetric(&FiniteFrame::two());
        let rho = validate_biframe_hom(&c3, &two, vec![0, 1, 1]).unwrap();
        let qu = well_monotone_qu(&two).unwrap();
        assert!(bicompletion(&qu, Some(&rho)).is_err());
    }

    #[test]
    fn kernel_examples() {
        for f in [FiniteFrame::two(), FiniteFrame::chain(3), FiniteFrame::boolean(2)] {
            let r = theorem_kernel_check(&f).unwrap();
            assert!(r.holds() && r.kernel_diagonal, "{r:?}");
        }
        let r = theorem_kernel_check(&FiniteFrame::chain(3)).unwrap();
        assert_eq!(r.chains, 2);
    }

    #[test]
    fn congruence_frames_are_ultraparacompact_via_symmetrisation() {
        let (cc3, _) = congruence_biframe(&FiniteFrame::chain(3)).unwrap();
        let s = symmetrisation(&well_monotone_qu(&cc3).unwrap()).unwrap();
        assert!(s.is_transitive());
        assert!(is_complete_uniform(&s).value);
        assert!(is_ultraparacompact(cc3.total()).unwrap());
    }

    #[test]
    fn uniformity_serde() {
        let b2 = FiniteFrame::boolean(2);
        let u = fine_transitive_uniformity(&b2).unwrap();
        let s = serde_json::to_string(&u).unwrap();
        let back: Uniformity = serde_json::from_str(&s).unwrap();
        assert_eq!(back, u);
    }
}
