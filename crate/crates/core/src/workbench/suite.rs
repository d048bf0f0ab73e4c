//! Named claim suites run over enumerated instances.
//!
//! Every claim is a check on a single instance, so a failing instance is a
//! self-contained witness: [`replay`] reruns exactly that check.

use std::collections::BTreeMap;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::biframe::{
    coreflection_chi, congruence_biframe, interpolative_core, make_biframe, skula_biframe, validate_biframe_hom,
    Biframe, Space,
};
use crate::canon::isomorphic_brute_force;
use crate::caps::{caps, SizeCaps};
use crate::completion::{
    bicompletion, check_ultraparacompact_equivalences, is_complete_uniform, is_ultraparacompact,
    theorem_kernel_check, universal_compactification_g, validate_uniformity, Cover,
};
use crate::congruence::{
    chain_closure, clat_frame, congruence_closure, congruence_frame, congruences_by_partition_search, g_map,
    is_fit, FrameCongruence, LatticeCongruence,
};
use crate::hom::{enumerate_homs, is_dense, quotient_by_congruence, right_adjoint, subframe_generated};
use crate::order::{downset_frame, join_irreducible_poset, Elem, FiniteFrame, Poset};
use crate::paircover::{
    fletcher_paircover, join_closed_chains, make_paircover, pervin_qu, quasi_proximity_of, quotient_qu,
    rather_below_pair, successor_paircover, symmetrisation, validate_quasi_proximity,
    validate_quasi_uniformity, well_monotone_qu, PairDownset, QuasiUniformity,
};

use super::enumerate::{enumerate_posets, enumerate_t0_spaces};
use super::WorkbenchError;

pub const SUITES: [&str; 9] = [
    "lemma-wm-base",
    "wm-hereditary",
    "ultraparacompact",
    "bicompletion",
    "kernel",
    "sobriety",
    "proximity",
    "congruence-oracles",
    "all",
];

/// A single object a claim is checked on.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Instance {
    /// The downset frame of a poset.
    Frame { poset: Poset },
    /// The congruence biframe of the downset frame of a poset.
    CongruenceBiframe { poset: Poset },
    Skula { space: Space },
    Biframe { biframe: Biframe },
    /// A pseudo-random frame and congruence drawn from `(seed, index)`.
    Random { seed: u64, index: usize },
    Terminal,
}

impl Instance {
    pub fn size(&self) -> usize {
        match self {
            Instance::Frame { poset } | Instance::CongruenceBiframe { poset } => poset.n(),
            Instance::Skula { space } => space.points,
            Instance::Biframe { biframe } => biframe.total().len(),
            Instance::Random { .. } | Instance::Terminal => 0,
        }
    }

    fn frame(&self) -> Result<FiniteFrame, String> {
        match self {
            Instance::Frame { poset } => downset_frame(poset).map_err(|e| e.to_string()),
            Instance::Terminal => Ok(FiniteFrame::one()),
            other => Err(format!("expected a frame instance, got {other:?}")),
        }
    }

    fn biframe(&self) -> Result<Biframe, String> {
        match self {
            Instance::CongruenceBiframe { poset } => {
                let f = downset_frame(poset).map_err(|e| e.to_string())?;
                Ok(congruence_biframe(&f).map_err(|e| e.to_string())?.0)
            }
            Instance::Skula { space } => skula_biframe(space).map_err(|e| e.to_string()),
            Instance::Biframe { biframe } => Ok(biframe.clone()),
            other => Err(format!("expected a biframe instance, got {other:?}")),
        }
    }

    fn space(&self) -> Result<&Space, String> {
        match self {
            Instance::Skula { space } => Ok(space),
            other => Err(format!("expected a space instance, got {other:?}")),
        }
    }
}

/// Deliberately corrupted deciders for self-testing the harness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mutation {
    /// Negates the ultraparacompactness decider.
    Ultraparacompact,
    /// Replaces the chain closure by the diagonal.
    ChainClosure,
    /// Reports the kernel inclusion as failed.
    Kernel,
}

impl FromStr for Mutation {
    type Err = WorkbenchError;

    fn from_str(s: &str) -> Result<Mutation, WorkbenchError> {
        match s {
            "ultraparacompact" => Ok(Mutation::Ultraparacompact),
            "chain-closure" => Ok(Mutation::ChainClosure),
            "kernel" => Ok(Mutation::Kernel),
            _ => Err(WorkbenchError::UnknownMutation(s.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
struct Ctx {
    mutation: Option<Mutation>,
}

impl Ctx {
    fn ultraparacompact(&self, f: &FiniteFrame) -> Result<bool, String> {
        let v = is_ultraparacompact(f).map_err(|e| e.to_string())?;
        Ok(v != (self.mutation == Some(Mutation::Ultraparacompact)))
    }

    fn chain_closure(&self, f: &FiniteFrame, c: &LatticeCongruence) -> Result<FrameCongruence, String> {
        if self.mutation == Some(Mutation::ChainClosure) {
            return Ok(FrameCongruence::diagonal(f));
        }
        chain_closure(f, c).map_err(|e| e.to_string())
    }

    fn kernel_holds(&self, f: &FiniteFrame) -> Result<bool, String> {
        let r = theorem_kernel_check(f).map_err(|e| e.to_string())?;
        Ok(r.holds() && self.mutation != Some(Mutation::Kernel))
    }
}

/// Whether a claim is checked as stated or only in its finite form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Full,
    FiniteShadow,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Source {
    Frames,
    Str0d,
    Spaces,
    SmallBiframes,
    Random,
    Terminal,
}

impl Source {
    fn name(self) -> &'static str {
        match self {
            Source::Frames => "frames",
            Source::Str0d => "strictly-zero-dimensional-biframes",
            Source::Spaces => "t0-spaces",
            Source::SmallBiframes => "small-biframes",
            Source::Random => "random-congruences",
            Source::Terminal => "terminal",
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Verdict {
    applicable: bool,
    exact: bool,
}

const OK: Verdict = Verdict {
    applicable: true,
    exact: true,
};
const VACUOUS: Verdict = Verdict {
    applicable: false,
    exact: true,
};

type Outcome = Result<Verdict, String>;

struct Claim {
    suite: &'static str,
    id: &'static str,
    statement: &'static str,
    status: Status,
    degeneracy: Option<&'static str>,
    source: Source,
    check: fn(&Instance, &Ctx) -> Outcome,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

// ---- frame algebra and congruences -------------------------------------

fn birkhoff_round_trip(inst: &Instance, _: &Ctx) -> Outcome {
    let Instance::Frame { poset } = inst else {
        return Err("expected a frame instance".into());
    };
    let f = downset_frame(poset).map_err(err)?;
    ensure(isomorphic_brute_force(&join_irreducible_poset(&f), poset), || {
        "join-irreducibles are not isomorphic to the poset".into()
    })?;
    Ok(OK)
}

fn heyting_adjunction(inst: &Instance, _: &Ctx) -> Outcome {
    let f = inst.frame()?;
    for a in f.elements() {
        for b in f.elements() {
            let h = f.heyting(a, b);
            for c in f.elements() {
                ensure(f.le(f.meet(c, a), b) == f.le(c, h), || format!("a={a} b={b} c={c}"))?;
            }
        }
    }
    Ok(OK)
}

/// All subsets for frames of at most 16 elements; binary joins otherwise.
fn distributivity(inst: &Instance, _: &Ctx) -> Outcome {
    let f = inst.frame()?;
    let n = f.len();
    if n <= 16 {
        for x in f.elements() {
            for s in 0u64..1 << n {
                let ys = (0..n).filter(|&k| s >> k & 1 == 1);
                let lhs = f.meet(x, f.join_all(ys.clone()));
                let rhs = f.join_all(ys.map(|y| f.meet(x, y)));
                ensure(lhs == rhs, || format!("x={x} subset mask {s:#x}"))?;
            }
        }
        return Ok(OK);
    }
    for x in f.elements() {
        for y in f.elements() {
            for z in f.elements() {
                ensure(f.meet(x, f.join(y, z)) == f.join(f.meet(x, y), f.meet(x, z)), || {
                    format!("x={x} y={y} z={z}")
                })?;
            }
        }
    }
    Ok(Verdict {
        applicable: true,
        exact: false,
    })
}

fn congruence_frame_boolean(inst: &Instance, _: &Ctx) -> Outcome {
    let f = inst.frame()?;
    let cf = congruence_frame(&f).map_err(err)?;
    let j = f.jposet().n();
    ensure(cf.frame().is_boolean() && cf.frame().len() == 1 << j, || {
        format!("|C L| = {} with |J| = {j}", cf.frame().len())
    })?;
    if f.len() <= caps().partition_oracle {
        let mut oracle = congruences_by_partition_search(&f).map_err(err)?;
        let mut fast = cf.congruences().to_vec();
        oracle.sort();
        fast.sort();
        ensure(oracle == fast, || "partition oracle disagrees".into())?;
    }
    Ok(OK)
}

fn nabla_delta(inst: &Instance, _: &Ctx) -> Outcome {
    let f = inst.frame()?;
    let cf = congruence_frame(&f).map_err(err)?;
    let c = cf.frame();
    for a in f.elements() {
        let (n, d) = (cf.nabla(a), cf.delta(a));
        ensure(c.join(n, d) == c.top() && c.meet(n, d) == c.bottom(), || {
            format!("nabla and delta of {a} are not complements")
        })?;
    }
    let mut images: Vec<Elem> = f.elements().map(|a| cf.nabla(a)).collect();
    images.sort_unstable();
    images.dedup();
    ensure(images.len() == f.len(), || "nabla is not injective".into())?;
    let gens: Vec<Elem> = f.elements().flat_map(|a| [cf.nabla(a), cf.delta(a)]).collect();
    ensure(subframe_generated(c, &gens).len() == c.len(), || {
        "opens and closeds do not generate".into()
    })?;
    Ok(OK)
}

fn clat_comparison(inst: &Instance, _: &Ctx) -> Outcome {
    let f = inst.frame()?;
    let gm = g_map(&f).map_err(err)?;
    ensure(gm.is_dense() && gm.is_surjective() && gm.kernel().is_diagonal(), || {
        "g is not an isomorphism".into()
    })?;
    Ok(OK)
}

fn chain_closure_on(f: &FiniteFrame, ctx: &Ctx) -> Result<(), String> {
    let clat = clat_frame(f).map_err(err)?;
    for (e, lc) in clat.congruences().iter().enumerate() {
        let closed = ctx.chain_closure(f, lc)?;
        let direct = congruence_closure(f, &lc.spanning_pairs());
        ensure(closed == direct, || format!("lattice congruence {e}: {:?}", lc.classes()))?;
    }
    Ok(())
}

fn chain_closure_sweep(inst: &Instance, ctx: &Ctx) -> Outcome {
    let f = inst.frame()?;
    chain_closure_on(&f, ctx)?;
    let cf = congruence_frame(&f).map_err(err)?;
    if cf.frame().len() <= 32 {
        chain_closure_on(cf.frame(), ctx).map_err(|m| format!("on C L: {m}"))?;
    }
    Ok(OK)
}

/// A poset on 1 to 5 points, a downset frame, and a congruence generated
/// by up to three random pairs.
pub(crate) fn random_case(seed: u64, index: usize) -> (FiniteFrame, LatticeCongruence) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ index as u64);
    let n = rng.gen_range(1..=5);
    let lt: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|_| rng.gen_bool(0.35))
        .collect();
    let p = Poset::from_relations(n, &lt).expect("forward edges are acyclic");
    let f = downset_frame(&p).expect("at most 32 elements");
    let k = rng.gen_range(1..=3);
    let pairs: Vec<(Elem, Elem)> = (0..k)
        .map(|_| (rng.gen_range(0..f.len()), rng.gen_range(0..f.len())))
        .collect();
    let theta = congruence_closure(&f, &pairs);
    (f, theta.as_lattice_congruence())
}

fn chain_closure_random(inst: &Instance, ctx: &Ctx) -> Outcome {
    let Instance::Random { seed, index } = *inst else {
        return Err("expected a random instance".into());
    };
    let (f, lc) = random_case(seed, index);
    let closed = ctx.chain_closure(&f, &lc)?;
    ensure(closed == congruence_closure(&f, &lc.spanning_pairs()), || {
        format!("frame of {} elements, classes {:?}", f.len(), lc.classes())
    })?;
    Ok(OK)
}

fn regular_fit(inst: &Instance, _: &Ctx) -> Outcome {
    let f = inst.frame()?;
    if !Biframe::symmetric(&f).is_regular() {
        return Ok(VACUOUS);
    }
    ensure(is_fit(&f).map_err(err)?, || "regular but not fit".into())?;
    Ok(OK)
}

fn small_frames() -> Vec<FiniteFrame> {
    vec![FiniteFrame::two(), FiniteFrame::chain(3), FiniteFrame::boolean(2)]
}

fn adjoint_identities(inst: &Instance, _: &Ctx) -> Outcome {
    let f = inst.frame()?;
    let mut homs = Vec::new();
    for g in small_frames() {
        homs.extend(enumerate_homs(&f, &g));
        homs.extend(enumerate_homs(&g, &f));
    }
    for h in &homs {
        let r = right_adjoint(h);
        for x in h.dom().elements() {
            ensure(h.apply(r[h.apply(x)]) == h.apply(x), || format!("f f_* f at {x} for {:?}", h.map()))?;
        }
        for y in h.cod().elements() {
            ensure(r[h.apply(r[y])] == r[y], || format!("f_* f f_* at {y} for {:?}", h.map()))?;
        }
    }
    Ok(OK)
}

fn quotient_kernel(inst: &Instance, _: &Ctx) -> Outcome {
    let f = inst.frame()?;
    let cf = congruence_frame(&f).map_err(err)?;
    for theta in cf.congruences() {
        let (_, q) = quotient_by_congruence(&f, theta).map_err(err)?;
        ensure(q.kernel() == *theta, || format!("classes {:?}", theta.classes()))?;
    }
    Ok(OK)
}

fn dense_monic(inst: &Instance, _: &Ctx) -> Outcome {
    let f = inst.frame()?;
    if !Biframe::symmetric(&f).is_regular() {
        return Ok(VACUOUS);
    }
    let mut targets = small_frames();
    targets.push(f.clone());
    let dense: Vec<_> = targets
        .iter()
        .flat_map(|g| enumerate_homs(&f, g))
        .filter(is_dense)
        .collect();
    for h in small_frames() {
        let parallel = enumerate_homs(&h, &f);
        for d in &dense {
            for g1 in &parallel {
                for g2 in &parallel {
                    if g1.then(d).map() == g2.then(d).map() {
                        ensure(g1.map() == g2.map(), || format!("{:?} and {:?}", g1.map(), g2.map()))?;
                    }
                }
            }
        }
    }
    Ok(OK)
}

fn regular_symmetric_boolean(inst: &Instance, _: &Ctx) -> Outcome {
    let f = inst.frame()?;
    if !Biframe::symmetric(&f).is_regular() {
        return Ok(VACUOUS);
    }
    ensure(f.is_boolean(), || "regular symmetric biframe with non-Boolean total".into())?;
    Ok(OK)
}

// ---- biframes, paircovers, proximities ---------------------------------

fn zero_dimensional_ladder(inst: &Instance, _: &Ctx) -> Outcome {
    let b = inst.biframe()?;
    if b.is_strictly_zero_dimensional() {
        ensure(b.is_zero_dimensional(), || "strictly zero-dimensional only".into())?;
    }
    if b.is_zero_dimensional() {
        ensure(Biframe::symmetric(b.total()).is_zero_dimensional(), || {
            "total part not zero-dimensional".into()
        })?;
    }
    Ok(OK)
}

fn interpolation(inst: &Instance, _: &Ctx) -> Outcome {
    let b = inst.biframe()?;
    ensure(b.is_compact(), || "finite biframe reported non-compact".into())?;
    for i in 1..=2 {
        let r = b.rather_below(i);
        ensure(interpolative_core(&r) == r, || format!("rather below fails to interpolate in part {i}"))?;
    }
    Ok(OK)
}

fn str0d_outputs(inst: &Instance, _: &Ctx) -> Outcome {
    let b = inst.biframe()?;
    ensure(b.is_strictly_zero_dimensional(), || "not strictly zero-dimensional".into())?;
    Ok(OK)
}

fn chi_dense_surjection(inst: &Instance, _: &Ctx) -> Outcome {
    let b = inst.biframe()?;
    let co = coreflection_chi(&b).map_err(err)?;
    ensure(co.chi.is_dense() && co.chi.is_surjective(), || "chi is not a dense surjection".into())?;
    Ok(OK)
}

fn paircover_algebra(inst: &Instance, _: &Ctx) -> Outcome {
    let b = inst.biframe()?;
    let wm = well_monotone_qu(&b).map_err(err)?;
    let pv = pervin_qu(&b).map_err(err)?;
    let members: Vec<&PairDownset> = wm.base().iter().chain(pv.base()).collect();
    for u in &members {
        let s = u.strongify(&b);
        ensure(s.strongify(&b) == s, || format!("strongify not idempotent on {:?}", u.gens()))?;
        ensure(PairDownset::le(u, &b, &u.star_cover(&b)), || format!("U not below U* for {:?}", u.gens()))?;
    }
    for u in &members {
        for v in members.iter().filter(|v| PairDownset::le(u, &b, v)) {
            for i in 1..=2 {
                for &x in b.part(i) {
                    ensure(b.total().le(u.star(&b, i, x), v.star(&b, i, x)), || {
                        format!("star in part {i} at {x} not monotone")
                    })?;
                }
            }
        }
    }
    Ok(OK)
}

fn pervin_proximity(inst: &Instance, _: &Ctx) -> Outcome {
    let b = inst.biframe()?;
    let pv = pervin_qu(&b).map_err(err)?;
    ensure(quasi_proximity_of(&pv) == rather_below_pair(&b), || {
        "Pervin proximity differs from rather below".into()
    })?;
    Ok(OK)
}

fn proximity_axioms(inst: &Instance, _: &Ctx) -> Outcome {
    let b = inst.biframe()?;
    let pv = pervin_qu(&b).map_err(err)?;
    let wm = well_monotone_qu(&b).map_err(err)?;
    for (name, qp) in [
        ("Pervin", quasi_proximity_of(&pv)),
        ("well-monotone", quasi_proximity_of(&wm)),
        ("rather below", rather_below_pair(&b)),
    ] {
        validate_quasi_proximity(&b, &qp).map_err(|v| format!("{name}: {v}"))?;
    }
    Ok(OK)
}

/// The one-member Pervin base against every finite cover of the first part.
fn pervin_exhaustive(inst: &Instance, _: &Ctx) -> Outcome {
    let b = inst.biframe()?;
    if 1usize << b.part(1).len() > caps().fletcher {
        return Ok(Verdict {
            applicable: false,
            exact: false,
        });
    }
    let pv = pervin_qu(&b).map_err(err)?;
    let all = crate::paircover::all_finite_cover_paircovers(&b).map_err(err)?;
    let full = validate_quasi_uniformity(&b, all).map_err(err)?;
    ensure(full.same_filter(&pv), || "Pervin filter differs from the exhaustive one".into())?;
    Ok(OK)
}

fn symmetrisation_partitions(inst: &Instance, _: &Ctx) -> Outcome {
    let b = inst.biframe()?;
    let wm = well_monotone_qu(&b).map_err(err)?;
    ensure(wm.is_transitive(), || "well-monotone quasi-uniformity not transitive".into())?;
    let s = symmetrisation(&wm).map_err(err)?;
    ensure(s.is_transitive(), || "symmetrisation not transitive".into())?;
    ensure(s.minimum().is_partition(s.frame()), || "least cover is not a partition".into())?;
    Ok(OK)
}

fn terminal_remark(inst: &Instance, _: &Ctx) -> Outcome {
    let f = inst.frame()?;
    let one = Biframe::symmetric(&f);
    let zero = make_paircover(&one, &[(0, 0)]).map_err(err)?;
    ensure(!zero.is_strong(&one), || "(0,0) accepted as a strong paircover".into())?;
    ensure(validate_quasi_uniformity(&one, vec![zero.clone()]).is_err(), || {
        "the filter on {(0,0)} alone validated".into()
    })?;
    for qu in [pervin_qu(&one).map_err(err)?, well_monotone_qu(&one).map_err(err)?] {
        ensure(qu.contains(&PairDownset::empty()) && qu.contains(&zero), || {
            "filter is not {∅, ↓(0,0)}".into()
        })?;
    }
    Ok(OK)
}

// ---- well-monotone base and hereditarity ------------------------------

fn successor_form(inst: &Instance, _: &Ctx) -> Outcome {
    let b = inst.biframe()?;
    let mut exact = true;
    for chain in join_closed_chains(&b).map_err(err)? {
        let fl = fletcher_paircover(&b, &chain).map_err(err)?;
        exact &= fl.closed_form_checked;
        ensure(successor_paircover(&b, &chain) == fl.tilde, || format!("chain {chain:?}"))?;
    }
    Ok(Verdict {
        applicable: true,
        exact,
    })
}

fn fletcher_transitive(inst: &Instance, _: &Ctx) -> Outcome {
    let b = inst.biframe()?;
    let mut sets = join_closed_chains(&b).map_err(err)?;
    sets.push(b.part(1).to_vec());
    for a in sets {
        let fl = fletcher_paircover(&b, &a).map_err(err)?;
        ensure(fl.c.is_transitive(&b) && fl.tilde.is_transitive(&b), || format!("A = {a:?}"))?;
    }
    Ok(OK)
}

/// The surjective biframe quotients of `b`, one per congruence on the total.
fn biframe_quotients(b: &Biframe) -> Result<Vec<crate::biframe::BiframeHom>, String> {
    let cf = congruence_frame(b.total()).map_err(err)?;
    let mut out = Vec::new();
    for theta in cf.congruences() {
        let (q, h) = quotient_by_congruence(b.total(), theta).map_err(err)?;
        let image = |i: usize| -> Vec<Elem> { b.part(i).iter().map(|&x| h.apply(x)).collect() };
        let cod = make_biframe(&q, &image(1), &image(2)).map_err(err)?;
        out.push(validate_biframe_hom(b, &cod, h.map().to_vec()).map_err(err)?);
    }
    Ok(out)
}

fn wm_hereditary(inst: &Instance, _: &Ctx) -> Outcome {
    let b = inst.biframe()?;
    let wm = well_monotone_qu(&b).map_err(err)?;
    for q in biframe_quotients(&b)? {
        let image = quotient_qu(&q, &wm).map_err(err)?;
        let own = well_monotone_qu(&q.cod).map_err(err)?;
        ensure(image.same_filter(&own), || format!("quotient map {:?}", q.hom.map()))?;
    }
    Ok(OK)
}

// ---- bicompletion ------------------------------------------------------

fn bicompletion_iso(qu: &QuasiUniformity) -> Result<crate::completion::Bicompletion, String> {
    let bc = bicompletion(qu, None).map_err(err)?;
    ensure(bc.gamma_isomorphism && bc.nu_dense_surjective && bc.transported_base_strong, || {
        "gamma is not an isomorphism".into()
    })?;
    Ok(bc)
}

fn bicompletion_wm(inst: &Instance, _: &Ctx) -> Outcome {
    bicompletion_iso(&well_monotone_qu(&inst.biframe()?).map_err(err)?)?;
    Ok(OK)
}

fn bicompletion_pervin(inst: &Instance, _: &Ctx) -> Outcome {
    bicompletion_iso(&pervin_qu(&inst.biframe()?).map_err(err)?)?;
    Ok(OK)
}

fn bicompletion_coreflection(inst: &Instance, _: &Ctx) -> Outcome {
    let b = inst.biframe()?;
    let wm = well_monotone_qu(&b).map_err(err)?;
    let bc = bicompletion_iso(&wm)?;
    let co = coreflection_chi(&b).map_err(err)?;
    ensure(bc.biframe.canonical_key() == co.chi.dom.canonical_key(), || {
        "bicompletion and coreflection differ in canonical form".into()
    })?;
    let via_chi = bicompletion(&wm, Some(&co.chi)).map_err(err)?;
    ensure(via_chi.gamma_isomorphism, || "gamma through chi is not an isomorphism".into())?;
    Ok(OK)
}

fn compact_bicomplete(inst: &Instance, _: &Ctx) -> Outcome {
    let b = inst.biframe()?;
    ensure(b.is_compact(), || "finite biframe reported non-compact".into())?;
    for qu in [well_monotone_qu(&b).map_err(err)?, pervin_qu(&b).map_err(err)?] {
        ensure(qu.is_totally_bounded(), || "not totally bounded".into())?;
        bicompletion_iso(&qu)?;
    }
    Ok(OK)
}

fn bicompletion_symmetry(inst: &Instance, _: &Ctx) -> Outcome {
    let f = inst.frame()?;
    let s = Biframe::symmetric(&f);
    if !s.is_strictly_zero_dimensional() {
        return Ok(VACUOUS);
    }
    let wm = well_monotone_qu(&s).map_err(err)?;
    let bc = bicompletion_iso(&wm)?;
    ensure(bc.biframe.part(1) == bc.biframe.part(2), || "bicompletion is not symmetric".into())?;
    let upstairs = symmetrisation(&bc.qu).map_err(err)?;
    let moved: Vec<Cover> = upstairs
        .base()
        .iter()
        .map(|c| Cover::generated(&f, c.gens().iter().map(|&x| bc.gamma.hom.apply(x))))
        .collect();
    let moved = validate_uniformity(&f, moved).map_err(err)?;
    ensure(moved.same_filter(&symmetrisation(&wm).map_err(err)?), || {
        "bicompletion does not commute with symmetrisation".into()
    })?;
    Ok(OK)
}

// ---- ultraparacompactness and the kernel ------------------------------

fn four_conditions(inst: &Instance, ctx: &Ctx) -> Outcome {
    let f = inst.frame()?;
    if !Biframe::symmetric(&f).is_completely_regular() {
        return Ok(VACUOUS);
    }
    let conds = check_ultraparacompact_equivalences(&f).map_err(err)?;
    let up = ctx.ultraparacompact(&f)?;
    ensure(conds.iter().all(|&c| c == up), || format!("conditions {conds:?}, decider {up}"))?;
    Ok(OK)
}

fn congruence_frame_up(inst: &Instance, ctx: &Ctx) -> Outcome {
    let f = inst.frame()?;
    let cf = congruence_frame(&f).map_err(err)?;
    ensure(ctx.ultraparacompact(cf.frame())?, || "congruence frame not ultraparacompact".into())?;
    Ok(OK)
}

fn symmetrised_wm_complete(inst: &Instance, _: &Ctx) -> Outcome {
    let f = inst.frame()?;
    let (cb, _) = congruence_biframe(&f).map_err(err)?;
    let s = symmetrisation(&well_monotone_qu(&cb).map_err(err)?).map_err(err)?;
    let d = is_complete_uniform(&s);
    ensure(d.value && s.is_transitive(), || {
        format!("complete {} transitive {}", d.value, s.is_transitive())
    })?;
    Ok(Verdict {
        applicable: true,
        exact: d.exact,
    })
}

fn kernel_inclusion(inst: &Instance, ctx: &Ctx) -> Outcome {
    let f = inst.frame()?;
    ensure(ctx.kernel_holds(&f)?, || "ker g is not below K or a chain witness failed".into())?;
    Ok(OK)
}

fn universal_compactification(inst: &Instance, _: &Ctx) -> Outcome {
    let f = inst.frame()?;
    let u = universal_compactification_g(&f).map_err(err)?;
    ensure(u.holds(), || format!("{u:?}"))?;
    Ok(OK)
}

// ---- spaces ------------------------------------------------------------

fn sobrification(inst: &Instance, _: &Ctx) -> Outcome {
    let space = inst.space()?;
    let sk = skula_biframe(space).map_err(err)?;
    let omega = sk.part_frame(1).map_err(err)?.frame;
    let (cb, _) = congruence_biframe(&omega).map_err(err)?;
    ensure(cb.canonical_key() == sk.canonical_key(), || "canonical keys differ".into())?;
    let co = coreflection_chi(&sk).map_err(err)?;
    ensure(co.chi.is_isomorphism(), || "chi is not an isomorphism".into())?;
    Ok(OK)
}

fn skula_bicompletion(inst: &Instance, _: &Ctx) -> Outcome {
    let space = inst.space()?;
    let sk = skula_biframe(space).map_err(err)?;
    let bc = bicompletion_iso(&well_monotone_qu(&sk).map_err(err)?)?;
    let omega = sk.part_frame(1).map_err(err)?.frame;
    let (cb, _) = congruence_biframe(&omega).map_err(err)?;
    ensure(bc.biframe.canonical_key() == cb.canonical_key(), || {
        "bicompletion differs from the congruence biframe of the opens".into()
    })?;
    Ok(OK)
}

const CLAIMS: &[Claim] = &[
    Claim {
        suite: "lemma-wm-base",
        id: "successor-form-equals-fletcher",
        statement: "for every join-closed chain A, the successor paircover equals the strong part of C_A",
        status: Status::Full,
        degeneracy: None,
        source: Source::Str0d,
        check: successor_form,
    },
    Claim {
        suite: "lemma-wm-base",
        id: "fletcher-paircovers-transitive",
        statement: "C_A and its strong part are transitive for every chain A and for A = first part",
        status: Status::Full,
        degeneracy: None,
        source: Source::Str0d,
        check: fletcher_transitive,
    },
    Claim {
        suite: "wm-hereditary",
        id: "well-monotone-hereditary",
        statement: "along every surjective biframe quotient the image of the well-monotone base generates the quotient's well-monotone filter",
        status: Status::Full,
        degeneracy: None,
        source: Source::Str0d,
        check: wm_hereditary,
    },
    Claim {
        suite: "ultraparacompact",
        id: "four-conditions-agree",
        statement: "on completely regular frames the four ultraparacompactness conditions agree",
        status: Status::FiniteShadow,
        degeneracy: Some("finite completely regular frames are Boolean, so every condition holds"),
        source: Source::Frames,
        check: four_conditions,
    },
    Claim {
        suite: "ultraparacompact",
        id: "congruence-frame-ultraparacompact",
        statement: "the congruence frame of every frame is ultraparacompact",
        status: Status::FiniteShadow,
        degeneracy: Some("finite congruence frames are Boolean"),
        source: Source::Frames,
        check: congruence_frame_up,
    },
    Claim {
        suite: "ultraparacompact",
        id: "symmetrised-well-monotone-complete",
        statement: "the symmetrisation of the well-monotone quasi-uniformity on C L is complete and transitive",
        status: Status::FiniteShadow,
        degeneracy: Some("finite uniformities are principal filters"),
        source: Source::Frames,
        check: symmetrised_wm_complete,
    },
    Claim {
        suite: "bicompletion",
        id: "bicompletion-well-monotone",
        statement: "the bicompletion of the well-monotone quasi-uniformity has gamma an isomorphism",
        status: Status::FiniteShadow,
        degeneracy: Some("finite quasi-uniform biframes are already bicomplete"),
        source: Source::Str0d,
        check: bicompletion_wm,
    },
    Claim {
        suite: "bicompletion",
        id: "bicompletion-pervin",
        statement: "the bicompletion of the Pervin quasi-uniformity has gamma an isomorphism",
        status: Status::FiniteShadow,
        degeneracy: Some("finite quasi-uniform biframes are already bicomplete"),
        source: Source::Str0d,
        check: bicompletion_pervin,
    },
    Claim {
        suite: "bicompletion",
        id: "bicompletion-is-coreflection",
        statement: "the well-monotone bicompletion has the canonical form of the congruence biframe of the first part",
        status: Status::FiniteShadow,
        degeneracy: None,
        source: Source::Str0d,
        check: bicompletion_coreflection,
    },
    Claim {
        suite: "bicompletion",
        id: "compact-bicomplete-totally-bounded",
        statement: "finite quasi-uniform biframes are compact, totally bounded and bicomplete",
        status: Status::FiniteShadow,
        degeneracy: Some("every finite biframe is compact"),
        source: Source::Str0d,
        check: compact_bicomplete,
    },
    Claim {
        suite: "bicompletion",
        id: "bicompletion-symmetry",
        statement: "bicompletion preserves symmetry and commutes with symmetrisation",
        status: Status::FiniteShadow,
        degeneracy: Some("only Boolean frames give strictly zero-dimensional symmetric biframes"),
        source: Source::Frames,
        check: bicompletion_symmetry,
    },
    Claim {
        suite: "kernel",
        id: "kernel-inclusion",
        statement: "ker g is contained in the congruence K generated by the chain generators",
        status: Status::FiniteShadow,
        degeneracy: Some("g is an isomorphism on finite frames"),
        source: Source::Frames,
        check: kernel_inclusion,
    },
    Claim {
        suite: "kernel",
        id: "universal-compactification",
        statement: "g is a dense surjection onto a compact zero-dimensional biframe",
        status: Status::FiniteShadow,
        degeneracy: Some("g is an isomorphism on finite frames"),
        source: Source::Frames,
        check: universal_compactification,
    },
    Claim {
        suite: "sobriety",
        id: "skula-strictly-zero-dimensional",
        statement: "Skula biframes are strictly zero-dimensional",
        status: Status::Full,
        degeneracy: None,
        source: Source::Spaces,
        check: str0d_outputs,
    },
    Claim {
        suite: "sobriety",
        id: "sobrification",
        statement: "the congruence biframe of the opens is isomorphic to the Skula biframe via chi",
        status: Status::FiniteShadow,
        degeneracy: Some("finite T0 spaces are sober"),
        source: Source::Spaces,
        check: sobrification,
    },
    Claim {
        suite: "sobriety",
        id: "skula-bicompletion",
        statement: "the well-monotone bicompletion of a Skula biframe is the congruence biframe of the opens",
        status: Status::FiniteShadow,
        degeneracy: None,
        source: Source::Spaces,
        check: skula_bicompletion,
    },
    Claim {
        suite: "proximity",
        id: "pervin-proximity-is-rather-below",
        statement: "the quasi-proximity of the Pervin quasi-uniformity is the rather-below pair",
        status: Status::Full,
        degeneracy: None,
        source: Source::Str0d,
        check: pervin_proximity,
    },
    Claim {
        suite: "proximity",
        id: "quasi-proximity-axioms",
        statement: "the Pervin, well-monotone and rather-below pairs satisfy the six quasi-proximity axioms",
        status: Status::Full,
        degeneracy: None,
        source: Source::Str0d,
        check: proximity_axioms,
    },
    Claim {
        suite: "proximity",
        id: "pervin-exhaustive",
        statement: "the one-member Pervin base generates the filter of all finite-cover paircovers",
        status: Status::Full,
        degeneracy: None,
        source: Source::Str0d,
        check: pervin_exhaustive,
    },
    Claim {
        suite: "proximity",
        id: "paircover-algebra",
        statement: "strongify is idempotent, U is below U*, and stars are monotone in U",
        status: Status::Full,
        degeneracy: None,
        source: Source::Str0d,
        check: paircover_algebra,
    },
    Claim {
        suite: "proximity",
        id: "symmetrisation-partitions",
        statement: "the symmetrisation of a transitive quasi-uniformity is transitive with a partition as least cover",
        status: Status::Full,
        degeneracy: None,
        source: Source::Str0d,
        check: symmetrisation_partitions,
    },
    Claim {
        suite: "proximity",
        id: "generated-biframes-strictly-zero-dimensional",
        statement: "congruence and Skula biframes are strictly zero-dimensional",
        status: Status::Full,
        degeneracy: None,
        source: Source::Str0d,
        check: str0d_outputs,
    },
    Claim {
        suite: "proximity",
        id: "chi-dense-surjection",
        statement: "chi is a dense surjection",
        status: Status::Full,
        degeneracy: None,
        source: Source::Str0d,
        check: chi_dense_surjection,
    },
    Claim {
        suite: "proximity",
        id: "zero-dimensional-ladder",
        statement: "strictly zero-dimensional implies zero-dimensional implies the total part is zero-dimensional",
        status: Status::Full,
        degeneracy: None,
        source: Source::SmallBiframes,
        check: zero_dimensional_ladder,
    },
    Claim {
        suite: "proximity",
        id: "rather-below-interpolates",
        statement: "on compact biframes the rather-below relations interpolate",
        status: Status::Full,
        degeneracy: Some("every finite biframe is compact"),
        source: Source::SmallBiframes,
        check: interpolation,
    },
    Claim {
        suite: "proximity",
        id: "regular-symmetric-boolean",
        statement: "finite regular symmetric biframes have Boolean total part",
        status: Status::FiniteShadow,
        degeneracy: Some("finite regular frames are Boolean"),
        source: Source::Frames,
        check: regular_symmetric_boolean,
    },
    Claim {
        suite: "proximity",
        id: "terminal-remark",
        statement: "on ONE, {(0,0)} is not strong and the filter is {empty, down (0,0)}",
        status: Status::Full,
        degeneracy: None,
        source: Source::Terminal,
        check: terminal_remark,
    },
    Claim {
        suite: "congruence-oracles",
        id: "birkhoff-round-trip",
        statement: "the join-irreducibles of the downset frame of P are isomorphic to P",
        status: Status::Full,
        degeneracy: None,
        source: Source::Frames,
        check: birkhoff_round_trip,
    },
    Claim {
        suite: "congruence-oracles",
        id: "heyting-adjunction",
        statement: "c meet a <= b iff c <= a -> b",
        status: Status::Full,
        degeneracy: None,
        source: Source::Frames,
        check: heyting_adjunction,
    },
    Claim {
        suite: "congruence-oracles",
        id: "distributivity",
        statement: "x meet join Y = join of x meet y over every subset Y",
        status: Status::Full,
        degeneracy: None,
        source: Source::Frames,
        check: distributivity,
    },
    Claim {
        suite: "congruence-oracles",
        id: "congruence-frame-boolean",
        statement: "C L is Boolean with 2^|J(L)| elements and matches the partition oracle",
        status: Status::FiniteShadow,
        degeneracy: Some("finite congruence frames are Boolean"),
        source: Source::Frames,
        check: congruence_frame_boolean,
    },
    Claim {
        suite: "congruence-oracles",
        id: "nabla-delta-complements",
        statement: "nabla_a and delta_a are complements, nabla is injective, and together they generate C L",
        status: Status::Full,
        degeneracy: None,
        source: Source::Frames,
        check: nabla_delta,
    },
    Claim {
        suite: "congruence-oracles",
        id: "clat-comparison",
        statement: "g from lattice congruences to frame congruences is dense and surjective",
        status: Status::FiniteShadow,
        degeneracy: Some("g is an isomorphism on finite frames"),
        source: Source::Frames,
        check: clat_comparison,
    },
    Claim {
        suite: "congruence-oracles",
        id: "chain-closure-equals-closure",
        statement: "chain closure equals congruence closure on every lattice congruence of L and of C L",
        status: Status::FiniteShadow,
        degeneracy: Some("finite lattice congruences are frame congruences"),
        source: Source::Frames,
        check: chain_closure_sweep,
    },
    Claim {
        suite: "congruence-oracles",
        id: "chain-closure-random",
        statement: "chain closure equals congruence closure on seeded random congruences",
        status: Status::FiniteShadow,
        degeneracy: Some("finite lattice congruences are frame congruences"),
        source: Source::Random,
        check: chain_closure_random,
    },
    Claim {
        suite: "congruence-oracles",
        id: "regular-implies-fit",
        statement: "regular frames are fit",
        status: Status::Full,
        degeneracy: None,
        source: Source::Frames,
        check: regular_fit,
    },
    Claim {
        suite: "congruence-oracles",
        id: "adjoint-identities",
        statement: "f f_* f = f and f_* f f_* = f_* for homomorphisms to and from TWO, C3 and B2",
        status: Status::Full,
        degeneracy: None,
        source: Source::Frames,
        check: adjoint_identities,
    },
    Claim {
        suite: "congruence-oracles",
        id: "quotient-kernel-identity",
        statement: "the kernel of the quotient by a congruence is that congruence",
        status: Status::Full,
        degeneracy: None,
        source: Source::Frames,
        check: quotient_kernel,
    },
    Claim {
        suite: "congruence-oracles",
        id: "dense-monic-on-regular",
        statement: "dense homomorphisms out of regular frames are monic",
        status: Status::Full,
        degeneracy: Some("finite regular frames are Boolean and dense maps out of them are injective"),
        source: Source::Frames,
        check: dense_monic,
    },
];

pub fn claim_ids() -> Vec<&'static str> {
    CLAIMS.iter().map(|c| c.id).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    /// Largest poset (and space) size swept; sizes start at 1.
    pub max_poset: usize,
    /// Number of seeded random congruence cases.
    pub random_cases: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_poset: 4,
            random_cases: 200,
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    pub mutation: Option<Mutation>,
    /// Record wall time in the report (breaks byte-identical output).
    pub timing: bool,
}

/// A failing claim on one instance, replayable on its own.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub suite: String,
    pub claim: String,
    pub seed: u64,
    pub mutation: Option<Mutation>,
    pub instance: Instance,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub suite: String,
    pub id: String,
    pub statement: String,
    pub status: Status,
    pub degeneracy: Option<String>,
    pub source: String,
    pub instances: usize,
    pub applicable: usize,
    pub passed: bool,
    /// False when some instance was checked only partially because of a cap.
    pub exact: bool,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub bounds: Bounds,
    pub caps: SizeCaps,
    pub mutation: Option<Mutation>,
    /// Instances per source, keyed by size.
    pub instance_counts: BTreeMap<String, BTreeMap<usize, usize>>,
    pub claims: Vec<ClaimReport>,
    pub passed: bool,
    pub exact: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wall_time_ms: Option<u64>,
}

impl SuiteReport {
    pub fn witnesses(&self) -> impl Iterator<Item = &Witness> {
        self.claims.iter().filter_map(|c| c.witness.as_ref())
    }
}

/// Every biframe whose total is the downset frame of a poset with at most
/// `max` points, one per isomorphism class.
fn small_biframes(max: usize) -> Result<Vec<Instance>, WorkbenchError> {
    let mut out = Vec::new();
    for n in 1..=max {
        for p in enumerate_posets(n)? {
            let f = downset_frame(&p)?;
            let inner: Vec<Elem> = f.elements().filter(|&x| x != f.bottom() && x != f.top()).collect();
            let subframes: Vec<Vec<Elem>> = (0u64..1 << inner.len())
                .map(|s| {
                    let mut v = vec![f.bottom(), f.top()];
                    v.extend((0..inner.len()).filter(|&k| s >> k & 1 == 1).map(|k| inner[k]));
                    v.sort_unstable();
                    v
                })
                .filter(|v| subframe_generated(&f, v) == *v)
                .collect();
            let mut seen = BTreeMap::new();
            for a in &subframes {
                for c in &subframes {
                    if let Ok(b) = make_biframe(&f, a, c) {
                        seen.entry(b.canonical_key()).or_insert(b);
                    }
                }
            }
            out.extend(seen.into_values().map(|biframe| Instance::Biframe { biframe }));
        }
    }
    Ok(out)
}

fn instances(source: Source, bounds: &Bounds, seed: u64) -> Result<Vec<Instance>, WorkbenchError> {
    let max = bounds.max_poset;
    let posets = || -> Result<Vec<Poset>, WorkbenchError> {
        let mut v = Vec::new();
        for n in 1..=max {
            v.extend(enumerate_posets(n)?);
        }
        Ok(v)
    };
    Ok(match source {
        Source::Frames => posets()?.into_iter().map(|poset| Instance::Frame { poset }).collect(),
        Source::Str0d => {
            let mut v: Vec<Instance> = posets()?
                .into_iter()
                .map(|poset| Instance::CongruenceBiframe { poset })
                .collect();
            for n in 1..=max {
                v.extend(enumerate_t0_spaces(n)?.into_iter().map(|space| Instance::Skula { space }));
            }
            v
        }
        Source::Spaces => {
            let mut v = Vec::new();
            for n in 1..=max {
                v.extend(enumerate_t0_spaces(n)?.into_iter().map(|space| Instance::Skula { space }));
            }
            v
        }
        Source::SmallBiframes => small_biframes(max.min(3))?,
        Source::Random if max > 0 => (0..bounds.random_cases).map(|index| Instance::Random { seed, index }).collect(),
        Source::Terminal if max > 0 => vec![Instance::Terminal],
        Source::Random | Source::Terminal => Vec::new(),
    })
}

fn selected(name: &str) -> Result<Vec<&'static Claim>, WorkbenchError> {
    if !SUITES.contains(&name) {
        return Err(WorkbenchError::UnknownSuite(name.to_string()));
    }
    Ok(CLAIMS.iter().filter(|c| name == "all" || c.suite == name).collect())
}

/// Runs every claim of the suite over its instances. Instances are checked
/// in parallel and merged in enumeration order, so the first failing
/// instance is the smallest witness and reports are reproducible.
pub fn run_suite(name: &str, bounds: &Bounds, seed: u64, opts: RunOptions) -> Result<SuiteReport, WorkbenchError> {
    let start = Instant::now();
    let claims = selected(name)?;
    let ctx = Ctx {
        mutation: opts.mutation,
    };
    let mut pools: Vec<(Source, Vec<Instance>)> = Vec::new();
    for c in &claims {
        if !pools.iter().any(|(s, _)| *s == c.source) {
            pools.push((c.source, instances(c.source, bounds, seed)?));
        }
    }
    let mut instance_counts = BTreeMap::new();
    for (s, v) in &pools {
        let counts: &mut BTreeMap<usize, usize> = instance_counts.entry(s.name().to_string()).or_default();
        for inst in v {
            *counts.entry(inst.size()).or_default() += 1;
        }
    }
    let mut reports = Vec::new();
    for c in &claims {
        let pool = &pools.iter().find(|(s, _)| *s == c.source).expect("pool built above").1;
        let outcomes: Vec<Outcome> = pool.par_iter().map(|inst| (c.check)(inst, &ctx)).collect();
        let mut applicable = 0;
        let mut exact = true;
        let mut witness = None;
        for (inst, o) in pool.iter().zip(outcomes) {
            match o {
                Ok(v) => {
                    applicable += v.applicable as usize;
                    exact &= v.exact;
                }
                Err(message) if witness.is_none() => {
                    applicable += 1;
                    witness = Some(Witness {
                        suite: c.suite.to_string(),
                        claim: c.id.to_string(),
                        seed,
                        mutation: opts.mutation,
                        instance: inst.clone(),
                        message,
                    });
                }
                Err(_) => applicable += 1,
            }
        }
        reports.push(ClaimReport {
            suite: c.suite.to_string(),
            id: c.id.to_string(),
            statement: c.statement.to_string(),
            status: c.status,
            degeneracy: c.degeneracy.map(str::to_string),
            source: c.source.name().to_string(),
            instances: pool.len(),
            applicable,
            passed: witness.is_none(),
            exact,
            witness,
        });
    }
    Ok(SuiteReport {
        suite: name.to_string(),
        seed,
        bounds: *bounds,
        caps: caps(),
        mutation: opts.mutation,
        instance_counts,
        passed: reports.iter().all(|r| r.passed),
        exact: reports.iter().all(|r| r.exact),
        claims: reports,
        wall_time_ms: opts.timing.then(|| start.elapsed().as_millis() as u64),
    })
}

/// Reruns the witness's claim on its instance alone. `Err` carries the
/// failure message, so a genuine witness replays as `Err`.
pub fn replay(w: &Witness) -> Result<Result<(), String>, WorkbenchError> {
    let claim = CLAIMS
        .iter()
        .find(|c| c.id == w.claim)
        .ok_or_else(|| WorkbenchError::UnknownClaim(w.claim.clone()))?;
    let ctx = Ctx { mutation: w.mutation };
    Ok((claim.check)(&w.instance, &ctx).map(|_| ()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn claim_ids_are_unique() {
        let mut ids = claim_ids();
        ids.sort_unstable();
        let n = ids.len();
        ids.dedup();
        assert_eq!(ids.len(), n);
    }

    #[test]
    fn empty_bounds_pass_vacuously() {
        let b = Bounds {
            max_poset: 0,
            random_cases: 200,
        };
        let r = run_suite("all", &b, 7, RunOptions::default()).unwrap();
        assert!(r.passed);
        assert!(r.claims.iter().all(|c| c.instances == 0));
    }

    #[test]
    fn unknown_suite() {
        assert!(matches!(
            run_suite("nope", &Bounds::default(), 0, RunOptions::default()),
            Err(WorkbenchError::UnknownSuite(_))
        ));
    }

    #[test]
    fn kernel_suite_small() {
        let b = Bounds {
            max_poset: 3,
            random_cases: 0,
        };
        let r = run_suite("kernel", &b, 0, RunOptions::default()).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.instance_counts["frames"].values().sum::<usize>(), 8);
    }

    #[test]
    fn mutation_produces_replayable_witness() {
        let b = Bounds {
            max_poset: 2,
            random_cases: 0,
        };
        let opts = RunOptions {
            mutation: Some(Mutation::Ultraparacompact),
            timing: false,
        };
        let r = run_suite("ultraparacompact", &b, 0, opts).unwrap();
        assert!(!r.passed);
        let w = r.witnesses().next().unwrap();
        assert!(replay(w).unwrap().is_err());
        let mut clean = w.clone();
        clean.mutation = None;
        assert!(replay(&clean).unwrap().is_ok());
    }

    #[test]
    fn random_cases_are_deterministic() {
        let (f, c) = random_case(7, 3);
        let (g, d) = random_case(7, 3);
        assert_eq!(f, g);
        assert_eq!(c, d);
    }
}
