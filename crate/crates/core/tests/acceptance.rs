//! Acceptance criteria. Run with `cargo test -p ffg-core --test acceptance`;
//! prints one line per criterion and exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use ffg_core::biframe::{
    congruence_biframe, coreflection_chi, make_biframe, skula_biframe, validate_biframe_hom, Biframe, Space,
};
use ffg_core::completion::{bicompletion, check_ultraparacompact_equivalences, theorem_kernel_check};
use ffg_core::congruence::{
    chain_closure, clat_frame, congruence_closure, congruence_frame, congruences_by_partition_search,
};
use ffg_core::hom::quotient_by_congruence;
use ffg_core::order::{downset_frame, Elem, FiniteFrame, Poset};
use ffg_core::paircover::{
    fletcher_paircover, join_closed_chains, make_paircover, pervin_qu, quasi_proximity_of, quotient_qu,
    rather_below_pair, successor_paircover, validate_quasi_proximity, validate_quasi_uniformity, well_monotone_qu,
    PairDownset,
};
use ffg_core::workbench::{
    enumerate_posets, enumerate_t0_spaces, labeled_poset_oracle, search_counterexamples, Property,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

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

fn posets(max: usize) -> Vec<Poset> {
    (1..=max).flat_map(|n| enumerate_posets(n).unwrap()).collect()
}

fn frames(max: usize) -> Vec<FiniteFrame> {
    posets(max).iter().map(|p| downset_frame(p).unwrap()).collect()
}

fn spaces(max: usize) -> Vec<Space> {
    (1..=max).flat_map(|n| enumerate_t0_spaces(n).unwrap()).collect()
}

/// Congruence biframes of the frame sweep followed by Skula biframes of the
/// space sweep.
fn str0d_biframes() -> Vec<Biframe> {
    let mut v: Vec<Biframe> = frames(4).iter().map(|f| congruence_biframe(f).unwrap().0).collect();
    v.extend(spaces(4).iter().map(|s| skula_biframe(s).unwrap()));
    v
}

fn congruence_frame_structure() -> Check {
    let fs = frames(4);
    ensure(fs.len() == 24, || format!("{} frames", fs.len()))?;
    let mut oracle_checked = 0;
    for f in &fs {
        let cf = congruence_frame(f).map_err(err)?;
        let j = f.jposet().n();
        ensure(cf.frame().is_boolean() && cf.frame().len() == 1 << j, || {
            format!("|C L| = {} for |J| = {j}", cf.frame().len())
        })?;
        if f.len() <= 8 {
            let mut a = congruences_by_partition_search(f).map_err(err)?;
            let mut b = cf.congruences().to_vec();
            a.sort();
            b.sort();
            ensure(a == b, || format!("partition oracle disagrees on a frame of {} elements", f.len()))?;
            oracle_checked += 1;
        }
    }
    Ok(format!("24 frames, {oracle_checked} against the partition oracle"))
}

fn lemma_base_formula() -> Check {
    let mut chains = 0;
    for b in str0d_biframes() {
        for chain in join_closed_chains(&b).map_err(err)? {
            let f = fletcher_paircover(&b, &chain).map_err(err)?;
            ensure(successor_paircover(&b, &chain) == f.tilde, || format!("chain {chain:?}"))?;
            chains += 1;
        }
    }
    Ok(format!("{chains} chains over 48 biframes"))
}

fn lemma_hereditarity() -> Check {
    let mut quotients = 0;
    for b in str0d_biframes() {
        let wm = well_monotone_qu(&b).map_err(err)?;
        let cf = congruence_frame(b.total()).map_err(err)?;
        for theta in cf.congruences() {
            let (q, h) = quotient_by_congruence(b.total(), theta).map_err(err)?;
            let img = |i: usize| -> Vec<Elem> { b.part(i).iter().map(|&x| h.apply(x)).collect() };
            let cod = make_biframe(&q, &img(1), &img(2)).map_err(err)?;
            let qh = validate_biframe_hom(&b, &cod, h.map().to_vec()).map_err(err)?;
            let image = quotient_qu(&qh, &wm).map_err(err)?;
            let own = well_monotone_qu(&cod).map_err(err)?;
            ensure(image.same_filter(&own), || format!("quotient {:?}", h.map()))?;
            quotients += 1;
        }
    }
    Ok(format!("{quotients} surjective quotients"))
}

fn kernel_theorem() -> Check {
    let mut witnesses = 0;
    for f in frames(4) {
        let r = theorem_kernel_check(&f).map_err(err)?;
        ensure(r.holds(), || format!("{r:?}"))?;
        witnesses += r.witnesses_checked;
    }
    Ok(format!("24 frames, {witnesses} chain witnesses replayed"))
}

fn bicompletion_pipeline() -> Check {
    for b in str0d_biframes() {
        let wm = well_monotone_qu(&b).map_err(err)?;
        let pv = pervin_qu(&b).map_err(err)?;
        let bw = bicompletion(&wm, None).map_err(err)?;
        let bp = bicompletion(&pv, None).map_err(err)?;
        ensure(bw.gamma_isomorphism && bp.gamma_isomorphism, || "gamma is not an isomorphism".into())?;
        let chi = coreflection_chi(&b).map_err(err)?;
        ensure(bw.biframe.canonical_key() == chi.chi.dom.canonical_key(), || {
            "bicompletion and coreflection differ".into()
        })?;
    }
    Ok("48 biframes, both quasi-uniformities".into())
}

fn sobrification() -> Check {
    let ss = spaces(4);
    for s in &ss {
        let sk = skula_biframe(s).map_err(err)?;
        let omega = sk.part_frame(1).map_err(err)?.frame;
        let (cb, _) = congruence_biframe(&omega).map_err(err)?;
        ensure(cb.canonical_key() == sk.canonical_key(), || format!("{s:?}"))?;
        let chi = coreflection_chi(&sk).map_err(err)?;
        ensure(chi.chi.is_isomorphism(), || format!("chi not an isomorphism on {s:?}"))?;
    }
    Ok(format!("{} spaces", ss.len()))
}

fn ultraparacompact_equivalences() -> Check {
    let mut regular = 0;
    for f in frames(4) {
        if Biframe::symmetric(&f).is_completely_regular() {
            let c = check_ultraparacompact_equivalences(&f).map_err(err)?;
            ensure(c.iter().all(|&x| x == c[0]), || format!("{c:?}"))?;
            regular += 1;
        }
    }
    let kite = search_counterexamples(Property::NotUltraparacompactFrame, 4).map_err(err)?;
    let w = kite.witness.ok_or("no non-ultraparacompact frame found")?;
    let expected = Poset::from_relations(3, &[(0, 1), (0, 2)]).unwrap();
    ensure(w.frame_size == 5 && ffg_core::canon::isomorphic_brute_force(&w.poset, &expected), || {
        format!("first witness has {} elements", w.frame_size)
    })?;
    let cong = search_counterexamples(Property::CongruenceFrameNotUltraparacompact, 4).map_err(err)?;
    ensure(cong.witness.is_none(), || "a congruence frame is not ultraparacompact".into())?;
    Ok(format!("{regular} completely regular frames; KITE found; no congruence-frame witness"))
}

fn random_case(rng: &mut ChaCha8Rng) -> (FiniteFrame, Vec<(Elem, Elem)>) {
    let n = rng.gen_range(1..=5);
    let lt: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|_| rng.gen_bool(0.4))
        .collect();
    let f = downset_frame(&Poset::from_relations(n, &lt).unwrap()).unwrap();
    let k = rng.gen_range(1..=3);
    let pairs = (0..k).map(|_| (rng.gen_range(0..f.len()), rng.gen_range(0..f.len()))).collect();
    (f, pairs)
}

fn chain_lemma() -> Check {
    let mut checked = 0;
    let mut sweep = frames(4);
    sweep.extend(frames(4).iter().map(|f| congruence_frame(f).unwrap().frame().clone()));
    for f in sweep.iter().filter(|f| f.len() <= 32) {
        for lc in clat_frame(f).map_err(err)?.congruences() {
            let c = chain_closure(f, lc).map_err(err)?;
            ensure(c == congruence_closure(f, &lc.spanning_pairs()), || format!("{:?}", lc.classes()))?;
            checked += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let (f, pairs) = random_case(&mut rng);
        let lc = congruence_closure(&f, &pairs).as_lattice_congruence();
        let c = chain_closure(&f, &lc).map_err(err)?;
        ensure(c == congruence_closure(&f, &lc.spanning_pairs()), || format!("random {pairs:?}"))?;
    }
    Ok(format!("{checked} sweep congruences and 200 random cases"))
}

fn pervin_proximity() -> Check {
    for b in str0d_biframes() {
        let qp = quasi_proximity_of(&pervin_qu(&b).map_err(err)?);
        ensure(qp == rather_below_pair(&b), || "Pervin proximity differs from rather below".into())?;
        validate_quasi_proximity(&b, &qp).map_err(err)?;
    }
    Ok("48 biframes".into())
}

fn terminal_remark() -> Check {
    let one = Biframe::symmetric(&FiniteFrame::one());
    let zero = make_paircover(&one, &[(0, 0)]).map_err(err)?;
    ensure(!zero.is_strong(&one), || "{(0,0)} reported strong".into())?;
    ensure(validate_quasi_uniformity(&one, vec![zero.clone()]).is_err(), || {
        "the filter generated by {(0,0)} alone validated".into()
    })?;
    let all = [PairDownset::empty(), zero];
    for qu in [pervin_qu(&one).map_err(err)?, well_monotone_qu(&one).map_err(err)?] {
        ensure(all.iter().all(|u| qu.contains(u)), || "filter misses a pair downset".into())?;
    }
    Ok("filter is {empty, down (0,0)}".into())
}

fn enumeration_counts() -> Check {
    let expected = [1, 2, 5, 16, 63];
    for (k, &want) in expected.iter().enumerate() {
        let n = k + 1;
        let fast = enumerate_posets(n).map_err(err)?.len();
        let (_, classes) = labeled_poset_oracle(n);
        ensure(fast == want && classes == want, || format!("n={n}: fast {fast}, oracle {classes}"))?;
    }
    Ok("1, 2, 5, 16, 63".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("congruence-frame structure", congruence_frame_structure),
        ("base formula for well-monotone paircovers", lemma_base_formula),
        ("hereditarity of the well-monotone filter", lemma_hereditarity),
        ("kernel inclusion", kernel_theorem),
        ("bicompletion pipeline", bicompletion_pipeline),
        ("sobrification", sobrification),
        ("ultraparacompactness equivalences and search", ultraparacompact_equivalences),
        ("chain closure equals congruence closure", chain_lemma),
        ("Pervin quasi-proximity", pervin_proximity),
        ("terminal biframe", terminal_remark),
        ("enumeration counts", enumeration_counts),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(note) => println!("PASS {:>2} {name} ({note}) [{secs:.2}s]", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{secs:.2}s]", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
