//! Isomorphism-reduced instance sources and the slow labeled oracles used
//! to cross-check their counts.

use std::collections::BTreeMap;

use crate::biframe::Space;
use crate::canon::{canonical_labelings, isomorphic_brute_force, next_permutation};
use crate::caps::caps;
use crate::order::{downsets, Poset};

use super::WorkbenchError;

/// One poset per isomorphism class on `n` points, in canonical-key order.
///
/// Level `k` is obtained from level `k-1` by adding a new maximal element
/// above each downset; every poset arises this way by deleting a maximal
/// element, and duplicates are rejected by canonical key.
pub fn enumerate_posets(n: usize) -> Result<Vec<Poset>, WorkbenchError> {
    let cap = caps().poset;
    if n > cap {
        return Err(WorkbenchError::SizeCap {
            what: "poset size",
            needed: n,
            cap,
        });
    }
    let mut level = vec![Poset::antichain(0)];
    for k in 1..=n {
        let mut seen = BTreeMap::new();
        for p in &level {
            for d in downsets(p, usize::MAX)? {
                let le: Vec<Vec<bool>> = (0..k)
                    .map(|i| {
                        (0..k)
                            .map(|j| match (i < k - 1, j < k - 1) {
                                (true, true) => p.le(i, j),
                                (true, false) => d >> i & 1 == 1,
                                (false, true) => false,
                                (false, false) => true,
                            })
                            .collect()
                    })
                    .collect();
                let q = crate::order::validate_poset(le)?;
                let (key, labelings) = canonical_labelings(&q);
                seen.entry(key).or_insert_with(|| q.permuted(&labelings[0]));
            }
        }
        level = seen.into_values().collect();
    }
    Ok(level)
}

/// The finite T0 space whose opens are the upsets of `p`.
pub fn space_of_poset(p: &Poset) -> Space {
    let n = p.n();
    let opens = (0..1u64 << n)
        .filter(|&m| p.up_closure(m) == m)
        .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
        .collect();
    Space { points: n, opens }
}

/// One T0 space per homeomorphism class on `n` points. A finite T0
/// topology is the family of upsets of its specialisation order.
pub fn enumerate_t0_spaces(n: usize) -> Result<Vec<Space>, WorkbenchError> {
    Ok(enumerate_posets(n)?.iter().map(space_of_poset).collect())
}

/// Number of labeled posets on `n` points and the number of their
/// isomorphism classes, by scanning every strict relation and collapsing
/// with brute-force isomorphism. Independent of the canonical-form code.
pub fn labeled_poset_oracle(n: usize) -> (usize, usize) {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    let mut labeled = 0;
    let mut reps: Vec<(Vec<usize>, Poset)> = Vec::new();
    for s in 0u64..1 << pairs.len() {
        let mut lt = vec![vec![false; n]; n];
        for (k, &(i, j)) in pairs.iter().enumerate() {
            lt[i][j] = s >> k & 1 == 1;
        }
        let strict_order = (0..n).all(|i| {
            (0..n).all(|j| !(lt[i][j] && lt[j][i]) && (0..n).all(|k| !(lt[i][j] && lt[j][k]) || lt[i][k]))
        });
        if !strict_order {
            continue;
        }
        labeled += 1;
        let le: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i == j || lt[i][j]).collect()).collect();
        let p = crate::order::validate_poset(le).expect("strict order");
        let mut sig: Vec<usize> = (0..n)
            .map(|i| (0..n).filter(|&j| p.le(i, j)).count() * 64 + (0..n).filter(|&j| p.le(j, i)).count())
            .collect();
        sig.sort_unstable();
        if !reps.iter().any(|(s, q)| *s == sig && isomorphic_brute_force(&p, q)) {
            reps.push((sig, p));
        }
    }
    (labeled, reps.len())
}

/// Homeomorphism classes of T0 topologies on `n ≤ 4` points by scanning
/// every family of subsets.
pub fn t0_topology_oracle(n: usize) -> usize {
    assert!(n <= 4, "the topology scan is exponential in 2^n");
    let full = (1u64 << n) - 1;
    let inner: Vec<u64> = (1..full).collect();
    let mut classes: Vec<Vec<u64>> = Vec::new();
    for s in 0u64..1 << inner.len() {
        let mut fam: Vec<u64> = vec![0, full];
        fam.extend((0..inner.len()).filter(|&k| s >> k & 1 == 1).map(|k| inner[k]));
        fam.sort_unstable();
        fam.dedup();
        let closed = fam
            .iter()
            .all(|&a| fam.iter().all(|&b| fam.binary_search(&(a | b)).is_ok() && fam.binary_search(&(a & b)).is_ok()));
        let t0 = (0..n).all(|x| (x + 1..n).all(|y| fam.iter().any(|&o| (o >> x & 1) != (o >> y & 1))));
        if !closed || !t0 {
            continue;
        }
        let mut perm: Vec<usize> = (0..n).collect();
        let mut images = Vec::new();
        loop {
            let mut img: Vec<u64> = fam
                .iter()
                .map(|&o| (0..n).filter(|&i| o >> i & 1 == 1).fold(0, |acc, i| acc | 1 << perm[i]))
                .collect();
            img.sort_unstable();
            images.push(img);
            if !next_permutation(&mut perm) {
                break;
            }
        }
        if !classes.iter().any(|c| images.contains(c)) {
            classes.push(fam);
        }
    }
    classes.len()
}
