//! Isomorphism keys for posets and the structures built over them.
//!
//! A labeling is a permutation `perm` with new element `k` = old element
//! `perm[k]`. The canonical key of a poset is the lexicographically least
//! comparability string over all labelings; cells from colour refinement
//! restrict which labelings are tried.

use serde::{Deserialize, Serialize};

use crate::order::{bits, FiniteFrame, Poset};

/// An isomorphism invariant that is complete for the structure it keys.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalKey(pub Vec<u64>);

fn initial_colours(p: &Poset) -> Vec<usize> {
    let n = p.n();
    let mut colour: Vec<usize> = (0..n)
        .map(|i| {
            let d = p.down_mask(i).count_ones() as usize;
            let u = p.up_mask(i).count_ones() as usize;
            d * (n + 1) + u
        })
        .collect();
    loop {
        let sigs: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..n)
            .map(|i| {
                let mut below: Vec<usize> = bits(p.down_mask(i) & !(1 << i)).map(|j| colour[j]).collect();
                let mut above: Vec<usize> = bits(p.up_mask(i) & !(1 << i)).map(|j| colour[j]).collect();
                below.sort_unstable();
                above.sort_unstable();
                (colour[i], below, above)
            })
            .collect();
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = sigs
            .iter()
            .map(|s| distinct.binary_search(s).unwrap())
            .collect();
        let classes_before = {
            let mut c = colour.clone();
            c.sort_unstable();
            c.dedup();
            c.len()
        };
        colour = next;
        if distinct.len() == classes_before {
            return colour;
        }
    }
}

/// Canonical key of `p` and every labeling that realises it.
pub fn canonical_labelings(p: &Poset) -> (CanonicalKey, Vec<Vec<usize>>) {
    let n = p.n();
    let colour = initial_colours(p);
    // Positions are filled cell by cell, cells ordered by colour.
    let mut slots: Vec<usize> = (0..n).collect();
    slots.sort_by_key(|&i| colour[i]);
    let slot_colour: Vec<usize> = slots.iter().map(|&i| colour[i]).collect();

    struct Search<'a> {
        p: &'a Poset,
        colour: &'a [usize],
        slot_colour: &'a [usize],
        best: Option<Vec<bool>>,
        winners: Vec<Vec<usize>>,
    }

    impl Search<'_> {
        fn go(&mut self, perm: &mut Vec<usize>, used: &mut [bool], key: &mut Vec<bool>) {
            let k = perm.len();
            if let Some(best) = &self.best {
                let prefix = &best[..key.len()];
                match key.as_slice().cmp(prefix) {
                    std::cmp::Ordering::Greater => return,
                    std::cmp::Ordering::Less => {
                        if k == self.p.n() {
                            self.best = Some(key.clone());
                            self.winners = vec![perm.clone()];
                            return;
                        }
                    }
                    std::cmp::Ordering::Equal => {
                        if k == self.p.n() {
                            self.winners.push(perm.clone());
                            return;
                        }
                    }
                }
            } else if k == self.p.n() {
                self.best = Some(key.clone());
                self.winners = vec![perm.clone()];
                return;
            }
            for x in 0..self.p.n() {
                if used[x] || self.colour[x] != self.slot_colour[k] {
                    continue;
                }
                let len = key.len();
                for &y in perm.iter() {
                    key.push(self.p.le(y, x));
                    key.push(self.p.le(x, y));
                }
                used[x] = true;
                perm.push(x);
                self.go(perm, used, key);
                perm.pop();
                used[x] = false;
                key.truncate(len);
            }
        }
    }

    let mut search = Search {
        p,
        colour: &colour,
        slot_colour: &slot_colour,
        best: None,
        winners: Vec::new(),
    };
    search.go(&mut Vec::new(), &mut vec![false; n], &mut Vec::new());
    let best = search.best.unwrap_or_default();
    let mut words = vec![n as u64];
    for chunk in best.chunks(64) {
        words.push(chunk.iter().enumerate().fold(0u64, |acc, (i, &b)| acc | (b as u64) << i));
    }
    (CanonicalKey(words), search.winners)
}

pub fn poset_key(p: &Poset) -> CanonicalKey {
    canonical_labelings(p).0
}

/// Canonical key of a frame: the key of its join-irreducible poset.
pub fn canonical_form(f: &FiniteFrame) -> CanonicalKey {
    poset_key(f.jposet())
}

/// Relabels a mask: bit `k` of the result is bit `perm[k]` of `mask`.
pub fn permute_mask(mask: u64, perm: &[usize]) -> u64 {
    perm.iter()
        .enumerate()
        .fold(0, |acc, (k, &old)| acc | ((mask >> old) & 1) << k)
}

/// Key of a frame together with a list of distinguished families of
/// elements (given as masks). Two such structures get equal keys iff some
/// frame isomorphism maps each family onto the corresponding one.
pub fn decorated_key(f: &FiniteFrame, families: &[Vec<u64>]) -> CanonicalKey {
    let (base, perms) = canonical_labelings(f.jposet());
    let mut best: Option<Vec<Vec<u64>>> = None;
    for perm in &perms {
        let image: Vec<Vec<u64>> = families
            .iter()
            .map(|fam| {
                let mut v: Vec<u64> = fam.iter().map(|&m| permute_mask(m, perm)).collect();
                v.sort_unstable();
                v
            })
            .collect();
        if best.as_ref().is_none_or(|b| image < *b) {
            best = Some(image);
        }
    }
    let mut words = base.0;
    for fam in best.unwrap_or_default() {
        words.push(u64::MAX);
        words.push(fam.len() as u64);
        words.extend(fam);
    }
    CanonicalKey(words)
}

/// Brute-force isomorphism test over all `n!` bijections; test oracle.
pub fn isomorphic_brute_force(p: &Poset, q: &Poset) -> bool {
    let n = p.n();
    if n != q.n() {
        return false;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        if (0..n).all(|i| (0..n).all(|j| p.le(i, j) == q.le(perm[i], perm[j]))) {
            return true;
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

/// Advances to the next permutation in lexicographic order.
pub fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
