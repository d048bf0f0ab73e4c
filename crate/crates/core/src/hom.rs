//! Frame homomorphisms, right adjoints, quotients and generated subframes.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::congruence::FrameCongruence;
use crate::order::{lattice_from_tables, Elem, FiniteFrame, OrderError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomError {
    #[error("map has {len} entries but the domain has {expected} elements")]
    NotTotal { len: usize, expected: usize },
    #[error("map sends {x} to {image}, outside the codomain")]
    OutOfRange { x: Elem, image: Elem },
    /// `None` means the empty meet, i.e. the top element.
    #[error("meet not preserved at {witness:?}")]
    MeetViolation { witness: Option<(Elem, Elem)> },
    /// `None` means the empty join, i.e. the bottom element.
    #[error("join not preserved at {witness:?}")]
    JoinViolation { witness: Option<(Elem, Elem)> },
    #[error(transparent)]
    Order(#[from] OrderError),
}

/// A map between finite frames preserving finite meets and all joins.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameHom {
    dom: FiniteFrame,
    cod: FiniteFrame,
    map: Vec<Elem>,
}

/// Checks preservation of 1, 0 and binary meets and joins. On a finite
/// carrier binary joins plus 0 give all joins.
pub fn validate_hom(dom: &FiniteFrame, cod: &FiniteFrame, map: Vec<Elem>) -> Result<FrameHom, HomError> {
    if map.len() != dom.len() {
        return Err(HomError::NotTotal {
            len: map.len(),
            expected: dom.len(),
        });
    }
    if let Some((x, &image)) = map.iter().enumerate().find(|(_, &y)| y >= cod.len()) {
        return Err(HomError::OutOfRange { x, image });
    }
    if map[dom.top()] != cod.top() {
        return Err(HomError::MeetViolation { witness: None });
    }
    if map[dom.bottom()] != cod.bottom() {
        return Err(HomError::JoinViolation { witness: None });
    }
    for a in dom.elements() {
        for b in a + 1..dom.len() {
            if map[dom.meet(a, b)] != cod.meet(map[a], map[b]) {
                return Err(HomError::MeetViolation {
                    witness: Some((a, b)),
                });
            }
            if map[dom.join(a, b)] != cod.join(map[a], map[b]) {
                return Err(HomError::JoinViolation {
                    witness: Some((a, b)),
                });
            }
        }
    }
    Ok(FrameHom {
        dom: dom.clone(),
        cod: cod.clone(),
        map,
    })
}

impl FrameHom {
    pub fn identity(f: &FiniteFrame) -> FrameHom {
        FrameHom {
            dom: f.clone(),
            cod: f.clone(),
            map: f.elements().collect(),
        }
    }

    pub fn dom(&self) -> &FiniteFrame {
        &self.dom
    }

    pub fn cod(&self) -> &FiniteFrame {
        &self.cod
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &FrameHom) -> FrameHom {
        assert_eq!(self.cod, next.dom, "composing homomorphisms with mismatched frames");
        FrameHom {
            dom: self.dom.clone(),
            cod: next.cod.clone(),
            map: self.map.iter().map(|&y| next.map[y]).collect(),
        }
    }

    pub fn kernel(&self) -> FrameCongruence {
        FrameCongruence::from_key(&self.dom, |x| self.map[x])
    }

    /// Whether the map is a bijection (then its inverse is a frame map too).
    pub fn is_isomorphism(&self) -> bool {
        self.dom.len() == self.cod.len() && is_surjective(self)
    }

    pub fn inverse(&self) -> Option<FrameHom> {
        if !self.is_isomorphism() {
            return None;
        }
        let mut inv = vec![0; self.cod.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Some(FrameHom {
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            map: inv,
        })
    }
}

/// `f_*(y) = ⋁{x : f(x) ≤ y}`.
pub fn right_adjoint(f: &FrameHom) -> Vec<Elem> {
    f.cod
        .elements()
        .map(|y| f.dom.join_all(f.dom.elements().filter(|&x| f.cod.le(f.map[x], y))))
        .collect()
}

/// `f(x) = 0` only for `x = 0`.
pub fn is_dense(f: &FrameHom) -> bool {
    f.dom
        .elements()
        .all(|x| f.map[x] != f.cod.bottom() || x == f.dom.bottom())
}

pub fn is_surjective(f: &FrameHom) -> bool {
    let mut hit = vec![false; f.cod.len()];
    for &y in &f.map {
        hit[y] = true;
    }
    hit.into_iter().all(|h| h)
}

/// The quotient `F/θ`, with classes represented by their largest members,
/// and the projection onto it.
pub fn quotient_by_congruence(f: &FiniteFrame, theta: &FrameCongruence) -> Result<(FiniteFrame, FrameHom), HomError> {
    let tops = theta.class_tops(f);
    let k = tops.len();
    let meet: Vec<Vec<usize>> = (0..k)
        .map(|a| (0..k).map(|b| theta.class(f.meet(tops[a], tops[b]))).collect())
        .collect();
    let join: Vec<Vec<usize>> = (0..k)
        .map(|a| (0..k).map(|b| theta.class(f.join(tops[a], tops[b]))).collect())
        .collect();
    let (quot, embed) = lattice_from_tables(&meet, &join)?;
    let map = f.elements().map(|x| embed[theta.class(x)]).collect();
    let proj = validate_hom(f, &quot, map)?;
    Ok((quot, proj))
}

/// Smallest subset containing `s`, 0 and 1 and closed under binary meets
/// and joins, sorted.
pub fn subframe_generated(f: &FiniteFrame, s: &[Elem]) -> Vec<Elem> {
    let mut member = vec![false; f.len()];
    let mut list = Vec::new();
    for &x in s.iter().chain([f.bottom(), f.top()].iter()) {
        if !member[x] {
            member[x] = true;
            list.push(x);
        }
    }
    let mut done = 0;
    while done < list.len() {
        let x = list[done];
        done += 1;
        let mut i = 0;
        while i < done {
            let y = list[i];
            for z in [f.meet(x, y), f.join(x, y)] {
                if !member[z] {
                    member[z] = true;
                    list.push(z);
                }
            }
            i += 1;
        }
    }
    list.sort_unstable();
    list
}

/// All frame homomorphisms `dom → cod`, by backtracking over elements in
/// canonical order. Exponential; used for small exhaustive checks.
pub fn enumerate_homs(dom: &FiniteFrame, cod: &FiniteFrame) -> Vec<FrameHom> {
    fn go(dom: &FiniteFrame, cod: &FiniteFrame, map: &mut Vec<Elem>, out: &mut Vec<FrameHom>) {
        let x = map.len();
        if x == dom.len() {
            if let Ok(h) = validate_hom(dom, cod, map.clone()) {
                out.push(h);
            }
            return;
        }
        let fixed = if x == dom.bottom() {
            Some(cod.bottom())
        } else if x == dom.top() {
            Some(cod.top())
        } else {
            None
        };
        for y in cod.elements() {
            if fixed.is_some_and(|f| f != y) {
                continue;
            }
            let ok = (0..x).all(|w| {
                let m = dom.meet(w, x);
                let j = dom.join(w, x);
                (m >= x || map[m] == cod.meet(map[w], y)) && (j >= x || map[j] == cod.join(map[w], y))
            });
            if ok {
                map.push(y);
                go(dom, cod, map, out);
                map.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(dom, cod, &mut Vec::new(), &mut out);
    out
}

#[derive(Serialize, Deserialize)]
struct HomDoc {
    dom: FiniteFrame,
    cod: FiniteFrame,
    map: Vec<Elem>,
}

impl Serialize for FrameHom {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        HomDoc {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            map: self.map.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FrameHom {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<FrameHom, D::Error> {
        let doc = HomDoc::deserialize(d)?;
        validate_hom(&doc.dom, &doc.cod, doc.map).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::{closed_congruence, open_congruence};

    // C3 = {0, m, 1} with indices 0, 1, 2; TWO = {0, 1}.
    fn q() -> FrameHom {
        validate_hom(&FiniteFrame::chain(3), &FiniteFrame::two(), vec![0, 1, 1]).unwrap()
    }

    fn q_prime() -> FrameHom {
        validate_hom(&FiniteFrame::chain(3), &FiniteFrame::two(), vec![0, 0, 1]).unwrap()
    }

    #[test]
    fn validate_examples() {
        let c3 = FiniteFrame::chain(3);
        assert!(validate_hom(&c3, &c3, vec![0, 1, 2]).is_ok());
        q();
        let b2 = FiniteFrame::boolean(2);
        assert_eq!(
            validate_hom(&b2, &FiniteFrame::two(), vec![0, 1, 1, 1]),
            Err(HomError::MeetViolation { witness: Some((1, 2)) })
        );
        assert_eq!(
            validate_hom(&c3, &c3, vec![0, 1, 1]),
            Err(HomError::MeetViolation { witness: None })
        );
    }

    #[test]
    fn right_adjoint_examples() {
        let c3 = FiniteFrame::chain(3);
        assert_eq!(right_adjoint(&FrameHom::identity(&c3)), vec![0, 1, 2]);
        assert_eq!(right_adjoint(&q())[0], 0);
        assert_eq!(right_adjoint(&q_prime())[0], 1);
        for f in [q(), q_prime()] {
            let ra = right_adjoint(&f);
            for x in f.dom().elements() {
                for y in f.cod().elements() {
                    assert_eq!(f.cod().le(f.apply(x), y), f.dom().le(x, ra[y]));
                }
            }
        }
    }

    #[test]
    fn density_examples() {
        assert!(is_dense(&q()));
        assert!(!is_dense(&q_prime()));
        let id = FrameHom::identity(&FiniteFrame::chain(3));
        assert!(is_dense(&id) && is_surjective(&id));
    }

    #[test]
    fn quotient_examples() {
        let c3 = FiniteFrame::chain(3);
        let (quot, proj) = quotient_by_congruence(&c3, &closed_congruence(&c3, 1)).unwrap();
        assert_eq!(quot, FiniteFrame::two());
        assert_eq!(proj.map(), &[0, 0, 1]);
        let diag = FrameCongruence::diagonal(&c3);
        let (same, _) = quotient_by_congruence(&c3, &diag).unwrap();
        assert_eq!(same, c3);
        let all = FrameCongruence::all(&c3);
        let (one, _) = quotient_by_congruence(&c3, &all).unwrap();
        assert_eq!(one.len(), 1);
        let delta = open_congruence(&c3, 1);
        let (_, p) = quotient_by_congruence(&c3, &delta).unwrap();
        assert_eq!(p.kernel(), delta);
    }

    #[test]
    fn subframe_examples() {
        let b2 = FiniteFrame::boolean(2);
        assert_eq!(subframe_generated(&b2, &[1]), vec![0, 1, 3]);
        assert_eq!(subframe_generated(&b2, &[]), vec![0, 3]);
        assert_eq!(subframe_generated(&b2, &[0, 1, 2, 3]), vec![0, 1, 2, 3]);
    }

    #[test]
    fn enumerate_homs_counts() {
        // Homs C3 → TWO correspond to prime filters of C3: {m,1} and {1}.
        assert_eq!(enumerate_homs(&FiniteFrame::chain(3), &FiniteFrame::two()).len(), 2);
        // Homs TWO → F: exactly one.
        assert_eq!(enumerate_homs(&FiniteFrame::two(), &FiniteFrame::boolean(2)).len(), 1);
    }
}
