//! Independent word-problem oracle: bounded breadth-first closure of the
//! rewrite relation generated by a presentation.
//!
//! This deliberately avoids the Gröbner route used by
//! [`crate::monoid::MonoidEngine`] so that the two can cross-check each
//! other. A run is *decided* only when both closures were enumerated
//! exhaustively within the budget; otherwise it reports `Undecided`.

use std::collections::{HashSet, VecDeque};

use crate::monoid::{MonoidPresentation, Monomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decision {
    Equal,
    Unequal,
    Undecided,
}

struct Closure {
    states: HashSet<Monomial>,
    exhausted: bool,
}

/// All words reachable from `start` by applying relation instances in both
/// directions, up to the given rewrite depth and state cap.
fn closure(
    pres: &MonoidPresentation,
    start: &Monomial,
    max_depth: usize,
    max_states: usize,
) -> Closure {
    let mut states: HashSet<Monomial> = HashSet::new();
    let mut queue: VecDeque<(Monomial, usize)> = VecDeque::new();
    states.insert(start.clone());
    queue.push_back((start.clone(), 0));
    let mut exhausted = true;

    while let Some((w, depth)) = queue.pop_front() {
        if depth >= max_depth {
            exhausted = false;
            continue;
        }
        for next in rewrites(pres, &w) {
            if states.len() >= max_states {
                exhausted = false;
                break;
            }
            if states.insert(next.clone()) {
                queue.push_back((next, depth + 1));
            }
        }
    }
    Closure { states, exhausted }
}

/// Single rewrite steps w = t·a → t·b for each relation (a, b), both ways.
fn rewrites(pres: &MonoidPresentation, w: &Monomial) -> Vec<Monomial> {
    let mut out = Vec::new();
    let Monomial::Word(we) = w else {
        // Zero only rewrites to zero.
        return out;
    };
    for (a, b) in &pres.relations {
        for (lhs, rhs) in [(a, b), (b, a)] {
            let Monomial::Word(le) = lhs else { continue };
            let mut t = Vec::with_capacity(we.len());
            let mut ok = true;
            for (i, (&wx, &lx)) in we.iter().zip(le).enumerate() {
                let d = wx - lx;
                if d < 0 && !pres.inverted.contains(&i) {
                    ok = false;
                    break;
                }
                t.push(d);
            }
            if !ok {
                continue;
            }
            out.push(Monomial::Word(t).mul(rhs));
        }
    }
    out
}

/// Decides u ≡ v by intersecting bounded closures.
pub fn bfs_word_equal(
    pres: &MonoidPresentation,
    u: &Monomial,
    v: &Monomial,
    max_depth: usize,
    max_states: usize,
) -> Decision {
    if u == v {
        return Decision::Equal;
    }
    let cu = closure(pres, u, max_depth, max_states);
    if cu.states.contains(v) {
        return Decision::Equal;
    }
    let cv = closure(pres, v, max_depth, max_states);
    if cv.states.iter().any(|s| cu.states.contains(s)) {
        return Decision::Equal;
    }
    if cu.exhausted && cv.exhausted {
        Decision::Unequal
    } else {
        Decision::Undecided
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rewrite_reaches_the_shorter_word() {
        // T0²T1 ≡ T0 under T0T1 = 1.
        let pres = MonoidPresentation::free(vec!["T0", "T1"])
            .with_relation(Monomial::word(vec![1, 1]), Monomial::one(2));
        let d = bfs_word_equal(
            &pres,
            &Monomial::word(vec![2, 1]),
            &Monomial::word(vec![1, 0]),
            12,
            10_000,
        );
        assert_eq!(d, Decision::Equal);
    }

    #[test]
    fn free_monoid_closure_is_exhaustive() {
        let pres = MonoidPresentation::free(vec!["T"]);
        let d = bfs_word_equal(
            &pres,
            &Monomial::word(vec![2]),
            &Monomial::word(vec![3]),
            12,
            10_000,
        );
        assert_eq!(d, Decision::Unequal);
    }

    #[test]
    fn zero_relation_collapses() {
        // T² = 0 sends T³ to zero as well.
        let pres = MonoidPresentation::free(vec!["T"])
            .with_relation(Monomial::word(vec![2]), Monomial::Zero);
        let d = bfs_word_equal(&pres, &Monomial::word(vec![3]), &Monomial::Zero, 12, 10_000);
        assert_eq!(d, Decision::Equal);
    }
}
