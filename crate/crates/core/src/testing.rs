//! Random instance generators shared by property tests, the acceptance
//! suite and the benchmarks.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::Result;
use crate::system::{CComplexData, Clasp, ClaspEndpoint, SurfaceSystemData};
use crate::word::{Letter, LinearWord, Sign};

fn random_sign<R: Rng + ?Sized>(rng: &mut R) -> Sign {
    if rng.gen_bool(0.5) {
        Sign::Pos
    } else {
        Sign::Neg
    }
}

/// A valid C-complex on `n ≥ 2` components with at most `max_clasps`
/// clasps, random signs, and random ranks along each component.
pub fn random_ccomplex<R: Rng + ?Sized>(rng: &mut R, n: usize, max_clasps: usize) -> CComplexData {
    assert!(n >= 2, "clasps need two components");
    let count = rng.gen_range(0..=max_clasps);
    let mut pairs = Vec::with_capacity(count);
    for _ in 0..count {
        let a = rng.gen_range(1..=n);
        let mut b = rng.gen_range(1..n);
        if b >= a {
            b += 1;
        }
        pairs.push((a, b, random_sign(rng)));
    }
    // endpoint slots per component, then a random order along each
    let mut slots: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n + 1];
    for (idx, &(a, b, _)) in pairs.iter().enumerate() {
        slots[a].push((idx, true));
        slots[b].push((idx, false));
    }
    let mut ranks = vec![(0, 0); count];
    for list in slots.iter_mut() {
        list.shuffle(rng);
        for (pos, &(idx, is_a)) in list.iter().enumerate() {
            if is_a {
                ranks[idx].0 = pos + 1;
            } else {
                ranks[idx].1 = pos + 1;
            }
        }
    }
    let clasps = pairs
        .iter()
        .enumerate()
        .map(|(idx, &(a, b, sign))| Clasp {
            id: format!("c{}", idx + 1),
            a: ClaspEndpoint {
                component: a,
                rank: ranks[idx].0,
            },
            b: ClaspEndpoint {
                component: b,
                rank: ranks[idx].1,
            },
            sign,
        })
        .collect();
    CComplexData::new(n, clasps)
}

/// Another sign-compatible pairing of the same clasp endpoints: every
/// clasp-word is unchanged, but which endpoint on one component is joined
/// to which on the other is shuffled.
pub fn random_repairing<R: Rng + ?Sized>(rng: &mut R, c: &CComplexData) -> CComplexData {
    // (low, high, sign) -> (ranks on low, ranks on high)
    let mut groups: BTreeMap<_, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for k in 1..=c.n {
        for (r0, slot) in c.slots(k).into_iter().enumerate() {
            let key = (k.min(slot.partner), k.max(slot.partner), slot.sign.value());
            let entry = groups.entry(key).or_default();
            if k < slot.partner {
                entry.0.push(r0 + 1);
            } else {
                entry.1.push(r0 + 1);
            }
        }
    }
    let mut clasps = Vec::new();
    for ((lo, hi, sign), (lo_ranks, mut hi_ranks)) in groups {
        hi_ranks.shuffle(rng);
        for (ra, rb) in lo_ranks.into_iter().zip(hi_ranks) {
            clasps.push(Clasp {
                id: format!("c{}", clasps.len() + 1),
                a: ClaspEndpoint {
                    component: lo,
                    rank: ra,
                },
                b: ClaspEndpoint {
                    component: hi,
                    rank: rb,
                },
                sign: Sign::from_value(sign).expect("stored from a sign"),
            });
        }
    }
    CComplexData::new(c.n, clasps)
}

/// Empty words and a random triple table with entries in `[-bound, bound]`.
pub fn random_triple_system<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    bound: i64,
) -> SurfaceSystemData {
    let mut t = BTreeMap::new();
    for key in crate::invariant::triples(n) {
        t.insert(key, rng.gen_range(-bound..=bound));
    }
    SurfaceSystemData::new(n, vec![Default::default(); n], t)
}

/// A random linear word of length at most `max_len` over letters `1..=n`.
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, n: usize, max_len: usize) -> LinearWord {
    let len = rng.gen_range(0..=max_len);
    LinearWord::new(
        (0..len)
            .map(|_| Letter::new(rng.gen_range(1..=n), random_sign(rng)).expect("index >= 1"))
            .collect(),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Move {
    Rotate {
        component: usize,
        steps: i64,
    },
    Finger {
        component: usize,
        position: usize,
    },
    Tube {
        component: usize,
        position: usize,
    },
    TorusSum {
        target: usize,
        around: usize,
        orientation: Sign,
    },
}

impl Move {
    pub fn apply(&self, s: &SurfaceSystemData) -> Result<SurfaceSystemData> {
        match *self {
            Move::Rotate { component, steps } => s.rotate_word(component, steps),
            Move::Finger {
                component,
                position,
            } => s.finger_move(component, position),
            Move::Tube {
                component,
                position,
            } => s.tube_move(component, position),
            Move::TorusSum {
                target,
                around,
                orientation,
            } => s.torus_sum(target, around, orientation),
        }
    }
}

/// A random move applicable to `s` (`n ≥ 3`). Finger and tube moves are
/// drawn only where their preconditions hold; when neither is available a
/// rotation or torus sum is drawn instead.
pub fn random_move<R: Rng + ?Sized>(rng: &mut R, s: &SurfaceSystemData) -> Move {
    let n = s.n();
    let mut fingers = Vec::new();
    let mut tubes = Vec::new();
    for k in 1..=n {
        let lin = s.linear_word(k);
        for (p, pair) in lin.letters().windows(2).enumerate() {
            if pair[0].is_inverse_of(pair[1]) {
                tubes.push((k, p));
            } else if pair[0].index() != pair[1].index() {
                fingers.push((k, p));
            }
        }
    }
    loop {
        match rng.gen_range(0..4) {
            0 => {
                let k = rng.gen_range(1..=n);
                let len = s.word(k).len().max(1) as i64;
                return Move::Rotate {
                    component: k,
                    steps: rng.gen_range(-len..=len),
                };
            }
            1 if !fingers.is_empty() => {
                let &(k, p) = fingers.choose(rng).expect("nonempty");
                return Move::Finger {
                    component: k,
                    position: p,
                };
            }
            2 if !tubes.is_empty() => {
                let &(k, p) = tubes.choose(rng).expect("nonempty");
                return Move::Tube {
                    component: k,
                    position: p,
                };
            }
            3 => {
                let target = rng.gen_range(1..=n);
                let mut around = rng.gen_range(1..n);
                if around >= target {
                    around += 1;
                }
                return Move::TorusSum {
                    target,
                    around,
                    orientation: random_sign(rng),
                };
            }
            _ => continue,
        }
    }
}

/// Applies `len` random moves, returning the final system and the moves.
pub fn random_move_sequence<R: Rng + ?Sized>(
    rng: &mut R,
    s: &SurfaceSystemData,
    len: usize,
) -> Result<(SurfaceSystemData, Vec<Move>)> {
    let mut cur = s.clone();
    let mut moves = Vec::with_capacity(len);
    for _ in 0..len {
        let mv = random_move(rng, &cur);
        cur = mv.apply(&cur)?;
        moves.push(mv);
    }
    Ok((cur, moves))
}
