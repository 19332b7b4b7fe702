//! Exact geometric intersection numbers via linked pairs of axes.
//!
//! The surface deformation-retracts onto a wedge of circles whose ribbon
//! structure (the cyclic order of band ends at the wedge point) encodes the
//! surface. The universal cover of the spine is the Cayley tree of the free
//! fundamental group, planarly embedded by repeating that cyclic order at
//! every vertex. A free-homotopy class corresponds to the axis of any
//! representative, and its lifts are the axes of conjugates.
//!
//! Two lifts cross in the surface exactly when their endpoint pairs on the
//! boundary circle of the tree link, and crossings of minimal-position
//! representatives correspond to crossing pairs of lifts up to deck
//! transformation. Enumerating lifts of the second curve through the
//! vertices of a fixed fundamental segment of the first curve's axis visits
//! every such pair at least once; counting a lift only at the first shared
//! axis vertex makes the count exact.
//!
//! Boundary points are handled lazily as periodic rays. Two distinct rays
//! from a common vertex diverge within the sum of their periods, so every
//! comparison terminates.

use super::{CurveClass, SurfaceModel};
use crate::words::Letter;

/// A periodic ray: the itinerary of one end of an axis, read from a vertex
/// on that axis.
#[derive(Clone, Copy)]
struct Ray<'a> {
    word: &'a [Letter],
    start: usize,
    backward: bool,
}

impl<'a> Ray<'a> {
    fn forward(word: &'a [Letter], at: usize) -> Ray<'a> {
        Ray {
            word,
            start: at,
            backward: false,
        }
    }

    fn backward(word: &'a [Letter], at: usize) -> Ray<'a> {
        Ray {
            word,
            start: at,
            backward: true,
        }
    }

    #[inline]
    fn letter(&self, i: usize) -> Letter {
        let n = self.word.len();
        if self.backward {
            let idx = (self.start + n - 1 - (i % n)) % n;
            self.word[idx].inverse()
        } else {
            self.word[(self.start + i) % n]
        }
    }

    fn period(&self) -> usize {
        self.word.len()
    }
}

/// First index where the rays differ. Distinct periodic rays from a common
/// vertex must differ within the sum of their periods; equality past that
/// bound means the rays describe the same boundary point, which the callers
/// exclude.
fn divergence(a: &Ray, b: &Ray) -> Option<usize> {
    let cap = a.period() + b.period() + 1;
    (0..cap).find(|&i| a.letter(i) != b.letter(i))
}

/// Orientation of three distinct boundary points in the cyclic order of the
/// planar tree: +1 if counter to the germ order they are met in order, -1
/// otherwise. The sign convention is global, so only comparisons matter.
fn orient(m: &SurfaceModel, r1: &Ray, r2: &Ray, r3: &Ray) -> Option<i8> {
    let k12 = divergence(r1, r2)?;
    let k13 = divergence(r1, r3)?;
    let k23 = divergence(r2, r3)?;

    if k12 == k13 && k13 == k23 {
        // all three rays branch at one vertex
        return Some(m.orient_germs(
            m.germ_of(r1.letter(k12)),
            m.germ_of(r2.letter(k12)),
            m.germ_of(r3.letter(k12)),
        ));
    }
    // exactly one pair branches deeper; the third point lies behind the
    // germ pointing back toward the shallow divergence vertex
    if k12 > k13 {
        debug_assert_eq!(k13, k23);
        let back = m.germ_of(r1.letter(k12 - 1).inverse());
        Some(m.orient_germs(
            m.germ_of(r1.letter(k12)),
            m.germ_of(r2.letter(k12)),
            back,
        ))
    } else if k13 > k12 {
        debug_assert_eq!(k12, k23);
        let back = m.germ_of(r1.letter(k13 - 1).inverse());
        Some(-m.orient_germs(
            m.germ_of(r1.letter(k13)),
            m.germ_of(r3.letter(k13)),
            back,
        ))
    } else {
        debug_assert!(k23 > k12 && k12 == k13);
        let back = m.germ_of(r2.letter(k23 - 1).inverse());
        Some(m.orient_germs(
            m.germ_of(r2.letter(k23)),
            m.germ_of(r3.letter(k23)),
            back,
        ))
    }
}

/// Whether the endpoint pair of the lift axis separates the endpoint pair
/// of the base axis on the boundary circle.
fn linked(m: &SurfaceModel, base: &[Letter], t: usize, lift: &[Letter], s: usize) -> Option<bool> {
    let p_plus = Ray::forward(base, t);
    let p_minus = Ray::backward(base, t);
    let q_plus = Ray::forward(lift, s);
    let q_minus = Ray::backward(lift, s);
    let o1 = orient(m, &p_plus, &q_plus, &p_minus)?;
    let o2 = orient(m, &p_plus, &q_minus, &p_minus)?;
    Some(o1 != o2)
}

/// True when the previous base-axis vertex also lies on the lift axis, i.e.
/// this is not the first shared vertex of the two axes.
fn shared_before(base: &[Letter], t: usize, lift: &[Letter], s: usize) -> bool {
    let l1 = base.len();
    let l2 = lift.len();
    let into_t = base[(t + l1 - 1) % l1];
    lift[(s + l2 - 1) % l2] == into_t || lift[s] == into_t.inverse()
}

/// Number of crossing lift pairs between the axes of two distinct classes.
/// Equals the geometric intersection number of the classes.
pub(super) fn pair_crossings(m: &SurfaceModel, c1: &CurveClass, c2: &CurveClass) -> u32 {
    let w = c1.letters();
    let b = c2.letters();
    let mut count = 0u32;
    for t in 0..w.len() {
        for s in 0..b.len() {
            if shared_before(w, t, b, s) {
                continue;
            }
            match linked(m, w, t, b, s) {
                Some(true) => count += 1,
                Some(false) => {}
                None => unreachable!(
                    "distinct primitive classes never share an axis endpoint"
                ),
            }
        }
    }
    count
}

/// Number of crossing pairs of distinct lifts of one class. Each unordered
/// crossing is met from both sides, so the raw count halves exactly.
pub(super) fn self_crossings(m: &SurfaceModel, c: &CurveClass) -> u32 {
    let w = c.letters();
    let n = w.len();
    let mut count = 0u32;
    for t in 0..n {
        for s in 0..n {
            if t == s || shared_before(w, t, w, s) {
                continue;
            }
            match linked(m, w, t, w, s) {
                Some(true) => count += 1,
                Some(false) => {}
                None => unreachable!(
                    "distinct lifts of a primitive class never share an endpoint"
                ),
            }
        }
    }
    debug_assert!(count % 2 == 0, "ordered self-crossings pair up");
    count / 2
}
