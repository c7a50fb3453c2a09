//! Exact piecewise-linear crossing counts on the torus.
//!
//! Everything here works with arbitrary-precision rationals and exact sign
//! predicates. Degenerate configurations (touching endpoints, collinear
//! overlaps) are never resolved by epsilon; they are reported so the caller
//! can retry with a different rational perturbation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Pt {
    pub x: Rat,
    pub y: Rat,
}

impl Pt {
    pub fn new(x: Rat, y: Rat) -> Self {
        Pt { x, y }
    }

    pub fn translate(&self, dx: &BigInt, dy: &BigInt) -> Pt {
        Pt {
            x: &self.x + Rat::from(dx.clone()),
            y: &self.y + Rat::from(dy.clone()),
        }
    }
}

/// Directed segment with distinct rational endpoints.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Seg {
    pub a: Pt,
    pub b: Pt,
}

impl Seg {
    pub fn new(a: Pt, b: Pt) -> Self {
        assert!(a != b, "degenerate segment");
        Seg { a, b }
    }
}

/// Sign of the cross product (q - p) x (r - p): +1 if r lies left of pq.
fn orient(p: &Pt, q: &Pt, r: &Pt) -> i32 {
    let cross = (&q.x - &p.x) * (&r.y - &p.y) - (&q.y - &p.y) * (&r.x - &p.x);
    match cross.cmp(&Rat::zero()) {
        std::cmp::Ordering::Less => -1,
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Greater => 1,
    }
}

/// Exact point-on-segment predicate (endpoints inclusive).
pub fn on_segment(s: &Seg, p: &Pt) -> bool {
    if orient(&s.a, &s.b, p) != 0 {
        return false;
    }
    let (xmin, xmax) = minmax(&s.a.x, &s.b.x);
    let (ymin, ymax) = minmax(&s.a.y, &s.b.y);
    &p.x >= xmin && &p.x <= xmax && &p.y >= ymin && &p.y <= ymax
}

fn minmax<'a>(a: &'a Rat, b: &'a Rat) -> (&'a Rat, &'a Rat) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Outcome of intersecting two segments.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Crossing {
    /// Disjoint (or properly separated).
    None,
    /// Transversal interior crossing; the sign is that of
    /// cross(direction of first, direction of second).
    Proper(i32),
    /// Endpoint touch or collinear overlap: the configuration must be
    /// perturbed before counts are meaningful.
    Degenerate,
}

/// Signed crossing of `other` across the directed segment `of`.
pub fn crossing(of: &Seg, other: &Seg) -> Crossing {
    let o1 = orient(&of.a, &of.b, &other.a);
    let o2 = orient(&of.a, &of.b, &other.b);
    let o3 = orient(&other.a, &other.b, &of.a);
    let o4 = orient(&other.a, &other.b, &of.b);
    if o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0 {
        if o1 != o2 && o3 != o4 {
            // Proper crossing; sign of cross(dir(of), dir(other)).
            let dir_of = Pt::new(&of.b.x - &of.a.x, &of.b.y - &of.a.y);
            let dir_other = Pt::new(&other.b.x - &other.a.x, &other.b.y - &other.a.y);
            let cross = &dir_of.x * &dir_other.y - &dir_of.y * &dir_other.x;
            return Crossing::Proper(if cross.is_positive() { 1 } else { -1 });
        }
        return Crossing::None;
    }
    // Some orientation vanished: degenerate only if the collinear point
    // actually lies on the other segment.
    if (o1 == 0 && on_segment(of, &other.a))
        || (o2 == 0 && on_segment(of, &other.b))
        || (o3 == 0 && on_segment(other, &of.a))
        || (o4 == 0 && on_segment(other, &of.b))
    {
        return Crossing::Degenerate;
    }
    Crossing::None
}

/// Formal integer combination of closed plane-lifted loops, used as a
/// 1-cycle on the torus.
#[derive(Clone, Debug, Default)]
pub struct Cycle {
    pub segments: Vec<(Seg, BigInt)>,
}

impl Cycle {
    pub fn push(&mut self, seg: Seg, mult: BigInt) {
        if !mult.is_zero() {
            self.segments.push((seg, mult));
        }
    }
}

fn floor_rat(r: &Rat) -> BigInt {
    r.floor().to_integer()
}

fn ceil_rat(r: &Rat) -> BigInt {
    r.ceil().to_integer()
}

/// All signed crossings, on the torus, of `cycle` across the directed arc
/// segment `arc` (the arc is translated over the integer lattice; the cycle
/// segments are taken as lifted).
///
/// Returns `None` on any degenerate contact.
pub fn torus_crossings(cycle: &Cycle, arc: &Seg) -> Option<BigInt> {
    let mut total = BigInt::zero();
    for (seg, mult) in &cycle.segments {
        let (sx_min, sx_max) = minmax(&seg.a.x, &seg.b.x);
        let (sy_min, sy_max) = minmax(&seg.a.y, &seg.b.y);
        let (ax_min, ax_max) = minmax(&arc.a.x, &arc.b.x);
        let (ay_min, ay_max) = minmax(&arc.a.y, &arc.b.y);
        // Translate arc by (i, j); overlap needs i in [sx_min - ax_max, sx_max - ax_min].
        let i_lo = ceil_rat(&(sx_min - ax_max));
        let i_hi = floor_rat(&(sx_max - ax_min));
        let j_lo = ceil_rat(&(sy_min - ay_max));
        let j_hi = floor_rat(&(sy_max - ay_min));
        let mut i = i_lo.clone();
        while i <= i_hi {
            let mut j = j_lo.clone();
            while j <= j_hi {
                let t = Seg::new(arc.a.translate(&i, &j), arc.b.translate(&i, &j));
                match crossing(&t, seg) {
                    Crossing::None => {}
                    Crossing::Proper(s) => total += mult * s,
                    Crossing::Degenerate => return None,
                }
                j += 1;
            }
            i += 1;
        }
    }
    Some(total)
}

/// Does any integer translate of `p` lie on the segment?
pub fn torus_point_on_segment(seg: &Seg, p: &Pt) -> bool {
    let (sx_min, sx_max) = minmax(&seg.a.x, &seg.b.x);
    let (sy_min, sy_max) = minmax(&seg.a.y, &seg.b.y);
    let i_lo = ceil_rat(&(sx_min - &p.x));
    let i_hi = floor_rat(&(sx_max - &p.x));
    let j_lo = ceil_rat(&(sy_min - &p.y));
    let j_hi = floor_rat(&(sy_max - &p.y));
    let mut i = i_lo.clone();
    while i <= i_hi {
        let mut j = j_lo.clone();
        while j <= j_hi {
            if on_segment(seg, &p.translate(&i, &j)) {
                return true;
            }
            j += 1;
        }
        i += 1;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn p(x: (i64, i64), y: (i64, i64)) -> Pt {
        Pt::new(rat(x.0, x.1), rat(y.0, y.1))
    }

    #[test]
    fn proper_crossing_signs() {
        // Eastward segment, southward crosser: right-handed frame gives -1.
        let east = Seg::new(p((0, 1), (0, 1)), p((1, 1), (0, 1)));
        let south = Seg::new(p((1, 2), (1, 2)), p((1, 2), (-1, 2)));
        assert_eq!(crossing(&east, &south), Crossing::Proper(-1));
        let north = Seg::new(p((1, 2), (-1, 2)), p((1, 2), (1, 2)));
        assert_eq!(crossing(&east, &north), Crossing::Proper(1));
    }

    #[test]
    fn disjoint_and_degenerate() {
        let east = Seg::new(p((0, 1), (0, 1)), p((1, 1), (0, 1)));
        let far = Seg::new(p((0, 1), (1, 1)), p((1, 1), (1, 1)));
        assert_eq!(crossing(&east, &far), Crossing::None);
        // Touching at an endpoint.
        let touch = Seg::new(p((1, 2), (0, 1)), p((1, 2), (1, 1)));
        assert_eq!(crossing(&east, &touch), Crossing::Degenerate);
        // Collinear overlap.
        let overlap = Seg::new(p((1, 2), (0, 1)), p((3, 2), (0, 1)));
        assert_eq!(crossing(&east, &overlap), Crossing::Degenerate);
    }

    #[test]
    fn winding_of_ccw_square() {
        // CCW square around (1/2, 1/2); arc from the center to a far point.
        let corners = [
            p((1, 4), (1, 4)),
            p((3, 4), (1, 4)),
            p((3, 4), (3, 4)),
            p((1, 4), (3, 4)),
        ];
        let mut cycle = Cycle::default();
        for i in 0..4 {
            cycle.push(
                Seg::new(corners[i].clone(), corners[(i + 1) % 4].clone()),
                BigInt::one(),
            );
        }
        // The cycle is null-homotopic inside one fundamental domain, so the
        // plain planar winding is what torus counting must reproduce.
        let arc_out = Seg::new(p((1, 2), (1, 2)), p((9, 10), (1, 5)));
        assert_eq!(torus_crossings(&cycle, &arc_out), Some(BigInt::one()));
        // Point outside the square: zero winding difference.
        let arc_outside = Seg::new(p((9, 10), (9, 10)), p((9, 10), (1, 10)));
        assert_eq!(torus_crossings(&cycle, &arc_outside), Some(BigInt::zero()));
    }

    #[test]
    fn winding_between_two_horizontal_loops() {
        // Z = l(1/5) - l(3/5): boundary of the band 1/5 < y < 3/5.
        let mut z = Cycle::default();
        z.push(
            Seg::new(p((0, 1), (1, 5)), p((1, 1), (1, 5))),
            BigInt::one(),
        );
        z.push(
            Seg::new(p((0, 1), (3, 5)), p((1, 1), (3, 5))),
            BigInt::from(-1),
        );
        // From inside the band down to below the band: difference +1.
        let arc = Seg::new(p((1, 3), (2, 5)), p((1, 3), (1, 10)));
        assert_eq!(torus_crossings(&z, &arc), Some(BigInt::one()));
        // From above the band to below: crossings cancel on the torus.
        let arc2 = Seg::new(p((1, 3), (4, 5)), p((1, 3), (1, 10)));
        assert_eq!(torus_crossings(&z, &arc2), Some(BigInt::zero()));
    }

    #[test]
    fn wrapping_segment_translates() {
        // A long diagonal lift crosses the short vertical arc once per wrap.
        let mut z = Cycle::default();
        z.push(
            Seg::new(p((0, 1), (1, 7)), p((3, 1), (1, 7))),
            BigInt::one(),
        );
        let arc = Seg::new(p((1, 2), (1, 3)), p((1, 2), (0, 1)));
        // Three translates of the southward arc meet the eastward lift, each
        // crossing with sign cross(south, east) = +1.
        assert_eq!(torus_crossings(&z, &arc), Some(BigInt::from(3)));
    }

    #[test]
    fn degenerate_reported_through_translates() {
        let mut z = Cycle::default();
        z.push(
            Seg::new(p((0, 1), (0, 1)), p((1, 1), (0, 1))),
            BigInt::one(),
        );
        // Arc ending exactly on a lattice translate of the segment.
        let arc = Seg::new(p((1, 2), (1, 2)), p((1, 2), (1, 1)));
        assert_eq!(torus_crossings(&z, &arc), None);
    }

    #[test]
    fn torus_point_on_segment_wraps() {
        let seg = Seg::new(p((0, 1), (0, 1)), p((5, 2), (5, 2)));
        assert!(torus_point_on_segment(&seg, &p((1, 2), (1, 2))));
        assert!(!torus_point_on_segment(&seg, &p((1, 2), (1, 3))));
    }
}
