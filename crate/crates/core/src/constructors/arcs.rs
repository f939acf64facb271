//! Exact predicates for circular arcs `C_v` and their regions `R_v`.
//!
//! An arc is centered at a vertex `c` with squared radius `r2`; it spans the
//! directions outside the closed convex wedge from `dl` counter-clockwise to
//! `dr` (the directions of the two parent edges).

use std::cmp::Ordering;

use num_traits::{Signed, Zero};

use crate::geom::{cross, dot, Point, Rat};

fn two() -> Rat {
    Rat::from_integer(2.into())
}

pub(crate) fn dist2(a: &Point<Rat>, b: &Point<Rat>) -> Rat {
    let (dx, dy) = a.sub(b);
    &dx * &dx + &dy * &dy
}

/// Squared distance from `x` to the closed segment `ab`.
pub(crate) fn dist2_segment(x: &Point<Rat>, a: &Point<Rat>, b: &Point<Rat>) -> Rat {
    let (ex, ey) = b.sub(a);
    let (wx, wy) = x.sub(a);
    let len = &ex * &ex + &ey * &ey;
    let t = (&wx * &ex + &wy * &ey) / &len;
    let t = t.clamp(Rat::zero(), Rat::from_integer(1.into()));
    let px = &a.x + &t * &ex - &x.x;
    let py = &a.y + &t * &ey - &x.y;
    &px * &px + &py * &py
}

/// Parent-edge wedge at a center: closed, convex, from `dl` ccw to `dr`.
#[derive(Clone, Debug)]
pub(crate) struct Wedge {
    pub c: Point<Rat>,
    pub dl: (Rat, Rat),
    pub dr: (Rat, Rat),
}

impl Wedge {
    /// `(cross(dl, y), cross(y, dr))` for `y = x - c`; both `>= 0` inside.
    fn sides(&self, x: &Point<Rat>) -> (Rat, Rat) {
        let (yx, yy) = x.sub(&self.c);
        (cross(&self.dl.0, &self.dl.1, &yx, &yy), cross(&yx, &yy, &self.dr.0, &self.dr.1))
    }

    pub fn contains(&self, x: &Point<Rat>) -> bool {
        let (a, b) = self.sides(x);
        !a.is_negative() && !b.is_negative()
    }
}

/// `f(t) = |a + t e - c|^2 - r2` as `A t^2 + B t + C`.
struct Quad {
    a: Rat,
    b: Rat,
    c: Rat,
}

impl Quad {
    fn eval(&self, t: &Rat) -> Rat {
        &self.a * t * t + &self.b * t + &self.c
    }

    fn disc(&self) -> Rat {
        &self.b * &self.b - Rat::from_integer(4.into()) * &self.a * &self.c
    }

    fn vertex(&self) -> Rat {
        -&self.b / (two() * &self.a)
    }

    /// Compares the smaller (`larger = false`) or larger root with `q`;
    /// requires a non-negative discriminant.
    fn cmp_root(&self, larger: bool, q: &Rat) -> Ordering {
        let vtx = self.vertex();
        if self.disc().is_zero() {
            return vtx.cmp(q);
        }
        let fq = self.eval(q);
        if fq.is_negative() {
            return if larger { Ordering::Greater } else { Ordering::Less };
        }
        if fq.is_zero() {
            let q_is_small = *q < vtx;
            return match (larger, q_is_small) {
                (false, true) | (true, false) => Ordering::Equal,
                (false, false) => Ordering::Less,
                (true, true) => Ordering::Greater,
            };
        }
        if *q < vtx {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}

/// Sign of `alpha t + beta` at a root of `quad`.
fn linear_sign_at_root(quad: &Quad, larger: bool, alpha: &Rat, beta: &Rat) -> i8 {
    if alpha.is_zero() {
        return if beta.is_positive() {
            1
        } else if beta.is_negative() {
            -1
        } else {
            0
        };
    }
    let tg = -beta / alpha;
    let s = match quad.cmp_root(larger, &tg) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    };
    if alpha.is_positive() {
        s
    } else {
        -s
    }
}

/// Does the closed segment `ab` meet the open arc of radius `sqrt(r2)`
/// about `w.c` outside the wedge? Tangencies count as meeting.
pub(crate) fn segment_meets_arc(w: &Wedge, r2: &Rat, a: &Point<Rat>, b: &Point<Rat>) -> bool {
    let (ex, ey) = b.sub(a);
    let (gx, gy) = a.sub(&w.c);
    let quad = Quad { a: &ex * &ex + &ey * &ey, b: two() * dot(&gx, &gy, &ex, &ey), c: &gx * &gx + &gy * &gy - r2 };
    if quad.a.is_zero() || quad.disc().is_negative() {
        return false;
    }
    let (one, zero) = (Rat::from_integer(1.into()), Rat::zero());
    // g1(t) = cross(dl, g + t e), g2(t) = cross(g + t e, dr).
    let g1 = (cross(&w.dl.0, &w.dl.1, &ex, &ey), cross(&w.dl.0, &w.dl.1, &gx, &gy));
    let g2 = (cross(&ex, &ey, &w.dr.0, &w.dr.1), cross(&gx, &gy, &w.dr.0, &w.dr.1));
    [false, true].iter().any(|&larger| {
        quad.cmp_root(larger, &zero).is_ge()
            && quad.cmp_root(larger, &one).is_le()
            && (linear_sign_at_root(&quad, larger, &g1.0, &g1.1) < 0
                || linear_sign_at_root(&quad, larger, &g2.0, &g2.1) < 0)
    })
}

/// Parameter interval of `ab` where `alpha t + beta <= 0`, within `[0, 1]`.
fn clip_nonpositive(alpha: &Rat, beta: &Rat) -> Option<(Rat, Rat)> {
    let (zero, one) = (Rat::zero(), Rat::from_integer(1.into()));
    if alpha.is_zero() {
        return beta.is_negative().then_some((zero, one));
    }
    let t0 = -beta / alpha;
    let (lo, hi) = if alpha.is_positive() { (zero, t0.min(one)) } else { (t0.max(zero), one) };
    (lo < hi).then_some((lo, hi))
}

/// Does the closed segment `ab` meet the open region `R` (open disk minus
/// the closed wedge)?
pub(crate) fn segment_meets_region(w: &Wedge, r2: &Rat, a: &Point<Rat>, b: &Point<Rat>) -> bool {
    let (ex, ey) = b.sub(a);
    let (gx, gy) = a.sub(&w.c);
    let halves = [
        (cross(&w.dl.0, &w.dl.1, &ex, &ey), cross(&w.dl.0, &w.dl.1, &gx, &gy)),
        (cross(&ex, &ey, &w.dr.0, &w.dr.1), cross(&gx, &gy, &w.dr.0, &w.dr.1)),
    ];
    halves.iter().any(|(alpha, beta)| match clip_nonpositive(alpha, beta) {
        Some((lo, hi)) => {
            let p = a.lerp(b, &lo);
            let q = a.lerp(b, &hi);
            dist2_segment(&w.c, &p, &q) < *r2
        }
        None => false,
    })
}

pub(crate) fn point_in_region(w: &Wedge, r2: &Rat, x: &Point<Rat>) -> bool {
    dist2(x, &w.c) < *r2 && !w.contains(x)
}

/// Is the closed disk `(c1, r1^2)` disjoint from the circle `(c2, r2^2)`,
/// either strictly outside it or strictly inside its disk?
pub(crate) fn disk_clear_of_circle(c1: &Point<Rat>, r1sq: &Rat, c2: &Point<Rat>, r2sq: &Rat) -> bool {
    let d2 = dist2(c1, c2);
    let four = Rat::from_integer(4.into());
    let prod = &four * r1sq * r2sq;
    let outside = &d2 - r1sq - r2sq;
    if outside.is_positive() && &outside * &outside > prod {
        return true;
    }
    let inside = r2sq + r1sq - &d2;
    r2sq > r1sq && inside.is_positive() && &inside * &inside > prod
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{int, rat};

    fn p(x: i64, y: i64) -> Point<Rat> {
        Point::new(int(x), int(y))
    }

    /// Unit circle at the origin, wedge pointing down between (-1,-1) and (1,-1).
    fn down_wedge() -> Wedge {
        Wedge { c: p(0, 0), dl: (int(-1), int(-1)), dr: (int(1), int(-1)) }
    }

    #[test]
    fn arc_crossings() {
        let w = down_wedge();
        let one = int(1);
        // Horizontal line through the top of the arc region.
        assert!(segment_meets_arc(&w, &one, &p(-2, 0), &p(2, 0)));
        // Through the bottom only: the circle is hit inside the wedge.
        assert!(!segment_meets_arc(&w, &one, &Point::new(rat(-1, 4), int(-2)), &Point::new(rat(1, 4), int(-2))));
        assert!(!segment_meets_arc(&w, &one, &Point::new(int(0), rat(-1, 2)), &Point::new(int(0), int(-3))));
        // Tangent at the top.
        assert!(segment_meets_arc(&w, &one, &p(-1, 1), &p(1, 1)));
        // Entirely inside the disk.
        assert!(!segment_meets_arc(&w, &one, &Point::new(rat(-1, 4), int(0)), &Point::new(rat(1, 4), int(0))));
        // Vertical segment from the center up leaves through the arc.
        assert!(segment_meets_arc(&w, &one, &p(0, 0), &p(0, 5)));
        // Along the wedge boundary out through the arc endpoint: excluded.
        assert!(!segment_meets_arc(&w, &one, &p(0, 0), &p(3, -3)));
    }

    #[test]
    fn region_hits() {
        let w = down_wedge();
        let one = int(1);
        assert!(segment_meets_region(&w, &one, &p(-2, 0), &p(2, 0)));
        assert!(!segment_meets_region(&w, &one, &p(0, 0), &p(3, -3)));
        assert!(!segment_meets_region(&w, &one, &Point::new(int(0), rat(-1, 2)), &p(0, -3)));
        assert!(!segment_meets_region(&w, &one, &p(-3, 1), &p(3, 1)));
        assert!(segment_meets_region(&w, &one, &Point::new(rat(-1, 2), int(-1)), &Point::new(rat(-1, 2), int(1))));
        assert!(point_in_region(&w, &one, &Point::new(int(0), rat(1, 2))));
        assert!(!point_in_region(&w, &one, &Point::new(int(0), rat(-1, 2))));
        assert!(!point_in_region(&w, &one, &p(0, 2)));
    }

    #[test]
    fn disk_separation() {
        let one = int(1);
        let small = rat(1, 16);
        assert!(disk_clear_of_circle(&p(3, 0), &one, &p(0, 0), &one));
        assert!(!disk_clear_of_circle(&p(2, 0), &one, &p(0, 0), &one));
        assert!(disk_clear_of_circle(&Point::new(rat(1, 2), int(0)), &small, &p(0, 0), &one));
        assert!(!disk_clear_of_circle(&Point::new(rat(3, 4), int(0)), &small, &p(0, 0), &one));
        assert!(!disk_clear_of_circle(&p(0, 0), &int(4), &p(0, 0), &one));
    }
}
