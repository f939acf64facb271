use std::collections::HashSet;

use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{
    dyadic, format_rat, orientation, parse_rat, segment_relation, CycloReal, GeomError, Point, Rat, Segment,
    SegmentRelation,
};
use crate::graph::CircularOrder;

/// `((1 - t²)/(1 + t²), 2t/(1 + t²))`, exactly on the unit circle.
pub fn circle_point(t: &Rat) -> Point<Rat> {
    let t2 = t * t;
    let d = Rat::one() + &t2;
    Point::new((Rat::one() - &t2) / &d, (t + t) / &d)
}

#[derive(Clone, Debug, PartialEq)]
pub enum PlacementMode {
    RationalPlane,
    /// Regular polygon over `Q(ζ_m)` with `m = lcm(n, 4)`.
    RegularNGon {
        m: usize,
    },
    /// Points `circle_point(t_v)`; `params[v] = t_v`.
    RationalCocircular {
        params: Vec<Rat>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub enum Coords {
    Rational(Vec<Point<Rat>>),
    Cyclo(Vec<Point<CycloReal>>),
}

/// Vertex id → exact point, tagged with the coordinate mode.
#[derive(Clone, Debug, PartialEq)]
pub struct Placement {
    pub mode: PlacementMode,
    pub coords: Coords,
    /// Clockwise circular order for convex (circle) placements.
    pub order: Option<CircularOrder>,
}

impl Placement {
    pub fn rational(points: Vec<Point<Rat>>) -> Result<Self, GeomError> {
        check_distinct(&points)?;
        Ok(Placement { mode: PlacementMode::RationalPlane, coords: Coords::Rational(points), order: None })
    }

    pub fn n(&self) -> usize {
        match &self.coords {
            Coords::Rational(p) => p.len(),
            Coords::Cyclo(p) => p.len(),
        }
    }

    pub fn mode_name(&self) -> &'static str {
        match self.mode {
            PlacementMode::RationalPlane => "rational",
            PlacementMode::RegularNGon { .. } => "regular",
            PlacementMode::RationalCocircular { .. } => "cocircular",
        }
    }

    pub fn rational_points(&self) -> Option<&[Point<Rat>]> {
        match &self.coords {
            Coords::Rational(p) => Some(p),
            Coords::Cyclo(_) => None,
        }
    }

    pub fn approx_points(&self) -> Vec<(f64, f64)> {
        match &self.coords {
            Coords::Rational(p) => p.iter().map(Point::approx).collect(),
            Coords::Cyclo(p) => p.iter().map(Point::approx).collect(),
        }
    }

    /// Keeps the vertices in `keep` (in that order), renumbered `0..`.
    pub fn restricted(&self, keep: &[usize]) -> Placement {
        let coords = match &self.coords {
            Coords::Rational(p) => Coords::Rational(keep.iter().map(|&v| p[v].clone()).collect()),
            Coords::Cyclo(p) => Coords::Cyclo(keep.iter().map(|&v| p[v].clone()).collect()),
        };
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let order = self.order.as_ref().map(|o| {
            let seq = o.as_slice().iter().filter(|&&v| index[v] != usize::MAX).map(|&v| index[v]);
            CircularOrder::new(seq.collect()).expect("restriction of an order")
        });
        let mode = match &self.mode {
            PlacementMode::RationalCocircular { params } => {
                PlacementMode::RationalCocircular { params: keep.iter().map(|&v| params[v].clone()).collect() }
            }
            other => other.clone(),
        };
        Placement { mode, coords, order }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let doc = PlacementDoc::from(self);
        serde_json::to_value(doc).expect("placement serializes")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("placement serializes")
    }

    pub fn from_json_str(text: &str) -> Result<Self, GeomError> {
        let doc: PlacementDoc = serde_json::from_str(text).map_err(|e| GeomError::Parse(e.to_string()))?;
        doc.into_placement()
    }
}

fn check_distinct<S: super::Scalar>(points: &[Point<S>]) -> Result<(), GeomError> {
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if points[i] == points[j] {
                return Err(GeomError::DuplicatePoint(i, j));
            }
        }
    }
    Ok(())
}

/// Regular polygon on the unit circle with `order[k]` at angle `-2πk/n`
/// (clockwise), vertex `order[0]` at `(1, 0)`.
pub fn regular_placement(order: &CircularOrder) -> Result<Placement, GeomError> {
    let n = order.len();
    if n < 3 {
        return Err(GeomError::BadOrder(format!("need n >= 3, got {n}")));
    }
    let m = n.lcm(&4);
    let step = (m / n) as i64;
    let mut points: Vec<Option<Point<CycloReal>>> = vec![None; n];
    for k in 0..n {
        let j = -(k as i64) * step;
        points[order.at(k)] = Some(Point::new(CycloReal::cos_2pi(m, j), CycloReal::sin_2pi(m, j)));
    }
    Ok(Placement {
        mode: PlacementMode::RegularNGon { m },
        coords: Coords::Cyclo(points.into_iter().map(Option::unwrap).collect()),
        order: Some(order.clone()),
    })
}

const PARAM_BITS: u32 = 30;

fn cocircular_params(n: usize, seed: u64, amplitude: f64) -> Vec<Rat> {
    let golden = (5f64.sqrt() - 1.0) / 2.0;
    let offset = ((seed as f64) * golden * 7.0).fract();
    let pi = std::f64::consts::PI;
    (0..n)
        .map(|k| {
            let jitter = ((offset + k as f64 * golden).fract() - 0.5) * amplitude * pi / n as f64;
            let theta = pi * (1.0 - (2 * k + 1) as f64 / n as f64) + jitter;
            dyadic((theta / 2.0).tan(), PARAM_BITS)
        })
        .collect()
}

/// True when no two distinct chords among `points` cross at a point
/// shared with a third chord.
pub fn chords_generic(points: &[Point<Rat>]) -> bool {
    let n = points.len();
    let mut seen: HashSet<(Rat, Rat)> = HashSet::new();
    let chords: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    for (ci, &(a, b)) in chords.iter().enumerate() {
        let s1 = Segment::new(points[a].clone(), points[b].clone());
        for &(c, d) in &chords[ci + 1..] {
            if a == c || a == d || b == c || b == d {
                continue;
            }
            let s2 = Segment::new(points[c].clone(), points[d].clone());
            if let SegmentRelation::ProperCross(x) = segment_relation(&s1, &s2) {
                if !seen.insert((x.x, x.y)) {
                    return false;
                }
            }
        }
    }
    true
}

/// Rational points on the unit circle in clockwise `order`. With
/// `generic`, parameters are re-drawn until no three chords are concurrent.
pub fn cocircular_placement(order: &CircularOrder, generic: bool, seed: u64) -> Result<Placement, GeomError> {
    let n = order.len();
    if n < 3 {
        return Err(GeomError::BadOrder(format!("need n >= 3, got {n}")));
    }
    let mut amplitude = 0.5;
    let mut attempt = 0u64;
    loop {
        let by_pos = cocircular_params(n, seed.wrapping_add(attempt), amplitude);
        let mut params = vec![Rat::one(); n];
        for (k, t) in by_pos.into_iter().enumerate() {
            params[order.at(k)] = t;
        }
        let points: Vec<Point<Rat>> = params.iter().map(circle_point).collect();
        if !generic || chords_generic(&points) {
            debug_assert!((0..n).all(|k| {
                let (a, b, c) = (order.at(k), order.at((k + 1) % n), order.at((k + 2) % n));
                orientation(&points[a], &points[b], &points[c]) == -1
            }));
            return Ok(Placement {
                mode: PlacementMode::RationalCocircular { params },
                coords: Coords::Rational(points),
                order: Some(order.clone()),
            });
        }
        attempt += 1;
        amplitude /= 2.0;
        if amplitude < 1e-3 {
            amplitude = 0.5;
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CycloDoc {
    den: String,
    num: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CoordDoc {
    Rat(String),
    Cyclo(CycloDoc),
}

#[derive(Serialize, Deserialize)]
struct PointDoc {
    x: CoordDoc,
    y: CoordDoc,
}

#[derive(Serialize, Deserialize)]
struct PlacementDoc {
    mode: String,
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    order: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    params: Option<Vec<String>>,
    points: Vec<PointDoc>,
}

fn cyclo_doc(c: &CycloReal) -> CoordDoc {
    CoordDoc::Cyclo(CycloDoc {
        den: c.denominator().to_string(),
        num: c.coefficients().iter().map(|v| v.to_string()).collect(),
    })
}

impl From<&Placement> for PlacementDoc {
    fn from(p: &Placement) -> Self {
        let points = match &p.coords {
            Coords::Rational(ps) => ps
                .iter()
                .map(|q| PointDoc { x: CoordDoc::Rat(format_rat(&q.x)), y: CoordDoc::Rat(format_rat(&q.y)) })
                .collect(),
            Coords::Cyclo(ps) => ps.iter().map(|q| PointDoc { x: cyclo_doc(&q.x), y: cyclo_doc(&q.y) }).collect(),
        };
        PlacementDoc {
            mode: p.mode_name().to_string(),
            n: p.n(),
            m: match p.mode {
                PlacementMode::RegularNGon { m } => Some(m),
                _ => None,
            },
            order: p.order.as_ref().map(|o| o.as_slice().to_vec()),
            params: match &p.mode {
                PlacementMode::RationalCocircular { params } => Some(params.iter().map(format_rat).collect()),
                _ => None,
            },
            points,
        }
    }
}

impl PlacementDoc {
    fn into_placement(self) -> Result<Placement, GeomError> {
        let bad = |msg: &str| GeomError::Parse(msg.to_string());
        if self.points.len() != self.n {
            return Err(bad("point count differs from n"));
        }
        let order = match self.order {
            Some(seq) => Some(CircularOrder::new(seq).map_err(|e| GeomError::BadOrder(e.to_string()))?),
            None => None,
        };
        let rat_of = |c: &CoordDoc| match c {
            CoordDoc::Rat(s) => parse_rat(s),
            CoordDoc::Cyclo(_) => Err(bad("expected a rational coordinate")),
        };
        let placement = match self.mode.as_str() {
            "rational" | "cocircular" => {
                let pts = self.points.iter().map(|p| Ok(Point::new(rat_of(&p.x)?, rat_of(&p.y)?))).collect::<Result<
                    Vec<_>,
                    GeomError,
                >>(
                )?;
                check_distinct(&pts)?;
                let mode = if self.mode == "rational" {
                    PlacementMode::RationalPlane
                } else {
                    let params = self
                        .params
                        .ok_or_else(|| bad("cocircular placement without params"))?
                        .iter()
                        .map(|s| parse_rat(s))
                        .collect::<Result<Vec<_>, _>>()?;
                    if params.len() != self.n || params.iter().zip(&pts).any(|(t, p)| circle_point(t) != *p) {
                        return Err(bad("params do not match points"));
                    }
                    PlacementMode::RationalCocircular { params }
                };
                Placement { mode, coords: Coords::Rational(pts), order }
            }
            "regular" => {
                let m = self.m.ok_or_else(|| bad("regular placement without m"))?;
                let cyc = |c: &CoordDoc| -> Result<CycloReal, GeomError> {
                    match c {
                        CoordDoc::Cyclo(d) => {
                            let den: i128 = d.den.parse().map_err(|_| bad("bad denominator"))?;
                            let num = d
                                .num
                                .iter()
                                .map(|s| s.parse::<i128>().map_err(|_| bad("bad coefficient")))
                                .collect::<Result<Vec<_>, _>>()?;
                            CycloReal::from_parts(m, num, den)
                        }
                        CoordDoc::Rat(_) => Err(bad("expected a cyclotomic coordinate")),
                    }
                };
                let pts = self
                    .points
                    .iter()
                    .map(|p| Ok(Point::new(cyc(&p.x)?, cyc(&p.y)?)))
                    .collect::<Result<Vec<_>, GeomError>>()?;
                check_distinct(&pts)?;
                Placement { mode: PlacementMode::RegularNGon { m }, coords: Coords::Cyclo(pts), order }
            }
            other => return Err(bad(&format!("unknown mode `{other}`"))),
        };
        Ok(placement)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{int, rat, Scalar};

    #[test]
    fn circle_points() {
        assert_eq!(circle_point(&int(0)), Point::new(int(1), int(0)));
        assert_eq!(circle_point(&int(1)), Point::new(int(0), int(1)));
        for t in [rat(3, 7), rat(-22, 5), rat(1, 1000)] {
            let p = circle_point(&t);
            assert_eq!(&p.x * &p.x + &p.y * &p.y, int(1));
        }
    }

    #[test]
    fn cocircular_orientation_matches_order() {
        for n in 3..=8usize {
            let order = CircularOrder::identity(n);
            let pl = cocircular_placement(&order, false, 1).unwrap();
            let pts = pl.rational_points().unwrap();
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if a == b || b == c || a == c {
                            continue;
                        }
                        // Clockwise positions a -> b -> c means orientation -1.
                        let cw = (b + n - a) % n < (c + n - a) % n;
                        let o = orientation(&pts[a], &pts[b], &pts[c]);
                        assert_eq!(o, if cw { -1 } else { 1 });
                    }
                }
            }
        }
    }

    #[test]
    fn generic_hexagon_and_determinism() {
        let order = CircularOrder::new(vec![0, 3, 1, 4, 2, 5]).unwrap();
        let a = cocircular_placement(&order, true, 9).unwrap();
        let b = cocircular_placement(&order, true, 9).unwrap();
        assert_eq!(a, b);
        assert!(chords_generic(a.rational_points().unwrap()));
    }

    #[test]
    fn regular_polygon_facts() {
        let pl = regular_placement(&CircularOrder::identity(4)).unwrap();
        let Coords::Cyclo(p) = &pl.coords else { panic!() };
        for q in p {
            let x = q.x.as_rational().unwrap();
            let y = q.y.as_rational().unwrap();
            assert!([int(0), int(1), int(-1)].contains(&x) && [int(0), int(1), int(-1)].contains(&y));
        }
        // Clockwise: vertex 1 at (0, -1).
        assert_eq!(p[1].y.as_rational(), Some(int(-1)));
        let pl = regular_placement(&CircularOrder::identity(6)).unwrap();
        let Coords::Cyclo(p) = &pl.coords else { panic!() };
        for k in 0..3 {
            assert!(p[k].x.plus(&p[k + 3].x).is_zero() && p[k].y.plus(&p[k + 3].y).is_zero());
        }
        assert_eq!(orientation(&p[0], &p[1], &p[2]), -1);
    }

    #[test]
    fn json_round_trip() {
        let order = CircularOrder::new(vec![2, 0, 4, 1, 3]).unwrap();
        for pl in [
            regular_placement(&order).unwrap(),
            cocircular_placement(&order, true, 3).unwrap(),
            Placement::rational(vec![Point::new(rat(1, 3), int(0)), Point::new(int(2), rat(-7, 2))]).unwrap(),
        ] {
            let text = pl.to_json_string();
            let back = Placement::from_json_str(&text).unwrap();
            assert_eq!(back, pl);
            assert_eq!(back.to_json_string(), text);
        }
        assert!(Placement::from_json_str("{\"mode\":\"x\",\"n\":0,\"points\":[]}").is_err());
    }
}
