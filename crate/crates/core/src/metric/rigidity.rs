//! Exact rigidity of finite planar point sets.
//!
//! A set `K` is rigid when no three spheres `S(x, r_x)`, `S(y, r_y)`,
//! `S(z, r_z)` centered at distinct points of `K`, with radii in the distance
//! set `d(K×K)`, share a point outside `K`. Everything here works with
//! squared radii over exact rationals; irrational common points are kept as
//! elements of `Q(√d)`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Point = (BigRational, BigRational);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<[String; 2]>", into = "Vec<[String; 2]>")]
pub struct PlanarPointSet {
    points: Vec<Point>,
}

impl TryFrom<Vec<[String; 2]>> for PlanarPointSet {
    type Error = Error;

    fn try_from(raw: Vec<[String; 2]>) -> Result<Self> {
        let points = raw
            .iter()
            .map(|[x, y]| Ok((parse_rational(x)?, parse_rational(y)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(points)
    }
}

impl From<PlanarPointSet> for Vec<[String; 2]> {
    fn from(k: PlanarPointSet) -> Self {
        k.points
            .iter()
            .map(|(x, y)| [x.to_string(), y.to_string()])
            .collect()
    }
}

/// Rationals as `"p/q"` strings.
mod rational_str {
    use super::*;

    pub fn serialize<S: Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(q)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<BigRational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

mod point_str {
    use super::*;

    pub fn serialize<S: Serializer>(p: &Point, s: S) -> std::result::Result<S::Ok, S::Error> {
        [p.0.to_string(), p.1.to_string()].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Point, D::Error> {
        let [x, y] = <[String; 2]>::deserialize(d)?;
        let parse = |t: &str| parse_rational(t).map_err(serde::de::Error::custom);
        Ok((parse(&x)?, parse(&y)?))
    }
}

mod triple_str {
    use super::*;

    pub fn serialize<S: Serializer>(
        r: &[BigRational; 3],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        r.each_ref().map(|q| q.to_string()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<[BigRational; 3], D::Error> {
        let [a, b, c] = <[String; 3]>::deserialize(d)?;
        let parse = |t: &str| parse_rational(t).map_err(serde::de::Error::custom);
        Ok([parse(&a)?, parse(&b)?, parse(&c)?])
    }
}

impl PlanarPointSet {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        for (i, p) in points.iter().enumerate() {
            if points[..i].contains(p) {
                return Err(Error::DuplicatePoint(format!("{} {}", p.0, p.1)));
            }
        }
        Ok(Self { points })
    }

    /// Convenience constructor from integer coordinates.
    pub fn from_integers(points: &[(i64, i64)]) -> Result<Self> {
        Self::new(points.iter().map(|&(x, y)| (int(x), int(y))).collect())
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Sorted distinct squared distances, 0 included.
    pub fn squared_distances(&self) -> Vec<BigRational> {
        let mut d: Vec<BigRational> = Vec::new();
        for p in &self.points {
            for q in &self.points {
                d.push(sq_dist(p, q));
            }
        }
        d.sort();
        d.dedup();
        d
    }
}

fn int(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn sq_dist(p: &Point, q: &Point) -> BigRational {
    let dx = &p.0 - &q.0;
    let dy = &p.1 - &q.1;
    &dx * &dx + &dy * &dy
}

fn parse_rational(token: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("not a rational number: {token:?}"));
    let (num, den) = match token.split_once('/') {
        Some((n, d)) => (n, d),
        None => (token, "1"),
    };
    let num: BigInt = num.trim().parse().map_err(|_| bad())?;
    let den: BigInt = den.trim().parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// Parses one `x y` pair per line; `x` and `y` are integers or `p/q`. Blank
/// lines and `#` comments are skipped.
pub fn parse_planar_points(text: &str) -> Result<PlanarPointSet> {
    let mut points = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::Parse(format!(
                "line {}: expected two coordinates, got {:?}",
                no + 1,
                line
            )));
        }
        points.push((parse_rational(fields[0])?, parse_rational(fields[1])?));
    }
    PlanarPointSet::new(points)
}

/// `rational + coeff·√radicand` with a radicand that is not a rational
/// square.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticCoord {
    #[serde(with = "rational_str")]
    pub rational: BigRational,
    #[serde(with = "rational_str")]
    pub coeff: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessPoint {
    Rational(#[serde(with = "point_str")] Point),
    /// A point with coordinates in `Q(√radicand)`, not both rational.
    Quadratic {
        x: QuadraticCoord,
        y: QuadraticCoord,
        #[serde(with = "rational_str")]
        radicand: BigRational,
    },
}

impl fmt::Display for WitnessPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessPoint::Rational((x, y)) => write!(f, "({x}, {y})"),
            WitnessPoint::Quadratic { x, y, radicand } => write!(
                f,
                "({} + {}·√{radicand}, {} + {}·√{radicand})",
                x.rational, x.coeff, y.rational, y.coeff
            ),
        }
    }
}

/// Three points of `K`, their squared radii and a common point outside `K`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub triple: [usize; 3],
    #[serde(with = "triple_str")]
    pub squared_radii: [BigRational; 3],
    pub point: WitnessPoint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RigidityVerdict {
    pub rigid: bool,
    pub witness: Option<Witness>,
}

fn perfect_square(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (q.numer(), q.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d).then(|| BigRational::new(rn, rd))
}

/// Common points of the three circles, or `None` when they share none.
fn common_points(centers: [&Point; 3], radii: [&BigRational; 3]) -> Vec<WitnessPoint> {
    let [c0, c1, c2] = centers;
    let norm = |p: &Point| &p.0 * &p.0 + &p.1 * &p.1;
    let two = int(2);
    // subtracting circle 0 from circles 1 and 2 leaves a*X + b*Y = c
    let line = |c: &Point, r: &BigRational| {
        let a = &two * (&c.0 - &c0.0);
        let b = &two * (&c.1 - &c0.1);
        let rhs = radii[0] - r + norm(c) - norm(c0);
        (a, b, rhs)
    };
    let (a1, b1, r1) = line(c1, radii[1]);
    let (a2, b2, r2) = line(c2, radii[2]);
    let on_circle0 = |x: &BigRational, y: &BigRational| {
        let dx = x - &c0.0;
        let dy = y - &c0.1;
        &dx * &dx + &dy * &dy == *radii[0]
    };
    let det = &a1 * &b2 - &a2 * &b1;
    if !det.is_zero() {
        let x = (&r1 * &b2 - &r2 * &b1) / &det;
        let y = (&a1 * &r2 - &a2 * &r1) / &det;
        return if on_circle0(&x, &y) {
            vec![WitnessPoint::Rational((x, y))]
        } else {
            Vec::new()
        };
    }
    // collinear centers: the lines are parallel; they must coincide
    if &a1 * &r2 != &a2 * &r1 || &b1 * &r2 != &b2 * &r1 {
        return Vec::new();
    }
    // line a1 X + b1 Y = r1 as p0 + t·dir
    let nn = &a1 * &a1 + &b1 * &b1;
    let p0 = (&a1 * &r1 / &nn, &b1 * &r1 / &nn);
    let dir = (-b1.clone(), a1.clone());
    let off = (&p0.0 - &c0.0, &p0.1 - &c0.1);
    let qa = &dir.0 * &dir.0 + &dir.1 * &dir.1;
    let qb = &dir.0 * &off.0 + &dir.1 * &off.1;
    let qc = &off.0 * &off.0 + &off.1 * &off.1 - radii[0];
    let disc = &qb * &qb - &qa * &qc;
    if disc.is_negative() {
        return Vec::new();
    }
    let at = |t: &BigRational| (&p0.0 + t * &dir.0, &p0.1 + t * &dir.1);
    let base = -&qb / &qa;
    if disc.is_zero() {
        return vec![WitnessPoint::Rational(at(&base))];
    }
    match perfect_square(&disc) {
        Some(root) => {
            let step = &root / &qa;
            vec![
                WitnessPoint::Rational(at(&(&base + &step))),
                WitnessPoint::Rational(at(&(&base - &step))),
            ]
        }
        None => {
            let mid = at(&base);
            [int(1), int(-1)]
                .into_iter()
                .map(|sign| {
                    let coeff = |d: &BigRational| &sign * d / &qa;
                    WitnessPoint::Quadratic {
                        x: QuadraticCoord {
                            rational: mid.0.clone(),
                            coeff: coeff(&dir.0),
                        },
                        y: QuadraticCoord {
                            rational: mid.1.clone(),
                            coeff: coeff(&dir.1),
                        },
                        radicand: disc.clone(),
                    }
                })
                .collect()
        }
    }
}

fn outside(k: &PlanarPointSet, p: &WitnessPoint) -> bool {
    match p {
        WitnessPoint::Rational(q) => !k.points.contains(q),
        // an irrational coordinate never matches a rational point
        WitnessPoint::Quadratic { .. } => true,
    }
}

/// Searches triples in index order and radius triples in increasing
/// lexicographic order of squared radii; returns the first witness.
pub fn rigidity_check(k: &PlanarPointSet) -> Result<RigidityVerdict> {
    let m = k.len();
    if m < 3 {
        return Err(Error::TooFewPoints(m));
    }
    let radii = k.squared_distances();
    for i in 0..m {
        for j in i + 1..m {
            for l in j + 1..m {
                let centers = [&k.points[i], &k.points[j], &k.points[l]];
                for ri in &radii {
                    for rj in &radii {
                        for rl in &radii {
                            let found = common_points(centers, [ri, rj, rl])
                                .into_iter()
                                .find(|p| outside(k, p));
                            if let Some(point) = found {
                                return Ok(RigidityVerdict {
                                    rigid: false,
                                    witness: Some(Witness {
                                        triple: [i, j, l],
                                        squared_radii: [ri.clone(), rj.clone(), rl.clone()],
                                        point,
                                    }),
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(RigidityVerdict {
        rigid: true,
        witness: None,
    })
}

/// Re-checks a witness: distinct indices, radii from the distance set, the
/// point on all three spheres and outside `K`.
pub fn verify_witness(k: &PlanarPointSet, w: &Witness) -> bool {
    let [i, j, l] = w.triple;
    if i >= k.len() || j >= k.len() || l >= k.len() || i == j || j == l || i == l {
        return false;
    }
    let dist = k.squared_distances();
    if !w.squared_radii.iter().all(|r| dist.contains(r)) {
        return false;
    }
    if !outside(k, &w.point) {
        return false;
    }
    w.triple.iter().zip(&w.squared_radii).all(|(&c, r)| {
        let (cx, cy) = &k.points[c];
        match &w.point {
            WitnessPoint::Rational((x, y)) => {
                let dx = x - cx;
                let dy = y - cy;
                &dx * &dx + &dy * &dy == *r
            }
            WitnessPoint::Quadratic { x, y, radicand } => {
                if perfect_square(radicand).is_some() || radicand.is_negative() {
                    return false;
                }
                if x.coeff.is_zero() && y.coeff.is_zero() {
                    return false;
                }
                // (A + B√d)² + (C + E√d)² = r  iff  A²+B²d+C²+E²d = r and AB+CE = 0
                let a = &x.rational - cx;
                let c = &y.rational - cy;
                let rational = &a * &a
                    + &x.coeff * &x.coeff * radicand
                    + &c * &c
                    + &y.coeff * &y.coeff * radicand;
                let irrational = &a * &x.coeff + &c * &y.coeff;
                rational == *r && irrational.is_zero()
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(p: &[(i64, i64)]) -> PlanarPointSet {
        PlanarPointSet::from_integers(p).unwrap()
    }

    #[test]
    fn reflected_vertex_is_a_witness() {
        let k = set(&[(0, 0), (2, 0), (1, 1)]);
        let v = rigidity_check(&k).unwrap();
        assert!(!v.rigid);
        let w = v.witness.unwrap();
        assert!(verify_witness(&k, &w));
        assert_eq!(w.point, WitnessPoint::Rational((int(1), int(-1))));
        assert_eq!(w.squared_radii, [int(2), int(2), int(4)]);
    }

    #[test]
    fn collinear_triple_is_rigid() {
        assert!(
            rigidity_check(&set(&[(0, 0), (1, 0), (2, 0)]))
                .unwrap()
                .rigid
        );
    }

    #[test]
    fn irrational_witness_on_collinear_centers() {
        // collinear centers, so common points are mirror pairs off the line
        let k = set(&[(0, 0), (1, 0), (3, 0), (7, 0)]);
        let v = rigidity_check(&k).unwrap();
        let w = v.witness.expect("not rigid");
        assert!(verify_witness(&k, &w));
    }

    #[test]
    fn tampered_witness_fails() {
        let k = set(&[(0, 0), (2, 0), (1, 1)]);
        let mut w = rigidity_check(&k).unwrap().witness.unwrap();
        w.point = WitnessPoint::Rational((int(1), int(-2)));
        assert!(!verify_witness(&k, &w));
        let mut w2 = rigidity_check(&k).unwrap().witness.unwrap();
        w2.point = WitnessPoint::Rational((int(1), int(1)));
        assert!(!verify_witness(&k, &w2));
    }

    #[test]
    fn witness_json_round_trip() {
        for k in [
            set(&[(0, 0), (2, 0), (1, 1)]),
            set(&[(0, 0), (1, 0), (3, 0), (7, 0)]),
        ] {
            let w = rigidity_check(&k).unwrap().witness.unwrap();
            let back: Witness = serde_json::from_str(&serde_json::to_string(&w).unwrap()).unwrap();
            assert_eq!(back, w);
            let kb: PlanarPointSet =
                serde_json::from_str(&serde_json::to_string(&k).unwrap()).unwrap();
            assert_eq!(kb, k);
        }
    }

    #[test]
    fn parsing() {
        let k = parse_planar_points("0 0\n# comment\n1/2 3\n\n-2 4/6\n").unwrap();
        assert_eq!(k.len(), 3);
        assert_eq!(k.points()[1].0, BigRational::new(1.into(), 2.into()));
        assert_eq!(k.points()[2].1, BigRational::new(2.into(), 3.into()));
        assert!(parse_planar_points("0 0 0").is_err());
        assert!(parse_planar_points("0 1/0").is_err());
        assert!(parse_planar_points("0 0\n0 0").is_err());
        assert_eq!(
            rigidity_check(&set(&[(0, 0), (1, 0)])),
            Err(Error::TooFewPoints(2))
        );
    }
}
