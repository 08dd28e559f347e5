use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::primitive::{
    circle_meets_open_disc, cross, dist2, dot, lerp, segment_circle_roots,
    segment_crossing, OpenDisc, Primitive, SegmentCircleRoots,
};
use super::set::{PlaneSet, SpectralRegion};
use crate::error::{Error, Result};
use crate::scalar::{rational_sqrt, ExactScalar};

/// Result of a set difference: exact when expressible with closed pieces
/// and open disks, otherwise kept symbolic for membership and emptiness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RegionDifference {
    Exact(PlaneSet),
    Symbolic { minuend: SpectralRegion, subtrahend: SpectralRegion },
}

impl RegionDifference {
    pub fn contains(&self, z: &ExactScalar) -> bool {
        match self {
            RegionDifference::Exact(s) => s.contains(z),
            RegionDifference::Symbolic { minuend, subtrahend } => {
                minuend.contains(z) && !subtrahend.contains(z)
            }
        }
    }

    /// Symbolic values are only produced for nonempty differences.
    pub fn is_empty(&self) -> bool {
        match self {
            RegionDifference::Exact(s) => s.is_empty(),
            RegionDifference::Symbolic { .. } => false,
        }
    }

    pub fn is_closed(&self) -> bool {
        matches!(self, RegionDifference::Exact(s) if s.is_closed())
    }

    /// The difference as a compact region, when it is one.
    pub fn as_region(&self) -> Option<&SpectralRegion> {
        match self {
            RegionDifference::Exact(s) if s.is_closed() => Some(&s.closed),
            _ => None,
        }
    }
}

pub fn union(a: &SpectralRegion, b: &SpectralRegion) -> Result<SpectralRegion> {
    if a.is_empty() {
        return Ok(b.clone());
    }
    if b.is_empty() {
        return Ok(a.clone());
    }
    let mut ps = a.primitives().to_vec();
    ps.extend_from_slice(b.primitives());
    SpectralRegion::canonicalize(ps)
}

pub fn union_all<'a, I: IntoIterator<Item = &'a SpectralRegion>>(regions: I) -> Result<SpectralRegion> {
    let ps: Vec<Primitive> = regions.into_iter().flat_map(|r| r.primitives().to_vec()).collect();
    SpectralRegion::canonicalize(ps)
}

pub fn subset(a: &SpectralRegion, b: &SpectralRegion) -> Result<bool> {
    a.subset(b)
}

/// Perfect part: points are the only isolated primitives.
pub fn accumulation(r: &SpectralRegion) -> SpectralRegion {
    let ps: Vec<Primitive> = r.primitives().iter().filter(|p| !p.is_point()).cloned().collect();
    SpectralRegion::canonicalize(ps).expect("a subfamily of a canonical family stays decidable")
}

pub fn isolated_points(r: &SpectralRegion) -> SpectralRegion {
    SpectralRegion::from_points(r.points())
}

fn disks(r: &SpectralRegion) -> Vec<OpenDisc> {
    r.primitives()
        .iter()
        .filter_map(|p| match p {
            Primitive::Disk { center, radius } => Some(OpenDisc { center: center.clone(), radius: radius.clone() }),
            _ => None,
        })
        .collect()
}

/// Disks may touch but not overlap; otherwise the boundary contains arcs.
fn require_separated_disks(ds: &[OpenDisc]) -> Result<()> {
    for (i, a) in ds.iter().enumerate() {
        for b in &ds[i + 1..] {
            if a.meets_open(b) {
                return Err(Error::unsupported(format!(
                    "overlapping disks {} and {}",
                    a.closure(),
                    b.closure()
                )));
            }
        }
    }
    Ok(())
}

/// Interior in the plane: the union of the open disks.
pub fn interior(r: &SpectralRegion) -> Result<PlaneSet> {
    let ds = disks(r);
    require_separated_disks(&ds)?;
    Ok(PlaneSet::open_discs(ds))
}

/// Topological boundary.
pub fn boundary(r: &SpectralRegion) -> Result<SpectralRegion> {
    let ds = disks(r);
    require_separated_disks(&ds)?;
    let mut out = Vec::new();
    for p in r.primitives() {
        match p {
            Primitive::Point(_) => out.push(p.clone()),
            Primitive::Segment(a, b) => out.extend(clip_segment(a, b, &ds)?),
            Primitive::Circle { center, radius } | Primitive::Disk { center, radius } => {
                for d in &ds {
                    if d.center == *center && d.radius == *radius {
                        continue;
                    }
                    if circle_meets_open_disc(&dist2(center, &d.center), radius, &d.radius) {
                        return Err(Error::unsupported(format!(
                            "circle C({center}, {radius}) crosses disk {}",
                            d.closure()
                        )));
                    }
                }
                out.push(Primitive::Circle { center: center.clone(), radius: radius.clone() });
            }
        }
    }
    SpectralRegion::canonicalize(out)
}

/// `[a, b]` minus the open disks, as closed pieces.
fn clip_segment(a: &ExactScalar, b: &ExactScalar, ds: &[OpenDisc]) -> Result<Vec<Primitive>> {
    let mut cuts: Vec<(BigRational, BigRational)> = Vec::new();
    for d in ds {
        if !d.meets(&Primitive::Segment(a.clone(), b.clone())) {
            continue;
        }
        match segment_circle_roots(a, b, &d.center, &d.radius) {
            SegmentCircleRoots::Rational(t1, t2) => cuts.push((t1, t2)),
            _ => {
                return Err(Error::unsupported(format!(
                    "segment [{a}, {b}] meets disk {} at irrational points",
                    d.closure()
                )))
            }
        }
    }
    cuts.sort();
    let mut pieces = Vec::new();
    let mut start = BigRational::zero();
    let one = BigRational::one();
    for (lo, hi) in cuts {
        if lo >= start {
            let end = lo.clone().min(one.clone());
            if end >= start {
                pieces.push((start.clone(), end));
            }
        }
        if hi > start {
            start = hi;
        }
    }
    if start <= one {
        pieces.push((start, one));
    }
    Ok(pieces
        .into_iter()
        .map(|(s, e)| {
            let (p, q) = (lerp(a, b, &s), lerp(a, b, &e));
            if p == q {
                Primitive::Point(p)
            } else {
                Primitive::segment(p, q).expect("distinct endpoints")
            }
        })
        .collect())
}

pub fn difference(a: &SpectralRegion, b: &SpectralRegion) -> Result<RegionDifference> {
    let cover = b.as_plane_set();
    let mut kept = Vec::new();
    let mut open = Vec::new();
    let mut symbolic = false;
    for p in a.primitives() {
        if cover.covers(p)? {
            continue;
        }
        if !b.primitives().iter().any(|q| q.meets(p)) {
            kept.push(p.clone());
            continue;
        }
        if let Primitive::Disk { center, radius } = p {
            let disc = OpenDisc { center: center.clone(), radius: radius.clone() };
            if cover.covers(&disc.boundary())? && !b.primitives().iter().any(|q| disc.meets(q)) {
                open.push(disc);
                continue;
            }
        }
        symbolic = true;
    }
    if symbolic {
        return Ok(RegionDifference::Symbolic { minuend: a.clone(), subtrahend: b.clone() });
    }
    let mut open = open;
    open.sort();
    Ok(RegionDifference::Exact(PlaneSet { closed: SpectralRegion::canonicalize(kept)?, open }))
}

pub fn intersection(a: &SpectralRegion, b: &SpectralRegion) -> Result<SpectralRegion> {
    let mut out = Vec::new();
    for p in a.primitives() {
        for q in b.primitives() {
            out.extend(intersection_pair(p, q)?);
        }
    }
    SpectralRegion::canonicalize(out)
}

/// Exact pairwise relation between two primitives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Relation {
    Equal,
    /// First inside second.
    Inside,
    /// Second inside first.
    Contains,
    Disjoint,
    /// Finitely many common points, all rational.
    MeetAtPoints(Vec<ExactScalar>),
    /// Common part is a segment, an arc or a lens.
    Overlap,
}

pub fn classify_pair(p: &Primitive, q: &Primitive) -> Relation {
    if p == q {
        return Relation::Equal;
    }
    if p.is_within(q) {
        return Relation::Inside;
    }
    if q.is_within(p) {
        return Relation::Contains;
    }
    if !p.meets(q) {
        return Relation::Disjoint;
    }
    match intersection_pair(p, q) {
        Ok(pieces) if pieces.iter().all(Primitive::is_point) => Relation::MeetAtPoints(
            pieces
                .into_iter()
                .filter_map(|x| match x {
                    Primitive::Point(z) => Some(z),
                    _ => None,
                })
                .collect(),
        ),
        _ => Relation::Overlap,
    }
}

fn two() -> BigRational {
    BigRational::from_integer(BigInt::from(2))
}

pub(crate) fn intersection_pair(p: &Primitive, q: &Primitive) -> Result<Vec<Primitive>> {
    use Primitive::*;
    if p.is_within(q) {
        return Ok(vec![p.clone()]);
    }
    if q.is_within(p) {
        return Ok(vec![q.clone()]);
    }
    if !p.meets(q) {
        return Ok(Vec::new());
    }
    let unsupported = || Error::unsupported(format!("intersection of {p} and {q} is not a finite union of primitives"));
    match (p, q) {
        (Segment(a, b), Segment(c, d)) => {
            let dir = b - a;
            if cross(&dir, &(c - a)).is_zero() && cross(&dir, &(d - a)).is_zero() {
                let mut ends = [a.clone(), b.clone(), c.clone(), d.clone()];
                ends.sort_by(|x, y| dot(&(x - a), &dir).cmp(&dot(&(y - a), &dir)));
                let (s, e) = (ends[1].clone(), ends[2].clone());
                Ok(vec![if s == e { Point(s) } else { Primitive::segment(s, e)? }])
            } else {
                Ok(segment_crossing(a, b, c, d).map(Point).into_iter().collect())
            }
        }
        (Segment(a, b), Circle { center, radius }) | (Circle { center, radius }, Segment(a, b)) => {
            match segment_circle_roots(a, b, center, radius) {
                SegmentCircleRoots::Rational(t1, t2) => {
                    let unit = BigRational::zero()..=BigRational::one();
                    Ok([t1, t2]
                        .into_iter()
                        .filter(|t| unit.contains(t))
                        .map(|t| Point(lerp(a, b, &t)))
                        .collect())
                }
                SegmentCircleRoots::None => Ok(Vec::new()),
                SegmentCircleRoots::Irrational => Err(unsupported()),
            }
        }
        (Segment(a, b), Disk { center, radius }) | (Disk { center, radius }, Segment(a, b)) => {
            match segment_circle_roots(a, b, center, radius) {
                SegmentCircleRoots::Rational(t1, t2) => {
                    let s = t1.max(BigRational::zero());
                    let e = t2.min(BigRational::one());
                    let (x, y) = (lerp(a, b, &s), lerp(a, b, &e));
                    Ok(vec![if x == y { Point(x) } else { Primitive::segment(x, y)? }])
                }
                SegmentCircleRoots::None => Ok(Vec::new()),
                SegmentCircleRoots::Irrational => Err(unsupported()),
            }
        }
        (Circle { center: c1, radius: r1 }, Circle { center: c2, radius: r2 }) => {
            circle_circle_points(c1, r1, c2, r2).map(|v| v.into_iter().map(Point).collect()).ok_or_else(unsupported)
        }
        (Circle { center: c1, radius: r1 }, Disk { center: c2, radius: r2 })
        | (Disk { center: c2, radius: r2 }, Circle { center: c1, radius: r1 })
        | (Disk { center: c1, radius: r1 }, Disk { center: c2, radius: r2 }) => {
            // Only tangency leaves a finite intersection; anything else is an arc or a lens.
            let d2 = dist2(c1, c2);
            let tangent = d2 == (r1 + r2) * (r1 + r2) || (d2 == (r1 - r2) * (r1 - r2) && r1 > r2);
            if tangent {
                Ok(circle_circle_points(c1, r1, c2, r2).unwrap_or_default().into_iter().map(Point).collect())
            } else {
                Err(unsupported())
            }
        }
        _ => unreachable!("point cases are settled by containment"),
    }
}

/// Intersection points of two distinct circles, when rational.
pub(crate) fn circle_circle_points(
    c1: &ExactScalar,
    r1: &BigRational,
    c2: &ExactScalar,
    r2: &BigRational,
) -> Option<Vec<ExactScalar>> {
    let d2 = dist2(c1, c2);
    if d2.is_zero() {
        return Some(Vec::new());
    }
    // Foot of the radical line at c1 + s·(c2 − c1), offset h·(c2 − c1)^⊥.
    let s = (&d2 + r1 * r1 - r2 * r2) / (two() * &d2);
    let h2 = r1 * r1 / &d2 - &s * &s;
    if h2.is_negative() {
        return Some(Vec::new());
    }
    let dir = c2 - c1;
    let foot = lerp(c1, c2, &s);
    if h2.is_zero() {
        return Some(vec![foot]);
    }
    let h = rational_sqrt(&h2)?;
    let perp = ExactScalar::new(-dir.im().clone(), dir.re().clone()).scale(&h);
    Some(vec![&foot + &perp, &foot - &perp])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    fn z(re: i64, im: i64) -> ExactScalar {
        ExactScalar::gaussian(re, im)
    }
    fn disk(c: ExactScalar, r: i64) -> Primitive {
        Primitive::disk(c, rational(r, 1)).unwrap()
    }
    fn circle(c: ExactScalar, r: i64) -> Primitive {
        Primitive::circle(c, rational(r, 1)).unwrap()
    }
    fn region(ps: Vec<Primitive>) -> SpectralRegion {
        SpectralRegion::canonicalize(ps).unwrap()
    }

    #[test]
    fn boundary_examples() {
        let d = region(vec![disk(z(0, 0), 1)]);
        assert_eq!(boundary(&d).unwrap(), region(vec![circle(z(0, 0), 1)]));
        let c = region(vec![circle(z(0, 0), 1)]);
        assert_eq!(boundary(&c).unwrap(), c);
        let mixed = region(vec![Primitive::Point(z(5, 0)), disk(z(0, 0), 1)]);
        assert_eq!(
            boundary(&mixed).unwrap(),
            region(vec![Primitive::Point(z(5, 0)), circle(z(0, 0), 1)])
        );
    }

    #[test]
    fn boundary_clips_segments_through_disks() {
        let r = region(vec![disk(z(0, 0), 1), Primitive::segment(z(0, 0), z(3, 0)).unwrap()]);
        let expected = region(vec![circle(z(0, 0), 1), Primitive::segment(z(1, 0), z(3, 0)).unwrap()]);
        assert_eq!(boundary(&r).unwrap(), expected);
        let overlapping = region(vec![disk(z(0, 0), 1), disk(z(1, 0), 1)]);
        assert!(matches!(boundary(&overlapping), Err(Error::UnsupportedConfiguration(_))));
    }

    #[test]
    fn interior_examples() {
        assert!(interior(&region(vec![circle(z(0, 0), 1)])).unwrap().is_empty());
        let i = interior(&region(vec![disk(z(0, 0), 1)])).unwrap();
        assert!(i.is_open() && i.contains(&z(0, 0)) && !i.contains(&z(1, 0)));
        assert!(interior(&SpectralRegion::from_points([z(0, 0), z(1, 1)])).unwrap().is_empty());
    }

    #[test]
    fn accumulation_and_isolated() {
        let pts = SpectralRegion::from_points([z(0, 0), z(1, 0)]);
        assert!(accumulation(&pts).is_empty());
        assert_eq!(isolated_points(&pts), pts);
        let c = region(vec![circle(z(0, 0), 1)]);
        assert_eq!(accumulation(&c), c);
        let mixed = region(vec![Primitive::Point(z(3, 0)), disk(z(0, 0), 1)]);
        assert_eq!(accumulation(&mixed), region(vec![disk(z(0, 0), 1)]));
        assert!(isolated_points(&region(vec![disk(z(0, 0), 1)])).is_empty());
        let pc = region(vec![Primitive::Point(z(3, 0)), circle(z(0, 0), 1)]);
        assert_eq!(isolated_points(&pc), SpectralRegion::from_points([z(3, 0)]));
    }

    #[test]
    fn union_examples() {
        let c = region(vec![circle(z(0, 0), 1)]);
        let d = region(vec![disk(z(0, 0), 1)]);
        assert_eq!(union(&SpectralRegion::empty(), &c).unwrap(), c);
        assert_eq!(union(&c, &d).unwrap(), d);
        let two_pts = union(&SpectralRegion::from_points([z(0, 0)]), &SpectralRegion::from_points([z(1, 0)])).unwrap();
        assert_eq!(two_pts.primitives().len(), 2);
    }

    #[test]
    fn difference_examples() {
        let c = region(vec![circle(z(0, 0), 1)]);
        let d = region(vec![disk(z(0, 0), 1)]);
        let open = difference(&d, &c).unwrap();
        assert!(!open.is_closed() && !open.is_empty());
        assert!(open.contains(&z(0, 0)) && !open.contains(&z(1, 0)));
        match &open {
            RegionDifference::Exact(s) => assert_eq!(s.open.len(), 1),
            other => panic!("expected an open disk, got {other:?}"),
        }
        let pts = difference(&SpectralRegion::from_points([z(0, 0), z(1, 0)]), &SpectralRegion::from_points([z(1, 0)]))
            .unwrap();
        assert_eq!(pts.as_region(), Some(&SpectralRegion::from_points([z(0, 0)])));
        assert!(difference(&c, &d).unwrap().is_empty());
        let punctured = difference(&c, &SpectralRegion::from_points([z(1, 0)])).unwrap();
        assert!(matches!(punctured, RegionDifference::Symbolic { .. }));
        assert!(!punctured.contains(&z(1, 0)) && punctured.contains(&z(-1, 0)));
    }

    #[test]
    fn pair_relations() {
        assert_eq!(classify_pair(&circle(z(0, 0), 1), &disk(z(0, 0), 1)), Relation::Inside);
        assert_eq!(classify_pair(&disk(z(0, 0), 1), &disk(z(3, 0), 1)), Relation::Disjoint);
        assert_eq!(
            classify_pair(&circle(z(0, 0), 1), &circle(z(2, 0), 1)),
            Relation::MeetAtPoints(vec![z(1, 0)])
        );
        assert_eq!(classify_pair(&disk(z(0, 0), 2), &disk(z(1, 0), 2)), Relation::Overlap);
    }

    #[test]
    fn intersection_examples() {
        let c = region(vec![circle(z(0, 0), 5)]);
        let c2 = region(vec![circle(z(6, 0), 5)]);
        // Circles of radius 5 at distance 6 meet at (3, ±4).
        assert_eq!(intersection(&c, &c2).unwrap(), SpectralRegion::from_points([z(3, 4), z(3, -4)]));
        let seg = region(vec![Primitive::segment(z(-10, 0), z(10, 0)).unwrap()]);
        let d = region(vec![disk(z(0, 0), 5)]);
        assert_eq!(
            intersection(&seg, &d).unwrap(),
            region(vec![Primitive::segment(z(-5, 0), z(5, 0)).unwrap()])
        );
        assert_eq!(intersection(&seg, &c).unwrap(), SpectralRegion::from_points([z(-5, 0), z(5, 0)]));
        let tangent = region(vec![disk(z(10, 0), 5)]);
        assert_eq!(intersection(&d, &tangent).unwrap(), SpectralRegion::from_points([z(5, 0)]));
        let lens = region(vec![disk(z(6, 0), 5)]);
        assert!(intersection(&d, &lens).is_err());
    }
}
