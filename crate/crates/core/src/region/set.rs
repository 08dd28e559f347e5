use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::primitive::{
    cross, dist2, dot, grid_samples, lerp, on_segment, segment_circle_roots, OpenDisc, Primitive,
    SegmentCircleRoots,
};
use crate::error::{Error, Result};
use crate::scalar::ExactScalar;

/// Compact subset of the plane: a finite union of primitives in canonical
/// form.
///
/// Canonical form means no retained primitive is covered by the others,
/// collinear overlapping segments are merged, and the list is sorted by the
/// derived order on [`Primitive`]. Two canonical regions are equal as sets
/// exactly when they are structurally equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpectralRegion {
    primitives: Vec<Primitive>,
}

/// Union of a compact region and finitely many open disks. Interiors,
/// holes and differences land here.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PlaneSet {
    pub closed: SpectralRegion,
    pub open: Vec<OpenDisc>,
}

impl SpectralRegion {
    pub fn empty() -> Self {
        SpectralRegion::default()
    }

    pub fn canonicalize(primitives: Vec<Primitive>) -> Result<Self> {
        let mut ps = merge_segments(primitives);
        ps.sort();
        ps.dedup();
        // Single-piece containment first; it is exact and cheap.
        let mut kept: Vec<Primitive> = Vec::with_capacity(ps.len());
        for (i, p) in ps.iter().enumerate() {
            let swallowed = ps.iter().enumerate().any(|(j, q)| {
                j != i && p.is_within(q) && !(q.is_within(p) && j > i)
            });
            if !swallowed {
                kept.push(p.clone());
            }
        }
        // Then coverage by the union of the remaining pieces, in reverse
        // canonical order.
        let mut i = kept.len();
        while i > 0 {
            i -= 1;
            if kept.len() < 2 {
                break;
            }
            let p = kept[i].clone();
            let others: Vec<Primitive> =
                kept.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, q)| q.clone()).collect();
            let cover = PlaneSet { closed: SpectralRegion { primitives: others }, open: Vec::new() };
            if cover.covers(&p)? {
                kept.remove(i);
            }
        }
        kept.sort();
        Ok(SpectralRegion { primitives: kept })
    }

    pub fn from_primitive(p: Primitive) -> Self {
        SpectralRegion { primitives: vec![p] }
    }

    pub fn from_points<I: IntoIterator<Item = ExactScalar>>(points: I) -> Self {
        let mut ps: Vec<Primitive> = points.into_iter().map(Primitive::Point).collect();
        ps.sort();
        ps.dedup();
        SpectralRegion { primitives: ps }
    }

    pub fn primitives(&self) -> &[Primitive] {
        &self.primitives
    }

    /// Always true: values are only built through [`SpectralRegion::canonicalize`].
    pub fn is_canonical(&self) -> bool {
        true
    }

    pub fn is_empty(&self) -> bool {
        self.primitives.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.primitives.iter().all(Primitive::is_point)
    }

    pub fn points(&self) -> Vec<ExactScalar> {
        self.primitives
            .iter()
            .filter_map(|p| match p {
                Primitive::Point(z) => Some(z.clone()),
                _ => None,
            })
            .collect()
    }

    pub fn contains(&self, z: &ExactScalar) -> bool {
        self.primitives.iter().any(|p| p.contains_point(z))
    }

    /// Contained in one straight line. Circles and disks never are.
    pub fn is_line_contained(&self) -> bool {
        let mut pts = Vec::new();
        for p in &self.primitives {
            match p.line_points() {
                Some(v) => pts.extend(v),
                None => return false,
            }
        }
        let Some(base) = pts.first().cloned() else { return true };
        let Some(dir) = pts.iter().find(|p| **p != base).map(|p| p - &base) else { return true };
        pts.iter().all(|p| cross(&dir, &(p - &base)).is_zero())
    }

    pub fn as_plane_set(&self) -> PlaneSet {
        PlaneSet { closed: self.clone(), open: Vec::new() }
    }

    pub fn subset(&self, other: &SpectralRegion) -> Result<bool> {
        other.as_plane_set().contains_region(self)
    }

    pub fn set_eq(&self, other: &SpectralRegion) -> Result<bool> {
        Ok(self == other || (self.subset(other)? && other.subset(self)?))
    }

    /// Bounding box of all primitives, if nonempty.
    pub fn bounds(&self) -> Option<(BigRational, BigRational, BigRational, BigRational)> {
        let mut it = self.primitives.iter().map(Primitive::bounds);
        let first = it.next()?;
        Some(it.fold(first, |(a, b, c, d), (e, f, g, h)| (a.min(e), b.min(f), c.max(g), d.max(h))))
    }
}

impl fmt::Display for SpectralRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.primitives.is_empty() {
            return write!(f, "∅");
        }
        let parts: Vec<String> = self.primitives.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(" ∪ "))
    }
}

impl fmt::Display for Primitive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Primitive::Point(z) => write!(f, "{{{z}}}"),
            Primitive::Segment(a, b) => write!(f, "[{a}, {b}]"),
            Primitive::Circle { center, radius } => write!(f, "C({center}, {radius})"),
            Primitive::Disk { center, radius } => write!(f, "D({center}, {radius})"),
        }
    }
}

/// Merge collinear segments that overlap or touch until none remain.
fn merge_segments(mut ps: Vec<Primitive>) -> Vec<Primitive> {
    loop {
        let mut merged = None;
        'outer: for i in 0..ps.len() {
            for j in (i + 1)..ps.len() {
                if let (Primitive::Segment(a, b), Primitive::Segment(c, d)) = (&ps[i], &ps[j]) {
                    let dir = b - a;
                    let collinear =
                        cross(&dir, &(c - a)).is_zero() && cross(&dir, &(d - a)).is_zero();
                    let touching = on_segment(c, a, b)
                        || on_segment(d, a, b)
                        || on_segment(a, c, d)
                        || on_segment(b, c, d);
                    if collinear && touching {
                        let mut ends = [a.clone(), b.clone(), c.clone(), d.clone()];
                        ends.sort_by(|x, y| dot(&(x - a), &dir).cmp(&dot(&(y - a), &dir)));
                        let seg = Primitive::segment(ends[0].clone(), ends[3].clone())
                            .expect("merged segment is nondegenerate");
                        merged = Some((i, j, seg));
                        break 'outer;
                    }
                }
            }
        }
        match merged {
            Some((i, j, seg)) => {
                ps.remove(j);
                ps[i] = seg;
            }
            None => return ps,
        }
    }
}

/// Interval of a segment parameter `t`, with open or closed ends.
#[derive(Clone, Debug)]
struct Interval {
    lo: BigRational,
    lo_closed: bool,
    hi: BigRational,
    hi_closed: bool,
}

/// Does a union of intervals cover `[0, 1]`?
fn intervals_cover_unit(mut ivs: Vec<Interval>) -> bool {
    ivs.sort_by(|a, b| a.lo.cmp(&b.lo).then(b.lo_closed.cmp(&a.lo_closed)));
    // Covered so far: [0, reach] if reach_closed, else [0, reach).
    let mut reach = BigRational::zero();
    let mut reach_closed = false;
    loop {
        let mut advanced = false;
        for iv in &ivs {
            let connects = iv.lo < reach || (iv.lo == reach && (reach_closed || iv.lo_closed));
            let better = iv.hi > reach || (iv.hi == reach && iv.hi_closed && !reach_closed);
            if connects && better {
                reach = iv.hi.clone();
                reach_closed = iv.hi_closed;
                advanced = true;
            }
        }
        if !advanced {
            break;
        }
    }
    reach > BigRational::one() || (reach.is_one() && reach_closed)
}

impl PlaneSet {
    pub fn open_discs(open: Vec<OpenDisc>) -> Self {
        let mut open = open;
        open.sort();
        open.dedup();
        PlaneSet { closed: SpectralRegion::empty(), open }
    }

    pub fn is_empty(&self) -> bool {
        self.closed.is_empty() && self.open.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.open.is_empty()
    }

    pub fn is_open(&self) -> bool {
        self.closed.is_empty()
    }

    pub fn contains(&self, z: &ExactScalar) -> bool {
        self.closed.contains(z) || self.open.iter().any(|o| o.contains(z))
    }

    fn has_area(&self) -> bool {
        !self.open.is_empty() || self.closed.primitives.iter().any(Primitive::is_solid)
    }

    fn without_open(&self, skip: usize) -> PlaneSet {
        let mut open = self.open.clone();
        open.remove(skip);
        PlaneSet { closed: self.closed.clone(), open }
    }

    pub fn contains_region(&self, r: &SpectralRegion) -> Result<bool> {
        for p in r.primitives() {
            if !self.covers(p)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn contains_plane_set(&self, s: &PlaneSet) -> Result<bool> {
        if !self.contains_region(&s.closed)? {
            return Ok(false);
        }
        for o in &s.open {
            if !self.covers_open(o)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Exact decision of `p ⊆ self`.
    pub fn covers(&self, p: &Primitive) -> Result<bool> {
        if let Primitive::Point(z) = p {
            return Ok(self.contains(z));
        }
        if self.closed.primitives.iter().any(|q| p.is_within(q))
            || self.open.iter().any(|o| p.is_within_open(o))
        {
            return Ok(true);
        }
        // A piece inside the closure of an open disk is covered once the
        // part on the disk boundary is.
        for (k, o) in self.open.iter().enumerate() {
            if p.is_within(&o.closure()) {
                let rest = self.without_open(k);
                return match boundary_residue(p, o) {
                    Residue::Point(z) => Ok(rest.contains(&z)),
                    Residue::Points(zs) => Ok(zs.iter().all(|z| rest.contains(z))),
                    Residue::Circle(c) => rest.covers(&c),
                };
            }
        }
        if let Primitive::Segment(a, b) = p {
            if let Some(v) = self.segment_interval_cover(a, b) {
                return Ok(v);
            }
        }
        if !self.could_cover(p) {
            return Ok(false);
        }
        self.witness_search(p, &p.samples())
    }

    /// Exact decision of `o ⊆ self` for an open disk.
    pub fn covers_open(&self, o: &OpenDisc) -> Result<bool> {
        let inside = self.closed.primitives.iter().any(|q| match q {
            Primitive::Disk { center, radius } => o.inside_disk(center, radius),
            _ => false,
        }) || self.open.iter().any(|q| o.inside_disk(&q.center, &q.radius));
        if inside {
            return Ok(true);
        }
        if !self.has_area() {
            return Ok(false);
        }
        let samples = grid_samples(&o.center, &o.radius, false);
        if samples.iter().any(|z| !self.contains(z)) {
            return Ok(false);
        }
        Err(Error::unsupported(format!(
            "cannot decide whether the open disk centered at {} of radius {} is covered",
            o.center, o.radius
        )))
    }

    /// Quick negative: curves and disks need pieces of matching size.
    fn could_cover(&self, p: &Primitive) -> bool {
        match p {
            Primitive::Point(_) => true,
            Primitive::Segment(a, b) => {
                self.has_area()
                    || self.closed.primitives.iter().any(|q| match q {
                        Primitive::Segment(c, d) => {
                            let dir = b - a;
                            cross(&dir, &(c - a)).is_zero() && cross(&dir, &(d - a)).is_zero()
                        }
                        _ => false,
                    })
            }
            Primitive::Circle { .. } => self.has_area() || self.closed.primitives.contains(p),
            Primitive::Disk { .. } => self.has_area(),
        }
    }

    fn witness_search(&self, p: &Primitive, samples: &[ExactScalar]) -> Result<bool> {
        if samples.iter().any(|z| !self.contains(z)) {
            return Ok(false);
        }
        Err(Error::unsupported(format!("cannot decide whether {p} is covered by the given pieces")))
    }

    /// Cover `[a, b]` by the parameter intervals cut out by each piece.
    /// `None` when some cut point is irrational and the rational pieces
    /// alone do not settle the question.
    fn segment_interval_cover(&self, a: &ExactScalar, b: &ExactScalar) -> Option<bool> {
        let dir = b - a;
        let len2 = dir.norm_sqr();
        let param = |z: &ExactScalar| dot(&(z - a), &dir) / &len2;
        let mut ivs = Vec::new();
        let mut irrational = false;
        let closed_iv = |lo: BigRational, hi: BigRational| Interval { lo, lo_closed: true, hi, hi_closed: true };
        for q in self.closed.primitives() {
            match q {
                Primitive::Point(z) => {
                    if on_segment(z, a, b) {
                        let t = param(z);
                        ivs.push(closed_iv(t.clone(), t));
                    }
                }
                Primitive::Segment(c, d) => {
                    if cross(&dir, &(c - a)).is_zero() && cross(&dir, &(d - a)).is_zero() {
                        let (tc, td) = (param(c), param(d));
                        ivs.push(closed_iv(tc.clone().min(td.clone()), tc.max(td)));
                    } else if let Some(z) = super::primitive::segment_crossing(a, b, c, d) {
                        let t = param(&z);
                        ivs.push(closed_iv(t.clone(), t));
                    }
                }
                Primitive::Circle { center, radius } => match segment_circle_roots(a, b, center, radius) {
                    SegmentCircleRoots::Rational(t1, t2) => {
                        ivs.push(closed_iv(t1.clone(), t1));
                        ivs.push(closed_iv(t2.clone(), t2));
                    }
                    SegmentCircleRoots::Irrational => irrational = true,
                    SegmentCircleRoots::None => {}
                },
                Primitive::Disk { center, radius } => match segment_circle_roots(a, b, center, radius) {
                    SegmentCircleRoots::Rational(t1, t2) => ivs.push(closed_iv(t1, t2)),
                    SegmentCircleRoots::Irrational => irrational = true,
                    SegmentCircleRoots::None => {}
                },
            }
        }
        for o in &self.open {
            match segment_circle_roots(a, b, &o.center, &o.radius) {
                SegmentCircleRoots::Rational(t1, t2) => {
                    if t1 < t2 {
                        ivs.push(Interval { lo: t1, lo_closed: false, hi: t2, hi_closed: false });
                    }
                }
                SegmentCircleRoots::Irrational => irrational = true,
                SegmentCircleRoots::None => {}
            }
        }
        let covered = intervals_cover_unit(ivs);
        if covered || !irrational {
            Some(covered)
        } else {
            None
        }
    }
}

enum Residue {
    Point(ExactScalar),
    Points(Vec<ExactScalar>),
    Circle(Primitive),
}

/// `p ∩ ∂o` for a primitive inside the closed disk of `o`.
fn boundary_residue(p: &Primitive, o: &OpenDisc) -> Residue {
    let r2 = &o.radius * &o.radius;
    match p {
        Primitive::Point(z) => Residue::Point(z.clone()),
        Primitive::Segment(a, b) => Residue::Points(
            [a, b].into_iter().filter(|z| dist2(z, &o.center) == r2).cloned().collect(),
        ),
        Primitive::Circle { center, radius } | Primitive::Disk { center, radius } => {
            if *center == o.center {
                // Concentric and inside the closure, so the radii agree.
                Residue::Circle(o.boundary())
            } else {
                // Internally tangent: d = R − r is rational.
                let d = &o.radius - radius;
                let dir = center - &o.center;
                let t = &o.radius / &d;
                Residue::Point(lerp(&o.center, &(&o.center + &dir), &t))
            }
        }
    }
}

/// Midpoint of `a, b` weighted so it lies in both closed disks whenever they meet.
pub(crate) fn weighted_point(
    c1: &ExactScalar,
    r1: &BigRational,
    c2: &ExactScalar,
    r2: &BigRational,
) -> ExactScalar {
    debug_assert!(r1.is_positive() && r2.is_positive());
    lerp(c1, c2, &(r1 / (r1 + r2)))
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

    #[test]
    fn canonicalize_examples() {
        let r = SpectralRegion::canonicalize(vec![circle(z(0, 0), 1), disk(z(0, 0), 1)]).unwrap();
        assert_eq!(r.primitives(), &[disk(z(0, 0), 1)]);
        let r = SpectralRegion::canonicalize(vec![Primitive::Point(z(0, 0)), disk(z(0, 0), 1)]).unwrap();
        assert_eq!(r.primitives(), &[disk(z(0, 0), 1)]);
        let r = SpectralRegion::canonicalize(vec![circle(z(0, 0), 1), Primitive::Point(z(2, 0))]).unwrap();
        assert_eq!(r.primitives(), &[Primitive::Point(z(2, 0)), circle(z(0, 0), 1)]);
    }

    #[test]
    fn canonicalize_is_idempotent_and_order_free() {
        let ps = vec![
            Primitive::segment(z(0, 0), z(2, 0)).unwrap(),
            Primitive::segment(z(1, 0), z(3, 0)).unwrap(),
            Primitive::Point(z(5, 5)),
            circle(z(0, 0), 4),
        ];
        let a = SpectralRegion::canonicalize(ps.clone()).unwrap();
        let mut rev = ps;
        rev.reverse();
        let b = SpectralRegion::canonicalize(rev).unwrap();
        assert_eq!(a, b);
        assert_eq!(SpectralRegion::canonicalize(a.primitives().to_vec()).unwrap(), a);
        assert!(a.primitives().contains(&Primitive::segment(z(0, 0), z(3, 0)).unwrap()));
    }

    #[test]
    fn segment_covered_by_two_disks() {
        // [-2, 2] lies in D(-1, 1) ∪ D(1, 1).
        let r = SpectralRegion::canonicalize(vec![
            disk(z(-1, 0), 1),
            disk(z(1, 0), 1),
            Primitive::segment(z(-2, 0), z(2, 0)).unwrap(),
        ])
        .unwrap();
        assert_eq!(r.primitives().len(), 2);
    }

    #[test]
    fn subset_examples() {
        let c = SpectralRegion::from_primitive(circle(z(0, 0), 1));
        let d = SpectralRegion::from_primitive(disk(z(0, 0), 1));
        assert!(c.subset(&d).unwrap());
        assert!(!d.subset(&c).unwrap());
        assert!(SpectralRegion::from_points([z(1, 0)]).subset(&c).unwrap());
    }

    #[test]
    fn closed_disk_covered_by_open_disk_and_circle() {
        let set = PlaneSet {
            closed: SpectralRegion::from_primitive(circle(z(0, 0), 1)),
            open: vec![OpenDisc::new(z(0, 0), rational(1, 1)).unwrap()],
        };
        assert!(set.covers(&disk(z(0, 0), 1)).unwrap());
        let open_only = PlaneSet::open_discs(vec![OpenDisc::new(z(0, 0), rational(1, 1)).unwrap()]);
        assert!(!open_only.covers(&disk(z(0, 0), 1)).unwrap());
        assert!(!open_only.covers(&Primitive::segment(z(0, 0), z(1, 0)).unwrap()).unwrap());
    }

    #[test]
    fn interval_cover_handles_gaps() {
        let o1 = OpenDisc::new(z(0, 0), rational(1, 1)).unwrap();
        let o2 = OpenDisc::new(z(2, 0), rational(1, 1)).unwrap();
        let seg = Primitive::segment(z(0, 0), z(2, 0)).unwrap();
        let gap = PlaneSet::open_discs(vec![o1.clone(), o2.clone()]);
        assert!(!gap.covers(&seg).unwrap());
        let filled = PlaneSet { closed: SpectralRegion::from_points([z(1, 0)]), open: vec![o1, o2] };
        assert!(filled.covers(&seg).unwrap());
    }

    #[test]
    fn line_containment() {
        let r = SpectralRegion::canonicalize(vec![
            Primitive::Point(z(0, 0)),
            Primitive::segment(z(1, 1), z(2, 2)).unwrap(),
        ])
        .unwrap();
        assert!(r.is_line_contained());
        assert!(!SpectralRegion::from_primitive(circle(z(0, 0), 1)).is_line_contained());
        assert!(SpectralRegion::empty().is_line_contained());
        assert!(!SpectralRegion::from_points([z(0, 0), z(1, 0), z(0, 1)]).is_line_contained());
    }
}
