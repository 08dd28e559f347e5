use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{rational_sqrt, ExactScalar};

/// Compact planar building block. Every coordinate is a Gaussian rational and
/// every radius a positive rational, so all incidence questions reduce to
/// rational comparisons of squared distances.
///
/// The derived order (variant rank, then center/endpoints, then radius) is
/// the canonical order of a region's primitives.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Primitive {
    Point(ExactScalar),
    /// Closed segment; endpoints distinct and stored in increasing order.
    Segment(ExactScalar, ExactScalar),
    Circle { center: ExactScalar, radius: BigRational },
    /// Closed disk.
    Disk { center: ExactScalar, radius: BigRational },
}

/// Open disk `{z : |z − center| < radius}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OpenDisc {
    pub center: ExactScalar,
    pub radius: BigRational,
}

pub(crate) fn dist2(a: &ExactScalar, b: &ExactScalar) -> BigRational {
    (a - b).norm_sqr()
}

pub(crate) fn dot(u: &ExactScalar, v: &ExactScalar) -> BigRational {
    u.re() * v.re() + u.im() * v.im()
}

pub(crate) fn cross(u: &ExactScalar, v: &ExactScalar) -> BigRational {
    u.re() * v.im() - u.im() * v.re()
}

fn sq(q: &BigRational) -> BigRational {
    q * q
}

/// Point on the segment `a + t(b − a)`.
pub(crate) fn lerp(a: &ExactScalar, b: &ExactScalar, t: &BigRational) -> ExactScalar {
    a + &(b - a).scale(t)
}

pub(crate) fn on_segment(p: &ExactScalar, a: &ExactScalar, b: &ExactScalar) -> bool {
    let ab = b - a;
    let ap = p - a;
    if !cross(&ab, &ap).is_zero() {
        return false;
    }
    let t = dot(&ap, &ab);
    !t.is_negative() && t <= ab.norm_sqr()
}

/// Parameter of the point of segment `[a, b]` nearest to `p`.
pub(crate) fn nearest_param(p: &ExactScalar, a: &ExactScalar, b: &ExactScalar) -> BigRational {
    let ab = b - a;
    let t = dot(&(p - a), &ab) / ab.norm_sqr();
    t.clamp(BigRational::zero(), BigRational::one())
}

pub(crate) fn min_dist2_to_segment(p: &ExactScalar, a: &ExactScalar, b: &ExactScalar) -> BigRational {
    dist2(p, &lerp(a, b, &nearest_param(p, a, b)))
}

pub(crate) fn max_dist2_to_segment(p: &ExactScalar, a: &ExactScalar, b: &ExactScalar) -> BigRational {
    dist2(p, a).max(dist2(p, b))
}

/// `r1 + r2 ≥ d` for `d = sqrt(d2)`, compared exactly.
fn within(d2: &BigRational, r: &BigRational) -> bool {
    !r.is_negative() && d2 <= &sq(r)
}

/// `d < r` exactly.
fn strictly_within(d2: &BigRational, r: &BigRational) -> bool {
    r.is_positive() && d2 < &sq(r)
}

/// Closed disk of radius `r1` at distance `d` from a disk of radius `r2`
/// is contained in it: `d + r1 ≤ r2`.
fn disk_in_disk(d2: &BigRational, r1: &BigRational, r2: &BigRational) -> bool {
    within(d2, &(r2 - r1))
}

/// `d + r1 < r2`.
fn disk_in_disk_strict(d2: &BigRational, r1: &BigRational, r2: &BigRational) -> bool {
    strictly_within(d2, &(r2 - r1))
}

/// `|d − r| < big_r`: the circle of radius `r` meets the open disk of radius
/// `big_r` whose center is at distance `d`.
pub(crate) fn circle_meets_open_disc(d2: &BigRational, r: &BigRational, big_r: &BigRational) -> bool {
    // r − R < d < r + R
    let upper = d2 < &sq(&(r + big_r));
    let lower = {
        let diff = r - big_r;
        diff.is_negative() || d2 > &sq(&diff)
    };
    upper && lower
}

/// Roots of `|a + t(b − a) − c|² = r²` in `t`, when rational.
pub(crate) enum SegmentCircleRoots {
    None,
    Rational(BigRational, BigRational),
    Irrational,
}

pub(crate) fn segment_circle_roots(
    a: &ExactScalar,
    b: &ExactScalar,
    c: &ExactScalar,
    r: &BigRational,
) -> SegmentCircleRoots {
    let u = b - a;
    let w = a - c;
    let qa = u.norm_sqr();
    let qb = dot(&u, &w) * BigRational::from_integer(BigInt::from(2));
    let qc = w.norm_sqr() - sq(r);
    let disc = &qb * &qb - BigRational::from_integer(BigInt::from(4)) * &qa * &qc;
    if disc.is_negative() {
        return SegmentCircleRoots::None;
    }
    match rational_sqrt(&disc) {
        Some(s) => {
            let two_a = &qa * BigRational::from_integer(BigInt::from(2));
            let t1 = (-&qb - &s) / &two_a;
            let t2 = (-&qb + &s) / &two_a;
            SegmentCircleRoots::Rational(t1, t2)
        }
        None => SegmentCircleRoots::Irrational,
    }
}

impl OpenDisc {
    pub fn new(center: ExactScalar, radius: BigRational) -> Result<Self> {
        if !radius.is_positive() {
            return Err(Error::Parse("radius must be positive".into()));
        }
        Ok(OpenDisc { center, radius })
    }

    pub fn contains(&self, z: &ExactScalar) -> bool {
        dist2(z, &self.center) < sq(&self.radius)
    }

    pub fn closure(&self) -> Primitive {
        Primitive::Disk { center: self.center.clone(), radius: self.radius.clone() }
    }

    pub fn boundary(&self) -> Primitive {
        Primitive::Circle { center: self.center.clone(), radius: self.radius.clone() }
    }

    /// Does this open disk meet the closed primitive `p`?
    pub fn meets(&self, p: &Primitive) -> bool {
        let r = &self.radius;
        match p {
            Primitive::Point(z) => self.contains(z),
            Primitive::Segment(a, b) => strictly_within(&min_dist2_to_segment(&self.center, a, b), r),
            Primitive::Circle { center, radius } => {
                circle_meets_open_disc(&dist2(center, &self.center), radius, r)
            }
            Primitive::Disk { center, radius } => {
                strictly_within(&dist2(center, &self.center), &(radius + r))
            }
        }
    }

    pub fn meets_open(&self, other: &OpenDisc) -> bool {
        strictly_within(&dist2(&self.center, &other.center), &(&self.radius + &other.radius))
    }

    /// Is the open disk contained in the closed or open disk `(c, big_r)`?
    /// Both reduce to `d + r ≤ R`.
    pub(crate) fn inside_disk(&self, c: &ExactScalar, big_r: &BigRational) -> bool {
        disk_in_disk(&dist2(&self.center, c), &self.radius, big_r)
    }
}

impl Primitive {
    pub fn point(z: ExactScalar) -> Self {
        Primitive::Point(z)
    }

    pub fn segment(a: ExactScalar, b: ExactScalar) -> Result<Self> {
        match a.cmp(&b) {
            Ordering::Equal => Err(Error::Parse("segment endpoints must be distinct".into())),
            Ordering::Less => Ok(Primitive::Segment(a, b)),
            Ordering::Greater => Ok(Primitive::Segment(b, a)),
        }
    }

    pub fn circle(center: ExactScalar, radius: BigRational) -> Result<Self> {
        if !radius.is_positive() {
            return Err(Error::Parse("circle radius must be positive".into()));
        }
        Ok(Primitive::Circle { center, radius })
    }

    pub fn disk(center: ExactScalar, radius: BigRational) -> Result<Self> {
        if !radius.is_positive() {
            return Err(Error::Parse("disk radius must be positive".into()));
        }
        Ok(Primitive::Disk { center, radius })
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Primitive::Point(_) => "point",
            Primitive::Segment(..) => "segment",
            Primitive::Circle { .. } => "circle",
            Primitive::Disk { .. } => "disk",
        }
    }

    pub fn is_point(&self) -> bool {
        matches!(self, Primitive::Point(_))
    }

    /// Has nonempty interior in the plane.
    pub fn is_solid(&self) -> bool {
        matches!(self, Primitive::Disk { .. })
    }

    pub fn contains_point(&self, z: &ExactScalar) -> bool {
        match self {
            Primitive::Point(p) => p == z,
            Primitive::Segment(a, b) => on_segment(z, a, b),
            Primitive::Circle { center, radius } => dist2(z, center) == sq(radius),
            Primitive::Disk { center, radius } => dist2(z, center) <= sq(radius),
        }
    }

    /// `self ⊆ other` for a single pair of primitives.
    pub fn is_within(&self, other: &Primitive) -> bool {
        use Primitive::*;
        match (self, other) {
            (Point(z), q) => q.contains_point(z),
            (Segment(a, b), Segment(..)) => other.contains_point(a) && other.contains_point(b),
            (Segment(a, b), Disk { .. }) => other.contains_point(a) && other.contains_point(b),
            (Segment(..), _) => false,
            (Circle { .. }, Circle { .. }) => self == other,
            (Circle { center, radius }, Disk { center: c2, radius: r2 })
            | (Disk { center, radius }, Disk { center: c2, radius: r2 }) => {
                disk_in_disk(&dist2(center, c2), radius, r2)
            }
            _ => false,
        }
    }

    /// `self ⊆ disc` for an open disc.
    pub fn is_within_open(&self, disc: &OpenDisc) -> bool {
        match self {
            Primitive::Point(z) => disc.contains(z),
            Primitive::Segment(a, b) => disc.contains(a) && disc.contains(b),
            Primitive::Circle { center, radius } | Primitive::Disk { center, radius } => {
                disk_in_disk_strict(&dist2(center, &disc.center), radius, &disc.radius)
            }
        }
    }

    /// Do the two closed primitives share a point?
    pub fn meets(&self, other: &Primitive) -> bool {
        use Primitive::*;
        match (self, other) {
            (Point(z), q) | (q, Point(z)) => q.contains_point(z),
            (Segment(a, b), Segment(c, d)) => segments_meet(a, b, c, d),
            (Segment(a, b), Circle { center, radius }) | (Circle { center, radius }, Segment(a, b)) => {
                let r2 = sq(radius);
                min_dist2_to_segment(center, a, b) <= r2 && r2 <= max_dist2_to_segment(center, a, b)
            }
            (Segment(a, b), Disk { center, radius }) | (Disk { center, radius }, Segment(a, b)) => {
                min_dist2_to_segment(center, a, b) <= sq(radius)
            }
            (Circle { center: c1, radius: r1 }, Circle { center: c2, radius: r2 }) => {
                let d2 = dist2(c1, c2);
                d2 <= sq(&(r1 + r2)) && d2 >= sq(&(r1 - r2))
            }
            (Circle { center: c1, radius: r1 }, Disk { center: c2, radius: r2 })
            | (Disk { center: c2, radius: r2 }, Circle { center: c1, radius: r1 }) => {
                let d2 = dist2(c1, c2);
                d2 <= sq(&(r1 + r2)) && !disk_in_disk_strict(&d2, r2, r1)
            }
            (Disk { center: c1, radius: r1 }, Disk { center: c2, radius: r2 }) => {
                dist2(c1, c2) <= sq(&(r1 + r2))
            }
        }
    }

    /// Lies on a single straight line (points and segments only).
    pub(crate) fn line_points(&self) -> Option<Vec<ExactScalar>> {
        match self {
            Primitive::Point(z) => Some(vec![z.clone()]),
            Primitive::Segment(a, b) => Some(vec![a.clone(), b.clone()]),
            _ => None,
        }
    }

    /// Axis-aligned bounding box `(min_re, min_im, max_re, max_im)`.
    pub fn bounds(&self) -> (BigRational, BigRational, BigRational, BigRational) {
        match self {
            Primitive::Point(z) => (z.re().clone(), z.im().clone(), z.re().clone(), z.im().clone()),
            Primitive::Segment(a, b) => (
                a.re().min(b.re()).clone(),
                a.im().min(b.im()).clone(),
                a.re().max(b.re()).clone(),
                a.im().max(b.im()).clone(),
            ),
            Primitive::Circle { center, radius } | Primitive::Disk { center, radius } => (
                center.re() - radius,
                center.im() - radius,
                center.re() + radius,
                center.im() + radius,
            ),
        }
    }

    /// Rational sample points on the primitive, used to look for exact
    /// counterexamples to coverage claims.
    pub(crate) fn samples(&self) -> Vec<ExactScalar> {
        match self {
            Primitive::Point(z) => vec![z.clone()],
            Primitive::Segment(a, b) => {
                (0..=64).map(|k| lerp(a, b, &BigRational::new(k.into(), 64.into()))).collect()
            }
            Primitive::Circle { center, radius } => circle_samples(center, radius),
            Primitive::Disk { center, radius } => {
                let mut v = grid_samples(center, radius, true);
                v.extend(circle_samples(center, radius));
                v
            }
        }
    }
}

/// Rational points on a circle via the parametrization
/// `((1 − s²)/(1 + s²), 2s/(1 + s²))`.
pub(crate) fn circle_samples(center: &ExactScalar, radius: &BigRational) -> Vec<ExactScalar> {
    let mut v: Vec<ExactScalar> = (-48..=48)
        .map(|k| {
            let s = BigRational::new(BigInt::from(k), BigInt::from(12));
            let den = BigRational::one() + &s * &s;
            let x = (BigRational::one() - &s * &s) / &den;
            let y = (&s + &s) / &den;
            center + &ExactScalar::new(x * radius, y * radius)
        })
        .collect();
    v.push(center - &ExactScalar::real(radius.clone()));
    v
}

/// Grid points `center + radius·(i, j)/8` inside the disk; strictly inside
/// when `closed` is false.
pub(crate) fn grid_samples(center: &ExactScalar, radius: &BigRational, closed: bool) -> Vec<ExactScalar> {
    let n = 8i64;
    let mut v = Vec::new();
    for i in -n..=n {
        for j in -n..=n {
            let inside = if closed { i * i + j * j <= n * n } else { i * i + j * j < n * n };
            if inside {
                let off = ExactScalar::from_fractions(i, n, j, n).scale(radius);
                v.push(center + &off);
            }
        }
    }
    v
}

fn orientation(a: &ExactScalar, b: &ExactScalar, c: &ExactScalar) -> Ordering {
    cross(&(b - a), &(c - a)).cmp(&BigRational::zero())
}

pub(crate) fn segments_meet(a: &ExactScalar, b: &ExactScalar, c: &ExactScalar, d: &ExactScalar) -> bool {
    let o1 = orientation(a, b, c);
    let o2 = orientation(a, b, d);
    let o3 = orientation(c, d, a);
    let o4 = orientation(c, d, b);
    if o1 != o2 && o3 != o4 && o1 != Ordering::Equal && o2 != Ordering::Equal
        && o3 != Ordering::Equal && o4 != Ordering::Equal
    {
        return true;
    }
    on_segment(c, a, b) || on_segment(d, a, b) || on_segment(a, c, d) || on_segment(b, c, d)
        || (o1 != o2 && o3 != o4)
}

/// Intersection point of two non-parallel lines through the segments, if the
/// segments cross at a single point.
pub(crate) fn segment_crossing(
    a: &ExactScalar,
    b: &ExactScalar,
    c: &ExactScalar,
    d: &ExactScalar,
) -> Option<ExactScalar> {
    let r = b - a;
    let s = d - c;
    let denom = cross(&r, &s);
    if denom.is_zero() {
        return None;
    }
    let t = cross(&(c - a), &s) / &denom;
    let u = cross(&(c - a), &r) / &denom;
    let unit = BigRational::zero()..=BigRational::one();
    (unit.contains(&t) && unit.contains(&u)).then(|| lerp(a, b, &t))
}
