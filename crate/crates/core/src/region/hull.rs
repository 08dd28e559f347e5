use std::collections::BTreeSet;

use num_rational::BigRational;
use serde::Serialize;

use super::ops::{boundary, intersection_pair, union};
use super::primitive::{dist2, grid_samples, OpenDisc, Primitive};
use super::set::{weighted_point, PlaneSet, SpectralRegion};
use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;
use crate::scalar::ExactScalar;

/// Bounded component of the complement of a region: the open disk inside
/// `boundary` minus the pieces in `excluded`.
///
/// The closure of such a set is generally not a finite union of primitives,
/// so the hole is carried by its enclosing circle plus the excluded pieces.
/// Only membership, emptiness and containment questions are answered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hole {
    pub center: ExactScalar,
    pub radius: BigRational,
    pub excluded: SpectralRegion,
}

impl Hole {
    pub fn is_open(&self) -> bool {
        true
    }

    pub fn disc(&self) -> OpenDisc {
        OpenDisc { center: self.center.clone(), radius: self.radius.clone() }
    }

    /// Closed disk enclosing the hole.
    pub fn envelope(&self) -> SpectralRegion {
        SpectralRegion::from_primitive(self.disc().closure())
    }

    pub fn contains(&self, z: &ExactScalar) -> bool {
        self.disc().contains(z) && !self.excluded.contains(z)
    }

    /// A rational point of the hole.
    pub fn witness(&self) -> Option<ExactScalar> {
        grid_samples(&self.center, &self.radius, false).into_iter().find(|z| !self.excluded.contains(z))
    }
}

/// Connected hull with its holes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullReport {
    pub hull: SpectralRegion,
    pub holes: Vec<Hole>,
    /// Connected components of the input region.
    pub component_count: usize,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, i: usize) -> usize {
        if self.0[i] != i {
            let root = self.find(self.0[i]);
            self.0[i] = root;
        }
        self.0[i]
    }
    fn join(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra.max(rb)] = ra.min(rb);
    }
}

fn components(ps: &[Primitive]) -> Vec<usize> {
    let mut uf = UnionFind::new(ps.len());
    for i in 0..ps.len() {
        for j in (i + 1)..ps.len() {
            if ps[i].meets(&ps[j]) {
                uf.join(i, j);
            }
        }
    }
    (0..ps.len()).map(|i| uf.find(i)).collect()
}

pub fn component_count(r: &SpectralRegion) -> usize {
    components(r.primitives()).into_iter().collect::<BTreeSet<_>>().len()
}

/// Do three convex pieces share a point?
fn triple_meets(p: &Primitive, q: &Primitive, s: &Primitive) -> Result<bool> {
    for (a, b, c) in [(p, q, s), (p, s, q), (q, s, p)] {
        if let Ok(pieces) = intersection_pair(a, b) {
            return Ok(pieces.iter().any(|x| x.meets(c)));
        }
    }
    // All three pairs overlap in lenses; try points that usually sit there.
    let disks: Vec<(&ExactScalar, &BigRational)> = [p, q, s]
        .iter()
        .filter_map(|x| match x {
            Primitive::Disk { center, radius } => Some((center, radius)),
            _ => None,
        })
        .collect();
    let mut candidates: Vec<ExactScalar> = disks.iter().map(|(c, _)| (*c).clone()).collect();
    for (i, (c1, r1)) in disks.iter().enumerate() {
        for (c2, r2) in &disks[i + 1..] {
            candidates.push(weighted_point(c1, r1, c2, r2));
        }
    }
    if candidates.iter().any(|z| p.contains_point(z) && q.contains_point(z) && s.contains_point(z)) {
        return Ok(true);
    }
    Err(Error::unsupported(format!("cannot decide whether {p}, {q} and {s} share a point")))
}

/// First Betti number of the nerve of a family of convex pieces, which is
/// that of their union.
fn first_betti(ps: &[Primitive]) -> Result<usize> {
    let n = ps.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if ps[i].meets(&ps[j]) {
                edges.push((i, j));
            }
        }
    }
    let comps = components(ps).into_iter().collect::<BTreeSet<_>>().len();
    let cycles = edges.len() + comps - n;
    if cycles == 0 {
        return Ok(0);
    }
    let edge_index = |a: usize, b: usize| edges.iter().position(|&e| e == (a, b));
    let mut triangles = Vec::new();
    for &(i, j) in &edges {
        for k in (j + 1)..n {
            if edge_index(i, k).is_some() && edge_index(j, k).is_some() && triple_meets(&ps[i], &ps[j], &ps[k])? {
                triangles.push((i, j, k));
            }
        }
    }
    if triangles.is_empty() {
        return Ok(cycles);
    }
    let mut d2 = ExactMatrix::zeros(edges.len(), triangles.len());
    for (col, &(i, j, k)) in triangles.iter().enumerate() {
        let one = ExactScalar::from_int(1);
        d2.set(edge_index(j, k).unwrap(), col, one.clone());
        d2.set(edge_index(i, k).unwrap(), col, -one.clone());
        d2.set(edge_index(i, j).unwrap(), col, one);
    }
    Ok(cycles - d2.rank())
}

/// Where a piece touches a circle.
enum Contact {
    None,
    Points(Vec<ExactScalar>),
    Arc,
}

fn contact(q: &Primitive, center: &ExactScalar, radius: &BigRational) -> Result<Contact> {
    let circle = Primitive::Circle { center: center.clone(), radius: radius.clone() };
    if !q.meets(&circle) {
        return Ok(Contact::None);
    }
    match q {
        Primitive::Disk { center: c2, radius: r2 } => {
            let d2 = dist2(center, c2);
            let inner_tangent = d2 == (radius - r2) * (radius - r2) && radius > r2;
            let outer_tangent = d2 == (radius + r2) * (radius + r2);
            if inner_tangent || outer_tangent {
                Ok(Contact::Points(intersection_pair(q, &circle)?.into_iter().filter_map(point_of).collect()))
            } else {
                Ok(Contact::Arc)
            }
        }
        _ => Ok(Contact::Points(intersection_pair(q, &circle)?.into_iter().filter_map(point_of).collect())),
    }
}

fn point_of(p: Primitive) -> Option<ExactScalar> {
    match p {
        Primitive::Point(z) => Some(z),
        _ => None,
    }
}

/// Connected hull `ηK`: `K` together with its holes.
///
/// Every circle of `K` bounds exactly one hole. Configurations whose holes
/// cannot be enumerated exactly this way (crossing circles, loops of
/// segments or overlapping disks, a piece splitting a circle's interior)
/// raise `UnsupportedConfiguration`.
pub fn connected_hull(r: &SpectralRegion) -> Result<HullReport> {
    let circles: Vec<(&ExactScalar, &BigRational)> = r
        .primitives()
        .iter()
        .filter_map(|p| match p {
            Primitive::Circle { center, radius } => Some((center, radius)),
            _ => None,
        })
        .collect();
    let solid: Vec<Primitive> = r.primitives().iter().filter(|p| !matches!(p, Primitive::Circle { .. })).cloned().collect();
    let filled: Vec<Primitive> = circles
        .iter()
        .map(|(c, rad)| Primitive::Disk { center: (*c).clone(), radius: (*rad).clone() })
        .collect();

    let mut all = solid.clone();
    all.extend(filled.iter().cloned());
    let hull = SpectralRegion::canonicalize(all)?;
    if first_betti(hull.primitives())? != 0 {
        return Err(Error::unsupported(format!("{r} encloses a hole that is not bounded by a single circle")));
    }

    let mut holes = Vec::new();
    for (idx, (c, rad)) in circles.iter().enumerate() {
        let own = &filled[idx];
        for (c2, r2) in circles.iter().filter(|(c2, r2)| (c2, r2) != (c, rad)) {
            let d2 = dist2(c, c2);
            let crossing = d2 < (*rad + *r2) * (*rad + *r2) && d2 > (*rad - *r2) * (*rad - *r2);
            if crossing {
                return Err(Error::unsupported(format!(
                    "circles C({c}, {rad}) and C({c2}, {r2}) cross"
                )));
            }
        }
        let disc = OpenDisc { center: (*c).clone(), radius: (*rad).clone() };
        let mut inside: Vec<Primitive> = solid.iter().filter(|q| disc.meets(q)).cloned().collect();
        inside.extend(
            filled
                .iter()
                .enumerate()
                .filter(|(j, d)| *j != idx && !own.is_within(d) && disc.meets(d))
                .map(|(_, d)| d.clone()),
        );
        check_single_contacts(&inside, c, rad)?;
        holes.push(Hole {
            center: (*c).clone(),
            radius: (*rad).clone(),
            excluded: SpectralRegion::canonicalize(inside)?,
        });
    }
    holes.sort_by(|a, b| (&a.center, &a.radius).cmp(&(&b.center, &b.radius)));
    Ok(HullReport { hull, holes, component_count: component_count(r) })
}

/// Each connected cluster of pieces inside a circle may touch the circle in
/// at most one place; otherwise it splits the disk into several holes.
fn check_single_contacts(inside: &[Primitive], center: &ExactScalar, radius: &BigRational) -> Result<()> {
    let labels = components(inside);
    for label in labels.iter().collect::<BTreeSet<_>>() {
        let mut points = BTreeSet::new();
        let mut arcs = 0usize;
        for (q, _) in inside.iter().zip(&labels).filter(|(_, l)| *l == label) {
            match contact(q, center, radius)? {
                Contact::None => {}
                Contact::Points(ps) => points.extend(ps),
                Contact::Arc => arcs += 1,
            }
        }
        if points.len() + arcs > 1 {
            return Err(Error::unsupported(format!(
                "pieces inside C({center}, {radius}) touch it in several places"
            )));
        }
    }
    Ok(())
}

/// Outcome of checking the nested-hull property on a pair `H ⊆ K`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PocetnaReport {
    pub boundary_k_in_boundary_h: bool,
    pub boundary_h_in_h: bool,
    pub h_in_k: bool,
    pub k_in_hull_k: bool,
    pub hulls_equal: bool,
    /// Every point of `K \ H` lies in a hole of `H`.
    pub difference_in_holes: bool,
    /// Each hole of `H` is either inside `K` or disjoint from it.
    pub holes_all_or_nothing: bool,
}

impl PocetnaReport {
    pub fn all_pass(&self) -> bool {
        self.boundary_k_in_boundary_h
            && self.boundary_h_in_h
            && self.h_in_k
            && self.k_in_hull_k
            && self.hulls_equal
            && self.difference_in_holes
            && self.holes_all_or_nothing
    }

    pub fn failures(&self) -> Vec<&'static str> {
        let checks = [
            (self.boundary_k_in_boundary_h, "boundary_k_in_boundary_h"),
            (self.boundary_h_in_h, "boundary_h_in_h"),
            (self.h_in_k, "h_in_k"),
            (self.k_in_hull_k, "k_in_hull_k"),
            (self.hulls_equal, "hulls_equal"),
            (self.difference_in_holes, "difference_in_holes"),
            (self.holes_all_or_nothing, "holes_all_or_nothing"),
        ];
        checks.iter().filter(|(ok, _)| !ok).map(|(_, n)| *n).collect()
    }
}

/// Verify `∂K ⊆ ∂H ⊆ H ⊆ K ⊆ ηK = ηH` and that `K` arises from `H` by
/// filling some holes, for `∂K ⊆ H ⊆ K`.
pub fn check_pocetna(h: &SpectralRegion, k: &SpectralRegion) -> Result<PocetnaReport> {
    let bk = boundary(k)?;
    if !bk.subset(h)? {
        return Err(Error::PreconditionViolated(format!("∂K = {bk} is not contained in H = {h}")));
    }
    if !h.subset(k)? {
        return Err(Error::PreconditionViolated(format!("H = {h} is not contained in K = {k}")));
    }
    let bh = boundary(h)?;
    let eta_h = connected_hull(h)?;
    let eta_k = connected_hull(k)?;
    let mut all_or_nothing = true;
    for hole in &eta_h.holes {
        all_or_nothing &= hole_all_or_nothing(hole, k)?;
    }
    Ok(PocetnaReport {
        boundary_k_in_boundary_h: bk.subset(&bh)?,
        boundary_h_in_h: bh.subset(h)?,
        h_in_k: true,
        k_in_hull_k: k.subset(&eta_k.hull)?,
        hulls_equal: eta_h.hull == eta_k.hull,
        difference_in_holes: k.subset(&eta_h.hull)?,
        holes_all_or_nothing: all_or_nothing,
    })
}

fn hole_all_or_nothing(hole: &Hole, k: &SpectralRegion) -> Result<bool> {
    let Some(w) = hole.witness() else { return Ok(true) };
    let disc = hole.disc();
    if k.contains(&w) {
        let cover = PlaneSet { closed: union(k, &hole.excluded)?, open: Vec::new() };
        return cover.covers_open(&disc);
    }
    let mut rim = hole.excluded.primitives().to_vec();
    rim.push(disc.boundary());
    let rim = PlaneSet { closed: SpectralRegion::canonicalize(rim)?, open: Vec::new() };
    let envelope = disc.closure();
    for q in k.primitives().iter().filter(|q| disc.meets(q)) {
        if hole.excluded.as_plane_set().covers(q)? {
            continue;
        }
        if q.is_within(&envelope) {
            if !rim.covers(q)? {
                return Ok(false);
            }
            continue;
        }
        return Err(Error::unsupported(format!("cannot decide how {q} meets a hole of H")));
    }
    Ok(true)
}
