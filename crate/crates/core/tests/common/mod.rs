//! Generators and independent oracles shared by the integration tests.
//!
//! The oracles here use their own arithmetic on `(re, im)` pairs of
//! `BigRational` and never call back into the library's algebra.

#![allow(dead_code)]

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spectral_chain::region::Primitive;
use spectral_chain::{ExactMatrix, ExactScalar, SpectralRegion};

pub type Q = BigRational;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

pub fn gi(re: i64, im: i64) -> ExactScalar {
    ExactScalar::gaussian(re, im)
}

// ---------- complex rational arithmetic for the rank oracle ----------

#[derive(Clone, Debug, PartialEq)]
struct C(Q, Q);

impl C {
    fn from(z: &ExactScalar) -> C {
        C(z.re().clone(), z.im().clone())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero() && self.1.is_zero()
    }
    fn mul(&self, o: &C) -> C {
        C(&self.0 * &o.0 - &self.1 * &o.1, &self.0 * &o.1 + &self.1 * &o.0)
    }
    fn sub(&self, o: &C) -> C {
        C(&self.0 - &o.0, &self.1 - &o.1)
    }
    fn add(&self, o: &C) -> C {
        C(&self.0 + &o.0, &self.1 + &o.1)
    }
    fn inv(&self) -> C {
        let n = &self.0 * &self.0 + &self.1 * &self.1;
        C(&self.0 / &n, -&self.1 / &n)
    }
}

fn to_c(m: &ExactMatrix) -> Vec<Vec<C>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| C::from(m.get(i, j))).collect()).collect()
}

/// Gauss-Jordan on rows; returns the nonzero rows with unit pivots.
fn reduce_c(mut a: Vec<Vec<C>>) -> Vec<Vec<C>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(rank, p);
        let inv = a[rank][col].inv();
        for c in col..cols {
            a[rank][c] = a[rank][c].mul(&inv);
        }
        for r in 0..rows {
            if r != rank && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..cols {
                    let t = f.mul(&a[rank][c]);
                    a[r][c] = a[r][c].sub(&t);
                }
            }
        }
        rank += 1;
    }
    a.truncate(rank);
    a
}

fn rank_c(a: Vec<Vec<C>>) -> usize {
    reduce_c(a).len()
}

fn apply_c(t: &[Vec<C>], v: &[C]) -> Vec<C> {
    let zero = C(Q::zero(), Q::zero());
    t.iter().map(|row| row.iter().zip(v).fold(zero.clone(), |acc, (a, b)| acc.add(&a.mul(b)))).collect()
}

/// `rank(T^n)` for `n = 0 ..= up_to`: `R(T^{n+1})` is spanned by `T`
/// applied to a reduced basis of `R(T^n)`, which keeps entries small.
pub fn oracle_power_ranks(m: &ExactMatrix, up_to: usize) -> Vec<usize> {
    let t = to_c(m);
    let n = m.rows();
    let mut basis: Vec<Vec<C>> = (0..n)
        .map(|i| (0..n).map(|j| C(if i == j { Q::one() } else { Q::zero() }, Q::zero())).collect())
        .collect();
    let mut out = Vec::new();
    for _ in 0..=up_to {
        out.push(basis.len());
        basis = reduce_c(basis.iter().map(|v| apply_c(&t, v)).collect());
    }
    out
}

pub fn oracle_rank(m: &ExactMatrix) -> usize {
    rank_c(to_c(m))
}

// ---------- matrix generators ----------

pub fn small_gaussian<R: Rng>(rng: &mut R, bound: i64) -> ExactScalar {
    gi(rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound))
}

/// Integer matrix with determinant ±1, so its inverse is integral too.
/// Built as `L·U` with unit triangular factors, then rows shuffled.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize) -> ExactMatrix {
    let mut l = ExactMatrix::identity(n);
    let mut u = ExactMatrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            l.set(i, j, gi(rng.gen_range(-1..=1), 0));
            u.set(j, i, gi(rng.gen_range(-1..=1), 0));
        }
    }
    let lu = l.checked_mul(&u).unwrap();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    ExactMatrix::from_rows(order.iter().map(|&i| lu.row(i).to_vec()).collect()).unwrap()
}

/// A matrix with prescribed Jordan structure, hidden by a similarity.
pub struct JordanCase {
    pub matrix: ExactMatrix,
    /// Eigenvalue with the sizes of its Jordan blocks.
    pub blocks: Vec<(ExactScalar, Vec<usize>)>,
}

impl JordanCase {
    pub fn largest_block(&self, lambda: &ExactScalar) -> usize {
        self.blocks.iter().find(|(l, _)| l == lambda).map_or(0, |(_, b)| *b.iter().max().unwrap())
    }
    pub fn multiplicity(&self, lambda: &ExactScalar) -> usize {
        self.blocks.iter().find(|(l, _)| l == lambda).map_or(0, |(_, b)| b.iter().sum())
    }
    pub fn eigenvalues(&self) -> Vec<ExactScalar> {
        self.blocks.iter().map(|(l, _)| l.clone()).collect()
    }
}

pub fn jordan_case<R: Rng>(rng: &mut R, n: usize) -> JordanCase {
    let mut pool: Vec<ExactScalar> = vec![gi(0, 0), gi(0, 0), gi(1, 0), gi(-1, 0), gi(2, 0), gi(0, 1), gi(1, -1), gi(-2, 1)];
    pool.dedup();
    let mut left = n;
    let mut blocks: Vec<(ExactScalar, Vec<usize>)> = Vec::new();
    let mut mats = Vec::new();
    while left > 0 {
        let size = rng.gen_range(1..=left.min(4));
        let lambda = pool.choose(rng).unwrap().clone();
        mats.push(ExactMatrix::jordan_block(&lambda, size));
        match blocks.iter_mut().find(|(l, _)| *l == lambda) {
            Some((_, b)) => b.push(size),
            None => blocks.push((lambda, vec![size])),
        }
        left -= size;
    }
    let j = ExactMatrix::block_diagonal(&mats).unwrap();
    let p = random_unimodular(rng, n);
    let matrix = p.checked_mul(&j).unwrap().checked_mul(&p.inverse().unwrap()).unwrap();
    JordanCase { matrix, blocks }
}

/// Dense small-entry matrix, made singular about half of the time.
pub fn dense_matrix<R: Rng>(rng: &mut R, n: usize) -> ExactMatrix {
    let mut rows: Vec<Vec<ExactScalar>> = (0..n).map(|_| (0..n).map(|_| small_gaussian(rng, 2)).collect()).collect();
    if n > 1 && rng.gen_bool(0.5) {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        rows[a] = rows[b].clone();
    }
    if rng.gen_bool(0.2) {
        for r in rows.iter_mut() {
            for j in 0..(n / 2) {
                r[j] = gi(0, 0);
            }
        }
    }
    ExactMatrix::from_rows(rows).unwrap()
}

// ---------- planar membership oracle ----------

fn d2(a: &(Q, Q), b: &(Q, Q)) -> Q {
    let dx = &a.0 - &b.0;
    let dy = &a.1 - &b.1;
    &dx * &dx + &dy * &dy
}

fn pair(z: &ExactScalar) -> (Q, Q) {
    (z.re().clone(), z.im().clone())
}

/// Exact membership of a rational point in a primitive, from first principles.
pub fn oracle_in_primitive(p: &Primitive, z: &ExactScalar) -> bool {
    let z = pair(z);
    match p {
        Primitive::Point(c) => pair(c) == z,
        Primitive::Segment(a, b) => {
            let (a, b) = (pair(a), pair(b));
            let cross = (&b.0 - &a.0) * (&z.1 - &a.1) - (&b.1 - &a.1) * (&z.0 - &a.0);
            if !cross.is_zero() {
                return false;
            }
            let dot = (&z.0 - &a.0) * (&b.0 - &a.0) + (&z.1 - &a.1) * (&b.1 - &a.1);
            !dot.is_negative() && dot <= d2(&a, &b)
        }
        Primitive::Circle { center, radius } => d2(&pair(center), &z) == radius * radius,
        Primitive::Disk { center, radius } => d2(&pair(center), &z) <= radius * radius,
    }
}

pub fn oracle_in_region(r: &SpectralRegion, z: &ExactScalar) -> bool {
    r.primitives().iter().any(|p| oracle_in_primitive(p, z))
}

/// Rational points on a primitive, refined with `depth`.
pub fn oracle_samples(p: &Primitive, depth: u32) -> Vec<ExactScalar> {
    let steps = 1i64 << depth;
    match p {
        Primitive::Point(c) => vec![c.clone()],
        Primitive::Segment(a, b) => (0..=steps)
            .map(|k| {
                let t = q(k, steps);
                let one_t = Q::one() - &t;
                ExactScalar::new(a.re() * &one_t + b.re() * &t, a.im() * &one_t + b.im() * &t)
            })
            .collect(),
        Primitive::Circle { center, radius } => circle_points(center, radius, steps),
        Primitive::Disk { center, radius } => {
            let mut out = circle_points(center, radius, steps);
            for i in -steps..=steps {
                for j in -steps..=steps {
                    let (x, y) = (q(i, steps), q(j, steps));
                    if &x * &x + &y * &y <= Q::one() {
                        out.push(ExactScalar::new(center.re() + radius * &x, center.im() + radius * &y));
                    }
                }
            }
            out
        }
    }
}

/// Points `c + r((1−s²)/(1+s²), 2s/(1+s²))` for `s = k/steps` in `[-4, 4]`,
/// plus the leftmost point.
fn circle_points(center: &ExactScalar, radius: &Q, steps: i64) -> Vec<ExactScalar> {
    let mut out = vec![ExactScalar::new(center.re() - radius, center.im().clone())];
    for k in -4 * steps..=4 * steps {
        let s = q(k, steps);
        let den = Q::one() + &s * &s;
        let x = (Q::one() - &s * &s) / &den;
        let y = (&s + &s) / &den;
        out.push(ExactScalar::new(center.re() + radius * x, center.im() + radius * y));
    }
    out
}

/// Sampling verdict on `a ⊆ b`: `Some(false)` with a witness outside `b`,
/// `Some(true)` when no witness turns up at the finest depth.
pub fn oracle_subset(a: &SpectralRegion, b: &SpectralRegion, max_depth: u32) -> bool {
    for depth in 1..=max_depth {
        for p in a.primitives() {
            if oracle_samples(p, depth).iter().any(|z| !oracle_in_region(b, z)) {
                return false;
            }
        }
    }
    true
}

// ---------- region generators ----------

pub fn random_primitive<R: Rng>(rng: &mut R) -> Primitive {
    let c = gi(rng.gen_range(-4..=4), rng.gen_range(-4..=4));
    let r = q(rng.gen_range(1..=4), rng.gen_range(1..=2));
    match rng.gen_range(0..4) {
        0 => Primitive::point(c),
        1 => loop {
            let d = gi(rng.gen_range(-4..=4), rng.gen_range(-4..=4));
            if d != c {
                break Primitive::segment(c, d).unwrap();
            }
        },
        2 => Primitive::circle(c, r).unwrap(),
        _ => Primitive::disk(c, r).unwrap(),
    }
}

pub fn random_points<R: Rng>(rng: &mut R, n: usize) -> SpectralRegion {
    SpectralRegion::from_points((0..n).map(|_| ExactScalar::new(q(rng.gen_range(-9..=9), rng.gen_range(1..=3)), q(rng.gen_range(-9..=9), rng.gen_range(1..=3)))))
}
