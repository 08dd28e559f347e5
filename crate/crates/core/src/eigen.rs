//! Exact characteristic polynomials and Gaussian-rational root extraction.
//!
//! Roots are located numerically and only used as candidates: each candidate
//! is snapped to the lattice `Z[i]/L` (where `L` clears the denominators of
//! the monic square-free part, so every Gaussian-rational root lies on that
//! lattice) and then verified by exact evaluation. Multiplicities come from
//! exact repeated division.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::chain::{classify_point, PointClassification};
use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;
use crate::region::SpectralRegion;
use crate::scalar::ExactScalar;

/// Polynomial with Gaussian-rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly(Vec<ExactScalar>);

impl Poly {
    pub fn new(mut coeffs: Vec<ExactScalar>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(ExactScalar::zero());
        }
        Poly(coeffs)
    }

    pub fn coeffs(&self) -> &[ExactScalar] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_zero()
    }

    fn lead(&self) -> &ExactScalar {
        self.0.last().expect("nonempty")
    }

    pub fn eval(&self, x: &ExactScalar) -> ExactScalar {
        let mut acc = ExactScalar::zero();
        for c in self.0.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale(&BigRational::from_integer(BigInt::from(i))))
                .collect(),
        )
    }

    pub fn monic(&self) -> Poly {
        let inv = self.lead().inverse().expect("nonzero polynomial");
        Poly::new(self.0.iter().map(|c| c * &inv).collect())
    }

    /// Euclidean division over the field.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut rem = self.0.clone();
        if self.degree() < d.degree() {
            return (Poly::new(vec![ExactScalar::zero()]), self.clone());
        }
        let mut quot = vec![ExactScalar::zero(); self.degree() - d.degree() + 1];
        let lead_inv = d.lead().inverse().expect("nonzero");
        for shift in (0..quot.len()).rev() {
            let q = &rem[shift + d.degree()] * &lead_inv;
            if q.is_zero() {
                continue;
            }
            for (i, c) in d.0.iter().enumerate() {
                rem[shift + i] -= &(&q * c);
            }
            quot[shift] = q;
        }
        rem.truncate(d.degree().max(1));
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    fn to_complex(&self) -> Vec<Complex64> {
        self.0
            .iter()
            .map(|c| {
                let (re, im) = c.to_f64_pair();
                Complex64::new(re, im)
            })
            .collect()
    }
}

/// `det(λI − m)` by the Faddeev-LeVerrier recursion (exact in characteristic 0).
pub fn characteristic_polynomial(m: &ExactMatrix) -> Result<Poly> {
    let n = m.require_square()?;
    let mut coeffs = vec![ExactScalar::zero(); n + 1];
    coeffs[n] = ExactScalar::one();
    let mut aux = ExactMatrix::zeros(n, n);
    let id = ExactMatrix::identity(n);
    for k in 1..=n {
        aux = &(m * &aux) + &id.scale(&coeffs[n - k + 1]);
        let t = (m * &aux).trace();
        coeffs[n - k] = -t.scale(&BigRational::new(BigInt::one(), BigInt::from(k)));
    }
    Ok(Poly::new(coeffs))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Eigenvalue {
    #[serde(serialize_with = "crate::json::ser_scalar")]
    pub value: ExactScalar,
    pub multiplicity: usize,
}

/// All Gaussian-rational eigenvalues with algebraic multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenvalueList {
    pub eigenvalues: Vec<Eigenvalue>,
    /// True iff the characteristic polynomial splits over `Q(i)`.
    pub complete: bool,
}

pub fn rational_eigenvalues(m: &ExactMatrix) -> Result<EigenvalueList> {
    let p = characteristic_polynomial(m)?;
    Ok(gaussian_rational_roots(&p))
}

/// Gaussian-rational roots of a nonzero polynomial, with multiplicity.
pub fn gaussian_rational_roots(p: &Poly) -> EigenvalueList {
    let n = p.degree();
    let p = p.monic();
    let g = p.gcd(&p.derivative());
    let squarefree = p.div_rem(&g).0.monic();

    let mut candidates = Vec::new();
    let mut remaining = squarefree;
    // A few rounds: each round works on the deflated remainder.
    for _ in 0..3 {
        if remaining.degree() == 0 {
            break;
        }
        let scale = denominator_lcm(&remaining);
        let mut found_any = false;
        for approx in approximate_roots(&remaining) {
            let Some(z) = snap(approx, &scale) else { continue };
            if !candidates.contains(&z) && remaining.eval(&z).is_zero() {
                remaining = remaining.div_rem(&linear(&z)).0;
                candidates.push(z);
                found_any = true;
            }
        }
        if !found_any {
            break;
        }
    }

    let mut eigenvalues: Vec<Eigenvalue> = candidates
        .into_iter()
        .map(|z| {
            let mut q = p.clone();
            let mut multiplicity = 0;
            loop {
                let (quot, rem) = q.div_rem(&linear(&z));
                if !rem.is_zero() {
                    break;
                }
                q = quot;
                multiplicity += 1;
            }
            Eigenvalue { value: z, multiplicity }
        })
        .collect();
    eigenvalues.sort_by(|a, b| a.value.cmp(&b.value));
    let found: usize = eigenvalues.iter().map(|e| e.multiplicity).sum();
    EigenvalueList { eigenvalues, complete: found == n }
}

fn linear(z: &ExactScalar) -> Poly {
    Poly::new(vec![-z, ExactScalar::one()])
}

fn denominator_lcm(p: &Poly) -> BigInt {
    p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(&c.denominator_lcm()))
}

fn snap(w: Complex64, scale: &BigInt) -> Option<ExactScalar> {
    let s = scale.to_f64()?;
    if !w.re.is_finite() || !w.im.is_finite() {
        return None;
    }
    let re = BigInt::from((w.re * s).round() as i128);
    let im = BigInt::from((w.im * s).round() as i128);
    Some(ExactScalar::new(
        BigRational::new(re, scale.clone()),
        BigRational::new(im, scale.clone()),
    ))
}

/// Aberth-Ehrlich iteration followed by Newton polishing, in `f64`.
fn approximate_roots(p: &Poly) -> Vec<Complex64> {
    let coeffs = p.to_complex();
    let n = p.degree();
    if n == 0 {
        return Vec::new();
    }
    let lead = coeffs[n];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    let eval = |x: Complex64| monic.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + c);
    let deriv = |x: Complex64| {
        monic
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, (i, c)| acc * x + c * i as f64)
    };
    let bound = 1.0 + monic[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(bound * 0.5, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64))
        .collect();
    for _ in 0..500 {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let f = eval(z[i]);
            let df = deriv(z[i]);
            if f.norm() == 0.0 {
                continue;
            }
            let ratio = f / df;
            let sum: Complex64 = (0..n).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let step = ratio / (1.0 - ratio * sum);
            if step.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm());
            }
        }
        if max_step < 1e-15 * bound {
            break;
        }
    }
    for zi in &mut z {
        for _ in 0..4 {
            let df = deriv(*zi);
            if df.norm() > 0.0 {
                let step = eval(*zi) / df;
                if step.is_finite() {
                    *zi -= step;
                }
            }
        }
    }
    z
}

/// The spectrum of a matrix as a finite point region. Fails with
/// [`Error::IncompleteFactorization`] when some eigenvalue is not a Gaussian
/// rational.
pub fn point_spectrum_region(m: &ExactMatrix) -> Result<SpectralRegion> {
    let list = rational_eigenvalues(m)?;
    if !list.complete {
        let found = list.eigenvalues.iter().map(|e| e.multiplicity).sum();
        return Err(Error::IncompleteFactorization { found, degree: m.rows() });
    }
    Ok(SpectralRegion::from_points(list.eigenvalues.into_iter().map(|e| e.value)))
}

/// Classification of `m − λI` at every Gaussian-rational eigenvalue.
pub fn classify_spectrum(m: &ExactMatrix) -> Result<(EigenvalueList, Vec<PointClassification>)> {
    let list = rational_eigenvalues(m)?;
    let points = list
        .eigenvalues
        .iter()
        .map(|e| classify_point(m, &e.value))
        .collect::<Result<Vec<_>>>()?;
    Ok((list, points))
}
