//! Kernel/range chain invariants, Drazin data and pole structure of a square
//! matrix.
//!
//! For `T` on `ℂ^d` and `n ≥ 0`:
//!
//! * `c_n  = dim R(T^n)/R(T^{n+1}) = codim(R(T) + N(T^n))`
//! * `c'_n = dim N(T^{n+1})/N(T^n) = dim(N(T) ∩ R(T^n))`
//! * `k_n  = c_n − c_{n+1} = c'_n − c'_{n+1}`
//!
//! Both forms of `c_n` and `c'_n` are computed independently and must agree.
//!
//! In finite dimension every `c_n`, `c'_n` is finite, so the essential
//! ascent and descent are always 0 and are reported as such rather than
//! computed. Every range is closed and `k_n` vanishes eventually, so every
//! matrix has topological uniform descent and is Drazin invertible.

use num_traits::Zero;
use serde::Serialize;

use crate::error::Result;
use crate::linalg::{kernel, subspace_intersect, subspace_sum, ExactMatrix, Subspace};
use crate::scalar::ExactScalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainReport {
    pub dim: usize,
    /// `c_0 ..= c_dim`.
    pub c: Vec<usize>,
    /// `c'_0 ..= c'_dim`.
    pub c_prime: Vec<usize>,
    /// `k_0 .. k_{dim-1}`; every later `k_n` is zero.
    pub k: Vec<usize>,
    pub ascent: usize,
    pub descent: usize,
    /// Least `d` with `k_n = 0` for all `n ≥ d`.
    pub uniform_descent_degree: usize,
    pub drazin_index: usize,
    pub essential_ascent: usize,
    pub essential_descent: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DrazinData {
    pub index: usize,
    pub inverse: ExactMatrix,
    pub core_part: ExactMatrix,
    pub nilpotent_part: ExactMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointClassification {
    pub lambda: ExactScalar,
    pub in_spectrum: bool,
    /// Order of `lambda` as a pole of the resolvent; 0 at resolvent points.
    pub pole_order: usize,
    pub algebraic_multiplicity: usize,
    pub chain: ChainReport,
}

/// `R(T^n)` and `N(T^n)` for `n = 0 ..= dim + 1`.
///
/// Raw powers of a dense matrix have entries that grow geometrically, so
/// the chains are pushed forward on canonical bases instead:
/// `R(T^{n+1}) = T R(T^n)`, and `N(T^{n+1})` is the kernel of `A T` when
/// the rows of `A` cut out `N(T^n)`. Once `rank T^n = rank T^{n+1}` both
/// chains are constant, so the remaining entries are copies.
struct PowerChain {
    ranges: Vec<Subspace>,
    kernels: Vec<Subspace>,
}

impl PowerChain {
    fn new(m: &ExactMatrix, dim: usize) -> Result<Self> {
        let mt = m.transpose();
        let mut ranges = vec![Subspace::full(dim)];
        let mut kernels = vec![Subspace::zero(dim)];
        let mut cut: Vec<Vec<ExactScalar>> = Subspace::full(dim).basis().to_vec();
        let mut stable = false;
        for n in 0..=dim {
            if stable {
                ranges.push(ranges[n].clone());
                kernels.push(kernels[n].clone());
                continue;
            }
            let image: Vec<_> = ranges[n].basis().iter().map(|v| m.apply(v)).collect();
            let next_range = Subspace::span(dim, &image)?;
            let pulled: Vec<_> = cut.iter().map(|row| mt.apply(row)).collect();
            cut = Subspace::span(dim, &pulled)?.basis().to_vec();
            let next_kernel = if cut.is_empty() { Subspace::full(dim) } else { kernel(&ExactMatrix::from_rows(cut.clone())?) };
            debug_assert_eq!(next_range.dim() + next_kernel.dim(), dim);
            stable = next_range.dim() == ranges[n].dim();
            ranges.push(next_range);
            kernels.push(next_kernel);
        }
        Ok(PowerChain { ranges, kernels })
    }

    fn rank(&self, n: usize) -> usize {
        self.ranges[n].dim()
    }

    /// First `n` with `rank T^n = rank T^{n+1}`.
    fn stable_index(&self) -> usize {
        (0..self.ranges.len() - 1).find(|&n| self.rank(n) == self.rank(n + 1)).expect("rank chain stabilizes by n = dim")
    }
}

/// Chain invariants of a square matrix.
pub fn chain_report(m: &ExactMatrix) -> Result<ChainReport> {
    let dim = m.require_square()?;
    chain_from(&PowerChain::new(m, dim)?, dim)
}

fn chain_from(pc: &PowerChain, dim: usize) -> Result<ChainReport> {
    let range_t = &pc.ranges[1];
    let kernel_t = &pc.kernels[1];

    let mut c = Vec::with_capacity(dim + 1);
    let mut c_prime = Vec::with_capacity(dim + 1);
    for n in 0..=dim {
        let c_quotient = pc.rank(n) - pc.rank(n + 1);
        let c_sum = subspace_sum(range_t, &pc.kernels[n])?.codim();
        assert_eq!(c_quotient, c_sum, "c_{n}: quotient and sum forms disagree");
        c.push(c_quotient);

        let c_prime_quotient = pc.kernels[n + 1].dim() - pc.kernels[n].dim();
        let c_prime_meet = subspace_intersect(kernel_t, &pc.ranges[n])?.dim();
        assert_eq!(c_prime_quotient, c_prime_meet, "c'_{n}: quotient and meet forms disagree");
        c_prime.push(c_prime_meet);
    }

    let k: Vec<usize> = (0..dim)
        .map(|n| {
            let from_c = c[n] - c[n + 1];
            let from_c_prime = c_prime[n] - c_prime[n + 1];
            assert_eq!(from_c, from_c_prime, "k_{n} telescoping mismatch");
            from_c
        })
        .collect();

    let first_zero = |s: &[usize]| s.iter().position(|&x| x == 0).expect("chain stabilizes by n = dim");
    let ascent = first_zero(&c_prime);
    let descent = first_zero(&c);
    let uniform_descent_degree = k.iter().rposition(|&x| x != 0).map_or(0, |i| i + 1);
    let drazin_index = pc.stable_index();
    debug_assert_eq!(ascent, descent);
    debug_assert_eq!(descent, drazin_index);

    Ok(ChainReport {
        dim,
        c,
        c_prime,
        k,
        ascent,
        descent,
        uniform_descent_degree,
        drazin_index,
        essential_ascent: 0,
        essential_descent: 0,
    })
}

/// Drazin inverse via the core-nilpotent splitting `ℂ^d = R(T^k) ⊕ N(T^k)`
/// at `k` = Drazin index.
pub fn drazin(m: &ExactMatrix) -> Result<DrazinData> {
    let dim = m.require_square()?;
    let pc = PowerChain::new(m, dim)?;
    let index = pc.stable_index();
    if index == 0 {
        return Ok(DrazinData {
            index,
            inverse: m.inverse()?,
            core_part: m.clone(),
            nilpotent_part: ExactMatrix::zeros(dim, dim),
        });
    }
    let core_space = &pc.ranges[index];
    let nil_space = &pc.kernels[index];
    let r = core_space.dim();
    if r == 0 {
        return Ok(DrazinData {
            index,
            inverse: ExactMatrix::zeros(dim, dim),
            core_part: ExactMatrix::zeros(dim, dim),
            nilpotent_part: m.clone(),
        });
    }

    let mut cols = core_space.basis().to_vec();
    cols.extend(nil_space.basis().iter().cloned());
    let basis = ExactMatrix::from_columns(dim, &cols);
    let basis_inv = basis.inverse()?;
    // In the adapted basis T is block diagonal; invert the core block only.
    let adapted = &(&basis_inv * m) * &basis;
    let mut core_block = ExactMatrix::zeros(r, r);
    for i in 0..r {
        for j in 0..r {
            core_block.set(i, j, adapted.get(i, j).clone());
        }
    }
    let core_inv = core_block.inverse()?;
    let mut padded = ExactMatrix::zeros(dim, dim);
    for i in 0..r {
        for j in 0..r {
            padded.set(i, j, core_inv.get(i, j).clone());
        }
    }
    let inverse = &(&basis * &padded) * &basis_inv;
    let core_part = &(m * &inverse) * m;
    let nilpotent_part = m - &core_part;
    Ok(DrazinData { index, inverse, core_part, nilpotent_part })
}

impl DrazinData {
    /// Checks `DTD = D`, `TD = DT`, `T^{k+1}D = T^k`, `T = C + N`,
    /// `CN = NC = 0` and `N^k = 0`.
    pub fn satisfies_axioms(&self, m: &ExactMatrix) -> bool {
        let d = &self.inverse;
        let k = self.index;
        let dtd = &(d * m) * d;
        let commute = &(m * d) == &(d * m);
        let tk = m.pow(k).expect("square");
        let tk1d = &m.pow(k + 1).expect("square") * d;
        let split = &(&self.core_part + &self.nilpotent_part) == m;
        let annihilate = (&self.core_part * &self.nilpotent_part).is_zero()
            && (&self.nilpotent_part * &self.core_part).is_zero();
        let nil = if k == 0 {
            self.nilpotent_part.is_zero()
        } else {
            self.nilpotent_part.pow(k).expect("square").is_zero()
        };
        &dtd == d && commute && tk1d == tk && split && annihilate && nil
    }
}

/// Pole structure of `m − λI`.
pub fn classify_point(m: &ExactMatrix, lambda: &ExactScalar) -> Result<PointClassification> {
    let shifted = m.shift(lambda)?;
    let dim = shifted.require_square()?;
    let pc = PowerChain::new(&shifted, dim)?;
    let chain = chain_from(&pc, dim)?;
    let algebraic_multiplicity = pc.kernels[dim].dim();
    let in_spectrum = pc.kernels[1].dim() > 0;
    debug_assert_eq!(in_spectrum, chain.ascent > 0);
    Ok(PointClassification {
        lambda: lambda.clone(),
        in_spectrum,
        pole_order: chain.ascent,
        algebraic_multiplicity,
        chain,
    })
}

/// Largest power of `m` that is still nonzero plus one, i.e. the nilpotency
/// order; `None` if `m` is not nilpotent.
pub fn nilpotency_order(m: &ExactMatrix) -> Result<Option<usize>> {
    let dim = m.require_square()?;
    let mut p = ExactMatrix::identity(dim);
    for n in 0..=dim {
        if p.entries().iter().all(Zero::is_zero) {
            return Ok(Some(n));
        }
        p = &p * m;
    }
    Ok(None)
}
