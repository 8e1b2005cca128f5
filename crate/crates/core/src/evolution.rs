//! Step evolution on the `2m`-dimensional reasoning subspace and its
//! continuous interpolation.
//!
//! In the basis of cycle states `b_0, ..., b_{N-1}` (N = 2m, step order) the
//! step matrix `U_D` is the cyclic shift `b_t -> b_{t+1 mod N}`. A cyclic
//! shift is diagonalized by the discrete Fourier frame
//!
//! ```text
//! v_k = N^(-1/2) * sum_t exp(-2 pi i k t / N) b_t,    U_D v_k = exp(i theta_k) v_k
//! ```
//!
//! with `theta_k = 2 pi k / N` reduced to the principal interval. From there
//! `log U_D = sum_k i theta_k |v_k><v_k|`, the Hamiltonian is
//! `H = i log U_D = -sum_k theta_k |v_k><v_k|`, and the one-parameter group
//! is `U(tau) = exp(tau log U_D) = exp(-i H tau)`, so `U(1) = U_D`.
//!
//! Every operator here is a polynomial in the shift, hence circulant; it is
//! stored as its first column and applied by cyclic convolution.

use std::collections::HashMap;
use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::index::{kappa, EmbeddedIndex, TensorIndex};
use crate::state::{cycle_states, sentence_dimension, SparseState};

/// Where the eigenphase of the eigenvalue `-1` is placed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PiBranch {
    /// Principal interval `(-pi, pi]`.
    #[default]
    Upper,
    /// `[-pi, pi)`. Only fractional times differ.
    Lower,
}

/// The reasoning subspace of one configuration together with its spectral
/// data. Immutable once built; safe to share across threads.
#[derive(Debug, Clone)]
pub struct SubspaceEvolution {
    m: usize,
    n: u32,
    basis: Vec<TensorIndex>,
    position: HashMap<TensorIndex, usize>,
    eigenphases: Vec<f64>,
    branch: PiBranch,
}

pub fn build_evolution(config: &Configuration) -> Result<SubspaceEvolution> {
    build_evolution_with_branch(config, PiBranch::Upper)
}

pub fn build_evolution_with_branch(
    config: &Configuration,
    branch: PiBranch,
) -> Result<SubspaceEvolution> {
    let basis = cycle_states(config)?;
    Ok(SubspaceEvolution::from_basis(config.m(), basis, branch))
}

/// Principal eigenphases of the N-cycle shift, in Fourier order `k = 0..N`.
pub fn shift_eigenphases(dim: usize, branch: PiBranch) -> Vec<f64> {
    (0..dim)
        .map(|k| {
            if 2 * k == dim {
                match branch {
                    PiBranch::Upper => PI,
                    PiBranch::Lower => -PI,
                }
            } else if 2 * k < dim {
                2.0 * PI * k as f64 / dim as f64
            } else {
                -2.0 * PI * (dim - k) as f64 / dim as f64
            }
        })
        .collect()
}

/// `exp(-2 pi i j / N)` with `j` reduced mod N first.
fn root(j: usize, dim: usize) -> Complex64 {
    Complex64::from_polar(1.0, -2.0 * PI * (j % dim) as f64 / dim as f64)
}

impl SubspaceEvolution {
    fn from_basis(m: usize, basis: Vec<TensorIndex>, branch: PiBranch) -> Self {
        let dim = basis.len();
        let position = basis.iter().cloned().enumerate().map(|(t, b)| (b, t)).collect();
        SubspaceEvolution {
            m,
            n: sentence_dimension(m),
            basis,
            position,
            eigenphases: shift_eigenphases(dim, branch),
            branch,
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Subspace dimension `2m`.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[TensorIndex] {
        &self.basis
    }

    pub fn branch(&self) -> PiBranch {
        self.branch
    }

    /// `theta_k`, the phase of the eigenvalue of `U_D` on `v_k`.
    pub fn eigenphases(&self) -> &[f64] {
        &self.eigenphases
    }

    /// Eigenvalues of `H`, i.e. `-theta_k`.
    pub fn energies(&self) -> Vec<f64> {
        self.eigenphases.iter().map(|t| -t).collect()
    }

    /// Step-order position of a basis tuple.
    pub fn position(&self, index: &TensorIndex) -> Option<usize> {
        self.position.get(index).copied()
    }

    /// Successor of a basis tuple under one reasoning step.
    pub fn successor(&self, index: &TensorIndex) -> Option<&TensorIndex> {
        self.position(index).map(|t| &self.basis[(t + 1) % self.dim()])
    }

    /// `U_D` in the step-ordered basis.
    pub fn step_matrix(&self) -> DMatrix<Complex64> {
        let dim = self.dim();
        DMatrix::from_fn(dim, dim, |s, t| {
            if s == (t + 1) % dim {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::default()
            }
        })
    }

    /// `U_D` with rows and columns ordered by ascending embedded index, the
    /// order in which the subspace sits inside the full space.
    pub fn step_matrix_embedded(&self) -> (Vec<EmbeddedIndex>, DMatrix<Complex64>) {
        let dim = self.dim();
        let mut order: Vec<(EmbeddedIndex, usize)> = self
            .basis
            .iter()
            .enumerate()
            .map(|(t, b)| (kappa(b, self.n), t))
            .collect();
        order.sort();
        let mut rank = vec![0; dim];
        for (r, (_, t)) in order.iter().enumerate() {
            rank[*t] = r;
        }
        let mut matrix = DMatrix::zeros(dim, dim);
        for t in 0..dim {
            matrix[(rank[(t + 1) % dim], rank[t])] = Complex64::new(1.0, 0.0);
        }
        (order.into_iter().map(|(e, _)| e).collect(), matrix)
    }

    /// Unitary frame whose column `k` is the eigenvector `v_k`.
    pub fn fourier_frame(&self) -> DMatrix<Complex64> {
        let dim = self.dim();
        let scale = 1.0 / (dim as f64).sqrt();
        DMatrix::from_fn(dim, dim, |t, k| root(k * t, dim) * scale)
    }

    /// `R` with `R U_D R^{-1}` diagonal; the adjoint of the Fourier frame.
    pub fn diagonalizer(&self) -> DMatrix<Complex64> {
        self.fourier_frame().adjoint()
    }

    /// First column `c_d = N^-1 sum_k f(theta_k) exp(-2 pi i k d / N)` of the
    /// circulant `sum_k f(theta_k) |v_k><v_k|`.
    fn spectral_column(&self, f: impl Fn(f64) -> Complex64) -> Vec<Complex64> {
        let dim = self.dim();
        let weights: Vec<Complex64> = self.eigenphases.iter().map(|&t| f(t)).collect();
        (0..dim)
            .map(|d| {
                weights
                    .iter()
                    .enumerate()
                    .map(|(k, w)| w * root(k * d, dim))
                    .sum::<Complex64>()
                    / dim as f64
            })
            .collect()
    }

    fn circulant(column: &[Complex64]) -> DMatrix<Complex64> {
        let dim = column.len();
        DMatrix::from_fn(dim, dim, |s, t| column[(s + dim - t) % dim])
    }

    /// Principal logarithm of `U_D`.
    pub fn log_step(&self) -> DMatrix<Complex64> {
        Self::circulant(&self.spectral_column(|theta| Complex64::new(0.0, theta)))
    }

    /// `H = i log U_D`, Hermitian.
    pub fn hamiltonian(&self) -> DMatrix<Complex64> {
        Self::circulant(&self.spectral_column(|theta| Complex64::new(-theta, 0.0)))
    }

    /// `U(tau) = exp(tau log U_D)` as a matrix in the step-ordered basis.
    pub fn propagator(&self, tau: f64) -> DMatrix<Complex64> {
        Self::circulant(&self.propagator_column(tau))
    }

    fn propagator_column(&self, tau: f64) -> Vec<Complex64> {
        self.spectral_column(|theta| Complex64::from_polar(1.0, theta * tau))
    }

    /// Coordinates of `state` in the step-ordered basis.
    pub fn coordinates(&self, state: &SparseState) -> Result<DVector<Complex64>> {
        let outside = Error::SupportOutsideSubspace { dim: self.dim() };
        if state.m() != self.m || state.n() != self.n {
            return Err(outside);
        }
        let mut coords = DVector::zeros(self.dim());
        for (index, amp) in state.terms() {
            let t = self.position(index).ok_or_else(|| outside.clone())?;
            coords[t] += amp;
        }
        Ok(coords)
    }

    /// Sparse state from step-ordered coordinates; exact zeros are dropped.
    pub fn state_from(&self, coords: &DVector<Complex64>) -> SparseState {
        let amplitudes = self
            .basis
            .iter()
            .zip(coords.iter())
            .filter(|(_, a)| **a != Complex64::default())
            .map(|(b, a)| (b.clone(), *a))
            .collect();
        SparseState::from_terms_unchecked(self.m, self.n, amplitudes)
    }

    /// Exact integer stepping: `U_D^steps`, negative for backwards.
    pub fn step(&self, state: &SparseState, steps: i64) -> Result<SparseState> {
        let coords = self.coordinates(state)?;
        let dim = self.dim() as i64;
        let shift = steps.rem_euclid(dim) as usize;
        let moved = DVector::from_fn(self.dim(), |s, _| coords[(s + self.dim() - shift) % self.dim()]);
        Ok(self.state_from(&moved))
    }

    /// Applies `U(tau)`. Integer `tau` is an exact permutation of the
    /// amplitudes; any other `tau` goes through the spectral frame.
    pub fn propagate(&self, state: &SparseState, tau: f64) -> Result<SparseState> {
        if tau.fract() == 0.0 && tau.abs() < 9e15 {
            return self.step(state, tau as i64);
        }
        let coords = self.coordinates(state)?;
        let column = self.propagator_column(tau);
        let dim = self.dim();
        let out = DVector::from_fn(dim, |s, _| {
            (0..dim).map(|t| column[(s + dim - t) % dim] * coords[t]).sum()
        });
        Ok(self.state_from(&out))
    }
}
