//! Entanglement transmitted through one side of a maximally entangled pair:
//! X-patterned two-qubit states, one-sided channel action, concurrence by
//! closed form and by spectral computation, and entanglement of formation.

use num_complex::Complex64;

use crate::channel::ChannelParams;
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix2;

const HERMITICITY_TOL: f64 = 1e-12;
const X_PATTERN_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-12;
const POSITIVITY_TOL: f64 = 1e-12;

/// Dense complex 4x4 matrix, enough linear algebra for two-qubit work.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix4 {
    entries: [[Complex64; 4]; 4],
}

impl Matrix4 {
    pub fn new(entries: [[Complex64; 4]; 4]) -> Self {
        Self { entries }
    }

    pub fn zero() -> Self {
        Self {
            entries: [[Complex64::new(0.0, 0.0); 4]; 4],
        }
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            m.entries[i][i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i][j]
    }

    pub fn trace(&self) -> Complex64 {
        (0..4).map(|i| self.entries[i][i]).sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..4 {
                    acc += self.entries[i][k] * other.entries[k][j];
                }
                out.entries[i][j] = acc;
            }
        }
        out
    }

    /// Entrywise complex conjugate (no transpose).
    pub fn conj(&self) -> Self {
        let mut out = *self;
        for row in out.entries.iter_mut() {
            for e in row.iter_mut() {
                *e = e.conj();
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                out.entries[i][j] = self.entries[j][i].conj();
            }
        }
        out
    }

    pub fn scale(&self, factor: f64) -> Self {
        let mut out = *self;
        for row in out.entries.iter_mut() {
            for e in row.iter_mut() {
                *e *= factor;
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = *self;
        for i in 0..4 {
            for j in 0..4 {
                out.entries[i][j] += other.entries[i][j];
            }
        }
        out
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((self.entries[i][j] - other.entries[i][j]).norm());
            }
        }
        worst
    }

    pub fn hermiticity_residual(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    /// Largest magnitude outside the X sparsity pattern (diagonal plus the
    /// two anti-diagonal corner pairs).
    pub fn x_pattern_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                let allowed = i == j
                    || (i, j) == (0, 3)
                    || (i, j) == (3, 0)
                    || (i, j) == (1, 2)
                    || (i, j) == (2, 1);
                if !allowed {
                    worst = worst.max(self.entries[i][j].norm());
                }
            }
        }
        worst
    }
}

/// Kronecker product of two 2x2 matrices, first factor on the slow index.
pub fn kron(a: &ComplexMatrix2, b: &ComplexMatrix2) -> Matrix4 {
    let mut out = Matrix4::zero();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out.entries[2 * i + k][2 * j + l] = a.entry(i, j) * b.entry(k, l);
                }
            }
        }
    }
    out
}

/// Two-qubit density matrix supported on the X sparsity pattern.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitXState {
    m: Matrix4,
}

impl TwoQubitXState {
    /// Validates Hermiticity, the X pattern, unit trace, and positivity
    /// (through the two 2x2 sub-blocks the pattern decouples into).
    pub fn from_matrix(m: Matrix4) -> Result<Self> {
        let herm = m.hermiticity_residual();
        if herm > HERMITICITY_TOL {
            return Err(Error::NonHermitian(herm));
        }
        let sparsity = m.x_pattern_residual();
        if sparsity > X_PATTERN_TOL {
            return Err(Error::NotXState(sparsity));
        }
        let trace = m.trace().re;
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(Error::OutOfRange(trace));
        }
        for (i, j) in [(0usize, 3usize), (1, 2)] {
            let (lo, _) = hermitian_block_eigs(m.entry(i, i).re, m.entry(j, j).re, m.entry(i, j));
            if lo < -POSITIVITY_TOL {
                return Err(Error::OutOfRange(lo));
            }
        }
        Ok(Self { m })
    }

    /// The maximally entangled state with all four corner entries `1/2`.
    pub fn maximally_entangled() -> Self {
        let mut m = Matrix4::zero();
        let half = Complex64::new(0.5, 0.0);
        m.entries[0][0] = half;
        m.entries[0][3] = half;
        m.entries[3][0] = half;
        m.entries[3][3] = half;
        Self { m }
    }

    pub fn matrix(&self) -> Matrix4 {
        self.m
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.m.entry(i, j)
    }
}

/// Smaller and larger eigenvalue of the Hermitian 2x2 block
/// `[[a, off], [conj(off), d]]`.
fn hermitian_block_eigs(a: f64, d: f64, off: Complex64) -> (f64, f64) {
    let mid = 0.5 * (a + d);
    let half_gap = 0.5 * (a - d);
    let radius = (half_gap * half_gap + off.norm_sqr()).sqrt();
    (mid - radius, mid + radius)
}

/// Eigenvalues of a general complex 2x2 block via the quadratic formula.
fn complex_block_eigs(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
) -> (Complex64, Complex64) {
    let half_trace = 0.5 * (a + d);
    let disc = ((a - d) * (a - d) + 4.0 * b * c).sqrt();
    (half_trace + 0.5 * disc, half_trace - 0.5 * disc)
}

/// Complex-linear extension of the channel's Bloch action to an arbitrary
/// 2x2 block, used to act on the second tensor factor.
fn apply_block(params: &ChannelParams, b: [[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
    let i = Complex64::new(0.0, 1.0);
    let t0 = 0.5 * (b[0][0] + b[1][1]);
    let v3 = 0.5 * (b[0][0] - b[1][1]);
    let v1 = 0.5 * (b[0][1] + b[1][0]);
    let v2 = 0.5 * i * (b[0][1] - b[1][0]);
    let w1 = params.lambda1 * v1;
    let w2 = params.lambda1 * v2;
    let w3 = params.lambda_star * t0 + params.lambda3 * v3;
    [[t0 + w3, w1 - i * w2], [w1 + i * w2, t0 - w3]]
}

/// Action of `identity (x) channel` on a full 4x4 matrix, block by block.
fn one_sided_action(params: &ChannelParams, m: &Matrix4) -> Matrix4 {
    let mut out = Matrix4::zero();
    for bi in 0..2 {
        for bj in 0..2 {
            let block = [
                [m.entry(2 * bi, 2 * bj), m.entry(2 * bi, 2 * bj + 1)],
                [m.entry(2 * bi + 1, 2 * bj), m.entry(2 * bi + 1, 2 * bj + 1)],
            ];
            let mapped = apply_block(params, block);
            for (k, row) in mapped.iter().enumerate() {
                for (l, value) in row.iter().enumerate() {
                    out.entries[2 * bi + k][2 * bj + l] = *value;
                }
            }
        }
    }
    out
}

/// Sends half of an X state through the channel. The X pattern is preserved
/// and the output is revalidated as a physical state.
pub fn evolve_one_sided(params: &ChannelParams, state: &TwoQubitXState) -> Result<TwoQubitXState> {
    params.require_cp()?;
    TwoQubitXState::from_matrix(one_sided_action(params, &state.matrix()))
}

/// The spin-flipped conjugate `(sigma_y (x) sigma_y) conj(rho) (sigma_y (x) sigma_y)`.
fn spin_flip(m: &Matrix4) -> Matrix4 {
    let yy = kron(&ComplexMatrix2::sigma_y(), &ComplexMatrix2::sigma_y());
    yy.mul(&m.conj()).mul(&yy)
}

/// The (generally non-Hermitian) product `rho * spin_flip(rho)` whose
/// eigenvalues drive the concurrence.
pub fn x_matrix(state: &TwoQubitXState) -> Matrix4 {
    let rho = state.matrix();
    rho.mul(&spin_flip(&rho))
}

/// Eigenvalues of the concurrence product for the evolved maximally
/// entangled state, in closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConcurrenceSpectrum {
    /// `(2 |lambda1| + S)^2 / 16`.
    pub r_plus: f64,
    /// `(2 |lambda1| - S)^2 / 16`.
    pub r_minus: f64,
    /// The doubly degenerate pair `T^2 / 16`.
    pub r_degenerate: f64,
}

impl ConcurrenceSpectrum {
    pub fn sorted_descending(&self) -> [f64; 4] {
        let mut values = [
            self.r_plus,
            self.r_degenerate,
            self.r_degenerate,
            self.r_minus,
        ];
        values.sort_by(|a, b| b.partial_cmp(a).unwrap());
        values
    }

    /// Concurrence from the sorted spectrum:
    /// `max(0, sqrt(r1) - sqrt(r2) - sqrt(r3) - sqrt(r4))`.
    pub fn wootters_concurrence(&self) -> f64 {
        let r = self.sorted_descending();
        (r[0].sqrt() - r[1].sqrt() - r[2].sqrt() - r[3].sqrt()).max(0.0)
    }

    /// True when `r_plus >= r_degenerate >= r_minus`, i.e. the labeled
    /// branches already arrive sorted.
    pub fn labels_are_sorted(&self) -> bool {
        self.r_plus >= self.r_degenerate - 1e-12 && self.r_degenerate >= self.r_minus - 1e-12
    }
}

/// Closed-form concurrence spectrum, with
/// `S = sqrt((1 + lambda3)^2 - lambda_star^2)` and
/// `T = sqrt((1 - lambda3)^2 - lambda_star^2)`. Radicands are clamped at
/// zero: complete positivity makes `S` real, and a negative `T` radicand
/// only occurs outside the region where the spectrum is meaningful.
pub fn concurrence_spectrum_closed(params: &ChannelParams) -> Result<ConcurrenceSpectrum> {
    params.require_cp()?;
    let ls2 = params.lambda_star * params.lambda_star;
    let s_plus = 1.0 + params.lambda3;
    let s_minus = 1.0 - params.lambda3;
    let s = (s_plus * s_plus - ls2).max(0.0).sqrt();
    let t = (s_minus * s_minus - ls2).max(0.0).sqrt();
    let two_l1 = 2.0 * params.lambda1.abs();
    Ok(ConcurrenceSpectrum {
        r_plus: (two_l1 + s).powi(2) / 16.0,
        r_minus: (two_l1 - s).powi(2) / 16.0,
        r_degenerate: t * t / 16.0,
    })
}

/// Concurrence of the evolved maximally entangled state in closed form:
/// `max(0, 2 |lambda1| - T) / 2`.
pub fn concurrence_closed(params: &ChannelParams) -> Result<f64> {
    params.require_cp()?;
    let ls2 = params.lambda_star * params.lambda_star;
    let s_minus = 1.0 - params.lambda3;
    let t = (s_minus * s_minus - ls2).max(0.0).sqrt();
    Ok(0.5 * (2.0 * params.lambda1.abs() - t).max(0.0))
}

/// Concurrence of an arbitrary X state through the spectral route: build
/// the concurrence product, solve the two decoupled 2x2 eigenproblems,
/// clamp the tiny negative parts rounding produces, and apply the
/// square-root difference formula.
pub fn concurrence_spectral(state: &TwoQubitXState) -> Result<f64> {
    let x = x_matrix(state);
    let (a1, a2) = complex_block_eigs(x.entry(0, 0), x.entry(0, 3), x.entry(3, 0), x.entry(3, 3));
    let (b1, b2) = complex_block_eigs(x.entry(1, 1), x.entry(1, 2), x.entry(2, 1), x.entry(2, 2));
    let mut values = [
        a1.re.max(0.0),
        a2.re.max(0.0),
        b1.re.max(0.0),
        b2.re.max(0.0),
    ];
    values.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Ok((values[0].sqrt() - values[1].sqrt() - values[2].sqrt() - values[3].sqrt()).max(0.0))
}

/// Binary entropy in bits, with the `0 log 0 = 0` convention.
fn binary_entropy(x: f64) -> f64 {
    let mut h = 0.0;
    if x > 0.0 {
        h -= x * x.log2();
    }
    let y = 1.0 - x;
    if y > 0.0 {
        h -= y * y.log2();
    }
    h
}

/// Entanglement of formation of a two-qubit state with concurrence `c`:
/// `h((1 + sqrt(1 - c^2)) / 2)` with `h` the binary entropy. Accepts a
/// rounding margin of `1e-12` outside `[0, 1]` and clamps it away.
pub fn entanglement_of_formation(concurrence: f64) -> Result<f64> {
    if !(-1e-12..=1.0 + 1e-12).contains(&concurrence) {
        return Err(Error::OutOfRange(concurrence));
    }
    let c = concurrence.clamp(0.0, 1.0);
    let root = ((1.0 - c) * (1.0 + c)).max(0.0).sqrt();
    Ok(binary_entropy(0.5 * (1.0 + root)))
}
