//! Single-qubit linear algebra: 2x2 complex matrices, Bloch vectors, states,
//! and the closed-form qubit fidelity.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest tolerated anti-Hermitian residual when decomposing a matrix.
pub const HERMITICITY_TOL: f64 = 1e-10;
/// Slack allowed on the Bloch-ball constraint `|v| <= 1`.
pub const STATE_NORM_TOL: f64 = 1e-12;

/// Dense 2x2 complex matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexMatrix2 {
    entries: [[Complex64; 2]; 2],
}

impl ComplexMatrix2 {
    pub fn new(entries: [[Complex64; 2]; 2]) -> Self {
        Self { entries }
    }

    pub fn zero() -> Self {
        Self::new([[Complex64::new(0.0, 0.0); 2]; 2])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        m.entries[0][0] = Complex64::new(1.0, 0.0);
        m.entries[1][1] = Complex64::new(1.0, 0.0);
        m
    }

    pub fn sigma_x() -> Self {
        let mut m = Self::zero();
        m.entries[0][1] = Complex64::new(1.0, 0.0);
        m.entries[1][0] = Complex64::new(1.0, 0.0);
        m
    }

    pub fn sigma_y() -> Self {
        let mut m = Self::zero();
        m.entries[0][1] = Complex64::new(0.0, -1.0);
        m.entries[1][0] = Complex64::new(0.0, 1.0);
        m
    }

    pub fn sigma_z() -> Self {
        let mut m = Self::zero();
        m.entries[0][0] = Complex64::new(1.0, 0.0);
        m.entries[1][1] = Complex64::new(-1.0, 0.0);
        m
    }

    /// Builds `t0*I + v1*sigma_x + v2*sigma_y + v3*sigma_z`.
    pub fn from_pauli(t0: f64, v: BlochVector) -> Self {
        Self::new([
            [Complex64::new(t0 + v.x3, 0.0), Complex64::new(v.x1, -v.x2)],
            [Complex64::new(v.x1, v.x2), Complex64::new(t0 - v.x3, 0.0)],
        ])
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i][j]
    }

    pub fn trace(&self) -> Complex64 {
        self.entries[0][0] + self.entries[1][1]
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero();
        for i in 0..2 {
            for j in 0..2 {
                out.entries[i][j] = self.entries[j][i].conj();
            }
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..2 {
                    acc += self.entries[i][k] * rhs.entries[k][j];
                }
                out.entries[i][j] = acc;
            }
        }
        out
    }

    /// Largest entrywise absolute difference to `rhs`.
    pub fn max_abs_diff(&self, rhs: &Self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((self.entries[i][j] - rhs.entries[i][j]).norm());
            }
        }
        worst
    }

    /// Largest entry of the anti-Hermitian part `(m - m^dag)/2`.
    pub fn hermiticity_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                let anti = (self.entries[i][j] - self.entries[j][i].conj()) * 0.5;
                worst = worst.max(anti.norm());
            }
        }
        worst
    }
}

/// Real 3-vector in the Bloch parameterization `rho = (I + v . sigma)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl BlochVector {
    pub fn new(x1: f64, x2: f64, x3: f64) -> Self {
        Self { x1, x2, x3 }
    }

    pub fn norm_squared(&self) -> f64 {
        self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3
    }

    pub fn norm(&self) -> f64 {
        self.norm_squared().sqrt()
    }

    pub fn dot(&self, rhs: &Self) -> f64 {
        self.x1 * rhs.x1 + self.x2 * rhs.x2 + self.x3 * rhs.x3
    }

    pub fn distance(&self, rhs: &Self) -> f64 {
        let d = Self::new(self.x1 - rhs.x1, self.x2 - rhs.x2, self.x3 - rhs.x3);
        d.norm()
    }
}

/// Qubit density operator stored by its Bloch vector.
///
/// Construction enforces `|v| <= 1 + 1e-12`, so both eigenvalues
/// `(1 +- |v|)/2` stay nonnegative within tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState {
    bloch: BlochVector,
}

impl QubitState {
    pub fn from_bloch(v: BlochVector) -> Result<Self> {
        let n = v.norm();
        if n > 1.0 + STATE_NORM_TOL {
            return Err(Error::BlochNormExceeded(n));
        }
        Ok(Self { bloch: v })
    }

    /// Maximally mixed state `I/2`.
    pub fn maximally_mixed() -> Self {
        Self {
            bloch: BlochVector::new(0.0, 0.0, 0.0),
        }
    }

    pub(crate) fn from_bloch_unchecked(v: BlochVector) -> Self {
        Self { bloch: v }
    }

    pub fn bloch(&self) -> BlochVector {
        self.bloch
    }

    pub fn matrix(&self) -> ComplexMatrix2 {
        ComplexMatrix2::from_pauli(
            0.5,
            BlochVector::new(
                self.bloch.x1 * 0.5,
                self.bloch.x2 * 0.5,
                self.bloch.x3 * 0.5,
            ),
        )
    }

    /// `det rho = (1 - |v|^2)/4`.
    pub fn determinant(&self) -> f64 {
        0.25 * (1.0 - self.bloch.norm_squared())
    }

    pub fn purity(&self) -> f64 {
        0.5 * (1.0 + self.bloch.norm_squared())
    }
}

/// Splits a Hermitian matrix as `m = t0*I + sum_k v_k sigma_k`.
///
/// Fails with `NonHermitian` when the anti-Hermitian residual exceeds 1e-10;
/// the components are read from the Hermitian part, so reconstruction matches
/// Hermitian inputs to rounding.
pub fn pauli_decompose(m: &ComplexMatrix2) -> Result<(f64, BlochVector)> {
    let residual = m.hermiticity_residual();
    if residual > HERMITICITY_TOL {
        return Err(Error::NonHermitian(residual));
    }
    let m00 = m.entry(0, 0);
    let m11 = m.entry(1, 1);
    let h10 = (m.entry(1, 0) + m.entry(0, 1).conj()) * 0.5;
    let t0 = 0.5 * (m00.re + m11.re);
    let v = BlochVector::new(h10.re, h10.im, 0.5 * (m00.re - m11.re));
    Ok((t0, v))
}

/// Builds the density matrix `(I + v . sigma)/2` after validating `|v| <= 1`.
pub fn bloch_to_state(v: BlochVector) -> Result<QubitState> {
    QubitState::from_bloch(v)
}

/// `Tr(rho sigma) = (1 + a . b)/2` for states with Bloch vectors `a`, `b`.
pub fn state_overlap(a: &QubitState, b: &QubitState) -> f64 {
    0.5 * (1.0 + a.bloch().dot(&b.bloch()))
}

/// Uhlmann fidelity of two qubit states,
/// `F = Tr(rho sigma) + 2 sqrt(det rho det sigma)`.
///
/// Tiny negative determinants from rounding are clamped to zero; anything
/// below -1e-12 is rejected.
pub fn fidelity_qubit(a: &QubitState, b: &QubitState) -> Result<f64> {
    let da = a.determinant();
    let db = b.determinant();
    for d in [da, db] {
        if d < -1e-12 {
            return Err(Error::NegativeDeterminant(d));
        }
    }
    Ok(state_overlap(a, b) + 2.0 * (da.max(0.0) * db.max(0.0)).sqrt())
}
