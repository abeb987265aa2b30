//! Dense real symmetric linear algebra.
//!
//! Everything downstream (instances, resolvents, polynomial solvers) works
//! through the spectral decomposition `M = V Λ Vᵀ`, computed once per matrix
//! by a cyclic Jacobi sweep and cached behind a [`OnceLock`].

use std::sync::OnceLock;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

pub type Vector = DVector<f64>;

/// Relative symmetry tolerance, measured against the largest entry.
const SYMMETRY_TOL: f64 = 1e-12;
/// Jacobi stops once the off-diagonal Frobenius norm drops below this times `‖M‖_F`.
const JACOBI_TOL: f64 = 1e-12;
const JACOBI_MAX_SWEEPS: usize = 100;
/// Relative threshold under which the smallest eigenvalue counts as zero.
const SINGULAR_TOL: f64 = 1e-14;

/// Eigenpairs of a symmetric matrix, eigenvalues ascending.
///
/// Column `j` of `eigenvectors` pairs with `eigenvalues[j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    eigenvalues: Vector,
    eigenvectors: DMatrix<f64>,
}

impl Spectrum {
    /// Builds a spectrum from explicit eigenpairs. The eigenvalues must be
    /// ascending and the eigenvector matrix orthonormal to 1e-9.
    pub fn new(eigenvalues: Vector, eigenvectors: DMatrix<f64>) -> Result<Self> {
        let n = eigenvalues.len();
        if n == 0 {
            return Err(Error::invalid("spectrum must be non-empty"));
        }
        if eigenvectors.nrows() != n || eigenvectors.ncols() != n {
            return Err(Error::invalid(format!(
                "eigenvector matrix is {}x{}, expected {n}x{n}",
                eigenvectors.nrows(),
                eigenvectors.ncols()
            )));
        }
        if eigenvalues.iter().chain(eigenvectors.iter()).any(|x| !x.is_finite()) {
            return Err(Error::invalid("spectrum contains non-finite values"));
        }
        if eigenvalues.as_slice().windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::invalid("eigenvalues must be sorted ascending"));
        }
        let gram = eigenvectors.transpose() * &eigenvectors;
        let defect = (gram - DMatrix::identity(n, n)).norm();
        if defect > 1e-9 {
            return Err(Error::invalid(format!(
                "eigenvectors are not orthonormal (‖VᵀV − I‖_F = {defect:e})"
            )));
        }
        Ok(Self {
            eigenvalues,
            eigenvectors,
        })
    }

    pub fn eigenvalues(&self) -> &Vector {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &DMatrix<f64> {
        &self.eigenvectors
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues[self.len() - 1]
    }

    /// Eigenvector paired with the smallest eigenvalue.
    pub fn min_eigenvector(&self) -> Vector {
        self.eigenvectors.column(0).into_owned()
    }

    /// `V Λ Vᵀ`.
    pub fn reconstruct(&self) -> DMatrix<f64> {
        let scaled = &self.eigenvectors * DMatrix::from_diagonal(&self.eigenvalues);
        scaled * self.eigenvectors.transpose()
    }

    /// Applies `f(M)` to `v` as `V f(Λ) Vᵀ v`.
    pub fn apply_fn(&self, v: &Vector, f: impl Fn(f64) -> f64) -> Vector {
        let mut coords = self.eigenvectors.tr_mul(v);
        for (c, &lambda) in coords.iter_mut().zip(self.eigenvalues.iter()) {
            *c *= f(lambda);
        }
        &self.eigenvectors * coords
    }

    /// Spectrum of `shift·I + scale·M`.
    fn affine(&self, shift: f64, scale: f64) -> Spectrum {
        let mapped = self.eigenvalues.map(|l| shift + scale * l);
        if scale >= 0.0 {
            return Spectrum {
                eigenvalues: mapped,
                eigenvectors: self.eigenvectors.clone(),
            };
        }
        let n = self.len();
        let order: Vec<usize> = (0..n).rev().collect();
        Spectrum {
            eigenvalues: Vector::from_iterator(n, order.iter().map(|&i| mapped[i])),
            eigenvectors: self.eigenvectors.select_columns(&order),
        }
    }
}

/// Dense real symmetric matrix with a lazily computed, cached spectrum.
#[derive(Debug, Clone)]
pub struct SymMatrix {
    entries: DMatrix<f64>,
    spectrum: OnceLock<Spectrum>,
}

impl SymMatrix {
    /// Builds an `n×n` matrix from row-major entries.
    pub fn new(n: usize, entries: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("matrix dimension must be positive"));
        }
        if entries.len() != n * n {
            return Err(Error::invalid(format!(
                "expected {} entries for a {n}x{n} matrix, got {}",
                n * n,
                entries.len()
            )));
        }
        Self::from_dmatrix(DMatrix::from_row_slice(n, n, &entries))
    }

    pub fn from_dmatrix(entries: DMatrix<f64>) -> Result<Self> {
        let n = entries.nrows();
        if n == 0 || entries.ncols() != n {
            return Err(Error::invalid(format!(
                "matrix must be square and non-empty, got {}x{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        if entries.iter().any(|x| !x.is_finite()) {
            return Err(Error::invalid("matrix contains non-finite entries"));
        }
        let max_abs = entries.amax();
        for i in 0..n {
            for j in (i + 1)..n {
                let gap = (entries[(i, j)] - entries[(j, i)]).abs();
                if gap > SYMMETRY_TOL * max_abs {
                    return Err(Error::invalid(format!(
                        "matrix is not symmetric: |M[{i}][{j}] − M[{j}][{i}]| = {gap:e}"
                    )));
                }
            }
        }
        Ok(Self {
            entries,
            spectrum: OnceLock::new(),
        })
    }

    pub fn identity(n: usize) -> Self {
        Self::from_spectrum(Spectrum {
            eigenvalues: Vector::from_element(n, 1.0),
            eigenvectors: DMatrix::identity(n, n),
        })
    }

    pub fn diagonal(values: &[f64]) -> Result<Self> {
        Self::from_dmatrix(DMatrix::from_diagonal(&Vector::from_column_slice(values)))
    }

    /// Assembles `V Λ Vᵀ` and caches the given spectrum.
    pub fn from_spectrum(spectrum: Spectrum) -> Self {
        let mut entries = spectrum.reconstruct();
        let n = entries.nrows();
        // Exact symmetry; the product is symmetric only up to rounding.
        for i in 0..n {
            for j in (i + 1)..n {
                let avg = 0.5 * (entries[(i, j)] + entries[(j, i)]);
                entries[(i, j)] = avg;
                entries[(j, i)] = avg;
            }
        }
        Self {
            entries,
            spectrum: OnceLock::from(spectrum),
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[(i, j)]
    }

    /// The spectral decomposition, computed on first access.
    pub fn spectrum(&self) -> &Spectrum {
        self.spectrum.get_or_init(|| eig_sym(self))
    }

    pub fn is_spectrum_cached(&self) -> bool {
        self.spectrum.get().is_some()
    }

    /// Same entries, cache dropped. Forces the next spectral query to
    /// recompute from scratch.
    pub fn uncached(&self) -> Self {
        Self {
            entries: self.entries.clone(),
            spectrum: OnceLock::new(),
        }
    }

    /// `shift·I + scale·M`. A cached spectrum is carried over by spectral
    /// mapping; otherwise the result is left uncached.
    pub fn affine(&self, shift: f64, scale: f64) -> Self {
        let n = self.dim();
        let entries = &self.entries * scale + DMatrix::identity(n, n) * shift;
        let spectrum = match self.spectrum.get() {
            Some(s) => OnceLock::from(s.affine(shift, scale)),
            None => OnceLock::new(),
        };
        Self { entries, spectrum }
    }

    pub fn mul_vec(&self, v: &Vector) -> Vector {
        &self.entries * v
    }
}

impl PartialEq for SymMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries
    }
}

fn off_diagonal_norm(a: &DMatrix<f64>) -> f64 {
    let n = a.nrows();
    let mut sum = 0.0;
    for j in 0..n {
        for i in 0..n {
            if i != j {
                sum += a[(i, j)] * a[(i, j)];
            }
        }
    }
    sum.sqrt()
}

/// Cyclic Jacobi eigendecomposition.
///
/// Sweeps the strict upper triangle row by row, annihilating each `(p, q)`
/// pair with a plane rotation, until the off-diagonal Frobenius norm falls
/// below `1e-12·‖M‖_F`. The sweep order is fixed, so the result is a pure
/// function of the input entries.
pub fn eig_sym(m: &SymMatrix) -> Spectrum {
    let n = m.dim();
    let mut a = m.entries.clone();
    let mut v = DMatrix::<f64>::identity(n, n);
    let threshold = JACOBI_TOL * a.norm();

    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) <= threshold {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + theta.hypot(1.0));
                let c = 1.0 / t.hypot(1.0);
                let s = t * c;

                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].total_cmp(&a[(j, j)]));
    Spectrum {
        eigenvalues: Vector::from_iterator(n, order.iter().map(|&i| a[(i, i)])),
        eigenvectors: v.select_columns(&order),
    }
}

/// Largest absolute eigenvalue.
pub fn spectral_norm(m: &SymMatrix) -> f64 {
    let s = m.spectrum();
    s.min().abs().max(s.max().abs())
}

/// `max|λ| / min|λ|`.
pub fn condition_number(m: &SymMatrix) -> Result<f64> {
    let s = m.spectrum();
    let max_abs = spectral_norm(m);
    let min_abs = s
        .eigenvalues()
        .iter()
        .fold(f64::INFINITY, |acc, l| acc.min(l.abs()));
    let threshold = SINGULAR_TOL * max_abs;
    if min_abs < threshold || min_abs == 0.0 {
        return Err(Error::Singular { min_abs, threshold });
    }
    Ok(max_abs / min_abs)
}

fn check_len(m: &SymMatrix, v: &Vector) -> Result<()> {
    if v.len() != m.dim() {
        return Err(Error::invalid(format!(
            "vector length {} does not match matrix dimension {}",
            v.len(),
            m.dim()
        )));
    }
    Ok(())
}

/// Solves `M w = v` for positive-definite `M` through the spectrum.
pub fn solve_spd(m: &SymMatrix, v: &Vector) -> Result<Vector> {
    check_len(m, v)?;
    let s = m.spectrum();
    if s.min() <= 0.0 {
        return Err(Error::NotPositiveDefinite(s.min()));
    }
    Ok(s.apply_fn(v, |l| 1.0 / l))
}

/// Evaluates `p(M) v` for `p(x) = Σ_k coeffs[k]·(1 − x)^k`.
///
/// The polynomial is applied eigenvalue by eigenvalue with Horner's rule in
/// the variable `1 − λ`.
pub fn apply_poly(m: &SymMatrix, coeffs: &[f64], v: &Vector) -> Result<Vector> {
    check_len(m, v)?;
    if coeffs.is_empty() {
        return Err(Error::invalid("polynomial needs at least one coefficient"));
    }
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::invalid("polynomial coefficients must be finite"));
    }
    Ok(m.spectrum().apply_fn(v, |l| horner(coeffs, 1.0 - l)))
}

/// `Σ_k coeffs[k]·y^k`.
pub fn horner(coeffs: &[f64], y: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * y + c)
}
