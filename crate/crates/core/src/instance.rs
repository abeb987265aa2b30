//! Seeded test instances `(A, b, x*)` with a prescribed spectrum.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rand_mt::Mt;

use crate::error::{Error, Result};
use crate::linalg::{Spectrum, SymMatrix, Vector};

/// How the target condition number is imposed on `A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SpectrumConvention {
    /// Eigenvalues of `A` are `linspace(1/κ, 1, n)`, so `cond(A) = κ`.
    #[default]
    Prescribed,
    /// `A = XᵀX` where the singular values of `X` are `linspace(1/κ, 1, n)`.
    /// Eigenvalues are the squares of that grid and `cond(A) = κ²`. This is
    /// the construction used by the reference warm-start experiment.
    Gram,
}

impl fmt::Display for SpectrumConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpectrumConvention::Prescribed => "prescribed",
            SpectrumConvention::Gram => "gram",
        })
    }
}

impl FromStr for SpectrumConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "prescribed" => Ok(SpectrumConvention::Prescribed),
            "gram" => Ok(SpectrumConvention::Gram),
            other => Err(Error::invalid(format!(
                "unknown spectrum convention `{other}` (expected prescribed or gram)"
            ))),
        }
    }
}

/// A linear system `A x* = b` with `‖A‖ = 1`, SPD `A`, and unit-norm `x*`.
#[derive(Debug, Clone)]
pub struct LinearSystemInstance {
    pub a: SymMatrix,
    pub b: Vector,
    pub x_star: Vector,
    /// Target condition number the instance was generated with.
    pub kappa: f64,
    pub seed: u64,
    pub convention: SpectrumConvention,
}

impl LinearSystemInstance {
    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    /// Condition number `A` actually has by construction: `κ` for the
    /// prescribed convention, `κ²` for the Gram one.
    pub fn effective_kappa(&self) -> f64 {
        match self.convention {
            SpectrumConvention::Prescribed => self.kappa,
            SpectrumConvention::Gram => self.kappa * self.kappa,
        }
    }
}

/// `n` evenly spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![hi],
        _ => {
            let step = (hi - lo) / (n - 1) as f64;
            let mut out: Vec<f64> = (0..n).map(|i| lo + step * i as f64).collect();
            out[n - 1] = hi;
            out
        }
    }
}

/// Source of the standard normals an instance is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Sampler {
    /// ChaCha8 seeded with `seed_from_u64`, ziggurat normals.
    #[default]
    ChaCha8,
    /// 32-bit Mersenne Twister seeded with `init_genrand(seed)` and polar
    /// Box-Muller normals: the same stream as numpy's legacy
    /// `np.random.seed(seed); np.random.randn(...)`. Seeds must fit in 32 bits.
    Mt19937,
}

impl fmt::Display for Sampler {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sampler::ChaCha8 => "chacha8",
            Sampler::Mt19937 => "mt19937",
        })
    }
}

impl FromStr for Sampler {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "chacha8" | "chacha" => Ok(Sampler::ChaCha8),
            "mt19937" | "numpy" => Ok(Sampler::Mt19937),
            other => Err(Error::invalid(format!("unknown sampler `{other}` (expected chacha8 or mt19937)"))),
        }
    }
}

/// Legacy numpy Gaussian stream: polar method, second variate cached.
struct LegacyGauss {
    mt: Mt,
    cached: Option<f64>,
}

impl LegacyGauss {
    fn uniform(&mut self) -> f64 {
        let a = (self.mt.next_u32() >> 5) as f64;
        let b = (self.mt.next_u32() >> 6) as f64;
        (a * 67_108_864.0 + b) / 9_007_199_254_740_992.0
    }

    fn next(&mut self) -> f64 {
        if let Some(g) = self.cached.take() {
            return g;
        }
        loop {
            let x1 = 2.0 * self.uniform() - 1.0;
            let x2 = 2.0 * self.uniform() - 1.0;
            let r2 = x1 * x1 + x2 * x2;
            if r2 < 1.0 && r2 != 0.0 {
                let f = (-2.0 * r2.ln() / r2).sqrt();
                self.cached = Some(f * x1);
                return f * x2;
            }
        }
    }
}

// One stream per instance, so the size gap between variants is irrelevant.
#[allow(clippy::large_enum_variant)]
enum NormalStream {
    ChaCha(ChaCha8Rng),
    Legacy(LegacyGauss),
}

impl NormalStream {
    fn new(sampler: Sampler, seed: u64) -> Result<Self> {
        Ok(match sampler {
            Sampler::ChaCha8 => NormalStream::ChaCha(ChaCha8Rng::seed_from_u64(seed)),
            Sampler::Mt19937 => {
                let seed = u32::try_from(seed)
                    .map_err(|_| Error::invalid(format!("mt19937 seeds must fit in 32 bits (got {seed})")))?;
                NormalStream::Legacy(LegacyGauss {
                    mt: Mt::new(seed),
                    cached: None,
                })
            }
        })
    }

    fn draw(&mut self, count: usize) -> Vec<f64> {
        match self {
            NormalStream::ChaCha(rng) => (0..count).map(|_| StandardNormal.sample(rng)).collect(),
            NormalStream::Legacy(g) => (0..count).map(|_| g.next()).collect(),
        }
    }
}

/// `n` i.i.d. standard normals from a ChaCha8 stream seeded with `seed`.
pub fn gaussian_vector(n: usize, seed: u64) -> Vector {
    let mut stream = NormalStream::ChaCha(ChaCha8Rng::seed_from_u64(seed));
    Vector::from_vec(stream.draw(n))
}

/// [`generate_with`] using the prescribed-spectrum convention.
pub fn generate(n: usize, kappa: f64, seed: u64) -> Result<LinearSystemInstance> {
    generate_with(n, kappa, seed, SpectrumConvention::Prescribed)
}

/// [`generate_sampled`] with the ChaCha8 sampler.
pub fn generate_with(
    n: usize,
    kappa: f64,
    seed: u64,
    convention: SpectrumConvention,
) -> Result<LinearSystemInstance> {
    generate_sampled(n, kappa, seed, convention, Sampler::ChaCha8)
}

/// Draws an instance from a single normal stream seeded with `seed`.
///
/// The stream first fills an `n×n` standard-normal matrix (row-major) whose
/// QR orthogonal factor becomes the eigenbasis `Q`, then draws `n` normals
/// for `x*`, which is normalized to unit length. `A = Q diag(λ) Qᵀ` with `λ`
/// set by `convention`, and `b = A x*`.
pub fn generate_sampled(
    n: usize,
    kappa: f64,
    seed: u64,
    convention: SpectrumConvention,
    sampler: Sampler,
) -> Result<LinearSystemInstance> {
    if n < 2 {
        return Err(Error::invalid(format!("n must be >= 2 (got {n})")));
    }
    if !(kappa >= 1.0 && kappa.is_finite()) {
        return Err(Error::invalid(format!("kappa must be >= 1 (got {kappa})")));
    }

    let mut stream = NormalStream::new(sampler, seed)?;
    let gaussian = DMatrix::from_row_slice(n, n, &stream.draw(n * n));
    let q = gaussian.qr().q();
    let x_raw = Vector::from_vec(stream.draw(n));
    let x_star = &x_raw / x_raw.norm();

    let grid = linspace(1.0 / kappa, 1.0, n);
    let eigenvalues: Vec<f64> = match convention {
        SpectrumConvention::Prescribed => grid,
        SpectrumConvention::Gram => grid.iter().map(|s| s * s).collect(),
    };
    let spectrum = Spectrum::new(Vector::from_vec(eigenvalues), q)?;
    let a = SymMatrix::from_spectrum(spectrum);
    let b = a.mul_vec(&x_star);

    Ok(LinearSystemInstance {
        a,
        b,
        x_star,
        kappa,
        seed,
        convention,
    })
}
