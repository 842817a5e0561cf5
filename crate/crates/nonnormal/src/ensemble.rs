//! Seeded noise ensembles: polynomially vanishing Gaussian matrices and
//! norm-pinned random perturbations.
//!
//! Every sampler is a pure function of a [`SeedSpec`]; the generator is
//! ChaCha12 keyed by the master seed, with the trial index selecting the
//! stream, so distinct trials give independent draws and identical specs
//! give bit-identical matrices. Entries are drawn in row-major order.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::{spectra, CMat};

/// Variance regime of a vanishing Gaussian ensemble. The per-entry variance
/// is N^{-2s}, and admissibility demands it sit inside the sandwich
/// N^{-κ'} <= N^{-2s} <= N^{-(1+κ)}, i.e. (1+κ)/2 <= s <= κ'/2.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VarianceProfile {
    pub kappa: f64,
    pub kappa_prime: f64,
    /// Per-entry standard deviation is N^{-s}.
    pub s: f64,
}

impl VarianceProfile {
    pub fn new(kappa: f64, kappa_prime: f64, s: f64) -> Result<Self> {
        if !(kappa > 0.0) {
            return Err(Error::InadmissibleProfile(format!("κ = {kappa} must be > 0")));
        }
        if !(kappa_prime >= 1.0 + kappa) {
            return Err(Error::InadmissibleProfile(format!(
                "κ' = {kappa_prime} must be >= 1 + κ = {}",
                1.0 + kappa
            )));
        }
        if !(s > 0.0) {
            return Err(Error::InadmissibleProfile(format!("s = {s} must be > 0")));
        }
        let p = VarianceProfile { kappa, kappa_prime, s };
        p.validate()?;
        Ok(p)
    }

    /// Tightest profile around a given decay exponent: κ = 2s-1, κ' = 2s.
    /// The default s = 3.5 matches variance N^{-7}, i.e. a variance-1
    /// Ginibre matrix scaled by N^{-3.5}.
    pub fn from_exponent(s: f64) -> Result<Self> {
        if !(s > 0.5) {
            return Err(Error::InadmissibleProfile(format!(
                "s = {s} must exceed 1/2 for a positive κ"
            )));
        }
        VarianceProfile::new(2.0 * s - 1.0, 2.0 * s, s)
    }

    /// Re-checks the sandwich, naming the violated side.
    pub fn validate(&self) -> Result<()> {
        let lower = (1.0 + self.kappa) / 2.0;
        let upper = self.kappa_prime / 2.0;
        if self.s < lower {
            return Err(Error::InadmissibleProfile(format!(
                "variance N^(-2s) with s = {} exceeds the upper envelope N^(-1-κ): need s >= (1+κ)/2 = {lower}",
                self.s
            )));
        }
        if self.s > upper {
            return Err(Error::InadmissibleProfile(format!(
                "variance N^(-2s) with s = {} lies below the lower envelope N^(-κ'): need s <= κ'/2 = {upper}",
                self.s
            )));
        }
        Ok(())
    }

    /// Per-entry variance N^{-2s}.
    pub fn entry_variance(&self, n: usize) -> f64 {
        (n as f64).powf(-2.0 * self.s)
    }
}

/// Real (β = 1) or complex (β = 2) Gaussian entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EnsembleKind {
    Real,
    Complex,
}

impl EnsembleKind {
    pub fn beta(self) -> u8 {
        match self {
            EnsembleKind::Real => 1,
            EnsembleKind::Complex => 2,
        }
    }
}

impl std::fmt::Display for EnsembleKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EnsembleKind::Real => write!(f, "real"),
            EnsembleKind::Complex => write!(f, "complex"),
        }
    }
}

impl std::str::FromStr for EnsembleKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "real" => Ok(EnsembleKind::Real),
            "complex" => Ok(EnsembleKind::Complex),
            other => Err(Error::Config(format!(
                "unknown ensemble '{other}' (expected real|complex)"
            ))),
        }
    }
}

/// (master seed, trial index) — the full identity of one random draw.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SeedSpec {
    pub seed: u64,
    pub trial: u64,
}

impl SeedSpec {
    pub fn new(seed: u64, trial: u64) -> Self {
        SeedSpec { seed, trial }
    }

    pub fn rng(&self) -> ChaCha12Rng {
        let mut rng = ChaCha12Rng::seed_from_u64(self.seed);
        rng.set_stream(self.trial);
        rng
    }
}

/// Unit-variance Gaussian matrix: E|G_ij|² = 1, drawn row-major.
/// Complex entries split the variance evenly between real and imaginary parts.
pub fn sample_standard_gaussian(n: usize, kind: EnsembleKind, seed: SeedSpec) -> Result<CMat> {
    if n == 0 {
        return Err(Error::InvalidDimension("sample dimension must be >= 1".into()));
    }
    let mut rng = seed.rng();
    let mut buf = Vec::with_capacity(n * n);
    match kind {
        EnsembleKind::Real => {
            for _ in 0..n * n {
                let x: f64 = StandardNormal.sample(&mut rng);
                buf.push(Complex64::new(x, 0.0));
            }
        }
        EnsembleKind::Complex => {
            let scale = std::f64::consts::FRAC_1_SQRT_2;
            for _ in 0..n * n {
                let re: f64 = StandardNormal.sample(&mut rng);
                let im: f64 = StandardNormal.sample(&mut rng);
                buf.push(Complex64::new(scale * re, scale * im));
            }
        }
    }
    Ok(CMat::from_fn(n, n, |i, j| buf[i * n + j]))
}

/// Polynomially vanishing Gaussian matrix: i.i.d. centered entries with
/// per-entry variance N^{-2s}. The profile is re-validated on every call.
pub fn sample_gaussian_matrix(
    n: usize,
    profile: &VarianceProfile,
    kind: EnsembleKind,
    seed: SeedSpec,
) -> Result<CMat> {
    profile.validate()?;
    let sigma = (n as f64).powf(-profile.s);
    let g = sample_standard_gaussian(n, kind, seed)?;
    Ok(faer::Scale(Complex64::new(sigma, 0.0)) * &g)
}

/// Which norm a norm-pinned sample is rescaled in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormKind {
    HilbertSchmidt,
    Operator,
}

/// Random complex Gaussian matrix rescaled so its Hilbert-Schmidt norm is
/// exactly g.
pub fn sample_bounded_norm_matrix(n: usize, g: f64, seed: SeedSpec) -> Result<CMat> {
    sample_bounded_norm_matrix_by(n, g, seed, NormKind::HilbertSchmidt)
}

/// As [`sample_bounded_norm_matrix`], but the pinned norm is selectable.
/// Hilbert-Schmidt is the default used by the bound checks.
pub fn sample_bounded_norm_matrix_by(
    n: usize,
    g: f64,
    seed: SeedSpec,
    norm: NormKind,
) -> Result<CMat> {
    if !(g > 0.0) {
        return Err(Error::InvalidArgument(format!("norm bound g = {g} must be > 0")));
    }
    let raw = sample_standard_gaussian(n, EnsembleKind::Complex, seed)?;
    let current = match norm {
        NormKind::HilbertSchmidt => spectra::hs_norm(&raw),
        NormKind::Operator => spectra::operator_norm(&raw)?,
    };
    if current == 0.0 {
        // probability zero, but keep the contract honest
        return Err(Error::InvalidArgument("degenerate zero sample".into()));
    }
    Ok(faer::Scale(Complex64::new(g / current, 0.0)) * &raw)
}

/// Empirical operator-norm moments of the vanishing ensemble, with the
/// concentration-scale envelope 4·N^{1/2-s} for reference.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct NormMomentSummary {
    pub trials: usize,
    pub mean_opnorm: f64,
    pub mean_opnorm_sq: f64,
    pub envelope: f64,
}

pub fn gaussian_norm_moment_check(
    n: usize,
    profile: &VarianceProfile,
    kind: EnsembleKind,
    trials: usize,
    seed: u64,
) -> Result<NormMomentSummary> {
    if trials == 0 {
        return Err(Error::InvalidArgument("need at least one trial".into()));
    }
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for t in 0..trials {
        let g = sample_gaussian_matrix(n, profile, kind, SeedSpec::new(seed, t as u64))?;
        let op = spectra::operator_norm(&g)?;
        sum += op;
        sum_sq += op * op;
    }
    let m = trials as f64;
    Ok(NormMomentSummary {
        trials,
        mean_opnorm: sum / m,
        mean_opnorm_sq: sum_sq / m,
        envelope: 4.0 * (n as f64).powf(0.5 - profile.s),
    })
}
