//! Spreads, covariance matrices, and the uncertainty-principle checks:
//! Heisenberg products in transform domains, the Robertson-Schrödinger
//! matrix inequality over non-standard forms, Hardy decay
//! classification, and the Paley-Wiener growth bound.

pub mod hardy;
pub mod paley;

use nalgebra::{Complex, DMatrix};
use thiserror::Error;

use crate::lct::{lct_fast, min_oversample, LctError};
use crate::nd::Sampled2d;
use crate::phase_space::{wigner, wtheta_from_wigner, PhaseSpaceError};
use crate::signal::{hw_translate, GaussianSpec, SampledSignal, SignalError};
use crate::symplectic::{
    coupling_matrix, in_sp_theta, standard_j, FreeSymplectic, SymplecticError, SymplecticFormNS,
    SymplecticMatrix,
};
use crate::tolerances::TOL_RS;

pub use hardy::{
    balancing_transform, hardy_classify_params, hardy_fit, hardy_nd_eigs, HardyClass,
    HardyClassification, NdHardyReport,
};
pub use paley::{paley_wiener_verify, PaleyWienerReport, PwSample};

#[derive(Debug, Error)]
pub enum UncertaintyError {
    #[error("signal is not normalized: ||f|| = {0}")]
    NotNormalized(f64),
    #[error("signal mean is not centered: <z> = ({0}, {1})")]
    MeanNotCentered(f64, f64),
    #[error("|g|^2 at the window edge is {edge:.3e} of the peak; spread unreliable")]
    HeavyTails { edge: f64 },
    #[error("P does not preserve the form (residual {0:.3e})")]
    NotInSpTheta(f64),
    #[error("signal is not Gaussian-enveloped (fit R² = {r2:.4}); classification refused")]
    InsufficientDecay { r2: f64 },
    #[error("support violation: |f| exceeds the floor outside radius {radius}")]
    SupportViolation { radius: f64 },
    #[error("degenerate pair: a1 b2 - a2 b1 = {0:.3e}")]
    DegeneratePair(f64),
    #[error("invalid parameter: {0}")]
    BadParameter(String),
    #[error(transparent)]
    Lct(#[from] LctError),
    #[error(transparent)]
    Symplectic(#[from] SymplecticError),
    #[error(transparent)]
    PhaseSpace(#[from] PhaseSpaceError),
    #[error(transparent)]
    Signal(#[from] SignalError),
}

/// Mean, spread, and norm of a transformed signal.
#[derive(Debug, Clone, Copy)]
pub struct SpreadReport {
    /// ⟨ξ⟩, normalized by ‖f‖².
    pub mean: f64,
    /// Δ_S ξ² = ∫ (ξ − ⟨ξ⟩)² |Ŝf|² dξ (not normalized).
    pub spread: f64,
    /// ‖f‖₂².
    pub norm_sq: f64,
}

/// Identity or a free matrix as the transform of a spread computation.
#[derive(Debug, Clone)]
pub enum SpreadDomain {
    Identity,
    Transformed(FreeSymplectic),
}

const EDGE_TAIL_LIMIT: f64 = 1e-10;

fn density_moments(g: &SampledSignal) -> Result<SpreadReport, UncertaintyError> {
    let n = g.len();
    let peak = g
        .values
        .iter()
        .map(|v| v.norm_sqr())
        .fold(0.0f64, f64::max);
    let edge = g.values[0].norm_sqr().max(g.values[n - 1].norm_sqr());
    if peak > 0.0 && edge > EDGE_TAIL_LIMIT * peak {
        return Err(UncertaintyError::HeavyTails { edge: edge / peak });
    }
    let mut mass = 0.0;
    let mut first = 0.0;
    for (j, x) in g.grid.points().enumerate() {
        let w = if j == 0 || j == n - 1 { 0.5 } else { 1.0 };
        let p = w * g.values[j].norm_sqr();
        mass += p;
        first += p * x;
    }
    let norm_sq = mass * g.grid.dx;
    let mean = first / mass;
    let mut spread = 0.0;
    for (j, x) in g.grid.points().enumerate() {
        let w = if j == 0 || j == n - 1 { 0.5 } else { 1.0 };
        spread += w * g.values[j].norm_sqr() * (x - mean) * (x - mean);
    }
    Ok(SpreadReport {
        mean,
        spread: spread * g.grid.dx,
        norm_sq,
    })
}

/// Spread of the signal in a transform domain (or directly for the
/// identity). The oversample factor of the fast transform is chosen
/// automatically.
pub fn spread(f: &SampledSignal, domain: &SpreadDomain) -> Result<SpreadReport, UncertaintyError> {
    match domain {
        SpreadDomain::Identity => density_moments(f),
        SpreadDomain::Transformed(s) => {
            let os = min_oversample(&f.grid, s).max(2);
            let g = lct_fast(f, s, os)?;
            density_moments(&g)
        }
    }
}

/// One Heisenberg inequality instance.
#[derive(Debug, Clone, Copy)]
pub struct HeisenbergCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
}

fn spread_about(g: &SampledSignal, center: f64) -> Result<f64, UncertaintyError> {
    let n = g.len();
    let peak = g
        .values
        .iter()
        .map(|v| v.norm_sqr())
        .fold(0.0f64, f64::max);
    let edge = g.values[0].norm_sqr().max(g.values[n - 1].norm_sqr());
    if peak > 0.0 && edge > EDGE_TAIL_LIMIT * peak {
        return Err(UncertaintyError::HeavyTails { edge: edge / peak });
    }
    let mut acc = 0.0;
    for (j, x) in g.grid.points().enumerate() {
        let w = if j == 0 || j == n - 1 { 0.5 } else { 1.0 };
        acc += w * g.values[j].norm_sqr() * (x - center) * (x - center);
    }
    Ok(acc * g.grid.dx)
}

fn transform_or_identity(
    f: &SampledSignal,
    s: &SymplecticMatrix,
) -> Result<SampledSignal, UncertaintyError> {
    if (s.entries() - DMatrix::identity(2, 2)).amax() < 1e-14 {
        return Ok(f.clone());
    }
    let free = s.as_free()?;
    let os = min_oversample(&f.grid, &free).max(2);
    Ok(lct_fast(f, &free, os)?)
}

/// Heisenberg product in two transform domains:
/// lhs = ∫(x−a)²|Ŝ¹f|² · ∫(ξ−b)²|Ŝ²f|², rhs the sharp bound
/// ‖f‖⁴/(16π²)·|(S⁽¹⁾J(S⁽²⁾)ᵀ)_{jk}|². Identity matrices short-circuit
/// the transform. n = 1 path (j = k = 1).
pub fn heisenberg_check(
    f: &SampledSignal,
    s1: &SymplecticMatrix,
    s2: &SymplecticMatrix,
    a: f64,
    b: f64,
) -> Result<HeisenbergCheck, UncertaintyError> {
    let g1 = transform_or_identity(f, s1)?;
    let g2 = transform_or_identity(f, s2)?;
    let v1 = spread_about(&g1, a)?;
    let v2 = spread_about(&g2, b)?;
    let norm_sq = density_moments(&g1)?.norm_sq;
    let bound = crate::symplectic::heisenberg_bound_matrix(s1, s2)[(0, 0)];
    let pi = std::f64::consts::PI;
    let rhs = norm_sq * norm_sq / (16.0 * pi * pi) * bound * bound;
    let lhs = v1 * v2;
    Ok(HeisenbergCheck {
        lhs,
        rhs,
        slack: lhs - rhs,
    })
}

/// n = 2 separable Heisenberg check with the trace-form comparison
/// diagnostic alongside.
#[derive(Debug, Clone, Copy)]
pub struct HeisenbergNdCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    /// Tr[B⁻¹ Cov_ξ (B⁻¹)ᵀ]·‖|x|f‖² for the S2 transform, reported as a
    /// diagnostic only; it is an alternative, asymmetric bound form.
    pub trace_form_lhs: f64,
    pub trace_form_rhs: f64,
}

/// Δ_{S1}x · Δ_{S2}ξ against (‖f‖²/4π)·Σ_j |(S⁽¹⁾J(S⁽²⁾)ᵀ)_{jj}| for
/// separable 2D signals and diagonal-block matrices.
pub fn heisenberg_nd(
    f: &Sampled2d,
    s1: &SymplecticMatrix,
    s2: &SymplecticMatrix,
    oversample: usize,
) -> Result<HeisenbergNdCheck, UncertaintyError> {
    let id = DMatrix::identity(4, 4);
    let t1 = if (s1.entries() - &id).amax() < 1e-14 {
        f.clone()
    } else {
        crate::lct::lct_nd_separable(f, &s1.as_free()?, oversample)?
    };
    let t2 = if (s2.entries() - &id).amax() < 1e-14 {
        f.clone()
    } else {
        crate::lct::lct_nd_separable(f, &s2.as_free()?, oversample)?
    };
    let (_m1, sp1, n1sq) = t1.spread();
    let (_m2, sp2, _n2sq) = t2.spread();
    let bound = crate::symplectic::heisenberg_bound_matrix(s1, s2);
    let pi = std::f64::consts::PI;
    let sum_diag: f64 = (0..2).map(|j| bound[(j, j)].abs()).sum();
    let lhs = (sp1 * sp2).sqrt();
    let rhs = n1sq / (4.0 * pi) * sum_diag;

    // trace-form diagnostic: B of S2 against the covariance of its
    // transform, versus n²‖f‖⁴/16π²
    let b2 = s2.blocks().b;
    let trace_form = if b2.clone().lu().try_inverse().is_some() {
        let binv = b2.lu().try_inverse().unwrap();
        let cov = covariance_2d(&t2);
        let m = &binv * cov * binv.transpose();
        let (_mm, spx, _n) = f.spread();
        (m.trace() * spx, 4.0 * n1sq * n1sq / (16.0 * pi * pi))
    } else {
        (f64::NAN, f64::NAN)
    };
    Ok(HeisenbergNdCheck {
        lhs,
        rhs,
        slack: lhs - rhs,
        trace_form_lhs: trace_form.0,
        trace_form_rhs: trace_form.1,
    })
}

fn covariance_2d(g: &Sampled2d) -> DMatrix<f64> {
    let (mean, _sp, _n) = g.spread();
    let (n0, n1) = (g.grid0.n, g.grid1.n);
    let mut c = DMatrix::zeros(2, 2);
    for i0 in 0..n0 {
        let w0 = if i0 == 0 || i0 == n0 - 1 { 0.5 } else { 1.0 };
        let x0 = g.grid0.x(i0) - mean[0];
        for i1 in 0..n1 {
            let w1 = if i1 == 0 || i1 == n1 - 1 { 0.5 } else { 1.0 };
            let x1 = g.grid1.x(i1) - mean[1];
            let p = w0 * w1 * g.values[i0 * n1 + i1].norm_sqr();
            c[(0, 0)] += p * x0 * x0;
            c[(0, 1)] += p * x0 * x1;
            c[(1, 1)] += p * x1 * x1;
        }
    }
    c[(1, 0)] = c[(0, 1)];
    c * (g.grid0.dx * g.grid1.dx)
}

/// Options for the covariance computation.
#[derive(Debug, Clone, Copy)]
pub struct CovarianceOptions {
    /// Normalize and mean-center the signal automatically instead of
    /// erroring when the preconditions fail.
    pub auto_fix: bool,
}

impl Default for CovarianceOptions {
    fn default() -> Self {
        Self { auto_fix: true }
    }
}

/// Σ_{αβ} = ∫ z_α z_β W(z) dz for a normalized, mean-centered signal,
/// computed from the Wigner field. Returns the (possibly fixed) signal
/// used alongside the matrix.
pub fn covariance_sigma(
    f: &SampledSignal,
    opts: CovarianceOptions,
) -> Result<(DMatrix<f64>, SampledSignal), UncertaintyError> {
    let mut g = f.clone();
    let norm = crate::signal::norm2(&g);
    if (norm - 1.0).abs() > 1e-6 {
        if opts.auto_fix {
            g.normalize();
        } else {
            return Err(UncertaintyError::NotNormalized(norm));
        }
    }
    let w = wigner(&g)?;
    let mx = w.moment(1, 0)?;
    let mxi = w.moment(0, 1)?;
    if mx.abs() > 1e-6 || mxi.abs() > 1e-6 {
        if opts.auto_fix {
            g = hw_translate(&g, (-mx, -mxi)).signal;
        } else {
            return Err(UncertaintyError::MeanNotCentered(mx, mxi));
        }
    }
    let w = wigner(&g)?;
    let mut sigma = DMatrix::zeros(2, 2);
    sigma[(0, 0)] = w.moment(2, 0)?;
    sigma[(1, 1)] = w.moment(0, 2)?;
    let cross = w.moment(1, 1)?;
    sigma[(0, 1)] = cross;
    sigma[(1, 0)] = cross;
    Ok((sigma, g))
}

/// Robertson-Schrödinger report for a pair of symplectic matrices.
#[derive(Debug, Clone)]
pub struct CovarianceReport {
    pub sigma: DMatrix<f64>,
    pub upsilon: DMatrix<f64>,
    pub omega: SymplecticFormNS,
    /// Smallest eigenvalue of the Hermitian matrix Υ + (i/4π)Ω.
    pub min_eig: f64,
    /// n = 1 scalar form: Υ₁₁Υ₂₂ − Υ₁₂² − (a₂b₁ − a₁b₂)²/(16π²).
    pub scalar_slack: f64,
}

impl CovarianceReport {
    /// Nonnegativity criterion min_eig ≥ −tol·(1 + ‖Υ‖_max).
    pub fn positive_semidefinite(&self) -> bool {
        self.min_eig >= -TOL_RS * (1.0 + self.upsilon.amax())
    }
}

/// Smallest eigenvalue of the Hermitian matrix M + (i/4π)Ω formed in
/// complex arithmetic and handed to a symmetric eigensolver.
pub fn min_eig_hermitian(m: &DMatrix<f64>, omega: &DMatrix<f64>) -> f64 {
    let n = m.nrows();
    let quarter_pi = 1.0 / (4.0 * std::f64::consts::PI);
    let h = DMatrix::from_fn(n, n, |i, j| Complex::new(m[(i, j)], quarter_pi * omega[(i, j)]));
    let eig = h.symmetric_eigen();
    eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min)
}

/// Full Robertson-Schrödinger check: Σ from the Wigner field,
/// Υ = DΣDᵀ through the coupling matrix, Ω = DJDᵀ, and the smallest
/// eigenvalue of Υ + (i/4π)Ω.
pub fn rs_check(
    f: &SampledSignal,
    s1: &SymplecticMatrix,
    s2: &SymplecticMatrix,
) -> Result<CovarianceReport, UncertaintyError> {
    let d = coupling_matrix(s1, s2)?;
    let (sigma, _g) = covariance_sigma(f, CovarianceOptions::default())?;
    let dm = d.matrix();
    let upsilon = dm * &sigma * dm.transpose();
    let omega = d.target_form().clone();
    let min_eig = min_eig_hermitian(&upsilon, omega.omega());
    let pi = std::f64::consts::PI;
    let b1 = s1.blocks();
    let b2 = s2.blocks();
    let coupling_det = b2.a[(0, 0)] * b1.b[(0, 0)] - b1.a[(0, 0)] * b2.b[(0, 0)];
    let scalar_slack = upsilon[(0, 0)] * upsilon[(1, 1)]
        - upsilon[(0, 1)] * upsilon[(0, 1)]
        - coupling_det * coupling_det / (16.0 * pi * pi);
    Ok(CovarianceReport {
        sigma,
        upsilon,
        omega,
        min_eig,
        scalar_slack,
    })
}

/// Independent route to Υ: second moments of the resampled ϑ-Wigner
/// field itself. Used to cross-validate [`rs_check`].
pub fn upsilon_from_wtheta_moments(
    f: &SampledSignal,
    s1: &SymplecticMatrix,
    s2: &SymplecticMatrix,
) -> Result<DMatrix<f64>, UncertaintyError> {
    let d = coupling_matrix(s1, s2)?;
    let mut g = f.clone();
    g.normalize();
    let w = wigner(&g)?;
    let mx = w.moment(1, 0)?;
    let mxi = w.moment(0, 1)?;
    let g = hw_translate(&g, (-mx, -mxi)).signal;
    let w = wigner(&g)?;
    // the quadratic weight amplifies interpolation noise; refine harder
    // than the default resampling path
    let wt = crate::phase_space::wtheta_resampled(&w, &d, 8);
    let mut u = DMatrix::zeros(2, 2);
    u[(0, 0)] = wt.moment(2, 0)?;
    u[(1, 1)] = wt.moment(0, 2)?;
    let cross = wt.moment(1, 1)?;
    u[(0, 1)] = cross;
    u[(1, 0)] = cross;
    Ok(u)
}

/// Congruence probe: does PΥPᵀ + (i/4π)Ω stay positive semidefinite for
/// P in the ϑ-symplectic group of the report's form?
pub fn rs_invariance_probe(
    report: &CovarianceReport,
    p: &DMatrix<f64>,
) -> Result<bool, UncertaintyError> {
    let omega = report.omega.omega();
    let resid = (p * omega * p.transpose() - omega).amax();
    if !in_sp_theta(p, &report.omega, 1e-8) {
        return Err(UncertaintyError::NotInSpTheta(resid));
    }
    let transformed = p * &report.upsilon * p.transpose();
    let min_eig = min_eig_hermitian(&transformed, omega);
    let before = report.positive_semidefinite();
    let after = min_eig >= -TOL_RS * (1.0 + transformed.amax());
    Ok(before == after)
}

/// The Gaussian that saturates the Heisenberg bound for an (S1, S2)
/// pair with a₁b₂ − a₂b₁ ≠ 0: decay α = π/|a₁b₂ − a₂b₁| and quadratic
/// phase coefficient (a₂d₁ − b₂c₁)/(a₁b₂ − a₂b₁), unit-normalized.
pub fn saturating_gaussian(
    s1: &SymplecticMatrix,
    s2: &SymplecticMatrix,
) -> Result<GaussianSpec, UncertaintyError> {
    if s1.n() != 1 || s2.n() != 1 {
        return Err(UncertaintyError::BadParameter(
            "saturating gaussian is one-dimensional".into(),
        ));
    }
    let m1 = s1.entries();
    let m2 = s2.entries();
    let (a1, b1, c1, d1) = (m1[(0, 0)], m1[(0, 1)], m1[(1, 0)], m1[(1, 1)]);
    let (a2, b2) = (m2[(0, 0)], m2[(0, 1)]);
    let denom = a1 * b2 - a2 * b1;
    if denom.abs() < 1e-12 {
        return Err(UncertaintyError::DegeneratePair(denom));
    }
    let alpha = std::f64::consts::PI / denom.abs();
    let phase = (a2 * d1 - b2 * c1) / denom;
    Ok(GaussianSpec {
        alpha,
        phase,
        center: 0.0,
        momentum: 0.0,
        amplitude: num_complex::Complex64::new(
            (2.0 * alpha / std::f64::consts::PI).powf(0.25),
            0.0,
        ),
    })
}

/// Convenience: the J-form report entries for the standard pair, used
/// by tests and the verification CLI.
pub fn standard_j_form(n: usize) -> DMatrix<f64> {
    standard_j(n)
}
