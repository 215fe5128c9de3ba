//! Hardy-type decay classification: fitted Gaussian envelopes in the
//! signal and transform domains against the critical threshold π²/b²,
//! and the multi-dimensional eigenvalue criterion on MBᵀNB.

use nalgebra::DMatrix;

use super::UncertaintyError;
use crate::lct::{lct_fast, min_oversample};
use crate::signal::SampledSignal;
use crate::symplectic::FreeSymplectic;
use crate::tolerances::{HARDY_FIT_R2_MIN, NOISE_FLOOR, TOL_HARDY_FIT, TOL_HARDY_PARAM};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HardyClass {
    Subcritical,
    Critical,
    Supercritical,
}

/// Classification outcome with the fitted decay rates and threshold.
#[derive(Debug, Clone)]
pub struct HardyClassification {
    pub class: HardyClass,
    pub alpha: f64,
    pub beta: f64,
    /// π²/b² in one dimension.
    pub threshold: f64,
    /// Regression quality of the two envelope fits (1.0 for
    /// parameter-level classification).
    pub r2_alpha: f64,
    pub r2_beta: f64,
}

/// Classify a decay pair (α, β) against π²/b² with a relative band.
fn classify(alpha: f64, beta: f64, b: f64, band: f64) -> HardyClassification {
    let pi = std::f64::consts::PI;
    let threshold = pi * pi / (b * b);
    let ratio = alpha * beta / threshold;
    let class = if ratio > 1.0 + band {
        HardyClass::Supercritical
    } else if ratio >= 1.0 - band {
        HardyClass::Critical
    } else {
        HardyClass::Subcritical
    };
    HardyClassification {
        class,
        alpha,
        beta,
        threshold,
        r2_alpha: 1.0,
        r2_beta: 1.0,
    }
}

/// Parameter-level classification: exact inputs, tight critical band.
pub fn hardy_classify_params(
    alpha: f64,
    beta: f64,
    s: &FreeSymplectic,
) -> Result<HardyClassification, UncertaintyError> {
    if !(alpha > 0.0) || !(beta > 0.0) {
        return Err(UncertaintyError::BadParameter(format!(
            "decay rates must be positive: alpha = {alpha}, beta = {beta}"
        )));
    }
    let (_a, b, _c, _d) = s.abcd();
    Ok(classify(alpha, beta, b, TOL_HARDY_PARAM))
}

/// Least-squares line fit returning (slope, intercept, R²).
pub(crate) fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let mut syy = 0.0;
    for (&x, &y) in xs.iter().zip(ys.iter()) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return (0.0, my, 0.0);
    }
    let slope = sxy / sxx;
    let r2 = (sxy * sxy) / (sxx * syy);
    (slope, my - slope * mx, r2)
}

/// Fit a Gaussian envelope rate: regression of −log|g| against
/// (x − c)², with c the |g|²-weighted centroid, over the samples whose
/// log-depth lies in [0.2, 0.8] of the usable dynamic range (peak
/// excluded, noise floor excluded). Centering makes the fit invariant
/// under translations and modulations of the signal.
fn fit_envelope(g: &SampledSignal) -> Result<(f64, f64), UncertaintyError> {
    let peak = g.max_abs();
    if peak <= 0.0 {
        return Err(UncertaintyError::BadParameter("zero signal".into()));
    }
    let mut mass = 0.0;
    let mut first = 0.0;
    for (j, x) in g.grid.points().enumerate() {
        let p = g.values[j].norm_sqr();
        mass += p;
        first += p * x;
    }
    let center = first / mass;

    let floor = NOISE_FLOOR;
    let depth_max = -floor.ln(); // ≈ 27.6 decades of usable range
    let lo = 0.2 * depth_max;
    let hi = 0.8 * depth_max;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut usable = 0usize;
    for (j, x) in g.grid.points().enumerate() {
        let mag = g.values[j].norm() / peak;
        if mag > floor {
            usable += 1;
            let depth = -mag.ln();
            if depth >= lo && depth <= hi {
                let u = x - center;
                xs.push(u * u);
                ys.push(depth);
            }
        }
    }
    if usable < 32 {
        return Err(UncertaintyError::BadParameter(format!(
            "only {usable} samples above the noise floor; at least 32 required"
        )));
    }
    if xs.len() < 8 {
        // the envelope never reaches the fit window: no Gaussian decay
        return Err(UncertaintyError::InsufficientDecay { r2: 0.0 });
    }
    let (slope, _icept, r2) = linear_fit(&xs, &ys);
    if r2 < HARDY_FIT_R2_MIN || slope <= 0.0 {
        return Err(UncertaintyError::InsufficientDecay { r2 });
    }
    Ok((slope, r2))
}

/// Fit decay rates for the signal and its transform, then classify with
/// the regression-width critical band.
pub fn hardy_fit(
    f: &SampledSignal,
    s: &FreeSymplectic,
) -> Result<HardyClassification, UncertaintyError> {
    let (alpha, r2_alpha) = fit_envelope(f)?;
    let os = min_oversample(&f.grid, s).max(2);
    let g = lct_fast(f, s, os)?;
    let (beta, r2_beta) = fit_envelope(&g)?;
    let (_a, b, _c, _d) = s.abcd();
    let mut out = classify(alpha, beta, b, TOL_HARDY_FIT);
    out.r2_alpha = r2_alpha;
    out.r2_beta = r2_beta;
    Ok(out)
}

/// Multi-dimensional Hardy report: the eigenvalues of MBᵀNB via the SPD
/// similarity M^{1/2}BᵀNB M^{1/2}, the direct nonsymmetric eigensolve
/// for cross-checking, and the classification.
#[derive(Debug, Clone)]
pub struct NdHardyReport {
    /// Eigenvalues from the symmetric route, ascending.
    pub eigenvalues: Vec<f64>,
    /// Eigenvalues from the direct nonsymmetric solve, ascending.
    pub eigenvalues_direct: Vec<f64>,
    pub class: HardyClass,
}

fn spd_sqrt(m: &DMatrix<f64>) -> Result<DMatrix<f64>, UncertaintyError> {
    let eig = m.clone().symmetric_eigen();
    if eig.eigenvalues.iter().any(|&l| l <= 0.0) {
        return Err(UncertaintyError::BadParameter(
            "matrix is not positive-definite".into(),
        ));
    }
    let sqrt_d = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| l.sqrt()));
    Ok(&eig.eigenvectors * sqrt_d * eig.eigenvectors.transpose())
}

fn check_spd(m: &DMatrix<f64>, name: &str) -> Result<(), UncertaintyError> {
    if m.nrows() != m.ncols() {
        return Err(UncertaintyError::BadParameter(format!("{name} is not square")));
    }
    if (m - m.transpose()).amax() > 1e-10 * (1.0 + m.amax()) {
        return Err(UncertaintyError::BadParameter(format!("{name} is not symmetric")));
    }
    let eig = m.clone().symmetric_eigen();
    if eig.eigenvalues.iter().any(|&l| l <= 0.0) {
        return Err(UncertaintyError::BadParameter(format!(
            "{name} is not positive-definite"
        )));
    }
    Ok(())
}

/// Eigenvalues of MBᵀNB for SPD matrices M, N and the B block of a free
/// matrix, with the supercritical / critical / mixed classification.
pub fn hardy_nd_eigs(
    m: &DMatrix<f64>,
    n: &DMatrix<f64>,
    s: &FreeSymplectic,
) -> Result<NdHardyReport, UncertaintyError> {
    check_spd(m, "M")?;
    check_spd(n, "N")?;
    let b = &s.blocks().b;
    let nb = b.transpose() * n * b;
    let m_half = spd_sqrt(m)?;
    let sym = &m_half * &nb * &m_half;
    let mut eigenvalues: Vec<f64> = sym.symmetric_eigen().eigenvalues.iter().cloned().collect();
    eigenvalues.sort_by(|a, b| a.partial_cmp(b).unwrap());

    // direct nonsymmetric route for cross-validation
    let prod = m * &nb;
    let complex_eigs = prod.complex_eigenvalues();
    let mut eigenvalues_direct: Vec<f64> = complex_eigs.iter().map(|c| c.re).collect();
    eigenvalues_direct.sort_by(|a, b| a.partial_cmp(b).unwrap());

    let pi2 = std::f64::consts::PI * std::f64::consts::PI;
    let class = if eigenvalues.iter().any(|&l| l > pi2 * (1.0 + TOL_HARDY_PARAM)) {
        HardyClass::Supercritical
    } else if eigenvalues
        .iter()
        .all(|&l| (l - pi2).abs() <= pi2 * TOL_HARDY_PARAM)
    {
        HardyClass::Critical
    } else {
        HardyClass::Subcritical
    };
    Ok(NdHardyReport {
        eigenvalues,
        eigenvalues_direct,
        class,
    })
}

/// The balancing transform L with LᵀML = L⁻¹(BᵀNB)L⁻ᵀ = Λ where
/// Λ = diag(√λ_j) and λ_j are the eigenvalues of M·BᵀNB. Construction:
/// diagonalize K = M^{1/2}（BᵀNB)M^{1/2} = U diag(λ) Uᵀ and take
/// L = M^{−1/2} U diag(λ^{1/4}).
pub fn balancing_transform(
    m: &DMatrix<f64>,
    n_b: &DMatrix<f64>,
) -> Result<(DMatrix<f64>, Vec<f64>), UncertaintyError> {
    check_spd(m, "M")?;
    check_spd(n_b, "N_B")?;
    let m_half = spd_sqrt(m)?;
    let m_half_inv = m_half
        .clone()
        .lu()
        .try_inverse()
        .ok_or_else(|| UncertaintyError::BadParameter("M^{1/2} not invertible".into()))?;
    let k = &m_half * n_b * &m_half;
    let eig = k.symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].partial_cmp(&eig.eigenvalues[j]).unwrap());
    let dim = eig.eigenvalues.len();
    let mut u = DMatrix::zeros(dim, dim);
    let mut lams = Vec::with_capacity(dim);
    for (col, &src) in order.iter().enumerate() {
        u.set_column(col, &eig.eigenvectors.column(src));
        lams.push(eig.eigenvalues[src]);
    }
    let quarter = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        dim,
        lams.iter().map(|l| l.powf(0.25)),
    ));
    let l = m_half_inv * u * quarter;
    Ok((l, lams))
}
