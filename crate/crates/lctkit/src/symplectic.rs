//! Symplectic matrices and the linear algebra around them: block
//! decompositions, free matrices with cached generating-function
//! coefficients, named constructors (Fourier, fractional Fourier,
//! Fresnel, Lorentz, shears, squeezes), inverses, coupling/Darboux
//! matrices, and non-standard symplectic forms.
//!
//! Matrices are dense `2n × 2n` with `n ≤ 16`; everything is validated
//! at construction against ‖SᵀJS − J‖_max ≤ [`tolerances::TOL_SYMPL`].

use nalgebra::DMatrix;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tolerances::{FREE_THRESHOLD, TOL_BLOCK, TOL_DET, TOL_SYMPL};

/// Largest supported half-dimension.
pub const MAX_N: usize = 16;

#[derive(Debug, Error)]
pub enum SymplecticError {
    #[error("matrix dimension {0} is odd; expected 2n x 2n")]
    OddDimension(usize),
    #[error("matrix is not square: {rows} x {cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("half-dimension {0} exceeds the supported maximum {MAX_N}")]
    DimensionTooLarge(usize),
    #[error("symplectic residual {residual:.3e} exceeds tolerance {tol:.1e}")]
    NotSymplectic { residual: f64, tol: f64 },
    #[error("determinant {0} is not 1 within tolerance")]
    BadDeterminant(f64),
    #[error("matrix is not free: |det B| = {0:.3e}")]
    NotFree(f64),
    #[error("invalid constructor parameter: {0}")]
    BadParameter(String),
    #[error("coupling matrix is singular: |det D| = {0:.3e}")]
    SingularCoupling(f64),
    #[error("matrix is not antisymmetric within tolerance (residual {0:.3e})")]
    NotAntisymmetric(f64),
    #[error("form matrix is singular")]
    SingularForm,
}

/// The standard symplectic matrix J = [[0, I], [-I, 0]].
pub fn standard_j(n: usize) -> DMatrix<f64> {
    let mut j = DMatrix::zeros(2 * n, 2 * n);
    for k in 0..n {
        j[(k, n + k)] = 1.0;
        j[(n + k, k)] = -1.0;
    }
    j
}

/// Max-norm of MᵀJM − J. Errors on odd or non-square input.
pub fn symplectic_residual(m: &DMatrix<f64>) -> Result<f64, SymplecticError> {
    if m.nrows() != m.ncols() {
        return Err(SymplecticError::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    if m.nrows() % 2 != 0 {
        return Err(SymplecticError::OddDimension(m.nrows()));
    }
    let n = m.nrows() / 2;
    let j = standard_j(n);
    let r = m.transpose() * &j * m - &j;
    Ok(r.amax())
}

/// Is `m` symplectic within `tol`? Returns the residual alongside.
pub fn is_symplectic(m: &DMatrix<f64>, tol: f64) -> Result<(bool, f64), SymplecticError> {
    let r = symplectic_residual(m)?;
    Ok((r <= tol, r))
}

/// A validated real symplectic matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticMatrix {
    n: usize,
    entries: DMatrix<f64>,
}

impl SymplecticMatrix {
    /// Validate and wrap a `2n × 2n` matrix.
    pub fn new(entries: DMatrix<f64>) -> Result<Self, SymplecticError> {
        let residual = symplectic_residual(&entries)?;
        let n = entries.nrows() / 2;
        if n > MAX_N {
            return Err(SymplecticError::DimensionTooLarge(n));
        }
        if residual > TOL_SYMPL {
            return Err(SymplecticError::NotSymplectic {
                residual,
                tol: TOL_SYMPL,
            });
        }
        let det = entries.clone().lu().determinant();
        if (det - 1.0).abs() > TOL_DET {
            return Err(SymplecticError::BadDeterminant(det));
        }
        Ok(Self { n, entries })
    }

    /// Build from a row-major slice of `4n²` entries.
    pub fn from_rows(n: usize, rows: &[f64]) -> Result<Self, SymplecticError> {
        if rows.len() != 4 * n * n {
            return Err(SymplecticError::BadParameter(format!(
                "expected {} entries, got {}",
                4 * n * n,
                rows.len()
            )));
        }
        Ok(Self::new(DMatrix::from_row_slice(2 * n, 2 * n, rows))?)
    }

    /// The identity as a symplectic matrix.
    pub fn identity(n: usize) -> Self {
        Self {
            n,
            entries: DMatrix::identity(2 * n, 2 * n),
        }
    }

    /// The standard symplectic matrix J.
    pub fn j(n: usize) -> Self {
        Self {
            n,
            entries: standard_j(n),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    /// S⁻¹ = JSᵀJᵀ, i.e. blocks [[Dᵀ, −Bᵀ], [−Cᵀ, Aᵀ]]. Exact up to
    /// rounding; no linear solve involved.
    pub fn inverse(&self) -> SymplecticMatrix {
        let b = self.blocks();
        let n = self.n;
        let mut m = DMatrix::zeros(2 * n, 2 * n);
        m.view_mut((0, 0), (n, n)).copy_from(&b.d.transpose());
        m.view_mut((0, n), (n, n)).copy_from(&(-b.b.transpose()));
        m.view_mut((n, 0), (n, n)).copy_from(&(-b.c.transpose()));
        m.view_mut((n, n), (n, n)).copy_from(&b.a.transpose());
        SymplecticMatrix { n, entries: m }
    }

    /// Matrix product of two symplectic matrices (closed under product).
    pub fn compose(&self, other: &SymplecticMatrix) -> Result<SymplecticMatrix, SymplecticError> {
        if self.n != other.n {
            return Err(SymplecticError::BadParameter(format!(
                "dimension mismatch: {} vs {}",
                self.n, other.n
            )));
        }
        SymplecticMatrix::new(&self.entries * &other.entries)
    }

    /// Split into the four n×n blocks.
    pub fn blocks(&self) -> BlockDecomposition {
        let n = self.n;
        BlockDecomposition {
            a: self.entries.view((0, 0), (n, n)).into(),
            b: self.entries.view((0, n), (n, n)).into(),
            c: self.entries.view((n, 0), (n, n)).into(),
            d: self.entries.view((n, n), (n, n)).into(),
        }
    }

    /// Interpret as a free symplectic matrix; fails when B is singular.
    pub fn as_free(&self) -> Result<FreeSymplectic, SymplecticError> {
        FreeSymplectic::new(self.clone())
    }

    /// Apply to a phase-space point of length 2n.
    pub fn apply(&self, z: &[f64]) -> Vec<f64> {
        let v = nalgebra::DVector::from_column_slice(z);
        (&self.entries * v).as_slice().to_vec()
    }
}

/// The four n×n blocks of a symplectic matrix.
#[derive(Debug, Clone)]
pub struct BlockDecomposition {
    pub a: DMatrix<f64>,
    pub b: DMatrix<f64>,
    pub c: DMatrix<f64>,
    pub d: DMatrix<f64>,
}

impl BlockDecomposition {
    /// Max residual over the block relations: symmetry of AᵀC and BᵀD,
    /// and AᵀD − CᵀB = I.
    pub fn relation_residual(&self) -> f64 {
        let atc = self.a.transpose() * &self.c;
        let btd = self.b.transpose() * &self.d;
        let r1 = (&atc - atc.transpose()).amax();
        let r2 = (&btd - btd.transpose()).amax();
        let id = DMatrix::identity(self.a.nrows(), self.a.ncols());
        let r3 = (self.a.transpose() * &self.d - self.c.transpose() * &self.b - id).amax();
        r1.max(r2).max(r3)
    }

    pub fn relations_hold(&self) -> bool {
        self.relation_residual() <= TOL_BLOCK
    }
}

/// A free symplectic matrix (invertible B) with the generating-function
/// coefficient matrices cached: DB⁻¹, B⁻¹, B⁻¹A, det B.
#[derive(Debug, Clone)]
pub struct FreeSymplectic {
    mat: SymplecticMatrix,
    blocks: BlockDecomposition,
    db_inv: DMatrix<f64>,
    b_inv: DMatrix<f64>,
    b_inv_a: DMatrix<f64>,
    det_b: f64,
}

impl FreeSymplectic {
    pub fn new(mat: SymplecticMatrix) -> Result<Self, SymplecticError> {
        let blocks = mat.blocks();
        let lu = blocks.b.clone().lu();
        let det_b = lu.determinant();
        if det_b.abs() < FREE_THRESHOLD {
            return Err(SymplecticError::NotFree(det_b.abs()));
        }
        let b_inv = lu
            .try_inverse()
            .ok_or(SymplecticError::NotFree(det_b.abs()))?;
        let db_inv = &blocks.d * &b_inv;
        let b_inv_a = &b_inv * &blocks.a;
        Ok(Self {
            mat,
            blocks,
            db_inv,
            b_inv,
            b_inv_a,
            det_b,
        })
    }

    pub fn matrix(&self) -> &SymplecticMatrix {
        &self.mat
    }

    pub fn n(&self) -> usize {
        self.mat.n()
    }

    pub fn blocks(&self) -> &BlockDecomposition {
        &self.blocks
    }

    pub fn db_inv(&self) -> &DMatrix<f64> {
        &self.db_inv
    }

    pub fn b_inv(&self) -> &DMatrix<f64> {
        &self.b_inv
    }

    pub fn b_inv_a(&self) -> &DMatrix<f64> {
        &self.b_inv_a
    }

    pub fn det_b(&self) -> f64 {
        self.det_b
    }

    /// 1D accessors (a, b, c, d) of the 2×2 matrix. Panics if n ≠ 1.
    pub fn abcd(&self) -> (f64, f64, f64, f64) {
        assert_eq!(self.n(), 1, "abcd() requires n = 1");
        let m = self.mat.entries();
        (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)])
    }

    /// The inverse, itself free (its B block is −Bᵀ).
    pub fn inverse(&self) -> FreeSymplectic {
        FreeSymplectic::new(self.mat.inverse()).expect("inverse of a free matrix is free")
    }
}

/// Quadratic generating function
/// W(x, x′) = ½ x·DB⁻¹x − x·B⁻¹x′ + ½ x′·B⁻¹Ax′.
pub fn generating_function(f: &FreeSymplectic, x: &[f64], xp: &[f64]) -> f64 {
    let n = f.n();
    assert_eq!(x.len(), n);
    assert_eq!(xp.len(), n);
    let xv = nalgebra::DVector::from_column_slice(x);
    let xpv = nalgebra::DVector::from_column_slice(xp);
    let t1 = 0.5 * (xv.transpose() * f.db_inv() * &xv)[(0, 0)];
    let t2 = (xv.transpose() * f.b_inv() * &xpv)[(0, 0)];
    let t3 = 0.5 * (xpv.transpose() * f.b_inv_a() * &xpv)[(0, 0)];
    t1 - t2 + t3
}

/// Named symplectic constructors; the parameter vectors are per-axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum NamedMatrix {
    Identity { n: usize },
    Fourier { n: usize },
    Frft { angles: Vec<f64> },
    Fresnel { b: Vec<f64> },
    Lorentz { phi: Vec<f64> },
    /// Shear V_P = [[I, 0], [−P, I]] for symmetric P (row-major).
    Shear { n: usize, p: Vec<f64> },
    /// Squeeze M_L = [[L⁻¹, 0], [0, Lᵀ]] for invertible L (row-major).
    Squeeze { n: usize, l: Vec<f64> },
}

/// Build a named symplectic matrix, validating its parameters.
pub fn make_named(kind: &NamedMatrix) -> Result<SymplecticMatrix, SymplecticError> {
    match kind {
        NamedMatrix::Identity { n } => Ok(SymplecticMatrix::identity(*n)),
        NamedMatrix::Fourier { n } => Ok(SymplecticMatrix::j(*n)),
        NamedMatrix::Frft { angles } => {
            let n = angles.len();
            let mut m = DMatrix::zeros(2 * n, 2 * n);
            for (k, &t) in angles.iter().enumerate() {
                if t.sin().abs() < FREE_THRESHOLD {
                    return Err(SymplecticError::BadParameter(format!(
                        "frft angle {t} has sin(theta) = 0"
                    )));
                }
                m[(k, k)] = t.cos();
                m[(n + k, n + k)] = t.cos();
                m[(k, n + k)] = t.sin();
                m[(n + k, k)] = -t.sin();
            }
            SymplecticMatrix::new(m)
        }
        NamedMatrix::Fresnel { b } => {
            let n = b.len();
            let mut m = DMatrix::identity(2 * n, 2 * n);
            for (k, &bk) in b.iter().enumerate() {
                if bk == 0.0 {
                    return Err(SymplecticError::BadParameter("fresnel b = 0".into()));
                }
                m[(k, n + k)] = bk;
            }
            SymplecticMatrix::new(m)
        }
        NamedMatrix::Lorentz { phi } => {
            let n = phi.len();
            let mut m = DMatrix::zeros(2 * n, 2 * n);
            for (k, &p) in phi.iter().enumerate() {
                if p == 0.0 {
                    return Err(SymplecticError::BadParameter("lorentz phi = 0".into()));
                }
                m[(k, k)] = p.cosh();
                m[(n + k, n + k)] = p.cosh();
                m[(k, n + k)] = p.sinh();
                m[(n + k, k)] = p.sinh();
            }
            SymplecticMatrix::new(m)
        }
        NamedMatrix::Shear { n, p } => {
            if p.len() != n * n {
                return Err(SymplecticError::BadParameter("shear P has wrong size".into()));
            }
            let pm = DMatrix::from_row_slice(*n, *n, p);
            if (&pm - pm.transpose()).amax() > TOL_BLOCK {
                return Err(SymplecticError::BadParameter("shear P is not symmetric".into()));
            }
            let mut m = DMatrix::identity(2 * n, 2 * n);
            m.view_mut((*n, 0), (*n, *n)).copy_from(&(-&pm));
            SymplecticMatrix::new(m)
        }
        NamedMatrix::Squeeze { n, l } => {
            if l.len() != n * n {
                return Err(SymplecticError::BadParameter("squeeze L has wrong size".into()));
            }
            let lm = DMatrix::from_row_slice(*n, *n, l);
            let l_inv = lm
                .clone()
                .lu()
                .try_inverse()
                .ok_or_else(|| SymplecticError::BadParameter("squeeze L is singular".into()))?;
            let mut m = DMatrix::zeros(2 * n, 2 * n);
            m.view_mut((0, 0), (*n, *n)).copy_from(&l_inv);
            m.view_mut((*n, *n), (*n, *n)).copy_from(&lm.transpose());
            SymplecticMatrix::new(m)
        }
    }
}

/// A non-standard symplectic form given by an antisymmetric invertible
/// matrix Ω, with its inverse cached.
#[derive(Debug, Clone)]
pub struct SymplecticFormNS {
    n: usize,
    omega: DMatrix<f64>,
    omega_inv: DMatrix<f64>,
}

impl SymplecticFormNS {
    pub fn new(omega: DMatrix<f64>) -> Result<Self, SymplecticError> {
        if omega.nrows() != omega.ncols() {
            return Err(SymplecticError::NotSquare {
                rows: omega.nrows(),
                cols: omega.ncols(),
            });
        }
        if omega.nrows() % 2 != 0 {
            return Err(SymplecticError::OddDimension(omega.nrows()));
        }
        let anti = (&omega + omega.transpose()).amax();
        if anti > 1e-10 {
            return Err(SymplecticError::NotAntisymmetric(anti));
        }
        let omega_inv = omega
            .clone()
            .lu()
            .try_inverse()
            .ok_or(SymplecticError::SingularForm)?;
        let n = omega.nrows() / 2;
        Ok(Self { n, omega, omega_inv })
    }

    /// The standard form Ω = J.
    pub fn standard(n: usize) -> Self {
        Self::new(standard_j(n)).expect("J is a valid form")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn omega(&self) -> &DMatrix<f64> {
        &self.omega
    }

    pub fn omega_inv(&self) -> &DMatrix<f64> {
        &self.omega_inv
    }

    /// ϑ(z, z′) = z · Ω⁻¹ z′.
    pub fn eval(&self, z: &[f64], zp: &[f64]) -> f64 {
        let a = nalgebra::DVector::from_column_slice(z);
        let b = nalgebra::DVector::from_column_slice(zp);
        (a.transpose() * &self.omega_inv * b)[(0, 0)]
    }
}

/// A Darboux matrix D bringing the standard form to Ω = DJDᵀ.
#[derive(Debug, Clone)]
pub struct DarbouxMatrix {
    d: DMatrix<f64>,
    target_form: SymplecticFormNS,
}

impl DarbouxMatrix {
    pub fn new(d: DMatrix<f64>) -> Result<Self, SymplecticError> {
        let n = d.nrows() / 2;
        let det = d.clone().lu().determinant();
        if det.abs() < FREE_THRESHOLD {
            return Err(SymplecticError::SingularCoupling(det.abs()));
        }
        let omega = &d * standard_j(n) * d.transpose();
        let target_form = SymplecticFormNS::new(omega)?;
        Ok(Self { d, target_form })
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.d
    }

    pub fn target_form(&self) -> &SymplecticFormNS {
        &self.target_form
    }

    pub fn det(&self) -> f64 {
        self.d.clone().lu().determinant()
    }

    pub fn inverse_matrix(&self) -> DMatrix<f64> {
        self.d
            .clone()
            .lu()
            .try_inverse()
            .expect("validated nonsingular")
    }

    /// Residual of DJDᵀ − Ω (zero by construction, useful in tests).
    pub fn residual(&self) -> f64 {
        let n = self.d.nrows() / 2;
        (&self.d * standard_j(n) * self.d.transpose() - self.target_form.omega()).amax()
    }
}

/// Stack the (A, B) row-blocks of two symplectic matrices into the
/// coupling matrix D = [[A₁, B₁], [A₂, B₂]] with Ω = DJDᵀ attached.
/// Errors when D is singular (the associated form degenerates).
pub fn coupling_matrix(
    s1: &SymplecticMatrix,
    s2: &SymplecticMatrix,
) -> Result<DarbouxMatrix, SymplecticError> {
    if s1.n() != s2.n() {
        return Err(SymplecticError::BadParameter(
            "coupling requires equal dimensions".into(),
        ));
    }
    let n = s1.n();
    let b1 = s1.blocks();
    let b2 = s2.blocks();
    let mut d = DMatrix::zeros(2 * n, 2 * n);
    d.view_mut((0, 0), (n, n)).copy_from(&b1.a);
    d.view_mut((0, n), (n, n)).copy_from(&b1.b);
    d.view_mut((n, 0), (n, n)).copy_from(&b2.a);
    d.view_mut((n, n), (n, n)).copy_from(&b2.b);
    DarbouxMatrix::new(d)
}

/// Does P preserve the form: ‖PΩPᵀ − Ω‖_max ≤ tol?
pub fn in_sp_theta(p: &DMatrix<f64>, form: &SymplecticFormNS, tol: f64) -> bool {
    if p.nrows() != form.omega().nrows() || p.ncols() != form.omega().ncols() {
        return false;
    }
    (p * form.omega() * p.transpose() - form.omega()).amax() <= tol
}

/// The magnetic symplectic form J_B = [[0, I], [−I, B]] for an
/// antisymmetric field matrix B; its inverse is [[B, −I], [I, 0]].
pub fn magnetic_form(b_field: &DMatrix<f64>) -> Result<SymplecticFormNS, SymplecticError> {
    let n = b_field.nrows();
    if b_field.ncols() != n {
        return Err(SymplecticError::NotSquare {
            rows: n,
            cols: b_field.ncols(),
        });
    }
    let anti = (b_field + b_field.transpose()).amax();
    if anti > 1e-10 {
        return Err(SymplecticError::NotAntisymmetric(anti));
    }
    let mut omega = DMatrix::zeros(2 * n, 2 * n);
    for k in 0..n {
        omega[(k, n + k)] = 1.0;
        omega[(n + k, k)] = -1.0;
    }
    omega.view_mut((n, n), (n, n)).copy_from(b_field);
    SymplecticFormNS::new(omega)
}

/// The n×n matrix of sharp Heisenberg constants: entry (j, k) is
/// (S⁽¹⁾ J (S⁽²⁾)ᵀ)_{jk} for j, k = 1..n.
pub fn heisenberg_bound_matrix(s1: &SymplecticMatrix, s2: &SymplecticMatrix) -> DMatrix<f64> {
    assert_eq!(s1.n(), s2.n());
    let n = s1.n();
    let full = s1.entries() * standard_j(n) * s2.entries().transpose();
    full.view((0, 0), (n, n)).into()
}

/// Random symplectic matrix: a product of 2–6 random shear, squeeze,
/// and fractional-Fourier factors. Rich enough for property suites
/// without Lie-algebra exponentials.
pub fn random_symplectic<R: Rng>(rng: &mut R, n: usize) -> SymplecticMatrix {
    let k = rng.random_range(2..=6);
    let mut m = SymplecticMatrix::identity(n);
    for _ in 0..k {
        let which = rng.random_range(0..3u32);
        let g = match which {
            0 => {
                // random symmetric P
                let mut p = vec![0.0; n * n];
                for i in 0..n {
                    for j in i..n {
                        let v = rng.random_range(-1.2..1.2);
                        p[i * n + j] = v;
                        p[j * n + i] = v;
                    }
                }
                make_named(&NamedMatrix::Shear { n, p }).unwrap()
            }
            1 => {
                // random well-conditioned L: diagonal-dominant perturbation
                let mut l = vec![0.0; n * n];
                for i in 0..n {
                    for j in 0..n {
                        l[i * n + j] = if i == j {
                            let s = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
                            s * rng.random_range(0.6..1.6)
                        } else {
                            rng.random_range(-0.2..0.2)
                        };
                    }
                }
                make_named(&NamedMatrix::Squeeze { n, l }).unwrap()
            }
            _ => {
                let angles: Vec<f64> = (0..n)
                    .map(|_| rng.random_range(0.3..std::f64::consts::PI - 0.3))
                    .collect();
                make_named(&NamedMatrix::Frft { angles }).unwrap()
            }
        };
        m = m.compose(&g).expect("product of symplectic factors");
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn standard_j_small_cases() {
        let j = standard_j(1);
        assert_eq!(j[(0, 1)], 1.0);
        assert_eq!(j[(1, 0)], -1.0);
        // J Jᵀ = I exactly
        let jjt = &j * j.transpose();
        assert_eq!(jjt, DMatrix::identity(2, 2));
        // antisymmetry for n = 2
        let j2 = standard_j(2);
        assert_eq!(j2.transpose(), -&j2);
        // J⁻¹ = Jᵀ = −J
        assert_eq!(j.clone().try_inverse().unwrap(), j.transpose());
    }

    #[test]
    fn is_symplectic_cases() {
        let j = standard_j(1);
        assert!(is_symplectic(&j, TOL_SYMPL).unwrap().0);

        let frft = make_named(&NamedMatrix::Frft {
            angles: vec![std::f64::consts::FRAC_PI_4],
        })
        .unwrap();
        let (ok, r) = is_symplectic(frft.entries(), TOL_SYMPL).unwrap();
        assert!(ok, "residual {r}");

        let bad = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 1.0, 1.0]);
        assert!(!is_symplectic(&bad, TOL_SYMPL).unwrap().0);

        let odd = DMatrix::zeros(3, 3);
        assert!(matches!(
            is_symplectic(&odd, TOL_SYMPL),
            Err(SymplecticError::OddDimension(3))
        ));
    }

    #[test]
    fn block_split_named_cases() {
        let j = SymplecticMatrix::j(1);
        let b = j.blocks();
        assert_eq!(b.a[(0, 0)], 0.0);
        assert_eq!(b.b[(0, 0)], 1.0);
        assert_eq!(b.c[(0, 0)], -1.0);
        assert_eq!(b.d[(0, 0)], 0.0);

        let t = 0.7;
        let f = make_named(&NamedMatrix::Frft { angles: vec![t] }).unwrap();
        let fb = f.blocks();
        assert_abs_diff_eq!(fb.a[(0, 0)], t.cos(), epsilon = 1e-15);
        assert_abs_diff_eq!(fb.b[(0, 0)], t.sin(), epsilon = 1e-15);
        assert_abs_diff_eq!(fb.c[(0, 0)], -t.sin(), epsilon = 1e-15);
        assert!(fb.relations_hold());

        let fr = make_named(&NamedMatrix::Fresnel { b: vec![2.5] }).unwrap();
        let frb = fr.blocks();
        assert_eq!(frb.a[(0, 0)], 1.0);
        assert_eq!(frb.b[(0, 0)], 2.5);
        assert_eq!(frb.c[(0, 0)], 0.0);
        assert_eq!(frb.d[(0, 0)], 1.0);
    }

    #[test]
    fn as_free_cases() {
        let j = SymplecticMatrix::j(1).as_free().unwrap();
        assert_eq!(j.det_b(), 1.0);
        assert_eq!(j.db_inv()[(0, 0)], 0.0);
        assert_eq!(j.b_inv_a()[(0, 0)], 0.0);

        assert!(matches!(
            SymplecticMatrix::identity(1).as_free(),
            Err(SymplecticError::NotFree(_))
        ));

        let lor = make_named(&NamedMatrix::Lorentz { phi: vec![1.0] }).unwrap();
        let lf = lor.as_free().unwrap();
        assert_abs_diff_eq!(lf.det_b(), 1.0f64.sinh(), epsilon = 1e-14);
    }

    #[test]
    fn generating_function_cases() {
        let j = SymplecticMatrix::j(1).as_free().unwrap();
        assert_abs_diff_eq!(generating_function(&j, &[1.0], &[2.0]), -2.0, epsilon = 1e-14);

        let fr = make_named(&NamedMatrix::Fresnel { b: vec![1.0] })
            .unwrap()
            .as_free()
            .unwrap();
        assert_abs_diff_eq!(generating_function(&fr, &[0.0], &[0.0]), 0.0, epsilon = 1e-15);
        // fresnel b = 1: W(x, x') = (x - x')^2 / 2
        for (x, xp) in [(1.0, 2.0), (-0.5, 1.5), (3.0, 0.25)] {
            assert_abs_diff_eq!(
                generating_function(&fr, &[x], &[xp]),
                0.5 * (x - xp) * (x - xp),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn named_constructor_cases() {
        let f = make_named(&NamedMatrix::Frft {
            angles: vec![std::f64::consts::FRAC_PI_2],
        })
        .unwrap();
        assert!((f.entries() - standard_j(1)).amax() < 1e-15);

        let sh = make_named(&NamedMatrix::Shear { n: 1, p: vec![2.0] }).unwrap();
        assert_eq!(sh.entries()[(1, 0)], -2.0);
        assert!(is_symplectic(sh.entries(), TOL_SYMPL).unwrap().0);

        let sq = make_named(&NamedMatrix::Squeeze { n: 1, l: vec![3.0] }).unwrap();
        assert_abs_diff_eq!(sq.entries()[(0, 0)], 1.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(sq.entries()[(1, 1)], 3.0, epsilon = 1e-15);

        assert!(make_named(&NamedMatrix::Frft { angles: vec![0.0] }).is_err());
        assert!(make_named(&NamedMatrix::Fresnel { b: vec![0.0] }).is_err());
        assert!(make_named(&NamedMatrix::Lorentz { phi: vec![0.0] }).is_err());
        assert!(make_named(&NamedMatrix::Squeeze { n: 1, l: vec![0.0] }).is_err());
        assert!(make_named(&NamedMatrix::Shear {
            n: 2,
            p: vec![1.0, 0.5, -0.5, 1.0]
        })
        .is_err());
    }

    #[test]
    fn inverse_cases() {
        let j = SymplecticMatrix::j(1);
        assert!((j.inverse().entries() - (-standard_j(1))).amax() < 1e-15);

        let t = 0.9;
        let f = make_named(&NamedMatrix::Frft { angles: vec![t] }).unwrap();
        let fneg = make_named(&NamedMatrix::Frft { angles: vec![-t] }).unwrap();
        assert!((f.inverse().entries() - fneg.entries()).amax() < 1e-14);

        let fr = make_named(&NamedMatrix::Fresnel { b: vec![1.7] }).unwrap();
        let frneg = make_named(&NamedMatrix::Fresnel { b: vec![-1.7] }).unwrap();
        assert!((fr.inverse().entries() - frneg.entries()).amax() < 1e-14);
    }

    #[test]
    fn coupling_matrix_cases() {
        let i = SymplecticMatrix::identity(1);
        let j = SymplecticMatrix::j(1);
        let d = coupling_matrix(&i, &j).unwrap();
        assert!((d.matrix() - DMatrix::identity(2, 2)).amax() < 1e-15);
        assert!((d.target_form().omega() - standard_j(1)).amax() < 1e-15);

        // n = 1 general pair: Ω = DJDᵀ = (a1 b2 − a2 b1) J, i.e. the
        // determinant of the coupling matrix scales the standard form
        let s1 = make_named(&NamedMatrix::Frft { angles: vec![0.6] }).unwrap();
        let s2 = make_named(&NamedMatrix::Fresnel { b: vec![1.3] }).unwrap();
        let d = coupling_matrix(&s1, &s2).unwrap();
        let (a1, b1) = (0.6f64.cos(), 0.6f64.sin());
        let (a2, b2) = (1.0, 1.3);
        let scale = a1 * b2 - a2 * b1;
        assert!((d.target_form().omega() - scale * standard_j(1)).amax() < 1e-12);
        assert_abs_diff_eq!(d.det(), scale, epsilon = 1e-12);

        assert!(matches!(
            coupling_matrix(&j, &j),
            Err(SymplecticError::SingularCoupling(_))
        ));
    }

    #[test]
    fn in_sp_theta_cases() {
        let form = SymplecticFormNS::standard(1);
        let id = DMatrix::identity(2, 2);
        assert!(in_sp_theta(&id, &form, 1e-10));

        let s = make_named(&NamedMatrix::Frft { angles: vec![0.8] }).unwrap();
        assert!(in_sp_theta(s.entries(), &form, 1e-10));

        let form2 = SymplecticFormNS::new(2.0 * standard_j(1)).unwrap();
        assert!(in_sp_theta(s.entries(), &form2, 1e-10));
    }

    #[test]
    fn magnetic_form_cases() {
        let b0 = DMatrix::zeros(1, 1);
        let f = magnetic_form(&b0).unwrap();
        assert!((f.omega() - standard_j(1)).amax() < 1e-15);

        let b = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]);
        let f = magnetic_form(&b).unwrap();
        assert_eq!(f.omega()[(3, 2)], -1.0);
        assert_eq!(f.omega()[(2, 3)], 1.0);
        let prod = f.omega() * f.omega_inv();
        assert!((prod - DMatrix::identity(4, 4)).amax() < 1e-12);

        let bad = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        assert!(matches!(
            magnetic_form(&bad),
            Err(SymplecticError::NotAntisymmetric(_))
        ));
    }

    #[test]
    fn heisenberg_bound_matrix_cases() {
        let i = SymplecticMatrix::identity(2);
        let j = SymplecticMatrix::j(2);
        let m = heisenberg_bound_matrix(&i, &j);
        assert!((m - DMatrix::identity(2, 2)).amax() < 1e-15);

        // n = 1, S1 = I, S2 arbitrary: entry is b
        let s2 = make_named(&NamedMatrix::Lorentz { phi: vec![0.8] }).unwrap();
        let m = heisenberg_bound_matrix(&SymplecticMatrix::identity(1), &s2);
        assert_abs_diff_eq!(m[(0, 0)], 0.8f64.sinh(), epsilon = 1e-14);

        let j1 = SymplecticMatrix::j(1);
        let m = heisenberg_bound_matrix(&j1, &j1);
        assert_abs_diff_eq!(m[(0, 0)], 0.0, epsilon = 1e-15);
    }

    #[test]
    fn darboux_residual_is_zero_by_construction() {
        let s1 = make_named(&NamedMatrix::Frft { angles: vec![0.5] }).unwrap();
        let s2 = make_named(&NamedMatrix::Frft { angles: vec![2.1] }).unwrap();
        let d = coupling_matrix(&s1, &s2).unwrap();
        assert!(d.residual() < 1e-12);
    }
}
