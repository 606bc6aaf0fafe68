//! Moving-frame geometry of a contact metric 3-manifold.
//!
//! Everything here is expressed in the adapted orthonormal frame
//! `(e1, e2 = phi e1, e3 = xi)` in which the tensor `h` diagonalizes with
//! eigenvalues `(mu, -mu, 0)`. The connection, curvature and Ricci data are
//! determined by the four structure functions `(a, b, c, mu)`, which this
//! crate restricts to constants: exactly the setting of the homogeneous
//! model spaces, where every computation is finite-dimensional linear
//! algebra.

use nalgebra::{Matrix3, Vector3};

use crate::error::{Error, Result};

/// Frame index of `e1`.
pub const E1: usize = 0;
/// Frame index of `e2 = phi e1`.
pub const E2: usize = 1;
/// Frame index of the Reeb direction `e3 = xi`.
pub const XI: usize = 2;

/// Structure functions `(a, b, c, mu)` of the adapted frame, constant on the
/// Lie-group models.
///
/// `mu` is the eigenvalue of `h` on `e1`; the frame is always chosen so that
/// `mu >= 0`, with `mu > 0` exactly on the non-Sasakian locus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StructureFunctions {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub mu: f64,
}

impl StructureFunctions {
    pub fn new(a: f64, b: f64, c: f64, mu: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite() && mu.is_finite()) {
            return Err(Error::InvalidStructure(format!(
                "all fields must be finite, got ({a}, {b}, {c}, {mu})"
            )));
        }
        if mu < 0.0 {
            return Err(Error::InvalidStructure(format!(
                "mu must be non-negative, got {mu}"
            )));
        }
        Ok(Self { a, b, c, mu })
    }
}

/// Frame derivatives of `mu`. Zero on every model space; kept as explicit
/// inputs so the Ricci operator can be assembled in full generality.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct MuDerivatives {
    pub xi_mu: f64,
    pub e1_mu: f64,
    pub e2_mu: f64,
}

/// The two Ricci diagonal entries the frame formulas leave undetermined;
/// supplied externally or read off a curvature contraction.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RicciDiagonal {
    pub e1e1: f64,
    pub e2e2: f64,
}

/// Levi-Civita connection coefficients in the adapted frame.
///
/// `coefficient(i, j, k)` is the `e_k`-component of the covariant derivative
/// of `e_j` along `e_i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameConnection {
    gamma: [[[f64; 3]; 3]; 3],
}

impl FrameConnection {
    pub fn from_coefficients(gamma: [[[f64; 3]; 3]; 3]) -> Self {
        Self { gamma }
    }

    pub fn coefficient(&self, i: usize, j: usize, k: usize) -> f64 {
        self.gamma[i][j][k]
    }

    /// Covariant derivative of `e_j` along `e_i` as a frame vector.
    pub fn derivative(&self, i: usize, j: usize) -> Vector3<f64> {
        Vector3::from(self.gamma[i][j])
    }

    /// Frame bracket `[e_i, e_j]` reconstructed from torsion-freeness.
    pub fn bracket(&self, i: usize, j: usize) -> Vector3<f64> {
        self.derivative(i, j) - self.derivative(j, i)
    }

    /// Maximum violation of metric compatibility
    /// `gamma[i][j][k] = -gamma[i][k][j]`.
    pub fn compatibility_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    worst = worst.max((self.gamma[i][j][k] + self.gamma[i][k][j]).abs());
                }
            }
        }
        worst
    }
}

/// Full curvature tensor in frame components,
/// `component(i, j, k, l) = g(R(e_i, e_j) e_k, e_l)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvatureTensor {
    r: [[[[f64; 3]; 3]; 3]; 3],
}

impl CurvatureTensor {
    pub fn component(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        self.r[i][j][k][l]
    }

    /// Sectional curvature of the plane spanned by the orthonormal pair
    /// `(e_i, e_j)`.
    pub fn sectional(&self, i: usize, j: usize) -> f64 {
        self.r[i][j][j][i]
    }

    /// Ricci tensor obtained by contraction,
    /// `Ric(e_k, e_l) = sum_i g(R(e_i, e_k) e_l, e_i)`.
    pub fn ricci(&self) -> RicciMatrix {
        let mut m = Matrix3::zeros();
        for k in 0..3 {
            for l in 0..3 {
                m[(k, l)] = (0..3).map(|i| self.r[i][k][l][i]).sum();
            }
        }
        RicciMatrix::from_matrix(m)
    }

    /// Worst violation of the algebraic curvature symmetries: antisymmetry
    /// in the first and last index pairs, pair symmetry, and the first
    /// Bianchi identity.
    pub fn symmetry_residual(&self) -> f64 {
        let r = &self.r;
        let mut worst = 0.0f64;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        worst = worst.max((r[i][j][k][l] + r[j][i][k][l]).abs());
                        worst = worst.max((r[i][j][k][l] + r[i][j][l][k]).abs());
                        worst = worst.max((r[i][j][k][l] - r[k][l][i][j]).abs());
                        worst = worst
                            .max((r[i][j][k][l] + r[j][k][i][l] + r[k][i][j][l]).abs());
                    }
                }
            }
        }
        worst
    }
}

/// Symmetric Ricci tensor in frame components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RicciMatrix {
    m: Matrix3<f64>,
}

impl RicciMatrix {
    pub fn from_matrix(m: Matrix3<f64>) -> Self {
        Self { m }
    }

    pub fn from_diagonal(d1: f64, d2: f64, d3: f64) -> Self {
        Self {
            m: Matrix3::from_diagonal(&Vector3::new(d1, d2, d3)),
        }
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.m[(i, j)]
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.m
    }

    pub fn diagonal(&self) -> [f64; 3] {
        [self.m[(0, 0)], self.m[(1, 1)], self.m[(2, 2)]]
    }
}

/// The contact structure tensors in frame components: `phi`, `h`,
/// `A = phi h`, the contact form and the Reeb field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContactTensors {
    pub phi: Matrix3<f64>,
    pub h: Matrix3<f64>,
    pub a_tensor: Matrix3<f64>,
    pub eta: Vector3<f64>,
    pub xi: Vector3<f64>,
}

impl ContactTensors {
    /// Tensors of the adapted frame for a given `h`-eigenvalue `mu`.
    pub fn from_mu(mu: f64) -> Self {
        // columns are the images of (e1, e2, xi): phi e1 = e2, phi e2 = -e1.
        let phi = Matrix3::new(0.0, -1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0);
        let h = Matrix3::from_diagonal(&Vector3::new(mu, -mu, 0.0));
        Self {
            phi,
            h,
            a_tensor: phi * h,
            eta: Vector3::new(0.0, 0.0, 1.0),
            xi: Vector3::new(0.0, 0.0, 1.0),
        }
    }

    /// Worst violation of the defining relations
    /// `phi^2 = -I + eta (x) xi`, `h xi = 0`, `h phi = -phi h`.
    pub fn structure_residual(&self) -> f64 {
        let phi2 = self.phi * self.phi;
        let expected = -Matrix3::identity() + self.xi * self.eta.transpose();
        let anti = self.h * self.phi + self.phi * self.h;
        let hxi = self.h * self.xi;
        (phi2 - expected).amax().max(anti.amax()).max(hxi.amax())
    }

    /// `trace(h^2)`; equals `2 mu^2` in the adapted frame.
    pub fn h_squared_trace(&self) -> f64 {
        (self.h * self.h).trace()
    }
}

/// Levi-Civita connection of the adapted frame in terms of the structure
/// functions.
pub fn connection_from_structure(sf: &StructureFunctions) -> FrameConnection {
    let StructureFunctions { a, b, c, mu } = *sf;
    let mut g = [[[0.0; 3]; 3]; 3];
    g[E1][E1][E2] = b;
    g[E1][E2][E1] = -b;
    g[E1][E2][XI] = 1.0 + mu;
    g[E1][XI][E2] = -(1.0 + mu);
    g[E2][E1][E2] = -c;
    g[E2][E1][XI] = mu - 1.0;
    g[E2][E2][E1] = c;
    g[E2][XI][E1] = 1.0 - mu;
    g[XI][E1][E2] = a;
    g[XI][E2][E1] = -a;
    FrameConnection { gamma: g }
}

/// Ricci operator assembled from the structure functions, the frame
/// derivatives of `mu`, and the two externally supplied diagonal entries.
///
/// The frame formulas determine the off-diagonal entries and
/// `Ric(xi, xi) = 2(1 - mu^2)` but leave `Ric(e1, e1)` and `Ric(e2, e2)`
/// abstract; compute those from a curvature contraction when a model is in
/// hand.
pub fn ricci_operator(
    sf: &StructureFunctions,
    dmu: &MuDerivatives,
    diag: &RicciDiagonal,
) -> RicciMatrix {
    let mut m = Matrix3::zeros();
    m[(E1, E1)] = diag.e1e1;
    m[(E2, E2)] = diag.e2e2;
    m[(XI, XI)] = 2.0 * (1.0 - sf.mu * sf.mu);
    m[(E1, E2)] = dmu.xi_mu;
    m[(E2, E1)] = dmu.xi_mu;
    m[(E1, XI)] = 2.0 * sf.b * sf.mu - dmu.e2_mu;
    m[(XI, E1)] = m[(E1, XI)];
    m[(E2, XI)] = 2.0 * sf.c * sf.mu - dmu.e1_mu;
    m[(XI, E2)] = m[(E2, XI)];
    RicciMatrix { m }
}

/// Curvature tensor of a constant-coefficient frame connection.
///
/// With constant structure functions the frame brackets are recovered from
/// torsion-freeness and the curvature reduces to a quadratic expression in
/// the connection coefficients.
pub fn curvature_from_connection(conn: &FrameConnection) -> CurvatureTensor {
    let g = &conn.gamma;
    let mut r = [[[[0.0; 3]; 3]; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for m in 0..3 {
                    let mut val = 0.0;
                    for l in 0..3 {
                        val += g[j][k][l] * g[i][l][m] - g[i][k][l] * g[j][l][m];
                        val -= (g[i][j][l] - g[j][i][l]) * g[l][k][m];
                    }
                    r[i][j][k][m] = val;
                }
            }
        }
    }
    CurvatureTensor { r }
}

/// Fit the constants `(alpha, beta)` of the curvature condition
/// `R(X, Y) xi = alpha (eta(Y) X - eta(X) Y) + beta (eta(Y) h X - eta(X) h Y)`
/// and return them when the condition holds on all frame pairs within `tol`.
///
/// On the Sasakian locus (`mu = 0`) `beta` is unconstrained and reported as
/// zero by convention.
pub fn identify_alpha_beta(
    curv: &CurvatureTensor,
    sf: &StructureFunctions,
    tol: f64,
) -> Option<(f64, f64)> {
    let mu = sf.mu;
    let r1 = curv.component(E1, XI, XI, E1);
    let r2 = curv.component(E2, XI, XI, E2);
    let alpha = 0.5 * (r1 + r2);
    let beta = if mu > 0.0 { (r1 - r2) / (2.0 * mu) } else { 0.0 };

    let h_eigen = [mu, -mu, 0.0];
    let eta = |i: usize| if i == XI { 1.0 } else { 0.0 };
    let delta = |i: usize, j: usize| if i == j { 1.0 } else { 0.0 };

    let mut worst = 0.0f64;
    for i in 0..3 {
        for j in 0..3 {
            for l in 0..3 {
                let predicted = alpha * (eta(j) * delta(i, l) - eta(i) * delta(j, l))
                    + beta * (eta(j) * h_eigen[i] * delta(i, l) - eta(i) * h_eigen[j] * delta(j, l));
                worst = worst.max((curv.component(i, j, XI, l) - predicted).abs());
            }
        }
    }
    (worst <= tol).then_some((alpha, beta))
}

/// Largest component `|g((nabla_x h) y, z)|` over `x, y, z` in `{e1, e2}`:
/// zero exactly when `h` is eta-parallel at the point.
pub fn eta_parallel_residual(sf: &StructureFunctions, dmu: &MuDerivatives) -> f64 {
    let conn = connection_from_structure(sf);
    let h_eigen = [sf.mu, -sf.mu];
    // x-derivative of the h-eigenvalue on e_y, for x, y in {e1, e2}.
    let dh = [
        [dmu.e1_mu, -dmu.e1_mu],
        [dmu.e2_mu, -dmu.e2_mu],
    ];
    let mut worst = 0.0f64;
    for x in 0..2 {
        for y in 0..2 {
            for z in 0..2 {
                let diag_term = if y == z { dh[x][y] } else { 0.0 };
                let value = diag_term + (h_eigen[y] - h_eigen[z]) * conn.coefficient(x, y, z);
                worst = worst.max(value.abs());
            }
        }
    }
    worst
}
