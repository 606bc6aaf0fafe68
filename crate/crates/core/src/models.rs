//! The homogeneous model spaces: Sasakian unimodular Lie groups, the
//! non-Sasakian constant-(alpha, beta) models, D-homothetic deformation,
//! group classification, and the explicit Heisenberg coordinate chart.

use nalgebra::{Matrix3, Vector3};

use crate::error::{Error, Result};
use crate::frame::{
    connection_from_structure, ContactTensors, FrameConnection, RicciMatrix, StructureFunctions,
    E1, E2, XI,
};

/// Zero threshold for discrete dispatch on exactly-representable parameters.
pub const SIGN_EPS: f64 = 1e-12;

/// Sasakian unimodular Lie-group model, determined by the structure constant
/// `c1` of the bracket relations
/// `[e1, e2] = 2 e3`, `[e2, e3] = c1 e1`, `[e3, e1] = c1 e2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SasakianModel {
    pub c1: f64,
}

impl SasakianModel {
    pub fn new(c1: f64) -> Result<Self> {
        if !c1.is_finite() {
            return Err(Error::InvalidStructure(format!("c1 must be finite, got {c1}")));
        }
        Ok(Self { c1 })
    }

    /// Frame data: `a = c1 - 1`, `b = c = 0`, `mu = 0`.
    pub fn structure_functions(&self) -> StructureFunctions {
        StructureFunctions { a: self.c1 - 1.0, b: 0.0, c: 0.0, mu: 0.0 }
    }

    pub fn connection(&self) -> FrameConnection {
        connection_from_structure(&self.structure_functions())
    }

    /// Ricci diagonal `(2 c1 - 2, 2 c1 - 2, 2)`.
    pub fn ricci(&self) -> RicciMatrix {
        let d = 2.0 * self.c1 - 2.0;
        RicciMatrix::from_diagonal(d, d, 2.0)
    }

    pub fn contact_tensors(&self) -> ContactTensors {
        ContactTensors::from_mu(0.0)
    }
}

/// Non-Sasakian constant-(alpha, beta) model with `h`-eigenvalue `mu > 0`;
/// `alpha = 1 - mu^2` always.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonSasakianModel {
    pub mu: f64,
    pub beta: f64,
}

impl NonSasakianModel {
    pub fn new(mu: f64, beta: f64) -> Result<Self> {
        if !(mu.is_finite() && beta.is_finite()) {
            return Err(Error::InvalidStructure(format!(
                "mu and beta must be finite, got ({mu}, {beta})"
            )));
        }
        if mu <= 0.0 {
            return Err(Error::NonPositiveMu(mu));
        }
        Ok(Self { mu, beta })
    }

    pub fn alpha(&self) -> f64 {
        1.0 - self.mu * self.mu
    }

    /// Frame data: `a = -beta/2`, `b = c = 0`.
    pub fn structure_functions(&self) -> StructureFunctions {
        StructureFunctions { a: -self.beta / 2.0, b: 0.0, c: 0.0, mu: self.mu }
    }

    pub fn connection(&self) -> FrameConnection {
        connection_from_structure(&self.structure_functions())
    }

    /// Ricci diagonal `(-beta + beta mu, -beta - beta mu, 2 alpha)`.
    pub fn ricci(&self) -> RicciMatrix {
        RicciMatrix::from_diagonal(
            -self.beta + self.beta * self.mu,
            -self.beta - self.beta * self.mu,
            2.0 * self.alpha(),
        )
    }

    pub fn contact_tensors(&self) -> ContactTensors {
        ContactTensors::from_mu(self.mu)
    }
}

/// Either model family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Model {
    Sasakian(SasakianModel),
    NonSasakian(NonSasakianModel),
}

impl Model {
    pub fn classify(&self) -> GroupTag {
        classify_group(self)
    }
}

/// Lie-group identification of a model space.
#[derive(Debug, Clone, PartialEq)]
pub enum GroupTag {
    Su2,
    Sl2r,
    E2,
    E11,
    Nil,
    /// SU(2) with the round metric (`c1 = 2`).
    UnitSphere,
    /// When the parameters do not determine a single group.
    CandidateSet(Vec<GroupTag>),
}

impl std::fmt::Display for GroupTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GroupTag::Su2 => write!(f, "SU(2)"),
            GroupTag::Sl2r => write!(f, "SL(2,R)"),
            GroupTag::E2 => write!(f, "E(2)"),
            GroupTag::E11 => write!(f, "E(1,1)"),
            GroupTag::Nil => write!(f, "Nil"),
            GroupTag::UnitSphere => write!(f, "SU(2) [unit sphere]"),
            GroupTag::CandidateSet(tags) => {
                write!(f, "one of {{")?;
                for (i, tag) in tags.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{tag}")?;
                }
                write!(f, "}}")
            }
        }
    }
}

/// Identify the Lie group underlying a model space.
///
/// Sasakian models map through the sign of `c1`; non-Sasakian models with
/// `beta = 0` map through the position of `mu` relative to 1. For
/// `beta != 0` the parameters only pin the group down to the unimodular
/// candidates, so a candidate set is returned.
pub fn classify_group(model: &Model) -> GroupTag {
    match model {
        Model::Sasakian(m) => {
            if m.c1.abs() < SIGN_EPS {
                GroupTag::Nil
            } else if m.c1 > 0.0 {
                if (m.c1 - 2.0).abs() < SIGN_EPS {
                    GroupTag::UnitSphere
                } else {
                    GroupTag::Su2
                }
            } else {
                GroupTag::Sl2r
            }
        }
        Model::NonSasakian(m) => {
            if m.beta.abs() < SIGN_EPS {
                if (m.mu - 1.0).abs() < SIGN_EPS {
                    GroupTag::E2
                } else if m.mu < 1.0 {
                    GroupTag::Su2
                } else {
                    GroupTag::Sl2r
                }
            } else {
                GroupTag::CandidateSet(vec![
                    GroupTag::Su2,
                    GroupTag::Sl2r,
                    GroupTag::E2,
                    GroupTag::E11,
                ])
            }
        }
    }
}

/// A contact metric structure `(eta, xi, phi, g)` in frame components,
/// the input and output shape of the D-homothetic deformation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContactStructure {
    pub eta: Vector3<f64>,
    pub xi: Vector3<f64>,
    pub phi: Matrix3<f64>,
    pub metric: Matrix3<f64>,
}

impl ContactStructure {
    /// The standard structure of the adapted frame: `eta = xi = e3`,
    /// `g = I`.
    pub fn standard() -> Self {
        let tensors = ContactTensors::from_mu(0.0);
        Self {
            eta: tensors.eta,
            xi: tensors.xi,
            phi: tensors.phi,
            metric: Matrix3::identity(),
        }
    }

    /// Worst violation of the compatibility relations: `eta(xi) = 1`,
    /// `eta = g(., xi)`, `phi^2 = -I + xi (x) eta` and
    /// `g(phi X, phi Y) = g(X, Y) - eta(X) eta(Y)`.
    pub fn compatibility_residual(&self) -> f64 {
        let reeb = (self.eta.dot(&self.xi) - 1.0).abs();
        let duality = (self.eta - self.metric * self.xi).amax();
        let phi2 = (self.phi * self.phi + Matrix3::identity()
            - self.xi * self.eta.transpose())
        .amax();
        let metric_phi = (self.phi.transpose() * self.metric * self.phi
            - (self.metric - self.eta * self.eta.transpose()))
        .amax();
        reeb.max(duality).max(phi2).max(metric_phi)
    }
}

/// D-homothetic deformation
/// `(eta, xi, phi, g) -> (eps eta, xi/eps, phi, eps g + eps(eps - 1) eta (x) eta)`.
pub fn d_homothetic(structure: &ContactStructure, eps: f64) -> Result<ContactStructure> {
    if !(eps > 0.0) {
        return Err(Error::NonPositiveEps(eps));
    }
    Ok(ContactStructure {
        eta: eps * structure.eta,
        xi: structure.xi / eps,
        phi: structure.phi,
        metric: eps * structure.metric
            + eps * (eps - 1.0) * structure.eta * structure.eta.transpose(),
    })
}

/// Point of the Heisenberg coordinate chart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChartPoint {
    pub u1: f64,
    pub u2: f64,
    pub t: f64,
}

impl ChartPoint {
    pub fn new(u1: f64, u2: f64, t: f64) -> Self {
        Self { u1, u2, t }
    }

    pub fn origin() -> Self {
        Self { u1: 0.0, u2: 0.0, t: 0.0 }
    }

    pub fn coords(&self) -> [f64; 3] {
        [self.u1, self.u2, self.t]
    }

    pub fn shifted(&self, direction: usize, amount: f64) -> Self {
        let mut coords = self.coords();
        coords[direction] += amount;
        Self::from(coords)
    }
}

impl From<[f64; 3]> for ChartPoint {
    fn from(coords: [f64; 3]) -> Self {
        Self { u1: coords[0], u2: coords[1], t: coords[2] }
    }
}

/// A coordinate-chart metric, evaluable pointwise. The finite-difference
/// machinery in the verifier is generic over this.
pub trait MetricField {
    fn metric_at(&self, p: &ChartPoint) -> Matrix3<f64>;
}

/// The Heisenberg group in its matrix coordinates `(u1, u2, t)` with the
/// left-invariant Sasakian metric
/// `g = eta (x) eta + (du1^2 + du2^2)/4`, `eta = (dt - u2 du1)/2`.
#[derive(Debug, Clone, Copy, Default)]
pub struct HeisenbergChart;

impl HeisenbergChart {
    /// Metric components in the coordinate basis `(d/du1, d/du2, d/dt)`.
    pub fn metric(&self, p: &ChartPoint) -> Matrix3<f64> {
        let u2 = p.u2;
        Matrix3::new(
            0.25 * (1.0 + u2 * u2),
            0.0,
            -0.25 * u2,
            0.0,
            0.25,
            0.0,
            -0.25 * u2,
            0.0,
            0.25,
        )
    }

    /// Left-invariant orthonormal frame `(e1, e2, xi)` in coordinate
    /// components. The signs are fixed so that `[e1, e2] = 2 xi`.
    pub fn frame(&self, p: &ChartPoint) -> [Vector3<f64>; 3] {
        [
            Vector3::new(2.0, 0.0, 2.0 * p.u2),
            Vector3::new(0.0, -2.0, 0.0),
            Vector3::new(0.0, 0.0, 2.0),
        ]
    }

    /// Contact form components `(eta(d/du1), eta(d/du2), eta(d/dt))`.
    pub fn eta(&self, p: &ChartPoint) -> Vector3<f64> {
        Vector3::new(-0.5 * p.u2, 0.0, 0.5)
    }

    /// Coordinate bracket `[e_i, e_j]` of two frame fields.
    pub fn frame_bracket(&self, i: usize, j: usize, p: &ChartPoint) -> Vector3<f64> {
        // the only coordinate dependence is e1^t = 2 u2, so the bracket is
        // (e_i^{u2} d/du2 applied to e_j) - (e_j^{u2} ... ) in the t-slot.
        let e = self.frame(p);
        Vector3::new(0.0, 0.0, e[i][1] * 2.0 * kron(j, E1) - e[j][1] * 2.0 * kron(i, E1))
    }
}

fn kron(i: usize, j: usize) -> f64 {
    if i == j {
        1.0
    } else {
        0.0
    }
}

impl MetricField for HeisenbergChart {
    fn metric_at(&self, p: &ChartPoint) -> Matrix3<f64> {
        self.metric(p)
    }
}

/// The Heisenberg chart.
pub fn heisenberg_chart() -> HeisenbergChart {
    HeisenbergChart
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::curvature_from_connection;

    const TOL: f64 = 1e-12;

    #[test]
    fn sasakian_connection_and_ricci() {
        let m = SasakianModel::new(0.0).unwrap();
        assert_eq!(m.ricci().diagonal(), [-2.0, -2.0, 2.0]);

        let m = SasakianModel::new(2.0).unwrap();
        assert_eq!(m.ricci().diagonal(), [2.0, 2.0, 2.0]);

        let m = SasakianModel::new(1.0).unwrap();
        assert_eq!(m.connection().derivative(XI, E1), Vector3::zeros());
    }

    #[test]
    fn sasakian_bracket_relations() {
        for c1 in [-2.0, 0.0, 1.0, 2.0, 5.0] {
            let conn = SasakianModel::new(c1).unwrap().connection();
            assert_eq!(conn.bracket(E1, E2), Vector3::new(0.0, 0.0, 2.0), "c1={c1}");
            assert_eq!(conn.bracket(E2, XI), Vector3::new(c1, 0.0, 0.0), "c1={c1}");
            assert_eq!(conn.bracket(XI, E1), Vector3::new(0.0, c1, 0.0), "c1={c1}");
        }
    }

    #[test]
    fn sasakian_reeb_sectionals_are_one() {
        for c1 in [-2.0, 0.0, 1.0, 2.0, 5.0] {
            let curv = curvature_from_connection(&SasakianModel::new(c1).unwrap().connection());
            assert!((curv.sectional(E1, XI) - 1.0).abs() < TOL, "c1={c1}");
            assert!((curv.sectional(E2, XI) - 1.0).abs() < TOL, "c1={c1}");
        }
    }

    #[test]
    fn nonsasakian_model_data() {
        let m = NonSasakianModel::new(0.5, 0.0).unwrap();
        assert_eq!(m.ricci().diagonal(), [0.0, 0.0, 1.5]);

        // flat model
        let m = NonSasakianModel::new(1.0, 0.0).unwrap();
        assert_eq!(m.ricci().diagonal(), [0.0, 0.0, 0.0]);

        let m = NonSasakianModel::new(0.5, 2.0).unwrap();
        assert_eq!(m.structure_functions().a, -1.0);

        assert!(NonSasakianModel::new(0.0, 1.0).is_err());
        assert!(NonSasakianModel::new(-0.5, 1.0).is_err());
    }

    #[test]
    fn classification_table() {
        let tag = |mu: f64, beta: f64| {
            Model::NonSasakian(NonSasakianModel::new(mu, beta).unwrap()).classify()
        };
        assert_eq!(tag(0.5, 0.0), GroupTag::Su2);
        assert_eq!(tag(2.0, 0.0), GroupTag::Sl2r);
        assert_eq!(tag(1.0, 0.0), GroupTag::E2);
        assert_eq!(
            tag(0.5, 1.0),
            GroupTag::CandidateSet(vec![GroupTag::Su2, GroupTag::Sl2r, GroupTag::E2, GroupTag::E11])
        );

        let sas = |c1: f64| Model::Sasakian(SasakianModel::new(c1).unwrap()).classify();
        assert_eq!(sas(0.0), GroupTag::Nil);
        assert_eq!(sas(1.0), GroupTag::Su2);
        assert_eq!(sas(2.0), GroupTag::UnitSphere);
        assert_eq!(sas(-3.0), GroupTag::Sl2r);
    }

    #[test]
    fn d_homothetic_identity_and_invariants() {
        let s = ContactStructure::standard();
        assert_eq!(s.compatibility_residual(), 0.0);

        let same = d_homothetic(&s, 1.0).unwrap();
        assert_eq!(same, s);

        for eps in [0.1, 0.5, 2.0, 10.0] {
            let deformed = d_homothetic(&s, eps).unwrap();
            assert!((deformed.eta.dot(&deformed.xi) - 1.0).abs() < 1e-15, "eps={eps}");
            let gxx = (deformed.xi.transpose() * deformed.metric * deformed.xi)[(0, 0)];
            assert!((gxx - 1.0).abs() < 1e-15, "eps={eps}");
            assert!(deformed.compatibility_residual() < 1e-15, "eps={eps}");
        }

        assert!(d_homothetic(&s, 0.0).is_err());
        assert!(d_homothetic(&s, -1.0).is_err());
    }

    #[test]
    fn d_homothetic_round_trip() {
        let s = ContactStructure::standard();
        for eps in [0.1, 0.5, 2.0, 10.0] {
            let there = d_homothetic(&s, eps).unwrap();
            let back = d_homothetic(&there, 1.0 / eps).unwrap();
            assert!((back.eta - s.eta).amax() < TOL);
            assert!((back.xi - s.xi).amax() < TOL);
            assert!((back.metric - s.metric).amax() < TOL);
        }
    }

    #[test]
    fn heisenberg_chart_values() {
        let chart = heisenberg_chart();
        let origin = ChartPoint::origin();
        let g0 = chart.metric(&origin);
        assert_eq!(g0, Matrix3::from_diagonal(&Vector3::new(0.25, 0.25, 0.25)));

        // eta(d/du1) = -u2/2 at (1, 3, 0)
        let p = ChartPoint::new(1.0, 3.0, 0.0);
        assert_eq!(chart.eta(&p)[0], -1.5);

        // g(xi, xi) = 1 and eta(xi) = 1 wherever we look
        for p in [origin, p, ChartPoint::new(-2.0, 4.5, 0.3)] {
            let g = chart.metric(&p);
            let xi = chart.frame(&p)[2];
            assert!(((xi.transpose() * g * xi)[(0, 0)] - 1.0).abs() < TOL);
            assert!((chart.eta(&p).dot(&xi) - 1.0).abs() < TOL);
        }
    }

    #[test]
    fn heisenberg_frame_is_orthonormal_and_bracket_closes() {
        let chart = heisenberg_chart();
        for p in [
            ChartPoint::origin(),
            ChartPoint::new(1.0, -3.0, 2.0),
            ChartPoint::new(-4.4, 4.9, -0.7),
        ] {
            let g = chart.metric(&p);
            let frame = chart.frame(&p);
            for i in 0..3 {
                for j in 0..3 {
                    let want = kron(i, j);
                    let got = (frame[i].transpose() * g * frame[j])[(0, 0)];
                    assert!((got - want).abs() < TOL, "({i},{j}) at {p:?}");
                }
            }
            assert_eq!(chart.frame_bracket(E1, E2, &p), Vector3::new(0.0, 0.0, 4.0));
        }
    }
}
