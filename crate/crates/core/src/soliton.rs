//! Soliton constants, the delta coefficients of the first-order system, and
//! the closed-form potential vector field families.
//!
//! A potential field is stored as a pair of affine forms in `(u1, u2)` per
//! time basis function, so evaluation and every derivative the verifier
//! needs come out in closed form.

use crate::error::{Error, Result};
use crate::models::{ChartPoint, Model, NonSasakianModel, SasakianModel, SIGN_EPS};

/// Case split of the second-order axis equation by the sign of
/// `delta = delta3 * delta4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseTag {
    /// `delta > 0`: exponential time dependence.
    I,
    /// `delta < 0`: trigonometric time dependence.
    II,
    /// `delta = 0`: affine time dependence.
    III,
}

impl std::fmt::Display for CaseTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CaseTag::I => write!(f, "I"),
            CaseTag::II => write!(f, "II"),
            CaseTag::III => write!(f, "III"),
        }
    }
}

/// Sign classification of the soliton constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolitonType {
    Shrinking,
    Steady,
    Expanding,
}

impl std::fmt::Display for SolitonType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SolitonType::Shrinking => write!(f, "shrinking"),
            SolitonType::Steady => write!(f, "steady"),
            SolitonType::Expanding => write!(f, "expanding"),
        }
    }
}

impl SolitonType {
    pub fn from_lambda(lambda: f64) -> Self {
        if lambda.abs() < SIGN_EPS {
            SolitonType::Steady
        } else if lambda > 0.0 {
            SolitonType::Shrinking
        } else {
            SolitonType::Expanding
        }
    }
}

/// Soliton constant and the coefficients of the first-order system for a
/// non-Sasakian model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolitonParams {
    pub lambda: f64,
    pub delta1: f64,
    pub delta2: f64,
    pub delta3: f64,
    pub delta4: f64,
    /// `delta3 * delta4`.
    pub delta: f64,
    pub case_tag: CaseTag,
    pub soliton_type: SolitonType,
}

/// Soliton constant: `2 - 2 mu^2` on the non-Sasakian models, `2` on every
/// Sasakian model.
pub fn soliton_constant(model: &Model) -> f64 {
    match model {
        Model::Sasakian(_) => 2.0,
        Model::NonSasakian(m) => 2.0 - 2.0 * m.mu * m.mu,
    }
}

/// Delta coefficients of the first-order system for `(mu, beta)`:
/// `delta1 = beta - beta mu + 2 - 2 mu^2`, `delta2 = beta + beta mu + 2 - 2 mu^2`,
/// `delta3 = beta/2 + 1 + mu`, `delta4 = -beta/2 + mu - 1`.
pub fn delta_coefficients(mu: f64, beta: f64) -> Result<SolitonParams> {
    let model = NonSasakianModel::new(mu, beta)?;
    let lambda = soliton_constant(&Model::NonSasakian(model));
    let delta1 = beta - beta * mu + 2.0 - 2.0 * mu * mu;
    let delta2 = beta + beta * mu + 2.0 - 2.0 * mu * mu;
    let delta3 = beta / 2.0 + 1.0 + mu;
    let delta4 = -beta / 2.0 + mu - 1.0;
    let delta = delta3 * delta4;
    let case_tag = if delta.abs() < SIGN_EPS {
        CaseTag::III
    } else if delta > 0.0 {
        CaseTag::I
    } else {
        CaseTag::II
    };
    Ok(SolitonParams {
        lambda,
        delta1,
        delta2,
        delta3,
        delta4,
        delta,
        case_tag,
        soliton_type: SolitonType::from_lambda(lambda),
    })
}

/// Affine form `coef_u1 * u1 + coef_u2 * u2 + constant`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct AffineForm {
    pub coef_u1: f64,
    pub coef_u2: f64,
    pub constant: f64,
}

impl AffineForm {
    pub fn new(coef_u1: f64, coef_u2: f64, constant: f64) -> Self {
        Self { coef_u1, coef_u2, constant }
    }

    pub fn constant_only(constant: f64) -> Self {
        Self { coef_u1: 0.0, coef_u2: 0.0, constant }
    }

    pub fn eval(&self, u1: f64, u2: f64) -> f64 {
        self.coef_u1 * u1 + self.coef_u2 * u2 + self.constant
    }
}

/// Which solution family a potential field belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PotentialFamily {
    NonSasakian,
    Sasakian,
    /// Sasakian `c1 = 2`: the constant field on the unit sphere.
    SphereSpecial,
    /// Non-Sasakian `(mu, beta) = (1, 0)`: the flat model's affine field.
    FlatSpecial,
}

impl std::fmt::Display for PotentialFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PotentialFamily::NonSasakian => write!(f, "non-Sasakian"),
            PotentialFamily::Sasakian => write!(f, "Sasakian"),
            PotentialFamily::SphereSpecial => write!(f, "sphere special"),
            PotentialFamily::FlatSpecial => write!(f, "flat special"),
        }
    }
}

/// Closed-form potential vector field `v = f1 e1 + f2 e2` in the normal
/// coordinates `(u1, u2, t)` of the base point:
/// `f_i = A_i(u1, u2) T1(t) + B_i(u1, u2) T2(t)` with the time basis
/// determined by the case tag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialField {
    pub family: PotentialFamily,
    pub case_tag: CaseTag,
    /// Time frequency or growth rate; `sqrt(|delta|)` resp. `|c1 - 2|`.
    pub rate: f64,
    pub a1: AffineForm,
    pub b1: AffineForm,
    pub a2: AffineForm,
    pub b2: AffineForm,
    pub c: f64,
    pub d: f64,
}

/// Value and closed-form derivatives of a potential field at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialValues {
    pub f1: f64,
    pub f2: f64,
    pub f1_u1: f64,
    pub f1_u2: f64,
    pub f1_t: f64,
    pub f1_tt: f64,
    pub f2_u1: f64,
    pub f2_u2: f64,
    pub f2_t: f64,
    pub f2_tt: f64,
}

impl PotentialField {
    /// Coefficient of `f_i` in the axis equation `d^2 f_i / dt^2 = delta f_i`.
    pub fn ode_coefficient(&self) -> f64 {
        match self.case_tag {
            CaseTag::I => self.rate * self.rate,
            CaseTag::II => -self.rate * self.rate,
            CaseTag::III => 0.0,
        }
    }

    /// Time basis `(T1, T2)` with first and second derivatives at `t`.
    fn time_basis(&self, t: f64) -> [[f64; 2]; 3] {
        let r = self.rate;
        match self.case_tag {
            CaseTag::I => {
                let (e_plus, e_minus) = ((r * t).exp(), (-r * t).exp());
                [
                    [e_plus, e_minus],
                    [r * e_plus, -r * e_minus],
                    [r * r * e_plus, r * r * e_minus],
                ]
            }
            CaseTag::II => {
                let (cos, sin) = ((r * t).cos(), (r * t).sin());
                [
                    [cos, sin],
                    [-r * sin, r * cos],
                    [-r * r * cos, -r * r * sin],
                ]
            }
            CaseTag::III => [[1.0, t], [0.0, 1.0], [0.0, 0.0]],
        }
    }

    /// Evaluate the field and all derivatives the verifier consumes.
    pub fn evaluate(&self, p: &ChartPoint) -> PotentialValues {
        let [basis, d_basis, dd_basis] = self.time_basis(p.t);
        let (a1, b1) = (self.a1.eval(p.u1, p.u2), self.b1.eval(p.u1, p.u2));
        let (a2, b2) = (self.a2.eval(p.u1, p.u2), self.b2.eval(p.u1, p.u2));
        PotentialValues {
            f1: a1 * basis[0] + b1 * basis[1],
            f2: a2 * basis[0] + b2 * basis[1],
            f1_u1: self.a1.coef_u1 * basis[0] + self.b1.coef_u1 * basis[1],
            f1_u2: self.a1.coef_u2 * basis[0] + self.b1.coef_u2 * basis[1],
            f1_t: a1 * d_basis[0] + b1 * d_basis[1],
            f1_tt: a1 * dd_basis[0] + b1 * dd_basis[1],
            f2_u1: self.a2.coef_u1 * basis[0] + self.b2.coef_u1 * basis[1],
            f2_u2: self.a2.coef_u2 * basis[0] + self.b2.coef_u2 * basis[1],
            f2_t: a2 * d_basis[0] + b2 * d_basis[1],
            f2_tt: a2 * dd_basis[0] + b2 * dd_basis[1],
        }
    }
}

/// Evaluate a potential field; free-function form of [`PotentialField::evaluate`].
pub fn evaluate_potential(pf: &PotentialField, p: &ChartPoint) -> PotentialValues {
    pf.evaluate(p)
}

/// Construct the non-Sasakian potential field for `(mu, beta)` and
/// integration constants `(c, d)`.
pub fn solve_potential(mu: f64, beta: f64, c: f64, d: f64) -> Result<PotentialField> {
    let params = delta_coefficients(mu, beta)?;
    let SolitonParams { delta1, delta2, delta3, delta4, delta, case_tag, .. } = params;

    let field = match case_tag {
        CaseTag::I => {
            let rate = delta.sqrt();
            // both branches keep |delta_i| under the root; the signs of the
            // integration constants flip with the sign pattern of
            // (delta3, delta4), which case I forces to agree.
            let (s3, s4) = (delta3.abs().sqrt(), delta4.abs().sqrt());
            let (c1t, d1t, c2t, d2t) = if delta3 > 0.0 && delta4 > 0.0 {
                (-s3 * c, s3 * d, s4 * c, s4 * d)
            } else if delta3 < 0.0 && delta4 < 0.0 {
                (s3 * c, -s3 * d, s4 * c, s4 * d)
            } else {
                unreachable!("delta > 0 forces delta3 and delta4 to share a sign")
            };
            PotentialField {
                family: PotentialFamily::NonSasakian,
                case_tag,
                rate,
                a1: AffineForm::new(delta1 / 2.0, delta1 / 2.0, c1t),
                b1: AffineForm::new(delta1 / 2.0, delta1 / 2.0, d1t),
                a2: AffineForm::new(-delta1 / 2.0, delta2 / 2.0, c2t),
                b2: AffineForm::new(-delta1 / 2.0, delta2 / 2.0, d2t),
                c,
                d,
            }
        }
        CaseTag::II => {
            let rate = (-delta).sqrt();
            let (s3, s4) = (delta3.abs().sqrt(), delta4.abs().sqrt());
            let (c1t, d1t, c2t, d2t) = if delta3 > 0.0 && delta4 < 0.0 {
                (-s3 * c, s3 * d, -s4 * d, -s4 * c)
            } else if delta3 < 0.0 && delta4 > 0.0 {
                (s3 * c, s3 * d, s4 * d, -s4 * c)
            } else {
                unreachable!("delta < 0 forces delta3 and delta4 to differ in sign")
            };
            PotentialField {
                family: PotentialFamily::NonSasakian,
                case_tag,
                rate,
                a1: AffineForm::new(delta1, delta1, c1t),
                b1: AffineForm::new(delta1, delta1, d1t),
                a2: AffineForm::new(-delta1, delta2, c2t),
                b2: AffineForm::new(-delta1, delta2, d2t),
                c,
                d,
            }
        }
        CaseTag::III => {
            let family = if (mu - 1.0).abs() < SIGN_EPS && beta.abs() < SIGN_EPS {
                PotentialFamily::FlatSpecial
            } else {
                PotentialFamily::NonSasakian
            };
            PotentialField {
                family,
                case_tag,
                rate: 0.0,
                a1: AffineForm::new(delta1, 0.0, c),
                b1: AffineForm::constant_only(-delta3 * d),
                a2: AffineForm::new(0.0, delta2, d),
                b2: AffineForm::constant_only(-delta4 * c),
                c,
                d,
            }
        }
    };
    Ok(field)
}

/// Construct the Sasakian potential field for structure constant `c1` and
/// integration constants `(c, d)`. For `c1 = 2` the field is the constant
/// `v = C e1 + D e2`.
pub fn solve_sasakian_potential(c1: f64, c: f64, d: f64) -> PotentialField {
    if (c1 - 2.0).abs() < SIGN_EPS {
        return PotentialField {
            family: PotentialFamily::SphereSpecial,
            case_tag: CaseTag::III,
            rate: 0.0,
            a1: AffineForm::constant_only(c),
            b1: AffineForm::default(),
            a2: AffineForm::constant_only(d),
            b2: AffineForm::default(),
            c,
            d,
        };
    }
    let lin = 4.0 - 2.0 * c1;
    let (a2_const, b2_const) = if c1 > 2.0 { (c, d) } else { (-c, -d) };
    PotentialField {
        family: PotentialFamily::Sasakian,
        case_tag: CaseTag::II,
        rate: (c1 - 2.0).abs(),
        a1: AffineForm::new(lin, lin, -d),
        b1: AffineForm::new(lin, lin, c),
        a2: AffineForm::new(-lin, lin, a2_const),
        b2: AffineForm::new(-lin, lin, b2_const),
        c,
        d,
    }
}

/// Whether the two component functions look pointwise linearly independent
/// on a sample grid: reported as a diagnostic, never enforced.
pub fn components_independent(pf: &PotentialField) -> bool {
    let mut points = Vec::new();
    for i in -2..=2 {
        for j in -2..=2 {
            for k in -2..=2 {
                points.push(ChartPoint::new(0.4 * i as f64, 0.4 * j as f64, 0.4 * k as f64));
            }
        }
    }
    // (f1, f2) proportional on the whole grid <=> all 2x2 minors vanish
    let values: Vec<(f64, f64)> = points.iter().map(|p| {
        let v = pf.evaluate(p);
        (v.f1, v.f2)
    }).collect();
    let scale = values
        .iter()
        .map(|(f1, f2)| f1.abs().max(f2.abs()))
        .fold(0.0f64, f64::max)
        .max(1.0);
    for (i, (f1a, f2a)) in values.iter().enumerate() {
        for (f1b, f2b) in values.iter().skip(i + 1) {
            if (f1a * f2b - f2a * f1b).abs() > 1e-9 * scale * scale {
                return true;
            }
        }
    }
    false
}
