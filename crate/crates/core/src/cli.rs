//! Command-line surface: classification, solving, verification, curvature
//! tables and the Heisenberg chart check, with optional canonical JSON
//! output.

use std::ffi::OsString;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::frame::{curvature_from_connection, identify_alpha_beta, E1, E2, XI};
use crate::models::{
    heisenberg_chart, ChartPoint, Model, NonSasakianModel, SasakianModel,
};
use crate::report::{
    to_canonical_json, ChartSample, ChartSummary, CurvatureSummary, FieldSummary, ParamsEcho,
    ResidualSummary, RunReport, SolitonSummary, TableRow,
};
use crate::soliton::{
    delta_coefficients, solve_potential, solve_sasakian_potential, soliton_constant, CaseTag,
    PotentialField, SolitonType,
};
use crate::verify::{
    axis_residual, chart_soliton_residual, fd_ricci, linspace, origin_residual, FdConfig,
    ResidualReport, SolitonSystem, AXIS_TOLERANCE, CHART_TOLERANCE, ORIGIN_TOLERANCE,
};

#[derive(Debug, Parser)]
#[command(
    name = "contact-ricci",
    version,
    about = "Contact metric 3-manifold geometry and transversal Ricci soliton verification"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Emit the run report as canonical JSON on standard output.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Soliton constant, case tag, soliton type and Lie group of a model.
    Classify(ModelArgs),
    /// Construct the closed-form potential vector field of a model.
    Solve(SolveArgs),
    /// Verify the origin and Reeb-axis residuals of the solved field.
    Verify(VerifyArgs),
    /// Sectional curvatures, Ricci diagonal and (alpha, beta) of a model.
    Curvature(ModelArgs),
    /// Classification table over mu in {0.5, 1, 2} at beta = 0.
    Table,
    /// Heisenberg chart: finite-difference Ricci cross-check and the full
    /// coordinate residual of the chart potential field.
    Heisenberg(HeisenbergArgs),
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    /// h-eigenvalue of the non-Sasakian model (required unless --sasakian).
    #[arg(long)]
    pub mu: Option<f64>,
    /// beta constant of the non-Sasakian model.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub beta: f64,
    /// Select the Sasakian model family.
    #[arg(long)]
    pub sasakian: bool,
    /// Structure constant of the Sasakian model (requires --sasakian).
    #[arg(long, allow_negative_numbers = true)]
    pub c1: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// First integration constant.
    #[arg(long = "C", default_value_t = 1.0, allow_negative_numbers = true)]
    pub c: f64,
    /// Second integration constant.
    #[arg(long = "D", default_value_t = 1.0, allow_negative_numbers = true)]
    pub d: f64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub solve: SolveArgs,
    /// Number of Reeb-axis grid points over [-2, 2].
    #[arg(long, default_value_t = 41)]
    pub grid: usize,
    /// Override the tiered residual tolerances.
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Args)]
pub struct HeisenbergArgs {
    /// First integration constant.
    #[arg(long = "C", default_value_t = 1.0, allow_negative_numbers = true)]
    pub c: f64,
    /// Second integration constant.
    #[arg(long = "D", default_value_t = 1.0, allow_negative_numbers = true)]
    pub d: f64,
    /// Extra chart point "u1,u2,t" at which to report the residual as data.
    #[arg(long, value_parser = parse_point, allow_negative_numbers = true)]
    pub point: Option<ChartPoint>,
    /// Sample the residual field on an N^3 lattice over [-1, 1]^3.
    #[arg(long)]
    pub grid: Option<usize>,
    /// Pass tolerance of the origin residual.
    #[arg(long, default_value_t = CHART_TOLERANCE)]
    pub tol: f64,
    /// Finite-difference step.
    #[arg(long, default_value_t = 1e-5)]
    pub step: f64,
}

fn parse_point(text: &str) -> std::result::Result<ChartPoint, String> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected three comma-separated coordinates u1,u2,t, got `{text}`"));
    }
    let mut coords = [0.0f64; 3];
    for (slot, part) in coords.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse()
            .map_err(|_| format!("`{part}` is not a number"))?;
    }
    Ok(ChartPoint::from(coords))
}

impl ModelArgs {
    fn resolve(&self) -> Result<Model> {
        if self.sasakian {
            let c1 = self
                .c1
                .ok_or_else(|| Error::Usage("--sasakian requires --c1".into()))?;
            Ok(Model::Sasakian(SasakianModel::new(c1)?))
        } else {
            let mu = self
                .mu
                .ok_or_else(|| Error::Usage("--mu is required unless --sasakian is given".into()))?;
            if mu <= 0.0 {
                return Err(Error::Usage(format!(
                    "--mu must be strictly positive, got {mu}"
                )));
            }
            Ok(Model::NonSasakian(NonSasakianModel::new(mu, self.beta)?))
        }
    }

    fn echo(&self) -> ParamsEcho {
        if self.sasakian {
            ParamsEcho { c1: self.c1, ..Default::default() }
        } else {
            ParamsEcho { mu: self.mu, beta: Some(self.beta), ..Default::default() }
        }
    }
}

fn soliton_summary(model: &Model) -> SolitonSummary {
    match model {
        Model::NonSasakian(m) => {
            let params = delta_coefficients(m.mu, m.beta).expect("mu > 0 checked");
            SolitonSummary::from_params(&params)
        }
        Model::Sasakian(m) => {
            let system = SolitonSystem::Sasakian(*m);
            let (d1, d2, d3, d4) = system.coefficients();
            let delta = system.ode_coefficient();
            let case = if delta.abs() < 1e-12 { CaseTag::III } else { CaseTag::II };
            SolitonSummary {
                lambda: 2.0,
                deltas: vec![d1, d2, d3, d4, delta],
                case: case.to_string(),
                soliton_type: SolitonType::Shrinking.to_string(),
            }
        }
    }
}

fn solve_for_model(model: &Model, c: f64, d: f64) -> Result<PotentialField> {
    match model {
        Model::NonSasakian(m) => solve_potential(m.mu, m.beta, c, d),
        Model::Sasakian(m) => Ok(solve_sasakian_potential(m.c1, c, d)),
    }
}

fn system_for_model(model: &Model) -> Result<SolitonSystem> {
    Ok(match model {
        Model::NonSasakian(m) => SolitonSystem::NonSasakian(delta_coefficients(m.mu, m.beta)?),
        Model::Sasakian(m) => SolitonSystem::Sasakian(*m),
    })
}

fn retolerate(report: ResidualReport, tol: Option<f64>) -> ResidualReport {
    match tol {
        Some(t) => ResidualReport::new(report.residuals, report.points_checked, t),
        None => report,
    }
}

fn run_classify(args: &ModelArgs) -> Result<RunReport> {
    let model = args.resolve()?;
    Ok(RunReport {
        command: "classify".into(),
        params: args.echo(),
        soliton: Some(soliton_summary(&model)),
        group: Some(model.classify().to_string()),
        field: None,
        table: None,
        curvature: None,
        chart: None,
        residuals: vec![],
        pass: true,
        wall_time_ms: 0,
    })
}

fn run_solve(args: &SolveArgs) -> Result<RunReport> {
    let model = args.model.resolve()?;
    let field = solve_for_model(&model, args.c, args.d)?;
    let mut params = args.model.echo();
    params.c = Some(args.c);
    params.d = Some(args.d);
    Ok(RunReport {
        command: "solve".into(),
        params,
        soliton: Some(soliton_summary(&model)),
        group: Some(model.classify().to_string()),
        field: Some(FieldSummary::from_field(&field)),
        table: None,
        curvature: None,
        chart: None,
        residuals: vec![],
        pass: true,
        wall_time_ms: 0,
    })
}

fn run_verify(args: &VerifyArgs) -> Result<RunReport> {
    if args.grid < 2 {
        return Err(Error::Usage(format!("--grid must be at least 2, got {}", args.grid)));
    }
    let model = args.solve.model.resolve()?;
    let field = solve_for_model(&model, args.solve.c, args.solve.d)?;
    let system = system_for_model(&model)?;
    let origin = retolerate(origin_residual(&field, &system)?, args.tol);
    let grid = linspace(-2.0, 2.0, args.grid);
    let axis = retolerate(axis_residual(&field, &system, &grid)?, args.tol);

    let mut params = args.solve.model.echo();
    params.c = Some(args.solve.c);
    params.d = Some(args.solve.d);
    params.grid = Some(args.grid);
    params.tol = args.tol;
    let residuals = vec![
        ResidualSummary::from_report("origin", &origin),
        ResidualSummary::from_report("axis", &axis),
    ];
    let pass = residuals.iter().all(|r| r.pass);
    Ok(RunReport {
        command: "verify".into(),
        params,
        soliton: Some(soliton_summary(&model)),
        group: Some(model.classify().to_string()),
        field: Some(FieldSummary::from_field(&field)),
        table: None,
        curvature: None,
        chart: None,
        residuals,
        pass,
        wall_time_ms: 0,
    })
}

fn run_curvature(args: &ModelArgs) -> Result<RunReport> {
    let model = args.resolve()?;
    let (sf, connection) = match &model {
        Model::Sasakian(m) => (m.structure_functions(), m.connection()),
        Model::NonSasakian(m) => (m.structure_functions(), m.connection()),
    };
    let curv = curvature_from_connection(&connection);
    let ricci = curv.ricci();
    let alpha_beta = identify_alpha_beta(&curv, &sf, 1e-9);
    let summary = CurvatureSummary {
        k_e1_e2: curv.sectional(E1, E2),
        k_e1_xi: curv.sectional(E1, XI),
        k_e2_xi: curv.sectional(E2, XI),
        ricci_diag: [ricci.entry(E1, E1), ricci.entry(E2, E2), ricci.entry(XI, XI)],
        alpha: alpha_beta.map(|(a, _)| a),
        beta: alpha_beta.map(|(_, b)| b),
    };
    Ok(RunReport {
        command: "curvature".into(),
        params: args.echo(),
        soliton: Some(soliton_summary(&model)),
        group: Some(model.classify().to_string()),
        field: None,
        table: None,
        curvature: Some(summary),
        chart: None,
        residuals: vec![],
        pass: true,
        wall_time_ms: 0,
    })
}

fn run_table() -> Result<RunReport> {
    let rows = [0.5, 1.0, 2.0]
        .iter()
        .map(|&mu| {
            let params = delta_coefficients(mu, 0.0)?;
            let model = Model::NonSasakian(NonSasakianModel::new(mu, 0.0)?);
            let delta_sign = if params.delta.abs() < 1e-12 {
                "zero"
            } else if params.delta > 0.0 {
                "positive"
            } else {
                "negative"
            };
            Ok(TableRow {
                mu,
                delta_sign: delta_sign.into(),
                case: params.case_tag.to_string(),
                soliton: params.soliton_type.to_string(),
                group: model.classify().to_string(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RunReport {
        command: "table".into(),
        params: ParamsEcho::default(),
        soliton: None,
        group: None,
        field: None,
        table: Some(rows),
        curvature: None,
        chart: None,
        residuals: vec![],
        pass: true,
        wall_time_ms: 0,
    })
}

fn run_heisenberg(args: &HeisenbergArgs) -> Result<RunReport> {
    if !(args.step > 0.0) {
        return Err(Error::Usage(format!("--step must be positive, got {}", args.step)));
    }
    if !(args.tol > 0.0) {
        return Err(Error::Usage(format!("--tol must be positive, got {}", args.tol)));
    }
    let chart = heisenberg_chart();
    let field = solve_sasakian_potential(0.0, args.c, args.d);
    let lambda = soliton_constant(&Model::Sasakian(SasakianModel::new(0.0)?));
    let cfg = FdConfig { step: args.step, ..Default::default() };

    // cross-check: coordinate Ricci against the frame diagonal (-2, -2, 2)
    let origin = ChartPoint::origin();
    let ric = fd_ricci(&chart, &origin, &cfg)?;
    let frame = chart.frame(&origin);
    let expected = [-2.0, -2.0, 2.0];
    let ricci_error = (0..3)
        .map(|i| ((frame[i].transpose() * ric * frame[i])[(0, 0)] - expected[i]).abs())
        .fold(0.0f64, f64::max);

    let at_origin = chart_soliton_residual(&chart, &field, lambda, &origin, &cfg, args.tol)?;

    let point_sample = match &args.point {
        Some(p) => {
            let res = chart_soliton_residual(&chart, &field, lambda, p, &cfg, args.tol)?;
            Some(ChartSample { point: p.coords(), max: res.report.max_residual })
        }
        None => None,
    };
    let grid_samples = match args.grid {
        Some(n) => {
            if n < 2 || n > 33 {
                return Err(Error::Usage(format!("--grid must be in 2..=33, got {n}")));
            }
            let axis = linspace(-1.0, 1.0, n);
            let mut samples = Vec::with_capacity(n * n * n);
            for &u1 in &axis {
                for &u2 in &axis {
                    for &t in &axis {
                        let p = ChartPoint::new(u1, u2, t);
                        let res = chart_soliton_residual(&chart, &field, lambda, &p, &cfg, args.tol)?;
                        samples.push(ChartSample { point: p.coords(), max: res.report.max_residual });
                    }
                }
            }
            Some(samples)
        }
        None => None,
    };

    let mut matrix = [[0.0; 3]; 3];
    for (i, row) in matrix.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            *slot = at_origin.frame_components[(i, j)];
        }
    }
    let residuals = vec![
        ResidualSummary { name: "fd_ricci_origin".into(), max: ricci_error, pass: ricci_error < 1e-4 },
        ResidualSummary::from_report("chart_origin", &at_origin.report),
    ];
    let pass = residuals.iter().all(|r| r.pass);
    Ok(RunReport {
        command: "heisenberg".into(),
        params: ParamsEcho {
            c: Some(args.c),
            d: Some(args.d),
            point: args.point.as_ref().map(|p| p.coords()),
            grid: args.grid,
            tol: Some(args.tol),
            step: Some(args.step),
            ..Default::default()
        },
        soliton: None,
        group: Some("Nil".into()),
        field: Some(FieldSummary::from_field(&field)),
        table: None,
        curvature: None,
        chart: Some(ChartSummary { origin_matrix: matrix, point_sample, grid_samples }),
        residuals,
        pass,
        wall_time_ms: 0,
    })
}

/// Dispatch a parsed command line to a run report.
pub fn run(cli: &Cli) -> Result<RunReport> {
    let started = Instant::now();
    let mut report = match &cli.command {
        Command::Classify(args) => run_classify(args)?,
        Command::Solve(args) => run_solve(args)?,
        Command::Verify(args) => run_verify(args)?,
        Command::Curvature(args) => run_curvature(args)?,
        Command::Table => run_table()?,
        Command::Heisenberg(args) => run_heisenberg(args)?,
    };
    report.wall_time_ms = started.elapsed().as_millis() as u64;
    Ok(report)
}

fn render_residuals(report: &RunReport, out: &mut String) {
    for r in &report.residuals {
        out.push_str(&format!(
            "  {:<16} max={:<12.3e} {}\n",
            r.name,
            r.max,
            if r.pass { "PASS" } else { "FAIL" }
        ));
    }
}

/// Human-readable rendering of a run report.
pub fn render_human(report: &RunReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("{}\n", report.command));
    if let Some(s) = &report.soliton {
        out.push_str(&format!("  lambda = {}  ({})\n", s.lambda, s.soliton_type));
        out.push_str(&format!(
            "  deltas = [{}]\n",
            s.deltas.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(", ")
        ));
        out.push_str(&format!("  case   = {}\n", s.case));
    }
    if let Some(g) = &report.group {
        out.push_str(&format!("  group  = {g}\n"));
    }
    if let Some(f) = &report.field {
        out.push_str(&format!("  family = {}  case {}  rate = {}\n", f.family, f.case, f.rate));
        for (name, form) in [("A1", &f.a1), ("B1", &f.b1), ("A2", &f.a2), ("B2", &f.b2)] {
            out.push_str(&format!(
                "  {name} = {:+} u1 {:+} u2 {:+}\n",
                form.u1, form.u2, form.constant
            ));
        }
        out.push_str(&format!("  C = {}, D = {}\n", f.c, f.d));
    }
    if let Some(rows) = &report.table {
        out.push_str("  mu     delta     case  soliton    group\n");
        for row in rows {
            out.push_str(&format!(
                "  {:<6} {:<9} {:<5} {:<10} {}\n",
                row.mu, row.delta_sign, row.case, row.soliton, row.group
            ));
        }
    }
    if let Some(c) = &report.curvature {
        out.push_str(&format!(
            "  K(e1,e2) = {}, K(e1,xi) = {}, K(e2,xi) = {}\n",
            c.k_e1_e2, c.k_e1_xi, c.k_e2_xi
        ));
        out.push_str(&format!(
            "  Ricci diag = [{}, {}, {}]\n",
            c.ricci_diag[0], c.ricci_diag[1], c.ricci_diag[2]
        ));
        match (c.alpha, c.beta) {
            (Some(a), Some(b)) => out.push_str(&format!("  alpha = {a}, beta = {b}\n")),
            _ => out.push_str("  no (alpha, beta) identification\n"),
        }
    }
    if let Some(chart) = &report.chart {
        out.push_str("  origin residual matrix (frame components):\n");
        for row in &chart.origin_matrix {
            out.push_str(&format!("    [{:+.6e} {:+.6e} {:+.6e}]\n", row[0], row[1], row[2]));
        }
        if let Some(sample) = &chart.point_sample {
            out.push_str(&format!(
                "  residual at ({}, {}, {}): {:.6e}  (reported as data)\n",
                sample.point[0], sample.point[1], sample.point[2], sample.max
            ));
        }
        if let Some(samples) = &chart.grid_samples {
            let max = samples.iter().map(|s| s.max).fold(0.0f64, f64::max);
            out.push_str(&format!(
                "  off-origin residual field: {} samples, max {:.6e}  (reported as data)\n",
                samples.len(),
                max
            ));
        }
    }
    render_residuals(report, &mut out);
    out.push_str(&format!("  pass: {}\n", report.pass));
    out
}

/// Parse, run, print and map the outcome to the exit-code contract:
/// 0 pass/informational, 1 verification failure, 2 usage error.
pub fn execute<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = err.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                println!("{}", to_canonical_json(&report));
            } else {
                print!("{}", render_human(&report));
            }
            if report.pass {
                0
            } else {
                1
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            2
        }
    }
}
