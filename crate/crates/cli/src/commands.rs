//! The `verify`, `geodesic` and `levelset` subcommands.

use std::path::Path;

use serde::Serialize;

use finsler_nav::calculus::ScalarField;
use finsler_nav::dynamics::{alpha_c, integrate_geodesic, navigated_geodesic, GeodesicRecord};
use finsler_nav::iso::{
    levelmap_determinant, sample_level_set, verify_gradient_correspondence, verify_laplacian_relation_dmu,
    verify_laplacian_relation_osc, verify_theorem, CorrespondenceContext, VerificationReport,
};
use finsler_nav::navigation::{inverse_map, NavigationDatum};
use finsler_nav::{linalg, GeomError, MetricKind, NumericsConfig};

use crate::output::{csv_bytes, fmt_f64, Outputs};
use crate::scenario::{ConfigError, Scenario};

pub const REPORT_SCHEMA: &str = "finsler-nav/report/v1";

const GRADIENT_TOL: f64 = 1e-5;
const LAPLACIAN_TOL: f64 = 1e-3;

/// How a command ended.
#[derive(Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

#[derive(Debug)]
pub enum CommandError {
    Config(ConfigError),
    Io(String),
}

impl From<ConfigError> for CommandError {
    fn from(e: ConfigError) -> Self {
        Self::Config(e)
    }
}

impl From<std::io::Error> for CommandError {
    fn from(e: std::io::Error) -> Self {
        Self::Io(e.to_string())
    }
}

impl From<csv::Error> for CommandError {
    fn from(e: csv::Error) -> Self {
        Self::Io(e.to_string())
    }
}

#[derive(Debug, Serialize)]
struct ErrorEntry {
    identity: String,
    message: String,
}

#[derive(Debug, Serialize)]
struct ReportFile<'a> {
    schema: &'static str,
    scenario: &'a str,
    seed: u64,
    pass: bool,
    reports: Vec<VerificationReport>,
    errors: Vec<ErrorEntry>,
}

/// Points of `f⁻¹(α_c(t))` for each configured `t`.
fn base_level_points(
    ctx: &CorrespondenceContext,
    sc: &Scenario,
    cfg: &NumericsConfig,
) -> finsler_nav::Result<Vec<(f64, Vec<f64>)>> {
    let mut out = Vec::new();
    for &t in &sc.levels {
        let s = sample_level_set(ctx.base_field.as_ref(), alpha_c(ctx.c, t), &ctx.region, sc.samples_per_level, cfg)?;
        out.extend(s.points.into_iter().map(|p| (t, p)));
    }
    Ok(out)
}

type PointCheck = fn(&CorrespondenceContext, &[f64], f64, &NumericsConfig) -> finsler_nav::Result<f64>;

fn pointwise(
    identity: &str,
    tol: f64,
    ctx: &CorrespondenceContext,
    sc: &Scenario,
    check: impl Fn(&[f64], f64) -> finsler_nav::Result<f64>,
    errors: &mut Vec<ErrorEntry>,
) -> VerificationReport {
    let mut note = |e: GeomError| errors.push(ErrorEntry { identity: identity.into(), message: e.to_string() });
    let points = match base_level_points(ctx, sc, &sc.numerics) {
        Ok(p) => p,
        Err(e) => {
            note(e);
            return VerificationReport::errored(identity, tol);
        }
    };
    let mut rows = Vec::with_capacity(points.len());
    let mut first_error = None;
    for (t, p) in points {
        let r = check(&p, t).unwrap_or_else(|e| {
            first_error.get_or_insert(e);
            f64::NAN
        });
        rows.push((p, r));
    }
    if let Some(e) = first_error {
        note(e);
    }
    VerificationReport::from_residuals(identity, tol, &rows)
}

fn run_checks(ctx: &CorrespondenceContext, sc: &Scenario) -> (Vec<VerificationReport>, Vec<ErrorEntry>) {
    let cfg = sc.numerics;
    let mut reports = Vec::new();
    let mut errors = Vec::new();
    for check in &sc.checks {
        let relation = |f: PointCheck| move |p: &[f64], t: f64| f(ctx, p, t, &cfg);
        match check.as_str() {
            "theorem" => {
                let th = verify_theorem(ctx, &sc.levels, sc.samples_per_level, &cfg);
                reports.push(th.summary);
                reports.extend(th.parts);
                errors.extend(th.errors.into_iter().map(|(identity, message)| ErrorEntry { identity, message }));
            }
            "gradient-correspondence" => reports.push(pointwise(
                check,
                GRADIENT_TOL,
                ctx,
                sc,
                relation(verify_gradient_correspondence),
                &mut errors,
            )),
            "laplacian-relation-dmu" => reports.push(pointwise(
                check,
                LAPLACIAN_TOL,
                ctx,
                sc,
                relation(verify_laplacian_relation_dmu),
                &mut errors,
            )),
            "laplacian-relation-osc" => reports.push(pointwise(
                check,
                LAPLACIAN_TOL,
                ctx,
                sc,
                relation(verify_laplacian_relation_osc),
                &mut errors,
            )),
            // residual max(det Ψ_*, 0) on the zero level
            "jacobian-sign" => {
                let zero = Scenario { levels: vec![0.0], ..sc.clone() };
                let det = |p: &[f64], _: f64| {
                    levelmap_determinant(&ctx.datum.base, &ctx.datum.wind, ctx.base_field.as_ref(), p, &cfg)
                        .map(|d| d.max(0.0))
                };
                reports.push(pointwise(check, 0.0, ctx, &zero, det, &mut errors));
            }
            other => unreachable!("check {other} passed validation"),
        }
    }
    (reports, errors)
}

fn summary_text(sc: &Scenario, reports: &[VerificationReport], errors: &[ErrorEntry], pass: bool) -> String {
    let mut s = format!("scenario {} (seed {})\n", sc.name, sc.seed);
    for r in reports {
        s.push_str(&r.summary_line());
        s.push('\n');
    }
    for e in errors {
        s.push_str(&format!("error in {}: {}\n", e.identity, e.message));
    }
    s.push_str(if pass { "all checks passed\n" } else { "some checks failed\n" });
    s
}

pub fn verify(sc: &Scenario, out: &Path) -> Result<Outcome, CommandError> {
    let (reports, errors) = match sc.context()? {
        Ok(ctx) => run_checks(&ctx, sc),
        Err(e) => {
            let errors = vec![ErrorEntry { identity: "hypotheses".into(), message: e.to_string() }];
            let reports = sc.checks.iter().map(|c| VerificationReport::errored(c.as_str(), 0.0)).collect();
            (reports, errors)
        }
    };
    let pass = !reports.is_empty() && reports.iter().all(|r| r.pass);
    let summary = summary_text(sc, &reports, &errors, pass);
    let file = ReportFile { schema: REPORT_SCHEMA, scenario: &sc.name, seed: sc.seed, pass, reports, errors };
    let mut json = serde_json::to_vec_pretty(&file).map_err(|e| CommandError::Io(e.to_string()))?;
    json.push(b'\n');
    let mut outputs = Outputs::default();
    outputs.add(out.join(format!("{}.report.json", sc.prefix())), json);
    outputs.add(out.join(format!("{}.summary.txt", sc.prefix())), summary.clone().into_bytes());
    outputs.commit(out)?;
    print!("{summary}");
    Ok(if pass { Outcome::Pass } else { Outcome::Fail })
}

/// `γ̃(t) = Ψ_t(γ(α_c(t)))` for a unit speed Lorentz geodesic; `None` when
/// the comparison does not apply.
fn navigated_positions(
    datum: &NavigationDatum,
    x0: &[f64],
    y0: &[f64],
    horizon: f64,
    cfg: &NumericsConfig,
) -> finsler_nav::Result<Option<GeodesicRecord>> {
    let Some(c) = datum.dilation_c else { return Ok(None) };
    if !(horizon > 0.0) {
        return Ok(None);
    }
    let y = inverse_map(datum, x0, y0, cfg)?;
    if (datum.base.value(x0, &y) - 1.0).abs() > 1e-9 {
        return Ok(None);
    }
    let base = integrate_geodesic(&datum.base, x0, &y, alpha_c(c, horizon), cfg)?;
    Ok(Some(navigated_geodesic(datum, &base, horizon, cfg)?))
}

pub fn geodesic(sc: &Scenario, out: &Path) -> Result<Outcome, CommandError> {
    let cfg = sc.numerics;
    if sc.geodesics.is_empty() {
        return Err(ConfigError("no \"geodesics\" configured".into()).into());
    }
    let n = sc.metric.dim()?;
    let probes: Vec<Vec<f64>> = sc.geodesics.iter().map(|g| g.x0.clone()).collect();
    let metric = sc.metric.build(&probes, &cfg)?;
    let datum = match metric.kind() {
        MetricKind::LorentzCone => sc.datum().ok(),
        MetricKind::FinslerPositiveDefinite => None,
    };
    let mut header = vec!["geodesic".to_string()];
    header.extend(GeodesicRecord::header(n));
    if datum.is_some() {
        header.extend((1..=n).map(|i| format!("nav_x{i}")));
        header.push("nav_gap".into());
    }
    let mut rows = Vec::new();
    let mut failed = false;
    for (i, g) in sc.geodesics.iter().enumerate() {
        let geo = match integrate_geodesic(&metric, &g.x0, &g.y0, g.horizon, &cfg) {
            Ok(geo) => geo,
            Err(e) => {
                failed = true;
                println!("geodesic {i}: {e}");
                continue;
            }
        };
        let nav = match &datum {
            Some(d) => navigated_positions(d, &g.x0, &g.y0, g.horizon, &cfg).unwrap_or_else(|e| {
                println!("geodesic {i}: navigated comparison unavailable: {e}");
                None
            }),
            None => None,
        };
        let aligned = nav.filter(|nav| nav.samples.len() == geo.samples.len());
        let mut gap: f64 = 0.0;
        for (k, values) in geo.rows(&metric).into_iter().enumerate() {
            let mut row = vec![i.to_string()];
            row.extend(values.iter().map(|&v| fmt_f64(v)));
            if datum.is_some() {
                match &aligned {
                    Some(nav) => {
                        let p = &nav.samples[k].x;
                        let d = linalg::dist(p, &geo.samples[k].x);
                        gap = gap.max(d);
                        row.extend(p.iter().map(|&v| fmt_f64(v)));
                        row.push(fmt_f64(d));
                    }
                    None => row.extend(std::iter::repeat_n(String::new(), n + 1)),
                }
            }
            rows.push(row);
        }
        let end = geo.end();
        print!("geodesic {i}: reached t = {}, speed drift {:.2e}", end.t, geo.speed_drift(&metric));
        if aligned.is_some() {
            print!(", max distance to navigated curve {gap:.2e}");
        }
        println!();
    }
    let mut outputs = Outputs::default();
    outputs.add(out.join(format!("{}.geodesic.csv", sc.prefix())), csv_bytes(&header, &rows)?);
    outputs.commit(out)?;
    Ok(if failed { Outcome::Fail } else { Outcome::Pass })
}

pub fn levelset(sc: &Scenario, out: &Path) -> Result<Outcome, CommandError> {
    let cfg = sc.numerics;
    let ctx = match sc.context()? {
        Ok(ctx) => ctx,
        Err(e) => {
            println!("hypotheses: {e}");
            return Ok(Outcome::Fail);
        }
    };
    let f_tilde = ctx.corresponded_field();
    let n = ctx.dim();
    let mut header = vec!["field".to_string(), "t".into(), "level".into()];
    header.extend((1..=n).map(|i| format!("x{i}")));
    let mut rows = Vec::new();
    let mut failed = false;
    for &t in &sc.levels {
        let level_f = alpha_c(ctx.c, t);
        let fields: [(&str, &dyn ScalarField, f64); 2] =
            [("f", ctx.base_field.as_ref(), level_f), ("f_tilde", &f_tilde, t)];
        for (name, field, level) in fields {
            match sample_level_set(field, level, &ctx.region, sc.samples_per_level, &cfg) {
                Ok(s) => {
                    println!("{name} = {level}: {} points", s.points.len());
                    for p in s.points {
                        let mut row = vec![name.to_string(), fmt_f64(t), fmt_f64(level)];
                        row.extend(p.iter().map(|&v| fmt_f64(v)));
                        rows.push(row);
                    }
                }
                Err(e) => {
                    failed = true;
                    println!("{name} = {level}: {e}");
                }
            }
        }
    }
    let mut outputs = Outputs::default();
    outputs.add(out.join(format!("{}.levelset.csv", sc.prefix())), csv_bytes(&header, &rows)?);
    outputs.commit(out)?;
    Ok(if failed { Outcome::Fail } else { Outcome::Pass })
}
