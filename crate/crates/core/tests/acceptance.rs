//! The twelve acceptance criteria, each run at its stated tolerance.
//!
//! Runs without the libtest harness so that every criterion prints one
//! `PASS`/`FAIL` line; the target fails if any criterion fails or cannot be
//! evaluated.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::function::gamma::gamma;

use finsler_nav::calculus::{
    bh_density, gradient_field, laplacian_dmu, laplacian_osculating, s_curvature, unit_ball_volume, AffineField,
    FunkHyperplaneLevel, FunkSphereLevel, MeasureDescriptor, NormSphereField, ScalarField, SphereField,
};
use finsler_nav::dynamics::{
    alpha_c, homothety_residual, integrate_geodesic, navigated_geodesic, restriction_identity_residual,
    tensor_homothety_residual, FlowMap,
};
use finsler_nav::iso::{
    correspond_value, verify_laplacian_relation_dmu, verify_laplacian_relation_osc, verify_theorem,
    CorrespondenceContext,
};
use finsler_nav::linalg;
use finsler_nav::metric::{inner, signature, tensor_matrix};
use finsler_nav::navigation::{
    forward_map, indicatrix_tangent, inverse_map, tensor_relation_residual_pairs, NavigationDatum,
};
use finsler_nav::{zoo, NumericsConfig, Result, VectorFieldSpec};

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: String) -> Result<Verdict> {
    Ok(Verdict { pass, detail })
}

fn cfg() -> NumericsConfig {
    NumericsConfig::default()
}

fn unit_random(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let r = linalg::norm(&v);
        if r > 0.1 && r <= 1.0 {
            return linalg::scale(&v, 1.0 / r);
        }
    }
}

/// A point with `r_lo ≤ |x| ≤ r_hi` and a base vector `y` of length `len`
/// strictly inside the pre-cone `⟨y, x⟩ > |y|` of the radial wind.
fn funk_sample(rng: &mut ChaCha8Rng, n: usize, r_lo: f64, r_hi: f64, len: f64) -> (Vec<f64>, Vec<f64>) {
    let r = rng.gen_range(r_lo..=r_hi);
    let dir = unit_random(rng, n);
    let x = linalg::scale(&dir, r);
    let mut w = unit_random(rng, n);
    w = linalg::axpy(&w, -linalg::dot(&w, &dir), &dir);
    let w = linalg::scale(&w, 1.0 / linalg::norm(&w));
    let phi = rng.gen_range(-0.8..0.8) * (1.0 / r).acos();
    let y = linalg::add(&linalg::scale(&dir, len * phi.cos()), &linalg::scale(&w, len * phi.sin()));
    (x, y)
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn funk_sphere_ctx(n: usize, a: f64) -> CorrespondenceContext {
    let mut x0 = vec![0.0; n];
    x0[0] = a;
    CorrespondenceContext::with_defaults(NavigationDatum::funk(n), Arc::new(SphereField::origin(n, a)), x0, &cfg())
        .expect("sphere datum satisfies the hypotheses")
}

fn criterion_1() -> Result<Verdict> {
    let mut rng = rng(1);
    let (mut transport, mut round_trip) = (0.0f64, 0.0f64);
    for k in 0..500 {
        let n = 2 + k % 2;
        let d = NavigationDatum::funk(n);
        let funk = zoo::lorentz_funk(n);
        let len = rng.gen_range(0.2..3.0);
        let (x, y) = funk_sample(&mut rng, n, 1.2, 4.0, len);
        let yt = forward_map(&d, &x, &y, &cfg())?;
        transport = transport.max((funk.value(&x, &yt) - len).abs());
        round_trip = round_trip.max(linalg::dist(&inverse_map(&d, &x, &yt, &cfg())?, &y));
    }
    verdict(
        transport <= 1e-9 && round_trip <= 1e-9,
        format!("max |F̃(φ(y)) − F(y)| = {transport:.2e}, max round trip = {round_trip:.2e} over 500 samples"),
    )
}

fn criterion_2() -> Result<Verdict> {
    let mut rng = rng(2);
    let funk = zoo::lorentz_funk(2);
    let d = NavigationDatum::funk(2);
    let (mut value, mut tensor) = (0.0f64, 0.0f64);
    let mut count = 0;
    for i in 0..8 {
        let r = 1.2 + 2.8 * i as f64 / 7.0;
        for j in 0..8 {
            let theta = std::f64::consts::TAU * j as f64 / 8.0;
            let x = vec![r * theta.cos(), r * theta.sin()];
            let nav =
                zoo::navigation_induced(zoo::euclidean(2), VectorFieldSpec::RadialNegative, &[x.clone()], &cfg())?;
            for _ in 0..3 {
                let (_, y) = {
                    let (xs, ys) = funk_sample(&mut rng, 2, r, r, 1.0);
                    // rotate the sampled vector into the frame of x
                    let (c, s) = (theta.cos(), theta.sin());
                    let frame = xs[1].atan2(xs[0]);
                    let (cf, sf) = (frame.cos(), frame.sin());
                    let local = [cf * ys[0] + sf * ys[1], -sf * ys[0] + cf * ys[1]];
                    (x.clone(), vec![c * local[0] - s * local[1], s * local[0] + c * local[1]])
                };
                let yt = forward_map(&d, &x, &y, &cfg())?;
                value = value.max((funk.value(&x, &yt) - nav.value(&x, &yt)).abs());
                let g1 = tensor_matrix(&funk, &x, &yt)?;
                let g2 = tensor_matrix(&nav, &x, &yt)?;
                tensor = tensor.max((g1 - g2).amax());
                count += 1;
            }
        }
    }
    verdict(
        value <= 1e-7 && tensor <= 1e-6,
        format!(
            "max value gap = {value:.2e}, max tensor entry gap = {tensor:.2e} on {count} grid samples, 1.2 ≤ |x| ≤ 4"
        ),
    )
}

fn criterion_3() -> Result<Verdict> {
    let mut rng = rng(3);
    let mut failures = 0;
    for k in 0..500 {
        let n = 2 + k % 2;
        let d = NavigationDatum::funk(n);
        let funk = zoo::lorentz_funk(n);
        let len = rng.gen_range(0.2..3.0);
        let (x, y) = funk_sample(&mut rng, n, 1.2, 4.0, len);
        let yt = forward_map(&d, &x, &y, &cfg())?;
        if signature(&funk, &x, &yt, &cfg()).ok() != Some((1, n - 1)) {
            failures += 1;
        }
    }
    verdict(failures == 0, format!("{failures} signature failures in 500 samples (n = 2, 3)"))
}

fn criterion_4() -> Result<Verdict> {
    let mut rng = rng(4);
    let d = NavigationDatum::funk(2);
    let funk = zoo::lorentz_funk(2);
    let (mut numeric, mut closed) = (0.0f64, 0.0f64);
    for _ in 0..50 {
        let (x, y) = funk_sample(&mut rng, 2, 1.2, 4.0, 1.0);
        let pairs: Vec<(Vec<f64>, Vec<f64>)> =
            (0..4).map(|_| (unit_random(&mut rng, 2), unit_random(&mut rng, 2))).collect();
        numeric = numeric.max(tensor_relation_residual_pairs(&d, &x, &y, &pairs, &cfg())?);
        // same relation against the closed-form Funk tensor
        let yt = forward_map(&d, &x, &y, &cfg())?;
        let g = tensor_matrix(&d.base, &x, &y)?;
        let gt = tensor_matrix(&funk, &x, &yt)?;
        let factor = 1.0 + linalg::quad_form(&g, &y, &d.wind.at(&x));
        for (u, v) in &pairs {
            let u = indicatrix_tangent(&d.base, &x, &y, u)?;
            let v = indicatrix_tangent(&d.base, &x, &y, v)?;
            closed = closed.max((linalg::quad_form(&gt, &u, &v) - linalg::quad_form(&g, &u, &v) / factor).abs());
        }
    }
    let spot = inner(&funk, &[2.0, 0.0], &[-1.0, 0.0], &[0.0, 1.0], &[0.0, 1.0], &cfg())?;
    verdict(
        numeric <= 1e-6 && closed <= 1e-6 && (spot + 1.0).abs() <= 1e-8,
        format!(
            "200 pairs: residual {numeric:.2e} (navigation), {closed:.2e} (closed form); ⟨e₂,e₂⟩ at (2,0),(−1,0) = {spot:.10}"
        ),
    )
}

fn funk_ray_error(step: f64) -> Result<f64> {
    let funk = zoo::lorentz_funk(2);
    let c = NumericsConfig { ode_step: step, ..cfg() };
    let geo = integrate_geodesic(&funk, &[2.0, 0.0], &[-1.0, 0.0], 0.5, &c)?;
    Ok(geo.samples.iter().map(|s| linalg::dist(&s.x, &[1.0 + (-s.t).exp(), 0.0])).fold(0.0, f64::max))
}

fn criterion_5() -> Result<Verdict> {
    let sup = funk_ray_error(1e-3)?;
    // the step-1e-3 error sits at roundoff; the order is measured on coarse steps
    let (e1, e2) = (funk_ray_error(0.1)?, funk_ray_error(0.05)?);
    let ratio = e1 / e2;
    let d = NavigationDatum::funk(2);
    let base = integrate_geodesic(&d.base, &[2.0, 0.0], &[1.0, 0.0], 1.0, &cfg())?;
    let nav = navigated_geodesic(&d, &base, 0.5, &cfg())?;
    let funk = zoo::lorentz_funk(2);
    let integrated = integrate_geodesic(&funk, &[2.0, 0.0], &[-1.0, 0.0], 0.5, &cfg())?;
    let mut two_path = 0.0f64;
    for s in &nav.samples {
        let (x, _) = integrated.state_at(&funk, s.t, &cfg())?;
        two_path = two_path.max(linalg::dist(&x, &s.x));
    }
    verdict(
        sup <= 1e-5 && (12.0..=20.0).contains(&ratio) && two_path <= 1e-5,
        format!(
            "sup error {sup:.2e} at step 1e-3; error ratio {ratio:.2} (steps 0.1 → 0.05); navigated vs integrated {two_path:.2e}"
        ),
    )
}

fn criterion_6() -> Result<Verdict> {
    let mut rng = rng(6);
    let d = NavigationDatum::funk(2);
    let c = d.dilation_c.expect("radial dilation");
    let flow = FlowMap::new(d.wind.clone());
    let (mut e007, mut e008, mut e016) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..50 {
        let (x, y) = funk_sample(&mut rng, 2, 1.2, 4.0, 1.0);
        let t = rng.gen_range(-0.5..0.5);
        e007 = e007.max(homothety_residual(&d.base, &flow, c, &x, &y, t, &cfg())?);
        let (u, v) = (unit_random(&mut rng, 2), unit_random(&mut rng, 2));
        e016 = e016.max(tensor_homothety_residual(&d.base, &flow, c, &x, &y, &u, &v, t, &cfg())?);
        let geo = integrate_geodesic(&d.base, &x, &y, 0.5, &cfg())?;
        e008 = e008.max(restriction_identity_residual(&d.base, &d.wind, c, &geo)?);
    }
    // a non-Euclidean base: the quartic norm scaled by |x|^{1/2}, c = 3/4
    let scaled =
        NavigationDatum::new(zoo::power_scaled(zoo::minkowski_quartic(2), 0.5)?, VectorFieldSpec::RadialNegative)?;
    let cs = scaled.dilation_c.expect("power-scaled dilation");
    for _ in 0..20 {
        let (x, y) = funk_sample(&mut rng, 2, 1.2, 4.0, 1.0);
        let t = rng.gen_range(-0.5..0.5);
        e007 = e007.max(homothety_residual(&scaled.base, &flow, cs, &x, &y, t, &cfg())?);
        let (u, v) = (unit_random(&mut rng, 2), unit_random(&mut rng, 2));
        e016 = e016.max(tensor_homothety_residual(&scaled.base, &flow, cs, &x, &y, &u, &v, t, &cfg())?);
    }
    verdict(
        e007 <= 1e-7 && e008 <= 1e-9 && e016 <= 1e-6,
        format!("norm scaling {e007:.2e}, restriction identity {e008:.2e}, tensor scaling {e016:.2e}"),
    )
}

fn criterion_7() -> Result<Verdict> {
    let mut rng = rng(7);
    let mut worst = [0.0f64; 2];
    for (slot, n) in [2usize, 3].into_iter().enumerate() {
        let expected = (n as f64 + 1.0) * 0.5;
        let d = NavigationDatum::funk(n);
        let funk = zoo::lorentz_funk(n);
        let mu = MeasureDescriptor::lebesgue();
        for _ in 0..100 {
            let (x, y) = funk_sample(&mut rng, n, 1.3, 4.0, 1.0);
            let yt = forward_map(&d, &x, &y, &cfg())?;
            let s = s_curvature(&funk, &mu, &x, &yt, &cfg())?;
            worst[slot] = worst[slot].max((s - expected).abs());
        }
    }
    // the same shift through numerical navigation of the quartic norm
    let quartic = NavigationDatum::new(zoo::minkowski_quartic(2), VectorFieldSpec::RadialNegative)?;
    let q_mu = MeasureDescriptor::busemann_hausdorff(&quartic.base, &cfg())?;
    let induced = quartic.induced_metric(&cfg());
    let mut shift = 0.0f64;
    for _ in 0..10 {
        let (x, y) = funk_sample(&mut rng, 2, 1.5, 3.0, 1.0);
        let y = linalg::scale(&y, 1.0 / quartic.base.value(&x, &y));
        let yt = forward_map(&quartic, &x, &y, &cfg())?;
        let s_tilde = s_curvature(&induced, &q_mu, &x, &yt, &cfg())?;
        shift = shift.max((s_tilde - 1.5).abs());
    }
    // flow invariance of S on a base where S does not vanish
    let scaled =
        NavigationDatum::new(zoo::power_scaled(zoo::minkowski_quartic(2), 0.5)?, VectorFieldSpec::RadialNegative)?;
    let s_mu = MeasureDescriptor::busemann_hausdorff(&scaled.base, &cfg())?;
    let flow = FlowMap::new(scaled.wind.clone());
    let (mut invariance, mut magnitude) = (0.0f64, 0.0f64);
    let mut kept = 0;
    while kept < 20 {
        let (x, y) = funk_sample(&mut rng, 2, 1.5, 3.0, 1.0);
        // the quartic tensor degenerates for y on a coordinate axis
        if y.iter().map(|c| c.abs()).fold(f64::INFINITY, f64::min) < 0.2 * linalg::norm(&y) {
            continue;
        }
        kept += 1;
        let t = rng.gen_range(-0.3..0.3);
        let s0 = s_curvature(&scaled.base, &s_mu, &x, &y, &cfg())?;
        let s1 = s_curvature(&scaled.base, &s_mu, &flow.apply(t, &x)?, &flow.tangent(t, &x, &y)?, &cfg())?;
        invariance = invariance.max((s1 - s0).abs());
        magnitude = magnitude.max(s0.abs());
    }
    verdict(
        worst[0] <= 1e-3 && worst[1] <= 1e-3 && shift <= 1e-3 && invariance <= 1e-5 && magnitude > 1e-2,
        format!(
            "|S̃ − 1.5| ≤ {:.2e} (n=2), |S̃ − 2| ≤ {:.2e} (n=3), quartic navigation {shift:.2e}; flow invariance {invariance:.2e} with max |S| = {magnitude:.2}",
            worst[0], worst[1]
        ),
    )
}

fn criterion_8() -> Result<Verdict> {
    let mut rng = rng(8);
    let quartic = zoo::minkowski_quartic(2);
    let mu = MeasureDescriptor::busemann_hausdorff(&quartic, &cfg())?;
    let sphere = NormSphereField::new(quartic.clone(), vec![0.0, 0.0], 2.0)?;
    let mut finsler = 0.0f64;
    let mut spread = (f64::INFINITY, f64::NEG_INFINITY);
    for _ in 0..100 {
        let x = linalg::scale(&unit_random(&mut rng, 2), rng.gen_range(1.6..2.4));
        let grad = gradient_field(&quartic, &sphere, &x, &cfg(), None)?;
        let osc = laplacian_osculating(&quartic, &sphere, &x, &cfg())?;
        let dmu = laplacian_dmu(&quartic, &mu, &sphere, &x, &cfg())?;
        let s = s_curvature(&quartic, &mu, &x, &grad, &cfg())?;
        finsler = finsler.max((osc - dmu - s).abs());
        spread = (spread.0.min(osc), spread.1.max(osc));
    }
    let funk = zoo::lorentz_funk(2);
    let f1 = FunkSphereLevel { dim: 2, a: 2.0 };
    let lebesgue = MeasureDescriptor::lebesgue();
    let mut lorentz = 0.0f64;
    for _ in 0..100 {
        let x = linalg::scale(&unit_random(&mut rng, 2), rng.gen_range(1.6..2.4));
        let grad = gradient_field(&funk, &f1, &x, &cfg(), None)?;
        let osc = laplacian_osculating(&funk, &f1, &x, &cfg())?;
        let dmu = laplacian_dmu(&funk, &lebesgue, &f1, &x, &cfg())?;
        let s = s_curvature(&funk, &lebesgue, &x, &grad, &cfg())?;
        lorentz = lorentz.max((osc - dmu - s).abs());
    }
    verdict(
        finsler <= 1e-4 && lorentz <= 1e-4,
        format!(
            "Δf − Δ_dμ f − S(∇f): {finsler:.2e} (quartic norm spheres, Δf ∈ [{:.3}, {:.3}]), {lorentz:.2e} (Funk level function)",
            spread.0, spread.1
        ),
    )
}

fn criterion_9() -> Result<Verdict> {
    let sphere = funk_sphere_ctx(2, 2.0);
    let plane = CorrespondenceContext::with_defaults(
        NavigationDatum::funk(2),
        Arc::new(AffineField::hyperplane(2, 2.0)),
        vec![2.0, 0.0],
        &cfg(),
    )?;
    let closed_sphere = FunkSphereLevel { dim: 2, a: 2.0 };
    let closed_plane = FunkHyperplaneLevel { dim: 2, a: 2.0 };
    let mut lines = Vec::new();
    let mut pass = true;
    let mut rng = rng(9);
    for (name, ctx, closed) in [
        ("sphere", &sphere, &closed_sphere as &dyn ScalarField),
        ("hyperplane", &plane, &closed_plane as &dyn ScalarField),
    ] {
        let report = verify_theorem(ctx, &[-0.2, 0.0, 0.2], 20, &cfg());
        let mut closed_gap = 0.0f64;
        let mut points = 0;
        while points < 200 {
            let p = linalg::axpy(&ctx.x0, 0.4, &unit_random(&mut rng, 2));
            let p = linalg::axpy(&ctx.x0, rng.gen_range(0.0..1.0f64).sqrt(), &linalg::sub(&p, &ctx.x0));
            if !ctx.region.contains(&p) {
                continue;
            }
            closed_gap = closed_gap.max((correspond_value(ctx, &p)? - closed.eval(&p)?).abs());
            points += 1;
        }
        pass &= report.summary.pass && closed_gap <= 1e-6;
        let parts: Vec<String> =
            report.parts.iter().map(|p| format!("{} {:.1e}", p.identity, p.max_residual)).collect();
        lines.push(format!(
            "{name}: {} [{}], closed form {closed_gap:.1e}",
            if report.summary.pass { "pass" } else { "fail" },
            parts.join(", ")
        ));
    }
    verdict(pass, lines.join("; "))
}

fn criterion_10() -> Result<Verdict> {
    let mut rng = rng(10);
    let ctx2 = funk_sphere_ctx(2, 2.0);
    let ctx3 = funk_sphere_ctx(3, 3.0);
    let (mut dmu, mut osc) = (0.0f64, 0.0f64);
    for k in 0..100 {
        let ctx = if k % 2 == 0 { &ctx2 } else { &ctx3 };
        let n = ctx.dim();
        let t = rng.gen_range(-0.3..0.3);
        let mut dir = ctx.x0.clone();
        let offset = linalg::scale(&unit_random(&mut rng, n), rng.gen_range(0.0..0.15) * linalg::norm(&ctx.x0));
        dir = linalg::add(&dir, &offset);
        let r = linalg::norm(&ctx.x0) + alpha_c(ctx.c, t);
        let x = linalg::scale(&dir, r / linalg::norm(&dir));
        dmu = dmu.max(verify_laplacian_relation_dmu(ctx, &x, t, &cfg())?);
        osc = osc.max(verify_laplacian_relation_osc(ctx, &x, t, &cfg())?);
    }
    let spot = laplacian_osculating(&zoo::lorentz_funk(2), &ctx2.corresponded_field(), &[2.0, 0.0], &cfg())?;
    verdict(
        dmu <= 1e-3 && osc <= 1e-3 && spot.abs() <= 1e-3,
        format!("100 (x, t) pairs: dμ residual {dmu:.2e}, osculating residual {osc:.2e}; Δ̃f̃₁ at (2,0) = {spot:.2e}"),
    )
}

fn criterion_11() -> Result<Verdict> {
    let d = NavigationDatum::new(zoo::euclidean(2), VectorFieldSpec::Quadratic { coeff: 1.0 })?.with_dilation(0.5);
    let ctx = CorrespondenceContext::with_defaults(d, Arc::new(SphereField::origin(2, 2.0)), vec![2.0, 0.0], &cfg())?;
    let mut rng = rng(11);
    let mut smallest = f64::INFINITY;
    for _ in 0..10 {
        let theta = rng.gen_range(-0.15..0.15f64);
        let x = [2.0 * theta.cos(), 2.0 * theta.sin()];
        smallest = smallest.min(verify_laplacian_relation_dmu(&ctx, &x, 0.0, &cfg())?);
    }
    let report = verify_theorem(&ctx, &[-0.1, 0.0, 0.1], 10, &cfg());
    verdict(
        smallest > 1e-1 && !report.summary.pass,
        format!(
            "quadratic wind with claimed c = 1/2: smallest residual {smallest:.2e} on 10 zero-level points; theorem report {}",
            if report.summary.pass { "passes" } else { "fails" }
        ),
    )
}

fn criterion_12() -> Result<Verdict> {
    let euclid = [
        bh_density(&zoo::euclidean(2), &[0.3, 1.0], &cfg())?,
        bh_density(&zoo::euclidean(3), &[1.0, 2.0, 3.0], &cfg())?,
    ];
    let exact = euclid.iter().all(|&s| s == 1.0);
    let mut quartic_gap = 0.0f64;
    for n in [2usize, 3] {
        // volume of the unit L⁴ ball: (2Γ(5/4))ⁿ / Γ(1 + n/4)
        let volume = (2.0 * gamma(1.25)).powi(n as i32) / gamma(1.0 + n as f64 / 4.0);
        let expected = unit_ball_volume(n) / volume;
        let sigma = bh_density(&zoo::minkowski_quartic(n), &vec![0.0; n], &cfg())?;
        quartic_gap = quartic_gap.max((sigma / expected - 1.0).abs());
    }
    let mut randers_gap = 0.0f64;
    for (n, v) in [(2usize, vec![0.5, 0.0]), (3, vec![0.2, -0.3, 0.4])] {
        let m = zoo::randers_navigation(n, VectorFieldSpec::Constant { v })?;
        randers_gap = randers_gap.max((bh_density(&m, &vec![0.1; n], &cfg())? - 1.0).abs());
    }
    verdict(
        exact && quartic_gap <= 1e-2 && randers_gap <= 1e-2,
        format!(
            "Euclidean σ = {:?}; quartic relative gap {quartic_gap:.2e}; Randers |σ − 1| = {randers_gap:.2e}",
            euclid
        ),
    )
}

type Criterion = fn() -> Result<Verdict>;

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 12] = [
        ("navigation consistency", criterion_1),
        ("closed-form agreement", criterion_2),
        ("Lorentz signature", criterion_3),
        ("tensor relation", criterion_4),
        ("geodesic correspondence", criterion_5),
        ("homothety identities", criterion_6),
        ("S-curvature shift", criterion_7),
        ("Laplacian and S-curvature", criterion_8),
        ("level-set correspondence end to end", criterion_9),
        ("Laplacian correspondence", criterion_10),
        ("negative control", criterion_11),
        ("Busemann-Hausdorff density", criterion_12),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (pass, detail) = match run() {
            Ok(v) => (v.pass, v.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        println!(
            "{} {:>2} {name}: {detail} ({:.1}s)",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            start.elapsed().as_secs_f64()
        );
        if !pass {
            failed.push(i + 1);
        }
    }
    if failed.is_empty() {
        println!("acceptance: 12/12 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
