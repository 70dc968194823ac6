//! Acceptance suite: one PASS/FAIL line per criterion, tolerances pinned below.
//!
//! Runs without the libtest harness so every line is printed. Set
//! `HB_ACCEPTANCE_SKIP_SLOW=1` to skip the criteria marked slow.

use hb_core::audits::{
    audit_classical, audit_edge_of_wedge, audit_phragmen, jump_profile, AuditConfig, ClassicalTheorem, Consistency, Evidence,
    PhragmenVariant, Status,
};
use hb_core::boundary::{
    directional_limit, domar_transfer_check, geometric_radii, growth_fit, Approach, BoundaryPoint, DomarGrid, FitKind, Levels,
};
use hb_core::exemplars::{catalog_field, named_field, u0_eval, u0_field, wolf_assemble, CatalogName, U0Mode, WolfParams};
use hb_core::potential::{
    dirichlet_rectangle, halfplane_kernel, poisson_integral_quadrant, singularity_expansion, BoundaryFunction, QuadrantBoundary,
    RectangleData, RectangleDirichlet, Side,
};
use hb_core::quad::{integrate_real_line, QuadConfig};
use hb_core::semigroup::{
    basis, carleman_identity_check, carleman_transform, criterion_probe, default_approach, stability_probe, CarlemanConfig,
    FourierType, LambdaRule, Mode, OperatorModel, TrajectoryModel,
};
use hb_core::{Complex64, HarmonicField, Region, Regularity, SectorSpec};
use hb_lab::{run_experiment, ExperimentConfig};
use rand::{Rng, SeedableRng};
use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::sync::Arc;
use std::time::{Duration, Instant};

const U0_SERIES_TOL: f64 = 1e-10;
const U0_GROWTH_TOL: f64 = 0.05;
const RADIAL_LIMIT_TOL: f64 = 1e-6;
const RADIAL_R2_MIN: f64 = 0.99;
const KERNEL_MASS_TOL: f64 = 1e-8;
const QUADRANT_TOL: f64 = 1e-4;
const HARMONIC_MEASURE_TOL: f64 = 1e-8;
const EXPANSION_TOL: f64 = 1e-9;
const DOMAR_TOL: f64 = 1e-6;
const CONTINUATION_TOL: f64 = 1e-6;
const SLOPE_TOL: f64 = 0.05;
const DECAY_FRACTION: f64 = 0.1;
const FLAT_ORBIT_TOL: f64 = 1e-12;
const CARLEMAN_TOL: f64 = 1e-6;
const RESOLVENT_IDENTITY_TOL: f64 = 1e-8;
const PLATEAU_TOL: f64 = 1e-12;
const WOLF_EXPONENT_REL_TOL: f64 = 0.1;
const WOLF_LIMIT_TOL: f64 = 5e-3;

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn dyadic(k0: i32, k1: i32) -> Vec<f64> {
    (k0..=k1).map(|k| 0.5f64.powi(k)).collect()
}

fn u0_series_oracle() -> Outcome {
    let radii: Vec<f64> = (0..=99).map(|j| 0.99 * j as f64 / 99.0).collect();
    let mut worst = (0.0f64, 0.0, 0.0);
    for &r in &radii {
        for j in 0..256 {
            let phi = 2.0 * PI * j as f64 / 256.0 - PI;
            let closed = u0_eval(r, phi, U0Mode::Closed, 0).map_err(|e| e.to_string())?;
            let series = u0_eval(r, phi, U0Mode::Series, 200).map_err(|e| e.to_string())?;
            let d = (closed - series).abs();
            if d > worst.0 {
                worst = (d, r, phi);
            }
        }
    }
    check(worst.0 <= U0_SERIES_TOL, format!("max |series − closed| = {:.3e} at r = {:.4}, φ = {:.4}", worst.0, worst.1, worst.2))
}

fn dahlberg_sharpness() -> Outcome {
    let fit = growth_fit(&u0_field(), &Levels::circles(geometric_radii(0.9, 0.999, 10)), FitKind::Power, 512).map_err(|e| e.to_string())?;
    let v = audit_classical(&u0_field(), ClassicalTheorem::Dahlberg, None, &AuditConfig::default()).map_err(|e| e.to_string())?;
    let pattern = v.statuses();
    let ok = (fit.exponent - 2.0).abs() <= U0_GROWTH_TOL
        && pattern == vec![Status::Pass, Status::Fail]
        && v.consistency == Consistency::SharpnessWitness;
    check(ok, format!("m̂ = {:.4}, hypotheses {:?}, {:?}", fit.exponent, pattern, v.consistency))
}

fn radial_vanishing() -> Outcome {
    let u = u0_field();
    let (mut worst_limit, mut worst_r2) = (0.0f64, 1.0f64);
    for j in 0..64 {
        let phi = -PI + (j as f64 + 0.5) * 2.0 * PI / 64.0;
        if phi.abs() <= 1e-2 {
            return Err(format!("angle grid hit the excluded neighbourhood at φ = {phi}"));
        }
        let e = directional_limit(&u, BoundaryPoint::Circle { phi }, Approach::Radial, &dyadic(4, 20), 1e-4).map_err(|e| e.to_string())?;
        worst_limit = worst_limit.max(e.limit.abs());
        worst_r2 = worst_r2.min(e.decay_fit.map(|f| f.r2).unwrap_or(f64::NEG_INFINITY));
    }
    check(
        worst_limit <= RADIAL_LIMIT_TOL && worst_r2 >= RADIAL_R2_MIN,
        format!("max |limit| = {worst_limit:.3e}, min decay R² = {worst_r2:.5}"),
    )
}

fn halfplane_normalization() -> Outcome {
    let mut worst = 0.0f64;
    for beta in [0.1, 1.0, 10.0] {
        let est = integrate_real_line(|a| halfplane_kernel(a, beta).unwrap_or(f64::NAN), &[0.0], &QuadConfig::default())
            .map_err(|e| e.to_string())?;
        worst = worst.max((est.value - 1.0).abs());
    }
    check(worst <= KERNEL_MASS_TOL, format!("max |∫P − 1| = {worst:.3e}"))
}

fn quadrant_identity() -> Outcome {
    let v = QuadrantBoundary { real_edge: BoundaryFunction::constant(0.0), imag_edge: BoundaryFunction::new(|b| 1.0 / b) };
    let mut worst = (0.0f64, c(0.0, 0.0), 0.0);
    for j in 0..20 {
        let z = Complex64::from_polar(0.25 + 0.15 * j as f64, PI / 2.0 * (j as f64 + 0.5) / 20.0);
        let got = poisson_integral_quadrant(&v, z).map_err(|e| e.to_string())?;
        let target = z.im / (PI * z.norm_sqr());
        let d = (got - target).abs();
        if d > worst.0 {
            worst = (d, z, got / target);
        }
    }
    check(worst.0 <= QUADRANT_TOL, format!("max deviation {:.3e} at z = {}, ratio to target {:.6}", worst.0, worst.1, worst.2))
}

fn rectangle_harmonic_measure() -> Outcome {
    let square = Region::rectangle(0.0, 1.0, 0.0, 1.0).map_err(|e| e.to_string())?;
    let sides = [Side::Bottom, Side::Right, Side::Top, Side::Left];
    let mut center = 0.0f64;
    for side in sides {
        let d = RectangleData::on(side, BoundaryFunction::constant(1.0));
        let v = dirichlet_rectangle(&square, &d, c(0.5, 0.5), 64, 1e-12).map_err(|e| e.to_string())?;
        center = center.max((v - 0.25).abs());
    }
    let solvers = sides
        .iter()
        .map(|&side| RectangleDirichlet::new(&square, &RectangleData::on(side, BoundaryFunction::constant(1.0)), 1024))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(6);
    let mut sum_dev = 0.0f64;
    for _ in 0..50 {
        let z = c(rng.gen_range(0.05..0.95), rng.gen_range(0.05..0.95));
        let mut total = 0.0;
        for sol in &solvers {
            total += sol.eval(z, 1e-10).map_err(|e| e.to_string())?;
        }
        sum_dev = sum_dev.max((total - 1.0).abs());
    }
    check(
        center <= HARMONIC_MEASURE_TOL && sum_dev <= HARMONIC_MEASURE_TOL,
        format!("center max |ω − 1/4| = {center:.3e}, max |Σω − 1| = {sum_dev:.3e}"),
    )
}

fn singularity_recovery() -> Outcome {
    let punctured = Region::PuncturedDisc { rho: 1.0 };
    let mut worst = 0.0f64;

    let log = HarmonicField::real("log", punctured, Regularity::Harmonic, |z: Complex64| z.norm().ln());
    let e = singularity_expansion(&log, 0.3, 0.6, 3, 64).map_err(|e| e.to_string())?;
    worst = worst.max((e.log_coefficient - 1.0).abs());
    worst = e.a_neg.iter().chain(&e.b_neg).fold(worst, |w, x| w.max(x.abs()));

    let inv = HarmonicField::real("re_inv", punctured, Regularity::Harmonic, |z: Complex64| (1.0 / z).re);
    let e = singularity_expansion(&inv, 0.3, 0.6, 3, 64).map_err(|e| e.to_string())?;
    worst = worst.max((e.a_neg[0] - 1.0).abs()).max(e.log_coefficient.abs());
    worst = e.a_neg[1..].iter().chain(&e.b_neg).fold(worst, |w, x| w.max(x.abs()));

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let log_c: f64 = rng.gen_range(-2.0..2.0);
    let a: Vec<f64> = (0..3).map(|_| rng.gen_range(-2.0..2.0)).collect();
    let b: Vec<f64> = (0..3).map(|_| rng.gen_range(-2.0..2.0)).collect();
    let regular: f64 = rng.gen_range(-1.0..1.0);
    let (ac, bc) = (a.clone(), b.clone());
    let mix = HarmonicField::real("mix", punctured, Regularity::Harmonic, move |z: Complex64| {
        let mut s = log_c * z.norm().ln() + regular * (z * z).re;
        for n in 1..=3 {
            let w = z.powi(-(n as i32));
            s += ac[n - 1] * w.re + bc[n - 1] * w.im;
        }
        s
    });
    let e = singularity_expansion(&mix, 0.3, 0.6, 3, 64).map_err(|e| e.to_string())?;
    worst = worst.max((e.log_coefficient - log_c).abs());
    for n in 0..3 {
        worst = worst.max((e.a_neg[n] - a[n]).abs()).max((e.b_neg[n] - b[n]).abs());
    }
    check(worst <= EXPANSION_TOL, format!("max coefficient error {worst:.3e}"))
}

fn domar_witness() -> Outcome {
    let u = HarmonicField::real("abs_re_inv", Region::PuncturedDisc { rho: 1.0 }, Regularity::SubharmonicNonneg, |z: Complex64| {
        z.re.abs() / z.norm_sqr()
    });
    let r = domar_transfer_check(&u, 1.0, 1.0, &DomarGrid::default()).map_err(|e| e.to_string())?;
    check(
        r.pass && (r.empirical_constant - 1.0).abs() <= DOMAR_TOL,
        format!("hypothesis verified = {}, C′ = {:.9}", r.pass, r.empirical_constant),
    )
}

fn phragmen_catalog() -> Outcome {
    let cfg = AuditConfig::default();
    let three = PhragmenVariant::ThreeRays { theta: 1.0 };
    let field = |name: &str| named_field(name).map_err(|e| e.to_string());
    let first = audit_phragmen(&field("re_inv_sqrt")?, 0.5, 0.5, three, &cfg).map_err(|e| e.to_string())?;
    let one = HarmonicField::constant(Region::Quadrant, 1.0);
    let second = audit_phragmen(&one, 0.0, 0.0, three, &cfg).map_err(|e| e.to_string())?;
    let third = audit_phragmen(&field("re_inv")?, 0.5, 1.0, three, &cfg).map_err(|e| e.to_string())?;
    let passes = |v: &hb_core::audits::AuditVerdict| v.all_measured_pass() && v.conclusion.status == Status::Pass;
    let witness = third
        .hypothesis("ray_bound")
        .map(|h| h.status == Status::Fail && matches!(h.evidence, Evidence::Witness { .. }))
        .unwrap_or(false);
    let ok = passes(&first) && passes(&second) && witness && third.consistency == Consistency::SharpnessWitness;
    check(ok, format!("re_inv_sqrt pass = {}, constant pass = {}, re_inv fails with witness = {witness}", passes(&first), passes(&second)))
}

fn edge_of_wedge() -> Outcome {
    let cfg = AuditConfig::default();
    let g = HarmonicField::constant(Region::STRIP_BOX, 1.0);
    let pole = catalog_field(CatalogName::RationalPole);
    let exact = |x: f64| Complex64::new(1.0 / (x - 2.0), 0.0);
    let r = audit_edge_of_wedge(&pole, &jump_profile(&pole), &g, 0.4, 1.0, Some(&exact), &cfg).map_err(|e| e.to_string())?;
    let (points, mismatch) = r.continuation.as_ref().map(|s| (s.points.len(), s.max_mismatch)).unwrap_or((0, f64::INFINITY));
    let jump = catalog_field(CatalogName::BoundaryJump);
    let j = audit_edge_of_wedge(&jump, &jump_profile(&jump), &g, 0.4, 1.0, None, &cfg).map_err(|e| e.to_string())?;
    let jump_fails = j.verdict.hypothesis("f_sectorial_decay").map(|h| h.status == Status::Fail).unwrap_or(false);
    let ok = r.verdict.all_measured_pass() && points == 101 && mismatch <= CONTINUATION_TOL && jump_fails;
    check(
        ok,
        format!(
            "rational_pole hypotheses pass = {}, {points} points, max mismatch {mismatch:.3e}; boundary_jump sectorial decay fails = {jump_fails}",
            r.verdict.all_measured_pass()
        ),
    )
}

fn criterion_concordance() -> Outcome {
    let n = 200;
    let ft = FourierType::new(2.0).map_err(|e| e.to_string())?;
    let model = |rule: &str| {
        LambdaRule::parse(rule).and_then(|r| OperatorModel::from_rule(&r, n, Mode::ContinuousGenerator)).map_err(|e| e.to_string())
    };
    let slope_at = |op: &OperatorModel, k: usize| -> Result<f64, String> {
        let rep = criterion_probe(op, &basis(n, k), ft, &[k as f64], &default_approach()).map_err(|e| e.to_string())?;
        rep.rows[0].slope.ok_or_else(|| format!("no slope for e{k}"))
    };
    let damped = model("-1/k + ik")?;
    let mut member_slopes = Vec::new();
    for k in [1, 5, 20] {
        member_slopes.push(slope_at(&damped, k)?);
    }
    let x: Vec<Complex64> = (1..=n).map(|k| c(1.0 / k as f64, 0.0)).collect();
    let orbit = stability_probe(&damped, &x, &[0.0, 1.0, 10.0, 100.0, 1000.0], false).map_err(|e| e.to_string())?;
    let fraction = orbit.final_norm / orbit.initial;

    let unitary = model("ik")?;
    let mut unitary_slopes = Vec::new();
    for k in [1, 5, 20] {
        unitary_slopes.push(slope_at(&unitary, k)?);
    }
    let flat = stability_probe(&unitary, &basis(n, 1), &[0.0, 1.0, 10.0, 100.0, 1000.0], false).map_err(|e| e.to_string())?;
    let flat_dev = flat.norms.iter().fold(0.0f64, |w, v| w.max((v - 1.0).abs()));

    let ok = member_slopes.iter().all(|s| (s - 0.5).abs() <= SLOPE_TOL)
        && fraction < DECAY_FRACTION
        && unitary_slopes.iter().all(|s| (s + 0.5).abs() <= SLOPE_TOL)
        && flat_dev <= FLAT_ORBIT_TOL;
    check(
        ok,
        format!(
            "damped slopes {:?}, ‖T(10³)x‖/‖x‖ = {fraction:.3e}; unitary slopes {:?}, max |‖T(t)e₁‖ − 1| = {flat_dev:.1e}",
            member_slopes.iter().map(|s| format!("{s:.4}")).collect::<Vec<_>>(),
            unitary_slopes.iter().map(|s| format!("{s:.4}")).collect::<Vec<_>>()
        ),
    )
}

fn carleman_machinery() -> Outcome {
    let cfg = CarlemanConfig::default();
    let f = TrajectoryModel::scalar_wave(c(1.0, 0.0), 1.0);
    let mut worst = 0.0f64;
    for lam in [c(1.0, 0.0), c(-1.0, 0.0), c(1.0, 5.0), c(-1.0, 5.0)] {
        let v = carleman_transform(&f, lam, &cfg).map_err(|e| e.to_string())?;
        worst = worst.max((v.value[0] - 1.0 / (lam - c(0.0, 1.0))).norm());
    }
    let adjoint = OperatorModel::diagonal(vec![c(0.0, 1.0)], Mode::ContinuousGenerator).map_err(|e| e.to_string())?;
    let mut residual = 0.0f64;
    for (lam, mu) in [(c(1.0, 0.0), c(2.0, 0.0)), (c(1.0, 5.0), c(-1.0, 0.0)), (c(2.0, -1.0), c(-1.0, 5.0))] {
        residual = residual.max(carleman_identity_check(&adjoint, &f, lam, mu, &cfg).map_err(|e| e.to_string())?.residual);
    }
    check(
        worst <= CARLEMAN_TOL && residual <= RESOLVENT_IDENTITY_TOL,
        format!("max transform error {worst:.3e}, max identity residual {residual:.3e}"),
    )
}

fn wolf_construction() -> Outcome {
    let params = WolfParams::default().with_epsilon(2.0);
    let w = Arc::new(wolf_assemble(&params).map_err(|e| e.to_string())?);
    let plateau = w.diagnostics.plateau_im_h_max;
    let field = w.w_field();
    let levels = Levels::circles(geometric_radii(0.8, 0.98, 8));
    let fit = growth_fit(&field, &levels, FitKind::ExpPowerFreeInner { lo: 0.5, hi: 4.0 }, 512).map_err(|e| e.to_string())?;
    let q = PI / (2.0 * params.theta);
    let sector = SectorSpec::stolz(0.0, params.theta).map_err(|e| e.to_string())?;
    let lim = directional_limit(&field, BoundaryPoint::Circle { phi: 0.0 }, Approach::Sector(sector), &dyadic(4, 9), WOLF_LIMIT_TOL)
        .map_err(|e| e.to_string())?;
    let ok = plateau <= PLATEAU_TOL
        && (params.theta - 0.3 * PI).abs() < 1e-15
        && (fit.exponent - q).abs() <= WOLF_EXPONENT_REL_TOL * q
        && lim.converged
        && lim.limit.abs() <= WOLF_LIMIT_TOL;
    check(
        ok,
        format!(
            "plateau max |Im h| = {plateau:.1e}, inner exponent {:.4} vs π/(2θ) = {q:.4}, Stolz limit {:.2e} (converged = {})",
            fit.exponent, lim.limit, lim.converged
        ),
    )
}

fn shipped_configs() -> Result<Vec<PathBuf>, String> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs");
    let mut paths: Vec<PathBuf> = std::fs::read_dir(&dir)
        .map_err(|e| format!("{}: {e}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "toml"))
        .collect();
    paths.sort();
    Ok(paths)
}

fn master_regression() -> Outcome {
    let mut contradictions = Vec::new();
    let mut audits = 0;
    let paths = shipped_configs()?;
    for path in &paths {
        let cfg = ExperimentConfig::load(path).map_err(|e| e.to_string())?;
        let env = run_experiment(&cfg).map_err(|e| e.to_string())?;
        audits += env.records.iter().filter(|r| r.output.verdict().is_some()).count();
        for r in env.contradictions() {
            contradictions.push(format!("{}#{} {}", path.file_name().unwrap_or_default().to_string_lossy(), r.index, r.label));
        }
    }
    check(
        contradictions.is_empty() && audits > 0,
        format!("{} configs, {audits} audits, contradictions: {:?}", paths.len(), contradictions),
    )
}

struct Criterion {
    id: u32,
    name: &'static str,
    slow: bool,
    run: fn() -> Outcome,
}

const CRITERIA: &[Criterion] = &[
    Criterion { id: 1, name: "u0 series against closed form", slow: false, run: u0_series_oracle },
    Criterion { id: 2, name: "Dahlberg sharpness of u0", slow: false, run: dahlberg_sharpness },
    Criterion { id: 3, name: "radial vanishing of u0", slow: false, run: radial_vanishing },
    Criterion { id: 4, name: "half-plane kernel normalization", slow: false, run: halfplane_normalization },
    Criterion { id: 5, name: "quadrant extension of v against the half-plane kernel", slow: false, run: quadrant_identity },
    Criterion { id: 6, name: "rectangle harmonic measure", slow: false, run: rectangle_harmonic_measure },
    Criterion { id: 7, name: "singularity expansion recovery", slow: false, run: singularity_recovery },
    Criterion { id: 8, name: "Domar transfer witness", slow: false, run: domar_witness },
    Criterion { id: 9, name: "Phragmén–Lindelöf catalog", slow: false, run: phragmen_catalog },
    Criterion { id: 10, name: "edge-of-the-wedge catalog", slow: false, run: edge_of_wedge },
    Criterion { id: 11, name: "criterion and stability concordance", slow: false, run: criterion_concordance },
    Criterion { id: 12, name: "Carleman transform and resolvent identity", slow: false, run: carleman_machinery },
    Criterion { id: 13, name: "Wolf construction", slow: true, run: wolf_construction },
    Criterion { id: 14, name: "no CONTRADICTION in shipped configs", slow: true, run: master_regression },
];

fn main() {
    // honour `cargo test -- --list` and filters passed by the test runner
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.iter().any(|a| a == "--list") {
        for c in CRITERIA {
            println!("AC-{:02}: test", c.id);
        }
        return;
    }
    let filter: Vec<&String> = args.iter().filter(|a| !a.starts_with('-')).collect();
    let skip_slow = std::env::var("HB_ACCEPTANCE_SKIP_SLOW").is_ok_and(|v| v == "1");
    let mut failed = 0;
    let total = Instant::now();
    for crit in CRITERIA {
        let label = format!("AC-{:02}", crit.id);
        if !filter.is_empty() && !filter.iter().any(|f| label.contains(f.as_str())) {
            continue;
        }
        let tag = if crit.slow { " (slow)" } else { "" };
        if crit.slow && skip_slow {
            println!("[SKIP] {label} {}{tag}", crit.name);
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(crit.run)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] {label} {}{tag} ({secs:.1}s): {detail}", crit.name),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {label} {}{tag} ({secs:.1}s): {detail}", crit.name);
            }
        }
    }
    let elapsed: Duration = total.elapsed();
    println!("acceptance: {failed} failed in {:.1}s", elapsed.as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
