use hb_core::boundary::{directional_limit, geometric_radii, growth_fit, Approach, BoundaryPoint, FitKind, Levels};
use hb_core::exemplars::{wolf_assemble, WolfParams};
use hb_core::geometry::SectorSpec;
use std::sync::Arc;

#[test]
fn assembled_construction_meets_its_design_targets() {
    let params = WolfParams::default().with_epsilon(2.0);
    let w = Arc::new(wolf_assemble(&params).unwrap());
    assert!(w.diagnostics.plateau_im_h_max <= 1e-12);
    assert!(w.diagnostics.k.residual <= 1e-8);

    let field = w.w_field();
    let levels = Levels::circles(geometric_radii(0.8, 0.98, 8));
    let fit = growth_fit(&field, &levels, FitKind::ExpPowerFreeInner { lo: 0.5, hi: 4.0 }, 512).unwrap();
    let q = params.exponent();
    assert!((fit.exponent - q).abs() <= 0.1 * q, "fitted {} against {q}", fit.exponent);

    let sector = SectorSpec::stolz(0.0, params.theta).unwrap();
    let schedule: Vec<f64> = (4..=9).map(|k| 0.5f64.powi(k)).collect();
    let lim = directional_limit(&field, BoundaryPoint::Circle { phi: 0.0 }, Approach::Sector(sector), &schedule, 5e-3).unwrap();
    assert!(lim.converged && lim.limit.abs() <= 5e-3, "{lim:?}");
}
