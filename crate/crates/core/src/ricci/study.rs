//! Refinement studies on the unit 2-torus used by `verify` and the tests.

use super::operator::{
    conservation_residual, curvature_operator, flow_step, ricci_tensor, FlowParams,
};
use super::{Grid, MetricField, SymField};
use crate::Error;

/// Max over nodes of |Ric − (−Δu)δ| for g = e^{2u}δ, u = ε sin x¹ sin x².
pub fn conformal_oracle_error(m: usize, eps: f64) -> Result<f64, Error> {
    let grid = Grid::unit_torus(2, m)?;
    let g = MetricField::conformal_sine(grid, eps);
    let ric = ricci_tensor(&g, &FlowParams::default())?;
    let mut err = 0.0f64;
    for node in 0..grid.nodes() {
        let x = grid.position(node);
        let minus_lap = 2.0 * eps * x[0].sin() * x[1].sin();
        for i in 0..2 {
            for j in 0..2 {
                let exact = if i == j { minus_lap } else { 0.0 };
                err = err.max((ric.get(node, i, j) - exact).abs());
            }
        }
    }
    Ok(err)
}

/// log₂ of successive error ratios for grids refined by a factor 2.
pub fn observed_orders(errors: &[f64]) -> Vec<f64> {
    errors.windows(2).map(|w| (w[0] / w[1]).log2()).collect()
}

/// Largest component change after `steps` Euler steps of the flat torus.
pub fn flat_drift(m: usize, steps: usize, dt: f64) -> Result<f64, Error> {
    let grid = Grid::unit_torus(2, m)?;
    let start = MetricField::flat(grid);
    let p = FlowParams {
        stability: f64::INFINITY,
        ..FlowParams::default()
    };
    let mut g = start.clone();
    for _ in 0..steps {
        g = flow_step(&g, dt, &p)?;
    }
    Ok(g.field().axpy(-1.0, start.field()).max_abs())
}

/// Max |bracket| with g_t = −κR(g) and φ_t = κR(φ) substituted, for a
/// conformal pair on an m-grid.
pub fn substituted_residual(m: usize, kappa: f64) -> Result<f64, Error> {
    let grid = Grid::unit_torus(2, m)?;
    let p = FlowParams {
        kappa,
        ..FlowParams::default()
    };
    let g = MetricField::conformal_sine(grid, 0.2);
    let phi: SymField = MetricField::conformal_sine(grid, -0.1).into_field();
    let g_t = curvature_operator(g.field(), &p)?.scale(-kappa);
    let phi_t = curvature_operator(&phi, &p)?.scale(kappa);
    let r = conservation_residual(&g, &phi, &g_t, &phi_t, &p)?;
    Ok(r.iter().fold(0.0f64, |a, v| a.max(v.abs())))
}

/// Relative change of Σ tr g · hⁿ (the pairing with φ = δ, which stays
/// fixed) from t = 0 to `t_end` along the flow of the conformal-sine metric,
/// with dt = c·h².
pub fn conformal_drift(m: usize, eps: f64, t_end: f64, c: f64) -> Result<f64, Error> {
    let grid = Grid::unit_torus(2, m)?;
    let p = FlowParams::default();
    let dt = c * grid.h * grid.h;
    let steps = (t_end / dt).round() as usize;
    let mut g = MetricField::conformal_sine(grid, eps);
    let start = g.field().trace_integral();
    for _ in 0..steps {
        g = flow_step(&g, dt, &p)?;
    }
    Ok(((g.field().trace_integral() - start) / start).abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_of_a_known_sequence() {
        let o = observed_orders(&[1.0, 0.25, 0.0625]);
        assert!(o.iter().all(|v| (v - 2.0).abs() < 1e-12));
    }

    #[test]
    fn flat_and_substituted() {
        assert!(flat_drift(16, 100, 1e-2).unwrap() <= 1e-12);
        assert!(substituted_residual(16, 1.3).unwrap() < 1e-12);
    }
}
