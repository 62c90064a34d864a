use serde::{Deserialize, Serialize};

use super::{det, inverse, Grid, Mat, MetricField, SymField};
use crate::Error;

/// Which weighting of the Christoffel quadratic term enters S_jl.
///
/// With A_jl = g^{ik}(∂_j∂_k g_il + ∂_i∂_l g_jk − ∂_i∂_k g_jl − ∂_j∂_l g_ik)
/// and B_jl = g^{ik}g^{rs}([jk,r][il,s] − [jl,r][ik,s]):
///
/// * `Printed`: S = |y|²(A + B).
/// * `Curvature`: S = |y|²(A + 2B) = 2|y|² Ric, the default.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SourceForm {
    Printed,
    #[default]
    Curvature,
}

impl SourceForm {
    fn quadratic_weight(self) -> f64 {
        match self {
            SourceForm::Printed => 1.0,
            SourceForm::Curvature => 2.0,
        }
    }
}

impl std::str::FromStr for SourceForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim() {
            "printed" => Ok(SourceForm::Printed),
            "curvature" => Ok(SourceForm::Curvature),
            other => Err(Error::Parse(format!(
                "unknown source form '{other}' (expected printed or curvature)"
            ))),
        }
    }
}

/// Solver constants.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlowParams {
    pub kappa: f64,
    /// c in dt ≤ c·h²·min det g.
    pub stability: f64,
    /// Smallest admissible det g before a field counts as near-degenerate.
    pub det_floor: f64,
    pub form: SourceForm,
}

impl Default for FlowParams {
    fn default() -> Self {
        FlowParams {
            kappa: 1.0,
            stability: 0.05,
            det_floor: 1e-8,
            form: SourceForm::Curvature,
        }
    }
}

/// Metric values and centred first and second differences at one node.
/// `d1[a][i][j]` = ∂_a g_ij, `d2[a][b][i][j]` = ∂_a∂_b g_ij.
struct Jet {
    g: Mat,
    d1: [[[f64; 3]; 3]; 3],
    d2: [[[[f64; 3]; 3]; 3]; 3],
}

fn jet(f: &SymField, node: usize) -> Jet {
    let grid = f.grid();
    let n = grid.n;
    let h = grid.h;
    let mut out = Jet {
        g: f.matrix(node),
        d1: [[[0.0; 3]; 3]; 3],
        d2: [[[[0.0; 3]; 3]; 3]; 3],
    };
    for a in 0..n {
        let up = grid.shift(node, a, 1);
        let dn = grid.shift(node, a, -1);
        for i in 0..n {
            for j in i..n {
                let (p, c, q) = (f.get(up, i, j), f.get(node, i, j), f.get(dn, i, j));
                let d = (p - q) / (2.0 * h);
                let dd = (p - 2.0 * c + q) / (h * h);
                out.d1[a][i][j] = d;
                out.d1[a][j][i] = d;
                out.d2[a][a][i][j] = dd;
                out.d2[a][a][j][i] = dd;
            }
        }
        for b in (a + 1)..n {
            let pp = grid.shift(up, b, 1);
            let pm = grid.shift(up, b, -1);
            let mp = grid.shift(dn, b, 1);
            let mm = grid.shift(dn, b, -1);
            for i in 0..n {
                for j in i..n {
                    let v = (f.get(pp, i, j) - f.get(pm, i, j) - f.get(mp, i, j) + f.get(mm, i, j))
                        / (4.0 * h * h);
                    for (x, y) in [(a, b), (b, a)] {
                        out.d2[x][y][i][j] = v;
                        out.d2[x][y][j][i] = v;
                    }
                }
            }
        }
    }
    out
}

/// [ij,r] at every node.
#[derive(Clone, Debug, PartialEq)]
pub struct ChristoffelField {
    grid: Grid,
    data: Vec<f64>,
}

impl ChristoffelField {
    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn get(&self, node: usize, i: usize, j: usize, r: usize) -> f64 {
        let n = self.grid.n;
        self.data[((node * n + i) * n + j) * n + r]
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |acc, v| acc.max(v.abs()))
    }
}

fn first_kind(j: &Jet, n: usize) -> [[[f64; 3]; 3]; 3] {
    let mut c = [[[0.0; 3]; 3]; 3];
    for i in 0..n {
        for k in 0..n {
            for r in 0..n {
                c[i][k][r] = 0.5 * (j.d1[i][k][r] + j.d1[k][i][r] - j.d1[r][i][k]);
            }
        }
    }
    c
}

pub fn christoffel_first(g: &MetricField) -> ChristoffelField {
    let grid = g.grid();
    let n = grid.n;
    let mut data = Vec::with_capacity(grid.nodes() * n * n * n);
    for node in 0..grid.nodes() {
        let c = first_kind(&jet(g.field(), node), n);
        for row in c.iter().take(n) {
            for col in row.iter().take(n) {
                data.extend_from_slice(&col[..n]);
            }
        }
    }
    ChristoffelField { grid, data }
}

/// (A, B, det) at one node, or the determinant that fell below the floor.
fn parts(f: &SymField, node: usize, floor: f64) -> Result<(Mat, Mat, f64), Error> {
    let n = f.grid().n;
    let jt = jet(f, node);
    let d = det(&jt.g, n);
    if !(d > floor) {
        return Err(Error::NearDegenerateMetric { det: d, node });
    }
    let gi = inverse(&jt.g, n);
    let c1 = first_kind(&jt, n);
    // Γ^s_{jk} = g^{sr}[jk,r]
    let mut c2 = [[[0.0; 3]; 3]; 3];
    for s in 0..n {
        for j in 0..n {
            for k in 0..n {
                c2[s][j][k] = (0..n).map(|r| gi[s][r] * c1[j][k][r]).sum();
            }
        }
    }
    // v_s = g^{ik}[ik,s], w[k][l][s] = g^{ik}[il,s]
    let mut v = [0.0; 3];
    let mut w = [[[0.0; 3]; 3]; 3];
    for s in 0..n {
        for i in 0..n {
            for k in 0..n {
                v[s] += gi[i][k] * c1[i][k][s];
                for l in 0..n {
                    w[k][l][s] += gi[i][k] * c1[i][l][s];
                }
            }
        }
    }
    let mut a = [[0.0; 3]; 3];
    let mut b = [[0.0; 3]; 3];
    for j in 0..n {
        for l in j..n {
            let mut sa = 0.0;
            for i in 0..n {
                for k in 0..n {
                    sa += gi[i][k]
                        * (jt.d2[j][k][i][l] + jt.d2[i][l][j][k]
                            - jt.d2[i][k][j][l]
                            - jt.d2[j][l][i][k]);
                }
            }
            let mut sb = 0.0;
            for s in 0..n {
                sb -= c2[s][j][l] * v[s];
                for k in 0..n {
                    sb += c2[s][j][k] * w[k][l][s];
                }
            }
            a[j][l] = sa;
            a[l][j] = sa;
            b[j][l] = sb;
            b[l][j] = sb;
        }
    }
    Ok((a, b, d))
}

fn node_map(
    f: &SymField,
    floor: f64,
    op: impl Fn(&Mat, &Mat, f64, usize, usize) -> f64,
) -> Result<SymField, Error> {
    let grid = f.grid();
    let n = grid.n;
    let mut out = SymField::zeros(grid);
    for node in 0..grid.nodes() {
        let (a, b, d) = parts(f, node, floor)?;
        for j in 0..n {
            for l in j..n {
                out.set(node, j, l, op(&a, &b, d, j, l));
            }
        }
    }
    Ok(out)
}

/// S_jl = |y|²(A + wB), w set by `params.form`.
pub fn ricci_source(g: &MetricField, params: &FlowParams) -> Result<SymField, Error> {
    let w = params.form.quadratic_weight();
    node_map(g.field(), params.det_floor, |a, b, d, j, l| {
        d * d * (a[j][l] + w * b[j][l])
    })
}

/// The Ricci tensor ½A + B.
pub fn ricci_tensor(g: &MetricField, params: &FlowParams) -> Result<SymField, Error> {
    node_map(g.field(), params.det_floor, |a, b, _, j, l| {
        0.5 * a[j][l] + b[j][l]
    })
}

/// R(f) with (2/|y|²)S / κ, so that the solved form reads f_t = −κ R(f).
/// Accepts any symmetric field with det above the floor, which is how
/// R^{ij}(φ) is evaluated.
pub fn curvature_operator(f: &SymField, params: &FlowParams) -> Result<SymField, Error> {
    let w = params.form.quadratic_weight();
    let kappa = params.kappa;
    node_map(f, params.det_floor, |a, b, _, j, l| {
        2.0 * (a[j][l] + w * b[j][l]) / kappa
    })
}

/// g_t = −(2/|y|²)S.
pub fn flow_rhs(g: &MetricField, params: &FlowParams) -> Result<SymField, Error> {
    let w = params.form.quadratic_weight();
    node_map(g.field(), params.det_floor, |a, b, _, j, l| {
        -2.0 * (a[j][l] + w * b[j][l])
    })
}

/// c·h²·min det g.
pub fn stability_bound(g: &MetricField, params: &FlowParams) -> f64 {
    let h = g.grid().h;
    params.stability * h * h * g.field().min_det().1
}

/// One explicit Euler step.
pub fn flow_step(g: &MetricField, dt: f64, params: &FlowParams) -> Result<MetricField, Error> {
    let bound = stability_bound(g, params);
    if !(dt > 0.0 && dt <= bound) {
        return Err(Error::StepTooLarge { dt, bound });
    }
    let next = g.field().axpy(dt, &flow_rhs(g, params)?);
    let (node, d) = next.min_leading_minor();
    if !(d > 0.0) {
        return Err(Error::FlowDegeneration { det: d, node });
    }
    debug_assert!(next.is_symmetric());
    Ok(MetricField(next))
}

/// (g_t + κR(g))_ij φ^{ij} + g_ij(φ_t − κR(φ))^{ij} at every node.
pub fn conservation_residual(
    g: &MetricField,
    phi: &SymField,
    g_t: &SymField,
    phi_t: &SymField,
    params: &FlowParams,
) -> Result<Vec<f64>, Error> {
    let grid = g.grid();
    if phi.grid() != grid || g_t.grid() != grid || phi_t.grid() != grid {
        return Err(Error::invalid("residual fields live on different grids"));
    }
    let kappa = params.kappa;
    let rg = curvature_operator(g.field(), params)?;
    let rphi = curvature_operator(phi, params)?;
    let n = grid.n;
    Ok((0..grid.nodes())
        .map(|node| {
            let mut acc = 0.0;
            for i in 0..n {
                for j in 0..n {
                    acc += (g_t.get(node, i, j) + kappa * rg.get(node, i, j)) * phi.get(node, i, j)
                        + g.field().get(node, i, j)
                            * (phi_t.get(node, i, j) - kappa * rphi.get(node, i, j));
                }
            }
            acc
        })
        .collect())
}
