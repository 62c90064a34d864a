use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::operator::{
    conservation_residual, curvature_operator, flow_rhs, flow_step, ricci_source, stability_bound,
    FlowParams,
};
use super::{Grid, MetricField, SymField};
use crate::Error;

/// Environment variable naming a fallback directory for relative config paths.
pub const CONFIG_DIR_VAR: &str = "TOPOKIT_CONFIG_DIR";

/// Named starting fields.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum InitCondition {
    Flat,
    ConformalSine { eps: f64 },
    RandomPerturbation { eps: f64, seed: u64 },
}

impl InitCondition {
    pub fn build(&self, grid: Grid) -> Result<MetricField, Error> {
        match *self {
            InitCondition::Flat => Ok(MetricField::flat(grid)),
            InitCondition::ConformalSine { eps } => {
                MetricField::new(MetricField::conformal_sine(grid, eps).into_field())
            }
            InitCondition::RandomPerturbation { eps, seed } => {
                MetricField::random_perturbation(grid, eps, seed)
            }
        }
    }
}

impl FromStr for InitCondition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let (name, args) = match s.find('(') {
            Some(open) => {
                let close = s
                    .strip_suffix(')')
                    .ok_or_else(|| Error::Parse(format!("missing ')' in '{s}'")))?;
                (
                    &s[..open],
                    close[open + 1..].split(',').map(str::trim).collect(),
                )
            }
            None => (s, Vec::new()),
        };
        let num = |t: &str| {
            t.parse::<f64>()
                .map_err(|_| Error::Parse(format!("bad number '{t}' in '{s}'")))
        };
        match (name.trim(), args.as_slice()) {
            ("flat" | "identity", []) => Ok(InitCondition::Flat),
            ("conformal-sine", [e]) => Ok(InitCondition::ConformalSine { eps: num(e)? }),
            ("random-perturbation", [e, seed]) => Ok(InitCondition::RandomPerturbation {
                eps: num(e)?,
                seed: seed
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad seed '{seed}' in '{s}'")))?,
            }),
            _ => Err(Error::Parse(format!(
                "unknown initial condition '{s}' (expected flat, conformal-sine(eps) or \
                 random-perturbation(eps, seed))"
            ))),
        }
    }
}

/// A parsed `key = value` run description.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub grid: Grid,
    /// None picks half the stability bound of the initial metric.
    pub dt: Option<f64>,
    pub steps: usize,
    pub params: FlowParams,
    pub init: InitCondition,
    pub phi: InitCondition,
    pub csv: Option<PathBuf>,
    pub dump: Option<PathBuf>,
}

/// Parses a config; relative output paths are resolved against `base`.
pub fn parse_config(text: &str, base: &Path) -> Result<RunConfig, Error> {
    let mut n = 2usize;
    let mut m = 32usize;
    let mut h = None;
    let mut dt = None;
    let mut steps = 100usize;
    let mut params = FlowParams::default();
    let mut init = InitCondition::Flat;
    let mut phi = InitCondition::Flat;
    let mut csv = None;
    let mut dump = None;

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("line {}: expected key = value", lineno + 1)))?;
        let (key, value) = (key.trim(), value.trim());
        let bad = || {
            Error::Parse(format!(
                "line {}: bad value '{value}' for {key}",
                lineno + 1
            ))
        };
        let float = || value.parse::<f64>().map_err(|_| bad());
        let int = || value.parse::<usize>().map_err(|_| bad());
        match key {
            "n" => n = int()?,
            "m" => m = int()?,
            "h" => h = Some(float()?),
            "dt" => dt = Some(float()?),
            "steps" => steps = int()?,
            "kappa" => params.kappa = float()?,
            "stability" => params.stability = float()?,
            "det_floor" => params.det_floor = float()?,
            "form" => params.form = value.parse()?,
            "init" => init = value.parse()?,
            "phi" => phi = value.parse()?,
            "csv" | "output" => csv = Some(base.join(value)),
            "dump" => dump = Some(base.join(value)),
            other => {
                return Err(Error::Parse(format!(
                    "line {}: unknown key '{other}'",
                    lineno + 1
                )))
            }
        }
    }
    if !(params.kappa.is_finite() && params.kappa > 0.0) {
        return Err(Error::invalid("kappa must be positive"));
    }
    let grid = match h {
        Some(h) => Grid::new(n, m, h)?,
        None => Grid::unit_torus(n, m)?,
    };
    Ok(RunConfig {
        grid,
        dt,
        steps,
        params,
        init,
        phi,
        csv,
        dump,
    })
}

/// One CSV row.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRow {
    pub step: usize,
    pub max_source: f64,
    pub min_det: f64,
    pub residual_norm: f64,
}

#[derive(Clone, Debug)]
pub struct RunSummary {
    pub dt: f64,
    pub rows: Vec<RunRow>,
    /// Σ g_ij φ^{ij} hⁿ at every recorded step.
    pub integrals: Vec<f64>,
    pub metric: MetricField,
    pub phi: SymField,
}

impl RunSummary {
    pub fn csv(&self) -> String {
        let mut out = String::from("step,max_abs_source,min_det,residual_norm\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{:e},{:e},{:e}",
                r.step, r.max_source, r.min_det, r.residual_norm
            );
        }
        out
    }

    /// |I(end) − I(0)| / |I(0)| for the paired integral.
    pub fn relative_drift(&self) -> f64 {
        let first = self.integrals[0];
        let last = *self.integrals.last().unwrap_or(&first);
        ((last - first) / first).abs()
    }
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |a, x| a.max(x.abs()))
}

/// Integrates g and φ together: g_t = −κR(g), φ_t = +κR(φ).
///
/// Row 0 holds the bracket with both equations substituted exactly; row
/// k ≥ 1 holds the bracket evaluated on the difference quotients of
/// step k.
pub fn run_flow(cfg: &RunConfig) -> Result<RunSummary, Error> {
    let p = cfg.params;
    let mut g = cfg.init.build(cfg.grid)?;
    let mut phi = cfg.phi.build(cfg.grid)?.into_field();
    let dt = match cfg.dt {
        Some(dt) => dt,
        None => 0.5 * stability_bound(&g, &p),
    };

    let r_phi = curvature_operator(&phi, &p)?;
    let exact = conservation_residual(&g, &phi, &flow_rhs(&g, &p)?, &r_phi.scale(p.kappa), &p)?;
    let mut rows = vec![RunRow {
        step: 0,
        max_source: ricci_source(&g, &p)?.max_abs(),
        min_det: g.field().min_det().1,
        residual_norm: max_abs(&exact),
    }];
    let mut integrals = vec![g.field().pair_integral(&phi)];

    for step in 1..=cfg.steps {
        let next = flow_step(&g, dt, &p)?;
        let next_phi = phi.axpy(dt * p.kappa, &curvature_operator(&phi, &p)?);
        let g_t = next.field().axpy(-1.0, g.field()).scale(1.0 / dt);
        let phi_t = next_phi.axpy(-1.0, &phi).scale(1.0 / dt);
        let res = conservation_residual(&g, &phi, &g_t, &phi_t, &p)?;
        g = next;
        phi = next_phi;
        rows.push(RunRow {
            step,
            max_source: ricci_source(&g, &p)?.max_abs(),
            min_det: g.field().min_det().1,
            residual_norm: max_abs(&res),
        });
        integrals.push(g.field().pair_integral(&phi));
    }
    Ok(RunSummary {
        dt,
        rows,
        integrals,
        metric: g,
        phi,
    })
}

fn io(path: &Path, e: std::io::Error) -> Error {
    Error::Io(format!("{}: {e}", path.display()))
}

/// Writes the raw field as little-endian f64 in row-major node order, one
/// full n×n matrix per node, plus `<path>.json` describing the layout.
pub fn write_dump(field: &SymField, path: &Path) -> Result<PathBuf, Error> {
    let grid = field.grid();
    let bytes: Vec<u8> = field.data().iter().flat_map(|v| v.to_le_bytes()).collect();
    fs::write(path, bytes).map_err(|e| io(path, e))?;
    let mut shape = vec![grid.m; grid.n];
    shape.extend([grid.n, grid.n]);
    let sidecar = serde_json::json!({
        "dtype": "float64",
        "endianness": "little",
        "order": "row-major",
        "n": grid.n,
        "m": grid.m,
        "h": grid.h,
        "shape": shape,
    });
    let mut side = path.as_os_str().to_owned();
    side.push(".json");
    let side = PathBuf::from(side);
    let text = serde_json::to_string_pretty(&sidecar).map_err(|e| Error::Io(e.to_string()))?;
    fs::write(&side, text + "\n").map_err(|e| io(&side, e))?;
    Ok(side)
}

fn locate(path: &Path) -> PathBuf {
    if path.is_relative() && !path.exists() {
        if let Some(dir) = std::env::var_os(CONFIG_DIR_VAR) {
            let alt = Path::new(&dir).join(path);
            if alt.exists() {
                return alt;
            }
        }
    }
    path.to_path_buf()
}

/// Reads a config file, runs it, and writes any requested CSV and dump.
pub fn run_config(path: &Path) -> Result<(RunConfig, RunSummary), Error> {
    let path = locate(path);
    let text = fs::read_to_string(&path).map_err(|e| io(&path, e))?;
    let base = path.parent().unwrap_or(Path::new("."));
    let cfg = parse_config(&text, base)?;
    let summary = run_flow(&cfg)?;
    if let Some(csv) = &cfg.csv {
        fs::write(csv, summary.csv()).map_err(|e| io(csv, e))?;
    }
    if let Some(dump) = &cfg.dump {
        write_dump(summary.metric.field(), dump)?;
    }
    Ok((cfg, summary))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_config() {
        let cfg = parse_config(
            "# demo\nn = 2\nm = 16\nsteps = 3\ninit = conformal-sine(0.05)\nform = printed\ncsv = out.csv\n",
            Path::new("/tmp"),
        )
        .unwrap();
        assert_eq!(cfg.grid.m, 16);
        assert_eq!(cfg.init, InitCondition::ConformalSine { eps: 0.05 });
        assert_eq!(cfg.csv, Some(PathBuf::from("/tmp/out.csv")));
        assert!(parse_config("bogus = 1", Path::new(".")).is_err());
        assert!(parse_config("n = 4", Path::new(".")).is_err());
        assert!(parse_config("init = wobble(1)", Path::new(".")).is_err());
        assert_eq!(
            "random-perturbation(0.01, 9)"
                .parse::<InitCondition>()
                .unwrap(),
            InitCondition::RandomPerturbation { eps: 0.01, seed: 9 }
        );
    }

    #[test]
    fn flat_run_is_stationary() {
        let cfg = parse_config("m = 16\nsteps = 100\ndt = 1e-3", Path::new(".")).unwrap();
        let s = run_flow(&cfg).unwrap();
        let start = SymField::identity(cfg.grid);
        assert!(s.metric.field().axpy(-1.0, &start).max_abs() <= 1e-12);
        assert_eq!(s.rows.len(), 101);
        assert!(s
            .csv()
            .starts_with("step,max_abs_source,min_det,residual_norm\n0,"));
    }

    #[test]
    fn residual_tracks_the_update() {
        let cfg = parse_config(
            "m = 16\nsteps = 5\ninit = conformal-sine(0.1)",
            Path::new("."),
        )
        .unwrap();
        let s = run_flow(&cfg).unwrap();
        assert!(s.rows[0].residual_norm < 1e-12);
        assert!(
            s.rows.iter().all(|r| r.residual_norm < 1e-9),
            "{:?}",
            s.rows
        );
    }
}
