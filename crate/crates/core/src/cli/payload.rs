use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bordism::{Annotation, FiniteAbelianGroup};
use crate::forms::IntegerSymmetricForm;
use crate::milnor::Verdict;
use crate::ricci::RunRow;
use crate::verify::Report;
use crate::Rational;

/// Invariants of one integral symmetric form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FormSummary {
    pub name: String,
    pub rank: usize,
    pub signature: i64,
    pub positive: usize,
    pub negative: usize,
    pub null: usize,
    pub determinant: String,
    pub even: bool,
}

impl FormSummary {
    pub fn of(name: &str, form: &IntegerSymmetricForm) -> Self {
        let (positive, negative, null) = form.inertia();
        FormSummary {
            name: name.to_string(),
            rank: form.dim(),
            signature: form.signature(),
            positive,
            negative,
            null,
            determinant: form.determinant().to_string(),
            even: form.is_even(),
        }
    }
}

impl fmt::Display for FormSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "signature: {}", self.signature)?;
        writeln!(
            f,
            "rank: {} (positive {}, negative {}, null {})",
            self.rank, self.positive, self.negative, self.null
        )?;
        writeln!(f, "determinant: {}", self.determinant)?;
        write!(f, "even: {}", self.even)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JetRow {
    pub s: u32,
    pub dim_jet: String,
    pub dim_rf: String,
    pub dim_symbol: String,
    /// None for s = 0, where the recurrence does not apply.
    pub recurrence: Option<bool>,
}

/// Result document of every subcommand. `--json` prints it through serde;
/// the plain form is its `Display`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Payload {
    Bernoulli {
        n: u32,
        value: Rational,
    },
    Spoly {
        partition: String,
        polynomial: String,
    },
    Lpoly {
        k: u32,
        polynomial: String,
        expanded: String,
    },
    Lseries {
        order: usize,
        series: String,
    },
    Signature(FormSummary),
    Arf {
        dim: usize,
        arf: u8,
        mu_zero: String,
    },
    E8 {
        forms: Vec<FormSummary>,
    },
    Milnor {
        k: String,
        p1: String,
        p2: Rational,
        integral: bool,
        constraint: String,
        verdict: Verdict,
    },
    CpSignature {
        k: u32,
        breakdown: String,
        signature: Rational,
    },
    Chi {
        expr: String,
        chi: i64,
        dim: Option<u32>,
    },
    Bordism {
        n: usize,
        group: FiniteAbelianGroup,
    },
    Theta {
        n: usize,
        group: FiniteAbelianGroup,
        annotations: Option<Vec<Annotation>>,
    },
    BpOrder {
        m: u32,
        order: String,
    },
    Lgroup {
        n: usize,
        group: FiniteAbelianGroup,
    },
    Jetdims {
        n: u32,
        rows: Vec<JetRow>,
    },
    RicciRun {
        config: String,
        n: usize,
        m: usize,
        h: f64,
        dt: f64,
        drift: f64,
        rows: Vec<RunRow>,
        csv: Option<String>,
        dump: Option<String>,
    },
    Verify(Report),
    Error {
        message: String,
    },
}

impl Payload {
    pub fn exit_code(&self) -> i32 {
        match self {
            Payload::Verify(r) if !r.passed() => 1,
            Payload::Error { .. } => 2,
            _ => 0,
        }
    }
}

fn table(f: &mut fmt::Formatter<'_>, rows: &[Vec<String>]) -> fmt::Result {
    let cols = rows.first().map_or(0, Vec::len);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    for (i, r) in rows.iter().enumerate() {
        let line: Vec<String> = r
            .iter()
            .zip(&widths)
            .map(|(cell, w)| format!("{cell:>w$}", w = *w))
            .collect();
        if i > 0 {
            writeln!(f)?;
        }
        write!(f, "{}", line.join("  "))?;
    }
    Ok(())
}

impl fmt::Display for Payload {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Payload::Bernoulli { value, .. } => write!(f, "{value}"),
            Payload::Spoly { polynomial, .. } => f.write_str(polynomial),
            Payload::Lpoly { polynomial, .. } => f.write_str(polynomial),
            Payload::Lseries { series, .. } => f.write_str(series),
            Payload::Signature(s) => write!(f, "{s}"),
            Payload::Arf { dim, arf, mu_zero } => {
                writeln!(f, "arf: {arf}")?;
                writeln!(f, "dimension: {dim}")?;
                write!(f, "vectors with mu = 0: {mu_zero}")
            }
            Payload::E8 { forms } => {
                for (i, s) in forms.iter().enumerate() {
                    if i > 0 {
                        writeln!(f)?;
                        writeln!(f)?;
                    }
                    let body: Vec<String> =
                        s.to_string().lines().map(|l| format!("  {l}")).collect();
                    write!(f, "{}\n{}", s.name, body.join("\n"))?;
                }
                Ok(())
            }
            Payload::Milnor {
                k,
                p1,
                p2,
                integral,
                constraint,
                verdict,
            } => {
                writeln!(f, "k = {k}, p1 = {p1}")?;
                writeln!(
                    f,
                    "p2 = {p2} ({})",
                    if *integral {
                        "integral"
                    } else {
                        "not integral"
                    }
                )?;
                writeln!(f, "{constraint}")?;
                write!(f, "verdict: {verdict}")
            }
            Payload::CpSignature { k, breakdown, .. } => {
                write!(f, "sigma(CP^{}) = {breakdown}", 2 * k)
            }
            Payload::Chi { chi, dim, .. } => match dim {
                Some(d) => write!(f, "{chi} (dimension {d})"),
                None => write!(f, "{chi}"),
            },
            Payload::Bordism { group, .. } | Payload::Lgroup { group, .. } => write!(f, "{group}"),
            Payload::Theta {
                group, annotations, ..
            } => {
                write!(f, "{group}")?;
                for a in annotations.iter().flatten() {
                    write!(f, "\nnote: {}", a.note)?;
                    if let Some(g) = &a.standard {
                        write!(f, "; standard structure {g}")?;
                    }
                }
                Ok(())
            }
            Payload::BpOrder { order, .. } => f.write_str(order),
            Payload::Jetdims { n, rows } => {
                writeln!(f, "n = {n}")?;
                let mut cells = vec![vec![
                    "s".to_string(),
                    "dim JD^{2+s}".to_string(),
                    "dim (RF)_{+s}".to_string(),
                    "dim g_{2+s}".to_string(),
                    "recurrence".to_string(),
                ]];
                for r in rows {
                    cells.push(vec![
                        r.s.to_string(),
                        r.dim_jet.clone(),
                        r.dim_rf.clone(),
                        r.dim_symbol.clone(),
                        match r.recurrence {
                            None => "-".into(),
                            Some(true) => "holds".into(),
                            Some(false) => "FAILS".into(),
                        },
                    ]);
                }
                table(f, &cells)
            }
            Payload::RicciRun {
                config,
                n,
                m,
                h,
                dt,
                drift,
                rows,
                csv,
                dump,
            } => {
                writeln!(f, "config: {config}")?;
                writeln!(f, "grid: n = {n}, m = {m}, h = {h:e}, dt = {dt:e}")?;
                writeln!(f, "relative drift of the paired integral: {drift:e}")?;
                if let Some(p) = csv {
                    writeln!(f, "csv: {p}")?;
                }
                if let Some(p) = dump {
                    writeln!(f, "dump: {p}")?;
                }
                let mut cells = vec![vec![
                    "step".to_string(),
                    "max|S|".to_string(),
                    "min det g".to_string(),
                    "residual".to_string(),
                ]];
                for r in rows {
                    cells.push(vec![
                        r.step.to_string(),
                        format!("{:.6e}", r.max_source),
                        format!("{:.12}", r.min_det),
                        format!("{:.3e}", r.residual_norm),
                    ]);
                }
                table(f, &cells)
            }
            Payload::Verify(r) => write!(f, "{r}"),
            Payload::Error { message } => write!(f, "error: {message}"),
        }
    }
}
