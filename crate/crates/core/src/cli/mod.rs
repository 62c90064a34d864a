//! Command-line front end. [`run`] parses an argument vector and returns the
//! rendered payload with its exit code; the binary only prints it.
//!
//! Exit codes: 0 on success, 1 when `verify` finds a mismatch, 2 on usage or
//! input errors.

mod payload;

pub use payload::{FormSummary, JetRow, Payload};

use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;

use crate::bordism::{
    annotations_for, bp_order, homotopy_sphere_bordism, l_group, theta, SphereTable,
};
use crate::eulercalc::evaluate_chi;
use crate::exactnum::bernoulli;
use crate::forms::{e8_form, e8_form_as_printed, IntegerSymmetricForm, Z2QuadraticForm};
use crate::genus::{format_fraction_layout, l_polynomial, l_series};
use crate::jets::{jet_table, recurrence_holds};
use crate::milnor::{cp_pontrjagin_numbers, milnor_detect, signature_breakdown};
use crate::ricci::run_config;
use crate::symmpoly::{s_polynomial, Partition};
use crate::verify::{verify, Scope};
use crate::Error;

/// What a single invocation produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: i32,
    pub payload: String,
}

#[derive(Parser, Debug)]
#[command(
    name = "topokit",
    version,
    about = "Exact invariants of manifolds and a desk-scale Ricci flow"
)]
struct Cli {
    /// Emit the result as a JSON document.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Bernoulli number B_N (B_1 = -1/2).
    Bernoulli { n: u32 },
    /// s_I in the elementary symmetric functions, e.g. `spoly 1 1 2` or `spoly "(2,1,1)"`.
    Spoly {
        #[arg(required = true, num_args = 1..)]
        parts: Vec<String>,
    },
    /// L_K as a single fraction in p1..pK.
    Lpoly { k: u32 },
    /// √z / tanh √z through z^N.
    Lseries { n: usize },
    /// Signature of a symmetric integer matrix given as a JSON array of rows or a file holding one.
    Signature { input: String },
    /// Arf invariant of a Z2 quadratic form `{"lambda": [[..]], "mu": [..]}` (inline or file).
    Arf { input: String },
    /// Signature and determinant of the E8 form.
    E8,
    /// Integrality test for the 7-sphere bundle with p1 = 2K, K odd.
    Milnor { k: String },
    /// Signature theorem evaluated on CP^{2K}.
    CpSignature { k: u32 },
    /// Euler characteristic of an expression such as `glue(mobius(), mobius(), sphere(1))`.
    Chi { expr: String },
    /// Singular integral bordism group of homotopy N-spheres.
    Bordism { n: usize },
    /// Group of homotopy N-spheres.
    Theta {
        n: usize,
        /// Attach notes on entries whose standard structure differs.
        #[arg(long)]
        annotate: bool,
    },
    /// Order of bP_{4M}.
    BpOrder { m: u32 },
    /// Simply connected surgery obstruction group L_N(Z).
    Lgroup { n: usize },
    /// Jet, prolongation and symbol dimensions for s = 0..SMAX.
    Jetdims { n: u32, smax: u32 },
    /// Run a Ricci flow configuration file.
    RicciRun { config: PathBuf },
    /// Replay tabulated values and properties.
    Verify {
        #[arg(default_value = "all")]
        scope: String,
    },
}

fn read_inline_or_file(input: &str) -> Result<String, Error> {
    let t = input.trim_start();
    if t.starts_with('[') || t.starts_with('{') {
        return Ok(input.to_string());
    }
    fs::read_to_string(input).map_err(|e| Error::Io(format!("{input}: {e}")))
}

fn execute(command: Command) -> Result<Payload, Error> {
    Ok(match command {
        Command::Bernoulli { n } => Payload::Bernoulli {
            n,
            value: bernoulli(n),
        },
        Command::Spoly { parts } => {
            let partition: Partition = parts.join(" ").parse()?;
            Payload::Spoly {
                polynomial: s_polynomial(&partition).to_string(),
                partition: partition.to_string(),
            }
        }
        Command::Lpoly { k } => {
            if k == 0 {
                return Err(Error::invalid("K must be at least 1"));
            }
            let poly = l_polynomial(k);
            Payload::Lpoly {
                k,
                polynomial: format_fraction_layout(&poly),
                expanded: poly.to_string(),
            }
        }
        Command::Lseries { n } => Payload::Lseries {
            order: n,
            series: l_series(n).to_string(),
        },
        Command::Signature { input } => {
            let form = IntegerSymmetricForm::from_json(&read_inline_or_file(&input)?)?;
            Payload::Signature(FormSummary::of("input", &form))
        }
        Command::Arf { input } => {
            let form = Z2QuadraticForm::from_json(&read_inline_or_file(&input)?)?;
            Payload::Arf {
                dim: form.dim(),
                arf: form.arf()?,
                mu_zero: form.count_mu_zero().to_string(),
            }
        }
        Command::E8 => Payload::E8 {
            forms: vec![
                FormSummary::of("E8", &e8_form()),
                FormSummary::of("E8 as tabulated", &e8_form_as_printed()),
            ],
        },
        Command::Milnor { k } => {
            let k: BigInt = k
                .trim()
                .parse()
                .map_err(|_| Error::InvalidArguments(format!("K = {k:?} is not an integer")))?;
            let r = milnor_detect(k)?;
            Payload::Milnor {
                constraint: r.constraint(),
                k: r.k.to_string(),
                p1: r.p1.to_string(),
                p2: r.p2,
                integral: r.verdict == crate::milnor::Verdict::StandardConsistent,
                verdict: r.verdict,
            }
        }
        Command::CpSignature { k } => {
            if k == 0 {
                return Err(Error::invalid("K must be at least 1"));
            }
            let pn = cp_pontrjagin_numbers(k);
            let b = signature_breakdown(&pn)?;
            Payload::CpSignature {
                k,
                breakdown: b.to_string(),
                signature: b.value,
            }
        }
        Command::Chi { expr } => {
            let v = evaluate_chi(&expr)?;
            Payload::Chi {
                expr,
                chi: v.chi,
                dim: v.dim,
            }
        }
        Command::Bordism { n } => Payload::Bordism {
            n,
            group: homotopy_sphere_bordism(n)?,
        },
        Command::Theta { n, annotate } => {
            let group = theta(n)?;
            let notes = annotate.then(|| annotations_for(SphereTable::Theta, n));
            Payload::Theta {
                n,
                group,
                annotations: notes,
            }
        }
        Command::BpOrder { m } => Payload::BpOrder {
            m,
            order: bp_order(m)?.to_string(),
        },
        Command::Lgroup { n } => Payload::Lgroup {
            n,
            group: l_group(n),
        },
        Command::Jetdims { n, smax } => {
            let rows = jet_table(n, smax)?
                .into_iter()
                .map(|d| {
                    let recurrence = if d.s == 0 {
                        None
                    } else {
                        Some(recurrence_holds(n, d.s)?)
                    };
                    Ok(JetRow {
                        s: d.s,
                        dim_jet: d.dim_jet.to_string(),
                        dim_rf: d.dim_rf.to_string(),
                        dim_symbol: d.dim_symbol.to_string(),
                        recurrence,
                    })
                })
                .collect::<Result<Vec<_>, Error>>()?;
            Payload::Jetdims { n, rows }
        }
        Command::RicciRun { config } => {
            let (cfg, summary) = run_config(&config)?;
            Payload::RicciRun {
                config: config.display().to_string(),
                n: cfg.grid.n,
                m: cfg.grid.m,
                h: cfg.grid.h,
                dt: summary.dt,
                drift: summary.relative_drift(),
                rows: summary.rows,
                csv: cfg.csv.map(|p| p.display().to_string()),
                dump: cfg.dump.map(|p| p.display().to_string()),
            }
        }
        Command::Verify { scope } => Payload::Verify(verify(scope.parse::<Scope>()?)),
    })
}

fn render(payload: &Payload, json: bool) -> String {
    if json {
        serde_json::to_string_pretty(payload).expect("payloads serialize")
    } else {
        payload.to_string()
    }
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp
                | ErrorKind::DisplayVersion
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => 0,
                _ => 2,
            };
            return CommandResult {
                exit_code: code,
                payload: e.render().to_string().trim_end().to_string(),
            };
        }
    };
    let payload = execute(cli.command).unwrap_or_else(|e| Payload::Error {
        message: e.to_string(),
    });
    CommandResult {
        exit_code: payload.exit_code(),
        payload: render(&payload, cli.json),
    }
}

/// Renders a `--json` document in the plain form.
pub fn rerender(json: &str) -> Result<String, Error> {
    let payload: Payload = serde_json::from_str(json)
        .map_err(|e| Error::Parse(format!("not a topokit document: {e}")))?;
    Ok(payload.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> CommandResult {
        run(std::iter::once("topokit").chain(args.iter().copied()))
    }

    #[test]
    fn examples() {
        assert_eq!(call(&["lpoly", "2"]).payload, "(7*p2 - p1^2)/45");
        assert_eq!(call(&["theta", "7"]).payload, "Z_28");
        assert_eq!(call(&["bernoulli", "12"]).payload, "-691/2730");
        assert_eq!(call(&["spoly", "1", "1", "2"]).payload, "s1*s3 - 4*s4");
        assert_eq!(call(&["spoly", "(2,1,1)"]).payload, "s1*s3 - 4*s4");
        assert_eq!(call(&["lgroup", "6"]).payload, "Z_2");
        assert_eq!(call(&["bp-order", "3"]).payload, "992");
        assert_eq!(
            call(&["chi", "glue(mobius(), mobius(), sphere(1))"]).payload,
            "0 (dimension 2)"
        );
    }

    #[test]
    fn errors_exit_two() {
        assert_eq!(call(&["frobnicate"]).exit_code, 2);
        assert_eq!(call(&["milnor", "4"]).exit_code, 2);
        assert_eq!(call(&["theta", "40"]).exit_code, 2);
        assert_eq!(call(&["chi", "sphere("]).exit_code, 2);
        assert_eq!(call(&["signature", "[[1,2],[3,4]]"]).exit_code, 2);
        assert_eq!(call(&["verify", "nothing"]).exit_code, 2);
        assert_eq!(call(&["--help"]).exit_code, 0);
    }

    #[test]
    fn json_round_trips() {
        for args in [
            vec!["milnor", "3"],
            vec!["e8"],
            vec!["jetdims", "3", "4"],
            vec!["theta", "9", "--annotate"],
            vec!["cp-signature", "4"],
            vec!["arf", r#"{"lambda": [[0,1],[1,0]], "mu": [1,1]}"#],
            vec!["chi", "sphere(7("],
        ] {
            let plain = call(&args);
            let mut with_json = args.clone();
            with_json.push("--json");
            let json = call(&with_json);
            assert_eq!(plain.exit_code, json.exit_code);
            assert_eq!(rerender(&json.payload).unwrap(), plain.payload, "{args:?}");
        }
    }
}
