//! JSON and CSV rendering. Every JSON report has the same envelope:
//! `schema`, `version`, `command`, `argv`, `inputs`, the command's own
//! fields, then an optional `timing` object.

use lzd_core::criterion::{Certificate, ParityRule};
use lzd_core::{CycloInt, Error, RootOfUnity};
use num_rational::Ratio;
use serde::Serialize;
use std::io::{self, Write};
use std::time::Instant;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// How a command ended when it did not error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Mismatch,
}

impl Status {
    pub fn from_pass(pass: bool) -> Status {
        if pass {
            Status::Ok
        } else {
            Status::Mismatch
        }
    }
}

/// A header and its rows, for `--format csv`.
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Table {
        Table { header, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

#[derive(Serialize)]
struct Timing {
    elapsed_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    cache_hits: Option<usize>,
}

#[derive(Serialize)]
struct Envelope<'a, I, B> {
    schema: u32,
    version: &'static str,
    command: &'a str,
    argv: &'a [String],
    inputs: I,
    #[serde(flatten)]
    body: B,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing: Option<Timing>,
}

pub struct Emitter {
    pub format: Format,
    pub timing: bool,
    pub argv: Vec<String>,
    start: Instant,
}

impl Emitter {
    pub fn new(format: Format, timing: bool, argv: Vec<String>) -> Emitter {
        Emitter { format, timing, argv, start: Instant::now() }
    }

    pub fn emit<I: Serialize, B: Serialize>(
        &self,
        command: &str,
        inputs: I,
        body: B,
        table: Table,
        cache_hits: Option<usize>,
    ) -> io::Result<()> {
        let mut out = io::stdout().lock();
        match self.format {
            Format::Json => {
                let timing =
                    self.timing.then(|| Timing { elapsed_ms: self.start.elapsed().as_millis() as u64, cache_hits });
                let env = Envelope {
                    schema: SCHEMA,
                    version: env!("CARGO_PKG_VERSION"),
                    command,
                    argv: &self.argv,
                    inputs,
                    body,
                    timing,
                };
                serde_json::to_writer_pretty(&mut out, &env)?;
                writeln!(out)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&table.header)?;
                for row in &table.rows {
                    w.write_record(row)?;
                }
                w.flush()
            }
        }
    }
}

#[derive(Serialize)]
struct ErrorReport<'a> {
    schema: u32,
    error: &'a str,
    message: String,
}

/// Writes the machine-readable failure to stdout and the message to stderr.
pub fn emit_error(reason: &str, message: String) {
    eprintln!("lzd: {message}");
    let report = ErrorReport { schema: SCHEMA, error: reason, message };
    let mut out = io::stdout().lock();
    if serde_json::to_writer_pretty(&mut out, &report).is_ok() {
        let _ = writeln!(out);
    }
}

/// Oracle-side failures are mismatches; everything else is bad input.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NoMatch(_) | Error::NonInteger(_) | Error::InconsistentScalar(_) | Error::SearchFailure(_) => 1,
        _ => 2,
    }
}

pub fn ratio(r: Ratio<i64>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn root(t: RootOfUnity) -> String {
    ratio(t.t())
}

#[derive(Serialize)]
pub struct Cyclo {
    pub conductor: u64,
    pub coeffs: Vec<i64>,
}

impl From<&CycloInt> for Cyclo {
    fn from(x: &CycloInt) -> Cyclo {
        Cyclo { conductor: x.conductor(), coeffs: x.coeffs().to_vec() }
    }
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CertificateJson {
    Parity { rule: &'static str },
    FailedConditions { conditions: Vec<&'static str> },
    WitnessNrOdd { j: u32 },
    WitnessTrEven { chi_pi_f: String, chi_bar_l0: String, chi_pi_k: String, chi_bar_eta: String, product: String },
}

impl From<&Certificate> for CertificateJson {
    fn from(c: &Certificate) -> CertificateJson {
        match c {
            Certificate::Parity(rule) => CertificateJson::Parity {
                rule: match rule {
                    ParityRule::UnramifiedEvenN => "UNRAMIFIED_EVEN_N",
                    ParityRule::RamifiedOddN => "RAMIFIED_ODD_N",
                },
            },
            Certificate::FailedConditions(cs) => {
                CertificateJson::FailedConditions { conditions: cs.iter().map(|c| c.as_str()).collect() }
            }
            Certificate::WitnessNrOdd { j } => CertificateJson::WitnessNrOdd { j: *j },
            Certificate::WitnessTrEven(w) => CertificateJson::WitnessTrEven {
                chi_pi_f: root(w.chi_pi_f),
                chi_bar_l0: root(w.chi_bar_l0),
                chi_pi_k: root(w.chi_pi_k),
                chi_bar_eta: root(w.chi_bar_eta),
                product: root(w.product),
            },
        }
    }
}

impl CertificateJson {
    /// One-cell summary for CSV.
    pub fn summary(&self) -> String {
        match self {
            CertificateJson::Parity { rule } => format!("PARITY:{rule}"),
            CertificateJson::FailedConditions { conditions } => format!("FAILED:{}", conditions.join("+")),
            CertificateJson::WitnessNrOdd { j } => format!("WITNESS_NR_ODD:j={j}"),
            CertificateJson::WitnessTrEven { product, .. } => format!("WITNESS_TR_EVEN:product={product}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use lzd_core::criterion::Condition;

    #[test]
    fn rationals_keep_unit_denominators() {
        assert_eq!(ratio(Ratio::from_integer(0)), "0/1");
        assert_eq!(ratio(Ratio::new(2, 4)), "1/2");
        assert_eq!(root(RootOfUnity::minus_one()), "1/2");
    }

    #[test]
    fn certificate_tags() {
        let c = CertificateJson::from(&Certificate::FailedConditions(vec![Condition::TrivialOnF, Condition::EtaSign]));
        let v = serde_json::to_value(&c).unwrap();
        assert_eq!(v["kind"], "FAILED_CONDITIONS");
        assert_eq!(v["conditions"][1], "eta_sign");
        assert_eq!(c.summary(), "FAILED:trivial_on_F+eta_sign");
    }

    #[test]
    fn cyclotomic_shape() {
        let x = CycloInt::zeta_pow(8, 3);
        let v = serde_json::to_value(Cyclo::from(&x)).unwrap();
        assert_eq!(v["conductor"], 8);
        assert!(v["coeffs"].is_array());
    }

    #[test]
    fn oracle_errors_are_mismatches() {
        assert_eq!(exit_code(&Error::NoMatch("x".into())), 1);
        assert_eq!(exit_code(&Error::NotRegular { orbit: vec![0], n: 2 }), 2);
    }
}
