//! Verification reports in text and JSON.
//!
//! Both renderings are produced from the same [`Report`] value, so they carry
//! identical data. Polynomials appear in their canonical text form.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::concrete::{CrossValidation, TransposeCounterexample};
use crate::error::{Error, Result};
use crate::freealg::Mode;
use crate::jordan::{Certificate, CertificateCheck, CollapseCheck, IdentityCheck, Multiplicity, RefutationReport};
use crate::Modes;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            other => Err(Error::Parse(format!("unknown format `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateLine {
    pub sign: i8,
    pub subset: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FailureWitness {
    pub trial: u64,
    pub identity: String,
    pub assignment: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Identity {
        identity: String,
        statement: String,
        lhs_terms: usize,
        rhs_terms: usize,
        difference_terms: usize,
        difference: String,
    },
    Collapse {
        expected_factor: String,
        factor: Option<String>,
        plain_defect: String,
        symmetrized_terms: usize,
        difference: String,
    },
    Refutation {
        residual_terms: usize,
        multiplicities: BTreeMap<String, Multiplicity>,
        pair_component: String,
        pair_factor: Option<String>,
        expected_pair_factor: String,
    },
    Certificate {
        entries: Vec<CertificateLine>,
        target_hash: String,
        evaluated_hash: String,
        reproduces_symmetrized: bool,
        signs_alternate: bool,
        covers_lattice: bool,
        text: String,
    },
    Concrete {
        algebra: String,
        map: String,
        samples: u64,
        jordan_zero: u64,
        witness_pair: String,
        witness: String,
        expected_witness: String,
    },
    CrossValidation {
        algebra_a: String,
        algebra_b: String,
        seed: u64,
        trials: u64,
        theorem_equal: u64,
        decomposition_equal: u64,
        failures: Vec<FailureWitness>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    pub n: usize,
    pub a_mode: Mode,
    pub b_mode: Mode,
    pub outcome: Outcome,
    pub elapsed_ms: Option<u64>,
    pub payload: Payload,
}

impl Report {
    fn new(command: &str, n: usize, modes: Modes, ok: bool, payload: Payload) -> Self {
        Report {
            command: command.to_string(),
            n,
            a_mode: modes.a,
            b_mode: modes.b,
            outcome: Outcome::from_bool(ok),
            elapsed_ms: None,
            payload,
        }
    }

    pub fn with_elapsed(mut self, ms: u64) -> Self {
        self.elapsed_ms = Some(ms);
        self
    }

    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }

    /// `identity` is `"theorem"` or `"decomposition"`.
    pub fn identity(command: &str, n: usize, modes: Modes, identity: &str, check: &IdentityCheck) -> Self {
        let statement = match identity {
            "theorem" => format!(
                "psi({{1..{n}}}) = sum over permutations s of h(x_s(1)*...*x_s({n})) - h(x_s(1))*...*h(x_s({n}))"
            ),
            "decomposition" => format!("phi({{1..{n}}}) = sum over nonempty S of psi(S)"),
            other => other.to_string(),
        };
        Report::new(
            command,
            n,
            modes,
            check.holds(),
            Payload::Identity {
                identity: identity.to_string(),
                statement,
                lhs_terms: check.lhs.len(),
                rhs_terms: check.rhs.len(),
                difference_terms: check.difference.len(),
                difference: check.difference.to_string(),
            },
        )
    }

    pub fn collapse(command: &str, n: usize, modes: Modes, check: &CollapseCheck) -> Self {
        Report::new(
            command,
            n,
            modes,
            check.holds(),
            Payload::Collapse {
                expected_factor: check.expected.to_string(),
                factor: check.factor.as_ref().map(ToString::to_string),
                plain_defect: check.plain.to_string(),
                symmetrized_terms: check.symmetrized.len(),
                difference: check.difference().to_string(),
            },
        )
    }

    pub fn refutation(command: &str, modes: Modes, r: &RefutationReport) -> Self {
        Report::new(
            command,
            r.n,
            modes,
            r.refuted(),
            Payload::Refutation {
                residual_terms: r.residual.len(),
                multiplicities: r
                    .multiplicities
                    .iter()
                    .map(|(s, m)| (s.to_string(), *m))
                    .collect(),
                pair_component: r.pair_component.to_string(),
                pair_factor: r.pair_factor.as_ref().map(ToString::to_string),
                expected_pair_factor: r.expected_pair_factor().to_string(),
            },
        )
    }

    pub fn certificate(command: &str, n: usize, modes: Modes, cert: &Certificate, check: &CertificateCheck) -> Self {
        Report::new(
            command,
            n,
            modes,
            check.passed(),
            Payload::Certificate {
                entries: cert
                    .entries
                    .iter()
                    .map(|e| CertificateLine {
                        sign: e.sign,
                        subset: e.subset.to_string(),
                    })
                    .collect(),
                target_hash: cert.target_hash.clone(),
                evaluated_hash: check.evaluated_hash.clone(),
                reproduces_symmetrized: check.reproduces_symmetrized,
                signs_alternate: check.signs_alternate,
                covers_lattice: check.covers_lattice,
                text: cert.to_text(),
            },
        )
    }

    pub fn concrete(command: &str, ce: &TransposeCounterexample) -> Self {
        Report::new(
            command,
            2,
            Modes::new(Mode::Noncommutative, Mode::Noncommutative),
            ce.demonstrated(),
            Payload::Concrete {
                algebra: "m2".into(),
                map: "transpose".into(),
                samples: ce.samples,
                jordan_zero: ce.jordan_zero,
                witness_pair: "(E12, E21)".into(),
                witness: ce.witness.to_string(),
                expected_witness: ce.expected_witness.to_string(),
            },
        )
    }

    pub fn cross_validation(command: &str, n: usize, modes: Modes, seed: u64, cv: &CrossValidation) -> Self {
        Report::new(
            command,
            n,
            modes,
            cv.passed(),
            Payload::CrossValidation {
                algebra_a: cv.algebra_a.clone(),
                algebra_b: cv.algebra_b.clone(),
                seed,
                trials: cv.trials,
                theorem_equal: cv.theorem_equal,
                decomposition_equal: cv.decomposition_equal,
                failures: cv
                    .failures
                    .iter()
                    .map(|f| FailureWitness {
                        trial: f.trial,
                        identity: f.identity.to_string(),
                        assignment: f.assignment.iter().map(ToString::to_string).collect(),
                        lhs: f.lhs.to_string(),
                        rhs: f.rhs.to_string(),
                    })
                    .collect(),
            },
        )
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Text => self.render_text(),
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        let pass = self.passed();
        let _ = writeln!(out, "command: {}", self.command);
        let _ = writeln!(out, "n: {}", self.n);
        let _ = writeln!(out, "a_mode: {}", self.a_mode);
        let _ = writeln!(out, "b_mode: {}", self.b_mode);
        let _ = writeln!(out, "outcome: {}", if pass { "pass" } else { "fail" });
        match &self.payload {
            Payload::Identity {
                identity,
                statement,
                lhs_terms,
                rhs_terms,
                difference_terms,
                difference,
            } => {
                let verdict = if pass { "holds" } else { "FAILS" };
                let _ = writeln!(out, "{identity} identity {verdict}");
                let _ = writeln!(out, "statement: {statement}");
                let _ = writeln!(out, "lhs_terms: {lhs_terms}");
                let _ = writeln!(out, "rhs_terms: {rhs_terms}");
                let _ = writeln!(out, "difference_terms: {difference_terms}");
                let _ = writeln!(out, "difference: {difference}");
            }
            Payload::Collapse {
                expected_factor,
                factor,
                plain_defect,
                symmetrized_terms,
                difference,
            } => {
                let _ = writeln!(out, "plain_defect: {plain_defect}");
                let _ = writeln!(out, "symmetrized_terms: {symmetrized_terms}");
                let _ = writeln!(out, "expected_factor: {expected_factor}");
                let _ = writeln!(out, "factor: {}", factor.as_deref().unwrap_or("none"));
                let _ = writeln!(out, "difference: {difference}");
            }
            Payload::Refutation {
                residual_terms,
                multiplicities,
                pair_component,
                pair_factor,
                expected_pair_factor,
            } => {
                let verdict = if pass { "nonzero (formula refuted)" } else { "zero" };
                let _ = writeln!(out, "residual: {verdict}");
                let _ = writeln!(out, "residual_terms: {residual_terms}");
                let _ = writeln!(out, "multiplicities (pair: lhs rhs):");
                for (pair, m) in multiplicities {
                    let _ = writeln!(out, "  {pair}: {} {}", m.lhs, m.rhs);
                }
                let _ = writeln!(out, "pair_component {{1,2}}: {pair_component}");
                let _ = writeln!(out, "pair_factor: {}", pair_factor.as_deref().unwrap_or("none"));
                let _ = writeln!(out, "expected_pair_factor: {expected_pair_factor}");
            }
            Payload::Certificate {
                entries: _,
                target_hash,
                evaluated_hash,
                reproduces_symmetrized,
                signs_alternate,
                covers_lattice,
                text,
            } => {
                out.push_str("certificate:\n");
                for line in text.lines() {
                    let _ = writeln!(out, "  {line}");
                }
                let _ = writeln!(out, "target_hash: {target_hash}");
                let _ = writeln!(out, "evaluated_hash: {evaluated_hash}");
                let _ = writeln!(out, "reproduces_symmetrized: {reproduces_symmetrized}");
                let _ = writeln!(out, "signs_alternate: {signs_alternate}");
                let _ = writeln!(out, "covers_lattice: {covers_lattice}");
            }
            Payload::Concrete {
                algebra,
                map,
                samples,
                jordan_zero,
                witness_pair,
                witness,
                expected_witness,
            } => {
                let _ = writeln!(out, "algebra: {algebra}");
                let _ = writeln!(out, "map: {map}");
                let _ = writeln!(out, "jordan_defect_zero: {jordan_zero}/{samples}");
                let _ = writeln!(out, "hom_defect{witness_pair}: {witness}");
                let _ = writeln!(out, "expected_witness: {expected_witness}");
            }
            Payload::CrossValidation {
                algebra_a,
                algebra_b,
                seed,
                trials,
                theorem_equal,
                decomposition_equal,
                failures,
            } => {
                let _ = writeln!(out, "algebra_a: {algebra_a}");
                let _ = writeln!(out, "algebra_b: {algebra_b}");
                let _ = writeln!(out, "seed: {seed}");
                let _ = writeln!(out, "theorem_equal: {theorem_equal}/{trials}");
                let _ = writeln!(out, "decomposition_equal: {decomposition_equal}/{trials}");
                for f in failures {
                    let _ = writeln!(
                        out,
                        "failure: trial {} {} at [{}]: {} != {}",
                        f.trial,
                        f.identity,
                        f.assignment.join(", "),
                        f.lhs,
                        f.rhs
                    );
                }
            }
        }
        if let Some(ms) = self.elapsed_ms {
            let _ = writeln!(out, "elapsed_ms: {ms}");
        }
        let _ = writeln!(out, "RESULT: {}", if pass { "PASS" } else { "FAIL" });
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::{refute_cheshmavar, verify_theorem, JordanConfig};

    #[test]
    fn pass_report_text_has_result_line() {
        let modes = Modes::new(Mode::Noncommutative, Mode::Noncommutative);
        let cfg = JordanConfig::new(3, modes).unwrap();
        let check = verify_theorem(&cfg).unwrap();
        let text = Report::identity("verify", 3, modes, "theorem", &check).render(Format::Text);
        assert!(text.contains("theorem identity holds\n"));
        assert!(text.ends_with("RESULT: PASS\n"));
        assert!(!text.contains("elapsed_ms"));
    }

    #[test]
    fn refutation_json_multiplicities() {
        let modes = Modes::new(Mode::Commutative, Mode::Commutative);
        let cfg = JordanConfig::new(4, modes).unwrap();
        let report = Report::refutation("refute", modes, &refute_cheshmavar(&cfg).unwrap());
        let json: serde_json::Value = serde_json::from_str(&report.render(Format::Json)).unwrap();
        assert_eq!(json["payload"]["multiplicities"]["{1,2}"]["rhs"], 3);
        assert_eq!(json["payload"]["multiplicities"]["{1,2}"]["lhs"], 1);
        assert_eq!(json["outcome"], "pass");
        assert_eq!(json["a_mode"], "com");
        assert!(json["elapsed_ms"].is_null());
        let keys: Vec<&str> = json.as_object().unwrap().keys().map(String::as_str).collect();
        for key in ["command", "n", "a_mode", "b_mode", "outcome", "elapsed_ms", "payload"] {
            assert!(keys.contains(&key), "missing {key}");
        }
    }

    #[test]
    fn failing_identity_carries_witness() {
        let modes = Modes::new(Mode::Noncommutative, Mode::Noncommutative);
        let cfg = JordanConfig::new(2, modes).unwrap();
        let lhs = crate::jordan::plain_defect(&cfg);
        let rhs = crate::jordan::symmetrized_defect(&cfg);
        let check = IdentityCheck {
            difference: lhs.sub(&rhs).unwrap(),
            lhs,
            rhs,
        };
        let report = Report::identity("verify", 2, modes, "theorem", &check);
        assert_eq!(report.outcome, Outcome::Fail);
        let text = report.render(Format::Text);
        assert!(text.contains("theorem identity FAILS"));
        assert!(text.contains("difference: -h(x2*x1) + h(x2)*h(x1)"));
        assert!(text.ends_with("RESULT: FAIL\n"));
    }
}
