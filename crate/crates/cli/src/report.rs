//! JSON form of verification reports. Every rational is a `"p/q"` string;
//! maps are ordered so output is byte-stable apart from `timing_ms`.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;
use telesum::catalog::{Outcome, VerificationReport};
use telesum::exact::fmt_rational;

#[derive(Debug, Serialize)]
pub struct JsonReport {
    pub identities: Vec<JsonIdentity>,
    pub summary: JsonSummary,
    pub timing_ms: u128,
}

#[derive(Debug, Serialize)]
pub struct JsonIdentity {
    pub id: u8,
    pub n_max: i64,
    pub levels: BTreeMap<String, Vec<JsonOutcome>>,
    pub findings: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct JsonOutcome {
    pub params: BTreeMap<String, Value>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<JsonWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct JsonWitness {
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Serialize)]
pub struct JsonSummary {
    pub pass: bool,
    pub failures: usize,
}

fn outcome(o: &Outcome) -> JsonOutcome {
    let mut params: BTreeMap<String, Value> = o.params.iter().map(|(k, v)| (k.to_string(), Value::from(*v))).collect();
    params.insert("check".into(), Value::from(o.check));
    JsonOutcome {
        params,
        pass: o.pass,
        witness: o.witness.as_ref().map(|w| JsonWitness {
            lhs: fmt_rational(&w.lhs),
            rhs: fmt_rational(&w.rhs),
        }),
        note: o.note.clone(),
    }
}

pub fn build(reports: &[VerificationReport], timing_ms: u128) -> JsonReport {
    let identities = reports
        .iter()
        .map(|r| JsonIdentity {
            id: r.id,
            n_max: r.n_max,
            levels: r
                .levels
                .iter()
                .map(|(l, os)| (l.as_str().to_string(), os.iter().map(outcome).collect()))
                .collect(),
            findings: r.findings.clone(),
        })
        .collect();
    let failures = reports.iter().map(VerificationReport::failures).sum();
    JsonReport {
        identities,
        summary: JsonSummary {
            pass: failures == 0,
            failures,
        },
        timing_ms,
    }
}
