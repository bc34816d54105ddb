use ellis_core::approx::{ellis_witness, permutation_witness};
use ellis_core::chain::Space;
use ellis_core::ellis::{check_membership, GroupKind, Verdict};
use ellis_core::{Error, QObservation, QPoint};
use serde_json::json;

use crate::{json, Failure, Report};

type Extension = Box<dyn Fn(&QPoint) -> Result<QPoint, Error>>;

pub fn run(text: &str) -> Result<Report, Failure> {
    let obs: QObservation =
        serde_json::from_str(text).map_err(|e| Failure::Input(format!("bad observation: {e}")))?;
    obs.validate()?;
    let verdict = check_membership(&obs)?;
    if verdict != Verdict::Consistent {
        return Ok(Report {
            text: json(&verdict.to_json()),
            ok: true,
        });
    }
    let (witness, image): (serde_json::Value, Extension) =
        if obs.space == Space::AlphaX && obs.group == Some(GroupKind::Sym) {
            let w = permutation_witness(&obs)?;
            (
                json!({"kind": "permutation", "pairs": &w}),
                Box::new(move |p| w.extend(p)),
            )
        } else {
            let g = ellis_witness(&obs)?;
            let space = obs.space;
            (
                json!({"kind": "pl", "breakpoints": &g}),
                Box::new(move |p| g.extend(space, p)),
            )
        };
    let mut misses = Vec::new();
    for e in &obs.entries {
        let v = image(&e.point)?;
        if !e.target.contains(obs.space, &v) {
            misses.push(format!("{} -> {v} misses {}", e.point, e.target));
        }
    }
    if !misses.is_empty() {
        return Err(Failure::Check(format!(
            "witness recheck failed: {}",
            misses.join("; ")
        )));
    }
    Ok(Report {
        text: json(&json!({
            "verdict": "consistent",
            "witness": witness,
            "recheck": "pass",
        })),
        ok: true,
    })
}
