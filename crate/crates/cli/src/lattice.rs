use ellis_core::chain::{lattice_arrows, quotient_point, Space};
use ellis_core::sample::Sampler;
use ellis_core::Rational;
use serde::Serialize;
use serde_json::json;

use crate::{json, Failure, Format, Report};

#[derive(Serialize)]
struct Row {
    from: String,
    to: String,
    elementary: bool,
    /// How many of the sampled points of `from` land in a fiber with more
    /// than one sampled point.
    identified: usize,
    sampled: usize,
}

pub fn run(seed: u64, format: Format) -> Result<Report, Failure> {
    let mut s = Sampler::new(seed);
    let mut rows = Vec::new();
    for a in lattice_arrows() {
        let mut pts = Vec::new();
        while pts.len() < 200 {
            pts.extend(s.points::<Rational>(a.from));
        }
        pts.sort();
        pts.dedup();
        let images = pts
            .iter()
            .map(|p| quotient_point(a.from, a.to, p))
            .collect::<Result<Vec<_>, _>>()?;
        let identified = images
            .iter()
            .filter(|v| images.iter().filter(|w| w == v).count() > 1)
            .count();
        rows.push(Row {
            from: a.from.to_string(),
            to: a.to.to_string(),
            elementary: a.elementary,
            identified,
            sampled: pts.len(),
        });
    }
    let text = match format {
        Format::Json => json(&json!({
            "spaces": Space::ALL.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            "arrows": rows,
        })),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in &rows {
                w.serialize(r).map_err(|e| Failure::Input(e.to_string()))?;
            }
            let bytes = w.into_inner().map_err(|e| Failure::Input(e.to_string()))?;
            String::from_utf8(bytes).expect("utf-8")
        }
    };
    Ok(Report { text, ok: true })
}
