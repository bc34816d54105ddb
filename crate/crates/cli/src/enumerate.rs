use ellis_core::partial::{enumerate_monoid, Mode};
use serde_json::json;

use crate::{json, Caps, Failure, Format, Report};

pub fn run(n: usize, mode: Mode, format: Format, caps: &Caps) -> Result<Report, Failure> {
    if n == 0 {
        return Err(Failure::Input("--n must be at least 1".into()));
    }
    let elements = enumerate_monoid(n, mode, caps.n)?;
    let order = elements.len();
    // rank ideals are nested: I^k holds the elements of rank <= k
    let rank_ideal_sizes: Vec<usize> = (0..=n)
        .map(|k| elements.iter().filter(|f| f.rank() <= k).count())
        .collect();
    let quotient_orders: Vec<usize> = rank_ideal_sizes.iter().map(|i| order - i + 1).collect();
    let text = match format {
        Format::Json => json(&json!({
            "n": n,
            "mode": mode.to_string(),
            "order": order,
            "rank_ideal_sizes": rank_ideal_sizes,
            "quotient_orders": quotient_orders,
            "elements": elements.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let join = |v: &[usize]| {
                v.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(";")
            };
            let mut w = csv::Writer::from_writer(Vec::new());
            let row = [
                n.to_string(),
                mode.to_string(),
                order.to_string(),
                join(&rank_ideal_sizes),
                join(&quotient_orders),
            ];
            w.write_record(["n", "mode", "order", "rank_ideal_sizes", "quotient_orders"])
                .and_then(|_| w.write_record(&row))
                .map_err(|e| Failure::Input(e.to_string()))?;
            let bytes = w.into_inner().map_err(|e| Failure::Input(e.to_string()))?;
            String::from_utf8(bytes).expect("ascii")
        }
    };
    Ok(Report { text, ok: true })
}
