use skg_core::{degree_regime, expected_distinct_edges, DegreeMethod, DerivedParams, PredictionReport};

use super::isqrt;
use crate::args::{PredictArgs, PredictReport};
use crate::error::Result;
use crate::fields;
use crate::report::{num, Tsv};

pub fn run_predict(args: &PredictArgs) -> Result<()> {
    let p = args.model.resolve()?;
    let dp = DerivedParams::new(p.matrix, p.levels, p.insertions)?;
    let out = args.out.as_deref();
    match args.report {
        PredictReport::DegreeDist => {
            let method: DegreeMethod = args.method.into();
            dp.require_even()?;
            let dmax = args.dmax.unwrap_or_else(|| isqrt(dp.n));
            let mut t = Tsv::create(out, &["degree", "expected_count", "in_regime"])?;
            for d in args.dmin.max(1)..=dmax {
                let f = method.evaluate(&dp, d)?;
                t.row(fields![d, num(f.value), u8::from(f.in_regime)])?;
            }
            t.finish()
        }
        PredictReport::Isolated => {
            let r = PredictionReport::isolated(&dp)?;
            let mut t = Tsv::create(
                out,
                &["levels", "nodes", "insertions", "isolated", "isolated_fraction", "nonisolated_avg_degree"],
            )?;
            t.row(fields![
                dp.levels,
                dp.n,
                dp.insertions,
                num(r.isolated_expectation),
                num(r.isolated_fraction),
                num(r.nonisolated_avg_degree)
            ])?;
            t.finish()
        }
        PredictReport::Repeats => {
            let distinct = expected_distinct_edges(&dp.matrix, dp.levels, dp.insertions);
            let mut t = Tsv::create(out, &["levels", "insertions", "distinct_edges", "repeat_fraction"])?;
            t.row(fields![dp.levels, dp.insertions, num(distinct), num(1.0 - distinct / dp.insertions as f64)])?;
            t.finish()
        }
        PredictReport::Summary => {
            let mut t = Tsv::create(out, &["key", "value"])?;
            let (lo, hi) = degree_regime(&dp);
            let distinct = expected_distinct_edges(&dp.matrix, dp.levels, dp.insertions);
            let m = dp.matrix;
            let mut rows: Vec<(&str, String)> = vec![
                ("matrix", format!("{},{},{},{}", m.t1, m.t2, m.t3, m.t4)),
                ("levels", dp.levels.to_string()),
                ("nodes", dp.n.to_string()),
                ("insertions", dp.insertions.to_string()),
                ("delta", num(dp.delta)),
                ("sigma", num(dp.sigma)),
                ("tau", num(dp.tau)),
                ("lambda", num(dp.lambda)),
                ("regime_min_degree", num(lo)),
                ("regime_max_degree", num(hi)),
                ("distinct_edges", num(distinct)),
                ("repeat_fraction", num(1.0 - distinct / dp.insertions as f64)),
            ];
            if m.is_symmetric() {
                let r = PredictionReport::isolated(&dp)?;
                rows.push(("isolated", num(r.isolated_expectation)));
                rows.push(("isolated_fraction", num(r.isolated_fraction)));
                rows.push(("nonisolated_avg_degree", num(r.nonisolated_avg_degree)));
            }
            for (k, v) in rows {
                t.row(fields![k, v])?;
            }
            t.finish()
        }
    }
}
