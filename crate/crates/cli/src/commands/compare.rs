use skg_core::{DegreeMethod, DerivedParams};
use skg_gen::ChunkPlan;

use super::{in_pool, isqrt};
use crate::args::CompareArgs;
use crate::error::{CliError, Result};
use crate::experiment::{compare_degrees, summarize, Ensemble};
use crate::fields;
use crate::report::{num, with_suffix, Tsv};

pub fn run_compare(args: &CompareArgs) -> Result<()> {
    if args.instances == 0 {
        return Err(CliError::Usage("--instances must be positive".into()));
    }
    if args.chunk_size == 0 {
        return Err(CliError::Usage("--chunk-size must be positive".into()));
    }
    let p = args.model.resolve()?;
    let dp = DerivedParams::new(p.matrix, p.levels, p.insertions)?;
    dp.require_even()?;
    let methods: Vec<DegreeMethod> = args.methods.iter().map(|&m| m.into()).collect();
    let dmax = args.dmax.unwrap_or_else(|| isqrt(dp.n));
    let ensemble = in_pool(args.threads, || Ensemble::run(&p, args.instances, &ChunkPlan::new(args.chunk_size)))?;
    let pooled = ensemble.pooled(!args.multigraph);
    let rows = compare_degrees(&dp, &pooled, ensemble.len(), &methods, args.dmin.max(1), dmax)?;

    let mut header = vec!["d", "empirical_mean"];
    header.extend(methods.iter().map(DegreeMethod::as_str));
    let mut t = Tsv::create(args.out.as_deref(), &header)?;
    for r in &rows {
        let mut f = fields![r.d, num(r.empirical_mean)];
        f.extend(r.predicted.iter().map(|&x| num(x)));
        t.row(f)?;
    }
    t.finish()?;

    let summary = summarize(&dp, &rows, &methods, args.min_count);
    let path = args.summary.clone().or_else(|| args.out.as_deref().map(|o| with_suffix(o, ".summary")));
    let lines: Vec<Vec<String>> = summary
        .iter()
        .map(|s| {
            fields![
                s.method.as_str(),
                s.points,
                num(s.max_rel_error),
                num(s.mean_rel_error),
                s.worst_degree.map_or("-".to_string(), |d| d.to_string())
            ]
        })
        .collect();
    let header = ["method", "points", "max_rel_error", "mean_rel_error", "worst_degree"];
    match path {
        Some(path) => {
            let mut s = Tsv::create(Some(&path), &header)?;
            for l in &lines {
                s.row(l.clone())?;
            }
            s.finish()
        }
        None => {
            eprintln!("# {}", header.join("\t"));
            for l in &lines {
                eprintln!("# {}", l.join("\t"));
            }
            Ok(())
        }
    }
}
