use skg_analysis::{core_decomposition, degree_histogram, isolated_count, oscillation_score, CoreKind};
use skg_gen::io::read_edge_file;
use skg_gen::{deduplicate, EdgeForm, EdgeList, Sidecar};

use super::in_pool;
use crate::args::{AnalyzeArgs, AnalyzeReport};
use crate::error::{CliError, Result};
use crate::fields;
use crate::report::{num, Tsv};

pub fn run_analyze(args: &AnalyzeArgs) -> Result<()> {
    let side_path = Sidecar::path_for(&args.input);
    let sidecar = if side_path.exists() { Some(Sidecar::read(&side_path)?) } else { None };
    let nodes = args.nodes.or(sidecar.as_ref().map(Sidecar::nodes)).ok_or(CliError::MissingNodes)?;
    let edges = read_edge_file(&args.input)?;
    let list = EdgeList::from_edges(edges, nodes, EdgeForm::Multigraph);
    in_pool(args.threads, || report(args, list, sidecar.as_ref()))
}

fn report(args: &AnalyzeArgs, list: EdgeList, sidecar: Option<&Sidecar>) -> Result<()> {
    let out = args.out.as_deref();
    let n = list.nodes;
    let degree_input = |list: EdgeList| if args.multigraph { list } else { deduplicate(list) };
    match args.report {
        AnalyzeReport::DegreeDist => {
            let g = degree_input(list);
            let h = degree_histogram(&g.edges, n, args.orientation.into())?;
            let mut t = Tsv::create(out, &["degree", "count"])?;
            for (d, c) in &h.counts {
                t.row(fields![d, c])?;
            }
            t.finish()
        }
        AnalyzeReport::Isolated => {
            let iso = isolated_count(&list.edges, n)?;
            let mut t = Tsv::create(out, &["nodes", "isolated", "isolated_fraction"])?;
            t.row(fields![n, iso, num(iso as f64 / n as f64)])?;
            t.finish()
        }
        AnalyzeReport::Kcore => {
            let kind: CoreKind = args.core_kind.into();
            let g = match kind {
                CoreKind::Undirected => args.symmetrize.apply(&list),
                CoreKind::OutCore => deduplicate(list),
            };
            let p = core_decomposition(&g.edges, n, kind)?;
            let mut t = Tsv::create(out, &["k", "size"])?;
            for (k, s) in p.sizes.iter().enumerate() {
                t.row(fields![k, s])?;
            }
            t.row(fields!["max_core", p.max_core])?;
            t.finish()
        }
        AnalyzeReport::Oscillation => {
            let levels = args
                .levels
                .or(sidecar.map(|s| s.meta.params.levels))
                .or(n.is_power_of_two().then(|| n.trailing_zeros()))
                .ok_or_else(|| CliError::Usage("--levels is required when nodes is not a power of two".into()))?;
            let g = degree_input(list);
            let h = degree_histogram(&g.edges, n, args.orientation.into())?;
            let mut t = Tsv::create(out, &["levels", "oscillation_score"])?;
            t.row(fields![levels, oscillation_score(&h, levels)])?;
            t.finish()
        }
    }
}
