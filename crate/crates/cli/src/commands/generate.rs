use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

use rayon::prelude::*;
use skg_core::SkgParams;
use skg_gen::{
    deduplicate, generate, generate_chunk, level_matrices, undirect, ChunkPlan, Edge, EdgeForm, EdgeFormat, EdgeWriter,
    GraphMeta, Sidecar,
};

use super::in_pool;
use crate::args::GenerateArgs;
use crate::error::{CliError, Result};

pub fn run_generate(args: &GenerateArgs) -> Result<()> {
    let (params, chunk_size, form, format) = match &args.from_meta {
        Some(meta) => {
            let s = Sidecar::read(meta)?;
            (s.meta.params, s.meta.chunk_size, s.form, s.format)
        }
        None => {
            let form = if args.simple { EdgeForm::Simple } else { EdgeForm::Multigraph };
            (args.model.resolve()?, args.chunk_size, form, args.format.into())
        }
    };
    if chunk_size == 0 {
        return Err(CliError::Usage("--chunk-size must be positive".into()));
    }
    let plan = ChunkPlan::new(chunk_size);
    let count = in_pool(args.threads, || write_graph(&params, &plan, form, format, &args.out))?;
    let sidecar = Sidecar {
        meta: GraphMeta { params, chunk_size },
        form,
        format,
        edge_count: count,
        tool_version: env!("CARGO_PKG_VERSION").into(),
    };
    sidecar.write(&Sidecar::path_for(&args.out))?;
    Ok(())
}

/// Writes the graph and returns the number of edges written.
fn write_graph(params: &SkgParams, plan: &ChunkPlan, form: EdgeForm, format: EdgeFormat, out: &Path) -> Result<u64> {
    let file = File::create(out).map_err(CliError::io(out))?;
    let mut w = EdgeWriter::new(BufWriter::new(file), format).map_err(CliError::io(out))?;
    let written = match form {
        EdgeForm::Multigraph => stream_multigraph(params, plan, &mut w, out)?,
        EdgeForm::Simple | EdgeForm::Undirected => {
            let g = generate(params, plan)?;
            let g = if form == EdgeForm::Simple { deduplicate(g) } else { undirect(&g) };
            w.write(&g.edges).map_err(CliError::io(out))?;
            g.len() as u64
        }
    };
    w.finish().map_err(CliError::io(out))?;
    Ok(written)
}

/// Generates a few chunks per worker at a time and writes them in order, so
/// memory stays bounded for very large graphs.
fn stream_multigraph<W: std::io::Write>(
    params: &SkgParams,
    plan: &ChunkPlan,
    w: &mut EdgeWriter<W>,
    out: &Path,
) -> Result<u64> {
    let matrices = level_matrices(params)?;
    let m = params.insertions;
    let chunks = plan.chunk_count(m);
    let batch = 4 * rayon::current_num_threads() as u64;
    let mut start = 0;
    while start < chunks {
        let end = (start + batch).min(chunks);
        let bufs: Vec<Vec<Edge>> = (start..end)
            .into_par_iter()
            .map(|c| {
                let r = plan.chunk_range(m, c);
                let mut buf = vec![(0, 0); (r.end - r.start) as usize];
                generate_chunk(params, plan, &matrices, c, &mut buf);
                buf
            })
            .collect();
        for b in &bufs {
            w.write(b).map_err(CliError::io(out))?;
        }
        start = end;
    }
    Ok(m)
}
