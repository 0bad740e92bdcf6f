//! Edge files and their sidecar metadata.
//!
//! TSV: one edge per line, `source<TAB>target\n`, decimal, 0-indexed.
//! Binary: the 4-byte magic `SKG1`, then little-endian `u64` pairs.
//! Sidecar: `<edge file>.meta`, flat `key=value` lines.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use skg_core::{GeneratorMatrix, NoiseMode, NoiseSpec, SkgParams};

use crate::edges::{Edge, EdgeForm, GraphMeta};
use crate::error::{GenError, Result};

pub const BINARY_MAGIC: &[u8; 4] = b"SKG1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeFormat {
    Tsv,
    Binary,
}

impl EdgeFormat {
    pub fn as_str(&self) -> &'static str {
        match self {
            EdgeFormat::Tsv => "tsv",
            EdgeFormat::Binary => "bin",
        }
    }
}

impl std::str::FromStr for EdgeFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "tsv" => Ok(EdgeFormat::Tsv),
            "bin" => Ok(EdgeFormat::Binary),
            other => Err(format!("unknown edge format {other:?}")),
        }
    }
}

/// Streams edges in one format. For binary output the magic is written by
/// [`EdgeWriter::new`].
pub struct EdgeWriter<W: Write> {
    inner: W,
    format: EdgeFormat,
}

impl<W: Write> EdgeWriter<W> {
    pub fn new(mut inner: W, format: EdgeFormat) -> io::Result<Self> {
        if format == EdgeFormat::Binary {
            inner.write_all(BINARY_MAGIC)?;
        }
        Ok(EdgeWriter { inner, format })
    }

    pub fn write(&mut self, edges: &[Edge]) -> io::Result<()> {
        match self.format {
            EdgeFormat::Tsv => {
                for (u, v) in edges {
                    writeln!(self.inner, "{u}\t{v}")?;
                }
            }
            EdgeFormat::Binary => {
                for (u, v) in edges {
                    self.inner.write_all(&u.to_le_bytes())?;
                    self.inner.write_all(&v.to_le_bytes())?;
                }
            }
        }
        Ok(())
    }

    pub fn finish(mut self) -> io::Result<W> {
        self.inner.flush()?;
        Ok(self.inner)
    }
}

pub fn write_edges<W: Write>(out: W, edges: &[Edge], format: EdgeFormat) -> io::Result<()> {
    let mut w = EdgeWriter::new(out, format)?;
    w.write(edges)?;
    w.finish()?;
    Ok(())
}

pub fn encode_edges(edges: &[Edge], format: EdgeFormat) -> Vec<u8> {
    let mut buf = Vec::with_capacity(edges.len() * 16 + 4);
    write_edges(&mut buf, edges, format).expect("writing to a Vec cannot fail");
    buf
}

pub fn write_edge_file(path: &Path, edges: &[Edge], format: EdgeFormat) -> Result<()> {
    let f = File::create(path)?;
    write_edges(BufWriter::new(f), edges, format)?;
    Ok(())
}

/// Reads either format; binary is recognized by its magic. Blank lines and
/// `#` lines are skipped in TSV.
pub fn read_edges<R: Read>(input: R) -> Result<Vec<Edge>> {
    let mut input = BufReader::new(input);
    let head = input.fill_buf()?;
    if head.starts_with(BINARY_MAGIC) {
        let mut bytes = Vec::new();
        input.read_to_end(&mut bytes)?;
        let body = &bytes[BINARY_MAGIC.len()..];
        if body.len() % 16 != 0 {
            return Err(GenError::Malformed {
                line: 0,
                reason: format!("binary body of {} bytes is not a whole number of edges", body.len()),
            });
        }
        return Ok(body
            .chunks_exact(16)
            .map(|c| {
                let u = u64::from_le_bytes(c[..8].try_into().unwrap());
                let v = u64::from_le_bytes(c[8..].try_into().unwrap());
                (u, v)
            })
            .collect());
    }
    if head.len() >= 4 && head[..4] != *BINARY_MAGIC && head.starts_with(b"SKG") {
        return Err(GenError::BadMagic);
    }
    let mut edges = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split('\t');
        let parse = |f: Option<&str>| -> Result<u64> {
            let f = f.ok_or_else(|| GenError::Malformed { line: i + 1, reason: "expected two fields".into() })?;
            f.trim().parse().map_err(|_| GenError::Malformed { line: i + 1, reason: format!("bad vertex id {f:?}") })
        };
        let u = parse(fields.next())?;
        let v = parse(fields.next())?;
        if fields.next().is_some() {
            return Err(GenError::Malformed { line: i + 1, reason: "more than two fields".into() });
        }
        edges.push((u, v));
    }
    Ok(edges)
}

pub fn read_edge_file(path: &Path) -> Result<Vec<Edge>> {
    read_edges(File::open(path)?)
}

/// Contents of a `.meta` sidecar.
#[derive(Debug, Clone, PartialEq)]
pub struct Sidecar {
    pub meta: GraphMeta,
    pub form: EdgeForm,
    pub format: EdgeFormat,
    pub edge_count: u64,
    pub tool_version: String,
}

impl Sidecar {
    pub fn path_for(edge_file: &Path) -> PathBuf {
        let mut s = edge_file.as_os_str().to_owned();
        s.push(".meta");
        PathBuf::from(s)
    }

    pub fn nodes(&self) -> u64 {
        self.meta.params.nodes()
    }

    pub fn render(&self) -> String {
        let p = &self.meta.params;
        let t = p.matrix;
        let mut s = String::new();
        let mut kv = |k: &str, v: String| {
            s.push_str(k);
            s.push('=');
            s.push_str(&v);
            s.push('\n');
        };
        kv("tool", "skg".into());
        kv("tool_version", self.tool_version.clone());
        kv("matrix", format!("{},{},{},{}", t.t1, t.t2, t.t3, t.t4));
        kv("levels", p.levels.to_string());
        kv("nodes", p.nodes().to_string());
        kv("insertions", p.insertions.to_string());
        kv("seed", p.seed.to_string());
        kv("noise_mode", p.noise.mode.as_str().into());
        kv("noise", p.noise.amplitude.to_string());
        kv("chunk_size", self.meta.chunk_size.to_string());
        kv("form", self.form.as_str().into());
        kv("format", self.format.as_str().into());
        kv("edges", self.edge_count.to_string());
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) =
                line.split_once('=').ok_or_else(|| GenError::Metadata(format!("line without '=': {line:?}")))?;
            map.insert(k.trim().to_string(), v.trim().to_string());
        }
        fn get<'a>(map: &'a BTreeMap<String, String>, k: &str) -> Result<&'a str> {
            map.get(k).map(String::as_str).ok_or_else(|| GenError::Metadata(format!("missing key {k}")))
        }
        fn num<T: std::str::FromStr>(map: &BTreeMap<String, String>, k: &str) -> Result<T> {
            let v = get(map, k)?;
            v.parse().map_err(|_| GenError::Metadata(format!("bad value for {k}: {v:?}")))
        }
        let entries: Vec<f64> = get(&map, "matrix")?
            .split(',')
            .map(|x| x.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| GenError::Metadata("bad matrix".into()))?;
        let entries: [f64; 4] =
            entries.try_into().map_err(|_| GenError::Metadata("matrix needs four entries".into()))?;
        let mode: NoiseMode = get(&map, "noise_mode")?.parse().map_err(GenError::Metadata)?;
        let params = SkgParams::with_noise(
            GeneratorMatrix::from_entries(entries)?,
            num(&map, "levels")?,
            num(&map, "insertions")?,
            num(&map, "seed")?,
            NoiseSpec { mode, amplitude: num(&map, "noise")? },
        )?;
        Ok(Sidecar {
            meta: GraphMeta { params, chunk_size: num(&map, "chunk_size")? },
            form: get(&map, "form")?.parse().map_err(GenError::Metadata)?,
            format: get(&map, "format")?.parse().map_err(GenError::Metadata)?,
            edge_count: num(&map, "edges")?,
            tool_version: get(&map, "tool_version")?.to_string(),
        })
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.render())?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }
}
