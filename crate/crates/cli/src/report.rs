//! TSV report output: one `#` header line, then tab-separated rows.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::error::{CliError, Result};

pub struct Tsv {
    out: Box<dyn Write>,
    target: String,
}

impl Tsv {
    /// Writes to `path`, or stdout when `None`.
    pub fn create(path: Option<&Path>, header: &[&str]) -> Result<Self> {
        let (out, target): (Box<dyn Write>, String) = match path {
            Some(p) => (Box::new(BufWriter::new(File::create(p).map_err(CliError::io(p))?)), p.display().to_string()),
            None => (Box::new(BufWriter::new(io::stdout().lock())), "stdout".into()),
        };
        let mut t = Tsv { out, target };
        let line = format!("# {}\n", header.join("\t"));
        t.raw(&line)?;
        Ok(t)
    }

    pub fn row(&mut self, fields: Vec<String>) -> Result<()> {
        let line = format!("{}\n", fields.join("\t"));
        self.raw(&line)
    }

    fn raw(&mut self, s: &str) -> Result<()> {
        self.out.write_all(s.as_bytes()).map_err(CliError::io(&self.target))
    }

    pub fn finish(mut self) -> Result<()> {
        self.out.flush().map_err(CliError::io(&self.target))
    }
}

/// `path` with `suffix` appended to the file name.
pub fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

/// Shortest representation that parses back to the same value.
pub fn num(x: f64) -> String {
    format!("{x}")
}

#[macro_export]
macro_rules! fields {
    ($($x:expr),* $(,)?) => { vec![$($x.to_string()),*] };
}
