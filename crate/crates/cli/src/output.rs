//! Output sinks and formats. Data goes to stdout or `--out`; diagnostics
//! never do.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

pub struct Output {
    pub format: Format,
    sink: Box<dyn Write>,
}

impl Output {
    pub fn new(format: Format, path: Option<&Path>) -> Result<Self> {
        let sink: Box<dyn Write> = match path {
            Some(p) => Box::new(BufWriter::new(File::create(p)?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        };
        Ok(Self { format, sink })
    }

    /// An in-memory sink, for tests.
    pub fn to_writer(format: Format, w: impl Write + 'static) -> Self {
        Self {
            format,
            sink: Box::new(w),
        }
    }

    pub fn writer(&mut self) -> &mut dyn Write {
        &mut *self.sink
    }

    /// Pretty JSON followed by a newline.
    pub fn json<T: Serialize + ?Sized>(&mut self, value: &T) -> Result<()> {
        serde_json::to_writer_pretty(&mut self.sink, value)?;
        writeln!(self.sink)?;
        Ok(())
    }

    /// CSV with a header row; each row must have as many cells as `header`.
    pub fn csv<S: AsRef<str>>(&mut self, header: &[S], rows: &[Vec<String>]) -> Result<()> {
        let mut w = csv::Writer::from_writer(&mut self.sink);
        w.write_record(header.iter().map(|h| h.as_ref()))?;
        for r in rows {
            w.write_record(r)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn finish(mut self) -> Result<()> {
        self.sink.flush()?;
        Ok(())
    }
}

/// 17 significant digits, round-trip exact.
pub fn real(x: f64) -> String {
    format!("{x:.16e}")
}

/// [`real`] or the empty string.
pub fn opt_real(x: Option<f64>) -> String {
    x.map(real).unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reals_roundtrip() {
        for x in [0.1, 1.0 / 3.0, std::f64::consts::PI, -2.5e-300, 0.0] {
            assert_eq!(real(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(opt_real(None), "");
    }
}
