//! Deterministic text output: 17 significant digits, '.' decimal, ',' separator,
//! Unix newlines, a `# ` config echo before the header row.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

/// A float at 17 significant digits in scientific notation.
pub fn num(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{x:.16e}")
    }
}

pub struct Table {
    comments: Vec<String>,
    columns: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self { comments: Vec::new(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn comments<I: IntoIterator<Item = String>>(&mut self, lines: I) {
        self.comments.extend(lines);
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn write_to<W: Write>(&self, w: &mut W) -> io::Result<()> {
        for c in &self.comments {
            writeln!(w, "# {c}")?;
        }
        writeln!(w, "{}", self.columns.join(","))?;
        for r in &self.rows {
            writeln!(w, "{}", r.join(","))?;
        }
        Ok(())
    }

    /// Writes to `path`, or to stdout when `path` is None.
    pub fn emit(&self, path: Option<&Path>) -> anyhow::Result<()> {
        match path {
            Some(p) => {
                let mut w = BufWriter::new(File::create(p)?);
                self.write_to(&mut w)?;
                w.flush()?;
            }
            None => {
                let out = io::stdout();
                let mut w = out.lock();
                self.write_to(&mut w)?;
            }
        }
        Ok(())
    }
}

/// `fields.csv` -> `fields.json`.
pub fn sidecar_path(csv: &Path) -> PathBuf {
    csv.with_extension("json")
}

pub fn write_json<T: serde::Serialize>(path: Option<&Path>, value: &T) -> anyhow::Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(num(0.1), "1.0000000000000001e-1");
        assert_eq!(num(-2.0), "-2.0000000000000000e0");
        assert_eq!(num(f64::NAN), "nan");
        let x = 1.0f64 / 3.0;
        assert_eq!(num(x).parse::<f64>().unwrap(), x);
    }

    #[test]
    fn table_layout() {
        let mut t = Table::new(&["a", "b"]);
        t.comments(["n = 2".to_string()]);
        t.row(vec!["1".into(), "2".into()]);
        let mut buf = Vec::new();
        t.write_to(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "# n = 2\na,b\n1,2\n");
    }
}
