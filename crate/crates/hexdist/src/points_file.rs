//! Plain-text point lists: one `a b` pair per line, `#` starts a comment.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use hexdist_core::lattice::{LatticePoint, PointConfig};

use crate::error::{Error, Result};

pub fn parse_points(text: &str, origin: &Path) -> Result<PointConfig> {
    let mut points = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |message: String| Error::PointFile {
            path: origin.to_path_buf(),
            line: idx + 1,
            message,
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(bad(format!(
                "expected two integers, found {}",
                fields.len()
            )));
        }
        let a = fields[0]
            .parse::<i64>()
            .map_err(|e| bad(format!("{:?}: {e}", fields[0])))?;
        let b = fields[1]
            .parse::<i64>()
            .map_err(|e| bad(format!("{:?}: {e}", fields[1])))?;
        points.push(LatticePoint::new(a, b));
    }
    Ok(PointConfig::new(points))
}

pub fn read_points(path: &Path) -> Result<PointConfig> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_points(&text, path)
}

pub fn format_points(c: &PointConfig, header: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(header) = header {
        for line in header.lines() {
            let _ = writeln!(out, "# {line}");
        }
    }
    for p in c.points() {
        let _ = writeln!(out, "{} {}", p.a, p.b);
    }
    out
}

pub fn write_points(path: &Path, c: &PointConfig, header: Option<&str>) -> Result<()> {
    fs::write(path, format_points(c, header)).map_err(|e| Error::io(path, e))
}
