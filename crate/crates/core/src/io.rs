//! Nearring files.
//!
//! Text format (`.nr`), the hand-writable default:
//!
//! ```text
//! nearring v1 order=3 name=Z3
//!
//! 0 1 2
//! 1 2 0
//! 2 0 1
//!
//! 0 0 0
//! 0 1 2
//! 0 2 1
//! ```
//!
//! A header line, then the addition block and the multiplication block,
//! each preceded by a blank line. Lines starting with `#` are comments.
//! The `name=` field is optional.
//!
//! Canonical format (`.nr.json`): one line of compact JSON with the keys
//! `format_version`, `name` (omitted when absent), `order`, `add`, `mul`.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::{validate_nearring, FiniteNearring};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    /// A shape problem tied to a field rather than a source line.
    #[error("field `{field}`: {message}")]
    Field { field: &'static str, message: String },
    #[error("invalid nearring: {0}")]
    Invalid(#[from] crate::Error),
}

impl LoadError {
    fn field(field: &'static str, message: impl Into<String>) -> Self {
        LoadError::Field {
            field,
            message: message.into(),
        }
    }

    fn parse(line: usize, message: impl Into<String>) -> Self {
        LoadError::Parse {
            line,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl Format {
    /// `.json` selects the canonical format; anything else is text.
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some("json") => Format::Json,
            _ => Format::Text,
        }
    }

    pub fn extension(self) -> &'static str {
        match self {
            Format::Text => "nr",
            Format::Json => "nr.json",
        }
    }
}

/// The on-disk content of a nearring file, before axiom validation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NearringFile {
    pub format_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub order: usize,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
}

/// A validated nearring with its optional file name tag.
#[derive(Debug, Clone)]
pub struct NamedNearring {
    pub name: Option<String>,
    pub nearring: FiniteNearring,
}

impl NearringFile {
    pub fn from_nearring(n: &FiniteNearring, name: Option<&str>) -> Self {
        NearringFile {
            format_version: FORMAT_VERSION,
            name: name.map(str::to_owned),
            order: n.order(),
            add: n.add_table(),
            mul: n.mul_table(),
        }
    }

    pub fn parse(content: &str, format: Format) -> Result<Self, LoadError> {
        let file = match format {
            Format::Text => parse_text(content)?,
            Format::Json => parse_json(content)?,
        };
        file.check_shape()?;
        Ok(file)
    }

    /// Shape checks that are reported as load errors rather than axiom
    /// violations: table sizes, entry ranges and the identity at 0.
    fn check_shape(&self) -> Result<(), LoadError> {
        if self.format_version != FORMAT_VERSION {
            return Err(LoadError::field(
                "format_version",
                format!("unsupported format version {}", self.format_version),
            ));
        }
        if self.order == 0 {
            return Err(LoadError::field("order", "order must be at least 1"));
        }
        for (name, table) in [("add", &self.add), ("mul", &self.mul)] {
            if table.len() != self.order {
                return Err(LoadError::field(
                    name,
                    format!("{name} table has {} rows, expected {}", table.len(), self.order),
                ));
            }
            for (r, row) in table.iter().enumerate() {
                if row.len() != self.order {
                    return Err(LoadError::field(
                        name,
                        format!("{name} row {r} has {} entries, expected {}", row.len(), self.order),
                    ));
                }
                if let Some(v) = row.iter().find(|&&v| v >= self.order) {
                    return Err(LoadError::field(
                        name,
                        format!("{name} row {r} has entry {v} outside 0..{}", self.order),
                    ));
                }
            }
        }
        if (0..self.order).any(|a| self.add[0][a] != a || self.add[a][0] != a) {
            return Err(LoadError::field("add", "element 0 is not additive identity"));
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<NamedNearring, LoadError> {
        let nearring = validate_nearring(&self.add, &self.mul)?;
        Ok(NamedNearring {
            name: self.name.clone(),
            nearring,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("nearring v{} order={}", self.format_version, self.order);
        if let Some(name) = &self.name {
            let _ = write!(out, " name={name}");
        }
        out.push('\n');
        for table in [&self.add, &self.mul] {
            out.push('\n');
            for row in table {
                let cells: Vec<String> = row.iter().map(usize::to_string).collect();
                out.push_str(&cells.join(" "));
                out.push('\n');
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Json => self.to_json(),
        }
    }
}

fn parse_json(content: &str) -> Result<NearringFile, LoadError> {
    serde_json::from_str(content).map_err(|e| LoadError::parse(e.line(), e.to_string()))
}

fn parse_text(content: &str) -> Result<NearringFile, LoadError> {
    let mut lines = content
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.starts_with('#'));

    let (hline, header) = lines
        .by_ref()
        .find(|(_, l)| !l.is_empty())
        .ok_or_else(|| LoadError::parse(1, "empty file"))?;
    let mut fields = header.split_whitespace();
    if fields.next() != Some("nearring") {
        return Err(LoadError::parse(hline, "header must start with `nearring`"));
    }
    let version = match fields.next() {
        Some(v) if v.starts_with('v') => v[1..]
            .parse::<u32>()
            .map_err(|_| LoadError::parse(hline, format!("bad version `{v}`")))?,
        _ => return Err(LoadError::parse(hline, "missing version (e.g. `v1`)")),
    };
    let mut order = None;
    let mut name = None;
    for field in fields {
        match field.split_once('=') {
            Some(("order", v)) => {
                order = Some(
                    v.parse::<usize>()
                        .map_err(|_| LoadError::parse(hline, format!("bad order `{v}`")))?,
                )
            }
            Some(("name", v)) if !v.is_empty() => name = Some(v.to_string()),
            _ => return Err(LoadError::parse(hline, format!("unexpected header field `{field}`"))),
        }
    }
    let order = order.ok_or_else(|| LoadError::parse(hline, "header is missing `order=`"))?;

    let mut blocks: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut current: Option<Vec<Vec<usize>>> = None;
    let mut last_line = hline;
    for (ln, line) in lines {
        last_line = ln;
        if line.is_empty() {
            if let Some(b) = current.take() {
                blocks.push(b);
            }
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| LoadError::parse(ln, format!("`{t}` is not an element index")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if row.len() != order {
            return Err(LoadError::parse(
                ln,
                format!("row has {} entries, expected {order}", row.len()),
            ));
        }
        if let Some(v) = row.iter().find(|&&v| v >= order) {
            return Err(LoadError::parse(ln, format!("entry {v} outside 0..{order}")));
        }
        let block = current.get_or_insert_with(Vec::new);
        block.push(row);
        if block.len() > order {
            return Err(LoadError::parse(ln, format!("table block has more than {order} rows")));
        }
    }
    if let Some(b) = current.take() {
        blocks.push(b);
    }
    if blocks.len() != 2 {
        return Err(LoadError::parse(
            last_line,
            format!("expected 2 table blocks (add, mul), found {}", blocks.len()),
        ));
    }
    for (name, block) in ["add", "mul"].iter().zip(&blocks) {
        if block.len() != order {
            return Err(LoadError::parse(
                last_line,
                format!("{name} table has {} rows, expected {order}", block.len()),
            ));
        }
    }
    let mul = blocks.pop().unwrap();
    let add = blocks.pop().unwrap();
    Ok(NearringFile {
        format_version: version,
        name,
        order,
        add,
        mul,
    })
}

pub fn read_file(path: &Path) -> Result<NearringFile, LoadError> {
    let content = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.display().to_string(),
        source,
    })?;
    NearringFile::parse(&content, Format::from_path(path))
}

/// Reads and validates a nearring file; the format follows the extension.
pub fn load(path: &Path) -> Result<NamedNearring, LoadError> {
    read_file(path)?.validate()
}

pub fn save(path: &Path, n: &FiniteNearring, name: Option<&str>) -> std::io::Result<()> {
    let file = NearringFile::from_nearring(n, name);
    std::fs::write(path, file.render(Format::from_path(path)))
}
