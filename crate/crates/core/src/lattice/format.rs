use std::fmt::Write as _;

use super::{Lattice, LatticeError};

fn parse_err(line: usize, msg: impl Into<String>) -> LatticeError {
    LatticeError::Parse { line, msg: msg.into() }
}

/// Strips a trailing `#` comment and surrounding whitespace.
pub(crate) fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

impl Lattice {
    /// Parses the line-oriented lattice format:
    ///
    /// ```text
    /// lattice <name>
    /// elements <id> <id> ...
    /// bottom <id>
    /// top <id>
    /// cover <id> <id>        # first is covered by second
    /// ```
    pub fn parse_file(text: &str) -> Result<Self, LatticeError> {
        let mut name = None;
        let mut elements: Option<Vec<String>> = None;
        let mut bottom = None;
        let mut top = None;
        let mut covers: Vec<(String, String, usize)> = Vec::new();

        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            let mut words = line.split_whitespace();
            let keyword = words.next().unwrap_or_default();
            let args: Vec<&str> = words.collect();
            match (keyword, args.as_slice()) {
                ("lattice", [n]) => name = Some(n.to_string()),
                ("elements", ids) if !ids.is_empty() => elements = Some(ids.iter().map(|s| s.to_string()).collect()),
                ("bottom", [b]) => bottom = Some((b.to_string(), line_no)),
                ("top", [t]) => top = Some((t.to_string(), line_no)),
                ("cover", [a, b]) => covers.push((a.to_string(), b.to_string(), line_no)),
                ("lattice" | "elements" | "bottom" | "top" | "cover", _) => {
                    return Err(parse_err(line_no, format!("wrong number of arguments for `{keyword}`")))
                }
                _ => return Err(parse_err(line_no, format!("unexpected token `{keyword}`"))),
            }
        }

        let name = name.ok_or_else(|| parse_err(1, "missing `lattice <name>` line"))?;
        let elements = elements.ok_or_else(|| parse_err(1, "missing `elements` line"))?;
        let (bottom, _) = bottom.ok_or_else(|| parse_err(1, "missing `bottom` line"))?;
        let (top, _) = top.ok_or_else(|| parse_err(1, "missing `top` line"))?;
        for (a, b, line_no) in &covers {
            for id in [a, b] {
                if !elements.contains(id) {
                    return Err(parse_err(*line_no, format!("unknown element `{id}`")));
                }
            }
        }
        let ids: Vec<&str> = elements.iter().map(String::as_str).collect();
        let pairs: Vec<(&str, &str)> = covers.iter().map(|(a, b, _)| (a.as_str(), b.as_str())).collect();
        Lattice::from_covers(name, &ids, &bottom, &top, &pairs)
    }

    /// Emits the lattice in the format read by [`Lattice::parse_file`],
    /// one `cover` line per edge of the Hasse diagram.
    pub fn to_file_string(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "lattice {}", self.name());
        let _ = writeln!(out, "elements {}", self.element_names().join(" "));
        let _ = writeln!(out, "bottom {}", self.element_name(self.bottom()));
        let _ = writeln!(out, "top {}", self.element_name(self.top()));
        for (a, b) in self.cover_pairs() {
            let _ = writeln!(out, "cover {} {}", self.element_name(a), self.element_name(b));
        }
        out
    }
}
