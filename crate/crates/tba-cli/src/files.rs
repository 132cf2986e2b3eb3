//! Text file formats for models (`tba v1`) and near-ring presentations
//! (`nr v1`).
//!
//! Both formats are line-oriented UTF-8 with LF line endings; `#` starts a
//! comment and blank lines are ignored. Table entries may appear in any
//! order but each triple (or pair) must appear exactly once. The writers
//! emit entries in lexicographic index order, so save-then-load-then-save
//! is bytewise stable.

use thiserror::Error;

use tba::construct::NearRingPresentation;
use tba::model::PointedTernaryAlgebra;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct FileError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, FileError> {
    Err(FileError {
        line,
        message: message.into(),
    })
}

/// Tokenized non-blank, non-comment lines with their 1-based line numbers.
struct Lines<'a> {
    items: Vec<(usize, Vec<&'a str>)>,
    next: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let mut items = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if !tokens.is_empty() {
                items.push((i + 1, tokens));
            }
        }
        Lines { items, next: 0 }
    }

    fn next_line(&mut self) -> Option<(usize, &[&'a str])> {
        let item = self.items.get(self.next)?;
        self.next += 1;
        Some((item.0, &item.1))
    }

    fn last_line_number(&self) -> usize {
        self.items.last().map_or(0, |(n, _)| *n)
    }

    fn expect_end_of_file(&mut self) -> Result<(), FileError> {
        match self.next_line() {
            None => Ok(()),
            Some((line, tokens)) => {
                let first = tokens[0].to_string();
                err(line, format!("unexpected content after `end`: `{first}`"))
            }
        }
    }

    fn expect_keyword_line(&mut self, keyword: &str) -> Result<(), FileError> {
        match self.next_line() {
            Some((_, tokens)) if tokens == [keyword] => Ok(()),
            Some((line, _)) => err(line, format!("expected `{keyword}`")),
            None => err(self.last_line_number(), format!("expected `{keyword}`")),
        }
    }
}

struct Header {
    names: Vec<String>,
    zero: usize,
    one: usize,
}

/// Parses the shared preamble: magic line, `size`, `elem`, `zero`, `one`.
fn parse_header(lines: &mut Lines, magic: &str) -> Result<Header, FileError> {
    let (line, tokens) = match lines.next_line() {
        Some((l, t)) => (l, t.to_vec()),
        None => return err(1, format!("empty file, expected `{magic} v1`")),
    };
    if tokens != [magic, "v1"] {
        return err(line, format!("expected `{magic} v1`"));
    }

    let (line, tokens) = match lines.next_line() {
        Some((l, t)) => (l, t.to_vec()),
        None => return err(line, "expected `size <n>`"),
    };
    if tokens.len() != 2 || tokens[0] != "size" {
        return err(line, "expected `size <n>`");
    }
    let n: usize = match tokens[1].parse() {
        Ok(v) => v,
        Err(_) => return err(line, format!("invalid size `{}`", tokens[1])),
    };
    if n < 2 {
        return err(line, format!("size must be at least 2, got {n}"));
    }

    let (line, tokens) = match lines.next_line() {
        Some((l, t)) => (l, t.to_vec()),
        None => return err(line, "expected `elem <labels>`"),
    };
    if tokens.first() != Some(&"elem") {
        return err(line, "expected `elem <labels>`");
    }
    if tokens.len() != n + 1 {
        return err(
            line,
            format!("expected {n} element labels, got {}", tokens.len() - 1),
        );
    }
    let names: Vec<String> = tokens[1..].iter().map(|s| s.to_string()).collect();
    for (i, name) in names.iter().enumerate() {
        if names[..i].contains(name) {
            return err(line, format!("duplicate element label `{name}`"));
        }
    }

    let mut constants = [0usize; 2];
    let mut last_line = line;
    for (slot, keyword) in ["zero", "one"].iter().enumerate() {
        let (line, tokens) = match lines.next_line() {
            Some((l, t)) => (l, t.to_vec()),
            None => return err(last_line, format!("expected `{keyword} <label>`")),
        };
        last_line = line;
        if tokens.len() != 2 || tokens[0] != *keyword {
            return err(line, format!("expected `{keyword} <label>`"));
        }
        constants[slot] = match names.iter().position(|s| s == tokens[1]) {
            Some(i) => i,
            None => return err(line, format!("unknown element label `{}`", tokens[1])),
        };
    }
    Ok(Header {
        names,
        zero: constants[0],
        one: constants[1],
    })
}

/// Reads entry lines of `arity + 1` labels each until the terminator
/// keyword, filling a total table keyed by the argument tuple.
fn parse_entries(
    lines: &mut Lines,
    names: &[String],
    what: &str,
    arity: usize,
    terminator: &str,
) -> Result<Vec<usize>, FileError> {
    let n = names.len();
    let lookup = |line: usize, label: &str| -> Result<usize, FileError> {
        names
            .iter()
            .position(|s| s == label)
            .map_or_else(|| err(line, format!("unknown element label `{label}`")), Ok)
    };

    let mut table: Vec<Option<usize>> = vec![None; n.pow(arity as u32)];
    loop {
        let (line, tokens) = match lines.next_line() {
            Some((l, t)) => (l, t.to_vec()),
            None => {
                return err(
                    lines.last_line_number(),
                    format!("expected `{terminator}` after the {what} table"),
                )
            }
        };
        if tokens.len() == 1 && tokens[0] == terminator {
            break;
        }
        if tokens.len() != arity + 1 {
            return err(
                line,
                format!(
                    "expected {what} entry with {} labels, got {} tokens",
                    arity + 1,
                    tokens.len()
                ),
            );
        }
        let mut index = 0usize;
        for t in &tokens[..arity] {
            index = index * n + lookup(line, t)?;
        }
        let value = lookup(line, tokens[arity])?;
        if table[index].is_some() {
            return err(
                line,
                format!("duplicate entry for ({})", tokens[..arity].join(", ")),
            );
        }
        table[index] = Some(value);
    }
    if let Some(missing) = table.iter().position(|v| v.is_none()) {
        let mut args = Vec::with_capacity(arity);
        let mut rest = missing;
        for _ in 0..arity {
            args.push(rest % n);
            rest /= n;
        }
        args.reverse();
        let labels: Vec<&str> = args.iter().map(|&i| names[i].as_str()).collect();
        return err(
            lines.last_line_number(),
            format!(
                "{what} table not total: missing entry for ({})",
                labels.join(", ")
            ),
        );
    }
    Ok(table.into_iter().map(|v| v.unwrap()).collect())
}

pub fn parse_model(text: &str) -> Result<PointedTernaryAlgebra, FileError> {
    let mut lines = Lines::new(text);
    let header = parse_header(&mut lines, "tba")?;
    lines.expect_keyword_line("p")?;
    let table = parse_entries(&mut lines, &header.names, "p", 3, "end")?;
    lines.expect_end_of_file()?;
    PointedTernaryAlgebra::new(header.names, header.zero, header.one, table).map_err(|e| {
        FileError {
            line: 0,
            message: e.to_string(),
        }
    })
}

pub fn parse_near_ring(text: &str) -> Result<NearRingPresentation, FileError> {
    let mut lines = Lines::new(text);
    let header = parse_header(&mut lines, "nr")?;
    lines.expect_keyword_line("add")?;
    // `mul` terminates the add section and opens the mul section
    let add = parse_entries(&mut lines, &header.names, "add", 2, "mul")?;
    let mul = parse_entries(&mut lines, &header.names, "mul", 2, "end")?;
    lines.expect_end_of_file()?;
    NearRingPresentation::new(header.names, header.zero, header.one, add, mul).map_err(|e| {
        FileError {
            line: 0,
            message: e.to_string(),
        }
    })
}

fn check_label(label: &str) -> Result<(), FileError> {
    if label.is_empty() || label.contains(char::is_whitespace) || label.contains('#') {
        return err(0, format!("label `{label}` cannot be written to a file"));
    }
    Ok(())
}

/// Renders the canonical `tba v1` form: header, then the `n³` entries in
/// lexicographic index order.
pub fn render_model(m: &PointedTernaryAlgebra) -> Result<String, FileError> {
    for name in m.names() {
        check_label(name)?;
    }
    let n = m.size();
    let mut out = String::new();
    out.push_str("tba v1\n");
    out.push_str(&format!("size {n}\n"));
    out.push_str(&format!("elem {}\n", m.names().join(" ")));
    out.push_str(&format!("zero {}\n", m.name(m.zero())));
    out.push_str(&format!("one {}\n", m.name(m.one())));
    out.push_str("p\n");
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                out.push_str(&format!(
                    "{} {} {} {}\n",
                    m.name(a),
                    m.name(b),
                    m.name(c),
                    m.name(m.p(a, b, c))
                ));
            }
        }
    }
    out.push_str("end\n");
    Ok(out)
}

/// Renders the canonical `nr v1` form with both tables in lexicographic
/// index order.
pub fn render_near_ring(p: &NearRingPresentation) -> Result<String, FileError> {
    for name in p.names() {
        check_label(name)?;
    }
    let n = p.size();
    let mut out = String::new();
    out.push_str("nr v1\n");
    out.push_str(&format!("size {n}\n"));
    out.push_str(&format!("elem {}\n", p.names().join(" ")));
    out.push_str(&format!("zero {}\n", p.name(p.zero())));
    out.push_str(&format!("one {}\n", p.name(p.one())));
    out.push_str("add\n");
    for a in 0..n {
        for b in 0..n {
            out.push_str(&format!(
                "{} {} {}\n",
                p.name(a),
                p.name(b),
                p.name(p.add(a, b))
            ));
        }
    }
    out.push_str("mul\n");
    for a in 0..n {
        for b in 0..n {
            out.push_str(&format!(
                "{} {} {}\n",
                p.name(a),
                p.name(b),
                p.name(p.mul(a, b))
            ));
        }
    }
    out.push_str("end\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use tba::construct::{catalog_model, catalog_presentation};

    #[test]
    fn model_round_trip_is_bytewise_stable() {
        let m = catalog_model("n4paper").unwrap();
        let text = render_model(&m).unwrap();
        assert!(text.starts_with("tba v1\nsize 4\n"));
        let parsed = parse_model(&text).unwrap();
        assert_eq!(parsed, m);
        assert_eq!(render_model(&parsed).unwrap(), text);
    }

    #[test]
    fn near_ring_round_trip_is_bytewise_stable() {
        let p = catalog_presentation("n4paper").unwrap();
        let text = render_near_ring(&p).unwrap();
        assert!(text.starts_with("nr v1\n"));
        let parsed = parse_near_ring(&text).unwrap();
        assert_eq!(parsed, p);
        assert_eq!(render_near_ring(&parsed).unwrap(), text);
    }

    #[test]
    fn entries_may_come_in_any_order_with_comments() {
        let m = catalog_model("gf2").unwrap();
        let canonical = render_model(&m).unwrap();
        let mut lines: Vec<&str> = canonical.lines().collect();
        // reverse the entry lines and sprinkle comments
        lines[6..14].reverse();
        let mut text = lines.join("\n");
        text.push('\n');
        text.insert_str(0, "# a comment\n\n");
        let parsed = parse_model(&text).unwrap();
        assert_eq!(parsed, m);
    }

    #[test]
    fn missing_entry_reports_table_not_total() {
        let m = catalog_model("gf2").unwrap();
        let canonical = render_model(&m).unwrap();
        let truncated: String = canonical.replace("1 0 0 1\n", "");
        let e = parse_model(&truncated).unwrap_err();
        assert!(e.message.contains("not total"), "{e}");
        assert!(e.message.contains("(1, 0, 0)"), "{e}");
    }

    #[test]
    fn duplicate_entry_is_rejected_with_line_number() {
        let m = catalog_model("gf2").unwrap();
        let canonical = render_model(&m).unwrap();
        let duplicated = canonical.replace("1 0 0 1\n", "1 0 0 1\n0 0 0 0\n");
        let e = parse_model(&duplicated).unwrap_err();
        assert!(e.message.contains("duplicate entry for (0, 0, 0)"), "{e}");
        assert!(e.line > 0);
    }

    #[test]
    fn header_errors_carry_line_numbers() {
        assert!(parse_model("").is_err());
        let e = parse_model("tba v2\n").unwrap_err();
        assert_eq!(e.line, 1);
        let e = parse_model("tba v1\nsize x\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_model("tba v1\nsize 2\nelem 0 1\nzero 0\none 2\n").unwrap_err();
        assert_eq!(e.line, 5);
        assert!(e.message.contains("unknown element label"));
    }

    #[test]
    fn trailing_content_is_rejected() {
        let m = catalog_model("gf2").unwrap();
        let mut text = render_model(&m).unwrap();
        text.push_str("stray\n");
        let e = parse_model(&text).unwrap_err();
        assert!(e.message.contains("after `end`"));
    }

    #[test]
    fn near_ring_missing_pair_is_reported() {
        let p = catalog_presentation("n4paper").unwrap();
        let text = render_near_ring(&p).unwrap();
        let truncated = text.replace("v u u\n", "");
        let e = parse_near_ring(&truncated).unwrap_err();
        assert!(e.message.contains("mul table not total"), "{e}");
        assert!(e.message.contains("(v, u)"), "{e}");
    }
}
