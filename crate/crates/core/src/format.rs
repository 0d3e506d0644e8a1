//! The `.skl` text format.
//!
//! ```text
//! skewlat v1
//! elements 2 top bot
//! meet
//! top bot
//! bot bot
//! join
//! top top
//! top bot
//! ```
//!
//! `#` starts a comment running to the end of the line and blank lines are
//! ignored. Row `i`, column `j` of the `meet` block holds the label of
//! `e_i ∧ e_j`; the `join` block has the same shape for `∨`.

use std::collections::HashMap;

use crate::algebra::FiniteSkewLattice;
use crate::error::{Result, SklError};

const HEADER: &str = "skewlat v1";

fn err(line: usize, message: impl Into<String>) -> SklError {
    SklError::Parse { line, message: message.into() }
}

/// Parses `.skl` text. Tables are taken as written; no laws are checked.
pub fn parse_algebra(text: &str) -> Result<FiniteSkewLattice> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let last_line = text.lines().count().max(1);

    let (ln, header) = lines.next().ok_or_else(|| err(last_line, "empty input"))?;
    if header.split_whitespace().collect::<Vec<_>>() != ["skewlat", "v1"] {
        return Err(err(ln, format!("expected `{HEADER}`, found `{header}`")));
    }

    let (ln, decl) = lines.next().ok_or_else(|| err(last_line, "missing `elements` line"))?;
    let mut words = decl.split_whitespace();
    if words.next() != Some("elements") {
        return Err(err(ln, "expected `elements <n> <names...>`"));
    }
    let n: usize = words
        .next()
        .and_then(|w| w.parse().ok())
        .ok_or_else(|| err(ln, "element count is not a number"))?;
    if n == 0 {
        return Err(err(ln, "carrier must be nonempty"));
    }
    let names: Vec<String> = words.map(str::to_string).collect();
    if names.len() != n {
        return Err(err(ln, format!("declared {n} elements but listed {}", names.len())));
    }
    let mut index = HashMap::with_capacity(n);
    for (i, name) in names.iter().enumerate() {
        if index.insert(name.as_str(), i).is_some() {
            return Err(err(ln, format!("duplicate element name `{name}`")));
        }
    }

    let mut read_table = |keyword: &str| -> Result<Vec<Vec<usize>>> {
        let (ln, kw) = lines
            .next()
            .ok_or_else(|| err(last_line, format!("missing `{keyword}` section")))?;
        if kw != keyword {
            return Err(err(ln, format!("expected `{keyword}`, found `{kw}`")));
        }
        let mut rows = Vec::with_capacity(n);
        for r in 0..n {
            let (ln, row) = lines.next().ok_or_else(|| {
                err(last_line, format!("`{keyword}` table has {r} rows, expected {n}"))
            })?;
            let entries: Vec<&str> = row.split_whitespace().collect();
            if entries.len() != n {
                return Err(err(
                    ln,
                    format!("`{keyword}` row has {} entries, expected {n}", entries.len()),
                ));
            }
            let row = entries
                .iter()
                .map(|e| {
                    index
                        .get(e)
                        .copied()
                        .ok_or_else(|| err(ln, format!("`{e}` is not a declared element")))
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        Ok(rows)
    };
    let meet = read_table("meet")?;
    let join = read_table("join")?;
    if let Some((ln, extra)) = lines.next() {
        return Err(err(ln, format!("unexpected trailing content `{extra}`")));
    }
    FiniteSkewLattice::from_tables(names, meet, join).map_err(|e| err(1, e.to_string()))
}

/// Canonical `.skl` text: single spaces, no comments, trailing newline.
pub fn serialize_algebra(alg: &FiniteSkewLattice) -> String {
    let mut out = String::new();
    out.push_str(HEADER);
    out.push('\n');
    out.push_str(&format!("elements {} {}\n", alg.len(), alg.names().join(" ")));
    for (keyword, table) in [("meet", alg.meet_rows()), ("join", alg.join_rows())] {
        out.push_str(keyword);
        out.push('\n');
        for row in table {
            let labels: Vec<&str> = row.iter().map(|&x| alg.name(x)).collect();
            out.push_str(&labels.join(" "));
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singleton_roundtrip() {
        let text = "skewlat v1\nelements 1 e\nmeet\ne\njoin\ne\n";
        let alg = parse_algebra(text).unwrap();
        assert_eq!(alg.len(), 1);
        assert_eq!(serialize_algebra(&alg), text);
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# a two-chain\nskewlat v1\n\nelements 2 t b  # labels\nmeet\nt b\nb b\n\njoin\nt t\nt b\n";
        let alg = parse_algebra(text).unwrap();
        assert_eq!(alg.meet(alg.el("t"), alg.el("b")), alg.el("b"));
        assert_eq!(alg.join(alg.el("b"), alg.el("t")), alg.el("t"));
    }

    #[test]
    fn undeclared_name_reports_line() {
        let text = "skewlat v1\nelements 2 t b\nmeet\nt b\nb q\njoin\nt t\nt b\n";
        match parse_algebra(text) {
            Err(SklError::Parse { line, message }) => {
                assert_eq!(line, 5);
                assert!(message.contains("`q`"));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn structural_errors() {
        let dup = "skewlat v1\nelements 2 a a\nmeet\na a\na a\njoin\na a\na a\n";
        assert!(matches!(parse_algebra(dup), Err(SklError::Parse { line: 2, .. })));
        let short_row = "skewlat v1\nelements 2 a b\nmeet\na\nb b\njoin\na a\na b\n";
        assert!(matches!(parse_algebra(short_row), Err(SklError::Parse { line: 4, .. })));
        let missing_rows = "skewlat v1\nelements 2 a b\nmeet\na b\n";
        assert!(parse_algebra(missing_rows).is_err());
        let bad_header = "skewlattice\nelements 1 e\nmeet\ne\njoin\ne\n";
        assert!(matches!(parse_algebra(bad_header), Err(SklError::Parse { line: 1, .. })));
        let bad_count = "skewlat v1\nelements 3 a b\n";
        assert!(matches!(parse_algebra(bad_count), Err(SklError::Parse { line: 2, .. })));
    }
}
