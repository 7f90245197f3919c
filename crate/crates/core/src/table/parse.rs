//! Reader for the line-oriented `.itab` format.
//!
//! ```text
//! # comment
//! @attributes a1 a2 a3
//! @domain a1 0 1
//! @objects
//! x1 1 {1|2} *
//! x2 NA ^(a1) 3
//! ```

use std::collections::{BTreeSet, HashSet};

use super::{AttrId, AttributeSchema, Cell, IncompleteTable, Schema, Universe, ValueId, NA};
use crate::error::{ParseError, ParseErrorKind, Result};

#[derive(Debug)]
struct Located<'a> {
    col: usize,
    text: &'a str,
}

#[derive(Debug)]
enum RawCell<'a> {
    Known(&'a str),
    Star,
    Partial(Vec<&'a str>),
    Class(AttrId),
    Na,
}

#[derive(Debug)]
struct RawRow<'a> {
    line: usize,
    cells: Vec<(usize, RawCell<'a>)>,
}

fn err(line: usize, column: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, column, kind }
}

fn syntax(line: usize, column: usize, msg: impl Into<String>) -> ParseError {
    err(line, column, ParseErrorKind::Syntax(msg.into()))
}

/// Splits on whitespace, keeping `{...}` and `(...)` groups intact.
fn tokenize(line_no: usize, line: &str) -> Result<Vec<Located<'_>>, ParseError> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start: Option<(usize, usize)> = None; // (byte offset, column)
    for (col0, (byte, c)) in line.char_indices().enumerate() {
        let col = col0 + 1;
        match c {
            '{' | '(' => depth += 1,
            '}' | ')' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| syntax(line_no, col, format!("unbalanced `{c}`")))?
            }
            _ => {}
        }
        if c.is_whitespace() && depth == 0 {
            if let Some((b, sc)) = start.take() {
                out.push(Located {
                    col: sc,
                    text: &line[b..byte],
                });
            }
        } else if start.is_none() {
            start = Some((byte, col));
        }
    }
    if depth != 0 {
        let col = start.map_or(1, |(_, c)| c);
        return Err(syntax(line_no, col, "unterminated group"));
    }
    if let Some((b, sc)) = start {
        out.push(Located {
            col: sc,
            text: &line[b..],
        });
    }
    Ok(out)
}

fn is_plain(s: &str) -> bool {
    super::is_plain_token(s)
}

fn plain_value(line: usize, col: usize, s: &str) -> Result<&str, ParseError> {
    if is_plain(s) && s != NA {
        Ok(s)
    } else {
        Err(syntax(line, col, format!("`{s}` is not a valid value token")))
    }
}

struct Header<'a> {
    attrs: Vec<&'a str>,
    domains: Vec<Option<Vec<&'a str>>>,
    line: usize,
}

impl<'a> Header<'a> {
    fn attr(&self, name: &str) -> Option<AttrId> {
        self.attrs.iter().position(|a| *a == name).map(AttrId)
    }
}

/// Parses an `.itab` document into an incomplete table.
pub fn parse_table(text: &str) -> Result<IncompleteTable> {
    Ok(parse_inner(text)?)
}

fn parse_inner(text: &str) -> Result<IncompleteTable, ParseError> {
    let mut header: Option<Header> = None;
    let mut in_objects = false;
    let mut objects: Vec<&str> = Vec::new();
    let mut seen_objects: HashSet<&str> = HashSet::new();
    let mut rows: Vec<RawRow> = Vec::new();
    let mut last_line = 0;

    for (i, raw_line) in text.lines().enumerate() {
        let line_no = i + 1;
        last_line = line_no;
        let content = match raw_line.find('#') {
            Some(p) => &raw_line[..p],
            None => raw_line,
        };
        let tokens = tokenize(line_no, content)?;
        let Some(first) = tokens.first() else { continue };

        if let Some(directive) = first.text.strip_prefix('@') {
            match directive {
                "attributes" => {
                    if header.is_some() {
                        return Err(syntax(line_no, first.col, "`@attributes` declared twice"));
                    }
                    if tokens.len() < 2 {
                        return Err(syntax(line_no, first.col, "`@attributes` needs at least one name"));
                    }
                    let mut attrs = Vec::new();
                    for t in &tokens[1..] {
                        if !is_plain(t.text) || t.text == NA {
                            return Err(syntax(line_no, t.col, format!("`{}` is not a valid attribute name", t.text)));
                        }
                        if attrs.contains(&t.text) {
                            return Err(syntax(line_no, t.col, format!("attribute `{}` declared twice", t.text)));
                        }
                        attrs.push(t.text);
                    }
                    header = Some(Header {
                        domains: vec![None; attrs.len()],
                        attrs,
                        line: line_no,
                    });
                }
                "domain" => {
                    let h = header
                        .as_mut()
                        .ok_or_else(|| syntax(line_no, first.col, "`@domain` before `@attributes`"))?;
                    if in_objects {
                        return Err(syntax(line_no, first.col, "`@domain` after `@objects`"));
                    }
                    let name = tokens
                        .get(1)
                        .ok_or_else(|| syntax(line_no, first.col, "`@domain` needs an attribute name"))?;
                    let a = h.attr(name.text).ok_or_else(|| {
                        err(line_no, name.col, ParseErrorKind::UnknownAttribute(name.text.to_string()))
                    })?;
                    if h.domains[a.0].is_some() {
                        return Err(syntax(line_no, name.col, format!("domain of `{}` declared twice", name.text)));
                    }
                    if tokens.len() < 3 {
                        return Err(syntax(line_no, name.col, "domain must list at least one value"));
                    }
                    let mut values: Vec<&str> = Vec::new();
                    for t in &tokens[2..] {
                        let v = plain_value(line_no, t.col, t.text)?;
                        if values.contains(&v) {
                            return Err(syntax(line_no, t.col, format!("domain value `{v}` listed twice")));
                        }
                        values.push(v);
                    }
                    h.domains[a.0] = Some(values);
                }
                "objects" => {
                    if header.is_none() {
                        return Err(syntax(line_no, first.col, "`@objects` before `@attributes`"));
                    }
                    if in_objects {
                        return Err(syntax(line_no, first.col, "`@objects` declared twice"));
                    }
                    if tokens.len() > 1 {
                        return Err(syntax(line_no, tokens[1].col, "unexpected text after `@objects`"));
                    }
                    in_objects = true;
                }
                other => {
                    return Err(syntax(line_no, first.col, format!("unknown directive `@{other}`")));
                }
            }
            continue;
        }

        if !in_objects {
            return Err(syntax(line_no, first.col, "object row before `@objects`"));
        }
        let h = header.as_ref().expect("objects implies header");
        if !is_plain(first.text) || first.text == NA {
            return Err(syntax(line_no, first.col, format!("`{}` is not a valid object id", first.text)));
        }
        if !seen_objects.insert(first.text) {
            return Err(err(
                line_no,
                first.col,
                ParseErrorKind::DuplicateObject(first.text.to_string()),
            ));
        }
        let cells = &tokens[1..];
        if cells.len() != h.attrs.len() {
            let col = cells
                .get(h.attrs.len())
                .map_or(content.trim_end().chars().count() + 1, |t| t.col);
            return Err(syntax(
                line_no,
                col,
                format!("expected {} cells, found {}", h.attrs.len(), cells.len()),
            ));
        }
        let mut raw = Vec::with_capacity(cells.len());
        for (a, t) in cells.iter().enumerate() {
            raw.push((t.col, parse_cell(line_no, t, AttrId(a), h)?));
        }
        objects.push(first.text);
        rows.push(RawRow { line: line_no, cells: raw });
    }

    let h = header.ok_or_else(|| syntax(last_line.max(1), 1, "missing `@attributes`"))?;
    if !in_objects {
        return Err(syntax(last_line.max(1), 1, "missing `@objects`"));
    }

    let mut schema_attrs = Vec::with_capacity(h.attrs.len());
    for (a, name) in h.attrs.iter().enumerate() {
        let domain: Vec<String> = match &h.domains[a] {
            Some(d) => d.iter().map(|s| s.to_string()).collect(),
            None => infer_domain(&h, &rows, a)?,
        };
        schema_attrs.push(AttributeSchema::new(*name, domain).expect("validated tokens"));
    }
    let schema = Schema::new(schema_attrs).expect("validated names");

    let mut cells = Vec::with_capacity(rows.len());
    for row in &rows {
        let mut out = Vec::with_capacity(row.cells.len());
        for (a, (col, raw)) in row.cells.iter().enumerate() {
            let attr = schema.attribute(AttrId(a));
            let lookup = |v: &str| {
                attr.value_id(v).ok_or_else(|| {
                    err(
                        row.line,
                        *col,
                        ParseErrorKind::ValueOutsideDomain {
                            attr: attr.name().to_string(),
                            value: v.to_string(),
                        },
                    )
                })
            };
            out.push(match raw {
                RawCell::Known(v) => Cell::Known(lookup(v)?),
                RawCell::Star => Cell::DoNotCare,
                RawCell::Partial(vs) => Cell::Partial(
                    vs.iter().map(|v| lookup(v)).collect::<Result<BTreeSet<ValueId>, _>>()?,
                ),
                RawCell::Class(b) => Cell::ClassSpecific(*b),
                RawCell::Na => Cell::NotApplicable,
            });
        }
        cells.push(out);
    }

    let universe = Universe::new(objects.iter().map(|s| s.to_string()).collect()).expect("checked duplicates");
    Ok(IncompleteTable::new(schema, universe, cells).expect("parser output is structurally valid"))
}

fn parse_cell<'a>(line: usize, t: &Located<'a>, own: AttrId, h: &Header) -> Result<RawCell<'a>, ParseError> {
    let s = t.text;
    let attr_name = h.attrs[own.0];
    if s == "*" {
        return Ok(RawCell::Star);
    }
    if s == NA {
        return Ok(RawCell::Na);
    }
    if let Some(inner) = s.strip_prefix('{') {
        let inner = inner
            .strip_suffix('}')
            .ok_or_else(|| syntax(line, t.col, "partial value must end with `}`"))?;
        let mut values: Vec<&str> = Vec::new();
        for part in inner.split('|') {
            let v = plain_value(line, t.col, part.trim())?;
            if !values.contains(&v) {
                values.push(v);
            }
        }
        if values.len() < 2 {
            return Err(err(
                line,
                t.col,
                ParseErrorKind::SingletonPartial {
                    attr: attr_name.to_string(),
                },
            ));
        }
        return Ok(RawCell::Partial(values));
    }
    if let Some(rest) = s.strip_prefix('^') {
        let name = rest
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .map(str::trim)
            .ok_or_else(|| syntax(line, t.col, "class-specific value must look like `^(attr)`"))?;
        let b = h
            .attr(name)
            .ok_or_else(|| err(line, t.col, ParseErrorKind::UnknownAttribute(name.to_string())))?;
        if b == own {
            return Err(err(
                line,
                t.col,
                ParseErrorKind::SelfReference {
                    attr: attr_name.to_string(),
                },
            ));
        }
        return Ok(RawCell::Class(b));
    }
    Ok(RawCell::Known(plain_value(line, t.col, s)?))
}

/// Union of the Known and Partial tokens of column `a`, in numeric order when
/// every token is an integer and lexicographic order otherwise.
fn infer_domain(h: &Header, rows: &[RawRow], a: usize) -> Result<Vec<String>, ParseError> {
    let name = h.attrs[a];
    let missing = |line, col| {
        err(
            line,
            col,
            ParseErrorKind::MissingDomain {
                attr: name.to_string(),
            },
        )
    };
    let mut values: BTreeSet<&str> = BTreeSet::new();
    for row in rows {
        let (col, cell) = &row.cells[a];
        match cell {
            RawCell::Star => return Err(missing(row.line, *col)),
            RawCell::Known(v) => {
                values.insert(v);
            }
            RawCell::Partial(vs) => values.extend(vs.iter().copied()),
            RawCell::Class(_) | RawCell::Na => {}
        }
    }
    if values.is_empty() {
        return Err(missing(h.line, 1));
    }
    let mut domain: Vec<&str> = values.into_iter().collect();
    if domain.iter().all(|v| v.parse::<i64>().is_ok()) {
        domain.sort_by_key(|v| v.parse::<i64>().expect("checked"));
    }
    log::warn!(
        "attribute `{name}` has no @domain declaration; inferred {{{}}}",
        domain.join(",")
    );
    Ok(domain.into_iter().map(String::from).collect())
}
