//! Minimal WKT reader/writer for `LINESTRING` and `MULTILINESTRING`.

use std::fmt::Write;

use thiserror::Error;

use super::{Graph, GraphBuilder, Point};
use crate::Scalar;

#[derive(Debug, Error, PartialEq)]
pub enum WktError {
    #[error("no geometry found")]
    Empty,
    #[error("entry {entry}: {reason}")]
    Malformed { entry: usize, reason: String },
    #[error("entry {entry}: linestring needs at least two points")]
    Degenerate { entry: usize },
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
    entry: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        let trimmed = rest.trim_start_matches(|c: char| c.is_whitespace() || c == ';');
        self.pos += rest.len() - trimmed.len();
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.text.len()
    }

    fn err(&self, reason: impl Into<String>) -> WktError {
        WktError::Malformed {
            entry: self.entry,
            reason: reason.into(),
        }
    }

    fn keyword(&mut self) -> Result<String, WktError> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let len = rest.find(|c: char| !c.is_ascii_alphabetic()).unwrap_or(rest.len());
        if len == 0 {
            return Err(self.err(format!("expected geometry keyword near {:?}", snippet(rest))));
        }
        self.pos += len;
        Ok(rest[..len].to_ascii_uppercase())
    }

    fn expect(&mut self, c: char) -> Result<(), WktError> {
        self.skip_ws();
        if self.text[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.err(format!("expected '{c}' near {:?}", snippet(&self.text[self.pos..]))))
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<f64, WktError> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let len = rest
            .find(|c: char| !(c.is_ascii_digit() || matches!(c, '.' | '-' | '+' | 'e' | 'E')))
            .unwrap_or(rest.len());
        let tok = &rest[..len];
        let v: f64 = tok
            .parse()
            .map_err(|_| self.err(format!("bad coordinate {:?}", snippet(rest))))?;
        if !v.is_finite() {
            return Err(self.err("non-finite coordinate"));
        }
        self.pos += len;
        Ok(v)
    }

    fn coords<T: Scalar>(&mut self) -> Result<Vec<Point<T>>, WktError> {
        self.expect('(')?;
        let mut pts = Vec::new();
        loop {
            let x = self.number()?;
            let y = self.number()?;
            pts.push(Point::new(T::lit(x), T::lit(y)));
            if self.eat(',') {
                continue;
            }
            self.expect(')')?;
            break;
        }
        if pts.len() < 2 {
            return Err(WktError::Degenerate { entry: self.entry });
        }
        Ok(pts)
    }
}

fn snippet(s: &str) -> &str {
    let end = s.char_indices().nth(24).map_or(s.len(), |(i, _)| i);
    &s[..end]
}

/// Parses WKT text into a path graph: one vertex per distinct point, one
/// edge per consecutive point pair. Entry indices in errors are 0-based.
pub fn parse_wkt<T: Scalar>(text: &str) -> Result<Graph<T>, WktError> {
    let mut cur = Cursor { text, pos: 0, entry: 0 };
    let mut builder = GraphBuilder::new();
    while !cur.at_end() {
        match cur.keyword()?.as_str() {
            "LINESTRING" => {
                let pts = cur.coords::<T>()?;
                builder.add_polyline(&pts);
            }
            "MULTILINESTRING" => {
                cur.expect('(')?;
                loop {
                    let pts = cur.coords::<T>()?;
                    builder.add_polyline(&pts);
                    if !cur.eat(',') {
                        break;
                    }
                }
                cur.expect(')')?;
            }
            other => return Err(cur.err(format!("unsupported geometry {other}"))),
        }
        cur.entry += 1;
    }
    if cur.entry == 0 {
        return Err(WktError::Empty);
    }
    Ok(builder.build())
}

/// Writes one `LINESTRING` per line with 6-decimal fixed-point coordinates.
pub fn write_wkt<T: Scalar>(lines: &[Vec<Point<T>>]) -> String {
    let mut out = String::new();
    for line in lines {
        out.push_str("LINESTRING (");
        for (i, p) in line.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            let _ = write!(out, "{:.6} {:.6}", p.x.as_f64(), p.y.as_f64());
        }
        out.push_str(")\n");
    }
    out
}
