//! Space and set files.
//!
//! ```text
//! # comments run to end of line
//! field 2^2 modulus 1,1,1
//! 1,2
//! 0,1,1
//! ```
//!
//! The first content line names the field (`field p^r`, optionally followed
//! by `modulus c0,c1,...`, or with the modulus on its own `modulus ...`
//! line right after). Every further line holds one polynomial in the
//! comma-separated format of [`Poly::parse`], or one bivariate term list
//! for [`BiPoly::parse`].

use crate::dilate::{BiPoly, BiPolySet};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;
use crate::setops::PolySet;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_header(line_no: usize, line: &str) -> Result<(String, Option<String>)> {
    let toks: Vec<&str> = line.split_whitespace().collect();
    match toks[..] {
        ["field", spec] => Ok((spec.to_string(), None)),
        ["field", spec, "modulus", m] => Ok((spec.to_string(), Some(m.to_string()))),
        _ => Err(Error::parse(line_no, format!("expected `field p^r [modulus ...]`, got `{line}`"))),
    }
}

/// Splits off the header and returns the field plus the remaining numbered body lines.
fn split_header<'a>(text: &'a str, fallback: Option<&Field>) -> Result<(Field, Vec<(usize, &'a str)>)> {
    let mut lines: Vec<(usize, &str)> = content_lines(text).collect();
    let field = match lines.first() {
        Some(&(n, l)) if l.starts_with("field") => {
            let (spec, mut modulus) = parse_header(n, l)?;
            lines.remove(0);
            if modulus.is_none() {
                if let Some(rest) = lines.first().and_then(|(_, l2)| l2.strip_prefix("modulus")) {
                    modulus = Some(rest.trim().to_string());
                    lines.remove(0);
                }
            }
            Field::from_spec(&spec, modulus.as_deref()).map_err(|e| Error::parse(n, e.to_string()))?
        }
        _ => match fallback {
            Some(f) => f.clone(),
            None => return Err(Error::parse(1, "missing `field p^r` header")),
        },
    };
    Ok((field, lines))
}

fn with_line<T>(line: usize, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { msg, .. } => Error::Parse { line, msg },
        other => Error::parse(line, other.to_string()),
    })
}

/// Field and generator list of a space file.
pub fn parse_space_file(text: &str, fallback: Option<&Field>) -> Result<(Field, Vec<Poly>)> {
    let (field, lines) = split_header(text, fallback)?;
    let polys = lines
        .into_iter()
        .map(|(n, l)| with_line(n, Poly::parse(&field, l)))
        .collect::<Result<Vec<_>>>()?;
    Ok((field, polys))
}

/// A set file has the same layout as a space file; duplicates collapse.
pub fn parse_set_file(text: &str, fallback: Option<&Field>) -> Result<PolySet> {
    let (field, polys) = parse_space_file(text, fallback)?;
    PolySet::from_polys(&field, polys)
}

pub fn parse_biset_file(text: &str, fallback: Option<&Field>) -> Result<BiPolySet> {
    let (field, lines) = split_header(text, fallback)?;
    let mut set = with_line(1, BiPolySet::new(&field))?;
    for (n, l) in lines {
        set.insert(with_line(n, BiPoly::parse(&field, l))?)?;
    }
    Ok(set)
}

/// Header line for a field, including the modulus for extension fields.
pub fn field_header(field: &Field) -> String {
    if field.is_prime_field() {
        format!("field {}", field.spec())
    } else {
        let m: Vec<String> = field.modulus().iter().map(|c| c.to_string()).collect();
        format!("field {} modulus {}", field.spec(), m.join(","))
    }
}

/// Writes a set file that [`parse_set_file`] reads back.
pub fn format_set_file(set: &PolySet) -> String {
    let mut out = field_header(set.field());
    out.push('\n');
    for p in set {
        out.push_str(&p.to_string());
        out.push('\n');
    }
    out
}
