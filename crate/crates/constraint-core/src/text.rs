//! Plain-text rendering and parsing of constraint systems.
//!
//! One constraint per line, `COEFF*VAR + ... <= COEFF*ATOM + ... + CONST`
//! with exact rationals written `p` or `p/q`. `>=` is accepted on input and
//! normalized away. Blank lines and `#`-comment lines are ignored; a
//! trailing `# label="..." flag="..."` comment carries metadata through a
//! round-trip. Atoms may contain balanced parentheses (`I(A ; B | C)`);
//! the splitter respects parenthesis depth.

use std::fmt;
use std::str::FromStr;

use num::{BigInt, One, Signed, Zero};

use crate::{Constraint, LinComb, Rat, Relation, RhsExpr, System};

/// Parse failure, naming the 1-based input line.
#[derive(Debug, Clone, thiserror::Error)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

impl ParseError {
    fn new(line: usize, msg: impl Into<String>) -> Self {
        ParseError { line, msg: msg.into() }
    }
}

fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn fmt_terms<T: fmt::Display>(terms: &[(T, Rat)], constant: Option<&Rat>) -> String {
    let mut out = String::new();
    for (item, coeff) in terms {
        let mag = coeff.abs();
        if out.is_empty() {
            if coeff.is_negative() {
                out.push('-');
            }
        } else if coeff.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        if !mag.is_one() {
            out.push_str(&fmt_rat(&mag));
            out.push('*');
        }
        out.push_str(&item.to_string());
    }
    if let Some(c) = constant {
        if !c.is_zero() || out.is_empty() {
            if out.is_empty() {
                out.push_str(&fmt_rat(c));
            } else if c.is_negative() {
                out.push_str(" - ");
                out.push_str(&fmt_rat(&c.abs()));
            } else {
                out.push_str(" + ");
                out.push_str(&fmt_rat(c));
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Render one constraint (no metadata comment).
pub fn render_constraint<V, A>(c: &Constraint<V, A>) -> String
where
    V: Ord + Clone + fmt::Display,
    A: Ord + Clone + fmt::Display,
{
    let lhs_terms: Vec<(&V, Rat)> = c.lhs.terms().map(|(v, r)| (v, r.clone())).collect();
    let rhs_terms: Vec<(&A, Rat)> = c.rhs.terms().map(|(a, r)| (a, r.clone())).collect();
    let rel = match c.rel {
        Relation::Le => "<=",
        Relation::Eq => "=",
    };
    format!(
        "{} {} {}",
        fmt_terms(&lhs_terms, None),
        rel,
        fmt_terms(&rhs_terms, Some(c.rhs.constant_part()))
    )
}

impl<V, A> fmt::Display for Constraint<V, A>
where
    V: Ord + Clone + fmt::Display,
    A: Ord + Clone + fmt::Display,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_constraint(self))
    }
}

/// Render a whole system, one constraint per line, with metadata comments.
pub fn render_system<V, A>(sys: &System<V, A>) -> String
where
    V: Ord + Clone + fmt::Display,
    A: Ord + Clone + fmt::Display,
{
    let mut out = String::new();
    for c in sys.iter() {
        out.push_str(&render_constraint(c));
        if c.label.is_some() || c.flag.is_some() {
            out.push_str(" #");
            if let Some(l) = &c.label {
                out.push_str(&format!(" label=\"{l}\""));
            }
            if let Some(fl) = &c.flag {
                out.push_str(&format!(" flag=\"{fl}\""));
            }
        }
        out.push('\n');
    }
    out
}

/// Parse a system; inverse of [`render_system`] up to normalization.
pub fn parse_system<V, A>(input: &str) -> Result<System<V, A>, ParseError>
where
    V: Ord + Clone + FromStr,
    A: Ord + Clone + FromStr,
    V::Err: fmt::Display,
    A::Err: fmt::Display,
{
    let mut sys = System::new();
    for (idx, raw_line) in input.lines().enumerate() {
        let lineno = idx + 1;
        let (body, comment) = split_comment(raw_line);
        let body = body.trim();
        if body.is_empty() {
            continue;
        }
        let (lhs_str, rel, rhs_str) = split_relation(body, lineno)?;
        let lhs = parse_lin_comb::<V>(lhs_str, lineno)?;
        let rhs = parse_rhs::<A>(rhs_str, lineno)?;
        let mut c = match rel {
            ParsedRel::Le => Constraint::le(lhs, rhs),
            ParsedRel::Ge => Constraint::ge(lhs, rhs),
            ParsedRel::Eq => Constraint::eq(lhs, rhs),
        };
        if let Some(meta) = comment {
            if let Some(label) = extract_quoted(meta, "label") {
                c = c.with_label(label);
            }
            if let Some(flag) = extract_quoted(meta, "flag") {
                c = c.with_flag(flag);
            }
        }
        sys.push(c);
    }
    Ok(sys)
}

fn split_comment(line: &str) -> (&str, Option<&str>) {
    let mut depth = 0usize;
    for (i, ch) in line.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            '#' if depth == 0 => return (&line[..i], Some(&line[i + 1..])),
            _ => {}
        }
    }
    (line, None)
}

fn extract_quoted(meta: &str, key: &str) -> Option<String> {
    let pat = format!("{key}=\"");
    let start = meta.find(&pat)? + pat.len();
    let end = meta[start..].find('"')? + start;
    Some(meta[start..end].to_string())
}

enum ParsedRel {
    Le,
    Ge,
    Eq,
}

fn split_relation(body: &str, line: usize) -> Result<(&str, ParsedRel, &str), ParseError> {
    let mut depth = 0usize;
    let bytes = body.as_bytes();
    for i in 0..bytes.len() {
        match bytes[i] {
            b'(' => depth += 1,
            b')' => depth = depth.saturating_sub(1),
            b'<' | b'>' if depth == 0 => {
                if i + 1 >= bytes.len() || bytes[i + 1] != b'=' {
                    return Err(ParseError::new(line, "expected `<=`, `>=`, or `=`"));
                }
                let rel = if bytes[i] == b'<' { ParsedRel::Le } else { ParsedRel::Ge };
                return Ok((&body[..i], rel, &body[i + 2..]));
            }
            b'=' if depth == 0 => {
                return Ok((&body[..i], ParsedRel::Eq, &body[i + 1..]));
            }
            _ => {}
        }
    }
    Err(ParseError::new(line, "no relation (`<=`, `>=`, `=`) found"))
}

/// Split a side into signed terms at top-level `+`/`-`.
fn split_terms(side: &str) -> Vec<(bool, String)> {
    let mut terms = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    let mut negative = false;
    for ch in side.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth = depth.saturating_sub(1);
                cur.push(ch);
            }
            '+' | '-' if depth == 0 && !cur.trim().is_empty() => {
                terms.push((negative, cur.trim().to_string()));
                negative = ch == '-';
                cur = String::new();
            }
            '-' if depth == 0 => {
                negative = !negative;
            }
            '+' if depth == 0 => {}
            _ => {
                cur.push(ch);
            }
        }
    }
    if !cur.trim().is_empty() {
        terms.push((negative, cur.trim().to_string()));
    }
    terms
}

fn parse_rat(s: &str, line: usize) -> Result<Rat, ParseError> {
    let s = s.trim();
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let numer = BigInt::from_str(num_str)
        .map_err(|_| ParseError::new(line, format!("invalid integer `{num_str}`")))?;
    let denom = match den_str {
        Some(d) => BigInt::from_str(d)
            .map_err(|_| ParseError::new(line, format!("invalid integer `{d}`")))?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(ParseError::new(line, format!("zero denominator in `{s}`")));
    }
    Ok(Rat::new(numer, denom))
}

fn is_rational_token(s: &str) -> bool {
    let s = s.trim();
    !s.is_empty()
        && s.chars().next().map(|c| c.is_ascii_digit() || c == '-').unwrap_or(false)
        && s.chars().all(|c| c.is_ascii_digit() || c == '/' || c == '-' || c.is_whitespace())
}

/// Split `COEFF*ITEM` at the top-level `*`, if present.
fn split_coeff(term: &str) -> (Option<&str>, &str) {
    let mut depth = 0usize;
    for (i, ch) in term.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            '*' if depth == 0 => return (Some(&term[..i]), &term[i + 1..]),
            _ => {}
        }
    }
    (None, term)
}

fn parse_lin_comb<V>(side: &str, line: usize) -> Result<LinComb<V>, ParseError>
where
    V: Ord + Clone + FromStr,
    V::Err: fmt::Display,
{
    let mut comb = LinComb::zero();
    for (negative, term) in split_terms(side) {
        if is_rational_token(&term) {
            let v = parse_rat(&term, line)?;
            if v.is_zero() {
                continue;
            }
            return Err(ParseError::new(line, "numeric constant not allowed on the lhs"));
        }
        let (coeff_str, item) = split_coeff(&term);
        let mut coeff = match coeff_str {
            Some(cs) => parse_rat(cs, line)?,
            None => Rat::one(),
        };
        if negative {
            coeff = -coeff;
        }
        let var = V::from_str(item.trim())
            .map_err(|e| ParseError::new(line, format!("bad variable `{}`: {e}", item.trim())))?;
        comb = comb.add(&LinComb::var_scaled(var, coeff));
    }
    Ok(comb)
}

fn parse_rhs<A>(side: &str, line: usize) -> Result<RhsExpr<A>, ParseError>
where
    A: Ord + Clone + FromStr,
    A::Err: fmt::Display,
{
    let mut expr = RhsExpr::zero();
    for (negative, term) in split_terms(side) {
        if is_rational_token(&term) {
            let mut v = parse_rat(&term, line)?;
            if negative {
                v = -v;
            }
            expr = expr.add(&RhsExpr::constant(v));
            continue;
        }
        let (coeff_str, item) = split_coeff(&term);
        let mut coeff = match coeff_str {
            Some(cs) => parse_rat(cs, line)?,
            None => Rat::one(),
        };
        if negative {
            coeff = -coeff;
        }
        let atom = A::from_str(item.trim())
            .map_err(|e| ParseError::new(line, format!("bad atom `{}`: {e}", item.trim())))?;
        expr = expr.add(&RhsExpr::atom_scaled(atom, coeff));
    }
    Ok(expr)
}
