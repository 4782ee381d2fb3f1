use num::{BigInt, BigRational};
use thiserror::Error;

use super::element::{Coef, CoeffElement, VMonomial};
use super::ideal::IdealSpec;
use super::presentation::{CyclicSummand, ModulePresentation, SummandDegree};
use super::ring::Ring;
use super::theory::{ScalarMode, Theory};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TextError {
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("cannot parse polynomial `{input}`: {msg}")]
    Poly { input: String, msg: String },
}

fn err(line: usize, msg: impl Into<String>) -> TextError {
    TextError::Line {
        line,
        msg: msg.into(),
    }
}

/// Parse a polynomial expression over a coefficient ring, e.g.
/// `v1^2*v2 + 3*v3` or `-1/2*v1`. Used for custom ideal generators.
pub fn parse_poly(ring: &Ring, input: &str) -> Result<CoeffElement, TextError> {
    let fail = |msg: &str| TextError::Poly {
        input: input.to_string(),
        msg: msg.to_string(),
    };
    let mut out = ring.zero();
    for (sign, term) in split_signed_terms(input) {
        let mut coef: Option<BigRational> = None;
        let mut mono = VMonomial::one();
        for factor in term.split('*') {
            let factor = factor.trim();
            if factor.is_empty() {
                return Err(fail("empty factor"));
            }
            if let Some(rest) = factor.strip_prefix('v') {
                let (idx, exp) = match rest.split_once('^') {
                    Some((i, e)) => (
                        i.parse::<u32>().map_err(|_| fail("bad generator index"))?,
                        e.parse::<i64>().map_err(|_| fail("bad exponent"))?,
                    ),
                    None => (
                        rest.parse::<u32>()
                            .map_err(|_| fail("bad generator index"))?,
                        1,
                    ),
                };
                if idx == 0 {
                    return Err(fail("generator indices start at 1"));
                }
                mono = mono.mul(&VMonomial::gen(idx, exp));
            } else {
                let q = parse_rational(factor).ok_or_else(|| fail("bad numeric factor"))?;
                coef = Some(coef.map_or(q.clone(), |c| c * &q));
            }
        }
        let coef = coef.unwrap_or_else(|| BigRational::from_integer(BigInt::from(1)));
        let coef = if sign < 0 { -coef } else { coef };
        let c = match ring.theory().scalar_mode() {
            ScalarMode::Rational => Coef::Q(coef),
            ScalarMode::Fp => Coef::Fp(Coef::Q(coef).to_fp(ring.prime())),
        };
        out = ring.add(&out, &ring.monomial(mono, c));
    }
    Ok(out)
}

fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d == BigInt::from(0) {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(s.trim().parse().ok()?)),
    }
}

/// Split `a + b - c` into [(1, "a"), (1, "b"), (-1, "c")]. A minus sign
/// directly after `^`, `*` or `/` is part of a number (as in `v1^-1`), not a
/// term separator.
fn split_signed_terms(input: &str) -> Vec<(i32, String)> {
    let mut terms = Vec::new();
    let mut current = String::new();
    let mut sign = 1;
    let mut prev_op: Option<char> = None;
    for ch in input.chars() {
        let inside_number = matches!(prev_op, Some('^') | Some('*') | Some('/'));
        match ch {
            '+' | '-' if !inside_number && !current.trim().is_empty() => {
                terms.push((sign, current.trim().to_string()));
                current = String::new();
                sign = if ch == '-' { -1 } else { 1 };
                prev_op = None;
            }
            '-' if !inside_number && current.trim().is_empty() => {
                sign = -sign;
            }
            '+' if !inside_number && current.trim().is_empty() => {}
            _ => {
                current.push(ch);
                if !ch.is_whitespace() {
                    prev_op = Some(ch);
                }
            }
        }
    }
    if !current.trim().is_empty() {
        terms.push((sign, current.trim().to_string()));
    }
    terms
}

/// Parse an annihilator entry list like `p, v1` or `J3` into an ideal.
pub fn parse_annihilator(
    entries: &[&str],
    theory: Theory,
    line: usize,
) -> Result<IdealSpec, TextError> {
    if entries.is_empty() {
        return Ok(IdealSpec::I(0));
    }
    if entries.len() == 1 {
        let e = entries[0];
        if e == "Iinf" {
            return Ok(IdealSpec::IInfinity);
        }
        if let Some(rest) = e.strip_prefix('J') {
            if let Ok(m) = rest.trim_matches(|c| c == '(' || c == ')').parse::<u32>() {
                return Ok(IdealSpec::JFrom(m));
            }
        }
    }
    // the shape p, v1, ..., v(k) names I(k+1)
    if entries[0] == "p" {
        let mut k = 0u32;
        let consecutive = entries[1..]
            .iter()
            .enumerate()
            .all(|(j, e)| *e == format!("v{}", j + 1))
            && {
                k = (entries.len() - 1) as u32;
                true
            };
        if consecutive {
            return Ok(IdealSpec::I(k + 1));
        }
    }
    let ring = Ring::new(theory);
    let mut gens = Vec::new();
    for e in entries {
        let g = if *e == "p" {
            ring.scalar(theory.prime() as i64)
        } else {
            parse_poly(&ring, e).map_err(|e| err(line, e.to_string()))?
        };
        gens.push(g);
    }
    Ok(IdealSpec::Custom(gens).normalize_in(theory))
}

/// Parse an ideal token such as `I2`, `I(2)`, `Iinf`, `J3`, or a comma list
/// of polynomials `v1,v2^2`.
pub fn parse_ideal_token(token: &str, theory: Theory) -> Result<IdealSpec, TextError> {
    let t = token.trim();
    let strip = |s: &str| s.trim_matches(|c| c == '(' || c == ')').to_string();
    if t == "Iinf" || t == "I(inf)" || t == "Iinfinity" {
        return Ok(IdealSpec::IInfinity);
    }
    if let Some(rest) = t.strip_prefix('I') {
        if let Ok(n) = strip(rest).parse::<u32>() {
            return Ok(IdealSpec::I(n));
        }
    }
    if let Some(rest) = t.strip_prefix('J') {
        if let Ok(m) = strip(rest).parse::<u32>() {
            return Ok(IdealSpec::JFrom(m));
        }
    }
    let entries: Vec<&str> = t
        .split(',')
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .collect();
    parse_annihilator(&entries, theory, 0)
}

/// Print a module presentation in the structured text format.
///
/// ```text
/// presentation BP@p=2
/// summand 1 deg (0,0) ann []
/// summand y6 deg (6,0) ann [p,v1]
/// annotation I(2)
/// ```
pub fn print_presentation(m: &ModulePresentation) -> String {
    let mut out = String::new();
    out.push_str(&format!("presentation {}\n", m.theory));
    for s in &m.summands {
        out.push_str(&format!(
            "summand {} deg {} ann [{}]\n",
            s.generator,
            s.degree,
            s.annihilator.generator_strings().join(","),
        ));
    }
    if let Some(ideal) = &m.annotation {
        let token = match ideal {
            IdealSpec::I(n) => format!("I({})", n),
            IdealSpec::IInfinity => "Iinf".to_string(),
            IdealSpec::JFrom(m) => format!("J({})", m),
            IdealSpec::Custom(gens) => gens
                .iter()
                .map(|g| g.to_string())
                .collect::<Vec<_>>()
                .join(","),
        };
        out.push_str(&format!("annotation {}\n", token));
    }
    out
}

/// Parse the structured text format produced by [`print_presentation`].
pub fn parse_presentation(input: &str) -> Result<ModulePresentation, TextError> {
    let mut theory: Option<Theory> = None;
    let mut summands = Vec::new();
    let mut annotation = None;
    for (idx, raw) in input.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut words = line.split_whitespace();
        match words.next() {
            Some("presentation") => {
                let tag = words
                    .next()
                    .ok_or_else(|| err(lineno, "missing theory tag"))?;
                theory = Some(
                    Theory::parse(tag)
                        .map_err(|e| err(lineno, format!("bad theory tag: {}", e)))?,
                );
            }
            Some("summand") => {
                let theory =
                    theory.ok_or_else(|| err(lineno, "summand before presentation header"))?;
                let name = words
                    .next()
                    .ok_or_else(|| err(lineno, "missing summand name"))?
                    .to_string();
                let rest: Vec<&str> = words.collect();
                let deg_pos = rest
                    .iter()
                    .position(|w| *w == "deg")
                    .ok_or_else(|| err(lineno, "missing `deg`"))?;
                let ann_pos = rest
                    .iter()
                    .position(|w| *w == "ann")
                    .ok_or_else(|| err(lineno, "missing `ann`"))?;
                let deg_str = rest[deg_pos + 1..ann_pos].join(" ");
                let ann_str = rest[ann_pos + 1..].join(" ");
                let degree = parse_degree(deg_str.trim(), lineno)?;
                let ann_inner = ann_str
                    .trim()
                    .strip_prefix('[')
                    .and_then(|s| s.strip_suffix(']'))
                    .ok_or_else(|| err(lineno, "annihilator must be enclosed in [ ]"))?;
                let entries: Vec<&str> = ann_inner
                    .split(',')
                    .map(|s| s.trim())
                    .filter(|s| !s.is_empty())
                    .collect();
                let annihilator = parse_annihilator(&entries, theory, lineno)?;
                summands.push(CyclicSummand {
                    generator: name,
                    degree,
                    annihilator,
                });
            }
            Some("annotation") => {
                let theory =
                    theory.ok_or_else(|| err(lineno, "annotation before presentation header"))?;
                let token: String = words.collect::<Vec<_>>().join(" ");
                annotation = Some(parse_ideal_token(&token, theory).map_err(|e| match e {
                    TextError::Line { msg, .. } | TextError::Poly { msg, .. } => err(lineno, msg),
                })?);
            }
            Some(other) => return Err(err(lineno, format!("unknown directive `{}`", other))),
            None => {}
        }
    }
    let theory = theory.ok_or_else(|| err(0, "missing presentation header"))?;
    let mut m = ModulePresentation::new(theory, summands).map_err(|e| err(0, e.to_string()))?;
    if let Some(a) = annotation {
        m = m.with_annotation(a).map_err(|e| err(0, e.to_string()))?;
    }
    Ok(m)
}

fn parse_degree(s: &str, line: usize) -> Result<SummandDegree, TextError> {
    if let Some(rest) = s.strip_prefix("chow(") {
        let k = rest
            .strip_suffix(')')
            .and_then(|x| x.trim().parse::<i64>().ok())
            .ok_or_else(|| err(line, "bad chow degree"))?;
        return Ok(SummandDegree::Chow(k));
    }
    let inner = s
        .strip_prefix('(')
        .and_then(|x| x.strip_suffix(')'))
        .ok_or_else(|| err(line, "degree must be (m,w) or chow(k)"))?;
    let (m, w) = inner
        .split_once(',')
        .ok_or_else(|| err(line, "degree must be (m,w)"))?;
    let m: i64 = m
        .trim()
        .parse()
        .map_err(|_| err(line, "bad first degree"))?;
    let w: i64 = w.trim().parse().map_err(|_| err(line, "bad weight"))?;
    if (m + w) % 2 != 0 {
        return Err(err(line, "first degree and weight must have equal parity"));
    }
    Ok(SummandDegree::FirstWeight(m, w))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_parser_basics() {
        let r = Ring::new(Theory::bp(2).unwrap());
        let x = parse_poly(&r, "v1^2*v2 + 3*v3").unwrap();
        let expected = r.add(
            &r.mul(&r.mul(&r.v(1), &r.v(1)), &r.v(2)),
            &r.scalar_mul(3, &r.v(3)),
        );
        assert_eq!(x, expected);
        let neg = parse_poly(&r, "-v1 + 1/3").unwrap();
        assert_eq!(neg.to_string(), "1/3 - v1");
        // round trip through display
        assert_eq!(parse_poly(&r, &x.to_string()).unwrap(), x);
    }

    #[test]
    fn poly_parser_fp_and_inverse() {
        let r = Ring::new(Theory::morava_k(1, 2).unwrap());
        let x = parse_poly(&r, "v1^-1").unwrap();
        assert_eq!(x, r.v_pow(1, -1));
        let two = parse_poly(&r, "2").unwrap();
        assert!(two.is_zero());
    }

    #[test]
    fn presentation_round_trip() {
        let text = "presentation BP@p=2\n\
                    summand 1 deg (0,0) ann []\n\
                    summand y6 deg (6,0) ann [p,v1]\n\
                    summand q deg chow(3) ann [J2]\n";
        let m = parse_presentation(text).unwrap();
        assert_eq!(m.summands[1].annihilator, IdealSpec::I(2));
        assert_eq!(m.summands[2].annihilator, IdealSpec::JFrom(2));
        assert_eq!(print_presentation(&m), text);
        let again = parse_presentation(&print_presentation(&m)).unwrap();
        assert_eq!(again, m);
    }

    #[test]
    fn annotation_round_trip() {
        let text = "presentation BP@p=3\n\
                    summand g deg (0,0) ann [Iinf]\n\
                    annotation I(2)\n";
        let m = parse_presentation(text).unwrap();
        assert_eq!(m.annotation, Some(IdealSpec::I(2)));
        assert_eq!(print_presentation(&m), text);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let text = "presentation BP@p=2\nsummand x deg (1,0) ann [v1]\n";
        let e = parse_presentation(text).unwrap_err();
        assert_eq!(e, err(2, "first degree and weight must have equal parity"));
        let e = parse_presentation("summand x deg (0,0) ann []\n").unwrap_err();
        assert!(matches!(e, TextError::Line { line: 1, .. }));
    }

    #[test]
    fn custom_annihilator_renaming() {
        // in a P(1) presentation the list [v1] is the image of I(2)
        let text = "presentation P(1)@p=2\nsummand y6 deg (6,0) ann [v1]\n";
        let m = parse_presentation(text).unwrap();
        assert_eq!(m.summands[0].annihilator, IdealSpec::I(2));
    }
}
