//! Structured text format for presented algebras.
//!
//! ```text
//! algebra so7
//! [base]
//! field Z/2[t]
//! smooth true
//! dimension 21
//! [generators]
//! x3 (3,2) odd
//! y6 (6,3) even
//! [relations]
//! x3^2 = y6 t
//! [qtable]
//! Q1(x3) = y6
//! ```
//!
//! Over the real base the field line reads `Z/2[r,t]` and extra `rho_trunc`
//! and `tau_window` lines are allowed, as well as an explicit `[basis]`
//! section with lines `a' = r^3 t^-1`. Monomial factors are separated by
//! spaces or `*`. Entries whose bidegrees do not match are rejected with
//! the offending line number.

use super::algebra::{BaseRing, BasisElem, Element, PalgError, Parity, PresentedAlgebra};

fn err(line: usize, msg: impl Into<String>) -> PalgError {
    PalgError::Parse {
        line,
        msg: msg.into(),
    }
}

pub fn print_algebra(a: &PresentedAlgebra) -> String {
    let mut out = String::new();
    out.push_str(&format!("algebra {}\n", a.name));
    out.push_str("[base]\n");
    match a.base {
        BaseRing::TauOnly { p } => out.push_str(&format!("field Z/{}[t]\n", p)),
        BaseRing::RhoTau => out.push_str("field Z/2[r,t]\n"),
    }
    out.push_str(&format!("smooth {}\n", a.smooth));
    if let Some(d) = a.dimension {
        out.push_str(&format!("dimension {}\n", d));
    }
    if let Some(tr) = a.rho_truncation() {
        out.push_str(&format!("rho_trunc {}\n", tr));
    }
    let (lo, hi) = a.tau_window();
    if lo != 0 || hi < i64::MAX / 2 {
        out.push_str(&format!("tau_window {} {}\n", lo, hi));
    }
    if let Some(upto) = a.q_default_zero_upto() {
        out.push_str(&format!("qdefault {}\n", upto));
    }
    out.push_str("[generators]\n");
    for g in a.generators() {
        let parity = match g.parity {
            Parity::Even => "even",
            Parity::Odd => "odd",
        };
        out.push_str(&format!(
            "{} ({},{}) {}\n",
            g.name, g.bidegree.0, g.bidegree.1, parity
        ));
    }
    out.push_str("[relations]\n");
    for (lhs, rhs) in a.relation_pairs() {
        out.push_str(&format!(
            "{} = {}\n",
            a.monomial_name(&lhs).replace('*', " "),
            a.element_string(&rhs).replace('*', " "),
        ));
    }
    if let Some(basis) = a.explicit_basis() {
        out.push_str("[basis]\n");
        for b in basis {
            out.push_str(&format!(
                "{} = {}\n",
                b.label,
                a.monomial_name(&b.monomial).replace('*', " ")
            ));
        }
    }
    out.push_str("[qtable]\n");
    for (i, gidx, value) in a.q_gen_entries() {
        out.push_str(&format!(
            "Q{}({}) = {}\n",
            i,
            a.generators()[gidx as usize].name,
            a.element_string(&value).replace('*', " ")
        ));
    }
    for (i, m, value) in a.q_table_entries() {
        out.push_str(&format!(
            "Q{}({}) = {}\n",
            i,
            a.monomial_name(&m).replace('*', " "),
            a.element_string(&value).replace('*', " ")
        ));
    }
    out
}

pub fn parse_algebra(input: &str) -> Result<PresentedAlgebra, PalgError> {
    #[derive(PartialEq, Clone, Copy)]
    enum Section {
        None,
        Base,
        Generators,
        Relations,
        Basis,
        QTable,
    }
    let mut name = "algebra".to_string();
    let mut base: Option<BaseRing> = None;
    let mut smooth = false;
    let mut dimension = None;
    let mut rho_trunc = None;
    let mut tau_window = None;
    let mut qdefault = None;
    let mut generators: Vec<(String, (i64, i64), Parity, usize)> = Vec::new();
    let mut relations: Vec<(String, String, usize)> = Vec::new();
    let mut basis_lines: Vec<(String, String, usize)> = Vec::new();
    let mut qtable_lines: Vec<(u32, String, String, usize)> = Vec::new();
    let mut section = Section::None;

    for (idx, raw) in input.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        match line {
            "[base]" => {
                section = Section::Base;
                continue;
            }
            "[generators]" => {
                section = Section::Generators;
                continue;
            }
            "[relations]" => {
                section = Section::Relations;
                continue;
            }
            "[basis]" => {
                section = Section::Basis;
                continue;
            }
            "[qtable]" => {
                section = Section::QTable;
                continue;
            }
            _ => {}
        }
        if let Some(rest) = line.strip_prefix("algebra ") {
            name = rest.trim().to_string();
            continue;
        }
        match section {
            Section::None => return Err(err(lineno, "content before any [section]")),
            Section::Base => {
                let mut words = line.split_whitespace();
                match words.next() {
                    Some("field") => {
                        let spec = words.next().ok_or_else(|| err(lineno, "missing field"))?;
                        base = Some(parse_field(spec, lineno)?);
                    }
                    Some("smooth") => {
                        smooth = words.next() == Some("true");
                    }
                    Some("dimension") => {
                        dimension = Some(
                            words
                                .next()
                                .and_then(|w| w.parse().ok())
                                .ok_or_else(|| err(lineno, "bad dimension"))?,
                        );
                    }
                    Some("rho_trunc") => {
                        rho_trunc = Some(
                            words
                                .next()
                                .and_then(|w| w.parse().ok())
                                .ok_or_else(|| err(lineno, "bad rho_trunc"))?,
                        );
                    }
                    Some("tau_window") => {
                        let lo = words.next().and_then(|w| w.parse().ok());
                        let hi = words.next().and_then(|w| w.parse().ok());
                        match (lo, hi) {
                            (Some(lo), Some(hi)) => tau_window = Some((lo, hi)),
                            _ => return Err(err(lineno, "bad tau_window")),
                        }
                    }
                    Some("qdefault") => {
                        qdefault = Some(
                            words
                                .next()
                                .and_then(|w| w.parse().ok())
                                .ok_or_else(|| err(lineno, "bad qdefault"))?,
                        );
                    }
                    other => {
                        return Err(err(lineno, format!("unknown base directive {:?}", other)))
                    }
                }
            }
            Section::Generators => {
                let mut words = line.split_whitespace();
                let gname = words.next().ok_or_else(|| err(lineno, "missing name"))?;
                let deg = words
                    .next()
                    .ok_or_else(|| err(lineno, "missing bidegree"))?;
                let parity = match words.next() {
                    Some("even") | None => Parity::Even,
                    Some("odd") => Parity::Odd,
                    Some(other) => return Err(err(lineno, format!("bad parity `{}`", other))),
                };
                let inner = deg
                    .strip_prefix('(')
                    .and_then(|d| d.strip_suffix(')'))
                    .ok_or_else(|| err(lineno, "bidegree must be (m,m')"))?;
                let (m, mp) = inner
                    .split_once(',')
                    .ok_or_else(|| err(lineno, "bidegree must be (m,m')"))?;
                let m: i64 = m.trim().parse().map_err(|_| err(lineno, "bad degree"))?;
                let mp: i64 = mp.trim().parse().map_err(|_| err(lineno, "bad degree"))?;
                generators.push((gname.to_string(), (m, mp), parity, lineno));
            }
            Section::Relations => {
                let (lhs, rhs) = line
                    .split_once('=')
                    .ok_or_else(|| err(lineno, "relation must be lhs = rhs"))?;
                relations.push((lhs.trim().to_string(), rhs.trim().to_string(), lineno));
            }
            Section::Basis => {
                let (label, mono) = line
                    .split_once('=')
                    .ok_or_else(|| err(lineno, "basis line must be label = monomial"))?;
                basis_lines.push((label.trim().to_string(), mono.trim().to_string(), lineno));
            }
            Section::QTable => {
                let (head, value) = line
                    .split_once('=')
                    .ok_or_else(|| err(lineno, "qtable line must be Qi(m) = value"))?;
                let head = head.trim();
                let rest = head
                    .strip_prefix('Q')
                    .ok_or_else(|| err(lineno, "qtable line must start with Q"))?;
                let open = rest
                    .find('(')
                    .ok_or_else(|| err(lineno, "missing ( in qtable entry"))?;
                let i: u32 = rest[..open]
                    .parse()
                    .map_err(|_| err(lineno, "bad operation index"))?;
                let arg = rest[open + 1..]
                    .strip_suffix(')')
                    .ok_or_else(|| err(lineno, "missing ) in qtable entry"))?;
                qtable_lines.push((i, arg.to_string(), value.trim().to_string(), lineno));
            }
        }
    }

    let base = base.ok_or_else(|| err(0, "missing [base] field line"))?;
    let mut a = PresentedAlgebra::new(name, base);
    a.smooth = smooth;
    a.dimension = dimension;
    if let Some(tr) = rho_trunc {
        a.set_rho_truncation(tr);
    }
    if let Some((lo, hi)) = tau_window {
        a.set_tau_window(lo, hi);
    }
    for (gname, bideg, parity, _) in &generators {
        a.add_generator(gname.clone(), *bideg, *parity);
    }
    for (lhs, rhs, lineno) in &relations {
        let lhs = a
            .parse_monomial(lhs)
            .map_err(|e| err(*lineno, e.to_string()))?;
        let rhs = a
            .parse_element(rhs)
            .map_err(|e| err(*lineno, e.to_string()))?;
        a.add_relation(lhs, rhs)
            .map_err(|e| err(*lineno, e.to_string()))?;
    }
    if !basis_lines.is_empty() {
        let mut basis = Vec::new();
        for (label, mono, lineno) in &basis_lines {
            let m = a
                .parse_monomial(mono)
                .map_err(|e| err(*lineno, e.to_string()))?;
            basis.push(BasisElem {
                label: label.clone(),
                monomial: m,
            });
        }
        a.set_explicit_basis(basis);
    }
    let p = a.prime();
    for (i, arg, value, lineno) in &qtable_lines {
        let value_elem = if value == "0" {
            Element::zero(p)
        } else {
            a.parse_element(value)
                .map_err(|e| err(*lineno, e.to_string()))?
        };
        // bidegree check: Q_i shifts by (2p^i - 1, p^i - 1)
        let shift = (2 * (p as i64).pow(*i) - 1, (p as i64).pow(*i) - 1);
        let arg_mono = a
            .parse_monomial(arg)
            .map_err(|e| err(*lineno, e.to_string()))?;
        let lhs_deg = a.bidegree(&arg_mono);
        if !value_elem.is_zero() {
            let rhs_deg = a
                .element_bidegree(&value_elem)
                .map_err(|e| err(*lineno, e.to_string()))?;
            if rhs_deg != (lhs_deg.0 + shift.0, lhs_deg.1 + shift.1) {
                return Err(err(
                    *lineno,
                    format!(
                        "bidegree mismatch: Q{} on ({},{}) must land in ({},{}), got ({},{})",
                        i,
                        lhs_deg.0,
                        lhs_deg.1,
                        lhs_deg.0 + shift.0,
                        lhs_deg.1 + shift.1,
                        rhs_deg.0,
                        rhs_deg.1
                    ),
                ));
            }
        }
        // a bare generator name keys the derivation table
        if let Some(g) = a.generator_index(arg.trim()) {
            a.set_q_on_generator(*i, g, value_elem);
        } else {
            a.set_q_table_entry(*i, arg_mono, value_elem);
        }
    }
    if let Some(upto) = qdefault {
        a.set_q_default_zero_upto(upto);
    }
    Ok(a)
}

fn parse_field(spec: &str, lineno: usize) -> Result<BaseRing, PalgError> {
    if spec == "Z/2[r,t]" {
        return Ok(BaseRing::RhoTau);
    }
    if let Some(rest) = spec.strip_prefix("Z/") {
        if let Some(p) = rest.strip_suffix("[t]").and_then(|x| x.parse().ok()) {
            return Ok(BaseRing::TauOnly { p });
        }
    }
    Err(err(lineno, format!("unknown base field `{}`", spec)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::palg::builders;

    #[test]
    fn so7_round_trips() {
        let a = builders::so7_cohomology();
        let text = print_algebra(&a);
        let b = parse_algebra(&text).unwrap();
        assert_eq!(a.generators(), b.generators());
        assert_eq!(print_algebra(&b), text);
        // the parsed algebra computes the same Q-action
        let x3 = b.parse_element("x3").unwrap();
        assert_eq!(b.element_string(&b.apply_q(1, &x3).unwrap()), "y6");
    }

    #[test]
    fn bidegree_inconsistency_rejected_with_line() {
        let text = "algebra bad\n\
                    [base]\n\
                    field Z/2[t]\n\
                    [generators]\n\
                    x (1,1) odd\n\
                    y (2,1) even\n\
                    [qtable]\n\
                    Q1(x) = y\n";
        let e = parse_algebra(text).unwrap_err();
        match e {
            PalgError::Parse { line, msg } => {
                assert_eq!(line, 8);
                assert!(msg.contains("bidegree mismatch"), "{}", msg);
            }
            other => panic!("unexpected error {:?}", other),
        }
    }

    #[test]
    fn qtable_accepts_consistent_entries() {
        let text = "algebra ok\n\
                    [base]\n\
                    field Z/2[t]\n\
                    [generators]\n\
                    x (1,1) odd\n\
                    y (2,1) even\n\
                    [qtable]\n\
                    Q0(x) = y\n\
                    Q1(x) = y^2\n";
        let a = parse_algebra(text).unwrap();
        let x = a.parse_element("x").unwrap();
        assert_eq!(a.element_string(&a.apply_q(1, &x).unwrap()), "y^2");
    }
}
