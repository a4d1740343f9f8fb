//! Text renderings of coproduct tables.

use std::fmt::Write as _;

use num_traits::{One, Signed};

use crate::pbw::{Series, Uea};

#[derive(Clone, Debug)]
pub struct TableEntry {
    pub name: String,
    pub value: Series,
}

/// One block per generator, one sub-block per nonzero xi-order, one
/// `monomial => coefficient` line per PBW term in key order.
pub fn emit_structured(uea: &Uea, title: &str, entries: &[TableEntry]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {title}");
    for e in entries {
        let _ = writeln!(out, "[{}]", e.name);
        for (k, t) in e.value.coeffs().iter().enumerate() {
            if t.is_zero() {
                continue;
            }
            let _ = writeln!(out, "xi^{k}");
            for (key, c) in t.iter() {
                let _ = writeln!(out, "  {} => {}", uea.format_key(key), c);
            }
        }
    }
    out
}

fn latex_name(name: &str) -> String {
    match name.split_once('_') {
        Some((head, tail)) => format!("{head}_{{{}}}", tail.replace('_', "")),
        None => name.to_string(),
    }
}

fn latex_key(uea: &Uea, key: &[u8]) -> String {
    let d = uea.dim();
    let alg = uea.algebra();
    let slots: Vec<String> = key
        .chunks(d)
        .map(|m| {
            let parts: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    let n = latex_name(alg.name(i));
                    if e == 1 {
                        n
                    } else {
                        format!("{n}^{{{e}}}")
                    }
                })
                .collect();
            if parts.is_empty() {
                "1".into()
            } else {
                parts.join(" ")
            }
        })
        .collect();
    slots.join(" \\otimes ")
}

/// `\Delta(x) = \xi^0 (...) + \xi^1 (...) + ...`, one `align` row per order.
pub fn emit_latex(uea: &Uea, title: &str, entries: &[TableEntry]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "% {title}");
    for e in entries {
        let _ = writeln!(out, "\\begin{{align*}}");
        let mut first = true;
        for (k, t) in e.value.coeffs().iter().enumerate() {
            if t.is_zero() {
                continue;
            }
            let mut sum = String::new();
            for (n, (key, c)) in t.iter().enumerate() {
                let sign = match (n, c.is_negative()) {
                    (0, true) => "-",
                    (0, false) => "",
                    (_, true) => "- ",
                    (_, false) => "+ ",
                };
                let abs = c.abs();
                let coeff = if abs.is_one() {
                    String::new()
                } else if abs.is_integer() {
                    format!("{abs} ")
                } else {
                    format!("\\tfrac{{{}}}{{{}}} ", abs.numer(), abs.denom())
                };
                let _ = write!(sum, "{sign}{coeff}{}", latex_key(uea, key));
                if n + 1 < t.len() {
                    sum.push(' ');
                }
            }
            let xi = match k {
                0 => String::new(),
                1 => "\\xi ".into(),
                _ => format!("\\xi^{{{k}}} "),
            };
            if first {
                let _ = write!(out, "\\Delta({}) &= {xi}\\left({sum}\\right)", latex_name(&e.name));
                first = false;
            } else {
                let _ = write!(out, " \\\\\n  &\\quad + {xi}\\left({sum}\\right)");
            }
        }
        if first {
            let _ = write!(out, "\\Delta({}) &= 0", latex_name(&e.name));
        }
        let _ = writeln!(out, "\n\\end{{align*}}");
    }
    out
}
