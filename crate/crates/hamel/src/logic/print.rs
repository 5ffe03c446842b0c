//! Canonical formula rendering.
//!
//! Parentheses are emitted only where precedence demands them, quantifier
//! bodies extend to the right unbracketed, sums render as `a + -1*b`
//! chains, and `!(t2 <i t1)` renders as the sugared `t1 <=i t2`. Printing
//! a parsed formula reproduces the input up to whitespace whenever the
//! input was already in this canonical form, and reparsing a printed
//! formula always reproduces the tree exactly.

use super::{Formula, Term};
use crate::scalar::Scalar;

const PREC_QUANT: u8 = 0;
const PREC_IMPLIES: u8 = 1;
const PREC_OR: u8 = 2;
const PREC_AND: u8 = 3;
const PREC_NOT: u8 = 4;
const PREC_ATOM: u8 = 5;

/// Render a formula in canonical syntax.
pub fn print_formula(f: &Formula) -> String {
    let mut out = String::new();
    write_formula(f, PREC_QUANT, &mut out);
    out
}

fn write_formula(f: &Formula, min_prec: u8, out: &mut String) {
    let prec = match f {
        Formula::Exists(..) | Formula::Forall(..) => PREC_QUANT,
        Formula::Implies(..) => PREC_IMPLIES,
        Formula::Or(..) => PREC_OR,
        Formula::And(..) => PREC_AND,
        Formula::Not(..) => PREC_NOT,
        Formula::True | Formula::False | Formula::Eq(..) | Formula::Lt(..) => PREC_ATOM,
    };
    if prec < min_prec {
        out.push('(');
        write_formula(f, PREC_QUANT, out);
        out.push(')');
        return;
    }
    match f {
        Formula::True => out.push_str("true"),
        Formula::False => out.push_str("false"),
        Formula::Eq(a, b) => {
            write_term(a, out);
            out.push_str(" = ");
            write_term(b, out);
        }
        Formula::Lt(order, a, b) => {
            write_term(a, out);
            out.push_str(&format!(" <{order} "));
            write_term(b, out);
        }
        Formula::Not(inner) => {
            if let Formula::Lt(order, b, a) = inner.as_ref() {
                write_term(a, out);
                out.push_str(&format!(" <={order} "));
                write_term(b, out);
            } else {
                out.push('!');
                write_formula(inner, PREC_NOT, out);
            }
        }
        Formula::And(a, b) => {
            write_formula(a, PREC_AND, out);
            out.push_str(" & ");
            write_formula(b, PREC_NOT, out);
        }
        Formula::Or(a, b) => {
            write_formula(a, PREC_OR, out);
            out.push_str(" | ");
            write_formula(b, PREC_AND, out);
        }
        Formula::Implies(a, b) => {
            write_formula(a, PREC_OR, out);
            out.push_str(" -> ");
            write_formula(b, PREC_IMPLIES, out);
        }
        Formula::Exists(x, body) => {
            out.push_str(&format!("E {x}. "));
            write_formula(body, PREC_QUANT, out);
        }
        Formula::Forall(x, body) => {
            out.push_str(&format!("A {x}. "));
            write_formula(body, PREC_QUANT, out);
        }
    }
}

fn write_term(t: &Term, out: &mut String) {
    let mut parts = Vec::new();
    collect_summands(t, None, &mut parts);
    out.push_str(&parts.join(" + "));
}

fn collect_summands(t: &Term, mult: Option<Scalar>, out: &mut Vec<String>) {
    match t {
        Term::Add(a, b) => {
            collect_summands(a, mult.clone(), out);
            collect_summands(b, mult, out);
        }
        Term::Scale(c, inner) => {
            let folded = match &mult {
                Some(m) => m.clone() * c.clone(),
                None => c.clone(),
            };
            collect_summands(inner, Some(folded), out);
        }
        Term::Zero => out.push("0".to_string()),
        Term::Inf => out.push(render_carrier("inf", mult)),
        Term::Var(name) => out.push(render_carrier(name, mult)),
        Term::Val(inner) => {
            let mut body = String::new();
            write_term(inner, &mut body);
            out.push(render_carrier(&format!("v({body})"), mult));
        }
    }
}

fn render_carrier(text: &str, mult: Option<Scalar>) -> String {
    match mult {
        Some(c) => format!("{c}*{text}"),
        None => text.to_string(),
    }
}

impl std::fmt::Display for Formula {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&print_formula(self))
    }
}

impl std::fmt::Display for Term {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut out = String::new();
        write_term(self, &mut out);
        f.write_str(&out)
    }
}
