//! The two-sorted first-order language of ordered spaces with valuation.
//!
//! Terms are rational-linear combinations of variables, `0`, `inf`, and
//! `v(term)`; atoms compare two terms by equality or one of the orders.
//! Names occurring in formulas are resolved against the assignment first
//! and the structure's generators second, so generator names act as
//! constants. The submodules provide parsing and printing, quantifier-free
//! evaluation against any structure, quantifier elimination for the
//! order reduct, and a witness-search evaluator used to cross-check the
//! eliminator.

mod eval;
mod expand;
mod normal;
mod parse;
mod print;
mod qe;

use std::collections::BTreeMap;

pub use eval::{eval_term, evaluate_qf, Structure};
pub use expand::holds;
pub use normal::{normalize_term, LinTerm};
pub use parse::parse_formula;
pub use print::print_formula;
pub use qe::{check_formula, decide_sentence, qe};

use crate::oracle::OracleError;
use crate::scalar::Scalar;
use crate::tower::TowerError;

/// A term of the language.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Term {
    Zero,
    Inf,
    Var(String),
    Add(Box<Term>, Box<Term>),
    Scale(Scalar, Box<Term>),
    Val(Box<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn add(a: Term, b: Term) -> Term {
        Term::Add(Box::new(a), Box::new(b))
    }

    pub fn scale(c: Scalar, t: Term) -> Term {
        Term::Scale(c, Box::new(t))
    }

    pub fn val(t: Term) -> Term {
        Term::Val(Box::new(t))
    }

    /// Whether the term contains a `v` application.
    pub fn has_val(&self) -> bool {
        match self {
            Term::Zero | Term::Inf | Term::Var(_) => false,
            Term::Add(a, b) => a.has_val() || b.has_val(),
            Term::Scale(_, t) => t.has_val(),
            Term::Val(_) => true,
        }
    }

    fn collect_vars(&self, out: &mut std::collections::BTreeSet<String>) {
        match self {
            Term::Zero | Term::Inf => {}
            Term::Var(name) => {
                out.insert(name.clone());
            }
            Term::Add(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Term::Scale(_, t) | Term::Val(t) => t.collect_vars(out),
        }
    }
}

/// A formula of the language.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Formula {
    True,
    False,
    Eq(Term, Term),
    Lt(usize, Term, Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Exists(String, Box<Formula>),
    Forall(String, Box<Formula>),
}

impl Formula {
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn exists(var: &str, f: Formula) -> Formula {
        Formula::Exists(var.to_string(), Box::new(f))
    }

    pub fn forall(var: &str, f: Formula) -> Formula {
        Formula::Forall(var.to_string(), Box::new(f))
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::True | Formula::False | Formula::Eq(..) | Formula::Lt(..) => true,
            Formula::Not(f) => f.is_quantifier_free(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.is_quantifier_free() && b.is_quantifier_free()
            }
            Formula::Exists(..) | Formula::Forall(..) => false,
        }
    }

    pub fn has_val(&self) -> bool {
        match self {
            Formula::True | Formula::False => false,
            Formula::Eq(a, b) | Formula::Lt(_, a, b) => a.has_val() || b.has_val(),
            Formula::Not(f) => f.has_val(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.has_val() || b.has_val()
            }
            Formula::Exists(_, f) | Formula::Forall(_, f) => f.has_val(),
        }
    }

    /// Names with a free occurrence, generator names included.
    pub fn free_vars(&self) -> std::collections::BTreeSet<String> {
        fn walk(f: &Formula, bound: &mut Vec<String>, out: &mut std::collections::BTreeSet<String>) {
            match f {
                Formula::True | Formula::False => {}
                Formula::Eq(a, b) | Formula::Lt(_, a, b) => {
                    let mut vars = std::collections::BTreeSet::new();
                    a.collect_vars(&mut vars);
                    b.collect_vars(&mut vars);
                    for v in vars {
                        if !bound.contains(&v) {
                            out.insert(v);
                        }
                    }
                }
                Formula::Not(f) => walk(f, bound, out),
                Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                    walk(a, bound, out);
                    walk(b, bound, out);
                }
                Formula::Exists(x, f) | Formula::Forall(x, f) => {
                    bound.push(x.clone());
                    walk(f, bound, out);
                    bound.pop();
                }
            }
        }
        let mut out = std::collections::BTreeSet::new();
        walk(self, &mut Vec::new(), &mut out);
        out
    }
}

/// A variable binding for evaluation.
pub type Assignment<E> = BTreeMap<String, E>;

/// Errors raised by parsing, evaluation, and elimination.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LogicError {
    #[error("column {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("`v` cannot appear here: the operation covers the order reduct only")]
    ValSubterm,
    #[error("`v` is undefined on this structure")]
    ValUnsupported,
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("order {order} out of range: the structure has {orders} orders")]
    OrderOutOfRange { order: usize, orders: usize },
    #[error("not a sentence: free variables {0}")]
    NotASentence(String),
    #[error("formula is not quantifier-free")]
    NotQuantifierFree,
    #[error(transparent)]
    Tower(#[from] TowerError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}
