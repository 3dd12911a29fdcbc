//! Pretty-printer for the ASCII formula grammar.
//!
//! Produces minimal parentheses under the precedence `~ > & > | > ->`,
//! prints `A -> _|_` as `~A`, and always parenthesises quantified
//! subformulae because their bodies extend maximally to the right.
//! `parse_formula` is a left inverse on any formula free of reserved
//! `#`-identifiers.

use super::{Formula, Term};

/// Binding strength used to decide parenthesisation.
fn prec(f: &Formula) -> u8 {
    if f.as_neg().is_some() {
        return 4;
    }
    match f {
        Formula::Atom(..) | Formula::Top | Formula::Bot => 5,
        Formula::Forall(..) | Formula::Exists(..) => 0,
        Formula::And(..) => 3,
        Formula::Or(..) => 2,
        Formula::Imp(..) => 1,
    }
}

fn print_at(f: &Formula, min: u8, out: &mut String) {
    if prec(f) < min {
        out.push('(');
        print_at(f, 0, out);
        out.push(')');
        return;
    }
    if let Some(a) = f.as_neg() {
        out.push('~');
        print_at(a, 4, out);
        return;
    }
    match f {
        Formula::Atom(p, args) => {
            out.push_str(p);
            if !args.is_empty() {
                out.push('(');
                for (i, t) in args.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    print_term_into(t, out);
                }
                out.push(')');
            }
        }
        Formula::Top => out.push('T'),
        Formula::Bot => out.push_str("_|_"),
        Formula::And(a, b) => {
            print_at(a, 4, out);
            out.push_str(" & ");
            print_at(b, 3, out);
        }
        Formula::Or(a, b) => {
            print_at(a, 3, out);
            out.push_str(" | ");
            print_at(b, 2, out);
        }
        Formula::Imp(a, b) => {
            print_at(a, 2, out);
            out.push_str(" -> ");
            print_at(b, 1, out);
        }
        Formula::Forall(x, body) => {
            out.push_str("forall ");
            out.push_str(x);
            out.push_str(". ");
            print_at(body, 0, out);
        }
        Formula::Exists(x, body) => {
            out.push_str("exists ");
            out.push_str(x);
            out.push_str(". ");
            print_at(body, 0, out);
        }
    }
}

fn print_term_into(t: &Term, out: &mut String) {
    match t {
        Term::Var(x) | Term::Const(x) => out.push_str(x),
        Term::App(f, args) => {
            out.push_str(f);
            out.push('(');
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                print_term_into(a, out);
            }
            out.push(')');
        }
    }
}

pub fn print_formula(f: &Formula) -> String {
    let mut out = String::new();
    print_at(f, 0, &mut out);
    out
}

pub fn print_term(t: &Term) -> String {
    let mut out = String::new();
    print_term_into(t, &mut out);
    out
}
