//! Canonical text emission for models.
//!
//! The printer guarantees `parse(print(m)) == m` (structural equality).
//! `cstate` shorthand never survives printing: desugared declarations are
//! emitted through the regular `types`/`pvariables` sections.

use super::*;
use std::fmt::Write;

/// Binding strength used to decide parenthesization. Matches the parser's
/// precedence ladder.
fn prec(e: &Expr) -> u8 {
    match e {
        Expr::If { .. } => 0,
        Expr::Or(..) => 1,
        Expr::And(..) => 2,
        Expr::Not(..) => 3,
        Expr::Cmp { .. } => 4,
        Expr::Arith {
            op: ArithOp::Add | ArithOp::Sub,
            ..
        } => 5,
        Expr::Arith {
            op: ArithOp::Mul | ArithOp::Div,
            ..
        } => 6,
        _ => 7,
    }
}

fn write_child(out: &mut String, e: &Expr, min: u8) {
    if prec(e) < min {
        out.push('(');
        write_expr(out, e);
        out.push(')');
    } else {
        write_expr(out, e);
    }
}

pub(super) fn write_expr(out: &mut String, e: &Expr) {
    match e {
        Expr::Literal(lit) => write_literal(out, lit),
        Expr::Var(v) => {
            let _ = write!(out, "?{v}");
        }
        Expr::Fluent { name, args } => {
            out.push_str(name);
            if !args.is_empty() {
                out.push('(');
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    let _ = write!(out, "{a}");
                }
                out.push(')');
            }
        }
        Expr::Arith { op, lhs, rhs } => {
            let own = prec(e);
            write_child(out, lhs, own);
            let _ = write!(out, " {op} ");
            write_child(out, rhs, own + 1);
        }
        Expr::Cmp { op, lhs, rhs } => {
            write_child(out, lhs, 5);
            let _ = write!(out, " {op} ");
            write_child(out, rhs, 5);
        }
        Expr::Not(inner) => {
            out.push('~');
            write_child(out, inner, 3);
        }
        Expr::And(a, b) => {
            write_child(out, a, 2);
            out.push_str(" ^ ");
            write_child(out, b, 3);
        }
        Expr::Or(a, b) => {
            write_child(out, a, 1);
            out.push_str(" | ");
            write_child(out, b, 2);
        }
        Expr::If { cond, then, els } => {
            out.push_str("if (");
            write_expr(out, cond);
            out.push_str(") then ");
            // a bare `if` in the then-arm would capture the outer `else`
            if matches!(**then, Expr::If { .. }) {
                out.push('(');
                write_expr(out, then);
                out.push(')');
            } else {
                write_expr(out, then);
            }
            out.push_str(" else ");
            write_expr(out, els);
        }
        Expr::Bernoulli(p) => {
            out.push_str("Bernoulli(");
            write_expr(out, p);
            out.push(')');
        }
        Expr::KronDelta(inner) => {
            out.push_str("KronDelta(");
            write_expr(out, inner);
            out.push(')');
        }
        Expr::Discrete { enum_name, branches } => {
            let _ = write!(out, "Discrete({enum_name}");
            for (value, p) in branches {
                let _ = write!(out, ", @{value} : ");
                write_expr(out, p);
            }
            out.push(')');
        }
    }
}

fn write_literal(out: &mut String, lit: &Literal) {
    match lit {
        Literal::Bool(b) => {
            let _ = write!(out, "{b}");
        }
        Literal::Num(n) => {
            let _ = write!(out, "{n}");
        }
        Literal::EnumValue(v) => {
            let _ = write!(out, "@{v}");
        }
    }
}

fn expr_text(e: &Expr) -> String {
    let mut s = String::new();
    write_expr(&mut s, e);
    s
}

pub(super) fn print_domain(m: &DomainModel) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "domain {} {{", m.name);
    if !m.requirements.is_empty() {
        let _ = writeln!(out, "    requirements = {{ {} }};", m.requirements.join(", "));
    }
    if !m.enums.is_empty() || !m.object_types.is_empty() {
        let _ = writeln!(out, "    types {{");
        for e in &m.enums {
            let _ = writeln!(out, "        {} : {{{}}};", e.name, e.values.join(", "));
        }
        for t in &m.object_types {
            let _ = writeln!(out, "        {t} : object;");
        }
        let _ = writeln!(out, "    }};");
    }
    if !m.fluents.is_empty() {
        let _ = writeln!(out, "    pvariables {{");
        for f in &m.fluents {
            let params = if f.params.is_empty() {
                String::new()
            } else {
                format!("({})", f.params.join(", "))
            };
            let mut default = String::new();
            write_literal(&mut default, &f.default);
            let _ = writeln!(
                out,
                "        {}{} : {{ {}, {}, default = {} }};",
                f.name, params, f.kind, f.value_type, default
            );
        }
        let _ = writeln!(out, "    }};");
    }
    if !m.cpfs.is_empty() {
        let _ = writeln!(out, "    cpfs {{");
        for c in &m.cpfs {
            let params = if c.params.is_empty() {
                String::new()
            } else {
                let vars: Vec<String> = c.params.iter().map(|p| format!("?{p}")).collect();
                format!("({})", vars.join(", "))
            };
            let _ = writeln!(out, "        {}'{} = {};", c.target, params, expr_text(&c.body));
        }
        let _ = writeln!(out, "    }};");
    }
    let _ = writeln!(out, "    reward = {};", expr_text(&m.reward));
    out.push_str("}\n");
    out
}

pub(super) fn print_instance(m: &InstanceModel) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "instance {} {{", m.name);
    let _ = writeln!(out, "    domain = {};", m.domain_name);
    if !m.objects.is_empty() {
        let _ = writeln!(out, "    objects {{");
        for (ty, members) in &m.objects {
            let _ = writeln!(out, "        {} : {{{}}};", ty, members.join(", "));
        }
        let _ = writeln!(out, "    }};");
    }
    if !m.non_fluents.is_empty() {
        let _ = writeln!(out, "    non-fluents {{");
        for a in &m.non_fluents {
            write_assignment(&mut out, a);
        }
        let _ = writeln!(out, "    }};");
    }
    if !m.init_state.is_empty() {
        let _ = writeln!(out, "    init-state {{");
        for a in &m.init_state {
            write_assignment(&mut out, a);
        }
        let _ = writeln!(out, "    }};");
    }
    let _ = writeln!(out, "    horizon = {};", m.horizon);
    let _ = writeln!(out, "    discount = {};", m.discount);
    out.push_str("}\n");
    out
}

fn write_assignment(out: &mut String, a: &Assignment) {
    let args = if a.args.is_empty() {
        String::new()
    } else {
        format!("({})", a.args.join(", "))
    };
    let mut value = String::new();
    write_literal(&mut value, &a.value);
    let _ = writeln!(out, "        {}{} = {};", a.fluent, args, value);
}
