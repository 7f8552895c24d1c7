//! Arithmetic expression parsing and exact evaluation for General Points.
//!
//! The checker never works in floating point: `8/(3-8/3)` must compare equal
//! to 24 exactly, so evaluation runs over [`Rational`].

mod parser;
mod rational;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use parser::parse_formula;
pub use rational::Rational;

/// Binary operators admitted by the grammar. There are no unary operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    pub const ALL: [BinOp; 4] = [BinOp::Add, BinOp::Sub, BinOp::Mul, BinOp::Div];

    pub fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Mul | BinOp::Div => 2,
        }
    }
}

/// An expression tree: non-negative integer leaves and binary nodes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Num(i64),
    Bin { op: BinOp, lhs: Box<Expr>, rhs: Box<Expr> },
}

impl Expr {
    pub fn bin(op: BinOp, lhs: Expr, rhs: Expr) -> Expr {
        Expr::Bin { op, lhs: Box::new(lhs), rhs: Box::new(rhs) }
    }

    /// Leaf literals in left-to-right order.
    pub fn leaves(&self) -> Vec<i64> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<i64>) {
        match self {
            Expr::Num(n) => out.push(*n),
            Expr::Bin { lhs, rhs, .. } => {
                lhs.collect_leaves(out);
                rhs.collect_leaves(out);
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Num(_) => 3,
            Expr::Bin { op, .. } => op.precedence(),
        }
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(n) => write!(f, "{n}"),
            Expr::Bin { op, lhs, rhs } => {
                // Parenthesize so that reparsing the printout rebuilds this
                // exact tree under a left-associative grammar: the right child
                // needs parens even at equal precedence.
                let prec = op.precedence();
                if lhs.precedence() < prec {
                    write!(f, "(")?;
                    lhs.fmt_with(f)?;
                    write!(f, ")")?;
                } else {
                    lhs.fmt_with(f)?;
                }
                write!(f, "{}", op.symbol())?;
                if rhs.precedence() <= prec {
                    write!(f, "(")?;
                    rhs.fmt_with(f)?;
                    write!(f, ")")?;
                } else {
                    rhs.fmt_with(f)?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f)
    }
}

/// A parsed formula: the expression plus the claimed target from an optional
/// trailing `= <integer>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Formula {
    pub expr: Expr,
    pub claimed_target: Option<i64>,
}

/// Parse failure, with the byte offset of the offending input.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

/// Evaluation failure. Both map to `WrongTarget` at the rubric level: the
/// formula is syntactically legal, it just has no usable value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("arithmetic overflow")]
    Overflow,
}

/// Exact value of an expression tree.
pub fn evaluate(expr: &Expr) -> Result<Rational, EvalError> {
    match expr {
        Expr::Num(n) => Ok(Rational::from_integer(*n)),
        Expr::Bin { op, lhs, rhs } => {
            let l = evaluate(lhs)?;
            let r = evaluate(rhs)?;
            match op {
                BinOp::Add => l.checked_add(r),
                BinOp::Sub => l.checked_sub(r),
                BinOp::Mul => l.checked_mul(r),
                BinOp::Div => l.checked_div(r),
            }
        }
    }
}

/// Outcome of checking a formula against a required number multiset and a
/// target value. Precedence when defects co-occur: `Illegal` dominates
/// `WrongNumbers` dominates `WrongTarget`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FormulaVerdict {
    Correct,
    WrongTarget,
    WrongNumbers,
    Illegal,
}

impl fmt::Display for FormulaVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            FormulaVerdict::Correct => "correct",
            FormulaVerdict::WrongTarget => "wrong_target",
            FormulaVerdict::WrongNumbers => "wrong_numbers",
            FormulaVerdict::Illegal => "illegal",
        };
        f.write_str(name)
    }
}

/// Multiset equality via sorted copies.
pub(crate) fn same_multiset(a: &[i64], b: &[i64]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    a == b
}

/// Check `text` against the required leaf multiset and target.
///
/// - `Illegal`: the text does not parse.
/// - `WrongNumbers`: the leaf multiset differs from `required_numbers`, or a
///   claimed `= k` suffix disagrees with `target`.
/// - `WrongTarget`: the value differs from `target`, or evaluation fails
///   (division by zero, overflow).
pub fn check_formula(text: &str, required_numbers: &[i64], target: i64) -> FormulaVerdict {
    let formula = match parse_formula(text) {
        Ok(f) => f,
        Err(_) => return FormulaVerdict::Illegal,
    };
    if !same_multiset(&formula.expr.leaves(), required_numbers) {
        return FormulaVerdict::WrongNumbers;
    }
    if let Some(claimed) = formula.claimed_target {
        if claimed != target {
            return FormulaVerdict::WrongNumbers;
        }
    }
    match evaluate(&formula.expr) {
        Ok(value) if value.equals_integer(target) => FormulaVerdict::Correct,
        _ => FormulaVerdict::WrongTarget,
    }
}
