//! Exhaustive formula search over a value multiset.
//!
//! Enumeration order is fixed: permutations in lexicographic index order,
//! then binary tree shapes by left-subtree size, then operators in
//! `BinOp::ALL` order. The first expression that evaluates exactly to the
//! target wins, so results are reproducible.

use crate::formula::{evaluate, BinOp, Expr};

/// Find a formula over all of `values` (each used exactly once) equal to
/// `target`, or `None` if the hand is unsolvable. Exact rational arithmetic;
/// division by zero simply disqualifies a candidate.
pub fn solve_exhaustive(values: &[i64], target: i64) -> Option<String> {
    // 1..=5 values, each within the grammar's literal range
    if values.is_empty() || values.len() > 5 || values.iter().any(|v| !(0..=99).contains(v)) {
        return None;
    }
    let mut perm = Vec::with_capacity(values.len());
    let mut used = vec![false; values.len()];
    permute(values, &mut used, &mut perm, target).map(|expr| expr.to_string())
}

/// Whether any formula over `values` hits `target`.
pub fn is_solvable(values: &[i64], target: i64) -> bool {
    solve_exhaustive(values, target).is_some()
}

fn permute(values: &[i64], used: &mut [bool], perm: &mut Vec<i64>, target: i64) -> Option<Expr> {
    if perm.len() == values.len() {
        return search_shapes(perm, target);
    }
    for i in 0..values.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        perm.push(values[i]);
        let hit = permute(values, used, perm, target);
        perm.pop();
        used[i] = false;
        if hit.is_some() {
            return hit;
        }
    }
    None
}

/// All binary trees over `seq` (in order), Catalan(n-1) shapes times 4^(n-1)
/// operator assignments. Returns the first expression equal to `target`.
fn search_shapes(seq: &[i64], target: i64) -> Option<Expr> {
    all_exprs(seq)
        .into_iter()
        .find(|expr| matches!(evaluate(expr), Ok(v) if v.equals_integer(target)))
}

fn all_exprs(seq: &[i64]) -> Vec<Expr> {
    if seq.len() == 1 {
        return vec![Expr::Num(seq[0])];
    }
    let mut out = Vec::new();
    for split in 1..seq.len() {
        for lhs in all_exprs(&seq[..split]) {
            for rhs in all_exprs(&seq[split..]) {
                for op in BinOp::ALL {
                    out.push(Expr::bin(op, lhs.clone(), rhs.clone()));
                }
            }
        }
    }
    out
}
