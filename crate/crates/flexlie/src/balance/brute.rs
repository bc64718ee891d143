//! Independent decision by enumerating candidate extreme rays of the dual cone
//! `{φ : φ(N) = 0, φ(P) ≥ 0}`.

use num_traits::Zero;

use crate::exact::{dot, rank_of, Matrix};
use crate::Rational;

use super::{Balance, BalancednessInstance};

/// Unbalanced iff the dual cone is nonzero: either it contains a line
/// (`P ∪ N` does not span) or it has an extreme ray, which is cut out by
/// `N` together with at most `k − 1` tight vectors of `P`.
pub fn brute_force_balance(inst: &BalancednessInstance) -> Balance {
    let k = inst.ambient_dim;
    if k == 0 {
        return Balance::Balanced;
    }
    let all: Vec<Vec<Rational>> = inst.p_vectors.iter().chain(&inst.n_vectors).cloned().collect();
    if rank_of(&all, k) < k {
        return Balance::Unbalanced;
    }
    let m = inst.p_vectors.len();
    let mut subset: Vec<usize> = Vec::new();
    if search(inst, &mut subset, 0, m, k) {
        Balance::Unbalanced
    } else {
        Balance::Balanced
    }
}

fn search(inst: &BalancednessInstance, subset: &mut Vec<usize>, start: usize, m: usize, k: usize) -> bool {
    let rows: Vec<Vec<Rational>> =
        inst.n_vectors.iter().cloned().chain(subset.iter().map(|&j| inst.p_vectors[j].clone())).collect();
    let rank = rank_of(&rows, k);
    if rank == k - 1 {
        let ray = if rows.is_empty() {
            vec![]
        } else {
            Matrix::from_fn(rows.len(), k, |i, j| rows[i][j].clone()).nullspace()
        };
        if let Some(phi) = ray.first() {
            let vals: Vec<Rational> = inst.p_vectors.iter().map(|p| dot(phi, p)).collect();
            if vals.iter().all(|v| *v >= Rational::zero()) || vals.iter().all(|v| *v <= Rational::zero()) {
                return true;
            }
        } else {
            // No rows and rank 0 = k − 1: the ray is the unit functional on a line.
            let vals: Vec<&Rational> = inst.p_vectors.iter().map(|p| &p[0]).collect();
            if vals.iter().all(|v| **v >= Rational::zero()) || vals.iter().all(|v| **v <= Rational::zero()) {
                return true;
            }
        }
        return false;
    }
    if rank >= k || subset.len() >= k - 1 {
        return false;
    }
    for j in start..m {
        if inst.p_vectors[j].iter().all(Zero::is_zero) {
            continue;
        }
        subset.push(j);
        let hit = search(inst, subset, j + 1, m, k);
        subset.pop();
        if hit {
            return true;
        }
    }
    false
}
