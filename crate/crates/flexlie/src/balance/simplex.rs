//! Phase-one simplex with Bland's rule over an ordered field.

use crate::exact::{dot, Matrix};
use crate::scalar::OrderedField;

#[derive(Clone, Debug, PartialEq)]
pub enum Feasibility<T> {
    /// `x ≥ 0` with `A x = b`.
    Feasible(Vec<T>),
    /// `y` with `yᵀA ≥ 0` and `yᵀb < 0`.
    Infeasible(Vec<T>),
}

/// Decides `{x ≥ 0 : A x = b}`.
pub fn feasibility<T: OrderedField>(a: &Matrix<T>, b: &[T]) -> Feasibility<T> {
    let (m, n) = (a.nrows(), a.ncols());
    assert_eq!(b.len(), m, "right-hand side length");
    let flip: Vec<bool> = b.iter().map(|v| *v < T::zero()).collect();
    let width = n + m + 1;
    // Rows 0..m: constraints; row m: phase-one reduced costs.
    let mut t: Vec<Vec<T>> = (0..m)
        .map(|i| {
            let s = if flip[i] { -T::one() } else { T::one() };
            let mut row = Vec::with_capacity(width);
            row.extend((0..n).map(|j| a[(i, j)].clone() * s.clone()));
            row.extend((0..m).map(|k| if k == i { T::one() } else { T::zero() }));
            row.push(b[i].clone() * s);
            row
        })
        .collect();
    let mut cost = vec![T::zero(); width];
    for j in 0..width {
        if (n..n + m).contains(&j) {
            continue;
        }
        let s = t.iter().fold(T::zero(), |acc, r| acc + r[j].clone());
        cost[j] = -s;
    }
    t.push(cost);
    let mut basis: Vec<usize> = (n..n + m).collect();
    loop {
        let Some(enter) = (0..n + m).find(|&j| t[m][j] < T::zero()) else { break };
        let mut leave: Option<usize> = None;
        let mut best: Option<T> = None;
        for i in 0..m {
            if t[i][enter] > T::zero() {
                let ratio = t[i][width - 1].clone() / t[i][enter].clone();
                let better = match &best {
                    None => true,
                    Some(b) => ratio < *b || (ratio == *b && basis[i] < basis[leave.unwrap()]),
                };
                if better {
                    best = Some(ratio);
                    leave = Some(i);
                }
            }
        }
        let r = leave.expect("phase-one objective is bounded below");
        pivot(&mut t, r, enter);
        basis[r] = enter;
    }
    let objective = -t[m][width - 1].clone();
    if objective > T::zero() {
        // Duals of the phase-one problem: y_i = 1 − d_{n+i}.
        let y: Vec<T> = (0..m)
            .map(|i| {
                let yi = T::one() - t[m][n + i].clone();
                let yi = if flip[i] { -yi } else { yi };
                -yi
            })
            .collect();
        debug_assert!(dot(&y, b) < T::zero());
        Feasibility::Infeasible(y)
    } else {
        let mut x = vec![T::zero(); n];
        for (i, &bv) in basis.iter().enumerate() {
            if bv < n {
                x[bv] = t[i][width - 1].clone();
            }
        }
        Feasibility::Feasible(x)
    }
}

fn pivot<T: OrderedField>(t: &mut [Vec<T>], r: usize, c: usize) {
    let p = t[r][c].clone();
    for v in t[r].iter_mut() {
        *v = v.clone() / p.clone();
    }
    let prow = t[r].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i == r || row[c] == T::zero() {
            continue;
        }
        let f = row[c].clone();
        for (v, pv) in row.iter_mut().zip(&prow) {
            *v = v.clone() - f.clone() * pv.clone();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use crate::Rational;
    use proptest::prelude::*;

    fn m(rows: Vec<Vec<i64>>) -> Matrix<Rational> {
        Matrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(int).collect()).collect())
    }

    #[test]
    fn simple_feasible() {
        let a = m(vec![vec![1, 1]]);
        match feasibility(&a, &[int(2)]) {
            Feasibility::Feasible(x) => assert_eq!(x[0].clone() + x[1].clone(), int(2)),
            _ => panic!(),
        }
    }

    #[test]
    fn simple_infeasible() {
        let a = m(vec![vec![1, 1]]);
        match feasibility(&a, &[int(-1)]) {
            Feasibility::Infeasible(y) => assert!(y[0] > int(0)),
            _ => panic!(),
        }
    }

    proptest! {
        #[test]
        fn certificates_verify(rows in 1usize..4, cols in 1usize..5, seed in prop::collection::vec(-4i64..5, 20), rhs in prop::collection::vec(-4i64..5, 4)) {
            let a = Matrix::from_fn(rows, cols, |i, j| int(seed[i * 5 + j]));
            let b: Vec<Rational> = (0..rows).map(|i| int(rhs[i])).collect();
            match feasibility(&a, &b) {
                Feasibility::Feasible(x) => {
                    prop_assert!(x.iter().all(|v| *v >= int(0)));
                    prop_assert_eq!(a.mul_vec(&x), b);
                }
                Feasibility::Infeasible(y) => {
                    let at = a.transpose();
                    prop_assert!(at.mul_vec(&y).iter().all(|v| *v >= int(0)));
                    prop_assert!(dot(&y, &b) < int(0));
                }
            }
        }
    }
}
