use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// `left · m · right = diag(diagonal)` with `left`, `right` unimodular and
/// the diagonal nonnegative in divisibility order (zeros last).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

pub(super) fn smith(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);
    let size = rows.min(cols);

    for t in 0..size {
        loop {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let v = a.get(i, j);
                    if !v.is_zero() && best.map_or(true, |(bi, bj)| v.abs() < a.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(a, left, right, size);
            };
            a.swap_rows(t, pi);
            left.swap_rows(t, pi);
            a.swap_cols(t, pj);
            right.swap_cols(t, pj);

            let p = a.get(t, t).clone();
            let mut dirty = false;
            for i in t + 1..rows {
                let q = a.get(i, t).div_floor(&p);
                if !q.is_zero() {
                    a.add_row(i, t, &-&q);
                    left.add_row(i, t, &-&q);
                }
                dirty |= !a.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                let q = a.get(t, j).div_floor(&p);
                if !q.is_zero() {
                    a.add_col(j, t, &-&q);
                    right.add_col(j, t, &-&q);
                }
                dirty |= !a.get(t, j).is_zero();
            }
            if dirty {
                continue;
            }
            // Pivot must divide the whole trailing block.
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a.get(i, j).is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let one = BigInt::from(1);
                    a.add_row(t, i, &one);
                    left.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
    }
    finish(a, left, right, size)
}

fn finish(a: IntMatrix, left: IntMatrix, right: IntMatrix, size: usize) -> SmithForm {
    SmithForm {
        diagonal: (0..size).map(|i| a.get(i, i).clone()).collect(),
        left,
        right,
    }
}
