//! Exact two-phase simplex for `max c·y` subject to `G·y = h`, `y ≥ 0`.
//!
//! Dense tableau over [`BigRational`] with Bland's rule, so it always
//! terminates. Sizes here are a few dozen rows and columns.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal(BigRational),
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<BigRational>>,
    /// Reduced costs, with the current objective value in the last entry.
    obj: Vec<BigRational>,
    basis: Vec<usize>,
}

impl Tableau {
    fn width(&self) -> usize {
        self.obj.len()
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let w = self.width();
        let p = self.rows[r][c].clone();
        if !p.is_one() {
            for x in self.rows[r].iter_mut() {
                *x /= &p;
            }
        }
        let pivot_row = self.rows[r].clone();
        let eliminate = |row: &mut Vec<BigRational>| {
            let f = row[c].clone();
            if f.is_zero() {
                return;
            }
            for j in 0..w {
                if !pivot_row[j].is_zero() {
                    row[j] -= &f * &pivot_row[j];
                }
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.obj);
        self.basis[r] = c;
    }

    /// Runs Bland's rule over columns `< active`. Returns `false` on an
    /// unbounded direction.
    fn optimize(&mut self, active: usize) -> bool {
        let rhs = self.width() - 1;
        loop {
            let Some(c) = (0..active).find(|&j| self.obj[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(usize, BigRational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[c].is_positive() {
                    let ratio = &row[rhs] / &row[c];
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            let Some((r, _)) = best else {
                return false;
            };
            self.pivot(r, c);
        }
    }
}

/// `max c·y` over `{y ≥ 0 : G·y = h}`. `g` is row-major with `c.len()`
/// columns.
pub fn maximize(g: &[Vec<BigRational>], h: &[BigRational], c: &[BigRational]) -> LpOutcome {
    let m = g.len();
    let k = c.len();
    let w = k + m + 1;
    let mut rows = Vec::with_capacity(m);
    for (i, (gi, hi)) in g.iter().zip(h).enumerate() {
        let neg = hi.is_negative();
        let mut row = vec![BigRational::zero(); w];
        for (j, x) in gi.iter().enumerate() {
            row[j] = if neg { -x } else { x.clone() };
        }
        row[k + i] = BigRational::one();
        row[w - 1] = if neg { -hi } else { hi.clone() };
        rows.push(row);
    }
    // Phase one: maximize minus the sum of artificials.
    let mut obj = vec![BigRational::zero(); w];
    for row in &rows {
        for j in 0..k {
            obj[j] -= &row[j];
        }
        obj[w - 1] -= &row[w - 1];
    }
    let mut t = Tableau {
        rows,
        obj,
        basis: (k..k + m).collect(),
    };
    t.optimize(k + m);
    if !t.obj[w - 1].is_zero() {
        return LpOutcome::Infeasible;
    }
    // Drive remaining artificials out of the basis, dropping redundant rows.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= k {
            match (0..k).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }
    // Phase two.
    let mut obj = vec![BigRational::zero(); w];
    for j in 0..k {
        obj[j] = -&c[j];
    }
    for (row, &b) in t.rows.iter().zip(&t.basis) {
        let cb = &c[b];
        if cb.is_zero() {
            continue;
        }
        for j in 0..w {
            if !row[j].is_zero() {
                obj[j] += cb * &row[j];
            }
        }
    }
    t.obj = obj;
    if !t.optimize(k) {
        return LpOutcome::Unbounded;
    }
    LpOutcome::Optimal(t.obj[w - 1].clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(x: i64) -> BigRational {
        BigRational::from_integer(x.into())
    }

    fn qs(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn small_programs() {
        // max y1 + y2 with y1 + y2 + s = 4, y1 + 3 y2 + t = 6.
        let g = vec![qs(&[1, 1, 1, 0]), qs(&[1, 3, 0, 1])];
        assert_eq!(maximize(&g, &qs(&[4, 6]), &qs(&[1, 1, 0, 0])), LpOutcome::Optimal(q(4)));
        assert_eq!(maximize(&g, &qs(&[4, 6]), &qs(&[0, 1, 0, 0])), LpOutcome::Optimal(q(2)));
        // y1 - y2 = 1 leaves y1 unbounded above.
        let g = vec![qs(&[1, -1])];
        assert_eq!(maximize(&g, &qs(&[1]), &qs(&[1, 0])), LpOutcome::Unbounded);
        assert_eq!(maximize(&g, &qs(&[1]), &qs(&[-1, 0])), LpOutcome::Optimal(q(-1)));
        // y1 + y2 = -1 has no nonnegative solution.
        let g = vec![qs(&[1, 1])];
        assert_eq!(maximize(&g, &qs(&[-1]), &qs(&[1, 0])), LpOutcome::Infeasible);
    }

    #[test]
    fn redundant_rows() {
        let g = vec![qs(&[1, 1]), qs(&[2, 2])];
        assert_eq!(maximize(&g, &qs(&[3, 6]), &qs(&[1, 0])), LpOutcome::Optimal(q(3)));
        let fractional = maximize(&[qs(&[2, 1])], &qs(&[3]), &qs(&[1, 0]));
        assert_eq!(fractional, LpOutcome::Optimal(BigRational::new(3.into(), 2.into())));
    }
}
