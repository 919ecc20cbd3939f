//! Dense two-phase simplex with Bland's rule for small equality-form linear
//! programs: minimize cᵀx subject to Ax = b, x ≥ 0.
//!
//! Sized for the decomposition problem (tens of variables, ~14 constraints);
//! Bland's rule keeps pivoting deterministic and cycle-free.

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpError {
    Infeasible,
    Unbounded,
}

impl std::fmt::Display for LpError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LpError::Infeasible => write!(f, "infeasible"),
            LpError::Unbounded => write!(f, "unbounded"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct LpSolution<T> {
    pub x: Vec<T>,
    pub objective: T,
}

struct SimplexTableau<T: Scalar> {
    /// m rows of n variable coefficients plus a trailing RHS column.
    rows: Vec<Vec<T>>,
    /// Reduced-cost row with trailing (negated) objective value.
    cost: Vec<T>,
    basis: Vec<usize>,
    n: usize,
    /// Columns at or beyond this index may not enter the basis.
    enter_limit: usize,
}

impl<T: Scalar> SimplexTableau<T> {
    fn pivot(&mut self, row: usize, col: usize) {
        let piv = self.rows[row][col];
        let inv = T::one() / piv;
        for v in self.rows[row].iter_mut() {
            *v *= inv;
        }
        for r in 0..self.rows.len() {
            if r == row {
                continue;
            }
            let f = self.rows[r][col];
            if f != T::zero() {
                for c in 0..=self.n {
                    let delta = f * self.rows[row][c];
                    self.rows[r][c] -= delta;
                }
            }
        }
        let f = self.cost[col];
        if f != T::zero() {
            for c in 0..=self.n {
                let delta = f * self.rows[row][c];
                self.cost[c] -= delta;
            }
        }
        self.basis[row] = col;
    }

    /// Bland's rule: entering = lowest-index negative reduced cost; leaving =
    /// lowest basis index among minimum-ratio rows.
    fn run(&mut self, tol: T) -> Result<(), LpError> {
        loop {
            let Some(col) = (0..self.enter_limit).find(|&c| self.cost[c] < -tol) else {
                return Ok(());
            };
            let mut best: Option<(usize, T)> = None;
            for r in 0..self.rows.len() {
                let a = self.rows[r][col];
                if a > tol {
                    let ratio = self.rows[r][self.n] / a;
                    best = match best {
                        None => Some((r, ratio)),
                        Some((br, bratio)) => {
                            if ratio < bratio - tol
                                || (ratio < bratio + tol && self.basis[r] < self.basis[br])
                            {
                                Some((r, ratio))
                            } else {
                                Some((br, bratio))
                            }
                        }
                    };
                }
            }
            match best {
                Some((row, _)) => self.pivot(row, col),
                None => return Err(LpError::Unbounded),
            }
        }
    }
}

/// Solves min cᵀx s.t. Ax = b, x ≥ 0 by two-phase simplex.
pub fn solve_lp<T: Scalar>(a: &[Vec<T>], b: &[T], c: &[T]) -> Result<LpSolution<T>, LpError> {
    let m = a.len();
    let n = c.len();
    let tol = T::of(1e-11);

    // Phase 1: artificial variables form the initial basis; flip rows to b >= 0.
    let total = n + m;
    let mut rows: Vec<Vec<T>> = Vec::with_capacity(m);
    for r in 0..m {
        let flip = b[r] < T::zero();
        let mut row = vec![T::zero(); total + 1];
        for (cidx, v) in a[r].iter().enumerate() {
            row[cidx] = if flip { -*v } else { *v };
        }
        row[n + r] = T::one();
        row[total] = if flip { -b[r] } else { b[r] };
        rows.push(row);
    }
    let mut cost = vec![T::zero(); total + 1];
    for r in 0..m {
        for cdx in 0..=total {
            let delta = rows[r][cdx];
            cost[cdx] -= delta;
        }
    }
    for v in cost.iter_mut().skip(n).take(m) {
        *v = T::zero();
    }
    let mut t = SimplexTableau {
        rows,
        cost,
        basis: (n..n + m).collect(),
        n: total,
        enter_limit: total,
    };
    t.run(tol)?;
    if -t.cost[total] > T::of(1e-8) {
        return Err(LpError::Infeasible);
    }

    // Drive artificial variables out of the basis where possible. A row that
    // stays basic in an artificial is redundant (RHS ~ 0 after phase 1) and
    // remains inert because artificials may not re-enter in phase 2.
    for r in 0..m {
        if t.basis[r] >= n {
            if let Some(col) = (0..n).find(|&c| t.rows[r][c].abs() > T::of(1e-9)) {
                t.pivot(r, col);
            }
        }
    }

    // Phase 2: install the real objective, priced out over the current basis.
    let mut cost = vec![T::zero(); total + 1];
    cost[..n].copy_from_slice(&c[..n]);
    for r in 0..m {
        let bcol = t.basis[r];
        if bcol >= n {
            continue;
        }
        let f = cost[bcol];
        if f != T::zero() {
            for cdx in 0..=total {
                let delta = f * t.rows[r][cdx];
                cost[cdx] -= delta;
            }
        }
    }
    t.cost = cost;
    t.enter_limit = n;
    t.run(tol)?;

    let mut x = vec![T::zero(); n];
    for r in 0..m {
        if t.basis[r] < n {
            x[t.basis[r]] = t.rows[r][total];
        }
    }
    let objective = x.iter().zip(c).map(|(&xi, &ci)| xi * ci).sum();
    Ok(LpSolution { x, objective })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_equality_lp() {
        // min x0 + x1  s.t.  x0 + x1 = 1
        let sol = solve_lp::<f64>(&[vec![1.0, 1.0]], &[1.0], &[1.0, 1.0]).unwrap();
        assert!((sol.objective - 1.0).abs() < 1e-12);
    }

    #[test]
    fn l1_style_sign_split() {
        // minimize |q| representation: q = u - v with target q = -2
        // min u + v  s.t.  u - v = -2
        let sol = solve_lp::<f64>(&[vec![1.0, -1.0]], &[-2.0], &[1.0, 1.0]).unwrap();
        assert!((sol.objective - 2.0).abs() < 1e-12);
        assert!((sol.x[0] - 0.0).abs() < 1e-12);
        assert!((sol.x[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn two_constraints() {
        // min 2a + b  s.t. a + b = 3, a - b = 1  =>  a=2, b=1, obj 5
        let sol = solve_lp::<f64>(
            &[vec![1.0, 1.0], vec![1.0, -1.0]],
            &[3.0, 1.0],
            &[2.0, 1.0],
        )
        .unwrap();
        assert!((sol.x[0] - 2.0).abs() < 1e-12);
        assert!((sol.x[1] - 1.0).abs() < 1e-12);
        assert!((sol.objective - 5.0).abs() < 1e-12);
    }

    #[test]
    fn infeasible_detected() {
        // x = 1 and x = 2 cannot both hold
        let r = solve_lp::<f64>(&[vec![1.0], vec![1.0]], &[1.0, 2.0], &[1.0]);
        assert_eq!(r.unwrap_err(), LpError::Infeasible);
    }

    #[test]
    fn unbounded_detected() {
        // min -x s.t. 0·x = 0 (x free to grow)
        let r = solve_lp::<f64>(&[vec![0.0]], &[0.0], &[-1.0]);
        assert_eq!(r.unwrap_err(), LpError::Unbounded);
    }

    #[test]
    fn redundant_rows_are_tolerated() {
        // duplicated constraint row
        let sol = solve_lp::<f64>(
            &[vec![1.0, 1.0], vec![1.0, 1.0]],
            &[1.0, 1.0],
            &[1.0, 2.0],
        )
        .unwrap();
        assert!((sol.objective - 1.0).abs() < 1e-12);
        assert!((sol.x[0] - 1.0).abs() < 1e-12);
    }
}
