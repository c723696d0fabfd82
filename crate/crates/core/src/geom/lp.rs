//! Small LPs behind the box and polytope predicates, solved with `minilp`.

use minilp::{ComparisonOp, OptimizationDirection, Problem, Variable};

use super::{FlatRef, TOL};
use crate::{Error, Result};

fn free_vars(problem: &mut Problem, k: usize) -> Vec<Variable> {
    (0..k).map(|_| problem.add_var(0.0, (f64::NEG_INFINITY, f64::INFINITY))).collect()
}

/// Feasibility of `lo - TOL <= base + B t <= hi + TOL` over `t in R^k`.
pub(crate) fn flat_meets_box(flat: FlatRef<'_>, lo: &[f64], hi: &[f64]) -> Result<bool> {
    let mut problem = Problem::new(OptimizationDirection::Minimize);
    let t = free_vars(&mut problem, flat.k());
    let base = flat.base();
    for i in 0..flat.dim() {
        let row: Vec<(Variable, f64)> = t
            .iter()
            .zip(flat.basis())
            .filter(|(_, v)| v[i] != 0.0)
            .map(|(&var, v)| (var, v[i]))
            .collect();
        let (l, h) = (lo[i] - TOL - base[i], hi[i] + TOL - base[i]);
        if row.is_empty() {
            if l > 0.0 || h < 0.0 {
                return Ok(false);
            }
            continue;
        }
        problem.add_constraint(row.as_slice(), ComparisonOp::Ge, l);
        problem.add_constraint(row.as_slice(), ComparisonOp::Le, h);
    }
    match problem.solve() {
        Ok(_) => Ok(true),
        Err(minilp::Error::Infeasible) => Ok(false),
        Err(e) => Err(Error::Numerical(format!("box LP: {e}"))),
    }
}

/// Smallest L1 residual of `sum lambda_v v - B t = base` over convex
/// weights `lambda` and free `t`. Zero iff the flat meets the hull.
pub(crate) fn hull_residual(vertices: &[&[f64]], flat: FlatRef<'_>) -> Result<f64> {
    let dim = flat.dim();
    let mut problem = Problem::new(OptimizationDirection::Minimize);
    let lambda: Vec<Variable> = vertices.iter().map(|_| problem.add_var(0.0, (0.0, f64::INFINITY))).collect();
    let t = free_vars(&mut problem, flat.k());
    let base = flat.base();
    for i in 0..dim {
        let plus = problem.add_var(1.0, (0.0, f64::INFINITY));
        let minus = problem.add_var(1.0, (0.0, f64::INFINITY));
        let mut row: Vec<(Variable, f64)> = lambda
            .iter()
            .zip(vertices)
            .filter(|(_, v)| v[i] != 0.0)
            .map(|(&var, v)| (var, v[i]))
            .collect();
        row.extend(t.iter().zip(flat.basis()).filter(|(_, v)| v[i] != 0.0).map(|(&var, v)| (var, -v[i])));
        row.push((plus, 1.0));
        row.push((minus, -1.0));
        problem.add_constraint(row.as_slice(), ComparisonOp::Eq, base[i]);
    }
    let ones: Vec<(Variable, f64)> = lambda.iter().map(|&v| (v, 1.0)).collect();
    problem.add_constraint(ones.as_slice(), ComparisonOp::Eq, 1.0);
    let sol = problem.solve().map_err(|e| Error::Numerical(format!("hull LP: {e}")))?;
    Ok(sol.objective().max(0.0))
}
