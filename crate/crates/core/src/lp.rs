//! Exact two-phase simplex with Bland's rule.

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Rational, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Max,
    Min,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coefficients: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coefficients: Vec<Rational>, relation: Relation, rhs: Rational) -> Self {
        Constraint {
            coefficients,
            relation,
            rhs,
        }
    }
}

/// Variable bounds; `None` means infinite in that direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bound {
    pub lower: Option<Rational>,
    pub upper: Option<Rational>,
}

impl Bound {
    pub fn non_negative() -> Self {
        Bound {
            lower: Some(Rational::ZERO),
            upper: None,
        }
    }

    pub fn free() -> Self {
        Bound {
            lower: None,
            upper: None,
        }
    }

    pub fn between(lower: Rational, upper: Rational) -> Self {
        Bound {
            lower: Some(lower),
            upper: Some(upper),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearProgram {
    pub sense: Sense,
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
    pub bounds: Vec<Bound>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    pub status: Status,
    /// Primal values in the original variables (empty unless optimal).
    pub values: Vec<Rational>,
    pub objective: Rational,
    /// Basic columns of the standard form at the final tableau.
    pub basis: Vec<usize>,
    /// An improving direction in the original variables when unbounded.
    pub ray: Option<Vec<Rational>>,
}

/// How one original variable is expressed in standard-form columns:
/// `x = offset + Σ sign · x'_col`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarMap {
    pub offset: Rational,
    pub terms: Vec<(usize, i8)>,
}

/// `min cᵀx` subject to `A x = b`, `x ≥ 0`, `b ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardForm {
    pub a: Vec<Vec<Rational>>,
    pub b: Vec<Rational>,
    pub c: Vec<Rational>,
    /// Constant term added to the objective by variable shifts.
    pub c0: Rational,
    pub vars: Vec<VarMap>,
    /// For each row, a column usable as an initial basic variable.
    pub initial_basic: Vec<Option<usize>>,
}

impl LinearProgram {
    pub fn new(sense: Sense, objective: Vec<Rational>) -> Self {
        let n = objective.len();
        LinearProgram {
            sense,
            objective,
            constraints: Vec::new(),
            bounds: vec![Bound::non_negative(); n],
        }
    }

    pub fn n_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn add_constraint(
        &mut self,
        coefficients: Vec<Rational>,
        relation: Relation,
        rhs: Rational,
    ) {
        self.constraints.push(Constraint {
            coefficients,
            relation,
            rhs,
        });
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n_vars();
        if self.bounds.len() != n {
            return Err(Error::ShapeMismatch {
                what: "bounds",
                expected: n,
                found: self.bounds.len(),
            });
        }
        for c in &self.constraints {
            if c.coefficients.len() != n {
                return Err(Error::ShapeMismatch {
                    what: "constraint row",
                    expected: n,
                    found: c.coefficients.len(),
                });
            }
        }
        for (j, b) in self.bounds.iter().enumerate() {
            if let (Some(l), Some(u)) = (&b.lower, &b.upper) {
                if l > u {
                    return Err(Error::InvalidBounds { var: j });
                }
            }
        }
        Ok(())
    }

    /// Converts to equality form with non-negative variables. Upper bounds
    /// become rows, free variables are split into a difference.
    pub fn standard_form(&self) -> Result<StandardForm> {
        self.validate()?;
        let n = self.n_vars();
        let mut vars = Vec::with_capacity(n);
        let mut ncols = 0;
        // Extra rows `x' ≤ u - l` from doubly bounded variables.
        let mut bound_rows: Vec<(usize, Rational)> = Vec::new();
        for b in &self.bounds {
            let map = match (&b.lower, &b.upper) {
                (Some(l), u) => {
                    if let Some(u) = u {
                        bound_rows.push((ncols, u - l));
                    }
                    ncols += 1;
                    VarMap {
                        offset: l.clone(),
                        terms: vec![(ncols - 1, 1)],
                    }
                }
                (None, Some(u)) => {
                    ncols += 1;
                    VarMap {
                        offset: u.clone(),
                        terms: vec![(ncols - 1, -1)],
                    }
                }
                (None, None) => {
                    ncols += 2;
                    VarMap {
                        offset: Rational::ZERO,
                        terms: vec![(ncols - 2, 1), (ncols - 1, -1)],
                    }
                }
            };
            vars.push(map);
        }
        let n_struct = ncols;

        let mut rows: Vec<(Vec<Rational>, Relation, Rational)> = Vec::new();
        for con in &self.constraints {
            let mut row = vec![Rational::ZERO; n_struct];
            let mut rhs = con.rhs.clone();
            for (j, a) in con.coefficients.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                rhs -= a * &vars[j].offset;
                for &(col, s) in &vars[j].terms {
                    if s > 0 {
                        row[col] += a;
                    } else {
                        row[col] -= a;
                    }
                }
            }
            rows.push((row, con.relation, rhs));
        }
        for (col, cap) in bound_rows {
            let mut row = vec![Rational::ZERO; n_struct];
            row[col] = Rational::ONE;
            rows.push((row, Relation::Le, cap));
        }

        let n_slack = rows.iter().filter(|r| r.1 != Relation::Eq).count();
        let total = n_struct + n_slack;
        let mut a = Vec::with_capacity(rows.len());
        let mut b = Vec::with_capacity(rows.len());
        let mut initial_basic = Vec::with_capacity(rows.len());
        let mut slack = n_struct;
        for (mut row, rel, mut rhs) in rows {
            row.resize(total, Rational::ZERO);
            let slack_col = match rel {
                Relation::Le => {
                    row[slack] = Rational::ONE;
                    slack += 1;
                    Some(slack - 1)
                }
                Relation::Ge => {
                    row[slack] = -Rational::ONE;
                    slack += 1;
                    Some(slack - 1)
                }
                Relation::Eq => None,
            };
            if rhs.is_negative() {
                for v in row.iter_mut() {
                    if !v.is_zero() {
                        *v = -&*v;
                    }
                }
                rhs = -rhs;
            }
            initial_basic.push(slack_col.filter(|&s| row[s] == Rational::ONE));
            a.push(row);
            b.push(rhs);
        }

        let mut c = vec![Rational::ZERO; total];
        let mut c0 = Rational::ZERO;
        for (j, cj) in self.objective.iter().enumerate() {
            if cj.is_zero() {
                continue;
            }
            let cj = match self.sense {
                Sense::Min => cj.clone(),
                Sense::Max => -cj,
            };
            c0 += &cj * &vars[j].offset;
            for &(col, s) in &vars[j].terms {
                if s > 0 {
                    c[col] += &cj;
                } else {
                    c[col] -= &cj;
                }
            }
        }
        Ok(StandardForm {
            a,
            b,
            c,
            c0,
            vars,
            initial_basic,
        })
    }
}

impl StandardForm {
    pub fn n_cols(&self) -> usize {
        self.c.len()
    }

    /// Maps a standard-form point back to the original variables.
    pub fn original_values(&self, x: &[Rational]) -> Vec<Rational> {
        self.vars
            .iter()
            .map(|m| {
                let mut v = m.offset.clone();
                for &(col, s) in &m.terms {
                    if s > 0 {
                        v += &x[col];
                    } else {
                        v -= &x[col];
                    }
                }
                v
            })
            .collect()
    }

    fn original_direction(&self, d: &[Rational]) -> Vec<Rational> {
        self.vars
            .iter()
            .map(|m| {
                let mut v = Rational::ZERO;
                for &(col, s) in &m.terms {
                    if s > 0 {
                        v += &d[col];
                    } else {
                        v -= &d[col];
                    }
                }
                v
            })
            .collect()
    }
}

struct Tableau {
    /// `m` rows of `n + 1` entries; the last entry is the right-hand side.
    rows: Vec<Vec<Rational>>,
    /// Reduced costs, with the negated objective value in the last slot.
    obj: Vec<Rational>,
    basis: Vec<usize>,
    n: usize,
}

enum Outcome {
    Optimal,
    Unbounded(usize),
}

impl Tableau {
    fn pivot(&mut self, r: usize, col: usize) {
        let inv = self.rows[r][col].recip();
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let nz: Vec<usize> = (0..=self.n)
            .filter(|&k| !self.rows[r][k].is_zero())
            .collect();
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for &k in &nz {
                row[k] -= &f * &prow[k];
            }
        }
        if !self.obj[col].is_zero() {
            let f = self.obj[col].clone();
            for &k in &nz {
                self.obj[k] -= &f * &prow[k];
            }
        }
        self.basis[r] = col;
    }

    /// Sets the reduced-cost row for cost vector `c` (length `n`).
    fn price(&mut self, c: &[Rational]) {
        let mut obj: Vec<Rational> = c.to_vec();
        obj.push(Rational::ZERO);
        for (i, &bv) in self.basis.iter().enumerate() {
            if c[bv].is_zero() {
                continue;
            }
            let cb = &c[bv];
            for k in 0..=self.n {
                if !self.rows[i][k].is_zero() {
                    obj[k] -= cb * &self.rows[i][k];
                }
            }
        }
        self.obj = obj;
    }

    /// Runs primal simplex with Bland's rule over columns `< limit`.
    fn run(&mut self, limit: usize) -> Outcome {
        loop {
            let Some(enter) = (0..limit).find(|&j| self.obj[j].is_negative()) else {
                return Outcome::Optimal;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[enter].is_positive() {
                    continue;
                }
                let ratio = &row[self.n] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                None => return Outcome::Unbounded(enter),
                Some((r, _)) => self.pivot(r, enter),
            }
        }
    }

    fn point(&self) -> Vec<Rational> {
        let mut x = vec![Rational::ZERO; self.n];
        for (i, &bv) in self.basis.iter().enumerate() {
            x[bv] = self.rows[i][self.n].clone();
        }
        x
    }
}

/// Phase 1. On success returns a feasible tableau over the standard-form
/// columns only (artificials removed, redundant rows dropped).
fn phase_one(sf: &StandardForm) -> Option<Tableau> {
    let m = sf.a.len();
    let n = sf.n_cols();
    let n_art = sf.initial_basic.iter().filter(|b| b.is_none()).count();
    let width = n + n_art;
    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut art = n;
    for i in 0..m {
        let mut row = sf.a[i].clone();
        row.resize(width, Rational::ZERO);
        match sf.initial_basic[i] {
            Some(col) => basis.push(col),
            None => {
                row[art] = Rational::ONE;
                basis.push(art);
                art += 1;
            }
        }
        row.push(sf.b[i].clone());
        rows.push(row);
    }
    let mut t = Tableau {
        rows,
        obj: Vec::new(),
        basis,
        n: width,
    };
    if n_art > 0 {
        let mut c1 = vec![Rational::ZERO; width];
        for v in c1.iter_mut().skip(n) {
            *v = Rational::ONE;
        }
        t.price(&c1);
        // Phase 1 is bounded below by zero.
        t.run(width);
        if !t.obj[width].is_zero() {
            return None;
        }
        // Drive zero-valued artificials out of the basis.
        let mut i = 0;
        while i < t.rows.len() {
            if t.basis[i] < n {
                i += 1;
                continue;
            }
            match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => {
                    t.pivot(i, j);
                    i += 1;
                }
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                }
            }
        }
        for row in t.rows.iter_mut() {
            let rhs = row.pop().unwrap();
            row.truncate(n);
            row.push(rhs);
        }
        t.n = n;
    }
    Some(t)
}

pub fn solve(lp: &LinearProgram) -> Result<LpSolution> {
    let sf = lp.standard_form()?;
    let Some(mut t) = phase_one(&sf) else {
        return Ok(LpSolution {
            status: Status::Infeasible,
            values: Vec::new(),
            objective: Rational::ZERO,
            basis: Vec::new(),
            ray: None,
        });
    };
    t.price(&sf.c);
    let n = sf.n_cols();
    match t.run(n) {
        Outcome::Optimal => {
            let x = t.point();
            let values = sf.original_values(&x);
            let objective = lp
                .objective
                .iter()
                .zip(&values)
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, v)| c * v)
                .sum();
            Ok(LpSolution {
                status: Status::Optimal,
                values,
                objective,
                basis: t.basis,
                ray: None,
            })
        }
        Outcome::Unbounded(enter) => {
            let mut d = vec![Rational::ZERO; n];
            d[enter] = Rational::ONE;
            for (i, &bv) in t.basis.iter().enumerate() {
                d[bv] = -&t.rows[i][enter];
            }
            Ok(LpSolution {
                status: Status::Unbounded,
                values: Vec::new(),
                objective: Rational::ZERO,
                basis: t.basis,
                ray: Some(sf.original_direction(&d)),
            })
        }
    }
}

/// Some vertex of `{x : constraints, bounds}`, or `None` if it is empty.
pub fn feasible_point(
    constraints: &[Constraint],
    bounds: &[Bound],
) -> Result<Option<Vec<Rational>>> {
    let lp = LinearProgram {
        sense: Sense::Min,
        objective: vec![Rational::ZERO; bounds.len()],
        constraints: constraints.to_vec(),
        bounds: bounds.to_vec(),
    };
    let sf = lp.standard_form()?;
    Ok(phase_one(&sf).map(|t| sf.original_values(&t.point())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{kernel_basis, SparseMatrix};
    use crate::{int, ratio};

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn box_maximum() {
        let mut lp = LinearProgram::new(Sense::Max, ints(&[1, 1]));
        lp.add_constraint(ints(&[1, 0]), Relation::Le, int(1));
        lp.add_constraint(ints(&[0, 1]), Relation::Le, int(1));
        let s = solve(&lp).unwrap();
        assert_eq!(s.status, Status::Optimal);
        assert_eq!(s.objective, int(2));
        assert_eq!(s.values, ints(&[1, 1]));
    }

    #[test]
    fn unbounded_with_ray() {
        let lp = LinearProgram::new(Sense::Max, ints(&[1]));
        let s = solve(&lp).unwrap();
        assert_eq!(s.status, Status::Unbounded);
        assert_eq!(s.ray, Some(ints(&[1])));
    }

    #[test]
    fn infeasible() {
        let mut lp = LinearProgram::new(Sense::Min, ints(&[1]));
        lp.add_constraint(ints(&[1]), Relation::Eq, int(-1));
        assert_eq!(solve(&lp).unwrap().status, Status::Infeasible);
    }

    #[test]
    fn feasible_point_examples() {
        let c = [Constraint::new(ints(&[1, 1]), Relation::Eq, int(1))];
        let x = feasible_point(&c, &[Bound::non_negative(), Bound::non_negative()])
            .unwrap()
            .unwrap();
        assert_eq!(&x[0] + &x[1], int(1));
        assert!(x.iter().all(|v| !v.is_negative()));
        let c = [Constraint::new(ints(&[1]), Relation::Eq, int(-1))];
        assert!(feasible_point(&c, &[Bound::non_negative()])
            .unwrap()
            .is_none());
    }

    #[test]
    fn free_and_bounded_variables() {
        // min x - y, x free with x ≥ -3 via row, y ∈ [-1, 2]
        let mut lp = LinearProgram::new(Sense::Min, ints(&[1, -1]));
        lp.bounds = vec![Bound::free(), Bound::between(int(-1), int(2))];
        lp.add_constraint(ints(&[1, 0]), Relation::Ge, int(-3));
        let s = solve(&lp).unwrap();
        assert_eq!(s.objective, int(-5));
        assert_eq!(s.values, ints(&[-3, 2]));
    }

    #[test]
    fn fractional_optimum() {
        // max x + y s.t. 2x + y ≤ 2, x + 2y ≤ 2
        let mut lp = LinearProgram::new(Sense::Max, ints(&[1, 1]));
        lp.add_constraint(ints(&[2, 1]), Relation::Le, int(2));
        lp.add_constraint(ints(&[1, 2]), Relation::Le, int(2));
        let s = solve(&lp).unwrap();
        assert_eq!(s.objective, ratio(4, 3));
        assert_eq!(s.values, vec![ratio(2, 3), ratio(2, 3)]);
    }

    #[test]
    fn degenerate_duplicates_terminate() {
        // Beale's cycling example plus duplicated rows.
        let mut lp = LinearProgram::new(
            Sense::Min,
            vec![ratio(-3, 4), int(150), ratio(-1, 50), int(6)],
        );
        let r1 = vec![ratio(1, 4), int(-60), ratio(-1, 25), int(9)];
        let r2 = vec![ratio(1, 2), int(-90), ratio(-1, 50), int(3)];
        for _ in 0..2 {
            lp.add_constraint(r1.clone(), Relation::Le, int(0));
            lp.add_constraint(r2.clone(), Relation::Le, int(0));
        }
        lp.add_constraint(ints(&[0, 0, 1, 0]), Relation::Le, int(1));
        let s = solve(&lp).unwrap();
        assert_eq!(s.status, Status::Optimal);
        assert_eq!(s.objective, ratio(-1, 20));
        let sf = lp.standard_form().unwrap();
        let cols = SparseMatrix::from_dense(&sf.a).select_columns(&s.basis);
        assert!(kernel_basis(&cols).is_empty());
    }

    #[test]
    fn redundant_equalities_are_dropped() {
        let mut lp = LinearProgram::new(Sense::Max, ints(&[1, 2]));
        for _ in 0..3 {
            lp.add_constraint(ints(&[1, 1]), Relation::Eq, int(1));
        }
        let s = solve(&lp).unwrap();
        assert_eq!(s.values, ints(&[0, 1]));
        assert_eq!(s.basis.len(), 1);
    }
}
