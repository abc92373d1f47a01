//! Small exact linear programs: two-phase simplex with Bland's rule.

use num_traits::{One, Signed, Zero};

use super::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rel {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub rel: Rel,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rational>, rel: Rel, rhs: Rational) -> Self {
        Constraint { coeffs, rel, rhs }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { value: Rational, x: Vec<Rational> },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        self.rhs[r] *= &inv;
        let prow = self.rows[r].clone();
        let prhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for j in 0..self.width {
                if !prow[j].is_zero() {
                    self.rows[i][j] -= &f * &prow[j];
                }
            }
            self.rhs[i] -= &f * &prhs;
        }
        self.basis[r] = c;
    }

    /// Maximizes `obj · x` over the current basis, using only columns in `allowed`.
    /// Returns false when unbounded.
    fn optimize(&mut self, obj: &[Rational], allowed: &[bool]) -> bool {
        loop {
            // reduced cost d_j = obj_j - Σ_i obj_{basis_i} row_i[j]
            let mut entering = None;
            for j in 0..self.width {
                if !allowed[j] || self.basis.contains(&j) {
                    continue;
                }
                let mut d = obj[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !obj[b].is_zero() && !self.rows[i][j].is_zero() {
                        d -= &obj[b] * &self.rows[i][j];
                    }
                }
                if d.is_positive() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(c) = entering else { return true };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                None => return false,
                Some((r, _)) => self.pivot(r, c),
            }
        }
    }
}

/// Maximizes `c · x` subject to the constraints and `x ≥ 0`.
pub fn maximize(c: &[Rational], cons: &[Constraint]) -> LpOutcome {
    let n = c.len();
    let m = cons.len();
    let n_slack = cons.iter().filter(|k| k.rel != Rel::Eq).count();
    let n_art = cons
        .iter()
        .filter(|k| {
            let neg = k.rhs.is_negative();
            match k.rel {
                Rel::Eq => true,
                Rel::Le => neg,
                Rel::Ge => !neg,
            }
        })
        .count();
    let width = n + n_slack + n_art;
    let mut t = Tableau {
        rows: Vec::with_capacity(m),
        rhs: Vec::with_capacity(m),
        basis: Vec::with_capacity(m),
        width,
    };
    let mut slack = n;
    let mut art = n + n_slack;
    let mut is_art = vec![false; width];
    for k in cons {
        assert_eq!(k.coeffs.len(), n, "constraint width");
        let flip = k.rhs.is_negative();
        let mut row = vec![Rational::zero(); width];
        for (j, a) in k.coeffs.iter().enumerate() {
            row[j] = if flip { -a.clone() } else { a.clone() };
        }
        let rhs = if flip { -k.rhs.clone() } else { k.rhs.clone() };
        let rel = match (k.rel, flip) {
            (Rel::Le, true) => Rel::Ge,
            (Rel::Ge, true) => Rel::Le,
            (r, _) => r,
        };
        let basic = match rel {
            Rel::Le => {
                row[slack] = Rational::one();
                slack += 1;
                slack - 1
            }
            Rel::Ge => {
                row[slack] = -Rational::one();
                slack += 1;
                row[art] = Rational::one();
                is_art[art] = true;
                art += 1;
                art - 1
            }
            Rel::Eq => {
                row[art] = Rational::one();
                is_art[art] = true;
                art += 1;
                art - 1
            }
        };
        t.rows.push(row);
        t.rhs.push(rhs);
        t.basis.push(basic);
    }

    if n_art > 0 {
        let obj1: Vec<Rational> = (0..width)
            .map(|j| if is_art[j] { -Rational::one() } else { Rational::zero() })
            .collect();
        let all = vec![true; width];
        t.optimize(&obj1, &all);
        let infeas: Rational = t
            .basis
            .iter()
            .zip(&t.rhs)
            .filter(|(b, _)| is_art[**b])
            .map(|(_, r)| r.clone())
            .sum();
        if infeas.is_positive() {
            return LpOutcome::Infeasible;
        }
        // Drive zero-level artificials out of the basis; drop redundant rows.
        let mut i = 0;
        while i < t.rows.len() {
            if is_art[t.basis[i]] {
                match (0..width).find(|&j| !is_art[j] && !t.rows[i][j].is_zero()) {
                    Some(j) => {
                        t.pivot(i, j);
                        i += 1;
                    }
                    None => {
                        t.rows.remove(i);
                        t.rhs.remove(i);
                        t.basis.remove(i);
                    }
                }
            } else {
                i += 1;
            }
        }
    }

    let mut obj = vec![Rational::zero(); width];
    obj[..n].clone_from_slice(c);
    let allowed: Vec<bool> = is_art.iter().map(|a| !a).collect();
    if !t.optimize(&obj, &allowed) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &b) in t.basis.iter().enumerate() {
        if b < n {
            x[b] = t.rhs[i].clone();
        }
    }
    let value = c.iter().zip(&x).map(|(a, b)| a * b).sum();
    LpOutcome::Optimal { value, x }
}

/// Any feasible point of the constraint system with `x ≥ 0`.
pub fn feasible_point(n: usize, cons: &[Constraint]) -> Option<Vec<Rational>> {
    match maximize(&vec![Rational::zero(); n], cons) {
        LpOutcome::Optimal { x, .. } => Some(x),
        _ => None,
    }
}
