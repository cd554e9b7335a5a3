//! Exact simplex method over the rationals.
//!
//! The engine works on standard form `max c·z  s.t.  M z = b, z ≥ 0` with a
//! two-phase tableau and Bland's rule. Every answer carries a certificate
//! (dual solution, Farkas multipliers, or an improving ray) that is checked by
//! substitution before it is returned.

use std::collections::BTreeSet;

use super::matrix::Matrix;
use super::rational::{dot, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LpError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("linear program is infeasible")]
    Infeasible(InfeasibilityCertificate),
    #[error("certificate failed verification: {0}")]
    CertificateRejected(&'static str),
}

/// Outcome of a standard-form solve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StandardOutcome {
    /// `dual` satisfies `dual·M ≥ c` and `dual·b = value`.
    Optimal {
        point: Vec<Rational>,
        value: Rational,
        dual: Vec<Rational>,
    },
    /// `ray ≥ 0`, `M ray = 0`, `c·ray > 0`.
    Unbounded {
        point: Vec<Rational>,
        ray: Vec<Rational>,
    },
    /// `farkas·M ≥ 0` and `farkas·b < 0`.
    Infeasible { farkas: Vec<Rational> },
}

/// Multipliers `y ≥ 0` with `y A = 0` and either `y·b < 0`, or `y·b ≤ 0` with
/// positive weight on some strict row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfeasibilityCertificate {
    pub multipliers: Vec<Rational>,
}

impl InfeasibilityCertificate {
    pub fn verify(&self, a: &Matrix, b: &[Rational], strict_rows: &BTreeSet<usize>) -> bool {
        let y = &self.multipliers;
        if y.len() != a.rows() || y.iter().any(Rational::is_negative) {
            return false;
        }
        if !a.vec_mul(y).iter().all(Rational::is_zero) {
            return false;
        }
        let yb = dot(y, b);
        if yb.is_negative() {
            return true;
        }
        yb.is_zero() && strict_rows.iter().any(|&i| y[i].is_positive())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(Vec<Rational>),
    Infeasible(InfeasibilityCertificate),
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Optimum {
    pub value: Rational,
    pub point: Vec<Rational>,
    /// `dual ≥ 0`, `dual·A = c`, `dual·b = value`.
    pub dual: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MaxOutcome {
    Optimal(Optimum),
    Unbounded {
        point: Vec<Rational>,
        ray: Vec<Rational>,
    },
}

struct Tableau {
    /// Number of structural columns; artificial columns follow.
    n: usize,
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    reduced: Vec<Rational>,
    value: Rational,
}

enum Phase {
    Optimal,
    Unbounded(usize),
}

impl Tableau {
    fn pivot(&mut self, r: usize, j: usize) {
        let inv = self.rows[r][j].recip();
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        self.rhs[r] *= &inv;
        let prow = self.rows[r].clone();
        let prhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][j].is_zero() {
                continue;
            }
            let f = self.rows[i][j].clone();
            for (x, p) in self.rows[i].iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &(&f * p);
                }
            }
            self.rhs[i] -= &(&f * &prhs);
        }
        if !self.reduced[j].is_zero() {
            let f = self.reduced[j].clone();
            for (x, p) in self.reduced.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &(&f * p);
                }
            }
            self.value += &(&f * &prhs);
        }
        self.basis[r] = j;
    }

    /// Bland's rule over the first `allowed` columns.
    fn run(&mut self, allowed: usize) -> Phase {
        loop {
            let Some(j) = (0..allowed).find(|&j| self.reduced[j].is_positive()) else {
                return Phase::Optimal;
            };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let t = &self.rows[i][j];
                if !t.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / t;
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
                Some((r, _)) => self.pivot(r, j),
                None => return Phase::Unbounded(j),
            }
        }
    }

    fn point(&self) -> Vec<Rational> {
        let mut z = vec![Rational::zero(); self.n];
        for (i, &bj) in self.basis.iter().enumerate() {
            if bj < self.n {
                z[bj] = self.rhs[i].clone();
            }
        }
        z
    }

    /// `cost_B B^{-1}` read from the artificial columns, which started as the identity.
    fn multipliers(&self, cost: impl Fn(usize) -> Rational) -> Vec<Rational> {
        let m = self.rows.len();
        let cb: Vec<Rational> = self.basis.iter().map(|&j| cost(j)).collect();
        (0..m)
            .map(|k| {
                let mut s = Rational::zero();
                for (r, c) in cb.iter().enumerate() {
                    let t = &self.rows[r][self.n + k];
                    if !c.is_zero() && !t.is_zero() {
                        s += &(c * t);
                    }
                }
                s
            })
            .collect()
    }
}

/// Solves `max c·z  s.t.  M z = b, z ≥ 0` exactly.
pub fn solve_standard(
    c: &[Rational],
    m: &Matrix,
    b: &[Rational],
) -> Result<StandardOutcome, LpError> {
    if c.len() != m.cols() || b.len() != m.rows() {
        return Err(LpError::DimensionMismatch(format!(
            "matrix is {}x{}, cost has {} entries, rhs has {}",
            m.rows(),
            m.cols(),
            c.len(),
            b.len()
        )));
    }
    let rows = m.rows();
    let n = m.cols();
    let sign: Vec<bool> = b.iter().map(Rational::is_negative).collect();

    let mut t_rows = Vec::with_capacity(rows);
    let mut rhs = Vec::with_capacity(rows);
    for i in 0..rows {
        let mut row = Vec::with_capacity(n + rows);
        for v in m.row(i) {
            row.push(if sign[i] { -v } else { v.clone() });
        }
        for k in 0..rows {
            row.push(if k == i {
                Rational::one()
            } else {
                Rational::zero()
            });
        }
        t_rows.push(row);
        rhs.push(if sign[i] { -&b[i] } else { b[i].clone() });
    }
    let mut reduced = vec![Rational::zero(); n + rows];
    for row in &t_rows {
        for (j, v) in row.iter().take(n).enumerate() {
            if !v.is_zero() {
                reduced[j] += v;
            }
        }
    }
    let value = -rhs.iter().sum::<Rational>();
    let mut tab = Tableau {
        n,
        rows: t_rows,
        rhs,
        basis: (n..n + rows).collect(),
        reduced,
        value,
    };

    // Phase 1 is bounded above by zero, so it always terminates optimal.
    let _ = tab.run(n);
    if tab.value.is_negative() {
        let pi = tab.multipliers(|j| {
            if j >= n {
                -Rational::one()
            } else {
                Rational::zero()
            }
        });
        let farkas = signed(&pi, &sign);
        let out = StandardOutcome::Infeasible { farkas };
        check_standard(c, m, b, &out)?;
        return Ok(out);
    }

    // Drive zero-level artificials out of the basis where possible.
    for r in 0..rows {
        if tab.basis[r] >= n {
            if let Some(j) = (0..n).find(|&j| !tab.rows[r][j].is_zero()) {
                tab.pivot(r, j);
            }
        }
    }

    let cost = |j: usize| {
        if j < n {
            c[j].clone()
        } else {
            Rational::zero()
        }
    };
    let mut reduced = Vec::with_capacity(n + rows);
    for j in 0..n + rows {
        let mut d = cost(j);
        for (r, &bj) in tab.basis.iter().enumerate() {
            let cb = cost(bj);
            if !cb.is_zero() && !tab.rows[r][j].is_zero() {
                d -= &(&cb * &tab.rows[r][j]);
            }
        }
        reduced.push(d);
    }
    tab.reduced = reduced;
    tab.value = tab
        .basis
        .iter()
        .zip(&tab.rhs)
        .map(|(&bj, v)| cost(bj) * v)
        .sum();

    let out = match tab.run(n) {
        Phase::Optimal => {
            let pi = tab.multipliers(cost);
            StandardOutcome::Optimal {
                point: tab.point(),
                value: tab.value.clone(),
                dual: signed(&pi, &sign),
            }
        }
        Phase::Unbounded(j) => {
            let mut ray = vec![Rational::zero(); n];
            ray[j] = Rational::one();
            for (r, &bj) in tab.basis.iter().enumerate() {
                if bj < n {
                    ray[bj] = -&tab.rows[r][j];
                }
            }
            StandardOutcome::Unbounded {
                point: tab.point(),
                ray,
            }
        }
    };
    check_standard(c, m, b, &out)?;
    Ok(out)
}

fn signed(pi: &[Rational], flipped: &[bool]) -> Vec<Rational> {
    pi.iter()
        .zip(flipped)
        .map(|(p, &f)| if f { -p } else { p.clone() })
        .collect()
}

fn check_standard(
    c: &[Rational],
    m: &Matrix,
    b: &[Rational],
    out: &StandardOutcome,
) -> Result<(), LpError> {
    let feasible = |z: &[Rational]| {
        z.len() == m.cols() && z.iter().all(|v| !v.is_negative()) && m.mul_vec(z) == b
    };
    match out {
        StandardOutcome::Optimal { point, value, dual } => {
            if !feasible(point) {
                return Err(LpError::CertificateRejected("optimal point infeasible"));
            }
            if dot(c, point) != *value || dot(dual, b) != *value {
                return Err(LpError::CertificateRejected("duality gap"));
            }
            if m.vec_mul(dual).iter().zip(c).any(|(yc, cj)| yc < cj) {
                return Err(LpError::CertificateRejected("dual infeasible"));
            }
        }
        StandardOutcome::Unbounded { point, ray } => {
            if !feasible(point) {
                return Err(LpError::CertificateRejected("unbounded base point infeasible"));
            }
            if ray.iter().any(Rational::is_negative)
                || !m.mul_vec(ray).iter().all(Rational::is_zero)
                || !dot(c, ray).is_positive()
            {
                return Err(LpError::CertificateRejected("ray does not improve"));
            }
        }
        StandardOutcome::Infeasible { farkas } => {
            if m.vec_mul(farkas).iter().any(Rational::is_negative)
                || !dot(farkas, b).is_negative()
            {
                return Err(LpError::CertificateRejected("farkas multipliers invalid"));
            }
        }
    }
    Ok(())
}

fn check_dims(a: &Matrix, b: &[Rational], c: Option<&[Rational]>) -> Result<(), LpError> {
    if b.len() != a.rows() {
        return Err(LpError::DimensionMismatch(format!(
            "matrix has {} rows but rhs has {} entries",
            a.rows(),
            b.len()
        )));
    }
    if let Some(c) = c {
        if c.len() != a.cols() {
            return Err(LpError::DimensionMismatch(format!(
                "matrix has {} columns but objective has {} entries",
                a.cols(),
                c.len()
            )));
        }
    }
    Ok(())
}

/// `[A | -A | I]`, splitting free variables and adding slacks.
fn to_standard(a: &Matrix) -> Matrix {
    let (m, n) = (a.rows(), a.cols());
    let mut s = Matrix::zeros(m, 2 * n + m);
    for i in 0..m {
        for j in 0..n {
            let v = a.get(i, j);
            if !v.is_zero() {
                s.set(i, j, v.clone());
                s.set(i, n + j, -v);
            }
        }
        s.set(i, 2 * n + i, Rational::one());
    }
    s
}

fn recombine(z: &[Rational], n: usize) -> Vec<Rational> {
    (0..n).map(|j| &z[j] - &z[n + j]).collect()
}

/// Maximizes `c·x` over `{x : A x ≤ b}` with `x` free.
pub fn lp_maximize(c: &[Rational], a: &Matrix, b: &[Rational]) -> Result<MaxOutcome, LpError> {
    check_dims(a, b, Some(c))?;
    let n = a.cols();
    let s = to_standard(a);
    let mut cs: Vec<Rational> = c.to_vec();
    cs.extend(c.iter().map(|v| -v));
    cs.extend(std::iter::repeat(Rational::zero()).take(a.rows()));
    let out = match solve_standard(&cs, &s, b)? {
        StandardOutcome::Optimal { point, value, dual } => MaxOutcome::Optimal(Optimum {
            value,
            point: recombine(&point, n),
            dual,
        }),
        StandardOutcome::Unbounded { point, ray } => MaxOutcome::Unbounded {
            point: recombine(&point, n),
            ray: recombine(&ray, n),
        },
        StandardOutcome::Infeasible { farkas } => {
            let cert = InfeasibilityCertificate {
                multipliers: farkas,
            };
            if !cert.verify(a, b, &BTreeSet::new()) {
                return Err(LpError::CertificateRejected("farkas multipliers invalid"));
            }
            return Err(LpError::Infeasible(cert));
        }
    };
    match &out {
        MaxOutcome::Optimal(opt) => {
            if !satisfies(a, b, &BTreeSet::new(), &opt.point)
                || opt.dual.iter().any(Rational::is_negative)
                || a.vec_mul(&opt.dual) != c
                || dot(&opt.dual, b) != opt.value
                || dot(c, &opt.point) != opt.value
            {
                return Err(LpError::CertificateRejected("optimality certificate"));
            }
        }
        MaxOutcome::Unbounded { point, ray } => {
            if !satisfies(a, b, &BTreeSet::new(), point)
                || a.mul_vec(ray).iter().any(Rational::is_positive)
                || !dot(c, ray).is_positive()
            {
                return Err(LpError::CertificateRejected("unboundedness certificate"));
            }
        }
    }
    Ok(out)
}

/// Whether `x` satisfies `A x ≤ b`, strictly on `strict_rows`.
pub fn satisfies(a: &Matrix, b: &[Rational], strict_rows: &BTreeSet<usize>, x: &[Rational]) -> bool {
    if x.len() != a.cols() {
        return false;
    }
    a.mul_vec(x).iter().zip(b).enumerate().all(|(i, (ax, bi))| {
        if strict_rows.contains(&i) {
            ax < bi
        } else {
            ax <= bi
        }
    })
}

/// Decides whether some `x` satisfies `A x ≤ b` with the rows in
/// `strict_rows` holding strictly.
///
/// Solved as `max t` subject to `A_i x + [i strict] t ≤ b_i`, `t ≤ 1`; the
/// system is feasible iff the optimum is positive.
pub fn lp_feasible(
    a: &Matrix,
    b: &[Rational],
    strict_rows: &BTreeSet<usize>,
) -> Result<Feasibility, LpError> {
    check_dims(a, b, None)?;
    if let Some(&bad) = strict_rows.iter().find(|&&i| i >= a.rows()) {
        return Err(LpError::DimensionMismatch(format!(
            "strict row {bad} out of range for {} rows",
            a.rows()
        )));
    }
    let (m, n) = (a.rows(), a.cols());
    let mut ext = Matrix::zeros(m + 1, n + 1);
    for i in 0..m {
        for j in 0..n {
            ext.set(i, j, a.get(i, j).clone());
        }
        if strict_rows.contains(&i) {
            ext.set(i, n, Rational::one());
        }
    }
    ext.set(m, n, Rational::one());
    let mut eb = b.to_vec();
    eb.push(Rational::one());
    let mut c = vec![Rational::zero(); n + 1];
    c[n] = Rational::one();

    let result = match lp_maximize(&c, &ext, &eb) {
        Ok(MaxOutcome::Optimal(opt)) => {
            if opt.value.is_positive() {
                Feasibility::Feasible(opt.point[..n].to_vec())
            } else {
                Feasibility::Infeasible(InfeasibilityCertificate {
                    multipliers: opt.dual[..m].to_vec(),
                })
            }
        }
        Ok(MaxOutcome::Unbounded { .. }) => {
            return Err(LpError::CertificateRejected("bounded auxiliary program reported unbounded"))
        }
        Err(LpError::Infeasible(cert)) => Feasibility::Infeasible(InfeasibilityCertificate {
            multipliers: cert.multipliers[..m].to_vec(),
        }),
        Err(e) => return Err(e),
    };
    match &result {
        Feasibility::Feasible(x) if !satisfies(a, b, strict_rows, x) => {
            Err(LpError::CertificateRejected("feasible point violates the system"))
        }
        Feasibility::Infeasible(cert) if !cert.verify(a, b, strict_rows) => {
            Err(LpError::CertificateRejected("infeasibility certificate"))
        }
        _ => Ok(result),
    }
}
