//! Exact feasibility with self-checked certificates.

use std::collections::BTreeSet;

use polyfactor::exactla::{lp_feasible, Feasibility, Matrix, Rational};

fn show(label: &str, a: &Matrix, b: &[Rational], strict: &BTreeSet<usize>) -> anyhow::Result<()> {
    match lp_feasible(a, b, strict)? {
        Feasibility::Feasible(x) => {
            let xs: Vec<String> = x.iter().map(Rational::to_pq).collect();
            println!("{label}: feasible at ({})", xs.join(", "));
        }
        Feasibility::Infeasible(cert) => {
            let ys: Vec<String> = cert.multipliers.iter().map(Rational::to_pq).collect();
            println!("{label}: infeasible, multipliers ({})", ys.join(", "));
        }
    }
    Ok(())
}

fn main() -> anyhow::Result<()> {
    let r = Rational::from_int;
    // x + y <= 1, -x <= -1/3, -y < -1/2
    let a = Matrix::from_i64_rows(2, &[vec![1, 1], vec![-1, 0], vec![0, -1]]);
    let b = vec![r(1), Rational::new(-1, 3), Rational::new(-1, 2)];
    show("open corner", &a, &b, &BTreeSet::from([2]))?;
    // x + y <= 1, -x - y < -1
    let a = Matrix::from_i64_rows(2, &[vec![1, 1], vec![-1, -1]]);
    show("touching half-spaces", &a, &[r(1), r(-1)], &BTreeSet::from([1]))?;
    Ok(())
}
