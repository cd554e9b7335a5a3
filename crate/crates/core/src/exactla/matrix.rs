use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::Rational;

/// Dense row-major matrix over the rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from rational rows. All rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Self {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "row length does not match column count");
            entries.extend(row);
        }
        Matrix {
            rows: n,
            cols,
            entries,
        }
    }

    pub fn from_i64_rows(cols: usize, rows: &[Vec<i64>]) -> Self {
        Matrix::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::from_int(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn push_row(&mut self, row: Vec<Rational>) {
        assert_eq!(row.len(), self.cols);
        self.entries.extend(row);
        self.rows += 1;
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|r| super::rational::dot(self.row(r), x))
            .collect()
    }

    /// `y^T A` for a row vector `y`.
    pub fn vec_mul(&self, y: &[Rational]) -> Vec<Rational> {
        assert_eq!(y.len(), self.rows);
        let mut out = vec![Rational::zero(); self.cols];
        for (r, yr) in y.iter().enumerate() {
            if yr.is_zero() {
                continue;
            }
            for (c, a) in self.row(r).iter().enumerate() {
                if !a.is_zero() {
                    out[c] += &(yr * a);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        let mut echelon = IntegerEchelon::new(self.cols);
        for r in 0..self.rows {
            echelon.insert(integer_row(self.row(r)));
        }
        echelon.rank()
    }

    /// Basis of the right null space `{x : A x = 0}`, read off the reduced row echelon form.
    /// Empty iff the kernel is trivial.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let (rref, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -rref.get(i, free);
            }
            basis.push(v);
        }
        basis
    }

    /// Reduced row echelon form and the pivot column of each nonzero row.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(p) = (lead..m.rows).find(|&r| !m.get(r, c).is_zero()) else {
                continue;
            };
            m.swap_rows(lead, p);
            let inv = m.get(lead, c).recip();
            for j in c..m.cols {
                let v = m.get(lead, j) * &inv;
                m.set(lead, j, v);
            }
            for r in 0..m.rows {
                if r == lead || m.get(r, c).is_zero() {
                    continue;
                }
                let f = m.get(r, c).clone();
                for j in c..m.cols {
                    if m.get(lead, j).is_zero() {
                        continue;
                    }
                    let v = m.get(r, j) - &(&f * m.get(lead, j));
                    m.set(r, j, v);
                }
            }
            pivots.push(c);
            lead += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for v in row {
        if !v.is_integer() {
            l = l.lcm(&v.denom());
        }
    }
    row.iter().map(|v| v.numer() * (&l / v.denom())).collect()
}

/// Incrementally maintained row echelon form over the integers, using
/// fraction-free elimination with content removal after every update.
#[derive(Clone, Debug)]
pub struct IntegerEchelon {
    cols: usize,
    pivots: Vec<(usize, Vec<BigInt>)>,
}

impl IntegerEchelon {
    pub fn new(cols: usize) -> Self {
        IntegerEchelon {
            cols,
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the current pivots. Returns `true` if it was
    /// independent and has been added.
    pub fn insert(&mut self, mut row: Vec<BigInt>) -> bool {
        assert_eq!(row.len(), self.cols);
        for (col, prow) in &self.pivots {
            if row[*col].is_zero() {
                continue;
            }
            let a = &prow[*col];
            let b = row[*col].clone();
            for (x, p) in row.iter_mut().zip(prow) {
                if p.is_zero() {
                    if !x.is_zero() {
                        *x *= a;
                    }
                } else {
                    *x = &*x * a - p * &b;
                }
            }
            remove_content(&mut row);
        }
        match row.iter().position(|x| !x.is_zero()) {
            Some(col) => {
                remove_content(&mut row);
                self.pivots.push((col, row));
                true
            }
            None => false,
        }
    }
}

fn remove_content(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in row.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                return;
            }
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in row.iter_mut() {
        if !x.is_zero() {
            *x /= &g;
        }
    }
    debug_assert!(!g.is_negative());
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(cols: usize, rows: &[Vec<i64>]) -> Matrix {
        Matrix::from_i64_rows(cols, rows)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::identity(2).rank(), 2);
        assert_eq!(Matrix::zeros(3, 3).rank(), 0);
        assert_eq!(m(2, &[vec![1, 1], vec![2, 2]]).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(Matrix::identity(2).kernel_basis().is_empty());
        let k = m(2, &[vec![1, -1]]).kernel_basis();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0][0], k[0][1]);
        assert!(!k[0][0].is_zero());
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let a = m(
            4,
            &[vec![1, 2, 0, -1], vec![0, 1, 1, 1], vec![1, 3, 1, 0]],
        );
        let k = a.kernel_basis();
        assert_eq!(k.len(), 4 - a.rank());
        for v in &k {
            assert!(a.mul_vec(v).iter().all(Rational::is_zero));
        }
    }

    #[test]
    fn rank_of_fractional_rows() {
        let a = Matrix::from_rows(
            2,
            vec![
                vec![Rational::new(1, 2), Rational::new(1, 3)],
                vec![Rational::from_int(3), Rational::from_int(2)],
            ],
        );
        assert_eq!(a.rank(), 1);
    }
}
