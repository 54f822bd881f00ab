//! Exact linear algebra over the rationals: dense determinants and rank, a
//! sparse incremental solver, and determinants of polynomial matrices.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::poly::{Polynomial, Rational, VarList};

/// Determinant by Gaussian elimination.
pub fn det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut d = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        let piv = a[c][c].clone();
        d *= &piv;
        let inv = piv.recip();
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] * &inv;
            for k in c..n {
                let t = &f * &a[c][k];
                a[r][k] -= t;
            }
        }
    }
    d
}

pub fn rank(m: &[Vec<Rational>]) -> usize {
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let inv = a[r][c].recip();
        for i in r + 1..rows {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &inv;
            for k in c..cols {
                let t = &f * &a[r][k];
                a[i][k] -= t;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Solves `A x = b` exactly; `None` when inconsistent. Free variables are set
/// to zero.
pub fn solve_dense(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let cols = a.first().map_or(0, |r| r.len());
    let mut sys = SparseSystem::new(cols);
    for (row, rhs) in a.iter().zip(b) {
        let entries: Vec<(usize, Rational)> = row
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (i, v.clone()))
            .collect();
        if !sys.add_equation(entries, rhs.clone()) {
            return None;
        }
    }
    Some(sys.solution())
}

type SparseRow = Vec<(usize, Rational)>;

/// Row-echelon accumulator for sparse linear systems. Equations are added one
/// at a time and reduced against the pivots found so far.
#[derive(Debug, Clone)]
pub struct SparseSystem {
    num_vars: usize,
    // pivot column -> row (leading entry 1 at that column); rhs kept in the
    // slot `num_vars`.
    pivots: HashMap<usize, SparseRow>,
}

impl SparseSystem {
    pub fn new(num_vars: usize) -> Self {
        SparseSystem {
            num_vars,
            pivots: HashMap::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Adds `Σ coeff·x_i = rhs`. Returns false when the system became inconsistent.
    pub fn add_equation(&mut self, mut entries: Vec<(usize, Rational)>, rhs: Rational) -> bool {
        entries.sort_by_key(|(i, _)| *i);
        let mut row: SparseRow = Vec::with_capacity(entries.len() + 1);
        for (i, c) in entries {
            debug_assert!(i < self.num_vars);
            match row.last_mut() {
                Some((j, v)) if *j == i => *v += c,
                _ => row.push((i, c)),
            }
        }
        row.retain(|(_, c)| !c.is_zero());
        if !rhs.is_zero() {
            row.push((self.num_vars, rhs));
        }
        loop {
            let Some(&(c, _)) = row.first() else {
                return true;
            };
            if c == self.num_vars {
                return false;
            }
            match self.pivots.get(&c) {
                Some(prow) => {
                    let f = row[0].1.clone();
                    row = axpy(&row, prow, &f);
                }
                None => {
                    let inv = row[0].1.recip();
                    for (_, v) in row.iter_mut() {
                        *v *= &inv;
                    }
                    self.pivots.insert(c, row);
                    return true;
                }
            }
        }
    }

    /// A particular solution (free variables zero).
    pub fn solution(&self) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); self.num_vars];
        let mut cols: Vec<usize> = self.pivots.keys().copied().collect();
        cols.sort_unstable_by(|a, b| b.cmp(a));
        for c in cols {
            let row = &self.pivots[&c];
            let mut v = Rational::zero();
            for (j, a) in row.iter().skip(1) {
                if *j == self.num_vars {
                    v += a;
                } else {
                    v -= a * &x[*j];
                }
            }
            x[c] = v;
        }
        x
    }
}

/// `row - f * other`, both sorted by column.
fn axpy(row: &SparseRow, other: &SparseRow, f: &Rational) -> SparseRow {
    let mut out = Vec::with_capacity(row.len() + other.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < other.len() {
        let ci = row.get(i).map_or(usize::MAX, |t| t.0);
        let cj = other.get(j).map_or(usize::MAX, |t| t.0);
        if ci < cj {
            out.push(row[i].clone());
            i += 1;
        } else if cj < ci {
            out.push((cj, -(f * &other[j].1)));
            j += 1;
        } else {
            let v = &row[i].1 - f * &other[j].1;
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Determinant of a square matrix of polynomials by expansion over column
/// subsets (`O(n 2^n)` products); intended for `n ≤ 8`.
pub fn poly_det(m: &[Vec<Polynomial>], vars: &VarList) -> Polynomial {
    let n = m.len();
    if n == 0 {
        return Polynomial::one(vars);
    }
    // minors[mask] = det of rows n-|mask|.. with columns in mask
    let mut minors: HashMap<u32, Polynomial> = HashMap::new();
    minors.insert(0, Polynomial::one(vars));
    for k in 1..=n {
        let row = n - k;
        let mut next: HashMap<u32, Polynomial> = HashMap::new();
        for (&mask, sub) in &minors {
            if sub.is_zero() {
                continue;
            }
            for c in 0..n {
                if mask & (1 << c) != 0 {
                    continue;
                }
                if m[row][c].is_zero() {
                    continue;
                }
                // sign: number of columns in mask smaller than c
                let before = (mask & ((1u32 << c) - 1)).count_ones();
                let term = &m[row][c] * sub;
                let term = if before % 2 == 1 { -term } else { term };
                let key = mask | (1 << c);
                let e = next.entry(key).or_insert_with(|| Polynomial::zero(vars));
                *e = &*e + &term;
            }
        }
        minors = next;
    }
    minors
        .remove(&((1u32 << n) - 1))
        .unwrap_or_else(|| Polynomial::zero(vars))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, parse_polynomial};

    fn q(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| int(v)).collect())
            .collect()
    }

    #[test]
    fn dense_det_and_rank() {
        let m = q(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(det(&m), int(18));
        assert_eq!(rank(&q(&[&[1, 2], &[2, 4]])), 1);
    }

    #[test]
    fn sparse_solver() {
        let a = q(&[&[1, 1, 0], &[0, 1, 1], &[1, 2, 1]]);
        let b = vec![int(1), int(2), int(3)];
        let x = solve_dense(&a, &b).unwrap();
        for (row, rhs) in a.iter().zip(&b) {
            let s: Rational = row.iter().zip(&x).map(|(u, v)| u * v).sum();
            assert_eq!(&s, rhs);
        }
        assert!(solve_dense(&a, &[int(1), int(2), int(4)]).is_none());
    }

    #[test]
    fn polynomial_determinant() {
        let v = VarList::new(&["a", "b"]);
        let p = |s: &str| parse_polynomial(s, &v).unwrap();
        let m = vec![vec![p("a"), p("b")], vec![p("b"), p("a")]];
        assert_eq!(poly_det(&m, &v), p("a^2 - b^2"));
        let m3 = vec![
            vec![p("1"), p("2"), p("3")],
            vec![p("0"), p("a"), p("1")],
            vec![p("b"), p("0"), p("1")],
        ];
        // expansion by hand: 1*(a) - 2*(0 - b) + 3*(0 - a b)
        assert_eq!(poly_det(&m3, &v), p("a + 2*b - 3*a*b"));
    }
}
