//! Elimination for systems of two bivariate polynomials: Sylvester
//! resultants and first subresultants with coefficients in `Q[y]`, and
//! determinants over `Q[y]` by fraction-free elimination.

use crate::upoly::UPoly;

/// Determinant of a square matrix over `Q[y]` (Bareiss elimination).
pub fn det_upoly(mut m: Vec<Vec<UPoly>>) -> UPoly {
    let n = m.len();
    if n == 0 {
        return UPoly::one();
    }
    let mut sign = false;
    let mut prev = UPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return UPoly::zero();
            };
            m.swap(p, k);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = t.exact_div(&prev);
            }
            m[i][k] = UPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -&d
    } else {
        d
    }
}

/// Rows of the `j`-th subresultant matrix of `a` and `b`, given as
/// coefficient lists in `x` (lowest first) over `Q[y]`. The last column holds
/// the coefficient of `x^i`.
fn subresultant_matrix(a: &[UPoly], b: &[UPoly], j: usize, i: usize) -> Vec<Vec<UPoly>> {
    let m = a.len() - 1;
    let n = b.len() - 1;
    let top = m + n - j - 1;
    let mut cols: Vec<usize> = (j + 1..=top).rev().collect();
    cols.push(i);
    let mut rows = Vec::new();
    let mut push = |p: &[UPoly], shift: usize| {
        rows.push(
            cols.iter()
                .map(|&c| {
                    if c >= shift && c - shift < p.len() {
                        p[c - shift].clone()
                    } else {
                        UPoly::zero()
                    }
                })
                .collect::<Vec<_>>(),
        );
    };
    for k in (0..n - j).rev() {
        push(a, k);
    }
    for k in (0..m - j).rev() {
        push(b, k);
    }
    rows
}

/// Resultant with respect to `x` using the formal degrees `len - 1`.
pub fn resultant_x(a: &[UPoly], b: &[UPoly]) -> UPoly {
    assert!(
        a.len() >= 2 && b.len() >= 2,
        "both inputs need positive formal degree"
    );
    det_upoly(subresultant_matrix(a, b, 0, 0))
}

/// Coefficients `(s1, s0)` of the first subresultant `s1·x + s0`.
pub fn first_subresultant(a: &[UPoly], b: &[UPoly]) -> (UPoly, UPoly) {
    assert!(
        a.len() >= 2 && b.len() >= 2,
        "both inputs need positive formal degree"
    );
    (
        det_upoly(subresultant_matrix(a, b, 1, 1)),
        det_upoly(subresultant_matrix(a, b, 1, 0)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    fn c(v: &[i64]) -> UPoly {
        UPoly::from_ints(v)
    }

    #[test]
    fn bareiss_matches_expansion() {
        let m = vec![
            vec![c(&[0, 1]), c(&[1]), c(&[2])],
            vec![c(&[1]), c(&[0, 0, 1]), c(&[0])],
            vec![c(&[3]), c(&[1, 1]), c(&[0, 1])],
        ];
        // y*(y^2*y - 0) - 1*(y - 0) + 2*(y + 1 - 3 y^2)
        let expect = c(&[2, 1, -6, 0, 1]);
        assert_eq!(det_upoly(m), expect);
    }

    #[test]
    fn resultant_of_circle_and_line() {
        // x^2 + y^2 - 1 and x - y: Res_x = 2y^2 - 1
        let a = vec![c(&[-1, 0, 1]), c(&[]), c(&[1])];
        let b = vec![c(&[0, -1]), c(&[1])];
        assert_eq!(resultant_x(&a, &b), c(&[-1, 0, 2]));
    }

    #[test]
    fn subresultant_recovers_common_root() {
        // a = (x - y)(x + 1), b = (x - y)(x - 2): common factor x - y
        let a = vec![c(&[0, -1]), c(&[1, -1]), c(&[1])];
        let b = vec![c(&[0, 2]), c(&[-2, -1]), c(&[1])];
        assert!(resultant_x(&a, &b).is_zero());
        let (s1, s0) = first_subresultant(&a, &b);
        // s1 x + s0 is proportional to x - y
        assert!(!s1.is_zero());
        assert_eq!(s0, &s1 * &c(&[0, -1]));
        assert_ne!(s1, UPoly::constant(int(0)));
    }
}
