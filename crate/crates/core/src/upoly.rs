//! Dense univariate polynomials over the rationals: Euclidean algorithms,
//! resultants, squarefree parts, arithmetic in `Q[y]/(N)` and Sturm-based
//! real root isolation.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::{int, Polynomial, Rational, VarList};

/// Coefficients stored lowest degree first, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UPoly {
    coeffs: Vec<Rational>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The indeterminate.
    pub fn x() -> Self {
        Self::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    /// `x - a`
    pub fn linear_root(a: Rational) -> Self {
        Self::from_coeffs(vec![-a, Rational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::from_coeffs(cs.iter().map(|&c| int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lead(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lead().recip();
        self.scale(&inv)
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut cs = vec![Rational::zero(); k];
        cs.extend(self.coeffs.iter().cloned());
        Self::from_coeffs(cs)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division; panics on division by zero.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.deg0();
        let inv = d.lead().recip();
        let mut r = self.coeffs.clone();
        if r.len() < d.coeffs.len() {
            return (UPoly::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (UPoly::from_coeffs(q), UPoly::from_coeffs(r))
    }

    pub fn rem(&self, d: &UPoly) -> UPoly {
        self.div_rem(d).1
    }

    /// Quotient of an exact division; panics when the remainder is nonzero.
    pub fn exact_div(&self, d: &UPoly) -> UPoly {
        let (q, r) = self.div_rem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor.
    pub fn gcd(a: &UPoly, b: &UPoly) -> UPoly {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*a + t*b = g`, `g` monic.
    pub fn ext_gcd(a: &UPoly, b: &UPoly) -> (UPoly, UPoly, UPoly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (UPoly::one(), UPoly::zero());
        let (mut t0, mut t1) = (UPoly::zero(), UPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lead().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Inverse of `a` modulo `m`, if it exists.
    pub fn inverse_mod(a: &UPoly, m: &UPoly) -> Option<UPoly> {
        let (g, s, _) = UPoly::ext_gcd(&a.rem(m), m);
        if g.degree() == Some(0) {
            Some(s.rem(m))
        } else {
            None
        }
    }

    pub fn squarefree_part(&self) -> UPoly {
        if self.deg0() == 0 {
            return self.monic();
        }
        let g = UPoly::gcd(self, &self.derivative());
        self.exact_div(&g).monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.deg0() == 0 || UPoly::gcd(self, &self.derivative()).deg0() == 0
    }

    /// Number of distinct complex roots.
    pub fn distinct_root_count(&self) -> usize {
        if self.is_zero() {
            return 0;
        }
        self.squarefree_part().deg0()
    }

    /// Resultant by the Euclidean algorithm.
    pub fn resultant(a: &UPoly, b: &UPoly) -> Rational {
        if a.is_zero() || b.is_zero() {
            return Rational::zero();
        }
        let mut a = a.clone();
        let mut b = b.clone();
        let mut acc = Rational::one();
        loop {
            let da = a.deg0();
            let db = b.deg0();
            if db == 0 {
                return acc * num_traits::pow(b.lead(), da);
            }
            if da == 0 {
                return acc * num_traits::pow(a.lead(), db);
            }
            let r = a.rem(&b);
            if r.is_zero() {
                return Rational::zero();
            }
            if (da * db) % 2 == 1 {
                acc = -acc;
            }
            acc *= num_traits::pow(b.lead(), da - r.deg0());
            a = b;
            b = r;
        }
    }

    /// Discriminant, normalised so that `disc(x^2 + b x + c) = b^2 - 4c`.
    pub fn discriminant(&self) -> Rational {
        let n = self.deg0();
        if n < 1 {
            return Rational::zero();
        }
        let r = UPoly::resultant(self, &self.derivative());
        let sign = if (n * (n - 1) / 2) % 2 == 1 {
            -Rational::one()
        } else {
            Rational::one()
        };
        sign * r / self.lead()
    }

    pub fn compose(&self, inner: &UPoly) -> UPoly {
        let mut acc = UPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &UPoly::constant(c.clone());
        }
        acc
    }

    /// Converts a polynomial involving at most the variable `var`.
    pub fn from_polynomial(p: &Polynomial, var: usize) -> Option<UPoly> {
        let mut cs: Vec<Rational> = Vec::new();
        for (e, c) in p.terms() {
            if e.iter().enumerate().any(|(i, &k)| i != var && k > 0) {
                return None;
            }
            let k = e[var] as usize;
            if cs.len() <= k {
                cs.resize(k + 1, Rational::zero());
            }
            cs[k] += c;
        }
        Some(UPoly::from_coeffs(cs))
    }

    pub fn to_polynomial(&self, vars: &VarList, var: usize) -> Polynomial {
        Polynomial::from_terms(
            vars,
            self.coeffs.iter().enumerate().map(|(k, c)| {
                let mut e = vec![0; vars.len()];
                e[var] = k as u32;
                (e, c.clone())
            }),
        )
    }

    /// Sturm sequence.
    pub fn sturm_sequence(&self) -> Vec<UPoly> {
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let r = seq[n - 2].rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(-&r);
        }
        seq
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count_real_roots(&self, a: &Rational, b: &Rational) -> usize {
        let seq = self.squarefree_part().sturm_sequence();
        sign_changes(&seq, a).saturating_sub(sign_changes(&seq, b))
    }

    /// Cauchy bound on the absolute value of every root.
    pub fn root_bound(&self) -> Rational {
        let lead = self.lead().abs();
        let mut m = Rational::zero();
        for c in &self.coeffs[..self.coeffs.len().saturating_sub(1)] {
            let t = c.abs() / &lead;
            if t > m {
                m = t;
            }
        }
        m + Rational::one()
    }

    /// Isolating intervals `(a, b]` of width at most `width` for the distinct
    /// real roots, in increasing order.
    pub fn isolate_real_roots(&self, width: &Rational) -> Vec<(Rational, Rational)> {
        if self.deg0() == 0 {
            return Vec::new();
        }
        let sq = self.squarefree_part();
        let seq = sq.sturm_sequence();
        let bound = sq.root_bound();
        let mut out = Vec::new();
        let mut stack = vec![(-bound.clone(), bound)];
        while let Some((a, b)) = stack.pop() {
            let n = sign_changes(&seq, &a).saturating_sub(sign_changes(&seq, &b));
            if n == 0 {
                continue;
            }
            if n == 1 && &b - &a <= *width {
                out.push((a, b));
                continue;
            }
            let mid = (&a + &b) / int(2);
            stack.push((mid.clone(), b));
            stack.push((a, mid));
        }
        out.sort();
        out
    }
}

fn sign_changes(seq: &[UPoly], x: &Rational) -> usize {
    let mut last: Option<bool> = None;
    let mut n = 0;
    for p in seq {
        let v = p.eval(x);
        if v.is_zero() {
            continue;
        }
        let s = v.is_positive();
        if let Some(l) = last {
            if l != s {
                n += 1;
            }
        }
        last = Some(s);
    }
    n
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut cs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                cs[i + j] += a * b;
            }
        }
        UPoly::from_coeffs(cs)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly::from_coeffs(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars = VarList::new(&["t"]);
        write!(f, "{}", self.to_polynomial(&vars, 0))
    }
}

/// Arithmetic in the quotient algebra `Q[y]/(N)`.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    modulus: UPoly,
    // Σ y_i^k over the roots of the modulus, k = 0..n-1
    power_sums: Vec<Rational>,
}

impl QuotientAlgebra {
    /// `modulus` must have positive degree.
    pub fn new(modulus: &UPoly) -> Self {
        assert!(modulus.deg0() >= 1, "modulus must be non-constant");
        let modulus = modulus.monic();
        let n = modulus.deg0();
        let a = |k: usize| modulus.coeff(n - k);
        let mut s: Vec<Rational> = vec![int(n as i64)];
        for k in 1..n {
            let mut v = a(k) * int(k as i64);
            for i in 1..k {
                v += a(i) * &s[k - i];
            }
            s.push(-v);
        }
        QuotientAlgebra {
            modulus,
            power_sums: s,
        }
    }

    pub fn dimension(&self) -> usize {
        self.modulus.deg0()
    }

    pub fn modulus(&self) -> &UPoly {
        &self.modulus
    }

    pub fn reduce(&self, a: &UPoly) -> UPoly {
        a.rem(&self.modulus)
    }

    pub fn mul(&self, a: &UPoly, b: &UPoly) -> UPoly {
        (a * b).rem(&self.modulus)
    }

    pub fn inverse(&self, a: &UPoly) -> Option<UPoly> {
        UPoly::inverse_mod(a, &self.modulus)
    }

    /// Class of `num / den`, if `den` is a unit.
    pub fn fraction(&self, num: &UPoly, den: &UPoly) -> Option<UPoly> {
        self.inverse(den).map(|inv| self.mul(num, &inv))
    }

    /// Coordinates of `a` in the monomial basis `1, y, …, y^{n-1}`.
    pub fn coordinates(&self, a: &UPoly) -> Vec<Rational> {
        let r = self.reduce(a);
        (0..self.dimension()).map(|k| r.coeff(k)).collect()
    }

    /// Matrix of multiplication by `a` (columns are images of basis elements).
    pub fn multiplication_matrix(&self, a: &UPoly) -> Vec<Vec<Rational>> {
        let n = self.dimension();
        let mut m = vec![vec![Rational::zero(); n]; n];
        let mut col = self.reduce(a);
        for j in 0..n {
            for (i, row) in m.iter_mut().enumerate() {
                row[j] = col.coeff(i);
            }
            col = self.mul(&col, &UPoly::x());
        }
        m
    }

    /// Trace of multiplication by `a`, i.e. `Σ a(y_i)` over the roots with multiplicity.
    pub fn trace(&self, a: &UPoly) -> Rational {
        let r = self.reduce(a);
        r.coeffs()
            .iter()
            .zip(&self.power_sums)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, s)| c * s)
            .sum()
    }

    /// Characteristic polynomial of multiplication by `a`, i.e.
    /// `prod (t - a(y_i))` over the roots of the modulus with multiplicity;
    /// assembled from the power sums `Tr(a^m)` by Newton's identities.
    pub fn charpoly(&self, a: &UPoly) -> UPoly {
        let n = self.dimension();
        let a = self.reduce(a);
        let mut p = Vec::with_capacity(n + 1);
        p.push(int(n as i64));
        let mut pw = UPoly::one();
        for _ in 1..=n {
            pw = self.mul(&pw, &a);
            p.push(self.trace(&pw));
        }
        let mut e = vec![Rational::one()];
        for k in 1..=n {
            let mut v = Rational::zero();
            for i in 1..=k {
                let t = &e[k - i] * &p[i];
                if i % 2 == 1 {
                    v += t;
                } else {
                    v -= t;
                }
            }
            e.push(v / int(k as i64));
        }
        UPoly::from_coeffs(
            (0..=n)
                .map(|j| {
                    if (n - j).is_multiple_of(2) {
                        e[n - j].clone()
                    } else {
                        -e[n - j].clone()
                    }
                })
                .collect(),
        )
    }
}

/// Characteristic polynomial `det(t I - A)` by the Faddeev–LeVerrier recursion.
pub fn charpoly(a: &[Vec<Rational>]) -> UPoly {
    let n = a.len();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut m = vec![vec![Rational::zero(); n]; n];
    for k in 1..=n {
        // m <- a*m + c_{n-k+1} I
        let mut next = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = Rational::zero();
                for (l, ail) in a[i].iter().enumerate() {
                    if !ail.is_zero() && !m[l][j].is_zero() {
                        s += ail * &m[l][j];
                    }
                }
                next[i][j] = s;
            }
            next[i][i] += &coeffs[n - k + 1];
        }
        m = next;
        let mut tr = Rational::zero();
        for i in 0..n {
            for l in 0..n {
                if !a[i][l].is_zero() && !m[l][i].is_zero() {
                    tr += &a[i][l] * &m[l][i];
                }
            }
        }
        coeffs[n - k] = -tr / int(k as i64);
    }
    UPoly::from_coeffs(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn gcd_and_squarefree() {
        // (x-1)^2 (x+2)
        let p = &(&UPoly::linear_root(int(1)) * &UPoly::linear_root(int(1)))
            * &UPoly::linear_root(int(-2));
        assert!(!p.is_squarefree());
        assert_eq!(p.distinct_root_count(), 2);
        assert_eq!(UPoly::gcd(&p, &p.derivative()), UPoly::linear_root(int(1)));
    }

    #[test]
    fn resultant_matches_root_product() {
        // Res(x^2 - 2, x - 3) = (3^2 - 2) * (-1)^(2*1) ... = lc-normalised 7
        let a = UPoly::from_ints(&[-2, 0, 1]);
        let b = UPoly::from_ints(&[-3, 1]);
        assert_eq!(UPoly::resultant(&a, &b), int(7));
        assert_eq!(UPoly::from_ints(&[1, 3, 1]).discriminant(), int(5));
        // cubic x^3 + p x + q: disc = -4p^3 - 27q^2
        let c = UPoly::from_ints(&[2, -3, 0, 1]);
        assert_eq!(c.discriminant(), int(-4 * -27 - 27 * 4));
    }

    #[test]
    fn charpoly_of_critical_values() {
        // N = y^2 - 1 (critical points of y^3 - 3y), values F(±1) = ∓2
        let n = UPoly::from_ints(&[-1, 0, 1]);
        let f = UPoly::from_ints(&[0, -3, 0, 1]);
        let alg = QuotientAlgebra::new(&n);
        assert_eq!(alg.charpoly(&f), UPoly::from_ints(&[-4, 0, 1]));
    }

    #[test]
    fn real_root_isolation() {
        let p = UPoly::from_ints(&[-2, 0, 1]);
        let roots = p.isolate_real_roots(&rat(1, 1000));
        assert_eq!(roots.len(), 2);
        let (a, b) = &roots[1];
        assert!(a.to_f64().unwrap() < 2f64.sqrt() && 2f64.sqrt() <= b.to_f64().unwrap());
        assert_eq!(p.count_real_roots(&int(0), &int(10)), 1);
    }

    #[test]
    fn inverse_mod() {
        let m = UPoly::from_ints(&[1, 0, 1]);
        let a = UPoly::from_ints(&[1, 1]);
        let inv = UPoly::inverse_mod(&a, &m).unwrap();
        assert_eq!((&a * &inv).rem(&m), UPoly::one());
        assert!(UPoly::inverse_mod(&m, &m).is_none());
    }
}
