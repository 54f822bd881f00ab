//! Univariate polynomials over a word-size prime field.
//!
//! Used to certify genericity conditions cheaply. A rational polynomial whose
//! reduction keeps its degree and is squarefree modulo `p` is squarefree over
//! the rationals; a rational matrix whose reduction is invertible is
//! invertible. A failed certificate proves nothing, so callers fall back to
//! exact arithmetic.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::poly::Rational;
use crate::upoly::UPoly;

/// Primes tried in turn; the first is `2^61 - 1`.
pub const PRIMES: [u64; 3] = [2_305_843_009_213_693_951, 2_147_483_647, 1_000_000_007];

/// Coefficients in increasing degree, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyP {
    pub coeffs: Vec<u64>,
}

#[derive(Clone, Copy, Debug)]
pub struct Field {
    pub p: u64,
}

impl Field {
    pub fn new(p: u64) -> Self {
        Field { p }
    }

    pub fn add(self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.p as u128) as u64
    }

    pub fn sub(self, a: u64, b: u64) -> u64 {
        self.add(a, self.p - b)
    }

    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Inverse of a nonzero element.
    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.pow(a, self.p - 2)
    }

    fn int(self, n: &BigInt) -> u64 {
        let r = n % BigInt::from(self.p);
        let r = if r < BigInt::zero() {
            r + BigInt::from(self.p)
        } else {
            r
        };
        r.to_u64().expect("residue fits a word")
    }

    /// Reduction of a rational; `None` when `p` divides the denominator.
    pub fn rational(self, r: &Rational) -> Option<u64> {
        let d = self.int(r.denom());
        if d == 0 {
            return None;
        }
        Some(self.mul(self.int(r.numer()), self.inv(d)))
    }

    pub fn poly(self, mut coeffs: Vec<u64>) -> PolyP {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        PolyP { coeffs }
    }

    /// Reduction of a rational polynomial, `None` on a bad denominator.
    pub fn reduce(self, f: &UPoly) -> Option<PolyP> {
        let cs = f
            .coeffs()
            .iter()
            .map(|c| self.rational(c))
            .collect::<Option<Vec<_>>>()?;
        Some(self.poly(cs))
    }

    pub fn sub_poly(self, a: &PolyP, b: &PolyP) -> PolyP {
        let n = a.coeffs.len().max(b.coeffs.len());
        let get = |v: &[u64], i: usize| v.get(i).copied().unwrap_or(0);
        self.poly(
            (0..n)
                .map(|i| self.sub(get(&a.coeffs, i), get(&b.coeffs, i)))
                .collect(),
        )
    }

    pub fn add_poly(self, a: &PolyP, b: &PolyP) -> PolyP {
        let n = a.coeffs.len().max(b.coeffs.len());
        let get = |v: &[u64], i: usize| v.get(i).copied().unwrap_or(0);
        self.poly(
            (0..n)
                .map(|i| self.add(get(&a.coeffs, i), get(&b.coeffs, i)))
                .collect(),
        )
    }

    pub fn mul_poly(self, a: &PolyP, b: &PolyP) -> PolyP {
        if a.is_zero() || b.is_zero() {
            return PolyP { coeffs: vec![] };
        }
        let mut out = vec![0u64; a.coeffs.len() + b.coeffs.len() - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            for (j, &y) in b.coeffs.iter().enumerate() {
                out[i + j] = self.add(out[i + j], self.mul(x, y));
            }
        }
        self.poly(out)
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn div_rem(self, a: &PolyP, d: &PolyP) -> (PolyP, PolyP) {
        let dd = d.coeffs.len() - 1;
        let li = self.inv(*d.coeffs.last().expect("nonzero divisor"));
        let mut r = a.coeffs.clone();
        let mut q = vec![0u64; r.len().saturating_sub(dd)];
        while r.len() > dd {
            let k = r.len() - 1 - dd;
            let c = self.mul(*r.last().unwrap(), li);
            q[k] = c;
            for (i, &dc) in d.coeffs.iter().enumerate() {
                r[k + i] = self.sub(r[k + i], self.mul(c, dc));
            }
            r.pop();
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        (self.poly(q), self.poly(r))
    }

    pub fn rem(self, a: &PolyP, d: &PolyP) -> PolyP {
        self.div_rem(a, d).1
    }

    pub fn mul_mod(self, a: &PolyP, b: &PolyP, m: &PolyP) -> PolyP {
        self.rem(&self.mul_poly(a, b), m)
    }

    pub fn derivative(self, a: &PolyP) -> PolyP {
        self.poly(
            a.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| self.mul(c, i as u64 % self.p))
                .collect(),
        )
    }

    pub fn gcd(self, a: &PolyP, b: &PolyP) -> PolyP {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        a
    }

    /// Inverse of `a` modulo `m`, when they are coprime.
    pub fn inv_mod(self, a: &PolyP, m: &PolyP) -> Option<PolyP> {
        // invariant: r0 = s0 * a (mod m), r1 = s1 * a (mod m)
        let (mut r0, mut r1) = (m.clone(), self.rem(a, m));
        let (mut s0, mut s1) = (PolyP { coeffs: vec![] }, PolyP { coeffs: vec![1] });
        while !r1.is_zero() {
            let (q, r) = self.div_rem(&r0, &r1);
            let s = self.sub_poly(&s0, &self.mul_poly(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.coeffs.len() != 1 {
            return None;
        }
        let c = self.inv(r0.coeffs[0]);
        Some(self.rem(&self.mul_poly(&s0, &PolyP { coeffs: vec![c] }), m))
    }

    /// Whether `a^k` vanishes modulo `m`, by repeated squaring.
    pub fn nilpotent_mod(self, a: &PolyP, m: &PolyP, k: usize) -> bool {
        let mut r = self.rem(a, m);
        let mut power = 1;
        while !r.is_zero() && power < k {
            r = self.mul_mod(&r, &r, m);
            power *= 2;
        }
        r.is_zero()
    }

    pub fn is_squarefree(self, a: &PolyP) -> bool {
        self.gcd(a, &self.derivative(a)).coeffs.len() == 1
    }

    /// Whether `1, v, …, v^(n-1)` are linearly independent in `F_p[t]/(m)`,
    /// `n = deg m`; for squarefree `m` this says `v` separates the roots.
    pub fn powers_independent(self, v: &PolyP, m: &PolyP) -> bool {
        let n = m.coeffs.len() - 1;
        let mut rows = Vec::with_capacity(n);
        let mut cur = PolyP { coeffs: vec![1] };
        for _ in 0..n {
            let mut row = cur.coeffs.clone();
            row.resize(n, 0);
            rows.push(row);
            cur = self.mul_mod(&cur, v, m);
        }
        self.rank(rows) == n
    }

    fn rank(self, mut rows: Vec<Vec<u64>>) -> usize {
        let cols = rows.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..cols {
            let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
                continue;
            };
            rows.swap(rank, piv);
            let inv = self.inv(rows[rank][c]);
            for r in rank + 1..rows.len() {
                if rows[r][c] == 0 {
                    continue;
                }
                let k = self.mul(rows[r][c], inv);
                for j in c..cols {
                    let t = self.mul(k, rows[rank][j]);
                    rows[r][j] = self.sub(rows[r][j], t);
                }
            }
            rank += 1;
        }
        rank
    }
}

impl PolyP {
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn up(cs: &[i64]) -> UPoly {
        UPoly::from_ints(cs)
    }

    #[test]
    fn reduction_and_inverse() {
        let f = Field::new(7);
        assert_eq!(f.rational(&Rational::new(1.into(), 3.into())), Some(5));
        assert_eq!(f.rational(&Rational::new(1.into(), 14.into())), None);
        // (t + 1)^{-1} mod t^2 + 1 is (1 - t)/2
        let m = f.reduce(&up(&[1, 0, 1])).unwrap();
        let a = f.reduce(&up(&[1, 1])).unwrap();
        let inv = f.inv_mod(&a, &m).unwrap();
        assert_eq!(f.mul_mod(&a, &inv, &m).coeffs, vec![1]);
        assert!(f
            .inv_mod(
                &f.reduce(&up(&[1, 1])).unwrap(),
                &f.reduce(&up(&[1, 2, 1])).unwrap()
            )
            .is_none());
    }

    #[test]
    fn squarefree_and_separation() {
        let f = Field::new(PRIMES[0]);
        assert!(f.is_squarefree(&f.reduce(&up(&[-1, 0, 1])).unwrap()));
        assert!(!f.is_squarefree(&f.reduce(&up(&[1, 2, 1])).unwrap()));
        // on the roots ±1 of t^2 - 1, t separates and t^2 does not
        let m = f.reduce(&up(&[-1, 0, 1])).unwrap();
        assert!(f.powers_independent(&f.reduce(&up(&[0, 1])).unwrap(), &m));
        assert!(!f.powers_independent(&f.reduce(&up(&[0, 0, 1])).unwrap(), &m));
    }
}
