//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Every polynomial carries the ordered list of variable names it lives over;
//! binary operations require both operands to share that list.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Exponent vector, one slot per variable.
pub type Exponent = Vec<u32>;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Ordered list of variable names.
#[derive(Clone, Debug)]
pub struct VarList(Arc<[String]>);

impl VarList {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        VarList(names.iter().map(|s| s.as_ref().to_string()).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }

    /// This list followed by `extra` (names already present are skipped).
    pub fn extended<S: AsRef<str>>(&self, extra: &[S]) -> VarList {
        let mut names: Vec<String> = self.0.to_vec();
        for e in extra {
            if !names.iter().any(|n| n == e.as_ref()) {
                names.push(e.as_ref().to_string());
            }
        }
        VarList(names.into())
    }

    pub(crate) fn check_same(&self, other: &VarList) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::VariableMismatch {
                left: self.0.join(","),
                right: other.0.join(","),
            })
        }
    }
}

impl PartialEq for VarList {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for VarList {}

/// A polynomial over the rationals in a fixed list of named variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    vars: VarList,
    terms: BTreeMap<Exponent, Rational>,
}

impl Polynomial {
    pub fn zero(vars: &VarList) -> Self {
        Polynomial {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &VarList, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    pub fn one(vars: &VarList) -> Self {
        Self::constant(vars, Rational::one())
    }

    /// The variable with index `i`.
    pub fn var(vars: &VarList, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(vars, e, Rational::one())
    }

    /// The variable called `name`; panics if absent.
    pub fn named(vars: &VarList, name: &str) -> Self {
        let i = vars
            .index_of(name)
            .unwrap_or_else(|| panic!("unknown variable {name}"));
        Self::var(vars, i)
    }

    pub fn monomial(vars: &VarList, exp: Exponent, c: Rational) -> Self {
        assert_eq!(exp.len(), vars.len(), "exponent length");
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponent, Rational)>>(vars: &VarList, it: I) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> &VarList {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &[u32]) -> Rational {
        self.terms.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.vars.len()])
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&a| a == 0))
    }

    pub(crate) fn add_term(&mut self, exp: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(exp.len(), self.vars.len());
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Maximum total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Minimum total degree (order at the origin); `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    /// Distinct weighted degrees of the terms, sorted.
    pub fn weighted_degrees(&self, weights: &[i64]) -> Vec<i64> {
        let mut ds: Vec<i64> = self
            .terms
            .keys()
            .map(|e| weighted_degree(e, weights))
            .collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    /// The weighted degree when all terms share it.
    pub fn quasi_degree(&self, weights: &[i64]) -> Option<i64> {
        let ds = self.weighted_degrees(weights);
        if ds.len() == 1 {
            Some(ds[0])
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, exp: &[u32], c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, a)| (e.iter().zip(exp).map(|(x, y)| x + y).collect(), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut p = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            if e[var] > 0 {
                let mut e2 = e.clone();
                e2[var] -= 1;
                p.add_term(e2, c * int(e[var] as i64));
            }
        }
        p
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::pow(x.clone(), k as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitutes the given values for some variables; the variable list is kept.
    pub fn partial_evaluate(&self, values: &[(usize, Rational)]) -> Self {
        let mut p = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let mut t = c.clone();
            for (i, v) in values {
                let k = e2[*i];
                if k > 0 {
                    t *= num_traits::pow(v.clone(), k as usize);
                    e2[*i] = 0;
                }
            }
            p.add_term(e2, t);
        }
        p
    }

    /// Composition: variable `i` of `self` is replaced by `images[i]`, all of which
    /// share one variable list (which becomes the result's).
    pub fn compose(&self, images: &[Polynomial]) -> Self {
        assert_eq!(images.len(), self.vars.len());
        let target = images
            .first()
            .map(|p| p.vars.clone())
            .unwrap_or_else(|| self.vars.clone());
        let mut cache: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::one(&p.vars)])
            .collect();
        let mut out = Polynomial::zero(&target);
        for (e, c) in &self.terms {
            let mut t = Polynomial::constant(&target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while cache[i].len() <= k as usize {
                    let next = cache[i].last().unwrap() * &images[i];
                    cache[i].push(next);
                }
                t = &t * &cache[i][k as usize];
            }
            out = &out + &t;
        }
        out
    }

    /// Re-expresses the polynomial over `target`, matching variables by name.
    pub fn embed(&self, target: &VarList) -> Result<Self> {
        let map: Vec<usize> = self
            .vars
            .names()
            .iter()
            .map(|n| {
                target.index_of(n).ok_or_else(|| Error::VariableMismatch {
                    left: self.vars.names().join(","),
                    right: target.names().join(","),
                })
            })
            .collect::<Result<_>>()?;
        let mut p = Polynomial::zero(target);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; target.len()];
            for (i, &k) in e.iter().enumerate() {
                e2[map[i]] = k;
            }
            p.add_term(e2, c.clone());
        }
        Ok(p)
    }

    /// Drops variables not in `target`; fails if one of them occurs.
    pub fn restrict(&self, target: &VarList) -> Result<Self> {
        let mut p = Polynomial::zero(target);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; target.len()];
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                match target.index_of(&self.vars.names()[i]) {
                    Some(j) => e2[j] = k,
                    None => {
                        return Err(Error::VariableMismatch {
                            left: self.vars.names().join(","),
                            right: target.names().join(","),
                        })
                    }
                }
            }
            p.add_term(e2, c.clone());
        }
        Ok(p)
    }

    /// True if the variable with index `i` occurs.
    pub fn involves(&self, i: usize) -> bool {
        self.terms.keys().any(|e| e[i] > 0)
    }

    /// Terms of total degree below `k`.
    pub fn truncate(&self, k: u32) -> Self {
        Polynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() < k)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Part of weighted degree exactly `d`.
    pub fn weighted_part(&self, weights: &[i64], d: i64) -> Self {
        Polynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| weighted_degree(e, weights) == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Coefficients of the polynomial viewed as a polynomial in variable `var`
    /// (index k holds the coefficient of `var^k`).
    pub fn coefficients_in(&self, var: usize) -> Vec<Polynomial> {
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut out = vec![Polynomial::zero(&self.vars); deg + 1];
        for (e, c) in &self.terms {
            let k = e[var] as usize;
            let mut e2 = e.clone();
            e2[var] = 0;
            out[k].add_term(e2, c.clone());
        }
        out
    }

    /// Leading coefficient under graded lexicographic order (used for normalisation).
    pub fn grlex_leading(&self) -> Option<(&Exponent, &Rational)> {
        self.terms.iter().max_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            da.cmp(&db).then_with(|| a.cmp(b))
        })
    }

    /// Divides by the graded-lex leading coefficient.
    pub fn monic_grlex(&self) -> Self {
        match self.grlex_leading() {
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    pub fn max_abs_coefficient(&self) -> Rational {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// Approximate value at a point of floats.
    pub fn evaluate_f64(&self, point: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut t = c.to_f64().unwrap_or(f64::NAN);
                for (x, &k) in point.iter().zip(e) {
                    t *= x.powi(k as i32);
                }
                t
            })
            .sum()
    }

    /// Parses `text` over `vars` (see [`parse_polynomial`]).
    pub fn parse(text: &str, vars: &VarList) -> Result<Self> {
        parse_polynomial(text, vars)
    }
}

pub fn weighted_degree(e: &[u32], weights: &[i64]) -> i64 {
    e.iter().zip(weights).map(|(&k, &w)| k as i64 * w).sum()
}

/// All exponent vectors with the given weighted degree. Variables of weight zero
/// are not allowed.
pub fn monomials_of_weight(weights: &[i64], d: i64) -> Vec<Exponent> {
    fn rec(weights: &[i64], i: usize, rest: i64, cur: &mut Exponent, out: &mut Vec<Exponent>) {
        if i == weights.len() {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let w = weights[i];
        assert!(w > 0, "weights must be positive");
        let mut k = 0;
        while k * w <= rest {
            cur[i] = k as u32;
            rec(weights, i + 1, rest - k * w, cur, out);
            k += 1;
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if d < 0 {
        return out;
    }
    let mut cur = vec![0; weights.len()];
    rec(weights, 0, d, &mut cur, &mut out);
    out
}

fn check(a: &Polynomial, b: &Polynomial) {
    assert!(
        a.vars == b.vars,
        "variable lists differ: [{}] vs [{}]",
        a.vars.names().join(","),
        b.vars.names().join(",")
    );
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        check(self, rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        check(self, rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        check(self, rhs);
        let mut out = Polynomial::zero(&self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                // exponents add under multiplication
                #[allow(clippy::suspicious_arithmetic_impl)]
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: &Polynomial) -> Polynomial {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

fn fmt_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Polynomial {
    /// Terms in decreasing graded-lex order, e.g. `3/2*x^2*y - z + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut ts: Vec<(&Exponent, &Rational)> = self.terms.iter().collect();
        ts.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (k, (e, c)) in ts.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| {
                    let name = &self.vars.names()[i];
                    if p == 1 {
                        name.clone()
                    } else {
                        format!("{name}^{p}")
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{}", fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", fmt_rational(&abs), mono.join("*"))?;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Parser

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a VarList,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc * self.power()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.power()?;
                    if !d.is_constant() || d.is_zero() {
                        return self.err("division only by nonzero constants");
                    }
                    acc = acc.scale(&d.constant_term().recip());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return self.err("expected non-negative integer exponent");
            }
            let k: u32 = std::str::from_utf8(&self.src[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| Error::Parse {
                    pos: start,
                    msg: "exponent too large".into(),
                })?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.power()?)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                if self.pos < self.src.len()
                    && (self.src[self.pos] == b'.'
                        || self.src[self.pos] == b'e'
                        || self.src[self.pos] == b'E')
                {
                    return self.err("floating-point literals are not allowed");
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let n: BigInt = digits.parse().unwrap();
                Ok(Polynomial::constant(self.vars, Rational::from_integer(n)))
            }
            Some(b'.') => self.err("floating-point literals are not allowed"),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match self.vars.index_of(name) {
                    Some(i) => Ok(Polynomial::var(self.vars, i)),
                    None => Err(Error::Parse {
                        pos: start,
                        msg: format!("unknown variable '{name}'"),
                    }),
                }
            }
            Some(c) => self.err(format!("unexpected character '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses text such as `3/2*x^2*y - z` over a declared variable list.
/// Whitespace is ignored; floating-point literals are rejected.
pub fn parse_polynomial(text: &str, vars: &VarList) -> Result<Polynomial> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        vars,
    };
    let out = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(out)
}

/// Parses a rational literal such as `-5/2` or `3`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || Error::Parse {
        pos: 0,
        msg: format!("not a rational number: '{t}'"),
    };
    if t.contains('.') || t.contains('e') || t.contains('E') {
        return Err(bad());
    }
    let (n, d) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

pub fn format_rational(c: &Rational) -> String {
    if c.is_negative() {
        format!("-{}", fmt_rational(&c.abs()))
    } else {
        fmt_rational(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xyz() -> VarList {
        VarList::new(&["x", "y", "z"])
    }

    #[test]
    fn parse_and_print() {
        let v = xyz();
        let p = parse_polynomial("3/2*x^2*y - z", &v).unwrap();
        assert_eq!(p.to_string(), "3/2*x^2*y - z");
        let q = parse_polynomial(" ( x + y ) ^2 ", &v).unwrap();
        assert_eq!(q.to_string(), "x^2 + 2*x*y + y^2");
        assert_eq!(
            parse_polynomial("x/2", &v).unwrap(),
            Polynomial::var(&v, 0).scale(&rat(1, 2))
        );
    }

    #[test]
    fn parser_rejects_floats_and_unknowns() {
        let v = xyz();
        assert!(matches!(
            parse_polynomial("1.5*x", &v),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_polynomial("2e3", &v),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_polynomial("w + x", &v),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_polynomial("x/y", &v),
            Err(Error::Parse { .. })
        ));
        assert!(parse_rational("0.5").is_err());
        assert_eq!(parse_rational("5/2").unwrap(), rat(5, 2));
    }

    #[test]
    fn arithmetic_is_exact() {
        let v = xyz();
        let a = parse_polynomial("1/3*x - 2/7*y*z + 1", &v).unwrap();
        let b = parse_polynomial("x^2 - 1/3*x", &v).unwrap();
        assert_eq!(&(&a + &b) - &b, a);
        let s = &a + &b;
        assert_eq!(s.coeff(&[1, 0, 0]), Rational::zero());
        assert_eq!((&a * &b).total_degree(), Some(4));
    }

    #[test]
    fn compose_and_derivative() {
        let v = xyz();
        let f = parse_polynomial("x^2*y + z", &v).unwrap();
        let imgs = vec![
            parse_polynomial("x + y", &v).unwrap(),
            parse_polynomial("y", &v).unwrap(),
            parse_polynomial("2*z", &v).unwrap(),
        ];
        let g = f.compose(&imgs);
        assert_eq!(g, parse_polynomial("(x+y)^2*y + 2*z", &v).unwrap());
        assert_eq!(f.derivative(0), parse_polynomial("2*x*y", &v).unwrap());
    }

    #[test]
    fn monomials_by_weight() {
        let ms = monomials_of_weight(&[1, 2], 4);
        assert_eq!(ms.len(), 3);
        assert!(monomials_of_weight(&[1, 1], -1).is_empty());
    }
}
