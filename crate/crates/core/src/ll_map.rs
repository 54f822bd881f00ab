//! The Lyashko-Looijenga map: covering degrees from weights, and the exact
//! machinery for the three-line series (restricted one-variable function,
//! critical values, local-diffeomorphism and zero-fiber checks).

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use crate::catalog::{CatalogEntry, EntryId, Family};
use crate::curve_model::MatrixGerm;
use crate::error::{Error, Result};
use crate::genericity::{random_integer, random_rational, GenericityConfig};
use crate::invariants::miniversal_basis;
use crate::linalg::{det, poly_det};
use crate::modp::{Field, PRIMES};
use crate::poly::{int, Polynomial, Rational, VarList};
use crate::upoly::{QuotientAlgebra, UPoly};

/// Weights of a quasi-homogeneous normal form and of its miniversal parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightProfile {
    pub degree: i64,
    pub var_weights: [i64; 3],
    pub row_shifts: Vec<i64>,
    pub col_shifts: Vec<i64>,
    /// Weights of the `τ` parameters; the constant term (weight `degree`) is last.
    pub param_weights: Vec<i64>,
    pub tau: usize,
}

impl WeightProfile {
    /// Weights of the truncated base (constant term removed).
    pub fn truncated_weights(&self) -> &[i64] {
        &self.param_weights[..self.param_weights.len() - 1]
    }
}

/// Solves `wt(M_ij) = r_i + c_j` over the nonzero entries, with `r_0 = 0`.
pub fn solve_shifts(m: &MatrixGerm, w: &[i64; 3]) -> Result<(Vec<i64>, Vec<i64>)> {
    let n = m.n();
    let mut rows: Vec<Option<i64>> = vec![None; n];
    let mut cols: Vec<Option<i64>> = vec![None; n + 1];
    let degs: Vec<Vec<Option<i64>>> = m
        .rows()
        .iter()
        .map(|r| {
            r.iter()
                .map(|p| {
                    if p.is_zero() {
                        Ok(None)
                    } else {
                        p.quasi_degree(w).map(Some).ok_or(())
                    }
                })
                .collect::<std::result::Result<Vec<_>, ()>>()
        })
        .collect::<std::result::Result<Vec<_>, ()>>()
        .map_err(|_| Error::NotQuasiHomogeneous(format!("matrix entry of {m}")))?;
    loop {
        let seed = (0..n).find(|&i| rows[i].is_none());
        let Some(start) = seed else { break };
        rows[start] = Some(0);
        let mut changed = true;
        while changed {
            changed = false;
            for i in 0..n {
                for j in 0..=n {
                    let Some(d) = degs[i][j] else { continue };
                    match (rows[i], cols[j]) {
                        (Some(r), None) => {
                            cols[j] = Some(d - r);
                            changed = true;
                        }
                        (None, Some(c)) => {
                            rows[i] = Some(d - c);
                            changed = true;
                        }
                        (Some(r), Some(c)) if r + c != d => {
                            return Err(Error::NotQuasiHomogeneous(format!(
                                "inconsistent shifts for {m}"
                            )));
                        }
                        _ => {}
                    }
                }
            }
        }
    }
    Ok((
        rows.into_iter().map(|r| r.unwrap_or(0)).collect(),
        cols.into_iter().map(|c| c.unwrap_or(0)).collect(),
    ))
}

/// Weight data of a quasi-homogeneous catalog entry; the parameter weights
/// are read off the standard monomials spanning the miniversal base.
pub fn weight_profile(entry: &CatalogEntry) -> Result<WeightProfile> {
    let Some(qw) = &entry.weights else {
        return Err(Error::NotQuasiHomogeneous(format!(
            "{} carries a modulus",
            entry.id.label()
        )));
    };
    let pair = &entry.pair;
    let (rows, cols) = solve_shifts(&pair.matrix, &qw.vars)?;
    if pair.function.quasi_degree(&qw.vars) != Some(qw.degree) {
        return Err(Error::NotQuasiHomogeneous(format!(
            "function of {}",
            entry.id.label()
        )));
    }
    let mut shifts: Vec<i64> = Vec::new();
    for r in &rows {
        for c in &cols {
            shifts.push(r + c);
        }
    }
    shifts.push(qw.degree);
    let def = miniversal_basis(pair, false)?;
    let mut weights = Vec::new();
    for m in &def.monomials {
        let q: i64 = m
            .exponent
            .iter()
            .zip(&qw.vars)
            .map(|(&e, &w)| e as i64 * w)
            .sum();
        let w = shifts[m.component] - q;
        if w <= 0 {
            return Err(Error::NotQuasiHomogeneous(format!(
                "parameter of weight {w} in {}",
                entry.id.label()
            )));
        }
        weights.push(w);
    }
    Ok(WeightProfile {
        degree: qw.degree,
        var_weights: qw.vars,
        row_shifts: rows,
        col_shifts: cols,
        tau: weights.len(),
        param_weights: weights,
    })
}

/// Degree of the map: `∏_{k=2}^{τ} k·d` over the product of truncated weights.
pub fn ll_degree(wp: &WeightProfile) -> Result<BigInt> {
    let mut num = BigInt::one();
    for k in 2..=wp.tau as i64 {
        num *= k * wp.degree;
    }
    let den: BigInt = wp
        .truncated_weights()
        .iter()
        .map(|&w| BigInt::from(w))
        .product();
    if (&num % &den) != BigInt::zero() {
        return Err(Error::NonIntegralDegree(format!("{num}/{den}")));
    }
    Ok(num / den)
}

fn factorial(n: i64) -> BigInt {
    (1..=n.max(0)).map(BigInt::from).product()
}

fn bpow(b: i64, e: i64) -> BigInt {
    num_traits::pow(BigInt::from(b), e as usize)
}

/// The closed forms of the index table, as exact rationals.
pub fn printed_ll_degree(id: &EntryId) -> Option<Rational> {
    let i: Vec<i64> = id.indices.iter().map(|&v| v as i64).collect();
    let r = |n: BigInt, d: BigInt| Some(Rational::new(n, d));
    match id.family {
        Family::A => r(bpow(i[0] + 1, i[0] - 1), BigInt::one()),
        Family::B => r(BigInt::one(), BigInt::one()),
        Family::CPlane => {
            let (p, q) = (i[0], i[1]);
            r(
                factorial(p + q - 1) * bpow(p, p) * bpow(q, q),
                factorial(p - 1) * factorial(q - 1),
            )
        }
        Family::F => {
            let k = i[0];
            r(BigInt::from(k - 2) * bpow(k - 1, k) * k, BigInt::from(24))
        }
        Family::CSpace => {
            let (p, q, s) = (i[0], i[1], i[2]);
            r(
                factorial(p + q + s + 1) * bpow(p, p) * bpow(q, q) * bpow(s, s),
                factorial(p - 1) * factorial(q - 1) * factorial(s - 1),
            )
        }
        Family::FDot => {
            let k = i[0];
            r(bpow(k - 3, k) * (k - 2) * (k - 1) * k, BigInt::from(24))
        }
        Family::E => match i[0] {
            6 => r(BigInt::from(243), BigInt::one()),
            7 => r(BigInt::from(896), BigInt::one()),
            _ => r(BigInt::from(3888), BigInt::one()),
        },
        Family::X9Star | Family::J10Star => None,
    }
}

/// A quotient of univariate polynomials in lowest terms with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction1V {
    pub num: UPoly,
    pub den: UPoly,
}

impl RationalFunction1V {
    pub fn new(num: UPoly, den: UPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Pole);
        }
        let g = UPoly::gcd(&num, &den);
        let (mut n, mut d) = if g.deg0() > 0 {
            (num.exact_div(&g), den.exact_div(&g))
        } else {
            (num, den)
        };
        let lc = d.lead().recip();
        n = n.scale(&lc);
        d = d.scale(&lc);
        Ok(RationalFunction1V { num: n, den: d })
    }

    pub fn polynomial(p: UPoly) -> Self {
        RationalFunction1V {
            num: p,
            den: UPoly::one(),
        }
    }

    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RationalFunction1V::new(n, &self.den * &self.den).expect("nonzero denominator")
    }

    pub fn eval(&self, y: &Rational) -> Result<Rational> {
        let d = self.den.eval(y);
        if d.is_zero() {
            return Err(Error::Pole);
        }
        Ok(self.num.eval(y) / d)
    }

    /// Numerator of `F - a` over the fixed denominator.
    pub fn shifted_numerator(&self, a: &Rational) -> UPoly {
        &self.num - &self.den.scale(a)
    }
}

/// Parameter values of the three-line family, split by role.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CpqrParams {
    pub alpha: Rational,
    pub beta: Rational,
    pub gamma: Rational,
    /// `λ_{1,i}`, `i = 1..p-1` (coefficient of `x^{p-i}`).
    pub l1: Vec<Rational>,
    pub l2: Vec<Rational>,
    pub l3: Vec<Rational>,
    pub l0: Rational,
}

impl CpqrParams {
    /// Splits a value vector ordered as the explicit miniversal family
    /// (`α, β, γ, λ_1…, λ_2…, λ_3…, λ₀`); a missing `λ₀` reads as zero.
    pub fn from_values(pqr: (u32, u32, u32), values: &[Rational]) -> Result<Self> {
        let (p, q, r) = (pqr.0 as usize, pqr.1 as usize, pqr.2 as usize);
        let need = 3 + (p - 1) + (q - 1) + (r - 1);
        if values.len() != need && values.len() != need + 1 {
            return Err(Error::RankMismatch {
                expected: need + 1,
                found: values.len(),
            });
        }
        let mut it = values.iter().cloned();
        let mut take = |k: usize| (0..k).map(|_| it.next().unwrap()).collect::<Vec<_>>();
        let abc = take(3);
        let l1 = take(p - 1);
        let l2 = take(q - 1);
        let l3 = take(r - 1);
        let l0 = it.next().unwrap_or_else(Rational::zero);
        Ok(CpqrParams {
            alpha: abc[0].clone(),
            beta: abc[1].clone(),
            gamma: abc[2].clone(),
            l1,
            l2,
            l3,
            l0,
        })
    }

    pub fn to_values(&self) -> Vec<Rational> {
        let mut v = vec![self.alpha.clone(), self.beta.clone(), self.gamma.clone()];
        v.extend(self.l1.iter().cloned());
        v.extend(self.l2.iter().cloned());
        v.extend(self.l3.iter().cloned());
        v.push(self.l0.clone());
        v
    }

    /// Coefficients `a_m` of `u^m`, `m = 0..=p` in the x-block (`a_p = 1`, `a_0 = 0`).
    fn block(lead: usize, lower: &[Rational]) -> Vec<Rational> {
        let mut a = vec![Rational::zero(); lead + 1];
        a[lead] = Rational::one();
        for (i, c) in lower.iter().enumerate() {
            a[lead - 1 - i] = c.clone();
        }
        a
    }
}

/// The function of the three-line family restricted to its (smooth) curve,
/// written in the coordinate `y`: `x = βy/(y+γ)`, `z = α(y+γ)/y`.
pub fn restricted_function_cpqr(
    pqr: (u32, u32, u32),
    prm: &CpqrParams,
) -> Result<RationalFunction1V> {
    let (p, q, r) = (pqr.0 as usize, pqr.1 as usize, pqr.2 as usize);
    if prm.alpha.is_zero() || prm.beta.is_zero() || prm.gamma.is_zero() {
        return Err(Error::ZeroParameter(
            "alpha, beta and gamma must be nonzero".into(),
        ));
    }
    if prm.l1.len() + 1 != p || prm.l2.len() + 1 != q || prm.l3.len() + 1 != r {
        return Err(Error::RankMismatch {
            expected: p + q + r,
            found: prm.l1.len() + prm.l2.len() + prm.l3.len() + 3,
        });
    }
    let y = UPoly::x();
    let yg = &y + &UPoly::constant(prm.gamma.clone());
    let den = &y.pow(r as u32) * &yg.pow(p as u32);
    let a = CpqrParams::block(p, &prm.l1);
    let b = CpqrParams::block(q, &prm.l2);
    let c = CpqrParams::block(r, &prm.l3);
    let mut num = UPoly::zero();
    for (m, am) in a.iter().enumerate().skip(1) {
        if am.is_zero() {
            continue;
        }
        // a_m β^m y^m (y+γ)^{p-m} y^r
        let t = &(&y.pow((m + r) as u32) * &yg.pow((p - m) as u32))
            .scale(&(am * num_traits::pow(prm.beta.clone(), m)));
        num = &num + t;
    }
    let mut yblock = UPoly::constant(prm.l0.clone());
    for (m, bm) in b.iter().enumerate().skip(1) {
        yblock = &yblock + &y.pow(m as u32).scale(bm);
    }
    num = &num + &(&yblock * &den);
    for (m, cm) in c.iter().enumerate().skip(1) {
        if cm.is_zero() {
            continue;
        }
        // c_m α^m (y+γ)^m y^{r-m} (y+γ)^p
        let t = (&yg.pow((m + p) as u32) * &y.pow((r - m) as u32))
            .scale(&(cm * num_traits::pow(prm.alpha.clone(), m)));
        num = &num + &t;
    }
    RationalFunction1V::new(num, den)
}

/// The function of the `A_k` family `x^{k+1} + Σ λ_i x^i + λ₀` on its line;
/// values ordered `λ_1, …, λ_{k-1}, λ₀` (a missing `λ₀` reads as zero).
pub fn restricted_function_a(k: u32, values: &[Rational]) -> Result<RationalFunction1V> {
    let k = k as usize;
    if values.len() != k && values.len() + 1 != k {
        return Err(Error::RankMismatch {
            expected: k,
            found: values.len(),
        });
    }
    let mut c = vec![Rational::zero(); k + 2];
    c[k + 1] = Rational::one();
    c[1..k].clone_from_slice(&values[..k - 1]);
    if values.len() == k {
        c[0] = values[k - 1].clone();
    }
    Ok(RationalFunction1V::polynomial(UPoly::from_coeffs(c)))
}

/// Dispatches on the family: `A_k` or `C_{p,q,r}` with full parameter vectors.
pub fn restricted_function(id: &EntryId, values: &[Rational]) -> Result<RationalFunction1V> {
    match id.family {
        Family::A => restricted_function_a(id.indices[0], values),
        Family::CSpace => {
            let pqr = (id.indices[0], id.indices[1], id.indices[2]);
            restricted_function_cpqr(pqr, &CpqrParams::from_values(pqr, values)?)
        }
        _ => Err(Error::Unsupported(format!(
            "no one-variable restriction for {}",
            id.label()
        ))),
    }
}

/// Critical points and values of a one-variable rational function.
#[derive(Clone, Debug)]
pub struct CriticalData {
    /// Numerator of `F'` in lowest terms, monic; its roots are the critical points.
    pub critical_polynomial: UPoly,
    pub distinct_points: usize,
    /// All critical points are simple roots (Morse).
    pub morse: bool,
    /// `∏ (t - F(y_i))` over the roots with multiplicity.
    pub values: UPoly,
    pub distinct_values: bool,
    /// Isolating intervals of the distinct real critical values.
    pub real_value_enclosures: Vec<(Rational, Rational)>,
}

/// Critical data with isolating intervals (width `2^-40`) of the real critical values.
pub fn critical_values(f: &RationalFunction1V) -> Result<CriticalData> {
    critical_data(f, true)
}

fn critical_data(f: &RationalFunction1V, enclose: bool) -> Result<CriticalData> {
    let d = f.derivative();
    if d.num.is_zero() {
        return Err(Error::ZeroNumerator);
    }
    let crit = d.num.monic();
    if crit.deg0() == 0 {
        return Ok(CriticalData {
            critical_polynomial: crit,
            distinct_points: 0,
            morse: true,
            values: UPoly::one(),
            distinct_values: true,
            real_value_enclosures: vec![],
        });
    }
    let alg = QuotientAlgebra::new(&crit);
    let rho = alg.fraction(&f.num, &f.den).ok_or(Error::Pole)?;
    let values = alg.charpoly(&rho);
    let width = Rational::new(BigInt::one(), BigInt::from(1u64 << 40));
    Ok(CriticalData {
        distinct_points: crit.distinct_root_count(),
        morse: crit.is_squarefree(),
        distinct_values: values.is_squarefree(),
        real_value_enclosures: if enclose {
            values.isolate_real_roots(&width)
        } else {
            vec![]
        },
        critical_polynomial: crit,
        values,
    })
}

/// A monic polynomial `t^τ + …` whose roots are critical values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LLPoint {
    /// Coefficients lowest degree first.
    pub coeffs: Vec<Rational>,
}

impl LLPoint {
    pub fn polynomial(&self) -> UPoly {
        UPoly::from_coeffs(self.coeffs.clone())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Shifts the roots by their mean, making the subleading coefficient vanish.
    pub fn truncated(&self) -> LLPoint {
        let n = self.degree();
        if n == 0 {
            return self.clone();
        }
        let mean = -&self.coeffs[n - 1] / int(n as i64);
        let shifted = self
            .polynomial()
            .compose(&(&UPoly::x() + &UPoly::constant(mean)));
        LLPoint {
            coeffs: (0..=n).map(|k| shifted.coeff(k)).collect(),
        }
    }

    /// Membership in the locus of polynomials with a multiple root.
    pub fn has_multiple_root(&self) -> bool {
        !self.polynomial().is_squarefree()
    }

    pub fn is_origin(&self) -> bool {
        self.coeffs[..self.degree()].iter().all(Zero::is_zero)
    }
}

/// The cylindrical map: the critical values of the deformed function, with
/// multiplicity. Supported for `A_k` and `C_{p,q,r}`.
pub fn ll_point(id: &EntryId, values: &[Rational]) -> Result<LLPoint> {
    if id.family == Family::CSpace {
        let prm = CpqrParams::from_values((id.indices[0], id.indices[1], id.indices[2]), values)?;
        if prm.alpha.is_zero() || prm.beta.is_zero() || prm.gamma.is_zero() {
            return Err(Error::NonSmooth);
        }
    }
    let f = restricted_function(id, values)?;
    let cd = critical_data(&f, false)?;
    let tau = id.expected_tau();
    if cd.values.deg0() != tau {
        return Err(Error::Degenerate {
            attempts: 1,
            reason: format!(
                "{} critical points counted, {tau} expected",
                cd.values.deg0()
            ),
        });
    }
    Ok(LLPoint {
        coeffs: (0..=tau).map(|k| cd.values.coeff(k)).collect(),
    })
}

/// Outcome of the local-diffeomorphism test.
#[derive(Clone, Debug, Serialize)]
pub struct JacobianReport {
    pub nonsingular: bool,
    pub reason: Option<String>,
    /// Determinant of the parameter derivatives in the basis of `Q[y]/(N)`;
    /// nonzero exactly when the evaluation matrix at the critical points is.
    pub evaluation_det: Option<String>,
    /// Determinant of the Jacobian of the map in power-sum coordinates.
    pub ll_jacobian_det: Option<String>,
}

impl JacobianReport {
    fn singular(reason: &str) -> Self {
        JacobianReport {
            nonsingular: false,
            reason: Some(reason.into()),
            evaluation_det: None,
            ll_jacobian_det: None,
        }
    }
}

/// Checks that the cylindrical map is a local diffeomorphism at the given
/// parameter point of `C_{p,q,r}`.
pub fn ll_jacobian_check(id: &EntryId, values: &[Rational]) -> Result<JacobianReport> {
    if id.family != Family::CSpace {
        return Err(Error::Unsupported(
            "the Jacobian check covers C_{p,q,r}".into(),
        ));
    }
    let pqr = (id.indices[0], id.indices[1], id.indices[2]);
    let (p, q, r) = (pqr.0 as usize, pqr.1 as usize, pqr.2 as usize);
    let tau = p + q + r + 1;
    let prm = CpqrParams::from_values(pqr, values)?;
    if prm.alpha.is_zero() || prm.beta.is_zero() || prm.gamma.is_zero() {
        return Ok(JacobianReport::singular("curve is not smooth"));
    }
    let f = restricted_function_cpqr(pqr, &prm)?;
    let cd = critical_data(&f, false)?;
    if cd.critical_polynomial.deg0() != tau {
        return Ok(JacobianReport::singular(
            "critical points escaped to a pole or infinity",
        ));
    }
    if !cd.morse {
        return Ok(JacobianReport::singular("degenerate critical point"));
    }
    if !cd.distinct_values {
        return Ok(JacobianReport::singular("two critical points on one level"));
    }
    let alg = QuotientAlgebra::new(&cd.critical_polynomial);
    let y = UPoly::x();
    let yg = &y + &UPoly::constant(prm.gamma.clone());
    let iy = alg.inverse(&y).ok_or(Error::Pole)?;
    let iyg = alg.inverse(&yg).ok_or(Error::Pole)?;
    let u = alg.mul(&y, &iyg).scale(&prm.beta);
    let v = alg.mul(&yg, &iy).scale(&prm.alpha);
    let powers = |base: &UPoly, n: usize| {
        let mut out = vec![UPoly::one()];
        for _ in 0..n {
            let next = alg.mul(out.last().unwrap(), base);
            out.push(next);
        }
        out
    };
    let up = powers(&u, p);
    let vp = powers(&v, r);
    let yp = powers(&y, q);
    let a = CpqrParams::block(p, &prm.l1);
    let c = CpqrParams::block(r, &prm.l3);
    // Σ m a_m u^m and Σ m c_m v^m
    let su = (1..=p).fold(UPoly::zero(), |acc, m| {
        &acc + &up[m].scale(&(&a[m] * int(m as i64)))
    });
    let sv = (1..=r).fold(UPoly::zero(), |acc, m| {
        &acc + &vp[m].scale(&(&c[m] * int(m as i64)))
    });
    let mut phis: Vec<UPoly> = Vec::with_capacity(tau);
    phis.push(alg.reduce(&sv.scale(&prm.alpha.recip())));
    phis.push(alg.reduce(&su.scale(&prm.beta.recip())));
    phis.push(alg.mul(&(&sv - &su), &iyg));
    for i in 1..p {
        phis.push(alg.reduce(&up[p - i]));
    }
    for i in 1..q {
        phis.push(alg.reduce(&yp[q - i]));
    }
    for i in 1..r {
        phis.push(alg.reduce(&vp[r - i]));
    }
    phis.push(UPoly::one());
    let coords: Vec<Vec<Rational>> = phis.iter().map(|ph| alg.coordinates(ph)).collect();
    let eval_det = det(&coords);
    let rho = alg.fraction(&f.num, &f.den).ok_or(Error::Pole)?;
    let rp = powers(&rho, tau);
    let jac: Vec<Vec<Rational>> = (1..=tau)
        .map(|m| {
            phis.iter()
                .map(|ph| alg.trace(&alg.mul(&rp[m - 1], ph)) * int(m as i64))
                .collect()
        })
        .collect();
    let jac_det = det(&jac);
    let nonsingular = !eval_det.is_zero() && !jac_det.is_zero();
    Ok(JacobianReport {
        nonsingular,
        reason: (!nonsingular)
            .then(|| "parameter derivatives are dependent at the critical points".into()),
        evaluation_det: Some(eval_det.to_string()),
        ll_jacobian_det: Some(jac_det.to_string()),
    })
}

/// Result of the extended evaluation-matrix test.
#[derive(Clone, Debug, Serialize)]
pub struct ExtendedMatrixReport {
    /// `det_{τ+1} = c·B·γ^{p+1}·det_τ` for a nonzero rational `c`.
    pub printed_relation_holds: bool,
    /// `det_{τ+1} = -B·γ^{p+1}·det'_τ`, where `det'_τ` uses `y^{r+1}` as last function.
    pub corrected_relation_holds: bool,
    /// The extended matrix is nonsingular.
    pub extended_nonsingular: bool,
    pub det_tau: String,
    pub det_extended: String,
}

/// Builds the evaluation matrices of the polynomial system
/// `y^{r+1}(y+γ)^j` (`j = 1..p`), `y^j (y+γ)^{p+1}` (`j = q+r..1`),
/// `A y^{r+1} + B (y+γ)^{p+1}` at the given points, symbolically in `γ, A, B`,
/// then appends the function `y^{r+1}` and the point `0`.
pub fn extended_matrix_identity(
    pqr: (u32, u32, u32),
    points: &[Rational],
) -> Result<ExtendedMatrixReport> {
    let (p, q, r) = (pqr.0, pqr.1, pqr.2);
    let tau = (p + q + r + 1) as usize;
    if points.len() != tau {
        return Err(Error::RankMismatch {
            expected: tau,
            found: points.len(),
        });
    }
    let vars = VarList::new(&["g", "A", "B"]);
    let g = Polynomial::var(&vars, 0);
    let a = Polynomial::var(&vars, 1);
    let b = Polynomial::var(&vars, 2);
    let eval = |pt: &Rational, i: usize, extra: bool| -> Polynomial {
        let y = Polynomial::constant(&vars, pt.clone());
        let yg = &y + &g;
        let pp = p as usize;
        let qr = (q + r) as usize;
        if i < pp {
            &y.pow(r + 1) * &yg.pow(i as u32 + 1)
        } else if i < pp + qr {
            let j = (qr - (i - pp)) as u32;
            &y.pow(j) * &yg.pow(p + 1)
        } else if i == pp + qr && !extra {
            &(&a * &y.pow(r + 1)) + &(&b * &yg.pow(p + 1))
        } else {
            y.pow(r + 1)
        }
    };
    let build = |pts: &[Rational], cols: &[(usize, bool)]| -> Vec<Vec<Polynomial>> {
        pts.iter()
            .map(|pt| cols.iter().map(|&(i, e)| eval(pt, i, e)).collect())
            .collect()
    };
    let base_cols: Vec<(usize, bool)> = (0..tau).map(|i| (i, false)).collect();
    let mut ext_cols = base_cols.clone();
    ext_cols.push((tau, true));
    let mut alt_cols: Vec<(usize, bool)> = (0..tau - 1).map(|i| (i, false)).collect();
    alt_cols.push((tau, true));
    let mut ext_pts = points.to_vec();
    ext_pts.push(Rational::zero());
    let det_tau = poly_det(&build(points, &base_cols), &vars);
    let det_ext = poly_det(&build(&ext_pts, &ext_cols), &vars);
    let det_alt = poly_det(&build(points, &alt_cols), &vars);
    let factor = &b * &g.pow(p + 1);
    let rhs = &factor * &det_tau;
    let printed = match (det_ext.grlex_leading(), rhs.grlex_leading()) {
        (Some((e1, c1)), Some((e2, c2))) if e1 == e2 => det_ext == rhs.scale(&(c1 / c2)),
        _ => false,
    };
    let corrected = det_ext == -(&factor * &det_alt);
    Ok(ExtendedMatrixReport {
        printed_relation_holds: printed,
        corrected_relation_holds: corrected,
        extended_nonsingular: !det_ext.is_zero(),
        det_tau: det_tau.to_string(),
        det_extended: det_ext.to_string(),
    })
}

/// Degree bounds behind the zero-fiber argument, per stratum, and a random
/// search for nonzero parameters whose critical values all vanish.
#[derive(Clone, Debug, Serialize)]
pub struct FiberReport {
    pub tau: usize,
    /// Largest numerator degree of `F - a` over smooth draws.
    pub smooth_numerator_degree: usize,
    pub smooth_bound_holds: bool,
    /// Multiplicity contributed by the line in the one-node stratum.
    pub node_line_contribution: usize,
    /// Numerator degree of the restriction to the hyperbola.
    pub node_curve_degree: usize,
    pub node_bound_holds: bool,
    /// Degrees of the restrictions to the three lines.
    pub three_line_degrees: [usize; 3],
    pub three_line_bound_holds: bool,
    pub zero_fiber_draws: usize,
    pub zero_fiber_hits: usize,
}

impl FiberReport {
    pub fn passed(&self) -> bool {
        self.smooth_bound_holds
            && self.node_bound_holds
            && self.three_line_bound_holds
            && self.zero_fiber_hits == 0
    }
}

/// Random parameters of the three-line family: small integers, with
/// `α, β, γ` nonzero so that the curve is smooth.
pub fn random_cpqr_params<R: Rng>(pqr: (u32, u32, u32), rng: &mut R, bound: i64) -> CpqrParams {
    let (p, q, r) = pqr;
    let nonzero = |rng: &mut R| loop {
        let v = random_integer(rng, bound);
        if !v.is_zero() {
            return v;
        }
    };
    CpqrParams {
        alpha: nonzero(rng),
        beta: nonzero(rng),
        gamma: nonzero(rng),
        l1: (1..p).map(|_| random_integer(rng, bound)).collect(),
        l2: (1..q).map(|_| random_integer(rng, bound)).collect(),
        l3: (1..r).map(|_| random_integer(rng, bound)).collect(),
        l0: random_integer(rng, bound),
    }
}

/// Lowest exponent with a nonzero coefficient.
fn order_at_zero(p: &UPoly) -> usize {
    p.coeffs()
        .iter()
        .position(|c| !c.is_zero())
        .unwrap_or(usize::MAX)
}

/// Cheap necessary condition for `LL̄ = t^τ`: every critical value vanishes,
/// so the numerator is nilpotent modulo the critical polynomial.
fn may_be_origin(pqr: (u32, u32, u32), prm: &CpqrParams, tau: usize) -> Result<bool> {
    let f = restricted_function_cpqr(pqr, prm)?;
    let crit = f.derivative().num;
    if crit.deg0() != tau {
        return Ok(false);
    }
    // a power that survives reduction modulo a prime is nonzero
    let field = Field::new(PRIMES[0]);
    if let (Some(n), Some(m)) = (field.reduce(&f.num), field.reduce(&crit)) {
        if m.degree() == crit.degree() && !field.nilpotent_mod(&n, &m, tau) {
            return Ok(false);
        }
    }
    let mut r = f.num.rem(&crit);
    let mut power = 1;
    while !r.is_zero() && power < tau {
        r = (&r * &r).rem(&crit);
        power *= 2;
    }
    Ok(r.is_zero())
}

pub fn ll_fiber_origin_check(
    pqr: (u32, u32, u32),
    draws: usize,
    cfg: &GenericityConfig,
) -> Result<FiberReport> {
    let (p, q, r) = pqr;
    if !(p >= q && q >= r && r >= 1) {
        return Err(Error::Restriction("requires p >= q >= r >= 1".into()));
    }
    let id = EntryId::new(Family::CSpace, &[p, q, r]);
    let tau = id.expected_tau();
    let bound_deg = (p + q + r) as usize;
    let mut rng = cfg.rng(&format!("fiber:{id}"));
    let b = cfg.coeff_bound;

    let mut smooth_deg = 0;
    for _ in 0..32 {
        let prm = random_cpqr_params(pqr, &mut rng, b);
        let f = restricted_function_cpqr(pqr, &prm)?;
        let a = random_rational(&mut rng, b);
        smooth_deg = smooth_deg.max(f.shifted_numerator(&a).deg0());
    }

    // one node: β = 0; the line y = -γ, z = 0 runs in the x-direction and
    // the hyperbola yz = α(y+γ) lies in x = 0; a single critical value forces λ_1 = 0
    let prm = {
        let mut prm = random_cpqr_params(pqr, &mut rng, b);
        prm.beta = Rational::zero();
        prm.l1.iter_mut().for_each(|c| *c = Rational::zero());
        prm
    };
    let xs = UPoly::x();
    let on_line = xs.pow(p);
    let line_contribution = order_at_zero(&on_line);
    let y = UPoly::x();
    let yg = &y + &UPoly::constant(prm.gamma.clone());
    let bq = CpqrParams::block(q as usize, &prm.l2);
    let cr = CpqrParams::block(r as usize, &prm.l3);
    let yblock = (1..=q as usize).fold(UPoly::zero(), |acc, m| {
        &acc + &y.pow(m as u32).scale(&bq[m])
    });
    // numerator over y^r of the restriction minus its value at the node y = -γ
    let node_value = yblock.eval(&-prm.gamma.clone());
    let mut num = &(&yblock - &UPoly::constant(node_value)) * &y.pow(r);
    for (m, cm) in cr.iter().enumerate().skip(1) {
        if cm.is_zero() {
            continue;
        }
        let t = (&yg.pow(m as u32) * &y.pow(r - m as u32))
            .scale(&(cm * num_traits::pow(prm.alpha.clone(), m)));
        num = &num + &t;
    }
    let node_curve_degree = num.deg0();

    // three lines: α = β = 0; restrictions are polynomials of degrees p, q, r
    let deg_x = CpqrParams::block(p as usize, &prm.l1).len() - 1;
    let deg_y = bq.len() - 1;
    let deg_z = cr.len() - 1;

    let mut hits = 0;
    for _ in 0..draws {
        let prm = random_cpqr_params(pqr, &mut rng, b);
        if !may_be_origin(pqr, &prm, tau)? {
            continue;
        }
        match ll_point(&id, &prm.to_values()) {
            Ok(pt) if pt.is_origin() => hits += 1,
            _ => {}
        }
    }
    Ok(FiberReport {
        tau,
        smooth_numerator_degree: smooth_deg,
        smooth_bound_holds: smooth_deg <= bound_deg && bound_deg < tau,
        node_line_contribution: line_contribution,
        node_curve_degree,
        node_bound_holds: line_contribution == p as usize
            && node_curve_degree <= (q + r) as usize
            && line_contribution + node_curve_degree < tau,
        three_line_degrees: [deg_x, deg_y, deg_z],
        three_line_bound_holds: deg_x + deg_y + deg_z < tau,
        zero_fiber_draws: draws,
        zero_fiber_hits: hits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::instantiate;
    use crate::poly::rat;

    #[test]
    fn weights_of_small_entries() {
        let a3 = weight_profile(&instantiate(&"A3".parse().unwrap()).unwrap()).unwrap();
        let mut w = a3.truncated_weights().to_vec();
        w.sort();
        assert_eq!(w, vec![2, 3]);
        assert_eq!(ll_degree(&a3).unwrap(), BigInt::from(16));
        let c = weight_profile(&instantiate(&"C:1,1,1".parse().unwrap()).unwrap()).unwrap();
        assert_eq!(c.truncated_weights(), &[1, 1, 1]);
        assert_eq!(ll_degree(&c).unwrap(), BigInt::from(24));
        let e7 = weight_profile(&instantiate(&"E7".parse().unwrap()).unwrap()).unwrap();
        assert_eq!(ll_degree(&e7).unwrap(), BigInt::from(896));
    }

    #[test]
    fn moduli_have_no_profile() {
        let x9 = instantiate(&"X9@2".parse().unwrap()).unwrap();
        assert!(matches!(
            weight_profile(&x9),
            Err(Error::NotQuasiHomogeneous(_))
        ));
    }

    #[test]
    fn three_lines_restriction_at_unit_parameters() {
        let prm = CpqrParams::from_values((1, 1, 1), &[int(1), int(1), int(1), int(0)]).unwrap();
        let f = restricted_function_cpqr((1, 1, 1), &prm).unwrap();
        // y/(y+1) + y + (y+1)/y
        let y = UPoly::x();
        let y1 = &y + &UPoly::one();
        let num = &(&(&y * &y) + &(&(&y * &y) * &y1)) + &(&y1 * &y1);
        assert_eq!(f, RationalFunction1V::new(num, &y * &y1).unwrap());
        assert_eq!(f.den.eval(&int(0)), int(0));
        assert_eq!(f.den.eval(&int(-1)), int(0));
        let cd = critical_values(&f).unwrap();
        assert_eq!(cd.critical_polynomial.deg0(), 4);
    }

    #[test]
    fn cubic_critical_values() {
        let f = RationalFunction1V::polynomial(UPoly::from_ints(&[0, -3, 0, 1]));
        let cd = critical_values(&f).unwrap();
        assert_eq!(cd.values, UPoly::from_ints(&[-4, 0, 1]));
        let g = RationalFunction1V::polynomial(UPoly::from_ints(&[0, 0, 0, 1]));
        let cd = critical_values(&g).unwrap();
        assert!(!cd.morse);
        assert_eq!(cd.distinct_points, 1);
    }

    #[test]
    fn a2_point_and_truncation() {
        let id: EntryId = "A2".parse().unwrap();
        let pt = ll_point(&id, &[int(-3), int(0)]).unwrap();
        assert_eq!(pt.coeffs, vec![int(-4), int(0), int(1)]);
        assert_eq!(pt.truncated(), pt);
        let shifted = ll_point(&id, &[int(-3), int(5)]).unwrap();
        assert_eq!(shifted.truncated(), pt);
        let multiple = ll_point(&id, &[int(0), int(0)]).unwrap();
        assert!(multiple.has_multiple_root());
    }

    #[test]
    fn extended_relation_for_three_lines() {
        let pts = [int(1), int(2), int(3), int(5)];
        let rep = extended_matrix_identity((1, 1, 1), &pts).unwrap();
        assert!(rep.corrected_relation_holds);
        assert!(rep.extended_nonsingular);
    }

    #[test]
    fn jacobian_at_a_generic_point() {
        let id: EntryId = "C:1,1,1".parse().unwrap();
        let rep = ll_jacobian_check(&id, &[int(2), rat(-3, 2), int(5), int(1)]).unwrap();
        assert!(rep.nonsingular, "{rep:?}");
        let rep = ll_jacobian_check(&id, &[int(0), rat(-3, 2), int(5), int(1)]).unwrap();
        assert!(!rep.nonsingular);
    }
}
