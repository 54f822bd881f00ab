//! Logarithmic vector fields of the discriminant and of the bifurcation
//! diagram, found by solving the versality decomposition degree by degree.

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::Serialize;

use crate::catalog::{explicit_miniversal, EntryId, Family, ParametricPair};
use crate::error::{Error, Result};
use crate::genericity::{random_nonzero, random_rational, GenericityConfig};
use crate::linalg::{det, poly_det, SparseSystem};
use crate::ll_map::{restricted_function, CpqrParams};
use crate::poly::{int, monomials_of_weight, Polynomial, Rational, VarList};

/// A matrix slot together with a monomial exponent.
type SlotKey = (usize, Vec<u32>);
use crate::upoly::UPoly;

/// Which divisor the fields are tangent to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// The discriminant, on the full base.
    Delta,
    /// The bifurcation diagram of functions, on the truncated base.
    Sigma,
}

/// The left-hand side used for row `i` in bifurcation mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Multiplier {
    /// `F·∂_{λ_i}` (discriminant) or `F^i·∂_{λ_i}` (bifurcation diagram).
    Parameter,
    /// `F^i` times the constant function direction.
    ConstantDirection,
}

/// One solved row: the identity
/// `F^k·D_i(𝓜,F) = (A𝓜 + 𝓜B, G) + Σ h_r ∂_{x_r}(𝓜,F) + Σ v_j ∂_{λ_j}(𝓜,F) [+ w_0·e_f]`
/// holds exactly, where `G = Σ g_s·minor_s`.
#[derive(Clone, Debug)]
pub struct GradedDecomposition {
    pub index: usize,
    pub mode: Mode,
    pub multiplier: Multiplier,
    /// Quasi-degree of the field `Σ v_j ∂_{λ_j}`.
    pub field_degree: i64,
    pub left: Vec<Vec<Polynomial>>,
    pub right: Vec<Vec<Polynomial>>,
    pub h: Vec<Polynomial>,
    pub minor_coeffs: Vec<Polynomial>,
    /// Coefficients of the field, polynomials in the parameters only.
    pub row: Vec<Polynomial>,
    /// Coefficient of the constant function direction (bifurcation mode).
    pub absorber: Option<Polynomial>,
}

/// Square matrix of polynomial vector fields on a parameter space.
#[derive(Clone, Debug)]
pub struct VectorFieldMatrix {
    pub mode: Mode,
    pub multiplier: Multiplier,
    /// The parameters only.
    pub params: VarList,
    pub param_weights: Vec<i64>,
    pub entries: Vec<Vec<Polynomial>>,
    pub field_degrees: Vec<i64>,
    /// Normalized determinant.
    pub det: Polynomial,
    /// `det = scale · (raw determinant)`.
    pub scale: Rational,
    /// Why the parameter multiplier was rejected, when it was.
    pub fallback_reason: Option<String>,
}

impl VectorFieldMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// Degree of each row's coefficients relative to `∂_{λ₀}`-type fields:
    /// the field degree plus the function degree.
    pub fn row_degrees(&self, degree: i64) -> Vec<i64> {
        self.field_degrees.iter().map(|f| f + degree).collect()
    }

    /// Expected quasi-degree of the determinant.
    pub fn expected_det_degree(&self) -> i64 {
        self.field_degrees.iter().sum::<i64>() + self.param_weights.iter().sum::<i64>()
    }

    pub fn evaluate(&self, point: &[Rational]) -> Vec<Vec<Rational>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|p| p.evaluate(point)).collect())
            .collect()
    }

    pub fn det_at(&self, point: &[Rational]) -> Rational {
        det(&self.evaluate(point)) * &self.scale
    }

    /// `ω_i(det)` evaluated at a point; zero on the divisor for tangent fields.
    pub fn tangency_defects(&self, point: &[Rational]) -> Vec<Rational> {
        let grads: Vec<Rational> = (0..self.params.len())
            .map(|j| self.det.derivative(j).evaluate(point))
            .collect();
        self.evaluate(point)
            .iter()
            .map(|row| row.iter().zip(&grads).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Whether some constant combination of the degree-zero rows is the Euler field `Σ w_j λ_j ∂_j`.
    pub fn euler_in_span(&self) -> bool {
        let rows: Vec<&Vec<Polynomial>> = self
            .entries
            .iter()
            .zip(&self.field_degrees)
            .filter(|(_, &d)| d == 0)
            .map(|(r, _)| r)
            .collect();
        let euler: Vec<Polynomial> = (0..self.params.len())
            .map(|j| Polynomial::var(&self.params, j).scale(&int(self.param_weights[j])))
            .collect();
        let mut keys: HashMap<SlotKey, Vec<(usize, Rational)>> = HashMap::new();
        let mut rhs: HashMap<SlotKey, Rational> = HashMap::new();
        for (i, row) in rows.iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                for (e, c) in p.terms() {
                    keys.entry((j, e.clone())).or_default().push((i, c.clone()));
                }
            }
        }
        for (j, p) in euler.iter().enumerate() {
            for (e, c) in p.terms() {
                keys.entry((j, e.clone())).or_default();
                rhs.insert((j, e.clone()), c.clone());
            }
        }
        let mut sys = SparseSystem::new(rows.len());
        let mut sorted: Vec<_> = keys.into_iter().collect();
        sorted.sort_by(|a, b| a.0.cmp(&b.0));
        for (k, entries) in sorted {
            let r = rhs.get(&k).cloned().unwrap_or_else(Rational::zero);
            if !sys.add_equation(entries, r) {
                return false;
            }
        }
        true
    }

    /// Squarefreeness of the determinant, tested on a random line through the parameter space.
    pub fn det_squarefree_on_line(&self, cfg: &GenericityConfig) -> bool {
        restrict_to_line(&self.det, &mut cfg.rng("squarefree-line"), cfg.coeff_bound)
            .is_squarefree()
    }
}

/// `p(a + t·b)` for random `a`, `b`, as a polynomial in `t`.
pub fn restrict_to_line<R: Rng>(p: &Polynomial, rng: &mut R, bound: i64) -> UPoly {
    let tv = VarList::new(&["t"]);
    let t = Polynomial::var(&tv, 0);
    let images: Vec<Polynomial> = (0..p.vars().len())
        .map(|_| {
            &Polynomial::constant(&tv, random_rational(rng, bound))
                + &t.scale(&random_nonzero(rng, bound))
        })
        .collect();
    UPoly::from_polynomial(&p.compose(&images), 0).expect("one variable")
}

fn param_space(pp: &ParametricPair) -> VarList {
    VarList::new(&pp.params)
}

/// The family as module components (entries row-major, then the function).
fn components(pp: &ParametricPair) -> Vec<Polynomial> {
    let mut c: Vec<Polynomial> = pp.matrix.iter().flatten().cloned().collect();
    c.push(pp.function.clone());
    c
}

fn maximal_minors(pp: &ParametricPair) -> Vec<Polynomial> {
    let n = pp.matrix.len();
    (0..=n)
        .map(|j| {
            let sub: Vec<Vec<Polynomial>> = pp
                .matrix
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != j)
                        .map(|(_, p)| p.clone())
                        .collect()
                })
                .collect();
            let m = poly_det(&sub, &pp.vars);
            if j % 2 == 1 {
                -m
            } else {
                m
            }
        })
        .collect()
}

/// Monomials of the given weight; `restrict_params` keeps only parameter variables.
fn ansatz(pp: &ParametricPair, weight: i64, params_only: bool) -> Vec<Vec<u32>> {
    if weight < 0 {
        return vec![];
    }
    if params_only {
        monomials_of_weight(&pp.param_weights, weight)
            .into_iter()
            .map(|e| [0, 0, 0].into_iter().chain(e).collect())
            .collect()
    } else {
        monomials_of_weight(&pp.all_weights(), weight)
    }
}

enum Unknown {
    Left(usize, usize),
    Right(usize, usize),
    H(usize),
    Minor(usize),
    Row(usize),
    Absorber,
}

/// Solves the decomposition for row `index` (0-based over the family's parameters).
pub fn solve_decomposition(
    pp: &ParametricPair,
    index: usize,
    mode: Mode,
    multiplier: Multiplier,
) -> Result<GradedDecomposition> {
    let vars = &pp.vars;
    let n = pp.matrix.len();
    let cols = n + 1;
    let rank = n * cols + 1;
    let fc = rank - 1;
    let d = pp.degree;
    let w = pp.all_weights();
    let np = pp.num_params();
    match mode {
        Mode::Delta if pp.constant_param.is_none() => {
            return Err(Error::Unsupported(
                "discriminant fields need the full family".into(),
            ))
        }
        Mode::Sigma if pp.constant_param.is_some() => {
            return Err(Error::Unsupported(
                "bifurcation fields need the truncated family".into(),
            ))
        }
        _ => {}
    }
    if index >= np {
        return Err(Error::RankMismatch {
            expected: np,
            found: index + 1,
        });
    }
    let base = components(pp);
    let power = match mode {
        Mode::Delta => 1,
        Mode::Sigma => index as u32 + 1,
    };
    let fpow = pp.function.pow(power);
    let (lhs, dir_weight): (Vec<Polynomial>, i64) = match multiplier {
        Multiplier::Parameter => {
            let pv = pp.param_var(index);
            (
                base.iter().map(|c| &c.derivative(pv) * &fpow).collect(),
                pp.param_weights[index],
            )
        }
        Multiplier::ConstantDirection => {
            let mut v = vec![Polynomial::zero(vars); rank];
            v[fc] = fpow.clone();
            (v, d)
        }
    };
    let delta = power as i64 * d - dir_weight;

    let minors = maximal_minors(pp);
    let minor_degs: Vec<Option<i64>> = minors
        .iter()
        .map(|m| {
            if m.is_zero() {
                Ok(None)
            } else {
                m.quasi_degree(&w).map(Some).ok_or(())
            }
        })
        .collect::<std::result::Result<_, ()>>()
        .map_err(|_| Error::NotQuasiHomogeneous("maximal minor of the family".into()))?;

    // images of the unknowns: (unknown, monomial, module vector)
    let mut unknowns: Vec<(Unknown, Vec<u32>)> = Vec::new();
    let mut images: Vec<Vec<Polynomial>> = Vec::new();
    let one = Rational::one();
    let zero_vec = || vec![Polynomial::zero(vars); rank];
    for a in 0..n {
        for m in 0..n {
            for e in ansatz(pp, delta + pp.row_shifts[a] - pp.row_shifts[m], false) {
                let mut v = zero_vec();
                for l in 0..cols {
                    v[a * cols + l] = pp.matrix[m][l].mul_monomial(&e, &one);
                }
                unknowns.push((Unknown::Left(a, m), e));
                images.push(v);
            }
        }
    }
    for m in 0..cols {
        for l in 0..cols {
            for e in ansatz(pp, delta + pp.col_shifts[l] - pp.col_shifts[m], false) {
                let mut v = zero_vec();
                for a in 0..n {
                    v[a * cols + l] = pp.matrix[a][m].mul_monomial(&e, &one);
                }
                unknowns.push((Unknown::Right(m, l), e));
                images.push(v);
            }
        }
    }
    let partials: Vec<Vec<Polynomial>> = (0..vars.len())
        .map(|r| base.iter().map(|c| c.derivative(r)).collect())
        .collect();
    for r in 0..3 {
        for e in ansatz(pp, delta + w[r], false) {
            images.push(
                partials[r]
                    .iter()
                    .map(|c| c.mul_monomial(&e, &one))
                    .collect(),
            );
            unknowns.push((Unknown::H(r), e));
        }
    }
    for (s, (m, deg)) in minors.iter().zip(&minor_degs).enumerate() {
        let Some(deg) = deg else { continue };
        for e in ansatz(pp, d + delta - deg, false) {
            let mut v = zero_vec();
            v[fc] = m.mul_monomial(&e, &one);
            unknowns.push((Unknown::Minor(s), e));
            images.push(v);
        }
    }
    for j in 0..np {
        for e in ansatz(pp, delta + pp.param_weights[j], true) {
            images.push(
                partials[pp.param_var(j)]
                    .iter()
                    .map(|c| c.mul_monomial(&e, &one))
                    .collect(),
            );
            unknowns.push((Unknown::Row(j), e));
        }
    }
    if mode == Mode::Sigma {
        for e in ansatz(pp, delta + d, true) {
            let mut v = zero_vec();
            v[fc] = Polynomial::monomial(vars, e.clone(), one.clone());
            unknowns.push((Unknown::Absorber, e));
            images.push(v);
        }
    }

    let mut eqs: HashMap<SlotKey, Vec<(usize, Rational)>> = HashMap::new();
    for (k, img) in images.iter().enumerate() {
        for (slot, p) in img.iter().enumerate() {
            for (e, c) in p.terms() {
                eqs.entry((slot, e.clone()))
                    .or_default()
                    .push((k, c.clone()));
            }
        }
    }
    let mut rhs: HashMap<SlotKey, Rational> = HashMap::new();
    for (slot, p) in lhs.iter().enumerate() {
        for (e, c) in p.terms() {
            eqs.entry((slot, e.clone())).or_default();
            rhs.insert((slot, e.clone()), c.clone());
        }
    }
    let mut keys: Vec<_> = eqs.into_iter().collect();
    keys.sort_by(|a, b| a.0.cmp(&b.0));
    let mut sys = SparseSystem::new(unknowns.len());
    for (key, entries) in keys {
        let r = rhs.get(&key).cloned().unwrap_or_else(Rational::zero);
        if !sys.add_equation(entries, r) {
            return Err(Error::Inconsistent {
                degree: delta,
                context: format!("row {index} in {mode:?} mode with multiplier {multiplier:?}"),
            });
        }
    }
    let sol = sys.solution();

    let mut left = vec![vec![Polynomial::zero(vars); n]; n];
    let mut right = vec![vec![Polynomial::zero(vars); cols]; cols];
    let mut h = vec![Polynomial::zero(vars); 3];
    let mut minor_coeffs = vec![Polynomial::zero(vars); minors.len()];
    let mut row = vec![Polynomial::zero(vars); np];
    let mut absorber = Polynomial::zero(vars);
    for ((u, e), c) in unknowns.iter().zip(&sol) {
        if c.is_zero() {
            continue;
        }
        let t = Polynomial::monomial(vars, e.clone(), c.clone());
        let slot = match u {
            Unknown::Left(a, m) => &mut left[*a][*m],
            Unknown::Right(m, l) => &mut right[*m][*l],
            Unknown::H(r) => &mut h[*r],
            Unknown::Minor(s) => &mut minor_coeffs[*s],
            Unknown::Row(j) => &mut row[*j],
            Unknown::Absorber => &mut absorber,
        };
        *slot = &*slot + &t;
    }
    let dec = GradedDecomposition {
        index,
        mode,
        multiplier,
        field_degree: delta,
        left,
        right,
        h,
        minor_coeffs,
        row,
        absorber: (mode == Mode::Sigma).then_some(absorber),
    };
    if !identity_holds(pp, &dec, &lhs, &minors, &partials) {
        return Err(Error::Inconsistent {
            degree: delta,
            context: "solved decomposition does not re-expand to the left-hand side".into(),
        });
    }
    Ok(dec)
}

fn identity_holds(
    pp: &ParametricPair,
    dec: &GradedDecomposition,
    lhs: &[Polynomial],
    minors: &[Polynomial],
    partials: &[Vec<Polynomial>],
) -> bool {
    let n = pp.matrix.len();
    let cols = n + 1;
    let fc = n * cols;
    let vars = &pp.vars;
    let mut rhs = vec![Polynomial::zero(vars); fc + 1];
    for a in 0..n {
        for l in 0..cols {
            let mut acc = Polynomial::zero(vars);
            for m in 0..n {
                acc = &acc + &(&dec.left[a][m] * &pp.matrix[m][l]);
            }
            for m in 0..cols {
                acc = &acc + &(&pp.matrix[a][m] * &dec.right[m][l]);
            }
            rhs[a * cols + l] = acc;
        }
    }
    for (g, m) in dec.minor_coeffs.iter().zip(minors) {
        rhs[fc] = &rhs[fc] + &(g * m);
    }
    let mut add_field = |coeff: &Polynomial, field: &[Polynomial]| {
        if coeff.is_zero() {
            return;
        }
        for (r, f) in rhs.iter_mut().zip(field) {
            *r = &*r + &(coeff * f);
        }
    };
    for r in 0..3 {
        add_field(&dec.h[r], &partials[r]);
    }
    for (j, v) in dec.row.iter().enumerate() {
        add_field(v, &partials[pp.param_var(j)]);
    }
    if let Some(a) = &dec.absorber {
        rhs[fc] = &rhs[fc] + a;
    }
    rhs.iter().zip(lhs).all(|(a, b)| a == b)
}

fn to_params(pp: &ParametricPair, p: &Polynomial) -> Result<Polynomial> {
    p.restrict(&param_space(pp))
}

/// Fields tangent to the discriminant: one decomposition per parameter,
/// determinant normalized so that its restriction to the `λ₀`-axis is `λ₀^τ`.
pub fn discriminant_matrix(id: &EntryId) -> Result<(VectorFieldMatrix, Vec<GradedDecomposition>)> {
    let pp = explicit_miniversal(id, false)?;
    let decs = (0..pp.num_params())
        .map(|i| solve_decomposition(&pp, i, Mode::Delta, Multiplier::Parameter))
        .collect::<Result<Vec<_>>>()?;
    let pv = param_space(&pp);
    let entries = decs
        .iter()
        .map(|d| {
            d.row
                .iter()
                .map(|p| to_params(&pp, p))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let raw = poly_det(&entries, &pv);
    let c0 = pp.constant_param.expect("full family");
    let others: Vec<(usize, Rational)> = (0..pv.len())
        .filter(|&j| j != c0)
        .map(|j| (j, Rational::zero()))
        .collect();
    let axis = raw.partial_evaluate(&others);
    let mut e = vec![0u32; pv.len()];
    e[c0] = pp.num_params() as u32;
    let lead = axis.coeff(&e);
    if lead.is_zero() || axis.num_terms() != 1 {
        return Err(Error::Inconsistent {
            degree: 0,
            context: format!("determinant on the constant-term axis is {axis}"),
        });
    }
    let scale = lead.recip();
    Ok((
        VectorFieldMatrix {
            mode: Mode::Delta,
            multiplier: Multiplier::Parameter,
            param_weights: pp.param_weights.clone(),
            field_degrees: decs.iter().map(|d| d.field_degree).collect(),
            det: raw.scale(&scale),
            scale,
            entries,
            params: pv,
            fallback_reason: None,
        },
        decs,
    ))
}

/// Fields tangent to the bifurcation diagram on the truncated base. The
/// parameter multiplier is tried first and kept only if its determinant is
/// nonzero, the Euler field lies in its span, and it vanishes on sampled
/// points of every nonempty component; otherwise the constant function
/// direction is used for every row.
pub fn bifurcation_matrix(
    id: &EntryId,
    cfg: &GenericityConfig,
) -> Result<(VectorFieldMatrix, Vec<GradedDecomposition>)> {
    let pp = explicit_miniversal(id, true)?;
    if pp.num_params() == 0 {
        return Err(Error::Unsupported(format!(
            "{} has a zero-dimensional truncated base",
            id.label()
        )));
    }
    let pv = param_space(&pp);
    let build = |mult: Multiplier| -> Result<(VectorFieldMatrix, Vec<GradedDecomposition>)> {
        let decs = (0..pp.num_params())
            .map(|i| solve_decomposition(&pp, i, Mode::Sigma, mult))
            .collect::<Result<Vec<_>>>()?;
        let entries = decs
            .iter()
            .map(|d| {
                d.row
                    .iter()
                    .map(|p| to_params(&pp, p))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let raw = poly_det(&entries, &pv);
        let scale = raw
            .grlex_leading()
            .map(|(_, c)| c.recip())
            .unwrap_or_else(Rational::zero);
        Ok((
            VectorFieldMatrix {
                mode: Mode::Sigma,
                multiplier: mult,
                param_weights: pp.param_weights.clone(),
                field_degrees: decs.iter().map(|d| d.field_degree).collect(),
                det: raw.scale(&scale),
                scale,
                entries,
                params: pv.clone(),
                fallback_reason: None,
            },
            decs,
        ))
    };
    let reason = match build(Multiplier::Parameter) {
        Ok(r) => match sigma_defect(id, &r.0, cfg)? {
            None => return Ok(r),
            Some(why) => why,
        },
        Err(e) => e.to_string(),
    };
    let (mut w, decs) = build(Multiplier::ConstantDirection)?;
    w.fallback_reason = Some(format!("parameter multiplier rejected: {reason}"));
    Ok((w, decs))
}

/// First failed validity check of a candidate bifurcation matrix.
fn sigma_defect(
    id: &EntryId,
    w: &VectorFieldMatrix,
    cfg: &GenericityConfig,
) -> Result<Option<String>> {
    if w.det.is_zero() {
        return Ok(Some("determinant vanishes identically".into()));
    }
    if !w.euler_in_span() {
        return Ok(Some(
            "Euler field not in the span of the degree-zero rows".into(),
        ));
    }
    for comp in SigmaComponent::ALL {
        let pts = match sample_sigma(id, 6, &cfg.with_seed(cfg.seed ^ 0x5157), comp) {
            Ok(p) => p,
            Err(Error::EmptyComponent(_)) | Err(Error::Unsupported(_)) => continue,
            Err(e) => return Err(e),
        };
        if pts.iter().any(|p| !w.det_at(p).is_zero()) {
            return Ok(Some(format!(
                "determinant nonzero on the {} component",
                comp.name()
            )));
        }
    }
    Ok(None)
}

/// Parameters of the family entering the restricted function affinely,
/// as indices into the value vector.
fn linear_params(id: &EntryId, truncated: bool) -> Vec<usize> {
    match id.family {
        Family::A => {
            let k = id.indices[0] as usize;
            (0..k - 1).collect()
        }
        Family::CSpace => {
            let (p, q, r) = (
                id.indices[0] as usize,
                id.indices[1] as usize,
                id.indices[2] as usize,
            );
            let mut v: Vec<usize> = (3..3 + (p - 1) + (q - 1) + (r - 1)).collect();
            if p == 1 {
                v.push(1);
            }
            if r == 1 {
                v.push(0);
            }
            let _ = truncated;
            v
        }
        _ => vec![],
    }
}

fn random_values<R: Rng>(id: &EntryId, rng: &mut R, bound: i64, full: bool) -> Vec<Rational> {
    let np = match id.family {
        Family::A => id.indices[0] as usize - 1,
        _ => id.indices.iter().map(|&i| i as usize - 1).sum::<usize>() + 3,
    };
    let mut v: Vec<Rational> = (0..np).map(|_| random_nonzero(rng, bound)).collect();
    if full {
        v.push(Rational::zero());
    }
    v
}

/// Values of `F`, `F'`, `F''` at `y0` (constant term taken as zero).
fn jets(id: &EntryId, values: &[Rational], y0: &Rational) -> Result<[Rational; 3]> {
    let mut v = values.to_vec();
    if let Some(last) = v.last_mut() {
        if values.len() == full_len(id) {
            *last = Rational::zero();
        }
    }
    let f = restricted_function(id, &v)?;
    let d1 = f.derivative();
    let d2 = d1.derivative();
    Ok([f.eval(y0)?, d1.eval(y0)?, d2.eval(y0)?])
}

fn full_len(id: &EntryId) -> usize {
    match id.family {
        Family::A => id.indices[0] as usize,
        _ => id.indices.iter().map(|&i| i as usize - 1).sum::<usize>() + 4,
    }
}

/// Jet components of the restricted function at a parameter point.
type JetFn<'a> = dyn Fn(&EntryId, &[Rational]) -> Result<Vec<Rational>> + 'a;

/// Solves for the listed parameters so that the selected jet components
/// vanish at `y0`; the jets are affine in those parameters.
fn solve_affine(
    id: &EntryId,
    values: &mut [Rational],
    params: &[usize],
    conditions: &[(usize, Rational)],
    jet_at: &JetFn<'_>,
) -> Result<bool> {
    let k = params.len();
    for &p in params {
        values[p] = int(1);
    }
    let base = jet_at(id, values)?;
    let mut cols = Vec::with_capacity(k);
    for &p in params {
        values[p] = int(2);
        let shifted = jet_at(id, values)?;
        values[p] = int(1);
        cols.push(
            shifted
                .iter()
                .zip(&base)
                .map(|(a, b)| a - b)
                .collect::<Vec<_>>(),
        );
    }
    // jet(μ) = base + Σ (μ_p - 1)·col_p; solve jet_c(μ) = target_c
    let a: Vec<Vec<Rational>> = (0..conditions.len())
        .map(|r| (0..k).map(|c| cols[c][r].clone()).collect())
        .collect();
    let b: Vec<Rational> = conditions
        .iter()
        .enumerate()
        .map(|(r, (_, t))| t - &base[r])
        .collect();
    if det(&a).is_zero() {
        return Ok(false);
    }
    let Some(x) = crate::linalg::solve_dense(&a, &b) else {
        return Ok(false);
    };
    for (&p, dx) in params.iter().zip(x) {
        values[p] = int(1) + dx;
    }
    Ok(true)
}

fn smooth_values(id: &EntryId, v: &[Rational]) -> bool {
    id.family != Family::CSpace || v[..3].iter().all(|c| !c.is_zero())
}

/// Points of the discriminant: a critical point with critical value zero on a smooth curve.
pub fn sample_discriminant(
    id: &EntryId,
    n: usize,
    cfg: &GenericityConfig,
) -> Result<Vec<Vec<Rational>>> {
    if !matches!(id.family, Family::A | Family::CSpace) {
        return Err(Error::Unsupported(format!(
            "no discriminant sampler for {}",
            id.label()
        )));
    }
    let mut rng = cfg.rng(&format!("delta:{id}"));
    let b = cfg.coeff_bound;
    let last = full_len(id) - 1;
    if id.family == Family::A && id.indices[0] == 1 {
        return Ok(vec![vec![Rational::zero()]; n]);
    }
    let lin = linear_params(id, false);
    let mut out = Vec::with_capacity(n);
    let mut failures = 0;
    while out.len() < n {
        if failures > n * cfg.retries + 100 {
            return Err(Error::Degenerate {
                attempts: failures,
                reason: "discriminant sampler".into(),
            });
        }
        let mut v = random_values(id, &mut rng, b, true);
        let y0 = random_nonzero(&mut rng, b);
        let pick = lin[rng.random_range(0..lin.len())];
        let jet1 = |id: &EntryId, v: &[Rational]| jets(id, v, &y0).map(|j| vec![j[1].clone()]);
        match solve_affine(id, &mut v, &[pick], &[(1, Rational::zero())], &jet1) {
            Ok(true) if smooth_values(id, &v) => {}
            _ => {
                failures += 1;
                continue;
            }
        }
        let Ok(j) = jets(id, &v, &y0) else {
            failures += 1;
            continue;
        };
        v[last] = -j[0].clone();
        out.push(v);
    }
    Ok(out)
}

/// A point of the closure of the discriminant over a singular curve
/// (`C_{p,q,r}`: `α = 0` puts a singular point at the origin, where `F = λ₀ = 0`).
pub fn discriminant_closure_point(id: &EntryId, cfg: &GenericityConfig) -> Result<Vec<Rational>> {
    if id.family != Family::CSpace {
        return Err(Error::Unsupported(
            "closure points are produced for C_{p,q,r}".into(),
        ));
    }
    let mut rng = cfg.rng(&format!("delta-closure:{id}"));
    let mut v = random_values(id, &mut rng, cfg.coeff_bound, true);
    v[0] = Rational::zero();
    Ok(v)
}

/// Components of the bifurcation diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SigmaComponent {
    Nonsmooth,
    Degenerate,
    Level,
}

impl SigmaComponent {
    pub const ALL: [SigmaComponent; 3] = [
        SigmaComponent::Nonsmooth,
        SigmaComponent::Degenerate,
        SigmaComponent::Level,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SigmaComponent::Nonsmooth => "nonsmooth",
            SigmaComponent::Degenerate => "degenerate",
            SigmaComponent::Level => "level",
        }
    }
}

impl std::str::FromStr for SigmaComponent {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nonsmooth" => Ok(SigmaComponent::Nonsmooth),
            "degenerate" => Ok(SigmaComponent::Degenerate),
            "level" => Ok(SigmaComponent::Level),
            _ => Err(Error::Parse {
                pos: 0,
                msg: format!("unknown component {s}"),
            }),
        }
    }
}

/// Points of one component of the bifurcation diagram (truncated parameters).
pub fn sample_sigma(
    id: &EntryId,
    n: usize,
    cfg: &GenericityConfig,
    component: SigmaComponent,
) -> Result<Vec<Vec<Rational>>> {
    if !matches!(id.family, Family::A | Family::CSpace) {
        return Err(Error::Unsupported(format!(
            "no bifurcation-diagram sampler for {}",
            id.label()
        )));
    }
    let mut rng = cfg.rng(&format!("sigma:{id}:{}", component.name()));
    let b = cfg.coeff_bound;
    let lin = linear_params(id, true);
    let tau = id.expected_tau();
    let mut out = Vec::with_capacity(n);
    match (id.family, component) {
        (Family::A, SigmaComponent::Nonsmooth) => {
            return Err(Error::EmptyComponent(
                "the curve of A_k is a smooth line".into(),
            ));
        }
        (Family::A, _) if id.indices[0] == 1 => {
            return Err(Error::Unsupported(
                "A_1 has a zero-dimensional truncated base".into(),
            ));
        }
        (Family::A, _) if id.indices[0] == 2 => {
            // x^3 + λ_1 x: both conditions force λ_1 = 0
            return Ok(vec![vec![Rational::zero()]; n]);
        }
        (Family::A, SigmaComponent::Level) if id.indices[0] == 3 => {
            // x^4 + λ_2 x^2 + λ_1 x is even only for λ_1 = 0; then ±x1 share a level
            for _ in 0..n {
                let x1 = random_nonzero(&mut rng, b);
                out.push(vec![Rational::zero(), -int(2) * &x1 * &x1]);
            }
            return Ok(out);
        }
        (Family::CSpace, SigmaComponent::Nonsmooth) => {
            for k in 0..n {
                let mut v = random_values(id, &mut rng, b, false);
                v[k % 3] = Rational::zero();
                out.push(v);
            }
            return Ok(out);
        }
        (Family::CSpace, SigmaComponent::Level) if tau - 1 < 4 => {
            return Err(Error::EmptyComponent(format!(
                "F - c has numerator degree {} < 4, so two double roots cannot share a level",
                tau - 1
            )));
        }
        _ => {}
    }
    let needed = if component == SigmaComponent::Level {
        3
    } else {
        2
    };
    if lin.len() < needed {
        return Err(Error::Unsupported(format!(
            "{} component of {} needs {needed} affinely entering parameters",
            component.name(),
            id.label()
        )));
    }
    let mut failures = 0;
    while out.len() < n {
        if failures > n * cfg.retries + 100 {
            return Err(Error::Degenerate {
                attempts: failures,
                reason: format!("{} sampler", component.name()),
            });
        }
        let mut v = random_values(id, &mut rng, b, false);
        let y1 = random_nonzero(&mut rng, b);
        let params: Vec<usize> = lin[..needed].to_vec();
        let ok = if component == SigmaComponent::Degenerate {
            let jet = |id: &EntryId, v: &[Rational]| {
                jets(id, v, &y1).map(|j| vec![j[1].clone(), j[2].clone()])
            };
            solve_affine(
                id,
                &mut v,
                &params,
                &[(1, Rational::zero()), (2, Rational::zero())],
                &jet,
            )
        } else {
            let y2 = random_nonzero(&mut rng, b);
            if y2 == y1 {
                failures += 1;
                continue;
            }
            let jet = |id: &EntryId, v: &[Rational]| {
                let a = jets(id, v, &y1)?;
                let c = jets(id, v, &y2)?;
                Ok(vec![a[1].clone(), c[1].clone(), &a[0] - &c[0]])
            };
            solve_affine(
                id,
                &mut v,
                &params,
                &[
                    (1, Rational::zero()),
                    (1, Rational::zero()),
                    (0, Rational::zero()),
                ],
                &jet,
            )
        };
        match ok {
            Ok(true) if smooth_values(id, &v) => out.push(v),
            _ => failures += 1,
        }
    }
    Ok(out)
}

/// The degenerate component of the three-line family in closed form:
/// `α = -y³/γ²`, `β = -(y+γ)³/γ²`.
pub fn three_lines_degenerate_point(y: &Rational, gamma: &Rational) -> Result<Vec<Rational>> {
    if gamma.is_zero() {
        return Err(Error::ZeroParameter("gamma".into()));
    }
    let g2 = gamma * gamma;
    let yg = y + gamma;
    Ok(vec![
        -(y * y * y) / &g2,
        -(&yg * &yg * &yg) / &g2,
        gamma.clone(),
    ])
}

/// One row of the real picture: a component label and a point of the
/// projectivized parameter space (`l1`-normalized, first nonzero coordinate positive).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FigurePoint {
    pub component: String,
    pub coords: [f64; 3],
}

fn projectivize(v: &[Rational]) -> Option<[f64; 3]> {
    let norm: Rational = v.iter().map(|c| c.abs()).sum();
    if norm.is_zero() {
        return None;
    }
    let sign = if v
        .iter()
        .find(|c| !c.is_zero())
        .is_some_and(|c| c.is_negative())
    {
        -int(1)
    } else {
        int(1)
    };
    let f = |c: &Rational| {
        let q = c * &sign / &norm;
        num_traits::ToPrimitive::to_f64(&q).unwrap_or(f64::NAN)
    };
    Some([f(&v[0]), f(&v[1]), f(&v[2])])
}

/// Real points of the bifurcation diagram of `C_{1,1,1}` for plotting:
/// `per_component` points on each nonempty component.
pub fn figure_points(per_component: usize, cfg: &GenericityConfig) -> Result<Vec<FigurePoint>> {
    let id = EntryId::new(Family::CSpace, &[1, 1, 1]);
    let mut out = Vec::new();
    for comp in SigmaComponent::ALL {
        let pts = match sample_sigma(&id, per_component, cfg, comp) {
            Ok(p) => p,
            Err(Error::EmptyComponent(_)) => continue,
            Err(e) => return Err(e),
        };
        for (k, v) in pts.iter().enumerate() {
            let label = match comp {
                SigmaComponent::Nonsmooth => {
                    ["nonsmooth_alpha", "nonsmooth_beta", "nonsmooth_gamma"][k % 3].to_string()
                }
                c => c.name().to_string(),
            };
            if let Some(c) = projectivize(v) {
                out.push(FigurePoint {
                    component: label,
                    coords: c,
                });
            }
        }
    }
    Ok(out)
}

/// Figure data as CSV with header `component,l1,l2,l3`.
pub fn figure_csv(points: &[FigurePoint]) -> String {
    let mut s = String::from("component,l1,l2,l3\n");
    for p in points {
        s.push_str(&format!(
            "{},{:.12},{:.12},{:.12}\n",
            p.component, p.coords[0], p.coords[1], p.coords[2]
        ));
    }
    s
}

/// Converts a full parameter vector of `C_{p,q,r}` into role-split values.
pub fn cpqr_values(id: &EntryId, values: &[Rational]) -> Result<CpqrParams> {
    CpqrParams::from_values((id.indices[0], id.indices[1], id.indices[2]), values)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(s: &str) -> EntryId {
        s.parse().unwrap()
    }

    #[test]
    fn a2_discriminant_is_the_cubic_discriminant() {
        let (v, decs) = discriminant_matrix(&id("A2")).unwrap();
        assert_eq!(decs.len(), 2);
        let pv = v.params.clone();
        // normalized det vanishes exactly on 4 l1^3 + 27 l0^2 = 0
        let expected = crate::poly::parse_polynomial("l0^2 + 4/27*l1^3", &pv).unwrap();
        assert_eq!(v.det, expected);
    }

    #[test]
    fn a1_axis_identity() {
        let (v, _) = discriminant_matrix(&id("A1")).unwrap();
        assert_eq!(v.det.to_string(), "l0");
    }

    #[test]
    fn three_lines_sigma_degrees() {
        let (w, _) = bifurcation_matrix(&id("C:1,1,1"), &GenericityConfig::default()).unwrap();
        assert_eq!(w.row_degrees(1), vec![1, 2, 3]);
        assert_eq!(w.det.quasi_degree(&w.param_weights), Some(6));
        assert!(w.euler_in_span());
    }

    #[test]
    fn degenerate_closed_form_lies_on_sigma() {
        let (w, _) = bifurcation_matrix(&id("C:1,1,1"), &GenericityConfig::default()).unwrap();
        let p = three_lines_degenerate_point(&int(2), &int(3)).unwrap();
        assert!(w.det_at(&p).is_zero());
    }

    #[test]
    fn a2_sigma_level_is_the_origin() {
        let cfg = GenericityConfig::default();
        let pts = sample_sigma(&id("A2"), 3, &cfg, SigmaComponent::Level).unwrap();
        assert!(pts.iter().all(|p| p[0].is_zero()));
    }

    #[test]
    fn empty_level_component() {
        let cfg = GenericityConfig::default();
        assert!(matches!(
            sample_sigma(&id("C:1,1,1"), 5, &cfg, SigmaComponent::Level),
            Err(Error::EmptyComponent(_))
        ));
    }
}
