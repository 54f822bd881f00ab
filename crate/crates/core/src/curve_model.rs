//! Determinantal curve-germs in `C^3`, functions on them, the equivalence
//! action, and the extended tangent space.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{det, poly_det, rank};
use crate::local_algebra::{standard_basis, LocalOrder, ModuleElement};
use crate::poly::{parse_polynomial, Polynomial, Rational, VarList};

/// The ambient coordinates `(x, y, z)`.
pub fn space_vars() -> VarList {
    VarList::new(&["x", "y", "z"])
}

/// An `n × (n+1)` matrix of polynomials whose maximal minors cut out a curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixGerm {
    vars: VarList,
    rows: Vec<Vec<Polynomial>>,
}

impl MatrixGerm {
    pub fn new(rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidMatrix("no rows".into()));
        }
        if rows.iter().any(|r| r.len() != n + 1) {
            return Err(Error::InvalidMatrix(format!(
                "expected {n}x{} entries",
                n + 1
            )));
        }
        let vars = rows[0][0].vars().clone();
        for p in rows.iter().flatten() {
            p.vars().check_same(&vars)?;
        }
        let m = MatrixGerm { vars, rows };
        if m.maximal_minors().iter().all(Polynomial::is_zero) {
            return Err(Error::InvalidMatrix("all maximal minors vanish".into()));
        }
        Ok(m)
    }

    /// Parses rows separated by `;` and entries by `,`.
    pub fn parse(text: &str, vars: &VarList) -> Result<Self> {
        let rows = text
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|e| parse_polynomial(e, vars))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        MatrixGerm::new(rows)
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn vars(&self) -> &VarList {
        &self.vars
    }

    pub fn rows(&self) -> &[Vec<Polynomial>] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.rows[i][j]
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = &Polynomial> {
        self.rows.iter().flatten()
    }

    /// The `n+1` order-`n` minors; the `j`-th deletes column `j` and carries
    /// the cofactor sign `(-1)^j`.
    pub fn maximal_minors(&self) -> Vec<Polynomial> {
        let n = self.n();
        (0..=n)
            .map(|j| {
                let sub: Vec<Vec<Polynomial>> = self
                    .rows
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|(k, _)| *k != j)
                            .map(|(_, p)| p.clone())
                            .collect()
                    })
                    .collect();
                let d = poly_det(&sub, &self.vars);
                if j % 2 == 1 {
                    -d
                } else {
                    d
                }
            })
            .collect()
    }

    /// `n` minus the rank of the constant matrix at the origin.
    pub fn corank(&self) -> usize {
        let m0: Vec<Vec<Rational>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(Polynomial::constant_term).collect())
            .collect();
        self.n() - rank(&m0)
    }

    pub fn map_entries<F: Fn(&Polynomial) -> Polynomial>(&self, f: F) -> MatrixGerm {
        let rows: Vec<Vec<Polynomial>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(&f).collect())
            .collect();
        MatrixGerm {
            vars: rows[0][0].vars().clone(),
            rows,
        }
    }

    pub fn mul(
        a: &[Vec<Polynomial>],
        b: &[Vec<Polynomial>],
        vars: &VarList,
    ) -> Vec<Vec<Polynomial>> {
        let inner = b.len();
        let cols = b.first().map_or(0, |r| r.len());
        a.iter()
            .map(|row| {
                (0..cols)
                    .map(|j| {
                        let mut s = Polynomial::zero(vars);
                        for k in 0..inner {
                            if !row[k].is_zero() && !b[k][j].is_zero() {
                                s = &s + &(&row[k] * &b[k][j]);
                            }
                        }
                        s
                    })
                    .collect()
            })
            .collect()
    }
}

impl fmt::Display for MatrixGerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, p) in r.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{p}")?;
            }
        }
        Ok(())
    }
}

/// A function on a determinantal curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveFunctionPair {
    pub matrix: MatrixGerm,
    pub function: Polynomial,
}

impl CurveFunctionPair {
    pub fn new(matrix: MatrixGerm, function: Polynomial) -> Result<Self> {
        function.vars().check_same(matrix.vars())?;
        Ok(CurveFunctionPair { matrix, function })
    }

    pub fn vars(&self) -> &VarList {
        self.matrix.vars()
    }

    /// Rank `n(n+1)+1` of the ambient module.
    pub fn module_rank(&self) -> usize {
        let n = self.matrix.n();
        n * (n + 1) + 1
    }

    /// Component index of matrix entry `(i, j)`; the function is last.
    pub fn component(&self, i: usize, j: usize) -> usize {
        i * (self.matrix.n() + 1) + j
    }

    pub fn function_component(&self) -> usize {
        self.module_rank() - 1
    }

    /// The pair as a module element (entries row-major, then the function).
    pub fn as_element(&self) -> ModuleElement {
        let mut comps: Vec<Polynomial> = self.matrix.entries().cloned().collect();
        comps.push(self.function.clone());
        ModuleElement::new(comps).expect("nonempty")
    }
}

/// Places a plane curve `g = 0` with function `f` into `C^3` as the matrix `[g, z]`.
pub fn embed_plane_curve(g: &Polynomial, f: &Polynomial) -> Result<CurveFunctionPair> {
    let vars = space_vars();
    let lift = |p: &Polynomial| -> Result<Polynomial> {
        let q = p.embed(&vars)?;
        if q.involves(2) {
            return Err(Error::InvalidMatrix(format!(
                "plane data may not involve z: {p}"
            )));
        }
        Ok(q)
    };
    let g3 = lift(g)?;
    let f3 = lift(f)?;
    let m = MatrixGerm::new(vec![vec![g3, Polynomial::var(&vars, 2)]])?;
    CurveFunctionPair::new(m, f3)
}

/// Generators of the extended tangent space, in the order: `E_ij M`,
/// `M E_kl`, the minors in the function slot, and the coupled partial
/// derivatives of the pair.
pub fn tangent_space(pair: &CurveFunctionPair) -> Vec<ModuleElement> {
    let vars = pair.vars();
    let n = pair.matrix.n();
    let rank = pair.module_rank();
    let mut out = Vec::new();
    let zero = || vec![Polynomial::zero(vars); rank];
    for i in 0..n {
        for j in 0..n {
            let mut c = zero();
            for l in 0..=n {
                c[pair.component(i, l)] = pair.matrix.entry(j, l).clone();
            }
            out.push(ModuleElement::new(c).unwrap());
        }
    }
    for k in 0..=n {
        for l in 0..=n {
            let mut c = zero();
            for i in 0..n {
                c[pair.component(i, l)] = pair.matrix.entry(i, k).clone();
            }
            out.push(ModuleElement::new(c).unwrap());
        }
    }
    let fc = pair.function_component();
    for m in pair.matrix.maximal_minors() {
        out.push(ModuleElement::unit(vars, rank, fc, m));
    }
    let whole = pair.as_element();
    for r in 0..vars.len() {
        out.push(whole.derivative(r));
    }
    out
}

/// Data of an equivalence `(A M B, f + g) ∘ h`.
#[derive(Clone, Debug)]
pub struct EquivalenceWitness {
    pub left: Vec<Vec<Polynomial>>,
    pub right: Vec<Vec<Polynomial>>,
    pub substitution: Vec<Polynomial>,
    pub addend: Polynomial,
}

impl EquivalenceWitness {
    pub fn identity(pair: &CurveFunctionPair) -> Self {
        let vars = pair.vars();
        let n = pair.matrix.n();
        let id = |k: usize| -> Vec<Vec<Polynomial>> {
            (0..k)
                .map(|i| {
                    (0..k)
                        .map(|j| {
                            if i == j {
                                Polynomial::one(vars)
                            } else {
                                Polynomial::zero(vars)
                            }
                        })
                        .collect()
                })
                .collect()
        };
        EquivalenceWitness {
            left: id(n),
            right: id(n + 1),
            substitution: (0..vars.len()).map(|i| Polynomial::var(vars, i)).collect(),
            addend: Polynomial::zero(vars),
        }
    }
}

fn constant_det(m: &[Vec<Polynomial>]) -> Rational {
    det(&m
        .iter()
        .map(|r| r.iter().map(Polynomial::constant_term).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

/// True if `g` lies in the ideal of maximal minors of `m` (in the local ring).
pub fn in_minor_ideal(m: &MatrixGerm, g: &Polynomial) -> Result<bool> {
    if g.is_zero() {
        return Ok(true);
    }
    let gens: Vec<ModuleElement> = m
        .maximal_minors()
        .into_iter()
        .filter(|p| !p.is_zero())
        .map(|p| ModuleElement::new(vec![p]).unwrap())
        .collect();
    let sb = standard_basis(&gens, &LocalOrder::negative_degree_lex(m.vars().len()))?;
    sb.contains(&ModuleElement::new(vec![g.clone()])?)
}

/// Returns `(A M B ∘ h, (f + g) ∘ h)` after validating the witness.
pub fn apply_equivalence(
    pair: &CurveFunctionPair,
    w: &EquivalenceWitness,
) -> Result<CurveFunctionPair> {
    let vars = pair.vars();
    let n = pair.matrix.n();
    if w.left.len() != n || w.left.iter().any(|r| r.len() != n) {
        return Err(Error::Witness(format!("left factor must be {n}x{n}")));
    }
    if w.right.len() != n + 1 || w.right.iter().any(|r| r.len() != n + 1) {
        return Err(Error::Witness(format!(
            "right factor must be {0}x{0}",
            n + 1
        )));
    }
    if constant_det(&w.left).is_zero() {
        return Err(Error::Witness(
            "left factor is singular at the origin".into(),
        ));
    }
    if constant_det(&w.right).is_zero() {
        return Err(Error::Witness(
            "right factor is singular at the origin".into(),
        ));
    }
    if w.substitution.len() != vars.len() {
        return Err(Error::Witness(
            "substitution has the wrong number of components".into(),
        ));
    }
    for p in w
        .left
        .iter()
        .chain(&w.right)
        .flatten()
        .chain(&w.substitution)
        .chain([&w.addend])
    {
        p.vars().check_same(vars)?;
    }
    if w.substitution.iter().any(|h| !h.constant_term().is_zero()) {
        return Err(Error::Witness("substitution must fix the origin".into()));
    }
    let jac: Vec<Vec<Rational>> = w
        .substitution
        .iter()
        .map(|h| {
            (0..vars.len())
                .map(|j| {
                    let mut e = vec![0; vars.len()];
                    e[j] = 1;
                    h.coeff(&e)
                })
                .collect()
        })
        .collect();
    if det(&jac).is_zero() {
        return Err(Error::Witness(
            "linear part of the substitution is singular".into(),
        ));
    }
    if !in_minor_ideal(&pair.matrix, &w.addend)? {
        return Err(Error::Witness(
            "addend is not in the ideal of maximal minors".into(),
        ));
    }
    let amb = MatrixGerm::mul(
        &MatrixGerm::mul(&w.left, pair.matrix.rows(), vars),
        &w.right,
        vars,
    );
    let h = &w.substitution;
    let rows: Vec<Vec<Polynomial>> = amb
        .iter()
        .map(|r| r.iter().map(|p| p.compose(h)).collect())
        .collect();
    let f = (&pair.function + &w.addend).compose(h);
    CurveFunctionPair::new(MatrixGerm::new(rows)?, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::local_algebra::quotient_dimension;

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s, &space_vars()).unwrap()
    }

    fn tau(pair: &CurveFunctionPair) -> usize {
        let order = LocalOrder::negative_degree_lex(3);
        quotient_dimension(&tangent_space(pair), pair.module_rank(), &order)
            .unwrap()
            .finite()
            .unwrap()
    }

    #[test]
    fn minors_of_the_three_line_matrix() {
        let m = MatrixGerm::parse("x, y, 0; 0, y, z", &space_vars()).unwrap();
        assert_eq!(m.maximal_minors(), vec![p("y*z"), p("-x*z"), p("x*y")]);
        assert_eq!(m.corank(), 2);
    }

    #[test]
    fn minors_of_the_cusp_matrix() {
        let m = MatrixGerm::parse("x, y, 0; y^2, x, z", &space_vars()).unwrap();
        assert_eq!(
            m.maximal_minors(),
            vec![p("y*z"), p("-x*z"), p("x^2 - y^3")]
        );
    }

    #[test]
    fn one_by_two_minors_and_corank() {
        let m = MatrixGerm::parse("y, z", &space_vars()).unwrap();
        assert_eq!(m.maximal_minors(), vec![p("z"), p("-y")]);
        assert_eq!(m.corank(), 1);
        assert_eq!(
            MatrixGerm::parse("1, x", &space_vars()).unwrap().corank(),
            0
        );
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(MatrixGerm::parse("x, y; y, z", &space_vars()).is_err());
        assert!(MatrixGerm::parse("0, 0", &space_vars()).is_err());
    }

    #[test]
    fn embedding_and_tangent_generators() {
        let v2 = VarList::new(&["x", "y"]);
        let pair = embed_plane_curve(
            &parse_polynomial("y", &v2).unwrap(),
            &parse_polynomial("x^2", &v2).unwrap(),
        )
        .unwrap();
        assert_eq!(pair.matrix.rows()[0], vec![p("y"), p("z")]);
        let t = tangent_space(&pair);
        assert_eq!(t.len(), 1 + 4 + 2 + 3);
        let el = |a: &str, b: &str, c: &str| ModuleElement::new(vec![p(a), p(b), p(c)]).unwrap();
        for g in [
            el("y", "z", "0"),
            el("y", "0", "0"),
            el("0", "y", "0"),
            el("z", "0", "0"),
            el("0", "z", "0"),
            el("0", "0", "2*x"),
            el("1", "0", "0"),
            el("0", "1", "0"),
        ] {
            assert!(t.contains(&g), "missing {g}");
        }
        assert_eq!(tau(&pair), 1);
        let bad = embed_plane_curve(&p("y + z"), &p("x"));
        assert!(bad.is_err());
    }

    #[test]
    fn three_lines_have_tau_four() {
        let m = MatrixGerm::parse("x, y, 0; 0, y, z", &space_vars()).unwrap();
        let pair = CurveFunctionPair::new(m, p("x + y + z")).unwrap();
        assert_eq!(tau(&pair), 4);
    }

    #[test]
    fn equivalence_checks() {
        let m = MatrixGerm::parse("x, y, 0; 0, y, z", &space_vars()).unwrap();
        let pair = CurveFunctionPair::new(m, p("x + y + z")).unwrap();
        let id = EquivalenceWitness::identity(&pair);
        assert_eq!(apply_equivalence(&pair, &id).unwrap(), pair);
        let mut w = id.clone();
        w.addend = p("x*y");
        let moved = apply_equivalence(&pair, &w).unwrap();
        assert_eq!(tau(&moved), 4);
        w.addend = p("x");
        assert!(matches!(
            apply_equivalence(&pair, &w),
            Err(Error::Witness(_))
        ));
        let mut w = id;
        w.substitution[0] = p("y");
        assert!(matches!(
            apply_equivalence(&pair, &w),
            Err(Error::Witness(_))
        ));
    }
}
