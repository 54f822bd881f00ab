//! Tjurina and Milnor numbers, the miniversal base, and the comparison of the two numbers.

use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use crate::catalog::{CatalogEntry, Family};
use crate::curve_model::{tangent_space, CurveFunctionPair};
use crate::elimination::{first_subresultant, resultant_x};
use crate::error::{Error, Result};
use crate::genericity::{random_nonzero, random_rational, GenericityConfig};
use crate::ll_map::{random_cpqr_params, restricted_function_cpqr};
use crate::local_algebra::{
    standard_basis, LocalOrder, ModuleElement, StandardBasis, StandardMonomial,
};
use crate::modp::{Field, PolyP, PRIMES};
use crate::poly::{monomials_of_weight, weighted_degree, Polynomial, Rational};
use crate::upoly::{QuotientAlgebra, UPoly};

fn tangent_basis(pair: &CurveFunctionPair) -> Result<StandardBasis> {
    standard_basis(
        &tangent_space(pair),
        &LocalOrder::negative_degree_lex(pair.vars().len()),
    )
}

/// Codimension of the extended tangent space.
pub fn tjurina(pair: &CurveFunctionPair) -> Result<usize> {
    tangent_basis(pair)?
        .quotient_dimension()
        .finite()
        .ok_or(Error::InfiniteQuotient)
}

/// Monomial directions spanning the base of a miniversal deformation.
#[derive(Clone, Debug)]
pub struct Deformation {
    pub base_dimension: usize,
    pub directions: Vec<ModuleElement>,
    /// The directions as module monomials; the constant function direction,
    /// when present, is last.
    pub monomials: Vec<StandardMonomial>,
    pub truncated: bool,
}

/// Standard monomials of the tangent space, with the constant function
/// direction moved to the end (and dropped when `truncated`).
pub fn miniversal_basis(pair: &CurveFunctionPair, truncated: bool) -> Result<Deformation> {
    let sb = tangent_basis(pair)?;
    let std = sb.standard_monomials().ok_or(Error::InfiniteQuotient)?;
    let fc = pair.function_component();
    let is_const = |m: &StandardMonomial| m.component == fc && m.exponent.iter().all(|&e| e == 0);
    let mut monomials: Vec<StandardMonomial> =
        std.iter().filter(|m| !is_const(m)).cloned().collect();
    if monomials.len() == std.len() {
        return Err(Error::Unsupported(
            "the function does not vanish on the curve's special point".into(),
        ));
    }
    if !truncated {
        monomials.push(StandardMonomial {
            component: fc,
            exponent: vec![0; pair.vars().len()],
        });
    }
    let vars = pair.vars();
    let rank = pair.module_rank();
    let directions = monomials
        .iter()
        .map(|m| {
            ModuleElement::unit(
                vars,
                rank,
                m.component,
                Polynomial::monomial(vars, m.exponent.clone(), Rational::one()),
            )
        })
        .collect();
    Ok(Deformation {
        base_dimension: monomials.len(),
        directions,
        monomials,
        truncated,
    })
}

/// Searches small positive weights making both inputs quasi-homogeneous.
fn plane_weights(g: &Polynomial, f: &Polynomial) -> Option<([i64; 2], i64)> {
    for s in 2..=80i64 {
        for wx in 1..s {
            let w = [wx, s - wx];
            if g.quasi_degree(&w).is_some() {
                if let Some(d) = f.quasi_degree(&w) {
                    return Some((w, d));
                }
            }
        }
    }
    None
}

/// Coefficient lists in the first variable, each entry a polynomial in the second.
fn x_coefficients(p: &Polynomial) -> Vec<UPoly> {
    p.coefficients_in(0)
        .iter()
        .map(|c| UPoly::from_polynomial(c, 1).expect("two variables"))
        .collect()
}

fn eval_in(alg: &QuotientAlgebra, coeffs: &[UPoly], x: &UPoly) -> UPoly {
    let mut acc = UPoly::zero();
    for c in coeffs.iter().rev() {
        acc = &alg.mul(&acc, x) + &alg.reduce(c);
    }
    alg.reduce(&acc)
}

enum Attempt {
    Count(usize),
    NonIsolated,
    Degenerate(String),
}

fn plane_attempt<R: Rng>(g: &Polynomial, f: &Polynomial, rng: &mut R, bound: i64) -> Attempt {
    let vars = g.vars().clone();
    let mut ft = f.clone();
    match plane_weights(g, f) {
        Some((w, d)) if d > 0 => {
            for wt in 1..d {
                for e in monomials_of_weight(&w, wt) {
                    debug_assert_eq!(weighted_degree(&e, &w), wt);
                    ft = &ft + &Polynomial::monomial(&vars, e, random_rational(rng, bound));
                }
            }
        }
        _ => {
            ft = &ft + &Polynomial::var(&vars, 0).scale(&random_nonzero(rng, bound));
            ft = &ft + &Polynomial::var(&vars, 1).scale(&random_nonzero(rng, bound));
        }
    }
    let eps = random_nonzero(rng, bound);
    let gg = g - &Polynomial::constant(&vars, eps);
    let jac = &(&ft.derivative(0) * &g.derivative(1)) - &(&ft.derivative(1) * &g.derivative(0));
    let s = random_rational(rng, bound);
    let t = random_rational(rng, bound);
    if (Rational::one() - &s * &t).is_zero() {
        return Attempt::Degenerate("singular shear".into());
    }
    let xv = Polynomial::var(&vars, 0);
    let yv = Polynomial::var(&vars, 1);
    let shear = [&xv + &yv.scale(&s), &xv.scale(&t) + &yv];
    let gs = x_coefficients(&gg.compose(&shear));
    let js = x_coefficients(&jac.compose(&shear));
    let fs = x_coefficients(&ft.compose(&shear));
    if gs.len() < 2 || gs.last().unwrap().deg0() != 0 {
        return Attempt::Degenerate("curve not monic after shear".into());
    }
    if js.len() < 2 {
        return Attempt::Degenerate("critical equation lost the first variable".into());
    }
    let res = resultant_x(&gs, &js);
    if res.is_zero() {
        return Attempt::NonIsolated;
    }
    if res.deg0() == 0 {
        return Attempt::Count(0);
    }
    if !res.is_squarefree() {
        return Attempt::Degenerate("multiple or collinear critical points".into());
    }
    // the common root in the first variable, as a fraction over the roots of res
    let (num, den) = if gs.len() == 2 {
        (-&gs[0], gs[1].clone())
    } else if js.len() == 2 {
        (-&js[0], js[1].clone())
    } else {
        let (s1, s0) = first_subresultant(&gs, &js);
        (-&s0, s1)
    };
    if values_separated_mod_p(&res, &num, &den, &fs) {
        return Attempt::Count(res.deg0());
    }
    let alg = QuotientAlgebra::new(&res.monic());
    let root = alg.fraction(&num, &den);
    let Some(root) = root else {
        return Attempt::Degenerate("first subresultant vanishes at a root".into());
    };
    if !eval_in(&alg, &gs, &root).is_zero() || !eval_in(&alg, &js, &root).is_zero() {
        return Attempt::Degenerate("extraneous resultant factor".into());
    }
    let values = eval_in(&alg, &fs, &root);
    if !alg.charpoly(&values).is_squarefree() {
        return Attempt::Degenerate("two critical points on one level".into());
    }
    Attempt::Count(res.deg0())
}

/// Certifies through a prime field that `fs` takes pairwise distinct values
/// at the critical points, which sit over the roots of `res` with first
/// coordinate `num/den`. Reductions of squarefree `res`, of an invertible
/// `den` and of a separating value stay so over the rationals.
fn values_separated_mod_p(res: &UPoly, num: &UPoly, den: &UPoly, fs: &[UPoly]) -> bool {
    PRIMES.iter().any(|&p| {
        let f = Field::new(p);
        let Some(m) = f.reduce(&res.monic()) else {
            return false;
        };
        if m.degree() != res.degree() || !f.is_squarefree(&m) {
            return false;
        }
        let (Some(n), Some(d)) = (f.reduce(num), f.reduce(den)) else {
            return false;
        };
        let Some(d_inv) = f.inv_mod(&d, &m) else {
            return false;
        };
        let root = f.mul_mod(&n, &d_inv, &m);
        let Some(coeffs) = fs.iter().map(|c| f.reduce(c)).collect::<Option<Vec<_>>>() else {
            return false;
        };
        let value = coeffs
            .iter()
            .rev()
            .fold(PolyP { coeffs: vec![] }, |acc, c| {
                f.add_poly(&f.mul_mod(&acc, &root, &m), &f.rem(c, &m))
            });
        f.powers_independent(&value, &m)
    })
}

fn agree(counts: Vec<usize>, cfg: &GenericityConfig, last: String) -> Result<usize> {
    if counts.len() < cfg.agreement {
        return Err(Error::Degenerate {
            attempts: cfg.retries,
            reason: last,
        });
    }
    if counts.iter().any(|&c| c != counts[0]) {
        return Err(Error::Disagreement(counts));
    }
    Ok(counts[0])
}

/// Number of Morse critical points of a generic perturbation of `f` on a
/// generic smoothing `g = ε` of the plane curve `g = 0`, by exact elimination.
pub fn milnor_plane(g: &Polynomial, f: &Polynomial, cfg: &GenericityConfig) -> Result<usize> {
    if g.vars().len() != 2 {
        return Err(Error::VariableMismatch {
            left: g.vars().names().join(","),
            right: "x,y".into(),
        });
    }
    g.vars().check_same(f.vars())?;
    if !g.constant_term().is_zero() {
        return Err(Error::InvalidMatrix(
            "the curve must pass through the origin".into(),
        ));
    }
    let mut rng = cfg.rng(&format!("milnor_plane:{g}:{f}"));
    let mut counts = Vec::new();
    let mut nonisolated = 0;
    let mut last = String::from("no attempt");
    for _ in 0..cfg.retries {
        match plane_attempt(g, f, &mut rng, cfg.coeff_bound) {
            Attempt::Count(c) => counts.push(c),
            Attempt::NonIsolated => nonisolated += 1,
            Attempt::Degenerate(why) => last = why,
        }
        if counts.len() >= cfg.agreement {
            break;
        }
    }
    if counts.is_empty() && nonisolated > 0 {
        return Err(Error::NonIsolated);
    }
    agree(counts, cfg, last)
}

/// Number of Morse critical points of a generic member of the three-line
/// family restricted to its smooth curve.
pub fn milnor_c_space(p: u32, q: u32, r: u32, cfg: &GenericityConfig) -> Result<usize> {
    if !(p >= q && q >= r && r >= 1) {
        return Err(Error::Restriction("requires p >= q >= r >= 1".into()));
    }
    let mut rng = cfg.rng(&format!("milnor_c_space:{p},{q},{r}"));
    let mut counts = Vec::new();
    let mut last = String::from("no attempt");
    for _ in 0..cfg.retries {
        let prm = random_cpqr_params((p, q, r), &mut rng, cfg.coeff_bound);
        let f = restricted_function_cpqr((p, q, r), &prm)?;
        let d = f.derivative();
        let crit = &d.num;
        let poles = &f.den;
        if crit.is_zero() || UPoly::gcd(crit, poles).deg0() > 0 {
            last = "critical point at a pole".into();
            continue;
        }
        if !crit.is_squarefree() {
            last = "degenerate critical point".into();
            continue;
        }
        counts.push(crit.deg0());
        if counts.len() >= cfg.agreement {
            break;
        }
    }
    agree(counts, cfg, last)
}

/// Outcome of one comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjectureReport {
    pub family: String,
    pub indices: Vec<u32>,
    pub modulus: Option<String>,
    pub tau: usize,
    pub mu: Option<usize>,
    pub equal: Option<bool>,
    pub status: CheckStatus,
    pub note: Option<String>,
}

/// Milnor number of a catalog entry, or `None` for families whose generic
/// smoothing is out of reach.
pub fn milnor(entry: &CatalogEntry, cfg: &GenericityConfig) -> Result<Option<usize>> {
    let id = &entry.id;
    Ok(match (id.family, &entry.plane) {
        (Family::CSpace, _) => Some(milnor_c_space(
            id.indices[0],
            id.indices[1],
            id.indices[2],
            cfg,
        )?),
        (Family::E | Family::FDot, _) => None,
        (_, Some((g, f))) => Some(milnor_plane(g, f, cfg)?),
        (_, None) => None,
    })
}

/// Compares the Tjurina number with the Milnor number where a reduction to
/// one or two variables is available; other families are skipped.
pub fn conjecture_check(entry: &CatalogEntry, cfg: &GenericityConfig) -> Result<ConjectureReport> {
    let tau = tjurina(&entry.pair)?;
    let id = &entry.id;
    let mu = milnor(entry, cfg)?;
    let (equal, status, note) = match mu {
        Some(m) if m == tau => (Some(true), CheckStatus::Pass, None),
        Some(_) => (Some(false), CheckStatus::Fail, None),
        None => (
            None,
            CheckStatus::Skipped,
            Some("mu not computed for this family".to_string()),
        ),
    };
    Ok(ConjectureReport {
        family: id.family.name().to_string(),
        indices: id.indices.clone(),
        modulus: id.modulus.as_ref().map(|m| m.to_string()),
        tau,
        mu,
        equal,
        status,
        note,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::instantiate;
    use crate::poly::parse_polynomial;
    use crate::poly::VarList;

    fn plane(s: &str) -> Polynomial {
        parse_polynomial(s, &VarList::new(&["x", "y"])).unwrap()
    }

    #[test]
    fn tjurina_of_small_entries() {
        for (s, t) in [("A1", 1), ("C:2,1", 3), ("E8", 8), ("C:1,1,1", 4)] {
            let e = instantiate(&s.parse().unwrap()).unwrap();
            assert_eq!(tjurina(&e.pair).unwrap(), t, "{s}");
        }
    }

    #[test]
    fn base_dimensions() {
        let e = instantiate(&"A2".parse().unwrap()).unwrap();
        assert_eq!(miniversal_basis(&e.pair, false).unwrap().base_dimension, 2);
        assert_eq!(miniversal_basis(&e.pair, true).unwrap().base_dimension, 1);
        let c = instantiate(&"C:1,1,1".parse().unwrap()).unwrap();
        let full = miniversal_basis(&c.pair, false).unwrap();
        assert_eq!(full.base_dimension, 4);
        let last = full.monomials.last().unwrap();
        assert_eq!(last.component, c.pair.function_component());
    }

    #[test]
    fn milnor_numbers_of_plane_pairs() {
        let cfg = GenericityConfig::default();
        assert_eq!(milnor_plane(&plane("y"), &plane("x^4"), &cfg).unwrap(), 3);
        assert_eq!(
            milnor_plane(&plane("x^2 + y^3"), &plane("y"), &cfg).unwrap(),
            3
        );
        assert_eq!(
            milnor_plane(&plane("x*y"), &plane("x^2 + y^2"), &cfg).unwrap(),
            4
        );
    }

    #[test]
    fn milnor_numbers_of_three_lines() {
        let cfg = GenericityConfig::default();
        assert_eq!(milnor_c_space(1, 1, 1, &cfg).unwrap(), 4);
        assert_eq!(milnor_c_space(2, 1, 1, &cfg).unwrap(), 5);
    }

    #[test]
    fn conjecture_reports() {
        let cfg = GenericityConfig::default();
        let f5 = conjecture_check(&instantiate(&"F5".parse().unwrap()).unwrap(), &cfg).unwrap();
        assert_eq!((f5.tau, f5.mu, f5.status), (5, Some(5), CheckStatus::Pass));
        let e6 = conjecture_check(&instantiate(&"E6".parse().unwrap()).unwrap(), &cfg).unwrap();
        assert_eq!((e6.tau, e6.mu, e6.status), (6, None, CheckStatus::Skipped));
    }
}
