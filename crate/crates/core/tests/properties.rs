//! Property suites: Tjurina numbers are invariant under random equivalences,
//! and standard bases behave as bases of the quotient.

use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spacecurve_core::catalog::{instantiate, CatalogRange, EntryId};
use spacecurve_core::curve_model::{apply_equivalence, CurveFunctionPair, EquivalenceWitness};
use spacecurve_core::invariants::tjurina;
use spacecurve_core::ll_map::{ll_point, random_cpqr_params};
use spacecurve_core::poly::int;
use spacecurve_core::{
    normal_form, quotient_dimension, standard_basis, LocalOrder, ModuleElement, Polynomial,
    Rational, VarList,
};

fn small<R: Rng>(rng: &mut R) -> Rational {
    int(rng.random_range(-3..=3))
}

fn nonzero<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let c = small(rng);
        if !c.is_zero() {
            return c;
        }
    }
}

fn linear<R: Rng>(rng: &mut R, vars: &VarList) -> Polynomial {
    (0..vars.len()).fold(Polynomial::zero(vars), |acc, i| {
        &acc + &Polynomial::var(vars, i).scale(&small(rng))
    })
}

/// An invertible `k×k` matrix over the local ring: a triangular constant
/// part with nonzero diagonal plus random linear terms.
fn unit_matrix<R: Rng>(rng: &mut R, vars: &VarList, k: usize) -> Vec<Vec<Polynomial>> {
    (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    let c = match i.cmp(&j) {
                        std::cmp::Ordering::Equal => nonzero(rng),
                        std::cmp::Ordering::Greater => small(rng),
                        std::cmp::Ordering::Less => Rational::zero(),
                    };
                    let lin = if rng.random_bool(0.3) {
                        linear(rng, vars)
                    } else {
                        Polynomial::zero(vars)
                    };
                    &Polynomial::constant(vars, c) + &lin
                })
                .collect()
        })
        .collect()
}

fn witness<R: Rng>(rng: &mut R, pair: &CurveFunctionPair) -> EquivalenceWitness {
    let vars = pair.vars().clone();
    let n = pair.matrix.n();
    let x = |i: usize| Polynomial::var(&vars, i);
    // lower-triangular linear change with nonzero diagonal, plus one quadratic term
    let mut substitution: Vec<Polynomial> = (0..3)
        .map(|i| {
            (0..=i).fold(Polynomial::zero(&vars), |acc, j| {
                let c = if i == j { nonzero(rng) } else { small(rng) };
                &acc + &x(j).scale(&c)
            })
        })
        .collect();
    let k = rng.random_range(0..3);
    let (a, b) = (rng.random_range(0..3), rng.random_range(0..3));
    substitution[k] = &substitution[k] + &(&x(a) * &x(b)).scale(&small(rng));
    let minors = pair.matrix.maximal_minors();
    let m = &minors[rng.random_range(0..minors.len())];
    let addend = (m * &(&Polynomial::constant(&vars, small(rng)) + &linear(rng, &vars))).clone();
    EquivalenceWitness {
        left: unit_matrix(rng, &vars, n),
        right: unit_matrix(rng, &vars, n + 1),
        substitution,
        addend,
    }
}

fn small_entries() -> Vec<(EntryId, CurveFunctionPair, usize)> {
    CatalogRange::default()
        .entries()
        .into_iter()
        .filter(|id| id.expected_tau() <= 8)
        .map(|id| {
            let pair = instantiate(&id).unwrap().pair;
            let tau = tjurina(&pair).unwrap();
            (id, pair, tau)
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    // each case draws one witness per entry, so every entry sees 20 witnesses
    #[test]
    fn tjurina_number_is_an_equivalence_invariant(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for (id, pair, tau) in small_entries() {
            let w = witness(&mut rng, &pair);
            let moved = apply_equivalence(&pair, &w).unwrap();
            prop_assert_eq!(tjurina(&moved).unwrap(), tau, "{}", id);
        }
    }
}

/// Generators `x^a + h_1, y^b + h_2, z^c + h_3` with `h_i` of order above
/// `max(a, b, c)`: the initial forms are a regular sequence, so the local
/// quotient has dimension `a·b·c`.
fn perturbed_monomials(exps: [u32; 3], coeffs: &[i64]) -> (VarList, Vec<ModuleElement>) {
    let vars = VarList::new(&["x", "y", "z"]);
    let top = *exps.iter().max().unwrap() + 1;
    let mut it = coeffs.iter();
    let gens = (0..3)
        .map(|i| {
            let mut e = vec![0u32; 3];
            e[i] = exps[i];
            let mut p = Polynomial::monomial(&vars, e, int(1));
            for j in 0..3 {
                let mut h = vec![0u32; 3];
                h[j] = top;
                h[(j + 1) % 3] += 1;
                let c = *it.next().unwrap();
                p = &p + &Polynomial::monomial(&vars, h, int(c));
            }
            ModuleElement::new(vec![p]).unwrap()
        })
        .collect();
    (vars, gens)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn quotient_dimension_of_a_perturbed_complete_intersection(
        a in 1u32..=3, b in 1u32..=3, c in 1u32..=2,
        coeffs in proptest::collection::vec(-4i64..=4, 9),
    ) {
        let (_, gens) = perturbed_monomials([a, b, c], &coeffs);
        let ord = LocalOrder::negative_degree_lex(3);
        let dim = quotient_dimension(&gens, 1, &ord).unwrap().finite();
        prop_assert_eq!(dim, Some((a * b * c) as usize));
    }

    #[test]
    fn normal_forms_are_canonical(
        a in 1u32..=3, b in 1u32..=3, c in 1u32..=2,
        coeffs in proptest::collection::vec(-4i64..=4, 9),
        probe in proptest::collection::vec(-5i64..=5, 10),
        mult in proptest::collection::vec(-3i64..=3, 3),
    ) {
        let (vars, gens) = perturbed_monomials([a, b, c], &coeffs);
        let ord = LocalOrder::negative_degree_lex(3);
        let sb = standard_basis(&gens, &ord).unwrap();
        // every generator lies in the module
        for g in &gens {
            prop_assert!(normal_form(g, &sb).unwrap().is_zero());
        }
        // a probe polynomial with monomials of degree at most 3
        let monos: Vec<Vec<u32>> = vec![
            vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 0],
            vec![0, 1, 1], vec![2, 0, 1], vec![1, 2, 0], vec![0, 0, 2], vec![1, 1, 1],
        ];
        let f = monos.iter().zip(&probe).fold(Polynomial::zero(&vars), |acc, (e, &k)| {
            &acc + &Polynomial::monomial(&vars, e.clone(), int(k))
        });
        let fe = ModuleElement::new(vec![f]).unwrap();
        let nf = normal_form(&fe, &sb).unwrap();
        // idempotent
        prop_assert_eq!(normal_form(&nf, &sb).unwrap(), nf.clone());
        // unchanged by adding module elements
        let shifted = gens.iter().zip(&mult).fold(fe.clone(), |acc, (g, &k)| acc.add(&g.scale(&int(k))));
        prop_assert_eq!(normal_form(&shifted, &sb).unwrap(), nf.clone());
        // supported on standard monomials
        let std = sb.standard_monomials().unwrap();
        for (e, _) in nf.component(0).terms() {
            prop_assert!(std.iter().any(|m| &m.exponent == e));
        }
        // no leading monomial divides a standard monomial
        for lm in sb.leading_monomials() {
            for m in std {
                prop_assert!(!lm.exponent.iter().zip(&m.exponent).all(|(l, s)| l <= s));
            }
        }
    }

    #[test]
    fn ll_point_truncation_removes_the_mean(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let id: EntryId = "C:2,1,1".parse().unwrap();
        let prm = random_cpqr_params((2, 1, 1), &mut rng, 9);
        if let Ok(pt) = ll_point(&id, &prm.to_values()) {
            let t = pt.truncated();
            prop_assert_eq!(t.degree(), pt.degree());
            prop_assert!(t.coeffs[t.degree() - 1].is_zero());
            // shifting the constant parameter moves every critical value but not the truncation
            let mut moved = prm.clone();
            moved.l0 = &moved.l0 + int(5);
            let t2 = ll_point(&id, &moved.to_values()).unwrap().truncated();
            prop_assert_eq!(t2, t);
        }
    }
}
