use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_traits::{One, Zero};

use super::{LocalOrder, ModuleElement, ModuleOrder};
use crate::error::{Error, Result};
use crate::poly::{Exponent, Polynomial, Rational, VarList};

#[derive(Clone, Debug)]
struct Term {
    comp: usize,
    exp: Exponent,
    deg: u32,
    coeff: Rational,
}

/// Module element as a list of terms sorted from largest to smallest.
#[derive(Clone, Debug)]
struct SVec {
    terms: Vec<Term>,
    max_deg: u32,
}

impl SVec {
    fn from_element(e: &ModuleElement, ord: &LocalOrder) -> SVec {
        let mut terms = Vec::new();
        for (c, p) in e.components().iter().enumerate() {
            for (exp, coeff) in p.terms() {
                terms.push(Term {
                    comp: c,
                    deg: exp.iter().sum(),
                    exp: exp.clone(),
                    coeff: coeff.clone(),
                });
            }
        }
        terms.sort_by(|a, b| ord.cmp_terms(b.comp, &b.exp, a.comp, &a.exp));
        SVec::from_sorted(terms)
    }

    fn from_sorted(terms: Vec<Term>) -> SVec {
        let max_deg = terms.iter().map(|t| t.deg).max().unwrap_or(0);
        SVec { terms, max_deg }
    }

    fn to_element(&self, vars: &VarList, rank: usize) -> ModuleElement {
        let mut comps = vec![Polynomial::zero(vars); rank];
        for t in &self.terms {
            comps[t.comp] =
                &comps[t.comp] + &Polynomial::monomial(vars, t.exp.clone(), t.coeff.clone());
        }
        ModuleElement::new(comps).expect("rank > 0")
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lead(&self) -> &Term {
        &self.terms[0]
    }

    fn ecart(&self) -> u32 {
        self.max_deg - self.lead().deg
    }

    fn make_monic(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let inv = self.terms[0].coeff.recip();
        if inv.is_one() {
            return;
        }
        for t in &mut self.terms {
            t.coeff *= &inv;
        }
    }

    /// `self - f * x^shift * g`, dropping terms of `g` whose degree reaches
    /// the cap of their component.
    fn sub_shifted(
        &self,
        g: &SVec,
        shift: &[u32],
        f: &Rational,
        ord: &LocalOrder,
        caps: Option<&[u32]>,
    ) -> SVec {
        let sdeg: u32 = shift.iter().sum();
        let shifted = g.terms.iter().filter_map(|t| {
            let deg = t.deg + sdeg;
            if caps.is_some_and(|k| deg >= k[t.comp]) {
                return None;
            }
            Some(Term {
                comp: t.comp,
                exp: t.exp.iter().zip(shift).map(|(a, b)| a + b).collect(),
                deg,
                coeff: -(f * &t.coeff),
            })
        });
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = self.terms.iter().cloned().peekable();
        let mut b = shifted.peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (Some(x), Some(y)) => match ord.cmp_terms(x.comp, &x.exp, y.comp, &y.exp) {
                    Ordering::Greater => out.push(a.next().unwrap()),
                    Ordering::Less => out.push(b.next().unwrap()),
                    Ordering::Equal => {
                        let x = a.next().unwrap();
                        let y = b.next().unwrap();
                        let c = &x.coeff + &y.coeff;
                        if !c.is_zero() {
                            out.push(Term { coeff: c, ..y });
                        }
                    }
                },
            }
        }
        SVec::from_sorted(out)
    }

    /// Drops the terms at or above the cap of their component.
    fn truncate(&mut self, caps: &[u32]) {
        if self.terms.iter().any(|t| t.deg >= caps[t.comp]) {
            self.terms.retain(|t| t.deg < caps[t.comp]);
            self.max_deg = self.terms.iter().map(|t| t.deg).max().unwrap_or(0);
        }
    }

    /// Truncates everything except the leading term.
    fn truncate_tail(&mut self, caps: &[u32]) {
        if self.terms.iter().skip(1).any(|t| t.deg >= caps[t.comp]) {
            let lead = self.terms[0].clone();
            let mut rest: Vec<Term> = self
                .terms
                .drain(1..)
                .filter(|t| t.deg < caps[t.comp])
                .collect();
            rest.insert(0, lead);
            *self = SVec::from_sorted(rest);
        }
    }
}

fn divides(a: &Term, b: &Term) -> bool {
    a.comp == b.comp && a.deg <= b.deg && a.exp.iter().zip(&b.exp).all(|(x, y)| x <= y)
}

fn quotient_exp(b: &Term, a: &Term) -> Exponent {
    b.exp.iter().zip(&a.exp).map(|(x, y)| x - y).collect()
}

/// Weak normal form with Mora's ecart discipline: the result `h` satisfies
/// `u·f - h ∈ ⟨basis⟩` for a unit `u`, and no leading monomial of the basis
/// divides the leading monomial of `h`.
///
/// With `caps`, terms at or above the cap of their component are dropped;
/// such terms lie in the module, and the truncation bounds the work.
fn mora_normal_form(f: &SVec, basis: &[SVec], ord: &LocalOrder, caps: Option<&[u32]>) -> SVec {
    let mut h = f.clone();
    if let Some(c) = caps {
        h.truncate(c);
    }
    let mut extra: Vec<SVec> = Vec::new();
    loop {
        if h.is_zero() {
            return h;
        }
        let lt = h.lead();
        let pick = basis
            .iter()
            .chain(extra.iter())
            .filter(|g| divides(g.lead(), lt))
            .min_by_key(|g| g.ecart());
        let Some(g) = pick else {
            return h;
        };
        let g = g.clone();
        // below a degree cap the lead strictly drops among finitely many
        // monomials, so the ecart bookkeeping is only needed without one
        if caps.is_none() && g.ecart() > h.ecart() {
            extra.push(h.clone());
        }
        let shift = quotient_exp(lt, g.lead());
        let factor = &lt.coeff / &g.lead().coeff;
        h = h.sub_shifted(&g, &shift, &factor, ord, caps);
    }
}

/// A module monomial `x^exp · e_component`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StandardMonomial {
    pub component: usize,
    pub exponent: Exponent,
}

/// Dimension of a quotient module over the local ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuotientDim {
    Finite(usize),
    Infinite,
}

impl QuotientDim {
    pub fn finite(self) -> Option<usize> {
        match self {
            QuotientDim::Finite(n) => Some(n),
            QuotientDim::Infinite => None,
        }
    }
}

/// A standard basis of a submodule of `O^rank` with respect to a local order.
#[derive(Clone, Debug)]
pub struct StandardBasis {
    vars: VarList,
    rank: usize,
    order: LocalOrder,
    elements: Vec<SVec>,
    standard: Option<Vec<StandardMonomial>>,
}

struct Pair {
    lcm_deg: u32,
    i: usize,
    j: usize,
}

impl PartialEq for Pair {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}
impl Eq for Pair {}
impl PartialOrd for Pair {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Pair {
    // BinaryHeap pops the maximum: smallest lcm degree first, then oldest pair.
    fn cmp(&self, o: &Self) -> Ordering {
        o.lcm_deg
            .cmp(&self.lcm_deg)
            .then_with(|| o.j.cmp(&self.j))
            .then_with(|| o.i.cmp(&self.i))
    }
}

/// Monomials of component `c` divisible by none of `leads`, or `None` when
/// some variable has no pure power among them (infinitely many).
fn standard_monomials_in(
    leads: &[&Exponent],
    nvars: usize,
    c: usize,
) -> Option<Vec<StandardMonomial>> {
    let mut bound = vec![0u32; nvars];
    for (i, b) in bound.iter_mut().enumerate() {
        *b = leads
            .iter()
            .filter(|e| e.iter().enumerate().all(|(j, &k)| j == i || k == 0))
            .map(|e| e[i])
            .min()?;
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if leads.is_empty() {
            out.push(StandardMonomial {
                component: c,
                exponent: vec![],
            });
        }
        return Some(out);
    }
    let mut cur = vec![0u32; nvars];
    'outer: loop {
        if !leads
            .iter()
            .any(|l| l.iter().zip(&cur).all(|(a, b)| a <= b))
        {
            out.push(StandardMonomial {
                component: c,
                exponent: cur.clone(),
            });
        }
        for i in 0..nvars {
            cur[i] += 1;
            if cur[i] < bound[i] {
                continue 'outer;
            }
            cur[i] = 0;
        }
        break;
    }
    Some(out)
}

/// A degree cap, available once the current leading monomials leave finitely
/// many standard monomials. Every monomial of degree one above the largest
/// standard monomial is a leading monomial; when the order compares degrees
/// first, the other terms of those elements have at least that degree, so by
/// Nakayama that power of the maximal ideal lies in the module. Dropping the
/// terms above the cap is then reduction by monomials of the module, and a
/// truncated multiple loses its lead only together with its whole tail.
/// Under position over term neither holds, so no cap is used.
fn corner_caps(basis: &[SVec], rank: usize, nvars: usize, ord: &LocalOrder) -> Option<Vec<u32>> {
    if !degree_first(rank, ord) {
        return None;
    }
    let mut all = Vec::new();
    for c in 0..rank {
        all.extend(standard_monomials_in(&leads_in(basis, c), nvars, c)?);
    }
    Some(vec![
        highest_plus_one(all.iter().map(|m| &m.exponent));
        rank
    ])
}

fn degree_first(rank: usize, ord: &LocalOrder) -> bool {
    rank == 1 || ord.module_order() == ModuleOrder::TermOverPosition
}

fn highest_plus_one<'a>(std: impl Iterator<Item = &'a Exponent>) -> u32 {
    std.map(|e| e.iter().sum::<u32>() + 1).max().unwrap_or(0)
}

fn lcm_term(a: &Term, b: &Term) -> Exponent {
    a.exp.iter().zip(&b.exp).map(|(x, y)| *x.max(y)).collect()
}

fn s_vector(a: &SVec, b: &SVec, ord: &LocalOrder, caps: Option<&[u32]>) -> SVec {
    let la = a.lead();
    let lb = b.lead();
    let l = lcm_term(la, lb);
    let sa: Exponent = l.iter().zip(&la.exp).map(|(x, y)| x - y).collect();
    let sb: Exponent = l.iter().zip(&lb.exp).map(|(x, y)| x - y).collect();
    // (1/lc_a) x^sa a - (1/lc_b) x^sb b
    let zero = SVec::from_sorted(Vec::new());
    let first = zero.sub_shifted(a, &sa, &-la.coeff.recip(), ord, caps);
    first.sub_shifted(b, &sb, &lb.coeff.recip(), ord, caps)
}

const FIRST_BOUND: u32 = 4;
const LAST_BOUND: u32 = 16;

fn leads_in(basis: &[SVec], c: usize) -> Vec<&Exponent> {
    basis
        .iter()
        .filter(|s| s.lead().comp == c)
        .map(|s| &s.lead().exp)
        .collect()
}

fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Exponent> {
    if nvars == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    if nvars == 1 {
        return vec![vec![d]];
    }
    let mut out = Vec::new();
    for k in (0..=d).rev() {
        for mut rest in monomials_of_degree(nvars - 1, d - k) {
            rest.insert(0, k);
            out.push(rest);
        }
    }
    out
}

/// Exponents of degree below `n` divisible by none of `leads`.
fn standard_below(leads: &[&Exponent], nvars: usize, n: u32) -> Vec<Exponent> {
    (0..n)
        .flat_map(|d| monomials_of_degree(nvars, d))
        .filter(|e| !leads.iter().any(|l| l.iter().zip(e).all(|(a, b)| a <= b)))
        .collect()
}

/// Caps while working modulo `m^bound`: every monomial of degree `bound` is
/// implicitly a leading monomial, so the quotient is always finite.
fn bounded_caps(
    basis: &[SVec],
    rank: usize,
    nvars: usize,
    bound: u32,
    ord: &LocalOrder,
) -> Vec<u32> {
    if !degree_first(rank, ord) {
        return vec![bound; rank];
    }
    let std: Vec<Exponent> = (0..rank)
        .flat_map(|c| standard_below(&leads_in(basis, c), nvars, bound))
        .collect();
    vec![highest_plus_one(std.iter()).min(bound); rank]
}

/// Every generator as a sorted vector for `ord`, made monic, zeros dropped.
fn initial(gens: &[ModuleElement], ord: &LocalOrder) -> Vec<SVec> {
    gens.iter()
        .map(|g| SVec::from_element(g, ord))
        .filter(|s| !s.is_zero())
        .map(|mut s| {
            s.make_monic();
            s
        })
        .collect()
}

/// A `k` with `m^k·O^rank` inside the module, certified by working modulo
/// `m^N` under a degree-first order: once no standard monomial has degree
/// `k < N - 1`, each monomial of degree `k` leads an element whose other
/// terms have degree at least `k`, so `m^k ⊆ M + m^(k+1)` and Nakayama
/// gives `m^k ⊆ M`. `None` when no trial bound certifies.
fn annihilating_power(
    gens: &[ModuleElement],
    rank: usize,
    nvars: usize,
    ord: &LocalOrder,
) -> Option<u32> {
    let top = ord.clone().with_module_order(ModuleOrder::TermOverPosition);
    let start = initial(gens, &top);
    let mut bound = FIRST_BOUND;
    while bound <= LAST_BOUND {
        let trial = saturate(start.clone(), &top, rank, nvars, Some(bound));
        let highest = (0..rank)
            .flat_map(|c| standard_below(&leads_in(&trial, c), nvars, bound))
            .map(|e| e.iter().sum::<u32>())
            .max();
        match highest {
            None => return Some(0),
            Some(d) if d + 2 <= bound => return Some(d + 1),
            _ => bound *= 2,
        }
    }
    None
}

/// Buchberger–Mora saturation of `basis`. With a `bound`, everything is
/// computed modulo `m^bound·O^rank`; under position over term this is only
/// sound when `basis` contains every monomial of degree `bound - 1`.
fn saturate(
    mut basis: Vec<SVec>,
    ord: &LocalOrder,
    rank: usize,
    nvars: usize,
    bound: Option<u32>,
) -> Vec<SVec> {
    let caps_for = |basis: &[SVec]| match bound {
        Some(b) => Some(bounded_caps(basis, rank, nvars, b, ord)),
        None => corner_caps(basis, rank, nvars, ord),
    };
    if let Some(b) = bound {
        let c = vec![b; rank];
        basis = basis
            .into_iter()
            .filter_map(|mut g| {
                g.truncate(&c);
                if g.is_zero() {
                    None
                } else {
                    g.make_monic();
                    Some(g)
                }
            })
            .collect();
    }
    let mut heap = BinaryHeap::new();
    let push_pairs = |heap: &mut BinaryHeap<Pair>, basis: &[SVec], j: usize| {
        for i in 0..j {
            let (a, b) = (basis[i].lead(), basis[j].lead());
            if a.comp != b.comp {
                continue;
            }
            let lcm_deg = lcm_term(a, b).iter().sum();
            heap.push(Pair { lcm_deg, i, j });
        }
    };
    for j in 0..basis.len() {
        push_pairs(&mut heap, &basis, j);
    }
    let mut caps = caps_for(&basis);
    if let Some(c) = &caps {
        basis.iter_mut().for_each(|g| g.truncate_tail(c));
    }
    while let Some(Pair { i, j, .. }) = heap.pop() {
        let s = s_vector(&basis[i], &basis[j], ord, caps.as_deref());
        if s.is_zero() {
            continue;
        }
        let mut h = mora_normal_form(&s, &basis, ord, caps.as_deref());
        if h.is_zero() {
            continue;
        }
        h.make_monic();
        basis.push(h);
        let j = basis.len() - 1;
        push_pairs(&mut heap, &basis, j);
        let next = caps_for(&basis);
        if next.is_some() && next != caps {
            caps = next;
            let c = caps.as_deref().unwrap_or_default();
            basis.iter_mut().for_each(|g| g.truncate_tail(c));
        }
    }
    basis
}

/// Computes a standard basis of the module generated by `gens`.
pub fn standard_basis(gens: &[ModuleElement], ord: &LocalOrder) -> Result<StandardBasis> {
    let Some(first) = gens.first() else {
        return Err(Error::RankMismatch {
            expected: 1,
            found: 0,
        });
    };
    let vars = first.vars().clone();
    let rank = first.rank();
    if ord.nvars() != vars.len() {
        return Err(Error::VariableMismatch {
            left: vars.names().join(","),
            right: format!("order over {} variables", ord.nvars()),
        });
    }
    for g in gens {
        g.check_compatible(rank, &vars)?;
    }
    let nvars = vars.len();
    let basis = match annihilating_power(gens, rank, nvars, ord) {
        Some(k) => {
            // m^k lies in the module, so its monomials may join the
            // generators and everything above degree k can be dropped
            let mut start = initial(gens, ord);
            for c in 0..rank {
                start.extend(monomials_of_degree(nvars, k).into_iter().map(|exp| {
                    SVec::from_sorted(vec![Term {
                        comp: c,
                        deg: k,
                        exp,
                        coeff: Rational::one(),
                    }])
                }));
            }
            saturate(start, ord, rank, nvars, Some(k + 1))
        }
        None => saturate(initial(gens, ord), ord, rank, nvars, None),
    };
    // auto-reduce the leading terms
    let mut keep: Vec<SVec> = Vec::new();
    let mut order: Vec<usize> = (0..basis.len()).collect();
    order.sort_by(|&a, &b| {
        let (x, y) = (basis[a].lead(), basis[b].lead());
        ord.cmp_terms(y.comp, &y.exp, x.comp, &x.exp)
            .then_with(|| basis[a].ecart().cmp(&basis[b].ecart()))
            .then_with(|| a.cmp(&b))
    });
    for idx in order {
        let lt = basis[idx].lead();
        if keep.iter().any(|k| divides(k.lead(), lt)) {
            continue;
        }
        keep.retain(|k| !divides(lt, k.lead()));
        keep.push(basis[idx].clone());
    }
    keep.sort_by(|a, b| {
        let (x, y) = (a.lead(), b.lead());
        ord.cmp_terms(y.comp, &y.exp, x.comp, &x.exp)
    });
    let mut sb = StandardBasis {
        vars,
        rank,
        order: ord.clone(),
        elements: keep,
        standard: None,
    };
    sb.standard = sb.enumerate_standard_monomials();
    Ok(sb)
}

impl StandardBasis {
    pub fn vars(&self) -> &VarList {
        &self.vars
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> &LocalOrder {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn generators(&self) -> Vec<ModuleElement> {
        self.elements
            .iter()
            .map(|s| s.to_element(&self.vars, self.rank))
            .collect()
    }

    /// Leading module monomials of the basis elements.
    pub fn leading_monomials(&self) -> Vec<StandardMonomial> {
        self.elements
            .iter()
            .map(|s| StandardMonomial {
                component: s.lead().comp,
                exponent: s.lead().exp.clone(),
            })
            .collect()
    }

    fn enumerate_standard_monomials(&self) -> Option<Vec<StandardMonomial>> {
        let mut out = Vec::new();
        for c in 0..self.rank {
            let leads: Vec<&Exponent> = self
                .elements
                .iter()
                .filter(|s| s.lead().comp == c)
                .map(|s| &s.lead().exp)
                .collect();
            out.extend(standard_monomials_in(&leads, self.vars.len(), c)?);
        }
        out.sort_by(|a, b| {
            self.order
                .cmp_terms(b.component, &b.exponent, a.component, &a.exponent)
        });
        Some(out)
    }

    /// Standard monomials (a basis of the quotient), largest first; `None`
    /// when the quotient is infinite-dimensional.
    pub fn standard_monomials(&self) -> Option<&[StandardMonomial]> {
        self.standard.as_deref()
    }

    pub fn quotient_dimension(&self) -> QuotientDim {
        match &self.standard {
            Some(s) => QuotientDim::Finite(s.len()),
            None => QuotientDim::Infinite,
        }
    }

    /// Normal form of `e`; see [`normal_form`].
    pub fn reduce(&self, e: &ModuleElement) -> Result<ModuleElement> {
        e.check_compatible(self.rank, &self.vars)?;
        let s = SVec::from_element(e, &self.order);
        let out = match &self.standard {
            Some(std) => self.reduce_truncated(&s, std.len() as u32),
            None => mora_normal_form(&s, &self.elements, &self.order, None),
        };
        Ok(out.to_element(&self.vars, self.rank))
    }

    // With a finite quotient of dimension N the module contains m^N·O^rank,
    // so reduction modulo degree N terminates and is exact.
    fn reduce_truncated(&self, s: &SVec, cap: u32) -> SVec {
        let caps = vec![cap; self.rank];
        let mut h = SVec::from_sorted(s.terms.iter().filter(|t| t.deg < cap).cloned().collect());
        let mut done: Vec<Term> = Vec::new();
        while !h.is_zero() {
            let lt = h.lead().clone();
            match self.elements.iter().find(|g| divides(g.lead(), &lt)) {
                Some(g) => {
                    let shift = quotient_exp(&lt, g.lead());
                    let factor = &lt.coeff / &g.lead().coeff;
                    h = h.sub_shifted(g, &shift, &factor, &self.order, Some(&caps));
                }
                None => {
                    done.push(lt);
                    h.terms.remove(0);
                }
            }
        }
        SVec::from_sorted(done)
    }

    /// Coordinates of the class of `e` in the standard-monomial basis.
    pub fn coordinates(&self, e: &ModuleElement) -> Result<Vec<Rational>> {
        let std = self.standard.as_ref().ok_or(Error::InfiniteQuotient)?;
        let r = self.reduce(e)?;
        Ok(std
            .iter()
            .map(|m| r.component(m.component).coeff(&m.exponent))
            .collect())
    }

    pub fn contains(&self, e: &ModuleElement) -> Result<bool> {
        Ok(self.reduce(e)?.is_zero())
    }
}

/// Reduces `e` against `basis`.
///
/// For a finite-dimensional quotient the result is the unique combination of
/// standard monomials with `e - result` in the module. Otherwise it is the
/// Mora weak normal form, whose leading term is not divisible by any leading
/// term of the basis and which vanishes exactly on module members.
pub fn normal_form(e: &ModuleElement, basis: &StandardBasis) -> Result<ModuleElement> {
    basis.reduce(e)
}

pub fn quotient_dimension(
    gens: &[ModuleElement],
    rank: usize,
    ord: &LocalOrder,
) -> Result<QuotientDim> {
    if let Some(g) = gens.first() {
        if g.rank() != rank {
            return Err(Error::RankMismatch {
                expected: rank,
                found: g.rank(),
            });
        }
    }
    Ok(standard_basis(gens, ord)?.quotient_dimension())
}
