//! The tables of simple functions on plane and space curves, the two bounding
//! germs with a modulus, their adjacencies, expected Tjurina numbers, weights,
//! and the explicit miniversal family of the three-line series.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::Serialize;

use crate::curve_model::{embed_plane_curve, space_vars, CurveFunctionPair, MatrixGerm};
use crate::error::{Error, Result};
use crate::poly::{
    format_rational, int, parse_polynomial, parse_rational, Polynomial, Rational, VarList,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Family {
    A,
    B,
    CPlane,
    F,
    CSpace,
    FDot,
    E,
    X9Star,
    J10Star,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::A,
        Family::B,
        Family::CPlane,
        Family::F,
        Family::CSpace,
        Family::FDot,
        Family::E,
        Family::X9Star,
        Family::J10Star,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::B => "B",
            Family::CPlane => "C_plane",
            Family::F => "F",
            Family::CSpace => "C_space",
            Family::FDot => "Fdot",
            Family::E => "E",
            Family::X9Star => "X9star",
            Family::J10Star => "J10star",
        }
    }

    pub fn is_plane(self) -> bool {
        matches!(
            self,
            Family::A | Family::B | Family::CPlane | Family::F | Family::X9Star | Family::J10Star
        )
    }

    pub fn has_modulus(self) -> bool {
        matches!(self, Family::X9Star | Family::J10Star)
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse {
                pos: 0,
                msg: format!("unknown family `{s}`"),
            })
    }
}

/// Identifies a catalog entry: family, indices, and modulus when required.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EntryId {
    pub family: Family,
    pub indices: Vec<u32>,
    pub modulus: Option<Rational>,
}

impl EntryId {
    pub fn new(family: Family, indices: &[u32]) -> Self {
        EntryId {
            family,
            indices: indices.to_vec(),
            modulus: None,
        }
    }

    pub fn with_modulus(family: Family, modulus: Rational) -> Self {
        EntryId {
            family,
            indices: vec![],
            modulus: Some(modulus),
        }
    }

    /// Checks the index restrictions of the tables.
    pub fn validate(&self) -> Result<()> {
        let idx = &self.indices;
        let want = |n: usize| -> Result<()> {
            if idx.len() == n {
                Ok(())
            } else {
                Err(Error::Restriction(format!(
                    "{} takes {n} indices",
                    self.family.name()
                )))
            }
        };
        let fail = |m: &str| Err(Error::Restriction(format!("{}: {m}", self.label())));
        match self.family {
            Family::A => want(1),
            Family::B => {
                want(1)?;
                if idx[0] < 3 {
                    return fail("requires k >= 3");
                }
                Ok(())
            }
            Family::CPlane => {
                want(2)?;
                if !(idx[0] >= idx[1] && idx[1] >= 1) {
                    return fail("requires p >= q >= 1");
                }
                Ok(())
            }
            Family::F | Family::FDot => {
                want(1)?;
                if idx[0] < 4 {
                    return fail("requires subscript >= 4");
                }
                Ok(())
            }
            Family::CSpace => {
                want(3)?;
                if !(idx[0] >= idx[1] && idx[1] >= idx[2] && idx[2] >= 1) {
                    return fail("requires p >= q >= r >= 1");
                }
                Ok(())
            }
            Family::E => {
                want(1)?;
                if !(6..=8).contains(&idx[0]) {
                    return fail("subscript must be 6, 7 or 8");
                }
                Ok(())
            }
            Family::X9Star | Family::J10Star => {
                want(0)?;
                if self.modulus.is_none() {
                    return Err(Error::MissingModulus(self.family.name().into()));
                }
                Ok(())
            }
        }?;
        if self.modulus.is_some() && !self.family.has_modulus() {
            return fail("takes no modulus");
        }
        Ok(())
    }

    /// Human-readable name such as `C_{2,1,1}`.
    pub fn label(&self) -> String {
        let idx = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        match self.family {
            Family::A | Family::B | Family::F => {
                format!("{}_{}", self.family.name(), self.indices[0])
            }
            Family::FDot => format!("Fdot_{}", self.indices[0]),
            Family::E => format!("Echeck_{}", self.indices[0]),
            Family::CPlane | Family::CSpace => format!("C_{{{}}}", idx(&self.indices)),
            Family::X9Star | Family::J10Star => {
                let base = if self.family == Family::X9Star {
                    "X9*"
                } else {
                    "J10*"
                };
                match &self.modulus {
                    Some(a) => format!("{base}(alpha={})", format_rational(a)),
                    None => base.into(),
                }
            }
        }
    }

    /// Expected Tjurina number.
    pub fn expected_tau(&self) -> usize {
        let i = &self.indices;
        match self.family {
            Family::A | Family::B | Family::F | Family::FDot | Family::E => i[0] as usize,
            Family::CPlane => (i[0] + i[1]) as usize,
            Family::CSpace => (i[0] + i[1] + i[2] + 1) as usize,
            Family::X9Star | Family::J10Star => 6,
        }
    }

    /// Replaces the identified aliases `B_2 = C_{1,1}` and `F_3 = B_3`.
    fn canonical(family: Family, indices: &[u32]) -> Option<EntryId> {
        let id = match (family, indices) {
            (Family::B, [2]) => EntryId::new(Family::CPlane, &[1, 1]),
            (Family::F, [3]) => EntryId::new(Family::B, &[3]),
            _ => EntryId::new(family, indices),
        };
        id.validate().ok().map(|_| id)
    }
}

/// Command-line syntax: `A3`, `B4`, `C:2,1`, `C:1,1,1`, `F6`, `Fdot7`, `E6`,
/// `X9@2`, `J10@5/2`.
impl fmt::Display for EntryId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx = self
            .indices
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(",");
        match self.family {
            Family::A | Family::B | Family::F | Family::E => {
                write!(f, "{}{}", self.family.name(), idx)
            }
            Family::FDot => write!(f, "Fdot{idx}"),
            Family::CPlane | Family::CSpace => write!(f, "C:{idx}"),
            Family::X9Star | Family::J10Star => {
                let base = if self.family == Family::X9Star {
                    "X9"
                } else {
                    "J10"
                };
                match &self.modulus {
                    Some(a) => write!(f, "{base}@{}", format_rational(a)),
                    None => write!(f, "{base}"),
                }
            }
        }
    }
}

impl FromStr for EntryId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |m: &str| Error::Parse {
            pos: 0,
            msg: format!("entry `{s}`: {m}"),
        };
        let ints = |t: &str| -> Result<Vec<u32>> {
            t.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<u32>()
                        .map_err(|_| bad("indices must be integers"))
                })
                .collect()
        };
        let id = if let Some(rest) = s.strip_prefix("C:") {
            let v = ints(rest)?;
            match v.len() {
                2 => EntryId::new(Family::CPlane, &v),
                3 => EntryId::new(Family::CSpace, &v),
                _ => return Err(bad("C takes two or three indices")),
            }
        } else if let Some(rest) = s.strip_prefix("X9") {
            let a = rest
                .strip_prefix('@')
                .ok_or_else(|| Error::MissingModulus("X9star".into()))?;
            EntryId::with_modulus(Family::X9Star, parse_rational(a)?)
        } else if let Some(rest) = s.strip_prefix("J10") {
            let a = rest
                .strip_prefix('@')
                .ok_or_else(|| Error::MissingModulus("J10star".into()))?;
            EntryId::with_modulus(Family::J10Star, parse_rational(a)?)
        } else if let Some(rest) = s.strip_prefix("Fdot") {
            EntryId::new(Family::FDot, &ints(rest)?)
        } else {
            let (head, rest) = s.split_at(
                s.find(|c: char| c.is_ascii_digit())
                    .ok_or_else(|| bad("missing index"))?,
            );
            let family = match head {
                "A" => Family::A,
                "B" => Family::B,
                "F" => Family::F,
                "E" => Family::E,
                _ => return Err(bad("unknown family")),
            };
            EntryId::new(family, &ints(rest)?)
        };
        id.validate()?;
        Ok(id)
    }
}

/// Integer weights of `(x, y, z)` and the weighted degree of the function.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuasiWeights {
    pub vars: [i64; 3],
    pub degree: i64,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: EntryId,
    pub pair: CurveFunctionPair,
    /// Curve equation and function in `(x, y)` for plane entries.
    pub plane: Option<(Polynomial, Polynomial)>,
    pub expected_tau: usize,
    /// `None` for entries carrying a modulus.
    pub weights: Option<QuasiWeights>,
}

fn plane_vars() -> VarList {
    VarList::new(&["x", "y"])
}

fn lcm(v: &[u32]) -> i64 {
    v.iter().fold(1i64, |a, &b| a.lcm(&(b as i64)))
}

/// Builds the normal form of the requested entry.
pub fn instantiate(id: &EntryId) -> Result<CatalogEntry> {
    id.validate()?;
    let pv = plane_vars();
    let sv = space_vars();
    let p2 = |s: &str| parse_polynomial(s, &pv).expect("static polynomial");
    let p3 = |s: &str| parse_polynomial(s, &sv).expect("static polynomial");
    let i = &id.indices;
    let plane = |g: Polynomial, f: Polynomial, w: Option<QuasiWeights>| -> Result<CatalogEntry> {
        Ok(CatalogEntry {
            id: id.clone(),
            pair: embed_plane_curve(&g, &f)?,
            plane: Some((g, f)),
            expected_tau: id.expected_tau(),
            weights: w,
        })
    };
    let space = |m: &str, f: &str, w: QuasiWeights| -> Result<CatalogEntry> {
        Ok(CatalogEntry {
            id: id.clone(),
            pair: CurveFunctionPair::new(MatrixGerm::parse(m, &sv)?, p3(f))?,
            plane: None,
            expected_tau: id.expected_tau(),
            weights: Some(w),
        })
    };
    let qw = |x: i64, y: i64, z: i64, d: i64| {
        Some(QuasiWeights {
            vars: [x, y, z],
            degree: d,
        })
    };
    match id.family {
        Family::A => {
            let k = i[0] as i64;
            plane(
                p2("y"),
                p2(&format!("x^{}", k + 1)),
                qw(1, k + 1, k + 1, k + 1),
            )
        }
        Family::CPlane => {
            let l = lcm(i);
            let (wx, wy) = (l / i[0] as i64, l / i[1] as i64);
            plane(
                p2("x*y"),
                p2(&format!("x^{} + y^{}", i[0], i[1])),
                qw(wx, wy, l, l),
            )
        }
        Family::B => {
            let k = i[0] as i64;
            plane(p2(&format!("x^2 + y^{k}")), p2("y"), qw(k, 2, 2, 2))
        }
        Family::F => {
            let r = i[0] as i64;
            if r % 2 == 1 {
                let k = (r - 1) / 2;
                plane(
                    p2("x^2 + y^3"),
                    p2(&format!("y^{k}")),
                    qw(3, 2, 2 * k, 2 * k),
                )
            } else {
                let k = (r - 4) / 2;
                plane(
                    p2("x^2 + y^3"),
                    p2(&format!("x*y^{k}")),
                    qw(3, 2, 2 * k + 3, 2 * k + 3),
                )
            }
        }
        Family::X9Star => {
            let a = id.modulus.clone().expect("validated");
            let f = &p2("x") + &p2("y^2").scale(&a);
            plane(p2("x^2 + y^4"), f, None)
        }
        Family::J10Star => {
            let a = id.modulus.clone().expect("validated");
            let f = &p2("x") + &p2("y").scale(&a);
            plane(p2("x^3 + y^3"), f, None)
        }
        Family::CSpace => {
            let l = lcm(i);
            let w = QuasiWeights {
                vars: [l / i[0] as i64, l / i[1] as i64, l / i[2] as i64],
                degree: l,
            };
            space(
                "x, y, 0; 0, y, z",
                &format!("x^{} + y^{} + z^{}", i[0], i[1], i[2]),
                w,
            )
        }
        Family::FDot => {
            let r = i[0] as i64;
            let m = "x, y, 0; y^2, x, z";
            if r % 2 == 0 {
                let k = (r - 2) / 2;
                space(
                    m,
                    &format!("z + y^{k}"),
                    QuasiWeights {
                        vars: [3, 2, 2 * k],
                        degree: 2 * k,
                    },
                )
            } else {
                let k = (r - 5) / 2;
                let d = 2 * k + 3;
                space(
                    m,
                    &format!("z + x*y^{k}"),
                    QuasiWeights {
                        vars: [3, 2, d],
                        degree: d,
                    },
                )
            }
        }
        Family::E => match i[0] {
            6 => space(
                "x, y, z; z^2, x, y",
                "z",
                QuasiWeights {
                    vars: [5, 4, 3],
                    degree: 3,
                },
            ),
            7 => space(
                "x, y, z; y*z, x, y",
                "z",
                QuasiWeights {
                    vars: [4, 3, 2],
                    degree: 2,
                },
            ),
            _ => space(
                "x, y, z; z^3, x, y",
                "z",
                QuasiWeights {
                    vars: [7, 5, 3],
                    degree: 3,
                },
            ),
        },
    }
}

/// Adjacent (less complicated) entries: index reductions inside the series
/// together with the arrows between series.
pub fn adjacencies(id: &EntryId) -> Vec<EntryId> {
    let mut out: Vec<EntryId> = Vec::new();
    let i = &id.indices;
    let reduce_each = |fam: Family, out: &mut Vec<EntryId>| {
        for k in 0..i.len() {
            if i[k] == 0 {
                continue;
            }
            let mut j = i.clone();
            j[k] -= 1;
            j.sort_unstable_by(|a, b| b.cmp(a));
            if let Some(e) = EntryId::canonical(fam, &j) {
                out.push(e);
            }
        }
    };
    match id.family {
        Family::A => {
            if i[0] >= 2 {
                out.push(EntryId::new(Family::A, &[i[0] - 1]));
            }
        }
        Family::B | Family::F | Family::FDot => reduce_each(id.family, &mut out),
        Family::CPlane => {
            reduce_each(Family::CPlane, &mut out);
            out.push(EntryId::new(Family::A, &[i[0] + i[1] - 1]));
        }
        Family::CSpace => {
            reduce_each(Family::CSpace, &mut out);
            out.push(EntryId::new(Family::CPlane, &[i[0], i[1]]));
        }
        Family::E => {
            if i[0] > 6 {
                out.push(EntryId::new(Family::E, &[i[0] - 1]));
            } else {
                out.push(EntryId::new(Family::FDot, &[5]));
            }
        }
        Family::X9Star => {
            out.push(EntryId::new(Family::B, &[4]));
            out.push(EntryId::new(Family::F, &[4]));
            out.push(EntryId::new(Family::CPlane, &[3, 1]));
        }
        Family::J10Star => {
            out.push(EntryId::new(Family::B, &[4]));
            out.push(EntryId::new(Family::F, &[4]));
        }
    }
    match id.family {
        Family::F => {
            let s = i[0] - 1;
            for q in 1..=s / 2 {
                out.push(EntryId::new(Family::CPlane, &[s - q, q]));
            }
        }
        Family::FDot => {
            if let Some(e) = EntryId::canonical(Family::F, &[i[0] - 1]) {
                out.push(e);
            }
            let s = i[0] - 3;
            for q in 1..=s / 2 {
                out.push(EntryId::new(Family::CSpace, &[s - q, q, 1]));
            }
        }
        _ => {}
    }
    out.sort();
    out.dedup();
    out
}

/// Index bounds of the enumerated catalog.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogRange {
    pub a_max: u32,
    pub b_max: u32,
    /// Bound on `p + q` for plane `C_{p,q}`.
    pub c_plane_sum_max: u32,
    pub f_max: u32,
    /// Bound on each index of `C_{p,q,r}`.
    pub c_space_max: u32,
    pub fdot_max: u32,
    pub include_e: bool,
    pub moduli: Vec<Rational>,
}

impl Default for CatalogRange {
    fn default() -> Self {
        CatalogRange {
            a_max: 10,
            b_max: 8,
            c_plane_sum_max: 12,
            f_max: 12,
            c_space_max: 4,
            fdot_max: 11,
            include_e: true,
            moduli: vec![int(2), int(3), Rational::new(5.into(), 2.into())],
        }
    }
}

impl CatalogRange {
    /// All entries of the range in a fixed order.
    pub fn entries(&self) -> Vec<EntryId> {
        let mut out = Vec::new();
        for k in 1..=self.a_max {
            out.push(EntryId::new(Family::A, &[k]));
        }
        for k in 3..=self.b_max {
            out.push(EntryId::new(Family::B, &[k]));
        }
        for s in 2..=self.c_plane_sum_max {
            for q in 1..=s / 2 {
                out.push(EntryId::new(Family::CPlane, &[s - q, q]));
            }
        }
        for r in 4..=self.f_max {
            out.push(EntryId::new(Family::F, &[r]));
        }
        let m = self.c_space_max;
        for p in 1..=m {
            for q in 1..=p {
                for r in 1..=q {
                    out.push(EntryId::new(Family::CSpace, &[p, q, r]));
                }
            }
        }
        for r in 4..=self.fdot_max {
            out.push(EntryId::new(Family::FDot, &[r]));
        }
        if self.include_e {
            for k in 6..=8 {
                out.push(EntryId::new(Family::E, &[k]));
            }
        }
        for a in &self.moduli {
            out.push(EntryId::with_modulus(Family::X9Star, a.clone()));
            out.push(EntryId::with_modulus(Family::J10Star, a.clone()));
        }
        out
    }
}

/// A deformation with explicit parameters. The variable list is `x, y, z`
/// followed by the parameters; every polynomial is quasi-homogeneous of
/// weight zero once parameters carry their weights and each slot its shift.
#[derive(Clone, Debug)]
pub struct ParametricPair {
    pub vars: VarList,
    pub params: Vec<String>,
    pub matrix: Vec<Vec<Polynomial>>,
    pub function: Polynomial,
    pub var_weights: [i64; 3],
    pub param_weights: Vec<i64>,
    pub degree: i64,
    pub row_shifts: Vec<i64>,
    pub col_shifts: Vec<i64>,
    /// Index of the constant-term parameter, absent in truncated families.
    pub constant_param: Option<usize>,
}

impl ParametricPair {
    pub fn num_params(&self) -> usize {
        self.params.len()
    }

    /// Index of parameter `i` in the variable list.
    pub fn param_var(&self, i: usize) -> usize {
        3 + i
    }

    /// Weights of all variables (coordinates then parameters).
    pub fn all_weights(&self) -> Vec<i64> {
        self.var_weights
            .iter()
            .copied()
            .chain(self.param_weights.iter().copied())
            .collect()
    }

    /// The pair at given parameter values, over `x, y, z`.
    pub fn specialize(&self, values: &[Rational]) -> Result<CurveFunctionPair> {
        let sv = space_vars();
        let subs: Vec<(usize, Rational)> = values
            .iter()
            .enumerate()
            .map(|(i, v)| (3 + i, v.clone()))
            .collect();
        let down = |p: &Polynomial| p.partial_evaluate(&subs).restrict(&sv);
        let rows = self
            .matrix
            .iter()
            .map(|r| r.iter().map(down).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        CurveFunctionPair::new(MatrixGerm::new(rows)?, down(&self.function)?)
    }

    /// Total component count `n(n+1) + 1`.
    pub fn module_rank(&self) -> usize {
        let n = self.matrix.len();
        n * (n + 1) + 1
    }

    /// Weight shift of the slot of entry `(i, j)` and of the function slot.
    pub fn slot_shifts(&self) -> Vec<i64> {
        let mut s = Vec::new();
        for r in &self.row_shifts {
            for c in &self.col_shifts {
                s.push(r + c);
            }
        }
        s.push(self.degree);
        s
    }
}

/// The miniversal family of `C_{p,q,r}`:
/// `[[x, y, α], [β, y+γ, z]]` with
/// `x^p + Σ λ_{1,i} x^{p-i} + y^q + Σ λ_{2,i} y^{q-i} + z^r + Σ λ_{3,i} z^{r-i} + λ₀`.
/// The truncated family omits `λ₀`.
pub fn printed_miniversal(id: &EntryId, truncated: bool) -> Result<ParametricPair> {
    if id.family != Family::CSpace {
        return Err(Error::Unsupported(format!(
            "no explicit miniversal family for {}",
            id.label()
        )));
    }
    id.validate()?;
    let (p, q, r) = (id.indices[0], id.indices[1], id.indices[2]);
    let l = lcm(&id.indices);
    let w = [l / p as i64, l / q as i64, l / r as i64];
    let mut params: Vec<String> = vec!["alpha".into(), "beta".into(), "gamma".into()];
    let mut pw = vec![w[2], w[0], w[1]];
    for (block, deg) in [(1u32, p), (2, q), (3, r)] {
        for i in 1..deg {
            params.push(format!("l{block}_{i}"));
            pw.push(i as i64 * w[(block - 1) as usize]);
        }
    }
    if !truncated {
        params.push("l0".into());
        pw.push(l);
    }
    let names: Vec<&str> = ["x", "y", "z"]
        .into_iter()
        .chain(params.iter().map(String::as_str))
        .collect();
    let vars = VarList::new(&names);
    let v = |s: &str| Polynomial::named(&vars, s);
    let matrix = vec![
        vec![v("x"), v("y"), v("alpha")],
        vec![v("beta"), &v("y") + &v("gamma"), v("z")],
    ];
    let mut f = &(&v("x").pow(p) + &v("y").pow(q)) + &v("z").pow(r);
    for (block, deg, var) in [(1u32, p, "x"), (2, q, "y"), (3, r, "z")] {
        for i in 1..deg {
            f = &f + &(&v(&format!("l{block}_{i}")) * &v(var).pow(deg - i));
        }
    }
    let constant_param = if truncated {
        None
    } else {
        f = &f + &v("l0");
        Some(params.len() - 1)
    };
    Ok(ParametricPair {
        vars,
        params,
        matrix,
        function: f,
        var_weights: w,
        param_weights: pw,
        degree: l,
        row_shifts: vec![0, 0],
        col_shifts: vec![w[0], w[1], w[2]],
        constant_param,
    })
}

/// The miniversal family of `A_k` on the line `[y, z]`:
/// `x^{k+1} + Σ λ_i x^i + λ₀`, parameters ordered `λ_1, …, λ_{k-1}, λ₀`.
pub fn a_series_miniversal(k: u32, truncated: bool) -> Result<ParametricPair> {
    if k == 0 {
        return Err(Error::Restriction("A_k needs k >= 1".into()));
    }
    let d = k as i64 + 1;
    let mut params: Vec<String> = (1..k).map(|i| format!("l{i}")).collect();
    let mut pw: Vec<i64> = (1..k).map(|i| d - i as i64).collect();
    if !truncated {
        params.push("l0".into());
        pw.push(d);
    }
    let names: Vec<&str> = ["x", "y", "z"]
        .into_iter()
        .chain(params.iter().map(String::as_str))
        .collect();
    let vars = VarList::new(&names);
    let v = |s: &str| Polynomial::named(&vars, s);
    let mut f = v("x").pow(k + 1);
    for i in 1..k {
        f = &f + &(&v(&format!("l{i}")) * &v("x").pow(i));
    }
    let constant_param = if truncated {
        None
    } else {
        f = &f + &v("l0");
        Some(params.len() - 1)
    };
    Ok(ParametricPair {
        matrix: vec![vec![v("y"), v("z")]],
        function: f,
        var_weights: [1, d, d],
        param_weights: pw,
        degree: d,
        row_shifts: vec![0],
        col_shifts: vec![d, d],
        constant_param,
        vars,
        params,
    })
}

/// The explicit miniversal family of an entry, where one is available
/// (`A_k` and `C_{p,q,r}`).
pub fn explicit_miniversal(id: &EntryId, truncated: bool) -> Result<ParametricPair> {
    id.validate()?;
    match id.family {
        Family::A => a_series_miniversal(id.indices[0], truncated),
        _ => printed_miniversal(id, truncated),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_lines_entry() {
        let e = instantiate(&"C:1,1,1".parse().unwrap()).unwrap();
        assert_eq!(e.pair.matrix.to_string(), "x, y, 0; 0, y, z");
        assert_eq!(e.pair.function.to_string(), "x + y + z");
        assert_eq!(e.expected_tau, 4);
    }

    #[test]
    fn e6_and_x9() {
        let e = instantiate(&"E6".parse().unwrap()).unwrap();
        assert_eq!(e.pair.matrix.to_string(), "x, y, z; z^2, x, y");
        assert_eq!(e.expected_tau, 6);
        let x = instantiate(&"X9@2".parse().unwrap()).unwrap();
        let (g, f) = x.plane.unwrap();
        assert_eq!(g.to_string(), "y^4 + x^2");
        assert_eq!(f.to_string(), "2*y^2 + x");
        assert_eq!(x.expected_tau, 6);
    }

    #[test]
    fn restrictions() {
        assert!(matches!(
            "C:1,2,1".parse::<EntryId>(),
            Err(Error::Restriction(_))
        ));
        assert!(matches!(
            "B2".parse::<EntryId>(),
            Err(Error::Restriction(_))
        ));
        assert!(matches!(
            "X9".parse::<EntryId>(),
            Err(Error::MissingModulus(_))
        ));
        assert!("Q5".parse::<EntryId>().is_err());
    }

    #[test]
    fn entry_syntax_round_trips() {
        for s in [
            "A3", "B4", "C:2,1", "C:2,1,1", "F6", "Fdot7", "E8", "X9@2", "J10@5/2",
        ] {
            let id: EntryId = s.parse().unwrap();
            assert_eq!(id.to_string(), s);
        }
    }

    #[test]
    fn printed_adjacencies() {
        let f6 = adjacencies(&"F6".parse().unwrap());
        assert!(f6.contains(&EntryId::new(Family::CPlane, &[4, 1])));
        assert!(f6.contains(&EntryId::new(Family::CPlane, &[3, 2])));
        assert_eq!(
            adjacencies(&"E6".parse().unwrap()),
            vec![EntryId::new(Family::FDot, &[5])]
        );
        assert_eq!(
            adjacencies(&"C:2,1,1".parse().unwrap()),
            vec![
                EntryId::new(Family::CPlane, &[2, 1]),
                EntryId::new(Family::CSpace, &[1, 1, 1])
            ]
        );
        assert!(
            adjacencies(&"B3".parse().unwrap()).contains(&EntryId::new(Family::CPlane, &[1, 1]))
        );
        assert!(adjacencies(&"F4".parse().unwrap()).contains(&EntryId::new(Family::B, &[3])));
    }

    #[test]
    fn miniversal_parameter_counts() {
        let full = printed_miniversal(&"C:1,1,1".parse().unwrap(), false).unwrap();
        assert_eq!(full.params, vec!["alpha", "beta", "gamma", "l0"]);
        let trunc = printed_miniversal(&"C:1,1,1".parse().unwrap(), true).unwrap();
        assert_eq!(trunc.num_params(), 3);
        let c211 = printed_miniversal(&"C:2,1,1".parse().unwrap(), false).unwrap();
        assert_eq!(c211.params, vec!["alpha", "beta", "gamma", "l1_1", "l0"]);
        assert!(printed_miniversal(&"E6".parse().unwrap(), false).is_err());
        let a3 = explicit_miniversal(&"A3".parse().unwrap(), false).unwrap();
        assert_eq!(a3.params, vec!["l1", "l2", "l0"]);
        assert_eq!(a3.param_weights, vec![3, 2, 4]);
        assert_eq!(a3.function.to_string(), "x^4 + x^2*l2 + x*l1 + l0");
    }
}
