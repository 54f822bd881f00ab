use std::cmp::Ordering;

/// How the component index and the monomial are combined.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModuleOrder {
    /// Component first (lower index is larger), then the monomial.
    PositionOverTerm,
    /// Monomial first, then the component.
    TermOverPosition,
}

/// Negative-degree lexicographic order: lower total degree is larger, ties
/// are broken lexicographically along `perm`. The constant monomial is the
/// unique maximum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalOrder {
    perm: Vec<usize>,
    module: ModuleOrder,
}

impl LocalOrder {
    pub fn negative_degree_lex(nvars: usize) -> Self {
        LocalOrder {
            perm: (0..nvars).collect(),
            module: ModuleOrder::PositionOverTerm,
        }
    }

    /// `perm` must be a permutation of `0..nvars`.
    pub fn with_permutation(perm: Vec<usize>) -> Self {
        let mut sorted = perm.clone();
        sorted.sort_unstable();
        assert!(
            sorted.iter().enumerate().all(|(i, &p)| i == p),
            "not a permutation"
        );
        LocalOrder {
            perm,
            module: ModuleOrder::PositionOverTerm,
        }
    }

    pub fn with_module_order(mut self, module: ModuleOrder) -> Self {
        self.module = module;
        self
    }

    pub fn nvars(&self) -> usize {
        self.perm.len()
    }

    pub fn module_order(&self) -> ModuleOrder {
        self.module
    }

    /// Compares monomials; `Greater` means `a` is larger.
    pub fn cmp_monomials(&self, a: &[u32], b: &[u32]) -> Ordering {
        let da: u32 = a.iter().sum();
        let db: u32 = b.iter().sum();
        db.cmp(&da).then_with(|| {
            for &i in &self.perm {
                match a[i].cmp(&b[i]) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }

    /// Compares module monomials `x^a e_ca` and `x^b e_cb`.
    pub fn cmp_terms(&self, ca: usize, a: &[u32], cb: usize, b: &[u32]) -> Ordering {
        match self.module {
            ModuleOrder::PositionOverTerm => cb.cmp(&ca).then_with(|| self.cmp_monomials(a, b)),
            ModuleOrder::TermOverPosition => self.cmp_monomials(a, b).then_with(|| cb.cmp(&ca)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_is_maximal() {
        let o = LocalOrder::negative_degree_lex(3);
        assert_eq!(o.cmp_monomials(&[0, 0, 0], &[1, 0, 0]), Ordering::Greater);
        assert_eq!(o.cmp_monomials(&[2, 0, 0], &[0, 3, 0]), Ordering::Greater);
        assert_eq!(o.cmp_monomials(&[1, 0, 0], &[0, 1, 0]), Ordering::Greater);
        let p = LocalOrder::with_permutation(vec![1, 0, 2]);
        assert_eq!(p.cmp_monomials(&[1, 0, 0], &[0, 1, 0]), Ordering::Less);
    }
}
