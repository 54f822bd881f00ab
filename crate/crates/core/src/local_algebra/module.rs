use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{Polynomial, Rational, VarList};

/// An element of the free module `O^rank`, stored as one polynomial per component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleElement {
    vars: VarList,
    components: Vec<Polynomial>,
}

impl ModuleElement {
    pub fn new(components: Vec<Polynomial>) -> Result<Self> {
        let Some(first) = components.first() else {
            return Err(Error::RankMismatch {
                expected: 1,
                found: 0,
            });
        };
        let vars = first.vars().clone();
        for c in &components {
            c.vars().check_same(&vars)?;
        }
        Ok(ModuleElement { vars, components })
    }

    pub fn zero(vars: &VarList, rank: usize) -> Self {
        ModuleElement {
            vars: vars.clone(),
            components: vec![Polynomial::zero(vars); rank],
        }
    }

    /// `p` times the `i`-th unit vector.
    pub fn unit(vars: &VarList, rank: usize, i: usize, p: Polynomial) -> Self {
        let mut e = Self::zero(vars, rank);
        e.components[i] = p;
        e
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }

    pub fn vars(&self) -> &VarList {
        &self.vars
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Polynomial {
        &self.components[i]
    }

    pub fn into_components(self) -> Vec<Polynomial> {
        self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    pub fn add(&self, other: &ModuleElement) -> ModuleElement {
        assert_eq!(self.rank(), other.rank());
        ModuleElement {
            vars: self.vars.clone(),
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &ModuleElement) -> ModuleElement {
        assert_eq!(self.rank(), other.rank());
        ModuleElement {
            vars: self.vars.clone(),
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn mul_poly(&self, p: &Polynomial) -> ModuleElement {
        ModuleElement {
            vars: self.vars.clone(),
            components: self.components.iter().map(|c| c * p).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> ModuleElement {
        ModuleElement {
            vars: self.vars.clone(),
            components: self.components.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn derivative(&self, var: usize) -> ModuleElement {
        ModuleElement {
            vars: self.vars.clone(),
            components: self.components.iter().map(|p| p.derivative(var)).collect(),
        }
    }

    /// Applies `f` to every component (the variable list may change).
    pub fn map_components<F: Fn(&Polynomial) -> Polynomial>(&self, f: F) -> ModuleElement {
        let components: Vec<Polynomial> = self.components.iter().map(f).collect();
        ModuleElement {
            vars: components[0].vars().clone(),
            components,
        }
    }

    pub(crate) fn check_compatible(&self, rank: usize, vars: &VarList) -> Result<()> {
        if self.rank() != rank {
            return Err(Error::RankMismatch {
                expected: rank,
                found: self.rank(),
            });
        }
        self.vars.check_same(vars)
    }
}

impl fmt::Display for ModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}
