use std::cmp::Ordering;

use super::Monomial;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderKind {
    Lex,
    DegRevLex,
    /// Block order: the first `k` variables (in priority order) form a block
    /// compared first by degree reverse lexicographic order; ties are broken
    /// by degree reverse lexicographic order on the remaining variables.
    Elimination(usize),
}

/// A monomial order together with the variable priority it applies to.
/// `priority[0]` is the most significant variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub priority: Vec<usize>,
}

impl MonomialOrder {
    pub fn lex(nvars: usize) -> Self {
        Self::with_kind(OrderKind::Lex, nvars)
    }

    pub fn degrevlex(nvars: usize) -> Self {
        Self::with_kind(OrderKind::DegRevLex, nvars)
    }

    pub fn elimination(block: usize, nvars: usize) -> Self {
        Self::with_kind(OrderKind::Elimination(block), nvars)
    }

    pub fn with_kind(kind: OrderKind, nvars: usize) -> Self {
        MonomialOrder {
            kind,
            priority: (0..nvars).collect(),
        }
    }

    pub fn with_priority(kind: OrderKind, priority: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; priority.len()];
        for &p in &priority {
            if p >= priority.len() || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidInput(format!(
                    "{priority:?} is not a permutation"
                )));
            }
        }
        if let OrderKind::Elimination(k) = kind {
            if k > priority.len() {
                return Err(Error::InvalidInput(format!(
                    "elimination block {k} exceeds {} variables",
                    priority.len()
                )));
            }
        }
        Ok(MonomialOrder { kind, priority })
    }

    pub fn nvars(&self) -> usize {
        self.priority.len()
    }

    /// Variables eliminated by this order, if it is an elimination order.
    pub fn eliminated(&self) -> &[usize] {
        match self.kind {
            OrderKind::Elimination(k) => &self.priority[..k],
            _ => &[],
        }
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.nvars() != self.nvars() || b.nvars() != self.nvars() {
            return Err(Error::RingMismatch(format!(
                "order over {} variables applied to monomials of length {} and {}",
                self.nvars(),
                a.nvars(),
                b.nvars()
            )));
        }
        Ok(self.cmp(a, b))
    }

    /// Unchecked comparison for hot loops; monomials must match `nvars`.
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (ea, eb) = (a.exponents(), b.exponents());
        match self.kind {
            OrderKind::Lex => lex(ea, eb, &self.priority),
            OrderKind::DegRevLex => grevlex(ea, eb, &self.priority),
            OrderKind::Elimination(k) => {
                let (head, tail) = self.priority.split_at(k);
                grevlex(ea, eb, head).then_with(|| grevlex(ea, eb, tail))
            }
        }
    }
}

fn lex(a: &[u32], b: &[u32], vars: &[usize]) -> Ordering {
    for &v in vars {
        match a[v].cmp(&b[v]) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

fn grevlex(a: &[u32], b: &[u32], vars: &[usize]) -> Ordering {
    let da: u32 = vars.iter().map(|&v| a[v]).sum();
    let db: u32 = vars.iter().map(|&v| b[v]).sum();
    da.cmp(&db).then_with(|| {
        for &v in vars.iter().rev() {
            match a[v].cmp(&b[v]) {
                Ordering::Equal => continue,
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    })
}
