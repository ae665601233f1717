use std::cmp::Ordering;

use super::{lane, MAX_EXPONENT};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Lex,
    DegRevLex,
}

/// A monomial order together with a variable ranking: `perm[0]` is the
/// most significant variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub perm: Vec<usize>,
}

impl MonomialOrder {
    pub fn lex(nvars: usize) -> Self {
        MonomialOrder {
            kind: OrderKind::Lex,
            perm: (0..nvars).collect(),
        }
    }

    pub fn degrevlex(nvars: usize) -> Self {
        MonomialOrder {
            kind: OrderKind::DegRevLex,
            perm: (0..nvars).collect(),
        }
    }

    pub fn with_perm(kind: OrderKind, perm: Vec<usize>) -> Self {
        let mut sorted = perm.clone();
        sorted.sort_unstable();
        assert!(sorted.iter().copied().eq(0..perm.len()), "not a permutation");
        MonomialOrder { kind, perm }
    }

    pub fn nvars(&self) -> usize {
        self.perm.len()
    }

    /// An integer key whose numeric order is this monomial order.
    pub fn key(&self, m: u128) -> u128 {
        let n = self.perm.len();
        match self.kind {
            OrderKind::Lex => {
                let mut k = 0u128;
                for (j, &v) in self.perm.iter().enumerate() {
                    k |= (lane(m, v) as u128) << (8 * (14 - j));
                }
                k
            }
            OrderKind::DegRevLex => {
                let mut k = (m >> super::DEG_SHIFT) << super::DEG_SHIFT;
                for (j, &v) in self.perm.iter().enumerate() {
                    // the least significant variable decides first, smaller exponent wins
                    let pos = 14 - (n - 1 - j);
                    k |= ((MAX_EXPONENT - lane(m, v)) as u128) << (8 * pos);
                }
                k
            }
        }
    }

    pub fn cmp(&self, a: u128, b: u128) -> Ordering {
        self.key(a).cmp(&self.key(b))
    }
}
