//! Finite permutation groups with a lazily built multiplication table.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{FlabError, Result};
use crate::perm::Perm;
use crate::schreier::StabChain;

pub const DEFAULT_ORDER_CAP: u64 = 2000;
pub const DEFAULT_ELEMENT_CAP: u64 = 2000;
pub const DEFAULT_ORACLE_CAP: u64 = 10_000;

/// Size limits applied when building groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub order_cap: u64,
    pub element_cap: u64,
    pub oracle_cap: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            order_cap: DEFAULT_ORDER_CAP,
            element_cap: DEFAULT_ELEMENT_CAP,
            oracle_cap: DEFAULT_ORACLE_CAP,
        }
    }
}

impl Caps {
    /// Default caps, with `FLAB_MAX_ORDER` overriding the order and element caps.
    pub fn from_env() -> Self {
        let mut caps = Caps::default();
        if let Some(cap) = std::env::var("FLAB_MAX_ORDER")
            .ok()
            .and_then(|v| v.trim().parse::<u64>().ok())
        {
            caps.order_cap = cap;
            caps.element_cap = cap;
        }
        caps
    }

    pub(crate) fn for_oracle(self) -> Self {
        Caps {
            order_cap: self.oracle_cap,
            element_cap: self.oracle_cap,
            oracle_cap: self.oracle_cap,
        }
    }
}

/// Element list and Cayley table of a group. Element 0 is the identity.
pub struct Cayley {
    perms: Vec<Perm>,
    index: HashMap<Perm, u32>,
    table: Vec<u16>,
    inverse: Vec<u16>,
    orders: Vec<u32>,
    /// Element index of each generator of the group.
    gens: Vec<usize>,
}

impl Cayley {
    fn build(degree: usize, gens: &[Perm]) -> Cayley {
        let mut perms = vec![Perm::identity(degree)];
        let mut index = HashMap::new();
        index.insert(perms[0].clone(), 0u32);
        // parent[j] = (i, k) with e_j = e_i * gen_k
        let mut parent: Vec<(usize, usize)> = vec![(0, 0)];
        let mut right: Vec<Vec<u32>> = Vec::new();
        let mut head = 0;
        while head < perms.len() {
            let mut row = Vec::with_capacity(gens.len());
            for (k, s) in gens.iter().enumerate() {
                let p = perms[head].compose(s);
                let idx = match index.get(&p) {
                    Some(&j) => j,
                    None => {
                        let j = perms.len() as u32;
                        index.insert(p.clone(), j);
                        perms.push(p);
                        parent.push((head, k));
                        j
                    }
                };
                row.push(idx);
            }
            right.push(row);
            head += 1;
        }
        let n = perms.len();
        let mut table = vec![0u16; n * n];
        for i in 0..n {
            table[i * n] = i as u16;
            for j in 1..n {
                let (pj, k) = parent[j];
                let t = table[i * n + pj] as usize;
                table[i * n + j] = right[t][k] as u16;
            }
        }
        let mut inverse = vec![0u16; n];
        for i in 0..n {
            for j in 0..n {
                if table[i * n + j] == 0 {
                    inverse[i] = j as u16;
                    break;
                }
            }
        }
        let mut orders = vec![0u32; n];
        for i in 0..n {
            let mut x = i;
            let mut k = 1;
            while x != 0 {
                x = table[x * n + i] as usize;
                k += 1;
            }
            orders[i] = k;
        }
        let gen_idx = gens.iter().map(|g| index[g] as usize).collect();
        Cayley {
            perms,
            index,
            table,
            inverse,
            orders,
            gens: gen_idx,
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.perms.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.perms.len() + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// `g^-1 a g`.
    #[inline]
    pub fn conj(&self, a: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), a), g)
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    #[inline]
    pub fn comm(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    #[inline]
    pub fn elem_order(&self, a: usize) -> u32 {
        self.orders[a]
    }

    pub fn pow(&self, a: usize, mut e: u64) -> usize {
        let mut acc = 0;
        let mut sq = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        acc
    }

    pub fn perm(&self, a: usize) -> &Perm {
        &self.perms[a]
    }

    pub fn perms(&self) -> &[Perm] {
        &self.perms
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).map(|&i| i as usize)
    }

    pub fn gens(&self) -> &[usize] {
        &self.gens
    }
}

/// A finite permutation group on points `0..degree`.
pub struct Group {
    degree: usize,
    gens: Vec<Perm>,
    order: u64,
    chain: StabChain,
    caps: Caps,
    cayley: OnceLock<Result<Arc<Cayley>>>,
}

impl Group {
    pub fn new(degree: usize, gens: Vec<Perm>, caps: Caps) -> Result<Group> {
        for g in &gens {
            if g.degree() != degree {
                return Err(FlabError::InvalidPermutation(format!(
                    "generator {g} has degree {} but the group has degree {degree}",
                    g.degree()
                )));
            }
        }
        let mut uniq: Vec<Perm> = Vec::new();
        for g in gens {
            if !g.is_identity() && !uniq.contains(&g) {
                uniq.push(g);
            }
        }
        let chain = StabChain::new(degree, &uniq);
        let order = chain.order();
        if order > caps.order_cap {
            return Err(FlabError::OrderCap {
                order,
                cap: caps.order_cap,
            });
        }
        Ok(Group {
            degree,
            gens: uniq,
            order,
            chain,
            caps,
            cayley: OnceLock::new(),
        })
    }

    pub fn trivial() -> Group {
        Group::new(1, Vec::new(), Caps::default()).expect("trivial group")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    pub fn stab_chain(&self) -> &StabChain {
        &self.chain
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.chain.contains(p)
    }

    /// Element list and multiplication table; fails above the element cap.
    pub fn cayley(&self) -> Result<&Cayley> {
        let built = self.cayley.get_or_init(|| {
            if self.order > self.caps.element_cap || self.order > u16::MAX as u64 {
                return Err(FlabError::ElementCap {
                    order: self.order,
                    cap: self.caps.element_cap,
                });
            }
            Ok(Arc::new(Cayley::build(self.degree, &self.gens)))
        });
        match built {
            Ok(c) => Ok(c),
            Err(e) => Err(e.clone()),
        }
    }

    pub fn elements(&self) -> Result<&[Perm]> {
        Ok(self.cayley()?.perms())
    }

    /// Sorted histogram of element orders as `(order, count)` pairs.
    pub fn element_order_histogram(&self) -> Result<Vec<(u32, usize)>> {
        let c = self.cayley()?;
        let mut hist = std::collections::BTreeMap::new();
        for a in 0..c.len() {
            *hist.entry(c.elem_order(a)).or_insert(0usize) += 1;
        }
        Ok(hist.into_iter().collect())
    }

    pub fn is_abelian(&self) -> bool {
        self.gens
            .iter()
            .enumerate()
            .all(|(i, a)| self.gens[i + 1..].iter().all(|b| a.compose(b) == b.compose(a)))
    }
}

impl fmt::Debug for Cayley {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cayley(order {})", self.perms.len())
    }
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("degree", &self.degree)
            .field("order", &self.order)
            .field("gens", &self.gens)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: usize) -> Group {
        let t = Perm::from_cycles(n, &[vec![0, 1]]).unwrap();
        let r = Perm::from_cycles(n, &[(0..n as u32).collect()]).unwrap();
        Group::new(n, vec![t, r], Caps::default()).unwrap()
    }

    #[test]
    fn cayley_table_matches_composition() {
        let g = s(4);
        let c = g.cayley().unwrap();
        assert_eq!(c.len(), 24);
        for a in 0..c.len() {
            for b in 0..c.len() {
                let p = c.perm(a).compose(c.perm(b));
                assert_eq!(c.index_of(&p), Some(c.mul(a, b)));
            }
            assert!(c.perm(a).compose(c.perm(c.inv(a))).is_identity());
            assert_eq!(c.elem_order(a) as u64, c.perm(a).order());
        }
    }

    #[test]
    fn order_cap_is_enforced() {
        let caps = Caps {
            order_cap: 100,
            ..Caps::default()
        };
        let t = Perm::from_cycles(5, &[vec![0, 1]]).unwrap();
        let r = Perm::from_cycles(5, &[vec![0, 1, 2, 3, 4]]).unwrap();
        let err = Group::new(5, vec![t, r], caps).unwrap_err();
        assert_eq!(err, FlabError::OrderCap { order: 120, cap: 100 });
    }

    #[test]
    fn element_cap_is_lazy() {
        let caps = Caps {
            element_cap: 10,
            ..Caps::default()
        };
        let t = Perm::from_cycles(4, &[vec![0, 1]]).unwrap();
        let r = Perm::from_cycles(4, &[vec![0, 1, 2, 3]]).unwrap();
        let g = Group::new(4, vec![t, r], caps).unwrap();
        assert_eq!(g.order(), 24);
        assert!(matches!(g.cayley(), Err(FlabError::ElementCap { .. })));
    }

    #[test]
    fn chain_order_matches_closure() {
        for n in 1..=5 {
            let g = s(n.max(2));
            assert_eq!(g.order(), g.elements().unwrap().len() as u64);
        }
    }
}
