//! Subgroups of a tabulated group, stored as element bitsets.

use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

use fixedbitset::FixedBitSet;

use crate::group::Cayley;

/// A subgroup of an ambient [`Cayley`] table.
///
/// Equality and hashing use the element set only; `gens` is a small
/// generating set kept alongside.
#[derive(Clone, Debug)]
pub struct Subgroup {
    set: FixedBitSet,
    order: usize,
    gens: Vec<usize>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.set == other.set
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.set.hash(state);
    }
}

impl Subgroup {
    pub fn trivial(c: &Cayley) -> Subgroup {
        let mut set = FixedBitSet::with_capacity(c.len());
        set.insert(0);
        Subgroup {
            set,
            order: 1,
            gens: Vec::new(),
        }
    }

    pub fn whole(c: &Cayley) -> Subgroup {
        let mut set = FixedBitSet::with_capacity(c.len());
        set.insert_range(..);
        Subgroup {
            set,
            order: c.len(),
            gens: c.gens().to_vec(),
        }
    }

    /// Subgroup generated by `gens`.
    pub fn generated(c: &Cayley, gens: &[usize]) -> Subgroup {
        let mut h = Subgroup::trivial(c);
        for &g in gens {
            h = h.extend(c, g);
        }
        h
    }

    /// Builds a subgroup from an element set known to be closed.
    pub fn from_set(c: &Cayley, set: FixedBitSet) -> Subgroup {
        debug_assert!(set.contains(0));
        let target = set.count_ones(..);
        let mut h = Subgroup::trivial(c);
        // Prefer high-order elements so the generating set stays short.
        let mut candidates: Vec<usize> = set.ones().filter(|&x| x != 0).collect();
        candidates.sort_by_key(|&x| (std::cmp::Reverse(c.elem_order(x)), x));
        for x in candidates {
            if h.order == target {
                break;
            }
            if !h.contains(x) {
                h = h.extend(c, x);
            }
        }
        debug_assert_eq!(h.set, set, "from_set given a non-closed set");
        h
    }

    /// `⟨self, g⟩`.
    pub fn extend(&self, c: &Cayley, g: usize) -> Subgroup {
        if self.contains(g) {
            return self.clone();
        }
        let mut gens = self.gens.clone();
        gens.push(g);
        let mut set = self.set.clone();
        let mut queue: Vec<usize> = self.set.ones().collect();
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &s in &gens {
                let y = c.mul(x, s);
                if !set.put(y) {
                    queue.push(y);
                }
            }
        }
        let order = queue.len();
        Subgroup { set, order, gens }
    }

    /// Like [`Subgroup::extend`], giving up once the result would exceed `limit` elements.
    pub fn extend_bounded(&self, c: &Cayley, g: usize, limit: usize) -> Option<Subgroup> {
        if self.contains(g) {
            return Some(self.clone());
        }
        let mut gens = self.gens.clone();
        gens.push(g);
        let mut set = self.set.clone();
        let mut queue: Vec<usize> = self.set.ones().collect();
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &s in &gens {
                let y = c.mul(x, s);
                if !set.put(y) {
                    queue.push(y);
                    if queue.len() > limit {
                        return None;
                    }
                }
            }
        }
        let order = queue.len();
        Some(Subgroup { set, order, gens })
    }

    pub fn join(&self, c: &Cayley, other: &Subgroup) -> Subgroup {
        let (big, small) = if self.order >= other.order {
            (self, other)
        } else {
            (other, self)
        };
        let mut h = big.clone();
        for &g in &small.gens {
            h = h.extend(c, g);
        }
        h
    }

    pub fn intersection(&self, c: &Cayley, other: &Subgroup) -> Subgroup {
        if self.is_subgroup_of(other) {
            return self.clone();
        }
        if other.is_subgroup_of(self) {
            return other.clone();
        }
        let mut set = self.set.clone();
        set.intersect_with(&other.set);
        Subgroup::from_set(c, set)
    }

    /// Normal closure of `⟨self, extra⟩` under conjugation by `by`.
    pub fn normal_closure(&self, c: &Cayley, by: &[usize], extra: &[usize]) -> Subgroup {
        self.normal_closure_bounded(c, by, extra, usize::MAX)
            .expect("unbounded closure")
    }

    /// Normal closure that aborts once it exceeds `limit` elements.
    pub fn normal_closure_bounded(&self, c: &Cayley, by: &[usize], extra: &[usize], limit: usize) -> Option<Subgroup> {
        let mut h = self.clone();
        let mut pending: Vec<usize> = extra.to_vec();
        // Conjugates of existing generators are needed too.
        let mut checked = 0;
        loop {
            while let Some(x) = pending.pop() {
                if !h.contains(x) {
                    h = h.extend_bounded(c, x, limit)?;
                }
            }
            if checked == h.gens.len() {
                return Some(h);
            }
            let gens = h.gens[checked..].to_vec();
            checked = h.gens.len();
            for s in gens {
                for &t in by {
                    let y = c.conj(s, t);
                    if !h.contains(y) {
                        pending.push(y);
                    }
                }
            }
        }
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.set.contains(x)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn gens(&self) -> &[usize] {
        &self.gens
    }

    pub fn set(&self) -> &FixedBitSet {
        &self.set
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.set.ones()
    }

    /// Sorted list of element indices.
    pub fn fingerprint(&self) -> Vec<usize> {
        self.set.ones().collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.order <= other.order && self.set.is_subset(&other.set)
    }

    pub fn is_proper_subgroup_of(&self, other: &Subgroup) -> bool {
        self.order < other.order && self.set.is_subset(&other.set)
    }

    /// Conjugate element set `self^g`.
    pub fn conjugate(&self, c: &Cayley, g: usize) -> Subgroup {
        let mut set = FixedBitSet::with_capacity(c.len());
        for x in self.set.ones() {
            set.insert(c.conj(x, g));
        }
        Subgroup {
            set,
            order: self.order,
            gens: self.gens.iter().map(|&x| c.conj(x, g)).collect(),
        }
    }

    pub fn is_normalized_by(&self, c: &Cayley, g: usize) -> bool {
        self.gens.iter().all(|&s| self.contains(c.conj(s, g)))
    }

    pub fn is_normal_in(&self, c: &Cayley, ambient: &Subgroup) -> bool {
        ambient.gens.iter().all(|&t| self.is_normalized_by(c, t))
    }

    /// `N_within(self)`.
    pub fn normalizer_in(&self, c: &Cayley, within: &Subgroup) -> Subgroup {
        let mut set = FixedBitSet::with_capacity(c.len());
        for g in within.set.ones() {
            if self.is_normalized_by(c, g) {
                set.insert(g);
            }
        }
        Subgroup::from_set(c, set)
    }

    /// `C_within(self)`.
    pub fn centralizer_in(&self, c: &Cayley, within: &Subgroup) -> Subgroup {
        let mut set = FixedBitSet::with_capacity(c.len());
        for g in within.set.ones() {
            if self.gens.iter().all(|&s| c.mul(s, g) == c.mul(g, s)) {
                set.insert(g);
            }
        }
        Subgroup::from_set(c, set)
    }

    /// `Core_within(self)`: largest subgroup of `self` normalized by `within`.
    pub fn core_in(&self, c: &Cayley, within: &Subgroup) -> Subgroup {
        if self.is_normal_in(c, within) {
            return self.clone();
        }
        let mut cur = self.set.clone();
        loop {
            let mut next = cur.clone();
            for x in cur.ones() {
                if within.gens.iter().any(|&t| !cur.contains(c.conj(x, t))) {
                    next.set(x, false);
                }
            }
            if next == cur {
                break;
            }
            cur = next;
        }
        Subgroup::from_set(c, cur)
    }

    /// Coset representatives of `self` in `over`, one per right coset, smallest index first.
    pub fn right_transversal(&self, c: &Cayley, over: &Subgroup) -> Vec<usize> {
        let mut covered = FixedBitSet::with_capacity(c.len());
        let mut reps = Vec::new();
        for x in over.set.ones() {
            if covered.contains(x) {
                continue;
            }
            reps.push(x);
            for h in self.set.ones() {
                covered.insert(c.mul(h, x));
            }
        }
        reps
    }
}

/// `[A, B]`: generated by commutators of generators, normally closed in `⟨A, B⟩`.
pub fn commutator(c: &Cayley, a: &Subgroup, b: &Subgroup) -> Subgroup {
    let mut comms = Vec::new();
    for &x in &a.gens {
        for &y in &b.gens {
            let z = c.comm(x, y);
            if z != 0 {
                comms.push(z);
            }
        }
    }
    let mut by = a.gens.clone();
    by.extend_from_slice(&b.gens);
    Subgroup::trivial(c).normal_closure(c, &by, &comms)
}

/// Compares two subgroups of the same order by their sorted element lists.
pub fn fingerprint_cmp(a: &Subgroup, b: &Subgroup) -> Ordering {
    let mut sym = a.set.clone();
    sym.symmetric_difference_with(&b.set);
    match sym.minimum() {
        None => Ordering::Equal,
        Some(x) if a.set.contains(x) => Ordering::Less,
        Some(_) => Ordering::Greater,
    }
}

/// Deterministic choice order: smaller order first, then lexicographically least element list.
pub fn choice_cmp(a: &Subgroup, b: &Subgroup) -> Ordering {
    a.order.cmp(&b.order).then_with(|| fingerprint_cmp(a, b))
}
