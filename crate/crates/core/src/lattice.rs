//! Subgroup lattices and the subgroup-level operators built on them.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{FlabError, Result};
use crate::group::{Cayley, Group};
use crate::primes::{self, PrimeSet};
use crate::section::Section;
use crate::subgroup::{choice_cmp, commutator, Subgroup};

pub const DEFAULT_LATTICE_BUDGET: usize = 50_000;

/// All subgroups of a group, sorted by (order, element list).
///
/// Index 0 is the trivial subgroup and the last index is the whole group.
pub struct SubgroupLattice {
    group: Arc<Group>,
    subgroups: Vec<Subgroup>,
    index: HashMap<FixedBitSet, usize>,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
    /// `below[i]` holds every `j` with `S_j <= S_i`.
    below: Vec<FixedBitSet>,
    maximal: Vec<Vec<usize>>,
}

impl SubgroupLattice {
    pub fn build(group: Arc<Group>) -> Result<SubgroupLattice> {
        Self::build_with_budget(group, DEFAULT_LATTICE_BUDGET)
    }

    /// Breadth-first closure: start from the cyclic subgroups and join class
    /// representatives with cyclic subgroups until nothing new appears.
    pub fn build_with_budget(group: Arc<Group>, budget: usize) -> Result<SubgroupLattice> {
        let c = group.cayley()?;
        let n = c.len();
        let whole = Subgroup::whole(c);

        let mut found: Vec<Subgroup> = Vec::new();
        let mut index: HashMap<FixedBitSet, usize> = HashMap::new();
        let mut raw_classes: Vec<Vec<usize>> = Vec::new();
        let mut queue: VecDeque<usize> = VecDeque::new();

        let mut add_class = |h: Subgroup,
                             found: &mut Vec<Subgroup>,
                             index: &mut HashMap<FixedBitSet, usize>,
                             queue: &mut VecDeque<usize>|
         -> Result<()> {
            let start = found.len();
            index.insert(h.set().clone(), start);
            found.push(h);
            let mut head = start;
            while head < found.len() {
                for &t in c.gens() {
                    let conj = found[head].conjugate(c, t);
                    if !index.contains_key(conj.set()) {
                        index.insert(conj.set().clone(), found.len());
                        found.push(conj);
                    }
                }
                head += 1;
                if found.len() > budget {
                    return Err(FlabError::LatticeBudget { budget });
                }
            }
            raw_classes.push((start..found.len()).collect());
            queue.push_back(start);
            Ok(())
        };

        let mut cyclic: Vec<Subgroup> = Vec::new();
        let mut marked = FixedBitSet::with_capacity(n);
        for x in 0..n {
            if marked.contains(x) {
                continue;
            }
            let h = Subgroup::generated(c, &[x]);
            let ord = c.elem_order(x) as u64;
            for e in 1..=ord {
                if primes::gcd(e, ord) == 1 {
                    marked.insert(c.pow(x, e));
                }
            }
            cyclic.push(h);
        }
        for h in &cyclic {
            if !index.contains_key(h.set()) {
                add_class(h.clone(), &mut found, &mut index, &mut queue)?;
            }
        }
        while let Some(rep) = queue.pop_front() {
            let r = found[rep].clone();
            if r.order() == whole.order() {
                continue;
            }
            for cy in &cyclic {
                if cy.is_subgroup_of(&r) {
                    continue;
                }
                let j = r.join(c, cy);
                if !index.contains_key(j.set()) {
                    add_class(j, &mut found, &mut index, &mut queue)?;
                }
            }
        }

        // Sort deterministically and remap the conjugacy classes.
        let mut order: Vec<usize> = (0..found.len()).collect();
        order.sort_by(|&a, &b| choice_cmp(&found[a], &found[b]));
        let mut new_pos = vec![0usize; found.len()];
        for (pos, &old) in order.iter().enumerate() {
            new_pos[old] = pos;
        }
        let subgroups: Vec<Subgroup> = order.iter().map(|&old| found[old].clone()).collect();
        let index: HashMap<FixedBitSet, usize> = subgroups
            .iter()
            .enumerate()
            .map(|(i, h)| (h.set().clone(), i))
            .collect();
        let mut classes: Vec<Vec<usize>> = raw_classes
            .into_iter()
            .map(|cl| {
                let mut v: Vec<usize> = cl.into_iter().map(|o| new_pos[o]).collect();
                v.sort_unstable();
                v
            })
            .collect();
        classes.sort_by_key(|cl| cl[0]);
        let mut class_of = vec![0usize; subgroups.len()];
        for (k, cl) in classes.iter().enumerate() {
            for &i in cl {
                class_of[i] = k;
            }
        }

        let m = subgroups.len();
        let mut below = vec![FixedBitSet::with_capacity(m); m];
        for i in 0..m {
            let oi = subgroups[i].order();
            for j in 0..=i {
                let oj = subgroups[j].order();
                if oi.is_multiple_of(oj) && subgroups[j].set().is_subset(subgroups[i].set()) {
                    below[i].insert(j);
                }
            }
        }
        let mut maximal = vec![Vec::new(); m];
        for i in 0..m {
            let mut acc: Vec<usize> = Vec::new();
            for j in below[i].ones().collect::<Vec<_>>().into_iter().rev() {
                if j == i {
                    continue;
                }
                if !acc.iter().any(|&a| below[a].contains(j)) {
                    acc.push(j);
                }
            }
            acc.sort_unstable();
            maximal[i] = acc;
        }

        Ok(SubgroupLattice {
            group,
            subgroups,
            index,
            class_of,
            classes,
            below,
            maximal,
        })
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn cayley(&self) -> &Cayley {
        self.group.cayley().expect("lattice groups are tabulated")
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn get(&self, i: usize) -> &Subgroup {
        &self.subgroups[i]
    }

    pub fn top(&self) -> usize {
        self.subgroups.len() - 1
    }

    pub fn index_of(&self, h: &Subgroup) -> Option<usize> {
        self.index.get(h.set()).copied()
    }

    pub fn index_of_set(&self, set: &FixedBitSet) -> Option<usize> {
        self.index.get(set).copied()
    }

    /// Lattice index of a subgroup that is known to exist.
    pub fn idx(&self, h: &Subgroup) -> usize {
        self.index_of(h).expect("subgroup is in the lattice")
    }

    pub fn conjugacy_classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    /// `S_j <= S_i`.
    pub fn is_below(&self, j: usize, i: usize) -> bool {
        self.below[i].contains(j)
    }

    /// Every lattice index below `i`, including `i`.
    pub fn subgroups_of(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.below[i].ones()
    }

    /// Every lattice index above `i`, including `i`.
    pub fn overgroups_of(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (i..self.subgroups.len()).filter(move |&k| self.below[k].contains(i))
    }

    /// Maximal subgroups of `S_i`.
    pub fn maximal_in(&self, i: usize) -> &[usize] {
        &self.maximal[i]
    }

    pub fn maximal_subgroups(&self) -> Vec<Subgroup> {
        self.maximal[self.top()]
            .iter()
            .map(|&i| self.subgroups[i].clone())
            .collect()
    }

    pub fn is_normal(&self, i: usize) -> bool {
        self.classes[self.class_of[i]].len() == 1
    }

    pub fn normal_subgroups(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.is_normal(i)).collect()
    }

    /// Subgroup counts keyed by order.
    pub fn counts_by_order(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for h in &self.subgroups {
            *out.entry(h.order()).or_insert(0) += 1;
        }
        out
    }

    /// Conjugacy-class counts keyed by order.
    pub fn class_counts_by_order(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for cl in &self.classes {
            *out.entry(self.subgroups[cl[0]].order()).or_insert(0) += 1;
        }
        out
    }

    pub fn is_cyclic(&self, i: usize) -> bool {
        let c = self.cayley();
        let h = &self.subgroups[i];
        h.elements().any(|x| c.elem_order(x) as usize == h.order())
    }

    /// Sylow `p`-subgroups; `{1}` when `p` does not divide the order.
    pub fn sylow_subgroups(&self, p: u64) -> Vec<usize> {
        let target = primes::p_part(self.group.order(), p) as usize;
        (0..self.len())
            .filter(|&i| self.subgroups[i].order() == target)
            .collect()
    }

    /// Sylow subgroups for every prime dividing the order, plus the trivial subgroup.
    pub fn all_sylow_subgroups(&self) -> Vec<usize> {
        let mut out = vec![0usize];
        for p in primes::prime_divisors(self.group.order()) {
            out.extend(self.sylow_subgroups(p));
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Cyclic subgroups of prime-power order, including the trivial subgroup.
    pub fn cyclic_primary_subgroups(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| {
                let o = self.subgroups[i].order() as u64;
                (o == 1 || primes::prime_power_base(o).is_some()) && self.is_cyclic(i)
            })
            .collect()
    }

    /// Frattini subgroup: intersection of the maximal subgroups (`G` when there are none).
    pub fn frattini(&self) -> Subgroup {
        let c = self.cayley();
        let mut acc = Subgroup::whole(c);
        for &m in self.maximal_in(self.top()) {
            acc = acc.intersection(c, &self.subgroups[m]);
        }
        acc
    }
}

pub fn all_subgroups(group: Arc<Group>) -> Result<SubgroupLattice> {
    SubgroupLattice::build(group)
}

fn check_sub(c: &Cayley, h: &Subgroup) -> Result<()> {
    if h.set().len() != c.len() || !h.contains(0) {
        return Err(FlabError::Precondition("subgroup does not belong to this group".into()));
    }
    Ok(())
}

/// `N_G(H)`.
pub fn normalizer(c: &Cayley, h: &Subgroup) -> Result<Subgroup> {
    check_sub(c, h)?;
    Ok(h.normalizer_in(c, &Subgroup::whole(c)))
}

/// `C_G(H)`.
pub fn centralizer(c: &Cayley, h: &Subgroup) -> Result<Subgroup> {
    check_sub(c, h)?;
    Ok(h.centralizer_in(c, &Subgroup::whole(c)))
}

/// `C_G(H/K) = { g : [g, h] in K for all h in H }` for `K`, `H` normal in `G`.
pub fn centralizer_of_factor(c: &Cayley, upper: &Subgroup, lower: &Subgroup) -> Result<Subgroup> {
    check_sub(c, upper)?;
    check_sub(c, lower)?;
    let whole = Subgroup::whole(c);
    if !lower.is_subgroup_of(upper) || !upper.is_normal_in(c, &whole) || !lower.is_normal_in(c, &whole) {
        return Err(FlabError::Precondition(
            "factor centralizer needs K <= H with both normal in G".into(),
        ));
    }
    Ok(factor_centralizer_in(c, &whole, upper, lower))
}

/// Elements of `within` centralizing `upper/lower`.
pub fn factor_centralizer_in(c: &Cayley, within: &Subgroup, upper: &Subgroup, lower: &Subgroup) -> Subgroup {
    let mut set = FixedBitSet::with_capacity(c.len());
    for g in within.elements() {
        if upper.gens().iter().all(|&h| lower.contains(c.comm(g, h))) {
            set.insert(g);
        }
    }
    Subgroup::from_set(c, set)
}

/// `Core_G(H)`.
pub fn core(c: &Cayley, h: &Subgroup) -> Result<Subgroup> {
    check_sub(c, h)?;
    Ok(h.core_in(c, &Subgroup::whole(c)))
}

/// `[A, B]`.
pub fn commutator_subgroup(c: &Cayley, a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
    check_sub(c, a)?;
    check_sub(c, b)?;
    Ok(commutator(c, a, b))
}

/// `O_π(G)`.
pub fn o_pi(c: &Cayley, pi: &PrimeSet) -> Subgroup {
    Section::whole(c).o_pi(pi)
}

/// `O^π(G)`.
pub fn o_pi_up(c: &Cayley, pi: &PrimeSet) -> Subgroup {
    Section::whole(c).o_pi_up(pi)
}

/// `O_{p',p}(G)`: preimage of `O_p(G/O_{p'}(G))`.
pub fn o_pp(c: &Cayley, p: u64) -> Subgroup {
    let whole = Section::whole(c);
    let lower = whole.o_pi(&PrimeSet::single(p).complement());
    whole.above(lower).o_p(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::parse_group;

    fn lattice(spec: &str) -> SubgroupLattice {
        SubgroupLattice::build(Arc::new(parse_group(spec).unwrap())).unwrap()
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(lattice("S3").len(), 6);
        assert_eq!(lattice("C7").len(), 2);
        assert_eq!(lattice("S4").len(), 30);
        assert_eq!(lattice("Q8").len(), 6);
        assert_eq!(lattice("A5").len(), 59);
        assert_eq!(lattice("E(2^4)").len(), 67);
        assert_eq!(lattice("C1").len(), 1);
    }

    #[test]
    fn s4_maximals() {
        let l = lattice("S4");
        let orders: Vec<usize> = l.maximal_subgroups().iter().map(|h| h.order()).collect();
        let mut counts = BTreeMap::new();
        for o in orders {
            *counts.entry(o).or_insert(0) += 1;
        }
        assert_eq!(counts, BTreeMap::from([(6, 4), (8, 3), (12, 1)]));
        assert!(l.frattini().is_trivial());
    }

    #[test]
    fn q8_maximals_and_frattini() {
        let l = lattice("Q8");
        let max = l.maximal_subgroups();
        assert_eq!(max.len(), 3);
        assert!(max.iter().all(|h| h.order() == 4));
        assert_eq!(l.frattini().order(), 2);
        assert_eq!(l.cyclic_primary_subgroups().len(), 5);
    }

    #[test]
    fn c6_cyclic_primary() {
        let l = lattice("C6");
        let orders: Vec<usize> = l.cyclic_primary_subgroups().iter().map(|&i| l.get(i).order()).collect();
        assert_eq!(orders, vec![1, 2, 3]);
        assert_eq!(lattice("C4").frattini().order(), 2);
    }

    #[test]
    fn sylow_conventions() {
        let l = lattice("S4");
        assert_eq!(l.sylow_subgroups(2).len(), 3);
        assert_eq!(l.sylow_subgroups(3).len(), 4);
        let s3 = lattice("S3");
        let five = s3.sylow_subgroups(5);
        assert_eq!(five, vec![0]);
        assert!(s3.get(five[0]).is_trivial());
        let q = lattice("Q8");
        assert_eq!(q.sylow_subgroups(2), vec![q.top()]);
    }

    #[test]
    fn radicals_of_s4() {
        let g = parse_group("S4").unwrap();
        let c = g.cayley().unwrap();
        assert_eq!(o_pi(c, &PrimeSet::single(2)).order(), 4);
        assert_eq!(o_pi_up(c, &PrimeSet::single(2).complement()).order(), 24);
        assert_eq!(o_pp(c, 3).order(), 12);
        let whole = Subgroup::whole(c);
        assert_eq!(commutator_subgroup(c, &whole, &whole).unwrap().order(), 12);
    }
}
