//! Sections `H/K` of a tabulated group, with `K` normal in `H`.
//!
//! Every subgroup of a section is represented by its full preimage in `H`,
//! so quotient computations never leave the ambient Cayley table.

use fixedbitset::FixedBitSet;

use crate::group::Cayley;
use crate::primes::{self, PrimeSet};
use crate::subgroup::{choice_cmp, commutator, Subgroup};

#[derive(Clone, Debug)]
pub struct Section<'a> {
    pub c: &'a Cayley,
    pub top: Subgroup,
    pub bottom: Subgroup,
}

impl<'a> Section<'a> {
    pub fn new(c: &'a Cayley, top: Subgroup, bottom: Subgroup) -> Self {
        debug_assert!(bottom.is_subgroup_of(&top));
        debug_assert!(bottom.is_normal_in(c, &top));
        Section { c, top, bottom }
    }

    /// The subgroup `top` itself, as `top/1`.
    pub fn of_subgroup(c: &'a Cayley, top: Subgroup) -> Self {
        Section {
            c,
            bottom: Subgroup::trivial(c),
            top,
        }
    }

    pub fn whole(c: &'a Cayley) -> Self {
        Section::of_subgroup(c, Subgroup::whole(c))
    }

    pub fn order(&self) -> u64 {
        (self.top.order() / self.bottom.order()) as u64
    }

    pub fn is_trivial(&self) -> bool {
        self.top.order() == self.bottom.order()
    }

    pub fn primes(&self) -> Vec<u64> {
        primes::prime_divisors(self.order())
    }

    /// The section `top/lower` for a normal subgroup `lower` of `top` containing `bottom`.
    pub fn above(&self, lower: Subgroup) -> Section<'a> {
        Section::new(self.c, self.top.clone(), lower)
    }

    /// The section `upper/bottom`.
    pub fn below(&self, upper: Subgroup) -> Section<'a> {
        Section::new(self.c, upper, self.bottom.clone())
    }

    /// Order of the coset `x K`.
    pub fn coset_order(&self, x: usize) -> u64 {
        let mut y = x;
        let mut k = 1;
        while !self.bottom.contains(y) {
            y = self.c.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn is_pi_group(&self, pi: &PrimeSet) -> bool {
        pi.contains_all(self.order())
    }

    pub fn is_p_group(&self, p: u64) -> bool {
        primes::is_power_of(self.order(), p)
    }

    /// Normal closure in `top` of `bottom` together with `extra`.
    pub fn normal_closure(&self, extra: &[usize]) -> Subgroup {
        self.bottom.normal_closure(self.c, self.top.gens(), extra)
    }

    pub fn is_abelian(&self) -> bool {
        let g = self.top.gens();
        g.iter()
            .enumerate()
            .all(|(i, &a)| g[i + 1..].iter().all(|&b| self.bottom.contains(self.c.comm(a, b))))
    }

    /// Preimage of the derived subgroup: `[H, H] K`.
    pub fn derived(&self) -> Subgroup {
        let comm = commutator(self.c, &self.top, &self.top);
        comm.join(self.c, &self.bottom)
    }

    pub fn is_soluble(&self) -> bool {
        let mut x = self.top.clone();
        while x.order() > self.bottom.order() {
            let d = Section::new(self.c, x.clone(), self.bottom.clone()).derived();
            if d.order() == x.order() {
                return false;
            }
            x = d;
        }
        true
    }

    pub fn is_nilpotent(&self) -> bool {
        let n = self.order();
        let k = self.bottom.order() as u64;
        for p in primes::prime_divisors(n) {
            let count = self
                .top
                .elements()
                .filter(|&x| primes::is_power_of(self.coset_order(x), p))
                .count() as u64;
            if count / k != primes::p_part(n, p) {
                return false;
            }
        }
        true
    }

    /// Conjugacy-class representatives of `top` acting on itself, marking
    /// conjugates and generators of the same cyclic subgroup as one.
    fn class_reps(&self, filter: impl Fn(usize) -> bool) -> Vec<usize> {
        let c = self.c;
        let mut done = FixedBitSet::with_capacity(c.len());
        let mut reps = Vec::new();
        for x in self.top.elements() {
            if done.contains(x) || !filter(x) {
                continue;
            }
            reps.push(x);
            let ord = c.elem_order(x) as u64;
            let mut orbit = vec![x];
            done.insert(x);
            let mut head = 0;
            while head < orbit.len() {
                let y = orbit[head];
                head += 1;
                for &t in self.top.gens() {
                    let z = c.conj(y, t);
                    if !done.put(z) {
                        orbit.push(z);
                    }
                }
            }
            for y in orbit {
                for e in 2..ord {
                    if primes::gcd(e, ord) == 1 {
                        done.insert(c.pow(y, e));
                    }
                }
            }
        }
        reps
    }

    /// Preimage of `O_π(H/K)`, the largest normal π-subgroup.
    pub fn o_pi(&self, pi: &PrimeSet) -> Subgroup {
        let n = self.order();
        let limit = self.bottom.order() * pi.part_of(n) as usize;
        let reps = self.class_reps(|x| !self.bottom.contains(x) && pi.contains_all(self.coset_order(x)));
        let mut acc = self.bottom.clone();
        for x in reps {
            if acc.contains(x) {
                continue;
            }
            if let Some(h) = acc.normal_closure_bounded(self.c, self.top.gens(), &[x], limit) {
                if pi.contains_all((h.order() / self.bottom.order()) as u64) {
                    acc = h;
                }
            }
        }
        acc
    }

    pub fn o_p(&self, p: u64) -> Subgroup {
        self.o_pi(&PrimeSet::single(p))
    }

    /// Preimage of `O^π(H/K)`, generated by the π'-elements.
    pub fn o_pi_up(&self, pi: &PrimeSet) -> Subgroup {
        let gens: Vec<usize> = self
            .top
            .elements()
            .filter(|&x| {
                let o = self.coset_order(x);
                o > 1 && pi.disjoint_from(o)
            })
            .collect();
        self.normal_closure(&gens)
    }

    /// Preimage of the Fitting subgroup: product of the `O_p`.
    pub fn fitting(&self) -> Subgroup {
        let mut f = self.bottom.clone();
        for p in self.primes() {
            f = f.join(self.c, &self.o_p(p));
        }
        f
    }

    /// Length of the Fitting series, or `None` when insoluble.
    pub fn nilpotent_length(&self) -> Option<usize> {
        let mut lower = self.bottom.clone();
        let mut len = 0;
        while lower.order() < self.top.order() {
            let f = self.above(lower.clone()).fitting();
            if f.order() == lower.order() {
                return None;
            }
            lower = f;
            len += 1;
        }
        Some(len)
    }

    /// Preimages `M` of all minimal normal subgroups `M/K` of `H/K`.
    pub fn minimal_normal(&self) -> Vec<Subgroup> {
        let reps = self.class_reps(|x| !self.bottom.contains(x) && primes::is_prime(self.coset_order(x)));
        let mut cands: Vec<Subgroup> = Vec::new();
        for x in reps {
            let h = self.normal_closure(&[x]);
            if !cands.contains(&h) {
                cands.push(h);
            }
        }
        let minimal: Vec<Subgroup> = cands
            .iter()
            .filter(|m| !cands.iter().any(|o| o.is_proper_subgroup_of(m)))
            .cloned()
            .collect();
        let mut minimal = minimal;
        minimal.sort_by(choice_cmp);
        minimal
    }

    /// Minimal normal subgroup chosen by (order, element list).
    pub fn first_minimal_normal(&self) -> Option<Subgroup> {
        let reps = self.class_reps(|x| !self.bottom.contains(x) && primes::is_prime(self.coset_order(x)));
        reps.into_iter().map(|x| self.normal_closure(&[x])).min_by(choice_cmp)
    }

    /// Chief series of `H/K` as preimages, from `K` up to `H`.
    pub fn chief_series(&self) -> Vec<Subgroup> {
        let mut series = vec![self.bottom.clone()];
        let mut cur = self.bottom.clone();
        while cur.order() < self.top.order() {
            let next = self
                .above(cur.clone())
                .first_minimal_normal()
                .expect("nontrivial section has a minimal normal subgroup");
            series.push(next.clone());
            cur = next;
        }
        series
    }

    pub fn is_supersoluble(&self) -> bool {
        let series = self.chief_series();
        series
            .windows(2)
            .all(|w| primes::is_prime((w[1].order() / w[0].order()) as u64))
    }

    /// Exponent of `H/K` divides `e`.
    pub fn exponent_divides(&self, e: u64) -> bool {
        self.top.elements().all(|x| e.is_multiple_of(self.coset_order(x)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::parse_group;

    #[test]
    fn s4_radicals() {
        let g = parse_group("S4").unwrap();
        let c = g.cayley().unwrap();
        let s = Section::whole(c);
        assert_eq!(s.o_p(2).order(), 4);
        assert_eq!(s.o_p(3).order(), 1);
        assert_eq!(s.fitting().order(), 4);
        assert_eq!(s.nilpotent_length(), Some(3));
        assert_eq!(s.derived().order(), 12);
        assert!(s.is_soluble());
        assert!(!s.is_supersoluble());
        assert_eq!(s.o_pi_up(&PrimeSet::from_slice(&[3])).order(), 24);
        assert_eq!(s.o_pi_up(&PrimeSet::from_slice(&[2])).order(), 12);
    }

    #[test]
    fn chief_series_of_q8() {
        let g = parse_group("Q8").unwrap();
        let c = g.cayley().unwrap();
        let orders: Vec<usize> = Section::whole(c).chief_series().iter().map(|h| h.order()).collect();
        assert_eq!(orders, vec![1, 2, 4, 8]);
    }

    #[test]
    fn a5_is_simple_and_insoluble() {
        let g = parse_group("A5").unwrap();
        let c = g.cayley().unwrap();
        let s = Section::whole(c);
        assert!(!s.is_soluble());
        assert_eq!(s.nilpotent_length(), None);
        let mins = s.minimal_normal();
        assert_eq!(mins.len(), 1);
        assert_eq!(mins[0].order(), 60);
    }
}
