//! Normal structure: normal and minimal normal subgroups, chief series,
//! upper central, derived and Fitting series.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{FlabError, Result};
use crate::group::Cayley;
use crate::lattice::{factor_centralizer_in, SubgroupLattice};
use crate::primes;
use crate::section::Section;
use crate::subgroup::{commutator, Subgroup};

/// `upper/lower`, both normal in the ambient group, with nothing normal strictly between.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiefFactor {
    pub lower: Subgroup,
    pub upper: Subgroup,
}

impl ChiefFactor {
    pub fn order(&self) -> u64 {
        (self.upper.order() / self.lower.order()) as u64
    }

    pub fn primes(&self) -> Vec<u64> {
        primes::prime_divisors(self.order())
    }

    pub fn is_abelian(&self, c: &Cayley) -> bool {
        Section::new(c, self.upper.clone(), self.lower.clone()).is_abelian()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiefSeries {
    /// `1 = N_0 < N_1 < ... < N_k = G`.
    pub terms: Vec<Subgroup>,
}

impl ChiefSeries {
    pub fn factors(&self) -> Vec<ChiefFactor> {
        self.terms
            .windows(2)
            .map(|w| ChiefFactor {
                lower: w[0].clone(),
                upper: w[1].clone(),
            })
            .collect()
    }

    pub fn factor_orders(&self) -> Vec<u64> {
        self.factors().iter().map(ChiefFactor::order).collect()
    }
}

/// Normal subgroups, in lattice order.
pub fn normal_subgroups(lattice: &SubgroupLattice) -> Vec<Subgroup> {
    lattice
        .normal_subgroups()
        .into_iter()
        .map(|i| lattice.get(i).clone())
        .collect()
}

pub fn minimal_normal_subgroups(c: &Cayley) -> Result<Vec<Subgroup>> {
    if c.len() == 1 {
        return Err(FlabError::Precondition(
            "the trivial group has no minimal normal subgroups".into(),
        ));
    }
    Ok(Section::whole(c).minimal_normal())
}

/// Every chief factor `H/K` of the group, over all normal `K`.
pub fn all_chief_factors(lattice: &SubgroupLattice) -> Vec<ChiefFactor> {
    let whole = Section::whole(lattice.cayley());
    let mut out = Vec::new();
    for lower in normal_subgroups(lattice) {
        for upper in whole.above(lower.clone()).minimal_normal() {
            out.push(ChiefFactor {
                lower: lower.clone(),
                upper,
            });
        }
    }
    out
}

/// Checks that `upper/lower` is a chief factor of the whole group: every
/// element of `upper` outside `lower` generates all of `upper` modulo `lower`
/// as a normal subgroup.
pub fn verify_chief_factor(c: &Cayley, f: &ChiefFactor) -> Result<()> {
    let whole = Subgroup::whole(c);
    if !f.lower.is_proper_subgroup_of(&f.upper) || !f.lower.is_normal_in(c, &whole) || !f.upper.is_normal_in(c, &whole)
    {
        return Err(FlabError::Internal(format!(
            "{}/{} is not a normal section",
            f.upper.order(),
            f.lower.order()
        )));
    }
    let sec = Section::new(c, whole, f.lower.clone());
    for x in f.upper.elements() {
        if f.lower.contains(x) {
            continue;
        }
        if sec.normal_closure(&[x]).order() != f.upper.order() {
            return Err(FlabError::Internal(format!(
                "factor of order {} is not a chief factor",
                f.order()
            )));
        }
    }
    if sec.below(f.upper.clone()).is_soluble() {
        let p = primes::prime_power_base(f.order());
        let elementary =
            p.is_some_and(|p| Section::new(c, f.upper.clone(), f.lower.clone()).exponent_divides(p)) && f.is_abelian(c);
        if !elementary {
            return Err(FlabError::Internal(format!(
                "soluble chief factor of order {} is not elementary abelian",
                f.order()
            )));
        }
    }
    Ok(())
}

/// Chief series built bottom-up with the deterministic minimal-normal choice rule.
pub fn chief_series(c: &Cayley) -> Result<ChiefSeries> {
    let series = ChiefSeries {
        terms: Section::whole(c).chief_series(),
    };
    for f in series.factors() {
        verify_chief_factor(c, &f)?;
    }
    Ok(series)
}

/// Chief series choosing a uniformly random minimal normal subgroup at each step.
pub fn random_chief_series(c: &Cayley, seed: u64) -> ChiefSeries {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let whole = Section::whole(c);
    let mut terms = vec![Subgroup::trivial(c)];
    let mut cur = terms[0].clone();
    while cur.order() < c.len() {
        let mins = whole.above(cur.clone()).minimal_normal();
        cur = mins.choose(&mut rng).expect("nontrivial quotient").clone();
        terms.push(cur.clone());
    }
    ChiefSeries { terms }
}

/// `1 = Z_0 <= Z_1 <= ...` up to the first repeated term (the hypercenter).
pub fn upper_central_series(c: &Cayley) -> Vec<Subgroup> {
    let whole = Subgroup::whole(c);
    let mut series = vec![Subgroup::trivial(c)];
    loop {
        let last = series.last().expect("nonempty");
        let next = factor_centralizer_in(c, &whole, &whole, last);
        if next.order() == last.order() {
            return series;
        }
        series.push(next);
    }
}

/// `G = G^(0) >= G' >= ...` until the series stabilizes.
pub fn derived_series(c: &Cayley) -> Vec<Subgroup> {
    let mut series = vec![Subgroup::whole(c)];
    loop {
        let last = series.last().expect("nonempty");
        let next = commutator(c, last, last);
        if next.order() == last.order() {
            return series;
        }
        series.push(next);
    }
}

pub fn is_soluble(c: &Cayley) -> bool {
    derived_series(c).last().is_some_and(Subgroup::is_trivial)
}

/// `1 = F_0 < F_1 < ... < F_k = G` with `F_{i+1}/F_i` the Fitting subgroup of `G/F_i`.
pub fn fitting_series(c: &Cayley) -> Result<Vec<Subgroup>> {
    let whole = Section::whole(c);
    let mut series = vec![Subgroup::trivial(c)];
    loop {
        let last = series.last().expect("nonempty").clone();
        if last.order() == c.len() {
            return Ok(series);
        }
        let f = whole.above(last.clone()).fitting();
        if f.order() == last.order() {
            return Err(FlabError::NotSoluble(format!(
                "Fitting series stalls at order {}",
                last.order()
            )));
        }
        series.push(f);
    }
}

pub fn nilpotent_length(c: &Cayley) -> Result<usize> {
    Ok(fitting_series(c)?.len() - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::parse_group;
    use std::sync::Arc;

    fn orders(v: &[Subgroup]) -> Vec<usize> {
        v.iter().map(Subgroup::order).collect()
    }

    #[test]
    fn normal_subgroups_of_small_groups() {
        let g = Arc::new(parse_group("S4").unwrap());
        let l = SubgroupLattice::build(g).unwrap();
        assert_eq!(orders(&normal_subgroups(&l)), vec![1, 4, 12, 24]);
        let a5 = Arc::new(parse_group("A5").unwrap());
        let l = SubgroupLattice::build(a5).unwrap();
        assert_eq!(orders(&normal_subgroups(&l)), vec![1, 60]);
        let ab = Arc::new(parse_group("C2 x C6").unwrap());
        let l = SubgroupLattice::build(ab).unwrap();
        assert_eq!(normal_subgroups(&l).len(), l.len());
    }

    #[test]
    fn minimal_normals() {
        let g = parse_group("E(2^2)").unwrap();
        assert_eq!(minimal_normal_subgroups(g.cayley().unwrap()).unwrap().len(), 3);
        let g = parse_group("S4").unwrap();
        assert_eq!(orders(&minimal_normal_subgroups(g.cayley().unwrap()).unwrap()), vec![4]);
        let g = parse_group("A5").unwrap();
        assert_eq!(
            orders(&minimal_normal_subgroups(g.cayley().unwrap()).unwrap()),
            vec![60]
        );
        let g = parse_group("C1").unwrap();
        assert!(minimal_normal_subgroups(g.cayley().unwrap()).is_err());
    }

    #[test]
    fn chief_series_examples() {
        let g = parse_group("S4").unwrap();
        assert_eq!(
            orders(&chief_series(g.cayley().unwrap()).unwrap().terms),
            vec![1, 4, 12, 24]
        );
        let g = parse_group("Q8").unwrap();
        let s = chief_series(g.cayley().unwrap()).unwrap();
        assert_eq!(s.factor_orders(), vec![2, 2, 2]);
        let g = parse_group("C7").unwrap();
        assert_eq!(chief_series(g.cayley().unwrap()).unwrap().factor_orders(), vec![7]);
        let g = parse_group("A5 x C2").unwrap();
        let mut f = chief_series(g.cayley().unwrap()).unwrap().factor_orders();
        f.sort_unstable();
        assert_eq!(f, vec![2, 60]);
    }

    #[test]
    fn upper_central_and_nilpotent_length() {
        let g = parse_group("S3").unwrap();
        assert_eq!(orders(&upper_central_series(g.cayley().unwrap())), vec![1]);
        let g = parse_group("Q8").unwrap();
        assert_eq!(orders(&upper_central_series(g.cayley().unwrap())), vec![1, 2, 8]);
        let g = parse_group("C6").unwrap();
        assert_eq!(orders(&upper_central_series(g.cayley().unwrap())), vec![1, 6]);
        assert_eq!(nilpotent_length(g.cayley().unwrap()).unwrap(), 1);
        let g = parse_group("S3").unwrap();
        assert_eq!(nilpotent_length(g.cayley().unwrap()).unwrap(), 2);
        let g = parse_group("S4").unwrap();
        assert_eq!(nilpotent_length(g.cayley().unwrap()).unwrap(), 3);
        let g = parse_group("C1").unwrap();
        assert_eq!(nilpotent_length(g.cayley().unwrap()).unwrap(), 0);
        let g = parse_group("A5").unwrap();
        assert!(matches!(
            nilpotent_length(g.cayley().unwrap()),
            Err(FlabError::NotSoluble(_))
        ));
        assert!(!is_soluble(g.cayley().unwrap()));
    }

    #[test]
    fn all_chief_factors_of_s4() {
        let l = SubgroupLattice::build(Arc::new(parse_group("S4").unwrap())).unwrap();
        let mut orders: Vec<u64> = all_chief_factors(&l).iter().map(ChiefFactor::order).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![2, 3, 4]);
        let l = SubgroupLattice::build(Arc::new(parse_group("E(2^2)").unwrap())).unwrap();
        assert_eq!(all_chief_factors(&l).len(), 6);
    }

    #[test]
    fn random_series_share_factor_multiset() {
        for spec in ["S4", "SL(2,3)", "D12 x C2", "sd(E(2^2),C3,[b,a*b]) x C3"] {
            let g = parse_group(spec).unwrap();
            let c = g.cayley().unwrap();
            let mut base = chief_series(c).unwrap().factor_orders();
            base.sort_unstable();
            for seed in 0..4 {
                let s = random_chief_series(c, seed);
                for f in s.factors() {
                    verify_chief_factor(c, &f).unwrap();
                }
                let mut o = s.factor_orders();
                o.sort_unstable();
                assert_eq!(o, base, "{spec}");
            }
        }
    }
}
