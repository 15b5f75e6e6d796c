//! Intersections of subgroup families: `Int_F`, `NI_F`, Sylow normalizers,
//! `Δ_F`, `F`-subnormality and subnormalizers, `SI_Σ^F`.
//!
//! All of these run inside an [`Analysis`], which owns the subgroup lattice
//! of one group and memoizes membership and subnormality per formation.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use fixedbitset::FixedBitSet;

use crate::error::{FlabError, Result};
use crate::formations::{FormationExpr, GroupClass};
use crate::group::{Caps, Cayley, Group};
use crate::hypercenter::{self, Method};
use crate::lattice::SubgroupLattice;
use crate::primes;
use crate::products;
use crate::section::Section;
use crate::subgroup::Subgroup;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SubgroupFunctor {
    /// Sylow subgroups for every prime, plus the trivial subgroup.
    Sylow,
    /// Cyclic subgroups of prime-power order, plus the trivial subgroup.
    CyclicPrimary,
    /// Maximal subgroups.
    Maximal,
    /// `F`-maximal subgroups.
    FMaximal(FormationExpr),
}

impl SubgroupFunctor {
    pub fn parse(text: &str) -> Result<SubgroupFunctor> {
        match text {
            "sylow" => Ok(SubgroupFunctor::Sylow),
            "cyclic" => Ok(SubgroupFunctor::CyclicPrimary),
            "maximal" => Ok(SubgroupFunctor::Maximal),
            _ => Err(FlabError::Usage(format!(
                "unknown subgroup functor `{text}` (expected sylow, cyclic or maximal)"
            ))),
        }
    }
}

impl fmt::Display for SubgroupFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubgroupFunctor::Sylow => f.write_str("sylow"),
            SubgroupFunctor::CyclicPrimary => f.write_str("cyclic"),
            SubgroupFunctor::Maximal => f.write_str("maximal"),
            SubgroupFunctor::FMaximal(form) => write!(f, "{form}-maximal"),
        }
    }
}

/// Containment-maximal subgroups in which `target` is `F`-subnormal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubnormalizerSet {
    pub target: usize,
    pub carriers: Vec<usize>,
}

#[derive(Default)]
struct FormMemo {
    member: HashMap<usize, bool>,
    /// `(t, m)`: `S_t / Core_{S_t}(S_m)` lies in `F`.
    step: HashMap<(usize, usize), bool>,
    /// `h` maps to the overgroups of `S_h` in which `S_h` is `F`-subnormal.
    subnormal: HashMap<usize, Arc<FixedBitSet>>,
    hypercenter: HashMap<Method, Subgroup>,
}

/// One group, its subgroup lattice, and per-formation memo tables.
pub struct Analysis {
    group: Arc<Group>,
    lattice: SubgroupLattice,
    caps: Caps,
    memo: Mutex<HashMap<FormationExpr, FormMemo>>,
}

impl Analysis {
    pub fn new(group: Arc<Group>) -> Result<Analysis> {
        let caps = group.caps();
        let lattice = SubgroupLattice::build(group.clone())?;
        Ok(Analysis {
            group,
            lattice,
            caps,
            memo: Mutex::new(HashMap::new()),
        })
    }

    pub fn from_group(group: Group) -> Result<Analysis> {
        Analysis::new(Arc::new(group))
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn lattice(&self) -> &SubgroupLattice {
        &self.lattice
    }

    pub fn cayley(&self) -> &Cayley {
        self.lattice.cayley()
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    pub fn whole(&self) -> Subgroup {
        self.lattice.get(self.lattice.top()).clone()
    }

    fn with_memo<T>(&self, f: &FormationExpr, body: impl FnOnce(&mut FormMemo) -> T) -> T {
        let mut memo = self.memo.lock().expect("memo lock");
        body(memo.entry(f.clone()).or_default())
    }

    /// Lattice index of a subgroup of this group.
    pub fn idx(&self, h: &Subgroup) -> usize {
        self.lattice.idx(h)
    }

    /// `S_i ∈ F`.
    pub fn is_member(&self, f: &FormationExpr, i: usize) -> bool {
        if let Some(v) = self.with_memo(f, |m| m.member.get(&i).copied()) {
            return v;
        }
        let v = f.member_section(&Section::of_subgroup(self.cayley(), self.lattice.get(i).clone()));
        self.with_memo(f, |m| m.member.insert(i, v));
        v
    }

    /// `S_t / Core_{S_t}(S_m) ∈ F`.
    pub fn step_ok(&self, f: &FormationExpr, t: usize, m: usize) -> bool {
        if let Some(v) = self.with_memo(f, |memo| memo.step.get(&(t, m)).copied()) {
            return v;
        }
        let c = self.cayley();
        let top = self.lattice.get(t);
        let core = self.lattice.get(m).core_in(c, top);
        let v = f.member_section(&Section::new(c, top.clone(), core));
        self.with_memo(f, |memo| memo.step.insert((t, m), v));
        v
    }

    /// Overgroups `T` of `S_h` such that `S_h` is `F`-subnormal in `T` along a maximal chain.
    pub fn subnormal_overgroups(&self, f: &FormationExpr, h: usize) -> Arc<FixedBitSet> {
        if let Some(v) = self.with_memo(f, |m| m.subnormal.get(&h).cloned()) {
            return v;
        }
        let l = &self.lattice;
        let mut set = FixedBitSet::with_capacity(l.len());
        set.insert(h);
        for t in l.overgroups_of(h) {
            if t == h {
                continue;
            }
            let ok = l
                .maximal_in(t)
                .iter()
                .any(|&m| set.contains(m) && self.step_ok(f, t, m));
            if ok {
                set.insert(t);
            }
        }
        let set = Arc::new(set);
        self.with_memo(f, |m| m.subnormal.insert(h, set.clone()));
        set
    }

    /// `S_h` is `F`-subnormal in `S_t` (maximal-chain definition).
    pub fn is_f_subnormal(&self, f: &FormationExpr, h: usize, t: usize) -> bool {
        self.lattice.is_below(h, t) && self.subnormal_overgroups(f, h).contains(t)
    }

    /// Variant allowing arbitrary (not necessarily maximal) chain steps.
    pub fn is_f_subnormal_plain(&self, f: &FormationExpr, h: usize, t: usize) -> bool {
        let l = &self.lattice;
        if !l.is_below(h, t) {
            return false;
        }
        let mut set = FixedBitSet::with_capacity(l.len());
        set.insert(h);
        for u in l.overgroups_of(h) {
            if u == h || !l.is_below(u, t) {
                continue;
            }
            let ok = l
                .subgroups_of(u)
                .any(|v| v != u && set.contains(v) && self.step_ok(f, u, v));
            if ok {
                set.insert(u);
            }
        }
        set.contains(t)
    }

    pub fn f_subnormalizers(&self, f: &FormationExpr, h: usize) -> SubnormalizerSet {
        let set = self.subnormal_overgroups(f, h);
        let l = &self.lattice;
        let carriers: Vec<usize> = set
            .ones()
            .filter(|&t| !set.ones().any(|u| u != t && l.is_below(t, u)))
            .collect();
        SubnormalizerSet { target: h, carriers }
    }

    pub fn functor_members(&self, sigma: &SubgroupFunctor) -> Vec<usize> {
        let l = &self.lattice;
        match sigma {
            SubgroupFunctor::Sylow => l.all_sylow_subgroups(),
            SubgroupFunctor::CyclicPrimary => l.cyclic_primary_subgroups(),
            SubgroupFunctor::Maximal => l.maximal_in(l.top()).to_vec(),
            SubgroupFunctor::FMaximal(f) => self.f_maximal_subgroups(f),
        }
    }

    fn intersect(&self, family: impl IntoIterator<Item = Subgroup>) -> Subgroup {
        let c = self.cayley();
        family.into_iter().fold(self.whole(), |acc, h| acc.intersection(c, &h))
    }

    /// Members of `F` not properly contained in another member.
    pub fn f_maximal_subgroups(&self, f: &FormationExpr) -> Vec<usize> {
        let l = &self.lattice;
        let members: Vec<usize> = (0..l.len()).filter(|&i| self.is_member(f, i)).collect();
        members
            .iter()
            .copied()
            .filter(|&i| !members.iter().any(|&j| j != i && l.is_below(i, j)))
            .collect()
    }

    /// `Int_F(G)`.
    pub fn int_f(&self, f: &FormationExpr) -> Subgroup {
        let fam = self.f_maximal_subgroups(f);
        self.intersect(fam.into_iter().map(|i| self.lattice.get(i).clone()))
    }

    /// `NI_F(G)`.
    pub fn ni_f(&self, f: &FormationExpr) -> Subgroup {
        let c = self.cayley();
        let whole = self.whole();
        let fam = self.f_maximal_subgroups(f);
        self.intersect(fam.into_iter().map(|i| self.lattice.get(i).normalizer_in(c, &whole)))
    }

    pub fn sylow_normalizer_intersection(&self) -> Subgroup {
        let c = self.cayley();
        let whole = self.whole();
        let fam = self.lattice.all_sylow_subgroups();
        self.intersect(fam.into_iter().map(|i| self.lattice.get(i).normalizer_in(c, &whole)))
    }

    /// `SI_Σ^F(G)`: intersection of every `F`-subnormalizer of every member of `Σ(G)`.
    pub fn si_sigma(&self, f: &FormationExpr, sigma: &SubgroupFunctor) -> Subgroup {
        let mut carriers: Vec<usize> = Vec::new();
        for h in self.functor_members(sigma) {
            carriers.extend(self.f_subnormalizers(f, h).carriers);
        }
        carriers.sort_unstable();
        carriers.dedup();
        self.intersect(carriers.into_iter().map(|i| self.lattice.get(i).clone()))
    }

    /// Maximal subgroups `M` with `G/Core_G(M) ∉ F`.
    pub fn f_abnormal_maximals(&self, f: &FormationExpr) -> Vec<usize> {
        let top = self.lattice.top();
        self.lattice
            .maximal_in(top)
            .iter()
            .copied()
            .filter(|&m| !self.step_ok(f, top, m))
            .collect()
    }

    /// `Δ_F(G)`.
    pub fn delta_f(&self, f: &FormationExpr) -> Subgroup {
        let fam = self.f_abnormal_maximals(f);
        self.intersect(fam.into_iter().map(|i| self.lattice.get(i).clone()))
    }

    pub fn frattini(&self) -> Subgroup {
        self.lattice.frattini()
    }

    pub fn residual(&self, f: &FormationExpr) -> Result<Subgroup> {
        f.residual(&self.lattice)
    }

    /// `Z_F(G)`, memoized per method.
    pub fn hypercenter(&self, f: &FormationExpr, method: Method) -> Result<Subgroup> {
        if let Some(z) = self.with_memo(f, |m| m.hypercenter.get(&method).cloned()) {
            return Ok(z);
        }
        let z = hypercenter::f_hypercenter(f, self.cayley(), method, self.caps)?;
        self.with_memo(f, |m| m.hypercenter.insert(method, z.clone()));
        Ok(z)
    }

    /// Every member of `Σ(G)` is `F`-subnormal in `G`.
    pub fn all_subnormal(&self, f: &FormationExpr, sigma: &SubgroupFunctor) -> bool {
        let top = self.lattice.top();
        self.functor_members(sigma)
            .into_iter()
            .all(|h| self.is_f_subnormal(f, h, top))
    }

    pub fn class_wf_vf_member(&self, f: &FormationExpr, mode: WvMode) -> bool {
        self.all_subnormal(f, &mode.functor())
    }

    /// `Z_X(G)` for the class `wF` or `vF`, via the oracle path.
    pub fn wv_hypercenter(&self, f: &FormationExpr, mode: WvMode) -> Result<Subgroup> {
        let class = WvClass {
            formation: f.clone(),
            mode,
            caps: self.caps,
        };
        hypercenter::class_hypercenter(&class, self.cayley(), self.caps)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WvMode {
    /// Sylow subgroups are `F`-subnormal.
    W,
    /// Cyclic primary subgroups are `F`-subnormal.
    V,
}

impl WvMode {
    pub fn functor(self) -> SubgroupFunctor {
        match self {
            WvMode::W => SubgroupFunctor::Sylow,
            WvMode::V => SubgroupFunctor::CyclicPrimary,
        }
    }
}

/// The class `wF` or `vF` as a membership predicate.
pub struct WvClass {
    pub formation: FormationExpr,
    pub mode: WvMode,
    pub caps: Caps,
}

impl GroupClass for WvClass {
    fn contains(&self, s: &Section) -> Result<bool> {
        let g = section_group(s, self.caps)?;
        let a = Analysis::from_group(g)?;
        Ok(a.class_wf_vf_member(&self.formation, self.mode))
    }

    fn label(&self) -> String {
        let m = match self.mode {
            WvMode::W => "w",
            WvMode::V => "v",
        };
        format!("{m}{}", self.formation)
    }
}

/// The section `H/K` as a group in its own right.
pub fn section_group(s: &Section, caps: Caps) -> Result<Group> {
    let c = s.c;
    let degree = c.perm(0).degree();
    let gens = s.top.gens().iter().map(|&x| c.perm(x).clone()).collect();
    let top = Group::new(degree, gens, caps)?;
    if s.bottom.is_trivial() {
        return Ok(top);
    }
    let ct = top.cayley()?;
    let mut set = FixedBitSet::with_capacity(ct.len());
    for x in s.bottom.elements() {
        let i = ct
            .index_of(c.perm(x))
            .ok_or_else(|| FlabError::Internal("section bottom outside top".into()))?;
        set.insert(i);
    }
    let bottom = Subgroup::from_set(ct, set);
    Ok(products::quotient(&top, &bottom)?.group)
}

/// A subgroup as a group in its own right, with the map from its element
/// indices back to the ambient ones.
pub fn subgroup_group(c: &Cayley, h: &Subgroup, caps: Caps) -> Result<(Group, Vec<usize>)> {
    let g = section_group(&Section::of_subgroup(c, h.clone()), caps)?;
    let back = g
        .cayley()?
        .perms()
        .iter()
        .map(|p| c.index_of(p).expect("subgroup element"))
        .collect();
    Ok((g, back))
}

/// `O^{π'}(H)` for `π = π(F)`.
pub fn o_pi_prime_up(c: &Cayley, h: &Subgroup, f: &FormationExpr) -> Subgroup {
    let pi = f.characteristic();
    Section::of_subgroup(c, h.clone()).o_pi_up(&pi.complement())
}

/// Primes dividing `n` that lie in `pi`.
pub fn relevant_primes(n: u64, f: &FormationExpr) -> Vec<u64> {
    let pi = f.characteristic();
    primes::prime_divisors(n)
        .into_iter()
        .filter(|&p| pi.contains(p))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::parse_group;

    fn an(spec: &str) -> Analysis {
        Analysis::from_group(parse_group(spec).unwrap()).unwrap()
    }

    fn f(s: &str) -> FormationExpr {
        FormationExpr::parse(s).unwrap()
    }

    fn orders(a: &Analysis, v: &[usize]) -> Vec<usize> {
        let mut o: Vec<usize> = v.iter().map(|&i| a.lattice().get(i).order()).collect();
        o.sort_unstable();
        o
    }

    #[test]
    fn f_maximal_examples() {
        let s3 = an("S3");
        assert_eq!(orders(&s3, &s3.f_maximal_subgroups(&f("N"))), vec![2, 2, 2, 3]);
        let s4 = an("S4");
        assert_eq!(orders(&s4, &s4.f_maximal_subgroups(&f("N"))), vec![3, 3, 3, 3, 8, 8, 8]);
        let q8 = an("Q8");
        assert_eq!(orders(&q8, &q8.f_maximal_subgroups(&f("N"))), vec![8]);
    }

    #[test]
    fn intersections_of_small_groups() {
        let n = f("N");
        let s4 = an("S4");
        assert_eq!(s4.int_f(&n).order(), 1);
        let sl = an("SL(2,3)");
        assert_eq!(sl.int_f(&n).order(), 2);
        assert_eq!(sl.ni_f(&n).order(), 2);
        assert_eq!(sl.sylow_normalizer_intersection().order(), 2);
        let s3 = an("S3");
        assert_eq!(s3.ni_f(&n).order(), 1);
        assert_eq!(s3.sylow_normalizer_intersection().order(), 1);
        assert_eq!(s3.delta_f(&n).order(), 1);
        let q8 = an("Q8");
        assert_eq!(q8.delta_f(&n).order(), 8);
        assert_eq!(q8.ni_f(&n).order(), 8);
        assert_eq!(q8.frattini().order(), 2);
    }

    #[test]
    fn subnormality_examples() {
        let n = f("N");
        let s3 = an("S3");
        let l = s3.lattice();
        let top = l.top();
        let a3 = (0..l.len()).find(|&i| l.get(i).order() == 3).unwrap();
        let c2 = (0..l.len()).find(|&i| l.get(i).order() == 2).unwrap();
        assert!(s3.is_f_subnormal(&n, a3, top));
        assert!(!s3.is_f_subnormal(&n, c2, top));
        assert!(!s3.is_f_subnormal_plain(&n, c2, top));
        assert_eq!(s3.f_subnormalizers(&n, c2).carriers, vec![c2]);
        assert_eq!(s3.f_subnormalizers(&n, a3).carriers, vec![top]);
        assert!(s3.is_f_subnormal(&f("Gpi{2,3}"), c2, top));
    }

    #[test]
    fn u_subnormalizer_of_c3_in_s4() {
        let s4 = an("S4");
        let l = s4.lattice();
        let c3 = (0..l.len()).find(|&i| l.get(i).order() == 3).unwrap();
        let carriers = s4.f_subnormalizers(&f("U"), c3).carriers;
        assert_eq!(orders(&s4, &carriers), vec![6]);
    }

    #[test]
    fn si_sigma_examples() {
        let n = f("N");
        let s3 = an("S3");
        assert_eq!(s3.si_sigma(&n, &SubgroupFunctor::Sylow).order(), 1);
        let sl = an("SL(2,3)");
        assert_eq!(sl.si_sigma(&n, &SubgroupFunctor::CyclicPrimary).order(), 2);
        let q8 = an("Q8 x C3");
        assert_eq!(q8.si_sigma(&n, &SubgroupFunctor::Sylow).order(), 24);
        let c1 = an("C1");
        assert_eq!(c1.si_sigma(&n, &SubgroupFunctor::Maximal).order(), 1);
    }

    #[test]
    fn wv_classes() {
        let n = f("N");
        assert!(an("Q8").class_wf_vf_member(&n, WvMode::W));
        assert!(!an("S3").class_wf_vf_member(&n, WvMode::W));
        assert!(an("S3").class_wf_vf_member(&f("Gpi{2,3}"), WvMode::W));
        let s4 = an("S4");
        let z = s4.wv_hypercenter(&n, WvMode::W).unwrap();
        assert!(z.is_subgroup_of(&s4.si_sigma(&n, &SubgroupFunctor::Sylow)));
    }

    #[test]
    fn section_groups() {
        let g = parse_group("S4").unwrap();
        let c = g.cayley().unwrap();
        let v4 = crate::lattice::o_pi(c, &crate::primes::PrimeSet::single(2));
        let q = section_group(&Section::new(c, Subgroup::whole(c), v4), Caps::default()).unwrap();
        assert_eq!(q.order(), 6);
        assert!(!q.is_abelian());
    }
}
