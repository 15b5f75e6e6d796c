//! Structural invariants of `NI_F`, `Z_F` and `F`-subnormality, checked
//! instance by instance. Small groups are covered exhaustively (every normal
//! subgroup, every subgroup class); larger ones by a seeded sample.

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::checks::delta_phi_rhs;
use super::report::{Row, Witness};
use crate::error::Result;
use crate::formations::FormationExpr;
use crate::hypercenter::Method;
use crate::intersections::{subgroup_group, Analysis};
use crate::products;
use crate::subgroup::{commutator, Subgroup};

/// Groups up to this order are checked on every instance.
pub const EXHAUSTIVE_LIMIT: u64 = 60;
const SAMPLE_NORMALS: usize = 4;
const SAMPLE_SUBGROUPS: usize = 6;
const SAMPLE_CHAIN: usize = 8;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub passed: usize,
    pub total: usize,
    /// Description of the first failing instance.
    pub first_failure: Option<String>,
}

impl SuiteOutcome {
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.total += 1;
        if ok {
            self.passed += 1;
        } else if self.first_failure.is_none() {
            self.first_failure = Some(what());
        }
    }

    pub fn into_row(self, group: &str, order: u64) -> Row {
        let pass = self.passed == self.total;
        Row {
            group: group.to_string(),
            order,
            lhs_order: self.passed,
            rhs_order: self.total,
            pass,
            witness: self.first_failure.map(Witness::note),
        }
    }
}

fn pick<T: Clone>(items: Vec<T>, k: usize, exhaustive: bool, rng: &mut ChaCha8Rng) -> Vec<T> {
    if exhaustive || items.len() <= k {
        items
    } else {
        items.choose_multiple(rng, k).cloned().collect()
    }
}

/// Runs every invariant on `a` for the formation `f`.
pub fn run_suite(a: &Analysis, f: &FormationExpr, seed: u64) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::default();
    let l = a.lattice();
    let c = a.cayley();
    let n = c.len() as u64;
    let top = l.top();
    let exhaustive = n <= EXHAUSTIVE_LIMIT;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ n.wrapping_mul(0x9e37_79b9_7f4a_7c15));

    let z = a.hypercenter(f, Method::Auto)?;
    let int = a.int_f(f);
    let ni = a.ni_f(f);

    out.record(z.is_subgroup_of(&int) && int.is_subgroup_of(&ni), || {
        format!(
            "Z <= Int <= NI fails: orders {}, {}, {}",
            z.order(),
            int.order(),
            ni.order()
        )
    });

    let residual = a.residual(f)?;
    out.record(commutator(c, &residual, &z).is_trivial(), || "[G^F, Z_F] != 1".into());

    let delta = a.delta_f(f);
    out.record(delta == delta_phi_rhs(a, f)?, || "Delta/Phi != Z_F(G/Phi)".into());

    let reps: Vec<usize> = l.conjugacy_classes().iter().map(|cl| cl[0]).collect();
    let reps = pick(reps, SAMPLE_SUBGROUPS, exhaustive, &mut rng);

    for &h in &reps {
        let hs = l.get(h);
        // Z_F(G) H lies in F whenever H does.
        if a.is_member(f, h) {
            let zh = hs.join(c, &z);
            let ok =
                zh.order() * hs.intersection(c, &z).order() == hs.order() * z.order() && a.is_member(f, a.idx(&zh));
            out.record(ok, || format!("Z_F H not in F for H of order {}", hs.order()));
        }

        // NI_F(G) ∩ H <= NI_F(H).
        if h != top {
            let (hg, back) = subgroup_group(c, hs, a.caps())?;
            let ah = Analysis::from_group(hg)?;
            let ni_h: Vec<usize> = ah.ni_f(f).elements().map(|x| back[x]).collect();
            let meet = ni.intersection(c, hs);
            let ok = meet.elements().all(|x| ni_h.contains(&x));
            out.record(ok, || {
                format!("NI(G) meet H exceeds NI(H) for H of order {}", hs.order())
            });
        }

        // Transitivity along sampled intermediate subgroups.
        let over = a.subnormal_overgroups(f, h);
        let mids = pick(over.ones().collect(), SAMPLE_CHAIN, exhaustive, &mut rng);
        for k in mids {
            let ok = a.subnormal_overgroups(f, k).is_subset(&over);
            out.record(ok, || {
                format!("transitivity fails from order {} via {}", hs.order(), l.get(k).order())
            });
        }
    }

    let normals: Vec<usize> = l
        .normal_subgroups()
        .into_iter()
        .filter(|&i| i != 0 && i != top)
        .collect();
    for nid in pick(normals, SAMPLE_NORMALS, exhaustive, &mut rng) {
        let ns = l.get(nid);
        let products::Quotient { group, projection } = products::quotient(a.group(), ns)?;
        let aq = Analysis::from_group(group)?;
        let lq = aq.lattice();
        let cq = aq.cayley();
        let image = |h: &Subgroup| {
            let mut set = FixedBitSet::with_capacity(cq.len());
            h.elements().for_each(|x| set.insert(projection[x]));
            Subgroup::from_set(cq, set)
        };
        let preimage = |k: &Subgroup| {
            let mut set = FixedBitSet::with_capacity(c.len());
            (0..c.len())
                .filter(|&x| k.contains(projection[x]))
                .for_each(|x| set.insert(x));
            Subgroup::from_set(c, set)
        };
        let ni_q = aq.ni_f(f);
        let ni_image = image(&ni);

        out.record(ni_image.is_subgroup_of(&ni_q), || {
            format!("NI(G)N/N exceeds NI(G/N) for |N| = {}", ns.order())
        });

        if ns.is_subgroup_of(&int) {
            let lifted = preimage(&ni_q);
            out.record(ns.is_subgroup_of(&ni) && lifted == ni, || {
                format!("NI(G)/N != NI(G/N) for |N| = {} inside Int", ns.order())
            });
        }

        // Images of subnormal pairs stay subnormal.
        for &h in &reps {
            let carriers = a.f_subnormalizers(f, h).carriers;
            let hq = aq.idx(&image(l.get(h)));
            for t in carriers {
                let tq = aq.idx(&image(l.get(t)));
                out.record(aq.is_f_subnormal(f, hq, tq), || {
                    format!("image of a subnormal pair fails modulo |N| = {}", ns.order())
                });
            }
        }

        // Preimages of subnormal subgroups of G/N are subnormal.
        let qreps: Vec<usize> = lq.conjugacy_classes().iter().map(|cl| cl[0]).collect();
        for kq in pick(qreps, SAMPLE_SUBGROUPS, exhaustive, &mut rng) {
            if !aq.is_f_subnormal(f, kq, lq.top()) {
                continue;
            }
            let k = preimage(lq.get(kq));
            out.record(a.is_f_subnormal(f, a.idx(&k), top), || {
                format!(
                    "preimage of order {} is not subnormal modulo |N| = {}",
                    k.order(),
                    ns.order()
                )
            });
        }
    }

    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::parse_group;

    #[test]
    fn suite_passes_on_small_groups() {
        for spec in ["S4", "SL(2,3)", "sd(C5,C4,[a^2])", "D8 x C3", "A5"] {
            let a = Analysis::from_group(parse_group(spec).unwrap()).unwrap();
            for f in ["N", "U", "Gpi{2,3}", "cross[{2,3};{5}]"] {
                let f = FormationExpr::parse(f).unwrap();
                let out = run_suite(&a, &f, 1).unwrap();
                assert!(out.total > 5, "{spec} {f}");
                assert_eq!(out.passed, out.total, "{spec} {f}: {:?}", out.first_failure);
            }
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = Analysis::from_group(parse_group("S4 x C3").unwrap()).unwrap();
        let f = FormationExpr::Nil;
        assert_eq!(run_suite(&a, &f, 5).unwrap(), run_suite(&a, &f, 5).unwrap());
    }
}
