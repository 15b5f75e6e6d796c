//! Centrality of chief factors and the hypercenter `Z_F(G)`.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{FlabError, Result};
use crate::formations::{FormationExpr, GroupClass};
use crate::group::{Caps, Cayley, Group};
use crate::lattice::factor_centralizer_in;
use crate::perm::Perm;
use crate::section::Section;
use crate::series::ChiefFactor;
use crate::subgroup::Subgroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    /// Build `(H/K) ⋊ (G/C_G(H/K))` and test membership.
    Oracle,
    /// `G/C_G(H/K) ∈ F(p)` for every `p` dividing `|H/K|`.
    Local,
    /// Run both and insist on agreement.
    Both,
    /// Local when a local definition exists, oracle otherwise.
    Auto,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Oracle => "oracle",
            Method::Local => "local",
            Method::Both => "both",
            Method::Auto => "auto",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralityVerdict {
    pub factor: ChiefFactor,
    pub central: bool,
    pub method: Method,
    /// `|G/C_G(H/K)|`.
    pub acting_order: u64,
    /// Order of the constructed semidirect product, when the oracle ran.
    pub product_order: Option<u64>,
}

fn centralizer(c: &Cayley, f: &ChiefFactor) -> Subgroup {
    factor_centralizer_in(c, &Subgroup::whole(c), &f.upper, &f.lower)
}

/// The permutation group generated on the right cosets of `K` in `H` by right
/// translations by `H` and conjugation by `G`. It is `(H/K) ⋊ (G/C_G(H/K))`.
pub fn factor_product(c: &Cayley, f: &ChiefFactor, caps: Caps) -> Result<Group> {
    let mut label = vec![u32::MAX; c.len()];
    let mut next = 0u32;
    for h in f.upper.elements() {
        if label[h] != u32::MAX {
            continue;
        }
        for k in f.lower.elements() {
            label[c.mul(k, h)] = next;
        }
        next += 1;
    }
    let mut rep = vec![0usize; next as usize];
    for h in f.upper.elements() {
        rep[label[h] as usize] = h;
    }
    let degree = next as usize;
    let mut gens = Vec::new();
    for &t in f.upper.gens() {
        gens.push(Perm::from_images(rep.iter().map(|&x| label[c.mul(x, t)]).collect())?);
    }
    for &g in c.gens() {
        gens.push(Perm::from_images(rep.iter().map(|&x| label[c.conj(x, g)]).collect())?);
    }
    let oracle = caps.for_oracle();
    Group::new(degree, gens, oracle).map_err(|e| match e {
        FlabError::OrderCap { order, cap } => FlabError::OracleCap { order, cap },
        other => other,
    })
}

/// Centrality by building the semidirect product; works for any class with a membership test.
pub fn is_f_central_oracle(
    class: &dyn GroupClass,
    c: &Cayley,
    f: &ChiefFactor,
    caps: Caps,
) -> Result<CentralityVerdict> {
    let cent = centralizer(c, f);
    let acting_order = (c.len() / cent.order()) as u64;
    let product_order = f.order() * acting_order;
    if product_order > caps.oracle_cap {
        return Err(FlabError::OracleCap {
            order: product_order,
            cap: caps.oracle_cap,
        });
    }
    let abelian = f.is_abelian(c);
    let central = match class.order_verdict(f.order(), abelian, product_order) {
        Some(v) => v,
        None => {
            let g = factor_product(c, f, caps)?;
            if g.order() != product_order {
                return Err(FlabError::Internal(format!(
                    "factor product has order {} instead of {product_order}",
                    g.order()
                )));
            }
            class.contains_group(g.cayley()?)?
        }
    };
    Ok(CentralityVerdict {
        factor: f.clone(),
        central,
        method: Method::Oracle,
        acting_order,
        product_order: Some(product_order),
    })
}

/// Centrality through the canonical local definition.
pub fn is_f_central_local(form: &FormationExpr, c: &Cayley, f: &ChiefFactor) -> Result<CentralityVerdict> {
    let cent = centralizer(c, f);
    let q = Section::new(c, Subgroup::whole(c), cent.clone());
    let mut central = true;
    for p in f.primes() {
        if !form.local_member(p, &q)? {
            central = false;
            break;
        }
    }
    Ok(CentralityVerdict {
        factor: f.clone(),
        central,
        method: Method::Local,
        acting_order: q.order(),
        product_order: None,
    })
}

pub fn is_f_central(
    form: &FormationExpr,
    c: &Cayley,
    f: &ChiefFactor,
    method: Method,
    caps: Caps,
) -> Result<CentralityVerdict> {
    match method {
        Method::Oracle => is_f_central_oracle(form, c, f, caps),
        Method::Local => is_f_central_local(form, c, f),
        Method::Auto => {
            if form.has_local_definition() {
                is_f_central_local(form, c, f)
            } else {
                is_f_central_oracle(form, c, f, caps)
            }
        }
        Method::Both => {
            let local = is_f_central_local(form, c, f)?;
            let oracle = is_f_central_oracle(form, c, f, caps)?;
            if local.central != oracle.central {
                return Err(FlabError::Internal(format!(
                    "{form}: oracle and local centrality disagree on a factor of order {}",
                    f.order()
                )));
            }
            Ok(CentralityVerdict {
                method: Method::Both,
                ..oracle
            })
        }
    }
}

/// A centrality test for factors of one fixed group.
pub trait Centrality {
    fn central(&self, c: &Cayley, f: &ChiefFactor) -> Result<bool>;
}

/// A formation with a chosen method.
pub struct FormationCentrality<'a> {
    pub formation: &'a FormationExpr,
    pub method: Method,
    pub caps: Caps,
}

impl Centrality for FormationCentrality<'_> {
    fn central(&self, c: &Cayley, f: &ChiefFactor) -> Result<bool> {
        Ok(is_f_central(self.formation, c, f, self.method, self.caps)?.central)
    }
}

/// Any class, through the oracle.
pub struct ClassCentrality<'a> {
    pub class: &'a dyn GroupClass,
    pub caps: Caps,
}

impl Centrality for ClassCentrality<'_> {
    fn central(&self, c: &Cayley, f: &ChiefFactor) -> Result<bool> {
        Ok(is_f_central_oracle(self.class, c, f, self.caps)?.central)
    }
}

/// Greedy ascent `1 = N_0 < N_1 < ...` through central chief factors.
/// `pick` selects among the central minimal normal subgroups of `G/N`.
fn ascend(
    c: &Cayley,
    test: &dyn Centrality,
    first_only: bool,
    mut pick: impl FnMut(&[Subgroup]) -> usize,
) -> Result<Vec<Subgroup>> {
    let whole = Section::whole(c);
    let mut chain = vec![Subgroup::trivial(c)];
    loop {
        let cur = chain.last().expect("nonempty").clone();
        if cur.order() == c.len() {
            return Ok(chain);
        }
        let mut central = Vec::new();
        for m in whole.above(cur.clone()).minimal_normal() {
            let f = ChiefFactor {
                lower: cur.clone(),
                upper: m.clone(),
            };
            if test.central(c, &f)? {
                central.push(m);
                if first_only {
                    break;
                }
            }
        }
        if central.is_empty() {
            return Ok(chain);
        }
        let k = pick(&central);
        chain.push(central.swap_remove(k));
    }
}

/// `Z_F(G)` via the greedy ascent with the deterministic choice rule, then
/// cross-checked along an independent random chief series below the result.
pub fn hypercenter_with(c: &Cayley, test: &dyn Centrality) -> Result<Subgroup> {
    let chain = ascend(c, test, true, |_| 0)?;
    let z = chain.last().expect("nonempty").clone();
    verify_below(c, test, &z, 0x5eed)?;
    Ok(z)
}

/// Same ascent, choosing uniformly among central candidates.
pub fn hypercenter_random(c: &Cayley, test: &dyn Centrality, seed: u64) -> Result<Subgroup> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let chain = ascend(c, test, false, |cands| {
        let idx: Vec<usize> = (0..cands.len()).collect();
        *idx.choose(&mut rng).expect("nonempty")
    })?;
    Ok(chain.last().expect("nonempty").clone())
}

/// Every factor of a random `G`-chief series from 1 to `z` must be central.
fn verify_below(c: &Cayley, test: &dyn Centrality, z: &Subgroup, seed: u64) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let whole = Section::whole(c);
    let mut cur = Subgroup::trivial(c);
    while cur.order() < z.order() {
        let mins: Vec<Subgroup> = whole
            .above(cur.clone())
            .minimal_normal()
            .into_iter()
            .filter(|m| m.is_subgroup_of(z))
            .collect();
        let m = mins
            .choose(&mut rng)
            .ok_or_else(|| FlabError::Internal("hypercenter is not normal".into()))?
            .clone();
        let f = ChiefFactor {
            lower: cur,
            upper: m.clone(),
        };
        if !test.central(c, &f)? {
            return Err(FlabError::Internal(format!(
                "chief factor of order {} below the hypercenter is not central",
                f.order()
            )));
        }
        cur = m;
    }
    Ok(())
}

pub fn f_hypercenter(form: &FormationExpr, c: &Cayley, method: Method, caps: Caps) -> Result<Subgroup> {
    hypercenter_with(
        c,
        &FormationCentrality {
            formation: form,
            method,
            caps,
        },
    )
}

/// Hypercenter for a class given only by membership (oracle path). The class
/// is assumed to be a formation; the post-verification catches violations.
pub fn class_hypercenter(class: &dyn GroupClass, c: &Cayley, caps: Caps) -> Result<Subgroup> {
    hypercenter_with(c, &ClassCentrality { class, caps })
}
