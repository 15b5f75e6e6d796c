//! Named groups, direct and semidirect products, and quotients by normal subgroups.
//!
//! Generator lists of the named constructors are fixed, since semidirect
//! actions refer to generators by position:
//!
//! | group      | generators                                   |
//! |------------|----------------------------------------------|
//! | `C<n>`     | `a = (0 1 .. n-1)`                           |
//! | `D<2n>`    | `a` rotation, `b` reflection `i -> -i mod n` |
//! | `S<n>`     | `a = (0 1)`, `b = (0 1 .. n-1)`              |
//! | `A<n>`     | `(i i+1 i+2)` for `i = 0..n-3`               |
//! | `Q8`       | `a = i`, `b = j` in the regular action       |
//! | `SL(2,3)`  | `a = [[0,-1],[1,0]]`, `b = [[1,1],[0,1]]`    |
//! | `E(p^k)`   | one `p`-cycle per coordinate                 |

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::error::{FlabError, Result};
use crate::group::{Caps, Group};
use crate::perm::Perm;
use crate::primes;
use crate::subgroup::Subgroup;

fn cycle(degree: usize, points: impl IntoIterator<Item = u32>) -> Perm {
    Perm::from_cycles(degree, &[points.into_iter().collect()]).expect("valid cycle")
}

pub fn cyclic(n: usize, caps: Caps) -> Result<Group> {
    if n == 0 {
        return Err(FlabError::Precondition("C0 is not a group".into()));
    }
    if n == 1 {
        return Group::new(1, Vec::new(), caps);
    }
    Group::new(n, vec![cycle(n, 0..n as u32)], caps)
}

/// Dihedral group of order `order`.
pub fn dihedral(order: usize, caps: Caps) -> Result<Group> {
    if order == 0 || order % 2 == 1 {
        return Err(FlabError::Precondition(format!(
            "dihedral order must be even, got {order}"
        )));
    }
    let n = order / 2;
    match n {
        1 => cyclic(2, caps),
        2 => {
            let a = Perm::from_cycles(4, &[vec![0, 1], vec![2, 3]])?;
            let b = Perm::from_cycles(4, &[vec![0, 2], vec![1, 3]])?;
            Group::new(4, vec![a, b], caps)
        }
        _ => {
            let rot = cycle(n, 0..n as u32);
            let refl = Perm::from_images((0..n as u32).map(|i| (n as u32 - i) % n as u32).collect())?;
            Group::new(n, vec![rot, refl], caps)
        }
    }
}

pub fn symmetric(n: usize, caps: Caps) -> Result<Group> {
    if n <= 1 {
        return Group::new(1, Vec::new(), caps);
    }
    Group::new(n, vec![cycle(n, [0, 1]), cycle(n, 0..n as u32)], caps)
}

pub fn alternating(n: usize, caps: Caps) -> Result<Group> {
    if n <= 2 {
        return Group::new(n.max(1), Vec::new(), caps);
    }
    let gens = (0..n as u32 - 2).map(|i| cycle(n, [i, i + 1, i + 2])).collect();
    Group::new(n, gens, caps)
}

/// Quaternion group in its regular action; points are `±1, ±i, ±j, ±k`.
pub fn quaternion(caps: Caps) -> Result<Group> {
    // unit index: 0=1, 1=i, 2=j, 3=k; point = 4*sign + unit
    fn unit_mul(a: usize, b: usize) -> (bool, usize) {
        const T: [[(bool, usize); 4]; 4] = [
            [(false, 0), (false, 1), (false, 2), (false, 3)],
            [(false, 1), (true, 0), (false, 3), (true, 2)],
            [(false, 2), (true, 3), (true, 0), (false, 1)],
            [(false, 3), (false, 2), (true, 1), (true, 0)],
        ];
        T[a][b]
    }
    let right = |u: usize| {
        let images = (0..8u32)
            .map(|p| {
                let (sign, unit) = ((p / 4) == 1, (p % 4) as usize);
                let (s2, w) = unit_mul(unit, u);
                4 * u32::from(sign ^ s2) + w as u32
            })
            .collect();
        Perm::from_images(images)
    };
    Group::new(8, vec![right(1)?, right(2)?], caps)
}

/// `SL(2,3)` acting on the eight nonzero row vectors of `F_3^2`.
pub fn sl23(caps: Caps) -> Result<Group> {
    let vectors: Vec<(u32, u32)> = (0..3)
        .flat_map(|x| (0..3).map(move |y| (x, y)))
        .filter(|&v| v != (0, 0))
        .collect();
    let index: HashMap<(u32, u32), u32> = vectors.iter().enumerate().map(|(i, &v)| (v, i as u32)).collect();
    let act = |m: [[u32; 2]; 2]| {
        let images = vectors
            .iter()
            .map(|&(x, y)| {
                let nx = (x * m[0][0] + y * m[1][0]) % 3;
                let ny = (x * m[0][1] + y * m[1][1]) % 3;
                index[&(nx, ny)]
            })
            .collect();
        Perm::from_images(images)
    };
    let s = act([[0, 2], [1, 0]])?;
    let t = act([[1, 1], [0, 1]])?;
    Group::new(8, vec![s, t], caps)
}

/// Elementary abelian group of order `p^k`.
pub fn elementary_abelian(p: usize, k: usize, caps: Caps) -> Result<Group> {
    if !primes::is_prime(p as u64) {
        return Err(FlabError::Precondition(format!("{p} is not prime")));
    }
    if k == 0 {
        return Group::new(1, Vec::new(), caps);
    }
    let degree = p * k;
    let gens = (0..k)
        .map(|i| cycle(degree, (i * p) as u32..((i + 1) * p) as u32))
        .collect();
    Group::new(degree, gens, caps)
}

/// `A × B` acting on the disjoint union of their point sets.
pub fn direct_product(a: &Group, b: &Group, caps: Caps) -> Result<Group> {
    let degree = a.degree() + b.degree();
    let gens = a
        .generators()
        .iter()
        .map(|g| g.embed(degree, 0))
        .chain(b.generators().iter().map(|g| g.embed(degree, a.degree())))
        .collect();
    Group::new(degree, gens, caps)
}

/// `N ⋊ H`, where `action[i][j]` is the image of the `j`-th generator of `N`
/// under conjugation by the `i`-th generator of `H` (`n -> s^-1 n s`).
pub fn semidirect_product(n: &Group, h: &Group, action: &[Vec<Perm>], caps: Caps) -> Result<Group> {
    let cn = n.cayley()?;
    let ch = h.cayley()?;
    let n_gens = cn.gens();
    let h_gens = ch.gens();
    if action.len() != h_gens.len() {
        return Err(FlabError::BadAction(format!(
            "action lists {} automorphisms for {} generators of H",
            action.len(),
            h_gens.len()
        )));
    }
    let order = n.order() * h.order();
    if order > caps.order_cap {
        return Err(FlabError::OrderCap {
            order,
            cap: caps.order_cap,
        });
    }
    let nn = cn.len();
    // Automorphism of N for each H generator, as a map on element indices.
    let mut gen_auts = Vec::with_capacity(action.len());
    for (i, images) in action.iter().enumerate() {
        if images.len() != n_gens.len() {
            return Err(FlabError::BadAction(format!(
                "H generator {i} lists {} images for {} generators of N",
                images.len(),
                n_gens.len()
            )));
        }
        let img_idx: Vec<usize> = images
            .iter()
            .map(|p| {
                cn.index_of(p)
                    .ok_or_else(|| FlabError::BadAction(format!("image {p} is not an element of N")))
            })
            .collect::<Result<_>>()?;
        let mut phi = vec![usize::MAX; nn];
        phi[0] = 0;
        let mut queue = vec![0usize];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for (j, &g) in n_gens.iter().enumerate() {
                let y = cn.mul(x, g);
                if phi[y] == usize::MAX {
                    phi[y] = cn.mul(phi[x], img_idx[j]);
                    queue.push(y);
                }
            }
        }
        for a in 0..nn {
            for b in 0..nn {
                if phi[cn.mul(a, b)] != cn.mul(phi[a], phi[b]) {
                    return Err(FlabError::BadAction(format!(
                        "images for H generator {i} do not define a homomorphism of N"
                    )));
                }
            }
        }
        let mut hit = vec![false; nn];
        for &y in &phi {
            hit[y] = true;
        }
        if hit.iter().any(|&b| !b) {
            return Err(FlabError::BadAction(format!(
                "images for H generator {i} do not define a bijection of N"
            )));
        }
        gen_auts.push(phi);
    }
    // Extend to all of H and check the relations: phi_{x s} = phi_s after phi_x.
    let nh = ch.len();
    let mut auts: Vec<Option<Vec<usize>>> = vec![None; nh];
    auts[0] = Some((0..nn).collect());
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (k, &s) in h_gens.iter().enumerate() {
            let y = ch.mul(x, s);
            let phi_x = auts[x].as_ref().expect("visited");
            let composed: Vec<usize> = phi_x.iter().map(|&v| gen_auts[k][v]).collect();
            match &auts[y] {
                None => {
                    auts[y] = Some(composed);
                    queue.push(y);
                }
                Some(existing) => {
                    if *existing != composed {
                        return Err(FlabError::BadAction(
                            "the generator images do not extend to a homomorphism H -> Aut(N)".into(),
                        ));
                    }
                }
            }
        }
    }
    // Check every (element, generator) pair, including those reached first by BFS.
    for x in 0..nh {
        for (k, &s) in h_gens.iter().enumerate() {
            let y = ch.mul(x, s);
            let phi_x = auts[x].as_ref().unwrap();
            let phi_y = auts[y].as_ref().unwrap();
            if phi_x.iter().zip(phi_y).any(|(&v, &w)| gen_auts[k][v] != w) {
                return Err(FlabError::BadAction(
                    "the generator images do not extend to a homomorphism H -> Aut(N)".into(),
                ));
            }
        }
    }

    // Faithful on the cosets of H when H acts faithfully on N.
    let translate = |m: usize| Perm::from_images_unchecked((0..nn).map(|x| cn.mul(x, m) as u32).collect());
    let small_gens: Vec<Perm> = n_gens
        .iter()
        .map(|&m| translate(m))
        .chain(
            gen_auts
                .iter()
                .map(|phi| Perm::from_images_unchecked(phi.iter().map(|&v| v as u32).collect())),
        )
        .collect();
    if let Ok(g) = Group::new(nn, small_gens, caps) {
        if g.order() == order {
            return Ok(g);
        }
    }

    let degree = nn * nh;
    let mut gens = Vec::new();
    for &m in n_gens {
        let images = (0..degree)
            .map(|p| {
                let (x, v) = (p / nn, p % nn);
                (x * nn + cn.mul(v, m)) as u32
            })
            .collect();
        gens.push(Perm::from_images_unchecked(images));
    }
    for (k, &s) in h_gens.iter().enumerate() {
        let images = (0..degree)
            .map(|p| {
                let (x, v) = (p / nn, p % nn);
                (ch.mul(x, s) * nn + gen_auts[k][v]) as u32
            })
            .collect();
        gens.push(Perm::from_images_unchecked(images));
    }
    Group::new(degree, gens, caps)
}

/// `G/N` acting on the right cosets of `N`, with the projection on element indices.
pub struct Quotient {
    pub group: Group,
    /// `projection[x]` is the element index in `group` of the coset `N x`.
    pub projection: Vec<usize>,
}

impl Quotient {
    pub fn image(&self, h: &Subgroup) -> Result<Subgroup> {
        let cq = self.group.cayley()?;
        let mut set = FixedBitSet::with_capacity(cq.len());
        for x in h.elements() {
            set.insert(self.projection[x]);
        }
        Ok(Subgroup::from_set(cq, set))
    }

    /// Preimage in the original group of a subgroup of the quotient.
    pub fn preimage(&self, ambient_len: usize, q: &Subgroup) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(ambient_len);
        for (x, &y) in self.projection.iter().enumerate() {
            if q.contains(y) {
                set.insert(x);
            }
        }
        set
    }
}

pub fn quotient(g: &Group, n: &Subgroup) -> Result<Quotient> {
    let c = g.cayley()?;
    if !n.is_normal_in(c, &Subgroup::whole(c)) {
        return Err(FlabError::NotNormal);
    }
    let reps = n.right_transversal(c, &Subgroup::whole(c));
    let mut coset = vec![0usize; c.len()];
    for (i, &r) in reps.iter().enumerate() {
        for x in n.elements() {
            coset[c.mul(x, r)] = i;
        }
    }
    let k = reps.len();
    let gens: Vec<Perm> = c
        .gens()
        .iter()
        .map(|&s| Perm::from_images_unchecked(reps.iter().map(|&r| coset[c.mul(r, s)] as u32).collect()))
        .collect();
    let group = Group::new(k.max(1), gens, g.caps())?;
    let cq = group.cayley()?;
    if cq.len() != k {
        return Err(FlabError::Internal(format!(
            "coset action has order {} for {} cosets",
            cq.len(),
            k
        )));
    }
    // The coset action is regular: each quotient element sends the trivial coset somewhere else.
    let mut by_coset = vec![0usize; k];
    for q in 0..cq.len() {
        let target = if k == 1 { 0 } else { cq.perm(q).apply(0) as usize };
        by_coset[target] = q;
    }
    let projection = coset.iter().map(|&i| by_coset[i]).collect();
    Ok(Quotient { group, projection })
}
