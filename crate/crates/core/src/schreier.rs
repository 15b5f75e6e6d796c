//! Deterministic incremental Schreier–Sims.

use crate::perm::Perm;

#[derive(Clone, Debug)]
struct Level {
    base_point: u32,
    gens: Vec<Perm>,
    /// Orbit of the base point, in discovery order.
    orbit: Vec<u32>,
    /// `transversal[c]` maps the base point to `c`; `None` off the orbit.
    transversal: Vec<Option<Perm>>,
}

impl Level {
    fn new(base_point: u32, degree: usize) -> Self {
        let mut transversal = vec![None; degree];
        transversal[base_point as usize] = Some(Perm::identity(degree));
        Level {
            base_point,
            gens: Vec::new(),
            orbit: vec![base_point],
            transversal,
        }
    }
}

/// A base and strong generating set for a permutation group.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize, gens: &[Perm]) -> Self {
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        for g in gens {
            let (residue, level) = chain.sift(g, 0);
            if !residue.is_identity() {
                chain.add_residue(0, level, residue);
            }
        }
        chain
    }

    pub fn order(&self) -> u64 {
        self.levels.iter().map(|l| l.orbit.len() as u64).product()
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.degree && self.sift(g, 0).0.is_identity()
    }

    /// Sifts `g` from level `from`; returns the residue and the level where sifting stopped.
    fn sift(&self, g: &Perm, from: usize) -> (Perm, usize) {
        let mut h = g.clone();
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let c = h.apply(level.base_point);
            match &level.transversal[c as usize] {
                Some(u) => h = h.compose(&u.inverse()),
                None => return (h, i),
            }
        }
        let depth = self.levels.len();
        (h, depth)
    }

    /// `h` fixes the base points of levels `< stop` from `start` on; it becomes
    /// a strong generator of levels `start..=stop`.
    fn add_residue(&mut self, start: usize, stop: usize, h: Perm) {
        if stop == self.levels.len() {
            let b = h.first_moved().expect("non-identity residue");
            self.levels.push(Level::new(b, self.degree));
        }
        for level in (start..=stop).rev() {
            self.add_generator(level, h.clone());
        }
    }

    fn add_generator(&mut self, i: usize, g: Perm) {
        self.levels[i].gens.push(g);
        let new_gen = self.levels[i].gens.len() - 1;
        // Pairs (orbit index, generator index) that have not been examined yet:
        // the new generator on every old point, every generator on new points.
        let old_len = self.levels[i].orbit.len();
        let mut pending: Vec<(usize, usize)> = (0..old_len).map(|p| (p, new_gen)).collect();
        let mut next_point = old_len;
        loop {
            while let Some((p, s)) = pending.pop() {
                let (b, u_b, gen) = {
                    let level = &self.levels[i];
                    let b = level.orbit[p];
                    (b, level.transversal[b as usize].clone().unwrap(), level.gens[s].clone())
                };
                let c = gen.apply(b);
                let level = &mut self.levels[i];
                match &level.transversal[c as usize] {
                    None => {
                        level.transversal[c as usize] = Some(u_b.compose(&gen));
                        level.orbit.push(c);
                    }
                    Some(u_c) => {
                        let schreier = u_b.compose(&gen).compose(&u_c.inverse());
                        if schreier.is_identity() {
                            continue;
                        }
                        let (residue, stop) = self.sift(&schreier, i + 1);
                        if !residue.is_identity() {
                            self.add_residue(i + 1, stop, residue);
                        }
                    }
                }
            }
            let level = &self.levels[i];
            if next_point == level.orbit.len() {
                break;
            }
            let ngens = level.gens.len();
            for p in next_point..level.orbit.len() {
                for s in 0..ngens {
                    pending.push((p, s));
                }
            }
            next_point = level.orbit.len();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, c: &[u32]) -> Perm {
        Perm::from_cycles(n, &[c.to_vec()]).unwrap()
    }

    #[test]
    fn symmetric_group_orders() {
        for n in 2..=7usize {
            let t = cyc(n, &[0, 1]);
            let r = cyc(n, &(0..n as u32).collect::<Vec<_>>());
            let chain = StabChain::new(n, &[t, r]);
            assert_eq!(chain.order(), (1..=n as u64).product::<u64>());
        }
    }

    #[test]
    fn trivial_group_has_empty_base() {
        let chain = StabChain::new(4, &[Perm::identity(4)]);
        assert_eq!(chain.order(), 1);
        assert!(chain.base().is_empty());
        assert!(chain.contains(&Perm::identity(4)));
    }

    #[test]
    fn membership_in_alternating_group() {
        let gens = [cyc(5, &[0, 1, 2]), cyc(5, &[1, 2, 3]), cyc(5, &[2, 3, 4])];
        let chain = StabChain::new(5, &gens);
        assert_eq!(chain.order(), 60);
        assert!(chain.contains(&cyc(5, &[0, 4, 2])));
        assert!(!chain.contains(&cyc(5, &[0, 1])));
    }
}
