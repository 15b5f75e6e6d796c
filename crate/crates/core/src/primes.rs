//! Small-integer prime utilities and prime sets.

use std::collections::BTreeSet;
use std::fmt;

pub use crate::perm::gcd;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime divisors of `n` in increasing order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Largest power of `p` dividing `n`.
pub fn p_part(mut n: u64, p: u64) -> u64 {
    let mut part = 1;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        part *= p;
    }
    part
}

/// `n` is a (possibly trivial) power of `p`.
pub fn is_power_of(n: u64, p: u64) -> bool {
    p_part(n, p) == n
}

/// Prime power `n = p^k` with `k >= 1`, returning `p`.
pub fn prime_power_base(n: u64) -> Option<u64> {
    match prime_divisors(n).as_slice() {
        [p] => Some(*p),
        _ => None,
    }
}

/// A set of primes: either finite, or everything except a finite set.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum PrimeSet {
    Finite(BTreeSet<u64>),
    AllExcept(BTreeSet<u64>),
}

impl PrimeSet {
    pub fn all() -> Self {
        PrimeSet::AllExcept(BTreeSet::new())
    }

    pub fn empty() -> Self {
        PrimeSet::Finite(BTreeSet::new())
    }

    pub fn single(p: u64) -> Self {
        PrimeSet::Finite([p].into_iter().collect())
    }

    pub fn from_slice(ps: &[u64]) -> Self {
        PrimeSet::Finite(ps.iter().copied().collect())
    }

    pub fn contains(&self, p: u64) -> bool {
        match self {
            PrimeSet::Finite(s) => s.contains(&p),
            PrimeSet::AllExcept(s) => !s.contains(&p),
        }
    }

    pub fn complement(&self) -> Self {
        match self {
            PrimeSet::Finite(s) => PrimeSet::AllExcept(s.clone()),
            PrimeSet::AllExcept(s) => PrimeSet::Finite(s.clone()),
        }
    }

    pub fn union(&self, other: &PrimeSet) -> PrimeSet {
        use PrimeSet::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(a.union(b).copied().collect()),
            (AllExcept(a), Finite(b)) | (Finite(b), AllExcept(a)) => AllExcept(a.difference(b).copied().collect()),
            (AllExcept(a), AllExcept(b)) => AllExcept(a.intersection(b).copied().collect()),
        }
    }

    pub fn is_disjoint(&self, other: &PrimeSet) -> bool {
        use PrimeSet::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.is_disjoint(b),
            (AllExcept(a), Finite(b)) | (Finite(b), AllExcept(a)) => b.is_subset(a),
            (AllExcept(_), AllExcept(_)) => false,
        }
    }

    /// Every prime divisor of `n` lies in the set.
    pub fn contains_all(&self, n: u64) -> bool {
        prime_divisors(n).into_iter().all(|p| self.contains(p))
    }

    /// No prime divisor of `n` lies in the set.
    pub fn disjoint_from(&self, n: u64) -> bool {
        prime_divisors(n).into_iter().all(|p| !self.contains(p))
    }

    /// The π-part of `n`.
    pub fn part_of(&self, n: u64) -> u64 {
        prime_divisors(n)
            .into_iter()
            .filter(|&p| self.contains(p))
            .map(|p| p_part(n, p))
            .product()
    }

    pub fn is_all(&self) -> bool {
        matches!(self, PrimeSet::AllExcept(s) if s.is_empty())
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |s: &BTreeSet<u64>| s.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",");
        match self {
            PrimeSet::Finite(s) => write!(f, "{{{}}}", list(s)),
            PrimeSet::AllExcept(s) if s.is_empty() => write!(f, "P"),
            PrimeSet::AllExcept(s) => write!(f, "{{{}}}'", list(s)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factoring() {
        assert_eq!(prime_divisors(1), Vec::<u64>::new());
        assert_eq!(prime_divisors(360), vec![2, 3, 5]);
        assert_eq!(p_part(360, 2), 8);
        assert!(is_power_of(27, 3));
        assert!(is_power_of(1, 7));
        assert!(!is_power_of(12, 2));
        assert_eq!(prime_power_base(49), Some(7));
        assert_eq!(prime_power_base(6), None);
    }

    #[test]
    fn complements() {
        let pi = PrimeSet::from_slice(&[2, 3]);
        let co = pi.complement();
        assert!(co.contains(5) && !co.contains(2));
        assert_eq!(pi.part_of(60), 12);
        assert_eq!(co.part_of(60), 5);
        assert!(pi.is_disjoint(&PrimeSet::single(5)));
        assert!(!PrimeSet::all().is_disjoint(&pi));
        assert_eq!(pi.union(&co), PrimeSet::all());
        assert_eq!(PrimeSet::all().part_of(60), 60);
        assert_eq!(PrimeSet::empty().part_of(60), 1);
    }
}
