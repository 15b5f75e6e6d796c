//! The formation catalog: membership, residuals, canonical local
//! definitions and the boundary-condition search.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{FlabError, Result};
use crate::group::Cayley;
use crate::lattice::SubgroupLattice;
use crate::primes::{self, PrimeSet};
use crate::section::Section;
use crate::subgroup::Subgroup;

/// A class of groups decidable on sections `H/K` of a tabulated group.
pub trait GroupClass: Sync {
    fn contains(&self, s: &Section) -> Result<bool>;

    fn label(&self) -> String;

    fn contains_group(&self, c: &Cayley) -> Result<bool> {
        self.contains(&Section::whole(c))
    }

    /// Verdict on a product `X ⋊ A` with `X` a chief factor of order
    /// `factor_order` that can be read off without building it, if any.
    fn order_verdict(&self, _factor_order: u64, _abelian: bool, _product_order: u64) -> Option<bool> {
        None
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BlockKind {
    /// All π-groups.
    Gpi,
    /// Soluble π-groups.
    SolPi,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Block {
    pub primes: BTreeSet<u64>,
    pub kind: BlockKind,
}

impl Block {
    pub fn prime_set(&self) -> PrimeSet {
        PrimeSet::Finite(self.primes.clone())
    }

    /// The block class as a standalone formation.
    pub fn formation(&self) -> FormationExpr {
        match self.kind {
            BlockKind::Gpi => FormationExpr::Gpi(self.prime_set()),
            BlockKind::SolPi => FormationExpr::SolPi(self.prime_set()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FormationExpr {
    Gpi(PrimeSet),
    SolPi(PrimeSet),
    Nil,
    NilPow(usize),
    Sol,
    Supersoluble,
    /// Listed blocks; primes outside them form implicit singleton `Gpi` blocks.
    Cross(Vec<Block>),
}

impl FormationExpr {
    pub fn parse(text: &str) -> Result<FormationExpr> {
        let mut p = Parser {
            s: text.as_bytes(),
            pos: 0,
        };
        p.ws();
        let f = p.formation()?;
        p.ws();
        if p.pos != p.s.len() {
            return Err(p.err("unexpected trailing input"));
        }
        f.validate()?;
        Ok(f)
    }

    fn validate(&self) -> Result<()> {
        match self {
            FormationExpr::NilPow(0) => Err(FlabError::Parse {
                offset: 0,
                message: "N^r needs r >= 1".into(),
            }),
            FormationExpr::Cross(blocks) => {
                let mut seen = BTreeSet::new();
                for b in blocks {
                    if b.primes.is_empty() {
                        return Err(FlabError::Parse {
                            offset: 0,
                            message: "empty block in cross".into(),
                        });
                    }
                    for &p in &b.primes {
                        if !seen.insert(p) {
                            return Err(FlabError::Parse {
                                offset: 0,
                                message: format!("prime {p} appears in two cross blocks"),
                            });
                        }
                    }
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// `π(F)`.
    pub fn characteristic(&self) -> PrimeSet {
        match self {
            FormationExpr::Gpi(pi) | FormationExpr::SolPi(pi) => pi.clone(),
            _ => PrimeSet::all(),
        }
    }

    /// Blocks relevant to a group of order `n`: the listed blocks plus a
    /// singleton block for every other prime dividing `n`.
    pub fn blocks_for(&self, n: u64) -> Option<Vec<Block>> {
        let FormationExpr::Cross(listed) = self else {
            return None;
        };
        let mut out = listed.clone();
        for p in primes::prime_divisors(n) {
            if !listed.iter().any(|b| b.primes.contains(&p)) {
                out.push(Block {
                    primes: BTreeSet::from([p]),
                    kind: BlockKind::Gpi,
                });
            }
        }
        Some(out)
    }

    /// Whether every listed block is a `Gpi` block (so the class is `×𝔊_{π_i}`).
    pub fn is_gpi_cross(&self) -> bool {
        match self {
            FormationExpr::Nil => true,
            FormationExpr::Cross(blocks) => blocks.iter().all(|b| b.kind == BlockKind::Gpi),
            _ => false,
        }
    }

    /// Listed `SolPi` blocks; for these the block class is not of the form `𝔊_π`.
    pub fn solpi_blocks(&self) -> Vec<Block> {
        match self {
            FormationExpr::Cross(blocks) => blocks.iter().filter(|b| b.kind == BlockKind::SolPi).cloned().collect(),
            _ => Vec::new(),
        }
    }

    pub fn member(&self, c: &Cayley) -> bool {
        self.member_section(&Section::whole(c))
    }

    pub fn member_section(&self, s: &Section) -> bool {
        match self {
            FormationExpr::Gpi(pi) => s.is_pi_group(pi),
            FormationExpr::SolPi(pi) => s.is_pi_group(pi) && s.is_soluble(),
            FormationExpr::Nil => s.is_nilpotent(),
            FormationExpr::NilPow(r) => s.nilpotent_length().is_some_and(|l| l <= *r),
            FormationExpr::Sol => s.is_soluble(),
            FormationExpr::Supersoluble => s.is_soluble() && s.is_supersoluble(),
            FormationExpr::Cross(_) => {
                let n = s.order();
                let blocks = self.blocks_for(n).expect("cross");
                let mut product = 1u64;
                for b in &blocks {
                    let pi = b.prime_set();
                    if pi.part_of(n) == 1 {
                        continue;
                    }
                    let o = s.o_pi(&pi);
                    let part = (o.order() / s.bottom.order()) as u64;
                    if part != pi.part_of(n) {
                        return false;
                    }
                    if b.kind == BlockKind::SolPi && !s.below(o).is_soluble() {
                        return false;
                    }
                    product *= part;
                }
                product == n
            }
        }
    }

    /// `G^F`: intersection of the normal subgroups with quotient in `F`, checked
    /// to have its own quotient in `F`.
    pub fn residual(&self, lattice: &SubgroupLattice) -> Result<Subgroup> {
        let c = lattice.cayley();
        let whole = Section::whole(c);
        let mut acc = Subgroup::whole(c);
        for i in lattice.normal_subgroups() {
            let n = lattice.get(i);
            if acc.is_subgroup_of(n) {
                continue;
            }
            if self.member_section(&whole.above(n.clone())) {
                acc = acc.intersection(c, n);
            }
        }
        if !self.member_section(&whole.above(acc.clone())) {
            return Err(FlabError::Internal(format!(
                "{self}: quotient by the residual candidate is not in the class"
            )));
        }
        Ok(acc)
    }

    fn local_unavailable(&self) -> FlabError {
        FlabError::LocalDefinitionUnavailable(format!("no canonical local definition is implemented for {self}"))
    }

    pub fn has_local_definition(&self) -> bool {
        match self {
            FormationExpr::Nil | FormationExpr::Gpi(_) | FormationExpr::Supersoluble => true,
            FormationExpr::Cross(_) => self.is_gpi_cross(),
            _ => false,
        }
    }

    /// Membership of the section in `F(p)` for the canonical local definition `F`.
    pub fn local_member(&self, p: u64, s: &Section) -> Result<bool> {
        match self {
            FormationExpr::Nil => Ok(s.is_p_group(p)),
            FormationExpr::Gpi(pi) => Ok(pi.contains(p) && s.is_pi_group(pi)),
            FormationExpr::Cross(blocks) if self.is_gpi_cross() => {
                let pi = blocks
                    .iter()
                    .find(|b| b.primes.contains(&p))
                    .map(Block::prime_set)
                    .unwrap_or_else(|| PrimeSet::single(p));
                Ok(s.is_pi_group(&pi))
            }
            FormationExpr::Supersoluble => {
                let q = s.above(s.o_p(p));
                Ok(q.is_abelian() && q.exponent_divides(p - 1))
            }
            _ => Err(self.local_unavailable()),
        }
    }

    pub fn local_def_member(&self, p: u64, c: &Cayley) -> Result<bool> {
        self.local_member(p, &Section::whole(c))
    }

    /// Primes that decide "some `p` with every maximal subgroup in `F(p)`" for a
    /// group of order `n` and exponent `e`: the primes dividing `n` plus, for
    /// each way `F(p)` can look at primes not dividing `n`, one representative.
    pub fn probe_primes(&self, n: u64, e: u64) -> Result<Vec<u64>> {
        if !self.has_local_definition() {
            return Err(self.local_unavailable());
        }
        let mut out: BTreeSet<u64> = primes::prime_divisors(n).into_iter().collect();
        let coprime = |p: &u64| !n.is_multiple_of(*p);
        match self {
            FormationExpr::Nil => {
                out.extend((2..).filter(|&p| primes::is_prime(p)).find(coprime));
            }
            FormationExpr::Gpi(pi) => {
                if let PrimeSet::Finite(set) = pi {
                    out.extend(set.iter().copied().find(coprime));
                } else {
                    out.extend((2..).filter(|&p| pi.contains(p) && primes::is_prime(p)).find(coprime));
                }
            }
            FormationExpr::Cross(blocks) => {
                for b in blocks {
                    out.extend(b.primes.iter().copied().find(coprime));
                }
                out.extend(
                    (2..)
                        .filter(|&p| primes::is_prime(p) && !blocks.iter().any(|b| b.primes.contains(&p)))
                        .find(coprime),
                );
            }
            FormationExpr::Supersoluble => {
                // F(p) only sees exponents dividing p - 1 when p does not divide n.
                out.extend((1..).map(|k| k * e + 1).find(|&p| primes::is_prime(p) && coprime(&p)));
            }
            _ => unreachable!(),
        }
        Ok(out.into_iter().collect())
    }
}

impl GroupClass for FormationExpr {
    fn contains(&self, s: &Section) -> Result<bool> {
        Ok(self.member_section(s))
    }

    fn label(&self) -> String {
        self.to_string()
    }

    fn order_verdict(&self, factor_order: u64, abelian: bool, product_order: u64) -> Option<bool> {
        match self {
            FormationExpr::Gpi(pi) => Some(pi.contains_all(product_order)),
            FormationExpr::SolPi(pi) if !pi.contains_all(product_order) => Some(false),
            FormationExpr::Cross(_) if !abelian => {
                // The nonabelian factor is normal, so it must sit inside one O_π.
                let blocks = self.blocks_for(product_order).expect("cross");
                let ps = primes::prime_divisors(factor_order);
                let home = blocks.iter().find(|b| ps.iter().all(|p| b.primes.contains(p)));
                match home {
                    None => Some(false),
                    Some(b) if b.kind == BlockKind::SolPi => Some(false),
                    Some(_) => None,
                }
            }
            FormationExpr::Cross(_) => None,
            // Everything else consists of soluble groups.
            _ if !abelian => Some(false),
            _ => None,
        }
    }
}

/// `(G, p)` pairs with `G` a π-group outside `F` all of whose maximal subgroups lie in `F(p)`.
pub fn boundary_counterexample_search<'a>(
    f: &FormationExpr,
    universe: &PrimeSet,
    corpus: impl IntoIterator<Item = (&'a str, &'a SubgroupLattice)>,
) -> Result<Vec<(String, u64)>> {
    let mut out = Vec::new();
    for (name, lattice) in corpus {
        let c = lattice.cayley();
        let n = c.len() as u64;
        if !universe.contains_all(n) || f.member(c) {
            continue;
        }
        let e = (0..c.len()).fold(1u64, |acc, x| crate::perm::lcm(acc, c.elem_order(x) as u64));
        let maximals = lattice.maximal_subgroups();
        for p in f.probe_primes(n, e)? {
            let mut all = true;
            for m in &maximals {
                if !f.local_member(p, &Section::of_subgroup(c, m.clone()))? {
                    all = false;
                    break;
                }
            }
            if all {
                out.push((name.to_string(), p));
            }
        }
    }
    Ok(out)
}

impl fmt::Display for FormationExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormationExpr::Gpi(pi) => write!(f, "Gpi{pi}"),
            FormationExpr::SolPi(pi) => write!(f, "Spi{pi}"),
            FormationExpr::Nil => write!(f, "N"),
            FormationExpr::NilPow(r) => write!(f, "N^{r}"),
            FormationExpr::Sol => write!(f, "Sol"),
            FormationExpr::Supersoluble => write!(f, "U"),
            FormationExpr::Cross(blocks) => {
                write!(f, "cross[")?;
                for (i, b) in blocks.iter().enumerate() {
                    if i > 0 {
                        write!(f, ";")?;
                    }
                    let kind = match b.kind {
                        BlockKind::Gpi => "gpi",
                        BlockKind::SolPi => "spi",
                    };
                    write!(f, "{}:{kind}", PrimeSet::Finite(b.primes.clone()))?;
                }
                write!(f, "]")
            }
        }
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, message: &str) -> FlabError {
        FlabError::Parse {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.ws();
        if self.s[self.pos..].starts_with(tok.as_bytes()) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{tok}`")))
        }
    }

    fn number(&mut self) -> Result<u64> {
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .ok()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| {
                let mut e = self.err("expected a number");
                if let FlabError::Parse { offset, .. } = &mut e {
                    *offset = start;
                }
                e
            })
    }

    fn prime_set(&mut self) -> Result<BTreeSet<u64>> {
        self.expect("{")?;
        let mut set = BTreeSet::new();
        if self.eat("}") {
            return Ok(set);
        }
        loop {
            let at = self.pos;
            let p = self.number()?;
            if !primes::is_prime(p) {
                return Err(FlabError::Parse {
                    offset: at,
                    message: format!("{p} is not prime"),
                });
            }
            set.insert(p);
            if self.eat("}") {
                return Ok(set);
            }
            self.expect(",")?;
        }
    }

    fn formation(&mut self) -> Result<FormationExpr> {
        self.ws();
        if self.eat("Gpi") {
            return Ok(FormationExpr::Gpi(PrimeSet::Finite(self.prime_set()?)));
        }
        if self.eat("Spi") {
            return Ok(FormationExpr::SolPi(PrimeSet::Finite(self.prime_set()?)));
        }
        if self.eat("Sol") {
            return Ok(FormationExpr::Sol);
        }
        if self.eat("cross") {
            self.expect("[")?;
            let mut blocks = Vec::new();
            if self.eat("]") {
                return Ok(FormationExpr::Cross(blocks));
            }
            loop {
                let primes = self.prime_set()?;
                let kind = if self.eat(":") {
                    if self.eat("gpi") {
                        BlockKind::Gpi
                    } else if self.eat("spi") {
                        BlockKind::SolPi
                    } else {
                        return Err(self.err("expected block kind `gpi` or `spi`"));
                    }
                } else {
                    BlockKind::Gpi
                };
                blocks.push(Block { primes, kind });
                if self.eat("]") {
                    return Ok(FormationExpr::Cross(blocks));
                }
                self.expect(";")?;
            }
        }
        if self.eat("N") {
            if self.eat("^") {
                let r = self.number()?;
                return Ok(FormationExpr::NilPow(r as usize));
            }
            return Ok(FormationExpr::Nil);
        }
        if self.eat("U") {
            return Ok(FormationExpr::Supersoluble);
        }
        Err(self.err("expected a formation: Gpi{..}, Spi{..}, N, N^r, Sol, U or cross[..]"))
    }
}
