//! Group-spec mini-language.
//!
//! ```text
//! spec   := term ('x' term)*
//! term   := C<n> | D<2n> | S<n> | A<n> | Q8 | SL(2,3) | E(<p>^<k>)
//!         | sd(spec, spec, [word,..; word,..; ..]) | perm(<n>; cycles; ..) | (spec)
//! word   := 1 | letter('^' int)? ('*' letter('^' int)?)*
//! ```
//!
//! In `sd(N, H, action)`, the action lists one block per generator of `H`
//! (separated by `;`), each giving the images of the generators of `N`
//! (named `a`, `b`, `c`, ..) under `n -> s^-1 n s`.

use std::fmt;

use crate::error::{FlabError, Result};
use crate::group::{Caps, Group};
use crate::perm::Perm;
use crate::products;

/// A word in the generators of a group: `(generator index, exponent)` factors.
pub type Word = Vec<(usize, i64)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    Quaternion,
    Sl23,
    Elementary {
        p: usize,
        k: usize,
    },
    Direct(Box<GroupSpec>, Box<GroupSpec>),
    Semidirect {
        normal: Box<GroupSpec>,
        complement: Box<GroupSpec>,
        action: Vec<Vec<Word>>,
    },
    Perm {
        degree: usize,
        gens: Vec<Vec<Vec<u32>>>,
    },
}

pub fn parse_spec(text: &str) -> Result<GroupSpec> {
    let mut p = Parser {
        s: text.as_bytes(),
        pos: 0,
    };
    let spec = p.spec()?;
    p.ws();
    if p.pos != p.s.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(spec)
}

/// Parses and builds a group with the environment's caps.
pub fn parse_group(text: &str) -> Result<Group> {
    parse_spec(text)?.build(Caps::from_env())
}

impl GroupSpec {
    pub fn build(&self, caps: Caps) -> Result<Group> {
        match self {
            GroupSpec::Cyclic(n) => products::cyclic(*n, caps),
            GroupSpec::Dihedral(n) => products::dihedral(*n, caps),
            GroupSpec::Symmetric(n) => products::symmetric(*n, caps),
            GroupSpec::Alternating(n) => products::alternating(*n, caps),
            GroupSpec::Quaternion => products::quaternion(caps),
            GroupSpec::Sl23 => products::sl23(caps),
            GroupSpec::Elementary { p, k } => products::elementary_abelian(*p, *k, caps),
            GroupSpec::Direct(a, b) => {
                let a = a.build(caps)?;
                let b = b.build(caps)?;
                products::direct_product(&a, &b, caps)
            }
            GroupSpec::Semidirect {
                normal,
                complement,
                action,
            } => {
                let n = normal.build(caps)?;
                let h = complement.build(caps)?;
                let ngens = n.generators().to_vec();
                let mut images = Vec::with_capacity(action.len());
                for block in action {
                    let mut row = Vec::with_capacity(block.len());
                    for word in block {
                        row.push(eval_word(&ngens, n.degree(), word)?);
                    }
                    images.push(row);
                }
                products::semidirect_product(&n, &h, &images, caps)
            }
            GroupSpec::Perm { degree, gens } => {
                let perms = gens
                    .iter()
                    .map(|cycles| Perm::from_cycles(*degree, cycles))
                    .collect::<Result<Vec<_>>>()?;
                Group::new(*degree, perms, caps)
            }
        }
    }
}

fn eval_word(gens: &[Perm], degree: usize, word: &Word) -> Result<Perm> {
    let mut acc = Perm::identity(degree);
    for &(g, e) in word {
        let p = gens.get(g).ok_or_else(|| {
            FlabError::BadAction(format!(
                "word uses generator '{}' but N has {} generators",
                letter(g),
                gens.len()
            ))
        })?;
        acc = acc.compose(&p.pow(e));
    }
    Ok(acc)
}

fn letter(i: usize) -> char {
    (b'a' + i as u8) as char
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

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, token: &str) -> bool {
        self.ws();
        if self.s[self.pos..].starts_with(token.as_bytes()) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{token}'")))
        }
    }

    fn number(&mut self) -> Result<usize> {
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("number out of range"))
    }

    fn signed(&mut self) -> Result<i64> {
        let neg = self.eat("-");
        let n = self.number()? as i64;
        Ok(if neg { -n } else { n })
    }

    fn spec(&mut self) -> Result<GroupSpec> {
        let mut left = self.term()?;
        loop {
            self.ws();
            let is_x = self.s.get(self.pos) == Some(&b'x')
                && self
                    .s
                    .get(self.pos + 1)
                    .is_none_or(|c| c.is_ascii_whitespace() || *c == b'(');
            if is_x {
                self.pos += 1;
            } else if !self.eat("×") {
                return Ok(left);
            }
            let right = self.term()?;
            left = GroupSpec::Direct(Box::new(left), Box::new(right));
        }
    }

    fn term(&mut self) -> Result<GroupSpec> {
        if self.eat("(") {
            let s = self.spec()?;
            self.expect(")")?;
            return Ok(s);
        }
        if self.eat("SL(2,3)") {
            return Ok(GroupSpec::Sl23);
        }
        if self.eat("Q8") {
            return Ok(GroupSpec::Quaternion);
        }
        if self.eat("sd(") {
            let normal = self.spec()?;
            self.expect(",")?;
            let complement = self.spec()?;
            self.expect(",")?;
            let action = self.action()?;
            self.expect(")")?;
            return Ok(GroupSpec::Semidirect {
                normal: Box::new(normal),
                complement: Box::new(complement),
                action,
            });
        }
        if self.eat("perm(") {
            let degree = self.number()?;
            let mut gens = Vec::new();
            while self.eat(";") {
                gens.push(self.cycles()?);
            }
            self.expect(")")?;
            return Ok(GroupSpec::Perm { degree, gens });
        }
        if self.eat("E(") {
            let p = self.number()?;
            self.expect("^")?;
            let k = self.number()?;
            self.expect(")")?;
            return Ok(GroupSpec::Elementary { p, k });
        }
        let kind = self.peek();
        match kind {
            Some(b'C' | b'D' | b'S' | b'A') => {
                self.pos += 1;
                if !self.s.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                    return Err(self.err("expected a number right after the family letter"));
                }
                let n = self.number()?;
                Ok(match kind.unwrap() {
                    b'C' => GroupSpec::Cyclic(n),
                    b'D' => GroupSpec::Dihedral(n),
                    b'S' => GroupSpec::Symmetric(n),
                    _ => GroupSpec::Alternating(n),
                })
            }
            _ => Err(self.err("expected a group spec")),
        }
    }

    fn cycles(&mut self) -> Result<Vec<Vec<u32>>> {
        let mut out = Vec::new();
        while self.peek() == Some(b'(') {
            self.pos += 1;
            let mut cycle = Vec::new();
            loop {
                match self.peek() {
                    Some(b')') => {
                        self.pos += 1;
                        break;
                    }
                    Some(b',') => self.pos += 1,
                    _ => cycle.push(self.number()? as u32),
                }
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        Ok(out)
    }

    fn action(&mut self) -> Result<Vec<Vec<Word>>> {
        self.expect("[")?;
        let mut blocks = Vec::new();
        if self.eat("]") {
            return Ok(blocks);
        }
        loop {
            let mut block = vec![self.word()?];
            while self.eat(",") {
                block.push(self.word()?);
            }
            blocks.push(block);
            if self.eat("]") {
                return Ok(blocks);
            }
            self.expect(";")?;
        }
    }

    fn word(&mut self) -> Result<Word> {
        if self.eat("1") {
            return Ok(Vec::new());
        }
        let mut word = Vec::new();
        loop {
            match self.peek() {
                Some(c @ b'a'..=b'w') => {
                    self.pos += 1;
                    let exp = if self.eat("^") { self.signed()? } else { 1 };
                    word.push(((c - b'a') as usize, exp));
                }
                _ => return Err(self.err("expected a generator letter")),
            }
            if !self.eat("*") {
                return Ok(word);
            }
        }
    }
}

fn write_word(f: &mut fmt::Formatter<'_>, w: &Word) -> fmt::Result {
    if w.is_empty() {
        return write!(f, "1");
    }
    for (i, &(g, e)) in w.iter().enumerate() {
        if i > 0 {
            write!(f, "*")?;
        }
        write!(f, "{}", letter(g))?;
        if e != 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "C{n}"),
            GroupSpec::Dihedral(n) => write!(f, "D{n}"),
            GroupSpec::Symmetric(n) => write!(f, "S{n}"),
            GroupSpec::Alternating(n) => write!(f, "A{n}"),
            GroupSpec::Quaternion => write!(f, "Q8"),
            GroupSpec::Sl23 => write!(f, "SL(2,3)"),
            GroupSpec::Elementary { p, k } => write!(f, "E({p}^{k})"),
            GroupSpec::Direct(a, b) => {
                write!(f, "{a} x ")?;
                if matches!(**b, GroupSpec::Direct(..)) {
                    write!(f, "({b})")
                } else {
                    write!(f, "{b}")
                }
            }
            GroupSpec::Semidirect {
                normal,
                complement,
                action,
            } => {
                write!(f, "sd({normal},{complement},[")?;
                for (i, block) in action.iter().enumerate() {
                    if i > 0 {
                        write!(f, ";")?;
                    }
                    for (j, w) in block.iter().enumerate() {
                        if j > 0 {
                            write!(f, ",")?;
                        }
                        write_word(f, w)?;
                    }
                }
                write!(f, "])")
            }
            GroupSpec::Perm { degree, gens } => {
                write!(f, "perm({degree}")?;
                for cycles in gens {
                    write!(f, "; ")?;
                    if cycles.is_empty() {
                        write!(f, "()")?;
                    }
                    for c in cycles {
                        let pts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                        write!(f, "({})", pts.join(" "))?;
                    }
                }
                write!(f, ")")
            }
        }
    }
}
