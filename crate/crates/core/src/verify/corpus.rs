//! The group corpus checks run over.

use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

use crate::error::{FlabError, Result};
use crate::group::{Caps, Group};
use crate::intersections::Analysis;
use crate::spec::{parse_spec, GroupSpec};

pub const DEFAULT_MAX_ORDER: u64 = 324;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    Builtin,
    File,
}

pub struct CorpusEntry {
    pub name: String,
    pub spec: GroupSpec,
    pub group: Arc<Group>,
    pub origin: Origin,
    analysis: OnceLock<Result<Arc<Analysis>>>,
}

impl CorpusEntry {
    pub fn new(spec: GroupSpec, group: Group, origin: Origin) -> CorpusEntry {
        CorpusEntry {
            name: spec.to_string(),
            spec,
            group: Arc::new(group),
            origin,
            analysis: OnceLock::new(),
        }
    }

    pub fn order(&self) -> u64 {
        self.group.order()
    }

    /// The entry's lattice and memo tables, built on first use.
    pub fn analysis(&self) -> Result<Arc<Analysis>> {
        self.analysis
            .get_or_init(|| Analysis::new(self.group.clone()).map(Arc::new))
            .clone()
    }
}

pub struct Corpus {
    pub entries: Vec<CorpusEntry>,
    /// Specs left out because their order exceeds the limit.
    pub skipped: Vec<String>,
}

impl Corpus {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&CorpusEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    /// Keeps only entries whose order is at most `max_order`.
    pub fn restrict(mut self, max_order: u64) -> Corpus {
        self.entries.retain(|e| e.order() <= max_order);
        self
    }
}

/// Fixed products and named groups beyond the cyclic and dihedral families.
const NAMED: &[&str] = &[
    "S3",
    "S4",
    "S5",
    "A4",
    "A5",
    "Q8",
    "SL(2,3)",
    "E(2^2)",
    "E(2^3)",
    "E(2^4)",
    "E(2^5)",
    "E(3^2)",
    "E(3^3)",
    "E(3^4)",
    "E(5^2)",
    "E(7^2)",
    "C2 x C4",
    "C2 x C6",
    "C3 x C6",
    "C4 x C4",
    "C2 x C2 x C4",
    "D8 x C2",
    "Q8 x C2",
    "D8 x C3",
    "Q8 x C3",
    "S3 x C3",
    "S3 x C5",
    "S3 x C7",
    "S3 x S3",
    "A4 x C2",
    "A4 x C3",
    "A4 x C5",
    "A4 x S3",
    "S4 x C2",
    "S4 x C3",
    "S4 x C5",
    "SL(2,3) x C2",
    "SL(2,3) x C5",
    "D8 x S3",
    "Q8 x S3",
    "S3 x D10",
    "A5 x C2",
    // metacyclic and Frobenius groups
    "sd(C3,C4,[a^-1])",
    "sd(C3,C8,[a^-1])",
    "sd(C5,C4,[a^2])",
    "sd(C5,C4,[a^-1])",
    "sd(C5,C8,[a^2])",
    "sd(C7,C3,[a^2])",
    "sd(C7,C6,[a^3])",
    "sd(C7,C9,[a^2])",
    "sd(C9,C3,[a^4])",
    "sd(C11,C5,[a^3])",
    "sd(C13,C3,[a^3])",
    "sd(C13,C4,[a^5])",
    "sd(C13,C12,[a^2])",
    "sd(C3,C4,[a^-1]) x C3",
    "sd(C5,C4,[a^2]) x C3",
    "sd(C7,C3,[a^2]) x C3",
    "sd(C7,C3,[a^2]) x C2",
    // elementary abelian normal subgroups with irreducible actions
    "sd(E(2^2),C3,[b,a*b])",
    "sd(E(2^2),C9,[b,a*b])",
    "sd(E(2^2),S3,[b,a;b,a*b])",
    "sd(E(2^2),C3,[b,a*b]) x C5",
    "sd(E(2^3),C7,[b,c,a*b])",
    "sd(E(2^4),C5,[b,c,d,a*b*c*d])",
    "sd(E(2^4),C3,[b,a*b,d,c*d])",
    "sd(E(3^2),C2,[a^2,b^2])",
    "sd(E(3^2),C4,[b,a^2])",
    "sd(E(3^2),Q8,[a*b,a*b^2;b,a^2])",
    "sd(E(3^2),S3,[b,a;b,a^2*b^2])",
    "sd(E(5^2),C3,[b,a^4*b^4])",
    "sd(E(7^2),S3,[b,a;b,a^6*b^6])",
    "sd(E(3^3),sd(E(2^2),C3,[b,a*b]),[a^2,b^2,c;a,b^2,c^2;b,c,a])",
];

/// Builtin specs in a fixed order: cyclic groups, dihedral groups, then the named list.
pub fn builtin_specs(max_order: u64) -> Vec<String> {
    let mut out: Vec<String> = (1..=max_order).map(|n| format!("C{n}")).collect();
    out.extend((6..=max_order).step_by(2).map(|n| format!("D{n}")));
    out.extend(NAMED.iter().map(|s| s.to_string()));
    out
}

fn push_spec(
    corpus: &mut Corpus,
    seen: &mut BTreeSet<String>,
    spec: GroupSpec,
    origin: Origin,
    max_order: u64,
) -> Result<()> {
    let name = spec.to_string();
    if seen.contains(&name) {
        return Ok(());
    }
    let caps = Caps {
        order_cap: max_order,
        element_cap: max_order.max(Caps::default().element_cap),
        ..Caps::from_env()
    };
    match spec.build(caps) {
        Ok(g) => {
            seen.insert(name);
            corpus.entries.push(CorpusEntry::new(spec, g, origin));
            Ok(())
        }
        Err(FlabError::OrderCap { .. }) => {
            corpus.skipped.push(name);
            Ok(())
        }
        Err(e) => Err(e),
    }
}

/// Builtin groups of order at most `max_order`, plus `extra`.
pub fn build_corpus(max_order: u64, extra: &[GroupSpec]) -> Result<Corpus> {
    let mut corpus = Corpus {
        entries: Vec::new(),
        skipped: Vec::new(),
    };
    let mut seen = BTreeSet::new();
    for s in builtin_specs(max_order) {
        push_spec(&mut corpus, &mut seen, parse_spec(&s)?, Origin::Builtin, max_order)?;
    }
    for spec in extra {
        push_spec(&mut corpus, &mut seen, spec.clone(), Origin::File, max_order)?;
    }
    sort_entries(&mut corpus.entries);
    Ok(corpus)
}

/// Only the groups in `specs`.
pub fn corpus_from_specs(max_order: u64, specs: &[GroupSpec]) -> Result<Corpus> {
    let mut corpus = Corpus {
        entries: Vec::new(),
        skipped: Vec::new(),
    };
    let mut seen = BTreeSet::new();
    for spec in specs {
        push_spec(&mut corpus, &mut seen, spec.clone(), Origin::File, max_order)?;
    }
    sort_entries(&mut corpus.entries);
    Ok(corpus)
}

fn sort_entries(entries: &mut [CorpusEntry]) {
    entries.sort_by(|a, b| (a.order(), &a.name).cmp(&(b.order(), &b.name)));
}

/// One spec per line; `#` starts a comment.
pub fn parse_corpus_file(text: &str) -> Result<Vec<GroupSpec>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let spec = parse_spec(body).map_err(|e| match e {
            FlabError::Parse { offset, message } => FlabError::Parse {
                offset,
                message: format!("line {}: {message}", lineno + 1),
            },
            other => other,
        })?;
        out.push(spec);
    }
    Ok(out)
}
