//! Check drivers: one row per corpus group, both sides computed independently.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;

use super::corpus::{Corpus, CorpusEntry};
use super::lemmas;
use super::report::{CheckReport, Row, Witness};
use crate::error::{FlabError, Result};
use crate::formations::{boundary_counterexample_search, FormationExpr};
use crate::hypercenter::{f_hypercenter, Method};
use crate::intersections::{o_pi_prime_up, Analysis, SubgroupFunctor};
use crate::primes::PrimeSet;
use crate::products;
use crate::series;
use crate::subgroup::Subgroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckName {
    BaerA1,
    CorA4,
    TheoremA,
    TheoremB,
    Prop1,
    Prop2,
    Sidorov,
    Lemmas,
    Boundary,
    DeltaPhi,
}

impl CheckName {
    pub const ALL: [CheckName; 10] = [
        CheckName::BaerA1,
        CheckName::CorA4,
        CheckName::TheoremA,
        CheckName::TheoremB,
        CheckName::Prop1,
        CheckName::Prop2,
        CheckName::Sidorov,
        CheckName::Lemmas,
        CheckName::Boundary,
        CheckName::DeltaPhi,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::BaerA1 => "baer-a1",
            CheckName::CorA4 => "cor-a4",
            CheckName::TheoremA => "theorem-a",
            CheckName::TheoremB => "theorem-b",
            CheckName::Prop1 => "prop1",
            CheckName::Prop2 => "prop2",
            CheckName::Sidorov => "sidorov",
            CheckName::Lemmas => "lemmas",
            CheckName::Boundary => "boundary",
            CheckName::DeltaPhi => "delta-phi",
        }
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckName {
    type Err = FlabError;

    fn from_str(s: &str) -> Result<CheckName> {
        CheckName::ALL.into_iter().find(|c| c.as_str() == s).ok_or_else(|| {
            let names: Vec<&str> = CheckName::ALL.iter().map(|c| c.as_str()).collect();
            FlabError::Usage(format!("unknown check `{s}` (expected one of {})", names.join(", ")))
        })
    }
}

/// Optional overrides; unset fields fall back to each check's defaults.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckParams {
    pub formation: Option<FormationExpr>,
    pub partition: Option<FormationExpr>,
    pub sigma: Option<SubgroupFunctor>,
    /// Recorded in the report parameters.
    pub max_order: u64,
    /// When false, `elapsed_ms` is reported as 0 so output is reproducible.
    pub timing: bool,
    pub seed: u64,
}

impl Default for CheckParams {
    fn default() -> Self {
        CheckParams {
            formation: None,
            partition: None,
            sigma: None,
            max_order: super::corpus::DEFAULT_MAX_ORDER,
            timing: true,
            seed: 0,
        }
    }
}

const PROBE_NOTE: &str = "no equality guarantee, negative-case probe";

/// Named partitions of the primes into blocks.
pub const PARTITION_PRESETS: [(&str, &str); 4] = [
    ("singletons", "cross[]"),
    ("23", "cross[{2,3}]"),
    ("23-5", "cross[{2,3};{5}]"),
    ("25-37", "cross[{2,5};{3,7}]"),
];

/// A preset name, a `cross[...]` expression, or bare blocks such as `{2,3};{5}`.
pub fn parse_partition(text: &str) -> Result<FormationExpr> {
    let t = text.trim();
    if let Some((_, expr)) = PARTITION_PRESETS.iter().find(|(name, _)| *name == t) {
        return FormationExpr::parse(expr);
    }
    let expr = if t.starts_with("cross") {
        t.to_string()
    } else {
        format!("cross[{t}]")
    };
    match FormationExpr::parse(&expr)? {
        f @ FormationExpr::Cross(_) => Ok(f),
        other => Err(FlabError::Usage(format!("`{other}` is not a partition"))),
    }
}

fn default_formations() -> Vec<FormationExpr> {
    ["N", "U", "Gpi{2,3}", "cross[{2,3};{5}]"]
        .iter()
        .map(|s| FormationExpr::parse(s).expect("catalog formation"))
        .collect()
}

fn preset_partitions() -> Vec<FormationExpr> {
    PARTITION_PRESETS
        .iter()
        .map(|(_, e)| FormationExpr::parse(e).expect("preset"))
        .collect()
}

fn sigmas(p: &CheckParams) -> Vec<SubgroupFunctor> {
    match &p.sigma {
        Some(s) => vec![s.clone()],
        None => vec![SubgroupFunctor::Sylow, SubgroupFunctor::CyclicPrimary],
    }
}

/// Runs `row` on every entry in parallel; errors become failing rows.
fn rows_for(corpus: &Corpus, row: impl Fn(&CorpusEntry, &Analysis) -> Result<Option<Row>> + Sync) -> Vec<Row> {
    corpus
        .entries
        .par_iter()
        .filter_map(|e| {
            let result = e.analysis().and_then(|a| row(e, &a));
            match result {
                Ok(r) => r,
                Err(err) => Some(Row::error(&e.name, e.order(), &err)),
            }
        })
        .collect()
}

struct Ctx<'a> {
    check: CheckName,
    corpus: &'a Corpus,
    params: &'a CheckParams,
}

impl Ctx<'_> {
    fn report(
        &self,
        extra: &[(&str, String)],
        asserted: bool,
        row: impl Fn(&CorpusEntry, &Analysis) -> Result<Option<Row>> + Sync,
    ) -> CheckReport {
        let start = Instant::now();
        let rows = rows_for(self.corpus, row);
        let mut params = BTreeMap::new();
        params.insert("max_order".to_string(), self.params.max_order.to_string());
        params.insert("groups".to_string(), self.corpus.len().to_string());
        for (k, v) in extra {
            params.insert(k.to_string(), v.clone());
        }
        if !asserted {
            params.insert("note".to_string(), PROBE_NOTE.to_string());
        }
        let elapsed = if self.params.timing {
            start.elapsed().as_millis() as u64
        } else {
            0
        };
        CheckReport::new(self.check.as_str(), params, rows, asserted, elapsed)
    }
}

fn z(a: &Analysis, f: &FormationExpr) -> Result<Subgroup> {
    a.hypercenter(f, Method::Auto)
}

/// Runs one check, producing one report per parameter set.
pub fn run_check(name: CheckName, params: &CheckParams, corpus: &Corpus) -> Result<Vec<CheckReport>> {
    let ctx = Ctx {
        check: name,
        corpus,
        params,
    };
    let formations = params
        .formation
        .clone()
        .map(|f| vec![f])
        .unwrap_or_else(default_formations);
    let reports = match name {
        CheckName::BaerA1 => {
            let nil = FormationExpr::Nil;
            vec![ctx.report(&[("formation", nil.to_string())], true, |e, a| {
                let lhs = a.sylow_normalizer_intersection();
                let rhs = z(a, &nil)?;
                Ok(Some(Row::compare(
                    &e.name,
                    e.order(),
                    &lhs,
                    &rhs,
                    "Sylow normalizers vs Z_N",
                )))
            })]
        }
        CheckName::CorA4 => {
            let f = params.formation.clone().unwrap_or(FormationExpr::Nil);
            let asserted = f == FormationExpr::Nil;
            vec![ctx.report(&[("formation", f.to_string())], asserted, |e, a| {
                let lhs = a.int_f(&f);
                let rhs = z(a, &f)?;
                Ok(Some(Row::compare(&e.name, e.order(), &lhs, &rhs, "Int vs Z")))
            })]
        }
        CheckName::TheoremA => {
            let parts = match (&params.partition, &params.formation) {
                (Some(p), _) => vec![p.clone()],
                (None, Some(f @ FormationExpr::Cross(_))) => vec![f.clone()],
                (None, Some(FormationExpr::Nil)) => vec![FormationExpr::Cross(Vec::new())],
                (None, Some(other)) => {
                    return Err(FlabError::Usage(format!(
                        "theorem-a needs a partition, got formation {other}"
                    )))
                }
                (None, None) => preset_partitions(),
            };
            parts
                .iter()
                .map(|part| {
                    let asserted = part.solpi_blocks().is_empty();
                    ctx.report(&[("partition", part.to_string())], asserted, |e, a| {
                        let blocks = part.blocks_for(e.order()).expect("cross");
                        let c = a.cayley();
                        let lhs = blocks
                            .iter()
                            .map(|b| a.ni_f(&b.formation()))
                            .fold(a.whole(), |acc, h| acc.intersection(c, &h));
                        let rhs = z(a, part)?;
                        Ok(Some(Row::compare(
                            &e.name,
                            e.order(),
                            &lhs,
                            &rhs,
                            "meet of NI over blocks vs Z",
                        )))
                    })
                })
                .collect()
        }
        CheckName::TheoremB => {
            let fs = match (&params.formation, &params.partition) {
                (Some(f), _) => vec![f.clone()],
                (None, Some(p)) => vec![p.clone()],
                (None, None) => {
                    let mut v = preset_partitions();
                    v.push(FormationExpr::Supersoluble);
                    v
                }
            };
            let sig = sigmas(params);
            let sig_label: Vec<String> = sig.iter().map(|s| s.to_string()).collect();
            fs.iter()
                .map(|f| {
                    let asserted = f.is_gpi_cross();
                    let extra = [("formation", f.to_string()), ("sigma", sig_label.join(","))];
                    ctx.report(&extra, asserted, |e, a| {
                        let rhs = z(a, f)?;
                        let sis: Vec<(String, Subgroup)> =
                            sig.iter().map(|s| (s.to_string(), a.si_sigma(f, s))).collect();
                        let lhs = &sis[0].1;
                        let mut row = Row::compare(&e.name, e.order(), lhs, &rhs, "");
                        let bad: Vec<String> = sis
                            .iter()
                            .filter(|(_, si)| *si != rhs)
                            .map(|(s, si)| format!("SI_{s} has order {}", si.order()))
                            .collect();
                        row.pass = bad.is_empty();
                        row.witness = (!row.pass).then(|| {
                            let worst = sis.iter().find(|(_, si)| *si != rhs).expect("mismatch");
                            Witness::of(
                                &worst.1,
                                &rhs,
                                format!("{} vs Z of order {}", bad.join(", "), rhs.order()),
                            )
                        });
                        Ok(Some(row))
                    })
                })
                .collect()
        }
        CheckName::Prop1 => formations
            .iter()
            .map(|f| {
                ctx.report(&[("formation", f.to_string())], true, |e, a| {
                    let lhs = o_pi_prime_up(a.cayley(), &a.ni_f(f), f);
                    let rhs = a.int_f(f);
                    Ok(Some(Row::compare(&e.name, e.order(), &lhs, &rhs, "O^pi'(NI) vs Int")))
                })
            })
            .collect(),
        CheckName::Prop2 => {
            let mut out = Vec::new();
            for f in &formations {
                for s in sigmas(params) {
                    let extra = [("formation", f.to_string()), ("sigma", s.to_string())];
                    out.push(ctx.report(&extra, true, |e, a| prop2_row(e, a, f, &s).map(Some)));
                }
            }
            out
        }
        CheckName::Sidorov => (1..=3)
            .map(|r| {
                let f = FormationExpr::NilPow(r);
                ctx.report(
                    &[("formation", f.to_string()), ("method", Method::Oracle.to_string())],
                    true,
                    |e, a| {
                        if !series::is_soluble(a.cayley()) {
                            return Ok(None);
                        }
                        let lhs = a.int_f(&f);
                        let rhs = a.hypercenter(&f, Method::Oracle)?;
                        Ok(Some(Row::compare(&e.name, e.order(), &lhs, &rhs, "Int vs Z (oracle)")))
                    },
                )
            })
            .collect(),
        CheckName::Lemmas => formations
            .iter()
            .map(|f| {
                ctx.report(
                    &[("formation", f.to_string()), ("seed", params.seed.to_string())],
                    true,
                    |e, a| {
                        let out = lemmas::run_suite(a, f, params.seed)?;
                        Ok(Some(out.into_row(&e.name, e.order())))
                    },
                )
            })
            .collect(),
        CheckName::Boundary => {
            let f = params.formation.clone().unwrap_or(FormationExpr::Supersoluble);
            if !f.has_local_definition() {
                return Err(FlabError::Usage(format!(
                    "boundary search needs a local definition; {f} has none"
                )));
            }
            let mut r = ctx.report(
                &[("formation", f.to_string()), ("universe", "all".into())],
                false,
                |e, a| boundary_row(e, a, &f),
            );
            let found = r.summary.fail;
            let label = if found == 0 {
                format!("no counterexample up to order {}", params.max_order)
            } else {
                format!("{found} groups violate the boundary condition")
            };
            r.params.insert("result".into(), label);
            vec![r]
        }
        CheckName::DeltaPhi => formations
            .iter()
            .map(|f| {
                ctx.report(&[("formation", f.to_string())], true, |e, a| {
                    let lhs = a.delta_f(f);
                    let rhs = delta_phi_rhs(a, f)?;
                    Ok(Some(Row::compare(
                        &e.name,
                        e.order(),
                        &lhs,
                        &rhs,
                        "Delta vs preimage of Z(G/Phi)",
                    )))
                })
            })
            .collect(),
    };
    Ok(reports)
}

/// Preimage of `Z_F(G/Φ(G))`.
pub fn delta_phi_rhs(a: &Analysis, f: &FormationExpr) -> Result<Subgroup> {
    let c = a.cayley();
    let q = products::quotient(a.group(), &a.frattini())?;
    let zq = f_hypercenter(f, q.group.cayley()?, Method::Auto, a.caps())?;
    Ok(Subgroup::from_set(c, q.preimage(c.len(), &zq)))
}

/// Join of all normal `N` with every `H ∈ Σ(G)` `F`-subnormal in `HN`,
/// compared against `SI_Σ^F(G)`; the row also requires `SI` itself to have that property.
fn prop2_row(e: &CorpusEntry, a: &Analysis, f: &FormationExpr, s: &SubgroupFunctor) -> Result<Row> {
    let l = a.lattice();
    let c = a.cayley();
    let members = a.functor_members(s);
    let good = |n: &Subgroup| {
        members.iter().all(|&h| {
            let hn = l.get(h).join(c, n);
            a.is_f_subnormal(f, h, a.idx(&hn))
        })
    };
    let lhs = l
        .normal_subgroups()
        .into_iter()
        .map(|i| l.get(i))
        .filter(|n| good(n))
        .fold(Subgroup::trivial(c), |acc, n| acc.join(c, n));
    let rhs = a.si_sigma(f, s);
    let mut row = Row::compare(&e.name, e.order(), &lhs, &rhs, "product of good normal subgroups vs SI");
    if row.pass && !good(&rhs) {
        row.pass = false;
        row.witness = Some(Witness::of(&lhs, &rhs, "some member is not F-subnormal in H.SI"));
    }
    Ok(row)
}

fn boundary_row(e: &CorpusEntry, a: &Analysis, f: &FormationExpr) -> Result<Option<Row>> {
    let found = boundary_counterexample_search(f, &PrimeSet::all(), [(e.name.as_str(), a.lattice())])?;
    let primes: Vec<String> = found.iter().map(|(_, p)| p.to_string()).collect();
    let pass = primes.is_empty();
    Ok(Some(Row {
        group: e.name.clone(),
        order: e.order(),
        lhs_order: primes.len(),
        rhs_order: 0,
        pass,
        witness: (!pass).then(|| {
            Witness::note(format!(
                "outside {f}, all maximal subgroups in F(p) for p = {}",
                primes.join(",")
            ))
        }),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::parse_spec;
    use crate::verify::corpus::{build_corpus, corpus_from_specs};

    fn small(specs: &[&str]) -> Corpus {
        let specs: Vec<_> = specs.iter().map(|s| parse_spec(s).unwrap()).collect();
        corpus_from_specs(400, &specs).unwrap()
    }

    #[test]
    fn names_round_trip() {
        for c in CheckName::ALL {
            assert_eq!(c.as_str().parse::<CheckName>().unwrap(), c);
        }
        assert!(matches!("nope".parse::<CheckName>(), Err(FlabError::Usage(_))));
    }

    #[test]
    fn partitions() {
        assert_eq!(
            parse_partition("{2,3};{5}").unwrap(),
            FormationExpr::parse("cross[{2,3};{5}]").unwrap()
        );
        assert_eq!(parse_partition("singletons").unwrap(), FormationExpr::Cross(Vec::new()));
        assert!(parse_partition("cross[{2,3}:spi]").unwrap().solpi_blocks().len() == 1);
        assert!(parse_partition("U").is_err());
    }

    #[test]
    fn theorem_a_named_rows() {
        let corpus = small(&["sd(C5,C4,[a^2])", "S3 x C5"]);
        let params = CheckParams {
            partition: Some(parse_partition("{2,3};{5}").unwrap()),
            ..CheckParams::default()
        };
        let r = &run_check(CheckName::TheoremA, &params, &corpus).unwrap()[0];
        assert!(r.asserted && r.summary.fail == 0);
        let frob = &r.rows[0];
        assert_eq!((frob.order, frob.lhs_order, frob.rhs_order), (20, 1, 1));
        let s3c5 = &r.rows[1];
        assert_eq!((s3c5.order, s3c5.lhs_order, s3c5.rhs_order), (30, 30, 30));
    }

    #[test]
    fn supersoluble_theorem_b_is_a_probe_with_witness() {
        let corpus = small(&["sd(E(7^2),S3,[b,a;b,a^6*b^6])", "S4"]);
        let params = CheckParams {
            formation: Some(FormationExpr::Supersoluble),
            sigma: Some(SubgroupFunctor::Sylow),
            ..CheckParams::default()
        };
        let r = &run_check(CheckName::TheoremB, &params, &corpus).unwrap()[0];
        assert!(!r.asserted && !r.failed());
        let w = r.failing_rows().next().expect("witness");
        assert_eq!((w.order, w.rhs_order), (294, 1));
        assert!(w.witness.is_some());
    }

    #[test]
    fn all_checks_pass_on_a_small_corpus() {
        let corpus = build_corpus(24, &[]).unwrap();
        let params = CheckParams {
            max_order: 24,
            ..CheckParams::default()
        };
        for name in CheckName::ALL {
            for r in run_check(name, &params, &corpus).unwrap() {
                let bad: Vec<_> = r.failing_rows().map(|x| (&x.group, &x.witness)).collect();
                assert!(!r.failed(), "{name} {:?}: {bad:?}", r.params);
            }
        }
    }

    #[test]
    fn boundary_finds_a4() {
        let corpus = small(&["A4", "S3"]);
        let r = &run_check(CheckName::Boundary, &CheckParams::default(), &corpus).unwrap()[0];
        let a4 = r.rows.iter().find(|x| x.group == "A4").unwrap();
        assert!(!a4.pass);
        assert!(a4.witness.as_ref().unwrap().note.contains('3'));
        assert!(!r.failed());
    }
}
