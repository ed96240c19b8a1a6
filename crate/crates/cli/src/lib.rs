//! The `semipower` command line: argument parsing, dispatch into
//! `semipower-core`, and text or JSON reports.
//!
//! Exit codes: 0 on success, 1 when the inputs are well formed but the
//! operation fails (invalid semigroup, window too large, failed `verify`), 2
//! when the command line itself cannot be parsed.

use std::ffi::OsString;
use std::io::Write;

use clap::{ArgMatches, CommandFactory, FromArgMatches};
use semipower_core::lab::{check_lemmas, SearchConfig};
use semipower_core::power::audit_quotient;
use semipower_core::{
    element_automorphism_search, phi, phi_inv, search_automorphisms, sigma,
    sigma_restriction_obstruction, EquivClassRep, NaturalSet, NumericalSemigroup, WindowCarrier,
};
use serde::Serialize;

mod args;
pub mod report;

use args::{Cli, Command, SemigroupArgs, WindowArgs};
use report::*;

enum Failure {
    Usage(String),
    Domain(String),
}

fn domain(e: impl std::fmt::Display) -> Failure {
    Failure::Domain(e.to_string())
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let matches = match Cli::command().try_get_matches_from(args) {
        Ok(m) => m,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return 2;
            }
            let _ = write!(out, "{}", e.render());
            return 0;
        }
    };
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return 2;
        }
    };
    let sets = ordered_sets(&matches);
    match dispatch(cli, sets) {
        Ok((text, passed)) => {
            let _ = out.write_all(text.as_bytes());
            if passed {
                0
            } else {
                1
            }
        }
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
        Err(Failure::Domain(m)) => {
            let _ = writeln!(err, "error: {m}");
            1
        }
    }
}

/// `--set` and `--interval` values in command-line order.
fn ordered_sets(matches: &ArgMatches) -> Vec<NaturalSet> {
    let Some((_, sub)) = matches.subcommand() else {
        return Vec::new();
    };
    let mut found: Vec<(usize, NaturalSet)> = Vec::new();
    for id in ["sets", "interval"] {
        // absent for verbs that take no sets
        let Ok(Some(values)) = sub.try_get_many::<NaturalSet>(id) else {
            continue;
        };
        let indices = sub.indices_of(id).into_iter().flatten();
        found.extend(indices.zip(values.cloned()));
    }
    found.sort_by_key(|(i, _)| *i);
    found.into_iter().map(|(_, s)| s).collect()
}

fn emit<R: Serialize + std::fmt::Display>(json: bool, report: &R) -> String {
    if json {
        let mut s = serde_json::to_string(report).expect("reports serialize");
        s.push('\n');
        s
    } else {
        report.to_string()
    }
}

fn semigroup(a: &SemigroupArgs) -> Result<NumericalSemigroup, Failure> {
    match (&a.gens, &a.gaps, a.from) {
        (Some(g), _, _) => NumericalSemigroup::from_generators(g, a.monoid).map_err(domain),
        (_, Some(g), _) => NumericalSemigroup::from_complement(g, a.contains_zero).map_err(domain),
        (_, _, Some(k)) => Ok(NumericalSemigroup::interval(k)),
        _ => Err(Failure::Usage(String::from(
            "no semigroup given; use --gens, --gaps or --from",
        ))),
    }
}

fn need_sets(sets: &[NaturalSet], at_least: usize) -> Result<(), Failure> {
    if sets.len() < at_least {
        return Err(Failure::Usage(format!(
            "expected at least {at_least} set(s) via --set or --interval, got {}",
            sets.len()
        )));
    }
    Ok(())
}

fn carrier(
    s: &NumericalSemigroup,
    w: &WindowArgs,
    reduced: bool,
) -> Result<WindowCarrier, Failure> {
    WindowCarrier::enumerate(s, w.bound, reduced, w.max_carrier).map_err(domain)
}

fn dispatch(cli: Cli, sets: Vec<NaturalSet>) -> Result<(String, bool), Failure> {
    let json = cli.json;
    let ok = |text| Ok((text, true));
    match cli.command {
        Command::Info {
            semigroup: sa,
            bound,
            reduced,
        } => {
            let s = semigroup(&sa)?;
            if reduced && !s.contains_zero() {
                return Err(Failure::Domain(String::from(
                    "--reduced needs a semigroup that contains 0",
                )));
            }
            let window = bound.map(|b| (b, reduced, WindowCarrier::expected_size(&s, b, reduced)));
            ok(emit(json, &InfoReport::new(&s, window)))
        }
        Command::Sumset { .. } => {
            need_sets(&sets, 2)?;
            let mut sum = sets[0].clone();
            for x in &sets[1..] {
                sum = sum.add(x).map_err(domain)?;
            }
            ok(emit(json, &SumsetReport::new(&sets, &sum)))
        }
        Command::Gap { .. } => {
            need_sets(&sets, 1)?;
            ok(emit(json, &GapReport::new(&sets)))
        }
        Command::Sigma { .. } => {
            need_sets(&sets, 1)?;
            let pairs: Vec<_> = sets.iter().map(|x| (x.clone(), sigma(x))).collect();
            ok(emit(json, &ImageReport::new("sigma", &pairs)))
        }
        Command::Phi { inverse, .. } => {
            need_sets(&sets, 1)?;
            let pairs = match inverse {
                None => sets
                    .iter()
                    .map(|x| (x.clone(), phi(x).into_inner()))
                    .collect::<Vec<_>>(),
                Some(k) => sets
                    .iter()
                    .map(|x| {
                        let rep = EquivClassRep::new(x.clone()).ok_or_else(|| {
                            Failure::Domain(format!(
                                "{x} is not a representative: it must contain 0"
                            ))
                        })?;
                        Ok((x.clone(), phi_inv(&rep, k).map_err(domain)?))
                    })
                    .collect::<Result<Vec<_>, Failure>>()?,
            };
            let name = match inverse {
                None => String::from("phi"),
                Some(k) => format!("phi-inverse {k}"),
            };
            ok(emit(json, &ImageReport::new(name, &pairs)))
        }
        Command::Search {
            semigroup: sa,
            window,
            reduced,
            mode,
        } => {
            let s = semigroup(&sa)?;
            let c = carrier(&s, &window, reduced)?;
            let mut config = SearchConfig::for_mode(mode.into());
            if window.node_limit.is_some() {
                config.node_limit = window.node_limit;
            }
            let r = search_automorphisms(&c, &config).map_err(domain)?;
            ok(emit(json, &SearchJson::from(&r)))
        }
        Command::ElementSearch {
            semigroup: sa,
            bound,
        } => {
            let s = semigroup(&sa)?;
            let r = element_automorphism_search(&s, bound).map_err(domain)?;
            ok(emit(json, &SearchJson::from(&r)))
        }
        Command::Obstruction { semigroup: sa } => {
            let s = semigroup(&sa)?;
            let o = sigma_restriction_obstruction(&s);
            ok(emit(json, &ObstructionReport::new(&s, o.as_ref())))
        }
        Command::Verify {
            semigroup: sa,
            window,
        } => {
            let s = semigroup(&sa)?;
            let c = carrier(&s, &window, false)?;
            let mut config = SearchConfig::filtered();
            if window.node_limit.is_some() {
                config.node_limit = window.node_limit;
            }
            let search = search_automorphisms(&c, &config).map_err(domain)?;
            let mut survivors = Vec::new();
            for sv in &search.survivors {
                let map = search.survivor_map(&c, sv).map_err(domain)?;
                survivors.push(SurvivorChecks {
                    class: sv.class.name().into(),
                    checks: check_lemmas(&map).iter().map(CheckJson::from).collect(),
                });
            }
            let quotient = if s.is_interval() {
                let a = audit_quotient(&c, window.max_carrier).map_err(domain)?;
                Some(QuotientJson {
                    classes: a.classes,
                    reduced_members: a.reduced_members,
                    bijective: a.bijective,
                    additivity_violations: a.additivity_violations.len(),
                    collisions: a.collisions.len(),
                })
            } else {
                None
            };
            let passed = survivors
                .iter()
                .all(|sv| sv.checks.iter().all(|c| c.outcome != "fail"))
                && quotient.as_ref().is_none_or(|q| {
                    q.bijective && q.additivity_violations == 0 && q.collisions == 0
                });
            let report = VerifyReport {
                semigroup: (&s).into(),
                bound: window.bound,
                passed,
                constraints_checked: search.constraints_checked,
                survivors,
                quotient,
            };
            Ok((emit(json, &report), passed))
        }
    }
}
