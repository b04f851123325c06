//! Command-line front end. `run` returns the exit code and both output
//! streams so the binary stays a thin wrapper.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::arrow::pipeline::{do_undo, pipelines};
use crate::arrow::{self, arrow_eq, ArrowInstance, ArrowValue, Carrier};
use crate::effects::info::{info_create, info_erase, info_instance};
use crate::effects::rstate::{rewrite, rewriter_instance, rstate_get, rstate_instance, rstate_update, GroupSpec};
use crate::effects::serializer::default_codec;
use crate::effects::{suite, Bounds, INSTANCES, TOKEN_LEN};
use crate::pinj::{self, apply, Direction, PartialIso};
use crate::profcheck::fixture::{parse_fixture, BUNDLED};
use crate::profcheck::run_fixture;
use crate::values::{enumerate, Ty, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "revarrow",
    version,
    about = "Law checking for reversible effects and inverse arrows"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Debug, Args)]
struct BoundArgs {
    /// Atom count of the finite base type.
    #[arg(long, default_value_t = 2)]
    fin: usize,
    /// Maximum sequence length.
    #[arg(long, default_value_t = 2)]
    maxlen: usize,
    /// Serializer alphabet size.
    #[arg(long, default_value_t = 4)]
    alphabet: usize,
}

impl BoundArgs {
    fn bounds(&self) -> Result<Bounds, String> {
        if self.fin == 0 || self.maxlen == 0 || self.alphabet == 0 {
            return Err("bounds must be positive".into());
        }
        Ok(Bounds {
            fin: self.fin,
            max_len: self.maxlen,
            alphabet: self.alphabet,
        })
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the arrow laws for an effect instance.
    Laws {
        /// Effect name.
        effect: Option<String>,
        #[arg(long = "effect", conflicts_with = "effect")]
        effect_flag: Option<String>,
        /// Run every registered effect instance.
        #[arg(long, conflicts_with_all = ["effect", "effect_flag"])]
        all: bool,
        #[command(flatten)]
        bounds: BoundArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run a helper arrow forward, backward, and through do/undo.
    Demo {
        which: DemoKind,
        /// Modulus of the rewriter group.
        #[arg(long = "mod", default_value_t = 3)]
        modulus: usize,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Check `p ; inv p ; p = p` on deterministic random pipelines.
    Doundo {
        effect: Option<String>,
        #[arg(long = "effect", conflicts_with = "effect")]
        effect_flag: Option<String>,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Verify a category/monoid fixture.
    Profcheck {
        path: Option<PathBuf>,
        #[arg(long = "fixture", conflicts_with = "path")]
        fixture: Option<PathBuf>,
        /// A bundled fixture by name.
        #[arg(long, conflicts_with_all = ["path", "fixture"])]
        bundled: Option<String>,
        /// Every bundled fixture.
        #[arg(long, conflicts_with_all = ["path", "fixture", "bundled"])]
        all: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DemoKind {
    Serialize,
    State,
    Rewriter,
    Info,
}

/// Exit code and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(code: i32, stdout: String) -> Self {
        Outcome {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(msg: impl Into<String>) -> Self {
        Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {}\n", msg.into()),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome::ok(code, text)
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match cli.command {
        Command::Laws {
            effect,
            effect_flag,
            all,
            bounds,
            format,
        } => {
            let b = match bounds.bounds() {
                Ok(b) => b,
                Err(e) => return Outcome::usage(e),
            };
            let names: Vec<String> = if all {
                INSTANCES.iter().map(|s| s.to_string()).collect()
            } else {
                match effect.or(effect_flag) {
                    Some(n) => vec![n],
                    None => return Outcome::usage("an effect name is required (or --all)"),
                }
            };
            cmd_laws(&names, b, format)
        }
        Command::Demo { which, modulus, bounds } => match bounds.bounds() {
            Ok(b) => cmd_demo(which, modulus, b),
            Err(e) => Outcome::usage(e),
        },
        Command::Doundo {
            effect,
            effect_flag,
            count,
            bounds,
        } => {
            let b = match bounds.bounds() {
                Ok(b) => b,
                Err(e) => return Outcome::usage(e),
            };
            match effect.or(effect_flag) {
                Some(n) => cmd_doundo(&n, count, b),
                None => Outcome::usage("an effect name is required"),
            }
        }
        Command::Profcheck {
            path,
            fixture,
            bundled,
            all,
            format,
        } => {
            let sources: Vec<(String, String)> = if all {
                BUNDLED.iter().map(|(n, t)| (n.to_string(), t.to_string())).collect()
            } else if let Some(name) = bundled {
                match BUNDLED.iter().find(|(n, _)| *n == name) {
                    Some((n, t)) => vec![(n.to_string(), t.to_string())],
                    None => {
                        let known: Vec<&str> = BUNDLED.iter().map(|(n, _)| *n).collect();
                        return Outcome::usage(format!(
                            "unknown bundled fixture `{name}`; known: {}",
                            known.join(", ")
                        ));
                    }
                }
            } else {
                match path.or(fixture) {
                    Some(p) => match std::fs::read_to_string(&p) {
                        Ok(t) => vec![(p.display().to_string(), t)],
                        Err(e) => return Outcome::usage(format!("{}: {e}", p.display())),
                    },
                    None => return Outcome::usage("a fixture path is required (or --bundled NAME, --all)"),
                }
            };
            cmd_profcheck(&sources, format)
        }
    }
}

fn cmd_laws(names: &[String], b: Bounds, format: Format) -> Outcome {
    let mut out = String::new();
    let mut code = EXIT_OK;
    for name in names {
        let s = match suite(name, b) {
            Ok(s) => s,
            Err(e) => return Outcome::usage(e.to_string()),
        };
        let report = s.run();
        match format {
            Format::Text => {
                out.push_str(&report.render_text());
                if !s.expected_failures.is_empty() {
                    let designed: Vec<String> = s.expected_failures.iter().map(|c| c.to_string()).collect();
                    let _ = writeln!(
                        out,
                        "designed to fail {{{}}}: {}",
                        designed.join(","),
                        if s.meets_expectation(&report) {
                            "matched"
                        } else {
                            "NOT matched"
                        }
                    );
                }
            }
            Format::Machine => out.push_str(&report.render_machine()),
        }
        if !report.all_pass() {
            code = EXIT_FAIL;
        }
    }
    Outcome::ok(code, out)
}

fn cmd_doundo(name: &str, count: usize, b: Bounds) -> Outcome {
    let s = match suite(name, b) {
        Ok(s) => s,
        Err(e) => return Outcome::usage(e.to_string()),
    };
    let inst = s.instance.as_ref();
    let x = Ty::fin(b.fin);
    let base = vec![x.clone(), Ty::prod(x.clone(), x), Ty::Unit];
    let ps = match pipelines(inst, &s.primitives, base, 0x5eed, count) {
        Ok(ps) => ps,
        Err(e) => return Outcome::ok(EXIT_FAIL, format!("pipeline generation failed: {e}\n")),
    };
    let mut out = String::new();
    let mut failures = 0;
    for (k, p) in ps.iter().enumerate() {
        match do_undo(inst, p) {
            Ok(None) => {}
            Ok(Some(d)) => {
                failures += 1;
                let _ = writeln!(out, "pipeline {k} {}: at {}: {} vs {}", p.label, d.input, d.lhs, d.rhs);
            }
            Err(e) => {
                failures += 1;
                let _ = writeln!(out, "pipeline {k} {}: {e}", p.label);
            }
        }
    }
    let _ = writeln!(out, "doundo effect={name} pipelines={} failures={failures}", ps.len());
    Outcome::ok(if failures == 0 { EXIT_OK } else { EXIT_FAIL }, out)
}

fn show(v: &Option<Value>) -> String {
    v.as_ref().map_or("undefined".into(), |v| v.to_string())
}

fn core(a: &ArrowValue) -> &PartialIso {
    match &a.carrier {
        Carrier::Iso(p) => p,
        Carrier::Gh(g) => &g.core,
    }
}

/// Runs `p` forward on every input, `inv p` on each output, and checks
/// `p ; inv p ; p = p`.
fn transcript(out: &mut String, inst: &dyn ArrowInstance, p: &ArrowValue) -> bool {
    let ip = match arrow::inv(inst, p) {
        Ok(i) => i,
        Err(e) => {
            let _ = writeln!(out, "inv failed: {e}");
            return false;
        }
    };
    let _ = writeln!(out, "arrow {} : {}", p.label, p.signature());
    for v in enumerate(core(p).dom()) {
        let w = apply(core(p), &v, Direction::Forward).ok().flatten();
        let back = w
            .as_ref()
            .and_then(|w| apply(core(&ip), w, Direction::Forward).ok().flatten());
        let _ = writeln!(out, "  {v} -> {} -> {}", show(&w), show(&back));
    }
    let ok = matches!(do_undo(inst, p), Ok(None));
    let _ = writeln!(out, "do/undo {}", if ok { "ok" } else { "FAILED" });
    ok
}

fn cmd_demo(which: DemoKind, modulus: usize, b: Bounds) -> Outcome {
    let mut out = String::new();
    let x = Ty::fin(b.fin);
    let ok = match which {
        DemoKind::Serialize => {
            let codec = default_codec(b.alphabet, TOKEN_LEN);
            let t = Ty::prod(x.clone(), x.clone());
            match codec.serialize(&t) {
                Ok(ser) => {
                    let de = pinj::dagger(&ser);
                    let mut ok = true;
                    for v in enumerate(&t) {
                        let s = apply(&ser, &v, Direction::Forward).ok().flatten();
                        let back = s
                            .as_ref()
                            .and_then(|s| apply(&de, s, Direction::Forward).ok().flatten());
                        ok &= back.as_ref() == Some(&v);
                        let _ = writeln!(out, "  {v} -> {} -> {}", show(&s), show(&back));
                    }
                    if let Some(bad) = codec.non_canonical(&t) {
                        let d = apply(&de, &bad, Direction::Forward).ok().flatten();
                        ok &= d.is_none();
                        let _ = writeln!(out, "  non-canonical {bad} -> {}", show(&d));
                    }
                    let _ = writeln!(out, "round trip {}", if ok { "ok" } else { "FAILED" });
                    ok
                }
                Err(e) => {
                    let _ = writeln!(out, "{e}");
                    false
                }
            }
        }
        DemoKind::State => {
            let st = rstate_instance(x.clone());
            let n = b.fin;
            let succ = PartialIso::from_fn(x.clone(), x.clone(), "succ", |v| match v {
                Value::Atom(i) => Some(Value::Atom((i + 1) % n)),
                _ => None,
            })
            .expect("bijection");
            let p = rstate_update(&st, &succ, &x).and_then(|u| arrow::seq(&st, &u, &rstate_get(&st, &x)));
            match p {
                Ok(p) => transcript(&mut out, &st, &p),
                Err(e) => {
                    let _ = writeln!(out, "{e}");
                    false
                }
            }
        }
        DemoKind::Rewriter => {
            if modulus == 0 {
                return Outcome::usage("--mod must be positive");
            }
            let g = GroupSpec::cyclic(modulus);
            let rw = rewriter_instance(g);
            let one = Value::Atom(1 % modulus);
            let step = match rewrite(&rw, &one, &Ty::Unit) {
                Ok(s) => s,
                Err(e) => return Outcome::ok(EXIT_FAIL, format!("{e}\n")),
            };
            let mut acc = arrow::arr(&rw, &pinj::identity(&Ty::Unit)).expect("pure");
            let mut state = Value::Atom(0);
            let _ = writeln!(out, "store {state}");
            for k in 1..=modulus {
                acc = arrow::seq(&rw, &acc, &step).expect("typed");
                let input = Value::pair(Value::Unit, Value::Atom(0));
                let r = apply(core(&acc), &input, Direction::Forward).ok().flatten();
                state = r
                    .as_ref()
                    .and_then(|v| v.as_pair().map(|p| p.1.clone()))
                    .unwrap_or(Value::Unit);
                let _ = writeln!(out, "after {k} x rewrite({one}): store {state}");
            }
            let back = state == Value::Atom(0);
            let id = arrow::arr(&rw, &pinj::identity(&Ty::Unit)).expect("pure");
            let same = arrow_eq(&rw, &acc, &id);
            let _ = writeln!(out, "returned to start: {}", if back && same { "yes" } else { "NO" });
            let t = transcript(&mut out, &rw, &step);
            back && same && t
        }
        DemoKind::Info => {
            let inst = info_instance();
            let erase = inst.value(info_erase(&x), "erase");
            let create = inst.value(info_create(&x), "create");
            let id_unit = arrow::arr(&inst, &pinj::identity(&Ty::Unit)).expect("pure");
            let id_x = arrow::arr(&inst, &pinj::identity(&x)).expect("pure");
            let ce = arrow::seq(&inst, &create, &erase).expect("typed");
            let ec = arrow::seq(&inst, &erase, &create).expect("typed");
            let ce_id = arrow_eq(&inst, &ce, &id_unit);
            let ec_id = arrow_eq(&inst, &ec, &id_x);
            let _ = writeln!(out, "create;erase = arr id: {ce_id}");
            let _ = writeln!(out, "erase;create = arr id: {ec_id}");
            let inv_ok = arrow::inv(&inst, &erase)
                .map(|i| arrow_eq(&inst, &i, &create))
                .unwrap_or(false);
            let _ = writeln!(out, "inv erase = create: {inv_ok}");
            let t = transcript(&mut out, &inst, &erase);
            ce_id && !ec_id && inv_ok && t
        }
    };
    Outcome::ok(if ok { EXIT_OK } else { EXIT_FAIL }, out)
}

fn cmd_profcheck(sources: &[(String, String)], format: Format) -> Outcome {
    let mut out = String::new();
    let mut code = EXIT_OK;
    for (name, text) in sources {
        let fx = match parse_fixture(text) {
            Ok(f) => f,
            Err(e) => return Outcome::usage(format!("{name}: {e}")),
        };
        let report = run_fixture(&fx);
        match format {
            Format::Text => out.push_str(&report.render_text()),
            Format::Machine => out.push_str(&report.render_machine()),
        }
        if !report.expectation_met() {
            code = EXIT_FAIL;
        }
    }
    Outcome::ok(code, out)
}
