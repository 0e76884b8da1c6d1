//! Command-line front end. Every command prints one JSON report; the exit
//! code is 0 when all flags pass, 1 when one fails and 2 on bad input.

use crate::error::Error;
use crate::finrack::{
    conjugation_rack, left_translation, two_group_from_crossed_module, z2_z3_crossed_module, CrossedModule, FinAction,
    FinRack, Strict2Group,
};
use crate::forge;
use crate::leibniz2::{check_central, check_leibniz2, FlatLeibniz, Leibniz2Algebra};
use crate::rack2::{check_linear_2rack, decategorify_rack, FlatRack, Linear2Rack};
use crate::ratmat::{Mat, Rat};
use crate::report::Report;
use crate::split::{is_leibniz_section, make_splitting, rack_from_splitting, solutions_coincide};
use crate::zte::{decategorify_solution, from_central_leibniz, from_linear_2rack, leibniz_square, rack_square, verify_ybe, verify_zte, ZteSolution};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::time::Instant;

pub const REPORT_VERSION: u64 = 1;

#[derive(Parser, Debug)]
#[command(name = "tetra", version, about = "Exact checks for Leibniz 2-algebras, linear 2-racks and tetrahedron solutions")]
pub struct Cli {
    /// Omit the timing field so reports are byte-stable.
    #[arg(long, global = true)]
    pub no_timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Leibniz2,
    Rack2,
    FlatLeibniz,
    FlatRack,
    Finrack,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Source {
    Leibniz2,
    Rack2,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the structure checker for one file.
    Check { kind: Kind, file: PathBuf },
    /// Build the tetrahedron solution of a central Leibniz 2-algebra or a linear 2-rack.
    BuildZte {
        #[arg(long = "from", value_enum)]
        from: Source,
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    VerifyZte { file: PathBuf },
    /// Reads `{"dim": k, "B": [[..]]}`.
    VerifyYbe { file: PathBuf },
    /// Decategorify the solution built from the input.
    Decat {
        #[arg(long = "from", value_enum)]
        from: Source,
        file: PathBuf,
        /// Also compare against the flat formula.
        #[arg(long)]
        square: bool,
    },
    /// Reads a central Leibniz 2-algebra with a `sigma0` matrix.
    Split { file: PathBuf },
    #[command(subcommand)]
    Finrack(FinCommand),
    #[command(subcommand)]
    Forge(ForgeCommand),
}

#[derive(Subcommand, Debug)]
pub enum FinCommand {
    Check { file: PathBuf },
    /// Without a file the Z/2-Z/3 crossed module is used.
    #[command(name = "build-2group")]
    Build2group {
        file: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Conjugation 2-rack of a 2-group action; left translation by default.
    Conjugation {
        file: PathBuf,
        #[arg(long)]
        action: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum ForgeCommand {
    Sample {
        #[arg(long, default_value = "leibniz2")]
        kind: String,
        #[arg(long, value_parser = parse_dims)]
        dims: (usize, usize),
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        bound: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_dims(s: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected U,W")?;
    let p = |x: &str| x.trim().parse::<usize>().map_err(|e| e.to_string());
    Ok((p(a)?, p(b)?))
}

/// Command outcome before it is wrapped into the report envelope.
struct Outcome {
    report: Report,
    extra: Vec<(&'static str, Value)>,
}

impl Outcome {
    fn of(report: Report) -> Outcome {
        Outcome { report, extra: Vec::new() }
    }

    fn with(mut self, k: &'static str, v: Value) -> Outcome {
        self.extra.push((k, v));
        self
    }
}

type Res<T> = std::result::Result<T, Error>;

fn read(path: &Path) -> Res<Value> {
    let s = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&s).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, v: &Value) -> Res<()> {
    let s = serde_json::to_string_pretty(v).expect("json");
    std::fs::write(path, s + "\n").map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn rat_vec(v: &Value, key: &str, n: usize) -> Res<Vec<Rat>> {
    let x = v.get(key).ok_or_else(|| Error::Input(format!("missing field {key}")))?;
    let e: Vec<Rat> = serde_json::from_value(x.clone()).map_err(|e| Error::Input(format!("{key}: {e}")))?;
    if e.len() != n {
        return Err(Error::Shape(format!("{key} must have length {n}")));
    }
    Ok(e)
}

fn load_leibniz(v: &Value) -> Res<(Leibniz2Algebra, Option<Vec<Rat>>)> {
    Leibniz2Algebra::from_json(v)
}

fn central_of(e: Option<Vec<Rat>>) -> Res<Vec<Rat>> {
    e.ok_or_else(|| Error::Input("a central object is required".into()))
}

fn check_leibniz_with_central(l: &Leibniz2Algebra, e: Option<&[Rat]>) -> Report {
    let mut rep = check_leibniz2(l);
    if let Some(e) = e {
        rep.set("central", check_central(l, e));
    }
    rep
}

fn build(from: Source, v: &Value) -> Res<(ZteSolution, Report)> {
    match from {
        Source::Leibniz2 => {
            let (l, e) = load_leibniz(v)?;
            let e = central_of(e)?;
            let rep = check_leibniz_with_central(&l, Some(&e));
            if !rep.passed() {
                return Err(Error::Structure(format!("input fails {:?}", rep.failed_flags())));
            }
            Ok((from_central_leibniz(&l, &e)?, rep))
        }
        Source::Rack2 => {
            let rk = Linear2Rack::from_json(v)?;
            let rep = check_linear_2rack(&rk);
            if !rep.passed() {
                return Err(Error::Structure(format!("input fails {:?}", rep.failed_flags())));
            }
            Ok((from_linear_2rack(&rk)?, rep))
        }
    }
}

fn exec(cmd: &Command) -> Res<Outcome> {
    match cmd {
        Command::Check { kind, file } => {
            let v = read(file)?;
            let rep = match kind {
                Kind::Leibniz2 => {
                    let (l, e) = load_leibniz(&v)?;
                    check_leibniz_with_central(&l, e.as_deref())
                }
                Kind::Rack2 => check_linear_2rack(&Linear2Rack::from_json(&v)?),
                Kind::FlatLeibniz => {
                    let b = v.get("bracket").ok_or_else(|| Error::Input("missing field bracket".into()))?;
                    let n = json_dim(&v)?;
                    let g = FlatLeibniz::new(Mat::from_json(b, n, n * n)?)?;
                    let mut rep = g.leibniz_report();
                    if v.get("central").is_some() {
                        rep.set("central", g.is_central(&rat_vec(&v, "central", n)?));
                    }
                    rep
                }
                Kind::FlatRack => load_flat_rack(&v)?.check(),
                Kind::Finrack => FinRack::from_json(&v)?.check(),
            };
            Ok(Outcome::of(rep))
        }
        Command::BuildZte { from, file, out } => {
            let (sol, rep) = build(*from, &read(file)?)?;
            let o = Outcome::of(rep);
            Ok(match out {
                Some(p) => {
                    write(p, &sol.to_json())?;
                    o.with("out", json!(p.display().to_string()))
                }
                None => o.with("solution", sol.to_json()),
            })
        }
        Command::VerifyZte { file } => Ok(Outcome::of(verify_zte(&ZteSolution::from_json(&read(file)?)?))),
        Command::VerifyYbe { file } => {
            let v = read(file)?;
            let k = json_dim(&v)?;
            let b = Mat::from_json(v.get("B").ok_or_else(|| Error::Input("missing field B".into()))?, k * k, k * k)?;
            let mut rep = Report::new();
            rep.set("ybe", verify_ybe(&b, k)?);
            Ok(Outcome::of(rep))
        }
        Command::Decat { from, file, square } => {
            let v = read(file)?;
            let (sol, _) = build(*from, &v)?;
            let (ybe, mut rep) = decategorify_solution(&sol);
            if *square {
                let sq = match from {
                    Source::Leibniz2 => {
                        let (l, e) = load_leibniz(&v)?;
                        leibniz_square(&l, &central_of(e)?)?
                    }
                    Source::Rack2 => rack_square(&Linear2Rack::from_json(&v)?)?,
                };
                rep.absorb("", sq);
            }
            let mut o = Outcome::of(rep).with("dim", json!(ybe.dim)).with("Bbar", ybe.bbar.to_json());
            if *from == Source::Rack2 {
                let (flat, _, _, _) = decategorify_rack(&Linear2Rack::from_json(&v)?);
                o = o.with("flat_rack", flat_rack_json(&flat));
            }
            Ok(o)
        }
        Command::Split { file } => {
            let v = read(file)?;
            let (l, e) = load_leibniz(&v)?;
            let e = central_of(e)?;
            let n = l.space().dim_obj();
            if n == 0 {
                return Err(Error::Input("splitting needs dim U ≥ 1".into()));
            }
            let s0 = Mat::from_json(v.get("sigma0").ok_or_else(|| Error::Input("missing field sigma0".into()))?, n, n - 1)?;
            let sp = make_splitting(&l, &e, &s0)?;
            let mut rep = Report::new();
            rep.set("homomorphism", sp.is_homomorphism());
            let mut o = Outcome::of(Report::new())
                .with("c", sp.c.to_json())
                .with("leibniz_section", json!(is_leibniz_section(&sp)));
            if sp.is_homomorphism() {
                let rk = rack_from_splitting(&sp)?;
                rep.absorb("rack_", check_linear_2rack(&rk));
                rep.absorb("coincide_", solutions_coincide(&sp)?);
                o = o.with("rack", rk.to_json());
            }
            o.report = rep;
            Ok(o)
        }
        Command::Finrack(FinCommand::Check { file }) => Ok(Outcome::of(FinRack::from_json(&read(file)?)?.check())),
        Command::Finrack(FinCommand::Build2group { file, out }) => {
            let cm = match file {
                Some(f) => CrossedModule::from_json(&read(f)?)?,
                None => z2_z3_crossed_module(),
            };
            let mut rep = Report::new();
            rep.absorb("crossed_", cm.check());
            if !rep.passed() {
                return Ok(Outcome::of(rep));
            }
            let g2 = two_group_from_crossed_module(&cm)?;
            rep.absorb("", g2.check());
            emit(Outcome::of(rep), "two_group", g2.to_json(), out)
        }
        Command::Finrack(FinCommand::Conjugation { file, action, out }) => {
            let g2 = Strict2Group::from_json(&read(file)?)?;
            let (x, f) = match action {
                None => left_translation(&g2),
                Some(p) => {
                    let v = read(p)?;
                    let x = crate::finrack::FinCat::from_json(v.get("space").ok_or_else(|| Error::Input("missing field space".into()))?)?;
                    let f = FinAction::from_json(&g2, &x, &v)?;
                    (x, f)
                }
            };
            let (cat, lhd) = conjugation_rack(&g2, &x, &f)?;
            let rack = FinRack::strict(cat, lhd);
            emit(Outcome::of(rack.check()), "rack", rack.to_json(), out)
        }
        Command::Forge(ForgeCommand::Sample { kind, dims, seed, bound, out }) => {
            let s = forge::sample(kind, *seed, *dims, *bound)?;
            let mut rep = Report::new();
            match &s {
                forge::Sample::Leibniz2 { algebra, central } => rep.absorb("", check_leibniz_with_central(algebra, Some(central))),
                forge::Sample::Rack(rk) => rep.absorb("", check_linear_2rack(rk)),
            }
            emit(Outcome::of(rep), "sample", s.to_json(), out)
        }
    }
}

fn emit(o: Outcome, key: &'static str, v: Value, out: &Option<PathBuf>) -> Res<Outcome> {
    Ok(match out {
        Some(p) => {
            write(p, &v)?;
            o.with("out", json!(p.display().to_string()))
        }
        None => o.with(key, v),
    })
}

fn json_dim(v: &Value) -> Res<usize> {
    v.get("dim").and_then(Value::as_u64).map(|x| x as usize).ok_or_else(|| Error::Input("missing or invalid field dim".into()))
}

fn load_flat_rack(v: &Value) -> Res<FlatRack> {
    let n = json_dim(v)?;
    let m = |k: &str, r: usize, c: usize| -> Res<Mat> { Mat::from_json(v.get(k).ok_or_else(|| Error::Input(format!("missing field {k}")))?, r, c) };
    Ok(FlatRack { delta: m("delta", n * n, n)?, eps: m("eps", 1, n)?, lhd: m("lhd", n, n * n)?, lhd_inv: m("lhd_inv", n, n * n)? })
}

fn flat_rack_json(f: &FlatRack) -> Value {
    json!({"dim": f.dim(), "delta": f.delta.to_json(), "eps": f.eps.to_json(), "lhd": f.lhd.to_json(), "lhd_inv": f.lhd_inv.to_json()})
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Check { .. } => "check",
        Command::BuildZte { .. } => "build-zte",
        Command::VerifyZte { .. } => "verify-zte",
        Command::VerifyYbe { .. } => "verify-ybe",
        Command::Decat { .. } => "decat",
        Command::Split { .. } => "split",
        Command::Finrack(FinCommand::Check { .. }) => "finrack check",
        Command::Finrack(FinCommand::Build2group { .. }) => "finrack build-2group",
        Command::Finrack(FinCommand::Conjugation { .. }) => "finrack conjugation",
        Command::Forge(_) => "forge sample",
    }
}

/// Runs a parsed command; returns the exit code and the report.
pub fn run_cli(cli: &Cli) -> (i32, Value) {
    let t = Instant::now();
    let mut out = json!({"version": REPORT_VERSION, "command": command_name(&cli.command)});
    let code = match exec(&cli.command) {
        Ok(o) => {
            let passed = o.report.passed();
            out["passed"] = json!(passed);
            let r = o.report.to_json();
            for (k, v) in r.as_object().expect("report object") {
                out[k.as_str()] = v.clone();
            }
            for (k, v) in o.extra {
                out[k] = v;
            }
            if passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let code = match e {
                Error::Structure(_) | Error::Sampling(_) => 1,
                _ => 2,
            };
            out["passed"] = json!(false);
            out["error"] = json!(e.to_string());
            code
        }
    };
    if !cli.no_timing {
        out["timing_ms"] = json!(t.elapsed().as_millis() as u64);
    }
    (code, out)
}

/// Parses `args` (program name first) and runs. Usage errors give exit 2.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => {
            let (code, v) = run_cli(&cli);
            (code, serde_json::to_string_pretty(&v).expect("json") + "\n")
        }
        Err(e) => {
            use clap::error::ErrorKind;
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => (0, e.to_string()),
                _ => (2, json!({"version": REPORT_VERSION, "passed": false, "error": e.to_string()}).to_string() + "\n"),
            }
        }
    }
}
