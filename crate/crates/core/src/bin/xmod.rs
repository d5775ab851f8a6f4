use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use xmod::action::semidirect_product;
use xmod::commutator::{
    cooperator, difference_commutator, huq_commutator, relative_commutator, twisted_commutator,
    twisted_cooperator, CommutatorResult,
};
use xmod::graph::{graph_of_precrossed, is_connected, is_multiplicative, is_star_multiplicative, pi0};
use xmod::hom::{Cospan, Homomorphism};
use xmod::io::{catalog, IoError, Workspace};
use xmod::limits::{set_size_cap, SIZE_CAP_ENV};
use xmod::verify::verify;
use xmod::xmod::{analyze, census, check_pcm, check_pff, CensusSummary, PrecrossedCandidate};

#[derive(Parser)]
#[command(name = "xmod", version, about = "Relative commutators and crossed modules of finite groups")]
struct Cli {
    /// Input file in the workspace format; may be repeated.
    #[arg(short, long = "input", global = true)]
    input: Vec<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Largest group order that may be constructed.
    #[arg(long, env = SIZE_CAP_ENV, global = true)]
    size_cap: Option<usize>,
    /// Worker threads for `census` and `verify-paper`.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Tsv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Huq,
    Twisted,
    Difference,
    Relative,
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    Pcm,
    Pff,
    Xmod,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphQuery {
    Pi0,
    Connected,
    StarMult,
    Mult,
}

#[derive(clap::Args)]
struct Pair {
    /// Left homomorphism.
    #[arg(long)]
    f: String,
    /// Right homomorphism.
    #[arg(long)]
    g: String,
    /// Action whose split extension supplies the cospan.
    #[arg(long)]
    action: Option<String>,
    /// Left leg of an explicit cospan.
    #[arg(long, requires = "right")]
    left: Option<String>,
    /// Right leg of an explicit cospan.
    #[arg(long, requires = "left")]
    right: Option<String>,
}

#[derive(clap::Args)]
struct Candidate {
    #[arg(long)]
    boundary: String,
    #[arg(long)]
    action: String,
}

#[derive(Subcommand)]
enum Command {
    /// Print a group, homomorphism or action.
    Show { name: String },
    /// Print the split extension of an action.
    Semidirect { action: String },
    /// Print a commutator subgroup.
    Commutator {
        #[arg(long, value_enum)]
        kind: Kind,
        #[command(flatten)]
        pair: Pair,
    },
    /// Print the cooperator table, or "none".
    Cooperator {
        #[command(flatten)]
        pair: Pair,
    },
    /// Check the precrossed, Peiffer or crossed module conditions.
    Check {
        #[arg(value_enum)]
        what: Check,
        #[command(flatten)]
        cand: Candidate,
    },
    /// Analyze every boundary and action between two groups.
    Census {
        #[arg(long)]
        x: String,
        #[arg(long)]
        b: String,
        /// Write the candidates to a workspace file.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Queries on the reflexive graph of a precrossed module.
    Graph {
        #[arg(value_enum)]
        query: GraphQuery,
        #[command(flatten)]
        cand: Candidate,
    },
    /// Run the consistency suite and report each statement.
    VerifyPaper {
        #[arg(long, default_value_t = 8)]
        max_order: usize,
    },
}

enum Failure {
    Io(IoError),
    Lib(xmod::Error),
    Other(i32, String),
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure::Io(e)
    }
}

impl From<xmod::Error> for Failure {
    fn from(e: xmod::Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn report(&self) -> (i32, String) {
        match self {
            Failure::Io(e) => (e.exit_code(), e.to_string()),
            Failure::Lib(e @ (xmod::Error::SearchBudgetExceeded(_) | xmod::Error::SizeCapExceeded { .. })) => {
                (3, e.to_string())
            }
            Failure::Lib(e) => (1, e.to_string()),
            Failure::Other(code, msg) => (*code, msg.clone()),
        }
    }
}

struct Env {
    ws: Workspace,
    cat: Workspace,
    tsv: bool,
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

impl Env {
    fn hom(&self, name: &str) -> Result<Homomorphism, Failure> {
        Ok(self.ws.resolve_hom(name, &self.cat)?.hom)
    }

    fn candidate(&self, c: &Candidate) -> Result<PrecrossedCandidate, Failure> {
        let d = self.hom(&c.boundary)?;
        let xi = self.ws.resolve_action(&c.action, &self.cat)?.action;
        Ok(PrecrossedCandidate::new(d, xi)?)
    }

    fn cospan(&self, p: &Pair, f: &Homomorphism, g: &Homomorphism) -> Result<Cospan, Failure> {
        if let (Some(l), Some(r)) = (&p.left, &p.right) {
            return Ok(Cospan::new(self.hom(l)?, self.hom(r)?)?);
        }
        if let Some(a) = &p.action {
            let xi = self.ws.resolve_action(a, &self.cat)?.action;
            return Ok(semidirect_product(&xi)?.cospan());
        }
        Ok(Cospan::product(f.source(), g.source())?)
    }

    fn rows(&self, rows: &[(&str, String)]) -> String {
        let mut out = String::new();
        for (k, v) in rows {
            if self.tsv {
                let _ = writeln!(out, "{k}\t{v}");
            } else {
                let _ = writeln!(out, "{k}: {v}");
            }
        }
        out
    }
}

fn commutator_report(env: &Env, r: &CommutatorResult) -> String {
    let v = &r.value;
    if env.tsv {
        return env.rows(&[
            ("elements", join(v.elements())),
            ("order", v.order().to_string()),
            ("normal", yes(r.is_normal()).into()),
        ]);
    }
    let order = if v.is_trivial() { "order 1 (trivial)".to_string() } else { format!("order {}", v.order()) };
    format!("elements: {}\n{order}\nnormal: {}\n", join(v.elements()), yes(r.is_normal()))
}

fn run(cli: &Cli, env: &Env) -> Result<(String, i32), Failure> {
    let out = match &cli.command {
        Command::Show { name } => {
            let mut w = Workspace::new();
            if let Ok(g) = env.ws.resolve_group(name, &env.cat) {
                w.add_group(name, &g);
            } else if let Ok(h) = env.ws.resolve_hom(name, &env.cat) {
                w.homs.insert(name.clone(), h);
            } else if let Ok(a) = env.ws.resolve_action(name, &env.cat) {
                w.actions.insert(name.clone(), a);
            } else {
                return Err(IoError::Unresolved { kind: "name", name: name.clone() }.into());
            }
            w.serialize()
        }
        Command::Semidirect { action } => {
            let a = env.ws.resolve_action(action, &env.cat)?;
            let ext = semidirect_product(&a.action)?;
            let mid = format!("{}:{}", a.acted, a.actor);
            let mut w = Workspace::new();
            w.add_group(&a.acted, ext.kernel_object());
            w.add_group(&a.actor, ext.base());
            w.add_group(&mid, ext.middle());
            w.add_hom("k", &a.acted, &mid, ext.k().clone());
            w.add_hom("d", &mid, &a.actor, ext.d().clone());
            w.add_hom("e", &a.actor, &mid, ext.e().clone());
            w.serialize()
        }
        Command::Commutator { kind, pair } => {
            let f = env.hom(&pair.f)?;
            let g = env.hom(&pair.g)?;
            let r = match kind {
                Kind::Huq => huq_commutator(&f, &g)?,
                Kind::Difference => difference_commutator(&f, &g)?,
                Kind::Twisted => {
                    let name = pair
                        .action
                        .as_ref()
                        .ok_or_else(|| Failure::Other(2, "--kind twisted needs --action".into()))?;
                    twisted_commutator(&env.ws.resolve_action(name, &env.cat)?.action, &f, &g)?
                }
                Kind::Relative => {
                    if pair.left.is_none() {
                        return Err(Failure::Other(2, "--kind relative needs --left and --right".into()));
                    }
                    relative_commutator(&env.cospan(pair, &f, &g)?, &f, &g)?
                }
            };
            commutator_report(env, &r)
        }
        Command::Cooperator { pair } => {
            let f = env.hom(&pair.f)?;
            let g = env.hom(&pair.g)?;
            let phi = match (&pair.action, &pair.left) {
                (Some(a), None) => twisted_cooperator(&env.ws.resolve_action(a, &env.cat)?.action, &f, &g)?,
                _ => cooperator(&env.cospan(pair, &f, &g)?, &f, &g)?,
            };
            match phi {
                Some(phi) => format!("{}\n", join(phi.map())),
                None => "none\n".into(),
            }
        }
        Command::Check { what, cand } => {
            let cand = env.candidate(cand)?;
            match what {
                Check::Pcm => {
                    let (ok, c) = check_pcm(&cand)?;
                    let mut rows = vec![("pcm", yes(ok).to_string())];
                    if let Some(c) = c {
                        rows.push(("connecting-map", join(c.map())));
                    }
                    env.rows(&rows)
                }
                Check::Pff => env.rows(&[("pff", yes(check_pff(&cand)?).into())]),
                Check::Xmod => {
                    let r = analyze(&cand)?;
                    if env.tsv {
                        env.rows(&[
                            ("pcm", yes(r.pcm).into()),
                            ("pff", yes(r.pff).into()),
                            ("crossed", yes(r.is_crossed).into()),
                            ("class", r.classification.to_string()),
                        ])
                    } else {
                        format!(
                            "pcm: {}\npff: {}\ncrossed: {}; class: {}\n",
                            yes(r.pcm),
                            yes(r.pff),
                            yes(r.is_crossed),
                            r.classification
                        )
                    }
                }
            }
        }
        Command::Census { x, b, emit } => {
            let gx = env.ws.resolve_group(x, &env.cat)?;
            let gb = env.ws.resolve_group(b, &env.cat)?;
            let entries = census(&gx, &gb)?;
            let mut out = String::new();
            if env.tsv {
                out.push_str("boundary\taction\tpcm\tpff\tclass\n");
            }
            for e in &entries {
                let r = &e.report;
                if env.tsv {
                    let _ = writeln!(
                        out,
                        "d{}\txi{}\t{}\t{}\t{}",
                        e.boundary_index,
                        e.action_index,
                        yes(r.pcm),
                        yes(r.pff),
                        r.classification
                    );
                } else {
                    let _ = writeln!(
                        out,
                        "d{} [{}] xi{}: pcm {}, pff {}, class {}",
                        e.boundary_index,
                        join(e.candidate.boundary().map()),
                        e.action_index,
                        yes(r.pcm),
                        yes(r.pff),
                        r.classification
                    );
                }
            }
            let s = CensusSummary::of(&entries);
            let summary = [
                ("candidates", s.candidates),
                ("precrossed", s.precrossed),
                ("crossed", s.crossed),
                ("normal-subobject", s.normal_subobject),
                ("central-extension", s.central_extension),
                ("general", s.general),
            ];
            for (k, v) in summary {
                if env.tsv {
                    let _ = writeln!(out, "summary\t{k}\t{v}");
                } else {
                    let _ = writeln!(out, "{k}: {v}");
                }
            }
            if let Some(path) = emit {
                let mut w = Workspace::new();
                w.add_group(x, &gx);
                w.add_group(b, &gb);
                for e in &entries {
                    let d = format!("d{}", e.boundary_index);
                    if !w.homs.contains_key(&d) {
                        w.add_hom(&d, x, b, e.candidate.boundary().clone());
                    }
                    let a = format!("xi{}", e.action_index);
                    if !w.actions.contains_key(&a) {
                        w.add_action(&a, b, x, e.candidate.action().clone());
                    }
                }
                fs::write(path, w.serialize())
                    .map_err(|e| Failure::Other(1, format!("cannot write {}: {e}", path.display())))?;
            }
            out
        }
        Command::Graph { query, cand } => {
            let cand = env.candidate(cand)?;
            let g = graph_of_precrossed(&cand)?;
            match query {
                GraphQuery::Pi0 => {
                    let q = pi0(&g)?;
                    let mut w = Workspace::new();
                    w.add_group("pi0", &q.group);
                    format!("{}{}", env.rows(&[("order", q.group.order().to_string())]), w.serialize())
                }
                GraphQuery::Connected => env.rows(&[("connected", yes(is_connected(&g)?).into())]),
                GraphQuery::StarMult => {
                    env.rows(&[("star-multiplicative", yes(is_star_multiplicative(&g)?).into())])
                }
                GraphQuery::Mult => env.rows(&[("multiplicative", yes(is_multiplicative(&g)?).into())]),
            }
        }
        Command::VerifyPaper { max_order } => {
            let reports = verify(*max_order);
            let mut out = String::new();
            if env.tsv {
                out.push_str("statement\tinstances\tfailures\tmillis\n");
            }
            for r in &reports {
                if env.tsv {
                    let _ = writeln!(out, "{}\t{}\t{}\t{}", r.id, r.instances, r.failures, r.millis);
                } else {
                    let _ = writeln!(
                        out,
                        "{} {:<32} instances {:>7}  failures {:>3}  {:>6} ms",
                        if r.passed() { "PASS" } else { "FAIL" },
                        r.id,
                        r.instances,
                        r.failures,
                        r.millis
                    );
                    if let Some(f) = &r.first_failure {
                        let _ = writeln!(out, "     first failure: {f}");
                    }
                }
            }
            let code = if reports.iter().all(|r| r.passed()) { 0 } else { 1 };
            return Ok((out, code));
        }
    };
    Ok((out, 0))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cat = catalog();
    if let Some(cap) = cli.size_cap {
        set_size_cap(cap);
    }
    if let Some(jobs) = cli.jobs {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global();
    }
    let mut ws = Workspace::new();
    for path in &cli.input {
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("xmod: cannot read {}: {e}", path.display());
                return ExitCode::from(1);
            }
        };
        if let Err(e) = ws.parse_into(&text, Some(&cat)) {
            eprintln!("xmod: {}: {e}", path.display());
            return ExitCode::from(e.exit_code() as u8);
        }
    }
    let env = Env { ws, cat, tsv: cli.format == Format::Tsv };
    match run(&cli, &env) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code as u8)
        }
        Err(f) => {
            let (code, msg) = f.report();
            eprintln!("xmod: {msg}");
            ExitCode::from(code as u8)
        }
    }
}
