use std::ffi::OsString;
use std::ops::RangeInclusive;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::cli::format::{fingerprint, AlgebraFile};
use crate::cli::report::{Report, Table};
use crate::cochain::{
    block_checks, cohomology, delta_on_generators, ker_delta_complex, CeAlgebra, Truncation,
};
use crate::exact_linalg::eigen_split;
use crate::glie::{involutivity_check, validate_structures, Bialgebra, Check};
use crate::scenarios::{self, betti_tables, Scenario};
use crate::Error;

#[derive(Parser, Debug)]
#[command(name = "bvlie", version, about = "Shifted Lie bialgebras, Chevalley-Eilenberg cochains and BV operators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the structural identities of an algebra file.
    Verify {
        file: String,
        #[arg(long)]
        json: bool,
    },
    /// Block cohomology of C•(g) on a degree window.
    Cohomology(CohomologyArgs),
    /// B, Δ and the Ker Δ comparison on a degree window.
    BvReport {
        file: String,
        #[arg(long, allow_hyphen_values = true)]
        deg: String,
        #[arg(long)]
        s_max: i64,
        #[arg(long)]
        json: bool,
    },
    /// Build or run one of the named scenarios.
    Scenario(ScenarioArgs),
}

#[derive(Args, Debug)]
pub struct CohomologyArgs {
    pub file: String,
    #[arg(long, allow_hyphen_values = true)]
    pub deg: String,
    #[arg(long, conflicts_with = "weights", required_unless_present = "weights")]
    pub s_max: Option<i64>,
    /// Comma-separated integer weights, one per block.
    #[arg(long, num_args = 1.., allow_hyphen_values = true)]
    pub weights: Vec<String>,
    #[arg(long)]
    pub json: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Rcom,
    RcomL1,
    RcomTheta,
    Rpcom,
}

#[derive(Args, Debug)]
pub struct ScenarioArgs {
    pub kind: Kind,
    /// Line dimensions in consecutive degrees from 0, e.g. 1,1,1.
    #[arg(long)]
    pub dims: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub theta: Option<String>,
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long)]
    pub trunc: Option<usize>,
    #[arg(long, conflicts_with = "run", required_unless_present = "run")]
    pub emit: bool,
    #[arg(long)]
    pub run: bool,
    #[arg(long)]
    pub json: bool,
}

/// Captured result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Output {
    fn usage(msg: impl Into<String>) -> Self {
        Output { stdout: String::new(), stderr: msg.into(), code: 2 }
    }

    fn report(r: &Report, json: bool) -> Self {
        let stdout = if json { r.to_json() + "\n" } else { r.to_text() };
        Output { stdout, stderr: String::new(), code: if r.all_pass() { 0 } else { 1 } }
    }
}

fn parse_range(s: &str) -> Result<RangeInclusive<i64>, Error> {
    let (a, b) = s.split_once("..").ok_or_else(|| Error::Parse(format!("expected a..b, got {s}")))?;
    let p = |x: &str| x.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad degree {x}")));
    let (a, b) = (p(a)?, p(b)?);
    if a > b {
        return Err(Error::Parse(format!("empty degree window {s}")));
    }
    Ok(a..=b)
}

fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>, Error> {
    s.split(',')
        .map(|x| x.trim().parse::<T>().map_err(|_| Error::Parse(format!("bad list entry {x} in {s}"))))
        .collect()
}

fn load(file: &str) -> Result<Bialgebra, Error> {
    let text = std::fs::read_to_string(file).map_err(|e| Error::Parse(format!("{file}: {e}")))?;
    AlgebraFile::parse(&text)?.to_bialgebra()
}

fn error_check(name: &str, e: &Error) -> Check {
    Check { name: name.into(), pass: false, details: e.to_string(), witness: None }
}

pub fn verify(b: &Bialgebra) -> Report {
    let mut r = Report::new(fingerprint(b));
    r.checks = validate_structures(b).checks;
    let ce = CeAlgebra::new(b);
    r.checks.push(crate::cochain::compatibility_check(&ce));
    let mut t = Table::new("summary", "whole algebra", &["property", "value"]);
    t.push(vec!["name".into(), b.name.clone()]);
    t.push(vec!["dimension".into(), b.dim().to_string()]);
    t.push(vec!["shift n".into(), b.shift_n.to_string()]);
    let yn = if involutivity_check(b) { "yes" } else { "no" };
    t.push(vec!["involutive".into(), yn.into()]);
    r.tables.push(t);
    r
}

pub fn cohomology_report(b: &Bialgebra, degrees: RangeInclusive<i64>, trunc: &Truncation) -> Report {
    let mut r = Report::new(fingerprint(b));
    let ce = CeAlgebra::new(b);
    match cohomology(&ce, degrees.clone(), trunc) {
        Ok(t) => {
            let details = format!("degrees {}..{}, {}", degrees.start(), degrees.end(), trunc);
            r.checks.push(Check { name: "cohomology".into(), pass: true, details, witness: None });
            r.tables.extend(betti_tables(&ce, &t));
        }
        Err(e) => r.checks.push(error_check("cohomology", &e)),
    }
    r
}

pub fn bv_report(b: &Bialgebra, degrees: RangeInclusive<i64>, s_max: i64) -> Report {
    let mut r = Report::new(fingerprint(b));
    let ce = CeAlgebra::new(b);
    let window = format!("degrees {}..{}, s <= {s_max}", degrees.start(), degrees.end());
    if b.shift_n % 2 != 0 {
        let e = Error::ShiftParity(format!("B needs an even shift, n = {}", b.shift_n));
        r.checks.push(error_check("BV operator", &e));
        return r;
    }
    let mut summary = Table::new("summary", window.clone(), &["property", "value"]);
    if b.has_trivial_cobracket() {
        summary.push(vec!["B".into(), "B = 0 (trivial cobracket)".into()]);
        summary.push(vec!["involutive".into(), "yes".into()]);
        summary.push(vec!["Δ".into(), "Δ = 0".into()]);
        summary.push(vec!["differential BV".into(), "exact".into()]);
        r.checks.push(Check { name: "B² = 0".into(), pass: true, details: "B = 0".into(), witness: None });
        r.tables.push(summary);
        return r;
    }
    match block_checks(&ce, degrees.clone(), s_max) {
        Ok(cs) => r.checks.extend(cs),
        Err(e) => r.checks.push(error_check("block identities", &e)),
    }
    let involutive = involutivity_check(b);
    summary.push(vec!["involutive".into(), if involutive { "yes" } else { "no" }.into()]);
    let delta = match delta_on_generators(&ce) {
        Ok(m) => m,
        Err(e) => {
            r.checks.push(error_check("Δ on generators", &e));
            return r;
        }
    };
    let zero = delta.is_zero();
    summary.push(vec!["Δ".into(), if zero { "Δ = 0".into() } else { "Δ ≠ 0".into() }]);
    summary.push(vec!["differential BV".into(), if zero { "exact" } else { "homotopy, via Ker Δ" }.into()]);
    let mut mt = Table::new("Δ on generators", "column k is Δ(f[e_k])", &["row"]);
    mt.columns.extend((0..ce.num_generators()).map(|k| ce.generator_name(k)));
    for i in 0..ce.num_generators() {
        let mut row = vec![ce.generator_name(i)];
        row.extend((0..ce.num_generators()).map(|k| delta.get(i, k).to_string()));
        mt.push(row);
    }
    r.tables.push(summary);
    r.tables.push(mt);
    match eigen_split(&delta) {
        Ok(parts) => {
            let mut et = Table::new("Δ eigenvalues", "generators", &["eigenvalue", "multiplicity"]);
            for (l, s) in &parts {
                et.push(vec![l.to_string(), s.dim().to_string()]);
            }
            r.tables.push(et);
            r.checks.push(Check { name: "Δ semisimple".into(), pass: true, details: String::new(), witness: None });
        }
        Err(e) => {
            r.checks.push(error_check("Δ semisimple", &e));
            return r;
        }
    }
    match ker_delta_complex(&ce, degrees, &Truncation::SMax(s_max)) {
        Ok(k) => {
            let mut kt = Table::new("Ker Δ versus C", window, &["block", "betti C", "betti Ker Δ"]);
            for row in &k.rows {
                kt.push(vec![row.selector.to_string(), row.betti_full.to_string(), row.betti_ker.to_string()]);
            }
            let ok = k.quasi_isomorphic() && k.bv_restricts;
            let details = format!("B preserves Ker Δ: {}", k.bv_restricts);
            r.checks.push(Check { name: "Ker Δ quasi-isomorphism".into(), pass: ok, details, witness: None });
            r.tables.push(kt);
        }
        Err(e) => r.checks.push(error_check("Ker Δ quasi-isomorphism", &e)),
    }
    r
}

fn build_scenario(a: &ScenarioArgs) -> Result<Scenario, Error> {
    let need = |x: bool, what: &str| if x { Ok(()) } else { Err(Error::Parse(format!("missing --{what}"))) };
    match a.kind {
        Kind::Rcom | Kind::RcomL1 => {
            need(a.dims.is_some(), "dims")?;
            let ns: Vec<usize> = parse_list(a.dims.as_deref().unwrap_or_default())?;
            let dims: Vec<(i64, usize)> = ns.into_iter().enumerate().map(|(d, n)| (d as i64, n)).collect();
            if a.kind == Kind::Rcom {
                scenarios::rcom(&dims)
            } else {
                scenarios::rcom_quotient_l1(&dims)
            }
        }
        Kind::RcomTheta => {
            need(a.n.is_some(), "n")?;
            need(a.theta.is_some(), "theta")?;
            let theta: Vec<usize> = parse_list(a.theta.as_deref().unwrap_or_default())?;
            scenarios::rcom_quotient_theta(a.n.unwrap_or_default(), &theta)
        }
        Kind::Rpcom => {
            need(a.dim.is_some(), "dim")?;
            need(a.trunc.is_some(), "trunc")?;
            scenarios::rpcom(a.dim.unwrap_or_default(), a.trunc.unwrap_or_default())
        }
    }
}

pub fn scenario_report(s: &Scenario) -> Report {
    let mut r = Report::new(fingerprint(&s.bialgebra));
    let out = scenarios::run(s);
    r.checks = out.checks;
    r.tables = out.tables;
    r
}

fn dispatch(cli: Cli) -> Output {
    match cli.command {
        Command::Verify { file, json } => match load(&file) {
            Ok(b) => Output::report(&verify(&b), json),
            Err(e) => Output::usage(format!("error: {e}\n")),
        },
        Command::Cohomology(a) => {
            let run = || -> Result<(Bialgebra, RangeInclusive<i64>, Truncation), Error> {
                let degrees = parse_range(&a.deg)?;
                let trunc = match a.s_max {
                    Some(s) => Truncation::SMax(s),
                    None => Truncation::Weights(a.weights.iter().map(|w| parse_list(w)).collect::<Result<_, _>>()?),
                };
                Ok((load(&a.file)?, degrees, trunc))
            };
            match run() {
                Ok((b, d, t)) => Output::report(&cohomology_report(&b, d, &t), a.json),
                Err(e) => Output::usage(format!("error: {e}\n")),
            }
        }
        Command::BvReport { file, deg, s_max, json } => match parse_range(&deg).and_then(|d| Ok((load(&file)?, d))) {
            Ok((b, d)) => Output::report(&bv_report(&b, d, s_max), json),
            Err(e) => Output::usage(format!("error: {e}\n")),
        },
        Command::Scenario(a) => match build_scenario(&a) {
            Err(e) => Output::usage(format!("error: {e}\n")),
            Ok(s) if a.emit => Output {
                stdout: AlgebraFile::from_bialgebra(&s.bialgebra).pretty_json() + "\n",
                stderr: String::new(),
                code: 0,
            },
            Ok(s) => Output::report(&scenario_report(&s), a.json),
        },
    }
}

/// Parses arguments and runs one command.
pub fn execute<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => dispatch(cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Output { stdout: text, stderr: String::new(), code }
            } else {
                Output::usage(text)
            }
        }
    }
}
