use std::cmp::Ordering;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use grosskoch_core::koch::{self, ComparisonReport, Quantity, SnowflakeReport};
use grosskoch_core::lang::{evaluate, print_canonical, Elaborated, ToJson};
use grosskoch_core::oracle::{eval_at, eval_radical, radical_degree};
use grosskoch_core::sets::{self, MeasureValue};
use grosskoch_core::sums::{sum_arith, sum_geometric};
use grosskoch_core::{DivResult, GrossError, GrossExpr, GrossLinear, GrossTerm, NumClass, NumKind, Rational};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "grosskoch", version, about = "Exact grossone arithmetic and Koch snowflake analysis")]
struct Cli {
    #[command(flatten)]
    config: CliConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct CliConfig {
    /// Output format.
    #[arg(long, global = true, value_enum, env = "GROSSKOCH_FORMAT", default_value = "text")]
    format: Format,
    /// Quotient terms kept by each division.
    #[arg(long, global = true, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..=10_000))]
    max_terms: u64,
    /// Spell grossone as G1.
    #[arg(long, global = true)]
    ascii: bool,
    /// Also substitute ① = M and check the sign.
    #[arg(long, global = true, value_name = "M", value_parser = clap::value_parser!(u64).range(1..))]
    oracle: Option<u64>,
    /// Decimals for the fractal dimension and a0.
    #[arg(long, global = true, default_value_t = 5, value_parser = clap::value_parser!(u64).range(0..=500))]
    digits: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate an expression.
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Snowflake report at step n, or a comparison of steps n and k.
    Koch {
        #[arg(allow_hyphen_values = true)]
        n: String,
        #[arg(allow_hyphen_values = true)]
        k: Option<String>,
    },
    /// Compare the snowflakes at steps n and k.
    Compare {
        #[arg(allow_hyphen_values = true)]
        n: String,
        #[arg(allow_hyphen_values = true)]
        k: String,
    },
    /// Closed-form sums.
    #[command(subcommand)]
    Sum(SumCommand),
    /// Measures of the classical infinite sets and their ordering chain.
    Sets,
}

#[derive(Subcommand, Debug)]
enum SumCommand {
    /// first + (first+step) + ... over count addends.
    Arith {
        #[arg(allow_hyphen_values = true)]
        first: String,
        #[arg(allow_hyphen_values = true)]
        step: String,
        #[arg(allow_hyphen_values = true)]
        count: String,
        /// Allow more than ① addends.
        #[arg(long)]
        parallel: bool,
    },
    /// 1 + ratio + ... + ratio^(n-1).
    Geom {
        #[arg(allow_hyphen_values = true)]
        ratio: String,
        #[arg(allow_hyphen_values = true)]
        n: String,
    },
}

#[derive(Debug)]
enum CliError {
    /// Bad input; `at` is the source text and byte offset when known.
    User { msg: String, at: Option<(String, usize)> },
    Invariant(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::User { .. } => 1,
            CliError::Invariant(_) => 2,
        }
    }

    fn user(msg: impl Into<String>) -> Self {
        CliError::User {
            msg: msg.into(),
            at: None,
        }
    }

    fn render(&self) -> String {
        match self {
            CliError::User { msg, at: None } => format!("error: {msg}"),
            CliError::User {
                msg,
                at: Some((src, pos)),
            } => {
                let col = src.get(..*pos).map_or(0, |s| s.chars().count());
                format!("error: {msg}\n  {src}\n  {}^", " ".repeat(col))
            }
            CliError::Invariant(msg) => format!("internal error: {msg}"),
        }
    }
}

fn position(e: &GrossError) -> Option<usize> {
    match e {
        GrossError::Syntax { pos, .. }
        | GrossError::UnknownIdentifier { pos, .. }
        | GrossError::At { pos, .. } => Some(*pos),
        _ => None,
    }
}

/// Error from evaluating `src`, with its position when the library reports one.
fn in_source(src: &str) -> impl Fn(GrossError) -> CliError + '_ {
    move |e| CliError::User {
        msg: e.to_string(),
        at: position(&e).map(|p| (src.to_string(), p)),
    }
}

fn lib_error(e: GrossError) -> CliError {
    CliError::user(e.to_string())
}

struct Ctx<'a> {
    config: &'a CliConfig,
}

impl Ctx<'_> {
    fn max_terms(&self) -> usize {
        self.config.max_terms as usize
    }

    fn show(&self, x: &GrossExpr) -> String {
        print_canonical(x, self.config.ascii)
    }

    fn show_with(&self, x: &GrossExpr, truncation: Option<&GrossTerm>) -> String {
        match truncation {
            None => self.show(x),
            Some(t) => format!("{} + O({})", self.show(x), self.show(&GrossExpr::from_term(t.unit()))),
        }
    }

    fn show_linear(&self, n: &GrossLinear) -> String {
        self.show(&GrossExpr::from_linear(n))
    }

    fn evaluate(&self, src: &str) -> Result<Elaborated, CliError> {
        evaluate(src, self.max_terms()).map_err(in_source(src))
    }

    fn exact(&self, src: &str, what: &str) -> Result<GrossExpr, CliError> {
        let e = self.evaluate(src)?;
        if !e.exact() {
            return Err(CliError::user(format!("{what} must be exact, got a truncated quotient")));
        }
        Ok(e.value)
    }

    fn linear(&self, src: &str, what: &str) -> Result<GrossLinear, CliError> {
        self.exact(src, what)?
            .as_linear()
            .ok_or_else(|| CliError::user(format!("{what} must have the form a*G1 + b, got '{src}'")))
    }
}

fn class_text(c: NumClass) -> String {
    let mut s = c.kind.name().to_string();
    if c.has_finite_part && c.kind == NumKind::Infinite {
        s.push_str(", finite part");
    }
    if c.has_infinitesimal_part && c.kind != NumKind::Infinitesimal {
        s.push_str(", infinitesimal part");
    }
    s
}

fn sign_name(o: Ordering) -> &'static str {
    match o {
        Ordering::Less => "-",
        Ordering::Equal => "0",
        Ordering::Greater => "+",
    }
}

struct OracleCheck {
    m: u64,
    value: Option<Rational>,
    sign: Option<Ordering>,
    expected: Ordering,
}

impl OracleCheck {
    fn agrees(&self) -> bool {
        self.sign == Some(self.expected)
    }

    fn verdict(&self) -> &'static str {
        match self.sign {
            None => "UNDETERMINED",
            Some(_) if self.agrees() => "OK",
            Some(_) => "SIGN DIFFERS",
        }
    }

    fn text(&self) -> String {
        match (&self.value, self.sign) {
            (Some(v), _) => format!("oracle({})={v} {}", self.m, self.verdict()),
            (None, Some(s)) => format!("oracle({}) irrational, sign {} {}", self.m, sign_name(s), self.verdict()),
            (None, None) => format!("oracle({}) irrational {}", self.m, self.verdict()),
        }
    }

    fn json(&self) -> Value {
        json!({
            "m": self.m,
            "value": self.value.as_ref().map(|v| v.to_string()),
            "sign": self.sign.map(sign_name),
            "sign_agrees": self.agrees(),
        })
    }
}

fn oracle_check(x: &GrossExpr, m: u64) -> Result<OracleCheck, CliError> {
    let mr = Rational::from(m as i64);
    let expected = x.signum().cmp(&0);
    match eval_at(x, &mr) {
        Ok(v) => Ok(OracleCheck {
            m,
            sign: Some(v.signum().cmp(&0)),
            value: Some(v),
            expected,
        }),
        Err(GrossError::NonIntegerExponent(_)) if radical_degree(x) > 1 => {
            let r = eval_radical(x, &mr, radical_degree(x)).map_err(lib_error)?;
            Ok(OracleCheck {
                m,
                value: None,
                sign: r.sign(),
                expected,
            })
        }
        Err(e) => Err(CliError::user(format!("oracle M = {m} does not fit the exponents: {e}"))),
    }
}

fn cmd_eval(ctx: &Ctx, src: &str) -> Result<Output, CliError> {
    let e = ctx.evaluate(src)?;
    let oracle = ctx.config.oracle.map(|m| oracle_check(&e.value, m)).transpose()?;
    let text = ctx.show_with(&e.value, e.truncation.as_ref());
    let mut lines = vec![text.clone()];
    lines.extend(oracle.as_ref().map(OracleCheck::text));
    let mut doc = json!({
        "value": e.value.to_json_value(),
        "text": text,
        "exact": e.exact(),
        "truncation": e.truncation.as_ref().map(|t| GrossExpr::from_term(t.unit()).to_json_value()),
    });
    if let Some(o) = &oracle {
        doc["oracle"] = o.json();
    }
    Ok(Output { lines, doc })
}

fn quantity_line(ctx: &Ctx, symbol: &str, q: &Quantity) -> String {
    format!("{symbol} = {}  [{}]  {}", ctx.show(&q.value), q.unit, class_text(q.class()))
}

fn report_output(ctx: &Ctx, r: &SnowflakeReport) -> Output {
    let digits = ctx.config.digits as usize;
    let a0 = koch::a0_in_l2(digits);
    let dim = koch::fractal_dimension(digits);
    let mut lines = vec![format!("n = {}", ctx.show_linear(&r.n))];
    lines.extend(r.fields().iter().map(|(s, q)| quantity_line(ctx, s, q)));
    lines.push(format!("a0 ≈ {a0} l^2"));
    lines.push(format!("dimension = {dim}"));
    let mut doc = r.to_json_value();
    doc["a0_l2"] = json!(a0);
    doc["dimension"] = json!({ "log": "log4/log3", "digits": digits, "value": dim.decimal });
    Output { lines, doc }
}

fn ratio_text(ctx: &Ctx, d: &DivResult, divisor: &Quantity) -> String {
    ctx.show_with(&d.quotient, d.truncation_order(&divisor.value).as_ref())
}

fn comparison_output(ctx: &Ctx, c: &ComparisonReport) -> Result<Output, CliError> {
    let k = koch::report(&c.k).map_err(lib_error)?;
    let mut lines = vec![format!("n = {}, k = {}", ctx.show_linear(&c.n), ctx.show_linear(&c.k))];
    let mut doc = c.to_json_value();
    for e in &c.entries {
        let divisor = k.fields().into_iter().find(|(s, _)| *s == e.symbol).map(|(_, q)| q.clone());
        let divisor = divisor.ok_or_else(|| CliError::Invariant(format!("no quantity {}", e.symbol)))?;
        let ratio = ratio_text(ctx, &e.ratio, &divisor);
        lines.push(format!(
            "{0}(n)/{0}(k) = {ratio};  {0}(n) - {0}(k) = {1}  [{2}]",
            e.symbol,
            ctx.show(&e.difference.value),
            e.difference.unit
        ));
        doc["entries"][e.symbol]["ratio_text"] = json!(ratio);
    }
    Ok(Output { lines, doc })
}

fn cmd_koch(ctx: &Ctx, n: &str, k: Option<&str>) -> Result<Output, CliError> {
    let nl = ctx.linear(n, "n")?;
    match k {
        None => Ok(report_output(ctx, &koch::report(&nl).map_err(lib_error)?)),
        Some(k) => {
            let kl = ctx.linear(k, "k")?;
            let c = koch::compare_snowflakes(&nl, &kl, ctx.max_terms()).map_err(lib_error)?;
            comparison_output(ctx, &c)
        }
    }
}

fn expr_output(ctx: &Ctx, x: &GrossExpr) -> Output {
    let text = ctx.show(x);
    Output {
        lines: vec![text.clone()],
        doc: json!({ "value": x.to_json_value(), "text": text }),
    }
}

fn cmd_sum(ctx: &Ctx, cmd: &SumCommand) -> Result<Output, CliError> {
    let x = match cmd {
        SumCommand::Arith {
            first,
            step,
            count,
            parallel,
        } => {
            let first = ctx.exact(first, "first")?;
            let step = ctx.exact(step, "step")?;
            let count = ctx.exact(count, "count")?;
            sum_arith(&first, &step, &count, !parallel).map_err(lib_error)?
        }
        SumCommand::Geom { ratio, n } => {
            let r = ctx
                .exact(ratio, "ratio")?
                .as_rational()
                .ok_or_else(|| CliError::user(format!("ratio must be a rational number, got '{ratio}'")))?;
            let n = ctx.linear(n, "n")?;
            sum_geometric(&r, &n).map_err(lib_error)?
        }
    };
    Ok(expr_output(ctx, &x))
}

fn cmd_sets(ctx: &Ctx, chain: Vec<MeasureValue>) -> Result<Output, CliError> {
    let ascii = ctx.config.ascii;
    let rows = sets::catalog();
    let mut lines: Vec<String> = rows
        .iter()
        .map(|e| {
            format!(
                "{:<15} {:<10} {:<20} {}",
                e.set_id.name(),
                e.cardinality.name(),
                e.count.render(ascii),
                e.set_id.description()
            )
        })
        .collect();
    let rendered: Vec<String> = chain.iter().map(|v| v.render(ascii)).collect();
    lines.push(format!("chain: {}", rendered.join(" < ")));
    sets::check_chain(&chain).map_err(|e| CliError::Invariant(format!("chain check failed: {e}")))?;
    lines.push("chain check OK".to_string());
    let doc = json!({
        "rows": rows.iter().map(ToJson::to_json_value).collect::<Vec<_>>(),
        "chain": chain.iter().map(ToJson::to_json_value).collect::<Vec<_>>(),
        "chain_check": "OK",
    });
    Ok(Output { lines, doc })
}

struct Output {
    lines: Vec<String>,
    doc: Value,
}

impl Output {
    fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.lines.join("\n"),
            Format::Json => self.doc.to_string(),
        }
    }
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    let ctx = Ctx { config: &cli.config };
    match &cli.command {
        Command::Eval { expr } => cmd_eval(&ctx, expr),
        Command::Koch { n, k } => cmd_koch(&ctx, n, k.as_deref()),
        Command::Compare { n, k } => cmd_koch(&ctx, n, Some(k)),
        Command::Sum(s) => cmd_sum(&ctx, s),
        Command::Sets => cmd_sets(&ctx, sets::chain_values()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            // a closed pipe downstream is not an error of ours
            let _ = writeln!(std::io::stdout().lock(), "{}", out.render(cli.config.format));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", e.render());
            ExitCode::from(e.exit_code())
        }
    }
}
