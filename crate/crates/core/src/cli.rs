//! Command-line front end. [`run`] parses arguments, dispatches to the library
//! and writes to the supplied streams, returning the process exit status:
//! 0 on success, 1 on invalid input, 2 when a verification fails.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bounds::{bound_report_with_limit, check_table1, format_table1, parse_table1, published_table1, table1_csv};
use crate::constructions::{
    cyclic_class_code, even_n_code, ham_decomp_search, largest_syndrome_class_with_limit, select_prime,
    syndrome_class_with_limit, verify_min_distance_with_limit, zn1_code, CodeBook, HamDecompOutcome, Syndrome,
    DEFAULT_MAX_HAMDECOMP_N, DEFAULT_MAX_WORDS,
};
use crate::enumeration::{
    ball_size_bounds, ball_size_exact_with_limit, enumerate_spheres_with_limit, myers_count, DEFAULT_MAX_N,
};
use crate::graph::{
    build_graph_with_limit, exact_independent_set_with_limit, greedy_independent_set, neighborhood_stats_with_limit,
    GreedyOrder, DEFAULT_MAX_EXACT_VERTICES, DEFAULT_MAX_GRAPH_N,
};
use crate::perm::{block_distance, char_set, distance_by_definition, Permutation};
use crate::selftest::{exit_code, run_selftest, SelftestConfig};

pub const THREADS_ENV: &str = "BLOCKPERM_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "blockperm",
    version,
    about = "Permutation codes under the block permutation metric"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Raise or lower the exhaustive-enumeration guard on n.
    #[arg(long, global = true)]
    pub max_n: Option<usize>,
    /// Raise or lower the pairwise-verification guard on codebook size.
    #[arg(long, global = true)]
    pub max_words: Option<usize>,
    /// Worker threads for enumeration (0 = all cores).
    #[arg(long, global = true, env = THREADS_ENV, default_value_t = 0)]
    pub threads: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Block distance between two quoted permutations.
    Dist {
        first: String,
        second: String,
        /// Also recompute through block cutting.
        #[arg(long)]
        definition: bool,
    },
    /// Characteristic set of a permutation.
    Charset { perm: String },
    /// Sphere sizes around the identity.
    Spheres {
        #[arg(long)]
        n: usize,
        /// Add the closed-form count for comparison.
        #[arg(long)]
        formula: bool,
    },
    /// Ball size and its product bracket.
    Ball {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
    },
    /// Build a code.
    Construct(ConstructArgs),
    /// Verify a codebook file (text or JSON, `-` for stdin).
    Verify {
        file: PathBuf,
        /// Design distance to check against (defaults to the file's).
        #[arg(long)]
        d: Option<usize>,
    },
    /// Bound calculators.
    Bounds(BoundsArgs),
    /// Block permutation graph analysis.
    Graph(GraphArgs),
    /// Run every built-in check.
    Selftest {
        /// Alternative expectation CSV for the comparison table.
        #[arg(long)]
        table1_file: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Syndrome,
    Cyclic,
    Even,
    Zn1,
    Hamdecomp,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(long, value_enum)]
    pub method: Method,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub d: Option<usize>,
    /// Syndrome values `v1,v2,...`; the largest class is used when absent.
    #[arg(long, value_delimiter = ',')]
    pub f: Option<Vec<u64>>,
    /// Write the codebook here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long, required_unless_present = "table1")]
    pub n: Option<usize>,
    #[arg(long, required_unless_present = "table1")]
    pub d: Option<usize>,
    /// Use enumerated ball sizes instead of product estimates.
    #[arg(long)]
    pub exact: bool,
    /// Reproduce the published comparison table.
    #[arg(long, conflicts_with_all = ["n", "d", "exact"])]
    pub table1: bool,
    /// Expectation CSV for `--table1`.
    #[arg(long, requires = "table1")]
    pub table1_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(skip)]
#[command(group(clap::ArgGroup::new("mode").required(true).multiple(false).args(["stats", "greedy", "exact"])))]
pub struct GraphArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub d: usize,
    #[arg(long)]
    pub stats: bool,
    #[arg(long)]
    pub greedy: bool,
    #[arg(long)]
    pub exact: bool,
    #[arg(long, value_enum, default_value_t = OrderArg::Lexicographic)]
    pub order: OrderArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    Lexicographic,
    Degree,
}

struct Failure {
    code: i32,
    message: String,
}

fn invalid(e: impl ToString) -> Failure {
    Failure {
        code: 1,
        message: e.to_string(),
    }
}

fn failed(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

struct Ctx<'a> {
    out: &'a mut (dyn Write + Send),
    err: &'a mut (dyn Write + Send),
    format: Format,
    max_n: usize,
    max_words: usize,
}

impl Ctx<'_> {
    fn emit(&mut self, text: &str) -> Result<(), Failure> {
        self.out.write_all(text.as_bytes()).map_err(invalid)
    }

    fn emit_json<T: serde::Serialize>(&mut self, value: &T) -> Result<(), Failure> {
        let mut s = serde_json::to_string_pretty(value).map_err(invalid)?;
        s.push('\n');
        self.emit(&s)
    }

    fn warn(&mut self, text: &str) {
        let _ = writeln!(self.err, "warning: {text}");
    }
}

/// Runs the CLI with the given arguments (including the program name).
pub fn run<I, T>(args: I, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(rendered.as_bytes());
            } else {
                let _ = err.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build() {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 1;
        }
    };
    let mut ctx = Ctx {
        out,
        err,
        format: cli.format,
        max_n: cli.max_n.unwrap_or(DEFAULT_MAX_N),
        max_words: cli.max_words.unwrap_or(DEFAULT_MAX_WORDS),
    };
    if let Some(m) = cli.max_n {
        if m == 0 {
            let _ = writeln!(ctx.err, "error: --max-n must be positive");
            return 1;
        }
        ctx.warn(&format!("n guard set to {m} (default {DEFAULT_MAX_N})"));
    }
    if let Some(m) = cli.max_words {
        if m == 0 {
            let _ = writeln!(ctx.err, "error: --max-words must be positive");
            return 1;
        }
        ctx.warn(&format!("codebook size guard set to {m} (default {DEFAULT_MAX_WORDS})"));
    }
    let explicit_max_n = cli.max_n;
    match pool.install(|| dispatch(cli.command, explicit_max_n, &mut ctx)) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(ctx.err, "error: {}", f.message);
            f.code
        }
    }
}

fn parse_perm(s: &str) -> Result<Permutation, Failure> {
    s.parse().map_err(|e| invalid(format!("{s:?}: {e}")))
}

fn dispatch(command: Command, explicit_max_n: Option<usize>, ctx: &mut Ctx<'_>) -> Result<i32, Failure> {
    match command {
        Command::Dist {
            first,
            second,
            definition,
        } => {
            let a = parse_perm(&first)?;
            let b = parse_perm(&second)?;
            let d = block_distance(&a, &b).map_err(invalid)?;
            let by_def = if definition {
                Some(distance_by_definition(&a, &b).map_err(invalid)?)
            } else {
                None
            };
            match ctx.format {
                Format::Json => ctx.emit_json(&serde_json::json!({ "distance": d, "by_definition": by_def }))?,
                Format::Csv => ctx.emit(&format!("distance\n{d}\n"))?,
                Format::Text => {
                    ctx.emit(&format!("{d}\n"))?;
                    if let Some(x) = by_def {
                        ctx.emit(&format!("by definition: {x}\n"))?;
                    }
                }
            }
            if by_def.is_some_and(|x| x != d) {
                return Err(failed("distance routes disagree"));
            }
            Ok(0)
        }
        Command::Charset { perm } => {
            let cs = char_set(&parse_perm(&perm)?);
            match ctx.format {
                Format::Json => ctx.emit_json(&cs)?,
                Format::Csv => {
                    let mut s = String::from("first,second\n");
                    for p in cs.iter() {
                        s.push_str(&format!("{},{}\n", p.first(), p.second()));
                    }
                    ctx.emit(&s)?;
                }
                Format::Text => {
                    let pairs: Vec<String> = cs.iter().map(|p| format!("({},{})", p.first(), p.second())).collect();
                    ctx.emit(&format!("{{{}}}\n", pairs.join(",")))?;
                }
            }
            Ok(0)
        }
        Command::Spheres { n, formula } => {
            let profile = enumerate_spheres_with_limit(n, ctx.max_n).map_err(invalid)?;
            match ctx.format {
                Format::Json => ctx.emit_json(&profile)?,
                Format::Csv if !formula => ctx.emit(&profile.to_csv())?,
                _ => {
                    let mut s = String::from(if formula { "k,count,formula\n" } else { "k,count\n" });
                    for (k, c) in profile.counts.iter().enumerate() {
                        if formula {
                            let f = if k == 0 {
                                "1".to_string()
                            } else {
                                myers_count(n, k).map_err(invalid)?.to_string()
                            };
                            s.push_str(&format!("{k},{c},{f}\n"));
                        } else {
                            s.push_str(&format!("{k},{c}\n"));
                        }
                    }
                    ctx.emit(&s)?;
                }
            }
            Ok(0)
        }
        Command::Ball { n, t } => {
            let ball = ball_size_exact_with_limit(n, t, ctx.max_n).map_err(invalid)?;
            let bracket = ball_size_bounds(n, t).ok();
            match ctx.format {
                Format::Json => ctx.emit_json(&serde_json::json!({
                    "n": n,
                    "t": t,
                    "size": ball.size.to_string(),
                    "lower": bracket.as_ref().map(|b| b.0.to_string()),
                    "upper": bracket.as_ref().map(|b| b.1.to_string()),
                }))?,
                _ => {
                    ctx.emit(&format!("{}\n", ball.size))?;
                    match &bracket {
                        Some((lo, hi)) => ctx.emit(&format!("bracket: {lo} <= {} <= {hi}\n", ball.size))?,
                        None => ctx.emit("bracket: hypothesis t <= n - sqrt(n) - 1 fails\n")?,
                    }
                }
            }
            if let Some((lo, hi)) = bracket {
                if ball.size < lo || ball.size > hi {
                    return Err(failed("ball size outside its bracket"));
                }
            }
            Ok(0)
        }
        Command::Construct(args) => construct(args, explicit_max_n, ctx),
        Command::Verify { file, d } => verify(file, d, ctx),
        Command::Bounds(args) => bounds(args, ctx),
        Command::Graph(args) => graph(args, explicit_max_n, ctx),
        Command::Selftest { table1_file } => {
            let mut config = SelftestConfig::default();
            if let Some(m) = explicit_max_n {
                config.max_n = m;
            }
            if let Some(path) = table1_file {
                let text = fs::read_to_string(&path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
                config.table1 = parse_table1(&text).map_err(|e| failed(e.to_string()))?;
            }
            let outcomes = run_selftest(&config);
            for o in &outcomes {
                ctx.emit(&format!("{o}\n"))?;
            }
            Ok(exit_code(&outcomes))
        }
    }
}

fn write_codebook(code: &CodeBook, output: Option<PathBuf>, ctx: &mut Ctx<'_>) -> Result<(), Failure> {
    let text = match ctx.format {
        Format::Json => serde_json::to_string_pretty(code).map_err(invalid)? + "\n",
        _ => code.to_text(),
    };
    match output {
        Some(path) => fs::write(&path, text).map_err(|e| invalid(format!("{}: {e}", path.display()))),
        None => ctx.emit(&text),
    }
}

fn construct(args: ConstructArgs, explicit_max_n: Option<usize>, ctx: &mut Ctx<'_>) -> Result<i32, Failure> {
    let n = args.n;
    let mut code = match args.method {
        Method::Syndrome => {
            let d = args
                .d
                .ok_or_else(|| invalid("--d is required for the syndrome method"))?;
            if d > n {
                ctx.warn(&format!(
                    "d - 1 = {} exceeds the n - 1 = {} adjacencies; extra coordinates are zero",
                    d - 1,
                    n - 1
                ));
            }
            if d >= n {
                ctx.warn(&format!(
                    "d = {d} exceeds the largest distance n - 1 = {}; classes are not guaranteed codes",
                    n - 1
                ));
            }
            match args.f {
                Some(values) => {
                    let q = select_prime(n).map_err(invalid)?.modulus();
                    let f = Syndrome::new(q, values).map_err(invalid)?;
                    syndrome_class_with_limit(n, d, &f, ctx.max_n).map_err(invalid)?
                }
                None => largest_syndrome_class_with_limit(n, d, ctx.max_n).map_err(invalid)?,
            }
        }
        Method::Cyclic => cyclic_class_code(n).map_err(invalid)?,
        Method::Even => even_n_code(n).map_err(invalid)?,
        Method::Zn1 => zn1_code(n).map_err(invalid)?,
        Method::Hamdecomp => {
            let guard = explicit_max_n.unwrap_or(DEFAULT_MAX_HAMDECOMP_N);
            match ham_decomp_search(n, guard).map_err(invalid)? {
                HamDecompOutcome::Found { code, .. } => code,
                HamDecompOutcome::NotFound { nodes } => {
                    ctx.emit(&format!(
                        "NotFound: no decomposition for n = {n} ({nodes} search nodes)\n"
                    ))?;
                    return Ok(2);
                }
            }
        }
    };
    if let Some(d) = args.d {
        if args.method != Method::Syndrome && d != code.design_distance() {
            ctx.warn(&format!(
                "--d {d} ignored; {} builds distance {}",
                code.provenance(),
                code.design_distance()
            ));
        }
    }
    if code.len() <= ctx.max_words {
        verify_min_distance_with_limit(&mut code, ctx.max_words).map_err(invalid)?;
    } else {
        ctx.warn(&format!(
            "{} words exceed the verification guard; distance not verified",
            code.len()
        ));
    }
    write_codebook(&code, args.output, ctx)?;
    Ok(match code.meets_design_distance() {
        Some(false) => 2,
        _ => 0,
    })
}

fn read_input(path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(invalid)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))
    }
}

fn verify(file: PathBuf, d: Option<usize>, ctx: &mut Ctx<'_>) -> Result<i32, Failure> {
    let text = read_input(&file)?;
    let mut code = if text.trim_start().starts_with('{') {
        serde_json::from_str::<CodeBook>(&text).map_err(invalid)?
    } else {
        CodeBook::from_text(&text).map_err(invalid)?
    };
    let min = verify_min_distance_with_limit(&mut code, ctx.max_words).map_err(invalid)?;
    let target = d.unwrap_or(code.design_distance());
    let ok = min >= target;
    match ctx.format {
        Format::Json => ctx.emit_json(&serde_json::json!({
            "n": code.n(),
            "words": code.len(),
            "design_distance": target,
            "min_distance": min,
            "ok": ok,
        }))?,
        _ => ctx.emit(&format!(
            "n={} words={} min_distance={} design_distance={} {}\n",
            code.n(),
            code.len(),
            min,
            target,
            if ok { "OK" } else { "FAIL" }
        ))?,
    }
    Ok(if ok { 0 } else { 2 })
}

fn bounds(args: BoundsArgs, ctx: &mut Ctx<'_>) -> Result<i32, Failure> {
    if args.table1 {
        let expected = match &args.table1_file {
            Some(path) => {
                let text = fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
                parse_table1(&text).map_err(invalid)?
            }
            None => published_table1(),
        };
        let checks = check_table1(&expected).map_err(invalid)?;
        match ctx.format {
            Format::Csv => ctx.emit(&table1_csv(&checks))?,
            Format::Json => {
                let rows: Vec<_> = checks.iter().map(|c| &c.row).collect();
                ctx.emit_json(&rows)?
            }
            Format::Text => ctx.emit(&format_table1(&checks))?,
        }
        return Ok(if checks.iter().all(|c| c.passes()) { 0 } else { 2 });
    }
    let (n, d) = (args.n.expect("required"), args.d.expect("required"));
    let report = bound_report_with_limit(n, d, args.exact, ctx.max_n).map_err(invalid)?;
    match ctx.format {
        Format::Json => ctx.emit_json(&report)?,
        _ => {
            let show = |v: &Option<num_bigint::BigUint>| v.as_ref().map_or("-".to_string(), |x| x.to_string());
            let mut s = format!(
                "n = {n}, d = {d} ({})\n",
                if report.exact_mode { "exact" } else { "estimate" }
            );
            s.push_str(&format!("gv_lower          {}\n", show(&report.gv_lower)));
            s.push_str(&format!("sp_upper          {}\n", show(&report.sp_upper_estimate)));
            match &report.new_upper {
                Some(b) => s.push_str(&format!("new_upper         {} ({})\n", b.floor, b.exact)),
                None => s.push_str("new_upper         -\n"),
            }
            s.push_str(&format!("special_exact     {}\n", show(&report.special_exact)));
            s.push_str(&format!("corollary_applies {}\n", report.corollary_applies));
            for note in &report.notes {
                s.push_str(&format!("note: {note}\n"));
            }
            ctx.emit(&s)?;
        }
    }
    Ok(0)
}

fn graph(args: GraphArgs, explicit_max_n: Option<usize>, ctx: &mut Ctx<'_>) -> Result<i32, Failure> {
    let guard = explicit_max_n.unwrap_or(DEFAULT_MAX_GRAPH_N);
    if args.stats {
        let stats = neighborhood_stats_with_limit(args.n, args.d, guard).map_err(invalid)?;
        match ctx.format {
            Format::Text => ctx.emit(&format!(
                "delta={} p_edges={} triangles={} zero_x_edges={}\n",
                stats.delta, stats.p_edges, stats.triangle_count, stats.zero_x_edge_count
            ))?,
            _ => ctx.emit_json(&stats)?,
        }
        return Ok(if stats.zero_x_edge_count == 0 { 0 } else { 2 });
    }
    let g = build_graph_with_limit(args.n, args.d, guard).map_err(invalid)?;
    let code = if args.greedy {
        let order = match args.order {
            OrderArg::Lexicographic => GreedyOrder::Lexicographic,
            OrderArg::Degree => GreedyOrder::Degree,
        };
        greedy_independent_set(&g, order).map_err(invalid)?
    } else {
        exact_independent_set_with_limit(&g, DEFAULT_MAX_EXACT_VERTICES).map_err(invalid)?
    };
    write_codebook(&code, None, ctx)?;
    Ok(0)
}
