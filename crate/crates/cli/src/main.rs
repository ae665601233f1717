use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use homds::applications::{
    correctable, duality_test, ld_mds_check, ld_mds_upto, mr_check, mr_generic_correctable, tensor_parity,
    worst_case_ld_check, ErasurePattern, TensorCodeSpec,
};
use homds::codes::{parse_code, write_code, CodeError, CodeSpec};
use homds::constructions::{construct, construct_k3_n3, ConstructionError, ConstructionName, ConstructionParams};
use homds::mdscheck::{
    exhaustive_code_search, is_mds, is_mds3_rs_fast, is_mds_ell, lb_witness_projective, CheckError, CheckReport,
};
use homds::multipoly::{groebner_claim, verify_claim_q_identity, verify_p1_factorization, CLAIM_Q_DATA};
use homds_cli::output::{field, render, report_fields, Fields, Format};
use homds_cli::suites::{char2_line, run_suite, Status, Suite, GROEBNER_BUDGET, SEARCH_BUDGET};

const PASS: u8 = 0;
const FAIL: u8 = 1;
const USAGE: u8 = 2;
const BUDGET: u8 = 3;

/// Default number of candidates an enumeration may examine.
const DEFAULT_BUDGET: u128 = 1 << 24;

#[derive(Parser)]
#[command(name = "homds", version, about = "Constructs and checks higher-order MDS codes")]
struct Cli {
    /// Print time_ms=0 so reports compare byte for byte.
    #[arg(long, global = true)]
    deterministic: bool,
    /// Worker threads (default: all cores, or RAYON_NUM_THREADS).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for randomized oracles and sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a code and write it with a provenance header.
    Construct {
        /// k3-n4, k3-n3, k4-general, k5-weak or general-ell.
        #[arg(long)]
        name: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        ell: Option<usize>,
        /// Extension degree override (k5-weak) or per-level degree (general-ell).
        #[arg(long)]
        degree: Option<usize>,
        /// Output path; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a property of a code file.
    Check {
        file: PathBuf,
        /// mds, mds<l>, mds3-fast, lb-witness, mr, ld-mds<L>, ld-mds-upto<L> or duality<l>.
        #[arg(long)]
        property: String,
        /// Rows of the tensor grid for `mr`.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
    /// Count MDS(3) codes among all systematic [n, k] codes over F_q.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        q: u64,
        /// Use every k-subset of columns as information set.
        #[arg(long)]
        all_placements: bool,
        #[arg(long, default_value_t = SEARCH_BUDGET)]
        budget: u128,
    },
    /// Maximal recoverability of a tensor code, or correctability of one pattern.
    TensorCheck {
        /// Row code file.
        row: PathBuf,
        /// Rows of the grid; the column code is the single-parity code.
        #[arg(long, conflicts_with = "col")]
        m: Option<usize>,
        /// Column code file instead of the single-parity code.
        #[arg(long)]
        col: Option<PathBuf>,
        /// Erasure pattern `r,c;r,c;…` (1-based).
        #[arg(long)]
        pattern: Option<String>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
    /// List-decoding checks.
    LdCheck {
        file: PathBuf,
        #[arg(long = "list-size", short = 'L')]
        list_size: usize,
        /// Worst-case radius `num/den` instead of the average-radius bound.
        #[arg(long, conflicts_with = "dual")]
        radius: Option<String>,
        /// Compare MDS(L+1) of the code with LD-MDS(≤ L) of its dual.
        #[arg(long)]
        dual: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
    /// Verify the polynomial certificates behind the k = 3 constructions.
    VerifyCertificates {
        /// Certificate data; the built-in copy when omitted.
        #[arg(long)]
        q_data: Option<PathBuf>,
        /// Also check the characteristic-2 membership.
        #[arg(long)]
        char2: bool,
        #[arg(long, default_value_t = GROEBNER_BUDGET)]
        budget: u64,
    },
    /// Run an acceptance suite.
    Acceptance {
        /// constructions, lower-bound, certificates, oracles, duality, properties or all.
        suite: String,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Failure {
            code: USAGE,
            message: message.to_string(),
        }
    }
}

impl From<CheckError> for Failure {
    fn from(e: CheckError) -> Self {
        let code = match e {
            CheckError::BudgetExceeded { .. } => BUDGET,
            CheckError::NotMds(_) => FAIL,
            _ => USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<CodeError> for Failure {
    fn from(e: CodeError) -> Self {
        Failure::usage(e)
    }
}

struct Ctx {
    format: Format,
    deterministic: bool,
    seed: u64,
}

impl Ctx {
    fn emit(&self, fields: &Fields) {
        println!("{}", render(fields, self.format));
    }

    /// Prints the report and maps its verdict to an exit code.
    fn report(&self, r: &CheckReport) -> u8 {
        self.emit(&report_fields(r, self.deterministic));
        if r.passed() {
            PASS
        } else {
            FAIL
        }
    }
}

fn read_code(path: &Path) -> Result<CodeSpec, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    parse_code(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

/// The number after `prefix` in a property name such as `mds3`.
fn suffix(property: &str, prefix: &str) -> Option<usize> {
    property.strip_prefix(prefix)?.parse().ok()
}

fn cmd_construct(
    ctx: &Ctx,
    name: &str,
    n: usize,
    k: Option<usize>,
    ell: Option<usize>,
    degree: Option<usize>,
    out: Option<&Path>,
) -> Result<u8, Failure> {
    let name: ConstructionName = name.parse().map_err(Failure::usage)?;
    let mut params = ConstructionParams::new(name, n);
    if let Some(k) = k {
        params.k = k;
    }
    if let Some(ell) = ell {
        params.ell = ell;
    }
    params.degree = degree;
    let c = construct(&params).map_err(|e| Failure {
        code: match e {
            ConstructionError::InvalidParameters(_) | ConstructionError::UnknownConstruction(_) => USAGE,
            _ => FAIL,
        },
        message: e.to_string(),
    })?;
    for w in &c.warnings {
        eprintln!("warning: {w}");
    }
    let text = write_code(&c.code, &c.header());
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure {
                code: FAIL,
                message: format!("{}: {e}", path.display()),
            })?;
            let mut fields: Fields = c.provenance.clone();
            fields.push(field("out", path.display()));
            ctx.emit(&fields);
        }
        None => print!("{text}"),
    }
    Ok(PASS)
}

fn cmd_check(ctx: &Ctx, file: &Path, property: &str, m: Option<usize>, budget: u128) -> Result<u8, Failure> {
    let code = read_code(file)?;
    let report = match property {
        "mds" => is_mds(&code),
        "mds3-fast" => is_mds3_rs_fast(&code)?,
        "lb-witness" => lb_witness_projective(&code)?,
        "mr" => {
            let m = m.ok_or_else(|| Failure::usage("`--property mr` needs `--m`"))?;
            let spec = TensorCodeSpec::with_parity_columns(code, m)?;
            mr_check(&spec, budget, ctx.seed)?
        }
        p => {
            if let Some(l) = suffix(p, "ld-mds-upto") {
                ld_mds_upto(&code, l, budget)?
            } else if let Some(l) = suffix(p, "ld-mds") {
                ld_mds_check(&code, l, budget)?
            } else if let Some(ell) = suffix(p, "duality") {
                duality_test(&code, ell, budget)?
            } else if let Some(ell) = suffix(p, "mds").filter(|&l| l >= 2) {
                is_mds_ell(&code, ell)
            } else {
                return Err(Failure::usage(format!("unknown property `{p}`")));
            }
        }
    };
    Ok(ctx.report(&report))
}

fn cmd_search(ctx: &Ctx, n: usize, k: usize, q: u64, all: bool, budget: u128) -> Result<u8, Failure> {
    let r = exhaustive_code_search(n, k, q, all, budget)?;
    let ms = if ctx.deterministic { 0 } else { r.elapsed.as_millis() };
    ctx.emit(&vec![
        field("property", "mds3-search"),
        field("n", n),
        field("k", k),
        field("q", q),
        field("all_placements", all),
        field("matrices", r.matrices),
        field("mds_codes", r.mds_codes),
        field("count", r.count),
        field("time_ms", ms),
    ]);
    for c in &r.exemplars {
        let g = c.generator_matrix();
        let rows: Vec<String> = (0..g.rows())
            .map(|i| g.row(i).iter().map(|x| format!("({x})")).collect::<String>())
            .collect();
        ctx.emit(&vec![field("exemplar", rows.join("|"))]);
    }
    Ok(PASS)
}

fn cmd_tensor_check(
    ctx: &Ctx,
    row: &Path,
    m: Option<usize>,
    col: Option<&Path>,
    pattern: Option<&str>,
    budget: u128,
) -> Result<u8, Failure> {
    let row = read_code(row)?;
    let spec = match (col, m) {
        (Some(col), _) => TensorCodeSpec::new(read_code(col)?, row)?,
        (None, Some(m)) => TensorCodeSpec::with_parity_columns(row, m)?,
        (None, None) => return Err(Failure::usage("give `--m` or `--col`")),
    };
    let Some(pattern) = pattern else {
        return Ok(ctx.report(&mr_check(&spec, budget, ctx.seed)?));
    };
    let e = ErasurePattern::parse(pattern, spec.m(), spec.n())?;
    let ours = correctable(&tensor_parity(&spec), &e);
    let generic = mr_generic_correctable(spec.m(), spec.n(), spec.a(), spec.b(), std::slice::from_ref(&e), 5, ctx.seed)[0];
    ctx.emit(&vec![
        field("property", "pattern"),
        field("verdict", if ours == generic { "pass" } else { "fail" }),
        field("pattern", &e),
        field("correctable", ours),
        field("generic_correctable", generic),
    ]);
    Ok(if ours == generic { PASS } else { FAIL })
}

fn parse_radius(s: &str) -> Result<(usize, usize), Failure> {
    let (num, den) = s.split_once('/').unwrap_or((s, "1"));
    match (num.trim().parse(), den.trim().parse()) {
        (Ok(num), Ok(den)) if den > 0 => Ok((num, den)),
        _ => Err(Failure::usage(format!("bad radius `{s}`, expected num/den"))),
    }
}

fn cmd_ld_check(ctx: &Ctx, file: &Path, l: usize, radius: Option<&str>, dual: bool, budget: u128) -> Result<u8, Failure> {
    let code = read_code(file)?;
    let report = match (radius, dual) {
        (Some(r), _) => {
            let (num, den) = parse_radius(r)?;
            worst_case_ld_check(&code, l, num, den, budget)?
        }
        (None, true) => duality_test(&code, l, budget)?,
        (None, false) => ld_mds_check(&code, l, budget)?,
    };
    Ok(ctx.report(&report))
}

fn cmd_verify_certificates(ctx: &Ctx, q_data: Option<&Path>, char2: bool, budget: u64) -> Result<u8, Failure> {
    let data = match q_data {
        Some(path) => fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?,
        None => CLAIM_Q_DATA.to_string(),
    };
    let mut exit = PASS;
    let verdict = |ok: bool| if ok { "pass" } else { "fail" };
    for p in [7, 11] {
        let mut fields = vec![field("certificate", "q-identity"), field("p", p)];
        match verify_claim_q_identity(&data, p) {
            Ok(ok) => {
                fields.push(field("verdict", verdict(ok)));
                if !ok {
                    exit = FAIL;
                }
            }
            Err(e) => {
                fields.push(field("verdict", "fail"));
                fields.push(field("error", e.to_string().replace(' ', "_")));
                exit = FAIL;
            }
        }
        ctx.emit(&fields);
    }
    for p in [7, 11] {
        let ok = verify_p1_factorization(p).map_err(|e| Failure {
            code: FAIL,
            message: e.to_string(),
        })?;
        if !ok {
            exit = FAIL;
        }
        ctx.emit(&vec![field("certificate", "p1-checksum"), field("p", p), field("verdict", verdict(ok))]);
    }
    let r = groebner_claim(budget).map_err(|e| Failure {
        code: FAIL,
        message: e.to_string(),
    })?;
    let attempts: Vec<String> = r
        .attempts
        .iter()
        .map(|(o, done)| format!("{:?}:{}", o.kind, if *done { "done" } else { "budget" }).to_lowercase())
        .collect();
    let mut fields = vec![field("certificate", "groebner-claim"), field("p", 7)];
    match r.target_remainder_zero {
        Some(zero) => {
            fields.push(field("verdict", verdict(zero)));
            fields.push(field("attempts", attempts.join(",")));
            fields.push(field("basis_size", r.basis.as_ref().map_or(0, |b| b.polys.len())));
            fields.push(field("one_remainder_zero", r.one_remainder_zero.unwrap_or(false)));
            if !zero {
                exit = FAIL;
            }
            ctx.emit(&fields);
        }
        None => {
            fields.push(field("verdict", "inconclusive"));
            fields.push(field("attempts", attempts.join(",")));
            fields.push(field("fallback", "exhaustive-k3-n3"));
            ctx.emit(&fields);
            let c = construct_k3_n3(7).map_err(|e| Failure {
                code: FAIL,
                message: e.to_string(),
            })?;
            let check = is_mds3_rs_fast(&c.code)?;
            ctx.emit(&report_fields(&check, ctx.deterministic));
            if exit == PASS {
                exit = if check.passed() { BUDGET } else { FAIL };
            }
        }
    }
    if char2 {
        match char2_line(budget) {
            Ok((member, line)) => {
                let fields: Fields = line
                    .split(' ')
                    .filter_map(|kv| kv.split_once('='))
                    .map(|(k, v)| field(k, v))
                    .collect();
                ctx.emit(&fields);
                if !member {
                    exit = FAIL;
                }
            }
            Err(e) => {
                ctx.emit(&vec![
                    field("certificate", "char2-membership"),
                    field("verdict", "inconclusive"),
                    field("error", e.to_string().replace(' ', "_")),
                ]);
                if exit == PASS {
                    exit = BUDGET;
                }
            }
        }
    }
    Ok(exit)
}

fn cmd_acceptance(ctx: &Ctx, suite: &str) -> Result<u8, Failure> {
    let suite: Suite = suite.parse().map_err(Failure::usage)?;
    let results = run_suite(suite, ctx.seed, |r| {
        let mut fields = vec![
            field("criterion", r.id),
            field("name", r.title),
            field("verdict", r.status),
            field("time_ms", if ctx.deterministic { 0 } else { r.elapsed.as_millis() }),
            field("limit_s", r.limit.as_secs()),
        ];
        fields.extend(r.detail.iter().cloned());
        ctx.emit(&fields);
    });
    match results.iter().find(|r| r.status == Status::Fail) {
        Some(r) => Err(Failure {
            code: FAIL,
            message: format!("criterion {} ({}) failed", r.id, r.title),
        }),
        None => Ok(PASS),
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::usage(format!("--threads: {e}")))?;
    }
    let ctx = Ctx {
        format: cli.format,
        deterministic: cli.deterministic,
        seed: cli.seed,
    };
    match &cli.command {
        Command::Construct { name, n, k, ell, degree, out } => {
            cmd_construct(&ctx, name, *n, *k, *ell, *degree, out.as_deref())
        }
        Command::Check { file, property, m, budget } => cmd_check(&ctx, file, property, *m, *budget),
        Command::Search { n, k, q, all_placements, budget } => cmd_search(&ctx, *n, *k, *q, *all_placements, *budget),
        Command::TensorCheck { row, m, col, pattern, budget } => {
            cmd_tensor_check(&ctx, row, *m, col.as_deref(), pattern.as_deref(), *budget)
        }
        Command::LdCheck { file, list_size, radius, dual, budget } => {
            cmd_ld_check(&ctx, file, *list_size, radius.as_deref(), *dual, *budget)
        }
        Command::VerifyCertificates { q_data, char2, budget } => {
            cmd_verify_certificates(&ctx, q_data.as_deref(), *char2, *budget)
        }
        Command::Acceptance { suite } => cmd_acceptance(&ctx, suite),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
