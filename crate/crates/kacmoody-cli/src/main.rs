//! Command-line front end: classify generalized Cartan matrices, build and
//! cache truncated nilradicals, and run the derivation / identity
//! verification sweeps.
//!
//! Exit codes: 0 pass, 2 input error, 3 cap error, 4 verification failure,
//! 5 cache error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use kacmoody::deriv::{
    affine_outer_check, candidate_degrees_n, der_space_b, der_space_n, h1_report,
    inner_expected_dim, DegreeLine, DerivError,
};
use kacmoody::gcm::{classify, diagram_automorphisms, symmetrizer, Gcm, GcmError, GcmType};
use kacmoody::liealg::{build_borel, build_nilradical, cache, GradedAlgebra, LieError};
use kacmoody::roots::RootVec;
use rayon::prelude::*;
use serde_json::json;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "kacmoody",
    version,
    about = "Kac-Moody nilradicals, Borel subalgebras and their graded derivations over exact rationals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Args)]
struct CommonArgs {
    /// JSON file {"matrix": [[...], ...]} with integer entries.
    #[arg(long)]
    matrix: PathBuf,
    /// Output format.
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct BuildArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Truncation height cap N.
    #[arg(long)]
    height: usize,
    /// Cache directory: build writes here, other commands load from here.
    #[arg(long)]
    cache: Option<PathBuf>,
    /// Worker threads for degree sweeps.
    #[arg(long, default_value = "1")]
    jobs: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a GCM: label, symmetrizer, diagram automorphisms, marks.
    Classify {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Build the truncated nilradical and write a versioned cache file.
    Build {
        #[command(flatten)]
        build: BuildArgs,
    },
    /// Derivation space at one degree beta.
    Der {
        #[command(flatten)]
        build: BuildArgs,
        /// Degree as a JSON integer array, e.g. "[1,-1]".
        #[arg(long)]
        beta: String,
    },
    /// Verify the indefinite-type theorem on every candidate degree.
    Moody {
        #[command(flatten)]
        build: BuildArgs,
    },
    /// Borel derivation spaces at degree zero and the positive degrees in cap.
    Borel {
        #[command(flatten)]
        build: BuildArgs,
        /// Optional single degree as a JSON integer array.
        #[arg(long)]
        beta: Option<String>,
    },
    /// Degree-wise H^1 bookkeeping report.
    H1 {
        #[command(flatten)]
        build: BuildArgs,
    },
    /// Affine outer-derivation check at multiples of delta up to k r delta.
    Affine {
        #[command(flatten)]
        build: BuildArgs,
        #[arg(long, default_value = "1")]
        k: usize,
    },
    /// Exact identity sweeps.
    Identities {
        #[arg(long, default_value = "8")]
        rmax: i64,
        #[arg(long, default_value = "10")]
        sl2max: i64,
        /// Print a single alternating-sum case instead of sweeping.
        #[arg(long)]
        r1: Option<i64>,
        #[arg(long)]
        k0: Option<i64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

struct Failure {
    code: i32,
    message: String,
}

fn fail(code: i32, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

fn gcm_error_name(e: &GcmError) -> &'static str {
    match e {
        GcmError::NotSquare => "NotSquare",
        GcmError::TooSmall => "TooSmall",
        GcmError::DiagonalNotTwo(_) => "DiagonalNotTwo",
        GcmError::PositiveOffDiagonal(_, _) => "PositiveOffDiagonal",
        GcmError::ZeroPatternAsymmetric(_, _) => "ZeroPatternAsymmetric",
        GcmError::Decomposable(_) => "Decomposable",
        GcmError::NotSymmetrizable(_) => "NotSymmetrizable",
        GcmError::Internal(_) => "Internal",
    }
}

fn from_deriv(e: DerivError) -> Failure {
    match e {
        DerivError::CapTooSmall(msg) => fail(3, format!("CapTooSmall: {msg}")),
        DerivError::Lie(LieError::CapTooSmall { required, actual }) => {
            fail(3, format!("CapTooSmall: need {required}, have {actual}"))
        }
        DerivError::Lie(LieError::HeightOverflow { height, cap }) => {
            fail(3, format!("CapTooSmall: height {height} over cap {cap}"))
        }
        other => fail(2, other.to_string()),
    }
}

fn read_gcm(path: &Path) -> Result<Gcm, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| fail(2, format!("cannot read {}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| fail(2, format!("bad JSON in {}: {e}", path.display())))?;
    let matrix: Vec<Vec<i64>> = serde_json::from_value(value["matrix"].clone())
        .map_err(|e| fail(2, format!("bad \"matrix\" field: {e}")))?;
    Gcm::new(matrix).map_err(|e| {
        fail(
            2,
            json!({"error": gcm_error_name(&e), "detail": e.to_string()}).to_string(),
        )
    })
}

fn parse_beta(s: &str, n: usize) -> Result<RootVec, Failure> {
    let coords: Vec<i64> =
        serde_json::from_str(s).map_err(|e| fail(2, format!("bad --beta {s:?}: {e}")))?;
    if coords.len() != n {
        return Err(fail(
            2,
            format!("--beta has {} coordinates, matrix has {}", coords.len(), n),
        ));
    }
    Ok(RootVec(coords))
}

/// Deterministic cache file name for (matrix, height).
fn cache_file(dir: &Path, g: &Gcm, height: usize) -> PathBuf {
    // FNV-1a over the entry bytes; only used as a stable file name.
    let mut h: u64 = 0xcbf29ce484222325;
    for row in g.entries() {
        for &x in row {
            for b in x.to_le_bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(0x100000001b3);
            }
        }
    }
    dir.join(format!("gcm-{:016x}-h{}.json", h, height))
}

/// Load from cache when a matching file exists, else build fresh.
fn obtain_algebra(build: &BuildArgs, g: &Gcm) -> Result<GradedAlgebra, Failure> {
    if let Some(dir) = &build.cache {
        let file = cache_file(dir, g, build.height);
        if file.exists() {
            let text = std::fs::read_to_string(&file)
                .map_err(|e| fail(5, format!("cannot read cache: {e}")))?;
            let alg = cache::load(&text).map_err(|e| fail(5, format!("cache error: {e}")))?;
            if alg.gcm() != g || alg.height_cap() != build.height {
                return Err(fail(5, "cache file does not match the request"));
            }
            return Ok(alg);
        }
    }
    build_nilradical(g, build.height).map_err(|e| match e {
        LieError::CapTooSmall { required, actual } => fail(
            3,
            format!("CapTooSmall: need height {required}, given {actual}"),
        ),
        other => fail(2, other.to_string()),
    })
}

fn emit(format: Format, value: &serde_json::Value, table: impl FnOnce() -> String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).unwrap()),
        Format::Table => println!("{}", table()),
    }
}

fn degree_lines_table(lines: &[DegreeLine]) -> String {
    let mut out = String::from("degree          dim  inner  outer  expected  status\n");
    for l in lines {
        out.push_str(&format!(
            "{:<15} {:>3} {:>6} {:>6} {:>9} {:>7}\n",
            l.degree.to_string(),
            l.dim,
            l.inner,
            l.outer,
            l.expected_dim,
            l.status
        ));
    }
    out
}

fn cmd_classify(common: &CommonArgs) -> Result<i32, Failure> {
    let g = read_gcm(&common.matrix)?;
    let t = classify(&g).map_err(|e| fail(2, e.to_string()))?;
    let auts = diagram_automorphisms(&g).len();
    let sym = match symmetrizer(&g) {
        Ok(s) => json!(s.d.iter().map(|d| d.to_string()).collect::<Vec<_>>()),
        Err(_) => json!("nonsymmetrizable"),
    };
    let value = match &t {
        GcmType::Finite(f) => json!({
            "type": "finite",
            "label": f.label,
            "autA": auts,
            "symmetrizer": sym,
        }),
        GcmType::Affine(a) => json!({
            "type": "affine",
            "label": a.label,
            "autA": auts,
            "symmetrizer": sym,
            "marks": a.marks.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
            "comarks": a.comarks.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
            "epsilon": a.epsilon,
            "r": a.r,
        }),
        GcmType::Indefinite => json!({
            "type": "indefinite",
            "autA": auts,
            "symmetrizer": sym,
        }),
    };
    emit(common.format, &value, || {
        format!("type: {}\nautA: {}", t.label(), auts)
    });
    Ok(0)
}

fn cmd_build(build: &BuildArgs) -> Result<i32, Failure> {
    let g = read_gcm(&build.common.matrix)?;
    let alg = obtain_algebra(build, &g)?;
    if let Some(dir) = &build.cache {
        std::fs::create_dir_all(dir)
            .map_err(|e| fail(5, format!("cannot create cache dir: {e}")))?;
        let text = cache::save(&alg).map_err(|e| fail(5, format!("cache error: {e}")))?;
        let file = cache_file(dir, &g, build.height);
        std::fs::write(&file, &text).map_err(|e| fail(5, format!("cannot write cache: {e}")))?;
        eprintln!("cache written to {}", file.display());
    }
    let mut by_height: Vec<(i64, usize)> = Vec::new();
    for (deg, m) in alg.graded_dims() {
        let h = deg.height();
        match by_height.iter_mut().find(|(hh, _)| *hh == h) {
            Some((_, acc)) => *acc += m,
            None => by_height.push((h, m)),
        }
    }
    by_height.sort_unstable();
    let value = json!({
        "height": build.height,
        "dims_by_height": by_height,
        "dims": alg.graded_dims().iter().map(|(d, m)| (d.to_string(), m)).collect::<std::collections::BTreeMap<_, _>>(),
    });
    emit(build.common.format, &value, || {
        let mut s = String::from("height  dim\n");
        for (h, m) in &by_height {
            s.push_str(&format!("{:>6} {:>4}\n", h, m));
        }
        s
    });
    Ok(0)
}

fn cmd_der(build: &BuildArgs, beta: &str) -> Result<i32, Failure> {
    let g = read_gcm(&build.common.matrix)?;
    let beta = parse_beta(beta, g.size())?;
    let alg = obtain_algebra(build, &g)?;
    let space = der_space_n(&alg, &beta).map_err(from_deriv)?;
    let value = json!({
        "degree": beta.0,
        "dim": space.dim(),
        "inner": space.inner_dim,
        "outer": space.outer_dim,
        "validity_cap": space.validity_cap,
    });
    emit(build.common.format, &value, || {
        format!(
            "degree {}: dim {} inner {} outer {}",
            beta,
            space.dim(),
            space.inner_dim,
            space.outer_dim
        )
    });
    Ok(0)
}

fn with_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool")
        .install(f)
}

fn cmd_moody(build: &BuildArgs) -> Result<i32, Failure> {
    let g = read_gcm(&build.common.matrix)?;
    if classify(&g).map_err(|e| fail(2, e.to_string()))? != GcmType::Indefinite {
        return Err(fail(2, "moody requires an indefinite-type matrix"));
    }
    let alg = obtain_algebra(build, &g)?;
    let h = build.height as i64 - g.max_serre_height() as i64;
    if h < 1 {
        return Err(fail(3, "CapTooSmall: height leaves no sweep room"));
    }
    let candidates = candidate_degrees_n(&alg, h).map_err(from_deriv)?;
    // Fan out over the degrees: the algebra is shared read-only and the
    // candidate order is preserved, so the output is deterministic.
    let lines: Vec<DegreeLine> = with_pool(build.jobs, || {
        candidates
            .par_iter()
            .map(|beta| {
                let space = der_space_n(&alg, beta)?;
                let expected = inner_expected_dim(&alg, beta)?;
                Ok(DegreeLine::new(&space, expected, 0))
            })
            .collect::<Result<Vec<_>, DerivError>>()
    })
    .map_err(from_deriv)?;
    let pass = lines.iter().all(|l| l.passed());
    let value = json!({
        "theorem": "Der(n+) = ad(b+)|n+ for indefinite type",
        "sweep_height": h,
        "pass": pass,
        "lines": serde_json::to_value(&lines).unwrap(),
    });
    emit(build.common.format, &value, || degree_lines_table(&lines));
    Ok(if pass { 0 } else { 4 })
}

fn cmd_affine(build: &BuildArgs, k: usize) -> Result<i32, Failure> {
    let g = read_gcm(&build.common.matrix)?;
    let alg = obtain_algebra(build, &g)?;
    let report = affine_outer_check(&alg, k).map_err(from_deriv)?;
    let value = serde_json::to_value(&report).unwrap();
    emit(build.common.format, &value, || {
        degree_lines_table(&report.lines)
    });
    Ok(if report.pass { 0 } else { 4 })
}

fn cmd_borel(build: &BuildArgs, beta: Option<&str>) -> Result<i32, Failure> {
    let g = read_gcm(&build.common.matrix)?;
    let bor = build_borel(&g, build.height).map_err(|e| match e {
        LieError::CapTooSmall { required, actual } => fail(
            3,
            format!("CapTooSmall: need height {required}, given {actual}"),
        ),
        other => fail(2, other.to_string()),
    })?;
    let mut degrees: Vec<RootVec> = vec![RootVec::zero(g.size())];
    match beta {
        Some(s) => degrees.push(parse_beta(s, g.size())?),
        None => {
            let h = build.height as i64 - g.max_serre_height() as i64;
            for (deg, _) in bor.nil.graded_dims() {
                if deg.height() <= h {
                    degrees.push(deg);
                }
            }
        }
    }
    let mut lines = Vec::new();
    let mut pass = true;
    for beta in &degrees {
        let s = der_space_b(&bor, beta).map_err(from_deriv)?;
        let expected = if beta.is_zero() {
            bor.h_dim * bor.center_dim() + bor.h_dim - bor.center_dim()
        } else {
            bor.nil.mult(beta).map_err(|e| from_deriv(e.into()))?
        };
        let expected_outer = if beta.is_zero() {
            bor.h_dim * bor.center_dim()
        } else {
            0
        };
        let ok = s.dim == expected && s.outer_dim == expected_outer;
        pass &= ok;
        lines.push(json!({
            "degree": beta.0,
            "dim": s.dim,
            "inner": s.inner_dim,
            "outer": s.outer_dim,
            "expected_dim": expected,
            "expected_outer": expected_outer,
            "status": if ok { "pass" } else { "fail" },
        }));
    }
    let value = json!({
        "theorem": "Der(b+) = hom(h,c) + ad(b+)",
        "h_dim": bor.h_dim,
        "center_dim": bor.center_dim(),
        "pass": pass,
        "lines": lines,
    });
    emit(build.common.format, &value, || {
        serde_json::to_string_pretty(&value).unwrap()
    });
    Ok(if pass { 0 } else { 4 })
}

fn cmd_h1(build: &BuildArgs) -> Result<i32, Failure> {
    let g = read_gcm(&build.common.matrix)?;
    let alg = obtain_algebra(build, &g)?;
    let h = build.height as i64 - g.max_serre_height() as i64;
    if h < 1 {
        return Err(fail(3, "CapTooSmall: height leaves no sweep room"));
    }
    let report = h1_report(&alg, h).map_err(from_deriv)?;
    let value = serde_json::to_value(&report).unwrap();
    emit(build.common.format, &value, || {
        let mut s = String::from("degree          dim  ad(n+)  h1\n");
        for l in &report.lines {
            s.push_str(&format!(
                "{:<15} {:>3} {:>7} {:>3}\n",
                l.degree.to_string(),
                l.dim,
                l.nil_inner,
                l.h1
            ));
        }
        s.push_str(&format!("total: {}\n", report.total));
        s
    });
    Ok(0)
}

fn cmd_identities(
    rmax: i64,
    sl2max: i64,
    r1: Option<i64>,
    k0: Option<i64>,
    format: Format,
) -> Result<i32, Failure> {
    use kacmoody::combid::{beta_sum, sweep_all};
    if let (Some(r1), Some(k0)) = (r1, k0) {
        if r1 < 1 || !(0..r1).contains(&k0) {
            return Err(fail(2, "need r1 >= 1 and 0 <= k0 < r1"));
        }
        let rep = beta_sum(r1, k0);
        let value = serde_json::to_value(&rep).unwrap();
        emit(format, &value, || format!("S = {}", rep.lhs));
        return Ok(if rep.pass { 0 } else { 4 });
    }
    if rmax < 1 || sl2max < 0 {
        return Err(fail(2, "bounds must be at least 1"));
    }
    let reports = sweep_all(rmax, sl2max);
    let failures: Vec<_> = reports.iter().filter(|r| !r.pass).collect();
    let value = json!({
        "checked": reports.len(),
        "failures": failures.len(),
        "pass": failures.is_empty(),
    });
    emit(format, &value, || {
        format!(
            "checked {} identities, {} failures",
            reports.len(),
            failures.len()
        )
    });
    Ok(if failures.is_empty() { 0 } else { 4 })
}

fn real_main() -> Result<i32, Failure> {
    let cli = Cli::parse();
    match &cli.command {
        Command::Classify { common } => cmd_classify(common),
        Command::Build { build } => cmd_build(build),
        Command::Der { build, beta } => cmd_der(build, beta),
        Command::Moody { build } => cmd_moody(build),
        Command::Borel { build, beta } => cmd_borel(build, beta.as_deref()),
        Command::H1 { build } => cmd_h1(build),
        Command::Affine { build, k } => cmd_affine(build, *k),
        Command::Identities {
            rmax,
            sl2max,
            r1,
            k0,
            format,
        } => cmd_identities(*rmax, *sl2max, *r1, *k0, *format),
    }
}

fn main() {
    match real_main() {
        Ok(code) => std::process::exit(code),
        Err(f) => {
            eprintln!("{}", f.message);
            std::process::exit(f.code);
        }
    }
}
