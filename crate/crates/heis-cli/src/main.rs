// Command-line front end: verification suites, sweeps, and distance queries
// with deterministic CSV/JSON reports.
//
// Subcommands:
//   dist <x1> <x2> <t>              distance from the origin (both routes)
//   dist --between <p...> <q...>    distance between two points
//   verify <suite>                  run a named suite; exit 0 iff all pass
//   sweep <F|ratio|riccati> ...     plot-ready CSV tables
//   geodesic <x1> <x2> <t>          trajectory-optimized distance oracle
//
// Global flags: --seed N, --config PATH, --out PATH, --format csv|json,
// --tol name=value (repeatable). The HEIS_OUT_DIR environment variable
// prefixes relative --out paths.
//
// Exit codes: 0 all checks pass, 1 any check failed, 2 usage/config error.
//
// Config files are line-oriented `key = value` with `[section]` headers
// matching suite names (plus [global]); command-line flags override file
// values. Floats render in scientific notation with 17 significant digits
// so report bodies diff bit-exactly across platforms; the timestamp line is
// the only part excluded from that contract.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use heis::ccdist;
use heis::geodesy;
use heis::hgroup::Point;
use heis::pharm::FieldSpec;
use heis::report::{Tolerances, VerificationReport};
use heis::suites;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match run(&args) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

#[derive(Debug, Default, Clone)]
struct GlobalOpts {
    seed: Option<u64>,
    config: Option<PathBuf>,
    out: Option<PathBuf>,
    format: Option<String>,
    tols: Vec<(String, f64)>,
}

fn run(args: &[String]) -> Result<ExitCode, String> {
    if args.is_empty() {
        print_usage();
        return Err("missing subcommand".into());
    }
    let (cmd, rest) = args.split_first().unwrap();
    match cmd.as_str() {
        "dist" => cmd_dist(rest),
        "verify" => cmd_verify(rest),
        "sweep" => cmd_sweep(rest),
        "geodesic" => cmd_geodesic(rest),
        "--help" | "-h" | "help" => {
            print_usage();
            Ok(ExitCode::SUCCESS)
        }
        other => Err(format!("unknown subcommand '{other}'")),
    }
}

fn print_usage() {
    println!(
        "usage: heis <command> [args]\n\
         \n\
         commands:\n\
         \x20 dist <x1> <x2> <t>                 distance from the origin\n\
         \x20 dist --between <x1> <x2> <t> <y1> <y2> <s>\n\
         \x20 verify <suite>                     suites: {}\n\
         \x20 sweep F --from A --to B --n N\n\
         \x20 sweep ratio --field KIND --b B --radii R1,R2,...\n\
         \x20 sweep riccati --k2 K --l L [--from R0 --to R1 --n STEPS]\n\
         \x20 geodesic <x1> <x2> <t> [--n N] [--restarts K]\n\
         \n\
         global flags: --seed N  --config PATH  --out PATH  --format csv|json\n\
         \x20             --tol name=value (repeatable)\n\
         exit codes: 0 all pass, 1 any failure, 2 usage/config error",
        suites::SUITE_NAMES.join(" | ")
    );
}

/// Pull global flags out of an argument list; returns remaining positionals.
fn parse_globals(args: &[String]) -> Result<(GlobalOpts, Vec<String>), String> {
    let mut opts = GlobalOpts::default();
    let mut positional = Vec::new();
    let mut it = args.iter().peekable();
    while let Some(arg) = it.next() {
        let need = |it: &mut std::iter::Peekable<std::slice::Iter<String>>, flag: &str| {
            it.next().cloned().ok_or_else(|| format!("flag {flag} needs a value"))
        };
        match arg.as_str() {
            "--seed" => {
                let v = need(&mut it, "--seed")?;
                opts.seed = Some(v.parse().map_err(|_| format!("bad seed '{v}'"))?);
            }
            "--config" => opts.config = Some(PathBuf::from(need(&mut it, "--config")?)),
            "--out" => opts.out = Some(PathBuf::from(need(&mut it, "--out")?)),
            "--format" => {
                let v = need(&mut it, "--format")?;
                if v != "csv" && v != "json" {
                    return Err(format!("unknown format '{v}' (expected csv|json)"));
                }
                opts.format = Some(v);
            }
            "--tol" => {
                let v = need(&mut it, "--tol")?;
                let (name, value) =
                    v.split_once('=').ok_or_else(|| format!("bad --tol '{v}', want name=value"))?;
                let value: f64 =
                    value.parse().map_err(|_| format!("bad tolerance value in '{v}'"))?;
                opts.tols.push((name.to_string(), value));
            }
            _ => positional.push(arg.clone()),
        }
    }
    Ok((opts, positional))
}

/// Line-oriented config: `[section]` headers, `key = value` pairs.
fn parse_config(path: &PathBuf) -> Result<BTreeMap<String, BTreeMap<String, String>>, String> {
    let text =
        std::fs::read_to_string(path).map_err(|e| format!("cannot read {path:?}: {e}"))?;
    let mut sections: BTreeMap<String, BTreeMap<String, String>> = BTreeMap::new();
    let mut current = "global".to_string();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            current = name.trim().to_string();
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("{path:?}:{}: expected 'key = value'", lineno + 1))?;
        sections
            .entry(current.clone())
            .or_default()
            .insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(sections)
}

/// Merge config-file values (global section, then the named section) under
/// the command-line flags, which win.
fn resolve_options(opts: &GlobalOpts, section: &str) -> Result<(u64, String, Tolerances), String> {
    let mut seed = 0u64;
    let mut format = "csv".to_string();
    let mut tol = Tolerances::default();
    if let Some(path) = &opts.config {
        let sections = parse_config(path)?;
        for sec in ["global", section] {
            if let Some(kv) = sections.get(sec) {
                for (key, value) in kv {
                    match key.as_str() {
                        "seed" => {
                            seed = value.parse().map_err(|_| format!("bad seed '{value}'"))?
                        }
                        "format" => format = value.clone(),
                        k if k.starts_with("tol.") => {
                            let v: f64 = value
                                .parse()
                                .map_err(|_| format!("bad tolerance '{key} = {value}'"))?;
                            tol.set(&k[4..], v);
                        }
                        other => return Err(format!("unknown config key '{other}'")),
                    }
                }
            }
        }
    }
    if let Some(s) = opts.seed {
        seed = s;
    }
    if let Some(f) = &opts.format {
        format = f.clone();
    }
    for (name, value) in &opts.tols {
        tol.set(name, *value);
    }
    if format != "csv" && format != "json" {
        return Err(format!("unknown format '{format}'"));
    }
    Ok((seed, format, tol))
}

fn out_path(opts: &GlobalOpts) -> Option<PathBuf> {
    let path = opts.out.clone()?;
    if path.is_relative() {
        if let Ok(dir) = std::env::var("HEIS_OUT_DIR") {
            return Some(PathBuf::from(dir).join(path));
        }
    }
    Some(path)
}

fn emit(opts: &GlobalOpts, body: &str) -> Result<(), String> {
    match out_path(opts) {
        Some(path) => {
            if let Some(parent) = path.parent() {
                if !parent.as_os_str().is_empty() {
                    std::fs::create_dir_all(parent)
                        .map_err(|e| format!("cannot create {parent:?}: {e}"))?;
                }
            }
            std::fs::write(&path, body).map_err(|e| format!("cannot write {path:?}: {e}"))
        }
        None => {
            std::io::stdout().write_all(body.as_bytes()).map_err(|e| e.to_string())
        }
    }
}

fn sci(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.17e}")
    } else {
        format!("{v}")
    }
}

fn unix_timestamp() -> u64 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

/// Render a verification report. The `# timestamp=` line (CSV) and the
/// `"timestamp"` field (JSON) are the only non-reproducible bytes.
fn render_report(
    rep: &VerificationReport,
    format: &str,
    seed: u64,
    tol: &Tolerances,
) -> String {
    match format {
        "json" => {
            let entries: Vec<serde_json::Value> = rep
                .entries
                .iter()
                .map(|e| {
                    serde_json::json!({
                        "name": e.name,
                        "value": sci(e.value),
                        "bound": sci(e.bound),
                        "pass": e.pass,
                    })
                })
                .collect();
            let stamps: BTreeMap<_, _> = rep.stamps.iter().cloned().collect();
            let tols: BTreeMap<String, String> =
                tol.names().map(|(k, v)| (k.clone(), sci(*v))).collect();
            let doc = serde_json::json!({
                "suite": rep.suite,
                "catalog_version": rep.catalog_version,
                "config": { "seed": seed, "tolerances": tols },
                "stamps": stamps,
                "entries": entries,
                "summary": { "passed": rep.passed(), "failed": rep.failed() },
                "timestamp": unix_timestamp(),
            });
            let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
            s.push('\n');
            s
        }
        _ => {
            let mut s = String::new();
            s.push_str(&format!("# suite={}\n", rep.suite));
            s.push_str(&format!("# catalog_version={}\n", rep.catalog_version));
            s.push_str(&format!("# config.seed={seed}\n"));
            for (k, v) in tol.names() {
                s.push_str(&format!("# config.tol.{k}={}\n", sci(*v)));
            }
            for (k, v) in &rep.stamps {
                s.push_str(&format!("# stamp.{k}={v}\n"));
            }
            s.push_str(&format!("# timestamp={}\n", unix_timestamp()));
            s.push_str("name,value,bound,pass\n");
            for e in &rep.entries {
                s.push_str(&format!("{},{},{},{}\n", e.name, sci(e.value), sci(e.bound), e.pass));
            }
            s.push_str(&format!("# summary passed={} failed={}\n", rep.passed(), rep.failed()));
            s
        }
    }
}

fn parse_point(args: &[String]) -> Result<Point, String> {
    if args.len() != 3 {
        return Err(format!("expected 3 coordinates, got {}", args.len()));
    }
    let mut c = [0.0f64; 3];
    for (i, a) in args.iter().enumerate() {
        c[i] = a.parse().map_err(|_| format!("bad coordinate '{a}'"))?;
    }
    let p = Point::new(c[0], c[1], c[2]);
    if !p.is_finite() {
        return Err("coordinates must be finite".into());
    }
    Ok(p)
}

fn cmd_dist(args: &[String]) -> Result<ExitCode, String> {
    let (opts, positional) = parse_globals(args)?;
    let between = positional.first().map(|s| s == "--between").unwrap_or(false);
    let mut body = String::new();
    if between {
        if positional.len() != 7 {
            return Err("dist --between needs 6 coordinates".into());
        }
        let p = parse_point(&positional[1..4])?;
        let q = parse_point(&positional[4..7])?;
        let d = ccdist::cc_distance_between(p, q).map_err(|e| e.to_string())?;
        body.push_str(&format!("d = {}\n", sci(d)));
    } else {
        let p = parse_point(&positional)?;
        let info = ccdist::cc_distance_full(p).map_err(|e| e.to_string())?;
        body.push_str(&format!("r = {}\n", sci(info.r)));
        match info.phi {
            Some(sol) => {
                body.push_str(&format!("phi = {}\n", sci(sol.phi)));
                body.push_str(&format!("residual = {}\n", sci(sol.residual)));
                body.push_str(&format!("iterations = {}\n", sol.iterations));
            }
            None => body.push_str(&format!("axis_limit = {}\n", info.axis_limit)),
        }
        body.push_str(&format!("r_profile_form = {}\n", sci(info.r)));
        body.push_str(&format!("r_nu_form = {}\n", sci(info.r_alt)));
        body.push_str(&format!("route_gap_rel = {}\n", sci(info.gap)));
    }
    emit(&opts, &body)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: &[String]) -> Result<ExitCode, String> {
    let (opts, positional) = parse_globals(args)?;
    let suite = positional
        .first()
        .ok_or_else(|| format!("verify needs a suite name: {:?}", suites::SUITE_NAMES))?;
    if !suites::SUITE_NAMES.contains(&suite.as_str()) {
        return Err(format!("unknown suite '{suite}'; expected one of {:?}", suites::SUITE_NAMES));
    }
    let (seed, format, tol) = resolve_options(&opts, suite)?;
    let rep = suites::run_suite(suite, seed, &tol).map_err(|e| e.to_string())?;
    let body = render_report(&rep, &format, seed, &tol);
    emit(&opts, &body)?;
    if rep.all_pass() {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("{}: {} of {} checks failed", rep.suite, rep.failed(), rep.entries.len());
        Ok(ExitCode::from(1))
    }
}

fn flag_value(positional: &[String], flag: &str) -> Option<String> {
    positional.iter().position(|a| a == flag).and_then(|i| positional.get(i + 1).cloned())
}

fn parse_field_spec(text: &str) -> Result<FieldSpec, String> {
    let (kind, param) = match text.split_once(':') {
        Some((k, p)) => (k, Some(p)),
        None => (text, None),
    };
    let num = |p: Option<&str>| -> Result<f64, String> {
        p.ok_or_else(|| format!("field '{text}' needs a parameter"))?
            .parse()
            .map_err(|_| format!("bad field parameter in '{text}'"))
    };
    match kind {
        "coordinate-x1" => Ok(FieldSpec::CoordinateX1),
        "coordinate-x2" => Ok(FieldSpec::CoordinateX2),
        "coordinate-t" => Ok(FieldSpec::CoordinateT),
        "affine-positive" => Ok(FieldSpec::AffinePositive { c: num(param)? }),
        "gauge-power" => Ok(FieldSpec::GaugePower { alpha: num(param)? }),
        "constant" => {
            let c = num(param)?;
            Ok(FieldSpec::Polynomial { name: format!("{c}"), coeffs: vec![(0, 0, 0, c)] })
        }
        "translated-gauge" => {
            let coords: Vec<&str> = param
                .ok_or_else(|| format!("'{text}' needs coordinates"))?
                .split(',')
                .collect();
            if coords.len() != 3 {
                return Err(format!("'{text}' needs 3 comma-separated coordinates"));
            }
            let mut c = [0.0f64; 3];
            for (i, s) in coords.iter().enumerate() {
                c[i] = s.parse().map_err(|_| format!("bad coordinate '{s}'"))?;
            }
            Ok(FieldSpec::Translated {
                base: Box::new(FieldSpec::GaugePower { alpha: 0.5 }),
                p: Point::new(c[0], c[1], c[2]),
            })
        }
        other => Err(format!(
            "unknown field kind '{other}' (coordinate-x1|coordinate-x2|coordinate-t|\
             affine-positive:<c>|gauge-power:<a>|constant:<c>|translated-gauge:<x1>,<x2>,<t>)"
        )),
    }
}

fn cmd_sweep(args: &[String]) -> Result<ExitCode, String> {
    let (opts, positional) = parse_globals(args)?;
    let kind = positional.first().ok_or("sweep needs a kind: F | ratio | riccati")?;
    let (seed, _format, _tol) = resolve_options(&opts, "sweep")?;
    let mut body = String::new();
    match kind.as_str() {
        "F" => {
            let from: f64 = flag_value(&positional, "--from")
                .unwrap_or_else(|| "0.01".into())
                .parse()
                .map_err(|_| "bad --from")?;
            let to: f64 = flag_value(&positional, "--to")
                .unwrap_or_else(|| "3.13".into())
                .parse()
                .map_err(|_| "bad --to")?;
            let n: usize = flag_value(&positional, "--n")
                .unwrap_or_else(|| "1000".into())
                .parse()
                .map_err(|_| "bad --n")?;
            if !(from > 0.0 && to < std::f64::consts::PI && to > from && n >= 2) {
                return Err(format!("bad F sweep range ({from}, {to}) x {n}"));
            }
            body.push_str("phi,F_closed,r_dlap_numeric_at_matched_point\n");
            for i in 0..n {
                let phi = from + (to - from) * i as f64 / (n - 1) as f64;
                let closed = heis::sublap::sublap_r_closed(phi).map_err(|e| e.to_string())?;
                // the matched point: s = 1 on the ray where mu(phi) = |t|
                let t = ccdist::mu(phi).map_err(|e| e.to_string())?;
                let p = Point::new(1.0, 0.0, t);
                let numeric = ccdist::cc_distance(p).map_err(|e| e.to_string())?
                    * heis::sublap::sublap_r_numeric(p).map_err(|e| e.to_string())?;
                body.push_str(&format!("{},{},{}\n", sci(phi), sci(closed), sci(numeric)));
            }
        }
        "ratio" => {
            let field = parse_field_spec(
                &flag_value(&positional, "--field").ok_or("ratio sweep needs --field")?,
            )?;
            let b: f64 = flag_value(&positional, "--b")
                .unwrap_or_else(|| "1".into())
                .parse()
                .map_err(|_| "bad --b")?;
            let radii: Vec<f64> = flag_value(&positional, "--radii")
                .ok_or("ratio sweep needs --radii")?
                .split(',')
                .map(|s| s.parse::<f64>().map_err(|_| format!("bad radius '{s}'")))
                .collect::<Result<_, _>>()?;
            let u = heis::pharm::make_field(&field).map_err(|e| e.to_string())?;
            let rows = heis::estimates::liouville_probe(&u, &radii, b, seed, 400)
                .map_err(|e| e.to_string())?;
            body.push_str("radius,sup_ratio,positivity_failures\n");
            for row in rows {
                body.push_str(&format!(
                    "{},{},{}\n",
                    sci(row.radius),
                    row.sup_ratio.map(sci).unwrap_or_else(|| "nan".into()),
                    row.positivity_failures
                ));
            }
        }
        "riccati" => {
            let k2: f64 = flag_value(&positional, "--k2")
                .ok_or("riccati sweep needs --k2")?
                .parse()
                .map_err(|_| "bad --k2")?;
            let l: f64 = flag_value(&positional, "--l")
                .ok_or("riccati sweep needs --l")?
                .parse()
                .map_err(|_| "bad --l")?;
            let from: f64 = flag_value(&positional, "--from")
                .unwrap_or_else(|| "0.5".into())
                .parse()
                .map_err(|_| "bad --from")?;
            let to: f64 = flag_value(&positional, "--to")
                .unwrap_or_else(|| "20".into())
                .parse()
                .map_err(|_| "bad --to")?;
            let n: usize = flag_value(&positional, "--n")
                .unwrap_or_else(|| "10000".into())
                .parse()
                .map_err(|_| "bad --n")?;
            let y0: f64 = match flag_value(&positional, "--y0") {
                Some(v) => v.parse().map_err(|_| "bad --y0")?,
                None => 0.5 / from,
            };
            let params = heis::comparison::ComparisonParams::new(k2, l, 0.5, 0.5)
                .map_err(|e| e.to_string())?;
            let sol = heis::comparison::riccati_integrate(&params, y0, from, to, n)
                .map_err(|e| e.to_string())?;
            body.push_str("r,y\n");
            for (r, y) in sol.rs.iter().zip(sol.ys.iter()) {
                body.push_str(&format!("{},{}\n", sci(*r), sci(*y)));
            }
            if let Some(b) = sol.blow_up {
                body.push_str(&format!("# blow_up_radius={}\n", sci(b)));
            }
        }
        other => return Err(format!("unknown sweep kind '{other}'")),
    }
    emit(&opts, &body)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_geodesic(args: &[String]) -> Result<ExitCode, String> {
    let (opts, positional) = parse_globals(args)?;
    if positional.len() < 3 {
        return Err("geodesic needs 3 target coordinates".into());
    }
    let target = parse_point(&positional[..3])?;
    let n: usize = flag_value(&positional, "--n")
        .unwrap_or_else(|| "256".into())
        .parse()
        .map_err(|_| "bad --n")?;
    let restarts: usize = flag_value(&positional, "--restarts")
        .unwrap_or_else(|| "8".into())
        .parse()
        .map_err(|_| "bad --restarts")?;
    let (seed, _, _) = resolve_options(&opts, "geodesic")?;
    let res = geodesy::optimize_geodesic(target, n, restarts, seed).map_err(|e| e.to_string())?;
    let closed = ccdist::cc_distance(target).map_err(|e| e.to_string())?;
    let mut body = String::new();
    body.push_str(&format!("length = {}\n", sci(res.length)));
    body.push_str(&format!("closed_form = {}\n", sci(closed)));
    body.push_str(&format!(
        "rel_gap = {}\n",
        sci((res.length - closed).abs() / closed.max(f64::MIN_POSITIVE))
    ));
    body.push_str(&format!("endpoint_error = {}\n", sci(res.endpoint_error)));
    body.push_str(&format!("segments = {n}\nrestarts = {restarts}\n"));
    emit(&opts, &body)?;
    Ok(ExitCode::SUCCESS)
}
