//! Thin command-line front end over the `delsarte` library. Every
//! subcommand is a direct call into the crate followed by serialization;
//! anything interesting lives in the library and its examples.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use delsarte::certificate::{
    certificate_from_witness, Certificate, CertificateRecord, PairWitness,
};
use delsarte::chain::{barrier_search, sweep_csv, GridSpec};
use delsarte::constructions::{example1, example2, example3};
use delsarte::error::Error;
use delsarte::fourier::Cube;
use delsarte::krawtchouk::{kraw_roots_upto, KrawtchoukTable};
use delsarte::lp::lp_bound;
use delsarte::oracle::{exact_max_code, exact_table, table_csv};
use delsarte::profile::{Side, SymmetricProfile};
use delsarte::sampling::{random_profile, rng, witness_batch};
use delsarte::scalar::{
    jpl1_rate, packing_rate, rat_from_str, rat_to_str, Rat,
};

#[derive(Parser)]
#[command(
    name = "delsarte",
    version,
    about = "Exact Delsarte LP bounds for binary codes",
    propagate_version = true
)]
struct Cli {
    /// Worker threads for parallel sweeps (default: all logical cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Krawtchouk value table, or certified root locations with --roots
    Kraw {
        #[arg(short)]
        n: usize,
        /// largest degree to include (default n)
        #[arg(short)]
        m: Option<usize>,
        #[arg(long)]
        roots: bool,
    },
    /// Exact Fourier transform of a symmetric profile
    Fourier {
        #[arg(short)]
        n: usize,
        /// n + 1 rational values "p/q", comma separated
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<String>,
        /// treat the input as Fourier-side and invert instead
        #[arg(long)]
        inverse: bool,
    },
    /// Re-verify a certificate file; exit 1 if it is not feasible
    Certify { path: PathBuf },
    /// Build a witness family member and report its bound
    Construct {
        /// 1 = ball eigenprofile, 2 = convolution power, 3 = certificate replay
        #[arg(short, long)]
        example: u8,
        #[arg(short)]
        n: Option<usize>,
        #[arg(short)]
        d: Option<usize>,
        /// convolution power for example 2
        #[arg(short)]
        m: Option<u32>,
        /// certificate file to replay for example 3
        #[arg(long)]
        cert: Option<PathBuf>,
        /// write the assembled certificate here
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Exact LP-optimal certificate for (n, d)
    Lp {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        d: usize,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// JPL1 and sphere-packing rate curves as CSV
    Rates {
        #[arg(long, default_value_t = 100)]
        grid: usize,
    },
    /// Barrier sweep over small-support g coefficients (CSV to stdout)
    Explore {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        d: usize,
        /// Krawtchouk support radius of g
        #[arg(short, default_value_t = 2)]
        r: usize,
        /// grid steps per coefficient
        #[arg(long, default_value_t = 8)]
        steps: usize,
        /// upper end for the normalized coefficient ranges, as "p/q"
        #[arg(long, default_value = "4")]
        hi: String,
        /// ball radii for the f family, comma separated
        #[arg(long, value_delimiter = ',', required = true)]
        radii: Vec<usize>,
    },
    /// Exhaustive A(n, d) by branch-and-bound clique search (n ≤ 8)
    Oracle {
        #[arg(short)]
        n: usize,
        /// single distance instead of the full table
        #[arg(short)]
        d: Option<usize>,
    },
    /// Condensed invariant suite; exit 1 on any failure
    Selftest,
}

fn main() -> ExitCode {
    // die quietly when a downstream pipe closes, like other unix filters
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        // ignore failure: the global pool can only be set once
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    match run(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Domain(_) | Error::Parse(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn run(cmd: Cmd) -> delsarte::Result<ExitCode> {
    match cmd {
        Cmd::Kraw { n, m, roots } => {
            let m = m.unwrap_or(n).min(n);
            if roots {
                println!("m,index,root");
                for list in kraw_roots_upto(n, m)? {
                    for (k, x) in list.roots.iter().enumerate() {
                        println!("{},{k},{x:.9}", list.degree);
                    }
                }
            } else {
                let table = KrawtchoukTable::new(n);
                let header: Vec<String> = (0..=m).map(|s| format!("K{s}")).collect();
                println!("i,{}", header.join(","));
                for i in 0..=n {
                    let row: Vec<String> =
                        (0..=m).map(|s| table.get(s, i).to_string()).collect();
                    println!("{i},{}", row.join(","));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Fourier { n, values, inverse } => {
            let vals: Vec<Rat> = values
                .iter()
                .map(|s| rat_from_str(s.trim()))
                .collect::<delsarte::Result<_>>()?;
            let side = if inverse { Side::Fourier } else { Side::Point };
            let input = SymmetricProfile::new(n, side, vals)?;
            let cube = Cube::new(n);
            let output = if inverse {
                cube.inverse(&input)?
            } else {
                cube.fourier(&input)?
            };
            let doc = serde_json::json!({ "input": input, "output": output });
            println!("{}", serde_json::to_string_pretty(&doc)?);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Certify { path } => {
            let text = fs::read_to_string(&path)?;
            let rec: CertificateRecord = serde_json::from_str(&text)?;
            let cube = Cube::new(rec.n);
            let cert = Certificate::check(&cube, rec.d, rec.lambda.clone())?;
            if cert.lambda_hat != rec.lambda_hat {
                eprintln!("stored transform disagrees with recomputation");
                return Ok(ExitCode::from(1));
            }
            match &cert.verdict {
                v if v.is_feasible() => {
                    let report = cert.bound()?;
                    println!("{}", serde_json::to_string_pretty(&report)?);
                    Ok(ExitCode::SUCCESS)
                }
                delsarte::Verdict::Infeasible(reasons) => {
                    for r in reasons {
                        eprintln!("violated: {r}");
                    }
                    Ok(ExitCode::from(1))
                }
                _ => unreachable!(),
            }
        }
        Cmd::Construct { example, n, d, m, cert, emit } => {
            let need = |v: Option<usize>, what: &str| {
                v.ok_or_else(|| Error::Domain(format!("example {example} needs {what}")))
            };
            let (witness, report): (PairWitness, _) = match example {
                1 => {
                    let cube = Cube::new(need(n, "-n")?);
                    let c = example1(&cube, need(d, "-d")?)?;
                    (c.witness, c.report)
                }
                2 => {
                    let cube = Cube::new(need(n, "-n")?);
                    let power =
                        m.ok_or_else(|| Error::Domain("example 2 needs -m".into()))?;
                    let c = example2(&cube, need(d, "-d")?, power)?;
                    (c.witness, c.report)
                }
                3 => {
                    let path = cert.ok_or_else(|| {
                        Error::Domain("example 3 replays a certificate: pass --cert".into())
                    })?;
                    let rec: CertificateRecord =
                        serde_json::from_str(&fs::read_to_string(&path)?)?;
                    let cube = Cube::new(rec.n);
                    let c = Certificate::check(&cube, rec.d, rec.lambda)?;
                    example3(&cube, &c)?
                }
                k => {
                    return Err(Error::Domain(format!(
                        "unknown example {k}; choose 1, 2, or 3"
                    )))
                }
            };
            println!("{}", serde_json::to_string_pretty(&report)?);
            if let Some(path) = emit {
                let cube = Cube::new(witness.n());
                let (c, rep) = certificate_from_witness(&cube, &witness)?;
                let rec = CertificateRecord::new(c, Some(&rep));
                fs::write(path, serde_json::to_string_pretty(&rec)?)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Lp { n, d, emit } => {
            let cube = Cube::new(n);
            let (solution, cert, report) = lp_bound(&cube, d)?;
            eprintln!("simplex pivots: {}", solution.pivots);
            println!("{}", serde_json::to_string_pretty(&report)?);
            if let Some(path) = emit {
                let rec = CertificateRecord::new(cert, Some(&report));
                fs::write(path, serde_json::to_string_pretty(&rec)?)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Rates { grid } => {
            if grid == 0 {
                return Err(Error::Domain("need a positive grid count".into()));
            }
            println!("delta,jpl1,packing");
            for i in 0..=grid {
                let delta = 0.5 * i as f64 / grid as f64;
                println!(
                    "{delta:.6},{},{}",
                    jpl1_rate(delta)?,
                    packing_rate(delta)?
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Explore { n, d, r, steps, hi, radii } => {
            let cube = Cube::new(n);
            let hi = rat_from_str(&hi)?;
            let spec = GridSpec::normalized(n, r, &hi, steps, radii);
            let out = barrier_search(&cube, d, r, &spec)?;
            print!("{}", sweep_csv(&out));
            eprintln!(
                "best: {} (rate {:.6}, margin {:+.6} vs jpl1)",
                rat_to_str(&out.best.bound),
                out.best.rate,
                out.margin
            );
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Oracle { n, d } => {
            let rows = match d {
                Some(d) => vec![exact_max_code(n, d)?],
                None => exact_table(n)?,
            };
            print!("{}", table_csv(&rows));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Selftest => selftest(),
    }
}

fn selftest() -> delsarte::Result<ExitCode> {
    use delsarte::certificate::verify_witness;
    use delsarte::krawtchouk::reciprocity_holds;
    use delsarte::oracle::size_as_rat;
    use rand::Rng;

    let mut ok = true;
    let mut check = |name: &str, pass: bool| {
        println!("{}: {name}", if pass { "PASS" } else { "FAIL" });
        ok &= pass;
    };

    let mut pass = true;
    for n in 1..=20 {
        for i in 0..=n {
            for j in 0..=n {
                pass &= reciprocity_holds(n, i, j);
            }
        }
    }
    check("krawtchouk reciprocity, n ≤ 20", pass);

    let mut pass = true;
    let mut r = rng(0x5e1f);
    for _ in 0..50 {
        let n = 1 + (0..12).filter(|_| r.gen_bool(0.5)).count();
        let cube = Cube::new(n);
        let f = random_profile(&mut r, n, Side::Point);
        let fhat = cube.fourier(&f)?;
        pass &= cube.inverse(&fhat)? == f;
        pass &= cube.inner(&f, &f)? == cube.fourier_inner(&fhat, &fhat)?;
    }
    check("transform round-trip and Parseval, 50 seeded profiles", pass);

    let mut pass = true;
    for n in 1..=6 {
        for d in 1..=n {
            let cube = Cube::new(n);
            let (_, _, report) = lp_bound(&cube, d)?;
            pass &= report.bound >= size_as_rat(&exact_max_code(n, d)?);
        }
    }
    check("LP optimum dominates the exact oracle, n ≤ 6", pass);

    let mut pass = true;
    for w in witness_batch(50, 0xd5)? {
        let cube = Cube::new(w.n());
        pass &= verify_witness(&cube, &w)?.is_empty();
        let (cert, _) = certificate_from_witness(&cube, &w)?;
        pass &= cert.verdict.is_feasible();
    }
    check("50 random witnesses verify and compile to certificates", pass);

    let mut pass = true;
    for n in [10usize, 25, 30] {
        for list in kraw_roots_upto(n, n)? {
            let m = list.degree;
            pass &= list.roots.len() == m;
            pass &= list.roots.iter().all(|&x| x > 0.0 && x < n as f64);
            pass &= list
                .roots
                .windows(2)
                .all(|p| p[1] > p[0] + list.tolerance);
        }
    }
    check("root counts, range, distinctness, n ∈ {10, 25, 30}", pass);

    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
