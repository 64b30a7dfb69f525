//! `qgp`: construct, verify and export quantum Goethals-Preparata codes.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 budget
//! exceeded, 4 I/O error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qgp_core::bits::BitMatrix;
use qgp_core::cosetcode::{ClassicalTower, CosetUnionCode, Family};
use qgp_core::distsearch::DEFAULT_BUDGET;
use qgp_core::manifest::{construct, Manifest, ManifestBody};
use qgp_core::stabilizer::StabilizerCode;
use qgp_core::unioncode::{
    gp_table_row, render_table, run_kl_suite, verify_gp_distance, GpComponents, GpReport,
    VerifyOptions,
};
use qgp_core::Error;

#[derive(Parser)]
#[command(name = "qgp", version, about = "Quantum Goethals-Preparata codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Write a JSON manifest for a code.
    Construct {
        /// goethals, preparata, stabilizer or gp-quantum
        #[arg(long)]
        family: String,
        #[arg(short, default_value_t = 6)]
        m: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certify the distance of the quantum Goethals-Preparata code.
    Verify {
        #[arg(short)]
        m: Option<usize>,
        /// Verify a (possibly edited) gp-quantum manifest instead of building.
        #[arg(long, conflicts_with = "m")]
        manifest: Option<PathBuf>,
        #[arg(long, default_value_t = 7)]
        radius_g: usize,
        #[arg(long, default_value_t = 5)]
        radius_p: usize,
        #[arg(long, default_value_t = 3)]
        radius_rm: usize,
        #[arg(long)]
        workers: Option<usize>,
        /// Maximum enumerated patterns per search.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print code parameters for the given m values.
    Table {
        #[arg(short, num_args = 1.., default_values_t = [6, 8, 10])]
        m: Vec<usize>,
    },
    /// Compare exact union-code distances with dense Knill-Laflamme checks.
    KlCheck {
        #[arg(long, default_value_t = 50)]
        instances: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Move one translation into an occupied coset in every instance.
        #[arg(long)]
        corrupt: bool,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Write generator and stabilizer matrices from a manifest.
    Export {
        #[arg(long)]
        manifest: PathBuf,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
    },
}

enum Failure {
    Verify,
    Usage(String),
    Budget(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Budget { .. } => Failure::Budget(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verify => 1,
            Failure::Usage(_) => 2,
            Failure::Budget(_) => 3,
            Failure::Io(_) => 4,
        }
    }
}

fn io_err(path: &Path, e: std::io::Error) -> Failure {
    Failure::Io(format!("{}: {e}", path.display()))
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| io_err(p, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_manifest(path: &Path) -> Result<Manifest, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    Ok(Manifest::from_json(&text)?)
}

fn set_workers(workers: Option<usize>) -> Result<(), Failure> {
    if let Some(w) = workers {
        if w == 0 {
            return Err(Failure::Usage("--workers must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    Ok(())
}

fn render_report(r: &GpReport) -> String {
    let mut out = format!(
        "quantum Goethals-Preparata code, m = {}, n = {}, k = {}, translations = {}, log2 dim = {}\n",
        r.m,
        r.n,
        r.k.map_or("?".into(), |k| k.to_string()),
        r.translations,
        r.log2_dim.map_or("?".into(), |d| d.to_string()),
    );
    for c in &r.checks {
        out.push_str(&format!(
            "{} {} ({} instances, {} ms)\n     {}\n",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.instances,
            c.elapsed_ms,
            c.detail
        ));
        if let Some(w) = &c.witness {
            out.push_str(&format!("     witness {w}\n"));
        }
    }
    out.push_str(&match r.certified_distance {
        Some(d) => format!("certified distance {d} ({} ms)\n", r.elapsed_ms),
        None => format!("distance not certified ({} ms)\n", r.elapsed_ms),
    });
    out
}

fn cmd_verify(
    components: GpComponents,
    opts: VerifyOptions,
    out: Option<&Path>,
    format: Format,
) -> Result<(), Failure> {
    let report = verify_gp_distance(&components, &opts)?;
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
        Format::Text => render_report(&report),
    };
    write_or_print(out, &text)?;
    if report.all_passed() {
        Ok(())
    } else {
        Err(Failure::Verify)
    }
}

fn export_stabilizer(code: &StabilizerCode, dir: &Path) -> Result<Vec<PathBuf>, Failure> {
    let stab = code.stab();
    let gf4: String = stab
        .generator_vectors()
        .iter()
        .map(|v| v.gf4_symbols() + "\n")
        .collect();
    let files = [
        ("stabilizer.txt", stab.generators().to_text()),
        ("normalizer.txt", code.norm().generators().to_text()),
        ("stabilizer.gf4", gf4),
    ];
    write_files(dir, &files)
}

fn export_coset(code: &CosetUnionCode, dir: &Path) -> Result<Vec<PathBuf>, Failure> {
    let reps = BitMatrix::from_rows(code.n(), code.reps().to_vec())?;
    write_files(
        dir,
        &[
            ("generator.txt", code.base().generator().to_text()),
            ("reps.txt", reps.to_text()),
        ],
    )
}

fn write_files(dir: &Path, files: &[(&str, String)]) -> Result<Vec<PathBuf>, Failure> {
    fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    let mut written = Vec::new();
    for (name, body) in files {
        let p = dir.join(name);
        fs::write(&p, body).map_err(|e| io_err(&p, e))?;
        written.push(p);
    }
    Ok(written)
}

fn cmd_export(manifest: &Path, dir: &Path) -> Result<(), Failure> {
    let written = match read_manifest(manifest)?.body {
        ManifestBody::Goethals(c) => export_coset(&c.to_code(Family::Goethals)?, dir)?,
        ManifestBody::Preparata(c) => export_coset(&c.to_code(Family::Preparata)?, dir)?,
        ManifestBody::Stabilizer(s) => export_stabilizer(&s.to_code()?, dir)?,
        ManifestBody::GpQuantum(g) => {
            let c = g.to_components()?;
            let code = StabilizerCode::from_normalizer(c.normalizer()?)?;
            export_stabilizer(&code, dir)?
        }
    };
    for p in written {
        println!("{}", p.display());
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Construct { family, m, out } => {
            let manifest = construct(&family, m)?;
            write_or_print(out.as_deref(), &manifest.to_json())
        }
        Command::Verify {
            m,
            manifest,
            radius_g,
            radius_p,
            radius_rm,
            workers,
            budget,
            out,
            format,
        } => {
            set_workers(workers)?;
            let components = match manifest {
                Some(path) => match read_manifest(&path)?.body {
                    ManifestBody::GpQuantum(g) => g.to_components()?,
                    _ => return Err(Failure::Usage("verify needs a gp-quantum manifest".into())),
                },
                None => GpComponents::from_tower(&ClassicalTower::build(m.unwrap_or(6))?)?,
            };
            let opts = VerifyOptions {
                radius_g,
                radius_p,
                radius_rm,
                budget,
            };
            cmd_verify(components, opts, out.as_deref(), format)
        }
        Command::Table { m } => {
            let rows = m
                .iter()
                .map(|&m| gp_table_row(m))
                .collect::<qgp_core::Result<Vec<_>>>()?;
            print!("{}", render_table(&rows));
            Ok(())
        }
        Command::KlCheck {
            instances,
            seed,
            corrupt,
            workers,
            format,
        } => {
            set_workers(workers)?;
            if instances == 0 {
                eprintln!("warning: no instances requested");
            }
            let r = run_kl_suite(seed, instances, corrupt);
            match format {
                Format::Json => {
                    println!("{}", serde_json::to_string_pretty(&r).expect("serializes"))
                }
                Format::Text => {
                    for i in &r.instances {
                        println!(
                            "{} #{:<3} n={} k={} K={} exact={} kl={} {}",
                            if i.agree { "ok      " } else { "MISMATCH" },
                            i.index,
                            i.n,
                            i.k,
                            i.translations,
                            i.exact.map_or("-".into(), |d| d.to_string()),
                            i.knill_laflamme.map_or("-".into(), |d| d.to_string()),
                            i.detail
                        );
                    }
                    let agree = r.instances.iter().filter(|i| i.agree).count();
                    println!("{agree}/{} instances agree", r.instances.len());
                }
            }
            if r.all_agree() {
                Ok(())
            } else {
                Err(Failure::Verify)
            }
        }
        Command::Export { manifest, out } => cmd_export(&manifest, &out),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Verify => {}
                Failure::Usage(s) | Failure::Budget(s) | Failure::Io(s) => eprintln!("error: {s}"),
            }
            ExitCode::from(f.code())
        }
    }
}
