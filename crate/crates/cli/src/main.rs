//! Command-line surface: enumeration runs, single-form inspection, and
//! equivalence queries.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use ryshkov::artifacts;
use ryshkov::enumerator::{enumerate_from, initial_form, OrbitDatabase, RunConfig};
use ryshkov::equivalence;
use ryshkov::exact::rat::format_rational;
use ryshkov::extremeness::{certify_rational, Verdict};
use ryshkov::formfile;
use ryshkov::forms;
use ryshkov::shortvec;

#[derive(Parser)]
#[command(
    name = "ryshkov",
    about = "Exact enumeration of locally optimal 2-periodic sphere packings",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum EchoFormat {
    Dot,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate vertex orbits and locally optimal packings for a
    /// dimension; writes artifacts into the output directory.
    Enumerate {
        /// Point-set dimension (3..=6 for the built-in starting form).
        #[arg(long)]
        dim: usize,
        /// Orbit count (the pipeline supports 2).
        #[arg(long, default_value_t = 2)]
        m: usize,
        /// Output directory for artifacts and checkpoints.
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Stop after this many processed vertex orbits (partial mode).
        #[arg(long)]
        max_vertices: Option<usize>,
        /// Worker threads for ray classification.
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Report rendering precision (power of two, >= 64).
        #[arg(long, default_value_t = 128)]
        precision_bits: u32,
        /// Facet-pair threshold above which cones are skipped in partial
        /// mode.
        #[arg(long, default_value_t = 50)]
        facet_threshold: usize,
        /// Resume from a checkpoint file.
        #[arg(long)]
        resume: Option<PathBuf>,
        /// Also echo one artifact to stdout.
        #[arg(long, value_enum)]
        format: Option<EchoFormat>,
    },
    /// Inspect a single form file: reduction, minimum, kissing number,
    /// density, and the extremeness verdict.
    Check {
        file: PathBuf,
        #[arg(long, default_value_t = 128)]
        precision_bits: u32,
    },
    /// Decide whether two forms are related by the symmetry group.
    Equiv { file_a: PathBuf, file_b: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Enumerate {
            dim,
            m,
            out,
            max_vertices,
            workers,
            precision_bits,
            facet_threshold,
            resume,
            format,
        } => {
            if m != 2 {
                return Err("the enumeration pipeline supports --m 2 only".into());
            }
            if precision_bits < 64 || !precision_bits.is_power_of_two() {
                return Err("--precision-bits must be a power of two >= 64".into());
            }
            if workers < 1 {
                return Err("--workers must be at least 1".into());
            }
            std::fs::create_dir_all(&out).map_err(|e| e.to_string())?;
            let checkpoint_path = out.join("checkpoint.json");
            let progress_path = checkpoint_path.clone();
            let config = RunConfig {
                dimension: dim,
                m,
                max_vertices,
                workers,
                precision_bits,
                facet_threshold,
                progress: Some(Arc::new(move |db: &OrbitDatabase| {
                    let _ = std::fs::write(
                        &progress_path,
                        ryshkov::checkpoint::save_to_string(db),
                    );
                })),
            };
            let db = match resume {
                Some(path) => {
                    let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
                    let db = ryshkov::checkpoint::load_from_str(&text)
                        .map_err(|e| e.to_string())?;
                    if db.dimension != dim {
                        return Err(format!(
                            "checkpoint dimension {} does not match --dim {dim}",
                            db.dimension
                        ));
                    }
                    let seed = initial_form(dim).map_err(|e| e.to_string())?;
                    enumerate_from(&config, seed, db).map_err(|e| e.to_string())?
                }
                None => {
                    let seed = initial_form(dim).map_err(|e| e.to_string())?;
                    enumerate_from(&config, seed, OrbitDatabase::new(dim, m))
                        .map_err(|e| e.to_string())?
                }
            };
            artifacts::write_all(&db, &out, precision_bits).map_err(|e| e.to_string())?;
            println!(
                "dimension {dim}: {} vertex orbits, {} extreme orbits, {} edge-point orbits, {} whole-edge orbits, complete={}",
                db.vertices.len(),
                db.extreme_count(),
                db.points.len(),
                db.r0_edges.len(),
                db.complete
            );
            for s in &db.skips {
                println!(
                    "skipped vertex orbit {} ({} facet pairs over threshold)",
                    s.vertex_orbit, s.facet_pairs
                );
            }
            if let Some(fmt) = format {
                match fmt {
                    EchoFormat::Dot => print!("{}", artifacts::graph_dot(&db)),
                    EchoFormat::Json => print!("{}", artifacts::graph_json(&db)),
                    EchoFormat::Csv => print!("{}", artifacts::summary_csv(&db, precision_bits)),
                }
            }
            if db.complete {
                Ok(ExitCode::from(0))
            } else {
                Ok(ExitCode::from(2))
            }
        }
        Command::Check { file, precision_bits } => {
            let text = std::fs::read_to_string(&file).map_err(|e| e.to_string())?;
            let parsed = formfile::parse_form(&text).map_err(|e| e.to_string())?;
            let j = parsed.form;
            if let Some(l) = parsed.label {
                println!("label: {l}");
            }
            let (jr, _) = forms::reduce(&j).map_err(|e| e.to_string())?;
            println!("reduced form:");
            print!("{}", formfile::format_form(&jr, None));
            let (min, minset) = shortvec::minimal_vectors(&jr).map_err(|e| e.to_string())?;
            println!("min = {}", format_rational(&min));
            println!("minimal vectors = {}", minset.len());
            println!(
                "kissing = {}",
                format_rational(&shortvec::weighted_kissing(&minset, jr.m()))
            );
            let (psd, rank) =
                ryshkov::exact::mat::psd_rank(jr.matrix()).map_err(|e| e.to_string())?;
            println!("rank = {rank} (psd: {psd})");
            let lattice =
                forms::is_lattice_representation(&jr).map_err(|e| e.to_string())?;
            println!("lattice representation: {}", if lattice { "yes" } else { "no" });
            let dens = forms::normalized_density(&jr, &min).map_err(|e| e.to_string())?;
            println!(
                "density = {} (radicand {})",
                dens.decimal(4),
                dens.radicand_rational()
                    .map(|r| format_rational(&r))
                    .unwrap_or_else(|| "algebraic".into())
            );
            let _ = precision_bits;
            if psd && rank == jr.d() {
                let verdict = certify_rational(&jr).map_err(|e| e.to_string())?;
                print_verdict(&verdict);
            } else {
                println!(
                    "extremeness: not applicable (rank {rank} != d = {}; not a realizable packing)",
                    jr.d()
                );
            }
            Ok(ExitCode::from(0))
        }
        Command::Equiv { file_a, file_b } => {
            let ja = formfile::parse_form(
                &std::fs::read_to_string(&file_a).map_err(|e| e.to_string())?,
            )
            .map_err(|e| format!("{}: {e}", file_a.display()))?
            .form;
            let jb = formfile::parse_form(
                &std::fs::read_to_string(&file_b).map_err(|e| e.to_string())?,
            )
            .map_err(|e| format!("{}: {e}", file_b.display()))?
            .form;
            if ja.d() != jb.d() || ja.m() != jb.m() {
                return Err(format!(
                    "dimension mismatch: ({}, {}) vs ({}, {})",
                    ja.d(),
                    ja.m(),
                    jb.d(),
                    jb.m()
                ));
            }
            match equivalence::equivalent(&ja, &jb).map_err(|e| e.to_string())? {
                Some(t) => {
                    println!("EQUIVALENT");
                    println!("witness T (second = first o T):");
                    let a = t.assemble();
                    for i in 0..a.rows() {
                        let row: Vec<String> =
                            (0..a.cols()).map(|c| a.at(i, c).to_string()).collect();
                        println!("  {}", row.join(" "));
                    }
                    // Re-verify out loud.
                    let check = forms::apply(&ja, &t);
                    println!(
                        "verified: {}",
                        if check.matrix() == jb.matrix() { "exact" } else { "FAILED" }
                    );
                }
                None => {
                    println!("NOT-EQUIVALENT");
                    if let Some(field) = distinguishing_field(&ja, &jb) {
                        println!("distinguished by: {field}");
                    }
                }
            }
            Ok(ExitCode::from(0))
        }
    }
}

fn print_verdict(v: &Verdict) {
    match v {
        Verdict::Extreme(c) => {
            println!("extremeness: extreme");
            println!("  epsilon = {}", c.epsilon.display());
            println!("  null weight = {}", c.null_weight.display());
            for (k, e) in c.pairs.iter().zip(c.eta.iter()) {
                println!("  eta[{:?}] = {}", k, e.display());
            }
        }
        Verdict::NotExtreme(x) => {
            println!("extremeness: not extreme");
            let coords: Vec<String> = x.coords.iter().map(|c| c.display()).collect();
            println!("  counterexample direction coords: {}", coords.join(" "));
        }
        Verdict::FluidCandidate(x) => {
            println!("extremeness: fluid candidate");
            let coords: Vec<String> = x.coords.iter().map(|c| c.display()).collect();
            println!("  sliding direction coords: {}", coords.join(" "));
        }
        Verdict::Inconclusive(r) => println!("extremeness: inconclusive ({r})"),
    }
}

fn distinguishing_field(
    ja: &ryshkov::forms::PeriodicForm,
    jb: &ryshkov::forms::PeriodicForm,
) -> Option<String> {
    let (a1, s1) = equivalence::expand_threshold(ja).ok()?;
    let (a2, s2) = equivalence::expand_threshold(jb).ok()?;
    if a1 != a2 {
        return Some(format!(
            "perfect-set threshold ({} vs {})",
            format_rational(&a1),
            format_rational(&a2)
        ));
    }
    if s1.len() != s2.len() {
        return Some(format!("perfect-set size ({} vs {})", s1.len(), s2.len()));
    }
    let f1 = equivalence::fingerprint(ja, &s1).ok()?;
    let f2 = equivalence::fingerprint(jb, &s2).ok()?;
    if f1.lattice != f2.lattice {
        return Some("lattice-representation flag".into());
    }
    if f1.value_hist != f2.value_hist {
        return Some("value histogram".into());
    }
    if f1.gram_hist != f2.gram_hist {
        return Some("pairwise product histogram".into());
    }
    Some("no fingerprint difference; backtracking search exhausted".into())
}
