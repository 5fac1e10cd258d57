use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use nbpoly::adjacency::is_2neighborly_bruteforce;
use nbpoly::canon::representative_with_symmetry;
use nbpoly::combclass::canonical_incidence;
use nbpoly::gale::{count_2neighborly_d_plus_2, enumerate_d_plus_2};
use nbpoly::hull::facets_with_incidence;
use nbpoly::lattice::{
    enumerate_faces, f_vector_from_faces, is_2simple, vertex_figure_incidence, MAX_LATTICE_VERTICES,
};
use nbpoly::pipeline::{
    census, classify_run, load_classification, run_enumeration, EnumerationConfig, StopReason,
    DEFAULT_CHUNK_SIZE,
};
use nbpoly::ratlin::affine_rank;
use nbpoly::{Error, Polytope};

mod input;

const EXIT_DATA: u8 = 3;
const EXIT_CAP: u8 = 4;

#[derive(Parser)]
#[command(name = "nbpoly", version, about = "2-neighborly 0/1-polytopes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate class representatives level by level into a directory.
    Enumerate {
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=8))]
        dim: u8,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        max_level: Option<usize>,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        workers: usize,
        /// Candidate buffer size in bytes before spilling a sorted chunk.
        #[arg(long, default_value_t = DEFAULT_CHUNK_SIZE)]
        chunk_size: usize,
        /// Reuse level files already present in the output directory.
        #[arg(long)]
        resume: bool,
        /// Abort a level after this many candidates.
        #[arg(long)]
        candidate_cap: Option<u64>,
    },
    /// Classify every level file of an enumeration directory.
    Classify {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=16))]
        dim: u8,
        dir: PathBuf,
        #[arg(long, default_value_t = 0)]
        workers: usize,
    },
    /// Summarize a classified directory per vertex count.
    Census {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=16))]
        dim: u8,
        dir: PathBuf,
        /// Print the f-vector census as `f0,...,count` lines instead.
        #[arg(long)]
        csv: bool,
    },
    /// Report adjacency, facets and face lattice data for a vertex file.
    Check {
        file: PathBuf,
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Print the class representative of a vertex file.
    Canon {
        file: PathBuf,
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Count combinatorial types with d+2 vertices.
    Gale {
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..))]
        dim: u8,
    },
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn read_polytope(file: &PathBuf, dim: Option<usize>) -> nbpoly::Result<Polytope> {
    input::parse_polytope(&fs::read_to_string(file)?, dim)
}

fn check(p: &Polytope) -> nbpoly::Result<()> {
    let d = p.dim();
    println!("vertices: {}", p.len());
    println!("2-neighborly: {}", yes_no(is_2neighborly_bruteforce(p)));
    let rank = affine_rank(p.vertices(), d)?;
    println!("affine rank: {rank}");
    if rank < d {
        println!("not full-dimensional");
        return Ok(());
    }
    let (facets, m) = facets_with_incidence(p)?;
    println!("facets: {}", facets.len());
    if p.len() > MAX_LATTICE_VERTICES {
        println!("face lattice: skipped (more than {MAX_LATTICE_VERTICES} vertices)");
        return Ok(());
    }
    let faces = enumerate_faces(&m, p)?;
    println!("f-vector: {}", f_vector_from_faces(&faces));
    if d >= 3 {
        println!("2-simple: {}", yes_no(is_2simple(&faces, d)?));
    }
    let mut figures = Vec::with_capacity(p.len());
    for v in 0..p.len() {
        let vf = vertex_figure_incidence(&faces, v)?;
        figures.push((
            vf.num_vertices(),
            vf.num_facets(),
            canonical_incidence(&vf)?,
        ));
    }
    let first = &figures[0];
    if figures.iter().all(|f| f == first) {
        println!(
            "vertex figures: {} vertices / {} facets, all equivalent",
            first.0, first.1
        );
    } else {
        let mut types: Vec<_> = figures.iter().collect();
        types.sort();
        types.dedup();
        let profile: Vec<String> = figures.iter().map(|(a, c, _)| format!("{a}/{c}")).collect();
        println!(
            "vertex figures: {} combinatorial types; vertices/facets per vertex: {}",
            types.len(),
            profile.join(" ")
        );
    }
    Ok(())
}

fn run(cli: Cli) -> nbpoly::Result<ExitCode> {
    match cli.command {
        Command::Enumerate {
            dim,
            out,
            max_level,
            workers,
            chunk_size,
            resume,
            candidate_cap,
        } => {
            let mut cfg = EnumerationConfig::new(usize::from(dim), out);
            cfg.max_level = max_level;
            cfg.workers = workers;
            cfg.chunk_size = chunk_size;
            cfg.resume = resume;
            cfg.candidate_cap = candidate_cap;
            let run = run_enumeration(&cfg)?;
            println!("{:>3} {:>12} {:>12}", "n", "classes", "full-dim");
            for l in &run.levels {
                println!("{:>3} {:>12} {:>12}", l.n, l.class_count, l.full_dim_count);
            }
            let full: u64 = run.levels.iter().map(|l| l.full_dim_count).sum();
            println!(
                "total {} classes, {full} full-dimensional",
                run.total_classes()
            );
            match run.stop {
                StopReason::Exhausted => println!("N2({dim}) = {}", run.max_vertices()),
                StopReason::MaxLevel => println!("stopped at the level limit"),
                StopReason::CandidateCap {
                    level,
                    candidates,
                    cap,
                } => {
                    eprintln!("level {level} aborted after {candidates} candidates (cap {cap})");
                    return Ok(ExitCode::from(EXIT_CAP));
                }
            }
        }
        Command::Classify { dim, dir, workers } => {
            let d = usize::from(dim);
            let summaries = classify_run(d, &dir, workers)?;
            let c = census(d, &summaries)?;
            println!("{:>3} {:>12} {:>12}", "n", "classes", "full-dim");
            for r in &c.rows {
                println!("{:>3} {:>12} {:>12}", r.n, r.class_count, r.full_dim_count);
            }
            println!(
                "total {} classes, {} full-dimensional",
                c.total_classes, c.total_full_dim
            );
        }
        Command::Census { dim, dir, csv } => {
            let d = usize::from(dim);
            let summaries = load_classification(d, &dir)?;
            let c = census(d, &summaries)?;
            if csv {
                print!("{}", c.f_vector_csv());
            } else {
                println!("{c}");
            }
        }
        Command::Check { file, dim } => check(&read_polytope(&file, dim)?)?,
        Command::Canon { file, dim } => {
            let p = read_polytope(&file, dim)?;
            let (rep, g) = representative_with_symmetry(&p);
            println!("{rep}");
            for row in rep.coordinates() {
                let cells: Vec<String> = row.iter().map(u8::to_string).collect();
                println!("{}", cells.join(" "));
            }
            let perm: Vec<String> = g.perm().iter().map(|x| x.to_string()).collect();
            println!(
                "# permutation {} switch {:0w$b}",
                perm.join(" "),
                g.switch(),
                w = rep.dim()
            );
        }
        Command::Gale { dim } => {
            let d = usize::from(dim);
            for t in enumerate_d_plus_2(d)? {
                let mark = if t.is_2neighborly() {
                    " 2-neighborly"
                } else {
                    ""
                };
                println!("{t}{mark}");
            }
            println!(
                "all: {}, 2-neighborly: {}",
                enumerate_d_plus_2(d)?.len(),
                count_2neighborly_d_plus_2(d)?
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::CandidateCap { .. } => ExitCode::from(EXIT_CAP),
                Error::InvalidArgument(_) | Error::UnsupportedDimension(_) => ExitCode::from(2),
                _ => ExitCode::from(EXIT_DATA),
            }
        }
    }
}
