//! Level-by-level enumeration, classification and census.
//!
//! Level `n` holds the representatives of every 2-neighborly class with `n`
//! vertices. Level `n + 1` is obtained by adding each admissible point to
//! each member of level `n`, canonicalizing, and removing duplicates. The
//! candidates are buffered in memory, spilled as sorted chunk files when the
//! buffer grows past the chunk size, and merged into the next level file.
//! Output order comes from the final sort only, so results do not depend on
//! the number of workers.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};
use std::fmt::{self, Write as _};
use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use log::{debug, info};
use rayon::prelude::*;
use rayon::ThreadPool;

use crate::adjacency::extend_is_2neighborly_unchecked;
use crate::canon::representative;
use crate::combclass::canonical_incidence;
use crate::cube::{cube_size, Point, Polytope};
use crate::error::{Error, Result};
use crate::hull::facets_with_incidence;
use crate::lattice::{f_vector, FVector};
use crate::levelfile::{read_level_header, value_width, LevelReader, LevelWriter};
use crate::ratlin::affine_rank_unchecked;

pub const DEFAULT_CHUNK_SIZE: usize = 64 << 20;
pub const MAX_ENUMERATION_DIM: usize = 8;
const BATCH: usize = 512;

pub fn level_path(dir: &Path, n: usize) -> PathBuf {
    dir.join(format!("level{n:02}.nbp"))
}

pub fn class_path(dir: &Path, n: usize) -> PathBuf {
    dir.join(format!("class{n:02}.tsv"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LevelStats {
    pub d: usize,
    pub n: usize,
    pub class_count: u64,
    pub full_dim_count: u64,
}

#[derive(Clone, Debug)]
pub struct EnumerationConfig {
    pub dim: usize,
    pub out_dir: PathBuf,
    pub max_level: Option<usize>,
    /// Worker threads; 0 uses every available core.
    pub workers: usize,
    /// Bytes of buffered candidates (in level-file encoding) before a
    /// sorted chunk is spilled to disk.
    pub chunk_size: usize,
    pub resume: bool,
    /// Abort a level once this many candidates have been generated.
    pub candidate_cap: Option<u64>,
}

impl EnumerationConfig {
    pub fn new(dim: usize, out_dir: impl Into<PathBuf>) -> Self {
        Self {
            dim,
            out_dir: out_dir.into(),
            max_level: None,
            workers: 0,
            chunk_size: DEFAULT_CHUNK_SIZE,
            resume: false,
            candidate_cap: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StopReason {
    /// The last level written is empty.
    Exhausted,
    MaxLevel,
    CandidateCap {
        level: usize,
        candidates: u64,
        cap: u64,
    },
}

#[derive(Clone, Debug)]
pub struct EnumerationRun {
    pub levels: Vec<LevelStats>,
    pub stop: StopReason,
}

impl EnumerationRun {
    pub fn total_classes(&self) -> u64 {
        self.levels.iter().map(|l| l.class_count).sum()
    }

    /// Largest `n` with a nonempty level.
    pub fn max_vertices(&self) -> usize {
        self.levels
            .iter()
            .filter(|l| l.class_count > 0)
            .map(|l| l.n)
            .max()
            .unwrap_or(0)
    }
}

pub fn build_pool(workers: usize) -> Result<ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("cannot start worker pool: {e}")))
}

fn check_enumeration_dim(dim: usize) -> Result<()> {
    if !(1..=MAX_ENUMERATION_DIM).contains(&dim) {
        return Err(Error::UnsupportedDimension(dim));
    }
    Ok(())
}

fn is_full_dimensional(vertices: &[Point], dim: usize) -> bool {
    vertices.len() > dim && affine_rank_unchecked(vertices, vertices[0], dim) == dim
}

/// Representatives of every admissible one-point extension of `x`, in
/// order of the added point.
fn extensions(x: &Polytope, out: &mut Vec<Vec<Point>>) {
    let d = x.dim();
    let verts = x.vertices();
    let mut grown = Vec::with_capacity(verts.len() + 1);
    for v in 0..cube_size(d) as Point {
        let Err(pos) = verts.binary_search(&v) else {
            continue;
        };
        if !extend_is_2neighborly_unchecked(verts, v) {
            continue;
        }
        grown.clear();
        grown.extend_from_slice(&verts[..pos]);
        grown.push(v);
        grown.extend_from_slice(&verts[pos..]);
        let rep = representative(&Polytope::from_sorted_unchecked(d, grown.clone()));
        out.push(rep.into_vertices());
    }
}

fn expand_batch(batch: &[Polytope]) -> Vec<Vec<Point>> {
    let parts: Vec<Vec<Vec<Point>>> = batch
        .par_iter()
        .map(|x| {
            let mut out = Vec::new();
            extensions(x, &mut out);
            out
        })
        .collect();
    parts.into_iter().flatten().collect()
}

/// The complete next level, in memory, using the current rayon pool.
pub fn extend_level(d: usize, level: &[Polytope]) -> Result<Vec<Polytope>> {
    check_enumeration_dim(d)?;
    for p in level {
        if p.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: p.dim(),
            });
        }
    }
    if !level
        .windows(2)
        .all(|w| w[0].len() == w[1].len() && w[0] < w[1])
    {
        return Err(Error::InvalidArgument(
            "level must be sorted, duplicate free and of one size".into(),
        ));
    }
    let mut all = expand_batch(level);
    all.sort_unstable();
    all.dedup();
    Ok(all
        .into_iter()
        .map(|v| Polytope::from_sorted_unchecked(d, v))
        .collect())
}

/// Sorted, duplicate-free candidate store that spills to chunk files.
struct Spill {
    dim: usize,
    n: usize,
    chunk_dir: PathBuf,
    chunk_size: usize,
    record_bytes: usize,
    buffer: Vec<Vec<Point>>,
    chunks: Vec<PathBuf>,
}

impl Spill {
    fn new(dim: usize, n: usize, chunk_dir: PathBuf, chunk_size: usize) -> Self {
        Self {
            dim,
            n,
            chunk_dir,
            chunk_size: chunk_size.max(1),
            record_bytes: n * value_width(dim),
            buffer: Vec::new(),
            chunks: Vec::new(),
        }
    }

    fn extend(&mut self, records: Vec<Vec<Point>>) -> Result<()> {
        self.buffer.extend(records);
        if self.buffer.len() * self.record_bytes >= self.chunk_size {
            self.flush()?;
        }
        Ok(())
    }

    fn flush(&mut self) -> Result<()> {
        if self.buffer.is_empty() {
            return Ok(());
        }
        self.buffer.sort_unstable();
        self.buffer.dedup();
        fs::create_dir_all(&self.chunk_dir)?;
        let path = self
            .chunk_dir
            .join(format!("chunk{:05}.nbp", self.chunks.len()));
        let mut w = LevelWriter::create(&path, self.dim, self.n)?;
        for r in self.buffer.drain(..) {
            w.push(&r)?;
        }
        let count = w.finish()?;
        debug!("spilled {count} records to {}", path.display());
        self.chunks.push(path);
        Ok(())
    }

    /// Writes the merged records to `out` and returns the record and
    /// full-dimensional counts.
    fn finish(mut self, out: &Path) -> Result<(u64, u64)> {
        let mut w = LevelWriter::create(out, self.dim, self.n)?;
        let mut full = 0;
        if self.chunks.is_empty() {
            self.buffer.sort_unstable();
            self.buffer.dedup();
            for r in &self.buffer {
                full += u64::from(is_full_dimensional(r, self.dim));
                w.push(r)?;
            }
        } else {
            self.flush()?;
            let mut readers = self
                .chunks
                .iter()
                .map(LevelReader::open)
                .collect::<Result<Vec<_>>>()?;
            let mut heap = BinaryHeap::new();
            for (i, r) in readers.iter_mut().enumerate() {
                if let Some(rec) = r.next_record()? {
                    heap.push(Reverse((rec, i)));
                }
            }
            let mut last: Option<Vec<Point>> = None;
            while let Some(Reverse((rec, i))) = heap.pop() {
                if let Some(next) = readers[i].next_record()? {
                    heap.push(Reverse((next, i)));
                }
                if last.as_ref() == Some(&rec) {
                    continue;
                }
                full += u64::from(is_full_dimensional(&rec, self.dim));
                w.push(&rec)?;
                last = Some(rec);
            }
            fs::remove_dir_all(&self.chunk_dir)?;
        }
        Ok((w.finish()?, full))
    }
}

fn count_full_dimensional(path: &Path, dim: usize) -> Result<u64> {
    let mut full = 0;
    let mut r = LevelReader::open(path)?;
    while let Some(rec) = r.next_record()? {
        full += u64::from(is_full_dimensional(&rec, dim));
    }
    Ok(full)
}

fn reuse_level(path: &Path, dim: usize, n: usize) -> Result<Option<LevelStats>> {
    if !path.exists() {
        return Ok(None);
    }
    let h = read_level_header(path)?;
    if (h.dim, h.n) != (dim, n) {
        return Err(Error::Format {
            path: path.to_path_buf(),
            reason: format!(
                "cannot resume: file holds d={} n={}, expected d={dim} n={n}",
                h.dim, h.n
            ),
        });
    }
    Ok(Some(LevelStats {
        d: dim,
        n,
        class_count: h.count,
        full_dim_count: count_full_dimensional(path, dim)?,
    }))
}

/// Reads level `n` from `input` and writes level `n + 1` to `output`.
pub fn extend_level_file(
    input: &Path,
    output: &Path,
    config: &EnumerationConfig,
    pool: &ThreadPool,
) -> Result<LevelStats> {
    let mut reader = LevelReader::open(input)?;
    let h = reader.header();
    if h.dim != config.dim {
        return Err(Error::DimensionMismatch {
            expected: config.dim,
            found: h.dim,
        });
    }
    let n = h.n + 1;
    let chunk_dir = output.with_extension("chunks");
    if chunk_dir.exists() {
        fs::remove_dir_all(&chunk_dir)?;
    }
    let mut spill = Spill::new(h.dim, n, chunk_dir.clone(), config.chunk_size);
    let mut candidates = 0u64;
    let mut batch = Vec::with_capacity(BATCH);
    loop {
        batch.clear();
        for p in reader.by_ref().take(BATCH) {
            batch.push(p?);
        }
        if batch.is_empty() {
            break;
        }
        let found = pool.install(|| expand_batch(&batch));
        candidates += found.len() as u64;
        if let Some(cap) = config.candidate_cap {
            if candidates > cap {
                drop(spill);
                if chunk_dir.exists() {
                    fs::remove_dir_all(&chunk_dir)?;
                }
                return Err(Error::CandidateCap {
                    level: n,
                    candidates,
                    cap,
                });
            }
        }
        spill.extend(found)?;
    }
    let tmp = output.with_extension("nbp.tmp");
    let (count, full) = spill.finish(&tmp)?;
    fs::rename(&tmp, output)?;
    info!(
        "d={} n={n}: {count} classes from {candidates} candidates",
        h.dim
    );
    Ok(LevelStats {
        d: h.dim,
        n,
        class_count: count,
        full_dim_count: full,
    })
}

/// Writes `level01.nbp`, `level02.nbp`, ... until a level is empty, the
/// level limit is reached, or the candidate cap trips.
pub fn run_enumeration(config: &EnumerationConfig) -> Result<EnumerationRun> {
    let d = config.dim;
    check_enumeration_dim(d)?;
    fs::create_dir_all(&config.out_dir)?;
    let pool = build_pool(config.workers)?;
    let dir = &config.out_dir;
    let mut levels = Vec::new();

    let first = level_path(dir, 1);
    let stats = match config
        .resume
        .then(|| reuse_level(&first, d, 1))
        .transpose()?
        .flatten()
    {
        Some(s) => s,
        None => {
            let mut w = LevelWriter::create(&first, d, 1)?;
            w.push(&[0])?;
            w.finish()?;
            LevelStats {
                d,
                n: 1,
                class_count: 1,
                full_dim_count: 0,
            }
        }
    };
    levels.push(stats);

    let mut n = 1;
    loop {
        if levels.last().is_some_and(|l| l.class_count == 0) {
            return Ok(EnumerationRun {
                levels,
                stop: StopReason::Exhausted,
            });
        }
        if config.max_level.is_some_and(|m| n >= m) {
            return Ok(EnumerationRun {
                levels,
                stop: StopReason::MaxLevel,
            });
        }
        let out = level_path(dir, n + 1);
        if config.resume {
            if let Some(s) = reuse_level(&out, d, n + 1)? {
                info!("d={d} n={}: reusing {} classes", n + 1, s.class_count);
                levels.push(s);
                n += 1;
                continue;
            }
        }
        match extend_level_file(&level_path(dir, n), &out, config, &pool) {
            Ok(s) => levels.push(s),
            Err(Error::CandidateCap {
                level,
                candidates,
                cap,
            }) => {
                return Ok(EnumerationRun {
                    levels,
                    stop: StopReason::CandidateCap {
                        level,
                        candidates,
                        cap,
                    },
                })
            }
            Err(e) => return Err(e),
        }
        n += 1;
    }
}

/// Classification of one 0/1-class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassRecord {
    pub polytope: Polytope,
    pub affine_rank: usize,
    /// The remaining fields are present iff the polytope is full-dimensional.
    pub facet_count: Option<usize>,
    pub certificate: Option<crate::combclass::Certificate>,
    pub f_vector: Option<FVector>,
}

impl ClassRecord {
    pub fn is_full_dimensional(&self) -> bool {
        self.affine_rank == self.polytope.dim()
    }

    pub fn summary(&self) -> ClassSummary {
        ClassSummary {
            dim: self.polytope.dim(),
            vertices: self.polytope.vertices().to_vec(),
            affine_rank: self.affine_rank,
            facet_count: self.facet_count,
            certificate_digest: self.certificate.as_ref().map(|c| c.digest_hex()),
            f_vector: self.f_vector.clone(),
        }
    }
}

pub fn classify_polytope(p: &Polytope) -> Result<ClassRecord> {
    let d = p.dim();
    let affine_rank = affine_rank_unchecked(p.vertices(), p.vertices()[0], d);
    if affine_rank < d {
        return Ok(ClassRecord {
            polytope: p.clone(),
            affine_rank,
            facet_count: None,
            certificate: None,
            f_vector: None,
        });
    }
    let (facets, m) = facets_with_incidence(p)?;
    Ok(ClassRecord {
        polytope: p.clone(),
        affine_rank,
        facet_count: Some(facets.len()),
        certificate: Some(canonical_incidence(&m)?),
        f_vector: Some(f_vector(&m, p)?),
    })
}

/// Classifies every record of a level file, in file order.
pub fn classify_level(d: usize, path: &Path, pool: &ThreadPool) -> Result<Vec<ClassRecord>> {
    let reader = LevelReader::open(path)?;
    if reader.header().dim != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: reader.header().dim,
        });
    }
    let polytopes = reader.collect::<Result<Vec<_>>>()?;
    pool.install(|| polytopes.par_iter().map(classify_polytope).collect())
}

/// Text form of a classification: what the class files store.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassSummary {
    pub dim: usize,
    pub vertices: Vec<Point>,
    pub affine_rank: usize,
    pub facet_count: Option<usize>,
    pub certificate_digest: Option<String>,
    pub f_vector: Option<FVector>,
}

impl ClassSummary {
    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_rank == self.dim
    }

    pub fn to_line(&self) -> String {
        let width = if self.dim <= 8 { 2 } else { 4 };
        let verts = self
            .vertices
            .iter()
            .map(|v| format!("{v:0width$x}"))
            .collect::<Vec<_>>()
            .join(",");
        let dash = || "-".to_string();
        format!(
            "{verts}\t{}\t{}\t{}\t{}",
            self.affine_rank,
            self.facet_count.map_or_else(dash, |f| f.to_string()),
            self.certificate_digest.clone().unwrap_or_else(dash),
            self.f_vector.as_ref().map_or_else(dash, FVector::to_csv),
        )
    }

    pub fn parse_line(dim: usize, line: &str, line_no: usize) -> Result<Self> {
        let err = |reason: &str| Error::Parse {
            line: line_no,
            reason: reason.to_string(),
        };
        let fields: Vec<&str> = line.split('\t').collect();
        let [verts, rank, facets, digest, fv] = fields[..] else {
            return Err(err("expected 5 tab-separated fields"));
        };
        let vertices = verts
            .split(',')
            .map(|t| Point::from_str_radix(t, 16))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| err("bad vertex list"))?;
        let opt = |s: &str| (s != "-").then(|| s.to_string());
        let summary = Self {
            dim,
            vertices,
            affine_rank: rank.parse().map_err(|_| err("bad affine rank"))?,
            facet_count: opt(facets)
                .map(|s| s.parse())
                .transpose()
                .map_err(|_| err("bad facet count"))?,
            certificate_digest: opt(digest),
            f_vector: match opt(fv) {
                Some(s) => Some(FVector::parse_csv(&s).ok_or_else(|| err("bad f-vector"))?),
                None => None,
            },
        };
        let full = summary.is_full_dimensional();
        if full != summary.facet_count.is_some()
            || full != summary.certificate_digest.is_some()
            || full != summary.f_vector.is_some()
        {
            return Err(err(
                "facet data must be present exactly for full-dimensional classes",
            ));
        }
        Ok(summary)
    }
}

pub fn write_class_file(path: &Path, records: &[ClassSummary]) -> Result<()> {
    let tmp = path.with_extension("tsv.tmp");
    let mut w = BufWriter::new(fs::File::create(&tmp)?);
    for r in records {
        writeln!(w, "{}", r.to_line())?;
    }
    w.into_inner()
        .map_err(|e| Error::Io(e.into_error()))?
        .sync_data()?;
    fs::rename(tmp, path)?;
    Ok(())
}

pub fn read_class_file(dim: usize, path: &Path) -> Result<Vec<ClassSummary>> {
    let reader = BufReader::new(fs::File::open(path)?);
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.is_empty() {
            continue;
        }
        out.push(ClassSummary::parse_line(dim, &line, i + 1)?);
    }
    Ok(out)
}

/// Classifies every level file in `dir` and writes `classNN.tsv` next to
/// each; returns all summaries.
pub fn classify_run(d: usize, dir: &Path, workers: usize) -> Result<Vec<ClassSummary>> {
    let pool = build_pool(workers)?;
    let mut all = Vec::new();
    let mut n = 1;
    while level_path(dir, n).exists() {
        let records = classify_level(d, &level_path(dir, n), &pool)?;
        let summaries: Vec<ClassSummary> = records.iter().map(ClassRecord::summary).collect();
        write_class_file(&class_path(dir, n), &summaries)?;
        info!("d={d} n={n}: classified {} classes", summaries.len());
        all.extend(summaries);
        n += 1;
    }
    if n == 1 {
        return Err(Error::InvalidArgument(format!(
            "no level files in {}",
            dir.display()
        )));
    }
    Ok(all)
}

/// Reads `class01.tsv`, `class02.tsv`, ... from `dir`.
pub fn load_classification(d: usize, dir: &Path) -> Result<Vec<ClassSummary>> {
    if !class_path(dir, 1).exists() {
        return Err(Error::Format {
            path: class_path(dir, 1),
            reason: "no class files; run the classification first".into(),
        });
    }
    let mut all = Vec::new();
    let mut n = 1;
    while class_path(dir, n).exists() {
        all.extend(read_class_file(d, &class_path(dir, n))?);
        n += 1;
    }
    Ok(all)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusRow {
    pub n: usize,
    pub class_count: u64,
    pub full_dim_count: u64,
    pub combinatorial_classes: usize,
    pub f_vector_count: usize,
    pub facets_min: Option<usize>,
    pub facets_max: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub dim: usize,
    pub rows: Vec<CensusRow>,
    /// Full-dimensional classes per f-vector.
    pub f_vectors: BTreeMap<FVector, u64>,
    pub total_classes: u64,
    pub total_full_dim: u64,
    pub total_combinatorial: usize,
    pub total_f_vectors: usize,
    /// Largest `n` with at least one class.
    pub max_vertices: usize,
}

impl Census {
    pub fn row(&self, n: usize) -> Option<&CensusRow> {
        self.rows.iter().find(|r| r.n == n)
    }

    /// Full-dimensional rows only.
    pub fn full_dim_rows(&self) -> impl Iterator<Item = &CensusRow> {
        self.rows.iter().filter(|r| r.full_dim_count > 0)
    }

    /// One line `f0,f1,...,count` per f-vector.
    pub fn f_vector_csv(&self) -> String {
        let mut s = String::new();
        for (f, c) in &self.f_vectors {
            let _ = writeln!(s, "{},{c}", f.to_csv());
        }
        s
    }
}

impl fmt::Display for Census {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "d = {}", self.dim)?;
        writeln!(
            f,
            "{:>3} {:>10} {:>10} {:>8} {:>8} {:>7} {:>7}",
            "n", "classes", "full-dim", "comb", "f-vec", "fmin", "fmax"
        )?;
        for r in &self.rows {
            let opt = |x: Option<usize>| x.map_or("-".to_string(), |v| v.to_string());
            writeln!(
                f,
                "{:>3} {:>10} {:>10} {:>8} {:>8} {:>7} {:>7}",
                r.n,
                r.class_count,
                r.full_dim_count,
                r.combinatorial_classes,
                r.f_vector_count,
                opt(r.facets_min),
                opt(r.facets_max)
            )?;
        }
        writeln!(
            f,
            "total {} classes, {} full-dimensional, {} combinatorial classes, {} f-vectors",
            self.total_classes, self.total_full_dim, self.total_combinatorial, self.total_f_vectors
        )?;
        write!(f, "N2({}) = {}", self.dim, self.max_vertices)
    }
}

/// Aggregates the classification of every level `1..=N`.
pub fn census(dim: usize, records: &[ClassSummary]) -> Result<Census> {
    let mut by_n: BTreeMap<usize, Vec<&ClassSummary>> = BTreeMap::new();
    for r in records {
        if r.dim != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: r.dim,
            });
        }
        by_n.entry(r.n()).or_default().push(r);
    }
    let levels: Vec<usize> = by_n.keys().copied().collect();
    if levels.first() != Some(&1) || levels.windows(2).any(|w| w[1] != w[0] + 1) {
        return Err(Error::InvalidArgument(format!(
            "classification is incomplete: levels present {levels:?}"
        )));
    }
    let mut rows = Vec::new();
    let mut f_vectors: BTreeMap<FVector, u64> = BTreeMap::new();
    let mut certificates: BTreeSet<&str> = BTreeSet::new();
    for (&n, recs) in &by_n {
        let full: Vec<&&ClassSummary> = recs.iter().filter(|r| r.is_full_dimensional()).collect();
        let certs: BTreeSet<&str> = full
            .iter()
            .filter_map(|r| r.certificate_digest.as_deref())
            .collect();
        let fvs: BTreeSet<&FVector> = full.iter().filter_map(|r| r.f_vector.as_ref()).collect();
        for r in &full {
            if let Some(fv) = &r.f_vector {
                *f_vectors.entry(fv.clone()).or_default() += 1;
            }
        }
        certificates.extend(&certs);
        let facets = full.iter().filter_map(|r| r.facet_count);
        rows.push(CensusRow {
            n,
            class_count: recs.len() as u64,
            full_dim_count: full.len() as u64,
            combinatorial_classes: certs.len(),
            f_vector_count: fvs.len(),
            facets_min: facets.clone().min(),
            facets_max: facets.max(),
        });
    }
    Ok(Census {
        dim,
        total_classes: rows.iter().map(|r| r.class_count).sum(),
        total_full_dim: rows.iter().map(|r| r.full_dim_count).sum(),
        total_combinatorial: certificates.len(),
        total_f_vectors: f_vectors.len(),
        max_vertices: rows.iter().map(|r| r.n).max().unwrap_or(0),
        rows,
        f_vectors,
    })
}
