//! Binary level files: every class representative with `n` vertices in
//! dimension `d`, sorted and duplicate free.
//!
//! Layout (little endian):
//!
//! ```text
//! offset  size  field
//! 0       4     magic "NB01"
//! 4       1     version (1)
//! 5       1     d
//! 6       1     n
//! 7       1     flags (0)
//! 8       8     record count
//! 16      ...   records: n vertex values each, 1 byte per value when
//!               d <= 8, otherwise 2 bytes
//! ```

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};

use crate::cube::{check_dim, cube_size, Point, Polytope};
use crate::error::{Error, Result};

pub const MAGIC: &[u8; 4] = b"NB01";
pub const VERSION: u8 = 1;
pub const HEADER_LEN: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LevelHeader {
    pub dim: usize,
    pub n: usize,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelFile {
    pub dim: usize,
    pub n: usize,
    pub polytopes: Vec<Polytope>,
}

#[inline]
pub fn value_width(dim: usize) -> usize {
    if dim <= 8 {
        1
    } else {
        2
    }
}

fn format_err(path: &Path, reason: impl Into<String>) -> Error {
    Error::Format {
        path: path.to_path_buf(),
        reason: reason.into(),
    }
}

fn encode_header(dim: usize, n: usize, count: u64) -> [u8; HEADER_LEN] {
    let mut h = [0u8; HEADER_LEN];
    h[..4].copy_from_slice(MAGIC);
    h[4] = VERSION;
    h[5] = dim as u8;
    h[6] = n as u8;
    h[7] = 0;
    h[8..].copy_from_slice(&count.to_le_bytes());
    h
}

fn decode_header(path: &Path, h: &[u8; HEADER_LEN]) -> Result<LevelHeader> {
    if &h[..4] != MAGIC {
        return Err(format_err(path, "bad magic"));
    }
    if h[4] != VERSION {
        return Err(format_err(path, format!("unsupported version {}", h[4])));
    }
    if h[7] != 0 {
        return Err(format_err(path, format!("unknown flags {:#x}", h[7])));
    }
    let dim = usize::from(h[5]);
    check_dim(dim).map_err(|_| format_err(path, format!("bad dimension {dim}")))?;
    let n = usize::from(h[6]);
    if n == 0 {
        return Err(format_err(path, "zero vertices per record"));
    }
    let count = u64::from_le_bytes(h[8..].try_into().expect("8 bytes"));
    Ok(LevelHeader { dim, n, count })
}

fn read_exact_or_truncated(path: &Path, r: &mut impl Read, buf: &mut [u8]) -> Result<()> {
    r.read_exact(buf).map_err(|e| {
        if e.kind() == std::io::ErrorKind::UnexpectedEof {
            format_err(path, "truncated file")
        } else {
            Error::Io(e)
        }
    })
}

pub fn read_level_header(path: impl AsRef<Path>) -> Result<LevelHeader> {
    let path = path.as_ref();
    let mut f = File::open(path)?;
    let mut h = [0u8; HEADER_LEN];
    read_exact_or_truncated(path, &mut f, &mut h)?;
    decode_header(path, &h)
}

/// Streaming reader that validates ordering as it goes.
pub struct LevelReader {
    path: PathBuf,
    reader: BufReader<File>,
    header: LevelHeader,
    remaining: u64,
    last: Option<Vec<Point>>,
    buf: Vec<u8>,
}

impl LevelReader {
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut reader = BufReader::new(File::open(&path)?);
        let mut h = [0u8; HEADER_LEN];
        read_exact_or_truncated(&path, &mut reader, &mut h)?;
        let header = decode_header(&path, &h)?;
        let expected =
            HEADER_LEN as u64 + header.count * (header.n * value_width(header.dim)) as u64;
        let actual = reader.get_ref().metadata()?.len();
        if actual < expected {
            return Err(format_err(&path, "truncated file"));
        }
        if actual > expected {
            return Err(format_err(&path, "trailing bytes after last record"));
        }
        Ok(Self {
            buf: vec![0; header.n * value_width(header.dim)],
            remaining: header.count,
            path,
            reader,
            header,
            last: None,
        })
    }

    pub fn header(&self) -> LevelHeader {
        self.header
    }

    pub fn next_record(&mut self) -> Result<Option<Vec<Point>>> {
        if self.remaining == 0 {
            return Ok(None);
        }
        read_exact_or_truncated(&self.path, &mut self.reader, &mut self.buf)?;
        self.remaining -= 1;
        let LevelHeader { dim, n, .. } = self.header;
        let record: Vec<Point> = if value_width(dim) == 1 {
            self.buf.iter().map(|&b| Point::from(b)).collect()
        } else {
            self.buf
                .chunks_exact(2)
                .map(|c| u16::from_le_bytes([c[0], c[1]]))
                .collect()
        };
        debug_assert_eq!(record.len(), n);
        if let Some(&bad) = record.iter().find(|&&v| u32::from(v) >= cube_size(dim)) {
            return Err(format_err(
                &self.path,
                format!("vertex value {bad} does not fit in {dim} bits"),
            ));
        }
        if !record.windows(2).all(|w| w[0] < w[1]) {
            return Err(format_err(&self.path, "record vertices not ascending"));
        }
        if let Some(prev) = &self.last {
            if prev.as_slice() >= record.as_slice() {
                return Err(format_err(&self.path, "records unsorted or duplicated"));
            }
        }
        self.last = Some(record.clone());
        Ok(Some(record))
    }
}

impl Iterator for LevelReader {
    type Item = Result<Polytope>;

    fn next(&mut self) -> Option<Self::Item> {
        let dim = self.header.dim;
        self.next_record()
            .map(|r| r.map(|v| Polytope::from_sorted_unchecked(dim, v)))
            .transpose()
    }
}

/// Streaming writer; the record count is patched into the header on
/// [`LevelWriter::finish`].
pub struct LevelWriter {
    path: PathBuf,
    writer: BufWriter<File>,
    dim: usize,
    n: usize,
    count: u64,
    last: Option<Vec<Point>>,
}

impl LevelWriter {
    pub fn create(path: impl AsRef<Path>, dim: usize, n: usize) -> Result<Self> {
        check_dim(dim)?;
        if n == 0 || n > usize::from(u8::MAX) {
            return Err(Error::InvalidArgument(format!(
                "records of {n} vertices cannot be stored"
            )));
        }
        let path = path.as_ref().to_path_buf();
        let mut writer = BufWriter::new(File::create(&path)?);
        writer.write_all(&encode_header(dim, n, 0))?;
        Ok(Self {
            path,
            writer,
            dim,
            n,
            count: 0,
            last: None,
        })
    }

    pub fn push(&mut self, record: &[Point]) -> Result<()> {
        if record.len() != self.n {
            return Err(format_err(
                &self.path,
                format!("record has {} vertices, expected {}", record.len(), self.n),
            ));
        }
        if let Some(&bad) = record
            .iter()
            .find(|&&v| u32::from(v) >= cube_size(self.dim))
        {
            return Err(format_err(
                &self.path,
                format!("vertex value {bad} does not fit in {} bits", self.dim),
            ));
        }
        if !record.windows(2).all(|w| w[0] < w[1]) {
            return Err(format_err(&self.path, "record vertices not ascending"));
        }
        if let Some(prev) = &self.last {
            if prev.as_slice() >= record {
                return Err(format_err(&self.path, "records unsorted or duplicated"));
            }
        }
        if value_width(self.dim) == 1 {
            for &v in record {
                self.writer.write_all(&[v as u8])?;
            }
        } else {
            for &v in record {
                self.writer.write_all(&v.to_le_bytes())?;
            }
        }
        match &mut self.last {
            Some(prev) => prev.copy_from_slice(record),
            None => self.last = Some(record.to_vec()),
        }
        self.count += 1;
        Ok(())
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn finish(mut self) -> Result<u64> {
        self.writer.flush()?;
        let mut f = self
            .writer
            .into_inner()
            .map_err(|e| Error::Io(e.into_error()))?;
        f.seek(SeekFrom::Start(0))?;
        f.write_all(&encode_header(self.dim, self.n, self.count))?;
        f.sync_data()?;
        Ok(self.count)
    }
}

pub fn read_level_file(path: impl AsRef<Path>) -> Result<LevelFile> {
    let reader = LevelReader::open(path)?;
    let LevelHeader { dim, n, .. } = reader.header();
    let polytopes = reader.collect::<Result<Vec<_>>>()?;
    Ok(LevelFile { dim, n, polytopes })
}

pub fn write_level_file(
    path: impl AsRef<Path>,
    dim: usize,
    n: usize,
    polytopes: &[Polytope],
) -> Result<()> {
    let mut w = LevelWriter::create(path, dim, n)?;
    for p in polytopes {
        if p.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.dim(),
            });
        }
        w.push(p.vertices())?;
    }
    w.finish()?;
    Ok(())
}
