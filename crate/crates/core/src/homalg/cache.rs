//! On-disk resolution cache.
//!
//! One file per (ring, module, length), named by the SHA-256 of those three
//! in canonical text form. Matrices are stored entry by entry in the
//! polynomial text grammar so a reload is bit-exact.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::ring::Ring;
use crate::text::parse_polynomial;

use super::resolution::FreeResolution;

const MAGIC: &str = "syzlab-resolution 1";

pub(crate) fn file_for(dir: &Path, ring: &Ring, module_key: &str, length: usize) -> PathBuf {
    let mut h = Sha256::new();
    h.update(ring.descriptor().to_string().as_bytes());
    h.update(b"\n");
    h.update(module_key.as_bytes());
    h.update(b"\n");
    h.update(length.to_string().as_bytes());
    dir.join(format!("{}.res", hex::encode(h.finalize())))
}

fn io(e: std::io::Error) -> Error {
    Error::Io(e.to_string())
}

pub(crate) fn store(dir: &Path, ring: &Ring, module_key: &str, res: &FreeResolution) -> Result<()> {
    fs::create_dir_all(dir).map_err(io)?;
    let path = file_for(dir, ring, module_key, res.length());
    let text = serialize(ring, module_key, res);
    // write-then-rename keeps concurrent readers from seeing partial files
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    fs::write(&tmp, text).map_err(io)?;
    fs::rename(&tmp, &path).map_err(io)
}

pub(crate) fn load(dir: &Path, ring: &Ring, module_key: &str, length: usize) -> Result<Option<FreeResolution>> {
    let path = file_for(dir, ring, module_key, length);
    let text = match fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(io(e)),
    };
    let res = deserialize(&text, ring, module_key)?;
    Ok(res.filter(|r| r.length() == length))
}

pub(crate) fn serialize(ring: &Ring, module_key: &str, res: &FreeResolution) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{MAGIC}");
    let _ = writeln!(s, "ring {}", ring.descriptor());
    let _ = writeln!(s, "module {module_key}");
    let _ = writeln!(s, "length {}", res.length());
    let _ = writeln!(s, "minimal {}", res.minimal);
    let betti: Vec<String> = res.betti.iter().map(usize::to_string).collect();
    let _ = writeln!(s, "betti {}", betti.join(" "));
    for (i, d) in res.degrees.iter().enumerate() {
        let ds: Vec<String> = d.iter().map(i32::to_string).collect();
        let _ = writeln!(s, "degrees {i} {}", ds.join(" "));
    }
    for (i, m) in res.differentials.iter().enumerate() {
        let _ = writeln!(s, "differential {} {} {}", i + 1, m.rows(), m.cols());
        for (r, c, p) in m.entries() {
            if !p.is_zero() {
                let _ = writeln!(s, "{r} {c} {}", ring.show(p));
            }
        }
    }
    s.push_str("end\n");
    s
}

/// Parse a cache file; `None` if it belongs to another ring or module.
pub(crate) fn deserialize(text: &str, ring: &Ring, module_key: &str) -> Result<Option<FreeResolution>> {
    let bad = |what: &str| Error::Io(format!("corrupt resolution cache: {what}"));
    let mut lines = text.lines();
    if lines.next() != Some(MAGIC) {
        return Err(bad("header"));
    }
    let field = |line: Option<&str>, tag: &str| -> Result<String> {
        line.and_then(|l| l.strip_prefix(tag))
            .and_then(|l| l.strip_prefix(' '))
            .map(str::to_string)
            .ok_or_else(|| bad(tag))
    };
    if field(lines.next(), "ring")? != ring.descriptor().to_string() {
        return Ok(None);
    }
    if field(lines.next(), "module")? != module_key {
        return Ok(None);
    }
    let num = |s: &str| s.parse::<usize>().map_err(|_| bad("number"));
    let length = num(&field(lines.next(), "length")?)?;
    let minimal = field(lines.next(), "minimal")? == "true";
    let betti = field(lines.next(), "betti")?
        .split_whitespace()
        .map(num)
        .collect::<Result<Vec<_>>>()?;
    let mut degrees = Vec::with_capacity(length + 1);
    for i in 0..=length {
        let l = field(lines.next(), "degrees")?;
        let mut it = l.split_whitespace();
        if it.next().map(num).transpose()? != Some(i) {
            return Err(bad("degree index"));
        }
        degrees.push(
            it.map(|d| d.parse::<i32>().map_err(|_| bad("degree")))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    let mut differentials = Vec::with_capacity(length);
    let mut current: Option<PolyMatrix> = None;
    for line in lines {
        if line == "end" {
            break;
        }
        if let Some(rest) = line.strip_prefix("differential ") {
            differentials.extend(current.take());
            let v: Vec<usize> = rest.split_whitespace().map(num).collect::<Result<_>>()?;
            if v.len() != 3 {
                return Err(bad("differential header"));
            }
            current = Some(PolyMatrix::zeros(v[1], v[2]));
            continue;
        }
        let m = current.as_mut().ok_or_else(|| bad("entry before header"))?;
        let mut parts = line.splitn(3, ' ');
        let r = num(parts.next().unwrap_or(""))?;
        let c = num(parts.next().unwrap_or(""))?;
        let p = parse_polynomial(parts.next().unwrap_or(""), ring.vars(), ring.field())?;
        if r >= m.rows() || c >= m.cols() {
            return Err(bad("entry out of range"));
        }
        m.set(r, c, p);
    }
    differentials.extend(current);
    if betti.len() != length + 1 || differentials.len() != length {
        return Err(bad("shape"));
    }
    Ok(Some(FreeResolution {
        betti,
        degrees,
        differentials,
        minimal,
        truncated_at: length,
    }))
}
