//! Versioned text cache format for word-metric tables.
//!
//! Layout: a small header (format version, group spec, generator words,
//! radius, element count, body checksum), a `---` separator, then one line
//! per element ("normal_form length") in canonical order: by length, then
//! lexicographic normal form. The identity prints as "1".

use std::fs;
use std::io::Write;
use std::path::Path;

use hashbrown::hash_table::HashTable;
use rustc_hash::FxBuildHasher;

use crate::error::{Error, Result};
use crate::group::{make_generating_set, parse_group_spec};

use super::{hash_bytes, WordMetricTable};

const FORMAT_LINE: &str = "curvlab-table v1";

fn body_bytes(table: &WordMetricTable) -> Vec<u8> {
    let mut body = Vec::with_capacity(table.bytes.len() * 2);
    for n in 0..=table.radius() {
        for &id in table.sphere_ids(n) {
            let e = table.elem_bytes(id);
            if e.is_empty() {
                body.push(b'1');
            } else {
                body.extend_from_slice(e);
            }
            body.push(b' ');
            body.extend_from_slice(n.to_string().as_bytes());
            body.push(b'\n');
        }
    }
    body
}

pub(crate) fn serialize_to_vec(table: &WordMetricTable) -> Vec<u8> {
    let body = body_bytes(table);
    let checksum = crc32fast::hash(&body);
    let mut out = Vec::with_capacity(body.len() + 256);
    let _ = write!(
        out,
        "{FORMAT_LINE}\ngroup {}\ngens {}\nradius {}\nelements {}\nchecksum {checksum:08x}\n---\n",
        table.oracle().spec_str(),
        table.gens().member_words().join(","),
        table.radius(),
        table.element_count(),
    );
    out.extend_from_slice(&body);
    out
}

/// Persists a completed table. The written bytes are a deterministic function
/// of the table content.
pub fn save_table(table: &WordMetricTable, path: &Path) -> Result<()> {
    fs::write(path, serialize_to_vec(table))?;
    Ok(())
}

fn header_field<'a>(line: Option<&'a str>, key: &str) -> Result<&'a str> {
    line.and_then(|l| l.strip_prefix(key))
        .and_then(|l| l.strip_prefix(' '))
        .ok_or_else(|| Error::MalformedTableFile(format!("missing header field '{key}'")))
}

fn malformed(msg: &str) -> Error {
    Error::MalformedTableFile(msg.to_string())
}

/// Loads a table written by [`save_table`], verifying version and checksum
/// and rebuilding the lookup index.
pub fn load_table(path: &Path) -> Result<WordMetricTable> {
    let data = fs::read(path)?;
    let sep = b"\n---\n";
    let split = data
        .windows(sep.len())
        .position(|w| w == sep)
        .ok_or_else(|| malformed("missing header separator"))?;
    let header = std::str::from_utf8(&data[..split]).map_err(|_| malformed("non-UTF8 header"))?;
    let body = &data[split + sep.len()..];

    let mut lines = header.lines();
    let version = lines.next().unwrap_or_default();
    if version != FORMAT_LINE {
        return Err(Error::VersionMismatch {
            found: version.to_string(),
            expected: FORMAT_LINE.to_string(),
        });
    }
    let group = header_field(lines.next(), "group")?;
    let gens_field = header_field(lines.next(), "gens")?;
    let radius: u32 = header_field(lines.next(), "radius")?
        .parse()
        .map_err(|_| malformed("bad radius"))?;
    let elements: u64 = header_field(lines.next(), "elements")?
        .parse()
        .map_err(|_| malformed("bad element count"))?;
    let expected_crc = u32::from_str_radix(header_field(lines.next(), "checksum")?, 16)
        .map_err(|_| malformed("bad checksum field"))?;

    let actual_crc = crc32fast::hash(body);
    if actual_crc != expected_crc {
        return Err(Error::ChecksumMismatch {
            expected: expected_crc,
            actual: actual_crc,
        });
    }

    let oracle = parse_group_spec(group)?;
    let gen_words: Vec<&str> = gens_field.split(',').collect();
    let gens = make_generating_set(&oracle, &gen_words, "loaded")?;

    let hasher = FxBuildHasher;
    let mut bytes: Vec<u8> = Vec::new();
    let mut ends: Vec<u32> = Vec::new();
    let mut counts: Vec<u64> = vec![0; radius as usize + 1];
    let mut index: HashTable<u32> = HashTable::with_capacity(elements as usize);
    let mut current_level: i64 = -1;
    let mut prev_in_level: Vec<u8> = Vec::new();
    let mut first_in_level = true;

    for line in body.split(|&b| b == b'\n') {
        if line.is_empty() {
            continue;
        }
        let space = line
            .iter()
            .rposition(|&b| b == b' ')
            .ok_or_else(|| malformed("record without length"))?;
        let (word, len_txt) = (&line[..space], &line[space + 1..]);
        let len: u32 = std::str::from_utf8(len_txt)
            .ok()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| malformed("bad record length"))?;
        if len > radius {
            return Err(malformed("record length beyond declared radius"));
        }
        let nf: &[u8] = if word == b"1" { b"" } else { word };

        if (len as i64) < current_level {
            return Err(malformed("records out of canonical order"));
        }
        if len as i64 > current_level {
            current_level = len as i64;
            first_in_level = true;
        }
        if !first_in_level && nf <= prev_in_level.as_slice() {
            return Err(malformed("records out of canonical order"));
        }
        first_in_level = false;
        prev_in_level.clear();
        prev_in_level.extend_from_slice(nf);
        counts[len as usize] += 1;

        let id = ends.len() as u32;
        bytes.extend_from_slice(nf);
        ends.push(bytes.len() as u32);
        let h = hash_bytes(&hasher, nf);
        let (bref, eref) = (&bytes, &ends);
        index.insert_unique(h, id, |&other| {
            let start = if other == 0 {
                0
            } else {
                eref[other as usize - 1] as usize
            };
            hash_bytes(&hasher, &bref[start..eref[other as usize] as usize])
        });
    }

    if ends.len() as u64 != elements {
        return Err(malformed(&format!(
            "element count mismatch: header {elements}, body {}",
            ends.len()
        )));
    }
    if counts.first() != Some(&1) || ends[0] != 0 {
        return Err(malformed(
            "table must start with exactly the identity at length 0",
        ));
    }

    let mut level_starts = Vec::with_capacity(radius as usize + 2);
    level_starts.push(0u32);
    for &c in &counts {
        level_starts.push(level_starts.last().unwrap() + c as u32);
    }

    let order: Vec<u32> = (0..ends.len() as u32).collect();
    Ok(WordMetricTable::assemble(
        oracle,
        gens,
        radius,
        bytes,
        ends,
        level_starts,
        order,
        index,
        hasher,
    ))
}
