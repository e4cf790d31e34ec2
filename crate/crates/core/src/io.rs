//! Text formats: point CSV, report CSVs and the generator-matrix file.
//!
//! Dyadic values are written as `num/2^e` so that they survive a round trip
//! exactly. `*_log2` columns are filled only when the value is a power of two
//! (half-integers appear for ℓ2 lengths) and left empty otherwise.

use std::io::{Read, Write};

use num_rational::BigRational;

use crate::digital::{GeneratorPair, PointSet, Provenance};
use crate::error::{Error, Result};
use crate::geometry::{CoveringInterval, MeshRatioInterval, ProfileEntry, SeparationReport};
use crate::gf2core::{BitMatrix, BitVector};
use crate::theory::VerifyRow;
use crate::Magnitude;

pub const POINTS_HEADER: [&str; 4] = ["index", "nx", "ny", "scale"];
pub const SEPARATION_HEADER: [&str; 7] = [
    "N",
    "norm",
    "min_dist_num",
    "min_dist_log2",
    "radius_log2",
    "witness_i",
    "witness_j",
];
pub const COVERING_HEADER: [&str; 7] = ["N", "norm", "h_lo", "h_hi", "k", "rho_lo", "rho_hi"];
pub const VERIFY_HEADER: [&str; 10] = [
    "m",
    "kind",
    "v",
    "w",
    "c",
    "q_formula_log2",
    "q_exhaustive_log2",
    "match",
    "witness_p",
    "witness_q",
];

/// Separation columns followed by the covering columns without their
/// repeated `N,norm` prefix.
pub fn analysis_header() -> Vec<&'static str> {
    SEPARATION_HEADER
        .iter()
        .chain(&COVERING_HEADER[2..])
        .copied()
        .collect()
}

fn log2_cell(m: &Magnitude) -> String {
    m.log2().map(|l| l.to_string()).unwrap_or_default()
}

fn separation_cells(n: usize, norm: impl ToString, min: &Magnitude, witness: (usize, usize)) -> Vec<String> {
    vec![
        n.to_string(),
        norm.to_string(),
        min.value().to_string(),
        log2_cell(min),
        log2_cell(&min.half()),
        witness.0.to_string(),
        witness.1.to_string(),
    ]
}

pub fn separation_record(r: &SeparationReport) -> Vec<String> {
    separation_cells(r.n, r.norm, &r.min_dist, r.witness)
}

pub fn profile_record(e: &ProfileEntry, norm: crate::geometry::Norm) -> Vec<String> {
    separation_cells(e.n, norm, &e.min_dist, e.witness)
}

fn covering_tail(c: &CoveringInterval, rho: Option<(&BigRational, &BigRational)>) -> Vec<String> {
    let (lo, hi) = rho
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .unwrap_or_default();
    vec![c.lo.to_string(), c.hi.to_string(), c.k.to_string(), lo, hi]
}

/// A covering row; the ratio columns are empty when no ratio is available.
pub fn covering_record(c: &CoveringInterval, rho: Option<&MeshRatioInterval>) -> Vec<String> {
    let mut row = vec![c.n.to_string(), c.norm.to_string()];
    row.extend(covering_tail(c, rho.map(|r| (&r.lo, &r.hi))));
    row
}

pub fn analysis_record(r: &MeshRatioInterval) -> Vec<String> {
    let mut row = separation_record(&r.separation);
    row.extend(covering_tail(&r.covering, Some((&r.lo, &r.hi))));
    row
}

pub fn verify_record(row: &VerifyRow) -> Vec<String> {
    let d = &row.decomposition;
    let pow = |x: &crate::Dyadic| x.log2().map(|e| e.to_string()).unwrap_or_else(|| x.to_string());
    let (p, q) = row
        .witness
        .map(|(p, q)| (p.to_string(), q.to_string()))
        .unwrap_or_default();
    vec![
        d.m.to_string(),
        d.kind.to_string(),
        d.v.to_string(),
        d.w.to_string(),
        d.c.to_string(),
        pow(&row.q_formula),
        row.q_exhaustive.as_ref().map(pow).unwrap_or_default(),
        row.pass().to_string(),
        p,
        q,
    ]
}

/// Writes a header and rows as CSV.
pub fn write_table<W, H, R>(out: W, header: &[H], rows: impl IntoIterator<Item = R>) -> Result<()>
where
    W: Write,
    H: AsRef<str>,
    R: IntoIterator,
    R::Item: AsRef<[u8]>,
{
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header.iter().map(|h| h.as_ref()))?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_points<W: Write>(out: W, ps: &PointSet) -> Result<()> {
    let rows = ps.points().iter().enumerate().map(|(i, p)| {
        [
            i.to_string(),
            p.nx().to_string(),
            p.ny().to_string(),
            p.scale().to_string(),
        ]
    });
    write_table(out, &POINTS_HEADER, rows)
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn field<T: std::str::FromStr>(rec: &csv::StringRecord, idx: usize, line: usize, name: &str) -> Result<T> {
    let raw = rec
        .get(idx)
        .ok_or_else(|| parse_err(line, format!("missing column `{name}`")))?;
    raw.trim()
        .parse()
        .map_err(|_| parse_err(line, format!("bad {name} `{raw}`")))
}

/// Reads a point CSV written by [`write_points`]. Rows must be numbered
/// `0, 1, ...` and share one scale.
pub fn read_points<R: Read>(input: R, source: &str) -> Result<PointSet> {
    let mut rdr = csv::Reader::from_reader(input);
    let header = rdr.headers()?.clone();
    if header.iter().map(str::trim).ne(POINTS_HEADER) {
        return Err(parse_err(1, format!("expected header {}", POINTS_HEADER.join(","))));
    }
    let mut scale = None;
    let mut coords = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let line = i + 2;
        let rec = rec?;
        let index: usize = field(&rec, 0, line, "index")?;
        if index != i {
            return Err(parse_err(line, format!("expected index {i}, found {index}")));
        }
        let s: u32 = field(&rec, 3, line, "scale")?;
        if *scale.get_or_insert(s) != s {
            return Err(parse_err(line, "all rows must share one scale"));
        }
        coords.push((field(&rec, 1, line, "nx")?, field(&rec, 2, line, "ny")?));
    }
    let scale = scale.ok_or_else(|| parse_err(1, "no points"))?;
    PointSet::from_numerators(scale, coords, Provenance::Explicit(source.to_string()))
}

/// One `(N, q)` sample read back from a separation or profile CSV; `q` is the
/// separation radius as a length.
#[derive(Clone, Debug, PartialEq)]
pub struct RadiusSample {
    pub n: usize,
    pub norm: String,
    pub radius: f64,
}

/// Reads any CSV carrying `N`, `norm` and `min_dist_num` columns.
pub fn read_radii<R: Read>(input: R) -> Result<Vec<RadiusSample>> {
    let mut rdr = csv::Reader::from_reader(input);
    let header = rdr.headers()?.clone();
    let col = |name: &str| {
        header
            .iter()
            .position(|h| h.trim() == name)
            .ok_or_else(|| parse_err(1, format!("missing column `{name}`")))
    };
    let (n_col, norm_col, d_col) = (col("N")?, col("norm")?, col("min_dist_num")?);
    let mut out = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let line = i + 2;
        let rec = rec?;
        let norm: crate::geometry::Norm = field(&rec, norm_col, line, "norm")?;
        let d: crate::Dyadic = field(&rec, d_col, line, "min_dist_num")?;
        let m = match norm {
            crate::geometry::Norm::L2 => Magnitude::from_square(d),
            _ => Magnitude::length(d),
        };
        out.push(RadiusSample {
            n: field(&rec, n_col, line, "N")?,
            norm: norm.to_string(),
            radius: m.half().to_f64(),
        });
    }
    if out.is_empty() {
        return Err(parse_err(1, "no data rows"));
    }
    Ok(out)
}

/// Parses a generator file: the first line is `m`, followed by `m` rows of
/// `C1` and `m` rows of `C2`, each a string of `0`/`1`. Blank lines are
/// ignored.
pub fn parse_matrices(text: &str, label: &str) -> Result<GeneratorPair> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (line, first) = lines.next().ok_or_else(|| parse_err(1, "empty matrix file"))?;
    let m: usize = first
        .parse()
        .map_err(|_| parse_err(line, format!("bad dimension `{first}`")))?;
    if m == 0 || m > crate::MAX_SCALE as usize {
        return Err(parse_err(line, format!("dimension {m} outside 1..=64")));
    }
    let mut rows = Vec::with_capacity(2 * m);
    for (line, l) in lines.by_ref().take(2 * m) {
        if l.len() != m {
            return Err(parse_err(line, format!("expected {m} digits, found {}", l.len())));
        }
        let bits = l
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(parse_err(line, format!("unexpected character `{c}`"))),
            })
            .collect::<Result<Vec<bool>>>()?;
        rows.push(BitVector::from_bits(bits));
    }
    if rows.len() != 2 * m {
        return Err(parse_err(0, format!("expected {} matrix rows, found {}", 2 * m, rows.len())));
    }
    if let Some((line, _)) = lines.next() {
        return Err(parse_err(line, "trailing content after the second matrix"));
    }
    let c1 = BitMatrix::from_rows(&rows[..m])?;
    let c2 = BitMatrix::from_rows(&rows[m..])?;
    GeneratorPair::new(c1, c2, label)
}
