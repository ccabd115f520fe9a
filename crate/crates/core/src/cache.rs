//! Plain-text cache files.
//!
//! Every file starts with `STERNCT-CACHE 1 <kind> <n_seed> <m>` and holds one
//! whitespace-separated record per line:
//!
//! - `coeff-table`: `i j a_ij`
//! - `numerator`: `i j c`, the `t^i x^j` coefficient of the solved numerator
//! - `rec-u`, `rec-v`: `r kexp jexp value`, one monomial `value k^kexp j^jexp`
//!   of `c_r`; the header carries `0 0`.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{JPoly, LaurentPoly, Rational, TPoly, UPoly};
use crate::error::{Error, Result};
use crate::holonomic::RecurrenceOp;
use crate::omega_gf::CoeffTable;

const MAGIC: &str = "STERNCT-CACHE";
const VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheKind {
    CoeffTable,
    Numerator,
    RecU,
    RecV,
}

impl CacheKind {
    pub fn tag(self) -> &'static str {
        match self {
            CacheKind::CoeffTable => "coeff-table",
            CacheKind::Numerator => "numerator",
            CacheKind::RecU => "rec-u",
            CacheKind::RecV => "rec-v",
        }
    }

    fn from_tag(s: &str) -> Result<Self> {
        Ok(match s {
            "coeff-table" => CacheKind::CoeffTable,
            "numerator" => CacheKind::Numerator,
            "rec-u" => CacheKind::RecU,
            "rec-v" => CacheKind::RecV,
            other => return Err(Error::Cache(format!("unknown kind {other:?}"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Header {
    pub kind: CacheKind,
    pub n_seed: u32,
    pub m: u64,
}

fn header_line(h: &Header) -> String {
    format!("{MAGIC} {VERSION} {} {} {}\n", h.kind.tag(), h.n_seed, h.m)
}

fn field<T: FromStr>(s: Option<&str>, line: usize) -> Result<T> {
    s.and_then(|x| x.parse().ok())
        .ok_or_else(|| Error::Cache(format!("line {line}: malformed field")))
}

/// Splits a cache file into its header and record lines.
fn parse(text: &str, arity: usize) -> Result<(Header, Vec<Vec<&str>>)> {
    let mut lines = text.lines();
    let head: Vec<&str> = lines.next().unwrap_or("").split_whitespace().collect();
    if head.len() != 5 || head[0] != MAGIC {
        return Err(Error::Cache("missing header".into()));
    }
    if head[1] != VERSION.to_string() {
        return Err(Error::Cache(format!("unsupported version {}", head[1])));
    }
    let header = Header {
        kind: CacheKind::from_tag(head[2])?,
        n_seed: field(Some(head[3]), 1)?,
        m: field(Some(head[4]), 1)?,
    };
    let mut records = Vec::new();
    for (n, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let rec: Vec<&str> = line.split_whitespace().collect();
        if rec.len() != arity {
            return Err(Error::Cache(format!(
                "line {}: expected {arity} fields",
                n + 2
            )));
        }
        records.push(rec);
    }
    Ok((header, records))
}

fn expect_kind(h: &Header, kind: CacheKind) -> Result<()> {
    if h.kind != kind {
        return Err(Error::Cache(format!(
            "expected {}, found {}",
            kind.tag(),
            h.kind.tag()
        )));
    }
    Ok(())
}

pub fn coeff_table_to_string(t: &CoeffTable) -> String {
    let mut s = header_line(&Header {
        kind: CacheKind::CoeffTable,
        n_seed: t.n_seed,
        m: t.m,
    });
    // zero cells are kept so the row layout survives the round trip
    for (i, row) in t.rows.iter().enumerate() {
        for (d, a) in row.iter().enumerate() {
            writeln!(s, "{i} {} {a}", -(d as i64)).unwrap();
        }
    }
    s
}

pub fn coeff_table_from_str(text: &str) -> Result<CoeffTable> {
    let (h, recs) = parse(text, 3)?;
    expect_kind(&h, CacheKind::CoeffTable)?;
    let mut entries = Vec::with_capacity(recs.len());
    for (n, r) in recs.iter().enumerate() {
        let j: i64 = field(Some(r[1]), n + 2)?;
        if j > 0 {
            return Err(Error::Cache(format!("line {}: positive j", n + 2)));
        }
        entries.push((
            field::<usize>(Some(r[0]), n + 2)?,
            j,
            field::<BigInt>(Some(r[2]), n + 2)?,
        ));
    }
    Ok(CoeffTable::from_entries(h.n_seed, h.m, entries))
}

pub fn numerator_to_string(n_seed: u32, num: &TPoly) -> String {
    let mut s = header_line(&Header {
        kind: CacheKind::Numerator,
        n_seed,
        m: 0,
    });
    for (i, c) in num.coeffs().iter().enumerate() {
        for (j, a) in c.terms() {
            writeln!(s, "{i} {j} {a}").unwrap();
        }
    }
    s
}

pub fn numerator_from_str(text: &str) -> Result<(u32, TPoly)> {
    let (h, recs) = parse(text, 3)?;
    expect_kind(&h, CacheKind::Numerator)?;
    let mut by_t: Vec<Vec<(i64, BigInt)>> = Vec::new();
    for (n, r) in recs.iter().enumerate() {
        let i: usize = field(Some(r[0]), n + 2)?;
        if by_t.len() <= i {
            by_t.resize(i + 1, Vec::new());
        }
        by_t[i].push((field(Some(r[1]), n + 2)?, field(Some(r[2]), n + 2)?));
    }
    Ok((
        h.n_seed,
        TPoly::new(by_t.into_iter().map(LaurentPoly::from_terms).collect()),
    ))
}

pub fn recurrence_to_string(kind: CacheKind, rec: &RecurrenceOp) -> String {
    let mut s = header_line(&Header {
        kind,
        n_seed: 0,
        m: 0,
    });
    for (r, c) in rec.coeffs.iter().enumerate() {
        for (je, in_k) in c.coeffs().iter().enumerate() {
            for (ke, v) in in_k.coeffs().iter().enumerate() {
                if !v.is_zero() {
                    writeln!(s, "{r} {ke} {je} {v}").unwrap();
                }
            }
        }
    }
    s
}

pub fn recurrence_from_str(text: &str) -> Result<(CacheKind, RecurrenceOp)> {
    let (h, recs) = parse(text, 4)?;
    if !matches!(h.kind, CacheKind::RecU | CacheKind::RecV) {
        return Err(Error::Cache(format!(
            "expected a recurrence, found {}",
            h.kind.tag()
        )));
    }
    let mut grid: Vec<Vec<Vec<Rational>>> = Vec::new();
    for (n, r) in recs.iter().enumerate() {
        let (ri, ke, je): (usize, usize, usize) = (
            field(Some(r[0]), n + 2)?,
            field(Some(r[1]), n + 2)?,
            field(Some(r[2]), n + 2)?,
        );
        let v: Rational = field(Some(r[3]), n + 2)?;
        if grid.len() <= ri {
            grid.resize(ri + 1, Vec::new());
        }
        if grid[ri].len() <= je {
            grid[ri].resize(je + 1, Vec::new());
        }
        if grid[ri][je].len() <= ke {
            grid[ri][je].resize(ke + 1, Rational::zero());
        }
        grid[ri][je][ke] = v;
    }
    let coeffs: Vec<JPoly> = grid
        .into_iter()
        .map(|c| JPoly::new(c.into_iter().map(UPoly::new).collect()))
        .collect();
    Ok((h.kind, RecurrenceOp::new(coeffs)?))
}

/// A cache directory; file names are derived from kind and parameters.
#[derive(Debug, Clone)]
pub struct CacheDir {
    pub root: PathBuf,
}

impl CacheDir {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        CacheDir { root: root.into() }
    }

    pub fn path(&self, kind: CacheKind, n_seed: u32, m: u64) -> PathBuf {
        match kind {
            CacheKind::CoeffTable => self.root.join(format!("coeff-table-{n_seed}-{m}.txt")),
            CacheKind::Numerator => self.root.join(format!("numerator-{n_seed}.txt")),
            CacheKind::RecU | CacheKind::RecV => self.root.join(format!("{}.txt", kind.tag())),
        }
    }

    fn read(&self, path: &Path) -> Result<Option<String>> {
        match fs::read_to_string(path) {
            Ok(s) => Ok(Some(s)),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(e.into()),
        }
    }

    fn write(&self, path: &Path, text: &str) -> Result<()> {
        fs::create_dir_all(&self.root)?;
        // write-then-rename so a reader never sees half a file
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, text)?;
        fs::rename(&tmp, path)?;
        Ok(())
    }

    pub fn load_coeff_table(&self, n_seed: u32, m: u64) -> Result<Option<CoeffTable>> {
        let Some(text) = self.read(&self.path(CacheKind::CoeffTable, n_seed, m))? else {
            return Ok(None);
        };
        let t = coeff_table_from_str(&text)?;
        if t.n_seed != n_seed || t.m != m {
            return Err(Error::Cache(
                "coefficient table header does not match its file name".into(),
            ));
        }
        Ok(Some(t))
    }

    pub fn store_coeff_table(&self, t: &CoeffTable) -> Result<()> {
        self.write(
            &self.path(CacheKind::CoeffTable, t.n_seed, t.m),
            &coeff_table_to_string(t),
        )
    }

    pub fn load_numerator(&self, n_seed: u32) -> Result<Option<TPoly>> {
        let Some(text) = self.read(&self.path(CacheKind::Numerator, n_seed, 0))? else {
            return Ok(None);
        };
        let (n, num) = numerator_from_str(&text)?;
        if n != n_seed {
            return Err(Error::Cache(
                "numerator header does not match its file name".into(),
            ));
        }
        Ok(Some(num))
    }

    pub fn store_numerator(&self, n_seed: u32, num: &TPoly) -> Result<()> {
        self.write(
            &self.path(CacheKind::Numerator, n_seed, 0),
            &numerator_to_string(n_seed, num),
        )
    }

    pub fn load_recurrence(&self, kind: CacheKind) -> Result<Option<RecurrenceOp>> {
        let Some(text) = self.read(&self.path(kind, 0, 0))? else {
            return Ok(None);
        };
        let (k, rec) = recurrence_from_str(&text)?;
        if k != kind {
            return Err(Error::Cache(format!(
                "{} file holds {}",
                kind.tag(),
                k.tag()
            )));
        }
        Ok(Some(rec))
    }

    pub fn store_recurrence(&self, kind: CacheKind, rec: &RecurrenceOp) -> Result<()> {
        self.write(&self.path(kind, 0, 0), &recurrence_to_string(kind, rec))
    }

    /// Removes every cache file in the directory; returns how many went.
    pub fn clear(&self) -> Result<usize> {
        let entries = match fs::read_dir(&self.root) {
            Ok(e) => e,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(0),
            Err(e) => return Err(e.into()),
        };
        let mut removed = 0;
        for e in entries {
            let p = e?.path();
            let is_ours = fs::read_to_string(&p)
                .map(|s| s.starts_with(MAGIC))
                .unwrap_or(false);
            if is_ours {
                fs::remove_file(&p)?;
                removed += 1;
            }
        }
        Ok(removed)
    }

    /// `(file name, header)` for each readable cache file.
    pub fn list(&self) -> Result<Vec<(String, Header)>> {
        let entries = match fs::read_dir(&self.root) {
            Ok(e) => e,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(e.into()),
        };
        let mut out = Vec::new();
        for e in entries {
            let p = e?.path();
            let Ok(text) = fs::read_to_string(&p) else {
                continue;
            };
            let first = text.lines().next().unwrap_or("");
            if let Ok((h, _)) = parse(first, 0) {
                out.push((
                    p.file_name()
                        .unwrap_or_default()
                        .to_string_lossy()
                        .into_owned(),
                    h,
                ));
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::holonomic::{derive_rec_u, derive_rec_v};
    use crate::omega_gf::{build_coeff_table, solve_component};

    #[test]
    fn coeff_table_round_trip() {
        let t = build_coeff_table(5, 20).unwrap();
        let s = coeff_table_to_string(&t);
        assert!(s.starts_with("STERNCT-CACHE 1 coeff-table 5 20\n"));
        assert_eq!(coeff_table_from_str(&s).unwrap(), t);
    }

    #[test]
    fn numerator_round_trip() {
        let num = solve_component(4).unwrap().numerator;
        let (n, back) = numerator_from_str(&numerator_to_string(4, &num)).unwrap();
        assert_eq!(n, 4);
        assert_eq!(back, num);
    }

    #[test]
    fn recurrence_round_trip() {
        for (kind, rec) in [
            (CacheKind::RecU, derive_rec_u().unwrap()),
            (CacheKind::RecV, derive_rec_v().unwrap()),
        ] {
            let s = recurrence_to_string(kind, rec);
            assert!(s.starts_with(&format!("STERNCT-CACHE 1 {} 0 0\n", kind.tag())));
            let (k, back) = recurrence_from_str(&s).unwrap();
            assert_eq!(k, kind);
            assert_eq!(&back, rec);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(coeff_table_from_str("").is_err());
        assert!(coeff_table_from_str("STERNCT-CACHE 2 coeff-table 3 5\n").is_err());
        assert!(coeff_table_from_str("STERNCT-CACHE 1 numerator 3 0\n").is_err());
        assert!(coeff_table_from_str("STERNCT-CACHE 1 coeff-table 3 5\n0 0\n").is_err());
        assert!(coeff_table_from_str("STERNCT-CACHE 1 coeff-table 3 5\n0 1 7\n").is_err());
        assert!(recurrence_from_str("STERNCT-CACHE 1 rec-u 0 0\n0 0 0 1/x\n").is_err());
    }

    #[test]
    fn directory_store_and_load() {
        let dir = std::env::temp_dir().join(format!("sternct-cache-test-{}", std::process::id()));
        let cache = CacheDir::new(&dir);
        assert!(cache.load_coeff_table(4, 10).unwrap().is_none());
        let t = build_coeff_table(4, 10).unwrap();
        cache.store_coeff_table(&t).unwrap();
        assert_eq!(cache.load_coeff_table(4, 10).unwrap(), Some(t));
        cache
            .store_recurrence(CacheKind::RecV, derive_rec_v().unwrap())
            .unwrap();
        assert_eq!(cache.list().unwrap().len(), 2);
        assert_eq!(cache.clear().unwrap(), 2);
        assert!(cache.list().unwrap().is_empty());
        fs::remove_dir_all(&dir).ok();
    }
}
