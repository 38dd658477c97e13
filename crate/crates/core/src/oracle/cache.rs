//! Plain-text character-table files.
//!
//! ```text
//! lzd-character-table 1
//! group GL <m> <q>
//! order <|G|>
//! conductor <N>
//! classes <r>
//! class <size> <entry codes of the representative, row-major>   (r lines)
//! row                                                           (r blocks)
//! value <coefficients modulo Φ_N>                               (r lines each)
//! ```
//!
//! Entry codes are `0` for zero and `k + 1` for `g^k`. Loading recomputes
//! the classes and rejects a file whose representatives or sizes differ.

use super::classes::conjugacy_classes;
use super::dixon::dixon_table;
use super::group::FiniteMatrixGroup;
use super::table::CharacterTable;
use crate::charlat::CycloInt;
use crate::{Error, Result};
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

pub const CACHE_VERSION: u32 = 1;
const MAGIC: &str = "lzd-character-table";

pub fn serialize(group: &FiniteMatrixGroup, table: &CharacterTable) -> String {
    let mut s = String::new();
    let c = table.classes();
    writeln!(s, "{MAGIC} {CACHE_VERSION}").unwrap();
    writeln!(s, "group GL {} {}", group.m(), group.q()).unwrap();
    writeln!(s, "order {}", table.order()).unwrap();
    writeln!(s, "conductor {}", table.conductor()).unwrap();
    writeln!(s, "classes {}", c.len()).unwrap();
    for (k, &rep) in c.reps().iter().enumerate() {
        write!(s, "class {}", c.sizes()[k]).unwrap();
        for e in group.element(rep).entries() {
            write!(s, " {}", e.code()).unwrap();
        }
        s.push('\n');
    }
    for row in table.rows() {
        s.push_str("row\n");
        for v in row {
            s.push_str("value");
            for x in v.coeffs() {
                write!(s, " {x}").unwrap();
            }
            s.push('\n');
        }
    }
    s
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Cache(msg.into())
}

struct Lines<'a> {
    inner: std::str::Lines<'a>,
}

impl<'a> Lines<'a> {
    /// The next line, which must start with `tag`; returns its fields.
    fn expect(&mut self, tag: &str) -> Result<Vec<&'a str>> {
        let line = self.inner.next().ok_or_else(|| bad(format!("missing {tag} line")))?;
        let mut fields = line.split(' ');
        if fields.next() != Some(tag) {
            return Err(bad(format!("expected {tag}, got {line:?}")));
        }
        Ok(fields.collect())
    }

    fn number(&mut self, tag: &str) -> Result<u64> {
        match self.expect(tag)?.as_slice() {
            [x] => x.parse().map_err(|_| bad(format!("bad {tag}"))),
            _ => Err(bad(format!("bad {tag}"))),
        }
    }
}

fn ints<T: std::str::FromStr>(fields: &[&str]) -> Result<Vec<T>> {
    fields.iter().map(|x| x.parse().map_err(|_| bad(format!("bad number {x:?}")))).collect()
}

pub fn parse(group: &FiniteMatrixGroup, text: &str) -> Result<CharacterTable> {
    let mut lines = Lines { inner: text.lines() };
    if lines.expect(MAGIC)? != [CACHE_VERSION.to_string().as_str()] {
        return Err(bad("unsupported version"));
    }
    let header = lines.expect("group")?;
    if header != ["GL", group.m().to_string().as_str(), group.q().to_string().as_str()] {
        return Err(bad(format!("file is for group {header:?}")));
    }
    let order = lines.number("order")?;
    if order != group.order() as u64 {
        return Err(bad("order mismatch"));
    }
    let conductor = lines.number("conductor")?;
    let r = lines.number("classes")? as usize;
    let classes = conjugacy_classes(group);
    if classes.len() != r {
        return Err(bad("class count mismatch"));
    }
    for k in 0..r {
        let fields: Vec<u64> = ints(&lines.expect("class")?)?;
        let rep: Vec<u64> = group.element(classes.reps()[k]).entries().iter().map(|e| e.code() as u64).collect();
        if fields.first() != Some(&classes.sizes()[k]) || fields[1..] != rep[..] {
            return Err(bad(format!("class {k} differs from the recomputed classes")));
        }
    }
    let mut rows = Vec::with_capacity(r);
    for _ in 0..r {
        if !lines.expect("row")?.is_empty() {
            return Err(bad("bad row line"));
        }
        let row = (0..r)
            .map(|_| CycloInt::from_coeffs(conductor, ints(&lines.expect("value")?)?))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    if lines.inner.next().is_some() {
        return Err(bad("trailing data"));
    }
    let table = CharacterTable::from_parts(order, conductor, classes, rows);
    if !table.check_degrees() {
        return Err(bad("degree relations fail"));
    }
    Ok(table)
}

/// Tables on disk, one file per `GL_m(F_q)`.
pub struct TableCache {
    dir: PathBuf,
}

impl TableCache {
    pub fn new(dir: impl Into<PathBuf>) -> TableCache {
        TableCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, m: usize, q: u64) -> PathBuf {
        self.dir.join(format!("gl{m}_f{q}.v{CACHE_VERSION}.tbl"))
    }

    pub fn load(&self, group: &FiniteMatrixGroup) -> Result<Option<CharacterTable>> {
        match fs::read_to_string(self.path(group.m(), group.q())) {
            Ok(text) => parse(group, &text).map(Some),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(e.into()),
        }
    }

    /// Writes to a temporary file in the cache directory, then renames.
    pub fn store(&self, group: &FiniteMatrixGroup, table: &CharacterTable) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path(group.m(), group.q());
        let tmp = self.dir.join(format!(
            ".{}.{}.{:?}.tmp",
            path.file_name().unwrap().to_string_lossy(),
            std::process::id(),
            std::thread::current().id()
        ));
        fs::write(&tmp, serialize(group, table))?;
        fs::rename(&tmp, &path)?;
        Ok(())
    }

    /// The cached table if present and valid, else a fresh one (stored).
    /// The flag is `true` on a cache hit.
    pub fn get_or_build(&self, group: &FiniteMatrixGroup) -> Result<(CharacterTable, bool)> {
        if !group.is_full_linear() {
            return Err(Error::Unsupported("only full linear groups are cached".into()));
        }
        match self.load(group) {
            Ok(Some(t)) => return Ok((t, true)),
            Ok(None) | Err(Error::Cache(_)) => {}
            Err(e) => return Err(e),
        }
        let table = dixon_table(group, conjugacy_classes(group))?;
        self.store(group, &table)?;
        Ok((table, false))
    }
}
