//! Plain-text instance files.
//!
//! ```text
//! mkland 1
//! n 5
//! d 1
//! k 2
//! q 100
//! # sub <objective> <mask vars, comma separated> <2^|mask| table entries>
//! sub 0 0,1 12 7 99 3
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Subfunctions of
//! each objective keep their file order as local index.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use super::{Subfunction, VectorMkLandscape};
use crate::error::{Error, Result};

const MAGIC: &str = "mkland";
const VERSION: u32 = 1;

pub fn write_instance<W: Write>(f: &VectorMkLandscape, out: &mut W) -> io::Result<()> {
    writeln!(out, "{MAGIC} {VERSION}")?;
    writeln!(out, "n {}", f.n())?;
    writeln!(out, "d {}", f.d())?;
    writeln!(out, "k {}", f.k())?;
    writeln!(out, "q {}", f.q())?;
    for sub in f.subfunctions() {
        write!(out, "sub {} ", sub.objective())?;
        let mask: Vec<String> = sub.mask().iter().map(u32::to_string).collect();
        write!(out, "{}", mask.join(","))?;
        for e in sub.table() {
            write!(out, " {e}")?;
        }
        writeln!(out)?;
    }
    Ok(())
}

pub fn save_instance(f: &VectorMkLandscape, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut buf = Vec::new();
    write_instance(f, &mut buf).map_err(|e| Error::io(path, e))?;
    fs::write(path, buf).map_err(|e| Error::io(path, e))
}

pub fn load_instance(path: impl AsRef<Path>) -> Result<VectorMkLandscape> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_instance(&text)
}

fn perr(line: usize, field: &'static str, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        field,
        message: message.into(),
    }
}

fn parse_num<T: std::str::FromStr>(tok: Option<&str>, line: usize, field: &'static str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    let tok = tok.ok_or_else(|| perr(line, field, "missing value"))?;
    tok.parse::<T>()
        .map_err(|e| perr(line, field, format!("{tok:?}: {e}")))
}

pub fn parse_instance(text: &str) -> Result<VectorMkLandscape> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (lno, first) = lines.next().ok_or_else(|| perr(1, "header", "empty file"))?;
    let mut toks = first.split_whitespace();
    if toks.next() != Some(MAGIC) {
        return Err(perr(lno, "header", format!("expected `{MAGIC} {VERSION}`")));
    }
    let version: u32 = parse_num(toks.next(), lno, "version")?;
    if version != VERSION {
        return Err(perr(lno, "version", format!("unsupported version {version}")));
    }

    let mut n: Option<usize> = None;
    let mut d: Option<usize> = None;
    let mut k: Option<usize> = None;
    let mut q: Option<u32> = None;
    let mut subs = Vec::new();

    for (lno, line) in lines {
        let mut toks = line.split_whitespace();
        let key = toks.next().unwrap_or_default();
        match key {
            "n" => n = Some(parse_num(toks.next(), lno, "n")?),
            "d" => d = Some(parse_num(toks.next(), lno, "d")?),
            "k" => k = Some(parse_num(toks.next(), lno, "k")?),
            "q" => q = Some(parse_num(toks.next(), lno, "q")?),
            "sub" => {
                let (Some(_), Some(_), Some(k), Some(_)) = (n, d, k, q) else {
                    return Err(perr(lno, "sub", "subfunction before complete header"));
                };
                let objective: usize = parse_num(toks.next(), lno, "objective")?;
                let mask_tok = toks.next().ok_or_else(|| perr(lno, "mask", "missing value"))?;
                let mask = mask_tok
                    .split(',')
                    .map(|v| parse_num::<u32>(Some(v), lno, "mask"))
                    .collect::<Result<Vec<_>>>()?;
                if mask.len() > k || mask.len() > super::MAX_K {
                    return Err(perr(lno, "mask", format!("{} variables exceed k = {k}", mask.len())));
                }
                let table = toks
                    .map(|v| parse_num::<u32>(Some(v), lno, "table"))
                    .collect::<Result<Vec<_>>>()?;
                if table.len() != 1 << mask.len() {
                    return Err(perr(
                        lno,
                        "table",
                        format!("{} entries, expected 2^{} = {}", table.len(), mask.len(), 1 << mask.len()),
                    ));
                }
                subs.push(Subfunction::new(objective, mask, table));
            }
            other => return Err(perr(lno, "key", format!("unknown key {other:?}"))),
        }
    }

    let missing = |name| perr(0, name, "missing header field");
    VectorMkLandscape::new(
        n.ok_or_else(|| missing("n"))?,
        d.ok_or_else(|| missing("d"))?,
        k.ok_or_else(|| missing("k"))?,
        q.ok_or_else(|| missing("q"))?,
        subs,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::landscape::generate_adjacent_mnk;

    #[test]
    fn round_trip_is_identity() {
        let f = generate_adjacent_mnk(17, 3, 3, 100, 12).unwrap();
        let mut buf = Vec::new();
        write_instance(&f, &mut buf).unwrap();
        let g = parse_instance(std::str::from_utf8(&buf).unwrap()).unwrap();
        assert_eq!(f, g);
        let mut buf2 = Vec::new();
        write_instance(&g, &mut buf2).unwrap();
        assert_eq!(buf, buf2);
    }

    #[test]
    fn save_and_load() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("inst.txt");
        let f = generate_adjacent_mnk(9, 1, 2, 10, 1).unwrap();
        save_instance(&f, &path).unwrap();
        assert_eq!(load_instance(&path).unwrap(), f);
    }

    #[test]
    fn wrong_table_length_is_parse_error() {
        let text = "mkland 1\nn 2\nd 1\nk 2\nq 10\nsub 0 0,1 1 2 3\n";
        match parse_instance(text) {
            Err(Error::Parse { line, field, .. }) => {
                assert_eq!(line, 6);
                assert_eq!(field, "table");
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn q_violation_is_validation_error() {
        let text = "mkland 1\nn 2\nd 1\nk 2\nq 10\nsub 0 0,1 1 2 3 10\n";
        assert!(matches!(parse_instance(text), Err(Error::Validation(_))));
    }

    #[test]
    fn garbage_reports_field() {
        let text = "mkland 1\nn two\n";
        assert!(matches!(
            parse_instance(text),
            Err(Error::Parse { line: 2, field: "n", .. })
        ));
        assert!(matches!(parse_instance(""), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_instance("mkland 1\nsub 0 0 1 2\n"),
            Err(Error::Parse { field: "sub", .. })
        ));
    }

    #[test]
    fn missing_file_is_io_error() {
        assert!(matches!(
            load_instance("/nonexistent/dir/inst.txt"),
            Err(Error::Io { .. })
        ));
    }
}
