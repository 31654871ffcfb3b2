//! Flat `key = value` config files merged into the argument list.
//!
//! Keys are long flag names (`alpha`, `beta-i`, `file-size`) or the short
//! system names `n`, `k`, `L`, `M`. Underscores count as hyphens. A value of
//! `true` turns on a switch and `false` leaves it off. Entries whose flag also
//! appears on the command line are dropped, so flags win over the file.

use std::ffi::OsString;
use std::fs;
use std::path::Path;

use crate::error::CliError;

const GLOBAL_FLAGS: [&str; 3] = ["--format", "--out", "--seed"];

#[derive(Debug, Clone, PartialEq, Eq)]
struct Entry {
    long: String,
    short: Option<char>,
    value: String,
}

impl Entry {
    fn flag(&self) -> String {
        match self.short {
            Some(c) => format!("-{c}"),
            None => self.long.clone(),
        }
    }

    fn is_global(&self) -> bool {
        GLOBAL_FLAGS.contains(&self.long.as_str())
    }

    fn given_in(&self, args: &[String]) -> bool {
        args.iter().any(|a| {
            a == &self.long
                || a.starts_with(&format!("{}=", self.long))
                || self.short.is_some_and(|c| a.starts_with(&format!("-{c}")) && !a.starts_with("--"))
        })
    }

    fn tokens(&self) -> Vec<String> {
        match self.value.as_str() {
            "true" => vec![self.flag()],
            "false" => vec![],
            v => vec![self.flag(), v.to_string()],
        }
    }
}

fn canonical(key: &str) -> (String, Option<char>) {
    match key {
        "n" | "nodes" => ("--nodes".into(), Some('n')),
        "k" | "contacted" => ("--contacted".into(), Some('k')),
        "L" | "clusters" => ("--clusters".into(), Some('L')),
        "M" | "file-size" | "file_size" => ("--file-size".into(), Some('M')),
        other => (format!("--{}", other.replace('_', "-")), None),
    }
}

fn parse(text: &str, path: &Path) -> Result<Vec<Entry>, CliError> {
    let mut out = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| CliError::Config {
            path: path.to_path_buf(),
            line: no + 1,
            message: "expected `key = value`".into(),
        })?;
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() || key == "config" {
            return Err(CliError::Config {
                path: path.to_path_buf(),
                line: no + 1,
                message: format!("invalid key `{key}`"),
            });
        }
        let (long, short) = canonical(key);
        out.push(Entry {
            long,
            short,
            value: value.to_string(),
        });
    }
    Ok(out)
}

/// Index of the subcommand name, skipping values of global flags.
fn subcommand_index(args: &[String]) -> Option<usize> {
    let mut i = 1;
    while i < args.len() {
        let a = &args[i];
        if GLOBAL_FLAGS.contains(&a.as_str()) {
            i += 2;
        } else if a.starts_with('-') {
            i += 1;
        } else {
            return Some(i);
        }
    }
    None
}

/// Removes `--config PATH` from `args` and splices in the file's entries.
pub fn expand(args: Vec<OsString>) -> Result<Vec<OsString>, CliError> {
    let mut args: Vec<String> = args
        .into_iter()
        .map(|a| a.into_string().map_err(|a| CliError::Argument(format!("non-UTF-8 argument {a:?}"))))
        .collect::<Result<_, _>>()?;
    let mut path = None;
    let mut i = 1;
    while i < args.len() {
        if args[i] == "--config" {
            if i + 1 >= args.len() {
                return Err(CliError::Argument("--config needs a file path".into()));
            }
            path = Some(args.remove(i + 1));
            args.remove(i);
        } else if let Some(p) = args[i].strip_prefix("--config=") {
            path = Some(p.to_string());
            args.remove(i);
        } else {
            i += 1;
        }
    }
    let Some(path) = path else {
        return Ok(args.into_iter().map(OsString::from).collect());
    };
    let path = Path::new(&path);
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: Some(path.to_path_buf()),
        source,
    })?;
    let entries: Vec<Entry> = parse(&text, path)?
        .into_iter()
        .filter(|e| !e.given_in(&args[1..]))
        .collect();

    let globals: Vec<String> = entries.iter().filter(|e| e.is_global()).flat_map(Entry::tokens).collect();
    let locals: Vec<String> = entries.iter().filter(|e| !e.is_global()).flat_map(Entry::tokens).collect();
    if let Some(sub) = subcommand_index(&args) {
        args.splice(sub + 1..sub + 1, locals);
    } else if !locals.is_empty() {
        return Err(CliError::Argument("config file given without a subcommand".into()));
    }
    args.splice(1..1, globals);
    Ok(args.into_iter().map(OsString::from).collect())
}
