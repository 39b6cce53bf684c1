use super::{FiniteGroup, Group, MetacyclicPresentation};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::path::PathBuf;

/// A parsed group specification.
///
/// Text forms: `metacyclic m n t r`, `cyclic n`, `abelian d1,d2,...`,
/// `symmetric n`, `alternating n`, or a path to a JSON table `{size, mult}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GroupSpec {
    Metacyclic(MetacyclicPresentation),
    Cyclic(u64),
    Abelian(Vec<u64>),
    Symmetric(usize),
    Alternating(usize),
    Table(PathBuf),
}

#[derive(Deserialize)]
struct TableFile {
    size: usize,
    mult: Vec<Vec<usize>>,
    #[serde(default)]
    labels: Vec<String>,
}

fn num<T: std::str::FromStr>(s: &str, what: &str) -> Result<T> {
    s.trim().parse().map_err(|_| Error::validation(format!("expected an integer for {what}, got {s:?}")))
}

impl GroupSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let toks: Vec<&str> = text.split_whitespace().collect();
        match toks.as_slice() {
            ["metacyclic", m, n, t, r] => Ok(GroupSpec::Metacyclic(MetacyclicPresentation::new(
                num(m, "m")?,
                num(n, "n")?,
                num(t, "t")?,
                num(r, "r")?,
            )?)),
            ["cyclic", n] => Ok(GroupSpec::Cyclic(num(n, "n")?)),
            ["abelian", rest @ ..] if !rest.is_empty() => {
                let joined = rest.join("");
                let dims = joined.split(',').map(|d| num(d, "abelian factor")).collect::<Result<Vec<u64>>>()?;
                Ok(GroupSpec::Abelian(dims))
            }
            ["symmetric", n] => Ok(GroupSpec::Symmetric(num(n, "n")?)),
            ["alternating", n] => Ok(GroupSpec::Alternating(num(n, "n")?)),
            [path] if path.ends_with(".json") || std::path::Path::new(path).is_file() => {
                Ok(GroupSpec::Table(PathBuf::from(path)))
            }
            _ => Err(Error::validation(format!("unrecognised group spec {text:?}"))),
        }
    }

    pub fn build(&self) -> Result<Group> {
        match self {
            GroupSpec::Metacyclic(p) => FiniteGroup::metacyclic(*p),
            GroupSpec::Cyclic(n) => FiniteGroup::cyclic(*n),
            GroupSpec::Abelian(d) => FiniteGroup::abelian(d),
            GroupSpec::Symmetric(n) => FiniteGroup::permutations(*n, false),
            GroupSpec::Alternating(n) => FiniteGroup::permutations(*n, true),
            GroupSpec::Table(path) => {
                let t: TableFile = serde_json::from_str(&std::fs::read_to_string(path)?)?;
                if t.size != t.mult.len() {
                    return Err(Error::validation("table size does not match the number of rows"));
                }
                FiniteGroup::from_table(t.mult, t.labels)
            }
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Metacyclic(p) => write!(f, "metacyclic {} {} {} {}", p.m, p.n, p.t, p.r),
            GroupSpec::Cyclic(n) => write!(f, "cyclic {n}"),
            GroupSpec::Abelian(d) => {
                write!(f, "abelian {}", d.iter().map(u64::to_string).collect::<Vec<_>>().join(","))
            }
            GroupSpec::Symmetric(n) => write!(f, "symmetric {n}"),
            GroupSpec::Alternating(n) => write!(f, "alternating {n}"),
            GroupSpec::Table(p) => write!(f, "{}", p.display()),
        }
    }
}
