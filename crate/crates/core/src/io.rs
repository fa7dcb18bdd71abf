//! Line-based text formats.
//!
//! Lattice (`.lat`):
//!
//! ```text
//! elements: 0 a b 1
//! cover: 0 a        # 0 is covered by a
//! cover: 0 b
//! cover: a 1
//! cover: b 1
//! ```
//!
//! Family (`.fam`), where a bare `set:` is the empty set:
//!
//! ```text
//! universe: a b
//! set:
//! set: a
//! set: a b
//! ```
//!
//! Fuzzy set (`.fz`), one line per domain element in domain order:
//!
//! ```text
//! map: a -> 0
//! map: b -> 1
//! ```
//!
//! `#` starts a comment and tokens are `[A-Za-z0-9_]+`.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use crate::caps::DEFAULT_LATTICE_CAP;
use crate::error::{Error, Result};
use crate::fuzzy::{DomainSet, FuzzySet, SetFamily};
use crate::lattice::{validate_complete_lattice, Lattice};
use crate::order::Poset;

struct Line<'a> {
    number: usize,
    keyword: &'a str,
    rest: &'a str,
}

fn lines(text: &str) -> impl Iterator<Item = Result<Line<'_>>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let number = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            return None;
        }
        Some(match content.split_once(':') {
            Some((keyword, rest)) => Ok(Line {
                number,
                keyword: keyword.trim(),
                rest,
            }),
            None => Err(Error::parse(number, format!("expected `keyword:`, got `{content}`"))),
        })
    })
}

fn tokens<'a>(line: &Line<'a>) -> Result<Vec<&'a str>> {
    line.rest
        .split_whitespace()
        .map(|t| {
            if t.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                Ok(t)
            } else {
                Err(Error::parse(line.number, format!("invalid token `{t}`")))
            }
        })
        .collect()
}

fn distinct(line: &Line<'_>, toks: &[&str]) -> Result<()> {
    let mut seen = HashSet::new();
    for t in toks {
        if !seen.insert(*t) {
            return Err(Error::parse(line.number, format!("`{t}` listed twice")));
        }
    }
    Ok(())
}

pub fn parse_lattice(text: &str) -> Result<Lattice> {
    parse_lattice_with_cap(text, DEFAULT_LATTICE_CAP)
}

pub fn parse_lattice_with_cap(text: &str, cap: usize) -> Result<Lattice> {
    let mut elements: Option<Vec<String>> = None;
    let mut covers = Vec::new();
    for line in lines(text) {
        let line = line?;
        match line.keyword {
            "elements" => {
                if elements.is_some() {
                    return Err(Error::parse(line.number, "second `elements:` line"));
                }
                let toks = tokens(&line)?;
                if toks.is_empty() {
                    return Err(Error::parse(line.number, "no elements"));
                }
                distinct(&line, &toks)?;
                elements = Some(toks.into_iter().map(str::to_owned).collect());
            }
            "cover" => {
                let Some(known) = &elements else {
                    return Err(Error::parse(line.number, "`cover:` before `elements:`"));
                };
                let toks = tokens(&line)?;
                let [lower, upper] = toks[..] else {
                    return Err(Error::parse(line.number, "`cover:` takes two elements"));
                };
                for t in [lower, upper] {
                    if !known.iter().any(|e| e == t) {
                        return Err(Error::parse(line.number, format!("unknown element `{t}`")));
                    }
                }
                covers.push((lower.to_owned(), upper.to_owned()));
            }
            other => {
                return Err(Error::parse(line.number, format!("unknown keyword `{other}`")));
            }
        }
    }
    let elements = elements.ok_or_else(|| Error::parse(0, "missing `elements:` line"))?;
    let poset = Poset::from_covers_with_cap(&elements, &covers, cap)?;
    validate_complete_lattice(&poset)
}

pub fn render_lattice(l: &Lattice) -> String {
    let mut out = format!("elements: {}\n", l.elements().join(" "));
    for &(a, b) in l.poset().covers() {
        let _ = writeln!(out, "cover: {} {}", l.name(a), l.name(b));
    }
    out
}

pub fn parse_family(text: &str) -> Result<SetFamily> {
    let mut universe: Option<(Vec<String>, HashMap<String, usize>)> = None;
    let mut members: Vec<DomainSet> = Vec::new();
    let mut seen = HashSet::new();
    for line in lines(text) {
        let line = line?;
        match line.keyword {
            "universe" => {
                if universe.is_some() {
                    return Err(Error::parse(line.number, "second `universe:` line"));
                }
                let toks = tokens(&line)?;
                if toks.is_empty() {
                    return Err(Error::parse(line.number, "empty universe"));
                }
                distinct(&line, &toks)?;
                let names: Vec<String> = toks.into_iter().map(str::to_owned).collect();
                let index = names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
                universe = Some((names, index));
            }
            "set" => {
                let Some((_, index)) = &universe else {
                    return Err(Error::parse(line.number, "`set:` before `universe:`"));
                };
                let toks = tokens(&line)?;
                distinct(&line, &toks)?;
                let ids = toks
                    .iter()
                    .map(|t| {
                        index.get(*t).copied().ok_or_else(|| Error::UnknownMember {
                            line: line.number,
                            token: (*t).to_owned(),
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                let set = DomainSet::new(ids);
                if !seen.insert(set.clone()) {
                    return Err(Error::DuplicateSet { line: line.number });
                }
                members.push(set);
            }
            other => {
                return Err(Error::parse(line.number, format!("unknown keyword `{other}`")));
            }
        }
    }
    let (names, _) = universe.ok_or_else(|| Error::parse(0, "missing `universe:` line"))?;
    SetFamily::new(names, members)
}

pub fn render_family(f: &SetFamily) -> String {
    let mut out = format!("universe: {}\n", f.universe().join(" "));
    for m in f.members() {
        let names: Vec<&str> = m.members().iter().map(|&i| f.universe()[i].as_str()).collect();
        if names.is_empty() {
            out.push_str("set:\n");
        } else {
            let _ = writeln!(out, "set: {}", names.join(" "));
        }
    }
    out
}

pub fn parse_fuzzy(text: &str, lattice: &Lattice) -> Result<FuzzySet> {
    let mut pairs: Vec<(String, String)> = Vec::new();
    for line in lines(text) {
        let line = line?;
        if line.keyword != "map" {
            return Err(Error::parse(
                line.number,
                format!("unknown keyword `{}`", line.keyword),
            ));
        }
        let Some((x, p)) = line.rest.split_once("->") else {
            return Err(Error::parse(line.number, "expected `map: <x> -> <p>`"));
        };
        let x = single_token(line.number, x)?;
        let p = single_token(line.number, p)?;
        if pairs.iter().any(|(y, _)| y == x) {
            return Err(Error::parse(line.number, format!("`{x}` mapped twice")));
        }
        if lattice.index_of(p).is_none() {
            return Err(Error::parse(line.number, format!("unknown lattice element `{p}`")));
        }
        pairs.push((x.to_owned(), p.to_owned()));
    }
    if pairs.is_empty() {
        return Err(Error::parse(0, "no `map:` lines"));
    }
    FuzzySet::from_names(lattice, &pairs)
}

fn single_token(line: usize, s: &str) -> Result<&str> {
    let t = s.trim();
    if !t.is_empty() && t.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        Ok(t)
    } else {
        Err(Error::parse(line, format!("invalid token `{t}`")))
    }
}

pub fn render_fuzzy(mu: &FuzzySet) -> String {
    let mut out = String::new();
    for (x, name) in mu.domain().iter().enumerate() {
        let _ = writeln!(out, "map: {} -> {}", name, mu.value_name(x));
    }
    out
}
