//! Text format and the graph mini-language.
//!
//! ```text
//! # comment
//! p dgr <n> <m> <u|d>
//! a <u> <v>      (m lines)
//! ```
//!
//! With the `u` flag the arc list is closed under reversal on read, so an
//! undirected graph may list each edge once.

use super::{circular_clique, clique, cycle, Digraph};
use crate::{Error, Result};
use std::fmt::Write;

pub fn to_text(g: &Digraph) -> String {
    let mut out = String::new();
    let flag = if g.is_undirected() { 'u' } else { 'd' };
    writeln!(out, "p dgr {} {} {}", g.vertex_count(), g.arc_count(), flag).unwrap();
    for &(u, v) in g.arcs() {
        writeln!(out, "a {u} {v}").unwrap();
    }
    out
}

pub fn parse_text(text: &str) -> Result<Digraph> {
    let mut header: Option<(usize, usize, bool)> = None;
    let mut arcs = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: &str| Error::Parse {
            line: lineno + 1,
            msg: msg.to_string(),
        };
        let words: Vec<&str> = line.split_whitespace().collect();
        match words[0] {
            "p" => {
                if header.is_some() {
                    return Err(err("second header line"));
                }
                if words.len() != 5 || words[1] != "dgr" {
                    return Err(err("expected `p dgr <n> <m> <u|d>`"));
                }
                let n = words[2].parse().map_err(|_| err("bad vertex count"))?;
                let m = words[3].parse().map_err(|_| err("bad arc count"))?;
                let undirected = match words[4] {
                    "u" => true,
                    "d" => false,
                    _ => return Err(err("flag must be `u` or `d`")),
                };
                header = Some((n, m, undirected));
            }
            "a" => {
                let (n, _, _) = header.ok_or_else(|| err("arc before header"))?;
                if words.len() != 3 {
                    return Err(err("expected `a <u> <v>`"));
                }
                let u: u32 = words[1].parse().map_err(|_| err("bad tail"))?;
                let v: u32 = words[2].parse().map_err(|_| err("bad head"))?;
                if u as usize >= n || v as usize >= n {
                    return Err(err("arc endpoint out of range"));
                }
                arcs.push((u, v));
            }
            other => return Err(err(&format!("unknown line kind `{other}`"))),
        }
    }
    let (n, m, undirected) = header.ok_or_else(|| Error::Parse {
        line: 0,
        msg: "missing header".into(),
    })?;
    if arcs.len() != m {
        return Err(Error::Parse {
            line: 0,
            msg: format!("header promises {m} arcs, found {}", arcs.len()),
        });
    }
    if undirected {
        Digraph::undirected(n, arcs)
    } else {
        Digraph::new(n, arcs)
    }
}

/// Parses `K<n>`, `C<n>`, `K<p>:<q>` or `@<path>`.
pub fn parse_spec(spec: &str) -> Result<Digraph> {
    let spec = spec.trim();
    if let Some(path) = spec.strip_prefix('@') {
        let text = std::fs::read_to_string(path)?;
        return parse_text(&text);
    }
    let bad = || Error::param(format!("cannot parse graph `{spec}`"));
    let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
    if let Some(rest) = spec.strip_prefix('K') {
        return match rest.split_once(':') {
            Some((p, q)) => circular_clique(num(p)?, num(q)?),
            None => clique(num(rest)?),
        };
    }
    if let Some(rest) = spec.strip_prefix('C') {
        return cycle(num(rest)?);
    }
    Err(bad())
}
