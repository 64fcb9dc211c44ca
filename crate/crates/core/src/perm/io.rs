//! Group files: `n <degree>`, an optional `order <N>`, then one generator per line as
//! `n` whitespace-separated 0-based images. `#` starts a comment.

use std::fmt::Write as _;
use std::io;
use std::path::Path;

use super::{GroupSpec, PermError, Permutation};

pub fn parse_group_file(name: &str, text: &str) -> Result<GroupSpec, PermError> {
    let mut degree: Option<usize> = None;
    let mut order: Option<u64> = None;
    let mut generators = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| PermError::Parse {
            line: lineno + 1,
            msg,
        };
        let mut words = line.split_whitespace();
        let first = words.next().expect("nonempty line");
        match (first, degree) {
            ("n", None) => {
                let d = words
                    .next()
                    .and_then(|w| w.parse().ok())
                    .ok_or_else(|| err("expected `n <degree>`".into()))?;
                degree = Some(d);
            }
            (_, None) => return Err(err("first line must be `n <degree>`".into())),
            ("order", Some(_)) if generators.is_empty() && order.is_none() => {
                order = Some(
                    words
                        .next()
                        .and_then(|w| w.parse().ok())
                        .ok_or_else(|| err("expected `order <N>`".into()))?,
                );
            }
            (_, Some(n)) => {
                let images: Vec<u32> = line
                    .split_whitespace()
                    .map(|w| w.parse::<u32>())
                    .collect::<Result<_, _>>()
                    .map_err(|e| err(format!("bad image: {e}")))?;
                if images.len() != n {
                    return Err(err(format!("expected {n} images, found {}", images.len())));
                }
                generators.push(Permutation::new(images).map_err(|e| err(e.to_string()))?);
            }
        }
    }
    let degree = degree.ok_or(PermError::Parse {
        line: 0,
        msg: "missing `n <degree>` line".into(),
    })?;
    let mut spec = GroupSpec::new(name, degree, generators)?;
    spec.declared_order = order;
    Ok(spec)
}

pub fn read_group_file(path: &Path) -> io::Result<Result<GroupSpec, PermError>> {
    let text = std::fs::read_to_string(path)?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    Ok(parse_group_file(&name, &text))
}

pub fn write_group_file(spec: &GroupSpec) -> String {
    let mut out = format!("# {}\nn {}\n", spec.name, spec.degree);
    if let Some(order) = spec.declared_order {
        writeln!(out, "order {order}").unwrap();
    }
    for g in &spec.generators {
        let line: Vec<String> = g.images().iter().map(|x| x.to_string()).collect();
        writeln!(out, "{}", line.join(" ")).unwrap();
    }
    out
}
