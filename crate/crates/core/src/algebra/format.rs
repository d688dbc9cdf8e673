//! Line-oriented text format for algebras.
//!
//! ```text
//! # comments run to end of line
//! algebra G2
//! size 4
//! elements bot one zero top
//! const one = one
//! const zero = zero
//! table meet
//! bot bot bot bot
//! ...
//! table neg
//! top zero one bot
//! ```
//!
//! Binary tables take `size` rows of `size` labels (row = left argument);
//! `neg` and `bang` take a single row. Unknown keys are errors.

use thiserror::Error;

use super::{AlgebraError, BinOp, ConstKind, Elem, FiniteAlgebra, Table, UnOp};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError {
        line,
        message: message.into(),
    }
}

/// Parses one algebra from `text`.
pub fn parse_algebra(text: &str) -> Result<FiniteAlgebra, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .peekable();

    let mut name: Option<String> = None;
    let mut size: Option<usize> = None;
    let mut labels: Option<Vec<String>> = None;
    let mut binaries: Vec<(BinOp, Table)> = Vec::new();
    let mut unaries: Vec<(UnOp, Vec<Elem>)> = Vec::new();
    let mut consts: Vec<(ConstKind, Elem)> = Vec::new();
    let mut last_line = 0;

    while let Some((ln, line)) = lines.next() {
        last_line = ln;
        let words: Vec<&str> = line.split_whitespace().collect();
        match words[0] {
            "algebra" => {
                if words.len() != 2 {
                    return Err(err(ln, "expected `algebra <name>`"));
                }
                if name.replace(words[1].to_string()).is_some() {
                    return Err(err(ln, "duplicate `algebra` line"));
                }
            }
            "size" => {
                if words.len() != 2 {
                    return Err(err(ln, "expected `size <n>`"));
                }
                let n: usize = words[1]
                    .parse()
                    .map_err(|_| err(ln, format!("bad size {:?}", words[1])))?;
                if n == 0 {
                    return Err(err(ln, "size must be positive"));
                }
                if size.replace(n).is_some() {
                    return Err(err(ln, "duplicate `size` line"));
                }
            }
            "elements" => {
                let n = size.ok_or_else(|| err(ln, "`elements` before `size`"))?;
                let ls: Vec<String> = words[1..].iter().map(|s| s.to_string()).collect();
                if ls.len() != n {
                    return Err(err(ln, format!("expected {n} labels, found {}", ls.len())));
                }
                if labels.replace(ls).is_some() {
                    return Err(err(ln, "duplicate `elements` line"));
                }
            }
            "const" => {
                let ls = labels.as_ref().ok_or_else(|| err(ln, "`const` before `elements`"))?;
                if words.len() != 4 || words[2] != "=" {
                    return Err(err(ln, "expected `const <name> = <label>`"));
                }
                let kind = match words[1] {
                    "one" => ConstKind::One,
                    "zero" => ConstKind::Zero,
                    "top" => ConstKind::Top,
                    "bot" => ConstKind::Bot,
                    other => return Err(err(ln, format!("unknown constant {other:?}"))),
                };
                if consts.iter().any(|(k, _)| *k == kind) {
                    return Err(err(ln, format!("duplicate constant {}", kind.name())));
                }
                consts.push((kind, lookup(ls, words[3], ln)?));
            }
            "table" => {
                let ls = labels.as_ref().ok_or_else(|| err(ln, "`table` before `elements`"))?;
                let n = ls.len();
                if words.len() != 2 {
                    return Err(err(ln, "expected `table <name>`"));
                }
                let bin = match words[1] {
                    "meet" => Some(BinOp::Meet),
                    "join" => Some(BinOp::Join),
                    "mult" => Some(BinOp::Mult),
                    "imp" => Some(BinOp::Imp),
                    _ => None,
                };
                let un = match words[1] {
                    "neg" => Some(UnOp::Neg),
                    "bang" => Some(UnOp::Bang),
                    _ => None,
                };
                let rows = if bin.is_some() { n } else { 1 };
                if bin.is_none() && un.is_none() {
                    return Err(err(ln, format!("unknown table {:?}", words[1])));
                }
                let mut cells = Vec::with_capacity(rows * n);
                for _ in 0..rows {
                    let (rl, row) = lines
                        .next()
                        .ok_or_else(|| err(ln, format!("table {} is truncated", words[1])))?;
                    last_line = rl;
                    let entries: Vec<&str> = row.split_whitespace().collect();
                    if entries.len() != n {
                        return Err(err(rl, format!("expected {n} entries, found {}", entries.len())));
                    }
                    for e in entries {
                        cells.push(lookup(ls, e, rl)?);
                    }
                }
                if let Some(op) = bin {
                    if binaries.iter().any(|(o, _)| *o == op) {
                        return Err(err(ln, format!("duplicate table {}", op.name())));
                    }
                    binaries.push((op, Table::new(n, cells)));
                } else if let Some(op) = un {
                    if unaries.iter().any(|(o, _)| *o == op) {
                        return Err(err(ln, format!("duplicate table {}", op.name())));
                    }
                    unaries.push((op, cells));
                }
            }
            other => return Err(err(ln, format!("unknown key {other:?}"))),
        }
    }

    let name = name.ok_or_else(|| err(last_line, "missing `algebra` line"))?;
    let labels = labels.ok_or_else(|| err(last_line, "missing `elements` line"))?;
    let mut b = FiniteAlgebra::builder(name, labels);
    for (op, t) in binaries {
        b = b.binary(op, t);
    }
    for (op, u) in unaries {
        b = b.unary(op, u);
    }
    for (c, v) in consts {
        b = b.constant(c, v);
    }
    b.build().map_err(|e: AlgebraError| err(last_line, e.to_string()))
}

fn lookup(labels: &[String], label: &str, line: usize) -> Result<Elem, FormatError> {
    labels
        .iter()
        .position(|l| l == label)
        .ok_or_else(|| err(line, format!("unknown element {label:?}")))
}

/// Canonical printer: header, constants, then tables in the order
/// meet, join, mult, imp, neg, bang.
pub fn print_algebra(alg: &FiniteAlgebra) -> String {
    let n = alg.size();
    let l = |e: Elem| alg.label(e);
    let mut out = String::new();
    out.push_str(&format!("algebra {}\n", alg.name()));
    out.push_str(&format!("size {n}\n"));
    out.push_str(&format!("elements {}\n", alg.labels().join(" ")));
    for c in ConstKind::ALL {
        if let Some(v) = alg.constant(c) {
            out.push_str(&format!("const {} = {}\n", c.name(), l(v)));
        }
    }
    for op in BinOp::ALL {
        if let Some(t) = alg.binary(op) {
            out.push_str(&format!("table {}\n", op.name()));
            for a in 0..n {
                let row: Vec<&str> = t.row(a).iter().map(|&e| l(e)).collect();
                out.push_str(&row.join(" "));
                out.push('\n');
            }
        }
    }
    for op in UnOp::ALL {
        if let Some(u) = alg.unary(op) {
            out.push_str(&format!("table {}\n", op.name()));
            let row: Vec<&str> = u.iter().map(|&e| l(e)).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
    }
    out
}
