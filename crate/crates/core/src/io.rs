//! Line-based text formats for designs and frames.
//!
//! Design files: `GDD K U M B`, then `B` lines of space-separated sorted vertices.
//! Frame files: `FRAME n D N`, then `D` lines of `N` entries joined by ` | `,
//! each entry the comma-separated canonical coefficients over `Z[ζ_n]`.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::cyclo::{euler_phi, CycMatrix, CycScalar};
use crate::designs::{GddViolation, GroupDivisibleDesign};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IoError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("design verification failed: {0}")]
    Design(GddViolation),
}

fn syntax(line: usize, message: impl Into<String>) -> IoError {
    IoError::Syntax { line, message: message.into() }
}

fn parse_num<T: FromStr>(tok: &str, line: usize, what: &str) -> Result<T, IoError> {
    tok.parse().map_err(|_| syntax(line, format!("invalid {what} {tok:?}")))
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end_matches('\r'))).filter(|(_, l)| !l.trim().is_empty())
}

pub fn write_design(d: &GroupDivisibleDesign) -> String {
    let mut out = format!("GDD {} {} {} {}\n", d.k(), d.u(), d.m(), d.block_count());
    for block in d.blocks() {
        let parts: Vec<String> = block.iter().map(usize::to_string).collect();
        out.push_str(&parts.join(" "));
        out.push('\n');
    }
    out
}

/// Parses without verifying; blocks keep their file order.
pub fn parse_design_unchecked(text: &str) -> Result<GroupDivisibleDesign, IoError> {
    let mut lines = content_lines(text);
    let (ln, header) = lines.next().ok_or_else(|| syntax(1, "empty design file"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 5 || toks[0] != "GDD" {
        return Err(syntax(ln, "header must be `GDD K U M B`"));
    }
    let k: usize = parse_num(toks[1], ln, "K")?;
    let u: usize = parse_num(toks[2], ln, "U")?;
    let m: usize = parse_num(toks[3], ln, "M")?;
    let b: usize = parse_num(toks[4], ln, "B")?;
    if m == 0 {
        return Err(syntax(ln, "M must be positive"));
    }
    let mut blocks = Vec::with_capacity(b);
    for (ln, line) in lines {
        let block = line
            .split_whitespace()
            .map(|t| parse_num::<usize>(t, ln, "vertex"))
            .collect::<Result<Vec<_>, _>>()?;
        blocks.push(block);
    }
    if blocks.len() != b {
        return Err(syntax(ln, format!("header declares {b} blocks, file has {}", blocks.len())));
    }
    Ok(GroupDivisibleDesign::new_unchecked(k, u, m, blocks))
}

/// Parses and verifies.
pub fn parse_design(text: &str) -> Result<GroupDivisibleDesign, IoError> {
    let d = parse_design_unchecked(text)?;
    d.verify().map_err(IoError::Design)?;
    Ok(d)
}

pub fn write_frame(mat: &CycMatrix) -> String {
    let mut out = String::new();
    writeln!(out, "FRAME {} {} {}", mat.order(), mat.rows(), mat.cols()).unwrap();
    for r in 0..mat.rows() {
        let parts: Vec<String> = mat.row(r).iter().map(CycScalar::to_coeff_string).collect();
        out.push_str(&parts.join(" | "));
        out.push('\n');
    }
    out
}

pub fn parse_frame(text: &str) -> Result<CycMatrix, IoError> {
    let mut lines = content_lines(text);
    let (ln, header) = lines.next().ok_or_else(|| syntax(1, "empty frame file"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 4 || toks[0] != "FRAME" {
        return Err(syntax(ln, "header must be `FRAME n D N`"));
    }
    let order: u32 = parse_num(toks[1], ln, "order")?;
    if order == 0 {
        return Err(syntax(ln, "order must be positive"));
    }
    let d: usize = parse_num(toks[2], ln, "D")?;
    let n: usize = parse_num(toks[3], ln, "N")?;
    let degree = euler_phi(order);
    let mut entries = Vec::with_capacity(d * n);
    let mut rows = 0;
    for (ln, line) in lines {
        let cells: Vec<&str> = line.split('|').collect();
        if cells.len() != n {
            return Err(syntax(ln, format!("expected {n} entries, found {}", cells.len())));
        }
        for cell in cells {
            let coeffs = cell
                .trim()
                .split(',')
                .map(|t| parse_num::<BigInt>(t.trim(), ln, "coefficient"))
                .collect::<Result<Vec<_>, _>>()?;
            if coeffs.len() != degree {
                return Err(syntax(ln, format!("entry has {} coefficients, order {order} needs {degree}", coeffs.len())));
            }
            entries.push(CycScalar::from_coeffs(order, coeffs).expect("length checked"));
        }
        rows += 1;
    }
    if rows != d {
        return Err(syntax(ln, format!("header declares {d} rows, file has {rows}")));
    }
    Ok(CycMatrix::new(order, d, n, entries).expect("shape checked"))
}
