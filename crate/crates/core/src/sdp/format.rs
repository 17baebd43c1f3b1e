//! Sparse text interchange for SDP problems and solutions.
//!
//! The problem format follows the SDPA sparse convention: comment lines
//! start with `"`, then the number of constraints, the number of blocks,
//! the block sizes, the right-hand sides, and one line per nonzero
//! `<constraint> <block> <row> <col> <value>` with 1-based indices;
//! constraint index 0 denotes the objective matrix. Solutions are exchanged
//! as whitespace-separated full blocks in row-major order.

use super::model::{BlockSpec, ConstraintRow, Entry, SdpProblem};
use nalgebra::DMatrix;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FormatError {
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("solution has {got} values but the problem needs {want}")]
    SolutionLength { got: usize, want: usize },
}

pub fn export_problem(p: &SdpProblem) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "\" three-point SDP: n = {}, d = {}, cos_theta = {:.17e}",
        p.n, p.d, p.cos_theta
    );
    let _ = writeln!(out, "{}", p.constraints.len());
    let _ = writeln!(out, "{}", p.blocks.len());
    let sizes: Vec<String> = p.blocks.iter().map(|b| b.size.to_string()).collect();
    let _ = writeln!(out, "{}", sizes.join(" "));
    let rhs: Vec<String> = p
        .constraints
        .iter()
        .map(|r| format!("{:.17e}", r.rhs))
        .collect();
    let _ = writeln!(out, "{}", rhs.join(" "));
    for e in &p.objective {
        let _ = writeln!(
            out,
            "0 {} {} {} {:.17e}",
            e.block + 1,
            e.row + 1,
            e.col + 1,
            e.value
        );
    }
    for (i, row) in p.constraints.iter().enumerate() {
        for e in &row.entries {
            let _ = writeln!(
                out,
                "{} {} {} {} {:.17e}",
                i + 1,
                e.block + 1,
                e.row + 1,
                e.col + 1,
                e.value
            );
        }
    }
    out
}

pub fn import_problem(text: &str) -> Result<SdpProblem, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('"'));
    let mut next = |what: &str| {
        lines
            .next()
            .ok_or_else(|| FormatError::Malformed {
                line: 0,
                reason: format!("missing {what}"),
            })
    };

    let (ln, l) = next("constraint count")?;
    let m: usize = parse(l.trim(), ln)?;
    let (ln, l) = next("block count")?;
    let nblocks: usize = parse(l.trim(), ln)?;
    let (ln, l) = next("block sizes")?;
    let sizes: Vec<usize> = l
        .split_whitespace()
        .map(|t| parse(t, ln))
        .collect::<Result<_, _>>()?;
    if sizes.len() != nblocks {
        return Err(FormatError::Malformed {
            line: ln + 1,
            reason: format!("expected {nblocks} block sizes, got {}", sizes.len()),
        });
    }
    let (ln, l) = next("right-hand sides")?;
    let rhs: Vec<f64> = l
        .split_whitespace()
        .map(|t| parse(t, ln))
        .collect::<Result<_, _>>()?;
    if rhs.len() != m {
        return Err(FormatError::Malformed {
            line: ln + 1,
            reason: format!("expected {m} right-hand sides, got {}", rhs.len()),
        });
    }

    let mut objective = Vec::new();
    let mut constraints: Vec<ConstraintRow> = rhs
        .into_iter()
        .map(|rhs| ConstraintRow {
            entries: Vec::new(),
            rhs,
        })
        .collect();
    for (ln, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != 5 {
            return Err(FormatError::Malformed {
                line: ln + 1,
                reason: format!("expected 5 fields, got {}", toks.len()),
            });
        }
        let idx: usize = parse(toks[0], ln)?;
        let block: usize = parse::<usize>(toks[1], ln)?
            .checked_sub(1)
            .ok_or_else(|| malformed(ln, "block index is 1-based"))?;
        let row: usize = parse::<usize>(toks[2], ln)?
            .checked_sub(1)
            .ok_or_else(|| malformed(ln, "row index is 1-based"))?;
        let col: usize = parse::<usize>(toks[3], ln)?
            .checked_sub(1)
            .ok_or_else(|| malformed(ln, "column index is 1-based"))?;
        let value: f64 = parse(toks[4], ln)?;
        if block >= nblocks || row >= sizes[block] || col >= sizes[block] || row > col {
            return Err(malformed(ln, "entry outside the declared upper triangle"));
        }
        let entry = Entry {
            block,
            row,
            col,
            value,
        };
        if idx == 0 {
            objective.push(entry);
        } else if idx <= m {
            constraints[idx - 1].entries.push(entry);
        } else {
            return Err(malformed(ln, "constraint index out of range"));
        }
    }

    Ok(SdpProblem {
        n: 0,
        d: 0,
        cos_theta: f64::NAN,
        blocks: sizes
            .into_iter()
            .enumerate()
            .map(|(i, size)| BlockSpec {
                name: format!("B{i}"),
                size,
            })
            .collect(),
        constraints,
        objective,
        objective_offset: 0.0,
        univariate_rows: 0,
        trivariate_monomials: vec![],
    })
}

fn parse<T: std::str::FromStr>(tok: &str, line: usize) -> Result<T, FormatError> {
    tok.parse()
        .map_err(|_| malformed(line, &format!("cannot parse {tok:?}")))
}

fn malformed(line: usize, reason: &str) -> FormatError {
    FormatError::Malformed {
        line: line + 1,
        reason: reason.to_string(),
    }
}

pub fn export_solution_blocks(blocks: &[DMatrix<f64>]) -> String {
    let mut out = String::new();
    for b in blocks {
        for r in 0..b.nrows() {
            let row: Vec<String> = (0..b.ncols()).map(|c| format!("{:.17e}", b[(r, c)])).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
    }
    out
}

pub fn import_solution_blocks(
    p: &SdpProblem,
    text: &str,
) -> Result<Vec<DMatrix<f64>>, FormatError> {
    let values: Vec<f64> = text
        .split_whitespace()
        .enumerate()
        .map(|(i, t)| parse(t, i))
        .collect::<Result<_, _>>()?;
    let want: usize = p.blocks.iter().map(|b| b.size * b.size).sum();
    if values.len() != want {
        return Err(FormatError::SolutionLength {
            got: values.len(),
            want,
        });
    }
    let mut out = Vec::with_capacity(p.blocks.len());
    let mut off = 0;
    for b in &p.blocks {
        let s = b.size;
        out.push(DMatrix::from_fn(s, s, |r, c| values[off + r * s + c]));
        off += s * s;
    }
    Ok(out)
}
