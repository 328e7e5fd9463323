//! Latin squares, orthogonal pairs and their canonical forms.

use std::collections::BTreeSet;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatinError {
    #[error("malformed square: {0}")]
    Malformed(String),
    #[error("not a Latin square")]
    NotLatin,
    #[error("orders differ: {0} and {1}")]
    OrderMismatch(usize, usize),
    #[error("order {0} is outside the supported range 2..=4 (no orthogonal pair of order 6 exists, and larger orders are not searched)")]
    UnsupportedOrder(usize),
}

/// A d×d array whose rows and columns are permutations of `1..=d`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct LatinSquare {
    order: usize,
    cells: Vec<u8>,
}

/// Row/column permutation property; errors on wrong shape or out-of-range entries.
pub fn is_latin(m: &[Vec<usize>]) -> Result<bool, LatinError> {
    let d = m.len();
    if d == 0 || d > u8::MAX as usize {
        return Err(LatinError::Malformed(format!("order {d}")));
    }
    for row in m {
        if row.len() != d {
            return Err(LatinError::Malformed("array is not square".into()));
        }
        if let Some(v) = row.iter().find(|&&v| v == 0 || v > d) {
            return Err(LatinError::Malformed(format!("entry {v} outside 1..={d}")));
        }
    }
    let rows_ok = m.iter().all(|r| r.iter().collect::<BTreeSet<_>>().len() == d);
    let cols_ok = (0..d).all(|j| m.iter().map(|r| r[j]).collect::<BTreeSet<_>>().len() == d);
    Ok(rows_ok && cols_ok)
}

impl LatinSquare {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self, LatinError> {
        if !is_latin(&rows)? {
            return Err(LatinError::NotLatin);
        }
        let order = rows.len();
        let cells = rows.iter().flatten().map(|&v| v as u8).collect();
        Ok(LatinSquare { order, cells })
    }

    fn from_cells(order: usize, cells: Vec<u8>) -> Self {
        LatinSquare { order, cells }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Entry in row `i`, column `j` (both 0-based), a value in `1..=d`.
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.cells[i * self.order + j] as usize
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.cells.chunks(self.order).map(|r| r.iter().map(|&v| v as usize).collect()).collect()
    }
}

impl TryFrom<Vec<Vec<usize>>> for LatinSquare {
    type Error = LatinError;
    fn try_from(rows: Vec<Vec<usize>>) -> Result<Self, LatinError> {
        LatinSquare::new(rows)
    }
}

impl From<LatinSquare> for Vec<Vec<usize>> {
    fn from(s: LatinSquare) -> Self {
        s.rows()
    }
}

/// All d² superposed pairs are distinct.
pub fn are_orthogonal(a: &LatinSquare, b: &LatinSquare) -> Result<bool, LatinError> {
    if a.order != b.order {
        return Err(LatinError::OrderMismatch(a.order, b.order));
    }
    let pairs: BTreeSet<(u8, u8)> = a.cells.iter().copied().zip(b.cells.iter().copied()).collect();
    Ok(pairs.len() == a.order * a.order)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct OlsPair {
    pub first: LatinSquare,
    pub second: LatinSquare,
}

impl OlsPair {
    pub fn new(first: LatinSquare, second: LatinSquare) -> Result<Self, LatinError> {
        if !are_orthogonal(&first, &second)? {
            return Err(LatinError::Malformed("squares are not orthogonal".into()));
        }
        Ok(OlsPair { first, second })
    }

    pub fn order(&self) -> usize {
        self.first.order
    }

    /// Flattened comparison key: first square row-major, then the second.
    pub fn key(&self) -> Vec<u8> {
        self.first.cells.iter().chain(&self.second.cells).copied().collect()
    }

    pub fn transform(&self, g: &GroupElement) -> OlsPair {
        let d = self.order();
        let apply = |s: &LatinSquare, relabel: &[usize]| {
            let mut cells = vec![0u8; d * d];
            for i in 0..d {
                for j in 0..d {
                    let v = s.get(g.rows[i], g.cols[j]);
                    cells[i * d + j] = relabel[v - 1] as u8;
                }
            }
            LatinSquare::from_cells(d, cells)
        };
        let a = apply(&self.first, &g.relabel_first);
        let b = apply(&self.second, &g.relabel_second);
        if g.swap {
            OlsPair { first: b, second: a }
        } else {
            OlsPair { first: a, second: b }
        }
    }
}

/// Element of the equivalence group. Row `i` of the image is row `rows[i]` of the
/// source (likewise for columns); symbol `v` becomes `relabel[v-1]`; `swap`
/// exchanges the two squares last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub relabel_first: Vec<usize>,
    pub relabel_second: Vec<usize>,
    pub swap: bool,
}

/// Relabel symbols by order of first appearance in row-major reading.
fn relabel_by_appearance(cells: &[u8], d: usize) -> Vec<u8> {
    let mut map = vec![0u8; d + 1];
    let mut next = 1u8;
    cells
        .iter()
        .map(|&v| {
            if map[v as usize] == 0 {
                map[v as usize] = next;
                next += 1;
            }
            map[v as usize]
        })
        .collect()
}

/// Minimum of the orbit under common row and column permutations, independent
/// relabelings and swapping.
///
/// For fixed row/column permutations and swap, relabeling each square by first
/// appearance is the lexicographic minimum over relabelings, so only those three
/// factors are enumerated.
pub fn canonical_form(p: &OlsPair) -> OlsPair {
    let d = p.order();
    let mut best: Option<Vec<u8>> = None;
    let mut buf_a = vec![0u8; d * d];
    let mut buf_b = vec![0u8; d * d];
    for (x, y) in [(&p.first, &p.second), (&p.second, &p.first)] {
        for rows in (0..d).permutations(d) {
            for cols in (0..d).permutations(d) {
                for i in 0..d {
                    for j in 0..d {
                        buf_a[i * d + j] = x.get(rows[i], cols[j]) as u8;
                        buf_b[i * d + j] = y.get(rows[i], cols[j]) as u8;
                    }
                }
                let mut key = relabel_by_appearance(&buf_a, d);
                key.extend(relabel_by_appearance(&buf_b, d));
                if best.as_ref().is_none_or(|b| key < *b) {
                    best = Some(key);
                }
            }
        }
    }
    let key = best.expect("nonempty group");
    let (a, b) = key.split_at(d * d);
    OlsPair { first: LatinSquare::from_cells(d, a.to_vec()), second: LatinSquare::from_cells(d, b.to_vec()) }
}

/// Every reduced Latin square of order `d` (first row and column in natural order).
fn reduced_squares(d: usize) -> Vec<Vec<u8>> {
    let mut cells = vec![0u8; d * d];
    for i in 0..d {
        cells[i] = (i + 1) as u8;
        cells[i * d] = (i + 1) as u8;
    }
    let mut out = Vec::new();
    fill_square(&mut cells, d, d + 1, &mut |c| out.push(c.to_vec()));
    out
}

fn fill_square(cells: &mut [u8], d: usize, pos: usize, emit: &mut dyn FnMut(&[u8])) {
    if pos == d * d {
        emit(cells);
        return;
    }
    let (i, j) = (pos / d, pos % d);
    if j == 0 {
        return fill_square(cells, d, pos + 1, emit);
    }
    for v in 1..=d as u8 {
        let row_ok = (0..j).all(|c| cells[i * d + c] != v);
        let col_ok = (0..i).all(|r| cells[r * d + j] != v);
        if row_ok && col_ok {
            cells[pos] = v;
            fill_square(cells, d, pos + 1, emit);
            cells[pos] = 0;
        }
    }
}

/// Orthogonal mates of `a` whose first row is in natural order.
fn mates(a: &[u8], d: usize) -> Vec<Vec<u8>> {
    let mut cells = vec![0u8; d * d];
    let mut used = vec![false; (d + 1) * (d + 1)];
    for j in 0..d {
        cells[j] = (j + 1) as u8;
        used[a[j] as usize * (d + 1) + j + 1] = true;
    }
    let mut out = Vec::new();
    fill_mate(a, &mut cells, &mut used, d, d, &mut out);
    out
}

fn fill_mate(a: &[u8], cells: &mut [u8], used: &mut [bool], d: usize, pos: usize, out: &mut Vec<Vec<u8>>) {
    if pos == d * d {
        out.push(cells.to_vec());
        return;
    }
    let (i, j) = (pos / d, pos % d);
    for v in 1..=d as u8 {
        let slot = a[pos] as usize * (d + 1) + v as usize;
        if used[slot] || (0..j).any(|c| cells[i * d + c] == v) || (0..i).any(|r| cells[r * d + j] == v) {
            continue;
        }
        cells[pos] = v;
        used[slot] = true;
        fill_mate(a, cells, used, d, pos + 1, out);
        used[slot] = false;
        cells[pos] = 0;
    }
}

/// Every orthogonal pair found by backtracking (reduced first square, mate with
/// natural first row), before any identification.
pub fn raw_ols_pairs(d: usize) -> Result<Vec<OlsPair>, LatinError> {
    if !(2..=4).contains(&d) {
        return Err(LatinError::UnsupportedOrder(d));
    }
    let mut out = Vec::new();
    for a in reduced_squares(d) {
        for b in mates(&a, d) {
            out.push(OlsPair { first: LatinSquare::from_cells(d, a.clone()), second: LatinSquare::from_cells(d, b) });
        }
    }
    Ok(out)
}

/// Canonical representatives of all orthogonal pairs of order `d`, ascending.
pub fn enumerate_ols(d: usize) -> Result<Vec<OlsPair>, LatinError> {
    let classes: BTreeSet<Vec<u8>> = raw_ols_pairs(d)?.iter().map(|p| canonical_form(p).key()).collect();
    Ok(classes
        .into_iter()
        .map(|k| {
            let (a, b) = k.split_at(d * d);
            OlsPair { first: LatinSquare::from_cells(d, a.to_vec()), second: LatinSquare::from_cells(d, b.to_vec()) }
        })
        .collect())
}
