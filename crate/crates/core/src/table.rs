//! Square operation tables over a finite carrier.

use std::fmt;

use crate::relation::{Psoset, SubPsoset};
use crate::set::ElementSet;

/// An `n × n` table of element indices, `cells[x * n + y] = F(x, y)`.
///
/// Ordering and equality compare cells in row-major order, which is the canonical order used
/// for enumerated t-norms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryOpTable {
    n: usize,
    cells: Vec<usize>,
}

impl BinaryOpTable {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> usize) -> Self {
        let mut cells = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                cells.push(f(x, y));
            }
        }
        BinaryOpTable { n, cells }
    }

    /// Builds from row-major cells; `None` if the length is not a square or a value is out of range.
    pub fn from_cells(n: usize, cells: Vec<usize>) -> Option<Self> {
        (cells.len() == n * n && cells.iter().all(|&v| v < n)).then_some(BinaryOpTable { n, cells })
    }

    pub fn from_rows(rows: &[Vec<usize>]) -> Option<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return None;
        }
        Self::from_cells(n, rows.concat())
    }

    /// Parses rows of element names, e.g. `["0 a", "a 1"]`.
    pub fn from_named_rows(p: &Psoset, rows: &[&str]) -> Option<Self> {
        let parsed: Option<Vec<Vec<usize>>> = rows
            .iter()
            .map(|r| r.split_whitespace().map(|t| p.index_of(t)).collect())
            .collect();
        let t = Self::from_rows(&parsed?)?;
        (t.n == p.len()).then_some(t)
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> usize {
        self.cells[x * self.n + y]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, v: usize) {
        self.cells[x * self.n + y] = v;
    }

    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    pub fn rows(&self) -> impl Iterator<Item = &[usize]> {
        self.cells.chunks(self.n.max(1))
    }

    /// Cells where the two tables differ, row-major.
    pub fn diff(&self, other: &BinaryOpTable) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.n {
            for y in 0..self.n {
                if self.get(x, y) != other.get(x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Restricts to a sub-carrier; `None` if some cell of `sub × sub` leaves `sub`.
    pub fn restrict(&self, sub: &SubPsoset) -> Option<BinaryOpTable> {
        let k = sub.embedding.len();
        let mut cells = Vec::with_capacity(k * k);
        for &x in &sub.embedding {
            for &y in &sub.embedding {
                cells.push(sub.local(self.get(x, y))?);
            }
        }
        Some(BinaryOpTable { n: k, cells })
    }

    /// Image of `F` on `a × a`.
    pub fn image_on(&self, a: ElementSet) -> ElementSet {
        let mut s = ElementSet::EMPTY;
        for x in a {
            for y in a {
                s.insert(self.get(x, y));
            }
        }
        s
    }

    /// Renders with element names, one row per line.
    pub fn render(&self, p: &Psoset) -> String {
        let width = p.names().iter().map(|s| s.len()).max().unwrap_or(1);
        let mut out = String::new();
        for row in self.rows() {
            let line: Vec<String> = row.iter().map(|&v| format!("{:>width$}", p.name(v))).collect();
            out.push_str(line.join(" ").trim_end());
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for BinaryOpTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}
