//! Rectangle-coverage reward on a uniform grid.
//!
//! Each edge owns the closed rectangle of width `thickness(e)` centred on the
//! segment between its endpoints. The region `[0, width] × [0, height]` is cut
//! into square cells of side `h`; a cell belongs to an edge iff the cell centre
//! lies in the edge's rectangle. The value of a set is the number of cells in
//! the union of its members' cells times `h²`, which makes the function exactly
//! monotone and submodular.

use serde::{Deserialize, Serialize};
use std::cell::RefCell;

use super::SetFunction;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, EdgeSet, Instance};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub width: f64,
    pub height: f64,
    pub h: f64,
}

impl Default for Grid {
    fn default() -> Self {
        Grid { width: 100.0, height: 100.0, h: 0.5 }
    }
}

impl Grid {
    pub fn cols(&self) -> usize {
        (self.width / self.h).ceil() as usize
    }

    pub fn rows(&self) -> usize {
        (self.height / self.h).ceil() as usize
    }

    pub fn cell_count(&self) -> usize {
        self.cols() * self.rows()
    }

    pub fn center(&self, cell: usize) -> [f64; 2] {
        let (r, c) = (cell / self.cols(), cell % self.cols());
        [(c as f64 + 0.5) * self.h, (r as f64 + 0.5) * self.h]
    }

    fn validate(&self) -> Result<()> {
        let ok = self.h.is_finite() && self.h > 0.0 && self.width > 0.0 && self.height > 0.0;
        if !ok || !self.width.is_finite() || !self.height.is_finite() {
            return Err(Error::Config(format!("invalid grid {self:?}")));
        }
        if self.cell_count() > u32::MAX as usize / 2 {
            return Err(Error::Config("grid too fine".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct CoverageObjective {
    grid: Grid,
    thickness: Vec<f64>,
    words: usize,
    // per-edge (word, mask) runs, flattened; edge e owns offsets[e]..offsets[e+1]
    offsets: Vec<usize>,
    chunks: Vec<(u32, u64)>,
}

thread_local! {
    static SCRATCH: RefCell<(Vec<u64>, Vec<u32>)> = const { RefCell::new((Vec::new(), Vec::new())) };
}

impl CoverageObjective {
    pub fn new(inst: &Instance, thickness: Vec<f64>, grid: Grid) -> Result<Self> {
        grid.validate()?;
        let coords = inst
            .coords()
            .ok_or_else(|| Error::InvalidInstance("coverage needs vertex coordinates".into()))?;
        if thickness.len() != inst.edge_count() {
            return Err(Error::Config(format!(
                "{} thickness values for {} edges",
                thickness.len(),
                inst.edge_count()
            )));
        }
        if thickness.iter().any(|t| !t.is_finite() || *t < 0.0) {
            return Err(Error::Config("thickness must be finite and non-negative".into()));
        }
        let words = grid.cell_count().div_ceil(64);
        let mut offsets = Vec::with_capacity(inst.edge_count() + 1);
        let mut chunks = Vec::new();
        offsets.push(0);
        for e in inst.edges() {
            let (u, v) = inst.endpoints(e);
            let cells = rectangle_cells(&grid, coords[u], coords[v], thickness[e.index()]);
            for cell in cells {
                let w = (cell / 64) as u32;
                let bit = 1u64 << (cell % 64);
                let fresh = chunks.len() == *offsets.last().unwrap();
                match chunks.last_mut() {
                    Some((lw, m)) if !fresh && *lw == w => *m |= bit,
                    _ => chunks.push((w, bit)),
                }
            }
            offsets.push(chunks.len());
        }
        Ok(CoverageObjective { grid, thickness, words, offsets, chunks })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn thickness(&self) -> &[f64] {
        &self.thickness
    }

    /// Cell ids covered by one edge, ascending.
    pub fn cells(&self, e: EdgeId) -> Vec<usize> {
        let mut out = Vec::new();
        for &(w, m) in &self.chunks[self.offsets[e.index()]..self.offsets[e.index() + 1]] {
            let mut bits = m;
            while bits != 0 {
                out.push(w as usize * 64 + bits.trailing_zeros() as usize);
                bits &= bits - 1;
            }
        }
        out
    }

    /// Number of distinct cells covered by `s` (plus `extra`, if any).
    pub fn covered_cells(&self, s: &EdgeSet, extra: Option<EdgeId>) -> usize {
        SCRATCH.with(|cell| {
            let (scratch, touched) = &mut *cell.borrow_mut();
            if scratch.len() < self.words {
                scratch.resize(self.words, 0);
            }
            touched.clear();
            for e in s.iter().chain(extra) {
                for &(w, m) in &self.chunks[self.offsets[e.index()]..self.offsets[e.index() + 1]] {
                    let slot = &mut scratch[w as usize];
                    if *slot == 0 {
                        touched.push(w);
                    }
                    *slot |= m;
                }
            }
            let mut count = 0usize;
            for &w in touched.iter() {
                count += scratch[w as usize].count_ones() as usize;
                scratch[w as usize] = 0;
            }
            count
        })
    }
}

impl SetFunction for CoverageObjective {
    fn ground_size(&self) -> usize {
        self.thickness.len()
    }

    fn value(&self, s: &EdgeSet) -> f64 {
        self.covered_cells(s, None) as f64 * self.grid.h * self.grid.h
    }

    fn value_with(&self, s: &EdgeSet, extra: EdgeId) -> f64 {
        self.covered_cells(s, Some(extra)) as f64 * self.grid.h * self.grid.h
    }
}

/// Cells whose centres lie in the closed rectangle around segment `p`–`q`.
fn rectangle_cells(grid: &Grid, p: [f64; 2], q: [f64; 2], thickness: f64) -> Vec<usize> {
    let d = [q[0] - p[0], q[1] - p[1]];
    let len2 = d[0] * d[0] + d[1] * d[1];
    if thickness <= 0.0 || len2 == 0.0 {
        return Vec::new();
    }
    let len = len2.sqrt();
    let half = thickness / 2.0;
    // offset from the segment to the long sides
    let off = [-d[1] / len * half, d[0] / len * half];
    let xs = [p[0] + off[0], p[0] - off[0], q[0] + off[0], q[0] - off[0]];
    let ys = [p[1] + off[1], p[1] - off[1], q[1] + off[1], q[1] - off[1]];
    let fold = |v: &[f64], f: fn(f64, f64) -> f64| v.iter().copied().reduce(f).unwrap();
    let (x0, x1) = (fold(&xs, f64::min), fold(&xs, f64::max));
    let (y0, y1) = (fold(&ys, f64::min), fold(&ys, f64::max));

    let (cols, rows) = (grid.cols() as i64, grid.rows() as i64);
    let idx_lo = |v: f64, lim: i64| ((v / grid.h - 0.5).ceil() as i64 - 1).clamp(0, lim);
    let idx_hi = |v: f64, lim: i64| ((v / grid.h - 0.5).floor() as i64 + 1).clamp(-1, lim - 1);
    let (c0, c1) = (idx_lo(x0, cols), idx_hi(x1, cols));
    let (r0, r1) = (idx_lo(y0, rows), idx_hi(y1, rows));

    let band = half * len;
    let mut out = Vec::new();
    for r in r0..=r1 {
        let cy = (r as f64 + 0.5) * grid.h;
        for c in c0..=c1 {
            let cx = (c as f64 + 0.5) * grid.h;
            let rel = [cx - p[0], cy - p[1]];
            let along = rel[0] * d[0] + rel[1] * d[1];
            let across = rel[0] * d[1] - rel[1] * d[0];
            if (0.0..=len2).contains(&along) && across.abs() <= band {
                out.push(r as usize * cols as usize + c as usize);
            }
        }
    }
    out
}
