//! Triangle grids of residues and their renderings.
//!
//! A [`TriangleGrid`] holds rows `0..N` of the Fibonomial or binomial
//! triangle reduced modulo `m`, computed from exact big-integer rows. It can
//! be rendered as centered text (like the printed triangles), as a PBM
//! bitmap (mod 2 only), as a PGM graymap, or as CSV.

use num_bigint::BigUint;

use crate::congruence::Residue;
use crate::exact::FibonomialRows;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RenderError {
    #[error("PBM output requires modulus 2, got {0}")]
    PbmNeedsMod2(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriangleKind {
    Fibonomial,
    Binomial,
}

/// Rows `0..rows` of a coefficient triangle modulo `modulus`.
///
/// Cells come from exact arithmetic reduced at the end of each row advance;
/// the fast digit evaluators are never used here, so grids can serve as
/// ground truth for them.
#[derive(Debug, Clone)]
pub struct TriangleGrid {
    kind: TriangleKind,
    modulus: u64,
    cells: Vec<Vec<u64>>,
}

impl TriangleGrid {
    pub fn build(kind: TriangleKind, rows: u64, modulus: u64) -> Self {
        Self::build_inner(kind, rows, modulus, None)
    }

    /// As [`build`](Self::build), but with row-level parallelism forced on or
    /// off instead of left to the row-length policy (forcing is a no-op in
    /// sequential builds).
    pub fn build_with(kind: TriangleKind, rows: u64, modulus: u64, parallel: bool) -> Self {
        Self::build_inner(kind, rows, modulus, Some(parallel))
    }

    fn build_inner(kind: TriangleKind, rows: u64, modulus: u64, force: Option<bool>) -> Self {
        assert!(rows >= 1, "a triangle needs at least one row");
        assert!(modulus >= 2, "modulus must be at least 2");
        let m = BigUint::from(modulus);
        let reduce = |row: &[BigUint]| -> Vec<u64> {
            row.iter()
                .map(|v| u64::try_from(&(v % &m)).expect("residue fits u64"))
                .collect()
        };
        let mut cells = Vec::with_capacity(rows as usize);
        match kind {
            TriangleKind::Fibonomial => {
                let mut iter = match force {
                    None => FibonomialRows::new(),
                    Some(parallel) => FibonomialRows::new().with_parallelism(parallel),
                };
                for _ in 0..rows {
                    cells.push(reduce(iter.next_row()));
                }
            }
            TriangleKind::Binomial => {
                let mut row: Vec<BigUint> = vec![BigUint::from(1u32)];
                cells.push(reduce(&row));
                for _ in 1..rows {
                    let mut next = Vec::with_capacity(row.len() + 1);
                    next.push(BigUint::from(1u32));
                    for k in 1..row.len() {
                        next.push(&row[k - 1] + &row[k]);
                    }
                    next.push(BigUint::from(1u32));
                    row = next;
                    cells.push(reduce(&row));
                }
            }
        }
        TriangleGrid {
            kind,
            modulus,
            cells,
        }
    }

    pub fn kind(&self) -> TriangleKind {
        self.kind
    }

    pub fn rows(&self) -> u64 {
        self.cells.len() as u64
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Residue at `(n, k)`; zero outside `0 <= k <= n`. Panics if `n` is not
    /// a stored row.
    pub fn cell(&self, n: u64, k: u64) -> u64 {
        let row = &self.cells[n as usize];
        row.get(k as usize).copied().unwrap_or(0)
    }

    pub fn residue(&self, n: u64, k: u64) -> Residue {
        Residue::new(self.cell(n, k), self.modulus)
    }

    pub fn row(&self, n: u64) -> &[u64] {
        &self.cells[n as usize]
    }

    /// Recomputes a deterministic sample of cells through the independent
    /// point evaluators and compares. Sample rows are capped so a render
    /// never doubles its own cost.
    pub fn spot_check(&self) -> bool {
        let top = (self.rows() - 1).min(384);
        let mut samples = vec![(0, 0), (top, 0), (top, top)];
        for i in 1..=6 {
            let n = top * i / 6;
            samples.push((n, n / 3));
            samples.push((n, n / 2));
        }
        samples.into_iter().all(|(n, k)| {
            let exact = match self.kind {
                TriangleKind::Fibonomial => crate::exact::fibonomial(n, k as i64),
                TriangleKind::Binomial => crate::exact::binomial(n, k as i64),
            };
            let expected = u64::try_from(&(exact % self.modulus)).expect("residue fits u64");
            self.cell(n, k) == expected
        })
    }

    /// Centered text layout, one triangle row per line.
    pub fn render_text(&self, balanced: bool) -> String {
        let cell_str = |n: u64, k: u64| -> String {
            if balanced {
                self.residue(n, k).balanced().to_string()
            } else {
                self.cell(n, k).to_string()
            }
        };
        let mut width = 1;
        for n in 0..self.rows() {
            for k in 0..=n {
                width = width.max(cell_str(n, k).len());
            }
        }
        let mut out = String::new();
        for n in 0..self.rows() {
            let pad = (self.rows() - 1 - n) as usize * (width + 1) / 2;
            out.push_str(&" ".repeat(pad));
            let row: Vec<String> = (0..=n)
                .map(|k| format!("{:>width$}", cell_str(n, k)))
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    /// ASCII PBM bitmap: `rows x rows` pixels, row `n` left-justified with 1
    /// marking odd cells. Mod 2 only.
    pub fn to_pbm(&self) -> Result<String, RenderError> {
        if self.modulus != 2 {
            return Err(RenderError::PbmNeedsMod2(self.modulus));
        }
        let n = self.rows();
        let mut out = format!("P1\n{n} {n}\n");
        for r in 0..n {
            let pixels: Vec<String> = (0..n).map(|k| self.cell(r, k).to_string()).collect();
            out.push_str(&pixels.join(" "));
            out.push('\n');
        }
        Ok(out)
    }

    /// ASCII PGM graymap with `maxval = modulus - 1`; the residue is the gray
    /// level, and cells outside the triangle are 0.
    pub fn to_pgm(&self) -> String {
        let n = self.rows();
        let mut out = format!("P2\n{n} {n}\n{}\n", self.modulus - 1);
        for r in 0..n {
            let pixels: Vec<String> = (0..n).map(|k| self.cell(r, k).to_string()).collect();
            out.push_str(&pixels.join(" "));
            out.push('\n');
        }
        out
    }

    /// One line per row, `n + 1` comma-separated residues on row `n`, no
    /// header.
    pub fn to_csv(&self, balanced: bool) -> String {
        let mut out = String::new();
        for n in 0..self.rows() {
            let row: Vec<String> = (0..=n)
                .map(|k| {
                    if balanced {
                        self.residue(n, k).balanced().to_string()
                    } else {
                        self.cell(n, k).to_string()
                    }
                })
                .collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}
