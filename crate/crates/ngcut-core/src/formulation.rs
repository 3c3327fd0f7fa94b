//! Sparse linear-inequality representations of the cutting model.
//!
//! The 0-1 model has one variable per admissible `(piece, x, y)` placement.
//! Two families of rows constrain it:
//!
//! * one *overlap* row per grid cell `(r, s)`, saying the cell is covered by
//!   at most one placed piece;
//! * one *availability* row per piece type, capping the number of copies.
//!
//! The *packing polytope* carries both families plus the `[0, 1]` box; the
//! *availability polytope* drops the overlap rows and is used by the
//! relaxation that produces starting points. Both keep every coefficient
//! sparse — the full coefficient tensor is never materialized.

use crate::model::{covers, Instance, Placement, PositionGrid, VarIndex};

/// Column-major sparse matrix with at most one entry per `(row, col)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix {
    n_rows: usize,
    n_cols: usize,
    cols: Vec<Vec<(usize, f64)>>,
}

/// Construction error for [`SparseMatrix::from_triplets`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatrixError {
    IndexOutOfRange { row: usize, col: usize },
    DuplicateEntry { row: usize, col: usize },
}

impl std::fmt::Display for MatrixError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MatrixError::IndexOutOfRange { row, col } => {
                write!(f, "entry ({row}, {col}) is out of range")
            }
            MatrixError::DuplicateEntry { row, col } => {
                write!(f, "duplicate entry at ({row}, {col})")
            }
        }
    }
}

impl std::error::Error for MatrixError {}

impl SparseMatrix {
    pub fn zero(n_rows: usize, n_cols: usize) -> Self {
        SparseMatrix {
            n_rows,
            n_cols,
            cols: vec![Vec::new(); n_cols],
        }
    }

    pub fn from_triplets(
        n_rows: usize,
        n_cols: usize,
        entries: &[(usize, usize, f64)],
    ) -> Result<Self, MatrixError> {
        let mut matrix = SparseMatrix::zero(n_rows, n_cols);
        for &(row, col, value) in entries {
            if row >= n_rows || col >= n_cols {
                return Err(MatrixError::IndexOutOfRange { row, col });
            }
            matrix.cols[col].push((row, value));
        }
        for (col, entries) in matrix.cols.iter_mut().enumerate() {
            entries.sort_unstable_by_key(|&(row, _)| row);
            for pair in entries.windows(2) {
                if pair[0].0 == pair[1].0 {
                    return Err(MatrixError::DuplicateEntry { row: pair[0].0, col });
                }
            }
        }
        Ok(matrix)
    }

    /// Appends an entry. The caller guarantees range and uniqueness; row
    /// indices within a column must arrive in increasing order.
    fn push(&mut self, row: usize, col: usize, value: f64) {
        debug_assert!(row < self.n_rows && col < self.n_cols);
        debug_assert!(self.cols[col].last().map_or(true, |&(r, _)| r < row));
        self.cols[col].push((row, value));
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    /// Entries of one column, sorted by row.
    pub fn column(&self, col: usize) -> &[(usize, f64)] {
        &self.cols[col]
    }

    /// All entries in column-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(col, entries)| entries.iter().map(move |&(row, value)| (row, col, value)))
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    /// `A x` for a dense `x`.
    pub fn row_activities(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n_cols);
        let mut activity = vec![0.0; self.n_rows];
        for (col, entries) in self.cols.iter().enumerate() {
            let xj = x[col];
            if xj != 0.0 {
                for &(row, value) in entries {
                    activity[row] += value * xj;
                }
            }
        }
        activity
    }

    /// Number of rows holding at least one entry.
    pub fn nonzero_row_count(&self) -> usize {
        let mut used = vec![false; self.n_rows];
        for entries in &self.cols {
            for &(row, _) in entries {
                used[row] = true;
            }
        }
        used.iter().filter(|&&u| u).count()
    }
}

/// What a polytope row means.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowLabel {
    /// Cell `(x, y)` is covered by at most one piece.
    Overlap { x: u32, y: u32 },
    /// At most `max_count` copies of the piece.
    Availability { piece: usize },
}

/// `{ x in [0,1]^n : A x <= rhs }` with a label per row.
///
/// The zero vector is always feasible (all coefficients and right-hand
/// sides are non-negative) and the box keeps the set compact.
#[derive(Clone, Debug, PartialEq)]
pub struct Polytope {
    pub matrix: SparseMatrix,
    pub rhs: Vec<f64>,
    pub labels: Vec<RowLabel>,
}

impl Polytope {
    pub fn n_vars(&self) -> usize {
        self.matrix.n_cols()
    }

    pub fn n_rows(&self) -> usize {
        self.matrix.n_rows()
    }

    pub fn row_activities(&self, x: &[f64]) -> Vec<f64> {
        self.matrix.row_activities(x)
    }

    /// Rows and box bounds all satisfied within `tol`.
    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        if x.iter().any(|&v| v < -tol || v > 1.0 + tol) {
            return false;
        }
        self.row_activities(x)
            .iter()
            .zip(&self.rhs)
            .all(|(activity, rhs)| activity <= &(rhs + tol))
    }
}

/// Builds the packing polytope: overlap rows in lexicographic `(x, y)` cell
/// order, then availability rows by piece. With `keep_empty_rows` the row
/// count is exactly `|xs| * |ys| + piece count`, including overlap rows no
/// placement can touch; passing `false` drops those empty rows.
pub fn packing_polytope(
    instance: &Instance,
    grid: &PositionGrid,
    index: &VarIndex,
    keep_empty_rows: bool,
) -> Polytope {
    let n = index.len();
    let cell_rows = grid.xs().len() * grid.ys().len();
    let m = instance.piece_count();
    let mut matrix = SparseMatrix::zero(cell_rows + m, n);

    for j in 0..n {
        let Placement { piece, x, y } = index.placement(j);
        let shape = &instance.pieces[piece];
        // Covered grid cells form a contiguous block in each sorted
        // position list.
        let xs = grid.xs();
        let ys = grid.ys();
        let x_lo = xs.partition_point(|&r| r < x);
        let x_hi = xs.partition_point(|&r| r < x + shape.length);
        let y_lo = ys.partition_point(|&s| s < y);
        let y_hi = ys.partition_point(|&s| s < y + shape.width);
        for xi in x_lo..x_hi {
            for yi in y_lo..y_hi {
                debug_assert!(covers(shape, x, y, xs[xi], ys[yi]));
                matrix.push(xi * ys.len() + yi, j, 1.0);
            }
        }
        matrix.push(cell_rows + piece, j, 1.0);
    }

    let mut labels = Vec::with_capacity(cell_rows + m);
    let mut rhs = Vec::with_capacity(cell_rows + m);
    for &x in grid.xs() {
        for &y in grid.ys() {
            labels.push(RowLabel::Overlap { x, y });
            rhs.push(1.0);
        }
    }
    for (piece, shape) in instance.pieces.iter().enumerate() {
        labels.push(RowLabel::Availability { piece });
        rhs.push(shape.max_count as f64);
    }

    let polytope = Polytope { matrix, rhs, labels };
    if keep_empty_rows {
        polytope
    } else {
        drop_empty_rows(polytope)
    }
}

/// Availability-only relaxation: the packing polytope minus its overlap
/// rows. Its feasible set contains the packing polytope's.
pub fn availability_polytope(instance: &Instance, _grid: &PositionGrid, index: &VarIndex) -> Polytope {
    let n = index.len();
    let m = instance.piece_count();
    let mut matrix = SparseMatrix::zero(m, n);
    for j in 0..n {
        matrix.push(index.placement(j).piece, j, 1.0);
    }
    let labels = (0..m).map(|piece| RowLabel::Availability { piece }).collect();
    let rhs = instance.pieces.iter().map(|p| p.max_count as f64).collect();
    Polytope { matrix, rhs, labels }
}

fn drop_empty_rows(polytope: Polytope) -> Polytope {
    let mut used = vec![false; polytope.n_rows()];
    for (row, _, _) in polytope.matrix.entries() {
        used[row] = true;
    }
    let mut remap = vec![usize::MAX; polytope.n_rows()];
    let mut kept = 0;
    for (row, &u) in used.iter().enumerate() {
        if u {
            remap[row] = kept;
            kept += 1;
        }
    }
    let entries: Vec<(usize, usize, f64)> = polytope
        .matrix
        .entries()
        .map(|(row, col, value)| (remap[row], col, value))
        .collect();
    let matrix = SparseMatrix::from_triplets(kept, polytope.n_vars(), &entries)
        .expect("remapped entries stay unique and in range");
    let mut rhs = Vec::with_capacity(kept);
    let mut labels = Vec::with_capacity(kept);
    for row in 0..polytope.rhs.len() {
        if used[row] {
            rhs.push(polytope.rhs[row]);
            labels.push(polytope.labels[row]);
        }
    }
    Polytope { matrix, rhs, labels }
}

/// Per-column piece values: entry `j` is the value of the piece behind
/// column `j`.
pub fn objective_values(instance: &Instance, index: &VarIndex) -> Vec<f64> {
    (0..index.len())
        .map(|j| instance.pieces[index.placement(j).piece].value as f64)
        .collect()
}

/// Model dimensions reported by the benchmark harness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModelStats {
    pub piece_types: usize,
    pub x_positions: usize,
    pub y_positions: usize,
    pub n_vars: usize,
    /// `|xs| * |ys| + piece count`, counting overlap rows nothing touches.
    pub n_rows_raw: usize,
    /// Rows with at least one coefficient.
    pub n_rows_nonzero: usize,
}

pub fn model_stats(instance: &Instance) -> ModelStats {
    let grid = PositionGrid::compute(instance);
    let index = VarIndex::build(&grid);
    let polytope = packing_polytope(instance, &grid, &index, true);
    ModelStats {
        piece_types: instance.piece_count(),
        x_positions: grid.xs().len(),
        y_positions: grid.ys().len(),
        n_vars: index.len(),
        n_rows_raw: polytope.n_rows(),
        n_rows_nonzero: polytope.matrix.nonzero_row_count(),
    }
}

/// An instance compiled into everything the solvers consume: position grid,
/// variable index, both polytopes and the objective. Immutable after
/// construction; safe to share across concurrent solver runs.
#[derive(Clone, Debug)]
pub struct Formulation {
    pub instance: Instance,
    pub grid: PositionGrid,
    pub index: VarIndex,
    /// Overlap + availability rows (empty rows kept).
    pub packing: Polytope,
    /// Availability rows only.
    pub availability: Polytope,
    /// Piece value per column.
    pub values: Vec<f64>,
}

impl Formulation {
    pub fn build(instance: Instance) -> Self {
        let grid = PositionGrid::compute(&instance);
        let index = VarIndex::build(&grid);
        let packing = packing_polytope(&instance, &grid, &index, true);
        let availability = availability_polytope(&instance, &grid, &index);
        let values = objective_values(&instance, &index);
        Formulation {
            instance,
            grid,
            index,
            packing,
            availability,
            values,
        }
    }

    /// Cost vector of the value-maximization LP: minimize `-values . x`.
    pub fn relaxation_cost(&self) -> Vec<f64> {
        self.values.iter().map(|v| -v).collect()
    }

    /// Placements selected by a binary assignment, in column order.
    pub fn placements_from_assignment(&self, assignment: &[bool]) -> Vec<Placement> {
        assert_eq!(assignment.len(), self.index.len());
        assignment
            .iter()
            .enumerate()
            .filter(|&(_, &on)| on)
            .map(|(j, _)| self.index.placement(j))
            .collect()
    }

    /// Total value of a binary assignment.
    pub fn assignment_value(&self, assignment: &[bool]) -> i64 {
        assignment
            .iter()
            .zip(&self.values)
            .filter(|&(&on, _)| on)
            .map(|(_, &v)| v as i64)
            .sum()
    }
}
