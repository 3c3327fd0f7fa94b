//! Problem instances and their position-set discretization.
//!
//! A piece may be cut from the stock with its lower-left corner at any point
//! of the canonical position grid: the x coordinates are the non-negative
//! integer combinations of piece lengths that leave room for at least the
//! shortest piece, and the y coordinates likewise for widths. Restricting
//! placements to this grid loses no optimal solution and keeps the 0-1 model
//! finite.
//!
//! All coordinates, dimensions and values are integers; there is no
//! fractional geometry anywhere in the suite.

/// One rectangular piece type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    /// Extent along the stock length (x axis).
    pub length: u32,
    /// Extent along the stock width (y axis).
    pub width: u32,
    /// Value gained for each copy cut.
    pub value: u32,
    /// Maximum number of copies that may be cut.
    pub max_count: u32,
}

impl Piece {
    pub fn new(length: u32, width: u32, value: u32, max_count: u32) -> Self {
        Piece {
            length,
            width,
            value,
            max_count,
        }
    }
}

/// A cutting problem: the stock rectangle and the available piece types.
///
/// Piece order is significant. It defines the piece index used by
/// placements, variable columns and the file formats.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub name: String,
    pub stock_length: u32,
    pub stock_width: u32,
    pub pieces: Vec<Piece>,
}

impl Instance {
    pub fn new(name: impl Into<String>, stock_length: u32, stock_width: u32, pieces: Vec<Piece>) -> Self {
        Instance {
            name: name.into(),
            stock_length,
            stock_width,
            pieces,
        }
    }

    /// Number of piece types.
    pub fn piece_count(&self) -> usize {
        self.pieces.len()
    }

    /// Structural validation. Returns a report rather than failing so that
    /// callers can show every problem at once.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        if self.stock_length == 0 || self.stock_width == 0 {
            report
                .errors
                .push(format!("non-positive stock dimension {}x{}", self.stock_length, self.stock_width));
        }
        if self.pieces.is_empty() {
            report.errors.push("instance has no pieces".to_string());
        }
        for (i, piece) in self.pieces.iter().enumerate() {
            if piece.length == 0 || piece.width == 0 {
                report.errors.push(format!("piece {} has a non-positive dimension", i + 1));
            }
            if piece.value == 0 {
                report.errors.push(format!("piece {} has a non-positive value", i + 1));
            }
            if piece.max_count == 0 {
                report.errors.push(format!("piece {} has a non-positive availability", i + 1));
            }
            if piece.length > self.stock_length || piece.width > self.stock_width {
                report.warnings.push(format!(
                    "piece {} ({}x{}) does not fit the {}x{} stock and generates no variables",
                    i + 1,
                    piece.length,
                    piece.width,
                    self.stock_length,
                    self.stock_width
                ));
            }
        }
        report
    }
}

/// Outcome of [`Instance::validate`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub errors: Vec<String>,
    pub warnings: Vec<String>,
}

impl ValidationReport {
    /// True when there are no errors (warnings allowed).
    pub fn is_ok(&self) -> bool {
        self.errors.is_empty()
    }
}

/// A placed copy of a piece: lower-left corner at `(x, y)` on the stock.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Placement {
    /// Zero-based piece index into `Instance::pieces`.
    pub piece: usize,
    pub x: u32,
    pub y: u32,
}

impl Placement {
    pub fn new(piece: usize, x: u32, y: u32) -> Self {
        Placement { piece, x, y }
    }
}

/// Does `piece` placed with its lower-left corner at `(x, y)` cover the unit
/// cell whose lower-left corner is `(r, s)`?
///
/// This is the 0/1 coefficient of the non-overlap constraints: cell `(r, s)`
/// is covered exactly when it lies inside `[x, x+length) x [y, y+width)`.
pub fn covers(piece: &Piece, x: u32, y: u32, r: u32, s: u32) -> bool {
    x <= r && r < x + piece.length && y <= s && s < y + piece.width
}

/// The canonical position sets of an instance.
///
/// `xs` holds every x coordinate reachable as a non-negative integer
/// combination of piece lengths, capped at `L - min(length)`; `ys` is the
/// analogue for widths. The per-piece lists keep only the positions where
/// the piece still fits inside the stock. Position `0` is always present
/// (the all-zero combination).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositionGrid {
    xs: Vec<u32>,
    ys: Vec<u32>,
    piece_xs: Vec<Vec<u32>>,
    piece_ys: Vec<Vec<u32>>,
}

impl PositionGrid {
    /// Builds the grid by boolean reachability over `0..=cap`, which is
    /// O(stock dimension x piece count) and produces the combination sets
    /// exactly.
    pub fn compute(instance: &Instance) -> Self {
        let lengths: Vec<u32> = instance.pieces.iter().map(|p| p.length).collect();
        let widths: Vec<u32> = instance.pieces.iter().map(|p| p.width).collect();
        let xs = reachable_positions(&lengths, instance.stock_length);
        let ys = reachable_positions(&widths, instance.stock_width);
        let piece_xs = instance
            .pieces
            .iter()
            .map(|piece| admissible(&xs, instance.stock_length, piece.length))
            .collect();
        let piece_ys = instance
            .pieces
            .iter()
            .map(|piece| admissible(&ys, instance.stock_width, piece.width))
            .collect();
        PositionGrid {
            xs,
            ys,
            piece_xs,
            piece_ys,
        }
    }

    /// All x cut positions, sorted ascending.
    pub fn xs(&self) -> &[u32] {
        &self.xs
    }

    /// All y cut positions, sorted ascending.
    pub fn ys(&self) -> &[u32] {
        &self.ys
    }

    /// x positions where `piece` fits, sorted ascending.
    pub fn piece_xs(&self, piece: usize) -> &[u32] {
        &self.piece_xs[piece]
    }

    /// y positions where `piece` fits, sorted ascending.
    pub fn piece_ys(&self, piece: usize) -> &[u32] {
        &self.piece_ys[piece]
    }

    pub fn piece_count(&self) -> usize {
        self.piece_xs.len()
    }
}

/// Non-negative integer combinations of `extents` in `[0, stock - min extent]`.
/// Always contains 0. Pieces larger than the stock contribute nothing.
fn reachable_positions(extents: &[u32], stock: u32) -> Vec<u32> {
    let min_extent = extents.iter().copied().min().unwrap_or(0);
    if min_extent > stock {
        return vec![0];
    }
    let cap = (stock - min_extent) as usize;
    let mut reachable = vec![false; cap + 1];
    reachable[0] = true;
    for v in 0..=cap {
        if !reachable[v] {
            continue;
        }
        for &e in extents {
            let next = v + e as usize;
            if e > 0 && next <= cap {
                reachable[next] = true;
            }
        }
    }
    reachable
        .iter()
        .enumerate()
        .filter(|(_, &r)| r)
        .map(|(v, _)| v as u32)
        .collect()
}

fn admissible(positions: &[u32], stock: u32, extent: u32) -> Vec<u32> {
    if extent > stock {
        return Vec::new();
    }
    let cap = stock - extent;
    positions.iter().copied().filter(|&p| p <= cap).collect()
}

/// Bijection between admissible `(piece, x, y)` triples and column indices.
///
/// Columns are ordered lexicographically by piece index, then x, then y, so
/// the layout is deterministic and matches the row construction of the
/// formulation module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarIndex {
    columns: Vec<(usize, u32, u32)>,
}

impl VarIndex {
    pub fn build(grid: &PositionGrid) -> Self {
        let mut columns = Vec::new();
        for piece in 0..grid.piece_count() {
            for &x in grid.piece_xs(piece) {
                for &y in grid.piece_ys(piece) {
                    columns.push((piece, x, y));
                }
            }
        }
        VarIndex { columns }
    }

    /// Total number of variables.
    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// Column index of an admissible triple, `None` if the triple is not on
    /// the grid.
    pub fn column(&self, piece: usize, x: u32, y: u32) -> Option<usize> {
        self.columns.binary_search(&(piece, x, y)).ok()
    }

    /// The `(piece, x, y)` triple behind a column.
    pub fn placement(&self, column: usize) -> Placement {
        let (piece, x, y) = self.columns[column];
        Placement { piece, x, y }
    }

    /// All columns in order.
    pub fn columns(&self) -> impl Iterator<Item = Placement> + '_ {
        self.columns.iter().map(|&(piece, x, y)| Placement { piece, x, y })
    }

    /// Columns belonging to one piece, as a contiguous index range.
    pub fn piece_columns(&self, piece: usize) -> std::ops::Range<usize> {
        let start = self.columns.partition_point(|&(i, _, _)| i < piece);
        let end = self.columns.partition_point(|&(i, _, _)| i <= piece);
        start..end
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::{enumerate_positions_reference, random_instance, t1, TestRng};

    #[test]
    fn validate_t1_is_ok() {
        let report = t1().validate();
        assert!(report.is_ok());
        assert!(report.warnings.is_empty());
    }

    #[test]
    fn validate_oversized_piece_warns() {
        let instance = Instance::new("over", 4, 4, vec![Piece::new(5, 1, 1, 1)]);
        let report = instance.validate();
        assert!(report.is_ok());
        assert_eq!(report.warnings.len(), 1);
        assert!(report.warnings[0].contains("no variables"));
    }

    #[test]
    fn validate_rejects_zero_stock_and_empty_pieces() {
        let instance = Instance::new("bad", 0, 4, vec![]);
        let report = instance.validate();
        assert!(!report.is_ok());
        assert!(report.errors.iter().any(|e| e.contains("stock dimension")));
        assert!(report.errors.iter().any(|e| e.contains("no pieces")));
    }

    #[test]
    fn validate_rejects_zero_piece_fields() {
        let instance = Instance::new("bad", 4, 4, vec![Piece::new(2, 0, 0, 0)]);
        let report = instance.validate();
        assert_eq!(report.errors.len(), 3);
    }

    #[test]
    fn positions_for_lengths_two_three() {
        let instance = Instance::new(
            "lens",
            7,
            1,
            vec![Piece::new(2, 1, 1, 1), Piece::new(3, 1, 1, 1)],
        );
        let grid = PositionGrid::compute(&instance);
        assert_eq!(grid.xs(), &[0, 2, 3, 4, 5]);
    }

    #[test]
    fn positions_t1() {
        let grid = PositionGrid::compute(&t1());
        assert_eq!(grid.xs(), &[0, 2]);
        assert_eq!(grid.ys(), &[0, 2]);
        assert_eq!(grid.piece_xs(0), &[0, 2]);
        assert_eq!(grid.piece_ys(0), &[0]);
        assert_eq!(grid.piece_xs(1), &[0]);
        assert_eq!(grid.piece_ys(1), &[0, 2]);
    }

    #[test]
    fn positions_single_exact_fit() {
        let instance = Instance::new("exact", 5, 3, vec![Piece::new(5, 3, 7, 1)]);
        let grid = PositionGrid::compute(&instance);
        assert_eq!(grid.xs(), &[0]);
        assert_eq!(grid.ys(), &[0]);
        let idx = VarIndex::build(&grid);
        assert_eq!(idx.len(), 1);
    }

    #[test]
    fn positions_all_pieces_oversized() {
        let instance = Instance::new("over", 2, 2, vec![Piece::new(3, 3, 1, 1)]);
        let grid = PositionGrid::compute(&instance);
        assert_eq!(grid.xs(), &[0]);
        assert_eq!(grid.piece_xs(0), &[] as &[u32]);
        assert_eq!(VarIndex::build(&grid).len(), 0);
    }

    #[test]
    fn positions_match_reference_enumeration() {
        let mut rng = TestRng::new(7);
        for _ in 0..40 {
            let instance = random_instance(&mut rng, 30, 30, 3, 3);
            let grid = PositionGrid::compute(&instance);
            let lengths: Vec<u32> = instance.pieces.iter().map(|p| p.length).collect();
            let widths: Vec<u32> = instance.pieces.iter().map(|p| p.width).collect();
            assert_eq!(
                grid.xs(),
                enumerate_positions_reference(&lengths, instance.stock_length),
                "instance {:?}",
                instance
            );
            assert_eq!(
                grid.ys(),
                enumerate_positions_reference(&widths, instance.stock_width)
            );
        }
    }

    #[test]
    fn coverage_coefficient_examples() {
        let instance = t1();
        let a = &instance.pieces[0];
        let b = &instance.pieces[1];
        assert!(covers(a, 0, 0, 0, 0));
        assert!(!covers(a, 0, 0, 2, 0));
        assert!(covers(b, 0, 0, 2, 0));
    }

    #[test]
    fn coverage_matches_cell_geometry() {
        let mut rng = TestRng::new(11);
        for _ in 0..20 {
            let instance = random_instance(&mut rng, 10, 10, 3, 3);
            let grid = PositionGrid::compute(&instance);
            for (i, piece) in instance.pieces.iter().enumerate() {
                for &x in grid.piece_xs(i) {
                    for &y in grid.piece_ys(i) {
                        for &r in grid.xs() {
                            for &s in grid.ys() {
                                // Independent geometric route: enumerate the
                                // cells of the placed rectangle.
                                let mut geometric = false;
                                for cx in x..x + piece.length {
                                    for cy in y..y + piece.width {
                                        if (cx, cy) == (r, s) {
                                            geometric = true;
                                        }
                                    }
                                }
                                assert_eq!(covers(piece, x, y, r, s), geometric);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn var_index_t1() {
        let grid = PositionGrid::compute(&t1());
        let idx = VarIndex::build(&grid);
        assert_eq!(idx.len(), 4);
        let cols: Vec<Placement> = idx.columns().collect();
        assert_eq!(
            cols,
            vec![
                Placement::new(0, 0, 0),
                Placement::new(0, 2, 0),
                Placement::new(1, 0, 0),
                Placement::new(1, 0, 2),
            ]
        );
        assert_eq!(idx.piece_columns(0), 0..2);
        assert_eq!(idx.piece_columns(1), 2..4);
    }

    #[test]
    fn var_index_is_a_bijection() {
        let mut rng = TestRng::new(13);
        for _ in 0..30 {
            let instance = random_instance(&mut rng, 12, 12, 4, 3);
            let grid = PositionGrid::compute(&instance);
            let idx = VarIndex::build(&grid);
            let mut count = 0;
            for piece in 0..instance.piece_count() {
                for &x in grid.piece_xs(piece) {
                    for &y in grid.piece_ys(piece) {
                        let j = idx.column(piece, x, y).expect("admissible triple indexed");
                        assert_eq!(idx.placement(j), Placement::new(piece, x, y));
                        count += 1;
                    }
                }
            }
            assert_eq!(count, idx.len());
            for j in 0..idx.len() {
                let p = idx.placement(j);
                assert_eq!(idx.column(p.piece, p.x, p.y), Some(j));
            }
        }
    }

    #[test]
    fn var_index_rejects_off_grid_triples() {
        let grid = PositionGrid::compute(&t1());
        let idx = VarIndex::build(&grid);
        assert_eq!(idx.column(0, 1, 0), None);
        assert_eq!(idx.column(1, 0, 1), None);
        assert_eq!(idx.column(1, 2, 0), None);
    }
}
