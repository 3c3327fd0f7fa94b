//! Shared fixtures and independent reference routines used by the test
//! suites and benchmarks. Nothing here is on the solver path.

use crate::formulation::Formulation;
use crate::io::feasibility_check;
use crate::model::{Instance, Piece};

/// Small deterministic generator (SplitMix64) so fixtures do not depend on
/// an external RNG crate and never change between runs or toolchains.
#[derive(Clone, Debug)]
pub struct TestRng(u64);

impl TestRng {
    pub fn new(seed: u64) -> Self {
        TestRng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform integer in `[lo, hi]` (inclusive).
    pub fn int_in(&mut self, lo: u32, hi: u32) -> u32 {
        debug_assert!(lo <= hi);
        let span = (hi - lo) as u64 + 1;
        lo + (self.next_u64() % span) as u32
    }

    /// Uniform float in `(0, 1)`.
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }
}

/// 4x4 stock, two piece types: 2x4 worth 9 (two copies allowed) and 4x2
/// worth 8 (one copy). Optimum 18 = two copies of the first piece.
pub fn t1() -> Instance {
    Instance::new(
        "T1",
        4,
        4,
        vec![Piece::new(2, 4, 9, 2), Piece::new(4, 2, 8, 1)],
    )
}

/// One piece that exactly fills the stock.
pub fn full_stock(value: u32) -> Instance {
    Instance::new("full", 6, 4, vec![Piece::new(6, 4, value, 1)])
}

/// Draws a random instance with `1..=max_pieces` piece types. Piece
/// dimensions never exceed the stock, so every piece generates variables.
pub fn random_instance(
    rng: &mut TestRng,
    max_length: u32,
    max_width: u32,
    max_pieces: u32,
    max_count: u32,
) -> Instance {
    let stock_length = rng.int_in(2, max_length);
    let stock_width = rng.int_in(2, max_width);
    let m = rng.int_in(1, max_pieces);
    let pieces = (0..m)
        .map(|_| {
            Piece::new(
                rng.int_in(1, stock_length),
                rng.int_in(1, stock_width),
                rng.int_in(1, 20),
                rng.int_in(1, max_count),
            )
        })
        .collect();
    Instance::new("random", stock_length, stock_width, pieces)
}

/// Like [`random_instance`], retrying until the variable count is between 1
/// and `max_vars`. Panics if no such instance is found in a reasonable
/// number of draws (loosen the caps instead).
pub fn random_formulation_capped(
    rng: &mut TestRng,
    max_length: u32,
    max_width: u32,
    max_pieces: u32,
    max_count: u32,
    max_vars: usize,
) -> Formulation {
    for _ in 0..10_000 {
        let instance = random_instance(rng, max_length, max_width, max_pieces, max_count);
        let form = Formulation::build(instance);
        if form.index.len() <= max_vars && !form.index.is_empty() {
            return form;
        }
    }
    panic!("could not draw an instance with at most {} variables", max_vars);
}

/// Independent oracle for the position sets: exhaustively enumerates the
/// non-negative integer combinations of `extents` up to the cap, without the
/// reachability recurrence used by the production code. Only sensible for
/// small stocks.
pub fn enumerate_positions_reference(extents: &[u32], stock: u32) -> Vec<u32> {
    let min_extent = extents.iter().copied().min().unwrap_or(0);
    if min_extent > stock {
        return vec![0];
    }
    let cap = stock - min_extent;

    // Depth-first over multiplicity vectors, bounded per piece by the cap.
    fn recurse(extents: &[u32], cap: u32, sum: u32, found: &mut Vec<u32>) {
        match extents.split_first() {
            None => found.push(sum),
            Some((&e, rest)) => {
                let mut total = sum;
                loop {
                    recurse(rest, cap, total, found);
                    if e == 0 || total + e > cap {
                        break;
                    }
                    total += e;
                }
            }
        }
    }

    let mut found = vec![0u32];
    recurse(extents, cap, 0, &mut found);
    found.sort_unstable();
    found.dedup();
    found
}

/// Every binary assignment over the formulation's columns that is
/// geometrically feasible, in lexicographic column order. Exponential in the
/// variable count; callers keep instances tiny.
pub fn feasible_binary_points(form: &Formulation) -> Vec<Vec<bool>> {
    let n = form.index.len();
    assert!(n <= 22, "too many variables for exhaustive enumeration");
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << n) {
        let assignment: Vec<bool> = (0..n).map(|j| mask >> j & 1 == 1).collect();
        let placements = form.placements_from_assignment(&assignment);
        if feasibility_check(&form.instance, &placements).is_ok() {
            out.push(assignment);
        }
    }
    out
}

/// Total value of a binary assignment.
pub fn assignment_value(form: &Formulation, assignment: &[bool]) -> i64 {
    assignment
        .iter()
        .enumerate()
        .filter(|&(_, &on)| on)
        .map(|(j, _)| form.instance.pieces[form.index.placement(j).piece].value as i64)
        .sum()
}

/// Binary assignment as a 0.0/1.0 vector.
pub fn assignment_to_f64(assignment: &[bool]) -> Vec<f64> {
    assignment.iter().map(|&b| if b { 1.0 } else { 0.0 }).collect()
}
