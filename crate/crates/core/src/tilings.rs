//! Monomino/domino tilings, the parity involution, partitions in a box, and
//! the lattice-path fixed point counts.
//!
//! A row of `n` squares has `F_{n+1}` tilings by monominos and dominos, which
//! makes tilings the combinatorial home of Fibonacci parity: the involution
//! [`iota`] pairs tilings two by two, leaving one fixed point when
//! `n mod 3` is 0 or 1 and none when it is 2. Extended to pairs of tiled
//! partition diagrams it yields `C_F(n,k) mod 2` as a count of lattice-path
//! fixed points ([`lattice_fixed_points`]).

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::exact;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tile {
    Monomino,
    Domino,
}

impl Tile {
    pub fn size(self) -> u64 {
        match self {
            Tile::Monomino => 1,
            Tile::Domino => 2,
        }
    }
}

/// A tiling of a row of squares; its length is the sum of its tile sizes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tiling {
    tiles: Vec<Tile>,
}

impl Tiling {
    pub fn new(tiles: Vec<Tile>) -> Self {
        Tiling { tiles }
    }

    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }

    pub fn length(&self) -> u64 {
        self.tiles.iter().map(|t| t.size()).sum()
    }

    pub fn starts_with_domino(&self) -> bool {
        self.tiles.first() == Some(&Tile::Domino)
    }
}

/// All tilings of a row of `n` squares, each exactly once. There are
/// `F_{n+1}` of them.
pub fn enumerate_tilings(n: u64) -> Vec<Tiling> {
    let mut result = Vec::new();
    let mut partial = Vec::new();
    extend_tilings(n, &mut partial, &mut result);
    result
}

fn extend_tilings(remaining: u64, partial: &mut Vec<Tile>, out: &mut Vec<Tiling>) {
    if remaining == 0 {
        out.push(Tiling::new(partial.clone()));
        return;
    }
    partial.push(Tile::Monomino);
    extend_tilings(remaining - 1, partial, out);
    partial.pop();
    if remaining >= 2 {
        partial.push(Tile::Domino);
        extend_tilings(remaining - 2, partial, out);
        partial.pop();
    }
}

/// All tilings of `n` squares whose first tile is a domino (empty for
/// `n < 2`). There are `F_{n-1}` of them.
pub fn enumerate_tilings_with_leading_domino(n: u64) -> Vec<Tiling> {
    if n < 2 {
        return Vec::new();
    }
    enumerate_tilings(n - 2)
        .into_iter()
        .map(|t| {
            let mut tiles = vec![Tile::Domino];
            tiles.extend_from_slice(t.tiles());
            Tiling::new(tiles)
        })
        .collect()
}

/// The parity involution on tilings.
///
/// Scan blocks of three squares left to right. At the first block that is not
/// monomino-then-domino, swap the two monominos or the domino occupying its
/// first two squares and stop. If every block is monomino-then-domino and
/// fewer than two squares remain, the tiling is a fixed point. Fixed points
/// exist (and are then unique) exactly when `length mod 3` is 0 or 1.
pub fn iota(t: &Tiling) -> Tiling {
    let tiles = t.tiles();
    let mut i = 0;
    // skip leading monomino-domino blocks
    while i + 1 < tiles.len() && tiles[i] == Tile::Monomino && tiles[i + 1] == Tile::Domino {
        i += 2;
    }
    let mut swapped = tiles[..i].to_vec();
    match tiles.get(i) {
        None => return t.clone(), // remainder 0
        Some(Tile::Domino) => {
            swapped.push(Tile::Monomino);
            swapped.push(Tile::Monomino);
            swapped.extend_from_slice(&tiles[i + 1..]);
        }
        Some(Tile::Monomino) => {
            if i + 1 >= tiles.len() {
                return t.clone(); // remainder 1
            }
            debug_assert_eq!(tiles[i + 1], Tile::Monomino);
            swapped.push(Tile::Domino);
            swapped.extend_from_slice(&tiles[i + 2..]);
        }
    }
    Tiling::new(swapped)
}

/// An integer partition: weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<u64>,
}

impl Partition {
    /// Panics unless the parts are weakly decreasing and positive.
    pub fn new(parts: Vec<u64>) -> Self {
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]),
            "partition parts must be weakly decreasing"
        );
        assert!(
            parts.iter().all(|&p| p > 0),
            "partition parts must be positive"
        );
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

/// A partition constrained to fit in a `rows x cols` rectangle.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoxedPartition {
    partition: Partition,
    rows: u64,
    cols: u64,
}

impl BoxedPartition {
    /// Panics unless the partition has at most `rows` parts, each at most
    /// `cols`.
    pub fn new(partition: Partition, rows: u64, cols: u64) -> Self {
        assert!(
            partition.len() as u64 <= rows,
            "partition has more parts than box rows"
        );
        assert!(
            partition.parts().iter().all(|&p| p <= cols),
            "partition part exceeds box columns"
        );
        BoxedPartition {
            partition,
            rows,
            cols,
        }
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn rows(&self) -> u64 {
        self.rows
    }

    pub fn cols(&self) -> u64 {
        self.cols
    }
}

/// All partitions (including the empty one) fitting in a `rows x cols` box.
/// There are `C(rows + cols, rows)` of them.
pub fn enumerate_partitions_in_box(rows: u64, cols: u64) -> Vec<BoxedPartition> {
    let mut out = Vec::new();
    let mut parts = Vec::new();
    fn rec(rows_left: u64, max_part: u64, parts: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        out.push(parts.clone());
        if rows_left == 0 {
            return;
        }
        for next in (1..=max_part).rev() {
            parts.push(next);
            rec(rows_left - 1, next, parts, out);
            parts.pop();
        }
    }
    let mut raw = Vec::new();
    rec(rows, cols, &mut parts, &mut raw);
    for parts in raw {
        out.push(BoxedPartition::new(Partition::new(parts), rows, cols));
    }
    out
}

/// The complementary partition: column lengths of the box minus the
/// partition, weakly decreasing.
pub fn complement(bp: &BoxedPartition) -> Partition {
    let mut cols = Vec::new();
    for j in 1..=bp.cols() {
        // rows whose part leaves column j uncovered
        let covered = bp.partition().parts().iter().filter(|&&p| p >= j).count() as u64;
        let length = bp.rows() - covered;
        if length > 0 {
            cols.push(length);
        }
    }
    cols.reverse();
    Partition::new(cols)
}

/// `|T_lambda| * |D_lambda*|`: tilings of the rows of the partition times
/// tilings of the complement's columns that each start with a domino.
///
/// A row of length `p` has `F_{p+1}` tilings; a column of length `q` with a
/// forced leading domino has `F_{q-1}` (zero for `q = 1`, since `F_0 = 0`).
pub fn count_weighted(bp: &BoxedPartition) -> BigUint {
    let mut product = BigUint::one();
    for &part in bp.partition().parts() {
        product *= exact::fib(part + 1);
    }
    for &part in complement(bp).parts() {
        product *= exact::fib(part - 1);
    }
    product
}

/// The Sagan-Savage count: the weighted sum over all partitions in the
/// `k x (n-k)` box. Equals `C_F(n, k)`.
pub fn sagan_savage_count(n: u64, k: u64) -> BigUint {
    assert!(k <= n);
    enumerate_partitions_in_box(k, n - k)
        .iter()
        .map(count_weighted)
        .sum()
}

/// A tiling of a boxed partition: one row tiling per part, one column tiling
/// per complement part, every column tiling starting with a domino.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RectTiling {
    row_tilings: Vec<Tiling>,
    col_tilings: Vec<Tiling>,
}

impl RectTiling {
    pub fn new(row_tilings: Vec<Tiling>, col_tilings: Vec<Tiling>) -> Self {
        assert!(
            col_tilings.iter().all(Tiling::starts_with_domino),
            "every column tiling must start with a domino"
        );
        RectTiling {
            row_tilings,
            col_tilings,
        }
    }

    pub fn row_tilings(&self) -> &[Tiling] {
        &self.row_tilings
    }

    pub fn col_tilings(&self) -> &[Tiling] {
        &self.col_tilings
    }
}

fn cartesian_product(choices: &[Vec<Tiling>]) -> Vec<Vec<Tiling>> {
    let mut out = vec![Vec::new()];
    for options in choices {
        let mut next = Vec::with_capacity(out.len() * options.len());
        for prefix in &out {
            for option in options {
                let mut extended = prefix.clone();
                extended.push(option.clone());
                next.push(extended);
            }
        }
        out = next;
    }
    out
}

/// All tilings of a boxed partition, materialized. Exponential in the box
/// area; meant for small boxes where the product formula can be certified
/// object by object.
pub fn enumerate_rect_tilings(bp: &BoxedPartition) -> Vec<RectTiling> {
    let row_choices: Vec<Vec<Tiling>> = bp
        .partition()
        .parts()
        .iter()
        .map(|&p| enumerate_tilings(p))
        .collect();
    let col_choices: Vec<Vec<Tiling>> = complement(bp)
        .parts()
        .iter()
        .map(|&p| enumerate_tilings_with_leading_domino(p))
        .collect();
    let mut out = Vec::new();
    for rows in cartesian_product(&row_choices) {
        for cols in cartesian_product(&col_choices) {
            out.push(RectTiling::new(rows.clone(), cols));
        }
    }
    out
}

/// The involution extended to tilings of boxed partitions: apply [`iota`] to
/// the rows top to bottom, then to each column's portion above its leading
/// domino, left to right; the first non-fixed component is swapped.
pub fn rect_iota(rt: &RectTiling) -> RectTiling {
    for (i, row) in rt.row_tilings().iter().enumerate() {
        let image = iota(row);
        if &image != row {
            let mut rows = rt.row_tilings().to_vec();
            rows[i] = image;
            return RectTiling::new(rows, rt.col_tilings().to_vec());
        }
    }
    for (j, col) in rt.col_tilings().iter().enumerate() {
        let above = Tiling::new(col.tiles()[1..].to_vec());
        let image = iota(&above);
        if image != above {
            let mut tiles = vec![Tile::Domino];
            tiles.extend_from_slice(image.tiles());
            let mut cols = rt.col_tilings().to_vec();
            cols[j] = Tiling::new(tiles);
            return RectTiling::new(rt.row_tilings().to_vec(), cols);
        }
    }
    rt.clone()
}

/// Number of monotone lattice paths from the origin to `(n-k, k)` whose east
/// steps lie on lines `y = d` with `d = 0, 2 (mod 3)` and whose north steps
/// lie on lines `x = c` with `c = 0, 1 (mod 3)`.
///
/// These are the fixed points of the extended involution, so the count gives
/// `C_F(n, k) mod 2`.
pub fn lattice_fixed_points(n: u64, k: u64) -> BigUint {
    assert!(k <= n);
    let width = (n - k) as usize;
    let height = k as usize;
    let east_allowed = |y: usize| matches!(y % 3, 0 | 2);
    let north_allowed = |x: usize| matches!(x % 3, 0 | 1);
    let mut grid = vec![vec![BigUint::zero(); height + 1]; width + 1];
    grid[0][0] = BigUint::one();
    for x in 0..=width {
        for y in 0..=height {
            if x == 0 && y == 0 {
                continue;
            }
            let mut total = BigUint::zero();
            if x > 0 && east_allowed(y) {
                total += &grid[x - 1][y];
            }
            if y > 0 && north_allowed(x) {
                total += &grid[x][y - 1];
            }
            grid[x][y] = total;
        }
    }
    grid[width][height].clone()
}

/// The closed form the fixed-point count satisfies: 0 when `n = 0` and
/// `k = 1 (mod 3)`; `C(ceil(2n/3), ceil(2k/3))` when `n = 1` and
/// `k = 0 (mod 3)`; `C(floor(2n/3), floor(2k/3))` otherwise.
pub fn lattice_lemma_rhs(n: u64, k: u64) -> BigUint {
    assert!(k <= n);
    let (nr, kr) = (n % 3, k % 3);
    if nr == 0 && kr == 1 {
        BigUint::zero()
    } else if nr == 1 && kr == 0 {
        exact::binomial((2 * n).div_ceil(3), (2 * k).div_ceil(3) as i64)
    } else {
        exact::binomial(2 * n / 3, (2 * k / 3) as i64)
    }
}
