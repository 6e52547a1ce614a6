//! The algebra `A_n`, its enveloping grid quiver, and one-sided modules.
//!
//! `A_n` is the path algebra of `1 -> 2 -> ... -> n` (arrow `alpha_i : i -> i+1`)
//! modulo all paths of length two. Paths compose right to left, so
//! `alpha_i = e_{i+1} alpha_i e_i`. All indices in the public API are 1-based.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Q};

/// A basis path of `A_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Path {
    /// The trivial path `e_i`.
    Idempotent(usize),
    /// The arrow `alpha_i : i -> i+1`.
    Arrow(usize),
}

impl Path {
    pub fn source(self) -> usize {
        match self {
            Path::Idempotent(i) | Path::Arrow(i) => i,
        }
    }

    pub fn target(self) -> usize {
        match self {
            Path::Idempotent(i) => i,
            Path::Arrow(i) => i + 1,
        }
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Path::Idempotent(i) => write!(f, "e{i}"),
            Path::Arrow(i) => write!(f, "a{i}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct AnAlgebra {
    n: usize,
    basis: Vec<Path>,
    // product[a][b] = index of basis[a] * basis[b], or None for zero
    product: Vec<Vec<Option<usize>>>,
}

pub fn build_algebra(n: usize) -> Result<AnAlgebra> {
    if n == 0 {
        return Err(Error::InvalidN { got: 0, min: 1 });
    }
    let mut basis: Vec<Path> = (1..=n).map(Path::Idempotent).collect();
    basis.extend((1..n).map(Path::Arrow));
    let index_of = |p: Path| basis.iter().position(|&b| b == p);
    let product = basis
        .iter()
        .map(|&a| {
            basis
                .iter()
                .map(|&b| {
                    // a * b means "first b, then a"
                    let composable = b.target() == a.source();
                    match (a, b) {
                        _ if !composable => None,
                        (Path::Idempotent(_), p) | (p, Path::Idempotent(_)) => index_of(p),
                        (Path::Arrow(_), Path::Arrow(_)) => None,
                    }
                })
                .collect()
        })
        .collect();
    Ok(AnAlgebra { n, basis, product })
}

impl AnAlgebra {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn index_of(&self, p: Path) -> Option<usize> {
        self.basis.iter().position(|&b| b == p)
    }

    /// Product of two basis paths, `None` meaning zero.
    pub fn mul(&self, a: Path, b: Path) -> Option<Path> {
        let ia = self.index_of(a)?;
        let ib = self.index_of(b)?;
        self.product[ia][ib].map(|k| self.basis[k])
    }

    /// Basis paths of `e_i A e_j` (paths from `j` to `i`).
    pub fn corner(&self, i: usize, j: usize) -> Vec<Path> {
        self.basis
            .iter()
            .copied()
            .filter(|p| p.target() == i && p.source() == j)
            .collect()
    }

    /// Structure constants as a linear map on coordinates: left multiplication by `a`.
    pub fn left_mult_matrix(&self, a: Path) -> Matrix {
        let d = self.dim();
        let ia = self.index_of(a).expect("path in basis");
        let mut m = Matrix::zeros(d, d);
        for ib in 0..d {
            if let Some(k) = self.product[ia][ib] {
                m[(k, ib)] = Q::from_integer(1);
            }
        }
        m
    }

    pub fn right_mult_matrix(&self, a: Path) -> Matrix {
        let d = self.dim();
        let ia = self.index_of(a).expect("path in basis");
        let mut m = Matrix::zeros(d, d);
        for ib in 0..d {
            if let Some(k) = self.product[ib][ia] {
                m[(k, ib)] = Q::from_integer(1);
            }
        }
        m
    }
}

/// A vertex `i|j` of the grid quiver: row `i` is the left index, column `j` the right.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vertex {
    pub row: usize,
    pub col: usize,
}

impl Vertex {
    pub const fn new(row: usize, col: usize) -> Self {
        Self { row, col }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.row, self.col)
    }
}

/// An arrow of the grid quiver. Vertical arrows `i|j -> i+1|j` carry the left
/// action, horizontal arrows `i|j+1 -> i|j` the right action.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Arrow {
    pub from: Vertex,
    pub to: Vertex,
}

impl Arrow {
    pub fn is_vertical(&self) -> bool {
        self.from.col == self.to.col
    }
}

/// The quiver of `A_n (x) A_n^op`.
#[derive(Debug, Clone)]
pub struct GridQuiver {
    pub n: usize,
    pub vertices: Vec<Vertex>,
    pub horizontal: Vec<Arrow>,
    pub vertical: Vec<Arrow>,
}

/// Relations of the grid quiver: paths of length two with equal direction
/// vanish, and every unit square commutes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Relation {
    Zero(Arrow, Arrow),
    Commute([Arrow; 2], [Arrow; 2]),
}

pub fn grid_quiver(n: usize) -> Result<GridQuiver> {
    if n == 0 {
        return Err(Error::InvalidN { got: 0, min: 1 });
    }
    let mut vertices = Vec::with_capacity(n * n);
    let mut horizontal = Vec::new();
    let mut vertical = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            vertices.push(Vertex::new(i, j));
            if j < n {
                horizontal.push(Arrow {
                    from: Vertex::new(i, j + 1),
                    to: Vertex::new(i, j),
                });
            }
            if i < n {
                vertical.push(Arrow {
                    from: Vertex::new(i, j),
                    to: Vertex::new(i + 1, j),
                });
            }
        }
    }
    Ok(GridQuiver {
        n,
        vertices,
        horizontal,
        vertical,
    })
}

impl GridQuiver {
    pub fn arrows(&self) -> impl Iterator<Item = &Arrow> {
        self.horizontal.iter().chain(&self.vertical)
    }

    pub fn contains(&self, v: Vertex) -> bool {
        (1..=self.n).contains(&v.row) && (1..=self.n).contains(&v.col)
    }

    pub fn relations(&self) -> Vec<Relation> {
        let mut rels = Vec::new();
        for a in self.arrows() {
            for b in self.arrows() {
                if a.to == b.from && a.is_vertical() == b.is_vertical() {
                    rels.push(Relation::Zero(*a, *b));
                }
            }
        }
        for i in 1..self.n {
            for j in 1..self.n {
                let top = Vertex::new(i, j + 1);
                let left = Vertex::new(i, j);
                let down = Vertex::new(i + 1, j + 1);
                let corner = Vertex::new(i + 1, j);
                rels.push(Relation::Commute(
                    [Arrow { from: top, to: down }, Arrow { from: down, to: corner }],
                    [Arrow { from: top, to: left }, Arrow { from: left, to: corner }],
                ));
            }
        }
        rels
    }
}

/// A maximal walk in the grid quiver avoiding every relation.
///
/// Consecutive steps alternate between following an arrow and following one
/// backwards, so each interior vertex is a source or a sink.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct MaximalString {
    pub vertices: Vec<Vertex>,
}

impl MaximalString {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Arrows traversed by the walk, in grid orientation.
    pub fn arrows(&self) -> Vec<Arrow> {
        self.vertices
            .windows(2)
            .map(|w| orient(w[0], w[1]).expect("adjacent vertices"))
            .collect()
    }
}

/// Orients a grid edge between two adjacent vertices.
fn orient(a: Vertex, b: Vertex) -> Option<Arrow> {
    let down = |x: Vertex, y: Vertex| x.col == y.col && x.row + 1 == y.row;
    let left = |x: Vertex, y: Vertex| x.row == y.row && x.col == y.col + 1;
    if down(a, b) || left(a, b) {
        Some(Arrow { from: a, to: b })
    } else if down(b, a) || left(b, a) {
        Some(Arrow { from: b, to: a })
    } else {
        None
    }
}

#[derive(Debug, Default)]
struct WalkSearch {
    maximal: BTreeSet<Vec<Vertex>>,
    cyclic: usize,
}

impl WalkSearch {
    fn neighbours(q: &GridQuiver, v: Vertex) -> Vec<(Vertex, bool)> {
        // (neighbour, step follows the arrow direction)
        let mut out = Vec::with_capacity(4);
        if v.row < q.n {
            out.push((Vertex::new(v.row + 1, v.col), true));
        }
        if v.col > 1 {
            out.push((Vertex::new(v.row, v.col - 1), true));
        }
        if v.row > 1 {
            out.push((Vertex::new(v.row - 1, v.col), false));
        }
        if v.col < q.n {
            out.push((Vertex::new(v.row, v.col + 1), false));
        }
        out
    }

    fn extensions(q: &GridQuiver, walk: &[Vertex], last_direct: bool) -> Vec<(Vertex, bool)> {
        let end = *walk.last().expect("non-empty walk");
        let prev = walk.len().checked_sub(2).map(|k| walk[k]);
        Self::neighbours(q, end)
            .into_iter()
            .filter(|&(w, direct)| direct != last_direct && Some(w) != prev)
            .collect()
    }

    fn dfs(&mut self, q: &GridQuiver, walk: &mut Vec<Vertex>, last_direct: bool) {
        let ext = Self::extensions(q, walk, last_direct);
        if ext.is_empty() {
            // maximal at this end; check the other end too
            let mut rev: Vec<Vertex> = walk.clone();
            rev.reverse();
            let first_step_direct = orient(walk[0], walk[1]).map(|a| a.from == walk[0]).unwrap();
            // walking back from the start, the step before walk[0] would have
            // to have the opposite direction of (walk[0] -> walk[1]) read backwards
            let back_last_direct = !first_step_direct;
            if Self::extensions(q, &rev, back_last_direct).is_empty() {
                let canon = if rev < *walk { rev } else { walk.clone() };
                self.maximal.insert(canon);
            }
            return;
        }
        for (w, direct) in ext {
            if walk.contains(&w) {
                self.cyclic += 1;
                continue;
            }
            walk.push(w);
            self.dfs(q, walk, direct);
            walk.pop();
        }
    }

    fn run(q: &GridQuiver) -> Self {
        let mut search = Self::default();
        for &start in &q.vertices {
            for (w, direct) in Self::neighbours(q, start) {
                let mut walk = vec![start, w];
                search.dfs(q, &mut walk, direct);
            }
        }
        search
    }
}

/// Maximal strings by exhaustive depth-first extension of reduced walks.
///
/// Panics if any walk closes up on itself (a band), which would contradict
/// finite representation type.
pub fn maximal_strings(n: usize) -> Vec<MaximalString> {
    if n <= 1 {
        return Vec::new();
    }
    let q = grid_quiver(n).expect("n >= 2");
    let search = WalkSearch::run(&q);
    assert_eq!(search.cyclic, 0, "a reduced walk closed into a band for n = {n}");
    search
        .maximal
        .into_iter()
        .map(|vertices| MaximalString { vertices })
        .collect()
}

/// Number of reduced walks that revisit a vertex. Zero means band-free.
pub fn cyclic_walk_count(n: usize) -> usize {
    if n <= 1 {
        return 0;
    }
    WalkSearch::run(&grid_quiver(n).expect("n >= 2")).cyclic
}

/// Number of string modules: connected substrings of maximal strings, with
/// vertices shared by two maximal strings counted once.
pub fn string_module_count(n: usize) -> u64 {
    if n == 0 {
        return 0;
    }
    let strings = maximal_strings(n);
    let mut total: u64 = strings
        .iter()
        .map(|s| {
            let k = s.len() as u64;
            k * (k + 1) / 2
        })
        .sum();
    let mut occurrences = std::collections::HashMap::new();
    for s in &strings {
        for v in &s.vertices {
            *occurrences.entry(*v).or_insert(0u64) += 1;
        }
    }
    for i in 1..=n {
        for j in 1..=n {
            match occurrences.get(&Vertex::new(i, j)).copied().unwrap_or(0) {
                0 => total += 1,
                c => total -= c - 1,
            }
        }
    }
    total
}

/// A finite-dimensional left `A_n`-module, graded by vertex.
///
/// `maps[i]` is the action of `alpha_{i+1}`, from vertex `i+1` to `i+2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeftModule {
    pub n: usize,
    pub dims: Vec<usize>,
    pub maps: Vec<Matrix>,
}

/// A finite-dimensional right `A_n`-module, graded by vertex.
///
/// `maps[j]` is the action of `alpha_{j+1}`, from vertex `j+2` to `j+1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RightModule {
    pub n: usize,
    pub dims: Vec<usize>,
    pub maps: Vec<Matrix>,
}

impl LeftModule {
    fn uniserial(n: usize, top: usize, length: usize) -> Self {
        let mut dims = vec![0; n];
        for k in top..top + length {
            dims[k - 1] = 1;
        }
        let maps = (0..n.saturating_sub(1))
            .map(|i| {
                let mut m = Matrix::zeros(dims[i + 1], dims[i]);
                if dims[i] == 1 && dims[i + 1] == 1 {
                    m[(0, 0)] = Q::from_integer(1);
                }
                m
            })
            .collect();
        Self { n, dims, maps }
    }

    /// The simple module `L_i`.
    pub fn simple(n: usize, i: usize) -> Self {
        assert!((1..=n).contains(&i));
        Self::uniserial(n, i, 1)
    }

    /// The indecomposable projective `P_i = A e_i`.
    pub fn projective(n: usize, i: usize) -> Self {
        assert!((1..=n).contains(&i));
        Self::uniserial(n, i, if i < n { 2 } else { 1 })
    }

    /// The indecomposable injective `I_i`, the envelope of `L_i`.
    pub fn injective(n: usize, i: usize) -> Self {
        assert!((1..=n).contains(&i));
        if i > 1 {
            Self::uniserial(n, i - 1, 2)
        } else {
            Self::uniserial(n, 1, 1)
        }
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }
}

impl RightModule {
    fn uniserial(n: usize, top: usize, length: usize) -> Self {
        // top is the highest vertex; the arrow maps vertex k+1 down to k
        let mut dims = vec![0; n];
        for k in (top + 1 - length)..=top {
            dims[k - 1] = 1;
        }
        let maps = (0..n.saturating_sub(1))
            .map(|j| {
                let mut m = Matrix::zeros(dims[j], dims[j + 1]);
                if dims[j] == 1 && dims[j + 1] == 1 {
                    m[(0, 0)] = Q::from_integer(1);
                }
                m
            })
            .collect();
        Self { n, dims, maps }
    }

    /// The simple right module at vertex `j`.
    pub fn simple(n: usize, j: usize) -> Self {
        assert!((1..=n).contains(&j));
        Self::uniserial(n, j, 1)
    }

    /// The indecomposable projective right module `e_j A`.
    pub fn projective(n: usize, j: usize) -> Self {
        assert!((1..=n).contains(&j));
        Self::uniserial(n, j, if j > 1 { 2 } else { 1 })
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algebra_dimensions() {
        assert!(build_algebra(0).is_err());
        assert_eq!(build_algebra(1).unwrap().dim(), 1);
        let a2 = build_algebra(2).unwrap();
        assert_eq!(a2.dim(), 3);
        assert_eq!(a2.mul(Path::Idempotent(2), Path::Arrow(1)), Some(Path::Arrow(1)));
        assert_eq!(a2.mul(Path::Idempotent(1), Path::Arrow(1)), None);
        assert_eq!(a2.mul(Path::Arrow(1), Path::Idempotent(1)), Some(Path::Arrow(1)));
        let a4 = build_algebra(4).unwrap();
        assert_eq!(a4.dim(), 7);
        assert_eq!(a4.mul(Path::Arrow(2), Path::Arrow(1)), None);
    }

    #[test]
    fn algebra_invariants_hold() {
        for n in 1..=6 {
            let a = build_algebra(n).unwrap();
            assert_eq!(a.dim(), 2 * n - 1);
            for i in 1..=n {
                for j in 1..=n {
                    let p = a.mul(Path::Idempotent(i), Path::Idempotent(j));
                    assert_eq!(p, (i == j).then_some(Path::Idempotent(i)));
                }
            }
            for i in 1..n {
                for j in 1..n {
                    assert_eq!(a.mul(Path::Arrow(j), Path::Arrow(i)), None);
                }
                for j in 1..=n {
                    let left = a.mul(Path::Idempotent(j), Path::Arrow(i));
                    assert_eq!(left.is_some(), j == i + 1);
                    let right = a.mul(Path::Arrow(i), Path::Idempotent(j));
                    assert_eq!(right.is_some(), j == i);
                }
            }
        }
    }

    #[test]
    fn multiplication_is_associative() {
        let a = build_algebra(4).unwrap();
        for &x in a.basis() {
            for &y in a.basis() {
                for &z in a.basis() {
                    let l = a.mul(x, y).and_then(|xy| a.mul(xy, z));
                    let r = a.mul(y, z).and_then(|yz| a.mul(x, yz));
                    assert_eq!(l, r);
                }
            }
        }
    }

    #[test]
    fn grid_counts() {
        assert!(grid_quiver(0).is_err());
        for (n, v, h) in [(1, 1, 0), (2, 4, 2), (3, 9, 6)] {
            let g = grid_quiver(n).unwrap();
            assert_eq!(g.vertices.len(), v);
            assert_eq!(g.horizontal.len(), h);
            assert_eq!(g.vertical.len(), h);
        }
        // two zero relations per interior vertex and direction, one square per cell
        let g = grid_quiver(3).unwrap();
        let rels = g.relations();
        let squares = rels.iter().filter(|r| matches!(r, Relation::Commute(..))).count();
        assert_eq!(squares, 4);
    }

    #[test]
    fn small_maximal_strings() {
        assert!(maximal_strings(1).is_empty());
        let s2 = maximal_strings(2);
        assert_eq!(s2.len(), 2);
        assert!(s2.iter().all(|s| s.len() == 3));
        let mut lens: Vec<usize> = maximal_strings(3).iter().map(MaximalString::len).collect();
        lens.sort();
        assert_eq!(lens, vec![3, 3, 5, 5]);
        let s4 = maximal_strings(4);
        assert_eq!(s4.len(), 6);
        assert_eq!(s4.iter().map(MaximalString::len).max(), Some(7));
    }

    #[test]
    fn string_counts() {
        assert_eq!(string_module_count(1), 1);
        assert_eq!(string_module_count(2), 10);
        assert_eq!(string_module_count(3), 35);
    }

    #[test]
    fn one_sided_modules() {
        let p1 = LeftModule::projective(3, 1);
        assert_eq!(p1.dims, vec![1, 1, 0]);
        assert_eq!(LeftModule::projective(3, 3).dim(), 1);
        assert_eq!(LeftModule::injective(3, 2), LeftModule::projective(3, 1));
        assert_eq!(LeftModule::injective(3, 1), LeftModule::simple(3, 1));
        let e2a = RightModule::projective(3, 2);
        assert_eq!(e2a.dims, vec![1, 1, 0]);
        assert_eq!(RightModule::projective(3, 1).dim(), 1);
    }
}
