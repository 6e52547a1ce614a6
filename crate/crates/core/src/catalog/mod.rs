//! The indecomposable bimodules: names, action graphs, realizations, and the
//! hom-dimension matrix used to recognise them.

mod graph;
mod label;

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::algebra::Vertex;
use crate::bimodule::GenericBimodule;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Q};

pub use graph::ActionGraph;
pub use label::{count_formula, IndecLabel, Kind, LeftFactor, RightFactor};

/// Realizes a label as an action graph and the corresponding bimodule.
pub fn realize(label: IndecLabel, n: usize) -> Result<(ActionGraph, GenericBimodule)> {
    label.check(n)?;
    let g = ActionGraph::of_label(label, n);
    let x = g.realize();
    Ok((g, x))
}

/// Builds the catalog for `n`.
pub fn enumerate(n: usize) -> Result<Catalog> {
    Catalog::build(n)
}

#[derive(Debug, Clone)]
enum Solver {
    /// `order` lists labels so that `H[a][b] != 0` implies `a` precedes `b`;
    /// `rows[a]` holds the off-diagonal entries of row `a`.
    Triangular { order: Vec<usize>, rows: Vec<Vec<(usize, i64)>> },
    Dense(Matrix),
}

#[derive(Debug, Clone)]
pub struct Catalog {
    n: usize,
    labels: Vec<IndecLabel>,
    index: HashMap<IndecLabel, usize>,
    graphs: Vec<ActionGraph>,
    realizations: Vec<GenericBimodule>,
    // vertex bitsets, bit (i-1)*n + (j-1)
    masks: Vec<u128>,
    hom: Vec<u32>,
    solver: Solver,
    by_graph: HashMap<ActionGraph, usize>,
    by_dims: HashMap<Vec<usize>, Vec<usize>>,
    hash: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct LabelRecord {
    pub label: String,
    pub kind: Kind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    pub i: usize,
    pub j: usize,
    pub dim: usize,
    pub lsupp: Vec<usize>,
    pub rsupp: Vec<usize>,
    pub valleys: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogReport {
    pub n: usize,
    pub count: usize,
    pub formula: usize,
    pub labels: Vec<LabelRecord>,
}

pub(crate) fn support_mask(x: &GenericBimodule) -> u128 {
    let n = x.n();
    let mut m = 0u128;
    for (k, &d) in x.graded_dims().iter().enumerate() {
        if d > 0 {
            m |= 1 << k;
        }
        debug_assert!(k < n * n);
    }
    m
}

impl Catalog {
    pub fn build(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidN { got: 0, min: 1 });
        }
        if n > 11 {
            // vertex bitsets are u128
            return Err(Error::CatalogCheck(format!("n = {n} is beyond the supported range (at most 11)")));
        }
        let labels = IndecLabel::all(n);
        if labels.len() != count_formula(n) {
            return Err(Error::CatalogCheck(format!(
                "enumerated {} labels, formula gives {}",
                labels.len(),
                count_formula(n)
            )));
        }
        let index: HashMap<_, _> = labels.iter().enumerate().map(|(k, &l)| (l, k)).collect();
        let graphs: Vec<ActionGraph> = labels.iter().map(|&l| ActionGraph::of_label(l, n)).collect();
        let realizations: Vec<GenericBimodule> = graphs.iter().map(ActionGraph::realize).collect();
        let masks: Vec<u128> = realizations.iter().map(support_mask).collect();
        let by_graph: HashMap<_, _> = graphs.iter().cloned().enumerate().map(|(k, g)| (g, k)).collect();
        if by_graph.len() != labels.len() {
            return Err(Error::CatalogCheck("two labels share an action graph".into()));
        }
        let mut by_dims: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
        for (k, x) in realizations.iter().enumerate() {
            by_dims.entry(x.graded_dims().to_vec()).or_default().push(k);
        }

        let size = labels.len();
        let mut hom = vec![0u32; size * size];
        for a in 0..size {
            for b in 0..size {
                if masks[a] & masks[b] != 0 {
                    hom[a * size + b] = realizations[a].hom_dim(&realizations[b])? as u32;
                }
            }
        }
        for a in 0..size {
            if hom[a * size + a] != 1 {
                return Err(Error::CatalogCheck(format!(
                    "{} has a {}-dimensional endomorphism ring",
                    labels[a],
                    hom[a * size + a]
                )));
            }
        }
        let solver = Self::make_solver(size, &hom)?;
        let mut hasher = Sha256::new();
        hasher.update(format!("n={n};"));
        for l in &labels {
            hasher.update(format!("{l};"));
        }
        let hash = hasher.finalize().iter().map(|b| format!("{b:02x}")).collect();
        Ok(Self {
            n,
            labels,
            index,
            graphs,
            realizations,
            masks,
            hom,
            solver,
            by_graph,
            by_dims,
            hash,
        })
    }

    fn make_solver(size: usize, hom: &[u32]) -> Result<Solver> {
        // Kahn's algorithm on the relation "non-zero map a -> b"
        let mut indeg = vec![0usize; size];
        for a in 0..size {
            for b in 0..size {
                if a != b && hom[a * size + b] != 0 {
                    indeg[b] += 1;
                }
            }
        }
        let mut ready: BTreeSet<usize> = (0..size).filter(|&b| indeg[b] == 0).collect();
        let mut order = Vec::with_capacity(size);
        while let Some(a) = ready.pop_first() {
            order.push(a);
            for b in 0..size {
                if a != b && hom[a * size + b] != 0 {
                    indeg[b] -= 1;
                    if indeg[b] == 0 {
                        ready.insert(b);
                    }
                }
            }
        }
        if order.len() == size {
            let rows = (0..size)
                .map(|a| {
                    (0..size)
                        .filter(|&b| b != a && hom[a * size + b] != 0)
                        .map(|b| (b, hom[a * size + b] as i64))
                        .collect()
                })
                .collect();
            return Ok(Solver::Triangular { order, rows });
        }
        let h = Matrix::from_fn(size, size, |a, b| Q::from_integer(hom[a * size + b] as i64));
        h.inverse()
            .map(Solver::Dense)
            .ok_or_else(|| Error::CatalogCheck("the hom-dimension matrix is singular".into()))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[IndecLabel] {
        &self.labels
    }

    pub fn label(&self, k: usize) -> IndecLabel {
        self.labels[k]
    }

    pub fn index_of(&self, label: IndecLabel) -> Result<usize> {
        self.index
            .get(&label)
            .copied()
            .ok_or(Error::LabelOutOfRange { label, n: self.n })
    }

    pub fn graph(&self, k: usize) -> &ActionGraph {
        &self.graphs[k]
    }

    pub fn realization(&self, k: usize) -> &GenericBimodule {
        &self.realizations[k]
    }

    pub fn realize(&self, label: IndecLabel) -> Result<&GenericBimodule> {
        Ok(&self.realizations[self.index_of(label)?])
    }

    /// `dim Hom(Z_a, Z_b)`.
    pub fn hom_entry(&self, a: usize, b: usize) -> u32 {
        self.hom[a * self.len() + b]
    }

    /// Whether the hom-dimension matrix is unitriangular in some order of the labels.
    pub fn is_directed(&self) -> bool {
        matches!(self.solver, Solver::Triangular { .. })
    }

    /// Hex digest of `n` and the canonical label order.
    pub fn hash(&self) -> &str {
        &self.hash
    }

    /// `h(X)_a = dim Hom(Z_a, X)`, skipping labels whose support misses `X`.
    pub fn fingerprint(&self, x: &GenericBimodule) -> Result<Vec<u32>> {
        if x.n() != self.n {
            return Err(Error::SizeMismatch { left: self.n, right: x.n() });
        }
        let mask = support_mask(x);
        self.realizations
            .iter()
            .zip(&self.masks)
            .map(|(z, &m)| {
                if m & mask == 0 {
                    Ok(0)
                } else {
                    z.hom_dim(x).map(|d| d as u32)
                }
            })
            .collect()
    }

    /// Solves `H m = h`. Returns `None` unless `m` is a non-negative integer vector.
    pub fn multiplicities(&self, h: &[u32]) -> Option<Vec<usize>> {
        let size = self.len();
        let mut m = vec![0i64; size];
        match &self.solver {
            Solver::Triangular { order, rows } => {
                for &a in order.iter().rev() {
                    let mut v = h[a] as i64;
                    for &(b, c) in &rows[a] {
                        v -= c * m[b];
                    }
                    m[a] = v;
                }
            }
            Solver::Dense(inv) => {
                let hq: Vec<Q> = h.iter().map(|&v| Q::from_integer(v as i64)).collect();
                for (a, q) in inv.mul_vec(&hq).into_iter().enumerate() {
                    if !q.is_integer() {
                        return None;
                    }
                    m[a] = q.to_integer();
                }
            }
        }
        m.into_iter().map(|v| usize::try_from(v).ok()).collect()
    }

    /// The label of an indecomposable bimodule, matched by hom fingerprint.
    pub fn identify(&self, x: &GenericBimodule) -> Result<IndecLabel> {
        let candidates = self.by_dims.get(x.graded_dims()).ok_or_else(|| {
            Error::NoMatch("no indecomposable has these graded dimensions".into())
        })?;
        let h = self.fingerprint(x)?;
        let size = self.len();
        candidates
            .iter()
            .copied()
            .find(|&c| (0..size).all(|a| h[a] == self.hom[a * size + c]))
            .map(|c| self.labels[c])
            .ok_or_else(|| Error::NoMatch("hom fingerprint matches no indecomposable".into()))
    }

    /// Label of a connected action graph, by exact graph lookup.
    pub fn label_of_graph(&self, g: &ActionGraph) -> Option<IndecLabel> {
        self.by_graph.get(g).map(|&k| self.labels[k])
    }

    /// The label of the reflected bimodule.
    pub fn involution(&self, label: IndecLabel) -> Result<IndecLabel> {
        let k = self.index_of(label)?;
        let g = self.graphs[k].involution();
        self.label_of_graph(&g)
            .ok_or_else(|| Error::CatalogCheck(format!("reflection of {label} is not in the catalog")))
    }

    /// Support vertices of label `k`.
    pub fn support(&self, k: usize) -> BTreeSet<Vertex> {
        self.graphs[k].vertices.clone()
    }

    pub fn mask(&self, k: usize) -> u128 {
        self.masks[k]
    }

    pub fn report(&self) -> CatalogReport {
        let labels = self
            .labels
            .iter()
            .zip(&self.graphs)
            .map(|(&l, g)| {
                let p = g.support_profile();
                LabelRecord {
                    label: l.to_string(),
                    kind: l.kind,
                    t: (!l.is_ksplit()).then_some(l.t),
                    i: l.i,
                    j: l.j,
                    dim: g.dim(),
                    lsupp: p.lsupp,
                    rsupp: p.rsupp,
                    valleys: l.valleys(),
                }
            })
            .collect();
        CatalogReport {
            n: self.n,
            count: self.len(),
            formula: count_formula(self.n),
            labels,
        }
    }
}
