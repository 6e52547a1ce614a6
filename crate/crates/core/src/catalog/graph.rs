use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::algebra::{Arrow, Vertex};
use crate::bimodule::{GenericBimodule, SupportProfile};
use crate::linalg::Matrix;

use super::label::{IndecLabel, Kind};

/// A subgraph of the grid quiver. Every vertex carries a one-dimensional
/// space and every listed arrow acts by `1`; unlisted arrows act by zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ActionGraph {
    pub n: usize,
    pub vertices: BTreeSet<Vertex>,
    pub arrows: BTreeSet<Arrow>,
}

fn arrow(from: (usize, usize), to: (usize, usize)) -> Arrow {
    Arrow {
        from: Vertex::new(from.0, from.1),
        to: Vertex::new(to.0, to.1),
    }
}

impl ActionGraph {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            vertices: BTreeSet::new(),
            arrows: BTreeSet::new(),
        }
    }

    pub fn from_arrows(n: usize, vertices: impl IntoIterator<Item = Vertex>, arrows: impl IntoIterator<Item = Arrow>) -> Self {
        let mut g = Self {
            n,
            vertices: vertices.into_iter().collect(),
            arrows: arrows.into_iter().collect(),
        };
        for a in &g.arrows {
            g.vertices.insert(a.from);
            g.vertices.insert(a.to);
        }
        g
    }

    /// The action graph of a catalog label. The caller checks the label range.
    pub fn of_label(label: IndecLabel, n: usize) -> Self {
        let IndecLabel { kind, t, i, j } = label;
        let mut arrows = Vec::new();
        let vertices = [Vertex::new(i, j)];
        match kind {
            Kind::L => {}
            Kind::V => arrows.push(arrow((i, j), (i + 1, j))),
            Kind::H => arrows.push(arrow((i, j + 1), (i, j))),
            Kind::PI => {
                arrows.push(arrow((i, j + 1), (i, j)));
                arrows.push(arrow((i, j + 1), (i + 1, j + 1)));
                arrows.push(arrow((i, j), (i + 1, j)));
                arrows.push(arrow((i + 1, j + 1), (i + 1, j)));
            }
            Kind::W | Kind::S => {
                // i|j -> i+1|j <- i+1|j+1 -> ... <- i+t|j+t
                for k in 0..t {
                    arrows.push(arrow((i + k, j + k), (i + k + 1, j + k)));
                    arrows.push(arrow((i + k + 1, j + k + 1), (i + k + 1, j + k)));
                }
                if kind == Kind::S {
                    arrows.push(arrow((i + t, j + t), (i + t + 1, j + t)));
                }
            }
            Kind::N | Kind::M => {
                // i|j <- i|j+1 -> i+1|j+1 <- ... -> i+t|j+t <- i+t|j+t+1
                for k in 0..=t {
                    arrows.push(arrow((i + k, j + k + 1), (i + k, j + k)));
                    if k < t {
                        arrows.push(arrow((i + k, j + k + 1), (i + k + 1, j + k + 1)));
                    }
                }
                if kind == Kind::M {
                    arrows.push(arrow((i + t, j + t + 1), (i + t + 1, j + t + 1)));
                }
            }
        }
        Self::from_arrows(n, vertices, arrows)
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.vertices.len()
    }

    /// The bimodule with basis the vertices of the graph.
    pub fn realize(&self) -> GenericBimodule {
        let n = self.n;
        let dims = (1..=n)
            .flat_map(|i| (1..=n).map(move |j| Vertex::new(i, j)))
            .map(|v| usize::from(self.vertices.contains(&v)))
            .collect();
        GenericBimodule::from_fn(n, dims, |_, from, to| {
            let mut m = Matrix::zeros(1, 1);
            if self.arrows.contains(&Arrow { from, to }) {
                m[(0, 0)] = 1.into();
            }
            m
        })
    }

    pub fn in_degree(&self, v: Vertex) -> usize {
        self.arrows.iter().filter(|a| a.to == v).count()
    }

    pub fn out_degree(&self, v: Vertex) -> usize {
        self.arrows.iter().filter(|a| a.from == v).count()
    }

    /// Vertices of in-degree exactly two.
    pub fn valleys(&self) -> usize {
        self.vertices.iter().filter(|&&v| self.in_degree(v) == 2).count()
    }

    pub fn lsupp(&self) -> Vec<usize> {
        self.vertices.iter().map(|v| v.row).collect::<BTreeSet<_>>().into_iter().collect()
    }

    pub fn rsupp(&self) -> Vec<usize> {
        self.vertices.iter().map(|v| v.col).collect::<BTreeSet<_>>().into_iter().collect()
    }

    /// Support profile; the square graph counts as having no valleys.
    pub fn support_profile(&self) -> SupportProfile {
        let valleys = if self.is_square() { 0 } else { self.valleys() };
        SupportProfile::from_supports(self.lsupp(), self.rsupp(), valleys)
    }

    fn is_square(&self) -> bool {
        self.vertices.len() == 4 && self.arrows.len() == 4
    }

    /// Connected components (ignoring orientation), each as its own graph.
    pub fn components(&self) -> Vec<ActionGraph> {
        let mut adj: BTreeMap<Vertex, Vec<Vertex>> = self.vertices.iter().map(|&v| (v, Vec::new())).collect();
        for a in &self.arrows {
            adj.entry(a.from).or_default().push(a.to);
            adj.entry(a.to).or_default().push(a.from);
        }
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in &self.vertices {
            if !seen.insert(start) {
                continue;
            }
            let mut stack = vec![start];
            let mut comp = BTreeSet::from([start]);
            while let Some(v) = stack.pop() {
                for &w in &adj[&v] {
                    if seen.insert(w) {
                        comp.insert(w);
                        stack.push(w);
                    }
                }
            }
            let arrows = self
                .arrows
                .iter()
                .filter(|a| comp.contains(&a.from))
                .copied()
                .collect();
            out.push(ActionGraph {
                n: self.n,
                vertices: comp,
                arrows,
            });
        }
        out
    }

    /// Reflection `r|c -> n+1-c|n+1-r`, which swaps the two actions.
    pub fn involution(&self) -> Self {
        let n = self.n;
        let refl = |v: Vertex| Vertex::new(n + 1 - v.col, n + 1 - v.row);
        Self::from_arrows(
            n,
            self.vertices.iter().map(|&v| refl(v)),
            self.arrows.iter().map(|a| Arrow {
                from: refl(a.from),
                to: refl(a.to),
            }),
        )
    }

    /// Every vertex is a source or a sink, degrees are at most two and the
    /// graph is connected.
    pub fn is_string_shaped(&self) -> bool {
        self.components().len() == 1
            && self.vertices.iter().all(|&v| {
                let (i, o) = (self.in_degree(v), self.out_degree(v));
                i <= 2 && o <= 2 && (i == 0 || o == 0)
            })
    }
}
