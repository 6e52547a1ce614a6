//! Tensoring with the generators `W_21^{n-2}`, `N_11^{n-2}`, `S_12^{n-2}`
//! as translations of action graphs followed by a cut.
//!
//! The rules are pure graph manipulation; the tensor oracle only appears in
//! [`rule_oracle_sweep`], which compares the two.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::algebra::{Arrow, Vertex};
use crate::bimodule::Side;
use crate::catalog::{ActionGraph, Catalog, IndecLabel};
use crate::error::{Error, Result};
use crate::tensor::{module_pairing, tensor_decomposed, Decomposition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum GeneratorName {
    W21,
    N11,
    S12,
}

impl GeneratorName {
    pub const ALL: [GeneratorName; 3] = [GeneratorName::W21, GeneratorName::N11, GeneratorName::S12];

    /// The catalog label of the generator; needs `n >= 3`.
    pub fn label(self, n: usize) -> Result<IndecLabel> {
        if n < 3 {
            return Err(Error::InvalidN { got: n, min: 3 });
        }
        Ok(match self {
            GeneratorName::W21 => IndecLabel::w(n - 2, 2, 1),
            GeneratorName::N11 => IndecLabel::nn(n - 2, 1, 1),
            GeneratorName::S12 => IndecLabel::s(n - 2, 1, 2),
        })
    }

    pub fn of_label(label: IndecLabel, n: usize) -> Option<Self> {
        Self::ALL.into_iter().find(|g| g.label(n).ok() == Some(label))
    }

    /// Applies the rule for `self (x) X` (`Side::Left`) or `X (x) self` (`Side::Right`).
    pub fn apply(self, x: &ActionGraph, side: Side) -> Result<ActionGraph> {
        match self {
            GeneratorName::W21 => Ok(shift_w21(x, side)),
            GeneratorName::N11 => shift_n11(x, side),
            GeneratorName::S12 => shift_s12(x, side),
        }
    }
}

impl fmt::Display for GeneratorName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GeneratorName::W21 => "W21",
            GeneratorName::N11 => "N11",
            GeneratorName::S12 => "S12",
        };
        f.write_str(s)
    }
}

type Pt = (isize, isize);

/// A translated graph, allowed to stick out of the grid.
struct Shifted {
    n: usize,
    vertices: BTreeSet<Pt>,
    arrows: BTreeSet<(Pt, Pt)>,
}

impl Shifted {
    fn new(g: &ActionGraph, dr: isize, dc: isize) -> Self {
        let mv = |v: &Vertex| (v.row as isize + dr, v.col as isize + dc);
        Self {
            n: g.n,
            vertices: g.vertices.iter().map(mv).collect(),
            arrows: g.arrows.iter().map(|a| (mv(&a.from), mv(&a.to))).collect(),
        }
    }

    fn inside(&self, p: Pt) -> bool {
        let n = self.n as isize;
        (1..=n).contains(&p.0) && (1..=n).contains(&p.1)
    }

    fn keep(&self, removed: &BTreeSet<Pt>) -> ActionGraph {
        let v = |p: Pt| Vertex::new(p.0 as usize, p.1 as usize);
        ActionGraph::from_arrows(
            self.n,
            self.vertices.iter().filter(|p| !removed.contains(p)).map(|&p| v(p)),
            self.arrows
                .iter()
                .filter(|(a, b)| !removed.contains(a) && !removed.contains(b))
                .map(|&(a, b)| Arrow { from: v(a), to: v(b) }),
        )
    }

    fn escaped(&self) -> BTreeSet<Pt> {
        self.vertices.iter().copied().filter(|&p| !self.inside(p)).collect()
    }

    /// Drops the vertices outside the grid and the arrows touching them.
    fn cut(&self) -> ActionGraph {
        self.keep(&self.escaped())
    }

    /// Drops the smallest set containing the escaped vertices and closed under
    /// following arrows.
    fn thick_cut(&self) -> ActionGraph {
        self.keep(&self.thick_closure())
    }

    fn thick_closure(&self) -> BTreeSet<Pt> {
        let mut closed = self.escaped();
        let mut stack: Vec<Pt> = closed.iter().copied().collect();
        while let Some(p) = stack.pop() {
            for &(a, b) in &self.arrows {
                if a == p && closed.insert(b) {
                    stack.push(b);
                }
            }
        }
        closed
    }
}

fn reject_ksplit(x: &ActionGraph) -> Result<()> {
    let square = x.vertices.len() == 4 && x.arrows.len() == 4;
    if x.dim() <= 2 || square {
        let vs: Vec<String> = x.vertices.iter().map(ToString::to_string).collect();
        return Err(Error::KSplitInput(format!("the graph on {{{}}}", vs.join(", "))));
    }
    Ok(())
}

/// `W_21 (x) X` moves the graph one row down; `X (x) W_21` one column left.
/// Whatever leaves the grid is cut off.
pub fn shift_w21(x: &ActionGraph, side: Side) -> ActionGraph {
    match side {
        Side::Left => Shifted::new(x, 1, 0).cut(),
        Side::Right => Shifted::new(x, 0, -1).cut(),
    }
}

/// `N_11 (x) X` moves the graph one row up and cuts. `X (x) N_11` moves it one
/// column right and removes the thick closure of what escaped; when `X e_1` is
/// two-dimensional a new vertex is attached west of the north-west corner.
pub fn shift_n11(x: &ActionGraph, side: Side) -> Result<ActionGraph> {
    reject_ksplit(x)?;
    Ok(match side {
        Side::Left => Shifted::new(x, -1, 0).cut(),
        Side::Right => {
            let mut g = Shifted::new(x, 0, 1).thick_cut();
            let first_column = x.vertices.iter().filter(|v| v.col == 1).count();
            if first_column == 2 {
                if let Some(&nw) = g.vertices.iter().min_by_key(|v| (v.col, v.row)) {
                    let west = Vertex::new(nw.row, nw.col - 1);
                    g.vertices.insert(west);
                    g.arrows.insert(Arrow { from: nw, to: west });
                }
            }
            g
        }
    })
}

/// `S_12 (x) X` moves the graph one row up and removes the thick closure of
/// what escaped; when `e_n X` is two-dimensional a new vertex is attached
/// south of the south-east corner. `X (x) S_12` moves it one column right and cuts.
pub fn shift_s12(x: &ActionGraph, side: Side) -> Result<ActionGraph> {
    reject_ksplit(x)?;
    Ok(match side {
        Side::Left => {
            let mut g = Shifted::new(x, -1, 0).thick_cut();
            let last_row = x.vertices.iter().filter(|v| v.row == x.n).count();
            if last_row == 2 {
                if let Some(&se) = g.vertices.iter().max_by_key(|v| (v.row, v.col)) {
                    let south = Vertex::new(se.row + 1, se.col);
                    g.vertices.insert(south);
                    g.arrows.insert(Arrow { from: se, to: south });
                }
            }
            g
        }
        Side::Right => Shifted::new(x, 0, 1).cut(),
    })
}

/// Reads off the labels of the connected components of a graph.
pub fn graph_decomposition(g: &ActionGraph, cat: &Catalog) -> Result<Decomposition> {
    let mut d = Decomposition::default();
    for c in g.components() {
        let label = cat.label_of_graph(&c).ok_or_else(|| {
            let vs: Vec<String> = c.vertices.iter().map(ToString::to_string).collect();
            Error::NoMatch(format!("component on {{{}}}", vs.join(", ")))
        })?;
        d.add(label, 1);
    }
    Ok(d)
}

/// `(K1 (x) N1) (x)_A (K2 (x) N2) = (K1 (x) N2)^{dim N1 (x)_A K2}`.
pub fn ksplit_tensor(a: IndecLabel, b: IndecLabel, cat: &Catalog) -> Result<Decomposition> {
    let n = cat.n();
    a.check(n)?;
    b.check(n)?;
    let (k1, n1) = a.ksplit_factors()?;
    let (k2, n2) = b.ksplit_factors()?;
    let mult = module_pairing(&n1.module(n), &k2.module(n))?;
    Ok(Decomposition::single(IndecLabel::from_factors(k1, n2)).scaled(mult))
}

/// The product `a (x) b` when a combinatorial rule covers it: the identity,
/// a generator factor (with the hypotheses of its rule), or two k-split factors.
pub fn rule_product(a: IndecLabel, b: IndecLabel, cat: &Catalog) -> Result<Option<Decomposition>> {
    let n = cat.n();
    a.check(n)?;
    b.check(n)?;
    let id = IndecLabel::identity(n);
    if a == id {
        return Ok(Some(Decomposition::single(b)));
    }
    if b == id {
        return Ok(Some(Decomposition::single(a)));
    }
    if a.is_ksplit() && b.is_ksplit() {
        return ksplit_tensor(a, b, cat).map(Some);
    }
    let applies = |g: GeneratorName, other: IndecLabel| g == GeneratorName::W21 || !other.is_ksplit();
    if let Some(g) = GeneratorName::of_label(a, n).filter(|&g| applies(g, b)) {
        let out = g.apply(cat.graph(cat.index_of(b)?), Side::Left)?;
        return graph_decomposition(&out, cat).map(Some);
    }
    if let Some(g) = GeneratorName::of_label(b, n).filter(|&g| applies(g, a)) {
        let out = g.apply(cat.graph(cat.index_of(a)?), Side::Right)?;
        return graph_decomposition(&out, cat).map(Some);
    }
    Ok(None)
}

/// One applicable (generator, side, label) case whose rule output differs
/// from the tensor oracle.
#[derive(Debug, Clone, Serialize)]
pub struct RuleMismatch {
    pub generator: GeneratorName,
    pub left_side: bool,
    pub label: IndecLabel,
    pub rule: String,
    pub oracle: String,
}

/// Compares every rule with the tensor oracle: all labels for `W21`, the
/// non-k-split ones for `N11` and `S12`. Returns the number of cases and the
/// mismatches.
pub fn rule_oracle_sweep(cat: &Catalog) -> Result<(usize, Vec<RuleMismatch>)> {
    let n = cat.n();
    let mut cases = 0;
    let mut bad = Vec::new();
    for g in GeneratorName::ALL {
        let gl = g.label(n)?;
        for side in [Side::Left, Side::Right] {
            for (k, &l) in cat.labels().iter().enumerate() {
                if g != GeneratorName::W21 && l.is_ksplit() {
                    continue;
                }
                cases += 1;
                let rule = g.apply(cat.graph(k), side).and_then(|out| graph_decomposition(&out, cat));
                let oracle = match side {
                    Side::Left => tensor_decomposed(gl, l, cat)?,
                    Side::Right => tensor_decomposed(l, gl, cat)?,
                };
                if rule.as_ref().ok() != Some(&oracle) {
                    bad.push(RuleMismatch {
                        generator: g,
                        left_side: side == Side::Left,
                        label: l,
                        rule: rule.map(|d| d.to_string()).unwrap_or_else(|e| e.to_string()),
                        oracle: oracle.to_string(),
                    });
                }
            }
        }
    }
    Ok((cases, bad))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::enumerate;

    fn graph(cat: &Catalog, l: IndecLabel) -> &ActionGraph {
        cat.graph(cat.index_of(l).unwrap())
    }

    #[test]
    fn w21_examples() {
        for n in 3..=5 {
            let cat = enumerate(n).unwrap();
            let id = graph(&cat, IndecLabel::identity(n));
            let down = shift_w21(id, Side::Left);
            assert_eq!(graph_decomposition(&down, &cat).unwrap(), Decomposition::single(IndecLabel::w(n - 2, 2, 1)));
            assert!(shift_w21(graph(&cat, IndecLabel::l(n, 1)), Side::Left).is_empty());
            let h = shift_w21(graph(&cat, IndecLabel::h(2, 1)), Side::Right);
            assert_eq!(graph_decomposition(&h, &cat).unwrap(), Decomposition::single(IndecLabel::l(2, 1)));
        }
    }

    #[test]
    fn generator_identities() {
        for n in 3..=5 {
            let cat = enumerate(n).unwrap();
            let id = IndecLabel::identity(n);
            for g in GeneratorName::ALL {
                let l = g.label(n).unwrap();
                for side in [Side::Left, Side::Right] {
                    let out = g.apply(graph(&cat, id), side).unwrap();
                    assert!(graph_decomposition(&out, &cat).unwrap().is_single(l), "{g} {side:?}");
                }
            }
        }
    }

    #[test]
    fn ksplit_rejected() {
        let cat = enumerate(3).unwrap();
        for l in [IndecLabel::l(1, 1), IndecLabel::v(1, 2), IndecLabel::pi(1, 1)] {
            assert!(matches!(shift_n11(graph(&cat, l), Side::Left), Err(Error::KSplitInput(_))));
            assert!(shift_s12(graph(&cat, l), Side::Right).is_err());
        }
        assert!(GeneratorName::W21.label(2).is_err());
    }

    #[test]
    fn ksplit_products() {
        let n = 2;
        let cat = enumerate(n).unwrap();
        // (Ae_1 (x) e_2A) (x) (Ae_2 (x) e_1A) is (Ae_1 (x) e_1A) once
        let a = IndecLabel::pi(1, 1);
        let b = IndecLabel::l(2, 1);
        let d = ksplit_tensor(a, b, &cat).unwrap();
        assert!(d.is_single(IndecLabel::v(1, 1)));
        assert_eq!(d, tensor_decomposed(a, b, &cat).unwrap());
        // pairing zero
        assert!(ksplit_tensor(IndecLabel::l(1, 1), IndecLabel::l(2, 2), &cat).unwrap().is_empty());
        assert!(ksplit_tensor(IndecLabel::w(1, 1, 1), b, &cat).is_err());
    }

    #[test]
    fn chain_to_m() {
        for n in 3..=5 {
            let cat = enumerate(n).unwrap();
            let w21 = GeneratorName::W21.label(n).unwrap();
            let n11 = GeneratorName::N11.label(n).unwrap();
            let s12 = GeneratorName::S12.label(n).unwrap();
            let wn = rule_product(w21, n11, &cat).unwrap().unwrap();
            assert!(wn.is_single(IndecLabel::nn(n - 2, 2, 1)), "{wn}");
            let m = rule_product(s12, IndecLabel::nn(n - 2, 2, 1), &cat).unwrap().unwrap();
            assert!(m.is_single(IndecLabel::m(n - 2, 1, 1)), "{m}");
        }
    }
}
