//! Left, right and two-sided preorders on the catalog and their cells.
//!
//! `X <=_L Y` when `Y` is a summand of `Z (x) X` for some bimodule `Z`. Since
//! tensoring distributes over direct sums it is enough to let `Z` run over
//! the indecomposables.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Serialize;

use crate::catalog::{Catalog, IndecLabel, Kind, LeftFactor, RightFactor};
use crate::error::{Error, Result};
use crate::tensor::{decompose, tensor, ProductTable};

/// A relation on catalog indices, stored as bit rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    size: usize,
    rows: Vec<Vec<u64>>,
}

impl Relation {
    pub fn empty(size: usize) -> Self {
        Self {
            size,
            rows: vec![vec![0; size.div_ceil(64)]; size],
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn insert(&mut self, a: usize, b: usize) {
        self.rows[a][b / 64] |= 1 << (b % 64);
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.rows[a][b / 64] >> (b % 64) & 1 == 1
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (r, o) in out.rows.iter_mut().zip(&other.rows) {
            for (w, v) in r.iter_mut().zip(o) {
                *w |= v;
            }
        }
        out
    }

    /// Reflexive-transitive closure.
    pub fn closure(&self) -> Self {
        let mut out = self.clone();
        for a in 0..self.size {
            out.insert(a, a);
        }
        for k in 0..self.size {
            let row_k = out.rows[k].clone();
            for a in 0..self.size {
                if out.contains(a, k) {
                    for (w, v) in out.rows[a].iter_mut().zip(&row_k) {
                        *w |= v;
                    }
                }
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        *self == self.closure()
    }

    /// Classes of `a ~ b` iff both `a <= b` and `b <= a`, in order of their
    /// smallest member.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let c = self.closure();
        let mut seen = vec![false; self.size];
        let mut out = Vec::new();
        for a in 0..self.size {
            if seen[a] {
                continue;
            }
            let class: Vec<usize> = (a..self.size).filter(|&b| c.contains(a, b) && c.contains(b, a)).collect();
            for &b in &class {
                seen[b] = true;
            }
            out.push(class);
        }
        out
    }
}

/// `X <=_L Y` iff `Y` is a summand of `Z (x) X` for an indecomposable `Z`.
pub fn left_preorder(table: &ProductTable) -> Relation {
    let size = table.catalog().len();
    let mut rel = Relation::empty(size);
    for z in 0..size {
        for x in 0..size {
            for y in table.get(z, x).labels() {
                rel.insert(x, index(table, y));
            }
        }
    }
    rel
}

/// `X <=_R Y` iff `Y` is a summand of `X (x) Z` for an indecomposable `Z`.
pub fn right_preorder(table: &ProductTable) -> Relation {
    let size = table.catalog().len();
    let mut rel = Relation::empty(size);
    for x in 0..size {
        for z in 0..size {
            for y in table.get(x, z).labels() {
                rel.insert(x, index(table, y));
            }
        }
    }
    rel
}

/// Closure of `<=_L` and `<=_R`: a summand of `Z1 (x) X (x) Z2` is a summand
/// of `Z1 (x) T` for a summand `T` of `X (x) Z2`.
pub fn two_sided_preorder(left: &Relation, right: &Relation) -> Relation {
    left.union(right).closure()
}

/// The two-sided relation from triple products `Z1 (x) X (x) Z2`, each
/// computed and decomposed from scratch. Cubic in the catalog size.
pub fn two_sided_direct(cat: &Catalog) -> Result<Relation> {
    let size = cat.len();
    let mut rel = Relation::empty(size);
    for z1 in 0..size {
        for x in 0..size {
            let zx = tensor(cat.realization(z1), cat.realization(x))?;
            if zx.is_zero() {
                continue;
            }
            for z2 in 0..size {
                let t = tensor(&zx, cat.realization(z2))?;
                for y in decompose(&t, cat)?.labels() {
                    rel.insert(x, cat.index_of(y)?);
                }
            }
        }
    }
    Ok(rel)
}

fn index(table: &ProductTable, l: IndecLabel) -> usize {
    table.catalog().index_of(l).expect("products stay in the catalog")
}

/// Which two-sided cell a label is predicted to lie in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CellKey {
    Ksplit,
    Valleys(usize),
}

impl CellKey {
    pub fn of(l: IndecLabel) -> Self {
        if l.is_ksplit() {
            CellKey::Ksplit
        } else {
            CellKey::Valleys(l.valleys())
        }
    }

    pub fn name(self) -> String {
        match self {
            CellKey::Ksplit => "J_k".into(),
            CellKey::Valleys(v) => format!("J_{v}"),
        }
    }

    /// Position in the predicted chain, top first.
    fn rank(self) -> usize {
        match self {
            CellKey::Ksplit => 0,
            CellKey::Valleys(v) => v + 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum SideKey {
    Right(RightFactor),
    Left(LeftFactor),
    Group(&'static str, usize, usize),
}

/// Predicted left cell: k-split labels by right factor; otherwise
/// `{W, S}` or `{M, N}` together with the right support.
fn predicted_left(l: IndecLabel) -> SideKey {
    match l.kind {
        Kind::L | Kind::V | Kind::H | Kind::PI => SideKey::Right(l.ksplit_factors().expect("k-split").1),
        Kind::W | Kind::S => SideKey::Group("WS", l.rsupp().0, l.rsupp().1),
        Kind::M | Kind::N => SideKey::Group("MN", l.rsupp().0, l.rsupp().1),
    }
}

/// Predicted right cell: k-split labels by left factor; otherwise
/// `{W, N}` or `{M, S}` together with the left support.
fn predicted_right(l: IndecLabel) -> SideKey {
    match l.kind {
        Kind::L | Kind::V | Kind::H | Kind::PI => SideKey::Left(l.ksplit_factors().expect("k-split").0),
        Kind::W | Kind::N => SideKey::Group("WN", l.lsupp().0, l.lsupp().1),
        Kind::M | Kind::S => SideKey::Group("MS", l.lsupp().0, l.lsupp().1),
    }
}

fn partition_by<K: Ord>(labels: &[IndecLabel], key: impl Fn(IndecLabel) -> K) -> BTreeSet<Vec<IndecLabel>> {
    let mut groups: BTreeMap<K, Vec<IndecLabel>> = BTreeMap::new();
    for &l in labels {
        groups.entry(key(l)).or_default().push(l);
    }
    groups.into_values().collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct TwoSidedCell {
    /// `None` if the members do not share a predicted key.
    pub key: Option<CellKey>,
    pub labels: Vec<IndecLabel>,
    pub idempotent: bool,
}

#[derive(Debug, Clone)]
pub struct CellStructure {
    pub n: usize,
    /// Top to bottom in the two-sided order (as far as it is linear).
    pub two_sided: Vec<TwoSidedCell>,
    pub left_cells: Vec<Vec<IndecLabel>>,
    pub right_cells: Vec<Vec<IndecLabel>>,
    /// Whether the two-sided order on cells is total.
    pub linear: bool,
    /// Whether the one-step left (right) relation was already transitive.
    pub left_transitive: bool,
    pub right_transitive: bool,
    pub left: Relation,
    pub right: Relation,
    pub two_sided_relation: Relation,
}

#[derive(Debug, Clone, Serialize)]
pub struct CellCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Whether some `F`, `G`, `H` in the cell have `F` a summand of `G (x) H`.
pub fn is_idempotent_cell(cell: &[IndecLabel], table: &ProductTable) -> bool {
    let members: BTreeSet<IndecLabel> = cell.iter().copied().collect();
    cell.iter().any(|&g| {
        cell.iter()
            .any(|&h| table.get(index(table, g), index(table, h)).labels().any(|f| members.contains(&f)))
    })
}

/// Computes all preorders and cells without checking any prediction.
pub fn compute_cells(table: &ProductTable) -> CellStructure {
    let cat = table.catalog();
    let left = left_preorder(table);
    let right = right_preorder(table);
    let two = two_sided_preorder(&left, &right);
    let to_labels = |c: Vec<usize>| -> Vec<IndecLabel> { c.into_iter().map(|k| cat.label(k)).collect() };

    let mut classes = two.classes();
    // a cell is higher when more cells lie below it
    let below = |c: &Vec<usize>| classes_below(&two, c);
    let mut scored: Vec<(usize, Vec<usize>)> = classes.drain(..).map(|c| (below(&c), c)).collect();
    scored.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let linear = scored.windows(2).all(|w| two.contains(w[1].1[0], w[0].1[0]))
        && scored.iter().enumerate().all(|(k, (b, _))| *b == scored.len() - 1 - k);

    let two_sided = scored
        .into_iter()
        .map(|(_, c)| {
            let labels = to_labels(c);
            let keys: BTreeSet<CellKey> = labels.iter().map(|&l| CellKey::of(l)).collect();
            let idempotent = is_idempotent_cell(&labels, table);
            TwoSidedCell {
                key: (keys.len() == 1).then(|| *keys.iter().next().expect("non-empty")),
                labels,
                idempotent,
            }
        })
        .collect();
    CellStructure {
        n: cat.n(),
        two_sided,
        left_cells: left.classes().into_iter().map(to_labels).collect(),
        right_cells: right.classes().into_iter().map(to_labels).collect(),
        linear,
        left_transitive: left.is_transitive(),
        right_transitive: right.is_transitive(),
        left,
        right,
        two_sided_relation: two,
    }
}

/// Number of other classes strictly below the class of `c`.
fn classes_below(rel: &Relation, c: &[usize]) -> usize {
    let top = c[0];
    let mut reps = BTreeSet::new();
    for b in 0..rel.size() {
        if rel.contains(b, top) && !rel.contains(top, b) {
            // canonical representative: smallest member of b's class
            let rep = (0..rel.size()).find(|&x| rel.contains(x, b) && rel.contains(b, x)).unwrap_or(b);
            reps.insert(rep);
        }
    }
    reps.len()
}

/// Computes the cells and fails if they differ from the predicted structure.
pub fn cells(table: &ProductTable) -> Result<CellStructure> {
    let cs = compute_cells(table);
    let failed: Vec<String> = theorem_checks(&cs, table.catalog())
        .into_iter()
        .filter(|c| !c.passed)
        .map(|c| format!("{}: {}", c.name, c.detail))
        .collect();
    if failed.is_empty() {
        Ok(cs)
    } else {
        Err(Error::CellMismatch(failed.join("; ")))
    }
}

/// Compares a computed cell structure with the predicted one.
pub fn theorem_checks(cs: &CellStructure, cat: &Catalog) -> Vec<CellCheck> {
    let labels = cat.labels();
    let n = cat.n();
    let mut out = Vec::new();
    let mut check = |name: &'static str, passed: bool, detail: String| out.push(CellCheck { name, passed, detail });

    let computed_two: BTreeSet<Vec<IndecLabel>> = cs.two_sided.iter().map(|c| c.labels.clone()).collect();
    let predicted_two = partition_by(labels, CellKey::of);
    check(
        "two-sided cells are J_k and J_0..J_{n-1}",
        computed_two == predicted_two,
        format!("{} computed, {} predicted", computed_two.len(), predicted_two.len()),
    );

    let chain: Vec<Option<CellKey>> = cs.two_sided.iter().map(|c| c.key).collect();
    let mut expected: Vec<Option<CellKey>> = predicted_two.iter().map(|c| Some(CellKey::of(c[0]))).collect();
    expected.sort_by_key(|k| k.map(CellKey::rank));
    check(
        "two-sided order is the chain J_k > J_0 > ... > J_{n-1}",
        cs.linear && chain == expected,
        format!(
            "computed order {:?}",
            chain.iter().map(|k| k.map(CellKey::name).unwrap_or_else(|| "?".into())).collect::<Vec<_>>()
        ),
    );

    let bad_idem: Vec<String> = cs
        .two_sided
        .iter()
        .filter(|c| c.idempotent != (c.key != Some(CellKey::Valleys(0))))
        .map(|c| c.key.map(CellKey::name).unwrap_or_else(|| "?".into()))
        .collect();
    check("every two-sided cell but J_0 is idempotent", bad_idem.is_empty(), bad_idem.join(" "));

    let computed_left: BTreeSet<Vec<IndecLabel>> = cs.left_cells.iter().cloned().collect();
    let predicted_left = partition_by(labels, predicted_left);
    check(
        "left cells: right factor in J_k, {W,S} and {M,N} by right support in J_v",
        computed_left == predicted_left,
        format!("{} computed, {} predicted", computed_left.len(), predicted_left.len()),
    );

    let computed_right: BTreeSet<Vec<IndecLabel>> = cs.right_cells.iter().cloned().collect();
    let predicted_right = partition_by(labels, predicted_right);
    check(
        "right cells: left factor in J_k, {W,N} and {M,S} by left support in J_v",
        computed_right == predicted_right,
        format!("{} computed, {} predicted", computed_right.len(), predicted_right.len()),
    );

    let mut irregular = Vec::new();
    for cell in &cs.two_sided {
        let members: BTreeSet<IndecLabel> = cell.labels.iter().copied().collect();
        let lefts: Vec<&Vec<IndecLabel>> = cs.left_cells.iter().filter(|c| members.contains(&c[0])).collect();
        let rights: Vec<&Vec<IndecLabel>> = cs.right_cells.iter().filter(|c| members.contains(&c[0])).collect();
        for l in &lefts {
            for r in &rights {
                let meet = l.iter().filter(|x| r.contains(x)).count();
                if meet != 1 {
                    irregular.push(format!("{} meets {} in {meet}", l[0], r[0]));
                }
            }
        }
    }
    check(
        "strong regularity |L ∩ R| = 1",
        irregular.is_empty(),
        irregular.into_iter().take(5).collect::<Vec<_>>().join(", "),
    );

    check(
        "one-step left and right relations are transitive",
        cs.left_transitive && cs.right_transitive,
        format!("left {}, right {}", cs.left_transitive, cs.right_transitive),
    );

    let mut mirror_ok = true;
    let refl: Vec<usize> = labels
        .iter()
        .map(|&l| cat.index_of(cat.involution(l).expect("closed under reflection")).expect("in catalog"))
        .collect();
    for a in 0..labels.len() {
        for b in 0..labels.len() {
            if cs.left.contains(a, b) != cs.right.contains(refl[a], refl[b]) {
                mirror_ok = false;
            }
        }
    }
    check("reflection exchanges <=_L and <=_R", mirror_ok, String::new());

    let identity_cell = cs.two_sided.last().map(|c| c.labels.clone()).unwrap_or_default();
    let bottom_ok = n == 1 || identity_cell == vec![IndecLabel::identity(n)];
    check("the bottom cell is the identity alone", bottom_ok, identity_cell.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "));
    out
}

#[derive(Serialize)]
struct TwoSidedRecord {
    cell: String,
    labels: Vec<String>,
    idempotent: bool,
}

#[derive(Serialize)]
pub struct CellReport {
    n: usize,
    two_sided: Vec<TwoSidedRecord>,
    left_cells: Vec<Vec<String>>,
    right_cells: Vec<Vec<String>>,
}

impl CellStructure {
    pub fn report(&self) -> CellReport {
        let names = |c: &[IndecLabel]| c.iter().map(ToString::to_string).collect::<Vec<_>>();
        CellReport {
            n: self.n,
            two_sided: self
                .two_sided
                .iter()
                .map(|c| TwoSidedRecord {
                    cell: c.key.map(CellKey::name).unwrap_or_else(|| "mixed".into()),
                    labels: names(&c.labels),
                    idempotent: c.idempotent,
                })
                .collect(),
            left_cells: self.left_cells.iter().map(|c| names(c)).collect(),
            right_cells: self.right_cells.iter().map(|c| names(c)).collect(),
        }
    }

    /// DOT digraph: two-sided cells as clusters ranked top to bottom, left
    /// cells as nested clusters, right cells as dashed undirected chains.
    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph cells {{");
        let _ = writeln!(s, "  compound=true;\n  rankdir=TB;\n  node [shape=box, fontname=\"monospace\"];");
        for (k, cell) in self.two_sided.iter().enumerate() {
            let name = cell.key.map(CellKey::name).unwrap_or_else(|| "mixed".into());
            let _ = writeln!(s, "  subgraph cluster_{k} {{");
            let _ = writeln!(
                s,
                "    label=\"{name}{}\";",
                if cell.idempotent { "" } else { " (not idempotent)" }
            );
            let members: BTreeSet<IndecLabel> = cell.labels.iter().copied().collect();
            for (m, lc) in self.left_cells.iter().filter(|c| members.contains(&c[0])).enumerate() {
                let _ = writeln!(s, "    subgraph cluster_{k}_{m} {{");
                let _ = writeln!(s, "      label=\"\";\n      style=dashed;");
                for l in lc {
                    let _ = writeln!(s, "      \"{l}\";");
                }
                let _ = writeln!(s, "    }}");
            }
            let _ = writeln!(s, "  }}");
        }
        for rc in &self.right_cells {
            for w in rc.windows(2) {
                let _ = writeln!(s, "  \"{}\" -> \"{}\" [dir=none, style=dashed, constraint=false];", w[0], w[1]);
            }
        }
        for (k, w) in self.two_sided.windows(2).enumerate() {
            let _ = writeln!(
                s,
                "  \"{}\" -> \"{}\" [ltail=cluster_{k}, lhead=cluster_{}];",
                w[0].labels[0],
                w[1].labels[0],
                k + 1
            );
        }
        let _ = writeln!(s, "}}");
        s
    }
}

pub fn export_cells_dot(cs: &CellStructure) -> String {
    cs.to_dot()
}
