//! Tensor products over `A` by exact linear algebra, and decomposition of
//! arbitrary bimodules into catalog labels.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::sync::OnceLock;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{LeftModule, RightModule, Vertex};
use crate::bimodule::{check_same_n, GenericBimodule, GradedMap, Side};
use crate::catalog::{Catalog, IndecLabel};
use crate::error::{Error, Result};
use crate::linalg::{cokernel, rational_eigenvalues, Matrix, Q};

/// A multiset of catalog labels.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Decomposition {
    parts: BTreeMap<IndecLabel, usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct Part {
    label: String,
    multiplicity: usize,
}

impl Serialize for Decomposition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let parts: Vec<Part> = self
            .parts
            .iter()
            .map(|(l, &m)| Part {
                label: l.to_string(),
                multiplicity: m,
            })
            .collect();
        parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Decomposition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<Part>::deserialize(d)?;
        let mut out = Decomposition::default();
        for p in parts {
            let label = p.label.parse().map_err(serde::de::Error::custom)?;
            out.add(label, p.multiplicity);
        }
        Ok(out)
    }
}

impl Decomposition {
    pub fn single(label: IndecLabel) -> Self {
        let mut d = Self::default();
        d.add(label, 1);
        d
    }

    pub fn add(&mut self, label: IndecLabel, multiplicity: usize) {
        if multiplicity > 0 {
            *self.parts.entry(label).or_default() += multiplicity;
        }
    }

    pub fn merge(&mut self, other: &Decomposition) {
        for (&l, &m) in &other.parts {
            self.add(l, m);
        }
    }

    pub fn scaled(&self, k: usize) -> Self {
        let mut d = Self::default();
        for (&l, &m) in &self.parts {
            d.add(l, m * k);
        }
        d
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn multiplicity(&self, label: IndecLabel) -> usize {
        self.parts.get(&label).copied().unwrap_or(0)
    }

    pub fn contains(&self, label: IndecLabel) -> bool {
        self.parts.contains_key(&label)
    }

    pub fn iter(&self) -> impl Iterator<Item = (IndecLabel, usize)> + '_ {
        self.parts.iter().map(|(&l, &m)| (l, m))
    }

    pub fn labels(&self) -> impl Iterator<Item = IndecLabel> + '_ {
        self.parts.keys().copied()
    }

    pub fn total_dim(&self) -> usize {
        self.iter().map(|(l, m)| l.dim() * m).sum()
    }

    /// Whether the only summand is `label`, once.
    pub fn is_single(&self, label: IndecLabel) -> bool {
        self.parts.len() == 1 && self.multiplicity(label) == 1
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (l, m) in self.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{l} ×{m}")?;
        }
        Ok(())
    }
}

/// `X (x)_A Y`.
pub fn tensor(x: &GenericBimodule, y: &GenericBimodule) -> Result<GenericBimodule> {
    check_same_n(x, y)?;
    let n = x.n();
    let v = Vertex::new;
    // Before the quotient, piece (i, j) is the sum over k of X_ik (x) Y_kj,
    // with the k-th block starting at offsets[piece][k].
    let mut offsets = vec![vec![0usize; n + 1]; n * n];
    let mut raw_dims = vec![0usize; n * n];
    let mut quotients = Vec::with_capacity(n * n);
    for i in 1..=n {
        for j in 1..=n {
            let p = (i - 1) * n + (j - 1);
            let mut total = 0;
            for k in 1..=n {
                offsets[p][k - 1] = total;
                total += x.dim_at(v(i, k)) * y.dim_at(v(k, j));
            }
            offsets[p][n] = total;
            raw_dims[p] = total;
            // x alpha_k (x) y - x (x) alpha_k y, for x in X_{i,k+1}, y in Y_{kj}
            let mut cols: Vec<Vec<Q>> = Vec::new();
            for k in 1..n {
                let (dx1, dy0) = (x.dim_at(v(i, k + 1)), y.dim_at(v(k, j)));
                if dx1 == 0 || dy0 == 0 {
                    continue;
                }
                let rx = x.right_map(i, k);
                let ly = y.left_map(k, j);
                let dy1 = y.dim_at(v(k + 1, j));
                for a in 0..dx1 {
                    for b in 0..dy0 {
                        let mut col = vec![Q::zero(); total];
                        for r in 0..x.dim_at(v(i, k)) {
                            let c = rx[(r, a)];
                            if !c.is_zero() {
                                col[offsets[p][k - 1] + r * dy0 + b] += c;
                            }
                        }
                        for s in 0..dy1 {
                            let c = ly[(s, b)];
                            if !c.is_zero() {
                                col[offsets[p][k] + a * dy1 + s] -= c;
                            }
                        }
                        if col.iter().any(|c| !c.is_zero()) {
                            cols.push(col);
                        }
                    }
                }
            }
            let rel = Matrix::from_columns(total, &cols);
            let ck = cokernel(&rel);
            debug_assert_eq!(ck.projection.rows(), total - rel.rank());
            quotients.push(ck);
        }
    }
    let dims: Vec<usize> = quotients.iter().map(|c| c.projection.rows()).collect();
    Ok(GenericBimodule::from_fn(n, dims, |side, from, to| {
        let (pf, pt) = ((from.row - 1) * n + (from.col - 1), (to.row - 1) * n + (to.col - 1));
        let mut m = Matrix::zeros(raw_dims[pt], raw_dims[pf]);
        for k in 1..=n {
            let block = match side {
                // alpha_i on the left factor, block k to block k
                Side::Left => x.left_map(from.row, k).kron(&Matrix::identity(y.dim_at(v(k, from.col)))),
                Side::Right => Matrix::identity(x.dim_at(v(from.row, k))).kron(y.right_map(k, to.col)),
            };
            let (r0, c0) = (offsets[pt][k - 1], offsets[pf][k - 1]);
            for r in 0..block.rows() {
                for c in 0..block.cols() {
                    m[(r0 + r, c0 + c)] = block[(r, c)];
                }
            }
        }
        quotients[pt].projection.mul(&m).mul(&quotients[pf].section)
    }))
}

/// `dim (N (x)_A K)` for a right module `N` and a left module `K`.
pub fn module_pairing(m: &RightModule, k: &LeftModule) -> Result<usize> {
    if m.n != k.n {
        return Err(Error::SizeMismatch { left: m.n, right: k.n });
    }
    let n = m.n;
    let mut offsets = vec![0usize; n + 1];
    for t in 0..n {
        offsets[t + 1] = offsets[t] + m.dims[t] * k.dims[t];
    }
    let total = offsets[n];
    let mut cols = Vec::new();
    // vertex t+1 (0-based t): x in N_{t+2}, y in K_{t+1}
    for t in 0..n.saturating_sub(1) {
        let (dx1, dy0, dx0, dy1) = (m.dims[t + 1], k.dims[t], m.dims[t], k.dims[t + 1]);
        for a in 0..dx1 {
            for b in 0..dy0 {
                let mut col = vec![Q::zero(); total];
                for r in 0..dx0 {
                    col[offsets[t] + r * dy0 + b] += m.maps[t][(r, a)];
                }
                for s in 0..dy1 {
                    col[offsets[t + 1] + a * dy1 + s] -= k.maps[t][(s, b)];
                }
                cols.push(col);
            }
        }
    }
    let rank = Matrix::from_columns(total, &cols).rank();
    Ok(total - rank)
}

fn check_reconciles(x: &GenericBimodule, d: &Decomposition, cat: &Catalog) -> Result<bool> {
    let mut dims = vec![0usize; x.graded_dims().len()];
    for (l, m) in d.iter() {
        let z = cat.realize(l)?;
        for (acc, &v) in dims.iter_mut().zip(z.graded_dims()) {
            *acc += v * m;
        }
    }
    Ok(dims == x.graded_dims())
}

/// Decomposition by solving `H m = h(X)`.
pub fn decompose_by_fingerprint(x: &GenericBimodule, cat: &Catalog) -> Result<Option<Decomposition>> {
    if x.is_zero() {
        return Ok(Some(Decomposition::default()));
    }
    let h = cat.fingerprint(x)?;
    let Some(m) = cat.multiplicities(&h) else {
        return Ok(None);
    };
    let mut d = Decomposition::default();
    for (k, &mult) in m.iter().enumerate() {
        d.add(cat.label(k), mult);
    }
    Ok(check_reconciles(x, &d, cat)?.then_some(d))
}

/// Krull-Schmidt decomposition against the catalog. The fingerprint solve is
/// tried first; idempotent splitting is the fallback.
pub fn decompose(x: &GenericBimodule, cat: &Catalog) -> Result<Decomposition> {
    if let Some(d) = decompose_by_fingerprint(x, cat)? {
        return Ok(d);
    }
    decompose_by_splitting(x, cat)
}

/// Runs both strategies and fails if they disagree.
pub fn decompose_checked(x: &GenericBimodule, cat: &Catalog) -> Result<Decomposition> {
    let split = decompose_by_splitting(x, cat)?;
    match decompose_by_fingerprint(x, cat)? {
        Some(d) if d == split => Ok(d),
        Some(d) => Err(Error::DecompositionMismatch(format!("fingerprint gives {d}, splitting gives {split}"))),
        None => Err(Error::DecompositionMismatch(format!(
            "fingerprint solve failed, splitting gives {split}"
        ))),
    }
}

/// Decomposition by splitting along generalised eigenspaces of
/// endomorphisms, then identifying each indecomposable summand.
pub fn decompose_by_splitting(x: &GenericBimodule, cat: &Catalog) -> Result<Decomposition> {
    let mut d = Decomposition::default();
    for part in split_indecomposables(x) {
        d.add(cat.identify(&part)?, 1);
    }
    if !check_reconciles(x, &d, cat)? {
        return Err(Error::DecompositionMismatch(format!("summands {d} do not add up")));
    }
    Ok(d)
}

/// Splits `x` into summands with local endomorphism rings (as far as rational
/// eigenvalues allow).
pub fn split_indecomposables(x: &GenericBimodule) -> Vec<GenericBimodule> {
    let mut done = Vec::new();
    let mut todo = vec![x.clone()];
    while let Some(y) = todo.pop() {
        if y.is_zero() {
            continue;
        }
        match split_once(&y) {
            Some((a, b)) => {
                todo.push(a);
                todo.push(b);
            }
            None => done.push(y),
        }
    }
    done
}

fn split_once(x: &GenericBimodule) -> Option<(GenericBimodule, GenericBimodule)> {
    let basis = x.hom_space(x).ok()?.basis;
    if basis.len() <= 1 {
        return None;
    }
    let combine = |f: &GradedMap, g: &GradedMap, s: i64| -> GradedMap {
        f.iter().zip(g).map(|(a, b)| a.add(&b.scale(Q::from_integer(s)))).collect()
    };
    let compose = |f: &GradedMap, g: &GradedMap| -> GradedMap { f.iter().zip(g).map(|(a, b)| a.mul(b)).collect() };
    let mut candidates: Vec<GradedMap> = basis.clone();
    for a in 0..basis.len() {
        for b in a + 1..basis.len() {
            candidates.push(combine(&basis[a], &basis[b], 1));
            candidates.push(combine(&basis[a], &basis[b], 2));
            candidates.push(compose(&basis[a], &basis[b]));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..8 {
        let mut f: GradedMap = basis[0].iter().map(|m| Matrix::zeros(m.rows(), m.cols())).collect();
        for b in &basis {
            f = combine(&f, b, rng.gen_range(-3..=3));
        }
        candidates.push(f);
    }
    candidates.iter().find_map(|f| fitting_split(x, f))
}

/// Splits along `ker (f - l)^d` and `im (f - l)^d` for a rational eigenvalue
/// `l` of `f`, if both are non-zero.
fn fitting_split(x: &GenericBimodule, f: &GradedMap) -> Option<(GenericBimodule, GenericBimodule)> {
    let mut eigenvalues: Vec<Q> = f.iter().filter(|m| m.rows() > 0).flat_map(rational_eigenvalues).collect();
    eigenvalues.sort();
    eigenvalues.dedup();
    if eigenvalues.len() < 2 {
        return None;
    }
    let lambda = eigenvalues[0];
    let mut kers = Vec::with_capacity(f.len());
    let mut ims = Vec::with_capacity(f.len());
    for m in f {
        let d = m.rows();
        let shifted = m.sub(&Matrix::identity(d).scale(lambda));
        let p = shifted.pow(d.max(1));
        kers.push(p.kernel_matrix());
        ims.push(p.column_space());
    }
    if kers.iter().all(|k| k.cols() == 0) || ims.iter().all(|k| k.cols() == 0) {
        return None;
    }
    Some((x.restrict(&kers)?, x.restrict(&ims)?))
}

/// `decompose(tensor(realize(a), realize(b)))`.
pub fn tensor_decomposed(a: IndecLabel, b: IndecLabel, cat: &Catalog) -> Result<Decomposition> {
    let (x, y) = (cat.realize(a)?, cat.realize(b)?);
    product_of(x, y, cat)
}

fn product_of(x: &GenericBimodule, y: &GenericBimodule, cat: &Catalog) -> Result<Decomposition> {
    // nothing to tensor when Rsupp(X) and Lsupp(Y) are disjoint
    let rs = x.rsupp();
    if !y.lsupp().iter().any(|i| rs.contains(i)) {
        return Ok(Decomposition::default());
    }
    decompose(&tensor(x, y)?, cat)
}

/// Memoised products of catalog labels.
pub struct ProductTable<'c> {
    cat: &'c Catalog,
    cells: Vec<OnceLock<Decomposition>>,
}

#[derive(Serialize, Deserialize)]
struct TableFile {
    n: usize,
    catalog_hash: String,
    products: BTreeMap<String, Decomposition>,
}

impl<'c> ProductTable<'c> {
    pub fn new(cat: &'c Catalog) -> Self {
        let size = cat.len() * cat.len();
        Self {
            cat,
            cells: (0..size).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn catalog(&self) -> &'c Catalog {
        self.cat
    }

    /// The product of labels `a` and `b`, by catalog index.
    pub fn get(&self, a: usize, b: usize) -> &Decomposition {
        self.cells[a * self.cat.len() + b].get_or_init(|| {
            product_of(self.cat.realization(a), self.cat.realization(b), self.cat)
                .expect("catalog products always decompose")
        })
    }

    pub fn get_labels(&self, a: IndecLabel, b: IndecLabel) -> Result<&Decomposition> {
        Ok(self.get(self.cat.index_of(a)?, self.cat.index_of(b)?))
    }

    /// Computes every product, in parallel.
    pub fn fill(&self) {
        let size = self.cat.len();
        (0..size * size).into_par_iter().for_each(|k| {
            self.get(k / size, k % size);
        });
    }

    pub fn filled(&self) -> usize {
        self.cells.iter().filter(|c| c.get().is_some()).count()
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let labels = self.cat.labels();
        let size = labels.len();
        let mut products = BTreeMap::new();
        for (k, c) in self.cells.iter().enumerate() {
            if let Some(d) = c.get() {
                products.insert(format!("{}|{}", labels[k / size], labels[k % size]), d.clone());
            }
        }
        let file = TableFile {
            n: self.cat.n(),
            catalog_hash: self.cat.hash().to_string(),
            products,
        };
        let tmp = path.with_extension("tmp");
        std::fs::write(&tmp, serde_json::to_vec(&file)?)?;
        std::fs::rename(tmp, path)?;
        Ok(())
    }

    /// Loads cached products; fails if the file was made for another catalog.
    pub fn load(cat: &'c Catalog, path: &Path) -> Result<Self> {
        let file: TableFile = serde_json::from_slice(&std::fs::read(path)?)?;
        if file.n != cat.n() || file.catalog_hash != cat.hash() {
            return Err(Error::StaleCache(format!(
                "{} was written for n = {} with hash {}",
                path.display(),
                file.n,
                file.catalog_hash
            )));
        }
        let table = Self::new(cat);
        for (key, d) in file.products {
            let (a, b) = key
                .split_once('|')
                .ok_or_else(|| Error::StaleCache(format!("malformed key {key:?}")))?;
            let a = cat.index_of(a.parse()?)?;
            let b = cat.index_of(b.parse()?)?;
            let _ = table.cells[a * cat.len() + b].set(d);
        }
        Ok(table)
    }

    /// Loads from `path` when it holds a matching table, otherwise starts empty.
    pub fn load_or_new(cat: &'c Catalog, path: &Path) -> Self {
        Self::load(cat, path).unwrap_or_else(|_| Self::new(cat))
    }
}

/// Products in the table violating `Lsupp(X (x) Y) ⊆ Lsupp(X)` or
/// `Rsupp(X (x) Y) ⊆ Rsupp(Y)`, among the computed entries.
pub fn support_violations(table: &ProductTable) -> Vec<(IndecLabel, IndecLabel)> {
    let cat = table.catalog();
    let size = cat.len();
    let within = |inner: (usize, usize), outer: (usize, usize)| outer.0 <= inner.0 && inner.1 <= outer.1;
    let mut out = Vec::new();
    for (k, c) in table.cells.iter().enumerate() {
        let Some(d) = c.get() else { continue };
        let (a, b) = (cat.label(k / size), cat.label(k % size));
        if !d.labels().all(|z| within(z.lsupp(), a.lsupp()) && within(z.rsupp(), b.rsupp())) {
            out.push((a, b));
        }
    }
    out
}

/// Computed products with a k-split factor but a summand that is not k-split.
pub fn ksplit_ideal_violations(table: &ProductTable) -> Vec<(IndecLabel, IndecLabel)> {
    let cat = table.catalog();
    let size = cat.len();
    let mut out = Vec::new();
    for (k, c) in table.cells.iter().enumerate() {
        let Some(d) = c.get() else { continue };
        let (a, b) = (cat.label(k / size), cat.label(k % size));
        if (a.is_ksplit() || b.is_ksplit()) && !d.labels().all(|z| z.is_ksplit()) {
            out.push((a, b));
        }
    }
    out
}

/// Products of catalog pairs where the splitting decomposition differs from
/// the fingerprint one. `pairs` are catalog indices.
pub fn decomposer_disagreements(cat: &Catalog, pairs: &[(usize, usize)]) -> Result<Vec<(IndecLabel, IndecLabel, String)>> {
    let results: Vec<Option<(IndecLabel, IndecLabel, String)>> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let x = tensor(cat.realization(a), cat.realization(b))?;
            Ok(match decompose_checked(&x, cat) {
                Ok(_) => None,
                Err(Error::DecompositionMismatch(m)) => Some((cat.label(a), cat.label(b), m)),
                Err(Error::NoMatch(m)) => Some((cat.label(a), cat.label(b), m)),
                Err(e) => return Err(e),
            })
        })
        .collect::<Result<_>>()?;
    Ok(results.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::enumerate;

    #[test]
    fn identity_is_a_unit() {
        for n in 1..=3 {
            let cat = enumerate(n).unwrap();
            let a = GenericBimodule::regular(n);
            for k in 0..cat.len() {
                let z = cat.realization(k);
                let l = tensor(&a, z).unwrap();
                assert!(l.validate());
                assert_eq!(cat.identify(&l).unwrap(), cat.label(k));
                let r = tensor(z, &a).unwrap();
                assert_eq!(cat.identify(&r).unwrap(), cat.label(k));
            }
        }
    }

    #[test]
    fn projective_composition() {
        let n = 3;
        let cat = enumerate(n).unwrap();
        let f12 = GenericBimodule::outer(&LeftModule::projective(n, 1), &RightModule::projective(n, 2));
        let f23 = GenericBimodule::outer(&LeftModule::projective(n, 2), &RightModule::projective(n, 3));
        let f13 = GenericBimodule::outer(&LeftModule::projective(n, 1), &RightModule::projective(n, 3));
        let p = tensor(&f12, &f23).unwrap();
        assert_eq!(decompose(&p, &cat).unwrap(), decompose(&f13, &cat).unwrap());
    }

    #[test]
    fn pairing_examples() {
        let n = 3;
        for i in 1..=n {
            assert_eq!(module_pairing(&RightModule::projective(n, i), &LeftModule::projective(n, i)).unwrap(), 1);
        }
        for j in 1..n {
            // e_{j+1} A e_j is spanned by alpha_j; e_j A e_{j+1} is zero
            assert_eq!(module_pairing(&RightModule::projective(n, j + 1), &LeftModule::projective(n, j)).unwrap(), 1);
            assert_eq!(module_pairing(&RightModule::projective(n, j), &LeftModule::projective(n, j + 1)).unwrap(), 0);
        }
        assert_eq!(module_pairing(&RightModule::simple(n, n), &LeftModule::projective(n, 1)).unwrap(), 0);
    }

    #[test]
    fn pairing_matches_hom_spaces() {
        // e_i A (x)_A A e_j = e_i A e_j, computed from the multiplication table
        let n = 4;
        let alg = crate::algebra::build_algebra(n).unwrap();
        for i in 1..=n {
            for j in 1..=n {
                let expected = alg.corner(i, j).len();
                let got = module_pairing(&RightModule::projective(n, i), &LeftModule::projective(n, j)).unwrap();
                assert_eq!(got, expected, "{i} {j}");
            }
        }
    }

    #[test]
    fn disjoint_supports_give_zero() {
        let n = 4;
        let cat = enumerate(n).unwrap();
        let d = tensor_decomposed(IndecLabel::m(0, 1, 1), IndecLabel::m(0, 3, 1), &cat).unwrap();
        assert!(d.is_empty());
        let x = tensor(cat.realize(IndecLabel::l(1, 1)).unwrap(), cat.realize(IndecLabel::l(2, 2)).unwrap()).unwrap();
        assert!(x.is_zero());
        // overlapping middle supports: the product survives but is k-split
        let cat = enumerate(3).unwrap();
        let d = tensor_decomposed(IndecLabel::m(0, 1, 1), IndecLabel::m(0, 2, 2), &cat).unwrap();
        assert!(d.is_single(IndecLabel::pi(1, 2)), "{d}");
    }

    #[test]
    fn splitting_agrees_on_sums() {
        let n = 3;
        let cat = enumerate(n).unwrap();
        let x = cat.realize(IndecLabel::w(1, 1, 2)).unwrap();
        let y = cat.realize(IndecLabel::m(0, 1, 1)).unwrap();
        let s = x.direct_sum(y).unwrap().direct_sum(x).unwrap();
        let d = decompose_checked(&s, &cat).unwrap();
        assert_eq!(d.multiplicity(IndecLabel::w(1, 1, 2)), 2);
        assert_eq!(d.multiplicity(IndecLabel::m(0, 1, 1)), 1);
        assert_eq!(d.total_dim(), s.dim());
    }

    #[test]
    fn spec_chain_example() {
        for n in 3..=4 {
            let cat = enumerate(n).unwrap();
            let d = tensor_decomposed(IndecLabel::s(n - 2, 1, 2), IndecLabel::nn(n - 2, 2, 1), &cat).unwrap();
            assert!(d.is_single(IndecLabel::m(n - 2, 1, 1)), "{d}");
        }
    }

    #[test]
    fn table_round_trip() {
        let cat = enumerate(2).unwrap();
        let t = ProductTable::new(&cat);
        t.fill();
        assert_eq!(t.filled(), 121);
        let dir = std::env::temp_dir().join(format!("anbimod-table-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("n2.json");
        t.save(&path).unwrap();
        let u = ProductTable::load(&cat, &path).unwrap();
        for a in 0..cat.len() {
            for b in 0..cat.len() {
                assert_eq!(u.cells[a * cat.len() + b].get(), Some(t.get(a, b)));
            }
        }
        let other = enumerate(3).unwrap();
        assert!(matches!(ProductTable::load(&other, &path), Err(Error::StaleCache(_))));
        std::fs::remove_dir_all(dir).unwrap();
    }

    #[test]
    fn display() {
        let mut d = Decomposition::single(IndecLabel::m(2, 1, 1));
        assert_eq!(d.to_string(), "M:2,1,1 ×1");
        d.add(IndecLabel::l(1, 1), 2);
        assert_eq!(d.to_string(), "L,1,1 ×2 + M:2,1,1 ×1");
        assert_eq!(Decomposition::default().to_string(), "0");
        let json = serde_json::to_string(&d).unwrap();
        let back: Decomposition = serde_json::from_str(&json).unwrap();
        assert_eq!(back, d);
    }
}
