//! Adjoint pairs `(X (x) -, Y (x) -)` among catalog bimodules: `X` must be
//! projective as a left module, and then `Y = Hom_A(X, A)`.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bimodule::GenericBimodule;
use crate::catalog::{Catalog, IndecLabel, Kind};
use crate::error::Result;
use crate::tensor::{decompose, tensor, Decomposition};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdjunctionPair {
    pub left: IndecLabel,
    /// The right adjoint's bimodule; a single label unless `left` is k-split.
    pub right: Decomposition,
    pub paper_listed: bool,
    pub ksplit: bool,
}

impl AdjunctionPair {
    pub fn right_label(&self) -> Option<IndecLabel> {
        let mut it = self.right.iter();
        match (it.next(), it.next()) {
            (Some((l, 1)), None) => Some(l),
            _ => None,
        }
    }
}

/// The non-k-split left projective labels listed in closed form.
pub fn listed_left_projective(n: usize) -> BTreeSet<IndecLabel> {
    IndecLabel::all(n)
        .into_iter()
        .filter(|l| match l.kind {
            Kind::W => l.i + l.t == n,
            Kind::S => true,
            _ => false,
        })
        .collect()
}

/// Pairs listed in closed form, including the self-adjoint identity.
pub fn listed_pairs(n: usize) -> Vec<(IndecLabel, IndecLabel)> {
    let mut out = Vec::new();
    if n >= 2 {
        out.push((IndecLabel::identity(n), IndecLabel::identity(n)));
    }
    for t in 1..n.saturating_sub(1) {
        for j in 1..=n - t {
            out.push((IndecLabel::w(t, n - t, j), IndecLabel::nn(t, j, n - t - 1)));
            out.push((IndecLabel::s(t, 1, j), IndecLabel::w(t, j, 1)));
            for i in 2..n - t {
                out.push((IndecLabel::s(t, i, j), IndecLabel::nn(t, j, i - 1)));
            }
        }
    }
    out.sort();
    out
}

/// `Hom_A(X, A)` for a left projective label, decomposed; `None` otherwise.
pub fn adjoint_partner(label: IndecLabel, cat: &Catalog) -> Result<Option<Decomposition>> {
    let x = cat.realize(label)?;
    if !x.is_left_projective() {
        return Ok(None);
    }
    decompose(&x.left_hom_to_a(), cat).map(Some)
}

/// Every adjoint pair with an indecomposable left member.
pub fn all_adjoint_pairs(cat: &Catalog) -> Result<Vec<AdjunctionPair>> {
    let listed: BTreeSet<(IndecLabel, IndecLabel)> = listed_pairs(cat.n()).into_iter().collect();
    let mut out = Vec::new();
    for &l in cat.labels() {
        if let Some(right) = adjoint_partner(l, cat)? {
            let mut pair = AdjunctionPair {
                left: l,
                right,
                paper_listed: false,
                ksplit: l.is_ksplit(),
            };
            pair.paper_listed = pair.right_label().is_some_and(|r| listed.contains(&(l, r)));
            out.push(pair);
        }
    }
    Ok(out)
}

/// Non-k-split pairs found by computation but not in the closed-form list,
/// and listed pairs that were not found.
pub fn surplus_and_missing(pairs: &[AdjunctionPair], n: usize) -> (Vec<String>, Vec<String>) {
    let listed: BTreeSet<(IndecLabel, IndecLabel)> = listed_pairs(n).into_iter().collect();
    let found: BTreeSet<(IndecLabel, IndecLabel)> = pairs
        .iter()
        .filter(|p| !p.ksplit)
        .filter_map(|p| p.right_label().map(|r| (p.left, r)))
        .collect();
    let surplus = pairs
        .iter()
        .filter(|p| !p.ksplit && !p.paper_listed)
        .map(|p| format!("({}, {})", p.left, p.right))
        .collect();
    let missing = listed.difference(&found).map(|(a, b)| format!("({a}, {b})")).collect();
    (surplus, missing)
}

/// Checks `dim Hom(X (x) Z, Z') = dim Hom(Z, Y (x) Z')` on `samples` random
/// catalog pairs `(Z, Z')`, with `Y = Hom_A(X, A)`. Returns the failing pairs.
pub fn hom_identity_failures(
    left: IndecLabel,
    cat: &Catalog,
    samples: usize,
    seed: u64,
) -> Result<Vec<(IndecLabel, IndecLabel)>> {
    let x = cat.realize(left)?;
    let y = x.left_hom_to_a();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let labels = cat.labels();
    let mut failures = Vec::new();
    for _ in 0..samples {
        let z = *labels.choose(&mut rng).expect("non-empty catalog");
        let zp = *labels.choose(&mut rng).expect("non-empty catalog");
        let (rz, rzp): (&GenericBimodule, &GenericBimodule) = (cat.realize(z)?, cat.realize(zp)?);
        let lhs = tensor(x, rz)?.hom_dim(rzp)?;
        let rhs = rz.hom_dim(&tensor(&y, rzp)?)?;
        if lhs != rhs {
            failures.push((z, zp));
        }
    }
    Ok(failures)
}
