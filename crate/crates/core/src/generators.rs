//! Closure of a set of labels under tensor products and summands, and the
//! minimality check for the four-element generating set.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{Catalog, IndecLabel, Kind};
use crate::error::{Error, Result};
use crate::shiftrules::{rule_product, GeneratorName};
use crate::tensor::{Decomposition, ProductTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Discovery {
    pub round: usize,
    /// The product that first produced the label; `None` for seeds.
    pub via: Option<(IndecLabel, IndecLabel)>,
}

#[derive(Debug, Clone)]
pub struct ClosureState {
    pub n: usize,
    pub members: BTreeMap<IndecLabel, Discovery>,
    /// Number of rounds that added something.
    pub rounds: usize,
    /// Products answered by a combinatorial rule, and by the oracle.
    pub rule_products: usize,
    pub oracle_products: usize,
}

impl ClosureState {
    pub fn labels(&self) -> BTreeSet<IndecLabel> {
        self.members.keys().copied().collect()
    }

    pub fn contains(&self, l: IndecLabel) -> bool {
        self.members.contains_key(&l)
    }

    pub fn certificate(&self) -> Certificate {
        let mut members: Vec<CertificateEntry> = self
            .members
            .iter()
            .map(|(l, d)| CertificateEntry {
                label: l.to_string(),
                round: d.round,
                via: d.via.map(|(a, b)| [a.to_string(), b.to_string()]),
            })
            .collect();
        members.sort_by_key(|e| e.round);
        Certificate {
            n: self.n,
            rounds: self.rounds,
            size: self.members.len(),
            members,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateEntry {
    pub label: String,
    pub round: usize,
    pub via: Option<[String; 2]>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub n: usize,
    pub rounds: usize,
    pub size: usize,
    pub members: Vec<CertificateEntry>,
}

/// The identity together with the three generators.
pub fn generating_seed(n: usize) -> Result<Vec<IndecLabel>> {
    if n < 3 {
        return Err(Error::InvalidN { got: n, min: 3 });
    }
    let mut seed = vec![IndecLabel::identity(n)];
    for g in GeneratorName::ALL {
        seed.push(g.label(n)?);
    }
    Ok(seed)
}

fn product(a: IndecLabel, b: IndecLabel, table: &ProductTable) -> Result<(Decomposition, bool)> {
    let cat = table.catalog();
    if let Some(d) = rule_product(a, b, cat)? {
        return Ok((d, true));
    }
    Ok((table.get(cat.index_of(a)?, cat.index_of(b)?).clone(), false))
}

/// Least set containing `seed` and closed under summands of pairwise products.
pub fn closure(seed: &[IndecLabel], table: &ProductTable) -> Result<ClosureState> {
    let cat = table.catalog();
    let mut members = BTreeMap::new();
    for &l in seed {
        l.check(cat.n())?;
        members.insert(l, Discovery { round: 0, via: None });
    }
    let mut state = ClosureState {
        n: cat.n(),
        members,
        rounds: 0,
        rule_products: 0,
        oracle_products: 0,
    };
    let mut round = 0;
    loop {
        round += 1;
        let mut order: Vec<(usize, IndecLabel)> = state.members.iter().map(|(&l, d)| (d.round, l)).collect();
        order.sort();
        let fresh = |r: usize| r + 1 == round;
        let pairs: Vec<(IndecLabel, IndecLabel)> = order
            .iter()
            .flat_map(|&(ra, a)| order.iter().filter(move |&&(rb, _)| fresh(ra) || fresh(rb)).map(move |&(_, b)| (a, b)))
            .collect();
        let products: Vec<(Decomposition, bool)> = pairs
            .par_iter()
            .map(|&(a, b)| product(a, b, table))
            .collect::<Result<_>>()?;
        let mut added = false;
        for (&(a, b), (d, by_rule)) in pairs.iter().zip(&products) {
            if *by_rule {
                state.rule_products += 1;
            } else {
                state.oracle_products += 1;
            }
            for l in d.labels() {
                state.members.entry(l).or_insert_with(|| {
                    added = true;
                    Discovery { round, via: Some((a, b)) }
                });
            }
        }
        if !added {
            break;
        }
        state.rounds = round;
    }
    Ok(state)
}

#[derive(Debug, Clone, Serialize)]
pub struct SubsetResult {
    pub dropped: String,
    pub size: usize,
    pub proper: bool,
    pub kinds: Vec<Kind>,
    /// Whether the closure has the expected shape for this dropped generator.
    pub shape_ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct MinimalityReport {
    pub n: usize,
    pub catalog_size: usize,
    pub subsets: Vec<SubsetResult>,
}

impl MinimalityReport {
    pub fn passed(&self) -> bool {
        self.subsets.iter().all(|s| s.proper && s.shape_ok)
    }
}

/// Closes each three-element subset of the seed and records what is missing.
pub fn verify_minimality(table: &ProductTable) -> Result<MinimalityReport> {
    let cat: &Catalog = table.catalog();
    let n = cat.n();
    let seed = generating_seed(n)?;
    let names = ["identity", "W21", "N11", "S12"];
    let mut subsets = Vec::new();
    for (k, name) in names.iter().enumerate() {
        let rest: Vec<IndecLabel> = seed.iter().enumerate().filter(|&(m, _)| m != k).map(|(_, &l)| l).collect();
        let c = closure(&rest, table)?;
        let labels = c.labels();
        let kinds: BTreeSet<Kind> = labels.iter().map(|l| l.kind).collect();
        let shape_ok = match k {
            0 => !c.contains(IndecLabel::identity(n)),
            1 => !c.contains(seed[1]),
            2 => !kinds.contains(&Kind::N) && !kinds.contains(&Kind::M),
            _ => !kinds.contains(&Kind::S) && !kinds.contains(&Kind::M),
        };
        subsets.push(SubsetResult {
            dropped: name.to_string(),
            size: labels.len(),
            proper: labels.len() < cat.len(),
            kinds: kinds.into_iter().collect(),
            shape_ok,
        });
    }
    Ok(MinimalityReport {
        n,
        catalog_size: cat.len(),
        subsets,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::enumerate;

    #[test]
    fn trivial_closures() {
        let cat = enumerate(3).unwrap();
        let table = ProductTable::new(&cat);
        assert!(closure(&[], &table).unwrap().members.is_empty());
        let all = closure(cat.labels(), &table).unwrap();
        assert_eq!(all.members.len(), cat.len());
        assert_eq!(all.rounds, 0);
    }

    #[test]
    fn generates_at_three() {
        let cat = enumerate(3).unwrap();
        let table = ProductTable::new(&cat);
        let c = closure(&generating_seed(3).unwrap(), &table).unwrap();
        assert_eq!(c.members.len(), cat.len());
        assert!(c.members[&IndecLabel::m(1, 1, 1)].round <= 2);
        let report = verify_minimality(&table).unwrap();
        assert!(report.passed(), "{report:?}");
        assert!(generating_seed(2).is_err());
    }
}
