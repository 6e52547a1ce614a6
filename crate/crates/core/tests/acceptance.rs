//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use anbimod::adjunctions::{all_adjoint_pairs, listed_left_projective, surplus_and_missing};
use anbimod::algebra::cyclic_walk_count;
use anbimod::cells::{compute_cells, theorem_checks};
use anbimod::generators::{closure, generating_seed, verify_minimality};
use anbimod::shiftrules::rule_oracle_sweep;
use anbimod::tensor::{decomposer_disagreements, support_violations};
use anbimod::{enumerate, maximal_strings, Catalog, GeneratorName, Kind, ProductTable};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Verdict {
    ok: bool,
    detail: String,
}

fn verdict(ok: bool, detail: impl Into<String>) -> Verdict {
    Verdict { ok, detail: detail.into() }
}

fn run(id: usize, name: &str, budget: Duration, f: impl FnOnce() -> Verdict) -> bool {
    let start = Instant::now();
    let v = f();
    let took = start.elapsed();
    let ok = v.ok && took <= budget;
    let timing = if took <= budget { String::new() } else { format!(" over budget {budget:?}") };
    println!(
        "criterion {id} {name}: {} ({:.2}s{timing}) {}",
        if ok { "PASS" } else { "FAIL" },
        took.as_secs_f64(),
        v.detail
    );
    ok
}

fn catalogs() -> Vec<Catalog> {
    (1..=5).map(|n| enumerate(n).unwrap()).collect()
}

fn main() {
    let cats = catalogs();
    let cat = |n: usize| &cats[n - 1];
    // tables shared by criteria 3 to 5 and inspected by criterion 8
    let tables: Vec<ProductTable> = cats.iter().map(ProductTable::new).collect();
    let table = |n: usize| &tables[n - 1];
    let mut results = Vec::new();

    results.push(run(1, "enumeration", Duration::from_secs(6), || {
        let want = [1, 11, 39, 93, 181, 311];
        let mut bad = Vec::new();
        for n in 1..=6 {
            let start = Instant::now();
            let size = enumerate(n).unwrap().len();
            let formula = (4 * n * n * n + 3 * n * n + 3 - 7 * n) / 3;
            if size != want[n - 1] || size != formula || start.elapsed() > Duration::from_secs(1) {
                bad.push(format!("n={n}: {size} in {:?}", start.elapsed()));
            }
        }
        verdict(bad.is_empty(), format!("sizes {want:?} {}", bad.join(", ")))
    }));

    results.push(run(2, "maximal strings", Duration::from_secs(7), || {
        let mut bad = Vec::new();
        for n in 2..=8 {
            let start = Instant::now();
            let strings = maximal_strings(n).len();
            let bands = cyclic_walk_count(n);
            if strings != 2 * n - 2 || bands != 0 || start.elapsed() > Duration::from_secs(1) {
                bad.push(format!("n={n}: {strings} strings, {bands} bands"));
            }
        }
        verdict(bad.is_empty(), format!("n=2..8 {}", bad.join(", ")))
    }));

    results.push(run(3, "shift rules vs tensor oracle", Duration::from_secs(300), || {
        let mut detail = Vec::new();
        let mut ok = true;
        for n in 3..=5 {
            let (cases, bad) = rule_oracle_sweep(cat(n)).unwrap();
            ok &= bad.is_empty();
            detail.push(format!("n={n}: {} of {cases} differ", bad.len()));
            // record the same products for the support check
            let c = cat(n);
            for g in GeneratorName::ALL {
                let gk = c.index_of(g.label(n).unwrap()).unwrap();
                for k in 0..c.len() {
                    if g == GeneratorName::W21 || !c.label(k).is_ksplit() {
                        table(n).get(gk, k);
                        table(n).get(k, gk);
                    }
                }
            }
        }
        verdict(ok, detail.join(", "))
    }));

    results.push(run(4, "decomposer self-consistency", Duration::from_secs(600), || {
        let mut detail = Vec::new();
        let mut ok = true;
        for n in 3..=4 {
            let size = cat(n).len();
            let pairs: Vec<(usize, usize)> = (0..size * size).map(|k| (k / size, k % size)).collect();
            let bad = decomposer_disagreements(cat(n), &pairs).unwrap();
            ok &= bad.is_empty();
            detail.push(format!("n={n}: {} products, {} disagree", pairs.len(), bad.len()));
            table(n).fill();
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let size = cat(5).len();
        let pairs: Vec<(usize, usize)> = (0..500).map(|_| (rng.gen_range(0..size), rng.gen_range(0..size))).collect();
        let bad = decomposer_disagreements(cat(5), &pairs).unwrap();
        ok &= bad.is_empty();
        detail.push(format!("n=5: {} random products, {} disagree", pairs.len(), bad.len()));
        for &(a, b) in &pairs {
            table(5).get(a, b);
        }
        verdict(ok, detail.join(", "))
    }));

    results.push(run(5, "cell theorems", Duration::from_secs(600), || {
        let mut failed = Vec::new();
        let mut count = 0;
        for n in 2..=4 {
            table(n).fill();
            let cs = compute_cells(table(n));
            for c in theorem_checks(&cs, cat(n)) {
                count += 1;
                if !c.passed {
                    failed.push(format!("n={n} {}: {}", c.name, c.detail));
                }
            }
        }
        verdict(failed.is_empty(), format!("{count} checks at n=2..4 {}", failed.join("; ")))
    }));

    results.push(run(6, "adjunctions", Duration::from_secs(60), || {
        let mut detail = Vec::new();
        let mut ok = true;
        for n in 3..=5 {
            let c = cat(n);
            let pairs = all_adjoint_pairs(c).unwrap();
            let (surplus, missing) = surplus_and_missing(&pairs, n);
            let listed = listed_left_projective(n);
            let projective: BTreeSet<_> = (0..c.len())
                .filter(|&k| !c.label(k).is_ksplit() && c.realization(k).is_left_projective())
                .map(|k| c.label(k))
                .collect();
            let exact = projective == listed;
            ok &= surplus.is_empty() && missing.is_empty() && exact;
            let found = pairs.iter().filter(|p| !p.ksplit).count();
            detail.push(format!(
                "n={n}: {found} pairs, surplus {surplus:?}, missing {missing:?}, projective set {}",
                if exact { "exact" } else { "differs" }
            ));
        }
        verdict(ok, detail.join(", "))
    }));

    results.push(run(7, "generating set", Duration::from_secs(300), || {
        let mut detail = Vec::new();
        let mut ok = true;
        for n in 3..=5 {
            let state = closure(&generating_seed(n).unwrap(), table(n)).unwrap();
            let full = state.members.len() == cat(n).len();
            let report = verify_minimality(table(n)).unwrap();
            let shapes: Vec<String> = report
                .subsets
                .iter()
                .map(|s| {
                    let kinds: Vec<&str> = s.kinds.iter().filter(|k| !k.is_ksplit()).map(|k| k.as_str()).collect();
                    format!("-{}:{}", s.dropped, kinds.join(""))
                })
                .collect();
            let drop_s = report.subsets.iter().find(|s| s.dropped == "S12").unwrap();
            let drop_n = report.subsets.iter().find(|s| s.dropped == "N11").unwrap();
            let only = |s: &anbimod::generators::SubsetResult, allowed: &[Kind]| {
                s.kinds.iter().all(|k| k.is_ksplit() || allowed.contains(k))
            };
            let shapes_ok = only(drop_s, &[Kind::W, Kind::N]) && only(drop_n, &[Kind::W, Kind::S]);
            ok &= full && report.passed() && shapes_ok;
            detail.push(format!(
                "n={n}: closure {}/{} in {} rounds, {}",
                state.members.len(),
                cat(n).len(),
                state.rounds,
                shapes.join(" ")
            ));
        }
        verdict(ok, detail.join(", "))
    }));

    results.push(run(8, "support containment", Duration::from_secs(60), || {
        let mut checked = 0;
        let mut bad = Vec::new();
        for t in &tables {
            checked += t.filled();
            bad.extend(support_violations(t));
        }
        let first = bad.first().map(|(a, b)| format!(", first {a} (x) {b}")).unwrap_or_default();
        verdict(bad.is_empty(), format!("{checked} products, {} violations{first}", bad.len()))
    }));

    let passed = results.iter().filter(|&&ok| ok).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
