//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails or runs over its time budget.

#![allow(clippy::needless_range_loop)]

use std::collections::{HashMap, HashSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use shard_order::lattice::build_lattice;
use shard_order::preorder::lambda;
use shard_order::shard::preorder_via_shards;
use shard_order::shelling::{
    count_decreasing_indexed, hasse_labels, increasing_chain, maximal_chains_indexed,
    mobius_row_indexed,
};
use shard_order::sortable::{c_sortables, noncrossing_preorders};
use shard_order::{
    covers_up, enumerate_shards, intersect, join, mu, to_preorder, CoxeterElement, OmegaLattice,
    Permutation, PermutationPreorder, Preorder,
};

type Outcome = Result<String, String>;

struct Criterion {
    id: usize,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn perm(s: &str) -> Permutation {
    s.parse().unwrap()
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

// ---------------------------------------------------------------- 1

fn round_trip() -> Outcome {
    let mut total = 0;
    for n in 1..=6 {
        for p in Permutation::all(n) {
            ensure!(lambda(&mu(&p)) == p, "λ(μ({p})) = {}", lambda(&mu(&p)));
            total += 1;
        }
    }
    Ok(format!("{total} permutations"))
}

// ---------------------------------------------------------------- 2

/// Independent oracle: for each inversion (a, b) with a before b, every k
/// strictly between b and a in value sits on the side fixed by its
/// position, read straight off the word.
fn shard_relation_by_hand(p: &Permutation) -> Preorder {
    let w = p.word();
    let pos: HashMap<usize, usize> = w.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut pairs = Vec::new();
    for t in 0..w.len().saturating_sub(1) {
        let (j, i) = (w[t], w[t + 1]);
        if j < i {
            continue;
        }
        pairs.push((i, j));
        pairs.push((j, i));
        for k in i + 1..j {
            if pos[&k] < pos[&i] {
                pairs.push((k, i));
            } else {
                pairs.push((i, k));
            }
        }
    }
    Preorder::from_pairs(w.len(), pairs).unwrap()
}

fn geometric_oracle() -> Outcome {
    let mut total = 0;
    for n in 1..=6 {
        for p in Permutation::all(n) {
            let via = preorder_via_shards(&p);
            ensure!(
                via == *mu(&p).as_preorder(),
                "shard route differs from μ at {p}"
            );
            ensure!(
                via == shard_relation_by_hand(&p),
                "hand oracle differs at {p}"
            );
            total += 1;
        }
    }
    Ok(format!("{total} agreements"))
}

// ---------------------------------------------------------------- 3

fn shard_census() -> Outcome {
    let mut line = Vec::new();
    for n in 1..=9usize {
        let expected: u64 = (1..=n)
            .flat_map(|i| (i + 1..=n).map(move |j| 1u64 << (j - i - 1)))
            .sum();
        let shards = enumerate_shards(n);
        let distinct: HashSet<String> = shards.iter().map(|s| s.to_string()).collect();
        ensure!(
            shards.len() as u64 == expected,
            "n={n}: {} shards, expected {expected}",
            shards.len()
        );
        ensure!(distinct.len() == shards.len(), "n={n}: duplicate shards");
        line.push(expected.to_string());
    }
    ensure!(enumerate_shards(4).len() == 11, "n=4 must have 11 shards");
    Ok(format!("n=1..9: {}", line.join(",")))
}

// ---------------------------------------------------------------- 4

fn psi_equals_omega() -> Outcome {
    let shards = enumerate_shards(4);
    ensure!(shards.len() == 11, "expected 11 shards");
    let image: HashSet<Preorder> = Permutation::all(4)
        .map(|p| mu(&p).into_preorder())
        .collect();
    let mut canon = HashSet::new();
    for mask in 0u32..1 << shards.len() {
        let chosen: Vec<_> = (0..shards.len())
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| shards[b].clone())
            .collect();
        let g = intersect(4, &chosen).map_err(|e| e.to_string())?;
        canon.insert(to_preorder(&g));
    }
    ensure!(image.len() == 24, "image of μ has {} elements", image.len());
    ensure!(
        canon == image,
        "{} canonical pre-orders, image has 24",
        canon.len()
    );
    Ok("2048 subsets give 24 pre-orders".into())
}

// ---------------------------------------------------------------- 5

fn rank_law() -> Outcome {
    let mut sizes = Vec::new();
    for n in 1..=6 {
        let l = build_lattice(n).map_err(|e| e.to_string())?;
        // graded rank from the Hasse diagram alone
        let mut depth = vec![usize::MAX; l.len()];
        depth[l.bottom()] = 0;
        let mut order: Vec<usize> = (0..l.len()).collect();
        order.sort_by_key(|&i| l.element(i).len());
        for &i in &order {
            for &z in l.upper_covers(i) {
                let d = depth[i] + 1;
                ensure!(
                    depth[z] == usize::MAX || depth[z] == d,
                    "n={n}: two cover paths of different length reach {}",
                    l.permutation(z)
                );
                depth[z] = d;
            }
        }
        for i in 0..l.len() {
            let w = l.element(i);
            ensure!(
                depth[i] == n - w.block_count() && w.rank() == depth[i],
                "n={n}: rank of {} is {}, blocks {}",
                l.permutation(i),
                depth[i],
                w.block_count()
            );
        }
        sizes.push(l.len().to_string());
    }
    Ok(format!("lattices of size {}", sizes.join(",")))
}

// ---------------------------------------------------------------- 6

fn lattice_laws() -> Outcome {
    for n in 1..=5 {
        let l = build_lattice(n).map_err(|e| e.to_string())?;
        let len = l.len();
        let le = |a: usize, b: usize| l.element(a).is_subrelation_of(l.element(b));
        for a in 0..len {
            for b in 0..len {
                ensure!(
                    l.leq(a, b) == le(a, b),
                    "n={n}: order disagrees with containment"
                );
                // brute-force greatest lower bound
                let lower: Vec<usize> = (0..len).filter(|&z| le(z, a) && le(z, b)).collect();
                let glb: Vec<usize> = lower
                    .iter()
                    .copied()
                    .filter(|&z| lower.iter().all(|&y| le(y, z)))
                    .collect();
                ensure!(
                    glb.len() == 1,
                    "n={n}: no unique meet of {} {}",
                    l.permutation(a),
                    l.permutation(b)
                );
                let (m, j) = (l.try_meet(a, b), l.try_join(a, b));
                ensure!(m == Some(glb[0]), "n={n}: meet mismatch");
                let closed_union = join(l.element(a), l.element(b));
                ensure!(
                    j.map(|j| l.element(j)) == Some(&closed_union),
                    "n={n}: join of {} {} is not the closed union",
                    l.permutation(a),
                    l.permutation(b)
                );
                let (j, m) = (j.unwrap(), glb[0]);
                ensure!(
                    l.join(a, m) == a && l.meet(a, j) == a,
                    "n={n}: absorption fails"
                );
                ensure!(
                    l.join(b, a) == j && l.meet(b, a) == m,
                    "n={n}: not commutative"
                );
            }
        }
        let atoms = l.atoms();
        let coatoms = l.coatoms();
        ensure!(
            atoms.iter().all(|&a| l.rank(a) == 1),
            "n={n}: atom of wrong rank"
        );
        for i in 0..len {
            let up = atoms
                .iter()
                .filter(|&&a| le(a, i))
                .fold(l.bottom(), |acc, &a| l.join(acc, a));
            ensure!(
                up == i,
                "n={n}: {} is not a join of atoms",
                l.permutation(i)
            );
            let down = coatoms
                .iter()
                .filter(|&&c| le(i, c))
                .fold(l.top(), |acc, &c| l.meet(acc, c));
            ensure!(
                down == i,
                "n={n}: {} is not a meet of coatoms",
                l.permutation(i)
            );
        }
    }
    Ok("all pairs, n=1..5".into())
}

// ---------------------------------------------------------------- 7

fn together(w: &PermutationPreorder, a: usize, b: usize) -> bool {
    w.as_preorder().le(a, b) && w.as_preorder().le(b, a)
}

fn strictly_below(w: &PermutationPreorder, a: usize, b: usize) -> bool {
    w.as_preorder().le(a, b) && !w.as_preorder().le(b, a)
}

/// A pre-order ω with eight covers: blocks {1,3}, {2}, {4}, {5}, with {2}
/// related to {1,3}. Either orientation of that relation fits, so both
/// are checked.
fn check_cover_example(omega: &PermutationPreorder, lattice: &OmegaLattice) -> Outcome {
    let covers = covers_up(omega);
    ensure!(
        covers.len() == 8,
        "{} covers of {omega}, expected 8",
        covers.len()
    );
    let i = lattice.index_of(omega).unwrap();
    let hasse: HashSet<&PermutationPreorder> = lattice
        .upper_covers(i)
        .iter()
        .map(|&z| lattice.element(z))
        .collect();
    ensure!(
        covers.iter().collect::<HashSet<_>>() == hasse,
        "covers_up disagrees with containment"
    );

    // Merging {1,3} with {5} forces {4} against {1,3,5}, in both directions.
    let de: Vec<_> = covers.iter().filter(|z| together(z, 1, 5)).collect();
    ensure!(de.len() == 2, "{} covers merge 1 and 5", de.len());
    ensure!(
        de.iter().any(|z| strictly_below(z, 4, 1)) && de.iter().any(|z| strictly_below(z, 1, 4)),
        "the two covers merging 1 and 5 do not orient {{4}} both ways"
    );

    // The cover merging {2} and {5} in which {1,3} and {4} are comparable
    // but not by a cover. Merging them there jumps two ranks.
    let f = covers
        .iter()
        .filter(|z| together(z, 2, 5))
        .find(|z| {
            let bo = z.block_order();
            let (a, b) = (bo.block_of[0], bo.block_of[3]);
            bo.comparable(a, b) && !bo.combinable(a, b)
        })
        .ok_or("no cover merging 2 and 5 has {1,3} and {4} comparable")?;
    let mut forced = f.as_preorder().clone();
    forced.add(1, 4);
    forced.add(4, 1);
    ensure!(
        forced.block_count() == 1,
        "merging {{1,3}} and {{4}} in {f} keeps {} blocks",
        forced.block_count()
    );
    ensure!(
        covers_up(f).iter().all(|z| !together(z, 1, 4)),
        "some cover of {f} merges {{1,3}} and {{4}}"
    );
    Ok(format!("two-rank merge from {f}"))
}

fn covers_of_small_example() -> Outcome {
    let l = build_lattice(5).map_err(|e| e.to_string())?;
    let mut notes = Vec::new();
    for word in ["23145", "31245"] {
        let omega = mu(&perm(word));
        let note = check_cover_example(&omega, &l).map_err(|e| format!("ω = μ({word}): {e}"))?;
        notes.push(format!("μ({word}) {note}"));
    }
    Ok(notes.join("; "))
}

// ---------------------------------------------------------------- 8

fn el_labeling() -> Outcome {
    let mut intervals = 0u64;
    let mut chains = 0u64;
    for n in 1..=5 {
        let l = build_lattice(n).map_err(|e| e.to_string())?;
        let labels = hasse_labels(&l);
        ensure!(
            labels.values().all(|&s| (2..=n).contains(&s)),
            "n={n}: label out of [2, n]"
        );
        for bottom in 0..l.len() {
            for top in (0..l.len()).filter(|&t| l.leq(bottom, t)) {
                let all = maximal_chains_indexed(&l, &labels, bottom, top);
                let increasing: Vec<_> = all
                    .iter()
                    .filter(|(_, word)| word.windows(2).all(|w| w[0] <= w[1]))
                    .collect();
                let name = || format!("n={n} [{}, {}]", l.permutation(bottom), l.permutation(top));
                ensure!(
                    increasing.len() == 1,
                    "{}: {} increasing chains",
                    name(),
                    increasing.len()
                );
                let (path, word) = increasing[0];
                ensure!(
                    all.iter().filter(|(_, w)| w <= word).count() == 1,
                    "{}: increasing chain is not the strict lexicographic minimum",
                    name()
                );
                let greedy = increasing_chain(l.element(bottom), l.element(top))
                    .map_err(|e| e.to_string())?;
                let greedy_path: Vec<usize> = greedy
                    .elements
                    .iter()
                    .map(|w| l.index_of(w).unwrap())
                    .collect();
                ensure!(&greedy_path == path, "{}: greedy chain differs", name());
                ensure!(
                    &greedy.label_word() == word,
                    "{}: greedy labels differ",
                    name()
                );
                intervals += 1;
                chains += all.len() as u64;
            }
        }
    }
    let l4 = build_lattice(4).unwrap();
    let word = increasing_chain(l4.element(l4.bottom()), l4.element(l4.top()))
        .unwrap()
        .label_word();
    ensure!(word == vec![2, 2, 2], "S4 increasing word {word:?}");
    Ok(format!("{intervals} intervals, {chains} maximal chains"))
}

// ---------------------------------------------------------------- 9

/// Indecomposable permutations: a(n) = n! - sum_{k<n} k! a(n-k).
fn indecomposable_counts(max: usize) -> Vec<i64> {
    let mut a = vec![0i64; max + 1];
    for n in 1..=max {
        a[n] = factorial(n) as i64 - (1..n).map(|k| factorial(k) as i64 * a[n - k]).sum::<i64>();
    }
    a
}

fn mobius_agreement() -> Outcome {
    let expected = indecomposable_counts(6);
    ensure!(
        expected[1..] == [1, 1, 3, 13, 71, 461],
        "oracle sequence {expected:?}"
    );
    let mut intervals = 0;
    for n in 1..=5 {
        let l = build_lattice(n).map_err(|e| e.to_string())?;
        let labels = hasse_labels(&l);
        for bottom in 0..l.len() {
            let row = mobius_row_indexed(&l, bottom);
            for top in (0..l.len()).filter(|&t| l.leq(bottom, t)) {
                let d = count_decreasing_indexed(&l, &labels, bottom, top) as i64;
                let signed = if (l.rank(top) - l.rank(bottom)) % 2 == 0 {
                    d
                } else {
                    -d
                };
                ensure!(
                    signed == row[top],
                    "n={n}: chains {signed} vs recursion {}",
                    row[top]
                );
                intervals += 1;
            }
        }
    }
    let mut values = Vec::new();
    for n in 1..=6 {
        let l = build_lattice(n).map_err(|e| e.to_string())?;
        let full = mobius_row_indexed(&l, l.bottom())[l.top()];
        ensure!(
            full.abs() == expected[n],
            "n={n}: |μ(0,1)| = {}",
            full.abs()
        );
        if n == 4 {
            let d = count_decreasing_indexed(&l, &hasse_labels(&l), l.bottom(), l.top());
            ensure!(d == 13, "S4 has {d} decreasing chains");
        }
        values.push(full.abs().to_string());
    }
    Ok(format!(
        "{intervals} intervals; |μ(0,1)| = {}",
        values.join(",")
    ))
}

// ---------------------------------------------------------------- 10

fn sortable_noncrossing() -> Outcome {
    let catalan = [1usize, 1, 2, 5, 14, 42];
    let mut words = 0;
    for n in 1..=5 {
        let l = build_lattice(n).map_err(|e| e.to_string())?;
        let cox: Vec<_> = CoxeterElement::all(n).collect();
        ensure!(
            cox.len() as u64 == factorial(n - 1).max(1),
            "n={n}: {} Coxeter words",
            cox.len()
        );
        for c in cox {
            let sortable: HashSet<usize> = c_sortables(&c)
                .iter()
                .map(|p| l.index_of_permutation(p).unwrap())
                .collect();
            let nc: HashSet<usize> = noncrossing_preorders(&c)
                .map_err(|e| e.to_string())?
                .iter()
                .map(|w| l.index_of(w).unwrap())
                .collect();
            ensure!(
                sortable.len() == catalan[n],
                "n={n} c={c}: {} sortables",
                sortable.len()
            );
            ensure!(
                sortable == nc,
                "n={n} c={c}: sortables and noncrossing pre-orders differ"
            );
            words += 1;
        }
    }
    Ok(format!("{words} Coxeter words; counts 1,2,5,14,42"))
}

// ---------------------------------------------------------------- 11

fn extreme_words_order_by_inclusion() -> Outcome {
    let mut checked = 0;
    for n in 1..=6 {
        for (c, reversed) in [
            (CoxeterElement::ascending(n), false),
            (CoxeterElement::descending(n), true),
        ] {
            for w in noncrossing_preorders(&c).map_err(|e| e.to_string())? {
                let bo = w.block_order();
                for a in 0..bo.len() {
                    for b in 0..bo.len() {
                        if a == b {
                            continue;
                        }
                        let (ba, bb) = (&bo.blocks[a], &bo.blocks[b]);
                        let inside = |x: &shard_order::Block, y: &shard_order::Block| {
                            y.min <= x.min && x.max <= y.max
                        };
                        let expect = if reversed {
                            inside(bb, ba)
                        } else {
                            inside(ba, bb)
                        };
                        ensure!(bo.less(a, b) == expect, "n={n} c={c}: {ba} vs {bb} in {w}");
                    }
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} noncrossing pre-orders"))
}

// ---------------------------------------------------------------- 12

fn sublattice_closure() -> Outcome {
    let mut words = 0;
    for n in 1..=5 {
        let l = build_lattice(n).map_err(|e| e.to_string())?;
        for c in CoxeterElement::all(n) {
            let nc: Vec<usize> = noncrossing_preorders(&c)
                .map_err(|e| e.to_string())?
                .iter()
                .map(|w| l.index_of(w).unwrap())
                .collect();
            let set: HashSet<usize> = nc.iter().copied().collect();
            for &a in &nc {
                for &b in &nc {
                    ensure!(
                        set.contains(&l.join(a, b)) && set.contains(&l.meet(a, b)),
                        "n={n} c={c}: not closed at {} {}",
                        l.permutation(a),
                        l.permutation(b)
                    );
                }
            }
            words += 1;
        }
    }
    Ok(format!("{words} Coxeter words"))
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion {
            id: 1,
            name: "bijection round trip, n<=6",
            budget: secs(1),
            run: round_trip,
        },
        Criterion {
            id: 2,
            name: "geometric oracle, n<=6",
            budget: secs(5),
            run: geometric_oracle,
        },
        Criterion {
            id: 3,
            name: "shard census",
            budget: secs(5),
            run: shard_census,
        },
        Criterion {
            id: 4,
            name: "shard intersections equal the image of mu, n=4",
            budget: secs(10),
            run: psi_equals_omega,
        },
        Criterion {
            id: 5,
            name: "rank law, n<=6",
            budget: secs(60),
            run: rank_law,
        },
        Criterion {
            id: 6,
            name: "lattice laws, atomic, coatomic, n<=5",
            budget: secs(60),
            run: lattice_laws,
        },
        Criterion {
            id: 7,
            name: "eight covers, both forced orientations, no two-rank merge",
            budget: secs(30),
            run: covers_of_small_example,
        },
        Criterion {
            id: 8,
            name: "EL-labeling, exhaustive, n<=5",
            budget: secs(60),
            run: el_labeling,
        },
        Criterion {
            id: 9,
            name: "Mobius agreement and indecomposable counts",
            budget: secs(60),
            run: mobius_agreement,
        },
        Criterion {
            id: 10,
            name: "sortable equals noncrossing, n<=5",
            budget: secs(60),
            run: sortable_noncrossing,
        },
        Criterion {
            id: 11,
            name: "extreme Coxeter words order by inclusion, n<=6",
            budget: secs(60),
            run: extreme_words_order_by_inclusion,
        },
        Criterion {
            id: 12,
            name: "noncrossing pre-orders form a sublattice, n<=5",
            budget: secs(60),
            run: sublattice_closure,
        },
    ];
    let mut failed = 0;
    for c in criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if took > c.budget => {
                Err(format!("{detail}; over budget of {:?}", c.budget))
            }
            other => other,
        };
        match outcome {
            Ok(detail) => println!(
                "PASS {:>2} {} ({detail}; {:.2}s)",
                c.id,
                c.name,
                took.as_secs_f64()
            ),
            Err(why) => {
                failed += 1;
                println!(
                    "FAIL {:>2} {} ({why}; {:.2}s)",
                    c.id,
                    c.name,
                    took.as_secs_f64()
                );
            }
        }
    }
    if failed == 0 {
        println!("acceptance: 12/12 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 12 criteria failed");
        ExitCode::FAILURE
    }
}
