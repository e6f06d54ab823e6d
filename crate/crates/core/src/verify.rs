//! Self-checking suites run by `shard-order verify`.
//!
//! Each suite sweeps one `n` exhaustively and reports how many checks ran
//! and which failed.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::Error;
use crate::lattice::{build_lattice_capped, covers_up, join, OmegaLattice};
use crate::perm::Permutation;
use crate::preorder::{lambda, mu};
use crate::shard::preorder_via_shards;
use crate::shelling::{
    count_decreasing_indexed, hasse_labels, increasing_chain, mobius_row_indexed,
};
use crate::sortable::{c_sortables, noncrossing_preorders, CoxeterElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Roundtrip,
    Geometry,
    Lattice,
    El,
    Mobius,
    Sortable,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Roundtrip,
        Suite::Geometry,
        Suite::Lattice,
        Suite::El,
        Suite::Mobius,
        Suite::Sortable,
    ];

    /// Largest `n` the suite runs at without forcing.
    pub fn cap(self) -> usize {
        match self {
            Suite::Roundtrip | Suite::Geometry => 9,
            Suite::Lattice | Suite::Sortable => 6,
            Suite::El | Suite::Mobius => 7,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Suite::Roundtrip => "roundtrip",
            Suite::Geometry => "geometry",
            Suite::Lattice => "lattice",
            Suite::El => "el",
            Suite::Mobius => "mobius",
            Suite::Sortable => "sortable",
        };
        f.write_str(s)
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.to_string() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub n: usize,
    pub passed: bool,
    pub checks: u64,
    pub failures: Vec<String>,
    /// Headline numbers, e.g. the full-interval Möbius value.
    pub facts: BTreeMap<String, i64>,
}

struct Tally {
    checks: u64,
    failures: Vec<String>,
    facts: BTreeMap<String, i64>,
}

impl Tally {
    fn new() -> Self {
        Self {
            checks: 0,
            failures: Vec::new(),
            facts: BTreeMap::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        // keep reports bounded
        if !ok && self.failures.len() < 50 {
            self.failures.push(what());
        }
    }

    fn finish(self, suite: Suite, n: usize) -> SuiteReport {
        SuiteReport {
            suite,
            n,
            passed: self.failures.is_empty(),
            checks: self.checks,
            failures: self.failures,
            facts: self.facts,
        }
    }
}

/// Runs one suite at size `n`. Refuses sizes above the suite's cap unless
/// `force` is set.
pub fn run_suite(suite: Suite, n: usize, force: bool) -> Result<SuiteReport, Error> {
    if n == 0 {
        return Err(Error::InvalidPermutation("n must be positive".into()));
    }
    if !force && n > suite.cap() {
        return Err(Error::SizeCap {
            n,
            cap: suite.cap(),
        });
    }
    let mut t = Tally::new();
    match suite {
        Suite::Roundtrip => roundtrip(n, &mut t),
        Suite::Geometry => geometry(n, &mut t),
        Suite::Lattice => lattice_laws(&build_lattice_capped(n, usize::MAX)?, &mut t),
        Suite::El => el(&build_lattice_capped(n, usize::MAX)?, &mut t),
        Suite::Mobius => mobius(&build_lattice_capped(n, usize::MAX)?, &mut t),
        Suite::Sortable => sortable(&build_lattice_capped(n, usize::MAX)?, &mut t),
    }
    Ok(t.finish(suite, n))
}

fn roundtrip(n: usize, t: &mut Tally) {
    for p in Permutation::all(n) {
        let back = lambda(&mu(&p));
        t.check(back == p, || format!("λ(μ({p})) = {back}"));
    }
}

fn geometry(n: usize, t: &mut Tally) {
    let mut agree = 0;
    let mut seen = HashSet::new();
    for p in Permutation::all(n) {
        let q = preorder_via_shards(&p);
        let ok = q == *mu(&p).as_preorder();
        agree += ok as i64;
        t.check(ok, || format!("shard route disagrees with μ at {p}"));
        t.check(seen.insert(q), || {
            format!("shard route not injective at {p}")
        });
    }
    t.facts.insert("agreements".into(), agree);
}

fn lattice_laws(l: &OmegaLattice, t: &mut Tally) {
    let n = l.n();
    let len = l.len();
    for i in 0..len {
        let w = l.element(i);
        t.check(w.rank() == n - w.block_count(), || {
            format!("rank law at {}", l.permutation(i))
        });
        let mut generated: Vec<usize> = covers_up(w).iter().filter_map(|z| l.index_of(z)).collect();
        generated.sort_unstable();
        t.check(generated == l.upper_covers(i), || {
            format!(
                "covers_up disagrees with the Hasse diagram at {}",
                l.permutation(i)
            )
        });
        for &z in l.upper_covers(i) {
            t.check(l.rank(z) == l.rank(i) + 1, || {
                format!(
                    "cover {} -> {} skips a rank",
                    l.permutation(i),
                    l.permutation(z)
                )
            });
        }
    }
    for a in 0..len {
        for b in 0..len {
            let (j, m) = (l.try_join(a, b), l.try_meet(a, b));
            t.check(j.is_some() && m.is_some(), || {
                format!(
                    "missing join/meet for {} and {}",
                    l.permutation(a),
                    l.permutation(b)
                )
            });
            if let Some(j) = j {
                t.check(l.element(j) == &join(l.element(a), l.element(b)), || {
                    format!(
                        "join is not the closed union at {} {}",
                        l.permutation(a),
                        l.permutation(b)
                    )
                });
            }
        }
    }
    let atoms = l.atoms();
    let coatoms = l.coatoms();
    for i in 0..len {
        let joined = atoms
            .iter()
            .filter(|&&a| l.leq(a, i))
            .fold(l.bottom(), |acc, &a| l.join(acc, a));
        t.check(joined == i, || {
            format!("{} is not a join of atoms", l.permutation(i))
        });
        let met = coatoms
            .iter()
            .filter(|&&c| l.leq(i, c))
            .fold(l.top(), |acc, &c| l.meet(acc, c));
        t.check(met == i, || {
            format!("{} is not a meet of coatoms", l.permutation(i))
        });
    }
    t.facts.insert("elements".into(), len as i64);
    t.facts
        .insert("hasse_edges".into(), l.hasse_edges().len() as i64);
}

/// EL checks by dynamic programming over the Hasse diagram: the number of
/// weakly increasing chains, the lexicographically least label word and
/// how many chains carry it.
fn el(l: &OmegaLattice, t: &mut Tally) {
    let labels = hasse_labels(l);
    for &label in labels.values() {
        t.check((2..=l.n()).contains(&label), || {
            format!("label {label} out of range")
        });
    }
    for top in 0..l.len() {
        let mut inc_memo = HashMap::new();
        let mut lex_memo = HashMap::new();
        for bottom in (0..l.len()).filter(|&b| l.leq(b, top)) {
            let increasing = count_increasing(l, &labels, bottom, 0, top, &mut inc_memo);
            t.check(increasing == 1, || {
                format!(
                    "[{}, {}] has {increasing} weakly increasing chains",
                    l.permutation(bottom),
                    l.permutation(top)
                )
            });
            let (word, multiplicity) = lex_least(l, &labels, bottom, top, &mut lex_memo);
            t.check(multiplicity == 1, || {
                format!(
                    "lexicographically least word of [{}, {}] is shared",
                    l.permutation(bottom),
                    l.permutation(top)
                )
            });
            let greedy =
                increasing_chain(l.element(bottom), l.element(top)).map(|c| c.label_word());
            t.check(greedy.as_ref() == Ok(&word), || {
                format!(
                    "greedy chain of [{}, {}] is not lexicographically least",
                    l.permutation(bottom),
                    l.permutation(top)
                )
            });
            t.check(word.windows(2).all(|w| w[0] <= w[1]), || {
                format!(
                    "least word of [{}, {}] decreases",
                    l.permutation(bottom),
                    l.permutation(top)
                )
            });
        }
    }
    let mut memo = HashMap::new();
    t.facts.insert(
        "full_increasing".into(),
        count_increasing(l, &labels, l.bottom(), 0, l.top(), &mut memo) as i64,
    );
    t.facts.insert(
        "full_decreasing".into(),
        count_decreasing_indexed(l, &labels, l.bottom(), l.top()) as i64,
    );
}

fn count_increasing(
    l: &OmegaLattice,
    labels: &HashMap<(usize, usize), usize>,
    x: usize,
    floor: usize,
    top: usize,
    memo: &mut HashMap<(usize, usize), u64>,
) -> u64 {
    if x == top {
        return 1;
    }
    if let Some(&v) = memo.get(&(x, floor)) {
        return v;
    }
    let mut total = 0;
    for &z in l.upper_covers(x) {
        let label = labels[&(x, z)];
        if label >= floor && l.leq(z, top) {
            total += count_increasing(l, labels, z, label, top, memo);
        }
    }
    memo.insert((x, floor), total);
    total
}

fn lex_least(
    l: &OmegaLattice,
    labels: &HashMap<(usize, usize), usize>,
    x: usize,
    top: usize,
    memo: &mut HashMap<usize, (Vec<usize>, u64)>,
) -> (Vec<usize>, u64) {
    if x == top {
        return (Vec::new(), 1);
    }
    if let Some(v) = memo.get(&x) {
        return v.clone();
    }
    let mut best: Option<(Vec<usize>, u64)> = None;
    for &z in l.upper_covers(x) {
        if !l.leq(z, top) {
            continue;
        }
        let (rest, count) = lex_least(l, labels, z, top, memo);
        let mut word = vec![labels[&(x, z)]];
        word.extend(rest);
        best = match best {
            None => Some((word, count)),
            Some((w, _)) if word < w => Some((word, count)),
            Some((w, c)) if word == w => Some((w, c + count)),
            keep => keep,
        };
    }
    let out = best.expect("a strict interval has a cover below its top");
    memo.insert(x, out.clone());
    out
}

fn mobius(l: &OmegaLattice, t: &mut Tally) {
    let labels = hasse_labels(l);
    for bottom in 0..l.len() {
        let row = mobius_row_indexed(l, bottom);
        for top in (0..l.len()).filter(|&z| l.leq(bottom, z)) {
            let count = count_decreasing_indexed(l, &labels, bottom, top) as i64;
            let signed = if (l.rank(top) - l.rank(bottom)).is_multiple_of(2) {
                count
            } else {
                -count
            };
            t.check(signed == row[top], || {
                format!(
                    "μ[{}, {}]: chains give {signed}, recursion gives {}",
                    l.permutation(bottom),
                    l.permutation(top),
                    row[top]
                )
            });
        }
    }
    let full = mobius_row_indexed(l, l.bottom())[l.top()];
    let indecomposable = Permutation::all(l.n())
        .filter(|p| p.is_indecomposable())
        .count() as i64;
    t.check(full.abs() == indecomposable, || {
        format!(
            "|μ(0,1)| = {} but {indecomposable} indecomposable permutations",
            full.abs()
        )
    });
    t.facts.insert("full_mobius".into(), full);
}

fn catalan(n: usize) -> u64 {
    // C_n = binom(2n, n) / (n + 1)
    let mut c = 1u64;
    for k in 0..n as u64 {
        c = c * 2 * (2 * k + 1) / (k + 2);
    }
    c
}

fn sortable(l: &OmegaLattice, t: &mut Tally) {
    let n = l.n();
    for c in CoxeterElement::all(n) {
        let image: HashSet<usize> = c_sortables(&c)
            .iter()
            .map(|p| l.index_of_permutation(p).expect("μ(p) is in the lattice"))
            .collect();
        t.check(image.len() as u64 == catalan(n), || {
            format!(
                "c = {c}: {} sortables, expected {}",
                image.len(),
                catalan(n)
            )
        });
        let noncrossing: Result<HashSet<usize>, Error> = noncrossing_preorders(&c).map(|ws| {
            ws.iter()
                .map(|w| {
                    l.index_of(w)
                        .expect("noncrossing pre-orders lie in the lattice")
                })
                .collect()
        });
        match noncrossing {
            Ok(nc) => {
                t.check(nc == image, || {
                    format!("c = {c}: sortables and noncrossing pre-orders differ")
                });
            }
            Err(e) => t.check(false, || format!("c = {c}: {e}")),
        }
        for &a in &image {
            for &b in &image {
                t.check(
                    image.contains(&l.join(a, b)) && image.contains(&l.meet(a, b)),
                    || {
                        format!(
                            "c = {c}: not closed at {} {}",
                            l.permutation(a),
                            l.permutation(b)
                        )
                    },
                );
            }
        }
    }
    t.facts.insert("catalan".into(), catalan(n) as i64);
}
