//! 2-closures, Babai's conjugacy criterion for CI-graphs, the brute-force
//! definitional oracle, DCI⁽²⁾ pairs, and seeded CI scans.

use std::collections::HashSet;
use std::time::Instant;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::aut::{self, automorphism_group_with_known, conjugating_element};
use crate::error::{Error, Result};
use crate::graph::{cayley, ColoredDigraph};
use crate::group::FiniteGroup;
use crate::perm::{PermGroup, Permutation, UnionFind};

/// Largest group the definitional oracle accepts.
pub const DEFINITIONAL_MAX_ORDER: usize = 16;
/// Largest group `dci_scan` will enumerate exhaustively.
pub const EXHAUSTIVE_MAX_ORDER: usize = 8;
/// Largest degree for the pairwise 2-closure oracle.
pub const LITERAL_CLOSURE_MAX_DEGREE: usize = 8;

/// Colored digraph with one color per orbital of `h`.
pub fn orbital_graph(h: &PermGroup) -> ColoredDigraph {
    let n = h.degree();
    let mut uf = UnionFind::new(n * n);
    for g in h.generators() {
        for a in 0..n {
            for b in 0..n {
                uf.union(a * n + b, g.apply(a) * n + g.apply(b));
            }
        }
    }
    let mut label = vec![u32::MAX; n * n];
    let mut next = 0u32;
    let mut colors = vec![0u32; n * n];
    for x in 0..n * n {
        let r = uf.find(x);
        if label[r] == u32::MAX {
            label[r] = next;
            next += 1;
        }
        colors[x] = label[r];
    }
    ColoredDigraph::from_fn(n, |a, b| colors[a * n + b])
}

/// `H⁽²⁾`: every permutation preserving each orbital of `h`.
pub fn two_closure(h: &PermGroup, cap: usize) -> Result<PermGroup> {
    let graph = orbital_graph(h);
    let known: Vec<Permutation> = h.generators().to_vec();
    let result = automorphism_group_with_known(&graph, &known, cap)?;
    if result.capped {
        return Err(Error::CapExceeded { cap });
    }
    Ok(result.group)
}

/// `H⁽²⁾` straight from the pairwise definition: `π` such that for all
/// points `a, b` some `g ∈ H` agrees with `π` on both. Scans all of `Sym(n)`.
pub fn two_closure_by_definition(h: &PermGroup) -> Result<PermGroup> {
    let n = h.degree();
    if n > LITERAL_CLOSURE_MAX_DEGREE {
        return Err(Error::OrderBound {
            order: n,
            bound: LITERAL_CLOSURE_MAX_DEGREE,
        });
    }
    let elems = h.require_elements()?;
    // agree[a][b] = set of (a^g, b^g)
    let mut agree = vec![false; n * n * n * n];
    for g in elems {
        for a in 0..n {
            for b in 0..n {
                agree[((a * n + b) * n + g.apply(a)) * n + g.apply(b)] = true;
            }
        }
    }
    let sym = PermGroup::symmetric(n, usize::MAX)?;
    let mut members = Vec::new();
    for p in sym.require_elements()? {
        let ok =
            (0..n).all(|a| (0..n).all(|b| agree[((a * n + b) * n + p.apply(a)) * n + p.apply(b)]));
        if ok {
            members.push(p.clone());
        }
    }
    Ok(PermGroup::from_elements_unchecked(
        n,
        members.clone(),
        members,
    ))
}

/// Outcome of Babai's criterion on one Cayley graph.
#[derive(Clone, Debug)]
pub struct CiVerdict {
    pub is_ci: bool,
    /// Regular subgroups of `Aut(Cay(G, S))` isomorphic to `G`.
    pub regular_subgroups_found: usize,
    /// A regular subgroup with no conjugator onto `Ĝ`; only set for a
    /// completed non-CI verdict.
    pub failing_subgroup: Option<PermGroup>,
    /// Each found subgroup with some `μ ∈ Aut` mapping it onto `Ĝ`.
    pub conjugator_witnesses: Vec<(PermGroup, Permutation)>,
    /// Why no verdict was reached. A skipped verdict is never CI.
    pub skipped: Option<String>,
    pub aut_order: Option<u128>,
    pub note: Option<String>,
}

impl CiVerdict {
    fn trivial(note: &str, aut_order: Option<u128>) -> CiVerdict {
        CiVerdict {
            is_ci: true,
            regular_subgroups_found: 0,
            failing_subgroup: None,
            conjugator_witnesses: Vec::new(),
            skipped: None,
            aut_order,
            note: Some(note.to_string()),
        }
    }

    pub fn is_skipped(&self) -> bool {
        self.skipped.is_some()
    }

    /// Status word: `CI`, `not CI`, or `skipped`.
    pub fn status(&self) -> &'static str {
        match (self.is_ci, self.is_skipped()) {
            (_, true) => "skipped",
            (true, false) => "CI",
            (false, false) => "not CI",
        }
    }

    pub fn to_json(&self) -> Value {
        let gens = |g: &PermGroup| -> Vec<String> {
            g.generators().iter().map(ToString::to_string).collect()
        };
        json!({
            "status": self.status(),
            "is_ci": self.is_ci,
            "regular_subgroups_found": self.regular_subgroups_found,
            "aut_order": self.aut_order.map(|o| o.to_string()),
            "failing_subgroup": self.failing_subgroup.as_ref().map(gens),
            "conjugator_witnesses": self.conjugator_witnesses.iter().map(|(h, mu)| json!({
                "subgroup": gens(h),
                "conjugator": mu.to_string(),
            })).collect::<Vec<_>>(),
            "skipped": self.skipped,
            "note": self.note,
        })
    }
}

fn validate_connection(group: &FiniteGroup, conn: &[usize]) -> Result<Vec<usize>> {
    let mut s = conn.to_vec();
    s.sort_unstable();
    s.dedup();
    for &x in &s {
        if x >= group.order() {
            return Err(Error::UnknownElement(x.to_string()));
        }
        if x == group.identity() {
            return Err(Error::IdentityInConnectionSet);
        }
    }
    Ok(s)
}

/// Babai's criterion: `Cay(G, S)` is CI iff every regular subgroup of its
/// automorphism group isomorphic to `G` is conjugate to `Ĝ` inside it.
pub fn is_ci_graph_babai(group: &FiniteGroup, conn: &[usize], cap: usize) -> Result<CiVerdict> {
    let s = validate_connection(group, conn)?;
    let n = group.order();
    if s.is_empty() {
        return Ok(CiVerdict::trivial("empty graph", None));
    }
    if s.len() + 1 == n {
        return Ok(CiVerdict::trivial("complete graph", None));
    }
    let graph = cayley(group, &s)?;
    let ghat = group.right_regular_rep();
    let gens: Vec<Permutation> = ghat.generators().to_vec();
    let aut = automorphism_group_with_known(&graph, &gens, cap)?;
    if aut.capped {
        let size = aut
            .order
            .map_or_else(|| "more than 2^128".to_string(), |o| o.to_string());
        return Ok(CiVerdict {
            is_ci: false,
            regular_subgroups_found: 0,
            failing_subgroup: None,
            conjugator_witnesses: Vec::new(),
            skipped: Some(format!(
                "automorphism group too large: order {size} exceeds cap {cap}"
            )),
            aut_order: aut.order,
            note: None,
        });
    }
    let a = &aut.group;
    if aut.order == Some(n as u128) {
        // A = Ĝ is the only regular subgroup
        return Ok(CiVerdict {
            is_ci: true,
            regular_subgroups_found: 1,
            failing_subgroup: None,
            conjugator_witnesses: vec![(ghat, Permutation::identity(n))],
            skipped: None,
            aut_order: aut.order,
            note: None,
        });
    }
    let target = ghat.require_elements()?;
    let mut seen: HashSet<Vec<Permutation>> = HashSet::new();
    let mut witnesses = Vec::new();
    let mut failing = None;
    for rep in aut::regular_subgroup_reps(a, group)? {
        if seen.contains(rep.require_elements()?) {
            continue;
        }
        let orbit = aut::conjugation_orbit(a, &rep)?;
        // rep^x = Ĝ, and member = rep^y, so member^(y⁻¹x) = Ĝ
        let to_ghat = orbit
            .iter()
            .find(|(m, _)| m.elements() == Some(target))
            .map(|(_, x)| x.clone());
        for (member, y) in orbit {
            seen.insert(member.require_elements()?.to_vec());
            match &to_ghat {
                Some(x) => {
                    let mu = y.inverse().then(x);
                    witnesses.push((member, mu));
                }
                None => {
                    if failing.is_none() {
                        failing = Some(member);
                    }
                }
            }
        }
    }
    witnesses.sort_by(|p, q| p.0.elements().cmp(&q.0.elements()));
    Ok(CiVerdict {
        is_ci: failing.is_none(),
        regular_subgroups_found: seen.len(),
        failing_subgroup: failing,
        conjugator_witnesses: witnesses,
        skipped: None,
        aut_order: aut.order,
        note: None,
    })
}

/// Orbit of the subset `s` under `Aut(G)`, as sorted subsets.
pub fn automorphism_orbit(group: &FiniteGroup, s: &[usize]) -> Result<HashSet<Vec<usize>>> {
    let mut out = HashSet::new();
    for mu in group.automorphisms()? {
        out.insert(group.apply_automorphism(&mu, s)?);
    }
    Ok(out)
}

/// The definition of a CI-graph checked by brute force: every `T` with
/// `Cay(G, T) ≅ Cay(G, S)` is an automorphic image of `S`.
pub fn is_ci_graph_definitional(group: &FiniteGroup, conn: &[usize]) -> Result<bool> {
    let n = group.order();
    if n > DEFINITIONAL_MAX_ORDER {
        return Err(Error::OrderBound {
            order: n,
            bound: DEFINITIONAL_MAX_ORDER,
        });
    }
    let s = validate_connection(group, conn)?;
    let orbit = automorphism_orbit(group, &s)?;
    let graph = cayley(group, &s)?;
    let others: Vec<usize> = (0..n).filter(|&x| x != group.identity()).collect();
    for mask in 0u32..(1 << others.len()) {
        if mask.count_ones() as usize != s.len() {
            continue;
        }
        let t: Vec<usize> = (0..others.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| others[i])
            .collect();
        if orbit.contains(&t) {
            continue;
        }
        if aut::are_isomorphic(&graph, &cayley(group, &t)?)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Some `σ ∈ ⟨H1, H2⟩⁽²⁾` with `H1^σ = H2`.
pub fn is_dci2_pair(h1: &PermGroup, h2: &PermGroup, cap: usize) -> Result<Option<Permutation>> {
    if h1.degree() != h2.degree() {
        return Err(Error::DegreeMismatch {
            left: h1.degree(),
            right: h2.degree(),
        });
    }
    if !h1.is_regular()? || !h2.is_regular()? {
        return Err(Error::NotRegular);
    }
    let gens: Vec<Permutation> = h1
        .generators()
        .iter()
        .chain(h2.generators())
        .cloned()
        .collect();
    let joined = PermGroup::generate(h1.degree(), gens, cap)?;
    let closure = two_closure(&joined, cap)?;
    conjugating_element(&closure, h1, h2)
}

/// How `dci_scan` picks connection sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanMode {
    /// Every subset of `G∖{1}`.
    Exhaustive,
    /// `count` subsets drawn from a ChaCha8 stream seeded by `seed`.
    Sample { count: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanSkip {
    pub conn: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanFailure {
    pub conn: String,
    /// Generators of a regular subgroup not conjugate to `Ĝ`.
    pub failing_subgroup: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub group: String,
    pub mode: String,
    pub seed: Option<u64>,
    pub total: usize,
    pub ci: usize,
    pub skipped: Vec<ScanSkip>,
    pub failures: Vec<ScanFailure>,
    pub elapsed_ms: u64,
}

impl ScanReport {
    pub fn skip_rate(&self) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            self.skipped.len() as f64 / self.total as f64
        }
    }
}

/// Subsets for a sampled scan. Each draw walks `G∖{1}` in index order and
/// keeps an element iff the top bit of the next `u64` is set.
pub fn sample_connection_sets(group: &FiniteGroup, count: usize, seed: u64) -> Vec<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            (0..group.order())
                .filter(|&x| x != group.identity())
                .filter(|_| rng.next_u64() >> 63 == 1)
                .collect()
        })
        .collect()
}

fn all_connection_sets(group: &FiniteGroup) -> Vec<Vec<usize>> {
    let others: Vec<usize> = (0..group.order())
        .filter(|&x| x != group.identity())
        .collect();
    (0u64..(1 << others.len()))
        .map(|mask| {
            (0..others.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| others[i])
                .collect()
        })
        .collect()
}

/// Babai's test over many connection sets, evaluated in parallel. The report
/// lists skips and failures sorted by connection-set encoding.
pub fn dci_scan(group: &FiniteGroup, mode: ScanMode, cap: usize) -> Result<ScanReport> {
    let start = Instant::now();
    let (sets, mode_name, seed) = match mode {
        ScanMode::Exhaustive => {
            if group.order() > EXHAUSTIVE_MAX_ORDER {
                return Err(Error::OrderBound {
                    order: group.order(),
                    bound: EXHAUSTIVE_MAX_ORDER,
                });
            }
            (all_connection_sets(group), "exhaustive", None)
        }
        ScanMode::Sample { count, seed } => (
            sample_connection_sets(group, count, seed),
            "sample",
            Some(seed),
        ),
    };
    let verdicts: Vec<(String, CiVerdict)> = sets
        .par_iter()
        .map(|s| Ok((group.format_subset(s), is_ci_graph_babai(group, s, cap)?)))
        .collect::<Result<_>>()?;
    let mut ci = 0;
    let mut skipped = Vec::new();
    let mut failures = Vec::new();
    for (conn, v) in verdicts {
        if let Some(reason) = v.skipped {
            skipped.push(ScanSkip { conn, reason });
        } else if v.is_ci {
            ci += 1;
        } else {
            let failing_subgroup = v
                .failing_subgroup
                .map(|h| h.generators().iter().map(ToString::to_string).collect())
                .unwrap_or_default();
            failures.push(ScanFailure {
                conn,
                failing_subgroup,
            });
        }
    }
    skipped.sort_by(|a, b| a.conn.cmp(&b.conn));
    failures.sort_by(|a, b| a.conn.cmp(&b.conn));
    Ok(ScanReport {
        group: group.spec().to_string(),
        mode: mode_name.to_string(),
        seed,
        total: sets.len(),
        ci,
        skipped,
        failures,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}
