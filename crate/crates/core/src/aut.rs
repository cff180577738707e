//! Automorphisms and isomorphisms of colored digraphs by individualization
//! and refinement, plus regular-subgroup and conjugacy searches inside an
//! enumerated permutation group.
//!
//! Refinement is color-degree refinement (1-dimensional Weisfeiler–Leman) on
//! ordered partitions. Each vertex's signature counts, per current cell, the
//! arcs of every (out-color, in-color) pair; cells split by signature and the
//! pieces are ordered by signature, so refinement commutes with relabelling.
//! Branching always happens on the first smallest non-singleton cell.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::ColoredDigraph;
use crate::group::{FiniteGroup, HomSearch};
use crate::perm::{PermGroup, Permutation};

/// Default bound on the automorphism-group size that will be enumerated.
pub const DEFAULT_AUT_CAP: usize = 250_000;
/// Largest graph the search accepts.
pub const MAX_SEARCH_VERTICES: usize = 64;

/// Graph recoded so that every off-diagonal entry holds the index of its
/// `(color(u, v), color(v, u))` pair.
struct Coded {
    n: usize,
    diag: Vec<u32>,
    pair: Vec<u32>,
}

fn encode(graphs: &[&ColoredDigraph]) -> (Vec<Coded>, usize) {
    let mut book: HashMap<(u32, u32), u32> = HashMap::new();
    let mut keys: Vec<(u32, u32)> = Vec::new();
    for g in graphs {
        for u in 0..g.n() {
            for v in 0..g.n() {
                if u != v {
                    keys.push((g.color(u, v), g.color(v, u)));
                }
            }
        }
    }
    keys.sort_unstable();
    keys.dedup();
    for (i, k) in keys.into_iter().enumerate() {
        book.insert(k, i as u32);
    }
    let coded = graphs
        .iter()
        .map(|g| {
            let n = g.n();
            let mut pair = vec![0u32; n * n];
            for u in 0..n {
                for v in 0..n {
                    if u != v {
                        pair[u * n + v] = book[&(g.color(u, v), g.color(v, u))];
                    }
                }
            }
            Coded {
                n,
                diag: (0..n).map(|u| g.color(u, u)).collect(),
                pair,
            }
        })
        .collect();
    (coded, book.len().max(1))
}

#[derive(Clone, Debug)]
struct Partition {
    cells: Vec<Vec<u32>>,
    cell_of: Vec<u32>,
}

impl Partition {
    fn initial(diag: &[u32]) -> Partition {
        let mut colors: Vec<u32> = diag.to_vec();
        colors.sort_unstable();
        colors.dedup();
        let cells: Vec<Vec<u32>> = colors
            .iter()
            .map(|&c| {
                (0..diag.len() as u32)
                    .filter(|&v| diag[v as usize] == c)
                    .collect()
            })
            .collect();
        let mut p = Partition {
            cells,
            cell_of: vec![0; diag.len()],
        };
        p.reindex();
        p
    }

    fn reindex(&mut self) {
        for (i, cell) in self.cells.iter().enumerate() {
            for &v in cell {
                self.cell_of[v as usize] = i as u32;
            }
        }
    }

    fn is_discrete(&self) -> bool {
        self.cells.len() == self.cell_of.len()
    }

    fn target_cell(&self) -> Option<usize> {
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() > 1)
            .min_by_key(|(i, c)| (c.len(), *i))
            .map(|(i, _)| i)
    }

    fn individualize(&mut self, cell: usize, v: u32) {
        let rest: Vec<u32> = self.cells[cell]
            .iter()
            .copied()
            .filter(|&x| x != v)
            .collect();
        debug_assert_eq!(rest.len() + 1, self.cells[cell].len());
        self.cells[cell] = vec![v];
        self.cells.insert(cell + 1, rest);
        self.reindex();
    }

    /// Refines to the coarsest equitable partition below `self` and returns its
    /// quotient: per cell, its size followed by one member's signature.
    fn refine(&mut self, g: &Coded, npairs: usize) -> Vec<u32> {
        let n = g.n;
        loop {
            let k = self.cells.len();
            let width = k * npairs;
            let mut sig = vec![0u32; n * width];
            for v in 0..n {
                let row = &mut sig[v * width..(v + 1) * width];
                let pairs = &g.pair[v * n..(v + 1) * n];
                for w in 0..n {
                    if w != v {
                        row[self.cell_of[w] as usize * npairs + pairs[w] as usize] += 1;
                    }
                }
            }
            let sig_of = |v: u32| &sig[v as usize * width..(v as usize + 1) * width];
            let mut changed = false;
            let mut next: Vec<Vec<u32>> = Vec::with_capacity(k);
            for cell in &self.cells {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut sorted = cell.clone();
                sorted.sort_by(|&a, &b| sig_of(a).cmp(sig_of(b)).then(a.cmp(&b)));
                let mut start = 0;
                for i in 1..=sorted.len() {
                    if i == sorted.len() || sig_of(sorted[i]) != sig_of(sorted[start]) {
                        changed |= start != 0 || i != sorted.len();
                        next.push(sorted[start..i].to_vec());
                        start = i;
                    }
                }
            }
            if !changed {
                let mut quotient = Vec::with_capacity(k * (width + 1));
                for cell in &self.cells {
                    quotient.push(cell.len() as u32);
                    quotient.extend_from_slice(sig_of(cell[0]));
                }
                return quotient;
            }
            self.cells = next;
            self.reindex();
        }
    }
}

struct Level {
    part: Partition,
    quotient: Vec<u32>,
    target: Option<usize>,
    base: u32,
}

/// Search tree over the right graph, guided by the first path of the left graph.
struct Engine<'a> {
    left: &'a Coded,
    right: &'a Coded,
    npairs: usize,
    path: Vec<Level>,
}

impl<'a> Engine<'a> {
    fn new(left: &'a Coded, right: &'a Coded, npairs: usize) -> Self {
        let mut path = Vec::new();
        let mut part = Partition::initial(&left.diag);
        let mut quotient = part.refine(left, npairs);
        loop {
            let target = part.target_cell();
            let base = target.map_or(u32::MAX, |t| part.cells[t][0]);
            let next = target.map(|t| {
                let mut p = part.clone();
                p.individualize(t, base);
                p
            });
            path.push(Level {
                part,
                quotient,
                target,
                base,
            });
            match next {
                Some(mut p) => {
                    quotient = p.refine(left, npairs);
                    part = p;
                }
                None => break,
            }
        }
        Engine {
            left,
            right,
            npairs,
            path,
        }
    }

    /// Right-side child of `part` at `depth` after individualizing `v`, if its
    /// quotient matches the left path.
    fn child(&self, depth: usize, part: &Partition, v: u32) -> Option<Partition> {
        let t = self.path[depth].target?;
        let mut p = part.clone();
        p.individualize(t, v);
        let q = p.refine(self.right, self.npairs);
        (q == self.path[depth + 1].quotient).then_some(p)
    }

    fn leaf(&self, right: &Partition) -> Option<Permutation> {
        let left = &self.path.last().expect("path is non-empty").part;
        debug_assert!(left.is_discrete() && right.is_discrete());
        let n = self.left.n;
        let mut images = vec![0usize; n];
        for (lc, rc) in left.cells.iter().zip(&right.cells) {
            images[lc[0] as usize] = rc[0] as usize;
        }
        for u in 0..n {
            let pu = images[u];
            if self.left.diag[u] != self.right.diag[pu] {
                return None;
            }
            for v in 0..n {
                if u != v && self.left.pair[u * n + v] != self.right.pair[pu * n + images[v]] {
                    return None;
                }
            }
        }
        Some(Permutation::from_images(images).expect("leaf partitions are discrete"))
    }

    fn descend(&self, depth: usize, right: &Partition) -> Option<Permutation> {
        let level = &self.path[depth];
        let Some(t) = level.target else {
            return self.leaf(right);
        };
        if right.cells.len() != level.part.cells.len()
            || right.cells[t].len() != level.part.cells[t].len()
        {
            return None;
        }
        for &w in &right.cells[t] {
            if let Some(child) = self.child(depth, right, w) {
                if let Some(found) = self.descend(depth + 1, &child) {
                    return Some(found);
                }
            }
        }
        None
    }
}

fn check_size(graph: &ColoredDigraph) -> Result<()> {
    if graph.n() == 0 {
        return Err(Error::InvalidGraph("graph has no vertices".into()));
    }
    if graph.n() > MAX_SEARCH_VERTICES {
        return Err(Error::OrderBound {
            order: graph.n(),
            bound: MAX_SEARCH_VERTICES,
        });
    }
    Ok(())
}

fn orbit_of(point: usize, gens: &[&Permutation], n: usize) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[point] = true;
    let mut queue = VecDeque::from([point]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g.apply(x);
            if !seen[y] {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    seen
}

/// Automorphism group of a colored digraph.
#[derive(Clone, Debug)]
pub struct AutResult {
    /// Generated by the automorphisms found; enumerated unless `capped`.
    pub group: PermGroup,
    /// Exact order from the orbit lengths along the search path; `None` if it
    /// overflows `u128`.
    pub order: Option<u128>,
    /// True when the order exceeds the enumeration cap.
    pub capped: bool,
}

impl AutResult {
    pub fn generators(&self) -> &[Permutation] {
        self.group.generators()
    }
}

/// Generators and order of the color-preserving automorphism group of `graph`.
pub fn automorphism_group(graph: &ColoredDigraph, cap: usize) -> Result<AutResult> {
    automorphism_group_with_known(graph, &[], cap)
}

/// As [`automorphism_group`], seeded with automorphisms already known to
/// preserve the graph (for Cayley graphs, the right translations).
pub fn automorphism_group_with_known(
    graph: &ColoredDigraph,
    known: &[Permutation],
    cap: usize,
) -> Result<AutResult> {
    check_size(graph)?;
    let n = graph.n();
    let mut gens: Vec<Permutation> = Vec::new();
    for k in known {
        if !graph.preserved_by(k) {
            return Err(Error::InvalidGraph(format!(
                "seeded permutation {k} is not an automorphism"
            )));
        }
        if !k.is_identity() && !gens.contains(k) {
            gens.push(k.clone());
        }
    }
    let (coded, npairs) = encode(&[graph]);
    let engine = Engine::new(&coded[0], &coded[0], npairs);
    let mut order: Option<u128> = Some(1);
    for d in (0..engine.path.len()).rev() {
        let level = &engine.path[d];
        let Some(t) = level.target else { continue };
        let base = level.base as usize;
        let prefix: Vec<usize> = engine.path[..d].iter().map(|l| l.base as usize).collect();
        let fixes_prefix = |g: &Permutation| prefix.iter().all(|&b| g.apply(b) == b);
        let mut stab: Vec<&Permutation> = gens.iter().filter(|g| fixes_prefix(g)).collect();
        let mut orbit = orbit_of(base, &stab, n);
        let mut found = Vec::new();
        for &v in &level.part.cells[t] {
            if orbit[v as usize] {
                continue;
            }
            let Some(child) = engine.child(d, &level.part, v) else {
                continue;
            };
            if let Some(aut) = engine.descend(d + 1, &child) {
                found.push(aut);
                stab = gens
                    .iter()
                    .chain(&found)
                    .filter(|g| fixes_prefix(g))
                    .collect();
                orbit = orbit_of(base, &stab, n);
            }
        }
        gens.extend(found);
        let len = orbit.iter().filter(|&&b| b).count() as u128;
        order = order.and_then(|o| o.checked_mul(len));
    }
    debug_assert!(gens.iter().all(|g| graph.preserved_by(g)));
    let capped = order.is_none_or(|o| o > cap as u128);
    let group = if capped {
        PermGroup::unenumerated(n, gens, cap)?
    } else {
        let g = PermGroup::generate(n, gens, cap)?;
        debug_assert_eq!(g.order().map(|o| o as u128), order);
        g
    };
    Ok(AutResult {
        group,
        order,
        capped,
    })
}

/// A color-preserving bijection from `g1` onto `g2`, if one exists.
pub fn are_isomorphic(g1: &ColoredDigraph, g2: &ColoredDigraph) -> Result<Option<Permutation>> {
    if g1.n() != g2.n() {
        return Err(Error::SizeMismatch(g1.n(), g2.n()));
    }
    check_size(g1)?;
    let n = g1.n();
    let multiset = |g: &ColoredDigraph| {
        let mut diag: Vec<u32> = (0..n).map(|u| g.color(u, u)).collect();
        let mut off: Vec<u32> = (0..n)
            .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
            .map(|(u, v)| g.color(u, v))
            .collect();
        diag.sort_unstable();
        off.sort_unstable();
        (diag, off)
    };
    if multiset(g1) != multiset(g2) {
        return Ok(None);
    }
    let (coded, npairs) = encode(&[g1, g2]);
    let engine = Engine::new(&coded[0], &coded[1], npairs);
    let mut root = Partition::initial(&coded[1].diag);
    if root.refine(&coded[1], npairs) != engine.path[0].quotient {
        return Ok(None);
    }
    Ok(engine.descend(0, &root))
}

fn sorted_key(elements: impl Iterator<Item = Permutation>) -> Vec<Permutation> {
    let mut v: Vec<Permutation> = elements.collect();
    v.sort();
    v
}

/// Regular subgroups of `a` isomorphic to `g`, one per tuple search hit,
/// with the first generator's image restricted to conjugacy-class
/// representatives of `a`. Every regular subgroup of `a` isomorphic to `g` is
/// `a`-conjugate to at least one returned group.
pub(crate) fn regular_subgroup_reps(a: &PermGroup, g: &FiniteGroup) -> Result<Vec<PermGroup>> {
    let elems = a.require_elements()?;
    if g.order() != a.degree() {
        return Err(Error::DegreeMismatch {
            left: a.degree(),
            right: g.order(),
        });
    }
    let n = a.degree();
    if n == 1 {
        return Ok(vec![PermGroup::trivial(1)?]);
    }
    let gens = g.generating_set();
    let orders: Vec<usize> = gens.iter().map(|&x| g.element_order(x)).collect();
    let candidates: Vec<Vec<&Permutation>> = orders
        .iter()
        .map(|&o| {
            elems
                .iter()
                .filter(|p| p.order() == o && p.is_semiregular())
                .collect()
        })
        .collect();
    // conjugacy-class representatives among the first generator's candidates
    let pool: HashSet<&Permutation> = candidates[0].iter().copied().collect();
    let mut visited: HashSet<Permutation> = HashSet::new();
    let mut reps: Vec<&Permutation> = Vec::new();
    for &c in &candidates[0] {
        if visited.contains(c) {
            continue;
        }
        reps.push(c);
        visited.insert(c.clone());
        let mut queue = VecDeque::from([c.clone()]);
        while let Some(x) = queue.pop_front() {
            for s in a.generators() {
                let y = x.conjugated_by(s);
                if !visited.contains(&y) {
                    debug_assert!(pool.contains(&y));
                    visited.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
    }
    let search = HomSearch::new(g, &gens);
    let mut seen: HashSet<Vec<Permutation>> = HashSet::new();
    let mut out = Vec::new();
    search.for_each(
        Some(&reps),
        &candidates,
        &|_, p: &Permutation| p.is_fixed_point_free(),
        &mut |images: Vec<Permutation>| {
            let key = sorted_key(images.iter().cloned());
            if seen.insert(key.clone()) {
                let generators = gens.iter().map(|&x| images[x].clone()).collect();
                out.push(PermGroup::from_elements_unchecked(n, generators, key));
            }
            true
        },
    );
    Ok(out)
}

/// Conjugation orbit of `h` under `a`: each member paired with some `x ∈ a`
/// such that `h^x` is that member. The first member is `h` itself.
pub(crate) fn conjugation_orbit(
    a: &PermGroup,
    h: &PermGroup,
) -> Result<Vec<(PermGroup, Permutation)>> {
    let start = h.require_elements()?.to_vec();
    let mut index: HashMap<Vec<Permutation>, usize> = HashMap::new();
    index.insert(start.clone(), 0);
    let mut members = vec![(h.clone(), Permutation::identity(h.degree()))];
    let mut i = 0;
    while i < members.len() {
        for s in a.generators() {
            let (m, x) = &members[i];
            let key = sorted_key(m.require_elements()?.iter().map(|p| p.conjugated_by(s)));
            if !index.contains_key(&key) {
                let y = x.then(s);
                let gens = h.generators().iter().map(|p| p.conjugated_by(&y)).collect();
                index.insert(key.clone(), members.len());
                members.push((PermGroup::from_elements_unchecked(h.degree(), gens, key), y));
            }
        }
        i += 1;
    }
    Ok(members)
}

/// All regular subgroups of the enumerated group `a` that are isomorphic to
/// `g`, sorted by element list.
pub fn regular_subgroups_isomorphic_to(a: &PermGroup, g: &FiniteGroup) -> Result<Vec<PermGroup>> {
    let mut all: HashMap<Vec<Permutation>, PermGroup> = HashMap::new();
    for rep in regular_subgroup_reps(a, g)? {
        let key = rep.require_elements()?.to_vec();
        if all.contains_key(&key) {
            continue;
        }
        for (member, _) in conjugation_orbit(a, &rep)? {
            let key = member.require_elements()?.to_vec();
            all.entry(key).or_insert(member);
        }
    }
    let mut out: Vec<(Vec<Permutation>, PermGroup)> = all.into_iter().collect();
    out.sort_by(|x, y| x.0.cmp(&y.0));
    Ok(out.into_iter().map(|(_, g)| g).collect())
}

/// Some `x ∈ a` with `h1^x = h2`, scanning `a` in sorted order.
pub fn conjugating_element(
    a: &PermGroup,
    h1: &PermGroup,
    h2: &PermGroup,
) -> Result<Option<Permutation>> {
    let elems = a.require_elements()?;
    let e1 = h1.require_elements()?;
    let e2 = h2.require_elements()?;
    if h1.degree() != a.degree() || h2.degree() != a.degree() {
        return Err(Error::NotASubgroup);
    }
    if !h1.is_subgroup_of(a)? || !h2.is_subgroup_of(a)? {
        return Err(Error::NotASubgroup);
    }
    if e1.len() != e2.len() {
        return Ok(None);
    }
    let gens: Vec<&Permutation> = if h1.generators().is_empty() {
        e1.iter().collect()
    } else {
        h1.generators().iter().collect()
    };
    Ok(elems
        .iter()
        .find(|x| {
            gens.iter()
                .all(|g| e2.binary_search(&g.conjugated_by(x)).is_ok())
        })
        .cloned())
}
