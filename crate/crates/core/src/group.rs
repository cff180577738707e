//! Small abstract groups given by multiplication tables.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

/// Largest group order [`FiniteGroup::build`] accepts.
pub const MAX_GROUP_ORDER: usize = 10_000;
/// Largest order for which automorphisms are enumerated.
pub const MAX_AUTOMORPHISM_ORDER: usize = 64;

/// Constructive description of a group: `Q8`, `E8`, `Z<n>` or a product `AxB`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Q8,
    E8,
    Cyclic(usize),
    Product(Box<GroupSpec>, Box<GroupSpec>),
}

impl GroupSpec {
    pub fn order(&self) -> usize {
        match self {
            GroupSpec::Q8 | GroupSpec::E8 => 8,
            GroupSpec::Cyclic(n) => *n,
            GroupSpec::Product(a, b) => a.order().saturating_mul(b.order()),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let factor = |t: &str| -> Result<GroupSpec> {
            match t {
                "Q8" => Ok(GroupSpec::Q8),
                "E8" => Ok(GroupSpec::E8),
                _ => {
                    let n = t
                        .strip_prefix('Z')
                        .and_then(|d| d.parse::<usize>().ok())
                        .filter(|&n| n >= 1)
                        .ok_or_else(|| Error::GroupSpec(s.to_string()))?;
                    Ok(GroupSpec::Cyclic(n))
                }
            }
        };
        let mut parts = s.trim().split('x');
        let first = parts
            .next()
            .ok_or_else(|| Error::GroupSpec(s.to_string()))?;
        let mut spec = factor(first)?;
        for part in parts {
            spec = GroupSpec::Product(Box::new(spec), Box::new(factor(part)?));
        }
        Ok(spec)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Q8 => write!(f, "Q8"),
            GroupSpec::E8 => write!(f, "E8"),
            GroupSpec::Cyclic(n) => write!(f, "Z{n}"),
            GroupSpec::Product(a, b) => write!(f, "{a}x{b}"),
        }
    }
}

/// A finite group given by element names and a full multiplication table.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    spec: GroupSpec,
    names: Vec<String>,
    table: Vec<u32>,
    identity: usize,
    inverse: Vec<usize>,
    index: HashMap<String, usize>,
}

// Quaternion units as (sign, unit) with unit 0..4 = 1, i, j, k.
fn quaternion_mul(a: usize, b: usize) -> usize {
    // index = 2 * unit + negative
    let (ua, na) = (a / 2, a % 2);
    let (ub, nb) = (b / 2, b % 2);
    // unit products: (sign flip, unit)
    const UNIT: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let (flip, u) = UNIT[ua][ub];
    2 * u + ((na + nb + flip) % 2)
}

impl FiniteGroup {
    pub fn build(spec: &GroupSpec) -> Result<FiniteGroup> {
        let order = spec.order();
        if order > MAX_GROUP_ORDER {
            return Err(Error::OrderBound {
                order,
                bound: MAX_GROUP_ORDER,
            });
        }
        let (names, table): (Vec<String>, Vec<u32>) = match spec {
            GroupSpec::Q8 => {
                let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
                    .iter()
                    .map(|s| s.to_string())
                    .collect();
                let table = (0..64)
                    .map(|x| quaternion_mul(x / 8, x % 8) as u32)
                    .collect();
                (names, table)
            }
            GroupSpec::E8 => {
                let names = (0..8).map(|x| format!("{x:03b}")).collect();
                let table = (0..64).map(|x| ((x / 8) ^ (x % 8)) as u32).collect();
                (names, table)
            }
            GroupSpec::Cyclic(n) => {
                let n = *n;
                let names = (0..n).map(|x| x.to_string()).collect();
                let table = (0..n * n).map(|x| ((x / n + x % n) % n) as u32).collect();
                (names, table)
            }
            GroupSpec::Product(a, b) => {
                let ga = FiniteGroup::build(a)?;
                let gb = FiniteGroup::build(b)?;
                let (na, nb) = (ga.order(), gb.order());
                let n = na * nb;
                let mut names = Vec::with_capacity(n);
                for x in 0..na {
                    for y in 0..nb {
                        names.push(format!("{}@{}", ga.names[x], gb.names[y]));
                    }
                }
                let mut table = Vec::with_capacity(n * n);
                for u in 0..n {
                    for v in 0..n {
                        let x = ga.mul(u / nb, v / nb);
                        let y = gb.mul(u % nb, v % nb);
                        table.push((x * nb + y) as u32);
                    }
                }
                (names, table)
            }
        };
        let group = Self::from_table(spec.clone(), names, table)?;
        if group.order() <= 64 {
            debug_assert!(group.is_associative());
        }
        Ok(group)
    }

    fn from_table(spec: GroupSpec, names: Vec<String>, table: Vec<u32>) -> Result<FiniteGroup> {
        let n = names.len();
        let identity = (0..n)
            .find(|&e| {
                (0..n).all(|x| table[e * n + x] as usize == x && table[x * n + e] as usize == x)
            })
            .ok_or_else(|| Error::GroupSpec(spec.to_string()))?;
        let mut inverse = vec![usize::MAX; n];
        for x in 0..n {
            inverse[x] = (0..n)
                .find(|&y| table[x * n + y] as usize == identity)
                .ok_or_else(|| Error::GroupSpec(spec.to_string()))?;
        }
        let index = names
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        Ok(FiniteGroup {
            spec,
            names,
            table,
            identity,
            inverse,
            index,
        })
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, token: &str) -> Result<usize> {
        self.index
            .get(token.trim())
            .copied()
            .ok_or_else(|| Error::UnknownElement(token.to_string()))
    }

    /// Parses a comma-separated token list into sorted, de-duplicated indices.
    pub fn parse_subset(&self, text: &str) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for tok in text.split(',') {
            if tok.trim().is_empty() {
                continue;
            }
            out.push(self.index_of(tok)?);
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// Comma-joined tokens in element-index order.
    pub fn format_subset(&self, subset: &[usize]) -> String {
        let mut s: Vec<usize> = subset.to_vec();
        s.sort_unstable();
        s.dedup();
        s.iter()
            .map(|&x| self.names[x].as_str())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Map from element order to number of elements of that order.
    pub fn order_profile(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for a in 0..self.order() {
            *m.entry(self.element_order(a)).or_insert(0) += 1;
        }
        m
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order())
            .filter(|&z| (0..self.order()).all(|x| self.mul(z, x) == self.mul(x, z)))
            .collect()
    }

    pub fn is_latin_square(&self) -> bool {
        let n = self.order();
        (0..n).all(|r| {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            (0..n).all(|c| {
                let a = std::mem::replace(&mut row[self.mul(r, c)], true);
                let b = std::mem::replace(&mut col[self.mul(c, r)], true);
                !a && !b
            })
        })
    }

    pub fn is_associative(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| {
            (0..n).all(|b| {
                let ab = self.mul(a, b);
                (0..n).all(|c| self.mul(ab, c) == self.mul(a, self.mul(b, c)))
            })
        })
    }

    /// Subgroup generated by `gens`, as a sorted index list.
    pub fn span(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order()).filter(|&x| seen[x]).collect()
    }

    /// Greedy generating set: repeatedly add an element of largest order
    /// (lowest index on ties) that is not yet in the span.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut by_order: Vec<usize> = (0..self.order()).collect();
        let orders: Vec<usize> = (0..self.order()).map(|a| self.element_order(a)).collect();
        by_order.sort_by(|&a, &b| orders[b].cmp(&orders[a]).then(a.cmp(&b)));
        let mut gens = Vec::new();
        let mut span = vec![false; self.order()];
        span[self.identity] = true;
        for a in by_order {
            if !span[a] {
                gens.push(a);
                span = vec![false; self.order()];
                for x in self.span(&gens) {
                    span[x] = true;
                }
            }
        }
        gens
    }

    /// Permutation of element indices `x ↦ x·g`.
    pub fn right_translation(&self, g: usize) -> Permutation {
        let images = (0..self.order()).map(|x| self.mul(x, g)).collect();
        Permutation::from_images(images).expect("rows of a group table are bijections")
    }

    /// Permutation of element indices `x ↦ g·x`.
    pub fn left_translation(&self, g: usize) -> Permutation {
        let images = (0..self.order()).map(|x| self.mul(g, x)).collect();
        Permutation::from_images(images).expect("columns of a group table are bijections")
    }

    /// `Ĝ`: the group acting on itself by right multiplication.
    pub fn right_regular_rep(&self) -> PermGroup {
        let gens = self
            .generating_set()
            .into_iter()
            .map(|g| self.right_translation(g))
            .collect();
        let elements = (0..self.order())
            .map(|g| self.right_translation(g))
            .collect();
        PermGroup::from_elements_unchecked(self.order(), gens, elements)
    }

    pub fn left_regular_rep(&self) -> PermGroup {
        let gens = self
            .generating_set()
            .into_iter()
            .map(|g| self.left_translation(g))
            .collect();
        let elements = (0..self.order())
            .map(|g| self.left_translation(g))
            .collect();
        PermGroup::from_elements_unchecked(self.order(), gens, elements)
    }

    pub fn is_automorphism(&self, mu: &Permutation) -> bool {
        let n = self.order();
        mu.degree() == n
            && (0..n).all(|a| {
                (0..n).all(|b| mu.apply(self.mul(a, b)) == self.mul(mu.apply(a), mu.apply(b)))
            })
    }

    /// All automorphisms, as permutations of element indices, in sorted order.
    pub fn automorphisms(&self) -> Result<Vec<Permutation>> {
        let n = self.order();
        if n > MAX_AUTOMORPHISM_ORDER {
            return Err(Error::OrderBound {
                order: n,
                bound: MAX_AUTOMORPHISM_ORDER,
            });
        }
        let gens = self.generating_set();
        let orders: Vec<usize> = (0..n).map(|a| self.element_order(a)).collect();
        let mut out = Vec::new();
        let mut images = Vec::with_capacity(gens.len());
        self.automorphism_step(&gens, &orders, &mut images, &mut out);
        out.sort();
        Ok(out)
    }

    fn automorphism_step(
        &self,
        gens: &[usize],
        orders: &[usize],
        images: &mut Vec<usize>,
        out: &mut Vec<Permutation>,
    ) {
        let k = images.len();
        if k == gens.len() {
            if let Some(map) = self.extend_endomorphism(gens, images) {
                if let Ok(p) = Permutation::from_images(map) {
                    out.push(p);
                }
            }
            return;
        }
        for cand in 0..self.order() {
            if orders[cand] != orders[gens[k]] {
                continue;
            }
            images.push(cand);
            if self.extend_endomorphism(&gens[..=k], images).is_some() {
                self.automorphism_step(gens, orders, images, out);
            }
            images.pop();
        }
    }

    /// Extends `gens[i] ↦ images[i]` multiplicatively over the span of `gens`;
    /// `None` if inconsistent or non-injective. Entries outside the span are
    /// left at `usize::MAX`.
    fn extend_endomorphism(&self, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
        let n = self.order();
        let mut map = vec![usize::MAX; n];
        let mut hit = vec![false; n];
        map[self.identity] = self.identity;
        hit[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for (&g, &h) in gens.iter().zip(images) {
                let y = self.mul(x, g);
                let img = self.mul(map[x], h);
                if map[y] == usize::MAX {
                    if hit[img] {
                        return None;
                    }
                    hit[img] = true;
                    map[y] = img;
                    queue.push_back(y);
                } else if map[y] != img {
                    return None;
                }
            }
        }
        Some(map)
    }

    /// Image of `subset` under the automorphism `mu`, sorted.
    pub fn apply_automorphism(&self, mu: &Permutation, subset: &[usize]) -> Result<Vec<usize>> {
        if !self.is_automorphism(mu) {
            return Err(Error::NotAnAutomorphism);
        }
        let mut out = Vec::with_capacity(subset.len());
        for &s in subset {
            if s >= self.order() {
                return Err(Error::UnknownElement(s.to_string()));
            }
            out.push(mu.apply(s));
        }
        out.sort_unstable();
        Ok(out)
    }

    /// An isomorphism from this group onto the permutation group `h`, given as
    /// the image of every element index, or `None` if the groups differ.
    pub fn abstract_isomorphic(&self, h: &PermGroup) -> Result<Option<Vec<Permutation>>> {
        let elems = h.require_elements()?;
        if elems.len() != self.order() {
            return Ok(None);
        }
        let mut profile: BTreeMap<usize, usize> = BTreeMap::new();
        for p in elems {
            *profile.entry(p.order()).or_insert(0) += 1;
        }
        if profile != self.order_profile() {
            return Ok(None);
        }
        if self.order() == 1 {
            return Ok(Some(vec![elems[0].clone()]));
        }
        let gens = self.generating_set();
        let search = HomSearch::new(self, &gens);
        let candidates: Vec<Vec<&Permutation>> = gens
            .iter()
            .map(|&g| {
                let o = self.element_order(g);
                elems.iter().filter(|p| p.order() == o).collect()
            })
            .collect();
        Ok(search.first(&candidates, |_, _| true))
    }
}

/// Backtracking search for injective homomorphisms from a [`FiniteGroup`] into
/// permutations, driven by the images of a fixed generating set.
pub(crate) struct HomSearch<'a> {
    group: &'a FiniteGroup,
    gens: &'a [usize],
}

impl<'a> HomSearch<'a> {
    pub(crate) fn new(group: &'a FiniteGroup, gens: &'a [usize]) -> Self {
        HomSearch { group, gens }
    }

    /// Extends `gens[i] ↦ images[i]` over the span of the first `images.len()`
    /// generators. Every non-identity image must pass `accept`, and the map must
    /// be consistent and injective.
    pub(crate) fn extend(
        &self,
        images: &[&Permutation],
        accept: &impl Fn(usize, &Permutation) -> bool,
    ) -> Option<Vec<Option<Permutation>>> {
        let g = self.group;
        let degree = images.first()?.degree();
        let mut map: Vec<Option<Permutation>> = vec![None; g.order()];
        map[g.identity()] = Some(Permutation::identity(degree));
        let mut queue = VecDeque::from([g.identity()]);
        while let Some(x) = queue.pop_front() {
            for (&gen, &h) in self.gens.iter().zip(images) {
                let y = g.mul(x, gen);
                let img = map[x].as_ref().expect("queued elements are mapped").then(h);
                match &map[y] {
                    Some(existing) => {
                        if *existing != img {
                            return None;
                        }
                    }
                    None => {
                        if img.is_identity() || !accept(y, &img) {
                            return None;
                        }
                        map[y] = Some(img);
                        queue.push_back(y);
                    }
                }
            }
        }
        Some(map)
    }

    /// Calls `visit` for every full generator-image tuple drawn from
    /// `candidates[i]` that extends to an injective homomorphism. The first
    /// generator's image is drawn from `first` when given. Stops early when
    /// `visit` returns `false`.
    pub(crate) fn for_each(
        &self,
        first: Option<&[&'a Permutation]>,
        candidates: &[Vec<&'a Permutation>],
        accept: &impl Fn(usize, &Permutation) -> bool,
        visit: &mut impl FnMut(Vec<Permutation>) -> bool,
    ) {
        let mut chosen: Vec<&Permutation> = Vec::with_capacity(self.gens.len());
        self.step(first, candidates, accept, &mut chosen, None, visit);
    }

    fn step(
        &self,
        first: Option<&[&'a Permutation]>,
        candidates: &[Vec<&'a Permutation>],
        accept: &impl Fn(usize, &Permutation) -> bool,
        chosen: &mut Vec<&'a Permutation>,
        prefix: Option<&[Option<Permutation>]>,
        visit: &mut impl FnMut(Vec<Permutation>) -> bool,
    ) -> bool {
        let k = chosen.len();
        let pool: &[&Permutation] = match (k, first) {
            (0, Some(f)) => f,
            _ => &candidates[k],
        };
        // x_i^c must equal the image of g_i^(g_k) whenever that is already known
        let g = self.group;
        let gk = self.gens[k];
        let relations: Vec<(&Permutation, &Permutation)> = match prefix {
            Some(map) => (0..k)
                .filter_map(|i| {
                    let w = g.mul(g.mul(g.inv(gk), self.gens[i]), gk);
                    map[w].as_ref().map(|m| (chosen[i], m))
                })
                .collect(),
            None => Vec::new(),
        };
        for &cand in pool {
            let related = relations.iter().all(|(x, m)| {
                (0..cand.degree()).all(|p| cand.apply(x.apply(p)) == m.apply(cand.apply(p)))
            });
            if !related {
                continue;
            }
            chosen.push(cand);
            if let Some(map) = self.extend(chosen, accept) {
                if k + 1 == self.gens.len() {
                    let full: Vec<Permutation> = map
                        .into_iter()
                        .map(|m| m.expect("generating set spans"))
                        .collect();
                    if !visit(full) {
                        chosen.pop();
                        return false;
                    }
                } else if !self.step(first, candidates, accept, chosen, Some(&map), visit) {
                    chosen.pop();
                    return false;
                }
            }
            chosen.pop();
        }
        true
    }

    pub(crate) fn first(
        &self,
        candidates: &[Vec<&'a Permutation>],
        accept: impl Fn(usize, &Permutation) -> bool,
    ) -> Option<Vec<Permutation>> {
        if self.gens.is_empty() {
            // trivial group
            return None;
        }
        let mut found = None;
        self.for_each(None, candidates, &accept, &mut |m| {
            found = Some(m);
            false
        });
        found
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(s: &str) -> FiniteGroup {
        FiniteGroup::build(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn spec_round_trip() {
        for s in ["Q8", "E8", "Z5", "Q8xZ5", "E8xZ7", "Z2xZ4"] {
            assert_eq!(s.parse::<GroupSpec>().unwrap().to_string(), s);
        }
        assert!("Q9".parse::<GroupSpec>().is_err());
        assert!("Z0".parse::<GroupSpec>().is_err());
        assert!("".parse::<GroupSpec>().is_err());
        assert!("Q8x".parse::<GroupSpec>().is_err());
    }

    #[test]
    fn order_bound() {
        let spec: GroupSpec = "Z101xZ101".parse().unwrap();
        assert!(matches!(
            FiniteGroup::build(&spec),
            Err(Error::OrderBound { .. })
        ));
    }

    #[test]
    fn quaternion_relations() {
        let q = group("Q8");
        let (i, j, k, m1) = (
            q.index_of("i").unwrap(),
            q.index_of("j").unwrap(),
            q.index_of("k").unwrap(),
            q.index_of("-1").unwrap(),
        );
        assert_eq!(q.mul(i, j), k);
        assert_eq!(q.mul(j, i), q.index_of("-k").unwrap());
        assert_eq!(q.mul(i, i), m1);
        assert_eq!(q.mul(j, j), m1);
        assert_eq!(q.mul(k, k), m1);
        assert_eq!(q.inv(i), q.index_of("-i").unwrap());
        assert!(q.is_associative());
        assert!(q.is_latin_square());
    }

    #[test]
    fn order_profiles() {
        let q = group("Q8");
        assert_eq!(q.order_profile(), BTreeMap::from([(1, 1), (2, 1), (4, 6)]));
        let z5 = group("Z5");
        assert_eq!(z5.order_profile(), BTreeMap::from([(1, 1), (5, 4)]));
        let g = group("Q8xZ5");
        assert_eq!(g.order(), 40);
        assert_eq!(g.center().len(), 10);
        assert!(g.is_associative());
    }

    #[test]
    fn product_tokens() {
        let g = group("E8xZ5");
        let a = g.index_of("101@3").unwrap();
        assert_eq!(g.name(a), "101@3");
        assert_eq!(g.element_order(a), 10);
        assert!(g.index_of("101@5").is_err());
        let s = g.parse_subset("101@3, 000@1,101@3").unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(g.format_subset(&s), "000@1,101@3");
    }

    #[test]
    fn regular_reps_of_cyclic() {
        let z5 = group("Z5");
        let r = z5.right_regular_rep();
        let c = Permutation::from_cycles("(12345)", 5).unwrap();
        assert!(r.contains(&c).unwrap());
        assert!(r.same_elements(&z5.left_regular_rep()));
        let z1 = group("Z1");
        assert_eq!(z1.right_regular_rep().order(), Some(1));
        assert_eq!(z1.right_regular_rep().degree(), 1);
    }

    #[test]
    fn quaternion_left_right_intersection() {
        let q = group("Q8");
        let l = q.left_regular_rep();
        let r = q.right_regular_rep();
        let shared = l
            .elements()
            .unwrap()
            .iter()
            .filter(|p| r.contains(p).unwrap())
            .count();
        assert_eq!(shared, 2);
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(group("Q8").automorphisms().unwrap().len(), 24);
        assert_eq!(group("Z5").automorphisms().unwrap().len(), 4);
        assert_eq!(group("E8").automorphisms().unwrap().len(), 168);
        assert!(matches!(
            group("Z65").automorphisms(),
            Err(Error::OrderBound { .. })
        ));
    }

    #[test]
    fn conjugation_by_i_sends_j_to_minus_j() {
        let q = group("Q8");
        let i = q.index_of("i").unwrap();
        let conj = Permutation::from_images((0..8).map(|x| q.mul(q.mul(i, x), q.inv(i))).collect())
            .unwrap();
        let j = q.index_of("j").unwrap();
        assert_eq!(
            q.apply_automorphism(&conj, &[j]).unwrap(),
            vec![q.index_of("-j").unwrap()]
        );
        let id = Permutation::identity(8);
        assert_eq!(q.apply_automorphism(&id, &[2, 5]).unwrap(), vec![2, 5]);
        let bad = Permutation::from_cycles("(12)", 8).unwrap();
        assert_eq!(
            q.apply_automorphism(&bad, &[2]),
            Err(Error::NotAnAutomorphism)
        );
    }

    #[test]
    fn abstract_isomorphism_examples() {
        let q = group("Q8");
        let e = group("E8");
        let ql = q.left_regular_rep();
        let iso = q
            .abstract_isomorphic(&ql)
            .unwrap()
            .expect("Q_l is a quaternion group");
        for a in 0..8 {
            for b in 0..8 {
                assert_eq!(iso[q.mul(a, b)], &iso[a] * &iso[b]);
            }
        }
        assert!(e.abstract_isomorphic(&ql).unwrap().is_none());
        let capped = PermGroup::symmetric(6, 10).unwrap();
        assert!(matches!(
            q.abstract_isomorphic(&capped),
            Err(Error::NotEnumerated { .. })
        ));
    }
}
