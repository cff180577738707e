//! Permutations of `{0, .., n-1}` and small permutation groups.
//!
//! Composition is left-to-right: `p * q` applies `p` first and then `q`.
//! Externally, permutations are written in 1-based disjoint cycle notation.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

/// Default bound on the number of elements [`PermGroup::generate`] will enumerate.
pub const DEFAULT_ELEMENT_CAP: usize = 2_000_000;

/// A bijection of `{0, .., n-1}` stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image list, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::NotABijection { degree: n });
            }
            seen[x] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|x| x as u32).collect(),
        })
    }

    /// Builds a permutation from a list of disjoint cycles over 0-based points.
    pub fn from_cycle_list(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        if degree == 0 {
            return Err(Error::ZeroDegree);
        }
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for &x in cycle {
                if x >= degree {
                    return Err(Error::PointOutOfRange {
                        point: x + 1,
                        degree,
                    });
                }
                if used[x] {
                    return Err(Error::RepeatedPoint { point: x + 1 });
                }
                used[x] = true;
            }
            for (k, &x) in cycle.iter().enumerate() {
                images[x] = cycle[(k + 1) % cycle.len()] as u32;
            }
        }
        Ok(Permutation { images })
    }

    /// Parses 1-based cycle notation such as `(1324)(5768)`.
    ///
    /// Inside a cycle, points may be separated by whitespace. A cycle without
    /// separators is read digit by digit when the degree is at most 9, and as a
    /// single point otherwise. The empty string and `()` denote the identity.
    pub fn from_cycles(text: &str, degree: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::ZeroDegree);
        }
        let trimmed = text.trim();
        if trimmed.is_empty() || trimmed == "()" {
            return Ok(Self::identity(degree));
        }
        let syntax = |reason: &str| Error::CycleSyntax {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let mut cycles = Vec::new();
        let mut rest = trimmed;
        while !rest.is_empty() {
            rest = rest.trim_start();
            if rest.is_empty() {
                break;
            }
            if !rest.starts_with('(') {
                return Err(syntax("expected '('"));
            }
            let close = rest.find(')').ok_or_else(|| syntax("unclosed cycle"))?;
            let body = &rest[1..close];
            if body.contains('(') {
                return Err(syntax("nested '('"));
            }
            rest = &rest[close + 1..];
            let tokens: Vec<&str> = body.split_whitespace().collect();
            if tokens.is_empty() {
                return Err(syntax("empty cycle"));
            }
            let mut points = Vec::new();
            if tokens.len() == 1 && degree <= 9 {
                for ch in tokens[0].chars() {
                    let d = ch.to_digit(10).ok_or_else(|| syntax("non-digit point"))?;
                    points.push(d as usize);
                }
            } else {
                for tok in tokens {
                    let v: usize = tok.parse().map_err(|_| syntax("non-numeric point"))?;
                    points.push(v);
                }
            }
            let mut cycle = Vec::with_capacity(points.len());
            for p in points {
                if p == 0 || p > degree {
                    return Err(Error::PointOutOfRange { point: p, degree });
                }
                cycle.push(p - 1);
            }
            cycles.push(cycle);
        }
        Self::from_cycle_list(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&x| x as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// Applies `self` first, then `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.then(other))
    }

    #[inline]
    pub(crate) fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Permutation { images }
    }

    /// `g⁻¹ · self · g`, i.e. `self` with its points relabelled by `g`.
    pub fn conjugate(&self, g: &Permutation) -> Result<Permutation> {
        if self.degree() != g.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: g.degree(),
            });
        }
        Ok(self.conjugated_by(g))
    }

    pub(crate) fn conjugated_by(&self, g: &Permutation) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            images[g.images[x] as usize] = g.images[y as usize];
        }
        Permutation { images }
    }

    /// Disjoint cycles of length at least 2, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = self.apply(x);
            }
            lens.push(len);
        }
        lens
    }

    /// Least `k ≥ 1` with `self^k` the identity.
    pub fn order(&self) -> usize {
        self.cycle_lengths().into_iter().fold(1, lcm)
    }

    pub fn is_even(&self) -> bool {
        let transpositions: usize = self.cycle_lengths().iter().map(|l| l - 1).sum();
        transpositions.is_multiple_of(2)
    }

    pub fn is_fixed_point_free(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 != x)
    }

    /// True when every cycle (fixed points included) has the same length, which
    /// is the case for every element of a semiregular group.
    pub fn is_semiregular(&self) -> bool {
        let lens = self.cycle_lengths();
        lens.iter().all(|&l| l == lens[0])
    }

    pub fn pow(&self, mut k: usize) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            k >>= 1;
        }
        acc
    }

    /// Restriction to the first `m` points; `None` if they are not mapped into themselves.
    pub fn restrict_prefix(&self, m: usize) -> Option<Permutation> {
        let images: Vec<u32> = self.images[..m].to_vec();
        if images.iter().any(|&x| x as usize >= m) {
            return None;
        }
        Some(Permutation { images })
    }
}

impl Mul<&Permutation> for &Permutation {
    type Output = Permutation;

    /// Left-to-right product; panics on a degree mismatch.
    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch in product");
        self.then(rhs)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        let compact = self.degree() <= 9;
        for cycle in cycles {
            write!(f, "(")?;
            for (k, x) in cycle.iter().enumerate() {
                if k > 0 && !compact {
                    write!(f, " ")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Finitely generated permutation group, fully enumerated when small enough.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    /// Sorted element list; `None` when enumeration hit the cap.
    elements: Option<Vec<Permutation>>,
    cap: usize,
}

impl PermGroup {
    /// Breadth-first product closure of `gens`. The element list is populated
    /// iff the group has at most `cap` elements.
    pub fn generate(degree: usize, gens: Vec<Permutation>, cap: usize) -> Result<PermGroup> {
        if degree == 0 {
            return Err(Error::ZeroDegree);
        }
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        let cap = cap.max(1);
        let id = Permutation::identity(degree);
        let mut seen: HashSet<Permutation> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(id.clone());
        queue.push_back(id);
        let mut overflow = false;
        'bfs: while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = x.then(g);
                if !seen.contains(&y) {
                    if seen.len() >= cap {
                        overflow = true;
                        break 'bfs;
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let elements = if overflow {
            None
        } else {
            let mut v: Vec<Permutation> = seen.into_iter().collect();
            v.sort();
            Some(v)
        };
        Ok(PermGroup {
            degree,
            generators: gens,
            elements,
            cap,
        })
    }

    /// Wraps an element list already known to be a group.
    pub(crate) fn from_elements_unchecked(
        degree: usize,
        generators: Vec<Permutation>,
        mut elements: Vec<Permutation>,
    ) -> PermGroup {
        elements.sort();
        elements.dedup();
        PermGroup {
            degree,
            generators,
            elements: Some(elements),
            cap: DEFAULT_ELEMENT_CAP,
        }
    }

    /// A group known only by generators, too large to enumerate.
    pub fn unenumerated(
        degree: usize,
        generators: Vec<Permutation>,
        cap: usize,
    ) -> Result<PermGroup> {
        if degree == 0 {
            return Err(Error::ZeroDegree);
        }
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch {
                left: degree,
                right: g.degree(),
            });
        }
        Ok(PermGroup {
            degree,
            generators,
            elements: None,
            cap,
        })
    }

    pub fn trivial(degree: usize) -> Result<PermGroup> {
        Self::generate(degree, Vec::new(), 1)
    }

    pub fn symmetric(degree: usize, cap: usize) -> Result<PermGroup> {
        let mut gens = Vec::new();
        if degree >= 2 {
            gens.push(Permutation::from_cycle_list(degree, &[vec![0, 1]])?);
        }
        if degree >= 3 {
            gens.push(Permutation::from_cycle_list(
                degree,
                &[(0..degree).collect()],
            )?);
        }
        Self::generate(degree, gens, cap)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> Option<&[Permutation]> {
        self.elements.as_deref()
    }

    pub fn is_enumerated(&self) -> bool {
        self.elements.is_some()
    }

    pub(crate) fn require_elements(&self) -> Result<&[Permutation]> {
        self.elements().ok_or(Error::NotEnumerated {
            degree: self.degree,
            cap: self.cap,
        })
    }

    pub fn order(&self) -> Option<usize> {
        self.elements.as_ref().map(Vec::len)
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        let elems = self.require_elements()?;
        Ok(p.degree() == self.degree && elems.binary_search(p).is_ok())
    }

    /// Element-set equality of two enumerated groups.
    pub fn same_elements(&self, other: &PermGroup) -> bool {
        match (self.elements(), other.elements()) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> Result<bool> {
        let mine = self.require_elements()?;
        for p in mine {
            if !other.contains(p)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Orbit partition of the points, each orbit sorted, orbits ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.degree);
        for g in &self.generators {
            for x in 0..self.degree {
                uf.union(x, g.apply(x));
            }
        }
        uf.classes()
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() == 1
    }

    /// Transitive with order equal to the degree.
    pub fn is_regular(&self) -> Result<bool> {
        let order = self.require_elements()?.len();
        Ok(order == self.degree && self.is_transitive())
    }

    /// Conjugate group `{g⁻¹ h g}`.
    pub fn conjugate_by(&self, g: &Permutation) -> Result<PermGroup> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: g.degree(),
            });
        }
        let gens = self.generators.iter().map(|h| h.conjugated_by(g)).collect();
        let elements = self.elements.as_ref().map(|els| {
            let mut v: Vec<Permutation> = els.iter().map(|h| h.conjugated_by(g)).collect();
            v.sort();
            v
        });
        Ok(PermGroup {
            degree: self.degree,
            generators: gens,
            elements,
            cap: self.cap,
        })
    }

    /// Finest group-invariant partition with `a` and `b` in a common cell.
    pub fn minimal_block_system(&self, a: usize, b: usize) -> Result<BlockSystem> {
        for &p in &[a, b] {
            if p >= self.degree {
                return Err(Error::PointOutOfRange {
                    point: p + 1,
                    degree: self.degree,
                });
            }
        }
        if !self.is_transitive() {
            return Err(Error::Intransitive);
        }
        let mut uf = UnionFind::new(self.degree);
        let mut pending = vec![(a, b)];
        uf.union(a, b);
        while let Some((x, y)) = pending.pop() {
            for g in &self.generators {
                let (gx, gy) = (g.apply(x), g.apply(y));
                if uf.find(gx) != uf.find(gy) {
                    uf.union(gx, gy);
                    pending.push((gx, gy));
                }
            }
        }
        BlockSystem::new(uf.classes(), self.degree)
    }

    /// The permutation group induced on the cells of `blocks`.
    pub fn induced_action(&self, blocks: &BlockSystem) -> Result<PermGroup> {
        if blocks.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: blocks.degree(),
            });
        }
        let gens = self
            .generators
            .iter()
            .map(|g| blocks.induced(g))
            .collect::<Result<Vec<_>>>()?;
        PermGroup::generate(blocks.len(), gens, self.cap)
    }
}

/// A partition of the points into cells of equal size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSystem {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl BlockSystem {
    /// Validates and normalizes (cells sorted, ordered by least point).
    pub fn new(mut blocks: Vec<Vec<usize>>, degree: usize) -> Result<BlockSystem> {
        if blocks.is_empty() {
            return Err(Error::InvalidPartition("no cells".into()));
        }
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort();
        let size = blocks[0].len();
        let mut block_of = vec![usize::MAX; degree];
        for (i, b) in blocks.iter().enumerate() {
            if b.len() != size || size == 0 {
                return Err(Error::InvalidPartition("cells differ in size".into()));
            }
            for &x in b {
                if x >= degree {
                    return Err(Error::InvalidPartition(format!("point {x} out of range")));
                }
                if block_of[x] != usize::MAX {
                    return Err(Error::InvalidPartition(format!("point {x} repeated")));
                }
                block_of[x] = i;
            }
        }
        if block_of.contains(&usize::MAX) {
            return Err(Error::InvalidPartition(
                "cells do not cover all points".into(),
            ));
        }
        Ok(BlockSystem { blocks, block_of })
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_of(&self, point: usize) -> usize {
        self.block_of[point]
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_size(&self) -> usize {
        self.blocks[0].len()
    }

    pub fn degree(&self) -> usize {
        self.block_of.len()
    }

    pub fn is_invariant_under(&self, g: &Permutation) -> bool {
        self.induced(g).is_ok()
    }

    /// Action of `g` on the cells; errors if `g` does not preserve the partition.
    pub fn induced(&self, g: &Permutation) -> Result<Permutation> {
        if g.degree() != self.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: g.degree(),
            });
        }
        let mut images = Vec::with_capacity(self.blocks.len());
        for b in &self.blocks {
            let target = self.block_of[g.apply(b[0])];
            if b.iter().any(|&x| self.block_of[g.apply(x)] != target) {
                return Err(Error::NotInvariant);
            }
            images.push(target);
        }
        Permutation::from_images(images).map_err(|_| Error::NotInvariant)
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    /// Classes sorted internally and ordered by least member.
    pub(crate) fn classes(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut slot = vec![usize::MAX; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            let r = self.find(x);
            if slot[r] == usize::MAX {
                slot[r] = out.len();
                out.push(Vec::new());
            }
            out[slot[r]].push(x);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, n: usize) -> Permutation {
        Permutation::from_cycles(text, n).unwrap()
    }

    #[test]
    fn parses_reference_generator() {
        let i1 = p("(1324)(5768)", 8);
        // 1→3, 3→2, 2→4, 4→1, 5→7, 7→6, 6→8, 8→5 (1-based)
        let expect = [
            (1, 3),
            (3, 2),
            (2, 4),
            (4, 1),
            (5, 7),
            (7, 6),
            (6, 8),
            (8, 5),
        ];
        for (a, b) in expect {
            assert_eq!(i1.apply(a - 1), b - 1);
        }
        assert_eq!(i1.to_string(), "(1324)(5768)");
    }

    #[test]
    fn identity_forms() {
        assert!(p("", 4).is_identity());
        assert!(p("()", 4).is_identity());
        assert!(p("  ", 1).is_identity());
        assert_eq!(p("", 4).to_string(), "()");
    }

    #[test]
    fn square_of_i1_is_central_involution() {
        let i1 = p("(1324)(5768)", 8);
        assert_eq!(&i1 * &i1, p("(12)(34)(56)(78)", 8));
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            Permutation::from_cycles("(1213)", 4),
            Err(Error::RepeatedPoint { point: 1 })
        );
        assert_eq!(
            Permutation::from_cycles("(15)", 4),
            Err(Error::PointOutOfRange {
                point: 5,
                degree: 4
            })
        );
        assert!(matches!(
            Permutation::from_cycles("(12", 4),
            Err(Error::CycleSyntax { .. })
        ));
        assert!(matches!(
            Permutation::from_cycles("12", 4),
            Err(Error::CycleSyntax { .. })
        ));
        assert!(matches!(
            Permutation::from_cycles("(1a)", 4),
            Err(Error::CycleSyntax { .. })
        ));
        assert_eq!(Permutation::from_cycles("", 0), Err(Error::ZeroDegree));
    }

    #[test]
    fn multi_digit_points() {
        let q = p("(1 12)(3 10 40)", 40);
        assert_eq!(q.apply(0), 11);
        assert_eq!(q.apply(39), 2);
        assert_eq!(q.to_string(), "(1 12)(3 10 40)");
        assert_eq!(Permutation::from_cycles(&q.to_string(), 40).unwrap(), q);
    }

    #[test]
    fn reference_products() {
        let prod = p("(1324)(5768)", 8).compose(&p("(1324)(5867)", 8)).unwrap();
        assert_eq!(prod, p("(12)(34)", 8));
        let prod = p("(1526)(3748)", 8).compose(&p("(1526)(3847)", 8)).unwrap();
        assert_eq!(prod, p("(12)(56)", 8));
        let prod = p("(1728)(3546)", 8).compose(&p("(1728)(3645)", 8)).unwrap();
        assert_eq!(prod, p("(12)(78)", 8));
    }

    #[test]
    fn compose_degree_mismatch() {
        assert_eq!(
            p("(12)", 3).compose(&p("", 4)),
            Err(Error::DegreeMismatch { left: 3, right: 4 })
        );
        assert!(p("(12)", 3).conjugate(&p("", 4)).is_err());
    }

    #[test]
    fn inverse_examples() {
        let i1 = p("(1324)(5768)", 8);
        assert_eq!(i1.inverse(), p("(1423)(5867)", 8));
        assert!((&i1 * &i1.inverse()).is_identity());
        assert!(p("", 5).inverse().is_identity());
        assert_eq!(p("(12)(34)", 4).inverse(), p("(12)(34)", 4));
    }

    #[test]
    fn conjugation_examples() {
        let i1 = p("(1324)(5768)", 8);
        let t = p("(12)", 8);
        // relabel 1↔2 in (1324)(5768)
        assert_eq!(i1.conjugate(&t).unwrap(), p("(1423)(5768)", 8));
        assert_eq!(i1.conjugate(&Permutation::identity(8)).unwrap(), i1);
        let z = p("(12)(34)(56)(78)", 8);
        assert_eq!(z.conjugate(&t).unwrap(), z);
        // g⁻¹ p g under the left-to-right product
        let g = p("(1357)(26)", 8);
        let explicit = &(&g.inverse() * &i1) * &g;
        assert_eq!(i1.conjugate(&g).unwrap(), explicit);
    }

    #[test]
    fn element_orders() {
        assert_eq!(p("(1324)(5768)", 8).order(), 4);
        assert_eq!(p("", 8).order(), 1);
        assert_eq!(p("(12)(34)(56)(78)", 8).order(), 2);
        assert_eq!(p("(12)(345)", 5).order(), 6);
    }

    #[test]
    fn parity_and_semiregularity() {
        assert!(p("(12)(34)", 4).is_even());
        assert!(!p("(12)", 4).is_even());
        assert!(p("(1324)(5768)", 8).is_semiregular());
        assert!(!p("(12)", 3).is_semiregular());
        assert!(p("", 3).is_semiregular());
    }

    #[test]
    fn closure_examples() {
        let ql = PermGroup::generate(
            8,
            vec![p("(1324)(5768)", 8), p("(1526)(3748)", 8)],
            DEFAULT_ELEMENT_CAP,
        )
        .unwrap();
        assert_eq!(ql.order(), Some(8));
        let trivial = PermGroup::generate(3, vec![], 10).unwrap();
        assert_eq!(trivial.order(), Some(1));
        assert!(trivial.elements().unwrap()[0].is_identity());
    }

    #[test]
    fn closure_cap_is_reported() {
        let s5 = PermGroup::symmetric(5, 100).unwrap();
        assert!(!s5.is_enumerated());
        assert!(matches!(
            s5.contains(&p("", 5)),
            Err(Error::NotEnumerated { .. })
        ));
        assert!(matches!(s5.is_regular(), Err(Error::NotEnumerated { .. })));
        assert_eq!(PermGroup::symmetric(5, 120).unwrap().order(), Some(120));
    }

    #[test]
    fn orbit_examples() {
        let g = PermGroup::generate(5, vec![p("(123)", 5)], 100).unwrap();
        assert_eq!(g.orbits(), vec![vec![0, 1, 2], vec![3], vec![4]]);
        let t = PermGroup::trivial(4).unwrap();
        assert_eq!(t.orbits().len(), 4);
    }

    #[test]
    fn regularity_examples() {
        let g = PermGroup::generate(3, vec![p("(12)", 3)], 100).unwrap();
        assert!(!g.is_regular().unwrap());
        let s3 = PermGroup::generate(3, vec![p("(12)", 3), p("(123)", 3)], 100).unwrap();
        assert!(!s3.is_regular().unwrap());
        let c3 = PermGroup::generate(3, vec![p("(123)", 3)], 100).unwrap();
        assert!(c3.is_regular().unwrap());
        // degree one, empty generator list
        assert!(PermGroup::trivial(1).unwrap().is_regular().unwrap());
    }

    #[test]
    fn block_examples() {
        let c4 = PermGroup::generate(4, vec![p("(1234)", 4)], 100).unwrap();
        let bs = c4.minimal_block_system(0, 2).unwrap();
        assert_eq!(bs.blocks(), &[vec![0, 2], vec![1, 3]]);
        let trivial = c4.minimal_block_system(1, 1).unwrap();
        assert_eq!(trivial.len(), 4);
        let g = PermGroup::generate(4, vec![p("(12)", 4)], 100).unwrap();
        assert_eq!(g.minimal_block_system(0, 1), Err(Error::Intransitive));
    }

    #[test]
    fn induced_action_rejects_non_invariant() {
        let c4 = PermGroup::generate(4, vec![p("(1234)", 4)], 100).unwrap();
        let bad = BlockSystem::new(vec![vec![0, 1], vec![2, 3]], 4).unwrap();
        assert_eq!(c4.induced_action(&bad).unwrap_err(), Error::NotInvariant);
        let good = c4.minimal_block_system(0, 2).unwrap();
        let q = c4.induced_action(&good).unwrap();
        assert_eq!(q.degree(), 2);
        assert_eq!(q.order(), Some(2));
    }

    #[test]
    fn block_system_validation() {
        assert!(BlockSystem::new(vec![vec![0, 1], vec![2]], 3).is_err());
        assert!(BlockSystem::new(vec![vec![0, 1], vec![1, 2]], 3).is_err());
        assert!(BlockSystem::new(vec![vec![0], vec![1]], 3).is_err());
        let b = BlockSystem::new(vec![vec![3, 1], vec![2, 0]], 4).unwrap();
        assert_eq!(b.blocks(), &[vec![0, 2], vec![1, 3]]);
        assert_eq!(b.block_of(3), 1);
    }
}
