//! Complete colored digraphs, Cayley graphs, and block quotients.

use serde::{Deserialize, Serialize};

use crate::aut;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::perm::{BlockSystem, PermGroup, Permutation, UnionFind};

/// A complete directed graph whose ordered pairs carry small integer colors.
///
/// Off the diagonal, color 0 means "no edge". The diagonal holds vertex
/// colors, which are never compared with arc colors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredDigraph {
    n: usize,
    colors: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    colors: Option<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    edges: Option<Vec<[usize; 2]>>,
}

impl ColoredDigraph {
    pub fn empty(n: usize) -> Self {
        ColoredDigraph {
            n,
            colors: vec![0; n * n],
        }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> u32) -> Self {
        let mut colors = Vec::with_capacity(n * n);
        for u in 0..n {
            for v in 0..n {
                colors.push(f(u, v));
            }
        }
        ColoredDigraph { n, colors }
    }

    /// Plain digraph (arc color 1) from 0-based arcs; loops are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("arc ({u},{v}) out of range")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at {u}")));
            }
            g.colors[u * n + v] = 1;
        }
        Ok(g)
    }

    pub fn from_matrix(rows: Vec<Vec<u32>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidGraph("color matrix is not square".into()));
        }
        Ok(ColoredDigraph {
            n,
            colors: rows.into_iter().flatten().collect(),
        })
    }

    /// Reads either `{"n", "colors"}` or `{"n", "edges"}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: GraphJson =
            serde_json::from_str(text).map_err(|e| Error::InvalidGraph(e.to_string()))?;
        match (raw.colors, raw.edges) {
            (Some(rows), None) => {
                let g = Self::from_matrix(rows)?;
                if g.n != raw.n {
                    return Err(Error::InvalidGraph(format!(
                        "n = {} but matrix has {} rows",
                        raw.n, g.n
                    )));
                }
                Ok(g)
            }
            (None, Some(edges)) => {
                let arcs: Vec<(usize, usize)> = edges.iter().map(|e| (e[0], e[1])).collect();
                Self::from_edges(raw.n, &arcs)
            }
            _ => Err(Error::InvalidGraph(
                "expected exactly one of \"colors\" or \"edges\"".into(),
            )),
        }
    }

    pub fn to_json(&self) -> String {
        let rows = (0..self.n)
            .map(|u| self.colors[u * self.n..(u + 1) * self.n].to_vec())
            .collect();
        serde_json::to_string(&GraphJson {
            n: self.n,
            colors: Some(rows),
            edges: None,
        })
        .expect("graph serializes")
    }

    /// Edge-list JSON; `None` unless this is a plain digraph.
    pub fn to_edge_json(&self) -> Option<String> {
        if !self.is_plain() {
            return None;
        }
        let edges = self.arcs().into_iter().map(|(u, v)| [u, v]).collect();
        Some(
            serde_json::to_string(&GraphJson {
                n: self.n,
                colors: None,
                edges: Some(edges),
            })
            .expect("graph serializes"),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn color(&self, u: usize, v: usize) -> u32 {
        self.colors[u * self.n + v]
    }

    #[inline]
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        u != v && self.color(u, v) != 0
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in 0..self.n {
                if self.has_arc(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Zero diagonal and only colors {0, 1} off the diagonal.
    pub fn is_plain(&self) -> bool {
        (0..self.n).all(|u| {
            (0..self.n).all(|v| {
                let c = self.color(u, v);
                if u == v {
                    c == 0
                } else {
                    c <= 1
                }
            })
        })
    }

    /// Symmetric off the diagonal.
    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|u| (0..u).all(|v| self.color(u, v) == self.color(v, u)))
    }

    pub fn preserved_by(&self, p: &Permutation) -> bool {
        p.degree() == self.n
            && (0..self.n).all(|u| {
                let pu = p.apply(u);
                (0..self.n).all(|v| self.color(u, v) == self.color(pu, p.apply(v)))
            })
    }

    /// Subgraph induced on `vertices`, in the given order. Vertex colors become
    /// `2 * diagonal + tag(v)` so callers can pin vertex classes.
    pub fn induced(&self, vertices: &[usize], tag: impl Fn(usize) -> u32) -> ColoredDigraph {
        let m = vertices.len();
        ColoredDigraph::from_fn(m, |a, b| {
            let (u, v) = (vertices[a], vertices[b]);
            if a == b {
                2 * self.color(u, u) + tag(a)
            } else {
                self.color(u, v)
            }
        })
    }
}

/// `Cay(G, S)`: arc `g → h` iff `g·h⁻¹ ∈ S`.
pub fn cayley(group: &FiniteGroup, connection: &[usize]) -> Result<ColoredDigraph> {
    let n = group.order();
    let mut in_s = vec![false; n];
    for &s in connection {
        if s >= n {
            return Err(Error::UnknownElement(s.to_string()));
        }
        if s == group.identity() {
            return Err(Error::IdentityInConnectionSet);
        }
        in_s[s] = true;
    }
    Ok(ColoredDigraph::from_fn(n, |g, h| {
        u32::from(in_s[group.mul(g, group.inv(h))])
    }))
}

/// `S = S⁻¹`.
pub fn is_undirected(group: &FiniteGroup, connection: &[usize]) -> bool {
    connection
        .iter()
        .all(|&s| connection.contains(&group.inv(s)))
}

/// Checks that every right translation preserves `Cay(G, S)` and returns `Ĝ`.
///
/// # Panics
///
/// If a translation fails to preserve the graph, which cannot happen for a
/// correctly built Cayley graph.
pub fn regular_rep_in_aut(group: &FiniteGroup, connection: &[usize]) -> Result<PermGroup> {
    let graph = cayley(group, connection)?;
    let rep = group.right_regular_rep();
    for t in rep
        .elements()
        .expect("regular representation is enumerated")
    {
        assert!(
            graph.preserved_by(t),
            "right translation {t} is not an automorphism"
        );
    }
    Ok(rep)
}

/// Uniform arc pattern between two disjoint vertex sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SimVerdict {
    /// Every `a → b`, no `b → a`.
    OnlyForward,
    /// Every `b → a`, no `a → b`.
    OnlyBackward,
    /// Arcs both ways between every pair.
    Undirected,
    /// No arcs at all.
    Empty,
    /// None of the uniform patterns.
    NotSim,
}

impl SimVerdict {
    pub fn is_sim(self) -> bool {
        self != SimVerdict::NotSim
    }

    pub fn reversed(self) -> SimVerdict {
        match self {
            SimVerdict::OnlyForward => SimVerdict::OnlyBackward,
            SimVerdict::OnlyBackward => SimVerdict::OnlyForward,
            other => other,
        }
    }
}

/// Classifies the arcs between `a` and `b`. With `|A| = |B| = 1` the result is
/// never `NotSim`.
pub fn relation_sim(graph: &ColoredDigraph, a: &[usize], b: &[usize]) -> Result<SimVerdict> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::BadVertexSets);
    }
    let mut in_a = vec![false; graph.n()];
    for &x in a {
        if x >= graph.n() {
            return Err(Error::BadVertexSets);
        }
        in_a[x] = true;
    }
    if b.iter().any(|&y| y >= graph.n() || in_a[y]) {
        return Err(Error::BadVertexSets);
    }
    let total = a.len() * b.len();
    let (mut fwd, mut bwd) = (0, 0);
    for &x in a {
        for &y in b {
            fwd += usize::from(graph.has_arc(x, y));
            bwd += usize::from(graph.has_arc(y, x));
        }
    }
    Ok(match (fwd, bwd) {
        (f, 0) if f == total => SimVerdict::OnlyForward,
        (0, r) if r == total => SimVerdict::OnlyBackward,
        (f, r) if f == total && r == total => SimVerdict::Undirected,
        (0, 0) => SimVerdict::Empty,
        _ => SimVerdict::NotSim,
    })
}

fn check_partition(graph: &ColoredDigraph, blocks: &BlockSystem) -> Result<()> {
    if blocks.degree() != graph.n() {
        return Err(Error::InvalidPartition(format!(
            "partition of {} points for a graph on {} vertices",
            blocks.degree(),
            graph.n()
        )));
    }
    Ok(())
}

/// `Γ₀`: undirected graph on the blocks, `Bᵢ` and `Bⱼ` are adjacent iff `Bᵢ ≁ Bⱼ`.
pub fn gamma0(graph: &ColoredDigraph, blocks: &BlockSystem) -> Result<ColoredDigraph> {
    check_partition(graph, blocks)?;
    let k = blocks.len();
    let mut out = ColoredDigraph::empty(k);
    for i in 0..k {
        for j in (i + 1)..k {
            if relation_sim(graph, &blocks.blocks()[i], &blocks.blocks()[j])? == SimVerdict::NotSim
            {
                out.colors[i * k + j] = 1;
                out.colors[j * k + i] = 1;
            }
        }
    }
    Ok(out)
}

/// `Γ₁`: complete colored digraph on the blocks. Ordered pairs `(Bᵢ, Bⱼ)` and
/// `(Bᵢ', Bⱼ')` share a color iff some isomorphism of the induced two-block
/// subgraphs sends `Bᵢ` to `Bᵢ'` and `Bⱼ` to `Bⱼ'`. Colors are numbered from 1 in
/// first-seen order over pairs scanned row by row.
pub fn gamma1(graph: &ColoredDigraph, blocks: &BlockSystem) -> Result<ColoredDigraph> {
    check_partition(graph, blocks)?;
    let k = blocks.len();
    let size = blocks.block_size();
    let mut reps: Vec<ColoredDigraph> = Vec::new();
    let mut out = ColoredDigraph::empty(k);
    for i in 0..k {
        for j in 0..k {
            if i == j {
                continue;
            }
            let verts: Vec<usize> = blocks.blocks()[i]
                .iter()
                .chain(&blocks.blocks()[j])
                .copied()
                .collect();
            let pair = graph.induced(&verts, |a| u32::from(a >= size));
            let mut color = None;
            for (c, rep) in reps.iter().enumerate() {
                if aut::are_isomorphic(rep, &pair)?.is_some() {
                    color = Some(c);
                    break;
                }
            }
            let c = match color {
                Some(c) => c,
                None => {
                    reps.push(pair);
                    reps.len() - 1
                }
            };
            out.colors[i * k + j] = c as u32 + 1;
        }
    }
    Ok(out)
}

/// The `≡`-classes: connected components of `Γ₀`.
pub fn equivalence_classes(gamma0: &ColoredDigraph) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(gamma0.n());
    for (u, v) in gamma0.arcs() {
        uf.union(u, v);
    }
    uf.classes()
}
