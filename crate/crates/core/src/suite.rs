//! The tree Δ, the reference permutation tables for the two regular
//! quaternion and elementary abelian subgroups of its leaf action, and a set
//! of named, re-checkable verifications built on them.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::aut::{
    automorphism_group, automorphism_group_with_known, conjugating_element,
    regular_subgroups_isomorphic_to, AutResult, DEFAULT_AUT_CAP,
};
use crate::closure::{
    dci_scan, is_ci_graph_babai, is_ci_graph_definitional, orbital_graph, two_closure,
    two_closure_by_definition, ScanMode,
};
use crate::error::{Error, Result};
use crate::graph::{cayley, ColoredDigraph};
use crate::group::{FiniteGroup, GroupSpec};
use crate::perm::{BlockSystem, PermGroup, Permutation};

/// Number of leaves of Δ; they are vertices `0..8`.
pub const LEAVES: usize = 8;
const INNER_A: usize = 8;
const MIDDLE: usize = 12;
const ROOT: usize = 14;

/// The 15-vertex complete binary tree. Leaves `0..8` carry labels 1..8,
/// vertices 8..12 are A..D (A above leaves 1 and 2, and so on), 12 and 13
/// sit above {A, B} and {C, D}, and 14 is the root.
pub fn build_delta() -> ColoredDigraph {
    let mut edges = Vec::new();
    for leaf in 0..LEAVES {
        edges.push((leaf, INNER_A + leaf / 2));
    }
    for k in 0..4 {
        edges.push((INNER_A + k, MIDDLE + k / 2));
    }
    edges.push((MIDDLE, ROOT));
    edges.push((MIDDLE + 1, ROOT));
    let both: Vec<(usize, usize)> = edges.iter().flat_map(|&(u, v)| [(u, v), (v, u)]).collect();
    ColoredDigraph::from_edges(15, &both).expect("tree edges are valid")
}

/// Restriction of `Aut(Δ)` to the leaves.
pub fn leaf_action(aut: &AutResult) -> Result<PermGroup> {
    let gens = aut
        .generators()
        .iter()
        .map(|g| {
            g.restrict_prefix(LEAVES)
                .ok_or_else(|| Error::InvalidGraph(format!("{g} does not fix the leaf set")))
        })
        .collect::<Result<Vec<_>>>()?;
    let leaves = PermGroup::generate(LEAVES, gens, DEFAULT_AUT_CAP)?;
    if leaves.order().map(|o| o as u128) != aut.order {
        return Err(Error::InvalidGraph(
            "leaf restriction is not faithful".into(),
        ));
    }
    Ok(leaves)
}

/// Reference permutations on the eight leaves, in 1-based cycle notation.
#[derive(Clone, Debug)]
pub struct ReferenceTables {
    pub q_l: [&'static str; 8],
    pub q_r: [&'static str; 8],
    pub i1: &'static str,
    pub j1: &'static str,
    pub i2: &'static str,
    pub j2: &'static str,
    pub x: [&'static str; 3],
    pub y: [&'static str; 3],
}

pub const REFERENCE: ReferenceTables = ReferenceTables {
    q_l: [
        "()",
        "(12)(34)(56)(78)",
        "(1324)(5768)",
        "(1423)(5867)",
        "(1526)(3748)",
        "(1625)(3847)",
        "(1728)(3546)",
        "(1827)(3645)",
    ],
    q_r: [
        "()",
        "(12)(34)(56)(78)",
        "(1324)(5867)",
        "(1423)(5768)",
        "(1526)(3847)",
        "(1625)(3748)",
        "(1728)(3645)",
        "(1827)(3546)",
    ],
    i1: "(1324)(5768)",
    j1: "(1526)(3748)",
    i2: "(1324)(5867)",
    j2: "(1526)(3847)",
    x: ["(12)(34)(56)(78)", "(13)(24)(57)(68)", "(15)(26)(37)(48)"],
    y: ["(12)(34)(56)(78)", "(13)(24)(58)(67)", "(15)(26)(38)(47)"],
};

/// The reference tables parsed into groups.
#[derive(Clone, Debug)]
pub struct ReferenceGroups {
    pub q_l: PermGroup,
    pub q_r: PermGroup,
    pub a1: PermGroup,
    pub a2: PermGroup,
}

fn leaf_perm(text: &str) -> Result<Permutation> {
    Permutation::from_cycles(text, LEAVES)
}

fn leaf_perms(texts: &[&str]) -> Result<Vec<Permutation>> {
    texts.iter().map(|t| leaf_perm(t)).collect()
}

impl ReferenceTables {
    /// The same tables with the j and -j rows, and `j1` and `j2`, exchanged
    /// between the two quaternion columns. As listed, each column pairs the
    /// left action of `i` and `k` with the right action of `j`, so neither
    /// column is closed under composition; after the exchange both are.
    pub fn with_j_rows_exchanged(&self) -> ReferenceTables {
        let mut t = self.clone();
        for row in 4..6 {
            std::mem::swap(&mut t.q_l[row], &mut t.q_r[row]);
        }
        std::mem::swap(&mut t.j1, &mut t.j2);
        t
    }

    /// Groups spanned by the listed generators (the Q8 tables themselves are
    /// checked separately against these spans).
    pub fn groups(&self) -> Result<ReferenceGroups> {
        let span = |gens: Vec<Permutation>| PermGroup::generate(LEAVES, gens, DEFAULT_AUT_CAP);
        Ok(ReferenceGroups {
            q_l: span(leaf_perms(&[self.i1, self.j1])?)?,
            q_r: span(leaf_perms(&[self.i2, self.j2])?)?,
            a1: span(leaf_perms(&self.x)?)?,
            a2: span(leaf_perms(&self.y)?)?,
        })
    }
}

/// One named verification with its evidence.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LemmaCheck {
    pub id: String,
    pub description: String,
    pub passed: bool,
    pub details: Value,
}

impl LemmaCheck {
    fn new(id: &str, description: &str, passed: bool, details: Value) -> Self {
        LemmaCheck {
            id: id.to_string(),
            description: description.to_string(),
            passed,
            details,
        }
    }
}

fn cycles(perms: &[Permutation]) -> Vec<String> {
    perms.iter().map(ToString::to_string).collect()
}

fn elements_of(g: &PermGroup) -> Result<Vec<String>> {
    Ok(cycles(g.require_elements()?))
}

/// Elements of `a` missing from `b`, and the other way round.
fn set_diff(a: &[Permutation], b: &[Permutation]) -> (Vec<String>, Vec<String>) {
    let sa: BTreeSet<&Permutation> = a.iter().collect();
    let sb: BTreeSet<&Permutation> = b.iter().collect();
    (
        sa.difference(&sb).map(|p| p.to_string()).collect(),
        sb.difference(&sa).map(|p| p.to_string()).collect(),
    )
}

fn two_part(mut n: u128) -> u128 {
    let mut part = 1;
    while n.is_multiple_of(2) {
        n /= 2;
        part *= 2;
    }
    part
}

fn leaf_blocks() -> BlockSystem {
    BlockSystem::new((0..4).map(|k| vec![2 * k, 2 * k + 1]).collect(), LEAVES)
        .expect("pairs partition the leaves")
}

/// `Aut(Δ)` has order 2⁷, the 2-part of 8!, and acts faithfully and
/// transitively on the leaves.
pub fn check_delta() -> Result<LemmaCheck> {
    let delta = build_delta();
    let aut = automorphism_group(&delta, DEFAULT_AUT_CAP)?;
    let leaves = leaf_action(&aut)?;
    let factorial: u128 = (1..=LEAVES as u128).product();
    let members = ["(12)", "(13)(24)", "(15)(26)(37)(48)"];
    let mut contains = Vec::new();
    for m in members {
        contains.push(leaves.contains(&leaf_perm(m)?)?);
    }
    let arcs = delta.arcs().len();
    let passed = aut.order == Some(128)
        && two_part(factorial) == 128
        && leaves.is_transitive()
        && contains.iter().all(|&c| c)
        && arcs == 28
        && delta.is_symmetric();
    Ok(LemmaCheck::new(
        "delta",
        "Aut(Δ) has order 128 = 2-part of 8!, acting faithfully and transitively on the leaves",
        passed,
        json!({
            "vertices": delta.n(),
            "edges": arcs / 2,
            "aut_order": aut.order.map(|o| o as u64),
            "two_part_of_8_factorial": two_part(factorial) as u64,
            "leaf_generators": cycles(leaves.generators()),
            "transitive": leaves.is_transitive(),
            "contains": members.iter().zip(&contains).map(|(m, c)| json!({"perm": m, "member": c})).collect::<Vec<_>>(),
        }),
    ))
}

fn delta_leaf_group() -> Result<PermGroup> {
    leaf_action(&automorphism_group(&build_delta(), DEFAULT_AUT_CAP)?)
}

/// Exactly two regular subgroups of the leaf action are isomorphic to Q8,
/// exactly two to Z2³, and they are the reference groups.
pub fn check_lemma_counts() -> Result<LemmaCheck> {
    check_lemma_counts_against(&REFERENCE)
}

pub fn check_lemma_counts_against(tables: &ReferenceTables) -> Result<LemmaCheck> {
    let p2 = delta_leaf_group()?;
    let q8 = FiniteGroup::build(&GroupSpec::Q8)?;
    let e8 = FiniteGroup::build(&GroupSpec::E8)?;
    let quaternion = regular_subgroups_isomorphic_to(&p2, &q8)?;
    let elementary = regular_subgroups_isomorphic_to(&p2, &e8)?;
    let refs = tables.groups()?;
    let matches = |found: &[PermGroup], a: &PermGroup, b: &PermGroup| {
        found.len() == 2
            && found.iter().any(|h| h.same_elements(a))
            && found.iter().any(|h| h.same_elements(b))
    };
    let as_group = |column: &[&str]| -> Result<PermGroup> {
        let elements = leaf_perms(column)?;
        Ok(PermGroup::from_elements_unchecked(
            LEAVES,
            elements.clone(),
            elements,
        ))
    };
    let column_match = |t: &ReferenceTables| -> Result<bool> {
        Ok(matches(&quaternion, &as_group(&t.q_l)?, &as_group(&t.q_r)?))
    };
    let q_columns = column_match(tables)?;
    let q_columns_exchanged = column_match(&tables.with_j_rows_exchanged())?;
    let q_match = matches(&quaternion, &refs.q_l, &refs.q_r);
    let e_match = matches(&elementary, &refs.a1, &refs.a2);
    // the two quaternion subgroups are swapped by (12)
    let swap = leaf_perm("(12)")?;
    let swapped = quaternion.len() == 2
        && quaternion[0]
            .conjugate_by(&swap)?
            .same_elements(&quaternion[1]);
    let passed = quaternion.len() == 2 && elementary.len() == 2 && e_match && swapped;
    Ok(LemmaCheck::new(
        "lemma4",
        "regular subgroups of the leaf action: exactly two isomorphic to Q8 and two to Z2^3",
        passed,
        json!({
            "leaf_action_order": p2.order(),
            "q8_count": quaternion.len(),
            "e8_count": elementary.len(),
            "q8_subgroups": quaternion.iter().map(|h| cycles(h.generators())).collect::<Vec<_>>(),
            "e8_subgroups": elementary.iter().map(|h| cycles(h.generators())).collect::<Vec<_>>(),
            "q8_match_generator_spans": q_match,
            "q8_match_table_columns": q_columns,
            "q8_match_table_columns_j_rows_exchanged": q_columns_exchanged,
            "e8_match_reference": e_match,
            "swapped_by_(12)": swapped,
        }),
    ))
}

/// The generator lists span the printed element tables, Q_l and Q_r are the
/// left and right regular representations of Q8 under the labelling
/// 1, -1, i, -i, j, -j, k, -k ↦ 1..8, and the reference Z2³ groups are
/// elementary abelian of order 8.
pub fn check_generator_tables(tables: &ReferenceTables) -> Result<LemmaCheck> {
    generator_tables("lemma5", tables)
}

/// [`check_generator_tables`] on [`ReferenceTables::with_j_rows_exchanged`].
pub fn check_generator_tables_exchanged(tables: &ReferenceTables) -> Result<LemmaCheck> {
    let mut check = generator_tables("lemma5-exchanged", &tables.with_j_rows_exchanged())?;
    check.description = format!(
        "{} (j and -j rows exchanged between columns)",
        check.description
    );
    Ok(check)
}

fn closed(elements: &[Permutation]) -> bool {
    let set: BTreeSet<&Permutation> = elements.iter().collect();
    elements
        .iter()
        .all(|a| elements.iter().all(|b| set.contains(&a.then(b))))
}

fn generator_tables(id: &str, tables: &ReferenceTables) -> Result<LemmaCheck> {
    let refs = tables.groups()?;
    let q_l_table = leaf_perms(&tables.q_l)?;
    let q_r_table = leaf_perms(&tables.q_r)?;
    let q8 = FiniteGroup::build(&GroupSpec::Q8)?;
    let left = q8.left_regular_rep();
    let right = q8.right_regular_rep();
    let mut problems = Vec::new();
    let mut compare = |name: &str, table: &[Permutation], group: &PermGroup| -> Result<bool> {
        let (missing, extra) = set_diff(table, group.require_elements()?);
        let ok = missing.is_empty() && extra.is_empty() && table.len() == 8;
        if !ok {
            problems.push(
                json!({"table": name, "not_in_group": missing, "in_group_not_in_table": extra}),
            );
        }
        Ok(ok)
    };
    let span_l = compare("Q_l vs <i1,j1>", &q_l_table, &refs.q_l)?;
    let span_r = compare("Q_r vs <i2,j2>", &q_r_table, &refs.q_r)?;
    let rep_l = compare("Q_l vs left regular", &q_l_table, &left)?;
    let rep_r = compare("Q_r vs right regular", &q_r_table, &right)?;
    let abelian = |g: &PermGroup| -> Result<bool> {
        let e = g.require_elements()?;
        Ok(e.len() == 8 && e.iter().all(|p| p.pow(2).is_identity()) && g.is_regular()?)
    };
    let (a1_ok, a2_ok) = (abelian(&refs.a1)?, abelian(&refs.a2)?);
    let meet = |a: &PermGroup, b: &PermGroup| -> Result<usize> {
        let eb = b.require_elements()?;
        Ok(a.require_elements()?
            .iter()
            .filter(|p| eb.binary_search(p).is_ok())
            .count())
    };
    let q_meet = meet(&refs.q_l, &refs.q_r)?;
    let a_meet = meet(&refs.a1, &refs.a2)?;
    let passed = span_l && span_r && rep_l && rep_r && a1_ok && a2_ok && q_meet == 2 && a_meet == 2;
    Ok(LemmaCheck::new(
        id,
        "generator tables span the listed Q_l/Q_r elements, match left/right regular Q8, and give two Z2^3",
        passed,
        json!({
            "q_l_column_closed": closed(&q_l_table),
            "q_r_column_closed": closed(&q_r_table),
            "q_l_matches_span": span_l,
            "q_r_matches_span": span_r,
            "q_l_is_left_regular": rep_l,
            "q_r_is_right_regular": rep_r,
            "a1_elementary_abelian": a1_ok,
            "a2_elementary_abelian": a2_ok,
            "q_l_meet_q_r": q_meet,
            "a1_meet_a2": a_meet,
            "diff": problems,
        }),
    ))
}

/// `⟨Q_l, Q_r⟩ = ⟨A₁, A₂⟩`, of order 32, made of even permutations that
/// also act evenly on the four blocks {1,2}, {3,4}, {5,6}, {7,8}.
pub fn check_lemma_g1_equals_g2() -> Result<LemmaCheck> {
    let refs = REFERENCE.groups()?;
    let join = |a: &PermGroup, b: &PermGroup| {
        let gens = a
            .generators()
            .iter()
            .chain(b.generators())
            .cloned()
            .collect();
        PermGroup::generate(LEAVES, gens, DEFAULT_AUT_CAP)
    };
    let g1 = join(&refs.q_l, &refs.q_r)?;
    let g2 = join(&refs.a1, &refs.a2)?;
    let blocks = leaf_blocks();
    let even = g1.require_elements()?.iter().all(Permutation::is_even);
    let quotient = g1.induced_action(&blocks)?;
    let quotient_even = quotient
        .require_elements()?
        .iter()
        .all(Permutation::is_even);
    let (only_g1, only_g2) = set_diff(g1.require_elements()?, g2.require_elements()?);
    let equal = g1.same_elements(&g2);
    let passed = equal && g1.order() == Some(32) && even && quotient_even;
    Ok(LemmaCheck::new(
        "lemma6",
        "<Q_l,Q_r> = <A1,A2>, order 32, all elements even, even action on {A,B,C,D}",
        passed,
        json!({
            "g1_order": g1.order(),
            "g2_order": g2.order(),
            "equal": equal,
            "only_in_g1": only_g1,
            "only_in_g2": only_g2,
            "all_even": even,
            "block_action": elements_of(&quotient)?,
            "block_action_even": quotient_even,
        }),
    ))
}

/// (12)(34), (12)(56), (12)(78) lie in `H = ⟨Q_l, Q_r⟩`, (12) lies in `H⁽²⁾`,
/// and (12) conjugates Q_l to Q_r and A₁ to A₂ through the listed relations.
pub fn check_dci2() -> Result<LemmaCheck> {
    let refs = REFERENCE.groups()?;
    let gens = refs
        .q_l
        .generators()
        .iter()
        .chain(refs.q_r.generators())
        .cloned()
        .collect();
    let h = PermGroup::generate(LEAVES, gens, DEFAULT_AUT_CAP)?;
    let products = [
        ("(12)(34)", "(1324)(5768)", "(1324)(5867)"),
        ("(12)(56)", "(1526)(3748)", "(1526)(3847)"),
        ("(12)(78)", "(1728)(3546)", "(1728)(3645)"),
    ];
    let mut product_evidence = Vec::new();
    let mut products_ok = true;
    for (claim, a, b) in products {
        let c = leaf_perm(claim)?;
        let prod = leaf_perm(a)?.compose(&leaf_perm(b)?)?;
        let member = h.contains(&c)?;
        products_ok &= prod == c && member;
        product_evidence.push(json!({"claim": claim, "product": prod.to_string(), "in_h": member}));
    }
    let closure = two_closure(&h, DEFAULT_AUT_CAP)?;
    let t = leaf_perm("(12)")?;
    let in_closure = closure.contains(&t)?;
    let q_swap = refs.q_l.conjugate_by(&t)?.same_elements(&refs.q_r);
    // the regular quaternion subgroups themselves
    let quaternion = REFERENCE.with_j_rows_exchanged().groups()?;
    let q8_swap = quaternion
        .q_l
        .conjugate_by(&t)?
        .same_elements(&quaternion.q_r);
    let a_swap = refs.a1.conjugate_by(&t)?.same_elements(&refs.a2);
    let x = leaf_perms(&REFERENCE.x)?;
    let y = leaf_perms(&REFERENCE.y)?;
    let rel1 = x[0].conjugate(&t)? == y[0];
    let rel2 = x[1].conjugate(&t)? == y[1].compose(&y[0])?;
    let rel3 = x[2].conjugate(&t)? == y[0].compose(&y[2])?;
    // whether H alone already conjugates Q_l to Q_r
    let inside_h = conjugating_element(&h, &quaternion.q_l, &quaternion.q_r)?;
    let searched = conjugating_element(&closure, &quaternion.q_l, &quaternion.q_r)?;
    let passed = products_ok
        && in_closure
        && q_swap
        && q8_swap
        && a_swap
        && rel1
        && rel2
        && rel3
        && searched.is_some();
    Ok(LemmaCheck::new(
        "prop1",
        "(12) lies in the 2-closure of <Q_l,Q_r> and conjugates Q_l to Q_r and A1 to A2",
        passed,
        json!({
            "products": product_evidence,
            "h_order": h.order(),
            "closure_order": closure.order(),
            "closure_generators": cycles(closure.generators()),
            "(12)_in_closure": in_closure,
            "q_l_conj_(12)_is_q_r": q_swap,
            "regular_q8_swapped_by_(12)": q8_swap,
            "a1_conj_(12)_is_a2": a_swap,
            "(12)x1(12)=y1": rel1,
            "(12)x2(12)=y2y1": rel2,
            "(12)x3(12)=y1y3": rel3,
            "conjugator_in_closure": searched.map(|p| p.to_string()),
            "conjugator_in_h": inside_h.map(|p| p.to_string()),
        }),
    ))
}

fn spans(gens: &[Permutation], cap: usize) -> Result<PermGroup> {
    let degree = gens.first().map_or(1, Permutation::degree);
    PermGroup::generate(degree, gens.to_vec(), cap)
}

/// `σ` with `{q1^σ, q2^σ} = {a, b}`; the flag says whether `q1` went to `b`.
fn normalize(
    q1: &PermGroup,
    q2: &PermGroup,
    a: &PermGroup,
    b: &PermGroup,
) -> Result<Option<(Permutation, bool)>> {
    let sym = PermGroup::symmetric(LEAVES, usize::MAX)?;
    let lands = |q: &PermGroup, target: &PermGroup, s: &Permutation| -> Result<bool> {
        let t = target.require_elements()?;
        Ok(q.order() == target.order()
            && q.generators()
                .iter()
                .all(|g| t.binary_search(&g.conjugated_by(s)).is_ok()))
    };
    for s in sym.require_elements()? {
        if lands(q1, a, s)? && lands(q2, b, s)? {
            return Ok(Some((s.clone(), false)));
        }
        if lands(q1, b, s)? && lands(q2, a, s)? {
            return Ok(Some((s.clone(), true)));
        }
    }
    Ok(None)
}

/// For `G = Q8×Zp` or `E8×Zp` and a connection set `S`, looks for regular
/// subgroups `R ≅ G` of `Aut(Cay(G, S))` whose action on the eight Zp-cosets
/// differs from that of `Ĝ`. For each such quotient pair that can be
/// relabelled onto the reference pair, `⟨R, Ĝ⟩` must contain elements acting
/// on the cosets as (B1 B2)(B3 B4), (B1 B2)(B5 B6) and (B1 B2)(B7 B8); each
/// is re-checked as a graph automorphism.
pub fn check_involution_instances(
    group: &FiniteGroup,
    conn: &[usize],
    cap: usize,
) -> Result<LemmaCheck> {
    let (refs_a, refs_b, first) = match group.spec() {
        GroupSpec::Product(a, b) if matches!(**b, GroupSpec::Cyclic(_)) => {
            let r = REFERENCE.groups()?;
            match **a {
                GroupSpec::Q8 => {
                    let q8 = FiniteGroup::build(&GroupSpec::Q8)?;
                    (q8.left_regular_rep(), q8.right_regular_rep(), "Q8")
                }
                GroupSpec::E8 => (r.a1, r.a2, "E8"),
                _ => return Err(Error::GroupSpec(group.spec().to_string())),
            }
        }
        _ => return Err(Error::GroupSpec(group.spec().to_string())),
    };
    let p = group.order() / 8;
    let id = format!("obs2:{}:{}", group.spec(), group.format_subset(conn));
    let description =
        format!("{first}xZp instance: distinct coset actions yield the three block involutions");
    let blocks = BlockSystem::new(
        (0..8).map(|k| (k * p..(k + 1) * p).collect()).collect(),
        group.order(),
    )?;
    let graph = cayley(group, conn)?;
    let ghat = group.right_regular_rep();
    let aut = automorphism_group_with_known(&graph, ghat.generators(), cap)?;
    if aut.capped {
        return Ok(LemmaCheck::new(
            &id,
            &description,
            false,
            json!({"skipped": format!("automorphism group exceeds cap {cap}")}),
        ));
    }
    let q2 = ghat.induced_action(&blocks)?;
    let regs = regular_subgroups_isomorphic_to(&aut.group, group)?;
    let mut seen_quotients: Vec<PermGroup> = Vec::new();
    let mut not_block_preserving = 0;
    let mut same_quotient = 0;
    let mut pairs = Vec::new();
    for r in &regs {
        if !r.generators().iter().all(|g| blocks.is_invariant_under(g)) {
            not_block_preserving += 1;
            continue;
        }
        let q1 = r.induced_action(&blocks)?;
        if q1.same_elements(&q2) {
            same_quotient += 1;
            continue;
        }
        if seen_quotients.iter().any(|q| q.same_elements(&q1)) {
            continue;
        }
        seen_quotients.push(q1.clone());
        pairs.push((r, q1));
    }
    let targets = ["(12)(34)", "(12)(56)", "(12)(78)"];
    let mut evidence = Vec::new();
    let mut normalized = 0;
    let mut all_found = true;
    for (r, q1) in &pairs {
        let Some((sigma, swapped)) = normalize(q1, &q2, &refs_a, &refs_b)? else {
            evidence.push(json!({
                "subgroup": cycles(r.generators()),
                "quotient": cycles(q1.generators()),
                "normalized": false,
            }));
            continue;
        };
        normalized += 1;
        let gens: Vec<Permutation> = r
            .generators()
            .iter()
            .chain(ghat.generators())
            .cloned()
            .collect();
        let joined = spans(&gens, cap)?;
        let back = sigma.inverse();
        let mut betas = Vec::new();
        for t in targets {
            let want = leaf_perm(t)?.conjugated_by(&back);
            let mut found = None;
            for h in joined.require_elements()? {
                if blocks.induced(h)? == want {
                    found = Some(h.clone());
                    break;
                }
            }
            let ok = found.as_ref().is_some_and(|b| graph.preserved_by(b));
            all_found &= ok;
            betas.push(json!({
                "block_action": t,
                "block_action_original_labels": want.to_string(),
                "beta": found.map(|b| b.to_string()),
                "automorphism": ok,
            }));
        }
        evidence.push(json!({
            "subgroup": cycles(r.generators()),
            "quotient": cycles(q1.generators()),
            "normalized": true,
            "relabelling": sigma.to_string(),
            "subgroup_takes_second_table": swapped,
            "joined_order": joined.order(),
            "betas": betas,
        }));
    }
    let applicable = !pairs.is_empty();
    let passed = !applicable || (normalized > 0 && all_found);
    Ok(LemmaCheck::new(
        &id,
        &description,
        passed,
        json!({
            "status": if applicable { "applicable" } else { "not applicable" },
            "aut_order": aut.order.map(|o| o.to_string()),
            "regular_subgroups": regs.len(),
            "not_block_preserving": not_block_preserving,
            "same_quotient_as_right_regular": same_quotient,
            "distinct_quotients": pairs.len(),
            "normalized": normalized,
            "pairs": evidence,
        }),
    ))
}

fn random_perm(rng: &mut ChaCha8Rng, degree: usize) -> Permutation {
    let mut images: Vec<usize> = (0..degree).collect();
    images.shuffle(rng);
    Permutation::from_images(images).expect("shuffle is a bijection")
}

/// Random group of degree 2..=8 with 1..=3 generators, plus a subgroup of it
/// generated by the first generator.
pub fn random_subgroup_chain(rng: &mut ChaCha8Rng) -> Result<(PermGroup, PermGroup)> {
    let degree = rng.gen_range(2..=8);
    let count = rng.gen_range(1..=3);
    let gens: Vec<Permutation> = (0..count).map(|_| random_perm(rng, degree)).collect();
    let small = PermGroup::generate(degree, gens[..1].to_vec(), DEFAULT_AUT_CAP)?;
    let big = PermGroup::generate(degree, gens, DEFAULT_AUT_CAP)?;
    Ok((small, big))
}

/// Counts of violated 2-closure properties over `samples` random groups.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClosureReport {
    pub samples: usize,
    pub not_containing: usize,
    pub not_idempotent: usize,
    pub orbital_violations: usize,
    pub not_monotone: usize,
    pub literal_compared: usize,
    pub literal_mismatches: usize,
    pub graph_violations: usize,
}

impl ClosureReport {
    pub fn violations(&self) -> usize {
        self.not_containing
            + self.not_idempotent
            + self.orbital_violations
            + self.not_monotone
            + self.literal_mismatches
            + self.graph_violations
    }
}

/// Runs the 2-closure properties on `samples` seeded random groups: `H ≤ H⁽²⁾`,
/// idempotence, orbital preservation, monotonicity along `⟨g₁⟩ ≤ H`, and
/// agreement with the pairwise definition for degree ≤ `literal_degree`.
/// Each sample also checks that `Ĝ⁽²⁾` preserves a random Cayley graph of a
/// group of order at most 8.
pub fn closure_properties(
    samples: usize,
    seed: u64,
    literal_degree: usize,
) -> Result<ClosureReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = ClosureReport {
        samples,
        ..ClosureReport::default()
    };
    let small_groups = [
        "Z2", "Z3", "Z4", "Z2xZ2", "Z5", "Z6", "Z7", "Q8", "E8", "Z8", "Z2xZ4",
    ];
    for _ in 0..samples {
        let (small, h) = random_subgroup_chain(&mut rng)?;
        let c = two_closure(&h, DEFAULT_AUT_CAP)?;
        if !h.is_subgroup_of(&c)? {
            report.not_containing += 1;
        }
        if !two_closure(&c, DEFAULT_AUT_CAP)?.same_elements(&c) {
            report.not_idempotent += 1;
        }
        let orbitals = orbital_graph(&h);
        if !c.generators().iter().all(|g| orbitals.preserved_by(g)) {
            report.orbital_violations += 1;
        }
        if !two_closure(&small, DEFAULT_AUT_CAP)?.is_subgroup_of(&c)? {
            report.not_monotone += 1;
        }
        if h.degree() <= literal_degree {
            report.literal_compared += 1;
            if !two_closure_by_definition(&h)?.same_elements(&c) {
                report.literal_mismatches += 1;
            }
        }
        let spec: GroupSpec = small_groups.choose(&mut rng).expect("non-empty").parse()?;
        let g = FiniteGroup::build(&spec)?;
        let conn: Vec<usize> = (0..g.order())
            .filter(|&x| x != g.identity() && rng.gen_bool(0.5))
            .collect();
        let graph = cayley(&g, &conn)?;
        let ghat_closure = two_closure(&g.right_regular_rep(), DEFAULT_AUT_CAP)?;
        if !ghat_closure
            .generators()
            .iter()
            .all(|p| graph.preserved_by(p))
        {
            report.graph_violations += 1;
        }
    }
    Ok(report)
}

fn check_closure_properties() -> Result<LemmaCheck> {
    let report = closure_properties(30, 2, 6)?;
    Ok(LemmaCheck::new(
        "closure",
        "2-closure properties on seeded random groups of degree at most 8",
        report.violations() == 0,
        serde_json::to_value(&report).expect("report serializes"),
    ))
}

/// Babai verdict against the brute-force definition for every connection set.
pub fn babai_agreement(spec: &str) -> Result<(usize, usize, usize)> {
    let g = FiniteGroup::build(&spec.parse()?)?;
    let others: Vec<usize> = (0..g.order()).filter(|&x| x != g.identity()).collect();
    let (mut total, mut agree, mut ci) = (0, 0, 0);
    for mask in 0u64..(1 << others.len()) {
        let s: Vec<usize> = (0..others.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| others[i])
            .collect();
        let babai = is_ci_graph_babai(&g, &s, DEFAULT_AUT_CAP)?;
        let def = is_ci_graph_definitional(&g, &s)?;
        total += 1;
        if !babai.is_skipped() && babai.is_ci == def {
            agree += 1;
        }
        if def {
            ci += 1;
        }
    }
    Ok((total, agree, ci))
}

fn check_babai_agreement() -> Result<LemmaCheck> {
    let mut rows = Vec::new();
    let mut passed = true;
    for spec in ["Q8", "E8", "Z5", "Z8", "Z2xZ4"] {
        let (total, agree, ci) = babai_agreement(spec)?;
        passed &= total == agree;
        if spec == "Q8" || spec == "E8" {
            passed &= ci == total;
        }
        rows.push(json!({"group": spec, "sets": total, "agree": agree, "ci": ci}));
    }
    Ok(LemmaCheck::new(
        "babai",
        "Babai criterion agrees with the definition on every connection set; Q8 and E8 are all CI",
        passed,
        json!(rows),
    ))
}

fn check_scan_determinism() -> Result<LemmaCheck> {
    let g = FiniteGroup::build(&"Q8xZ5".parse()?)?;
    let mode = ScanMode::Sample { count: 20, seed: 1 };
    let mut a = dci_scan(&g, mode, DEFAULT_AUT_CAP)?;
    let mut b = dci_scan(&g, mode, DEFAULT_AUT_CAP)?;
    a.elapsed_ms = 0;
    b.elapsed_ms = 0;
    Ok(LemmaCheck::new(
        "scan",
        "seeded scans of Q8xZ5 repeat exactly and find no failures",
        a == b && a.failures.is_empty(),
        json!({"total": a.total, "ci": a.ci, "skipped": a.skipped.len(), "failures": a.failures.len()}),
    ))
}

/// Instances for the involution check: one per factor type.
pub const INVOLUTION_INSTANCES: [(&str, &str); 2] =
    [("Q8xZ5", "i@0,-i@0,1@1"), ("E8xZ5", "100@0,000@1")];

/// Every check, in a fixed order.
pub fn run_all() -> Result<Vec<LemmaCheck>> {
    let mut out = vec![
        check_delta()?,
        check_lemma_counts()?,
        check_generator_tables(&REFERENCE)?,
        check_generator_tables_exchanged(&REFERENCE)?,
        check_lemma_g1_equals_g2()?,
        check_dci2()?,
    ];
    for (spec, conn) in INVOLUTION_INSTANCES {
        let g = FiniteGroup::build(&spec.parse()?)?;
        let s = g.parse_subset(conn)?;
        out.push(check_involution_instances(&g, &s, DEFAULT_AUT_CAP)?);
    }
    out.push(check_closure_properties()?);
    out.push(check_babai_agreement()?);
    out.push(check_scan_determinism()?);
    Ok(out)
}

pub fn all_passed(checks: &[LemmaCheck]) -> bool {
    checks.iter().all(|c| c.passed)
}

/// JSON list of `{"id", "description", "passed", "details"}`.
pub fn render_json(checks: &[LemmaCheck]) -> String {
    serde_json::to_string_pretty(checks).expect("checks serialize")
}

/// One status line per check followed by its evidence.
pub fn render_text(checks: &[LemmaCheck]) -> String {
    let mut out = String::new();
    for c in checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "[{status}] {}: {}", c.id, c.description);
        if let Value::Object(map) = &c.details {
            for (k, v) in map {
                let _ = writeln!(out, "    {k}: {v}");
            }
        } else {
            let _ = writeln!(out, "    {}", c.details);
        }
    }
    let passed = checks.iter().filter(|c| c.passed).count();
    let _ = writeln!(out, "{passed}/{} checks passed", checks.len());
    out
}
