use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use super::report::Status;
use super::workbench::{Prepared, Workbench};
use crate::catalog::{build, CatalogEntry, GroupSpec};
use crate::error::Result;
use crate::graph::{are_isomorphic, direct_edge_count, is_isomorphism};
use crate::permgroup::{direct_product, quotient, Permutation, PermutationGroup};
use crate::solubility::{divisors, euler_phi, factorize, is_prime, ExactProbability, SolubilityContext};

pub(crate) type Outcome = Result<(Status, Value)>;

/// Which groups a claim speaks about. Groups outside the scope are skipped
/// with the corresponding reason.
#[derive(Clone, Copy, Debug)]
pub enum Scope {
    All,
    Insoluble,
    /// Insoluble with a materialized graph.
    FullTier,
    TrivialRadical,
    /// `1 < |R(G)| < |G|`.
    ProperRadical,
    Simple,
    /// Groups of order at most the given bound.
    SmallOrder(u64),
    Only(&'static [&'static str]),
}

pub struct Claim {
    pub id: &'static str,
    pub statement: &'static str,
    pub scope: Scope,
    pub informational: bool,
    pub(crate) check: fn(&Workbench, &Prepared) -> Outcome,
}

impl Scope {
    pub(crate) fn skip_reason(self, p: &Prepared) -> Option<&'static str> {
        let insoluble = p.is_insoluble();
        let r = p.ctx.radical_order();
        match self {
            Scope::All => None,
            Scope::Only(names) => (!names.contains(&p.name().as_str())).then_some("claim concerns another group"),
            Scope::SmallOrder(bound) => (p.ctx.order() > bound).then_some("order above the product bound"),
            _ if !insoluble => Some("group is soluble"),
            Scope::Insoluble => None,
            Scope::FullTier => p.graph.is_none().then_some("invariant-only tier"),
            Scope::TrivialRadical => (r > 1).then_some("radical is nontrivial"),
            Scope::ProperRadical => (r == 1).then_some("radical is trivial"),
            Scope::Simple => (!p.is_simple).then_some("group is not simple"),
        }
    }
}

/// Simple groups the simple-group edge bound mentions that no catalog
/// construction produces.
pub const UNSUPPORTED_SIMPLE: &[&str] = &["PSL(3,4)", "M11", "Sz(8)"];

pub static CLAIMS: &[Claim] = &[
    Claim {
        id: "L2.1a",
        statement: "|G| - |Sol(x)| >= |x| + phi(|x|) for every vertex x",
        scope: Scope::Insoluble,
        informational: false,
        check: non_solubilizer_order_phi,
    },
    Claim {
        id: "L2.1b",
        statement: "|G| - |Sol(x)| >= 6 for every vertex x",
        scope: Scope::Insoluble,
        informational: false,
        check: non_solubilizer_six,
    },
    Claim {
        id: "P2.2",
        statement: "minimum degree >= 8 when R(G) = 1, otherwise >= 17",
        scope: Scope::Insoluble,
        informational: false,
        check: min_degree_bound,
    },
    Claim {
        id: "R2.3",
        statement: "order-5 elements attain degree 8 in A5 and 17 in A5 x C2",
        scope: Scope::Only(&["A5", "A5 x C2"]),
        informational: false,
        check: sharp_min_degree,
    },
    Claim {
        id: "P2.4",
        statement: "maximum degree <= n - 7",
        scope: Scope::Insoluble,
        informational: false,
        check: max_degree_bound,
    },
    Claim {
        id: "P2.5",
        statement: "a vertex of degree p - 1 with p prime forces R(G) = 1",
        scope: Scope::Insoluble,
        informational: false,
        check: prime_degree_radical,
    },
    Claim {
        id: "P2.6",
        statement: "|Sol(x)| >= (|G| + |R|)/2 + 1 for every vertex implies the Dirac condition",
        scope: Scope::Insoluble,
        informational: false,
        check: dirac_hypothesis,
    },
    Claim {
        id: "P2.7",
        statement: "1 + deg(v) = |R| (1 + deg(vR)) for every vertex v",
        scope: Scope::ProperRadical,
        informational: false,
        check: radical_ratio,
    },
    Claim {
        id: "P2.7-degset",
        statement: "degree sets of G and G/R(G) compared",
        scope: Scope::ProperRadical,
        informational: true,
        check: radical_degree_sets,
    },
    Claim {
        id: "E3.1",
        statement: "commutativity degree of S3 by pair count, against the stated 1/3",
        scope: Scope::Only(&["S3"]),
        informational: true,
        check: s3_commutativity,
    },
    Claim {
        id: "P3.2",
        statement: "P_s(G) >= Pr(G) with equality exactly for abelian G",
        scope: Scope::All,
        informational: false,
        check: solubility_vs_commutativity,
    },
    Claim {
        id: "P3.3",
        statement: "P_s(G) <= P_s(G/N) for normal N, with equality when N is soluble",
        scope: Scope::Insoluble,
        informational: false,
        check: quotient_degrees,
    },
    Claim {
        id: "P3.5",
        statement: "P_s(G x H) >= P_s(G) P_s(H), with equality when a factor is soluble",
        scope: Scope::SmallOrder(360),
        informational: false,
        check: product_degrees,
    },
    Claim {
        id: "P3.6i",
        statement: "edge count from P_s equals the direct count",
        scope: Scope::FullTier,
        informational: false,
        check: edge_identity,
    },
    Claim {
        id: "P3.6ii",
        statement: "the P_s threshold implies |E| >= C(n-1, 2) + 1",
        scope: Scope::Insoluble,
        informational: false,
        check: dense_threshold,
    },
    Claim {
        id: "P3.7",
        statement: "2|E| >= |G|(k(G) - 3) + 2 when R(G) = 1, equality exactly for abelian G",
        scope: Scope::TrivialRadical,
        informational: false,
        check: class_count_edges,
    },
    Claim {
        id: "P3.8",
        statement: "|E| > |G| + 1 when R(G) = 1",
        scope: Scope::TrivialRadical,
        informational: false,
        check: edges_above_order,
    },
    Claim {
        id: "P3.9",
        statement: "|E| > 4|G| + 1 for simple G",
        scope: Scope::Simple,
        informational: false,
        check: simple_edges,
    },
    Claim {
        id: "C3.10",
        statement: "|E| <= 11|G|^2/60 - 3|G|/2 + 1 when R(G) = 1",
        scope: Scope::TrivialRadical,
        informational: false,
        check: edge_upper_bound,
    },
    Claim {
        id: "B11/30",
        statement: "P_s(G) <= 11/30",
        scope: Scope::Insoluble,
        informational: false,
        check: eleven_thirtieths,
    },
    Claim {
        id: "S1-girth",
        statement: "girth is 3",
        scope: Scope::FullTier,
        informational: false,
        check: girth_three,
    },
    Claim {
        id: "S1-clique4",
        statement: "a clique on four vertices exists",
        scope: Scope::FullTier,
        informational: false,
        check: four_clique,
    },
    Claim {
        id: "S1-diameter",
        statement: "connected with diameter <= 5",
        scope: Scope::FullTier,
        informational: false,
        check: diameter_bound,
    },
    Claim {
        id: "S4-iso-example",
        statement: "the graphs of SL(2,5) and A5 x C2 are isomorphic",
        scope: Scope::Only(&["SL(2,5)"]),
        informational: false,
        check: sl25_iso,
    },
    Claim {
        id: "P4-vertexcount",
        statement: "isomorphic graphs have equal vertex counts; G/R(G) has fewer vertices than G",
        scope: Scope::FullTier,
        informational: false,
        check: iso_vertex_counts,
    },
    Claim {
        id: "C4-A6",
        statement: "vertex counts of the listed order-360 groups against that of A6",
        scope: Scope::Only(&["A6"]),
        informational: true,
        check: a6_companions,
    },
    Claim {
        id: "A7-count",
        statement: "A7 has 2519 vertices and 9 classes; every other radical order leaves a soluble quotient order",
        scope: Scope::Only(&["A7"]),
        informational: false,
        check: a7_count,
    },
    Claim {
        id: "P5.1",
        statement: "the degree pattern is not constant",
        scope: Scope::Insoluble,
        informational: false,
        check: pattern_not_constant,
    },
    Claim {
        id: "C5.2",
        statement: "the graph is not regular",
        scope: Scope::FullTier,
        informational: false,
        check: not_regular,
    },
    Claim {
        id: "P5.3",
        statement: "equal degree patterns containing p - 1 force equal orders",
        scope: Scope::Insoluble,
        informational: false,
        check: pattern_orders,
    },
];

pub fn find_claim(id: &str) -> Option<&'static Claim> {
    CLAIMS.iter().find(|c| c.id == id)
}

fn verdict(holds: bool, witness: Value) -> Outcome {
    Ok((Status::from_bool(holds), witness))
}

fn informational(witness: Value) -> Outcome {
    Ok((Status::Informational, witness))
}

fn int(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn vertex_classes(ctx: &SolubilityContext) -> impl Iterator<Item = usize> + '_ {
    (0..ctx.classes().count()).filter(|&c| !ctx.class_in_radical(c))
}

fn degrees(p: &Prepared) -> &crate::solubility::DegreeData {
    p.degrees.as_ref().expect("insoluble group has degree data")
}

fn edges(p: &Prepared) -> u64 {
    p.formula_edges.expect("insoluble group has an edge count")
}

/// Checks `|G| − |Sol(x)| ≥ bound(x)` on every vertex class.
fn non_solubilizer_bound(p: &Prepared, bound: impl Fn(&Permutation) -> u64) -> Outcome {
    let ctx = &p.ctx;
    let mut min_slack = i64::MAX;
    let mut checked = 0;
    for c in vertex_classes(ctx) {
        let x = &ctx.classes().representatives[c];
        let outside = ctx.order() - ctx.class_sol_orders()[c];
        let b = bound(x);
        if outside < b {
            return verdict(
                false,
                json!({"element": x.to_string(), "order": x.order(), "outside": outside, "bound": b}),
            );
        }
        min_slack = min_slack.min(outside as i64 - b as i64);
        checked += 1;
    }
    verdict(true, json!({"vertex_classes": checked, "min_slack": min_slack}))
}

fn non_solubilizer_order_phi(_: &Workbench, p: &Prepared) -> Outcome {
    non_solubilizer_bound(p, |x| x.order() + euler_phi(x.order()))
}

fn non_solubilizer_six(_: &Workbench, p: &Prepared) -> Outcome {
    non_solubilizer_bound(p, |_| 6)
}

fn min_degree_bound(_: &Workbench, p: &Prepared) -> Outcome {
    let r = p.ctx.radical_order();
    let bound = if r == 1 { 8 } else { 17 };
    let d = degrees(p).min_degree;
    verdict(d >= bound, json!({"min_degree": d, "bound": bound, "radical": r}))
}

fn sharp_min_degree(_: &Workbench, p: &Prepared) -> Outcome {
    let ctx = &p.ctx;
    let expected = if ctx.radical_order() == 1 { 8 } else { 17 };
    let mut order5 = Vec::new();
    for c in vertex_classes(ctx) {
        if ctx.classes().representatives[c].order() == 5 {
            order5.push(ctx.class_degree(c)?);
        }
    }
    let x = Permutation::parse_cycles("(1 2 3 4 5)", ctx.group().degree())?;
    let named = if ctx.group().contains(&x)? { Some(ctx.vertex_degree(&x)?) } else { None };
    let min = degrees(p).min_degree;
    let holds = !order5.is_empty()
        && order5.iter().all(|&d| d == expected)
        && named.is_none_or(|d| d == expected)
        && min == expected;
    verdict(
        holds,
        json!({"expected": expected, "order5_class_degrees": order5, "degree_of_12345": named, "min_degree": min}),
    )
}

fn max_degree_bound(_: &Workbench, p: &Prepared) -> Outcome {
    let d = degrees(p);
    verdict(
        d.max_degree + 7 <= d.n,
        json!({"max_degree": d.max_degree, "n": d.n, "bound": d.n as i64 - 7}),
    )
}

fn prime_minus_one_degrees(p: &Prepared) -> Vec<u64> {
    degrees(p).degree_set().into_iter().filter(|&d| is_prime(d + 1)).collect()
}

fn prime_degree_radical(_: &Workbench, p: &Prepared) -> Outcome {
    let found = prime_minus_one_degrees(p);
    let r = p.ctx.radical_order();
    let primes: Vec<u64> = found.iter().map(|d| d + 1).collect();
    verdict(
        found.is_empty() || r == 1,
        json!({"primes": primes, "radical": r, "vacuous": found.is_empty()}),
    )
}

fn dirac_hypothesis(_: &Workbench, p: &Prepared) -> Outcome {
    let ctx = &p.ctx;
    let (g, r) = (ctx.order(), ctx.radical_order());
    let hypothesis = vertex_classes(ctx).all(|c| 2 * ctx.class_sol_orders()[c] >= g + r + 2);
    let d = degrees(p);
    let dirac = d.n >= 3 && 2 * d.min_degree >= d.n;
    let graph_dirac = p.graph.as_ref().map(|gd| gd.metrics.dirac_holds);
    let consistent = graph_dirac.is_none_or(|x| x == dirac);
    verdict(
        consistent && (!hypothesis || dirac),
        json!({"hypothesis": hypothesis, "dirac_condition": dirac, "graph_dirac": graph_dirac}),
    )
}

fn radical_ratio(_: &Workbench, p: &Prepared) -> Outcome {
    let ctx = &p.ctx;
    let rq = p.radical_quotient.as_ref().expect("proper radical has a quotient");
    let r = ctx.radical_order();
    let mut checked = 0u64;
    for x in ctx.elements() {
        if ctx.in_radical(x)? {
            continue;
        }
        let d = ctx.vertex_degree(x)?;
        let image = rq.map.map(x)?;
        let dq = rq.ctx.vertex_degree(&image)?;
        if 1 + d != r * (1 + dq) {
            return verdict(
                false,
                json!({"element": x.to_string(), "degree": d, "quotient_degree": dq, "radical": r}),
            );
        }
        checked += 1;
    }
    verdict(
        true,
        json!({"vertices_checked": checked, "radical": r, "quotient_order": rq.ctx.order()}),
    )
}

fn radical_degree_sets(_: &Workbench, p: &Prepared) -> Outcome {
    let rq = p.radical_quotient.as_ref().expect("proper radical has a quotient");
    let own = degrees(p).degree_set();
    let quotient = rq.ctx.degree_data()?.degree_set();
    informational(json!({"group_degrees": own, "quotient_degrees": quotient, "equal": own == quotient}))
}

fn s3_commutativity(_: &Workbench, p: &Prepared) -> Outcome {
    let elements = p.ctx.elements();
    let commuting = elements
        .iter()
        .flat_map(|x| elements.iter().map(move |y| (x, y)))
        .filter(|(x, y)| x.then(y) == y.then(x))
        .count() as u64;
    let n = elements.len() as u64;
    let computed = ExactProbability::new(commuting, n * n);
    let stated = ExactProbability::new(1, 3);
    informational(json!({
        "commuting_pairs": commuting,
        "computed": computed.to_string(),
        "class_ratio": p.commutativity_degree.to_string(),
        "stated": stated.to_string(),
        "agrees": computed == stated,
    }))
}

fn solubility_vs_commutativity(_: &Workbench, p: &Prepared) -> Outcome {
    let (ps, pr) = (&p.solubility_degree, &p.commutativity_degree);
    let equal = ps == pr;
    verdict(
        ps >= pr && equal == p.is_abelian,
        json!({"ps": ps.to_string(), "pr": pr.to_string(), "abelian": p.is_abelian, "equal": equal}),
    )
}

/// Distinct proper nontrivial normal closures of class representatives.
fn normal_closures(ctx: &SolubilityContext) -> Result<Vec<PermutationGroup>> {
    let group = ctx.group();
    let mut out: Vec<PermutationGroup> = Vec::new();
    for r in &ctx.classes().representatives[1..] {
        let n = group.normal_closure(std::slice::from_ref(r))?;
        if n.order() == group.order() {
            continue;
        }
        let seen = out
            .iter()
            .any(|m| m.order() == n.order() && n.generators().iter().all(|x| m.chain().contains(x)));
        if !seen {
            out.push(n);
        }
    }
    out.sort_by_key(|n| n.order());
    Ok(out)
}

fn quotient_degrees(wb: &Workbench, p: &Prepared) -> Outcome {
    let ctx = &p.ctx;
    let ps = &p.solubility_degree;
    let mut rows = Vec::new();
    let mut holds = true;
    for n in normal_closures(ctx)? {
        let map = quotient(ctx.group(), &n)?;
        let qctx = SolubilityContext::new(map.image().clone(), wb.source.config.limits)?;
        let qps = qctx.solubility_degree();
        let soluble = n.is_soluble();
        let ok = *ps <= qps && (!soluble || *ps == qps);
        holds &= ok;
        rows.push(json!({
            "normal_order": n.order() as u64,
            "soluble": soluble,
            "quotient_ps": qps.to_string(),
            "holds": ok,
        }));
    }
    verdict(holds, json!({"ps": ps.to_string(), "vacuous": rows.is_empty(), "normal_subgroups": rows}))
}

fn product_degrees(wb: &Workbench, p: &Prepared) -> Outcome {
    let mut partners = vec!["C2", "S3"];
    if p.name() == "A5" {
        partners.push("A5");
    }
    let mut rows = Vec::new();
    let mut holds = true;
    for h in partners {
        let hspec = GroupSpec::parse(h)?;
        let hgroup = build(&hspec)?;
        let hctx = SolubilityContext::new(hgroup.clone(), wb.source.config.limits)?;
        let mut spec = p.entry.spec.clone();
        spec.factors.extend(hspec.factors);
        let product = direct_product(p.ctx.group(), &hgroup).group;
        let pctx = wb.source.context(&spec.to_string(), product)?;
        let lhs = pctx.solubility_degree();
        let rhs = p.solubility_degree.product(&hctx.solubility_degree());
        let equality_expected = hctx.is_soluble_group() || p.ctx.is_soluble_group();
        let ok = lhs >= rhs && (!equality_expected || lhs == rhs);
        holds &= ok;
        rows.push(json!({
            "product": spec.to_string(),
            "ps_product": lhs.to_string(),
            "ps_factors": rhs.to_string(),
            "equality_expected": equality_expected,
            "holds": ok,
        }));
    }
    verdict(holds, json!({"products": rows}))
}

fn edge_identity(_: &Workbench, p: &Prepared) -> Outcome {
    let gd = p.graph.as_ref().expect("full tier");
    let formula = edges(p);
    let direct = direct_edge_count(gd.graph.adjacency());
    verdict(
        formula == direct && direct == gd.metrics.edge_count,
        json!({"formula": formula, "direct": direct}),
    )
}

fn dense_threshold(_: &Workbench, p: &Prepared) -> Outcome {
    let (g, r) = (p.ctx.order(), p.ctx.radical_order());
    let gg = int(g * g);
    let threshold = int(1) - int(2) / int(g) + (int(2 * r) + int(4)) / gg;
    let hypothesis = *p.solubility_degree.value() >= threshold;
    let e = edges(p);
    let n = p.ctx.vertex_count();
    let choose = (n - 1) * (n - 2) / 2;
    verdict(
        !hypothesis || e > choose,
        json!({
            "hypothesis": hypothesis,
            "threshold": threshold.to_string(),
            "edges": e,
            "derived_bound": choose + 1,
            "ore_bondy_predicate": e >= choose + 2,
        }),
    )
}

fn class_count_edges(_: &Workbench, p: &Prepared) -> Outcome {
    let g = p.ctx.order() as i128;
    let k = p.ctx.classes().count() as i128;
    let twice = 2 * edges(p) as i128;
    let bound = g * (k - 3) + 2;
    verdict(
        twice >= bound && (twice == bound) == p.is_abelian,
        json!({"twice_edges": twice as u64, "class_count": k as u64, "bound": bound as i64, "strict": twice > bound}),
    )
}

fn edges_above_order(_: &Workbench, p: &Prepared) -> Outcome {
    let (e, g) = (edges(p), p.ctx.order());
    verdict(e > g + 1, json!({"edges": e, "bound": g + 1}))
}

fn simple_edges(_: &Workbench, p: &Prepared) -> Outcome {
    let (e, g) = (edges(p), p.ctx.order());
    verdict(e > 4 * g + 1, json!({"edges": e, "bound": 4 * g + 1}))
}

fn edge_upper_bound(_: &Workbench, p: &Prepared) -> Outcome {
    let (e, g) = (edges(p) as u128, p.ctx.order() as u128);
    let sixty_bound = 11 * g * g + 60 - 90 * g;
    let bound = BigRational::new(BigInt::from(sixty_bound), BigInt::from(60));
    verdict(
        60 * e <= sixty_bound,
        json!({"edges": e as u64, "bound": bound.to_string(), "equality": 60 * e == sixty_bound}),
    )
}

fn eleven_thirtieths(_: &Workbench, p: &Prepared) -> Outcome {
    let bound = ExactProbability::new(11, 30);
    let ps = &p.solubility_degree;
    verdict(*ps <= bound, json!({"ps": ps.to_string(), "equality": *ps == bound}))
}

fn girth_three(_: &Workbench, p: &Prepared) -> Outcome {
    let m = &p.graph.as_ref().expect("full tier").metrics;
    verdict(m.girth == Some(3), json!({"girth": m.girth}))
}

fn four_clique(_: &Workbench, p: &Prepared) -> Outcome {
    let gd = p.graph.as_ref().expect("full tier");
    let Some(k4) = gd.metrics.k4_witness else {
        return verdict(false, json!({"k4": null}));
    };
    let v: Vec<usize> = k4.iter().map(|&x| x as usize).collect();
    let complete = (0..4).all(|i| (i + 1..4).all(|j| gd.graph.adjacent(v[i], v[j])));
    let elements: Vec<String> = v.iter().map(|&i| gd.graph.vertex_elements()[i].to_string()).collect();
    verdict(complete, json!({"k4": k4, "elements": elements}))
}

fn diameter_bound(_: &Workbench, p: &Prepared) -> Outcome {
    let m = &p.graph.as_ref().expect("full tier").metrics;
    let holds = m.is_connected && m.diameter.is_some_and(|d| d <= 5);
    verdict(holds, json!({"connected": m.is_connected, "diameter": m.diameter}))
}

const ISO_PARTNER: &str = "A5 x C2";

fn sl25_iso(wb: &Workbench, p: &Prepared) -> Outcome {
    let Some(partner) = wb.lookup(ISO_PARTNER) else {
        return Ok((Status::Skipped(format!("{ISO_PARTNER} unavailable")), Value::Null));
    };
    let (Some(a), Some(b)) = (p.graph.as_ref(), partner.graph.as_ref()) else {
        return Ok((Status::Skipped("invariant-only tier".into()), Value::Null));
    };
    let v = are_isomorphic(a.graph.adjacency(), b.graph.adjacency(), wb.source.config.node_budget)?;
    let verified = v
        .bijection
        .as_ref()
        .is_some_and(|m| is_isomorphism(a.graph.adjacency(), b.graph.adjacency(), m));
    let same_cert = a.certificate.encoding == b.certificate.encoding;
    verdict(
        v.isomorphic && verified && same_cert,
        json!({
            "partner": ISO_PARTNER,
            "vertices": a.graph.n(),
            "isomorphic": v.isomorphic,
            "decided_by": v.decided_by,
            "bijection_verified": verified,
            "certificates_equal": same_cert,
            "certificate_sha256": a.certificate.sha256(),
            "nodes": v.nodes,
        }),
    )
}

fn iso_vertex_counts(wb: &Workbench, p: &Prepared) -> Outcome {
    let gd = p.graph.as_ref().expect("full tier");
    let own = p.name();
    let n = gd.graph.n() as u64;
    let mut partners = Vec::new();
    let mut holds = true;
    for q in wb.all_prepared() {
        let Some(qg) = q.graph.as_ref() else { continue };
        if q.name() == own || qg.certificate.encoding != gd.certificate.encoding {
            continue;
        }
        let m = qg.graph.n() as u64;
        holds &= m == n;
        partners.push(json!({"group": q.name(), "vertices": m}));
    }
    let (g, r) = (p.ctx.order(), p.ctx.radical_order());
    let quotient_vertices = (r > 1).then(|| g / r - 1);
    holds &= quotient_vertices.is_none_or(|qn| qn < n);
    verdict(
        holds,
        json!({"vertices": n, "isomorphic_partners": partners, "radical_quotient_vertices": quotient_vertices}),
    )
}

const A6_COMPANIONS: &[&str] = &["C3 x SL(2,5)", "C6 x A5", "S3 x A5", "C3 x S5"];
const A6_UNEXPRESSIBLE: &[&str] = &["C3 : S5"];

fn a6_companions(wb: &Workbench, p: &Prepared) -> Outcome {
    let n = p.ctx.vertex_count();
    let mut rows = Vec::new();
    for spec in A6_COMPANIONS {
        let e = CatalogEntry::new(GroupSpec::parse(spec)?, wb.source.config.tier_threshold)?;
        rows.push(json!({
            "group": spec,
            "order": e.order,
            "radical": e.radical_order,
            "vertices": e.vertex_count(),
            "matches": e.vertex_count() == n,
        }));
    }
    informational(json!({"vertices": n, "order": p.ctx.order(), "members": rows, "not_constructed": A6_UNEXPRESSIBLE}))
}

/// Every group of squarefree order, or of order below 60, is soluble.
fn forced_soluble_order(m: u64) -> bool {
    m < 60 || factorize(m).iter().all(|&(_, e)| e == 1)
}

fn a7_count(_: &Workbench, p: &Prepared) -> Outcome {
    let n = p.ctx.vertex_count();
    let k = p.ctx.classes().count() as u64;
    let mut rows = Vec::new();
    let mut others_soluble = true;
    for r in divisors(n) {
        let q = n / r + 1;
        let forced = forced_soluble_order(q);
        if r != 1 {
            others_soluble &= forced;
        }
        rows.push(json!({"radical": r, "quotient_order": q, "forced_soluble": forced}));
    }
    verdict(
        n == 2519 && k == 9 && p.ctx.order() == 2520 && others_soluble,
        json!({"vertices": n, "class_count": k, "radical_candidates": rows}),
    )
}

fn pattern_not_constant(_: &Workbench, p: &Prepared) -> Outcome {
    let d = degrees(p);
    verdict(!d.is_constant(), json!({"degree_set": d.degree_set()}))
}

fn not_regular(_: &Workbench, p: &Prepared) -> Outcome {
    let m = &p.graph.as_ref().expect("full tier").metrics;
    verdict(
        !m.is_regular,
        json!({"min_degree": m.min_degree(), "max_degree": m.max_degree()}),
    )
}

fn pattern_orders(wb: &Workbench, p: &Prepared) -> Outcome {
    let found = prime_minus_one_degrees(p);
    let own = p.name();
    let pattern = &degrees(p).pattern;
    let mut partners = Vec::new();
    let mut orders_equal = true;
    for q in wb.all_prepared() {
        let Some(qd) = q.degrees.as_ref() else { continue };
        if q.name() == own || &qd.pattern != pattern {
            continue;
        }
        orders_equal &= q.ctx.order() == p.ctx.order();
        partners.push(json!({"group": q.name(), "order": q.ctx.order()}));
    }
    let vacuous = found.is_empty();
    verdict(
        vacuous || (p.ctx.radical_order() == 1 && orders_equal),
        json!({
            "primes": found.iter().map(|d| d + 1).collect::<Vec<_>>(),
            "vacuous": vacuous,
            "pattern_partners": partners,
        }),
    )
}
