//! Oracle certification of the gadget claims.
//!
//! Every claim is checked by exact search. Two claims do not hold for the
//! gadgets as drawn; they are still evaluated and reported as failing, with
//! `known_deviation` set, next to the corrected statement that does hold:
//!
//! * Not every internal solution of a routing gadget leaves both through
//!   routes open. Some leave only one, some none. What holds for every
//!   solution is that the turning routes (`et` to `er`, `el` to `eb`) are
//!   closed; each through route is open for some solution.
//! * With only `(Lin, W)`, `(T, B)` and `(X, Y)` routed, the `T` path of
//!   a crossing gadget has two label-level routings: after `m6` it may go
//!   through `k612` or along `m8, m10, m11`. Routing `Z` to `Lout` as well
//!   (as a row does) makes it unique.

use std::collections::BTreeSet;
use std::fmt;

use crate::gadgets::{
    build_column, build_crossing_gadget, build_routing_gadget, build_row, member, Drop, Entry, Gadget,
};
use crate::graph::{Instance, PathSet, V};
use crate::oracle::{enumerate_solutions, exact_solve, exact_solve_decomposed, OracleStatus, SearchBudget};
use crate::rightmost::forward_mask;

/// One certified claim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// The claim is expected to fail (see the module docs).
    pub known_deviation: bool,
    pub detail: String,
    pub nodes: u64,
}

impl Check {
    /// Whether the outcome is the expected one.
    pub fn as_expected(&self) -> bool {
        self.passed != self.known_deviation
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = match (self.passed, self.known_deviation) {
            (true, false) => "PASS",
            (false, false) => "FAIL",
            (false, true) => "FAIL (known deviation)",
            (true, true) => "PASS (expected a known deviation)",
        };
        write!(f, "{verdict} {} nodes={}", self.name, self.nodes)?;
        if !self.detail.is_empty() {
            write!(f, " :: {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Certification {
    pub checks: Vec<Check>,
}

impl Certification {
    /// True when every check came out as expected.
    pub fn ok(&self) -> bool {
        self.checks.iter().all(Check::as_expected)
    }

    pub fn total_nodes(&self) -> u64 {
        self.checks.iter().map(|c| c.nodes).sum()
    }
}

fn check(name: impl Into<String>, passed: bool, detail: impl Into<String>, nodes: u64) -> Check {
    Check { name: name.into(), passed, known_deviation: false, detail: detail.into(), nodes }
}

fn deviation(mut c: Check) -> Check {
    c.known_deviation = true;
    c
}

fn blocked_by(inst: &Instance, paths: &[&crate::graph::Path]) -> Vec<bool> {
    let mut blocked = vec![false; inst.drawing.vertex_count()];
    for p in paths {
        for &v in &p.vertices {
            blocked[v] = true;
        }
    }
    blocked
}

fn reaches(inst: &Instance, blocked: &[bool], s: V, t: V) -> bool {
    forward_mask(&inst.drawing, s, blocked)[t]
}

/// Routing gadget claims.
pub fn certify_routing(budget: SearchBudget) -> Vec<Check> {
    let g = build_routing_gadget();
    let inst = g.instance(&[]);
    let mut out = Vec::new();

    let solved = exact_solve(&inst, budget);
    out.push(check(
        "routing.1 solution exists",
        solved.status == OracleStatus::Solved,
        solved.status.to_string(),
        solved.nodes,
    ));

    let all: Vec<usize> = (0..inst.k()).collect();
    let enumeration = match enumerate_solutions(&inst, &all, 1000, budget) {
        Ok(e) => e,
        Err(e) => {
            out.push(check("routing.2 enumeration", false, e.to_string(), budget.max_nodes));
            return out;
        }
    };
    let nodes = enumeration.nodes;
    let (et, el, er, eb) = (g.v("et"), g.v("el"), g.v("er"), g.v("eb"));
    let mut turning_closed = true;
    let mut both_open_everywhere = true;
    let (mut tb_somewhere, mut lr_somewhere) = (false, false);
    let mut blocked_both = 0;
    for sol in &enumeration.solutions {
        let blocked = blocked_by(&inst, &sol.paths.iter().collect::<Vec<_>>());
        let tb = reaches(&inst, &blocked, et, eb);
        let lr = reaches(&inst, &blocked, el, er);
        turning_closed &= !reaches(&inst, &blocked, et, er) && !reaches(&inst, &blocked, el, eb);
        both_open_everywhere &= tb && lr;
        tb_somewhere |= tb;
        lr_somewhere |= lr;
        if !tb && !lr {
            blocked_both += 1;
        }
    }
    let count = enumeration.solutions.len();
    out.push(check(
        "routing.2 no et->er or el->eb route beside any solution",
        enumeration.complete && turning_closed,
        format!("{count} internal solutions"),
        nodes,
    ));
    out.push(check(
        "routing.2 et->eb and el->er each open beside some solution",
        tb_somewhere && lr_somewhere,
        format!("et->eb open somewhere: {tb_somewhere}, el->er open somewhere: {lr_somewhere}"),
        0,
    ));
    out.push(deviation(check(
        "routing.2 literal: both through routes open beside every solution",
        both_open_everywhere,
        format!("{blocked_both} of {count} solutions close both through routes"),
        0,
    )));

    let bare = Instance::new(inst.drawing.clone(), vec![(el, er), (et, eb)]);
    let r = exact_solve(&bare, budget);
    out.push(check(
        "routing.3 no disjoint el->er and et->eb paths",
        r.status == OracleStatus::NoSolution,
        r.status.to_string(),
        r.nodes,
    ));
    out
}

/// Distinct label-level routings of `primary` pairs, capped at `cap`
/// vertex-level routings.
struct Routings {
    labels: Vec<Vec<String>>,
    solutions: Vec<PathSet>,
    complete: bool,
    nodes: u64,
}

fn routings(
    g: &Gadget,
    inst: &Instance,
    primary: &[usize],
    cap: usize,
    budget: SearchBudget,
) -> Result<Routings, String> {
    let e = enumerate_solutions(inst, primary, cap, budget).map_err(|e| e.to_string())?;
    let mut seen = BTreeSet::new();
    let mut labels = Vec::new();
    for sol in &e.solutions {
        let l: Vec<String> = primary.iter().map(|&i| g.label_string(&sol.paths[i])).collect();
        if seen.insert(l.clone()) {
            labels.push(l);
        }
    }
    Ok(Routings { labels, solutions: e.solutions, complete: e.complete, nodes: e.nodes })
}

/// Golden label-level path lists of the crossing gadget, in the order
/// entry path, `X` path, `T` path.
pub const CASE_PLUS: [&str; 3] =
    ["Hin->b1->m2->m4->b3->W", "X->b2->m3->m5->m6->m8->m10->Y", "T->m1->b4->m0->b5->b6->m11->m12->B"];
pub const CASE_MINUS: [&str; 3] =
    ["Lin->m3->m5->W", "X->m2->m4->b4->m7->m9->b6->Y", "T->m1->b1->b2->b3->m0->m6->m12->B"];

/// Crossing gadget claims for both entries.
pub fn certify_crossing(budget: SearchBudget) -> Vec<Check> {
    let g = build_crossing_gadget(Drop::None);
    let mut out = Vec::new();
    for (entry, golden) in [(Entry::Plus, CASE_PLUS), (Entry::Minus, CASE_MINUS)] {
        let tag = match entry {
            Entry::Plus => "crossing.1",
            Entry::Minus => "crossing.2",
        };
        let inst = g.instance_extra_first(&[(entry.port(), "W"), ("X", "Y"), ("T", "B")]);
        // internal (X, Y) duplicates the extra one; drop it
        let inst = dedup_pairs(inst);
        let primary = [0, 1, 2];
        let r = match routings(&g, &inst, &primary, 2, budget) {
            Ok(r) => r,
            Err(e) => {
                out.push(check(format!("{tag} enumeration"), false, e, budget.max_nodes));
                continue;
            }
        };
        let unique = r.complete && r.solutions.len() == 1;
        let found: Vec<String> = r.labels.iter().map(|l| l.join(" | ")).collect();
        let uniqueness = check(
            format!("{tag} exactly one solution (cap 2)"),
            unique,
            format!("found {}: {}", r.solutions.len(), found.join(" ; ")),
            r.nodes,
        );
        out.push(if entry == Entry::Minus { deviation(uniqueness) } else { uniqueness });
        let golden: Vec<String> = golden.iter().map(|s| s.to_string()).collect();
        let matches = r.labels.first() == Some(&golden);
        out.push(check(format!("{tag} traversal matches the golden list"), matches, golden.join(" | "), 0));

        if let Some(sol) = r.solutions.first() {
            let blocked = blocked_by(&inst, &[&sol.paths[0], &sol.paths[1], &sol.paths[2]]);
            let (z, hout, lout) = (g.v("Z"), g.v("Hout"), g.v("Lout"));
            let (open, closed) = match entry {
                Entry::Plus => (hout, lout),
                Entry::Minus => (lout, hout),
            };
            let good = reaches(&inst, &blocked, z, open) && !reaches(&inst, &blocked, z, closed);
            let which =
                if entry == Entry::Plus { "Z->Hout open, Z->Lout closed" } else { "Z->Lout open, Z->Hout closed" };
            let mut detail = String::new();
            if entry == Entry::Plus {
                let route = ["Z", "m7", "m9", "Hout"].map(|n| g.v(n));
                let free = route.iter().all(|&v| !blocked[v]);
                detail = format!("Z->m7->m9->Hout free: {free}");
            }
            out.push(check(format!("{tag} residual: {which}"), good, detail, 0));
        }

        if entry == Entry::Minus {
            let inst = dedup_pairs(g.instance_extra_first(&[("Lin", "W"), ("X", "Y"), ("T", "B"), ("Z", "Lout")]));
            match routings(&g, &inst, &[0, 1, 2, 3], 2, budget) {
                Ok(r) => {
                    let labels = r.labels.first().map(|l| l[..3].to_vec());
                    let ok = r.complete && r.solutions.len() == 1 && labels.as_deref() == Some(&golden[..]);
                    out.push(check(
                        "crossing.2 with (Z, Lout) also routed: unique and matches the golden list",
                        ok,
                        format!("found {}", r.solutions.len()),
                        r.nodes,
                    ));
                }
                Err(e) => out.push(check("crossing.2 with (Z, Lout)", false, e, budget.max_nodes)),
            }
        }
    }
    out
}

/// Removes later duplicates of a pair.
fn dedup_pairs(mut inst: Instance) -> Instance {
    let mut seen = BTreeSet::new();
    inst.pairs.retain(|p| seen.insert(*p));
    inst
}

/// Indices of the pairs of `g` that are not routing-box pairs.
fn non_box_pairs(g: &Gadget) -> Vec<usize> {
    g.internal_pairs
        .iter()
        .enumerate()
        .filter(|(_, &(s, _))| !g.name(s).split('.').any(|seg| seg.len() == 2 && seg.starts_with('b')))
        .map(|(i, _)| i)
        .collect()
}

/// Row claims for lengths 1 and 2.
pub fn certify_rows(budget: SearchBudget) -> Vec<Check> {
    let mut out = Vec::new();
    for s in 1..=2 {
        for entry in [Entry::Plus, Entry::Minus] {
            let tag = format!("row s={s} {}", if entry == Entry::Plus { "plus" } else { "minus" });
            let g = build_row(s, entry);
            let inst = g.instance(&[]);
            let primary = non_box_pairs(&g);
            let r = match routings(&g, &inst, &primary, 2, budget) {
                Ok(r) => r,
                Err(e) => {
                    out.push(check(format!("{tag} enumeration"), false, e, budget.max_nodes));
                    continue;
                }
            };
            out.push(check(
                format!("{tag} unique solution (cap 2)"),
                r.complete && r.solutions.len() == 1,
                format!("found {}", r.solutions.len()),
                r.nodes,
            ));
            // the same row without (X_s, Y_s), matching the pair list that
            // stops at s-1
            let mut lit = g.clone();
            let last = (g.v(&format!("{}.X", member(s))), g.v(&format!("{}.Y", member(s))));
            lit.internal_pairs.retain(|&p| p != last);
            let lit_primary = non_box_pairs(&lit);
            match routings(&lit, &lit.instance(&[]), &lit_primary, 2, budget) {
                Ok(lr) => out.push(check(
                    format!("{tag} without (X_{s}, Y_{s}): unique solution (cap 2)"),
                    lr.complete && lr.solutions.len() == 1,
                    format!("found {}", lr.solutions.len()),
                    lr.nodes,
                )),
                Err(e) => out.push(check(format!("{tag} without (X_{s}, Y_{s})"), false, e, budget.max_nodes)),
            }
            let Some(sol) = r.solutions.first() else { continue };
            let first = &sol.paths[0];
            let entered = first.contains(g.v(&format!("G1.{}", entry.port())));
            out.push(check(
                format!("{tag} first path starts at {}_1", entry.port()),
                entered,
                g.label_string(first),
                0,
            ));
            for j in 1..s {
                let (z, w) = (g.v(&format!("{}.Z", member(j))), g.v(&format!("{}.W", member(j + 1))));
                let idx = inst.pairs.iter().position(|&p| p == (z, w)).unwrap();
                let through = g.v(&format!("{}.{}", member(j + 1), entry.port()));
                let path = &sol.paths[idx];
                out.push(check(
                    format!("{tag} Z_{j}->W_{} passes {}_{}", j + 1, entry.port(), j + 1),
                    path.contains(through),
                    g.label_string(path),
                    0,
                ));
            }
        }
    }
    out
}

fn uses_edge(g: &Gadget, path: &crate::graph::Path, prefix: &str, edge: (&str, &str)) -> bool {
    let (a, b) = (g.v(&format!("{prefix}.{}", edge.0)), g.v(&format!("{prefix}.{}", edge.1)));
    path.vertices.windows(2).any(|w| w[0] == a && w[1] == b)
}

fn entry_name(e: Entry) -> &'static str {
    match e {
        Entry::Plus => "+",
        Entry::Minus => "-",
    }
}

/// Column claims for lengths 1 and 2.
pub fn certify_columns(budget: SearchBudget) -> Vec<Check> {
    use crate::gadgets::{E_MINUS, E_PLUS};
    let mut out = Vec::new();
    let mut configs: Vec<Vec<Entry>> = vec![vec![Entry::Plus], vec![Entry::Minus]];
    for a in [Entry::Plus, Entry::Minus] {
        for b in [Entry::Plus, Entry::Minus] {
            configs.push(vec![a, b]);
        }
    }
    for entries in configs {
        let t = entries.len();
        let tag = format!("column t={t} [{}]", entries.iter().map(|&e| entry_name(e)).collect::<String>());
        let g = build_column(t, &vec![Drop::None; t], &entries);
        let inst = g.instance(&[]);
        let through = inst.pairs.iter().position(|&p| p == (g.v("G1.T"), g.v(&format!("{}.B", member(t))))).unwrap();
        let r = match routings(&g, &inst, &[through], 8, budget) {
            Ok(r) => r,
            Err(e) => {
                out.push(check(format!("{tag} enumeration"), false, e, budget.max_nodes));
                continue;
            }
        };
        out.push(check(format!("{tag} solvable"), !r.solutions.is_empty(), "", r.nodes));
        let signs_ok = r.complete
            && r.solutions.iter().all(|sol| {
                let q = &sol.paths[through];
                entries.iter().enumerate().all(|(i, &e)| {
                    let m = member(i + 1);
                    uses_edge(&g, q, &m, E_PLUS) == (e == Entry::Plus)
                        && uses_edge(&g, q, &m, E_MINUS) == (e == Entry::Minus)
                })
            });
        let shown = r.labels.iter().map(|l| l[0].clone()).collect::<Vec<_>>().join(" ; ");
        out.push(check(
            format!("{tag} every T_1->B_{t} path uses e+ iff entry +, e- iff entry -"),
            signs_ok,
            format!("{} paths: {shown}", r.solutions.len()),
            0,
        ));
        let unique = check(
            format!("{tag} unique T_1->B_{t} path (cap 2)"),
            r.complete && r.solutions.len() == 1,
            format!("found {}", r.solutions.len()),
            0,
        );
        let has_minus = entries.contains(&Entry::Minus);
        out.push(if has_minus { deviation(unique) } else { unique });
        if has_minus {
            // route every Z onward as a row would; Q is then unique
            let extra: Vec<(String, String)> = entries
                .iter()
                .enumerate()
                .map(|(i, &e)| {
                    let m = member(i + 1);
                    let exit = if e == Entry::Plus { "Hout" } else { "Lout" };
                    (format!("{m}.Z"), format!("{m}.{exit}"))
                })
                .collect();
            let extra: Vec<(&str, &str)> = extra.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
            let inst = g.instance(&extra);
            match routings(&g, &inst, &[through], 2, budget) {
                Ok(r) => out.push(check(
                    format!("{tag} with every Z routed onward: unique T_1->B_{t} path"),
                    r.complete && r.solutions.len() == 1,
                    format!("found {}", r.solutions.len()),
                    r.nodes,
                )),
                Err(e) => out.push(check(format!("{tag} with every Z routed onward"), false, e, budget.max_nodes)),
            }
        }
        // delete, in each gadget, the literal edge this entry needs
        for i in 0..t {
            let mut drops = vec![Drop::None; t];
            drops[i] = match entries[i] {
                Entry::Plus => Drop::EPlus,
                Entry::Minus => Drop::EMinus,
            };
            let g = build_column(t, &drops, &entries);
            let res = exact_solve_decomposed(&g.instance(&[]), budget);
            out.push(check(
                format!("{tag} needed edge dropped in G{}: no solution", i + 1),
                res.status == OracleStatus::NoSolution,
                res.status.to_string(),
                res.nodes,
            ));
            // the other edge may go
            drops[i] = match entries[i] {
                Entry::Plus => Drop::EMinus,
                Entry::Minus => Drop::EPlus,
            };
            let g = build_column(t, &drops, &entries);
            let res = exact_solve_decomposed(&g.instance(&[]), budget);
            out.push(check(
                format!("{tag} other edge dropped in G{}: solvable", i + 1),
                res.status == OracleStatus::Solved,
                res.status.to_string(),
                res.nodes,
            ));
        }
    }
    out
}

/// All gadget certifications.
pub fn certify_all(budget: SearchBudget) -> Certification {
    let mut checks = certify_routing(budget);
    checks.extend(certify_crossing(budget));
    checks.extend(certify_rows(budget));
    checks.extend(certify_columns(budget));
    Certification { checks }
}
