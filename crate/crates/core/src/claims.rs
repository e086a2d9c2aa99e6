//! Named witness sets for each family and a registry of the published
//! values, each checked at small parameters.
//!
//! Set names follow the usual notation: `A1`, `B2`, `M1`, `N1`, `C1`, `D1`,
//! `E1`..`E4` (`E` is `E4`) and `T` on the layered products; `R1`, `R2`,
//! `P`, `P4` and `V1` on `H(n)`; `C1`, `C2`, `C3`, `NW2` (= `N(W_2)`) and
//! `W2` on `L(n)`. An index may also be given as `D:i=1` or `NW:r=2`.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::families::{Built, FamilyError, FamilySpec, HGraph, LGraph, LayeredProduct};
use crate::graph::{all_pairs_distances, DistanceMatrix, GraphError, Vertex};
use crate::kernel::{
    doubly_violation, mmd_pairs, representation, resolving_violation, satisfies, violation, KernelError, Kind,
    VertexSet,
};
use crate::solve::{solve, SolveError, SolveOptions};

pub type Params = BTreeMap<String, usize>;

#[derive(Debug, Error)]
pub enum ClaimError {
    #[error("unknown set {0:?}")]
    UnknownSet(String),
    #[error("set {name} is not defined on {family}")]
    WrongFamily { name: String, family: String },
    #[error("bad parameters for {name}: {msg}")]
    BadParams { name: String, msg: String },
    #[error("no claim matches {0:?}")]
    UnknownClaim(String),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn bad_params(name: &str, msg: impl Into<String>) -> ClaimError {
    ClaimError::BadParams { name: name.to_string(), msg: msg.into() }
}

/// A parsed set name: base letters plus an optional index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetName {
    pub base: String,
    pub index: Option<usize>,
}

impl SetName {
    pub fn parse(text: &str) -> Result<SetName, ClaimError> {
        let (head, tail) = text.split_once(':').unwrap_or((text, ""));
        let split = head.find(|c: char| c.is_ascii_digit()).unwrap_or(head.len());
        let (base, digits) = head.split_at(split);
        if base.is_empty() || !base.chars().all(|c| c.is_ascii_alphabetic()) {
            return Err(ClaimError::UnknownSet(text.to_string()));
        }
        let mut index = if digits.is_empty() {
            None
        } else {
            Some(digits.parse().map_err(|_| ClaimError::UnknownSet(text.to_string()))?)
        };
        if !tail.is_empty() {
            let (key, value) = tail.split_once('=').ok_or_else(|| bad_params(text, "expected i=N"))?;
            if !matches!(key, "i" | "j" | "r") {
                return Err(bad_params(text, format!("unknown set parameter {key:?}")));
            }
            let value: usize = value.parse().map_err(|_| bad_params(text, "index must be a number"))?;
            if index.is_some_and(|i| i != value) {
                return Err(bad_params(text, "index given twice with different values"));
            }
            index = Some(value);
        }
        Ok(SetName { base: base.to_string(), index })
    }

    /// Canonical display form, e.g. `D1`.
    pub fn display(&self) -> String {
        match self.index {
            Some(i) => format!("{}{i}", self.base),
            None => self.base.clone(),
        }
    }
}

fn family_name(built: &Built) -> String {
    match built {
        Built::Plain(_) => "a plain graph".into(),
        Built::Layered(p) if p.m == 1 => format!("C{} x P{}", p.n, p.k),
        Built::Layered(p) => format!("(C{} x P{}) x P{}", p.n, p.k, p.m),
        Built::H(h) => format!("H({})", h.n),
        Built::L(l) => format!("L({})", l.n),
    }
}

/// Members of the named set, in the order the set is written.
pub fn build_named_set(name: &str, built: &Built) -> Result<VertexSet, ClaimError> {
    let parsed = SetName::parse(name)?;
    let members = match built {
        Built::Layered(p) => layered_set(&parsed, p, name)?,
        Built::H(h) => h_set(&parsed, h, name)?,
        Built::L(l) => l_set(&parsed, l, name)?,
        Built::Plain(_) => None,
    };
    let members =
        members.ok_or_else(|| ClaimError::WrongFamily { name: name.to_string(), family: family_name(built) })?;
    Ok(VertexSet::new(members, built.graph().n_vertices())?)
}

/// Valid indices for an indexed set on this instance, if the set is indexed.
pub fn index_range(base: &str, built: &Built) -> Option<std::ops::RangeInclusive<usize>> {
    match (base, built) {
        ("A" | "M" | "C" | "D", Built::Layered(p)) => Some(1..=p.n.div_ceil(2)),
        ("B" | "N", Built::Layered(p)) => Some(1..=p.n / 2),
        ("P", Built::H(h)) => Some(1..=h.n - 2),
        ("NW" | "W", Built::L(l)) => Some(1..=l.n),
        _ => None,
    }
}

fn need_index(s: &SetName, built: &Built, name: &str) -> Result<usize, ClaimError> {
    let i = s.index.ok_or_else(|| bad_params(name, "this set needs an index"))?;
    let range = index_range(&s.base, built).expect("indexed base");
    if !range.contains(&i) {
        return Err(bad_params(name, format!("index must lie in {}..={}", range.start(), range.end())));
    }
    Ok(i)
}

fn layered_set(s: &SetName, p: &LayeredProduct, name: &str) -> Result<Option<Vec<Vertex>>, ClaimError> {
    let built_ref = Built::Layered(p.clone());
    let (n, m) = (p.n, p.m);
    let c = n.div_ceil(2);
    let x = |copy: usize, t: usize| p.vertex(copy, t);
    let xc = |copy: usize, t: usize| p.compatible_in_last_layer(copy, t);
    let odd = |what: &str| {
        if n % 2 == 1 {
            Ok(())
        } else {
            Err(bad_params(name, format!("{what} is defined for odd n, got n={n}")))
        }
    };
    let even = |what: &str| {
        if n % 2 == 0 {
            Ok(())
        } else {
            Err(bad_params(name, format!("{what} is defined for even n, got n={n}")))
        }
    };
    let copies = |what: &str| {
        if m >= 2 {
            Ok(())
        } else {
            Err(bad_params(name, format!("{what} needs at least two copies")))
        }
    };
    let set = match s.base.as_str() {
        "M" | "A" | "C" | "D" => {
            odd(&s.base)?;
            let i = need_index(s, &built_ref, name)?;
            let mut v = vec![x(1, i), x(1, c + i - 1)];
            if s.base != "M" {
                v.push(xc(1, i));
            }
            match s.base.as_str() {
                "C" => {
                    copies("C")?;
                    v.push(xc(2, i));
                }
                "D" => {
                    copies("D")?;
                    v.push(xc(m, i));
                }
                _ => {}
            }
            v
        }
        "N" | "B" => {
            odd(&s.base)?;
            let j = need_index(s, &built_ref, name)?;
            let mut v = vec![x(1, j), x(1, c + j)];
            if s.base == "B" {
                v.push(xc(1, j));
            }
            v
        }
        "E" => {
            even("E")?;
            let h = n / 2;
            match s.index {
                Some(1) => vec![x(1, 1), x(1, 2), xc(1, 1)],
                Some(2) => vec![x(1, 1), x(1, h), x(1, h + 1)],
                Some(3) => vec![x(1, 1), x(1, h), x(1, h + 1), xc(1, 1)],
                Some(4) | None => {
                    copies("E4")?;
                    vec![x(1, 1), x(1, h), x(1, h + 1), xc(1, 1), xc(m, 1)]
                }
                Some(_) => return Err(ClaimError::UnknownSet(name.to_string())),
            }
        }
        "T" if s.index.is_none() => {
            copies("T")?;
            (1..=n).map(|t| x(1, t)).chain((1..=n).map(|t| x(m, t))).collect()
        }
        _ => return Ok(None),
    };
    Ok(Some(set))
}

fn h_set(s: &SetName, h: &HGraph, name: &str) -> Result<Option<Vec<Vertex>>, ClaimError> {
    let n = h.n;
    let set = match (s.base.as_str(), s.index) {
        ("R", Some(1)) => (1..n).map(|r| h.point(r)).collect(),
        ("R", Some(2)) => (2..n).map(|j| h.pair(1, j)).collect(),
        ("V", Some(1)) => h.points(),
        ("P", None) => {
            if !n.is_multiple_of(3) {
                return Err(bad_params(name, format!("P needs 3 | n, got n={n}")));
            }
            (1..=n / 3).flat_map(|t| p_i(h, 3 * t - 2)).collect()
        }
        ("P", Some(_)) => p_i(h, need_index(s, &Built::H(h.clone()), name)?),
        _ => return Ok(None),
    };
    Ok(Some(set))
}

fn p_i(h: &HGraph, i: usize) -> Vec<Vertex> {
    vec![h.pair(i, i + 1), h.pair(i, i + 2)]
}

fn l_set(s: &SetName, l: &LGraph, name: &str) -> Result<Option<Vec<Vertex>>, ClaimError> {
    let nw1 = l.neighborhood_of_clique(1)?;
    let set = match (s.base.as_str(), s.index) {
        ("C", Some(1)) => nw1[..nw1.len() - 2].to_vec(),
        ("C", Some(2)) => nw1[..nw1.len() - 1].to_vec(),
        ("C", Some(3)) => nw1,
        ("NW", _) => l.neighborhood_of_clique(need_index(s, &Built::L(l.clone()), name)?)?,
        ("W", _) => l.clique(need_index(s, &Built::L(l.clone()), name)?)?,
        _ => return Ok(None),
    };
    Ok(Some(set))
}

/// Rows `r(v|Q) = (...)`, one per vertex. Layered products are ordered by
/// in-copy index `t`, then copy; other graphs by vertex index.
pub fn emit_table(built: &Built, set_name: &str) -> Result<String, ClaimError> {
    let q = build_named_set(set_name, built)?;
    let shown = SetName::parse(set_name)?.display();
    let g = built.graph();
    let d = all_pairs_distances(g)?;
    let mut order: Vec<Vertex> = (0..g.n_vertices()).collect();
    if let Built::Layered(p) = built {
        order.sort_by_key(|&v| {
            let c = p.coord(v);
            (c.index_in_copy(p.n), c.copy)
        });
    }
    let mut out = String::new();
    for v in order {
        let r = representation(v, &q, &d)?;
        out.push_str(&format!("r({}|{shown}) = {r}\n", g.label(v)));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fam {
    Cycle,
    Path,
    Cp,
    Cpm,
    H,
    L,
}

impl Fam {
    pub fn spec(self, p: &Params) -> Result<FamilySpec, ClaimError> {
        let get =
            |key: &str| p.get(key).copied().ok_or_else(|| bad_params("family", format!("missing parameter {key:?}")));
        Ok(match self {
            Fam::Cycle => FamilySpec::Cycle { n: get("n")? },
            Fam::Path => FamilySpec::Path { k: get("k")? },
            Fam::Cp => FamilySpec::Cp { n: get("n")?, k: get("k")? },
            Fam::Cpm => FamilySpec::Cpm { n: get("n")?, k: get("k")?, m: get("m")? },
            Fam::H => FamilySpec::H { n: get("n")? },
            Fam::L => FamilySpec::L { n: get("n")? },
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Quantity {
    Beta,
    Psi,
    Sdim,
    SetIsResolving,
    SetIsDoubly,
    SetIsStrong,
    SetIsNotResolving,
    SetIsNotDoubly,
    SetIsNotStrong,
    Inequality,
    Table,
    Predicate,
}

type CustomFn = fn(&Ctx) -> Result<Outcome, ClaimError>;

#[derive(Clone, Copy)]
enum Check {
    Value {
        kind: Kind,
        expected: fn(&Params) -> usize,
    },
    /// The minimum strictly exceeds a constant.
    Exceeds {
        kind: Kind,
        bound: usize,
    },
    Set {
        name: &'static str,
        expect: &'static [(Kind, bool)],
    },
    /// Every index of an indexed set family.
    EverySet {
        base: &'static str,
        expect: &'static [(Kind, bool)],
    },
    Table {
        set: &'static str,
        golden: &'static str,
    },
    Custom(CustomFn),
}

/// One published statement with the instances it is checked on.
#[derive(Clone)]
pub struct Claim {
    pub id: &'static str,
    pub summary: &'static str,
    pub family: Fam,
    pub quantity: Quantity,
    /// Named set the check is about, if any.
    pub witness: Option<&'static str>,
    pub instances: Vec<Params>,
    /// Extra instances run only on request.
    pub slow_instances: Vec<Params>,
    pub note: Option<&'static str>,
    check: Check,
}

impl std::fmt::Debug for Claim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Claim")
            .field("id", &self.id)
            .field("family", &self.family)
            .field("quantity", &self.quantity)
            .field("instances", &self.instances)
            .finish()
    }
}

impl Claim {
    /// Expected outcome at `p`, as shown in reports.
    pub fn expected(&self, p: &Params) -> String {
        match self.check {
            Check::Value { expected, .. } => expected(p).to_string(),
            Check::Exceeds { bound, .. } => format!("> {bound}"),
            Check::Set { expect, .. } | Check::EverySet { expect, .. } => describe(expect),
            Check::Table { .. } => "matches the printed table".into(),
            Check::Custom(_) => "holds".into(),
        }
    }

    /// Whether a `--id` filter selects this claim: exact match, or the
    /// filter followed by `-` (so `Thm3.1` selects `Thm3.1-A` but not
    /// `Thm3.10`).
    pub fn matches(&self, filter: &str) -> bool {
        self.id == filter || self.id.strip_prefix(filter).is_some_and(|rest| rest.starts_with('-'))
    }
}

fn describe(expect: &[(Kind, bool)]) -> String {
    expect.iter().map(|&(k, yes)| if yes { k.to_string() } else { format!("not {k}") }).collect::<Vec<_>>().join(", ")
}

fn params(pairs: &[(&str, usize)]) -> Params {
    pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}

fn grid(ns: &[usize], ks: &[usize]) -> Vec<Params> {
    ns.iter().flat_map(|&n| ks.iter().map(move |&k| params(&[("n", n), ("k", k)]))).collect()
}

fn triples(list: &[(usize, usize, usize)]) -> Vec<Params> {
    list.iter().map(|&(n, k, m)| params(&[("n", n), ("k", k), ("m", m)])).collect()
}

fn ns(list: &[usize]) -> Vec<Params> {
    list.iter().map(|&n| params(&[("n", n)])).collect()
}

fn n_of(p: &Params) -> usize {
    p["n"]
}

const RESOLVING: &[(Kind, bool)] = &[(Kind::Resolving, true)];
const DOUBLY: &[(Kind, bool)] = &[(Kind::Doubly, true)];
const STRONG: &[(Kind, bool)] = &[(Kind::Strong, true)];
const NOT_RESOLVING: &[(Kind, bool)] = &[(Kind::Resolving, false)];
const NOT_DOUBLY: &[(Kind, bool)] = &[(Kind::Doubly, false)];
const RESOLVING_NOT_DOUBLY: &[(Kind, bool)] = &[(Kind::Resolving, true), (Kind::Doubly, false)];

struct Entry {
    id: &'static str,
    summary: &'static str,
    family: Fam,
    quantity: Quantity,
    check: Check,
    instances: Vec<Params>,
}

impl Entry {
    fn claim(self) -> Claim {
        let witness = match self.check {
            Check::Set { name, .. } | Check::Table { set: name, .. } => Some(name),
            Check::EverySet { base, .. } => Some(base),
            _ => None,
        };
        Claim {
            id: self.id,
            summary: self.summary,
            family: self.family,
            quantity: self.quantity,
            witness,
            instances: self.instances,
            slow_instances: Vec::new(),
            note: None,
            check: self.check,
        }
    }
}

fn value(kind: Kind) -> Quantity {
    match kind {
        Kind::Resolving => Quantity::Beta,
        Kind::Doubly => Quantity::Psi,
        Kind::Strong => Quantity::Sdim,
    }
}

fn val(
    id: &'static str,
    summary: &'static str,
    family: Fam,
    kind: Kind,
    expected: fn(&Params) -> usize,
    instances: Vec<Params>,
) -> Claim {
    Entry { id, summary, family, quantity: value(kind), check: Check::Value { kind, expected }, instances }.claim()
}

fn set_quantity(expect: &[(Kind, bool)]) -> Quantity {
    match expect.last() {
        Some((Kind::Resolving, true)) => Quantity::SetIsResolving,
        Some((Kind::Doubly, true)) => Quantity::SetIsDoubly,
        Some((Kind::Strong, true)) => Quantity::SetIsStrong,
        Some((Kind::Resolving, false)) => Quantity::SetIsNotResolving,
        Some((Kind::Doubly, false)) => Quantity::SetIsNotDoubly,
        _ => Quantity::SetIsNotStrong,
    }
}

fn set(
    id: &'static str,
    summary: &'static str,
    family: Fam,
    name: &'static str,
    expect: &'static [(Kind, bool)],
    instances: Vec<Params>,
) -> Claim {
    let quantity = set_quantity(expect);
    Entry { id, summary, family, quantity, check: Check::Set { name, expect }, instances }.claim()
}

fn every(
    id: &'static str,
    summary: &'static str,
    family: Fam,
    base: &'static str,
    expect: &'static [(Kind, bool)],
    instances: Vec<Params>,
) -> Claim {
    let quantity = set_quantity(expect);
    Entry { id, summary, family, quantity, check: Check::EverySet { base, expect }, instances }.claim()
}

fn custom(
    id: &'static str,
    summary: &'static str,
    family: Fam,
    quantity: Quantity,
    f: CustomFn,
    instances: Vec<Params>,
) -> Claim {
    Entry { id, summary, family, quantity, check: Check::Custom(f), instances }.claim()
}

fn slow(mut c: Claim, extra: Vec<Params>) -> Claim {
    c.slow_instances = extra;
    c
}

fn noted(mut c: Claim, note: &'static str) -> Claim {
    c.note = Some(note);
    c
}

const GOLDEN_D1: &str = include_str!("../golden/cpm_5_4_4_D1.txt");
const GOLDEN_E: &str = include_str!("../golden/cpm_4_3_4_E.txt");

/// Every checked statement, in report order.
pub fn claim_registry() -> Vec<Claim> {
    use Fam::*;
    use Kind::{Doubly, Resolving, Strong};

    let odd_cp = grid(&[3, 5, 7], &[3, 4]);
    let even_cp = grid(&[4, 6], &[3]);
    let odd_m2 = triples(&[(3, 3, 2), (5, 3, 2)]);
    let paths: Vec<Params> = [2, 3, 4, 5].iter().map(|&k| params(&[("k", k)])).collect();

    vec![
        val("Rem2.1-beta", "beta of an even cycle is 2", Cycle, Resolving, |_| 2, ns(&[4, 6, 8])),
        val("Rem2.1-psi", "psi of an even cycle is 3", Cycle, Doubly, |_| 3, ns(&[4, 6, 8])),
        val("Rem2.1-sdim", "sdim of an even cycle is ceil(n/2)", Cycle, Strong, |p| n_of(p).div_ceil(2), ns(&[4, 6, 8])),
        val("Rem2.2-beta", "beta of an odd cycle is 2", Cycle, Resolving, |_| 2, ns(&[3, 5, 7])),
        val("Rem2.2-psi", "psi of an odd cycle is 2", Cycle, Doubly, |_| 2, ns(&[3, 5, 7])),
        val("Rem2.2-sdim", "sdim of an odd cycle is ceil(n/2)", Cycle, Strong, |p| n_of(p).div_ceil(2), ns(&[3, 5, 7])),
        val("Rem2.3-beta", "beta of a path is 1", Path, Resolving, |_| 1, paths.clone()),
        val("Rem2.3-psi", "psi of a path is 2", Path, Doubly, |_| 2, paths),
        val("Thm2.1", "beta(Cn x Pk) = 2 for odd n", Cp, Resolving, |_| 2, odd_cp.clone()),
        slow(
            val("Thm2.2", "beta(Cn x Pk) = 3 for even n", Cp, Resolving, |_| 3, even_cp.clone()),
            grid(&[4, 6, 8], &[4]),
        ),
        val("Thm2.3", "sdim(Cn x Pk) = n", Cp, Strong, n_of, grid(&[3, 4, 5, 6], &[3])),
        val("Thm3.1", "psi(Cn x Pk) = 3 for odd n", Cp, Doubly, |_| 3, odd_cp.clone()),
        every("Thm3.1-A", "every A_i doubly resolves Cn x Pk", Cp, "A", DOUBLY, odd_cp.clone()),
        every("Thm3.1-B", "every B_j doubly resolves Cn x Pk", Cp, "B", DOUBLY, odd_cp.clone()),
        custom(
            "Thm3.1-M",
            "every M_i resolves but fails doubly on a compatible pair",
            Cp,
            Quantity::SetIsNotDoubly,
            |c| compatible_pair_failure(c, "M"),
            odd_cp.clone(),
        ),
        custom(
            "Thm3.1-N",
            "every N_j resolves but fails doubly on a compatible pair",
            Cp,
            Quantity::SetIsNotDoubly,
            |c| compatible_pair_failure(c, "N"),
            odd_cp.clone(),
        ),
        custom(
            "Thm3.1-class",
            "every minimum resolving set lies in V1 or Vk and has the M_i / N_j form",
            Cp,
            Quantity::Predicate,
            classification,
            grid(&[3, 5], &[3]),
        ),
        val("Thm3.2", "beta((Cn x Pk) x P2) = 3 for odd n", Cpm, Resolving, |_| 3, odd_m2.clone()),
        every("Thm3.2-A", "every A_i^(1) resolves (Cn x Pk) x P2", Cpm, "A", RESOLVING, odd_m2.clone()),
        Entry {
            id: "Lem3.1",
            summary: "psi((Cn x Pk) x P2) > 3 for odd n",
            family: Cpm,
            quantity: Quantity::Inequality,
            check: Check::Exceeds { kind: Doubly, bound: 3 },
            instances: odd_m2.clone(),
        }
        .claim(),
        every("Lem3.1-A", "no A_i^(1) doubly resolves (Cn x Pk) x P2", Cpm, "A", NOT_DOUBLY, odd_m2.clone()),
        val("Thm3.3", "psi((Cn x Pk) x P2) = 4 for odd n", Cpm, Doubly, |_| 4, odd_m2.clone()),
        every("Thm3.3-C", "every C_i doubly resolves (Cn x Pk) x P2", Cpm, "C", DOUBLY, odd_m2.clone()),
        noted(
            val("Con3.1", "psi((Cn x Pk) x Pm) = 4 for odd n", Cpm, Doubly, |_| 4, triples(&[(3, 3, 3), (5, 3, 3), (3, 3, 4)])),
            "stated for every m >= 2; spot-checked at m in {2, 3, 4}",
        ),
        every(
            "Con3.1-D",
            "every D_i doubly resolves (Cn x Pk) x Pm",
            Cpm,
            "D",
            DOUBLY,
            triples(&[(3, 3, 2), (3, 3, 3), (3, 3, 4), (5, 3, 2), (5, 3, 3), (5, 3, 4)]),
        ),
        Entry {
            id: "Ex3.1",
            summary: "representations of (C5 x P4) x P4 with respect to D1",
            family: Cpm,
            quantity: Quantity::Table,
            check: Check::Table { set: "D1", golden: GOLDEN_D1 },
            instances: triples(&[(5, 4, 4)]),
        }
        .claim(),
        val("Ex3.1-psi", "psi((C5 x P4) x P4) = 4", Cpm, Doubly, |_| 4, triples(&[(5, 4, 4)])),
        set("Ex3.1-D1", "D1 doubly resolves (C5 x P4) x P4", Cpm, "D1", DOUBLY, triples(&[(5, 4, 4)])),
        custom("Rem3.1", "no pair of vertices resolves Cn x Pk for even n", Cp, Quantity::Predicate, no_resolving_pair, even_cp.clone()),
        val("Lem3.2", "psi(Cn x Pk) = 4 for even n", Cp, Doubly, |_| 4, even_cp.clone()),
        set("Lem3.2-E1", "E1 resolves but does not doubly resolve", Cp, "E1", RESOLVING_NOT_DOUBLY, even_cp.clone()),
        set("Lem3.2-E2", "E2 resolves but does not doubly resolve", Cp, "E2", RESOLVING_NOT_DOUBLY, even_cp.clone()),
        set("Lem3.2-E3", "E3 doubly resolves Cn x Pk", Cp, "E3", DOUBLY, even_cp.clone()),
        slow(
            val("Thm3.4", "beta((Cn x Pk) x Pm) = 4 for even n", Cpm, Resolving, |_| 4, triples(&[(4, 3, 2), (4, 3, 3)])),
            triples(&[(6, 3, 2)]),
        ),
        set(
            "Thm3.4-E3",
            "E3^(1) resolves (Cn x Pk) x Pm",
            Cpm,
            "E3",
            RESOLVING,
            triples(&[(4, 3, 2), (4, 3, 3), (4, 3, 4), (6, 3, 2)]),
        ),
        noted(
            slow(
                val("Thm3.5", "psi((Cn x Pk) x Pm) = 5 for even n", Cpm, Doubly, |_| 5, triples(&[(4, 3, 2)])),
                triples(&[(4, 3, 3), (6, 3, 2)]),
            ),
            "stated for every m >= 2; spot-checked at m in {2, 3}",
        ),
        set("Thm3.5-E3", "E3^(1) does not doubly resolve (Cn x Pk) x Pm", Cpm, "E3", NOT_DOUBLY, triples(&[(4, 3, 2)])),
        set("Thm3.5-E4", "E4 doubly resolves (Cn x Pk) x Pm", Cpm, "E4", DOUBLY, triples(&[(4, 3, 2), (4, 3, 3), (4, 3, 4)])),
        Entry {
            id: "Ex3.2",
            summary: "representations of (C4 x P3) x P4 with respect to E",
            family: Cpm,
            quantity: Quantity::Table,
            check: Check::Table { set: "E", golden: GOLDEN_E },
            instances: triples(&[(4, 3, 4)]),
        }
        .claim(),
        noted(
            val("Ex3.2-psi", "psi((C4 x P3) x P4) = 5", Cpm, Doubly, |_| 5, triples(&[(4, 3, 4)])),
            "the example's own text gives 4 while exhibiting the 5-element set E; 5 is the value stated for the family",
        ),
        set("Ex3.2-E", "E doubly resolves (C4 x P3) x P4", Cpm, "E", DOUBLY, triples(&[(4, 3, 4)])),
        slow(
            val("Thm3.6", "sdim((Cn x Pk) x Pm) = 2n", Cpm, Strong, |p| 2 * n_of(p), triples(&[(3, 3, 2), (4, 3, 2)])),
            triples(&[(3, 3, 3), (5, 3, 2), (4, 4, 3)]),
        ),
        set(
            "Thm3.6-T",
            "T strongly resolves (Cn x Pk) x Pm",
            Cpm,
            "T",
            STRONG,
            triples(&[(3, 3, 2), (4, 3, 2), (3, 3, 3), (5, 3, 2)]),
        ),
        custom(
            "Thm3.6-mmd",
            "V1 of the first copy pairs off with Vk of the last copy as MMD vertices, and V1 of the last with Vk of the first",
            Cpm,
            Quantity::Predicate,
            layer_mmd,
            triples(&[(3, 3, 2), (4, 3, 2), (3, 3, 3), (5, 3, 2)]),
        ),
        custom(
            "Prop3.1",
            "every (n-1)-subset of V1 doubly resolves H(n)",
            H,
            Quantity::SetIsDoubly,
            v1_subsets_doubly,
            ns(&[5, 6]),
        ),
        set("Prop3.2", "R2 resolves H(n) but does not doubly resolve it", H, "R2", RESOLVING_NOT_DOUBLY, ns(&[5, 6])),
        slow(
            val("Thm3.7", "beta(H(n)) = n - n/3 when 3 | n", H, Resolving, |p| n_of(p) - n_of(p) / 3, ns(&[6])),
            ns(&[9]),
        ),
        set("Thm3.7-P", "P resolves H(n)", H, "P", RESOLVING, ns(&[6, 9, 12])),
        custom(
            "Cor3.1",
            "2k < beta(H(n+1)) < beta(H(n+2)) <= 2(k+1) for n = 3k",
            H,
            Quantity::Inequality,
            beta_chain,
            ns(&[6]),
        ),
        custom("Ex3.3", "P is a minimal resolving set of H(12)", H, Quantity::Predicate, p_minimal, ns(&[12])),
        custom(
            "Lem3.3",
            "every subset of N(W_r) with at least n-2 vertices resolves L(n)",
            L,
            Quantity::SetIsResolving,
            nw_subsets_resolve,
            ns(&[5, 6]),
        ),
        set("Lem3.3-C1", "C1 does not resolve L(n)", L, "C1", NOT_RESOLVING, ns(&[5, 6])),
        slow(val("Thm3.8", "beta(L(n)) = n - 2", L, Resolving, |p| n_of(p) - 2, ns(&[5])), ns(&[6])),
        custom(
            "Lem3.4",
            "no (n-2)-subset of N(W_r) doubly resolves L(n)",
            L,
            Quantity::SetIsNotDoubly,
            nw_subsets_not_doubly,
            ns(&[5, 6]),
        ),
        set("Lem3.4-C2", "C2 resolves L(n) but does not doubly resolve it", L, "C2", RESOLVING_NOT_DOUBLY, ns(&[5, 6])),
        slow(val("Thm3.9", "psi(L(n)) = n - 1", L, Doubly, |p| n_of(p) - 1, ns(&[5])), ns(&[6])),
        set("Thm3.9-C3", "C3 = N(W_1) doubly resolves L(n)", L, "C3", DOUBLY, ns(&[5, 6])),
        custom(
            "Prop3.3",
            "no N(W_r) strongly resolves L(n)",
            L,
            Quantity::SetIsNotStrong,
            nw_not_strong,
            ns(&[5, 6]),
        ),
        val("Thm3.10", "sdim(L(n)) = n(n - 2)", L, Strong, |p| n_of(p) * (n_of(p) - 2), ns(&[5, 6])),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "SKIPPED")]
    Skipped,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Skipped => "SKIPPED",
        })
    }
}

/// A pair of vertices that a set fails to tell apart.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairReport {
    pub u: String,
    pub v: String,
    /// Constant difference `r(u|Q) - r(v|Q)`, for doubly failures.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<i32>,
    /// Shared representation, for resolving failures.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub representation: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClaimReport {
    pub id: String,
    pub family: String,
    pub params: Params,
    pub quantity: Quantity,
    pub verdict: Verdict,
    pub expected: String,
    pub computed: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<PairReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub details: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

/// Result of one check, before it is wrapped into a report.
#[derive(Debug, Clone, Default)]
pub struct Outcome {
    pub pass: bool,
    pub skipped: bool,
    pub computed: String,
    pub witness: Option<Vec<String>>,
    pub violation: Option<PairReport>,
    pub details: Vec<String>,
}

pub struct Ctx<'a> {
    pub built: &'a Built,
    pub d: &'a DistanceMatrix,
    pub params: &'a Params,
    pub solve: &'a SolveOptions,
}

impl Ctx<'_> {
    fn labels(&self, q: &[Vertex]) -> Vec<String> {
        q.iter().map(|&v| self.built.graph().label(v).to_string()).collect()
    }

    fn pair_report(&self, kind: Kind, q: &[Vertex]) -> Result<Option<PairReport>, ClaimError> {
        let g = self.built.graph();
        Ok(violation(kind, q, self.d)?.map(|viol| PairReport {
            u: g.label(viol.u).to_string(),
            v: g.label(viol.v).to_string(),
            lambda: viol.lambda,
            representation: (kind == Kind::Resolving)
                .then(|| representation(viol.u, q, self.d).map(|r| r.to_string()))
                .transpose()
                .ok()
                .flatten(),
        }))
    }

    fn layered(&self) -> &LayeredProduct {
        match self.built {
            Built::Layered(p) => p,
            _ => unreachable!("registry pairs this check with a layered family"),
        }
    }

    fn l(&self) -> &LGraph {
        match self.built {
            Built::L(l) => l,
            _ => unreachable!("registry pairs this check with L(n)"),
        }
    }
}

/// Runs `expect` against one set; the first failing requirement (or, for a
/// negative requirement that holds, its violating pair) is recorded.
fn check_set(ctx: &Ctx, q: &VertexSet, expect: &[(Kind, bool)], out: &mut Outcome) -> Result<bool, ClaimError> {
    let mut ok = true;
    let mut seen = Vec::new();
    for &(kind, wanted) in expect {
        let has = satisfies(kind, q, ctx.d)?;
        seen.push(if has { kind.to_string() } else { format!("not {kind}") });
        if !has && out.violation.is_none() {
            out.violation = ctx.pair_report(kind, q)?;
        }
        ok &= has == wanted;
    }
    out.computed = seen.join(", ");
    Ok(ok)
}

fn run_check(claim: &Claim, ctx: &Ctx) -> Result<Outcome, ClaimError> {
    let mut out = Outcome::default();
    match claim.check {
        Check::Value { kind, expected } => match solve(ctx.built.graph(), kind, ctx.solve) {
            Ok(r) => {
                out.pass = r.size == expected(ctx.params);
                out.computed = r.size.to_string();
                out.witness = Some(ctx.labels(&r.witness));
            }
            Err(e) => skip(&mut out, e)?,
        },
        Check::Exceeds { kind, bound } => match solve(ctx.built.graph(), kind, ctx.solve) {
            Ok(r) => {
                out.pass = r.size > bound;
                out.computed = r.size.to_string();
                out.witness = Some(ctx.labels(&r.witness));
            }
            Err(e) => skip(&mut out, e)?,
        },
        Check::Set { name, expect } => {
            let q = build_named_set(name, ctx.built)?;
            out.witness = Some(ctx.labels(&q));
            out.pass = check_set(ctx, &q, expect, &mut out)?;
        }
        Check::EverySet { base, expect } => {
            let range = index_range(base, ctx.built).expect("indexed set");
            let mut failed = Vec::new();
            let mut first = None;
            for i in range.clone() {
                let name = format!("{base}{i}");
                let q = build_named_set(&name, ctx.built)?;
                let mut one = Outcome::default();
                if !check_set(ctx, &q, expect, &mut one)? {
                    failed.push(format!("{name}: {}", one.computed));
                }
                if first.is_none() {
                    first = Some((ctx.labels(&q), one));
                }
            }
            let (w, one) = first.expect("non-empty range");
            out.witness = Some(w);
            out.violation = one.violation;
            out.pass = failed.is_empty();
            out.computed = if failed.is_empty() {
                format!("{} for all {base}{}..{base}{}", one.computed, range.start(), range.end())
            } else {
                format!("{} of {} sets differ", failed.len(), range.count())
            };
            out.details = failed;
        }
        Check::Table { set, golden } => {
            let ours = emit_table(ctx.built, set)?;
            let mine: Vec<&str> = ours.lines().collect();
            let theirs: Vec<&str> = golden.lines().collect();
            let mut diffs = Vec::new();
            for (a, b) in mine.iter().zip(&theirs) {
                if a != b {
                    diffs.push(format!("printed {b} / computed {}", a.rsplit(" = ").next().unwrap_or(a)));
                }
            }
            if mine.len() != theirs.len() {
                diffs.push(format!("printed {} rows, computed {}", theirs.len(), mine.len()));
            }
            out.pass = diffs.is_empty();
            out.computed =
                format!("{} of {} rows match", mine.iter().zip(&theirs).filter(|(a, b)| a == b).count(), theirs.len());
            out.witness = Some(ctx.labels(&build_named_set(set, ctx.built)?));
            out.details = diffs;
        }
        Check::Custom(f) => out = f(ctx)?,
    }
    Ok(out)
}

fn skip(out: &mut Outcome, e: SolveError) -> Result<(), ClaimError> {
    match e {
        SolveError::BudgetExceeded { lower_bound, upper_bound, .. } => {
            out.skipped = true;
            out.computed = format!("between {lower_bound} and {} (budget exhausted)", upper_bound.len());
            Ok(())
        }
        SolveError::Graph(g) => Err(g.into()),
        SolveError::TooFewVertices => Err(bad_params("solver", "graph too small")),
    }
}

fn compatible_pair_failure(ctx: &Ctx, base: &'static str) -> Result<Outcome, ClaimError> {
    let p = ctx.layered();
    let mut out = Outcome::default();
    let mut failed = Vec::new();
    for i in index_range(base, ctx.built).expect("indexed set") {
        let q = build_named_set(&format!("{base}{i}"), ctx.built)?;
        let resolving = satisfies(Kind::Resolving, &q, ctx.d)?;
        let doubly = satisfies(Kind::Doubly, &q, ctx.d)?;
        // x_{i+n} and x_{i+2n} share every distance difference
        let (a, b) = (p.vertex(1, i + p.n), p.vertex(1, i + 2 * p.n));
        let diffs: Vec<i32> = q.iter().map(|&w| ctx.d.get(a, w) as i32 - ctx.d.get(b, w) as i32).collect();
        let constant = diffs.iter().all(|&x| x == -1);
        if !(resolving && !doubly && constant) {
            failed.push(format!("{base}{i}: resolving={resolving} doubly={doubly} difference={diffs:?}"));
        }
        if out.violation.is_none() {
            out.witness = Some(ctx.labels(&q));
            let g = ctx.built.graph();
            out.violation = Some(PairReport {
                u: g.label(a).to_string(),
                v: g.label(b).to_string(),
                lambda: constant.then_some(-1),
                representation: None,
            });
        }
    }
    out.pass = failed.is_empty();
    out.computed = if out.pass {
        format!("every {base} set resolves; each fails doubly on x_(i+n), x_(i+2n) with difference -1")
    } else {
        format!("{} sets differ", failed.len())
    };
    out.details = failed;
    Ok(out)
}

fn classification(ctx: &Ctx) -> Result<Outcome, ClaimError> {
    let p = ctx.layered();
    let (n, k) = (p.n, p.k);
    let c = n.div_ceil(2);
    let nv = p.graph.n_vertices();
    let mut minimum = Vec::new();
    for a in 0..nv {
        for b in a + 1..nv {
            if resolving_violation(&[a, b], ctx.d)?.is_none() {
                minimum.push((a, b));
            }
        }
    }
    let mut out = Outcome::default();
    if minimum.is_empty() {
        out.computed = "no resolving pair".into();
        return Ok(out);
    }
    let forms: Vec<(usize, usize)> = (1..=c).map(|i| (i, c + i - 1)).chain((1..=n / 2).map(|j| (j, c + j))).collect();
    for &(a, b) in &minimum {
        let (ca, cb) = (p.coord(a), p.coord(b));
        let layer_ok = ca.layer == cb.layer && (ca.layer == 1 || ca.layer == k);
        let mut pos = [ca.position, cb.position];
        pos.sort_unstable();
        if !(layer_ok && forms.contains(&(pos[0], pos[1]))) {
            out.details.push(format!("{{{}, {}}}", p.graph.label(a), p.graph.label(b)));
        }
    }
    out.pass = out.details.is_empty();
    out.computed = format!(
        "{} minimum resolving sets of size 2, {} outside the M_i / N_j form in V1 or Vk",
        minimum.len(),
        out.details.len()
    );
    Ok(out)
}

fn no_resolving_pair(ctx: &Ctx) -> Result<Outcome, ClaimError> {
    let nv = ctx.built.graph().n_vertices();
    let mut out = Outcome::default();
    for a in 0..nv {
        for b in a + 1..nv {
            if resolving_violation(&[a, b], ctx.d)?.is_none() {
                out.computed = "a resolving pair exists".into();
                out.witness = Some(ctx.labels(&[a, b]));
                return Ok(out);
            }
        }
    }
    out.pass = true;
    out.computed = format!("none of the {} pairs resolves", nv * (nv - 1) / 2);
    Ok(out)
}

fn layer_mmd(ctx: &Ctx) -> Result<Outcome, ClaimError> {
    let p = ctx.layered();
    let mmd = mmd_pairs(&p.graph, ctx.d);
    let mut out = Outcome::default();
    let mut check = |from: Vec<Vertex>, to: Vec<Vertex>, what: &str| {
        for &u in &from {
            if !to.iter().any(|&v| mmd.contains(u, v)) {
                out.details.push(format!("{} has no MMD partner in {what}", p.graph.label(u)));
            }
        }
    };
    let (k, m) = (p.k, p.m);
    check(p.layer(1, 1), p.layer(m, k), "V_k of the last copy");
    check(p.layer(m, k), p.layer(1, 1), "V_1 of the first copy");
    check(p.layer(m, 1), p.layer(1, k), "V_k of the first copy");
    check(p.layer(1, k), p.layer(m, 1), "V_1 of the last copy");
    out.pass = out.details.is_empty();
    out.computed = format!("{} MMD pairs; {} layer vertices without a partner", mmd.0.len(), out.details.len());
    Ok(out)
}

fn h_of<'a>(ctx: &'a Ctx) -> &'a HGraph {
    match ctx.built {
        Built::H(h) => h,
        _ => unreachable!("registry pairs this check with H(n)"),
    }
}

fn v1_subsets_doubly(ctx: &Ctx) -> Result<Outcome, ClaimError> {
    let h = h_of(ctx);
    let mut out = Outcome::default();
    for drop in 1..=h.n {
        let q: Vec<Vertex> = (1..=h.n).filter(|&r| r != drop).map(|r| h.point(r)).collect();
        if let Some(viol) = doubly_violation(&q, ctx.d)? {
            if out.violation.is_none() {
                out.witness = Some(ctx.labels(&q));
                out.violation = ctx.pair_report(Kind::Doubly, &q)?;
            }
            out.details.push(format!(
                "V1 - {{v{drop}}} fails on ({}, {}) with difference {}",
                h.graph.label(viol.u),
                h.graph.label(viol.v),
                viol.lambda.unwrap_or(0)
            ));
        }
    }
    let failures = out.details.len();
    out.pass = failures == 0;
    if !out.pass {
        // diagnostic only: the same subsets restricted to pairs outside the set
        let outside = (1..=h.n)
            .filter(|&drop| {
                let q: Vec<Vertex> = (1..=h.n).filter(|&r| r != drop).map(|r| h.point(r)).collect();
                separates_outside(&q, ctx.d)
            })
            .count();
        out.details.push(format!("{outside} of {} subsets separate every pair of vertices outside the subset", h.n));
    }
    out.computed = format!("{} of {} subsets are doubly resolving", h.n - failures, h.n);
    Ok(out)
}

fn separates_outside(q: &[Vertex], d: &DistanceMatrix) -> bool {
    let n = d.n();
    (0..n)
        .filter(|v| !q.contains(v))
        .all(|u| (u + 1..n).filter(|v| !q.contains(v)).all(|v| crate::kernel::doubly_resolves_pair(u, v, q, d)))
}

fn beta_chain(ctx: &Ctx) -> Result<Outcome, ClaimError> {
    let n = n_of(ctx.params);
    if !n.is_multiple_of(3) {
        return Err(bad_params("Cor3.1", format!("n must be a multiple of 3, got {n}")));
    }
    let k = n / 3;
    let mut out = Outcome::default();
    let mut betas = Vec::new();
    for nn in [n + 1, n + 2] {
        let g = FamilySpec::H { n: nn }.build()?;
        match solve(g.graph(), Kind::Resolving, ctx.solve) {
            Ok(r) => betas.push(r.size),
            Err(e) => {
                skip(&mut out, e)?;
                return Ok(out);
            }
        }
    }
    out.pass = 2 * k < betas[0] && betas[0] < betas[1] && betas[1] <= 2 * (k + 1);
    out.computed = format!("beta(H({})) = {}, beta(H({})) = {}", n + 1, betas[0], n + 2, betas[1]);
    Ok(out)
}

fn p_minimal(ctx: &Ctx) -> Result<Outcome, ClaimError> {
    let q = build_named_set("P", ctx.built)?;
    let mut out = Outcome { witness: Some(ctx.labels(&q)), ..Outcome::default() };
    let resolving = satisfies(Kind::Resolving, &q, ctx.d)?;
    if !resolving {
        out.violation = ctx.pair_report(Kind::Resolving, &q)?;
    }
    for drop in 0..q.len() {
        let mut smaller = q.members().to_vec();
        let gone = smaller.remove(drop);
        if satisfies(Kind::Resolving, &smaller, ctx.d)? {
            out.details.push(format!("P without {} still resolves", ctx.built.graph().label(gone)));
        }
    }
    out.pass = resolving && out.details.is_empty();
    out.computed = format!(
        "P {} ; {} of {} one-smaller subsets resolve",
        if resolving { "resolves" } else { "does not resolve" },
        out.details.len(),
        q.len()
    );
    Ok(out)
}

/// All `size`-subsets of `items`, in lexicographic order.
fn subsets(items: &[Vertex], size: usize) -> Vec<Vec<Vertex>> {
    let mut all = Vec::new();
    let mut pick = Vec::with_capacity(size);
    fn go(items: &[Vertex], start: usize, size: usize, pick: &mut Vec<Vertex>, all: &mut Vec<Vec<Vertex>>) {
        if pick.len() == size {
            all.push(pick.clone());
            return;
        }
        for i in start..items.len() {
            pick.push(items[i]);
            go(items, i + 1, size, pick, all);
            pick.pop();
        }
    }
    go(items, 0, size, &mut pick, &mut all);
    all
}

fn nw_subsets_resolve(ctx: &Ctx) -> Result<Outcome, ClaimError> {
    let l = ctx.l();
    let mut out = Outcome::default();
    let mut count = 0;
    for r in 1..=l.n {
        let nw = l.neighborhood_of_clique(r)?;
        for size in l.n - 2..=nw.len() {
            for q in subsets(&nw, size) {
                count += 1;
                if !satisfies(Kind::Resolving, &q, ctx.d)? {
                    if out.violation.is_none() {
                        out.witness = Some(ctx.labels(&q));
                        out.violation = ctx.pair_report(Kind::Resolving, &q)?;
                    }
                    out.details.push(format!("{:?}", ctx.labels(&q)));
                }
            }
        }
    }
    out.pass = out.details.is_empty();
    out.computed = format!("{} of {count} subsets resolve", count - out.details.len());
    Ok(out)
}

fn nw_subsets_not_doubly(ctx: &Ctx) -> Result<Outcome, ClaimError> {
    let l = ctx.l();
    let mut out = Outcome::default();
    let mut count = 0;
    for r in 1..=l.n {
        for q in subsets(&l.neighborhood_of_clique(r)?, l.n - 2) {
            count += 1;
            if satisfies(Kind::Doubly, &q, ctx.d)? {
                out.details.push(format!("{:?}", ctx.labels(&q)));
            } else if out.violation.is_none() {
                out.witness = Some(ctx.labels(&q));
                out.violation = ctx.pair_report(Kind::Doubly, &q)?;
            }
        }
    }
    out.pass = out.details.is_empty();
    out.computed = format!("{} of {count} subsets fail to doubly resolve", count - out.details.len());
    Ok(out)
}

fn nw_not_strong(ctx: &Ctx) -> Result<Outcome, ClaimError> {
    let l = ctx.l();
    let mut out = Outcome::default();
    for r in 1..=l.n {
        let q = l.neighborhood_of_clique(r)?;
        if satisfies(Kind::Strong, &q, ctx.d)? {
            out.details.push(format!("N(W_{r}) strongly resolves"));
        } else if out.violation.is_none() {
            out.witness = Some(ctx.labels(&q));
            out.violation = ctx.pair_report(Kind::Strong, &q)?;
        }
    }
    out.pass = out.details.is_empty();
    out.computed = format!("{} of {} sets N(W_r) fail to strongly resolve", l.n - out.details.len(), l.n);
    Ok(out)
}

/// Which claims to run and how.
#[derive(Debug, Clone, Default)]
pub struct VerifyOptions {
    /// Claim id filters; empty selects everything.
    pub ids: Vec<String>,
    /// Replaces the instances of each selected claim by its first instance
    /// with these parameters overridden.
    pub params: Option<Params>,
    pub slow: bool,
    pub timing: bool,
    pub solve: SolveOptions,
}

/// Checks the selected claims; failures are verdicts, not errors.
pub fn verify_claims(opts: &VerifyOptions) -> Result<Vec<ClaimReport>, ClaimError> {
    let registry = claim_registry();
    let selected: Vec<&Claim> =
        registry.iter().filter(|c| opts.ids.is_empty() || opts.ids.iter().any(|f| c.matches(f))).collect();
    if let Some(f) = opts.ids.iter().find(|f| !registry.iter().any(|c| c.matches(f))) {
        return Err(ClaimError::UnknownClaim(f.clone()));
    }
    let mut reports = Vec::new();
    for claim in selected {
        let instances = match &opts.params {
            Some(over) => {
                let mut p = claim.instances[0].clone();
                for (key, &value) in over {
                    match p.get_mut(key) {
                        Some(slot) => *slot = value,
                        None => return Err(bad_params(claim.id, format!("no parameter {key:?}"))),
                    }
                }
                vec![p]
            }
            None if opts.slow => claim.instances.iter().chain(&claim.slow_instances).cloned().collect(),
            None => claim.instances.clone(),
        };
        for p in instances {
            reports.push(verify_one(claim, &p, opts)?);
        }
    }
    Ok(reports)
}

pub fn verify_one(claim: &Claim, p: &Params, opts: &VerifyOptions) -> Result<ClaimReport, ClaimError> {
    let start = Instant::now();
    let spec = claim.family.spec(p)?;
    let built = spec.build()?;
    let d = all_pairs_distances(built.graph())?;
    let ctx = Ctx { built: &built, d: &d, params: p, solve: &opts.solve };
    let out = run_check(claim, &ctx)?;
    let verdict = if out.skipped {
        Verdict::Skipped
    } else if out.pass {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(ClaimReport {
        id: claim.id.to_string(),
        family: spec.to_string(),
        params: p.clone(),
        quantity: claim.quantity,
        verdict,
        expected: claim.expected(p),
        computed: out.computed,
        witness: out.witness,
        violation: out.violation,
        details: out.details,
        note: claim.note.map(str::to_string),
        elapsed_ms: opts.timing.then(|| start.elapsed().as_millis() as u64),
    })
}
