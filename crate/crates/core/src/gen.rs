//! Named lattices, random and exhaustive small-lattice generation, and
//! enumeration of operators on small carriers.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::constructions::{required_carrier, MethodId, Role};
use crate::lattice::{build_lattice, ElementId, FiniteBoundedLattice};
use crate::ops::{canonical_op, classify_op, CanonicalKind, Carrier, OpTable};
use crate::verifier::ComponentSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("unknown builtin lattice `{0}`")]
    UnknownName(String),
    #[error("no lattice found after {0} attempts")]
    RetriesExhausted(usize),
    #[error("size {0} is outside the supported range {1}")]
    SizeOutOfRange(usize, &'static str),
    #[error("carrier of {0} elements is too large to enumerate (max 5)")]
    CarrierTooLarge(usize),
    #[error("carrier has no {0} element")]
    MissingBound(&'static str),
}

fn named(labels: &[&str], covers: &[(&str, &str)]) -> FiniteBoundedLattice {
    build_lattice(labels, covers).expect("builtin lattice is valid")
}

/// `0<a<e,c,f` with `e,c,f<g<1`.
pub fn l1() -> FiniteBoundedLattice {
    named(
        &["0", "a", "e", "c", "f", "g", "1"],
        &[
            ("0", "a"),
            ("a", "e"),
            ("a", "c"),
            ("a", "f"),
            ("e", "g"),
            ("c", "g"),
            ("f", "g"),
            ("g", "1"),
        ],
    )
}

/// [`l1`] with `d` inserted between `c` and `g`.
pub fn l2() -> FiniteBoundedLattice {
    named(
        &["0", "a", "e", "c", "d", "f", "g", "1"],
        &[
            ("0", "a"),
            ("a", "e"),
            ("a", "c"),
            ("a", "f"),
            ("c", "d"),
            ("e", "g"),
            ("d", "g"),
            ("f", "g"),
            ("g", "1"),
        ],
    )
}

/// `k`-element chain `0 < a1 < … < 1`.
pub fn chain(k: usize) -> Result<FiniteBoundedLattice, GenError> {
    if k < 2 {
        return Err(GenError::SizeOutOfRange(k, "k >= 2"));
    }
    let mut labels = vec!["0".to_string()];
    labels.extend((1..k - 1).map(|i| format!("a{i}")));
    labels.push("1".into());
    let covers: Vec<_> = labels.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
    Ok(build_lattice(&labels, &covers).expect("chain is a lattice"))
}

/// Diamond `{0,e,c,1}` with `e∥c`.
pub fn m2() -> FiniteBoundedLattice {
    named(&["0", "e", "c", "1"], &[("0", "e"), ("0", "c"), ("e", "1"), ("c", "1")])
}

/// Pentagon `0<a<b<1`, `0<c<1`.
pub fn n5() -> FiniteBoundedLattice {
    named(
        &["0", "a", "b", "c", "1"],
        &[("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
    )
}

/// `0<e<s<1` and `0<c<1`: `I_e={c}` and `c` is incomparable with all of `[e,1[`.
pub fn probe_p() -> FiniteBoundedLattice {
    named(
        &["0", "e", "s", "c", "1"],
        &[("0", "e"), ("e", "s"), ("s", "1"), ("0", "c"), ("c", "1")],
    )
}

/// `0<r<e<s<1` and `0<c<1`: both `]0,e[` and `]e,1[` are non-empty and `I_e={c}`.
pub fn probe_q() -> FiniteBoundedLattice {
    named(
        &["0", "r", "e", "s", "c", "1"],
        &[("0", "r"), ("r", "e"), ("e", "s"), ("s", "1"), ("0", "c"), ("c", "1")],
    )
}

/// `0<r<e<1` and `r<c<1`: every element of `]0,e[` lies below `I_e={c}`.
pub fn probe_r() -> FiniteBoundedLattice {
    named(
        &["0", "r", "e", "c", "1"],
        &[("0", "r"), ("r", "e"), ("r", "c"), ("e", "1"), ("c", "1")],
    )
}

/// Order dual of [`probe_r`]: `0<e<s<1` and `0<c<s`.
pub fn probe_f() -> FiniteBoundedLattice {
    named(
        &["0", "e", "c", "s", "1"],
        &[("0", "e"), ("0", "c"), ("e", "s"), ("c", "s"), ("s", "1")],
    )
}

pub const BUILTIN_NAMES: [&str; 9] = ["L1", "L2", "chain_n(k)", "M2", "N5", "probe_P", "probe_Q", "probe_R", "probe_F"];

/// Looks up a builtin by name. Chains are written `chain_n(k)` or `chain<k>`.
pub fn builtin(name: &str) -> Result<FiniteBoundedLattice, GenError> {
    let unknown = || GenError::UnknownName(name.to_string());
    let lower = name.to_ascii_lowercase();
    let chain_len = lower
        .strip_prefix("chain_n(")
        .and_then(|s| s.strip_suffix(')'))
        .or_else(|| lower.strip_prefix("chain"));
    if let Some(k) = chain_len {
        return chain(k.parse().map_err(|_| unknown())?);
    }
    Ok(match lower.as_str() {
        "l1" => l1(),
        "l2" => l2(),
        "m2" => m2(),
        "n5" => n5(),
        "probe_p" | "p" => probe_p(),
        "probe_q" => probe_q(),
        "probe_r" => probe_r(),
        "probe_f" => probe_f(),
        _ => return Err(unknown()),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenConfig {
    pub size: usize,
    pub seed: u64,
    pub max_retries: usize,
}

impl GenConfig {
    pub fn new(size: usize, seed: u64) -> Self {
        GenConfig {
            size,
            seed,
            max_retries: 10_000,
        }
    }
}

fn generic_labels(n: usize) -> Vec<String> {
    let mut labels = vec!["0".to_string()];
    labels.extend((1..n - 1).map(|i| format!("x{i}")));
    labels.push("1".into());
    labels
}

/// Seeded rejection sampling over random graded cover sets.
pub fn random_lattice(cfg: GenConfig) -> Result<FiniteBoundedLattice, GenError> {
    let n = cfg.size;
    if n < 2 {
        return Err(GenError::SizeOutOfRange(n, "size >= 2"));
    }
    let labels = generic_labels(n);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.max_retries.max(1) {
        let mid = n - 2;
        let levels = if mid == 0 { 0 } else { rng.gen_range(1..=mid) };
        // Every level gets at least one element; the rest are spread at random.
        let mut level_of: Vec<usize> = (0..levels).collect();
        level_of.extend((levels..mid).map(|_| rng.gen_range(0..levels)));
        level_of.shuffle(&mut rng);
        level_of.sort_unstable();

        let mut covers: Vec<(usize, usize)> = Vec::new();
        for i in 0..mid {
            let node = i + 1;
            let below: Vec<usize> = if level_of[i] == 0 {
                vec![0]
            } else {
                (0..mid).filter(|&j| level_of[j] + 1 == level_of[i]).map(|j| j + 1).collect()
            };
            let mut picked: Vec<usize> = below.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
            if picked.is_empty() {
                picked.push(*below.choose(&mut rng).expect("previous level is non-empty"));
            }
            covers.extend(picked.into_iter().map(|b| (b, node)));
        }
        let has_upper: Vec<bool> = (0..n).map(|x| covers.iter().any(|&(a, _)| a == x)).collect();
        covers.extend((0..n - 1).filter(|&x| !has_upper[x]).map(|x| (x, n - 1)));

        let pairs: Vec<_> = covers.iter().map(|&(a, b)| (labels[a].as_str(), labels[b].as_str())).collect();
        if let Ok(l) = build_lattice(&labels, &pairs) {
            return Ok(l);
        }
    }
    Err(GenError::RetriesExhausted(cfg.max_retries))
}

/// Every bounded lattice on `n` elements (2 ≤ n ≤ 6), once per isomorphism class.
///
/// Elements are labelled `0, a, b, c, d, 1` along the canonical linear extension.
pub fn enumerate_lattices(n: usize) -> Result<Vec<FiniteBoundedLattice>, GenError> {
    if !(2..=6).contains(&n) {
        return Err(GenError::SizeOutOfRange(n, "2..=6"));
    }
    let m = n - 2;
    // Strict orders on the middle elements with i<j whenever i precedes j.
    let slots: Vec<(usize, usize)> = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
    let mut classes: BTreeMap<Vec<bool>, Vec<bool>> = BTreeMap::new();
    for mask in 0u32..(1 << slots.len()) {
        let mut lt = vec![false; m * m];
        for (k, &(i, j)) in slots.iter().enumerate() {
            lt[i * m + j] = mask >> k & 1 == 1;
        }
        let transitive = (0..m).all(|i| {
            (0..m).all(|j| (0..m).all(|k| !(lt[i * m + j] && lt[j * m + k]) || lt[i * m + k]))
        });
        if !transitive {
            continue;
        }
        let full = with_bounds(&lt, m);
        if FiniteBoundedLattice::from_relation(generic_labels(n), full.clone()).is_err() {
            continue;
        }
        let key = canonical_form(&lt, m);
        classes.entry(key.clone()).or_insert(key);
    }
    let letters = ["a", "b", "c", "d"];
    let mut labels = vec!["0".to_string()];
    labels.extend(letters[..m].iter().map(|s| s.to_string()));
    labels.push("1".into());
    Ok(classes
        .into_values()
        .map(|key| {
            let lt = decode(&key, m);
            FiniteBoundedLattice::from_relation(labels.clone(), with_bounds(&lt, m)).expect("filtered lattice")
        })
        .collect())
}

fn with_bounds(lt: &[bool], m: usize) -> Vec<bool> {
    let n = m + 2;
    let mut rel = vec![false; n * n];
    for x in 0..n {
        rel[x * n + x] = true;
        rel[x] = true;
        rel[x * n + n - 1] = true;
    }
    for i in 0..m {
        for j in 0..m {
            if lt[i * m + j] {
                rel[(i + 1) * n + j + 1] = true;
            }
        }
    }
    rel
}

/// Upper-triangle bits of the order, minimized over relabelings that keep the
/// labelling natural.
fn canonical_form(lt: &[bool], m: usize) -> Vec<bool> {
    let mut best: Option<Vec<bool>> = None;
    let mut perm: Vec<usize> = (0..m).collect();
    permutations(&mut perm, 0, &mut |p| {
        // p[new] = old; natural if every old-order pair keeps its direction.
        let natural = (0..m).all(|a| (a + 1..m).all(|b| !lt[p[b] * m + p[a]]));
        if !natural {
            return;
        }
        let code: Vec<bool> = (0..m).flat_map(|a| (a + 1..m).map(move |b| (a, b))).map(|(a, b)| lt[p[a] * m + p[b]]).collect();
        if best.as_ref().is_none_or(|b| code < *b) {
            best = Some(code);
        }
    });
    best.unwrap_or_default()
}

fn decode(code: &[bool], m: usize) -> Vec<bool> {
    let mut lt = vec![false; m * m];
    let mut it = code.iter();
    for a in 0..m {
        for b in a + 1..m {
            lt[a * m + b] = *it.next().expect("code length");
        }
    }
    lt
}

fn permutations(p: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        visit(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, visit);
        p.swap(k, i);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OperatorKind {
    TNorm,
    TConorm,
    TSubnorm,
    TSubconorm,
}

impl OperatorKind {
    pub fn for_role(role: Role) -> Option<OperatorKind> {
        match role {
            Role::TNorm => Some(OperatorKind::TNorm),
            Role::TConorm => Some(OperatorKind::TConorm),
            Role::SubNorm => Some(OperatorKind::TSubnorm),
            Role::SubConorm => Some(OperatorKind::TSubconorm),
            Role::ChainOps => None,
        }
    }
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OperatorKind::TNorm => "tnorm",
            OperatorKind::TConorm => "tconorm",
            OperatorKind::TSubnorm => "tsubnorm",
            OperatorKind::TSubconorm => "tsubconorm",
        })
    }
}

impl FromStr for OperatorKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "tnorm" => Ok(OperatorKind::TNorm),
            "tconorm" => Ok(OperatorKind::TConorm),
            "tsubnorm" => Ok(OperatorKind::TSubnorm),
            "tsubconorm" => Ok(OperatorKind::TSubconorm),
            _ => Err(format!("unknown operator kind `{s}`")),
        }
    }
}

/// All operators of `kind` on `carrier`, at most `cap` of them, in a fixed order.
pub fn enumerate_operators(kind: OperatorKind, carrier: &Carrier, cap: usize) -> Result<Vec<OpTable>, GenError> {
    let n = carrier.len();
    if n > 5 {
        return Err(GenError::CarrierTooLarge(n));
    }
    let l = carrier.lattice().clone();
    let m = carrier.members().to_vec();
    let neutral = match kind {
        OperatorKind::TNorm => Some(carrier.greatest().ok_or(GenError::MissingBound("greatest"))?),
        OperatorKind::TConorm => Some(carrier.least().ok_or(GenError::MissingBound("least"))?),
        _ => None,
    };
    let below = matches!(kind, OperatorKind::TNorm | OperatorKind::TSubnorm);

    let mut grid: Vec<Option<ElementId>> = vec![None; n * n];
    if let Some(u) = neutral {
        let iu = carrier.position(u).expect("bound in carrier");
        for i in 0..n {
            grid[iu * n + i] = Some(m[i]);
            grid[i * n + iu] = Some(m[i]);
        }
    }
    let cells: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i..n).map(move |j| (i, j)))
        .filter(|&(i, j)| grid[i * n + j].is_none())
        .collect();

    let candidates = |i: usize, j: usize| -> Vec<ElementId> {
        let (x, y) = (m[i], m[j]);
        m.iter()
            .copied()
            .filter(|&v| if below { l.leq(v, l.meet(x, y)) } else { l.leq(l.join(x, y), v) })
            .collect()
    };
    let consistent = |grid: &Grid, i: usize, j: usize, v: ElementId| -> bool {
        // Monotone in the first argument along column j (symmetry covers rows).
        (0..n).all(|k| match grid[k * n + j] {
            Some(w) if l.leq(m[k], m[i]) => l.leq(w, v),
            Some(w) if l.leq(m[i], m[k]) => l.leq(v, w),
            _ => true,
        }) && (0..n).all(|k| match grid[i * n + k] {
            Some(w) if l.leq(m[k], m[j]) => l.leq(w, v),
            Some(w) if l.leq(m[j], m[k]) => l.leq(v, w),
            _ => true,
        })
    };

    let mut out = Vec::new();
    fill(&cells, 0, &mut grid, &candidates, &consistent, &mut |grid| {
        if out.len() >= cap {
            return false;
        }
        let op = OpTable::from_fn(carrier.clone(), |x, y| {
            grid[carrier.position(x).unwrap() * n + carrier.position(y).unwrap()].unwrap()
        })
        .expect("values drawn from the carrier");
        let r = classify_op(&op, neutral);
        let ok = match kind {
            OperatorKind::TNorm => r.is_tnorm(),
            OperatorKind::TConorm => r.is_tconorm(),
            OperatorKind::TSubnorm => r.is_tsubnorm(),
            OperatorKind::TSubconorm => r.is_tsubconorm(),
        };
        if ok {
            out.push(op);
        }
        out.len() < cap
    });
    Ok(out)
}

type Grid = Vec<Option<ElementId>>;

fn fill(
    cells: &[(usize, usize)],
    k: usize,
    grid: &mut Grid,
    candidates: &dyn Fn(usize, usize) -> Vec<ElementId>,
    consistent: &dyn Fn(&Grid, usize, usize, ElementId) -> bool,
    emit: &mut dyn FnMut(&Grid) -> bool,
) -> bool {
    if k == cells.len() {
        return emit(grid);
    }
    let n = (grid.len() as f64).sqrt() as usize;
    let (i, j) = cells[k];
    for v in candidates(i, j) {
        if !consistent(grid, i, j, v) || !consistent(grid, j, i, v) {
            continue;
        }
        grid[i * n + j] = Some(v);
        grid[j * n + i] = Some(v);
        let go_on = fill(cells, k + 1, grid, candidates, consistent, emit);
        grid[i * n + j] = None;
        grid[j * n + i] = None;
        if !go_on {
            return false;
        }
    }
    true
}

/// Short name for an operator: `meet`, `join`, `drastic`, or `table`.
pub fn describe_op(op: &OpTable) -> String {
    let c = op.carrier().clone();
    for (kind, name) in [
        (CanonicalKind::MeetSubnorm, "meet"),
        (CanonicalKind::JoinSubconorm, "join"),
        (CanonicalKind::DrasticTnorm, "drastic"),
        (CanonicalKind::DrasticTconorm, "drastic"),
    ] {
        if canonical_op(kind, c.clone()).is_ok_and(|t| &t == op) {
            return name.into();
        }
    }
    "table".into()
}

/// Canonical choices for a role: the lattice operation and, where the carrier
/// has the needed bounds and it differs, the drastic operator.
pub fn canonical_options(role: Role, carrier: &Carrier, drastic: bool) -> Vec<OpTable> {
    let (base, dr) = match role {
        Role::TNorm | Role::SubNorm => (CanonicalKind::MeetSubnorm, CanonicalKind::DrasticTnorm),
        Role::TConorm | Role::SubConorm => (CanonicalKind::JoinSubconorm, CanonicalKind::DrasticTconorm),
        Role::ChainOps => return Vec::new(),
    };
    let mut out = vec![canonical_op(base, carrier.clone()).expect("lattice operations are closed")];
    if drastic {
        if let Ok(d) = canonical_op(dr, carrier.clone()) {
            if d != out[0] {
                out.push(d);
            }
        }
    }
    out
}

fn product(options: Vec<(Role, Vec<OpTable>)>) -> Vec<ComponentSet> {
    let mut sets = vec![ComponentSet {
        summary: String::new(),
        tnorm: None,
        tconorm: None,
        subnorm: None,
        subconorm: None,
    }];
    for (role, ops) in options {
        let mut next = Vec::with_capacity(sets.len() * ops.len());
        for set in &sets {
            for (k, op) in ops.iter().enumerate() {
                let mut s = set.clone();
                let name = match describe_op(op).as_str() {
                    "table" => format!("table#{k}"),
                    other => other.to_string(),
                };
                if !s.summary.is_empty() {
                    s.summary.push_str(", ");
                }
                s.summary.push_str(&format!("{}={}", OperatorKind::for_role(role).unwrap(), name));
                match role {
                    Role::TNorm => s.tnorm = Some(op.clone()),
                    Role::TConorm => s.tconorm = Some(op.clone()),
                    Role::SubNorm => s.subnorm = Some(op.clone()),
                    Role::SubConorm => s.subconorm = Some(op.clone()),
                    Role::ChainOps => {}
                }
                next.push(s);
            }
        }
        sets = next;
    }
    sets
}

/// Lattice operation and drastic operator for every role of the method.
pub fn canonical_component_sets(
    method: MethodId,
    lattice: &Arc<FiniteBoundedLattice>,
    e: ElementId,
    drastic: bool,
) -> Vec<ComponentSet> {
    let options = method
        .roles()
        .iter()
        .filter_map(|&role| {
            let c = required_carrier(method, role, lattice, e)?;
            Some((role, canonical_options(role, &c, drastic)))
        })
        .collect();
    product(options)
}

/// Component sets for an audit: every operator of each role when its carrier
/// has at most 5 elements (up to `cap` per role), canonical choices otherwise.
pub fn component_cases(
    method: MethodId,
    lattice: &Arc<FiniteBoundedLattice>,
    e: ElementId,
    cap: usize,
) -> Vec<ComponentSet> {
    let options = method
        .roles()
        .iter()
        .filter_map(|&role| {
            let c = required_carrier(method, role, lattice, e)?;
            let kind = OperatorKind::for_role(role)?;
            let ops = enumerate_operators(kind, &c, cap).unwrap_or_else(|_| canonical_options(role, &c, true));
            Some((role, ops))
        })
        .collect();
    product(options)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_have_expected_shape() {
        let l = l1();
        let id = |s| l.id(s).unwrap();
        assert_eq!(l.len(), 7);
        assert_eq!(l.join(id("c"), id("f")), id("g"));
        assert_eq!(l.incomparable_with(id("e")), vec![id("c"), id("f")]);
        assert_eq!(l2().len(), 8);
        assert_eq!(builtin("chain_n(2)").unwrap().len(), 2);
        assert_eq!(builtin("chain4").unwrap().len(), 4);
        assert!(matches!(builtin("K9"), Err(GenError::UnknownName(_))));
        for name in ["M2", "N5", "probe_P", "probe_Q", "probe_R", "probe_F"] {
            builtin(name).unwrap();
        }
    }

    #[test]
    fn probe_p_up_segment() {
        let p = probe_p();
        let id = |s| p.id(s).unwrap();
        assert_eq!(p.interval(id("e"), crate::lattice::Endpoint::Closed, id("1"), crate::lattice::Endpoint::Open).unwrap(), vec![id("e"), id("s")]);
        assert!(p.incomparable(id("c"), id("s")));
    }

    #[test]
    fn random_is_deterministic() {
        let a = random_lattice(GenConfig::new(6, 7)).unwrap();
        let b = random_lattice(GenConfig::new(6, 7)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 6);
        assert_eq!(random_lattice(GenConfig::new(2, 99)).unwrap().len(), 2);
        assert!(random_lattice(GenConfig::new(1, 0)).is_err());
    }

    #[test]
    fn enumeration_counts() {
        let counts: Vec<_> = (2..=6).map(|n| enumerate_lattices(n).unwrap().len()).collect();
        assert_eq!(counts, [1, 1, 2, 5, 15]);
        assert!(enumerate_lattices(7).is_err());
    }

    #[test]
    fn three_chain_operators() {
        let l = Arc::new(chain(3).unwrap());
        let c = Carrier::full(l.clone());
        let conorms = enumerate_operators(OperatorKind::TConorm, &c, 100).unwrap();
        assert_eq!(conorms.len(), 2);
        let names: Vec<_> = conorms.iter().map(describe_op).collect();
        assert!(names.contains(&"join".to_string()) && names.contains(&"drastic".to_string()));
        assert_eq!(enumerate_operators(OperatorKind::TNorm, &c, 100).unwrap().len(), 2);
        let two = Carrier::interval(l.clone(), l.id("a1").unwrap(), l.top());
        assert_eq!(enumerate_operators(OperatorKind::TConorm, &two, 100).unwrap().len(), 1);
        assert_eq!(enumerate_operators(OperatorKind::TConorm, &c, 1).unwrap().len(), 1);
    }
}
