//! Uninorm constructions on a finite bounded lattice.
//!
//! Each direct method is a table of region clauses (see [`formulas`]); the
//! iterative methods grow a uninorm block by block along a chain.

mod conditions;
pub mod formulas;
mod iterated;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::lattice::{ElementId, FiniteBoundedLattice};
use crate::ops::{classify_op, Carrier, OpError, OpTable};

pub use conditions::{check_preconditions, ConditionEntry, ConditionId, ConditionReport, RequiredAs};
pub use iterated::{
    construct_iterated_conorm, construct_iterated_join, construct_iterated_meet, construct_iterated_norm,
    IterRegionPartition, IterZone,
};

use formulas::{zone_of, Formula, Rule};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MethodId {
    UTe,
    USe,
    U1e,
    U2e,
    URe,
    UFe,
    UR,
    UF,
    Umeet,
    Ujoin,
    Ud,
    Uc,
    U1,
    U2,
    U3,
    U4,
    U5,
    U6,
    IterS,
    IterT,
    IterJoin,
    IterMeet,
}

impl MethodId {
    pub const ALL: [MethodId; 22] = [
        MethodId::UTe,
        MethodId::USe,
        MethodId::U1e,
        MethodId::U2e,
        MethodId::URe,
        MethodId::UFe,
        MethodId::UR,
        MethodId::UF,
        MethodId::Umeet,
        MethodId::Ujoin,
        MethodId::Ud,
        MethodId::Uc,
        MethodId::U1,
        MethodId::U2,
        MethodId::U3,
        MethodId::U4,
        MethodId::U5,
        MethodId::U6,
        MethodId::IterS,
        MethodId::IterT,
        MethodId::IterJoin,
        MethodId::IterMeet,
    ];

    /// The methods given by a single region formula.
    pub const DIRECT: [MethodId; 18] = [
        MethodId::UTe,
        MethodId::USe,
        MethodId::U1e,
        MethodId::U2e,
        MethodId::URe,
        MethodId::UFe,
        MethodId::UR,
        MethodId::UF,
        MethodId::Umeet,
        MethodId::Ujoin,
        MethodId::Ud,
        MethodId::Uc,
        MethodId::U1,
        MethodId::U2,
        MethodId::U3,
        MethodId::U4,
        MethodId::U5,
        MethodId::U6,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MethodId::UTe => "UTe",
            MethodId::USe => "USe",
            MethodId::U1e => "U1e",
            MethodId::U2e => "U2e",
            MethodId::URe => "URe",
            MethodId::UFe => "UFe",
            MethodId::UR => "UR",
            MethodId::UF => "UF",
            MethodId::Umeet => "Umeet",
            MethodId::Ujoin => "Ujoin",
            MethodId::Ud => "Ud",
            MethodId::Uc => "Uc",
            MethodId::U1 => "U1",
            MethodId::U2 => "U2",
            MethodId::U3 => "U3",
            MethodId::U4 => "U4",
            MethodId::U5 => "U5",
            MethodId::U6 => "U6",
            MethodId::IterS => "IterS",
            MethodId::IterT => "IterT",
            MethodId::IterJoin => "IterJoin",
            MethodId::IterMeet => "IterMeet",
        }
    }

    pub fn is_iterative(self) -> bool {
        matches!(self, MethodId::IterS | MethodId::IterT | MethodId::IterJoin | MethodId::IterMeet)
    }

    pub fn formula(self) -> Option<&'static Formula> {
        use formulas as f;
        Some(match self {
            MethodId::UTe => &f::UTE,
            MethodId::USe => &f::USE,
            MethodId::U1e => &f::U1E,
            MethodId::U2e => &f::U2E,
            MethodId::URe => &f::URE,
            MethodId::UFe => &f::UFE,
            MethodId::UR => &f::UR,
            MethodId::UF => &f::UF,
            MethodId::Umeet => &f::UMEET,
            MethodId::Ujoin => &f::UJOIN,
            MethodId::Ud => &f::UD,
            MethodId::Uc => &f::UC,
            MethodId::U1 => &f::U1,
            MethodId::U2 => &f::U2,
            MethodId::U3 => &f::U3,
            MethodId::U4 => &f::U4,
            MethodId::U5 => &f::U5,
            MethodId::U6 => &f::U6,
            _ => return None,
        })
    }

    /// Components the method consumes. Iterative methods additionally take a chain.
    pub fn roles(self) -> &'static [Role] {
        use MethodId::*;
        use Role::*;
        match self {
            UTe | Umeet | IterJoin => &[TNorm],
            USe | Ujoin | IterMeet => &[TConorm],
            U1e | U2e | Ud | Uc | U1 | U2 => &[TNorm, TConorm],
            URe | UR | U3 | U5 => &[TNorm, SubConorm],
            UFe | UF | U4 | U6 => &[TConorm, SubNorm],
            IterS => &[TNorm, ChainOps],
            IterT => &[TConorm, ChainOps],
        }
    }
}

impl fmt::Display for MethodId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown construction method `{0}`")]
pub struct UnknownMethod(pub String);

impl FromStr for MethodId {
    type Err = UnknownMethod;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MethodId::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownMethod(s.to_string()))
    }
}

/// A component slot of a construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    TNorm,
    TConorm,
    SubNorm,
    SubConorm,
    ChainOps,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::TNorm => "t-norm",
            Role::TConorm => "t-conorm",
            Role::SubNorm => "t-subnorm",
            Role::SubConorm => "t-subconorm",
            Role::ChainOps => "chain operators",
        })
    }
}

/// Carrier the method expects for a single-table component.
///
/// `ChainOps` has no single carrier and yields `None`.
pub fn required_carrier(
    method: MethodId,
    role: Role,
    lattice: &Arc<FiniteBoundedLattice>,
    e: ElementId,
) -> Option<Carrier> {
    let l = lattice;
    let all = || Carrier::full(l.clone());
    Some(match role {
        Role::TNorm => Carrier::interval(l.clone(), l.bottom(), e),
        Role::TConorm => Carrier::interval(l.clone(), e, l.top()),
        Role::SubConorm if method == MethodId::UR => {
            Carrier::new(l.clone(), l.elements().filter(|&x| !l.leq(x, e)))
        }
        Role::SubNorm if method == MethodId::UF => {
            Carrier::new(l.clone(), l.elements().filter(|&x| !l.leq(e, x)))
        }
        Role::SubConorm | Role::SubNorm => all(),
        Role::ChainOps => return None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("neutral element `{0}` must differ from the lattice bounds")]
    NeutralAtBound(String),
    #[error("{method} needs a {role}")]
    MissingComponent { method: MethodId, role: Role },
    #[error("{role} for {method} must live on {{{}}}, found {{{}}}", expected.join(", "), found.join(", "))]
    CarrierMismatch {
        method: MethodId,
        role: Role,
        expected: Vec<String>,
        found: Vec<String>,
    },
    #[error("supplied {role} is not a {role} on its carrier")]
    InvalidComponent { role: Role },
    #[error("{} condition(s) fail for {}: {}", .0.failures().count(), .0.method, .0.summary())]
    PreconditionViolated(ConditionReport),
    #[error("no clause of {method} covers ({x}, {y})")]
    RegionGap { method: MethodId, x: String, y: String },
    #[error("clauses of {method} disagree at ({x}, {y})")]
    RegionOverlap { method: MethodId, x: String, y: String },
    #[error("bad chain: {0}")]
    BadChain(String),
    #[error("block {block} operator is not a t-conorm on its interval")]
    ComponentNotConorm { block: usize },
    #[error("block {block} operator is not a t-norm on its interval")]
    ComponentNotNorm { block: usize },
    #[error(transparent)]
    Op(#[from] OpError),
}

/// Everything a construction needs.
#[derive(Debug, Clone)]
pub struct ConstructionSpec {
    pub lattice: Arc<FiniteBoundedLattice>,
    pub e: ElementId,
    pub method: MethodId,
    pub tnorm: Option<OpTable>,
    pub tconorm: Option<OpTable>,
    pub subnorm: Option<OpTable>,
    pub subconorm: Option<OpTable>,
    /// For `IterS`/`IterJoin` listed bottom-up from `0`; for `IterT`/`IterMeet`
    /// top-down from `1`. A list in the other direction is reversed.
    pub chain: Option<Vec<ElementId>>,
    /// One operator per chain block after the first.
    pub chain_ops: Option<Vec<OpTable>>,
    pub force: bool,
}

impl ConstructionSpec {
    pub fn new(lattice: Arc<FiniteBoundedLattice>, e: ElementId, method: MethodId) -> Self {
        ConstructionSpec {
            lattice,
            e,
            method,
            tnorm: None,
            tconorm: None,
            subnorm: None,
            subconorm: None,
            chain: None,
            chain_ops: None,
            force: false,
        }
    }

    pub fn tnorm(mut self, op: OpTable) -> Self {
        self.tnorm = Some(op);
        self
    }

    pub fn tconorm(mut self, op: OpTable) -> Self {
        self.tconorm = Some(op);
        self
    }

    pub fn subnorm(mut self, op: OpTable) -> Self {
        self.subnorm = Some(op);
        self
    }

    pub fn subconorm(mut self, op: OpTable) -> Self {
        self.subconorm = Some(op);
        self
    }

    pub fn chain(mut self, chain: Vec<ElementId>) -> Self {
        self.chain = Some(chain);
        self
    }

    pub fn chain_ops(mut self, ops: Vec<OpTable>) -> Self {
        self.chain_ops = Some(ops);
        self
    }

    pub fn force(mut self, force: bool) -> Self {
        self.force = force;
        self
    }

    pub fn component(&self, role: Role) -> Option<&OpTable> {
        match role {
            Role::TNorm => self.tnorm.as_ref(),
            Role::TConorm => self.tconorm.as_ref(),
            Role::SubNorm => self.subnorm.as_ref(),
            Role::SubConorm => self.subconorm.as_ref(),
            Role::ChainOps => None,
        }
    }

    /// Checks `e`, presence of components and their carriers.
    pub(crate) fn validate_shape(&self) -> Result<(), ConstructionError> {
        let l = &self.lattice;
        if self.e == l.bottom() || self.e == l.top() {
            return Err(ConstructionError::NeutralAtBound(l.label(self.e).to_string()));
        }
        for &role in self.method.roles() {
            if role == Role::ChainOps {
                if self.chain.is_none() {
                    return Err(ConstructionError::MissingComponent { method: self.method, role });
                }
                continue;
            }
            let op = self
                .component(role)
                .ok_or(ConstructionError::MissingComponent { method: self.method, role })?;
            let expected = required_carrier(self.method, role, l, self.e).expect("single-table role");
            if op.carrier() != &expected {
                return Err(ConstructionError::CarrierMismatch {
                    method: self.method,
                    role,
                    expected: expected.labels().into_iter().map(String::from).collect(),
                    found: op.carrier().labels().into_iter().map(String::from).collect(),
                });
            }
        }
        if matches!(self.method, MethodId::IterJoin | MethodId::IterMeet) && self.chain.is_none() {
            return Err(ConstructionError::MissingComponent { method: self.method, role: Role::ChainOps });
        }
        Ok(())
    }

    fn validate_kinds(&self) -> Result<(), ConstructionError> {
        for &role in self.method.roles() {
            let Some(op) = self.component(role) else { continue };
            let neutral = match role {
                Role::TNorm => op.carrier().greatest(),
                Role::TConorm => op.carrier().least(),
                _ => None,
            };
            let r = classify_op(op, neutral);
            let ok = match role {
                Role::TNorm => r.is_tnorm(),
                Role::TConorm => r.is_tconorm(),
                Role::SubNorm => r.is_tsubnorm(),
                Role::SubConorm => r.is_tsubconorm(),
                Role::ChainOps => true,
            };
            if !ok {
                return Err(ConstructionError::InvalidComponent { role });
            }
        }
        Ok(())
    }
}

/// Builds the operator on the whole lattice.
///
/// Without `force`, components are classified and every registered condition
/// must hold. Iterative methods return the last table of the chain.
pub fn construct(spec: &ConstructionSpec) -> Result<OpTable, ConstructionError> {
    spec.validate_shape()?;
    if !spec.force {
        spec.validate_kinds()?;
        let report = check_preconditions(spec)?;
        if !report.all_hold() {
            return Err(ConstructionError::PreconditionViolated(report));
        }
    }
    let l = &spec.lattice;
    let chain = || spec.chain.clone().unwrap_or_default();
    let ops = || spec.chain_ops.clone().unwrap_or_default();
    let last = |v: Vec<OpTable>| v.into_iter().last().expect("non-empty chain");
    match spec.method {
        MethodId::IterS => {
            let chain = iterated::ascending(l, chain());
            check_chain_e(l, &chain, spec.e)?;
            construct_iterated_conorm(l, &chain, spec.tnorm.as_ref().unwrap(), &ops()).map(last)
        }
        MethodId::IterT => {
            let chain = iterated::descending(l, chain());
            check_chain_e(l, &chain, spec.e)?;
            construct_iterated_norm(l, &chain, spec.tconorm.as_ref().unwrap(), &ops()).map(last)
        }
        MethodId::IterJoin => {
            let chain = iterated::ascending(l, chain());
            check_chain_e(l, &chain, spec.e)?;
            construct_iterated_join(l, &chain, spec.tnorm.as_ref().unwrap()).map(last)
        }
        MethodId::IterMeet => {
            let chain = iterated::descending(l, chain());
            check_chain_e(l, &chain, spec.e)?;
            construct_iterated_meet(l, &chain, spec.tconorm.as_ref().unwrap()).map(last)
        }
        m => build_from_formula(spec, m.formula().expect("direct method")),
    }
}

fn check_chain_e(l: &FiniteBoundedLattice, chain: &[ElementId], e: ElementId) -> Result<(), ConstructionError> {
    match chain.get(1) {
        Some(&a1) if a1 == e => Ok(()),
        Some(&a1) => Err(ConstructionError::BadChain(format!(
            "second chain element `{}` must be the neutral element `{}`",
            l.label(a1),
            l.label(e)
        ))),
        None => Err(ConstructionError::BadChain("chain needs at least three elements".into())),
    }
}

fn build_from_formula(spec: &ConstructionSpec, formula: &Formula) -> Result<OpTable, ConstructionError> {
    let l = spec.lattice.clone();
    let e = spec.e;
    let zones: Vec<_> = l.elements().map(|x| zone_of(&l, e, x)).collect();
    let comp = |role: Role| spec.component(role).expect("validated component");

    let eval = |rule: Rule, x: ElementId, y: ElementId| -> ElementId {
        match rule {
            Rule::TNorm => comp(Role::TNorm).get(x, y),
            Rule::TConorm => comp(Role::TConorm).get(x, y),
            Rule::SubNorm => comp(Role::SubNorm).get(x, y),
            Rule::SubConorm => comp(Role::SubConorm).get(x, y),
            Rule::First => x,
            Rule::Second => y,
            Rule::Join => l.join(x, y),
            Rule::Meet => l.meet(x, y),
            Rule::JoinWithNeutral => l.join(l.join(x, y), e),
            Rule::MeetWithNeutral => l.meet(l.meet(x, y), e),
            Rule::Top => l.top(),
            Rule::Bottom => l.bottom(),
            Rule::ConormLifted => comp(Role::TConorm).get(l.join(x, e), l.join(y, e)),
            Rule::NormLowered => comp(Role::TNorm).get(l.meet(x, e), l.meet(y, e)),
        }
    };

    let n = l.len();
    let mut values = Vec::with_capacity(n * n);
    for x in l.elements() {
        for y in l.elements() {
            let (zx, zy) = (zones[x.index()], zones[y.index()]);
            let mut hits = formula.clauses.iter().filter(|c| c.matches(zx, zy));
            let v = match hits.next() {
                Some(first) => {
                    let v = eval(first.rule, x, y);
                    if hits.any(|c| eval(c.rule, x, y) != v) {
                        return Err(ConstructionError::RegionOverlap {
                            method: spec.method,
                            x: l.label(x).to_string(),
                            y: l.label(y).to_string(),
                        });
                    }
                    v
                }
                None => match formula.otherwise {
                    Some(rule) => eval(rule, x, y),
                    None => {
                        return Err(ConstructionError::RegionGap {
                            method: spec.method,
                            x: l.label(x).to_string(),
                            y: l.label(y).to_string(),
                        })
                    }
                },
            };
            values.push(v);
        }
    }
    let mut it = values.into_iter();
    Ok(OpTable::from_fn(Carrier::full(l.clone()), |_, _| it.next().expect("n² values"))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::build_lattice;
    use crate::ops::{canonical_op, CanonicalKind};

    fn l1() -> Arc<FiniteBoundedLattice> {
        Arc::new(
            build_lattice(
                &["0", "a", "e", "c", "f", "g", "1"],
                &[("0", "a"), ("a", "e"), ("a", "c"), ("a", "f"), ("e", "g"), ("c", "g"), ("f", "g"), ("g", "1")],
            )
            .unwrap(),
        )
    }

    fn chain5() -> Arc<FiniteBoundedLattice> {
        Arc::new(build_lattice(&["0", "a", "e", "b", "1"], &[("0", "a"), ("a", "e"), ("e", "b"), ("b", "1")]).unwrap())
    }

    fn meet_join(l: &Arc<FiniteBoundedLattice>, e: ElementId, method: MethodId) -> ConstructionSpec {
        let t = canonical_op(CanonicalKind::MeetTnorm, Carrier::interval(l.clone(), l.bottom(), e)).unwrap();
        let s = canonical_op(CanonicalKind::JoinTconorm, Carrier::interval(l.clone(), e, l.top())).unwrap();
        ConstructionSpec::new(l.clone(), e, method).tnorm(t).tconorm(s)
    }

    #[test]
    fn method_names_round_trip() {
        for m in MethodId::ALL {
            assert_eq!(m.name().parse::<MethodId>().unwrap(), m);
        }
        assert_eq!("umeet".parse::<MethodId>().unwrap(), MethodId::Umeet);
        assert!("U7".parse::<MethodId>().is_err());
    }

    #[test]
    fn u1_on_l1_cells() {
        let l = l1();
        let e = l.id("e").unwrap();
        let u = construct(&meet_join(&l, e, MethodId::U1).force(true)).unwrap();
        let id = |s| l.id(s).unwrap();
        assert_eq!(u.get(id("c"), id("f")), id("g"));
        assert_eq!(u.get(id("a"), id("g")), id("a"));
        assert_eq!(u.get(id("0"), id("g")), id("0"));
    }

    #[test]
    fn u1_on_l1_needs_force() {
        let l = l1();
        let e = l.id("e").unwrap();
        match construct(&meet_join(&l, e, MethodId::U1)) {
            Err(ConstructionError::PreconditionViolated(r)) => assert!(!r.all_hold()),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn u1_on_chain_otherwise_clauses() {
        let l = chain5();
        let id = |s| l.id(s).unwrap();
        let u = construct(&meet_join(&l, id("e"), MethodId::U1)).unwrap();
        assert_eq!(u.get(id("a"), id("b")), id("a"));
        assert_eq!(u.get(id("a"), id("1")), id("1"));
    }

    #[test]
    fn neutral_row_for_every_direct_method() {
        let l = l1();
        let e = l.id("e").unwrap();
        let r = canonical_op(CanonicalKind::JoinSubconorm, Carrier::full(l.clone())).unwrap();
        let f = canonical_op(CanonicalKind::MeetSubnorm, Carrier::full(l.clone())).unwrap();
        for m in MethodId::DIRECT {
            let mut spec = meet_join(&l, e, m).force(true).subconorm(r.clone()).subnorm(f.clone());
            if m == MethodId::UR {
                let c = required_carrier(m, Role::SubConorm, &l, e).unwrap();
                spec = spec.subconorm(canonical_op(CanonicalKind::JoinSubconorm, c).unwrap());
            }
            if m == MethodId::UF {
                let c = required_carrier(m, Role::SubNorm, &l, e).unwrap();
                spec = spec.subnorm(canonical_op(CanonicalKind::MeetSubnorm, c).unwrap());
            }
            let u = construct(&spec).unwrap_or_else(|err| panic!("{m}: {err}"));
            for x in l.elements() {
                assert_eq!(u.get(e, x), x, "{m}");
                assert_eq!(u.get(x, e), x, "{m}");
            }
        }
    }

    #[test]
    fn missing_and_mismatched_components() {
        let l = l1();
        let e = l.id("e").unwrap();
        let spec = ConstructionSpec::new(l.clone(), e, MethodId::U1);
        assert!(matches!(
            construct(&spec),
            Err(ConstructionError::MissingComponent { role: Role::TNorm, .. })
        ));
        let wrong = canonical_op(CanonicalKind::MeetTnorm, Carrier::full(l.clone())).unwrap();
        let spec = meet_join(&l, e, MethodId::U1).tnorm(wrong);
        assert!(matches!(
            construct(&spec),
            Err(ConstructionError::CarrierMismatch { role: Role::TNorm, .. })
        ));
    }

    #[test]
    fn neutral_at_bound_is_rejected() {
        let l = chain5();
        let spec = ConstructionSpec::new(l.clone(), l.top(), MethodId::UTe);
        assert!(matches!(construct(&spec), Err(ConstructionError::NeutralAtBound(_))));
    }

    #[test]
    fn ud_matches_first_iterate() {
        let l = l1();
        let e = l.id("e").unwrap();
        let spec = meet_join(&l, e, MethodId::Ud);
        let ud = construct(&spec).unwrap();
        let iter = ConstructionSpec {
            method: MethodId::IterS,
            chain: Some(vec![l.bottom(), e, l.top()]),
            chain_ops: Some(vec![spec.tconorm.clone().unwrap()]),
            ..spec
        };
        assert_eq!(construct(&iter).unwrap(), ud);
    }
}
