//! Binary operations on lattice carriers, the canonical operators, and
//! classification against the t-norm / t-conorm / t-subnorm / t-subconorm axioms.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::lattice::{ElementId, FiniteBoundedLattice};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OpError {
    #[error("carrier is not closed: value `{value}` at ({x}, {y}) is outside the carrier")]
    CarrierNotClosed { x: String, y: String, value: String },
    #[error("carrier has no {0} element")]
    MissingBound(&'static str),
    #[error("`{0}` is not a member of the carrier")]
    NotAMember(String),
    #[error("operands live on different carriers")]
    CarrierMismatch,
    #[error("carrier does not contain the lattice {0}")]
    BoundNotInCarrier(&'static str),
}

/// A subset of a lattice on which an operation is defined.
#[derive(Clone)]
pub struct Carrier {
    lattice: Arc<FiniteBoundedLattice>,
    members: Vec<ElementId>,
    position: Vec<Option<usize>>,
}

impl fmt::Debug for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.members.iter().map(|&x| self.lattice.label(x)))
            .finish()
    }
}

impl PartialEq for Carrier {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
            && (Arc::ptr_eq(&self.lattice, &other.lattice) || self.lattice == other.lattice)
    }
}

impl Eq for Carrier {}

impl Carrier {
    /// Members are deduplicated and kept in element-index order.
    pub fn new(lattice: Arc<FiniteBoundedLattice>, members: impl IntoIterator<Item = ElementId>) -> Self {
        let mut members: Vec<ElementId> = members.into_iter().collect();
        members.sort();
        members.dedup();
        let mut position = vec![None; lattice.len()];
        for (i, &m) in members.iter().enumerate() {
            position[m.index()] = Some(i);
        }
        Carrier {
            lattice,
            members,
            position,
        }
    }

    pub fn full(lattice: Arc<FiniteBoundedLattice>) -> Self {
        let all: Vec<_> = lattice.elements().collect();
        Carrier::new(lattice, all)
    }

    /// `[a, b]` of the host lattice.
    pub fn interval(lattice: Arc<FiniteBoundedLattice>, a: ElementId, b: ElementId) -> Self {
        let members: Vec<_> = lattice
            .elements()
            .filter(|&x| lattice.leq(a, x) && lattice.leq(x, b))
            .collect();
        Carrier::new(lattice, members)
    }

    pub fn lattice(&self) -> &Arc<FiniteBoundedLattice> {
        &self.lattice
    }

    pub fn members(&self) -> &[ElementId] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    #[inline]
    pub fn contains(&self, x: ElementId) -> bool {
        self.position.get(x.index()).is_some_and(Option::is_some)
    }

    #[inline]
    pub fn position(&self, x: ElementId) -> Option<usize> {
        self.position.get(x.index()).copied().flatten()
    }

    /// Member below every other member, if any.
    pub fn least(&self) -> Option<ElementId> {
        let l = &self.lattice;
        self.members
            .iter()
            .copied()
            .find(|&m| self.members.iter().all(|&x| l.leq(m, x)))
    }

    /// Member above every other member, if any.
    pub fn greatest(&self) -> Option<ElementId> {
        let l = &self.lattice;
        self.members
            .iter()
            .copied()
            .find(|&m| self.members.iter().all(|&x| l.leq(x, m)))
    }

    pub fn is_subset_of(&self, other: &Carrier) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn labels(&self) -> Vec<&str> {
        self.members.iter().map(|&x| self.lattice.label(x)).collect()
    }
}

/// A total binary operation on a carrier, stored as a dense value table.
#[derive(Clone, PartialEq, Eq)]
pub struct OpTable {
    carrier: Carrier,
    values: Vec<ElementId>,
}

impl fmt::Debug for OpTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = self.carrier.lattice();
        let mut m = f.debug_map();
        for &x in self.carrier.members() {
            let row: Vec<&str> = self.carrier.members().iter().map(|&y| l.label(self.get(x, y))).collect();
            m.entry(&l.label(x), &row);
        }
        m.finish()
    }
}

impl OpTable {
    /// Tabulates `f` over the carrier. Every value must lie in the carrier.
    pub fn from_fn(carrier: Carrier, mut f: impl FnMut(ElementId, ElementId) -> ElementId) -> Result<Self, OpError> {
        let n = carrier.len();
        let mut values = Vec::with_capacity(n * n);
        for &x in carrier.members() {
            for &y in carrier.members() {
                let v = f(x, y);
                if !carrier.contains(v) {
                    let l = carrier.lattice();
                    return Err(OpError::CarrierNotClosed {
                        x: l.label(x).to_string(),
                        y: l.label(y).to_string(),
                        value: l.label(v).to_string(),
                    });
                }
                values.push(v);
            }
        }
        Ok(OpTable { carrier, values })
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn lattice(&self) -> &Arc<FiniteBoundedLattice> {
        self.carrier.lattice()
    }

    /// Value at `(x, y)`. Panics if either argument is outside the carrier.
    #[inline]
    pub fn get(&self, x: ElementId, y: ElementId) -> ElementId {
        self.try_get(x, y).unwrap_or_else(|| {
            let l = self.lattice();
            panic!("({}, {}) outside the carrier {:?}", l.label(x), l.label(y), self.carrier)
        })
    }

    #[inline]
    pub fn try_get(&self, x: ElementId, y: ElementId) -> Option<ElementId> {
        let i = self.carrier.position(x)?;
        let j = self.carrier.position(y)?;
        Some(self.values[i * self.carrier.len() + j])
    }

    /// Row-major values in carrier order.
    pub fn values(&self) -> &[ElementId] {
        &self.values
    }

    /// Restriction to a sub-carrier, which must be closed under the operation.
    pub fn restrict(&self, sub: &Carrier) -> Result<OpTable, OpError> {
        if !sub.is_subset_of(&self.carrier) {
            return Err(OpError::CarrierMismatch);
        }
        OpTable::from_fn(sub.clone(), |x, y| self.get(x, y))
    }
}

/// The canonical operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CanonicalKind {
    MeetTnorm,
    JoinTconorm,
    DrasticTnorm,
    DrasticTconorm,
    MeetSubnorm,
    JoinSubconorm,
}

pub fn canonical_op(kind: CanonicalKind, carrier: Carrier) -> Result<OpTable, OpError> {
    let l = carrier.lattice().clone();
    match kind {
        CanonicalKind::MeetTnorm => {
            carrier.greatest().ok_or(OpError::MissingBound("greatest"))?;
            OpTable::from_fn(carrier, |x, y| l.meet(x, y))
        }
        CanonicalKind::JoinTconorm => {
            carrier.least().ok_or(OpError::MissingBound("least"))?;
            OpTable::from_fn(carrier, |x, y| l.join(x, y))
        }
        CanonicalKind::MeetSubnorm => OpTable::from_fn(carrier, |x, y| l.meet(x, y)),
        CanonicalKind::JoinSubconorm => OpTable::from_fn(carrier, |x, y| l.join(x, y)),
        CanonicalKind::DrasticTnorm => {
            let unit = carrier.greatest().ok_or(OpError::MissingBound("greatest"))?;
            let zero = carrier.least().ok_or(OpError::MissingBound("least"))?;
            OpTable::from_fn(carrier, |x, y| {
                if x == unit {
                    y
                } else if y == unit {
                    x
                } else {
                    zero
                }
            })
        }
        CanonicalKind::DrasticTconorm => {
            let unit = carrier.least().ok_or(OpError::MissingBound("least"))?;
            let one = carrier.greatest().ok_or(OpError::MissingBound("greatest"))?;
            OpTable::from_fn(carrier, |x, y| {
                if x == unit {
                    y
                } else if y == unit {
                    x
                } else {
                    one
                }
            })
        }
    }
}

/// Which argument a monotonicity violation was found in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Argument {
    First,
    Second,
}

/// `x ≤ y` but `op(x,z) ≰ op(y,z)` (or the mirrored statement for the second argument).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonotoneWitness {
    pub x: ElementId,
    pub y: ElementId,
    pub z: ElementId,
    pub argument: Argument,
    pub lower: ElementId,
    pub upper: ElementId,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NeutralWitness {
    pub claimed: ElementId,
    pub x: ElementId,
}

/// Result of [`classify_op`]. Every `Some` witness is a violation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpClassReport {
    pub commutative: Option<(ElementId, ElementId)>,
    pub associative: Option<(ElementId, ElementId, ElementId)>,
    pub monotone: Option<MonotoneWitness>,
    pub neutral: Option<ElementId>,
    pub neutral_violation: Option<NeutralWitness>,
    pub subnorm_bound: Option<(ElementId, ElementId)>,
    pub subconorm_bound: Option<(ElementId, ElementId)>,
    carrier_least: Option<ElementId>,
    carrier_greatest: Option<ElementId>,
}

impl OpClassReport {
    pub fn is_commutative(&self) -> bool {
        self.commutative.is_none()
    }

    pub fn is_associative(&self) -> bool {
        self.associative.is_none()
    }

    pub fn is_monotone(&self) -> bool {
        self.monotone.is_none()
    }

    fn is_semigroup_like(&self) -> bool {
        self.is_commutative() && self.is_associative() && self.is_monotone()
    }

    /// Commutative, associative, monotone, and neutral at the carrier's greatest element.
    pub fn is_tnorm(&self) -> bool {
        self.is_semigroup_like() && self.neutral.is_some() && self.neutral == self.carrier_greatest
    }

    /// Commutative, associative, monotone, and neutral at the carrier's least element.
    pub fn is_tconorm(&self) -> bool {
        self.is_semigroup_like() && self.neutral.is_some() && self.neutral == self.carrier_least
    }

    pub fn is_tsubnorm(&self) -> bool {
        self.is_semigroup_like() && self.subnorm_bound.is_none()
    }

    pub fn is_tsubconorm(&self) -> bool {
        self.is_semigroup_like() && self.subconorm_bound.is_none()
    }
}

/// Checks every axiom by exhaustive enumeration over the carrier.
///
/// With `claimed_neutral` the claim is validated (a failure is recorded in
/// `neutral_violation`); without it the carrier is scanned for a neutral element.
/// Bound checks compare against the host lattice's meet and join.
pub fn classify_op(op: &OpTable, claimed_neutral: Option<ElementId>) -> OpClassReport {
    let l = op.lattice();
    let m = op.carrier().members();

    let mut commutative = None;
    'comm: for &x in m {
        for &y in m {
            if op.get(x, y) != op.get(y, x) {
                commutative = Some((x, y));
                break 'comm;
            }
        }
    }

    let mut associative = None;
    'assoc: for &x in m {
        for &y in m {
            let xy = op.get(x, y);
            for &z in m {
                if op.get(x, op.get(y, z)) != op.get(xy, z) {
                    associative = Some((x, y, z));
                    break 'assoc;
                }
            }
        }
    }

    let mut monotone = None;
    'mono: for &x in m {
        for &y in m {
            if !l.leq(x, y) {
                continue;
            }
            for &z in m {
                for argument in [Argument::First, Argument::Second] {
                    let (lower, upper) = match argument {
                        Argument::First => (op.get(x, z), op.get(y, z)),
                        Argument::Second => (op.get(z, x), op.get(z, y)),
                    };
                    if !l.leq(lower, upper) {
                        monotone = Some(MonotoneWitness {
                            x,
                            y,
                            z,
                            argument,
                            lower,
                            upper,
                        });
                        break 'mono;
                    }
                }
            }
        }
    }

    let is_neutral = |n: ElementId| m.iter().all(|&x| op.get(n, x) == x && op.get(x, n) == x);
    let (neutral, neutral_violation) = match claimed_neutral {
        Some(c) if op.carrier().contains(c) => match m.iter().find(|&&x| op.get(c, x) != x || op.get(x, c) != x) {
            None => (Some(c), None),
            Some(&x) => (None, Some(NeutralWitness { claimed: c, x })),
        },
        Some(c) => (None, Some(NeutralWitness { claimed: c, x: c })),
        None => (m.iter().copied().find(|&n| is_neutral(n)), None),
    };

    let mut subnorm_bound = None;
    let mut subconorm_bound = None;
    for &x in m {
        for &y in m {
            let v = op.get(x, y);
            if subnorm_bound.is_none() && !l.leq(v, l.meet(x, y)) {
                subnorm_bound = Some((x, y));
            }
            if subconorm_bound.is_none() && !l.leq(l.join(x, y), v) {
                subconorm_bound = Some((x, y));
            }
        }
    }

    OpClassReport {
        commutative,
        associative,
        monotone,
        neutral,
        neutral_violation,
        subnorm_bound,
        subconorm_bound,
        carrier_least: op.carrier().least(),
        carrier_greatest: op.carrier().greatest(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryKind {
    /// `op(x,y) > 0` whenever `x, y > 0`.
    StrictAboveZero,
    /// `op(x,y) < 1` whenever `x, y < 1`.
    StrictBelowOne,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundaryReport {
    pub kind: BoundaryKind,
    pub witness: Option<(ElementId, ElementId)>,
}

impl BoundaryReport {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// Strictness side-condition over the whole carrier. The carrier must contain
/// the lattice bound named by `kind`.
pub fn boundary_conditions(op: &OpTable, kind: BoundaryKind) -> Result<BoundaryReport, OpError> {
    let l = op.lattice();
    let bound = match kind {
        BoundaryKind::StrictAboveZero => l.bottom(),
        BoundaryKind::StrictBelowOne => l.top(),
    };
    if !op.carrier().contains(bound) {
        return Err(OpError::BoundNotInCarrier(match kind {
            BoundaryKind::StrictAboveZero => "bottom",
            BoundaryKind::StrictBelowOne => "top",
        }));
    }
    let domain: Vec<_> = op.carrier().members().iter().copied().filter(|&x| x != bound).collect();
    boundary_conditions_on(op, kind, &domain)
}

/// Strictness side-condition restricted to arguments drawn from `domain`.
pub fn boundary_conditions_on(
    op: &OpTable,
    kind: BoundaryKind,
    domain: &[ElementId],
) -> Result<BoundaryReport, OpError> {
    let l = op.lattice();
    let bound = match kind {
        BoundaryKind::StrictAboveZero => l.bottom(),
        BoundaryKind::StrictBelowOne => l.top(),
    };
    let mut domain = domain.to_vec();
    domain.sort();
    for &x in &domain {
        if !op.carrier().contains(x) {
            return Err(OpError::NotAMember(l.label(x).to_string()));
        }
    }
    let witness = domain
        .iter()
        .flat_map(|&x| domain.iter().map(move |&y| (x, y)))
        .find(|&(x, y)| x != bound && y != bound && op.get(x, y) == bound);
    Ok(BoundaryReport { kind, witness })
}
