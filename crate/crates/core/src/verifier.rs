//! Exhaustive uninorm checks, witness extraction, pointwise comparison and
//! iff audits.

use std::sync::Arc;

use crate::constructions::{check_preconditions, construct, ConditionId, ConstructionSpec, MethodId};
use crate::lattice::{ElementId, FiniteBoundedLattice};
use crate::ops::{Argument, MonotoneWitness, OpError, OpTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AssocWitness {
    pub x: ElementId,
    pub y: ElementId,
    pub z: ElementId,
    /// `U(x, U(y, z))`
    pub left: ElementId,
    /// `U(U(x, y), z)`
    pub right: ElementId,
}

impl AssocWitness {
    pub fn contains(&self, v: ElementId) -> bool {
        self.x == v || self.y == v || self.z == v
    }
}

/// Outcome of [`check_uninorm`]. Each `Some` is the first violation found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub e: ElementId,
    pub commutative: Option<(ElementId, ElementId)>,
    pub associative: Option<AssocWitness>,
    pub monotone: Option<MonotoneWitness>,
    /// Some `x` with `U(e,x)≠x` or `U(x,e)≠x`.
    pub neutral: Option<ElementId>,
}

impl VerificationReport {
    pub fn is_uninorm(&self) -> bool {
        self.commutative.is_none() && self.associative.is_none() && self.monotone.is_none() && self.neutral.is_none()
    }

    /// Re-evaluates every recorded witness against `op`; true if all still violate.
    pub fn witnesses_reproduce(&self, op: &OpTable) -> bool {
        let l = op.lattice();
        let comm = self.commutative.is_none_or(|(x, y)| op.get(x, y) != op.get(y, x));
        let assoc = self
            .associative
            .is_none_or(|w| associativity_violation(op, w.x, w.y, w.z) == Some(w));
        let mono = self.monotone.is_none_or(|w| {
            let (lo, hi) = match w.argument {
                Argument::First => (op.get(w.x, w.z), op.get(w.y, w.z)),
                Argument::Second => (op.get(w.z, w.x), op.get(w.z, w.y)),
            };
            l.leq(w.x, w.y) && !l.leq(lo, hi) && (lo, hi) == (w.lower, w.upper)
        });
        let neutral = self.neutral.is_none_or(|x| op.get(self.e, x) != x || op.get(x, self.e) != x);
        comm && assoc && mono && neutral
    }
}

/// Checks commutativity, associativity, monotonicity and neutrality of `e` by
/// enumeration over the table's carrier.
pub fn check_uninorm(op: &OpTable, e: ElementId) -> VerificationReport {
    let m = op.carrier().members();
    let commutative = m
        .iter()
        .flat_map(|&x| m.iter().map(move |&y| (x, y)))
        .find(|&(x, y)| op.get(x, y) != op.get(y, x));
    let neutral = if op.carrier().contains(e) {
        m.iter().copied().find(|&x| op.get(e, x) != x || op.get(x, e) != x)
    } else {
        Some(e)
    };
    VerificationReport {
        e,
        commutative,
        associative: check_associative(op),
        monotone: monotone_pairwise(op),
        neutral,
    }
}

/// `Some` if `(x,y,z)` breaks associativity.
pub fn associativity_violation(op: &OpTable, x: ElementId, y: ElementId, z: ElementId) -> Option<AssocWitness> {
    let left = op.get(x, op.get(y, z));
    let right = op.get(op.get(x, y), z);
    (left != right).then_some(AssocWitness { x, y, z, left, right })
}

/// First violating triple in carrier order.
pub fn check_associative(op: &OpTable) -> Option<AssocWitness> {
    find_associativity_witness(op, |_| true)
}

/// First violating triple accepted by `filter`.
pub fn find_associativity_witness(op: &OpTable, filter: impl Fn(&AssocWitness) -> bool) -> Option<AssocWitness> {
    let m = op.carrier().members();
    for &x in m {
        for &y in m {
            let xy = op.get(x, y);
            for &z in m {
                let left = op.get(x, op.get(y, z));
                let right = op.get(xy, z);
                if left != right {
                    let w = AssocWitness { x, y, z, left, right };
                    if filter(&w) {
                        return Some(w);
                    }
                }
            }
        }
    }
    None
}

fn monotone_on(op: &OpTable, pairs: impl Iterator<Item = (ElementId, ElementId)>) -> Option<MonotoneWitness> {
    let l = op.lattice();
    let m = op.carrier().members();
    for (x, y) in pairs {
        for &z in m {
            for argument in [Argument::First, Argument::Second] {
                let (lower, upper) = match argument {
                    Argument::First => (op.get(x, z), op.get(y, z)),
                    Argument::Second => (op.get(z, x), op.get(z, y)),
                };
                if !l.leq(lower, upper) {
                    return Some(MonotoneWitness {
                        x,
                        y,
                        z,
                        argument,
                        lower,
                        upper,
                    });
                }
            }
        }
    }
    None
}

/// Tests `x≤y ⟹ U(x,z)≤U(y,z)` (and in the second argument) for every comparable pair.
pub fn monotone_pairwise(op: &OpTable) -> Option<MonotoneWitness> {
    let l = op.lattice().clone();
    let m = op.carrier().members().to_vec();
    let pairs = m
        .iter()
        .flat_map(|&x| m.iter().map(move |&y| (x, y)))
        .filter(|&(x, y)| x != y && l.leq(x, y))
        .collect::<Vec<_>>();
    monotone_on(op, pairs.into_iter())
}

/// Same property tested only on cover pairs of the carrier's induced order.
pub fn monotone_by_covers(op: &OpTable) -> Option<MonotoneWitness> {
    monotone_on(op, carrier_covers(op.lattice(), op.carrier().members()).into_iter())
}

fn carrier_covers(l: &FiniteBoundedLattice, m: &[ElementId]) -> Vec<(ElementId, ElementId)> {
    let mut out = Vec::new();
    for &x in m {
        for &y in m {
            if x != y && l.leq(x, y) && !m.iter().any(|&z| z != x && z != y && l.leq(x, z) && l.leq(z, y)) {
                out.push((x, y));
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    Equal,
    /// `A≤B` everywhere, strictly at the witness cell.
    Leq((ElementId, ElementId)),
    /// `A≥B` everywhere, strictly at the witness cell.
    Geq((ElementId, ElementId)),
    /// `a_not_below`: a cell with `A≰B`; `b_not_below`: a cell with `B≰A`.
    Incomparable {
        a_not_below: (ElementId, ElementId),
        b_not_below: (ElementId, ElementId),
    },
}

/// Pointwise order between two operators on the same carrier.
pub fn compare_pointwise(a: &OpTable, b: &OpTable) -> Result<Comparison, OpError> {
    if a.carrier() != b.carrier() {
        return Err(OpError::CarrierMismatch);
    }
    let l = a.lattice();
    let m = a.carrier().members();
    let mut a_not_below = None;
    let mut b_not_below = None;
    for &x in m {
        for &y in m {
            let (va, vb) = (a.get(x, y), b.get(x, y));
            if a_not_below.is_none() && !l.leq(va, vb) {
                a_not_below = Some((x, y));
            }
            if b_not_below.is_none() && !l.leq(vb, va) {
                b_not_below = Some((x, y));
            }
        }
    }
    Ok(match (a_not_below, b_not_below) {
        (None, None) => Comparison::Equal,
        (None, Some(w)) => Comparison::Leq(w),
        (Some(w), None) => Comparison::Geq(w),
        (Some(a_not_below), Some(b_not_below)) => Comparison::Incomparable { a_not_below, b_not_below },
    })
}

/// One component choice for an audit.
#[derive(Debug, Clone)]
pub struct ComponentSet {
    pub summary: String,
    pub tnorm: Option<OpTable>,
    pub tconorm: Option<OpTable>,
    pub subnorm: Option<OpTable>,
    pub subconorm: Option<OpTable>,
}

impl ComponentSet {
    pub fn into_spec(self, lattice: Arc<FiniteBoundedLattice>, e: ElementId, method: MethodId) -> ConstructionSpec {
        ConstructionSpec {
            tnorm: self.tnorm,
            tconorm: self.tconorm,
            subnorm: self.subnorm,
            subconorm: self.subconorm,
            ..ConstructionSpec::new(lattice, e, method)
        }
        .force(true)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditCase {
    pub summary: String,
    pub conditions_hold: bool,
    pub failed_conditions: Vec<ConditionId>,
    pub is_uninorm: bool,
    pub report: VerificationReport,
}

impl AuditCase {
    pub fn agrees(&self) -> bool {
        self.conditions_hold == self.is_uninorm
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub method: MethodId,
    /// Cases where every hypothesis held.
    pub cases: Vec<AuditCase>,
    /// Cases dropped because a hypothesis failed.
    pub skipped: usize,
    /// Cases where the component set was rejected outright (wrong shape).
    pub errors: Vec<String>,
}

impl AuditReport {
    pub fn iff_respected(&self) -> bool {
        self.cases.iter().all(AuditCase::agrees)
    }

    pub fn violations(&self) -> impl Iterator<Item = &AuditCase> {
        self.cases.iter().filter(|c| !c.agrees())
    }
}

/// For each component set: evaluate the iff conditions, build with `force`,
/// run [`check_uninorm`], and record whether the two verdicts agree.
pub fn iff_audit(
    method: MethodId,
    lattice: &Arc<FiniteBoundedLattice>,
    e: ElementId,
    components: impl IntoIterator<Item = ComponentSet>,
) -> AuditReport {
    let mut report = AuditReport {
        method,
        cases: Vec::new(),
        skipped: 0,
        errors: Vec::new(),
    };
    for set in components {
        let summary = set.summary.clone();
        let spec = set.into_spec(lattice.clone(), e, method);
        let conditions = match check_preconditions(&spec) {
            Ok(c) => c,
            Err(err) => {
                report.errors.push(format!("{summary}: {err}"));
                continue;
            }
        };
        if !conditions.hypotheses_hold() {
            report.skipped += 1;
            continue;
        }
        let op = match construct(&spec) {
            Ok(op) => op,
            Err(err) => {
                report.errors.push(format!("{summary}: {err}"));
                continue;
            }
        };
        let verdict = check_uninorm(&op, e);
        report.cases.push(AuditCase {
            summary,
            conditions_hold: conditions.iff_holds(),
            failed_conditions: conditions.failures().map(|c| c.id).collect(),
            is_uninorm: verdict.is_uninorm(),
            report: verdict,
        });
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::build_lattice;
    use crate::ops::{canonical_op, CanonicalKind, Carrier};

    fn l2() -> Arc<FiniteBoundedLattice> {
        Arc::new(
            build_lattice(
                &["0", "a", "e", "c", "d", "f", "g", "1"],
                &[
                    ("0", "a"),
                    ("a", "e"),
                    ("a", "c"),
                    ("a", "f"),
                    ("e", "g"),
                    ("c", "d"),
                    ("d", "g"),
                    ("f", "g"),
                    ("g", "1"),
                ],
            )
            .unwrap(),
        )
    }

    #[test]
    fn join_is_a_uninorm_with_neutral_bottom() {
        let l = l2();
        let op = canonical_op(CanonicalKind::JoinTconorm, Carrier::full(l.clone())).unwrap();
        let r = check_uninorm(&op, l.bottom());
        assert!(r.is_uninorm());
        assert_eq!(check_associative(&op), None);
    }

    #[test]
    fn wrong_neutral_is_reported() {
        let l = l2();
        let op = canonical_op(CanonicalKind::JoinTconorm, Carrier::full(l.clone())).unwrap();
        let r = check_uninorm(&op, l.top());
        assert!(!r.is_uninorm());
        assert!(r.neutral.is_some());
        assert!(r.witnesses_reproduce(&op));
    }

    #[test]
    fn monotonicity_routes_agree_on_a_broken_table() {
        let l = l2();
        let (bot, top) = (l.bottom(), l.top());
        // Swaps the bottom and top rows: breaks monotonicity.
        let op = OpTable::from_fn(Carrier::full(l.clone()), |x, y| {
            if x == bot || y == bot {
                top
            } else {
                l.meet(x, y)
            }
        })
        .unwrap();
        assert!(monotone_pairwise(&op).is_some());
        assert!(monotone_by_covers(&op).is_some());
        let meet = canonical_op(CanonicalKind::MeetTnorm, Carrier::full(l.clone())).unwrap();
        assert!(monotone_pairwise(&meet).is_none());
        assert!(monotone_by_covers(&meet).is_none());
    }

    #[test]
    fn compare_meet_and_join() {
        let l = l2();
        let meet = canonical_op(CanonicalKind::MeetTnorm, Carrier::full(l.clone())).unwrap();
        let join = canonical_op(CanonicalKind::JoinTconorm, Carrier::full(l.clone())).unwrap();
        assert_eq!(compare_pointwise(&meet, &meet).unwrap(), Comparison::Equal);
        assert!(matches!(compare_pointwise(&meet, &join).unwrap(), Comparison::Leq(_)));
        assert!(matches!(compare_pointwise(&join, &meet).unwrap(), Comparison::Geq(_)));
        let sub = meet.restrict(&Carrier::interval(l.clone(), l.bottom(), l.id("e").unwrap())).unwrap();
        assert_eq!(compare_pointwise(&meet, &sub), Err(OpError::CarrierMismatch));
    }

    #[test]
    fn assoc_witness_reevaluates() {
        let l = l2();
        let e = l.id("e").unwrap();
        let t = canonical_op(CanonicalKind::MeetTnorm, Carrier::interval(l.clone(), l.bottom(), e)).unwrap();
        let r = canonical_op(CanonicalKind::JoinSubconorm, Carrier::full(l.clone())).unwrap();
        let spec = ConstructionSpec::new(l.clone(), e, MethodId::U5).tnorm(t).subconorm(r).force(true);
        let u5 = construct(&spec).unwrap();
        let w = check_associative(&u5).unwrap();
        assert_eq!(associativity_violation(&u5, w.x, w.y, w.z), Some(w));
    }
}
