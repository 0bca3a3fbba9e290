use std::fmt;

use crate::lattice::ElementId;
use crate::ops::{boundary_conditions_on, BoundaryKind, OpTable};

use super::{ConstructionError, ConstructionSpec, MethodId, Role};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConditionId {
    /// `x∥y` for all `x∈I_e`, `y∈[e,1[`.
    C1,
    /// `x∥y` for all `x∈I_e`, `y∈]0,e]`.
    C2,
    /// `S_e(x,y)≠1` for all `x,y∈[e,1[`.
    C3,
    /// `T_e(x,y)≠0` for all `x,y∈]0,e]`.
    C4,
    /// `R(x,y)≠1` for all `x,y∈]e,1[`.
    C5,
    /// `F(x,y)≠0` for all `x,y∈]0,e[`.
    C6,
    /// `y<x` for all `x∈I_e`, `y∈[0,e[`.
    C7,
    /// `x<y` for all `x∈I_e`, `y∈]e,1]`.
    C8,
    /// `y<x` for all `x∈I_e`, `y∈]0,e[`.
    C9,
    /// `x<y` for all `x∈I_e`, `y∈]e,1[`.
    C10,
}

impl ConditionId {
    pub fn describe(self) -> &'static str {
        match self {
            ConditionId::C1 => "every x in I_e is incomparable with every y in [e,1[",
            ConditionId::C2 => "every x in I_e is incomparable with every y in ]0,e]",
            ConditionId::C3 => "S_e(x,y) < 1 for all x,y in [e,1[",
            ConditionId::C4 => "T_e(x,y) > 0 for all x,y in ]0,e]",
            ConditionId::C5 => "R(x,y) < 1 for all x,y in ]e,1[",
            ConditionId::C6 => "F(x,y) > 0 for all x,y in ]0,e[",
            ConditionId::C7 => "y < x for all x in I_e and y in [0,e[",
            ConditionId::C8 => "x < y for all x in I_e and y in ]e,1]",
            ConditionId::C9 => "y < x for all x in I_e and y in ]0,e[",
            ConditionId::C10 => "x < y for all x in I_e and y in ]e,1[",
        }
    }
}

impl fmt::Display for ConditionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RequiredAs {
    /// Assumed by the construction.
    Hypothesis,
    /// Characterizes when the construction yields a uninorm.
    Iff,
}

impl fmt::Display for RequiredAs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RequiredAs::Hypothesis => "hypothesis",
            RequiredAs::Iff => "iff",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConditionEntry {
    pub id: ConditionId,
    pub required_as: RequiredAs,
    pub holds: bool,
    /// First violating pair, in the order of the condition's quantifiers.
    pub witness: Option<(ElementId, ElementId)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    pub method: MethodId,
    pub entries: Vec<ConditionEntry>,
    labels: Vec<String>,
}

impl ConditionReport {
    pub fn all_hold(&self) -> bool {
        self.entries.iter().all(|c| c.holds)
    }

    pub fn hypotheses_hold(&self) -> bool {
        self.of_kind(RequiredAs::Hypothesis).all(|c| c.holds)
    }

    pub fn iff_holds(&self) -> bool {
        self.of_kind(RequiredAs::Iff).all(|c| c.holds)
    }

    pub fn entry(&self, id: ConditionId) -> Option<&ConditionEntry> {
        self.entries.iter().find(|c| c.id == id)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ConditionEntry> {
        self.entries.iter().filter(|c| !c.holds)
    }

    fn of_kind(&self, kind: RequiredAs) -> impl Iterator<Item = &ConditionEntry> {
        self.entries.iter().filter(move |c| c.required_as == kind)
    }

    /// One-line description of the failing conditions.
    pub fn summary(&self) -> String {
        let parts: Vec<_> = self
            .failures()
            .map(|c| match c.witness {
                Some((x, y)) => format!("{} at ({}, {})", c.id, self.labels[x.index()], self.labels[y.index()]),
                None => c.id.to_string(),
            })
            .collect();
        if parts.is_empty() {
            "all conditions hold".into()
        } else {
            parts.join("; ")
        }
    }
}

fn registered(method: MethodId) -> &'static [(ConditionId, RequiredAs)] {
    use ConditionId::*;
    use MethodId::*;
    use RequiredAs::*;
    match method {
        U1 => &[(C1, Hypothesis), (C3, Iff)],
        U2 => &[(C2, Hypothesis), (C4, Iff)],
        U3 => &[(C1, Hypothesis), (C4, Iff), (C5, Iff)],
        U4 => &[(C2, Hypothesis), (C6, Iff), (C3, Iff)],
        U5 => &[(C1, Hypothesis), (C7, Iff)],
        U6 => &[(C2, Hypothesis), (C8, Iff)],
        U1e => &[(C1, Hypothesis), (C4, Iff), (C3, Iff)],
        U2e => &[(C2, Hypothesis), (C4, Iff), (C3, Iff)],
        URe => &[(C1, Hypothesis), (C5, Iff)],
        UFe => &[(C2, Hypothesis), (C6, Iff)],
        UR => &[(C9, Iff)],
        UF => &[(C10, Iff)],
        Umeet => &[(C7, Iff)],
        Ujoin => &[(C8, Iff)],
        UTe | USe | Ud | Uc | IterS | IterT | IterJoin | IterMeet => &[],
    }
}

/// Evaluates the side conditions registered for the spec's method.
pub fn check_preconditions(spec: &ConstructionSpec) -> Result<ConditionReport, ConstructionError> {
    spec.validate_shape()?;
    let l = &spec.lattice;
    let e = spec.e;
    let (zero, one) = (l.bottom(), l.top());
    let inc = l.incomparable_with(e);
    let pick = |f: &dyn Fn(ElementId) -> bool| -> Vec<ElementId> { l.elements().filter(|&x| f(x)).collect() };
    let up_half = pick(&|y| l.leq(e, y) && y != one);
    let down_nonzero = pick(&|y| l.leq(y, e) && y != zero);
    let down_half = pick(&|y| l.leq(y, e) && y != e);
    let down_open = pick(&|y| l.lt(y, e) && y != zero);
    let up_strict = pick(&|y| l.lt(e, y));
    let up_open = pick(&|y| l.lt(e, y) && y != one);

    let first_pair = |ys: &[ElementId], ok: &dyn Fn(ElementId, ElementId) -> bool| {
        inc.iter()
            .flat_map(|&x| ys.iter().map(move |&y| (x, y)))
            .find(|&(x, y)| !ok(x, y))
    };
    let boundary = |role: Role, kind: BoundaryKind, domain: &[ElementId]| -> Result<_, ConstructionError> {
        let op: &OpTable = spec
            .component(role)
            .ok_or(ConstructionError::MissingComponent { method: spec.method, role })?;
        Ok(boundary_conditions_on(op, kind, domain)?.witness)
    };

    let mut entries = Vec::new();
    for &(id, required_as) in registered(spec.method) {
        let witness = match id {
            ConditionId::C1 => first_pair(&up_half, &|x, y| l.incomparable(x, y)),
            ConditionId::C2 => first_pair(&down_nonzero, &|x, y| l.incomparable(x, y)),
            ConditionId::C3 => boundary(Role::TConorm, BoundaryKind::StrictBelowOne, &up_half)?,
            ConditionId::C4 => boundary(Role::TNorm, BoundaryKind::StrictAboveZero, &down_nonzero)?,
            ConditionId::C5 => boundary(Role::SubConorm, BoundaryKind::StrictBelowOne, &up_open)?,
            ConditionId::C6 => boundary(Role::SubNorm, BoundaryKind::StrictAboveZero, &down_open)?,
            ConditionId::C7 => first_pair(&down_half, &|x, y| l.lt(y, x)),
            ConditionId::C8 => first_pair(&up_strict, &|x, y| l.lt(x, y)),
            ConditionId::C9 => first_pair(&down_open, &|x, y| l.lt(y, x)),
            ConditionId::C10 => first_pair(&up_open, &|x, y| l.lt(x, y)),
        };
        entries.push(ConditionEntry {
            id,
            required_as,
            holds: witness.is_none(),
            witness,
        });
    }
    Ok(ConditionReport {
        method: spec.method,
        entries,
        labels: l.labels().to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::lattice::{build_lattice, FiniteBoundedLattice};
    use crate::ops::{canonical_op, CanonicalKind, Carrier};

    fn spec(l: &Arc<FiniteBoundedLattice>, method: MethodId, drastic: bool) -> ConstructionSpec {
        let e = l.id("e").unwrap();
        let t = canonical_op(CanonicalKind::MeetTnorm, Carrier::interval(l.clone(), l.bottom(), e)).unwrap();
        let kind = if drastic { CanonicalKind::DrasticTconorm } else { CanonicalKind::JoinTconorm };
        let s = canonical_op(kind, Carrier::interval(l.clone(), e, l.top())).unwrap();
        ConstructionSpec::new(l.clone(), e, method).tnorm(t).tconorm(s)
    }

    #[test]
    fn l1_u1_fails_c1_at_c_g() {
        let l = Arc::new(
            build_lattice(
                &["0", "a", "e", "c", "f", "g", "1"],
                &[("0", "a"), ("a", "e"), ("a", "c"), ("a", "f"), ("e", "g"), ("c", "g"), ("f", "g"), ("g", "1")],
            )
            .unwrap(),
        );
        let r = check_preconditions(&spec(&l, MethodId::U1, false)).unwrap();
        let c1 = r.entry(ConditionId::C1).unwrap();
        assert_eq!(c1.required_as, RequiredAs::Hypothesis);
        assert_eq!(c1.witness, Some((l.id("c").unwrap(), l.id("g").unwrap())));
        assert!(r.iff_holds());
    }

    #[test]
    fn chain_conditions_hold_vacuously() {
        let l = Arc::new(build_lattice(&["0", "e", "1"], &[("0", "e"), ("e", "1")]).unwrap());
        let r = check_preconditions(&spec(&l, MethodId::U1, false)).unwrap();
        assert!(r.all_hold());
    }

    #[test]
    fn probe_drastic_conorm_fails_c3() {
        let l = Arc::new(
            build_lattice(
                &["0", "e", "s", "c", "1"],
                &[("0", "e"), ("e", "s"), ("s", "1"), ("0", "c"), ("c", "1")],
            )
            .unwrap(),
        );
        let r = check_preconditions(&spec(&l, MethodId::U1, true)).unwrap();
        assert!(r.entry(ConditionId::C1).unwrap().holds);
        let s = l.id("s").unwrap();
        assert_eq!(r.entry(ConditionId::C3).unwrap().witness, Some((s, s)));
        assert!(r.summary().contains("C3 at (s, s)"));
    }

    #[test]
    fn every_method_registers_its_conditions() {
        assert_eq!(registered(MethodId::U3).len(), 3);
        assert!(registered(MethodId::Ud).is_empty());
        for m in MethodId::ALL {
            let ids: Vec<_> = registered(m).iter().map(|c| c.0).collect();
            let mut dedup = ids.clone();
            dedup.dedup();
            assert_eq!(ids, dedup);
        }
    }
}
