//! Finite bounded lattices stored as dense order, meet and join tables.
//!
//! A lattice is built from a list of labels and a (possibly redundant) list of
//! cover pairs. The order is closed reflexively and transitively, then every
//! pair is checked for a unique least upper bound and greatest lower bound.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

/// Index of an element inside a [`FiniteBoundedLattice`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementId(pub usize);

impl ElementId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Join,
    Meet,
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundKind::Join => f.write_str("least upper bound"),
            BoundKind::Meet => f.write_str("greatest lower bound"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("lattice has no elements")]
    Empty,
    #[error("invalid label `{0}` (labels must be nonempty and whitespace-free)")]
    InvalidLabel(String),
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("not a partial order: `{0}` and `{1}` lie on a cycle")]
    NotAPoset(String, String),
    #[error("no least or greatest element")]
    NoBounds,
    #[error("not a lattice: `{left}` and `{right}` have no unique {bound}")]
    NotALattice {
        left: String,
        right: String,
        bound: BoundKind,
    },
    #[error("interval bounds `{0}` and `{1}` are not ordered")]
    EmptyBounds(String, String),
}

/// Whether an interval endpoint is included.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Endpoint {
    Closed,
    Open,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteBoundedLattice {
    labels: Vec<String>,
    index: HashMap<String, ElementId>,
    leq: Vec<bool>,
    meet: Vec<ElementId>,
    join: Vec<ElementId>,
    bottom: ElementId,
    top: ElementId,
    covers: Vec<(ElementId, ElementId)>,
}

fn check_label(label: &str) -> Result<(), LatticeError> {
    if label.is_empty() || label.chars().any(char::is_whitespace) {
        return Err(LatticeError::InvalidLabel(label.to_string()));
    }
    Ok(())
}

/// Builds a lattice from labels and cover pairs `(lower, upper)`.
///
/// Redundant pairs (already implied by transitivity) are accepted.
pub fn build_lattice<S, T, U>(labels: &[S], covers: &[(T, U)]) -> Result<FiniteBoundedLattice, LatticeError>
where
    S: AsRef<str>,
    T: AsRef<str>,
    U: AsRef<str>,
{
    let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_string()).collect();
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        check_label(l)?;
        if index.insert(l.clone(), ElementId(i)).is_some() {
            return Err(LatticeError::DuplicateLabel(l.clone()));
        }
    }
    let n = labels.len();
    let mut rel = vec![false; n * n];
    for (lo, hi) in covers {
        let lo = *index
            .get(lo.as_ref())
            .ok_or_else(|| LatticeError::UnknownLabel(lo.as_ref().to_string()))?;
        let hi = *index
            .get(hi.as_ref())
            .ok_or_else(|| LatticeError::UnknownLabel(hi.as_ref().to_string()))?;
        if lo == hi {
            return Err(LatticeError::NotAPoset(
                labels[lo.0].clone(),
                labels[hi.0].clone(),
            ));
        }
        rel[lo.0 * n + hi.0] = true;
    }
    FiniteBoundedLattice::from_relation(labels, rel)
}

impl FiniteBoundedLattice {
    /// Builds a lattice from labels and an `n×n` relation (row-major, `rel[x*n+y]`
    /// meaning `x ≤ y`). The relation is closed before validation.
    pub fn from_relation(labels: Vec<String>, mut rel: Vec<bool>) -> Result<Self, LatticeError> {
        let n = labels.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        assert_eq!(rel.len(), n * n, "relation must be n×n");
        let mut index = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            check_label(l)?;
            if index.insert(l.clone(), ElementId(i)).is_some() {
                return Err(LatticeError::DuplicateLabel(l.clone()));
            }
        }

        for i in 0..n {
            rel[i * n + i] = true;
        }
        // Warshall closure.
        for k in 0..n {
            for i in 0..n {
                if !rel[i * n + k] {
                    continue;
                }
                for j in 0..n {
                    if rel[k * n + j] {
                        rel[i * n + j] = true;
                    }
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if rel[i * n + j] && rel[j * n + i] {
                    return Err(LatticeError::NotAPoset(labels[i].clone(), labels[j].clone()));
                }
            }
        }

        let bottom = (0..n).find(|&b| (0..n).all(|x| rel[b * n + x]));
        let top = (0..n).find(|&t| (0..n).all(|x| rel[x * n + t]));
        let (bottom, top) = match (bottom, top) {
            (Some(b), Some(t)) => (ElementId(b), ElementId(t)),
            _ => return Err(LatticeError::NoBounds),
        };

        let mut meet = vec![ElementId(0); n * n];
        let mut join = vec![ElementId(0); n * n];
        for x in 0..n {
            for y in x..n {
                let lub = least_upper_bound(&rel, n, x, y).ok_or_else(|| LatticeError::NotALattice {
                    left: labels[x].clone(),
                    right: labels[y].clone(),
                    bound: BoundKind::Join,
                })?;
                let glb = greatest_lower_bound(&rel, n, x, y).ok_or_else(|| LatticeError::NotALattice {
                    left: labels[x].clone(),
                    right: labels[y].clone(),
                    bound: BoundKind::Meet,
                })?;
                join[x * n + y] = ElementId(lub);
                join[y * n + x] = ElementId(lub);
                meet[x * n + y] = ElementId(glb);
                meet[y * n + x] = ElementId(glb);
            }
        }

        let mut covers = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if x == y || !rel[x * n + y] {
                    continue;
                }
                let between = (0..n).any(|z| z != x && z != y && rel[x * n + z] && rel[z * n + y]);
                if !between {
                    covers.push((ElementId(x), ElementId(y)));
                }
            }
        }

        Ok(FiniteBoundedLattice {
            labels,
            index,
            leq: rel,
            meet,
            join,
            bottom,
            top,
            covers,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn elements(&self) -> impl DoubleEndedIterator<Item = ElementId> + ExactSizeIterator {
        (0..self.labels.len()).map(ElementId)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: ElementId) -> &str {
        &self.labels[x.0]
    }

    pub fn id(&self, label: &str) -> Option<ElementId> {
        self.index.get(label).copied()
    }

    pub fn bottom(&self) -> ElementId {
        self.bottom
    }

    pub fn top(&self) -> ElementId {
        self.top
    }

    #[inline]
    pub fn leq(&self, x: ElementId, y: ElementId) -> bool {
        self.leq[x.0 * self.len() + y.0]
    }

    #[inline]
    pub fn lt(&self, x: ElementId, y: ElementId) -> bool {
        x != y && self.leq(x, y)
    }

    /// `x ∥ y`: neither `x ≤ y` nor `y ≤ x`.
    #[inline]
    pub fn incomparable(&self, x: ElementId, y: ElementId) -> bool {
        !self.leq(x, y) && !self.leq(y, x)
    }

    #[inline]
    pub fn meet(&self, x: ElementId, y: ElementId) -> ElementId {
        self.meet[x.0 * self.len() + y.0]
    }

    #[inline]
    pub fn join(&self, x: ElementId, y: ElementId) -> ElementId {
        self.join[x.0 * self.len() + y.0]
    }

    /// Returns `(x ∧ y, x ∨ y)`.
    pub fn meet_join(&self, x: ElementId, y: ElementId) -> (ElementId, ElementId) {
        (self.meet(x, y), self.join(x, y))
    }

    /// Cover pairs `(x, y)` with `x ⋖ y`, in index order.
    pub fn covers(&self) -> &[(ElementId, ElementId)] {
        &self.covers
    }

    /// Elements `x` with `a ≤ x ≤ b`, endpoints dropped according to `lower`/`upper`.
    pub fn interval(
        &self,
        a: ElementId,
        lower: Endpoint,
        b: ElementId,
        upper: Endpoint,
    ) -> Result<Vec<ElementId>, LatticeError> {
        if !self.leq(a, b) {
            return Err(LatticeError::EmptyBounds(
                self.label(a).to_string(),
                self.label(b).to_string(),
            ));
        }
        Ok(self
            .elements()
            .filter(|&x| self.leq(a, x) && self.leq(x, b))
            .filter(|&x| !(lower == Endpoint::Open && x == a))
            .filter(|&x| !(upper == Endpoint::Open && x == b))
            .collect())
    }

    /// `[a, b]`.
    pub fn closed_interval(&self, a: ElementId, b: ElementId) -> Result<Vec<ElementId>, LatticeError> {
        self.interval(a, Endpoint::Closed, b, Endpoint::Closed)
    }

    /// `I_x`: the elements incomparable with `x`.
    pub fn incomparable_with(&self, x: ElementId) -> Vec<ElementId> {
        self.elements().filter(|&y| self.incomparable(x, y)).collect()
    }

    /// The order dual: same elements, reversed order, meet and join swapped.
    pub fn dual(&self) -> FiniteBoundedLattice {
        let n = self.len();
        let mut leq = vec![false; n * n];
        for x in 0..n {
            for y in 0..n {
                leq[x * n + y] = self.leq[y * n + x];
            }
        }
        let mut covers: Vec<_> = self.covers.iter().map(|&(lo, hi)| (hi, lo)).collect();
        covers.sort();
        FiniteBoundedLattice {
            labels: self.labels.clone(),
            index: self.index.clone(),
            leq,
            meet: self.join.clone(),
            join: self.meet.clone(),
            bottom: self.top,
            top: self.bottom,
            covers,
        }
    }

    pub fn regions(&self, e: ElementId) -> RegionSets {
        RegionSets::new(self, e)
    }

    /// Checks the join-closure of `I_e` under the incomparability hypothesis on
    /// `[e,1[`: whenever every `x ∈ I_e` is incomparable with every `y ∈ [e,1[`,
    /// `z ∨ t ∈ I_e ∪ {1}` for all `z, t ∈ I_e`.
    ///
    /// Returns `None` when the hypothesis fails or the closure holds, and the
    /// first offending pair otherwise.
    pub fn join_closure_violation(&self, e: ElementId) -> Option<(ElementId, ElementId)> {
        let ie = self.incomparable_with(e);
        let upper: Vec<_> = self.elements().filter(|&y| self.leq(e, y) && y != self.top).collect();
        let hypothesis = ie.iter().all(|&x| upper.iter().all(|&y| self.incomparable(x, y)));
        if !hypothesis {
            return None;
        }
        for &z in &ie {
            for &t in &ie {
                let j = self.join(z, t);
                if j != self.top && !self.incomparable(j, e) {
                    return Some((z, t));
                }
            }
        }
        None
    }

    /// Dual of [`join_closure_violation`](Self::join_closure_violation) for meets
    /// under the hypothesis on `]0,e]`.
    pub fn meet_closure_violation(&self, e: ElementId) -> Option<(ElementId, ElementId)> {
        let ie = self.incomparable_with(e);
        let lower: Vec<_> = self.elements().filter(|&y| self.leq(y, e) && y != self.bottom).collect();
        let hypothesis = ie.iter().all(|&x| lower.iter().all(|&y| self.incomparable(x, y)));
        if !hypothesis {
            return None;
        }
        for &z in &ie {
            for &t in &ie {
                let m = self.meet(z, t);
                if m != self.bottom && !self.incomparable(m, e) {
                    return Some((z, t));
                }
            }
        }
        None
    }
}

fn least_upper_bound(rel: &[bool], n: usize, x: usize, y: usize) -> Option<usize> {
    let upper: Vec<usize> = (0..n).filter(|&z| rel[x * n + z] && rel[y * n + z]).collect();
    upper.iter().copied().find(|&z| upper.iter().all(|&w| rel[z * n + w]))
}

fn greatest_lower_bound(rel: &[bool], n: usize, x: usize, y: usize) -> Option<usize> {
    let lower: Vec<usize> = (0..n).filter(|&z| rel[z * n + x] && rel[z * n + y]).collect();
    lower.iter().copied().find(|&z| lower.iter().all(|&w| rel[w * n + z]))
}

pub type PairSet = BTreeSet<(ElementId, ElementId)>;

/// The incomparability set of `e` and the four pair regions built from it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionSets {
    pub e: ElementId,
    /// `I_e`
    pub incomparable: Vec<ElementId>,
    /// `D(e)`
    pub d: PairSet,
    /// `D(e)'`
    pub d_prime: PairSet,
    /// `E(e)`
    pub e_set: PairSet,
    /// `E(e)'`
    pub e_prime: PairSet,
}

fn cross(out: &mut PairSet, left: &[ElementId], right: &[ElementId]) {
    for &x in left {
        for &y in right {
            out.insert((x, y));
        }
    }
}

fn cross_sym(out: &mut PairSet, left: &[ElementId], right: &[ElementId]) {
    cross(out, left, right);
    cross(out, right, left);
}

impl RegionSets {
    fn new(l: &FiniteBoundedLattice, e: ElementId) -> Self {
        let (zero, one) = (l.bottom(), l.top());
        let set = |pred: &dyn Fn(ElementId) -> bool| l.elements().filter(|&x| pred(x)).collect::<Vec<_>>();
        let ie = l.incomparable_with(e);
        let down_closed = set(&|x| l.leq(x, e));
        let down_open = set(&|x| l.leq(x, e) && x != zero && x != e);
        let down_half = set(&|x| l.leq(x, e) && x != e);
        let up_closed = set(&|x| l.leq(e, x));
        let up_left_open = set(&|x| l.leq(e, x) && x != e);
        let up_open = set(&|x| l.leq(e, x) && x != e && x != one);

        let mut d = PairSet::new();
        cross_sym(&mut d, &ie, &[one]);
        cross_sym(&mut d, &down_closed, &[one]);
        cross_sym(&mut d, &up_closed, &[e]);

        let mut d_prime = PairSet::new();
        cross_sym(&mut d_prime, &ie, &[one]);
        cross_sym(&mut d_prime, &down_open, &[one]);
        cross_sym(&mut d_prime, &up_left_open, &[e]);

        let mut e_set = PairSet::new();
        cross_sym(&mut e_set, &ie, &[zero]);
        cross_sym(&mut e_set, &up_closed, &[zero]);
        cross_sym(&mut e_set, &down_closed, &[e]);

        let mut e_prime = PairSet::new();
        cross_sym(&mut e_prime, &ie, &[zero]);
        cross_sym(&mut e_prime, &up_open, &[zero]);
        cross_sym(&mut e_prime, &down_half, &[e]);

        RegionSets {
            e,
            incomparable: ie,
            d,
            d_prime,
            e_set,
            e_prime,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn l1() -> FiniteBoundedLattice {
        build_lattice(
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
        .unwrap()
    }

    fn l2() -> FiniteBoundedLattice {
        build_lattice(
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
        .unwrap()
    }

    fn names(l: &FiniteBoundedLattice, xs: &[ElementId]) -> Vec<String> {
        xs.iter().map(|&x| l.label(x).to_string()).collect()
    }

    #[test]
    fn builds_l1() {
        let l = l1();
        assert_eq!(l.len(), 7);
        assert_eq!(l.label(l.bottom()), "0");
        assert_eq!(l.label(l.top()), "1");
        assert_eq!(l.covers().len(), 8);
    }

    #[test]
    fn two_chain_meet_is_min() {
        let l = build_lattice(&["0", "1"], &[("0", "1")]).unwrap();
        let (z, o) = (l.bottom(), l.top());
        assert_eq!(l.meet_join(z, o), (z, o));
        assert_eq!(l.meet_join(o, o), (o, o));
    }

    #[test]
    fn two_upper_bounds_is_not_a_lattice() {
        let err = build_lattice(
            &["0", "a", "b", "c", "d", "1"],
            &[
                ("0", "a"),
                ("0", "b"),
                ("a", "c"),
                ("a", "d"),
                ("b", "c"),
                ("b", "d"),
                ("c", "1"),
                ("d", "1"),
            ],
        )
        .unwrap_err();
        assert_eq!(
            err,
            LatticeError::NotALattice {
                left: "a".into(),
                right: "b".into(),
                bound: BoundKind::Join
            }
        );
    }

    #[test]
    fn cycle_and_bounds_errors() {
        let err = build_lattice(&["0", "a", "1"], &[("0", "a"), ("a", "0"), ("a", "1")]).unwrap_err();
        assert!(matches!(err, LatticeError::NotAPoset(..)));
        let err = build_lattice(&["a", "b"], &[] as &[(&str, &str)]).unwrap_err();
        assert_eq!(err, LatticeError::NoBounds);
        let err = build_lattice(&["0", "1"], &[("0", "q")]).unwrap_err();
        assert_eq!(err, LatticeError::UnknownLabel("q".into()));
        let err = build_lattice(&["0", "0"], &[] as &[(&str, &str)]).unwrap_err();
        assert_eq!(err, LatticeError::DuplicateLabel("0".into()));
    }

    #[test]
    fn redundant_covers_are_tolerated() {
        let l = build_lattice(&["0", "a", "1"], &[("0", "a"), ("a", "1"), ("0", "1")]).unwrap();
        assert_eq!(l.covers().len(), 2);
    }

    #[test]
    fn order_queries_on_l1() {
        let l = l1();
        let id = |s| l.id(s).unwrap();
        assert!(l.leq(id("a"), id("c")));
        assert!(l.leq(id("f"), id("f")));
        assert!(!l.leq(id("c"), id("f")) && !l.leq(id("f"), id("c")));
        assert_eq!(l.meet_join(id("c"), id("f")), (id("a"), id("g")));
        assert_eq!(l.meet_join(id("c"), l.top()), (id("c"), l.top()));
    }

    #[test]
    fn l2_meet_join_of_comparable_pair() {
        let l = l2();
        let (c, d) = (l.id("c").unwrap(), l.id("d").unwrap());
        assert_eq!(l.meet_join(c, d), (c, d));
    }

    #[test]
    fn intervals() {
        let l = l1();
        let id = |s| l.id(s).unwrap();
        let closed = l.closed_interval(l.bottom(), id("e")).unwrap();
        assert_eq!(names(&l, &closed), ["0", "a", "e"]);
        assert_eq!(l.closed_interval(id("c"), id("c")).unwrap(), vec![id("c")]);
        let half = l.interval(id("e"), Endpoint::Open, l.top(), Endpoint::Closed).unwrap();
        assert_eq!(names(&l, &half), ["g", "1"]);
        assert!(matches!(
            l.closed_interval(id("c"), id("f")),
            Err(LatticeError::EmptyBounds(..))
        ));
    }

    #[test]
    fn incomparability_sets() {
        let l = l1();
        assert_eq!(names(&l, &l.regions(l.id("e").unwrap()).incomparable), ["c", "f"]);
        let l = l2();
        assert_eq!(names(&l, &l.regions(l.id("e").unwrap()).incomparable), ["c", "d", "f"]);
        let chain = build_lattice(&["0", "a", "b", "1"], &[("0", "a"), ("a", "b"), ("b", "1")]).unwrap();
        for x in chain.elements() {
            assert!(chain.regions(x).incomparable.is_empty());
        }
    }

    #[test]
    fn region_pair_sets_on_l1() {
        let l = l1();
        let id = |s| l.id(s).unwrap();
        let r = l.regions(id("e"));
        // D(e) contains the whole [0,e]×{1} column, D(e)' drops 0 and e from it.
        assert!(r.d.contains(&(id("0"), id("1"))));
        assert!(!r.d_prime.contains(&(id("0"), id("1"))));
        assert!(r.d_prime.contains(&(id("a"), id("1"))));
        assert!(r.d.contains(&(id("e"), id("e"))));
        assert!(!r.d_prime.contains(&(id("e"), id("e"))));
        assert!(r.d_prime.contains(&(id("g"), id("e"))));
        assert!(r.e_set.contains(&(id("1"), id("0"))));
        assert!(!r.e_prime.contains(&(id("1"), id("0"))));
        assert!(r.e_prime.contains(&(id("g"), id("0"))));
        assert!(r.e_prime.contains(&(id("0"), id("e"))));
        assert!(!r.e_prime.contains(&(id("e"), id("e"))));
    }

    #[test]
    fn dual_swaps_everything() {
        let l = l1();
        let d = l.dual();
        assert_eq!(d.bottom(), l.top());
        for x in l.elements() {
            for y in l.elements() {
                assert_eq!(d.leq(x, y), l.leq(y, x));
                assert_eq!(d.meet(x, y), l.join(x, y));
            }
        }
        assert_eq!(d.dual(), l);
    }
}
