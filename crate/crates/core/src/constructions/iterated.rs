//! Block-by-block constructions along a chain `0=a₀<a₁=e<…<a_n=1` (and the
//! order-dual chain `1=b₀>b₁=e>…>b_n=0`).
//!
//! Both directions share one implementation that reads the order through a
//! [`View`]; in the descending view `≤`, `∨` and `0` mean `≥`, `∧` and `1`.

use std::sync::Arc;

use crate::lattice::{ElementId, FiniteBoundedLattice};
use crate::ops::{classify_op, Carrier, OpTable};

use super::{ConstructionError, Role};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Direction {
    Ascending,
    Descending,
}

#[derive(Clone, Copy)]
struct View<'a> {
    l: &'a FiniteBoundedLattice,
    dir: Direction,
}

impl View<'_> {
    fn le(&self, x: ElementId, y: ElementId) -> bool {
        match self.dir {
            Direction::Ascending => self.l.leq(x, y),
            Direction::Descending => self.l.leq(y, x),
        }
    }

    fn lt(&self, x: ElementId, y: ElementId) -> bool {
        x != y && self.le(x, y)
    }

    fn up(&self, x: ElementId, y: ElementId) -> ElementId {
        match self.dir {
            Direction::Ascending => self.l.join(x, y),
            Direction::Descending => self.l.meet(x, y),
        }
    }

    fn low(&self) -> ElementId {
        match self.dir {
            Direction::Ascending => self.l.bottom(),
            Direction::Descending => self.l.top(),
        }
    }

    fn high(&self) -> ElementId {
        match self.dir {
            Direction::Ascending => self.l.top(),
            Direction::Descending => self.l.bottom(),
        }
    }

    /// The actual carrier of the view-interval `[a,b]`.
    fn segment(&self, l: &Arc<FiniteBoundedLattice>, a: ElementId, b: ElementId) -> Carrier {
        match self.dir {
            Direction::Ascending => Carrier::interval(l.clone(), a, b),
            Direction::Descending => Carrier::interval(l.clone(), b, a),
        }
    }
}

/// Zone of an element of `[0,a_{k+1}]` at step `k` (read in the chain's direction).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IterZone {
    /// `[0,e]`
    BelowE,
    /// `x≤a_k`, `x∥e`
    IncBelow,
    /// `]e,a_k]`
    Mid,
    /// `x∥a_k`, `x>e`
    IncAbove,
    /// `x∥a_k`, `x∥e`
    IncBoth,
    /// `]a_k,a_{k+1}]`
    Top,
}

impl IterZone {
    pub const ALL: [IterZone; 6] = [
        IterZone::BelowE,
        IterZone::IncBelow,
        IterZone::Mid,
        IterZone::IncAbove,
        IterZone::IncBoth,
        IterZone::Top,
    ];
}

/// Six-way split of `[0,a_{k+1}]` used to extend `U_k` to `U_{k+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IterRegionPartition {
    pub step: usize,
    zones: Vec<Option<IterZone>>,
}

impl IterRegionPartition {
    /// Partition at step `k` for an ascending chain (`1 ≤ k < chain.len()-1`).
    pub fn ascending(l: &FiniteBoundedLattice, chain: &[ElementId], k: usize) -> Self {
        Self::build(View { l, dir: Direction::Ascending }, chain, k)
    }

    /// Partition at step `k` for a descending chain, read in the dual order.
    pub fn descending(l: &FiniteBoundedLattice, chain: &[ElementId], k: usize) -> Self {
        Self::build(View { l, dir: Direction::Descending }, chain, k)
    }

    fn build(v: View<'_>, chain: &[ElementId], k: usize) -> Self {
        let (e, ak, next) = (chain[1], chain[k], chain[k + 1]);
        let zones = v
            .l
            .elements()
            .map(|x| {
                if !v.le(x, next) {
                    None
                } else if v.le(x, e) {
                    Some(IterZone::BelowE)
                } else if v.le(x, ak) {
                    Some(if v.le(e, x) { IterZone::Mid } else { IterZone::IncBelow })
                } else if v.le(ak, x) {
                    Some(IterZone::Top)
                } else if v.lt(e, x) {
                    Some(IterZone::IncAbove)
                } else {
                    Some(IterZone::IncBoth)
                }
            })
            .collect();
        IterRegionPartition { step: k, zones }
    }

    /// `None` outside `[0,a_{k+1}]`.
    pub fn zone(&self, x: ElementId) -> Option<IterZone> {
        self.zones[x.index()]
    }

    pub fn members(&self, zone: IterZone) -> Vec<ElementId> {
        (0..self.zones.len())
            .filter(|&i| self.zones[i] == Some(zone))
            .map(ElementId)
            .collect()
    }
}

pub(crate) fn ascending(l: &FiniteBoundedLattice, mut chain: Vec<ElementId>) -> Vec<ElementId> {
    if chain.first() == Some(&l.top()) {
        chain.reverse();
    }
    chain
}

pub(crate) fn descending(l: &FiniteBoundedLattice, mut chain: Vec<ElementId>) -> Vec<ElementId> {
    if chain.first() == Some(&l.bottom()) {
        chain.reverse();
    }
    chain
}

fn check_chain(v: View<'_>, chain: &[ElementId]) -> Result<(), ConstructionError> {
    let l = v.l;
    let names = || chain.iter().map(|&x| l.label(x)).collect::<Vec<_>>().join(", ");
    if chain.len() < 3 {
        return Err(ConstructionError::BadChain(format!(
            "({}) needs at least three elements",
            names()
        )));
    }
    if chain[0] != v.low() || chain[chain.len() - 1] != v.high() {
        return Err(ConstructionError::BadChain(format!(
            "({}) must run from `{}` to `{}`",
            names(),
            l.label(v.low()),
            l.label(v.high())
        )));
    }
    if let Some(w) = chain.windows(2).find(|w| !v.lt(w[0], w[1])) {
        return Err(ConstructionError::BadChain(format!(
            "`{}` does not strictly precede `{}`",
            l.label(w[0]),
            l.label(w[1])
        )));
    }
    Ok(())
}

fn check_base(
    v: View<'_>,
    l: &Arc<FiniteBoundedLattice>,
    chain: &[ElementId],
    base: &OpTable,
    role: Role,
) -> Result<(), ConstructionError> {
    let expected = v.segment(l, chain[0], chain[1]);
    if base.carrier() != &expected {
        return Err(ConstructionError::CarrierMismatch {
            method: match v.dir {
                Direction::Ascending => super::MethodId::IterS,
                Direction::Descending => super::MethodId::IterT,
            },
            role,
            expected: expected.labels().into_iter().map(String::from).collect(),
            found: base.carrier().labels().into_iter().map(String::from).collect(),
        });
    }
    Ok(())
}

/// Extends `prev` (on `[0,a_k]`) to `[0,a_{k+1}]`. `block` gives the value on
/// `]a_k,a_{k+1}]²` and `rest` the catch-all value.
fn extend(
    v: View<'_>,
    l: &Arc<FiniteBoundedLattice>,
    chain: &[ElementId],
    k: usize,
    prev: &OpTable,
    block: impl Fn(ElementId, ElementId) -> ElementId,
    rest: impl Fn(ElementId, ElementId) -> ElementId,
) -> Result<OpTable, ConstructionError> {
    use IterZone::*;
    let part = IterRegionPartition::build(v, chain, k);
    let carrier = v.segment(l, chain[0], chain[k + 1]);
    let zone = |x| part.zone(x).expect("element of the carrier");
    Ok(OpTable::from_fn(carrier, |x, y| {
        let (zx, zy) = (zone(x), zone(y));
        let low = |z| matches!(z, BelowE | IncBelow | Mid);
        if low(zx) && low(zy) {
            prev.get(x, y)
        } else if zx == Top && zy == Top {
            block(x, y)
        } else if (zx == BelowE && matches!(zy, IncAbove | Top)) || (zy == BelowE && matches!(zx, IncAbove | Top)) {
            v.up(x, y)
        } else if zx == IncBoth && zy == BelowE {
            x
        } else if zx == BelowE && zy == IncBoth {
            y
        } else {
            rest(x, y)
        }
    })?)
}

fn iterate(
    dir: Direction,
    l: &Arc<FiniteBoundedLattice>,
    chain: &[ElementId],
    base: &OpTable,
    blocks: &[OpTable],
) -> Result<Vec<OpTable>, ConstructionError> {
    let v = View { l, dir };
    check_chain(v, chain)?;
    let base_role = match dir {
        Direction::Ascending => Role::TNorm,
        Direction::Descending => Role::TConorm,
    };
    check_base(v, l, chain, base, base_role)?;
    if blocks.len() != chain.len() - 2 {
        return Err(ConstructionError::BadChain(format!(
            "{} blocks after the first need {} operators, got {}",
            chain.len() - 2,
            chain.len() - 2,
            blocks.len()
        )));
    }
    for (i, op) in blocks.iter().enumerate() {
        let block = i + 2;
        let expected = v.segment(l, chain[i + 1], chain[i + 2]);
        let not_kind = || match dir {
            Direction::Ascending => ConstructionError::ComponentNotConorm { block },
            Direction::Descending => ConstructionError::ComponentNotNorm { block },
        };
        if op.carrier() != &expected {
            return Err(not_kind());
        }
        let r = classify_op(op, Some(chain[i + 1]));
        let ok = match dir {
            Direction::Ascending => r.is_tconorm(),
            Direction::Descending => r.is_tnorm(),
        };
        if !ok {
            return Err(not_kind());
        }
    }

    let mut out = vec![base.clone()];
    for k in 1..chain.len() - 1 {
        let s = &blocks[k - 1];
        let ak = chain[k];
        let next = extend(
            v,
            l,
            chain,
            k,
            out.last().expect("non-empty"),
            |x, y| s.get(x, y),
            |x, y| s.get(v.up(x, ak), v.up(y, ak)),
        )?;
        out.push(next);
    }
    Ok(out)
}

fn iterate_lattice_op(
    dir: Direction,
    l: &Arc<FiniteBoundedLattice>,
    chain: &[ElementId],
    base: &OpTable,
) -> Result<Vec<OpTable>, ConstructionError> {
    let v = View { l, dir };
    check_chain(v, chain)?;
    let role = match dir {
        Direction::Ascending => Role::TNorm,
        Direction::Descending => Role::TConorm,
    };
    check_base(v, l, chain, base, role)?;
    let mut out = vec![base.clone()];
    for k in 1..chain.len() - 1 {
        let ak = chain[k];
        let next = extend(
            v,
            l,
            chain,
            k,
            out.last().expect("non-empty"),
            |x, y| v.up(x, y),
            |x, y| v.up(v.up(x, y), ak),
        )?;
        out.push(next);
    }
    Ok(out)
}

/// `U₁ˢ=T_e, U₂ˢ, …, U_nˢ` with `U_iˢ` on `[0,a_i]`.
///
/// `chain` is `0=a₀<a₁<…<a_n=1` with `a₁` the neutral element; `conorms[i-2]`
/// is the t-conorm on `[a_{i-1},a_i]`.
pub fn construct_iterated_conorm(
    lattice: &Arc<FiniteBoundedLattice>,
    chain: &[ElementId],
    tnorm: &OpTable,
    conorms: &[OpTable],
) -> Result<Vec<OpTable>, ConstructionError> {
    iterate(Direction::Ascending, lattice, chain, tnorm, conorms)
}

/// `U₁ᵀ=S_e, U₂ᵀ, …, U_nᵀ` with `U_iᵀ` on `[b_i,1]`.
///
/// `chain` is `1=b₀>b₁>…>b_n=0` with `b₁` the neutral element; `norms[i-2]`
/// is the t-norm on `[b_i,b_{i-1}]`.
pub fn construct_iterated_norm(
    lattice: &Arc<FiniteBoundedLattice>,
    chain: &[ElementId],
    tconorm: &OpTable,
    norms: &[OpTable],
) -> Result<Vec<OpTable>, ConstructionError> {
    iterate(Direction::Descending, lattice, chain, tconorm, norms)
}

/// Closed form of the ascending iteration with every block conorm equal to `∨`:
/// `x∨y` on the new block and `x∨y∨a_{i-1}` as catch-all.
pub fn construct_iterated_join(
    lattice: &Arc<FiniteBoundedLattice>,
    chain: &[ElementId],
    tnorm: &OpTable,
) -> Result<Vec<OpTable>, ConstructionError> {
    iterate_lattice_op(Direction::Ascending, lattice, chain, tnorm)
}

/// Closed form of the descending iteration with every block norm equal to `∧`.
pub fn construct_iterated_meet(
    lattice: &Arc<FiniteBoundedLattice>,
    chain: &[ElementId],
    tconorm: &OpTable,
) -> Result<Vec<OpTable>, ConstructionError> {
    iterate_lattice_op(Direction::Descending, lattice, chain, tconorm)
}
