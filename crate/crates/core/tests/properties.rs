use std::sync::Arc;

use proptest::prelude::*;

use uninorm_core::constructions::{construct_iterated_conorm, construct_iterated_norm};
use uninorm_core::gen::{canonical_component_sets, random_lattice, GenConfig};
use uninorm_core::io::{emit_lattice, emit_table, parse_lattice, parse_table};
use uninorm_core::ops::{canonical_op, CanonicalKind, Carrier, OpTable};
use uninorm_core::verifier::{check_uninorm, monotone_by_covers, monotone_pairwise};
use uninorm_core::{check_preconditions, construct, ElementId, FiniteBoundedLattice, MethodId};

fn lattice() -> impl Strategy<Value = Arc<FiniteBoundedLattice>> {
    (3usize..=8, any::<u64>()).prop_map(|(size, seed)| Arc::new(random_lattice(GenConfig::new(size, seed)).unwrap()))
}

fn with_interior() -> impl Strategy<Value = (Arc<FiniteBoundedLattice>, ElementId)> {
    lattice().prop_flat_map(|l| {
        let inner: Vec<_> = l.elements().filter(|&x| x != l.bottom() && x != l.top()).collect();
        (Just(l), proptest::sample::select(inner))
    })
}

proptest! {
    #[test]
    fn lattice_laws(l in lattice()) {
        for x in l.elements() {
            for y in l.elements() {
                let (m, j) = (l.meet(x, y), l.join(x, y));
                prop_assert!(l.leq(m, x) && l.leq(m, y) && l.leq(x, j) && l.leq(y, j));
                prop_assert_eq!(l.join(x, m), x);
                prop_assert_eq!(l.meet(x, j), x);
                prop_assert_eq!(l.leq(x, y), m == x);
            }
        }
    }

    #[test]
    fn dual_swaps_operations(l in lattice()) {
        let d = l.dual();
        prop_assert_eq!(d.bottom(), l.top());
        for x in l.elements() {
            for y in l.elements() {
                prop_assert_eq!(d.meet(x, y), l.join(x, y));
                prop_assert_eq!(d.leq(x, y), l.leq(y, x));
            }
        }
        prop_assert_eq!(&d.dual(), &*l);
    }

    #[test]
    fn files_round_trip(l in lattice()) {
        let text = emit_lattice(&l);
        prop_assert_eq!(&parse_lattice(&text).unwrap(), &*l);
        let meet = canonical_op(CanonicalKind::MeetTnorm, Carrier::full(l.clone())).unwrap();
        prop_assert_eq!(parse_table(&emit_table(&meet), &l).unwrap(), meet);
    }

    #[test]
    fn admitted_constructions_are_uninorms((l, e) in with_interior()) {
        for m in MethodId::DIRECT {
            for set in canonical_component_sets(m, &l, e, true) {
                let spec = set.into_spec(l.clone(), e, m).force(false);
                if check_preconditions(&spec).unwrap().all_hold() {
                    let u = construct(&spec).unwrap();
                    prop_assert!(check_uninorm(&u, e).is_uninorm(), "{} at e={}", m, l.label(e));
                }
            }
        }
    }

    #[test]
    fn monotonicity_checks_agree((l, e) in with_interior()) {
        for m in [MethodId::U1, MethodId::U2, MethodId::U5, MethodId::Ujoin] {
            for set in canonical_component_sets(m, &l, e, true) {
                let u = construct(&set.into_spec(l.clone(), e, m)).unwrap();
                prop_assert_eq!(monotone_pairwise(&u).is_none(), monotone_by_covers(&u).is_none());
            }
        }
    }
}

/// Rebuilds `op` over the dual lattice with the same cell values.
fn on_dual(op: &OpTable, dual: &Arc<FiniteBoundedLattice>) -> OpTable {
    let members = op.carrier().members().to_vec();
    OpTable::from_fn(Carrier::new(dual.clone(), members), |x, y| op.get(x, y)).unwrap()
}

#[test]
fn iterated_norm_is_the_dual_of_iterated_conorm() {
    let l = Arc::new(uninorm_core::gen::chain(6).unwrap());
    let d = Arc::new(l.dual());
    let ids: Vec<_> = l.elements().collect();
    let e = ids[3];
    // 1 > e > a2 > a1 > 0 in l, read upward in the dual.
    let chain = vec![l.top(), e, ids[2], ids[1], l.bottom()];
    let s = canonical_op(CanonicalKind::DrasticTconorm, Carrier::interval(l.clone(), e, l.top())).unwrap();
    let norms: Vec<_> = chain
        .windows(2)
        .skip(1)
        .enumerate()
        .map(|(i, w)| {
            let kind = if i % 2 == 0 { CanonicalKind::MeetTnorm } else { CanonicalKind::DrasticTnorm };
            canonical_op(kind, Carrier::interval(l.clone(), w[1], w[0])).unwrap()
        })
        .collect();
    let us = construct_iterated_norm(&l, &chain, &s, &norms).unwrap();

    let dual_t = on_dual(&s, &d);
    let dual_s: Vec<_> = norms.iter().map(|t| on_dual(t, &d)).collect();
    let vs = construct_iterated_conorm(&d, &chain, &dual_t, &dual_s).unwrap();
    assert_eq!(us.len(), vs.len());
    for (u, v) in us.iter().zip(&vs) {
        assert_eq!(u.carrier().members(), v.carrier().members());
        assert_eq!(u.values(), v.values());
        assert!(check_uninorm(u, e).is_uninorm());
    }
}
