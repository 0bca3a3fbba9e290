//! Region formulas of the direct (non-iterated) constructions.
//!
//! With `e` fixed, every element falls in exactly one zone: `0`, `]0,e[`, `e`,
//! `]e,1[`, `1`, or `I_e`. Every interval appearing in the formulas is a union
//! of zones, so a region `A×B` is a pair of zone masks and a formula is an
//! ordered list of clauses plus an optional catch-all.

use std::ops::BitOr;

use crate::lattice::{ElementId, FiniteBoundedLattice};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Zones(u8);

impl Zones {
    pub const fn contains(self, other: Zones) -> bool {
        self.0 & other.0 == other.0
    }

    const fn or(self, other: Zones) -> Zones {
        Zones(self.0 | other.0)
    }

    /// The single-zone masks, in a fixed order.
    pub const SINGLES: [Zones; 6] = [ZERO, DOWN_OPEN, E, UP_OPEN, ONE, INC];
}

impl BitOr for Zones {
    type Output = Zones;
    fn bitor(self, rhs: Zones) -> Zones {
        self.or(rhs)
    }
}

/// `{0}`
pub const ZERO: Zones = Zones(1);
/// `]0,e[`
pub const DOWN_OPEN: Zones = Zones(2);
/// `{e}`
pub const E: Zones = Zones(4);
/// `]e,1[`
pub const UP_OPEN: Zones = Zones(8);
/// `{1}`
pub const ONE: Zones = Zones(16);
/// `I_e`
pub const INC: Zones = Zones(32);

/// `[0,e]`
pub const DOWN: Zones = ZERO.or(DOWN_OPEN).or(E);
/// `[0,e[`
pub const DOWN_HALF: Zones = ZERO.or(DOWN_OPEN);
/// `]0,e]`
pub const DOWN_NONZERO: Zones = DOWN_OPEN.or(E);
/// `[e,1]`
pub const UP: Zones = E.or(UP_OPEN).or(ONE);
/// `[e,1[`
pub const UP_HALF: Zones = E.or(UP_OPEN);
/// `]e,1]`
pub const UP_STRICT: Zones = UP_OPEN.or(ONE);
/// `L∖[0,e]`
pub const OUT_DOWN: Zones = UP_STRICT.or(INC);
/// `L∖[e,1]`
pub const OUT_UP: Zones = DOWN_HALF.or(INC);

/// Zone of `x` relative to `e`. `e` must differ from the lattice bounds.
pub fn zone_of(l: &FiniteBoundedLattice, e: ElementId, x: ElementId) -> Zones {
    if x == l.bottom() {
        ZERO
    } else if x == l.top() {
        ONE
    } else if x == e {
        E
    } else if l.leq(x, e) {
        DOWN_OPEN
    } else if l.leq(e, x) {
        UP_OPEN
    } else {
        INC
    }
}

/// How a clause computes its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    /// `T_e(x,y)`
    TNorm,
    /// `S_e(x,y)`
    TConorm,
    /// `F(x,y)`
    SubNorm,
    /// `R(x,y)`
    SubConorm,
    /// `x`
    First,
    /// `y`
    Second,
    /// `x∨y`
    Join,
    /// `x∧y`
    Meet,
    /// `x∨y∨e`
    JoinWithNeutral,
    /// `x∧y∧e`
    MeetWithNeutral,
    /// `1`
    Top,
    /// `0`
    Bottom,
    /// `S(x∨e, y∨e)`
    ConormLifted,
    /// `T(x∧e, y∧e)`
    NormLowered,
}

#[derive(Debug, Clone, Copy)]
pub struct Clause {
    pub rule: Rule,
    pub region: &'static [(Zones, Zones)],
}

impl Clause {
    pub fn matches(&self, zx: Zones, zy: Zones) -> bool {
        self.region.iter().any(|&(a, b)| a.contains(zx) && b.contains(zy))
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Formula {
    pub clauses: &'static [Clause],
    pub otherwise: Option<Rule>,
}

const fn clause(rule: Rule, region: &'static [(Zones, Zones)]) -> Clause {
    Clause { rule, region }
}

use Rule::*;

pub const UTE: Formula = Formula {
    clauses: &[
        clause(TNorm, &[(DOWN, DOWN)]),
        clause(First, &[(INC, DOWN)]),
        clause(Second, &[(DOWN, INC)]),
    ],
    otherwise: Some(JoinWithNeutral),
};

pub const USE: Formula = Formula {
    clauses: &[
        clause(TConorm, &[(UP, UP)]),
        clause(First, &[(INC, UP)]),
        clause(Second, &[(UP, INC)]),
    ],
    otherwise: Some(MeetWithNeutral),
};

pub const U1E: Formula = Formula {
    clauses: &[
        clause(TNorm, &[(DOWN, DOWN)]),
        clause(TConorm, &[(UP, UP)]),
        clause(First, &[(INC, UP_HALF), (INC, DOWN_OPEN)]),
        clause(Second, &[(UP_HALF, INC), (DOWN_OPEN, INC)]),
        clause(
            Join,
            &[(INC, INC), (INC, ONE), (ONE, INC), (DOWN_OPEN, ONE), (ONE, DOWN_OPEN)],
        ),
    ],
    otherwise: Some(Meet),
};

pub const U2E: Formula = Formula {
    clauses: &[
        clause(TNorm, &[(DOWN, DOWN)]),
        clause(TConorm, &[(UP, UP)]),
        clause(First, &[(INC, UP_OPEN), (INC, DOWN_NONZERO)]),
        clause(Second, &[(UP_OPEN, INC), (DOWN_NONZERO, INC)]),
        clause(
            Meet,
            &[(INC, INC), (INC, ZERO), (ZERO, INC), (UP_OPEN, ZERO), (ZERO, UP_OPEN)],
        ),
    ],
    otherwise: Some(Join),
};

pub const URE: Formula = Formula {
    clauses: &[
        clause(TNorm, &[(DOWN, DOWN)]),
        clause(First, &[(INC, DOWN), (INC, UP_HALF)]),
        clause(Second, &[(DOWN, INC), (UP_HALF, INC)]),
        clause(SubConorm, &[(INC, INC), (UP_STRICT, UP_STRICT)]),
        // D(e)
        clause(
            Join,
            &[(INC, ONE), (ONE, INC), (DOWN, ONE), (ONE, DOWN), (UP, E), (E, UP)],
        ),
    ],
    otherwise: Some(Meet),
};

pub const UFE: Formula = Formula {
    clauses: &[
        clause(TConorm, &[(UP, UP)]),
        clause(First, &[(INC, DOWN_NONZERO), (INC, UP)]),
        clause(Second, &[(DOWN_NONZERO, INC), (UP, INC)]),
        clause(SubNorm, &[(INC, INC), (DOWN_HALF, DOWN_HALF)]),
        // E(e)
        clause(
            Meet,
            &[(INC, ZERO), (ZERO, INC), (UP, ZERO), (ZERO, UP), (DOWN, E), (E, DOWN)],
        ),
    ],
    otherwise: Some(Join),
};

pub const UR: Formula = Formula {
    clauses: &[
        clause(TNorm, &[(DOWN, DOWN)]),
        clause(First, &[(DOWN_HALF, OUT_DOWN)]),
        clause(Second, &[(OUT_DOWN, DOWN_HALF)]),
        clause(Second, &[(E, OUT_DOWN)]),
        clause(First, &[(OUT_DOWN, E)]),
        clause(SubConorm, &[(OUT_DOWN, OUT_DOWN)]),
    ],
    otherwise: None,
};

pub const UF: Formula = Formula {
    clauses: &[
        clause(TConorm, &[(UP, UP)]),
        clause(First, &[(UP_STRICT, OUT_UP)]),
        clause(Second, &[(OUT_UP, UP_STRICT)]),
        clause(Second, &[(E, OUT_UP)]),
        clause(First, &[(OUT_UP, E)]),
        clause(SubNorm, &[(OUT_UP, OUT_UP)]),
    ],
    otherwise: None,
};

pub const UMEET: Formula = Formula {
    clauses: &[
        clause(TNorm, &[(DOWN, DOWN)]),
        clause(
            Meet,
            &[(DOWN_HALF, INC), (INC, DOWN_HALF), (DOWN_HALF, UP), (UP, DOWN_HALF)],
        ),
        clause(Second, &[(E, INC)]),
        clause(First, &[(INC, E)]),
    ],
    otherwise: Some(Join),
};

pub const UJOIN: Formula = Formula {
    clauses: &[
        clause(TConorm, &[(UP, UP)]),
        clause(
            Join,
            &[(UP_STRICT, INC), (INC, UP_STRICT), (DOWN_HALF, UP_STRICT), (UP_STRICT, DOWN_HALF)],
        ),
        clause(Second, &[(E, INC)]),
        clause(First, &[(INC, E)]),
    ],
    otherwise: Some(Meet),
};

pub const UD: Formula = Formula {
    clauses: &[
        clause(TNorm, &[(DOWN, DOWN)]),
        clause(TConorm, &[(UP_STRICT, UP_STRICT)]),
        clause(First, &[(INC.or(UP_STRICT), DOWN)]),
        clause(Second, &[(DOWN, INC.or(UP_STRICT))]),
    ],
    otherwise: Some(ConormLifted),
};

pub const UC: Formula = Formula {
    clauses: &[
        clause(TNorm, &[(DOWN_HALF, DOWN_HALF)]),
        clause(TConorm, &[(UP, UP)]),
        clause(First, &[(INC.or(DOWN_HALF), UP)]),
        clause(Second, &[(UP, INC.or(DOWN_HALF))]),
    ],
    otherwise: Some(NormLowered),
};

pub const U1: Formula = Formula {
    clauses: &[
        clause(TNorm, &[(DOWN, DOWN)]),
        clause(TConorm, &[(UP, UP)]),
        clause(First, &[(INC, UP_HALF), (INC, DOWN_HALF)]),
        clause(Second, &[(UP_HALF, INC), (DOWN_HALF, INC)]),
        clause(
            Join,
            &[(INC, INC), (INC, ONE), (ONE, INC), (DOWN_HALF, ONE), (ONE, DOWN_HALF)],
        ),
    ],
    otherwise: Some(Meet),
};

pub const U2: Formula = Formula {
    clauses: &[
        clause(TNorm, &[(DOWN, DOWN)]),
        clause(TConorm, &[(UP, UP)]),
        clause(First, &[(INC, UP_STRICT), (INC, DOWN_NONZERO)]),
        clause(Second, &[(UP_STRICT, INC), (DOWN_NONZERO, INC)]),
        clause(
            Meet,
            &[(INC, INC), (INC, ZERO), (ZERO, INC), (UP_STRICT, ZERO), (ZERO, UP_STRICT)],
        ),
    ],
    otherwise: Some(Join),
};

pub const U3: Formula = Formula {
    clauses: &[
        clause(TNorm, &[(DOWN, DOWN)]),
        clause(First, &[(INC, DOWN_NONZERO), (INC, UP_OPEN)]),
        clause(Second, &[(DOWN_NONZERO, INC), (UP_OPEN, INC)]),
        clause(SubConorm, &[(INC, INC), (UP_STRICT, UP_STRICT)]),
        // D(e)'
        clause(
            Join,
            &[
                (INC, ONE),
                (ONE, INC),
                (DOWN_OPEN, ONE),
                (ONE, DOWN_OPEN),
                (UP_STRICT, E),
                (E, UP_STRICT),
            ],
        ),
    ],
    otherwise: Some(Meet),
};

pub const U4: Formula = Formula {
    clauses: &[
        clause(TConorm, &[(UP, UP)]),
        clause(First, &[(INC, UP_HALF), (INC, DOWN_OPEN)]),
        clause(Second, &[(UP_HALF, INC), (DOWN_OPEN, INC)]),
        clause(SubNorm, &[(INC, INC), (DOWN_HALF, DOWN_HALF)]),
        // E(e)'
        clause(
            Meet,
            &[
                (INC, ZERO),
                (ZERO, INC),
                (UP_OPEN, ZERO),
                (ZERO, UP_OPEN),
                (DOWN_HALF, E),
                (E, DOWN_HALF),
            ],
        ),
    ],
    otherwise: Some(Join),
};

pub const U5: Formula = Formula {
    clauses: &[
        clause(TNorm, &[(DOWN, DOWN)]),
        clause(
            Meet,
            &[(DOWN_HALF, INC), (INC, DOWN_HALF), (DOWN_HALF, UP_STRICT), (UP_STRICT, DOWN_HALF)],
        ),
        clause(Second, &[(E, INC), (E, UP_STRICT)]),
        clause(First, &[(INC, E), (UP_STRICT, E)]),
        clause(SubConorm, &[(INC, INC)]),
        clause(Top, &[(INC, UP_STRICT), (UP_STRICT, INC), (UP_STRICT, UP_STRICT)]),
    ],
    otherwise: None,
};

pub const U6: Formula = Formula {
    clauses: &[
        clause(TConorm, &[(UP, UP)]),
        clause(
            Join,
            &[(UP_STRICT, INC), (INC, UP_STRICT), (DOWN_HALF, UP_STRICT), (UP_STRICT, DOWN_HALF)],
        ),
        clause(Second, &[(E, INC), (E, DOWN_HALF)]),
        clause(First, &[(INC, E), (DOWN_HALF, E)]),
        clause(SubNorm, &[(INC, INC)]),
        clause(Bottom, &[(INC, DOWN_HALF), (DOWN_HALF, INC), (DOWN_HALF, DOWN_HALF)]),
    ],
    otherwise: None,
};
