//! Capacity bounds for the exhaustive algorithms.
//!
//! Every operation that enumerates elements, normal subgroups, or isomorphism
//! candidates checks the group order against these bounds first and fails with
//! `GroupError::Capacity` instead of hanging.  The single environment knob
//! `FORMLAB_CAPACITY=<order>` raises (or lowers) all order bounds at once.

use std::sync::OnceLock;

#[derive(Debug, Clone, Copy)]
pub struct Caps {
    /// Largest order for which elements are enumerated (membership itself is
    /// unbounded; only full enumeration is guarded).
    pub element_order: u128,
    /// Largest order for which the normal subgroup lattice is built.
    pub lattice_order: u128,
    /// Largest order fed to the isomorphism backtracker.
    pub iso_order: u128,
    /// Largest order for which Frattini subgroups of non-nilpotent groups are
    /// computed by subgroup enumeration (nilpotent groups have no bound).
    pub frattini_order: u128,
}

pub const DEFAULT_ORDER_BOUND: u128 = 2000;
pub const DEFAULT_FRATTINI_BOUND: u128 = 512;

impl Default for Caps {
    fn default() -> Self {
        Caps {
            element_order: DEFAULT_ORDER_BOUND,
            lattice_order: DEFAULT_ORDER_BOUND,
            iso_order: DEFAULT_ORDER_BOUND,
            frattini_order: DEFAULT_FRATTINI_BOUND,
        }
    }
}

impl Caps {
    /// Process-wide bounds: the defaults, unless `FORMLAB_CAPACITY` overrides
    /// the order bounds (read once).
    pub fn global() -> &'static Caps {
        static GLOBAL: OnceLock<Caps> = OnceLock::new();
        GLOBAL.get_or_init(|| match std::env::var("FORMLAB_CAPACITY") {
            Ok(v) => match v.trim().parse::<u128>() {
                Ok(n) if n >= 1 => Caps {
                    element_order: n,
                    lattice_order: n,
                    iso_order: n,
                    frattini_order: n,
                },
                _ => Caps::default(),
            },
            Err(_) => Caps::default(),
        })
    }
}
