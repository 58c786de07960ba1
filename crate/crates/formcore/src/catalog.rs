//! Classification of the composition factors that can occur at this scale.
//!
//! Below order 20160 a nonabelian simple group is determined up to isomorphism
//! by its order alone (the first ambiguous order is 20160, where A8 and
//! PSL(3,4) collide), so the engine types composition factors by order via a
//! fixed catalog and refuses orders it does not know.

use crate::arith::{is_prime, prime_divisors};
use crate::error::{GroupError, Result};

/// Orders of nonabelian simple groups below 20160, with conventional labels.
pub const NONABELIAN_SIMPLE: &[(u128, &str)] = &[
    (60, "A5"),
    (168, "PSL(2,7)"),
    (360, "A6"),
    (504, "PSL(2,8)"),
    (660, "PSL(2,11)"),
    (1092, "PSL(2,13)"),
    (2448, "PSL(2,17)"),
    (2520, "A7"),
    (3420, "PSL(2,19)"),
    (4080, "PSL(2,16)"),
    (5616, "PSL(3,3)"),
    (6048, "PSU(3,3)"),
    (6072, "PSL(2,23)"),
    (7800, "PSL(2,25)"),
    (7920, "M11"),
    (9828, "PSL(2,27)"),
    (12180, "PSL(2,29)"),
    (14880, "PSL(2,31)"),
];

pub const CATALOG_LIMIT: u128 = 20160;

/// Isomorphism type of a simple group: a cyclic group of prime order or a
/// catalogued nonabelian simple group.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum SimpleType {
    Cyclic(u64),
    NonAbelian { order: u64 },
}

impl SimpleType {
    /// Types a simple group by its order.  Errors if the order is neither
    /// prime nor a catalogued nonabelian simple order.
    pub fn from_order(order: u128) -> Result<SimpleType> {
        if order <= u64::MAX as u128 && is_prime(order as u64) {
            return Ok(SimpleType::Cyclic(order as u64));
        }
        if NONABELIAN_SIMPLE.iter().any(|&(o, _)| o == order) {
            return Ok(SimpleType::NonAbelian {
                order: order as u64,
            });
        }
        Err(GroupError::UnknownSimpleOrder(order))
    }

    pub fn order(&self) -> u64 {
        match self {
            SimpleType::Cyclic(p) => *p,
            SimpleType::NonAbelian { order } => *order,
        }
    }

    pub fn is_abelian(&self) -> bool {
        matches!(self, SimpleType::Cyclic(_))
    }

    pub fn label(&self) -> String {
        match self {
            SimpleType::Cyclic(p) => format!("C{p}"),
            SimpleType::NonAbelian { order } => NONABELIAN_SIMPLE
                .iter()
                .find(|&&(o, _)| o == *order as u128)
                .map(|&(_, l)| l.to_string())
                .unwrap_or_else(|| format!("Simple({order})")),
        }
    }

    /// Parses `pP` (prime) or a catalog label / nonabelian order.
    pub fn parse(text: &str) -> Result<SimpleType> {
        let t = text.trim();
        let err = |msg: String| GroupError::ClassSyntax { pos: 0, msg };
        if let Some(rest) = t.strip_prefix('p') {
            if let Ok(p) = rest.parse::<u64>() {
                if is_prime(p) {
                    return Ok(SimpleType::Cyclic(p));
                }
                return Err(err(format!("{p} is not prime")));
            }
        }
        if let Some(&(o, _)) = NONABELIAN_SIMPLE.iter().find(|&&(_, l)| l == t) {
            return Ok(SimpleType::NonAbelian { order: o as u64 });
        }
        if let Ok(n) = t.parse::<u64>() {
            return SimpleType::from_order(n as u128);
        }
        Err(err(format!("unknown simple type {t:?}")))
    }

    /// Primes dividing the order.
    pub fn primes(&self) -> Vec<u64> {
        prime_divisors(self.order() as u128)
    }
}

impl std::fmt::Display for SimpleType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.label())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn typing_by_order() {
        assert_eq!(SimpleType::from_order(7).unwrap(), SimpleType::Cyclic(7));
        assert_eq!(
            SimpleType::from_order(60).unwrap(),
            SimpleType::NonAbelian { order: 60 }
        );
        assert_eq!(SimpleType::from_order(60).unwrap().label(), "A5");
        assert_eq!(SimpleType::from_order(168).unwrap().label(), "PSL(2,7)");
        assert!(SimpleType::from_order(4).is_err());
        assert!(SimpleType::from_order(120).is_err());
        assert!(SimpleType::from_order(20160).is_err());
    }

    #[test]
    fn parsing() {
        assert_eq!(SimpleType::parse("p2").unwrap(), SimpleType::Cyclic(2));
        assert_eq!(
            SimpleType::parse("A5").unwrap(),
            SimpleType::NonAbelian { order: 60 }
        );
        assert_eq!(
            SimpleType::parse("60").unwrap(),
            SimpleType::NonAbelian { order: 60 }
        );
        assert!(SimpleType::parse("p4").is_err());
        assert!(SimpleType::parse("B2").is_err());
    }

    #[test]
    fn catalog_orders_are_distinct_and_sorted() {
        for w in NONABELIAN_SIMPLE.windows(2) {
            assert!(w[0].0 < w[1].0);
        }
        assert!(NONABELIAN_SIMPLE.iter().all(|&(o, _)| o < CATALOG_LIMIT));
    }

    #[test]
    fn simple_type_primes() {
        assert_eq!(SimpleType::Cyclic(5).primes(), vec![5]);
        assert_eq!(
            SimpleType::NonAbelian { order: 60 }.primes(),
            vec![2, 3, 5]
        );
    }
}
