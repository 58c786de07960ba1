//! Permutations on `{0, …, degree-1}` in image-array form.
//!
//! Products compose left to right: `(p * q)` means "apply `p`, then `q`", so
//! the point action is `x^(pq) = (x^p)^q`.  Conjugation is `p^g = g⁻¹ p g` and
//! the commutator is `[a, b] = a⁻¹ b⁻¹ a b`.  Cycle text uses 1-based points.

use crate::arith::lcm;
use crate::error::{GroupError, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Box<[u16]>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm {
            images: (0..degree as u16).collect(),
        }
    }

    /// Builds a permutation from its image array; every point must occur
    /// exactly once.
    pub fn from_images(images: Vec<u16>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &img in &images {
            if (img as usize) >= n || seen[img as usize] {
                return Err(GroupError::Parse {
                    line: 0,
                    msg: "image array is not a permutation".into(),
                });
            }
            seen[img as usize] = true;
        }
        Ok(Perm {
            images: images.into_boxed_slice(),
        })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u16] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `self` then `other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u16; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u16;
        }
        Perm {
            images: inv.into_boxed_slice(),
        }
    }

    /// `g⁻¹ · self · g`.
    pub fn conjugate(&self, g: &Perm) -> Perm {
        let mut out = vec![0u16; self.images.len()];
        for (i, &si) in self.images.iter().enumerate() {
            out[g.images[i] as usize] = g.images[si as usize];
        }
        Perm {
            images: out.into_boxed_slice(),
        }
    }

    /// `a⁻¹ b⁻¹ a b`.
    pub fn commutator(a: &Perm, b: &Perm) -> Perm {
        a.inverse().compose(&b.inverse()).compose(a).compose(b)
    }

    pub fn order(&self) -> u64 {
        self.cycles_including_fixed()
            .into_iter()
            .fold(1, |acc, c| lcm(acc, c.len() as u64))
    }

    pub fn pow(&self, mut e: u64) -> Perm {
        let mut acc = Perm::identity(self.degree());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    pub fn smallest_moved(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &x)| *i != x as usize)
            .map(|(i, _)| i)
    }

    pub fn moved_points(&self) -> Vec<usize> {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &x)| *i != x as usize)
            .map(|(i, _)| i)
            .collect()
    }

    /// Nontrivial cycles, each rotated to start at its smallest point, sorted
    /// by that point.  The canonical form used for display and hashing text.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        self.cycles_including_fixed()
            .into_iter()
            .filter(|c| c.len() > 1)
            .collect()
    }

    fn cycles_including_fixed(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    /// Parses 1-based disjoint cycle notation, e.g. `(1 2 3)(4 5)`.
    /// `()` is the identity.  `line` is only used to report errors.
    pub fn parse_cycles(degree: usize, text: &str, line: usize) -> Result<Perm> {
        let err = |msg: &str| GroupError::Parse {
            line,
            msg: msg.into(),
        };
        let mut images: Vec<u16> = (0..degree as u16).collect();
        let mut used = vec![false; degree];
        let mut chars = text.chars().peekable();
        let mut any = false;
        while let Some(&c) = chars.peek() {
            if c.is_whitespace() {
                chars.next();
                continue;
            }
            if c != '(' {
                return Err(err(&format!("expected '(' but found {c:?}")));
            }
            chars.next();
            any = true;
            let mut cycle: Vec<usize> = Vec::new();
            let mut num = String::new();
            loop {
                match chars.next() {
                    Some(d) if d.is_ascii_digit() => num.push(d),
                    Some(d) if d.is_whitespace() || d == ',' || d == ')' => {
                        if !num.is_empty() {
                            let point: usize = num
                                .parse()
                                .map_err(|_| err("point does not fit in usize"))?;
                            if point == 0 || point > degree {
                                return Err(err(&format!(
                                    "point {point} out of range 1..={degree}"
                                )));
                            }
                            if used[point - 1] {
                                return Err(err(&format!("duplicate point {point}")));
                            }
                            used[point - 1] = true;
                            cycle.push(point - 1);
                            num.clear();
                        }
                        if d == ')' {
                            break;
                        }
                    }
                    Some(d) => return Err(err(&format!("unexpected character {d:?}"))),
                    None => return Err(err("unclosed cycle")),
                }
            }
            for i in 0..cycle.len() {
                images[cycle[i]] = cycle[(i + 1) % cycle.len()] as u16;
            }
        }
        if !any {
            return Err(err("expected at least one cycle (use \"()\" for identity)"));
        }
        Perm::from_images(images)
    }
}

impl std::fmt::Display for Perm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl std::fmt::Debug for Perm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Perm[{self}]")
    }
}

/// Pads `a` (on the first `split` points) and `b` (on the remaining points)
/// into one permutation of degree `split + b.degree()`.
pub fn pad_pair(a: &Perm, b: &Perm) -> Perm {
    let split = a.degree();
    let mut images = Vec::with_capacity(split + b.degree());
    images.extend_from_slice(a.images());
    images.extend(b.images().iter().map(|&x| x + split as u16));
    Perm {
        images: images.into_boxed_slice(),
    }
}

/// Splits a combined permutation back into its two halves; both halves must
/// preserve their blocks (guaranteed for products of `pad_pair` outputs).
pub fn split_pair(p: &Perm, split: usize) -> (Perm, Perm) {
    let first = Perm {
        images: p.images()[..split].to_vec().into_boxed_slice(),
    };
    let second = Perm {
        images: p.images()[split..]
            .iter()
            .map(|&x| x - split as u16)
            .collect(),
    };
    (first, second)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(degree: usize, text: &str) -> Perm {
        Perm::parse_cycles(degree, text, 0).unwrap()
    }

    #[test]
    fn parse_and_display_round_trip() {
        let g = p(5, "(1 2 3)(4 5)");
        assert_eq!(g.to_string(), "(1 2 3)(4 5)");
        assert_eq!(g.apply(0), 1);
        assert_eq!(g.apply(2), 0);
        assert_eq!(g.apply(3), 4);
        let id = p(3, "()");
        assert!(id.is_identity());
        assert_eq!(id.to_string(), "()");
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(Perm::parse_cycles(3, "(1 2 4)", 7).is_err());
        assert!(Perm::parse_cycles(3, "(1 1)", 7).is_err());
        assert!(Perm::parse_cycles(3, "(1 2)(2 3)", 7).is_err());
        assert!(Perm::parse_cycles(3, "(1 2", 7).is_err());
        assert!(Perm::parse_cycles(3, "1 2 3", 7).is_err());
        assert!(Perm::parse_cycles(3, "", 7).is_err());
        assert!(Perm::parse_cycles(3, "(0 1)", 7).is_err());
    }

    #[test]
    fn compose_applies_left_then_right() {
        let a = p(3, "(1 2)");
        let b = p(3, "(2 3)");
        // 1 -(a)-> 2 -(b)-> 3
        assert_eq!(a.compose(&b).apply(0), 2);
        assert_eq!(a.compose(&b).to_string(), "(1 3 2)");
        assert_eq!(b.compose(&a).to_string(), "(1 2 3)");
    }

    #[test]
    fn inverse_and_order() {
        let g = p(6, "(1 2 3)(4 5)");
        assert!(g.compose(&g.inverse()).is_identity());
        assert_eq!(g.order(), 6);
        assert_eq!(g.pow(6), Perm::identity(6));
        assert_eq!(g.pow(2), g.compose(&g));
        assert_eq!(Perm::identity(4).order(), 1);
    }

    #[test]
    fn conjugation_relabels_cycles() {
        let g = p(4, "(1 2)");
        let c = p(4, "(1 3)(2 4)");
        assert_eq!(g.conjugate(&c).to_string(), "(3 4)");
        // p^g == g⁻¹ p g
        let manual = c.inverse().compose(&g).compose(&c);
        assert_eq!(g.conjugate(&c), manual);
    }

    #[test]
    fn commutator_matches_definition() {
        let a = p(3, "(1 2)");
        let b = p(3, "(2 3)");
        let c = Perm::commutator(&a, &b);
        assert_eq!(c, a.inverse().compose(&b.inverse()).compose(&a).compose(&b));
        assert_eq!(c.order(), 3);
    }

    #[test]
    fn pair_padding_round_trips() {
        let a = p(3, "(1 2)");
        let b = p(4, "(1 2 3 4)");
        let c = pad_pair(&a, &b);
        assert_eq!(c.degree(), 7);
        assert_eq!(c.to_string(), "(1 2)(4 5 6 7)");
        let (a2, b2) = split_pair(&c, 3);
        assert_eq!(a, a2);
        assert_eq!(b, b2);
    }
}
