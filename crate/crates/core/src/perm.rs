//! Permutations of `{0, .., degree - 1}` acting on the right.
//!
//! Points are 0-based internally; the text formats in [`crate::catalog`] are
//! 1-based. The product `a * b` means "apply `a`, then `b`", so conjugation
//! `g^x` is `x⁻¹ g x` and commutators are `[h, k] = h⁻¹ k⁻¹ h k`.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// A bijection of `{0, .., degree - 1}`, stored as its image sequence.
///
/// The derived ordering is lexicographic on images, which is the canonical
/// element order used everywhere in the crate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::NotABijection(
                    images.iter().map(|&i| i + 1).collect(),
                ));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from 0-based disjoint-or-not cycles, composed left to right.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u32>]) -> Result<Self> {
        let mut result = Permutation::identity(degree);
        for cycle in cycles {
            let mut images: Vec<u32> = (0..degree as u32).collect();
            for (i, &x) in cycle.iter().enumerate() {
                if x as usize >= degree {
                    return Err(Error::PointOutOfRange {
                        point: x as usize + 1,
                        degree,
                    });
                }
                if cycle[..i].contains(&x) {
                    return Err(Error::RepeatedPoint(x as usize + 1));
                }
                images[x as usize] = cycle[(i + 1) % cycle.len()];
            }
            result = &result * &Permutation { images };
        }
        Ok(result)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Permutation { images }
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// `x⁻¹ self x`.
    pub fn conjugate_by(&self, x: &Permutation) -> Self {
        &(&x.inverse() * self) * x
    }

    /// `h⁻¹ k⁻¹ h k`.
    pub fn commutator(h: &Permutation, k: &Permutation) -> Self {
        &(&(&h.inverse() * &k.inverse()) * h) * k
    }

    /// Disjoint cycles of length at least two, each starting at its least
    /// point, sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start as u32];
            seen[start] = true;
            let mut x = self.images[start];
            while x as usize != start {
                seen[x as usize] = true;
                cycle.push(x);
                x = self.images[x as usize];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Least `n ≥ 1` with `self^n = 1`: the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }

    /// The component of `self` whose order is coprime to `p`.
    pub fn p_regular_part(&self, p: u64) -> Self {
        let order = self.order();
        let p_part = crate::arith::integer_p_part(order, p);
        let m = order / p_part;
        if p_part == 1 {
            return self.clone();
        }
        // exponent e with e ≡ 0 (mod p_part) and e ≡ 1 (mod m)
        let e = (0..m)
            .map(|t| t * p_part)
            .find(|e| e % m == 1 % m)
            .expect("CRT solution exists for coprime moduli");
        self.pow(e)
    }

    /// Cycle notation with 1-based points; `()` for the identity.
    pub fn cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let mut s = String::new();
        for c in cycles {
            s.push('(');
            let pts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            s.push_str(&pts.join(" "));
            s.push(')');
        }
        s
    }
}

impl std::ops::Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), rhs.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&x| rhs.images[x as usize])
                .collect(),
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cycle_string())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cycle_string())
    }
}
