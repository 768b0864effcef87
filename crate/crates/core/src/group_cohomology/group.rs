use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A finite group given by its multiplication table; element 0 is the identity.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Arc<[usize]>,
    inverses: Arc<[usize]>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order {})", self.order)
    }
}

impl FiniteGroup {
    /// Validates range, identity, inverses and associativity (with a witness triple).
    pub fn new(order: usize, table: Vec<usize>) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidGroup(
                "a group has at least one element".into(),
            ));
        }
        if table.len() != order * order {
            return Err(Error::InvalidGroup(format!(
                "table has {} entries, expected {}",
                table.len(),
                order * order
            )));
        }
        if let Some(pos) = table.iter().position(|&x| x >= order) {
            return Err(Error::InvalidGroup(format!(
                "entry ({}, {}) = {} out of range",
                pos / order,
                pos % order,
                table[pos]
            )));
        }
        for g in 0..order {
            if table[g] != g || table[g * order] != g {
                return Err(Error::InvalidGroup(format!(
                    "element 0 is not an identity for {g}"
                )));
            }
        }
        let mut inverses = vec![0; order];
        for g in 0..order {
            match (0..order).find(|&h| table[g * order + h] == 0) {
                Some(h) if table[h * order + g] == 0 => inverses[g] = h,
                _ => {
                    return Err(Error::InvalidGroup(format!(
                        "element {g} has no two-sided inverse"
                    )))
                }
            }
        }
        for a in 0..order {
            for b in 0..order {
                let ab = table[a * order + b];
                for c in 0..order {
                    if table[ab * order + c] != table[a * order + table[b * order + c]] {
                        return Err(Error::NonAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            order,
            table: table.into(),
            inverses: inverses.into(),
        })
    }

    /// `Z/m` with element `k` standing for `k mod m`.
    pub fn cyclic(m: usize) -> Self {
        let table = (0..m * m).map(|i| (i / m + i % m) % m).collect();
        Self::new(m, table).expect("cyclic table is a group")
    }

    /// `G × H` with `(g, h)` at index `g·|H| + h`.
    pub fn direct_product(&self, other: &FiniteGroup) -> Self {
        let (n, m) = (self.order, other.order);
        let mut table = vec![0; n * m * n * m];
        for a in 0..n * m {
            for b in 0..n * m {
                let g = self.mul(a / m, b / m);
                let h = other.mul(a % m, b % m);
                table[a * n * m + b] = g * m + h;
            }
        }
        Self::new(n * m, table).expect("product of groups")
    }

    /// The Klein four-group `Z/2 × Z/2`.
    pub fn klein() -> Self {
        Self::cyclic(2).direct_product(&Self::cyclic(2))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    /// Product of a word, left to right.
    pub fn product(&self, word: &[usize]) -> usize {
        word.iter().fold(0, |acc, &x| self.mul(acc, x))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}

/// Number of `n`-tuples over a group of order `order`.
pub fn tuple_count(order: usize, n: usize) -> usize {
    order.pow(n as u32)
}

/// Lexicographic index of a tuple, leftmost entry most significant.
pub fn tuple_index(order: usize, t: &[usize]) -> usize {
    t.iter().fold(0, |acc, &x| acc * order + x)
}

pub fn tuple_from_index(order: usize, n: usize, mut idx: usize) -> Vec<usize> {
    let mut t = vec![0; n];
    for i in (0..n).rev() {
        t[i] = idx % order;
        idx /= order;
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_and_klein() {
        let z4 = FiniteGroup::cyclic(4);
        assert_eq!(z4.element_order(1), 4);
        assert_eq!(z4.inv(1), 3);
        let v = FiniteGroup::klein();
        assert!(v.is_abelian());
        assert!((1..4).all(|g| v.element_order(g) == 2));
    }

    #[test]
    fn non_associative_table_rejected() {
        // A loop of order 5 that is not a group.
        let t = vec![
            0, 1, 2, 3, 4, //
            1, 0, 3, 4, 2, //
            2, 4, 0, 1, 3, //
            3, 2, 4, 0, 1, //
            4, 3, 1, 2, 0,
        ];
        assert!(matches!(
            FiniteGroup::new(5, t),
            Err(Error::NonAssociative(_, _, _))
        ));
    }

    #[test]
    fn tuple_indexing_round_trips() {
        for i in 0..27 {
            let t = tuple_from_index(3, 3, i);
            assert_eq!(tuple_index(3, &t), i);
        }
        assert_eq!(tuple_from_index(3, 2, 5), vec![1, 2]);
    }
}
