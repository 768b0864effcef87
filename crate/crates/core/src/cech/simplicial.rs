use crate::error::{Error, Result};
use crate::group_cohomology::{tuple_count, tuple_from_index, tuple_index, FiniteGroup};

/// Finite sets `X_0, …, X_{k_max}` with face maps `d_k^i : X_k → X_{k−1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiSimplicialSet {
    sizes: Vec<usize>,
    /// `faces[k][i][x]` for `1 ≤ k ≤ k_max`; `faces[0]` is empty.
    faces: Vec<Vec<Vec<usize>>>,
}

impl SemiSimplicialSet {
    /// Checks ranges and `d^i d^j = d^{j−1} d^i` for `i < j`.
    pub fn new(sizes: Vec<usize>, faces: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        if sizes.is_empty() || faces.len() != sizes.len() {
            return Err(Error::InvalidInput("need one face list per level".into()));
        }
        for k in 1..sizes.len() {
            if faces[k].len() != k + 1 {
                return Err(Error::InvalidInput(format!(
                    "level {k} needs {} face maps",
                    k + 1
                )));
            }
            for (i, f) in faces[k].iter().enumerate() {
                if f.len() != sizes[k] || f.iter().any(|&y| y >= sizes[k - 1]) {
                    return Err(Error::InvalidInput(format!(
                        "face d_{k}^{i} is not a map X_{k} → X_{}",
                        k - 1
                    )));
                }
            }
        }
        let s = SemiSimplicialSet { sizes, faces };
        s.check_identities()?;
        Ok(s)
    }

    fn check_identities(&self) -> Result<()> {
        for k in 2..self.sizes.len() {
            for x in 0..self.sizes[k] {
                for j in 1..=k {
                    for i in 0..j {
                        let a = self.face(k - 1, i, self.face(k, j, x));
                        let b = self.face(k - 1, j - 1, self.face(k, i, x));
                        if a != b {
                            return Err(Error::InvalidInput(format!(
                                "face identity fails at level {k}, element {x}, i = {i}, j = {j}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn k_max(&self) -> usize {
        self.sizes.len() - 1
    }

    pub fn size(&self, k: usize) -> usize {
        self.sizes[k]
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// `d_k^i(x)`.
    pub fn face(&self, k: usize, i: usize, x: usize) -> usize {
        self.faces[k][i][x]
    }
}

/// `BG_k = G^k` (tuples indexed lexicographically), `BG_0` a point, with
/// `d_0` dropping the first entry, `d_k` the last, and `d_i` multiplying
/// entries `i` and `i + 1`.
pub fn nerve(g: &FiniteGroup, k_max: usize) -> SemiSimplicialSet {
    let n = g.order();
    let mut sizes = vec![1];
    let mut faces = vec![Vec::new()];
    for k in 1..=k_max {
        sizes.push(tuple_count(n, k));
        let mut level = vec![Vec::with_capacity(tuple_count(n, k)); k + 1];
        for x in 0..tuple_count(n, k) {
            let t = tuple_from_index(n, k, x);
            for (i, out) in level.iter_mut().enumerate() {
                out.push(tuple_index(n, &nerve_face(g, &t, i)));
            }
        }
        faces.push(level);
    }
    SemiSimplicialSet::new(sizes, faces).expect("the nerve satisfies the face identities")
}

/// `d_i` on a tuple of group elements.
pub fn nerve_face(g: &FiniteGroup, t: &[usize], i: usize) -> Vec<usize> {
    let k = t.len();
    if i == 0 {
        t[1..].to_vec()
    } else if i == k {
        t[..k - 1].to_vec()
    } else {
        let mut out = t[..i - 1].to_vec();
        out.push(g.mul(t[i - 1], t[i]));
        out.extend_from_slice(&t[i + 1..]);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nerve_sizes() {
        let x = nerve(&FiniteGroup::cyclic(2), 3);
        assert_eq!(x.sizes(), &[1, 2, 4, 8]);
    }

    #[test]
    fn middle_face_multiplies() {
        let g = FiniteGroup::cyclic(3);
        let x = nerve(&g, 2);
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(x.face(2, 1, tuple_index(3, &[a, b])), (a + b) % 3);
            }
        }
    }

    #[test]
    fn broken_identity_is_reported() {
        // d_0 on X_3 exchanged between two elements
        let mut faces = nerve(&FiniteGroup::cyclic(2), 3).faces;
        faces[3][0].swap(0, 1);
        assert!(SemiSimplicialSet::new(vec![1, 2, 4, 8], faces).is_err());
    }
}
