use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bijection of `0..n`, stored as its image list.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &x in &image {
            if x >= n || seen[x] {
                return Err(Error::NotAPermutation(format!("{image:?}")));
            }
            seen[x] = true;
        }
        Ok(Permutation(image))
    }

    pub(crate) fn from_vec_unchecked(image: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(image.clone()).is_ok());
        Permutation(image)
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn image(&self) -> &[usize] {
        &self.0
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.0
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A permutation group given by generators. The element list is expanded
/// by closure on first use and kept sorted.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: OnceLock<Vec<Permutation>>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::NotAPermutation(format!(
                "generator {g:?} has degree {} instead of {degree}",
                g.degree()
            )));
        }
        Ok(PermGroup {
            degree,
            generators,
            elements: OnceLock::new(),
        })
    }

    /// Wraps a set already known to be a group.
    pub(crate) fn from_elements(degree: usize, mut elements: Vec<Permutation>) -> Self {
        elements.sort();
        elements.dedup();
        let cell = OnceLock::new();
        let _ = cell.set(elements.clone());
        PermGroup {
            degree,
            generators: elements,
            elements: cell,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> &[Permutation] {
        self.elements
            .get_or_init(|| close(self.degree, &self.generators))
    }

    pub fn size(&self) -> usize {
        self.elements().len()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements().binary_search(p).is_ok()
    }
}

/// Closure of a generator set under composition.
fn close(degree: usize, generators: &[Permutation]) -> Vec<Permutation> {
    let mut seen = std::collections::HashSet::new();
    let identity = Permutation::identity(degree);
    seen.insert(identity.clone());
    let mut elements = vec![identity];
    let mut i = 0;
    while i < elements.len() {
        for g in generators {
            let p = elements[i].compose(g);
            if seen.insert(p.clone()) {
                elements.push(p);
            }
        }
        i += 1;
    }
    elements.sort();
    elements
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_validation_and_algebra() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![0, 2]).is_err());
        let p = Permutation::new(vec![1, 2, 0]).unwrap();
        let q = Permutation::new(vec![1, 0, 2]).unwrap();
        assert_eq!(p.compose(&q).image(), &[2, 1, 0]);
        assert!(p.compose(&p.inverse()).is_identity());
    }

    #[test]
    fn closure_of_symmetric_group() {
        let p = Permutation::new(vec![1, 2, 3, 0]).unwrap();
        let q = Permutation::new(vec![1, 0, 2, 3]).unwrap();
        let s4 = PermGroup::new(4, vec![p.clone(), q]).unwrap();
        assert_eq!(s4.size(), 24);
        let c4 = PermGroup::new(4, vec![p]).unwrap();
        assert_eq!(c4.size(), 4);
        assert!(c4.contains(&Permutation::identity(4)));
        assert!(PermGroup::new(3, vec![Permutation::identity(4)]).is_err());
    }
}
