use crate::error::{Error, Result};

/// Largest poset whose relation is checked for transitivity on construction.
pub const VALIDATION_LIMIT: usize = 600;

/// A finite set with a strict transitive relation, stored as a dense matrix.
#[derive(Clone, Debug)]
pub struct FinitePoset<T> {
    elements: Vec<T>,
    less: Vec<Vec<bool>>,
}

impl<T: Clone> FinitePoset<T> {
    /// Builds the relation from `less(a, b)` and checks irreflexivity and
    /// transitivity when the poset has at most [`VALIDATION_LIMIT`] elements.
    pub fn new(elements: Vec<T>, less: impl Fn(&T, &T) -> bool) -> Result<Self> {
        let poset = Self::build(elements, less);
        if poset.len() <= VALIDATION_LIMIT {
            poset.validate()?;
        }
        Ok(poset)
    }

    /// Builds the relation without checking it.
    pub fn new_unchecked(elements: Vec<T>, less: impl Fn(&T, &T) -> bool) -> Self {
        Self::build(elements, less)
    }

    fn build(elements: Vec<T>, less: impl Fn(&T, &T) -> bool) -> Self {
        let less = elements
            .iter()
            .map(|a| elements.iter().map(|b| less(a, b)).collect())
            .collect();
        FinitePoset { elements, less }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.len();
        for i in 0..n {
            if self.less[i][i] {
                return Err(Error::domain(format!("relation is reflexive at index {i}")));
            }
            for j in (0..n).filter(|&j| self.less[i][j]) {
                for k in (0..n).filter(|&k| self.less[j][k]) {
                    if !self.less[i][k] {
                        return Err(Error::domain(format!(
                            "relation is not transitive at indices {i} < {j} < {k}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    pub fn less(&self, i: usize, j: usize) -> bool {
        self.less[i][j]
    }
}

/// Cantor-Bendixson levels by derivative iteration: level `k` consists of
/// the minimal elements once all elements of level `< k` are removed.
///
/// Returned in the order of `poset.elements()`.
pub fn cb_levels<T: Clone>(poset: &FinitePoset<T>) -> Vec<usize> {
    let n = poset.len();
    let mut level = vec![usize::MAX; n];
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut k = 0;
    while !remaining.is_empty() {
        let minimal: Vec<usize> = remaining
            .iter()
            .copied()
            .filter(|&x| !remaining.iter().any(|&y| poset.less(y, x)))
            .collect();
        assert!(
            !minimal.is_empty(),
            "a finite strict order has minimal elements"
        );
        for &x in &minimal {
            level[x] = k;
        }
        remaining.retain(|x| level[*x] == usize::MAX);
        k += 1;
    }
    level
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_and_antichain() {
        let chain = FinitePoset::new(vec![0, 1, 2], |a, b| a < b).unwrap();
        assert_eq!(cb_levels(&chain), vec![0, 1, 2]);
        let anti = FinitePoset::new(vec!['a', 'b', 'c'], |_, _| false).unwrap();
        assert_eq!(cb_levels(&anti), vec![0, 0, 0]);
        let empty = FinitePoset::new(Vec::<u8>::new(), |_, _| false).unwrap();
        assert!(cb_levels(&empty).is_empty());
    }

    #[test]
    fn rejects_bad_relations() {
        assert!(FinitePoset::new(vec![1, 2], |a, b| a <= b).is_err());
        // 0 < 1 < 2 but not 0 < 2
        assert!(FinitePoset::new(vec![0, 1, 2], |a, b| b - a == 1).is_err());
    }

    #[test]
    fn level_is_one_plus_max_below() {
        // divisibility on 1..=60
        let poset =
            FinitePoset::new((1..=60).collect(), |a: &u32, b| a != b && b % a == 0).unwrap();
        let levels = cb_levels(&poset);
        for x in 0..poset.len() {
            let below: Vec<usize> = (0..poset.len())
                .filter(|&y| poset.less(y, x))
                .map(|y| levels[y])
                .collect();
            let expected = below.iter().max().map_or(0, |m| m + 1);
            assert_eq!(levels[x], expected);
        }
        // number of prime factors with multiplicity
        assert_eq!(levels[59], 4);
    }
}
