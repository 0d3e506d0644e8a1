//! Partitions of a finite carrier.

use crate::error::{Result, SklError};

/// A partition of `0..n` into classes.
///
/// Classes are kept in canonical order: each class is sorted and classes are
/// ordered by their least element, so two equal partitions compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EquivPartition {
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl EquivPartition {
    /// Builds a partition from a class label per element. Labels are arbitrary.
    pub fn from_labels<T: Eq + std::hash::Hash + Clone>(labels: &[T]) -> Self {
        let mut seen = std::collections::HashMap::new();
        let mut class_of = Vec::with_capacity(labels.len());
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for (x, label) in labels.iter().enumerate() {
            let id = *seen.entry(label.clone()).or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            classes[id].push(x);
            class_of.push(id);
        }
        // classes are created in order of first member, so already canonical
        EquivPartition { class_of, classes }
    }

    /// Builds a partition from explicit classes, checking that they cover
    /// `0..n` exactly once.
    pub fn from_classes(n: usize, classes: Vec<Vec<usize>>) -> Result<Self> {
        let mut labels = vec![usize::MAX; n];
        for (id, class) in classes.iter().enumerate() {
            if class.is_empty() {
                return Err(SklError::Partition("empty class".into()));
            }
            for &x in class {
                if x >= n {
                    return Err(SklError::Partition(format!("element {x} out of range")));
                }
                if labels[x] != usize::MAX {
                    return Err(SklError::Partition(format!("element {x} in two classes")));
                }
                labels[x] = id;
            }
        }
        if let Some(x) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(SklError::Partition(format!("element {x} not covered")));
        }
        Ok(Self::from_labels(&labels))
    }

    /// Groups elements by a relation assumed to be an equivalence. Each element
    /// joins the class of the first earlier element it relates to. Use
    /// [`EquivPartition::agrees_with`] to confirm the assumption.
    pub fn from_relation(n: usize, rel: impl Fn(usize, usize) -> bool) -> Self {
        let mut reps: Vec<usize> = Vec::new();
        let mut labels = Vec::with_capacity(n);
        for x in 0..n {
            match reps.iter().position(|&r| rel(r, x)) {
                Some(id) => labels.push(id),
                None => {
                    reps.push(x);
                    labels.push(reps.len() - 1);
                }
            }
        }
        Self::from_labels(&labels)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_labels(&(0..n).collect::<Vec<_>>())
    }

    pub fn universal(n: usize) -> Self {
        Self::from_labels(&vec![0u8; n])
    }

    /// First pair `(x, y)` where membership in a common class disagrees with `rel`.
    pub fn agrees_with(&self, rel: impl Fn(usize, usize) -> bool) -> Option<(usize, usize)> {
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                if self.same(x, y) != rel(x, y) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// Size of the underlying carrier.
    pub fn len(&self) -> usize {
        self.class_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class_of.is_empty()
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    #[inline]
    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    #[inline]
    pub fn same(&self, x: usize, y: usize) -> bool {
        self.class_of[x] == self.class_of[y]
    }

    pub fn class(&self, id: usize) -> &[usize] {
        &self.classes[id]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// Least element of the class with the given id.
    pub fn representative(&self, id: usize) -> usize {
        self.classes[id][0]
    }

    pub fn is_identity(&self) -> bool {
        self.classes.len() == self.class_of.len()
    }

    /// True when every class of `self` lies inside a class of `coarser`.
    pub fn refines(&self, coarser: &EquivPartition) -> bool {
        self.classes
            .iter()
            .all(|c| c.iter().all(|&x| coarser.same(c[0], x)))
    }

    /// Intersection of two partitions of the same carrier.
    pub fn meet(&self, other: &EquivPartition) -> EquivPartition {
        let labels: Vec<(usize, usize)> = (0..self.len())
            .map(|x| (self.class_of(x), other.class_of(x)))
            .collect();
        Self::from_labels(&labels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order() {
        let p = EquivPartition::from_labels(&['b', 'a', 'b', 'c', 'a']);
        assert_eq!(p.classes(), &[vec![0, 2], vec![1, 4], vec![3]]);
        let q = EquivPartition::from_classes(5, vec![vec![3], vec![4, 1], vec![2, 0]]).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn from_classes_rejects_bad_covers() {
        assert!(EquivPartition::from_classes(3, vec![vec![0, 1]]).is_err());
        assert!(EquivPartition::from_classes(3, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(EquivPartition::from_classes(2, vec![vec![0, 1, 2]]).is_err());
    }

    #[test]
    fn relation_grouping() {
        let p = EquivPartition::from_relation(6, |x, y| x % 3 == y % 3);
        assert_eq!(p.num_classes(), 3);
        assert!(p.agrees_with(|x, y| x % 3 == y % 3).is_none());
        assert!(p.agrees_with(|x, y| x == y).is_some());
        assert!(EquivPartition::identity(6).refines(&p));
        assert!(p.refines(&EquivPartition::universal(6)));
    }
}
