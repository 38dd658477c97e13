//! Conjugacy classes by orbit enumeration.

use super::group::FiniteMatrixGroup;

/// A partition of the group into classes. Class 0 is the identity; the rest
/// follow the order in which their first element appears in the group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClasses {
    reps: Vec<usize>,
    sizes: Vec<u64>,
    class_of: Vec<u32>,
    inverse_class: Vec<usize>,
}

impl ConjClasses {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Element indices of the representatives.
    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    pub fn class_of(&self, element: usize) -> usize {
        self.class_of[element] as usize
    }

    /// The class of inverses of class `k`.
    pub fn inverse_class(&self, k: usize) -> usize {
        self.inverse_class[k]
    }
}

pub fn conjugacy_classes(g: &FiniteMatrixGroup) -> ConjClasses {
    let n = g.order();
    let mut class_of = vec![u32::MAX; n];
    let mut reps = Vec::new();
    let mut sizes = Vec::new();
    let starts = std::iter::once(g.identity()).chain((0..n).filter(|&i| i != g.identity()));
    for x in starts {
        if class_of[x] != u32::MAX {
            continue;
        }
        let k = reps.len() as u32;
        let mut size = 0;
        for h in 0..n {
            let y = g.conj(h, x);
            if class_of[y] == u32::MAX {
                class_of[y] = k;
                size += 1;
            }
        }
        reps.push(x);
        sizes.push(size);
    }
    let inverse_class = reps.iter().map(|&r| class_of[g.inv(r)] as usize).collect();
    ConjClasses { reps, sizes, class_of, inverse_class }
}
