use super::FiniteGroup;
use crate::exactnum::numtheory::gcd;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassKind {
    Ordinary,
    Real,
    Rational,
}

/// Partition of the elements into ordinary, real or rational classes.
///
/// Real classes merge x with x⁻¹; rational classes merge x with every x^r,
/// r coprime to the order of x. Classes are sorted by their least element.
pub fn conjugacy_classes(g: &FiniteGroup, kind: ClassKind) -> Vec<Vec<usize>> {
    let n = g.size();
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut members = vec![x];
        class_of[x] = id;
        let mut i = 0;
        while i < members.len() {
            let y = members[i];
            let mut images: Vec<usize> = (0..n).map(|t| g.conj(y, t)).collect();
            match kind {
                ClassKind::Ordinary => {}
                ClassKind::Real => images.push(g.inv(y)),
                ClassKind::Rational => {
                    let o = g.element_order(y);
                    images.extend((1..o).filter(|&r| gcd(r as u64, o as u64) == 1).map(|r| g.pow(y, r as i64)));
                }
            }
            for z in images {
                if class_of[z] == usize::MAX {
                    class_of[z] = id;
                    members.push(z);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        classes.push(members);
    }
    classes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::MetacyclicPresentation;

    #[test]
    fn class_counts() {
        let c3 = FiniteGroup::cyclic(3).unwrap();
        assert_eq!(conjugacy_classes(&c3, ClassKind::Rational), vec![vec![0], vec![1, 2]]);
        let g = FiniteGroup::metacyclic(MetacyclicPresentation::new(7, 3, 0, 2).unwrap()).unwrap();
        let ord = conjugacy_classes(&g, ClassKind::Ordinary);
        let mut sizes: Vec<usize> = ord.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3, 3, 7, 7]);
        assert_eq!(conjugacy_classes(&g, ClassKind::Real).len(), 3);
        assert_eq!(conjugacy_classes(&g, ClassKind::Rational).len(), 3);
    }
}
