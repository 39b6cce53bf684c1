use super::{FiniteGroup, Group};
use crate::error::{Error, Result};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

pub const DEFAULT_SUBGROUP_BOUND: usize = 512;

/// A subgroup, stored as the sorted list of its element indices.
#[derive(Clone)]
pub struct Subgroup {
    group: Group,
    elements: Vec<usize>,
    mask: Vec<bool>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{:?}", self.elements)
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.elements.hash(state);
    }
}

impl Subgroup {
    fn from_sorted(group: &Group, elements: Vec<usize>) -> Self {
        let mut mask = vec![false; group.size()];
        for &x in &elements {
            mask[x] = true;
        }
        Subgroup { group: group.clone(), elements, mask }
    }

    pub fn generated(group: &Group, gens: &[usize]) -> Result<Self> {
        if let Some(&x) = gens.iter().find(|&&x| x >= group.size()) {
            return Err(Error::validation(format!("element {x} out of range")));
        }
        Ok(Self::from_sorted(group, group.closure(gens)))
    }

    /// Wraps an explicit element set after checking closure.
    pub fn from_elements(group: &Group, elements: &[usize]) -> Result<Self> {
        let set: BTreeSet<usize> = elements.iter().copied().collect();
        let s = Self::generated(group, &set.iter().copied().collect::<Vec<_>>())?;
        if s.elements.len() != set.len() {
            return Err(Error::validation("element set is not a subgroup"));
        }
        Ok(s)
    }

    pub fn whole(group: &Group) -> Self {
        Self::from_sorted(group, (0..group.size()).collect())
    }

    pub fn trivial(group: &Group) -> Self {
        Self::from_sorted(group, vec![0])
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn parent(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.mask[x]
    }

    pub fn same_parent(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.group, &other.group) {
            Ok(())
        } else {
            Err(Error::ParentMismatch)
        }
    }

    pub fn is_subgroup_of(&self, other: &Self) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.group;
        let gens = self.small_generators();
        gens.iter().all(|&x| gens.iter().all(|&y| g.mul(x, y) == g.mul(y, x)))
    }

    /// A short generating set, chosen greedily by element index.
    pub fn small_generators(&self) -> Vec<usize> {
        let g = &self.group;
        let mut gens = Vec::new();
        let mut span = vec![0usize];
        for &x in &self.elements {
            if span.len() == self.elements.len() {
                break;
            }
            if span.binary_search(&x).is_err() {
                gens.push(x);
                span = g.closure(&gens);
            }
        }
        gens
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.same_parent(other)?;
        let e = self.elements.iter().copied().filter(|&x| other.contains(x)).collect();
        Ok(Self::from_sorted(&self.group, e))
    }

    pub fn join(&self, other: &Self) -> Result<Self> {
        self.same_parent(other)?;
        let mut gens = self.small_generators();
        gens.extend(other.small_generators());
        Self::generated(&self.group, &gens)
    }

    /// g⁻¹ S g.
    pub fn conjugate(&self, g: usize) -> Self {
        let mut e: Vec<usize> = self.elements.iter().map(|&x| self.group.conj(x, g)).collect();
        e.sort_unstable();
        Self::from_sorted(&self.group, e)
    }

    /// Normalizer of `self` inside `within`.
    pub fn normalizer_in(&self, within: &Self) -> Result<Self> {
        self.same_parent(within)?;
        let gens = self.small_generators();
        let e = within
            .elements
            .iter()
            .copied()
            .filter(|&g| gens.iter().all(|&x| self.contains(self.group.conj(x, g))))
            .collect();
        Ok(Self::from_sorted(&self.group, e))
    }

    pub fn normalizer(&self) -> Self {
        self.normalizer_in(&Self::whole(&self.group)).expect("same parent")
    }

    /// Centralizer in the whole group of an arbitrary element set.
    pub fn centralizer_of(group: &Group, set: &[usize]) -> Self {
        let e = (0..group.size())
            .filter(|&g| set.iter().all(|&x| group.mul(x, g) == group.mul(g, x)))
            .collect();
        Self::from_sorted(group, e)
    }

    pub fn centralizer(&self) -> Self {
        Self::centralizer_of(&self.group, &self.small_generators())
    }

    /// Whether `self` is normal in `within` (which must contain it).
    pub fn is_normal_in(&self, within: &Self) -> Result<bool> {
        self.same_parent(within)?;
        if !self.is_subgroup_of(within) {
            return Ok(false);
        }
        let gens = self.small_generators();
        Ok(within
            .small_generators()
            .iter()
            .all(|&g| gens.iter().all(|&x| self.contains(self.group.conj(x, g)))))
    }

    pub fn is_normal(&self) -> bool {
        self.is_normal_in(&Self::whole(&self.group)).expect("same parent")
    }

    /// Right cosets `self·x` inside `within`, each given by its least element;
    /// cosets are listed in increasing order of that representative.
    pub fn right_transversal(&self, within: &Self) -> Result<Vec<usize>> {
        self.coset_reps(within, true)
    }

    /// Left cosets `x·self` inside `within`, with the same conventions.
    pub fn left_transversal(&self, within: &Self) -> Result<Vec<usize>> {
        self.coset_reps(within, false)
    }

    fn coset_reps(&self, within: &Self, right: bool) -> Result<Vec<usize>> {
        self.same_parent(within)?;
        if !self.is_subgroup_of(within) {
            return Err(Error::validation("transversal of a subgroup not contained in the ambient subgroup"));
        }
        let g = &self.group;
        let mut covered = vec![false; g.size()];
        let mut reps = Vec::new();
        for &x in &within.elements {
            if covered[x] {
                continue;
            }
            reps.push(x);
            for &h in &self.elements {
                covered[if right { g.mul(h, x) } else { g.mul(x, h) }] = true;
            }
        }
        Ok(reps)
    }

    pub fn index_in(&self, within: &Self) -> usize {
        within.order() / self.order()
    }

    /// Derived subgroup [S, S].
    pub fn derived(&self) -> Self {
        let g = &self.group;
        let mut comm = BTreeSet::new();
        for &x in &self.elements {
            for &y in &self.elements {
                comm.insert(g.mul(g.mul(g.inv(x), g.inv(y)), g.mul(x, y)));
            }
        }
        Self::from_sorted(g, g.closure(&comm.into_iter().collect::<Vec<_>>()))
    }

    /// Least element y of `self` with ⟨y, K⟩ = self, witnessing that self/K is cyclic.
    pub fn quotient_cyclic_generator(&self, k: &Self) -> Result<Option<usize>> {
        self.same_parent(k)?;
        if !k.is_subgroup_of(self) || !k.is_normal_in(self)? {
            return Err(Error::validation("K must be a normal subgroup of H"));
        }
        let kg = k.small_generators();
        for &y in &self.elements {
            let mut gens = kg.clone();
            gens.push(y);
            if self.group.closure(&gens).len() == self.order() {
                return Ok(Some(y));
            }
        }
        Ok(None)
    }

    /// Labels of the elements, in index order.
    pub fn labels(&self) -> Vec<String> {
        self.elements.iter().map(|&x| self.group.label(x).to_string()).collect()
    }
}

/// Every subgroup of `group`, ordered by (order, elements).
///
/// Starts from the cyclic subgroups and joins pairs until nothing new appears.
pub fn all_subgroups(group: &Group, bound: usize) -> Result<Vec<Subgroup>> {
    if group.size() > bound {
        return Err(Error::Capacity(format!(
            "group of order {} exceeds the subgroup bound {bound}",
            group.size()
        )));
    }
    let mut found: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for x in 0..group.size() {
        let e = group.closure(&[x]);
        found.entry(e).or_insert_with(|| if x == 0 { vec![] } else { vec![x] });
    }
    let cyclic: Vec<(Vec<usize>, Vec<usize>)> = found.iter().map(|(e, g)| (e.clone(), g.clone())).collect();
    let mut frontier: Vec<(Vec<usize>, Vec<usize>)> = cyclic.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (e, gens) in &frontier {
            for (ce, cg) in &cyclic {
                if cg.is_empty() || e.binary_search(&cg[0]).is_ok() || ce.len() == 1 {
                    continue;
                }
                let mut g2 = gens.clone();
                g2.extend(cg);
                let j = group.closure(&g2);
                if !found.contains_key(&j) {
                    found.insert(j.clone(), g2.clone());
                    next.push((j, g2));
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<Subgroup> = found.into_keys().map(|e| Subgroup::from_sorted(group, e)).collect();
    out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements.cmp(&b.elements)));
    Ok(out)
}
