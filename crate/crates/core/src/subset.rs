//! Crisp subsets of a finite group and the subgroup predicates on them.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::group::{Element, FiniteGroup, GroupError};

/// Default cap on the group order accepted by [`enumerate_subgroups`].
pub const DEFAULT_MAX_ORDER: usize = 24;

/// A subset of `0..universe` kept as a sorted, duplicate-free member list,
/// so structural equality is set equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupSubset {
    universe: usize,
    members: Vec<Element>,
}

impl GroupSubset {
    pub fn new<I>(group: &FiniteGroup, members: I) -> Result<Self, GroupError>
    where
        I: IntoIterator<Item = Element>,
    {
        Self::in_universe(group.order(), members)
    }

    pub fn in_universe<I>(universe: usize, members: I) -> Result<Self, GroupError>
    where
        I: IntoIterator<Item = Element>,
    {
        let mut members: Vec<Element> = members.into_iter().collect();
        if let Some(&member) = members.iter().find(|&&m| m >= universe) {
            return Err(GroupError::InvalidSubset {
                member,
                order: universe,
            });
        }
        members.sort_unstable();
        members.dedup();
        Ok(GroupSubset { universe, members })
    }

    pub(crate) fn from_mask(mask: &[bool]) -> Self {
        GroupSubset {
            universe: mask.len(),
            members: mask
                .iter()
                .enumerate()
                .filter_map(|(i, &m)| m.then_some(i))
                .collect(),
        }
    }

    pub fn empty(universe: usize) -> Self {
        GroupSubset {
            universe,
            members: Vec::new(),
        }
    }

    pub fn full(group: &FiniteGroup) -> Self {
        GroupSubset {
            universe: group.order(),
            members: group.elements().collect(),
        }
    }

    pub fn identity_only(group: &FiniteGroup) -> Self {
        GroupSubset {
            universe: group.order(),
            members: vec![group.identity()],
        }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn members(&self) -> &[Element] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, element: Element) -> bool {
        self.members.binary_search(&element).is_ok()
    }

    pub fn is_subset_of(&self, other: &GroupSubset) -> bool {
        self.universe == other.universe && self.members.iter().all(|&m| other.contains(m))
    }

    pub fn mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.universe];
        for &m in &self.members {
            mask[m] = true;
        }
        mask
    }

    fn check_owner(&self, group: &FiniteGroup) -> Result<(), GroupError> {
        if self.universe != group.order() {
            return Err(GroupError::SubsetOwner {
                subset: self.universe,
                group: group.order(),
            });
        }
        Ok(())
    }
}

impl fmt::Debug for GroupSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.members).finish()
    }
}

impl fmt::Display for GroupSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for m in &self.members {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{m}")?;
            first = false;
        }
        Ok(())
    }
}

/// Non-empty, closed under the operation, closed under inverses.
pub fn is_subgroup(group: &FiniteGroup, subset: &GroupSubset) -> Result<bool, GroupError> {
    subset.check_owner(group)?;
    Ok(subgroup_unchecked(group, subset))
}

fn subgroup_unchecked(group: &FiniteGroup, subset: &GroupSubset) -> bool {
    if subset.is_empty() {
        return false;
    }
    let mask = subset.mask();
    subset
        .members
        .iter()
        .all(|&a| mask[group.inverse(a)] && subset.members.iter().all(|&b| mask[group.op(a, b)]))
}

/// A subgroup with `g S g⁻¹ = S` for every `g`.
pub fn is_normal_subgroup(group: &FiniteGroup, subset: &GroupSubset) -> Result<bool, GroupError> {
    subset.check_owner(group)?;
    if !subgroup_unchecked(group, subset) {
        return Ok(false);
    }
    let mask = subset.mask();
    // Conjugation is a bijection, so inclusion gives equality.
    Ok(group
        .elements()
        .all(|g| subset.members.iter().all(|&s| mask[group.conjugate(s, g)])))
}

/// `{a s : s ∈ S}`
pub fn translate_left(
    group: &FiniteGroup,
    a: Element,
    subset: &GroupSubset,
) -> Result<GroupSubset, GroupError> {
    subset.check_owner(group)?;
    let a = group.check_element(a)?;
    GroupSubset::new(group, subset.members.iter().map(|&s| group.op(a, s)))
}

/// `{s a : s ∈ S}`
pub fn translate_right(
    group: &FiniteGroup,
    subset: &GroupSubset,
    a: Element,
) -> Result<GroupSubset, GroupError> {
    subset.check_owner(group)?;
    let a = group.check_element(a)?;
    GroupSubset::new(group, subset.members.iter().map(|&s| group.op(s, a)))
}

/// Cartesian product of subsets of `G` and `H`, encoded as in
/// [`FiniteGroup::product`].
pub fn product_subset(left: &GroupSubset, right: &GroupSubset) -> GroupSubset {
    let m = right.universe;
    GroupSubset {
        universe: left.universe * m,
        members: left
            .members
            .iter()
            .flat_map(|&g| right.members.iter().map(move |&h| g * m + h))
            .collect(),
    }
}

/// Subgroup generated by `generators`.
pub fn generated_subgroup(group: &FiniteGroup, generators: &[Element]) -> GroupSubset {
    let mut mask = vec![false; group.order()];
    let mut queue = VecDeque::from([group.identity()]);
    mask[group.identity()] = true;
    while let Some(x) = queue.pop_front() {
        for &g in generators {
            let y = group.op(x, g);
            if !mask[y] {
                mask[y] = true;
                queue.push_back(y);
            }
        }
    }
    GroupSubset::from_mask(&mask)
}

/// Every subgroup of `group`, sorted by cardinality and then by member list.
///
/// Subgroups are grown from the trivial one by adjoining one element at a
/// time, which reaches every subgroup since each is generated by its own
/// elements.
pub fn enumerate_subgroups(
    group: &FiniteGroup,
    max_order: usize,
) -> Result<Vec<GroupSubset>, GroupError> {
    if group.order() > max_order {
        return Err(GroupError::ResourceLimit {
            order: group.order(),
            cap: max_order,
        });
    }
    let trivial = GroupSubset::identity_only(group);
    let mut found: BTreeMap<GroupSubset, Vec<Element>> = BTreeMap::new();
    found.insert(trivial.clone(), Vec::new());
    let mut queue = VecDeque::from([(trivial, Vec::new())]);
    while let Some((sub, gens)) = queue.pop_front() {
        for g in group.elements() {
            if sub.contains(g) {
                continue;
            }
            let mut next_gens = gens.clone();
            next_gens.push(g);
            let next = generated_subgroup(group, &next_gens);
            if !found.contains_key(&next) {
                found.insert(next.clone(), next_gens.clone());
                queue.push_back((next, next_gens));
            }
        }
    }
    let mut subgroups: Vec<GroupSubset> = found.into_keys().collect();
    subgroups.sort_by(|a, b| {
        a.len()
            .cmp(&b.len())
            .then_with(|| a.members.cmp(&b.members))
    });
    Ok(subgroups)
}
