//! Maps between finite groups.

use std::sync::Arc;

use crate::group::{Element, FiniteGroup, GroupError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    /// Checked to satisfy `f(ab) = f(a) f(b)` at construction.
    Homomorphism,
    /// Any function on the underlying sets.
    SetMap,
}

/// A function from the elements of one group to those of another.
#[derive(Debug, Clone)]
pub struct GroupMap {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    images: Vec<Element>,
    kind: MapKind,
}

impl GroupMap {
    /// A plain set map. Only length and range are checked.
    pub fn set_map(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        images: Vec<Element>,
    ) -> Result<Self, GroupError> {
        if images.len() != source.order() {
            return Err(GroupError::InvalidMap(format!(
                "{} images for a source of order {}",
                images.len(),
                source.order()
            )));
        }
        if let Some((i, &y)) = images
            .iter()
            .enumerate()
            .find(|(_, &y)| y >= target.order())
        {
            return Err(GroupError::InvalidMap(format!(
                "element {i} maps to {y}, outside target of order {}",
                target.order()
            )));
        }
        Ok(GroupMap {
            source,
            target,
            images,
            kind: MapKind::SetMap,
        })
    }

    /// A map that must be a homomorphism.
    pub fn homomorphism(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        images: Vec<Element>,
    ) -> Result<Self, GroupError> {
        let mut map = Self::set_map(source, target, images)?;
        if let Some((a, b)) = map.homomorphism_violation() {
            return Err(GroupError::InvalidMap(format!(
                "f({a}*{b}) != f({a})*f({b})"
            )));
        }
        map.kind = MapKind::Homomorphism;
        Ok(map)
    }

    pub fn identity(group: Arc<FiniteGroup>) -> Self {
        let images = group.elements().collect();
        GroupMap {
            source: group.clone(),
            target: group,
            images,
            kind: MapKind::Homomorphism,
        }
    }

    /// Every element goes to `value`. A homomorphism exactly when `value`
    /// is the target identity.
    pub fn constant(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        value: Element,
    ) -> Result<Self, GroupError> {
        target.check_element(value)?;
        let images = vec![value; source.order()];
        let mut map = Self::set_map(source, target, images)?;
        if map.validate_homomorphism() {
            map.kind = MapKind::Homomorphism;
        }
        Ok(map)
    }

    /// `Z_m → Z_n`, `i ↦ i mod n`, for `n | m`.
    pub fn reduction_mod(m: usize, n: usize) -> Result<Self, GroupError> {
        if n == 0 || !m.is_multiple_of(n) {
            return Err(GroupError::InvalidMap(format!(
                "Z{m} -> Z{n}: {n} must divide {m}"
            )));
        }
        let source = FiniteGroup::cyclic(m)?.into_shared();
        let target = FiniteGroup::cyclic(n)?.into_shared();
        Self::homomorphism(source, target, (0..m).map(|i| i % n).collect())
    }

    /// Projection `G × H → G` onto the first factor.
    pub fn project_first(
        product: Arc<FiniteGroup>,
        first: Arc<FiniteGroup>,
    ) -> Result<Self, GroupError> {
        let m = split_order(&product, &first)?;
        let images = product.elements().map(|x| x / m).collect();
        Self::homomorphism(product, first, images)
    }

    /// Projection `G × H → H` onto the second factor.
    pub fn project_second(
        product: Arc<FiniteGroup>,
        second: Arc<FiniteGroup>,
    ) -> Result<Self, GroupError> {
        split_order(&product, &second)?;
        let m = second.order();
        let images = product.elements().map(|x| x % m).collect();
        Self::homomorphism(product, second, images)
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: Element) -> Element {
        self.images[x]
    }

    /// The elements of the source mapped to `y`.
    pub fn fiber(&self, y: Element) -> impl Iterator<Item = Element> + '_ {
        self.images
            .iter()
            .enumerate()
            .filter_map(move |(x, &fx)| (fx == y).then_some(x))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.order()];
        for &y in &self.images {
            hit[y] = true;
        }
        hit.into_iter().all(|h| h)
    }

    /// Re-checks the homomorphism law over all pairs, whatever the kind.
    pub fn validate_homomorphism(&self) -> bool {
        self.homomorphism_violation().is_none()
    }

    fn homomorphism_violation(&self) -> Option<(Element, Element)> {
        let (src, tgt) = (&self.source, &self.target);
        src.elements()
            .flat_map(|a| src.elements().map(move |b| (a, b)))
            .find(|&(a, b)| self.images[src.op(a, b)] != tgt.op(self.images[a], self.images[b]))
    }
}

/// For a product of order `|F| * m`, returns `m`.
fn split_order(product: &FiniteGroup, factor: &FiniteGroup) -> Result<usize, GroupError> {
    if factor.order() == 0 || !product.order().is_multiple_of(factor.order()) {
        return Err(GroupError::InvalidMap(format!(
            "{} is not a factor of {}",
            factor.name(),
            product.name()
        )));
    }
    Ok(product.order() / factor.order())
}
