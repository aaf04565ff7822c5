//! Picture fuzzy sets over a finite carrier.
//!
//! Every element carries a positive degree σ, a neutral degree τ and a
//! negative degree η with σ + τ + η ≤ 1. All comparisons are exact.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::degree::{Degree, DegreeError, Rational};
use crate::group::{Element, FiniteGroup, GroupError};
use crate::map::GroupMap;
use crate::subset::GroupSubset;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PfsError {
    #[error("element {element}: degrees sum to {sum}, which exceeds 1")]
    SumViolation { element: Element, sum: String },
    #[error("threshold ({r}, {s}, {t}) sums to {sum}, which exceeds 1")]
    ThresholdSum {
        r: Degree,
        s: Degree,
        t: Degree,
        sum: String,
    },
    #[error("{got} triples given for a carrier of order {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("carrier mismatch: {left} vs {right}")]
    CarrierMismatch { left: String, right: String },
    #[error("image is not a picture fuzzy set at target point {point}: degrees sum to {sum}")]
    ImageNotPicture { point: Element, sum: String },
    #[error(transparent)]
    Degree(#[from] DegreeError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

fn checked_sum(degrees: [Degree; 3]) -> Result<Rational, PfsError> {
    Ok(Degree::sum(degrees)?)
}

/// Positive, neutral and negative membership of one element.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[Degree; 3]", into = "[Degree; 3]")]
pub struct PictureTriple {
    positive: Degree,
    neutral: Degree,
    negative: Degree,
}

impl PictureTriple {
    /// `(1, 0, 0)`
    pub const WHOLE: PictureTriple = PictureTriple {
        positive: Degree::ONE,
        neutral: Degree::ZERO,
        negative: Degree::ZERO,
    };

    /// `(0, 0, 1)`, the value of an image at a point with empty fiber.
    pub const ABSENT: PictureTriple = PictureTriple {
        positive: Degree::ZERO,
        neutral: Degree::ZERO,
        negative: Degree::ONE,
    };

    pub fn new(positive: Degree, neutral: Degree, negative: Degree) -> Result<Self, PfsError> {
        let sum = checked_sum([positive, neutral, negative])?;
        if sum.exceeds_one() {
            return Err(PfsError::SumViolation {
                element: 0,
                sum: sum.to_string(),
            });
        }
        Ok(PictureTriple {
            positive,
            neutral,
            negative,
        })
    }

    /// Parses three `"p/q"` strings.
    pub fn parse(positive: &str, neutral: &str, negative: &str) -> Result<Self, PfsError> {
        Self::new(positive.parse()?, neutral.parse()?, negative.parse()?)
    }

    pub fn positive(&self) -> Degree {
        self.positive
    }

    pub fn neutral(&self) -> Degree {
        self.neutral
    }

    pub fn negative(&self) -> Degree {
        self.negative
    }

    /// Refusal degree `1 - (σ + τ + η)`.
    ///
    /// Some sources print this as `1 - (σ - τ - η)`, which can exceed one
    /// and is not what is meant; the residual mass is computed here.
    pub fn refusal(&self) -> Degree {
        let sum = checked_sum([self.positive, self.neutral, self.negative])
            .expect("triple sums are validated at construction");
        let rest = Rational::ONE
            .checked_sub(sum)
            .expect("validated sum fits")
            .expect("validated sum is at most one");
        Degree::try_from(rest).expect("residual lies in [0, 1]")
    }

    /// Componentwise meet used by products: min σ, min τ, max η.
    pub fn meet(self, other: PictureTriple) -> PictureTriple {
        PictureTriple {
            positive: self.positive.min(other.positive),
            neutral: self.neutral.min(other.neutral),
            negative: self.negative.max(other.negative),
        }
    }

    /// σ and τ at least as large, η at most as large.
    pub fn dominates(&self, other: &PictureTriple) -> bool {
        self.positive >= other.positive
            && self.neutral >= other.neutral
            && self.negative <= other.negative
    }

    pub fn passes(&self, threshold: &CutThreshold) -> bool {
        self.positive >= threshold.r && self.neutral >= threshold.s && self.negative <= threshold.t
    }
}

impl TryFrom<[Degree; 3]> for PictureTriple {
    type Error = PfsError;

    fn try_from([p, n, q]: [Degree; 3]) -> Result<Self, Self::Error> {
        PictureTriple::new(p, n, q)
    }
}

impl From<PictureTriple> for [Degree; 3] {
    fn from(t: PictureTriple) -> Self {
        [t.positive, t.neutral, t.negative]
    }
}

impl fmt::Debug for PictureTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {})",
            self.positive, self.neutral, self.negative
        )
    }
}

impl fmt::Display for PictureTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// An `(r, s, t)` threshold with `r + s + t ≤ 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[Degree; 3]", into = "[Degree; 3]")]
pub struct CutThreshold {
    r: Degree,
    s: Degree,
    t: Degree,
}

impl CutThreshold {
    /// `(0, 0, 1)`: every element passes.
    pub const VACUOUS: CutThreshold = CutThreshold {
        r: Degree::ZERO,
        s: Degree::ZERO,
        t: Degree::ONE,
    };

    pub fn new(r: Degree, s: Degree, t: Degree) -> Result<Self, PfsError> {
        let sum = checked_sum([r, s, t])?;
        if sum.exceeds_one() {
            return Err(PfsError::ThresholdSum {
                r,
                s,
                t,
                sum: sum.to_string(),
            });
        }
        Ok(CutThreshold { r, s, t })
    }

    pub fn parse(r: &str, s: &str, t: &str) -> Result<Self, PfsError> {
        Self::new(r.parse()?, s.parse()?, t.parse()?)
    }

    /// The threshold equal to a triple's own degrees.
    pub fn at(triple: &PictureTriple) -> Self {
        CutThreshold {
            r: triple.positive,
            s: triple.neutral,
            t: triple.negative,
        }
    }

    pub fn r(&self) -> Degree {
        self.r
    }

    pub fn s(&self) -> Degree {
        self.s
    }

    pub fn t(&self) -> Degree {
        self.t
    }
}

impl TryFrom<[Degree; 3]> for CutThreshold {
    type Error = PfsError;

    fn try_from([r, s, t]: [Degree; 3]) -> Result<Self, Self::Error> {
        CutThreshold::new(r, s, t)
    }
}

impl From<CutThreshold> for [Degree; 3] {
    fn from(c: CutThreshold) -> Self {
        [c.r, c.s, c.t]
    }
}

impl fmt::Debug for CutThreshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.r, self.s, self.t)
    }
}

/// A picture triple for every element of a carrier group.
#[derive(Clone)]
pub struct PictureFuzzySet {
    carrier: Arc<FiniteGroup>,
    triples: Vec<PictureTriple>,
}

impl PictureFuzzySet {
    pub fn new(carrier: Arc<FiniteGroup>, triples: Vec<PictureTriple>) -> Result<Self, PfsError> {
        if triples.len() != carrier.order() {
            return Err(PfsError::LengthMismatch {
                expected: carrier.order(),
                got: triples.len(),
            });
        }
        Ok(PictureFuzzySet { carrier, triples })
    }

    /// Validates raw degree triples, reporting the first offending element.
    pub fn from_degrees(
        carrier: Arc<FiniteGroup>,
        degrees: &[[Degree; 3]],
    ) -> Result<Self, PfsError> {
        let triples = degrees
            .iter()
            .enumerate()
            .map(|(element, &[p, n, q])| {
                PictureTriple::new(p, n, q).map_err(|e| match e {
                    PfsError::SumViolation { sum, .. } => PfsError::SumViolation { element, sum },
                    other => other,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(carrier, triples)
    }

    pub fn constant(carrier: Arc<FiniteGroup>, triple: PictureTriple) -> Self {
        let triples = vec![triple; carrier.order()];
        PictureFuzzySet { carrier, triples }
    }

    /// Builds a set by evaluating `f` at every element.
    pub fn from_fn(carrier: Arc<FiniteGroup>, f: impl Fn(Element) -> PictureTriple) -> Self {
        let triples = carrier.elements().map(f).collect();
        PictureFuzzySet { carrier, triples }
    }

    pub fn carrier(&self) -> &Arc<FiniteGroup> {
        &self.carrier
    }

    pub fn triples(&self) -> &[PictureTriple] {
        &self.triples
    }

    #[inline]
    pub fn at(&self, element: Element) -> PictureTriple {
        self.triples[element]
    }

    pub fn get(&self, element: Element) -> Result<PictureTriple, PfsError> {
        self.carrier.check_element(element)?;
        Ok(self.triples[element])
    }

    /// Replaces one triple.
    pub fn with_triple(
        mut self,
        element: Element,
        triple: PictureTriple,
    ) -> Result<Self, PfsError> {
        self.carrier.check_element(element)?;
        self.triples[element] = triple;
        Ok(self)
    }

    pub fn same_carrier(&self, other: &PictureFuzzySet) -> bool {
        Arc::ptr_eq(&self.carrier, &other.carrier) || self.carrier.same_table(&other.carrier)
    }

    pub(crate) fn require_same_carrier(&self, other: &PictureFuzzySet) -> Result<(), PfsError> {
        if self.same_carrier(other) {
            Ok(())
        } else {
            Err(PfsError::CarrierMismatch {
                left: self.carrier.name().to_string(),
                right: other.carrier.name().to_string(),
            })
        }
    }

    /// All triples, sorted.
    pub fn value_multiset(&self) -> Vec<PictureTriple> {
        let mut values = self.triples.clone();
        values.sort();
        values
    }
}

impl fmt::Debug for PictureFuzzySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PictureFuzzySet")
            .field("carrier", &self.carrier.name())
            .field("triples", &self.triples)
            .finish()
    }
}

/// `1 - (σ + τ + η)` at `element`.
pub fn refusal_degree(set: &PictureFuzzySet, element: Element) -> Result<Degree, PfsError> {
    Ok(set.get(element)?.refusal())
}

/// `{ y : σ(y) ≥ r, τ(y) ≥ s, η(y) ≤ t }`
pub fn cut_set(set: &PictureFuzzySet, threshold: &CutThreshold) -> GroupSubset {
    let mask: Vec<bool> = set.triples.iter().map(|x| x.passes(threshold)).collect();
    GroupSubset::from_mask(&mask)
}

/// Thresholds built from attained values: `r` ranges over attained σ and 0,
/// `s` over attained τ and 0, `t` over attained η and 1, keeping those with
/// `r + s + t ≤ 1`. Sorted by `(r, s, t)`.
///
/// Every non-empty cut of `set` is the cut at one of these thresholds: for a
/// cut `K`, take `(min σ on K, min τ on K, max η on K)`. The sum stays at most
/// one because σ and τ there are bounded by those of the element attaining
/// the max η. The empty cut is covered by [`empty_cut_threshold`] instead.
pub fn representative_thresholds(set: &PictureFuzzySet) -> Vec<CutThreshold> {
    representative_thresholds_of(&[set])
}

/// Representative thresholds for several sets at once, built from the union
/// of their attained values. Every combination of non-empty cuts that some
/// threshold realizes on all of them simultaneously is realized by one of
/// these.
pub fn representative_thresholds_of(sets: &[&PictureFuzzySet]) -> Vec<CutThreshold> {
    let mut rs: BTreeSet<Degree> = BTreeSet::from([Degree::ZERO]);
    let mut ss: BTreeSet<Degree> = BTreeSet::from([Degree::ZERO]);
    let mut ts: BTreeSet<Degree> = BTreeSet::from([Degree::ONE]);
    for x in sets.iter().flat_map(|set| set.triples.iter()) {
        rs.insert(x.positive);
        ss.insert(x.neutral);
        ts.insert(x.negative);
    }
    let mut out = Vec::new();
    for &r in &rs {
        for &s in &ss {
            for &t in &ts {
                if let Ok(c) = CutThreshold::new(r, s, t) {
                    out.push(c);
                }
            }
        }
    }
    out
}

/// A threshold whose cut is empty. One always exists on a finite carrier:
/// the cut at `(r, 1 - r, 0)` can only hold elements equal to
/// `(r, 1 - r, 0)`, and among `r = j/(n+1)`, `j = 0..=n+1`, at least one
/// value is attained by no element.
pub fn empty_cut_threshold(set: &PictureFuzzySet) -> CutThreshold {
    let steps = set.triples.len() as u64 + 1;
    (0..=steps)
        .filter_map(|j| {
            let r = Degree::new(j, steps).ok()?;
            CutThreshold::new(r, r.complement(), Degree::ZERO).ok()
        })
        .find(|c| set.triples.iter().all(|x| !x.passes(c)))
        .expect("n + 2 candidate thresholds cannot all be attained by n elements")
}

/// Cartesian product on an already-built product group.
pub fn cartesian_product_on(
    product: Arc<FiniteGroup>,
    left: &PictureFuzzySet,
    right: &PictureFuzzySet,
) -> Result<PictureFuzzySet, PfsError> {
    let m = right.carrier.order();
    if product.order() != left.carrier.order() * m {
        return Err(PfsError::CarrierMismatch {
            left: product.name().to_string(),
            right: format!("{}x{}", left.carrier.name(), right.carrier.name()),
        });
    }
    Ok(PictureFuzzySet::from_fn(product, |x| {
        left.triples[x / m].meet(right.triples[x % m])
    }))
}

/// `(P × Q)(p, q) = (min σ, min τ, max η)` on the product group.
pub fn cartesian_product(
    left: &PictureFuzzySet,
    right: &PictureFuzzySet,
) -> Result<PictureFuzzySet, PfsError> {
    let product = FiniteGroup::product(&left.carrier, &right.carrier)?.into_shared();
    cartesian_product_on(product, left, right)
}

/// Image under `f`: max σ, max τ, min η over each fiber, and `(0, 0, 1)`
/// over empty fibers.
///
/// Fails with [`PfsError::ImageNotPicture`] when a fiber mixes large σ and
/// large τ so that the combined triple sums past one.
pub fn image(map: &GroupMap, set: &PictureFuzzySet) -> Result<PictureFuzzySet, PfsError> {
    if !map.source().same_table(&set.carrier) {
        return Err(PfsError::CarrierMismatch {
            left: map.source().name().to_string(),
            right: set.carrier.name().to_string(),
        });
    }
    let target = map.target().clone();
    let mut acc: Vec<Option<(Degree, Degree, Degree)>> = vec![None; target.order()];
    for (x, triple) in set.triples.iter().enumerate() {
        let slot = &mut acc[map.apply(x)];
        *slot = Some(match *slot {
            None => (triple.positive, triple.neutral, triple.negative),
            Some((p, n, q)) => (
                p.max(triple.positive),
                n.max(triple.neutral),
                q.min(triple.negative),
            ),
        });
    }
    let triples = acc
        .into_iter()
        .enumerate()
        .map(|(point, value)| match value {
            None => Ok(PictureTriple::ABSENT),
            Some((p, n, q)) => PictureTriple::new(p, n, q).map_err(|e| match e {
                PfsError::SumViolation { sum, .. } => PfsError::ImageNotPicture { point, sum },
                other => other,
            }),
        })
        .collect::<Result<Vec<_>, _>>()?;
    PictureFuzzySet::new(target, triples)
}

/// Preimage under `f`: the triple at `y` is the target triple at `f(y)`.
pub fn preimage(map: &GroupMap, set: &PictureFuzzySet) -> Result<PictureFuzzySet, PfsError> {
    if !map.target().same_table(&set.carrier) {
        return Err(PfsError::CarrierMismatch {
            left: map.target().name().to_string(),
            right: set.carrier.name().to_string(),
        });
    }
    Ok(PictureFuzzySet::from_fn(map.source().clone(), |x| {
        set.triples[map.apply(x)]
    }))
}

/// Image of a crisp subset, `{ f(y) : y ∈ S }`.
pub fn image_subset(map: &GroupMap, subset: &GroupSubset) -> GroupSubset {
    GroupSubset::in_universe(
        map.target().order(),
        subset.members().iter().map(|&x| map.apply(x)),
    )
    .expect("map images lie in the target")
}

/// Preimage of a crisp subset, `{ y : f(y) ∈ S }`.
pub fn preimage_subset(map: &GroupMap, subset: &GroupSubset) -> GroupSubset {
    let mask: Vec<bool> = map.images().iter().map(|&y| subset.contains(y)).collect();
    GroupSubset::from_mask(&mask)
}

/// Exact componentwise equality over a shared carrier.
pub fn pfs_equal(left: &PictureFuzzySet, right: &PictureFuzzySet) -> Result<bool, PfsError> {
    left.require_same_carrier(right)?;
    Ok(left.triples == right.triples)
}
