//! Picture fuzzy subgroups and normal subgroups.
//!
//! Predicates scan element pairs in a fixed order (first element, then second
//! element, then clause) and report the first violated inequality, so a
//! failing verdict is reproducible and can be replayed.

use std::fmt;
use std::sync::Arc;

use rand::seq::index::sample as sample_indices;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::degree::Degree;
use crate::group::{Element, FiniteGroup, GroupError};
use crate::pfs::{PfsError, PictureFuzzySet, PictureTriple};
use crate::subset::{enumerate_subgroups, is_normal_subgroup, GroupSubset, DEFAULT_MAX_ORDER};

/// Which inequality or equality failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Clause {
    SigmaClosure,
    TauClosure,
    EtaClosure,
    SigmaInverse,
    TauInverse,
    EtaInverse,
    SigmaNormality,
    TauNormality,
    EtaNormality,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Clause::SigmaClosure => "σ-closure",
            Clause::TauClosure => "τ-closure",
            Clause::EtaClosure => "η-closure",
            Clause::SigmaInverse => "σ-inverse",
            Clause::TauInverse => "τ-inverse",
            Clause::EtaInverse => "η-inverse",
            Clause::SigmaNormality => "σ-normality",
            Clause::TauNormality => "τ-normality",
            Clause::EtaNormality => "η-normality",
        };
        f.write_str(s)
    }
}

/// The first failing clause and the elements where it fails. Inverse clauses
/// involve only `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub clause: Clause,
    pub a: Element,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<Element>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.b {
            Some(b) => write!(f, "{} fails at a={}, b={}", self.clause, self.a, b),
            None => write!(f, "{} fails at a={}", self.clause, self.a),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PfsgVerdict {
    holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    violation: Option<Violation>,
}

impl PfsgVerdict {
    fn from_violation(violation: Option<Violation>) -> Self {
        PfsgVerdict {
            holds: violation.is_none(),
            violation,
        }
    }

    pub fn holds(&self) -> bool {
        self.holds
    }

    pub fn violation(&self) -> Option<Violation> {
        self.violation
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PfsgError {
    #[error("input is not a picture fuzzy subgroup: {0}")]
    NotPfsg(Violation),
    #[error("input is not a picture fuzzy normal subgroup: {0}")]
    NotPfnsg(Violation),
    #[error("no chain of {requested} subgroups exists; the longest has {longest}")]
    UnsatisfiableChain { requested: usize, longest: usize },
    #[error("grid denominator {grid} is too coarse for {layers} strictly monotone layers")]
    GridTooCoarse { grid: u64, layers: usize },
    #[error(transparent)]
    Pfs(#[from] PfsError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

fn closure_clause(q: &PictureFuzzySet, a: Element, b: Element, product: Element) -> Option<Clause> {
    let (x, y, z) = (q.at(a), q.at(b), q.at(product));
    if z.positive() < x.positive().min(y.positive()) {
        Some(Clause::SigmaClosure)
    } else if z.neutral() < x.neutral().min(y.neutral()) {
        Some(Clause::TauClosure)
    } else if z.negative() > x.negative().max(y.negative()) {
        Some(Clause::EtaClosure)
    } else {
        None
    }
}

fn inverse_clause(q: &PictureFuzzySet, a: Element) -> Option<Clause> {
    let (x, inv) = (q.at(a), q.at(q.carrier().inverse(a)));
    if inv.positive() < x.positive() {
        Some(Clause::SigmaInverse)
    } else if inv.neutral() < x.neutral() {
        Some(Clause::TauInverse)
    } else if inv.negative() > x.negative() {
        Some(Clause::EtaInverse)
    } else {
        None
    }
}

fn equality_clause(x: PictureTriple, y: PictureTriple) -> Option<Clause> {
    if x.positive() != y.positive() {
        Some(Clause::SigmaNormality)
    } else if x.neutral() != y.neutral() {
        Some(Clause::TauNormality)
    } else if x.negative() != y.negative() {
        Some(Clause::EtaNormality)
    } else {
        None
    }
}

/// Closure under the operation (min σ, min τ, max η) and monotonicity under
/// inversion. The inverse clauses for `a` are checked at the pair `(a, 0)`.
pub fn is_pfsg(q: &PictureFuzzySet) -> PfsgVerdict {
    let g = q.carrier();
    for a in g.elements() {
        for b in g.elements() {
            if let Some(clause) = closure_clause(q, a, b, g.op(a, b)) {
                return PfsgVerdict::from_violation(Some(Violation {
                    clause,
                    a,
                    b: Some(b),
                }));
            }
            if b == 0 {
                if let Some(clause) = inverse_clause(q, a) {
                    return PfsgVerdict::from_violation(Some(Violation { clause, a, b: None }));
                }
            }
        }
    }
    PfsgVerdict::from_violation(None)
}

/// The single-condition form: `Q(a b⁻¹)` dominates the meet of `Q(a)` and
/// `Q(b)`. Violations use the closure clause tags for the pair `(a, b)`.
pub fn is_pfsg_compact(q: &PictureFuzzySet) -> PfsgVerdict {
    let g = q.carrier();
    for a in g.elements() {
        for b in g.elements() {
            if let Some(clause) = closure_clause(q, a, b, g.op(a, g.inverse(b))) {
                return PfsgVerdict::from_violation(Some(Violation {
                    clause,
                    a,
                    b: Some(b),
                }));
            }
        }
    }
    PfsgVerdict::from_violation(None)
}

pub(crate) fn require_pfsg(q: &PictureFuzzySet) -> Result<(), PfsgError> {
    match is_pfsg(q).violation() {
        None => Ok(()),
        Some(v) => Err(PfsgError::NotPfsg(v)),
    }
}

pub(crate) fn require_pfnsg(q: &PictureFuzzySet) -> Result<(), PfsgError> {
    match is_pfnsg_conjugation(q)?.violation() {
        None => Ok(()),
        Some(v) => Err(PfsgError::NotPfnsg(v)),
    }
}

fn scan_equality(
    q: &PictureFuzzySet,
    pair: impl Fn(&FiniteGroup, Element, Element) -> (Element, Element),
) -> PfsgVerdict {
    let g = q.carrier();
    for a in g.elements() {
        for b in g.elements() {
            let (x, y) = pair(g, a, b);
            if let Some(clause) = equality_clause(q.at(x), q.at(y)) {
                return PfsgVerdict::from_violation(Some(Violation {
                    clause,
                    a,
                    b: Some(b),
                }));
            }
        }
    }
    PfsgVerdict::from_violation(None)
}

/// Normality via cosets: `(Qa)(b) = (aQ)(b)`, that is `Q(b a⁻¹) = Q(a⁻¹ b)`.
pub fn is_pfnsg_cosets(q: &PictureFuzzySet) -> Result<PfsgVerdict, PfsgError> {
    require_pfsg(q)?;
    Ok(scan_equality(q, |g, a, b| {
        let inv = g.inverse(a);
        (g.op(b, inv), g.op(inv, b))
    }))
}

/// Normality via commuting arguments: `Q(ab) = Q(ba)`.
pub fn is_pfnsg_commute(q: &PictureFuzzySet) -> Result<PfsgVerdict, PfsgError> {
    require_pfsg(q)?;
    Ok(scan_equality(q, |g, a, b| (g.op(a, b), g.op(b, a))))
}

/// Normality via conjugation: `Q(b⁻¹ a b) = Q(a)`.
pub fn is_pfnsg_conjugation(q: &PictureFuzzySet) -> Result<PfsgVerdict, PfsgError> {
    require_pfsg(q)?;
    Ok(scan_equality(q, |g, a, b| (g.conjugate(a, b), a)))
}

/// Left coset `aQ`: the triple at `u` is `Q(a⁻¹ u)`.
pub fn left_coset(q: &PictureFuzzySet, a: Element) -> Result<PictureFuzzySet, PfsgError> {
    let g = q.carrier().clone();
    let inv = g.inverse(g.check_element(a)?);
    Ok(PictureFuzzySet::from_fn(g.clone(), |u| q.at(g.op(inv, u))))
}

/// Right coset `Qa`: the triple at `u` is `Q(u a⁻¹)`.
pub fn right_coset(q: &PictureFuzzySet, a: Element) -> Result<PictureFuzzySet, PfsgError> {
    let g = q.carrier().clone();
    let inv = g.inverse(g.check_element(a)?);
    Ok(PictureFuzzySet::from_fn(g.clone(), |u| q.at(g.op(u, inv))))
}

/// The conjugate of `Q` by `a`: the triple at `g` is `Q(a⁻¹ g a)`.
pub fn conjugate_pfs(q: &PictureFuzzySet, a: Element) -> Result<PictureFuzzySet, PfsgError> {
    let g = q.carrier().clone();
    let a = g.check_element(a)?;
    Ok(PictureFuzzySet::from_fn(g.clone(), |x| {
        q.at(g.conjugate(x, a))
    }))
}

/// Smallest `a` with `P = conjugate_pfs(Q, a)`, if any.
pub fn are_conjugate(
    p: &PictureFuzzySet,
    q: &PictureFuzzySet,
) -> Result<Option<Element>, PfsgError> {
    p.require_same_carrier(q)?;
    if p.value_multiset() != q.value_multiset() {
        return Ok(None);
    }
    let g = p.carrier();
    Ok(g.elements()
        .find(|&a| g.elements().all(|x| p.at(x) == q.at(g.conjugate(x, a)))))
}

/// Subgroups of a group together with their normality and the length of the
/// longest strict chain ending at each.
#[derive(Debug, Clone)]
pub struct SubgroupLattice {
    group: Arc<FiniteGroup>,
    subgroups: Vec<GroupSubset>,
    normal: Vec<bool>,
    depth: Vec<usize>,
    normal_depth: Vec<usize>,
}

impl SubgroupLattice {
    pub fn new(group: Arc<FiniteGroup>, max_order: usize) -> Result<Self, GroupError> {
        let subgroups = enumerate_subgroups(&group, max_order)?;
        let normal: Vec<bool> = subgroups
            .iter()
            .map(|s| is_normal_subgroup(&group, s))
            .collect::<Result<_, _>>()?;
        let chain_depth = |allowed: &dyn Fn(usize) -> bool| -> Vec<usize> {
            let mut depth = vec![0; subgroups.len()];
            // Sorted by cardinality, so proper subgroups come first.
            for i in 0..subgroups.len() {
                if !allowed(i) {
                    continue;
                }
                depth[i] = 1
                    + (0..i)
                        .filter(|&j| {
                            allowed(j)
                                && subgroups[j].len() < subgroups[i].len()
                                && subgroups[j].is_subset_of(&subgroups[i])
                        })
                        .map(|j| depth[j])
                        .max()
                        .unwrap_or(0);
            }
            depth
        };
        let depth = chain_depth(&|_| true);
        let normal_depth = chain_depth(&|i| normal[i]);
        Ok(SubgroupLattice {
            group,
            subgroups,
            normal,
            depth,
            normal_depth,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn subgroups(&self) -> &[GroupSubset] {
        &self.subgroups
    }

    pub fn normal_subgroups(&self) -> impl Iterator<Item = &GroupSubset> {
        self.subgroups
            .iter()
            .zip(&self.normal)
            .filter_map(|(s, &n)| n.then_some(s))
    }

    /// Length of the longest strict chain of (normal) subgroups ending at
    /// the whole group.
    pub fn longest_chain(&self, normal_only: bool) -> usize {
        let depth = if normal_only {
            &self.normal_depth
        } else {
            &self.depth
        };
        *depth.last().expect("the whole group is always listed")
    }

    /// A uniformly stepped random chain `H₁ ⊂ … ⊂ H_k = G`, innermost first.
    pub fn random_chain<R: Rng>(
        &self,
        rng: &mut R,
        length: usize,
        normal_only: bool,
    ) -> Result<SubgroupChain, PfsgError> {
        let longest = self.longest_chain(normal_only);
        if length == 0 || length > longest {
            return Err(PfsgError::UnsatisfiableChain {
                requested: length,
                longest,
            });
        }
        let depth = if normal_only {
            &self.normal_depth
        } else {
            &self.depth
        };
        let mut current = self.subgroups.len() - 1;
        let mut chain = vec![current];
        for remaining in (1..length).rev() {
            let candidates: Vec<usize> = (0..current)
                .filter(|&j| {
                    depth[j] >= remaining
                        && self.subgroups[j].len() < self.subgroups[current].len()
                        && self.subgroups[j].is_subset_of(&self.subgroups[current])
                })
                .collect();
            current = candidates[rng.gen_range(0..candidates.len())];
            chain.push(current);
        }
        chain.reverse();
        Ok(SubgroupChain {
            layers: chain
                .into_iter()
                .map(|i| self.subgroups[i].clone())
                .collect(),
        })
    }
}

/// Strictly increasing subgroups, innermost first, ending at the whole group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupChain {
    layers: Vec<GroupSubset>,
}

impl SubgroupChain {
    pub fn layers(&self) -> &[GroupSubset] {
        &self.layers
    }

    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    /// Index of the innermost layer containing `x`.
    pub fn layer_of(&self, x: Element) -> usize {
        self.layers
            .iter()
            .position(|h| h.contains(x))
            .expect("the outermost layer is the whole group")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SamplerConfig {
    /// Layer degrees are multiples of `1/grid`.
    pub grid: u64,
    pub max_order: usize,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            grid: 64,
            max_order: DEFAULT_MAX_ORDER,
        }
    }
}

/// Strictly monotone layer triples on the grid: σ and τ decrease and η
/// increases from the innermost layer outwards, each triple summing to at
/// most one.
pub fn layer_triples<R: Rng>(
    rng: &mut R,
    layers: usize,
    grid: u64,
) -> Result<Vec<PictureTriple>, PfsgError> {
    let steps = layers as u64 - 1;
    let slack = grid
        .checked_sub(3 * steps)
        .ok_or(PfsgError::GridTooCoarse { grid, layers })?;
    let mut cuts = [rng.gen_range(0..=slack), rng.gen_range(0..=slack)];
    cuts.sort_unstable();
    let caps = [
        steps + cuts[0],
        steps + cuts[1] - cuts[0],
        steps + slack - cuts[1],
    ];
    let mut draw = |cap: u64| -> Vec<u64> {
        let mut v: Vec<u64> = sample_indices(rng, cap as usize + 1, layers)
            .into_iter()
            .map(|x| x as u64)
            .collect();
        v.sort_unstable();
        v
    };
    let mut positive = draw(caps[0]);
    let mut neutral = draw(caps[1]);
    let negative = draw(caps[2]);
    positive.reverse();
    neutral.reverse();
    (0..layers)
        .map(|i| {
            Ok(PictureTriple::new(
                Degree::new(positive[i], grid).map_err(PfsError::from)?,
                Degree::new(neutral[i], grid).map_err(PfsError::from)?,
                Degree::new(negative[i], grid).map_err(PfsError::from)?,
            )?)
        })
        .collect()
}

/// Constant triples per layer of `chain`.
pub fn layered_pfs(
    group: Arc<FiniteGroup>,
    chain: &SubgroupChain,
    triples: &[PictureTriple],
) -> PictureFuzzySet {
    PictureFuzzySet::from_fn(group, |x| triples[chain.layer_of(x)])
}

/// Random layered PFSG over a subgroup chain of the given length.
pub fn sample_layered(
    lattice: &SubgroupLattice,
    seed: u64,
    chain_length: usize,
    normal_only: bool,
    grid: u64,
) -> Result<PictureFuzzySet, PfsgError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let chain = lattice.random_chain(&mut rng, chain_length, normal_only)?;
    let triples = layer_triples(&mut rng, chain_length, grid)?;
    Ok(layered_pfs(lattice.group().clone(), &chain, &triples))
}

pub fn sample_pfsg(
    group: Arc<FiniteGroup>,
    seed: u64,
    chain_length: usize,
) -> Result<PictureFuzzySet, PfsgError> {
    sample_pfsg_with(group, seed, chain_length, &SamplerConfig::default())
}

pub fn sample_pfsg_with(
    group: Arc<FiniteGroup>,
    seed: u64,
    chain_length: usize,
    config: &SamplerConfig,
) -> Result<PictureFuzzySet, PfsgError> {
    let lattice = SubgroupLattice::new(group, config.max_order)?;
    sample_layered(&lattice, seed, chain_length, false, config.grid)
}

/// As [`sample_pfsg`] but every layer is a normal subgroup.
pub fn sample_pfnsg(
    group: Arc<FiniteGroup>,
    seed: u64,
    chain_length: usize,
) -> Result<PictureFuzzySet, PfsgError> {
    sample_pfnsg_with(group, seed, chain_length, &SamplerConfig::default())
}

pub fn sample_pfnsg_with(
    group: Arc<FiniteGroup>,
    seed: u64,
    chain_length: usize,
    config: &SamplerConfig,
) -> Result<PictureFuzzySet, PfsgError> {
    let lattice = SubgroupLattice::new(group, config.max_order)?;
    sample_layered(&lattice, seed, chain_length, true, config.grid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pfs::{cut_set, CutThreshold};
    use crate::subset::is_subgroup;

    fn g(name: &str) -> Arc<FiniteGroup> {
        FiniteGroup::named(name).unwrap().into_shared()
    }

    fn tri(p: &str, n: &str, q: &str) -> PictureTriple {
        PictureTriple::parse(p, n, q).unwrap()
    }

    fn z4_example() -> PictureFuzzySet {
        let hi = tri("1/2", "1/4", "1/8");
        let lo = tri("1/4", "1/4", "1/4");
        PictureFuzzySet::new(g("Z4"), vec![hi, lo, hi, lo]).unwrap()
    }

    fn z2_failing() -> PictureFuzzySet {
        PictureFuzzySet::new(
            g("Z2"),
            vec![tri("3/5", "1/5", "1/10"), tri("2/5", "3/10", "1/5")],
        )
        .unwrap()
    }

    /// Two levels on S3 whose upper level is the non-normal {e, (01)}.
    fn s3_two_level() -> PictureFuzzySet {
        PictureFuzzySet::from_fn(g("S3"), |x| {
            if x == 0 || x == 2 {
                tri("1/2", "1/4", "1/8")
            } else {
                tri("1/4", "1/8", "1/2")
            }
        })
    }

    #[test]
    fn pfsg_examples() {
        let constant = PictureFuzzySet::constant(g("D4"), tri("1/3", "1/3", "1/3"));
        assert!(is_pfsg(&constant).holds());
        assert!(is_pfsg(&z4_example()).holds());

        let verdict = is_pfsg(&z2_failing());
        assert!(!verdict.holds());
        assert_eq!(
            verdict.violation(),
            Some(Violation {
                clause: Clause::TauClosure,
                a: 1,
                b: Some(1)
            })
        );
    }

    #[test]
    fn compact_form_agrees_on_examples() {
        for q in [
            PictureFuzzySet::constant(g("D4"), tri("1/3", "1/3", "1/3")),
            z4_example(),
            z2_failing(),
            s3_two_level(),
        ] {
            assert_eq!(is_pfsg(&q).holds(), is_pfsg_compact(&q).holds());
        }
        assert!(!is_pfsg_compact(&z2_failing()).holds());
    }

    #[test]
    fn inverse_clause_is_reported() {
        // Z3 with σ(1) > σ(2) = σ(1⁻¹); closure holds vacuously at (0, b)
        // but the scan reaches the inverse clause of 1 at the pair (1, 0).
        let q = PictureFuzzySet::new(
            g("Z3"),
            vec![
                tri("1", "0", "0"),
                tri("1/2", "0", "0"),
                tri("1/4", "0", "0"),
            ],
        )
        .unwrap();
        let v = is_pfsg(&q).violation().unwrap();
        assert_eq!(v.clause, Clause::SigmaInverse);
        assert_eq!((v.a, v.b), (1, None));
    }

    #[test]
    fn cosets() {
        let q = z4_example();
        assert!(crate::pfs::pfs_equal(&left_coset(&q, 0).unwrap(), &q).unwrap());
        assert_eq!(left_coset(&q, 1).unwrap().at(1), tri("1/2", "1/4", "1/8"));
        for a in q.carrier().elements() {
            let l = left_coset(&q, a).unwrap();
            let r = right_coset(&q, a).unwrap();
            assert!(crate::pfs::pfs_equal(&l, &r).unwrap());
        }
        assert!(left_coset(&q, 9).is_err());
    }

    #[test]
    fn normality_examples() {
        let q = z4_example();
        for check in [is_pfnsg_cosets, is_pfnsg_commute, is_pfnsg_conjugation] {
            assert!(check(&q).unwrap().holds());
            let constant = PictureFuzzySet::constant(g("S3"), tri("1/5", "2/5", "1/5"));
            assert!(check(&constant).unwrap().holds());
            let two = s3_two_level();
            assert!(is_pfsg(&two).holds());
            assert!(!check(&two).unwrap().holds());
            assert!(matches!(check(&z2_failing()), Err(PfsgError::NotPfsg(_))));
        }
    }

    #[test]
    fn conjugation() {
        let q = s3_two_level();
        let s3 = q.carrier().clone();
        assert!(crate::pfs::pfs_equal(&conjugate_pfs(&q, 0).unwrap(), &q).unwrap());
        for a in s3.elements() {
            let c = conjugate_pfs(&q, a).unwrap();
            let back = conjugate_pfs(&c, s3.inverse(a)).unwrap();
            assert!(crate::pfs::pfs_equal(&back, &q).unwrap());
            assert!(is_pfsg(&c).holds());
            let w = are_conjugate(&c, &q)
                .unwrap()
                .expect("conjugate by construction");
            assert!(crate::pfs::pfs_equal(&conjugate_pfs(&q, w).unwrap(), &c).unwrap());
            assert!(w <= a);
        }
        assert_eq!(are_conjugate(&q, &q).unwrap(), Some(0));
        let z = z4_example();
        for a in z.carrier().elements() {
            assert!(crate::pfs::pfs_equal(&conjugate_pfs(&z, a).unwrap(), &z).unwrap());
        }
        let other = PictureFuzzySet::constant(s3, tri("1/2", "1/4", "1/8"));
        assert_eq!(are_conjugate(&q, &other).unwrap(), None);
    }

    #[test]
    fn lattice_depths() {
        let z6 = SubgroupLattice::new(g("Z6"), DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(z6.longest_chain(false), 3);
        let s3 = SubgroupLattice::new(g("S3"), DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(s3.longest_chain(false), 3);
        assert_eq!(s3.longest_chain(true), 3);
        assert_eq!(s3.normal_subgroups().count(), 3);
        let s4 = SubgroupLattice::new(g("S4"), DEFAULT_MAX_ORDER).unwrap();
        // 1 < Z2 < V4 < D4 < S4
        assert_eq!(s4.longest_chain(false), 5);
        // 1 < V4 < A4 < S4
        assert_eq!(s4.longest_chain(true), 4);
    }

    #[test]
    fn sampler_length_one_is_constant() {
        let q = sample_pfsg(g("D5"), 3, 1).unwrap();
        assert!(q.triples().iter().all(|&x| x == q.at(0)));
    }

    #[test]
    fn sampler_outputs_are_pfsgs() {
        let z6 = SubgroupLattice::new(g("Z6"), DEFAULT_MAX_ORDER).unwrap();
        for seed in 0..1000 {
            let len = 1 + (seed as usize % 3);
            let q = sample_layered(&z6, seed, len, false, 64).unwrap();
            assert!(is_pfsg(&q).holds(), "seed {seed}");
        }
    }

    #[test]
    fn normal_sampler_outputs_are_pfnsgs() {
        let s3 = SubgroupLattice::new(g("S3"), DEFAULT_MAX_ORDER).unwrap();
        for seed in 0..1000 {
            let len = 1 + (seed as usize % 3);
            let q = sample_layered(&s3, seed, len, true, 64).unwrap();
            assert!(is_pfnsg_conjugation(&q).unwrap().holds(), "seed {seed}");
        }
    }

    #[test]
    fn layer_cuts_reproduce_the_chain() {
        for (name, normal) in [("Z6", false), ("D4", false), ("S3", true), ("S4", true)] {
            let lattice = SubgroupLattice::new(g(name), DEFAULT_MAX_ORDER).unwrap();
            let len = lattice.longest_chain(normal);
            for seed in 0..50 {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let chain = lattice.random_chain(&mut rng, len, normal).unwrap();
                let triples = layer_triples(&mut rng, len, 64).unwrap();
                let q = layered_pfs(lattice.group().clone(), &chain, &triples);
                for (layer, t) in chain.layers().iter().zip(&triples) {
                    let cut = cut_set(&q, &CutThreshold::at(t));
                    assert_eq!(&cut, layer);
                    assert!(is_subgroup(q.carrier(), &cut).unwrap());
                    if normal {
                        assert!(is_normal_subgroup(q.carrier(), &cut).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn sampler_is_deterministic_and_rejects_long_chains() {
        let a = sample_pfnsg(g("D4"), 11, 3).unwrap();
        let b = sample_pfnsg(g("D4"), 11, 3).unwrap();
        assert_eq!(a.triples(), b.triples());
        assert!(matches!(
            sample_pfsg(g("Z6"), 0, 4),
            Err(PfsgError::UnsatisfiableChain {
                requested: 4,
                longest: 3
            })
        ));
        assert!(matches!(
            sample_pfsg(g("Z6"), 0, 0),
            Err(PfsgError::UnsatisfiableChain { .. })
        ));
        let coarse = SamplerConfig {
            grid: 3,
            max_order: DEFAULT_MAX_ORDER,
        };
        assert!(matches!(
            sample_pfsg_with(g("Z8"), 0, 4, &coarse),
            Err(PfsgError::GridTooCoarse { .. })
        ));
    }

    #[test]
    fn abelian_normal_sampler_matches_plain_sampler() {
        for seed in 0..20 {
            let a = sample_pfsg(g("Z12"), seed, 3).unwrap();
            let b = sample_pfnsg(g("Z12"), seed, 3).unwrap();
            assert_eq!(a.triples(), b.triples());
        }
    }
}
