//! Randomized campaigns: many instances per result, drawn from chain
//! samplers (valid by construction), perturbed samples (one triple replaced,
//! usually invalid), uniformly random picture fuzzy sets, and a fixed list
//! of hand-picked instances.
//!
//! Instance `i` of a result draws from its own generator, seeded from the
//! campaign seed, the result and `i`. Instances run in parallel and are
//! merged in index order, so reports depend only on the configuration.

use std::sync::{Arc, OnceLock};
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::degree::Degree;
use crate::examples;
use crate::group::{registry_names, FiniteGroup, GroupError};
use crate::io::{resolve_group, LoadError};
use crate::map::GroupMap;
use crate::pfs::{cartesian_product_on, PictureFuzzySet, PictureTriple};
use crate::pfsg::{conjugate_pfs, sample_layered, PfsgError, SubgroupLattice};
use crate::subset::DEFAULT_MAX_ORDER;

use super::report::{Outcome, TheoremId, VerificationReport};
use super::verify::{self, CheckMode};

/// Layer degrees of sampled instances are multiples of `1/SAMPLER_GRID`.
const SAMPLER_GRID: u64 = 64;
/// Random raw triples are multiples of `1/RAW_GRID`. A coarse grid keeps
/// the representative threshold sets of products small.
const RAW_GRID: u64 = 12;
/// Largest product carrier drawn for the product results.
const PRODUCT_CAP: usize = 72;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CampaignConfig {
    /// Registry names or group file paths.
    pub groups: Vec<String>,
    /// Random instances per result, before the hand-picked ones.
    pub trials: usize,
    pub seed: u64,
    /// Results to run; empty means all.
    pub theorems: Vec<TheoremId>,
    pub mode: CheckMode,
    /// Cap on group orders for subgroup enumeration.
    pub max_order: usize,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            groups: default_groups(),
            trials: 200,
            seed: 0,
            theorems: Vec::new(),
            mode: CheckMode::Standard,
            max_order: DEFAULT_MAX_ORDER,
        }
    }
}

/// Registry groups of order at most 12.
pub fn default_groups() -> Vec<String> {
    registry_names()
        .into_iter()
        .filter(|name| FiniteGroup::named(name).is_ok_and(|g| g.order() <= 12))
        .collect()
}

#[derive(Debug, Error)]
pub enum CampaignError {
    #[error("a campaign needs at least one trial")]
    NoTrials,
    #[error("a campaign needs at least one group")]
    NoGroups,
    #[error("group `{name}`: {source}")]
    Group { name: String, source: LoadError },
    #[error("group `{name}`: {source}")]
    Lattice { name: String, source: GroupError },
    #[error("{theorem}, instance {instance}: {source}")]
    Instance {
        theorem: TheoremId,
        instance: usize,
        source: PfsgError,
    },
}

struct Entry {
    group: Arc<FiniteGroup>,
    lattice: SubgroupLattice,
}

struct Pool {
    entries: Vec<Entry>,
    non_abelian: Vec<usize>,
    /// Ordered pairs of entries whose product is small enough.
    pairs: Vec<(usize, usize)>,
    products: Vec<OnceLock<Result<Arc<FiniteGroup>, GroupError>>>,
}

impl Pool {
    fn new(config: &CampaignConfig) -> Result<Self, CampaignError> {
        let mut entries = Vec::new();
        for name in &config.groups {
            let group = resolve_group(name)
                .map_err(|source| CampaignError::Group {
                    name: name.clone(),
                    source,
                })?
                .into_shared();
            let lattice =
                SubgroupLattice::new(group.clone(), config.max_order).map_err(|source| {
                    CampaignError::Lattice {
                        name: name.clone(),
                        source,
                    }
                })?;
            entries.push(Entry { group, lattice });
        }
        if entries.is_empty() {
            return Err(CampaignError::NoGroups);
        }
        let non_abelian = (0..entries.len())
            .filter(|&i| !entries[i].group.is_abelian())
            .collect();
        let n = entries.len();
        let size = |&(i, j): &(usize, usize)| entries[i].group.order() * entries[j].group.order();
        let all: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        let mut pairs: Vec<(usize, usize)> = all
            .iter()
            .copied()
            .filter(|p| size(p) <= PRODUCT_CAP)
            .collect();
        if pairs.is_empty() {
            let smallest = all.iter().map(size).min().expect("at least one pair");
            pairs = all.into_iter().filter(|p| size(p) == smallest).collect();
        }
        Ok(Pool {
            products: (0..n * n).map(|_| OnceLock::new()).collect(),
            entries,
            non_abelian,
            pairs,
        })
    }

    fn entry(&self, rng: &mut ChaCha8Rng) -> &Entry {
        &self.entries[rng.gen_range(0..self.entries.len())]
    }

    fn non_abelian_or_any(&self, rng: &mut ChaCha8Rng) -> &Entry {
        if !self.non_abelian.is_empty() && rng.gen_bool(0.5) {
            &self.entries[*self.non_abelian.choose(rng).expect("non-empty")]
        } else {
            self.entry(rng)
        }
    }

    /// Two entries and their product group.
    fn pair(&self, rng: &mut ChaCha8Rng) -> Result<(&Entry, &Entry, Arc<FiniteGroup>), PfsgError> {
        let (i, j) = *self.pairs.choose(rng).expect("non-empty");
        let product = self.products[i * self.entries.len() + j]
            .get_or_init(|| {
                FiniteGroup::product(&self.entries[i].group, &self.entries[j].group)
                    .map(FiniteGroup::into_shared)
            })
            .clone()?;
        Ok((&self.entries[i], &self.entries[j], product))
    }
}

fn trial_rng(seed: u64, theorem: TheoremId, instance: usize) -> ChaCha8Rng {
    // SplitMix64 finalizer over the three coordinates.
    let mut z = seed
        ^ (theorem as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ (instance as u64).wrapping_mul(0xD1B5_4A32_D192_ED03);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    ChaCha8Rng::seed_from_u64(z ^ (z >> 31))
}

/// A uniformly drawn picture triple on the raw grid.
fn raw_triple(rng: &mut ChaCha8Rng) -> PictureTriple {
    let mut parts = [0u64; 3];
    let mut left = RAW_GRID;
    for part in parts.iter_mut() {
        *part = rng.gen_range(0..=left);
        left -= *part;
    }
    parts.shuffle(rng);
    let d = |k: u64| Degree::new(k, RAW_GRID).expect("grid point in range");
    PictureTriple::new(d(parts[0]), d(parts[1]), d(parts[2])).expect("parts sum to at most one")
}

fn raw_pfs(rng: &mut ChaCha8Rng, group: &Arc<FiniteGroup>) -> PictureFuzzySet {
    let triples = group.elements().map(|_| raw_triple(rng)).collect();
    PictureFuzzySet::new(group.clone(), triples).expect("raw triples are valid")
}

fn sampled(
    rng: &mut ChaCha8Rng,
    entry: &Entry,
    normal_only: bool,
) -> Result<PictureFuzzySet, PfsgError> {
    let longest = entry.lattice.longest_chain(normal_only);
    let length = rng.gen_range(1..=longest);
    sample_layered(&entry.lattice, rng.gen(), length, normal_only, SAMPLER_GRID)
}

fn perturbed(rng: &mut ChaCha8Rng, entry: &Entry) -> Result<PictureFuzzySet, PfsgError> {
    let base = sampled(rng, entry, false)?;
    let x = rng.gen_range(0..entry.group.order());
    Ok(base.with_triple(x, raw_triple(rng))?)
}

#[derive(Clone, Copy)]
enum Source {
    Sampler,
    Perturbed,
    Raw,
}

impl Source {
    fn tag(self) -> &'static str {
        match self {
            Source::Sampler => "source_sampler",
            Source::Perturbed => "source_perturbed",
            Source::Raw => "source_raw",
        }
    }
}

fn mixed(rng: &mut ChaCha8Rng, entry: &Entry) -> Result<(PictureFuzzySet, Source), PfsgError> {
    Ok(match rng.gen_range(0..3) {
        0 => (sampled(rng, entry, false)?, Source::Sampler),
        1 => (perturbed(rng, entry)?, Source::Perturbed),
        _ => (raw_pfs(rng, &entry.group), Source::Raw),
    })
}

/// `P` with every triple clamped below `cap`; a PFSG stays a PFSG.
fn clamp_below(set: &PictureFuzzySet, cap: PictureTriple) -> PictureFuzzySet {
    PictureFuzzySet::from_fn(set.carrier().clone(), |x| set.at(x).meet(cap))
}

fn random_instance(
    pool: &Pool,
    theorem: TheoremId,
    mode: CheckMode,
    rng: &mut ChaCha8Rng,
    index: usize,
) -> Result<Outcome, PfsgError> {
    match theorem {
        TheoremId::PfsgForms => {
            let entry = pool.entry(rng);
            let (q, source) = mixed(rng, entry)?;
            let mut out = verify::check_pfsg_forms(&q);
            out.tally(source.tag(), 1);
            Ok(out)
        }
        TheoremId::PfnsgForms => {
            let entry = pool.non_abelian_or_any(rng);
            let normal_only = rng.gen_bool(0.5);
            let q = sampled(rng, entry, normal_only)?;
            Ok(verify::check_pfnsg_forms(&q))
        }
        TheoremId::CutSubgroupIff => {
            let entry = pool.entry(rng);
            let (q, source) = mixed(rng, entry)?;
            let mut out = verify::check_cut_subgroup_iff(&q, mode);
            out.tally(source.tag(), 1);
            Ok(out)
        }
        TheoremId::CutNormalIff => {
            let entry = pool.non_abelian_or_any(rng);
            let normal_only = rng.gen_bool(0.3);
            let q = sampled(rng, entry, normal_only)?;
            let mut out = verify::check_cut_normal_iff(&q, mode)?;
            let tag = if entry.group.is_abelian() {
                "abelian"
            } else {
                "non_abelian"
            };
            out.tally(tag, 1);
            Ok(out)
        }
        TheoremId::CosetTranslation => {
            let entry = pool.entry(rng);
            let q = sampled(rng, entry, false)?;
            verify::check_coset_translation(&q)
        }
        TheoremId::ImageCutLaws => image_instance(pool, rng, index),
        TheoremId::ProductCut => {
            let (g, h, product) = pool.pair(rng)?;
            let draw = |rng: &mut ChaCha8Rng, entry: &Entry| match rng.gen_range(0..4) {
                0 => sampled(rng, entry, false),
                1 => perturbed(rng, entry),
                _ => Ok(raw_pfs(rng, &entry.group)),
            };
            let (p, q) = (draw(rng, g)?, draw(rng, h)?);
            verify::check_product_cut(&product, &p, &q)
        }
        TheoremId::ProductPfsg => {
            let (g, h, product) = pool.pair(rng)?;
            let (p, q) = (sampled(rng, g, false)?, sampled(rng, h, false)?);
            verify::check_product_pfsg(&product, &p, &q)
        }
        TheoremId::ProductPfnsg => {
            let (g, h, product) = pool.pair(rng)?;
            let (p, q) = (sampled(rng, g, true)?, sampled(rng, h, true)?);
            verify::check_product_pfnsg(&product, &p, &q)
        }
        TheoremId::IdentityDominance => {
            let (g, h, product) = pool.pair(rng)?;
            let (p, q, tag) = match rng.gen_range(0..4) {
                0 | 1 => (
                    sampled(rng, g, false)?,
                    sampled(rng, h, false)?,
                    "pair_sampled",
                ),
                2 => (
                    perturbed(rng, g)?,
                    sampled(rng, h, false)?,
                    "pair_perturbed",
                ),
                _ => (raw_pfs(rng, &g.group), raw_pfs(rng, &h.group), "pair_raw"),
            };
            let mut out = verify::check_identity_dominance(&product, &p, &q, mode)?;
            out.tally(tag, 1);
            Ok(out)
        }
        TheoremId::FactorRecovery => {
            let (g, h, product) = pool.pair(rng)?;
            let (p, q, tag) = match rng.gen_range(0..4) {
                0 => (
                    sampled(rng, g, false)?,
                    sampled(rng, h, false)?,
                    "pair_sampled",
                ),
                1 => {
                    let q = sampled(rng, h, false)?;
                    let p = clamp_below(&sampled(rng, g, false)?, q.at(h.group.identity()));
                    (p, q, "pair_p_dominated")
                }
                2 => {
                    let p = sampled(rng, g, false)?;
                    let q = clamp_below(&sampled(rng, h, false)?, p.at(g.group.identity()));
                    (p, q, "pair_q_dominated")
                }
                _ => (
                    perturbed(rng, g)?,
                    sampled(rng, h, false)?,
                    "pair_perturbed",
                ),
            };
            let mut out = verify::check_factor_recovery(&product, &p, &q)?;
            out.tally(tag, 1);
            Ok(out)
        }
        TheoremId::ConjugateProducts => {
            let (g, h, product) = pool.pair(rng)?;
            let constructed = rng.gen_bool(0.5);
            let (p1, q1) = (sampled(rng, g, false)?, sampled(rng, h, false)?);
            let (p2, q2) = if constructed {
                let a = rng.gen_range(0..g.group.order());
                let b = rng.gen_range(0..h.group.order());
                (conjugate_pfs(&p1, a)?, conjugate_pfs(&q1, b)?)
            } else {
                (sampled(rng, g, false)?, sampled(rng, h, false)?)
            };
            let mut out = verify::check_conjugate_products(&product, &p1, &p2, &q1, &q2)?;
            out.tally(
                if constructed {
                    "pair_constructed"
                } else {
                    "pair_independent"
                },
                1,
            );
            Ok(out)
        }
    }
}

/// Cycles through identity, constant, projection, reduction and arbitrary
/// set maps.
fn image_instance(pool: &Pool, rng: &mut ChaCha8Rng, index: usize) -> Result<Outcome, PfsgError> {
    let (map, p, tag) = match index % 5 {
        0 => {
            let entry = pool.entry(rng);
            let (p, _) = mixed(rng, entry)?;
            (GroupMap::identity(entry.group.clone()), p, "map_identity")
        }
        1 => {
            let (source, target) = (pool.entry(rng), pool.entry(rng));
            let value = rng.gen_range(0..target.group.order());
            let map = GroupMap::constant(source.group.clone(), target.group.clone(), value)?;
            let (p, _) = mixed(rng, source)?;
            (map, p, "map_constant")
        }
        2 => {
            let (g, h, product) = pool.pair(rng)?;
            let (pg, _) = mixed(rng, g)?;
            let (ph, _) = mixed(rng, h)?;
            let p = if rng.gen_bool(0.5) {
                cartesian_product_on(product.clone(), &pg, &ph)?
            } else {
                raw_pfs(rng, &product)
            };
            let map = if rng.gen_bool(0.5) {
                GroupMap::project_first(product, g.group.clone())?
            } else {
                GroupMap::project_second(product, h.group.clone())?
            };
            (map, p, "map_projection")
        }
        3 => {
            let m = rng.gen_range(2..=12);
            let divisors: Vec<usize> = (1..=m).filter(|d| m % d == 0).collect();
            let n = *divisors.choose(rng).expect("m divides itself");
            let map = GroupMap::reduction_mod(m, n)?;
            let source = Entry {
                group: map.source().clone(),
                lattice: SubgroupLattice::new(map.source().clone(), m)?,
            };
            let (p, _) = mixed(rng, &source)?;
            (map, p, "map_reduction")
        }
        _ => {
            let (source, target) = (pool.entry(rng), pool.entry(rng));
            let images = source
                .group
                .elements()
                .map(|_| rng.gen_range(0..target.group.order()))
                .collect();
            let map = GroupMap::set_map(source.group.clone(), target.group.clone(), images)?;
            let (p, _) = mixed(rng, source)?;
            (map, p, "map_arbitrary")
        }
    };
    let target = Entry {
        group: map.target().clone(),
        lattice: SubgroupLattice::new(map.target().clone(), map.target().order())?,
    };
    let (q, _) = mixed(rng, &target)?;
    let mut out = verify::check_image_cut_laws(&map, &p, &q)?;
    out.tally(tag, 1);
    Ok(out)
}

/// The fixed instances appended after the random ones.
fn hand_picked(theorem: TheoremId, mode: CheckMode) -> Result<Vec<Outcome>, PfsgError> {
    use examples::*;
    let product = |p: &PictureFuzzySet, q: &PictureFuzzySet| -> Result<_, PfsgError> {
        Ok(FiniteGroup::product(p.carrier(), q.carrier())?.into_shared())
    };
    let subsets = [
        z2_failing(),
        z4_two_level(),
        z4_broken_level(),
        s3_two_level(),
        z6_constant(),
    ];
    Ok(match theorem {
        TheoremId::PfsgForms => subsets.iter().map(verify::check_pfsg_forms).collect(),
        TheoremId::PfnsgForms => subsets.iter().map(verify::check_pfnsg_forms).collect(),
        TheoremId::CutSubgroupIff => subsets
            .iter()
            .map(|q| verify::check_cut_subgroup_iff(q, mode))
            .collect(),
        TheoremId::CutNormalIff => [s3_two_level(), z4_two_level(), z6_constant()]
            .iter()
            .map(|q| verify::check_cut_normal_iff(q, mode))
            .collect::<Result<_, _>>()?,
        TheoremId::CosetTranslation => vec![verify::check_coset_translation(&s3_two_level())?],
        TheoremId::ImageCutLaws => {
            let z1 = PictureFuzzySet::constant(
                FiniteGroup::cyclic(1)?.into_shared(),
                PictureTriple::WHOLE,
            );
            vec![
                verify::check_image_cut_laws(
                    &GroupMap::reduction_mod(4, 2)?,
                    &z4_mixed_fiber(),
                    &z2_whole(),
                )?,
                verify::check_image_cut_laws(
                    &GroupMap::reduction_mod(2, 1)?,
                    &z2_overflowing_fiber(),
                    &z1,
                )?,
            ]
        }
        TheoremId::ProductCut => {
            let (p, q) = (z4_two_level(), z2_whole());
            vec![verify::check_product_cut(&product(&p, &q)?, &p, &q)?]
        }
        TheoremId::ProductPfsg => {
            let (p, q) = (s3_two_level(), z4_two_level());
            vec![verify::check_product_pfsg(&product(&p, &q)?, &p, &q)?]
        }
        TheoremId::ProductPfnsg => {
            let (p, q) = (z6_constant(), z4_two_level());
            vec![verify::check_product_pfnsg(&product(&p, &q)?, &p, &q)?]
        }
        TheoremId::IdentityDominance => {
            let (p, q) = skew_constants();
            vec![verify::check_identity_dominance(
                &product(&p, &q)?,
                &p,
                &q,
                mode,
            )?]
        }
        TheoremId::FactorRecovery => {
            let (p, q) = masking_pair();
            vec![verify::check_factor_recovery(&product(&p, &q)?, &p, &q)?]
        }
        TheoremId::ConjugateProducts => {
            let (p1, q1) = (s3_two_level(), z4_two_level());
            let p2 = conjugate_pfs(&p1, 3)?;
            vec![verify::check_conjugate_products(
                &product(&p1, &q1)?,
                &p1,
                &p2,
                &q1,
                &q1,
            )?]
        }
    })
}

/// Constant `(1, 0, 0)` on Z2.
fn z2_whole() -> PictureFuzzySet {
    let z2 = FiniteGroup::cyclic(2).expect("Z2").into_shared();
    PictureFuzzySet::constant(z2, PictureTriple::WHOLE)
}

/// Runs every selected result over `trials` random instances plus the
/// hand-picked ones, returning one report per result in tag order.
pub fn run_campaign(config: &CampaignConfig) -> Result<Vec<VerificationReport>, CampaignError> {
    if config.trials == 0 {
        return Err(CampaignError::NoTrials);
    }
    let pool = Pool::new(config)?;
    let selected: Vec<TheoremId> = TheoremId::ALL
        .into_iter()
        .filter(|t| config.theorems.is_empty() || config.theorems.contains(t))
        .collect();
    let mut reports = Vec::with_capacity(selected.len());
    for theorem in selected {
        let start = Instant::now();
        let mut outcomes = (0..config.trials)
            .into_par_iter()
            .map(|i| {
                let mut rng = trial_rng(config.seed, theorem, i);
                random_instance(&pool, theorem, config.mode, &mut rng, i).map_err(|source| {
                    CampaignError::Instance {
                        theorem,
                        instance: i,
                        source,
                    }
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let fixed =
            hand_picked(theorem, config.mode).map_err(|source| CampaignError::Instance {
                theorem,
                instance: config.trials,
                source,
            })?;
        for mut outcome in fixed {
            outcome.tally("hand_picked", 1);
            outcomes.push(outcome);
        }
        reports.push(VerificationReport::from_outcomes(
            theorem,
            outcomes,
            start.elapsed(),
        ));
    }
    Ok(reports)
}
