use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::Element;
use crate::io::PfsDocument;
use crate::pfs::{CutThreshold, PictureFuzzySet};

/// The results checked, by stable tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremId {
    /// The pairwise and compact subgroup predicates agree.
    PfsgForms,
    /// The coset, commutation and conjugation normality predicates agree.
    PfnsgForms,
    /// A PFS is a PFSG iff every non-empty cut is a subgroup.
    CutSubgroupIff,
    /// A PFSG is normal iff every non-empty cut is a normal subgroup.
    CutNormalIff,
    /// Cuts commute with left and right translation.
    CosetTranslation,
    /// Cuts of images contain images of cuts; cuts of preimages are
    /// preimages of cuts; images dominate pointwise.
    ImageCutLaws,
    /// The cut of a product is the product of the cuts.
    ProductCut,
    /// The product of PFSGs is a PFSG.
    ProductPfsg,
    /// The product of PFNSGs is a PFNSG.
    ProductPfnsg,
    /// A PFSG product has one factor's identity dominating the other factor.
    IdentityDominance,
    /// Recovering PFSG factors from a PFSG product.
    FactorRecovery,
    /// Products of conjugate PFSGs are conjugate.
    ConjugateProducts,
}

impl TheoremId {
    pub const ALL: [TheoremId; 12] = [
        TheoremId::PfsgForms,
        TheoremId::PfnsgForms,
        TheoremId::CutSubgroupIff,
        TheoremId::CutNormalIff,
        TheoremId::CosetTranslation,
        TheoremId::ImageCutLaws,
        TheoremId::ProductCut,
        TheoremId::ProductPfsg,
        TheoremId::ProductPfnsg,
        TheoremId::IdentityDominance,
        TheoremId::FactorRecovery,
        TheoremId::ConjugateProducts,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            TheoremId::PfsgForms => "pfsg_forms",
            TheoremId::PfnsgForms => "pfnsg_forms",
            TheoremId::CutSubgroupIff => "cut_subgroup_iff",
            TheoremId::CutNormalIff => "cut_normal_iff",
            TheoremId::CosetTranslation => "coset_translation",
            TheoremId::ImageCutLaws => "image_cut_laws",
            TheoremId::ProductCut => "product_cut",
            TheoremId::ProductPfsg => "product_pfsg",
            TheoremId::ProductPfnsg => "product_pfnsg",
            TheoremId::IdentityDominance => "identity_dominance",
            TheoremId::FactorRecovery => "factor_recovery",
            TheoremId::ConjugateProducts => "conjugate_products",
        }
    }

    /// Whether the result is an equivalence, so that both truth values of
    /// its left-hand side need coverage.
    pub fn is_iff(self) -> bool {
        matches!(
            self,
            TheoremId::PfsgForms
                | TheoremId::PfnsgForms
                | TheoremId::CutSubgroupIff
                | TheoremId::CutNormalIff
        )
    }

    pub fn valid_tags() -> String {
        Self::ALL.map(Self::tag).join(", ")
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown theorem `{given}`; valid tags: {valid}")]
pub struct UnknownTheorem {
    pub given: String,
    pub valid: String,
}

impl FromStr for TheoremId {
    type Err = UnknownTheorem;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|t| t.tag() == s)
            .ok_or_else(|| UnknownTheorem {
                given: s.to_string(),
                valid: Self::valid_tags(),
            })
    }
}

/// How many instances had the left-hand side true and false.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polarity {
    pub lhs_true: usize,
    pub lhs_false: usize,
}

/// A failing instance, self-contained enough to replay.
///
/// `sets` lists the inputs in the verifier's argument order, followed by any
/// derived set the failure is about (a product, image or coset). `elements`
/// names the offending elements, and `threshold` the offending cut, where
/// they apply.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    /// Position of the instance within its campaign; 0 for a single check.
    pub instance: usize,
    pub description: String,
    pub groups: Vec<String>,
    pub sets: Vec<PfsDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threshold: Option<CutThreshold>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub elements: Vec<Element>,
    /// Images of the map, for the image laws.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<Vec<Element>>,
}

impl Counterexample {
    pub(crate) fn new(description: impl Into<String>, sets: &[&PictureFuzzySet]) -> Self {
        let mut groups: Vec<String> = Vec::new();
        for set in sets {
            let name = set.carrier().name().to_string();
            if !groups.contains(&name) {
                groups.push(name);
            }
        }
        Counterexample {
            instance: 0,
            description: description.into(),
            groups,
            sets: sets.iter().map(|s| PfsDocument::from_pfs(s)).collect(),
            threshold: None,
            elements: Vec::new(),
            map: None,
        }
    }

    pub(crate) fn at_threshold(mut self, threshold: CutThreshold) -> Self {
        self.threshold = Some(threshold);
        self
    }

    pub(crate) fn at_elements(mut self, elements: impl IntoIterator<Item = Element>) -> Self {
        self.elements = elements.into_iter().collect();
        self
    }

    pub(crate) fn with_map(mut self, images: &[Element]) -> Self {
        self.map = Some(images.to_vec());
        self
    }
}

/// The result of checking one instance.
#[derive(Debug, Clone, Default)]
pub(crate) struct Outcome {
    pub vacuous: bool,
    pub lhs: Option<bool>,
    pub checks: u64,
    pub tallies: BTreeMap<String, u64>,
    pub counterexample: Option<Counterexample>,
}

impl Outcome {
    pub fn tally(&mut self, key: &str, by: u64) {
        *self.tallies.entry(key.to_string()).or_default() += by;
    }

    pub fn fail(&mut self, counterexample: Counterexample) {
        if self.counterexample.is_none() {
            self.counterexample = Some(counterexample);
        }
    }
}

/// Aggregate verdict for one result over one or more instances.
///
/// Serialized as one JSON object; `elapsed` is left out so that reports are
/// reproducible byte for byte.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    theorem_id: TheoremId,
    passed: bool,
    instances_checked: usize,
    /// Instances whose hypothesis held, so that the conclusion was checked.
    substantive: usize,
    /// Instances whose hypothesis failed; they pass trivially.
    vacuous: usize,
    /// Individual comparisons made.
    checks: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    polarity: Option<Polarity>,
    /// An equivalence saw only one truth value of its left-hand side.
    low_coverage: bool,
    /// Named counters specific to the result, such as which branch held.
    tallies: BTreeMap<String, u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    counterexample: Option<Counterexample>,
    #[serde(skip)]
    elapsed: Duration,
}

impl VerificationReport {
    /// Merges outcomes in order; the first failing instance supplies the
    /// counterexample.
    pub(crate) fn from_outcomes(
        theorem: TheoremId,
        outcomes: impl IntoIterator<Item = Outcome>,
        elapsed: Duration,
    ) -> Self {
        let mut report = VerificationReport {
            theorem_id: theorem,
            passed: true,
            instances_checked: 0,
            substantive: 0,
            vacuous: 0,
            checks: 0,
            polarity: theorem.is_iff().then(Polarity::default),
            low_coverage: false,
            tallies: BTreeMap::new(),
            counterexample: None,
            elapsed,
        };
        for (index, outcome) in outcomes.into_iter().enumerate() {
            report.instances_checked += 1;
            if outcome.vacuous {
                report.vacuous += 1;
            } else {
                report.substantive += 1;
            }
            report.checks += outcome.checks;
            if let (Some(polarity), Some(lhs)) = (report.polarity.as_mut(), outcome.lhs) {
                if lhs {
                    polarity.lhs_true += 1;
                } else {
                    polarity.lhs_false += 1;
                }
            }
            for (key, count) in outcome.tallies {
                *report.tallies.entry(key).or_default() += count;
            }
            if report.counterexample.is_none() {
                if let Some(mut counterexample) = outcome.counterexample {
                    counterexample.instance = index;
                    report.counterexample = Some(counterexample);
                }
            }
        }
        assert!(
            report.instances_checked >= 1,
            "a report covers at least one instance"
        );
        report.passed = report.counterexample.is_none();
        report.low_coverage = report
            .polarity
            .is_some_and(|p| p.lhs_true == 0 || p.lhs_false == 0);
        report
    }

    pub fn theorem_id(&self) -> TheoremId {
        self.theorem_id
    }

    pub fn passed(&self) -> bool {
        self.passed
    }

    pub fn instances_checked(&self) -> usize {
        self.instances_checked
    }

    pub fn substantive(&self) -> usize {
        self.substantive
    }

    pub fn vacuous(&self) -> usize {
        self.vacuous
    }

    pub fn checks(&self) -> u64 {
        self.checks
    }

    pub fn polarity(&self) -> Option<Polarity> {
        self.polarity
    }

    pub fn low_coverage(&self) -> bool {
        self.low_coverage
    }

    pub fn tallies(&self) -> &BTreeMap<String, u64> {
        &self.tallies
    }

    /// A named counter, zero when never incremented.
    pub fn tally(&self, key: &str) -> u64 {
        self.tallies.get(key).copied().unwrap_or(0)
    }

    pub fn counterexample(&self) -> Option<&Counterexample> {
        self.counterexample.as_ref()
    }

    pub fn elapsed(&self) -> Duration {
        self.elapsed
    }

    /// One JSON object on one line.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<20} {}  instances={} substantive={} vacuous={}",
            self.theorem_id.tag(),
            if self.passed { "PASS" } else { "FAIL" },
            self.instances_checked,
            self.substantive,
            self.vacuous
        )?;
        if let Some(p) = self.polarity {
            write!(f, " lhs_true={} lhs_false={}", p.lhs_true, p.lhs_false)?;
        }
        if self.low_coverage {
            f.write_str(" [low coverage]")?;
        }
        if let Some(c) = &self.counterexample {
            write!(
                f,
                "\n  counterexample (instance {}): {}",
                c.instance, c.description
            )?;
        }
        Ok(())
    }
}
