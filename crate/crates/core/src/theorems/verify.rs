use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::group::{Element, FiniteGroup};
use crate::map::GroupMap;
use crate::pfs::{
    cartesian_product_on, cut_set, empty_cut_threshold, image, image_subset, pfs_equal, preimage,
    preimage_subset, representative_thresholds, representative_thresholds_of, CutThreshold,
    PfsError, PictureFuzzySet,
};
use crate::pfsg::{
    are_conjugate, conjugate_pfs, is_pfnsg_commute, is_pfnsg_conjugation, is_pfnsg_cosets, is_pfsg,
    is_pfsg_compact, left_coset, require_pfnsg, require_pfsg, right_coset, PfsgError, PfsgVerdict,
    Violation,
};
use crate::subset::{
    is_normal_subgroup, is_subgroup, product_subset, translate_left, translate_right, GroupSubset,
};

use super::report::{Counterexample, Outcome, TheoremId, VerificationReport};

/// How literally a statement is read where the usual reading deviates from
/// the text.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckMode {
    /// Cut equivalences quantify over non-empty cuts only, and the second
    /// identity-dominance clause compares `P(e₁)` against `Q`.
    #[default]
    Standard,
    /// Cut equivalences include the empty cut, which is never a subgroup,
    /// and the second identity-dominance clause compares `Q` at the index of
    /// `e₁` against `P` at the indices of `G*`.
    Strict,
}

fn single(theorem: TheoremId, start: Instant, outcome: Outcome) -> VerificationReport {
    VerificationReport::from_outcomes(theorem, [outcome], start.elapsed())
}

fn pairs(group: &FiniteGroup) -> u64 {
    (group.order() * group.order()) as u64
}

fn violation_elements(v: Violation) -> Vec<Element> {
    std::iter::once(v.a).chain(v.b).collect()
}

fn describe(verdict: PfsgVerdict) -> String {
    match verdict.violation() {
        Some(v) => v.to_string(),
        None => "holds".to_string(),
    }
}

// ---------------------------------------------------------------------------
// Equivalent forms of the predicates.

/// The pairwise and compact subgroup predicates agree.
pub fn verify_pfsg_forms(q: &PictureFuzzySet) -> VerificationReport {
    let start = Instant::now();
    single(TheoremId::PfsgForms, start, check_pfsg_forms(q))
}

pub(crate) fn check_pfsg_forms(q: &PictureFuzzySet) -> Outcome {
    let (pairwise, compact) = (is_pfsg(q), is_pfsg_compact(q));
    let mut out = Outcome {
        lhs: Some(pairwise.holds()),
        checks: 2 * pairs(q.carrier()),
        ..Outcome::default()
    };
    if pairwise.holds() != compact.holds() {
        let witness = pairwise
            .violation()
            .or(compact.violation())
            .expect("one side fails");
        out.fail(
            Counterexample::new(
                format!(
                    "pairwise form: {}; compact form: {}",
                    describe(pairwise),
                    describe(compact)
                ),
                &[q],
            )
            .at_elements(violation_elements(witness)),
        );
    }
    out
}

/// The three normality predicates agree on a PFSG. Non-PFSG input is a
/// vacuous instance, since the predicates are only defined on PFSGs.
pub fn verify_pfnsg_forms(q: &PictureFuzzySet) -> VerificationReport {
    let start = Instant::now();
    single(TheoremId::PfnsgForms, start, check_pfnsg_forms(q))
}

pub(crate) fn check_pfnsg_forms(q: &PictureFuzzySet) -> Outcome {
    let mut out = Outcome::default();
    if !is_pfsg(q).holds() {
        out.vacuous = true;
        out.tally("not_pfsg", 1);
        return out;
    }
    let verdicts = [
        is_pfnsg_cosets(q).expect("input is a PFSG"),
        is_pfnsg_commute(q).expect("input is a PFSG"),
        is_pfnsg_conjugation(q).expect("input is a PFSG"),
    ];
    out.lhs = Some(verdicts[2].holds());
    out.checks = 3 * pairs(q.carrier());
    if verdicts.iter().any(|v| v.holds() != verdicts[2].holds()) {
        let witness = verdicts
            .iter()
            .find_map(|v| v.violation())
            .expect("one form fails");
        out.fail(
            Counterexample::new(
                format!(
                    "coset form: {}; commuting form: {}; conjugation form: {}",
                    describe(verdicts[0]),
                    describe(verdicts[1]),
                    describe(verdicts[2])
                ),
                &[q],
            )
            .at_elements(violation_elements(witness)),
        );
    }
    out
}

// ---------------------------------------------------------------------------
// Cut characterizations.

/// Scans the cuts of `q` with `accept`, returning the first threshold whose
/// cut is rejected. Empty cuts are skipped, or rejected in strict mode.
fn first_bad_cut(
    q: &PictureFuzzySet,
    mode: CheckMode,
    out: &mut Outcome,
    accept: impl Fn(&GroupSubset) -> bool,
) -> Option<(CutThreshold, GroupSubset)> {
    let mut thresholds = representative_thresholds(q);
    if mode == CheckMode::Strict {
        thresholds.push(empty_cut_threshold(q));
    }
    let mut bad = None;
    for c in thresholds {
        out.checks += 1;
        let cut = cut_set(q, &c);
        if cut.is_empty() {
            match mode {
                CheckMode::Standard => out.tally("empty_cuts_skipped", 1),
                CheckMode::Strict => {
                    out.tally("empty_cuts_rejected", 1);
                    bad.get_or_insert((c, cut));
                }
            }
            continue;
        }
        if !accept(&cut) {
            bad.get_or_insert((c, cut));
        }
    }
    bad
}

/// A PFS is a PFSG iff each of its non-empty cuts is a crisp subgroup. In
/// strict mode every cut counts, including the empty one; the equivalence
/// then fails for every PFSG.
pub fn verify_cut_subgroup_iff(q: &PictureFuzzySet, mode: CheckMode) -> VerificationReport {
    let start = Instant::now();
    single(
        TheoremId::CutSubgroupIff,
        start,
        check_cut_subgroup_iff(q, mode),
    )
}

pub(crate) fn check_cut_subgroup_iff(q: &PictureFuzzySet, mode: CheckMode) -> Outcome {
    let g = q.carrier();
    let verdict = is_pfsg(q);
    let mut out = Outcome {
        lhs: Some(verdict.holds()),
        checks: pairs(g),
        ..Outcome::default()
    };
    let bad = first_bad_cut(q, mode, &mut out, |cut| {
        is_subgroup(g, cut).expect("cuts live on the carrier")
    });
    match (verdict.violation(), bad) {
        (None, Some((c, cut))) => {
            let why = if cut.is_empty() {
                "empty"
            } else {
                "not a subgroup"
            };
            out.fail(
                Counterexample::new(
                    format!("a PFSG whose cut at {c:?} is {why}: {{{cut}}}"),
                    &[q],
                )
                .at_threshold(c)
                .at_elements(cut.members().to_vec()),
            );
        }
        (Some(v), None) => out.fail(
            Counterexample::new(format!("every non-empty cut is a subgroup, yet {v}"), &[q])
                .at_elements(violation_elements(v)),
        ),
        _ => {}
    }
    out
}

/// A PFSG is normal iff each of its non-empty cuts is a normal subgroup.
/// Strict mode includes the empty cut as for [`verify_cut_subgroup_iff`].
pub fn verify_cut_normal_iff(
    q: &PictureFuzzySet,
    mode: CheckMode,
) -> Result<VerificationReport, PfsgError> {
    let start = Instant::now();
    Ok(single(
        TheoremId::CutNormalIff,
        start,
        check_cut_normal_iff(q, mode)?,
    ))
}

pub(crate) fn check_cut_normal_iff(
    q: &PictureFuzzySet,
    mode: CheckMode,
) -> Result<Outcome, PfsgError> {
    let g = q.carrier();
    let verdict = is_pfnsg_conjugation(q)?;
    let mut out = Outcome {
        lhs: Some(verdict.holds()),
        checks: 2 * pairs(g),
        ..Outcome::default()
    };
    let bad = first_bad_cut(q, mode, &mut out, |cut| {
        is_normal_subgroup(g, cut).expect("cuts live on the carrier")
    });
    match (verdict.violation(), bad) {
        (None, Some((c, cut))) => {
            let why = if cut.is_empty() {
                "empty"
            } else {
                "not a normal subgroup"
            };
            out.fail(
                Counterexample::new(
                    format!("a PFNSG whose cut at {c:?} is {why}: {{{cut}}}"),
                    &[q],
                )
                .at_threshold(c)
                .at_elements(cut.members().to_vec()),
            );
        }
        (Some(v), None) => out.fail(
            Counterexample::new(
                format!("every non-empty cut is a normal subgroup, yet {v}"),
                &[q],
            )
            .at_elements(violation_elements(v)),
        ),
        _ => {}
    }
    Ok(out)
}

/// `a C(Q) = C(aQ)` and `C(Q) a = C(Qa)` for every element and every
/// representative threshold of a PFSG.
pub fn verify_coset_translation(q: &PictureFuzzySet) -> Result<VerificationReport, PfsgError> {
    let start = Instant::now();
    Ok(single(
        TheoremId::CosetTranslation,
        start,
        check_coset_translation(q)?,
    ))
}

pub(crate) fn check_coset_translation(q: &PictureFuzzySet) -> Result<Outcome, PfsgError> {
    require_pfsg(q)?;
    let g = q.carrier();
    // Translates take the same values, so they share representative thresholds.
    let thresholds = representative_thresholds(q);
    let cuts: Vec<GroupSubset> = thresholds.iter().map(|c| cut_set(q, c)).collect();
    let mut out = Outcome::default();
    for a in g.elements() {
        let (left, right) = (left_coset(q, a)?, right_coset(q, a)?);
        for (c, cut) in thresholds.iter().zip(&cuts) {
            out.checks += 2;
            let sides = [
                ("left", translate_left(g, a, cut)?, cut_set(&left, c), &left),
                (
                    "right",
                    translate_right(g, cut, a)?,
                    cut_set(&right, c),
                    &right,
                ),
            ];
            for (side, translated, coset_cut, coset) in sides {
                if translated != coset_cut {
                    out.fail(
                        Counterexample::new(
                            format!(
                                "{side} translate of the cut at {c:?} by {a} is {{{translated}}}, \
                                 but the cut of the {side} coset is {{{coset_cut}}}"
                            ),
                            &[q, coset],
                        )
                        .at_threshold(*c)
                        .at_elements([a]),
                    );
                }
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Images and preimages.

/// For `f: Y₁ → Y₂`, `P` on `Y₁` and `Q` on `Y₂`:
///
/// * (i) `f(C(P)) ⊆ C(f(P))` at every representative threshold;
/// * (ii) `f⁻¹(C(Q)) = C(f⁻¹(Q))` at every representative threshold;
/// * the pointwise bounds `f(P)(f(y)) ≥ P(y)` in σ and τ, `≤` in η.
///
/// Clause (i) and the bounds presuppose that `f(P)` is a PFS. When a fiber
/// pushes the image past sum one, they are recorded as vacuous under the
/// tally `image_not_pfs`; clause (ii) is still checked.
pub fn verify_image_cut_laws(
    f: &GroupMap,
    p: &PictureFuzzySet,
    q: &PictureFuzzySet,
) -> Result<VerificationReport, PfsgError> {
    let start = Instant::now();
    Ok(single(
        TheoremId::ImageCutLaws,
        start,
        check_image_cut_laws(f, p, q)?,
    ))
}

pub(crate) fn check_image_cut_laws(
    f: &GroupMap,
    p: &PictureFuzzySet,
    q: &PictureFuzzySet,
) -> Result<Outcome, PfsgError> {
    for (set, side) in [(p, f.source()), (q, f.target())] {
        if !set.carrier().same_table(side) {
            return Err(PfsError::CarrierMismatch {
                left: set.carrier().name().to_string(),
                right: side.name().to_string(),
            }
            .into());
        }
    }
    let mut out = Outcome::default();
    let counterexample = |description: String, sets: &[&PictureFuzzySet]| {
        Counterexample::new(description, sets).with_map(f.images())
    };

    match image(f, p) {
        Ok(fp) => {
            let mut strict = 0;
            // The image takes values among those of P and the sentinels.
            for c in representative_thresholds_of(&[p, &fp]) {
                out.checks += 1;
                let pushed = image_subset(f, &cut_set(p, &c));
                let cut = cut_set(&fp, &c);
                if !pushed.is_subset_of(&cut) {
                    out.fail(
                        counterexample(
                            format!(
                                "(i) f(C(P)) = {{{pushed}}} is not inside C(f(P)) = {{{cut}}} \
                                 at {c:?}"
                            ),
                            &[p, q, &fp],
                        )
                        .at_threshold(c),
                    );
                } else if pushed != cut {
                    strict += 1;
                }
            }
            out.tally("clause_i_strict_inclusions", strict);
            out.tally("clause_i_strict_instances", u64::from(strict > 0));
            for y in f.source().elements() {
                out.checks += 1;
                if !fp.at(f.apply(y)).dominates(&p.at(y)) {
                    out.fail(
                        counterexample(
                            format!(
                                "pointwise bound fails at {y}: f(P)(f({y})) = {} against P({y}) = {}",
                                fp.at(f.apply(y)),
                                p.at(y)
                            ),
                            &[p, q, &fp],
                        )
                        .at_elements([y, f.apply(y)]),
                    );
                }
            }
        }
        Err(PfsError::ImageNotPicture { .. }) => out.tally("image_not_pfs", 1),
        Err(e) => return Err(e.into()),
    }

    let pulled = preimage(f, q)?;
    for c in representative_thresholds_of(&[q, &pulled]) {
        out.checks += 1;
        let lhs = preimage_subset(f, &cut_set(q, &c));
        let rhs = cut_set(&pulled, &c);
        if lhs != rhs {
            out.fail(
                counterexample(
                    format!(
                        "(ii) f⁻¹(C(Q)) = {{{lhs}}} differs from C(f⁻¹(Q)) = {{{rhs}}} at {c:?}"
                    ),
                    &[p, q, &pulled],
                )
                .at_threshold(c),
            );
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Products.

fn product_group(p: &PictureFuzzySet, q: &PictureFuzzySet) -> Result<Arc<FiniteGroup>, PfsgError> {
    Ok(FiniteGroup::product(p.carrier(), q.carrier())?.into_shared())
}

/// `C(P × Q) = C(P) × C(Q)` at every threshold built from the values of
/// either factor, for arbitrary picture fuzzy sets.
pub fn verify_product_cut(
    p: &PictureFuzzySet,
    q: &PictureFuzzySet,
) -> Result<VerificationReport, PfsgError> {
    let start = Instant::now();
    let product = product_group(p, q)?;
    Ok(single(
        TheoremId::ProductCut,
        start,
        check_product_cut(&product, p, q)?,
    ))
}

pub(crate) fn check_product_cut(
    product: &Arc<FiniteGroup>,
    p: &PictureFuzzySet,
    q: &PictureFuzzySet,
) -> Result<Outcome, PfsgError> {
    let pq = cartesian_product_on(product.clone(), p, q)?;
    let mut out = Outcome::default();
    for c in representative_thresholds_of(&[p, q]) {
        out.checks += 1;
        let lhs = cut_set(&pq, &c);
        let rhs = product_subset(&cut_set(p, &c), &cut_set(q, &c));
        if lhs != rhs {
            out.fail(
                Counterexample::new(
                    format!("C(P×Q) = {{{lhs}}} but C(P)×C(Q) = {{{rhs}}} at {c:?}"),
                    &[p, q, &pq],
                )
                .at_threshold(c),
            );
        }
    }
    Ok(out)
}

/// The product of two PFSGs is a PFSG of the product group.
pub fn verify_product_pfsg(
    p: &PictureFuzzySet,
    q: &PictureFuzzySet,
) -> Result<VerificationReport, PfsgError> {
    let start = Instant::now();
    let product = product_group(p, q)?;
    Ok(single(
        TheoremId::ProductPfsg,
        start,
        check_product_pfsg(&product, p, q)?,
    ))
}

pub(crate) fn check_product_pfsg(
    product: &Arc<FiniteGroup>,
    p: &PictureFuzzySet,
    q: &PictureFuzzySet,
) -> Result<Outcome, PfsgError> {
    require_pfsg(p)?;
    require_pfsg(q)?;
    let pq = cartesian_product_on(product.clone(), p, q)?;
    let mut out = Outcome {
        checks: pairs(product),
        ..Outcome::default()
    };
    if let Some(v) = is_pfsg(&pq).violation() {
        out.fail(
            Counterexample::new(format!("the product of PFSGs fails: {v}"), &[p, q, &pq])
                .at_elements(violation_elements(v)),
        );
    }
    Ok(out)
}

/// The product of two PFNSGs is a PFNSG of the product group.
pub fn verify_product_pfnsg(
    p: &PictureFuzzySet,
    q: &PictureFuzzySet,
) -> Result<VerificationReport, PfsgError> {
    let start = Instant::now();
    let product = product_group(p, q)?;
    Ok(single(
        TheoremId::ProductPfnsg,
        start,
        check_product_pfnsg(&product, p, q)?,
    ))
}

pub(crate) fn check_product_pfnsg(
    product: &Arc<FiniteGroup>,
    p: &PictureFuzzySet,
    q: &PictureFuzzySet,
) -> Result<Outcome, PfsgError> {
    require_pfnsg(p)?;
    require_pfnsg(q)?;
    let pq = cartesian_product_on(product.clone(), p, q)?;
    let mut out = Outcome {
        checks: 2 * pairs(product),
        ..Outcome::default()
    };
    let violation = match is_pfnsg_conjugation(&pq) {
        Ok(verdict) => verdict.violation(),
        Err(PfsgError::NotPfsg(v)) => Some(v),
        Err(e) => return Err(e),
    };
    if let Some(v) = violation {
        out.fail(
            Counterexample::new(format!("the product of PFNSGs fails: {v}"), &[p, q, &pq])
                .at_elements(violation_elements(v)),
        );
    }
    Ok(out)
}

/// If `P × Q` is a PFSG then (i) `Q(e₂)` dominates every `P(g)`, or (ii)
/// `P(e₁)` dominates every `Q(g*)`. Instances whose product is not a PFSG
/// are vacuous. Tallies record which clause held.
pub fn verify_identity_dominance(
    p: &PictureFuzzySet,
    q: &PictureFuzzySet,
    mode: CheckMode,
) -> Result<VerificationReport, PfsgError> {
    let start = Instant::now();
    let product = product_group(p, q)?;
    Ok(single(
        TheoremId::IdentityDominance,
        start,
        check_identity_dominance(&product, p, q, mode)?,
    ))
}

pub(crate) fn check_identity_dominance(
    product: &Arc<FiniteGroup>,
    p: &PictureFuzzySet,
    q: &PictureFuzzySet,
    mode: CheckMode,
) -> Result<Outcome, PfsgError> {
    let pq = cartesian_product_on(product.clone(), p, q)?;
    let mut out = Outcome {
        checks: pairs(product),
        ..Outcome::default()
    };
    if !is_pfsg(&pq).holds() {
        out.vacuous = true;
        out.tally("product_not_pfsg", 1);
        return Ok(out);
    }
    let (g, h) = (p.carrier(), q.carrier());
    let (e1, e2) = (g.identity(), h.identity());
    out.checks += (g.order() + h.order()) as u64;
    let first = g.elements().find(|&x| !q.at(e2).dominates(&p.at(x)));
    let second = match mode {
        CheckMode::Standard => h.elements().find(|&y| !p.at(e1).dominates(&q.at(y))),
        CheckMode::Strict => {
            // The subscripts as written: Q at e₁'s index against P at the
            // indices of G*. Meaningful only when the orders match.
            if g.order() != h.order() {
                out.tally("literal_clause_ill_typed", 1);
                Some(e1)
            } else {
                h.elements().find(|&y| !q.at(e1).dominates(&p.at(y)))
            }
        }
    };
    out.tally("clause_i_held", u64::from(first.is_none()));
    out.tally("clause_ii_held", u64::from(second.is_none()));
    out.tally("both_held", u64::from(first.is_none() && second.is_none()));
    if let (Some(x), Some(y)) = (first, second) {
        out.fail(
            Counterexample::new(
                format!(
                    "P×Q is a PFSG, but (i) fails at g={x}: Q(e₂) = {} against P({x}) = {}, \
                     and (ii) fails at g*={y}",
                    q.at(e2),
                    p.at(x)
                ),
                &[p, q, &pq],
            )
            .at_elements([x, y]),
        );
    }
    Ok(out)
}

/// Recovering factors from a PFSG product:
///
/// * (a) if `P × Q` is a PFSG and `Q(e₂)` dominates every `P(g)`, then `P`
///   is a PFSG;
/// * (b) the mirror image for `Q`;
/// * (c) if `P × Q` is a PFSG then `P` or `Q` is.
///
/// Each branch is tallied as substantive or vacuous; an instance is vacuous
/// only when every branch is.
pub fn verify_factor_recovery(
    p: &PictureFuzzySet,
    q: &PictureFuzzySet,
) -> Result<VerificationReport, PfsgError> {
    let start = Instant::now();
    let product = product_group(p, q)?;
    Ok(single(
        TheoremId::FactorRecovery,
        start,
        check_factor_recovery(&product, p, q)?,
    ))
}

pub(crate) fn check_factor_recovery(
    product: &Arc<FiniteGroup>,
    p: &PictureFuzzySet,
    q: &PictureFuzzySet,
) -> Result<Outcome, PfsgError> {
    let pq = cartesian_product_on(product.clone(), p, q)?;
    let (g, h) = (p.carrier(), q.carrier());
    let (e1, e2) = (g.identity(), h.identity());
    let product_holds = is_pfsg(&pq).holds();
    let (p_verdict, q_verdict) = (is_pfsg(p), is_pfsg(q));
    let mut out = Outcome {
        checks: pairs(product) + pairs(g) + pairs(h) + (g.order() + h.order()) as u64,
        vacuous: !product_holds,
        ..Outcome::default()
    };
    let dominated_p = g.elements().all(|x| q.at(e2).dominates(&p.at(x)));
    let dominated_q = h.elements().all(|y| p.at(e1).dominates(&q.at(y)));
    let branches = [
        (
            "a",
            product_holds && dominated_p,
            p_verdict.holds(),
            p_verdict,
        ),
        (
            "b",
            product_holds && dominated_q,
            q_verdict.holds(),
            q_verdict,
        ),
        (
            "c",
            product_holds,
            p_verdict.holds() || q_verdict.holds(),
            p_verdict,
        ),
    ];
    for (branch, hypothesis, conclusion, witness) in branches {
        if !hypothesis {
            out.tally(&format!("{branch}_vacuous"), 1);
            continue;
        }
        out.tally(&format!("{branch}_substantive"), 1);
        if !conclusion {
            let detail = match branch {
                "a" => format!("Q(e₂) dominates P, yet P fails: {}", describe(p_verdict)),
                "b" => format!("P(e₁) dominates Q, yet Q fails: {}", describe(q_verdict)),
                _ => format!(
                    "neither factor is a PFSG: P {}; Q {}",
                    describe(p_verdict),
                    describe(q_verdict)
                ),
            };
            let v = witness.violation().expect("the conclusion failed");
            out.fail(
                Counterexample::new(
                    format!("({branch}) P×Q is a PFSG, but {detail}"),
                    &[p, q, &pq],
                )
                .at_elements(violation_elements(v)),
            );
        }
    }
    Ok(out)
}

/// If `P₁ = P₂` conjugated by `a` and `Q₁ = Q₂` conjugated by `b`, then
/// `P₁ × Q₁ = (P₂ × Q₂)` conjugated by `(a, b)`. Instances where either pair
/// is not conjugate are vacuous.
pub fn verify_conjugate_products(
    p1: &PictureFuzzySet,
    p2: &PictureFuzzySet,
    q1: &PictureFuzzySet,
    q2: &PictureFuzzySet,
) -> Result<VerificationReport, PfsgError> {
    let start = Instant::now();
    let product = product_group(p1, q1)?;
    Ok(single(
        TheoremId::ConjugateProducts,
        start,
        check_conjugate_products(&product, p1, p2, q1, q2)?,
    ))
}

pub(crate) fn check_conjugate_products(
    product: &Arc<FiniteGroup>,
    p1: &PictureFuzzySet,
    p2: &PictureFuzzySet,
    q1: &PictureFuzzySet,
    q2: &PictureFuzzySet,
) -> Result<Outcome, PfsgError> {
    for set in [p1, p2, q1, q2] {
        require_pfsg(set)?;
    }
    let (a, b) = (are_conjugate(p1, p2)?, are_conjugate(q1, q2)?);
    let size = |s: &PictureFuzzySet| s.carrier().order() as u64;
    let mut out = Outcome {
        checks: size(p1) * size(p1) + size(q1) * size(q1),
        ..Outcome::default()
    };
    let (Some(a), Some(b)) = (a, b) else {
        out.vacuous = true;
        out.tally("p_not_conjugate", u64::from(a.is_none()));
        out.tally("q_not_conjugate", u64::from(b.is_none()));
        return Ok(out);
    };
    let witness = a * q1.carrier().order() + b;
    let conjugated = conjugate_pfs(&cartesian_product_on(product.clone(), p2, q2)?, witness)?;
    let expected = cartesian_product_on(product.clone(), p1, q1)?;
    out.checks += product.order() as u64;
    if !pfs_equal(&conjugated, &expected)? {
        let x = product
            .elements()
            .find(|&x| conjugated.at(x) != expected.at(x))
            .expect("sets differ somewhere");
        out.fail(
            Counterexample::new(
                format!(
                    "conjugating P₂×Q₂ by ({a},{b}) gives {} at {x}, but P₁×Q₁ has {}",
                    conjugated.at(x),
                    expected.at(x)
                ),
                &[p1, p2, q1, q2, &conjugated],
            )
            .at_elements([a, b, x]),
        );
    }
    Ok(out)
}
