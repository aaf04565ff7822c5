//! Small hand-built instances with known behavior, used by campaigns as
//! adversarial inputs and shipped as the example corpus.

use std::sync::Arc;

use crate::group::FiniteGroup;
use crate::pfs::{PictureFuzzySet, PictureTriple};

fn group(name: &str) -> Arc<FiniteGroup> {
    FiniteGroup::named(name)
        .expect("registry group")
        .into_shared()
}

fn triple(p: &str, n: &str, q: &str) -> PictureTriple {
    PictureTriple::parse(p, n, q).expect("valid literal triple")
}

/// Two levels on `Z4` over the subgroup `{0, 2}`: a PFSG.
pub fn z4_two_level() -> PictureFuzzySet {
    let hi = triple("1/2", "1/4", "1/8");
    let lo = triple("1/4", "1/4", "1/4");
    PictureFuzzySet::new(group("Z4"), vec![hi, lo, hi, lo]).expect("valid set")
}

/// On `Z2`: `τ(0) = 1/5 < 3/10 = τ(1)`, so τ-closure fails at `1 + 1`.
pub fn z2_failing() -> PictureFuzzySet {
    PictureFuzzySet::new(
        group("Z2"),
        vec![triple("3/5", "1/5", "1/10"), triple("2/5", "3/10", "1/5")],
    )
    .expect("valid set")
}

/// Two levels on `S3` whose upper level is the non-normal subgroup
/// `{e, (01)}`: a PFSG that is not normal.
pub fn s3_two_level() -> PictureFuzzySet {
    let hi = triple("1/2", "1/4", "1/8");
    let lo = triple("1/4", "1/8", "1/2");
    PictureFuzzySet::from_fn(group("S3"), |x| if x == 0 || x == 2 { hi } else { lo })
}

/// Constant on `Z6`: a PFNSG whose only non-empty cuts are the whole group.
pub fn z6_constant() -> PictureFuzzySet {
    PictureFuzzySet::constant(group("Z6"), triple("1/3", "1/3", "1/3"))
}

/// A non-PFSG on `Z4` whose top level `{0, 1}` is not a subgroup.
pub fn z4_broken_level() -> PictureFuzzySet {
    let hi = triple("1/2", "1/4", "1/8");
    let lo = triple("1/4", "1/8", "1/4");
    PictureFuzzySet::new(group("Z4"), vec![hi, hi, lo, lo]).expect("valid set")
}

/// `P ≡ (1/2, 0, 0)` on `Z2` and `Q ≡ (0, 1/2, 0)` on `Z3`. Their product is
/// constantly `(0, 0, 0)`, a PFSG, yet neither identity dominates the other
/// factor.
pub fn skew_constants() -> (PictureFuzzySet, PictureFuzzySet) {
    (
        PictureFuzzySet::constant(group("Z2"), triple("1/2", "0", "0")),
        PictureFuzzySet::constant(group("Z3"), triple("0", "1/2", "0")),
    )
}

/// Two non-PFSGs on `Z2` (each is larger off the identity) whose product is
/// constantly `(0, 0, 0)`, a PFSG.
pub fn masking_pair() -> (PictureFuzzySet, PictureFuzzySet) {
    let zero = triple("0", "0", "0");
    (
        PictureFuzzySet::new(group("Z2"), vec![zero, triple("1/2", "0", "0")]).expect("valid set"),
        PictureFuzzySet::new(group("Z2"), vec![zero, triple("0", "1/2", "0")]).expect("valid set"),
    )
}

/// A set on `Z4` whose fiber `{0, 2}` under reduction mod 2 takes its σ
/// maximum at 0 and its τ maximum at 2. The image at 0 is `(1/4, 1/4, 1/8)`,
/// a value no single element reaches, so the image of the cut at that value
/// misses 0 while the cut of the image contains it.
pub fn z4_mixed_fiber() -> PictureFuzzySet {
    let lo = triple("1/8", "1/8", "1/2");
    PictureFuzzySet::new(
        group("Z4"),
        vec![triple("1/4", "0", "1/8"), lo, triple("0", "1/4", "1/8"), lo],
    )
    .expect("valid set")
}

/// A set on `Z2` whose image under the trivial map to `Z1` is `(1, 1, 0)`,
/// which is not a picture triple.
pub fn z2_overflowing_fiber() -> PictureFuzzySet {
    PictureFuzzySet::new(
        group("Z2"),
        vec![triple("1", "0", "0"), triple("0", "1", "0")],
    )
    .expect("valid set")
}
