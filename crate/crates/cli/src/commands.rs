//! One function per subcommand. Each returns whether the command's verdict
//! was positive; input problems surface as errors.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use pfg_core::io::{self, load_pfs, resolve_group, save_group, save_pfs, GroupDocument};
use pfg_core::pfs::{cartesian_product, cut_set, image, preimage};
use pfg_core::pfsg::{
    is_pfnsg_conjugation, is_pfsg, left_coset, right_coset, sample_pfnsg_with, sample_pfsg_with,
    PfsgError, PfsgVerdict, SamplerConfig, SubgroupLattice,
};
use pfg_core::subset::enumerate_subgroups;
use pfg_core::theorems::{default_groups, run_campaign, CampaignConfig, CheckMode};
use pfg_core::{CutThreshold, FiniteGroup, GroupMap, PictureFuzzySet};
use serde_json::json;

use crate::cli::{
    CheckArgs, CosetArgs, CutArgs, GroupArgs, ImageArgs, Kind, PfsInput, ProductArgs, SampleArgs,
    Side, VerifyArgs,
};

/// Settings shared by every subcommand.
pub struct Ctx {
    pub json: bool,
    pub max_order: usize,
}

fn load(input: &PfsInput) -> Result<PictureFuzzySet> {
    let set = load_pfs(&input.pfs)?;
    if let Some(name) = &input.group {
        let group = resolve_group(name)?;
        if !group.same_table(set.carrier()) {
            bail!(
                "{} is defined on {}, not on {}",
                input.pfs.display(),
                set.carrier().name(),
                group.name()
            );
        }
    }
    Ok(set)
}

fn shared_group(reference: &str) -> Result<Arc<FiniteGroup>> {
    Ok(resolve_group(reference)
        .with_context(|| format!("group `{reference}`"))?
        .into_shared())
}

/// Writes a set to `out`, or prints its JSON.
fn emit_pfs(set: &PictureFuzzySet, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => {
            save_pfs(path, set)?;
        }
        None => println!("{}", io::pfs_to_json(set)),
    }
    Ok(())
}

fn print_verdict(ctx: &Ctx, carrier: &str, kind: &str, verdict: Option<PfsgVerdict>, reason: &str) {
    let holds = verdict.is_some_and(|v| v.holds());
    let violation = verdict.and_then(|v| v.violation());
    if ctx.json {
        println!(
            "{}",
            json!({
                "carrier": carrier,
                "mode": kind,
                "holds": holds,
                "violation": violation,
                "reason": (!reason.is_empty()).then_some(reason),
            })
        );
    } else if holds {
        println!("holds: a {} of {carrier}", kind.to_uppercase());
    } else {
        match violation {
            Some(v) => println!(
                "fails: not a {} of {carrier}: {reason}{v}",
                kind.to_uppercase()
            ),
            None => println!("fails: not a {} of {carrier}", kind.to_uppercase()),
        }
    }
}

pub fn check(ctx: &Ctx, args: &CheckArgs) -> Result<bool> {
    let set = load(&args.input)?;
    let carrier = set.carrier().name().to_string();
    match args.mode {
        Kind::Pfsg => {
            let verdict = is_pfsg(&set);
            print_verdict(ctx, &carrier, "pfsg", Some(verdict), "");
            Ok(verdict.holds())
        }
        Kind::Pfnsg => match is_pfnsg_conjugation(&set) {
            Ok(verdict) => {
                print_verdict(ctx, &carrier, "pfnsg", Some(verdict), "");
                Ok(verdict.holds())
            }
            Err(PfsgError::NotPfsg(v)) => {
                let verdict = is_pfsg(&set);
                debug_assert_eq!(verdict.violation(), Some(v));
                print_verdict(ctx, &carrier, "pfnsg", Some(verdict), "not even a PFSG: ");
                Ok(false)
            }
            Err(e) => Err(e.into()),
        },
    }
}

pub fn cut(ctx: &Ctx, args: &CutArgs) -> Result<bool> {
    let set = load(&args.input)?;
    let threshold = CutThreshold::parse(&args.r, &args.s, &args.t)?;
    let members = cut_set(&set, &threshold);
    if ctx.json {
        println!(
            "{}",
            json!({ "threshold": threshold, "members": members.members() })
        );
    } else {
        println!("{members}");
    }
    Ok(true)
}

pub fn coset(_ctx: &Ctx, args: &CosetArgs) -> Result<bool> {
    let set = load(&args.input)?;
    let coset = match args.side {
        Side::Left => left_coset(&set, args.element)?,
        Side::Right => right_coset(&set, args.element)?,
    };
    emit_pfs(&coset, args.out.as_deref())?;
    Ok(true)
}

pub fn product(_ctx: &Ctx, args: &ProductArgs) -> Result<bool> {
    let [left, right] = args.pfs.as_slice() else {
        bail!(
            "product takes exactly two --pfs files, got {}",
            args.pfs.len()
        );
    };
    let (p, q) = (load_pfs(left)?, load_pfs(right)?);
    emit_pfs(&cartesian_product(&p, &q)?, args.out.as_deref())?;
    Ok(true)
}

/// Parses the `--map` mini-language against known source and target.
fn parse_map(text: &str, source: Arc<FiniteGroup>, target: Arc<FiniteGroup>) -> Result<GroupMap> {
    let map = match text {
        "identity" => {
            if !source.same_table(&target) {
                bail!("identity map needs equal source and target");
            }
            GroupMap::identity(source)
        }
        "mod" => {
            let (m, n) = (source.order(), target.order());
            if !source.same_table(&FiniteGroup::cyclic(m)?)
                || !target.same_table(&FiniteGroup::cyclic(n)?)
            {
                bail!("`mod` maps a cyclic group Zm onto Zn");
            }
            let reduction = GroupMap::reduction_mod(m, n)?;
            GroupMap::homomorphism(source, target, reduction.images().to_vec())?
        }
        "proj1" => GroupMap::project_first(source, target)?,
        "proj2" => GroupMap::project_second(source, target)?,
        _ => {
            if let Some(k) = text.strip_prefix("const:") {
                let value: usize = k.parse().with_context(|| format!("element `{k}`"))?;
                GroupMap::constant(source, target, value)?
            } else {
                let images = text
                    .split(',')
                    .map(|s| s.trim().parse::<usize>())
                    .collect::<Result<Vec<_>, _>>()
                    .with_context(|| format!("unrecognized map `{text}`"))?;
                GroupMap::set_map(source, target, images)?
            }
        }
    };
    Ok(map)
}

pub fn image_cmd(_ctx: &Ctx, args: &ImageArgs) -> Result<bool> {
    let set = load_pfs(&args.pfs)?;
    let carrier = set.carrier().clone();
    let pick = |given: &Option<String>, default: Option<&Arc<FiniteGroup>>, which: &str| match (
        given, default,
    ) {
        (Some(name), _) => shared_group(name),
        (None, Some(g)) => Ok(g.clone()),
        (None, None) if args.map == "identity" => Ok(carrier.clone()),
        (None, None) => bail!("--{which} is required"),
    };
    let (source, target) = if args.preimage {
        (
            pick(&args.source, None, "source")?,
            pick(&args.target, Some(&carrier), "target")?,
        )
    } else {
        (
            pick(&args.source, Some(&carrier), "source")?,
            pick(&args.target, None, "target")?,
        )
    };
    let map = parse_map(&args.map, source, target)?;
    let result = if args.preimage {
        preimage(&map, &set)?
    } else {
        image(&map, &set)?
    };
    emit_pfs(&result, args.out.as_deref())?;
    Ok(true)
}

pub fn verify(ctx: &Ctx, args: &VerifyArgs) -> Result<bool> {
    let config = CampaignConfig {
        groups: if args.groups.is_empty() {
            default_groups()
        } else {
            args.groups.clone()
        },
        trials: args.trials,
        seed: args.seed,
        theorems: args.theorem.clone(),
        mode: if args.strict {
            CheckMode::Strict
        } else {
            CheckMode::Standard
        },
        max_order: ctx.max_order,
    };
    let reports = run_campaign(&config)?;
    let lines: Vec<String> = reports.iter().map(|r| r.to_json_line()).collect();
    if let Some(path) = &args.out {
        let mut body = lines.join("\n");
        body.push('\n');
        fs::write(path, body).with_context(|| format!("writing {}", path.display()))?;
    }
    let mut stdout = std::io::stdout().lock();
    for (report, line) in reports.iter().zip(&lines) {
        if ctx.json {
            writeln!(stdout, "{line}")?;
        } else {
            writeln!(stdout, "{report}")?;
        }
    }
    Ok(reports.iter().all(|r| r.passed()))
}

pub fn sample(ctx: &Ctx, args: &SampleArgs) -> Result<bool> {
    let group = shared_group(&args.group)?;
    let normal_only = args.kind == Kind::Pfnsg;
    let length = match args.chain_length {
        Some(n) => n,
        None => SubgroupLattice::new(group.clone(), ctx.max_order)?.longest_chain(normal_only),
    };
    let config = SamplerConfig {
        max_order: ctx.max_order,
        ..SamplerConfig::default()
    };
    let set = if normal_only {
        sample_pfnsg_with(group, args.seed, length, &config)?
    } else {
        sample_pfsg_with(group, args.seed, length, &config)?
    };
    emit_pfs(&set, args.out.as_deref())?;
    Ok(true)
}

pub fn group(ctx: &Ctx, args: &GroupArgs) -> Result<bool> {
    let group = resolve_group(&args.group)?;
    if let Some(path) = &args.out {
        save_group(path, &group)?;
    }
    if ctx.json {
        println!(
            "{}",
            serde_json::to_string(&GroupDocument::from_group(&group))?
        );
        return Ok(true);
    }
    println!("{} of order {}", group.name(), group.order());
    println!("abelian: {}", group.is_abelian());
    println!("identity: {}", group.identity());
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for order in group.order_census() {
        *counts.entry(order).or_default() += 1;
    }
    let census: Vec<String> = counts
        .iter()
        .map(|(order, count)| format!("{count} of order {order}"))
        .collect();
    println!("elements: {}", census.join(", "));
    match enumerate_subgroups(&group, ctx.max_order) {
        Ok(subgroups) => println!("subgroups: {}", subgroups.len()),
        Err(e) => println!("subgroups: not enumerated ({e})"),
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn named(name: &str) -> Arc<FiniteGroup> {
        FiniteGroup::named(name).unwrap().into_shared()
    }

    #[test]
    fn map_keywords() {
        let m = parse_map("mod", named("Z6"), named("Z3")).unwrap();
        assert_eq!(m.images(), [0, 1, 2, 0, 1, 2]);
        let m = parse_map("const:1", named("Z2"), named("Z3")).unwrap();
        assert_eq!(m.images(), [1, 1]);
        let m = parse_map("identity", named("S3"), named("S3")).unwrap();
        assert_eq!(m.images(), [0, 1, 2, 3, 4, 5]);
        let product = FiniteGroup::product(&named("Z2"), &named("Z3"))
            .unwrap()
            .into_shared();
        let m = parse_map("proj2", product, named("Z3")).unwrap();
        assert_eq!(m.images(), [0, 1, 2, 0, 1, 2]);
    }

    #[test]
    fn map_lists() {
        let m = parse_map("0, 1,0,1", named("Z4"), named("Z2")).unwrap();
        assert_eq!(m.images(), [0, 1, 0, 1]);
        assert!(parse_map("0,1,2,3", named("Z4"), named("Z2")).is_err());
        assert!(parse_map("0,1", named("Z4"), named("Z2")).is_err());
    }

    #[test]
    fn map_errors() {
        assert!(parse_map("identity", named("Z2"), named("Z3")).is_err());
        assert!(parse_map("mod", named("S3"), named("Z2")).is_err());
        assert!(parse_map("const:x", named("Z2"), named("Z3")).is_err());
        let err = parse_map("rotate", named("Z2"), named("Z2")).unwrap_err();
        assert!(err.to_string().contains("unrecognized map `rotate`"));
    }
}
