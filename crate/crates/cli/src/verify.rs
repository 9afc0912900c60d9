//! Cross-checks run by `verify`.

use std::fmt::Write as _;

use nzflow::algebra::{conformal_expansion, cyclotomic_eval_normal_form, flow_polynomial_normal_form, surplus_eval, QuotientPoly};
use nzflow::flows::{coefficient_table, find_nz_flow, ZpMap};
use nzflow::four_flow::{has_nz_four_flow, FourFlowMethod};
use nzflow::graph::{is_bridgeless, is_chordal, kappa, Digraph, Multigraph};
use nzflow::io::GraphFile;
use nzflow::structure::{check_coloring_correspondence, check_planar_duality, chordal_orientation, verify_unique_zero_conformal};
use nzflow::{Error, Limits};
use num_traits::Zero;
use serde_json::json;

use crate::{Failure, Output};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        }
    }
}

struct Check {
    name: &'static str,
    status: Status,
    detail: String,
}

fn yn(b: bool) -> &'static str {
    if b {
        "YES"
    } else {
        "NO"
    }
}

/// Runs a check; bound exceedance turns into a skip, other errors abort.
fn check(
    out: &mut Vec<Check>,
    name: &'static str,
    f: impl FnOnce() -> nzflow::Result<(bool, String)>,
) -> Result<(), Failure> {
    let (status, detail) = match f() {
        Ok((ok, detail)) => (if ok { Status::Pass } else { Status::Fail }, detail),
        Err(e @ Error::BoundExceeded { .. }) => (Status::Skip, e.to_string()),
        Err(e) => return Err(e.into()),
    };
    out.push(Check { name, status, detail });
    Ok(())
}

/// Work budget for the evaluation sweep: points times normal-form terms.
const EVAL_BUDGET: u128 = 1 << 26;

fn evaluation_dichotomy(d: &Digraph, nf: &QuotientPoly, p: u32, limits: Limits) -> nzflow::Result<(bool, String)> {
    let m = d.link_count();
    let points = u128::from(p - 1).pow(m as u32);
    if points > u128::from(limits.states) {
        return Err(Error::BoundExceeded {
            what: "nowhere-zero assignments",
            needed: points,
            bound: limits.states.into(),
        });
    }
    let work = points * nf.len().max(1) as u128;
    if work > EVAL_BUDGET {
        return Err(Error::BoundExceeded {
            what: "evaluation sweep",
            needed: work,
            bound: EVAL_BUDGET,
        });
    }
    let mut a = vec![1u32; m];
    let (mut flows, mut mismatches) = (0u64, 0u64);
    loop {
        let phi = ZpMap::new(p, a.iter().map(|&x| x as u8).collect())?;
        let direct = surplus_eval(d, &phi)?;
        if !direct.is_zero() {
            flows += 1;
        }
        if cyclotomic_eval_normal_form(nf, &a)?.to_integer() != Some(direct) {
            mismatches += 1;
        }
        let Some(i) = a.iter().rposition(|&x| x < p - 1) else {
            break;
        };
        a[i] += 1;
        a[i + 1..].fill(1);
    }
    Ok((
        mismatches == 0,
        format!("{points} points, {flows} evaluate to {p}^{}, {mismatches} mismatches", d.vertex_count()),
    ))
}

pub fn run(g: &GraphFile, p: u32, limits: Limits) -> Result<Output, Failure> {
    let d = g.digraph();
    let u = g.undirected();
    let mut checks = Vec::new();

    let nf = match flow_polynomial_normal_form(d, p, limits) {
        Ok(nf) => Some(nf),
        Err(e @ Error::BoundExceeded { .. }) => {
            checks.push(Check {
                name: "normal form",
                status: Status::Skip,
                detail: e.to_string(),
            });
            None
        }
        Err(e) => return Err(e.into()),
    };
    let membership = nf.as_ref().map(|nf| !nf.is_zero());

    check(&mut checks, "nz-flow deciders", || {
        let conformal = !coefficient_table(d, p, limits)?.is_empty();
        let brute = find_nz_flow(d, p, limits)?.is_some();
        let m = membership.unwrap_or(brute);
        let detail = match membership {
            Some(m) => format!("membership={} conformal={} brute={}", yn(m), yn(conformal), yn(brute)),
            None => format!("conformal={} brute={}", yn(conformal), yn(brute)),
        };
        Ok((m == conformal && conformal == brute, detail))
    })?;

    if let Some(nf) = &nf {
        check(&mut checks, "main identity", || {
            let expansion = conformal_expansion(d, p, limits)?;
            Ok((
                *nf == expansion,
                format!("normal form has {} terms, kappa={}", nf.len(), kappa(d)),
            ))
        })?;
        check(&mut checks, "evaluation dichotomy", || evaluation_dichotomy(d, nf, p, limits))?;
    }

    if let Some(rot) = &g.rotation {
        check(&mut checks, "planar duality", || {
            let r = check_planar_duality(d, rot, p, limits)?;
            Ok((
                r.agrees,
                format!(
                    "nz_flow={} dual witness={} bijection={}",
                    yn(r.nz_flow),
                    yn(r.dual_witness_psi.is_some()),
                    r.bijection
                ),
            ))
        })?;
    }

    check(&mut checks, "coloring correspondence", || {
        let r = check_coloring_correspondence(&u, p, limits)?;
        Ok((
            r.agrees,
            format!("colorable={} nz dual flow={}", yn(r.colorable), yn(r.dual_flow.is_some())),
        ))
    })?;

    if p == 4 {
        check(&mut checks, "four-flow agreement", || {
            let z4 = match membership {
                Some(m) => m,
                None => find_nz_flow(d, 4, limits)?.is_some(),
            };
            let mut detail = format!("Z4={}", yn(z4));
            let mut ok = true;
            for (name, m) in [
                ("membership", FourFlowMethod::Membership),
                ("conformal", FourFlowMethod::Conformal),
                ("brute", FourFlowMethod::Brute),
            ] {
                let v = has_nz_four_flow(&u, m, limits)?;
                ok &= v == z4;
                write!(detail, " {name}={}", yn(v)).unwrap();
            }
            Ok((ok, detail))
        })?;
    }

    if u.link_count() > 0 && is_bridgeless(&u) && is_chordal(&u) {
        check(&mut checks, "chordal orientation", || {
            let cert = chordal_orientation(&u, limits)?;
            let unique = verify_unique_zero_conformal(&cert.digraph, limits)?;
            let replay = cert.replay(&u)?;
            let mut ok = unique && replay && cert.verified == Some(true);
            let mut detail = format!("{} steps, unique zero conformal={}", cert.steps.len(), unique);
            if p == 4 {
                if let Some(m) = membership {
                    ok &= m;
                    write!(detail, ", membership={}", yn(m)).unwrap();
                }
            }
            Ok((ok, detail))
        })?;
    }

    let failed = checks.iter().any(|c| c.status == Status::Fail);
    let all_skipped = checks.iter().all(|c| c.status == Status::Skip);
    if all_skipped {
        return Err(Failure::Bound("every check exceeded the bound".into()));
    }
    let mut text = String::new();
    for c in &checks {
        writeln!(text, "{} {}: {}", c.status.label().to_uppercase(), c.name, c.detail).unwrap();
    }
    writeln!(text, "{}", if failed { "FAILED" } else { "OK" }).unwrap();
    let json = json!({
        "p": p,
        "checks": checks
            .iter()
            .map(|c| json!({"name": c.name, "status": c.status.label(), "detail": c.detail}))
            .collect::<Vec<_>>(),
        "ok": !failed,
    });
    Ok(Output { text, json, ok: !failed })
}
