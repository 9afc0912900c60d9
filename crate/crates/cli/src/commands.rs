use std::fmt::Write as _;
use std::path::Path;

use nzflow::algebra::{flow_polynomial_normal_form, has_nz_flow_membership};
use nzflow::flows::{
    coefficient_table, coloring_from_dual_flow, count_conformal_dual_flows, count_conformal_flows, find_nz_flow,
    is_p_colorable, is_proper_coloring, ConformalMethod,
};
use nzflow::four_flow::{four_flow_coefficient_table, four_flow_polynomial_normal_form, has_nz_four_flow, FourFlowMethod};
use nzflow::graph::{plane_dual, Multigraph, PlaneDual};
use nzflow::io::{self, GraphFile};
use nzflow::structure::{chordal_orientation, check_planar_duality};
use nzflow::Limits;
use serde_json::json;

use crate::{Command, Failure, Method, Output, Style};

pub fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

pub fn load(path: &Path) -> Result<GraphFile, Failure> {
    io::parse_graph(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn embedded_dual(file: &GraphFile, path: &Path) -> Result<PlaneDual, Failure> {
    let rot = file
        .rotation
        .as_ref()
        .ok_or_else(|| Failure::Input(format!("{}: no `rot` records", path.display())))?;
    Ok(plane_dual(file.digraph(), rot)?)
}

pub fn run(cmd: &Command, limits: Limits, style: &Style) -> Result<Output, Failure> {
    match cmd {
        Command::NormalForm { p, file } => {
            let g = load(file)?;
            let nf = flow_polynomial_normal_form(g.digraph(), *p, limits)?;
            Ok(Output {
                text: format!("{nf}\n"),
                json: nf.to_json(),
                ok: true,
            })
        }
        Command::NzFlow { p, method, file } => {
            let g = load(file)?;
            let d = g.digraph();
            let (found, witness) = match method {
                Method::Membership => (has_nz_flow_membership(d, *p, limits)?, None),
                Method::Conformal => (!coefficient_table(d, *p, limits)?.is_empty(), None),
                Method::Brute => {
                    let w = find_nz_flow(d, *p, limits)?;
                    (w.is_some(), w)
                }
            };
            let mut text = format!("{}\n", style.verdict(found));
            if let Some(w) = &witness {
                writeln!(text, "witness: {}", io::zp_map_text(d, w)).unwrap();
            }
            let json = json!({
                "p": p,
                "method": format!("{method:?}").to_lowercase(),
                "nz_flow": found,
                "witness": witness.as_ref().map(|w| io::zp_map_json(d, w)),
            });
            Ok(Output { text, json, ok: true })
        }
        Command::Conformal { p, psi, dual, file } => {
            let g = load(file)?;
            let psi_text = read(psi)?;
            let parse_psi = |m: &dyn Fn(&str) -> nzflow::Result<nzflow::flows::ZpMap>| {
                m(&psi_text).map_err(|e| Failure::Input(format!("{}: {e}", psi.display())))
            };
            let counts = if *dual {
                let pd = embedded_dual(&g, file)?;
                let psi = parse_psi(&|t| io::parse_zp_map(t, &pd.graph, Some(*p)))?;
                count_conformal_flows(&pd.graph, &psi, limits, ConformalMethod::Auto)?
            } else {
                let psi = parse_psi(&|t| io::parse_zp_map(t, g.digraph(), Some(*p)))?;
                count_conformal_dual_flows(g.digraph(), &psi, limits, ConformalMethod::Auto)?
            };
            Ok(Output {
                text: format!("even: {}\nodd: {}\nc: {}\n", counts.even, counts.odd, counts.coefficient()),
                json: io::counts_json(&counts),
                ok: true,
            })
        }
        Command::CoeffTable { p, file } => {
            let g = load(file)?;
            let d = g.digraph();
            let table = coefficient_table(d, *p, limits)?;
            Ok(Output {
                text: io::coefficient_table_text(d, false, &table),
                json: io::coefficient_table_json(d, Some(*p), &table),
                ok: true,
            })
        }
        Command::FourFlow { table, file } => {
            let u = load(file)?.undirected();
            if *table {
                let t = four_flow_coefficient_table(&u, limits)?;
                return Ok(Output {
                    text: io::coefficient_table_text(&u, true, &t),
                    json: io::coefficient_table_json(&u, None, &t),
                    ok: true,
                });
            }
            let nf = four_flow_polynomial_normal_form(&u, limits)?;
            let mut verdicts = Vec::new();
            for (name, m) in [
                ("membership", FourFlowMethod::Membership),
                ("conformal", FourFlowMethod::Conformal),
                ("brute", FourFlowMethod::Brute),
            ] {
                verdicts.push((name, has_nz_four_flow(&u, m, limits)?));
            }
            let ok = verdicts.iter().all(|v| v.1 == verdicts[0].1);
            let mut text = format!("normal form: {nf}\n");
            for (name, v) in &verdicts {
                writeln!(text, "{name}: {}", style.verdict(*v)).unwrap();
            }
            let mut jv = serde_json::Map::new();
            for (name, v) in &verdicts {
                jv.insert(name.to_string(), json!(v));
            }
            let json = json!({"normal_form": nf.to_json(), "verdicts": jv, "agrees": ok});
            Ok(Output { text, json, ok })
        }
        Command::ChordalOrient { file } => {
            let u = load(file)?.undirected();
            let cert = chordal_orientation(&u, limits)?;
            let json = io::certificate_json(&cert);
            let text = format!("{}\n", serde_json::to_string_pretty(&json).expect("serializable"));
            Ok(Output {
                text,
                json,
                ok: cert.verified != Some(false),
            })
        }
        Command::PlanarCheck { p, file } => {
            let g = load(file)?;
            let rot = g
                .rotation
                .as_ref()
                .ok_or_else(|| Failure::Input(format!("{}: no `rot` records", file.display())))?;
            let r = check_planar_duality(g.digraph(), rot, *p, limits)?;
            let json = io::planar_report_json(&r);
            let mut text = String::new();
            writeln!(text, "nz_flow: {}", style.verdict(r.nz_flow)).unwrap();
            match &r.dual_witness_psi {
                Some(psi) => writeln!(text, "dual_witness_psi: {}", io::zp_map_text(&r.dual, psi)).unwrap(),
                None => writeln!(text, "dual_witness_psi: none").unwrap(),
            }
            writeln!(text, "counts: even={} odd={}", r.counts.even, r.counts.odd).unwrap();
            writeln!(text, "bijection: {}", r.bijection).unwrap();
            writeln!(text, "agrees: {}", r.agrees).unwrap();
            Ok(Output { text, json, ok: r.agrees })
        }
        Command::Dual { file } => {
            let g = load(file)?;
            let pd = embedded_dual(&g, file)?;
            let text = io::write_graph(&pd.graph, Some(&pd.rotation));
            Ok(Output {
                json: json!({ "graph": text }),
                text,
                ok: true,
            })
        }
        Command::Color { p, from_dual_flow, file } => {
            let g = load(file)?;
            let Some(map) = from_dual_flow else {
                let yes = is_p_colorable(&g.undirected(), *p, limits)?;
                return Ok(Output {
                    text: format!("{}\n", style.verdict(yes)),
                    json: json!({"p": p, "colorable": yes}),
                    ok: true,
                });
            };
            let d = g.digraph();
            let phi = io::parse_zp_map(&read(map)?, d, Some(*p))
                .map_err(|e| Failure::Input(format!("{}: {e}", map.display())))?;
            let colors = coloring_from_dual_flow(d, &phi)?;
            let proper = is_proper_coloring(d, &colors.values);
            let mut text = String::new();
            for (v, c) in d.vertex_ids().iter().zip(&colors.values) {
                writeln!(text, "{v}={c}").unwrap();
            }
            let json = json!({"p": p, "coloring": io::vertex_map_json(d, &colors), "proper": proper});
            Ok(Output { text, json, ok: proper })
        }
        Command::Verify { p, file } => crate::verify::run(&load(file)?, *p, limits),
    }
}
