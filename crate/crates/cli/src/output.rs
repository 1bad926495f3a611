use std::fmt::Write as _;

use gtk_core::clifford::{self, GCharTable};
use gtk_core::io::{render_cyclo, Fixture};
use gtk_core::subgroup::{lower_central_g_series, upper_central_g_series};
use gtk_core::theorems::{Evidence, Status, Verdict};
use gtk_core::verify::VerifyReport;
use gtk_core::{CharacterTable, GroupAnalysis, Subgroup};
use serde_json::{json, Value};

use crate::{Failure, Format};

pub const SCHEMA_VERSION: u32 = 1;

pub struct Printer {
    format: Format,
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Holds => "holds",
        Status::Fails => "fails",
        Status::NotApplicable => "not applicable",
    }
}

fn subgroup_json(i: Option<usize>, h: &Subgroup) -> Value {
    json!({ "index": i, "order": h.order(), "generators": h.generators() })
}

fn evidence_text(e: &Evidence) -> String {
    serde_json::to_string(e).unwrap_or_default()
}

fn grid(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r.iter().enumerate().map(|(c, s)| format!("{s:>w$}", w = widths[c])).collect();
        let _ = writeln!(out, "{}", line.join("  ").trim_end());
    }
    out
}

impl Printer {
    pub fn new(format: Format) -> Self {
        Printer { format }
    }

    fn emit(&self, command: &str, mut body: Value, text: impl FnOnce() -> String) {
        match self.format {
            Format::Json => {
                let obj = body.as_object_mut().expect("json bodies are objects");
                obj.insert("schema_version".into(), json!(SCHEMA_VERSION));
                obj.insert("command".into(), json!(command));
                println!("{}", serde_json::to_string_pretty(&body).unwrap());
            }
            Format::Text => print!("{}", text()),
        }
    }

    fn group_json(fx: &Fixture) -> Value {
        json!({ "name": fx.name, "order": fx.group.order() })
    }

    pub fn table(&self, fx: &Fixture, tg: &CharacterTable) -> Result<(), Failure> {
        tg.verify().map_err(|e| Failure::Internal(e.to_string()))?;
        let g = tg.group();
        let cls = tg.classes();
        let values: Vec<Vec<String>> = tg.values().iter().map(|r| r.iter().map(render_cyclo).collect()).collect();
        let classes: Vec<Value> = (0..cls.count())
            .map(|c| json!({ "size": cls.size(c), "representative": cls.rep(c), "element_order": g.elem_order(cls.rep(c)) }))
            .collect();
        let body = json!({
            "group": Self::group_json(fx),
            "classes": classes,
            "degrees": tg.degrees(),
            "values": values,
            "exact": true,
        });
        self.emit("table", body, || {
            let mut rows = vec![
                std::iter::once("class".to_string()).chain((1..=cls.count()).map(|c| c.to_string())).collect(),
                std::iter::once("size".to_string()).chain(cls.sizes().iter().map(|s| s.to_string())).collect(),
                std::iter::once("order".to_string())
                    .chain(cls.reps().iter().map(|&x| g.elem_order(x).to_string()))
                    .collect(),
            ];
            for (r, vals) in values.iter().enumerate() {
                rows.push(std::iter::once(format!("X.{}", r + 1)).chain(vals.iter().cloned()).collect());
            }
            format!(
                "{}  order {}  classes {}\n\n{}\nexact: ok\n",
                fx.name,
                g.order(),
                cls.count(),
                grid(&rows)
            )
        });
        Ok(())
    }

    pub fn normals(&self, fx: &Fixture, an: &GroupAnalysis) {
        let tg = an.table();
        let list: Vec<Value> = an
            .normals()
            .iter()
            .enumerate()
            .map(|(i, n)| {
                let mut classes: Vec<usize> =
                    n.elements().iter().map(|&x| tg.classes().class_of(x).unwrap() + 1).collect();
                classes.sort_unstable();
                classes.dedup();
                let mut v = subgroup_json(Some(i), n);
                v["classes"] = json!(classes);
                v
            })
            .collect();
        let body = json!({ "group": Self::group_json(fx), "normal_subgroups": list });
        self.emit("normals", body, || {
            let mut rows = vec![vec!["index".to_string(), "order".into(), "classes".into(), "generators".into()]];
            for v in &list {
                rows.push(vec![
                    v["index"].to_string(),
                    v["order"].to_string(),
                    v["classes"].to_string(),
                    v["generators"].to_string(),
                ]);
            }
            format!("{}  order {}\n\n{}", fx.name, fx.group.order(), grid(&rows))
        });
    }

    pub fn gtable(&self, fx: &Fixture, an: &GroupAnalysis, i: usize, seed: Option<u64>) -> Result<(), Failure> {
        let tg = an.table();
        let owned: GCharTable;
        let (gt, rows) = match seed {
            None => (an.g_table(i)?, an.clifford_rows(i)?.to_vec()),
            Some(seed) => {
                let base = an.g_table(i)?;
                let delta = clifford::choose_delta_random(tg, &base.cells, seed);
                owned = clifford::build_g_char_table_with_delta(tg, an.normal(i), base.cells.clone(), delta)?;
                let rows = clifford::clifford_oracle(tg, &owned, an.normal_table(i)?)?;
                clifford::check_against_oracle(&owned, &rows)?;
                (&owned, rows)
            }
        };
        let n = an.normal(i);
        let a: Vec<u64> = (0..gt.k()).map(|r| clifford::relation_a(gt, r)).collect::<Result<_, _>>()?;
        let b: Vec<u64> = (0..gt.k()).map(|r| clifford::relation_b(gt, r)).collect::<Result<_, _>>()?;
        let lin = clifford::lin_g_from_table(gt);
        let bracket = clifford::commutator_from_table(tg, gt);
        let lcd: Vec<u64> = clifford::lcd_from_table(gt)?.into_iter().collect();
        let mcd: Vec<u64> = clifford::mcd(&rows).into_iter().collect();
        let x: Vec<Vec<String>> = gt.x.iter().map(|r| r.iter().map(render_cyclo).collect()).collect();
        let body = json!({
            "group": Self::group_json(fx),
            "normal": subgroup_json(Some(i), n),
            "seed": seed,
            "k": gt.k(),
            "g_class_sizes": gt.d,
            "ambient_classes": gt.ambient_class.iter().map(|c| c + 1).collect::<Vec<_>>(),
            "delta": gt.delta.iter().map(|r| r + 1).collect::<Vec<_>>(),
            "chi_degrees": gt.chi_degrees,
            "x": x,
            "lambda": gt.lambda_diag,
            "relation_a": a,
            "relation_b": b,
            "lin_g": lin.iter().map(|r| r + 1).collect::<Vec<_>>(),
            "commutator": subgroup_json(an.index_of(&bracket), &bracket),
            "lcd": lcd,
            "mcd": mcd,
            "clifford": rows,
        });
        self.emit("gtable", body, || {
            let mut grid_rows = vec![std::iter::once("".to_string())
                .chain(gt.ambient_class.iter().map(|c| format!("{}", c + 1)))
                .chain(["lambda".into(), "A".into(), "B".into()])
                .collect::<Vec<_>>()];
            grid_rows.push(
                std::iter::once("D".to_string())
                    .chain(gt.d.iter().map(|d| d.to_string()))
                    .chain(["".into(), "".into(), "".into()])
                    .collect(),
            );
            for (r, vals) in x.iter().enumerate() {
                grid_rows.push(
                    std::iter::once(format!("X.{}", gt.delta[r] + 1))
                        .chain(vals.iter().cloned())
                        .chain([gt.lambda_diag[r].to_string(), a[r].to_string(), b[r].to_string()])
                        .collect(),
                );
            }
            let fmt_set = |v: &[u64]| format!("{{{}}}", v.iter().map(u64::to_string).collect::<Vec<_>>().join(", "));
            let lin_rows: Vec<String> = lin.iter().map(|&r| format!("X.{}", gt.delta[r] + 1)).collect();
            format!(
                "G-character table of N{i} (order {}) in {}, k = {}\n\n{}\nLin_G(N): {}\n|[N,G]| = {}\nLcd = {}\nMcd = {}\n",
                n.order(),
                fx.name,
                gt.k(),
                grid(&grid_rows),
                lin_rows.join(" "),
                bracket.order(),
                fmt_set(&lcd),
                fmt_set(&mcd)
            )
        });
        Ok(())
    }

    pub fn series(&self, fx: &Fixture, an: &GroupAnalysis, i: usize, upper: bool) -> Result<(), Failure> {
        let g = an.group();
        let n = an.normal(i);
        let series = if upper { upper_central_g_series(g, n)? } else { lower_central_g_series(g, n)? };
        let kind = if upper { "upper" } else { "lower" };
        let terms: Vec<Value> = series.terms.iter().map(|t| subgroup_json(an.index_of(t), t)).collect();
        let body = json!({
            "group": Self::group_json(fx),
            "normal": subgroup_json(Some(i), n),
            "kind": kind,
            "terms": terms,
        });
        self.emit("series", body, || {
            let mut s = format!("{kind} central G-series of N{i} (order {}) in {}\n", n.order(), fx.name);
            let start = if upper { 0 } else { 1 };
            for (j, t) in series.terms.iter().enumerate() {
                let label = match an.index_of(t) {
                    Some(k) => format!("N{k}"),
                    None => "-".into(),
                };
                let _ = writeln!(s, "  {:>2}  order {:>4}  {label}", j + start, t.order());
            }
            s
        });
        Ok(())
    }

    pub fn verdict(&self, fx: &Fixture, an: &GroupAnalysis, check: &str, i: Option<usize>, v: &Verdict) {
        let body = json!({
            "group": Self::group_json(fx),
            "check": check,
            "normal": i.map(|i| subgroup_json(Some(i), an.normal(i))),
            "status": v.status,
            "witness": v.witness,
            "cross_check": v.cross_check,
        });
        self.emit("check", body, || {
            let subject = match i {
                Some(i) => format!("N{i} (order {}) in {}", an.normal(i).order(), fx.name),
                None => fx.name.clone(),
            };
            let head = match check {
                "nmi" if v.holds() => format!("{subject} is nMI"),
                "nmi" => format!("{subject} is not nMI"),
                "gnmi" if v.holds() => format!("{subject} is a G-invariant nMI-subgroup"),
                "gnmi" => format!("{subject} is not a G-invariant nMI-subgroup"),
                _ => format!("{check} on {subject}: {}", status_word(v.status)),
            };
            let mut s = head + "\n";
            for (k, e) in v.witness.entries() {
                let _ = writeln!(s, "  {k}: {}", evidence_text(e));
            }
            if let Some(c) = v.cross_check {
                let _ = writeln!(s, "  cross-check: {}", if c == v.holds() { "agrees" } else { "disagrees" });
            }
            s
        });
    }

    pub fn verify(&self, fx: &Fixture, report: &VerifyReport) {
        let body = json!({
            "group": Self::group_json(fx),
            "ok": report.ok(),
            "report": report,
        });
        self.emit("verify", body, || {
            let yes = |b: bool| if b { "ok" } else { "FAILED" };
            let mut s = format!("{}  order {}  classes {}\n", fx.name, fx.group.order(), report.classes);
            let _ = writeln!(s, "  table orthogonality: {}", yes(report.table_exact));
            let _ = writeln!(s, "  value round trip: {}", yes(report.values_round_trip));
            let _ = writeln!(s, "  p-elements from the table: {}", yes(report.p_elements_agree));
            let _ = writeln!(s, "  nMI: {}", if report.nmi { "yes" } else { "no" });
            let _ = writeln!(s, "  nMI nilpotency bound: {}", status_word(report.nmi_structure));
            let mut rows = vec![["N", "order", "k", "lin", "lcd", "mcd", "l", "nilp", "solv", "gnmi", "taketa", "fratt", "delta"]
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()];
            let set = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
            let flag = |b: bool| if b { "y" } else { "n" }.to_string();
            for n in &report.normals {
                rows.push(vec![
                    format!("N{}", n.index),
                    n.order.to_string(),
                    n.k.to_string(),
                    n.lin_g.to_string(),
                    set(&n.lcd),
                    set(&n.mcd),
                    n.hypercentral_length.map_or("-".into(), |l| l.to_string()),
                    flag(n.nilpotent),
                    flag(n.solvable),
                    flag(n.g_invariant_nmi),
                    status_word(n.taketa).into(),
                    status_word(n.fratt).into(),
                    flag(n.delta_invariant),
                ]);
            }
            s.push('\n');
            s.push_str(&grid(&rows));
            for f in &report.failures {
                let _ = writeln!(s, "FAILED: {f}");
            }
            let _ = writeln!(
                s,
                "verify: {}",
                if report.ok() { "ok".to_string() } else { format!("{} failure(s)", report.failures.len()) }
            );
            s
        });
    }
}
