use std::path::Path;

use anyhow::{bail, Context};
use onerel::construct::{
    build_presentation, bundled_oracle, equivalent_presentations, forward_certificate, headline_group,
    membership_query, ConstructionInstance, Validity,
};
use onerel::freeprod::{fp_length, key_claim_check, theta_to_fgt, FiniteGroup, FpSyllable, FreeProduct};
use onerel::hnn::{britton_reduce, one_relator_wp, p4_instance, theta_embed, HnnPresentation};
use onerel::munn::{fim_equal, munn_tree};
use onerel::raag::{parabolic_membership, raag_equal, raag_normal_form, SimpGraph};
use onerel::stephen::{
    is_right_invertible_with, prefix_generators, stephen_report, Budget, RightInvertible, StephenConfig, Verdict,
};
use onerel::suite::{run_criterion, run_suite, write_artifacts};
use onerel::words::{formal_inverse, parse_word, prefixes, reduce, Alphabet, Word, WordSrc};
use onerel::{GroupPresentation, InvPresentation};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use crate::config::Config;
use crate::{BudgetOpts, Command, Form};

/// What a command prints, plus its exit status.
pub struct Output {
    pub text: String,
    pub json: Value,
    pub code: u8,
}

impl Output {
    fn ok(text: impl Into<String>, json: Value) -> Output {
        Output { text: text.into(), json, code: 0 }
    }

    /// Exit 0 when `yes`, 1 otherwise.
    fn verdict(yes: bool, text: impl Into<String>, json: Value) -> Output {
        Output { text: text.into(), json, code: if yes { 0 } else { 1 } }
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> anyhow::Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_file(cfg: &Config, path: &Path, contents: &str) -> anyhow::Result<String> {
    let path = cfg.out_path(path);
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    std::fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))?;
    Ok(path.display().to_string())
}

fn word(text: &str, alphabet: Option<&Alphabet>) -> anyhow::Result<Word> {
    parse_word(text, alphabet).with_context(|| format!("word {text:?}"))
}

fn budget(cfg: &Config, opts: &BudgetOpts) -> StephenConfig {
    let d = cfg.default_budget;
    StephenConfig {
        budget: Budget::new(opts.rounds.unwrap_or(d.max_rounds), opts.vertices.unwrap_or(d.max_vertices)),
        mode: cfg.mode(opts.frugal_expansion),
        keep_graphs: false,
    }
}

fn graph(path: &Option<std::path::PathBuf>) -> anyhow::Result<SimpGraph> {
    match path {
        Some(p) => read_json(p),
        None => Ok(SimpGraph::p4()),
    }
}

fn finite_group(spec: &str) -> anyhow::Result<FiniteGroup> {
    let lower = spec.to_ascii_lowercase();
    if lower == "s3" {
        return Ok(FiniteGroup::symmetric3());
    }
    if let Some(n) = lower.strip_prefix('z').and_then(|n| n.parse::<usize>().ok()) {
        if n == 0 {
            bail!("Z/0 is not finite");
        }
        return Ok(FiniteGroup::cyclic(n));
    }
    let path = Path::new(spec);
    if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {spec}"))?;
        Ok(FiniteGroup::from_csv(&text)?)
    } else {
        read_json(path)
    }
}

/// Whitespace-separated syllables: `t`, `t^k`, or element names of `H`.
fn fp_element(
    fp: &FreeProduct<'_, FiniteGroup>,
    text: &str,
) -> anyhow::Result<onerel::freeprod::FreeProdElement<usize>> {
    let mut syl = Vec::new();
    for tok in text.split_whitespace() {
        if tok == "t" {
            syl.push(FpSyllable::T(1));
        } else if let Some(k) = tok.strip_prefix("t^") {
            syl.push(FpSyllable::T(k.parse().with_context(|| format!("exponent in {tok:?}"))?));
        } else {
            syl.push(FpSyllable::H(fp.h.element(tok)?));
        }
    }
    Ok(fp.from_syllables(syl))
}

fn group_presentation(spec: &str) -> anyhow::Result<GroupPresentation> {
    Ok(match spec {
        "headline" => headline_group(),
        "free" => GroupPresentation::new(Alphabet::new(["a", "z"])?, vec![Word::empty()])?,
        path => read_json(Path::new(path))?,
    })
}

fn verdict_text(v: &Verdict) -> String {
    match v {
        Verdict::Equal { round } => format!("equal (round {round})"),
        Verdict::Unknown { reason } => format!("unknown: {reason}"),
    }
}

pub fn run(cfg: &Config, cmd: Command) -> anyhow::Result<Output> {
    match cmd {
        Command::Reduce { word: w } => {
            let r = reduce(&word(&w, None)?);
            Ok(Output::ok(r.to_string(), json!({ "reduced": r })))
        }
        Command::Inv { word: w } => {
            let r = formal_inverse(&word(&w, None)?);
            Ok(Output::ok(r.to_string(), json!({ "inverse": r })))
        }
        Command::Prefixes { word: w } => {
            let ps = prefixes(&word(&w, None)?);
            let text = ps.iter().map(Word::to_string).collect::<Vec<_>>().join("\n");
            Ok(Output::ok(text, json!({ "prefixes": ps })))
        }
        Command::FimEq { u, v } => {
            let (u, v) = (word(&u, None)?, word(&v, None)?);
            let eq = fim_equal(&u, &v);
            Ok(Output::verdict(eq, if eq { "equal" } else { "not equal" }, json!({ "equal": eq })))
        }
        Command::Munn { word: w, dot } => {
            let t = munn_tree(&word(&w, None)?);
            let g = t.graph();
            let mut text = format!("{} nodes, {} edges", g.vertex_count(), g.edge_count());
            let mut j = json!({ "vertices": g.vertex_count(), "edges": g.edge_count(), "start": g.start(), "end": g.end() });
            if let Some(p) = dot {
                let path = write_file(cfg, &p, &g.to_dot("munn"))?;
                text.push_str(&format!("\nwrote {path}"));
                j["dot"] = json!(path);
            }
            Ok(Output::ok(text, j))
        }
        Command::Stephen { presentation, u, v, budget: opts, trace, dot_dir } => {
            let p: InvPresentation = read_json(&presentation)?;
            let (u, v) = (word(&u, Some(&p.alphabet))?, word(&v, Some(&p.alphabet))?);
            let mut sc = budget(cfg, &opts);
            sc.keep_graphs = dot_dir.is_some();
            let report = stephen_report(&p, &u, &v, &sc)?;
            let mut text = verdict_text(&report.verdict);
            if trace {
                for (i, t) in report.towers.iter().enumerate() {
                    text.push_str(&format!("\ntower {i}: read {} in approximants of {}", t.target, t.base));
                    for r in &t.rows {
                        text.push_str(&format!(
                            "\n  round {:>3}: {:>6} vertices {:>6} edges{}",
                            r.round,
                            r.vertices,
                            r.edges,
                            if r.readable { "  readable" } else { "" }
                        ));
                    }
                    text.push_str(&format!("\n  stop: {}", t.stop));
                }
            }
            if let Some(dir) = dot_dir {
                for (i, t) in report.towers.iter().enumerate() {
                    for (k, g) in t.graphs.iter().enumerate() {
                        write_file(cfg, &dir.join(format!("tower-{i}-round-{k:02}.dot")), &g.to_dot("approximant"))?;
                    }
                }
            }
            let j = json!({ "budget": sc.budget, "mode": sc.mode, "report": report });
            Ok(Output::verdict(report.verdict.is_equal(), text, j))
        }
        Command::RightInv { presentation, word: w, budget: opts } => {
            let p: InvPresentation = read_json(&presentation)?;
            let w = word(&w, Some(&p.alphabet))?;
            let sc = budget(cfg, &opts);
            let r = is_right_invertible_with(&p, &w, &sc)?;
            let yes = r == RightInvertible::Yes;
            Ok(Output::verdict(yes, if yes { "yes" } else { "unknown" }, json!({ "right_invertible": r, "budget": sc.budget })))
        }
        Command::PrefixGens { presentation } => {
            let p: InvPresentation = read_json(&presentation)?;
            let gens = prefix_generators(&p)?;
            let text = gens.iter().map(Word::to_string).collect::<Vec<_>>().join("\n");
            Ok(Output::ok(text, json!({ "prefix_generators": gens })))
        }
        Command::RaagNf { word: w, graph: g } => {
            let g = graph(&g)?;
            let nf = raag_normal_form(&g, &word(&w, Some(g.vertices()))?)?;
            Ok(Output::ok(nf.word.to_string(), json!({ "normal_form": nf.word, "support": nf.support() })))
        }
        Command::RaagEq { u, v, graph: g } => {
            let g = graph(&g)?;
            let eq = raag_equal(&g, &word(&u, Some(g.vertices()))?, &word(&v, Some(g.vertices()))?)?;
            Ok(Output::verdict(eq, if eq { "equal" } else { "not equal" }, json!({ "equal": eq })))
        }
        Command::Parabolic { word: w, delta, graph: g } => {
            let g = graph(&g)?;
            let delta: Vec<&str> = delta.iter().map(String::as_str).collect();
            let r = parabolic_membership(&g, &delta, &word(&w, Some(g.vertices()))?)?;
            let text = match &r {
                Some(nf) => format!("member: {nf}"),
                None => "not a member".into(),
            };
            Ok(Output::verdict(r.is_some(), text, json!({ "member": r.is_some(), "normal_form": r })))
        }
        Command::HnnWp { word: w, hnn } => {
            let h: HnnPresentation = match hnn {
                Some(p) => read_json(&p)?,
                None => p4_instance(),
            };
            let f = britton_reduce(&h, &word(&w, Some(h.alphabet()))?)?;
            let trivial = f.is_identity();
            let text = format!("{}\n{f}", if trivial { "trivial" } else { "nontrivial" });
            Ok(Output::verdict(trivial, text, json!({ "trivial": trivial, "reduced": f.to_word(h.stable()) })))
        }
        Command::Theta { word: w } => {
            let g = SimpGraph::p4();
            let img = theta_embed(&word(&w, Some(g.vertices()))?)?;
            Ok(Output::ok(img.to_string(), json!({ "image": img })))
        }
        Command::OneRelatorWp { word: w } => {
            let a = Alphabet::new(["a", "z"])?;
            let trivial = one_relator_wp(&word(&w, Some(&a))?)?;
            Ok(Output::verdict(trivial, if trivial { "trivial" } else { "nontrivial" }, json!({ "trivial": trivial })))
        }
        Command::FpMul { x, y, group } => {
            let h = finite_group(&group)?;
            let fp = FreeProduct::new(&h);
            let p = fp.multiply(&fp_element(&fp, &x)?, &fp_element(&fp, &y)?);
            let text = format!("{}\nlength {}, theta t^{}", fp.describe(&p), fp_length(&p), theta_to_fgt(&p));
            Ok(Output::ok(
                text,
                json!({ "product": fp.describe(&p), "length": fp_length(&p), "theta": theta_to_fgt(&p) }),
            ))
        }
        Command::KeyClaim { h, w, group, max_factors } => {
            let g = finite_group(&group)?;
            let wset = w.iter().map(|n| g.element(n)).collect::<Result<Vec<_>, _>>()?;
            let r = key_claim_check(&g, &wset, g.element(&h)?, max_factors.unwrap_or(g.order()))?;
            let text = format!(
                "h in T: {}; tht^-1 in S: {}; agree: {}",
                r.h_in_t,
                if r.conj_in_s.is_yes() { "found" } else { "not found" },
                r.agree
            );
            Ok(Output::verdict(r.agree, text, serde_json::to_value(&r)?))
        }
        Command::Construct { group, wset, stable, form, out, instance_out } => {
            let g = group_presentation(&group)?;
            let srcs: Vec<WordSrc> = read_json(&wset)?;
            let ws = srcs.iter().map(|s| s.resolve(Some(&g.alphabet))).collect::<Result<Vec<_>, _>>()?;
            let mut ci = ConstructionInstance::new(g, ws, &stable)?;
            if group == "headline" {
                ci.note = Some(onerel::construct::HEADLINE_NOTE.to_string());
            }
            let dagger = build_presentation(&ci)?;
            let p = match form {
                Form::Dagger => dagger,
                Form::Split => equivalent_presentations(&dagger)?.swap_remove(0),
                Form::Expanded => equivalent_presentations(&dagger)?.swap_remove(1),
            };
            let mut text = p.to_string();
            if let Some(path) = out {
                text.push_str(&format!("\nwrote {}", write_file(cfg, &path, &serde_json::to_string_pretty(&p)?)?));
            }
            if let Some(path) = instance_out {
                text.push_str(&format!("\nwrote {}", write_file(cfg, &path, &serde_json::to_string_pretty(&ci)?)?));
            }
            Ok(Output::ok(text, json!({ "instance": ci, "presentation": p })))
        }
        Command::MemberQuery { instance, u, budget: b, run, frugal_expansion, out } => {
            let ci: ConstructionInstance = read_json(&instance)?;
            let u = word(&u, Some(&ci.group.alphabet))?;
            let bundle = membership_query(&ci, &u)?;
            let mut text = format!(
                "probe: {}\ninstance: {} = 1\nsemantics: {}",
                bundle.probe, bundle.wp_instance.lhs, bundle.semantics
            );
            let mut j = json!({ "bundle": bundle });
            if let Some(path) = out {
                text.push_str(&format!("\nwrote {}", write_file(cfg, &path, &serde_json::to_string_pretty(&bundle)?)?));
            }
            let mut code = 0;
            if b.is_some() || run || u.is_empty() {
                let sc = StephenConfig {
                    budget: b.unwrap_or(cfg.default_budget),
                    mode: cfg.mode(frugal_expansion),
                    keep_graphs: false,
                };
                let r = is_right_invertible_with(&bundle.presentation, &bundle.probe, &sc)?;
                let yes = r == RightInvertible::Yes;
                text.push_str(&format!("\nright-invertible: {}", if yes { "yes" } else { "unknown" }));
                j["right_invertible"] = json!(r);
                j["budget"] = json!(sc.budget);
                code = if yes { 0 } else { 1 };
            }
            Ok(Output { text, json: j, code })
        }
        Command::Certify { instance, u, factors, out } => {
            let ci: ConstructionInstance = read_json(&instance)?;
            let u = word(&u, Some(&ci.group.alphabet))?;
            let oracle = bundled_oracle(&ci.group);
            let cert = forward_certificate(&ci, &u, &factors, oracle.as_deref())?;
            let valid = cert.validity == Validity::Valid;
            let mut text = if valid {
                format!("valid: {} is right invertible", cert.probe)
            } else {
                "invalid".to_string()
            };
            if let Some(path) = out {
                text.push_str(&format!("\nwrote {}", write_file(cfg, &path, &serde_json::to_string_pretty(&cert)?)?));
            }
            Ok(Output::verdict(valid, text, serde_json::to_value(&cert)?))
        }
        Command::Suite { out, only } => {
            let dir = cfg.out_path(&out.unwrap_or_else(|| "onerel-suite".into()));
            let reports = match only {
                Some(id) => {
                    let r = run_criterion(id).with_context(|| format!("no criterion {id} (choose 1 to 9)"))?;
                    write_artifacts(std::slice::from_ref(&r), &dir)?;
                    vec![r]
                }
                None => run_suite(&dir)?,
            };
            let ok = reports.iter().all(|r| r.ok());
            let mut text = reports.iter().map(|r| r.line()).collect::<Vec<_>>().join("\n");
            text.push_str(&format!("\nartifacts in {}", dir.display()));
            let j = json!({
                "artifacts": dir.display().to_string(),
                "criteria": reports.iter().map(|r| json!({
                    "id": r.id,
                    "title": r.title,
                    "passed": r.ok(),
                    "summary": r.summary,
                    "seconds": r.elapsed.as_secs_f64(),
                })).collect::<Vec<_>>(),
            });
            Ok(Output::verdict(ok, text, j))
        }
    }
}
