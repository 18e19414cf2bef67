//! The acceptance checks as library functions, shared by the integration
//! tests and the command line. Reports serialize without timings, so two runs
//! write byte-identical artifacts.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::construct::{
    build_presentation, bundled_oracle, equivalent_presentations, forward_certificate, headline_instance,
    max_group_consistency, toy_free_instance, Validity,
};
use crate::error::{Error, Result};
use crate::freeprod::{ideal_complement_check, key_claim_all, FiniteGroup};
use crate::hnn::{
    eliminated_relators, hnn_is_trivial, one_relator, one_relator_wp, p4_instance, verify_embedding_pairs,
    verify_embedding_sample, verify_isomorphism,
};
use crate::munn::{fim_equal, munn_tree, VagnerOracle};
use crate::oracle::{bicyclic_equal, bicyclic_word, RaagBfsOracle};
use crate::presentation::InvPresentation;
use crate::raag::{normal_form_syms, raag_equal, SimpGraph};
use crate::stephen::{
    is_right_invertible, prefix_generators, stephen_equal, stephen_report, Budget, RightInvertible, StephenConfig,
    Verdict,
};
use crate::words::{all_words, formal_inverse, parse_word, reduce, w, Alphabet, Letter, Sym, Word};

pub const SEED: u64 = 0x5eed_0001;

/// Budget for the forward-direction probes of the construction.
pub const PROBE_BUDGET: Budget = Budget { max_rounds: 8, max_vertices: 20_000 };
/// Budget under which `a⁻¹` must stay unproved.
pub const CONTRAPOSITIVE_BUDGET: Budget = Budget { max_rounds: 20, max_vertices: 20_000 };
pub const BICYCLIC_BUDGET: Budget = Budget { max_rounds: 15, max_vertices: 5_000 };
pub const EQUIVALENCE_BUDGET: Budget = Budget { max_rounds: 10, max_vertices: 20_000 };
pub const PREFIX_BUDGET: Budget = Budget { max_rounds: 8, max_vertices: 20_000 };

#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub id: u32,
    pub title: String,
    pub passed: bool,
    pub summary: String,
    pub details: Value,
    /// Extra files (name, contents) written next to the report.
    #[serde(skip)]
    pub artifacts: Vec<(String, String)>,
    #[serde(skip)]
    pub elapsed: Duration,
    #[serde(skip)]
    pub limit: Option<Duration>,
}

impl CriterionReport {
    pub fn within_limit(&self) -> bool {
        self.limit.is_none_or(|l| self.elapsed <= l)
    }

    pub fn ok(&self) -> bool {
        self.passed && self.within_limit()
    }

    pub fn line(&self) -> String {
        let limit = self.limit.map(|l| format!(" of {}s", l.as_secs())).unwrap_or_default();
        format!(
            "criterion {:>2} {} [{:.2}s{}] {}: {}",
            self.id,
            if self.ok() { "PASS" } else { "FAIL" },
            self.elapsed.as_secs_f64(),
            limit,
            self.title,
            self.summary
        )
    }
}

struct Outcome {
    passed: bool,
    summary: String,
    details: Value,
    artifacts: Vec<(String, String)>,
}

impl Outcome {
    fn new(passed: bool, summary: String, details: Value) -> Outcome {
        Outcome { passed, summary, details, artifacts: Vec::new() }
    }
}

fn timed(id: u32, title: &str, limit_secs: Option<u64>, f: impl FnOnce() -> Result<Outcome>) -> CriterionReport {
    let start = Instant::now();
    let out = f();
    let elapsed = start.elapsed();
    let limit = limit_secs.map(Duration::from_secs);
    match out {
        Ok(o) => CriterionReport {
            id,
            title: title.into(),
            passed: o.passed,
            summary: o.summary,
            details: o.details,
            artifacts: o.artifacts,
            elapsed,
            limit,
        },
        Err(e) => CriterionReport {
            id,
            title: title.into(),
            passed: false,
            summary: format!("error: {e}"),
            details: json!({ "error": e.to_string() }),
            artifacts: Vec::new(),
            elapsed,
            limit,
        },
    }
}

fn s(w: &Word) -> String {
    w.to_string()
}

pub fn criterion_1() -> CriterionReport {
    timed(1, "Munn trees agree with the Vagner congruence", Some(60), || {
        let mut sweeps = Vec::new();
        let mut total = 0usize;
        let mut bad_total = 0usize;
        for (names, max_len) in [(&["a"][..], 6usize), (&["a", "z"][..], 4)] {
            let alphabet = Alphabet::new(names)?;
            let words = all_words(&alphabet, max_len);
            let radius = 2 * max_len + 4;
            let mut oracle = VagnerOracle::new(alphabet);
            let (mut pairs, mut equal) = (0usize, 0usize);
            let mut bad = Vec::new();
            for u in &words {
                for v in &words {
                    pairs += 1;
                    let m = fim_equal(u, v);
                    let o = oracle.equivalent(u, v, radius)?;
                    equal += m as usize;
                    if m != o {
                        bad.push(json!([s(u), s(v), m, o]));
                    }
                }
            }
            total += pairs;
            bad_total += bad.len();
            sweeps.push(json!({
                "alphabet": names,
                "max_len": max_len,
                "radius": radius,
                "words": words.len(),
                "ordered_pairs": pairs,
                "equal_pairs": equal,
                "disagreements": bad.len(),
                "examples": bad.into_iter().take(10).collect::<Vec<_>>(),
            }));
        }
        let mut o = Outcome::new(
            bad_total == 0,
            format!("{bad_total} disagreements over {total} ordered pairs"),
            json!({ "sweeps": sweeps }),
        );
        o.artifacts.push(("munn-aAz.dot".into(), munn_tree(&w("aAz")).graph().to_dot("munn")));
        Ok(o)
    })
}

/// A random word with bicyclic normal form `(m, n)`: the normal form with a
/// few `aa⁻¹` factors inserted.
fn bicyclic_sample(rng: &mut ChaCha8Rng, m: usize, n: usize) -> Word {
    let mut letters = bicyclic_word(m, n).0;
    for _ in 0..rng.gen_range(0..=2) {
        let at = rng.gen_range(0..=letters.len());
        letters.splice(at..at, [Letter::pos("a"), Letter::neg("a")]);
    }
    Word(letters)
}

pub fn criterion_2() -> CriterionReport {
    timed(2, "Stephen's procedure on the bicyclic monoid", Some(120), || {
        let p = InvPresentation::bicyclic();
        let first = stephen_equal(&p, &w("aA"), &Word::empty(), Budget::new(3, 5_000))?;
        let first_ok = matches!(first, Verdict::Equal { round } if round <= 3);
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        let mut rows = Vec::new();
        let (mut proved, mut unproved, mut unequal, mut false_equal) = (0, 0, 0, 0);
        for i in 0..200 {
            let (u, v) = if i % 2 == 0 {
                let (m, n) = (rng.gen_range(0..=5), rng.gen_range(0..=5));
                (bicyclic_sample(&mut rng, m, n), bicyclic_sample(&mut rng, m, n))
            } else {
                let (m1, n1, m2, n2) =
                    (rng.gen_range(0..=5), rng.gen_range(0..=5), rng.gen_range(0..=5), rng.gen_range(0..=5));
                (bicyclic_sample(&mut rng, m1, n1), bicyclic_sample(&mut rng, m2, n2))
            };
            let label = bicyclic_equal(&u, &v)?;
            let verdict = stephen_equal(&p, &u, &v, BICYCLIC_BUDGET)?;
            match (label, verdict.is_equal()) {
                (true, true) => proved += 1,
                (true, false) => unproved += 1,
                (false, true) => false_equal += 1,
                (false, false) => unequal += 1,
            }
            rows.push(json!({ "u": s(&u), "v": s(&v), "oracle_equal": label, "verdict": verdict }));
        }
        Ok(Outcome::new(
            first_ok && false_equal == 0,
            format!(
                "aa^-1 = 1 proved: {first_ok}; {proved} equal pairs proved, {unproved} unproved, \
                 {unequal} unequal pairs never proved, {false_equal} false Equal"
            ),
            json!({
                "aa_inverse_verdict": first,
                "budget": BICYCLIC_BUDGET,
                "proved": proved,
                "equal_unproved": unproved,
                "unequal": unequal,
                "false_equal": false_equal,
                "pairs": rows,
            }),
        ))
    })
}

fn random_syms(rng: &mut ChaCha8Rng, nsym: u32, len: usize) -> Vec<Sym> {
    (0..len).map(|_| Sym(rng.gen_range(0..nsym))).collect()
}

pub fn criterion_3() -> CriterionReport {
    timed(3, "RAAG normal form agrees with brute-force equivalence", Some(120), || {
        let g = SimpGraph::p4();
        let alphabet = g.vertices().clone();
        let nsym = alphabet.sym_count() as u32;

        let oracle = RaagBfsOracle::new(&g, 7)?;
        let words = all_words(&alphabet, 5);
        let mut nf_class: BTreeMap<Vec<Sym>, u32> = BTreeMap::new();
        let mut class_nf: BTreeMap<u32, Vec<Sym>> = BTreeMap::new();
        let mut conflicts = Vec::new();
        for u in &words {
            let syms = alphabet.encode(u)?;
            let nf = normal_form_syms(&g, &syms);
            let c = oracle.class_syms(&syms).expect("within horizon");
            let a = *nf_class.entry(nf.clone()).or_insert(c);
            let b = class_nf.entry(c).or_insert_with(|| nf.clone()).clone();
            if a != c || b != nf {
                conflicts.push(s(u));
            }
        }
        let n = words.len();
        let exhaustive = json!({
            "max_len": 5,
            "horizon": oracle.horizon(),
            "words": n,
            "unordered_pairs": n * (n - 1) / 2,
            "classes": class_nf.len(),
            "disagreements": conflicts.len(),
            "examples": conflicts.iter().take(10).collect::<Vec<_>>(),
        });
        drop(oracle);

        let oracle = RaagBfsOracle::new(&g, 8)?;
        let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 3);
        let (mut equal, mut bad) = (0usize, Vec::new());
        for i in 0..1000 {
            let (u, v) = match i % 3 {
                0 => (random_syms(&mut rng, nsym, 6), random_syms(&mut rng, nsym, 6)),
                1 => {
                    let u = random_syms(&mut rng, nsym, 6);
                    let mut v = u.clone();
                    for _ in 0..6 {
                        let k = rng.gen_range(0..5);
                        if v[k].gen() != v[k + 1].gen() && g.commute(v[k].gen(), v[k + 1].gen()) {
                            v.swap(k, k + 1);
                        }
                    }
                    (u, v)
                }
                _ => {
                    let base = random_syms(&mut rng, nsym, 4);
                    let mut pad = || {
                        let x = Sym(rng.gen_range(0..nsym));
                        let at = rng.gen_range(0..=4);
                        let mut y = base.clone();
                        y.splice(at..at, [x, x.inverse()]);
                        y
                    };
                    (pad(), pad())
                }
            };
            let (u, v) = (alphabet.decode(&u), alphabet.decode(&v));
            let nf = raag_equal(&g, &u, &v)?;
            let bfs = oracle.equal(&u, &v)?.expect("within horizon");
            equal += nf as usize;
            if nf != bfs {
                bad.push(json!([s(&u), s(&v), nf, bfs]));
            }
        }
        let disagreements = conflicts.len() + bad.len();
        Ok(Outcome::new(
            disagreements == 0,
            format!("{disagreements} disagreements ({n} words up to length 5 exhaustively, 1000 sampled length-6 pairs)"),
            json!({
                "exhaustive": exhaustive,
                "sample": {
                    "pairs": 1000,
                    "length": 6,
                    "horizon": oracle.horizon(),
                    "equal_pairs": equal,
                    "disagreements": bad.len(),
                    "examples": bad.into_iter().take(10).collect::<Vec<_>>(),
                },
            }),
        ))
    })
}

pub fn criterion_4() -> CriterionReport {
    timed(4, "Embedding of A(P4) into A(P4, psi)", Some(60), || {
        let emb = verify_embedding_sample(4);
        let (pair_count, pair_failures) = verify_embedding_pairs(3);
        let h = p4_instance();
        let elim = eliminated_relators();
        let conjugates = [(0, 1), (1, 2)].map(|(i, j)| reduce(&elim[i].conjugate_by("t")) == reduce(&elim[j]));
        let trivial = elim.iter().map(|r| hnn_is_trivial(&h, r)).collect::<Result<Vec<bool>>>()?;
        let cases = emb.relator_images_trivial + emb.relator_images_failed + emb.normal_forms_checked + pair_count;
        let passed = emb.passed()
            && pair_failures.is_empty()
            && conjugates.iter().all(|&c| c)
            && trivial.iter().all(|&t| t)
            && cases >= 8_000;
        Ok(Outcome::new(
            passed,
            format!(
                "{} relator images trivial, {} of {} nontrivial normal forms map to nontrivial elements, \
                 {} injectivity pairs, {cases} cases",
                emb.relator_images_trivial,
                emb.nontrivial_images,
                emb.normal_forms_checked,
                pair_count - pair_failures.len()
            ),
            json!({
                "embedding": emb,
                "injectivity": {
                    "max_letters": 3,
                    "pairs": pair_count,
                    "failures": pair_failures.iter().map(|(u, v)| [s(u), s(v)]).collect::<Vec<_>>(),
                },
                "eliminated_relators": elim.iter().map(s).collect::<Vec<_>>(),
                "eliminated_trivial": trivial,
                "conjugation_by_t": conjugates,
                "cases": cases,
            }),
        ))
    })
}

pub fn criterion_5() -> CriterionReport {
    timed(5, "One-relator group word problem", Some(1), || {
        let r = one_relator();
        let relator_trivial = one_relator_wp(&r)?;
        let mut negatives = BTreeMap::new();
        for g in ["a", "z", "az", "zaZA"] {
            negatives.insert(s(&w(g)), one_relator_wp(&w(g))?);
        }
        let iso = verify_isomorphism();
        let passed = relator_trivial && negatives.values().all(|&t| !t) && iso.passed();
        Ok(Outcome::new(
            passed,
            format!(
                "relator trivial: {relator_trivial}; nontrivial words reported trivial: {}",
                negatives.values().filter(|&&t| t).count()
            ),
            json!({
                "relator": s(&r),
                "relator_trivial": relator_trivial,
                "others_trivial": negatives,
                "isomorphism": iso,
            }),
        ))
    })
}

pub fn criterion_6() -> CriterionReport {
    timed(6, "Free-product membership checks", Some(180), || {
        let groups = [("Z/2", FiniteGroup::cyclic(2)), ("Z/3", FiniteGroup::cyclic(3)), ("S3", FiniteGroup::symmetric3())];
        let mut rows = Vec::new();
        let mut passed = true;
        let mut checks = 0usize;
        for (name, g) in &groups {
            let n = g.order();
            let (mut agree, mut disagree, mut members) = (0usize, Vec::new(), 0usize);
            for mask in 0u32..(1 << n) {
                let wset: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                for r in key_claim_all(g, &wset, n)? {
                    checks += 1;
                    members += r.h_in_t as usize;
                    if r.agree {
                        agree += 1;
                    } else {
                        disagree.push(r);
                    }
                }
            }
            let ideal = ideal_complement_check(g, 1_000, 5, SEED)?;
            passed &= disagree.is_empty() && ideal.passed();
            rows.push(json!({
                "group": name,
                "order": n,
                "subsets": 1u32 << n,
                "key_claim_checks": agree + disagree.len(),
                "h_in_t": members,
                "disagreements": disagree,
                "ideal": ideal,
            }));
        }
        Ok(Outcome::new(
            passed,
            format!("{checks} key-claim checks over all W of Z/2, Z/3, S3; ideal characterization at 5 factors"),
            json!({ "groups": rows }),
        ))
    })
}

pub fn criterion_7() -> CriterionReport {
    timed(7, "Construction end to end (forward direction)", Some(600), || {
        let mut rows = Vec::new();
        let mut passed = true;
        let mut artifacts = Vec::new();
        for (label, ci) in
            [("free", toy_free_instance(vec![w("a")])?), ("headline", headline_instance(vec![w("a")])?)]
        {
            let p = build_presentation(&ci)?;
            let oracle = bundled_oracle(&ci.group).ok_or_else(|| Error::OracleMissing(ci.group.to_string()))?;
            for k in 0..=3 {
                let u = w("a").pow(k);
                let probe = ci.probe(&u)?;
                let keep = label == "headline" && k == 3;
                let cfg = StephenConfig { keep_graphs: keep, ..StephenConfig::new(PROBE_BUDGET) };
                let report = stephen_report(&p, &probe.concat(&formal_inverse(&probe)), &Word::empty(), &cfg)?;
                let cert = forward_certificate(&ci, &u, &vec![1; k], Some(oracle.as_ref()))?;
                let ok = report.verdict.is_equal() && cert.validity == Validity::Valid;
                passed &= ok;
                if keep {
                    if let Some(g) = report.towers[1].graphs.last() {
                        artifacts.push(("construct-headline-probe-a3.dot".to_string(), g.to_dot("approximant")));
                    }
                }
                rows.push(json!({
                    "instance": label,
                    "u": s(&u),
                    "probe": s(&probe),
                    "right_invertible": report.verdict,
                    "certificate": cert,
                }));
            }
            let u = w("A");
            let probe = ci.probe(&u)?;
            let verdict = is_right_invertible(&p, &probe, CONTRAPOSITIVE_BUDGET)?;
            // no power of a equals a⁻¹ in G
            let absent = (0..=8).map(|k| oracle.equal(&u, &w("a").pow(k))).collect::<Result<Vec<bool>>>()?;
            let ok = verdict == RightInvertible::Unknown && absent.iter().all(|&e| !e);
            passed &= ok;
            rows.push(json!({
                "instance": label,
                "u": s(&u),
                "probe": s(&probe),
                "right_invertible": verdict,
                "u_equals_a_power_up_to_8": absent.iter().any(|&e| e),
            }));
        }
        let mut o = Outcome::new(
            passed,
            "probes for 1, a, a^2, a^3 right invertible with valid certificates; a^-1 stays unknown".into(),
            json!({ "probe_budget": PROBE_BUDGET, "contrapositive_budget": CONTRAPOSITIVE_BUDGET, "rows": rows }),
        );
        o.artifacts = artifacts;
        Ok(o)
    })
}

/// Pairs equal in the toy monoid `Inv⟨a, z, t | e = 1⟩`, `W = {a}`.
pub const EQUIVALENCE_PAIRS: [(&str, &str); 20] = [
    ("aA", ""),
    ("Aa", ""),
    ("zZ", ""),
    ("Zz", ""),
    ("tT", ""),
    ("aAzZtaTtATAaZz", ""),
    ("taTtAT", ""),
    ("taaTtAAT", ""),
    ("aaAA", ""),
    ("aAz", "z"),
    ("zAa", "z"),
    ("atT", "a"),
    ("tTa", "a"),
    ("tTtT", ""),
    ("taTtATa", "a"),
    ("TtTt", "Tt"),
    ("TtaA", "Tt"),
    ("taTtATt", "t"),
    ("ZzTt", "Tt"),
    ("tzZT", ""),
];

/// Pairs no form should prove.
pub const EQUIVALENCE_CONTROLS: [(&str, &str); 3] = [("Tt", ""), ("A", "a"), ("taT", "tAT")];

pub fn criterion_8() -> CriterionReport {
    timed(8, "Equivalent presentations define the same monoid", Some(600), || {
        let ci = toy_free_instance(vec![w("a")])?;
        let dagger = build_presentation(&ci)?;
        let forms = equivalent_presentations(&dagger)?;
        let named = [("dagger", &dagger), ("split", &forms[0]), ("expanded", &forms[1])];
        let mut rows = Vec::new();
        let mut all_equal = 0usize;
        let mut consistent = true;
        let mut equal_pairs = Vec::new();
        for (list, expect) in [(&EQUIVALENCE_PAIRS[..], true), (&EQUIVALENCE_CONTROLS[..], false)] {
            for (x, y) in list {
                let u = parse_word(x, Some(&dagger.alphabet))?;
                let v = parse_word(y, Some(&dagger.alphabet))?;
                let mut verdicts = BTreeMap::new();
                for (name, p) in named {
                    verdicts.insert(name, stephen_equal(p, &u, &v, EQUIVALENCE_BUDGET)?);
                }
                let eq: Vec<bool> = verdicts.values().map(Verdict::is_equal).collect();
                let agree = eq.iter().all(|&e| e == eq[0]);
                consistent &= agree;
                if expect && eq.iter().all(|&e| e) {
                    all_equal += 1;
                    equal_pairs.push((u.clone(), v.clone()));
                }
                rows.push(json!({ "u": s(&u), "v": s(&v), "control": !expect, "forms_agree": agree, "verdicts": verdicts }));
            }
        }
        let consistency = max_group_consistency(&dagger, &equal_pairs, EQUIVALENCE_BUDGET)?;
        Ok(Outcome::new(
            all_equal == EQUIVALENCE_PAIRS.len() && consistent && consistency.violations == 0,
            format!(
                "{all_equal}/{} pairs equal under all three forms; forms agree on every pair: {consistent}; \
                 group-image violations: {}",
                EQUIVALENCE_PAIRS.len(),
                consistency.violations
            ),
            json!({
                "budget": EQUIVALENCE_BUDGET,
                "forms": named.iter().map(|(n, p)| json!({ "form": n, "presentation": p.to_string() })).collect::<Vec<_>>(),
                "rows": rows,
                "max_group_consistency": consistency,
            }),
        ))
    })
}

pub fn criterion_9() -> CriterionReport {
    timed(9, "Prefix generators are right units", Some(300), || {
        let mut rows = Vec::new();
        let mut passed = true;
        let headline = build_presentation(&headline_instance(vec![w("a")])?)?;
        for (label, p) in [("bicyclic", InvPresentation::bicyclic()), ("headline W={a}", headline)] {
            for g in prefix_generators(&p)? {
                let r = is_right_invertible(&p, &g, PREFIX_BUDGET)?;
                passed &= r == RightInvertible::Yes;
                rows.push(json!({ "presentation": label, "prefix": s(&g), "right_invertible": r }));
            }
        }
        Ok(Outcome::new(
            passed,
            format!("{} prefixes checked", rows.len()),
            json!({ "budget": PREFIX_BUDGET, "rows": rows }),
        ))
    })
}

/// Criteria 1 to 9 in order.
pub fn run_criteria() -> Vec<CriterionReport> {
    vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
    ]
}

pub fn run_criterion(id: u32) -> Option<CriterionReport> {
    Some(match id {
        1 => criterion_1(),
        2 => criterion_2(),
        3 => criterion_3(),
        4 => criterion_4(),
        5 => criterion_5(),
        6 => criterion_6(),
        7 => criterion_7(),
        8 => criterion_8(),
        9 => criterion_9(),
        _ => return None,
    })
}

fn pretty(v: &impl Serialize) -> Result<String> {
    let mut out = serde_json::to_string_pretty(v).map_err(|e| Error::Io(e.to_string()))?;
    out.push('\n');
    Ok(out)
}

/// Writes `criterion-NN.json`, each report's artifacts, and `summary.json`.
pub fn write_artifacts(reports: &[CriterionReport], dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    let mut put = |name: &str, contents: &str| -> Result<()> {
        let path = dir.join(name);
        std::fs::write(&path, contents)?;
        written.push(path);
        Ok(())
    };
    for r in reports {
        put(&format!("criterion-{:02}.json", r.id), &pretty(r)?)?;
        for (name, contents) in &r.artifacts {
            put(name, contents)?;
        }
    }
    let summary: Vec<Value> =
        reports.iter().map(|r| json!({ "id": r.id, "title": r.title, "passed": r.passed })).collect();
    put("summary.json", &pretty(&summary)?)?;
    Ok(written)
}

fn dir_contents(dir: &Path) -> Result<BTreeMap<String, Vec<u8>>> {
    let mut out = BTreeMap::new();
    for entry in std::fs::read_dir(dir)? {
        let entry = entry?;
        if entry.file_type()?.is_file() {
            out.insert(entry.file_name().to_string_lossy().into_owned(), std::fs::read(entry.path())?);
        }
    }
    Ok(out)
}

/// Runs criteria 1 to 9 twice into `out/run-1` and `out/run-2`, then adds
/// criterion 10 comparing the two directories byte for byte. Returns the
/// first run's reports followed by criterion 10, and writes `summary.json`
/// for all ten into `out`.
pub fn run_suite(out: &Path) -> Result<Vec<CriterionReport>> {
    let start = Instant::now();
    let first = run_criteria();
    write_artifacts(&first, &out.join("run-1"))?;
    let second = run_criteria();
    write_artifacts(&second, &out.join("run-2"))?;
    let a = dir_contents(&out.join("run-1"))?;
    let b = dir_contents(&out.join("run-2"))?;
    let names: Vec<&String> = a.keys().chain(b.keys()).collect::<std::collections::BTreeSet<_>>().into_iter().collect();
    let differing: Vec<&String> = names.iter().copied().filter(|n| a.get(*n) != b.get(*n)).collect();
    let bytes: usize = a.values().map(Vec::len).sum();
    let c10 = CriterionReport {
        id: 10,
        title: "Determinism of JSON and DOT outputs".into(),
        passed: differing.is_empty() && !a.is_empty(),
        summary: format!("{} files ({bytes} bytes) compared, {} differ", names.len(), differing.len()),
        details: json!({ "files": names, "differing": differing }),
        artifacts: Vec::new(),
        elapsed: start.elapsed(),
        limit: None,
    };
    let mut all = first;
    all.push(c10);
    let summary: Vec<Value> =
        all.iter().map(|r| json!({ "id": r.id, "title": r.title, "passed": r.passed })).collect();
    std::fs::write(out.join("summary.json"), pretty(&summary)?)?;
    Ok(all)
}
