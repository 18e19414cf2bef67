//! Budgeted semi-decision of the word problem in a finitely presented
//! inverse monoid by iterated expansion and folding of word graphs.
//!
//! The expansion rounds follow the approximation scheme from the literature
//! on Schützenberger graphs: starting from the Munn tree of `w`, every round
//! looks for paths labeled by one side of a relation and sews a parallel path
//! labeled by the other side, then folds. Every approximant maps onto the
//! Schützenberger graph of `w`, so a word read from start to end in some
//! approximant is above `[w]` in the natural order. This makes
//! [`Verdict::Equal`] conclusive; [`Verdict::Unknown`] carries no information.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Folder, WordGraph};
use crate::munn::munn_tree_in;
use crate::presentation::InvPresentation;
use crate::words::{formal_inverse, prefixes, Sym, Word};

pub use crate::presentation::{max_group_image, GroupPresentation, Relation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_rounds: usize,
    pub max_vertices: usize,
}

impl Budget {
    pub fn new(max_rounds: usize, max_vertices: usize) -> Budget {
        Budget { max_rounds, max_vertices: max_vertices.max(1) }
    }
}

impl Default for Budget {
    fn default() -> Budget {
        Budget { max_rounds: 12, max_vertices: 50_000 }
    }
}

/// Where loops for `1 → w` expansions are sewn.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExpansionMode {
    /// At every vertex.
    #[default]
    Full,
    /// Only at the start and end vertices.
    Frugal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Approximant {
    pub graph: WordGraph,
    pub round: usize,
}

impl Approximant {
    /// Round 0: the Munn tree of `w` over the presentation's alphabet.
    pub fn initial(pres: &InvPresentation, w: &Word) -> Result<Approximant> {
        Ok(Approximant { graph: munn_tree_in(&pres.alphabet, w)?.into_graph(), round: 0 })
    }
}

fn oriented(pres: &InvPresentation) -> Result<Vec<(Vec<Sym>, Vec<Sym>)>> {
    let mut out = Vec::with_capacity(2 * pres.relations.len());
    for r in &pres.relations {
        let l = pres.alphabet.encode(&r.lhs)?;
        let rr = pres.alphabet.encode(&r.rhs)?;
        if l == rr {
            continue;
        }
        out.push((l.clone(), rr.clone()));
        out.push((rr, l));
    }
    Ok(out)
}

/// One full round: for each relation in both orientations `(u, v)` and each
/// vertex `x` with a `u`-path to `y`, sew a `v`-path from `x` to `y`; then fold.
///
/// Fails with `BudgetExceeded` if the folded graph would exceed `max_vertices`
/// at any point during the round; the partial round is discarded.
pub fn expand_round(
    appr: &Approximant,
    pres: &InvPresentation,
    mode: ExpansionMode,
    max_vertices: usize,
) -> Result<Approximant> {
    let rels = oriented(pres)?;
    let g = &appr.graph;
    let mut f = Folder::from_graph(g);
    let (start, end) = (g.start() as u32, g.end() as u32);

    let mut plan: Vec<(u32, usize, u32)> = Vec::new();
    for x in 0..g.vertex_count() as u32 {
        for (k, (from, to)) in rels.iter().enumerate() {
            if from.is_empty() && mode == ExpansionMode::Frugal && x != start && x != end {
                continue;
            }
            if let Some(y) = f.walk(x, from) {
                if f.walk(x, to) != Some(y) {
                    plan.push((x, k, y));
                }
            }
        }
    }

    for (x, k, y) in plan {
        let to = &rels[k].1;
        let x = f.find(x);
        let y = f.find(y);
        if f.walk(x, to) == Some(y) {
            continue;
        }
        f.sew(x, to, y);
        if f.live() > max_vertices {
            return Err(Error::BudgetExceeded(format!(
                "approximant exceeded {max_vertices} vertices in round {}",
                appr.round + 1
            )));
        }
    }
    Ok(Approximant { graph: f.snapshot(&pres.alphabet, start, end), round: appr.round + 1 })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Verdict {
    Equal { round: usize },
    Unknown { reason: String },
}

impl Verdict {
    pub fn is_equal(&self) -> bool {
        matches!(self, Verdict::Equal { .. })
    }
}

/// Per-round record of one tower.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRow {
    pub round: usize,
    pub vertices: usize,
    pub edges: usize,
    pub readable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tower {
    /// Word whose approximants are built.
    pub base: Word,
    /// Word tested for readability.
    pub target: Word,
    pub rows: Vec<TraceRow>,
    pub proved_at: Option<usize>,
    pub stop: String,
    #[serde(skip)]
    pub graphs: Vec<WordGraph>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct StephenConfig {
    pub budget: Budget,
    pub mode: ExpansionMode,
    /// Keep every round's approximant (for DOT dumps).
    pub keep_graphs: bool,
}

impl StephenConfig {
    pub fn new(budget: Budget) -> StephenConfig {
        StephenConfig { budget, ..StephenConfig::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StephenReport {
    pub verdict: Verdict,
    pub towers: [Tower; 2],
}

/// Expands the approximants of `base` until `target` becomes readable from
/// start to end or the budget runs out.
pub fn run_tower(pres: &InvPresentation, base: &Word, target: &Word, cfg: &StephenConfig) -> Result<Tower> {
    let target_syms = pres.alphabet.encode(target)?;
    let mut appr = Approximant::initial(pres, base)?;
    let mut tower = Tower {
        base: base.clone(),
        target: target.clone(),
        rows: Vec::new(),
        proved_at: None,
        stop: String::new(),
        graphs: Vec::new(),
    };
    loop {
        let g = &appr.graph;
        let mut f = Folder::from_graph(g);
        let readable = f.walk(g.start() as u32, &target_syms) == Some(g.end() as u32);
        tower.rows.push(TraceRow {
            round: appr.round,
            vertices: g.vertex_count(),
            edges: g.edge_count(),
            readable,
        });
        if cfg.keep_graphs {
            tower.graphs.push(g.clone());
        }
        if readable {
            tower.proved_at = Some(appr.round);
            tower.stop = "readable".into();
            return Ok(tower);
        }
        if appr.round >= cfg.budget.max_rounds {
            tower.stop = format!("round budget {} exhausted", cfg.budget.max_rounds);
            return Ok(tower);
        }
        match expand_round(&appr, pres, cfg.mode, cfg.budget.max_vertices) {
            Ok(next) => appr = next,
            Err(Error::BudgetExceeded(msg)) => {
                tower.stop = msg;
                return Ok(tower);
            }
            Err(e) => return Err(e),
        }
    }
}

/// Runs both towers (concurrently) and reports the per-round trace.
pub fn stephen_report(pres: &InvPresentation, u: &Word, v: &Word, cfg: &StephenConfig) -> Result<StephenReport> {
    pres.alphabet.check(u)?;
    pres.alphabet.check(v)?;
    let (tu, tv) = std::thread::scope(|s| {
        let hu = s.spawn(|| run_tower(pres, u, v, cfg));
        let tv = run_tower(pres, v, u, cfg);
        (hu.join().expect("tower thread panicked"), tv)
    });
    let (tu, tv) = (tu?, tv?);
    let verdict = match (tu.proved_at, tv.proved_at) {
        (Some(a), Some(b)) => Verdict::Equal { round: a.max(b) },
        _ => {
            let reason = [&tu, &tv]
                .iter()
                .filter(|t| t.proved_at.is_none())
                .map(|t| format!("{} in approximant of {}: {}", t.target, t.base, t.stop))
                .collect::<Vec<_>>()
                .join("; ");
            Verdict::Unknown { reason }
        }
    };
    Ok(StephenReport { verdict, towers: [tu, tv] })
}

/// Sound semi-decision of `[u]_M = [v]_M`.
pub fn stephen_equal(pres: &InvPresentation, u: &Word, v: &Word, budget: Budget) -> Result<Verdict> {
    Ok(stephen_report(pres, u, v, &StephenConfig::new(budget))?.verdict)
}

pub fn stephen_equal_with(pres: &InvPresentation, u: &Word, v: &Word, cfg: &StephenConfig) -> Result<Verdict> {
    Ok(stephen_report(pres, u, v, cfg)?.verdict)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RightInvertible {
    Yes,
    Unknown,
}

/// `[w]` is right invertible iff `[ww⁻¹] = 1`.
pub fn is_right_invertible(pres: &InvPresentation, w: &Word, budget: Budget) -> Result<RightInvertible> {
    is_right_invertible_with(pres, w, &StephenConfig::new(budget))
}

pub fn is_right_invertible_with(
    pres: &InvPresentation,
    w: &Word,
    cfg: &StephenConfig,
) -> Result<RightInvertible> {
    let ww = w.concat(&formal_inverse(w));
    Ok(match stephen_equal_with(pres, &ww, &Word::empty(), cfg)? {
        Verdict::Equal { .. } => RightInvertible::Yes,
        Verdict::Unknown { .. } => RightInvertible::Unknown,
    })
}

/// Nonempty prefixes of the relators `rᵢ` of `Inv⟨A | rᵢ = 1⟩`, deduplicated
/// and ordered lexicographically by symbol order. Their images generate the
/// monoid of right units.
pub fn prefix_generators(pres: &InvPresentation) -> Result<Vec<Word>> {
    let mut keyed: Vec<(Vec<Sym>, Word)> = Vec::new();
    for (i, r) in pres.relations.iter().enumerate() {
        if !r.rhs.is_empty() {
            return Err(Error::NotSpecialPresentation(i));
        }
        for p in prefixes(&r.lhs).into_iter().skip(1) {
            keyed.push((pres.alphabet.encode(&p)?, p));
        }
    }
    keyed.sort();
    keyed.dedup_by(|a, b| a.0 == b.0);
    Ok(keyed.into_iter().map(|(_, p)| p).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::munn::fim_equal;
    use crate::words::{w, Alphabet};

    fn free_az() -> InvPresentation {
        InvPresentation::free(Alphabet::new(["a", "z"]).unwrap())
    }

    #[test]
    fn expand_round_bicyclic_example() {
        let pres = InvPresentation::bicyclic();
        let appr = Approximant::initial(&pres, &w("aA")).unwrap();
        assert_eq!(appr.graph.vertex_count(), 2);
        let next = expand_round(&appr, &pres, ExpansionMode::Full, 100).unwrap();
        assert_eq!(next.round, 1);
        assert_eq!(next.graph.vertex_count(), 3);
        // both original vertices now have an outgoing a-edge
        assert!(next.graph.walk(0, &w("a")).is_some());
        assert!(next.graph.walk(1, &w("a")).is_some());
        assert_eq!(next.graph.start(), next.graph.end());
    }

    #[test]
    fn expand_round_without_relations_only_counts() {
        let pres = free_az();
        let appr = Approximant::initial(&pres, &w("azZ")).unwrap();
        let next = expand_round(&appr, &pres, ExpansionMode::Full, 100).unwrap();
        assert_eq!(next.graph, appr.graph);
        assert_eq!(next.round, 1);
    }

    #[test]
    fn trivial_relation_changes_nothing() {
        let pres = InvPresentation::new(Alphabet::new(["a"]).unwrap(), vec![Relation::new(w("a"), w("a"))]).unwrap();
        let appr = Approximant::initial(&pres, &w("aaA")).unwrap();
        let next = expand_round(&appr, &pres, ExpansionMode::Full, 100).unwrap();
        assert_eq!(next.graph, appr.graph);
    }

    #[test]
    fn input_maps_into_output() {
        let pres = InvPresentation::bicyclic();
        let mut appr = Approximant::initial(&pres, &w("AAaa")).unwrap();
        for _ in 0..4 {
            let next = expand_round(&appr, &pres, ExpansionMode::Full, 1000).unwrap();
            // every word readable start->end before stays readable
            for s in ["AAaa", "AaAa", "AAaaAa", "aA"] {
                if appr.graph.accepts(&w(s)) {
                    assert!(next.graph.accepts(&w(s)), "{s}");
                }
            }
            appr = next;
        }
    }

    #[test]
    fn vertex_cap_is_reported() {
        let pres = InvPresentation::bicyclic();
        let appr = Approximant::initial(&pres, &w("A")).unwrap();
        assert!(matches!(
            expand_round(&appr, &pres, ExpansionMode::Full, 2),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn bicyclic_examples() {
        let pres = InvPresentation::bicyclic();
        let v = stephen_equal(&pres, &w("aA"), &Word::empty(), Budget::new(2, 100)).unwrap();
        assert!(matches!(v, Verdict::Equal { round } if round <= 2));
        let v = stephen_equal(&pres, &w("Aa"), &Word::empty(), Budget::new(12, 10_000)).unwrap();
        assert!(!v.is_equal());
    }

    #[test]
    fn free_equal_at_round_zero() {
        let pres = InvPresentation::free(Alphabet::new(["a"]).unwrap());
        let v = stephen_equal(&pres, &w("aAa"), &w("a"), Budget::new(0, 10)).unwrap();
        assert_eq!(v, Verdict::Equal { round: 0 });
    }

    #[test]
    fn free_presentation_matches_munn() {
        let pres = free_az();
        let words = ["", "a", "aA", "Aa", "aAa", "azZ", "zZa", "aAzZ", "zZaA", "aZzA"];
        for u in words {
            for v in words {
                let verdict = stephen_equal(&pres, &w(u), &w(v), Budget::new(3, 100)).unwrap();
                assert_eq!(verdict.is_equal(), fim_equal(&w(u), &w(v)), "{u} vs {v}");
                if verdict.is_equal() {
                    assert_eq!(verdict, Verdict::Equal { round: 0 });
                }
            }
        }
    }

    #[test]
    fn right_invertibility_examples() {
        let b = Budget::new(4, 1000);
        assert_eq!(is_right_invertible(&InvPresentation::bicyclic(), &w("a"), b).unwrap(), RightInvertible::Yes);
        let free = InvPresentation::free(Alphabet::new(["a"]).unwrap());
        assert_eq!(is_right_invertible(&free, &Word::empty(), b).unwrap(), RightInvertible::Yes);
        assert_eq!(is_right_invertible(&free, &w("a"), b).unwrap(), RightInvertible::Unknown);
    }

    #[test]
    fn prefix_generator_examples() {
        assert_eq!(prefix_generators(&InvPresentation::bicyclic()).unwrap(), vec![w("a"), w("aA")]);
        let p = InvPresentation::special(Alphabet::new(["a", "z"]).unwrap(), vec![w("az"), w("za")]).unwrap();
        assert_eq!(prefix_generators(&p).unwrap(), vec![w("a"), w("az"), w("z"), w("za")]);
        let mixed = InvPresentation::new(Alphabet::new(["a"]).unwrap(), vec![Relation::new(w("a"), w("aa"))]).unwrap();
        assert_eq!(prefix_generators(&mixed), Err(Error::NotSpecialPresentation(0)));
    }

    #[test]
    fn frugal_mode_is_still_sound_and_proves_bicyclic() {
        let pres = InvPresentation::bicyclic();
        let cfg = StephenConfig { budget: Budget::new(3, 100), mode: ExpansionMode::Frugal, keep_graphs: true };
        let r = stephen_report(&pres, &w("aA"), &Word::empty(), &cfg).unwrap();
        assert!(r.verdict.is_equal());
        assert_eq!(r.towers[1].graphs.len(), r.towers[1].rows.len());
        let r = stephen_report(&pres, &w("Aa"), &Word::empty(), &cfg).unwrap();
        assert!(!r.verdict.is_equal());
    }

    #[test]
    fn readability_is_monotone_across_rounds() {
        let pres = InvPresentation::bicyclic();
        let samples = ["", "aA", "aAaA", "a", "A", "aaAA", "AaaA"];
        let mut appr = Approximant::initial(&pres, &w("aA")).unwrap();
        let mut readable: Vec<bool> = samples.iter().map(|s| appr.graph.accepts(&w(s))).collect();
        for _ in 0..5 {
            appr = expand_round(&appr, &pres, ExpansionMode::Full, 1000).unwrap();
            for (i, s) in samples.iter().enumerate() {
                let now = appr.graph.accepts(&w(s));
                assert!(now || !readable[i], "{s} stopped being readable");
                readable[i] = now;
            }
        }
    }
}
