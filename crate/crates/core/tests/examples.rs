//! Worked examples exercised through the public API only.

use onerel::construct::{
    build_presentation, equivalent_presentations, forward_certificate, headline_instance, membership_query,
    probe_right_invertible, toy_free_instance, ConstructionInstance, FreeGroupWp, Validity,
};
use onerel::freeprod::{fp_length, key_claim_check, theta_to_fgt, FiniteGroup, FpSyllable, FreeProduct};
use onerel::hnn::{britton_reduce, hnn_equal, hnn_is_trivial, one_relator_wp, p4_instance, theta_embed};
use onerel::munn::{fim_equal, fim_leq, munn_tree, vagner_oracle};
use onerel::raag::{induced_subgraph, parabolic_membership, raag_equal, raag_normal_form, SimpGraph};
use onerel::stephen::{is_right_invertible, prefix_generators, stephen_equal, Budget, RightInvertible, Verdict};
use onerel::words::{formal_inverse, idempotent_word, is_idempotent_word, parse_word, prefixes, reduce};
use onerel::{fold, Alphabet, GroupPresentation, InvPresentation, WordGraph, Word};

fn p(s: &str) -> Word {
    parse_word(s, None).unwrap()
}

fn budget() -> Budget {
    Budget::new(12, 20_000)
}

#[test]
fn free_reduction_and_inverses() {
    assert_eq!(reduce(&p("a A z")), p("z"));
    let r = p("a z a Z A z A Z");
    assert_eq!(reduce(&r), r);
    assert_eq!(formal_inverse(&p("a z")), p("Z A"));
    assert_eq!(formal_inverse(&p("A")), p("a"));
    assert_eq!(prefixes(&p("a A")), vec![Word::empty(), p("a"), p("a A")]);
    assert!(is_idempotent_word(&p("a A z Z")));
    assert!(!is_idempotent_word(&p("a")));
    assert_eq!(idempotent_word(&[p("t a T")]).unwrap(), p("t a T t A T"));
}

#[test]
fn munn_trees_decide_the_free_inverse_monoid() {
    let t = munn_tree(&p("a A z"));
    assert_eq!(t.graph().vertex_count(), 3);
    assert_ne!(t.graph().start(), t.graph().end());
    assert!(fim_equal(&p("a A a"), &p("a")));
    assert!(fim_equal(&p("a A z Z"), &p("z Z a A")));
    assert!(!fim_equal(&p("a A"), &p("A a")));
    assert!(!vagner_oracle(&p("a A"), &p("A a"), 6).unwrap());
    assert!(fim_leq(&p("a A z"), &p("z")));
    assert!(!fim_leq(&p("z"), &p("a A z")));
}

#[test]
fn folding_paths() {
    let a = Alphabet::new(["a"]).unwrap();
    let g = fold(&WordGraph::linear(&a, &p("a a A A")).unwrap());
    assert_eq!(g.vertex_count(), 3);
    assert!(g.is_deterministic());
    assert_eq!(g.start(), g.end());
}

#[test]
fn stephen_on_small_presentations() {
    let bic = InvPresentation::bicyclic();
    assert!(stephen_equal(&bic, &p("a A"), &Word::empty(), budget()).unwrap().is_equal());
    assert!(matches!(stephen_equal(&bic, &p("A a"), &Word::empty(), budget()).unwrap(), Verdict::Unknown { .. }));
    let free = InvPresentation::free(Alphabet::new(["a"]).unwrap());
    assert_eq!(stephen_equal(&free, &p("a A a"), &p("a"), budget()).unwrap(), Verdict::Equal { round: 0 });
    assert_eq!(is_right_invertible(&bic, &p("a"), budget()).unwrap(), RightInvertible::Yes);
    assert_eq!(is_right_invertible(&free, &Word::empty(), budget()).unwrap(), RightInvertible::Yes);
    assert_eq!(is_right_invertible(&free, &p("a"), budget()).unwrap(), RightInvertible::Unknown);
    assert_eq!(prefix_generators(&bic).unwrap(), vec![p("a"), p("a A")]);
}

#[test]
fn raag_examples() {
    let p4 = SimpGraph::p4();
    assert_eq!(raag_normal_form(&p4, &p("b a")).unwrap().word, p("a b"));
    assert_eq!(raag_normal_form(&p4, &p("d a")).unwrap().word, p("d a"));
    assert_eq!(raag_normal_form(&p4, &p("a b A")).unwrap().word, p("b"));
    assert!(raag_equal(&p4, &p("a b"), &p("b a")).unwrap());
    assert!(!raag_equal(&p4, &p("a d"), &p("d a")).unwrap());
    assert!(raag_equal(&p4, &Word::empty(), &p("a A")).unwrap());
    assert!(parabolic_membership(&p4, &["a", "b", "c"], &p("c a")).unwrap().is_some());
    assert_eq!(parabolic_membership(&p4, &["a", "b", "c"], &p("d")).unwrap(), None);
    assert_eq!(parabolic_membership(&p4, &["a", "b", "c"], &p("d D a")).unwrap(), Some(p("a")));
    assert_eq!(induced_subgraph(&p4, &["a", "d"]).unwrap().edge_count(), 0);
    assert_eq!(induced_subgraph(&p4, &["b", "c", "d"]).unwrap().edge_count(), 2);
}

#[test]
fn hnn_examples() {
    let h = p4_instance();
    let b = britton_reduce(&h, &p("t a T")).unwrap();
    assert_eq!(b.syllables.len(), 1);
    assert!(hnn_is_trivial(&h, &p("t a T t A T")).unwrap());
    assert!(!hnn_is_trivial(&h, &p("t d T")).unwrap());
    assert!(hnn_is_trivial(&h, &p("a t a T A t A T")).unwrap());
    assert!(hnn_is_trivial(&h, &p("t^2 a t^-2 t^3 a t^-3 t^2 A t^-2 t^3 A t^-3")).unwrap());
    assert!(!hnn_is_trivial(&h, &p("a t^3 a t^-3 A t^3 A t^-3")).unwrap());
    assert!(hnn_equal(&h, &p("a t a T"), &p("t a T a")).unwrap());
    assert!(!hnn_equal(&h, &p("a"), &p("t a T")).unwrap());
    assert_eq!(theta_embed(&p("b")).unwrap(), p("t a T"));
    assert_eq!(theta_embed(&p("D")).unwrap(), p("t^3 A t^-3"));
    assert!(one_relator_wp(&p("a z a Z A z A Z")).unwrap());
    assert!(!one_relator_wp(&p("a")).unwrap());
    assert!(!one_relator_wp(&p("z a Z A")).unwrap());
}

#[test]
fn free_product_examples() {
    let z2 = FiniteGroup::cyclic(2);
    let fp = FreeProduct::new(&z2);
    let h = z2.element("g").unwrap();
    assert_eq!(fp_length(&fp.multiply(&fp.t_pow(1), &fp.t_pow(-1))), 0);
    let c = fp.conj(h);
    assert_eq!(fp_length(&c), 3);
    assert_eq!(theta_to_fgt(&c), 0);
    assert_eq!(fp_length(&fp.from_syllables([FpSyllable::T(1), FpSyllable::T(1)])), 1);
    assert_eq!(fp_length(&fp.multiply(&fp.h(h), &fp.h(h))), 0);

    let r = key_claim_check(&z2, &[h], h, 2).unwrap();
    assert!(r.h_in_t && r.agree);
    let z3 = FiniteGroup::cyclic(3);
    let r = key_claim_check(&z3, &[], z3.element("g").unwrap(), 3).unwrap();
    assert!(!r.h_in_t && !r.conj_in_s.is_yes() && r.agree);
}

#[test]
fn construction_pipeline() {
    let ci = headline_instance(vec![p("a")]).unwrap();
    let pres = build_presentation(&ci).unwrap();
    assert_eq!(pres.relations.len(), 1);
    let split = &equivalent_presentations(&pres).unwrap()[0];
    assert_eq!(split.relations[0].lhs, ci.e_word());
    assert_eq!(ConstructionInstance::from_presentation(&pres).unwrap().wset, ci.wset);

    let q = membership_query(&ci, &p("a^3")).unwrap();
    assert_eq!(q.probe, p("t a a a T"));
    assert_eq!(probe_right_invertible(&ci, &p("a^3"), Budget::new(8, 20_000)).unwrap(), RightInvertible::Yes);
    assert_eq!(probe_right_invertible(&ci, &Word::empty(), Budget::new(8, 20_000)).unwrap(), RightInvertible::Yes);

    let toy = toy_free_instance(vec![p("a")]).unwrap();
    assert_eq!(probe_right_invertible(&toy, &p("A"), Budget::new(8, 20_000)).unwrap(), RightInvertible::Unknown);
    let free = FreeGroupWp;
    let cert = forward_certificate(&toy, &p("a^3"), &[1, 1, 1], Some(&free)).unwrap();
    assert_eq!(cert.validity, Validity::Valid);
    let cert = forward_certificate(&toy, &p("A"), &[1], Some(&free)).unwrap();
    assert_eq!(cert.validity, Validity::Invalid);
}

#[test]
fn degenerate_construction() {
    let g = GroupPresentation::new(Alphabet::new(["a"]).unwrap(), vec![Word::empty()]).unwrap();
    let ci = ConstructionInstance::new(g, vec![], "t").unwrap();
    assert_eq!(ci.e_word(), p("a A A a"));
    assert_eq!(build_presentation(&ci).unwrap().relations[0].lhs, p("a A A a"));
}
