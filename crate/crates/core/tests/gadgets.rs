mod common;

use ramsey_forge::constructions::{
    chain_senders, make_apex_gadget, make_clique_transversal_gadget, make_h_t_d, make_join_gadget,
    make_simplicity_witness, make_weak_bel_frame, weak_to_strong_frame, ConstructionError,
};
use ramsey_forge::engine::{
    arrows_relative, certify_signal_sender, find_mono_free_extension, forces_equal_colors, is_signal_sender,
    verify_apex_property, verify_bel_property,
};
use ramsey_forge::graph::{clique_number, graph_stats};
use ramsey_forge::{
    find_embedding, induced_subgraph, is_mono_free, swap_colors, Color, EdgeColoring, GadgetCertificate, GadgetKind,
    Graph, SearchOptions, Verification,
};

fn opts() -> SearchOptions {
    SearchOptions::default()
}

#[test]
fn h_t_d_shape() {
    for t in 1..=6 {
        for d in 0..=t {
            let h = make_h_t_d(t, d).unwrap();
            assert_eq!(h.degree(t), d);
            if d == t {
                assert_eq!(h.min_degree(), t, "t={t} d={d}");
            } else if d >= 1 {
                assert_eq!(h.min_degree(), d.min(t - 1), "t={t} d={d}");
            }
            if t >= 3 && d < t {
                assert_eq!(clique_number(&h), t);
            }
        }
    }
}

#[test]
fn transversal_gadget_invariants() {
    for (t, d) in [(3, 2), (4, 2), (4, 3)] {
        let c = make_clique_transversal_gadget(t, d).unwrap();
        let psi = c.psi.as_ref().unwrap();
        assert_eq!(c.graph.n(), d * t + (t - d) * t.pow(d as u32));
        let red = psi.color_class(Color::Red);
        // Red edges are exactly the d cliques.
        assert_eq!(red.edge_count(), d * t * (t - 1) / 2);
        for i in 1..=d {
            assert!(red.is_clique(c.role(&format!("T_{i}")).unwrap()));
        }
        // Away from the S_T sets the blue graph is d-partite with parts T_i.
        let blue = psi.color_class(Color::Blue);
        for i in 1..=d {
            assert!(blue.is_independent(c.role(&format!("T_{i}")).unwrap()));
        }
        assert!(is_mono_free(psi, &make_h_t_d(t, d).unwrap()), "t={t} d={d}");
    }
}

#[test]
fn transversal_apex_degree_is_d_squared() {
    let c = make_clique_transversal_gadget(5, 3).unwrap();
    let picks = (1..=3)
        .map(|i| {
            let role = format!("T_{i}");
            let vs = c.role(&role).unwrap()[..3].to_vec();
            (role, vs)
        })
        .collect();
    let g = ramsey_forge::constructions::attach_apex(&c, &picks, 3).unwrap();
    assert_eq!(g.degree(g.n() - 1), 9);
}

#[test]
fn join_gadget_forcing_needs_epsilon_arrowing_parts() {
    // With a pentagon in place of an epsilon-arrowing part, the two edges of
    // R_0 are no longer forced to agree.
    let r0 = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
    let c = make_join_gadget(&r0, &[Graph::cycle(5)], 3).unwrap();
    let h = make_h_t_d(3, 2).unwrap();
    let r0_edges = [(5, 6), (7, 8)];
    assert!(!forces_equal_colors(&c.graph, &h, &r0_edges, &opts()).unwrap());
    let discordant = find_mono_free_extension(
        &c.graph,
        &h,
        &[((5, 6), Color::Red), ((7, 8), Color::Blue)],
        &opts(),
    )
    .unwrap()
    .unwrap();
    assert!(is_mono_free(&discordant, &h));
    assert!(common::naive_mono_free(9, discordant.entries(), &h));
}

#[test]
fn apex_gadgets_for_regular_targets() {
    for (h, v) in [(Graph::cycle(5), 0), (Graph::cycle(6), 2), (Graph::petersen(), 0)] {
        let g = make_apex_gadget(&h, v).unwrap().graph;
        let d = h.degree(v);
        let s = g.role("S").unwrap().to_vec();
        assert_eq!(s.len(), 2 * d - 1);
        let copies = g.roles().keys().filter(|k| k.starts_with("copy(")).count();
        let expected_copies = (0..d).fold(1, |acc, i| acc * (2 * d - 1 - i) / (i + 1));
        assert_eq!(copies, expected_copies);
        assert_eq!(g.n(), s.len() + copies * (h.n() - d - 1));
        assert!(find_embedding(&h, &g).is_none());
        assert!(verify_apex_property(&g, &s, d, &h).unwrap());
    }
}

#[test]
fn apex_gadget_pentagon_matches_reference_drawing() {
    // S = {0, 1, 2}; each pair of S is bridged by a path with two inner
    // vertices, so the gadget is three paths of length 3.
    let g = make_apex_gadget(&Graph::cycle(5), 0).unwrap().graph;
    let reference = Graph::from_edges(9, [(0, 3), (3, 4), (4, 1), (0, 5), (5, 6), (6, 2), (1, 7), (7, 8), (8, 2)]).unwrap();
    assert!(g.is_isomorphic_to(&reference));
    assert_eq!(graph_stats(&g).max_degree, 2);
}

#[test]
fn chained_senders_stay_senders() {
    let p3 = Graph::path(3);
    let p4 = certify_signal_sender(&Graph::path(4), (0, 1), (2, 3), &p3, &opts())
        .unwrap()
        .unwrap();
    let mut current = p4.clone();
    for len in [6, 8, 10] {
        current = chain_senders(&current, &p4).unwrap();
        let (e, f) = current.sender_edges().unwrap();
        assert_eq!(current.graph.n(), len);
        assert!(current.graph.set_distance(&[e.0, e.1], &[f.0, f.1]).unwrap() >= 3);
        assert!(is_signal_sender(&current.graph, e, f, &p3, &opts()).unwrap());
        current = certify_signal_sender(&current.graph, e, f, &p3, &opts()).unwrap().unwrap();
    }
}

#[test]
fn weak_frame_forces_its_halves() {
    let p3 = Graph::path(3);
    let p4 = certify_signal_sender(&Graph::path(4), (0, 1), (2, 3), &p3, &opts())
        .unwrap()
        .unwrap();
    let chained = chain_senders(&p4, &p4).unwrap();
    let (e, f) = chained.sender_edges().unwrap();
    let sender = certify_signal_sender(&chained.graph, e, f, &p3, &opts()).unwrap().unwrap();
    assert_eq!(sender.verified, Verification::Exhaustive);

    let g0 = Graph::from_edges(4, [(0, 1)]).unwrap();
    let g1 = Graph::from_edges(4, [(2, 3)]).unwrap();
    let frame = make_weak_bel_frame(&g0, &g1, &sender).unwrap();
    assert_eq!((frame.graph.n(), frame.graph.edge_count()), (12, 10));
    let psi = frame.psi.as_ref().unwrap();
    assert!(is_mono_free(psi, &p3));
    // e_0 and the G_0 edge are forced to agree, as are e_1 and the G_1 edge.
    assert!(forces_equal_colors(&frame.graph, &p3, &[(4, 5), (0, 1)], &opts()).unwrap());
    assert!(forces_equal_colors(&frame.graph, &p3, &[(6, 7), (2, 3)], &opts()).unwrap());
    assert!(!forces_equal_colors(&frame.graph, &p3, &[(0, 1), (2, 3)], &opts()).unwrap());
}

#[test]
fn weak_frame_rejects_bad_inputs() {
    let p3 = Graph::path(3);
    let sender = certify_signal_sender(&Graph::path(4), (0, 1), (2, 3), &p3, &opts())
        .unwrap()
        .unwrap();
    let two = Graph::from_edges(2, [(0, 1)]).unwrap();
    let four = Graph::from_edges(4, [(2, 3)]).unwrap();
    assert_eq!(
        make_weak_bel_frame(&two, &four, &sender),
        Err(ConstructionError::VertexSetsDiffer(2, 4))
    );
    let path = Graph::path(4);
    assert!(matches!(
        make_weak_bel_frame(&path, &Graph::empty(4), &sender),
        Err(ConstructionError::ContainsForbidden(_))
    ));
}

#[test]
fn strong_frame_puts_h_on_s() {
    for h in [Graph::complete(3), Graph::cycle(5), Graph::path(4), make_h_t_d(3, 2).unwrap()] {
        let g = Graph::cycle(5);
        let psi = EdgeColoring::from_fn(&g, |(u, _)| if u % 2 == 0 { Color::Red } else { Color::Blue });
        let (g0, g1) = weak_to_strong_frame(&g, &psi, &h).unwrap();
        let s = g0.role("S").unwrap().to_vec();
        assert_eq!(s, g1.role("S").unwrap());
        let mut both = g0.edges();
        both.extend(g1.edges());
        let union = Graph::from_edges(g0.n(), both).unwrap();
        let (on_s, _) = induced_subgraph(&union, &s).unwrap();
        assert!(find_embedding(&h, &on_s).is_some());
        assert!(find_embedding(&h, &g0).is_none() && find_embedding(&h, &g1).is_none());
    }
}

#[test]
fn simplicity_witness_with_a_trivial_bel_wrapper() {
    let c5 = Graph::cycle(5);
    let bare = make_simplicity_witness(&c5, 0, None).unwrap();
    let frame = bare.frame.graph.clone();
    let psi = bare.frame.psi.clone().unwrap();
    let cert = GadgetCertificate::unchecked(
        frame.clone(),
        c5.clone(),
        GadgetKind::BelGadget {
            template: frame.clone(),
            embedding: (0..frame.n()).collect(),
            psi: swap_colors(&psi),
        },
    );
    let wrapped = make_simplicity_witness(&c5, 0, Some(&cert)).unwrap();
    assert_eq!(wrapped.graph, bare.graph);

    let mut wrong = cert.clone();
    if let GadgetKind::BelGadget { psi, .. } = &mut wrong.kind {
        *psi = EdgeColoring::monochromatic(&frame, Color::Red);
    }
    assert!(matches!(
        make_simplicity_witness(&c5, 0, Some(&wrong)),
        Err(ConstructionError::InvalidBel(_))
    ));

    // The frame alone is not a BEL gadget: recolouring one copy's path is
    // still mono-free.
    assert!(!verify_bel_property(&cert, &c5, &opts()).unwrap());
}

#[test]
fn transversal_frame_arrows_relative_to_psi_for_every_attachment() {
    let c = make_clique_transversal_gadget(3, 2).unwrap();
    let psi = c.psi.clone().unwrap();
    let h = make_h_t_d(3, 2).unwrap();
    let t1 = c.role("T_1").unwrap().to_vec();
    let t2 = c.role("T_2").unwrap().to_vec();
    // Joining the apex to a whole T_1 and one T_2 vertex is a different
    // attachment; it is still forced.
    let picks = [("T_1".to_string(), t1[..2].to_vec()), ("T_2".to_string(), t2[1..].to_vec())].into();
    let g = ramsey_forge::constructions::attach_apex(&c, &picks, 2).unwrap();
    assert!(arrows_relative(&g, &h, psi.entries(), &opts()).unwrap());
}
