use dstar_core::construct::*;
use dstar_core::graph::Graph;
use dstar_core::patterns::contains_double_star;
use dstar_core::planarity::is_planar;

#[test]
fn debug_pair_derivation() {
    let leaves = derive_leaf_templates().unwrap();
    println!("leaf templates: {}", leaves.len());
    for t in &leaves {
        let g = t.graph();
        let degs: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
        println!("  leaf degrees {:?} attachment {:?}", degs, t.attachment_vertices);
    }
    let halves = derive_half_exposures();
    println!("half configs: {}", halves.len());
    for (g, slots) in &halves {
        let degs: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
        println!("  half degrees {:?} slots {:?} edges {:?}", degs, slots, g.edges().collect::<Vec<_>>());
    }
    // base assembly
    let base = assemble_pair_err_ok();
    let (base, bridge) = base.unwrap();
    println!("base bridge {:?}", bridge);

    let mut stats = [0usize; 6]; // built, dup-edge-fail, wrong-e, nonplanar, splice-fail, ok
    for (i1, (g1, slots1)) in halves.iter().enumerate() {
        for (g2, slots2) in halves.iter().skip(i1) {
            for keep1 in 0..slots1.len() {
                for keep2 in 0..slots2.len() {
                    let join1: Vec<usize> = slots1.iter().enumerate().filter(|(i,_)| *i != keep1).map(|(_,&s)| s).collect();
                    let join2: Vec<usize> = slots2.iter().enumerate().filter(|(i,_)| *i != keep2).map(|(_,&s)| s).collect();
                    for flip in [false, true] {
                        stats[0] += 1;
                        let (a, b) = if flip { (join2[1], join2[0]) } else { (join2[0], join2[1]) };
                        let mut edges: Vec<(usize, usize)> = g1.edges().collect();
                        edges.extend(g2.edges().map(|(u, v)| (u + 7, v + 7)));
                        edges.push((join1[0], a + 7));
                        edges.push((join1[1], b + 7));
                        let Ok(pair) = Graph::from_edges(14, &edges) else { stats[1] += 1; continue; };
                        if pair.edge_count() != 30 { stats[2] += 1; continue; }
                        if !is_planar(&pair) { stats[3] += 1; continue; }
                        let template = BlockTemplate {
                            kind: BlockKind::HSharpPair,
                            vertex_count: 14,
                            edge_list: pair.edges().collect(),
                            attachment_vertices: vec![slots1[keep1], slots2[keep2] + 7],
                        };
                        match splice_block(&base, bridge, &template) {
                            Err(_) => {
                                stats[4] += 1;
                                // diagnose: do the splice manually for orientation 1
                                let offset = base.vertex_count();
                                let h = base.without_edge(bridge.0, bridge.1).unwrap()
                                    .disjoint_union(&template.graph());
                                let h = h.with_edge(bridge.0, template.attachment_vertices[0] + offset).unwrap();
                                let h = h.with_edge(bridge.1, template.attachment_vertices[1] + offset).unwrap();
                                if stats[4] <= 3 {
                                    println!("splice fail: planar={} free={} n={} e={}",
                                        is_planar(&h), contains_double_star(&h, 2, 4).is_none(),
                                        h.vertex_count(), h.edge_count());
                                    if let Some(w) = contains_double_star(&h, 2, 4) {
                                        println!("  witness centers {:?}", w.center_vertices);
                                    }
                                }
                            }
                            Ok(_) => stats[5] += 1,
                        }
                    }
                }
            }
        }
    }
    println!("candidates {} dup {} wrong-e {} nonplanar {} splice-fail {} OK {}",
        stats[0], stats[1], stats[2], stats[3], stats[4], stats[5]);
}

fn assemble_pair_err_ok() -> dstar_core::Result<(Graph, (usize, usize))> {
    let leaves = derive_leaf_templates()?;
    let leaf = &leaves[0];
    let att = leaf.attachment_vertices[0];
    let half = leaf.graph();
    let g = half.disjoint_union(&half).with_edge(att, att + 7)?;
    Ok((g, (att, att + 7)))
}
