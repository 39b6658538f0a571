#![allow(dead_code)]

use std::path::PathBuf;

use dtnsim_core::buffer::NodeId;
use dtnsim_core::config::{load_scenario, parse_scenario, Scenario};
use dtnsim_core::geo::{Graph, GraphBuilder, Point};
use dtnsim_core::radio::{pairs_in_range_grid, pairs_in_range_naive, TransferJob};
use dtnsim_core::routing::RouterKind;
use dtnsim_core::{MsgId, Point2, Simulation};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn workspace_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

pub fn bundled_path() -> PathBuf {
    workspace_root().join("scenarios/nepal.scen")
}

pub fn bundled() -> Scenario {
    load_scenario(&bundled_path())
        .expect("bundled scenario parses")
        .scenario
}

pub fn scen(text: &str) -> Scenario {
    parse_scenario(text).expect("test scenario parses").scenario
}

/// Source, relay and destination in a line. The relay sits next to the
/// source until t = 77 and then jumps next to the destination.
pub fn line_scenario(router: &str) -> Scenario {
    scen(&format!(
        "end_time = 100\nworld = 2000, 100\nrouter = {router}\n\
         interface.bt.speed = 2M\ninterface.bt.range = 120\n\
         Group1.name = Src\nGroup1.interfaces = bt\n\
         Group2.name = Relay\nGroup2.interfaces = bt\n\
         Group3.name = Dst\nGroup3.interfaces = bt\n\
         traffic.sources = Src\ntraffic.dest = Dst\ntraffic.interval = 60, 60\n"
    ))
}

pub fn line_positions(node: u32, t: f64) -> Point2 {
    match node {
        0 => Point2::new(0.0, 0.0),
        1 if t < 77.0 => Point2::new(50.0, 0.0),
        1 => Point2::new(1000.0, 0.0),
        _ => Point2::new(1050.0, 0.0),
    }
}

/// Hub with four sources around it; the destination never comes close and
/// every message outlives its 5 s TTL before the end.
pub fn isolated_star(router: &str) -> Scenario {
    scen(&format!(
        "end_time = 100\nworld = 6000, 6000\nrouter = {router}\nttl_unit = seconds\n\
         interface.bt.speed = 2M\ninterface.bt.range = 120\n\
         Group1.name = Hub\nGroup1.interfaces = bt\nGroup1.msgTtl = 5\n\
         Group2.name = Leaf\nGroup2.count = 4\nGroup2.interfaces = bt\nGroup2.msgTtl = 5\n\
         Group3.name = Dst\nGroup3.interfaces = bt\nGroup3.msgTtl = 5\n\
         traffic.sources = Leaf\ntraffic.dest = Dst\ntraffic.interval = 30, 30\ntraffic.size = 100k, 100k\n"
    ))
}

pub fn star_positions(node: u32, _t: f64) -> Point2 {
    let c = Point2::new(1000.0, 1000.0);
    match node {
        0 => c,
        1 => Point2::new(c.x + 80.0, c.y),
        2 => Point2::new(c.x - 80.0, c.y),
        3 => Point2::new(c.x, c.y + 80.0),
        4 => Point2::new(c.x, c.y - 80.0),
        _ => Point2::new(5000.0, 5000.0),
    }
}

/// Small scripted world: `victims` senders and `rescuers` receivers on one
/// short-range interface, plus `relays` carriers.
pub fn small_world(victims: u32, relays: u32, rescuers: u32, buffer: &str, router: &str, end: f64) -> Scenario {
    let mut t = format!(
        "end_time = {end}\nworld = 300, 300\nrouter = {router}\n\
         interface.bt.speed = 2M\ninterface.bt.range = 60\n\
         Group1.name = V\nGroup1.count = {victims}\nGroup1.interfaces = bt\nGroup1.bufferSize = {buffer}\nGroup1.msgTtl = 1200\n"
    );
    let mut next = 2;
    if relays > 0 {
        t += &format!(
            "Group{next}.name = C\nGroup{next}.count = {relays}\nGroup{next}.interfaces = bt\nGroup{next}.bufferSize = {buffer}\n"
        );
        next += 1;
    }
    t += &format!(
        "Group{next}.name = R\nGroup{next}.count = {rescuers}\nGroup{next}.interfaces = bt\nGroup{next}.bufferSize = {buffer}\n\
         traffic.sources = V\ntraffic.dest = R\ntraffic.interval = 5, 15\ntraffic.size = 200k, 600k\n"
    );
    scen(&t)
}

/// Random-walk positions with occasional teleports, so links come and go
/// (and in-flight transfers get cut) often.
pub fn jumpy_script(seed: u64, n: usize, side: f64, teleport: f64) -> impl FnMut(NodeId, f64) -> Point2 + 'static {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pos: Vec<Point2> = (0..n)
        .map(|_| Point2::new(rng.gen_range(0.0..side), rng.gen_range(0.0..side)))
        .collect();
    let mut last_t = vec![f64::NAN; n];
    move |node, t| {
        let i = node as usize;
        if last_t[i] != t {
            last_t[i] = t;
            if rng.gen_bool(teleport) {
                pos[i] = Point2::new(rng.gen_range(0.0..side), rng.gen_range(0.0..side));
            } else {
                let p = pos[i];
                pos[i] = Point2::new(
                    (p.x + rng.gen_range(-4.0..4.0)).clamp(0.0, side),
                    (p.y + rng.gen_range(-4.0..4.0)).clamp(0.0, side),
                );
            }
        }
        pos[i]
    }
}

/// Per-step safety invariants of a running simulation: spray conservation,
/// occupancy bounds, copy uniqueness and hop-path integrity.
pub fn check_step_invariants(sim: &Simulation, spray_limit: Option<u32>) -> Result<(), TestCaseError> {
    let n = sim.node_count() as NodeId;
    for node in 0..n {
        let b = sim.buffer(node);
        prop_assert!(b.occupancy() <= b.capacity(), "node {node} over capacity");
        prop_assert_eq!(b.occupancy(), b.recompute_occupancy());
        let mut ids: Vec<MsgId> = b.iter().map(|c| c.id()).collect();
        let len = ids.len();
        ids.sort();
        ids.dedup();
        prop_assert_eq!(ids.len(), len, "duplicate copy at node {}", node);
        for c in b.iter() {
            prop_assert_eq!(c.hop_path.first().copied(), Some(c.msg.source));
            prop_assert_eq!(c.hop_path.last().copied(), Some(node));
            if spray_limit.is_some() {
                let mut p = c.hop_path.clone();
                p.sort_unstable();
                p.dedup();
                prop_assert_eq!(p.len(), c.hop_path.len(), "repeated hop in {:?}", c.hop_path);
                prop_assert!(c.copies >= 1);
            }
        }
    }
    for m in sim.messages() {
        let holders = (0..n).filter(|&v| sim.buffer(v).contains(m.id)).count() as u32;
        prop_assert_eq!(holders, sim.holders(m.id), "holder count of {:?}", m.id);
        if let Some(limit) = spray_limit {
            let total: u32 = (0..n).filter_map(|v| sim.buffer(v).get(m.id)).map(|c| c.copies).sum();
            prop_assert!(total <= limit, "{:?} has {} copies", m.id, total);
        }
    }
    Ok(())
}

/// Runs a jumpy scripted scenario to the end, checking per-step invariants
/// and transfer atomicity: a copy only appears at a node through its own
/// creation or a transfer that finished this step over a live link, and
/// the total copy count moves exactly with the transfer counters.
pub fn run_checked(s: &Scenario, script_seed: u64, teleport: f64) -> Result<Simulation, TestCaseError> {
    let n = s.total_hosts() as usize;
    let limit = match s.router {
        RouterKind::SprayAndWait { copies, .. } => Some(copies),
        RouterKind::Epidemic => None,
    };
    let mut sim = Simulation::scripted(s, jumpy_script(script_seed, n, 300.0, teleport));
    let snapshot = |sim: &Simulation| -> Vec<Vec<MsgId>> {
        (0..n as NodeId)
            .map(|v| sim.buffer(v).iter().map(|c| c.id()).collect())
            .collect()
    };
    let total_copies = |sim: &Simulation| -> i64 { (0..n as NodeId).map(|v| sim.buffer(v).len() as i64).sum() };
    let mut before = snapshot(&sim);
    while !sim.is_done() {
        let m0 = sim.metrics().clone();
        let created0 = sim.messages().len();
        let copies0 = total_copies(&sim);
        let jobs0: Vec<TransferJob> = sim.transfers().active().copied().collect();
        sim.step();
        check_step_invariants(&sim, limit)?;
        let after = snapshot(&sim);
        for (v, ids) in after.iter().enumerate() {
            for id in ids {
                let fresh = id.index() >= created0 && sim.messages()[id.index()].source == v as NodeId;
                if before[v].contains(id) || fresh {
                    continue;
                }
                let job = jobs0.iter().find(|j| j.receiver == v as NodeId && j.msg == *id);
                prop_assert!(job.is_some(), "copy of {:?} appeared at {} without a transfer", id, v);
                let job = job.unwrap();
                prop_assert!(sim.transfers().outgoing(job.sender) != Some(job), "job still running");
                prop_assert!(sim.links().is_up(&job.link()), "copy crossed a dead link");
                prop_assert!(job.completion <= sim.now() + 1e-9);
            }
        }
        let m1 = sim.metrics();
        prop_assert!(m1.relayed <= m1.started);
        let d = |a: u64, b: u64| (a - b) as i64;
        // a creation can be refused when only an in-flight copy could make room
        let stored_creations = sim.messages()[created0..]
            .iter()
            .filter(|m| sim.buffer(m.source).contains(m.id))
            .count() as i64;
        let expected = copies0 + stored_creations + d(m1.relayed, m0.relayed)
            - 2 * d(m1.delivered, m0.delivered)
            - d(m1.rejected, m0.rejected)
            - d(m1.dropped, m0.dropped);
        prop_assert_eq!(total_copies(&sim), expected, "copy count drifted at t={}", sim.now());
        before = after;
    }
    Ok(sim)
}

pub fn grid_matches_naive(seed: u64, nodes: usize, range: f64) -> Result<(), TestCaseError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let side = range * rng.gen_range(2.0..12.0);
    let positions: Vec<Point<f64>> = (0..nodes)
        .map(|_| Point::new(rng.gen_range(-side..side), rng.gen_range(-side..side)))
        .collect();
    let members: Vec<NodeId> = (0..nodes as NodeId).filter(|_| rng.gen_bool(0.9)).collect();
    let mut grid = pairs_in_range_grid(&members, &positions, range, range);
    let mut naive = pairs_in_range_naive(&members, &positions, range);
    grid.sort_unstable();
    naive.sort_unstable();
    prop_assert_eq!(grid, naive);
    Ok(())
}

/// Random graph on up to 8 vertices with integer coordinates.
pub fn random_graph(seed: u64) -> (Graph<f64>, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=8);
    let mut pts: Vec<Point<f64>> = Vec::new();
    while pts.len() < n {
        let p = Point::new(rng.gen_range(0..20) as f64, rng.gen_range(0..20) as f64);
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    let mut b = GraphBuilder::new();
    for p in &pts {
        b.vertex(*p);
    }
    let density = rng.gen_range(0.1..0.8);
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                b.add_polyline(&[pts[i], pts[j]]);
            }
        }
    }
    (b.build(), n)
}

/// Minimum simple-path length by exhaustive enumeration.
pub fn exhaustive_shortest(g: &Graph<f64>, from: usize, to: usize) -> Option<f64> {
    fn dfs(g: &Graph<f64>, at: usize, to: usize, seen: &mut Vec<bool>, len: f64, best: &mut Option<f64>) {
        if at == to {
            *best = Some(best.map_or(len, |b: f64| b.min(len)));
            return;
        }
        for &(w, d) in g.neighbors(at) {
            if !seen[w] {
                seen[w] = true;
                dfs(g, w, to, seen, len + d, best);
                seen[w] = false;
            }
        }
    }
    let mut seen = vec![false; g.vertex_count()];
    seen[from] = true;
    let mut best = None;
    dfs(g, from, to, &mut seen, 0.0, &mut best);
    best
}

pub fn shortest_matches_exhaustive(seed: u64) -> Result<(), TestCaseError> {
    let (g, n) = random_graph(seed);
    prop_assert_eq!(g.vertex_count(), n);
    for a in 0..n {
        for b in 0..n {
            let fast = g.shortest_path(a, b);
            let slow = exhaustive_shortest(&g, a, b);
            match (&fast, slow) {
                (None, None) => {}
                (Some(p), Some(len)) => {
                    prop_assert!(
                        (p.length - len).abs() <= 1e-9 * len.max(1.0),
                        "{a}->{b}: {} vs {len}",
                        p.length
                    );
                    prop_assert_eq!(p.vertices.first().copied(), Some(a));
                    prop_assert_eq!(p.vertices.last().copied(), Some(b));
                    let walked: f64 = p
                        .vertices
                        .windows(2)
                        .map(|w| g.vertex(w[0]).distance(&g.vertex(w[1])))
                        .sum();
                    prop_assert!((walked - p.length).abs() <= 1e-9 * len.max(1.0));
                }
                _ => prop_assert!(
                    false,
                    "{a}->{b}: reachability differs ({:?} vs {:?})",
                    fast.map(|p| p.length),
                    slow
                ),
            }
        }
    }
    Ok(())
}
