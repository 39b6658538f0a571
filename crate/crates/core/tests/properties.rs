mod common;

use std::rc::Rc;

use dtnsim_core::buffer::{Buffer, Insert, Message, MsgId, StoredCopy};
use dtnsim_core::metrics::median;
use proptest::prelude::*;

use common::*;

#[derive(Debug, Clone)]
enum Op {
    Insert { size: u64, in_flight: bool },
    Expire,
    Deliver(usize),
}

fn op() -> impl Strategy<Value = Op> {
    prop_oneof![
        6 => (1u64..400, any::<bool>()).prop_map(|(size, in_flight)| Op::Insert { size: size * 1000, in_flight }),
        1 => Just(Op::Expire),
        2 => (0usize..64).prop_map(Op::Deliver),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn buffer_accounting_and_drop_order(capacity in 100_000u64..2_000_000, ops in prop::collection::vec(op(), 1..80)) {
        let mut b = Buffer::new(capacity);
        let mut next = 0u32;
        let mut now = 0.0;
        for op in ops {
            now += 1.0;
            match op {
                Op::Insert { size, in_flight } => {
                    let id = MsgId(next);
                    next += 1;
                    let protect = if in_flight { b.iter().next().map(|c| c.id()) } else { None };
                    let copy = StoredCopy {
                        msg: Rc::new(Message { id, source: 0, destination: 1, size, created_at: now, ttl_secs: 20.0 }),
                        hop_path: vec![0],
                        copies: 1,
                        received_at: now,
                    };
                    match b.insert(copy, now, protect) {
                        Insert::Accepted { dropped } => {
                            prop_assert!(b.contains(id));
                            let oldest_kept = b.iter().filter(|c| Some(c.id()) != protect).map(|c| c.received_at).fold(f64::INFINITY, f64::min);
                            for d in &dropped {
                                prop_assert!(Some(d.copy.id()) != protect, "in-flight copy evicted");
                                prop_assert!(d.copy.received_at <= oldest_kept);
                                prop_assert!(d.residence >= 0.0);
                            }
                        }
                        Insert::Rejected(_) => prop_assert!(size > capacity || !b.contains(id)),
                    }
                }
                Op::Expire => {
                    for d in b.expire(now) {
                        prop_assert!(now - d.copy.msg.created_at > d.copy.msg.ttl_secs);
                    }
                }
                Op::Deliver(k) => {
                    let id = b.iter().nth(k % b.len().max(1)).map(|c| c.id());
                    if let Some(id) = id {
                        let before = b.occupancy();
                        let removed = b.remove_on_delivery(id).expect("held copy");
                        prop_assert_eq!(b.occupancy(), before - removed.msg.size);
                    }
                }
            }
            prop_assert!(b.occupancy() <= b.capacity());
            prop_assert_eq!(b.occupancy(), b.recompute_occupancy());
        }
    }

    #[test]
    fn median_ignores_order(mut xs in prop::collection::vec(-1e6f64..1e6, 1..40), seed in any::<u64>()) {
        let m = median(&xs);
        let k = xs.len();
        xs.rotate_left((seed % k as u64) as usize);
        xs.reverse();
        prop_assert_eq!(m, median(&xs));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn spray_run_conserves_copies_and_buffers(seed in any::<u64>(), victims in 3u32..9, relays in 0u32..5, buffer in prop::sample::select(vec!["1M", "2M", "4M"])) {
        let mut s = small_world(victims, relays, 2, buffer, "snw", 400.0);
        s.seed = seed;
        let sim = run_checked(&s, seed ^ 0x5eed, 0.05)?;
        let f = sim.fates();
        prop_assert_eq!(f.delivered + f.fully_dropped + f.alive, sim.metrics().created);
    }

    #[test]
    fn epidemic_run_keeps_buffers_sound(seed in any::<u64>(), victims in 3u32..9, relays in 0u32..5, buffer in prop::sample::select(vec!["1M", "2M", "4M"])) {
        let mut s = small_world(victims, relays, 2, buffer, "epidemic", 400.0);
        s.seed = seed;
        let sim = run_checked(&s, seed ^ 0xe1d, 0.05)?;
        let f = sim.fates();
        prop_assert_eq!(f.delivered + f.fully_dropped + f.alive, sim.metrics().created);
    }

    #[test]
    fn transfers_are_atomic_under_link_drops(seed in any::<u64>(), router in prop::sample::select(vec!["snw", "epidemic"])) {
        let mut s = small_world(6, 3, 2, "3M", router, 300.0);
        s.seed = seed;
        let sim = run_checked(&s, seed, 0.3)?;
        let m = sim.metrics();
        prop_assert!(m.started >= m.relayed + m.aborted);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn grid_contacts_equal_naive_on_200_nodes(seed in any::<u64>(), range in 20.0f64..600.0) {
        grid_matches_naive(seed, 200, range)?;
    }

    #[test]
    fn shortest_path_equals_exhaustive(seed in any::<u64>()) {
        shortest_matches_exhaustive(seed)?;
    }
}
