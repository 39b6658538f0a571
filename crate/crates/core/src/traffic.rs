//! SOS message creation schedule.
//!
//! One global renewal process: inter-creation gaps are uniform in
//! `[interval_min, interval_max]`, the first event falls one gap after
//! t = 0, and each event picks a uniform source among all hosts of the
//! source groups and a uniform destination among the destination group.

use rand::Rng;

use crate::buffer::{MsgId, NodeId};
use crate::config::{NodeLayout, Scenario, TrafficSpec};
use crate::rng::{self, Stream};

#[derive(Debug, Clone, PartialEq)]
pub struct CreationEvent {
    pub time: f64,
    pub id: MsgId,
    pub name: String,
    pub source: NodeId,
    pub destination: NodeId,
    pub size: u64,
}

/// Node ids of the named groups, ascending. Unknown names are skipped.
pub fn hosts_of(scenario: &Scenario, layout: &NodeLayout, groups: &[String]) -> Vec<NodeId> {
    let mut ids: Vec<NodeId> = groups
        .iter()
        .filter_map(|g| scenario.group_index(g))
        .flat_map(|g| layout.range(g))
        .collect();
    ids.sort_unstable();
    ids.dedup();
    ids
}

/// Creation events in time order for `[0, end_time)`.
pub fn schedule_events(
    spec: &TrafficSpec,
    sources: &[NodeId],
    destinations: &[NodeId],
    seed: u64,
    end_time: f64,
) -> Vec<CreationEvent> {
    let mut out = Vec::new();
    if sources.is_empty() || destinations.is_empty() || !(end_time > 0.0) || !(spec.interval_max > 0.0) {
        return out;
    }
    let mut rng = rng::stream(seed, Stream::Traffic);
    let mut t = 0.0;
    loop {
        let gap = if spec.interval_min < spec.interval_max {
            rng.gen_range(spec.interval_min..=spec.interval_max)
        } else {
            spec.interval_min
        };
        t += gap;
        if t >= end_time {
            break;
        }
        let source = sources[rng.gen_range(0..sources.len())];
        let destination = destinations[rng.gen_range(0..destinations.len())];
        let size = rng.gen_range(spec.size_min..=spec.size_max.max(spec.size_min));
        let seq = out.len() as u32;
        out.push(CreationEvent {
            time: t,
            id: MsgId(seq),
            name: format!("{}{}", spec.name_prefix, seq),
            source,
            destination,
            size,
        });
    }
    out
}

/// Events for a whole scenario, or none when it declares no traffic.
pub fn scenario_events(scenario: &Scenario) -> Vec<CreationEvent> {
    let Some(spec) = &scenario.traffic else {
        return Vec::new();
    };
    let layout = scenario.layout();
    let sources = hosts_of(scenario, &layout, &spec.source_groups);
    let dests = hosts_of(scenario, &layout, std::slice::from_ref(&spec.dest_group));
    schedule_events(spec, &sources, &dests, scenario.seed, scenario.end_time)
}

pub fn events_csv(events: &[CreationEvent]) -> String {
    let mut s = String::from("time,id,source,destination,size\n");
    for e in events {
        s.push_str(&format!(
            "{:.4},{},{},{},{}\n",
            e.time, e.name, e.source, e.destination, e.size
        ));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> TrafficSpec {
        TrafficSpec::default()
    }

    #[test]
    fn empty_horizon() {
        assert!(schedule_events(&spec(), &[0], &[1], 1, 0.0).is_empty());
    }

    #[test]
    fn seeds_replay_and_differ() {
        let src: Vec<NodeId> = (0..120).collect();
        let dst: Vec<NodeId> = (120..150).collect();
        let a = schedule_events(&spec(), &src, &dst, 5, 43_200.0);
        let b = schedule_events(&spec(), &src, &dst, 5, 43_200.0);
        let c = schedule_events(&spec(), &src, &dst, 6, 43_200.0);
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn gaps_sizes_and_ranges() {
        let src: Vec<NodeId> = (0..120).collect();
        let dst: Vec<NodeId> = (120..150).collect();
        let ev = schedule_events(&spec(), &src, &dst, 9, 43_200.0);
        assert!((360..=720).contains(&ev.len()));
        assert!(ev[0].time >= 60.0 && ev[0].time <= 120.0);
        for w in ev.windows(2) {
            let gap = w[1].time - w[0].time;
            assert!((60.0 - 1e-9..=120.0 + 1e-9).contains(&gap));
        }
        for (i, e) in ev.iter().enumerate() {
            assert_eq!(e.id, MsgId(i as u32));
            assert_eq!(e.name, format!("SOS{i}"));
            assert!(e.source < 120 && (120..150).contains(&e.destination));
            assert!((500_000..=1_000_000).contains(&e.size));
            assert!(e.time < 43_200.0);
        }
    }
}
