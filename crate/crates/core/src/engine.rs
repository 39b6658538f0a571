//! Fixed-step simulation loop.
//!
//! Each step runs, in order: movement, contact detection, link event
//! handling, transfer completion and new transfer starts, TTL expiry,
//! message creation. Within a phase nodes are visited in ascending id.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::rc::Rc;
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::buffer::{Buffer, Dropped, Insert, Message, MsgId, NodeId, StoredCopy};
use crate::config::{expand_sweep, ConfigError, InterfaceSpec, NodeLayout, Scenario};
use crate::geo::parse_wkt;
use crate::metrics::{
    hop_histogram, hops_csv, summary, summary_csv, timeline_csv, timeseries, MetricsAccumulator, RunLabel, Summary,
    TimelineRow,
};
use crate::radio::{detect_contacts, IfaceId, LinkEvents, LinkKey, LinkTable, RadioClass, Transfers};
use crate::rng::{self, Stream};
use crate::routing::{self, PeerView, RouterKind};
use crate::traffic::{scenario_events, CreationEvent};
use crate::{MapGraph, MovementState, Point2};

#[derive(Debug, Error)]
pub enum SimError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("map {path}: {message}")]
    Map { path: String, message: String },
    #[error("group {group} has no usable map")]
    NoMap { group: String },
    #[error("writing {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// Simulation time. `now` is always `steps * step`, capped at `end`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimClock {
    pub now: f64,
    pub step: f64,
    pub end: f64,
    steps: u64,
}

impl SimClock {
    pub fn new(step: f64, end: f64) -> Self {
        SimClock {
            now: 0.0,
            step,
            end,
            steps: 0,
        }
    }

    pub fn is_done(&self) -> bool {
        self.now >= self.end
    }

    /// Advances one step; returns the elapsed time.
    pub fn advance(&mut self) -> f64 {
        let prev = self.now;
        self.steps += 1;
        self.now = (self.steps as f64 * self.step).min(self.end);
        self.now - prev
    }
}

/// Movement graphs per group: the union of each group's okMaps files.
#[derive(Debug, Clone)]
pub struct MapSet {
    per_group: Vec<Arc<MapGraph>>,
}

impl MapSet {
    pub fn load(s: &Scenario) -> Result<Self, SimError> {
        let mut files: HashMap<String, Arc<MapGraph>> = HashMap::new();
        let mut unions: HashMap<Vec<String>, Arc<MapGraph>> = HashMap::new();
        let mut per_group = Vec::with_capacity(s.groups.len());
        for g in &s.groups {
            let mut key = g.ok_maps.clone();
            key.sort();
            key.dedup();
            if key.is_empty() {
                return Err(SimError::NoMap { group: g.name.clone() });
            }
            if let Some(u) = unions.get(&key) {
                per_group.push(u.clone());
                continue;
            }
            let mut parts = Vec::new();
            for f in &key {
                if !files.contains_key(f) {
                    let path = s.map_dir.join(f);
                    let text = std::fs::read_to_string(&path).map_err(|e| SimError::Map {
                        path: path.display().to_string(),
                        message: e.to_string(),
                    })?;
                    let graph = parse_wkt(&text).map_err(|e| SimError::Map {
                        path: path.display().to_string(),
                        message: e.to_string(),
                    })?;
                    files.insert(f.clone(), Arc::new(graph));
                }
                parts.push(files[f].clone());
            }
            let union = if parts.len() == 1 {
                parts[0].clone()
            } else {
                Arc::new(MapGraph::union(parts.iter().map(|p| p.as_ref())))
            };
            unions.insert(key, union.clone());
            per_group.push(union);
        }
        Ok(MapSet { per_group })
    }

    /// One graph per group, in group order.
    pub fn from_graphs(per_group: Vec<MapGraph>) -> Self {
        MapSet {
            per_group: per_group.into_iter().map(Arc::new).collect(),
        }
    }

    pub fn group(&self, g: usize) -> &MapGraph {
        &self.per_group[g]
    }
}

enum Motion {
    Map { maps: MapSet, movers: Vec<MovementState> },
    Scripted(Box<dyn FnMut(NodeId, f64) -> Point2>),
}

/// One link state change, as written to the contact trace.
#[derive(Debug, Clone, PartialEq)]
pub struct ContactRecord {
    pub time: f64,
    pub up: bool,
    pub a: NodeId,
    pub b: NodeId,
    pub iface: String,
}

/// End-of-run classification of every created message.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Fates {
    pub delivered: u64,
    pub fully_dropped: u64,
    pub alive: u64,
}

struct NodeState {
    group: usize,
    buffer: Buffer,
    /// Live links per peer, as a bit mask over interface ids.
    peers: BTreeMap<NodeId, u32>,
}

struct Peer<'a> {
    id: NodeId,
    buffer: &'a Buffer,
    transfers: &'a Transfers,
    metrics: &'a MetricsAccumulator,
    messages: &'a [Rc<Message>],
}

impl PeerView for Peer<'_> {
    fn id(&self) -> NodeId {
        self.id
    }

    fn lacks(&self, id: MsgId) -> bool {
        if self.buffer.contains(id) || self.transfers.is_receiving(self.id, id) {
            return false;
        }
        !(self.messages[id.index()].destination == self.id && self.metrics.is_delivered(id))
    }
}

pub struct Simulation {
    scenario: Scenario,
    router: RouterKind,
    layout: NodeLayout,
    clock: SimClock,
    positions: Vec<Point2>,
    motion: Motion,
    classes: Vec<RadioClass<f64>>,
    iface_names: Vec<String>,
    iface_specs: Vec<InterfaceSpec>,
    links: LinkTable,
    transfers: Transfers,
    nodes: Vec<NodeState>,
    dirty: Vec<bool>,
    events: Vec<CreationEvent>,
    next_event: usize,
    messages: Vec<Rc<Message>>,
    holders: Vec<u32>,
    metrics: MetricsAccumulator,
    trace: Option<Vec<ContactRecord>>,
}

impl Simulation {
    /// Map-driven simulation. Nodes are placed on their group graphs and,
    /// if the scenario has a warm-up, moved for that long with radios and
    /// traffic off.
    pub fn new(scenario: &Scenario, maps: MapSet) -> Result<Self, SimError> {
        let layout = scenario.layout();
        let mut movers = Vec::with_capacity(layout.node_count() as usize);
        for node in 0..layout.node_count() {
            let g = layout.group_of(node);
            let graph = maps.group(g);
            if graph.vertex_count() == 0 {
                return Err(SimError::NoMap {
                    group: scenario.groups[g].name.clone(),
                });
            }
            let spec = &scenario.groups[g];
            movers.push(MovementState::new(
                graph,
                (spec.speed_min, spec.speed_max),
                rng::stream(scenario.seed, Stream::Mobility(node)),
            ));
        }
        let mut sim = Self::build(scenario, Motion::Map { maps, movers });
        sim.warm_up();
        Ok(sim)
    }

    /// Simulation whose node positions come from `script(node, time)`.
    /// No maps are loaded and there is no warm-up.
    pub fn scripted(scenario: &Scenario, script: impl FnMut(NodeId, f64) -> Point2 + 'static) -> Self {
        let mut sim = Self::build(scenario, Motion::Scripted(Box::new(script)));
        sim.place_scripted();
        sim
    }

    fn build(scenario: &Scenario, motion: Motion) -> Self {
        let layout = scenario.layout();
        let n = layout.node_count() as usize;
        let iface_names: Vec<String> = scenario.interfaces.keys().cloned().collect();
        let iface_specs: Vec<InterfaceSpec> = scenario.interfaces.values().cloned().collect();
        let mut classes: Vec<RadioClass<f64>> = iface_specs
            .iter()
            .map(|s| RadioClass {
                members: Vec::new(),
                range: s.transmit_range,
            })
            .collect();
        let mut nodes = Vec::with_capacity(n);
        for node in 0..n as NodeId {
            let g = layout.group_of(node);
            let spec = &scenario.groups[g];
            for iname in &spec.interfaces {
                if let Some(i) = iface_names.iter().position(|x| x == iname) {
                    if classes[i].members.last() != Some(&node) {
                        classes[i].members.push(node);
                    }
                }
            }
            nodes.push(NodeState {
                group: g,
                buffer: Buffer::new(spec.buffer_size),
                peers: BTreeMap::new(),
            });
        }
        let events = scenario_events(scenario);
        Simulation {
            router: scenario.router,
            clock: SimClock::new(scenario.time_step, scenario.end_time.max(0.0)),
            positions: vec![Point2::default(); n],
            motion,
            links: LinkTable::new(classes.len()),
            classes,
            iface_names,
            iface_specs,
            transfers: Transfers::new(n),
            nodes,
            dirty: vec![false; n],
            holders: Vec::with_capacity(events.len()),
            messages: Vec::with_capacity(events.len()),
            events,
            next_event: 0,
            metrics: MetricsAccumulator::new(scenario.end_time.max(0.0)),
            trace: None,
            layout,
            scenario: scenario.clone(),
        }
    }

    fn place_scripted(&mut self) {
        if let Motion::Scripted(f) = &mut self.motion {
            for (i, p) in self.positions.iter_mut().enumerate() {
                *p = f(i as NodeId, self.clock.now);
            }
        }
    }

    fn warm_up(&mut self) {
        let step = self.scenario.time_step;
        if let Motion::Map { maps, movers } = &mut self.motion {
            let mut left = self.scenario.warmup;
            while left > 0.0 {
                let dt = step.min(left);
                for (i, m) in movers.iter_mut().enumerate() {
                    m.advance(maps.group(self.nodes[i].group), dt);
                }
                left -= dt;
            }
            for (p, m) in self.positions.iter_mut().zip(movers.iter()) {
                *p = m.position();
            }
        }
    }

    /// Records link up/down events for the contact-trace CSV.
    pub fn enable_contact_trace(&mut self) {
        self.trace.get_or_insert_with(Vec::new);
    }

    pub fn scenario(&self) -> &Scenario {
        &self.scenario
    }

    pub fn layout(&self) -> &NodeLayout {
        &self.layout
    }

    pub fn now(&self) -> f64 {
        self.clock.now
    }

    pub fn is_done(&self) -> bool {
        self.clock.is_done()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn position(&self, node: NodeId) -> Point2 {
        self.positions[node as usize]
    }

    pub fn positions(&self) -> &[Point2] {
        &self.positions
    }

    /// Movement graph of `node`'s group, for map-driven runs.
    pub fn graph_of(&self, node: NodeId) -> Option<&MapGraph> {
        match &self.motion {
            Motion::Map { maps, .. } => Some(maps.group(self.nodes[node as usize].group)),
            Motion::Scripted(_) => None,
        }
    }

    /// Movement state of `node`, for map-driven runs.
    pub fn mover(&self, node: NodeId) -> Option<&MovementState> {
        match &self.motion {
            Motion::Map { movers, .. } => movers.get(node as usize),
            Motion::Scripted(_) => None,
        }
    }

    pub fn buffer(&self, node: NodeId) -> &Buffer {
        &self.nodes[node as usize].buffer
    }

    pub fn transfers(&self) -> &Transfers {
        &self.transfers
    }

    pub fn links(&self) -> &LinkTable {
        &self.links
    }

    pub fn metrics(&self) -> &MetricsAccumulator {
        &self.metrics
    }

    /// Messages created so far, indexed by id.
    pub fn messages(&self) -> &[Rc<Message>] {
        &self.messages
    }

    pub fn creation_events(&self) -> &[CreationEvent] {
        &self.events
    }

    /// Number of nodes currently holding a copy of `id`.
    pub fn holders(&self, id: MsgId) -> u32 {
        self.holders[id.index()]
    }

    pub fn fates(&self) -> Fates {
        let mut f = Fates::default();
        for (i, &h) in self.holders.iter().enumerate() {
            if self.metrics.is_delivered(MsgId(i as u32)) {
                f.delivered += 1;
            } else if h == 0 {
                f.fully_dropped += 1;
            } else {
                f.alive += 1;
            }
        }
        f
    }

    fn mark_peers_dirty(&mut self, node: NodeId) {
        for &p in self.nodes[node as usize].peers.keys() {
            self.dirty[p as usize] = true;
        }
    }

    fn record_drops(&mut self, node: NodeId, dropped: Vec<Dropped>, expired: bool) {
        if dropped.is_empty() {
            return;
        }
        for d in dropped {
            self.holders[d.copy.id().index()] -= 1;
            self.metrics.record_drop(d.residence, expired);
        }
        self.mark_peers_dirty(node);
    }

    /// Advances one time step. No-op once the end time is reached.
    pub fn step(&mut self) {
        if self.clock.is_done() {
            return;
        }
        let dt = self.clock.advance();
        let now = self.clock.now;

        // 1. movement
        match &mut self.motion {
            Motion::Map { maps, movers } => {
                for (i, m) in movers.iter_mut().enumerate() {
                    m.advance(maps.group(self.nodes[i].group), dt);
                    self.positions[i] = m.position();
                }
            }
            Motion::Scripted(f) => {
                for (i, p) in self.positions.iter_mut().enumerate() {
                    *p = f(i as NodeId, now);
                }
            }
        }

        // 2. contacts
        let events = detect_contacts(&self.positions, &self.classes, &mut self.links, now);

        // 3. link reactions
        self.apply_link_events(&events, now);

        // 4. transfers
        let (completed, aborted) = self.transfers.step(now, |k| self.links.is_up(k));
        for job in aborted {
            self.metrics.record_aborted();
            self.dirty[job.sender as usize] = true;
        }
        for job in completed {
            self.complete(job.sender, job.receiver, job.msg, now);
        }
        for node in 0..self.nodes.len() as NodeId {
            if self.dirty[node as usize] && !self.transfers.is_busy(node) {
                self.try_start(node, now);
            }
        }

        // 5. expiry
        for node in 0..self.nodes.len() as NodeId {
            let expired = self.nodes[node as usize].buffer.expire(now);
            if expired.is_empty() {
                continue;
            }
            if let Some(job) = self.transfers.outgoing(node).copied() {
                if expired.iter().any(|d| d.copy.id() == job.msg) {
                    self.transfers.abort(node);
                    self.metrics.record_aborted();
                    self.dirty[node as usize] = true;
                }
            }
            self.record_drops(node, expired, true);
        }

        // 6. message creation
        while let Some(ev) = self.events.get(self.next_event) {
            if ev.time > now {
                break;
            }
            let ev = ev.clone();
            self.next_event += 1;
            self.create(&ev, now);
        }

        // 7. the delivery timeline is derived from creation/arrival times
    }

    pub fn run_to_end(&mut self) {
        while !self.clock.is_done() {
            self.step();
        }
    }

    fn apply_link_events(&mut self, events: &LinkEvents, now: f64) {
        for k in &events.down {
            for (x, y) in [(k.a, k.b), (k.b, k.a)] {
                let peers = &mut self.nodes[x as usize].peers;
                if let Some(mask) = peers.get_mut(&y) {
                    *mask &= !(1 << k.iface);
                    if *mask == 0 {
                        peers.remove(&y);
                    }
                }
                if let Some(job) = self.transfers.outgoing(x).copied() {
                    if job.receiver == y && job.iface == k.iface {
                        self.transfers.abort(x);
                        self.metrics.record_aborted();
                        self.dirty[x as usize] = true;
                        self.mark_peers_dirty(y);
                    }
                }
            }
            self.trace_event(now, false, k);
        }
        for k in &events.up {
            for (x, y) in [(k.a, k.b), (k.b, k.a)] {
                *self.nodes[x as usize].peers.entry(y).or_insert(0) |= 1 << k.iface;
                self.dirty[x as usize] = true;
            }
            self.trace_event(now, true, k);
        }
    }

    fn trace_event(&mut self, now: f64, up: bool, k: &LinkKey) {
        if let Some(t) = &mut self.trace {
            t.push(ContactRecord {
                time: now,
                up,
                a: k.a,
                b: k.b,
                iface: self.iface_names[k.iface].clone(),
            });
        }
    }

    fn fastest_iface(&self, mask: u32) -> IfaceId {
        (0..self.iface_specs.len())
            .filter(|i| mask & (1 << i) != 0)
            .max_by(|&a, &b| {
                self.iface_specs[a]
                    .transmit_speed
                    .total_cmp(&self.iface_specs[b].transmit_speed)
                    .then(b.cmp(&a))
            })
            .expect("peer has a live link")
    }

    fn try_start(&mut self, node: NodeId, now: f64) {
        self.dirty[node as usize] = false;
        let me = &self.nodes[node as usize];
        if me.buffer.is_empty() || me.peers.is_empty() {
            return;
        }
        let views: Vec<Peer<'_>> = me
            .peers
            .keys()
            .map(|&p| Peer {
                id: p,
                buffer: &self.nodes[p as usize].buffer,
                transfers: &self.transfers,
                metrics: &self.metrics,
                messages: &self.messages,
            })
            .collect();
        let Some(intent) = routing::select(self.router, &me.buffer, &views) else {
            return;
        };
        let iface = self.fastest_iface(me.peers[&intent.peer]);
        let size = self.messages[intent.msg.index()].size;
        let speed = self.iface_specs[iface].transmit_speed;
        self.transfers
            .begin(node, intent.peer, iface, intent.msg, size, speed, now)
            .expect("sender slot checked idle");
        self.metrics.record_started();
    }

    fn complete(&mut self, sender: NodeId, receiver: NodeId, id: MsgId, now: f64) {
        self.dirty[sender as usize] = true;
        let Some(copy) = self.nodes[sender as usize].buffer.get(id) else {
            // sender lost its copy mid-transfer; nothing arrives
            self.metrics.record_aborted();
            return;
        };
        self.metrics.record_relayed();
        let msg = copy.msg.clone();
        if msg.destination == receiver {
            let hops = copy.hop_path.len() as u32;
            self.metrics.record_arrival(id, now, msg.created_at, hops);
            self.nodes[sender as usize].buffer.remove_on_delivery(id);
            self.holders[id.index()] -= 1;
            return;
        }
        let (rx_copy, keep) = self.router.handoff(copy, receiver, now);
        let in_flight = self.transfers.outgoing(receiver).map(|j| j.msg);
        match self.nodes[receiver as usize].buffer.insert(rx_copy, now, in_flight) {
            Insert::Accepted { dropped } => {
                self.holders[id.index()] += 1;
                if let Some(c) = self.nodes[sender as usize].buffer.get_mut(id) {
                    c.copies = keep;
                }
                self.dirty[receiver as usize] = true;
                self.record_drops(receiver, dropped, false);
            }
            Insert::Rejected(_) => self.metrics.record_rejected(),
        }
    }

    fn create(&mut self, ev: &CreationEvent, now: f64) {
        debug_assert_eq!(ev.id.index(), self.messages.len());
        let group = self.layout.group_of(ev.source);
        let msg = Rc::new(Message {
            id: ev.id,
            source: ev.source,
            destination: ev.destination,
            size: ev.size,
            created_at: ev.time,
            ttl_secs: self.scenario.ttl_seconds(group),
        });
        self.messages.push(msg.clone());
        self.holders.push(0);
        self.metrics.record_created(ev.time);
        let copy = StoredCopy {
            msg,
            hop_path: vec![ev.source],
            copies: self.router.initial_copies(),
            received_at: now,
        };
        let in_flight = self.transfers.outgoing(ev.source).map(|j| j.msg);
        if let Insert::Accepted { dropped } = self.nodes[ev.source as usize].buffer.insert(copy, now, in_flight) {
            self.holders[ev.id.index()] = 1;
            self.dirty[ev.source as usize] = true;
            self.record_drops(ev.source, dropped, false);
        }
    }

    pub fn label(&self) -> RunLabel {
        let buffer = self
            .scenario
            .traffic
            .as_ref()
            .and_then(|t| self.scenario.group_index(&t.dest_group))
            .map_or(0, |g| self.scenario.groups[g].buffer_size);
        RunLabel {
            scenario: self.scenario.name.clone(),
            router: self.router.label().to_string(),
            buffer,
            seed: self.scenario.seed,
        }
    }

    pub fn finish(self) -> RunResult {
        let fates = self.fates();
        let label = self.label();
        let summary = summary(&self.metrics);
        let timeline = timeseries(&self.metrics, self.scenario.report_interval.max(f64::MIN_POSITIVE));
        let hops = hop_histogram(&self.metrics);
        RunResult {
            label,
            summary,
            timeline,
            hops,
            fates,
            metrics: self.metrics,
            events: self.events,
            contacts: self.trace,
            files: Vec::new(),
        }
    }
}

/// Everything a finished run reports.
#[derive(Debug, Clone)]
pub struct RunResult {
    pub label: RunLabel,
    pub summary: Summary,
    pub timeline: Vec<TimelineRow>,
    pub hops: BTreeMap<u32, u64>,
    pub fates: Fates,
    pub metrics: MetricsAccumulator,
    pub events: Vec<CreationEvent>,
    pub contacts: Option<Vec<ContactRecord>>,
    /// Report files written by [`RunResult::write_reports`].
    pub files: Vec<PathBuf>,
}

fn write_file(path: PathBuf, text: &str) -> Result<PathBuf, SimError> {
    std::fs::write(&path, text).map_err(|source| SimError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(path)
}

pub fn contacts_csv(records: &[ContactRecord]) -> String {
    let mut s = String::from("time,event,node_a,node_b,interface\n");
    for r in records {
        let ev = if r.up { "up" } else { "down" };
        let _ = writeln!(s, "{:.4},{},{},{},{}", r.time, ev, r.a, r.b, r.iface);
    }
    s
}

impl RunResult {
    pub fn summary_csv(&self) -> String {
        summary_csv([(&self.label, &self.summary)])
    }

    pub fn timeline_csv(&self) -> String {
        timeline_csv(&self.timeline)
    }

    pub fn hops_csv(&self) -> String {
        hops_csv(&self.hops)
    }

    /// Writes `summary.csv`, `timeline.csv`, `hops.csv` (and
    /// `contacts.csv` when traced) into `dir`.
    pub fn write_reports(&mut self, dir: &Path) -> Result<&[PathBuf], SimError> {
        std::fs::create_dir_all(dir).map_err(|source| SimError::Io {
            path: dir.display().to_string(),
            source,
        })?;
        let mut files = vec![
            write_file(dir.join("summary.csv"), &self.summary_csv())?,
            write_file(dir.join("timeline.csv"), &self.timeline_csv())?,
            write_file(dir.join("hops.csv"), &self.hops_csv())?,
        ];
        if let Some(c) = &self.contacts {
            files.push(write_file(dir.join("contacts.csv"), &contacts_csv(c))?);
        }
        self.files = files;
        Ok(&self.files)
    }
}

/// Loads maps and runs `s` to its end time. The caller is expected to have
/// checked [`crate::config::validate`].
pub fn run(s: &Scenario) -> Result<RunResult, SimError> {
    let maps = MapSet::load(s)?;
    let mut sim = Simulation::new(s, maps)?;
    sim.run_to_end();
    Ok(sim.finish())
}

/// Independent runs, one per sweep value, executed in parallel. Results
/// keep the order of `values`.
pub fn sweep(s: &Scenario, axis: &str, values: &[String]) -> Result<Vec<RunResult>, SimError> {
    let scenarios = expand_sweep(s, axis, values)?;
    scenarios.par_iter().map(run).collect()
}

/// Concatenated `summary.csv` for several runs.
pub fn sweep_summary_csv(results: &[RunResult]) -> String {
    summary_csv(results.iter().map(|r| (&r.label, &r.summary)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::parse_scenario;

    #[test]
    fn clock_steps_exactly() {
        let mut c = SimClock::new(0.5, 1.2);
        assert_eq!(c.advance(), 0.5);
        assert_eq!(c.advance(), 0.5);
        assert!((c.advance() - 0.2).abs() < 1e-12);
        assert!(c.is_done());
    }

    #[test]
    fn zero_end_time_creates_nothing() {
        let s = parse_scenario(
            "end_time = 0\nworld = 100, 100\nGroup1.name = V\nGroup1.count = 2\nGroup2.name = R\n\
             traffic.sources = V\ntraffic.dest = R\n",
        )
        .unwrap()
        .scenario;
        let mut sim = Simulation::scripted(&s, |n, _| Point2::new(n as f64, 0.0));
        sim.run_to_end();
        let r = sim.finish();
        assert_eq!(r.summary.created, 0);
        assert_eq!(r.timeline.len(), 1);
    }
}
