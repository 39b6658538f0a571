//! Range-based contact detection and bandwidth-limited transfers.

use std::collections::{HashMap, HashSet};

use crate::buffer::{MsgId, NodeId};
use crate::geo::Point;
use crate::Scalar;

/// Index of an interface type in the scenario's (name-sorted) interface table.
pub type IfaceId = usize;

/// Unordered node pair on one interface type; always `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinkKey {
    pub a: NodeId,
    pub b: NodeId,
    pub iface: IfaceId,
}

impl LinkKey {
    pub fn new(x: NodeId, y: NodeId, iface: IfaceId) -> Self {
        LinkKey {
            a: x.min(y),
            b: x.max(y),
            iface,
        }
    }

    pub fn joins(&self, x: NodeId, y: NodeId) -> bool {
        (self.a, self.b) == (x.min(y), x.max(y))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Link {
    pub key: LinkKey,
    pub up_since: f64,
}

/// Nodes carrying one interface type and its range.
#[derive(Debug, Clone)]
pub struct RadioClass<T> {
    /// Ascending node ids.
    pub members: Vec<NodeId>,
    pub range: T,
}

fn cell_of<T: Scalar>(p: &Point<T>, cell: T) -> (i64, i64) {
    (
        (p.x / cell).floor().to_i64().unwrap_or(0),
        (p.y / cell).floor().to_i64().unwrap_or(0),
    )
}

/// All pairs of `members` within `range` (inclusive), found by hashing
/// positions into square cells of side `cell >= range` and comparing only
/// neighbouring cells. Output is sorted with `a < b`.
pub fn pairs_in_range_grid<T: Scalar>(
    members: &[NodeId],
    positions: &[Point<T>],
    range: T,
    cell: T,
) -> Vec<(NodeId, NodeId)> {
    assert!(cell >= range && cell > T::zero(), "grid cell must cover the range");
    let mut grid: HashMap<(i64, i64), Vec<NodeId>> = HashMap::new();
    for &n in members {
        grid.entry(cell_of(&positions[n as usize], cell)).or_default().push(n);
    }
    let r2 = range * range;
    let mut out = Vec::new();
    for &n in members {
        let p = positions[n as usize];
        let (cx, cy) = cell_of(&p, cell);
        for dx in -1..=1 {
            for dy in -1..=1 {
                let Some(bucket) = grid.get(&(cx + dx, cy + dy)) else {
                    continue;
                };
                for &m in bucket {
                    if m > n && p.distance_sq(&positions[m as usize]) <= r2 {
                        out.push((n, m));
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Quadratic reference for [`pairs_in_range_grid`].
pub fn pairs_in_range_naive<T: Scalar>(members: &[NodeId], positions: &[Point<T>], range: T) -> Vec<(NodeId, NodeId)> {
    let r2 = range * range;
    let mut out = Vec::new();
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            if positions[a as usize].distance_sq(&positions[b as usize]) <= r2 {
                out.push((a.min(b), a.max(b)));
            }
        }
    }
    out.sort_unstable();
    out
}

/// Link state changes produced by one detection pass, sorted.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct LinkEvents {
    pub up: Vec<LinkKey>,
    pub down: Vec<LinkKey>,
}

/// Current links per interface type.
#[derive(Debug, Clone)]
pub struct LinkTable {
    current: Vec<Vec<(NodeId, NodeId)>>,
    up_since: HashMap<LinkKey, f64>,
}

impl LinkTable {
    pub fn new(interfaces: usize) -> Self {
        LinkTable {
            current: vec![Vec::new(); interfaces],
            up_since: HashMap::new(),
        }
    }

    pub fn is_up(&self, key: &LinkKey) -> bool {
        self.up_since.contains_key(key)
    }

    pub fn len(&self) -> usize {
        self.up_since.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up_since.is_empty()
    }

    /// Live links ordered by key.
    pub fn links(&self) -> Vec<Link> {
        let mut v: Vec<Link> = self
            .up_since
            .iter()
            .map(|(k, t)| Link { key: *k, up_since: *t })
            .collect();
        v.sort_by_key(|l| l.key);
        v
    }

    /// Replaces the pair set of `iface` with `pairs` (sorted) and reports
    /// the difference.
    pub fn update(&mut self, iface: IfaceId, pairs: Vec<(NodeId, NodeId)>, now: f64, events: &mut LinkEvents) {
        let old = std::mem::replace(&mut self.current[iface], pairs);
        let new = &self.current[iface];
        let (mut i, mut j) = (0, 0);
        while i < old.len() || j < new.len() {
            let o = old.get(i);
            let n = new.get(j);
            match (o, n) {
                (Some(a), Some(b)) if a == b => {
                    i += 1;
                    j += 1;
                }
                (Some(a), Some(b)) if a < b => {
                    events.down.push(LinkKey::new(a.0, a.1, iface));
                    i += 1;
                }
                (Some(a), None) => {
                    events.down.push(LinkKey::new(a.0, a.1, iface));
                    i += 1;
                }
                (_, Some(b)) => {
                    events.up.push(LinkKey::new(b.0, b.1, iface));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        for k in &events.down {
            if k.iface == iface {
                self.up_since.remove(k);
            }
        }
        for k in &events.up {
            if k.iface == iface {
                self.up_since.insert(*k, now);
            }
        }
    }
}

/// Runs contact detection for every interface class using one grid whose
/// cell size is the largest range, and applies the result to `table`.
pub fn detect_contacts<T: Scalar>(
    positions: &[Point<T>],
    classes: &[RadioClass<T>],
    table: &mut LinkTable,
    now: f64,
) -> LinkEvents {
    let cell = classes.iter().map(|c| c.range).fold(T::zero(), T::max);
    let mut events = LinkEvents::default();
    for (iface, class) in classes.iter().enumerate() {
        let pairs = if class.members.len() < 2 {
            Vec::new()
        } else {
            pairs_in_range_grid(&class.members, positions, class.range, cell)
        };
        table.update(iface, pairs, now, &mut events);
    }
    events.up.sort_unstable();
    events.down.sort_unstable();
    events
}

/// A message copy in transit over one link.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferJob {
    pub sender: NodeId,
    pub receiver: NodeId,
    pub iface: IfaceId,
    pub msg: MsgId,
    pub bytes: u64,
    pub start: f64,
    pub completion: f64,
}

impl TransferJob {
    pub fn link(&self) -> LinkKey {
        LinkKey::new(self.sender, self.receiver, self.iface)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SenderBusy;

// Absorbs rounding in the step clock when comparing completion times.
const COMPLETION_SLACK: f64 = 1e-9;

/// Outgoing transfer slots, one per node.
#[derive(Debug, Clone)]
pub struct Transfers {
    outgoing: Vec<Option<TransferJob>>,
    incoming: Vec<HashSet<MsgId>>,
}

impl Transfers {
    pub fn new(nodes: usize) -> Self {
        Transfers {
            outgoing: vec![None; nodes],
            incoming: vec![HashSet::new(); nodes],
        }
    }

    pub fn outgoing(&self, sender: NodeId) -> Option<&TransferJob> {
        self.outgoing[sender as usize].as_ref()
    }

    pub fn is_busy(&self, sender: NodeId) -> bool {
        self.outgoing[sender as usize].is_some()
    }

    pub fn is_receiving(&self, receiver: NodeId, msg: MsgId) -> bool {
        self.incoming[receiver as usize].contains(&msg)
    }

    pub fn active(&self) -> impl Iterator<Item = &TransferJob> {
        self.outgoing.iter().flatten()
    }

    /// Schedules `bytes` over a link of `bits_per_second`.
    #[allow(clippy::too_many_arguments)]
    pub fn begin(
        &mut self,
        sender: NodeId,
        receiver: NodeId,
        iface: IfaceId,
        msg: MsgId,
        bytes: u64,
        bits_per_second: f64,
        now: f64,
    ) -> Result<TransferJob, SenderBusy> {
        let slot = &mut self.outgoing[sender as usize];
        if slot.is_some() {
            return Err(SenderBusy);
        }
        let job = TransferJob {
            sender,
            receiver,
            iface,
            msg,
            bytes,
            start: now,
            completion: now + bytes as f64 * 8.0 / bits_per_second,
        };
        *slot = Some(job);
        self.incoming[receiver as usize].insert(msg);
        Ok(job)
    }

    /// Cancels the sender's job, if any.
    pub fn abort(&mut self, sender: NodeId) -> Option<TransferJob> {
        let job = self.outgoing[sender as usize].take()?;
        self.incoming[job.receiver as usize].remove(&job.msg);
        Some(job)
    }

    /// Aborts jobs whose link is down and completes those due by `now`.
    /// Both lists are ordered by `(sender, msg)`.
    pub fn step(&mut self, now: f64, is_up: impl Fn(&LinkKey) -> bool) -> (Vec<TransferJob>, Vec<TransferJob>) {
        let mut completed = Vec::new();
        let mut aborted = Vec::new();
        for slot in self.outgoing.iter_mut() {
            let Some(job) = *slot else { continue };
            if !is_up(&job.link()) {
                aborted.push(job);
            } else if job.completion <= now + COMPLETION_SLACK {
                completed.push(job);
            } else {
                continue;
            }
            *slot = None;
            self.incoming[job.receiver as usize].remove(&job.msg);
        }
        (completed, aborted)
    }
}
