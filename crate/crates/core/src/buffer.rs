//! Per-node bounded message buffers.

use std::rc::Rc;

use indexmap::IndexMap;

pub type NodeId = u32;

/// Dense message identifier; `MsgId(n)` is the n-th created message.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MsgId(pub u32);

impl MsgId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Immutable part of a message, shared by all of its copies.
#[derive(Debug, Clone, PartialEq)]
pub struct Message {
    pub id: MsgId,
    pub source: NodeId,
    pub destination: NodeId,
    /// Bytes.
    pub size: u64,
    pub created_at: f64,
    /// Time to live, already converted to seconds.
    pub ttl_secs: f64,
}

impl Message {
    pub fn is_expired(&self, now: f64) -> bool {
        now - self.created_at > self.ttl_secs
    }
}

/// One node's copy of a message.
#[derive(Debug, Clone, PartialEq)]
pub struct StoredCopy {
    pub msg: Rc<Message>,
    /// Source first, holder last.
    pub hop_path: Vec<NodeId>,
    /// Spray-and-Wait copy quota held by this node.
    pub copies: u32,
    pub received_at: f64,
}

impl StoredCopy {
    pub fn id(&self) -> MsgId {
        self.msg.id
    }
}

/// A copy removed by eviction or expiry.
#[derive(Debug, Clone, PartialEq)]
pub struct Dropped {
    pub copy: StoredCopy,
    /// Seconds the copy spent in the buffer.
    pub residence: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RejectReason {
    /// Larger than the whole buffer.
    Oversize,
    /// The buffer already holds this message id.
    Duplicate,
    /// Would only fit by evicting the copy currently being transmitted.
    InFlight,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Insert {
    Accepted { dropped: Vec<Dropped> },
    Rejected(RejectReason),
}

/// Byte-bounded store ordered by receive time, evicting oldest first.
#[derive(Debug, Clone)]
pub struct Buffer {
    capacity: u64,
    occupancy: u64,
    copies: IndexMap<MsgId, StoredCopy>,
}

impl Buffer {
    pub fn new(capacity: u64) -> Self {
        Buffer {
            capacity,
            occupancy: 0,
            copies: IndexMap::new(),
        }
    }

    pub fn capacity(&self) -> u64 {
        self.capacity
    }

    pub fn occupancy(&self) -> u64 {
        self.occupancy
    }

    pub fn len(&self) -> usize {
        self.copies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.copies.is_empty()
    }

    pub fn contains(&self, id: MsgId) -> bool {
        self.copies.contains_key(&id)
    }

    pub fn get(&self, id: MsgId) -> Option<&StoredCopy> {
        self.copies.get(&id)
    }

    pub fn get_mut(&mut self, id: MsgId) -> Option<&mut StoredCopy> {
        self.copies.get_mut(&id)
    }

    /// Copies in receive order, oldest first.
    pub fn iter(&self) -> impl Iterator<Item = &StoredCopy> {
        self.copies.values()
    }

    /// Sum of held sizes computed from scratch.
    pub fn recompute_occupancy(&self) -> u64 {
        self.copies.values().map(|c| c.msg.size).sum()
    }

    /// Stores `copy`, evicting the oldest-received copies until it fits.
    /// The copy named by `in_flight` is never evicted.
    pub fn insert(&mut self, copy: StoredCopy, now: f64, in_flight: Option<MsgId>) -> Insert {
        let id = copy.id();
        let size = copy.msg.size;
        if self.copies.contains_key(&id) {
            return Insert::Rejected(RejectReason::Duplicate);
        }
        if size > self.capacity {
            return Insert::Rejected(RejectReason::Oversize);
        }
        let pinned = in_flight.and_then(|f| self.copies.get(&f)).map_or(0, |c| c.msg.size);
        if size > self.capacity - pinned {
            return Insert::Rejected(RejectReason::InFlight);
        }
        let mut dropped = Vec::new();
        while self.occupancy + size > self.capacity {
            let victim = self
                .copies
                .keys()
                .copied()
                .find(|k| Some(*k) != in_flight)
                .expect("room was checked above");
            let c = self.copies.shift_remove(&victim).expect("key just found");
            self.occupancy -= c.msg.size;
            dropped.push(Dropped {
                residence: now - c.received_at,
                copy: c,
            });
        }
        self.occupancy += size;
        self.copies.insert(id, copy);
        Insert::Accepted { dropped }
    }

    /// Removes every copy whose message has outlived its TTL.
    pub fn expire(&mut self, now: f64) -> Vec<Dropped> {
        if !self.copies.values().any(|c| c.msg.is_expired(now)) {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut kept = IndexMap::with_capacity(self.copies.len());
        for (id, c) in self.copies.drain(..) {
            if c.msg.is_expired(now) {
                self.occupancy -= c.msg.size;
                out.push(Dropped {
                    residence: now - c.received_at,
                    copy: c,
                });
            } else {
                kept.insert(id, c);
            }
        }
        self.copies = kept;
        out
    }

    /// Removes a copy after it reached its destination. No drop event.
    pub fn remove_on_delivery(&mut self, id: MsgId) -> Option<StoredCopy> {
        let c = self.copies.shift_remove(&id)?;
        self.occupancy -= c.msg.size;
        Some(c)
    }
}
