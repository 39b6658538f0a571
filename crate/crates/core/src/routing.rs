//! Epidemic and Spray-and-Wait forwarding decisions.
//!
//! Routers are stateless policies over a sender's buffer and the summary
//! vectors of its current peers. Both order candidate transfers the same
//! way: messages addressed to a peer first, then relays, each pass oldest
//! received first and peers in ascending id order.

use crate::buffer::{Buffer, MsgId, NodeId, StoredCopy};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RouterKind {
    /// Replicate every message to every peer lacking it.
    Epidemic,
    /// Quota-limited spraying followed by direct delivery.
    SprayAndWait { copies: u32, binary: bool },
}

impl RouterKind {
    pub const DEFAULT_SPRAY_COPIES: u32 = 16;

    pub fn default_spray() -> Self {
        RouterKind::SprayAndWait {
            copies: Self::DEFAULT_SPRAY_COPIES,
            binary: true,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            RouterKind::Epidemic => "epidemic",
            RouterKind::SprayAndWait { .. } => "snw",
        }
    }

    /// Copy quota given to a freshly created message.
    pub fn initial_copies(&self) -> u32 {
        match *self {
            RouterKind::Epidemic => 1,
            RouterKind::SprayAndWait { copies, .. } => copies.max(1),
        }
    }

    /// Whether `copy` may be handed to a peer that is not its destination.
    pub fn may_relay(&self, copy: &StoredCopy) -> bool {
        match self {
            RouterKind::Epidemic => true,
            RouterKind::SprayAndWait { .. } => copy.copies > 1,
        }
    }

    /// Whether `copy` may be relayed to `peer`. Spray copies never go back
    /// to a node already on their hop path.
    pub fn may_relay_to(&self, copy: &StoredCopy, peer: NodeId) -> bool {
        match self {
            RouterKind::Epidemic => true,
            RouterKind::SprayAndWait { .. } => copy.copies > 1 && !copy.hop_path.contains(&peer),
        }
    }

    /// Splits a quota of `n` on a relay: `(sender keeps, receiver gets)`.
    pub fn split(&self, n: u32) -> (u32, u32) {
        match *self {
            RouterKind::Epidemic => (n, n),
            RouterKind::SprayAndWait { binary: true, .. } => (n - n / 2, n / 2),
            RouterKind::SprayAndWait { binary: false, .. } => (n.saturating_sub(1).max(1), 1),
        }
    }

    /// Receiver's copy after a completed relay of `sender` to `receiver`,
    /// plus the quota the sender keeps if the receiver accepts it.
    pub fn handoff(&self, sender: &StoredCopy, receiver: NodeId, now: f64) -> (StoredCopy, u32) {
        let (keep, give) = self.split(sender.copies);
        let mut hop_path = Vec::with_capacity(sender.hop_path.len() + 1);
        hop_path.extend_from_slice(&sender.hop_path);
        hop_path.push(receiver);
        (
            StoredCopy {
                msg: sender.msg.clone(),
                hop_path,
                copies: give,
                received_at: now,
            },
            keep,
        )
    }
}

/// What a sender can see of one peer at exchange time.
pub trait PeerView {
    fn id(&self) -> NodeId;
    /// True if the peer neither holds, is receiving, nor has already been
    /// delivered message `id`.
    fn lacks(&self, id: MsgId) -> bool;
}

/// A proposed transfer of `msg` to `peer`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Intent {
    pub msg: MsgId,
    pub peer: NodeId,
    pub delivery: bool,
}

/// All transfers `router` would make from `buffer` to `peer`, in order.
pub fn intents<P: PeerView>(router: RouterKind, buffer: &Buffer, peer: &P) -> Vec<Intent> {
    let pid = peer.id();
    let direct = buffer
        .iter()
        .filter(|c| c.msg.destination == pid && peer.lacks(c.id()))
        .map(|c| Intent {
            msg: c.id(),
            peer: pid,
            delivery: true,
        });
    let relays = buffer
        .iter()
        .filter(|c| c.msg.destination != pid && router.may_relay_to(c, pid) && peer.lacks(c.id()))
        .map(|c| Intent {
            msg: c.id(),
            peer: pid,
            delivery: false,
        });
    direct.chain(relays).collect()
}

/// First transfer an idle sender should start across all of its peers.
/// `peers` must be sorted by ascending id.
pub fn select<P: PeerView>(router: RouterKind, buffer: &Buffer, peers: &[P]) -> Option<Intent> {
    if peers.is_empty() {
        return None;
    }
    for c in buffer.iter() {
        let dest = c.msg.destination;
        if let Ok(i) = peers.binary_search_by_key(&dest, |p| p.id()) {
            if peers[i].lacks(c.id()) {
                return Some(Intent {
                    msg: c.id(),
                    peer: dest,
                    delivery: true,
                });
            }
        }
    }
    for c in buffer.iter() {
        if !router.may_relay(c) {
            continue;
        }
        let dest = c.msg.destination;
        if let Some(p) = peers
            .iter()
            .find(|p| p.id() != dest && router.may_relay_to(c, p.id()) && p.lacks(c.id()))
        {
            return Some(Intent {
                msg: c.id(),
                peer: p.id(),
                delivery: false,
            });
        }
    }
    None
}
