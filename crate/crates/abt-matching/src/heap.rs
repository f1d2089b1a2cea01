//! Pairing heaps living in a shared node arena.
//!
//! Every heap is a root index into the arena, so melding two heaps is O(1)
//! and a contraction never copies entries.

const NIL: u32 = u32::MAX;

#[derive(Debug, Clone)]
struct Node<K, V> {
    key: K,
    val: V,
    child: u32,
    sibling: u32,
}

/// Handle of one heap inside a [`PairingArena`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HeapId(u32);

impl HeapId {
    pub const EMPTY: HeapId = HeapId(NIL);

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == NIL
    }
}

/// Arena of pairing-heap nodes ordered by `K` (min-heap).
#[derive(Debug, Clone)]
pub struct PairingArena<K, V> {
    nodes: Vec<Node<K, V>>,
    /// Scratch for the two-pass pairing in `pop`.
    scratch: Vec<u32>,
    pub ops: u64,
}

impl<K: Ord + Copy, V: Copy> Default for PairingArena<K, V> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Ord + Copy, V: Copy> PairingArena<K, V> {
    pub fn new() -> Self {
        PairingArena {
            nodes: Vec::new(),
            scratch: Vec::new(),
            ops: 0,
        }
    }

    pub fn with_capacity(cap: usize) -> Self {
        PairingArena {
            nodes: Vec::with_capacity(cap),
            scratch: Vec::new(),
            ops: 0,
        }
    }

    fn link(&mut self, a: u32, b: u32) -> u32 {
        if a == NIL {
            return b;
        }
        if b == NIL {
            return a;
        }
        let (top, sub) = if self.nodes[b as usize].key < self.nodes[a as usize].key {
            (b, a)
        } else {
            (a, b)
        };
        self.nodes[sub as usize].sibling = self.nodes[top as usize].child;
        self.nodes[top as usize].child = sub;
        top
    }

    pub fn push(&mut self, h: HeapId, key: K, val: V) -> HeapId {
        self.ops += 1;
        let id = self.nodes.len() as u32;
        self.nodes.push(Node {
            key,
            val,
            child: NIL,
            sibling: NIL,
        });
        HeapId(self.link(h.0, id))
    }

    pub fn meld(&mut self, a: HeapId, b: HeapId) -> HeapId {
        self.ops += 1;
        HeapId(self.link(a.0, b.0))
    }

    pub fn peek(&self, h: HeapId) -> Option<(K, V)> {
        if h.is_empty() {
            return None;
        }
        let n = &self.nodes[h.0 as usize];
        Some((n.key, n.val))
    }

    /// Removes the minimum; returns it with the remaining heap.
    pub fn pop(&mut self, h: HeapId) -> Option<((K, V), HeapId)> {
        if h.is_empty() {
            return None;
        }
        self.ops += 1;
        let root = h.0 as usize;
        let top = (self.nodes[root].key, self.nodes[root].val);
        let mut scratch = std::mem::take(&mut self.scratch);
        scratch.clear();
        let mut c = self.nodes[root].child;
        while c != NIL {
            let next = self.nodes[c as usize].sibling;
            self.nodes[c as usize].sibling = NIL;
            scratch.push(c);
            c = next;
        }
        self.ops += scratch.len() as u64;
        let k = scratch.len().div_ceil(2);
        for i in 0..k {
            let b = scratch.get(2 * i + 1).copied().unwrap_or(NIL);
            scratch[i] = self.link(scratch[2 * i], b);
        }
        let mut acc = NIL;
        for &p in scratch[..k].iter().rev() {
            acc = self.link(p, acc);
        }
        self.scratch = scratch;
        Some((top, HeapId(acc)))
    }

    pub fn len_nodes(&self) -> usize {
        self.nodes.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn melded_heaps_pop_sorted(a in prop::collection::vec(0u32..1000, 0..60),
                                   b in prop::collection::vec(0u32..1000, 0..60)) {
            let mut ar: PairingArena<u32, ()> = PairingArena::new();
            let mut ha = HeapId::EMPTY;
            for &x in &a { ha = ar.push(ha, x, ()); }
            let mut hb = HeapId::EMPTY;
            for &x in &b { hb = ar.push(hb, x, ()); }
            let mut h = ar.meld(ha, hb);
            let mut out = Vec::new();
            while let Some(((k, ()), rest)) = ar.pop(h) { out.push(k); h = rest; }
            let mut want: Vec<u32> = a.iter().chain(&b).copied().collect();
            want.sort_unstable();
            prop_assert_eq!(out, want);
        }
    }
}
