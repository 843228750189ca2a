//! The search kernel: "does the player to move win?" on positions where both
//! tokens are placed.

use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use crate::game::Move;
use crate::graph::{bits, Graph, Vertex};
use crate::trail::{reach, TrailSearch};

const FLUSH_EVERY: u64 = 1 << 12;

/// Node accounting shared by every worker of one solve.
pub(crate) struct Budget {
    limit: Option<u64>,
    spent: AtomicU64,
    cancel: AtomicBool,
}

impl Budget {
    pub(crate) fn new(limit: Option<u64>) -> Budget {
        Budget {
            limit,
            spent: AtomicU64::new(0),
            cancel: AtomicBool::new(false),
        }
    }

    pub(crate) fn spent(&self) -> u64 {
        self.spent.load(Ordering::Relaxed)
    }

    pub(crate) fn limit(&self) -> Option<u64> {
        self.limit
    }

    pub(crate) fn cancel(&self) {
        self.cancel.store(true, Ordering::Relaxed);
    }

    pub(crate) fn reset_cancel(&self) {
        self.cancel.store(false, Ordering::Relaxed);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Abort {
    Budget,
    Cancelled,
}

/// Open-addressing table of solved positions, one probe, replace on
/// collision. Slot layout: used-mask low word, high word, then
/// `valid << 31 | win << 30 | me << 8 | opp`.
pub(crate) struct Table {
    slots: Vec<[u64; 3]>,
    shift: u32,
}

const VALID: u64 = 1 << 31;
const WIN: u64 = 1 << 30;

impl Table {
    pub(crate) fn new(bits: u32) -> Table {
        let bits = bits.clamp(4, 30);
        Table {
            slots: vec![[0u64; 3]; 1 << bits],
            shift: 64 - bits,
        }
    }

    fn index(&self, lo: u64, hi: u64, key: u64) -> usize {
        let mut h = lo.wrapping_mul(0x9E37_79B9_7F4A_7C15)
            ^ hi.wrapping_mul(0xC2B2_AE3D_27D4_EB4F).rotate_left(31)
            ^ key.wrapping_mul(0x1656_67B1_9E37_79F9);
        h ^= h >> 29;
        (h.wrapping_mul(0xBF58_476D_1CE4_E5B9) >> self.shift) as usize
    }

    fn get(&self, used: u128, me: Vertex, opp: Vertex) -> Option<bool> {
        let (lo, hi) = (used as u64, (used >> 64) as u64);
        let key = (me as u64) << 8 | opp as u64;
        let s = &self.slots[self.index(lo, hi, key)];
        if s[2] & VALID != 0 && s[0] == lo && s[1] == hi && s[2] & 0xFFFF == key {
            Some(s[2] & WIN != 0)
        } else {
            None
        }
    }

    fn put(&mut self, used: u128, me: Vertex, opp: Vertex, win: bool) {
        let (lo, hi) = (used as u64, (used >> 64) as u64);
        let key = (me as u64) << 8 | opp as u64;
        let i = self.index(lo, hi, key);
        self.slots[i] = [lo, hi, VALID | if win { WIN } else { 0 } | key];
    }
}

pub(crate) struct Engine<'g, 'b> {
    g: &'g Graph,
    inc: Vec<u128>,
    all: u128,
    table: Table,
    budget: &'b Budget,
    local: u64,
    nodes: u64,
    decompose: bool,
    trails: HashMap<(u128, Vertex), usize>,
}

impl<'g, 'b> Engine<'g, 'b> {
    pub(crate) fn new(g: &'g Graph, table_bits: u32, decompose: bool, budget: &'b Budget) -> Self {
        let bits = table_bits.min((g.m() as u32 + 6).max(10));
        Engine {
            g,
            inc: (0..g.n()).map(|v| g.incident_mask(v)).collect(),
            all: g.all_edges(),
            table: Table::new(bits),
            budget,
            local: 0,
            nodes: 0,
            decompose,
            trails: HashMap::new(),
        }
    }

    pub(crate) fn flush(&mut self) -> Result<(), Abort> {
        let spent = self.budget.spent.fetch_add(self.local, Ordering::Relaxed) + self.local;
        self.nodes += self.local;
        self.local = 0;
        if self.budget.cancel.load(Ordering::Relaxed) {
            return Err(Abort::Cancelled);
        }
        match self.budget.limit {
            Some(limit) if spent > limit => Err(Abort::Budget),
            _ => Ok(()),
        }
    }

    #[inline]
    pub(crate) fn tick(&mut self, n: u64) -> Result<(), Abort> {
        self.local += n;
        if self.local >= FLUSH_EVERY {
            self.flush()
        } else {
            Ok(())
        }
    }

    /// P1 has opened with `first`; does P1 win against every reply in
    /// `replies`?
    pub(crate) fn opening_survives(
        &mut self,
        first: Move,
        replies: &[Move],
    ) -> Result<bool, Abort> {
        self.tick(1)?;
        let used = 1u128 << first.edge;
        for r in replies {
            if !self.wins(used | 1 << r.edge, first.head, r.head)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether the player to move, standing on `me`, wins when the opponent
    /// stands on `opp` and `used` edges are gone.
    pub(crate) fn wins(&mut self, used: u128, me: Vertex, opp: Vertex) -> Result<bool, Abort> {
        self.tick(1)?;
        let free = self.all & !used;
        let mine = self.inc[me] & free;
        if mine == 0 {
            return Ok(false);
        }
        let theirs = self.inc[opp] & free;
        // The opponent is already stuck, or I can take their last edge.
        if theirs == 0 || (theirs & (theirs - 1) == 0 && theirs & mine != 0) {
            return Ok(true);
        }
        if let Some(r) = self.table.get(used, me, opp) {
            return Ok(r);
        }
        let r = if self.decompose && !self.joined(free, me, opp) {
            let ours = self.trail(free, me)?;
            let their = self.trail(free, opp)?;
            ours > their
        } else {
            self.expand(used, free, mine, me, opp, theirs)?
        };
        self.table.put(used, me, opp, r);
        Ok(r)
    }

    fn expand(
        &mut self,
        used: u128,
        free: u128,
        mine: u128,
        me: Vertex,
        opp: Vertex,
        theirs: u128,
    ) -> Result<bool, Abort> {
        let mut moves = [(0u32, 0u8, 0u8); 128];
        let mut k = 0;
        for e in bits(mine) {
            let h = self.g.other_end(e, me);
            let rest = (self.inc[h] & free & !(1u128 << e)).count_ones();
            // A move into a dead end loses: the opponent still has a move
            // (otherwise the caller would have returned early) and then I
            // am stuck.
            if rest == 0 {
                continue;
            }
            let steal = u32::from(theirs >> e & 1 == 1);
            moves[k] = (rest * 2 + steal, e as u8, h as u8);
            k += 1;
        }
        let moves = &mut moves[..k];
        moves.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        for &(_, e, h) in moves.iter() {
            if !self.wins(used | 1u128 << e, opp, h as Vertex)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Whether `a` and `b` lie in the same component of the unused edges.
    fn joined(&self, free: u128, a: Vertex, b: Vertex) -> bool {
        if a == b || self.inc[a] & self.inc[b] & free != 0 {
            return true;
        }
        let mut seen = 1u128 << a;
        let mut frontier = seen;
        let mut edges = 0u128;
        while frontier != 0 {
            let mut next = 0u128;
            for x in bits(frontier) {
                let new = self.inc[x] & free & !edges;
                edges |= new;
                for e in bits(new) {
                    let y = self.g.other_end(e, x);
                    if y == b {
                        return true;
                    }
                    if seen >> y & 1 == 0 {
                        seen |= 1 << y;
                        next |= 1 << y;
                    }
                }
            }
            frontier = next;
        }
        false
    }

    fn trail(&mut self, free: u128, v: Vertex) -> Result<usize, Abort> {
        let (_, comp) = reach(self.g, v, free);
        if let Some(&l) = self.trails.get(&(comp, v)) {
            return Ok(l);
        }
        let mut s = TrailSearch::new(self.g, comp);
        let l = s.longest_from(v, usize::MAX).expect("unbounded");
        self.tick(s.nodes())?;
        self.trails.insert((comp, v), l);
        Ok(l)
    }
}
