//! Events over a finite ground set and systems of such events.
//!
//! Atom `k` of `Ω = {1, …, n}` is stored in bit `k − 1`, so `{1, 2}` is the
//! mask `0b0011` and `{3}` is `0b0100`. Set systems keep their events sorted
//! by mask and free of duplicates, which makes equality structural.

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_ATOMS: usize = 16;

/// Largest union of π-systems accepted by [`is_compatibility_structure`].
pub const MAX_COMPATIBILITY_EVENTS: usize = 256;

const MAX_COMPATIBILITY_NODES: usize = 20_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroundSet {
    n: usize,
}

impl GroundSet {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_ATOMS {
            return Err(Error::GroundSize(n));
        }
        Ok(GroundSet { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of events, `2^n`.
    pub fn event_count(&self) -> usize {
        1usize << self.n
    }

    pub fn full(&self) -> EventSet {
        EventSet(((1u64 << self.n) - 1) as u32)
    }

    /// All `2^n` events in ascending mask order.
    pub fn events(&self) -> impl Iterator<Item = EventSet> {
        (0..(1u32 << self.n)).map(EventSet)
    }

    /// Builds an event from 1-indexed atoms.
    pub fn event(&self, atoms: &[usize]) -> Result<EventSet> {
        let mut mask = 0u32;
        for &a in atoms {
            if a == 0 || a > self.n {
                return Err(Error::InvalidAtom { index: a, n: self.n });
            }
            mask |= 1 << (a - 1);
        }
        Ok(EventSet(mask))
    }

    pub fn check(&self, e: EventSet) -> Result<EventSet> {
        if e.0 & !self.full().0 != 0 {
            return Err(Error::InvalidEvent {
                mask: e.0,
                n: self.n,
            });
        }
        Ok(e)
    }

    pub fn ensure_same(&self, other: &GroundSet) -> Result<()> {
        if self.n != other.n {
            return Err(Error::GroundMismatch(self.n, other.n));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct EventSet(u32);

impl EventSet {
    pub const EMPTY: EventSet = EventSet(0);

    pub fn from_mask(mask: u32) -> Self {
        EventSet(mask)
    }

    /// Event from 1-indexed atoms. Panics on atom 0 or atoms above 16; use
    /// [`GroundSet::event`] for checked construction.
    pub fn of(atoms: &[usize]) -> Self {
        let mut mask = 0u32;
        for &a in atoms {
            assert!((1..=MAX_ATOMS).contains(&a), "atom {a} out of range");
            mask |= 1 << (a - 1);
        }
        EventSet(mask)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains_atom(self, atom: usize) -> bool {
        atom >= 1 && atom <= 32 && self.0 & (1 << (atom - 1)) != 0
    }

    pub fn union(self, other: EventSet) -> EventSet {
        EventSet(self.0 | other.0)
    }

    pub fn intersection(self, other: EventSet) -> EventSet {
        EventSet(self.0 & other.0)
    }

    pub fn difference(self, other: EventSet) -> EventSet {
        EventSet(self.0 & !other.0)
    }

    pub fn complement(self, ground: &GroundSet) -> EventSet {
        EventSet(!self.0 & ground.full().0)
    }

    pub fn is_subset_of(self, other: EventSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: EventSet) -> bool {
        self.0 & other.0 == 0
    }

    /// 1-indexed atoms in ascending order.
    pub fn atoms(self) -> Vec<usize> {
        (0..32).filter(|b| self.0 & (1 << b) != 0).map(|b| b + 1).collect()
    }

    /// Concatenated digits (`"134"`) when `n ≤ 9`, a bracketed list
    /// (`"[1,3,10]"`) otherwise. The empty event is `"∅"`.
    pub fn label(self, n: usize) -> String {
        if self.is_empty() {
            return "∅".to_string();
        }
        let atoms = self.atoms();
        if n <= 9 {
            atoms.iter().map(|a| a.to_string()).collect()
        } else {
            let parts: Vec<String> = atoms.iter().map(|a| a.to_string()).collect();
            format!("[{}]", parts.join(","))
        }
    }

    /// Values of the indicator gamble `χ_E` over `n` atoms.
    pub fn indicator(self, n: usize) -> Vec<crate::Rational> {
        (1..=n)
            .map(|a| {
                if self.contains_atom(a) {
                    crate::rational::one()
                } else {
                    crate::rational::zero()
                }
            })
            .collect()
    }

    /// Nonempty proper submasks, ascending.
    fn proper_submasks(self) -> impl Iterator<Item = EventSet> {
        let full = self.0;
        let mut sub = full;
        std::iter::from_fn(move || {
            if sub == 0 {
                return None;
            }
            sub = (sub - 1) & full;
            if sub == 0 {
                None
            } else {
                Some(EventSet(sub))
            }
        })
    }
}

impl fmt::Debug for EventSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.atoms().iter().map(|a| a.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Membership table over all `2^n` events.
pub(crate) struct Members(Vec<bool>);

impl Members {
    pub(crate) fn new(ground: &GroundSet) -> Self {
        Members(vec![false; ground.event_count()])
    }

    #[inline]
    pub(crate) fn has(&self, e: EventSet) -> bool {
        self.0[e.0 as usize]
    }

    /// Returns true if the event was newly inserted.
    #[inline]
    pub(crate) fn insert(&mut self, e: EventSet) -> bool {
        !std::mem::replace(&mut self.0[e.0 as usize], true)
    }

    pub(crate) fn to_system(&self, ground: GroundSet) -> SetSystem {
        let events = (0..self.0.len())
            .filter(|&m| self.0[m])
            .map(|m| EventSet(m as u32))
            .collect();
        SetSystem { ground, events }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SetSystem {
    ground: GroundSet,
    events: Vec<EventSet>,
}

impl SetSystem {
    pub fn new(ground: GroundSet, events: impl IntoIterator<Item = EventSet>) -> Result<Self> {
        let mut events = events
            .into_iter()
            .map(|e| ground.check(e))
            .collect::<Result<Vec<_>>>()?;
        events.sort_unstable();
        events.dedup();
        Ok(SetSystem { ground, events })
    }

    /// System from 1-indexed atom lists, e.g. `[[1, 2], [3]]`.
    pub fn from_atom_lists(ground: GroundSet, lists: &[Vec<usize>]) -> Result<Self> {
        let events = lists
            .iter()
            .map(|l| ground.event(l))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ground, events)
    }

    /// The collection with no events at all.
    pub fn empty(ground: GroundSet) -> Self {
        SetSystem {
            ground,
            events: Vec::new(),
        }
    }

    /// `{∅, Ω}`, the bottom of the lattice of pre-Dynkin systems.
    pub fn trivial(ground: GroundSet) -> Self {
        SetSystem {
            ground,
            events: vec![EventSet::EMPTY, ground.full()],
        }
    }

    pub fn power_set(ground: GroundSet) -> Self {
        SetSystem {
            ground,
            events: ground.events().collect(),
        }
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn events(&self) -> &[EventSet] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = EventSet> + '_ {
        self.events.iter().copied()
    }

    pub fn contains(&self, e: EventSet) -> bool {
        self.events.binary_search(&e).is_ok()
    }

    pub fn is_subset_of(&self, other: &SetSystem) -> bool {
        self.events.iter().all(|&e| other.contains(e))
    }

    pub(crate) fn members(&self) -> Members {
        let mut m = Members::new(&self.ground);
        for &e in &self.events {
            m.insert(e);
        }
        m
    }

    pub fn union(&self, other: &SetSystem) -> Result<SetSystem> {
        self.ground.ensure_same(&other.ground)?;
        SetSystem::new(self.ground, self.iter().chain(other.iter()))
    }

    pub fn intersection(&self, other: &SetSystem) -> Result<SetSystem> {
        self.ground.ensure_same(&other.ground)?;
        Ok(SetSystem {
            ground: self.ground,
            events: self.iter().filter(|&e| other.contains(e)).collect(),
        })
    }

    pub fn label(&self) -> String {
        let n = self.ground.n;
        let parts: Vec<String> = self.iter().map(|e| e.label(n)).collect();
        format!("{{{}}}", parts.join(", "))
    }

    /// Contains `∅`, is closed under complement and under unions of
    /// disjoint pairs. Pairwise closure gives closure under all finite
    /// disjoint unions by induction.
    pub fn is_pre_dynkin(&self) -> bool {
        let m = self.members();
        if !m.has(EventSet::EMPTY) {
            return false;
        }
        for (i, &a) in self.events.iter().enumerate() {
            if !m.has(a.complement(&self.ground)) {
                return false;
            }
            for &b in &self.events[i + 1..] {
                if a.is_disjoint(b) && !m.has(a.union(b)) {
                    return false;
                }
            }
        }
        true
    }

    /// Contains `∅`, closed under complement and pairwise union.
    pub fn is_algebra(&self) -> bool {
        let m = self.members();
        if !m.has(EventSet::EMPTY) {
            return false;
        }
        for (i, &a) in self.events.iter().enumerate() {
            if !m.has(a.complement(&self.ground)) {
                return false;
            }
            for &b in &self.events[i + 1..] {
                if !m.has(a.union(b)) {
                    return false;
                }
            }
        }
        true
    }

    /// Nonempty and closed under pairwise intersection.
    pub fn is_pi_system(&self) -> bool {
        if self.events.is_empty() {
            return false;
        }
        let m = self.members();
        self.events.iter().enumerate().all(|(i, &a)| {
            self.events[i + 1..]
                .iter()
                .all(|&b| m.has(a.intersection(b)))
        })
    }

    /// Smallest pre-Dynkin system containing every event of `self`.
    pub fn pre_dynkin_hull(&self) -> SetSystem {
        let g = self.ground;
        let mut members = Members::new(&g);
        let mut order: Vec<EventSet> = Vec::new();
        let mut queue: Vec<EventSet> = Vec::new();
        for e in [EventSet::EMPTY, g.full()].into_iter().chain(self.iter()) {
            if members.insert(e) {
                queue.push(e);
            }
        }
        let mut head = 0;
        while head < queue.len() {
            let e = queue[head];
            head += 1;
            let c = e.complement(&g);
            if members.insert(c) {
                queue.push(c);
            }
            // pairs with an event processed later are handled when it pops
            for i in 0..order.len() {
                let f = order[i];
                if e.is_disjoint(f) {
                    let u = e.union(f);
                    if members.insert(u) {
                        queue.push(u);
                    }
                }
            }
            order.push(e);
        }
        members.to_system(g)
    }

    /// Whether `a ∩ b` lies in the system.
    pub fn is_compatible(&self, a: EventSet, b: EventSet) -> Result<bool> {
        for e in [a, b] {
            if !self.contains(e) {
                return Err(Error::Membership(e));
            }
        }
        let cap = self.contains(a.intersection(b));
        debug_assert!(
            !self.is_pre_dynkin() || cap == self.contains(a.union(b)),
            "cap and cup compatibility disagree"
        );
        Ok(cap)
    }

    /// The unique family of maximal algebras contained in a pre-Dynkin
    /// system, sorted. Their union is the system.
    ///
    /// Finite algebras correspond to partitions of `Ω`, so the search
    /// enumerates partitions whose blocks are members and whose block
    /// unions are all members, keeping those without a valid refinement.
    pub fn blocks(&self) -> Vec<SetSystem> {
        if self.is_algebra() {
            return vec![self.clone()];
        }
        let m = self.members();
        let g = self.ground;
        let candidates: Vec<EventSet> = self.iter().filter(|e| !e.is_empty()).collect();
        let mut partitions: Vec<Vec<EventSet>> = Vec::new();
        let mut chosen = Vec::new();
        let unions = vec![EventSet::EMPTY];
        enumerate_partitions(&m, &candidates, g.full(), &mut chosen, &unions, &mut partitions);

        let mut algebras: Vec<SetSystem> = partitions
            .into_iter()
            .filter(|p| !has_valid_split(&m, p))
            .map(|p| Partition { ground: g, blocks: p }.algebra())
            .collect();
        algebras.sort_by(|a, b| a.events.cmp(&b.events));
        algebras.dedup();
        algebras
    }

    /// Minimal nonempty events of an algebra, i.e. its partition.
    pub fn algebra_atoms(&self) -> Vec<EventSet> {
        self.iter()
            .filter(|&e| {
                !e.is_empty()
                    && !self
                        .iter()
                        .any(|f| !f.is_empty() && f != e && f.is_subset_of(e))
            })
            .collect()
    }

    /// Join in the lattice of pre-Dynkin systems: hull of the union.
    pub fn lattice_join(&self, other: &SetSystem) -> Result<SetSystem> {
        Ok(self.union(other)?.pre_dynkin_hull())
    }

    /// Meet in the lattice of pre-Dynkin systems: plain intersection.
    pub fn lattice_meet(&self, other: &SetSystem) -> Result<SetSystem> {
        let meet = self.intersection(other)?;
        debug_assert!(
            !(self.is_pre_dynkin() && other.is_pre_dynkin()) || meet.is_pre_dynkin(),
            "meet of pre-Dynkin systems must be pre-Dynkin"
        );
        Ok(meet)
    }

    /// Whether every member `B ⊆ a` is `∅` or `a` itself.
    pub fn is_weak_atom(&self, a: EventSet) -> bool {
        self.iter()
            .all(|b| b.is_empty() || b == a || !b.is_subset_of(a))
    }

    /// All weak atoms, `∅` included, ascending by mask.
    pub fn weak_atoms(&self) -> Vec<EventSet> {
        self.ground
            .events()
            .filter(|&a| self.is_weak_atom(a))
            .collect()
    }

    /// Splits a non-member `b` into `(b_d, a)` with `b_d` a member that is
    /// inclusion-maximal below `b` and `a = b \ b_d` a weak atom outside the
    /// system. Among several maximal members the smallest mask wins.
    pub fn decompose_atom(&self, b: EventSet) -> Result<(EventSet, EventSet)> {
        self.ground.check(b)?;
        if self.contains(b) {
            return Err(Error::UnexpectedMember(b));
        }
        let below: Vec<EventSet> = self.iter().filter(|e| e.is_subset_of(b)).collect();
        let b_d = below
            .iter()
            .copied()
            .filter(|&e| !below.iter().any(|&f| f != e && e.is_subset_of(f)))
            .min()
            .unwrap_or(EventSet::EMPTY);
        let atom = b.difference(b_d);
        debug_assert!(!self.is_pre_dynkin() || (self.is_weak_atom(atom) && !self.contains(atom)));
        Ok((b_d, atom))
    }
}

impl fmt::Debug for SetSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SetSystem(n={}, {})", self.ground.n, self.label())
    }
}

impl fmt::Display for SetSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

fn enumerate_partitions(
    m: &Members,
    candidates: &[EventSet],
    uncovered: EventSet,
    chosen: &mut Vec<EventSet>,
    unions: &[EventSet],
    out: &mut Vec<Vec<EventSet>>,
) {
    if uncovered.is_empty() {
        out.push(chosen.clone());
        return;
    }
    let low = EventSet(uncovered.0 & uncovered.0.wrapping_neg());
    for &c in candidates {
        if !low.is_subset_of(c) || !c.is_subset_of(uncovered) {
            continue;
        }
        if unions.iter().all(|&u| m.has(u.union(c))) {
            let mut next: Vec<EventSet> = unions.to_vec();
            next.extend(unions.iter().map(|&u| u.union(c)));
            chosen.push(c);
            enumerate_partitions(m, candidates, uncovered.difference(c), chosen, &next, out);
            chosen.pop();
        }
    }
}

/// All unions of the given blocks, `∅` included.
fn block_unions(blocks: &[EventSet]) -> Vec<EventSet> {
    let mut unions = vec![EventSet::EMPTY];
    for &b in blocks {
        let extra: Vec<EventSet> = unions.iter().map(|&u| u.union(b)).collect();
        unions.extend(extra);
    }
    unions
}

/// Whether some block splits in two so that the refined partition still
/// generates an algebra inside the system. A strictly finer valid partition
/// exists iff such a single split exists.
fn has_valid_split(m: &Members, blocks: &[EventSet]) -> bool {
    for (i, &b) in blocks.iter().enumerate() {
        let others: Vec<EventSet> = blocks
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &e)| e)
            .collect();
        let unions = block_unions(&others);
        for c in b.proper_submasks() {
            let rest = b.difference(c);
            if !m.has(c) || !m.has(rest) {
                continue;
            }
            if unions
                .iter()
                .all(|&u| m.has(u.union(c)) && m.has(u.union(rest)))
            {
                return true;
            }
        }
    }
    false
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    ground: GroundSet,
    blocks: Vec<EventSet>,
}

impl Partition {
    pub fn new(ground: GroundSet, blocks: impl IntoIterator<Item = EventSet>) -> Result<Self> {
        let mut blocks = blocks
            .into_iter()
            .map(|b| ground.check(b))
            .collect::<Result<Vec<_>>>()?;
        let mut cover = EventSet::EMPTY;
        for &b in &blocks {
            if b.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            if !cover.is_disjoint(b) {
                return Err(Error::InvalidPartition(format!("block {b:?} overlaps")));
            }
            cover = cover.union(b);
        }
        if cover != ground.full() {
            return Err(Error::InvalidPartition("blocks do not cover the ground set".into()));
        }
        blocks.sort_unstable();
        Ok(Partition { ground, blocks })
    }

    pub fn blocks(&self) -> &[EventSet] {
        &self.blocks
    }

    /// The algebra of all unions of blocks, `2^k` events for `k` blocks.
    pub fn algebra(&self) -> SetSystem {
        let mut events = block_unions(&self.blocks);
        events.sort_unstable();
        events.dedup();
        SetSystem {
            ground: self.ground,
            events,
        }
    }
}

/// Whether a family of π-systems is a compatibility structure: every
/// π-system inside their union lies inside one of them.
///
/// A violating π-system exists iff some set `S` of at most `k` events
/// (`k` = number of members) has all its intersections in the union but
/// is contained in no member, because a π-system member contains a family
/// iff it contains its intersection closure. The search walks such sets
/// depth-first.
pub fn is_compatibility_structure(systems: &[SetSystem]) -> Result<bool> {
    let Some(first) = systems.first() else {
        return Ok(true);
    };
    let ground = first.ground;
    for (i, s) in systems.iter().enumerate() {
        ground.ensure_same(&s.ground)?;
        if !s.is_pi_system() {
            return Err(Error::PiSystem(i));
        }
    }
    let mut union = SetSystem::empty(ground);
    for s in systems {
        union = union.union(s)?;
    }
    if union.len() > MAX_COMPATIBILITY_EVENTS {
        return Err(Error::SizeLimitExceeded(format!(
            "compatibility check over {} events (limit {})",
            union.len(),
            MAX_COMPATIBILITY_EVENTS
        )));
    }
    let search = CompatibilitySearch {
        union_members: union.members(),
        events: union.events.clone(),
        members: systems.iter().map(|s| s.members()).collect(),
        max_size: systems.len(),
    };
    let mut nodes = 0usize;
    let mut chosen = Vec::new();
    let violation = search.find_violation(0, &mut chosen, &[], &mut nodes)?;
    Ok(!violation)
}

struct CompatibilitySearch {
    union_members: Members,
    events: Vec<EventSet>,
    members: Vec<Members>,
    max_size: usize,
}

impl CompatibilitySearch {
    fn find_violation(
        &self,
        start: usize,
        chosen: &mut Vec<EventSet>,
        closure: &[EventSet],
        nodes: &mut usize,
    ) -> Result<bool> {
        if chosen.len() >= self.max_size {
            return Ok(false);
        }
        for i in start..self.events.len() {
            *nodes += 1;
            if *nodes > MAX_COMPATIBILITY_NODES {
                return Err(Error::SizeLimitExceeded(
                    "compatibility search exceeded its node budget".into(),
                ));
            }
            let e = self.events[i];
            if closure.contains(&e) {
                continue;
            }
            let mut next = closure.to_vec();
            next.push(e);
            next.extend(closure.iter().map(|&c| c.intersection(e)));
            next.sort_unstable();
            next.dedup();
            if !next.iter().all(|&c| self.union_members.has(c)) {
                continue;
            }
            chosen.push(e);
            let covered = self
                .members
                .iter()
                .any(|m| chosen.iter().all(|&c| m.has(c)));
            if !covered || self.find_violation(i + 1, chosen, &next, nodes)? {
                return Ok(true);
            }
            chosen.pop();
        }
        Ok(false)
    }
}
