//! Construction of saturated levels by two independent routes.
//!
//! [`build_filter`] enumerates every reduced fraction with denominator at
//! most `Q − 2`, batches the modular inversions per denominator, and keeps
//! the fractions of height at most `Q`. [`build_incremental`] starts from
//! the base level `{1/1}` at order 3 and grows level by level, inserting
//! into each gap the mediant of its endpoints exactly when the order
//! reaches the mediant's height. The two must agree element by element;
//! that equality is the crate's principal self-check.
//!
//! The incremental builder also exposes the per-level churn (insertions and
//! the adjacent pairs they split), the insertion counts `Φ(Q)`, and the
//! index identity `Σ (q_{i−1} + q_{i+1})/q_i = 3 S_Q − 1`.

use crate::frac::{inv_mod, Fraction, HeightedFraction};
use crate::ratio::Ratio;
use crate::{Error, UnimodularPair};
use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::{Ordering, Reverse};

/// The ordered saturated level of a given order: all reduced fractions in
/// `(0, 1]` whose height is at most the order.
///
/// Invariants: elements are ascending, every height is at most `q_level`,
/// the first element is `1/(Q−2)`, the last is `1/1`, and with the virtual
/// endpoint `0/1` prepended all adjacent pairs are unimodular.
#[derive(Debug, Clone)]
pub struct SaturatedLevel {
    q_level: u64,
    elements: Vec<HeightedFraction>,
}

impl SaturatedLevel {
    /// The order `Q` of the level.
    pub fn q(&self) -> u64 {
        self.q_level
    }

    /// The number of elements, written `S_Q`.
    pub fn s(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn elements(&self) -> &[HeightedFraction] {
        &self.elements
    }

    /// Counts elements `≤ beta` by binary search over the ordered level.
    pub fn count_interval(&self, beta: Ratio) -> u64 {
        if beta.is_negative() {
            return 0;
        }
        self.elements
            .partition_point(|e| beta.cmp_frac(e.num(), e.den()) != Ordering::Less) as u64
    }

    /// Fraction of elements at or below one half.
    pub fn asymmetry_ratio(&self) -> f64 {
        self.count_interval(Ratio::new(1, 2).expect("1/2")) as f64 / self.s() as f64
    }

    /// Consecutive element pairs, excluding the virtual `0/1` endpoint and
    /// without wraparound: `S_Q − 1` pairs.
    pub fn pairs(&self) -> impl Iterator<Item = (HeightedFraction, HeightedFraction)> + '_ {
        self.elements.windows(2).map(|w| (w[0], w[1]))
    }
}

/// Checks the unimodular relation `a_{i+1} q_i − a_i q_{i+1} = 1` over all
/// adjacent pairs of `{0/1} ∪ level`. On failure returns the index `i` of
/// the left element of the first offending pair (`0` denoting `0/1`).
pub fn verify_modular_partition(level: &SaturatedLevel) -> Result<(), usize> {
    let (mut pa, mut pq) = (0u64, 1u64);
    for (i, e) in level.elements.iter().enumerate() {
        let det = e.num() as i128 * pq as i128 - pa as i128 * e.den() as i128;
        if det != 1 {
            return Err(i);
        }
        (pa, pq) = (e.num(), e.den());
    }
    Ok(())
}

/// Evaluates `Σ_{i=1..S} (q_{i−1} + q_{i+1})/q_i` with `q_0 = 1` (the
/// virtual `0/1`) and the wraparound convention `γ_{S+1} = γ_1`.
///
/// # Panics
///
/// Panics if any summand fails to be an integer, which would contradict
/// the unimodular structure of the level.
pub fn index_sum(level: &SaturatedLevel) -> u64 {
    let els = &level.elements;
    let s = els.len();
    assert!(s >= 1, "level is never empty");
    let mut total = 0u64;
    for i in 0..s {
        let prev = if i == 0 { 1 } else { els[i - 1].den() };
        let next = if i + 1 == s {
            els[0].den()
        } else {
            els[i + 1].den()
        };
        let q = els[i].den();
        let num = prev + next;
        assert!(
            num % q == 0,
            "non-integer index summand at position {}",
            i + 1
        );
        total += num / q;
    }
    total
}

/// Enumerates all reduced fractions `a/q` with `2 ≤ q ≤ q_cap` together
/// with their inverses, one batched inversion pass per denominator.
///
/// Calls `f(a, q, inv)` for every unit `a` modulo `q`; within one modulus
/// the calls run in descending `a` (the backward pass of the batch
/// inversion), which no caller depends on.
fn for_each_unit_inverse(q_cap: u64, mut f: impl FnMut(u64, u64, u64)) {
    let cap = q_cap as usize;
    if cap < 2 {
        return;
    }
    // Smallest-prime-factor sieve, used to strike non-units per modulus.
    let mut spf = vec![0u32; cap + 1];
    let mut i = 2usize;
    while i * i <= cap {
        if spf[i] == 0 {
            let mut j = i * i;
            while j <= cap {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
        i += 1;
    }

    let mut is_unit = vec![true; cap + 1];
    let mut units: Vec<u64> = Vec::with_capacity(cap);
    let mut prefix: Vec<u64> = Vec::with_capacity(cap);
    let mut primes: Vec<usize> = Vec::new();

    for q in 2..=cap {
        primes.clear();
        let mut m = q;
        while m > 1 {
            let p = if spf[m] == 0 { m } else { spf[m] as usize };
            primes.push(p);
            while m % p == 0 {
                m /= p;
            }
        }

        is_unit[1..q].fill(true);
        for &p in &primes {
            let mut a = p;
            while a < q {
                is_unit[a] = false;
                a += p;
            }
        }

        units.clear();
        prefix.clear();
        let qq = q as u64;
        let mut acc = 1u64;
        for (a, &unit) in is_unit.iter().enumerate().take(q).skip(1) {
            if unit {
                units.push(a as u64);
                acc = acc * a as u64 % qq;
                prefix.push(acc);
            }
        }

        // Montgomery batch inversion: one extended Euclid per modulus.
        let mut suffix_inv = inv_mod(*prefix.last().expect("1 is always a unit"), qq)
            .expect("product of units is a unit");
        for k in (0..units.len()).rev() {
            let inv = if k == 0 {
                suffix_inv
            } else {
                prefix[k - 1] * suffix_inv % qq
            };
            suffix_inv = suffix_inv * units[k] % qq;
            f(units[k], qq, inv);
        }
    }
}

/// Builds the level of the given order by filtering the full enumeration
/// of reduced fractions with denominator at most `order − 2`.
pub fn build_filter(order: u64) -> Result<SaturatedLevel, Error> {
    if order < 3 {
        return Err(Error::LevelTooSmall { q: order });
    }
    let mut elements: Vec<HeightedFraction> = Vec::new();
    elements.push(HeightedFraction::from_parts(1, 1, 1, 3));
    for_each_unit_inverse(order - 2, |a, q, inv| {
        let h = q + a + inv;
        if h <= order {
            elements.push(HeightedFraction::from_parts(a, q, inv, h));
        }
    });
    elements.sort_unstable_by_key(|x| x.fraction());
    Ok(SaturatedLevel {
        q_level: order,
        elements,
    })
}

/// Number of fractions of height exactly `order`: the level-size increment
/// `Φ(order) = S_order − S_{order−1}`, with `S_2 = 0` so `Φ(3) = 1`.
pub fn phi(order: u64) -> Result<u64, Error> {
    if order < 3 {
        return Err(Error::LevelTooSmall { q: order });
    }
    if order == 3 {
        return Ok(1);
    }
    let mut count = 0;
    for_each_unit_inverse(order - 2, |a, q, inv| {
        if q + a + inv == order {
            count += 1;
        }
    });
    Ok(count)
}

/// Insertion counts over a contiguous range of orders, in one incremental
/// pass: `(order, Φ(order), S_order)` for each order in `[q_min, q_max]`.
pub fn phi_range(q_min: u64, q_max: u64) -> Result<Vec<(u64, u64, u64)>, Error> {
    if q_min < 3 {
        return Err(Error::LevelTooSmall { q: q_min });
    }
    if q_max < q_min {
        return Err(Error::OutOfRange("empty order range"));
    }
    let mut builder = IncrementalBuilder::new();
    let mut out = Vec::with_capacity((q_max - q_min + 1) as usize);
    if q_min == 3 {
        out.push((3, 1, 1));
    }
    while builder.order() < q_max {
        let delta = builder.advance();
        if delta.q_level >= q_min {
            out.push((delta.q_level, delta.inserted.len() as u64, builder.s()));
        }
    }
    Ok(out)
}

/// One level transition: the fractions inserted at this order and the
/// previously adjacent pairs they split.
#[derive(Debug, Clone)]
pub struct LevelDelta {
    pub q_level: u64,
    /// Elements of height exactly `q_level`, ascending. Their count is `Φ(q_level)`.
    pub inserted: Vec<Fraction>,
    /// Gaps of the previous level that vanished, in the same order; each
    /// inserted fraction is the mediant of the corresponding pair.
    pub vanished: Vec<GapPair>,
}

/// A gap of a level: two adjacent entries, the left one possibly being the
/// virtual endpoint `0/1` (represented as `None`), which bounds the gap
/// below the smallest element but is never itself a member.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GapPair {
    pub left: Option<Fraction>,
    pub right: Fraction,
}

impl GapPair {
    /// Raw `(num, den)` of the left endpoint, `(0, 1)` for the virtual one.
    pub fn left_raw(&self) -> (u64, u64) {
        match self.left {
            Some(f) => (f.num(), f.den()),
            None => (0, 1),
        }
    }

    pub fn mediant(&self) -> Fraction {
        let (la, lq) = self.left_raw();
        Fraction::from_raw(la + self.right.num(), lq + self.right.den())
    }

    /// The pair as a [`UnimodularPair`] when the left endpoint is real.
    pub fn as_unimodular(&self) -> Option<UnimodularPair> {
        self.left.map(|l| {
            UnimodularPair::new(l, self.right).expect("adjacent level elements are unimodular")
        })
    }
}

const NIL: u32 = u32::MAX;

#[derive(Debug, Clone, Copy)]
struct Node {
    a: u64,
    q: u64,
    inv: u64,
    h: u64,
    next: u32,
}

/// A gap awaiting its mediant insertion, keyed by the mediant height.
/// Ties at one level are broken by the position of the left endpoint, so
/// pops are deterministic left-to-right.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct PendingGap {
    h: u64,
    left_a: u64,
    left_q: u64,
    med_inv: u64,
    left_idx: u32,
}

impl Ord for PendingGap {
    fn cmp(&self, other: &Self) -> Ordering {
        self.h.cmp(&other.h).then_with(|| {
            let lhs = self.left_a as u128 * other.left_q as u128;
            let rhs = other.left_a as u128 * self.left_q as u128;
            lhs.cmp(&rhs)
        })
    }
}

impl PartialOrd for PendingGap {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Grows levels by mediant insertion, one order at a time.
///
/// The elements live in an arena threaded as a singly linked list in
/// ascending order; every gap sits in a min-heap keyed by the height of
/// its mediant. Advancing to order `Q` pops exactly the gaps whose mediant
/// has height `Q` — newly created gaps always key strictly higher, so a
/// level never feeds itself.
#[derive(Debug, Clone)]
pub struct IncrementalBuilder {
    nodes: Vec<Node>,
    heap: BinaryHeap<Reverse<PendingGap>>,
    q_level: u64,
}

impl IncrementalBuilder {
    /// The base level `{1/1}` at order 3, with the single gap `(0/1, 1/1)`.
    pub fn new() -> Self {
        let nodes = vec![
            Node {
                a: 0,
                q: 1,
                inv: 0,
                h: 0,
                next: 1,
            },
            Node {
                a: 1,
                q: 1,
                inv: 1,
                h: 3,
                next: NIL,
            },
        ];
        let mut builder = IncrementalBuilder {
            nodes,
            heap: BinaryHeap::new(),
            q_level: 3,
        };
        builder.push_gap(0);
        builder
    }

    fn push_gap(&mut self, left_idx: u32) {
        let left = self.nodes[left_idx as usize];
        let right = self.nodes[left.next as usize];
        let (ma, mq) = (left.a + right.a, left.q + right.q);
        let med_inv = inv_mod(ma, mq).expect("mediant of a unimodular gap is reduced");
        self.heap.push(Reverse(PendingGap {
            h: mq + ma + med_inv,
            left_a: left.a,
            left_q: left.q,
            med_inv,
            left_idx,
        }));
    }

    /// The order of the current level.
    pub fn order(&self) -> u64 {
        self.q_level
    }

    /// Size of the current level (the virtual endpoint is not counted).
    pub fn s(&self) -> u64 {
        (self.nodes.len() - 1) as u64
    }

    /// Moves to the next order, inserting every mediant whose height equals
    /// it, and reports the churn.
    pub fn advance(&mut self) -> LevelDelta {
        self.q_level += 1;
        let target = self.q_level;
        let mut inserted = Vec::new();
        let mut vanished = Vec::new();
        while let Some(Reverse(top)) = self.heap.peek() {
            debug_assert!(top.h >= target, "gap key below the current order");
            if top.h != target {
                break;
            }
            let gap = self.heap.pop().expect("peeked entry pops").0;
            let left_idx = gap.left_idx as usize;
            let left = self.nodes[left_idx];
            let right_idx = left.next;
            let right = self.nodes[right_idx as usize];

            let (ma, mq) = (left.a + right.a, left.q + right.q);
            let mid_idx = self.nodes.len() as u32;
            self.nodes.push(Node {
                a: ma,
                q: mq,
                inv: gap.med_inv,
                h: target,
                next: right_idx,
            });
            self.nodes[left_idx].next = mid_idx;

            inserted.push(Fraction::from_raw(ma, mq));
            vanished.push(GapPair {
                left: (left.a > 0).then(|| Fraction::from_raw(left.a, left.q)),
                right: Fraction::from_raw(right.a, right.q),
            });

            self.push_gap(gap.left_idx);
            self.push_gap(mid_idx);
        }
        LevelDelta {
            q_level: target,
            inserted,
            vanished,
        }
    }

    pub fn advance_to(&mut self, order: u64) {
        while self.q_level < order {
            self.advance();
        }
    }

    /// Materializes the current level as an ordered element list.
    pub fn snapshot(&self) -> SaturatedLevel {
        let mut elements = Vec::with_capacity(self.nodes.len() - 1);
        let mut idx = self.nodes[0].next;
        while idx != NIL {
            let n = self.nodes[idx as usize];
            elements.push(HeightedFraction::from_parts(n.a, n.q, n.inv, n.h));
            idx = n.next;
        }
        SaturatedLevel {
            q_level: self.q_level,
            elements,
        }
    }

    /// Streams the raw `(num, den)` of adjacent element pairs of the
    /// current level, excluding the virtual endpoint.
    pub fn for_each_pair(&self, mut f: impl FnMut((u64, u64), (u64, u64))) {
        let mut idx = self.nodes[0].next;
        while idx != NIL {
            let n = self.nodes[idx as usize];
            if n.next == NIL {
                break;
            }
            let m = self.nodes[n.next as usize];
            f((n.a, n.q), (m.a, m.q));
            idx = n.next;
        }
    }
}

impl Default for IncrementalBuilder {
    fn default() -> Self {
        Self::new()
    }
}

/// Builds a level by running the incremental mediant process up to the
/// given order. Must agree with [`build_filter`] element by element.
pub fn build_incremental(order: u64) -> Result<SaturatedLevel, Error> {
    if order < 3 {
        return Err(Error::LevelTooSmall { q: order });
    }
    let mut builder = IncrementalBuilder::new();
    builder.advance_to(order);
    Ok(builder.snapshot())
}

/// The churn at one order: what was inserted and which gaps vanished.
pub fn level_delta(order: u64) -> Result<LevelDelta, Error> {
    if order < 4 {
        return Err(Error::OutOfRange("level deltas start at order 4"));
    }
    let mut builder = IncrementalBuilder::new();
    builder.advance_to(order - 1);
    Ok(builder.advance())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    fn fracs(level: &SaturatedLevel) -> Vec<(u64, u64)> {
        level
            .elements()
            .iter()
            .map(|e| (e.num(), e.den()))
            .collect()
    }

    #[test]
    fn base_levels_by_filter() {
        assert_eq!(fracs(&build_filter(3).unwrap()), vec![(1, 1)]);
        assert_eq!(fracs(&build_filter(4).unwrap()), vec![(1, 2), (1, 1)]);
        assert_eq!(
            fracs(&build_filter(5).unwrap()),
            vec![(1, 3), (1, 2), (1, 1)]
        );
        let l10 = build_filter(10).unwrap();
        assert_eq!(l10.s(), 12);
        assert_eq!(l10.elements()[0].fraction(), Fraction::new(1, 8).unwrap());
        assert!(build_filter(2).is_err());
    }

    #[test]
    fn incremental_matches_filter_small() {
        for order in 3..=120 {
            let a = build_filter(order).unwrap();
            let b = build_incremental(order).unwrap();
            assert_eq!(a.elements(), b.elements(), "order {order}");
        }
    }

    #[test]
    fn incremental_known_insertions() {
        let mut builder = IncrementalBuilder::new();
        let d4 = builder.advance();
        assert_eq!(d4.inserted, vec![Fraction::new(1, 2).unwrap()]);
        assert_eq!(d4.vanished.len(), 1);
        assert_eq!(d4.vanished[0].left, None);
        assert_eq!(d4.vanished[0].right, Fraction::one());

        builder.advance_to(6);
        let d7 = builder.advance();
        let inserted: Vec<_> = d7.inserted.iter().map(|f| (f.num(), f.den())).collect();
        assert_eq!(inserted, vec![(1, 5), (2, 3)]);

        let d16 = level_delta(16).unwrap();
        assert!(d16.inserted.contains(&Fraction::new(5, 9).unwrap()));
        let d20 = level_delta(20).unwrap();
        assert!(d20.inserted.contains(&Fraction::new(4, 9).unwrap()));
    }

    #[test]
    fn delta_mediants_match_vanished_pairs() {
        for order in 4..=80 {
            let delta = level_delta(order).unwrap();
            assert_eq!(delta.inserted.len(), delta.vanished.len());
            for (ins, gap) in delta.inserted.iter().zip(&delta.vanished) {
                assert_eq!(*ins, gap.mediant());
            }
        }
    }

    #[test]
    fn modular_partition_holds_and_detects_corruption() {
        for order in [3, 5, 20, 60] {
            let level = build_filter(order).unwrap();
            assert_eq!(verify_modular_partition(&level), Ok(()));
        }
        let mut level = build_filter(20).unwrap();
        level.elements.remove(3);
        assert!(verify_modular_partition(&level).is_err());
    }

    #[test]
    fn phi_table_first_orders() {
        let expected = [1u64, 1, 1, 1, 2, 1, 1, 4, 1, 1, 4, 2, 3, 4, 1, 4, 4, 5];
        for (i, &want) in expected.iter().enumerate() {
            assert_eq!(phi(3 + i as u64).unwrap(), want, "phi({})", 3 + i);
        }
        let rows = phi_range(3, 20).unwrap();
        assert_eq!(rows.len(), 18);
        assert_eq!(rows[0], (3, 1, 1));
        assert_eq!(rows[17], (20, 5, 41));
        for (i, &(q, p, s)) in rows.iter().enumerate() {
            assert_eq!(q, 3 + i as u64);
            assert_eq!(p, expected[i]);
            let total: u64 = expected[..=i].iter().sum();
            assert_eq!(s, total);
        }
    }

    #[test]
    fn index_identity_small_orders() {
        assert_eq!(index_sum(&build_filter(3).unwrap()), 2);
        let l20 = build_filter(20).unwrap();
        assert_eq!(l20.s(), 41);
        assert_eq!(index_sum(&l20), 3 * 41 - 1);
        for order in 3..=100 {
            let level = build_filter(order).unwrap();
            assert_eq!(index_sum(&level), 3 * level.s() - 1, "order {order}");
        }
    }

    #[test]
    fn interval_counts() {
        let l5 = build_filter(5).unwrap();
        assert_eq!(l5.count_interval(Ratio::ZERO), 0);
        assert_eq!(l5.count_interval(Ratio::ONE), 3);
        assert_eq!(l5.count_interval(Ratio::new(1, 2).unwrap()), 2);
        assert!((l5.asymmetry_ratio() - 2.0 / 3.0).abs() < 1e-15);
        let l3 = build_filter(3).unwrap();
        assert_eq!(l3.count_interval(Ratio::new(1, 2).unwrap()), 0);
        assert_eq!(l3.asymmetry_ratio(), 0.0);
    }

    #[test]
    fn levels_nest() {
        let mut prev = build_filter(3).unwrap();
        for order in 4..=60 {
            let cur = build_filter(order).unwrap();
            let set: Vec<_> = fracs(&cur);
            for e in prev.elements() {
                assert!(
                    set.contains(&(e.num(), e.den())),
                    "lost {}/{}",
                    e.num(),
                    e.den()
                );
            }
            prev = cur;
        }
    }
}
