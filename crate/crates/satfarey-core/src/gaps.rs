//! Gap records: consecutive level elements with the chain of Farey
//! fractions whose insertion is still pending between them.
//!
//! For adjacent level elements `a1/q1 < a_{r+1}/q_{r+1}` at order `Q`, the
//! fractions of the order-`Q` Farey set lying strictly between them are
//! recovered by mediant descent inside the gap (every such fraction is a
//! Stern–Brocot descendant of the endpoints). The chain carries:
//!
//! - the signature `ν_2 .. ν_r`, where `ν_i = ⌊(Q + q_{i−1})/q_i⌋` is the
//!   Farey index of the i-th chain member, so `q_{i+1} = ν_i q_i − q_{i−1}`;
//! - the continuant identity `K_{r−1}(ν_2, …, ν_r) = 1`;
//! - the unique position `i` with `q_i = q_1 + q_{r+1}` (the mediant);
//! - the parameters `K = (q_2 − q_{r+1})/q_1` and `ν = (q_r − q_1)/q_{r+1}`,
//!   both positive integers whenever `r ≥ 2`.

use crate::frac::Fraction;
use crate::level::SaturatedLevel;
use crate::ratio::Box2;
use crate::{gcd, Error};
use alloc::vec::Vec;

/// Continuant of the three-term recurrence `K_l = x_l K_{l−1} − K_{l−2}`
/// with `K_{−1} = 0` and `K_0 = 1`; `continuant(&[]) = 1`.
pub fn continuant(xs: &[i64]) -> i64 {
    let (mut k_prev, mut k) = (0i64, 1i64);
    for &x in xs {
        (k_prev, k) = (k, x * k - k_prev);
    }
    k
}

/// A consecutive pair of a saturated level together with its intermediate
/// Farey chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapRecord {
    q_level: u64,
    /// `a_1/q_1 < … < a_{r+1}/q_{r+1}`, adjacent in the order-`Q` Farey set;
    /// the endpoints are level members, the interior fractions are not.
    fractions: Vec<Fraction>,
    /// `ν_2 .. ν_r`; empty when `r = 1`.
    signature: Vec<u64>,
    /// The 1-based chain position `i` with `q_i = q_1 + q_{r+1}` (`r ≥ 2`).
    mediant_pos: Option<usize>,
    k_nu: Option<(u64, u64)>,
}

impl GapRecord {
    pub fn q(&self) -> u64 {
        self.q_level
    }

    pub fn fractions(&self) -> &[Fraction] {
        &self.fractions
    }

    /// Number of Farey steps spanned: `r`, i.e. `r − 1` interior fractions.
    pub fn r(&self) -> usize {
        self.fractions.len() - 1
    }

    pub fn signature(&self) -> &[u64] {
        &self.signature
    }

    pub fn mediant_pos(&self) -> Option<usize> {
        self.mediant_pos
    }

    /// The `(K, ν)` parameters; present exactly when `r ≥ 2`.
    pub fn k_nu(&self) -> Option<(u64, u64)> {
        self.k_nu
    }

    /// The denominators `q_1 .. q_{r+1}` of the chain.
    pub fn denominators(&self) -> impl Iterator<Item = u64> + '_ {
        self.fractions.iter().map(|f| f.den())
    }

    /// The first and last denominators, i.e. the scaled pair coordinates.
    pub fn endpoints(&self) -> (u64, u64) {
        (
            self.fractions[0].den(),
            self.fractions[self.fractions.len() - 1].den(),
        )
    }
}

/// Recovers `(K, ν)` from the chain denominators: `K = (q_2 − q_{r+1})/q_1`
/// and `ν = (q_r − q_1)/q_{r+1}`.
///
/// # Panics
///
/// Panics when either quantity is not a positive integer; for genuine gap
/// chains with `r ≥ 2` both always are.
pub fn extract_k_nu(dens: &[u64]) -> (u64, u64) {
    assert!(dens.len() >= 3, "K and ν need a chain with r >= 2");
    let q1 = dens[0];
    let q2 = dens[1];
    let q_r = dens[dens.len() - 2];
    let q_last = dens[dens.len() - 1];
    assert!(
        q2 > q_last && (q2 - q_last).is_multiple_of(q1),
        "K = (q2 - q_last)/q1 must be a positive integer"
    );
    assert!(
        q_r > q1 && (q_r - q1).is_multiple_of(q_last),
        "ν = (q_r - q1)/q_last must be a positive integer"
    );
    ((q2 - q_last) / q1, (q_r - q1) / q_last)
}

/// First Farey fraction after `left` inside the gap, if any: descending
/// the Stern–Brocot spine toward `left` gives `k·left + right` with the
/// largest `k` keeping the denominator within the order.
fn first_intermediate(q_level: u64, left: (u64, u64), right: (u64, u64)) -> Option<(u64, u64)> {
    let k = (q_level - right.1) / left.1;
    (k >= 1).then(|| (k * left.0 + right.0, k * left.1 + right.1))
}

/// Builds the record for one gap by walking the order-`q_level` Farey set
/// from the left endpoint to the right one.
fn build_record(q_level: u64, left: (u64, u64), right: (u64, u64)) -> GapRecord {
    let mut fractions: Vec<(u64, u64)> = Vec::new();
    fractions.push(left);
    if let Some(first) = first_intermediate(q_level, left, right) {
        let (mut prev, mut cur) = (left, first);
        while cur != right {
            fractions.push(cur);
            let t = (q_level + prev.1) / cur.1;
            (prev, cur) = (cur, (t * cur.0 - prev.0, t * cur.1 - prev.1));
        }
    }
    fractions.push(right);

    let r = fractions.len() - 1;
    let q1 = left.1;
    let q_last = right.1;

    // Chain consistency: adjacent unimodular, denominators within order,
    // adjacent denominator sums beyond it (Farey adjacency).
    debug_assert!(fractions.iter().all(|&(_, q)| q <= q_level));
    for w in fractions.windows(2) {
        let ((a, q), (b, p)) = (w[0], w[1]);
        assert_eq!(
            b as i128 * q as i128 - a as i128 * p as i128,
            1,
            "chain is not unimodular"
        );
        assert!(
            q + p > q_level,
            "chain members are not Farey-adjacent at this order"
        );
    }

    let mut signature = Vec::with_capacity(r.saturating_sub(1));
    for i in 1..r {
        let nu = (q_level + fractions[i - 1].1) / fractions[i].1;
        signature.push(nu);
        assert_eq!(
            fractions[i + 1].1,
            nu * fractions[i].1 - fractions[i - 1].1,
            "index recurrence broke at position {}",
            i + 1
        );
    }

    let (mediant_pos, k_nu) = if r >= 2 {
        let med = q1 + q_last;
        let mut pos = None;
        for (i, &(_, q)) in fractions.iter().enumerate().take(r).skip(1) {
            if q == med {
                assert!(pos.is_none(), "mediant denominator attained twice");
                pos = Some(i + 1);
            }
        }
        let pos = pos.expect("mediant denominator must appear in the chain");
        let dens: Vec<u64> = fractions.iter().map(|&(_, q)| q).collect();
        (Some(pos), Some(extract_k_nu(&dens)))
    } else {
        (None, None)
    };

    GapRecord {
        q_level,
        fractions: fractions
            .into_iter()
            .map(|(a, q)| Fraction::from_raw(a, q))
            .collect(),
        signature,
        mediant_pos,
        k_nu,
    }
}

/// Streams the gap record of every consecutive pair of the level (no
/// wraparound, no virtual endpoint).
pub fn for_each_gap(level: &SaturatedLevel, mut f: impl FnMut(GapRecord)) {
    for (l, r) in level.pairs() {
        f(build_record(
            level.q(),
            (l.num(), l.den()),
            (r.num(), r.den()),
        ));
    }
}

/// Builds the record for the gap between two raw `(num, den)` endpoints,
/// which must be adjacent elements of the level of the given order (the
/// chain consistency assertions catch most misuse). Lets sweeps that hold
/// levels in other representations avoid materializing a [`SaturatedLevel`].
pub fn gap_record_between(q_level: u64, left: (u64, u64), right: (u64, u64)) -> GapRecord {
    build_record(q_level, left, right)
}

/// The number of Farey steps spanned by a gap (the `r` of its record),
/// computed by the same walk without storing the chain.
pub fn gap_span(q_level: u64, left: (u64, u64), right: (u64, u64)) -> usize {
    let mut span = 1;
    if let Some(first) = first_intermediate(q_level, left, right) {
        let (mut prev, mut cur) = (left, first);
        while cur != right {
            span += 1;
            let t = (q_level + prev.1) / cur.1;
            (prev, cur) = (cur, (t * cur.0 - prev.0, t * cur.1 - prev.1));
        }
    }
    span
}

/// All gap records of a level, in ascending order of the left endpoint.
pub fn gap_records(level: &SaturatedLevel) -> Vec<GapRecord> {
    let mut out = Vec::with_capacity(level.s().saturating_sub(1) as usize);
    for_each_gap(level, |rec| out.push(rec));
    out
}

/// Admissible signatures for small chain lengths; `None` when no closed
/// list is tabulated for the given `r`.
pub fn admissible_signatures(r: usize) -> Option<&'static [&'static [u64]]> {
    const R2: [&[u64]; 1] = [&[1]];
    const R3: [&[u64]; 2] = [&[2, 1], &[1, 2]];
    const R4: [&[u64]; 3] = [&[2, 2, 1], &[1, 3, 1], &[1, 2, 2]];
    const R5: [&[u64]; 4] = [&[2, 2, 2, 1], &[1, 3, 2, 1], &[1, 2, 3, 1], &[1, 2, 2, 2]];
    match r {
        2 => Some(&R2),
        3 => Some(&R3),
        4 => Some(&R4),
        5 => Some(&R5),
        _ => None,
    }
}

/// Next denominator after `(q1, q2)` among Farey neighbours at the given
/// order: `q3 = ⌊(order + q1)/q2⌋ q2 − q1`.
pub fn farey_step(q1: u64, q2: u64, order: u64) -> Result<u64, Error> {
    if q1 == 0 || q2 == 0 || q1 > order || q2 > order || q1 + q2 <= order || gcd(q1, q2) != 1 {
        return Err(Error::NotFareyNeighbors { q1, q2, order });
    }
    Ok(((order + q1) / q2) * q2 - q1)
}

/// The index `⌊(1 + x)/y⌋` of the Farey shift map at a point of the Farey
/// triangle `x + y > 1`. Floating point; at points where `(1 + x)/y` is an
/// exact integer the result can fall on either side of it — use
/// [`kappa_index`] for scaled denominator pairs, which is exact.
pub fn kappa(x: f64, y: f64) -> u64 {
    debug_assert!(y > 0.0);
    ((1.0 + x) / y) as u64
}

/// The shift index at the scaled point `(q1/order, q2/order)`, computed
/// exactly: `⌊(order + q1)/q2⌋`.
pub fn kappa_index(q1: u64, q2: u64, order: u64) -> u64 {
    debug_assert!(q2 > 0);
    (order + q1) / q2
}

/// Walks the denominators of consecutive Farey-set pairs at the given
/// order, from `(1, order)` through `(order, 1)`, calling `f` once per
/// pair. The number of calls equals the Farey set size.
pub fn for_each_farey_pair(order: u64, mut f: impl FnMut(u64, u64)) {
    debug_assert!(order >= 1);
    let (mut q1, mut q2) = (1u64, order);
    loop {
        f(q1, q2);
        if q2 == 1 {
            break;
        }
        (q1, q2) = (q2, ((order + q1) / q2) * q2 - q1);
    }
}

/// Fraction of consecutive Farey denominator pairs falling in the scaled
/// box, the empirical side of the uniform-distribution baseline.
pub fn farey_pairs_box_fraction(order: u64, bounds: &Box2) -> f64 {
    let mut inside = 0u64;
    let mut total = 0u64;
    for_each_farey_pair(order, |q1, q2| {
        total += 1;
        if bounds.contains_scaled(q1, q2, order) {
            inside += 1;
        }
    });
    inside as f64 / total as f64
}
