//! Finite-horizon adversarial values by min-plus dynamic programming.
//!
//! For a fixed `y`-word, Bob's best reply is a min-plus matrix product over
//! the positions of the word; [`min_cost`] carries the running minimum per
//! terminal `x`-letter and [`h_table`] the variant with both endpoint
//! letters pinned. On top of these sit the max-min value [`r_k`] (Alice
//! maximizes over `y`-words of length `k`) and [`delta_bracket`], which
//! traps the asymptotic value between a periodic-orbit lower bound and the
//! approximately-subadditive upper bound `(r_k + 4 D_X ||f||) / k`.

use num_traits::Zero;

use crate::cycle::{alpha_per_lower, PsiValue};
use crate::error::{Error, Result};
use crate::exec;
use crate::potential::Potential;
use crate::rat::{format_rat, rat_i, Rat};
use crate::sft::{default_transitivity_cap, transitivity_constant, Sft, Word};

/// Per-terminal-letter running minima of the fiber DP. `None` means no
/// legal `x`-word reaches that letter (only possible with pinned
/// endpoints; the unconstrained DP is finite everywhere because the shift
/// is essential).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostVector {
    pub entries: Vec<Option<Rat>>,
}

impl CostVector {
    /// Minimum over finite entries; the unconstrained DP value.
    pub fn min(&self) -> Option<&Rat> {
        self.entries.iter().flatten().min()
    }
}

/// Result of the unconstrained fiber minimum against one `y`-word.
#[derive(Debug, Clone)]
pub struct MinCost {
    pub value: Rat,
    /// Lexicographically least minimizing `x`-word, positioned like the
    /// `y`-word.
    pub argmin: Word,
    pub final_vector: CostVector,
}

/// `min_x sum_j F(x(j), y(j))` over legal `x`-words along `y_word`.
pub fn min_cost(x_sft: &Sft, p: &Potential, y_word: &Word) -> MinCost {
    let k = y_word.len();
    assert!(k >= 1, "y-word must be nonempty");
    let nx = x_sft.len();
    let y = &y_word.letters;

    // forward pass: cheapest way to sit at letter u after position j
    let mut forward: Vec<Rat> = (0..nx).map(|u| p.value(u, y[0]).clone()).collect();
    for &yj in &y[1..] {
        forward = (0..nx)
            .map(|v| {
                let best = x_sft
                    .predecessors(v)
                    .iter()
                    .map(|&u| &forward[u])
                    .min()
                    .expect("essential shift: every letter has a predecessor");
                best + p.value(v, yj)
            })
            .collect();
    }

    // backward pass gives cost-to-go, which makes the lexicographically
    // least argmin a greedy forward walk
    let mut backward: Vec<Vec<Rat>> = vec![Vec::new(); k];
    backward[k - 1] = (0..nx).map(|u| p.value(u, y[k - 1]).clone()).collect();
    for j in (0..k - 1).rev() {
        backward[j] = (0..nx)
            .map(|u| {
                let best = x_sft
                    .successors(u)
                    .iter()
                    .map(|&v| &backward[j + 1][v])
                    .min()
                    .expect("essential shift: every letter has a successor");
                p.value(u, y[j]) + best
            })
            .collect();
    }
    // backward[j][v] already includes F(v, y(j)), so a prefix with running
    // cost `acc` extends tightly through v exactly when acc + backward[j][v]
    // equals the optimum
    let value = backward[0].iter().min().unwrap().clone();
    let mut argmin = Vec::with_capacity(k);
    let first = (0..nx).find(|&u| backward[0][u] == value).unwrap();
    argmin.push(first);
    let mut acc = p.value(first, y[0]).clone();
    for j in 1..k {
        let u = *argmin.last().unwrap();
        let v = *x_sft
            .successors(u)
            .iter()
            .find(|&&v| &acc + &backward[j][v] == value)
            .expect("cost-to-go table admits a tight successor");
        acc += p.value(v, y[j]);
        argmin.push(v);
    }

    MinCost {
        value,
        argmin: Word::new(y_word.start, argmin),
        final_vector: CostVector {
            entries: forward.into_iter().map(Some).collect(),
        },
    }
}

/// Endpoint-pinned fiber minima on the interval covered by a `y`-word:
/// entry `(v1, v2)` is the cheapest `x`-word with `x(a) = v1, x(b) = v2`.
/// The domain is exactly the joinable pairs.
#[derive(Debug, Clone)]
pub struct EndpointTable {
    pub a: i64,
    pub b: i64,
    pub entries: std::collections::BTreeMap<(usize, usize), Rat>,
}

impl EndpointTable {
    pub fn min(&self) -> Option<&Rat> {
        self.entries.values().min()
    }
}

pub fn h_table(x_sft: &Sft, p: &Potential, y_word: &Word) -> EndpointTable {
    let k = y_word.len();
    assert!(k >= 1, "y-word must be nonempty");
    let nx = x_sft.len();
    let y = &y_word.letters;
    let mut entries = std::collections::BTreeMap::new();
    for v1 in 0..nx {
        let mut row: Vec<Option<Rat>> = (0..nx)
            .map(|u| (u == v1).then(|| p.value(v1, y[0]).clone()))
            .collect();
        for &yj in &y[1..] {
            row = (0..nx)
                .map(|v| {
                    x_sft
                        .predecessors(v)
                        .iter()
                        .filter_map(|&u| row[u].as_ref())
                        .min()
                        .map(|best| best + p.value(v, yj))
                })
                .collect();
        }
        for (v2, cost) in row.into_iter().enumerate() {
            if let Some(cost) = cost {
                entries.insert((v1, v2), cost);
            }
        }
    }
    EndpointTable {
        a: y_word.start,
        b: y_word.end(),
        entries,
    }
}

/// Self-test of the endpoint-pinning estimate: every pinned minimum sits
/// within `4 D_X ||f||` of the free minimum.
pub fn sandwich_check(x_sft: &Sft, p: &Potential, y_word: &Word, d_x: u64) -> bool {
    let free = min_cost(x_sft, p, y_word).value;
    let slack = rat_i(4) * rat_i(d_x as i64) * p.sup_norm();
    let hi = &free + &slack;
    h_table(x_sft, p, y_word)
        .entries
        .values()
        .all(|h| *h >= free && *h <= hi)
}

/// One row of the max-min table: Alice's best `y`-word of length `k` and
/// its value.
#[derive(Debug, Clone)]
pub struct RkResult {
    pub k: usize,
    pub value: Rat,
    pub argmax: Word,
}

struct Prefix {
    word: Vec<usize>,
    state: usize,
    cv: Vec<Rat>,
}

/// `max_y min_x` over words of length `k`. Enumeration fans out over
/// `y`-prefixes; a prefix is pruned when a lexicographically earlier prefix
/// in the same `y`-state dominates its cost vector entrywise, which changes
/// neither the value nor the lexicographically least maximizer.
pub fn r_k(x_sft: &Sft, y_sft: &Sft, p: &Potential, k: usize, budget: u64) -> Result<RkResult> {
    Ok(r_k_table(x_sft, y_sft, p, k, budget)?.pop().unwrap())
}

/// All of `r_1 .. r_k_max` from one swept enumeration.
pub fn r_k_table(
    x_sft: &Sft,
    y_sft: &Sft,
    p: &Potential,
    k_max: usize,
    budget: u64,
) -> Result<Vec<RkResult>> {
    assert!(k_max >= 1);
    let count = y_sft.count_words(k_max);
    if count > budget.into() {
        return Err(Error::BudgetExceeded {
            needed: count.to_string(),
            cap: budget,
        });
    }
    let nx = x_sft.len();
    let mut rows = Vec::with_capacity(k_max);

    // layer 1: one prefix per y-letter
    let mut states: Vec<Prefix> = (0..y_sft.len())
        .map(|yl| Prefix {
            word: vec![yl],
            state: yl,
            cv: (0..nx).map(|u| p.value(u, yl).clone()).collect(),
        })
        .collect();
    rows.push(layer_max(&states, 1));

    for j in 2..=k_max {
        let expanded = exec::map_vec(&states, |s| {
            // min over predecessors once per target letter, then extend per
            // y-successor
            let reach: Vec<Rat> = (0..nx)
                .map(|v| {
                    x_sft
                        .predecessors(v)
                        .iter()
                        .map(|&u| &s.cv[u])
                        .min()
                        .unwrap()
                        .clone()
                })
                .collect();
            y_sft
                .successors(s.state)
                .iter()
                .map(|&yl| {
                    let mut word = s.word.clone();
                    word.push(yl);
                    Prefix {
                        word,
                        state: yl,
                        cv: (0..nx).map(|v| &reach[v] + p.value(v, yl)).collect(),
                    }
                })
                .collect::<Vec<_>>()
        });
        states = prune_layer(expanded.into_iter().flatten(), y_sft.len());
        rows.push(layer_max(&states, j));
    }
    Ok(rows)
}

/// Keep a candidate unless an earlier (hence lexicographically smaller)
/// kept prefix with the same `y`-state dominates it entrywise.
fn prune_layer(candidates: impl Iterator<Item = Prefix>, y_len: usize) -> Vec<Prefix> {
    let mut kept: Vec<Prefix> = Vec::new();
    let mut by_state: Vec<Vec<usize>> = vec![Vec::new(); y_len];
    for cand in candidates {
        let dominated = by_state[cand.state].iter().any(|&i| {
            kept[i]
                .cv
                .iter()
                .zip(&cand.cv)
                .all(|(kc, cc)| kc >= cc)
        });
        if !dominated {
            by_state[cand.state].push(kept.len());
            kept.push(cand);
        }
    }
    kept
}

fn layer_max(states: &[Prefix], k: usize) -> RkResult {
    let mut best: Option<(&Prefix, Rat)> = None;
    for s in states {
        let v = s.cv.iter().min().unwrap().clone();
        if best.as_ref().map_or(true, |(_, bv)| v > *bv) {
            best = Some((s, v));
        }
    }
    let (s, value) = best.expect("layer is nonempty");
    RkResult {
        k,
        value,
        argmax: Word::from_letters(s.word.clone()),
    }
}

/// Certified interval with provenance strings for both endpoints.
#[derive(Debug, Clone)]
pub struct Bracket {
    pub lo: Rat,
    pub hi: Rat,
    pub lo_witness: String,
    pub hi_witness: String,
}

impl Bracket {
    pub fn point(v: Rat, witness: String) -> Self {
        Bracket {
            lo: v.clone(),
            hi: v,
            lo_witness: witness.clone(),
            hi_witness: witness,
        }
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn contains(&self, v: &Rat) -> bool {
        self.lo <= *v && *v <= self.hi
    }

    pub fn intersect(&self, other: &Bracket) -> Option<Bracket> {
        let (lo, lo_witness) = if self.lo >= other.lo {
            (self.lo.clone(), self.lo_witness.clone())
        } else {
            (other.lo.clone(), other.lo_witness.clone())
        };
        let (hi, hi_witness) = if self.hi <= other.hi {
            (self.hi.clone(), self.hi_witness.clone())
        } else {
            (other.hi.clone(), other.hi_witness.clone())
        };
        (lo <= hi).then_some(Bracket {
            lo,
            hi,
            lo_witness,
            hi_witness,
        })
    }
}

/// One row of the delta report CSV.
#[derive(Debug, Clone)]
pub struct DeltaRow {
    pub k: usize,
    pub r_k: Rat,
    pub hi_k: Rat,
    pub argmax: Word,
}

#[derive(Debug, Clone)]
pub struct DeltaReport {
    pub bracket: Bracket,
    pub rows: Vec<DeltaRow>,
    /// The gluing constant actually used for the upper bound.
    pub glue: Rat,
    /// True when the subadditivity self-test forced the constant above
    /// `4 D_X ||f||`. A degraded run is still a valid enclosure but fails
    /// acceptance.
    pub degraded: bool,
    pub d_x: u64,
    pub d_y: u64,
    pub lo_orbit: PsiValue,
}

/// Certified enclosure of the adversarial value: periodic orbits from below,
/// `min_k (r_k + c)/k` from above with `c = 4 D_X ||f||` validated against
/// the computed table (and enlarged, flagging the run degraded, if the
/// validation ever failed).
pub fn delta_bracket(
    x_sft: &Sft,
    y_sft: &Sft,
    p: &Potential,
    k_max: usize,
    orbit_period_max: usize,
    budget: u64,
) -> Result<Bracket> {
    delta_report(x_sft, y_sft, p, k_max, orbit_period_max, budget).map(|r| r.bracket)
}

pub fn delta_report(
    x_sft: &Sft,
    y_sft: &Sft,
    p: &Potential,
    k_max: usize,
    orbit_period_max: usize,
    budget: u64,
) -> Result<DeltaReport> {
    let d_x = transitivity_constant(x_sft, default_transitivity_cap(x_sft.len())).ok_or_else(
        || Error::NotTransitive {
            name: "X".into(),
            cap: default_transitivity_cap(x_sft.len()),
        },
    )?;
    let d_y = transitivity_constant(y_sft, default_transitivity_cap(y_sft.len())).ok_or_else(
        || Error::NotTransitive {
            name: "Y".into(),
            cap: default_transitivity_cap(y_sft.len()),
        },
    )?;

    let table = r_k_table(x_sft, y_sft, p, k_max, budget)?;
    let base_glue = rat_i(4 * d_x as i64) * p.sup_norm();

    // validate approximate subadditivity on the computed table; the theory
    // gives r_{m+n} <= r_m + r_n + 2(D-1)||f||, so this should never bind
    let mut glue = base_glue.clone();
    for m in 1..k_max {
        for n in m..k_max {
            if m + n > k_max {
                break;
            }
            let excess = &table[m + n - 1].value - &table[m - 1].value - &table[n - 1].value;
            if excess > glue {
                glue = excess;
            }
        }
    }
    let degraded = glue > base_glue;

    let rows: Vec<DeltaRow> = table
        .iter()
        .map(|r| DeltaRow {
            k: r.k,
            r_k: r.value.clone(),
            hi_k: (&r.value + &glue) / rat_i(r.k as i64),
            argmax: r.argmax.clone(),
        })
        .collect();
    let best = rows
        .iter()
        .min_by(|a, b| a.hi_k.cmp(&b.hi_k))
        .expect("k_max >= 1");
    let hi = best.hi_k.clone();
    let hi_witness = format!(
        "(r_{k} + c)/{k} with r_{k} = {r}, c = {c}",
        k = best.k,
        r = format_rat(&best.r_k),
        c = format_rat(&glue),
    );

    let (lo, lo_orbit) = alpha_per_lower(x_sft, y_sft, p, orbit_period_max)?;
    let lo_witness = format!(
        "psi of orbit [{}] (period {})",
        y_sft.alphabet().format_word(lo_orbit.orbit.letters()),
        lo_orbit.orbit.period(),
    );

    if lo > hi {
        return Err(Error::Inconsistency(format!(
            "periodic lower bound {} exceeds subadditive upper bound {}",
            format_rat(&lo),
            format_rat(&hi)
        )));
    }
    Ok(DeltaReport {
        bracket: Bracket {
            lo,
            hi,
            lo_witness,
            hi_witness,
        },
        rows,
        glue,
        degraded,
        d_x,
        d_y,
        lo_orbit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;
    use crate::DEFAULT_BUDGET;

    fn golden_mean() -> Sft {
        Sft::from_edges(&["0", "1"], &[("0", "0"), ("0", "1"), ("1", "0")]).unwrap()
    }

    fn full2() -> Sft {
        Sft::full_shift(&["0", "1"]).unwrap()
    }

    fn hamming2() -> Potential {
        Potential::hamming(full2().alphabet())
    }

    fn word(letters: &[usize]) -> Word {
        Word::from_letters(letters.to_vec())
    }

    // exhaustive oracle: enumerate all legal x-words
    fn brute_min_cost(x: &Sft, p: &Potential, y: &[usize]) -> (Rat, Vec<usize>) {
        x.legal_words(y.len())
            .into_iter()
            .map(|w| {
                let cost: Rat = w.iter().zip(y).map(|(&u, &yl)| p.value(u, yl).clone()).sum();
                (cost, w)
            })
            .min()
            .unwrap()
    }

    #[test]
    fn constant_potential_costs_k_times_c() {
        let x = golden_mean();
        let y = full2();
        let p = Potential::constant(x.alphabet().clone(), y.alphabet().clone(), rat_i(-3));
        let mc = min_cost(&x, &p, &word(&[1, 1, 0, 1]));
        assert_eq!(mc.value, rat_i(-12));
        assert_eq!(mc.argmin.letters, vec![0, 0, 0, 0], "lex least on ties");
    }

    #[test]
    fn golden_mean_against_all_ones() {
        let x = golden_mean();
        let p = hamming2();
        let mc = min_cost(&x, &p, &word(&[1, 1, 1, 1]));
        assert_eq!(mc.value, rat_i(2));
        assert_eq!(mc.argmin.letters, vec![0, 1, 0, 1]);
        let (bv, bw) = brute_min_cost(&x, &p, &[1, 1, 1, 1]);
        assert_eq!(mc.value, bv);
        assert_eq!(mc.argmin.letters, bw);
    }

    #[test]
    fn full_shift_copies_the_y_word() {
        let x = full2();
        let p = hamming2();
        for y in full2().legal_words(5) {
            let mc = min_cost(&x, &p, &word(&y));
            assert_eq!(mc.value, rat_i(0));
            assert_eq!(mc.argmin.letters, y);
        }
    }

    #[test]
    fn final_vector_min_is_the_value() {
        let x = golden_mean();
        let p = hamming2();
        for y in full2().legal_words(6) {
            let mc = min_cost(&x, &p, &word(&y));
            assert_eq!(mc.final_vector.min(), Some(&mc.value));
        }
    }

    #[test]
    fn h_table_min_equals_min_cost() {
        let x = golden_mean();
        let p = hamming2();
        for y in full2().legal_words(5) {
            let yw = word(&y);
            let table = h_table(&x, &p, &yw);
            assert_eq!(table.min(), Some(&min_cost(&x, &p, &yw).value));
        }
    }

    #[test]
    fn h_table_length_one_is_diagonal() {
        let x = full2();
        let p = hamming2();
        let table = h_table(&x, &p, &word(&[1]));
        let pairs: Vec<(usize, usize)> = table.entries.keys().copied().collect();
        assert_eq!(pairs, vec![(0, 0), (1, 1)]);
    }

    #[test]
    fn h_table_respects_pinned_endpoints() {
        let x = golden_mean();
        let p = hamming2();
        let y = [1, 1, 1];
        let table = h_table(&x, &p, &word(&y));
        for ((v1, v2), h) in &table.entries {
            let brute = x
                .legal_words(3)
                .into_iter()
                .filter(|w| w[0] == *v1 && w[2] == *v2)
                .map(|w| -> Rat { w.iter().zip(&y).map(|(&u, &yl)| p.value(u, yl).clone()).sum() })
                .min()
                .unwrap();
            assert_eq!(*h, brute);
        }
        // (1,1) at distance 2 is joinable via 101
        assert!(table.entries.contains_key(&(1, 1)));
    }

    #[test]
    fn sandwich_holds_on_small_instances() {
        let p = hamming2();
        assert!(sandwich_check(&full2(), &p, &word(&[1, 0, 1]), 1));
        assert!(sandwich_check(&golden_mean(), &p, &word(&[1, 1, 1, 1]), 2));
        let c = Potential::constant(full2().alphabet().clone(), full2().alphabet().clone(), rat_i(5));
        assert!(sandwich_check(&full2(), &c, &word(&[0, 1]), 1));
    }

    #[test]
    fn rk_flagship_small_horizon() {
        let x = golden_mean();
        let y = full2();
        let p = hamming2();
        let r = r_k(&x, &y, &p, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.value, rat_i(1));
        assert_eq!(r.argmax.letters, vec![1, 1]);
    }

    #[test]
    fn rk_constant_picks_lex_least_word() {
        let x = golden_mean();
        let y = golden_mean();
        let p = Potential::constant(x.alphabet().clone(), y.alphabet().clone(), rat(-1, 2));
        let r = r_k(&x, &y, &p, 4, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.value, rat_i(-2));
        assert_eq!(r.argmax.letters, vec![0, 0, 0, 0]);
    }

    #[test]
    fn rk_copying_is_zero() {
        let p = hamming2();
        for k in 1..=6 {
            let r = r_k(&full2(), &full2(), &p, k, DEFAULT_BUDGET).unwrap();
            assert_eq!(r.value, rat_i(0));
        }
    }

    // unpruned oracle
    fn brute_r_k(x: &Sft, y: &Sft, p: &Potential, k: usize) -> (Rat, Vec<usize>) {
        y.legal_words(k)
            .into_iter()
            .map(|yw| {
                let (v, _) = brute_min_cost(x, p, &yw);
                (v, yw)
            })
            .max_by(|(a, aw), (b, bw)| a.cmp(b).then(bw.cmp(aw)))
            .unwrap()
    }

    #[test]
    fn pruned_rk_matches_exhaustive() {
        let x = golden_mean();
        let y = full2();
        let p = hamming2();
        for k in 1..=8 {
            let fast = r_k(&x, &y, &p, k, DEFAULT_BUDGET).unwrap();
            let (bv, bw) = brute_r_k(&x, &y, &p, k);
            assert_eq!(fast.value, bv, "value at k={k}");
            assert_eq!(fast.argmax.letters, bw, "argmax at k={k}");
        }
    }

    #[test]
    fn rk_budget_guard() {
        let err = r_k(&golden_mean(), &full2(), &hamming2(), 10, 7).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { cap: 7, .. }));
    }

    #[test]
    fn delta_zero_potential_is_a_point() {
        let x = full2();
        let y = full2();
        let p = Potential::constant(x.alphabet().clone(), y.alphabet().clone(), rat_i(0));
        let b = delta_bracket(&x, &y, &p, 6, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(b.lo, rat_i(0));
        assert_eq!(b.hi, rat_i(0));
    }

    #[test]
    fn delta_copying_upper_bound() {
        let b = delta_bracket(&full2(), &full2(), &hamming2(), 8, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(b.lo, rat_i(0));
        assert_eq!(b.hi, rat(4, 8), "r_k = 0, c = 4*1*1, best k = k_max");
    }

    #[test]
    fn delta_flagship_bracket() {
        let report = delta_report(&golden_mean(), &full2(), &hamming2(), 12, 6, DEFAULT_BUDGET)
            .unwrap();
        assert!(!report.degraded);
        assert_eq!(report.d_x, 2);
        assert_eq!(report.bracket.lo, rat(1, 2));
        assert_eq!(report.bracket.hi, rat(7, 6), "(6 + 8)/12");
        assert!(report.bracket.width() <= rat_i(1));
        // r_k follows the floor(k/2) pattern
        for row in &report.rows {
            assert_eq!(row.r_k, rat_i((row.k / 2) as i64), "r_{}", row.k);
        }
    }

    #[test]
    fn delta_nesting_in_both_budgets() {
        let x = golden_mean();
        let y = full2();
        let p = hamming2();
        let mut prev: Option<Bracket> = None;
        for (k_max, pmax) in [(4, 1), (6, 2), (8, 3), (10, 4)] {
            let b = delta_bracket(&x, &y, &p, k_max, pmax, DEFAULT_BUDGET).unwrap();
            if let Some(prev) = &prev {
                assert!(b.lo >= prev.lo && b.hi <= prev.hi, "brackets must nest");
            }
            prev = Some(b);
        }
    }

    #[test]
    fn delta_requires_transitivity() {
        let period2 = Sft::from_edges(&["0", "1"], &[("0", "1"), ("1", "0")]).unwrap();
        let err = delta_bracket(&period2, &full2(), &hamming2(), 4, 2, DEFAULT_BUDGET).unwrap_err();
        assert!(matches!(err, Error::NotTransitive { .. }));
    }
}
