//! Termination order for rule right-hand sides.
//!
//! Words are compared by, in turn: the number of (derivative, coordinate)
//! inversions, length, weight sum, and rank inversions. The last key is only
//! consulted between words over the same multiset of letters. A rule
//! `u·v → Σ c_w w` is accepted when every `w` is strictly smaller than `u·v`
//! and uses no more letters of each sort, which makes the order compatible
//! with concatenation.

use std::cmp::Ordering;

use super::{Alphabet, Letter, RelationTable, Word};
use crate::error::{Error, Result};
use crate::ring::Ring;

fn sort_counts(w: &[Letter], alpha: &Alphabet) -> [usize; 3] {
    let mut n = [0; 3];
    for &l in w {
        n[alpha.sort(l) as usize] += 1;
    }
    n
}

fn sort_inversions(w: &[Letter], alpha: &Alphabet) -> usize {
    let mut seen = [0usize; 3];
    let mut inv = 0;
    for &l in w {
        let s = alpha.sort(l) as usize;
        inv += seen[s + 1..].iter().sum::<usize>();
        seen[s] += 1;
    }
    inv
}

fn rank_inversions(w: &[Letter]) -> usize {
    let mut inv = 0;
    for (i, &a) in w.iter().enumerate() {
        inv += w[i + 1..].iter().filter(|&&b| b < a).count();
    }
    inv
}

fn weight(w: &[Letter], weights: &[u32]) -> u32 {
    w.iter().map(|&l| weights[l as usize]).sum()
}

/// Compares `rhs` against `lhs`; `Less` means the rewrite goes downhill.
fn compare(lhs: &[Letter], rhs: &[Letter], alpha: &Alphabet, weights: &[u32]) -> Option<Ordering> {
    let (cl, cr) = (sort_counts(lhs, alpha), sort_counts(rhs, alpha));
    if cr.iter().zip(&cl).any(|(r, l)| r > l) {
        return None;
    }
    let key = |w: &[Letter]| (sort_inversions(w, alpha), w.len(), weight(w, weights));
    match key(rhs).cmp(&key(lhs)) {
        Ordering::Equal => {
            let (mut a, mut b) = (lhs.to_vec(), rhs.to_vec());
            a.sort_unstable();
            b.sort_unstable();
            (a == b).then(|| rank_inversions(rhs).cmp(&rank_inversions(lhs)))
        }
        o => Some(o),
    }
}

/// Whether replacing the word `lhs` by `rhs` strictly decreases the order.
pub fn rule_decreases(lhs: &Word, rhs: &Word, alpha: &Alphabet, weights: &[u32]) -> bool {
    compare(lhs.letters(), rhs.letters(), alpha, weights) == Some(Ordering::Less)
}

/// Checks every rule of `table` against its stored weights.
pub fn check_orientation<C: Ring>(table: &RelationTable<C>) -> Result<()> {
    let alpha = table.alphabet();
    for rule in table.rules() {
        let lhs = Word::new(vec![rule.lhs.0, rule.lhs.1]);
        for (w, _) in rule.rhs.terms() {
            if !rule_decreases(&lhs, w, alpha, table.weights()) {
                return Err(Error::Orientation(table.render_rule(rule.lhs.0, rule.lhs.1)));
            }
        }
    }
    Ok(())
}

/// Searches letter weights in `{0, 1, 2}` under which every rule decreases.
/// Letters not involved in a weight comparison keep weight 1.
pub fn find_weights<C: Ring>(table: &RelationTable<C>) -> Result<Vec<u32>> {
    let alpha = table.alphabet();
    let n = alpha.len();
    let ones = vec![1; n];
    // each constraint: Σ weights(rhs) < Σ weights(lhs), stored as signed letter counts
    let mut constraints: Vec<Vec<(Letter, i64)>> = Vec::new();
    for rule in table.rules() {
        let lhs = [rule.lhs.0, rule.lhs.1];
        for (w, _) in rule.rhs.terms() {
            let rhs = w.letters();
            let (cl, cr) = (sort_counts(&lhs, alpha), sort_counts(rhs, alpha));
            let a = (sort_inversions(rhs, alpha), rhs.len());
            let b = (sort_inversions(&lhs, alpha), lhs.len());
            if cr.iter().zip(&cl).any(|(r, l)| r > l) || a > b {
                return Err(Error::Orientation(table.render_rule(rule.lhs.0, rule.lhs.1)));
            }
            if a < b {
                continue;
            }
            let mut diff = vec![0i64; n];
            for &l in rhs {
                diff[l as usize] += 1;
            }
            for &l in &lhs {
                diff[l as usize] -= 1;
            }
            if diff.iter().all(|&d| d == 0) {
                if rank_inversions(rhs) >= rank_inversions(&lhs) {
                    return Err(Error::Orientation(table.render_rule(rule.lhs.0, rule.lhs.1)));
                }
                continue;
            }
            constraints.push(diff.iter().enumerate().filter(|(_, &d)| d != 0).map(|(l, &d)| (l as Letter, d)).collect());
        }
    }
    let holds = |c: &[(Letter, i64)], w: &[u32]| c.iter().map(|&(l, d)| d * w[l as usize] as i64).sum::<i64>() < 0;
    if constraints.iter().all(|c| holds(c, &ones)) {
        return Ok(ones);
    }
    let mut involved: Vec<Letter> = constraints.iter().flatten().map(|&(l, _)| l).collect();
    involved.sort_unstable();
    involved.dedup();
    let mut w = ones;
    if search(&involved, 0, &mut w, &constraints, &holds) {
        Ok(w)
    } else {
        Err(Error::Orientation("no letter weights in {0, 1, 2} orient the table".into()))
    }
}

fn search(
    involved: &[Letter],
    k: usize,
    w: &mut Vec<u32>,
    constraints: &[Vec<(Letter, i64)>],
    holds: &dyn Fn(&[(Letter, i64)], &[u32]) -> bool,
) -> bool {
    let assigned = |c: &[(Letter, i64)]| c.iter().all(|(l, _)| involved[..k].contains(l));
    if constraints.iter().any(|c| assigned(c) && !holds(c, w)) {
        return false;
    }
    if k == involved.len() {
        return true;
    }
    for v in [1, 0, 2] {
        w[involved[k] as usize] = v;
        if search(involved, k + 1, w, constraints, holds) {
            return true;
        }
    }
    w[involved[k] as usize] = 1;
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivative_moves_right() {
        let a = Alphabet::from_names(&["x"], &["dx"]).unwrap();
        let w = [1; 2];
        assert!(rule_decreases(&Word::new(vec![1, 0]), &Word::new(vec![0, 1]), &a, &w));
        assert!(rule_decreases(&Word::new(vec![1, 0]), &Word::empty(), &a, &w));
        assert!(!rule_decreases(&Word::new(vec![0, 1]), &Word::new(vec![1, 0]), &a, &w));
    }

    #[test]
    fn weights_break_ties() {
        let a = Alphabet::from_names(&[], &["da", "db", "dd"]).unwrap();
        let lhs = Word::new(vec![1, 0]);
        let rhs = Word::new(vec![1, 2]);
        assert!(!rule_decreases(&lhs, &rhs, &a, &[1, 1, 1]));
        assert!(rule_decreases(&lhs, &rhs, &a, &[1, 1, 0]));
    }
}
