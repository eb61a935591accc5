//! Conway polynomial of a braid closure by the skein relation
//! ∇(L+) − ∇(L−) = z∇(L0), recursing until the diagram is descending.
//! Smoothing a braid crossing deletes the letter; switching it flips the sign.

use std::collections::BTreeMap;

/// Coefficients of z^0, z^1, ...
pub type Poly = Vec<i64>;

fn add(a: &Poly, b: &Poly, scale: i64, shift: usize) -> Poly {
    let mut out = a.clone();
    out.resize(out.len().max(b.len() + shift), 0);
    for (i, &c) in b.iter().enumerate() {
        out[i + shift] += scale * c;
    }
    while out.len() > 1 && *out.last().unwrap() == 0 {
        out.pop();
    }
    out
}

/// Letter positions where the traversal first meets a crossing from below.
fn first_bad_crossing(m: usize, word: &[i32]) -> Option<usize> {
    // Each strand traversal: start at a bottom position, go up the word.
    let mut seen = vec![false; word.len()];
    let mut done = vec![false; m];
    for start in 0..m {
        if done[start] {
            continue;
        }
        let mut pos = start;
        loop {
            if done[pos] {
                break;
            }
            done[pos] = true;
            for (idx, &l) in word.iter().enumerate() {
                let i = l.unsigned_abs() as usize - 1;
                if pos != i && pos != i + 1 {
                    continue;
                }
                let over_from = if l > 0 { i } else { i + 1 };
                if !seen[idx] {
                    seen[idx] = true;
                    if pos != over_from {
                        return Some(idx);
                    }
                }
                pos = if pos == i { i + 1 } else { i };
            }
        }
    }
    None
}

fn components(m: usize, word: &[i32]) -> usize {
    let mut at: Vec<usize> = (0..m).collect();
    for &l in word {
        let i = l.unsigned_abs() as usize - 1;
        at.swap(i, i + 1);
    }
    let mut seen = vec![false; m];
    let mut count = 0;
    for s in 0..m {
        if !seen[s] {
            count += 1;
            let mut j = s;
            while !seen[j] {
                seen[j] = true;
                j = at[j];
            }
        }
    }
    count
}

pub fn conway(m: usize, word: &[i32]) -> Poly {
    let mut memo = BTreeMap::new();
    go(m, word.to_vec(), &mut memo)
}

fn go(m: usize, word: Vec<i32>, memo: &mut BTreeMap<Vec<i32>, Poly>) -> Poly {
    if let Some(p) = memo.get(&word) {
        return p.clone();
    }
    let out = match first_bad_crossing(m, &word) {
        None => {
            if components(m, &word) == 1 {
                vec![1]
            } else {
                vec![0]
            }
        }
        Some(idx) => {
            let mut switched = word.clone();
            switched[idx] = -switched[idx];
            let mut smoothed = word.clone();
            smoothed.remove(idx);
            let a = go(m, switched, memo);
            let b = go(m, smoothed, memo);
            // Positive letter: ∇ = ∇(switched) + z∇(smoothed); negative: minus.
            add(&a, &b, word[idx].signum() as i64, 1)
        }
    };
    memo.insert(word, out.clone());
    out
}
