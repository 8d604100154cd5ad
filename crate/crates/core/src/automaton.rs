//! Aho–Corasick automaton recognising words that avoid a set of forbidden
//! factors. Used for normal-word counting and enumeration.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::word::{Letter, Word};

#[derive(Clone, Debug)]
pub struct ForbiddenAutomaton {
    weights: Vec<u32>,
    /// `delta[state][letter]`; `None` means a forbidden factor was completed.
    delta: Vec<Vec<Option<usize>>>,
}

impl ForbiddenAutomaton {
    pub fn new(weights: &[u32], forbidden: &[Word]) -> ForbiddenAutomaton {
        let n = weights.len();
        // trie
        let mut children: Vec<Vec<Option<usize>>> = vec![vec![None; n]];
        let mut terminal = vec![false];
        for w in forbidden {
            let mut s = 0;
            for &l in w.letters() {
                s = match children[s][l as usize] {
                    Some(t) => t,
                    None => {
                        children.push(vec![None; n]);
                        terminal.push(false);
                        let t = children.len() - 1;
                        children[s][l as usize] = Some(t);
                        t
                    }
                };
            }
            terminal[s] = true;
        }
        // failure links, BFS order
        let m = children.len();
        let mut fail = vec![0usize; m];
        let mut goto = vec![vec![0usize; n]; m];
        let mut queue = VecDeque::new();
        for a in 0..n {
            match children[0][a] {
                Some(t) => {
                    fail[t] = 0;
                    goto[0][a] = t;
                    queue.push_back(t);
                }
                None => goto[0][a] = 0,
            }
        }
        while let Some(s) = queue.pop_front() {
            if terminal[fail[s]] {
                terminal[s] = true;
            }
            for a in 0..n {
                match children[s][a] {
                    Some(t) => {
                        fail[t] = goto[fail[s]][a];
                        goto[s][a] = t;
                        queue.push_back(t);
                    }
                    None => goto[s][a] = goto[fail[s]][a],
                }
            }
        }
        // compress to live states
        let mut id = vec![usize::MAX; m];
        let mut live = 0;
        for s in 0..m {
            if !terminal[s] {
                id[s] = live;
                live += 1;
            }
        }
        let mut delta = vec![vec![None; n]; live];
        for s in 0..m {
            if terminal[s] {
                continue;
            }
            for a in 0..n {
                let t = goto[s][a];
                delta[id[s]][a] = if terminal[t] { None } else { Some(id[t]) };
            }
        }
        ForbiddenAutomaton {
            weights: weights.to_vec(),
            delta,
        }
    }

    pub fn state_count(&self) -> usize {
        self.delta.len()
    }

    pub fn alphabet_size(&self) -> usize {
        self.weights.len()
    }

    pub fn start(&self) -> usize {
        0
    }

    pub fn step(&self, state: usize, letter: Letter) -> Option<usize> {
        self.delta[state][letter as usize]
    }

    pub fn run(&self, state: usize, w: &[Letter]) -> Option<usize> {
        w.iter().try_fold(state, |s, &l| self.step(s, l))
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        self.run(0, w.letters()).is_some()
    }

    /// Number of normal continuations of each weighted degree `0..=max`
    /// starting from `state`.
    pub fn count_from(&self, state: usize, max: u32) -> Vec<BigInt> {
        let max = max as usize;
        let s = self.delta.len();
        // ways[d][q] = number of words of degree d leading from `state` to q
        let mut ways: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); s]; max + 1];
        ways[0][state] = BigInt::from(1);
        for d in 0..=max {
            for q in 0..s {
                if ways[d][q].is_zero() {
                    continue;
                }
                let c = ways[d][q].clone();
                for (a, &w) in self.weights.iter().enumerate() {
                    let nd = d + w as usize;
                    if nd > max {
                        continue;
                    }
                    if let Some(t) = self.delta[q][a] {
                        ways[nd][t] += &c;
                    }
                }
            }
        }
        ways.iter().map(|row| row.iter().sum()).collect()
    }

    pub fn count(&self, max: u32) -> Vec<BigInt> {
        self.count_from(0, max)
    }

    /// All normal words of weighted degree exactly `degree`, ascending.
    pub fn words_of_degree(&self, degree: u32) -> Vec<Word> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.collect(0, degree, &mut cur, &mut out);
        out.sort();
        out
    }

    /// Normal words `v` of degree `degree` such that `prefix · v` is normal,
    /// where `state` is the state after reading `prefix`.
    pub fn continuations(&self, state: usize, degree: u32) -> Vec<Word> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.collect(state, degree, &mut cur, &mut out);
        out.sort();
        out
    }

    fn collect(&self, state: usize, remaining: u32, cur: &mut Vec<Letter>, out: &mut Vec<Word>) {
        if remaining == 0 {
            out.push(Word::from_letters(cur.clone(), &self.weights));
            return;
        }
        for (a, &w) in self.weights.iter().enumerate() {
            if w > remaining {
                continue;
            }
            if let Some(t) = self.delta[state][a] {
                cur.push(a as Letter);
                self.collect(t, remaining - w, cur, out);
                cur.pop();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(l: &[Letter]) -> Word {
        Word::from_letters(l.to_vec(), &[1, 1])
    }

    #[test]
    fn free_algebra_counts() {
        let a = ForbiddenAutomaton::new(&[1, 1], &[]);
        let c = a.count(5);
        let expect: Vec<BigInt> = [1, 2, 4, 8, 16, 32].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(c, expect);
    }

    #[test]
    fn forbidding_yx() {
        // letters: 0 = y, 1 = x; forbid y x
        let a = ForbiddenAutomaton::new(&[1, 1], &[w(&[0, 1])]);
        let c = a.count(5);
        let expect: Vec<BigInt> = (1..=6).map(BigInt::from).collect();
        assert_eq!(c, expect);
        assert!(!a.is_normal(&w(&[1, 0, 1])));
        assert!(a.is_normal(&w(&[1, 1, 0, 0])));
        assert_eq!(a.words_of_degree(2).len(), 3);
    }

    #[test]
    fn overlapping_patterns_via_failure_links() {
        // forbid "aab" in alphabet {a=0,b=1}; word "aaab" contains it
        let a = ForbiddenAutomaton::new(&[1, 1], &[w(&[0, 0, 1])]);
        assert!(!a.is_normal(&w(&[0, 0, 0, 1])));
        assert!(a.is_normal(&w(&[0, 1, 0, 1])));
    }

    #[test]
    fn weighted_counts() {
        // x of degree 2, y of degree 1, nothing forbidden: c_n = c_{n-1} + c_{n-2}
        let a = ForbiddenAutomaton::new(&[1, 2], &[]);
        let c: Vec<i64> = a.count(6).iter().map(|v| v.try_into().unwrap()).collect();
        assert_eq!(c, vec![1, 1, 2, 3, 5, 8, 13]);
    }
}
