//! Restricted growth strings: `s[0] = 0` and `s[i] <= 1 + max(s[..i])`.
//!
//! Each string encodes one set partition of `n` positions (position `i` goes
//! to block `s[i]`). Strings come out in lexicographic order.

#[derive(Debug, Clone)]
pub struct RestrictedGrowth {
    current: Vec<usize>,
    // prefix_max[i] = max(current[..=i])
    prefix_max: Vec<usize>,
    done: bool,
    started: bool,
}

impl RestrictedGrowth {
    pub fn new(n: usize) -> Self {
        RestrictedGrowth { current: vec![0; n], prefix_max: vec![0; n], done: false, started: false }
    }

    fn advance(&mut self) -> bool {
        let n = self.current.len();
        if n == 0 {
            return false;
        }
        let mut i = n - 1;
        while i > 0 {
            let bound = self.prefix_max[i - 1] + 1;
            if self.current[i] < bound {
                self.current[i] += 1;
                self.prefix_max[i] = self.prefix_max[i - 1].max(self.current[i]);
                for j in i + 1..n {
                    self.current[j] = 0;
                    self.prefix_max[j] = self.prefix_max[i];
                }
                return true;
            }
            i -= 1;
        }
        false
    }
}

impl Iterator for RestrictedGrowth {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if self.started && !self.advance() {
            self.done = true;
            return None;
        }
        self.started = true;
        Some(self.current.clone())
    }
}

/// Number of blocks encoded by a restricted growth string.
pub fn block_count(s: &[usize]) -> usize {
    s.iter().max().map_or(0, |m| m + 1)
}

/// Block sizes of the encoded partition, indexed by block label.
pub fn block_sizes(s: &[usize]) -> Vec<usize> {
    let mut sizes = vec![0; block_count(s)];
    for &b in s {
        sizes[b] += 1;
    }
    sizes
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases_in_order() {
        let all: Vec<_> = RestrictedGrowth::new(3).collect();
        assert_eq!(all, vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 1, 0], vec![0, 1, 1], vec![0, 1, 2]]);
        assert_eq!(RestrictedGrowth::new(0).collect::<Vec<_>>(), vec![Vec::<usize>::new()]);
        assert_eq!(RestrictedGrowth::new(1).count(), 1);
    }

    #[test]
    fn counts_are_bell_numbers() {
        // Bell numbers from the Bell triangle, computed independently.
        let mut row = vec![1u64];
        let mut bell = vec![1u64];
        for _ in 0..9 {
            let mut next = vec![*row.last().unwrap()];
            for x in &row {
                next.push(next.last().unwrap() + x);
            }
            bell.push(next[0]);
            row = next;
        }
        for (n, b) in bell.iter().enumerate().take(10) {
            assert_eq!(RestrictedGrowth::new(n).count() as u64, *b, "n = {n}");
        }
    }

    #[test]
    fn sizes() {
        assert_eq!(block_sizes(&[0, 1, 0, 2, 1]), vec![2, 2, 1]);
        assert_eq!(block_count(&[]), 0);
    }
}
