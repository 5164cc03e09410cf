//! Sieved divisor lists for all `n <= limit`.

/// Divisors of every `1 <= n <= limit`, stored contiguously and sorted ascending.
#[derive(Clone, Debug)]
pub struct DivisorTable {
    limit: usize,
    starts: Vec<usize>,
    divisors: Vec<u32>,
}

impl DivisorTable {
    pub fn new(limit: usize) -> Self {
        let mut counts = vec![0usize; limit + 1];
        for d in 1..=limit {
            let mut m = d;
            while m <= limit {
                counts[m] += 1;
                m += d;
            }
        }
        let mut starts = vec![0usize; limit + 2];
        for n in 1..=limit {
            starts[n + 1] = starts[n] + counts[n];
        }
        let mut fill = starts.clone();
        let mut divisors = vec![0u32; starts[limit + 1]];
        // d ascending keeps each list sorted.
        for d in 1..=limit {
            let mut m = d;
            while m <= limit {
                divisors[fill[m]] = d as u32;
                fill[m] += 1;
                m += d;
            }
        }
        DivisorTable { limit, starts, divisors }
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    /// Positive divisors of `n`; empty for `n == 0`. Panics if `n > limit`.
    pub fn divisors(&self, n: usize) -> &[u32] {
        assert!(n <= self.limit, "n = {} exceeds table limit {}", n, self.limit);
        if n == 0 {
            return &[];
        }
        &self.divisors[self.starts[n]..self.starts[n + 1]]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_trial_division() {
        let t = DivisorTable::new(300);
        for n in 1..=300usize {
            let brute: Vec<u32> = (1..=n as u32).filter(|d| n as u32 % d == 0).collect();
            assert_eq!(t.divisors(n), brute.as_slice());
        }
    }

    #[test]
    fn small_cases() {
        let t = DivisorTable::new(12);
        assert_eq!(t.divisors(1), &[1]);
        assert_eq!(t.divisors(12), &[1, 2, 3, 4, 6, 12]);
        assert!(t.divisors(0).is_empty());
    }
}
