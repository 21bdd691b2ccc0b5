//! Small combinatorial helpers: binomial coefficients and lexicographic
//! subset enumeration.

/// Exact binomial coefficient. Panics on overflow, which cannot happen for
/// the argument ranges used in this crate (n well below 100).
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for i in 0..k {
        // Multiply before dividing; the running value is always an integer.
        c = c * (n - i) as u128 / (i + 1) as u128;
    }
    c
}

/// log2 of a product of binomial coefficients, computed from the exact
/// integer value.
pub fn log2_binomial_product(factors: &[(usize, usize)]) -> f64 {
    let mut p: u128 = 1;
    for &(n, k) in factors {
        p *= binomial(n, k);
    }
    (p as f64).log2()
}

/// Exact factorial as f64 (exact up to 22!).
pub fn factorial(n: usize) -> f64 {
    let mut f = 1.0;
    for i in 2..=n {
        f *= i as f64;
    }
    f
}

/// Iterator over all k-element subsets of `0..n` in lexicographic order.
pub struct Combinations {
    n: usize,
    k: usize,
    current: Vec<usize>,
    started: bool,
    done: bool,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            k,
            current: (0..k).collect(),
            started: false,
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(self.current.clone());
        }
        // Advance to the next combination in lexicographic order.
        let k = self.k;
        if k == 0 {
            self.done = true;
            return None;
        }
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                return None;
            }
            i -= 1;
            if self.current[i] < self.n - k + i {
                self.current[i] += 1;
                for j in i + 1..k {
                    self.current[j] = self.current[j - 1] + 1;
                }
                return Some(self.current.clone());
            }
        }
    }
}

/// All k-element subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Combinations {
    Combinations::new(n, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(4, 5), 0);
        assert_eq!(binomial(30, 15), 155117520);
    }

    #[test]
    fn combination_count_matches_binomial() {
        for n in 0..=7 {
            for k in 0..=n {
                let count = combinations(n, k).count() as u128;
                assert_eq!(count, binomial(n, k), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn combinations_are_lexicographic() {
        let all: Vec<Vec<usize>> = combinations(4, 2).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
    }

    #[test]
    fn empty_subset() {
        let all: Vec<Vec<usize>> = combinations(3, 0).collect();
        assert_eq!(all, vec![Vec::<usize>::new()]);
    }

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0), 1.0);
        assert_eq!(factorial(5), 120.0);
        assert_eq!(factorial(12), 479001600.0);
    }
}
