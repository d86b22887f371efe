//! Divisor counts split by parity.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DivisorStats {
    pub n: u64,
    /// all divisors
    pub d: u64,
    /// odd divisors
    pub d_minus: u64,
    /// even divisors
    pub d_plus: u64,
}

/// Counts divisors of `n >= 1` by trial division up to `sqrt(n)`.
pub fn divisor_stats(n: u64) -> DivisorStats {
    assert!(n >= 1, "divisor_stats needs n >= 1");
    let (mut d, mut odd) = (0, 0);
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            for e in if i * i == n { vec![i] } else { vec![i, n / i] } {
                d += 1;
                if e % 2 == 1 {
                    odd += 1;
                }
            }
        }
        i += 1;
    }
    DivisorStats { n, d, d_minus: odd, d_plus: d - odd }
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..).take_while(|i| i * i <= n).filter(|i| n % i == 0).flat_map(|i| [i, n / i]).collect();
    out.sort_unstable();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(divisor_stats(6), DivisorStats { n: 6, d: 4, d_minus: 2, d_plus: 2 });
        assert_eq!(divisor_stats(1), DivisorStats { n: 1, d: 1, d_minus: 1, d_plus: 0 });
        assert_eq!(divisor_stats(8), DivisorStats { n: 8, d: 4, d_minus: 1, d_plus: 3 });
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
    }

    proptest! {
        #[test]
        fn matches_naive(n in 1u64..5000) {
            let s = divisor_stats(n);
            let all: Vec<u64> = (1..=n).filter(|i| n % i == 0).collect();
            prop_assert_eq!(s.d as usize, all.len());
            prop_assert_eq!(s.d_minus as usize, all.iter().filter(|i| *i % 2 == 1).count());
            prop_assert_eq!(s.d, s.d_minus + s.d_plus);
            prop_assert!(s.d_minus >= 1);
            prop_assert_eq!(divisors(n), all);
        }
    }
}
