use crate::error::{GeomError, Result};

/// The known Fermat primes.
pub const FERMAT_PRIMES: [u64; 5] = [3, 5, 17, 257, 65537];

/// Whether a regular `n`-gon can be drawn with ruler and compass: `n` must
/// be a power of two times a product of distinct Fermat primes.
pub fn is_constructible_ngon(n: u64) -> Result<bool> {
    if n < 3 {
        return Err(GeomError::domain(format!(
            "a polygon needs at least 3 sides, got {n}"
        )));
    }
    let mut m = n >> n.trailing_zeros();
    for p in FERMAT_PRIMES {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return Ok(false);
            }
        }
    }
    Ok(m == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(n: u64) -> bool {
        // n = 2^k * distinct Fermat primes, checked by trial over subsets
        let odd = n >> n.trailing_zeros();
        (0u32..32).any(|mask| {
            FERMAT_PRIMES
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, p)| *p)
                .product::<u64>()
                == odd
        })
    }

    #[test]
    fn small_cases() {
        let yes: Vec<u64> = (3..=20).filter(|&n| is_constructible_ngon(n).unwrap()).collect();
        assert_eq!(yes, vec![3, 4, 5, 6, 8, 10, 12, 15, 16, 17, 20]);
        assert!(!is_constructible_ngon(7).unwrap());
        assert!(!is_constructible_ngon(9).unwrap());
        assert!(is_constructible_ngon(257).unwrap());
        assert!(is_constructible_ngon(65537 * 2).unwrap());
    }

    #[test]
    fn matches_subset_enumeration() {
        for n in 3..5000 {
            assert_eq!(is_constructible_ngon(n).unwrap(), brute(n), "n = {n}");
        }
    }

    #[test]
    fn rejects_too_few_sides() {
        assert!(is_constructible_ngon(2).is_err());
        assert!(is_constructible_ngon(0).is_err());
    }
}
