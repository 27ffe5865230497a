use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Chinese remaindering: given pairs (residue, modulus) with pairwise
/// coprime moduli, return the unique integer in [0, prod moduli) matching
/// every residue. An empty list yields 0 (the modulus-1 convention).
pub fn crt_combine(residues: &[(u64, u64)]) -> Result<BigInt> {
    for &(r, m) in residues {
        if m < 2 {
            return Err(Error::invalid(format!("modulus {m} must be at least 2")));
        }
        if r >= m {
            return Err(Error::invalid(format!(
                "residue {r} is not reduced modulo {m}"
            )));
        }
    }
    for i in 0..residues.len() {
        for j in i + 1..residues.len() {
            let (a, b) = (residues[i].1, residues[j].1);
            if gcd_u64(a, b) != 1 {
                return Err(Error::NonCoprimeModuli { a, b });
            }
        }
    }

    let mut x = BigInt::zero();
    let mut modulus = BigInt::one();
    for &(r, m) in residues {
        let m_big = BigInt::from(m);
        // Solve x' = x (mod modulus), x' = r (mod m):
        // x' = x + modulus * k with k = (r - x) / modulus (mod m).
        let gcd = modulus.extended_gcd(&m_big);
        debug_assert!(gcd.gcd.is_one());
        let inv = gcd.x.mod_floor(&m_big);
        let k = ((BigInt::from(r) - &x) * inv).mod_floor(&m_big);
        x += &modulus * k;
        modulus *= m_big;
        debug_assert!(!x.is_negative() && x < modulus);
    }
    Ok(x)
}

/// The `count` smallest prime powers exceeding `lower_bound`, one per prime
/// starting from 2: for each prime p the least power p^e > lower_bound.
/// Distinct primes make the results pairwise coprime by construction.
pub fn coprime_moduli(count: usize, lower_bound: u64) -> Vec<u64> {
    assert!(
        lower_bound < 1 << 62,
        "lower bound {lower_bound} leaves no headroom in u64"
    );
    Primes::new()
        .take(count)
        .map(|p| {
            let mut power = p;
            while power <= lower_bound {
                power = power.checked_mul(p).expect("prime power overflows u64");
            }
            power
        })
        .collect()
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Primes by trial division; plenty for the handful of moduli ever needed.
struct Primes {
    found: Vec<u64>,
    next: u64,
}

impl Primes {
    fn new() -> Self {
        Primes {
            found: Vec::new(),
            next: 2,
        }
    }
}

impl Iterator for Primes {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        loop {
            let c = self.next;
            self.next += 1;
            if self
                .found
                .iter()
                .take_while(|&&p| p * p <= c)
                .all(|&p| c % p != 0)
            {
                self.found.push(c);
                return Some(c);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::rng;
    use rand::Rng;

    #[test]
    fn moduli_examples() {
        assert_eq!(coprime_moduli(3, 10), vec![16, 27, 25]);
        assert_eq!(coprime_moduli(1, 1), vec![2]);
        assert_eq!(coprime_moduli(2, 100), vec![128, 243]);
        assert_eq!(coprime_moduli(5, 4), vec![8, 9, 5, 7, 11]);
        assert_eq!(coprime_moduli(0, 10), Vec::<u64>::new());
    }

    #[test]
    fn primes_start_correctly() {
        let ps: Vec<u64> = Primes::new().take(10).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn combine_roundtrip() {
        let moduli = coprime_moduli(3, 10);
        let product: u64 = moduli.iter().product();
        assert_eq!(product, 16 * 27 * 25);
        let mut r = rng(31);
        for _ in 0..300 {
            let v = r.gen_range(0..product);
            let residues: Vec<(u64, u64)> = moduli.iter().map(|&m| (v % m, m)).collect();
            assert_eq!(crt_combine(&residues).unwrap(), BigInt::from(v));
        }
    }

    #[test]
    fn combine_small_example() {
        // x = 1 (mod 4), x = 2 (mod 9) -> 29 is the unique answer below 36.
        let got = crt_combine(&[(1, 4), (2, 9)]).unwrap();
        assert_eq!(got, BigInt::from(29));
        for x in 0u64..36 {
            let fits = x % 4 == 1 && x % 9 == 2;
            assert_eq!(fits, x == 29);
        }
    }

    #[test]
    fn empty_input_gives_zero() {
        assert_eq!(crt_combine(&[]).unwrap(), BigInt::zero());
    }

    #[test]
    fn non_coprime_rejected() {
        let err = crt_combine(&[(1, 4), (2, 6)]).unwrap_err();
        match err {
            Error::NonCoprimeModuli { a, b } => assert_eq!((a, b), (4, 6)),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn unreduced_residue_rejected() {
        assert!(crt_combine(&[(5, 4)]).is_err());
        assert!(crt_combine(&[(0, 1)]).is_err());
    }
}
