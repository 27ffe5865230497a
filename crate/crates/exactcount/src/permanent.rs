use crate::error::{Error, Result};
use crate::hafnian::hafnian_polyspace;
use crate::matrix::{block_antidiagonal, Matrix};
use crate::ring::Ring;

pub const PERMANENT_BRUTEFORCE_CAP: usize = 10;

/// Permanent by inclusion-exclusion over column subsets,
///
///   per(A) = (-1)^n sum_S (-1)^|S| prod_i sum_{j in S} A[i][j],
///
/// walking subsets in Gray-code order so each step updates the row sums by
/// a single column: O(n 2^n) ring operations.
pub fn permanent_ryser<R: Ring>(ring: &R, a: &Matrix<R>) -> R::Elem {
    let n = a.n();
    assert!(n < 60, "dimension {n} is far beyond desk scale");
    if n == 0 {
        return ring.one();
    }
    let mut rowsums = vec![ring.zero(); n];
    let mut total = ring.zero();
    for t in 1u64..1 << n {
        let flipped = t.trailing_zeros() as usize;
        let gray = t ^ (t >> 1);
        if gray >> flipped & 1 == 1 {
            for i in 0..n {
                ring.add_assign(&mut rowsums[i], a.get(i, flipped));
            }
        } else {
            for i in 0..n {
                ring.sub_assign(&mut rowsums[i], a.get(i, flipped));
            }
        }
        let mut term = rowsums[0].clone();
        for rs in &rowsums[1..] {
            term = ring.mul(&term, rs);
        }
        if (n - gray.count_ones() as usize) % 2 == 0 {
            ring.add_assign(&mut total, &term);
        } else {
            ring.sub_assign(&mut total, &term);
        }
    }
    total
}

/// Permanent by enumerating all n! column assignments. Oracle only, hence
/// the tight cap.
pub fn permanent_bruteforce<R: Ring>(ring: &R, a: &Matrix<R>) -> Result<R::Elem> {
    fn rec<R: Ring>(
        ring: &R,
        a: &Matrix<R>,
        row: usize,
        used: &mut [bool],
        prod: &R::Elem,
        acc: &mut R::Elem,
    ) {
        if row == a.n() {
            ring.add_assign(acc, prod);
            return;
        }
        for j in 0..a.n() {
            if used[j] || ring.is_zero(a.get(row, j)) {
                continue;
            }
            used[j] = true;
            let p = ring.mul(prod, a.get(row, j));
            rec(ring, a, row + 1, used, &p, acc);
            used[j] = false;
        }
    }

    let n = a.n();
    if n > PERMANENT_BRUTEFORCE_CAP {
        return Err(Error::cap(
            "matrix dimension for the brute-force permanent",
            PERMANENT_BRUTEFORCE_CAP as u64,
            n as u64,
        ));
    }
    let mut used = vec![false; n];
    let mut acc = ring.zero();
    rec(ring, a, 0, &mut used, &ring.one(), &mut acc);
    Ok(acc)
}

/// Permanent through the symmetric embedding: per(A) equals the hafnian of
/// [[0, A], [A^T, 0]], evaluated with the polynomial-space engine.
pub fn permanent_via_hafnian<R: Ring>(ring: &R, a: &Matrix<R>) -> R::Elem {
    hafnian_polyspace(ring, &block_antidiagonal(ring, a))
}
