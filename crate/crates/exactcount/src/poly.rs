use crate::ring::Ring;

/// Polynomials over a base ring, truncated at a fixed degree cap: arithmetic
/// silently drops every coefficient of degree > cap. An element is a dense
/// coefficient vector of length exactly cap + 1, index = degree.
///
/// Truncation commutes with ring arithmetic, so working at cap n from the
/// start gives the same degree-<=n coefficients as exact polynomials would.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing<R: Ring> {
    base: R,
    cap: usize,
}

impl<R: Ring> PolyRing<R> {
    pub fn new(base: R, cap: usize) -> Self {
        PolyRing { base, cap }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn len(&self) -> usize {
        self.cap + 1
    }

    pub fn constant(&self, c: R::Elem) -> Vec<R::Elem> {
        let mut p = self.zero();
        p[0] = c;
        p
    }

    /// c * r^degree. Degrees above the cap collapse to the zero polynomial.
    pub fn monomial(&self, degree: usize, c: R::Elem) -> Vec<R::Elem> {
        let mut p = self.zero();
        if degree <= self.cap {
            p[degree] = c;
        }
        p
    }

    pub fn coefficient_of(&self, p: &[R::Elem], degree: usize) -> R::Elem {
        assert!(degree <= self.cap, "degree {} above cap {}", degree, self.cap);
        assert_eq!(p.len(), self.cap + 1, "element has wrong length");
        p[degree].clone()
    }

    /// Multiply by r in place: shift coefficients one degree up, dropping
    /// the top one.
    pub fn shift_up(&self, p: &mut Vec<R::Elem>) {
        assert_eq!(p.len(), self.cap + 1);
        for d in (1..=self.cap).rev() {
            p[d] = p[d - 1].clone();
        }
        p[0] = self.base.zero();
    }

    fn effective_degree(&self, p: &[R::Elem]) -> Option<usize> {
        (0..p.len()).rev().find(|&d| !self.base.is_zero(&p[d]))
    }
}

impl<R: Ring> Ring for PolyRing<R> {
    type Elem = Vec<R::Elem>;

    fn zero(&self) -> Vec<R::Elem> {
        vec![self.base.zero(); self.cap + 1]
    }

    fn one(&self) -> Vec<R::Elem> {
        self.constant(self.base.one())
    }

    fn add(&self, a: &Vec<R::Elem>, b: &Vec<R::Elem>) -> Vec<R::Elem> {
        assert_eq!(a.len(), b.len());
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }

    fn neg(&self, a: &Vec<R::Elem>) -> Vec<R::Elem> {
        a.iter().map(|x| self.base.neg(x)).collect()
    }

    fn mul(&self, a: &Vec<R::Elem>, b: &Vec<R::Elem>) -> Vec<R::Elem> {
        assert_eq!(a.len(), self.cap + 1);
        assert_eq!(b.len(), self.cap + 1);
        let mut out = self.zero();
        // Skipping trailing zeros keeps products of low-degree polynomials
        // cheap even though storage is always full length.
        let (da, db) = match (self.effective_degree(a), self.effective_degree(b)) {
            (Some(da), Some(db)) => (da, db),
            _ => return out,
        };
        for i in 0..=da.min(self.cap) {
            if self.base.is_zero(&a[i]) {
                continue;
            }
            for j in 0..=db.min(self.cap - i) {
                let t = self.base.mul(&a[i], &b[j]);
                self.base.add_assign(&mut out[i + j], &t);
            }
        }
        out
    }

    fn from_i64(&self, v: i64) -> Vec<R::Elem> {
        self.constant(self.base.from_i64(v))
    }

    fn is_zero(&self, a: &Vec<R::Elem>) -> bool {
        a.iter().all(|x| self.base.is_zero(x))
    }

    fn add_assign(&self, a: &mut Vec<R::Elem>, b: &Vec<R::Elem>) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter_mut().zip(b) {
            self.base.add_assign(x, y);
        }
    }

    fn sub_assign(&self, a: &mut Vec<R::Elem>, b: &Vec<R::Elem>) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter_mut().zip(b) {
            self.base.sub_assign(x, y);
        }
    }
}
