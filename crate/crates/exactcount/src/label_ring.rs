use crate::poly::PolyRing;
use crate::ring::Ring;

/// The base ring extended by m commuting labels u_1..u_m with u_i^2 = 0.
/// An element is a dense vector of 2^m base coefficients indexed by label
/// subset, stored as a bitmask (label i <-> bit i-1). Products combine
/// coefficients on disjoint subsets and kill overlapping ones, i.e.
/// multiplication is subset convolution.
///
/// The ring with m-1 labels sits inside the ring with m labels by zero
/// padding, which is what `embed` does.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelRing<R: Ring> {
    base: R,
    labels: usize,
}

/// Per-subset polynomials in an auxiliary variable r, the intermediate form
/// of the fast convolution: ranked zeta gives hat(e)_X(r) = sum over Y
/// inside X of e_Y r^|Y|, and products of transforms multiply pointwise as
/// truncated polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankedTransform<T> {
    labels: usize,
    polys: Vec<Vec<T>>,
}

impl<T> RankedTransform<T> {
    pub fn labels(&self) -> usize {
        self.labels
    }

    pub fn poly(&self, mask: usize) -> &[T] {
        &self.polys[mask]
    }
}

impl<R: Ring> LabelRing<R> {
    pub fn new(base: R, labels: usize) -> Self {
        assert!(labels <= 30, "label count {labels} is far beyond desk scale");
        LabelRing { base, labels }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn labels(&self) -> usize {
        self.labels
    }

    /// Number of coefficients per element, 2^labels.
    pub fn len(&self) -> usize {
        1 << self.labels
    }

    pub fn full_mask(&self) -> usize {
        self.len() - 1
    }

    pub fn singleton(&self, mask: usize, c: R::Elem) -> Vec<R::Elem> {
        assert!(mask < self.len(), "subset mask out of range");
        let mut e = self.zero();
        e[mask] = c;
        e
    }

    pub fn from_pairs(&self, pairs: &[(usize, R::Elem)]) -> Vec<R::Elem> {
        let mut e = self.zero();
        for (mask, c) in pairs {
            assert!(*mask < self.len(), "subset mask out of range");
            self.base.add_assign(&mut e[*mask], c);
        }
        e
    }

    pub fn coeff<'a>(&self, e: &'a [R::Elem], mask: usize) -> &'a R::Elem {
        assert_eq!(e.len(), self.len());
        &e[mask]
    }

    /// The coefficient on the full label set, which is where squeezed
    /// hafnians accumulate.
    pub fn top_coeff(&self, e: &[R::Elem]) -> R::Elem {
        self.coeff(e, self.full_mask()).clone()
    }

    /// Zero-pad an element of a smaller label ring (coefficient length a
    /// power of two at most 2^labels) into this one.
    pub fn embed(&self, e: &[R::Elem]) -> Vec<R::Elem> {
        assert!(e.len().is_power_of_two() && e.len() <= self.len());
        let mut out = e.to_vec();
        out.resize(self.len(), self.base.zero());
        out
    }

    /// Multiply an element of the ring with one fewer label by the top
    /// label u_m: coefficients move from subset Y to Y + {m}, which is a
    /// plain copy into the upper half of the vector.
    pub fn tag_with_top_label(&self, e: &[R::Elem]) -> Vec<R::Elem> {
        assert!(self.labels >= 1);
        let half = self.len() / 2;
        assert_eq!(e.len(), half);
        let mut out = vec![self.base.zero(); self.len()];
        out[half..].clone_from_slice(e);
        out
    }

    pub fn scale(&self, e: &[R::Elem], c: &R::Elem) -> Vec<R::Elem> {
        e.iter().map(|x| self.base.mul(x, c)).collect()
    }

    /// Reference subset convolution by direct enumeration of all 3^m
    /// (subset, sub-subset) pairs. Quadratic-exponential, but obviously
    /// correct; the fast path is checked against it.
    pub fn mul_naive(&self, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
        assert_eq!(a.len(), self.len());
        assert_eq!(b.len(), self.len());
        let mut out = self.zero();
        for x in 0..self.len() {
            let mut s = x;
            loop {
                let t = self.base.mul(&a[s], &b[x ^ s]);
                self.base.add_assign(&mut out[x], &t);
                if s == 0 {
                    break;
                }
                s = (s - 1) & x;
            }
        }
        out
    }

    fn poly_ring(&self) -> PolyRing<R> {
        PolyRing::new(self.base.clone(), self.labels)
    }

    /// Ranked zeta transform: for every subset X the polynomial
    /// sum_{Y in X} e_Y r^|Y|, truncated at degree m. Computed bit by bit
    /// in O(m 2^m) polynomial additions.
    pub fn ranked_zeta(&self, e: &[R::Elem]) -> RankedTransform<R::Elem> {
        assert_eq!(e.len(), self.len());
        let pr = self.poly_ring();
        let mut polys: Vec<Vec<R::Elem>> = (0..self.len())
            .map(|mask| pr.monomial(mask.count_ones() as usize, e[mask].clone()))
            .collect();
        for bit in 0..self.labels {
            let step = 1usize << bit;
            for x in 0..self.len() {
                if x & step != 0 {
                    let (lo, hi) = polys.split_at_mut(x);
                    pr.add_assign(&mut hi[0], &lo[x ^ step]);
                }
            }
        }
        RankedTransform {
            labels: self.labels,
            polys,
        }
    }

    /// Top coefficient of the ranked inverse: reads off the degree-m
    /// coefficient of the alternating sum over all subsets, which equals
    /// the full-set coordinate of the element the transform came from
    /// (or of a pointwise product of transforms).
    pub fn ranked_mobius_top(&self, t: &RankedTransform<R::Elem>) -> R::Elem {
        assert_eq!(t.labels, self.labels);
        let m = self.labels;
        let mut acc = self.base.zero();
        for x in 0..self.len() {
            let top = &t.polys[x][m];
            if (m - x.count_ones() as usize) % 2 == 0 {
                self.base.add_assign(&mut acc, top);
            } else {
                self.base.sub_assign(&mut acc, top);
            }
        }
        acc
    }

    /// The full-set coefficient of a product of many factors without ever
    /// forming the product: streams over subsets X, building each factor's
    /// ranked transform at X by direct submask summation, so live storage
    /// is O(k + m) polynomials instead of O(2^m).
    ///
    /// An empty factor list is the empty product 1[emptyset], whose full-set
    /// coefficient is 1 exactly when m = 0.
    pub fn product_top_coefficient(&self, factors: &[Vec<R::Elem>]) -> R::Elem {
        let m = self.labels;
        for f in factors {
            assert_eq!(f.len(), self.len());
        }
        let pr = self.poly_ring();
        let mut acc = self.base.zero();
        for x in 0..self.len() {
            let mut g = pr.one();
            for f in factors {
                let mut fx = pr.zero();
                let mut y = x;
                loop {
                    self.base
                        .add_assign(&mut fx[y.count_ones() as usize], &f[y]);
                    if y == 0 {
                        break;
                    }
                    y = (y - 1) & x;
                }
                g = pr.mul(&g, &fx);
            }
            let top = &g[m];
            if (m - x.count_ones() as usize) % 2 == 0 {
                self.base.add_assign(&mut acc, top);
            } else {
                self.base.sub_assign(&mut acc, top);
            }
        }
        acc
    }
}

impl<R: Ring> Ring for LabelRing<R> {
    type Elem = Vec<R::Elem>;

    fn zero(&self) -> Vec<R::Elem> {
        vec![self.base.zero(); self.len()]
    }

    fn one(&self) -> Vec<R::Elem> {
        self.singleton(0, self.base.one())
    }

    fn add(&self, a: &Vec<R::Elem>, b: &Vec<R::Elem>) -> Vec<R::Elem> {
        assert_eq!(a.len(), self.len());
        assert_eq!(b.len(), self.len());
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }

    fn neg(&self, a: &Vec<R::Elem>) -> Vec<R::Elem> {
        a.iter().map(|x| self.base.neg(x)).collect()
    }

    /// Fast subset convolution: ranked zeta of both factors, pointwise
    /// truncated polynomial products, ranked Moebius inversion, then read
    /// the degree-|X| coefficient at every X. O(m^2 2^m) base operations.
    fn mul(&self, a: &Vec<R::Elem>, b: &Vec<R::Elem>) -> Vec<R::Elem> {
        assert_eq!(a.len(), self.len());
        assert_eq!(b.len(), self.len());
        let pr = self.poly_ring();
        let za = self.ranked_zeta(a);
        let zb = self.ranked_zeta(b);
        let mut prod: Vec<Vec<R::Elem>> = za
            .polys
            .iter()
            .zip(&zb.polys)
            .map(|(p, q)| pr.mul(p, q))
            .collect();
        for bit in 0..self.labels {
            let step = 1usize << bit;
            for x in 0..self.len() {
                if x & step != 0 {
                    let (lo, hi) = prod.split_at_mut(x);
                    pr.sub_assign(&mut hi[0], &lo[x ^ step]);
                }
            }
        }
        prod.iter()
            .enumerate()
            .map(|(x, p)| p[x.count_ones() as usize].clone())
            .collect()
    }

    fn from_i64(&self, v: i64) -> Vec<R::Elem> {
        self.singleton(0, self.base.from_i64(v))
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
