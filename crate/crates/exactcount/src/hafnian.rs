use std::cell::RefCell;
use std::rc::Rc;
use std::thread;

use crate::label_ring::LabelRing;
use crate::matrix::SymZeroDiag;
use crate::poly::PolyRing;
use crate::ring::Ring;

/// Which evaluation strategy to use for a hafnian / matching count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HafnianAlgo {
    /// Sum over all (2n-1)!! pairings. Reference oracle.
    Bruteforce,
    /// Squeeze recursion over the label-extension ring; O*(2^n) time but
    /// also exponential space.
    LabelRing,
    /// Squeeze recursion over truncated polynomials with an outer
    /// inclusion-exclusion over label subsets; O*(2^n) time, polynomial
    /// space.
    PolySpace,
}

impl HafnianAlgo {
    pub fn name(self) -> &'static str {
        match self {
            HafnianAlgo::Bruteforce => "bruteforce",
            HafnianAlgo::LabelRing => "labelring",
            HafnianAlgo::PolySpace => "polyspace",
        }
    }
}

impl std::str::FromStr for HafnianAlgo {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "bruteforce" => Ok(HafnianAlgo::Bruteforce),
            "labelring" => Ok(HafnianAlgo::LabelRing),
            "polyspace" => Ok(HafnianAlgo::PolySpace),
            other => Err(format!(
                "unknown algorithm '{other}' (expected bruteforce, labelring or polyspace)"
            )),
        }
    }
}

/// Peak number of simultaneously live ring elements, summed over the
/// engine's containers. Allocation counting, not allocator hooking.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EngineStats {
    pub peak_live_ring_elems: u64,
}

/// Hafnian by direct enumeration of perfect pairings of the index set:
/// repeatedly match the first unpaired index with every later one. Zero
/// entries prune the branch, so sparse matrices finish early.
pub fn hafnian_bruteforce<R: Ring>(ring: &R, b: &SymZeroDiag<R>) -> R::Elem {
    fn rec<R: Ring>(
        ring: &R,
        b: &SymZeroDiag<R>,
        used: &mut [bool],
        prod: &R::Elem,
        acc: &mut R::Elem,
    ) {
        let first = match used.iter().position(|u| !u) {
            Some(i) => i,
            None => {
                ring.add_assign(acc, prod);
                return;
            }
        };
        used[first] = true;
        for k in first + 1..b.dim() {
            if used[k] || ring.is_zero(b.get(first, k)) {
                continue;
            }
            let p = ring.mul(prod, b.get(first, k));
            used[k] = true;
            rec(ring, b, used, &p, acc);
            used[k] = false;
        }
        used[first] = false;
    }

    let mut used = vec![false; b.dim()];
    let mut acc = ring.zero();
    rec(ring, b, &mut used, &ring.one(), &mut acc);
    acc
}

/// Lift a matrix over the base ring into the label ring with zero labels,
/// the starting point of the squeeze recursion.
pub fn stage_zero<R: Ring>(ring: &R, b: &SymZeroDiag<R>) -> SymZeroDiag<LabelRing<R>> {
    let dim = b.dim();
    let mut entries = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            entries.push(vec![b.get(i, j).clone()]);
        }
    }
    let _ = ring;
    SymZeroDiag::from_parts_unchecked(dim, entries)
}

/// One squeeze step and the factor it splits off.
pub struct SqueezeResult<R: Ring> {
    /// Two rows shorter, entries in the label ring with `stage` labels.
    pub reduced: SymZeroDiag<LabelRing<R>>,
    /// 1 on the empty set plus the old (1,2) entry tagged with the new
    /// label; the product of all factors accumulates the hafnian on the
    /// full label set.
    pub factor: Vec<R::Elem>,
}

/// Squeeze out the first two rows and columns: every surviving entry picks
/// up the ways its pair could instead route through rows 1 and 2, tagged
/// with label `stage` so that overlapping uses of the shortcut cancel.
///
/// Input entries must live in the label ring with stage-1 labels; the
/// output lives one label up. Stages are 1-based.
pub fn squeeze<R: Ring>(
    base: &R,
    b: &SymZeroDiag<LabelRing<R>>,
    stage: usize,
) -> SqueezeResult<R> {
    assert!(stage >= 1, "stages are 1-based");
    let d = b.dim();
    assert!(d >= 2, "nothing left to squeeze");
    let prev = LabelRing::new(base.clone(), stage - 1);
    let next = LabelRing::new(base.clone(), stage);
    assert_eq!(
        b.get(0, 0).len(),
        prev.len(),
        "entries are not in the label ring with {} labels",
        stage - 1
    );

    let nd = d - 2;
    let mut entries = vec![next.zero(); nd * nd];
    for j in 0..nd {
        for k in j + 1..nd {
            let through = prev.add(
                &prev.mul(b.get(0, j + 2), b.get(1, k + 2)),
                &prev.mul(b.get(0, k + 2), b.get(1, j + 2)),
            );
            let mut e = next.embed(b.get(j + 2, k + 2));
            let half = next.len() / 2;
            e[half..].clone_from_slice(&through);
            entries[j * nd + k] = e.clone();
            entries[k * nd + j] = e;
        }
    }

    let mut factor = next.tag_with_top_label(b.get(0, 1));
    factor[0] = base.one();

    SqueezeResult {
        reduced: SymZeroDiag::from_parts_unchecked(nd, entries),
        factor,
    }
}

/// Exponential-space hafnian: run the squeeze to exhaustion, multiplying
/// the factors together in the label ring, and read the coefficient on the
/// full label set.
pub fn hafnian_labelring<R: Ring>(ring: &R, b: &SymZeroDiag<R>) -> R::Elem {
    hafnian_labelring_with_stats(ring, b).0
}

pub fn hafnian_labelring_with_stats<R: Ring>(
    ring: &R,
    b: &SymZeroDiag<R>,
) -> (R::Elem, EngineStats) {
    let n = b.dim() / 2;
    let mut cur = stage_zero(ring, b);
    let mut h: Vec<R::Elem> = vec![ring.one()];
    let mut live = matrix_elems(&cur) + 1;
    let mut peak = live;
    for i in 1..=n {
        let sq = squeeze(ring, &cur, i);
        let lr = LabelRing::new(ring.clone(), i);
        // Transient high-water mark while both stages plus the convolution
        // scratch (three transform tables) are alive.
        let scratch = 3 * (i as u64 + 1) * (1u64 << i);
        let candidate = live + matrix_elems(&sq.reduced) + 2 * (1u64 << i) + scratch;
        peak = peak.max(candidate);
        h = lr.mul(&lr.embed(&h), &sq.factor);
        cur = sq.reduced;
        live = matrix_elems(&cur) + h.len() as u64;
        peak = peak.max(live);
    }
    let top = h[h.len() - 1].clone();
    (
        top,
        EngineStats {
            peak_live_ring_elems: peak,
        },
    )
}

fn matrix_elems<R: Ring>(m: &SymZeroDiag<LabelRing<R>>) -> u64 {
    if m.dim() == 0 {
        return 0;
    }
    (m.dim() * m.dim()) as u64 * m.get(0, 0).len() as u64
}

// ---- polynomial-space evaluation ----------------------------------------
//
// For each label subset X the squeeze is replayed with every label
// specialized to the same variable r (kept only when the stage is in X),
// which turns label-ring entries into polynomials truncated at degree n.
// The alternating sum over X of the degree-n coefficient of the factor
// product is the hafnian.
//
// Replaying every stage per subset from scratch repeats the expensive
// early stages (big matrices) 2^n times, so the enumeration is organized
// into stage windows: the trailing 2^k stages form a window, preceded by a
// window of 2^(k-1) stages, and so on. Each window enumerates its own
// stage choices and parks one checkpoint matrix while the later windows
// run. Cost concentrates in the cheap deep stages, and only O(log n)
// checkpoints, a geometric series of sizes, are alive at once: O(n^2)
// truncated polynomials, the same space bound as a single replay.

#[derive(Default)]
struct Meter {
    live: u64,
    peak: u64,
}

impl Meter {
    fn alloc(&mut self, k: u64) {
        self.live += k;
        self.peak = self.peak.max(self.live);
    }

    fn free(&mut self, k: u64) {
        self.live -= k;
    }
}

type SharedMeter = Rc<RefCell<Meter>>;

/// Strict upper triangle of a stage matrix, entries are truncated
/// polynomials. Reports its slot count to the meter for its lifetime.
struct Tri<T> {
    dim: usize,
    data: Vec<Vec<T>>,
    slots: u64,
    meter: Option<SharedMeter>,
}

impl<T> Tri<T> {
    fn new(dim: usize, data: Vec<Vec<T>>, meter: Option<SharedMeter>) -> Self {
        debug_assert_eq!(data.len(), dim * (dim.max(1) - 1) / 2);
        let slots: u64 = data.iter().map(|p| p.len() as u64).sum();
        if let Some(m) = &meter {
            m.borrow_mut().alloc(slots);
        }
        Tri {
            dim,
            data,
            slots,
            meter,
        }
    }

    fn idx(&self, j: usize, k: usize) -> usize {
        debug_assert!(j < k && k < self.dim);
        j * self.dim - j * (j + 1) / 2 + (k - j - 1)
    }

    fn get(&self, j: usize, k: usize) -> &Vec<T> {
        &self.data[self.idx(j, k)]
    }
}

impl<T> Drop for Tri<T> {
    fn drop(&mut self) {
        if let Some(m) = &self.meter {
            m.borrow_mut().free(self.slots);
        }
    }
}

/// A stage matrix, possibly a tail view of a shared triangle: skipped
/// stages just advance the offset instead of copying.
struct StageView<T> {
    tri: Rc<Tri<T>>,
    off: usize,
}

impl<T> StageView<T> {
    fn dim(&self) -> usize {
        self.tri.dim - self.off
    }

    fn get(&self, j: usize, k: usize) -> &Vec<T> {
        self.tri.get(j + self.off, k + self.off)
    }

    fn skip(&self) -> StageView<T> {
        StageView {
            tri: Rc::clone(&self.tri),
            off: self.off + 2,
        }
    }

    fn clone_ref(&self) -> StageView<T> {
        StageView {
            tri: Rc::clone(&self.tri),
            off: self.off,
        }
    }
}

struct Ctx<'r, R: Ring> {
    ring: &'r R,
    pr: PolyRing<R>,
    n: usize,
    meter: Option<SharedMeter>,
}

impl<'r, R: Ring> Ctx<'r, R> {
    fn new(ring: &'r R, n: usize, meter: Option<SharedMeter>) -> Self {
        Ctx {
            ring,
            pr: PolyRing::new(ring.clone(), n),
            n,
            meter,
        }
    }

    fn input_view(&self, b: &SymZeroDiag<R>) -> StageView<R::Elem> {
        let dim = b.dim();
        let mut data = Vec::with_capacity(dim * (dim.max(1) - 1) / 2);
        for j in 0..dim {
            for k in j + 1..dim {
                data.push(self.pr.constant(b.get(j, k).clone()));
            }
        }
        StageView {
            tri: Rc::new(Tri::new(dim, data, self.meter.clone())),
            off: 0,
        }
    }

    /// Squeeze with the stage kept: new entries pick up r times the
    /// routes through the two dropped rows; the factor is 1 + r*B[1,2].
    fn squeeze_poly(&self, v: &StageView<R::Elem>) -> (StageView<R::Elem>, Vec<R::Elem>) {
        let d = v.dim();
        debug_assert!(d >= 2);
        let nd = d - 2;
        let mut data = Vec::with_capacity(nd * (nd.max(1) - 1) / 2);
        for j in 0..nd {
            for k in j + 1..nd {
                let mut s = self.pr.add(
                    &self.pr.mul(v.get(0, j + 2), v.get(1, k + 2)),
                    &self.pr.mul(v.get(0, k + 2), v.get(1, j + 2)),
                );
                self.pr.shift_up(&mut s);
                self.pr.add_assign(&mut s, v.get(j + 2, k + 2));
                data.push(s);
            }
        }
        let mut beta = v.get(0, 1).clone();
        self.pr.shift_up(&mut beta);
        beta[0] = self.ring.one();
        let view = StageView {
            tri: Rc::new(Tri::new(nd, data, self.meter.clone())),
            off: 0,
        };
        (view, beta)
    }

    /// Enumerate all keep/skip choices for stages `stage..=n`, given the
    /// checkpoint matrix for the stages already fixed. The leading
    /// `remaining - right` stages are enumerated directly from the
    /// checkpoint; the rest recurse with a fresh checkpoint per prefix.
    fn enum_range(
        &self,
        stage: usize,
        view: &StageView<R::Elem>,
        g: &Vec<R::Elem>,
        ones: usize,
        acc: &mut R::Elem,
    ) {
        let remaining = self.n + 1 - stage;
        if remaining == 0 {
            let top = &g[self.n];
            if (self.n - ones) % 2 == 0 {
                self.ring.add_assign(acc, top);
            } else {
                self.ring.sub_assign(acc, top);
            }
            return;
        }
        let right = {
            let p = 1usize << remaining.ilog2();
            if p == remaining {
                p / 2
            } else {
                p
            }
        };
        let left = remaining - right;
        for mask in 0u64..1 << left {
            let mut cur = view.clone_ref();
            let mut g_cur = g.clone();
            let mut ones_cur = ones;
            for t in 0..left {
                if mask >> t & 1 == 1 {
                    let (next, beta) = self.squeeze_poly(&cur);
                    g_cur = self.pr.mul(&g_cur, &beta);
                    ones_cur += 1;
                    cur = next;
                } else {
                    cur = cur.skip();
                }
            }
            self.enum_range(stage + left, &cur, &g_cur, ones_cur, acc);
        }
    }
}

/// Polynomial-space hafnian.
pub fn hafnian_polyspace<R: Ring>(ring: &R, b: &SymZeroDiag<R>) -> R::Elem {
    let n = b.dim() / 2;
    let ctx = Ctx::new(ring, n, None);
    let root = ctx.input_view(b);
    let mut acc = ring.zero();
    ctx.enum_range(1, &root, &ctx.pr.one(), 0, &mut acc);
    acc
}

/// Same, also reporting the peak live ring-element count across the
/// checkpoint matrices.
pub fn hafnian_polyspace_with_stats<R: Ring>(
    ring: &R,
    b: &SymZeroDiag<R>,
) -> (R::Elem, EngineStats) {
    let n = b.dim() / 2;
    let meter: SharedMeter = Rc::new(RefCell::new(Meter::default()));
    let result = {
        let ctx = Ctx::new(ring, n, Some(Rc::clone(&meter)));
        let root = ctx.input_view(b);
        let mut acc = ring.zero();
        ctx.enum_range(1, &root, &ctx.pr.one(), 0, &mut acc);
        acc
    };
    let peak = meter.borrow().peak;
    (
        result,
        EngineStats {
            peak_live_ring_elems: peak,
        },
    )
}

/// Polynomial-space hafnian with the leading stage choices split across
/// worker threads in contiguous chunks. Exact ring arithmetic makes the
/// result independent of the partition; partial sums are combined in
/// thread-index order, so the evaluation is deterministic for any thread
/// count.
pub fn hafnian_polyspace_threads<R: Ring>(
    ring: &R,
    b: &SymZeroDiag<R>,
    threads: usize,
) -> R::Elem {
    let n = b.dim() / 2;
    if threads <= 1 || n <= 4 {
        return hafnian_polyspace(ring, b);
    }
    let split = usize::min(
        n,
        threads.next_power_of_two().trailing_zeros() as usize + 2,
    );
    let total: u64 = 1 << split;
    let workers = usize::min(threads, total as usize);
    let chunk = total.div_ceil(workers as u64);

    let partials: Vec<R::Elem> = thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let lo = w as u64 * chunk;
                let hi = (lo + chunk).min(total);
                scope.spawn(move || {
                    let ctx = Ctx::new(ring, n, None);
                    let root = ctx.input_view(b);
                    let g0 = ctx.pr.one();
                    let mut acc = ring.zero();
                    for mask in lo..hi {
                        let mut cur = root.clone_ref();
                        let mut g = g0.clone();
                        let mut ones = 0;
                        for t in 0..split {
                            if mask >> t & 1 == 1 {
                                let (next, beta) = ctx.squeeze_poly(&cur);
                                g = ctx.pr.mul(&g, &beta);
                                ones += 1;
                                cur = next;
                            } else {
                                cur = cur.skip();
                            }
                        }
                        ctx.enum_range(split + 1, &cur, &g, ones, &mut acc);
                    }
                    acc
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });

    let mut total_sum = ring.zero();
    for p in &partials {
        ring.add_assign(&mut total_sum, p);
    }
    total_sum
}

/// Dispatch on the algorithm choice, single-threaded.
pub fn hafnian<R: Ring>(ring: &R, b: &SymZeroDiag<R>, algo: HafnianAlgo) -> R::Elem {
    match algo {
        HafnianAlgo::Bruteforce => hafnian_bruteforce(ring, b),
        HafnianAlgo::LabelRing => hafnian_labelring(ring, b),
        HafnianAlgo::PolySpace => hafnian_polyspace(ring, b),
    }
}
