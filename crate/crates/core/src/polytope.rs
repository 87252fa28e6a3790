//! Integer points of bounded polyhedra `{x : A·x ≥ b}`.
//!
//! Enumeration projects the system down one variable at a time with
//! Fourier–Motzkin elimination, then walks back up: each projected system
//! gives exact bounds for the next variable once the later ones are fixed.
//! Derived inequalities are scaled to primitive integer coefficients with the
//! right-hand side rounded up, which is valid for integer points and keeps
//! everything in integers.
//!
//! Projections can grow doubly exponentially. When they pass a size limit
//! the search switches to bounding each coordinate by a pair of exact
//! linear programs over the slice fixed so far.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{to_bigints, IntMatrix};
use crate::kapranov::KapranovClassL;
use crate::lp::{self, LpOutcome};
use crate::permutohedral::LabeledFan;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfspaceSystem {
    a: IntMatrix,
    b: Vec<BigInt>,
}

impl HalfspaceSystem {
    pub fn new(a: IntMatrix, b: Vec<BigInt>) -> Result<Self> {
        if a.rows() != b.len() {
            return Err(Error::DimensionMismatch {
                expected: a.rows(),
                got: b.len(),
            });
        }
        Ok(HalfspaceSystem { a, b })
    }

    pub fn from_i64<R: AsRef<[i64]>>(dim: usize, rows: &[R], b: &[i64]) -> Result<Self> {
        for r in rows {
            if r.as_ref().len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: r.as_ref().len(),
                });
            }
        }
        let a = if rows.is_empty() {
            IntMatrix::zeros(0, dim)
        } else {
            IntMatrix::from_rows(rows)
        };
        Self::new(a, to_bigints(b))
    }

    pub fn dim(&self) -> usize {
        self.a.cols()
    }

    pub fn a(&self) -> &IntMatrix {
        &self.a
    }

    pub fn b(&self) -> &[BigInt] {
        &self.b
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.a.mul_vec(x).iter().zip(&self.b).all(|(ax, b)| ax >= b)
    }

    /// All integer points in lexicographic order. An infeasible system gives
    /// an empty list; a feasible unbounded one is an error.
    pub fn integer_points(&self) -> Result<Vec<Vec<BigInt>>> {
        self.integer_points_with(Strategy::Auto)
    }

    pub fn integer_points_with(&self, strategy: Strategy) -> Result<Vec<Vec<BigInt>>> {
        let d = self.dim();
        if d == 0 {
            return Ok(if self.b.iter().all(|b| !b.is_positive()) {
                vec![Vec::new()]
            } else {
                Vec::new()
            });
        }
        let cap = match strategy {
            Strategy::FourierMotzkin => None,
            Strategy::Auto => Some(FM_LIMIT.max(4 * self.b.len())),
            Strategy::LinearProgramming => Some(0),
        };
        let mut out = match Projection::build(self, cap) {
            Built::Empty => return Ok(Vec::new()),
            Built::Chain(chain) => {
                let mut out = Vec::new();
                let mut x = vec![BigInt::zero(); d];
                chain.walk(d, &mut x, &mut out)?;
                out
            }
            Built::TooLarge => lp_points(self)?,
        };
        out.sort();
        debug_assert!(out.iter().all(|p| self.contains(p)));
        Ok(out)
    }

    pub fn count_integer_points(&self) -> Result<usize> {
        self.integer_points().map(|v| v.len())
    }
}

/// How [`HalfspaceSystem::integer_points_with`] bounds each coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Fourier–Motzkin projections, unless they grow past a size limit, in
    /// which case linear programming takes over.
    Auto,
    FourierMotzkin,
    /// One pair of exact linear programs per node of the search.
    LinearProgramming,
}

/// Largest projected system `Strategy::Auto` keeps before switching.
const FM_LIMIT: usize = 4000;

#[derive(Clone, Debug)]
struct Ineq {
    coeffs: Vec<BigInt>,
    rhs: BigInt,
    /// Original inequalities this one was combined from.
    history: Vec<u64>,
}

impl Ineq {
    /// Divides by the content of the coefficients, rounding the bound up.
    fn normalize(&mut self) {
        let g = self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if g.is_zero() || g.is_one() {
            return;
        }
        for c in self.coeffs.iter_mut() {
            *c /= &g;
        }
        self.rhs = self.rhs.div_ceil(&g);
    }

    fn history_len(&self) -> usize {
        self.history.iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// `levels[k]` is the system after eliminating `order[..k]`.
struct Projection {
    levels: Vec<Vec<Ineq>>,
    order: Vec<usize>,
}

enum Built {
    /// A contradiction `0 ≥ b > 0` turned up.
    Empty,
    TooLarge,
    Chain(Projection),
}

impl Projection {
    fn build(sys: &HalfspaceSystem, cap: Option<usize>) -> Built {
        match Self::try_build(sys, cap) {
            Ok(Some(p)) => Built::Chain(p),
            Ok(None) => Built::Empty,
            Err(()) => Built::TooLarge,
        }
    }

    fn try_build(sys: &HalfspaceSystem, cap: Option<usize>) -> Result<Option<Projection>, ()> {
        let d = sys.dim();
        let words = sys.b.len().div_ceil(64).max(1);
        let mut current = Vec::with_capacity(sys.b.len());
        for i in 0..sys.b.len() {
            let mut history = vec![0u64; words];
            history[i / 64] |= 1 << (i % 64);
            let mut q = Ineq {
                coeffs: sys.a.row(i).to_vec(),
                rhs: sys.b[i].clone(),
                history,
            };
            q.normalize();
            current.push(q);
        }
        let Some(mut current) = prune(current) else {
            return Ok(None);
        };

        let mut remaining: Vec<usize> = (0..d).collect();
        let mut levels = Vec::with_capacity(d + 1);
        let mut order = Vec::with_capacity(d);
        for step in 0..d {
            let v = pick_variable(&current, &remaining);
            remaining.retain(|&r| r != v);
            order.push(v);
            if let Some(c) = cap {
                let pos = current.iter().filter(|q| q.coeffs[v].is_positive()).count();
                let neg = current.iter().filter(|q| q.coeffs[v].is_negative()).count();
                if pos * neg > 16 * c.max(1) {
                    return Err(());
                }
            }
            let next = eliminate(&current, v, step + 1);
            levels.push(current);
            let Some(next) = prune(next) else {
                return Ok(None);
            };
            if cap.is_some_and(|c| next.len() > c) {
                return Err(());
            }
            current = next;
        }
        levels.push(current);
        Ok(Some(Projection { levels, order }))
    }

    /// Fixes variables in reverse elimination order. `k` counts how many
    /// variables are still free.
    fn walk(&self, k: usize, x: &mut Vec<BigInt>, out: &mut Vec<Vec<BigInt>>) -> Result<()> {
        if k == 0 {
            out.push(x.clone());
            return Ok(());
        }
        let v = self.order[k - 1];
        let mut lo: Option<BigInt> = None;
        let mut hi: Option<BigInt> = None;
        for q in &self.levels[k - 1] {
            let c = &q.coeffs[v];
            if c.is_zero() {
                continue;
            }
            let mut rest = q.rhs.clone();
            for &w in &self.order[k..] {
                if !q.coeffs[w].is_zero() {
                    rest -= &q.coeffs[w] * &x[w];
                }
            }
            if c.is_positive() {
                let bound = rest.div_ceil(c);
                if lo.as_ref().is_none_or(|l| bound > *l) {
                    lo = Some(bound);
                }
            } else {
                let bound = rest.div_floor(c);
                if hi.as_ref().is_none_or(|h| bound < *h) {
                    hi = Some(bound);
                }
            }
        }
        let (Some(lo), Some(hi)) = (lo, hi) else {
            return Err(Error::Unbounded);
        };
        let mut t = lo;
        while t <= hi {
            x[v] = t.clone();
            self.walk(k - 1, x, out)?;
            t += 1;
        }
        x[v] = BigInt::zero();
        Ok(())
    }
}

/// The variable whose elimination creates the fewest new inequalities.
fn pick_variable(sys: &[Ineq], remaining: &[usize]) -> usize {
    *remaining
        .iter()
        .min_by_key(|&&v| {
            let pos = sys.iter().filter(|q| q.coeffs[v].is_positive()).count();
            let neg = sys.iter().filter(|q| q.coeffs[v].is_negative()).count();
            (pos * neg) as isize - (pos + neg) as isize
        })
        .expect("a variable remains")
}

fn eliminate(sys: &[Ineq], v: usize, eliminated: usize) -> Vec<Ineq> {
    let (mut pos, mut neg, mut zero) = (Vec::new(), Vec::new(), Vec::new());
    for q in sys {
        if q.coeffs[v].is_positive() {
            pos.push(q);
        } else if q.coeffs[v].is_negative() {
            neg.push(q);
        } else {
            zero.push(q.clone());
        }
    }
    let mut out = zero;
    for p in &pos {
        for q in &neg {
            let history: Vec<u64> = p.history.iter().zip(&q.history).map(|(a, b)| a | b).collect();
            // Chernikov's rule: more than `eliminated + 1` ancestors means
            // the combination is implied by others.
            if history.iter().map(|w| w.count_ones() as usize).sum::<usize>() > eliminated + 1 {
                continue;
            }
            let sp = -&q.coeffs[v];
            let sq = p.coeffs[v].clone();
            let coeffs: Vec<BigInt> = p
                .coeffs
                .iter()
                .zip(&q.coeffs)
                .map(|(a, b)| &sp * a + &sq * b)
                .collect();
            let mut r = Ineq {
                coeffs,
                rhs: &sp * &p.rhs + &sq * &q.rhs,
                history,
            };
            r.normalize();
            out.push(r);
        }
    }
    out
}

/// Drops trivial rows and duplicate directions (keeping the tightest bound).
/// `None` on a contradiction.
fn prune(sys: Vec<Ineq>) -> Option<Vec<Ineq>> {
    let mut best: HashMap<Vec<BigInt>, usize> = HashMap::new();
    let mut out: Vec<Ineq> = Vec::new();
    for q in sys {
        if q.coeffs.iter().all(Zero::is_zero) {
            if q.rhs.is_positive() {
                return None;
            }
            continue;
        }
        match best.get(&q.coeffs) {
            Some(&i) => {
                let cur = &out[i];
                if q.rhs > cur.rhs || (q.rhs == cur.rhs && q.history_len() < cur.history_len()) {
                    out[i] = q;
                }
            }
            None => {
                best.insert(q.coeffs.clone(), out.len());
                out.push(q);
            }
        }
    }
    Some(out)
}

/// `min x_k` over `{x : A_F·x_F ≥ rhs}` through the dual program
/// `max rhs·y` subject to `A_Fᵀ·y = ±e_k`, `y ≥ 0`.
fn lp_bound(columns: &[Vec<BigRational>], rhs: &[BigRational], upper: bool) -> LpOutcome {
    let mut h = vec![BigRational::zero(); columns.len()];
    h[0] = if upper { -BigRational::one() } else { BigRational::one() };
    match lp::maximize(columns, &h, rhs) {
        LpOutcome::Optimal(v) if upper => LpOutcome::Optimal(-v),
        other => other,
    }
}

fn lp_points(sys: &HalfspaceSystem) -> Result<Vec<Vec<BigInt>>> {
    let d = sys.dim();
    let m = sys.b.len();
    let q = |x: &BigInt| BigRational::from_integer(x.clone());
    // Columns of A as rows of Aᵀ.
    let at: Vec<Vec<BigRational>> = (0..d).map(|j| (0..m).map(|i| q(&sys.a[(i, j)])).collect()).collect();
    let b: Vec<BigRational> = sys.b.iter().map(q).collect();

    // Bound every coordinate once up front so that an unbounded polyhedron
    // is reported rather than searched.
    for k in 0..d {
        let mut cols = at.clone();
        cols.swap(0, k);
        for upper in [false, true] {
            match lp_bound(&cols, &b, upper) {
                LpOutcome::Optimal(_) => {}
                LpOutcome::Unbounded => return Ok(Vec::new()),
                LpOutcome::Infeasible => {
                    let zero = vec![BigRational::zero(); d];
                    return match lp::maximize(&at, &zero, &b) {
                        LpOutcome::Unbounded => Ok(Vec::new()),
                        _ => Err(Error::Unbounded),
                    };
                }
            }
        }
    }

    let mut out = Vec::new();
    let mut x: Vec<BigInt> = Vec::with_capacity(d);
    lp_search(&at, &b, &mut x, &mut out);
    Ok(out)
}

fn lp_search(at: &[Vec<BigRational>], b: &[BigRational], x: &mut Vec<BigInt>, out: &mut Vec<Vec<BigInt>>) {
    let k = x.len();
    if k == at.len() {
        out.push(x.clone());
        return;
    }
    let rhs: Vec<BigRational> = b
        .iter()
        .enumerate()
        .map(|(i, bi)| {
            let mut r = bi.clone();
            for (j, xj) in x.iter().enumerate() {
                if !at[j][i].is_zero() {
                    r -= &at[j][i] * BigRational::from_integer(xj.clone());
                }
            }
            r
        })
        .collect();
    let cols = &at[k..];
    let (lo, hi) = if cols.len() == 1 {
        let mut lo: Option<BigInt> = None;
        let mut hi: Option<BigInt> = None;
        for (c, r) in cols[0].iter().zip(&rhs) {
            if c.is_positive() {
                let v = (r / c).ceil().to_integer();
                lo = Some(lo.map_or(v.clone(), |l| l.max(v)));
            } else if c.is_negative() {
                let v = (r / c).floor().to_integer();
                hi = Some(hi.map_or(v.clone(), |h| h.min(v)));
            } else if r.is_positive() {
                return;
            }
        }
        match (lo, hi) {
            (Some(l), Some(h)) => (l, h),
            _ => return,
        }
    } else {
        let (LpOutcome::Optimal(lo), LpOutcome::Optimal(hi)) = (lp_bound(cols, &rhs, false), lp_bound(cols, &rhs, true))
        else {
            return;
        };
        (lo.ceil().to_integer(), hi.floor().to_integer())
    };
    let mut t = lo;
    while t <= hi {
        x.push(t.clone());
        lp_search(at, b, x, out);
        x.pop();
        t += 1;
    }
}

/// `{m : ⟨m, u_ρ⟩ ≥ -a_ρ}` for a divisor `Σ a_ρ D_ρ` on a complete fan.
pub fn section_polytope(f: &LabeledFan, divisor: &[i64]) -> Result<HalfspaceSystem> {
    let fan = f.fan();
    if divisor.len() != fan.rays().len() {
        return Err(Error::DimensionMismatch {
            expected: fan.rays().len(),
            got: divisor.len(),
        });
    }
    if !fan.validate().complete {
        return Err(Error::IncompleteFan);
    }
    let b: Vec<i64> = divisor.iter().map(|a| -a).collect();
    HalfspaceSystem::from_i64(fan.dim(), fan.rays(), &b)
}

/// Number of lattice points of the section polytope of `class`.
pub fn h0_toric(f: &LabeledFan, class: &KapranovClassL) -> Result<usize> {
    let d = f.divisor_from_class(class)?;
    section_polytope(f, &d)?.count_integer_points()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permutohedral::build_losev_manin;
    use crate::subset::Subset;

    fn pts(sys: &HalfspaceSystem) -> Vec<Vec<i64>> {
        sys.integer_points()
            .unwrap()
            .iter()
            .map(|p| crate::exact::to_i64s(p))
            .collect()
    }

    #[test]
    fn unit_square() {
        let s = HalfspaceSystem::from_i64(2, &[[1, 0], [-1, 0], [0, 1], [0, -1]], &[0, -1, 0, -1]).unwrap();
        assert_eq!(pts(&s), vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn empty_system() {
        let s = HalfspaceSystem::from_i64(1, &[[1], [-1]], &[1, 0]).unwrap();
        assert!(pts(&s).is_empty());
        // Real points but no integer ones.
        let s = HalfspaceSystem::from_i64(1, &[[2], [-2]], &[1, -1]).unwrap();
        assert!(pts(&s).is_empty());
    }

    #[test]
    fn simplex() {
        let s = HalfspaceSystem::from_i64(2, &[[1, 0], [0, 1], [-1, -1]], &[0, 0, -2]).unwrap();
        assert_eq!(s.count_integer_points().unwrap(), 6);
    }

    #[test]
    fn unbounded_is_reported() {
        let s = HalfspaceSystem::from_i64(2, &[[1, 0], [0, 1]], &[0, 0]).unwrap();
        assert_eq!(s.integer_points(), Err(Error::Unbounded));
    }

    #[test]
    fn zero_dimensional() {
        let s = HalfspaceSystem::from_i64::<[i64; 0]>(0, &[], &[]).unwrap();
        assert_eq!(s.integer_points().unwrap(), vec![Vec::<BigInt>::new()]);
    }

    #[test]
    fn section_polytopes_on_hexagon() {
        let l3 = build_losev_manin(5).unwrap();
        let zero = section_polytope(&l3, &[0; 6]).unwrap();
        assert_eq!(pts(&zero), vec![vec![0, 0]]);

        let mut d = vec![0; 6];
        for j in [Subset::from([2, 3]), Subset::from([2]), Subset::from([3])] {
            d[l3.ray_of(j).unwrap()] = 1;
        }
        assert_eq!(section_polytope(&l3, &d).unwrap().count_integer_points().unwrap(), 3);

        let c = KapranovClassL::hyperplane(5).unwrap() - KapranovClassL::exceptional(5, Subset::from([1])).unwrap();
        assert_eq!(h0_toric(&l3, &c).unwrap(), 2);
    }

    #[test]
    fn h0_on_l4() {
        let l4 = build_losev_manin(6).unwrap();
        let h = KapranovClassL::hyperplane(6).unwrap();
        assert_eq!(h0_toric(&l4, &KapranovClassL::zero(6).unwrap()).unwrap(), 1);
        assert_eq!(h0_toric(&l4, &h).unwrap(), 4);
        let mut c = h.clone();
        for j in [Subset::from([1]), Subset::from([2]), Subset::from([1, 2])] {
            c.add_exceptional(j, -1).unwrap();
        }
        assert_eq!(h0_toric(&l4, &c).unwrap(), 2);
        assert_eq!(h0_toric(&l4, &(2 * h)).unwrap(), 10);
    }

    #[test]
    fn incomplete_fan_rejected() {
        use crate::fan::{Cone, Fan};
        let orthant = Fan::new(2, vec![vec![1, 0], vec![0, 1]], vec![Cone::new(vec![0, 1])]).unwrap();
        let lf = LabeledFan::from_parts(4, orthant, vec![Subset::from([1]), Subset::from([2])]);
        assert_eq!(section_polytope(&lf, &[0, 0]), Err(Error::IncompleteFan));
    }
}
