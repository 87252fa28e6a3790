//! Boundary divisors of `M_{0,n}` and their classes in the Kapranov basis.
//!
//! A boundary divisor `Δ_T = Δ_{T^c}` is stored by its side not containing
//! `n`. In the Kapranov basis with moving point `n`, `H = ψ_n` and
//! `E_J = Δ_{J ∪ {n}}`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{to_bigints, IntMatrix};
use crate::kapranov::{KapranovClassL, KapranovClassM};
use crate::polytope::HalfspaceSystem;
use crate::subset::{graded_subsets, Subset};

fn check_n(n: usize) -> Result<()> {
    if !(4..=32).contains(&n) {
        return Err(Error::MarkingCount { n, min: 4, max: 32 });
    }
    Ok(())
}

fn invalid(members: Subset, n: usize, reason: &'static str) -> Error {
    Error::InvalidLabel {
        members: members.to_vec(),
        n,
        reason,
    }
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoundaryIndex {
    n: usize,
    side: Subset,
}

impl BoundaryIndex {
    /// Accepts either side of the partition.
    pub fn new(n: usize, t: Subset) -> Result<Self> {
        check_n(n)?;
        if t.max_label() as usize > n {
            return Err(invalid(t, n, "label exceeds n"));
        }
        let side = if t.contains(n as u32) {
            t.complement(n as u32)
        } else {
            t
        };
        if side.len() < 2 || side.len() > n - 2 {
            return Err(invalid(t, n, "boundary sides need 2 <= |T| <= n-2"));
        }
        Ok(BoundaryIndex { n, side })
    }

    /// All boundary divisors, sorted lexicographically by canonical side.
    pub fn all(n: usize) -> Result<Vec<BoundaryIndex>> {
        check_n(n)?;
        let mut out: Vec<BoundaryIndex> = graded_subsets(Subset::range(n as u32 - 1), 2..=n - 2)
            .into_iter()
            .map(|side| BoundaryIndex { n, side })
            .collect();
        out.sort();
        Ok(out)
    }

    /// `2^{n-1} - n - 1`.
    pub fn count(n: usize) -> usize {
        (1usize << (n - 1)) - n - 1
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The side not containing `n`.
    pub fn side(&self) -> Subset {
        self.side
    }

    /// The side containing `n`.
    pub fn n_side(&self) -> Subset {
        self.side.complement(self.n as u32)
    }

    pub fn permute(&self, sigma: &Permutation) -> Result<BoundaryIndex> {
        sigma.check_size(self.n)?;
        BoundaryIndex::new(self.n, sigma.apply_set(self.side))
    }
}

impl fmt::Debug for BoundaryIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Δ{}", self.side)
    }
}

impl fmt::Display for BoundaryIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Position lookup for boundary divisors in [`BoundaryIndex::all`] order.
struct BoundaryBasis {
    all: Vec<BoundaryIndex>,
    pos: HashMap<Subset, usize>,
}

impl BoundaryBasis {
    fn new(n: usize) -> Result<Self> {
        let all = BoundaryIndex::all(n)?;
        let pos = all.iter().enumerate().map(|(i, b)| (b.side, i)).collect();
        Ok(BoundaryBasis { all, pos })
    }
}

/// A nonnegative combination of boundary divisors.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoundarySum {
    n: usize,
    coeffs: BTreeMap<Subset, u64>,
}

impl BoundarySum {
    pub fn zero(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(BoundarySum {
            n,
            coeffs: BTreeMap::new(),
        })
    }

    pub fn single(t: BoundaryIndex) -> Self {
        let mut s = BoundarySum {
            n: t.n,
            coeffs: BTreeMap::new(),
        };
        s.add(t, 1);
        s
    }

    pub fn from_terms<I: IntoIterator<Item = (BoundaryIndex, u64)>>(n: usize, terms: I) -> Result<Self> {
        let mut s = BoundarySum::zero(n)?;
        for (t, c) in terms {
            if t.n != n {
                return Err(Error::DimensionMismatch { expected: n, got: t.n });
            }
            s.add(t, c);
        }
        Ok(s)
    }

    pub fn add(&mut self, t: BoundaryIndex, c: u64) {
        assert_eq!(t.n, self.n, "boundary divisor on a different space");
        if c == 0 {
            return;
        }
        *self.coeffs.entry(t.side).or_insert(0) += c;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, t: BoundaryIndex) -> u64 {
        self.coeffs.get(&t.side).copied().unwrap_or(0)
    }

    /// Nonzero terms, sorted by canonical side.
    pub fn terms(&self) -> impl Iterator<Item = (BoundaryIndex, u64)> + '_ {
        self.coeffs.iter().map(|(&side, &c)| (BoundaryIndex { n: self.n, side }, c))
    }

    /// Total number of boundary factors.
    pub fn degree(&self) -> u64 {
        self.coeffs.values().sum()
    }

    /// `self - other` if the result is still nonnegative.
    pub fn checked_sub(&self, other: &BoundarySum) -> Option<BoundarySum> {
        let mut out = self.clone();
        for (side, &c) in &other.coeffs {
            let cur = out.coeffs.get_mut(side)?;
            *cur = cur.checked_sub(c)?;
            if *cur == 0 {
                out.coeffs.remove(side);
            }
        }
        Some(out)
    }

    pub fn plus(&self, other: &BoundarySum) -> BoundarySum {
        let mut out = self.clone();
        for (t, c) in other.terms() {
            out.add(t, c);
        }
        out
    }

    /// Coefficients in [`BoundaryIndex::all`] order.
    pub fn to_vector(&self) -> Vec<i64> {
        let basis = BoundaryBasis::new(self.n).expect("valid n");
        let mut v = vec![0i64; basis.all.len()];
        for (side, &c) in &self.coeffs {
            v[basis.pos[side]] = c as i64;
        }
        v
    }

    fn from_vector(n: usize, basis: &BoundaryBasis, v: &[BigInt]) -> BoundarySum {
        let coeffs = basis
            .all
            .iter()
            .zip(v)
            .filter(|(_, c)| !c.is_zero())
            .map(|(b, c)| (b.side, c.to_u64().expect("nonnegative coefficient")))
            .collect();
        BoundarySum { n, coeffs }
    }
}

impl fmt::Debug for BoundarySum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .terms()
            .map(|(t, c)| if c == 1 { format!("{t}") } else { format!("{c}{t}") })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl fmt::Display for BoundarySum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for BoundarySum {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term {
            side: Subset,
            c: u64,
        }
        let terms: Vec<Term> = self
            .coeffs
            .iter()
            .map(|(&side, &c)| Term { side, c })
            .collect();
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("n", &self.n)?;
        map.serialize_entry("coeffs", &terms)?;
        map.end()
    }
}

/// A permutation of `{1, ..., n}`, stored as its list of images.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn new(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i == 0 || i as usize > n || seen[i as usize - 1] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a permutation of 1..={n}")));
            }
            seen[i as usize - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n as u32).collect(),
        }
    }

    pub fn transposition(n: usize, a: u32, b: u32) -> Result<Self> {
        if a == 0 || b == 0 || a as usize > n || b as usize > n || a == b {
            return Err(Error::InvalidPermutation(format!("({a} {b}) is not a transposition of 1..={n}")));
        }
        let mut p = Permutation::identity(n);
        p.images.swap(a as usize - 1, b as usize - 1);
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, label: u32) -> u32 {
        self.images[label as usize - 1]
    }

    pub fn apply_set(&self, s: Subset) -> Subset {
        s.map(|i| self.apply(i))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&i| self.apply(i)).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.n()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize - 1] = i as u32 + 1;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| j as usize == i + 1)
    }

    /// Transpositions `t_1, ..., t_k` with `self = t_1 ∘ ... ∘ t_k`.
    pub fn transpositions(&self) -> Vec<(u32, u32)> {
        let mut cur = self.clone();
        let mut out = Vec::new();
        for i in 1..=self.n() as u32 {
            let j = cur.apply(i);
            if j != i {
                let t = Permutation::transposition(self.n(), i, j).expect("distinct labels");
                cur = t.compose(&cur);
                out.push((i, j));
            }
        }
        out
    }

    fn check_size(&self, n: usize) -> Result<()> {
        if self.n() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: self.n(),
            });
        }
        Ok(())
    }
}

/// Rational coordinates in the Kapranov basis of `M_{0,n}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PicClassVector {
    n: usize,
    coords: Vec<BigRational>,
}

impl PicClassVector {
    pub fn new(n: usize, coords: Vec<BigRational>) -> Result<Self> {
        check_n(n)?;
        if coords.len() != KapranovClassM::rank(n) {
            return Err(Error::DimensionMismatch {
                expected: KapranovClassM::rank(n),
                got: coords.len(),
            });
        }
        Ok(PicClassVector { n, coords })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn to_integral(&self) -> Option<KapranovClassM> {
        let ints: Option<Vec<i64>> = self
            .coords
            .iter()
            .map(|q| if q.is_integer() { q.to_integer().to_i64() } else { None })
            .collect();
        KapranovClassM::from_coords(self.n, ints?).ok()
    }
}

impl From<&KapranovClassM> for PicClassVector {
    fn from(c: &KapranovClassM) -> Self {
        PicClassVector {
            n: c.n(),
            coords: c
                .coords()
                .iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect(),
        }
    }
}

/// Class of a boundary divisor. With `J` the part of the `n`-side other
/// than `n`: `E_J` when `|J| ≤ n-4`, and `H - Σ E_{J'}` over nonempty
/// proper subsets `J' ⊊ J` when the other side is a pair.
pub fn class_of_boundary(t: BoundaryIndex) -> KapranovClassM {
    let n = t.n;
    let j = t.n_side().remove(n as u32);
    if j.len() <= n - 4 {
        return KapranovClassM::exceptional(n, j).expect("label in range");
    }
    let mut c = KapranovClassM::hyperplane(n).expect("valid n");
    for sub in j.subsets().filter(|s| !s.is_empty() && *s != j) {
        c.add_exceptional(sub, -1).expect("label in range");
    }
    c
}

pub fn cl(d: &BoundarySum) -> KapranovClassM {
    let mut c = KapranovClassM::zero(d.n).expect("valid n");
    for (t, k) in d.terms() {
        c += &(k as i64 * class_of_boundary(t));
    }
    c
}

/// One column per boundary divisor in [`BoundaryIndex::all`] order.
pub fn cl_matrix(n: usize) -> Result<IntMatrix> {
    let cols: Vec<Vec<i64>> = BoundaryIndex::all(n)?
        .into_iter()
        .map(|t| class_of_boundary(t).coords().to_vec())
        .collect();
    Ok(IntMatrix::from_columns(KapranovClassM::rank(n), &cols))
}

pub fn cl_kernel_dim(n: usize) -> Result<usize> {
    let m = cl_matrix(n)?;
    Ok(m.cols() - m.rank())
}

/// `h_{ab}`: the sum of all boundary divisors with `a, b` on the side away
/// from `n`. Its class is `H`.
pub fn hyperplane_representative(n: usize, a: u32, b: u32) -> Result<BoundarySum> {
    check_n(n)?;
    let pair = Subset::from([a, b]);
    if a == b || pair.contains(n as u32) || pair.max_label() as usize > n {
        return Err(invalid(pair, n, "need two distinct labels other than n"));
    }
    let terms = BoundaryIndex::all(n)?
        .into_iter()
        .filter(|t| pair.is_subset(t.side))
        .map(|t| (t, 1));
    BoundarySum::from_terms(n, terms)
}

/// Pull-back along the map to the Losev–Manin space: same coordinates,
/// `H' ↦ H` and `E'_J ↦ E_J`.
pub fn pullback_from_l(c: &KapranovClassL) -> KapranovClassM {
    c.relabel().expect("same n")
}

fn check_forgotten(n: usize, j: Subset) -> Result<()> {
    check_n(n)?;
    if j.contains(n as u32) || j.max_label() as usize > n {
        return Err(invalid(j, n, "forgotten points must lie in {1..n-1}"));
    }
    if j.len() > n - 4 {
        return Err(invalid(j, n, "at most n-4 points can be forgotten"));
    }
    Ok(())
}

/// Pull-back of `ψ_n` under forgetting the points of `J`:
/// `H - Σ_{∅≠T⊆J} [Δ_{T ∪ {n}}]`.
pub fn psi_pullback(n: usize, j: Subset) -> Result<KapranovClassM> {
    check_forgotten(n, j)?;
    let mut c = KapranovClassM::hyperplane(n)?;
    for t in j.subsets().filter(|t| !t.is_empty()) {
        c -= &class_of_boundary(BoundaryIndex::new(n, t.insert(n as u32))?);
    }
    Ok(c)
}

/// The same pull-back computed by adding the forgotten points back one at a
/// time in `order`, using `ψ_n ↦ ψ_n - Δ_{qn}` and `Δ_T ↦ Δ_T + Δ_{T∪q}`.
pub fn psi_pullback_iterated(n: usize, order: &[u32]) -> Result<KapranovClassM> {
    let j: Subset = order.iter().copied().collect();
    if j.len() != order.len() {
        return Err(invalid(j, n, "repeated point in forgetting order"));
    }
    check_forgotten(n, j)?;
    let nl = n as u32;
    // Coefficient of ψ_n and of Δ_T, keyed by the side containing n.
    let psi = 1i64;
    let mut deltas: BTreeMap<Subset, i64> = BTreeMap::new();
    for &q in order {
        let mut next: BTreeMap<Subset, i64> = BTreeMap::new();
        for (&t, &c) in &deltas {
            *next.entry(t).or_default() += c;
            *next.entry(t.insert(q)).or_default() += c;
        }
        *next.entry(Subset::from([q, nl])).or_default() -= psi;
        deltas = next;
    }
    let mut c = psi * KapranovClassM::hyperplane(n)?;
    for (t, k) in deltas {
        c += &(k * class_of_boundary(BoundaryIndex::new(n, t)?));
    }
    Ok(c)
}

/// `ψ_k` in the Kapranov basis with moving point `n`.
pub fn psi_class(n: usize, k: u32) -> Result<KapranovClassM> {
    check_n(n)?;
    if k == 0 || k as usize > n {
        return Err(invalid(Subset::EMPTY, n, "psi label out of range"));
    }
    let h = KapranovClassM::hyperplane(n)?;
    if k as usize == n {
        return Ok(h);
    }
    let mut c = (n as i64 - 3) * h;
    let ground = Subset::range(n as u32 - 1).remove(k);
    for j in graded_subsets(ground, 1..=n - 4) {
        c.add_exceptional(j, -((n - j.len() - 3) as i64))?;
    }
    Ok(c)
}

fn transposition_images(n: usize, a: u32, b: u32) -> Result<(KapranovClassM, Vec<KapranovClassM>)> {
    let tau = Permutation::transposition(n, a, b)?;
    let h_img = psi_class(n, tau.apply(n as u32))?;
    let e_imgs = KapranovClassM::exceptional_labels(n)
        .into_iter()
        .map(|j| Ok(class_of_boundary(BoundaryIndex::new(n, j.insert(n as u32))?.permute(&tau)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok((h_img, e_imgs))
}

/// The relabeling action of `sigma` on `Pic(M_{0,n}) ⊗ Q`, sending `Δ_T` to
/// `Δ_{σ(T)}` and `ψ_i` to `ψ_{σ(i)}`. Computed as a product of
/// transpositions.
pub fn apply_permutation(sigma: &Permutation, c: &PicClassVector) -> Result<PicClassVector> {
    sigma.check_size(c.n)?;
    let n = c.n;
    let mut cur = c.coords.clone();
    for &(a, b) in sigma.transpositions().iter().rev() {
        let (h_img, e_imgs) = transposition_images(n, a, b)?;
        let mut next = vec![BigRational::zero(); cur.len()];
        for (coeff, img) in cur.iter().zip(std::iter::once(&h_img).chain(&e_imgs)) {
            if coeff.is_zero() {
                continue;
            }
            for (x, &y) in next.iter_mut().zip(img.coords()) {
                if y != 0 {
                    *x += coeff * BigRational::from_integer(y.into());
                }
            }
        }
        cur = next;
    }
    PicClassVector::new(n, cur)
}

/// Integral version of [`apply_permutation`].
pub fn permute_class(sigma: &Permutation, c: &KapranovClassM) -> Result<KapranovClassM> {
    Ok(apply_permutation(sigma, &c.into())?
        .to_integral()
        .expect("the action preserves the integral lattice"))
}

/// `[F_{J,m}]`, the pull-back of the hyperplane class under forgetting `J`
/// and then taking the Kapranov map with moving point `m`.
pub fn f_class(n: usize, j: Subset, m: u32) -> Result<KapranovClassM> {
    check_n(n)?;
    if m == 0 || m as usize > n {
        return Err(invalid(j, n, "moving point out of range"));
    }
    if j.contains(m) {
        return Err(invalid(j, n, "the moving point cannot be forgotten"));
    }
    if m as usize == n {
        return psi_pullback(n, j);
    }
    let sigma = Permutation::transposition(n, m, n as u32)?;
    let base = psi_pullback(n, sigma.apply_set(j))?;
    permute_class(&sigma, &base)
}

/// Rows `[F_{J,n}]` for `J` in Kapranov order (`∅` first).
pub fn f_class_matrix(n: usize) -> Result<IntMatrix> {
    let mut rows = vec![psi_pullback(n, Subset::EMPTY)?.coords().to_vec()];
    for j in KapranovClassM::exceptional_labels(n) {
        rows.push(psi_pullback(n, j)?.coords().to_vec());
    }
    Ok(IntMatrix::from_rows(&rows))
}

/// Whether the `[F_{J,n}]` form a basis: the matrix is triangular with unit
/// diagonal entries up to sign.
pub fn f_basis_check(n: usize) -> Result<bool> {
    let m = f_class_matrix(n)?;
    let k = m.rows();
    let one = BigInt::from(1);
    let triangular = (0..k).all(|i| (i + 1..k).all(|j| m[(i, j)].is_zero()));
    let unit_diagonal = (0..k).all(|i| m[(i, i)] == one || m[(i, i)] == -one.clone());
    let det = m.determinant();
    Ok(triangular && unit_diagonal && (det == one || det == -one))
}

/// Every nonnegative boundary sum whose class is `c`, sorted.
pub fn effective_boundary_reps(c: &KapranovClassM) -> Result<Vec<BoundarySum>> {
    let n = c.n();
    let basis = BoundaryBasis::new(n)?;
    let m = cl_matrix(n)?;
    let Some(p) = m.solve_particular(&to_bigints(c.coords())) else {
        return Ok(Vec::new());
    };
    let kernel = m.kernel_lattice_basis();
    let r = kernel.len();
    let rows = basis.all.len();
    let mut a = IntMatrix::zeros(rows, r);
    for (j, k) in kernel.iter().enumerate() {
        for i in 0..rows {
            a[(i, j)] = k[i].clone();
        }
    }
    let b: Vec<BigInt> = p.iter().map(|x| -x).collect();
    let system = HalfspaceSystem::new(a.clone(), b)?;
    let mut out: Vec<BoundarySum> = system
        .integer_points()?
        .into_iter()
        .map(|t| {
            let d: Vec<BigInt> = a.mul_vec(&t).iter().zip(&p).map(|(x, y)| x + y).collect();
            BoundarySum::from_vector(n, &basis, &d)
        })
        .collect();
    out.sort();
    Ok(out)
}

/// `Q_{(ab)(cd)} = 2H - Σ_{i≤5} E_i - Σ_{x∈{a,b}, y∈{c,d}} E_{xy}` on `M_{0,6}`.
pub fn keel_vermeire_class(n: usize, pairing: [[u32; 2]; 2]) -> Result<KapranovClassM> {
    if n != 6 {
        return Err(Error::OutOfScope("Keel-Vermeire classes are only available for n = 6"));
    }
    let [[a, b], [c, d]] = pairing;
    if [a, b, c, d].iter().any(|x| !(1..=5).contains(x)) {
        return Err(Error::InvalidLabel {
            members: vec![a, b, c, d],
            n,
            reason: "pairing labels must lie in {1..5}",
        });
    }
    let all = Subset::from([a, b, c, d]);
    if all.len() != 4 {
        return Err(invalid(all, n, "pairing needs four distinct labels in {1..5}"));
    }
    let mut q = 2 * KapranovClassM::hyperplane(6)?;
    for i in 1..=5 {
        q.add_exceptional(Subset::singleton(i), -1)?;
    }
    for x in [a, b] {
        for y in [c, d] {
            q.add_exceptional(Subset::from([x, y]), -1)?;
        }
    }
    Ok(q)
}

/// All 15 pairings `{{a,b},{c,d}}` of four labels from `{1..5}`.
pub fn keel_vermeire_pairings() -> Vec<[[u32; 2]; 2]> {
    let mut out = Vec::new();
    for four in Subset::range(5).subsets_of_size(4) {
        let v = four.to_vec();
        out.push([[v[0], v[1]], [v[2], v[3]]]);
        out.push([[v[0], v[2]], [v[1], v[3]]]);
        out.push([[v[0], v[3]], [v[1], v[2]]]);
    }
    out
}

/// Intersection with the class of a general line: the `H` coordinate.
pub fn line_pairing(c: &KapranovClassM) -> i64 {
    c.h()
}

/// `C(n - |J| - 1, 2)`, the expected number of effective representations of
/// `[F_{J,n}]`.
pub fn expected_rep_count(n: usize, j_len: usize) -> usize {
    binom(n - j_len - 1, 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[u32]) -> Subset {
        v.iter().copied().collect()
    }

    fn bi(n: usize, v: &[u32]) -> BoundaryIndex {
        BoundaryIndex::new(n, s(v)).unwrap()
    }

    #[test]
    fn boundary_counts_and_canonical_form() {
        assert_eq!(BoundaryIndex::all(5).unwrap().len(), 10);
        assert_eq!(BoundaryIndex::all(6).unwrap().len(), 25);
        assert_eq!(BoundaryIndex::all(7).unwrap().len(), 56);
        assert_eq!(bi(6, &[1, 2, 6]).side(), s(&[3, 4, 5]));
        assert!(BoundaryIndex::new(6, s(&[1])).is_err());
        assert!(BoundaryIndex::new(6, s(&[1, 2, 3, 4, 5])).is_err());
        assert!(BoundaryIndex::new(6, s(&[1, 7])).is_err());
    }

    #[test]
    fn dictionary() {
        assert_eq!(class_of_boundary(bi(6, &[1, 2, 6])).to_string(), "E12");
        assert_eq!(class_of_boundary(bi(5, &[1, 5])).to_string(), "E1");
        assert_eq!(
            class_of_boundary(bi(6, &[1, 2])).to_string(),
            "H - E3 - E4 - E5 - E34 - E35 - E45"
        );
    }

    #[test]
    fn hyperplane_representatives() {
        for n in 5..=7 {
            let h = KapranovClassM::hyperplane(n).unwrap();
            for pair in Subset::range(n as u32 - 1).subsets_of_size(2) {
                let v = pair.to_vec();
                assert_eq!(cl(&hyperplane_representative(n, v[0], v[1]).unwrap()), h);
            }
        }
        assert!(cl(&BoundarySum::zero(6).unwrap()).is_zero());
    }

    #[test]
    fn kernel_dimensions() {
        assert_eq!(cl_kernel_dim(5).unwrap(), 5);
        assert_eq!(cl_kernel_dim(6).unwrap(), 9);
        assert_eq!(cl_kernel_dim(7).unwrap(), 14);
    }

    #[test]
    fn psi_pullbacks() {
        assert_eq!(psi_pullback(6, Subset::EMPTY).unwrap().to_string(), "H");
        assert_eq!(psi_pullback(6, s(&[3])).unwrap().to_string(), "H - E3");
        assert_eq!(psi_pullback(6, s(&[1, 2])).unwrap().to_string(), "H - E1 - E2 - E12");
        assert!(psi_pullback(6, s(&[1, 2, 3])).is_err());
        assert_eq!(psi_pullback_iterated(6, &[2, 1]).unwrap(), psi_pullback(6, s(&[1, 2])).unwrap());
    }

    #[test]
    fn f_classes() {
        assert_eq!(f_class(6, s(&[1]), 6).unwrap().to_string(), "H - E1");
        assert_eq!(f_class(6, s(&[3, 4]), 6).unwrap().to_string(), "H - E3 - E4 - E34");
        assert!(f_class(6, s(&[1]), 1).is_err());
        // The moving point 1 with nothing forgotten gives ψ_1.
        assert_eq!(f_class(6, Subset::EMPTY, 1).unwrap(), psi_class(6, 1).unwrap());
        assert_eq!(psi_class(5, 1).unwrap().to_string(), "2H - E2 - E3 - E4");
    }

    #[test]
    fn f_basis() {
        for (n, size) in [(5, 5), (6, 16), (7, 42)] {
            assert_eq!(f_class_matrix(n).unwrap().rows(), size);
            assert!(f_basis_check(n).unwrap());
        }
    }

    #[test]
    fn permutations() {
        let p = Permutation::new(vec![2, 3, 1, 4]).unwrap();
        let ts = p.transpositions();
        let rebuilt = ts.iter().fold(Permutation::identity(4), |acc, &(a, b)| {
            acc.compose(&Permutation::transposition(4, a, b).unwrap())
        });
        assert_eq!(rebuilt, p);
        assert!(p.compose(&p.inverse()).is_identity());
        assert!(Permutation::new(vec![1, 1, 2]).is_err());
        assert!(Permutation::transposition(4, 2, 2).is_err());
    }

    #[test]
    fn transposition_relabels_boundary_classes() {
        let tau = Permutation::transposition(6, 1, 2).unwrap();
        for t in BoundaryIndex::all(6).unwrap() {
            let lhs = permute_class(&tau, &class_of_boundary(t)).unwrap();
            assert_eq!(lhs, class_of_boundary(t.permute(&tau).unwrap()), "{t}");
        }
        let tau = Permutation::transposition(6, 2, 6).unwrap();
        for t in BoundaryIndex::all(6).unwrap() {
            let lhs = permute_class(&tau, &class_of_boundary(t)).unwrap();
            assert_eq!(lhs, class_of_boundary(t.permute(&tau).unwrap()), "{t}");
        }
    }

    #[test]
    fn effective_reps_small() {
        let f = f_class(6, s(&[1, 2]), 6).unwrap();
        let reps = effective_boundary_reps(&f).unwrap();
        assert_eq!(reps.len(), 3);
        for r in &reps {
            assert_eq!(cl(r), f);
        }
        let h = KapranovClassM::hyperplane(6).unwrap();
        assert_eq!(effective_boundary_reps(&h).unwrap().len(), 10);
        let t = bi(6, &[1, 2, 3]);
        assert_eq!(effective_boundary_reps(&class_of_boundary(t)).unwrap(), vec![BoundarySum::single(t)]);
    }

    #[test]
    fn keel_vermeire() {
        let q = keel_vermeire_class(6, [[1, 2], [3, 4]]).unwrap();
        assert_eq!(q.to_string(), "2H - E1 - E2 - E3 - E4 - E5 - E13 - E14 - E23 - E24");
        assert_eq!(q, keel_vermeire_class(6, [[3, 4], [1, 2]]).unwrap());
        let distinct: std::collections::HashSet<_> = keel_vermeire_pairings()
            .into_iter()
            .map(|p| keel_vermeire_class(6, p).unwrap())
            .collect();
        assert_eq!(distinct.len(), 15);
        assert!(keel_vermeire_class(7, [[1, 2], [3, 4]]).is_err());
        assert!(keel_vermeire_class(6, [[1, 2], [2, 4]]).is_err());
        assert_eq!(line_pairing(&q), 2);
    }

    #[test]
    fn boundary_sum_json() {
        let d = BoundarySum::from_terms(6, [(bi(6, &[1, 2, 6]), 2), (bi(6, &[1, 2]), 1)]).unwrap();
        let json = serde_json::to_string(&d).unwrap();
        assert_eq!(json, r#"{"n":6,"coeffs":[{"side":[1,2],"c":1},{"side":[3,4,5],"c":2}]}"#);
    }
}
