//! Divisor classes in a Kapranov basis `{H, E_J}`.
//!
//! The same coordinate layout serves the Losev–Manin space (labels drawn
//! from `{1, ..., n-2}`) and `M_{0,n}` (labels drawn from `{1, ..., n-1}`);
//! the two are kept apart at the type level by a side marker. Coordinates
//! are ordered `H` first, then `E_J` by `|J|` and lexicographically within a
//! size, with `1 ≤ |J| ≤ n - 4`.

use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::subset::{graded_subsets, Subset};

pub trait KapranovSide: Copy + Eq + fmt::Debug {
    /// Number of labels the exceptional divisors are drawn from.
    fn ground_size(n: usize) -> usize;
    /// Prefix used when printing exceptional classes.
    const EXCEPTIONAL: &'static str;
    const HYPERPLANE: &'static str;
}

/// Basis `{H', E'_J}` of `Pic(L_{n-2})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LosevManinSide;

/// Basis `{H, E_J}` of `Pic(M_{0,n})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModuliSide;

impl KapranovSide for LosevManinSide {
    fn ground_size(n: usize) -> usize {
        n - 2
    }
    const EXCEPTIONAL: &'static str = "E'";
    const HYPERPLANE: &'static str = "H'";
}

impl KapranovSide for ModuliSide {
    fn ground_size(n: usize) -> usize {
        n - 1
    }
    const EXCEPTIONAL: &'static str = "E";
    const HYPERPLANE: &'static str = "H";
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct KapranovClass<S: KapranovSide> {
    n: usize,
    coords: Vec<i64>,
    side: PhantomData<S>,
}

pub type KapranovClassL = KapranovClass<LosevManinSide>;
pub type KapranovClassM = KapranovClass<ModuliSide>;

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Position of `j` among subsets of `{1..ground}` of sizes `1..`, ordered by
/// size and then lexicographically.
fn graded_rank(j: Subset, ground: usize) -> usize {
    let k = j.len();
    let mut pos: usize = (1..k).map(|s| binom(ground, s)).sum();
    let mut prev = 0usize;
    for (i, c) in j.members().enumerate() {
        let c = c as usize;
        for x in prev + 1..c {
            pos += binom(ground - x, k - i - 1);
        }
        prev = c;
    }
    pos
}

impl<S: KapranovSide> KapranovClass<S> {
    fn check_n(n: usize) -> Result<()> {
        if !(4..=32).contains(&n) {
            return Err(Error::MarkingCount { n, min: 4, max: 32 });
        }
        Ok(())
    }

    /// Length of the coordinate vector (the Picard rank).
    pub fn rank(n: usize) -> usize {
        1 + (1..=n.saturating_sub(4))
            .map(|k| binom(S::ground_size(n), k))
            .sum::<usize>()
    }

    /// Labels of the exceptional classes in coordinate order.
    pub fn exceptional_labels(n: usize) -> Vec<Subset> {
        graded_subsets(
            Subset::range(S::ground_size(n) as u32),
            1..=n.saturating_sub(4),
        )
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::check_n(n)?;
        Ok(KapranovClass {
            n,
            coords: vec![0; Self::rank(n)],
            side: PhantomData,
        })
    }

    pub fn hyperplane(n: usize) -> Result<Self> {
        let mut c = Self::zero(n)?;
        c.coords[0] = 1;
        Ok(c)
    }

    pub fn exceptional(n: usize, j: Subset) -> Result<Self> {
        let mut c = Self::zero(n)?;
        let pos = c.position(j)?;
        c.coords[pos] = 1;
        Ok(c)
    }

    pub fn from_coords(n: usize, coords: Vec<i64>) -> Result<Self> {
        Self::check_n(n)?;
        if coords.len() != Self::rank(n) {
            return Err(Error::DimensionMismatch {
                expected: Self::rank(n),
                got: coords.len(),
            });
        }
        Ok(KapranovClass {
            n,
            coords,
            side: PhantomData,
        })
    }

    fn position(&self, j: Subset) -> Result<usize> {
        let ground = S::ground_size(self.n);
        if j.is_empty() || j.len() > self.n - 4 || j.max_label() as usize > ground {
            return Err(Error::InvalidLabel {
                members: j.to_vec(),
                n: self.n,
                reason: "not an exceptional label of the Kapranov basis",
            });
        }
        Ok(1 + graded_rank(j, ground))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn h(&self) -> i64 {
        self.coords[0]
    }

    pub fn e(&self, j: Subset) -> Result<i64> {
        Ok(self.coords[self.position(j)?])
    }

    pub fn add_exceptional(&mut self, j: Subset, coeff: i64) -> Result<()> {
        let pos = self.position(j)?;
        self.coords[pos] += coeff;
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// Nonzero exceptional coefficients in coordinate order.
    pub fn exceptional_terms(&self) -> Vec<(Subset, i64)> {
        Self::exceptional_labels(self.n)
            .into_iter()
            .zip(&self.coords[1..])
            .filter(|(_, &c)| c != 0)
            .map(|(j, &c)| (j, c))
            .collect()
    }

    /// Same coordinates read in a basis on the other side.
    pub(crate) fn relabel<T: KapranovSide>(&self) -> Result<KapranovClass<T>> {
        let mut out = KapranovClass::<T>::zero(self.n)?;
        out.coords[0] = self.h();
        for (j, c) in self.exceptional_terms() {
            out.add_exceptional(j, c)?;
        }
        Ok(out)
    }
}

impl<S: KapranovSide> fmt::Display for KapranovClass<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(i64, String)> = Vec::new();
        if self.h() != 0 {
            terms.push((self.h(), S::HYPERPLANE.to_string()));
        }
        for (j, c) in self.exceptional_terms() {
            terms.push((c, format!("{}{}", S::EXCEPTIONAL, j)));
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, name)) in terms.iter().enumerate() {
            let sign = if *c < 0 { "-" } else { "+" };
            let mag = c.unsigned_abs();
            match (i, mag) {
                (0, 1) if *c < 0 => write!(f, "-{name}")?,
                (0, 1) => write!(f, "{name}")?,
                (0, _) => write!(f, "{c}{name}")?,
                (_, 1) => write!(f, " {sign} {name}")?,
                _ => write!(f, " {sign} {mag}{name}")?,
            }
        }
        Ok(())
    }
}

impl<S: KapranovSide> fmt::Debug for KapranovClass<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] (n = {})", self, self.n)
    }
}

impl<S: KapranovSide> Serialize for KapranovClass<S> {
    fn serialize<Ser: Serializer>(&self, serializer: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        #[derive(Serialize)]
        struct Term {
            #[serde(rename = "J")]
            j: Subset,
            c: i64,
        }
        let terms: Vec<Term> = self
            .exceptional_terms()
            .into_iter()
            .map(|(j, c)| Term { j, c })
            .collect();
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("h", &self.h())?;
        map.serialize_entry("e", &terms)?;
        map.end()
    }
}

impl<S: KapranovSide> AddAssign<&KapranovClass<S>> for KapranovClass<S> {
    fn add_assign(&mut self, rhs: &KapranovClass<S>) {
        assert_eq!(self.n, rhs.n, "classes live on different spaces");
        for (a, b) in self.coords.iter_mut().zip(&rhs.coords) {
            *a += b;
        }
    }
}

impl<S: KapranovSide> SubAssign<&KapranovClass<S>> for KapranovClass<S> {
    fn sub_assign(&mut self, rhs: &KapranovClass<S>) {
        assert_eq!(self.n, rhs.n, "classes live on different spaces");
        for (a, b) in self.coords.iter_mut().zip(&rhs.coords) {
            *a -= b;
        }
    }
}

impl<S: KapranovSide> Add for KapranovClass<S> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += &rhs;
        self
    }
}

impl<S: KapranovSide> Sub for KapranovClass<S> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self -= &rhs;
        self
    }
}

impl<S: KapranovSide> Neg for KapranovClass<S> {
    type Output = Self;
    fn neg(mut self) -> Self {
        self.coords.iter_mut().for_each(|c| *c = -*c);
        self
    }
}

impl<S: KapranovSide> Mul<KapranovClass<S>> for i64 {
    type Output = KapranovClass<S>;
    fn mul(self, mut rhs: KapranovClass<S>) -> KapranovClass<S> {
        rhs.coords.iter_mut().for_each(|c| *c *= self);
        rhs
    }
}
