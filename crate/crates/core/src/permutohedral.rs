//! The labeled fan of the Losev–Manin space `L_{n-2}`.
//!
//! Coordinates: `u_i = e_i` for `i ≤ n-3` and `u_{n-2} = -(e_1 + ... + e_{n-3})`.
//! The ray labeled `J ⊆ {1, ..., n-2}` (with `1 ≤ |J| ≤ n-3`) is
//! `ρ_J = -Σ_{i∈J} u_i`; for `|J| = n-3` this is the ray `u_i` of projective
//! space with `{i}` the complement of `J`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fan::{Cone, Fan};
use crate::kapranov::KapranovClassL;
use crate::subset::{graded_subsets, Subset};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledFan {
    n: usize,
    fan: Fan,
    /// Indexed like the fan's rays.
    #[serde(rename = "label_of_ray")]
    labels: Vec<Subset>,
}

fn check_n(n: usize) -> Result<()> {
    if !(4..=32).contains(&n) {
        return Err(Error::MarkingCount { n, min: 4, max: 32 });
    }
    Ok(())
}

fn check_ray_label(n: usize, j: Subset) -> Result<()> {
    if j.is_empty() || j.len() > n - 3 || j.max_label() as usize > n - 2 {
        return Err(Error::InvalidLabel {
            members: j.to_vec(),
            n,
            reason: "ray labels are subsets of {1..n-2} with 1 <= |J| <= n-3",
        });
    }
    Ok(())
}

/// Labels of the rays of projective space `P^{n-3}` in ray order.
fn hyperplane_labels(n: usize) -> Vec<Subset> {
    let ground = Subset::range((n - 2) as u32);
    (1..=(n - 2) as u32).map(|i| ground.remove(i)).collect()
}

/// The blow-up centers of the Kapranov order: for `|J| = 1, 2, ..., n-4`,
/// lexicographically within a size, the cone spanned by the hyperplane rays
/// `ρ_K` with `J ⊊ K`. Ray indices refer to the fan at the time of the
/// blow-up; the new ray of step `k` gets index `(n-2) + k`.
pub fn kapranov_centers(n: usize) -> Result<Vec<(Subset, Cone)>> {
    check_n(n)?;
    let hyper = hyperplane_labels(n);
    let ground = Subset::range((n - 2) as u32);
    Ok(graded_subsets(ground, 1..=n - 4)
        .into_iter()
        .map(|j| {
            let ids = hyper
                .iter()
                .enumerate()
                .filter(|(_, k)| j.is_proper_subset(**k))
                .map(|(i, _)| i)
                .collect();
            (j, Cone::new(ids))
        })
        .collect())
}

/// Builds `L_{n-2}` from `P^{n-3}` by star subdivisions in the Kapranov order.
pub fn build_losev_manin(n: usize) -> Result<LabeledFan> {
    check_n(n)?;
    let mut fan = Fan::projective_space(n - 3)?;
    let mut labels = hyperplane_labels(n);
    for (j, sigma) in kapranov_centers(n)? {
        fan = fan.star_subdivide(&sigma)?;
        labels.push(j);
    }
    Ok(LabeledFan { n, fan, labels })
}

/// The same fan written down directly: one ray per label, one maximal cone
/// per maximal chain `J_1 ⊊ ... ⊊ J_{n-3}`.
pub fn flag_fan(n: usize) -> Result<LabeledFan> {
    check_n(n)?;
    let d = n - 3;
    let ground = Subset::range((n - 2) as u32);
    let labels = graded_subsets(ground, 1..=d);
    let rays: Vec<Vec<i64>> = labels.iter().map(|&j| label_ray(n, j)).collect();
    let index: HashMap<Subset, usize> = labels.iter().enumerate().map(|(i, &j)| (j, i)).collect();

    let mut cones = Vec::new();
    let mut chain = Vec::with_capacity(d);
    fn extend(
        current: Subset,
        ground: Subset,
        d: usize,
        index: &HashMap<Subset, usize>,
        chain: &mut Vec<usize>,
        cones: &mut Vec<Cone>,
    ) {
        if chain.len() == d {
            cones.push(Cone::new(chain.clone()));
            return;
        }
        for i in (ground - current).members() {
            let next = current.insert(i);
            chain.push(index[&next]);
            extend(next, ground, d, index, chain, cones);
            chain.pop();
        }
    }
    extend(Subset::EMPTY, ground, d, &index, &mut chain, &mut cones);
    let fan = Fan::new(d, rays, cones)?;
    Ok(LabeledFan { n, fan, labels })
}

/// `ρ_J = -Σ_{i∈J} u_i` in the fixed coordinates.
pub fn label_ray(n: usize, j: Subset) -> Vec<i64> {
    let d = n - 3;
    let mut v = vec![0i64; d];
    for i in j.members() {
        let i = i as usize;
        if i <= d {
            v[i - 1] -= 1;
        } else {
            v.iter_mut().for_each(|x| *x += 1);
        }
    }
    crate::fan::primitive(&v)
}

/// The class of the ray divisor `D_{ρ_J}` in the Kapranov basis: `E'_J` for
/// `|J| ≤ n-4`, and `H' - Σ_{∅≠J'⊊J} E'_{J'}` for `|J| = n-3`.
pub fn class_of_ray_divisor(n: usize, j: Subset) -> Result<KapranovClassL> {
    check_n(n)?;
    check_ray_label(n, j)?;
    if j.len() <= n - 4 {
        return KapranovClassL::exceptional(n, j);
    }
    let mut c = KapranovClassL::hyperplane(n)?;
    for sub in j.subsets().filter(|s| !s.is_empty() && *s != j) {
        c.add_exceptional(sub, -1)?;
    }
    Ok(c)
}

/// `H' - Σ_{∅≠T⊆J} E'_T`, the class on `L_{n-2}` whose pull-back is
/// `[F_{J,n}]`. Needs `J ⊆ {1..n-2}` and `|J| ≤ n-4`.
pub fn forgetful_class(n: usize, j: Subset) -> Result<KapranovClassL> {
    check_n(n)?;
    if j.len() > n - 4 || j.max_label() as usize > n - 2 {
        return Err(Error::InvalidLabel {
            members: j.to_vec(),
            n,
            reason: "J must be a subset of {1..n-2} with |J| <= n-4",
        });
    }
    let mut c = KapranovClassL::hyperplane(n)?;
    for t in j.subsets().filter(|t| !t.is_empty()) {
        c.add_exceptional(t, -1)?;
    }
    Ok(c)
}

/// `2^{n-2} - n + 1`.
pub fn picard_rank(n: usize) -> Result<usize> {
    check_n(n)?;
    Ok((1usize << (n - 2)) - n + 1)
}

impl LabeledFan {
    /// Pairs an arbitrary fan with ray labels; no consistency checks.
    pub fn from_parts(n: usize, fan: Fan, labels: Vec<Subset>) -> Self {
        LabeledFan { n, fan, labels }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn labels(&self) -> &[Subset] {
        &self.labels
    }

    pub fn ray_of(&self, j: Subset) -> Option<usize> {
        self.labels.iter().position(|&l| l == j)
    }

    /// `#rays − dim`, the Picard rank of a smooth complete toric variety.
    pub fn picard_rank(&self) -> usize {
        self.fan.rays().len() - self.fan.dim()
    }

    /// Whether the rays of every maximal cone carry labels forming a chain
    /// under inclusion.
    pub fn cones_are_chains(&self) -> bool {
        self.fan.max_cones().iter().all(|c| {
            let mut ls: Vec<Subset> = c.ray_ids().iter().map(|&i| self.labels[i]).collect();
            ls.sort_by_key(|s| s.len());
            ls.windows(2).all(|w| w[0].is_proper_subset(w[1]))
        })
    }

    /// Class in the Kapranov basis of a torus-invariant divisor.
    pub fn class_of_divisor(&self, divisor: &[i64]) -> Result<KapranovClassL> {
        if divisor.len() != self.labels.len() {
            return Err(Error::DimensionMismatch {
                expected: self.labels.len(),
                got: divisor.len(),
            });
        }
        let mut c = KapranovClassL::zero(self.n)?;
        for (&a, &j) in divisor.iter().zip(&self.labels) {
            if a != 0 {
                c += &(a * class_of_ray_divisor(self.n, j)?);
            }
        }
        Ok(c)
    }

    /// A torus-invariant representative of `class`: `h` copies of the ray
    /// divisor labeled `{2, ..., n-2}` (the ray `e_1`) plus exceptional ray
    /// divisors correcting the `E'` coordinates.
    pub fn divisor_from_class(&self, class: &KapranovClassL) -> Result<Vec<i64>> {
        if class.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: class.n(),
            });
        }
        let top = Subset::range((self.n - 2) as u32).remove(1);
        let mut d = vec![0i64; self.labels.len()];
        let h = class.h();
        let top_ray = self.ray_of(top).expect("hyperplane ray present");
        d[top_ray] = h;
        for j in KapranovClassL::exceptional_labels(self.n) {
            let ray = self.ray_of(j).expect("exceptional ray present");
            d[ray] = class.e(j)? + if j.is_proper_subset(top) { h } else { 0 };
        }
        debug_assert_eq!(&self.class_of_divisor(&d)?, class);
        Ok(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let l2 = build_losev_manin(4).unwrap();
        assert_eq!(l2.fan().rays(), &[vec![1], vec![-1]]);
        assert_eq!(l2.fan().max_cones().len(), 2);
        let l3 = build_losev_manin(5).unwrap();
        assert_eq!((l3.fan().rays().len(), l3.fan().max_cones().len()), (6, 6));
        let l4 = build_losev_manin(6).unwrap();
        assert_eq!((l4.fan().rays().len(), l4.fan().max_cones().len()), (14, 24));
        assert!(matches!(build_losev_manin(3), Err(Error::MarkingCount { .. })));
        assert!(flag_fan(3).is_err());
    }

    #[test]
    fn hexagon_rays() {
        let l3 = flag_fan(5).unwrap();
        let ray = |j: &[u32]| l3.fan().rays()[l3.ray_of(j.iter().copied().collect()).unwrap()].clone();
        assert_eq!(ray(&[1]), vec![-1, 0]);
        assert_eq!(ray(&[2]), vec![0, -1]);
        assert_eq!(ray(&[3]), vec![1, 1]);
        assert_eq!(ray(&[2, 3]), vec![1, 0]);
        assert_eq!(ray(&[1, 3]), vec![0, 1]);
        assert_eq!(ray(&[1, 2]), vec![-1, -1]);
        assert!(l3.cones_are_chains());
    }

    #[test]
    fn blow_up_matches_flags_for_small_n() {
        for n in 4..=6 {
            let a = build_losev_manin(n).unwrap();
            let b = flag_fan(n).unwrap();
            assert!(a.fan().same_fan(b.fan()), "n = {n}");
            for (i, &j) in a.labels().iter().enumerate() {
                assert_eq!(a.fan().rays()[i], label_ray(n, j));
            }
        }
    }

    #[test]
    fn ray_divisor_classes() {
        let s = |v: &[u32]| -> Subset { v.iter().copied().collect() };
        assert_eq!(
            class_of_ray_divisor(5, s(&[1])).unwrap(),
            KapranovClassL::exceptional(5, s(&[1])).unwrap()
        );
        assert_eq!(class_of_ray_divisor(5, s(&[2, 3])).unwrap().to_string(), "H' - E'2 - E'3");
        assert_eq!(
            class_of_ray_divisor(6, s(&[1, 2, 3])).unwrap().to_string(),
            "H' - E'1 - E'2 - E'3 - E'12 - E'13 - E'23"
        );
        assert!(class_of_ray_divisor(5, s(&[1, 2, 3])).is_err());
        assert!(class_of_ray_divisor(5, Subset::EMPTY).is_err());
    }

    #[test]
    fn divisor_from_class_examples() {
        let l3 = build_losev_manin(5).unwrap();
        let s = |v: &[u32]| -> Subset { v.iter().copied().collect() };
        let e = KapranovClassL::exceptional(5, s(&[2])).unwrap();
        let d = l3.divisor_from_class(&e).unwrap();
        let mut expected = vec![0; 6];
        expected[l3.ray_of(s(&[2])).unwrap()] = 1;
        assert_eq!(d, expected);

        let h = KapranovClassL::hyperplane(5).unwrap();
        let d = l3.divisor_from_class(&h).unwrap();
        let mut expected = vec![0; 6];
        for j in [s(&[2, 3]), s(&[2]), s(&[3])] {
            expected[l3.ray_of(j).unwrap()] = 1;
        }
        assert_eq!(d, expected);

        let zero = KapranovClassL::zero(5).unwrap();
        assert_eq!(l3.divisor_from_class(&zero).unwrap(), vec![0; 6]);
    }

    #[test]
    fn picard_rank_formula() {
        assert_eq!(picard_rank(4).unwrap(), 1);
        assert_eq!(picard_rank(5).unwrap(), 4);
        assert_eq!(picard_rank(6).unwrap(), 11);
        for n in 4..=7 {
            assert_eq!(build_losev_manin(n).unwrap().picard_rank(), picard_rank(n).unwrap());
        }
    }
}
