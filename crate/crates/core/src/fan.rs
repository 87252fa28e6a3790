//! Simplicial rational fans, toric blow-ups by star subdivision, and
//! bookkeeping of torus-invariant divisors.

use std::collections::{BTreeSet, HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{to_bigints, IntMatrix};

/// A cone given by the (sorted) indices of its generating rays.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cone(Vec<usize>);

impl Cone {
    pub fn new(mut ray_ids: Vec<usize>) -> Self {
        ray_ids.sort_unstable();
        ray_ids.dedup();
        Cone(ray_ids)
    }

    pub fn zero() -> Self {
        Cone(Vec::new())
    }

    pub fn ray_ids(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn contains_ray(&self, id: usize) -> bool {
        self.0.binary_search(&id).is_ok()
    }

    pub fn is_face_of(&self, other: &Cone) -> bool {
        self.0.iter().all(|r| other.contains_ray(*r))
    }

    /// All `k`-element faces, in lexicographic order of index tuples.
    pub fn faces(&self, k: usize) -> Vec<Cone> {
        let mut out = Vec::new();
        let mut pick = Vec::with_capacity(k);
        fn rec(ids: &[usize], start: usize, k: usize, pick: &mut Vec<usize>, out: &mut Vec<Cone>) {
            if pick.len() == k {
                out.push(Cone(pick.clone()));
                return;
            }
            for i in start..ids.len() {
                pick.push(ids[i]);
                rec(ids, i + 1, k, pick, out);
                pick.pop();
            }
        }
        rec(&self.0, 0, k, &mut pick, &mut out);
        out
    }
}

/// Whether pull-backs or proper transforms of divisors are requested from
/// [`Fan::transform_divisor`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DivisorTransform {
    PullBack,
    ProperTransform,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Validation {
    pub smooth: bool,
    pub complete: bool,
    pub simplicial: bool,
}

impl Validation {
    pub fn all(&self) -> bool {
        self.smooth && self.complete && self.simplicial
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fan {
    dim: usize,
    rays: Vec<Vec<i64>>,
    max_cones: Vec<Cone>,
}

impl Fan {
    /// Builds a fan, checking dimensions and that every ray is used. Rays are
    /// reduced to primitive vectors.
    pub fn new(dim: usize, rays: Vec<Vec<i64>>, max_cones: Vec<Cone>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        let mut rays = rays;
        for r in rays.iter_mut() {
            if r.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: r.len(),
                });
            }
            *r = primitive(r);
        }
        let mut used = vec![false; rays.len()];
        for c in &max_cones {
            for &id in c.ray_ids() {
                if id >= rays.len() {
                    return Err(Error::NotACone(c.ray_ids().to_vec()));
                }
                used[id] = true;
            }
        }
        if let Some(unused) = used.iter().position(|u| !u) {
            return Err(Error::NotACone(vec![unused]));
        }
        Ok(Fan {
            dim,
            rays,
            max_cones,
        })
    }

    /// The fan of projective space `P^d`: rays `e_1, ..., e_d` and
    /// `-(e_1 + ... + e_d)`, maximal cones all `d`-subsets of rays.
    pub fn projective_space(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::ZeroDimension);
        }
        let mut rays: Vec<Vec<i64>> = (0..d)
            .map(|i| (0..d).map(|j| i64::from(i == j)).collect())
            .collect();
        rays.push(vec![-1; d]);
        let all = Cone((0..=d).collect());
        Fan::new(d, rays, all.faces(d))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn max_cones(&self) -> &[Cone] {
        &self.max_cones
    }

    pub fn ray_index(&self, ray: &[i64]) -> Option<usize> {
        self.rays.iter().position(|r| r.as_slice() == ray)
    }

    /// Whether `sigma` is a cone of the fan, i.e. a face of a maximal cone.
    pub fn has_cone(&self, sigma: &Cone) -> bool {
        self.max_cones.iter().any(|m| sigma.is_face_of(m))
    }

    fn generator_matrix(&self, cone: &Cone) -> IntMatrix {
        let cols: Vec<&[i64]> = cone.ray_ids().iter().map(|&i| self.rays[i].as_slice()).collect();
        IntMatrix::from_columns(self.dim, &cols)
    }

    /// Whether the generators of `cone` extend to a basis of the lattice.
    pub fn is_smooth_cone(&self, cone: &Cone) -> bool {
        is_unimodular_set(&self.generator_matrix(cone))
    }

    fn is_simplicial_cone(&self, cone: &Cone) -> bool {
        self.generator_matrix(cone).rank() == cone.dim()
    }

    /// Star subdivision at `sigma`: the fan of the blow-up along the orbit
    /// closure of `sigma`. The new ray is appended at the end of the ray list.
    ///
    /// Subdividing at a ray or at the zero cone returns the fan unchanged.
    pub fn star_subdivide(&self, sigma: &Cone) -> Result<Fan> {
        if !self.has_cone(sigma) {
            return Err(Error::NotACone(sigma.ray_ids().to_vec()));
        }
        if !self.is_smooth_cone(sigma) {
            return Err(Error::NotSmooth(sigma.ray_ids().to_vec()));
        }
        if sigma.dim() <= 1 {
            return Ok(self.clone());
        }
        let mut u = vec![0i64; self.dim];
        for &id in sigma.ray_ids() {
            for (x, y) in u.iter_mut().zip(&self.rays[id]) {
                *x += y;
            }
        }
        let u = primitive(&u);
        let new_id = self.rays.len();
        let mut rays = self.rays.clone();
        rays.push(u);
        let mut cones = Vec::with_capacity(self.max_cones.len() + sigma.dim());
        for tau in &self.max_cones {
            if !sigma.is_face_of(tau) {
                cones.push(tau.clone());
                continue;
            }
            for &drop in sigma.ray_ids() {
                let mut ids: Vec<usize> = tau.ray_ids().iter().copied().filter(|&r| r != drop).collect();
                ids.push(new_id);
                cones.push(Cone::new(ids));
            }
        }
        Fan::new(self.dim, rays, cones)
    }

    /// Transports a torus-invariant divisor `Σ a_ρ D_ρ` across the star
    /// subdivision at `sigma`.
    ///
    /// Coefficients on old rays are kept. For the pull-back the new ray gets
    /// `Σ_{ρ ∈ σ} a_ρ`; for the proper transform each unit of coefficient on a
    /// ray of `sigma` removes one copy of the exceptional divisor, so the
    /// new ray gets `0`.
    pub fn transform_divisor(
        &self,
        sigma: &Cone,
        divisor: &[i64],
        mode: DivisorTransform,
    ) -> Result<Vec<i64>> {
        if divisor.len() != self.rays.len() {
            return Err(Error::DimensionMismatch {
                expected: self.rays.len(),
                got: divisor.len(),
            });
        }
        if !self.has_cone(sigma) {
            return Err(Error::NotACone(sigma.ray_ids().to_vec()));
        }
        if !self.is_smooth_cone(sigma) {
            return Err(Error::NotSmooth(sigma.ray_ids().to_vec()));
        }
        let mut out = divisor.to_vec();
        if sigma.dim() <= 1 {
            return Ok(out);
        }
        let along: i64 = sigma.ray_ids().iter().map(|&i| divisor[i]).sum();
        out.push(match mode {
            DivisorTransform::PullBack => along,
            DivisorTransform::ProperTransform => 0,
        });
        Ok(out)
    }

    /// The principal divisor `div(χ^m) = Σ ⟨m, u_ρ⟩ D_ρ`.
    pub fn principal_divisor(&self, m: &[i64]) -> Vec<i64> {
        assert_eq!(m.len(), self.dim);
        self.rays
            .iter()
            .map(|u| u.iter().zip(m).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Whether `divisor` is linearly equivalent to zero, i.e. equals
    /// `div(χ^m)` for some character `m`.
    pub fn is_principal(&self, divisor: &[i64]) -> bool {
        assert_eq!(divisor.len(), self.rays.len());
        let rows: Vec<&[i64]> = self.rays.iter().map(Vec::as_slice).collect();
        let a = IntMatrix::from_rows(&rows);
        a.solve_particular(&to_bigints(divisor)).is_some()
    }

    pub fn validate(&self) -> Validation {
        let simplicial = self.max_cones.iter().all(|c| self.is_simplicial_cone(c));
        let smooth = simplicial && self.max_cones.iter().all(|c| self.is_smooth_cone(c));
        let complete = simplicial && self.is_complete();
        Validation {
            smooth,
            complete,
            simplicial,
        }
    }

    /// Facet pairing plus connectivity of the facet-adjacency graph; the two
    /// cones sharing a facet must lie on opposite sides of it.
    fn is_complete(&self) -> bool {
        if self.max_cones.is_empty() || self.max_cones.iter().any(|c| c.dim() != self.dim) {
            return false;
        }
        let mut facets: HashMap<Cone, Vec<usize>> = HashMap::new();
        for (i, c) in self.max_cones.iter().enumerate() {
            for f in c.faces(self.dim - 1) {
                facets.entry(f).or_default().push(i);
            }
        }
        let mut adj = vec![Vec::new(); self.max_cones.len()];
        for (facet, owners) in &facets {
            let [a, b] = owners.as_slice() else {
                return false;
            };
            if !self.opposite_sides(facet, *a, *b) {
                return false;
            }
            adj[*a].push(*b);
            adj[*b].push(*a);
        }
        let mut seen = vec![false; self.max_cones.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for &j in &adj[i] {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    fn opposite_sides(&self, facet: &Cone, a: usize, b: usize) -> bool {
        let apex = |c: usize| {
            *self.max_cones[c]
                .ray_ids()
                .iter()
                .find(|r| !facet.contains_ray(**r))
                .expect("maximal cone has a ray off the facet")
        };
        let side = |r: usize| {
            let mut cols: Vec<&[i64]> = facet.ray_ids().iter().map(|&i| self.rays[i].as_slice()).collect();
            cols.push(&self.rays[r]);
            IntMatrix::from_columns(self.dim, &cols).determinant()
        };
        let (sa, sb) = (side(apex(a)), side(apex(b)));
        !sa.is_zero() && !sb.is_zero() && sa.is_positive() != sb.is_positive()
    }

    /// Number of maximal cones whose interior contains `point`, or `None` if
    /// the point lies on the boundary of some maximal cone (non-generic).
    pub fn covering_degree(&self, point: &[i64]) -> Option<usize> {
        assert_eq!(point.len(), self.dim);
        let mut count = 0;
        for c in &self.max_cones {
            if c.dim() != self.dim {
                continue;
            }
            let coeffs = solve_rational(&self.generator_matrix(c), point)?;
            if coeffs.iter().any(Zero::is_zero) {
                return None;
            }
            if coeffs.iter().all(|q| q.is_positive()) {
                count += 1;
            }
        }
        Some(count)
    }

    /// All `k`-dimensional cones, sorted and without repetition.
    pub fn strata(&self, k: usize) -> Vec<Cone> {
        let set: BTreeSet<Cone> = self
            .max_cones
            .iter()
            .filter(|c| c.dim() >= k)
            .flat_map(|c| c.faces(k))
            .collect();
        set.into_iter().collect()
    }

    /// Equality of fans as geometric objects: same set of rays and same set
    /// of maximal cones, ignoring ray order.
    pub fn same_fan(&self, other: &Fan) -> bool {
        if self.dim != other.dim || self.rays.len() != other.rays.len() {
            return false;
        }
        let rays_a: HashSet<&Vec<i64>> = self.rays.iter().collect();
        let rays_b: HashSet<&Vec<i64>> = other.rays.iter().collect();
        if rays_a != rays_b || rays_a.len() != self.rays.len() {
            return false;
        }
        let cone_set = |f: &Fan| -> HashSet<Vec<Vec<i64>>> {
            f.max_cones
                .iter()
                .map(|c| {
                    let mut v: Vec<Vec<i64>> = c.ray_ids().iter().map(|&i| f.rays[i].clone()).collect();
                    v.sort();
                    v
                })
                .collect()
        };
        self.max_cones.len() == other.max_cones.len() && cone_set(self) == cone_set(other)
    }
}

pub fn primitive(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g <= 1 {
        v.to_vec()
    } else {
        v.iter().map(|x| x / g).collect()
    }
}

/// A `d × k` integer matrix with `k ≤ d` has columns extending to a lattice
/// basis iff the gcd of its `k × k` minors is 1.
fn is_unimodular_set(m: &IntMatrix) -> bool {
    let (d, k) = (m.rows(), m.cols());
    if k == 0 {
        return true;
    }
    if k > d {
        return false;
    }
    let mut g = BigInt::zero();
    for rows in Cone((0..d).collect()).faces(k) {
        let mut minor = IntMatrix::zeros(k, k);
        for (i, &r) in rows.ray_ids().iter().enumerate() {
            for j in 0..k {
                minor[(i, j)] = m[(r, j)].clone();
            }
        }
        g = g.gcd(&minor.determinant());
        if g == BigInt::from(1) {
            return true;
        }
    }
    false
}

/// Solves `A·x = b` for square invertible `A` over the rationals.
fn solve_rational(a: &IntMatrix, b: &[i64]) -> Option<Vec<BigRational>> {
    let n = a.rows();
    if a.cols() != n {
        return None;
    }
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = a.row(i).iter().map(|x| BigRational::from_integer(x.clone())).collect();
            row.push(BigRational::from_integer(b[i].into()));
            row
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, p);
        let pivot = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = &row[col] / &pivot[col];
            for (x, y) in row.iter_mut().zip(&pivot) {
                *x -= &f * y;
            }
        }
    }
    Some((0..n).map(|i| &m[i][n] / &m[i][i]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2() -> Fan {
        Fan::projective_space(2).unwrap()
    }

    #[test]
    fn projective_plane_rays() {
        let f = p2();
        assert_eq!(f.rays(), &[vec![1, 0], vec![0, 1], vec![-1, -1]]);
        assert_eq!(f.max_cones().len(), 3);
        let f3 = Fan::projective_space(3).unwrap();
        assert_eq!((f3.rays().len(), f3.max_cones().len()), (4, 4));
        assert_eq!(Fan::projective_space(0), Err(Error::ZeroDimension));
    }

    #[test]
    fn blow_up_a_point_of_the_plane() {
        let f = p2().star_subdivide(&Cone::new(vec![0, 1])).unwrap();
        assert_eq!(f.rays().len(), 4);
        assert_eq!(f.rays()[3], vec![1, 1]);
        assert_eq!(f.max_cones().len(), 4);
        assert!(f.validate().all());
    }

    #[test]
    fn blow_up_all_fixed_points_gives_hexagon() {
        let mut f = p2();
        for sigma in [[0, 1], [0, 2], [1, 2]] {
            f = f.star_subdivide(&Cone::new(sigma.to_vec())).unwrap();
        }
        assert_eq!(f.rays().len(), 6);
        assert_eq!(f.max_cones().len(), 6);
        assert_eq!(
            f.validate(),
            Validation {
                smooth: true,
                complete: true,
                simplicial: true
            }
        );
        assert_eq!(f.strata(1).len(), 6);
        assert_eq!(f.strata(2).len(), 6);
        assert_eq!(f.strata(0), vec![Cone::zero()]);
    }

    #[test]
    fn subdividing_a_ray_is_a_no_op() {
        let f = p2();
        assert_eq!(f.star_subdivide(&Cone::new(vec![1])).unwrap(), f);
    }

    #[test]
    fn subdivision_errors_are_distinct() {
        let f = p2();
        // rays 0 and 1 of the blown-up fan no longer span a cone
        let g = f.star_subdivide(&Cone::new(vec![0, 1])).unwrap();
        assert_eq!(
            g.star_subdivide(&Cone::new(vec![0, 1])),
            Err(Error::NotACone(vec![0, 1]))
        );
        let singular = Fan::new(2, vec![vec![1, 0], vec![1, 2], vec![-1, -1]], vec![
            Cone::new(vec![0, 1]),
            Cone::new(vec![1, 2]),
            Cone::new(vec![0, 2]),
        ])
        .unwrap();
        assert_eq!(
            singular.star_subdivide(&Cone::new(vec![0, 1])),
            Err(Error::NotSmooth(vec![0, 1]))
        );
        assert!(!singular.validate().smooth);
    }

    #[test]
    fn orthant_is_not_complete() {
        let f = Fan::new(2, vec![vec![1, 0], vec![0, 1]], vec![Cone::new(vec![0, 1])]).unwrap();
        let v = f.validate();
        assert!(v.smooth && v.simplicial && !v.complete);
    }

    #[test]
    fn proper_transform_of_a_ray_divisor() {
        let f = p2();
        let sigma = Cone::new(vec![0, 1]);
        let d1 = [1, 0, 0];
        let pt = f.transform_divisor(&sigma, &d1, DivisorTransform::ProperTransform).unwrap();
        let pb = f.transform_divisor(&sigma, &d1, DivisorTransform::PullBack).unwrap();
        assert_eq!(pt, vec![1, 0, 0, 0]);
        // proper transform = pull-back − exceptional divisor
        assert_eq!(pb, vec![1, 0, 0, 1]);
        let zero = f.transform_divisor(&sigma, &[0, 0, 0], DivisorTransform::PullBack).unwrap();
        assert_eq!(zero, vec![0; 4]);
    }

    #[test]
    fn pull_back_is_linearly_equivalent_to_expected_class() {
        let f = p2();
        let sigma = Cone::new(vec![0, 1]);
        let pb = f
            .transform_divisor(&sigma, &[1, 1, 0], DivisorTransform::PullBack)
            .unwrap();
        assert_eq!(pb, vec![1, 1, 0, 2]);
        let g = f.star_subdivide(&sigma).unwrap();
        // the pull-back of D1 + D2 ~ 2 D3 on P^2 is 2 D3 upstairs (D3 misses
        // the centre), so pb − 2 D3 must be principal
        let diff: Vec<i64> = pb.iter().zip([0, 0, 2, 0]).map(|(a, b)| a - b).collect();
        assert!(g.is_principal(&diff));
        assert!(!g.is_principal(&[1, 0, 0, 0]));
    }

    #[test]
    fn covering_degree_is_one_on_complete_fans() {
        let mut f = p2();
        f = f.star_subdivide(&Cone::new(vec![0, 1])).unwrap();
        for pt in [[3, 7], [-5, 2], [1, -11], [-2, -9]] {
            assert_eq!(f.covering_degree(&pt), Some(1));
        }
        assert_eq!(f.covering_degree(&[1, 1]), None);
    }

    #[test]
    fn json_field_names() {
        let json = serde_json::to_value(p2()).unwrap();
        assert_eq!(json["dim"], 2);
        assert_eq!(json["rays"][2], serde_json::json!([-1, -1]));
        assert_eq!(json["max_cones"][0], serde_json::json!([0, 1]));
    }
}
