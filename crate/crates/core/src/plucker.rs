//! Plücker relations among boundary variables and the relation count in the
//! degrees `[F_{J,n}]`.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::rational_rank;
use crate::kapranov::KapranovClassM;
use crate::m0n::{
    cl, effective_boundary_reps, f_class, keel_vermeire_class, keel_vermeire_pairings, line_pairing, BoundaryIndex,
    BoundarySum,
};
use crate::permutohedral::{build_losev_manin, forgetful_class};
use crate::polytope::h0_toric;
use crate::subset::Subset;

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PluckerTerm {
    pub sign: i8,
    pub monomial: BoundarySum,
}

/// `p_I = x(ij|kl) - x(ik|jl) + x(il|jk)`, where `x(ab|cd)` is the product
/// of all boundary variables separating `{a,b}` from `{c,d}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PluckerRelation {
    pub n: usize,
    #[serde(rename = "I")]
    pub i: Subset,
    pub terms: [PluckerTerm; 3],
}

impl PluckerRelation {
    /// Common degree of the three terms, if they agree.
    pub fn degree(&self) -> Option<KapranovClassM> {
        let d = cl(&self.terms[0].monomial);
        self.terms[1..].iter().all(|t| cl(&t.monomial) == d).then_some(d)
    }
}

/// Product of the boundary variables whose divisor separates `{a,b}` from
/// `{c,d}`.
pub fn separating_monomial(n: usize, a: u32, b: u32, c: u32, d: u32) -> Result<BoundarySum> {
    let ab = Subset::from([a, b]);
    let cd = Subset::from([c, d]);
    let terms = BoundaryIndex::all(n)?
        .into_iter()
        .filter(|t| {
            let s = t.side();
            (ab.is_subset(s) && cd.is_disjoint(s)) || (cd.is_subset(s) && ab.is_disjoint(s))
        })
        .map(|t| (t, 1));
    BoundarySum::from_terms(n, terms)
}

pub fn plucker_relation(i: Subset, n: usize) -> Result<PluckerRelation> {
    if !(5..=32).contains(&n) {
        return Err(Error::MarkingCount { n, min: 5, max: 32 });
    }
    if i.len() != 4 || i.max_label() as usize > n {
        return Err(Error::InvalidLabel {
            members: i.to_vec(),
            n,
            reason: "a Plücker relation needs four labels in {1..n}",
        });
    }
    let [a, b, c, d]: [u32; 4] = i.to_vec().try_into().expect("four labels");
    Ok(PluckerRelation {
        n,
        i,
        terms: [
            PluckerTerm {
                sign: 1,
                monomial: separating_monomial(n, a, b, c, d)?,
            },
            PluckerTerm {
                sign: -1,
                monomial: separating_monomial(n, a, c, b, d)?,
            },
            PluckerTerm {
                sign: 1,
                monomial: separating_monomial(n, a, d, b, c)?,
            },
        ],
    })
}

pub fn all_plucker_relations(n: usize) -> Result<Vec<PluckerRelation>> {
    Subset::range(n as u32)
        .subsets_of_size(4)
        .into_iter()
        .map(|i| plucker_relation(i, n))
        .collect()
}

/// All boundary monomials of class `c`.
pub fn monomials_in_degree(c: &KapranovClassM) -> Result<Vec<BoundarySum>> {
    effective_boundary_reps(c)
}

/// `m_J(a,b)`: the product of `x_T` over sides `T ∋ n` avoiding `a, b` and
/// not contained in `J ∪ {n}`. Its class is `[F_{J,n}]`.
pub fn pair_monomial(n: usize, j: Subset, a: u32, b: u32) -> Result<BoundarySum> {
    let nl = n as u32;
    let ab = Subset::from([a, b]);
    if a == b || !ab.is_disjoint(j.insert(nl)) || ab.max_label() > nl {
        return Err(Error::InvalidLabel {
            members: ab.to_vec(),
            n,
            reason: "the pair must avoid J and n",
        });
    }
    let jn = j.insert(nl);
    let terms = BoundaryIndex::all(n)?
        .into_iter()
        .filter(|t| {
            let with_n = t.n_side();
            ab.is_disjoint(with_n) && !with_n.is_subset(jn)
        })
        .map(|t| (t, 1));
    BoundarySum::from_terms(n, terms)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub n: usize,
    #[serde(rename = "J")]
    pub j: Subset,
    pub monomial_count: usize,
    pub h0: usize,
    pub relation_dim: usize,
    pub plucker_rank: usize,
    pub verified: bool,
}

/// Rank of the span of all multiples `μ·p_I` lying in degree `[F_{J,6}]`,
/// compared with `#monomials - h0`.
pub fn plucker_span_rank(j: Subset, n: usize) -> Result<DegreeReport> {
    if n != 6 {
        return Err(Error::OutOfScope(
            "Plücker generation is only checked for n = 6, the case with a known generating set",
        ));
    }
    if j.len() > n - 4 || j.max_label() > 4 {
        return Err(Error::InvalidLabel {
            members: j.to_vec(),
            n,
            reason: "J must be a subset of {1..4} with at most 2 elements",
        });
    }
    let target = f_class(n, j, n as u32)?;
    let basis = monomials_in_degree(&target)?;
    let pos: HashMap<&BoundarySum, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();

    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for rel in all_plucker_relations(n)? {
        let deg = rel.degree().expect("Plücker relations are homogeneous");
        let diff = target.clone() - deg;
        for mu in effective_boundary_reps(&diff)? {
            let mut row = vec![BigRational::zero(); basis.len()];
            for term in &rel.terms {
                let m = mu.plus(&term.monomial);
                let k = pos[&m];
                row[k] += BigRational::from_integer(term.sign.into());
            }
            rows.push(row);
        }
    }
    let plucker_rank = rational_rank(&rows);

    let lm = build_losev_manin(n)?;
    let h0 = h0_toric(&lm, &forgetful_class(n, j)?)?;
    let monomial_count = basis.len();
    let relation_dim = monomial_count.saturating_sub(h0);

    let expected = binom(n - j.len() - 2, 2);
    let no_kv = keel_vermeire_pairings()
        .into_iter()
        .all(|p| keel_vermeire_class(n, p).is_ok_and(|q| line_pairing(&q) > line_pairing(&target)));
    let verified = h0 == n - j.len() - 2
        && monomial_count == binom(n - j.len() - 1, 2)
        && monomial_count >= h0
        && plucker_rank == relation_dim
        && plucker_rank == expected
        && line_pairing(&target) == 1
        && no_kv;
    Ok(DegreeReport {
        n,
        j,
        monomial_count,
        h0,
        relation_dim,
        plucker_rank,
        verified,
    })
}

fn check_configuration(i: Subset, t: &[BigRational]) -> Result<[usize; 4]> {
    if i.len() != 4 || i.max_label() as usize > t.len() {
        return Err(Error::InvalidLabel {
            members: i.to_vec(),
            n: t.len(),
            reason: "need four labels indexing the configuration",
        });
    }
    for a in 0..t.len() {
        for b in a + 1..t.len() {
            if t[a] == t[b] {
                return Err(Error::RepeatedPoints);
            }
        }
    }
    let v = i.to_vec();
    Ok([0, 1, 2, 3].map(|k| v[k] as usize - 1))
}

/// `s_1 (t_i-t_j)(t_k-t_l) + s_2 (t_i-t_k)(t_j-t_l) + s_3 (t_i-t_l)(t_j-t_k)`
/// for points `t_1, ..., t_n` of the affine line.
pub fn eval_with_signs(i: Subset, t: &[BigRational], signs: [i8; 3]) -> Result<BigRational> {
    let [a, b, c, d] = check_configuration(i, t)?;
    let diff = |x: usize, y: usize| &t[x] - &t[y];
    let s = |k: usize| BigRational::from_integer(signs[k].into());
    Ok(s(0) * diff(a, b) * diff(c, d) + s(1) * diff(a, c) * diff(b, d) + s(2) * diff(a, d) * diff(b, c))
}

/// The image of `p_I` on the line of four-point cross-products; identically
/// zero.
pub fn eval_identity(i: Subset, t: &[BigRational]) -> Result<BigRational> {
    eval_with_signs(i, t, [1, -1, 1])
}

/// Convenience for integer configurations.
pub fn rationals(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
}
