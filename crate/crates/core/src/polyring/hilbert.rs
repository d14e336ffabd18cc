//! Multigradings and standard-monomial counts.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::monomial::{Monomial, Var};
use super::PolyError;

/// Largest total degree accepted by [`standard_monomial_count`].
pub const MAX_TOTAL_DEGREE: u32 = 6;

/// Degree vector with one slot per variable group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiDegree(pub Vec<u32>);

impl MultiDegree {
    pub fn zero(slots: usize) -> Self {
        MultiDegree(vec![0; slots])
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &MultiDegree) -> MultiDegree {
        MultiDegree(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

/// Assignment of every variable to a grading slot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    slot_of: Vec<usize>,
    nslots: usize,
}

impl Grading {
    pub fn new(slot_of: Vec<usize>, nslots: usize) -> Self {
        assert!(slot_of.iter().all(|&s| s < nslots));
        Grading { slot_of, nslots }
    }

    pub fn nvars(&self) -> usize {
        self.slot_of.len()
    }

    pub fn nslots(&self) -> usize {
        self.nslots
    }

    pub fn slot(&self, v: Var) -> usize {
        self.slot_of[v as usize]
    }

    pub fn vars_in_slot(&self, s: usize) -> Vec<Var> {
        (0..self.slot_of.len())
            .filter(|&v| self.slot_of[v] == s)
            .map(|v| v as Var)
            .collect()
    }

    pub fn degree(&self, m: &Monomial) -> MultiDegree {
        let mut d = vec![0u32; self.nslots];
        for &(v, e) in m.pairs() {
            d[self.slot_of[v as usize]] += e as u32;
        }
        MultiDegree(d)
    }
}

/// Number of monomials of multidegree `d` divisible by no monomial in `leads`.
pub fn standard_monomial_count(
    leads: &[Monomial],
    grading: &Grading,
    d: &MultiDegree,
) -> Result<u64, PolyError> {
    if d.0.len() != grading.nslots() {
        return Err(PolyError::PreconditionViolated(
            "multidegree length differs from the grading".into(),
        ));
    }
    if d.total() > MAX_TOTAL_DEGREE {
        return Err(PolyError::DegreeTooLarge {
            total: d.total(),
            max: MAX_TOTAL_DEGREE,
        });
    }
    // only leads that can divide a monomial of degree d matter
    let relevant: Vec<&Monomial> = leads
        .iter()
        .filter(|l| grading.degree(l).0.iter().zip(&d.0).all(|(a, b)| a <= b))
        .collect();
    let per_slot: Vec<Vec<Vec<Var>>> = (0..grading.nslots())
        .map(|s| {
            grading
                .vars_in_slot(s)
                .into_iter()
                .combinations_with_replacement(d.0[s] as usize)
                .collect()
        })
        .collect();
    let mut count = 0u64;
    for choice in per_slot.iter().map(|v| v.iter()).multi_cartesian_product() {
        let m = Monomial::from_vars(choice.into_iter().flatten().copied());
        if !relevant.iter().any(|l| l.divides(&m)) {
            count += 1;
        }
    }
    if grading.nslots() == 0 {
        return Ok(if relevant.iter().any(|l| l.is_one()) {
            0
        } else {
            1
        });
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_leads_count_forms() {
        let g = Grading::new(vec![0, 0, 0, 1, 1, 1], 2);
        assert_eq!(
            standard_monomial_count(&[], &g, &MultiDegree(vec![2, 0])).unwrap(),
            6
        );
        assert_eq!(
            standard_monomial_count(&[], &g, &MultiDegree(vec![1, 1])).unwrap(),
            9
        );
        assert_eq!(
            standard_monomial_count(&[], &g, &MultiDegree(vec![0, 0])).unwrap(),
            1
        );
    }

    #[test]
    fn too_large() {
        let g = Grading::new(vec![0, 1], 2);
        assert!(matches!(
            standard_monomial_count(&[], &g, &MultiDegree(vec![4, 3])),
            Err(PolyError::DegreeTooLarge { .. })
        ));
    }
}
