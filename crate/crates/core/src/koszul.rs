//! Koszul duals of quadratic presentations with one binary generator.
//!
//! The pairing on the span of the twelve `Mag(3)` monomials is diagonal:
//! `<m, m> = sgn(σ)` when `m = σ·(ab)c` and `-sgn(σ)` when `m = σ·a(bc)`.
//! The dual relation space is the annihilator of `R` under it.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linear::{rref, GeneratorSpace, LinearRelationSpace};
use crate::presentations::{in_right_orbit, mag3_basis};

/// The sign-twisted pairing between `Mag(3)` and its dual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityPairing {
    diagonal: [i8; 12],
}

fn word_sign(word: &[u8]) -> i8 {
    let mut inversions = 0;
    for i in 0..word.len() {
        for j in i + 1..word.len() {
            if word[i] > word[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

impl DualityPairing {
    pub fn standard() -> Self {
        let mut diagonal = [0i8; 12];
        for (i, m) in mag3_basis().iter().enumerate() {
            let shape_sign = if in_right_orbit(i) { 1 } else { -1 };
            diagonal[i] = shape_sign * word_sign(m.labels());
        }
        DualityPairing { diagonal }
    }

    /// The pairing with the sign on `a(bc)` flipped.
    pub fn flipped() -> Self {
        let mut p = Self::standard();
        for (i, d) in p.diagonal.iter_mut().enumerate() {
            if !in_right_orbit(i) {
                *d = -*d;
            }
        }
        p
    }

    pub fn matrix(&self) -> Vec<Vec<BigRational>> {
        (0..12)
            .map(|i| {
                (0..12)
                    .map(|j| {
                        if i == j {
                            BigRational::from_integer(self.diagonal[i].into())
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect()
    }

    pub fn evaluate(&self, v: &[BigRational], w: &[BigRational]) -> BigRational {
        v.iter()
            .zip(w)
            .zip(self.diagonal)
            .map(|((a, b), d)| a * b * BigRational::from_integer(d.into()))
            .sum()
    }

    /// The annihilator of `r`.
    pub fn annihilator(&self, r: &LinearRelationSpace) -> Result<LinearRelationSpace> {
        if r.generators() != GeneratorSpace::Regular {
            return Err(Error::UnsupportedGenerators);
        }
        if !r.is_s3_stable() {
            return Err(Error::arg("relation space is not stable under S_3"));
        }
        let twisted: Vec<Vec<BigRational>> = r
            .basis_matrix()
            .iter()
            .map(|v| {
                v.iter()
                    .zip(self.diagonal)
                    .map(|(c, d)| c * BigRational::from_integer(d.into()))
                    .collect()
            })
            .collect();
        LinearRelationSpace::from_vectors(&null_space(&twisted))
    }
}

/// A basis of `{x : M x = 0}` for a matrix with 12 columns.
fn null_space(rows: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let reduced = rref(rows.to_vec());
    let mut pivots = Vec::new();
    for row in &reduced {
        pivots.push(row.iter().position(|c| !c.is_zero()).unwrap());
    }
    let mut out = Vec::new();
    for free in (0..12).filter(|c| !pivots.contains(c)) {
        let mut v = vec![BigRational::zero(); 12];
        v[free] = BigRational::one();
        for (row, &p) in reduced.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        out.push(v);
    }
    out
}

/// The relation space of the Koszul dual.
pub fn dual(r: &LinearRelationSpace) -> Result<LinearRelationSpace> {
    DualityPairing::standard().annihilator(r)
}

/// How a dual was matched with the original space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SelfDuality {
    /// `R^⊥ = R` under `x ↦ x*`.
    Identity,
    /// `R^⊥` is the mirror image of `R`.
    Mirror,
    NotSelfDual,
}

impl SelfDuality {
    pub fn is_self_dual(&self) -> bool {
        !matches!(self, SelfDuality::NotSelfDual)
    }
}

pub fn self_dual(r: &LinearRelationSpace) -> Result<SelfDuality> {
    let d = dual(r)?;
    Ok(if d == *r {
        SelfDuality::Identity
    } else if d == r.mirror() {
        SelfDuality::Mirror
    } else {
        SelfDuality::NotSelfDual
    })
}

/// The basis of `r` as relations in the presentation grammar.
pub fn relations_text(r: &LinearRelationSpace) -> Vec<String> {
    r.basis_matrix()
        .iter()
        .map(|v| {
            let mut s = String::new();
            for (c, m) in v.iter().zip(mag3_basis()) {
                if c.is_zero() {
                    continue;
                }
                let sign = if c.is_negative() { "-" } else { "+" };
                if s.is_empty() {
                    if c.is_negative() {
                        s.push('-');
                    }
                } else {
                    s.push_str(&format!(" {sign} "));
                }
                let a = c.abs();
                if !a.is_one() {
                    s.push_str(&format!("{a}*"));
                }
                s.push_str(&m.to_string());
            }
            s.push_str(" = 0");
            s
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::{find_entry, standard_catalog};

    fn space(name: &str) -> LinearRelationSpace {
        let cat = standard_catalog();
        LinearRelationSpace::from_congruence(&find_entry(&cat, name).unwrap().congruence)
    }

    #[test]
    fn zero_dualizes_to_everything() {
        assert_eq!(dual(&LinearRelationSpace::zero()).unwrap().dim(), 12);
    }

    #[test]
    fn known_self_dualities() {
        for name in ["P6", "P2;2", "P10", "P3;3"] {
            assert!(self_dual(&space(name)).unwrap().is_self_dual(), "{name}");
        }
        assert!(!self_dual(&space("P11")).unwrap().is_self_dual());
    }

    #[test]
    fn flipped_convention_breaks_associativity() {
        let ass = space("P6");
        assert_ne!(DualityPairing::flipped().annihilator(&ass).unwrap(), ass);
    }

    #[test]
    fn pairing_is_nondegenerate() {
        let m = DualityPairing::standard().matrix();
        assert_eq!(rref(m).len(), 12);
    }

    #[test]
    fn symmetric_spaces_are_rejected() {
        let r = LinearRelationSpace::zero().restrict_generators(GeneratorSpace::Symmetric);
        assert_eq!(dual(&r), Err(Error::UnsupportedGenerators));
    }
}
