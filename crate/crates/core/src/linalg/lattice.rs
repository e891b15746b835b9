//! Subgroups of `Z^d` and their annihilators in `T^d`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::integer::{
    clear_denominators, hermite_normal_form, smith_normal_form, solve_integer_system, IntMatrix,
};
use super::{bigint_vector, canonical_torus_offset, in_torus_subspace, FieldVector, Subspace};
use crate::scalar::{Field, FieldScalar};

/// A subgroup of `Z^d`, stored by the Hermite normal form of its generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticeSubgroup {
    ambient: usize,
    generators: IntMatrix,
}

impl LatticeSubgroup {
    pub fn new(ambient: usize, generators: IntMatrix) -> Self {
        LatticeSubgroup {
            ambient,
            generators: hermite_normal_form(&generators, ambient),
        }
    }

    pub fn from_ints(ambient: usize, generators: &[&[i64]]) -> Self {
        Self::new(ambient, super::integer::int_matrix(generators))
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &IntMatrix {
        &self.generators
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn span(&self, field: &Field) -> Subspace {
        Subspace::new(
            field,
            self.ambient,
            self.generators.iter().map(|g| bigint_vector(field, g)).collect(),
        )
        .expect("integer generators are well formed")
    }

    /// `span(H) ∩ Z^d`: the integer kernel of the rational orthocomplement.
    pub fn saturate(&self) -> LatticeSubgroup {
        let field = crate::scalar::FieldSpec::rationals();
        let perp = self.span(&field).orthocomplement();
        if perp.is_zero() {
            return LatticeSubgroup::new(self.ambient, super::integer::identity(self.ambient));
        }
        let rows: Vec<Vec<BigRational>> = perp
            .basis()
            .iter()
            .map(|v| v.iter().map(|s| s.coeff(0).clone()).collect())
            .collect();
        let zeros = vec![BigRational::zero(); rows.len()];
        let sol = solve_integer_system(&rows, &zeros, self.ambient)
            .expect("homogeneous systems are feasible");
        LatticeSubgroup::new(self.ambient, sol.lattice)
    }

    /// Index of `H` in its saturation: the product of the Smith divisors.
    pub fn index_in_saturation(&self) -> BigInt {
        smith_normal_form(&self.generators, self.ambient)
            .diagonal()
            .into_iter()
            .fold(BigInt::one(), |acc, d| acc * d)
    }

    pub fn is_saturated(&self) -> bool {
        self.index_in_saturation().is_one()
    }

    /// `H^⊥ = {a ∈ T^d : a·h ∈ Z for all h ∈ H}`.
    ///
    /// With `U M V = D` the Smith form of the generators, `a = V b` solves
    /// the condition exactly when `d_i b_i ∈ Z` for the nonzero divisors and
    /// the remaining `b_i` are free. The free columns span `span(H)^⊥`; the
    /// torsion points are the combinations of `V e_i / d_i`, reduced to
    /// canonical representatives modulo the continuous part and `Z^d`.
    pub fn annihilator(&self, field: &Field) -> TorusSubgroup {
        let d = self.ambient;
        let continuous = self.span(field).orthocomplement();
        let snf = smith_normal_form(&self.generators, d);
        let divisors = snf.diagonal();
        let gens: Vec<FieldVector> = divisors
            .iter()
            .enumerate()
            .filter(|(_, di)| !di.is_one())
            .map(|(i, di)| {
                (0..d)
                    .map(|r| {
                        FieldScalar::from_rational(
                            field,
                            BigRational::new(snf.v[r][i].clone(), di.clone()),
                        )
                    })
                    .collect()
            })
            .collect();
        let orders: Vec<usize> = divisors
            .iter()
            .filter(|di| !di.is_one())
            .map(|di| usize::try_from(di).expect("torsion order fits in usize"))
            .collect();
        let mut torsion: Vec<FieldVector> = Vec::new();
        let mut counter = vec![0usize; gens.len()];
        loop {
            let mut p = vec![FieldScalar::zero(field); d];
            for (g, &c) in gens.iter().zip(&counter) {
                let c = FieldScalar::from_int(field, c as i64);
                p = super::add(&p, &super::scale(g, &c));
            }
            let rep = canonical_torus_offset(&continuous, &p);
            if !torsion.contains(&rep) {
                torsion.push(rep);
            }
            let mut k = 0;
            while k < counter.len() {
                counter[k] += 1;
                if counter[k] < orders[k] {
                    break;
                }
                counter[k] = 0;
                k += 1;
            }
            if k == counter.len() {
                break;
            }
        }
        torsion.sort();
        TorusSubgroup {
            continuous,
            torsion,
        }
    }
}

/// A closed subgroup `π(V) + F` of `T^d`: a rational subspace `V` and a
/// finite list of torsion representatives orthogonal to `V`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusSubgroup {
    pub continuous: Subspace,
    pub torsion: Vec<FieldVector>,
}

impl TorusSubgroup {
    pub fn contains(&self, a: &[FieldScalar]) -> bool {
        self.torsion
            .iter()
            .any(|t| in_torus_subspace(&self.continuous, &super::sub(a, t)))
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.len() == 1
    }
}

/// Integer row vector with the same rational direction as `v`.
pub fn primitive_integer_vector(v: &[BigRational]) -> Vec<BigInt> {
    let ints = clear_denominators(v);
    let g = ints
        .iter()
        .fold(BigInt::zero(), |acc, x| num_integer::Integer::gcd(&acc, x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}
