//! Seeded random generators shared by the integration tests.
#![allow(dead_code)]

use num_rational::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use spectral_walls::linalg::groups::Ring;
use spectral_walls::linalg::{is_integer_vector, is_zero_vector, FieldVector, Subspace};
use spectral_walls::measure::{Raw, Space, SymbolicMeasure};
use spectral_walls::scalar::{Field, FieldScalar, FieldSpec};

pub fn q2() -> Field {
    FieldSpec::new(&[2]).unwrap()
}

pub fn rational(f: &Field, p: i64, q: i64) -> FieldScalar {
    FieldScalar::from_ratio(f, p, q)
}

/// `p/q + (r/s)√2` with small entries; the radical part only when the field
/// has one and `irrational` allows it.
pub fn scalar(rng: &mut ChaCha8Rng, f: &Field, irrational: bool) -> FieldScalar {
    let a = rational(f, rng.gen_range(-3..=3), rng.gen_range(1..=4));
    if irrational && !f.roots().is_empty() && rng.gen_bool(0.3) {
        let c = BigRational::new(rng.gen_range(-2i64..=2).into(), rng.gen_range(1i64..=3).into());
        let root = FieldScalar::sqrt(f, f.roots()[0]).unwrap().scale(&c);
        a.checked_add(&root).unwrap()
    } else {
        a
    }
}

pub fn vector(rng: &mut ChaCha8Rng, f: &Field, d: usize, irrational: bool) -> FieldVector {
    (0..d).map(|_| scalar(rng, f, irrational)).collect()
}

pub fn int_entries(rng: &mut ChaCha8Rng, f: &Field, d: usize) -> FieldVector {
    (0..d).map(|_| FieldScalar::from_int(f, rng.gen_range(-2..=2))).collect()
}

/// A nonzero subspace of dimension `e` (or less when the draw is degenerate).
pub fn subspace(rng: &mut ChaCha8Rng, f: &Field, d: usize, e: usize, irrational: bool) -> Subspace {
    loop {
        let vs: Vec<FieldVector> = (0..e)
            .map(|_| {
                if rng.gen_bool(0.6) {
                    int_entries(rng, f, d)
                } else {
                    vector(rng, f, d, irrational)
                }
            })
            .collect();
        let s = Subspace::new(f, d, vs).unwrap();
        if !s.is_zero() {
            return s;
        }
    }
}

pub fn direction(rng: &mut ChaCha8Rng, f: &Field, d: usize) -> Subspace {
    let e = rng.gen_range(1..=d);
    subspace(rng, f, d, e, true)
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub struct MeasureShape {
    pub atoms: bool,
    pub boxes: bool,
    pub groups: bool,
    pub irrational: bool,
}

pub const ALL: MeasureShape = MeasureShape {
    atoms: true,
    boxes: true,
    groups: true,
    irrational: true,
};

pub const NO_GROUPS: MeasureShape = MeasureShape {
    groups: false,
    ..ALL
};

/// A reduced random measure: no atom at the identity.
pub fn measure(rng: &mut ChaCha8Rng, f: &Field, space: Space, shape: MeasureShape) -> SymbolicMeasure {
    let d = space.dim();
    let modular = space.is_torus();
    let trivial = |v: &FieldVector| {
        if modular {
            is_integer_vector(v)
        } else {
            is_zero_vector(v)
        }
    };
    let mut kinds = Vec::new();
    if shape.atoms {
        kinds.push(0);
    }
    if shape.boxes {
        kinds.push(1);
    }
    if shape.groups {
        kinds.push(2);
    }
    let count = rng.gen_range(1..=4);
    let group_ring = if rng.gen_bool(0.5) { Ring::Z } else { Ring::Q };
    let mut raws = Vec::new();
    while raws.len() < count {
        let anchor = if rng.gen_bool(0.4) {
            spectral_walls::linalg::zero_vector(f, d)
        } else {
            vector(rng, f, d, shape.irrational)
        };
        match kinds[rng.gen_range(0..kinds.len())] {
            0 => {
                if !trivial(&anchor) {
                    raws.push(Raw::atom(anchor));
                }
            }
            1 => {
                let k = rng.gen_range(1..=d);
                let segs = (0..k)
                    .map(|_| {
                        if rng.gen_bool(0.6) {
                            int_entries(rng, f, d)
                        } else {
                            vector(rng, f, d, shape.irrational)
                        }
                    })
                    .collect();
                raws.push(Raw::boxed(segs, anchor));
            }
            _ => {
                let k = rng.gen_range(1..=2);
                let gens = (0..k).map(|_| vector(rng, f, d, shape.irrational)).collect();
                raws.push(Raw::group(gens, group_ring, anchor));
            }
        }
    }
    let m = SymbolicMeasure::new(space, f, false, raws).unwrap();
    // Groups may collapse to an atom at the identity.
    match m.identity_atom() {
        Some(i) => m.restrict_components(|j, _| j != i),
        None => m,
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}
