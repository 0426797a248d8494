//! Generators for the small catalog of named complexes.

use crate::complex::{Complex, ComplexError};
use crate::simplex::Simplex;

/// The solid `d`-simplex on labels `1..=d+1`.
pub fn simplex(d: usize) -> Complex {
    let facet: Vec<u32> = (1..=d as u32 + 1).collect();
    Complex::from_facets([facet]).expect("single facet is a valid complex")
}

/// `∂Δ^{d+1}`: the minimal triangulation of the `d`-sphere, on labels
/// `1..=d+2`.
pub fn sphere(d: usize) -> Complex {
    let all: Simplex = Simplex::try_from_labels(1..=d as u32 + 2).unwrap();
    Complex::from_simplices(all.subfaces(d as isize)).expect("boundary facets are pure")
}

/// The join `C1 ∗ C2`: facets are unions of one facet from each operand.
/// The operands must have disjoint vertex labels.
pub fn join(c1: &Complex, c2: &Complex) -> Result<Complex, ComplexError> {
    let v1 = c1.vertices();
    if c2.vertices().iter().any(|v| v1.contains(v)) {
        return Err(ComplexError::LabelClash);
    }
    Complex::from_simplices(
        c1.facets()
            .iter()
            .flat_map(|f1| c2.facets().iter().map(move |f2| f1.union(f2))),
    )
}

/// The cone over `c` from one fresh vertex.
pub fn cone(c: &Complex) -> Complex {
    let apex = Complex::from_simplices([Simplex::vertex(c.fresh_vertex())]).unwrap();
    join(c, &apex).expect("apex label is fresh")
}

/// The suspension of `c`: join with two fresh vertices.
pub fn suspension(c: &Complex) -> Complex {
    let n = c.max_label();
    let poles =
        Complex::from_simplices([Simplex::vertex(n + 1), Simplex::vertex(n + 2)]).unwrap();
    join(c, &poles).expect("pole labels are fresh")
}

/// The 6-vertex triangulation of the real projective plane. Non-orientable
/// with χ = 1; the standard control case for the invariant suite.
pub fn projective_plane() -> Complex {
    Complex::from_facets([
        vec![1u32, 2, 3],
        vec![1, 2, 4],
        vec![1, 3, 5],
        vec![1, 4, 6],
        vec![1, 5, 6],
        vec![2, 3, 6],
        vec![2, 4, 5],
        vec![2, 5, 6],
        vec![3, 4, 5],
        vec![3, 4, 6],
    ])
    .unwrap()
}

/// The boundary of the octahedron: the suspension of the 4-cycle, a
/// 6-vertex 2-sphere with 8 facets.
pub fn octahedron() -> Complex {
    suspension(&suspension(&sphere(0)))
}
