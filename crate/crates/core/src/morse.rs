//! Discrete Morse theory on explicit complexes: vector fields, V-path
//! acyclicity, the vertex matching, critical cells and the anti-star bound
//! `N_q ≥ β_{q+1,b}`.
//!
//! The empty face never takes part in a pairing, so the vertex matching over
//! `v` always leaves `{v}` critical. That cell plays the role of the extra
//! 0-cell in the CW count.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::complex::{Face, FaceSet};
use crate::error::{Error, Result};

/// A set of pairs `α < β` with `β = α ∪ {x}`, each face used at most once.
#[derive(Clone, Debug, Default)]
pub struct DiscreteVectorField {
    pairs: Vec<(Face, Face)>,
    covered: HashMap<Face, usize>,
}

impl DiscreteVectorField {
    pub fn new<I: IntoIterator<Item = (Face, Face)>>(pairs: I) -> Result<Self> {
        let mut field = Self::default();
        field.extend(pairs)?;
        Ok(field)
    }

    /// Adds pairs, rejecting any face that is already covered.
    pub fn extend<I: IntoIterator<Item = (Face, Face)>>(&mut self, pairs: I) -> Result<()> {
        for (alpha, beta) in pairs {
            if alpha.is_empty() {
                return Err(Error::MalformedField("the empty face is never paired".into()));
            }
            if beta.len() != alpha.len() + 1 || !alpha.is_subset_of(&beta) {
                return Err(Error::MalformedField(format!("{alpha} is not a facet of {beta}")));
            }
            for f in [&alpha, &beta] {
                if self.covered.contains_key(f) {
                    return Err(Error::PairingConflict(f.to_string()));
                }
            }
            let k = self.pairs.len();
            self.covered.insert(alpha.clone(), k);
            self.covered.insert(beta.clone(), k);
            self.pairs.push((alpha, beta));
        }
        Ok(())
    }

    pub fn pairs(&self) -> &[(Face, Face)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn covers(&self, f: &Face) -> bool {
        self.covered.contains_key(f)
    }
}

/// Critical cells of a vector field on a complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorseReport {
    /// Nonempty faces not covered by any pair, in complex order.
    pub critical: Vec<Face>,
    /// `counts[q]` is the number of critical `q`-cells.
    pub counts: Vec<usize>,
    pub acyclic: bool,
}

impl MorseReport {
    pub fn count(&self, q: usize) -> usize {
        self.counts.get(q).copied().unwrap_or(0)
    }
}

/// `{σ < σ ∪ {v}}` over every nonempty `σ ∌ v` whose union with `v` is a face.
pub fn vertex_matching(faces: &FaceSet, v: usize) -> Result<DiscreteVectorField> {
    if !faces.contains(&Face::vertex(v)) {
        return Err(Error::NotAVertex(v));
    }
    DiscreteVectorField::new(
        faces
            .iter()
            .filter(|f| !f.is_empty() && !f.contains(v))
            .filter_map(|f| {
                let up = f.with(v);
                faces.contains(&up).then(|| (f.clone(), up))
            }),
    )
}

/// Whether the field admits no nontrivial closed V-path.
///
/// Pairs are nodes; pair `i` points at pair `k` when the lower face of `k` is
/// a facet of the upper face of `i` other than the lower face of `i`. A closed
/// V-path is exactly a directed cycle.
pub fn check_acyclic(field: &DiscreteVectorField, faces: &FaceSet) -> Result<bool> {
    for (alpha, beta) in field.pairs() {
        if !faces.contains(alpha) || !faces.contains(beta) {
            return Err(Error::MalformedField(format!(
                "pair {alpha} < {beta} is not in the complex"
            )));
        }
    }
    let lower: HashMap<&Face, usize> = field
        .pairs()
        .iter()
        .enumerate()
        .map(|(k, (a, _))| (a, k))
        .collect();
    let successors: Vec<Vec<usize>> = field
        .pairs()
        .iter()
        .map(|(alpha, beta)| {
            beta.facets()
                .filter(|(_, g)| g != alpha)
                .filter_map(|(_, g)| lower.get(&g).copied())
                .collect()
        })
        .collect();

    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Open,
        Done,
    }
    let mut mark = vec![Mark::New; successors.len()];
    for root in 0..successors.len() {
        if mark[root] != Mark::New {
            continue;
        }
        let mut stack = vec![(root, 0usize)];
        mark[root] = Mark::Open;
        while let Some((node, next)) = stack.last_mut() {
            if let Some(&succ) = successors[*node].get(*next) {
                *next += 1;
                match mark[succ] {
                    Mark::Open => return Ok(false),
                    Mark::New => {
                        mark[succ] = Mark::Open;
                        stack.push((succ, 0));
                    }
                    Mark::Done => {}
                }
            } else {
                mark[*node] = Mark::Done;
                stack.pop();
            }
        }
    }
    Ok(true)
}

pub fn morse_report(field: &DiscreteVectorField, faces: &FaceSet) -> Result<MorseReport> {
    let acyclic = check_acyclic(field, faces)?;
    let critical: Vec<Face> = faces
        .iter()
        .filter(|f| !f.is_empty() && !field.covers(f))
        .cloned()
        .collect();
    let mut counts = Vec::new();
    for f in &critical {
        let q = f.len() - 1;
        if counts.len() <= q {
            counts.resize(q + 1, 0);
        }
        counts[q] += 1;
    }
    Ok(MorseReport {
        critical,
        counts,
        acyclic,
    })
}

/// The vertex matching over `v` with `extra` pairs added on top.
pub fn augmented_matching(
    faces: &FaceSet,
    v: usize,
    extra: impl IntoIterator<Item = (Face, Face)>,
) -> Result<MorseReport> {
    let mut field = vertex_matching(faces, v)?;
    field.extend(extra)?;
    morse_report(&field, faces)
}

/// `N_q = min_v N_{v,q}` with the first minimizing vertex as witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MorseBound {
    pub q: usize,
    pub value: usize,
    pub witness: usize,
}

/// `N_q` for every `q` from 0 up to the top dimension.
pub fn morse_bounds(faces: &FaceSet) -> Result<Vec<MorseBound>> {
    let vertices = faces.vertices();
    if vertices.is_empty() {
        return Err(Error::HypothesisViolated("the complex has no vertices".into()));
    }
    let stars = vertices
        .par_iter()
        .map(|&v| faces.anti_star(v))
        .collect::<Result<Vec<_>>>()?;
    let top = faces.max_cardinality().saturating_sub(1);
    Ok((0..=top)
        .map(|q| {
            let (value, witness) = stars
                .iter()
                .map(|s| (s.count(q), s.vertex))
                .min()
                .expect("at least one vertex");
            MorseBound { q, value, witness }
        })
        .collect())
}

/// `N_q` for a single dimension; zero above the top dimension.
pub fn morse_bound(faces: &FaceSet, q: usize) -> Result<MorseBound> {
    let all = morse_bounds(faces)?;
    Ok(all.get(q).copied().unwrap_or(MorseBound {
        q,
        value: 0,
        witness: all[0].witness,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{EnumerationCap, HochsterComplex};
    use crate::homology::ChainComplexData;
    use crate::lattice::{MultiDegree, Veronese};

    fn face(ix: &[usize]) -> Face {
        Face::new(ix.iter().copied()).unwrap()
    }

    fn complex(m: usize, d: u64, b: &[u64]) -> FaceSet {
        let v = Veronese::with(m, d).unwrap();
        HochsterComplex::new(&v, MultiDegree::new(b.to_vec()))
            .unwrap()
            .enumerate(&EnumerationCap::default())
            .unwrap()
    }

    fn hollow_triangle() -> FaceSet {
        FaceSet::from_faces(
            [&[][..], &[1], &[2], &[3], &[1, 2], &[2, 3], &[1, 3]]
                .iter()
                .map(|ix| face(ix)),
        )
        .unwrap()
    }

    #[test]
    fn vertex_matching_on_211() {
        let fs = complex(2, 2, &[2, 1, 1]);
        let field = vertex_matching(&fs, 1).unwrap();
        assert_eq!(field.pairs(), &[(face(&[5]), face(&[1, 5]))]);
        let report = morse_report(&field, &fs).unwrap();
        assert!(report.acyclic);
        assert_eq!(report.critical, vec![face(&[1]), face(&[2]), face(&[3]), face(&[2, 3])]);
        assert_eq!(report.counts, vec![3, 1]);
    }

    #[test]
    fn vertex_matching_trivial_and_cone() {
        let fs = complex(2, 3, &[3, 0, 0]);
        let field = vertex_matching(&fs, 1).unwrap();
        assert!(field.is_empty());
        assert_eq!(morse_report(&field, &fs).unwrap().critical, vec![face(&[1])]);

        let fs = complex(2, 3, &[11, 2, 2]);
        let report = morse_report(&vertex_matching(&fs, 1).unwrap(), &fs).unwrap();
        assert!(report.acyclic);
        assert_eq!(report.critical, vec![face(&[1])]);
        assert!(matches!(vertex_matching(&fs, 10), Err(Error::NotAVertex(10))));
    }

    #[test]
    fn cyclic_field_on_hollow_triangle() {
        let fs = hollow_triangle();
        let field = DiscreteVectorField::new([
            (face(&[1]), face(&[1, 2])),
            (face(&[2]), face(&[2, 3])),
            (face(&[3]), face(&[1, 3])),
        ])
        .unwrap();
        assert!(!check_acyclic(&field, &fs).unwrap());
        // dropping one pair breaks the loop
        let field = DiscreteVectorField::new([
            (face(&[1]), face(&[1, 2])),
            (face(&[2]), face(&[2, 3])),
        ])
        .unwrap();
        assert!(check_acyclic(&field, &fs).unwrap());
        assert!(check_acyclic(&DiscreteVectorField::default(), &fs).unwrap());
    }

    #[test]
    fn malformed_fields() {
        assert!(matches!(
            DiscreteVectorField::new([(face(&[1]), face(&[2, 3]))]),
            Err(Error::MalformedField(_))
        ));
        assert!(matches!(
            DiscreteVectorField::new([(Face::empty(), face(&[1]))]),
            Err(Error::MalformedField(_))
        ));
        assert!(matches!(
            DiscreteVectorField::new([(face(&[1]), face(&[1, 2])), (face(&[2]), face(&[1, 2]))]),
            Err(Error::PairingConflict(_))
        ));
        let outside = DiscreteVectorField::new([(face(&[1]), face(&[1, 4]))]).unwrap();
        assert!(check_acyclic(&outside, &hollow_triangle()).is_err());
    }

    #[test]
    fn augmented_matching_conflict() {
        let fs = complex(2, 2, &[2, 1, 1]);
        // {5} is already paired with {1,5}
        let err = augmented_matching(&fs, 1, [(face(&[5]), face(&[1, 5]))]);
        assert!(matches!(err, Err(Error::PairingConflict(_))));
        let report = augmented_matching(&fs, 1, [(face(&[2]), face(&[2, 3]))]).unwrap();
        assert!(report.acyclic);
        assert_eq!(report.critical, vec![face(&[1]), face(&[3])]);
    }

    #[test]
    fn morse_bounds_examples() {
        let fs = complex(2, 2, &[2, 1, 1]);
        let n0 = morse_bound(&fs, 0).unwrap();
        assert!(n0.value <= 2 && n0.value >= 1);
        assert_eq!(fs.anti_star(1).unwrap().count(0), 2);

        let fs = complex(2, 3, &[11, 2, 2]);
        for b in morse_bounds(&fs).unwrap().iter().skip(1) {
            assert_eq!(b.value, 0);
        }

        let fs = complex(2, 3, &[8, 4, 3]);
        assert_eq!(morse_bound(&fs, 3).unwrap().value, 2);
        assert_eq!(morse_bound(&fs, 20).unwrap().value, 0);
    }

    #[test]
    fn pairs_and_critical_cells_partition_the_faces() {
        for b in [[2u64, 1, 1], [3, 3, 2], [2, 2, 4], [4, 2, 2]] {
            let fs = complex(2, 2, &b);
            let cc = ChainComplexData::build(&fs).unwrap();
            let h = cc.reduced_betti_numbers();
            for v in fs.vertices() {
                let field = vertex_matching(&fs, v).unwrap();
                let report = morse_report(&field, &fs).unwrap();
                assert!(report.acyclic);
                assert_eq!(report.critical.len() + 2 * field.len(), fs.len() - 1);
                for q in 0..h.len() - 1 {
                    assert!(report.count(q) as u64 >= h[q + 1]);
                }
            }
        }
    }
}
