//! Hochster complexes `Δ_b`: the index sets `I ⊆ {1..n}` with
//! `b - Σ_{i∈I} a^i ≥ 0`, tested implicitly or enumerated explicitly.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{MultiDegree, Veronese};

/// A simplex: a strictly increasing list of 1-based vertex indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face(Vec<u32>);

impl Face {
    /// Builds a face from indices in any order. Rejects zero and repeats.
    pub fn new<I: IntoIterator<Item = usize>>(indices: I) -> Result<Self> {
        let mut v = indices
            .into_iter()
            .map(|i| {
                if i == 0 {
                    return Err(Error::MalformedFace("indices are 1-based".into()));
                }
                u32::try_from(i).map_err(|_| Error::MalformedFace(format!("index {i} too large")))
            })
            .collect::<Result<Vec<u32>>>()?;
        v.sort_unstable();
        if v.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::MalformedFace(format!("repeated index in {v:?}")));
        }
        Ok(Self(v))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn vertex(v: usize) -> Self {
        Self(vec![v as u32])
    }

    /// Contiguous range `lo..=hi`; empty if `lo > hi`.
    pub fn range(lo: usize, hi: usize) -> Self {
        Self((lo as u32..=hi as u32).collect())
    }

    pub fn indices(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.0.iter().map(|&i| i as usize)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Dimension `|σ| - 1`; the empty face has dimension -1.
    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn max(&self) -> Option<usize> {
        self.0.last().map(|&i| i as usize)
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&(v as u32)).is_ok()
    }

    /// `σ ∪ {v}`.
    pub fn with(&self, v: usize) -> Face {
        let v = v as u32;
        match self.0.binary_search(&v) {
            Ok(_) => self.clone(),
            Err(pos) => {
                let mut out = self.0.clone();
                out.insert(pos, v);
                Face(out)
            }
        }
    }

    /// `σ ∖ {v}`.
    pub fn without(&self, v: usize) -> Face {
        Face(self.0.iter().copied().filter(|&i| i != v as u32).collect())
    }

    pub fn is_subset_of(&self, other: &Face) -> bool {
        self.0.iter().all(|&i| other.0.binary_search(&i).is_ok())
    }

    /// Codimension-one faces, paired with the position `k` of the omitted
    /// vertex (0-based, so the boundary sign is `(-1)^k`).
    pub fn facets(&self) -> impl Iterator<Item = (usize, Face)> + '_ {
        (0..self.0.len()).map(move |k| {
            let mut v = self.0.clone();
            v.remove(k);
            (k, Face(v))
        })
    }

    /// Appends an index larger than the current maximum.
    fn extended(&self, v: usize) -> Face {
        debug_assert!(self.max().is_none_or(|m| m < v));
        let mut out = Vec::with_capacity(self.0.len() + 1);
        out.extend_from_slice(&self.0);
        out.push(v as u32);
        Face(out)
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// Per-dimension face counts; entry `k` counts faces of cardinality `k`
/// (dimension `k - 1`), so entry 0 is 1 whenever the empty face is present.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceVector(pub Vec<usize>);

impl FaceVector {
    /// Number of faces of dimension `q` (`q ≥ -1`).
    pub fn count(&self, q: isize) -> usize {
        usize::try_from(q + 1)
            .ok()
            .and_then(|k| self.0.get(k).copied())
            .unwrap_or(0)
    }
}

/// Limits on explicit enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationCap {
    pub max_points: usize,
    pub max_level: usize,
    pub max_faces: usize,
}

impl Default for EnumerationCap {
    fn default() -> Self {
        Self {
            max_points: 64,
            max_level: 12,
            max_faces: 2_000_000,
        }
    }
}

/// The complex `Δ_b` for a fixed point list and degree.
#[derive(Clone, Debug)]
pub struct HochsterComplex<'a> {
    lattice: &'a Veronese,
    degree: MultiDegree,
    level: usize,
}

impl<'a> HochsterComplex<'a> {
    pub fn new(lattice: &'a Veronese, degree: MultiDegree) -> Result<Self> {
        let level = lattice.level(&degree)?;
        Ok(Self {
            lattice,
            degree,
            level,
        })
    }

    pub fn lattice(&self) -> &'a Veronese {
        self.lattice
    }

    pub fn degree(&self) -> &MultiDegree {
        &self.degree
    }

    /// `j = |b| / d`, which bounds the face cardinality.
    pub fn level(&self) -> usize {
        self.level
    }

    /// Membership test: `b - Σ_{i∈σ} a^i ≥ 0` coordinatewise.
    pub fn is_face(&self, sigma: &Face) -> Result<bool> {
        let n = self.lattice.n();
        let mut residual = self.degree.coords().to_vec();
        for i in sigma.indices() {
            if i > n {
                return Err(Error::IndexOutOfRange { index: i, n });
            }
            let a = &self.lattice.points()[i - 1];
            for (r, &x) in residual.iter_mut().zip(a.coords()) {
                match r.checked_sub(x) {
                    Some(v) => *r = v,
                    None => return Ok(false),
                }
            }
        }
        Ok(true)
    }

    /// Enumerates every face, the empty face included, by extending each
    /// face only with indices above its maximum.
    pub fn enumerate(&self, cap: &EnumerationCap) -> Result<FaceSet> {
        let n = self.lattice.n();
        if n > cap.max_points {
            return Err(Error::CapExceeded(format!(
                "{n} points exceeds the limit of {}",
                cap.max_points
            )));
        }
        if self.level > cap.max_level {
            return Err(Error::CapExceeded(format!(
                "level j = {} exceeds the limit of {}",
                self.level, cap.max_level
            )));
        }
        let points = self.lattice.points();
        let mut layer: Vec<(Face, Vec<u64>)> = vec![(Face::empty(), self.degree.coords().to_vec())];
        let mut by_card: Vec<Vec<Face>> = Vec::new();
        let mut total = 0usize;
        while !layer.is_empty() {
            total += layer.len();
            if total > cap.max_faces {
                return Err(Error::CapExceeded(format!(
                    "more than {} faces",
                    cap.max_faces
                )));
            }
            let mut next = Vec::new();
            for (face, residual) in &layer {
                let start = face.max().unwrap_or(0);
                for i in start + 1..=n {
                    let a = points[i - 1].coords();
                    if a.iter().zip(residual).all(|(x, r)| x <= r) {
                        let rest = residual.iter().zip(a).map(|(r, x)| r - x).collect();
                        next.push((face.extended(i), rest));
                    }
                }
            }
            by_card.push(layer.into_iter().map(|(f, _)| f).collect());
            layer = next;
        }
        debug_assert!(by_card.len() <= self.level + 1);
        Ok(FaceSet::from_layers(by_card))
    }
}

/// An explicit, downward-closed family of faces grouped by cardinality.
#[derive(Clone, Debug)]
pub struct FaceSet {
    by_card: Vec<Vec<Face>>,
    lookup: HashSet<Face>,
}

/// Faces `σ` with `σ ∪ {v}` not a face, and their per-dimension counts `N_{v,q}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AntiStar {
    pub vertex: usize,
    pub faces: Vec<Face>,
    /// `counts[q]` is `N_{v,q}` for `q ≥ 0`.
    pub counts: Vec<usize>,
}

impl AntiStar {
    pub fn count(&self, q: usize) -> usize {
        self.counts.get(q).copied().unwrap_or(0)
    }
}

impl FaceSet {
    fn from_layers(mut by_card: Vec<Vec<Face>>) -> Self {
        for layer in &mut by_card {
            layer.sort_unstable();
        }
        let lookup = by_card.iter().flatten().cloned().collect();
        Self { by_card, lookup }
    }

    /// Builds a complex from an explicit face list. The list must contain the
    /// empty face and every facet of every listed face.
    pub fn from_faces<I: IntoIterator<Item = Face>>(faces: I) -> Result<Self> {
        let mut by_card: Vec<Vec<Face>> = Vec::new();
        let mut seen = HashSet::new();
        for f in faces {
            if !seen.insert(f.clone()) {
                continue;
            }
            if by_card.len() <= f.len() {
                by_card.resize(f.len() + 1, Vec::new());
            }
            by_card[f.len()].push(f);
        }
        if !seen.contains(&Face::empty()) {
            return Err(Error::NotDownwardClosed("the empty face is missing".into()));
        }
        for f in &seen {
            if let Some((_, facet)) = f.facets().find(|(_, g)| !seen.contains(g)) {
                return Err(Error::NotDownwardClosed(format!("{f} lacks its facet {facet}")));
            }
        }
        Ok(Self::from_layers(by_card))
    }

    /// Faces of the given cardinality, sorted.
    pub fn with_cardinality(&self, k: usize) -> &[Face] {
        self.by_card.get(k).map_or(&[], Vec::as_slice)
    }

    /// Faces of dimension `q ≥ -1`.
    pub fn of_dim(&self, q: isize) -> &[Face] {
        usize::try_from(q + 1).map_or(&[], |k| self.with_cardinality(k))
    }

    pub fn iter(&self) -> impl Iterator<Item = &Face> {
        self.by_card.iter().flatten()
    }

    pub fn len(&self) -> usize {
        self.lookup.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lookup.is_empty()
    }

    pub fn contains(&self, f: &Face) -> bool {
        self.lookup.contains(f)
    }

    /// Largest face cardinality present (0 for `{∅}`).
    pub fn max_cardinality(&self) -> usize {
        self.by_card.len().saturating_sub(1)
    }

    pub fn vertices(&self) -> Vec<usize> {
        self.with_cardinality(1)
            .iter()
            .filter_map(Face::max)
            .collect()
    }

    pub fn face_vector(&self) -> FaceVector {
        FaceVector(self.by_card.iter().map(Vec::len).collect())
    }

    fn require_vertex(&self, v: usize) -> Result<()> {
        if self.contains(&Face::vertex(v)) {
            Ok(())
        } else {
            Err(Error::NotAVertex(v))
        }
    }

    /// Whether `σ ∪ {v}` is a face for every face `σ`. Only faces without
    /// `v` need checking.
    pub fn is_cone_over(&self, v: usize) -> Result<bool> {
        self.require_vertex(v)?;
        Ok(self
            .iter()
            .filter(|f| !f.contains(v))
            .all(|f| self.contains(&f.with(v))))
    }

    /// The complement of the closed star of `v`.
    pub fn anti_star(&self, v: usize) -> Result<AntiStar> {
        self.require_vertex(v)?;
        let faces: Vec<Face> = self
            .iter()
            .filter(|f| !f.contains(v) && !self.contains(&f.with(v)))
            .cloned()
            .collect();
        let mut counts = Vec::new();
        for f in &faces {
            // the empty face never qualifies: {v} is a face
            let q = f.len() - 1;
            if counts.len() <= q {
                counts.resize(q + 1, 0);
            }
            counts[q] += 1;
        }
        Ok(AntiStar {
            vertex: v,
            faces,
            counts,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

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

    /// Every subset of {1..n} tested with the membership predicate.
    fn brute_force_faces(lattice: &Veronese, b: &MultiDegree) -> Vec<Face> {
        let n = lattice.n();
        let cx = HochsterComplex::new(lattice, b.clone()).unwrap();
        let mut out: Vec<Face> = (0u64..1 << n)
            .map(|mask| face(&(1..=n).filter(|i| mask >> (i - 1) & 1 == 1).collect::<Vec<_>>()))
            .filter(|f| cx.is_face(f).unwrap())
            .collect();
        out.sort();
        out
    }

    #[test]
    fn face_construction() {
        assert_eq!(face(&[5, 1]).to_string(), "{1,5}");
        assert!(Face::new([1, 1]).is_err());
        assert!(Face::new([0]).is_err());
        assert_eq!(Face::empty().dim(), -1);
        assert_eq!(face(&[2, 3]).with(1), face(&[1, 2, 3]));
        assert_eq!(face(&[2, 3]).without(3), face(&[2]));
        let facets: Vec<_> = face(&[1, 2, 3]).facets().collect();
        assert_eq!(facets[0], (0, face(&[2, 3])));
        assert_eq!(facets[2], (2, face(&[1, 2])));
    }

    #[test]
    fn membership_examples() {
        let v = Veronese::with(2, 2).unwrap();
        let cx = HochsterComplex::new(&v, MultiDegree::new(vec![2, 1, 1])).unwrap();
        assert!(cx.is_face(&face(&[1, 5])).unwrap());
        assert!(!cx.is_face(&face(&[1, 2])).unwrap());
        assert!(cx.is_face(&Face::empty()).unwrap());
        assert!(matches!(
            cx.is_face(&face(&[7])),
            Err(Error::IndexOutOfRange { index: 7, n: 6 })
        ));
    }

    #[test]
    fn rejects_degrees_outside_the_semigroup() {
        let v = Veronese::with(2, 3).unwrap();
        assert!(HochsterComplex::new(&v, MultiDegree::new(vec![1, 1, 0])).is_err());
    }

    #[test]
    fn enumerate_211() {
        let fs = complex(2, 2, &[2, 1, 1]);
        assert_eq!(fs.with_cardinality(0), &[Face::empty()]);
        assert_eq!(fs.vertices(), vec![1, 2, 3, 5]);
        assert_eq!(fs.with_cardinality(2), &[face(&[1, 5]), face(&[2, 3])]);
        assert_eq!(fs.max_cardinality(), 2);
        assert_eq!(fs.face_vector(), FaceVector(vec![1, 4, 2]));
        assert_eq!(fs.face_vector().count(-1), 1);
        assert_eq!(fs.face_vector().count(5), 0);
    }

    #[test]
    fn enumerate_220_and_apex() {
        let fs = complex(2, 2, &[2, 2, 0]);
        assert_eq!(fs.vertices(), vec![1, 2, 4]);
        assert_eq!(fs.with_cardinality(2), &[face(&[1, 4])]);
        assert_eq!(fs.len(), 5);

        for (m, d) in [(2, 2), (2, 3), (3, 2)] {
            let mut b = vec![0; m + 1];
            b[0] = d;
            let fs = complex(m, d, &b);
            assert_eq!(fs.iter().cloned().collect::<Vec<_>>(), vec![Face::empty(), face(&[1])]);
            assert!(fs.is_cone_over(1).unwrap());
            let star = fs.anti_star(1).unwrap();
            assert!(star.faces.is_empty());
            assert_eq!(star.count(0), 0);
        }
    }

    #[test]
    fn enumeration_matches_exhaustive_subsets() {
        for (d, b) in [(2, vec![2, 1, 1]), (2, vec![2, 2, 0]), (2, vec![3, 3, 2]), (3, vec![8, 4, 3]), (3, vec![4, 4, 4])] {
            let v = Veronese::with(2, d).unwrap();
            let b = MultiDegree::new(b);
            let fs = HochsterComplex::new(&v, b.clone())
                .unwrap()
                .enumerate(&EnumerationCap::default())
                .unwrap();
            let mut listed: Vec<Face> = fs.iter().cloned().collect();
            listed.sort();
            assert_eq!(listed, brute_force_faces(&v, &b), "b={b}");
        }
    }

    #[test]
    fn cone_detection() {
        // j = 5 and b_0 = 11 ≥ A_5 = 9
        let fs = complex(2, 3, &[11, 2, 2]);
        assert!(fs.is_cone_over(1).unwrap());
        let fs = complex(2, 2, &[2, 1, 1]);
        assert!(!fs.is_cone_over(1).unwrap());
        assert_eq!(fs.is_cone_over(4), Err(Error::NotAVertex(4)));
    }

    #[test]
    fn anti_star_examples() {
        let fs = complex(2, 2, &[2, 1, 1]);
        let star = fs.anti_star(1).unwrap();
        assert_eq!(star.faces, vec![face(&[2]), face(&[3]), face(&[2, 3])]);
        assert_eq!(star.counts, vec![2, 1]);

        let fs = complex(2, 3, &[8, 4, 3]);
        let star = fs.anti_star(1).unwrap();
        assert_eq!(star.faces.len(), 2);
        assert!(star.faces.iter().all(|f| f.dim() == 3));
    }

    #[test]
    fn anti_star_is_a_set_difference() {
        let fs = complex(2, 3, &[6, 5, 4]);
        for v in fs.vertices() {
            let star = fs.anti_star(v).unwrap();
            let closed_star: HashSet<Face> = fs
                .iter()
                .filter(|f| fs.contains(&f.with(v)))
                .cloned()
                .collect();
            let diff: Vec<Face> = fs.iter().filter(|f| !closed_star.contains(*f)).cloned().collect();
            assert_eq!(star.faces, diff);
        }
    }

    #[test]
    fn from_faces_checks_closure() {
        let ok = FaceSet::from_faces([Face::empty(), face(&[1]), face(&[2]), face(&[1, 2])]);
        assert!(ok.is_ok());
        let missing = FaceSet::from_faces([Face::empty(), face(&[1]), face(&[1, 2])]);
        assert!(matches!(missing, Err(Error::NotDownwardClosed(_))));
        let no_empty = FaceSet::from_faces([face(&[1])]);
        assert!(no_empty.is_err());
    }

    #[test]
    fn cap_is_enforced() {
        let v = Veronese::with(2, 2).unwrap();
        let cx = HochsterComplex::new(&v, MultiDegree::new(vec![10, 10, 6])).unwrap();
        assert!(matches!(cx.enumerate(&EnumerationCap::default()), Err(Error::CapExceeded(_))));
        let tight = EnumerationCap {
            max_faces: 3,
            ..Default::default()
        };
        let cx = HochsterComplex::new(&v, MultiDegree::new(vec![2, 1, 1])).unwrap();
        assert!(matches!(cx.enumerate(&tight), Err(Error::CapExceeded(_))));
        let v = Veronese::with(2, 10).unwrap();
        let cx = HochsterComplex::new(&v, MultiDegree::new(vec![10, 0, 0])).unwrap();
        assert!(matches!(cx.enumerate(&EnumerationCap::default()), Err(Error::CapExceeded(_))));
    }

    fn degree_strategy() -> impl Strategy<Value = (u64, Vec<u64>)> {
        (2u64..=3, 1u64..=5).prop_flat_map(|(d, j)| {
            let total = d * j;
            (Just(d), (0..=total, 0..=total)).prop_filter_map("fits", move |(d, (x, y))| {
                (x + y <= total).then(|| (d, vec![x, y, total - x - y]))
            })
        })
    }

    proptest! {
        #[test]
        fn downward_closed_and_bounded((d, b) in degree_strategy()) {
            let v = Veronese::with(2, d).unwrap();
            let b = MultiDegree::new(b);
            let j = (b.total() / d) as usize;
            let fs = HochsterComplex::new(&v, b).unwrap().enumerate(&EnumerationCap::default()).unwrap();
            prop_assert!(fs.max_cardinality() <= j);
            for f in fs.iter() {
                for (_, g) in f.facets() {
                    prop_assert!(fs.contains(&g));
                }
            }
        }
    }
}
