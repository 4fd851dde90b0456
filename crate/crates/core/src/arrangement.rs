//! Ordered vector arrangements with proportional inputs merged into primitive lines.

use crate::error::{Error, Result};
use crate::geometry::{Chamber, Space};
use crate::linalg::{kernel, primitive, rank, rref};
use crate::Q;
use num_traits::Zero;
use std::collections::BTreeSet;
use std::sync::OnceLock;

/// Lazily computed data that does not take part in comparisons.
#[derive(Clone, Debug, Default)]
struct Cache<T>(OnceLock<T>);

impl<T> PartialEq for Cache<T> {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl<T> Eq for Cache<T> {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    dim: usize,
    inputs: Vec<Vec<Q>>,
    lines: Vec<Vec<Q>>,
    /// input index -> (line index, scalar) with `input = scalar * line`.
    classes: Vec<(usize, Q)>,
    /// line index -> first input index in its class.
    representative: Vec<usize>,
    rank: usize,
    flats: Cache<Vec<Flat>>,
    normals: Cache<Vec<Vec<Q>>>,
    /// Primal and dual chambers.
    chambers: [Cache<Vec<Chamber>>; 2],
}

/// A flat of the arrangement: a subspace spanned by some lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flat {
    /// Lines contained in the flat, increasing.
    pub lines: Vec<usize>,
    /// RREF basis of the subspace.
    pub basis: Vec<Vec<Q>>,
    pub pivots: Vec<usize>,
}

impl Flat {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a vector of the flat with respect to the RREF basis.
    pub fn coords(&self, v: &[Q]) -> Vec<Q> {
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    /// Standard coordinate indices complementary to the flat.
    pub fn complement(&self, dim: usize) -> Vec<usize> {
        (0..dim).filter(|c| !self.pivots.contains(c)).collect()
    }
}

impl Arrangement {
    /// Builds a spanning arrangement; proportional inputs are merged.
    pub fn new(vectors: Vec<Vec<Q>>) -> Result<Self> {
        let a = Self::new_any(vectors)?;
        if a.rank < a.dim {
            return Err(Error::NotSpanning { rank: a.rank, dim: a.dim });
        }
        Ok(a)
    }

    /// Like [`Arrangement::new`] but allows non-spanning input. The dimension is
    /// taken from the first vector (or zero when empty).
    pub fn new_any(vectors: Vec<Vec<Q>>) -> Result<Self> {
        let dim = vectors.first().map_or(0, |v| v.len());
        Self::with_dim(dim, vectors)
    }

    pub fn with_dim(dim: usize, vectors: Vec<Vec<Q>>) -> Result<Self> {
        let mut lines: Vec<Vec<Q>> = Vec::new();
        let mut classes = Vec::new();
        let mut representative = Vec::new();
        for (i, v) in vectors.iter().enumerate() {
            if v.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: v.len() });
            }
            let (p, s) = primitive(v).ok_or(Error::ZeroVector(i))?;
            let idx = match lines.iter().position(|l| *l == p) {
                Some(j) => j,
                None => {
                    lines.push(p);
                    representative.push(i);
                    lines.len() - 1
                }
            };
            classes.push((idx, s));
        }
        let rank = rank(&lines);
        Ok(Arrangement { dim, inputs: vectors, lines, classes, representative, rank, flats: Cache::default(), normals: Cache::default(), chambers: Default::default() })
    }

    /// Uses the given pairwise non-proportional vectors verbatim as lines.
    pub fn from_lines(dim: usize, lines: Vec<Vec<Q>>) -> Self {
        let n = lines.len();
        let rank = rank(&lines);
        Arrangement {
            dim,
            inputs: lines.clone(),
            lines,
            classes: (0..n).map(|i| (i, Q::from_integer(1.into()))).collect(),
            representative: (0..n).collect(),
            rank,
            flats: Cache::default(),
            normals: Cache::default(),
            chambers: Default::default(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn spans(&self) -> bool {
        self.rank == self.dim
    }

    pub fn lines(&self) -> &[Vec<Q>] {
        &self.lines
    }

    pub fn line(&self, i: usize) -> &[Q] {
        &self.lines[i]
    }

    pub fn num_lines(&self) -> usize {
        self.lines.len()
    }

    pub fn inputs(&self) -> &[Vec<Q>] {
        &self.inputs
    }

    pub fn class_of(&self, input: usize) -> Result<(usize, Q)> {
        self.classes.get(input).cloned().ok_or(Error::IndexOutOfRange(input))
    }

    pub fn representative(&self, line: usize) -> usize {
        self.representative[line]
    }

    /// Scalar `s` with `inputs[representative(line)] = s * line`.
    pub fn representative_scalar(&self, line: usize) -> Q {
        self.classes[self.representative[line]].1.clone()
    }

    /// `±α` for every line.
    pub fn symmetric_closure(&self) -> Vec<Vec<Q>> {
        self.lines.iter().flat_map(|l| [l.clone(), l.iter().map(|x| -x).collect()]).collect()
    }

    pub fn vectors_of(&self, idx: &[usize]) -> Vec<Vec<Q>> {
        idx.iter().map(|&i| self.lines[i].clone()).collect()
    }

    pub fn is_independent(&self, idx: &[usize]) -> bool {
        rank(&self.vectors_of(idx)) == idx.len()
    }

    pub fn is_basis(&self, idx: &[usize]) -> bool {
        idx.len() == self.dim && self.is_independent(idx)
    }

    /// All bases (increasing index tuples).
    pub fn bases(&self) -> Vec<Vec<usize>> {
        subsets(self.lines.len(), self.dim).into_iter().filter(|s| self.is_independent(s)).collect()
    }

    /// The flat spanned by the given lines.
    pub fn flat(&self, idx: &[usize]) -> Flat {
        let (basis, pivots) = rref(&self.vectors_of(idx));
        let k = basis.len();
        let lines = (0..self.lines.len())
            .filter(|&j| {
                let mut rows = basis.clone();
                rows.push(self.lines[j].clone());
                rank(&rows) == k
            })
            .collect();
        Flat { lines, basis, pivots }
    }

    /// All flats, from rank 0 up to the rank of the arrangement.
    pub fn flats(&self) -> Vec<Flat> {
        self.flats.0.get_or_init(|| self.compute_flats()).clone()
    }

    fn compute_flats(&self) -> Vec<Flat> {
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut out = vec![self.flat(&[])];
        seen.insert(out[0].lines.clone());
        let mut frontier = vec![out[0].clone()];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for f in &frontier {
                for j in 0..self.lines.len() {
                    if f.lines.contains(&j) {
                        continue;
                    }
                    let mut gens: Vec<usize> = independent_subset(self, &f.lines);
                    gens.push(j);
                    let g = self.flat(&gens);
                    if seen.insert(g.lines.clone()) {
                        next.push(g.clone());
                        out.push(g);
                    }
                }
            }
            frontier = next;
        }
        out
    }

    /// Hyperplanes spanned by lines (rank r-1 flats).
    pub fn walls(&self) -> Vec<Flat> {
        self.flats().into_iter().filter(|f| f.rank() + 1 == self.dim).collect()
    }

    /// Primitive normal covector of a hyperplane (first nonzero entry positive).
    pub fn normal_of(&self, f: &Flat) -> Vec<Q> {
        let k = kernel(&f.basis, self.dim);
        assert_eq!(k.len(), 1, "not a hyperplane");
        primitive(&k[0]).unwrap().0
    }

    /// Deduplicated primitive normals of the walls in V (the primal cutting forms).
    pub fn wall_normals(&self) -> Vec<Vec<Q>> {
        if self.dim == 0 {
            return vec![];
        }
        self.normals.0.get_or_init(|| self.walls().iter().map(|w| self.normal_of(w)).collect()).clone()
    }

    pub(crate) fn chamber_cache(&self, space: Space) -> &OnceLock<Vec<Chamber>> {
        &self.chambers[space as usize].0
    }

    pub fn is_regular_dual(&self, y: &[Q]) -> bool {
        self.lines.iter().all(|l| !crate::linalg::dot(l, y).is_zero())
    }

    pub fn is_regular_primal(&self, h: &[Q]) -> bool {
        let normals = self.normals.0.get_or_init(|| self.walls().iter().map(|w| self.normal_of(w)).collect());
        normals.iter().all(|n| !crate::linalg::dot(n, h).is_zero())
    }
}

/// Greedy independent subset of the given lines (a basis of their span).
pub fn independent_subset(a: &Arrangement, idx: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    for &i in idx {
        let mut t = out.clone();
        t.push(i);
        if a.is_independent(&t) {
            out = t;
        }
    }
    out
}

/// All increasing k-subsets of 0..n.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}
