//! Simplicial complexes, chain complexes, chains and cochains.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::{solve_linear, SparseMatrix};
use crate::{Error, Rational, Result};

/// An abstract simplicial complex with lexicographic orientation.
///
/// `simplices[k]` lists the k-simplices as strictly increasing vertex tuples.
/// Top-dimensional simplices may carry an orientation sign that flips their
/// whole boundary column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_labels: Vec<String>,
    simplices: Vec<Vec<Vec<usize>>>,
    signs: Vec<i8>,
}

fn permutation_parity(t: &[usize]) -> i8 {
    let mut inv = 0;
    for i in 0..t.len() {
        for j in i + 1..t.len() {
            if t[i] > t[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

fn faces(s: &[usize]) -> impl Iterator<Item = (usize, Vec<usize>)> + '_ {
    (0..s.len()).map(move |m| {
        let mut f = s.to_vec();
        f.remove(m);
        (m, f)
    })
}

impl SimplicialComplex {
    /// Validates and builds a complex from explicit per-dimension lists.
    pub fn new(n_vertices: usize, simplices: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        let labels = (0..n_vertices).map(|v| v.to_string()).collect();
        Self::with_labels(labels, simplices)
    }

    pub fn with_labels(
        vertex_labels: Vec<String>,
        simplices: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        let n = vertex_labels.len();
        let mut index: Vec<BTreeMap<&[usize], usize>> = Vec::new();
        for (k, list) in simplices.iter().enumerate() {
            let mut seen = BTreeMap::new();
            for (j, s) in list.iter().enumerate() {
                if s.len() != k + 1 {
                    return Err(Error::InvalidSimplex {
                        simplex: s.clone(),
                        reason: "wrong vertex count for its dimension",
                    });
                }
                if s.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::InvalidSimplex {
                        simplex: s.clone(),
                        reason: "vertices not strictly increasing",
                    });
                }
                if s.iter().any(|&v| v >= n) {
                    return Err(Error::InvalidSimplex {
                        simplex: s.clone(),
                        reason: "vertex out of range",
                    });
                }
                if seen.insert(s.as_slice(), j).is_some() {
                    return Err(Error::DuplicateSimplex(s.clone()));
                }
                if k > 0 {
                    for (_, f) in faces(s) {
                        if !index[k - 1].contains_key(f.as_slice()) {
                            return Err(Error::MissingFace {
                                simplex: s.clone(),
                                face: f,
                            });
                        }
                    }
                }
            }
            index.push(seen);
        }
        let top = simplices.last().map_or(0, Vec::len);
        Ok(SimplicialComplex {
            vertex_labels,
            simplices,
            signs: vec![1; top],
        })
    }

    /// Builds the closure of the given top simplices.
    ///
    /// Each tuple is read as an oriented simplex: its vertices are sorted and
    /// the orientation sign records the parity of the sorting permutation.
    /// Top simplices keep their given order; lower faces are sorted. Every
    /// labelled vertex is a 0-simplex, so vertex `v` has index `v`.
    pub fn from_top_simplices(vertex_labels: Vec<String>, tops: &[Vec<usize>]) -> Result<Self> {
        let Some(d) = tops.first().map(|t| t.len().saturating_sub(1)) else {
            return Self::with_labels(vertex_labels, Vec::new());
        };
        let mut signs = Vec::with_capacity(tops.len());
        let mut top_sorted = Vec::with_capacity(tops.len());
        for t in tops {
            if t.len() != d + 1 {
                return Err(Error::InvalidSimplex {
                    simplex: t.clone(),
                    reason: "mixed dimensions among top simplices",
                });
            }
            let mut s = t.clone();
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidSimplex {
                    simplex: t.clone(),
                    reason: "repeated vertex",
                });
            }
            signs.push(permutation_parity(t));
            top_sorted.push(s);
        }
        let mut simplices = vec![Vec::new(); d + 1];
        let mut level: Vec<Vec<usize>> = top_sorted.clone();
        for k in (1..d).rev() {
            let mut next: Vec<Vec<usize>> = level
                .iter()
                .flat_map(|s| faces(s).map(|(_, f)| f))
                .collect();
            next.sort();
            next.dedup();
            simplices[k] = next.clone();
            level = next;
        }
        if d > 0 {
            simplices[0] = (0..vertex_labels.len()).map(|v| vec![v]).collect();
        }
        simplices[d] = top_sorted;
        let mut cx = Self::with_labels(vertex_labels, simplices)?;
        cx.signs = signs;
        Ok(cx)
    }

    pub fn n_vertices(&self) -> usize {
        self.vertex_labels.len()
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertex_labels
    }

    /// Top dimension. An empty complex reports 0.
    pub fn dim(&self) -> usize {
        self.simplices.len().saturating_sub(1)
    }

    pub fn simplices(&self, k: usize) -> &[Vec<usize>] {
        self.simplices.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn all_simplices(&self) -> &[Vec<Vec<usize>>] {
        &self.simplices
    }

    /// Orientation signs of the top simplices.
    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// Sets the orientation sign of top simplex `j`.
    pub fn set_sign(&mut self, j: usize, sign: i8) {
        assert!(sign == 1 || sign == -1, "orientation sign must be ±1");
        self.signs[j] = sign;
    }

    pub fn index_of(&self, k: usize, s: &[usize]) -> Option<usize> {
        self.simplices(k).iter().position(|t| t == s)
    }

    pub fn label(&self, k: usize, j: usize) -> String {
        let names: Vec<&str> = self.simplices[k][j]
            .iter()
            .map(|&v| self.vertex_labels[v].as_str())
            .collect();
        names.join(",")
    }

    /// The chain complex of this simplicial complex.
    pub fn chain_complex(&self) -> Result<ChainComplexData> {
        let d = self.dim();
        let sizes = self.simplices.iter().map(Vec::len).collect();
        let boundaries = (1..=d)
            .map(|k| boundary_matrix(self, k))
            .collect::<Result<Vec<_>>>()?;
        let labels = (0..=d)
            .map(|k| {
                (0..self.simplices[k].len())
                    .map(|j| self.label(k, j))
                    .collect()
            })
            .collect();
        ChainComplexData::new(sizes, boundaries, labels)
    }
}

/// ∂_k of a simplicial complex.
pub fn boundary_matrix(complex: &SimplicialComplex, k: usize) -> Result<SparseMatrix> {
    let d = complex.dim();
    if k == 0 || k > d || complex.simplices.is_empty() {
        return Err(Error::DimensionOutOfRange { dim: k, max: d });
    }
    let rows: BTreeMap<&[usize], usize> = complex.simplices[k - 1]
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_slice(), i))
        .collect();
    let cols = &complex.simplices[k];
    let mut m = SparseMatrix::zeros(rows.len(), cols.len());
    for (j, s) in cols.iter().enumerate() {
        let flip = if k == d { complex.signs[j] } else { 1 };
        for (i, f) in faces(s) {
            let Some(&r) = rows.get(f.as_slice()) else {
                return Err(Error::MissingFace {
                    simplex: s.clone(),
                    face: f,
                });
            };
            let sign = if i % 2 == 0 { flip } else { -flip };
            m.set(r, j, Rational::from_integer(sign as i64));
        }
    }
    Ok(m)
}

/// A finite chain complex of boundary matrices `∂_1, ..., ∂_d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplexData {
    sizes: Vec<usize>,
    boundaries: Vec<SparseMatrix>,
    labels: Vec<Vec<String>>,
}

impl ChainComplexData {
    /// `boundaries[k - 1]` is ∂_k. Checks shapes and ∂∂ = 0.
    pub fn new(
        sizes: Vec<usize>,
        boundaries: Vec<SparseMatrix>,
        labels: Vec<Vec<String>>,
    ) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::ShapeMismatch {
                what: "chain complex sizes",
                expected: 1,
                found: 0,
            });
        }
        if boundaries.len() + 1 != sizes.len() {
            return Err(Error::ShapeMismatch {
                what: "boundary matrix count",
                expected: sizes.len() - 1,
                found: boundaries.len(),
            });
        }
        if labels.len() != sizes.len() {
            return Err(Error::ShapeMismatch {
                what: "label dimensions",
                expected: sizes.len(),
                found: labels.len(),
            });
        }
        for (k, l) in labels.iter().enumerate() {
            if l.len() != sizes[k] {
                return Err(Error::ShapeMismatch {
                    what: "labels",
                    expected: sizes[k],
                    found: l.len(),
                });
            }
        }
        for (i, b) in boundaries.iter().enumerate() {
            let k = i + 1;
            if b.nrows() != sizes[k - 1] {
                return Err(Error::ShapeMismatch {
                    what: "boundary rows",
                    expected: sizes[k - 1],
                    found: b.nrows(),
                });
            }
            if b.ncols() != sizes[k] {
                return Err(Error::ShapeMismatch {
                    what: "boundary columns",
                    expected: sizes[k],
                    found: b.ncols(),
                });
            }
        }
        for k in 1..boundaries.len() {
            if !boundaries[k - 1].mul(&boundaries[k])?.is_zero() {
                return Err(Error::BoundaryNotZero { k: k + 1 });
            }
        }
        Ok(ChainComplexData {
            sizes,
            boundaries,
            labels,
        })
    }

    /// Like [`new`](Self::new) with labels `"k:j"`.
    pub fn unlabeled(sizes: Vec<usize>, boundaries: Vec<SparseMatrix>) -> Result<Self> {
        let labels = sizes
            .iter()
            .enumerate()
            .map(|(k, &n)| (0..n).map(|j| format!("{k}:{j}")).collect())
            .collect();
        Self::new(sizes, boundaries, labels)
    }

    pub fn top_dim(&self) -> usize {
        self.sizes.len() - 1
    }

    pub fn size(&self, k: usize) -> usize {
        self.sizes.get(k).copied().unwrap_or(0)
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// ∂_k for `1 ≤ k ≤ d`.
    pub fn boundary(&self, k: usize) -> Result<&SparseMatrix> {
        if k == 0 || k > self.top_dim() {
            return Err(Error::DimensionOutOfRange {
                dim: k,
                max: self.top_dim(),
            });
        }
        Ok(&self.boundaries[k - 1])
    }

    /// ∂_d.
    pub fn top_boundary(&self) -> &SparseMatrix {
        &self.boundaries[self.top_dim() - 1]
    }

    pub fn labels(&self, k: usize) -> &[String] {
        &self.labels[k]
    }
}

/// Read access shared by chains and cochains.
pub trait Coefficients {
    fn dim(&self) -> usize;
    fn coeffs(&self) -> &[Rational];

    fn support(&self) -> Vec<usize> {
        self.coeffs()
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    fn is_zero(&self) -> bool {
        self.coeffs().iter().all(Rational::is_zero)
    }
}

macro_rules! coefficient_vector {
    ($name:ident, $doc:literal) => {
        #[doc = $doc]
        #[derive(Clone, Debug, PartialEq, Eq, Hash)]
        pub struct $name {
            pub dim: usize,
            pub coeffs: Vec<Rational>,
        }

        impl $name {
            pub fn new(dim: usize, coeffs: Vec<Rational>) -> Self {
                $name { dim, coeffs }
            }

            pub fn zero(dim: usize, len: usize) -> Self {
                $name {
                    dim,
                    coeffs: vec![Rational::ZERO; len],
                }
            }

            /// The elementary vector on basis element `i`.
            pub fn unit(dim: usize, len: usize, i: usize) -> Self {
                let mut c = Self::zero(dim, len);
                c.coeffs[i] = Rational::ONE;
                c
            }

            pub fn len(&self) -> usize {
                self.coeffs.len()
            }

            pub fn is_empty(&self) -> bool {
                self.coeffs.is_empty()
            }

            pub fn scale(&self, k: &Rational) -> Self {
                $name {
                    dim: self.dim,
                    coeffs: self.coeffs.iter().map(|v| v * k).collect(),
                }
            }

            pub fn add(&self, other: &Self) -> Self {
                assert_eq!(self.len(), other.len(), "length mismatch");
                $name {
                    dim: self.dim,
                    coeffs: self
                        .coeffs
                        .iter()
                        .zip(&other.coeffs)
                        .map(|(a, b)| a + b)
                        .collect(),
                }
            }

            pub fn sub(&self, other: &Self) -> Self {
                assert_eq!(self.len(), other.len(), "length mismatch");
                $name {
                    dim: self.dim,
                    coeffs: self
                        .coeffs
                        .iter()
                        .zip(&other.coeffs)
                        .map(|(a, b)| a - b)
                        .collect(),
                }
            }
        }

        impl Coefficients for $name {
            fn dim(&self) -> usize {
                self.dim
            }
            fn coeffs(&self) -> &[Rational] {
                &self.coeffs
            }
        }
    };
}

coefficient_vector!(
    Chain,
    "A formal rational combination of k-dimensional basis elements."
);
coefficient_vector!(
    Cochain,
    "A rational linear functional on k-chains, stored by its values."
);

fn check_len(cx: &ChainComplexData, dim: usize, len: usize) -> Result<()> {
    if dim > cx.top_dim() {
        return Err(Error::DimensionOutOfRange {
            dim,
            max: cx.top_dim(),
        });
    }
    if len != cx.size(dim) {
        return Err(Error::ShapeMismatch {
            what: "chain length",
            expected: cx.size(dim),
            found: len,
        });
    }
    Ok(())
}

/// ∂c.
pub fn apply_boundary(cx: &ChainComplexData, c: &Chain) -> Result<Chain> {
    check_len(cx, c.dim, c.len())?;
    if c.dim == 0 {
        return Err(Error::DimensionOutOfRange {
            dim: 0,
            max: cx.top_dim(),
        });
    }
    Ok(Chain::new(
        c.dim - 1,
        cx.boundary(c.dim)?.mul_vec(&c.coeffs)?,
    ))
}

/// δp = ∂ᵀp.
pub fn apply_coboundary(cx: &ChainComplexData, p: &Cochain) -> Result<Cochain> {
    check_len(cx, p.dim, p.len())?;
    if p.dim >= cx.top_dim() {
        return Err(Error::DimensionOutOfRange {
            dim: p.dim,
            max: cx.top_dim().saturating_sub(1),
        });
    }
    Ok(Cochain::new(
        p.dim + 1,
        cx.boundary(p.dim + 1)?.mul_vec_transpose(&p.coeffs)?,
    ))
}

/// Exact dot product of two coefficient vectors of equal dimension.
pub fn inner_product(a: &impl Coefficients, b: &impl Coefficients) -> Result<Rational> {
    if a.dim() != b.dim() {
        return Err(Error::ShapeMismatch {
            what: "inner product dimension",
            expected: a.dim(),
            found: b.dim(),
        });
    }
    if a.coeffs().len() != b.coeffs().len() {
        return Err(Error::ShapeMismatch {
            what: "inner product length",
            expected: a.coeffs().len(),
            found: b.coeffs().len(),
        });
    }
    Ok(a.coeffs()
        .iter()
        .zip(b.coeffs())
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum())
}

/// Whether the cycle `z` bounds a chain supported on `restrict_to`
/// (all simplices one dimension up when `None`).
pub fn is_null_homologous(
    cx: &ChainComplexData,
    z: &Chain,
    restrict_to: Option<&[usize]>,
) -> Result<bool> {
    check_len(cx, z.dim, z.len())?;
    if z.dim >= cx.top_dim() {
        return Err(Error::DimensionOutOfRange {
            dim: z.dim,
            max: cx.top_dim().saturating_sub(1),
        });
    }
    if z.dim > 0 && !apply_boundary(cx, z)?.is_zero() {
        return Err(Error::NotACycle);
    }
    if z.is_zero() {
        return Ok(true);
    }
    let b = cx.boundary(z.dim + 1)?;
    let sub = match restrict_to {
        Some(cols) => b.select_columns(cols),
        None => b.clone(),
    };
    Ok(solve_linear(&sub, &z.coeffs)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int;

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|v| v.to_string()).collect()
    }

    fn triangle() -> SimplicialComplex {
        SimplicialComplex::new(
            3,
            vec![
                vec![vec![0], vec![1], vec![2]],
                vec![vec![0, 1], vec![0, 2], vec![1, 2]],
                vec![vec![0, 1, 2]],
            ],
        )
        .unwrap()
    }

    #[test]
    fn triangle_boundary_column() {
        let b = boundary_matrix(&triangle(), 2).unwrap();
        assert_eq!(b.get(2, 0), int(1));
        assert_eq!(b.get(1, 0), int(-1));
        assert_eq!(b.get(0, 0), int(1));
        let b1 = boundary_matrix(&triangle(), 1).unwrap();
        assert_eq!(b1.get(0, 0), int(-1));
        assert_eq!(b1.get(1, 0), int(1));
        assert!(b1.mul(&b).unwrap().is_zero());
    }

    #[test]
    fn missing_face_is_named() {
        let err = SimplicialComplex::new(
            3,
            vec![
                vec![vec![0], vec![1], vec![2]],
                vec![vec![0, 1], vec![1, 2]],
                vec![vec![0, 1, 2]],
            ],
        )
        .unwrap_err();
        assert_eq!(
            err,
            Error::MissingFace {
                simplex: vec![0, 1, 2],
                face: vec![0, 2]
            }
        );
    }

    #[test]
    fn dimension_out_of_range() {
        assert!(boundary_matrix(&triangle(), 0).is_err());
        assert!(boundary_matrix(&triangle(), 3).is_err());
    }

    #[test]
    fn oriented_tops_flip_columns() {
        let cx = SimplicialComplex::from_top_simplices(names(3), &[vec![0, 2, 1]]).unwrap();
        assert_eq!(cx.signs(), &[-1]);
        let b = boundary_matrix(&cx, 2).unwrap();
        assert_eq!(b.get(2, 0), int(-1));
    }

    #[test]
    fn coboundary_of_zero_and_dimension_errors() {
        let cx = triangle().chain_complex().unwrap();
        let p = Cochain::zero(1, 3);
        assert!(apply_coboundary(&cx, &p).unwrap().is_zero());
        assert!(apply_coboundary(&cx, &Cochain::zero(2, 1)).is_err());
        assert!(apply_boundary(&cx, &Chain::zero(0, 3)).is_err());
    }

    #[test]
    fn null_homology_of_triangle_boundary() {
        let cx = triangle().chain_complex().unwrap();
        let z = apply_boundary(&cx, &Chain::unit(2, 1, 0)).unwrap();
        assert!(is_null_homologous(&cx, &z, Some(&[0])).unwrap());
        assert!(!is_null_homologous(&cx, &z, Some(&[])).unwrap());
        assert!(is_null_homologous(&cx, &Chain::zero(1, 3), Some(&[])).unwrap());
        let not_cycle = Chain::unit(1, 3, 0);
        assert_eq!(
            is_null_homologous(&cx, &not_cycle, None),
            Err(Error::NotACycle)
        );
    }

    #[test]
    fn broken_chain_complex_rejected() {
        let b1 = SparseMatrix::from_dense(&[vec![int(1)], vec![int(1)]]);
        let b2 = SparseMatrix::from_dense(&[vec![int(1)]]);
        let err = ChainComplexData::unlabeled(vec![2, 1, 1], vec![b1, b2]).unwrap_err();
        assert_eq!(err, Error::BoundaryNotZero { k: 2 });
    }
}
