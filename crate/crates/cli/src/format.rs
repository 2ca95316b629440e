//! The JSON instance file format.
//!
//! Rationals are written as `"p/q"` strings; JSON numbers are refused
//! wherever an exact value is expected.

use std::fmt;
use std::path::Path;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use simflow_core::dual::{build_dual, VoidData};
use simflow_core::flow::make_network;
use simflow_core::generators::{Expected, InstanceBundle, Provenance};
use simflow_core::{Chain, ChainComplexData, Rational, SimplicialComplex, SparseMatrix};

use crate::error::CliError;

pub const FORMAT_VERSION: u32 = 1;

/// An exact rational that (de)serializes as a string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Q(pub Rational);

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}

struct QVisitor;

impl<'de> Visitor<'de> for QVisitor {
    type Value = Q;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a rational as a \"p/q\" string")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Q, E> {
        v.trim()
            .parse()
            .map(Q)
            .map_err(|e| E::custom(format!("bad rational {v:?}: {e}")))
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Q, E> {
        Err(E::custom(format!(
            "JSON number {v} where a \"p/q\" string is required"
        )))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Q, E> {
        Err(E::custom(format!(
            "JSON number {v} where a \"p/q\" string is required"
        )))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<Q, E> {
        Err(E::custom(format!(
            "JSON number {v} where a \"p/q\" string is required"
        )))
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        d.deserialize_any(QVisitor)
    }
}

pub fn q(r: &Rational) -> Q {
    Q(r.clone())
}

pub fn qs(v: &[Rational]) -> Vec<Q> {
    v.iter().map(q).collect()
}

pub fn unq(v: Vec<Q>) -> Vec<Rational> {
    v.into_iter().map(|x| x.0).collect()
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub version: u32,
    pub name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub source: String,
    pub complex: ComplexBlock,
    pub capacities: Vec<Q>,
    pub gamma: Vec<GammaEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub voids: Option<VoidBlock>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub expected: Vec<ExpectedEntry>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ComplexBlock {
    /// Vertex labels, simplices per dimension (sorted vertex lists), and the
    /// top simplices whose orientation is reversed.
    Simplicial {
        vertices: Vec<String>,
        simplices: Vec<Vec<Vec<usize>>>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        reversed: Vec<usize>,
    },
    /// `boundaries[k - 1]` lists the entries `(row, col, value)` of ∂_k.
    Chain {
        sizes: Vec<usize>,
        boundaries: Vec<Vec<(usize, usize, Q)>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<Vec<String>>>,
    },
}

/// One term of γ, addressed by simplex (simplicial files) or by index.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GammaEntry {
    pub coefficient: Q,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simplex: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct VoidBlock {
    pub count: usize,
    pub unbounded: usize,
    /// `[positive side, negative side]` per top simplex.
    pub sides: Vec<[usize; 2]>,
    pub source: usize,
    pub gamma1: Vec<usize>,
    pub gamma2: Vec<usize>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ExpectedEntry {
    pub quantity: String,
    pub value: Q,
    pub provenance: String,
}

impl InstanceFile {
    pub fn from_bundle(b: &InstanceBundle) -> Self {
        let net = &b.network;
        let d = net.dim();
        let (complex, gamma) = match &b.simplicial {
            Some(sc) => {
                let reversed = (0..sc.signs().len())
                    .filter(|&j| sc.signs()[j] < 0)
                    .collect();
                let gamma = net
                    .gamma()
                    .coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(i, v)| GammaEntry {
                        coefficient: q(v),
                        simplex: Some(sc.simplices(d - 1)[i].clone()),
                        index: None,
                    })
                    .collect();
                let block = ComplexBlock::Simplicial {
                    vertices: sc.vertex_labels().to_vec(),
                    simplices: sc.all_simplices().to_vec(),
                    reversed,
                };
                (block, gamma)
            }
            None => {
                let cx = net.complex();
                let boundaries = (1..=cx.top_dim())
                    .map(|k| {
                        cx.boundary(k)
                            .unwrap()
                            .triplets()
                            .map(|(i, j, v)| (i, j, q(v)))
                            .collect()
                    })
                    .collect();
                let labels = (0..=cx.top_dim()).map(|k| cx.labels(k).to_vec()).collect();
                let gamma = net
                    .gamma()
                    .coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(i, v)| GammaEntry {
                        coefficient: q(v),
                        simplex: None,
                        index: Some(i),
                    })
                    .collect();
                (
                    ComplexBlock::Chain {
                        sizes: cx.sizes().to_vec(),
                        boundaries,
                        labels: Some(labels),
                    },
                    gamma,
                )
            }
        };
        InstanceFile {
            version: FORMAT_VERSION,
            name: b.name.clone(),
            source: b.source.clone(),
            complex,
            capacities: qs(net.capacities()),
            gamma,
            voids: b.voids.as_ref().map(|v| VoidBlock {
                count: v.n_voids,
                unbounded: v.unbounded,
                sides: v.sides.iter().map(|&(p, n)| [p, n]).collect(),
                source: v.source,
                gamma1: v.gamma1.clone(),
                gamma2: v.gamma2.clone(),
            }),
            expected: b
                .expected
                .iter()
                .map(|e| ExpectedEntry {
                    quantity: e.quantity.clone(),
                    value: q(&e.value),
                    provenance: e.provenance.as_str().into(),
                })
                .collect(),
        }
    }

    /// Builds and validates the network.
    pub fn into_bundle(self) -> Result<InstanceBundle, CliError> {
        if self.version != FORMAT_VERSION {
            return Err(CliError::parse(format!(
                "unsupported format version {}",
                self.version
            )));
        }
        let (cx, simplicial) = match self.complex {
            ComplexBlock::Simplicial {
                vertices,
                simplices,
                reversed,
            } => {
                let mut sc = SimplicialComplex::with_labels(vertices, simplices)?;
                let top = sc.signs().len();
                for j in reversed {
                    if j >= top {
                        return Err(CliError::validation(format!(
                            "reversed simplex index {j} out of range (have {top})"
                        )));
                    }
                    sc.set_sign(j, -1);
                }
                (sc.chain_complex()?, Some(sc))
            }
            ComplexBlock::Chain {
                sizes,
                boundaries,
                labels,
            } => {
                if boundaries.len() + 1 != sizes.len() {
                    return Err(CliError::validation(format!(
                        "{} boundary matrices for {} chain groups",
                        boundaries.len(),
                        sizes.len()
                    )));
                }
                let mut mats = Vec::new();
                for (k, entries) in boundaries.into_iter().enumerate() {
                    let (rows, cols) = (sizes[k], sizes[k + 1]);
                    if let Some((i, j, _)) =
                        entries.iter().find(|(i, j, _)| *i >= rows || *j >= cols)
                    {
                        return Err(CliError::validation(format!(
                            "entry ({i}, {j}) outside the {rows}x{cols} boundary {}",
                            k + 1
                        )));
                    }
                    mats.push(SparseMatrix::from_triplets(
                        rows,
                        cols,
                        entries.into_iter().map(|(i, j, v)| (i, j, v.0)),
                    )?);
                }
                let cx = match labels {
                    Some(l) => ChainComplexData::new(sizes, mats, l)?,
                    None => ChainComplexData::unlabeled(sizes, mats)?,
                };
                (cx, None)
            }
        };
        if cx.top_dim() == 0 {
            return Err(CliError::validation(
                "the complex has no simplices above dimension 0",
            ));
        }
        let d = cx.top_dim();
        let mut gamma = Chain::zero(d - 1, cx.size(d - 1));
        for (n, e) in self.gamma.into_iter().enumerate() {
            let i = match (&e.simplex, e.index, &simplicial) {
                (Some(s), None, Some(sc)) => sc.index_of(d - 1, s).ok_or_else(|| {
                    CliError::validation(format!(
                        "gamma term {n}: {s:?} is not a {}-simplex",
                        d - 1
                    ))
                })?,
                (None, Some(i), _) if i < gamma.coeffs.len() => i,
                (None, Some(i), _) => {
                    return Err(CliError::validation(format!(
                        "gamma term {n}: index {i} out of range"
                    )))
                }
                (Some(_), None, None) => {
                    return Err(CliError::validation(format!(
                        "gamma term {n}: simplex addressing needs a simplicial complex"
                    )))
                }
                _ => {
                    return Err(CliError::parse(format!(
                        "gamma term {n}: give exactly one of simplex or index"
                    )))
                }
            };
            gamma.coeffs[i] += &e.coefficient.0;
        }
        let network = make_network(cx, unq(self.capacities), gamma)?;
        let voids = self.voids.map(|v| VoidData {
            n_voids: v.count,
            unbounded: v.unbounded,
            sides: v.sides.into_iter().map(|[p, n]| (p, n)).collect(),
            source: v.source,
            gamma1: v.gamma1,
            gamma2: v.gamma2,
        });
        if let Some(v) = &voids {
            build_dual(&network, v)?;
        }
        let expected = self
            .expected
            .into_iter()
            .map(|e| {
                let p = Provenance::parse(&e.provenance).ok_or_else(|| {
                    CliError::parse(format!("unknown provenance {:?}", e.provenance))
                })?;
                Ok(Expected::new(&e.quantity, e.value.0, p))
            })
            .collect::<Result<_, CliError>>()?;
        Ok(InstanceBundle {
            name: self.name,
            network,
            simplicial,
            voids,
            expected,
            source: self.source,
        })
    }
}

pub fn to_json(b: &InstanceBundle) -> String {
    serde_json::to_string_pretty(&InstanceFile::from_bundle(b)).expect("instance serializes")
}

pub fn parse_instance(text: &str) -> Result<InstanceBundle, CliError> {
    let file: InstanceFile =
        serde_json::from_str(text).map_err(|e| CliError::parse(format!("instance: {e}")))?;
    file.into_bundle()
}

pub fn read_instance(path: &Path) -> Result<InstanceBundle, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::parse(format!("{}: {e}", path.display())))?;
    parse_instance(&text).map_err(|e| CliError {
        code: e.code,
        message: format!("{}: {}", path.display(), e.message),
    })
}
