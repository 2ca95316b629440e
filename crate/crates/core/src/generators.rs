//! Deterministic instance constructors.
//!
//! Fixed instances: the Möbius-strip-plus-disk complex `md`, its extension by
//! a wedge of two disks `mdw`, the octahedron sphere, a planar square, graphs,
//! and the hitting-set complex. Random instances are seeded with ChaCha8.
//!
//! # The `md` triangulation
//!
//! The strip is a 3×3 grid of squares, each cut along its `(i,j)-(i+1,j+1)`
//! diagonal. Columns run left to right, rows bottom to top:
//!
//! ```text
//!   u  t1  t2  u        left edge, bottom to top:  u v w u
//!   w i12 i22  v        right edge, bottom to top: u w v u
//!   v i11 i21  w
//!   u  b1  b2  u
//! ```
//!
//! Gluing the left edge to the right edge with the twist `v ↔ w` gives a
//! Möbius strip. Its corners all sit at `u`, so the two free arcs
//! `u b1 b2 u` and `u t2 t1 u` form the figure-eight γ, and the glued edge
//! wraps the core loop `α = u→w→v→u` twice: `∂M = γ + 2α`. The disk `D` is
//! the cone from `z` on `α` oriented so that `∂D = -α`. The wedge `W` is
//! the two triangles `(u,b1,b2)` and `(u,t2,t1)` with `∂W = γ`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{apply_boundary, Chain, ChainComplexData, SimplicialComplex};
use crate::dual::VoidData;
use crate::flow::{make_network, FlowNetwork};
use crate::linalg::SparseMatrix;
use crate::{int, ratio, Error, Rational, Result};

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    /// Stated in the literature for this instance.
    Literature,
    /// Computed by an independent exhaustive oracle.
    Oracle,
    /// Holds by construction.
    Construction,
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Provenance::Literature => "literature",
            Provenance::Oracle => "oracle",
            Provenance::Construction => "construction",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "literature" => Some(Provenance::Literature),
            "oracle" => Some(Provenance::Oracle),
            "construction" => Some(Provenance::Construction),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expected {
    /// `max_flow`, `min_cut` or `min_combinatorial_cut`.
    pub quantity: String,
    pub value: Rational,
    pub provenance: Provenance,
}

impl Expected {
    pub fn new(quantity: &str, value: Rational, provenance: Provenance) -> Self {
        Expected {
            quantity: quantity.to_string(),
            value,
            provenance,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceBundle {
    pub name: String,
    pub network: FlowNetwork,
    /// The simplicial complex behind the network, when there is one.
    pub simplicial: Option<SimplicialComplex>,
    pub voids: Option<VoidData>,
    pub expected: Vec<Expected>,
    pub source: String,
}

impl InstanceBundle {
    pub fn expected(&self, quantity: &str) -> Option<&Rational> {
        self.expected
            .iter()
            .find(|e| e.quantity == quantity)
            .map(|e| &e.value)
    }
}

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// The 1-chain `Σ (a → b)` over oriented edges of a simplicial complex.
pub fn chain_from_oriented_edges(
    cx: &SimplicialComplex,
    edges: &[(usize, usize)],
) -> Result<Chain> {
    let n = cx.simplices(1).len();
    let mut c = Chain::zero(1, n);
    for &(a, b) in edges {
        let (lo, hi, s) = if a < b { (a, b, 1) } else { (b, a, -1) };
        let j = cx
            .index_of(1, &[lo, hi])
            .ok_or_else(|| Error::InvalidParameter(format!("edge ({a}, {b}) not in complex")))?;
        c.coeffs[j] += Rational::from_integer(s);
    }
    Ok(c)
}

/// The 0-chain `t - s`.
pub fn vertex_difference(n_vertices: usize, s: usize, t: usize) -> Chain {
    let mut c = Chain::zero(0, n_vertices);
    c.coeffs[s] -= Rational::ONE;
    c.coeffs[t] += Rational::ONE;
    c
}

fn bundle_from_simplicial(
    name: &str,
    cx: SimplicialComplex,
    capacities: Vec<Rational>,
    gamma: Chain,
    voids: Option<VoidData>,
    expected: Vec<Expected>,
    source: &str,
) -> Result<InstanceBundle> {
    let network = make_network(cx.chain_complex()?, capacities, gamma)?;
    Ok(InstanceBundle {
        name: name.to_string(),
        network,
        simplicial: Some(cx),
        voids,
        expected,
        source: source.to_string(),
    })
}

const MD_NAMES: [&str; 12] = [
    "u", "v", "w", "z", "b1", "b2", "t1", "t2", "i11", "i12", "i21", "i22",
];

/// Indices of the Möbius-strip triangles in `md` and `mdw`.
pub const MD_MOBIUS: Range<usize> = 0..18;
/// Indices of the disk triangles in `md` and `mdw`.
pub const MD_DISK: Range<usize> = 18..21;
/// Indices of the wedge triangles in `mdw`.
pub const MDW_WEDGE: Range<usize> = 21..23;

fn md_vertex(name: &str) -> usize {
    MD_NAMES.iter().position(|n| *n == name).unwrap()
}

fn md_triangles(with_wedge: bool) -> Vec<Vec<usize>> {
    let left = ["u", "v", "w", "u"];
    let right = ["u", "w", "v", "u"];
    let lab = |i: usize, j: usize| -> String {
        match (i, j) {
            (0, _) => left[j].to_string(),
            (3, _) => right[j].to_string(),
            (_, 0) => format!("b{i}"),
            (_, 3) => format!("t{i}"),
            _ => format!("i{i}{j}"),
        }
    };
    let mut tris = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            let (a, b, c, d) = (lab(i, j), lab(i + 1, j), lab(i + 1, j + 1), lab(i, j + 1));
            tris.push([a.clone(), b, c.clone()]);
            tris.push([a, c, d]);
        }
    }
    let mut extra: Vec<[&str; 3]> = vec![["z", "w", "u"], ["z", "v", "w"], ["z", "u", "v"]];
    if with_wedge {
        extra.push(["u", "b1", "b2"]);
        extra.push(["u", "t2", "t1"]);
    }
    for t in extra {
        tris.push(t.map(String::from));
    }
    tris.iter()
        .map(|t| t.iter().map(|n| md_vertex(n)).collect())
        .collect()
}

/// Oriented edges of the figure-eight γ in `md`.
pub fn md_gamma_edges() -> Vec<(usize, usize)> {
    let v = md_vertex;
    vec![
        (v("u"), v("b1")),
        (v("b1"), v("b2")),
        (v("b2"), v("u")),
        (v("u"), v("t2")),
        (v("t2"), v("t1")),
        (v("t1"), v("u")),
    ]
}

/// Oriented edges of the core loop `α = u→w→v→u`.
pub fn md_alpha_edges() -> Vec<(usize, usize)> {
    let v = md_vertex;
    vec![(v("u"), v("w")), (v("w"), v("v")), (v("v"), v("u"))]
}

fn md_like(with_wedge: bool) -> Result<InstanceBundle> {
    let cx = SimplicialComplex::from_top_simplices(labels(&MD_NAMES), &md_triangles(with_wedge))?;
    let gamma = chain_from_oriented_edges(&cx, &md_gamma_edges())?;
    let n = cx.simplices(2).len();
    if with_wedge {
        bundle_from_simplicial(
            "mdw",
            cx,
            vec![Rational::ONE; n],
            gamma,
            None,
            vec![
                Expected::new("max_flow", ratio(3, 2), Provenance::Literature),
                Expected::new("min_cut", ratio(3, 2), Provenance::Oracle),
                Expected::new("min_combinatorial_cut", int(2), Provenance::Literature),
            ],
            "Moebius strip with a disk on its core loop and a wedge of two disks on the figure-eight boundary",
        )
    } else {
        bundle_from_simplicial(
            "md",
            cx,
            vec![Rational::ONE; n],
            gamma,
            None,
            vec![
                Expected::new("max_flow", ratio(1, 2), Provenance::Literature),
                Expected::new("min_cut", ratio(1, 2), Provenance::Oracle),
            ],
            "Moebius strip whose boundary is the figure-eight gamma plus twice the core loop, with a disk on the core loop",
        )
    }
}

/// Möbius strip `M` and disk `D` with unit capacities. Max flow 1/2.
pub fn gen_md() -> Result<InstanceBundle> {
    md_like(false)
}

/// `md` plus the wedge `W` with `∂W = γ`. Max flow 3/2, min combinatorial
/// cut 2.
pub fn gen_mdw() -> Result<InstanceBundle> {
    md_like(true)
}

/// A directed graph as a 1-complex with `γ = t - s`.
pub fn gen_graph(
    n_vertices: usize,
    edges: &[(usize, usize)],
    capacities: &[Rational],
    s: usize,
    t: usize,
) -> Result<InstanceBundle> {
    if s == t {
        return Err(Error::InvalidParameter("s and t must differ".into()));
    }
    if s >= n_vertices || t >= n_vertices {
        return Err(Error::InvalidParameter("s or t out of range".into()));
    }
    if capacities.len() != edges.len() {
        return Err(Error::ShapeMismatch {
            what: "graph capacities",
            expected: edges.len(),
            found: capacities.len(),
        });
    }
    if edges.is_empty() {
        return Err(Error::InvalidParameter("graph has no edges".into()));
    }
    let names = (0..n_vertices).map(|v| v.to_string()).collect();
    let tops: Vec<Vec<usize>> = edges.iter().map(|&(a, b)| vec![a, b]).collect();
    let cx = SimplicialComplex::from_top_simplices(names, &tops)?;
    let gamma = vertex_difference(n_vertices, s, t);
    bundle_from_simplicial(
        "graph",
        cx,
        capacities.to_vec(),
        gamma,
        None,
        Vec::new(),
        &format!("directed graph on {n_vertices} vertices, s = {s}, t = {t}"),
    )
}

fn octahedron_with(capacities: Vec<Rational>, name: &str) -> Result<InstanceBundle> {
    let names = labels(&["N", "e1", "e2", "e3", "e4", "S"]);
    let mut tops = Vec::new();
    for pole in [0, 5] {
        for i in 1..=4 {
            let next = if i == 4 { 1 } else { i + 1 };
            tops.push(vec![pole, i, next]);
        }
    }
    let cx = SimplicialComplex::from_top_simplices(names, &tops)?;
    let gamma = chain_from_oriented_edges(&cx, &[(1, 2), (2, 3), (3, 4), (4, 1)])?;
    // Void 0 is inside, void 1 outside. Both hemispheres have ∂ = γ, so the
    // sphere is U - L; the inside lies on the positive side of U.
    let mut sides = vec![(0, 1); 4];
    sides.extend(vec![(1, 0); 4]);
    let voids = VoidData {
        n_voids: 2,
        unbounded: 1,
        sides,
        source: 0,
        gamma1: (4..8).collect(),
        gamma2: (0..4).collect(),
    };
    bundle_from_simplicial(
        name,
        cx,
        capacities,
        gamma,
        Some(voids),
        Vec::new(),
        "octahedron boundary sphere with the equator as gamma; hemispheres split the inner void",
    )
}

/// The octahedron sphere, equatorial γ, unit capacities. Max flow 2.
pub fn gen_octahedron() -> Result<InstanceBundle> {
    let mut b = octahedron_with(vec![Rational::ONE; 8], "octahedron")?;
    b.expected = vec![
        Expected::new("max_flow", int(2), Provenance::Oracle),
        Expected::new("min_combinatorial_cut", int(2), Provenance::Oracle),
    ];
    Ok(b)
}

/// The octahedron with seeded capacities `p/q`, `q ∈ {1, 2, 3}`,
/// `1 ≤ p/q ≤ 3`.
pub fn gen_octahedron_variant(seed: u64) -> Result<InstanceBundle> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let caps = (0..8)
        .map(|_| {
            let q = rng.gen_range(1..=3i64);
            ratio(rng.gen_range(q..=3 * q), q)
        })
        .collect();
    octahedron_with(caps, &format!("octahedron-{seed}"))
}

/// A 4-cycle `s→a→t`, `s→b→t` in the plane with two faces. Max flow 2.
pub fn gen_planar_square() -> Result<InstanceBundle> {
    let cx = SimplicialComplex::from_top_simplices(
        labels(&["s", "a", "t", "b"]),
        &[vec![0, 1], vec![1, 2], vec![0, 3], vec![3, 2]],
    )?;
    let voids = VoidData {
        n_voids: 2,
        unbounded: 1,
        sides: vec![(0, 1), (0, 1), (1, 0), (1, 0)],
        source: 0,
        gamma1: vec![2, 3],
        gamma2: vec![0, 1],
    };
    bundle_from_simplicial(
        "planar-square",
        cx,
        vec![Rational::ONE; 4],
        vertex_difference(4, 0, 2),
        Some(voids),
        vec![
            Expected::new("max_flow", int(2), Provenance::Construction),
            Expected::new("min_combinatorial_cut", int(2), Provenance::Construction),
        ],
        "planar 4-cycle with an inner and an outer face",
    )
}

/// Size of a smallest set meeting every member of `family`.
pub fn brute_min_hitting_set(universe: &[usize], family: &[Vec<usize>]) -> usize {
    let n = universe.len();
    let mut best = n;
    for mask in 0u64..(1u64 << n) {
        let k = mask.count_ones() as usize;
        if k >= best {
            continue;
        }
        let hits = family.iter().all(|set| {
            set.iter().any(|e| {
                universe
                    .iter()
                    .position(|u| u == e)
                    .is_some_and(|i| mask >> i & 1 == 1)
            })
        });
        if hits {
            best = k;
        }
    }
    best
}

/// The hitting-set complex: a 2-dimensional chain complex in which the
/// disks of different family members share one cell per common element.
///
/// Vertices `a, b, c` carry `γ = ∂[a,b,c]`. Element `e` owns vertices
/// `p_e, q_e, r_e`, the loop `ℓ_e = ∂[p_e,q_e,r_e]` and a 2-cell `T_e`
/// with `∂T_e = ℓ_e`. Member `S_i` owns a 2-cell `P_i` with
/// `∂P_i = γ - Σ_{e∈S_i} ℓ_e`, so `D_i = P_i + Σ_{e∈S_i} T_e` is a disk with
/// boundary γ. Cutting `T_e` destroys every disk through `e`; cutting `P_i`
/// destroys only `D_i`.
pub fn gen_hitting_set(universe: &[usize], family: &[Vec<usize>]) -> Result<InstanceBundle> {
    for (i, set) in family.iter().enumerate() {
        if set.is_empty() {
            return Err(Error::EmptySubset { index: i });
        }
        if let Some(e) = set.iter().find(|e| !universe.contains(e)) {
            return Err(Error::InvalidParameter(format!(
                "element {e} of member {i} is not in the universe"
            )));
        }
    }
    if family.is_empty() {
        return Err(Error::InvalidParameter("empty family".into()));
    }
    let m = universe.len();
    let n0 = 3 + 3 * m;
    let n1 = 3 + 3 * m;
    let n2 = m + family.len();
    let mut v_labels = labels(&["a", "b", "c"]);
    for e in universe {
        v_labels.extend([format!("p{e}"), format!("q{e}"), format!("r{e}")]);
    }
    // Edges of the triangle on vertices (x, x+1, x+2): (x,x+1), (x,x+2), (x+1,x+2).
    let mut e_labels = Vec::new();
    let mut d1 = SparseMatrix::zeros(n0, n1);
    for block in 0..=m {
        let x = 3 * block;
        for (k, (lo, hi)) in [(x, x + 1), (x, x + 2), (x + 1, x + 2)]
            .into_iter()
            .enumerate()
        {
            d1.set(lo, x + k, -Rational::ONE);
            d1.set(hi, x + k, Rational::ONE);
            e_labels.push(format!("{},{}", v_labels[lo], v_labels[hi]));
        }
    }
    // ∂[x, x+1, x+2] = (x+1,x+2) - (x,x+2) + (x,x+1) on edge indices x+2, x+1, x.
    let loop_of = |block: usize| -> [(usize, Rational); 3] {
        let x = 3 * block;
        [(x, int(1)), (x + 1, int(-1)), (x + 2, int(1))]
    };
    let mut d2 = SparseMatrix::zeros(n1, n2);
    let mut c_labels = Vec::new();
    for (k, e) in universe.iter().enumerate() {
        for (i, v) in loop_of(k + 1) {
            d2.add_to(i, k, &v);
        }
        c_labels.push(format!("T{e}"));
    }
    for (i, set) in family.iter().enumerate() {
        let col = m + i;
        for (r, v) in loop_of(0) {
            d2.add_to(r, col, &v);
        }
        for e in set {
            let k = universe.iter().position(|u| u == e).unwrap();
            for (r, v) in loop_of(k + 1) {
                d2.add_to(r, col, &-v);
            }
        }
        c_labels.push(format!("P{i}"));
    }
    let cx = ChainComplexData::new(
        vec![n0, n1, n2],
        vec![d1, d2],
        vec![v_labels, e_labels, c_labels],
    )?;
    let mut gamma = Chain::zero(1, n1);
    for (i, v) in loop_of(0) {
        gamma.coeffs[i] = v;
    }
    let network = make_network(cx, vec![Rational::ONE; n2], gamma)?;
    let hit = brute_min_hitting_set(universe, family);
    let family_text: Vec<String> = family
        .iter()
        .map(|s| {
            s.iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect();
    Ok(InstanceBundle {
        name: "hitting-set".into(),
        network,
        simplicial: None,
        voids: None,
        expected: vec![Expected::new(
            "min_combinatorial_cut",
            Rational::from_integer(hit as i64),
            Provenance::Oracle,
        )],
        source: format!("hitting-set reduction for family {}", family_text.join(";")),
    })
}

fn random_capacity(rng: &mut ChaCha8Rng) -> Rational {
    let q = rng.gen_range(1..=2i64);
    ratio(rng.gen_range(1..=4 * q), q)
}

/// A random complex of dimension `d ∈ {1, 2}` on `n_vertices` vertices in
/// which each possible top simplex appears with probability `density`
/// (with a random orientation), and `γ = ∂x` for a random non-negative
/// chain `x`.
pub fn gen_random(seed: u64, n_vertices: usize, d: usize, density: f64) -> Result<InstanceBundle> {
    if !(1..=2).contains(&d) {
        return Err(Error::InvalidParameter(format!(
            "dimension {d} not in {{1, 2}}"
        )));
    }
    if n_vertices < d + 1 {
        return Err(Error::InvalidParameter("too few vertices".into()));
    }
    if !(density > 0.0 && density <= 1.0) {
        return Err(Error::InvalidParameter("density must lie in (0, 1]".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..100 {
        let mut tops = Vec::new();
        let mut candidates: Vec<Vec<usize>> = Vec::new();
        for a in 0..n_vertices {
            for b in a + 1..n_vertices {
                if d == 1 {
                    candidates.push(vec![a, b]);
                } else {
                    for c in b + 1..n_vertices {
                        candidates.push(vec![a, b, c]);
                    }
                }
            }
        }
        for mut s in candidates {
            if rng.gen_bool(density) {
                if rng.gen_bool(0.5) {
                    s.swap(0, 1);
                }
                tops.push(s);
            }
        }
        if tops.is_empty() {
            continue;
        }
        let names = (0..n_vertices).map(|v| v.to_string()).collect();
        let cx = SimplicialComplex::from_top_simplices(names, &tops)?;
        let chain = cx.chain_complex()?;
        let n = tops.len();
        let mut x = Chain::zero(d, n);
        let picks = rng.gen_range(1..=3.min(n));
        let mut idx: Vec<usize> = (0..n).collect();
        idx.shuffle(&mut rng);
        for &j in &idx[..picks] {
            x.coeffs[j] = Rational::from_integer(rng.gen_range(1..=2));
        }
        let gamma = apply_boundary(&chain, &x)?;
        if gamma.coeffs.iter().all(Rational::is_zero) {
            continue;
        }
        let caps = (0..n).map(|_| random_capacity(&mut rng)).collect();
        return bundle_from_simplicial(
            &format!("random-{seed}"),
            cx,
            caps,
            gamma,
            None,
            Vec::new(),
            &format!("random {d}-complex, seed {seed}, {n_vertices} vertices, density {density}"),
        );
    }
    Err(Error::GiveUp(
        "no random complex with a nonzero boundary gamma after 100 attempts",
    ))
}

/// A random simple directed graph (no antiparallel pairs) with `n_edges`
/// edges, integral capacities in `1..=max_capacity`, `s = 0`, `t = n - 1`,
/// and `t` connected to `s` in the underlying undirected graph.
pub fn gen_random_graph(
    seed: u64,
    n_vertices: usize,
    n_edges: usize,
    max_capacity: i64,
) -> Result<InstanceBundle> {
    let pairs = n_vertices * n_vertices.saturating_sub(1) / 2;
    if n_vertices < 2 || n_edges == 0 || n_edges > pairs || max_capacity < 1 {
        return Err(Error::InvalidParameter(
            "random graph parameters out of range".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..100 {
        let mut all: Vec<(usize, usize)> = (0..n_vertices)
            .flat_map(|a| (a + 1..n_vertices).map(move |b| (a, b)))
            .collect();
        all.shuffle(&mut rng);
        let edges: Vec<(usize, usize)> = all[..n_edges]
            .iter()
            .map(|&(a, b)| if rng.gen_bool(0.5) { (a, b) } else { (b, a) })
            .collect();
        let caps: Vec<Rational> = (0..n_edges)
            .map(|_| Rational::from_integer(rng.gen_range(1..=max_capacity)))
            .collect();
        match gen_graph(n_vertices, &edges, &caps, 0, n_vertices - 1) {
            Ok(mut b) => {
                b.name = format!("random-graph-{seed}");
                return Ok(b);
            }
            Err(Error::NotNullHomologous) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::GiveUp(
        "no connected random graph after 100 attempts",
    ))
}

/// The instance generator names accepted by [`by_name`].
pub const NAMES: [&str; 4] = ["md", "mdw", "octahedron", "planar-square"];

/// Parameter-free generators by name.
pub fn by_name(name: &str) -> Option<Result<InstanceBundle>> {
    match name {
        "md" => Some(gen_md()),
        "mdw" => Some(gen_mdw()),
        "octahedron" => Some(gen_octahedron()),
        "planar-square" => Some(gen_planar_square()),
        _ => None,
    }
}
