//! Central hyperplane arrangements over ℚ: the lattice of flats, covectors and
//! the face poset, and the support map between them.

mod fm;
pub mod linalg;

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde_json::Value;
use thiserror::Error;

use crate::extab;
use crate::ncpoly::AbPoly;
use crate::poset::{Chain, Elem, GradedPoset, PosetError};
use crate::rankset::RankSet;
use linalg::{dot, Q};

/// Largest supported number of hyperplanes.
pub const MAX_HYPERPLANES: usize = 32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArrangementError {
    #[error("malformed arrangement: {0}")]
    Malformed(String),
    #[error("`{0}` is not a rational number")]
    BadRational(String),
    #[error("normal {index} has {found} coordinates, expected {expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("normal {0} is the zero vector")]
    ZeroNormal(usize),
    #[error("hyperplanes {0} and {1} coincide")]
    DuplicateHyperplane(usize, usize),
    #[error("at most {MAX_HYPERPLANES} hyperplanes are supported, got {0}")]
    TooManyHyperplanes(usize),
    #[error("`{0}` is not an element of the lattice of flats")]
    ElementNotInLattice(String),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Zero,
    Plus,
}

impl Sign {
    pub fn of(q: &Q) -> Self {
        if q.is_positive() {
            Sign::Plus
        } else if q.is_negative() {
            Sign::Minus
        } else {
            Sign::Zero
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Minus => '-',
            Sign::Zero => '0',
            Sign::Plus => '+',
        }
    }
}

/// A vector in `{-, 0, +}^m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector(pub Vec<Sign>);

impl SignVector {
    /// Hyperplanes containing the face.
    pub fn zero_set(&self) -> RankSet {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, s)| **s == Sign::Zero)
            .map(|(i, _)| i)
            .collect()
    }

    /// Whether `other` is a face of the closure of `self`.
    pub fn closure_contains(&self, other: &SignVector) -> bool {
        self.0.iter().zip(&other.0).all(|(s, t)| *t == Sign::Zero || t == s)
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

/// A realizable sign vector with a point realizing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Covector {
    pub signs: SignVector,
    pub witness: Vec<Q>,
}

/// A central arrangement given by its normal vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    dim: usize,
    normals: Vec<Vec<Q>>,
}

fn parse_rational(v: &Value) -> Result<Q, ArrangementError> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|i| Q::from_integer(BigInt::from(i)))
            .ok_or_else(|| ArrangementError::BadRational(n.to_string())),
        Value::String(s) => parse_rational_str(s),
        other => Err(ArrangementError::BadRational(other.to_string())),
    }
}

fn parse_rational_str(s: &str) -> Result<Q, ArrangementError> {
    let bad = || ArrangementError::BadRational(s.to_string());
    let t = s.trim();
    let (p, q) = match t.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (t, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(Q::new(p, q))
}

fn format_rational(q: &Q) -> Value {
    if q.is_integer() {
        if let Ok(i) = i64::try_from(q.to_integer()) {
            return Value::from(i);
        }
    }
    Value::String(q.to_string())
}

fn set_id(s: RankSet) -> String {
    s.to_string()
}

impl Arrangement {
    pub fn new(dim: usize, normals: Vec<Vec<Q>>) -> Result<Self, ArrangementError> {
        if normals.len() > MAX_HYPERPLANES {
            return Err(ArrangementError::TooManyHyperplanes(normals.len()));
        }
        for (i, v) in normals.iter().enumerate() {
            if v.len() != dim {
                return Err(ArrangementError::DimensionMismatch {
                    index: i,
                    expected: dim,
                    found: v.len(),
                });
            }
            if v.iter().all(Zero::is_zero) {
                return Err(ArrangementError::ZeroNormal(i));
            }
        }
        for i in 0..normals.len() {
            for j in i + 1..normals.len() {
                if linalg::rank(&[normals[i].clone(), normals[j].clone()], dim) == 1 {
                    return Err(ArrangementError::DuplicateHyperplane(i, j));
                }
            }
        }
        Ok(Self { dim, normals })
    }

    /// Integer normals, convenient for tests and examples.
    pub fn from_integers(dim: usize, normals: &[Vec<i64>]) -> Result<Self, ArrangementError> {
        let normals = normals
            .iter()
            .map(|v| v.iter().map(|&x| Q::from_integer(BigInt::from(x))).collect())
            .collect();
        Self::new(dim, normals)
    }

    /// Parses `{"dim": d, "normals": [[q, …], …]}` with each `q` an integer or
    /// a string `"p/q"`.
    pub fn from_json(v: &Value) -> Result<Self, ArrangementError> {
        let obj = v
            .as_object()
            .ok_or_else(|| ArrangementError::Malformed("expected a JSON object".into()))?;
        let dim = obj
            .get("dim")
            .and_then(Value::as_u64)
            .ok_or_else(|| ArrangementError::Malformed("`dim` must be a nonnegative integer".into()))?
            as usize;
        let rows = obj
            .get("normals")
            .and_then(Value::as_array)
            .ok_or_else(|| ArrangementError::Malformed("`normals` must be an array".into()))?;
        let normals = rows
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| ArrangementError::Malformed("each normal must be an array".into()))?
                    .iter()
                    .map(parse_rational)
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(dim, normals)
    }

    pub fn to_json(&self) -> Value {
        let normals: Vec<Value> = self
            .normals
            .iter()
            .map(|r| Value::Array(r.iter().map(format_rational).collect()))
            .collect();
        serde_json::json!({ "dim": self.dim, "normals": normals })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.normals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.normals.is_empty()
    }

    pub fn normals(&self) -> &[Vec<Q>] {
        &self.normals
    }

    fn rows(&self, set: RankSet) -> Vec<Vec<Q>> {
        set.iter().map(|i| self.normals[i].clone()).collect()
    }

    /// Dimension of the span of the normals in `set`, i.e. the codimension
    /// of their intersection inside the essential part of the arrangement.
    pub fn rank_of(&self, set: RankSet) -> usize {
        linalg::rank(&self.rows(set), self.dim)
    }

    pub fn rank(&self) -> usize {
        self.rank_of(self.all())
    }

    fn all(&self) -> RankSet {
        (0..self.len()).collect()
    }

    /// Every hyperplane containing the intersection of those in `set`.
    pub fn closure(&self, set: RankSet) -> RankSet {
        let r = self.rank_of(set);
        (0..self.len())
            .filter(|&j| set.contains(j) || self.rank_of(set.with(j)) == r)
            .collect()
    }

    /// All flats, each as the closed set of hyperplanes containing it.
    pub fn flats(&self) -> Vec<RankSet> {
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::from([RankSet::EMPTY]);
        seen.insert(RankSet::EMPTY);
        while let Some(f) = queue.pop_front() {
            for j in 0..self.len() {
                if !f.contains(j) {
                    let g = self.closure(f.with(j));
                    if seen.insert(g) {
                        queue.push_back(g);
                    }
                }
            }
        }
        let mut out: Vec<RankSet> = seen.into_iter().collect();
        out.sort_by_key(|&f| (self.rank_of(f), f));
        out
    }

    /// The lattice of flats ordered by reverse inclusion of subspaces.
    pub fn flats_lattice(&self) -> Result<FlatLattice, ArrangementError> {
        let flats = self.flats();
        let ranks: Vec<usize> = flats.iter().map(|&f| self.rank_of(f)).collect();
        let elements: Vec<String> = flats.iter().map(|&f| set_id(f)).collect();
        let mut covers = Vec::new();
        for (i, &f) in flats.iter().enumerate() {
            for (j, &g) in flats.iter().enumerate() {
                if f.is_subset(g) && ranks[j] == ranks[i] + 1 {
                    covers.push((set_id(f), set_id(g)));
                }
            }
        }
        let poset = GradedPoset::new(&elements, &covers)?;
        let mut by_elem = vec![RankSet::EMPTY; flats.len()];
        for &f in &flats {
            by_elem[poset.elem(&set_id(f)).expect("flat id").index()] = f;
        }
        let atom_order = (0..self.len())
            .map(|i| {
                poset
                    .elem(&set_id(RankSet::EMPTY.with(i)))
                    .expect("singletons are flats")
            })
            .collect();
        Ok(FlatLattice {
            poset,
            flats: by_elem,
            atom_order,
        })
    }

    /// A point realizing `signs`, or `None`. The point is re-checked by
    /// substitution before it is returned.
    pub fn realize(&self, signs: &SignVector) -> Option<Vec<Q>> {
        let zero = signs.zero_set();
        let basis = linalg::nullspace(&self.rows(zero), self.dim);
        let k = basis.len();
        // x = Σ z_j basis_j; strict sign conditions, made homogeneous, become
        // s_i ⟨n_i, x⟩ ≥ 1.
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for (i, s) in signs.0.iter().enumerate() {
            let factor = match s {
                Sign::Zero => continue,
                Sign::Plus => Q::from_integer(1.into()),
                Sign::Minus => Q::from_integer((-1).into()),
            };
            rows.push(
                basis
                    .iter()
                    .map(|b| dot(&self.normals[i], b) * &factor)
                    .collect::<Vec<Q>>(),
            );
            rhs.push(Q::from_integer(1.into()));
        }
        let z = fm::solve(&rows, &rhs, k)?;
        let mut x = vec![Q::zero(); self.dim];
        for (zj, b) in z.iter().zip(&basis) {
            for (xi, bi) in x.iter_mut().zip(b) {
                *xi += zj * bi;
            }
        }
        (self.sign_of(&x) == *signs).then_some(x)
    }

    pub fn sign_of(&self, x: &[Q]) -> SignVector {
        SignVector(self.normals.iter().map(|n| Sign::of(&dot(n, x))).collect())
    }

    /// All covectors. Zero sets range over flats, and signs over the
    /// remaining hyperplanes.
    pub fn covectors(&self) -> Vec<Covector> {
        let mut out = Vec::new();
        for f in self.flats() {
            let free: Vec<usize> = self.all().difference(f).iter().collect();
            for mask in 0..1u64 << free.len() {
                let mut signs = vec![Sign::Zero; self.len()];
                for (b, &i) in free.iter().enumerate() {
                    signs[i] = if mask >> b & 1 == 1 { Sign::Minus } else { Sign::Plus };
                }
                let signs = SignVector(signs);
                if let Some(witness) = self.realize(&signs) {
                    out.push(Covector { signs, witness });
                }
            }
        }
        out.sort_by(|a, b| a.signs.cmp(&b.signs));
        out
    }

    /// Covectors ordered by reverse inclusion of faces, with a minimum
    /// adjoined. Faces have rank `codim + 1`.
    pub fn face_poset(&self) -> Result<FacePoset, ArrangementError> {
        let covectors = self.covectors();
        let rank: Vec<usize> = covectors.iter().map(|c| self.rank_of(c.signs.zero_set()) + 1).collect();
        let mut elements = vec![FacePoset::BOTTOM.to_string()];
        elements.extend(covectors.iter().map(|c| c.signs.to_string()));
        let mut covers = Vec::new();
        for (i, c) in covectors.iter().enumerate() {
            if rank[i] == 1 {
                covers.push((FacePoset::BOTTOM.to_string(), c.signs.to_string()));
            }
            for (j, d) in covectors.iter().enumerate() {
                if rank[j] == rank[i] + 1 && c.signs.closure_contains(&d.signs) {
                    covers.push((c.signs.to_string(), d.signs.to_string()));
                }
            }
        }
        let poset = GradedPoset::new(&elements, &covers)?;
        let mut by_elem = vec![None; poset.len()];
        for c in covectors {
            let e = poset.elem(&c.signs.to_string()).expect("covector id");
            by_elem[e.index()] = Some(c);
        }
        Ok(FacePoset {
            poset,
            covectors: by_elem,
        })
    }

    /// `#supp⁻¹(C)`: chains of faces `F_1 < … < F_k` with `supp(F_i) = C_i`.
    pub fn supp_fibers(&self, flats: &FlatLattice, faces: &FacePoset, chain: &Chain) -> BigInt {
        let targets: Vec<RankSet> = chain.elems().iter().map(|&e| flats.flat(e)).collect();
        let mut counts: HashMap<Elem, BigInt> = HashMap::new();
        for (level, &target) in targets.iter().enumerate() {
            let mut next = HashMap::new();
            for f in faces.poset.elements() {
                if faces.supp(f) != Some(target) {
                    continue;
                }
                let c = if level == 0 {
                    BigInt::from(1)
                } else {
                    counts
                        .iter()
                        .filter(|(&g, _)| faces.poset.lt(g, f))
                        .map(|(_, c)| c.clone())
                        .sum()
                };
                if !c.is_zero() {
                    next.insert(f, c);
                }
            }
            counts = next;
        }
        if targets.is_empty() {
            BigInt::from(1)
        } else {
            counts.values().sum()
        }
    }

    /// Both sides of `Ψ(Σ ∪ {0̂}) = a · Ψ_pull(ℒ)`.
    pub fn pullback_sides(&self) -> Result<(AbPoly, AbPoly), ArrangementError> {
        let faces = self.face_poset()?;
        let flats = self.flats_lattice()?;
        let lhs = extab::ab_index(&faces.poset);
        let rhs = &AbPoly::a() * &extab::pullback(&flats.poset);
        Ok((lhs, rhs))
    }

    /// Number of chambers (covectors without zeros).
    pub fn chamber_count(&self) -> usize {
        self.covectors()
            .iter()
            .filter(|c| c.signs.zero_set().is_empty())
            .count()
    }
}

/// The lattice of flats together with the hyperplane set of each element.
#[derive(Clone, Debug)]
pub struct FlatLattice {
    pub poset: GradedPoset,
    flats: Vec<RankSet>,
    atom_order: Vec<Elem>,
}

impl FlatLattice {
    pub fn flat(&self, e: Elem) -> RankSet {
        self.flats[e.index()]
    }

    pub fn elem_of(&self, flat: RankSet) -> Option<Elem> {
        self.poset.elem(&set_id(flat))
    }

    /// Atoms in hyperplane order.
    pub fn atom_order(&self) -> &[Elem] {
        &self.atom_order
    }
}

/// The face poset `Σ ∪ {0̂}` with the covector behind each element.
#[derive(Clone, Debug)]
pub struct FacePoset {
    pub poset: GradedPoset,
    covectors: Vec<Option<Covector>>,
}

impl FacePoset {
    pub const BOTTOM: &'static str = "bottom";

    /// `None` for the adjoined minimum.
    pub fn covector(&self, e: Elem) -> Option<&Covector> {
        self.covectors[e.index()].as_ref()
    }

    /// `supp(F)`, the flat spanned by the face, as its zero set.
    pub fn supp(&self, e: Elem) -> Option<RankSet> {
        self.covector(e).map(|c| c.signs.zero_set())
    }

    pub fn covectors(&self) -> impl Iterator<Item = &Covector> {
        self.covectors.iter().flatten()
    }
}

/// Flattens a rational vector to display strings.
pub fn format_point(x: &[BigRational]) -> String {
    let parts: Vec<String> = x.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}
