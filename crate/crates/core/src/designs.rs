//! Subspace designs, their parameters, spreads and the β-flat predicates.
//!
//! A block family is a [`BlockSet`]: distinct `k`-subspaces of one ambient
//! `F_q^v`. The λ-parameters are exact rationals, generic over the integer
//! type (see [`crate::Lambda`] for the default instantiation).

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::FieldReduction;
use crate::num::{gaussian_binomial, CountScalar};
use crate::projspace::{BilinearForm, PointId, ProjectiveSpace, Row, Subspace};
use crate::Lambda;

/// Maximum number of wrong-coverage witnesses kept by [`is_design`].
pub const MAX_WITNESSES: usize = 10;

/// Parameters `t-(v, k, λ)_q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignParams {
    pub t: usize,
    pub v: usize,
    pub k: usize,
    pub lambda: u64,
    pub q: u32,
}

impl DesignParams {
    pub fn new(t: usize, v: usize, k: usize, lambda: u64, q: u32) -> Result<Self> {
        if !(t <= k && k + t <= v) {
            return Err(Error::InvalidParams(format!("need 0 <= t <= k <= v - t, got t={t} k={k} v={v}")));
        }
        if lambda == 0 {
            return Err(Error::InvalidParams("λ must be positive".into()));
        }
        crate::gf::prime_power_decomposition(q).ok_or(Error::NotAPrimePower(q))?;
        Ok(DesignParams { t, v, k, lambda, q })
    }

    /// `2-(7,3,1)_q`, the parameters of a `q`-analog of the Fano plane.
    pub fn fano(q: u32) -> Result<Self> {
        Self::new(2, 7, 3, 1, q)
    }

    /// Parameters of the dual design: `t-(v, v-k, λ_{0,t})_q`.
    ///
    /// Fails when `λ_{0,t}` is not an integer (the input was not admissible).
    pub fn dual(&self) -> Result<DesignParams> {
        let lam: Lambda = lambda_ij(self, 0, self.t)?;
        if !lam.is_integer() {
            return Err(Error::InvalidParams(format!("dual λ = {lam} is not an integer")));
        }
        let lambda = lam.to_integer().to_u64().ok_or_else(|| Error::OutOfRange("dual λ".into()))?;
        DesignParams::new(self.t, self.v, self.v - self.k, lambda, self.q)
    }
}

impl fmt::Display for DesignParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-({},{},{})_{}", self.t, self.v, self.k, self.lambda, self.q)
    }
}

fn ratio_of<T: CountScalar + Integer>(num: T, den: T) -> Ratio<T> {
    Ratio::new(num, den)
}

/// `λ_s = λ [v-s, t-s]_q / [k-s, t-s]_q`: the number of blocks through an
/// `s`-subspace.
pub fn lambda_s<T: CountScalar + Integer>(p: &DesignParams, s: usize) -> Result<Ratio<T>> {
    if s > p.t {
        return Err(Error::OutOfRange(format!("s={s} exceeds t={}", p.t)));
    }
    let lam = T::from_u64(p.lambda).expect("λ fits");
    let (v, k, t, s) = (p.v as i64, p.k as i64, p.t as i64, s as i64);
    let num: T = gaussian_binomial(v - s, t - s, p.q);
    let den: T = gaussian_binomial(k - s, t - s, p.q);
    Ok(ratio_of(lam * num, den))
}

/// `λ_{i,j} = λ [v-i-j, k-i]_q / [v-t, k-t]_q`: the number of blocks
/// between an `i`-subspace and a `(v-j)`-subspace.
pub fn lambda_ij<T: CountScalar + Integer>(p: &DesignParams, i: usize, j: usize) -> Result<Ratio<T>> {
    if i + j > p.t {
        return Err(Error::OutOfRange(format!("i+j={} exceeds t={}", i + j, p.t)));
    }
    let lam = T::from_u64(p.lambda).expect("λ fits");
    let (v, k, t) = (p.v as i64, p.k as i64, p.t as i64);
    let num: T = gaussian_binomial(v - (i + j) as i64, k - i as i64, p.q);
    let den: T = gaussian_binomial(v - t, k - t, p.q);
    Ok(ratio_of(lam * num, den))
}

/// Integrality verdict together with every `λ_s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Admissibility {
    pub admissible: bool,
    /// `λ_s` for `s = 0..=t`.
    #[serde(serialize_with = "ser_lambdas")]
    pub lambdas: Vec<Lambda>,
    /// Smallest `s` with non-integral `λ_s`.
    pub first_failure: Option<usize>,
}

fn ser_lambdas<S: serde::Serializer>(v: &[Lambda], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

pub fn admissible(p: &DesignParams) -> Admissibility {
    let lambdas: Vec<Lambda> = (0..=p.t).map(|s| lambda_s(p, s).expect("s <= t")).collect();
    let first_failure = lambdas.iter().position(|l| !l.is_integer());
    Admissibility { admissible: first_failure.is_none(), lambdas, first_failure }
}

/// The λ-triangle: row `r` lists `λ_{r,0}, λ_{r-1,1}, ..., λ_{0,r}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaTriangle {
    pub params: DesignParams,
    pub rows: Vec<Vec<Lambda>>,
}

impl LambdaTriangle {
    pub fn new(p: &DesignParams) -> Self {
        let rows = (0..=p.t)
            .map(|r| (0..=r).map(|j| lambda_ij(p, r - j, j).expect("i+j <= t")).collect())
            .collect();
        LambdaTriangle { params: *p, rows }
    }

    /// Entry `λ_{i,j}`.
    pub fn get(&self, i: usize, j: usize) -> &Lambda {
        &self.rows[i + j][j]
    }
}

impl fmt::Display for LambdaTriangle {
    /// Centered triangle, one row per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> =
            self.rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
        let width = cells.iter().flatten().map(|c| c.chars().count()).max().unwrap_or(1);
        let full = cells.len() * (width + 1) - 1;
        for row in &cells {
            let line: Vec<String> = row.iter().map(|c| format!("{c:^width$}")).collect();
            let line = line.join(" ");
            let indent = (full - line.chars().count()) / 2;
            writeln!(f, "{}{}", " ".repeat(indent), line.trim_end())?;
        }
        Ok(())
    }
}

/// A set of distinct `k`-subspaces of `F_q^v`, kept in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "BlockSetRepr", into = "BlockSetRepr")]
pub struct BlockSet {
    v: usize,
    q: u32,
    k: usize,
    blocks: Vec<Subspace>,
}

#[derive(Serialize, Deserialize)]
struct BlockSetRepr {
    #[serde(default = "schema_version")]
    schema_version: u32,
    v: usize,
    k: usize,
    q: u32,
    blocks: Vec<Subspace>,
}

fn schema_version() -> u32 {
    crate::SCHEMA_VERSION
}

impl From<BlockSet> for BlockSetRepr {
    fn from(b: BlockSet) -> Self {
        BlockSetRepr { schema_version: crate::SCHEMA_VERSION, v: b.v, k: b.k, q: b.q, blocks: b.blocks }
    }
}

impl TryFrom<BlockSetRepr> for BlockSet {
    type Error = Error;
    fn try_from(r: BlockSetRepr) -> Result<Self> {
        BlockSet::new(r.v, r.q, r.k, r.blocks)
    }
}

impl BlockSet {
    pub fn new(v: usize, q: u32, k: usize, mut blocks: Vec<Subspace>) -> Result<Self> {
        if let Some(b) = blocks.iter().find(|b| b.v() != v || b.q() != q || b.dim() != k) {
            return Err(Error::ParamMismatch(format!("block {b} is not a {k}-subspace of F_{q}^{v}")));
        }
        blocks.sort_unstable();
        if blocks.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput("repeated block".into()));
        }
        Ok(BlockSet { v, q, k, blocks })
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn blocks(&self) -> &[Subspace] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Copy without one block.
    pub fn without(&self, index: usize) -> BlockSet {
        let mut blocks = self.blocks.clone();
        blocks.remove(index);
        BlockSet { blocks, ..self.clone() }
    }

    fn check_space(&self, space: &ProjectiveSpace) -> Result<()> {
        if space.v() == self.v && space.q() == self.q {
            Ok(())
        } else {
            Err(Error::AmbientMismatch)
        }
    }
}

/// Outcome of [`is_design`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DesignReport {
    pub pass: bool,
    pub params: DesignParams,
    /// Number of `t`-subspaces examined.
    pub checked: u64,
    /// Number of `t`-subspaces whose coverage differs from `λ`.
    pub mismatches: u64,
    pub witnesses: Vec<CoverageWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverageWitness {
    pub subspace: Subspace,
    pub count: u64,
}

/// Checks that every `t`-subspace lies in exactly `λ` blocks.
pub fn is_design(space: &ProjectiveSpace, blocks: &BlockSet, params: &DesignParams) -> Result<DesignReport> {
    blocks.check_space(space)?;
    if blocks.k != params.k || blocks.v != params.v || blocks.q != params.q {
        return Err(Error::ParamMismatch(format!(
            "blocks are {}-subspaces of F_{}^{}, parameters are {params}",
            blocks.k, blocks.q, blocks.v
        )));
    }
    let mut coverage: HashMap<Subspace, u64> = HashMap::new();
    for b in &blocks.blocks {
        for s in space.subspaces_of(b, params.t)? {
            *coverage.entry(s).or_default() += 1;
        }
    }
    let mut checked = 0;
    let mut mismatches = 0;
    let mut witnesses = Vec::new();
    for s in space.enumerate_subspaces(params.t)? {
        checked += 1;
        let count = coverage.get(&s).copied().unwrap_or(0);
        if count != params.lambda {
            mismatches += 1;
            if witnesses.len() < MAX_WITNESSES {
                witnesses.push(CoverageWitness { subspace: s, count });
            }
        }
    }
    Ok(DesignReport { pass: mismatches == 0, params: *params, checked, mismatches, witnesses })
}

/// `{B^perp : B in blocks}`.
pub fn dual_design(space: &ProjectiveSpace, blocks: &BlockSet, form: &BilinearForm) -> Result<BlockSet> {
    blocks.check_space(space)?;
    let duals = blocks.blocks.iter().map(|b| space.dualize(b, form)).collect::<Result<Vec<_>>>()?;
    BlockSet::new(blocks.v, blocks.q, blocks.v - blocks.k, duals)
}

/// `Der_P(D) = {B/P : P <= B in D}` in the quotient frame of `V/P`.
pub fn derived_design(space: &ProjectiveSpace, blocks: &BlockSet, p: PointId) -> Result<BlockSet> {
    blocks.check_space(space)?;
    if p.0 >= space.n_points() || blocks.k == 0 {
        return Err(Error::UnknownId(p.0));
    }
    let ps = space.point_subspace(p);
    let derived = blocks
        .blocks
        .iter()
        .filter(|b| space.is_subspace_of(&ps, b))
        .map(|b| space.quotient(b, &ps))
        .collect::<Result<Vec<_>>>()?;
    BlockSet::new(blocks.v - 1, blocks.q, blocks.k - 1, derived)
}

/// The Desarguesian `(k-1)`-spread of `F_q^v`: the `F_{q^k}`-points of
/// `F_{q^k}^{v/k}` read as `k`-subspaces over `F_q`.
pub fn desarguesian_spread(space: &ProjectiveSpace, k: usize) -> Result<BlockSet> {
    let v = space.v();
    if k == 0 || v % k != 0 {
        return Err(Error::NotDivisible { v, k });
    }
    let fr = FieldReduction::new(space.q(), k)?;
    let m = v / k;
    let big_q = fr.ext_order() as usize;
    let column = |a: usize, j: usize| -> Vec<_> { fr.mul_matrix(a as u32).iter().map(|row| row[j]).collect() };

    let mut blocks = Vec::new();
    // normalized F_{q^k}-vectors: leading coordinate equal to the element 1
    for lead in 0..m {
        let free = m - 1 - lead;
        for code in 0..big_q.pow(free as u32) {
            let mut coords = vec![0usize; m];
            coords[lead] = 1;
            let mut c = code;
            for slot in coords.iter_mut().skip(lead + 1).rev() {
                *slot = c % big_q;
                c /= big_q;
            }
            let rows: Vec<Row> =
                (0..k).map(|j| coords.iter().flat_map(|&a| column(a, j)).collect()).collect();
            blocks.push(space.span(rows)?);
        }
    }
    BlockSet::new(v, space.q(), k, blocks)
}

/// Uncovered points of a partial spread, in increasing order.
pub fn spread_holes(space: &ProjectiveSpace, blocks: &BlockSet) -> Result<Vec<PointId>> {
    blocks.check_space(space)?;
    let mut covered = vec![false; space.n_points()];
    for b in &blocks.blocks {
        for p in space.points_of(b) {
            if std::mem::replace(&mut covered[p.0], true) {
                return Err(Error::NotPartialSpread { point: p.0 });
            }
        }
    }
    Ok(covered.iter().enumerate().filter(|(_, &c)| !c).map(|(i, _)| PointId(i)).collect())
}

fn ensure_spread(space: &ProjectiveSpace, blocks: &BlockSet) -> Result<()> {
    match spread_holes(space, blocks) {
        Ok(holes) if holes.is_empty() && blocks.k > 0 => Ok(()),
        Ok(_) | Err(Error::NotPartialSpread { .. }) => Err(Error::NotASpread),
        Err(e) => Err(e),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeometricVerdict {
    pub geometric: bool,
    /// A `2k`-subspace containing a block count outside `{0, 1, q^k + 1}`.
    pub witness: Option<CoverageWitness>,
}

/// A spread is geometric when every join of two distinct blocks contains
/// exactly `q^k + 1` blocks. Only joins are scanned: a `2k`-subspace holding
/// two blocks is their join.
pub fn is_geometric_spread(space: &ProjectiveSpace, blocks: &BlockSet) -> Result<GeometricVerdict> {
    ensure_spread(space, blocks)?;
    let target = (space.q() as u64).pow(blocks.k as u32) + 1;
    let mut seen: HashSet<Subspace> = HashSet::new();
    for (i, a) in blocks.blocks.iter().enumerate() {
        for b in &blocks.blocks[i + 1..] {
            let j = space.join(a, b)?;
            if !seen.insert(j.clone()) {
                continue;
            }
            let count = blocks.blocks.iter().filter(|c| space.is_subspace_of(c, &j)).count() as u64;
            if count != target {
                return Ok(GeometricVerdict {
                    geometric: false,
                    witness: Some(CoverageWitness { subspace: j, count }),
                });
            }
        }
    }
    Ok(GeometricVerdict { geometric: true, witness: None })
}

/// Whether the derived design at `p` is a geometric spread.
pub fn is_alpha_point(space: &ProjectiveSpace, blocks: &BlockSet, p: PointId) -> Result<bool> {
    let derived = derived_design(space, blocks, p)?;
    let quotient = space.with_dim(space.v() - 1);
    match is_geometric_spread(&quotient, &derived) {
        Ok(v) => Ok(v.geometric),
        Err(Error::NotASpread) => Err(Error::DerivedNotASpread),
        Err(e) => Err(e),
    }
}

/// Cone over a block family: embeds `F_q^v` as the last `v` coordinates of
/// `F_q^{v+1}` and adds the first unit vector to every block. The apex is
/// the point with id `PointId(n - 1)` of the larger space, i.e. `e_1`.
pub fn cone(space: &ProjectiveSpace, blocks: &BlockSet) -> Result<(ProjectiveSpace, Subspace, BlockSet)> {
    blocks.check_space(space)?;
    let big = space.with_dim(space.v() + 1);
    let apex = big.span_unchecked(vec![big.unit(0)]);
    let lifted = blocks
        .blocks
        .iter()
        .map(|b| {
            let mut rows = vec![big.unit(0)];
            rows.extend(b.rows().iter().map(|r| {
                let mut x = vec![crate::gf::FieldElement::ZERO];
                x.extend_from_slice(r);
                x
            }));
            big.span_unchecked(rows)
        })
        .collect();
    let lifted = BlockSet::new(big.v(), big.q(), blocks.k + 1, lifted)?;
    Ok((big, apex, lifted))
}

/// The smallest β-flat configuration: `q^2 + 1` planes of `F_q^5` through a
/// common point, obtained as the cone over the Desarguesian line spread of
/// `F_q^4`. Returns the space, the focal point and the planes.
pub fn beta_flat_model(q: u32) -> Result<(ProjectiveSpace, Subspace, BlockSet)> {
    let base = ProjectiveSpace::with_q(4, q)?;
    let spread = desarguesian_spread(&base, 2)?;
    cone(&base, &spread)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BetaFlatReport {
    pub flat: Subspace,
    pub focal: Option<PointId>,
    pub block_count: usize,
}

/// The common point of all blocks inside a 5-subspace `flat`, if unique.
/// With fewer than two blocks inside, no focal point is reported.
pub fn beta_flat_focus(space: &ProjectiveSpace, blocks: &BlockSet, flat: &Subspace) -> Result<BetaFlatReport> {
    blocks.check_space(space)?;
    if flat.dim() != 5 {
        return Err(Error::InvalidInput(format!("β-flat candidates are 5-subspaces, got dimension {}", flat.dim())));
    }
    let inside: Vec<&Subspace> = blocks.blocks.iter().filter(|b| space.is_subspace_of(b, flat)).collect();
    let mut focal = None;
    if inside.len() >= 2 {
        let mut common = inside[0].clone();
        for b in &inside[1..] {
            common = space.meet(&common, b)?;
        }
        focal = space.point_of(&common);
    }
    Ok(BetaFlatReport { flat: flat.clone(), focal, block_count: inside.len() })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SolidClassification {
    pub rich: Vec<Subspace>,
    pub poor: Vec<Subspace>,
}

/// Splits the solids (4-subspaces) of `within` into rich (one block) and
/// poor (no block). A solid with two or more planes is an error.
pub fn classify_solids(space: &ProjectiveSpace, blocks: &BlockSet, within: &Subspace) -> Result<SolidClassification> {
    blocks.check_space(space)?;
    if blocks.k != 3 {
        return Err(Error::ParamMismatch(format!("rich/poor solids need planes, got k={}", blocks.k)));
    }
    if within.dim() < 4 {
        return Err(Error::InvalidInput("no solids in a subspace of dimension < 4".into()));
    }
    let candidates: Vec<&Subspace> = blocks.blocks.iter().filter(|b| space.is_subspace_of(b, within)).collect();
    let mut out = SolidClassification::default();
    for solid in space.subspaces_of(within, 4)? {
        let count = candidates.iter().filter(|b| space.is_subspace_of(b, &solid)).count();
        match count {
            0 => out.poor.push(solid),
            1 => out.rich.push(solid),
            _ => return Err(Error::NotSteinerLike { solid: Box::new(solid), count }),
        }
    }
    Ok(out)
}

/// The three checkable statements about a β-flat `flat` with focal point
/// `focal`:
/// (a) every other point of `flat` lies on exactly one block inside it,
/// (b) a solid of `flat` is poor iff it misses `focal`,
/// (c) on each poor solid the traces of the blocks form a line spread.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BetaFlatStructure {
    pub block_count: usize,
    pub part_a: bool,
    /// `D|^F / P` passes the spread check in `F/P`.
    pub part_a_quotient_spread: bool,
    pub part_b: bool,
    pub part_c: bool,
    pub rich: usize,
    pub poor: usize,
}

pub fn check_beta_flat_structure(
    space: &ProjectiveSpace,
    blocks: &BlockSet,
    flat: &Subspace,
    focal: &Subspace,
) -> Result<BetaFlatStructure> {
    blocks.check_space(space)?;
    let pid = space.point_of(focal).ok_or_else(|| Error::InvalidInput("focal must be a point".into()))?;
    let inside: Vec<Subspace> = blocks.blocks.iter().filter(|b| space.is_subspace_of(b, flat)).cloned().collect();

    // (a)
    let mut cover: HashMap<PointId, usize> = HashMap::new();
    for b in &inside {
        for p in space.points_of(b) {
            *cover.entry(p).or_default() += 1;
        }
    }
    let part_a = space.points_of(flat).into_iter().filter(|&p| p != pid).all(|p| cover.get(&p) == Some(&1));
    let quotient_blocks =
        inside.iter().filter(|b| space.is_subspace_of(focal, b)).map(|b| space.quotient(b, focal)).collect::<Result<Vec<_>>>()?;
    let fq = space.quotient(flat, focal)?;
    let qspace = space.with_dim(space.v() - 1);
    // F/P may be a proper subspace of V/P; check the spread inside it
    let part_a_quotient_spread = {
        let mut seen: HashSet<PointId> = HashSet::new();
        let mut ok = quotient_blocks.iter().all(|l| qspace.is_subspace_of(l, &fq));
        for l in &quotient_blocks {
            for p in qspace.points_of(l) {
                ok &= seen.insert(p);
            }
        }
        ok && seen.len() == qspace.points_of(&fq).len()
    };

    // (b)
    let inside_set = BlockSet::new(blocks.v, blocks.q, blocks.k, inside.clone())?;
    let classes = classify_solids(space, &inside_set, flat)?;
    let part_b = classes.poor.iter().all(|s| !space.is_subspace_of(focal, s))
        && classes.rich.iter().all(|s| space.is_subspace_of(focal, s));

    // (c)
    let mut part_c = true;
    for s in &classes.poor {
        let traces = inside.iter().map(|b| space.meet(b, s)).collect::<Result<Vec<_>>>()?;
        let mut seen = BTreeSet::new();
        let mut ok = traces.iter().all(|l| l.dim() == 2);
        for l in &traces {
            for p in space.points_of(l) {
                ok &= seen.insert(p);
            }
        }
        part_c &= ok && seen.len() == space.points_of(s).len();
    }

    Ok(BetaFlatStructure {
        block_count: inside.len(),
        part_a,
        part_a_quotient_spread,
        part_b,
        part_c,
        rich: classes.rich.len(),
        poor: classes.poor.len(),
    })
}

/// The focal-point map on the 5-subspaces of `hyperplane` and its would-be
/// inverse on the points of `hyperplane`, for an arbitrary plane family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlphaBetaReport {
    pub flats: usize,
    pub points: usize,
    /// 5-subspaces with a focal point.
    pub flats_with_focal: usize,
    /// Points that are the focal point of exactly one 5-subspace.
    pub points_with_unique_flat: usize,
    /// Both maps are total and mutually inverse.
    pub mutually_inverse: bool,
}

pub fn alpha_beta_report(space: &ProjectiveSpace, blocks: &BlockSet, hyperplane: &Subspace) -> Result<AlphaBetaReport> {
    blocks.check_space(space)?;
    if hyperplane.dim() < 5 {
        return Err(Error::InvalidInput("hyperplane must have dimension at least 5".into()));
    }
    let flats = space.subspaces_of(hyperplane, 5)?;
    let points = space.points_of(hyperplane);
    let mut focal_of: Vec<Option<PointId>> = Vec::with_capacity(flats.len());
    let mut flats_at: HashMap<PointId, usize> = HashMap::new();
    for f in &flats {
        let r = beta_flat_focus(space, blocks, f)?;
        if let Some(p) = r.focal {
            *flats_at.entry(p).or_default() += 1;
        }
        focal_of.push(r.focal);
    }
    let flats_with_focal = focal_of.iter().flatten().count();
    let points_with_unique_flat = points.iter().filter(|p| flats_at.get(p) == Some(&1)).count();
    let mutually_inverse =
        flats_with_focal == flats.len() && points_with_unique_flat == points.len() && flats.len() == points.len();
    Ok(AlphaBetaReport {
        flats: flats.len(),
        points: points.len(),
        flats_with_focal,
        points_with_unique_flat,
        mutually_inverse,
    })
}
