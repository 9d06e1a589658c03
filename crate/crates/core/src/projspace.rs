//! The subspace lattice of `V = F_q^v`, i.e. the projective geometry
//! `PG(v-1, q)`.
//!
//! A [`Subspace`] is stored as its reduced row-echelon basis (leftmost pivots,
//! pivot entries one, zeros above and below each pivot), so equality of
//! subspaces is equality of matrices. Points carry dense ids equal to the
//! lexicographic rank of their normalized coordinate vector.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldSpec};
use crate::num::gaussian_binomial_saturating;

/// Largest number of subspaces a single enumeration may materialize.
pub const ENUMERATION_BUDGET: u64 = 10_000_000;

pub type Row = Vec<FieldElement>;

/// Dense id of a point of `PG(v-1, q)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PointId(pub usize);

/// A subspace of `F_q^v` in canonical reduced row-echelon form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "SubspaceRepr", into = "SubspaceRepr")]
pub struct Subspace {
    q: u32,
    v: usize,
    k: usize,
    rows: Vec<Row>,
}

#[derive(Serialize, Deserialize)]
struct SubspaceRepr {
    v: usize,
    k: usize,
    q: u32,
    rows: Vec<Vec<u8>>,
}

impl From<Subspace> for SubspaceRepr {
    fn from(s: Subspace) -> Self {
        SubspaceRepr {
            v: s.v,
            k: s.k,
            q: s.q,
            rows: s.rows.iter().map(|r| r.iter().map(|x| x.index() as u8).collect()).collect(),
        }
    }
}

impl TryFrom<SubspaceRepr> for Subspace {
    type Error = Error;

    fn try_from(r: SubspaceRepr) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidInput(format!("subspace: {msg}"));
        if r.q < 2 || r.q > crate::gf::MAX_FIELD_ORDER {
            return Err(bad("field order out of range"));
        }
        if r.rows.len() != r.k || r.k > r.v {
            return Err(bad("row count does not match k"));
        }
        let mut last_pivot: Option<usize> = None;
        let mut pivots = Vec::with_capacity(r.k);
        for row in &r.rows {
            if row.len() != r.v || row.iter().any(|&x| x as u32 >= r.q) {
                return Err(bad("malformed row"));
            }
            let pivot = row.iter().position(|&x| x != 0).ok_or_else(|| bad("zero row"))?;
            if row[pivot] != 1 || last_pivot.is_some_and(|lp| pivot <= lp) {
                return Err(bad("not in reduced row-echelon form"));
            }
            last_pivot = Some(pivot);
            pivots.push(pivot);
        }
        for (i, &c) in pivots.iter().enumerate() {
            if r.rows.iter().enumerate().any(|(j, row)| j != i && row[c] != 0) {
                return Err(bad("pivot column not cleared"));
            }
        }
        Ok(Subspace {
            q: r.q,
            v: r.v,
            k: r.k,
            rows: r
                .rows
                .into_iter()
                .map(|row| row.into_iter().map(FieldElement::from_raw).collect())
                .collect(),
        })
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(v={}, k={}, q={}, [", self.v, self.k, self.q)?;
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            for x in row {
                write!(f, "{}", x.index())?;
            }
        }
        write!(f, "])")
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "(")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", x.index())?;
            }
            write!(f, ")")?;
        }
        write!(f, ">")
    }
}

impl Subspace {
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Ambient dimension.
    pub fn v(&self) -> usize {
        self.v
    }

    /// Algebraic dimension.
    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows
            .iter()
            .map(|r| r.iter().position(|x| !x.is_zero()).expect("RREF rows are nonzero"))
            .collect()
    }

    fn same_ambient(&self, other: &Subspace) -> Result<()> {
        if self.q == other.q && self.v == other.v {
            Ok(())
        } else {
            Err(Error::AmbientMismatch)
        }
    }
}

/// Row-reduces `rows` in place into RREF and drops zero rows.
pub(crate) fn row_reduce(f: &FieldSpec, mut rows: Vec<Row>) -> Vec<Row> {
    let n = rows.len();
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        if r == n {
            break;
        }
        let Some(p) = (r..n).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = f.inv_nonzero(rows[r][c]);
        if inv != FieldElement::ONE {
            for x in rows[r].iter_mut() {
                *x = f.mul(*x, inv);
            }
        }
        for i in 0..n {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let factor = f.neg(rows[i][c]);
            let (pivot_row, target) = if i < r {
                let (a, b) = rows.split_at_mut(r);
                (&b[0], &mut a[i])
            } else {
                let (a, b) = rows.split_at_mut(i);
                (&a[r], &mut b[0])
            };
            for (t, &pv) in target.iter_mut().zip(pivot_row.iter()).skip(c) {
                *t = f.add(*t, f.mul(factor, pv));
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

/// A nondegeneracy-aware bilinear form on `F_q^v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormKind {
    Symmetric,
    Alternating,
    Generic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearForm {
    gram: Vec<Row>,
    kind: FormKind,
}

impl BilinearForm {
    pub fn from_gram(f: &FieldSpec, gram: Vec<Row>) -> Result<Self> {
        let v = gram.len();
        if gram.iter().any(|r| r.len() != v) {
            return Err(Error::InvalidInput("Gram matrix must be square".into()));
        }
        let transpose_is = |g: &dyn Fn(FieldElement) -> FieldElement| {
            (0..v).all(|i| (0..v).all(|j| gram[j][i] == g(gram[i][j])))
        };
        let kind = if (0..v).all(|i| gram[i][i].is_zero()) && transpose_is(&|x| f.neg(x)) {
            FormKind::Alternating
        } else if transpose_is(&|x| x) {
            FormKind::Symmetric
        } else {
            FormKind::Generic
        };
        Ok(BilinearForm { gram, kind })
    }

    /// The dot product `x . y`.
    pub fn standard(f: &FieldSpec, v: usize) -> Self {
        let gram = (0..v)
            .map(|i| (0..v).map(|j| if i == j { f.one() } else { f.zero() }).collect())
            .collect();
        Self::from_gram(f, gram).expect("identity is square")
    }

    /// `x1 y2 - x2 y1 + x3 y4 - x4 y3 + ...` on an even-dimensional space.
    pub fn symplectic(f: &FieldSpec, v: usize) -> Result<Self> {
        if v % 2 != 0 {
            return Err(Error::InvalidInput("symplectic form needs even dimension".into()));
        }
        let mut gram = vec![vec![f.zero(); v]; v];
        for b in (0..v).step_by(2) {
            gram[b][b + 1] = f.one();
            gram[b + 1][b] = f.neg(f.one());
        }
        Self::from_gram(f, gram)
    }

    pub fn gram(&self) -> &[Row] {
        &self.gram
    }

    pub fn kind(&self) -> FormKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn eval(&self, f: &FieldSpec, x: &[FieldElement], y: &[FieldElement]) -> FieldElement {
        let mut acc = f.zero();
        for (i, &xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                acc = f.add(acc, f.mul(xi, f.mul(self.gram[i][j], yj)));
            }
        }
        acc
    }

    pub fn is_nondegenerate(&self, f: &FieldSpec) -> bool {
        row_reduce(f, self.gram.clone()).len() == self.dim()
    }
}

/// `PG(v-1, q)`: a field together with an ambient dimension.
#[derive(Clone, Debug)]
pub struct ProjectiveSpace {
    field: Arc<FieldSpec>,
    v: usize,
    n_points: usize,
}

impl ProjectiveSpace {
    pub fn new(v: usize, field: Arc<FieldSpec>) -> Self {
        let n_points = gaussian_binomial_saturating(v, 1, field.q()) as usize;
        ProjectiveSpace { field, v, n_points }
    }

    pub fn with_q(v: usize, q: u32) -> Result<Self> {
        Ok(Self::new(v, Arc::new(FieldSpec::new(q)?)))
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn field_arc(&self) -> Arc<FieldSpec> {
        Arc::clone(&self.field)
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    /// `[v]_q`.
    pub fn n_points(&self) -> usize {
        self.n_points
    }

    /// The projective space of one dimension less, sharing the field.
    pub fn with_dim(&self, v: usize) -> ProjectiveSpace {
        ProjectiveSpace::new(v, self.field_arc())
    }

    fn check(&self, s: &Subspace) -> Result<()> {
        if s.q == self.q() && s.v == self.v {
            Ok(())
        } else {
            Err(Error::AmbientMismatch)
        }
    }

    /// Span of arbitrary vectors of length `v`.
    pub fn span(&self, rows: Vec<Row>) -> Result<Subspace> {
        if rows.iter().any(|r| r.len() != self.v || r.iter().any(|x| x.index() >= self.q() as usize)) {
            return Err(Error::InvalidInput(format!("vectors must have length {}", self.v)));
        }
        Ok(self.span_unchecked(rows))
    }

    pub(crate) fn span_unchecked(&self, rows: Vec<Row>) -> Subspace {
        let rows = row_reduce(&self.field, rows);
        Subspace { q: self.q(), v: self.v, k: rows.len(), rows }
    }

    /// Span of vectors given as raw element indices.
    pub fn span_indices(&self, rows: &[Vec<u32>]) -> Result<Subspace> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| self.field.element(x)).collect::<Result<Row>>())
            .collect::<Result<Vec<_>>>()?;
        self.span(rows)
    }

    pub fn zero_subspace(&self) -> Subspace {
        Subspace { q: self.q(), v: self.v, k: 0, rows: Vec::new() }
    }

    pub fn whole(&self) -> Subspace {
        let f = self.field();
        let rows = (0..self.v)
            .map(|i| (0..self.v).map(|j| if i == j { f.one() } else { f.zero() }).collect())
            .collect();
        Subspace { q: self.q(), v: self.v, k: self.v, rows }
    }

    /// The `i`-th unit vector (0-based).
    pub fn unit(&self, i: usize) -> Row {
        let mut r = vec![FieldElement::ZERO; self.v];
        r[i] = FieldElement::ONE;
        r
    }

    // ---- points -------------------------------------------------------

    fn normalize(&self, x: &[FieldElement]) -> Option<Row> {
        let f = self.field();
        let lead = *x.iter().find(|a| !a.is_zero())?;
        let inv = f.inv_nonzero(lead);
        Some(x.iter().map(|&a| f.mul(a, inv)).collect())
    }

    /// Id of the point spanned by a nonzero vector.
    pub fn point_id(&self, x: &[FieldElement]) -> Option<PointId> {
        if x.len() != self.v {
            return None;
        }
        let x = self.normalize(x)?;
        Some(PointId(self.rank_normalized(&x)))
    }

    fn rank_normalized(&self, x: &[FieldElement]) -> usize {
        let q = self.q() as usize;
        let i = x.iter().position(|a| !a.is_zero()).expect("nonzero");
        let before = (q.pow((self.v - 1 - i) as u32) - 1) / (q - 1);
        let tail = x[i + 1..].iter().fold(0usize, |acc, a| acc * q + a.index());
        before + tail
    }

    /// Normalized coordinate vector of a point.
    pub fn point_vector(&self, p: PointId) -> Row {
        assert!(p.0 < self.n_points, "point id {} out of range", p.0);
        let q = self.q() as usize;
        let mut rest = p.0;
        // pivot v-1 owns 1 vector, pivot v-2 owns q, ...
        let mut pivot = self.v - 1;
        loop {
            let block = q.pow((self.v - 1 - pivot) as u32);
            if rest < block {
                break;
            }
            rest -= block;
            pivot -= 1;
        }
        let mut x = vec![FieldElement::ZERO; self.v];
        x[pivot] = FieldElement::ONE;
        for j in (pivot + 1..self.v).rev() {
            x[j] = FieldElement::from_raw((rest % q) as u8);
            rest /= q;
        }
        x
    }

    pub fn point_subspace(&self, p: PointId) -> Subspace {
        let x = self.point_vector(p);
        Subspace { q: self.q(), v: self.v, k: 1, rows: vec![x] }
    }

    /// Id of a 1-subspace.
    pub fn point_of(&self, s: &Subspace) -> Option<PointId> {
        (s.k == 1 && s.q == self.q() && s.v == self.v).then(|| PointId(self.rank_normalized(&s.rows[0])))
    }

    pub fn all_points(&self) -> impl Iterator<Item = PointId> {
        (0..self.n_points).map(PointId)
    }

    /// Ids of all points of `s`, in increasing order.
    pub fn points_of(&self, s: &Subspace) -> Vec<PointId> {
        let f = self.field();
        let q = self.q() as usize;
        let k = s.k;
        let mut out = Vec::new();
        // Normalized coefficient vectors give normalized combinations,
        // because the basis is in RREF.
        for lead in 0..k {
            let free = k - 1 - lead;
            for code in 0..q.pow(free as u32) {
                let mut x = s.rows[lead].clone();
                let mut c = code;
                for r in (lead + 1..k).rev() {
                    let coef = FieldElement::from_raw((c % q) as u8);
                    c /= q;
                    if !coef.is_zero() {
                        for (xi, &bi) in x.iter_mut().zip(&s.rows[r]) {
                            *xi = f.add(*xi, f.mul(coef, bi));
                        }
                    }
                }
                out.push(PointId(self.rank_normalized(&x)));
            }
        }
        out.sort_unstable();
        out
    }

    pub fn point_set(&self, s: &Subspace) -> FixedBitSet {
        let mut bits = FixedBitSet::with_capacity(self.n_points);
        for p in self.points_of(s) {
            bits.insert(p.0);
        }
        bits
    }

    // ---- lattice operations --------------------------------------------

    /// Reduces `x` against the RREF rows of `s`; zero iff `x` lies in `s`.
    fn reduce(&self, s: &Subspace, x: &mut [FieldElement]) {
        let f = self.field();
        for (row, piv) in s.rows.iter().zip(s.pivots()) {
            let c = x[piv];
            if !c.is_zero() {
                let factor = f.neg(c);
                for (xi, &ri) in x.iter_mut().zip(row) {
                    *xi = f.add(*xi, f.mul(factor, ri));
                }
            }
        }
    }

    pub fn contains_vector(&self, s: &Subspace, x: &[FieldElement]) -> bool {
        let mut x = x.to_vec();
        self.reduce(s, &mut x);
        x.iter().all(|a| a.is_zero())
    }

    /// `u <= w`.
    pub fn is_subspace_of(&self, u: &Subspace, w: &Subspace) -> bool {
        u.same_ambient(w).is_ok() && u.k <= w.k && u.rows.iter().all(|r| self.contains_vector(w, r))
    }

    pub fn join(&self, u: &Subspace, w: &Subspace) -> Result<Subspace> {
        self.check(u)?;
        self.check(w)?;
        let rows = u.rows.iter().chain(&w.rows).cloned().collect();
        Ok(self.span_unchecked(rows))
    }

    /// Basis of `{x : r . x = 0 for all rows r}`.
    fn null_space(&self, rows: &[Row]) -> Vec<Row> {
        let f = self.field();
        let rref = row_reduce(f, rows.to_vec());
        let pivots: Vec<usize> =
            rref.iter().map(|r| r.iter().position(|x| !x.is_zero()).unwrap()).collect();
        let mut out = Vec::new();
        for c in (0..self.v).filter(|c| !pivots.contains(c)) {
            let mut x = vec![FieldElement::ZERO; self.v];
            x[c] = FieldElement::ONE;
            for (row, &p) in rref.iter().zip(&pivots) {
                x[p] = f.neg(row[c]);
            }
            out.push(x);
        }
        out
    }

    pub fn meet(&self, u: &Subspace, w: &Subspace) -> Result<Subspace> {
        self.check(u)?;
        self.check(w)?;
        let mut perp = self.null_space(&u.rows);
        perp.extend(self.null_space(&w.rows));
        let rows = if perp.is_empty() { self.whole().rows } else { self.null_space(&perp) };
        Ok(self.span_unchecked(rows))
    }

    /// `U^perp = {x : form(x, u) = 0 for all u in U}`.
    pub fn dualize(&self, u: &Subspace, form: &BilinearForm) -> Result<Subspace> {
        self.check(u)?;
        if form.dim() != self.v {
            return Err(Error::AmbientMismatch);
        }
        let f = self.field();
        if !form.is_nondegenerate(f) {
            return Err(Error::DegenerateForm);
        }
        if u.k == 0 {
            return Ok(self.whole());
        }
        // form(x, u) = sum_j x_j (G u)_j
        let conditions: Vec<Row> = u
            .rows
            .iter()
            .map(|ur| {
                (0..self.v)
                    .map(|j| {
                        let mut acc = f.zero();
                        for (l, &ul) in ur.iter().enumerate() {
                            acc = f.add(acc, f.mul(form.gram[j][l], ul));
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        Ok(self.span_unchecked(self.null_space(&conditions)))
    }

    /// Image of `x` in the quotient coordinate frame of `V/p`: reduce by
    /// `p`'s RREF basis and keep the non-pivot coordinates. Equivalent to
    /// completing `p`'s basis with the unit vectors of its non-pivot columns.
    pub fn project(&self, p: &Subspace, x: &[FieldElement]) -> Row {
        let mut x = x.to_vec();
        self.reduce(p, &mut x);
        let pivots = p.pivots();
        x.into_iter().enumerate().filter(|(i, _)| !pivots.contains(i)).map(|(_, a)| a).collect()
    }

    /// `b/p` as a subspace of `F_q^{v - dim p}`.
    pub fn quotient(&self, b: &Subspace, p: &Subspace) -> Result<Subspace> {
        self.check(b)?;
        self.check(p)?;
        if !self.is_subspace_of(p, b) {
            return Err(Error::NotContained);
        }
        let target = self.with_dim(self.v - p.k);
        let rows = b.rows.iter().map(|r| self.project(p, r)).collect();
        Ok(target.span_unchecked(rows))
    }

    /// Preimage in `V` of a subspace of the quotient frame of `V/p`.
    pub fn preimage(&self, p: &Subspace, s: &Subspace) -> Result<Subspace> {
        self.check(p)?;
        if s.v != self.v - p.k || s.q != self.q() {
            return Err(Error::AmbientMismatch);
        }
        let pivots = p.pivots();
        let free: Vec<usize> = (0..self.v).filter(|c| !pivots.contains(c)).collect();
        let mut rows: Vec<Row> = p.rows.clone();
        for r in &s.rows {
            let mut x = vec![FieldElement::ZERO; self.v];
            for (&c, &a) in free.iter().zip(r) {
                x[c] = a;
            }
            rows.push(x);
        }
        Ok(self.span_unchecked(rows))
    }

    // ---- enumeration ----------------------------------------------------

    /// All `k`-subspaces in lexicographic order of their RREF matrices.
    pub fn enumerate_subspaces(&self, k: usize) -> Result<Vec<Subspace>> {
        if k > self.v {
            return Err(Error::OutOfRange(format!("k={k} exceeds v={}", self.v)));
        }
        let count = gaussian_binomial_saturating(self.v, k, self.q());
        if count > ENUMERATION_BUDGET {
            return Err(Error::BudgetExceeded(format!(
                "{count} subspaces of dimension {k} in F_{}^{}",
                self.q(),
                self.v
            )));
        }
        let mut out = Vec::with_capacity(count as usize);
        let q = self.q() as usize;
        let mut pivots: Vec<usize> = (0..k).collect();
        loop {
            let free: Vec<(usize, usize)> = (0..k)
                .flat_map(|r| {
                    let pivots = &pivots;
                    (pivots[r] + 1..self.v).filter(move |c| !pivots.contains(c)).map(move |c| (r, c))
                })
                .collect();
            let total = q.pow(free.len() as u32);
            for code in 0..total {
                let mut rows = vec![vec![FieldElement::ZERO; self.v]; k];
                for (r, &c) in pivots.iter().enumerate() {
                    rows[r][c] = FieldElement::ONE;
                }
                let mut c = code;
                for &(r, col) in free.iter().rev() {
                    rows[r][col] = FieldElement::from_raw((c % q) as u8);
                    c /= q;
                }
                out.push(Subspace { q: self.q(), v: self.v, k, rows });
            }
            // next k-combination of pivot columns
            let Some(i) = (0..k).rev().find(|&i| pivots[i] < self.v - k + i) else { break };
            pivots[i] += 1;
            for j in i + 1..k {
                pivots[j] = pivots[j - 1] + 1;
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// All `k`-subspaces contained in `within`, sorted.
    pub fn subspaces_of(&self, within: &Subspace, k: usize) -> Result<Vec<Subspace>> {
        self.check(within)?;
        let local = self.with_dim(within.k);
        let mut out: Vec<Subspace> = local
            .enumerate_subspaces(k)?
            .into_iter()
            .map(|s| {
                let rows = s
                    .rows
                    .iter()
                    .map(|coef| {
                        let f = self.field();
                        let mut x = vec![FieldElement::ZERO; self.v];
                        for (c, b) in coef.iter().zip(&within.rows) {
                            if !c.is_zero() {
                                for (xi, &bi) in x.iter_mut().zip(b) {
                                    *xi = f.add(*xi, f.mul(*c, bi));
                                }
                            }
                        }
                        x
                    })
                    .collect();
                self.span_unchecked(rows)
            })
            .collect();
        out.sort_unstable();
        Ok(out)
    }

    /// `{B in s : u <= B <= w}`, order preserved.
    pub fn restrict_filter(&self, s: &[Subspace], u: &Subspace, w: &Subspace) -> Vec<Subspace> {
        if !self.is_subspace_of(u, w) {
            return Vec::new();
        }
        s.iter()
            .filter(|b| self.is_subspace_of(u, b) && self.is_subspace_of(b, w))
            .cloned()
            .collect()
    }

    /// The `q + 1` lines through the point `p` inside the plane `e`.
    pub fn line_pencil(&self, p: &Subspace, e: &Subspace) -> Result<Vec<Subspace>> {
        self.check(p)?;
        self.check(e)?;
        if p.k != 1 || e.k != 3 {
            return Err(Error::InvalidInput("line pencil needs a point and a plane".into()));
        }
        if !self.is_subspace_of(p, e) {
            return Err(Error::NotIncident);
        }
        let mut lines = BTreeSet::new();
        let pid = self.point_of(p).expect("p is a point");
        for r in self.points_of(e) {
            if r != pid {
                lines.insert(self.join(p, &self.point_subspace(r))?);
            }
        }
        Ok(lines.into_iter().collect())
    }
}
