//! Finite point-line incidence structures and generalized quadrangles.
//!
//! An order `(s, t)` always means `s + 1` points per line and `t + 1` lines
//! per point.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::projspace::{BilinearForm, PointId, ProjectiveSpace, Row, Subspace};
use crate::FieldElement;

/// Default node limit for [`is_isomorphic`].
pub const ISO_NODE_LIMIT: u64 = 1_000_000;

/// Coordinates of the points and lines of a structure built inside a
/// projective space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Labels {
    pub v: usize,
    pub q: u32,
    pub points: Vec<Subspace>,
    pub lines: Vec<Subspace>,
}

/// A finite incidence structure with points `0..n_points` and lines
/// `0..n_lines`.
///
/// Invariants: incidence lists are sorted and duplicate-free; no two points
/// lie on the same set of lines and no two lines carry the same point set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "StructureRepr", into = "StructureRepr")]
pub struct IncidenceStructure {
    point_lines: Vec<Vec<usize>>,
    line_points: Vec<Vec<usize>>,
    labels: Option<Labels>,
}

#[derive(Serialize, Deserialize)]
struct StructureRepr {
    #[serde(default = "schema_version")]
    schema_version: u32,
    points: usize,
    lines: usize,
    incidence: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Labels>,
}

fn schema_version() -> u32 {
    crate::SCHEMA_VERSION
}

impl From<IncidenceStructure> for StructureRepr {
    fn from(s: IncidenceStructure) -> Self {
        StructureRepr {
            schema_version: crate::SCHEMA_VERSION,
            points: s.n_points(),
            lines: s.n_lines(),
            incidence: s.point_lines,
            labels: s.labels,
        }
    }
}

impl TryFrom<StructureRepr> for IncidenceStructure {
    type Error = Error;
    fn try_from(r: StructureRepr) -> Result<Self> {
        if r.incidence.len() != r.points {
            return Err(Error::InvalidInput(format!(
                "incidence has {} rows for {} points",
                r.incidence.len(),
                r.points
            )));
        }
        let s = IncidenceStructure::new(r.lines, r.incidence)?;
        match r.labels {
            Some(l) => s.with_labels(l),
            None => Ok(s),
        }
    }
}

impl IncidenceStructure {
    /// Builds a structure from the lines through each point.
    pub fn new(n_lines: usize, point_lines: Vec<Vec<usize>>) -> Result<Self> {
        let mut line_points = vec![Vec::new(); n_lines];
        let mut rows = Vec::with_capacity(point_lines.len());
        for (p, mut ls) in point_lines.into_iter().enumerate() {
            ls.sort_unstable();
            if ls.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidInput(format!("point {p} lists a line twice")));
            }
            for &l in &ls {
                line_points.get_mut(l).ok_or(Error::UnknownId(l))?.push(p);
            }
            rows.push(ls);
        }
        let s = IncidenceStructure { point_lines: rows, line_points, labels: None };
        s.check_no_repeats()?;
        Ok(s)
    }

    fn check_no_repeats(&self) -> Result<()> {
        let mut seen: HashMap<&[usize], usize> = HashMap::new();
        for (p, ls) in self.point_lines.iter().enumerate() {
            if let Some(o) = seen.insert(ls, p) {
                return Err(Error::InvalidInput(format!("points {o} and {p} have the same lines")));
            }
        }
        seen.clear();
        for (l, ps) in self.line_points.iter().enumerate() {
            if let Some(o) = seen.insert(ps, l) {
                return Err(Error::InvalidInput(format!("lines {o} and {l} have the same points")));
            }
        }
        Ok(())
    }

    /// The structure of point and line subspaces of `space` under inclusion.
    pub fn from_subspaces(space: &ProjectiveSpace, points: Vec<Subspace>, lines: Vec<Subspace>) -> Result<Self> {
        let index: HashMap<PointId, usize> = points
            .iter()
            .enumerate()
            .map(|(i, p)| space.point_of(p).map(|id| (id, i)).ok_or(Error::AmbientMismatch))
            .collect::<Result<_>>()?;
        let mut point_lines = vec![Vec::new(); points.len()];
        for (l, line) in lines.iter().enumerate() {
            if line.v() != space.v() || line.q() != space.q() {
                return Err(Error::AmbientMismatch);
            }
            for p in space.points_of(line) {
                if let Some(&i) = index.get(&p) {
                    point_lines[i].push(l);
                }
            }
        }
        let mut s = IncidenceStructure::new(lines.len(), point_lines)?;
        s.labels = Some(Labels { v: space.v(), q: space.q(), points, lines });
        Ok(s)
    }

    /// Attaches coordinates; incidence must agree with inclusion in either
    /// direction, so dual labels are accepted too.
    pub fn with_labels(mut self, labels: Labels) -> Result<Self> {
        if labels.points.len() != self.n_points() || labels.lines.len() != self.n_lines() {
            return Err(Error::InvalidInput("label counts do not match the structure".into()));
        }
        let space = ProjectiveSpace::with_q(labels.v, labels.q)?;
        for (l, line) in labels.lines.iter().enumerate() {
            for (p, point) in labels.points.iter().enumerate() {
                let inc = self.point_lines[p].binary_search(&l).is_ok();
                let related = space.is_subspace_of(point, line) || space.is_subspace_of(line, point);
                if inc != related {
                    return Err(Error::InvalidInput(format!("labels disagree with incidence at ({p}, {l})")));
                }
            }
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn n_points(&self) -> usize {
        self.point_lines.len()
    }

    pub fn n_lines(&self) -> usize {
        self.line_points.len()
    }

    /// Lines through point `p`, ascending.
    pub fn lines_on(&self, p: usize) -> &[usize] {
        &self.point_lines[p]
    }

    /// Points on line `l`, ascending.
    pub fn points_on(&self, l: usize) -> &[usize] {
        &self.line_points[l]
    }

    pub fn incident(&self, p: usize, l: usize) -> bool {
        self.point_lines[p].binary_search(&l).is_ok()
    }

    pub fn labels(&self) -> Option<&Labels> {
        self.labels.as_ref()
    }

    pub fn without_labels(&self) -> Self {
        IncidenceStructure { labels: None, ..self.clone() }
    }

    fn line_bits(&self) -> Vec<FixedBitSet> {
        self.line_points
            .iter()
            .map(|ps| {
                let mut b = FixedBitSet::with_capacity(self.n_points());
                ps.iter().for_each(|&p| b.insert(p));
                b
            })
            .collect()
    }
}

/// `W(q)`: all points of `PG(3, q)` with the lines totally isotropic for
/// `x1 y2 - x2 y1 + x3 y4 - x4 y3`.
pub fn build_w(q: u32) -> Result<IncidenceStructure> {
    let space = ProjectiveSpace::with_q(4, q)?;
    let form = BilinearForm::symplectic(space.field(), 4)?;
    let f = space.field();
    let points: Vec<Row> = space.all_points().map(|p| space.point_vector(p)).collect();
    build_polar(&space, points, |x, y| form.eval(f, x, y))
}

/// `Q(x) = x1 x2 + x3 x4 + x5^2`, evaluated as written.
pub fn parabolic_form(f: &FieldSpec, x: &[FieldElement]) -> FieldElement {
    let a = f.mul(x[0], x[1]);
    let b = f.mul(x[2], x[3]);
    f.add(f.add(a, b), f.mul(x[4], x[4]))
}

/// Polarization `Q(x+y) - Q(x) - Q(y)` of [`parabolic_form`].
fn parabolic_polar(f: &FieldSpec, x: &[FieldElement], y: &[FieldElement]) -> FieldElement {
    let sum: Row = x.iter().zip(y).map(|(&a, &b)| f.add(a, b)).collect();
    f.sub(f.sub(parabolic_form(f, &sum), parabolic_form(f, x)), parabolic_form(f, y))
}

/// `Q(4, q)`: the zeroes of [`parabolic_form`] in `PG(4, q)` with the lines
/// they contain.
pub fn build_q4(q: u32) -> Result<IncidenceStructure> {
    let space = ProjectiveSpace::with_q(5, q)?;
    let f = space.field();
    let points: Vec<Row> = space
        .all_points()
        .map(|p| space.point_vector(p))
        .filter(|x| parabolic_form(f, x).is_zero())
        .collect();
    build_polar(&space, points, |x, y| parabolic_polar(f, x, y))
}

/// Lines spanned by two `points` that are orthogonal under `polar`. Every
/// such line lies entirely in the point set for both polar spaces built here.
fn build_polar<F>(space: &ProjectiveSpace, points: Vec<Row>, polar: F) -> Result<IncidenceStructure>
where
    F: Fn(&[FieldElement], &[FieldElement]) -> FieldElement,
{
    let mut seen = FixedBitSet::with_capacity(points.len());
    let index: HashMap<PointId, usize> =
        points.iter().enumerate().map(|(i, x)| (space.point_id(x).expect("nonzero"), i)).collect();
    let mut lines = Vec::new();
    for (i, x) in points.iter().enumerate() {
        seen.clear();
        for (j, y) in points.iter().enumerate().skip(i + 1) {
            if seen.contains(j) || !polar(x, y).is_zero() {
                continue;
            }
            let line = space.span(vec![x.clone(), y.clone()])?;
            let on: Vec<usize> = space.points_of(&line).iter().map(|p| index[p]).collect();
            // keep the line only from its smallest point
            if on.iter().all(|&k| k >= i) {
                lines.push(line);
            }
            on.iter().for_each(|&k| seen.insert(k));
        }
    }
    lines.sort_unstable();
    let labels = points.into_iter().map(|x| space.span(vec![x])).collect::<Result<Vec<_>>>()?;
    IncidenceStructure::from_subspaces(space, labels, lines)
}

/// The `m x n` grid: points are cells, lines are rows then columns.
pub fn grid(m: usize, n: usize) -> IncidenceStructure {
    let point_lines = (0..m * n).map(|c| vec![c / n, m + c % n]).collect();
    IncidenceStructure::new(m + n, point_lines).expect("grid cells are distinct")
}

/// Order `(s, t)`: `s + 1` points per line, `t + 1` lines per point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GqOrder {
    pub s: usize,
    pub t: usize,
}

/// Outcome of [`check_gq`]. `order` is set only for generalized quadrangles
/// with constant line size and point degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GqReport {
    pub order: Option<GqOrder>,
    pub nonempty: bool,
    /// Two distinct points share at most one line.
    pub axiom_i: bool,
    /// Two distinct lines share at most one point.
    pub axiom_ii: bool,
    /// Every non-incident pair `(P, L)` has exactly one `(P', L')` with
    /// `P I L'` and `P' I L`.
    pub axiom_iii: bool,
    pub line_size: Option<usize>,
    pub point_degree: Option<usize>,
    /// Some point is collinear with every point.
    pub degenerate: bool,
}

impl GqReport {
    pub fn is_gq(&self) -> bool {
        self.nonempty && self.axiom_i && self.axiom_ii && self.axiom_iii
    }
}

fn constant(sizes: impl Iterator<Item = usize>) -> Option<usize> {
    let mut it = sizes;
    let first = it.next()?;
    it.all(|x| x == first).then_some(first)
}

pub fn check_gq(s: &IncidenceStructure) -> GqReport {
    let bits = s.line_bits();
    let nonempty = s.n_points() > 0 && s.n_lines() > 0;
    let axiom_ii = (0..s.n_lines())
        .all(|a| (a + 1..s.n_lines()).all(|b| bits[a].intersection(&bits[b]).count() <= 1));
    let axiom_i = (0..s.n_points()).all(|a| {
        (a + 1..s.n_points()).all(|b| {
            let (la, lb) = (s.lines_on(a), s.lines_on(b));
            la.iter().filter(|l| lb.binary_search(l).is_ok()).count() <= 1
        })
    });
    let axiom_iii = (0..s.n_points()).all(|p| {
        (0..s.n_lines()).filter(|&l| !s.incident(p, l)).all(|l| {
            let hits: usize = s.lines_on(p).iter().map(|&m| bits[m].intersection(&bits[l]).count()).sum();
            hits == 1
        })
    });
    let collinear = |p: usize| {
        let mut c = FixedBitSet::with_capacity(s.n_points());
        c.insert(p);
        s.lines_on(p).iter().for_each(|&l| c.union_with(&bits[l]));
        c.count_ones(..) == s.n_points()
    };
    let degenerate = nonempty && (0..s.n_points()).any(collinear);
    let line_size = constant(s.line_points.iter().map(Vec::len));
    let point_degree = constant(s.point_lines.iter().map(Vec::len));
    let mut report = GqReport {
        order: None,
        nonempty,
        axiom_i,
        axiom_ii,
        axiom_iii,
        line_size,
        point_degree,
        degenerate,
    };
    if report.is_gq() {
        if let (Some(a), Some(b)) = (line_size, point_degree) {
            if a > 0 && b > 0 {
                report.order = Some(GqOrder { s: a - 1, t: b - 1 });
            }
        }
    }
    report
}

/// Swaps the roles of points and lines.
pub fn dualize_structure(s: &IncidenceStructure) -> IncidenceStructure {
    IncidenceStructure {
        point_lines: s.line_points.clone(),
        line_points: s.point_lines.clone(),
        labels: s.labels.as_ref().map(|l| Labels {
            v: l.v,
            q: l.q,
            points: l.lines.clone(),
            lines: l.points.clone(),
        }),
    }
}

/// An incidence-preserving pair of bijections from `a` to `b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Isomorphism {
    pub points: Vec<usize>,
    pub lines: Vec<usize>,
}

impl Isomorphism {
    /// Checks bijectivity and that incidence is preserved both ways.
    pub fn verify(&self, a: &IncidenceStructure, b: &IncidenceStructure) -> bool {
        let bijective = |m: &[usize], n: usize| {
            let mut hit = vec![false; n];
            m.len() == n && m.iter().all(|&x| x < n && !std::mem::replace(&mut hit[x], true))
        };
        bijective(&self.points, b.n_points())
            && bijective(&self.lines, b.n_lines())
            && a.n_points() == b.n_points()
            && a.n_lines() == b.n_lines()
            && (0..a.n_points()).all(|p| {
                let mut image: Vec<usize> = a.lines_on(p).iter().map(|&l| self.lines[l]).collect();
                image.sort_unstable();
                image == b.lines_on(self.points[p])
            })
    }
}

/// The disjoint union of the incidence graphs of `a` and `b`: `a`'s points,
/// `a`'s lines, `b`'s points, `b`'s lines.
struct UnionGraph {
    adj: Vec<Vec<usize>>,
    /// First vertex of `b`.
    split: usize,
}

impl UnionGraph {
    fn new(a: &IncidenceStructure, b: &IncidenceStructure) -> Self {
        let mut adj = Vec::new();
        for s in [a, b] {
            let base = adj.len();
            let np = s.n_points();
            adj.extend(s.point_lines.iter().map(|ls| ls.iter().map(|&l| base + np + l).collect()));
            adj.extend(s.line_points.iter().map(|ps| ps.iter().map(|&p| base + p).collect()));
        }
        UnionGraph { adj, split: a.n_points() + a.n_lines() }
    }

    /// Refines `colors` to the coarsest equitable partition. New colours are
    /// ranks of `(old colour, sorted neighbour colours)`, so the result is
    /// invariant under isomorphisms that respect the input colouring.
    fn refine(&self, colors: &mut [u32]) {
        let mut classes = count_classes(colors);
        loop {
            let sigs: Vec<(u32, Vec<u32>)> = self
                .adj
                .iter()
                .enumerate()
                .map(|(v, ns)| {
                    let mut n: Vec<u32> = ns.iter().map(|&u| colors[u]).collect();
                    n.sort_unstable();
                    (colors[v], n)
                })
                .collect();
            let mut sorted: Vec<&(u32, Vec<u32>)> = sigs.iter().collect();
            sorted.sort();
            sorted.dedup();
            let rank: HashMap<&(u32, Vec<u32>), u32> =
                sorted.iter().enumerate().map(|(i, s)| (*s, i as u32)).collect();
            for (c, s) in colors.iter_mut().zip(&sigs) {
                *c = rank[s];
            }
            let n = sorted.len();
            if n == classes {
                return;
            }
            classes = n;
        }
    }

    /// Every colour occurs equally often on both sides.
    fn balanced(&self, colors: &[u32]) -> bool {
        let mut diff: HashMap<u32, i64> = HashMap::new();
        for (v, &c) in colors.iter().enumerate() {
            *diff.entry(c).or_default() += if v < self.split { 1 } else { -1 };
        }
        diff.values().all(|&d| d == 0)
    }
}

fn count_classes(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

struct IsoSearch<'a> {
    graph: UnionGraph,
    a: &'a IncidenceStructure,
    b: &'a IncidenceStructure,
    nodes: u64,
    limit: u64,
}

impl IsoSearch<'_> {
    fn search(&mut self, colors: Vec<u32>) -> Result<Option<Isomorphism>> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(Error::BudgetExceeded(format!("isomorphism search exceeded {} nodes", self.limit)));
        }
        if !self.graph.balanced(&colors) {
            return Ok(None);
        }
        let split = self.graph.split;
        let mut size: HashMap<u32, usize> = HashMap::new();
        for &c in &colors[..split] {
            *size.entry(c).or_default() += 1;
        }
        // smallest non-singleton class, lowest vertex of `a` first
        let target = (0..split).filter(|&v| size[&colors[v]] > 1).min_by_key(|&v| (size[&colors[v]], v));
        let Some(pivot) = target else {
            return Ok(self.extract(&colors));
        };
        let fresh = colors.iter().max().copied().unwrap_or(0) + 1;
        let candidates: Vec<usize> = (split..colors.len()).filter(|&w| colors[w] == colors[pivot]).collect();
        for w in candidates {
            let mut next = colors.clone();
            next[pivot] = fresh;
            next[w] = fresh;
            self.graph.refine(&mut next);
            if let Some(iso) = self.search(next)? {
                return Ok(Some(iso));
            }
        }
        Ok(None)
    }

    /// Reads the bijection off a discrete balanced colouring.
    fn extract(&self, colors: &[u32]) -> Option<Isomorphism> {
        let split = self.graph.split;
        let at: HashMap<u32, usize> = (split..colors.len()).map(|w| (colors[w], w - split)).collect();
        let np = self.a.n_points();
        let nbp = self.b.n_points();
        let points = (0..np).map(|v| at[&colors[v]]).collect();
        let lines = (np..split).map(|v| at[&colors[v]] - nbp).collect();
        let iso = Isomorphism { points, lines };
        iso.verify(self.a, self.b).then_some(iso)
    }
}

/// Isomorphism test by individualization and colour refinement.
///
/// `Ok(None)` is a certified negative: the search tree was exhausted.
pub fn is_isomorphic(a: &IncidenceStructure, b: &IncidenceStructure) -> Result<Option<Isomorphism>> {
    is_isomorphic_with_limit(a, b, ISO_NODE_LIMIT)
}

pub fn is_isomorphic_with_limit(a: &IncidenceStructure, b: &IncidenceStructure, limit: u64) -> Result<Option<Isomorphism>> {
    if a.n_points() != b.n_points() || a.n_lines() != b.n_lines() {
        return Ok(None);
    }
    let graph = UnionGraph::new(a, b);
    let split = graph.split;
    let np = a.n_points();
    let nbp = b.n_points();
    // points and lines start in different classes
    let mut colors: Vec<u32> =
        (0..graph.adj.len()).map(|v| if v < split { (v >= np) as u32 } else { (v - split >= nbp) as u32 }).collect();
    graph.refine(&mut colors);
    let mut search = IsoSearch { graph, a, b, nodes: 0, limit };
    search.search(colors)
}

fn check_ids(ids: &[usize], n: usize) -> Result<()> {
    match ids.iter().find(|&&i| i >= n) {
        Some(&i) => Err(Error::UnknownId(i)),
        None => Ok(()),
    }
}

/// Every point lies on exactly one of `lines`.
pub fn is_gq_spread(s: &IncidenceStructure, lines: &[usize]) -> Result<bool> {
    check_ids(lines, s.n_lines())?;
    let mut cover = vec![0usize; s.n_points()];
    for &l in lines {
        s.points_on(l).iter().for_each(|&p| cover[p] += 1);
    }
    Ok(cover.iter().all(|&c| c == 1))
}

/// Every line carries exactly one of `points`.
pub fn is_gq_ovoid(s: &IncidenceStructure, points: &[usize]) -> Result<bool> {
    check_ids(points, s.n_points())?;
    let mut cover = vec![0usize; s.n_lines()];
    for &p in points {
        s.lines_on(p).iter().for_each(|&l| cover[l] += 1);
    }
    Ok(cover.iter().all(|&c| c == 1))
}

/// Whether an ovoid of a labelled quadric is a hyperplane section that
/// contains no line of the quadric.
pub fn is_elliptic_quadric_ovoid(s: &IncidenceStructure, points: &[usize]) -> Result<bool> {
    let labels = s.labels().ok_or(Error::MissingLabels)?;
    if !is_gq_ovoid(s, points)? {
        return Err(Error::NotAnOvoid);
    }
    let space = ProjectiveSpace::with_q(labels.v, labels.q)?;
    let rows: Vec<Row> = points.iter().flat_map(|&p| labels.points[p].rows().to_vec()).collect();
    let hyperplane = space.span(rows)?;
    if hyperplane.dim() + 1 != space.v() {
        return Ok(false);
    }
    let mut members = vec![false; s.n_points()];
    points.iter().for_each(|&p| members[p] = true);
    let section_is_ovoid = (0..s.n_points()).all(|p| space.is_subspace_of(&labels.points[p], &hyperplane) == members[p]);
    let no_line = labels.lines.iter().all(|l| !space.is_subspace_of(l, &hyperplane));
    Ok(section_is_ovoid && no_line)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gq_count(q: usize) -> usize {
        (q + 1) * (q * q + 1)
    }

    #[test]
    fn w_and_q4_counts_by_filtering_all_lines() {
        // oracle: filter every line of PG(3,q) for total isotropy
        for q in [2u32, 3] {
            let sp = ProjectiveSpace::with_q(4, q).unwrap();
            let form = BilinearForm::symplectic(sp.field(), 4).unwrap();
            let iso: Vec<Subspace> = sp
                .enumerate_subspaces(2)
                .unwrap()
                .into_iter()
                .filter(|l| form.eval(sp.field(), &l.rows()[0], &l.rows()[1]).is_zero())
                .collect();
            let w = build_w(q).unwrap();
            assert_eq!(w.labels().unwrap().lines, iso);
            assert_eq!((w.n_points(), w.n_lines()), (gq_count(q as usize), gq_count(q as usize)));
        }
        for q in [2u32, 3] {
            let sp = ProjectiveSpace::with_q(5, q).unwrap();
            let f = sp.field();
            let zero = |x: &[FieldElement]| parabolic_form(f, x).is_zero();
            let n_zero = sp.all_points().filter(|&p| zero(&sp.point_vector(p))).count();
            let lines: Vec<Subspace> = sp
                .enumerate_subspaces(2)
                .unwrap()
                .into_iter()
                .filter(|l| sp.points_of(l).iter().all(|&p| zero(&sp.point_vector(p))))
                .collect();
            let q4 = build_q4(q).unwrap();
            assert_eq!(q4.n_points(), n_zero);
            assert_eq!(q4.labels().unwrap().lines, lines);
            assert_eq!(q4.n_lines(), gq_count(q as usize));
        }
    }

    #[test]
    fn no_plane_in_parabolic_quadric() {
        let sp = ProjectiveSpace::with_q(5, 2).unwrap();
        let f = sp.field();
        let planes = sp.enumerate_subspaces(3).unwrap();
        assert!(planes
            .iter()
            .all(|pl| sp.points_of(pl).iter().any(|&p| !parabolic_form(f, &sp.point_vector(p)).is_zero())));
    }

    #[test]
    fn classical_orders() {
        for q in [2u32, 3, 4] {
            for s in [build_w(q).unwrap(), build_q4(q).unwrap()] {
                let r = check_gq(&s);
                assert_eq!(r.order, Some(GqOrder { s: q as usize, t: q as usize }));
                assert!(!r.degenerate);
            }
        }
        assert!(matches!(build_w(17), Err(Error::OutOfRange(_))));
        assert!(matches!(build_q4(6), Err(Error::NotAPrimePower(6))));
    }

    #[test]
    fn pg32_is_not_a_gq() {
        let sp = ProjectiveSpace::with_q(4, 2).unwrap();
        let points = sp.enumerate_subspaces(1).unwrap();
        let lines = sp.enumerate_subspaces(2).unwrap();
        let s = IncidenceStructure::from_subspaces(&sp, points, lines).unwrap();
        let r = check_gq(&s);
        assert!(r.axiom_i && r.axiom_ii && !r.axiom_iii);
        assert_eq!(r.order, None);
    }

    #[test]
    fn grid_and_its_dual() {
        let g = grid(3, 3);
        assert_eq!(check_gq(&g).order, Some(GqOrder { s: 2, t: 1 }));
        let d = dualize_structure(&g);
        assert_eq!(check_gq(&d).order, Some(GqOrder { s: 1, t: 2 }));
        assert_eq!(dualize_structure(&d), g);
        // a 3x3 grid is a GQ in which no point is collinear with all others
        assert!(!check_gq(&g).degenerate);
    }

    #[test]
    fn degenerate_pencil() {
        // three lines through a common point, two further points on each
        let mut pl = vec![vec![0, 1, 2]];
        for l in 0..3 {
            pl.push(vec![l]);
            pl.push(vec![l]);
        }
        let s = IncidenceStructure::new(3, pl);
        // two points on the same single line repeat a row
        assert!(s.is_err());
        let pencil = IncidenceStructure::new(3, vec![vec![0, 1, 2], vec![0], vec![1], vec![2]]).unwrap();
        let r = check_gq(&pencil);
        assert!(r.is_gq() && r.degenerate);
        assert_eq!(r.order, None);
    }

    #[test]
    fn dual_of_w2() {
        let w = build_w(2).unwrap();
        let d = dualize_structure(&w);
        assert_eq!(check_gq(&d).order, Some(GqOrder { s: 2, t: 2 }));
        assert_eq!(dualize_structure(&d), w);
    }

    #[test]
    fn isomorphisms() {
        let w2 = build_w(2).unwrap();
        let q2 = build_q4(2).unwrap();
        let iso = is_isomorphic(&w2, &w2).unwrap().unwrap();
        assert!(iso.verify(&w2, &w2));
        let dual = dualize_structure(&w2);
        let iso = is_isomorphic(&dual, &q2).unwrap().unwrap();
        assert!(iso.verify(&dual, &q2));
        assert_eq!(is_isomorphic(&w2, &grid(3, 3)).unwrap(), None);
        // self-dual in even characteristic
        assert!(is_isomorphic(&w2, &q2).unwrap().is_some());
    }

    #[test]
    fn w3_dual_is_q4_3() {
        let w3 = build_w(3).unwrap();
        let q3 = build_q4(3).unwrap();
        let dual = dualize_structure(&w3);
        assert!(is_isomorphic(&dual, &q3).unwrap().unwrap().verify(&dual, &q3));
    }

    #[test]
    fn iso_budget() {
        let w = build_w(3).unwrap();
        let d = dualize_structure(&w);
        let q = build_q4(3).unwrap();
        assert!(matches!(is_isomorphic_with_limit(&d, &q, 1), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn spread_and_ovoid_predicates() {
        let g = grid(3, 3);
        assert!(is_gq_spread(&g, &[0, 1, 2]).unwrap());
        assert!(is_gq_spread(&g, &[3, 4, 5]).unwrap());
        assert!(!is_gq_spread(&g, &[0, 1, 3]).unwrap());
        assert!(is_gq_ovoid(&g, &[0, 4, 8]).unwrap());
        assert!(!is_gq_ovoid(&g, &[]).unwrap());
        let all: Vec<usize> = (0..9).collect();
        assert!(!is_gq_ovoid(&g, &all).unwrap());
        assert_eq!(is_gq_spread(&g, &[7]), Err(Error::UnknownId(7)));
        assert_eq!(is_gq_ovoid(&g, &[9]), Err(Error::UnknownId(9)));
    }

    #[test]
    fn elliptic_sections_of_q4_2() {
        let q4 = build_q4(2).unwrap();
        let labels = q4.labels().unwrap();
        let sp = ProjectiveSpace::with_q(5, 2).unwrap();
        // hyperplane sections that are ovoids
        let mut found = 0;
        for h in sp.enumerate_subspaces(4).unwrap() {
            let section: Vec<usize> = (0..q4.n_points()).filter(|&p| sp.is_subspace_of(&labels.points[p], &h)).collect();
            if is_gq_ovoid(&q4, &section).unwrap() {
                assert!(is_elliptic_quadric_ovoid(&q4, &section).unwrap());
                assert_eq!(section.len(), 5);
                found += 1;
            }
        }
        assert_eq!(found, 6);
        assert_eq!(is_elliptic_quadric_ovoid(&q4, &[0]), Err(Error::NotAnOvoid));
        assert_eq!(is_elliptic_quadric_ovoid(&q4.without_labels(), &[0]), Err(Error::MissingLabels));
    }

    #[test]
    fn json_roundtrip() {
        let w = build_w(2).unwrap();
        let json = serde_json::to_string(&w).unwrap();
        let back: IncidenceStructure = serde_json::from_str(&json).unwrap();
        assert_eq!(back, w);
        let g = grid(2, 3);
        let v: serde_json::Value = serde_json::to_value(&g).unwrap();
        assert_eq!(v["points"], 6);
        assert_eq!(v["lines"], 5);
        assert!(v.get("labels").is_none());
        let bad = r#"{"points":2,"lines":1,"incidence":[[0],[0]]}"#;
        assert!(serde_json::from_str::<IncidenceStructure>(bad).is_err());
        let bad = r#"{"points":1,"lines":1,"incidence":[[3]]}"#;
        assert!(serde_json::from_str::<IncidenceStructure>(bad).is_err());
    }

    fn permuted(s: &IncidenceStructure, pp: &[usize], lp: &[usize]) -> IncidenceStructure {
        let mut rows = vec![Vec::new(); s.n_points()];
        for p in 0..s.n_points() {
            rows[pp[p]] = s.lines_on(p).iter().map(|&l| lp[l]).collect();
        }
        IncidenceStructure::new(s.n_lines(), rows).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn relabelled_structures_are_isomorphic(
            pp in Just((0..15usize).collect::<Vec<_>>()).prop_shuffle(),
            lp in Just((0..15usize).collect::<Vec<_>>()).prop_shuffle(),
            which in 0..2usize,
        ) {
            let base = if which == 0 { build_w(2).unwrap() } else { build_q4(2).unwrap() };
            let other = permuted(&base, &pp, &lp);
            let iso = is_isomorphic(&base, &other).unwrap().unwrap();
            prop_assert!(iso.verify(&base, &other));
        }

        #[test]
        fn dualize_is_an_involution(rows in proptest::collection::vec(proptest::collection::btree_set(0..6usize, 0..4), 1..8)) {
            let rows: Vec<Vec<usize>> = rows.into_iter().map(|r| r.into_iter().collect()).collect();
            if let Ok(s) = IncidenceStructure::new(6, rows) {
                let d = dualize_structure(&s);
                prop_assert_eq!(dualize_structure(&d), s.clone());
                let (rs, rd) = (check_gq(&s), check_gq(&d));
                prop_assert_eq!(rs.is_gq(), rd.is_gq());
                prop_assert_eq!(rs.order.map(|o| (o.t, o.s)), rd.order.map(|o| (o.s, o.t)));
            }
        }
    }
}
