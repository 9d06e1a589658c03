//! Certified exact-cover search.
//!
//! The solver is Algorithm X on dancing links. Column choice is minimum
//! remaining options with ties going to the lowest element id. Options are
//! tried in `option_order`, which is the identity unless a seed shuffles it.
//!
//! Work is split at the root: each option of the root column starts an
//! independent subtree. Subtrees run in parallel chunks and are merged in
//! order. Every search node and solution has a timestamp in the sequential
//! traversal, so the budget cut and the solution list do not depend on the
//! number of workers.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::designs::BlockSet;
use crate::error::{Error, Result};
use crate::gq::{check_gq, is_gq_ovoid, is_gq_spread, IncidenceStructure};
use crate::projspace::{ProjectiveSpace, Subspace};

/// Default node budget.
pub const DEFAULT_NODE_LIMIT: u64 = 10_000_000;

/// A universe `0..n_elements` and a list of options covering parts of it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "InstanceRepr", into = "InstanceRepr")]
pub struct ExactCoverInstance {
    n_elements: usize,
    options: Vec<Vec<usize>>,
    names: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct InstanceRepr {
    n_elements: usize,
    options: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    names: Option<Vec<String>>,
}

impl From<ExactCoverInstance> for InstanceRepr {
    fn from(i: ExactCoverInstance) -> Self {
        InstanceRepr { n_elements: i.n_elements, options: i.options, names: i.names }
    }
}

impl TryFrom<InstanceRepr> for ExactCoverInstance {
    type Error = Error;
    fn try_from(r: InstanceRepr) -> Result<Self> {
        let i = ExactCoverInstance::new(r.n_elements, r.options)?;
        match r.names {
            Some(n) => i.with_names(n),
            None => Ok(i),
        }
    }
}

impl ExactCoverInstance {
    /// Options are stored sorted; each must be nonempty, duplicate-free and
    /// inside the universe.
    pub fn new(n_elements: usize, options: Vec<Vec<usize>>) -> Result<Self> {
        let mut out = Vec::with_capacity(options.len());
        for (i, mut o) in options.into_iter().enumerate() {
            o.sort_unstable();
            if o.is_empty() {
                return Err(Error::InvalidInput(format!("option {i} is empty")));
            }
            if o.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidInput(format!("option {i} repeats an element")));
            }
            if let Some(&e) = o.iter().find(|&&e| e >= n_elements) {
                return Err(Error::UnknownId(e));
            }
            out.push(o);
        }
        Ok(ExactCoverInstance { n_elements, options: out, names: None })
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.options.len() {
            return Err(Error::InvalidInput("one name per option".into()));
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn n_elements(&self) -> usize {
        self.n_elements
    }

    pub fn options(&self) -> &[Vec<usize>] {
        &self.options
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// SHA-256 of `{"n_elements":..,"options":[..]}`; names do not count.
    pub fn digest(&self) -> String {
        let canonical = serde_json::json!({ "n_elements": self.n_elements, "options": self.options });
        hex::encode(Sha256::digest(canonical.to_string().as_bytes()))
    }

    /// Whether the chosen options partition the universe.
    pub fn is_exact_cover(&self, chosen: &[usize]) -> bool {
        let mut hit = vec![false; self.n_elements];
        for &o in chosen {
            let Some(opt) = self.options.get(o) else { return false };
            for &e in opt {
                if std::mem::replace(&mut hit[e], true) {
                    return false;
                }
            }
        }
        hit.iter().all(|&h| h)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Stop after `max_solutions` solutions.
    #[default]
    First,
    All,
    /// Count solutions without storing them.
    Count,
    /// Look for a single solution; an exhausted tree certifies nonexistence.
    Nonexistence,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::First => "first",
            Mode::All => "all",
            Mode::Count => "count",
            Mode::Nonexistence => "nonexistence",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "first" => Ok(Mode::First),
            "all" => Ok(Mode::All),
            "count" => Ok(Mode::Count),
            "nonexistence" => Ok(Mode::Nonexistence),
            _ => Err(Error::InvalidInput(format!("unknown mode {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub mode: Mode,
    /// Solution cap in [`Mode::First`].
    pub max_solutions: usize,
    pub node_limit: u64,
    /// Shuffles the option order when present.
    pub seed: Option<u64>,
    pub workers: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { mode: Mode::All, max_solutions: 1, node_limit: DEFAULT_NODE_LIMIT, seed: None, workers: 1 }
    }
}

impl SearchOptions {
    pub fn mode(mode: Mode) -> Self {
        SearchOptions { mode, ..Self::default() }
    }

    pub fn first(n: usize) -> Self {
        SearchOptions { mode: Mode::First, max_solutions: n, ..Self::default() }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn with_limit(mut self, node_limit: u64) -> Self {
        self.node_limit = node_limit;
        self
    }

    fn solution_cap(&self) -> Option<usize> {
        match self.mode {
            Mode::First => Some(self.max_solutions.max(1)),
            Mode::Nonexistence => Some(1),
            Mode::All | Mode::Count => None,
        }
    }
}

/// Reproducible record of one search.
///
/// Invariants: `completed` is false iff the node budget ran out; every entry
/// of `solutions` is an exact cover; `solutions` is sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchCertificate {
    pub schema_version: u32,
    pub digest: String,
    pub mode: Mode,
    #[serde(default)]
    pub seed: Option<u64>,
    pub option_order: Vec<usize>,
    pub node_limit: u64,
    pub nodes: u64,
    pub completed: bool,
    /// The whole tree was explored.
    pub exhausted: bool,
    pub solution_count: u64,
    /// Option ids of each solution, ascending; empty in [`Mode::Count`].
    pub solutions: Vec<Vec<usize>>,
}

impl SearchCertificate {
    /// The tree was exhausted without finding a solution.
    pub fn certifies_nonexistence(&self) -> bool {
        self.completed && self.exhausted && self.solution_count == 0
    }

    /// Turns a budget cut into [`Error::BudgetExceeded`].
    pub fn require_complete(self) -> Result<Self> {
        if self.completed {
            Ok(self)
        } else {
            Err(Error::BudgetExceeded(format!("search stopped after {} nodes", self.nodes)))
        }
    }
}

const ROOT: usize = 0;

/// Dancing links over `n` columns; node 0 is the root header and nodes
/// `1..=n` are the column headers.
#[derive(Clone)]
struct Dlx {
    left: Vec<usize>,
    right: Vec<usize>,
    up: Vec<usize>,
    down: Vec<usize>,
    col: Vec<usize>,
    /// Option id of each entry node.
    option: Vec<usize>,
    size: Vec<usize>,
}

impl Dlx {
    fn new(n: usize, options: &[Vec<usize>], order: &[usize]) -> Self {
        let heads = n + 1;
        let mut d = Dlx {
            left: (0..heads).map(|i| if i == 0 { n } else { i - 1 }).collect(),
            right: (0..heads).map(|i| if i == n { 0 } else { i + 1 }).collect(),
            up: (0..heads).collect(),
            down: (0..heads).collect(),
            col: (0..heads).collect(),
            option: vec![usize::MAX; heads],
            size: vec![0; heads],
        };
        for &o in order {
            let first = d.col.len();
            let len = options[o].len();
            for (k, &e) in options[o].iter().enumerate() {
                let c = e + 1;
                let node = d.col.len();
                d.col.push(c);
                d.option.push(o);
                d.left.push(if k == 0 { first + len - 1 } else { node - 1 });
                d.right.push(if k + 1 == len { first } else { node + 1 });
                d.up.push(d.up[c]);
                d.down.push(c);
                let last = d.up[c];
                d.down[last] = node;
                d.up[c] = node;
                d.size[c] += 1;
            }
        }
        d
    }

    fn cover(&mut self, c: usize) {
        let (l, r) = (self.left[c], self.right[c]);
        self.right[l] = r;
        self.left[r] = l;
        let mut i = self.down[c];
        while i != c {
            let mut j = self.right[i];
            while j != i {
                let (u, d) = (self.up[j], self.down[j]);
                self.down[u] = d;
                self.up[d] = u;
                self.size[self.col[j]] -= 1;
                j = self.right[j];
            }
            i = self.down[i];
        }
    }

    fn uncover(&mut self, c: usize) {
        let mut i = self.up[c];
        while i != c {
            let mut j = self.left[i];
            while j != i {
                self.size[self.col[j]] += 1;
                let (u, d) = (self.up[j], self.down[j]);
                self.down[u] = j;
                self.up[d] = j;
                j = self.left[j];
            }
            i = self.up[i];
        }
        let (l, r) = (self.left[c], self.right[c]);
        self.right[l] = c;
        self.left[r] = c;
    }

    /// Minimum size, lowest element id on ties; `None` when all are covered.
    fn choose(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        let mut c = self.right[ROOT];
        while c != ROOT {
            if best.is_none_or(|b| self.size[c] < self.size[b]) {
                best = Some(c);
            }
            c = self.right[c];
        }
        best
    }

    fn select(&mut self, node: usize) {
        let mut j = self.right[node];
        while j != node {
            self.cover(self.col[j]);
            j = self.right[j];
        }
    }

    fn deselect(&mut self, node: usize) {
        let mut j = self.left[node];
        while j != node {
            self.uncover(self.col[j]);
            j = self.left[j];
        }
    }

    fn rows_of(&self, c: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut i = self.down[c];
        while i != c {
            out.push(i);
            i = self.down[i];
        }
        out
    }
}

/// Outcome of one root subtree.
struct Branch {
    /// `(local timestamp, solution)`; solutions are omitted when not stored.
    found: Vec<(u64, Option<Vec<usize>>)>,
    nodes: u64,
    finished: bool,
}

struct Walker {
    dlx: Dlx,
    stack: Vec<usize>,
    nodes: u64,
    node_cap: u64,
    solution_cap: Option<usize>,
    store: bool,
    found: Vec<(u64, Option<Vec<usize>>)>,
    aborted: bool,
}

impl Walker {
    /// Returns true when the walk must stop.
    fn walk(&mut self) -> bool {
        if self.nodes >= self.node_cap {
            self.aborted = true;
            return true;
        }
        self.nodes += 1;
        let Some(c) = self.dlx.choose() else {
            let sol = self.store.then(|| {
                let mut s: Vec<usize> = self.stack.iter().map(|&n| self.dlx.option[n]).collect();
                s.sort_unstable();
                s
            });
            self.found.push((self.nodes, sol));
            return self.solution_cap.is_some_and(|cap| self.found.len() >= cap);
        };
        if self.dlx.size[c] == 0 {
            return false;
        }
        self.dlx.cover(c);
        let mut stop = false;
        for r in self.dlx.rows_of(c) {
            self.stack.push(r);
            self.dlx.select(r);
            stop = self.walk();
            self.dlx.deselect(r);
            self.stack.pop();
            if stop {
                break;
            }
        }
        self.dlx.uncover(c);
        stop
    }
}

fn run_branch(base: &Dlx, root_row: usize, node_cap: u64, solution_cap: Option<usize>, store: bool) -> Branch {
    let mut dlx = base.clone();
    dlx.select(root_row);
    let mut w = Walker {
        dlx,
        stack: vec![root_row],
        nodes: 0,
        node_cap,
        solution_cap,
        store,
        found: Vec::new(),
        aborted: false,
    };
    let stopped = w.walk();
    let finished = !w.aborted && !(stopped && solution_cap.is_some());
    Branch { found: w.found, nodes: w.nodes, finished }
}

fn option_order(n: usize, seed: Option<u64>) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    if let Some(s) = seed {
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(s));
    }
    order
}

/// Solves an exact-cover instance. A budget cut returns a certificate with
/// `completed == false` rather than an error.
pub fn solve_exact_cover(inst: &ExactCoverInstance, opts: &SearchOptions) -> Result<SearchCertificate> {
    let order = option_order(inst.options.len(), opts.seed);
    let mut dlx = Dlx::new(inst.n_elements, &inst.options, &order);
    let store = opts.mode != Mode::Count;
    let solution_cap = opts.solution_cap();
    let limit = opts.node_limit;
    let mut cert = SearchCertificate {
        schema_version: crate::SCHEMA_VERSION,
        digest: inst.digest(),
        mode: opts.mode,
        seed: opts.seed,
        option_order: order,
        node_limit: limit,
        nodes: 0,
        completed: false,
        exhausted: false,
        solution_count: 0,
        solutions: Vec::new(),
    };
    if limit == 0 {
        return Ok(cert);
    }
    cert.nodes = 1;
    let root_col = match dlx.choose() {
        None => {
            cert.solution_count = 1;
            if store {
                cert.solutions.push(Vec::new());
            }
            cert.completed = true;
            cert.exhausted = true;
            return Ok(cert);
        }
        Some(c) => c,
    };
    dlx.cover(root_col);
    let branches = dlx.rows_of(root_col);
    let workers = opts.workers.max(1);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;

    let mut cum = 1u64;
    let mut collected: Vec<Vec<usize>> = Vec::new();
    let mut count = 0u64;
    let mut outcome = None;
    'chunks: for chunk in branches.chunks(workers) {
        let remaining = limit - cum;
        let need = solution_cap.map(|cap| cap - count as usize);
        let results: Vec<Branch> =
            pool.install(|| chunk.par_iter().map(|&r| run_branch(&dlx, r, remaining, need, store)).collect());
        for b in results {
            let remaining = limit - cum;
            for (t, sol) in b.found {
                if t > remaining {
                    break;
                }
                count += 1;
                collected.extend(sol);
                if solution_cap.is_some_and(|cap| count as usize >= cap) {
                    cum += t;
                    outcome = Some((true, false));
                    break 'chunks;
                }
            }
            if !b.finished || b.nodes > remaining {
                cum = limit;
                outcome = Some((false, false));
                break 'chunks;
            }
            cum += b.nodes;
        }
    }
    let (completed, exhausted) = outcome.unwrap_or((true, true));
    for s in &collected {
        if !inst.is_exact_cover(s) {
            return Err(Error::InvalidInput("solver emitted a non-cover".into()));
        }
    }
    collected.sort_unstable();
    cert.nodes = cum;
    cert.completed = completed;
    cert.exhausted = exhausted;
    cert.solution_count = count;
    cert.solutions = collected;
    Ok(cert)
}

fn warn_if_not_gq(s: &IncidenceStructure) {
    if !check_gq(s).is_gq() {
        log::warn!("structure is not a generalized quadrangle");
    }
}

/// Exact-cover instance whose solutions are the spreads of `s`.
pub fn spread_instance(s: &IncidenceStructure) -> ExactCoverInstance {
    let options = (0..s.n_lines()).map(|l| s.points_on(l).to_vec()).collect();
    ExactCoverInstance::new(s.n_points(), options).expect("lines are nonempty point sets")
}

/// Exact-cover instance whose solutions are the ovoids of `s`.
pub fn ovoid_instance(s: &IncidenceStructure) -> ExactCoverInstance {
    let options = (0..s.n_points()).map(|p| s.lines_on(p).to_vec()).collect();
    ExactCoverInstance::new(s.n_lines(), options).expect("points lie on lines")
}

/// Spreads of a GQ; solutions are line-id sets.
pub fn enumerate_gq_spreads(s: &IncidenceStructure, opts: &SearchOptions) -> Result<SearchCertificate> {
    warn_if_not_gq(s);
    if s.points_on_any_empty_line() {
        return Err(Error::InvalidInput("a line without points cannot be an option".into()));
    }
    let cert = solve_exact_cover(&spread_instance(s), opts)?;
    for sol in &cert.solutions {
        debug_assert!(is_gq_spread(s, sol)?);
    }
    Ok(cert)
}

/// Ovoids of a GQ; solutions are point-id sets.
pub fn enumerate_gq_ovoids(s: &IncidenceStructure, opts: &SearchOptions) -> Result<SearchCertificate> {
    warn_if_not_gq(s);
    if (0..s.n_points()).any(|p| s.lines_on(p).is_empty()) {
        return Err(Error::InvalidInput("a point on no line cannot be an option".into()));
    }
    let cert = solve_exact_cover(&ovoid_instance(s), opts)?;
    for sol in &cert.solutions {
        debug_assert!(is_gq_ovoid(s, sol)?);
    }
    Ok(cert)
}

impl IncidenceStructure {
    fn points_on_any_empty_line(&self) -> bool {
        (0..self.n_lines()).any(|l| self.points_on(l).is_empty())
    }
}

/// Two-level partition search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionCertificate {
    /// All spreads (or ovoids); always a complete enumeration.
    pub parts: SearchCertificate,
    /// Exact cover of the lines (or points) by the members of `parts`;
    /// its solutions index into `parts.solutions`.
    pub partition: SearchCertificate,
}

impl PartitionCertificate {
    pub fn certifies_nonexistence(&self) -> bool {
        self.partition.certifies_nonexistence()
    }

    /// Each partition as a list of parts, each part a sorted id set.
    pub fn partitions(&self) -> Vec<Vec<Vec<usize>>> {
        self.partition
            .solutions
            .iter()
            .map(|sol| sol.iter().map(|&i| self.parts.solutions[i].clone()).collect())
            .collect()
    }
}

fn partition(universe: usize, parts: SearchCertificate, opts: &SearchOptions) -> Result<PartitionCertificate> {
    let parts = parts.require_complete()?;
    let inst = ExactCoverInstance::new(universe, parts.solutions.clone())?;
    let partition = solve_exact_cover(&inst, opts)?;
    Ok(PartitionCertificate { parts, partition })
}

/// Partitions of the line set into spreads. The first level is always a full
/// enumeration; `opts` governs the second level.
pub fn partition_into_spreads(s: &IncidenceStructure, opts: &SearchOptions) -> Result<PartitionCertificate> {
    let level1 = SearchOptions { mode: Mode::All, seed: None, ..opts.clone() };
    partition(s.n_lines(), enumerate_gq_spreads(s, &level1)?, opts)
}

/// Partitions of the point set into ovoids.
pub fn partition_into_ovoids(s: &IncidenceStructure, opts: &SearchOptions) -> Result<PartitionCertificate> {
    let level1 = SearchOptions { mode: Mode::All, seed: None, ..opts.clone() };
    partition(s.n_points(), enumerate_gq_ovoids(s, &level1)?, opts)
}

/// `M[i][j] = |solution_i ∩ solution_j|`.
pub fn pairwise_intersection_matrix(cert: &SearchCertificate) -> Vec<Vec<usize>> {
    let sols = &cert.solutions;
    sols.iter()
        .map(|a| {
            sols.iter()
                .map(|b| a.iter().filter(|x| b.binary_search(x).is_ok()).count())
                .collect()
        })
        .collect()
}

/// All off-diagonal entries are positive. With at least two solutions this
/// rules out a partition into solutions.
pub fn all_pairs_intersect(m: &[Vec<usize>]) -> bool {
    m.iter().enumerate().all(|(i, row)| row.iter().enumerate().all(|(j, &x)| i == j || x >= 1))
}

/// Line spreads of `PG(v-1, q)` found by exact cover.
#[derive(Clone, Debug)]
pub struct PgSpreadSearch {
    pub space: ProjectiveSpace,
    /// Option `i` of the certificate is `lines[i]`.
    pub lines: Vec<Subspace>,
    pub certificate: SearchCertificate,
}

impl PgSpreadSearch {
    pub fn spreads(&self) -> Result<Vec<BlockSet>> {
        self.certificate
            .solutions
            .iter()
            .map(|sol| {
                let blocks = sol.iter().map(|&i| self.lines[i].clone()).collect();
                BlockSet::new(self.space.v(), self.space.q(), 2, blocks)
            })
            .collect()
    }
}

/// Exact cover of the points of `PG(v-1, q)` by lines.
///
/// Allowed: any mode for `(4, 2)` and `(4, 3)`, [`Mode::First`] for `(6, 2)`.
pub fn enumerate_pg_line_spreads(v: usize, q: u32, opts: &SearchOptions) -> Result<PgSpreadSearch> {
    if v % 2 != 0 {
        return Err(Error::NotDivisible { v, k: 2 });
    }
    let allowed = match (v, q) {
        (4, 2) | (4, 3) => true,
        (6, 2) => opts.mode == Mode::First,
        _ => false,
    };
    if !allowed {
        return Err(Error::BudgetExceeded(format!("line spreads of F_{q}^{v} in mode {} are out of scope", opts.mode)));
    }
    let space = ProjectiveSpace::with_q(v, q)?;
    let lines = space.enumerate_subspaces(2)?;
    let options = lines.iter().map(|l| space.points_of(l).into_iter().map(|p| p.0).collect()).collect();
    let inst = ExactCoverInstance::new(space.n_points(), options)?;
    let certificate = solve_exact_cover(&inst, opts)?;
    Ok(PgSpreadSearch { space, lines, certificate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gq::{build_q4, build_w, grid};
    use proptest::prelude::*;

    fn inst(n: usize, opts: &[&[usize]]) -> ExactCoverInstance {
        ExactCoverInstance::new(n, opts.iter().map(|o| o.to_vec()).collect()).unwrap()
    }

    /// Subset-filter oracle: every subset of `size` options.
    fn naive_covers(i: &ExactCoverInstance, size: usize) -> Vec<Vec<usize>> {
        fn rec(i: &ExactCoverInstance, start: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == size {
                if i.is_exact_cover(cur) {
                    out.push(cur.clone());
                }
                return;
            }
            for o in start..i.options().len() {
                cur.push(o);
                rec(i, o + 1, size, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(i, 0, size, &mut Vec::new(), &mut out);
        out
    }

    /// Backtracking oracle without dancing links: cover the lowest
    /// uncovered element by each option containing it.
    fn naive_backtrack(i: &ExactCoverInstance) -> u64 {
        fn rec(i: &ExactCoverInstance, used: &mut Vec<bool>) -> u64 {
            let Some(e) = used.iter().position(|&u| !u) else { return 1 };
            let mut n = 0;
            for o in i.options() {
                if o.contains(&e) && o.iter().all(|&x| !used[x]) {
                    o.iter().for_each(|&x| used[x] = true);
                    n += rec(i, used);
                    o.iter().for_each(|&x| used[x] = false);
                }
            }
            n
        }
        rec(i, &mut vec![false; i.n_elements()])
    }

    #[test]
    fn hand_examples() {
        let i = inst(3, &[&[0, 1], &[2], &[0], &[1, 2]]);
        let c = solve_exact_cover(&i, &SearchOptions::mode(Mode::All)).unwrap();
        assert_eq!(c.solutions, vec![vec![0, 1], vec![2, 3]]);
        assert!(c.completed && c.exhausted);
        let empty = inst(1, &[]);
        let c = solve_exact_cover(&empty, &SearchOptions::mode(Mode::Nonexistence)).unwrap();
        assert!(c.certifies_nonexistence());
        assert_eq!(c.nodes, 1);
        let trivial = inst(0, &[]);
        let c = solve_exact_cover(&trivial, &SearchOptions::mode(Mode::All)).unwrap();
        assert_eq!(c.solutions, vec![Vec::<usize>::new()]);
    }

    #[test]
    fn instance_validation() {
        assert!(ExactCoverInstance::new(2, vec![vec![]]).is_err());
        assert!(ExactCoverInstance::new(2, vec![vec![0, 0]]).is_err());
        assert_eq!(ExactCoverInstance::new(2, vec![vec![2]]), Err(Error::UnknownId(2)));
        let i = inst(2, &[&[1, 0]]);
        assert_eq!(i.options(), &[vec![0, 1]]);
        let json = serde_json::to_string(&i).unwrap();
        assert_eq!(serde_json::from_str::<ExactCoverInstance>(&json).unwrap(), i);
    }

    #[test]
    fn digest_ignores_names() {
        let a = inst(2, &[&[0], &[1]]);
        let b = a.clone().with_names(vec!["x".into(), "y".into()]).unwrap();
        assert_eq!(a.digest(), b.digest());
        assert_ne!(a.digest(), inst(2, &[&[1], &[0]]).digest());
        assert_eq!(a.digest().len(), 64);
    }

    #[test]
    fn modes() {
        let g = grid(3, 3);
        let i = ovoid_instance(&g);
        let all = solve_exact_cover(&i, &SearchOptions::mode(Mode::All)).unwrap();
        assert_eq!(all.solution_count, 6);
        let count = solve_exact_cover(&i, &SearchOptions::mode(Mode::Count)).unwrap();
        assert_eq!((count.solution_count, count.solutions.len()), (6, 0));
        assert_eq!(count.nodes, all.nodes);
        let first = solve_exact_cover(&i, &SearchOptions::first(2)).unwrap();
        assert_eq!(first.solutions.len(), 2);
        assert!(first.completed && !first.exhausted);
        assert!(first.nodes < all.nodes);
        let non = solve_exact_cover(&i, &SearchOptions::mode(Mode::Nonexistence)).unwrap();
        assert_eq!(non.solutions.len(), 1);
        assert!(!non.certifies_nonexistence());
    }

    #[test]
    fn budget_cut() {
        let w = build_w(2).unwrap();
        let full = enumerate_gq_spreads(&w, &SearchOptions::default()).unwrap();
        for limit in 1..full.nodes {
            let c = enumerate_gq_spreads(&w, &SearchOptions::default().with_limit(limit)).unwrap();
            assert!(!c.completed && !c.certifies_nonexistence());
            assert!(c.nodes <= limit);
            assert!(c.solutions.iter().all(|s| full.solutions.contains(s)));
            assert!(c.clone().require_complete().is_err());
        }
        let exact = enumerate_gq_spreads(&w, &SearchOptions::default().with_limit(full.nodes)).unwrap();
        assert_eq!(exact, SearchCertificate { node_limit: full.nodes, ..full });
    }

    #[test]
    fn gq_spread_and_ovoid_counts_match_oracles() {
        let w2 = build_w(2).unwrap();
        let q2 = build_q4(2).unwrap();
        for (s, spreads, ovoids) in [(&w2, 6, 6), (&q2, 6, 6)] {
            let sc = enumerate_gq_spreads(s, &SearchOptions::default()).unwrap();
            assert_eq!(sc.solutions, naive_covers(&spread_instance(s), 5));
            assert_eq!(sc.solution_count, spreads);
            let oc = enumerate_gq_ovoids(s, &SearchOptions::default()).unwrap();
            assert_eq!(oc.solutions, naive_covers(&ovoid_instance(s), 5));
            assert_eq!(oc.solution_count, ovoids);
            assert!(oc.solutions.iter().all(|o| is_gq_ovoid(s, o).unwrap()));
            assert!(sc.solutions.iter().all(|o| is_gq_spread(s, o).unwrap()));
        }
    }

    #[test]
    fn grid_ground_truth() {
        let g = grid(3, 3);
        let sp = enumerate_gq_spreads(&g, &SearchOptions::default()).unwrap();
        assert_eq!(sp.solutions, vec![vec![0, 1, 2], vec![3, 4, 5]]);
        let ov = enumerate_gq_ovoids(&g, &SearchOptions::default()).unwrap();
        assert_eq!(ov.solution_count, 6);
        let p = partition_into_spreads(&g, &SearchOptions::mode(Mode::All)).unwrap();
        assert_eq!(p.partitions(), vec![vec![vec![0, 1, 2], vec![3, 4, 5]]]);
        let m = pairwise_intersection_matrix(&sp);
        assert_eq!(m, vec![vec![3, 0], vec![0, 3]]);
        assert!(!all_pairs_intersect(&m));
        // six transversals cover each cell twice, so no ovoid partition
        let po = partition_into_ovoids(&g, &SearchOptions::mode(Mode::All)).unwrap();
        assert_eq!(po.partition.solution_count, 2);
    }

    #[test]
    fn no_partitions_at_q2() {
        let w2 = build_w(2).unwrap();
        let q2 = build_q4(2).unwrap();
        let a = partition_into_spreads(&w2, &SearchOptions::mode(Mode::Nonexistence)).unwrap();
        let b = partition_into_ovoids(&q2, &SearchOptions::mode(Mode::Nonexistence)).unwrap();
        assert!(a.certifies_nonexistence() && b.certifies_nonexistence());
        assert!(all_pairs_intersect(&pairwise_intersection_matrix(&b.parts)));
    }

    #[test]
    fn pg32_spreads() {
        let s = enumerate_pg_line_spreads(4, 2, &SearchOptions::default()).unwrap();
        assert_eq!(s.certificate.solution_count, 56);
        let sp = ProjectiveSpace::with_q(4, 2).unwrap();
        let lines = sp.enumerate_subspaces(2).unwrap();
        let options = lines.iter().map(|l| sp.points_of(l).into_iter().map(|p| p.0).collect()).collect();
        let i = ExactCoverInstance::new(15, options).unwrap();
        assert_eq!(naive_backtrack(&i), 56);
        for b in s.spreads().unwrap() {
            assert!(crate::designs::spread_holes(&sp, &b).unwrap().is_empty());
        }
    }

    #[test]
    fn pg_policy() {
        assert_eq!(
            enumerate_pg_line_spreads(5, 2, &SearchOptions::default()).unwrap_err(),
            Error::NotDivisible { v: 5, k: 2 }
        );
        assert!(matches!(enumerate_pg_line_spreads(6, 3, &SearchOptions::first(1)), Err(Error::BudgetExceeded(_))));
        assert!(matches!(enumerate_pg_line_spreads(6, 2, &SearchOptions::default()), Err(Error::BudgetExceeded(_))));
        let one = enumerate_pg_line_spreads(6, 2, &SearchOptions::first(1).with_seed(3)).unwrap();
        assert_eq!(one.spreads().unwrap()[0].len(), 21);
    }

    #[test]
    fn worker_counts_agree() {
        let q2 = build_q4(2).unwrap();
        let w2 = build_w(2).unwrap();
        for opts in [
            SearchOptions::default(),
            SearchOptions::first(3).with_seed(11),
            SearchOptions::mode(Mode::Count).with_limit(40),
            SearchOptions::default().with_limit(25).with_seed(5),
        ] {
            for s in [&q2, &w2] {
                let base = enumerate_gq_ovoids(s, &opts).unwrap();
                for w in [2, 8] {
                    assert_eq!(enumerate_gq_ovoids(s, &opts.clone().with_workers(w)).unwrap(), base);
                }
            }
        }
    }

    #[test]
    fn seed_changes_order_not_answers() {
        let q2 = build_q4(2).unwrap();
        let a = enumerate_gq_ovoids(&q2, &SearchOptions::default()).unwrap();
        let b = enumerate_gq_ovoids(&q2, &SearchOptions::default().with_seed(9)).unwrap();
        assert_eq!(a.solutions, b.solutions);
        assert_ne!(a.option_order, b.option_order);
        assert_eq!(b, enumerate_gq_ovoids(&q2, &SearchOptions::default().with_seed(9)).unwrap());
    }

    #[test]
    fn certificate_json() {
        let c = enumerate_gq_spreads(&grid(3, 3), &SearchOptions::default()).unwrap();
        let v = serde_json::to_value(&c).unwrap();
        assert_eq!(v["mode"], "all");
        assert_eq!(v["completed"], true);
        let back: SearchCertificate = serde_json::from_value(v).unwrap();
        assert_eq!(back, c);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn solver_matches_naive_backtracking(
            n in 1usize..7,
            raw in proptest::collection::vec(proptest::collection::btree_set(0usize..7, 1..4), 0..12),
            seed in proptest::option::of(0u64..1000),
            workers in 1usize..4,
        ) {
            let options: Vec<Vec<usize>> = raw.into_iter().map(|o| o.into_iter().filter(|&e| e < n).collect::<Vec<_>>()).filter(|o: &Vec<usize>| !o.is_empty()).collect();
            let i = ExactCoverInstance::new(n, options).unwrap();
            let opts = SearchOptions { seed, workers, ..SearchOptions::default() };
            let c = solve_exact_cover(&i, &opts).unwrap();
            prop_assert_eq!(c.solution_count, naive_backtrack(&i));
            for s in &c.solutions {
                prop_assert!(i.is_exact_cover(s));
            }
            prop_assert_eq!(c.certifies_nonexistence(), c.solution_count == 0);
        }

        #[test]
        fn budgeted_runs_are_worker_independent(limit in 1u64..60, workers in 2usize..6, seed in 0u64..50) {
            let i = spread_instance(&build_w(2).unwrap());
            let opts = SearchOptions::default().with_limit(limit).with_seed(seed);
            let one = solve_exact_cover(&i, &opts).unwrap();
            let many = solve_exact_cover(&i, &opts.clone().with_workers(workers)).unwrap();
            prop_assert_eq!(one, many);
        }
    }
}
