//! Graded pieces of the invariant ring `R[x_1..x_n]^G` for a permutation
//! group `G`, minimal generator degrees, and the per-graph conjecture
//! reports built on top of them.
//!
//! Degree-`d` invariants are spanned by orbit sums of monomials. A
//! degree-`d` invariant is decomposable when it lies in the span of products
//! of positive-degree invariants; that span equals the span of `g * b` where
//! `g` runs over the generators already found (degree < d) and `b` over the
//! orbit sums of complementary degree. The number of new generators at `d`
//! is `dim_d - rank(products)`.
//!
//! Exponent vectors are packed eight bits per variable into a `u64`, which
//! limits this module to `n <= 8` and degrees `<= 255`.

use std::collections::{BTreeMap, HashMap};
use std::io::Write;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{automorphism_group, canonical_graph6, enumerate_graphs, write_graph6, Graph};
use crate::linalg::{rank_exact, rank_mod_dense, SparseExactEliminator, SparseModEliminator, PRIMES};
use crate::permgroup::PermGroup;

/// Largest number of variables supported by the packed monomial encoding.
pub const MAX_VARS: usize = 8;
/// Default limit on degree-`d` monomials materialized per degree.
pub const DEFAULT_MONOMIAL_BUDGET: u128 = 2_000_000;
/// Largest vertex count accepted by [`sweep`].
pub const SWEEP_MAX_N: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExponentVector {
    pub exps: Vec<u32>,
}

impl ExponentVector {
    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    fn unpack(m: u64, n: usize) -> Self {
        ExponentVector {
            exps: (0..n).map(|i| (m >> (8 * i) & 0xff) as u32).collect(),
        }
    }
}

/// Sum of the monomials in one group orbit, each with coefficient 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitSum {
    pub representative: ExponentVector,
    pub monomials: Vec<ExponentVector>,
}

/// `C(n + d - 1, d)`, saturating.
pub fn monomial_count(n: usize, d: usize) -> u128 {
    if n == 0 {
        return u128::from(d == 0);
    }
    let mut acc: u128 = 1;
    for i in 1..=d as u128 {
        acc = acc.saturating_mul(n as u128 - 1 + i) / i;
    }
    acc
}

fn check_vars(n: usize, degree: usize) -> Result<()> {
    if n > MAX_VARS {
        return Err(Error::invalid("n", format!("at most {MAX_VARS} variables supported, got {n}")));
    }
    if degree > 255 {
        return Err(Error::invalid("degree", "at most 255"));
    }
    Ok(())
}

/// All degree-`d` monomials in `n` variables, lexicographically decreasing.
fn monomials(n: usize, d: usize) -> Vec<u64> {
    fn rec(var: usize, n: usize, left: usize, acc: u64, out: &mut Vec<u64>) {
        if var + 1 == n {
            out.push(acc | (left as u64) << (8 * var));
            return;
        }
        for e in (0..=left).rev() {
            rec(var + 1, n, left - e, acc | (e as u64) << (8 * var), out);
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(0);
        }
    } else {
        rec(0, n, d, 0, &mut out);
    }
    out
}

#[inline]
fn act(p: &[usize], m: u64) -> u64 {
    // x_i -> x_{p(i)}
    p.iter()
        .enumerate()
        .fold(0, |acc, (i, &j)| acc | (m >> (8 * i) & 0xff) << (8 * j))
}

/// `w - u` when `u <= w` componentwise.
#[inline]
fn sub_packed(w: u64, u: u64, n: usize) -> Option<u64> {
    let mut out = 0;
    for i in 0..n {
        let a = w >> (8 * i) & 0xff;
        let b = u >> (8 * i) & 0xff;
        if b > a {
            return None;
        }
        out |= (a - b) << (8 * i);
    }
    Some(out)
}

/// Orbit decomposition of the degree-`d` monomials.
#[derive(Debug, Clone)]
struct DegreeOrbits {
    orbit_of: HashMap<u64, u32>,
    members: Vec<Vec<u64>>,
}

impl DegreeOrbits {
    fn build(images: &[Vec<usize>], n: usize, d: usize) -> Self {
        let mons = monomials(n, d);
        let mut orbit_of: HashMap<u64, u32> = HashMap::with_capacity(mons.len());
        let mut members = Vec::new();
        for &m in &mons {
            if orbit_of.contains_key(&m) {
                continue;
            }
            let id = members.len() as u32;
            let mut orbit = Vec::new();
            for p in images {
                let img = act(p, m);
                if let std::collections::hash_map::Entry::Vacant(e) = orbit_of.entry(img) {
                    e.insert(id);
                    orbit.push(img);
                }
            }
            // representative first
            let pos = orbit.iter().position(|&x| x == m).expect("identity in group");
            orbit.swap(0, pos);
            members.push(orbit);
        }
        DegreeOrbits { orbit_of, members }
    }

    fn dim(&self) -> usize {
        self.members.len()
    }
}

fn element_images(g: &PermGroup) -> Vec<Vec<usize>> {
    g.elements().iter().map(|p| p.image().to_vec()).collect()
}

fn check_budget(n: usize, d: usize, budget: u128) -> Result<()> {
    let count = monomial_count(n, d);
    if count > budget {
        return Err(Error::budget_hint(
            format!("degree-{d} monomials in {n} variables"),
            count,
            budget,
            "raise the monomial budget or lower the degree cap",
        ));
    }
    Ok(())
}

/// Orbit sums spanning the degree-`d` invariants.
pub fn monomial_orbit_sums(g: &PermGroup, degree: usize, budget: u128) -> Result<Vec<OrbitSum>> {
    check_vars(g.n(), degree)?;
    check_budget(g.n(), degree, budget)?;
    let orbits = DegreeOrbits::build(&element_images(g), g.n(), degree);
    Ok(orbits
        .members
        .iter()
        .map(|orbit| {
            let mut mons: Vec<ExponentVector> = orbit.iter().map(|&m| ExponentVector::unpack(m, g.n())).collect();
            let representative = mons[0].clone();
            mons.sort_unstable_by(|a, b| b.cmp(a));
            OrbitSum {
                representative,
                monomials: mons,
            }
        })
        .collect())
}

/// Dimension of the degree-`d` invariants (number of monomial orbits).
pub fn invariant_dim_by_degree(g: &PermGroup, degree: usize, budget: u128) -> Result<u64> {
    check_vars(g.n(), degree)?;
    check_budget(g.n(), degree, budget)?;
    Ok(DegreeOrbits::build(&element_images(g), g.n(), degree).dim() as u64)
}

/// `(1/|G|) sum_g #{degree-d monomials fixed by g}` by direct enumeration.
pub fn burnside_monomial_count(g: &PermGroup, degree: usize, budget: u128) -> Result<u64> {
    check_vars(g.n(), degree)?;
    check_budget(g.n(), degree, budget)?;
    let mons = monomials(g.n(), degree);
    let total: u128 = element_images(g)
        .iter()
        .map(|p| mons.iter().filter(|&&m| act(p, m) == m).count() as u128)
        .sum();
    let order = g.order() as u128;
    if total % order != 0 {
        return Err(Error::Arithmetic(format!("fixed-point total {total} not divisible by |G| = {order}")));
    }
    Ok((total / order) as u64)
}

/// Hilbert series coefficients for degrees `0..=max_degree`, averaging
/// `prod_cycles 1/(1 - t^len)` over the group.
pub fn molien_hilbert_coeffs(g: &PermGroup, max_degree: usize) -> Result<Vec<u64>> {
    let len = max_degree + 1;
    let mut by_type: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for p in g.elements() {
        *by_type.entry(p.cycle_type()).or_default() += 1;
    }
    let mut total = vec![BigInt::zero(); len];
    for (cycles, count) in &by_type {
        let mut series = vec![BigInt::zero(); len];
        series[0] = BigInt::from(1);
        for &l in cycles {
            for i in l..len {
                let prev = series[i - l].clone();
                series[i] += prev;
            }
        }
        for (t, s) in total.iter_mut().zip(series) {
            *t += s * BigInt::from(*count);
        }
    }
    let order = BigInt::from(g.order());
    total
        .into_iter()
        .enumerate()
        .map(|(d, t)| {
            let (q, r) = t.div_rem(&order);
            if !r.is_zero() {
                return Err(Error::Arithmetic(format!("degree {d}: group average not integral")));
            }
            q.to_u64()
                .ok_or_else(|| Error::Arithmetic(format!("degree {d}: coefficient overflows u64")))
        })
        .collect()
}

/// Rank arithmetic for decomposability checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Arithmetic {
    /// Exact rational rank; a full rank modulo a prime is accepted as exact
    /// since modular rank never exceeds rational rank.
    #[default]
    Exact,
    /// Two primes; escalates to exact arithmetic when they disagree or the
    /// independence re-check fails.
    Modular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GeneratorOptions {
    pub arithmetic: Arithmetic,
    pub monomial_budget: u128,
}

impl Default for GeneratorOptions {
    fn default() -> Self {
        GeneratorOptions {
            arithmetic: Arithmetic::Exact,
            monomial_budget: DEFAULT_MONOMIAL_BUDGET,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeCount {
    pub degree: usize,
    pub count: usize,
}

/// New generator counts for degrees `1..=verified_up_to_degree`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorDegrees {
    pub new_by_degree: Vec<DegreeCount>,
    pub verified_up_to_degree: usize,
    pub stopped: Option<String>,
}

impl GeneratorDegrees {
    /// Largest degree with a new generator inside the verified range.
    pub fn beta_proxy(&self) -> usize {
        self.new_by_degree
            .iter()
            .filter(|c| c.count > 0)
            .map(|c| c.degree)
            .max()
            .unwrap_or(0)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.new_by_degree.iter().map(|c| c.count).collect()
    }

    /// Degrees with at least one generator, as `(degree, count)`.
    pub fn nonzero(&self) -> Vec<DegreeCount> {
        self.new_by_degree.iter().filter(|c| c.count > 0).cloned().collect()
    }
}

type Row = Vec<(u32, i64)>;

/// Rows `g * b` in orbit-representative coordinates of degree `d`.
fn product_rows(gen: &[u64], lower: &DegreeOrbits, target: &DegreeOrbits, n: usize) -> Vec<Row> {
    let mut rows: Vec<BTreeMap<u32, i64>> = vec![BTreeMap::new(); lower.dim()];
    for (col, orbit) in target.members.iter().enumerate() {
        let w = orbit[0];
        for &u in gen {
            if let Some(v) = sub_packed(w, u, n) {
                let b = lower.orbit_of[&v];
                *rows[b as usize].entry(col as u32).or_default() += 1;
            }
        }
    }
    rows.into_iter()
        .filter(|r| !r.is_empty())
        .map(|r| r.into_iter().collect())
        .collect()
}

/// Independent rows plus non-pivot candidates, as reported by one eliminator pass.
struct RankOutcome {
    basis_rows: Vec<Row>,
    candidates: Vec<u32>,
}

fn candidates_from(pivots: impl Iterator<Item = u32>, dim: usize) -> Vec<u32> {
    let mut is_pivot = vec![false; dim];
    for c in pivots {
        is_pivot[c as usize] = true;
    }
    (0..dim as u32).filter(|&c| !is_pivot[c as usize]).collect()
}

fn reduce_mod(rows: &[Row], dim: usize, p: u64) -> RankOutcome {
    let mut el = SparseModEliminator::new(p);
    let mut basis_rows = Vec::new();
    for r in rows {
        if el.rank() == dim {
            break;
        }
        if el.insert(r) {
            basis_rows.push(r.clone());
        }
    }
    RankOutcome {
        candidates: candidates_from(el.pivot_columns(), dim),
        basis_rows,
    }
}

fn reduce_exact(rows: &[Row], dim: usize) -> RankOutcome {
    let mut el = SparseExactEliminator::new();
    let mut basis_rows = Vec::new();
    for r in rows {
        if el.rank() == dim {
            break;
        }
        if el.insert(r) {
            basis_rows.push(r.clone());
        }
    }
    RankOutcome {
        candidates: candidates_from(el.pivot_columns(), dim),
        basis_rows,
    }
}

/// Re-checks independently that the basis rows plus the candidate unit
/// vectors have full rank, i.e. every candidate is indecomposable.
fn verify_candidates(outcome: &RankOutcome, dim: usize) -> bool {
    if outcome.candidates.is_empty() {
        return outcome.basis_rows.len() == dim;
    }
    let mut dense: Vec<Vec<i64>> = outcome
        .basis_rows
        .iter()
        .map(|r| {
            let mut v = vec![0i64; dim];
            for &(c, x) in r {
                v[c as usize] = x;
            }
            v
        })
        .collect();
    for &c in &outcome.candidates {
        let mut v = vec![0i64; dim];
        v[c as usize] = 1;
        dense.push(v);
    }
    let want = dense.len();
    if rank_mod_dense(&dense, PRIMES[2]) == want {
        return true;
    }
    let big: Vec<Vec<BigInt>> = dense
        .into_iter()
        .map(|r| r.into_iter().map(BigInt::from).collect())
        .collect();
    rank_exact(&big) == want
}

fn decomposability(rows: &[Row], dim: usize, arithmetic: Arithmetic) -> Result<RankOutcome> {
    let first = reduce_mod(rows, dim, PRIMES[0]);
    if first.candidates.is_empty() {
        return Ok(first);
    }
    if arithmetic == Arithmetic::Modular {
        let second = reduce_mod(rows, dim, PRIMES[1]);
        if second.basis_rows.len() == first.basis_rows.len() && verify_candidates(&first, dim) {
            return Ok(first);
        }
    }
    let exact = reduce_exact(rows, dim);
    if !verify_candidates(&exact, dim) {
        return Err(Error::Arithmetic("indecomposability re-check failed".into()));
    }
    Ok(exact)
}

/// New generator counts for degrees `1..=degree_cap`. Exceeding the
/// monomial budget stops early with `verified_up_to_degree = d - 1`.
pub fn generator_degrees(g: &PermGroup, degree_cap: usize, opts: &GeneratorOptions) -> Result<GeneratorDegrees> {
    let n = g.n();
    check_vars(n, degree_cap)?;
    let images = element_images(g);
    let mut orbits: Vec<DegreeOrbits> = vec![DegreeOrbits::build(&images, n, 0)];
    // generators found so far: (degree, monomials of the orbit)
    let mut gens: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut new_by_degree = Vec::new();
    let mut stopped = None;
    for d in 1..=degree_cap {
        if let Err(e) = check_budget(n, d, opts.monomial_budget) {
            stopped = Some(e.to_string());
            break;
        }
        let target = DegreeOrbits::build(&images, n, d);
        let dim = target.dim();
        let mut rows: Vec<Row> = Vec::new();
        for (a, gen) in &gens {
            rows.extend(product_rows(gen, &orbits[d - a], &target, n));
        }
        let outcome = decomposability(&rows, dim, opts.arithmetic)?;
        for &c in &outcome.candidates {
            gens.push((d, target.members[c as usize].clone()));
        }
        new_by_degree.push(DegreeCount {
            degree: d,
            count: outcome.candidates.len(),
        });
        orbits.push(target);
    }
    Ok(GeneratorDegrees {
        verified_up_to_degree: new_by_degree.len(),
        new_by_degree,
        stopped,
    })
}

/// Degree beyond which no new generators can appear: `max(n, n(n-1)/2)`.
pub fn full_certification_bound(n: usize) -> usize {
    n.max(n * n.saturating_sub(1) / 2)
}

/// Degree cap applied by [`check_conjectures`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CapPolicy {
    /// Up to the full certification bound.
    Full,
    /// Up to `2n`.
    TwoN,
    /// Up to a fixed degree.
    Degree(usize),
}

impl CapPolicy {
    pub fn cap(&self, n: usize) -> usize {
        let bound = full_certification_bound(n);
        match *self {
            CapPolicy::Full => bound,
            CapPolicy::TwoN => bound.min(2 * n),
            CapPolicy::Degree(d) => bound.min(d),
        }
    }
}

impl std::str::FromStr for CapPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(CapPolicy::Full),
            "2n" => Ok(CapPolicy::TwoN),
            other => other
                .parse::<usize>()
                .map(CapPolicy::Degree)
                .map_err(|_| Error::invalid("cap", format!("expected full, 2n or a degree, got {other:?}"))),
        }
    }
}

impl std::fmt::Display for CapPolicy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CapPolicy::Full => write!(f, "full"),
            CapPolicy::TwoN => write!(f, "2n"),
            CapPolicy::Degree(d) => write!(f, "{d}"),
        }
    }
}

/// Three-valued conjecture verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "true")]
    Holds,
    #[serde(rename = "false")]
    Fails,
    #[serde(rename = "verified-up-to-cap")]
    VerifiedUpToCap,
}

impl Verdict {
    fn judge(beta_proxy: usize, bound: usize, certified: bool) -> Self {
        if beta_proxy > bound {
            Verdict::Fails
        } else if certified {
            Verdict::Holds
        } else {
            Verdict::VerifiedUpToCap
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Holds => "true",
            Verdict::Fails => "false",
            Verdict::VerifiedUpToCap => "verified-up-to-cap",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub graph6: String,
    pub n: usize,
    pub aut_order: usize,
    pub orbit_sizes: Vec<usize>,
    pub max_orbit: usize,
    pub generator_degrees: Vec<DegreeCount>,
    pub degree_cap: usize,
    pub full_bound: usize,
    pub verified_up_to_degree: usize,
    /// Maximal generator degree found within the verified range.
    pub beta_proxy: usize,
    pub conjecture_a: Verdict,
    pub conjecture_b: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ConjectureReport {
    pub fn is_counterexample(&self) -> bool {
        self.conjecture_a == Verdict::Fails || self.conjecture_b == Verdict::Fails
    }
}

/// Vertex orbits of a fully listed group.
fn orbit_sizes(g: &PermGroup) -> Vec<usize> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut sizes = Vec::new();
    for v in 0..n {
        if seen[v] {
            continue;
        }
        let mut size = 0;
        for p in g.elements() {
            let w = p.apply(v);
            if !seen[w] {
                seen[w] = true;
                size += 1;
            }
        }
        sizes.push(size);
    }
    sizes
}

/// Generator-degree report for `G` under `policy`; `id` names the graph in the report.
pub fn check_conjectures_with_id(
    id: String,
    graph: &Graph,
    policy: CapPolicy,
    opts: &GeneratorOptions,
) -> ConjectureReport {
    let n = graph.n();
    let aut = automorphism_group(graph);
    let sizes = orbit_sizes(&aut);
    let max_orbit = sizes.iter().copied().max().unwrap_or(0);
    let full_bound = full_certification_bound(n);
    let cap = policy.cap(n);
    let (gens, note) = match generator_degrees(&aut, cap, opts) {
        Ok(g) => {
            let note = g.stopped.clone();
            (g, note)
        }
        Err(e) => (
            GeneratorDegrees {
                new_by_degree: Vec::new(),
                verified_up_to_degree: 0,
                stopped: None,
            },
            Some(e.to_string()),
        ),
    };
    let beta = gens.beta_proxy();
    let certified = gens.verified_up_to_degree >= full_bound;
    ConjectureReport {
        graph6: id,
        n,
        aut_order: aut.order(),
        orbit_sizes: sizes,
        max_orbit,
        generator_degrees: gens.nonzero(),
        degree_cap: cap,
        full_bound,
        verified_up_to_degree: gens.verified_up_to_degree,
        beta_proxy: beta,
        conjecture_a: Verdict::judge(beta, n, certified),
        conjecture_b: Verdict::judge(beta, max_orbit, certified),
        note,
    }
}

/// Report identified by the graph's canonical graph6 string.
pub fn check_conjectures(graph: &Graph, policy: CapPolicy, opts: &GeneratorOptions) -> Result<ConjectureReport> {
    let id = canonical_graph6(graph).or_else(|_| write_graph6(graph))?;
    if graph.n() > MAX_VARS {
        return Err(Error::invalid("n", format!("at most {MAX_VARS} vertices supported")));
    }
    Ok(check_conjectures_with_id(id, graph, policy, opts))
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct VerdictTally {
    pub holds: usize,
    pub fails: usize,
    pub capped: usize,
}

impl VerdictTally {
    fn add(&mut self, v: Verdict) {
        match v {
            Verdict::Holds => self.holds += 1,
            Verdict::Fails => self.fails += 1,
            Verdict::VerifiedUpToCap => self.capped += 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepSummaryRow {
    pub n: usize,
    pub graphs: usize,
    pub a: VerdictTally,
    pub b: VerdictTally,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepResult {
    pub reports: Vec<ConjectureReport>,
    pub summary: Vec<SweepSummaryRow>,
}

impl SweepResult {
    pub fn counterexamples(&self) -> impl Iterator<Item = &ConjectureReport> {
        self.reports.iter().filter(|r| r.is_counterexample())
    }
}

fn summarize(reports: &[ConjectureReport]) -> Vec<SweepSummaryRow> {
    let mut by_n: BTreeMap<usize, SweepSummaryRow> = BTreeMap::new();
    for r in reports {
        let row = by_n.entry(r.n).or_insert_with(|| SweepSummaryRow {
            n: r.n,
            graphs: 0,
            a: VerdictTally::default(),
            b: VerdictTally::default(),
        });
        row.graphs += 1;
        row.a.add(r.conjecture_a);
        row.b.add(r.conjecture_b);
    }
    by_n.into_values().collect()
}

fn run_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if jobs == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::invalid("jobs", e.to_string()))?;
    Ok(pool.install(f))
}

/// Reports for the given `(id, graph)` pairs, sorted by id. `jobs = 0`
/// uses the global thread pool.
pub fn sweep_graphs(
    graphs: Vec<(String, Graph)>,
    policy: CapPolicy,
    opts: &GeneratorOptions,
    jobs: usize,
) -> Result<SweepResult> {
    if let Some((id, g)) = graphs.iter().find(|(_, g)| g.n() > MAX_VARS) {
        return Err(Error::invalid("graph", format!("{id}: {} vertices exceeds {MAX_VARS}", g.n())));
    }
    let mut reports = run_pool(jobs, || {
        graphs
            .into_par_iter()
            .map(|(id, g)| check_conjectures_with_id(id, &g, policy, opts))
            .collect::<Vec<_>>()
    })?;
    reports.sort_by(|a, b| a.graph6.cmp(&b.graph6));
    let summary = summarize(&reports);
    Ok(SweepResult { reports, summary })
}

/// Every isomorphism class with `1 <= n <= n_max`.
pub fn sweep(n_max: usize, policy: CapPolicy, opts: &GeneratorOptions, jobs: usize) -> Result<SweepResult> {
    let mut graphs = Vec::new();
    for n in 1..=n_max {
        for g in enumerate_graphs(n, SWEEP_MAX_N)? {
            graphs.push((write_graph6(&g)?, g));
        }
    }
    sweep_graphs(graphs, policy, opts, jobs)
}

fn degree_list(degrees: &[DegreeCount]) -> String {
    degrees
        .iter()
        .map(|c| format!("{}:{}", c.degree, c.count))
        .collect::<Vec<_>>()
        .join(";")
}

/// CSV summary: one row per report.
pub fn write_summary_csv<W: Write>(reports: &[ConjectureReport], w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record([
        "graph6",
        "n",
        "aut_order",
        "max_orbit",
        "generator_degrees",
        "beta_proxy",
        "verified_up_to",
        "A",
        "B",
    ])?;
    for r in reports {
        out.write_record([
            r.graph6.clone(),
            r.n.to_string(),
            r.aut_order.to_string(),
            r.max_orbit.to_string(),
            degree_list(&r.generator_degrees),
            r.beta_proxy.to_string(),
            r.verified_up_to_degree.to_string(),
            r.conjecture_a.as_str().to_string(),
            r.conjecture_b.as_str().to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}
