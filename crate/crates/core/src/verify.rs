//! Verification suites: exhaustive and seeded-random checks of the
//! algebra, the excluded-3-minor characterizations and the graph bridge.
//!
//! Every suite is deterministic for fixed parameters. Instances are
//! checked in parallel and reported in enumeration order.

use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::canon::{canonical_key, CanonKey};
use crate::catalog;
use crate::delta::is_delta_matroid;
use crate::error::{Error, Result};
use crate::gf2::{delta_matroid_of_matrix, is_binary, SymmetricBinaryMatrix};
use crate::graph::circle::{circle_obstructions, find_circle_obstructions, is_circle_graph};
use crate::graph::ribbon::{is_binary_via_obstruction, is_ribbon_graphic};
use crate::graph::{all_graphs, delta_matroid_of_graph, lc_orbit, lc_orbit_key, LoopedSimpleGraph};
use crate::subset::{GroundSet, Subset};
use crate::system::{Op, SetSystem, Step};
use crate::twisted::{dual_pivot, is_vf_safe, is_vf_safe_via_obstruction, orbit};

/// A single failed check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub instance: String,
    pub expected: String,
    pub got: String,
}

/// Outcome of one suite.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub suite: String,
    pub instances: usize,
    pub failures: Vec<Failure>,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Deterministic summary; wall time is left out so reports diff cleanly.
impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(
            f,
            "{verdict} {}: {} instances, {} failures",
            self.suite,
            self.instances,
            self.failures.len()
        )?;
        for fail in self.failures.iter().take(20) {
            writeln!(f, "  instance: {}", fail.instance)?;
            writeln!(f, "    expected: {}", fail.expected)?;
            writeln!(f, "    got:      {}", fail.got)?;
        }
        if self.failures.len() > 20 {
            writeln!(f, "  ... {} more", self.failures.len() - 20)?;
        }
        Ok(())
    }
}

/// A suite with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Suite {
    MainTheorem { max_n: usize },
    Tables,
    Identities,
    Interactions { trials: usize, seed: u64 },
    Ppt { trials: usize, max_n: usize, seed: u64 },
    GraphBridge { trials: usize, seed: u64 },
    BinaryCorollary { max_n: usize },
    CircleObstructions { max_n: usize },
    RgConsistency { max_n: usize },
}

impl Suite {
    pub fn name(&self) -> &'static str {
        match self {
            Suite::MainTheorem { .. } => "main-theorem",
            Suite::Tables => "tables",
            Suite::Identities => "identities",
            Suite::Interactions { .. } => "interactions",
            Suite::Ppt { .. } => "ppt",
            Suite::GraphBridge { .. } => "graph-bridge",
            Suite::BinaryCorollary { .. } => "binary-corollary",
            Suite::CircleObstructions { .. } => "circle-obstructions",
            Suite::RgConsistency { .. } => "rg-consistency",
        }
    }

    /// Every suite at its default parameters.
    pub fn defaults() -> Vec<Suite> {
        vec![
            Suite::MainTheorem { max_n: 4 },
            Suite::Tables,
            Suite::Identities,
            Suite::Interactions { trials: 10_000, seed: 1 },
            Suite::Ppt { trials: 1_000, max_n: 8, seed: 1 },
            Suite::GraphBridge { trials: 1_000, seed: 1 },
            Suite::BinaryCorollary { max_n: 3 },
            Suite::CircleObstructions { max_n: 8 },
            Suite::RgConsistency { max_n: 6 },
        ]
    }

    fn label(&self) -> String {
        match self {
            Suite::MainTheorem { max_n } | Suite::BinaryCorollary { max_n } => {
                format!("{} --max-n {max_n}", self.name())
            }
            Suite::CircleObstructions { max_n } | Suite::RgConsistency { max_n } => {
                format!("{} --max-n {max_n}", self.name())
            }
            Suite::Tables | Suite::Identities => self.name().to_string(),
            Suite::Interactions { trials, seed } | Suite::GraphBridge { trials, seed } => {
                format!("{} --trials {trials} --seed {seed}", self.name())
            }
            Suite::Ppt { trials, max_n, seed } => {
                format!("{} --trials {trials} --max-n {max_n} --seed {seed}", self.name())
            }
        }
    }
}

pub fn run(suite: &Suite) -> Result<VerificationReport> {
    let start = Instant::now();
    let (instances, failures) = match *suite {
        Suite::MainTheorem { max_n } => main_theorem(max_n)?,
        Suite::Tables => tables()?,
        Suite::Identities => identities()?,
        Suite::Interactions { trials, seed } => interactions(trials, seed),
        Suite::Ppt { trials, max_n, seed } => ppt(trials, max_n, seed)?,
        Suite::GraphBridge { trials, seed } => graph_bridge(trials, seed),
        Suite::BinaryCorollary { max_n } => binary_corollary(max_n)?,
        Suite::CircleObstructions { max_n } => circle_suite(max_n)?,
        Suite::RgConsistency { max_n } => rg_consistency(max_n)?,
    };
    Ok(VerificationReport {
        suite: suite.label(),
        instances,
        failures,
        elapsed: start.elapsed(),
    })
}

type Outcome = (usize, Vec<Failure>);

fn fail(instance: impl fmt::Display, expected: impl fmt::Display, got: impl fmt::Display) -> Failure {
    Failure {
        instance: instance.to_string(),
        expected: expected.to_string(),
        got: got.to_string(),
    }
}

/// Runs `check` over `items` in parallel, keeping failures in item order.
fn par_check<T: Sync>(items: &[T], check: impl Fn(&T) -> Vec<Failure> + Sync + Send) -> Outcome {
    let failures = items.par_iter().map(check).collect::<Vec<_>>().concat();
    (items.len(), failures)
}

/// Every proper set system on `n` positionally labeled elements, in code
/// order (`2^(2^n) − 1` systems).
pub fn all_proper_systems(n: usize) -> Result<Vec<SetSystem>> {
    if n > 4 {
        return Err(Error::TooLarge {
            what: "exhaustive set-system enumeration",
            size: n,
            max: 4,
        });
    }
    let g = GroundSet::positional(n);
    let m = 1u32 << n;
    Ok((1u64..1 << m)
        .map(|code| {
            SetSystem::new(g.clone(), (0..m).filter(|i| code >> i & 1 == 1).map(Subset)).expect("valid family")
        })
        .collect())
}

fn main_theorem(max_n: usize) -> Result<Outcome> {
    if !(3..=4).contains(&max_n) {
        return Err(Error::TooLarge {
            what: "main-theorem suite (max-n is 3 or 4)",
            size: max_n,
            max: 4,
        });
    }
    let mut systems = Vec::new();
    for n in 3..=max_n {
        systems.extend(all_proper_systems(n)?);
    }
    Ok(par_check(&systems, |s| {
        let by_orbit = is_vf_safe(s).expect("n ≤ 4");
        let by_minors = is_vf_safe_via_obstruction(s).expect("n ≤ 4");
        if by_orbit == by_minors {
            vec![]
        } else {
            vec![fail(s, format!("vf-safe = {by_orbit}"), format!("no S3-dual 3-minor = {by_minors}"))]
        }
    }))
}

fn tables() -> Result<Outcome> {
    let mut failures = Vec::new();
    let entries = catalog::s3_table_entries();
    let mut tabulated: BTreeSet<CanonKey> = BTreeSet::new();
    for (name, s) in &entries {
        if !tabulated.insert(canonical_key(s)?) {
            failures.push(fail(name, "a new isomorphism class", "a repeated class"));
        }
    }
    let computed: BTreeSet<CanonKey> = orbit(&catalog::get("S3")?, true)?
        .members
        .iter()
        .map(canonical_key)
        .collect::<Result<_>>()?;
    if computed.len() != 28 {
        failures.push(fail("orbit(S3) up to isomorphism", 28, computed.len()));
    }
    for k in computed.difference(&tabulated) {
        failures.push(fail(k.to_system(), "tabulated", "missing from tables"));
    }
    for k in tabulated.difference(&computed) {
        failures.push(fail(k.to_system(), "in the orbit of S3", "not in the orbit"));
    }
    Ok((entries.len(), failures))
}

fn identities() -> Result<Outcome> {
    let suite = catalog::identity_suite();
    let mut failures = Vec::new();
    for id in &suite {
        if !id.check()? {
            failures.push(fail(id, "holds", format!("lhs = {}, rhs = {}", id.lhs.eval()?, id.rhs.eval()?)));
        }
    }
    Ok((suite.len(), failures))
}

/// A random proper system on `n` elements with feasible-set density `p`.
pub fn random_system(rng: &mut ChaCha8Rng, n: usize, p: f64) -> SetSystem {
    let m = 1u32 << n;
    let mut fam: Vec<Subset> = (0..m).filter(|_| rng.gen_bool(p)).map(Subset).collect();
    if fam.is_empty() {
        fam.push(Subset(rng.gen_range(0..m)));
    }
    SetSystem::new(GroundSet::positional(n), fam).expect("valid family")
}

fn random_subset(rng: &mut ChaCha8Rng, n: usize) -> Subset {
    Subset(rng.gen_range(0..1u32 << n))
}

/// The seeded instances for the interactions suite: `|E| ≤ 6` with mixed
/// densities so that loops, coloops and pseudo-loops occur.
pub fn interaction_instances(trials: usize, seed: u64) -> Vec<(SetSystem, u64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials)
        .map(|_| {
            let n = rng.gen_range(1..=6);
            let p = [0.1, 0.3, 0.5, 0.8][rng.gen_range(0..4)];
            (random_system(&mut rng, n, p), rng.gen())
        })
        .collect()
}

fn interactions(trials: usize, seed: u64) -> Outcome {
    par_check(&interaction_instances(trials, seed), |(s, sub_seed)| {
        check_interactions(s, &mut ChaCha8Rng::seed_from_u64(*sub_seed))
    })
}

fn lc(s: &SetSystem, a: Subset) -> SetSystem {
    s.loop_complement(a).expect("subset in range")
}

fn tw(s: &SetSystem, a: Subset) -> SetSystem {
    s.twist(a).expect("subset in range")
}

fn by_name(s: &SetSystem, name: &str, op: Op) -> SetSystem {
    s.apply_sequence(&[Step::new(name, op)]).expect("element present")
}

/// The algebraic laws for one system; `rng` draws the subsets and elements.
pub fn check_interactions(s: &SetSystem, rng: &mut ChaCha8Rng) -> Vec<Failure> {
    let n = s.size();
    let mut out = Vec::new();
    let mut expect = |law: &str, lhs: SetSystem, rhs: SetSystem| {
        if lhs != rhs {
            out.push(fail(format!("{law} on {s}"), rhs, lhs));
        }
    };
    let a = random_subset(rng, n);
    let b = Subset(random_subset(rng, n).0 & !a.0);
    expect("(S*A)*A = S", tw(&tw(s, a), a), s.clone());
    expect("(S+A)+A = S", lc(&lc(s, a), a), s.clone());
    expect("(S+A)*B = (S*B)+A", tw(&lc(s, a), b), lc(&tw(s, b), a));
    expect("((S+A)*A)+A = ((S*A)+A)*A", lc(&tw(&lc(s, a), a), a), tw(&lc(&tw(s, a), a), a));

    let e = rng.gen_range(0..n);
    let name = s.ground().label(e).to_string();
    let es = Subset::singleton(e);
    use Op::*;
    let del = by_name(s, &name, Delete);
    let con = by_name(s, &name, Contract);
    let pen = by_name(s, &name, Penrose);
    expect("(S+a)\\a = S\\a", by_name(&lc(s, es), &name, Delete), del.clone());
    let table: [(&str, SetSystem, [&SetSystem; 3]); 6] = [
        ("S", s.clone(), [&con, &del, &pen]),
        ("S*e", tw(s, es), [&del, &con, &pen]),
        ("S+e", lc(s, es), [&pen, &del, &con]),
        ("(S+e)*e", tw(&lc(s, es), es), [&del, &pen, &con]),
        ("(S*e)+e", lc(&tw(s, es), es), [&pen, &con, &del]),
        ("((S*e)+e)*e", tw(&lc(&tw(s, es), es), es), [&con, &pen, &del]),
    ];
    for (row, t, want) in &table {
        for (op, sym, w) in [(Contract, "/", want[0]), (Delete, "\\", want[1]), (Penrose, "‡", want[2])] {
            expect(&format!("table: {row} {sym}e"), by_name(t, &name, op), w.clone());
        }
    }

    if n >= 2 {
        let mut f = rng.gen_range(0..n - 1);
        if f >= e {
            f += 1;
        }
        let other = s.ground().label(f).to_string();
        let plus_a = |t: &SetSystem| lc(t, Subset::singleton(t.element(&name).expect("a survives")));
        expect("(S+a)\\b = (S\\b)+a", by_name(&lc(s, es), &other, Delete), plus_a(&by_name(s, &other, Delete)));
        expect("(S+a)/b = (S/b)+a", by_name(&lc(s, es), &other, Contract), plus_a(&by_name(s, &other, Contract)));
    }

    // three disjoint sets; when the closed form has a witness, any order of
    // the single-element operations agrees with it
    let (mut x, mut y, mut z) = (Subset::EMPTY, Subset::EMPTY, Subset::EMPTY);
    for i in 0..n {
        match rng.gen_range(0..4) {
            0 => x = x.with(i),
            1 => y = y.with(i),
            2 => z = z.with(i),
            _ => {}
        }
    }
    if let Ok(m) = s.three_minor(x, y, z) {
        let mut steps: Vec<Step> = Vec::new();
        for (set, op) in [(x, Delete), (y, Contract), (z, Penrose)] {
            steps.extend(set.iter().map(|i| Step::new(s.ground().label(i), op)));
        }
        for _ in 0..2 {
            for i in (1..steps.len()).rev() {
                steps.swap(i, rng.gen_range(0..=i));
            }
            let got = s.apply_sequence(&steps).expect("elements present");
            let order: Vec<String> = steps
                .iter()
                .map(|st| format!("{}{}", match st.op {
                    Delete => "\\",
                    Contract => "/",
                    _ => "‡",
                }, st.element))
                .collect();
            expect(&format!("3-minor order {}", order.join("")), got, m.clone());
        }
    }
    out
}

/// A random symmetric GF(2) matrix.
pub fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> SymmetricBinaryMatrix {
    let mut rows = vec![0u32; n];
    for i in 0..n {
        for j in i..n {
            if rng.gen_bool(0.5) {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
        }
    }
    SymmetricBinaryMatrix::new(GroundSet::positional(n), rows).expect("symmetric by construction")
}

fn ppt(trials: usize, max_n: usize, seed: u64) -> Result<Outcome> {
    if max_n > 12 {
        return Err(Error::TooLarge {
            what: "ppt suite",
            size: max_n,
            max: 12,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let matrices: Vec<SymmetricBinaryMatrix> = (0..trials)
        .map(|_| {
            let n = rng.gen_range(1..=max_n);
            random_matrix(&mut rng, n)
        })
        .collect();
    Ok(par_check(&matrices, check_ppt))
}

/// Tucker's identity, `D(A)*X = D(A*X)`, involution and symmetry for
/// every nonsingular `X`; singular pivots must be rejected.
pub fn check_ppt(a: &SymmetricBinaryMatrix) -> Vec<Failure> {
    let n = a.size();
    let d = delta_matroid_of_matrix(a);
    let mut out = Vec::new();
    for xm in 0..1u32 << n {
        let x = Subset(xm);
        let p = match a.ppt(x) {
            Ok(p) => p,
            Err(e) => {
                if d.is_feasible(x) {
                    out.push(fail(format!("{a} * {xm:b}"), "a pivot", e));
                }
                continue;
            }
        };
        if !d.is_feasible(x) {
            out.push(fail(format!("{a} * {xm:b}"), "singular pivot error", &p));
            continue;
        }
        for ym in 0..1u32 << n {
            let lhs = p.principal_nonsingular(Subset(ym)).expect("in range");
            let rhs = d.is_feasible(x ^ Subset(ym));
            if lhs != rhs {
                out.push(fail(format!("{a} * {xm:b}, Y = {ym:b}"), rhs, lhs));
            }
        }
        let twisted = d.twist(x).expect("in range");
        let dp = delta_matroid_of_matrix(&p);
        if dp != twisted {
            out.push(fail(format!("D(A*X) for {a}, X = {xm:b}"), twisted, dp));
        }
        if SymmetricBinaryMatrix::new(GroundSet::positional(n), p.rows().to_vec()).is_err() {
            out.push(fail(format!("{a} * {xm:b}"), "symmetric", &p));
        }
        match p.ppt(x) {
            Ok(back) if back == *a => {}
            other => out.push(fail(format!("({a} * {xm:b}) * {xm:b}"), a, format!("{other:?}"))),
        }
    }
    out
}

/// A random loopless graph with edge probability 1/2.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> LoopedSimpleGraph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(0.5))
        .collect();
    LoopedSimpleGraph::new(GroundSet::positional(n), &edges, Subset::EMPTY).expect("in range")
}

fn graph_bridge(trials: usize, seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let graphs: Vec<LoopedSimpleGraph> = (0..trials)
        .map(|_| {
            let n = rng.gen_range(1..=7);
            random_graph(&mut rng, n)
        })
        .collect();
    par_check(&graphs, check_graph_bridge)
}

/// The loop-toggle, local-complementation, edge-pivot and commutation laws
/// at every vertex and pair.
pub fn check_graph_bridge(g: &LoopedSimpleGraph) -> Vec<Failure> {
    let n = g.size();
    let d = delta_matroid_of_graph(g);
    let mut out = Vec::new();
    for v in 0..n {
        let vs = Subset::singleton(v);
        let lhs = delta_matroid_of_graph(&g.loop_toggle(v).expect("in range"));
        let rhs = d.loop_complement(vs).expect("in range");
        if lhs != rhs {
            out.push(fail(format!("D(G+{v}) for {g}"), rhs, lhs));
        }
        let gv = g.local_complement(v).expect("in range");
        let lhs = delta_matroid_of_graph(&gv);
        let rhs = dual_pivot(&d, vs).and_then(|t| t.loop_complement(g.neighbours(v))).expect("in range");
        if lhs != rhs {
            out.push(fail(format!("D(G^{v}) for {g}"), rhs, lhs));
        }
        for w in 0..n {
            if w == v {
                continue;
            }
            if g.adjacent(v, w) {
                let lhs = delta_matroid_of_graph(&g.edge_pivot(v, w).expect("adjacent"));
                let rhs = d.twist(vs.with(w)).expect("in range");
                if lhs != rhs {
                    out.push(fail(format!("D(((G^{v})^{w})^{v}) for {g}"), rhs, lhs));
                }
            }
            let lhs = gv.vertex_delete(w).expect("in range");
            let v2 = if v > w { v - 1 } else { v };
            let rhs = g.vertex_delete(w).and_then(|h| h.local_complement(v2)).expect("in range");
            if lhs != rhs {
                out.push(fail(format!("(G^{v})\\{w} for {g}"), rhs, lhs));
            }
        }
    }
    out
}

fn binary_corollary(max_n: usize) -> Result<Outcome> {
    let mut systems = Vec::new();
    for n in 1..=max_n {
        systems.extend(all_proper_systems(n)?);
    }
    Ok(par_check(&systems, |s| {
        let mut out = Vec::new();
        let binary = is_binary(s).expect("proper");
        let by_minors = is_binary_via_obstruction(s).expect("small");
        if binary != by_minors {
            out.push(fail(s, format!("binary delta-matroid = {binary}"), format!("no B1/S3-dual 3-minor = {by_minors}")));
        }
        if binary && !is_vf_safe(s).expect("small") {
            out.push(fail(s, "binary implies vf-safe", "binary but not vf-safe"));
        }
        if binary && !is_delta_matroid(s) {
            out.push(fail(s, "binary implies delta-matroid", "binary non-delta-matroid"));
        }
        out
    }))
}

fn circle_suite(max_n: usize) -> Result<Outcome> {
    let found = find_circle_obstructions(max_n)?;
    let mut failures = Vec::new();
    let sizes: Vec<usize> = found.iter().map(LoopedSimpleGraph::size).collect();
    let expected: Vec<usize> = [6, 7, 8].into_iter().filter(|&k| k <= max_n).collect();
    if sizes != expected {
        failures.push(fail(format!("find_circle_obstructions({max_n})"), format!("{expected:?}"), format!("{sizes:?}")));
    }
    let cached = circle_obstructions()?;
    for g in &found {
        if is_circle_graph(g)? {
            failures.push(fail(g, "not a circle graph", "circle graph"));
        }
        for m in lc_orbit(g, true)? {
            for v in 0..m.size() {
                let h = m.vertex_delete(v)?;
                if !is_circle_graph(&h)? {
                    failures.push(fail(g, "every proper vertex minor is circle", format!("{h} is not")));
                }
            }
        }
        let key = lc_orbit_key(g)?;
        let in_cache = cached.iter().any(|c| lc_orbit_key(c).is_ok_and(|k| k == key));
        if !in_cache {
            failures.push(fail(g, "matches the embedded cache", "not cached"));
        }
    }
    Ok((found.len(), failures))
}

/// Connected loopless graphs on `1..=max_n` vertices up to isomorphism.
pub fn connected_graphs(max_n: usize) -> Result<Vec<LoopedSimpleGraph>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.extend(all_graphs(n)?.into_iter().filter(LoopedSimpleGraph::is_connected));
    }
    Ok(out)
}

fn rg_consistency(max_n: usize) -> Result<Outcome> {
    if max_n > 7 {
        return Err(Error::TooLarge {
            what: "rg-consistency suite",
            size: max_n,
            max: 7,
        });
    }
    let graphs = connected_graphs(max_n)?;
    // build the obstruction orbits once before fanning out
    is_ribbon_graphic(&delta_matroid_of_graph(&graphs[graphs.len() - 1]))?;
    Ok(par_check(&graphs, |g| {
        let circle = is_circle_graph(g).expect("small");
        let rg = is_ribbon_graphic(&delta_matroid_of_graph(g)).expect("small");
        if circle == rg {
            vec![]
        } else {
            vec![fail(g, format!("circle = {circle}"), format!("ribbon-graphic = {rg}"))]
        }
    }))
}
