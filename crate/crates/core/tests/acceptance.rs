//! One PASS/FAIL line per acceptance criterion. Expected counts and time
//! budgets are pinned below; every comparison is exact.

use std::time::{Duration, Instant};

use setsys::graph::circle::{find_circle_obstructions, is_circle_graph};
use setsys::graph::{lc_orbit, lc_orbit_key, LoopedSimpleGraph};
use setsys::verify::{all_proper_systems, connected_graphs, run, Suite, VerificationReport};
use setsys::{catalog, twisted};

const MAIN_N3: usize = 255;
const MAIN_N4: usize = 65_535;
const S3_ORBIT: usize = 28;
const IDENTITIES: usize = 18;
const TRIALS_ALGEBRA: usize = 10_000;
const TRIALS_PPT: usize = 1_000;
const TRIALS_GRAPH: usize = 1_000;
const SEED: u64 = 1;
const OBSTRUCTION_SIZES: [usize; 3] = [6, 7, 8];
const CONNECTED_LE6: usize = 143;
const CONNECTED_EQ6: usize = 112;
const BINARY_N_LE3: usize = 3 + 15 + 255;

const MAIN_BUDGET: Duration = Duration::from_secs(600);
const IDENTITY_BUDGET: Duration = Duration::from_secs(1);
const OBSTRUCTION_BUDGET: Duration = Duration::from_secs(2 * 3600);
const OBSTRUCTION6_BUDGET: Duration = Duration::from_secs(300);

struct Tally(Vec<(u32, bool)>);

impl Tally {
    fn record(&mut self, id: u32, title: &str, ok: bool, detail: String) {
        println!("{} criterion {id}: {title} ({detail})", if ok { "PASS" } else { "FAIL" });
        self.0.push((id, ok));
    }

    fn report(&mut self, id: u32, title: &str, r: &VerificationReport, instances: usize, budget: Option<Duration>) {
        let in_time = budget.is_none_or(|b| r.elapsed < b);
        let ok = r.passed() && r.instances == instances && in_time;
        let detail = format!(
            "{} of {instances} instances, {} failures, {:.2?}",
            r.instances,
            r.failures.len(),
            r.elapsed
        );
        if !r.passed() {
            print!("{r}");
        }
        self.record(id, title, ok, detail);
    }
}

fn suite(s: Suite) -> VerificationReport {
    run(&s).expect("suite parameters within guards")
}

fn main() {
    let mut t = Tally(Vec::new());

    // single-threaded, as the budget is stated
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let r = pool.install(|| suite(Suite::MainTheorem { max_n: 4 }));
    let counts = (all_proper_systems(3).unwrap().len(), all_proper_systems(4).unwrap().len());
    t.report(
        1,
        "vf-safe by orbit ⇔ no S3-dual 3-minor, n = 3 and 4",
        &r,
        MAIN_N3 + MAIN_N4,
        Some(MAIN_BUDGET),
    );
    assert_eq!(counts, (MAIN_N3, MAIN_N4));

    let r = suite(Suite::Tables);
    let orbit_len = twisted::orbit(&catalog::get("S3").unwrap(), true).unwrap().len();
    let ok = r.passed() && r.instances == S3_ORBIT && orbit_len == S3_ORBIT;
    t.record(
        2,
        "orbit of S3 has 28 classes, equal to the tabulated set",
        ok,
        format!("orbit {orbit_len}, tabulated {}, {} failures", r.instances, r.failures.len()),
    );

    t.report(3, "identity suite", &suite(Suite::Identities), IDENTITIES, Some(IDENTITY_BUDGET));

    t.report(
        4,
        "algebra laws on random systems, |E| ≤ 6",
        &suite(Suite::Interactions {
            trials: TRIALS_ALGEBRA,
            seed: SEED,
        }),
        TRIALS_ALGEBRA,
        None,
    );

    t.report(
        5,
        "Tucker identity and pivot laws, n ≤ 8",
        &suite(Suite::Ppt {
            trials: TRIALS_PPT,
            max_n: 8,
            seed: SEED,
        }),
        TRIALS_PPT,
        None,
    );

    t.report(
        6,
        "graph operations match set-system operations, n ≤ 7",
        &suite(Suite::GraphBridge {
            trials: TRIALS_GRAPH,
            seed: SEED,
        }),
        TRIALS_GRAPH,
        None,
    );

    let start = Instant::now();
    let six = find_circle_obstructions(6).unwrap();
    let six_time = start.elapsed();
    let start = Instant::now();
    let found = find_circle_obstructions(8).unwrap();
    let full_time = start.elapsed();
    let sizes: Vec<usize> = found.iter().map(LoopedSimpleGraph::size).collect();
    let keys: Vec<_> = found.iter().map(|g| lc_orbit_key(g).unwrap()).collect();
    let distinct = keys.iter().enumerate().all(|(i, k)| !keys[..i].contains(k));
    let minimal = found.iter().all(|g| {
        !is_circle_graph(g).unwrap()
            && lc_orbit(g, true).unwrap().iter().all(|m| {
                (0..m.size()).all(|v| is_circle_graph(&m.vertex_delete(v).unwrap()).unwrap())
            })
    });
    let cache = suite(Suite::CircleObstructions { max_n: 8 });
    let ok = six.len() == 1
        && sizes == OBSTRUCTION_SIZES
        && distinct
        && minimal
        && cache.passed()
        && six_time < OBSTRUCTION6_BUDGET
        && full_time < OBSTRUCTION_BUDGET;
    t.record(
        7,
        "circle obstructions on 6, 7, 8 vertices, non-circle and minimal",
        ok,
        format!("sizes {sizes:?}, max_n 6 in {six_time:.2?}, max_n 8 in {full_time:.2?}"),
    );

    let r = suite(Suite::RgConsistency { max_n: 6 });
    let eq6 = connected_graphs(6).unwrap().iter().filter(|g| g.size() == 6).count();
    t.report(8, "circle ⇔ ribbon-graphic, connected graphs on ≤ 6 vertices", &r, CONNECTED_LE6, None);
    assert_eq!(eq6, CONNECTED_EQ6);

    t.report(
        9,
        "binary ⇔ no B1/S3-dual 3-minor, binary ⇒ vf-safe, n ≤ 3",
        &suite(Suite::BinaryCorollary { max_n: 3 }),
        BINARY_N_LE3,
        None,
    );

    let failed: Vec<u32> = t.0.iter().filter(|(_, ok)| !ok).map(|(id, _)| *id).collect();
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
