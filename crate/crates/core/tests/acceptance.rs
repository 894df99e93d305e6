//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use ltistruct::dsf::{
    check_relation, dsf, dsf_transfer, signal_structure_graph, split_q, DynamicalStructureFunction, Signal,
};
use ltistruct::gds::{dependency_graph, DepVertex, Gds};
use ltistruct::polyrat::{q, QMatrix, RationalFunction, RationalMatrix};
use ltistruct::realization::{
    descriptor_transfer_function, is_controllable, is_observable, minimize_intricacy, output_normal_form,
    read_realization, transfer_function, Block, GeneralizedRealization,
};
use ltistruct::sparsity::sparsity;
use ltistruct::structure::{
    comp_structure, finest_admissible_partition, lft_transfer, subsystem_structure, to_lft, Vertex,
};
use ltistruct::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn load(name: &str) -> GeneralizedRealization {
    read_realization(format!("{}/../../corpus/{name}.json", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn rm(rows: &[&[&str]]) -> RationalMatrix {
    RationalMatrix::from_rows(
        rows.iter().map(|r| r.iter().map(|e| e.parse::<RationalFunction>().unwrap()).collect()).collect(),
    )
    .unwrap()
}

fn over(den: &str, nums: &[&[&str]]) -> RationalMatrix {
    let texts: Vec<Vec<String>> = nums.iter().map(|r| r.iter().map(|n| format!("({n})/{den}")).collect()).collect();
    let rows: Vec<Vec<&str>> = texts.iter().map(|r| r.iter().map(String::as_str).collect()).collect();
    rm(&rows.iter().map(Vec::as_slice).collect::<Vec<_>>())
}

fn dsf_of(g: &GeneralizedRealization) -> Result<DynamicalStructureFunction, Error> {
    dsf(&output_normal_form(&minimize_intricacy(g)?)?)
}

fn ring_dsf() -> Outcome {
    let d = dsf_of(&load("ring")).map_err(|e| e.to_string())?;
    let q_want = rm(&[&["0", "0", "-3/(s^2+3*s+2)"], &["-1/(s^2+7*s+12)", "0", "0"], &["0", "10/(s^2+9*s+20)", "0"]]);
    let p_want = rm(&[&["2/(s+2)", "0", "0"], &["0", "3/(s+3)", "0"], &["0", "0", "6/(s+4)"]]);
    ensure!(d.q == q_want, "Q = {}", d.q);
    ensure!(d.p == p_want, "P = {}", d.p);
    let edges: Vec<_> = signal_structure_graph(&d).output_edges().map(|e| (e.from, e.to)).collect();
    let cycle = vec![(Signal::Y(0), Signal::Y(1)), (Signal::Y(1), Signal::Y(2)), (Signal::Y(2), Signal::Y(0))];
    ensure!(edges == cycle, "output edges {edges:?}");
    Ok("Q, P exact; signal structure is the 3-cycle".into())
}

fn ring_transfer() -> Outcome {
    let g = load("ring");
    let want = over(
        "(s^6+19*s^5+145*s^4+565*s^3+1174*s^2+1216*s+450)",
        &[
            &["2*(s^5+17*s^4+111*s^3+343*s^2+488*s+240)", "-90*(s+4)", "-18*(s^3+12*s^2+47*s+60)"],
            &["-2*(s^3+10*s^2+29*s+20)", "3*(s^5+16*s^4+97*s^3+274*s^2+352*s+160)", "18*(s+5)"],
            &["-20*(s+1)", "30*(s^3+7*s^2+14*s+8)", "6*(s^5+15*s^4+85*s^3+225*s^2+274*s+120)"],
        ],
    );
    let ss = transfer_function(&minimize_intricacy(&g).map_err(|e| e.to_string())?);
    ensure!(ss == want, "state space G = {ss}");
    let via_dsf = dsf_of(&g).and_then(|d| dsf_transfer(&d)).map_err(|e| e.to_string())?;
    ensure!(via_dsf == want, "DSF G = {via_dsf}");
    Ok("both routes give the expected 3x3 G".into())
}

fn strongly_connected(count: usize, edges: &[(usize, usize)]) -> bool {
    let reach = |start: usize, forward: bool| {
        let mut seen = vec![false; count];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            for &(a, b) in edges {
                let (from, to) = if forward { (a, b) } else { (b, a) };
                if from == v && !seen[to] {
                    seen[to] = true;
                    stack.push(to);
                }
            }
        }
        seen.into_iter().all(|s| s)
    };
    count == 0 || (reach(0, true) && reach(0, false))
}

fn diagonal() -> Outcome {
    let g = load("diagonal");
    let r = minimize_intricacy(&g).map_err(|e| e.to_string())?;
    let tf = transfer_function(&r);
    ensure!(tf == rm(&[&["6/(s+3)", "0"], &["0", "-6/(s+6)"]]), "G = {tf}");
    ensure!(is_controllable(&r), "not controllable");
    ensure!(is_observable(&r), "not observable");
    let z = sparsity(&tf);
    ensure!(z.edges.len() == 2, "{} sparsity edges", z.edges.len());
    let c = comp_structure(&g).map_err(|e| e.to_string())?;
    let state_edges: Vec<(usize, usize)> = c
        .edges()
        .iter()
        .filter_map(|e| match (c.vertex(e.from), c.vertex(e.to)) {
            (Vertex::State(a), Vertex::State(b)) => Some((a, b)),
            _ => None,
        })
        .collect();
    ensure!(strongly_connected(r.n(), &state_edges), "state edges {state_edges:?}");
    Ok(format!("G diagonal, minimal, 2 sparsity edges, states strongly connected ({} edges)", state_edges.len()))
}

fn two_structures() -> Outcome {
    let (g1, g2) = (load("c1"), load("c2"));
    let (r1, r2) =
        (minimize_intricacy(&g1).map_err(|e| e.to_string())?, minimize_intricacy(&g2).map_err(|e| e.to_string())?);
    ensure!(r1.n() == 5, "n = {}", r1.n());
    ensure!(r1.a() == r2.a() && r1.b() == r2.b() && r1.c() == r2.c(), "minimal realizations differ");

    let den3 = "(s^3+21*s^2+130*s+234)";
    let first_block = over(
        den3,
        &[&["2*(s^2+18*s+76)", "s^2+18*s+76", "s^2+19*s+86"], &["2*(s^2+15*s+52)", "s^2+15*s+52", "(13+s)*(s+5)"]],
    );
    let c1 = comp_structure(&g1).map_err(|e| e.to_string())?;
    let s1 = subsystem_structure(&c1).with_transfer_functions(&c1, &g1).map_err(|e| e.to_string())?;
    let c2 = comp_structure(&g2).map_err(|e| e.to_string())?;
    let s2 = subsystem_structure(&c2).with_transfer_functions(&c2, &g2).map_err(|e| e.to_string())?;
    ensure!(s1.blocks().len() == 3, "{} blocks in the first structure", s1.blocks().len());
    ensure!(s2.blocks().len() == 2, "{} blocks in the second structure", s2.blocks().len());
    let t1 = s1.transfer_functions().unwrap();
    let t2 = s2.transfer_functions().unwrap();
    ensure!(t1[0] == first_block, "first block of the first structure = {}", t1[0]);
    ensure!(t2[0] == first_block, "first block of the second structure = {}", t2[0]);
    let second = over("(s^2+12*s+34)", &[&["2*s+13", "s+8", "7+s"], &["s+10", "2*(7+s)", "s+8"]]);
    ensure!(t2[1] == second, "second block = {}", t2[1]);

    let f1 = to_lft(&s1).map_err(|e| e.to_string())?;
    let f2 = to_lft(&s2).map_err(|e| e.to_string())?;
    let l1 = QMatrix::from_ints(&[&[0], &[0], &[1], &[0], &[0], &[0], &[1], &[0], &[0], &[0], &[1]]);
    let k1 = QMatrix::from_ints(&[
        &[0, 0, 1, 0],
        &[0, 0, 0, 1],
        &[0, 0, 0, 0],
        &[1, 0, 0, 0],
        &[0, 1, 0, 0],
        &[0, 0, 0, 1],
        &[0, 0, 0, 0],
        &[1, 0, 0, 0],
        &[0, 1, 0, 0],
        &[0, 0, 1, 0],
        &[0, 0, 0, 0],
    ]);
    let l2 = QMatrix::from_ints(&[&[0], &[0], &[1], &[0], &[0], &[1]]);
    let k2 =
        QMatrix::from_ints(&[&[0, 0, 1, 0], &[0, 0, 0, 1], &[0, 0, 0, 0], &[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, 0]]);
    ensure!(f1.l == l1 && f1.k == k1, "first routing L = {}, K = {}", f1.l, f1.k);
    ensure!(f2.l == l2 && f2.k == k2, "second routing L = {}, K = {}", f2.l, f2.k);

    let (a, b) = ("(s^2+14*s+39)", "(s^2+17*s+64)");
    let q_want = rm(&[
        &["0", &format!("(12+s)/{a}"), &format!("2*(s+10)/{a}"), &format!("(s+10)/{a}")],
        &[&format!("(13+s)/{b}"), "0", &format!("2*(s+10)/{b}"), &format!("(s+10)/{b}")],
        &["2/(s+6)", "1/(s+6)", "0", "1/(s+6)"],
        &["1/(s+6)", "2/(s+6)", "2/(s+6)", "0"],
    ]);
    let p_want = rm(&[&[&format!("(11+s)/{a}")], &[&format!("(13+s)/{b}")], &["1/(s+6)"], &["1/(s+6)"]]);
    for g in [&g1, &g2] {
        let d = dsf_of(g).map_err(|e| e.to_string())?;
        ensure!(d.q == q_want && d.p == p_want, "DSF Q = {}, P = {}", d.q, d.p);
    }
    Ok("same 5-state minimal realization; 3 and 2 blocks; expected blocks, L/K and DSF".into())
}

fn relation() -> Outcome {
    let g = load("c2");
    let c = comp_structure(&g).map_err(|e| e.to_string())?;
    let ss = subsystem_structure(&c).with_transfer_functions(&c, &g).map_err(|e| e.to_string())?;
    let lft = to_lft(&ss).map_err(|e| e.to_string())?;
    let assignment = ss.output_assignment(&c);

    let first = dsf_of(&g).map_err(|e| e.to_string())?;
    let (q_int, _) = split_q(&first, &assignment).map_err(|e| e.to_string())?;
    let q_int_want = rm(&[
        &["0", "(12+s)/(s^2+14*s+39)", "0", "0"],
        &["(13+s)/(s^2+17*s+64)", "0", "0", "0"],
        &["0", "0", "0", "1/(s+6)"],
        &["0", "0", "2/(s+6)", "0"],
    ]);
    ensure!(q_int == q_int_want, "Qint = {q_int}");
    let check = check_relation(&lft, &first, &assignment).map_err(|e| e.to_string())?;
    ensure!(check.holds, "first DSF residual {}", check.residual);

    let den3 = "(s^3+21*s^2+130*s+234)";
    let den2 = "(s^2+12*s+34)";
    let q2 = rm(&[
        &["0", "0", &format!("2*(s^2+18*s+76)/{den3}"), &format!("(s^2+18*s+76)/{den3}")],
        &["0", "0", &format!("2*(52+15*s+s^2)/{den3}"), &format!("(52+15*s+s^2)/{den3}")],
        &[&format!("(2*s+13)/{den2}"), &format!("(s+8)/{den2}"), "0", "0"],
        &[&format!("(s+10)/{den2}"), &format!("2*(7+s)/{den2}"), "0", "0"],
    ]);
    let p2 = rm(&[
        &[&format!("(s^2+19*s+86)/{den3}")],
        &[&format!("(13+s)*(s+5)/{den3}")],
        &[&format!("(7+s)/{den2}")],
        &[&format!("(s+8)/{den2}")],
    ]);
    let second = DynamicalStructureFunction::from_parts(
        q2,
        p2,
        QMatrix::zeros(0, 4),
        QMatrix::zeros(4, 1),
        QMatrix::zeros(0, 1),
    )
    .map_err(|e| e.to_string())?;
    let singletons: Vec<usize> = (0..4).collect();
    let (q_int2, _) = split_q(&second, &singletons).map_err(|e| e.to_string())?;
    ensure!(q_int2.is_zero(), "second Qint = {q_int2}");
    let check = check_relation(&lft, &second, &singletons).map_err(|e| e.to_string())?;
    ensure!(check.holds, "second DSF residual {}", check.residual);
    Ok("both DSFs consistent with the two-block LFT".into())
}

fn small_rational(rng: &mut ChaCha8Rng, density: f64) -> ltistruct::polyrat::Q {
    if rng.gen_bool(density) {
        q(rng.gen_range(-3..=3), rng.gen_range(1..=3))
    } else {
        q(0, 1)
    }
}

/// A random realization with a zero-diagonal, invertible `I - Atil`. Some
/// output rows copy a single state or auxiliary, making it manifest.
fn random_realization(rng: &mut ChaCha8Rng, n: usize, l: usize, m: usize, p: usize) -> GeneralizedRealization {
    loop {
        let mut g = GeneralizedRealization::zeros(n, l, m, p);
        for b in Block::ALL {
            let (r, c) = g.shape_of(b);
            let density = if b == Block::Atil { 0.3 } else { 0.5 };
            let mut mat = QMatrix::from_fn(r, c, |_, _| small_rational(rng, density));
            if b == Block::Atil {
                mat = QMatrix::from_fn(r, c, |i, j| if i == j { q(0, 1) } else { mat[(i, j)].clone() });
            }
            g.set(b, mat).unwrap();
        }
        for r in 0..p {
            if rng.gen_bool(0.4) && n + l > 0 {
                let k = rng.gen_range(0..n + l);
                let (c_row, cbar_row) = if k < n {
                    (QMatrix::from_fn(1, n, |_, j| q(i64::from(j == k), 1)), QMatrix::zeros(1, l))
                } else {
                    (QMatrix::zeros(1, n), QMatrix::from_fn(1, l, |_, j| q(i64::from(j == k - n), 1)))
                };
                let c = QMatrix::from_fn(p, n, |i, j| {
                    if i == r {
                        c_row[(0, j)].clone()
                    } else {
                        g.get(Block::C)[(i, j)].clone()
                    }
                });
                let cbar = QMatrix::from_fn(p, l, |i, j| {
                    if i == r {
                        cbar_row[(0, j)].clone()
                    } else {
                        g.get(Block::Cbar)[(i, j)].clone()
                    }
                });
                let d = QMatrix::from_fn(p, m, |i, j| if i == r { q(0, 1) } else { g.get(Block::D)[(i, j)].clone() });
                g.set(Block::C, c).unwrap();
                g.set(Block::Cbar, cbar).unwrap();
                g.set(Block::D, d).unwrap();
            }
        }
        if g.aux_resolvent().is_ok() {
            return g;
        }
    }
}

fn route_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let (mut cases, mut rejected, mut multi_block) = (0, 0, 0);
    while cases < 200 {
        let (n, l, m, p) = (rng.gen_range(1..=5), rng.gen_range(0..=4), rng.gen_range(1..=3), rng.gen_range(1..=3));
        let g = random_realization(&mut rng, n, l, m, p);
        let r = minimize_intricacy(&g).map_err(|e| format!("case {cases}: {e}"))?;
        if r.c().rank() == 0 {
            rejected += 1;
            continue;
        }
        let tf = transfer_function(&r);
        let descriptor = descriptor_transfer_function(&g).map_err(|e| format!("case {cases}: {e}"))?;
        ensure!(descriptor == tf, "case {cases}: minimization changed the transfer function");

        let c = comp_structure(&g).map_err(|e| format!("case {cases}: {e}"))?;
        let ss = subsystem_structure(&c).with_transfer_functions(&c, &g).map_err(|e| format!("case {cases}: {e}"))?;
        if ss.blocks().len() > 1 {
            multi_block += 1;
        }
        let via_lft = to_lft(&ss).and_then(|f| lft_transfer(&f)).map_err(|e| format!("case {cases}: {e}"))?;
        ensure!(via_lft == tf, "case {cases}: LFT route differs\n{}", ltistruct::realization::realization_to_json(&g));

        let d = dsf_of(&g).map_err(|e| format!("case {cases}: {e}"))?;
        for i in 0..d.p1() {
            for j in 0..d.p1() {
                let e = &d.q[(i, j)];
                ensure!(if i == j { e.is_zero() } else { e.is_strictly_proper() }, "case {cases}: Q({i},{j}) = {e}");
            }
        }
        let via_dsf = dsf_transfer(&d).map_err(|e| format!("case {cases}: {e}"))?;
        ensure!(via_dsf == tf, "case {cases}: DSF route differs");
        cases += 1;
    }
    Ok(format!(
        "{cases} realizations, {multi_block} with several blocks, {rejected} without manifest outputs resampled"
    ))
}

/// Every set partition of `0..n` as a block label per element.
fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn grow(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        let next = prefix.iter().max().map_or(0, |m| m + 1);
        for label in 0..=next {
            prefix.push(label);
            grow(prefix, n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    grow(&mut Vec::new(), n, &mut out);
    out
}

fn as_groups(labels: &[usize]) -> BTreeSet<BTreeSet<usize>> {
    let blocks = labels.iter().max().map_or(0, |m| m + 1);
    (0..blocks).map(|b| (0..labels.len()).filter(|&v| labels[v] == b).collect()).collect()
}

/// The unique maximum-cardinality partition in which every hidden edge stays
/// inside one block, or `None` if the maximum is shared.
fn brute_force_partition(n: usize, hidden: &[(usize, usize)]) -> Option<BTreeSet<BTreeSet<usize>>> {
    let admissible: Vec<Vec<usize>> =
        set_partitions(n).into_iter().filter(|p| hidden.iter().all(|&(a, b)| p[a] == p[b])).collect();
    let size = |p: &Vec<usize>| p.iter().max().map_or(0, |m| m + 1);
    let best = admissible.iter().map(size).max()?;
    let winners: Vec<_> = admissible.iter().filter(|p| size(p) == best).collect();
    (winners.len() == 1).then(|| as_groups(winners[0]))
}

fn partition_maximality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    let mut largest = 0;
    for case in 0..100 {
        let (n, l, m) = (rng.gen_range(1..=3), rng.gen_range(0..=2), rng.gen_range(1..=2));
        let p = rng.gen_range(1..=(8 - n - l - m).clamp(1, 2));
        let g = random_realization(&mut rng, n, l, m, p);
        let c = comp_structure(&g).map_err(|e| format!("case {case}: {e}"))?;
        let hidden: Vec<(usize, usize)> =
            c.edges().iter().filter(|e| !c.is_manifest(e.var)).map(|e| (e.from, e.to)).collect();
        let got: BTreeSet<BTreeSet<usize>> =
            subsystem_structure(&c).components().iter().map(|k| k.vertices.iter().copied().collect()).collect();
        let want =
            brute_force_partition(c.vertex_count(), &hidden).ok_or(format!("case {case}: maximum not unique"))?;
        ensure!(got == want, "case {case}: union-find {got:?}, brute force {want:?}");
        largest = largest.max(c.vertex_count());
    }
    for case in 0..100 {
        let n = rng.gen_range(1..=8);
        let hidden: Vec<(usize, usize)> =
            (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| a != b && rng.gen_bool(0.12)).collect();
        let got: BTreeSet<BTreeSet<usize>> = finest_admissible_partition(n, hidden.iter().copied())
            .into_iter()
            .map(|b| b.into_iter().collect())
            .collect();
        let want = brute_force_partition(n, &hidden).ok_or(format!("graph {case}: maximum not unique"))?;
        ensure!(got == want, "graph {case}: union-find {got:?}, brute force {want:?}");
    }
    Ok(format!("100 structures from realizations (up to {largest} vertices) and 100 labeled graphs"))
}

fn gds_trajectory() -> Outcome {
    let g = Gds::ring(4).and_then(|g| g.with_output(4)).map_err(|e| e.to_string())?;
    let inputs: Vec<usize> = (0..28).map(|t| t % 4 + 1).collect();
    let tr = g.simulate(&[false; 4], &inputs, 28).map_err(|e| e.to_string())?;
    let checkpoints: [(usize, [u8; 4]); 10] = [
        (1, [1, 0, 0, 0]),
        (2, [1, 0, 0, 0]),
        (3, [1, 0, 1, 0]),
        (4, [1, 0, 1, 0]),
        (8, [0, 0, 0, 1]),
        (12, [0, 1, 0, 0]),
        (16, [0, 0, 1, 0]),
        (20, [1, 0, 0, 0]),
        (24, [0, 1, 0, 1]),
        (28, [0, 0, 0, 0]),
    ];
    for (t, want) in checkpoints {
        let got: Vec<u8> = tr.states[t].iter().map(|&b| u8::from(b)).collect();
        ensure!(got == want, "x[{t}] = {got:?}, expected {want:?}");
    }

    let deps = dependency_graph(&g);
    let mut want = BTreeSet::new();
    for i in 0..4 {
        want.insert((DepVertex::State(i), DepVertex::State(i)));
        want.insert((DepVertex::State(i), DepVertex::State((i + 1) % 4)));
        want.insert((DepVertex::State((i + 1) % 4), DepVertex::State(i)));
        want.insert((DepVertex::Input(0), DepVertex::State(i)));
    }
    want.insert((DepVertex::State(3), DepVertex::Output(0)));
    ensure!(deps.edges == want, "dependency edges {:?}", deps.edges);
    Ok("10 checkpoints match; dependency graph is ring, self-loops, input and output edges".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("ring DSF", ring_dsf),
        ("ring transfer function", ring_transfer),
        ("diagonal example", diagonal),
        ("two computational structures", two_structures),
        ("subsystem/signal relation", relation),
        ("route equivalence", route_equivalence),
        ("partition maximality", partition_maximality),
        ("GDS trajectory", gds_trajectory),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let ms = start.elapsed().as_secs_f64() * 1e3;
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name} ({ms:.0} ms): {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({ms:.0} ms): {why}", k + 1);
            }
        }
    }
    println!("acceptance: {}/8 passed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
