//! One test per acceptance criterion. Each prints a single PASS/FAIL line;
//! run with `--nocapture` to see them.

use std::time::Instant;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use veronese_betti::bounds::{compute_a, compute_a_closed_form_m2, Bounds};
use veronese_betti::cli::{cmd_bounds, TableFormat};
use veronese_betti::complex::{EnumerationCap, Face, FaceSet, HochsterComplex};
use veronese_betti::homology::modp::random_prime;
use veronese_betti::homology::{betti_hochster_all, ChainComplexData};
use veronese_betti::lattice::{binomial, MultiDegree, Veronese};
use veronese_betti::morse::{check_acyclic, morse_bounds, morse_report, vertex_matching, DiscreteVectorField};
use veronese_betti::theorems::{
    compute_d, extremal_case_m2, positive_block_end, sharpness_p_max, sharpness_witness, Regime,
};

type Outcome = Result<String, Vec<String>>;

fn report(id: u32, title: &str, outcome: Outcome) {
    match outcome {
        Ok(detail) => println!("PASS criterion {id}: {title} ({detail})"),
        Err(failures) => {
            println!("FAIL criterion {id}: {title} ({} failures)", failures.len());
            for f in failures.iter().take(20) {
                println!("    {f}");
            }
            panic!("criterion {id} failed");
        }
    }
}

fn finish(failures: Vec<String>, detail: String) -> Outcome {
    if failures.is_empty() {
        Ok(detail)
    } else {
        Err(failures)
    }
}

fn oracle(v: &Veronese, b: &MultiDegree) -> Vec<u64> {
    betti_hochster_all(v, b, &EnumerationCap::default()).expect("desk-scale oracle")
}

fn beta(betti: &[u64], p: usize) -> u64 {
    betti.get(p).copied().unwrap_or(0)
}

fn slice(v: &Veronese, j: usize) -> Vec<MultiDegree> {
    MultiDegree::all_with_total(v.m() + 1, v.d() * j as u64)
}

fn complex(v: &Veronese, b: &MultiDegree) -> FaceSet {
    HochsterComplex::new(v, b.clone())
        .unwrap()
        .enumerate(&EnumerationCap::default())
        .unwrap()
}

/// Every degree of every level used by the property criteria.
fn instance_pool() -> Vec<(Veronese, MultiDegree)> {
    let mut pool = Vec::new();
    for (m, d, j_max) in [(2, 2, 7), (2, 3, 5), (3, 2, 4)] {
        let v = Veronese::with(m, d).unwrap();
        for j in 1..=j_max {
            for b in slice(&v, j) {
                pool.push((v.clone(), b));
            }
        }
    }
    pool
}

fn parse_bounds_csv(text: &str) -> Vec<(usize, u64, Option<i64>)> {
    text.lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0].parse().unwrap(), f[1].parse().unwrap(), f[2].parse().ok())
        })
        .collect()
}

#[test]
fn criterion_1_table_reproduction() {
    // (d, first j of the printed table, l̃ row, A row); the last column
    // stands for "j ≥ ..." and is checked for two more rows
    let tables: [(u64, usize, &[i64], &[u64]); 3] = [
        (2, 3, &[0, 1, 3, 3], &[4, 4, 4, 4]),
        (3, 4, &[0, 0, 1, 3, 5, 8, 9], &[8, 9, 10, 10, 10, 10, 10]),
        (
            4,
            5,
            &[0, 0, 1, 2, 3, 5, 7, 9, 13, 17, 19],
            &[14, 16, 17, 18, 19, 20, 20, 20, 20, 20, 20],
        ),
    ];
    let mut failures = Vec::new();
    let mut cells = 0;
    for (d, j0, lt, a) in tables {
        let j_last = j0 + lt.len() - 1;
        let text = cmd_bounds(d, 2, j_last + 2, TableFormat::Csv).unwrap();
        let rows = parse_bounds_csv(&text);
        for (j, a_j, l_j) in rows.into_iter().filter(|r| r.0 >= j0) {
            let k = (j - j0).min(lt.len() - 1);
            cells += 2;
            if a_j != a[k] || l_j != Some(lt[k]) {
                failures.push(format!("d = {d}, j = {j}: got A = {a_j}, l = {l_j:?}; want {}, {}", a[k], lt[k]));
            }
        }
    }
    report(1, "bounds tables for d = 2, 3, 4", finish(failures, format!("{cells} entries exact")));
}

#[test]
fn criterion_2_closed_form() {
    let mut failures = Vec::new();
    let mut checked = 0;
    for d in 2..=10u64 {
        let v = Veronese::with(2, d).unwrap();
        for j in 1..=v.n() + 5 {
            checked += 1;
            let direct = compute_a(&v, j);
            let closed = compute_a_closed_form_m2(d, j as u64).unwrap();
            if direct != closed {
                failures.push(format!("d = {d}, j = {j}: {direct} vs {closed}"));
            }
        }
    }
    report(2, "A_j closed form, d = 2..10", finish(failures, format!("{checked} values equal")));
}

#[test]
fn criterion_3_figure_slice() {
    let start = Instant::now();
    let v = Veronese::with(2, 3).unwrap();
    let bounds = Bounds::new(&v).unwrap();
    let (j, p) = (5, 4);
    let mut failures = Vec::new();
    if bounds.a(j) != 9 {
        failures.push(format!("A_5 = {}", bounds.a(j)));
    }
    if bounds.l_tilde(j).unwrap() != 0 {
        failures.push(format!("l_5 = {}", bounds.l_tilde(j).unwrap()));
    }
    let degrees = slice(&v, j);
    if degrees.len() != 136 {
        failures.push(format!("{} degrees on the slice", degrees.len()));
    }
    let values: Vec<(MultiDegree, Vec<u64>)> =
        degrees.into_par_iter().map(|b| (b.clone(), oracle(&v, &b))).collect();
    for (b, betti) in &values {
        let outside = b.coords().iter().any(|&c| c >= 9 || c == 0);
        if outside && betti.iter().any(|&x| x != 0) {
            failures.push(format!("{b}: outside the bounds but betti = {betti:?}"));
        }
    }
    let line: Vec<u64> = (0..=7u64)
        .map(|b1| {
            let b = MultiDegree::new(vec![8, b1, 7 - b1]);
            let betti = &values.iter().find(|(c, _)| *c == b).unwrap().1;
            let d = compute_d(&v, p, &b).unwrap().cardinality() as u64;
            if d != beta(betti, p) {
                failures.push(format!("{b}: #D = {d}, oracle = {}", beta(betti, p)));
            }
            beta(betti, p)
        })
        .collect();
    if line != [0, 0, 1, 2, 2, 1, 0, 0] {
        failures.push(format!("b0 = 8 line is {line:?}"));
    }
    let elapsed = start.elapsed().as_secs_f64();
    if elapsed >= 60.0 {
        failures.push(format!("took {elapsed:.1} s"));
    }
    report(
        3,
        "m = 2, d = 3, j = 5 slice",
        finish(failures, format!("136 degrees, b0 = 8 line {line:?}, {elapsed:.2} s")),
    );
}

#[test]
fn criterion_4_vanishing_soundness() {
    let mut failures = Vec::new();
    let mut decided = 0;
    let mut total = 0;
    for d in [2u64, 3] {
        let v = Veronese::with(2, d).unwrap();
        let bounds = Bounds::new(&v).unwrap();
        for j in (1..).take_while(|&j| d * j as u64 <= 15) {
            for b in slice(&v, j) {
                total += 1;
                if !bounds.vanishing_status(&b).unwrap().vanishes() {
                    continue;
                }
                decided += 1;
                let betti = oracle(&v, &b);
                if betti.iter().any(|&x| x != 0) {
                    failures.push(format!("d = {d}, {b}: betti = {betti:?}"));
                }
            }
        }
    }
    report(
        4,
        "vanishing soundness, m = 2, dj <= 15",
        finish(failures, format!("{decided} of {total} degrees decided, no counterexample")),
    );
}

#[test]
fn criterion_5_wedge_theorem() {
    let mut failures = Vec::new();
    let mut checked = 0;
    for d in [2u64, 3] {
        let v = Veronese::with(2, d).unwrap();
        let hi = binomial(d + 1, 2).unwrap() as usize - 1;
        for p in 2..=hi {
            let b0 = compute_a(&v, p + 1) - 1;
            let rest = d * (p as u64 + 1) - b0;
            for b1 in 0..=rest {
                let b = MultiDegree::new(vec![b0, b1, rest - b1]);
                let betti = oracle(&v, &b);
                let want = compute_d(&v, p, &b).unwrap().cardinality() as u64;
                checked += 1;
                if beta(&betti, p) != want {
                    failures.push(format!("d = {d}, p = {p}, {b}: oracle {}, #D {want}", beta(&betti, p)));
                }
                if let Some(q) = (1..betti.len()).find(|&q| q != p && betti[q] != 0) {
                    failures.push(format!("d = {d}, p = {p}, {b}: beta_{q} = {}", betti[q]));
                }
            }
        }
    }
    report(5, "beta = #D on the sharp lines, m = 2", finish(failures, format!("{checked} degrees")));
}

#[test]
fn criterion_6_extremal_case() {
    let v = Veronese::with(2, 2).unwrap();
    let p = 3;
    let mut failures = Vec::new();
    let mut line = Vec::new();
    for b1 in 0..=5u64 {
        let b = MultiDegree::new(vec![3, b1, 5 - b1]);
        let got = beta(&oracle(&v, &b), p);
        let want = u64::from((2..=3).contains(&b1));
        let theorem = extremal_case_m2(&v, &b).unwrap().value;
        if got != want || theorem != want {
            failures.push(format!("{b}: oracle {got}, theorem {theorem}, want {want}"));
        }
        line.push(got);
    }
    report(6, "extremal case, d = 2, p = 3", finish(failures, format!("b0 = 3 line {line:?}")));
}

#[test]
fn criterion_7_sharpness() {
    let mut failures = Vec::new();
    let mut summary = Vec::new();
    for (m, d, p_hi) in [(2, 2, None), (2, 3, None), (3, 2, Some(6))] {
        let v = Veronese::with(m, d).unwrap();
        // the construction is only defined up to sharpness_p_max
        let p_max = p_hi.map_or(sharpness_p_max(&v), |h: usize| h.min(sharpness_p_max(&v)));
        if m == 2 && p_max != binomial(d + 1, 2).unwrap() as usize {
            failures.push(format!("m = 2, d = {d}: p_max = {p_max}"));
        }
        let mut values = Vec::new();
        for p in 1..=p_max {
            let w = sharpness_witness(&v, p).unwrap();
            let got = beta(&oracle(&v, &w.b), p);
            let regime_ok = match w.regime {
                Regime::Low => w.predicted_betti == p as u64,
                Regime::High => w.predicted_betti == 1,
                Regime::Middle => (m..positive_block_end(&v)).contains(&p),
            };
            if got != w.predicted_betti || !regime_ok {
                failures.push(format!(
                    "m = {m}, d = {d}, p = {p}, {}: oracle {got}, predicted {} ({:?})",
                    w.b, w.predicted_betti, w.regime
                ));
            }
            values.push(got);
        }
        summary.push(format!("m={m},d={d}: {values:?}"));
    }
    report(7, "sharpness witnesses", finish(failures, summary.join("; ")));
}

#[test]
fn criterion_8_morse_suite() {
    let pool = instance_pool();
    let failures: Vec<String> = pool
        .par_iter()
        .flat_map_iter(|(v, b)| {
            let mut out = Vec::new();
            let faces = complex(v, b);
            let vertices = faces.vertices();
            if vertices.is_empty() {
                return out;
            }
            let reduced = ChainComplexData::build(&faces).unwrap().reduced_betti_numbers();
            // reduced[q + 1] = dim H̃_q = β_{q+1}
            for &x in &vertices {
                let field = vertex_matching(&faces, x).unwrap();
                let r = morse_report(&field, &faces).unwrap();
                if !r.acyclic {
                    out.push(format!("{b}: matching over {x} is cyclic"));
                }
                for q in 0..reduced.len().saturating_sub(1) {
                    if r.count(q) < reduced[q + 1] as usize {
                        out.push(format!("{b}, v = {x}: m_{q} = {} < {}", r.count(q), reduced[q + 1]));
                    }
                }
            }
            for nb in morse_bounds(&faces).unwrap() {
                if (nb.value as u64) < beta(&reduced, nb.q + 1) {
                    out.push(format!("{b}: N_{} = {} < beta_{}", nb.q, nb.value, nb.q + 1));
                }
            }
            out
        })
        .collect();
    let mut failures = failures;

    let face = |ix: &[usize]| Face::new(ix.iter().copied()).unwrap();
    let triangle = FaceSet::from_faces(
        [&[][..], &[1], &[2], &[3], &[1, 2], &[2, 3], &[1, 3]].iter().map(|f| face(f)),
    )
    .unwrap();
    let cyclic = DiscreteVectorField::new([
        (face(&[1]), face(&[1, 2])),
        (face(&[2]), face(&[2, 3])),
        (face(&[3]), face(&[1, 3])),
    ])
    .unwrap();
    if check_acyclic(&cyclic, &triangle).unwrap() {
        failures.push("hollow-triangle cycle accepted".into());
    }
    report(
        8,
        "Morse matchings and inequalities",
        finish(failures, format!("{} complexes, cyclic field rejected", pool.len())),
    );
}

fn random_degree(rng: &mut ChaCha8Rng, parts: usize, total: u64) -> MultiDegree {
    let mut cuts: Vec<u64> = (0..parts - 1).map(|_| rng.gen_range(0..=total)).collect();
    cuts.sort_unstable();
    let coords = std::iter::once(0)
        .chain(cuts.iter().copied())
        .chain(std::iter::once(total))
        .tuple_windows()
        .map(|(a, b)| b - a)
        .collect();
    MultiDegree::new(coords)
}

#[test]
fn criterion_9_homology_self_checks() {
    let mut failures = Vec::new();
    let pool = instance_pool();
    for (v, b) in &pool {
        let cc = ChainComplexData::build(&complex(v, b)).unwrap();
        if !cc.boundary_squares_to_zero() {
            failures.push(format!("{b}: boundary squared is nonzero"));
        }
        if !cc.euler_characteristic_consistent(&cc.reduced_betti_numbers()) {
            failures.push(format!("{b}: Euler characteristic mismatch"));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let shapes = [(2, 2, 8), (2, 3, 6), (2, 4, 5), (3, 2, 5), (3, 3, 3)];
    for _ in 0..100 {
        let (m, d, j_max) = shapes[rng.gen_range(0..shapes.len())];
        let v = Veronese::with(m, d).unwrap();
        let j = rng.gen_range(2..=j_max);
        let b = random_degree(&mut rng, m + 1, d * j as u64);
        let prime = random_prime(&mut rng);
        let cc = ChainComplexData::build(&complex(&v, &b)).unwrap();
        if let Err(e) = cc.cross_check_mod_p(prime) {
            failures.push(format!("m = {m}, d = {d}, {b}: {e}"));
        }
    }
    report(
        9,
        "boundary, Euler and mod-p rank checks",
        finish(failures, format!("{} complexes, 100 random mod-p instances", pool.len())),
    );
}
