//! Acceptance gate. Runs every criterion at its exact tolerance, prints one
//! PASS/FAIL line per criterion and exits non-zero if any fails.
//!
//! Values are cross-checked against oracles written here from scratch: rank
//! over GF(p) by plain elimination, the trace as a sum of Frobenius
//! conjugates, and subspace counts by the q-Pascal recurrence.

use std::collections::HashSet;
use std::process::ExitCode;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rankweight::document::{Coefficient, TowerDoc};
use rankweight::linalg::{enumerate_subspaces, gaussian_binomial};
use rankweight::verify::{run_verify, CodeSource, Theorem, VerifyPlan};
use rankweight::weights::{hierarchy_values, maxwt};
use rankweight::witness::{self, check_witness, find_witness, Source, Strategy};
use rankweight::{
    support, ExtElem, ExtensionTower, Field, FiniteCode, FiniteTower, GaloisField, KSubspace,
    LinearCode, RationalCode, RationalTower, Rationals,
};

type Elem = ExtElem<u64>;

fn finite_tower(p: u64, modulus: &[u64]) -> Arc<FiniteTower> {
    let k = GaloisField::prime(p).unwrap();
    Arc::new(ExtensionTower::new(k, modulus.to_vec(), "w").unwrap())
}

fn cube_root_two() -> Arc<RationalTower> {
    let q = Rationals::new();
    let f = ["-2", "0", "0", "1"]
        .iter()
        .map(|s| q.parse_elem(s).unwrap())
        .collect();
    Arc::new(ExtensionTower::new(q, f, "t").unwrap())
}

struct Sweep {
    name: &'static str,
    tower: Arc<FiniteTower>,
    codes: Vec<FiniteCode>,
}

/// Every L-subspace of L^n for the acceptance towers and lengths.
fn sweep() -> Vec<Sweep> {
    let towers = [
        ("GF(4)/GF(2)", 2, vec![1, 1, 1], 2),
        ("GF(8)/GF(2)", 2, vec![1, 1, 0, 1], 3),
        ("GF(9)/GF(3)", 3, vec![1, 0, 1], 2),
    ];
    towers
        .into_iter()
        .map(|(name, p, f, max_n)| {
            let tower = finite_tower(p, &f);
            let mut codes = Vec::new();
            for n in 1..=max_n {
                for r in 0..=n {
                    for s in enumerate_subspaces(&*tower, n, r).unwrap() {
                        codes.push(LinearCode::from_subspace(tower.clone(), s));
                    }
                }
            }
            Sweep { name, tower, codes }
        })
        .collect()
}

fn random_code<F: Field>(
    tower: &Arc<ExtensionTower<F>>,
    rng: &mut ChaCha8Rng,
    n: usize,
    dim: usize,
) -> LinearCode<F> {
    let rows = (0..dim)
        .map(|_| (0..n).map(|_| tower.random(rng, 5)).collect())
        .collect();
    LinearCode::new(tower.clone(), n, rows).unwrap()
}

/// At least 200 codes over Q(t), t^3 = 2, with n <= 3 and dim <= 2.
fn rational_population() -> Vec<RationalCode> {
    let tower = cube_root_two();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    (0..200)
        .map(|_| {
            let n = rng.random_range(1..=3);
            let dim = rng.random_range(0..=n.min(2));
            random_code(&tower, &mut rng, n, dim)
        })
        .collect()
}

// ---- independent oracles over GF(p) ----

fn oracle_rank(p: u64, mut rows: Vec<Vec<u64>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let inv = |a: u64| (1..p).find(|b| a * b % p == 1).unwrap();
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&i| !rows[i][c].is_multiple_of(p)) else {
            continue;
        };
        rows.swap(rank, pivot);
        let s = inv(rows[rank][c]);
        for x in rows[rank].iter_mut() {
            *x = *x * s % p;
        }
        for i in 0..rows.len() {
            if i != rank && rows[i][c] != 0 {
                let f = rows[i][c];
                let pivot_row = rows[rank].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x = (*x + p * p - f * y % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rows of the coordinate expansion M(c).
fn expansion_rows(tower: &FiniteTower, c: &[Elem]) -> Vec<Vec<u64>> {
    (0..tower.degree())
        .map(|i| c.iter().map(|x| tower.coords(x)[i]).collect())
        .collect()
}

fn oracle_wt(tower: &FiniteTower, c: &[Elem]) -> usize {
    oracle_rank(tower.base().p(), expansion_rows(tower, c))
}

/// wt_R(C) as the rank of all expansion rows of a basis.
fn oracle_code_wt(code: &FiniteCode) -> usize {
    let tower = code.tower();
    let rows: Vec<Vec<u64>> = code
        .basis()
        .iter()
        .flat_map(|c| expansion_rows(tower, c))
        .collect();
    if rows.is_empty() {
        return 0;
    }
    oracle_rank(tower.base().p(), rows)
}

fn all_codewords(code: &FiniteCode) -> Vec<Vec<Elem>> {
    let tower = code.tower();
    let elems: Vec<Elem> = tower.elements().unwrap().collect();
    let mut words = vec![vec![tower.zero(); code.length()]];
    for b in code.basis() {
        let mut next = Vec::with_capacity(words.len() * elems.len());
        for w in &words {
            for a in &elems {
                next.push(
                    w.iter()
                        .zip(b)
                        .map(|(x, y)| tower.add(x, &tower.mul(a, y)))
                        .collect(),
                );
            }
        }
        words = next;
    }
    words
}

fn frobenius_trace(tower: &FiniteTower, x: &Elem) -> u64 {
    let p = tower.base().p();
    let mut acc = tower.zero();
    let mut conj = x.clone();
    for _ in 0..tower.degree() {
        acc = tower.add(&acc, &conj);
        let mut power = tower.one();
        for _ in 0..p {
            power = tower.mul(&power, &conj);
        }
        conj = power;
    }
    let coords = tower.coords(&acc);
    assert!(
        coords[1..].iter().all(|&c| c == 0),
        "trace lies in the base"
    );
    coords[0]
}

fn q_pascal(n: usize, r: usize, q: u128) -> u128 {
    if r == 0 || r == n {
        return 1;
    }
    if r > n {
        return 0;
    }
    q_pascal(n - 1, r - 1, q) + q.pow(r as u32) * q_pascal(n - 1, r, q)
}

// ---- gate ----

struct Gate {
    failed: usize,
}

impl Gate {
    fn report(&mut self, number: u32, name: &str, failures: &[String], checked: String) {
        if failures.is_empty() {
            println!("criterion {number} [{name}]: PASS ({checked})");
        } else {
            self.failed += 1;
            println!(
                "criterion {number} [{name}]: FAIL ({} failures; {checked})",
                failures.len()
            );
            for f in failures.iter().take(10) {
                println!("    {f}");
            }
        }
    }
}

fn fail(failures: &mut Vec<String>, ok: bool, what: impl FnOnce() -> String) {
    if !ok {
        failures.push(what());
    }
}

fn code_label(name: &str, code: &FiniteCode) -> String {
    let gens: Vec<Vec<String>> = code
        .basis()
        .iter()
        .map(|c| c.iter().map(|x| code.tower().format_elem(x)).collect())
        .collect();
    format!("{name} n={} gens={gens:?}", code.length())
}

fn criterion_1(gate: &mut Gate, sweeps: &[Sweep]) {
    let mut failures = Vec::new();
    let mut cells = 0;
    for s in sweeps {
        let m = s.tower.degree();
        for code in &s.codes {
            assert!(code.length() <= m);
            let rows = hierarchy_values(code).unwrap();
            for (i, &[a, b, c, d]) in rows.iter().enumerate() {
                cells += 1;
                fail(&mut failures, a == b && b == c && c == d, || {
                    format!(
                        "{} r={}: ({a},{b},{c},{d})",
                        code_label(s.name, code),
                        i + 1
                    )
                });
            }
            if rows.is_empty() {
                continue;
            }
            let words = all_codewords(code);
            let weights: Vec<usize> = words.iter().map(|w| oracle_wt(&s.tower, w)).collect();
            let d1 = weights.iter().copied().filter(|&w| w > 0).min().unwrap();
            let top = *weights.iter().max().unwrap();
            let k = rows.len();
            fail(&mut failures, rows[0][0] == d1, || {
                format!(
                    "{}: dR1 = {}, oracle {d1}",
                    code_label(s.name, code),
                    rows[0][0]
                )
            });
            fail(
                &mut failures,
                rows[k - 1][0] == oracle_code_wt(code),
                || format!("{}: dR{k} != wt_R", code_label(s.name, code)),
            );
            fail(&mut failures, rows[k - 1][2] == top, || {
                format!(
                    "{}: OS{k} = {}, oracle maxwt {top}",
                    code_label(s.name, code),
                    rows[k - 1][2]
                )
            });
        }
    }
    gate.report(
        1,
        "four-definition equivalence",
        &failures,
        format!("{cells} (C, r) cells"),
    );
}

fn criterion_2(gate: &mut Gate, sweeps: &[Sweep]) {
    let mut failures = Vec::new();
    let mut codes = 0;
    for s in sweeps {
        let q = s.tower.base().order() as u128;
        let big = s.tower.size().unwrap() as u128;
        fail(
            &mut failures,
            (q * q - 1) / (q - 1) < (big * big - 1) / (big - 1),
            || format!("{}: projective line count inequality", s.name),
        );
        for code in &s.codes {
            codes += 1;
            let outcome = find_witness(code, Strategy::Auto).unwrap();
            let Some(w) = outcome.witness else {
                failures.push(format!(
                    "{}: no witness ({:?})",
                    code_label(s.name, code),
                    outcome.source
                ));
                continue;
            };
            let check = check_witness(code, &w).unwrap();
            let target = oracle_code_wt(code);
            let mut stacked = expansion_rows(&s.tower, &w);
            for b in code.basis() {
                stacked.extend(expansion_rows(&s.tower, b));
            }
            let joint = oracle_rank(s.tower.base().p(), stacked);
            let ok = check.is_valid() && oracle_wt(&s.tower, &w) == target && joint == target;
            fail(&mut failures, ok, || {
                format!(
                    "{}: witness {w:?} fails ({check:?}, target {target})",
                    code_label(s.name, code)
                )
            });
        }
    }
    gate.report(2, "witness existence", &failures, format!("{codes} codes"));
}

fn criterion_3(gate: &mut Gate) {
    let mut failures = Vec::new();
    let tower = finite_tower(2, &[1, 1, 1]);
    let l3 = LinearCode::full(tower.clone(), 3);
    let elems: Vec<Elem> = tower.elements().unwrap().collect();
    let mut scanned = 0;
    let mut best = 0;
    for a in &elems {
        for b in &elems {
            for c in &elems {
                let v = vec![a.clone(), b.clone(), c.clone()];
                if v.iter().all(|x| tower.is_zero(x)) {
                    continue;
                }
                scanned += 1;
                let w = oracle_wt(&tower, &v);
                best = best.max(w);
                fail(&mut failures, w < 3, || {
                    format!("{v:?} has rank weight {w}")
                });
            }
        }
    }
    fail(&mut failures, scanned == 63, || {
        format!("scanned {scanned} vectors")
    });
    fail(&mut failures, best == 2, || format!("oracle maxwt {best}"));
    fail(&mut failures, maxwt(&l3).unwrap() == 2, || {
        "maxwt(L^3) != 2".into()
    });
    fail(&mut failures, support::rank_weight_code(&l3) == 3, || {
        "wt_R(L^3) != 3".into()
    });
    let ex = find_witness(&l3, Strategy::Exhaustive).unwrap();
    fail(&mut failures, ex.witness.is_none(), || {
        "exhaustive search found a witness".into()
    });
    let auto = find_witness(&l3, Strategy::Auto).unwrap();
    fail(
        &mut failures,
        auto.witness.is_none() && auto.source == Source::DimensionBound,
        || format!("auto search returned {:?}", auto.source),
    );
    gate.report(
        3,
        "witness necessity",
        &failures,
        format!("{scanned} nonzero vectors, maxwt {best} < 3"),
    );
}

fn delsarte<F: Field>(code: &LinearCode<F>) -> bool {
    support::restriction(code).orthogonal_complement()
        == support::rank_support_code(&support::dual(code))
}

fn criterion_4(gate: &mut Gate, sweeps: &[Sweep], rationals: &[RationalCode]) {
    let mut failures = Vec::new();
    let mut checked = 0;
    for s in sweeps {
        for code in &s.codes {
            checked += 1;
            fail(&mut failures, delsarte(code), || code_label(s.name, code));
            fail(
                &mut failures,
                support::restriction(code) == support::restriction_direct(code),
                || format!("{}: restriction paths differ", code_label(s.name, code)),
            );
        }
    }
    for (i, code) in rationals.iter().enumerate() {
        checked += 1;
        fail(&mut failures, delsarte(code), || format!("Q(t) code #{i}"));
        fail(
            &mut failures,
            support::restriction(code) == support::restriction_direct(code),
            || format!("Q(t) code #{i}: restriction paths differ"),
        );
    }
    gate.report(
        4,
        "Res(C)^perp = Rsupp(C^perp)",
        &failures,
        format!("{checked} codes incl. {} over Q(t)", rationals.len()),
    );
}

fn criterion_5(gate: &mut Gate, sweeps: &[Sweep], rationals: &[RationalCode]) {
    let mut failures = Vec::new();
    let mut oracle_checks = 0;
    for s in sweeps {
        for code in &s.codes {
            oracle_checks += 1;
            let star = support::closure(code);
            fail(
                &mut failures,
                support::closure_oracle(code).unwrap() == star,
                || format!("{}: closure != oracle", code_label(s.name, code)),
            );
            fail(&mut failures, star.dim() == oracle_code_wt(code), || {
                format!("{}: dim C* != wt_R", code_label(s.name, code))
            });
        }
    }
    let sum_rule = |c: &FiniteCode, d: &FiniteCode| {
        support::closure(&c.sum(d).unwrap())
            == support::closure(c).sum(&support::closure(d)).unwrap()
    };
    let gf4 = &sweeps[0];
    let n2: Vec<&FiniteCode> = gf4.codes.iter().filter(|c| c.length() == 2).collect();
    let mut pairs = 0;
    for c in &n2 {
        for d in &n2 {
            pairs += 1;
            fail(&mut failures, sum_rule(c, d), || {
                format!("GF(4) pair {c:?} {d:?}")
            });
        }
    }
    let gf8 = &sweeps[1].tower;
    let mut rng = ChaCha8Rng::seed_from_u64(500);
    for i in 0..500 {
        let (a, b) = (rng.random_range(0..=3), rng.random_range(0..=3));
        let c = random_code(gf8, &mut rng, 3, a);
        let d = random_code(gf8, &mut rng, 3, b);
        pairs += 1;
        fail(&mut failures, sum_rule(&c, &d), || {
            format!("GF(8) random pair #{i}")
        });
    }
    for (i, code) in rationals.iter().enumerate() {
        let star = support::closure(code);
        fail(
            &mut failures,
            star.dim() == support::rank_weight_code(code),
            || format!("Q(t) code #{i}: dim C* != wt_R"),
        );
        fail(
            &mut failures,
            code.is_subcode_of(&star).unwrap() && support::is_extended(&star),
            || format!("Q(t) code #{i}: C* is not an extended superset"),
        );
    }
    gate.report(
        5,
        "closure laws",
        &failures,
        format!(
            "{oracle_checks} oracle closures, {pairs} sum-rule pairs, {} Q(t) codes",
            rationals.len()
        ),
    );
}

fn criterion_6(gate: &mut Gate, sweeps: &[Sweep], rationals: &[RationalCode]) {
    let mut failures = Vec::new();
    let mut checked = 0;
    for s in sweeps {
        let t = &s.tower;
        let l_basis = t.basis();
        for code in &s.codes {
            checked += 1;
            let image = support::trace_image(code).unwrap();
            let rsupp = support::rank_support_code(code);
            let rows: Vec<Vec<u64>> = code
                .basis()
                .iter()
                .flat_map(|c| {
                    l_basis
                        .iter()
                        .map(|lambda| {
                            c.iter()
                                .map(|x| frobenius_trace(t, &t.mul(lambda, x)))
                                .collect::<Vec<u64>>()
                        })
                        .collect::<Vec<_>>()
                })
                .collect();
            let oracle = KSubspace::span(t.clone(), code.length(), rows).unwrap();
            fail(&mut failures, image == rsupp && oracle == rsupp, || {
                format!("{}: trace image differs", code_label(s.name, code))
            });
        }
    }
    for (i, code) in rationals.iter().enumerate() {
        checked += 1;
        let ok = support::trace_image(code).unwrap() == support::rank_support_code(code);
        fail(&mut failures, ok, || format!("Q(t) code #{i}"));
    }
    gate.report(6, "Tr(C) = Rsupp(C)", &failures, format!("{checked} codes"));
}

/// `(C, C1, c1, c2)` with `C = C1 + L c2`.
type SplitCase<F> = (
    LinearCode<F>,
    LinearCode<F>,
    Vec<ExtElem<<F as Field>::Elem>>,
    Vec<<F as Field>::Elem>,
);

fn split_case<F: Field>(
    tower: &Arc<ExtensionTower<F>>,
    rng: &mut ChaCha8Rng,
    n: usize,
) -> Option<SplitCase<F>> {
    let c1: Vec<_> = (0..n).map(|_| tower.random(rng, 5)).collect();
    let c2: Vec<F::Elem> = (0..n).map(|_| tower.base().random(rng, 5)).collect();
    let c1_code = LinearCode::new(tower.clone(), n, vec![c1.clone()]).ok()?;
    let c2_l: Vec<_> = c2.iter().map(|x| tower.embed(x)).collect();
    let code = c1_code
        .sum(&LinearCode::new(tower.clone(), n, vec![c2_l]).ok()?)
        .ok()?;
    let hypotheses =
        c1_code.dim() == 1 && code.dim() == 2 && support::rank_weight_code(&code) <= tower.degree();
    hypotheses.then_some((code, c1_code, c1, c2))
}

fn criterion_7(gate: &mut Gate, sweeps: &[Sweep]) {
    let mut failures = Vec::new();
    let mut extended = 0;
    for s in sweeps {
        for code in &s.codes {
            if !support::is_extended(code) || code.dim() > s.tower.degree() || code.is_zero() {
                continue;
            }
            extended += 1;
            let ok = match witness::constructive_extended(code) {
                Some(c) => check_witness(code, &c).unwrap().is_valid(),
                None => false,
            };
            fail(&mut failures, ok, || {
                format!("{}: strategy (a)", code_label(s.name, code))
            });
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let gf8 = &sweeps[1].tower;
    let q = cube_root_two();
    let mut splits = 0;
    let mut attempts = 0;
    while splits < 100 {
        attempts += 1;
        assert!(attempts < 10_000, "could not construct splittings");
        let ok = if splits % 2 == 0 {
            let Some((code, c1_code, c1, c2)) = split_case(gf8, &mut rng, 3) else {
                continue;
            };
            split_ok(&code, &c1_code, &c1, &c2)
        } else {
            let Some((code, c1_code, c1, c2)) = split_case(&q, &mut rng, 3) else {
                continue;
            };
            split_ok(&code, &c1_code, &c1, &c2)
        };
        splits += 1;
        fail(&mut failures, ok, || format!("splitting #{splits}"));
    }
    gate.report(
        7,
        "constructive witnesses",
        &failures,
        format!("{extended} extended codes via (a), {splits} splittings via (b)"),
    );
}

fn split_ok<F: Field>(
    code: &LinearCode<F>,
    c1_code: &LinearCode<F>,
    c1: &[ExtElem<F::Elem>],
    c2: &[F::Elem],
) -> bool {
    let step = witness::extend_witness(code.tower(), c1, c2).unwrap();
    let via_split = witness::constructive_split(code, c1_code, c1).unwrap();
    check_witness(code, &step).unwrap().is_valid()
        && check_witness(code, &via_split).unwrap().is_valid()
}

fn tower_doc(p: u64, f: &[i64]) -> TowerDoc {
    TowerDoc {
        characteristic: p,
        base_degree: 1,
        base_modulus: None,
        extension_modulus: f.iter().map(|&c| Coefficient::Int(c)).collect(),
        generator_name: "w".into(),
    }
}

fn criterion_8(gate: &mut Gate) {
    let mut failures = Vec::new();
    let fields = [
        GaloisField::prime(2).unwrap(),
        GaloisField::prime(3).unwrap(),
        GaloisField::new(2, &[1, 1, 1]).unwrap(),
        GaloisField::new(2, &[1, 1, 0, 1]).unwrap(),
        GaloisField::new(3, &[1, 0, 1]).unwrap(),
    ];
    let mut counted = 0;
    for k in &fields {
        let q = k.order();
        for n in 1..=4 {
            for r in 0..=n {
                let expected = gaussian_binomial(n, r, q);
                let oracle = q_pascal(n, r, q as u128);
                let mut seen = HashSet::new();
                let mut all_dim_r = true;
                for s in enumerate_subspaces(k, n, r).unwrap() {
                    all_dim_r &= s.dim() == r;
                    seen.insert(s);
                }
                counted += seen.len();
                fail(
                    &mut failures,
                    expected == oracle && seen.len() as u128 == expected && all_dim_r,
                    || {
                        format!("q={q} n={n} r={r}: formula {expected}, recurrence {oracle}, enumerated {}", seen.len())
                    },
                );
            }
        }
    }

    let plans = [
        (
            vec![tower_doc(2, &[1, 1, 1]), tower_doc(3, &[1, 0, 1])],
            2,
            CodeSource::Exhaustive,
        ),
        (
            vec![tower_doc(2, &[1, 1, 0, 1])],
            3,
            CodeSource::Random { count: 60, seed: 7 },
        ),
        (
            vec![tower_doc(0, &[-2, 0, 0, 1])],
            3,
            CodeSource::Random {
                count: 30,
                seed: 42,
            },
        ),
    ];
    let mut runs = 0;
    for (towers, max_n, source) in plans {
        let results: Vec<_> = [1, 2, 8]
            .into_iter()
            .map(|w| {
                run_verify(&VerifyPlan {
                    towers: towers.clone(),
                    max_n,
                    theorems: vec![Theorem::All],
                    source,
                    force: false,
                    workers: Some(w),
                })
                .unwrap()
            })
            .collect();
        runs += 3;
        let json: Vec<String> = results
            .iter()
            .map(|s| serde_json::to_string(s).unwrap())
            .collect();
        fail(&mut failures, results.iter().all(|s| s.passed), || {
            format!("{source:?}: verify failed")
        });
        fail(&mut failures, json.windows(2).all(|w| w[0] == w[1]), || {
            format!("{source:?}: output differs across worker counts")
        });
    }
    gate.report(
        8,
        "infrastructure",
        &failures,
        format!("{counted} subspaces enumerated, {runs} verify runs across 1/2/8 workers"),
    );
}

fn main() -> ExitCode {
    let sweeps = sweep();
    let rationals = rational_population();
    let mut gate = Gate { failed: 0 };
    criterion_1(&mut gate, &sweeps);
    criterion_2(&mut gate, &sweeps);
    criterion_3(&mut gate);
    criterion_4(&mut gate, &sweeps, &rationals);
    criterion_5(&mut gate, &sweeps, &rationals);
    criterion_6(&mut gate, &sweeps, &rationals);
    criterion_7(&mut gate, &sweeps);
    criterion_8(&mut gate);
    if gate.failed == 0 {
        println!("acceptance: all 8 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {} of 8 criteria FAIL", gate.failed);
        ExitCode::FAILURE
    }
}
