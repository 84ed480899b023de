//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero if any fail.

use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fuscat_core::diagram::{enumerate_basis, DEFAULT_GUARD_POINTS as G};
use fuscat_core::fuss_catalan::{
    all_middle_patterns, bijectivity_check, branching_check, hecke_check, hom_module_match,
    partition_identity_check,
};
use fuscat_core::laurent::{is_generic, Genericity, ParamSpec};
use fuscat_core::polygon::{
    enumerate_triangulations, fan_triangulation, flips, is_valid_shortcut, length, polygon_dim, shortcut,
};
use fuscat_core::{
    boundary_word, dim_formula, AlgebraElement, FreeProductRing, LabeledPolygon, LaurentPoly, Letter, Polygon,
    Var, Word,
};

type Check = fn() -> Result<String, String>;

const TIME_LIMIT: Duration = Duration::from_secs(60);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn catalan(n: usize) -> u128 {
    (0..n as u128).fold(1, |c, i| c * 2 * (2 * i + 1) / (i + 2))
}

fn dimension_formula() -> Result<String, String> {
    let start = Instant::now();
    let catalan_list = [1u128, 1, 2, 5, 14, 42, 132, 429, 1430, 4862];
    let m2_list = [1u128, 1, 2, 3, 7, 12, 30, 55];
    let mut checked = 0;
    for (m, range, listed) in [
        (1, 0..=10, &catalan_list[..]),
        (2, 1..=8, &m2_list[..]),
        (3, 1..=6, &[][..]),
    ] {
        for n in range {
            let count = enumerate_basis(m, n, G).map_err(|e| e.to_string())?.len() as u128;
            let formula = dim_formula(m, n);
            ensure(count == formula, || format!("m={m} n={n}: enumerated {count}, formula {formula}"))?;
            if m == 1 {
                ensure(count == catalan(n), || format!("m=1 n={n}: {count} is not Catalan({n})"))?;
                if let Some(&l) = listed.get(n) {
                    ensure(count == l, || format!("m=1 n={n}: {count} != listed {l}"))?;
                }
            } else if let Some(&l) = listed.get(n - 1) {
                ensure(count == l, || format!("m={m} n={n}: {count} != listed {l}"))?;
            }
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < TIME_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!("{checked} (m,n) pairs in {:.2}s", elapsed.as_secs_f64()))
}

fn bijectivity() -> Result<String, String> {
    for m in 1..=2 {
        for n in 0..=8 {
            let r = bijectivity_check(m, n, G).map_err(|e| e.to_string())?;
            ensure(r.holds, || format!("{r:?}"))?;
        }
    }
    Ok("m ≤ 2, n ≤ 8".into())
}

fn module_match() -> Result<String, String> {
    let mut nonzero = 0;
    for m in 1..=2 {
        for n in 0..=6 {
            for sigma in all_middle_patterns(m, n) {
                let r = hom_module_match(&sigma, m, n, G).map_err(|e| e.to_string())?;
                ensure(r.holds, || format!("m={m} n={n}: {r:?}"))?;
                if r.module_dim > 0 {
                    nonzero += 1;
                }
            }
        }
    }
    Ok(format!("{nonzero} non-zero modules, m ≤ 2, n ≤ 6"))
}

fn branching() -> Result<String, String> {
    let mut checked = 0;
    for m in 1..=2 {
        for n in 0..=6 {
            let y = boundary_word(m, n + 1).colors()[n].index;
            for sigma in all_middle_patterns(m, n) {
                for k in 1..=(n + 1 - sigma.len()) {
                    let r = branching_check(&sigma, y, k, m, n, G).map_err(|e| e.to_string())?;
                    ensure(r.holds, || format!("m={m}: {r:?}"))?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} sequences, m ≤ 2, n ≤ 6"))
}

fn partition_identity() -> Result<String, String> {
    for (m, n) in [(1, 1), (1, 2), (1, 3), (1, 4), (2, 1), (2, 2)] {
        let r = partition_identity_check(m, n, G).map_err(|e| e.to_string())?;
        ensure(r.holds, || format!("m={m} n={n}: {} != {}", r.lhs, r.rhs))?;
    }
    Ok("(1,1..4), (2,1..2) exact".into())
}

fn hecke() -> Result<String, String> {
    let mut count = 0;
    for n in [3, 4] {
        let r = hecke_check(n, G).map_err(|e| e.to_string())?;
        if let Some(bad) = r.checks.iter().find(|c| !c.holds) {
            return Err(format!("A_{n}: {} fails", bad.name));
        }
        count += r.checks.len();
    }
    Ok(format!("{count} identities in A_3, A_4"))
}

fn semisimplicity() -> Result<String, String> {
    let angle = |p, q| ParamSpec::rational_angle(p, q).unwrap();
    let numeric = |v: f64| ParamSpec::numeric(v, 1e-9).unwrap();
    for (q, witness) in [(3, 2), (4, 3), (5, 4)] {
        let exact = is_generic(&angle(1, q), 64).unwrap();
        let approx = is_generic(&numeric(angle(1, q).value()), 64).unwrap();
        let want = Genericity::NonGeneric { witness };
        ensure(exact == want, || format!("2cos(π/{q}) exact: {exact:?}"))?;
        ensure(approx == want, || format!("2cos(π/{q}) numeric: {approx:?}"))?;
    }
    for a in [2.0, 3.0] {
        let g = is_generic(&numeric(a), 64).unwrap();
        ensure(matches!(g, Genericity::Generic { .. }), || format!("a={a}: {g:?}"))?;
    }
    let g = is_generic(&angle(0, 1), 64).unwrap();
    ensure(g == Genericity::Generic { horizon: None }, || format!("angle 0: {g:?}"))?;
    let mut compared = 0;
    for q in 1..=12 {
        for p in 0..=2 * q {
            let exact_spec = angle(p, q);
            let exact = is_generic(&exact_spec, 64).unwrap();
            let approx = is_generic(&numeric(exact_spec.value()), 64).unwrap();
            let agree = match (&exact, &approx) {
                (Genericity::Generic { .. }, Genericity::Generic { .. }) => true,
                (a, b) => a == b,
            };
            ensure(agree, || format!("{p}/{q}: exact {exact:?}, numeric {approx:?}"))?;
            compared += 1;
        }
    }
    Ok(format!("{compared} angles agree at tolerance 1e-9, horizon 64"))
}

fn random_word(rng: &mut ChaCha8Rng, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    let mut factor = rng.gen_range(0..2);
    let mut letters = Vec::new();
    for _ in 0..len {
        letters.push(Letter::new(factor, fuscat_core::Label(rng.gen_range(1..=2))));
        factor = 1 - factor;
    }
    Word::new(letters).unwrap()
}

fn coherence() -> Result<String, String> {
    let start = Instant::now();
    let fp = FreeProductRing::su2_power(2);
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_917);
    let mut nonzero = 0;
    for trial in 0..200 {
        let n_edges = rng.gen_range(3..=7);
        let edges: Vec<Word> = (0..n_edges - 1).map(|_| random_word(&mut rng, 2)).collect();
        let oracle_sum = fp.decompose_tensor_words(&edges);
        let support: Vec<&Word> = oracle_sum.support().collect();
        let bottom = if rng.gen_bool(0.8) && !support.is_empty() {
            support[rng.gen_range(0..support.len())].clone()
        } else {
            random_word(&mut rng, 3)
        };
        let oracle = oracle_sum.coefficient(&bottom);
        let labeled = LabeledPolygon::new(bottom.clone(), edges.clone()).unwrap();
        for t in enumerate_triangulations(n_edges).unwrap() {
            let d = polygon_dim(&fp, &labeled, &t).unwrap();
            ensure(d == oracle, || {
                let names: Vec<String> = edges.iter().map(|e| fp.format_word(e)).collect();
                format!(
                    "trial {trial}: T={t} gives {d}, oracle {oracle} for [{}] → {}",
                    names.join(", "),
                    fp.format_word(&bottom)
                )
            })?;
        }
        if oracle > 0 {
            nonzero += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < TIME_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!("200 polygons ({nonzero} non-zero) in {:.2}s", elapsed.as_secs_f64()))
}

fn shortcuts() -> Result<String, String> {
    let mut paths = 0;
    for n in 3..=9 {
        let all = enumerate_triangulations(n).unwrap();
        ensure(all.len() as u128 == catalan(n - 2), || format!("n={n}: {} triangulations", all.len()))?;
        let distinct: HashSet<_> = all.iter().collect();
        ensure(distinct.len() == all.len(), || format!("n={n}: duplicates"))?;
        let polygon = Polygon::new(n).unwrap();
        for v in 0..n {
            let fan = fan_triangulation(polygon, v).unwrap();
            let maximal: Vec<_> = all.iter().filter(|t| length(t, v) == n - 3).collect();
            ensure(maximal == vec![&fan], || format!("n={n} v={v}: fan is not the unique maximum"))?;
            for t in &all {
                let path = shortcut(polygon, v, t).unwrap();
                ensure(is_valid_shortcut(&path, v, t), || format!("n={n} v={v} T={t}: invalid shortcut"))?;
                for w in path.windows(2) {
                    // one diagonal exchanged for another
                    let a: HashSet<_> = w[0].diagonals().iter().collect();
                    let b: HashSet<_> = w[1].diagonals().iter().collect();
                    ensure(a.difference(&b).count() == 1 && flips(&w[0]).contains(&w[1]), || {
                        format!("n={n} v={v}: {} → {} is not a flip", w[0], w[1])
                    })?;
                    ensure(length(&w[1], v) < length(&w[0], v), || format!("n={n} v={v}: length not decreasing"))?;
                }
                paths += 1;
            }
        }
    }
    Ok(format!("{paths} shortcut paths, n ≤ 9, every vertex"))
}

fn fusion_oracle() -> Result<String, String> {
    let fp = FreeProductRing::su2_power(2);
    let words = fp.enumerate_words(6, 2);
    let mut pairs = 0;
    for x in &words {
        for y in &words {
            if x.len() + y.len() > 6 {
                continue;
            }
            let letters: Vec<Letter> = x.letters().iter().chain(y.letters()).copied().collect();
            let oracle = fp.decompose_tensor_word(&letters);
            let candidates = fp.squeeze_candidates(x, y);
            for (z, mult) in oracle.iter() {
                ensure(candidates.contains(z), || {
                    format!("{} outside squeeze of {}·{}", fp.format_word(z), fp.format_word(x), fp.format_word(y))
                })?;
                let d = fp.triangle_dim(x, y, z);
                ensure(d == mult, || {
                    format!(
                        "[{} {}; {}] = {d}, oracle {mult}",
                        fp.format_word(x),
                        fp.format_word(y),
                        fp.format_word(z)
                    )
                })?;
            }
            for z in &candidates {
                let d = fp.triangle_dim(x, y, z);
                ensure(d == oracle.coefficient(z), || format!("candidate {} mismatch", fp.format_word(z)))?;
            }
            pairs += 1;
        }
    }
    Ok(format!("{pairs} word pairs"))
}

fn random_element(rng: &mut ChaCha8Rng, basis: &[fuscat_core::PlanarDiagram], m: usize) -> AlgebraElement {
    let first = &basis[0];
    let mut e = AlgebraElement::zero(m, Var::A, first.bottom().clone(), first.top().clone());
    for d in basis {
        if rng.gen_bool(0.25) {
            continue;
        }
        let exps: Vec<i64> = (0..m).map(|_| rng.gen_range(-1..=2)).collect();
        let c = LaurentPoly::monomial(Var::A, m, exps, rng.gen_range(-3i64..=3));
        let term = AlgebraElement::from_diagram(d.clone(), c).unwrap();
        e = e.add(&term).unwrap();
    }
    e
}

fn algebra_sanity() -> Result<String, String> {
    let (m, n) = (2, 4);
    let basis = enumerate_basis(m, n, G).unwrap();
    let id = AlgebraElement::identity(m, n, Var::A);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..100 {
        let (a, b, c) = (
            random_element(&mut rng, &basis, m),
            random_element(&mut rng, &basis, m),
            random_element(&mut rng, &basis, m),
        );
        let left = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let right = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        ensure(left == right, || format!("triple {i}: (ab)c != a(bc)"))?;
        ensure(id.multiply(&a).unwrap() == a && a.multiply(&id).unwrap() == a, || {
            format!("triple {i}: identity is not neutral")
        })?;
    }
    for i in 0..100 {
        let a = random_element(&mut rng, &basis, m);
        let b = random_element(&mut rng, &basis, m);
        let ab = a.multiply(&b).unwrap().markov_trace().unwrap();
        let ba = b.multiply(&a).unwrap().markov_trace().unwrap();
        ensure(ab == ba, || format!("pair {i}: tr(ab) = {ab}, tr(ba) = {ba}"))?;
    }
    Ok(format!("A_{n} (m={m}, dim {}): 100 triples, 100 pairs", basis.len()))
}

fn main() {
    let criteria: [(&str, Check); 11] = [
        ("dimension formula vs enumeration", dimension_formula),
        ("bijectivity as dimensions", bijectivity),
        ("module match with fusion", module_match),
        ("branching", branching),
        ("partition identity", partition_identity),
        ("Temperley-Lieb and Hecke constants", hecke),
        ("semisimplicity classifier", semisimplicity),
        ("polygon coherence at dimension level", coherence),
        ("short-cut machinery", shortcuts),
        ("fusion recursion vs oracle", fusion_oracle),
        ("diagram algebra sanity", algebra_sanity),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.2}s]", i + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {why} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
