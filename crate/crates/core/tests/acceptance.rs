//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero on any FAIL.

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use astlab::conjectures::{endings, scan_divisibility, scan_endings, scan_flatstep, scan_root_windows, ROOT_REPORT_HEADER};
use astlab::identities::{
    constant_term_weight, det_andrews, det_asm_normalized, det_asm_variant, product_formula, product_value,
};
use astlab::limits::Limits;
use astlab::paths::{enumerate_irreducible_sets, enumerate_sets, CentredCatalanSet};
use astlab::tableaux::{shapes_of_set, SkewShape};
use astlab::tables::regenerate;
use astlab::trapezoid::{count_for_set, count_trapezoids, enumerate_for_set, enumerate_trapezoids};
use astlab::weights::{equivalence_classes, operator_weight, Method, WeightStore};
use astlab::algebra::{Eisenstein, UniPoly};

struct Suite {
    failures: usize,
}

impl Suite {
    fn check(&mut self, id: &str, what: &str, run: impl FnOnce() -> Result<String, String>) {
        let t = Instant::now();
        let outcome = run();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS [{id}] {what}: {detail} ({secs:.1}s)"),
            Err(detail) => {
                self.failures += 1;
                println!("FAIL [{id}] {what}: {detail} ({secs:.1}s)");
            }
        }
    }
}

fn ok_if(cond: bool, pass: String, fail: impl FnOnce() -> String) -> Result<String, String> {
    if cond {
        Ok(pass)
    } else {
        Err(fail())
    }
}

/// Alternating sign matrices of order `n`: `∏_{j<n} (3j+1)!/(n+j)!`.
fn asm_count(n: u64) -> BigInt {
    let fact = |m: u64| (1..=m).fold(BigInt::one(), |a, k| a * k);
    let mut r = BigRational::one();
    for j in 0..n {
        r *= BigRational::new(fact(3 * j + 1), fact(n + j));
    }
    r.to_integer()
}

/// Standard fillings of a skew shape, by removing outer corners.
fn syt_brute(rows: &[(usize, usize)]) -> BigUint {
    fn rec(rows: &mut Vec<(usize, usize)>, memo: &mut HashMap<Vec<(usize, usize)>, BigUint>) -> BigUint {
        if rows.iter().all(|(a, b)| a == b) {
            return BigUint::one();
        }
        if let Some(v) = memo.get(rows) {
            return v.clone();
        }
        let mut total = BigUint::zero();
        for i in 0..rows.len() {
            let (start, end) = rows[i];
            if start == end {
                continue;
            }
            // The last box of row i is a corner when the row below ends strictly left of it.
            if i + 1 >= rows.len() || rows[i + 1].1 < end {
                rows[i].1 -= 1;
                total += rec(rows, memo);
                rows[i].1 += 1;
            }
        }
        memo.insert(rows.clone(), total.clone());
        total
    }
    rec(&mut rows.to_vec(), &mut HashMap::new())
}

fn area_of(s: &CentredCatalanSet) -> i64 {
    let n = s.size() as i64 - 1;
    let mut h = 0i64;
    let mut twice = 0i64;
    for i in 1..=n {
        let prev = h;
        h += [-i, i].iter().filter(|&&x| s.contains(x)).count() as i64 - 1;
        twice += prev + h;
    }
    twice / 2
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * k)
}

fn main() -> ExitCode {
    let limits = Limits::default();
    let operator = WeightStore::new(Method::Operator, limits);
    let mut suite = Suite { failures: 0 };

    suite.check("1", "reference tables regenerated from interpolated counts", || {
        let store = WeightStore::new(Method::Interpolation, limits);
        let t = regenerate(&store).map_err(|e| e.to_string())?;
        let bad: Vec<String> = t.sets.iter().chain(&t.paths).filter(|l| !l.matches).map(|l| format!("{} got {}", l.key, l.computed)).collect();
        ok_if(bad.is_empty(), format!("{} set rows and {} path rows exact", t.sets.len(), t.paths.len()), || bad.join("; "))
    });

    suite.check("2", "brute force = operator formula = constant term, irreducible |S| <= 5, l = 1..5", || {
        let mut checked = 0;
        for size in 2..=5 {
            for s in enumerate_irreducible_sets(size, &limits).unwrap() {
                let w = operator_weight(&s).map_err(|e| e.to_string())?;
                for l in 1..=5usize {
                    let brute = enumerate_for_set(&s, l, &limits).unwrap().count() as i64;
                    let op = w.eval_int(l as i64);
                    let ct = constant_term_weight(&s, l as i64, &limits).map_err(|e| e.to_string())?;
                    if op != BigRational::from_integer(brute.into()) || ct != BigInt::from(brute) {
                        return Err(format!("{s} l={l}: brute {brute}, operator {op}, constant term {ct}"));
                    }
                    checked += 1;
                }
            }
        }
        Ok(format!("{checked} (S, l) pairs agree"))
    });

    suite.check("3a", "sum of set weights = product formula as polynomials, n <= 4", || {
        for n in 1..=4 {
            let sum = enumerate_sets(n + 1, &limits).unwrap().iter().map(|s| operator.set_weight(s).unwrap()).fold(UniPoly::zero(), |a, b| a + b);
            if sum != product_formula(n) {
                return Err(format!("n={n}: {} vs {}", sum.factored(), product_formula(n).factored()));
            }
        }
        Ok("n = 1..4".into())
    });

    suite.check("3b", "sum of set weights = product formula, n = 5, l = 1..4", || {
        let sets = enumerate_sets(6, &limits).unwrap();
        for l in 1..=4i64 {
            let sum: BigRational = sets.iter().map(|s| operator.set_weight(s).unwrap().eval_int(l)).sum();
            let brute = count_trapezoids(5, l as usize, &limits).unwrap();
            let p = product_value(5, l).map_err(|e| e.to_string())?;
            if sum != BigRational::from_integer(p.clone()) || p != BigInt::from(brute) {
                return Err(format!("l={l}: weights {sum}, formula {p}, count {brute}"));
            }
        }
        Ok("4 values".into())
    });

    suite.check("3c", "plain determinant = product formula, n <= 5, l <= 6", || {
        for n in 1..=5 {
            for l in 0..=6 {
                let (d, p) = (det_andrews(n, l).unwrap(), product_value(n, l).unwrap());
                if d != p {
                    return Err(format!("n={n} l={l}: {d} vs {p}"));
                }
            }
        }
        Ok("35 values".into())
    });

    suite.check("3d", "Eisenstein determinant: k=3 matches the product formula, k=1 l=0 gives ASM numbers", || {
        for n in 1..=4 {
            for l in 0..=4 {
                let (d, p) = (det_asm_normalized(n, l).map_err(|e| e.to_string())?, product_value(n, l).unwrap());
                if d != p {
                    return Err(format!("n={n} l={l}: {d} vs {p}"));
                }
            }
        }
        let got: Vec<Eisenstein> = (1..=4).map(|n| det_asm_variant(n, 0, 1).unwrap()).collect();
        let want: Vec<Eisenstein> = (1..=4).map(|n| Eisenstein::from_int(asm_count(n))).collect();
        ok_if(got == want, "k=3 for n<=4, l<=4; k=1 gives 1, 2, 7, 42".into(), || format!("k=1 values {got:?}"))
    });

    suite.check("4a", "degree = area and leading = f/|shape|! for |S| <= 6", || {
        let both = WeightStore::new(Method::Both, limits);
        let mut n = 0;
        for size in 1..=6 {
            for s in enumerate_sets(size, &limits).unwrap() {
                let w = both.set_weight(&s).map_err(|e| e.to_string())?;
                let shape: SkewShape = shapes_of_set(&s);
                let f = syt_brute(&shape.rows());
                let d = area_of(&s);
                let lead = BigRational::new(BigInt::from(f.clone()), factorial(d as usize));
                if w.degree() != Some(d as usize) || w.leading() != lead || shape.size() as i64 != d {
                    return Err(format!("{s}: {} vs degree {d}, f {f}", w.factored()));
                }
                n += 1;
            }
        }
        Ok(format!("{n} sets, both weight routes agreeing"))
    });

    suite.check("4b", "multiplicativity on raw counts, factors of size <= 4", || {
        let mut all = Vec::new();
        for size in 2..=4 {
            all.extend(enumerate_sets(size, &limits).unwrap());
        }
        let mut pairs = 0;
        for s1 in &all {
            for s2 in &all {
                let c = s1.concat(s2);
                let d = area_of(&c) as usize;
                let shift = 2 * s1.size() - 2;
                for l in 1..=d + 2 {
                    let lhs = count_for_set(&c, l, &limits).unwrap();
                    let rhs = count_for_set(s1, l, &limits).unwrap() * count_for_set(s2, l + shift, &limits).unwrap();
                    if lhs != rhs {
                        return Err(format!("{s1} o {s2} at l={l}: {lhs} vs {rhs}"));
                    }
                }
                pairs += 1;
            }
        }
        Ok(format!("{pairs} ordered pairs"))
    });

    suite.check("4c", "split/join round trips, n <= 4, l <= 4", || {
        let mut trips = 0;
        for n in 1..=4 {
            for l in 1..=4 {
                for a in enumerate_trapezoids(n, l, &limits).unwrap() {
                    let s = a.catalan_set().unwrap();
                    for n1 in 1..n {
                        let Some((s1, s2)) = s.split_at(n1) else { continue };
                        let (bottom, top) = a.split(n1).map_err(|e| e.to_string())?;
                        if bottom.catalan_set().unwrap() != s1 || top.catalan_set().unwrap() != s2 || bottom.join(&top).unwrap() != a {
                            return Err(format!("round trip failed at n1={n1} for\n{a}"));
                        }
                        trips += 1;
                    }
                }
            }
        }
        Ok(format!("{trips} round trips"))
    });

    suite.check("4d", "equivalence classes have C(l-1, f) members and f^shape top classes", || {
        let mut cases = 0;
        for size in 3..=5 {
            for s in enumerate_irreducible_sets(size, &limits).unwrap() {
                let shape = shapes_of_set(&s);
                for l in 1..=shape.size() + 2 {
                    let c = equivalence_classes(&s, l).map_err(|e| e.to_string())?;
                    let top_ok = l <= shape.size() || BigUint::from(c.classes_with(shape.size())) == syt_brute(&shape.rows());
                    if !c.sizes_are_binomial() || !c.sum_matches() || !top_ok {
                        return Err(format!("{s} l={l}: {:?}", c.by_free));
                    }
                    cases += 1;
                }
            }
        }
        Ok(format!("{cases} (S, l) cases"))
    });

    suite.check("5a", "(l+1) and (l+1)(l+2) divisibility iff containment, |S| <= 6", || {
        let reports = scan_divisibility(&operator, 6).map_err(|e| e.to_string())?;
        let bad: Vec<&str> = reports.iter().filter(|r| r.proved_part_fails).map(|r| r.set.as_str()).collect();
        ok_if(bad.is_empty(), format!("{} sets", reports.len()), || bad.join(", "))
    });

    suite.check("5b", "flat step before the final down step multiplies by l+2n, length <= 5", || {
        let reports = scan_flatstep(&operator, 5).map_err(|e| e.to_string())?;
        let bad: Vec<&str> = reports.iter().filter(|r| !r.holds).map(|r| r.path.as_str()).collect();
        ok_if(bad.is_empty(), format!("{} paths", reports.len()), || bad.join(", "))
    });

    suite.check("6a", "general divisibility iff containment, |S| <= 6", || {
        let reports = scan_divisibility(&operator, 6).map_err(|e| e.to_string())?;
        let bad: Vec<&str> = reports.iter().filter(|r| r.counterexample).map(|r| r.set.as_str()).collect();
        ok_if(bad.is_empty(), format!("{} sets, 0 counterexamples", reports.len()), || bad.join(", "))
    });

    suite.check("6b", "ending divisibility, paths of length <= 6", || {
        let reports = scan_endings(&operator, 6, &endings()).map_err(|e| e.to_string())?;
        let bad: Vec<String> = reports.iter().filter(|r| !r.divides).map(|r| format!("{} ({})", r.path, r.ending)).collect();
        ok_if(bad.is_empty(), format!("{} path/ending pairs, 0 counterexamples", reports.len()), || bad.join(", "))
    });

    suite.check("6c", "root window report generated (informational)", || {
        let (reports, summaries) = scan_root_windows(&operator, 7).map_err(|e| e.to_string())?;
        println!("INFO {ROOT_REPORT_HEADER}");
        for s in &summaries {
            println!("INFO {:?} n={}: attained {}/{} window members", s.kind, s.n, s.attained.len(), s.window.len());
        }
        let outside = reports.iter().filter(|r| !r.in_window).count();
        ok_if(reports.iter().all(|r| !r.counterexample), format!("{} reports, {outside} outside the window below the claimed sizes", reports.len()), || "claimed window violated".into())
    });

    suite.check("7", "total counts at l = 2 are the ASM numbers 2, 7, 42, 429", || {
        let got: Vec<u128> = (1..=4).map(|n| count_trapezoids(n, 2, &limits).unwrap()).collect();
        let streamed: Vec<u128> = (1..=4).map(|n| enumerate_trapezoids(n, 2, &limits).unwrap().count() as u128).collect();
        let want: Vec<u128> = (2..=5).map(|n| asm_count(n).try_into().unwrap()).collect();
        ok_if(got == want && streamed == want, format!("{got:?}"), || format!("dp {got:?}, streamed {streamed:?}, want {want:?}"))
    });

    if suite.failures == 0 {
        println!("all acceptance criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("{} acceptance criteria failed", suite.failures);
        ExitCode::FAILURE
    }
}
