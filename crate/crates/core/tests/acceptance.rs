//! The ten acceptance criteria, one line each. Runs without the libtest
//! harness so that every criterion reports even when an earlier one fails.

use lzd_core::buildings::{image_vertices, CaseTag};
use lzd_core::criterion::{check_distinction, default_t_values, preservation_check, FieldModel};
use lzd_core::ffield::{build_field, build_field_alternate, field_of_order};
use lzd_core::localdata::{admissible_d, regular_orbits};
use lzd_core::oracle::cache::{parse, serialize, TableCache};
use lzd_core::oracle::suites::run_suite;
use lzd_core::oracle::{character_table, enumerate_gl};
use lzd_core::{Error, LocalSetup, MultChar, Ramification, RootOfUnity, TameParameter};
use num_integer::Integer;
use rayon::prelude::*;
use std::time::{Duration, Instant};

const U: Ramification = Ramification::Unramified;
const T: Ramification = Ramification::TotallyRamified;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Outcome {
        Outcome { pass, detail: detail.into() }
    }
}

fn ms(d: Duration) -> String {
    format!("{:.0} ms", d.as_secs_f64() * 1e3)
}

/// Verdicts for every exponent and `t = ±1`; invalid exponents are skipped.
fn sweep(setup: LocalSetup) -> Vec<(u64, RootOfUnity, u8)> {
    let units = setup.residue_order() - 1;
    (0..units)
        .into_par_iter()
        .flat_map_iter(|a| {
            default_t_values().into_iter().filter_map(move |t| {
                match check_distinction(&TameParameter::new(setup, a as i64, t)) {
                    Ok(v) => Some((a, t, v.multiplicity)),
                    Err(Error::NotRegular { .. }) => None,
                    Err(e) => panic!("{setup} a={a}: {e}"),
                }
            })
        })
        .collect()
}

fn criterion1() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    for m in 1..=8 {
        let expected =
            [(CaseTag::NrOdd, m), (CaseTag::TrOdd, m * (m - 1) / 2 + m), (CaseTag::NrEven, 0), (CaseTag::TrEven, m)];
        for (case, want) in expected {
            let got = image_vertices(case, m).len();
            if got != want {
                bad.push(format!("{case} m={m}: {got} != {want}"));
            }
        }
    }
    let el = start.elapsed();
    let pass = bad.is_empty() && el < Duration::from_secs(1);
    Outcome::new(pass, format!("32 counts, {} wrong {bad:?}, {}", bad.len(), ms(el)))
}

fn criterion2(mults: &mut Vec<i64>) -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    let mut hits = 0;
    for (ram, n) in [(U, 2u32), (U, 4), (T, 3)] {
        for d in admissible_d(n) {
            for (_, _, m) in sweep(LocalSetup::new(3, ram, n, d)) {
                checked += 1;
                hits += (m != 0) as usize;
                mults.push(m as i64);
            }
        }
    }
    let el = start.elapsed();
    let pass = hits == 0 && checked > 0 && el < Duration::from_secs(5);
    Outcome::new(pass, format!("{checked} parameters, {hits} distinguished, {}", ms(el)))
}

fn suite_outcome(names: &[&str], cache: &TableCache, mults: &mut Vec<i64>) -> (bool, usize, Vec<String>) {
    let mut pass = true;
    let mut count = 0;
    let mut failures = Vec::new();
    for name in names {
        match run_suite(name, Some(cache)) {
            Ok(r) => {
                count += r.checks.len();
                mults.extend(&r.multiplicities);
                for c in r.checks.iter().filter(|c| !c.pass) {
                    failures.push(format!("{name}/{}: expected {} observed {}", c.label, c.expected, c.observed));
                }
                pass &= r.pass();
            }
            Err(e) => {
                pass = false;
                failures.push(format!("{name}: {e}"));
            }
        }
    }
    (pass, count, failures)
}

fn timed_fresh_table(m: usize, q: u64) -> Duration {
    let start = Instant::now();
    let g = enumerate_gl(m, q).unwrap();
    character_table(&g).unwrap();
    start.elapsed()
}

fn cached_hit(cache: &TableCache, m: usize, q: u64) -> bool {
    let g = enumerate_gl(m, q).unwrap();
    cache.get_or_build(&g).map(|(_, hit)| hit).unwrap_or(false)
}

fn criterion3(cache: &TableCache, mults: &mut Vec<i64>) -> Outcome {
    let build = timed_fresh_table(2, 5);
    let (pass, n, failures) = suite_outcome(&["tr-even"], cache, mults);
    let hit = cached_hit(cache, 2, 5);
    let ok = pass && hit && build < Duration::from_secs(60);
    Outcome::new(ok, format!("{n} orbit/t/d checks, GL_2(F_5) table {}, cached {hit} {failures:?}", ms(build)))
}

fn criterion4(cache: &TableCache, mults: &mut Vec<i64>) -> Outcome {
    let build = timed_fresh_table(2, 9);
    let (pass, n, failures) = suite_outcome(&["prasad"], cache, mults);
    let hit = cached_hit(cache, 2, 9);
    let ok = pass && hit && build < Duration::from_secs(600);
    Outcome::new(ok, format!("{n} checks, GL_2(F_9) table {}, cached {hit} {failures:?}", ms(build)))
}

/// Restriction of characters of `F_729^×` to `F_27^×`, evaluated on field
/// elements, against the engine at `q = 3, n = d = 3`.
fn criterion5(mults: &mut Vec<i64>) -> Outcome {
    let start = Instant::now();
    let setup = LocalSetup::new(3, U, 3, 3);
    let field = field_of_order(729).unwrap();
    let sub: Vec<_> = field.units_iter().filter(|&x| field.pow(x, 27) == x).collect();
    assert_eq!(sub.len(), 26);
    let mut agree = 0;
    let mut regular = 0;
    for a in 0..728u64 {
        let chi = MultChar::new(729, a as i64);
        let trivial = sub.iter().all(|&x| chi.evaluate(x).unwrap().is_one());
        let orbit_len = (1..=3).find(|&j| a * 9u64.pow(j) % 728 == a).unwrap();
        for t in default_t_values() {
            match check_distinction(&TameParameter::new(setup, a as i64, t)) {
                Ok(v) => {
                    regular += 1;
                    mults.push(v.multiplicity as i64);
                    agree += (v.distinguished == (trivial && t.is_one())) as usize;
                }
                Err(Error::NotRegular { .. }) => agree += (orbit_len < 3) as usize,
                Err(_) => {}
            }
        }
    }
    let el = start.elapsed();
    let pass = agree == 1456 && el < Duration::from_secs(1);
    Outcome::new(pass, format!("{agree}/1456 agree ({regular} regular), {}", ms(el)))
}

fn criterion_suites(names: &[&str], cache: &TableCache, mults: &mut Vec<i64>) -> Outcome {
    let (pass, n, failures) = suite_outcome(names, cache, mults);
    Outcome::new(pass, format!("{n} checks {failures:?}"))
}

fn criterion9(mults: &mut Vec<i64>) -> Outcome {
    let start = Instant::now();
    let mut mismatches = 0;
    let mut runs = 0;
    for n in [2u32, 3, 4] {
        for ram in [U, T] {
            let found = preservation_check(3, n, ram).unwrap();
            mismatches += found.len();
            runs += 1;
            for d in admissible_d(n) {
                mults.extend(sweep(LocalSetup::new(3, ram, n, d)).into_iter().map(|(_, _, m)| m as i64));
            }
        }
    }
    let el = start.elapsed();
    Outcome::new(
        mismatches == 0 && el < Duration::from_secs(10),
        format!("{runs} families, {mismatches} mismatches, {}", ms(el)),
    )
}

fn galois_invariance() -> (bool, usize) {
    let mut ok = true;
    let mut count = 0;
    for q in [3u64, 5] {
        for n in 2..=4u32 {
            for ram in [U, T] {
                for d in admissible_d(n) {
                    let setup = LocalSetup::new(q, ram, n, d);
                    let units = setup.residue_order() - 1;
                    let verdicts = sweep(setup);
                    count += verdicts.len();
                    ok &= verdicts.par_iter().all(|&(a, t, m)| {
                        let b = (a as u128 * setup.q_k() as u128 % units as u128) as i64;
                        check_distinction(&TameParameter::new(setup, b, t)).unwrap().multiplicity == m
                    });
                }
            }
        }
    }
    (ok, count)
}

/// Transport each character to the field built on the alternate generator
/// and decide it there from field elements.
fn generator_independence() -> (bool, usize) {
    let mut ok = true;
    let mut count = 0;
    for q in [3u64, 5] {
        for n in 2..=4u32 {
            for ram in [U, T] {
                let setup = LocalSetup::new(q, ram, n, 1);
                let k = if ram == U { 2 * n } else { n };
                let std = build_field(q, k).unwrap();
                let alt = build_field_alternate(q, k).unwrap();
                let units = std.units() as i64;
                let u = alt.isomorphism_exponent(&std).unwrap() as i64;
                let u_inv = u.extended_gcd(&units).x.rem_euclid(units) as u64;
                let ms = FieldModel::new(&std, setup).unwrap();
                let ma = FieldModel::new(&alt, setup).unwrap();
                let orbits = regular_orbits(setup.q_k(), n);
                count += orbits.len() * 2;
                ok &= orbits.par_iter().all(|orbit| {
                    default_t_values().into_iter().all(|t| {
                        let a = orbit[0];
                        let a_alt = (a as u128 * u_inv as u128 % units as u128) as u64;
                        let engine = check_distinction(&TameParameter::new(setup, a as i64, t)).unwrap().distinguished;
                        let engine_alt =
                            check_distinction(&TameParameter::new(setup, a_alt as i64, t)).unwrap().distinguished;
                        engine == engine_alt && ms.distinguished(a, t) == engine && ma.distinguished(a_alt, t) == engine
                    })
                });
            }
        }
    }
    (ok, count)
}

fn criterion10(cache: &TableCache) -> Outcome {
    let (galois, gn) = galois_invariance();
    let (generator, gen_n) = generator_independence();
    let mut orth = true;
    let mut round_trip = true;
    for (m, q) in [(1usize, 5u64), (1, 9), (2, 3), (2, 5), (2, 9)] {
        let g = enumerate_gl(m, q).unwrap();
        let (table, _) = cache.get_or_build(&g).unwrap();
        orth &= table.check_orthogonality() && table.check_degrees();
        let text = std::fs::read_to_string(cache.path(m, q)).unwrap();
        let back = parse(&g, &text).unwrap();
        round_trip &= serialize(&g, &back) == text && back == table && back == character_table(&g).unwrap();
    }
    Outcome::new(
        galois && generator && orth && round_trip,
        format!(
            "galois orbits {galois} ({gn} verdicts), generators {generator} ({gen_n}), orthogonality {orth}, cache round trip {round_trip}"
        ),
    )
}

fn main() {
    let dir = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("lzd-acceptance-cache");
    let _ = std::fs::remove_dir_all(&dir);
    let cache = TableCache::new(&dir);
    let mut mults = Vec::new();

    let mut results = vec![
        (1, criterion1()),
        (2, criterion2(&mut mults)),
        (3, criterion3(&cache, &mut mults)),
        (4, criterion4(&cache, &mut mults)),
        (5, criterion5(&mut mults)),
        (6, criterion_suites(&["green"], &cache, &mut mults)),
        (7, criterion_suites(&["lusztig"], &cache, &mut mults)),
    ];
    let c9 = criterion9(&mut mults);
    let out_of_range = mults.iter().filter(|&&m| m != 0 && m != 1).count();
    results.push((
        8,
        Outcome::new(
            out_of_range == 0 && !mults.is_empty(),
            format!("{} multiplicities, {out_of_range} outside {{0,1}}", mults.len()),
        ),
    ));
    results.push((9, c9));
    results.push((10, criterion10(&cache)));

    let mut failed = 0;
    for (n, o) in &results {
        println!("criterion {n}: {} {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += !o.pass as usize;
    }
    println!("acceptance: {}/{} criteria pass", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
