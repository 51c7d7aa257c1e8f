//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the
//! libtest harness so the lines always reach the output.

use std::collections::{BTreeMap, BTreeSet};
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use posmon_core::classifier::{check_chain_consistency, classify_conductive, Status};
use posmon_core::factor::{atoms, atoms_in_box, factorizations, length_set, probe_property, ProbeBound, Property};
use posmon_core::gallery;
use posmon_core::instance::parse_instance;
use posmon_core::models::{atom_group_membership, contains, gp_membership, MonoidDescriptor};
use posmon_core::ordered::{AlgebraicTriple, GroupElement, GroupId, Rational};
use posmon_core::primes;
use posmon_core::witness::{mq_chain, synthesize_break, verify_quasi_witness};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(t: Instant, limit: Duration) -> Result<(), String> {
    ensure(t.elapsed() < limit, || format!("took {:.2?}, limit {limit:?}", t.elapsed()))
}

fn int(n: i64) -> GroupElement {
    GroupElement::integer(n)
}

fn lex2(x: i64, y: i64) -> GroupElement {
    GroupElement::lex(&[x, y], 0).unwrap()
}

// ---------------------------------------------------------------- 1

fn conductive_table() -> Outcome {
    let t = Instant::now();
    use Property::*;
    for a in 1..=6i64 {
        let r = classify_conductive(GroupId::Integers, &int(a), 4).map_err(|e| e.to_string())?;
        let st = |p| r.status(p);
        let want: &[(Property, Status)] = match a {
            1 => &[(Ufm, Status::Proved), (Hfm, Status::Proved)],
            2 => &[(Lfm, Status::Proved), (Hfm, Status::Refuted), (Ufm, Status::Refuted)],
            _ => &[(Ffm, Status::Proved), (Lfm, Status::Refuted)],
        };
        for (p, s) in want.iter().chain([(Bfm, Status::Proved)].iter()) {
            ensure(st(*p) == *s, || format!("a={a}: {p} is {:?}", st(*p)))?;
        }
        let m = MonoidDescriptor::conductive(int(a)).unwrap();
        for p in Property::PROBED {
            let res = probe_property(&m, p, &ProbeBound::Scalar(30 * a), 4).map_err(|e| e.to_string())?;
            let agree = match st(p) {
                Status::Proved => res.is_consistent(),
                Status::Refuted => res.is_refuted(),
                _ => false,
            };
            ensure(agree, || format!("a={a}: probe {p} disagrees: {res:?}"))?;
        }
    }
    within(t, Duration::from_secs(5))?;
    Ok(format!("a=1..6 table exact, probes at 30a agree ({:.2?})", t.elapsed()))
}

// ---------------------------------------------------------------- 2

fn conductive_atoms() -> Outcome {
    // over Z: brute-force indecomposability inside {0} u [a, inf)
    for a in 1..=8i64 {
        let m = MonoidDescriptor::conductive(int(a)).unwrap();
        let got: Vec<i64> = atoms(&m, 8).atoms.iter().map(|x| i64::try_from(x.as_rational().unwrap().floor()).unwrap()).collect();
        let member = |x: i64| x == 0 || x >= a;
        let want: Vec<i64> = (a..=4 * a).filter(|&x| !(a..x).any(|y| member(y) && member(x - y) && x - y > 0)).collect();
        ensure(got == want, || format!("Z, a={a}: {got:?} vs {want:?}"))?;
    }
    // over Z^2: x in the box is an atom iff it is not a + (x - a) with x - a >= a
    let mut count = 0;
    for ax in 0..=2i64 {
        for ay in -3..=3i64 {
            let a = lex2(ax, ay);
            if !a.is_positive() {
                continue;
            }
            let m = MonoidDescriptor::conductive(a.clone()).unwrap();
            let got: BTreeSet<GroupElement> = atoms_in_box(&m, 6, &[3, 10]).atoms.into_iter().collect();
            let mut want = BTreeSet::new();
            for x in -3..=3i64 {
                for y in -10..=10i64 {
                    let e = lex2(x, y);
                    let in_m = (x, y) >= (ax, ay);
                    if !in_m {
                        continue;
                    }
                    let rest = (x - ax, y - ay);
                    let decomposes = rest >= (ax, ay);
                    if decomposes {
                        let v = contains(&m, &lex2(rest.0, rest.1), 4).unwrap();
                        ensure(v.is_in(), || format!("{e} - a should be a member"))?;
                    } else {
                        want.insert(e);
                    }
                }
            }
            ensure(got == want, || format!("Z2, a={a}: {} atoms vs {}", got.len(), want.len()))?;
            count += 1;
        }
    }
    Ok(format!("Z: a=1..8 exact; Z2: {count} conductors in box (3,10) exact"))
}

// ---------------------------------------------------------------- 3

fn mq_chain_replay() -> Outcome {
    let t = Instant::now();
    let q = Rational::frac(2, 3);
    let m = MonoidDescriptor::geometric(q.clone()).unwrap();
    let c = mq_chain(&q, 20).map_err(|e| e.to_string())?;
    c.verify().map_err(|e| e.to_string())?;
    ensure(c.elements[0] == Rational::from(3), || "q_0 != 3".into())?;
    for n in 0..20 {
        // 3 (2/3)^n = (3 - 2)(2/3)^n + 3 (2/3)^(n+1)
        let qn = q.pow(n as u32);
        let diff = &c.elements[n] - &c.elements[n + 1];
        ensure(diff == qn && c.differences[n] == qn, || format!("identity fails at n={n}"))?;
        ensure(contains(&m, &GroupElement::rational(diff), 24).unwrap().is_in(), || format!("a_{} not a member", n + 1))?;
    }
    within(t, Duration::from_secs(1))?;
    Ok(format!("depth 20 replayed ({:.2?})", t.elapsed()))
}

// ---------------------------------------------------------------- 4

fn m0_atoms_and_lengths() -> Outcome {
    let t = Instant::now();
    let m = MonoidDescriptor::PrimeReciprocal;
    let ps = primes::primes_up_to(97);
    let set = atoms(&m, ps.len());
    let want: BTreeSet<GroupElement> = ps.iter().map(|&p| GroupElement::rational(Rational::frac(1, p as i64))).collect();
    let got: BTreeSet<GroupElement> = set.atoms.iter().cloned().collect();
    ensure(got == want && set.rejected.is_empty(), || format!("atoms {got:?}"))?;
    // 1/p - 1/q is never a member: the p-part of its denominator survives
    for &p in &ps {
        for &q in primes::primes_up_to(1000).iter().filter(|&&q| q > p) {
            let d = GroupElement::rational(&Rational::frac(1, p as i64) - &Rational::frac(1, q as i64));
            ensure(contains(&m, &d, 30).unwrap().is_out(), || format!("1/{p} - 1/{q} is a member"))?;
        }
    }
    let small = primes::primes_up_to(47);
    let ls = length_set(&m, &GroupElement::rational(Rational::one()), small.len()).map_err(|e| e.to_string())?;
    let got: Vec<u64> = ls.lengths.iter().copied().collect();
    ensure(got == small, || format!("L(1) = {got:?}"))?;
    // oracle: sum c_p / p = 1 forces p | c_p (reduce mod p), so one term p * (1/p)
    let big_l: u128 = small.iter().map(|&p| p as u128).product();
    for &p in &small {
        let cofactor = big_l / p as u128;
        ensure((1..p as u128).all(|c| (c * cofactor) % p as u128 != 0), || format!("mod {p} oracle"))?;
    }
    within(t, Duration::from_secs(10))?;
    Ok(format!("25 atoms 1/p (p <= 97), L(1) = primes <= 47 ({:.2?})", t.elapsed()))
}

// ---------------------------------------------------------------- 5

fn hereditary_break() -> Outcome {
    let t = Instant::now();
    let c = synthesize_break(&Rational::frac(2, 3), 5, 10).map_err(|e| e.to_string())?;
    c.verify().map_err(|e| e.to_string())?;
    ensure(c.steps.len() == 5, || "fewer than 5 steps".into())?;
    // independent subset-sum over a common denominator
    let mut gens: Vec<Rational> = Vec::new();
    for st in &c.steps {
        gens.push(st.a_prime.clone());
        let den = gens.iter().fold(BigInt::from(1), |acc, g| acc.lcm(g.denom()));
        let target = usize::try_from(c.q0.mul_int(&den).floor()).unwrap();
        let ws: Vec<usize> = gens.iter().map(|g| usize::try_from(g.mul_int(&den).floor()).unwrap()).collect();
        let mut reach = vec![false; target + 1];
        reach[0] = true;
        for v in 1..=target {
            reach[v] = ws.iter().any(|&w| w <= v && reach[v - w]);
        }
        ensure(!reach[target], || format!("q_0 reachable after {} steps", gens.len()))?;
        ensure(&st.divisibility.s_m - &st.partial_sum == st.divisibility.difference, || "divisibility".into())?;
    }
    within(t, Duration::from_secs(30))?;
    let a: Vec<String> = c.steps.iter().map(|s| s.a_prime.to_string()).collect();
    Ok(format!("5 steps, a' = {} ({:.2?})", a.join(", "), t.elapsed()))
}

// ---------------------------------------------------------------- 6

fn quasi_witnesses() -> Outcome {
    let m = MonoidDescriptor::quasi_not_almost();
    let mut rng = StdRng::seed_from_u64(2024);
    for _ in 0..100 {
        let q = gallery::random_quasi_member(&mut rng);
        ensure(contains(&m, &GroupElement::rational(q.clone()), 6).unwrap().is_in(), || format!("{q} not a member"))?;
        let w = verify_quasi_witness(&q).map_err(|e| format!("{q}: {e}"))?;
        let (n, d) = (q.numer().clone(), q.denom().clone());
        let lhs = &q.mul_int(&(BigInt::from(4) * &d - 1)) + &q;
        let four_n = Rational::from_integer(BigInt::from(4) * &n);
        ensure(lhs == four_n && w.sum == four_n, || format!("{q}: identity"))?;
        ensure(&Rational::frac(4, 3) * &Rational::from_integer(BigInt::from(3) * &n) == four_n, || "3n * 4/3".into())?;
        ensure(w.multiplicity == Rational::from_integer(BigInt::from(3) * &n), || format!("{q}: multiplicity"))?;
    }
    let half = GroupElement::rational(Rational::frac(1, 2));
    let in_gp = gp_membership(&m, &half).map_err(|e| e.to_string())?;
    let in_atoms = atom_group_membership(&m, &half).map_err(|e| e.to_string())?;
    // 1/2 in Z[1/3] would need 2 | 3^k
    let oracle = (0..40u32).any(|k| BigInt::from(3).pow(k).is_even());
    ensure(in_gp && !in_atoms && !oracle, || "1/2 test".into())?;
    Ok("100 members satisfy (4d-1)q + q = 4n = 3n*(4/3); 1/2 not in Z[1/3]".into())
}

// ---------------------------------------------------------------- 7

/// Multisets of `m` integers in `[-r, r]` summing to `n`.
fn multiset_count(m: usize, n: i64, r: i64) -> u64 {
    // dp over values ascending, then count
    let mut dp: BTreeMap<(usize, i64), u64> = BTreeMap::from([((0, 0), 1)]);
    for v in -r..=r {
        let mut next = dp.clone();
        for (&(k, s), &c) in &dp {
            for t in 1..=(m - k) {
                *next.entry((k + t, s + v * t as i64)).or_default() += c;
            }
        }
        dp = next;
    }
    dp.get(&(m, n)).copied().unwrap_or(0)
}

fn hfm_cone() -> Outcome {
    let m = parse_instance("lexcone:Z2:positive-leading").unwrap();
    let mut total = 0;
    for x in 1..=4i64 {
        for y in -20..=20i64 {
            let fs = factorizations(&m, &lex2(x, y), 25, 1_000_000).map_err(|e| e.to_string())?;
            ensure(!fs.truncated, || format!("({x},{y}) truncated"))?;
            ensure(fs.factorizations.iter().all(|f| f.length() == x as u64), || format!("({x},{y}) has a length != {x}"))?;
            let want = multiset_count(x as usize, y, 25);
            ensure(fs.factorizations.len() as u64 == want, || format!("({x},{y}): {} vs {want}", fs.factorizations.len()))?;
            total += fs.factorizations.len();
        }
    }
    let two = factorizations(&m, &lex2(2, 0), 25, 1_000_000).map_err(|e| e.to_string())?;
    ensure(two.factorizations.len() >= 10, || "(2,0)".into())?;
    Ok(format!("{total} factorizations in the box, all of length m; (2,0) has {}", two.factorizations.len()))
}

// ---------------------------------------------------------------- 8

const N: i64 = 1_000_000;

fn dominated(h: &GroupElement, g: &GroupElement) -> bool {
    h.abs() <= g.abs().scale_i64(N)
}

fn fuzz_kind(name: &str, mut draw: impl FnMut() -> GroupElement) -> Result<(), String> {
    for i in 0..10_000 {
        let (g, h) = loop {
            let (g, h) = (draw(), draw());
            if !g.is_zero() && !h.is_zero() {
                break (g, h);
            }
        };
        let (vg, vh) = (g.arch_valuation().unwrap(), h.arch_valuation().unwrap());
        let s = &g + &h;
        let fail = || format!("{name} pair {i}: {g}, {h}");
        if g.group().is_archimedean() {
            ensure(vg == vh, fail)?;
        } else {
            ensure((vg <= vh) == dominated(&h, &g), fail)?;
        }
        if s.is_zero() {
            continue;
        }
        let vs = s.arch_valuation().unwrap();
        let min = vg.clone().min(vh.clone());
        ensure(vs >= min, fail)?;
        if vg != vh {
            ensure(vs == min, fail)?;
        }
    }
    Ok(())
}

fn valuation_fuzz() -> Outcome {
    let mut rng = StdRng::seed_from_u64(8);
    let mut coord = move || if rng.gen_bool(0.4) { 0 } else { rng.gen_range(-999i64..=999) };
    let z2 = GroupId::lex(2, 0).unwrap();
    let z3 = GroupId::lex(3, 2).unwrap();
    let q2 = GroupId::lex_over(2, 1, false).unwrap();
    let mut kinds = Vec::new();
    fuzz_kind("Z", || int(coord()))?;
    kinds.push("Z");
    fuzz_kind("Q", || GroupElement::rational(Rational::frac(coord(), 7)))?;
    kinds.push("Q");
    fuzz_kind("Z2", || z2.from_coords(vec![coord().into(), coord().into()]).unwrap())?;
    kinds.push("Z2");
    fuzz_kind("Z3", || z3.from_coords(vec![coord().into(), coord().into(), coord().into()]).unwrap())?;
    kinds.push("Z3@prio=2");
    fuzz_kind("Q2", || q2.from_coords(vec![Rational::frac(coord(), 3), Rational::frac(coord(), 5)]).unwrap())?;
    kinds.push("Q2@prio=1");
    fuzz_kind("R3", || GroupElement::triple(AlgebraicTriple::new(coord().into(), coord().into(), coord().into())))?;
    kinds.push("Q[sqrt2,sqrt3]");
    Ok(format!("10^4 pairs each over {}: 0 violations", kinds.join(", ")))
}

// ---------------------------------------------------------------- 9

/// Minimal generators of `<gens>` by reachability.
fn minimal(gens: &[i64]) -> Vec<i64> {
    let mut out: Vec<i64> = Vec::new();
    for &g in gens {
        let mut reach = vec![false; g as usize + 1];
        reach[0] = true;
        for v in 1..=g as usize {
            reach[v] = out.iter().any(|&h| h as usize <= v && reach[v - h as usize]);
        }
        if !reach[g as usize] {
            out.push(g);
        }
    }
    out
}

/// Nested loops over multiplicity vectors.
fn brute(atoms: &[i64], b: i64) -> BTreeSet<Vec<u64>> {
    let mut out = BTreeSet::new();
    let k = atoms.len();
    let cap = |i: usize| b / atoms.get(i).copied().unwrap_or(1);
    for c0 in 0..=cap(0) {
        for c1 in 0..=if k > 1 { cap(1) } else { 0 } {
            for c2 in 0..=if k > 2 { cap(2) } else { 0 } {
                for c3 in 0..=if k > 3 { cap(3) } else { 0 } {
                    let c = [c0, c1, c2, c3];
                    let s: i64 = (0..k).map(|i| c[i] * atoms[i]).sum();
                    if s == b {
                        out.insert(c[..k].iter().map(|&x| x as u64).collect());
                    }
                }
            }
        }
    }
    out
}

fn subsets(max: i64, size: usize) -> Vec<Vec<i64>> {
    if size == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in subsets(max, size - 1) {
        let lo = rest.last().map_or(1, |&x| x + 1);
        for g in lo..=max {
            let mut v = rest.clone();
            v.push(g);
            out.push(v);
        }
    }
    out
}

fn oracle_equivalence() -> Outcome {
    let t = Instant::now();
    let mut monoids = BTreeSet::new();
    let mut sets = 0;
    for size in 1..=4 {
        for s in subsets(20, size) {
            if s.iter().fold(0, |g, &x| g.gcd(&x)) != 1 {
                continue;
            }
            sets += 1;
            monoids.insert(minimal(&s));
        }
    }
    let mut checked = 0usize;
    for atoms_ in &monoids {
        let m = MonoidDescriptor::numerical(atoms_).unwrap();
        for b in 0..=100i64 {
            let want = brute(atoms_, b);
            if !contains(&m, &int(b), 4).unwrap().is_in() {
                ensure(want.is_empty(), || format!("<{atoms_:?}>: {b} missed"))?;
                checked += 1;
                continue;
            }
            let fs = factorizations(&m, &int(b), 4, 1_000_000).map_err(|e| format!("<{atoms_:?}> at {b}: {e}"))?;
            ensure(fs.complete && !fs.truncated, || format!("<{atoms_:?}> at {b}: incomplete"))?;
            let got: BTreeSet<Vec<u64>> = fs
                .factorizations
                .iter()
                .map(|f| {
                    atoms_
                        .iter()
                        .map(|&a| f.parts.iter().find(|(x, _)| x == &int(a)).map_or(0, |(_, k)| *k))
                        .collect()
                })
                .collect();
            ensure(got.len() == fs.factorizations.len(), || format!("<{atoms_:?}> at {b}: duplicates"))?;
            ensure(got == want, || format!("<{atoms_:?}> at {b}: {} vs {}", got.len(), want.len()))?;
            checked += 1;
        }
    }
    within(t, Duration::from_secs(60))?;
    Ok(format!("{sets} generator sets = {} monoids x 101 elements ({checked} cases, {:.2?})", monoids.len(), t.elapsed()))
}

// ---------------------------------------------------------------- 10

fn gallery_chain() -> Outcome {
    let run = gallery::run_all(2);
    for e in &run.entries {
        let r = e.report.as_ref().ok_or_else(|| format!("{}: no report", e.id))?;
        ensure(check_chain_consistency(r) && r.chain_ok, || format!("{}: chain", e.id))?;
        ensure(e.passed, || format!("{}: recipe failed", e.id))?;
    }
    let out = Command::new(env!("CARGO_BIN_EXE_posmon")).args(["gallery", "--run-all"]).output().map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(0), || format!("exit {:?}", out.status.code()))?;
    let text = String::from_utf8_lossy(&out.stdout);
    let passes = text.lines().filter(|l| l.starts_with("PASS ")).count();
    ensure(passes == run.entries.len(), || format!("{passes} PASS lines"))?;
    Ok(format!("{} reports chain-consistent; `gallery --run-all` exit 0", run.entries.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("conductive classification table", conductive_table),
        ("conductive atoms [a, 2a)", conductive_atoms),
        ("M_{2/3} ascending chain", mq_chain_replay),
        ("M_0 atoms and L(1)", m0_atoms_and_lengths),
        ("hereditary break synthesis", hereditary_break),
        ("quasi-atomic witnesses", quasi_witnesses),
        ("N x Z half-factorial cone", hfm_cone),
        ("valuation fuzz", valuation_fuzz),
        ("nested-loop oracle", oracle_equivalence),
        ("implication-chain consistency", gallery_chain),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}
