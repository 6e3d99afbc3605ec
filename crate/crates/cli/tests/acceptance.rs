//! Acceptance suite: one PASS/FAIL line per criterion, each under a
//! pinned wall-clock limit. Exits non-zero if any criterion fails.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use romik_core::congruence::{
    d_period_claim, minimal_period, prime_power, residues_u64, shift_multiplier, vanishing_claim, verify_d_periodicity,
    verify_prop2a, verify_rinv_row_periodicity, verify_shift_congruence, verify_twisted_rinv, verify_vanishing,
    verify_vx_periodicity, CheckReport, Guards, SeqId, Status,
};
use romik_core::dseq::{d_recursive_upto, d_via_inverse_upto, d_via_poly_upto};
use romik_core::padic::{carries_add, vp_binomial, vp_factorial, vp_or_inf};
use romik_core::rmatrix::{
    enumerate_odd_tuples, r_block, rinv_block, rinv_lagrange, rinv_partition_sum, rinv_y, set_partition_fraction,
};
use romik_core::seqcore::{pi1, pi3, u_upto, v_upto, v_x_upto};

type Outcome = Result<String, String>;

/// Number, name, time limit in seconds, check.
type Criterion = (u32, &'static str, u64, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn big(xs: &[&str]) -> Vec<BigInt> {
    xs.iter().map(|s| s.parse().unwrap()).collect()
}

const D_LIST: [&str; 13] = [
    "1",
    "1",
    "-1",
    "51",
    "849",
    "-26199",
    "1341999",
    "82018251",
    "18703396449",
    "-993278479599",
    "-78795859032801",
    "38711746282537251",
    "-923351332174412751",
];

const U_LIST: [&str; 11] = [
    "1",
    "6",
    "256",
    "28560",
    "6071040",
    "2098483200",
    "1071889920000",
    "758870167910400",
    "711206089850880000",
    "852336059876720640000",
    "1271438437097485762560000",
];

const V_LIST: [&str; 11] = [
    "1",
    "1",
    "47",
    "7395",
    "2453425",
    "1399055625",
    "1221037941375",
    "1513229875486875",
    "2526879997358510625",
    "5469272714829657020625",
    "14892997153152592003359375",
];

const R_ROWS: [&[i64]; 7] = [
    &[1],
    &[0, 1],
    &[0, 48, 1],
    &[0, 7584, 240, 1],
    &[0, 2515968, 97664, 672, 1],
    &[0, 1432498176, 63221760, 560448, 1440, 1],
    &[0, 1247557386240, 60299053056, 628024320, 2141568, 2640, 1],
];

/// `d(n) mod 13` for `0 <= n <= 40`.
const D_MOD_13: [u64; 41] = [
    1, 1, 12, 12, 4, 9, 9, 3, 10, 10, 12, 1, 1, 9, 4, 4, 10, 3, 3, 1, 12, 12, 4, 9, 9, 3, 10, 10, 12, 1, 1, 9, 4, 4,
    10, 3, 3, 1, 12, 12, 4,
];

fn exact_values() -> Outcome {
    ensure(d_recursive_upto(12).map_err(|e| e.to_string())? == big(&D_LIST), || "d(0..12) differs".into())?;
    ensure(u_upto(10) == big(&U_LIST), || "u(0..10) differs".into())?;
    ensure(v_upto(10).map_err(|e| e.to_string())? == big(&V_LIST), || "v(0..10) differs".into())?;
    let r = r_block(13);
    for (n, row) in R_ROWS.iter().enumerate() {
        for k in 0..7 {
            let want = BigInt::from(row.get(k).copied().unwrap_or(0));
            ensure(r.get(2 * n, 2 * k) == want, || format!("r({n},{k}) differs"))?;
        }
    }
    Ok("13 d values, 11 u values, 11 v values, 49 r entries".into())
}

fn pipelines_agree() -> Outcome {
    let rec = d_recursive_upto(60).map_err(|e| e.to_string())?;
    let inv = d_via_inverse_upto(60).map_err(|e| e.to_string())?;
    let poly = d_via_poly_upto(60).map_err(|e| e.to_string())?;
    if let Some(n) = (0..=60).find(|&n| rec[n] != inv[n] || rec[n] != poly[n]) {
        return Err(format!("pipelines disagree at n = {n}"));
    }
    Ok("recursive = inverse = poly on 0..=60".into())
}

fn matrix_identity() -> Outcome {
    let r = r_block(40);
    let x = rinv_block(40);
    ensure(r.mul(&x).is_identity() && x.mul(&r).is_identity(), || "R R^-1 != I".into())?;
    for n in 0..30 {
        for k in 0..=n {
            let l = rinv_lagrange(n, k).map_err(|e| e.to_string())?;
            ensure(l == x.get(n, k), || format!("Lagrange entry ({n},{k}) differs"))?;
        }
    }
    for n in 1..=8 {
        for k in 1..=n {
            let s = rinv_partition_sum(n, k).map_err(|e| e.to_string())?;
            ensure(s == x.get(2 * n, 2 * k), || format!("partition sum ({n},{k}) differs"))?;
        }
    }
    Ok("40x40 two-sided inverse, 465 Lagrange entries, 36 partition sums".into())
}

fn pass_report(r: &CheckReport) -> Result<(), String> {
    ensure(r.status == Status::VerifiedToHorizon, || {
        format!("{} {:?}: {} {:?}", r.check_id, r.params, r.status, r.witness)
    })
}

fn main_vanishing() -> Outcome {
    let g = Guards::default();
    let mut starts = Vec::new();
    for (p, e) in [(3u64, 2u32), (3, 3), (7, 2)] {
        let (_, claimed) = vanishing_claim(SeqId::D, p, e).map_err(|e| e.to_string())?;
        ensure(claimed == ((e as usize - 1) * (p * p) as usize).div_ceil(2), || "claimed start".into())?;
        let rep = verify_vanishing(SeqId::D, p, e, 150, &g).map_err(|e| e.to_string())?;
        pass_report(&rep.to_check("thm-main-1"))?;
        starts.push(format!("{p}^{e} from {claimed}"));
    }
    Ok(format!("d = 0 through 150: {}", starts.join(", ")))
}

fn main_periodicity() -> Outcome {
    let g = Guards::default();
    let mut seen = Vec::new();
    for (p, e) in [(5u64, 1u32), (5, 2), (13, 1)] {
        let (start, period) = d_period_claim(p, e).map_err(|e| e.to_string())?;
        ensure(start == e as usize + 1, || "start".into())?;
        let horizon = start + 4 * period;
        let m = prime_power(p, e).map_err(|e| e.to_string())?;
        let rep = verify_d_periodicity(&m, start, period, horizon, &g).map_err(|e| e.to_string())?;
        pass_report(&rep.to_check("thm-main-2"))?;
        seen.push(format!("{p}^{e}: {period}"));
    }
    let r13 = residues_u64(SeqId::D, 13, 120).map_err(|e| e.to_string())?;
    ensure(r13[..=40] == D_MOD_13, || "d mod 13 differs from the printed list".into())?;
    let minimal = minimal_period(&r13, 0);
    ensure(minimal.map(|(_, p)| p) == Some(18), || format!("minimal period mod 13: {minimal:?}"))?;
    Ok(format!("periods {}; minimal period mod 13 is 18", seen.join(", ")))
}

fn two_adic_periodicity() -> Outcome {
    let g = Guards::default();
    let r4 = residues_u64(SeqId::D, 4, 4096).map_err(|e| e.to_string())?;
    let block = [1, 1, 3, 3];
    if let Some(n) = (0..=4096).find(|&n| r4[n] != block[n % 4]) {
        return Err(format!("d({n}) mod 4 = {}", r4[n]));
    }
    for e in 3..=6u32 {
        let period = 1usize << (e - 1);
        let rep = verify_d_periodicity(&BigInt::from(1u64 << e), 0, period, 4 * period + period, &g)
            .map_err(|e| e.to_string())?;
        pass_report(&rep.to_check("thm-main-3"))?;
    }
    Ok("mod 4 block (1,1,3,3) through 4096; periods 4, 8, 16, 32 mod 2^3..2^6".into())
}

fn shift_congruence() -> Outcome {
    let g = Guards::default();
    for (p, e) in [(5u64, 1u32), (13, 1), (5, 2)] {
        pass_report(&verify_shift_congruence(p, e, 150, &g).map_err(|e| e.to_string())?)?;
    }
    let c = shift_multiplier(13, 1).map_err(|e| e.to_string())?;
    ensure(c == BigInt::from(3), || format!("multiplier mod 13 is {c}"))?;
    for n in 2..=34 {
        ensure(D_MOD_13[n + 6] == 3 * D_MOD_13[n] % 13, || format!("printed list breaks the shift at {n}"))?;
    }
    Ok("(5,1), (13,1), (5,2) through 150; multiplier 3 mod 13".into())
}

/// Exponent of `p` in `m` by repeated division.
fn vp_direct(mut m: u64, p: u64) -> u64 {
    let mut v = 0;
    while m.is_multiple_of(p) {
        m /= p;
        v += 1;
    }
    v
}

fn vp_big_direct(x: &BigInt, p: u64) -> u64 {
    let p = BigInt::from(p);
    let mut x = x.clone();
    let mut v = 0;
    while (&x % &p) == BigInt::from(0) {
        x /= &p;
        v += 1;
    }
    v
}

fn valuation_oracles() -> Outcome {
    let primes = [2u64, 3, 5, 7, 13];
    for &p in &primes {
        let mut acc = 0;
        for n in 0..=2000u64 {
            if n > 0 {
                acc += vp_direct(n, p);
            }
            let got = vp_factorial(&BigUint::from(n), p).map_err(|e| e.to_string())?.0;
            ensure(got == acc, || format!("v_{p}({n}!) = {got}, direct {acc}"))?;
        }
    }
    let mut row = vec![BigInt::from(1)];
    for n in 0..=300usize {
        for (k, c) in row.iter().enumerate() {
            for &p in &primes {
                let got = vp_binomial(&BigInt::from(n), &BigInt::from(k), p).map_err(|e| e.to_string())?.0;
                let want = vp_big_direct(c, p);
                ensure(got == want, || format!("v_{p}(C({n},{k})) = {got}, direct {want}"))?;
            }
        }
        let mut next = vec![BigInt::from(1); n + 2];
        for k in 1..=n {
            next[k] = &row[k - 1] + &row[k];
        }
        row = next;
    }
    // Random pairs: carries against factorial valuations summed directly.
    const LIMIT: u64 = 100_000;
    let prefix: BTreeMap<u64, Vec<u64>> = primes
        .iter()
        .map(|&p| {
            let mut acc = vec![0u64; 2 * LIMIT as usize + 1];
            for m in 1..acc.len() {
                acc[m] = acc[m - 1] + vp_direct(m as u64, p);
            }
            (p, acc)
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..10_000 {
        let (a, b) = (rng.gen_range(0..=LIMIT), rng.gen_range(0..=LIMIT));
        let p = primes[rng.gen_range(0..primes.len())];
        let f = &prefix[&p];
        let want = f[(a + b) as usize] - f[a as usize] - f[b as usize];
        let got = carries_add(&BigUint::from(a), &BigUint::from(b), p).map_err(|e| e.to_string())?;
        ensure(got == want, || format!("carries({a},{b}) base {p} = {got}, direct {want}"))?;
    }
    Ok("factorials N <= 2000, binomials N <= 300, 10^4 random carry pairs".into())
}

fn random_seq(rng: &mut ChaCha8Rng, len: usize, odd: &[usize]) -> Vec<BigInt> {
    let mut xs = vec![BigInt::from(1)];
    xs.extend((1..len).map(|j| {
        let r = rng.gen_range(-60i64..=60);
        BigInt::from(if odd.contains(&j) { 2 * (r / 2) + 1 } else { r })
    }));
    xs
}

fn refinement_theorems() -> Outcome {
    let g = Guards::default();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..10 {
        let x = random_seq(&mut rng, 80, &[1, 2]);
        for e in 3..=5u32 {
            let period = 1usize << (e - 1);
            let rep = verify_vx_periodicity(e, &|j| x[j].clone(), 4 * period, &g).map_err(|e| e.to_string())?;
            pass_report(&rep.to_check("prop2"))?;
        }
        // The table 1, x(1), 3, x(1)+2 also needs x(2) odd, as in prop2.
        pass_report(&verify_prop2a(&|j| x[j].clone(), 60, &g).map_err(|e| e.to_string())?)?;
    }
    let u = u_upto(60);
    let mut ys = vec![u.clone()];
    ys.extend((0..20).map(|_| random_seq(&mut rng, 40, &[])));
    for y in &ys {
        for n in 0..=6 {
            for e in 2..=4u32 {
                let rep =
                    verify_rinv_row_periodicity(n, e, &|j| y[j].clone(), 4 << e, &g).map_err(|e| e.to_string())?;
                pass_report(&rep.to_check("thm4"))?;
            }
        }
    }
    for (p, e, k, horizon) in [(5u64, 1u32, 1usize, 40usize), (5, 1, 3, 40), (13, 1, 1, 30)] {
        let rep = verify_twisted_rinv(p, e, k, horizon, &|j| u[j].clone(), &g).map_err(|e| e.to_string())?;
        pass_report(&rep)?;
    }
    Ok("prop2 x 30, prop2a x 10 (x(1), x(2) odd), thm4 x 441, thm12 x 3".into())
}

/// Block-size multiset counts over all set partitions of `[n]`, by
/// restricted growth strings.
fn set_partition_counts(n: usize) -> BTreeMap<Vec<usize>, u64> {
    fn go(pos: usize, n: usize, sizes: &mut Vec<usize>, out: &mut BTreeMap<Vec<usize>, u64>) {
        if pos == n {
            let mut key = sizes.clone();
            key.sort_unstable();
            *out.entry(key).or_default() += 1;
            return;
        }
        for b in 0..=sizes.len() {
            if b == sizes.len() {
                sizes.push(1);
                go(pos + 1, n, sizes, out);
                sizes.pop();
            } else {
                sizes[b] += 1;
                go(pos + 1, n, sizes, out);
                sizes[b] -= 1;
            }
        }
    }
    let mut out = BTreeMap::new();
    go(0, n, &mut Vec::new(), &mut out);
    out
}

fn property_suites() -> Outcome {
    // Integrality of v_x and R^{-1}_y for random integer inputs.
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..10 {
        let x = random_seq(&mut rng, 30, &[]);
        v_x_upto(25, &|j| x[j].clone()).map_err(|e| e.to_string())?;
        for n in 0..=14 {
            for k in 0..=n {
                rinv_y(n, k, &|j| x[j].clone()).map_err(|e| e.to_string())?;
            }
        }
    }
    ensure(r_block(40).is_checkerboard() && rinv_block(40).is_checkerboard(), || "checkerboard".into())?;
    for n in 0..=10 {
        let counts = set_partition_counts(n);
        for (sizes, &count) in &counts {
            let mut parts: BTreeMap<usize, usize> = BTreeMap::new();
            sizes.iter().for_each(|&s| *parts.entry(s).or_default() += 1);
            let parts: Vec<(usize, usize)> = parts.into_iter().collect();
            let got = set_partition_fraction(n, &parts).map_err(|e| e.to_string())?;
            ensure(got == BigInt::from(count), || format!("N={n} sizes {sizes:?}: {got} vs {count}"))?;
        }
        for k in 0..=n {
            let odd = counts.keys().filter(|s| s.len() == k && s.iter().all(|x| x % 2 == 1)).count();
            ensure(enumerate_odd_tuples(n, k, false).len() == odd, || format!("odd tuples N={n} K={k}"))?;
        }
    }
    for p in [3u64, 5, 7, 11, 13] {
        for n in 0..=500usize {
            let floor = 2 * (n as u64 / p);
            let v1 = vp_or_inf(&pi1(n), p).map_err(|e| e.to_string())?.map_or(u64::MAX, |v| v.0);
            let v3 = vp_or_inf(&pi3(n), p).map_err(|e| e.to_string())?.map_or(u64::MAX, |v| v.0);
            ensure(v1 >= floor && v3 >= floor, || format!("Pi bounds p={p} N={n}"))?;
            if p % 4 == 1 {
                let sharper = 2 * ((4 * n as u64 + 3 * (p - 1)) / (4 * p));
                ensure(v3 >= sharper, || format!("sharper Pi3 bound p={p} N={n}"))?;
            }
        }
    }
    Ok("integrality, checkerboards, set partitions N <= 10, Pi bounds N <= 500".into())
}

fn scanner_sanity() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_romik"))
        .args(["scan", "c2", "-p", "7", "-e", "8", "--horizon", "200"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(0), || format!("exit code {:?}", out.status.code()))?;
    let reports: Vec<CheckReport> = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let r = reports.first().ok_or("no report")?;
    ensure(r.observed.start == Some(102), || format!("observed start {:?}", r.observed.start))?;
    Ok(format!("observed start 102 (claimed {:?}), status {}, exit 0", r.claimed.start, r.status))
}

fn main() {
    let criteria: [Criterion; 11] = [
        (1, "exact-value reproduction", 5, exact_values),
        (2, "triple-pipeline agreement", 120, pipelines_agree),
        (3, "matrix identities", 120, matrix_identity),
        (4, "vanishing modulo p^e, p = 3 (mod 4)", 60, main_vanishing),
        (5, "periodicity modulo p^e, p = 1 (mod 4)", 60, main_periodicity),
        (6, "2-adic periodicity", 60, two_adic_periodicity),
        (7, "shift congruence", 30, shift_congruence),
        (8, "valuation oracles", 60, valuation_oracles),
        (9, "refinement theorems", 300, refinement_theorems),
        (10, "property suites", 300, property_suites),
        (11, "conjecture scanner", 60, scanner_sanity),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (id, name, limit, f) in criteria {
        let t = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or(e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        let took = t.elapsed();
        let result = match result {
            Ok(_) if took > Duration::from_secs(limit) => Err(format!("took {took:.1?}, limit {limit}s")),
            r => r,
        };
        match result {
            Ok(detail) => println!("PASS {id:>2} {name} ({took:.2?} / {limit}s): {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {id:>2} {name} ({took:.2?} / {limit}s): {why}");
            }
        }
    }
    println!("{} of 11 criteria passed", 11 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
