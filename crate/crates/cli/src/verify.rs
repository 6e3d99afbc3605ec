use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use romik_core::congruence::{
    d_period_claim, prime_power, scan_conjecture, vanishing_claim, verify_d_periodicity, verify_prop2a,
    verify_rinv_row_periodicity, verify_shift_congruence, verify_thm9, verify_twisted_rinv, verify_u_quadratic_residue,
    verify_vanishing, verify_vx_periodicity, CheckReport, ConjectureId, Guards, ScanParams, SeqId, Status,
};
use romik_core::seqcore::{pi3, u_upto};
use romik_core::Error;

use crate::output::render_reports;
use crate::{exit, CliError, Format, Opts, Outcome};

type Job = Box<dyn Fn() -> romik_core::Result<Vec<CheckReport>> + Send + Sync>;

/// An input sequence for the checks quantified over `x` or `y`.
#[derive(Clone)]
struct Sample {
    label: String,
    values: Arc<Vec<BigInt>>,
}

impl Sample {
    fn at(&self, j: usize) -> BigInt {
        self.values[j].clone()
    }
}

/// `len` values with `x(0) = 1`; `odd` lists indices forced odd.
fn random_samples(opts: &Opts, len: usize, odd: &[usize]) -> Vec<Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    (0..opts.samples)
        .map(|i| {
            let mut xs = vec![BigInt::from(1)];
            xs.extend((1..len).map(|j| {
                let r = rng.gen_range(-60i64..=60);
                BigInt::from(if odd.contains(&j) { 2 * (r / 2) + 1 } else { r })
            }));
            Sample { label: format!("random-{i}"), values: Arc::new(xs) }
        })
        .collect()
}

fn fixed_sample(label: &str, values: Vec<BigInt>) -> Sample {
    Sample { label: label.into(), values: Arc::new(values) }
}

fn need_prime(opts: &Opts) -> Result<u64, CliError> {
    opts.prime.ok_or_else(|| CliError("this check needs --prime".into()))
}

/// Run jobs on the current pool and sort the reports canonically.
fn run_jobs(jobs: Vec<Job>, timing: bool) -> romik_core::Result<Vec<CheckReport>> {
    let batches: Vec<romik_core::Result<Vec<CheckReport>>> = jobs
        .par_iter()
        .map(|job| {
            let t = Instant::now();
            let mut reports = job()?;
            if timing {
                let ms = t.elapsed().as_millis() as u64;
                reports.iter_mut().for_each(|r| r.elapsed_ms = ms);
            }
            Ok(reports)
        })
        .collect();
    let mut out = Vec::new();
    for b in batches {
        out.extend(b?);
    }
    out.sort_by_key(|r| r.sort_key());
    Ok(out)
}

fn vanishing_job(selector: &'static str, seq: SeqId, opts: &Opts, guards: Guards) -> Result<Vec<Job>, CliError> {
    let p = need_prime(opts)?;
    let e = opts.exponent.unwrap_or(1);
    let (id, claimed) = vanishing_claim(seq, p, e)?;
    if id != selector {
        return Err(CliError(format!("{selector} does not cover p = {p}; the matching check is {id}")));
    }
    let horizon = opts.max_n.unwrap_or(150.max(claimed + 50));
    let mut jobs: Vec<Job> =
        vec![Box::new(move || Ok(vec![verify_vanishing(seq, p, e, horizon, &guards)?.to_check(selector)]))];
    if selector == "thm1A" {
        jobs.push(Box::new(move || Ok(vec![verify_u_quadratic_residue(p)?])));
    }
    Ok(jobs)
}

fn periodicity_job(selector: &'static str, p: u64, opts: &Opts, guards: Guards) -> Result<Vec<Job>, CliError> {
    let e = opts.exponent.ok_or_else(|| CliError("this check needs --exponent".into()))?;
    let (start, period) = d_period_claim(p, e)?;
    let modulus = prime_power(p, e)?;
    let horizon = opts.max_n.unwrap_or(100.max(start + 4 * period));
    Ok(vec![Box::new(move || {
        let rep = verify_d_periodicity(&modulus, start, period, horizon, &guards)?;
        Ok(vec![rep.to_check(selector).param("p", p).param("e", e)])
    })])
}

fn shift_job(selector: &'static str, p: u64, e: u32, opts: &Opts, guards: Guards) -> Vec<Job> {
    let shift = (p as usize).saturating_pow(e.saturating_sub(1)) * (p as usize).saturating_sub(1) / 2;
    let horizon = opts.max_n.unwrap_or(150.max(e as usize + 1 + 4 * shift));
    vec![Box::new(move || {
        let mut rep = verify_shift_congruence(p, e, horizon, &guards)?;
        rep.check_id = selector.into();
        Ok(vec![rep])
    })]
}

fn verify_jobs(check: &str, opts: &Opts) -> Result<Vec<Job>, CliError> {
    let guards = opts.guards();
    match check {
        "thm-main-1" => vanishing_job("thm-main-1", SeqId::D, opts, guards),
        "thm1" => vanishing_job("thm1", SeqId::U, opts, guards),
        "thm1A" => vanishing_job("thm1A", SeqId::U, opts, guards),
        "thm2" => vanishing_job("thm2", SeqId::V, opts, guards),
        "thm2A" => vanishing_job("thm2A", SeqId::V, opts, guards),
        "thm-main-2" => {
            let p = need_prime(opts)?;
            if p == 2 {
                return Err(CliError("thm-main-2 concerns odd primes; the 2-adic check is thm-main-3".into()));
            }
            periodicity_job("thm-main-2", p, opts, guards)
        }
        "thm-main-3" => {
            if opts.prime.is_some_and(|p| p != 2) {
                return Err(CliError("thm-main-3 concerns p = 2".into()));
            }
            periodicity_job("thm-main-3", 2, opts, guards)
        }
        "wakhare" => {
            if opts.exponent.is_some_and(|e| e != 1) {
                return Err(CliError("wakhare is the case e = 1; use d-u-p for higher exponents".into()));
            }
            Ok(shift_job("wakhare", need_prime(opts)?, 1, opts, guards))
        }
        "d-u-p" => Ok(shift_job("d-u-p", need_prime(opts)?, opts.exponent.unwrap_or(1), opts, guards)),
        "thm9" => {
            let p = need_prime(opts)?;
            let e = opts.exponent.unwrap_or(1);
            let horizon = opts.max_n.unwrap_or(60);
            let fs: Vec<u32> = opts.f.map_or_else(|| (1..=e).collect(), |f| vec![f]);
            Ok(fs
                .into_iter()
                .map(|f| -> Job { Box::new(move || Ok(vec![verify_thm9(p, e, f, horizon, &guards)?])) })
                .collect())
        }
        "thm12" => {
            let p = need_prime(opts)?;
            let e = opts.exponent.unwrap_or(1);
            let k = opts.k.unwrap_or(1);
            let horizon = opts.max_n.unwrap_or(40);
            let s = (p as usize).saturating_pow(e.saturating_sub(1)) * (p as usize).saturating_sub(1);
            let len = horizon + s / 2 + 2;
            if len > guards.exact {
                return Err(Error::Guard { requested: len, limit: guards.exact }.into());
            }
            let y = fixed_sample("u", u_upto(len));
            Ok(vec![Box::new(move || {
                let rep = verify_twisted_rinv(p, e, k, horizon, &|j| y.at(j), &guards)?;
                Ok(vec![rep.param("y", y.label.as_str())])
            })])
        }
        "thm4" => {
            let es: Vec<u32> = opts.exponent.map_or_else(|| vec![2, 3, 4], |e| vec![e]);
            let e_max = *es.iter().max().expect("nonempty");
            let k_max_for = |e: u32| opts.max_n.unwrap_or(4 << e);
            let len = opts.rows + k_max_for(e_max).max(opts.max_n.unwrap_or(0)) / 2 + 2;
            // `u` itself is computed exactly.
            if len > guards.exact {
                return Err(Error::Guard { requested: len, limit: guards.exact }.into());
            }
            let mut ys = vec![fixed_sample("u", u_upto(len))];
            ys.extend(random_samples(opts, len, &[]));
            let mut jobs: Vec<Job> = Vec::new();
            for y in ys {
                for n in 0..=opts.rows {
                    for &e in &es {
                        let (y, k_max) = (y.clone(), k_max_for(e));
                        jobs.push(Box::new(move || {
                            let rep = verify_rinv_row_periodicity(n, e, &|j| y.at(j), k_max, &guards)?;
                            Ok(vec![rep.to_check("thm4").param("n", n).param("e", e).param("y", y.label.as_str())])
                        }));
                    }
                }
            }
            Ok(jobs)
        }
        "prop2" | "prop2a" => {
            let prop2 = check == "prop2";
            let es: Vec<u32> = match opts.exponent {
                Some(e) => vec![e],
                None if prop2 => vec![3, 4, 5],
                None => vec![2],
            };
            let horizon_for = |e: u32| opts.max_n.unwrap_or(if prop2 { 4usize << e.saturating_sub(1) } else { 60 });
            let len = es.iter().map(|&e| horizon_for(e)).max().expect("nonempty") + 1;
            if len > guards.modular {
                return Err(Error::Guard { requested: len, limit: guards.modular }.into());
            }
            let mut xs = vec![fixed_sample("pi3", (0..len).map(pi3).collect())];
            // The mod-4 table of prop2a presumes x(2) odd, as prop2 does.
            xs.extend(random_samples(opts, len, &[1, 2]));
            let mut jobs: Vec<Job> = Vec::new();
            for x in xs {
                for &e in &es {
                    let (x, horizon) = (x.clone(), horizon_for(e));
                    jobs.push(Box::new(move || {
                        let rep = if prop2 {
                            verify_vx_periodicity(e, &|j| x.at(j), horizon, &guards)?.to_check("prop2").param("e", e)
                        } else {
                            verify_prop2a(&|j| x.at(j), horizon, &guards)?
                        };
                        Ok(vec![rep.param("x", x.label.as_str())])
                    }));
                }
            }
            Ok(jobs)
        }
        other => Err(CliError(format!("unknown check {other:?}"))),
    }
}

/// Worst status over the stream decides the exit code.
pub(crate) fn exit_code(reports: &[CheckReport]) -> i32 {
    match reports.iter().fold(Status::VerifiedToHorizon, |s, r| s.merge(r.status)) {
        Status::VerifiedToHorizon => exit::VERIFIED,
        Status::Counterexample => exit::COUNTEREXAMPLE,
        Status::Inconclusive => exit::INCONCLUSIVE,
    }
}

fn report_format(opts: &Opts) -> Format {
    opts.format.unwrap_or(Format::Json)
}

pub fn run_verify(check: &str, opts: &Opts) -> Result<Outcome, CliError> {
    let jobs = verify_jobs(check, opts)?;
    let reports = run_jobs(jobs, opts.timing)?;
    Ok(Outcome { code: exit_code(&reports), body: render_reports(&reports, report_format(opts))? })
}

pub fn run_scan(conjecture: &str, opts: &Opts) -> Result<Outcome, CliError> {
    let id: ConjectureId = conjecture.parse()?;
    let params = ScanParams {
        p: opts.prime,
        e: opts.exponent,
        k: opts.k,
        horizon: opts.max_n.unwrap_or(200),
        shifts: match &opts.hyp {
            Some(h) => h.as_slice().try_into().map_err(|_| CliError("--hyp takes six values".into()))?,
            None => [0; 6],
        },
    };
    let guards = opts.guards();
    let reports = run_jobs(vec![Box::new(move || scan_conjecture(id, &params, &guards))], opts.timing)?;
    Ok(Outcome { code: exit::VERIFIED, body: render_reports(&reports, report_format(opts))? })
}
