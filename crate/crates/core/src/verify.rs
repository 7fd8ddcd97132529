//! The acceptance battery: twelve exact checks over the library, each run
//! under a time budget and reported as pass, fail or skipped.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::mpsc;
use std::thread;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::SeedableRng;
use serde::Serialize;

use crate::blocks::{are_1_equivalent, full_decompose, is_reduced, BlockClass};
use crate::derive::{derives, sigma2_canonical, DeriveLimits};
use crate::families::{
    a_decomposition_layout, b_zeta_swap, build_a, build_a_prime, build_a_variant, build_b,
    build_b_prime, build_b_variant, eta, sigma1, sigma2, sigma3, unique_bigrams, variety_basis,
    AZetas,
};
use crate::monoid::{
    build_sw, direct_product, is_isoterm_bounded, satisfies_identity, symmetric_group_monoid,
    FiniteMonoid,
};
use crate::random::{random_reduced_identity, random_reduced_word, scatter_second_occurrences, shuffle_two_blocks};
use crate::system::IdentitySystem;
use crate::varieties::{
    holds_in_c, holds_in_d1, holds_in_d2, holds_in_m, holds_in_n, holds_in_sl, is_isoterm, sxtx,
    sxysxty, Method, VarietyId,
};
use crate::word::{ident, w, Identity, Letter, Substitution, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Quick,
    Full,
}

#[derive(Debug, Clone, Copy)]
struct Config {
    n_max: usize,
    random_cases: usize,
    derivation_cases: usize,
    isoterm_len: usize,
}

impl Mode {
    fn config(self) -> Config {
        match self {
            Mode::Quick => Config {
                n_max: 1,
                random_cases: 100,
                derivation_cases: 100,
                isoterm_len: 6,
            },
            Mode::Full => Config {
                n_max: 2,
                random_cases: 1000,
                derivation_cases: 200,
                isoterm_len: 8,
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    #[serde(rename = "skipped(budget)")]
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED(budget)",
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub id: usize,
    pub name: String,
    pub status: Status,
    pub details: String,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub mode: Mode,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:>2} {} ({:.1} ms): {}",
            self.status, self.id, self.name, self.elapsed_ms, self.details
        )
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        let failed = self.checks.iter().filter(|c| c.status == Status::Fail).count();
        write!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

type CheckFn = fn(Config) -> Result<String, String>;

/// Name, budget and body of each check, in report order.
fn checks() -> Vec<(&'static str, Duration, CheckFn)> {
    let s = Duration::from_secs;
    vec![
        ("reference decomposition", s(10), check_reference_decomposition),
        ("Rees quotient sizes", s(1), check_sw_sizes),
        ("generator coherence", s(15), check_generators),
        ("M criterion against S(xysxty)", s(300), check_m_oracle),
        ("a_n against a_n' separation", s(10), check_separation),
        ("a_n decomposition layout", s(10), check_layout),
        ("unique bigrams", s(10), check_bigrams),
        ("eta images", s(10), check_eta),
        ("derivation sanity", s(300), check_derivations),
        ("variety separations and chain", s(300), check_chain),
        ("S(xtx) x S3 checks", s(30), check_product),
        ("isoterm criterion", s(600), check_isoterms),
    ]
}

pub fn check_names() -> Vec<&'static str> {
    checks().into_iter().map(|(n, _, _)| n).collect()
}

/// Runs check `id` (1-based) alone.
pub fn run_check(mode: Mode, id: usize) -> Option<CheckResult> {
    let (name, budget, body) = *checks().get(id.checked_sub(1)?)?;
    Some(run_one(id, name, budget, body, mode.config()))
}

pub fn run_all(mode: Mode) -> VerifyReport {
    let cfg = mode.config();
    let checks = checks()
        .into_iter()
        .enumerate()
        .map(|(i, (name, budget, body))| run_one(i + 1, name, budget, body, cfg))
        .collect();
    VerifyReport { mode, checks }
}

fn run_one(id: usize, name: &str, budget: Duration, body: CheckFn, cfg: Config) -> CheckResult {
    let (tx, rx) = mpsc::channel();
    let start = Instant::now();
    thread::spawn(move || {
        let _ = tx.send(body(cfg));
    });
    let (status, details) = match rx.recv_timeout(budget) {
        Ok(Ok(d)) => (Status::Pass, d),
        Ok(Err(d)) => (Status::Fail, d),
        Err(mpsc::RecvTimeoutError::Timeout) => {
            (Status::Skipped, format!("exceeded {} s budget", budget.as_secs()))
        }
        Err(mpsc::RecvTimeoutError::Disconnected) => (Status::Fail, "check panicked".to_owned()),
    };
    CheckResult {
        id,
        name: name.to_owned(),
        status,
        details,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn check_reference_decomposition(_: Config) -> Result<String, String> {
    let word = w("abcdxcbyezaed");
    let start = Instant::now();
    let f = full_decompose(&word).map_err(|e| e.to_string())?;
    let text = f.to_string();
    let took = start.elapsed();
    let expected = "a|bc|d _x_ cb _y_ e _z_ a|e|d";
    ensure(text == expected, || format!("printed {text:?}"))?;
    let of = |class: BlockClass| -> BTreeSet<String> {
        f.blocks
            .iter()
            .filter(|b| b.class == class)
            .map(|b| b.letters.to_string())
            .collect()
    };
    let ones = of(BlockClass::OneBlock);
    let twos = of(BlockClass::TwoBlock);
    ensure(ones == BTreeSet::from(["abcd".into(), "e".into()]), || format!("1-blocks {ones:?}"))?;
    ensure(twos == BTreeSet::from(["cb".into(), "aed".into()]), || format!("2-blocks {twos:?}"))?;
    ensure(took < Duration::from_millis(1), || format!("took {took:?}, over 1 ms"))?;
    Ok(format!("{text}; 1-blocks abcd, e; 2-blocks cb, aed"))
}

fn associative(m: &FiniteMonoid) -> bool {
    let n = m.size();
    (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| m.mul(m.mul(a, b), c) == m.mul(a, m.mul(b, c)))))
}

fn check_sw_sizes(_: Config) -> Result<String, String> {
    let cases: [(&[&str], usize); 4] = [
        (&["xtx"], 7),
        (&["xysxty"], 21),
        (&["xsytxy"], 21),
        (&["xytxy", "xytyx"], 21),
    ];
    let mut parts = Vec::new();
    for (set, size) in cases {
        let words: Vec<Word> = set.iter().map(|s| w(s)).collect();
        let m = build_sw(&words);
        let label = format!("S({})", set.join(", "));
        ensure(m.size() == size, || format!("|{label}| = {}, expected {size}", m.size()))?;
        ensure(associative(&m), || format!("{label} is not associative"))?;
        parts.push(format!("|{label}| = {size}"));
    }
    Ok(parts.join(", "))
}

fn satisfies_all(m: &FiniteMonoid, label: &str, sys: &IdentitySystem) -> Result<(), String> {
    for id in sys.identities() {
        let s = satisfies_identity(m, id);
        ensure(s.holds, || {
            format!("{label} refutes {id}: {}", s.witness.map(|x| x.to_string()).unwrap_or_default())
        })?;
    }
    Ok(())
}

fn check_generators(_: Config) -> Result<String, String> {
    let m = sxysxty();
    let listed = IdentitySystem::from_identities(
        "listed",
        [
            ident("xxy = yxx"),
            ident("xxyz = xyxzx"),
            sigma3(),
            ident("xyzxy = yxzxy"),
            sigma2(),
        ],
    )
    .expect("distinct names");
    satisfies_all(m, "S(xysxty)", &listed)?;
    let s1 = satisfies_identity(m, &sigma1());
    let witness = match (s1.holds, s1.witness) {
        (false, Some(wit)) => wit,
        _ => return Err("S(xysxty) satisfies sigma1".into()),
    };
    satisfies_all(sxtx(), "S(xtx)", &variety_basis(VarietyId::D2))?;
    let dual = build_sw(&[w("xsytxy")]);
    satisfies_all(&dual, "S(xsytxy)", &variety_basis(VarietyId::DualM))?;
    Ok(format!("sigma1 refuted in S(xysxty) by {witness}"))
}

fn check_m_oracle(cfg: Config) -> Result<String, String> {
    let mut rng = StdRng::seed_from_u64(0x4d4f4e);
    let mut holds = 0;
    for i in 0..cfg.random_cases {
        let id = random_reduced_identity(&mut rng, 5, 10);
        let v = holds_in_m(&id);
        ensure(v.method == Method::Criterion, || format!("case {i}: {id} not decided by the criterion"))?;
        let brute = satisfies_identity(sxysxty(), &id).holds;
        ensure(v.holds == brute, || format!("case {i}: {id}: criterion {} vs S(xysxty) {brute}", v.holds))?;
        holds += usize::from(brute);
    }
    Ok(format!("{} identities agree ({holds} hold)", cfg.random_cases))
}

fn check_separation(cfg: Config) -> Result<String, String> {
    for n in 1..=cfg.n_max {
        let (a, ap) = (build_a(n).map_err(|e| e.to_string())?, build_a_prime(n).map_err(|e| e.to_string())?);
        ensure(are_1_equivalent(&a, &ap) == Ok(true), || format!("a_{n}, a_{n}' not 1-equivalent"))?;
        let id = Identity::new(a, ap);
        let n_verdict = holds_in_n(&id).map_err(|e| e.to_string())?;
        ensure(!n_verdict.holds, || format!("a_{n} = a_{n}' holds in N"))?;
        ensure(holds_in_m(&id).holds, || format!("a_{n} = a_{n}' fails in M"))?;
        let rev = id.reversed();
        ensure(holds_in_m(&rev).holds, || format!("reversed a_{n} = a_{n}' fails in M"))?;
    }
    Ok(format!("n <= {}: holds in M and dual M, fails in N", cfg.n_max))
}

fn check_layout(cfg: Config) -> Result<String, String> {
    for n in 1..=cfg.n_max {
        for primed in [false, true] {
            let word = if primed { build_a_prime(n) } else { build_a(n) }.map_err(|e| e.to_string())?;
            let shape = full_decompose(&word).map_err(|e| e.to_string())?.shape();
            let layout = a_decomposition_layout(n, primed).map_err(|e| e.to_string())?;
            ensure(shape == layout, || format!("n = {n}, primed = {primed}: layouts differ"))?;
        }
    }
    Ok(format!("n <= {} with both lead orders", cfg.n_max))
}

fn check_bigrams(cfg: Config) -> Result<String, String> {
    let mut count = 0;
    for n in 1..=cfg.n_max {
        for mask in 0..(1u32 << n) {
            let zetas: Vec<Substitution> = (0..n)
                .map(|l| if mask >> l & 1 == 1 { b_zeta_swap(l) } else { Substitution::identity() })
                .collect();
            let v = build_b_variant(n, &zetas).map_err(|e| e.to_string())?;
            ensure(unique_bigrams(&v), || format!("b-variant n = {n}, swaps {mask:b}: repeated bigram"))?;
            count += 1;
        }
        let a = build_a_variant(n, &AZetas::new()).map_err(|e| e.to_string())?;
        ensure(unique_bigrams(&a), || format!("a-variant n = {n}: repeated bigram"))?;
        count += 1;
    }
    Ok(format!("{count} words"))
}

fn check_eta(cfg: Config) -> Result<String, String> {
    for n in 1..=cfg.n_max {
        let e = eta(n);
        let err = |x: crate::families::FamilyError| x.to_string();
        ensure(e.apply(&build_a(n).map_err(err)?) == build_b(n).map_err(err)?, || format!("eta(a_{n}) != b_{n}"))?;
        ensure(
            e.apply(&build_a_prime(n).map_err(err)?) == build_b_prime(n).map_err(err)?,
            || format!("eta(a_{n}') != b_{n}'"),
        )?;
    }
    Ok(format!("n <= {}", cfg.n_max))
}

fn one_blocks(word: &Word) -> Vec<Word> {
    full_decompose(word)
        .map(|f| {
            f.blocks
                .into_iter()
                .filter(|b| b.class == BlockClass::OneBlock)
                .map(|b| b.letters)
                .collect()
        })
        .unwrap_or_default()
}

fn check_derivations(cfg: Config) -> Result<String, String> {
    let s1 = IdentitySystem::from_identities("s1", [sigma1()]).expect("one identity");
    let target = ident("xyzxy = yxzxy");
    let limits = DeriveLimits { max_depth: 1, max_len: 6, max_states: 10_000 };
    let out = derives(&s1, &target, limits).map_err(|e| e.to_string())?;
    let t = out.trace().ok_or("sigma1 does not give xyzxy = yxzxy in one step")?;
    ensure(t.len() == 1, || format!("trace has {} steps", t.len()))?;
    ensure(t.steps[0].matched.substitution.image(&Letter::plain('t')).is_empty(), || "t is not erased".into())?;
    t.replay(&s1).map_err(|e| e.to_string())?;

    let s2 = IdentitySystem::from_identities("s2", [sigma2()]).expect("one identity");
    let mut rng = StdRng::seed_from_u64(0x5132);
    let mut longest = 0;
    let mut done = 0;
    while done < cfg.derivation_cases {
        let u = random_reduced_word(&mut rng, 5, 10);
        let v = shuffle_two_blocks(&mut rng, &u);
        let id = Identity::new(u.clone(), v.clone());
        let verdict = holds_in_n(&id).map_err(|e| e.to_string())?;
        ensure(verdict.holds, || format!("{id} is a 2-block shuffle but fails in N"))?;
        let k: usize = full_decompose(&u)
            .map_err(|e| e.to_string())?
            .blocks
            .iter()
            .filter(|b| b.class == BlockClass::TwoBlock)
            .map(|b| b.letters.len())
            .sum();
        let limits = DeriveLimits { max_depth: (k * k).max(1), max_len: u.len(), max_states: 1_000_000 };
        let out = derives(&s2, &id, limits).map_err(|e| e.to_string())?;
        let t = out.trace().ok_or_else(|| format!("no sigma2 derivation for {id}"))?;
        t.replay(&s2).map_err(|e| format!("{id}: {e}"))?;
        for s in &t.steps {
            let sound = holds_in_n(&Identity::new(u.clone(), s.to.clone())).map_err(|e| e.to_string())?;
            ensure(sound.holds, || format!("{id}: step to {} leaves the N-class", s.to))?;
        }
        longest = longest.max(t.len());
        done += 1;
    }

    let mut agree = (0, 0);
    let mut tried = 0;
    while agree.0 + agree.1 < cfg.derivation_cases {
        tried += 1;
        ensure(tried < 100 * cfg.derivation_cases, || "could not draw enough pairs".into())?;
        let u = random_reduced_word(&mut rng, 5, 10);
        let v = scatter_second_occurrences(&mut rng, &u);
        if !is_reduced(&v) || one_blocks(&u) != one_blocks(&v) {
            continue;
        }
        let id = Identity::new(u.clone(), v.clone());
        let n = holds_in_n(&id).map_err(|e| e.to_string())?.holds;
        // keep at least a quarter of the pairs on the failing side
        if n && 4 * agree.0 >= 3 * cfg.derivation_cases {
            continue;
        }
        let canon = sigma2_canonical(&u).map_err(|e| e.to_string())? == sigma2_canonical(&v).map_err(|e| e.to_string())?;
        ensure(n == canon, || format!("{id}: N verdict {n}, canonical forms equal {canon}"))?;
        if n {
            agree.0 += 1;
        } else {
            agree.1 += 1;
        }
    }
    Ok(format!(
        "sigma1 step erases t; {} sigma2 derivations (longest {longest}); canonical forms agree on {} pairs ({} hold, {} fail)",
        cfg.derivation_cases,
        agree.0 + agree.1,
        agree.0,
        agree.1
    ))
}

fn check_chain(cfg: Config) -> Result<String, String> {
    let xy = ident("xy = yx");
    ensure(holds_in_c(&xy) && !holds_in_d1(&xy), || "C/D1 separation by xy = yx".into())?;
    ensure(holds_in_d2(&sigma1()).holds && !holds_in_m(&sigma1()).holds, || "D2/M separation by sigma1".into())?;
    let m1 = ident("xyzxy = yxzxy");
    let n_m1 = holds_in_n(&m1).map_err(|e| e.to_string())?.holds;
    ensure(holds_in_m(&m1).holds && !n_m1, || "M/N separation by xyzxy = yxzxy".into())?;

    let mut rng = StdRng::seed_from_u64(0x4348);
    let mut tally: BTreeMap<&str, usize> = BTreeMap::new();
    for i in 0..cfg.random_cases {
        let id = random_reduced_identity(&mut rng, 5, 10);
        let chain = [
            ("N", holds_in_n(&id).map_err(|e| e.to_string())?.holds),
            ("M", holds_in_m(&id).holds),
            ("D2", holds_in_d2(&id).holds),
            ("D1", holds_in_d1(&id)),
            ("C", holds_in_c(&id)),
            ("SL", holds_in_sl(&id)),
        ];
        for pair in chain.windows(2) {
            ensure(!pair[0].1 || pair[1].1, || {
                format!("case {i}: {id} holds in {} but not in {}", pair[0].0, pair[1].0)
            })?;
        }
        for (name, h) in chain {
            *tally.entry(name).or_default() += usize::from(h);
        }
    }
    let counts: Vec<String> = ["N", "M", "D2", "D1", "C", "SL"]
        .iter()
        .map(|n| format!("{n} {}", tally.get(n).copied().unwrap_or(0)))
        .collect();
    Ok(format!("separations hold; chain monotone on {} identities ({})", cfg.random_cases, counts.join(", ")))
}

fn check_product(_: Config) -> Result<String, String> {
    let s3 = symmetric_group_monoid(3).map_err(|e| e.to_string())?;
    let s = satisfies_identity(&s3, &sigma1());
    let wit = match (s.holds, s.witness) {
        (false, Some(wit)) => wit,
        _ => return Err("S3 satisfies sigma1".into()),
    };
    let prod = direct_product(sxtx(), &s3);
    let iso = is_isoterm_bounded(&prod, &w("xtx"), 5, 3);
    ensure(iso.is_isoterm(), || format!("xtx is not an isoterm for S(xtx) x S3: {iso:?}"))?;
    let comm = satisfies_identity(&prod, &ident("xy = yx"));
    ensure(!comm.holds, || "S(xtx) x S3 is commutative".into())?;
    Ok(format!("S3 refutes sigma1 by {wit}; xtx isoterm within (5, 3); xy = yx refuted"))
}

/// Reduced words over at most `letters` letters and of length at most
/// `max_len`, one per renaming class: letters appear in alphabetical order
/// of first occurrence.
pub fn reduced_words_up_to_renaming(letters: usize, max_len: usize) -> Vec<Word> {
    fn go(cur: &mut Vec<usize>, counts: &mut Vec<usize>, letters: usize, max_len: usize, out: &mut Vec<Word>) {
        let word: Word = cur.iter().map(|&i| Letter::plain((b'a' + i as u8) as char)).collect();
        if is_reduced(&word) {
            out.push(word);
        }
        if cur.len() == max_len {
            return;
        }
        let fresh = counts.len();
        for i in 0..=fresh.min(letters - 1) {
            if i < fresh && counts[i] >= 2 {
                continue;
            }
            if i == fresh {
                counts.push(0);
            }
            counts[i] += 1;
            cur.push(i);
            go(cur, counts, letters, max_len, out);
            cur.pop();
            counts[i] -= 1;
            if i == fresh {
                counts.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut Vec::new(), letters, max_len, &mut out);
    out
}

fn check_isoterms(cfg: Config) -> Result<String, String> {
    let words = reduced_words_up_to_renaming(4, cfg.isoterm_len);
    let mut isoterms = 0;
    for u in &words {
        let crit = is_isoterm(VarietyId::M, u).map_err(|e| e.to_string())?;
        let brute = is_isoterm_bounded(sxysxty(), u, u.len() + 2, 3);
        ensure(crit == brute.is_isoterm(), || format!("{u}: criterion {crit}, bounded search {brute:?}"))?;
        isoterms += usize::from(crit);
    }
    Ok(format!(
        "{} reduced words up to renaming (length <= {}), {isoterms} isoterms",
        words.len(),
        cfg.isoterm_len
    ))
}
