//! Evaluating laws over every tuple of a finite carrier, or over seeded
//! random tuples drawn from a fixed pool.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::laws::{Atom, Law, Suite};
use crate::error::{Error, Result};
use crate::meadow::{Meadow, MeadowElement};
use crate::signature::{FiniteAlgebra, MeadowSignature};
use crate::term::eval_in;

/// Tuple count up to which [`CheckMode::Auto`] enumerates exhaustively.
pub const EXHAUSTIVE_LIMIT: u64 = 10_000;

/// Samples per law when sampling is chosen automatically.
pub const DEFAULT_SAMPLES: usize = 2_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckMode {
    /// Exhaustive for laws with at most [`EXHAUSTIVE_LIMIT`] tuples,
    /// [`DEFAULT_SAMPLES`] seeded samples (seed 0) otherwise.
    Auto,
    Exhaustive,
    Sampled {
        samples: usize,
        seed: u64,
    },
}

/// How a report was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportMode {
    Exhaustive,
    Sampled { samples: usize, seed: u64 },
}

impl fmt::Display for ReportMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReportMode::Exhaustive => f.write_str("exhaustive"),
            ReportMode::Sampled { samples, .. } => write!(f, "sampled({samples})"),
        }
    }
}

/// Variable assignment that refutes a law, rendered with `format_element`.
pub type Witness = Vec<(String, String)>;

#[derive(Debug, Clone, PartialEq)]
pub struct LawResult {
    pub name: String,
    pub law: String,
    pub passed: bool,
    pub tuples: u64,
    pub witness: Witness,
    /// Set when the witness made evaluation raise instead of giving a value.
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AxiomReport {
    pub suite: String,
    pub mode: ReportMode,
    pub laws: Vec<LawResult>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.laws.iter().all(|l| l.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawResult> {
        self.laws.iter().filter(|l| !l.passed)
    }

    pub fn law(&self, name: &str) -> Option<&LawResult> {
        self.laws.iter().find(|l| l.name == name)
    }

    pub fn to_json(&self) -> Value {
        let laws: Vec<Value> = self
            .laws
            .iter()
            .map(|l| {
                let mut v = json!({
                    "name": l.name,
                    "status": if l.passed { "pass" } else { "fail" },
                    "witness": l.witness.iter().map(|(k, x)| format!("{k} = {x}")).collect::<Vec<_>>(),
                });
                if let Some(e) = &l.error {
                    v["error"] = json!(e);
                }
                v
            })
            .collect();
        let mut out = json!({ "suite": self.suite, "mode": self.mode.to_string(), "laws": laws });
        if let ReportMode::Sampled { seed, .. } = self.mode {
            out["seed"] = json!(seed);
        }
        out
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "pass" } else { "fail" };
        writeln!(f, "suite {} ({}): {verdict}", self.suite, self.mode)?;
        for l in &self.laws {
            let status = if l.passed { "pass" } else { "FAIL" };
            write!(f, "  {status} {}: {}", l.name, l.law)?;
            if !l.passed {
                let w: Vec<String> = l
                    .witness
                    .iter()
                    .map(|(k, x)| format!("{k} = {x}"))
                    .collect();
                write!(f, "  [{}]", w.join(", "))?;
                if let Some(e) = &l.error {
                    write!(f, " raised {e}")?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Outcome of evaluating one law on one tuple.
enum Verdict {
    Holds,
    Fails,
    Raised(Error),
}

fn atom_holds<S: MeadowSignature>(
    alg: &S,
    atom: &Atom,
    lookup: &dyn Fn(&str) -> Option<S::Elem>,
) -> Result<bool> {
    let l = eval_in(alg, &atom.lhs, lookup)?;
    let r = eval_in(alg, &atom.rhs, lookup)?;
    Ok((l == r) == atom.equal)
}

fn judge<S: MeadowSignature>(alg: &S, law: &Law, tuple: &[S::Elem]) -> Verdict {
    let lookup = |name: &str| {
        law.vars
            .iter()
            .position(|v| v == name)
            .map(|k| tuple[k].clone())
    };
    let run = || -> Result<bool> {
        for p in &law.premises {
            if !atom_holds(alg, p, &lookup)? {
                return Ok(true);
            }
        }
        for c in &law.conclusions {
            if atom_holds(alg, c, &lookup)? {
                return Ok(true);
            }
        }
        Ok(false)
    };
    match run() {
        Ok(true) => Verdict::Holds,
        Ok(false) => Verdict::Fails,
        Err(e) => Verdict::Raised(e),
    }
}

fn result_for<S: MeadowSignature>(
    alg: &S,
    law: &Law,
    tuples: u64,
    failure: Option<(Vec<S::Elem>, Option<Error>)>,
) -> LawResult {
    let (passed, witness, error) = match failure {
        None => (true, Vec::new(), None),
        Some((t, e)) => (
            false,
            law.vars
                .iter()
                .cloned()
                .zip(t.iter().map(|x| alg.show(x)))
                .collect(),
            e.map(|e| e.to_string()),
        ),
    };
    LawResult {
        name: law.name.clone(),
        law: law.source.clone(),
        passed,
        tuples,
        witness,
        error,
    }
}

/// Checks a law on every tuple over `0..n` in lexicographic order, stopping
/// at the first failure.
fn exhaustive_law(alg: &FiniteAlgebra, law: &Law) -> LawResult {
    let n = alg.len();
    let k = law.arity();
    let mut tuple = vec![0usize; k];
    let mut count = 0u64;
    loop {
        count += 1;
        match judge(alg, law, &tuple) {
            Verdict::Holds => {}
            Verdict::Fails => return result_for(alg, law, count, Some((tuple, None))),
            Verdict::Raised(e) => return result_for(alg, law, count, Some((tuple, Some(e)))),
        }
        // odometer, last variable fastest
        let mut pos = k;
        loop {
            if pos == 0 {
                return result_for::<FiniteAlgebra>(alg, law, count, None);
            }
            pos -= 1;
            tuple[pos] += 1;
            if tuple[pos] < n {
                break;
            }
            tuple[pos] = 0;
        }
    }
}

fn sampled_law<S: MeadowSignature>(
    alg: &S,
    pool: &[S::Elem],
    law: &Law,
    samples: usize,
    seed: u64,
    salt: u64,
) -> LawResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    for i in 0..samples {
        let tuple: Vec<S::Elem> = (0..law.arity())
            .map(|_| pool[rng.gen_range(0..pool.len())].clone())
            .collect();
        match judge(alg, law, &tuple) {
            Verdict::Holds => {}
            Verdict::Fails => return result_for(alg, law, i as u64 + 1, Some((tuple, None))),
            Verdict::Raised(e) => {
                return result_for(alg, law, i as u64 + 1, Some((tuple, Some(e))))
            }
        }
    }
    result_for::<S>(alg, law, samples as u64, None)
}

fn tuple_count(n: usize, k: usize) -> u64 {
    (n as u64).saturating_pow(k as u32)
}

/// Checks a named suite on `m`.
pub fn check_axioms(m: &Meadow, suite: Suite, mode: CheckMode) -> Result<AxiomReport> {
    check_laws(m, suite.name(), &suite.laws(), mode)
}

/// Checks an arbitrary list of laws on `m`. Laws whose evaluation raises
/// (for instance an ambiguous inverse) fail with that tuple as witness.
pub fn check_laws(m: &Meadow, name: &str, laws: &[Law], mode: CheckMode) -> Result<AxiomReport> {
    let table = if m.is_finite() {
        Some(FiniteAlgebra::from_meadow(m)?)
    } else {
        None
    };
    let (samples, seed) = match mode {
        CheckMode::Sampled { samples, seed } => (samples, seed),
        _ => (DEFAULT_SAMPLES, 0),
    };
    let mut sampled = false;
    let mut results = Vec::with_capacity(laws.len());
    for (i, law) in laws.iter().enumerate() {
        let r = match (&table, mode) {
            (None, CheckMode::Exhaustive) => {
                return Err(Error::InfiniteCarrier(
                    "exhaustive checking needs a finite carrier".into(),
                ))
            }
            (Some(t), CheckMode::Exhaustive) => exhaustive_law(t, law),
            (Some(t), CheckMode::Auto) if tuple_count(t.len(), law.arity()) <= EXHAUSTIVE_LIMIT => {
                exhaustive_law(t, law)
            }
            (Some(t), _) => {
                sampled = true;
                let pool: Vec<usize> = (0..t.len()).collect();
                sampled_law(t, &pool, law, samples, seed, i as u64)
            }
            (None, _) => {
                sampled = true;
                let mut pool = m.probe_elements();
                pool.retain(|x| !x.is_error());
                pool.push(m.error_elem());
                sampled_law(m, &pool, law, samples, seed, i as u64)
            }
        };
        results.push(r);
    }
    Ok(AxiomReport {
        suite: name.to_string(),
        mode: if sampled {
            ReportMode::Sampled { samples, seed }
        } else {
            ReportMode::Exhaustive
        },
        laws: results,
    })
}

/// Looks a law up by name across all suites, first match wins.
pub fn law_by_name(name: &str) -> Option<Law> {
    Suite::ALL
        .into_iter()
        .flat_map(|s| s.laws())
        .find(|l| l.name.eq_ignore_ascii_case(name))
}

/// Whether `law` holds on every tuple of the finite meadow `m`.
pub fn holds_everywhere(m: &Meadow, law: &Law) -> Result<bool> {
    Ok(check_laws(
        m,
        &law.name,
        std::slice::from_ref(law),
        CheckMode::Exhaustive,
    )?
    .passed())
}

/// Renders a witness tuple of meadow elements.
pub fn witness_of(vars: &[String], xs: &[MeadowElement]) -> Witness {
    vars.iter()
        .cloned()
        .zip(xs.iter().map(|x| x.to_string()))
        .collect()
}
