//! Job specifications and the dispatcher that runs them.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};
use unitroots_core::cartier::SpaceKind;
use unitroots_core::report::{Hypothesis, Verdict, VerificationReport};
use unitroots_core::theorems::{self, Options};
use unitroots_core::{Error, Result, VERSION};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CommandKind {
    Legendre,
    Onevar,
    Toric,
    Affine,
    Cartier,
    Decomp,
}

impl fmt::Display for CommandKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CommandKind::Legendre => "legendre",
            CommandKind::Onevar => "onevar",
            CommandKind::Toric => "toric",
            CommandKind::Affine => "affine",
            CommandKind::Cartier => "cartier",
            CommandKind::Decomp => "decomp",
        };
        f.write_str(s)
    }
}

fn one() -> usize {
    1
}

/// One unit of work, from the command line or a sweep file.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub command: CommandKind,
    pub p: u32,
    #[serde(default = "one")]
    pub k: usize,
    #[serde(default = "one")]
    pub n: usize,
    #[serde(default)]
    pub f: Option<String>,
    #[serde(default)]
    pub g: Option<String>,
    #[serde(default)]
    pub d: Option<u32>,
    #[serde(default)]
    pub m_max: Option<u32>,
    #[serde(default)]
    pub trunc: Option<usize>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub force: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimHypothesis {
    pub claim_id: String,
    #[serde(flatten)]
    pub hypothesis: Hypothesis,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Tally {
    pub verified: usize,
    pub falsified: usize,
    pub skipped: usize,
    pub exploratory: usize,
}

impl Tally {
    pub fn of<'a>(reports: impl IntoIterator<Item = &'a VerificationReport>) -> Self {
        let mut t = Tally::default();
        for r in reports {
            match r.verdict {
                Verdict::Verified => t.verified += 1,
                Verdict::Falsified => t.falsified += 1,
                Verdict::Skipped { .. } => t.skipped += 1,
                Verdict::Exploratory { .. } => t.exploratory += 1,
            }
        }
        t
    }

    /// 1 on any falsification, 0 when something verified, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.falsified > 0 {
            1
        } else if self.verified > 0 {
            0
        } else {
            2
        }
    }

    pub fn status(&self) -> &'static str {
        match self.exit_code() {
            1 => "Falsified",
            0 => "Verified",
            _ => "NotVerified",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct JobVerdict {
    pub status: String,
    pub exit_code: i32,
    pub tally: Tally,
}

#[derive(Clone, Debug, Serialize)]
pub struct Meta {
    pub seed: u64,
    pub truncation: Option<usize>,
    pub version: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct JobReport {
    pub command: String,
    pub params: Map<String, Value>,
    pub hypotheses: Vec<ClaimHypothesis>,
    pub results: Vec<VerificationReport>,
    pub verdict: JobVerdict,
    pub meta: Meta,
}

impl JobSpec {
    fn params(&self, seed: u64, force: bool) -> Map<String, Value> {
        let mut m = Map::new();
        m.insert("p".into(), json!(self.p));
        m.insert("k".into(), json!(self.k));
        m.insert("n".into(), json!(self.n));
        for (key, v) in [("f", &self.f), ("g", &self.g)] {
            if let Some(s) = v {
                m.insert(key.into(), json!(s));
            }
        }
        if let Some(d) = self.d {
            m.insert("d".into(), json!(d));
        }
        if let Some(v) = self.m_max {
            m.insert("m_max".into(), json!(v));
        }
        if let Some(v) = self.trunc {
            m.insert("trunc".into(), json!(v));
        }
        m.insert("seed".into(), json!(seed));
        m.insert("force".into(), json!(force));
        m
    }

    fn poly(&self, which: &str, text: &Option<String>) -> Result<String> {
        text.clone()
            .ok_or_else(|| Error::InvalidInput(format!("`{}` needs --{which}", self.command)))
    }
}

/// Runs one job. `seed` and `force` apply when the job leaves them unset.
pub fn run_job(spec: &JobSpec, seed: u64, force: bool) -> Result<JobReport> {
    let seed = spec.seed.unwrap_or(seed);
    let force = spec.force.unwrap_or(force);
    let opts = Options {
        force,
        seed,
        ..Options::default()
    };
    let results = match spec.command {
        CommandKind::Legendre => theorems::verify_legendre(spec.p)?,
        CommandKind::Onevar => {
            if spec.n != 1 {
                return Err(Error::InvalidInput("onevar needs n = 1".into()));
            }
            let (_, f, g) = theorems::parse_pair(
                spec.p,
                spec.k,
                1,
                &spec.poly("f", &spec.f)?,
                &spec.poly("g", &spec.g)?,
            )?;
            vec![
                theorems::verify_thm_rational(&f, &g, &opts)?,
                theorems::verify_thm_irred(&f, &g, &opts)?,
            ]
        }
        CommandKind::Toric | CommandKind::Affine | CommandKind::Decomp => {
            let (_, f, g) = theorems::parse_pair(
                spec.p,
                spec.k,
                spec.n,
                &spec.poly("f", &spec.f)?,
                &spec.poly("g", &spec.g)?,
            )?;
            match spec.command {
                CommandKind::Toric => vec![theorems::verify_main_toric(&f, &g, spec.d, spec.trunc, &opts)?],
                CommandKind::Affine => {
                    let mut out = vec![theorems::verify_main_affine(&f, &g, spec.d, spec.trunc, &opts)?];
                    let deg = g.total_degree().unwrap_or(0) as usize;
                    if spec.n > deg {
                        out.push(theorems::verify_cw(&f, &g, &opts)?);
                    }
                    out
                }
                _ => vec![theorems::verify_toric_decomposition(
                    &f,
                    &g,
                    spec.m_max.unwrap_or(2),
                    &opts,
                )?],
            }
        }
        CommandKind::Cartier => {
            let (_, _, g) = theorems::parse_pair(spec.p, spec.k, spec.n, "0", &spec.poly("g", &spec.g)?)?;
            vec![
                theorems::verify_wan(&g, spec.d, SpaceKind::Rd, spec.trunc, &opts)?,
                theorems::verify_wan(&g, spec.d, SpaceKind::Wd, spec.trunc, &opts)?,
            ]
        }
    };
    Ok(assemble(spec, seed, force, results))
}

fn assemble(spec: &JobSpec, seed: u64, force: bool, results: Vec<VerificationReport>) -> JobReport {
    let hypotheses = results
        .iter()
        .flat_map(|r| {
            r.hypotheses.iter().map(|h| ClaimHypothesis {
                claim_id: r.claim_id.to_string(),
                hypothesis: h.clone(),
            })
        })
        .collect();
    let tally = Tally::of(&results);
    let truncation = results.iter().filter_map(|r| r.truncation).max();
    JobReport {
        command: spec.command.to_string(),
        params: spec.params(seed, force),
        hypotheses,
        verdict: JobVerdict {
            status: tally.status().into(),
            exit_code: tally.exit_code(),
            tally,
        },
        results,
        meta: Meta {
            seed,
            truncation,
            version: VERSION.into(),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(json: &str) -> JobSpec {
        serde_json::from_str(json).unwrap()
    }

    #[test]
    fn defaults_fill_in() {
        let s = spec(r#"{"command": "legendre", "p": 7}"#);
        assert_eq!((s.k, s.n, s.seed), (1, 1, None));
    }

    #[test]
    fn unknown_fields_are_rejected() {
        assert!(serde_json::from_str::<JobSpec>(r#"{"command": "legendre", "p": 7, "q": 1}"#).is_err());
        assert!(serde_json::from_str::<JobSpec>(r#"{"command": "sweep", "p": 7}"#).is_err());
    }

    #[test]
    fn missing_polynomial_is_an_input_error() {
        let s = spec(r#"{"command": "onevar", "p": 5, "f": "x"}"#);
        assert!(matches!(run_job(&s, 0, false), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn exit_codes() {
        let s = spec(r#"{"command": "legendre", "p": 7}"#);
        let r = run_job(&s, 0, false).unwrap();
        // λ = 2, 4, 6 are supersingular for p = 7.
        assert_eq!((r.verdict.tally.verified, r.verdict.tally.skipped), (2, 3));
        assert_eq!(r.verdict.exit_code, 0);
        assert_eq!(
            Tally {
                skipped: 2,
                ..Tally::default()
            }
            .exit_code(),
            2
        );
        assert_eq!(
            Tally {
                verified: 3,
                falsified: 1,
                ..Tally::default()
            }
            .exit_code(),
            1
        );
        assert_eq!(
            Tally {
                exploratory: 1,
                ..Tally::default()
            }
            .exit_code(),
            2
        );
    }
}
