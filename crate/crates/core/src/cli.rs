//! Command-line front end and the JSON code file format.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error,
//! 3 internal invariant violation.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::code::{CodeType, Parameter, Parity, SubspaceCode};
use crate::construct_even::{assemble_code_even, build_scaffold_even};
use crate::construct_odd::{assemble_code_odd, build_scaffold_odd};
use crate::error::Error;
use crate::galois::{prime_power, Field};
use crate::projgeo::{rank, Row, Subspace, DIM};
use crate::verify::audit::{audit_lemmas, AUDIT_MAX_Q};
use crate::verify::{classify, scan, VerificationReport};

pub const FORMAT_VERSION: u32 = 1;
/// Largest `q` accepted by `generate` and `audit`.
pub const GENERATE_MAX_Q: u64 = AUDIT_MAX_Q as u64;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum FileError {
    #[error("cannot access {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed code file: {0}")]
    Malformed(String),
    #[error("malformed code file: {0}")]
    Field(#[from] Error),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodewordEntry {
    pub k: usize,
    pub basis: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CodeFile {
    pub format_version: u32,
    pub q: u64,
    pub p: u32,
    pub h: u32,
    /// Modulus coefficients, high-degree first.
    pub modulus: Vec<u32>,
    pub omega: u32,
    pub parity: Parity,
    pub code_type: Option<CodeType>,
    pub parameters: BTreeMap<String, serde_json::Value>,
    pub codewords: Vec<CodewordEntry>,
}

fn rows_json(s: &Subspace) -> Vec<Vec<u32>> {
    s.basis().iter().map(|r| r.iter().map(|&x| x as u32).collect()).collect()
}

impl CodeFile {
    pub fn from_code(code: &SubspaceCode) -> Self {
        let f = &code.field;
        let parameters = code
            .parameters
            .iter()
            .map(|(name, p)| {
                let v = match p {
                    Parameter::Elements(xs) => serde_json::json!(xs),
                    Parameter::Subspace(s) => serde_json::json!(rows_json(s)),
                };
                (name.clone(), v)
            })
            .collect();
        CodeFile {
            format_version: FORMAT_VERSION,
            q: f.order() as u64,
            p: f.characteristic(),
            h: f.degree(),
            modulus: f.modulus().iter().map(|&c| c as u32).collect(),
            omega: f.omega() as u32,
            parity: code.parity,
            code_type: code.code_type,
            parameters,
            codewords: code
                .codewords()
                .iter()
                .map(|s| CodewordEntry {
                    k: s.dim(),
                    basis: rows_json(s),
                })
                .collect(),
        }
    }

    /// Rebuilds the field and re-canonicalizes every codeword. Repeated
    /// codewords are kept so the verifier can report them.
    pub fn to_code(&self) -> Result<SubspaceCode, FileError> {
        let bad = |m: String| FileError::Malformed(m);
        if self.format_version != FORMAT_VERSION {
            return Err(bad(format!("unsupported format_version {}", self.format_version)));
        }
        if prime_power(self.q) != Some((self.p, self.h)) {
            return Err(bad(format!("q={} does not equal p^h = {}^{}", self.q, self.p, self.h)));
        }
        let f = Field::from_modulus(self.p, &self.modulus)?;
        if f.order() as u64 != self.q || f.omega() as u32 != self.omega {
            return Err(bad("field data is inconsistent".into()));
        }
        if Parity::of(&f) != self.parity {
            return Err(bad(format!("parity {} does not match q={}", self.parity, self.q)));
        }
        let mut words = Vec::with_capacity(self.codewords.len());
        for (i, entry) in self.codewords.iter().enumerate() {
            if entry.basis.len() != entry.k || !(1..=4).contains(&entry.k) {
                return Err(bad(format!("codeword {i}: k={} with {} rows", entry.k, entry.basis.len())));
            }
            let mut rows: Vec<Row<DIM>> = Vec::with_capacity(entry.k);
            for row in &entry.basis {
                if row.len() != DIM {
                    return Err(bad(format!("codeword {i}: row of length {}", row.len())));
                }
                let mut r = [0; DIM];
                for (x, &v) in r.iter_mut().zip(row) {
                    *x = f.element(v)?;
                }
                rows.push(r);
            }
            if rank(&f, &rows) != entry.k {
                return Err(bad(format!("codeword {i}: basis rows are dependent")));
            }
            words.push(Subspace::span(&f, &rows)?);
        }
        Ok(SubspaceCode::from_list(f, self.code_type, words))
    }
}

pub fn save(code: &SubspaceCode, path: &Path) -> Result<(), FileError> {
    let mut text = serde_json::to_string_pretty(&CodeFile::from_code(code))?;
    text.push('\n');
    fs::write(path, text).map_err(|source| FileError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load(path: &Path) -> Result<SubspaceCode, FileError> {
    let text = fs::read_to_string(path).map_err(|source| FileError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str::<CodeFile>(&text)?.to_code()
}

/// Field for a user-supplied `q`, or a usage error.
pub fn field_for(q: u64) -> Result<Field, Error> {
    let (p, h) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    if q > GENERATE_MAX_Q {
        return Err(Error::OutOfRange { q, range: "2..=9" });
    }
    Field::new(p, h)
}

/// Builds the code of the given type, dispatching on the parity of `q`.
pub fn generate_code(f: &Field, code_type: CodeType) -> Result<SubspaceCode, Error> {
    let parity = Parity::of(f);
    if !CodeType::available(parity).contains(&code_type) {
        return Err(Error::TypeNotAvailable {
            code_type: code_type.to_string(),
            parity: parity.to_string(),
        });
    }
    match parity {
        Parity::Odd => assemble_code_odd(&build_scaffold_odd(f)?, code_type),
        Parity::Even => assemble_code_even(&build_scaffold_even(f)?, code_type),
    }
}

#[derive(Debug, Parser)]
#[command(name = "pg4code", version, about = "Optimal (5, 2(q^3+1), 3)_q subspace codes in PG(4,q)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a code and write it as JSON.
    Generate {
        #[arg(long)]
        q: u64,
        /// I, II, III, IV, or for even q also IV' and IV'' (alias IVp, IVpp).
        #[arg(long = "type", default_value = "IV")]
        code_type: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a code file: size, composition and minimum distance.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 3)]
        expect_d: usize,
    },
    /// Recompute the orbit and incidence structure behind the constructions.
    Audit {
        #[arg(long)]
        q: u64,
    },
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    passed: bool,
    expect_d: usize,
    declared_type: Option<CodeType>,
    #[serde(flatten)]
    report: &'a VerificationReport,
}

/// Verdict used by `verify`: distance at least `expect_d`, optimal size, a
/// standard composition, and agreement with the declared type.
pub fn verdict(code: &SubspaceCode, report: &VerificationReport, expect_d: usize) -> bool {
    let q = code.q();
    let size_ok = report.size as u64 == 2 * (q * q * q + 1);
    let composition = report.composition();
    let type_ok = match code.code_type {
        Some(t) => composition == Some(t.composition()),
        None => composition.is_some(),
    };
    report.min_distance.is_some_and(|d| d >= expect_d) && size_ok && type_ok
}

fn cmd_generate(q: u64, code_type: &str, out: Option<&Path>) -> i32 {
    let code_type: CodeType = match code_type.parse() {
        Ok(t) => t,
        Err(e) => return usage(e),
    };
    let f = match field_for(q) {
        Ok(f) => f,
        Err(e) => return usage(e),
    };
    let code = match generate_code(&f, code_type) {
        Ok(c) => c,
        Err(e @ Error::TypeNotAvailable { .. }) => return usage(e),
        Err(e) => {
            eprintln!("error: construction failed: {e}");
            return EXIT_INTERNAL;
        }
    };
    let h = code.histogram();
    println!("q={q} type={code_type} size={}", code.len());
    println!("points={} lines={} planes={} solids={}", h[0], h[1], h[2], h[3]);
    match scan(&code) {
        Ok(s) if s.min == 3 => println!("d={}", s.min),
        Ok(s) => {
            eprintln!("error: constructed code has d={}", s.min);
            return EXIT_INTERNAL;
        }
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INTERNAL;
        }
    }
    if let Some(path) = out {
        if let Err(e) = save(&code, path) {
            return usage(e);
        }
        println!("wrote {}", path.display());
    }
    EXIT_OK
}

fn cmd_verify(input: &Path, expect_d: usize) -> i32 {
    let code = match load(input) {
        Ok(c) => c,
        Err(e) => return usage(e),
    };
    let report = classify(&code);
    let passed = verdict(&code, &report, expect_d);
    let out = VerifyOutput {
        passed,
        expect_d,
        declared_type: code.code_type,
        report: &report,
    };
    match serde_json::to_string_pretty(&out) {
        Ok(s) => println!("{s}"),
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INTERNAL;
        }
    }
    if passed {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    }
}

fn cmd_audit(q: u64) -> i32 {
    let f = match field_for(q) {
        Ok(f) => f,
        Err(e) => return usage(e),
    };
    let checks = match audit_lemmas(&f) {
        Ok(c) => c,
        Err(e @ Error::OutOfRange { .. }) => return usage(e),
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INTERNAL;
        }
    };
    for c in &checks {
        println!("{c}");
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    println!("{} checks, {failed} failed", checks.len());
    if failed == 0 {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    }
}

fn usage(e: impl std::fmt::Display) -> i32 {
    eprintln!("error: {e}");
    EXIT_USAGE
}

/// Parses arguments and runs one subcommand, returning the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match cli.command {
        Command::Generate { q, code_type, out } => cmd_generate(q, &code_type, out.as_deref()),
        Command::Verify { input, expect_d } => cmd_verify(&input, expect_d),
        Command::Audit { q } => cmd_audit(q),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_round_trip_reproduces_codewords() {
        let f = Field::new(2, 1).unwrap();
        let code = generate_code(&f, CodeType::IVPrime).unwrap();
        let file = CodeFile::from_code(&code);
        let text = serde_json::to_string(&file).unwrap();
        let back: CodeFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back, file);
        let again = back.to_code().unwrap();
        assert_eq!(again.codewords(), code.codewords());
        assert_eq!(again.code_type, Some(CodeType::IVPrime));
        assert!(text.contains("\"IV'\""));
    }

    #[test]
    fn entries_out_of_range_are_rejected() {
        let f = Field::new(3, 1).unwrap();
        let code = generate_code(&f, CodeType::I).unwrap();
        let mut file = CodeFile::from_code(&code);
        file.codewords[0].basis[0][4] = 3;
        assert!(matches!(file.to_code(), Err(FileError::Field(Error::BadElement { .. }))));
        let mut file = CodeFile::from_code(&code);
        file.codewords[5].basis.push(vec![0; 5]);
        assert!(matches!(file.to_code(), Err(FileError::Malformed(_))));
    }

    #[test]
    fn field_for_rejects_bad_orders() {
        assert!(matches!(field_for(6), Err(Error::NotPrimePower(6))));
        assert!(matches!(field_for(11), Err(Error::OutOfRange { .. })));
        assert_eq!(field_for(9).unwrap().order(), 9);
    }

    #[test]
    fn odd_types_only_for_odd_q() {
        let f = Field::new(3, 1).unwrap();
        assert!(matches!(
            generate_code(&f, CodeType::IVDoublePrime),
            Err(Error::TypeNotAvailable { .. })
        ));
    }
}
