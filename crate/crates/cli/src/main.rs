use clap::{Args, Parser, Subcommand};
use gsp4_core::arith::CycNum;
use gsp4_core::cm::spin::{purity_check, synthetic_x0};
use gsp4_core::cm::{
    check_norm_relation, phi_defining_property, q_expansion, q_l_twist_consistency, spin_frobenius_poly, verify_eigenform,
    weight_report, SpinFrobData,
};
use gsp4_core::gejima::{verify_partition, PartitionConfig};
use gsp4_core::hecke::degeneracy::gl2_degeneracy_identities;
use gsp4_core::hecke::integrality::{integrality_volume_check, volume_algebra_check};
use gsp4_core::hecke::lfactor::{
    multiplier_grading_check, spin_coefficients_json, spin_verbatim_check, verify_nov_factorization,
};
use gsp4_core::hecke::mellin::siegel_section_check;
use gsp4_core::hecke::satake::homomorphism_check;
use gsp4_core::iqf::{parse_ideal, HeckeChar, QuadField, RayClassGroup};
use gsp4_core::report::Report;
use gsp4_core::suite::{self, SuiteConfig};
use gsp4_core::{arith::SqrtExt, Error};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

/// Exact verifications for GSp4 x GL2 Euler factors and CM norm relations.
#[derive(Parser)]
#[command(name = "gsp4", version)]
struct Cli {
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Seed for randomized sweeps and synthetic data.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Local Hecke algebra identities.
    Hecke {
        #[command(subcommand)]
        op: HeckeCmd,
    },
    /// Spin and Novodvorsky polynomials.
    Lfactor {
        #[command(subcommand)]
        op: LfactorCmd,
    },
    /// The H-K double coset partition.
    Gejima {
        #[command(subcommand)]
        op: GejimaCmd,
    },
    /// Ray class group structure.
    Rayclass(FieldArgs),
    /// CM eigenforms, phi_n and weight exponents.
    Cm {
        #[command(subcommand)]
        op: CmCmd,
    },
    /// Norm-relation identities over ray class groups.
    Normrel {
        #[command(subcommand)]
        op: NormrelCmd,
    },
    /// The acceptance battery.
    Suite {
        /// Smaller bounds, and the Gejima sweep is skipped.
        #[arg(long)]
        quick: bool,
    },
}

#[derive(Args)]
struct PrimeArg {
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    prime: u64,
}

#[derive(Subcommand)]
enum HeckeCmd {
    /// Satake transform of products of T, R, S and of GL2 T, S.
    Satake(PrimeArg),
    /// pr1 and pr2 against T' and S' as coset multisets.
    Degeneracy(PrimeArg),
    /// Congruence-subgroup containments and the volume identity.
    Integrality(PrimeArg),
    /// Support and value of the Siegel section for phi_{l,2}.
    Siegel(PrimeArg),
}

#[derive(Subcommand)]
enum LfactorCmd {
    /// Coefficients of the spin bracket.
    SpinVerbatim(PrimeArg),
    /// Novodvorsky polynomial against the product of Rankin-Selberg factors.
    CheckFactorization {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        prime: u64,
        /// Shift lambda by one; the check must then fail.
        #[arg(long)]
        corrupt: bool,
    },
    /// Multiplier grading of the Novodvorsky coefficients.
    Grading(PrimeArg),
    /// Frobenius polynomial and purity for synthetic Satake data.
    SpinFrob {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        prime: u64,
        #[command(flatten)]
        weights: Weights,
    },
}

#[derive(Subcommand)]
enum GejimaCmd {
    /// Disjointness and exhaustion of the candidate double cosets.
    Partition {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        prime: u64,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(i64).range(1..))]
        bound: i64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

#[derive(Args, Clone)]
struct FieldArgs {
    /// Fundamental discriminant of K.
    #[arg(long, default_value_t = -4, allow_negative_numbers = true)]
    disc: i64,
    /// Modulus, e.g. "(2+2i)" or "3*(3+w)".
    #[arg(long)]
    modulus: String,
}

#[derive(Args, Clone)]
struct Weights {
    #[arg(long, default_value_t = 4)]
    k1: i64,
    #[arg(long, default_value_t = 3)]
    k2: i64,
}

#[derive(Subcommand)]
enum CmCmd {
    /// q-expansion of the CM form of conductor `--modulus` and its eigenform checks.
    Qexp {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = 500, value_parser = clap::value_parser!(u64).range(1..))]
        bound: u64,
        /// Largest prime in the recurrence checks; defaults to sqrt(bound).
        #[arg(long)]
        primes: Option<u64>,
    },
    /// chi(phi_n(T'_l)) against twisted q-expansions for every character of H_n.
    Phi {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        modulus_n: String,
        #[arg(long, default_value_t = 100)]
        bound: u64,
    },
    /// Frobenius weights of V and V*(1).
    Weights(Weights),
}

#[derive(Subcommand)]
enum NormrelCmd {
    /// The group-ring identity at both primes above a split l.
    Identity {
        #[command(flatten)]
        field: FieldArgs,
        /// Defaults to the conductor.
        #[arg(long)]
        modulus_n: Option<String>,
        #[arg(long)]
        prime: u64,
    },
    /// chi(P_l([l]psi(l) l^{-(k2-1)})) = Q_l(chi(sigma_l)^-1) on H_n^(p).
    Qltwist {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        modulus_n: String,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        prime: u64,
        #[command(flatten)]
        weights: Weights,
    },
}

enum Outcome {
    Report(Report),
    Suite(Value, bool),
}

fn psi_of(f: &FieldArgs) -> gsp4_core::Result<HeckeChar> {
    let k = QuadField::new(f.disc)?;
    HeckeChar::construct(&k, &parse_ideal(&k, &f.modulus)?)
}

fn synthetic(prime: u64, w: &Weights, seed: u64) -> gsp4_core::Result<(SpinFrobData, [CycNum; 2], Value)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (x1, x2, shown) = suite::synthetic_roots(&mut rng);
    let d = SpinFrobData::synthetic(prime, w.k1, w.k2, x1.clone(), x2.clone())?;
    Ok((d, [x1, x2], shown))
}

fn run(cli: &Cli) -> gsp4_core::Result<Outcome> {
    let seed = cli.seed;
    let rep = match &cli.cmd {
        Cmd::Hecke { op } => match op {
            HeckeCmd::Satake(a) => homomorphism_check(a.prime)?,
            HeckeCmd::Degeneracy(a) => gl2_degeneracy_identities(a.prime),
            HeckeCmd::Integrality(a) => integrality_volume_check(a.prime),
            HeckeCmd::Siegel(a) => {
                let mut r = siegel_section_check(a.prime)?;
                r.merge(volume_algebra_check(a.prime));
                r
            }
        },
        Cmd::Lfactor { op } => match op {
            LfactorCmd::SpinVerbatim(a) => spin_verbatim_check(a.prime).param("coefficients", spin_coefficients_json(a.prime)),
            LfactorCmd::CheckFactorization { prime, corrupt } => verify_nov_factorization(*prime, *corrupt)?,
            LfactorCmd::Grading(a) => multiplier_grading_check(a.prime),
            LfactorCmd::SpinFrob { prime, weights } => {
                let (d, [x1, x2], shown) = synthetic(*prime, weights, seed)?;
                let p = spin_frobenius_poly(&d)?;
                let x0 = synthetic_x0(*prime, d.w());
                let coeffs: Vec<Value> = p.iter().map(gsp4_core::arith::ToJson::to_json).collect();
                purity_check([x0, SqrtExt::base(x1), SqrtExt::base(x2)], &d)?
                    .param("seed", seed)
                    .param("satake_roots", shown)
                    .param("data", d.to_json())
                    .param("P_l", coeffs)
            }
        },
        Cmd::Gejima { op } => match op {
            GejimaCmd::Partition { prime, bound, samples } => {
                verify_partition(*prime, *bound, PartitionConfig { samples: *samples, seed })?
            }
        },
        Cmd::Rayclass(f) => {
            let k = QuadField::new(f.disc)?;
            let ray = RayClassGroup::new(&k, &parse_ideal(&k, &f.modulus)?)?;
            let mut r = Report::new("rayclass").param("field", f.disc).param("group", ray.to_json());
            let expect = ray.class_number() * ray.residue_order() / ray.unit_image_order();
            r.check("|H_m| = h_K |(O/m)^x| / |O^x image|", ray.order() == expect, json!({ "order": ray.order() }));
            r
        }
        Cmd::Cm { op } => match op {
            CmCmd::Qexp { field, bound, primes } => {
                let psi = psi_of(field)?;
                let f = q_expansion(&psi, *bound)?;
                let primes = primes.unwrap_or((*bound as f64).sqrt() as u64);
                verify_eigenform(&f, &psi, primes)?.param("qexp", f.to_json())
            }
            CmCmd::Phi { field, modulus_n, bound } => {
                let psi = psi_of(field)?;
                let ray = Arc::new(RayClassGroup::new(&psi.field, &parse_ideal(&psi.field, modulus_n)?)?);
                phi_defining_property(&psi, &ray, *bound)?
            }
            CmCmd::Weights(w) => weight_report(&[(w.k1, w.k2)])?,
        },
        Cmd::Normrel { op } => match op {
            NormrelCmd::Identity { field, modulus_n, prime } => {
                let psi = psi_of(field)?;
                let n = match modulus_n {
                    Some(s) => parse_ideal(&psi.field, s)?,
                    None => psi.conductor.clone(),
                };
                let ray = RayClassGroup::new(&psi.field, &n)?;
                let mut r = Report::new("normrel-identity").param("prime", *prime);
                let above = psi.field.primes_above(*prime);
                if above.len() != 2 {
                    return Err(Error::NotSplit(*prime));
                }
                for lp in above {
                    let mut sub = check_norm_relation(&psi, &ray, &lp)?;
                    sub.name = format!("l={}", lp.to_json());
                    r.merge(sub);
                }
                r
            }
            NormrelCmd::Qltwist { field, modulus_n, p, prime, weights } => {
                let psi = psi_of(field)?;
                let ray = RayClassGroup::new(&psi.field, &parse_ideal(&psi.field, modulus_n)?)?;
                let (d, _, shown) = synthetic(*prime, weights, seed)?;
                let mut r = Report::new("qltwist").param("seed", seed).param("satake_roots", shown);
                let above = psi.field.primes_above(*prime);
                if above.len() != 2 {
                    return Err(Error::NotSplit(*prime));
                }
                for lp in above {
                    let mut sub = q_l_twist_consistency(&d, &psi, &ray, *p, &lp)?;
                    sub.name = format!("l={}", lp.to_json());
                    r.merge(sub);
                }
                r
            }
        },
        Cmd::Suite { quick } => {
            let cfg = SuiteConfig { quick: *quick, seed };
            let results = suite::run(&cfg)?;
            for (n, r) in &results {
                eprintln!("criterion {n:>2} [{}] {}", if r.pass() { "PASS" } else { "FAIL" }, suite::title(*n));
            }
            let pass = results.iter().all(|(_, r)| r.pass());
            return Ok(Outcome::Suite(suite::suite_json(&cfg, &results), pass));
        }
    };
    Ok(Outcome::Report(rep))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (value, pass) = match run(&cli) {
        Ok(Outcome::Report(r)) => {
            eprint!("{}", r.summary());
            (r.to_json(), r.pass())
        }
        Ok(Outcome::Suite(v, pass)) => (v, pass),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let text = serde_json::to_string_pretty(&value).expect("reports serialize");
    // a closed pipe downstream is not an error of the run
    let _ = writeln!(std::io::stdout(), "{text}");
    if let Some(path) = &cli.json {
        if let Err(e) = std::fs::write(path, format!("{text}\n")) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
