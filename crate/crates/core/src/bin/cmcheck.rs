use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;

use cmcheck::arith::{odd_primes_up_to, RationalField};
use cmcheck::arrangement::{
    classify, good_reduction_report, intersection_poset, resolution_schedule, Arrangement, BlowUp, Classification,
    GoodReductionReport,
};
use cmcheck::catalog;
use cmcheck::cm::{normalize_prime_element, CmField, CmForm, FrobeniusData};
use cmcheck::kummer::{double_cover_euler, iterated_elliptic_euler, KummerData};
use cmcheck::point_count::{elliptic_ap, verify_ahlgren, EllipticCurve};
use cmcheck::qseries::EtaProduct;
use cmcheck::report::{run_suite, SuiteOptions};
use cmcheck::tensor::{two_form_factors, verify_power_factorization};
use cmcheck::{Error, Result};

#[derive(Parser)]
#[command(name = "cmcheck", version, about = "Exact checks for CM forms, point counts and arrangement double covers")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Emit JSON
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV
    #[arg(long, global = true)]
    csv: bool,
    /// Worker threads
    #[arg(long, global = true, value_name = "K")]
    threads: Option<usize>,
    /// Largest prime considered
    #[arg(long, global = true, value_name = "P")]
    pmax: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FieldArg {
    /// ℚ(i)
    I,
    /// ℚ(√-3)
    Zeta3,
}

impl From<FieldArg> for CmField {
    fn from(f: FieldArg) -> Self {
        match f {
            FieldArg::I => CmField::Gaussian,
            FieldArg::Zeta3 => CmField::Eisenstein,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Expand an eta product such as `8^2,4^2` (η(q⁸)²η(q⁴)²)
    EtaExpand {
        factors: String,
        /// Number of coefficients
        #[arg(short = 'n', long, default_value_t = 50)]
        terms: usize,
    },
    /// Prime coefficients of the weight-k CM form
    CmCoeffs {
        #[arg(long, value_enum)]
        field: FieldArg,
        #[arg(long)]
        weight: u32,
    },
    /// Primary generator of a split prime
    GrossNormalize {
        p: u64,
        #[arg(long, value_enum, default_value = "i")]
        field: FieldArg,
    },
    /// Frobenius traces of y² = x³ + Ax + B
    EllipticAp {
        /// `A,B`
        #[arg(long, allow_hyphen_values = true)]
        curve: String,
    },
    /// Point counts of the affine fivefold against the level-4 weight-6 form
    VerifyAhlgren {
        #[arg(long, default_value_t = 13)]
        brute_max: u64,
    },
    /// Local factors of tensor products of CM forms, e.g. `g4,g3` or `g2,g2,g2`
    TensorFactor {
        #[arg(long, default_value = "g4,g3")]
        forms: String,
        #[arg(long, value_enum, default_value = "i")]
        field: FieldArg,
    },
    /// Stratify a hyperplane arrangement file
    ClassifyArrangement {
        file: PathBuf,
        #[arg(long)]
        schedule: bool,
        #[arg(long)]
        good_reduction: bool,
        /// Primes for the F_p poset comparison
        #[arg(long = "prime", default_values_t = [3u64, 5, 7])]
        primes: Vec<u64>,
    },
    /// Euler characteristics of iterated double covers
    Euler {
        #[arg(long, conflicts_with = "pair", required_unless_present = "pair")]
        iterate: Option<u32>,
        /// `eX1,eD1,eX2,eD2`
        #[arg(long, allow_hyphen_values = true)]
        pair: Option<String>,
    },
    /// Run a verification suite: eta, cm, ahlgren, tensor, arrangement, euler, all
    Suite {
        name: String,
        #[arg(long)]
        brute_max: Option<u64>,
        /// Arrangement file for the arrangement suite
        #[arg(long)]
        arrangement: Option<PathBuf>,
    },
}

enum Format {
    Text,
    Json,
    Csv,
}

fn ints(s: &str, count: usize) -> Result<Vec<i64>> {
    let v: Vec<i64> = s
        .split(',')
        .map(|t| t.trim().parse().map_err(|e| Error::InvalidArgument(format!("{t:?}: {e}"))))
        .collect::<Result<_>>()?;
    if v.len() != count {
        return Err(Error::InvalidArgument(format!("expected {count} comma-separated integers in {s:?}")));
    }
    Ok(v)
}

fn parse_eta(s: &str) -> Result<EtaProduct> {
    let factors = s
        .split(',')
        .map(|f| {
            let (m, k) = f.trim().split_once('^').unwrap_or((f.trim(), "1"));
            let parse = |t: &str| t.parse::<u64>().map_err(|e| Error::InvalidArgument(format!("{f:?}: {e}")));
            Ok((parse(m)?, parse(k)?))
        })
        .collect::<Result<Vec<_>>>()?;
    EtaProduct::new(&factors)
}

fn parse_forms(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|f| {
            f.trim()
                .strip_prefix('g')
                .and_then(|k| k.parse::<u32>().ok())
                .filter(|&k| k >= 2)
                .ok_or_else(|| Error::InvalidArgument(format!("form {f:?} is not g<k> with k >= 2")))
        })
        .collect()
}

fn curve_series(field: CmField, precision: usize) -> cmcheck::qseries::QSeries {
    let g2 = match field {
        CmField::Gaussian => catalog::G2_LEVEL32,
        CmField::Eisenstein => catalog::G2_LEVEL27,
    };
    g2.eta_product().expect("eta").expand(precision)
}

fn emit<T: Serialize>(format: &Format, value: &T, csv_header: &str, csv_rows: Vec<String>, text: String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).expect("serializable")),
        Format::Csv => {
            println!("{csv_header}");
            for r in csv_rows {
                println!("{r}");
            }
        }
        Format::Text => print!("{text}"),
    }
}

#[derive(Serialize)]
struct PrimeValue {
    p: u64,
    #[serde(with = "cmcheck::arith::decimal")]
    value: BigInt,
}

#[derive(Serialize)]
struct ClassificationOutput<'a> {
    #[serde(flatten)]
    classification: &'a Classification,
    #[serde(skip_serializing_if = "Option::is_none")]
    schedule: Option<&'a [BlowUp]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    good_reduction: Option<&'a GoodReductionReport>,
}

#[derive(Serialize)]
struct FactorRow {
    p: u64,
    lhs_poly: String,
    rhs_poly: String,
    equal: bool,
}

fn run(cli: Cli) -> Result<i32> {
    let g = &cli.global;
    if let Some(k) = g.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    }
    let format = if g.json {
        Format::Json
    } else if g.csv {
        Format::Csv
    } else {
        Format::Text
    };
    let pmax = g.pmax.unwrap_or(100);

    match cli.command {
        Command::EtaExpand { factors, terms } => {
            let s = parse_eta(&factors)?.expand(terms);
            let coeffs: Vec<String> = s.iter().map(|(_, c)| c.to_string()).collect();
            let text = s.support().iter().map(|(n, c)| format!("{c} q^{n}")).collect::<Vec<_>>().join(" + ");
            let csv = s.iter().map(|(n, c)| format!("{n},{c}")).collect();
            emit(&format, &coeffs, "n,a_n", csv, format!("{text}\n"));
        }
        Command::CmCoeffs { field, weight } => {
            if weight < 2 {
                return Err(Error::InvalidArgument("weight must be at least 2".into()));
            }
            let form = CmForm::new(weight, field.into());
            let rows: Vec<PrimeValue> = odd_primes_up_to(pmax)
                .into_iter()
                .filter(|&p| p != form.field.ramified_prime())
                .map(|p| Ok(PrimeValue { p, value: form.prime_coefficient(p)? }))
                .collect::<Result<_>>()?;
            let csv = rows.iter().map(|r| format!("{},{}", r.p, r.value)).collect();
            let text = rows.iter().map(|r| format!("a_{} = {}\n", r.p, r.value)).collect();
            emit(&format, &rows, "p,a_p", csv, text);
        }
        Command::GrossNormalize { p, field } => {
            let alpha = normalize_prime_element(p, field.into())?;
            #[derive(Serialize)]
            struct Out {
                p: u64,
                element: String,
                #[serde(with = "cmcheck::arith::decimal")]
                norm: BigInt,
                #[serde(with = "cmcheck::arith::decimal")]
                trace: BigInt,
            }
            let out = Out { p, element: alpha.to_string(), norm: alpha.norm(), trace: alpha.trace() };
            let csv = vec![format!("{},{},{},{}", out.p, out.element, out.norm, out.trace)];
            let text = format!("{} = N({}), trace {}\n", p, out.element, out.trace);
            emit(&format, &out, "p,element,norm,trace", csv, text);
        }
        Command::EllipticAp { curve } => {
            let ab = ints(&curve, 2)?;
            let e = EllipticCurve::short(ab[0], ab[1]);
            if e.discriminant() == 0 {
                return Err(Error::InvalidArgument(format!("{e} is singular")));
            }
            let rows: Vec<PrimeValue> = odd_primes_up_to(pmax)
                .into_iter()
                .filter(|&p| e.is_good_prime(p))
                .map(|p| Ok(PrimeValue { p, value: elliptic_ap(&e, p)?.into() }))
                .collect::<Result<_>>()?;
            let csv = rows.iter().map(|r| format!("{},{}", r.p, r.value)).collect();
            let text = rows.iter().map(|r| format!("a_{} = {}\n", r.p, r.value)).collect();
            emit(&format, &rows, "p,a_p", csv, text);
        }
        Command::VerifyAhlgren { brute_max } => {
            let rows = verify_ahlgren(pmax, brute_max)?;
            let ok = rows.iter().all(|r| r.matches);
            let csv = rows
                .iter()
                .map(|r| {
                    let brute = r.brute.map(|b| b.to_string()).unwrap_or_default();
                    format!("{},{},{},{},{},{}", r.p, r.a_p, r.count, brute, r.predicted, r.matches)
                })
                .collect();
            let text = rows
                .iter()
                .map(|r| {
                    let brute = r.brute.map(|b| format!(" brute {b}")).unwrap_or_default();
                    format!("p={:<4} a_p={:<10} N={}{brute} predicted {} {}\n", r.p, r.a_p, r.count, r.predicted, if r.matches { "ok" } else { "MISMATCH" })
                })
                .collect();
            emit(&format, &rows, "p,a_p,count,brute,predicted,matches", csv, text);
            return Ok(if ok { 0 } else { 1 });
        }
        Command::TensorFactor { forms, field } => {
            let weights = parse_forms(&forms)?;
            let field: CmField = field.into();
            let series = curve_series(field, pmax as usize);
            let mut rows = Vec::new();
            for p in odd_primes_up_to(pmax).into_iter().filter(|&p| p != field.ramified_prime()) {
                let a = series.coeff(p as usize).clone();
                let (lhs, rhs) = if weights.len() == 2 {
                    two_form_factors(&FrobeniusData::new(field, p, a)?, field, weights[0], weights[1])
                } else if weights.iter().all(|&k| k == 2) {
                    let c = verify_power_factorization(&a, p, field, weights.len() as u32)?;
                    (c.lhs, c.rhs)
                } else {
                    return Err(Error::InvalidArgument("use two forms, or any number of copies of g2".into()));
                };
                rows.push(FactorRow { p, equal: lhs == rhs, lhs_poly: lhs.to_string(), rhs_poly: rhs.to_string() });
            }
            let ok = rows.iter().all(|r| r.equal);
            let csv = rows.iter().map(|r| format!("{},\"{}\",\"{}\",{}", r.p, r.lhs_poly, r.rhs_poly, r.equal)).collect();
            let text = rows
                .iter()
                .map(|r| format!("p={}: {} {} {}\n", r.p, r.lhs_poly, if r.equal { "==" } else { "!=" }, r.rhs_poly))
                .collect();
            emit(&format, &rows, "p,lhs_poly,rhs_poly,equal", csv, text);
            return Ok(if ok { 0 } else { 1 });
        }
        Command::ClassifyArrangement { file, schedule, good_reduction, primes } => {
            let arr = Arrangement::from_file(&file)?;
            let poset = intersection_poset(&RationalField, &arr);
            let class = classify(&poset);
            let sched = if schedule { Some(resolution_schedule(&poset)?) } else { None };
            let reduction = if good_reduction { Some(good_reduction_report(&arr, &primes)?) } else { None };
            match format {
                Format::Json => {
                    let out = ClassificationOutput { classification: &class, schedule: sched.as_deref(), good_reduction: reduction.as_ref() };
                    println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
                }
                Format::Csv => print!("{}", class.to_csv()),
                Format::Text => {
                    println!("{} hyperplanes in P^{}, {} strata", arr.len(), arr.dim(), class.total());
                    println!("type  dim mult count near-pencil admissible incidence({})", class.columns.join(","));
                    for t in &class.types {
                        let np = if t.near_pencil { "yes".to_string() } else if t.near_pencil_count > 0 { format!("{}/{}", t.near_pencil_count, t.count) } else { "no".to_string() };
                        println!("{:<5} {:>3} {:>4} {:>5} {:>11} {:>10} {:?}", t.label, t.dim, t.mult, t.count, np, if t.admissible { "yes" } else { "no" }, t.incidence);
                    }
                    println!("crepant resolvable: {}", class.resolvable);
                    if let Some(s) = &sched {
                        println!("blow-up schedule ({} centers):", s.len());
                        for b in s {
                            println!("  {} dim {} mult {} planes {:?}{}", b.label, b.dim, b.mult, b.hyperplanes, if b.adds_exceptional { " +E" } else { "" });
                        }
                    }
                    if let Some(r) = &reduction {
                        println!("good reduction: {} (max |minor| {})", r.summary(), r.max_abs_minor);
                        for d in &r.diffs {
                            println!("  poset over F_{}: {}", d.p, if d.equal { "same as over Q" } else { "differs" });
                        }
                    }
                }
            }
        }
        Command::Euler { iterate, pair } => {
            if let Some(n) = iterate {
                let e = iterated_elliptic_euler(n)?;
                emit(&format, &e, "n,euler", vec![format!("{n},{e}")], format!("e(X^{n}) = {e}\n"));
            } else {
                let v = ints(pair.as_deref().unwrap_or_default(), 4)?;
                let r = double_cover_euler(KummerData::new(v[0], v[1]), KummerData::new(v[2], v[3]))?;
                emit(&format, &r, "e_x,e_d", vec![format!("{},{}", r.e_x, r.e_d)], format!("e(X) = {}, e(D) = {}\n", r.e_x, r.e_d));
            }
        }
        Command::Suite { name, brute_max, arrangement } => {
            let opts = SuiteOptions {
                pmax: g.pmax,
                brute_max,
                arrangement: arrangement.map(Arrangement::from_file).transpose()?,
            };
            let report = run_suite(&name, &opts)?;
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report).expect("serializable")),
                Format::Csv => {
                    println!("claim,input,computed,expected,source,status");
                    for c in &report.claims {
                        for r in &c.rows {
                            let source = serde_json::to_value(r.source).expect("serializable");
                            println!("{},\"{}\",\"{}\",\"{}\",{},{}", c.claim, r.input, r.computed, r.expected, source.as_str().unwrap_or_default(), r.status);
                        }
                    }
                }
                Format::Text => print!("{}", report.to_table()),
            }
            return Ok(report.exit_code());
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
