use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("eta product has weight sum {0}, not divisible by 24")]
    NonIntegralEtaExponent(u64),

    #[error("eta product factor must have positive scale and exponent, got ({scale}, {exponent})")]
    InvalidEtaFactor { scale: u64, exponent: u64 },

    #[error("no coefficient supplied for prime {0}")]
    MissingPrimeCoefficient(u64),

    #[error("coefficient {value} at prime {p} violates the Ramanujan bound for weight {weight}")]
    RamanujanBound { p: u64, value: String, weight: u32 },

    #[error("{p} is a bad prime for {what}")]
    BadPrime { p: u64, what: String },

    #[error("prime {p} is not split in {field}")]
    NotSplit { p: u64, field: &'static str },

    #[error("no associate of norm {0} satisfies the normalizing congruence")]
    NoNormalizedAssociate(u64),

    #[error("power sums are inconsistent: Newton step {step} is not integral")]
    NonIntegralNewtonStep { step: usize },

    #[error("tensor of {0} factors exceeds the default limit; enable large tensors explicitly")]
    TensorTooLarge(usize),

    #[error("non-integral half term: {0}")]
    NonIntegralHalf(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("binomial exponent C({n},{k}) is odd and cannot be halved")]
    OddBinomialExponent { n: u32, k: u32 },

    #[error("arrangement parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid arrangement: {0}")]
    InvalidArrangement(String),

    #[error("arrangement is not crepant-resolvable ({0} violating strata)")]
    NotResolvable(usize),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
