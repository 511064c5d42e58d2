use thiserror::Error;

/// Errors raised by the field, curve, code and weight engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("invalid field parameters: {0}")]
    InvalidField(String),
    #[error("modulus is not a monic irreducible polynomial of degree {degree} over GF({p})")]
    ReducibleModulus { p: u32, degree: u32 },
    #[error("field element code {code} is out of range for a field of order {order}")]
    ElementOutOfRange { code: u32, order: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("u = {u} does not divide (q^s - 1)/(q - 1) = {bound}")]
    InvalidU { u: u32, bound: u64 },
    #[error("monomial {0} lies outside the standard box")]
    OutsideBox(String),
    #[error("monomial set is not closed under divisibility")]
    NotDecreasing,
    #[error("monomial sets are not properly nested")]
    NotNested,
    #[error("empty monomial set")]
    EmptySet,
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("invalid staircase profile: {0}")]
    InvalidStaircase(String),
    #[error("u = {u} is {actual} the maximal value (q^s - 1)/(q - 1)")]
    WrongUKind { u: u32, actual: &'static str },
    #[error("work estimate {needed} exceeds the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
    #[error("not enough field elements to build the witness polynomials: {0}")]
    InsufficientElements(String),
    #[error("codes have mismatched length or field")]
    Mismatch,
}

pub type Result<T> = std::result::Result<T, Error>;
