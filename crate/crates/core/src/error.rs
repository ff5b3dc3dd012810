use alloc::string::String;
use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Constructor parameters violate a family constraint.
    InvalidSpec(String),
    /// Group order or search space exceeds the configured bound.
    TooLarge { what: &'static str, size: usize, bound: usize },
    NotASubgroup,
    NotNormal,
    /// Seed arrow does not respect the carrier order.
    InvalidArrow { from: usize, to: usize },
    CarrierMismatch,
    NotMcf,
    BadPrime(u64),
    InvalidTriple(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidSpec(msg) => write!(f, "invalid group spec: {msg}"),
            Error::TooLarge { what, size, bound } => {
                write!(f, "{what} of size {size} exceeds bound {bound}")
            }
            Error::NotASubgroup => write!(f, "element set is not a subgroup"),
            Error::NotNormal => write!(f, "subgroup is not normal"),
            Error::InvalidArrow { from, to } => {
                write!(f, "arrow {from} -> {to} does not respect the carrier order")
            }
            Error::CarrierMismatch => write!(f, "relation carrier does not match"),
            Error::NotMcf => write!(f, "group is not metacyclic Frobenius"),
            Error::BadPrime(p) => write!(f, "prime {p} is not admissible here"),
            Error::InvalidTriple(msg) => write!(f, "invalid split transfer system: {msg}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
