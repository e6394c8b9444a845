use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
    #[error("no real root above {floor}")]
    NoRootAbove { floor: String },
    #[error("root isolation did not converge: {0}")]
    RootUnresolved(String),
    #[error("prescribed orbit data is not realizable: {0}")]
    OrderConflict(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("partition point {point} has image {image} outside the partition")]
    NotInvariant { point: String, image: String },
    #[error("basic interval {class} has image of length {length} >= 1")]
    NotShort { class: String, length: String },
    #[error("lifting is constant on basic interval {class}")]
    FlatClass { class: String },
    #[error("loop {0:?} avoids the proposed rome")]
    InvalidRome(Vec<usize>),
    #[error("Stern-Brocot search exceeded denominator bound {bound}")]
    DepthExceeded { bound: u64 },
    #[error("loop enumeration exceeded the cap of {cap} loops")]
    BudgetExceeded { cap: usize },
    #[error("loop {word:?} has composed branch x -> x + {offset}: an interval of fixed points")]
    DegenerateLoop { word: Vec<usize>, offset: String },
    #[error("rotation interval [{c}, {d}] is degenerate")]
    DegenerateRotationInterval { c: String, d: String },
    #[error("set of periods is not cofinite")]
    NotCofinite,
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("graph cannot be extended: {0}")]
    NotExtendable(String),
}
