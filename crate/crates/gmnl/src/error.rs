//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    // --- graphs ---
    #[error("local dimension must be at least 2, got {0}")]
    BadDimension(usize),
    #[error("vertex {0} out of range for graph with {1} vertices")]
    VertexOutOfRange(usize, usize),
    #[error("self-loops are excluded: edge ({0}, {0})")]
    SelfLoop(usize),
    #[error("multiplier {b} invalid for vertex multiplication mod {d}")]
    BadMultiplier { b: u64, d: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is not a caterpillar: {0}")]
    NotACaterpillar(String),
    #[error("graph is not a linear graph")]
    NotLinear,
    #[error("dimension {0} is not prime")]
    NonPrimeDimension(usize),

    // --- states and observables ---
    #[error("state of {n} parties with dimension {d} exceeds the amplitude cap")]
    MemoryCap { n: usize, d: usize },
    #[error("matrix is not unitary within tolerance")]
    NotUnitary,
    #[error("observable^d differs from the identity within tolerance")]
    NotRootOfUnity,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("party {0} out of range for {1} parties")]
    PartyOutOfRange(usize, usize),
    #[error("local complementation unitaries require qubits (d = 2), got d = {0}")]
    RequiresQubits(usize),
    #[error("party count must be at least {min}, got {got}")]
    TooFewParties { min: usize, got: usize },

    // --- behaviors ---
    #[error("setting {setting} out of range for party {party} with {count} settings")]
    SettingOutOfRange {
        party: usize,
        setting: usize,
        count: usize,
    },
    #[error("power {0} out of range for dimension {1}")]
    BadPower(u64, usize),
    #[error("party {0} referenced twice with conflicting settings")]
    ConflictingSettings(usize),
    #[error("marginal depends on discarded settings (max deviation {0:.3e}); behavior is signalling")]
    SignallingDetected(f64),
    #[error("conditioning event has probability {0:.3e}, below the cutoff")]
    ZeroProbabilityCondition(f64),
    #[error("behavior table is malformed: {0}")]
    MalformedBehavior(String),

    // --- inequalities ---
    #[error("scenario mismatch: {0}")]
    ScenarioMismatch(String),
    #[error("unknown observable family `{0}`")]
    UnknownFamily(String),
    #[error("outcomes are not dichotomic (d = {0}); this check requires d = 2")]
    NotDichotomic(usize),

    // --- inflation ---
    #[error("unknown party `{0}` in network")]
    UnknownParty(String),
    #[error("duplicate party `{0}` in subset")]
    DuplicateParty(String),
    #[error("unknown inflation family `{0}`")]
    UnknownInflationFamily(String),
    #[error("invalid inflation parameters: {0}")]
    BadInflationParams(String),
    #[error("claim script is malformed: {0}")]
    MalformedScript(String),

    // --- lonc ---
    #[error("strategy enumeration budget exceeded: {0:.3e} > 1e8 strategies")]
    EnumerationBudget(f64),
    #[error("functional references settings of a party whose inputs are not determined: {0}")]
    AmbiguousFunctional(String),

    // --- cli / io ---
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
