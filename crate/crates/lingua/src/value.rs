//! Data, bodies and composites.

use std::collections::BTreeMap;
use std::fmt;

use crate::limits::Limits;
use crate::number::Decimal;

/// A Lingua identifier. Validity (lexical shape, reserved words) is checked by
/// the lexer; the newtype only guarantees non-emptiness.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Identifier(String);

impl Identifier {
    pub fn new(text: impl Into<String>) -> Self {
        let text = text.into();
        assert!(!text.is_empty(), "identifiers are non-empty");
        Identifier(text)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Identifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Identifier {
    fn from(s: &str) -> Self {
        Identifier::new(s)
    }
}

/// An abstract error: a word such as `division-by-zero`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ErrorWord(String);

impl ErrorWord {
    pub fn new(text: impl Into<String>) -> Self {
        let text = text.into();
        assert!(!text.is_empty(), "error words are non-empty");
        ErrorWord(text)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// `self @ suffix`, the composed message used by error handling.
    pub fn annotate(&self, suffix: &str) -> ErrorWord {
        ErrorWord(format!("{} @ {}", self.0, suffix))
    }
}

impl fmt::Display for ErrorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl PartialEq<&str> for ErrorWord {
    fn eq(&self, other: &&str) -> bool {
        self.0 == *other
    }
}

/// Error words produced by the interpreter, spelled exactly.
pub mod catalog {
    pub const DIVISION_BY_ZERO: &str = "division-by-zero";
    pub const OVERLOAD: &str = "overload";
    pub const BOOLEAN_EXPECTED: &str = "Boolean-expected";
    pub const NUMBER_EXPECTED: &str = "number-expected";
    pub const WORD_EXPECTED: &str = "word-expected";
    pub const LIST_EXPECTED: &str = "list-expected";
    pub const ARRAY_EXPECTED: &str = "array-expected";
    pub const RECORD_EXPECTED: &str = "record-expected";
    pub const SIMPLE_DATA_EXPECTED: &str = "simple-data-expected";
    pub const EMPTY_LIST: &str = "empty-list";
    pub const ARRAY_INDEX_UNDEFINED: &str = "array-index-undefined";
    pub const INCONSISTENT_BODIES: &str = "inconsistent-bodies";
    pub const ATTRIBUTE_NOT_FREE: &str = "attribute-not-free";
    pub const UNKNOWN_ATTRIBUTE: &str = "unknown-attribute";

    pub const UNDECLARED_VARIABLE: &str = "undeclared-variable";
    pub const UNINITIALIZED_VARIABLE: &str = "uninitialized-variable";
    pub const TYPE_CONSTANT_UNDEFINED: &str = "type-constant-undefined";
    pub const VARIABLE_DECLARED: &str = "variable-declared";
    pub const IDENTIFIER_NOT_FREE: &str = "identifier-not-free";
    pub const IDENTIFIER_NOT_DECLARED: &str = "identifier-not-declared";
    pub const NO_COHERENCE: &str = "no-coherence";
    pub const A_YOKE_EXPECTED: &str = "a-yoke-expected";
    pub const YOKE_NOT_SATISFIED: &str = "yoke-not-satisfied";
    pub const ERROR_HANDLING_EXECUTED: &str = "error-handling-executed";
    pub const ERROR_HANDLING_NOT_EXECUTED: &str = "error-handling-not-executed";

    pub const FORMAL_PAR_REPETITIONS: &str = "formal-par-repetitions";
    pub const ACTUAL_PAR_REPETITIONS: &str = "actual-par-repetitions";
    pub const INCOMPATIBLE_NUMBERS_OF_PARAMETERS: &str = "incompatible-numbers-of-parameters";
    pub const VALUE_PARAMETER_UNDEFINED: &str = "value-parameter undefined";
    pub const VALUE_PARAMETER_UNINITIALIZED: &str = "value-parameter uninitialized";
    pub const REFERENCE_PARAMETER_UNDECLARED: &str = "reference-parameter undeclared";
    pub const REFERENCE_PARAMETER_UNINITIALIZED: &str = "reference-parameter uninitialized";
    pub const TYPE_ERROR_OF_FORMAL_VALUE_PARAMETER: &str = "type-error-of-formal-value-parameter";
    pub const TYPE_ERROR_OF_FORMAL_REFERENCE_PARAMETER: &str =
        "type-error-of-formal-reference-parameter";
    pub const INCOMPATIBLE_BODIES_OF_VALUE_PARAMETERS: &str =
        "incompatible-bodies-of-value-parameters";
    pub const INCOMPATIBLE_BODIES_OF_REFERENCE_PARAMETERS: &str =
        "incompatible-bodies-of-reference-parameters";
    pub const YOKE_NOT_SATISFIED_BY_VAL: &str = "yoke-not-satisfied-by-val";
    pub const YOKE_NOT_SATISFIED_BY_REF: &str = "yoke-not-satisfied-by-ref";
    pub const VALUE_OF_REFERENCE_PARAMETER_UNDEFINED: &str =
        "value-of-reference-parameter-undefined";
    pub const PROCEDURE_NOT_DECLARED: &str = "procedure-not-declared";
    pub const PROCEDURE_NOT_IMPERATIVE: &str = "procedure-not-imperative";
    pub const PROCEDURE_NOT_FUNCTIONAL: &str = "procedure-not-functional";
    pub const PROCEDURE_NAMES_REPEATED: &str = "procedure-names-repeated";
    pub const PROCEDURE_DECLARED: &str = "procedure-declared";
    pub const BODIES_NOT_COHERENT: &str = "bodies-not-coherent";

    pub const ASSERTION_NOT_SATISFIED: &str = "assertion-not-satisfied";
}

/// Tag of a simple body.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Simple {
    Boolean,
    Number,
    Word,
}

impl Simple {
    pub fn name(self) -> &'static str {
        match self {
            Simple::Boolean => "Boolean",
            Simple::Number => "number",
            Simple::Word => "word",
        }
    }
}

/// Structural descriptor of a data.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Body {
    Simple(Simple),
    List(Box<Body>),
    Array(Box<Body>),
    Record(BTreeMap<Identifier, Body>),
}

impl Body {
    pub const BOOLEAN: Body = Body::Simple(Simple::Boolean);
    pub const NUMBER: Body = Body::Simple(Simple::Number);
    pub const WORD: Body = Body::Simple(Simple::Word);

    pub fn list(inner: Body) -> Body {
        Body::List(Box::new(inner))
    }

    pub fn array(inner: Body) -> Body {
        Body::Array(Box::new(inner))
    }

    pub fn record<I: Into<Identifier>>(attrs: impl IntoIterator<Item = (I, Body)>) -> Body {
        Body::Record(attrs.into_iter().map(|(k, v)| (k.into(), v)).collect())
    }

    /// Whether `data` belongs to the clan of this body.
    pub fn admits(&self, data: &Data) -> bool {
        match (self, data) {
            (Body::Simple(Simple::Boolean), Data::Bool(_)) => true,
            (Body::Simple(Simple::Number), Data::Number(_)) => true,
            (Body::Simple(Simple::Word), Data::Word(_)) => true,
            (Body::List(inner), Data::List(items)) => items.iter().all(|d| inner.admits(d)),
            (Body::Array(inner), Data::Array(entries)) => entries.values().all(|d| inner.admits(d)),
            (Body::Record(attrs), Data::Record(entries)) => {
                attrs.len() == entries.len()
                    && attrs
                        .iter()
                        .all(|(k, b)| entries.get(k).is_some_and(|d| b.admits(d)))
            }
            _ => false,
        }
    }

    /// Sort tag: the simple name, or `L`, `A`, `R`.
    pub fn sort(&self) -> &'static str {
        match self {
            Body::Simple(s) => s.name(),
            Body::List(_) => "L",
            Body::Array(_) => "A",
            Body::Record(_) => "R",
        }
    }
}

impl fmt::Display for Body {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Body::Simple(s) => f.write_str(s.name()),
            Body::List(b) => write!(f, "list-of {b}"),
            Body::Array(b) => write!(f, "array-of {b}"),
            Body::Record(attrs) => {
                f.write_str("record-of {")?;
                for (i, (k, b)) in attrs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{k}: {b}")?;
                }
                f.write_str("}")
            }
        }
    }
}

/// Lingua data.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Data {
    Bool(bool),
    Number(Decimal),
    Word(String),
    List(Vec<Data>),
    Array(BTreeMap<Decimal, Data>),
    Record(BTreeMap<Identifier, Data>),
}

/// Raised when a data has no unique body (heterogeneous or empty collections).
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("data has no unique body")]
pub struct NoBody;

impl Data {
    pub fn number(n: i64) -> Data {
        Data::Number(Decimal::from(n))
    }

    pub fn word(w: impl Into<String>) -> Data {
        Data::Word(w.into())
    }

    pub fn is_simple(&self) -> bool {
        matches!(self, Data::Bool(_) | Data::Number(_) | Data::Word(_))
    }

    /// The unique body whose clan contains this data.
    pub fn body(&self) -> Result<Body, NoBody> {
        fn common<'a>(mut items: impl Iterator<Item = &'a Data>) -> Result<Body, NoBody> {
            let first = items.next().ok_or(NoBody)?.body()?;
            for d in items {
                if d.body()? != first {
                    return Err(NoBody);
                }
            }
            Ok(first)
        }
        Ok(match self {
            Data::Bool(_) => Body::BOOLEAN,
            Data::Number(_) => Body::NUMBER,
            Data::Word(_) => Body::WORD,
            Data::List(items) => Body::list(common(items.iter())?),
            Data::Array(entries) => Body::array(common(entries.values())?),
            Data::Record(entries) => Body::Record(
                entries
                    .iter()
                    .map(|(k, d)| Ok((k.clone(), d.body()?)))
                    .collect::<Result<_, NoBody>>()?,
            ),
        })
    }

    /// Numbers truncated toward zero to the fractional-digit limit; all other
    /// data unchanged.
    pub fn round(self, limits: &Limits) -> Data {
        match self {
            Data::Number(n) => Data::Number(n.truncate(limits.max_frac_digits)),
            other => other,
        }
    }

    fn oversized_at(&self, depth: usize, limits: &Limits) -> bool {
        if depth > limits.max_depth {
            return true;
        }
        match self {
            Data::Bool(_) => false,
            Data::Number(n) => {
                n.int_digits() > limits.max_int_digits || n.frac_digits() > limits.max_frac_digits
            }
            Data::Word(w) => w.chars().count() > limits.max_word_len,
            Data::List(items) => {
                items.len() > limits.max_collection
                    || items.iter().any(|d| d.oversized_at(depth + 1, limits))
            }
            Data::Array(entries) => {
                entries.len() > limits.max_collection
                    || entries.values().any(|d| d.oversized_at(depth + 1, limits))
            }
            Data::Record(entries) => {
                entries.len() > limits.max_collection
                    || entries.values().any(|d| d.oversized_at(depth + 1, limits))
            }
        }
    }

    /// Whether this data exceeds any representability limit. Simple data sit
    /// at depth 1; each enclosing collection adds one level.
    pub fn oversized(&self, limits: &Limits) -> bool {
        self.oversized_at(1, limits)
    }
}

fn write_seq<'a, T: fmt::Display + 'a>(
    f: &mut fmt::Formatter<'_>,
    items: impl Iterator<Item = T>,
) -> fmt::Result {
    for (i, item) in items.enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{item}")?;
    }
    Ok(())
}

impl fmt::Display for Data {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Data::Bool(true) => f.write_str("true"),
            Data::Bool(false) => f.write_str("false"),
            Data::Number(n) => write!(f, "{n}"),
            Data::Word(w) => write!(f, "'{w}'"),
            Data::List(items) => {
                f.write_str("list [")?;
                write_seq(f, items.iter())?;
                f.write_str("]")
            }
            Data::Array(entries) => {
                let dense = entries
                    .keys()
                    .enumerate()
                    .all(|(i, k)| *k == Decimal::from(i as i64 + 1));
                if dense {
                    f.write_str("array [")?;
                    write_seq(f, entries.values())?;
                } else {
                    f.write_str("array {")?;
                    write_seq(f, entries.iter().map(|(k, v)| format!("{k}: {v}")))?;
                    f.write_str("}")?;
                    return Ok(());
                }
                f.write_str("]")
            }
            Data::Record(entries) => {
                f.write_str("record {")?;
                write_seq(f, entries.iter().map(|(k, v)| format!("{k}: {v}")))?;
                f.write_str("}")
            }
        }
    }
}

/// A well-structured pair: `body.admits(&data)` holds for every composite
/// built by this crate's constructors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Composite {
    pub data: Data,
    pub body: Body,
}

/// A composite or an abstract error.
pub type CompositeE = Result<Composite, ErrorWord>;

impl Composite {
    pub fn new(data: Data, body: Body) -> Self {
        debug_assert!(body.admits(&data), "ill-structured composite {data} : {body}");
        Composite { data, body }
    }

    pub fn boolean(b: bool) -> Self {
        Composite { data: Data::Bool(b), body: Body::BOOLEAN }
    }

    pub fn number(n: impl Into<Decimal>) -> Self {
        Composite { data: Data::Number(n.into()), body: Body::NUMBER }
    }

    pub fn word(w: impl Into<String>) -> Self {
        Composite { data: Data::Word(w.into()), body: Body::WORD }
    }

    pub fn is_true(&self) -> bool {
        self.data == Data::Bool(true)
    }

    pub fn as_bool(&self) -> Option<bool> {
        match self.data {
            Data::Bool(b) => Some(b),
            _ => None,
        }
    }

    pub fn oversized(&self, limits: &Limits) -> bool {
        self.data.oversized(limits)
    }
}

impl fmt::Display for Composite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.data, self.body)
    }
}

/// Sort of a possibly-erroneous composite: errors are their own sort.
pub fn sort_of(c: &CompositeE) -> String {
    match c {
        Ok(c) => c.body.sort().to_string(),
        Err(e) => e.to_string(),
    }
}

/// Shorthand for `Err(ErrorWord::new(word))`.
pub fn fail<T>(word: &str) -> Result<T, ErrorWord> {
    Err(ErrorWord::new(word))
}
