//! Types: a body paired with a yoke, and the type constructors.

use std::fmt;

use crate::limits::Limits;
use crate::transfer::{Transfer, TT};
use crate::value::{catalog, fail, Body, Composite, ErrorWord, Identifier};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Type {
    pub body: Body,
    pub transfer: Transfer,
}

pub type TypeE = Result<Type, ErrorWord>;

impl Type {
    pub fn new(body: Body, transfer: Transfer) -> Self {
        Type { body, transfer }
    }

    pub fn boolean() -> Self {
        Type::new(Body::BOOLEAN, TT)
    }

    pub fn number() -> Self {
        Type::new(Body::NUMBER, TT)
    }

    pub fn word() -> Self {
        Type::new(Body::WORD, TT)
    }

    /// Clan membership: matching body and a satisfied yoke.
    pub fn admits(&self, c: &Composite, limits: &Limits) -> bool {
        c.body == self.body && self.transfer.admits(c, limits)
    }

    pub fn list_of(self) -> Type {
        Type::new(Body::list(self.body), Transfer::AllOnLi(Box::new(self.transfer)))
    }

    pub fn array_of(self) -> Type {
        Type::new(Body::array(self.body), Transfer::AllInAr(Box::new(self.transfer)))
    }

    /// One-attribute record type; the yoke applies to the attribute.
    pub fn record_of(attr: Identifier, ty: Type) -> Type {
        let transfer = Transfer::compose(Transfer::GetRe(attr.clone()), ty.transfer);
        Type::new(Body::Record([(attr, ty.body)].into_iter().collect()), transfer)
    }

    /// Adds an attribute; the old yoke is conjoined with the new attribute's yoke.
    pub fn put_attribute(self, attr: Identifier, ty: Type) -> TypeE {
        let Body::Record(mut attrs) = self.body else {
            return fail(catalog::RECORD_EXPECTED);
        };
        if attrs.contains_key(&attr) {
            return fail(catalog::ATTRIBUTE_NOT_FREE);
        }
        attrs.insert(attr.clone(), ty.body);
        let transfer = Transfer::and(self.transfer, Transfer::compose(Transfer::GetRe(attr), ty.transfer));
        Ok(Type::new(Body::Record(attrs), transfer))
    }

    /// Removes an attribute from the body; the yoke is kept.
    pub fn cut_attribute(self, attr: &Identifier) -> TypeE {
        let Body::Record(mut attrs) = self.body else {
            return fail(catalog::RECORD_EXPECTED);
        };
        if attrs.remove(attr).is_none() {
            return fail(catalog::UNKNOWN_ATTRIBUTE);
        }
        Ok(Type::new(Body::Record(attrs), self.transfer))
    }

    pub fn replace_transfer(self, transfer: Transfer) -> Type {
        Type::new(self.body, transfer)
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} with {}", self.body, self.transfer)
    }
}
