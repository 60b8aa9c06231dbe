//! Conditions of the validating layer and assertion execution.

use crate::ast::Condition;
use crate::interp::{Abort, Machine, Outcome};
use crate::ops::and_c;
use crate::state::State;
use crate::value::{catalog, fail, Composite, CompositeE, ErrorWord};

fn truth(b: bool) -> CompositeE {
    Ok(Composite::boolean(b))
}

impl Machine {
    /// Evaluates a condition; the result is a composite (normally Boolean) or an error.
    pub fn eval_condition(&mut self, c: &Condition, s: &State) -> Outcome<CompositeE> {
        if let Some(err) = &s.error {
            return Ok(Err(err.clone()));
        }
        Ok(match c {
            Condition::Data(e) => self.eval_exp(e, s)?,
            Condition::True => truth(true),
            Condition::False => truth(false),
            Condition::DefinedD(e) => truth(self.eval_exp(e, s)?.is_ok()),
            Condition::DefinedT(t) => truth(self.eval_typ(t, s).is_ok()),
            Condition::Is(x, t) => {
                let Some(value) = s.vars.get(x) else {
                    return Ok(truth(false));
                };
                match self.eval_typ(t, s) {
                    Err(e) => Err(e),
                    Ok(ty) => truth(value.ty == ty),
                }
            }
            Condition::ConformantWith(x, e) => {
                let Some(value) = s.vars.get(x) else {
                    return Ok(truth(false));
                };
                match self.eval_exp(e, s)? {
                    Err(e) => Err(e),
                    Ok(c) => truth(c.body == value.ty.body),
                }
            }
            Condition::After(ins, inner) => {
                let terminal = self.exec(ins, s.clone())?;
                self.eval_condition(inner, &terminal)?
            }
            Condition::And(a, b) => {
                let ra = self.eval_condition(a, s)?;
                match ra.as_ref().map(Composite::as_bool) {
                    Err(_) => ra,
                    Ok(None) => fail(catalog::BOOLEAN_EXPECTED),
                    Ok(Some(false)) => truth(false),
                    Ok(Some(true)) => and_c(&ra, &self.eval_condition(b, s)?),
                }
            }
            Condition::Or(a, b) => {
                let ra = self.eval_condition(a, s)?;
                match ra.as_ref().map(Composite::as_bool) {
                    Err(_) => ra,
                    Ok(None) => fail(catalog::BOOLEAN_EXPECTED),
                    Ok(Some(true)) => truth(true),
                    Ok(Some(false)) => crate::ops::or_c(&ra, &self.eval_condition(b, s)?),
                }
            }
            Condition::Not(a) => crate::ops::not_c(&self.eval_condition(a, s)?),
            Condition::ForAll(x, _) => return Err(Abort::NotExecutable(format!("for-all {x}"))),
            Condition::Exists(x, _) => return Err(Abort::NotExecutable(format!("exists {x}"))),
        })
    }

    /// `asr c rsa`: identity when the condition is true, otherwise the
    /// assertion error is loaded.
    pub(crate) fn assert(&mut self, c: &Condition, s: State) -> Outcome<State> {
        self.tick()?;
        match self.eval_condition(c, &s)? {
            Ok(r) if r.is_true() => Ok(s),
            _ => Ok(s.load_error(ErrorWord::new(catalog::ASSERTION_NOT_SATISFIED))),
        }
    }
}
