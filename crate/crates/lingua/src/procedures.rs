//! Parameter compatibility, passing actual parameters and returning
//! reference parameters.

use std::collections::{BTreeMap, BTreeSet};

use crate::ast::FormalParam;
use crate::interp::eval_type;
use crate::limits::Limits;
use crate::state::Value;
use crate::types::Type;
use crate::value::{catalog, Composite, ErrorWord, Identifier};

pub type Valuation = BTreeMap<Identifier, Value>;

/// True when some identifier occurs more than once.
pub fn has_repetitions<'a>(ides: impl IntoIterator<Item = &'a Identifier>) -> bool {
    let mut seen = BTreeSet::new();
    ides.into_iter().any(|ide| !seen.insert(ide))
}

/// Checks that can be made without a state: repetitions and list lengths.
pub fn statically_compatible(
    fv: &[FormalParam],
    fr: &[FormalParam],
    av: &[Identifier],
    ar: &[Identifier],
) -> Result<(), ErrorWord> {
    if has_repetitions(fr.iter().chain(fv).map(|p| &p.name)) {
        return Err(ErrorWord::new(catalog::FORMAL_PAR_REPETITIONS));
    }
    if has_repetitions(ar) {
        return Err(ErrorWord::new(catalog::ACTUAL_PAR_REPETITIONS));
    }
    if fv.len() != av.len() || fr.len() != ar.len() {
        return Err(ErrorWord::new(catalog::INCOMPATIBLE_NUMBERS_OF_PARAMETERS));
    }
    Ok(())
}

/// Looks up every actual, requiring it to be declared and initialized.
fn actual_composites(
    actuals: &[Identifier],
    vat: &Valuation,
    undeclared: &str,
    uninitialized: &str,
) -> Result<Vec<Composite>, ErrorWord> {
    let values: Vec<&Value> = actuals
        .iter()
        .map(|a| vat.get(a))
        .collect::<Option<_>>()
        .ok_or_else(|| ErrorWord::new(undeclared))?;
    values
        .into_iter()
        .map(|v| v.composite())
        .collect::<Option<_>>()
        .ok_or_else(|| ErrorWord::new(uninitialized))
}

fn formal_types(
    formals: &[FormalParam],
    types: &BTreeMap<Identifier, Type>,
    word: &str,
) -> Result<Vec<Type>, ErrorWord> {
    formals.iter().map(|p| eval_type(&p.ty, types).map_err(|_| ErrorWord::new(word))).collect()
}

/// Full run-time compatibility check of formal against actual parameters.
pub fn dynamically_compatible(
    fv: &[FormalParam],
    fr: &[FormalParam],
    av: &[Identifier],
    ar: &[Identifier],
    types: &BTreeMap<Identifier, Type>,
    vat: &Valuation,
    limits: &Limits,
) -> Result<(), ErrorWord> {
    statically_compatible(fv, fr, av, ar)?;
    let vals =
        actual_composites(av, vat, catalog::VALUE_PARAMETER_UNDEFINED, catalog::VALUE_PARAMETER_UNINITIALIZED)?;
    let refs = actual_composites(
        ar,
        vat,
        catalog::REFERENCE_PARAMETER_UNDECLARED,
        catalog::REFERENCE_PARAMETER_UNINITIALIZED,
    )?;
    let val_types = formal_types(fv, types, catalog::TYPE_ERROR_OF_FORMAL_VALUE_PARAMETER)?;
    let ref_types = formal_types(fr, types, catalog::TYPE_ERROR_OF_FORMAL_REFERENCE_PARAMETER)?;
    let bodies_match = |tys: &[Type], coms: &[Composite]| tys.iter().zip(coms).all(|(t, c)| t.body == c.body);
    if !bodies_match(&val_types, &vals) {
        return Err(ErrorWord::new(catalog::INCOMPATIBLE_BODIES_OF_VALUE_PARAMETERS));
    }
    if !bodies_match(&ref_types, &refs) {
        return Err(ErrorWord::new(catalog::INCOMPATIBLE_BODIES_OF_REFERENCE_PARAMETERS));
    }
    let yokes_hold = |tys: &[Type], coms: &[Composite]| tys.iter().zip(coms).all(|(t, c)| t.transfer.admits(c, limits));
    if !yokes_hold(&val_types, &vals) {
        return Err(ErrorWord::new(catalog::YOKE_NOT_SATISFIED_BY_VAL));
    }
    if !yokes_hold(&ref_types, &refs) {
        return Err(ErrorWord::new(catalog::YOKE_NOT_SATISFIED_BY_REF));
    }
    Ok(())
}

/// Builds the initial local valuation of a call: formals bound to the
/// current values of their actuals.
pub fn pass_actual(
    fv: &[FormalParam],
    fr: &[FormalParam],
    av: &[Identifier],
    ar: &[Identifier],
    types: &BTreeMap<Identifier, Type>,
    vat: &Valuation,
    limits: &Limits,
) -> Result<Valuation, ErrorWord> {
    dynamically_compatible(fv, fr, av, ar, types, vat, limits)?;
    let bind = |formals: &[FormalParam], actuals: &[Identifier]| {
        formals.iter().zip(actuals).map(|(f, a)| (f.name.clone(), vat[a].clone())).collect::<Vec<_>>()
    };
    let mut local: Valuation = bind(fr, ar).into_iter().collect();
    local.extend(bind(fv, av));
    Ok(local)
}

/// Copies the terminal values of the formal reference parameters back to
/// their actuals in the initial global valuation.
pub fn return_referential(
    fr: &[FormalParam],
    ar: &[Identifier],
    types: &BTreeMap<Identifier, Type>,
    local: &Valuation,
    global: &Valuation,
    limits: &Limits,
) -> Result<Valuation, ErrorWord> {
    dynamically_compatible(&[], fr, &[], ar, types, global, limits)?;
    let terminal: Vec<&Value> = fr
        .iter()
        .map(|f| local.get(&f.name))
        .collect::<Option<_>>()
        .ok_or_else(|| ErrorWord::new(catalog::VALUE_OF_REFERENCE_PARAMETER_UNDEFINED))?;
    let mut updated = global.clone();
    for (actual, value) in ar.iter().zip(terminal) {
        updated.insert(actual.clone(), value.clone());
    }
    Ok(updated)
}
