//! Abstract syntax of Lingua programs, specinstructions and conditions.

use crate::number::Decimal;
use crate::transfer::Transfer;
use crate::value::Identifier;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinOp {
    And,
    Or,
    Equal,
    Less,
    Leq,
    Add,
    Subtract,
    Multiply,
    Divide,
    Glue,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::And => "and",
            BinOp::Or => "or",
            BinOp::Equal => "=",
            BinOp::Less => "<",
            BinOp::Leq => "<=",
            BinOp::Add => "+",
            BinOp::Subtract => "-",
            BinOp::Multiply => "*",
            BinOp::Divide => "/",
            BinOp::Glue => "glue",
        }
    }
}

/// Data expressions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DatExp {
    Bool(bool),
    Num(Decimal),
    Word(String),
    Var(Identifier),
    Not(Box<DatExp>),
    Binary(BinOp, Box<DatExp>, Box<DatExp>),
    List(Box<DatExp>),
    /// `push elem on list ee`
    Push(Box<DatExp>, Box<DatExp>),
    Top(Box<DatExp>),
    Pop(Box<DatExp>),
    Array(Box<DatExp>),
    /// `add-to-arr array new elem ee`
    AddToArr(Box<DatExp>, Box<DatExp>),
    /// `change-arr array at index by elem ee`
    ChangeArr(Box<DatExp>, Box<DatExp>, Box<DatExp>),
    /// `arr array at index ee`
    Arr(Box<DatExp>, Box<DatExp>),
    /// `record attr of-value value ee`
    Record(Identifier, Box<DatExp>),
    /// `add-attr attr of-value value to record ee`
    AddAttr(Identifier, Box<DatExp>, Box<DatExp>),
    /// `rec record at attr ee`
    Rec(Box<DatExp>, Identifier),
    /// `remove-attr attr from record ee`
    RemoveAttr(Identifier, Box<DatExp>),
    /// `change-rec record at attr by value ee`
    ChangeRec(Box<DatExp>, Identifier, Box<DatExp>),
    If(Box<DatExp>, Box<DatExp>, Box<DatExp>),
    /// Functional-procedure call with value actuals.
    Call(Identifier, Vec<Identifier>),
}

impl DatExp {
    pub fn var(name: &str) -> DatExp {
        DatExp::Var(Identifier::new(name))
    }

    pub fn num(n: i64) -> DatExp {
        DatExp::Num(Decimal::from(n))
    }

    pub fn bin(op: BinOp, a: DatExp, b: DatExp) -> DatExp {
        DatExp::Binary(op, Box::new(a), Box::new(b))
    }
}

/// Type expressions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TypExp {
    Boolean,
    Number,
    Word,
    Named(Identifier),
    ListType(Box<TypExp>),
    ArrayType(Box<TypExp>),
    /// `record-type attr as T ee`
    RecordType(Identifier, Box<TypExp>),
    /// `expand-record-type T at attr by T ee`
    ExpandRecord(Box<TypExp>, Identifier, Box<TypExp>),
    /// `reduce-record-type T at attr ee`
    ReduceRecord(Box<TypExp>, Identifier),
    /// `replace-transfer-in T by transfer ee`
    ReplaceTransfer(Box<TypExp>, Transfer),
}

/// Instructions, including assertions (specinstructions).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instruction {
    Assign(Identifier, DatExp),
    /// `yoke x := transfer`
    Yoke(Identifier, Transfer),
    Skip,
    If(DatExp, Box<Instruction>, Box<Instruction>),
    IfError(DatExp, Box<Instruction>),
    While(DatExp, Box<Instruction>),
    Seq(Box<Instruction>, Box<Instruction>),
    Call { proc: Identifier, vals: Vec<Identifier>, refs: Vec<Identifier> },
    Assert(Condition),
}

impl Instruction {
    /// Right-nested sequence of the given instructions (`skip` when empty).
    pub fn seq(items: impl IntoIterator<Item = Instruction>) -> Instruction {
        let items: Vec<Instruction> = items.into_iter().collect();
        let mut iter = items.into_iter().rev();
        let Some(mut acc) = iter.next() else {
            return Instruction::Skip;
        };
        for item in iter {
            acc = Instruction::Seq(Box::new(item), Box::new(acc));
        }
        acc
    }

    /// Atomic instructions: assignments, yoke assignments, calls and `skip`.
    pub fn is_atomic(&self) -> bool {
        matches!(
            self,
            Instruction::Assign(..) | Instruction::Yoke(..) | Instruction::Call { .. } | Instruction::Skip
        )
    }

    /// Flattens nested sequences into their components, left to right.
    pub fn components(&self) -> Vec<&Instruction> {
        match self {
            Instruction::Seq(a, b) => {
                let mut v = a.components();
                v.extend(b.components());
                v
            }
            other => vec![other],
        }
    }

    /// Removes every assertion; a lone assertion becomes `skip`.
    pub fn erase_assertions(&self) -> Instruction {
        match self {
            Instruction::Assert(_) => Instruction::Skip,
            Instruction::Seq(..) => {
                let kept: Vec<Instruction> = self
                    .components()
                    .into_iter()
                    .filter(|i| !matches!(i, Instruction::Assert(_)))
                    .map(|i| i.erase_assertions())
                    .collect();
                Instruction::seq(kept)
            }
            Instruction::If(g, a, b) => {
                Instruction::If(g.clone(), Box::new(a.erase_assertions()), Box::new(b.erase_assertions()))
            }
            Instruction::IfError(g, h) => Instruction::IfError(g.clone(), Box::new(h.erase_assertions())),
            Instruction::While(g, b) => Instruction::While(g.clone(), Box::new(b.erase_assertions())),
            other => other.clone(),
        }
    }
}

/// Conditions of the validating layer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Condition {
    Data(DatExp),
    True,
    False,
    DefinedD(DatExp),
    DefinedT(TypExp),
    Is(Identifier, TypExp),
    ConformantWith(Identifier, DatExp),
    /// `[ins @ con]`: the condition evaluated after running the instruction.
    After(Box<Instruction>, Box<Condition>),
    And(Box<Condition>, Box<Condition>),
    Or(Box<Condition>, Box<Condition>),
    Not(Box<Condition>),
    ForAll(Identifier, Box<Condition>),
    Exists(Identifier, Box<Condition>),
}

impl Condition {
    /// Conjunction that stays a data expression when both sides are data.
    pub fn and(a: Condition, b: Condition) -> Condition {
        match (a, b) {
            (Condition::Data(x), Condition::Data(y)) => Condition::Data(DatExp::bin(BinOp::And, x, y)),
            (a, b) => Condition::And(Box::new(a), Box::new(b)),
        }
    }

    pub fn or(a: Condition, b: Condition) -> Condition {
        match (a, b) {
            (Condition::Data(x), Condition::Data(y)) => Condition::Data(DatExp::bin(BinOp::Or, x, y)),
            (a, b) => Condition::Or(Box::new(a), Box::new(b)),
        }
    }

    pub fn not(a: Condition) -> Condition {
        match a {
            Condition::Data(x) => Condition::Data(DatExp::Not(Box::new(x))),
            a => Condition::Not(Box::new(a)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalParam {
    pub name: Identifier,
    pub ty: TypExp,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProcDecl {
    pub name: Identifier,
    pub vals: Vec<FormalParam>,
    pub refs: Vec<FormalParam>,
    pub body: Program,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunDecl {
    pub name: Identifier,
    pub params: Vec<FormalParam>,
    pub body: Program,
    pub result: DatExp,
    pub result_ty: TypExp,
}

/// Preamble items.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decl {
    Skip,
    Var(Identifier, TypExp),
    Type(Identifier, TypExp),
    Proc(ProcDecl),
    MultiProc(Vec<ProcDecl>),
    Fun(FunDecl),
}

/// A preamble (possibly empty, i.e. trivial) followed by an instruction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Program {
    pub preamble: Vec<Decl>,
    pub body: Instruction,
}

impl Program {
    pub fn new(preamble: Vec<Decl>, body: Instruction) -> Self {
        Program { preamble, body }
    }

    pub fn erase_assertions(&self) -> Program {
        let preamble = self
            .preamble
            .iter()
            .map(|d| match d {
                Decl::Proc(p) => Decl::Proc(p.erase_assertions()),
                Decl::MultiProc(ps) => Decl::MultiProc(ps.iter().map(ProcDecl::erase_assertions).collect()),
                Decl::Fun(f) => Decl::Fun(FunDecl { body: f.body.erase_assertions(), ..f.clone() }),
                other => other.clone(),
            })
            .collect();
        Program { preamble, body: self.body.erase_assertions() }
    }
}

impl ProcDecl {
    fn erase_assertions(&self) -> ProcDecl {
        ProcDecl { body: self.body.erase_assertions(), ..self.clone() }
    }
}
