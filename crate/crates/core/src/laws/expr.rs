//! Law sides as small expression trees, evaluated on elements or soft sets.

use std::borrow::Cow;
use std::fmt;

use smallvec::SmallVec;

use crate::element::{self, Intervals, Ivhfe, Semantics, SetOp};
use crate::error::Result;
use crate::interval::{
    operator_kernel, ring_product_kernel, ring_sum_kernel, OperatorKind, UnitInterval,
};
use crate::soft::{self, IvhfSoftSet};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Var(usize),
    /// Empty element, or the empty soft set shaped like operand `i`.
    Empty(usize),
    /// Full element, or the full soft set shaped like operand `i`.
    Full(usize),
    Complement(Box<Expr>),
    Union(Box<Expr>, Box<Expr>),
    Intersection(Box<Expr>, Box<Expr>),
    RingSum(Box<Expr>, Box<Expr>),
    RingProduct(Box<Expr>, Box<Expr>),
    Operator(OperatorKind, Box<Expr>, Box<Expr>),
    FamilyUnion(Vec<Expr>),
    FamilyIntersection(Vec<Expr>),
}

pub mod build {
    use super::Expr;
    use crate::interval::OperatorKind;

    pub fn v(i: usize) -> Expr {
        Expr::Var(i)
    }
    pub fn c(a: Expr) -> Expr {
        Expr::Complement(Box::new(a))
    }
    pub fn u(a: Expr, b: Expr) -> Expr {
        Expr::Union(Box::new(a), Box::new(b))
    }
    pub fn i(a: Expr, b: Expr) -> Expr {
        Expr::Intersection(Box::new(a), Box::new(b))
    }
    pub fn rs(a: Expr, b: Expr) -> Expr {
        Expr::RingSum(Box::new(a), Box::new(b))
    }
    pub fn rp(a: Expr, b: Expr) -> Expr {
        Expr::RingProduct(Box::new(a), Box::new(b))
    }
    pub fn op(k: OperatorKind, a: Expr, b: Expr) -> Expr {
        Expr::Operator(k, Box::new(a), Box::new(b))
    }
    pub fn fu(xs: Vec<Expr>) -> Expr {
        Expr::FamilyUnion(xs)
    }
    pub fn fi(xs: Vec<Expr>) -> Expr {
        Expr::FamilyIntersection(xs)
    }
}

impl Expr {
    /// Evaluates on one interval per operand.
    pub fn eval_interval(&self, xs: &[UnitInterval]) -> UnitInterval {
        match self {
            Expr::Var(i) => xs[*i],
            Expr::Empty(_) => UnitInterval::ZERO,
            Expr::Full(_) => UnitInterval::ONE,
            Expr::Complement(a) => a.eval_interval(xs).complement(),
            Expr::Union(a, b) => a.eval_interval(xs).join(&b.eval_interval(xs)),
            Expr::Intersection(a, b) => a.eval_interval(xs).meet(&b.eval_interval(xs)),
            Expr::RingSum(a, b) => ring_sum_kernel(&a.eval_interval(xs), &b.eval_interval(xs)),
            Expr::RingProduct(a, b) => {
                ring_product_kernel(&a.eval_interval(xs), &b.eval_interval(xs))
            }
            Expr::Operator(k, a, b) => {
                operator_kernel(*k, &a.eval_interval(xs), &b.eval_interval(xs))
            }
            Expr::FamilyUnion(es) => es
                .iter()
                .map(|e| e.eval_interval(xs))
                .reduce(|a, b| a.join(&b))
                .expect("families are nonempty"),
            Expr::FamilyIntersection(es) => es
                .iter()
                .map(|e| e.eval_interval(xs))
                .reduce(|a, b| a.meet(&b))
                .expect("families are nonempty"),
        }
    }

    /// Evaluates once per choice of one interval from each operand and
    /// collects the distinct results.
    pub fn eval_lifted(&self, operands: &[&Ivhfe]) -> Ivhfe {
        let sizes: SmallVec<[usize; 4]> = operands.iter().map(|e| e.len()).collect();
        let mut idx: SmallVec<[usize; 4]> = smallvec::smallvec![0; operands.len()];
        let mut pick: SmallVec<[UnitInterval; 4]> =
            operands.iter().map(|e| e.intervals()[0]).collect();
        let mut out: Intervals = SmallVec::new();
        loop {
            out.push(self.eval_interval(&pick));
            // odometer increment
            let mut k = 0;
            loop {
                if k == operands.len() {
                    return dedup_element(out);
                }
                idx[k] += 1;
                if idx[k] < sizes[k] {
                    pick[k] = operands[k].intervals()[idx[k]];
                    break;
                }
                idx[k] = 0;
                pick[k] = operands[k].intervals()[0];
                k += 1;
            }
        }
    }

    /// Evaluates with the element operations, composing intermediate elements.
    pub fn eval_element(&self, operands: &[&Ivhfe], sem: Semantics) -> Ivhfe {
        let go = |e: &Expr| e.eval_element(operands, sem);
        match self {
            Expr::Var(i) => operands[*i].clone(),
            Expr::Empty(_) => Ivhfe::empty(),
            Expr::Full(_) => Ivhfe::full(),
            Expr::Complement(a) => go(a).complement(),
            Expr::Union(a, b) => element::combine(&go(a), &go(b), SetOp::Union, sem),
            Expr::Intersection(a, b) => element::combine(&go(a), &go(b), SetOp::Intersection, sem),
            Expr::RingSum(a, b) => element::ring_sum(&go(a), &go(b)),
            Expr::RingProduct(a, b) => element::ring_product(&go(a), &go(b)),
            Expr::Operator(k, a, b) => element::apply_operator(*k, &go(a), &go(b)),
            Expr::FamilyUnion(es) => es
                .iter()
                .map(go)
                .reduce(|a, b| element::union(&a, &b, sem))
                .expect("families are nonempty"),
            Expr::FamilyIntersection(es) => es
                .iter()
                .map(go)
                .reduce(|a, b| element::intersection(&a, &b, sem))
                .expect("families are nonempty"),
        }
    }

    /// Evaluates with the soft-set operations. Errors (such as an empty
    /// parameter intersection) mean the side is undefined for these operands.
    pub fn eval_soft(&self, operands: &[&IvhfSoftSet], sem: Semantics) -> Result<IvhfSoftSet> {
        self.eval_soft_ref(operands, sem).map(Cow::into_owned)
    }

    fn eval_soft_ref<'a>(
        &self,
        operands: &[&'a IvhfSoftSet],
        sem: Semantics,
    ) -> Result<Cow<'a, IvhfSoftSet>> {
        let go = |e: &Expr| e.eval_soft_ref(operands, sem);
        Ok(Cow::Owned(match self {
            Expr::Var(i) => return Ok(Cow::Borrowed(operands[*i])),
            Expr::Empty(i) => soft::empty_like(operands[*i]),
            Expr::Full(i) => soft::full_like(operands[*i]),
            Expr::Complement(a) => soft::soft_complement(&*go(a)?),
            Expr::Union(a, b) => soft::soft_union(&*go(a)?, &*go(b)?, sem)?,
            Expr::Intersection(a, b) => soft::soft_intersection(&*go(a)?, &*go(b)?, sem)?,
            Expr::RingSum(a, b) => soft::soft_ring_sum(&*go(a)?, &*go(b)?)?,
            Expr::RingProduct(a, b) => soft::soft_ring_product(&*go(a)?, &*go(b)?)?,
            Expr::Operator(k, a, b) => soft::soft_apply_operator(*k, &*go(a)?, &*go(b)?)?,
            Expr::FamilyUnion(es) => {
                let members = es.iter().map(go).collect::<Result<Vec<_>>>()?;
                soft::family_union(members.iter().map(|m| &**m), sem)?
            }
            Expr::FamilyIntersection(es) => {
                let members = es.iter().map(go).collect::<Result<Vec<_>>>()?;
                soft::family_intersection(members.iter().map(|m| &**m), sem)?
            }
        }))
    }

    /// Renders with the given operand names.
    pub fn display<'a>(&'a self, names: &'a [&'a str]) -> impl fmt::Display + 'a {
        Shown {
            expr: self,
            names,
            top: true,
        }
    }
}

fn dedup_element(items: Intervals) -> Ivhfe {
    Ivhfe::from_unsorted(items).dedup()
}

struct Shown<'a> {
    expr: &'a Expr,
    names: &'a [&'a str],
    top: bool,
}

impl Shown<'_> {
    fn sub<'b>(&'b self, expr: &'b Expr) -> Shown<'b> {
        Shown {
            expr,
            names: self.names,
            top: false,
        }
    }

    fn binary(&self, f: &mut fmt::Formatter<'_>, a: &Expr, sym: &str, b: &Expr) -> fmt::Result {
        if self.top {
            write!(f, "{} {sym} {}", self.sub(a), self.sub(b))
        } else {
            write!(f, "({} {sym} {})", self.sub(a), self.sub(b))
        }
    }
}

impl fmt::Display for Shown<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.expr {
            Expr::Var(i) => f.write_str(self.names[*i]),
            Expr::Empty(_) => f.write_str("∅"),
            Expr::Full(_) => f.write_str("E"),
            Expr::Complement(a) => write!(f, "{}ᶜ", self.sub(a)),
            Expr::Union(a, b) => self.binary(f, a, "∪", b),
            Expr::Intersection(a, b) => self.binary(f, a, "∩", b),
            Expr::RingSum(a, b) => self.binary(f, a, "⊕", b),
            Expr::RingProduct(a, b) => self.binary(f, a, "⊗", b),
            Expr::Operator(k, a, b) => self.binary(f, a, &k.name().to_uppercase(), b),
            Expr::FamilyUnion(es) | Expr::FamilyIntersection(es) => {
                let sym = if matches!(self.expr, Expr::FamilyUnion(_)) {
                    "⋃"
                } else {
                    "⋂"
                };
                write!(f, "{sym}{{")?;
                for (n, e) in es.iter().enumerate() {
                    if n > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{}", self.sub(e))?;
                }
                f.write_str("}")
            }
        }
    }
}
