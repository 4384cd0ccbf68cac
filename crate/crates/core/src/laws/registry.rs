//! The algebraic identities under test.

use serde::{Deserialize, Serialize};

use super::expr::build::*;
use super::expr::Expr;
use crate::interval::OperatorKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Element,
    Soft,
}

/// Whether the operands of a soft-level law share one parameter set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParameterMode {
    Shared,
    Mixed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Equal,
    /// Left side is a soft subset of the right side.
    Subset,
}

#[derive(Clone, Debug)]
pub struct Law {
    pub id: String,
    pub level: Level,
    pub parameter_mode: ParameterMode,
    pub arity: usize,
    pub lhs: Expr,
    pub rhs: Expr,
    pub relation: Relation,
}

impl Law {
    pub fn operand_names(&self) -> &'static [&'static str] {
        match self.level {
            Level::Element => &["μ1", "μ2", "μ3"][..self.arity],
            Level::Soft => &["F", "G", "H"][..self.arity],
        }
    }

    pub fn statement(&self) -> String {
        let names = self.operand_names();
        let rel = match self.relation {
            Relation::Equal => "=",
            Relation::Subset => "⊆",
        };
        format!(
            "{} {rel} {}",
            self.lhs.display(names),
            self.rhs.display(names)
        )
    }
}

fn law(
    id: impl Into<String>,
    level: Level,
    parameter_mode: ParameterMode,
    arity: usize,
    lhs: Expr,
    rhs: Expr,
    relation: Relation,
) -> Law {
    Law {
        id: id.into(),
        level,
        parameter_mode,
        arity,
        lhs,
        rhs,
        relation,
    }
}

/// Every registered law, in report order.
pub fn registry() -> Vec<Law> {
    use Level::{Element, Soft};
    use ParameterMode::{Mixed, Shared};
    use Relation::{Equal, Subset};

    let (f, g, h) = (|| v(0), || v(1), || v(2));
    let mut laws = vec![
        law(
            "P2.12.i",
            Element,
            Shared,
            2,
            u(c(f()), c(g())),
            c(i(f(), g())),
            Equal,
        ),
        law(
            "P2.12.ii",
            Element,
            Shared,
            2,
            i(c(f()), c(g())),
            c(u(f(), g())),
            Equal,
        ),
        law("P3.5.i", Soft, Shared, 1, u(f(), f()), f(), Equal),
        law("P3.5.ii", Soft, Shared, 1, i(f(), f()), f(), Equal),
        law(
            "P3.5.iii",
            Soft,
            Shared,
            1,
            u(f(), Expr::Empty(0)),
            f(),
            Equal,
        ),
        law(
            "P3.5.iv",
            Soft,
            Shared,
            1,
            i(f(), Expr::Empty(0)),
            Expr::Empty(0),
            Equal,
        ),
        law(
            "P3.5.v",
            Soft,
            Shared,
            1,
            u(f(), Expr::Full(0)),
            Expr::Full(0),
            Equal,
        ),
        law(
            "P3.5.vi",
            Soft,
            Shared,
            1,
            i(f(), Expr::Full(0)),
            f(),
            Equal,
        ),
        law(
            "P3.6.i",
            Soft,
            Shared,
            2,
            c(u(f(), g())),
            i(c(f()), c(g())),
            Equal,
        ),
        law(
            "P3.6.ii",
            Soft,
            Shared,
            2,
            c(i(f(), g())),
            u(c(f()), c(g())),
            Equal,
        ),
        law(
            "P3.7.i",
            Soft,
            Mixed,
            2,
            i(c(f()), c(g())),
            c(u(f(), g())),
            Subset,
        ),
        law(
            "P3.7.ii",
            Soft,
            Mixed,
            2,
            c(i(f(), g())),
            u(c(f()), c(g())),
            Subset,
        ),
        law(
            "P3.7.iii",
            Soft,
            Mixed,
            2,
            i(c(f()), c(g())),
            c(i(f(), g())),
            Subset,
        ),
        law(
            "P3.7.iv",
            Soft,
            Mixed,
            2,
            c(u(f(), g())),
            u(c(f()), c(g())),
            Subset,
        ),
    ];
    for (prefix, mode) in [("P3.8", Mixed), ("P3.9", Shared)] {
        let id = |s: &str| format!("{prefix}.{s}");
        laws.extend([
            law(id("i"), Soft, mode, 2, u(f(), g()), u(g(), f()), Equal),
            law(id("ii"), Soft, mode, 2, i(f(), g()), i(g(), f()), Equal),
            law(
                id("iii"),
                Soft,
                mode,
                3,
                u(f(), u(g(), h())),
                u(u(f(), g()), h()),
                Equal,
            ),
            law(
                id("iv"),
                Soft,
                mode,
                3,
                i(f(), i(g(), h())),
                i(i(f(), g()), h()),
                Equal,
            ),
        ]);
    }
    for (prefix, mode) in [("P3.10", Shared), ("P3.11", Mixed)] {
        let id = |s: &str| format!("{prefix}.{s}");
        laws.extend([
            law(
                id("i"),
                Soft,
                mode,
                3,
                u(f(), i(g(), h())),
                i(u(f(), g()), u(f(), h())),
                Equal,
            ),
            law(
                id("ii"),
                Soft,
                mode,
                3,
                i(f(), u(g(), h())),
                u(i(f(), g()), i(f(), h())),
                Equal,
            ),
        ]);
    }
    let members = |wrap: fn(Expr) -> Expr| vec![wrap(f()), wrap(g()), wrap(h())];
    let plain: fn(Expr) -> Expr = |e| e;
    for (prefix, mode, relation) in [("P3.16", Mixed, Subset), ("P3.17", Shared, Equal)] {
        let id = |s: &str| format!("{prefix}.{s}");
        laws.extend([
            law(
                id("i"),
                Soft,
                mode,
                3,
                fi(members(c)),
                c(fu(members(plain))),
                relation,
            ),
            law(
                id("ii"),
                Soft,
                mode,
                3,
                c(fi(members(plain))),
                fu(members(c)),
                relation,
            ),
        ]);
    }
    for (n, k) in (2..).zip(OperatorKind::ALL) {
        let id = |s: &str| format!("P4.{n}.{s}");
        let o = |a, b| op(k, a, b);
        laws.extend([
            law(
                id("i"),
                Element,
                Shared,
                2,
                i(rs(f(), g()), o(f(), g())),
                o(f(), g()),
                Equal,
            ),
            law(
                id("ii"),
                Element,
                Shared,
                2,
                u(rs(f(), g()), o(f(), g())),
                rs(f(), g()),
                Equal,
            ),
            law(
                id("iii"),
                Element,
                Shared,
                2,
                i(rp(f(), g()), o(f(), g())),
                o(f(), g()),
                Equal,
            ),
            law(
                id("iv"),
                Element,
                Shared,
                2,
                u(rp(f(), g()), o(f(), g())),
                rp(f(), g()),
                Equal,
            ),
            law(
                id("v"),
                Element,
                Shared,
                3,
                o(u(f(), g()), h()),
                u(o(f(), h()), o(g(), h())),
                Equal,
            ),
            law(
                id("vi"),
                Element,
                Shared,
                3,
                o(i(f(), g()), h()),
                i(o(f(), h()), o(g(), h())),
                Equal,
            ),
        ]);
    }
    laws
}

pub fn find(id: &str) -> Option<Law> {
    registry().into_iter().find(|l| l.id == id)
}
