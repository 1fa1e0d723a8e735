//! Expression trees for the q-series DSL.
//!
//! An [`Expr`] is a closed formula over integer constants, `q`, the Euler
//! products `f_m`, the cubic theta values `alpha(q^k)`, the ring
//! operations, integer powers, and arithmetic-progression extraction
//! (`dissect`). There are no variables or bindings: every formula in
//! scope is closed-form.
//!
//! `Display` pretty-prints with minimal parentheses, and the printer is an
//! exact inverse of the parser: `parse(print(e)) == e` node for node.

use std::fmt;

/// One node of a q-series expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    /// Integer constant.
    Int(i64),
    /// The formal variable `q`.
    Q,
    /// `f_m = prod_{n>=1} (1 - q^{mn})`, `m >= 1`.
    Eta(usize),
    /// `alpha(q^k)`, the cubic theta function at `q^k`, `k >= 1`.
    Alpha(usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    /// Integer power; negative exponents invert.
    Pow(Box<Expr>, i64),
    /// `dissect(inner, m, r)`: the series whose q^n coefficient is the
    /// inner series' q^{mn+r} coefficient.
    Dissect(Box<Expr>, usize, usize),
}

impl Expr {
    pub fn pow(self, exponent: i64) -> Expr {
        Expr::Pow(Box::new(self), exponent)
    }

    pub fn dissect(self, modulus: usize, residue: usize) -> Expr {
        Expr::Dissect(Box::new(self), modulus, residue)
    }
}

impl std::ops::Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        Expr::Add(Box::new(self), Box::new(rhs))
    }
}

impl std::ops::Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        Expr::Sub(Box::new(self), Box::new(rhs))
    }
}

impl std::ops::Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        Expr::Mul(Box::new(self), Box::new(rhs))
    }
}

impl std::ops::Div for Expr {
    type Output = Expr;
    fn div(self, rhs: Expr) -> Expr {
        Expr::Div(Box::new(self), Box::new(rhs))
    }
}

// Printer precedence: additive 1, multiplicative 2, power 3, atoms 4.
// Negative literals print at level 1 so they are parenthesized anywhere a
// bare atom would not reparse to the same node.
fn precedence(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) | Expr::Div(..) => 2,
        Expr::Pow(..) => 3,
        Expr::Int(v) if *v < 0 => 1,
        _ => 4,
    }
}

fn write_prec(e: &Expr, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
    let needs_parens = precedence(e) < min;
    if needs_parens {
        write!(f, "(")?;
    }
    match e {
        Expr::Int(v) => write!(f, "{v}")?,
        Expr::Q => write!(f, "q")?,
        Expr::Eta(m) => write!(f, "f{m}")?,
        Expr::Alpha(1) => write!(f, "alpha(q)")?,
        Expr::Alpha(k) => write!(f, "alpha(q^{k})")?,
        Expr::Add(l, r) => {
            write_prec(l, f, 1)?;
            write!(f, " + ")?;
            write_prec(r, f, 2)?;
        }
        Expr::Sub(l, r) => {
            write_prec(l, f, 1)?;
            write!(f, " - ")?;
            write_prec(r, f, 2)?;
        }
        Expr::Mul(l, r) => {
            write_prec(l, f, 2)?;
            write!(f, "*")?;
            write_prec(r, f, 3)?;
        }
        Expr::Div(l, r) => {
            write_prec(l, f, 2)?;
            write!(f, "/")?;
            write_prec(r, f, 3)?;
        }
        Expr::Pow(base, exponent) => {
            write_prec(base, f, 4)?;
            write!(f, "^{exponent}")?;
        }
        Expr::Dissect(inner, modulus, residue) => {
            write!(f, "dissect(")?;
            write_prec(inner, f, 1)?;
            write!(f, ", {modulus}, {residue})")?;
        }
    }
    if needs_parens {
        write!(f, ")")?;
    }
    Ok(())
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_prec(self, f, 1)
    }
}
