//! Text form of cobordisms built from caps, cylinders and pants.
//!
//! ```text
//! expr := leaf | "glue(" expr "," nat "," expr "," nat ")" | "selfglue(" expr "," nat "," nat ")"
//! leaf := ("cap(" sign ")" | "cyl" | "pants(" sign sign sign ")") "@(" int "," int ")"
//! ```
//!
//! Signs inside `pants(...)` may be separated by commas. A `-` boundary is an
//! input, a `+` boundary an output. `glue(E, i, F, j)` attaches the i-th output
//! of `E` to the j-th input of `F`; `selfglue(E, i, j)` attaches the i-th
//! output of `E` to its own j-th input. Indices count from 1.

use std::fmt;

use super::{change_basis, glue, self_glue, tensor_with_slots, Basis, CobordismSignature, SemisimpleData, Tensor, Variance};
use crate::error::{Error, Result};
use crate::exactalg::Scalar;

/// Orientation of a boundary circle.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn variance(self) -> Variance {
        match self {
            Sign::Minus => Variance::Lower,
            Sign::Plus => Variance::Upper,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Minus => '-',
            Sign::Plus => '+',
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum CobordismExpr {
    Cap { sign: Sign, k1: i64, k2: i64 },
    Cyl { k1: i64, k2: i64 },
    Pants { signs: [Sign; 3], k1: i64, k2: i64 },
    /// Indices are 1-based, as written.
    Glue { left: Box<CobordismExpr>, out: usize, right: Box<CobordismExpr>, input: usize },
    SelfGlue { inner: Box<CobordismExpr>, out: usize, input: usize },
}

fn nth_of(slots: &[Variance], var: Variance, i: usize) -> Option<usize> {
    slots.iter().enumerate().filter(|(_, v)| **v == var).nth(i).map(|(p, _)| p)
}

impl CobordismExpr {
    /// Variances of the boundary circles, in the order the evaluated tensor
    /// lists its slots.
    pub fn boundary(&self) -> Vec<Variance> {
        match self {
            CobordismExpr::Cap { sign, .. } => vec![sign.variance()],
            CobordismExpr::Cyl { .. } => vec![Variance::Lower, Variance::Upper],
            CobordismExpr::Pants { signs, .. } => signs.iter().map(|s| s.variance()).collect(),
            CobordismExpr::Glue { left, out, right, input } => {
                let mut l = left.boundary();
                let mut r = right.boundary();
                if let Some(p) = nth_of(&l, Variance::Upper, out - 1) {
                    l.remove(p);
                }
                if let Some(p) = nth_of(&r, Variance::Lower, input - 1) {
                    r.remove(p);
                }
                l.extend(r);
                l
            }
            CobordismExpr::SelfGlue { inner, out, input } => {
                let b = inner.boundary();
                let a = nth_of(&b, Variance::Upper, out - 1);
                let c = nth_of(&b, Variance::Lower, input - 1);
                b.iter().enumerate().filter(|(p, _)| Some(*p) != a && Some(*p) != c).map(|(_, v)| *v).collect()
            }
        }
    }

    pub fn genus(&self) -> u32 {
        match self {
            CobordismExpr::Glue { left, right, .. } => left.genus() + right.genus(),
            CobordismExpr::SelfGlue { inner, .. } => inner.genus() + 1,
            _ => 0,
        }
    }

    /// Componentwise sum of leaf levels.
    pub fn levels(&self) -> (i64, i64) {
        match self {
            CobordismExpr::Cap { k1, k2, .. } | CobordismExpr::Cyl { k1, k2 } | CobordismExpr::Pants { k1, k2, .. } => {
                (*k1, *k2)
            }
            CobordismExpr::Glue { left, right, .. } => {
                let (a, b) = left.levels();
                let (c, d) = right.levels();
                (a + c, b + d)
            }
            CobordismExpr::SelfGlue { inner, .. } => inner.levels(),
        }
    }

    pub fn signature(&self) -> CobordismSignature {
        let b = self.boundary();
        let m = b.iter().filter(|v| **v == Variance::Lower).count();
        let (k1, k2) = self.levels();
        CobordismSignature::new(self.genus(), k1, k2, m, b.len() - m)
    }

    /// Pretty-printed form; parses back to the same tree.
    pub fn print(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for CobordismExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CobordismExpr::Cap { sign, k1, k2 } => write!(f, "cap({})@({k1},{k2})", sign.symbol()),
            CobordismExpr::Cyl { k1, k2 } => write!(f, "cyl@({k1},{k2})"),
            CobordismExpr::Pants { signs, k1, k2 } => write!(
                f,
                "pants({},{},{})@({k1},{k2})",
                signs[0].symbol(),
                signs[1].symbol(),
                signs[2].symbol()
            ),
            CobordismExpr::Glue { left, out, right, input } => write!(f, "glue({left}, {out}, {right}, {input})"),
            CobordismExpr::SelfGlue { inner, out, input } => write!(f, "selfglue({inner}, {out}, {input})"),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let t = self.rest();
        self.pos += t.len() - t.trim_start().len();
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::parse(self.pos, msg))
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            self.err(format!("expected `{tok}`"))
        }
    }

    fn minus(&mut self) -> bool {
        self.eat("-") || self.eat("\u{2212}")
    }

    fn sign(&mut self) -> Result<Sign> {
        if self.minus() {
            Ok(Sign::Minus)
        } else if self.eat("+") {
            Ok(Sign::Plus)
        } else {
            self.err("expected `+` or `-`")
        }
    }

    fn digits(&mut self) -> Result<(usize, u64)> {
        self.skip_ws();
        let start = self.pos;
        let len = self.rest().bytes().take_while(|b| b.is_ascii_digit()).count();
        if len == 0 {
            return self.err("expected a number");
        }
        self.pos += len;
        match self.src[start..self.pos].parse() {
            Ok(v) => Ok((start, v)),
            Err(_) => Err(Error::parse(start, "number out of range")),
        }
    }

    fn int(&mut self) -> Result<i64> {
        let neg = self.minus();
        let (start, v) = self.digits()?;
        let v = i64::try_from(v).map_err(|_| Error::parse(start, "number out of range"))?;
        Ok(if neg { -v } else { v })
    }

    fn levels(&mut self) -> Result<(i64, i64)> {
        self.skip_ws();
        if !self.eat("@") {
            return self.err("missing level annotation `@(k1,k2)`");
        }
        self.expect("(")?;
        let a = self.int()?;
        self.expect(",")?;
        let b = self.int()?;
        self.expect(")")?;
        Ok((a, b))
    }

    /// A 1-based index that must select an existing boundary of kind `var`.
    fn index(&mut self, boundary: &[Variance], var: Variance) -> Result<usize> {
        let (start, i) = self.digits()?;
        let count = boundary.iter().filter(|v| **v == var).count();
        let kind = if var == Variance::Upper { "output" } else { "input" };
        if i == 0 {
            return Err(Error::parse(start, "boundary indices count from 1"));
        }
        if i as usize > count {
            return Err(Error::parse(start, format!("no {kind} number {i}: the subterm has {count} {kind}(s)")));
        }
        Ok(i as usize)
    }

    fn expr(&mut self) -> Result<CobordismExpr> {
        self.skip_ws();
        if self.eat("glue(") {
            let left = self.expr()?;
            self.expect(",")?;
            let out = self.index(&left.boundary(), Variance::Upper)?;
            self.expect(",")?;
            let right = self.expr()?;
            self.expect(",")?;
            let input = self.index(&right.boundary(), Variance::Lower)?;
            self.expect(")")?;
            Ok(CobordismExpr::Glue { left: Box::new(left), out, right: Box::new(right), input })
        } else if self.eat("selfglue(") {
            let inner = self.expr()?;
            let b = inner.boundary();
            self.expect(",")?;
            let out = self.index(&b, Variance::Upper)?;
            self.expect(",")?;
            let input = self.index(&b, Variance::Lower)?;
            self.expect(")")?;
            Ok(CobordismExpr::SelfGlue { inner: Box::new(inner), out, input })
        } else if self.eat("cap(") {
            let sign = self.sign()?;
            self.expect(")")?;
            let (k1, k2) = self.levels()?;
            Ok(CobordismExpr::Cap { sign, k1, k2 })
        } else if self.eat("cyl") {
            let (k1, k2) = self.levels()?;
            Ok(CobordismExpr::Cyl { k1, k2 })
        } else if self.eat("pants(") {
            let a = self.sign()?;
            self.eat(",");
            let b = self.sign()?;
            self.eat(",");
            let c = self.sign()?;
            self.expect(")")?;
            let (k1, k2) = self.levels()?;
            Ok(CobordismExpr::Pants { signs: [a, b, c], k1, k2 })
        } else {
            self.err("expected `glue(`, `selfglue(`, `cap(`, `cyl` or `pants(`")
        }
    }
}

/// Parse one cobordism expression. Errors carry the byte offset of the
/// offending token.
pub fn parse_cobordism(text: &str) -> Result<CobordismExpr> {
    let mut p = Parser { src: text, pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != text.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Evaluate by building leaf tensors and gluing them, in the requested basis.
pub fn evaluate<S: Scalar>(expr: &CobordismExpr, ss: &SemisimpleData<S>, basis: Basis) -> Result<Tensor<S>> {
    match expr {
        CobordismExpr::Cap { k1, k2, .. } | CobordismExpr::Cyl { k1, k2 } | CobordismExpr::Pants { k1, k2, .. } => {
            let t = tensor_with_slots(0, *k1, *k2, &expr.boundary(), ss)?;
            change_basis(&t, ss, basis)
        }
        CobordismExpr::Glue { left, out, right, input } => {
            let (l, r) = rayon::join(|| evaluate(left, ss, basis), || evaluate(right, ss, basis));
            glue(&l?, out - 1, &r?, input - 1)
        }
        CobordismExpr::SelfGlue { inner, out, input } => self_glue(&evaluate(inner, ss, basis)?, out - 1, input - 1),
    }
}

/// Compare the glued evaluation with the tensor of the composite signature,
/// in both bases.
pub fn check_functoriality<S: Scalar>(expr: &CobordismExpr, ss: &SemisimpleData<S>) -> Result<bool> {
    let sig = expr.signature();
    let direct = tensor_with_slots(sig.g, sig.k1, sig.k2, &expr.boundary(), ss)?;
    for basis in [Basis::Rho, Basis::Eta] {
        if evaluate(expr, ss, basis)? != change_basis(&direct, ss, basis)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, BigRational};
    use crate::tqftcore::{dijkgraaf_data, tensor_of};

    #[test]
    fn capped_pants_is_the_pairing() {
        let e = parse_cobordism("glue(pants(-,-,+)@(0,0), 1, cap(-)@(0,0), 1)").unwrap();
        assert_eq!(e.signature(), CobordismSignature::new(0, 0, 0, 2, 0));
        let ss = dijkgraaf_data(3).unwrap();
        let t = evaluate(&e, &ss, Basis::Eta).unwrap();
        for (i, eta) in ss.eta_labels.iter().enumerate() {
            for j in 0..ss.rank() {
                let want = if i == j { BigRational::from_integer(1.into()) / BigRational::from_integer(eta.zeta()) } else { rat(0, 1) };
                assert_eq!(t.get(&[i, j]), want);
            }
        }
    }

    #[test]
    fn level_cylinder_is_mu() {
        let e = parse_cobordism("cyl@(\u{2212}1,0)").unwrap();
        let mut ss = dijkgraaf_data(3).unwrap();
        ss.mu = (1..=3).map(|k| rat(k, 1)).collect();
        let t = evaluate(&e, &ss, Basis::Rho).unwrap();
        assert!(t.is_diagonal());
        for r in 0..3 {
            assert_eq!(t.get(&[r, r]), ss.mu[r]);
        }
    }

    #[test]
    fn round_trip_and_functoriality() {
        let ss = dijkgraaf_data(3).unwrap();
        for text in [
            "cyl@(0,0)",
            "pants(--+)@(1,-2)",
            "selfglue(cyl@(0,0), 1, 1)",
            "glue(cap(+)@(0,1), 1, glue(pants(-,+,+)@(0,0), 2, cap(-)@(-1,0), 1), 1)",
            "selfglue(glue(pants(-,+,+)@(0,0), 1, pants(-,-,+)@(0,0), 2), 1, 1)",
        ] {
            let e = parse_cobordism(text).unwrap();
            assert_eq!(parse_cobordism(&e.print()).unwrap(), e, "{text}");
            assert!(check_functoriality(&e, &ss).unwrap(), "{text}");
        }
    }

    #[test]
    fn torus_from_cylinder() {
        let ss = dijkgraaf_data(4).unwrap();
        let t = evaluate(&parse_cobordism("selfglue(cyl@(0,0),1,1)").unwrap(), &ss, Basis::Eta).unwrap();
        assert_eq!(t.scalar(), tensor_of(CobordismSignature::closed(1, 0, 0), &ss).unwrap().scalar());
        assert_eq!(t.scalar(), rat(5, 1));
    }

    #[test]
    fn errors_are_positioned() {
        let cases = [
            ("cyl", 3),
            ("cap(x)@(0,0)", 4),
            ("glue(cap(-)@(0,0), 1, cyl@(0,0), 1)", 19),
            ("glue(cyl@(0,0), 1, cyl@(0,0), 2)", 30),
            ("cyl@(0,0) cyl", 10),
            ("pants(-,-,+)@(0;0)", 15),
            ("cyl@(0,0", 8),
            ("selfglue(cap(+)@(0,0), 1, 1)", 26),
        ];
        for (text, pos) in cases {
            match parse_cobordism(text) {
                Err(Error::Parse { pos: p, .. }) => assert_eq!(p, pos, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }
}
