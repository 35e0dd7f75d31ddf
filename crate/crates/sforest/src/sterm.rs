//! The free algebra of terms over variables with an associative-commutative
//! sum and an associative product, represented by canonical forms: sums are
//! flattened and sorted, products are flattened. A canonical term stands for
//! the whole equivalence class modulo those axioms.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::relation::Relation;
use crate::var::VarName;

/// A canonical term. `Sum` arguments are sorted and never themselves sums;
/// `Prod` arguments keep their order and are never themselves products; both
/// have at least two arguments. Use [`STerm::sum`] and [`STerm::prod`] to
/// build values that respect this.
///
/// The derived order (variables first, then sums, then products, composites
/// compared lexicographically on their arguments) is the canonical total
/// order used to sort sum arguments.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum STerm {
    Var(VarName),
    Sum(Vec<STerm>),
    Prod(Vec<STerm>),
}

impl STerm {
    pub fn var(v: VarName) -> STerm {
        STerm::Var(v)
    }

    /// Sum of at least one term; flattens nested sums and sorts the arguments.
    /// A single argument is returned unchanged.
    pub fn sum(args: impl IntoIterator<Item = STerm>) -> STerm {
        let mut flat = Vec::new();
        for a in args {
            match a {
                STerm::Sum(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        flat.sort();
        match flat.len() {
            0 => panic!("sum of no terms"),
            1 => flat.pop().unwrap(),
            _ => STerm::Sum(flat),
        }
    }

    /// Product of at least one term; flattens nested products.
    pub fn prod(args: impl IntoIterator<Item = STerm>) -> STerm {
        let mut flat = Vec::new();
        for a in args {
            match a {
                STerm::Prod(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => panic!("product of no terms"),
            1 => flat.pop().unwrap(),
            _ => STerm::Prod(flat),
        }
    }

    /// The set of variables occurring in the term.
    pub fn variables(&self) -> BTreeSet<VarName> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<VarName>) {
        match self {
            STerm::Var(v) => {
                out.insert(v.clone());
            }
            STerm::Sum(args) | STerm::Prod(args) => {
                for a in args {
                    a.collect_vars(out);
                }
            }
        }
    }

    fn count_occurrences(&self) -> usize {
        match self {
            STerm::Var(_) => 1,
            STerm::Sum(args) | STerm::Prod(args) => {
                args.iter().map(STerm::count_occurrences).sum()
            }
        }
    }

    /// No variable occurs more than once.
    pub fn is_diversified(&self) -> bool {
        self.variables().len() == self.count_occurrences()
    }

    fn first_repeated_var(&self) -> Option<VarName> {
        let mut seen = BTreeSet::new();
        self.find_repeated(&mut seen)
    }

    fn find_repeated(&self, seen: &mut BTreeSet<VarName>) -> Option<VarName> {
        match self {
            STerm::Var(v) => {
                if seen.insert(v.clone()) {
                    None
                } else {
                    Some(v.clone())
                }
            }
            STerm::Sum(args) | STerm::Prod(args) => {
                args.iter().find_map(|a| a.find_repeated(seen))
            }
        }
    }

    /// Membership in the inductive set of tree-like terms: a variable is in;
    /// a sum is in when all its arguments are; a product is in when every
    /// argument but the last is a variable and the last argument is in.
    fn is_in_c(&self) -> bool {
        match self {
            STerm::Var(_) => true,
            STerm::Sum(args) => args.iter().all(STerm::is_in_c),
            STerm::Prod(args) => {
                let (last, init) = args.split_last().expect("products have arguments");
                init.iter().all(|a| matches!(a, STerm::Var(_))) && last.is_in_c()
            }
        }
    }

    pub fn is_s_forest(&self) -> bool {
        self.is_diversified() && self.is_in_c()
    }

    pub fn is_s_tree(&self) -> bool {
        self.is_s_forest() && !matches!(self, STerm::Sum(_))
    }

    /// Interprets the term as a relation: a variable becomes a one-point
    /// relation, sum becomes disjoint union, product becomes concatenation.
    /// Defined only for diversified terms.
    pub fn kappa(&self) -> Result<Relation> {
        if let Some(v) = self.first_repeated_var() {
            return Err(Error::NotDiversified(v));
        }
        Ok(self.kappa_unchecked())
    }

    fn kappa_unchecked(&self) -> Relation {
        match self {
            STerm::Var(v) => Relation::singleton(v.clone()),
            STerm::Sum(args) => args
                .iter()
                .map(STerm::kappa_unchecked)
                .reduce(|a, b| a.disjoint_union(&b).expect("diversified term"))
                .expect("sums have arguments"),
            STerm::Prod(args) => args
                .iter()
                .map(STerm::kappa_unchecked)
                .reduce(|a, b| a.concatenation(&b).expect("diversified term"))
                .expect("products have arguments"),
        }
    }
}

/// The constructive inverse of [`STerm::kappa`] on trifunctional partial
/// orders: components become sum arguments and connected relations are split
/// into concatenation factors.
pub fn sterm_of_ftp(r: &Relation) -> Result<STerm> {
    if !r.is_ftp() {
        return Err(Error::NotFtp);
    }
    Ok(sterm_of_ftp_inner(r))
}

fn sterm_of_ftp_inner(r: &Relation) -> STerm {
    if r.domain().len() == 1 {
        return STerm::var(r.domain().iter().next().unwrap().clone());
    }
    let components = r.connected_components();
    if components.len() > 1 {
        return STerm::sum(components.iter().map(sterm_of_ftp_inner));
    }
    let (left, right) = r
        .prime_concat_split()
        .expect("components of an FTP relation are FTP")
        .expect("connected with at least two elements");
    STerm::prod([sterm_of_ftp_inner(&left), sterm_of_ftp_inner(&right)])
}

// --- text syntax ---------------------------------------------------------
//
// term := sum
// sum  := prod ('+' prod)*
// prod := atom ('*' atom)*
// atom := VarName | '(' term ')'

/// Parses the ASCII syntax, returning the canonical term of the denoted
/// equivalence class. `*` binds tighter than `+`; whitespace is ignored.
pub fn parse_sterm(text: &str) -> Result<STerm> {
    let mut p = Parser { bytes: text.as_bytes(), pos: 0 };
    let term = p.sum()?;
    p.skip_ws();
    if p.pos < p.bytes.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(term)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_owned() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<STerm> {
        let mut args = vec![self.prod()?];
        while self.peek() == Some(b'+') {
            self.pos += 1;
            args.push(self.prod()?);
        }
        Ok(STerm::sum(args))
    }

    fn prod(&mut self) -> Result<STerm> {
        let mut args = vec![self.atom()?];
        while self.peek() == Some(b'*') {
            self.pos += 1;
            args.push(self.atom()?);
        }
        Ok(STerm::prod(args))
    }

    fn atom(&mut self) -> Result<STerm> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let term = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(term)
            }
            Some(c) if c.is_ascii_lowercase() => {
                let start = self.pos;
                while self.pos < self.bytes.len()
                    && matches!(self.bytes[self.pos], b'a'..=b'z' | b'0'..=b'9' | b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
                Ok(STerm::var(VarName::new(name)?))
            }
            _ => Err(self.error("expected a variable or '('")),
        }
    }
}

/// Renders with parentheses only where precedence requires them; inverse of
/// [`parse_sterm`] on canonical terms.
pub fn render_sterm(t: &STerm) -> String {
    let mut out = String::new();
    render_into(t, &mut out);
    out
}

fn render_into(t: &STerm, out: &mut String) {
    match t {
        STerm::Var(v) => out.push_str(v.as_str()),
        STerm::Sum(args) => {
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    out.push('+');
                }
                render_into(a, out);
            }
        }
        STerm::Prod(args) => {
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    out.push('*');
                }
                if matches!(a, STerm::Sum(_)) {
                    out.push('(');
                    render_into(a, out);
                    out.push(')');
                } else {
                    render_into(a, out);
                }
            }
        }
    }
}

impl fmt::Display for STerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_sterm(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> VarName {
        VarName::new(s).unwrap()
    }

    fn t(s: &str) -> STerm {
        parse_sterm(s).unwrap()
    }

    fn rel(domain: &[&str], pairs: &[(&str, &str)]) -> Relation {
        Relation::new(
            domain.iter().map(|s| v(s)),
            pairs.iter().map(|(a, b)| (v(a), v(b))),
        )
        .unwrap()
    }

    #[test]
    fn parse_flattens_products() {
        assert_eq!(
            t("x*y*z*u"),
            STerm::Prod(vec![
                STerm::var(v("x")),
                STerm::var(v("y")),
                STerm::var(v("z")),
                STerm::var(v("u")),
            ])
        );
        assert_eq!(t("((x*y)*z)+u"), t("(x*(y*z))+u"));
    }

    #[test]
    fn parse_sorts_sums() {
        assert_eq!(t("u+(x*y)"), t("(x*y)+u"));
        assert_eq!(t("z+y+x"), t("x+y+z"));
    }

    #[test]
    fn parse_reports_position() {
        match parse_sterm("x*") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse_sterm("(x+y").is_err());
        assert!(parse_sterm("x y").is_err());
        assert!(parse_sterm("").is_err());
    }

    #[test]
    fn render_uses_minimal_parentheses() {
        assert_eq!(render_sterm(&t("x*y*z")), "x*y*z");
        assert_eq!(render_sterm(&t("x+y*z")), "x+y*z");
        // Sum arguments sit in canonical order: variables before products.
        assert_eq!(render_sterm(&t("z*((x*y)+u)")), "z*(u+x*y)");
    }

    #[test]
    fn diversification() {
        assert!(t("x*y+z").is_diversified());
        assert!(!t("x*x").is_diversified());
        assert!(!t("x*(y+x)").is_diversified());
    }

    #[test]
    fn variable_sets() {
        assert_eq!(t("x").variables(), BTreeSet::from([v("x")]));
        assert_eq!(t("x*(y+u)").variables(), BTreeSet::from([v("u"), v("x"), v("y")]));
        assert_eq!(
            t("z*(x*y+u)").variables(),
            BTreeSet::from([v("u"), v("x"), v("y"), v("z")])
        );
    }

    #[test]
    fn forest_and_tree_recognition() {
        assert!(t("((x*y)*z)+u").is_s_forest());
        assert!(!t("((x*y)*z)+u").is_s_tree());
        assert!(t("w*(((x*y)*z)+(u+v))").is_s_tree());
        // A sum on the left of a product is excluded.
        assert!(!t("(x+y)*z").is_s_forest());
        assert!(!t("x*x").is_s_forest());
    }

    #[test]
    fn kappa_examples() {
        assert_eq!(t("x").kappa().unwrap(), Relation::singleton(v("x")));
        assert_eq!(
            t("x*y*z").kappa().unwrap(),
            rel(&["x", "y", "z"], &[("x", "y"), ("x", "z"), ("y", "z")])
        );
        assert_eq!(
            t("z*(x+y)").kappa().unwrap(),
            rel(&["x", "y", "z"], &[("z", "x"), ("z", "y")])
        );
        assert_eq!(t("x*x").kappa(), Err(Error::NotDiversified(v("x"))));
    }

    #[test]
    fn sterm_of_ftp_examples() {
        assert_eq!(sterm_of_ftp(&Relation::singleton(v("x"))).unwrap(), t("x"));
        let chain = rel(&["x", "y", "z"], &[("x", "y"), ("x", "z"), ("y", "z")]);
        assert_eq!(sterm_of_ftp(&chain).unwrap(), t("x*y*z"));
        let star = rel(&["x", "y", "z"], &[("z", "x"), ("z", "y")]);
        assert_eq!(sterm_of_ftp(&star).unwrap(), t("z*(x+y)"));
        assert_eq!(sterm_of_ftp(&Relation::empty()), Err(Error::NotFtp));
    }

    #[test]
    fn parse_render_round_trip() {
        for text in ["x", "x+y", "x*y*z", "z*(x*y+u)", "w*(x*y*z+u+v)", "x*y+z*u"] {
            let term = t(text);
            assert_eq!(parse_sterm(&render_sterm(&term)).unwrap(), term);
        }
    }
}
