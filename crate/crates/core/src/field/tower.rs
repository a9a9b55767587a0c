//! Simple extensions `L = k[x]/(f)` with the power basis `1, w, ..., w^(m-1)`.

use rand::Rng;

use super::{poly, BaseField, Field};
use crate::error::{Error, Result};

/// An element of `L`, stored by its coordinates in the power basis.
/// Always exactly `m` coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtElem<E>(pub Vec<E>);

impl<E> ExtElem<E> {
    pub fn coords(&self) -> &[E] {
        &self.0
    }
}

/// A finite extension `L/k` given by a monic irreducible modulus over `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtensionTower<F: Field> {
    base: F,
    /// Monic, low to high, length `m + 1`.
    modulus: Vec<F::Elem>,
    name: String,
}

impl<F: BaseField> ExtensionTower<F> {
    /// Validate `modulus` (low-to-high coefficients over `base`) and build the tower.
    pub fn new(base: F, modulus: Vec<F::Elem>, generator_name: &str) -> Result<Self> {
        if modulus.len() < 2 {
            return Err(Error::BadModulus(
                "modulus must have degree at least 1".into(),
            ));
        }
        if !base.is_one(modulus.last().unwrap()) {
            return Err(Error::BadModulus("modulus must be monic".into()));
        }
        if !valid_name(generator_name) {
            return Err(Error::parse(
                "generator_name",
                format!("`{generator_name}` is not an identifier"),
            ));
        }
        if !base.is_irreducible(&modulus)? {
            return Err(Error::NotIrreducible);
        }
        Ok(ExtensionTower {
            base,
            modulus,
            name: generator_name.to_string(),
        })
    }
}

fn valid_name(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl<F: Field> ExtensionTower<F> {
    pub fn base(&self) -> &F {
        &self.base
    }

    /// `m = [L : k]`.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[F::Elem] {
        &self.modulus
    }

    pub fn generator_name(&self) -> &str {
        &self.name
    }

    /// Coordinates of `x` in the power basis.
    pub fn coords<'a>(&self, x: &'a ExtElem<F::Elem>) -> &'a [F::Elem] {
        &x.0
    }

    pub fn from_coords(&self, coords: &[F::Elem]) -> ExtElem<F::Elem> {
        let m = self.degree();
        let mut v: Vec<F::Elem> = coords.iter().take(m).cloned().collect();
        v.resize(m, self.base.zero());
        ExtElem(v)
    }

    /// Base-field elements sit at `(c, 0, ..., 0)`.
    pub fn embed(&self, c: &F::Elem) -> ExtElem<F::Elem> {
        self.from_coords(std::slice::from_ref(c))
    }

    /// The class `w` of `x`.
    pub fn generator(&self) -> ExtElem<F::Elem> {
        let v = [self.base.zero(), self.base.one()];
        self.reduce(&v)
    }

    /// The power basis `1, w, ..., w^(m-1)`.
    pub fn basis(&self) -> Vec<ExtElem<F::Elem>> {
        let m = self.degree();
        (0..m)
            .map(|i| {
                let mut v = vec![self.base.zero(); m];
                v[i] = self.base.one();
                ExtElem(v)
            })
            .collect()
    }

    /// Reduce an arbitrary polynomial in `w` modulo the modulus.
    pub fn reduce(&self, p: &[F::Elem]) -> ExtElem<F::Elem> {
        let r = poly::rem(&self.base, p, &self.modulus);
        self.from_coords(&r)
    }

    /// Trace of multiplication by `x`, read off the diagonal of its matrix
    /// in the power basis.
    pub fn trace(&self, x: &ExtElem<F::Elem>) -> F::Elem {
        let w = self.generator();
        let mut basis_elem = self.one();
        let mut acc = self.base.zero();
        for i in 0..self.degree() {
            let prod = self.mul(&basis_elem, x);
            acc = self.base.add(&acc, &prod.0[i]);
            basis_elem = self.mul(&basis_elem, &w);
        }
        acc
    }

    /// `gcd(f, f') = 1`.
    pub fn is_separable(&self) -> bool {
        let d = poly::derivative(&self.base, &self.modulus);
        if d.is_empty() {
            return false;
        }
        poly::gcd(&self.base, &self.modulus, &d).len() == 1
    }

    fn parse_poly(&self, s: &str) -> Result<Vec<F::Elem>> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        if chars.is_empty() {
            return Err(Error::parse(s, "empty element"));
        }
        let mut acc: Vec<F::Elem> = Vec::new();
        let mut i = 0;
        let mut first = true;
        while i < chars.len() {
            let mut negative = false;
            match chars[i] {
                '+' => i += 1,
                '-' => {
                    negative = true;
                    i += 1
                }
                _ if first => {}
                c => return Err(Error::parse(s, format!("unexpected `{c}`"))),
            }
            first = false;
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/') {
                i += 1;
            }
            let coef_text: String = chars[start..i].iter().collect();
            let mut coef = if coef_text.is_empty() {
                self.base.one()
            } else {
                self.base.parse_elem(&coef_text)?
            };
            let mut has_star = false;
            if i < chars.len() && chars[i] == '*' {
                has_star = true;
                i += 1;
            }
            let mut exp = 0usize;
            if i < chars.len() && (chars[i].is_ascii_alphabetic() || chars[i] == '_') {
                let id_start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let ident: String = chars[id_start..i].iter().collect();
                if ident != self.name {
                    return Err(Error::UnknownSymbol(ident));
                }
                exp = 1;
                if i < chars.len() && chars[i] == '^' {
                    i += 1;
                    let e_start = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let e_text: String = chars[e_start..i].iter().collect();
                    exp = e_text
                        .parse()
                        .map_err(|_| Error::parse(s, "bad exponent"))?;
                }
            } else if has_star || coef_text.is_empty() {
                return match chars.get(i) {
                    Some(c) => Err(Error::parse(s, format!("unexpected `{c}`"))),
                    None => Err(Error::parse(s, "dangling operator")),
                };
            }
            if negative {
                coef = self.base.neg(&coef);
            }
            let mut term = vec![self.base.zero(); exp + 1];
            term[exp] = coef;
            acc = poly::add(&self.base, &acc, &term);
        }
        Ok(acc)
    }
}

/// Render a polynomial (low-to-high coefficients) as `"w^2+w+1"`.
pub fn format_poly<F: Field>(base: &F, coeffs: &[F::Elem], name: &str) -> String {
    let mut out = String::new();
    for (e, c) in coeffs.iter().enumerate().rev() {
        if base.is_zero(c) {
            continue;
        }
        let negative = base.is_negative(c);
        let mag = if negative { base.neg(c) } else { c.clone() };
        if negative {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        let coef = base.format_elem(&mag);
        if e == 0 {
            out.push_str(&coef);
            continue;
        }
        if !base.is_one(&mag) {
            out.push_str(&coef);
            if coef.contains('/') {
                out.push('*');
            }
        }
        out.push_str(name);
        if e > 1 {
            out.push('^');
            out.push_str(&e.to_string());
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl<F: Field> Field for ExtensionTower<F> {
    type Elem = ExtElem<F::Elem>;

    fn zero(&self) -> Self::Elem {
        ExtElem(vec![self.base.zero(); self.degree()])
    }

    fn one(&self) -> Self::Elem {
        self.embed(&self.base.one())
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        ExtElem(
            a.0.iter()
                .zip(&b.0)
                .map(|(x, y)| self.base.add(x, y))
                .collect(),
        )
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        ExtElem(a.0.iter().map(|x| self.base.neg(x)).collect())
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        ExtElem(
            a.0.iter()
                .zip(&b.0)
                .map(|(x, y)| self.base.sub(x, y))
                .collect(),
        )
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let prod = poly::mul(&self.base, &a.0, &b.0);
        self.reduce(&prod)
    }

    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let p = poly::trim(&self.base, a.0.clone());
        if p.is_empty() {
            return None;
        }
        poly::inverse_mod(&self.base, &p, &self.modulus).map(|r| self.from_coords(&r))
    }

    fn from_i64(&self, v: i64) -> Self::Elem {
        self.embed(&self.base.from_i64(v))
    }

    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }

    fn size(&self) -> Option<u64> {
        self.base.size()?.checked_pow(self.degree() as u32)
    }

    /// Lexicographic on coordinates, lowest index fastest.
    fn element_at(&self, mut index: u64) -> Self::Elem {
        let q = self.base.size().expect("finite base field");
        let coords = (0..self.degree())
            .map(|_| {
                let d = index % q;
                index /= q;
                self.base.element_at(d)
            })
            .collect();
        ExtElem(coords)
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R, height: u64) -> Self::Elem {
        ExtElem(
            (0..self.degree())
                .map(|_| self.base.random(rng, height))
                .collect(),
        )
    }

    fn format_elem(&self, a: &Self::Elem) -> String {
        format_poly(&self.base, &a.0, &self.name)
    }

    fn parse_elem(&self, s: &str) -> Result<Self::Elem> {
        let p = self.parse_poly(s)?;
        Ok(self.reduce(&p))
    }
}
