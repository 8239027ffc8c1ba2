//! Exact coefficients and the graded carrier of the bialgebra: words in
//! generator symbols, truncated series of such words, and their tensors.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::json;

use crate::error::AlgebraError;

/// Exact rational coefficient, always in lowest terms.
pub type Rational = num_rational::BigRational;

pub type Colour = u32;

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn integer(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Renders as `p/q`, or `p` for integers.
pub fn fraction(q: &Rational) -> String {
    q.to_string()
}

/// Which ambient monad the operations live over. Governs whether words
/// commute, whether operations carry symmetric-group actions, and which
/// word shapes exist.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AmbientMode {
    Symmetric,
    Nonsymmetric,
    Identity,
    Pointed,
}

impl AmbientMode {
    pub fn is_symmetric(self) -> bool {
        self == AmbientMode::Symmetric
    }

    pub fn as_str(self) -> &'static str {
        match self {
            AmbientMode::Symmetric => "symmetric",
            AmbientMode::Nonsymmetric => "nonsymmetric",
            AmbientMode::Identity => "identity",
            AmbientMode::Pointed => "pointed",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "symmetric" => AmbientMode::Symmetric,
            "nonsymmetric" => AmbientMode::Nonsymmetric,
            "identity" => AmbientMode::Identity,
            "pointed" => AmbientMode::Pointed,
            _ => return None,
        })
    }

    /// Longest word allowed, if bounded.
    fn max_word_len(self) -> Option<usize> {
        match self {
            AmbientMode::Identity | AmbientMode::Pointed => Some(1),
            _ => None,
        }
    }
}

#[derive(Debug, PartialEq, Eq, Hash)]
pub struct SymbolData {
    pub class_id: String,
    pub arity: usize,
    pub in_colours: Vec<Colour>,
    pub out_colour: Colour,
    pub aut_order: u64,
    /// Additive size used for truncation when arity alone does not bound
    /// the window (nodes of a tree, length in a graded monoid).
    pub weight: usize,
}

/// One generator of the bialgebra: an iso-class of operations.
/// Equality is by `class_id`; order is by arity, then `class_id`.
#[derive(Clone)]
pub struct GeneratorSymbol(Arc<SymbolData>);

impl GeneratorSymbol {
    pub fn new(data: SymbolData) -> Self {
        debug_assert_eq!(data.in_colours.len(), data.arity);
        GeneratorSymbol(Arc::new(data))
    }

    pub fn class_id(&self) -> &str {
        &self.0.class_id
    }
    pub fn arity(&self) -> usize {
        self.0.arity
    }
    pub fn in_colours(&self) -> &[Colour] {
        &self.0.in_colours
    }
    pub fn out_colour(&self) -> Colour {
        self.0.out_colour
    }
    pub fn aut_order(&self) -> u64 {
        self.0.aut_order
    }
    pub fn weight(&self) -> usize {
        self.0.weight
    }
}

impl PartialEq for GeneratorSymbol {
    fn eq(&self, other: &Self) -> bool {
        self.0.class_id == other.0.class_id
    }
}
impl Eq for GeneratorSymbol {}
impl std::hash::Hash for GeneratorSymbol {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.class_id.hash(state)
    }
}
impl PartialOrd for GeneratorSymbol {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for GeneratorSymbol {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.0.arity, &self.0.class_id).cmp(&(other.0.arity, &other.0.class_id))
    }
}
impl fmt::Debug for GeneratorSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.class_id)
    }
}

/// A word of generators. Symmetric words are kept sorted by class id;
/// the other modes keep the order in which factors were multiplied.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    mode: AmbientMode,
    factors: Vec<GeneratorSymbol>,
}

impl Monomial {
    pub fn unit(mode: AmbientMode) -> Self {
        Monomial {
            mode,
            factors: Vec::new(),
        }
    }

    pub fn generator(mode: AmbientMode, g: GeneratorSymbol) -> Self {
        Monomial {
            mode,
            factors: vec![g],
        }
    }

    pub fn from_factors(
        mode: AmbientMode,
        mut factors: Vec<GeneratorSymbol>,
    ) -> Result<Self, AlgebraError> {
        if let Some(max) = mode.max_word_len() {
            if factors.len() > max {
                return Err(AlgebraError::IllegalProduct(mode));
            }
        }
        if mode.is_symmetric() {
            factors.sort();
        }
        Ok(Monomial { mode, factors })
    }

    pub fn mode(&self) -> AmbientMode {
        self.mode
    }
    pub fn factors(&self) -> &[GeneratorSymbol] {
        &self.factors
    }
    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }
    pub fn len(&self) -> usize {
        self.factors.len()
    }
    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
    pub fn total_arity(&self) -> usize {
        self.factors.iter().map(|g| g.arity()).sum()
    }
    pub fn total_weight(&self) -> usize {
        self.factors.iter().map(|g| g.weight()).sum()
    }

    /// Output colours of the factors, in word order.
    pub fn out_colours(&self) -> Vec<Colour> {
        self.factors.iter().map(|g| g.out_colour()).collect()
    }

    /// Concatenated input colours of the factors, in word order.
    pub fn in_colours(&self) -> Vec<Colour> {
        self.factors
            .iter()
            .flat_map(|g| g.in_colours().iter().copied())
            .collect()
    }

    pub fn class_ids(&self) -> Vec<String> {
        self.factors
            .iter()
            .map(|g| g.class_id().to_string())
            .collect()
    }

    /// Multiplicities of each distinct factor, in normal-form order.
    pub fn multiplicities(&self) -> Vec<(GeneratorSymbol, usize)> {
        let mut out: Vec<(GeneratorSymbol, usize)> = Vec::new();
        let mut sorted = self.factors.clone();
        sorted.sort();
        for g in sorted {
            match out.last_mut() {
                Some((h, n)) if *h == g => *n += 1,
                _ => out.push((g, 1)),
            }
        }
        out
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let mut parts = Vec::new();
        if self.mode.is_symmetric() {
            for (g, n) in self.multiplicities() {
                if n == 1 {
                    parts.push(g.class_id().to_string());
                } else {
                    parts.push(format!("{}^{}", g.class_id(), n));
                }
            }
        } else {
            parts.extend(self.factors.iter().map(|g| g.class_id().to_string()));
        }
        f.write_str(&parts.join(" "))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self)
    }
}

/// Product of two words.
pub fn mono_mul(a: &Monomial, b: &Monomial) -> Result<Monomial, AlgebraError> {
    if a.mode != b.mode {
        return Err(AlgebraError::ModeMismatch(a.mode, b.mode));
    }
    if a.is_unit() {
        return Ok(b.clone());
    }
    if b.is_unit() {
        return Ok(a.clone());
    }
    if a.mode.max_word_len().is_some() {
        return Err(AlgebraError::IllegalProduct(a.mode));
    }
    let mut factors = a.factors.clone();
    factors.extend(b.factors.iter().cloned());
    Monomial::from_factors(a.mode, factors)
}

/// Truncation window: words above `arity_cap` total arity (or above
/// `weight_cap` total weight, when set) are discarded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Window {
    pub arity_cap: usize,
    pub weight_cap: Option<usize>,
}

impl Window {
    pub fn new(arity_cap: usize) -> Self {
        Window {
            arity_cap,
            weight_cap: None,
        }
    }

    pub fn with_weight(arity_cap: usize, weight_cap: Option<usize>) -> Self {
        Window {
            arity_cap,
            weight_cap,
        }
    }

    pub fn admits(&self, m: &Monomial) -> bool {
        m.total_arity() <= self.arity_cap && self.admits_weight(m.total_weight())
    }

    pub fn admits_weight(&self, w: usize) -> bool {
        self.weight_cap.is_none_or(|c| w <= c)
    }

    pub fn admits_pair(&self, left: &Monomial, right: &Monomial) -> bool {
        left.total_arity() <= self.arity_cap
            && self.admits_weight(left.total_weight() + right.total_weight())
    }
}

fn add_into<K: Ord + Clone>(map: &mut BTreeMap<K, Rational>, key: K, c: Rational) {
    if c.is_zero() {
        return;
    }
    let entry = map.entry(key.clone()).or_insert_with(Rational::zero);
    *entry += c;
    if entry.is_zero() {
        map.remove(&key);
    }
}

/// Finite linear combination of words truncated to a window. A series
/// marked `completed` is the truncation of an infinite sum.
#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    mode: AmbientMode,
    window: Window,
    terms: BTreeMap<Monomial, Rational>,
    completed: bool,
}

impl Series {
    pub fn zero(mode: AmbientMode, window: Window) -> Self {
        Series {
            mode,
            window,
            terms: BTreeMap::new(),
            completed: false,
        }
    }

    pub fn unit(mode: AmbientMode, window: Window) -> Self {
        let mut s = Series::zero(mode, window);
        s.add_term(Monomial::unit(mode), Rational::one());
        s
    }

    pub fn monomial(m: Monomial, window: Window) -> Self {
        let mut s = Series::zero(m.mode(), window);
        s.add_term(m, Rational::one());
        s
    }

    pub fn mode(&self) -> AmbientMode {
        self.mode
    }
    pub fn window(&self) -> Window {
        self.window
    }
    pub fn is_completed(&self) -> bool {
        self.completed
    }
    pub fn mark_completed(mut self) -> Self {
        self.completed = true;
        self
    }

    /// Adds `c·m`; words outside the window are dropped.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        debug_assert_eq!(m.mode(), self.mode);
        if self.window.admits(&m) {
            add_into(&mut self.terms, m, c);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    fn check(&self, other: &Series) -> Result<(), AlgebraError> {
        if self.mode != other.mode {
            return Err(AlgebraError::ModeMismatch(self.mode, other.mode));
        }
        if self.window != other.window {
            return Err(AlgebraError::CapMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Series) -> Result<Series, AlgebraError> {
        self.check(other)?;
        let mut out = self.clone();
        out.completed |= other.completed;
        for (m, c) in &other.terms {
            add_into(&mut out.terms, m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Series {
        let mut out = Series::zero(self.mode, self.window);
        out.completed = self.completed;
        for (m, d) in &self.terms {
            add_into(&mut out.terms, m.clone(), d * c);
        }
        out
    }

    pub fn mul(&self, other: &Series) -> Result<Series, AlgebraError> {
        self.check(other)?;
        let mut out = Series::zero(self.mode, self.window);
        out.completed = self.completed || other.completed;
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if a.total_arity() + b.total_arity() > self.window.arity_cap
                    || !self
                        .window
                        .admits_weight(a.total_weight() + b.total_weight())
                {
                    continue;
                }
                let m = mono_mul(a, b)?;
                add_into(&mut out.terms, m, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(m, c)| json!({"monomial": m.class_ids(), "coeff": fraction(c)}))
                .collect(),
        )
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                if c.is_one() {
                    m.to_string()
                } else {
                    format!("({}) {}", fraction(c), m)
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Element of the two-fold tensor power: finite combination of
/// `left ⊗ right` word pairs. The left slot is truncated by arity.
#[derive(Clone, PartialEq, Eq)]
pub struct Tensor2 {
    mode: AmbientMode,
    window: Window,
    terms: BTreeMap<(Monomial, Monomial), Rational>,
}

impl Tensor2 {
    pub fn zero(mode: AmbientMode, window: Window) -> Self {
        Tensor2 {
            mode,
            window,
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(mode: AmbientMode, window: Window) -> Self {
        let mut t = Tensor2::zero(mode, window);
        t.add_term(Monomial::unit(mode), Monomial::unit(mode), Rational::one());
        t
    }

    /// `s ⊗ t` for two series.
    pub fn tensor(s: &Series, t: &Series, window: Window) -> Result<Self, AlgebraError> {
        if s.mode() != t.mode() {
            return Err(AlgebraError::ModeMismatch(s.mode(), t.mode()));
        }
        let mut out = Tensor2::zero(s.mode(), window);
        for (a, ca) in s.terms() {
            for (b, cb) in t.terms() {
                out.add_term(a.clone(), b.clone(), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn mode(&self) -> AmbientMode {
        self.mode
    }
    pub fn window(&self) -> Window {
        self.window
    }

    pub fn add_term(&mut self, left: Monomial, right: Monomial, c: Rational) {
        if self.window.admits_pair(&left, &right) {
            add_into(&mut self.terms, (left, right), c);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Monomial, Monomial), &Rational)> {
        self.terms.iter()
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, left: &Monomial, right: &Monomial) -> Rational {
        self.terms
            .get(&(left.clone(), right.clone()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    fn check(&self, other: &Tensor2) -> Result<(), AlgebraError> {
        if self.mode != other.mode {
            return Err(AlgebraError::ModeMismatch(self.mode, other.mode));
        }
        if self.window != other.window {
            return Err(AlgebraError::CapMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Tensor2) -> Result<Tensor2, AlgebraError> {
        self.check(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            add_into(&mut out.terms, k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn add_scaled(&mut self, other: &Tensor2, c: &Rational) -> Result<(), AlgebraError> {
        self.check(other)?;
        for (k, d) in &other.terms {
            add_into(&mut self.terms, k.clone(), d * c);
        }
        Ok(())
    }

    /// Slotwise product `(a ⊗ b)(c ⊗ d) = ac ⊗ bd`.
    pub fn mul(&self, other: &Tensor2) -> Result<Tensor2, AlgebraError> {
        self.check(other)?;
        let mut out = Tensor2::zero(self.mode, self.window);
        for ((a, b), c1) in &self.terms {
            for ((c, d), c2) in &other.terms {
                if a.total_arity() + c.total_arity() > self.window.arity_cap {
                    continue;
                }
                let left = mono_mul(a, c)?;
                let right = mono_mul(b, d)?;
                out.add_term(left, right, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|((l, r), c)| {
                    json!({"monomial": [l.class_ids(), r.class_ids()], "coeff": fraction(c)})
                })
                .collect(),
        )
    }
}

impl fmt::Display for Tensor2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((l, r), c)| {
                if c.is_one() {
                    format!("{} ⊗ {}", l, r)
                } else {
                    format!("({}) {} ⊗ {}", fraction(c), l, r)
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for Tensor2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Three-fold tensors, used only to compare the two iterated coproducts.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Tensor3 {
    terms: BTreeMap<(Monomial, Monomial, Monomial), Rational>,
}

impl Tensor3 {
    pub fn add_term(&mut self, a: Monomial, b: Monomial, c: Monomial, q: Rational) {
        add_into(&mut self.terms, (a, b, c), q);
    }
    pub fn terms(&self) -> impl Iterator<Item = (&(Monomial, Monomial, Monomial), &Rational)> {
        self.terms.iter()
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Coefficient lookup shared by series and tensors.
pub trait Coefficient<K> {
    fn coefficient_of(&self, key: &K) -> Rational;
}

impl Coefficient<Monomial> for Series {
    fn coefficient_of(&self, key: &Monomial) -> Rational {
        self.coefficient(key)
    }
}

impl Coefficient<(Monomial, Monomial)> for Tensor2 {
    fn coefficient_of(&self, key: &(Monomial, Monomial)) -> Rational {
        self.coefficient(&key.0, &key.1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(id: &str, arity: usize) -> GeneratorSymbol {
        GeneratorSymbol::new(SymbolData {
            class_id: id.into(),
            arity,
            in_colours: vec![0; arity],
            out_colour: 0,
            aut_order: 1,
            weight: 0,
        })
    }

    fn word(mode: AmbientMode, gens: &[(&str, usize)]) -> Monomial {
        Monomial::from_factors(mode, gens.iter().map(|&(s, a)| sym(s, a)).collect()).unwrap()
    }

    #[test]
    fn unit_law() {
        let m = word(AmbientMode::Symmetric, &[("A_1", 1), ("A_2", 2)]);
        let u = Monomial::unit(AmbientMode::Symmetric);
        assert_eq!(mono_mul(&u, &m).unwrap(), m);
        assert_eq!(mono_mul(&m, &u).unwrap(), m);
    }

    #[test]
    fn symmetric_words_commute() {
        let s = AmbientMode::Symmetric;
        let a = word(s, &[("A_2", 2)]);
        let b = word(s, &[("A_1", 1), ("A_2", 2)]);
        let ab = mono_mul(&a, &b).unwrap();
        assert_eq!(ab, word(s, &[("A_1", 1), ("A_2", 2), ("A_2", 2)]));
        assert_eq!(ab, mono_mul(&b, &a).unwrap());
        assert_eq!(ab.to_string(), "A_1 A_2^2");
    }

    #[test]
    fn nonsymmetric_words_do_not_commute() {
        let n = AmbientMode::Nonsymmetric;
        let a = word(n, &[("A_1", 1)]);
        let b = word(n, &[("A_2", 2)]);
        let ab = mono_mul(&a, &b).unwrap();
        assert_eq!(ab, word(n, &[("A_1", 1), ("A_2", 2)]));
        assert_ne!(ab, mono_mul(&b, &a).unwrap());
    }

    #[test]
    fn degenerate_modes_forbid_products() {
        for mode in [AmbientMode::Identity, AmbientMode::Pointed] {
            let a = word(mode, &[("f", 1)]);
            assert!(matches!(
                mono_mul(&a, &a),
                Err(AlgebraError::IllegalProduct(_))
            ));
            assert_eq!(mono_mul(&Monomial::unit(mode), &a).unwrap(), a);
        }
    }

    #[test]
    fn mode_mismatch() {
        let a = word(AmbientMode::Symmetric, &[("A_1", 1)]);
        let b = word(AmbientMode::Nonsymmetric, &[("A_1", 1)]);
        assert!(matches!(
            mono_mul(&a, &b),
            Err(AlgebraError::ModeMismatch(..))
        ));
    }

    #[test]
    fn series_product_and_truncation() {
        let s = AmbientMode::Symmetric;
        let w = Window::new(4);
        let a1 = Series::monomial(word(s, &[("A_1", 1)]), w);
        let sq = a1.mul(&a1).unwrap();
        assert_eq!(
            sq.coefficient(&word(s, &[("A_1", 1), ("A_1", 1)])),
            integer(1)
        );

        let mut t = Series::monomial(word(s, &[("A_2", 2)]), w);
        t.add_term(word(s, &[("A_1", 1), ("A_1", 1)]), integer(3));
        assert_eq!(
            t.coefficient(&word(s, &[("A_1", 1), ("A_1", 1)])),
            integer(3)
        );
        assert_eq!(t.coefficient(&word(s, &[("A_3", 3)])), integer(0));

        let w2 = Window::new(2);
        let a2 = Series::monomial(word(s, &[("A_2", 2)]), w2);
        assert!(a2.mul(&a2).unwrap().is_empty());
    }

    #[test]
    fn cap_mismatch() {
        let s = AmbientMode::Symmetric;
        let a = Series::unit(s, Window::new(2));
        let b = Series::unit(s, Window::new(3));
        assert!(matches!(a.mul(&b), Err(AlgebraError::CapMismatch)));
    }

    #[test]
    fn json_shape() {
        let s = AmbientMode::Symmetric;
        let mut t = Series::zero(s, Window::new(5));
        t.add_term(word(s, &[("A_2", 2)]), rational(1, 2));
        let v = t.to_json();
        assert_eq!(v[0]["monomial"][0], "A_2");
        assert_eq!(v[0]["coeff"], "1/2");
    }
}
