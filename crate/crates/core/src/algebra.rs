//! ℤ₃-graded free-algebra substrate: generators, words, elements and the
//! graded tensor square.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::cyclotomic::{q_power, CycNum};

/// Matrix coordinate: t₁₁ = a, t₁₂ = β, t₂₁ = γ, t₂₂ = d.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coord {
    A,
    B,
    G,
    D,
}

impl Coord {
    pub const ALL: [Coord; 4] = [Coord::A, Coord::B, Coord::G, Coord::D];

    pub fn grade(self) -> u8 {
        match self {
            Coord::A | Coord::D => 0,
            Coord::G => 1,
            Coord::B => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Coord::A => "a",
            Coord::B => "b",
            Coord::G => "g",
            Coord::D => "d",
        }
    }

    /// Position in the basis order a, β, γ, d.
    pub fn index(self) -> usize {
        self as usize
    }

    /// Matrix position (i, j) of t_ij, zero-based.
    pub fn position(self) -> (usize, usize) {
        match self {
            Coord::A => (0, 0),
            Coord::B => (0, 1),
            Coord::G => (1, 0),
            Coord::D => (1, 1),
        }
    }

    pub fn at(i: usize, j: usize) -> Coord {
        Coord::ALL[2 * i + j]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Form {
    W1,
    W2,
    W3,
    W4,
}

impl Form {
    pub const ALL: [Form; 4] = [Form::W1, Form::W2, Form::W3, Form::W4];

    /// Grades computed from the defining expressions, e.g. w₁ ∝ d·𝖽a has grade 1.
    pub fn grade(self) -> u8 {
        match self {
            Form::W1 | Form::W4 => 1,
            Form::W2 => 0,
            Form::W3 => 2,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GenClass {
    Coordinate,
    DetInv,
    Diff1,
    Diff2,
    Form,
}

/// A letter of the free algebra.  The derived order is the fixed total order
/// z < 𝖽²a < … < 𝖽²d < 𝖽a < … < 𝖽d < a < β < γ < d < w₁ < … < w₄.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Z,
    D2(Coord),
    D1(Coord),
    C(Coord),
    W(Form),
}

impl Generator {
    pub fn class(self) -> GenClass {
        match self {
            Generator::Z => GenClass::DetInv,
            Generator::D2(_) => GenClass::Diff2,
            Generator::D1(_) => GenClass::Diff1,
            Generator::C(_) => GenClass::Coordinate,
            Generator::W(_) => GenClass::Form,
        }
    }

    pub fn grade(self) -> u8 {
        match self {
            Generator::Z => 0,
            Generator::C(c) => c.grade(),
            Generator::D1(c) => (c.grade() + 1) % 3,
            Generator::D2(c) => (c.grade() + 2) % 3,
            Generator::W(w) => w.grade(),
        }
    }

    pub fn name(self) -> String {
        match self {
            Generator::Z => "z".into(),
            Generator::C(c) => c.name().into(),
            Generator::D1(c) => format!("d{}", c.name()),
            Generator::D2(c) => format!("d2{}", c.name()),
            Generator::W(w) => format!("w{}", w.index() + 1),
        }
    }

    pub fn from_name(s: &str) -> Option<Generator> {
        let coord = |t: &str| Coord::ALL.into_iter().find(|c| c.name() == t);
        Some(match s {
            "z" | "Dinv" => Generator::Z,
            "w1" => Generator::W(Form::W1),
            "w2" => Generator::W(Form::W2),
            "w3" => Generator::W(Form::W3),
            "w4" => Generator::W(Form::W4),
            _ => {
                if let Some(c) = coord(s) {
                    Generator::C(c)
                } else if let Some(c) = s.strip_prefix("d2").and_then(coord) {
                    Generator::D2(c)
                } else if let Some(c) = s.strip_prefix('d').and_then(coord) {
                    Generator::D1(c)
                } else {
                    return None;
                }
            }
        })
    }

    /// Every generator in increasing order.
    pub fn all() -> Vec<Generator> {
        let mut v = vec![Generator::Z];
        v.extend(Coord::ALL.map(Generator::D2));
        v.extend(Coord::ALL.map(Generator::D1));
        v.extend(Coord::ALL.map(Generator::C));
        v.extend(Form::ALL.map(Generator::W));
        v
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// A monomial.  Ordered graded-lex: shorter words first, then
/// lexicographically by the generator order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Generator>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn from_gens(g: &[Generator]) -> Word {
        Word(g.to_vec())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    pub fn grade(&self) -> u8 {
        word_grade(self)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Nondecreasing in the generator order, i.e. the shape of a normal word.
    pub fn is_sorted(&self) -> bool {
        self.0.windows(2).all(|p| p[0] <= p[1])
    }

    pub fn count(&self, g: Generator) -> usize {
        self.0.iter().filter(|&&x| x == g).count()
    }

    pub fn parse(s: &str) -> Option<Word> {
        let s = s.trim();
        if s == "1" {
            return Some(Word::empty());
        }
        s.split('*')
            .map(|t| Generator::from_name(t.trim()))
            .collect::<Option<Vec<_>>>()
            .map(Word)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        let names: Vec<String> = self.0.iter().map(|g| g.name()).collect();
        f.write_str(&names.join("*"))
    }
}

pub fn word_grade(w: &Word) -> u8 {
    (w.0.iter().map(|g| g.grade() as u32).sum::<u32>() % 3) as u8
}

/// Finite linear combination of words; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Element {
    terms: BTreeMap<Word, CycNum>,
}

impl Element {
    pub fn zero() -> Element {
        Element::default()
    }

    pub fn one() -> Element {
        Element::scalar(CycNum::one())
    }

    pub fn scalar(c: CycNum) -> Element {
        Element::term(Word::empty(), c)
    }

    pub fn gen(g: Generator) -> Element {
        Element::term(Word(vec![g]), CycNum::one())
    }

    pub fn coord(c: Coord) -> Element {
        Element::gen(Generator::C(c))
    }

    pub fn word(w: Word) -> Element {
        Element::term(w, CycNum::one())
    }

    pub fn term(w: Word, c: CycNum) -> Element {
        let mut e = Element::zero();
        e.add_term(w, c);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, CycNum)>>(it: I) -> Element {
        let mut e = Element::zero();
        for (w, c) in it {
            e.add_term(w, c);
        }
        e
    }

    pub fn add_term(&mut self, w: Word, c: CycNum) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Element, c: &CycNum) {
        if c.is_zero() {
            return;
        }
        for (w, v) in &other.terms {
            self.add_term(w.clone(), v * c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &CycNum)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, CycNum)> {
        self.terms.into_iter()
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn coeff(&self, w: &Word) -> CycNum {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// Largest word in graded-lex order.
    pub fn leading(&self) -> Option<(&Word, &CycNum)> {
        self.terms.iter().next_back()
    }

    /// The scalar value if the element lies in ℚ(ω)·1.
    pub fn as_scalar(&self) -> Option<CycNum> {
        match self.terms.len() {
            0 => Some(CycNum::zero()),
            1 => self.terms.get(&Word::empty()).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &CycNum) -> Element {
        let mut e = Element::zero();
        e.add_scaled(self, c);
        e
    }

    pub fn pow(&self, n: u32) -> Element {
        let mut acc = Element::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Grade of a homogeneous nonzero element.
    pub fn grade(&self) -> Option<u8> {
        let mut it = self.terms.keys().map(word_grade);
        let first = it.next()?;
        it.all(|g| g == first).then_some(first)
    }

    pub fn max_len(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }

    pub fn contains_class(&self, class: GenClass) -> bool {
        self.terms
            .keys()
            .any(|w| w.0.iter().any(|g| g.class() == class))
    }

    /// Render as a DSL expression, ascending word order.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let cs = c.render_q();
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, cs),
            };
            let body = if w.is_empty() {
                mag
            } else if mag == "1" {
                w.to_string()
            } else {
                format!("{mag}*{w}")
            };
            match (i, neg) {
                (0, false) => out.push_str(&body),
                (0, true) => {
                    out.push('-');
                    out.push_str(&body);
                }
                (_, false) => {
                    out.push_str(" + ");
                    out.push_str(&body);
                }
                (_, true) => {
                    out.push_str(" - ");
                    out.push_str(&body);
                }
            }
        }
        out
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

pub fn homogeneous_split(x: &Element) -> Vec<(u8, Element)> {
    let mut parts: [Element; 3] = Default::default();
    for (w, c) in x.terms() {
        parts[word_grade(w) as usize].add_term(w.clone(), c.clone());
    }
    parts
        .into_iter()
        .enumerate()
        .filter(|(_, e)| !e.is_zero())
        .map(|(g, e)| (g as u8, e))
        .collect()
}

/// Free concatenation product; the result is not normalized.
pub fn elem_mul(x: &Element, y: &Element) -> Element {
    let mut out = Element::zero();
    for (u, a) in x.terms() {
        for (v, b) in y.terms() {
            out.add_term(u.concat(v), a * b);
        }
    }
    out
}

impl<'a> Mul<&'a Element> for &'a Element {
    type Output = Element;
    fn mul(self, o: &Element) -> Element {
        elem_mul(self, o)
    }
}

impl Mul for Element {
    type Output = Element;
    fn mul(self, o: Element) -> Element {
        elem_mul(&self, &o)
    }
}

impl<'a> Add<&'a Element> for &'a Element {
    type Output = Element;
    fn add(self, o: &Element) -> Element {
        let mut e = self.clone();
        e.add_scaled(o, &CycNum::one());
        e
    }
}

impl Add for Element {
    type Output = Element;
    fn add(mut self, o: Element) -> Element {
        for (w, c) in o.terms {
            self.add_term(w, c);
        }
        self
    }
}

impl<'a> Sub<&'a Element> for &'a Element {
    type Output = Element;
    fn sub(self, o: &Element) -> Element {
        let mut e = self.clone();
        e.add_scaled(o, &-CycNum::one());
        e
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(self, o: Element) -> Element {
        &self - &o
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(&-CycNum::one())
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

impl Mul<&Element> for &CycNum {
    type Output = Element;
    fn mul(self, e: &Element) -> Element {
        e.scale(self)
    }
}

/// Element of the graded tensor square (or of 𝒪 ⊗ Ω¹).
#[derive(Clone, PartialEq, Eq, Default)]
pub struct TensorElement {
    terms: BTreeMap<(Word, Word), CycNum>,
}

impl TensorElement {
    pub fn zero() -> TensorElement {
        TensorElement::default()
    }

    pub fn one() -> TensorElement {
        TensorElement::simple(Word::empty(), Word::empty(), CycNum::one())
    }

    pub fn simple(u: Word, v: Word, c: CycNum) -> TensorElement {
        let mut t = TensorElement::zero();
        t.add_term(u, v, c);
        t
    }

    /// x ⊗ y for elements, expanded bilinearly.
    pub fn of(x: &Element, y: &Element) -> TensorElement {
        let mut t = TensorElement::zero();
        for (u, a) in x.terms() {
            for (v, b) in y.terms() {
                t.add_term(u.clone(), v.clone(), a * b);
            }
        }
        t
    }

    pub fn add_term(&mut self, u: Word, v: Word, c: CycNum) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((u, v)) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &TensorElement, c: &CycNum) {
        for ((u, v), x) in &other.terms {
            self.add_term(u.clone(), v.clone(), x * c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, Word), &CycNum)> {
        self.terms.iter()
    }

    pub fn coeff(&self, u: &Word, v: &Word) -> CycNum {
        self.terms
            .get(&(u.clone(), v.clone()))
            .cloned()
            .unwrap_or_default()
    }

    /// Apply a linear map slotwise: Σ c·f(u) ⊗ g(v).
    pub fn try_map<E>(
        &self,
        mut f: impl FnMut(&Word) -> Result<Element, E>,
        mut g: impl FnMut(&Word) -> Result<Element, E>,
    ) -> Result<TensorElement, E> {
        let mut out = TensorElement::zero();
        for ((u, v), c) in &self.terms {
            let fu = f(u)?;
            let gv = g(v)?;
            out.add_scaled(&TensorElement::of(&fu, &gv), c);
        }
        Ok(out)
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((u, v), c)| format!("{}*{} (x) {}", c.render_q(), u, v))
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<'a> Sub<&'a TensorElement> for &'a TensorElement {
    type Output = TensorElement;
    fn sub(self, o: &TensorElement) -> TensorElement {
        let mut t = self.clone();
        t.add_scaled(o, &-CycNum::one());
        t
    }
}

/// (a₁⊗b₁)(a₂⊗b₂) = q^{p(b₁)p(a₂)} a₁a₂ ⊗ b₁b₂, extended bilinearly.
pub fn tensor_mul(x: &TensorElement, y: &TensorElement) -> TensorElement {
    let mut out = TensorElement::zero();
    for ((a1, b1), c1) in x.terms() {
        let pb1 = word_grade(b1) as i64;
        for ((a2, b2), c2) in y.terms() {
            let f = q_power(pb1 * word_grade(a2) as i64);
            out.add_term(a1.concat(a2), b1.concat(b2), &(c1 * c2) * &f);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn generator_order_and_grades() {
        let all = Generator::all();
        let names: Vec<String> = all.iter().map(|g| g.name()).collect();
        assert_eq!(
            names.join(" "),
            "z d2a d2b d2g d2d da db dg dd a b g d w1 w2 w3 w4"
        );
        assert!(all.windows(2).all(|p| p[0] < p[1]));
        let grades: Vec<u8> = all.iter().map(|g| g.grade()).collect();
        assert_eq!(grades, vec![0, 2, 1, 0, 2, 1, 0, 2, 1, 0, 2, 1, 0, 1, 0, 2, 1]);
        for g in all {
            assert_eq!(Generator::from_name(&g.name()), Some(g));
        }
    }

    #[test]
    fn word_grades() {
        assert_eq!(word_grade(&Word::empty()), 0);
        assert_eq!(word_grade(&w("b*g")), 0);
        assert_eq!(word_grade(&w("da*d")), 1);
    }

    #[test]
    fn graded_lex() {
        assert!(w("b*g") < w("d*a"));
        assert!(w("d") < w("a*a"));
        assert!(w("z*d") < w("d*z"));
    }

    #[test]
    fn products() {
        let a = Element::coord(Coord::A);
        let b = Element::coord(Coord::B);
        let g = Element::coord(Coord::G);
        let d = Element::coord(Coord::D);
        assert_eq!(&a * &d, Element::word(w("a*d")));
        let lhs = &(&a + &b) * &g;
        assert_eq!(lhs, &Element::word(w("a*g")) + &Element::word(w("b*g")));
        let q = CycNum::q();
        let two_q = CycNum::int(2) * &q;
        let x = &a.scale(&two_q) * &b.scale(&q);
        assert_eq!(x, Element::term(w("a*b"), CycNum::int(2) * (&q * &q)));
    }

    #[test]
    fn tensor_examples() {
        let t = |u: &str, v: &str| TensorElement::simple(w(u), w(v), CycNum::one());
        assert_eq!(tensor_mul(&t("a", "a"), &t("b", "g")), t("a*b", "a*g"));
        assert_eq!(
            tensor_mul(&t("a", "g"), &t("b", "d")),
            TensorElement::simple(w("a*b"), w("g*d"), q_power(2))
        );
        assert_eq!(tensor_mul(&TensorElement::one(), &t("b", "d")), t("b", "d"));
    }

    #[test]
    fn split() {
        let a = Element::coord(Coord::A);
        let g = Element::coord(Coord::G);
        let parts = homogeneous_split(&(&a + &g));
        assert_eq!(parts, vec![(0, a.clone()), (1, g.clone())]);
        assert!(homogeneous_split(&Element::zero()).is_empty());
        let bg = Element::word(w("b*g"));
        assert_eq!(homogeneous_split(&bg), vec![(0, bg.clone())]);
    }

    #[test]
    fn render_signs() {
        let e = Element::from_terms([
            (w("a*d"), CycNum::one()),
            (w("b*g"), CycNum::from_ints(1, -1)),
        ]);
        assert_eq!(e.render(), "a*d - (q-1)*b*g");
        assert_eq!(Element::scalar(CycNum::int(-2)).render(), "-2");
        assert_eq!(Element::zero().render(), "0");
    }

    fn any_gen() -> impl Strategy<Value = Generator> {
        (0usize..17).prop_map(|i| Generator::all()[i])
    }

    fn any_word(max: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec(any_gen(), 0..=max).prop_map(Word)
    }

    fn any_tensor() -> impl Strategy<Value = TensorElement> {
        prop::collection::vec((any_word(2), any_word(2), -3i64..4, -3i64..4), 0..3).prop_map(
            |v| {
                let mut t = TensorElement::zero();
                for (u, x, a, b) in v {
                    t.add_term(u, x, CycNum::from_ints(a, b));
                }
                t
            },
        )
    }

    fn any_element() -> impl Strategy<Value = Element> {
        prop::collection::vec((any_word(3), -3i64..4, -3i64..4), 0..4).prop_map(|v| {
            Element::from_terms(v.into_iter().map(|(w, a, b)| (w, CycNum::from_ints(a, b))))
        })
    }

    proptest! {
        #[test]
        fn grade_additive(u in any_word(4), v in any_word(4)) {
            prop_assert_eq!(word_grade(&u.concat(&v)), (word_grade(&u) + word_grade(&v)) % 3);
        }

        #[test]
        fn tensor_associative(x in any_tensor(), y in any_tensor(), z in any_tensor()) {
            prop_assert_eq!(tensor_mul(&tensor_mul(&x, &y), &z), tensor_mul(&x, &tensor_mul(&y, &z)));
        }

        #[test]
        fn mul_associative_unital(x in any_element(), y in any_element(), z in any_element()) {
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &Element::one(), x.clone());
            prop_assert_eq!(&Element::one() * &x, x.clone());
        }

        #[test]
        fn split_reassembles(x in any_element()) {
            let mut back = Element::zero();
            for (g, part) in homogeneous_split(&x) {
                prop_assert_eq!(part.grade(), Some(g));
                back = back + part;
            }
            prop_assert_eq!(back, x);
        }
    }
}
