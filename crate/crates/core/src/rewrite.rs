//! Miyamoto words over three generating axes, their normal forms over the
//! nine canonical words, and the Frobenius form values they determine.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::RwLock;

use num_rational::BigRational;
use thiserror::Error;

use crate::algebra::linalg::{Genericity, Matrix};
use crate::algebra::{Element, FusionLaw};
use crate::par::{self, Exec};
use crate::scalar::{sym, Scalar, ScalarError, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    A,
    B,
    C,
}

impl Gen {
    pub const ALL: [Gen; 3] = [Gen::A, Gen::B, Gen::C];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn letter(self) -> char {
        match self {
            Gen::A => 'a',
            Gen::B => 'b',
            Gen::C => 'c',
        }
    }

    pub fn from_letter(c: char) -> Option<Gen> {
        match c {
            'a' => Some(Gen::A),
            'b' => Some(Gen::B),
            'c' => Some(Gen::C),
            _ => None,
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// `[g_1, ..., g_l]h = tau_{g_1}(... tau_{g_l}(h))`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    prefix: Vec<Gen>,
    terminal: Gen,
}

impl Word {
    pub fn new(prefix: Vec<Gen>, terminal: Gen) -> Self {
        Word { prefix, terminal }
    }

    pub fn gen(g: Gen) -> Self {
        Word::new(Vec::new(), g)
    }

    pub fn prefix(&self) -> &[Gen] {
        &self.prefix
    }

    pub fn terminal(&self) -> Gen {
        self.terminal
    }

    /// Prefix length.
    pub fn len(&self) -> usize {
        self.prefix.len()
    }

    pub fn is_generator(&self) -> bool {
        self.prefix.is_empty()
    }

    /// `[g]self`.
    pub fn act(&self, g: Gen) -> Word {
        let mut prefix = Vec::with_capacity(self.prefix.len() + 1);
        prefix.push(g);
        prefix.extend_from_slice(&self.prefix);
        Word::new(prefix, self.terminal)
    }

    /// `[gs]self`, with `gs` outermost first.
    pub fn act_all(&self, gs: &[Gen]) -> Word {
        let mut prefix = gs.to_vec();
        prefix.extend_from_slice(&self.prefix);
        Word::new(prefix, self.terminal)
    }

    /// Removes `[g,g]` pairs and trailing letters equal to the terminal.
    pub fn collapsed(&self) -> Word {
        let mut out: Vec<Gen> = Vec::with_capacity(self.prefix.len());
        for &g in self.prefix.iter().rev() {
            if out.last() == Some(&g) {
                out.pop();
            } else if out.is_empty() && g == self.terminal {
                continue;
            } else {
                out.push(g);
            }
        }
        out.reverse();
        Word::new(out, self.terminal)
    }

    /// Prefix whose action is `tau_self`: `p, h, reverse(p)` for `self = [p]h`.
    pub fn involution_prefix(&self) -> Vec<Gen> {
        let mut out = self.prefix.clone();
        out.push(self.terminal);
        out.extend(self.prefix.iter().rev());
        out
    }

    /// Every word over `letters` with prefix length at most `max_len`.
    pub fn all_up_to(letters: &[Gen], max_len: usize) -> Vec<Word> {
        let mut out: Vec<Word> = letters.iter().map(|&g| Word::gen(g)).collect();
        let mut layer = out.clone();
        for _ in 0..max_len {
            layer = layer
                .iter()
                .flat_map(|w| letters.iter().map(move |&g| w.act(g)))
                .collect();
            out.extend(layer.iter().cloned());
        }
        out
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.prefix.is_empty() {
            f.write_str("[")?;
            for (i, g) in self.prefix.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", g)?;
            }
            f.write_str("]")?;
        }
        write!(f, "{}", self.terminal)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("invalid word {0:?}")]
pub struct WordParseError(pub String);

impl FromStr for Word {
    type Err = WordParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || WordParseError(s.to_string());
        let t = s.trim();
        let (prefix, rest) = match t.strip_prefix('[') {
            Some(inner) => {
                let close = inner.find(']').ok_or_else(err)?;
                let letters = inner[..close]
                    .split(',')
                    .map(|l| {
                        let l = l.trim();
                        let mut cs = l.chars();
                        match (cs.next(), cs.next()) {
                            (Some(c), None) => Gen::from_letter(c).ok_or_else(err),
                            _ => Err(err()),
                        }
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                (letters, inner[close + 1..].trim())
            }
            None => (Vec::new(), t),
        };
        let mut cs = rest.chars();
        match (cs.next(), cs.next()) {
            (Some(c), None) => Ok(Word::new(prefix, Gen::from_letter(c).ok_or_else(err)?)),
            _ => Err(err()),
        }
    }
}

/// The nine spanning words, in basis order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Canon {
    A,
    B,
    C,
    AB,
    AC,
    BC,
    ABC,
    BAC,
    CAB,
}

pub const NCANON: usize = 9;

impl Canon {
    pub const ALL: [Canon; NCANON] = [
        Canon::A,
        Canon::B,
        Canon::C,
        Canon::AB,
        Canon::AC,
        Canon::BC,
        Canon::ABC,
        Canon::BAC,
        Canon::CAB,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Canon {
        Canon::ALL[i]
    }

    pub fn word(self) -> Word {
        use Gen::*;
        match self {
            Canon::A => Word::gen(A),
            Canon::B => Word::gen(B),
            Canon::C => Word::gen(C),
            Canon::AB => Word::new(vec![A], B),
            Canon::AC => Word::new(vec![A], C),
            Canon::BC => Word::new(vec![B], C),
            Canon::ABC => Word::new(vec![A, B], C),
            Canon::BAC => Word::new(vec![B, A], C),
            Canon::CAB => Word::new(vec![C, A], B),
        }
    }

    pub fn from_word(w: &Word) -> Option<Canon> {
        Canon::ALL.into_iter().find(|c| c.word() == *w)
    }

    pub fn generator(g: Gen) -> Canon {
        Canon::ALL[g.index()]
    }

    pub fn labels() -> Vec<String> {
        Canon::ALL.iter().map(|c| c.to_string()).collect()
    }
}

impl fmt::Display for Canon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.word())
    }
}

/// A linear combination of the canonical words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NormalForm(Element);

impl NormalForm {
    pub fn zero() -> Self {
        NormalForm(Element::zero(NCANON))
    }

    pub fn unit(c: Canon) -> Self {
        NormalForm(Element::basis(NCANON, c.index()))
    }

    pub fn from_element(e: Element) -> Self {
        assert_eq!(e.dim(), NCANON, "normal forms live in the nine-word span");
        NormalForm(e)
    }

    pub fn as_element(&self) -> &Element {
        &self.0
    }

    pub fn into_element(self) -> Element {
        self.0
    }

    pub fn coeff(&self, c: Canon) -> &Scalar {
        self.0.coeff(c.index())
    }

    pub fn terms(&self) -> impl Iterator<Item = (Canon, &Scalar)> {
        Canon::ALL
            .into_iter()
            .map(|c| (c, self.coeff(c)))
            .filter(|(_, s)| !s.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        NormalForm(self.0.scale(s))
    }

    pub fn add_scaled(&self, s: &Scalar, other: &NormalForm) -> Self {
        NormalForm(self.0.add_scaled(s, &other.0))
    }

    fn minus(&self, other: &NormalForm) -> Self {
        NormalForm(&self.0 - &other.0)
    }

    pub fn specialize(&self, bindings: &[(Var, BigRational)]) -> Result<Self, ScalarError> {
        Ok(NormalForm(self.0.specialize(bindings)?))
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.display(&Canon::labels()))
    }
}

impl fmt::Debug for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RewriteError {
    #[error("alpha and beta coincide")]
    CoincidentEigenvalues,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("inconsistent form value for ({0}, {1}): {2} vs {3}")]
    Inconsistent(Canon, Canon, Scalar, Scalar),
    #[error("closure did not stabilize within {0} steps")]
    NotStabilized(usize),
}

/// The law and the form values `x = (a,b)`, `y = (a,c)`, `z = (b,c)`, `p = (a,[b]c)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ThreeGenParams {
    pub law: FusionLaw,
    pub x: Scalar,
    pub y: Scalar,
    pub z: Scalar,
    pub p: Scalar,
}

impl ThreeGenParams {
    pub fn generic() -> Self {
        ThreeGenParams {
            law: FusionLaw::symbolic(),
            x: sym::x(),
            y: sym::y(),
            z: sym::z(),
            p: sym::p(),
        }
    }

    /// Substitutes the bindings into every parameter.
    pub fn specialize(&self, bindings: &[(Var, BigRational)]) -> Result<Self, ScalarError> {
        Ok(ThreeGenParams {
            law: FusionLaw {
                alpha: self.law.alpha.specialize(bindings)?,
                beta: self.law.beta.specialize(bindings)?,
                strict_alpha: self.law.strict_alpha,
            },
            x: self.x.specialize(bindings)?,
            y: self.y.specialize(bindings)?,
            z: self.z.specialize(bindings)?,
            p: self.p.specialize(bindings)?,
        })
    }

    /// `(g, h)` for generators.
    pub fn pair(&self, g: Gen, h: Gen) -> Scalar {
        use Gen::*;
        match (g.min(h), g.max(h)) {
            (A, A) | (B, B) | (C, C) => Scalar::one(),
            (A, B) => self.x.clone(),
            (A, C) => self.y.clone(),
            (B, C) => self.z.clone(),
            _ => unreachable!(),
        }
    }

    /// `eps` for two axes with form value `v`.
    pub fn epsilon_of(&self, v: &Scalar) -> Scalar {
        let (a, b) = (&self.law.alpha, &self.law.beta);
        let num = &(&(&Scalar::from_int(2) * v) * &(a - &Scalar::one())) + &(a + b);
        -(&num / &(a - b))
    }
}

/// Memoized form values of canonical pairs; first write wins and later writes must agree.
#[derive(Debug, Default)]
pub struct GramCache {
    memo: RwLock<HashMap<(Canon, Canon), Scalar>>,
}

fn key(c1: Canon, c2: Canon) -> (Canon, Canon) {
    (c1.min(c2), c1.max(c2))
}

impl GramCache {
    pub fn seeded(params: &ThreeGenParams) -> Self {
        let mut m = HashMap::new();
        for c in [Canon::A, Canon::B, Canon::C] {
            m.insert((c, c), Scalar::one());
        }
        m.insert((Canon::A, Canon::B), params.x.clone());
        m.insert((Canon::A, Canon::C), params.y.clone());
        m.insert((Canon::B, Canon::C), params.z.clone());
        m.insert((Canon::A, Canon::BC), params.p.clone());
        GramCache { memo: RwLock::new(m) }
    }

    pub fn get(&self, c1: Canon, c2: Canon) -> Option<Scalar> {
        self.memo.read().expect("gram cache poisoned").get(&key(c1, c2)).cloned()
    }

    pub fn insert(&self, c1: Canon, c2: Canon, v: Scalar) -> Result<Scalar, RewriteError> {
        let mut m = self.memo.write().expect("gram cache poisoned");
        match m.get(&key(c1, c2)) {
            Some(old) if *old != v => Err(RewriteError::Inconsistent(c1, c2, old.clone(), v)),
            Some(old) => Ok(old.clone()),
            None => {
                m.insert(key(c1, c2), v.clone());
                Ok(v)
            }
        }
    }

    pub fn len(&self) -> usize {
        self.memo.read().expect("gram cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Order in which rewriting steps are applied to a word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Apply the innermost involution first.
    Innermost,
    /// Compose the involution matrices outermost first, then apply.
    Outermost,
    /// Free-reduce the prefix before rewriting.
    CollapseFirst,
    /// Rewrite an innermost `[g,q,g]h` as `[[g]q]h` and swap it with `h` first.
    ConjugationFirst,
}

impl Strategy {
    pub const ALL: [Strategy; 4] = [
        Strategy::Innermost,
        Strategy::Outermost,
        Strategy::CollapseFirst,
        Strategy::ConjugationFirst,
    ];
}

/// Rewrites words of prefix length at most three by the swap, collapse and
/// conjugation identities.
struct RuleEngine<'a> {
    params: &'a ThreeGenParams,
    memo: HashMap<Word, NormalForm>,
}

impl<'a> RuleEngine<'a> {
    fn eps(&self, g: Gen, h: Gen) -> Scalar {
        self.params.epsilon_of(&self.params.pair(g, h))
    }

    fn reduce(&mut self, w: &Word) -> NormalForm {
        let w = w.collapsed();
        if let Some(c) = Canon::from_word(&w) {
            return NormalForm::unit(c);
        }
        if let Some(nf) = self.memo.get(&w) {
            return nf.clone();
        }
        let p = w.prefix.clone();
        let h = w.terminal;
        let gen = |g: Gen| NormalForm::unit(Canon::generator(g));
        let nf = match p.len() {
            1 => {
                // [q]h = [h]q + eps_{q,h}(h - q)
                let q = p[0];
                self.reduce(&Word::new(vec![h], q))
                    .add_scaled(&self.eps(q, h), &gen(h).minus(&gen(q)))
            }
            2 => {
                let (g, q) = (p[0], p[1]);
                let swapped = self.reduce(&Word::new(vec![g, h], q));
                let diff = self
                    .reduce(&Word::new(vec![g], h))
                    .minus(&self.reduce(&Word::new(vec![g], q)));
                swapped.add_scaled(&self.eps(q, h), &diff)
            }
            3 => {
                let (g, q, r) = (p[0], p[1], p[2]);
                if g == r {
                    // [g,q,g]h = [[g]q]h = [h][g]q + eps_{[g]q,h}(h - [g]q)
                    let e = self.params.epsilon_of(&self.axis_pair(g, q, h));
                    let swapped = self.reduce(&Word::new(vec![h, g], q));
                    let diff = gen(h).minus(&self.reduce(&Word::new(vec![g], q)));
                    swapped.add_scaled(&e, &diff)
                } else {
                    let swapped = self.reduce(&Word::new(vec![g, q, h], r));
                    let diff = self
                        .reduce(&Word::new(vec![g, q], h))
                        .minus(&self.reduce(&Word::new(vec![g, q], r)));
                    swapped.add_scaled(&self.eps(r, h), &diff)
                }
            }
            n => unreachable!("rule engine handles prefixes up to length 3, got {}", n),
        };
        self.memo.insert(w, nf.clone());
        nf
    }

    /// `([g]q, h) = (q, [g]h)`.
    fn axis_pair(&mut self, g: Gen, q: Gen, h: Gen) -> Scalar {
        let nf = self.reduce(&Word::new(vec![g], h));
        self.pair_with(q, &nf)
    }

    fn pair_with(&mut self, h: Gen, nf: &NormalForm) -> Scalar {
        let terms: Vec<(Canon, Scalar)> = nf.terms().map(|(c, s)| (c, s.clone())).collect();
        terms
            .into_iter()
            .map(|(c, s)| &s * &self.generator_value(h, c))
            .sum()
    }

    /// `(h, w)` for a generator `h` and a canonical word `w`.
    fn generator_value(&mut self, h: Gen, c: Canon) -> Scalar {
        let w = c.word();
        let p = w.prefix.clone();
        let k = w.terminal;
        match p.len() {
            0 => self.params.pair(h, k),
            1 => {
                let g = p[0];
                if h == g {
                    self.params.pair(g, k)
                } else if h == k {
                    // (k, [g]k) = (g,k) - eps_{g,k}((g,k) - 1)
                    let v = self.params.pair(g, k);
                    &v - &(&self.eps(g, k) * &(&v - &Scalar::one()))
                } else {
                    self.third_letter_value(h, g, k)
                }
            }
            2 => {
                let (g1, g2) = (p[0], p[1]);
                if h == g1 {
                    self.generator_value(h, Canon::from_word(&Word::new(vec![g2], k)).expect("canonical"))
                } else if h == g2 {
                    // ([g1]g2, [g2]k) = (k, [g2,g1]g2)
                    let nf = self.reduce(&Word::new(vec![g2, g1], g2));
                    self.pair_with(k, &nf)
                } else {
                    // (k, [g1]u) = (g1, [k]u) + eps_{g1,k}((k,u) - (g1,u)), u = [g2]k
                    let u = Canon::from_word(&Word::new(vec![g2], k)).expect("canonical");
                    let nf = self.reduce(&Word::new(vec![k, g2], k));
                    let head = self.pair_with(g1, &nf);
                    let diff = &self.generator_value(k, u) - &self.generator_value(g1, u);
                    &head + &(&self.eps(g1, k) * &diff)
                }
            }
            _ => unreachable!(),
        }
    }

    /// `(h, [g]k)` for three distinct letters, reduced to `p = (a,[b]c)`.
    fn third_letter_value(&mut self, h: Gen, g: Gen, k: Gen) -> Scalar {
        if g == Gen::B {
            return self.params.p.clone();
        }
        if h == Gen::B {
            // (h,[g]k) = (g,[h]k) + eps_{g,h}((h,k) - (g,k))
            let diff = &self.params.pair(h, k) - &self.params.pair(g, k);
            &self.third_letter_value(g, h, k) + &(&self.eps(g, h) * &diff)
        } else {
            // (h,[g]k) = (h,[k]g) + eps_{g,k}((h,k) - (h,g))
            let diff = &self.params.pair(h, k) - &self.params.pair(h, g);
            &self.third_letter_value(h, k, g) + &(&self.eps(g, k) * &diff)
        }
    }
}

/// Normal forms and form values for the algebra generated by three axes.
#[derive(Debug)]
pub struct Rewriter {
    params: ThreeGenParams,
    tau: [Matrix; 3],
    generator_values: Vec<Vec<Scalar>>,
    cache: GramCache,
}

impl Rewriter {
    pub fn new(params: ThreeGenParams) -> Result<Self, RewriteError> {
        if params.law.alpha == params.law.beta {
            return Err(RewriteError::CoincidentEigenvalues);
        }
        let mut engine = RuleEngine {
            params: &params,
            memo: HashMap::new(),
        };
        let tau = Gen::ALL.map(|g| {
            let cols: Vec<Vec<Scalar>> = Canon::ALL
                .iter()
                .map(|c| engine.reduce(&c.word().act(g)).into_element().into_coeffs())
                .collect();
            Matrix::from_columns(&cols)
        });
        let generator_values = Gen::ALL
            .iter()
            .map(|&h| Canon::ALL.iter().map(|&c| engine.generator_value(h, c)).collect())
            .collect();
        let cache = GramCache::seeded(&params);
        Ok(Rewriter {
            params,
            tau,
            generator_values,
            cache,
        })
    }

    pub fn generic() -> Self {
        Rewriter::new(ThreeGenParams::generic()).expect("symbolic alpha and beta differ")
    }

    pub fn params(&self) -> &ThreeGenParams {
        &self.params
    }

    pub fn cache(&self) -> &GramCache {
        &self.cache
    }

    /// Matrix of `tau_g` on the canonical span; column `j` is the normal form of `[g]w_j`.
    pub fn involution(&self, g: Gen) -> &Matrix {
        &self.tau[g.index()]
    }

    pub fn apply(&self, g: Gen, v: &NormalForm) -> NormalForm {
        NormalForm(Element::new(self.tau[g.index()].apply(v.0.coeffs())))
    }

    pub fn apply_all(&self, prefix: &[Gen], v: &NormalForm) -> NormalForm {
        prefix.iter().rev().fold(v.clone(), |acc, &g| self.apply(g, &acc))
    }

    /// Innermost-first normal form.
    pub fn normalize(&self, w: &Word) -> NormalForm {
        self.apply_all(&w.prefix, &NormalForm::unit(Canon::generator(w.terminal)))
    }

    /// `tau_u(v)` for an axis given as a word.
    pub fn apply_axis(&self, u: &Word, v: &NormalForm) -> NormalForm {
        self.apply_all(&u.involution_prefix(), v)
    }

    pub fn normalize_with(&self, w: &Word, strategy: Strategy) -> NormalForm {
        match strategy {
            Strategy::Innermost => self.normalize(w),
            Strategy::Outermost => {
                let m = w
                    .prefix
                    .iter()
                    .fold(Matrix::identity(NCANON), |acc, &g| acc.mul(&self.tau[g.index()]));
                let e = NormalForm::unit(Canon::generator(w.terminal));
                NormalForm(Element::new(m.apply(e.0.coeffs())))
            }
            Strategy::CollapseFirst => self.normalize(&w.collapsed()),
            Strategy::ConjugationFirst => self.normalize_by_conjugation(w),
        }
    }

    fn normalize_by_conjugation(&self, w: &Word) -> NormalForm {
        let p = &w.prefix;
        let h = w.terminal;
        let n = p.len();
        if n < 3 || p[n - 3] != p[n - 1] || p[n - 3] == p[n - 2] || h == p[n - 1] || h == p[n - 2] {
            return self.normalize(w);
        }
        let (g, q) = (p[n - 3], p[n - 2]);
        let u = Word::new(vec![g], q);
        let e = self.epsilon(&u, &Word::gen(h));
        let swapped = self.normalize(&Word::new(vec![h, g], q));
        let conj = swapped.add_scaled(&e, &NormalForm::unit(Canon::generator(h)).minus(&self.normalize(&u)));
        self.apply_all(&p[..n - 3], &conj)
    }

    /// `tau_u(v)` through `[u]w = [w]u + eps_{u,w}(w - u)` on each canonical word `w` of `v`.
    /// This holds in every algebra of the class but is not one of the rewriting rules.
    pub fn compound_swap(&self, u: &Word, v: &NormalForm) -> NormalForm {
        let nu = self.normalize(u);
        v.terms().fold(NormalForm::zero(), |acc, (c, s)| {
            let w = c.word();
            let e = self.epsilon(u, &w);
            let swapped = self.apply_axis(&w, &nu);
            let term = swapped.add_scaled(&e, &NormalForm::unit(c).minus(&nu));
            acc.add_scaled(s, &term)
        })
    }

    /// Canonical pairs with `[u]v - [v]u != eps_{u,v}(v - u)`.
    pub fn compound_swap_defects(&self, exec: Exec) -> Vec<(Canon, Canon)> {
        let pairs: Vec<(Canon, Canon)> = Canon::ALL
            .iter()
            .flat_map(|&c1| Canon::ALL.iter().filter(move |&&c2| c2 > c1).map(move |&c2| (c1, c2)))
            .collect();
        par::map(exec, &pairs, |&(c1, c2)| {
            let (u, v) = (c1.word(), c2.word());
            let (nu, nv) = (NormalForm::unit(c1), NormalForm::unit(c2));
            let lhs = self.apply_axis(&u, &nv).minus(&self.apply_axis(&v, &nu));
            let rhs = nv.minus(&nu).scale(&self.epsilon(&u, &v));
            (lhs != rhs).then_some((c1, c2))
        })
        .into_iter()
        .flatten()
        .collect()
    }

    /// Canonical pairs whose form value depends on which prefix is transported.
    pub fn gram_asymmetries(&self, exec: Exec) -> Vec<(Canon, Canon, Scalar)> {
        let pairs: Vec<(Canon, Canon)> = Canon::ALL
            .iter()
            .flat_map(|&c1| Canon::ALL.iter().filter(move |&&c2| c2 > c1).map(move |&c2| (c1, c2)))
            .collect();
        par::map(exec, &pairs, |&(c1, c2)| {
            let d = &self.gram_by_transport(&c1.word(), &c2.word()) - &self.gram_by_transport(&c2.word(), &c1.word());
            (!d.is_zero()).then_some((c1, c2, d))
        })
        .into_iter()
        .flatten()
        .collect()
    }

    /// `(h, w)` for a generator and a canonical word.
    pub fn generator_value(&self, h: Gen, c: Canon) -> &Scalar {
        &self.generator_values[h.index()][c.index()]
    }

    fn pair_generator(&self, h: Gen, nf: &NormalForm) -> Scalar {
        nf.terms().map(|(c, s)| s * self.generator_value(h, c)).sum()
    }

    /// Moves the prefix of `w1` onto `w2` and pairs the terminal with the result.
    pub fn gram_by_transport(&self, w1: &Word, w2: &Word) -> Scalar {
        let mut prefix: Vec<Gen> = w1.prefix.iter().rev().cloned().collect();
        prefix.extend_from_slice(&w2.prefix);
        let moved = self.normalize(&Word::new(prefix, w2.terminal));
        self.pair_generator(w1.terminal, &moved)
    }

    /// Form value of two canonical words, memoized.
    pub fn gram_canon(&self, c1: Canon, c2: Canon) -> Result<Scalar, RewriteError> {
        if let Some(v) = self.cache.get(c1, c2) {
            return Ok(v);
        }
        let (long, short) = if c1.word().len() >= c2.word().len() { (c1, c2) } else { (c2, c1) };
        let v = self.gram_by_transport(&long.word(), &short.word());
        self.cache.insert(c1, c2, v)
    }

    pub fn gram_nf(&self, u: &NormalForm, v: &NormalForm) -> Scalar {
        let mut acc = Scalar::zero();
        for (c1, s1) in u.terms() {
            for (c2, s2) in v.terms() {
                let g = self.gram_canon(c1, c2).expect("form values are consistent");
                acc = &acc + &(&(s1 * s2) * &g);
            }
        }
        acc
    }

    pub fn gram_value(&self, w1: &Word, w2: &Word) -> Scalar {
        self.gram_nf(&self.normalize(w1), &self.normalize(w2))
    }

    /// `eps_{u,v}` for two axes given as words.
    pub fn epsilon(&self, u: &Word, v: &Word) -> Scalar {
        self.params.epsilon_of(&self.gram_value(u, v))
    }

    /// The 9x9 matrix of form values on the canonical words.
    pub fn gram_matrix(&self, exec: Exec) -> Result<Matrix, RewriteError> {
        let pairs: Vec<(Canon, Canon)> = Canon::ALL
            .iter()
            .flat_map(|&c1| Canon::ALL.iter().filter(move |&&c2| c2 >= c1).map(move |&c2| (c1, c2)))
            .collect();
        let values = par::map(exec, &pairs, |&(c1, c2)| self.gram_canon(c1, c2));
        let mut m = Matrix::zeros(NCANON, NCANON);
        for (&(c1, c2), v) in pairs.iter().zip(values) {
            let v = v?;
            m.set(c1.index(), c2.index(), v.clone());
            m.set(c2.index(), c1.index(), v);
        }
        Ok(m)
    }

    /// Pairs `(g, w)` with `tau_g(tau_g(w)) != w` after normalization.
    pub fn involution_defects(&self, max_len: usize, exec: Exec) -> Vec<(Gen, Word)> {
        let words = Word::all_up_to(&Gen::ALL, max_len);
        let checks: Vec<(Gen, Word)> = words
            .iter()
            .flat_map(|w| Gen::ALL.iter().map(move |&g| (g, w.clone())))
            .collect();
        par::map(exec, &checks, |(g, w)| {
            let nw = self.normalize(w);
            let twice = self.apply(*g, &self.normalize(&w.act(*g)));
            (twice != nw).then(|| (*g, w.clone()))
        })
        .into_iter()
        .flatten()
        .collect()
    }

    /// Words whose normal form depends on the rewriting strategy.
    pub fn confluence_defects(&self, max_len: usize, exec: Exec) -> Vec<(Word, Strategy)> {
        let words = Word::all_up_to(&Gen::ALL, max_len);
        par::map(exec, &words, |w| {
            let base = self.normalize(w);
            Strategy::ALL
                .iter()
                .filter(|&&s| self.normalize_with(w, s) != base)
                .map(|&s| (w.clone(), s))
                .collect::<Vec<_>>()
        })
        .into_iter()
        .flatten()
        .collect()
    }

    /// Canonical pairs and generators with `(w1, [g]w2) != ([g]w1, w2)`.
    pub fn transport_defects(&self, exec: Exec) -> Vec<(Canon, Canon, Gen)> {
        let triples: Vec<(Canon, Canon, Gen)> = Canon::ALL
            .iter()
            .flat_map(|&c1| {
                Canon::ALL
                    .iter()
                    .flat_map(move |&c2| Gen::ALL.iter().map(move |&g| (c1, c2, g)))
            })
            .collect();
        par::map(exec, &triples, |&(c1, c2, g)| {
            let left = self.gram_nf(&NormalForm::unit(c1), &self.apply(g, &NormalForm::unit(c2)));
            let right = self.gram_nf(&self.apply(g, &NormalForm::unit(c1)), &NormalForm::unit(c2));
            (left != right).then_some((c1, c2, g))
        })
        .into_iter()
        .flatten()
        .collect()
    }

    /// Spans `S[0], S[1], ...` of the words over `letters` until two consecutive ones agree.
    pub fn closure(&self, letters: &[Gen], max_n: usize) -> Result<Closure, RewriteError> {
        let mut genericity = Genericity::default();
        let start: Vec<NormalForm> = letters.iter().map(|&g| NormalForm::unit(Canon::generator(g))).collect();
        let mut basis = independent(&start, &mut genericity);
        let mut bases = vec![basis.clone()];
        for n in 1..=max_n + 1 {
            let mut span = basis.clone();
            for v in &basis {
                for &g in letters {
                    span.push(self.apply(g, v));
                }
            }
            let next = independent(&span, &mut genericity);
            let done = next.len() == basis.len();
            bases.push(next.clone());
            basis = next;
            if done {
                return Ok(Closure {
                    dims: bases.iter().map(|b| b.len()).collect(),
                    bases,
                    stabilized_at: n - 1,
                    genericity,
                });
            }
        }
        Err(RewriteError::NotStabilized(max_n))
    }
}

fn independent(vs: &[NormalForm], genericity: &mut Genericity) -> Vec<NormalForm> {
    if vs.is_empty() {
        return Vec::new();
    }
    let cols: Vec<Vec<Scalar>> = vs.iter().map(|v| v.0.coeffs().to_vec()).collect();
    let e = Matrix::from_columns(&cols).echelon();
    genericity.extend(&e.genericity);
    e.pivots.iter().map(|&j| vs[j].clone()).collect()
}

#[derive(Clone, Debug)]
pub struct Closure {
    /// `dim S[i]` for every computed `i`; the last two agree.
    pub dims: Vec<usize>,
    pub bases: Vec<Vec<NormalForm>>,
    /// First `n` with `S[n] = S[n+1]`.
    pub stabilized_at: usize,
    pub genericity: Genericity,
}

impl Closure {
    /// Smallest `n >= 1` from which the span is known to be the whole algebra.
    pub fn certified_at(&self) -> usize {
        self.stabilized_at.max(1)
    }

    pub fn dim(&self) -> usize {
        *self.dims.last().expect("closure has at least one step")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn word_syntax_round_trips() {
        for s in ["a", "[a]b", "[a,b]c", "[c,a,b,a]c"] {
            assert_eq!(w(s).to_string(), s);
        }
        assert!("[a,]b".parse::<Word>().is_err());
        assert!("[a]d".parse::<Word>().is_err());
        assert!("ab".parse::<Word>().is_err());
    }

    #[test]
    fn collapse_removes_trivial_letters() {
        assert_eq!(w("[a,a]b").collapsed(), w("b"));
        assert_eq!(w("[a,b,a,a]c").collapsed(), w("[a,b]c"));
        assert_eq!(w("[b,a]a").collapsed(), w("[b]a"));
        assert_eq!(w("[a,b,b]a").collapsed(), w("a"));
    }

    #[test]
    fn swap_identity_for_generators() {
        let r = Rewriter::generic();
        let e = r.params().epsilon_of(&sym::x());
        let lhs = r.normalize(&w("[b]a"));
        let rhs = NormalForm::unit(Canon::AB)
            .add_scaled(&e, &NormalForm::unit(Canon::A))
            .add_scaled(&-&e, &NormalForm::unit(Canon::B));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn involutions_square_to_identity() {
        let r = Rewriter::generic();
        for g in Gen::ALL {
            let sq = r.involution(g).mul(r.involution(g));
            assert_eq!(sq, Matrix::identity(NCANON), "tau_{}", g);
        }
    }

    #[test]
    fn seeded_values() {
        let r = Rewriter::generic();
        assert_eq!(r.gram_value(&w("a"), &w("[b]c")), sym::p());
        assert_eq!(r.gram_value(&w("[a]b"), &w("[a]c")), sym::z());
        assert_eq!(r.gram_value(&w("[a]b"), &w("[a,b]c")), sym::z());
        assert_eq!(r.gram_value(&w("a"), &w("[a,b]c")), sym::p());
    }
}
