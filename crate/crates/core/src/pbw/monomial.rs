//! PBW monomials and straightening of generator words.
//!
//! Products of normal-ordered monomials are computed by moving one generator
//! at a time into place with `x y = y x + [x, y]`. All structure constants of
//! gl(3) in the matrix-unit basis are integers, so straightening coefficients
//! are kept as checked `i64` and memoized per thread.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use crate::liealg::GenId;

/// Ordered monomial `Π x_k^{a_k}` over the nine generators in PBW order.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PBWMonomial([u8; 9]);

/// Normal-form expansion with integer coefficients.
pub type IntExpansion = Rc<[(PBWMonomial, i64)]>;

impl PBWMonomial {
    pub const ONE: PBWMonomial = PBWMonomial([0; 9]);

    pub fn generator(g: GenId) -> Self {
        let mut m = Self::ONE;
        m.0[g.index()] = 1;
        m
    }

    pub fn from_exponents(exps: [u8; 9]) -> Self {
        PBWMonomial(exps)
    }

    pub fn exponents(&self) -> [u8; 9] {
        self.0
    }

    pub fn exponent(&self, g: GenId) -> u8 {
        self.0[g.index()]
    }

    pub fn is_one(&self) -> bool {
        self.0 == [0; 9]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    fn first_gen(&self) -> Option<GenId> {
        self.0.iter().position(|&e| e > 0).map(GenId::from_index)
    }

    fn last_gen(&self) -> Option<GenId> {
        self.0.iter().rposition(|&e| e > 0).map(GenId::from_index)
    }

    /// The generator word this monomial abbreviates, in PBW order.
    pub fn word(&self) -> Vec<GenId> {
        GenId::all().flat_map(|g| std::iter::repeat_n(g, self.exponent(g) as usize)).collect()
    }

    fn bump(mut self, g: GenId) -> Self {
        self.0[g.index()] = self.0[g.index()].checked_add(1).expect("PBW exponent overflow");
        self
    }

    fn drop_one(mut self, g: GenId) -> Self {
        self.0[g.index()] -= 1;
        self
    }
}

impl fmt::Debug for PBWMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PBWMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = GenId::all()
            .filter(|g| self.exponent(*g) > 0)
            .map(|g| match self.exponent(g) {
                1 => g.name(),
                e => format!("{}^{e}", g.name()),
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

thread_local! {
    static MUL_GEN: RefCell<HashMap<(PBWMonomial, GenId), IntExpansion>> = RefCell::new(HashMap::new());
    static MUL_MONO: RefCell<HashMap<(PBWMonomial, PBWMonomial), IntExpansion>> = RefCell::new(HashMap::new());
}

fn add_int(acc: &mut HashMap<PBWMonomial, i64>, m: PBWMonomial, c: i64) {
    let slot = acc.entry(m).or_insert(0);
    *slot = slot.checked_add(c).expect("straightening coefficient overflow");
}

fn finish(acc: HashMap<PBWMonomial, i64>) -> IntExpansion {
    let mut v: Vec<(PBWMonomial, i64)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
    v.sort_unstable_by_key(|a| a.0);
    v.into()
}

fn checked(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("straightening coefficient overflow")
}

/// Normal form of `m · x_g`.
pub fn mul_generator(m: PBWMonomial, g: GenId) -> IntExpansion {
    match m.last_gen() {
        None => return vec![(PBWMonomial::generator(g), 1)].into(),
        Some(last) if last <= g => return vec![(m.bump(g), 1)].into(),
        _ => {}
    }
    if let Some(hit) = MUL_GEN.with(|c| c.borrow().get(&(m, g)).cloned()) {
        return hit;
    }
    let last = m.last_gen().unwrap();
    let head = m.drop_one(last);
    // head · x_last · x_g = (head · x_g) · x_last + head · [x_last, x_g]
    let mut acc = HashMap::new();
    for &(p, c) in mul_generator(head, g).iter() {
        for &(r, d) in mul_generator(p, last).iter() {
            add_int(&mut acc, r, checked(c, d));
        }
    }
    for (h, s) in last.bracket(g) {
        for &(r, d) in mul_generator(head, h).iter() {
            add_int(&mut acc, r, checked(s, d));
        }
    }
    let out = finish(acc);
    MUL_GEN.with(|c| c.borrow_mut().insert((m, g), out.clone()));
    out
}

/// Normal form of the product of two normal-ordered monomials.
pub fn mul_monomials(a: PBWMonomial, b: PBWMonomial) -> IntExpansion {
    if b.is_one() {
        return vec![(a, 1)].into();
    }
    if a.is_one() {
        return vec![(b, 1)].into();
    }
    if a.last_gen() <= b.first_gen() {
        let mut m = a;
        for k in 0..9 {
            m.0[k] = m.0[k].checked_add(b.0[k]).expect("PBW exponent overflow");
        }
        return vec![(m, 1)].into();
    }
    if let Some(hit) = MUL_MONO.with(|c| c.borrow().get(&(a, b)).cloned()) {
        return hit;
    }
    let mut current: HashMap<PBWMonomial, i64> = HashMap::from([(a, 1)]);
    for g in b.word() {
        let mut next = HashMap::new();
        for (m, c) in current {
            for &(r, d) in mul_generator(m, g).iter() {
                add_int(&mut next, r, checked(c, d));
            }
        }
        current = next;
    }
    let out = finish(current);
    MUL_MONO.with(|c| c.borrow_mut().insert((a, b), out.clone()));
    out
}

/// Normal form of an arbitrary generator word via the memoized product.
pub fn straighten_word(word: &[GenId]) -> IntExpansion {
    let mut current: HashMap<PBWMonomial, i64> = HashMap::from([(PBWMonomial::ONE, 1)]);
    for &g in word {
        let mut next = HashMap::new();
        for (m, c) in current {
            for &(r, d) in mul_generator(m, g).iter() {
                add_int(&mut next, r, checked(c, d));
            }
        }
        current = next;
    }
    finish(current)
}

/// Which adjacent inversion a rewriting pass resolves first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SwapStrategy {
    LeftmostFirst,
    RightmostFirst,
}

/// Normal form by plain word rewriting, one adjacent swap at a time.
///
/// Independent of the memoized product; used to cross-check confluence.
pub fn straighten_by_rewriting(word: &[GenId], strategy: SwapStrategy) -> Vec<(PBWMonomial, i64)> {
    let mut pending: Vec<(Vec<GenId>, i64)> = vec![(word.to_vec(), 1)];
    let mut done: HashMap<PBWMonomial, i64> = HashMap::new();
    while let Some((w, c)) = pending.pop() {
        let inversions = (0..w.len().saturating_sub(1)).filter(|&i| w[i] > w[i + 1]);
        let pick = match strategy {
            SwapStrategy::LeftmostFirst => inversions.min(),
            SwapStrategy::RightmostFirst => inversions.max(),
        };
        match pick {
            None => {
                let mut m = PBWMonomial::ONE;
                for g in w {
                    m = m.bump(g);
                }
                add_int(&mut done, m, c);
            }
            Some(i) => {
                let (x, y) = (w[i], w[i + 1]);
                let mut swapped = w.clone();
                swapped.swap(i, i + 1);
                pending.push((swapped, c));
                for (h, s) in x.bracket(y) {
                    let mut shorter = w[..i].to_vec();
                    shorter.push(h);
                    shorter.extend_from_slice(&w[i + 2..]);
                    pending.push((shorter, checked(c, s)));
                }
            }
        }
    }
    finish(done).to_vec()
}
