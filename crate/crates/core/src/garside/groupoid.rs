use crate::complex::Vertex;
use crate::salvetti::{Letter, SalvettiComplex};

use super::{GarsideContext, GarsideError, Morphism};

/// Δ^{-p}·positive, with the denominator on the left.
///
/// The element starts at φ^p of the source of `positive`. It is canonical
/// when p = 0 or Δ does not left-divide `positive`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupoidElement {
    pub p: usize,
    pub positive: Morphism,
}

/// The vertex a word starts at, read off its first letter.
pub fn word_source(sal: &SalvettiComplex, word: &[Letter]) -> Option<Vertex> {
    let first = word.first()?;
    let (s, t) = sal.endpoints(first.edge)?;
    Some(if first.inverse { t } else { s })
}

impl GarsideContext {
    /// Cancels leading Δ factors against the denominator.
    pub fn reduce_element(&self, mut e: GroupoidElement) -> GroupoidElement {
        while e.p > 0 {
            let x = e.positive.source();
            if e.positive.head() != self.phi().apply(x) || e.positive.is_identity() {
                break;
            }
            let rest = e.positive.ys()[1..].to_vec();
            e.positive = Morphism::from_normal(self.phi().apply(x), rest);
            e.p -= 1;
        }
        e
    }

    /// (p1,P1)·(p2,P2) = (p1+p2, φ^{p2}(P1)·P2).
    pub fn multiply(
        &self,
        a: &GroupoidElement,
        b: &GroupoidElement,
    ) -> Result<GroupoidElement, GarsideError> {
        let mut left = a.positive.clone();
        if b.p % 2 == 1 {
            left = self.apply_phi(&left);
        }
        let positive = self.compose(&left, &b.positive)?;
        Ok(self.reduce_element(GroupoidElement {
            p: a.p + b.p,
            positive,
        }))
    }

    pub fn element_source(&self, e: &GroupoidElement) -> Vertex {
        self.phi().pow(e.positive.source(), e.p)
    }

    /// The canonical element of a word in the directed 1-cells of Sal(Q).
    ///
    /// A letter a: s -> t is u(s,t); its inverse is Δ^{-1}·u(φ(t), s).
    pub fn word_to_element(
        &self,
        sal: &SalvettiComplex,
        start: Vertex,
        word: &[Letter],
    ) -> Result<GroupoidElement, GarsideError> {
        let mut acc = GroupoidElement {
            p: 0,
            positive: Morphism::identity(start),
        };
        let mut at = start;
        for (i, letter) in word.iter().enumerate() {
            let (s, t) = sal
                .endpoints(letter.edge)
                .ok_or(GarsideError::WordNotComposable(i))?;
            let factor = if letter.inverse {
                if at != t {
                    return Err(GarsideError::WordNotComposable(i));
                }
                at = s;
                GroupoidElement {
                    p: 1,
                    positive: self.simple(self.phi().apply(t), s),
                }
            } else {
                if at != s {
                    return Err(GarsideError::WordNotComposable(i));
                }
                at = t;
                GroupoidElement {
                    p: 0,
                    positive: self.simple(s, t),
                }
            };
            acc = self.multiply(&acc, &factor)?;
        }
        Ok(acc)
    }

    pub fn equal(
        &self,
        sal: &SalvettiComplex,
        start: Vertex,
        w1: &[Letter],
        w2: &[Letter],
    ) -> Result<bool, GarsideError> {
        Ok(self.word_to_element(sal, start, w1)? == self.word_to_element(sal, start, w2)?)
    }

    pub fn is_trivial(
        &self,
        sal: &SalvettiComplex,
        start: Vertex,
        w: &[Letter],
    ) -> Result<bool, GarsideError> {
        let e = self.word_to_element(sal, start, w)?;
        Ok(e.p == 0 && e.positive.is_identity())
    }

    pub fn render_element(&self, e: &GroupoidElement) -> String {
        format!("D^-{} . {}", e.p, self.render(&e.positive))
    }
}
