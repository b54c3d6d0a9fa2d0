//! Commutative polynomials in generator labels with exact rational
//! coefficients.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::centraliser::Gen;
use crate::linalg::Q;

/// A monomial is a sorted list of generators, repeated by multiplicity.
pub type Monomial = Vec<Gen>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparsePolynomial {
    terms: BTreeMap<Monomial, Q>,
}

impl SparsePolynomial {
    pub fn zero() -> SparsePolynomial {
        SparsePolynomial::default()
    }

    pub fn constant(c: Q) -> SparsePolynomial {
        let mut p = SparsePolynomial::zero();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn generator(g: Gen) -> SparsePolynomial {
        let mut p = SparsePolynomial::zero();
        p.add_term(vec![g], Q::one());
        p
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

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &[Gen]) -> Q {
        let mut key = m.to_vec();
        key.sort_unstable();
        self.terms.get(&key).cloned().unwrap_or_else(Q::zero)
    }

    /// Adds `c * m`; `m` need not be sorted.
    pub fn add_term(&mut self, mut m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        m.sort_unstable();
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &SparsePolynomial) -> SparsePolynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SparsePolynomial) -> SparsePolynomial {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, k: &Q) -> SparsePolynomial {
        if k.is_zero() {
            return SparsePolynomial::zero();
        }
        SparsePolynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &SparsePolynomial) -> SparsePolynomial {
        let mut out = SparsePolynomial::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut m = a.clone();
                m.extend_from_slice(b);
                out.add_term(m, x * y);
            }
        }
        out
    }

    /// `Some(d)` when every monomial has degree `d`; `None` for zero or mixed degrees.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(Vec::len);
        let d = degrees.next()?;
        degrees.all(|e| e == d).then_some(d)
    }

    /// Replaces each generator by a multiple of another one, or by zero.
    pub fn substitute(&self, f: impl Fn(Gen) -> Option<(Gen, Q)>) -> SparsePolynomial {
        let mut out = SparsePolynomial::zero();
        'terms: for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut mono = Vec::with_capacity(m.len());
            for &g in m {
                match f(g) {
                    Some((h, k)) => {
                        coeff *= k;
                        mono.push(h);
                    }
                    None => continue 'terms,
                }
            }
            out.add_term(mono, coeff);
        }
        out
    }

    pub fn eval(&self, value: impl Fn(Gen) -> Q) -> Q {
        let mut total = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &g in m {
                t *= value(g);
                if t.is_zero() {
                    break;
                }
            }
            total += t;
        }
        total
    }
}

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for g in m {
                write!(f, "*{g}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    #[test]
    fn arithmetic() {
        let a = SparsePolynomial::generator(Gen::xi(1, 1, 0));
        let b = SparsePolynomial::generator(Gen::xi(1, 2, 0));
        let s = a.add(&b);
        let sq = s.mul(&s);
        assert_eq!(sq.len(), 3);
        assert_eq!(sq.coefficient(&[Gen::xi(1, 2, 0), Gen::xi(1, 1, 0)]), q(2));
        assert_eq!(sq.homogeneous_degree(), Some(2));
        assert!(s.sub(&s).is_zero());
        assert_eq!(
            s.add(&SparsePolynomial::constant(q(1)))
                .homogeneous_degree(),
            None
        );
        let v = sq.eval(|g| if g.j == 1 { q(3) } else { q(-1) });
        assert_eq!(v, q(4));
    }

    #[test]
    fn substitution() {
        let a = SparsePolynomial::generator(Gen::xi(1, 1, 0));
        let b = SparsePolynomial::generator(Gen::xi(2, 2, 0));
        let p = a.mul(&b).add(&a);
        let swapped = p.substitute(|g| Some((Gen::xi(3 - g.i, 3 - g.j, g.s), q(-1))));
        assert_eq!(
            swapped.coefficient(&[Gen::xi(1, 1, 0), Gen::xi(2, 2, 0)]),
            q(1)
        );
        assert_eq!(swapped.coefficient(&[Gen::xi(2, 2, 0)]), q(-1));
        let killed = p.substitute(|g| (g.i == 1).then_some((g, q(1))));
        assert_eq!(killed, a);
    }
}
