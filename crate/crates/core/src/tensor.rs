//! Graded basis bookkeeping and sparse tensors with Koszul signs.
//!
//! A [`TensorElement`] is a finite linear combination of pure basis tensors
//! over one algebra's graded basis, stored in canonical form: keys are index
//! tuples ordered lexicographically (`BTreeMap`), zero coefficients are never
//! kept. All structural sign rules live here: a transposition of adjacent
//! homogeneous factors of degrees `d`, `e` costs `(-1)^(d*e)`, and every
//! other permutation sign is derived from that by decomposition into adjacent
//! swaps. Operations that merely concatenate factors introduce no sign.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Opaque identity of one algebra instance. Two algebras built from the same
/// description are still distinct; mixing their elements is an error.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraId(u64);

static NEXT_ALGEBRA_ID: AtomicU64 = AtomicU64::new(1);

impl AlgebraId {
    pub fn fresh() -> Self {
        AlgebraId(NEXT_ALGEBRA_ID.fetch_add(1, Ordering::Relaxed))
    }
}

/// Named, integer-graded basis of one algebra. Immutable once built.
#[derive(Debug)]
pub struct GradedBasis {
    id: AlgebraId,
    names: Vec<String>,
    degrees: Vec<i64>,
    by_name: BTreeMap<String, u32>,
}

impl GradedBasis {
    pub fn new(entries: Vec<(String, i64)>) -> Arc<Self> {
        let mut by_name = BTreeMap::new();
        for (i, (name, _)) in entries.iter().enumerate() {
            by_name.insert(name.clone(), i as u32);
        }
        let (names, degrees) = entries.into_iter().unzip();
        Arc::new(GradedBasis {
            id: AlgebraId::fresh(),
            names,
            degrees,
            by_name,
        })
    }

    pub fn id(&self) -> AlgebraId {
        self.id
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, index: u32) -> &str {
        &self.names[index as usize]
    }

    pub fn degree(&self, index: u32) -> i64 {
        self.degrees[index as usize]
    }

    pub fn parity(&self, index: u32) -> u8 {
        (self.degrees[index as usize] & 1) as u8
    }

    pub fn index_of(&self, name: &str) -> Result<u32> {
        self.by_name
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownBasisName {
                name: name.to_string(),
            })
    }

    pub fn indices(&self) -> impl Iterator<Item = u32> + '_ {
        0..self.len() as u32
    }
}

/// Sparse element of `A^{⊗k}` for one algebra `A`.
#[derive(Clone)]
pub struct TensorElement {
    basis: Arc<GradedBasis>,
    arity: usize,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl PartialEq for TensorElement {
    fn eq(&self, other: &Self) -> bool {
        self.basis.id() == other.basis.id() && self.arity == other.arity && self.terms == other.terms
    }
}

impl Eq for TensorElement {}

impl TensorElement {
    pub fn zero(basis: Arc<GradedBasis>, arity: usize) -> Self {
        TensorElement {
            basis,
            arity,
            terms: BTreeMap::new(),
        }
    }

    /// The pure tensor `Δ_{i₁} ⊗ … ⊗ Δ_{i_k}` with coefficient 1.
    pub fn basis_tensor(basis: Arc<GradedBasis>, indices: &[u32]) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(indices.to_vec(), Scalar::one());
        TensorElement {
            basis,
            arity: indices.len(),
            terms,
        }
    }

    /// Arity-0 tensor holding a plain scalar.
    pub fn scalar_tensor(basis: Arc<GradedBasis>, value: Scalar) -> Self {
        let mut t = TensorElement::zero(basis, 0);
        t.add_term(Vec::new(), value);
        t
    }

    pub fn from_terms<I>(basis: Arc<GradedBasis>, arity: usize, entries: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, Scalar)>,
    {
        let mut t = TensorElement::zero(basis, arity);
        for (key, coeff) in entries {
            t.add_term(key, coeff);
        }
        t
    }

    pub fn basis(&self) -> &Arc<GradedBasis> {
        &self.basis
    }

    pub fn algebra_id(&self) -> AlgebraId {
        self.basis.id()
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, key: &[u32]) -> Scalar {
        self.terms.get(key).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Extract the arity-0 value. Panics if arity is not 0.
    pub fn as_scalar(&self) -> Scalar {
        assert_eq!(self.arity, 0, "not an arity-0 tensor");
        self.coefficient(&[])
    }

    /// Adds `coeff · key`, keeping canonical form.
    pub fn add_term(&mut self, key: Vec<u32>, coeff: Scalar) {
        debug_assert_eq!(key.len(), self.arity);
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return TensorElement::zero(self.basis.clone(), self.arity);
        }
        let terms = self
            .terms
            .iter()
            .map(|(k, v)| (k.clone(), v * c))
            .collect();
        TensorElement {
            basis: self.basis.clone(),
            arity: self.arity,
            terms,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (k, v) in other.terms.iter() {
            out.add_term(k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scaled(&-Scalar::one()))
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.basis.id() != other.basis.id() {
            return Err(Error::AlgebraMismatch);
        }
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: other.arity,
            });
        }
        Ok(())
    }

    /// Total degree of a pure-tensor key.
    pub fn key_degree(&self, key: &[u32]) -> i64 {
        key.iter().map(|&i| self.basis.degree(i)).sum()
    }


    /// `true` when every term has the same degree parity; returns it.
    pub fn parity(&self) -> Option<u8> {
        let mut parity = None;
        for key in self.terms.keys() {
            let p = (self.key_degree(key) & 1) as u8;
            match parity {
                None => parity = Some(p),
                Some(existing) if existing != p => return None,
                _ => {}
            }
        }
        parity.or(Some(0))
    }

    /// Swaps tensor factors `i` and `i+1` in every term, multiplying each
    /// coefficient by `(-1)^(deg_i · deg_{i+1})`.
    pub fn koszul_swap(&self, i: usize) -> Result<Self> {
        if self.arity < 2 || i + 1 >= self.arity {
            return Err(Error::SlotOutOfRange {
                slot: i,
                arity: self.arity,
            });
        }
        let mut out = TensorElement::zero(self.basis.clone(), self.arity);
        for (key, coeff) in self.terms.iter() {
            let mut new_key = key.clone();
            new_key.swap(i, i + 1);
            let sign = self.basis.degree(key[i]) * self.basis.degree(key[i + 1]);
            let c = if sign % 2 != 0 {
                -coeff.clone()
            } else {
                coeff.clone()
            };
            out.add_term(new_key, c);
        }
        Ok(out)
    }

    /// Rearranges factors so that result slot `i` holds the original slot
    /// `perm[i]`, with the Koszul sign of that permutation on each term.
    pub fn koszul_permute(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: perm.len(),
            });
        }
        let mut seen = vec![false; self.arity];
        for &p in perm {
            if p >= self.arity || seen[p] {
                return Err(Error::BadShuffle {
                    detail: format!("{perm:?} is not a permutation of 0..{}", self.arity),
                });
            }
            seen[p] = true;
        }
        let mut out = TensorElement::zero(self.basis.clone(), self.arity);
        for (key, coeff) in self.terms.iter() {
            let degrees: Vec<i64> = key.iter().map(|&i| self.basis.degree(i)).collect();
            let sign = koszul_permutation_sign(&degrees, perm);
            let new_key: Vec<u32> = perm.iter().map(|&p| key[p]).collect();
            let c = if sign { -coeff.clone() } else { coeff.clone() };
            out.add_term(new_key, c);
        }
        Ok(out)
    }
}

/// Koszul sign of pulling factors into the order given by `perm`
/// (result position `i` takes source position `perm[i]`): `true` means `-1`.
/// The sign counts inversions weighted by degree products, which is the sign
/// obtained from any decomposition into adjacent transpositions.
pub fn koszul_permutation_sign(degrees: &[i64], perm: &[usize]) -> bool {
    let mut exponent: i64 = 0;
    for a in 0..perm.len() {
        for b in (a + 1)..perm.len() {
            if perm[a] > perm[b] {
                exponent += degrees[perm[a]] * degrees[perm[b]];
            }
        }
    }
    exponent % 2 != 0
}

/// `Σ coeffs[i] · tensors[i]` in canonical form. All inputs must share one
/// algebra and arity; the lists must be non-empty and of equal length.
pub fn combine(coeffs: &[Scalar], tensors: &[TensorElement]) -> Result<TensorElement> {
    if coeffs.len() != tensors.len() {
        return Err(Error::ArityMismatch {
            expected: coeffs.len(),
            got: tensors.len(),
        });
    }
    let first = tensors.first().ok_or(Error::ArityMismatch {
        expected: 1,
        got: 0,
    })?;
    let mut out = TensorElement::zero(first.basis.clone(), first.arity);
    for (c, t) in coeffs.iter().zip(tensors) {
        first.compatible(t)?;
        for (k, v) in t.terms.iter() {
            out.add_term(k.clone(), c * v);
        }
    }
    Ok(out)
}

/// Concatenation `u ⊗ v`. No Koszul sign: nothing moves past anything.
pub fn tensor_product(u: &TensorElement, v: &TensorElement) -> Result<TensorElement> {
    if u.basis.id() != v.basis.id() {
        return Err(Error::AlgebraMismatch);
    }
    let mut out = TensorElement::zero(u.basis.clone(), u.arity + v.arity);
    for (ku, cu) in u.terms.iter() {
        for (kv, cv) in v.terms.iter() {
            let mut key = Vec::with_capacity(ku.len() + kv.len());
            key.extend_from_slice(ku);
            key.extend_from_slice(kv);
            out.add_term(key, cu * cv);
        }
    }
    Ok(out)
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (key, coeff) in self.terms.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if key.is_empty() {
                write!(f, "{coeff}")?;
            } else {
                let names: Vec<&str> = key.iter().map(|&i| self.basis.name(i)).collect();
                write!(f, "{coeff}*{}", names.join("⊗"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
