//! Graded Frobenius algebras and their derived structure.
//!
//! An algebra is described by an [`AlgebraSpec`]: a graded basis, the unit,
//! a multiplication table and a counit vector. [`FrobeniusAlgebra::build`]
//! validates associativity, the unit law, grading and nondegeneracy, then
//! derives the pairing matrix `g`, its inverse, the Casimir element, the
//! comultiplication and the Euler class.
//!
//! Sign conventions. The pairing of pure tensors moves each right-hand
//! factor into place past the later left-hand factors:
//! `⟨a₁⊗…⊗a_n, b₁⊗…⊗b_n⟩ = (-1)^(Σ_{i<j} |a_j||b_i|) Π ⟨a_i,b_i⟩`,
//! and the product on `A^{⊗k}` interleaves factors the same way. The
//! comultiplication is the adjoint of the multiplication under that signed
//! pairing; with it the Euler class `μ(Δ(1))` has counit equal to the super
//! dimension on every built-in, which is the calibration target for the
//! whole convention.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::tensor::{GradedBasis, TensorElement};

/// Element of the underlying algebra: an arity-1 tensor.
pub type AlgebraElement = TensorElement;

/// Serializable description of a Frobenius algebra.
///
/// `products` holds entries `[left, right, [[coeff, basis], …]]`; entries
/// involving the unit may be omitted when the unit is a basis element (the
/// unit law fills them in), every other pair must be present, with an
/// explicit empty list for a zero product. `counit` holds `[basis, coeff]`
/// pairs; omitted names integrate to zero. Coefficients are exact rational
/// literals `"p"` or `"p/q"`. The unit is normally a basis name; a linear
/// combination `[["coeff", "name"], …]` is also accepted for algebras such
/// as `M₂` presented on the matrix units, whose unit is `E11 + E22`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub name: String,
    pub basis: Vec<BasisEntry>,
    pub unit: UnitSpec,
    #[serde(default)]
    pub products: Vec<(String, String, Vec<(String, String)>)>,
    #[serde(default)]
    pub counit: Vec<(String, String)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum UnitSpec {
    Name(String),
    Combination(Vec<(String, String)>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BasisEntry {
    pub name: String,
    pub degree: i64,
}

impl AlgebraSpec {
    pub fn new(name: &str, basis: &[(&str, i64)], unit: &str) -> Self {
        AlgebraSpec {
            name: name.to_string(),
            basis: basis
                .iter()
                .map(|(n, d)| BasisEntry {
                    name: n.to_string(),
                    degree: *d,
                })
                .collect(),
            unit: UnitSpec::Name(unit.to_string()),
            products: Vec::new(),
            counit: Vec::new(),
        }
    }

    pub fn set_unit_combination(&mut self, terms: &[(&str, &str)]) {
        self.unit = UnitSpec::Combination(
            terms
                .iter()
                .map(|(c, n)| (c.to_string(), n.to_string()))
                .collect(),
        );
    }

    pub fn set_product(&mut self, left: &str, right: &str, terms: &[(&str, &str)]) {
        self.products.push((
            left.to_string(),
            right.to_string(),
            terms
                .iter()
                .map(|(c, n)| (c.to_string(), n.to_string()))
                .collect(),
        ));
    }

    pub fn set_counit(&mut self, name: &str, coeff: &str) {
        self.counit.push((name.to_string(), coeff.to_string()));
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::ParseError {
            position: 0,
            detail: format!("algebra spec: {e}"),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serialization cannot fail")
    }
}

/// A validated graded Frobenius algebra together with its derived data.
pub struct FrobeniusAlgebra {
    name: String,
    basis: Arc<GradedBasis>,
    /// The unit element; usually a single basis vector (`unit_index`).
    unit_element: TensorElement,
    unit_index: Option<u32>,
    /// `table[i * dim + j]` is the expansion of `Δ_i Δ_j`.
    table: Vec<Vec<(u32, Scalar)>>,
    counit: Vec<Scalar>,
    pairing: Vec<Vec<Scalar>>,
    pairing_inv: Vec<Vec<Scalar>>,
    /// Support of row `i` of the pairing matrix.
    pairing_support: Vec<Vec<u32>>,
    /// `u_b = Σ_j g^{bj} Δ_j`, the basis dual to `Δ_b` under the pairing.
    dual_basis: Vec<TensorElement>,
    casimir: TensorElement,
    comult_basis: Vec<TensorElement>,
    euler: TensorElement,
    commutative: bool,
    connected: bool,
    socle: Option<(i64, u32)>,
    /// Common parity of the degrees the counit is supported on.
    dual_parity: i64,
    integral_pairing: bool,
}

impl fmt::Debug for FrobeniusAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FrobeniusAlgebra({}, dim {})", self.name, self.dim())
    }
}

impl FrobeniusAlgebra {
    /// Validates the description and derives the full Frobenius structure.
    pub fn build(spec: &AlgebraSpec) -> Result<Self> {
        let dim = spec.basis.len();
        if dim == 0 {
            return Err(Error::ParseError {
                position: 0,
                detail: "empty basis".into(),
            });
        }
        {
            let mut seen = BTreeMap::new();
            for (i, e) in spec.basis.iter().enumerate() {
                if let Some(prev) = seen.insert(e.name.clone(), i) {
                    return Err(Error::ParseError {
                        position: 0,
                        detail: format!("duplicate basis name `{}` (entries {prev} and {i})", e.name),
                    });
                }
            }
        }
        let basis = GradedBasis::new(
            spec.basis
                .iter()
                .map(|e| (e.name.clone(), e.degree))
                .collect(),
        );
        let (unit_element, unit_index) = match &spec.unit {
            UnitSpec::Name(name) => {
                let i = basis.index_of(name)?;
                (TensorElement::basis_tensor(basis.clone(), &[i]), Some(i))
            }
            UnitSpec::Combination(terms) => {
                let mut u = TensorElement::zero(basis.clone(), 1);
                for (coeff, name) in terms {
                    let i = basis.index_of(name)?;
                    u.add_term(vec![i], coeff.parse()?);
                }
                let idx = if u.num_terms() == 1 {
                    u.terms()
                        .next()
                        .filter(|(_, c)| c.is_one())
                        .map(|(k, _)| k[0])
                } else {
                    None
                };
                (u, idx)
            }
        };

        // Multiplication table. When the unit is a basis vector, its
        // rows/columns default to the unit law.
        let mut table: Vec<Option<Vec<(u32, Scalar)>>> = vec![None; dim * dim];
        for (left, right, terms) in &spec.products {
            let i = basis.index_of(left)?;
            let j = basis.index_of(right)?;
            let mut row: BTreeMap<u32, Scalar> = BTreeMap::new();
            for (coeff, name) in terms {
                let k = basis.index_of(name)?;
                let c: Scalar = coeff.parse()?;
                let entry = row.entry(k).or_insert_with(Scalar::zero);
                *entry += &c;
            }
            let row: Vec<(u32, Scalar)> =
                row.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            let slot = &mut table[i as usize * dim + j as usize];
            if slot.is_some() {
                return Err(Error::ParseError {
                    position: 0,
                    detail: format!("duplicate product entry for ({left}, {right})"),
                });
            }
            *slot = Some(row);
        }
        let mut full_table: Vec<Vec<(u32, Scalar)>> = Vec::with_capacity(dim * dim);
        for i in 0..dim as u32 {
            for j in 0..dim as u32 {
                let entry = table[i as usize * dim + j as usize].take();
                match entry {
                    Some(row) => full_table.push(row),
                    None => {
                        if unit_index == Some(i) {
                            full_table.push(vec![(j, Scalar::one())]);
                        } else if unit_index == Some(j) {
                            full_table.push(vec![(i, Scalar::one())]);
                        } else {
                            return Err(Error::ParseError {
                                position: 0,
                                detail: format!(
                                    "missing product entry for ({}, {}); write an explicit empty list for a zero product",
                                    basis.name(i),
                                    basis.name(j)
                                ),
                            });
                        }
                    }
                }
            }
        }

        let mut counit = vec![Scalar::zero(); dim];
        for (name, coeff) in &spec.counit {
            let i = basis.index_of(name)?;
            counit[i as usize] = coeff.parse()?;
        }

        let mut algebra = FrobeniusAlgebra {
            name: spec.name.clone(),
            basis,
            unit_element,
            unit_index,
            table: full_table,
            counit,
            pairing: Vec::new(),
            pairing_inv: Vec::new(),
            pairing_support: Vec::new(),
            dual_basis: Vec::new(),
            casimir: TensorElement::zero(GradedBasis::new(vec![("0".into(), 0)]), 2),
            comult_basis: Vec::new(),
            euler: TensorElement::zero(GradedBasis::new(vec![("0".into(), 0)]), 1),
            commutative: false,
            connected: false,
            socle: None,
            dual_parity: 0,
            integral_pairing: false,
        };
        algebra.validate_structure()?;
        algebra.derive()?;
        Ok(algebra)
    }

    fn validate_structure(&self) -> Result<()> {
        let dim = self.dim() as u32;
        // Grading: Δ_i Δ_j must be homogeneous of degree deg_i + deg_j.
        for i in 0..dim {
            for j in 0..dim {
                let want = self.basis.degree(i) + self.basis.degree(j);
                for (k, _) in self.table_row(i, j) {
                    if self.basis.degree(*k) != want {
                        return Err(Error::GradingViolation {
                            detail: format!(
                                "{}·{} has a component on {} of degree {} (expected {})",
                                self.basis.name(i),
                                self.basis.name(j),
                                self.basis.name(*k),
                                self.basis.degree(*k),
                                want
                            ),
                        });
                    }
                }
            }
        }
        // Unit law.
        for i in 0..dim {
            let e = self.basis_element(i);
            let left = self.multiply(&self.unit_element.clone(), &e)?;
            let right = self.multiply(&e, &self.unit_element.clone())?;
            if left != e || right != e {
                return Err(Error::NoUnit {
                    name: self.basis.name(i).to_string(),
                });
            }
        }
        // Associativity, and invariance of the counit-derived pairing.
        for i in 0..dim {
            for j in 0..dim {
                let ij = self.multiply_indices(i, j);
                for k in 0..dim {
                    let jk = self.multiply_indices(j, k);
                    let left = self.multiply(&ij, &self.basis_element(k))?;
                    let right = self.multiply(&self.basis_element(i), &jk)?;
                    if left != right {
                        return Err(Error::NotAssociative {
                            a: self.basis.name(i).to_string(),
                            b: self.basis.name(j).to_string(),
                            c: self.basis.name(k).to_string(),
                        });
                    }
                }
            }
        }
        // Counit support must sit in degrees of one parity; the Koszul
        // bookkeeping for dualized slots relies on it.
        let mut parity = None;
        for i in 0..dim {
            if !self.counit[i as usize].is_zero() {
                let p = self.basis.degree(i) & 1;
                match parity {
                    None => parity = Some(p),
                    Some(q) if q != p => {
                        return Err(Error::GradingViolation {
                            detail: "counit is supported in degrees of mixed parity".into(),
                        })
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }

    fn derive(&mut self) -> Result<()> {
        let dim = self.dim();
        self.dual_parity = {
            let mut parity = 0;
            for i in 0..dim {
                if !self.counit[i].is_zero() {
                    parity = self.basis.degree(i as u32) & 1;
                    break;
                }
            }
            parity
        };

        // Pairing g_{ij} = ∫(Δ_i Δ_j) and graded symmetry.
        let mut g = vec![vec![Scalar::zero(); dim]; dim];
        for i in 0..dim as u32 {
            for j in 0..dim as u32 {
                let mut v = Scalar::zero();
                for (k, c) in self.table_row(i, j) {
                    v += &(c * &self.counit[*k as usize]);
                }
                g[i as usize][j as usize] = v;
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                let sign = self.basis.degree(i as u32) * self.basis.degree(j as u32);
                let expected = if sign % 2 != 0 {
                    -g[j][i].clone()
                } else {
                    g[j][i].clone()
                };
                if g[i][j] != expected {
                    return Err(Error::GradingViolation {
                        detail: format!(
                            "pairing is not graded symmetric at ({}, {})",
                            self.basis.name(i as u32),
                            self.basis.name(j as u32)
                        ),
                    });
                }
            }
        }
        let g_inv = invert_matrix(&g).ok_or(Error::DegeneratePairing)?;
        self.integral_pairing = g_inv
            .iter()
            .flatten()
            .all(|c| c.is_integer());
        self.pairing_support = g
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(j, _)| j as u32)
                    .collect()
            })
            .collect();
        self.pairing = g;
        self.pairing_inv = g_inv;

        self.dual_basis = Vec::with_capacity(dim);
        for b in 0..dim {
            let mut u = TensorElement::zero(self.basis.clone(), 1);
            for j in 0..dim as u32 {
                let c = self.pairing_inv[b][j as usize].clone();
                if !c.is_zero() {
                    u.add_term(vec![j], c);
                }
            }
            self.dual_basis.push(u);
        }

        let mut casimir = TensorElement::zero(self.basis.clone(), 2);
        for i in 0..dim as u32 {
            for j in 0..dim as u32 {
                let c = self.pairing_inv[i as usize][j as usize].clone();
                if !c.is_zero() {
                    casimir.add_term(vec![i, j], c);
                }
            }
        }
        self.casimir = casimir;

        // Comultiplication of basis elements, by adjointness under the
        // signed pairing on A⊗A:
        //   Δ(Δ_m) = Σ (-1)^(|Δ_l||Δ_i|) ∫(Δ_m Δ_i Δ_k) g^{ij} g^{kl} Δ_j⊗Δ_l
        let mut comult_basis = Vec::with_capacity(dim);
        for m in 0..dim as u32 {
            let mut out = TensorElement::zero(self.basis.clone(), 2);
            for i in 0..dim as u32 {
                for k in 0..dim as u32 {
                    let mut r = Scalar::zero();
                    for (p, c) in self.table_row(i, k) {
                        let mut w = Scalar::zero();
                        for (q, d) in self.table_row(m, *p) {
                            w += &(d * &self.counit[*q as usize]);
                        }
                        r += &(c * &w);
                    }
                    if r.is_zero() {
                        continue;
                    }
                    for j in 0..dim as u32 {
                        let gij = self.pairing_inv[i as usize][j as usize].clone();
                        if gij.is_zero() {
                            continue;
                        }
                        for l in 0..dim as u32 {
                            let gkl = self.pairing_inv[k as usize][l as usize].clone();
                            if gkl.is_zero() {
                                continue;
                            }
                            let mut c = &r * &gij;
                            c = &c * &gkl;
                            if (self.basis.degree(l) * self.basis.degree(i)) % 2 != 0 {
                                c = -c;
                            }
                            out.add_term(vec![j, l], c);
                        }
                    }
                }
            }
            comult_basis.push(out);
        }
        self.comult_basis = comult_basis;

        // Euler class e = μ(Δ(1)).
        let delta_one = self.comultiply(&self.unit_element.clone())?;
        self.euler = self.merge_slots(&delta_one, 0)?;

        self.commutative = {
            let dim = dim as u32;
            let mut ok = true;
            'outer: for i in 0..dim {
                for j in 0..dim {
                    if self.table_row(i, j) != self.table_row(j, i) {
                        ok = false;
                        break 'outer;
                    }
                }
            }
            ok
        };
        self.connected = self.unit_index.is_some()
            && (0..dim as u32).all(|i| {
                let d = self.basis.degree(i);
                d > 0 || (d == 0 && Some(i) == self.unit_index)
            });
        self.socle = if self.connected {
            let top = (0..dim as u32)
                .map(|i| self.basis.degree(i))
                .max()
                .unwrap_or(0);
            let top_indices: Vec<u32> = (0..dim as u32)
                .filter(|&i| self.basis.degree(i) == top)
                .collect();
            let supported_on_top = (0..dim as u32).all(|i| {
                self.counit[i as usize].is_zero() || self.basis.degree(i) == top
            });
            if top > 0
                && top_indices.len() == 1
                && supported_on_top
                && !self.counit[top_indices[0] as usize].is_zero()
            {
                Some((top, top_indices[0]))
            } else {
                None
            }
        } else {
            None
        };
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn basis(&self) -> &Arc<GradedBasis> {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Index of the unit, when the unit happens to be a single basis vector.
    pub fn unit_index(&self) -> Option<u32> {
        self.unit_index
    }

    pub fn unit_element(&self) -> TensorElement {
        self.unit_element.clone()
    }

    pub fn basis_element(&self, i: u32) -> TensorElement {
        TensorElement::basis_tensor(self.basis.clone(), &[i])
    }

    pub fn element_by_name(&self, name: &str) -> Result<TensorElement> {
        Ok(self.basis_element(self.basis.index_of(name)?))
    }

    pub fn zero_element(&self) -> TensorElement {
        TensorElement::zero(self.basis.clone(), 1)
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn is_connected_graded(&self) -> bool {
        self.connected
    }

    /// Socle degree and the index of the one-dimensional top class, when the
    /// algebra is connected Gorenstein with the counit supported on top.
    pub fn socle(&self) -> Option<(i64, u32)> {
        self.socle
    }

    pub fn dual_parity(&self) -> i64 {
        self.dual_parity
    }

    pub fn has_integral_pairing(&self) -> bool {
        self.integral_pairing
    }

    fn table_row(&self, i: u32, j: u32) -> &[(u32, Scalar)] {
        &self.table[i as usize * self.dim() + j as usize]
    }

    fn multiply_indices(&self, i: u32, j: u32) -> TensorElement {
        TensorElement::from_terms(
            self.basis.clone(),
            1,
            self.table_row(i, j).iter().map(|(k, c)| (vec![*k], c.clone())),
        )
    }

    fn check_owned(&self, t: &TensorElement) -> Result<()> {
        if t.algebra_id() != self.basis.id() {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    fn check_element(&self, t: &TensorElement) -> Result<()> {
        self.check_owned(t)?;
        if t.arity() != 1 {
            return Err(Error::ArityMismatch {
                expected: 1,
                got: t.arity(),
            });
        }
        Ok(())
    }

    /// Bilinear extension of the multiplication table.
    pub fn multiply(&self, a: &TensorElement, b: &TensorElement) -> Result<TensorElement> {
        self.check_element(a)?;
        self.check_element(b)?;
        let mut out = self.zero_element();
        for (ka, ca) in a.terms() {
            for (kb, cb) in b.terms() {
                let c = ca * cb;
                for (k, t) in self.table_row(ka[0], kb[0]) {
                    out.add_term(vec![*k], &c * t);
                }
            }
        }
        Ok(out)
    }


    pub fn counit(&self, a: &TensorElement) -> Result<Scalar> {
        self.check_element(a)?;
        let mut v = Scalar::zero();
        for (k, c) in a.terms() {
            v += &(c * &self.counit[k[0] as usize]);
        }
        Ok(v)
    }

    /// `⟨a, b⟩ = ∫(ab)`.
    pub fn pairing(&self, a: &TensorElement, b: &TensorElement) -> Result<Scalar> {
        self.counit(&self.multiply(a, b)?)
    }

    pub fn pairing_matrix(&self) -> &Vec<Vec<Scalar>> {
        &self.pairing
    }

    pub fn pairing_inverse(&self) -> &Vec<Vec<Scalar>> {
        &self.pairing_inv
    }

    /// Indices `b` with `g_{ib} ≠ 0`.
    pub fn pairing_support(&self, i: u32) -> &[u32] {
        &self.pairing_support[i as usize]
    }

    /// `u_b = Σ_j g^{bj} Δ_j`, satisfying `⟨u_b, Δ_c⟩ = δ_{bc}`.
    pub fn dual_basis_element(&self, b: u32) -> &TensorElement {
        &self.dual_basis[b as usize]
    }

    /// `C = Σ g^{ij} Δ_i ⊗ Δ_j`.
    pub fn casimir(&self) -> &TensorElement {
        &self.casimir
    }

    /// `e = μ(Δ(1))`; for an even pairing this is `μ(C) = Σ g^{ij} Δ_iΔ_j`.
    pub fn euler_class(&self) -> &TensorElement {
        &self.euler
    }

    pub fn euler_characteristic(&self) -> Scalar {
        self.counit(&self.euler).expect("euler class is an element")
    }

    /// The adjoint comultiplication: `⟨Δ(a), b⊗c⟩ = ⟨a, bc⟩` under the
    /// signed pairing on `A ⊗ A`.
    pub fn comultiply(&self, a: &TensorElement) -> Result<TensorElement> {
        self.check_element(a)?;
        let mut out = TensorElement::zero(self.basis.clone(), 2);
        for (k, c) in a.terms() {
            for (key, v) in self.comult_basis[k[0] as usize].terms() {
                out.add_term(key.clone(), c * v);
            }
        }
        Ok(out)
    }

    pub fn comultiply_basis(&self, i: u32) -> &TensorElement {
        &self.comult_basis[i as usize]
    }

    /// `∫(a₁ ⋯ a_n)`, the product taken left to right.
    pub fn integral_n(&self, word: &[TensorElement]) -> Result<Scalar> {
        let (first, rest) = word.split_first().ok_or(Error::EmptyWord)?;
        let mut acc = first.clone();
        self.check_element(first)?;
        for a in rest {
            acc = self.multiply(&acc, a)?;
        }
        self.counit(&acc)
    }

    /// Componentwise product on `A^{⊗k}` with the interleaving Koszul sign:
    /// `(a₁⊗…⊗a_k)(b₁⊗…⊗b_k) = (-1)^(Σ_{i<j} |b_i||a_j|) a₁b₁⊗…⊗a_kb_k`.
    pub fn mul_tensors(&self, u: &TensorElement, v: &TensorElement) -> Result<TensorElement> {
        self.check_owned(u)?;
        self.check_owned(v)?;
        if u.arity() != v.arity() {
            return Err(Error::ArityMismatch {
                expected: u.arity(),
                got: v.arity(),
            });
        }
        let k = u.arity();
        let mut out = TensorElement::zero(self.basis.clone(), k);
        for (ku, cu) in u.terms() {
            for (kv, cv) in v.terms() {
                let mut exponent = 0i64;
                for i in 0..k {
                    for j in (i + 1)..k {
                        exponent += self.basis.degree(kv[i]) * self.basis.degree(ku[j]);
                    }
                }
                let mut base = cu * cv;
                if exponent % 2 != 0 {
                    base = -base;
                }
                // expand the componentwise products
                let mut partial: Vec<(Vec<u32>, Scalar)> = vec![(Vec::new(), base)];
                for i in 0..k {
                    let row = self.table_row(ku[i], kv[i]);
                    let mut next = Vec::with_capacity(partial.len() * row.len());
                    for (prefix, coeff) in &partial {
                        for (idx, c) in row {
                            let mut key = prefix.clone();
                            key.push(*idx);
                            next.push((key, coeff * c));
                        }
                    }
                    partial = next;
                    if partial.is_empty() {
                        break;
                    }
                }
                for (key, coeff) in partial {
                    out.add_term(key, coeff);
                }
            }
        }
        Ok(out)
    }

    /// Merges slots `slot` and `slot+1` of `t` through the multiplication.
    /// The factors are adjacent, so no sign is introduced.
    pub fn merge_slots(&self, t: &TensorElement, slot: usize) -> Result<TensorElement> {
        self.check_owned(t)?;
        if t.arity() < 2 || slot + 1 >= t.arity() {
            return Err(Error::SlotOutOfRange {
                slot,
                arity: t.arity(),
            });
        }
        let mut out = TensorElement::zero(self.basis.clone(), t.arity() - 1);
        for (key, c) in t.terms() {
            for (m, cm) in self.table_row(key[slot], key[slot + 1]) {
                let mut new_key = Vec::with_capacity(key.len() - 1);
                new_key.extend_from_slice(&key[..slot]);
                new_key.push(*m);
                new_key.extend_from_slice(&key[slot + 2..]);
                out.add_term(new_key, c * cm);
            }
        }
        Ok(out)
    }

    /// Contracts `t`'s slots `cslots` (strictly increasing) against the
    /// elements `args`, pairing through `g`. Signs: the contracted factors
    /// first move to the back of the tensor, then each argument moves in
    /// from the right past the later contracted factors.
    pub fn contract(
        &self,
        t: &TensorElement,
        cslots: &[usize],
        args: &[&TensorElement],
    ) -> Result<TensorElement> {
        self.check_owned(t)?;
        if cslots.len() != args.len() {
            return Err(Error::ArityMismatch {
                expected: cslots.len(),
                got: args.len(),
            });
        }
        for w in cslots.windows(2) {
            assert!(w[0] < w[1], "contraction slots must be strictly increasing");
        }
        if let Some(&max) = cslots.last() {
            if max >= t.arity() {
                return Err(Error::SlotOutOfRange {
                    slot: max,
                    arity: t.arity(),
                });
            }
        }
        for a in args {
            self.check_element(a)?;
        }
        let keep: Vec<usize> = (0..t.arity()).filter(|i| !cslots.contains(i)).collect();
        let mut out = TensorElement::zero(self.basis.clone(), keep.len());
        let mut arg_terms: Vec<Vec<(u32, Scalar)>> = Vec::with_capacity(args.len());
        for a in args {
            arg_terms.push(a.terms().map(|(k, c)| (k[0], c.clone())).collect());
        }
        for (key, c) in t.terms() {
            // sign of moving the contracted factors to the back
            let mut move_exp = 0i64;
            for &cs in cslots {
                for &r in &keep {
                    if r > cs {
                        move_exp += self.basis.degree(key[cs]) * self.basis.degree(key[r]);
                    }
                }
            }
            // iterate over argument term combinations, depth-first with
            // early pruning of vanishing pairings
            let mut chosen: Vec<u32> = Vec::with_capacity(args.len());
            fn descend(
                alg: &FrobeniusAlgebra,
                key: &[u32],
                cslots: &[usize],
                arg_terms: &[Vec<(u32, Scalar)>],
                depth: usize,
                acc: &Scalar,
                chosen: &mut Vec<u32>,
                sink: &mut dyn FnMut(&[u32], Scalar),
            ) {
                if depth == arg_terms.len() {
                    sink(chosen, acc.clone());
                    return;
                }
                let slot_index = key[cslots[depth]];
                for (b, cb) in &arg_terms[depth] {
                    let gv = &alg.pairing[slot_index as usize][*b as usize];
                    if gv.is_zero() {
                        continue;
                    }
                    let mut next = acc * cb;
                    next = &next * gv;
                    chosen.push(*b);
                    descend(alg, key, cslots, arg_terms, depth + 1, &next, chosen, sink);
                    chosen.pop();
                }
            }
            let remaining_key: Vec<u32> = keep.iter().map(|&r| key[r]).collect();
            let mut emit = |chosen: &[u32], acc: Scalar| {
                // pairing sign: arg m moves past contracted factors after m
                let mut pair_exp = 0i64;
                for m in 0..chosen.len() {
                    for m2 in (m + 1)..cslots.len() {
                        pair_exp +=
                            self.basis.degree(chosen[m]) * self.basis.degree(key[cslots[m2]]);
                    }
                }
                let mut v = acc;
                if (move_exp + pair_exp) % 2 != 0 {
                    v = -v;
                }
                out.add_term(remaining_key.clone(), v);
            };
            descend(
                self,
                key,
                cslots,
                &arg_terms,
                0,
                c,
                &mut chosen,
                &mut emit,
            );
        }
        Ok(out)
    }

    /// Full signed pairing of two equal-arity tensors:
    /// `⟨u, v⟩ = Σ (-1)^(Σ_{i<j} |u_j||v_i|) Π g_{u_i v_i}`.
    pub fn pair_tensors(&self, u: &TensorElement, v: &TensorElement) -> Result<Scalar> {
        self.check_owned(u)?;
        self.check_owned(v)?;
        if u.arity() != v.arity() {
            return Err(Error::ArityMismatch {
                expected: u.arity(),
                got: v.arity(),
            });
        }
        let n = u.arity();
        let mut total = Scalar::zero();
        for (ku, cu) in u.terms() {
            for (kv, cv) in v.terms() {
                let mut value = cu * cv;
                for i in 0..n {
                    if value.is_zero() {
                        break;
                    }
                    let gv = &self.pairing[ku[i] as usize][kv[i] as usize];
                    value = &value * gv;
                }
                if value.is_zero() {
                    continue;
                }
                let mut exponent = 0i64;
                for i in 0..n {
                    for j in (i + 1)..n {
                        exponent += self.basis.degree(ku[j]) * self.basis.degree(kv[i]);
                    }
                }
                if exponent % 2 != 0 {
                    value = -value;
                }
                total += &value;
            }
        }
        Ok(total)
    }

    /// Rebuilds a tensor from the values of the multilinear map it
    /// represents. `values` maps a tuple of basis indices (one per in-slot,
    /// in slot order) to the output tensor carried by the out-slots, and the
    /// result `R` satisfies `contract(R, in_slots, Δ_b) = values[b]`.
    pub fn from_functional(
        &self,
        n_slots: usize,
        out_slots: &[usize],
        values: &BTreeMap<Vec<u32>, TensorElement>,
    ) -> Result<TensorElement> {
        for w in out_slots.windows(2) {
            assert!(w[0] < w[1], "out slots must be strictly increasing");
        }
        if let Some(&max) = out_slots.last() {
            if max >= n_slots {
                return Err(Error::SlotOutOfRange {
                    slot: max,
                    arity: n_slots,
                });
            }
        }
        let in_slots: Vec<usize> = (0..n_slots).filter(|i| !out_slots.contains(i)).collect();
        let mut out = TensorElement::zero(self.basis.clone(), n_slots);
        let p_shift = self.dual_parity;
        for (b, value) in values {
            if b.len() != in_slots.len() {
                return Err(Error::ArityMismatch {
                    expected: in_slots.len(),
                    got: b.len(),
                });
            }
            if value.arity() != out_slots.len() {
                return Err(Error::ArityMismatch {
                    expected: out_slots.len(),
                    got: value.arity(),
                });
            }
            self.check_owned(value)?;
            // Σ_{m<m'} (|b_{m'}|+p̄)|b_m|, the inverse of the pairing sign
            // the contraction will produce.
            let mut base_exp = 0i64;
            for m in 0..b.len() {
                for m2 in (m + 1)..b.len() {
                    base_exp +=
                        (self.basis.degree(b[m2]) + p_shift) * self.basis.degree(b[m]);
                }
            }
            for (w, cw) in value.terms() {
                // Σ_m (|b_m|+p̄) · Σ_{out slot o > in slot i_m} |w_o|
                let mut move_exp = 0i64;
                for (m, &im) in in_slots.iter().enumerate() {
                    let later: i64 = out_slots
                        .iter()
                        .enumerate()
                        .filter(|(_, &o)| o > im)
                        .map(|(t, _)| self.basis.degree(w[t]))
                        .sum();
                    move_exp += (self.basis.degree(b[m]) + p_shift) * later;
                }
                let sign_neg = (base_exp + move_exp) % 2 != 0;
                // expand u_{b_m} factors
                let mut partial: Vec<(Vec<u32>, Scalar)> = vec![(
                    Vec::new(),
                    if sign_neg { -cw.clone() } else { cw.clone() },
                )];
                for &bm in b.iter() {
                    let dual = &self.dual_basis[bm as usize];
                    let mut next = Vec::with_capacity(partial.len() * dual.num_terms());
                    for (prefix, coeff) in &partial {
                        for (jk, jc) in dual.terms() {
                            let mut v = prefix.clone();
                            v.push(jk[0]);
                            next.push((v, coeff * jc));
                        }
                    }
                    partial = next;
                }
                for (j_choices, coeff) in partial {
                    let mut key = vec![0u32; n_slots];
                    for (t, &o) in out_slots.iter().enumerate() {
                        key[o] = w[t];
                    }
                    for (m, &im) in in_slots.iter().enumerate() {
                        key[im] = j_choices[m];
                    }
                    out.add_term(key, coeff);
                }
            }
        }
        Ok(out)
    }
}

/// Exact Gauss-Jordan inverse; `None` when singular.
fn invert_matrix(m: &[Vec<Scalar>]) -> Option<Vec<Vec<Scalar>>> {
    let n = m.len();
    let mut a: Vec<Vec<Scalar>> = m.to_vec();
    let mut inv: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Scalar::one() } else { Scalar::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot_row = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot_row);
        inv.swap(col, pivot_row);
        let pivot = a[col][col].clone();
        let inv_pivot = pivot.recip()?;
        for j in 0..n {
            a[col][j] = &a[col][j] * &inv_pivot;
            inv[col][j] = &inv[col][j] * &inv_pivot;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for j in 0..n {
                let av = &a[col][j] * &factor;
                a[r][j] -= &av;
                let iv = &inv[col][j] * &factor;
                inv[r][j] -= &iv;
            }
        }
    }
    Some(inv)
}
