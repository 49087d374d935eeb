//! Runnable identity suite shared by the CLI `selftest` verb and the
//! acceptance test target. Every check returns a witness on failure.

use std::collections::HashMap;

use crate::builtins;
use crate::correlator::{
    annulus_sweep, apply_dualized, basis_tuples, bracket, dualize_slots, handle_element,
    integral_functional, surface_correlator, torus_sweep, CyclicWord, SurfaceDecoration,
};
use crate::descriptors::OpDescriptor;
use crate::error::Result;
use crate::frobenius::FrobeniusAlgebra;
use crate::hochschild::{
    boundary, calibrate_dg_signs, coproduct, coproduct_correlator, dg_compat_defect,
    differential, evaluate, naive_dual_pairing, project, reduced_socle_part, Cochain,
    ProjectionMode, DG_SIGN_BOUNDARY, DG_SIGN_COPRODUCT_OF_DF,
};
use crate::scalar::Scalar;
use crate::tensor::{tensor_product, TensorElement};

/// Outcome of one named check.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Sweep bounds. The defaults are the pinned gate depths; a cap only ever
/// lowers them (quick mode for the CLI).
#[derive(Debug, Clone, Copy)]
pub struct Config {
    pub otft_max_len: usize,
    pub arity_cap: Option<usize>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            otft_max_len: 4,
            arity_cap: None,
        }
    }
}

fn capped(pin: usize, cfg: &Config) -> usize {
    cfg.arity_cap.map_or(pin, |c| c.min(pin))
}

type Check = (&'static str, fn(&Config) -> std::result::Result<(), String>);

fn run_check(cfg: &Config, (name, f): &Check) -> CheckResult {
    match f(cfg) {
        Ok(()) => CheckResult {
            name: name.to_string(),
            passed: true,
            detail: String::new(),
        },
        Err(detail) => CheckResult {
            name: name.to_string(),
            passed: false,
            detail,
        },
    }
}

/// The acceptance checks, in criterion order.
pub fn acceptance_checks() -> Vec<Check> {
    vec![
        ("criterion-01-euler-characteristics", criterion_1),
        ("criterion-02-casimir-square", criterion_2),
        ("criterion-03-otft-cut-invariance", criterion_3),
        ("criterion-04-correlator-action-equivalence", criterion_4),
        ("criterion-05-boundary-closed-form", criterion_5),
        ("criterion-06-reduced-vanishing", criterion_6),
        ("criterion-07-differential-squares-to-zero", criterion_7),
        ("criterion-08-dg-compatibility", criterion_8),
        ("criterion-09-slot-dualization", criterion_9),
        ("criterion-10-descriptor-duality", criterion_10),
    ]
}

/// Extra module invariants beyond the acceptance gate.
pub fn invariant_checks() -> Vec<Check> {
    vec![
        ("frobenius-compatibility", frobenius_compatibility),
        ("integral-graded-cyclicity", integral_cyclicity),
        ("splitting-identity", splitting_identity),
        ("dual-basis-resolution", dual_basis_resolution),
        ("commutative-comultiplication-shortcut", commutative_shortcut),
        ("gorenstein-euler-form", gorenstein_euler_form),
        ("braid-relation", braid_relation),
        ("surface-correlator-symmetries", surface_symmetries),
        ("surface-euler-power-reduction", surface_euler_power),
        ("dualization-round-trip", dualization_round_trip),
        ("noncommutative-shortcut-documented", noncommutative_shortcut),
        ("differential-square-all-builtins", d_square_everywhere),
        ("cut-invariance-all-builtins", cut_invariance_everywhere),
    ]
}

pub fn run_acceptance() -> Vec<CheckResult> {
    run_acceptance_with(&Config::default())
}

pub fn run_acceptance_with(cfg: &Config) -> Vec<CheckResult> {
    acceptance_checks().iter().map(|c| run_check(cfg, c)).collect()
}

pub fn run_all() -> Vec<CheckResult> {
    run_all_with(&Config::default())
}

pub fn run_all_with(cfg: &Config) -> Vec<CheckResult> {
    let mut out = run_acceptance_with(cfg);
    out.extend(invariant_checks().iter().map(|c| run_check(cfg, c)));
    out
}

/// Keeps `Result` plumbing out of the check bodies.
fn wrap<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| format!("engine error: {e}"))
}

fn criterion_1(_cfg: &Config) -> std::result::Result<(), String> {
    let expected = [("S2", 2i64), ("CP2", 3), ("T2", 0), ("S4", 2), ("S3", 0)];
    for (name, chi) in expected {
        let alg = wrap(builtins::by_name(name))?;
        let got = alg.euler_characteristic();
        if got != Scalar::from_int(chi) {
            return Err(format!("ε(e) on {name}: got {got}, expected {chi}"));
        }
    }
    Ok(())
}

fn criterion_2(_cfg: &Config) -> std::result::Result<(), String> {
    for name in ["S2", "CP2"] {
        let alg = wrap(builtins::by_name(name))?;
        let delta_one = wrap(alg.comultiply(&alg.unit_element()))?;
        let square = wrap(alg.mul_tensors(&delta_one, &delta_one))?;
        let (_, top) = alg.socle().expect("Gorenstein built-in");
        let top_top =
            TensorElement::basis_tensor(alg.basis().clone(), &[top, top]);
        let expected = top_top.scaled(&alg.euler_characteristic());
        if square != expected {
            return Err(format!(
                "Δ(1)² on {name}: got {square}, expected {expected}"
            ));
        }
    }
    Ok(())
}

fn criterion_3(cfg: &Config) -> std::result::Result<(), String> {
    let max_len = cfg.otft_max_len;
    let mut algebras = vec![
        wrap(builtins::by_name("M2"))?,
        wrap(builtins::by_name("S2"))?,
        wrap(builtins::by_name("CP2"))?,
    ];
    for seed in 0..5 {
        algebras.push(builtins::random_perturbed_trunc3(seed));
    }
    let mut checked = 0usize;
    for alg in &algebras {
        let annulus = wrap(annulus_sweep(alg, max_len))?;
        if !annulus.all_equal() {
            return Err(annulus.failures[0].clone());
        }
        let torus = wrap(torus_sweep(alg, max_len))?;
        if !torus.all_equal() {
            return Err(torus.failures[0].clone());
        }
        checked += annulus.checked + torus.checked;
    }
    if checked == 0 {
        return Err("empty sweep".into());
    }
    Ok(())
}

fn criterion_4(cfg: &Config) -> std::result::Result<(), String> {
    for name in ["S2", "T2"] {
        let alg = wrap(builtins::by_name(name))?;
        let dim = alg.dim();
        for n in 1..=capped(3, cfg) {
            for fk in basis_tuples(dim, n + 1) {
                let f = wrap(Cochain::from_basis_key(alg.basis().clone(), &fk))?;
                let cp = wrap(coproduct(&alg, &f))?;
                for p in 0..n {
                    let q = n - 1 - p;
                    for vk in basis_tuples(dim, p + 1) {
                        let v = wrap(Cochain::from_basis_key(alg.basis().clone(), &vk))?;
                        for wk in basis_tuples(dim, q + 1) {
                            let w =
                                wrap(Cochain::from_basis_key(alg.basis().clone(), &wk))?;
                            let lhs = wrap(naive_dual_pairing(&alg, &cp, &v, &w))?;
                            let rhs = wrap(coproduct_correlator(&alg, &f, &v, &w))?;
                            if lhs != rhs {
                                return Err(format!(
                                    "{name}: f={fk:?} v={vk:?} w={wk:?}: pairing {lhs} ≠ correlator {rhs}"
                                ));
                            }
                        }
                    }
                }
                // mismatched bidegrees pair to zero on both sides
                if n == 2 {
                    let v = wrap(Cochain::from_basis_key(alg.basis().clone(), &fk[..2]))?;
                    let lhs = wrap(naive_dual_pairing(&alg, &cp, &v, &v))?;
                    let rhs = wrap(coproduct_correlator(&alg, &f, &v, &v))?;
                    if !lhs.is_zero() || !rhs.is_zero() {
                        return Err(format!("{name}: arity-mismatch case not zero"));
                    }
                }
            }
        }
    }
    Ok(())
}

fn criterion_5(cfg: &Config) -> std::result::Result<(), String> {
    for name in ["S2", "CP2"] {
        let alg = wrap(builtins::by_name(name))?;
        let dim = alg.dim();
        for n in 1..=capped(3, cfg) {
            for fk in basis_tuples(dim, n + 1) {
                let f = wrap(Cochain::from_basis_key(alg.basis().clone(), &fk))?;
                let b0 = wrap(boundary(&alg, 0, &f))?;
                // functional evaluation at (d₁…d_n, λ=1) against the
                // closed form Δ_A(f(d))·Δ(1)
                for dk in basis_tuples(dim, n) {
                    let elems: Vec<TensorElement> =
                        dk.iter().map(|&i| alg.basis_element(i)).collect();
                    let refs: Vec<&TensorElement> = elems.iter().collect();
                    let mut lhs = TensorElement::zero(alg.basis().clone(), 2);
                    for ((k1, k2), c) in b0.terms() {
                        if k2.len() != 1 {
                            return Err(format!(
                                "{name}: ∂₀ second factor not in CH⁰ for f={fk:?}"
                            ));
                        }
                        let u = wrap(Cochain::from_basis_key(alg.basis().clone(), k1))?;
                        let value = wrap(evaluate(&alg, &u, &refs))?;
                        let pair = wrap(tensor_product(
                            &value,
                            &alg.basis_element(k2[0]),
                        ))?;
                        lhs = wrap(lhs.add(&pair.scaled(c)))?;
                    }
                    let f_d = wrap(evaluate(&alg, &f, &refs))?;
                    let rhs =
                        wrap(alg.mul_tensors(&wrap(alg.comultiply(&f_d))?, alg.casimir()))?;
                    if lhs != rhs {
                        return Err(format!(
                            "{name}: ∂₀ closed form fails for f={fk:?}, d={dk:?}: {lhs} ≠ {rhs}"
                        ));
                    }
                }
                // τ₁₂ ∘ ∂₀ = ∂₁
                let lhs = b0.swap_factors();
                let rhs = wrap(boundary(&alg, 1, &f))?;
                if lhs != rhs {
                    return Err(format!("{name}: τ∂₀ ≠ ∂₁ for f={fk:?}"));
                }
            }
        }
    }
    Ok(())
}

fn criterion_6(cfg: &Config) -> std::result::Result<(), String> {
    for name in ["S2", "CP2"] {
        let alg = wrap(builtins::by_name(name))?;
        let dim = alg.dim();
        for n in 1..=capped(3, cfg) {
            for fk in basis_tuples(dim, n + 1) {
                let f = wrap(Cochain::from_basis_key(alg.basis().clone(), &fk))?;
                for side in [0, 1] {
                    for ((k1, k2), _) in wrap(boundary(&alg, side, &f))?.terms() {
                        let c1 = wrap(Cochain::from_basis_key(alg.basis().clone(), k1))?;
                        let c2 = wrap(Cochain::from_basis_key(alg.basis().clone(), k2))?;
                        let p1 = wrap(project(&alg, ProjectionMode::Reduced, &c1))?;
                        let p2 = wrap(project(&alg, ProjectionMode::Reduced, &c2))?;
                        if !p1.is_zero() && !p2.is_zero() {
                            return Err(format!(
                                "{name}: reduced projection keeps ∂{side} output of f={fk:?}"
                            ));
                        }
                        // the removed part accounts for the whole output
                        let r1 = wrap(reduced_socle_part(&alg, &c1))?;
                        let n1 = wrap(project(&alg, ProjectionMode::Normalized, &c1))?;
                        if wrap(p1.add(&r1))? != n1 {
                            return Err(format!("{name}: socle bookkeeping broken"));
                        }
                    }
                }
            }
        }
    }
    // boundary vanishes identically when e = 0
    let t2 = builtins::torus2();
    for n in 1..=capped(3, cfg) {
        for fk in basis_tuples(t2.dim(), n + 1) {
            let f = wrap(Cochain::from_basis_key(t2.basis().clone(), &fk))?;
            for side in [0, 1] {
                if !wrap(boundary(&t2, side, &f))?.is_zero() {
                    return Err(format!("T2: ∂{side} nonzero for f={fk:?}"));
                }
            }
        }
    }
    // and is not identically zero where ε(e) ≠ 0
    let s2 = builtins::sphere(2);
    let f = wrap(Cochain::from_basis_key(s2.basis().clone(), &[0, 1]))?;
    if wrap(boundary(&s2, 0, &f))?.is_zero() {
        return Err("S2: boundary unexpectedly vanishes on the full complex".into());
    }
    Ok(())
}

fn criterion_7(cfg: &Config) -> std::result::Result<(), String> {
    for name in ["S2", "T2", "M2"] {
        let alg = wrap(builtins::by_name(name))?;
        let dim = alg.dim();
        // memoized differential of basis cochains
        let mut memo: HashMap<Vec<u32>, Cochain> = HashMap::new();
        let mut d_basis = |alg: &FrobeniusAlgebra,
                           key: &[u32]|
         -> std::result::Result<Cochain, String> {
            if let Some(hit) = memo.get(key) {
                return Ok(hit.clone());
            }
            let f = wrap(Cochain::from_basis_key(alg.basis().clone(), key))?;
            let df = wrap(differential(alg, &f))?;
            memo.insert(key.to_vec(), df.clone());
            Ok(df)
        };
        for n in 0..=capped(4, cfg) {
            for fk in basis_tuples(dim, n + 1) {
                let df = d_basis(&alg, &fk)?;
                let mut ddf = Cochain::zero(alg.basis().clone(), n + 2);
                for (key, c) in df.body().clone().terms() {
                    let d_term = d_basis(&alg, key)?;
                    ddf = wrap(ddf.add(&d_term.scaled(c)))?;
                }
                if !ddf.is_zero() {
                    return Err(format!("{name}: d²(f) ≠ 0 for f={fk:?}: {ddf}"));
                }
            }
        }
    }
    Ok(())
}

fn criterion_8(cfg: &Config) -> std::result::Result<(), String> {
    // calibration on H*(S²) per the protocol; at the full gate depth the
    // working pair is unique
    let s2 = builtins::sphere(2);
    let depth = capped(3, cfg);
    let pairs = wrap(calibrate_dg_signs(&s2, depth))?;
    if !pairs.contains(&(DG_SIGN_COPRODUCT_OF_DF, DG_SIGN_BOUNDARY)) {
        return Err(format!(
            "calibration on S² returned {pairs:?}, frozen pair is ({DG_SIGN_COPRODUCT_OF_DF},{DG_SIGN_BOUNDARY})"
        ));
    }
    if depth >= 3 && pairs.len() != 1 {
        return Err(format!("calibration on S² is not unique: {pairs:?}"));
    }
    let mut report = String::new();
    for name in ["S2", "T2", "M2"] {
        let alg = wrap(builtins::by_name(name))?;
        let dim = alg.dim();
        let mut residuals = 0usize;
        let mut witness = String::new();
        for n in 1..=capped(3, cfg) {
            for fk in basis_tuples(dim, n + 1) {
                let f = wrap(Cochain::from_basis_key(alg.basis().clone(), &fk))?;
                let defect = wrap(dg_compat_defect(&alg, &f))?;
                if !defect.is_zero() {
                    residuals += 1;
                    if witness.is_empty() {
                        witness = format!("first witness f={fk:?}: defect {defect}");
                    }
                }
            }
        }
        if residuals > 0 {
            report.push_str(&format!(
                "\n  {name}: {residuals} basis cochains with nonzero defect; {witness}"
            ));
        }
    }
    if report.is_empty() {
        Ok(())
    } else {
        Err(format!(
            "no global sign pair closes the cell-boundary relation on all three algebras. \
             The unique S²-calibrated pair ({DG_SIGN_COPRODUCT_OF_DF},{DG_SIGN_BOUNDARY}) \
             closes every strictly commutative evenly graded built-in (S², S⁴, CPⁿ, Trunc_k), \
             but exhaustive search over {{±1}}² (and over boundary product orientations and \
             the D-side sign) leaves residuals on the algebras with odd classes or a \
             noncommutative product:{report}\n  Every residual term carries a CH⁰ tensor \
             factor, consistent with the operation being well defined only modulo the \
             constant-term components at chain level."
        ))
    }
}

fn criterion_9(_cfg: &Config) -> std::result::Result<(), String> {
    for name in ["S2", "CP2"] {
        let alg = wrap(builtins::by_name(name))?;
        let dim = alg.dim() as u32;
        let y3 = wrap(integral_functional(&alg, 3))?;
        // slot 3 dualized: multiplication
        let mu = wrap(dualize_slots(&alg, &y3, &[2]))?;
        for a in 0..dim {
            for b in 0..dim {
                let ea = alg.basis_element(a);
                let eb = alg.basis_element(b);
                let got = wrap(apply_dualized(&alg, &mu, &[2], &[&ea, &eb]))?;
                let expected = wrap(alg.multiply(&ea, &eb))?;
                if got != expected {
                    return Err(format!("{name}: ∫₃ slot-3 dual ≠ μ at ({a},{b})"));
                }
            }
        }
        // slots 2,3 dualized: comultiplication
        let delta = wrap(dualize_slots(&alg, &y3, &[1, 2]))?;
        for a in 0..dim {
            let ea = alg.basis_element(a);
            let got = wrap(apply_dualized(&alg, &delta, &[1, 2], &[&ea]))?;
            let expected = wrap(alg.comultiply(&ea))?;
            if got != expected {
                return Err(format!("{name}: ∫₃ slots-2,3 dual ≠ Δ at {a}"));
            }
        }
        // ∫₄ dualized in slots 2 and 4: the explicit double-Casimir sum
        let y4 = wrap(integral_functional(&alg, 4))?;
        let op = wrap(dualize_slots(&alg, &y4, &[1, 3]))?;
        for a0 in 0..dim {
            for a_s in 0..dim {
                let e0 = alg.basis_element(a0);
                let es = alg.basis_element(a_s);
                let got = wrap(apply_dualized(&alg, &op, &[1, 3], &[&e0, &es]))?;
                let mut expected = TensorElement::zero(alg.basis().clone(), 2);
                for i in 0..dim {
                    for k in 0..dim {
                        let word = [
                            e0.clone(),
                            alg.basis_element(i),
                            es.clone(),
                            alg.basis_element(k),
                        ];
                        let v = wrap(alg.integral_n(&word))?;
                        if v.is_zero() {
                            continue;
                        }
                        for j in 0..dim {
                            let gij = alg.pairing_inverse()[i as usize][j as usize].clone();
                            if gij.is_zero() {
                                continue;
                            }
                            for l in 0..dim {
                                let gkl =
                                    alg.pairing_inverse()[k as usize][l as usize].clone();
                                if gkl.is_zero() {
                                    continue;
                                }
                                let mut c = &v * &gij;
                                c = &c * &gkl;
                                expected.add_term(vec![j, l], c);
                            }
                        }
                    }
                }
                if got != expected {
                    return Err(format!(
                        "{name}: ∫₄ slots-2,4 dual ≠ Casimir sum at ({a0},{a_s})"
                    ));
                }
            }
        }
        // all slots dualized: the triple-Casimir expansion of (Δ⊗id)Δ(1)
        let all = wrap(dualize_slots(&alg, &y3, &[0, 1, 2]))?;
        let got = wrap(apply_dualized(&alg, &all, &[0, 1, 2], &[]))?;
        let mut expected = TensorElement::zero(alg.basis().clone(), 3);
        for i in 0..dim {
            for k in 0..dim {
                for p in 0..dim {
                    let word = [
                        alg.basis_element(i),
                        alg.basis_element(k),
                        alg.basis_element(p),
                    ];
                    let v = wrap(alg.integral_n(&word))?;
                    if v.is_zero() {
                        continue;
                    }
                    for j in 0..dim {
                        let gij = alg.pairing_inverse()[i as usize][j as usize].clone();
                        if gij.is_zero() {
                            continue;
                        }
                        for l in 0..dim {
                            let gkl = alg.pairing_inverse()[k as usize][l as usize].clone();
                            if gkl.is_zero() {
                                continue;
                            }
                            for q in 0..dim {
                                let gpq =
                                    alg.pairing_inverse()[p as usize][q as usize].clone();
                                if gpq.is_zero() {
                                    continue;
                                }
                                let mut c = &v * &gij;
                                c = &c * &gkl;
                                c = &c * &gpq;
                                expected.add_term(vec![j, l, q], c);
                            }
                        }
                    }
                }
            }
        }
        if got != expected {
            return Err(format!("{name}: fully dualized ∫₃ ≠ triple Casimir sum"));
        }
        // cross-check against (Δ ⊗ id) ∘ Δ(1)
        let mut via_comult = TensorElement::zero(alg.basis().clone(), 3);
        for (ck, g) in alg.casimir().terms() {
            let left = wrap(alg.comultiply(&alg.basis_element(ck[0])))?;
            let term = wrap(tensor_product(&left, &alg.basis_element(ck[1])))?;
            via_comult = wrap(via_comult.add(&term.scaled(g)))?;
        }
        if got != via_comult {
            return Err(format!("{name}: fully dualized ∫₃ ≠ (Δ⊗id)Δ(1)"));
        }
    }
    Ok(())
}

fn criterion_10(_cfg: &Config) -> std::result::Result<(), String> {
    let product = OpDescriptor::product_cell();
    let coproduct = OpDescriptor::coproduct_cell();
    if product.degree() != 0 || coproduct.degree() != 1 {
        return Err("cell degrees wrong".into());
    }
    let trs = coproduct.trs_dual();
    if (trs.inputs, trs.outputs, trs.arcs, trs.degree()) != (2, 1, 2, 0) {
        return Err("trs dual of the coproduct is not the product".into());
    }
    let back = trs.trs_dual();
    if (back.inputs, back.outputs, back.degree()) != (1, 2, 1) {
        return Err("trs dual is not an involution".into());
    }
    for d in [&product, &coproduct] {
        if d.naive_dual().degree() != d.degree() {
            return Err("naive dual does not preserve degree".into());
        }
        let shift = d.trs_dual().degree() - d.degree();
        if shift != d.inputs as i64 - d.outputs as i64 {
            return Err("trs degree shift is not inputs - outputs".into());
        }
    }
    Ok(())
}

fn frobenius_compatibility(_cfg: &Config) -> std::result::Result<(), String> {
    // Compatibility of μ and the adjoint Δ. In the engine's handedness the
    // identities valid on every built-in (noncommutative included) are
    //   Δ(ab) = Δ(a)·(b⊗1) = (1⊗a)·Δ(b)
    // in the Koszul-signed tensor algebra; on the commutative built-ins
    // with an even pairing these coincide with the slotwise forms
    // (id⊗μ)(Δ⊗id) and (μ⊗id)(id⊗Δ).
    for alg in builtins::all_builtins() {
        let dim = alg.dim() as u32;
        for a in 0..dim {
            for b in 0..dim {
                let ea = alg.basis_element(a);
                let eb = alg.basis_element(b);
                let lhs = wrap(alg.comultiply(&wrap(alg.multiply(&ea, &eb))?))?;
                let right = {
                    let b_one = wrap(tensor_product(&eb, &alg.unit_element()))?;
                    wrap(alg.mul_tensors(&wrap(alg.comultiply(&ea))?, &b_one))?
                };
                if lhs != right {
                    return Err(format!(
                        "Frobenius compatibility fails on {} at ({a},{b})",
                        alg.name()
                    ));
                }
                // the mirror identity picks up the graded cyclicity sign of
                // the form, so it is plain only for even pairings
                if alg.dual_parity() == 0 {
                    let left = {
                        let one_a = wrap(tensor_product(&alg.unit_element(), &ea))?;
                        wrap(alg.mul_tensors(&one_a, &wrap(alg.comultiply(&eb))?))?
                    };
                    if lhs != left {
                        return Err(format!(
                            "Frobenius compatibility (left form) fails on {} at ({a},{b})",
                            alg.name()
                        ));
                    }
                }
                if alg.is_commutative() && alg.dual_parity() == 0 {
                    let mid1 = {
                        let t =
                            wrap(tensor_product(&wrap(alg.comultiply(&ea))?, &eb))?;
                        wrap(alg.merge_slots(&t, 1))?
                    };
                    let mid2 = {
                        let t =
                            wrap(tensor_product(&ea, &wrap(alg.comultiply(&eb))?))?;
                        wrap(alg.merge_slots(&t, 0))?
                    };
                    if lhs != mid1 || lhs != mid2 {
                        return Err(format!(
                            "slotwise compatibility fails on commutative {} at ({a},{b})",
                            alg.name()
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

fn integral_cyclicity(_cfg: &Config) -> std::result::Result<(), String> {
    // ∫(a₁…a_n) = ±∫(a_n a₁…a_{n-1}) with the Koszul rotation sign
    for alg in builtins::all_builtins() {
        let dim = alg.dim();
        for n in 2..=3usize {
            for word in basis_tuples(dim, n) {
                let letters: Vec<TensorElement> =
                    word.iter().map(|&i| alg.basis_element(i)).collect();
                let w = wrap(CyclicWord::new(letters))?;
                let direct = wrap(bracket(&alg, &w))?;
                let (rotated, sign) = wrap(w.rotated(n - 1))?;
                let other = wrap(bracket(&alg, &rotated))?;
                if other != &sign * &direct {
                    return Err(format!(
                        "cyclicity fails on {} word {word:?}",
                        alg.name()
                    ));
                }
            }
        }
    }
    Ok(())
}

fn splitting_identity(_cfg: &Config) -> std::result::Result<(), String> {
    // ⟨a₁…a_n⟩ = Σ g^{pq} ⟨a₁…a_i Δ_p⟩⟨Δ_q a_{i+1}…a_n⟩ at every split
    for alg in builtins::all_builtins() {
        let dim = alg.dim();
        for n in 1..=4usize {
            // keep the largest algebras affordable
            if dim >= 4 && n == 4 {
                continue;
            }
            for word in basis_tuples(dim, n) {
                let letters: Vec<TensorElement> =
                    word.iter().map(|&i| alg.basis_element(i)).collect();
                let total = wrap(alg.integral_n(&letters))?;
                for split in 1..n.max(2) {
                    let split = split.min(n);
                    let mut rhs = Scalar::zero();
                    for p in 0..dim as u32 {
                        for q in 0..dim as u32 {
                            let g = &alg.pairing_inverse()[p as usize][q as usize];
                            if g.is_zero() {
                                continue;
                            }
                            let mut left: Vec<TensorElement> = letters[..split].to_vec();
                            left.push(alg.basis_element(p));
                            let mut right: Vec<TensorElement> = vec![alg.basis_element(q)];
                            right.extend_from_slice(&letters[split..]);
                            let lv = wrap(alg.integral_n(&left))?;
                            if lv.is_zero() {
                                continue;
                            }
                            let rv = wrap(alg.integral_n(&right))?;
                            rhs += &(&(g * &lv) * &rv);
                        }
                    }
                    if rhs != total {
                        return Err(format!(
                            "splitting fails on {} word {word:?} at {split}",
                            alg.name()
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

fn dual_basis_resolution(_cfg: &Config) -> std::result::Result<(), String> {
    // a = Σ g^{pq} ⟨aΔ_p⟩ Δ_q for every basis a
    for alg in builtins::all_builtins() {
        for a in 0..alg.dim() as u32 {
            let ea = alg.basis_element(a);
            let mut sum = alg.zero_element();
            for p in 0..alg.dim() as u32 {
                let v = wrap(alg.pairing(&ea, &alg.basis_element(p)))?;
                if v.is_zero() {
                    continue;
                }
                sum = wrap(sum.add(&alg.dual_basis_element(p).scaled(&v)))?;
            }
            if sum != ea {
                return Err(format!("resolution fails on {} at {a}", alg.name()));
            }
        }
    }
    Ok(())
}

fn commutative_shortcut(_cfg: &Config) -> std::result::Result<(), String> {
    // Δ(a) = (a⊗1)·C for the strictly commutative built-ins with an even
    // pairing; on the odd-socle spheres Δ(1) itself differs from C.
    for alg in builtins::all_builtins() {
        if !alg.is_commutative() || alg.dual_parity() != 0 {
            continue;
        }
        for a in 0..alg.dim() as u32 {
            let ea = alg.basis_element(a);
            let lhs = wrap(alg.comultiply(&ea))?;
            let a_tensor_one = wrap(tensor_product(&ea, &alg.unit_element()))?;
            let rhs = wrap(alg.mul_tensors(&a_tensor_one, alg.casimir()))?;
            if lhs != rhs {
                return Err(format!(
                    "(a⊗1)C shortcut fails on commutative {} at {a}",
                    alg.name()
                ));
            }
        }
    }
    Ok(())
}

fn gorenstein_euler_form(_cfg: &Config) -> std::result::Result<(), String> {
    // ε(e) = Σ (-1)^deg over the basis and e = ε(e)·Δ_top
    for alg in builtins::all_builtins() {
        let Some((_, top)) = alg.socle() else { continue };
        let sdim: i64 = (0..alg.dim() as u32)
            .map(|i| if alg.basis().degree(i) % 2 == 0 { 1 } else { -1 })
            .sum();
        if alg.euler_characteristic() != Scalar::from_int(sdim) {
            return Err(format!("ε(e) ≠ sdim on {}", alg.name()));
        }
        let expected = alg.basis_element(top).scaled(&Scalar::from_int(sdim));
        if alg.euler_class() != &expected {
            return Err(format!("e ≠ sdim·Δ_top on {}", alg.name()));
        }
    }
    Ok(())
}

fn braid_relation(_cfg: &Config) -> std::result::Result<(), String> {
    // adjacent-swap braid relation on all arity-3 basis tensors of H*(T²)
    let t2 = builtins::torus2();
    for key in basis_tuples(t2.dim(), 3) {
        let t = TensorElement::basis_tensor(t2.basis().clone(), &key);
        let lhs = wrap(wrap(wrap(t.koszul_swap(0))?.koszul_swap(1))?.koszul_swap(0))?;
        let rhs = wrap(wrap(wrap(t.koszul_swap(1))?.koszul_swap(0))?.koszul_swap(1))?;
        if lhs != rhs {
            return Err(format!("braid relation fails at {key:?}"));
        }
    }
    Ok(())
}

fn surface_symmetries(_cfg: &Config) -> std::result::Result<(), String> {
    // boundary list reordering and signed rotations preserve Y(S)
    let m2 = builtins::matrix2();
    let words = [vec!["E11"], vec!["E12", "E21"], vec!["E11", "E22", "E12"]];
    for w1 in &words {
        for w2 in &words {
            let a = wrap(CyclicWord::from_names(&m2, w1))?;
            let b = wrap(CyclicWord::from_names(&m2, w2))?;
            let y1 = wrap(surface_correlator(
                &m2,
                &SurfaceDecoration::new(0, vec![a.clone(), b.clone()]),
            ))?;
            let y2 = wrap(surface_correlator(
                &m2,
                &SurfaceDecoration::new(0, vec![b.clone(), a.clone()]),
            ))?;
            if y1 != y2 {
                return Err(format!("boundary reordering changes Y: {w1:?} {w2:?}"));
            }
            for r in 0..a.len() {
                let (rot, sign) = wrap(a.rotated(r))?;
                let y3 = wrap(surface_correlator(
                    &m2,
                    &SurfaceDecoration::new(0, vec![rot, b.clone()]),
                ))?;
                if y3 != &sign * &y1 {
                    return Err(format!("rotation changes Y beyond its sign: {w1:?}"));
                }
            }
        }
    }
    // signed rotation on the torus with odd letters
    let t2 = builtins::torus2();
    let a = wrap(CyclicWord::from_names(&t2, &["a", "b"]))?;
    let one = wrap(CyclicWord::from_names(&t2, &["1"]))?;
    let y = wrap(surface_correlator(
        &t2,
        &SurfaceDecoration::new(0, vec![one.clone(), a.clone()]),
    ))?;
    let (rot, sign) = wrap(a.rotated(1))?;
    let y_rot = wrap(surface_correlator(
        &t2,
        &SurfaceDecoration::new(0, vec![one, rot]),
    ))?;
    if y_rot != &sign * &y {
        return Err("torus rotation sign fails".into());
    }
    Ok(())
}

fn surface_euler_power(_cfg: &Config) -> std::result::Result<(), String> {
    // for commutative A: Y(S) = ∫(word · e^{b-1+2g})
    for name in ["S2", "CP2"] {
        let alg = wrap(builtins::by_name(name))?;
        let dim = alg.dim();
        for genus in 0..=2u32 {
            for b in 1..=3usize {
                for word in basis_tuples(dim, 1) {
                    let first = wrap(CyclicWord::new(vec![alg.basis_element(word[0])]))?;
                    let mut boundaries = vec![first];
                    for _ in 1..b {
                        boundaries.push(wrap(CyclicWord::new(vec![alg.unit_element()]))?);
                    }
                    let y = wrap(surface_correlator(
                        &alg,
                        &SurfaceDecoration::new(genus, boundaries),
                    ))?;
                    let mut product = alg.basis_element(word[0]);
                    for _ in 0..(b - 1 + 2 * genus as usize) {
                        product = wrap(alg.multiply(&product, alg.euler_class()))?;
                    }
                    let expected = wrap(alg.counit(&product))?;
                    if y != expected {
                        return Err(format!(
                            "{name}: Y(g={genus}, b={b}) ≠ ∫(w·e^{{b-1+2g}})"
                        ));
                    }
                }
            }
        }
        // the handle factor itself reduces to e² for commutative algebras
        let handle = handle_element(&alg);
        let e2 = wrap(alg.multiply(alg.euler_class(), alg.euler_class()))?;
        if handle != e2 {
            return Err(format!("{name}: handle ≠ e²"));
        }
    }
    Ok(())
}

fn dualization_round_trip(_cfg: &Config) -> std::result::Result<(), String> {
    // re-pairing the dualized tensor against basis duals recovers the
    // shuffled functional, for n ≤ 3 on every built-in
    for alg in builtins::all_builtins() {
        let dim = alg.dim();
        for n in 1..=3usize {
            let y = wrap(integral_functional(&alg, n))?;
            for out_mask in 1..(1u32 << n) {
                let out_slots: Vec<usize> =
                    (0..n).filter(|i| out_mask & (1 << i) != 0).collect();
                let in_slots: Vec<usize> =
                    (0..n).filter(|i| out_mask & (1 << i) == 0).collect();
                let r = wrap(dualize_slots(&alg, &y, &out_slots))?;
                for b in basis_tuples(dim, in_slots.len()) {
                    let elems: Vec<TensorElement> =
                        b.iter().map(|&i| alg.basis_element(i)).collect();
                    let refs: Vec<&TensorElement> = elems.iter().collect();
                    let applied = wrap(apply_dualized(&alg, &r, &out_slots, &refs))?;
                    for z in basis_tuples(dim, out_slots.len()) {
                        let z_tensor =
                            TensorElement::basis_tensor(alg.basis().clone(), &z);
                        let lhs = wrap(alg.pair_tensors(&applied, &z_tensor))?;
                        // the shuffled probe with the σ Koszul sign
                        let mut key = vec![0u32; n];
                        for (m, &im) in in_slots.iter().enumerate() {
                            key[im] = b[m];
                        }
                        for (t, &o) in out_slots.iter().enumerate() {
                            key[o] = z[t];
                        }
                        let probe = TensorElement::basis_tensor(alg.basis().clone(), &key);
                        let mut rhs = wrap(alg.pair_tensors(&y, &probe))?;
                        let mut degrees: Vec<i64> =
                            b.iter().map(|&i| alg.basis().degree(i)).collect();
                        degrees.extend(z.iter().map(|&i| alg.basis().degree(i)));
                        let mut perm = vec![0usize; n];
                        for (m, &im) in in_slots.iter().enumerate() {
                            perm[im] = m;
                        }
                        for (t, &o) in out_slots.iter().enumerate() {
                            perm[o] = in_slots.len() + t;
                        }
                        if crate::tensor::koszul_permutation_sign(&degrees, &perm) {
                            rhs = -rhs;
                        }
                        if lhs != rhs {
                            return Err(format!(
                                "round trip fails on {} n={n} out={out_slots:?}",
                                alg.name()
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn noncommutative_shortcut(_cfg: &Config) -> std::result::Result<(), String> {
    // On M₂ the comultiplication satisfies Δ(a) = (1⊗a)·C = C·(a⊗1), while
    // the commutative-case shortcut (a⊗1)·C fails; record both directions.
    let m2 = builtins::matrix2();
    let mut left_fails = false;
    for a in 0..m2.dim() as u32 {
        let ea = m2.basis_element(a);
        let delta = wrap(m2.comultiply(&ea))?;
        let one_a = wrap(tensor_product(&m2.unit_element(), &ea))?;
        let via_right = wrap(m2.mul_tensors(&one_a, m2.casimir()))?;
        if via_right != delta {
            return Err(format!("(1⊗a)C ≠ Δ(a) on M2 at {a}"));
        }
        let a_one = wrap(tensor_product(&ea, &m2.unit_element()))?;
        let via_casimir_right = wrap(m2.mul_tensors(m2.casimir(), &a_one))?;
        if via_casimir_right != delta {
            return Err(format!("C(a⊗1) ≠ Δ(a) on M2 at {a}"));
        }
        let via_left = wrap(m2.mul_tensors(&a_one, m2.casimir()))?;
        if via_left != delta {
            left_fails = true;
        }
    }
    if !left_fails {
        return Err("(a⊗1)C unexpectedly equals Δ(a) on all of M2".into());
    }
    Ok(())
}

fn d_square_everywhere(cfg: &Config) -> std::result::Result<(), String> {
    // d² = 0 on every built-in, odd-socle spheres included; the gate
    // algebras are swept deeper by the acceptance criterion
    for alg in builtins::all_builtins() {
        let cap = if alg.dim() >= 4 { 2 } else { 3 };
        for n in 0..=capped(cap, cfg) {
            for fk in basis_tuples(alg.dim(), n + 1) {
                let f = wrap(Cochain::from_basis_key(alg.basis().clone(), &fk))?;
                let ddf = wrap(differential(&alg, &wrap(differential(&alg, &f))?))?;
                if !ddf.is_zero() {
                    return Err(format!("{}: d²(f) ≠ 0 at {fk:?}", alg.name()));
                }
            }
        }
    }
    Ok(())
}

fn cut_invariance_everywhere(cfg: &Config) -> std::result::Result<(), String> {
    // the gate sweeps M₂, S², CP² and the random algebras at full depth;
    // this covers the remaining built-ins at a cost-bounded depth
    for alg in builtins::all_builtins() {
        let len = if alg.dim() >= 4 {
            cfg.otft_max_len.min(3)
        } else {
            cfg.otft_max_len
        };
        let annulus = wrap(annulus_sweep(&alg, len))?;
        if !annulus.all_equal() {
            return Err(annulus.failures[0].clone());
        }
        let torus = wrap(torus_sweep(&alg, len))?;
        if !torus.all_equal() {
            return Err(torus.failures[0].clone());
        }
    }
    Ok(())
}
