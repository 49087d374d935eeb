//! Catalog of built-in algebras: cohomology rings of spheres, complex
//! projective spaces, the 2-torus, truncated polynomial algebras and the
//! 2×2 matrix algebra with the trace form.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::frobenius::{AlgebraSpec, FrobeniusAlgebra};

/// `H*(Sⁿ)`: basis `1, x` with `deg x = n`, `x² = 0`, `∫x = 1`.
pub fn sphere(n: u32) -> FrobeniusAlgebra {
    let mut spec = AlgebraSpec::new(&format!("S{n}"), &[("1", 0), ("x", n as i64)], "1");
    spec.set_product("x", "x", &[]);
    spec.set_counit("x", "1");
    FrobeniusAlgebra::build(&spec).expect("sphere algebra is valid")
}

/// `H*(CPⁿ)`: truncated polynomial ring on `h` of degree 2, `h^{n+1} = 0`,
/// `∫hⁿ = 1`.
pub fn projective_space(n: u32) -> FrobeniusAlgebra {
    truncated_polynomial_impl(&format!("CP{n}"), n + 1, 2, "h")
}

/// `ℚ[x]/(x^k)` with `deg x = 2` and `∫x^{k-1} = 1`.
pub fn truncated_polynomial(k: u32) -> FrobeniusAlgebra {
    assert!(k >= 1, "need at least the unit");
    truncated_polynomial_impl(&format!("Trunc{k}"), k, 2, "x")
}

fn truncated_polynomial_impl(name: &str, k: u32, step: i64, gen: &str) -> FrobeniusAlgebra {
    let names: Vec<String> = (0..k)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => gen.to_string(),
            _ => format!("{gen}{i}"),
        })
        .collect();
    let basis: Vec<(&str, i64)> = names
        .iter()
        .enumerate()
        .map(|(i, n)| (n.as_str(), step * i as i64))
        .collect();
    let mut spec = AlgebraSpec::new(name, &basis, "1");
    for i in 1..k {
        for j in 1..k {
            if i + j < k {
                spec.set_product(&names[i as usize], &names[j as usize], &[(
                    "1",
                    &names[(i + j) as usize],
                )]);
            } else {
                spec.set_product(&names[i as usize], &names[j as usize], &[]);
            }
        }
    }
    spec.set_counit(&names[(k - 1) as usize], "1");
    FrobeniusAlgebra::build(&spec).expect("truncated polynomial algebra is valid")
}

/// `H*(T²)`: exterior algebra on `a, b` of degree 1, with `ab` the top
/// class and `∫ab = 1`.
pub fn torus2() -> FrobeniusAlgebra {
    let mut spec = AlgebraSpec::new(
        "T2",
        &[("1", 0), ("a", 1), ("b", 1), ("ab", 2)],
        "1",
    );
    spec.set_product("a", "a", &[]);
    spec.set_product("a", "b", &[("1", "ab")]);
    spec.set_product("b", "a", &[("-1", "ab")]);
    spec.set_product("b", "b", &[]);
    for x in ["a", "b", "ab"] {
        spec.set_product(x, "ab", &[]);
        if x != "ab" {
            spec.set_product("ab", x, &[]);
        }
    }
    spec.set_counit("ab", "1");
    FrobeniusAlgebra::build(&spec).expect("torus algebra is valid")
}

/// `M₂(ℚ)` on the matrix units `E11, E12, E21, E22`, all in degree 0, with
/// the trace form. Noncommutative; the unit is `E11 + E22`.
pub fn matrix2() -> FrobeniusAlgebra {
    let basis: Vec<(String, i64)> = (1..=2)
        .flat_map(|a| (1..=2).map(move |b| (format!("E{a}{b}"), 0)))
        .collect();
    let basis_refs: Vec<(&str, i64)> = basis.iter().map(|(n, d)| (n.as_str(), *d)).collect();
    let mut spec = AlgebraSpec::new("M2", &basis_refs, "E11");
    spec.set_unit_combination(&[("1", "E11"), ("1", "E22")]);
    // E_{ab} E_{cd} = δ_{bc} E_{ad}
    for a in 1..=2 {
        for b in 1..=2 {
            for c in 1..=2 {
                for d in 1..=2 {
                    let left = format!("E{a}{b}");
                    let right = format!("E{c}{d}");
                    if b == c {
                        spec.set_product(&left, &right, &[("1", &format!("E{a}{d}"))]);
                    } else {
                        spec.set_product(&left, &right, &[]);
                    }
                }
            }
        }
    }
    spec.set_counit("E11", "1");
    spec.set_counit("E22", "1");
    FrobeniusAlgebra::build(&spec).expect("matrix algebra is valid")
}

/// Every named built-in, for exhaustive sweeps.
pub fn all_builtins() -> Vec<FrobeniusAlgebra> {
    vec![
        sphere(1),
        sphere(2),
        sphere(3),
        sphere(4),
        projective_space(1),
        projective_space(2),
        projective_space(3),
        torus2(),
        truncated_polynomial(3),
        matrix2(),
    ]
}

/// Resolves a built-in name: `S1..S4`, `CP1..CP3`, `T2`, `Trunc{k}`, `M2`.
pub fn by_name(name: &str) -> Result<FrobeniusAlgebra> {
    let unknown = || Error::UnknownBasisName {
        name: format!("built-in algebra `{name}`"),
    };
    match name {
        "S1" => Ok(sphere(1)),
        "S2" => Ok(sphere(2)),
        "S3" => Ok(sphere(3)),
        "S4" => Ok(sphere(4)),
        "CP1" => Ok(projective_space(1)),
        "CP2" => Ok(projective_space(2)),
        "CP3" => Ok(projective_space(3)),
        "T2" => Ok(torus2()),
        "M2" => Ok(matrix2()),
        _ => {
            if let Some(k) = name.strip_prefix("Trunc") {
                let k: u32 = k.parse().map_err(|_| unknown())?;
                if k < 1 {
                    return Err(unknown());
                }
                Ok(truncated_polynomial(k))
            } else {
                Err(unknown())
            }
        }
    }
}

pub fn builtin_names() -> Vec<&'static str> {
    vec![
        "S1", "S2", "S3", "S4", "CP1", "CP2", "CP3", "T2", "Trunc{k}", "M2",
    ]
}

/// A random commutative 3-dimensional Frobenius algebra: the multiplication
/// of `Trunc3` with a perturbed counit `∫ = (m₀, m₁, m₂)`, `m₂ ≠ 0`. The
/// derived pairing is the anti-triangular Hankel matrix of the moments, so
/// it is always nondegenerate.
pub fn random_perturbed_trunc3(seed: u64) -> FrobeniusAlgebra {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut small = |nonzero: bool| -> String {
        loop {
            let v: i64 = rng.random_range(-3..=3);
            if !nonzero || v != 0 {
                return v.to_string();
            }
        }
    };
    let m0 = small(false);
    let m1 = small(false);
    let m2 = small(true);
    let mut spec = AlgebraSpec::new(
        &format!("RandTrunc3-{seed}"),
        &[("1", 0), ("x", 2), ("x2", 4)],
        "1",
    );
    spec.set_product("x", "x", &[("1", "x2")]);
    spec.set_product("x", "x2", &[]);
    spec.set_product("x2", "x", &[]);
    spec.set_product("x2", "x2", &[]);
    spec.set_counit("1", &m0);
    spec.set_counit("x", &m1);
    spec.set_counit("x2", &m2);
    FrobeniusAlgebra::build(&spec).expect("perturbed Trunc3 is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    #[test]
    fn euler_characteristics_match_geometry() {
        let cases = [
            ("S1", 0),
            ("S2", 2),
            ("S3", 0),
            ("S4", 2),
            ("CP1", 2),
            ("CP2", 3),
            ("CP3", 4),
            ("T2", 0),
            ("Trunc3", 3),
            ("M2", 4),
        ];
        for (name, chi) in cases {
            let alg = by_name(name).unwrap();
            assert_eq!(
                alg.euler_characteristic(),
                Scalar::from_int(chi),
                "χ mismatch for {name}"
            );
        }
    }

    #[test]
    fn euler_class_values() {
        // e = 2x on S², 3h² on CP², 0 on T²
        let s2 = sphere(2);
        let x = s2.element_by_name("x").unwrap();
        assert_eq!(s2.euler_class(), &x.scaled(&Scalar::from_int(2)));

        let cp2 = projective_space(2);
        let h2 = cp2.element_by_name("h2").unwrap();
        assert_eq!(cp2.euler_class(), &h2.scaled(&Scalar::from_int(3)));

        assert!(torus2().euler_class().is_zero());
        assert!(sphere(3).euler_class().is_zero());
    }

    #[test]
    fn gorenstein_flags() {
        assert_eq!(sphere(2).socle(), Some((2, 1)));
        assert_eq!(projective_space(2).socle().map(|s| s.0), Some(4));
        assert_eq!(torus2().socle().map(|s| s.0), Some(2));
        assert_eq!(matrix2().socle(), None);
        assert!(!matrix2().is_connected_graded());
        assert!(!matrix2().is_commutative());
        assert!(sphere(2).is_commutative());
        assert!(!torus2().is_commutative());
    }

    #[test]
    fn matrix_units_behave() {
        let m2 = matrix2();
        let e11 = m2.element_by_name("E11").unwrap();
        let e12 = m2.element_by_name("E12").unwrap();
        let e21 = m2.element_by_name("E21").unwrap();
        let e22 = m2.element_by_name("E22").unwrap();
        assert_eq!(m2.multiply(&e12, &e21).unwrap(), e11);
        assert_eq!(m2.multiply(&e21, &e12).unwrap(), e22);
        assert_eq!(m2.counit(&e11).unwrap(), Scalar::one());
        // ⟨E12, E21⟩ = tr(E12 E21) = 1
        assert_eq!(m2.pairing(&e12, &e21).unwrap(), Scalar::one());
        // the unit is E11 + E22 and not a basis vector
        assert_eq!(m2.unit_index(), None);
        let unit = m2.unit_element();
        assert_eq!(m2.multiply(&unit, &e12).unwrap(), e12);
    }

    #[test]
    fn random_algebras_build_and_vary() {
        for seed in 0..5 {
            let alg = random_perturbed_trunc3(seed);
            assert_eq!(alg.dim(), 3);
            assert!(alg.is_commutative());
        }
    }

    #[test]
    fn trunc1_is_the_ground_field() {
        let alg = by_name("Trunc1").unwrap();
        assert_eq!(alg.dim(), 1);
        assert_eq!(alg.euler_characteristic(), Scalar::one());
        assert!(by_name("Trunc0").is_err());
        assert!(by_name("TruncX").is_err());
    }

    #[test]
    fn algebra_spec_json_round_trips() {
        use crate::frobenius::{AlgebraSpec, FrobeniusAlgebra};
        // basis-name unit
        let s2 = sphere(2);
        let mut spec = AlgebraSpec::new("S2again", &[("1", 0), ("x", 2)], "1");
        spec.set_product("x", "x", &[]);
        spec.set_counit("x", "1");
        let parsed = AlgebraSpec::from_json(&spec.to_json()).unwrap();
        let rebuilt = FrobeniusAlgebra::build(&parsed).unwrap();
        assert_eq!(rebuilt.euler_characteristic(), s2.euler_characteristic());
        // combination unit survives the round trip too
        let m2 = matrix2();
        let text = format!(
            r#"{{"name":"M2again","basis":[{{"name":"E11","degree":0}},{{"name":"E12","degree":0}},{{"name":"E21","degree":0}},{{"name":"E22","degree":0}}],
                 "unit":[["1","E11"],["1","E22"]],
                 "products":{},
                 "counit":[["E11","1"],["E22","1"]]}}"#,
            serde_json::to_string(&{
                let mut products = Vec::new();
                for a in 1..=2 {
                    for b in 1..=2 {
                        for c in 1..=2 {
                            for d in 1..=2 {
                                let terms: Vec<(String, String)> = if b == c {
                                    vec![("1".to_string(), format!("E{a}{d}"))]
                                } else {
                                    vec![]
                                };
                                products.push((
                                    format!("E{a}{b}"),
                                    format!("E{c}{d}"),
                                    terms,
                                ));
                            }
                        }
                    }
                }
                products
            })
            .unwrap()
        );
        let parsed = AlgebraSpec::from_json(&text).unwrap();
        let rebuilt = FrobeniusAlgebra::build(&parsed).unwrap();
        assert_eq!(rebuilt.unit_index(), None);
        assert_eq!(rebuilt.euler_characteristic(), m2.euler_characteristic());
    }
}
