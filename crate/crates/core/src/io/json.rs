use std::collections::BTreeSet;

use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::algebra::{CMatrix, FourierElement, Mode, ThetaMatrix};
use crate::error::IoError;
use crate::spin::{GaugeField, UnitaryElement};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CoeffWire {
    k: Mode,
    /// Row-major, `[re, im]` entries.
    matrix: Vec<Vec<Complex64>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ElementWire {
    size: usize,
    coeffs: Vec<CoeffWire>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FieldWire {
    size: usize,
    theta: ThetaMatrix,
    components: [Vec<CoeffWire>; 3],
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct UnitaryWire {
    size: usize,
    theta: ThetaMatrix,
    coeffs: Vec<CoeffWire>,
}

/// Deserializes `text`, reporting the path to the offending key on failure.
pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T, IoError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        IoError::Parse { path: if path == "." { "$".into() } else { path }, message: e.into_inner().to_string() }
    })
}

/// Pretty JSON with a trailing newline. Map keys keep declaration order.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn coeffs_to_wire(a: &FourierElement) -> Vec<CoeffWire> {
    a.iter()
        .map(|(k, m)| CoeffWire {
            k: *k,
            matrix: (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect()).collect(),
        })
        .collect()
}

fn coeffs_from_wire(size: usize, wire: Vec<CoeffWire>, path: &str) -> Result<FourierElement, IoError> {
    if size == 0 {
        return Err(IoError::invalid("size", "size must be positive"));
    }
    let mut seen = BTreeSet::new();
    let mut coeffs = Vec::with_capacity(wire.len());
    for (i, c) in wire.into_iter().enumerate() {
        if !seen.insert(c.k) {
            return Err(IoError::invalid(format!("{path}[{i}].k"), format!("duplicate mode {}", c.k)));
        }
        if c.matrix.len() != size || c.matrix.iter().any(|row| row.len() != size) {
            return Err(IoError::invalid(
                format!("{path}[{i}].matrix"),
                format!("expected a {size}×{size} matrix for mode {}", c.k),
            ));
        }
        if c.matrix.iter().flatten().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(IoError::invalid(format!("{path}[{i}].matrix"), "non-finite entry"));
        }
        let m = CMatrix::from_fn(size, size, |r, s| c.matrix[r][s]);
        coeffs.push((c.k, m));
    }
    FourierElement::from_coeffs(size, coeffs).map_err(|e| IoError::invalid(path, e.to_string()))
}

pub fn emit_element(a: &FourierElement) -> String {
    to_json(&ElementWire { size: a.size(), coeffs: coeffs_to_wire(a) })
}

pub fn parse_element(text: &str) -> Result<FourierElement, IoError> {
    let w: ElementWire = from_json(text)?;
    coeffs_from_wire(w.size, w.coeffs, "coeffs")
}

pub fn emit_field(field: &GaugeField) -> String {
    to_json(&field_value(field))
}

/// The field as a JSON value, for embedding in larger documents.
pub fn field_value(field: &GaugeField) -> serde_json::Value {
    let [a, b, c] = field.components();
    let wire = FieldWire {
        size: field.size(),
        theta: *field.theta(),
        components: [coeffs_to_wire(a), coeffs_to_wire(b), coeffs_to_wire(c)],
    };
    serde_json::to_value(&wire).expect("serializable")
}

/// Parses a gauge field. Skewness of the components is not required here;
/// evaluators that need it check it themselves.
pub fn parse_field(text: &str) -> Result<GaugeField, IoError> {
    let w: FieldWire = from_json(text)?;
    let [c0, c1, c2] = w.components;
    let comps = [
        coeffs_from_wire(w.size, c0, "components[0]")?,
        coeffs_from_wire(w.size, c1, "components[1]")?,
        coeffs_from_wire(w.size, c2, "components[2]")?,
    ];
    GaugeField::new(w.theta, comps).map_err(|e| IoError::invalid("components", e.to_string()))
}

pub fn emit_unitary(u: &UnitaryElement) -> String {
    to_json(&UnitaryWire { size: u.size(), theta: *u.theta(), coeffs: coeffs_to_wire(u.element()) })
}

/// Parses a unitary; the unitarity check uses the crate-wide tolerance.
pub fn parse_unitary(text: &str) -> Result<UnitaryElement, IoError> {
    let w: UnitaryWire = from_json(text)?;
    let u = coeffs_from_wire(w.size, w.coeffs, "coeffs")?;
    UnitaryElement::new(u, w.theta).map_err(|e| IoError::invalid("coeffs", e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin::{random_field, RandomFieldParams};

    #[test]
    fn field_round_trip_is_bit_exact() {
        for seed in 0..5 {
            let f = random_field(
                &RandomFieldParams { size: 2, support: 2, seed, decay: 0.7, no_zero_mode: seed % 2 == 0 },
                ThetaMatrix::golden(),
            );
            let back = parse_field(&emit_field(&f)).unwrap();
            assert_eq!(back, f);
            assert_eq!(emit_field(&back), emit_field(&f));
        }
    }

    #[test]
    fn element_and_unitary_round_trip() {
        let a = FourierElement::basis(2, Mode::new(1, -1, 0), Complex64::new(0.1, -0.0));
        assert_eq!(parse_element(&emit_element(&a)).unwrap(), a);
        let u = UnitaryElement::random_constant(3, 4, ThetaMatrix::single_angle(0.3));
        let back = parse_unitary(&emit_unitary(&u)).unwrap();
        assert_eq!(back.element(), u.element());
    }

    #[test]
    fn duplicate_mode_is_named() {
        let text = r#"{"size":1,"coeffs":[
            {"k":[0,1,0],"matrix":[[[1,0]]]},
            {"k":[0,1,0],"matrix":[[[2,0]]]}]}"#;
        let e = parse_element(text).unwrap_err().to_string();
        assert!(e.contains("duplicate mode (0, 1, 0)"), "{e}");
        assert!(e.contains("coeffs[1].k"), "{e}");
    }

    #[test]
    fn non_skew_theta_is_rejected_with_path() {
        let text = r#"{"size":1,"theta":[[0.1,0,0],[0,0,0],[0,0,0]],"components":[[],[],[]]}"#;
        let e = parse_field(text).unwrap_err().to_string();
        assert!(e.contains("theta not skew-symmetric"), "{e}");
        assert!(e.starts_with("theta"), "{e}");
    }

    #[test]
    fn shape_and_syntax_errors_carry_paths() {
        let text = r#"{"size":2,"theta":[[0,0,0],[0,0,0],[0,0,0]],"components":[[],[{"k":[1,0,0],"matrix":[[[1,0]]]}],[]]}"#;
        let e = parse_field(text).unwrap_err().to_string();
        assert!(e.starts_with("components[1][0].matrix"), "{e}");
        let e = parse_field(r#"{"size":1,"theta":[[0,0,0],[0,0,0],[0,0,0]],"components":[[],[{"k":[1,0],"matrix":[]}],[]]}"#)
            .unwrap_err()
            .to_string();
        assert!(e.contains("components[1][0].k"), "{e}");
        assert!(parse_field("{").is_err());
        let e = parse_element(r#"{"size":1,"coeffs":[],"extra":1}"#).unwrap_err().to_string();
        assert!(e.contains("extra"), "{e}");
    }

    #[test]
    fn non_unitary_is_rejected() {
        let text = r#"{"size":1,"theta":[[0,0,0],[0,0,0],[0,0,0]],"coeffs":[{"k":[0,0,0],"matrix":[[[2,0]]]}]}"#;
        assert!(parse_unitary(text).is_err());
    }
}
