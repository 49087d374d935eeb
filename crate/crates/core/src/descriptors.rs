//! Degree and duality arithmetic for operation descriptors.
//!
//! A descriptor records only the combinatorial data of an `n`-to-`m`
//! operation: boundary counts, arc count and empty output boundaries. It
//! does not construct the operation itself.

use std::fmt;

/// Combinatorial signature of an `inputs`-to-`outputs` operation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpDescriptor {
    pub inputs: u32,
    pub outputs: u32,
    pub arcs: u32,
    pub empty_out_boundaries: u32,
    pub label: String,
}

impl OpDescriptor {
    pub fn new(label: &str, inputs: u32, outputs: u32, arcs: u32) -> Self {
        OpDescriptor {
            inputs,
            outputs,
            arcs,
            empty_out_boundaries: 0,
            label: label.to_string(),
        }
    }

    pub fn with_empty_out_boundaries(mut self, r: u32) -> Self {
        self.empty_out_boundaries = r;
        self
    }

    /// Degree = number of arcs minus number of inputs.
    pub fn degree(&self) -> i64 {
        self.arcs as i64 - self.inputs as i64
    }

    /// Time-reversal dual: inputs and outputs swap, the arc system stays.
    /// Shifts the degree by `inputs - outputs`.
    pub fn trs_dual(&self) -> OpDescriptor {
        OpDescriptor {
            inputs: self.outputs,
            outputs: self.inputs,
            arcs: self.arcs,
            empty_out_boundaries: self.empty_out_boundaries,
            label: format!("trs({})", self.label),
        }
    }

    /// Naive dual: the transpose through the pairing. Inputs and outputs
    /// swap and the degree is preserved, so the recorded arc count adjusts
    /// to `degree + new inputs`.
    pub fn naive_dual(&self) -> OpDescriptor {
        let degree = self.degree();
        let arcs = degree + self.outputs as i64;
        assert!(arcs >= 0, "descriptor degree below -inputs");
        OpDescriptor {
            inputs: self.outputs,
            outputs: self.inputs,
            arcs: arcs as u32,
            empty_out_boundaries: self.empty_out_boundaries,
            label: format!("dual({})", self.label),
        }
    }

    /// Hom-signature, e.g. `Hom(CH^⊗2, CH^⊗1 ⊗ A^⊗1), deg 0`.
    pub fn signature(&self) -> String {
        let out = if self.empty_out_boundaries > 0 {
            format!(
                "CH^⊗{} ⊗ A^⊗{}",
                self.outputs, self.empty_out_boundaries
            )
        } else {
            format!("CH^⊗{}", self.outputs)
        };
        format!("Hom(CH^⊗{}, {}), deg {}", self.inputs, out, self.degree())
    }

    /// Correlation-function signature, `Hom(CH^⊗(n+m) ⊗ A^⊗r, k)`.
    pub fn correlator_signature(&self) -> String {
        let total = self.inputs + self.outputs;
        if self.empty_out_boundaries > 0 {
            format!(
                "Hom(CH^⊗{} ⊗ A^⊗{}, k)",
                total, self.empty_out_boundaries
            )
        } else {
            format!("Hom(CH^⊗{}, k)", total)
        }
    }

    /// The degree-0 product cell: two inputs, one output, two arcs.
    pub fn product_cell() -> OpDescriptor {
        OpDescriptor::new("product", 2, 1, 2)
    }

    /// The degree-1 coproduct cell: one input, two outputs, two arcs.
    pub fn coproduct_cell() -> OpDescriptor {
        OpDescriptor::new("coproduct", 1, 2, 2)
    }

    /// The identity cylinder.
    pub fn identity_cell() -> OpDescriptor {
        OpDescriptor::new("identity", 1, 1, 1)
    }
}

impl fmt::Display for OpDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.label, self.signature())
    }
}
