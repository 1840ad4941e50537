//! JSON file formats: operator polynomials, density matrices, basis listings.

use std::collections::BTreeSet;
use std::path::Path;

use hsbasis::{BasisElement, Complex, DenseOperator, DensityMatrix, OrbitalSet, Poly};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const FORMAT_VERSION: u32 = 1;

/// One canonical term `coeff · c*_A c_B`; indices 1-based and strictly increasing.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermRecord {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub coeff: [f64; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OperatorFile {
    pub format_version: u32,
    pub kind: String,
    pub n: usize,
    pub terms: Vec<TermRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityFile {
    pub format_version: u32,
    pub kind: String,
    pub n: usize,
    /// Row-major `2ⁿ×2ⁿ` entries `[re, im]`, rows and columns in bitmask order.
    pub entries: Vec<[f64; 2]>,
}

fn orbital_set(ix: &[usize], n: usize, what: &str) -> Result<OrbitalSet, CliError> {
    if ix.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CliError::input(format!(
            "{what} indices {ix:?} are not strictly increasing"
        )));
    }
    OrbitalSet::from_indices(ix, n).map_err(|e| CliError::input(format!("{what}: {e}")))
}

impl OperatorFile {
    pub fn from_poly(p: &Poly) -> Self {
        OperatorFile {
            format_version: FORMAT_VERSION,
            kind: "operator".into(),
            n: p.n(),
            terms: p
                .terms()
                .map(|(a, b, c)| TermRecord {
                    a: a.indices(),
                    b: b.indices(),
                    coeff: [c.re, c.im],
                })
                .collect(),
        }
    }

    pub fn to_poly(&self) -> Result<Poly, CliError> {
        check_header(self.format_version, &self.kind, "operator")?;
        let mut seen = BTreeSet::new();
        let mut p = Poly::zero(self.n)?;
        for (x, t) in self.terms.iter().enumerate() {
            let a = orbital_set(&t.a, self.n, &format!("term {x} A"))?;
            let b = orbital_set(&t.b, self.n, &format!("term {x} B"))?;
            if !seen.insert((a, b)) {
                return Err(CliError::input(format!("duplicate term A={a} B={b}")));
            }
            if !t.coeff.iter().all(|v| v.is_finite()) {
                return Err(CliError::input(format!(
                    "term {x} has a non-finite coefficient"
                )));
            }
            p.add_term(a, b, Complex::new(t.coeff[0], t.coeff[1]));
        }
        Ok(p)
    }
}

impl DensityFile {
    pub fn from_dense(x: &DenseOperator<f64>) -> Self {
        DensityFile {
            format_version: FORMAT_VERSION,
            kind: "density".into(),
            n: x.n(),
            entries: x.data().iter().map(|c| [c.re, c.im]).collect(),
        }
    }

    pub fn to_density(&self) -> Result<DensityMatrix, CliError> {
        check_header(self.format_version, &self.kind, "density")?;
        let data = self
            .entries
            .iter()
            .map(|e| Complex::new(e[0], e[1]))
            .collect();
        let op = DenseOperator::from_row_major(self.n, data)?;
        Ok(DensityMatrix::new(op)?)
    }
}

fn check_header(version: u32, kind: &str, expected: &str) -> Result<(), CliError> {
    if version != FORMAT_VERSION {
        return Err(CliError::input(format!(
            "unsupported format_version {version} (expected {FORMAT_VERSION})"
        )));
    }
    if kind != expected {
        return Err(CliError::input(format!(
            "expected kind `{expected}`, found `{kind}`"
        )));
    }
    Ok(())
}

pub enum InputFile {
    Operator(Poly),
    Density(DensityMatrix),
}

#[derive(Deserialize)]
struct KindProbe {
    kind: String,
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))
}

pub fn parse_input(text: &str) -> Result<InputFile, CliError> {
    let bad = |e: serde_json::Error| CliError::input(format!("malformed input JSON: {e}"));
    let probe: KindProbe = serde_json::from_str(text).map_err(bad)?;
    match probe.kind.as_str() {
        "operator" => {
            let f: OperatorFile = serde_json::from_str(text).map_err(bad)?;
            Ok(InputFile::Operator(f.to_poly()?))
        }
        "density" => {
            let f: DensityFile = serde_json::from_str(text).map_err(bad)?;
            Ok(InputFile::Density(f.to_density()?))
        }
        other => Err(CliError::input(format!("unknown input kind `{other}`"))),
    }
}

pub fn read_input(path: &Path) -> Result<InputFile, CliError> {
    parse_input(&read_text(path)?)
}

/// Exact raw term with Gaussian-integer coefficient.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExactTermRecord {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub coeff: [i64; 2],
}

/// One line of a basis listing: the element is `2^{−half_exponent/2} · raw`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisLine {
    pub id: String,
    pub half_exponent: u32,
    pub raw: Vec<ExactTermRecord>,
    pub terms: Vec<TermRecord>,
}

impl BasisLine {
    pub fn from_element(e: &BasisElement) -> Self {
        BasisLine {
            id: e.id(),
            half_exponent: e.normalization.half_exponent,
            raw: e
                .raw
                .terms()
                .map(|(a, b, c)| ExactTermRecord {
                    a: a.indices(),
                    b: b.indices(),
                    coeff: [c.re, c.im],
                })
                .collect(),
            terms: OperatorFile::from_poly(&e.to_poly::<f64>()).terms,
        }
    }
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

pub fn to_json_pretty<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text)
        .map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display())))
}
