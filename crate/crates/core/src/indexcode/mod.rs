//! Index codes: the linear scheme built from a representing matrix, code
//! concatenation over a vertex partition, the two-round tournament scheme,
//! and a brute-force optimum via confusion graphs.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldSpec};
use crate::graph::Graph;
use crate::matrix::{FFMatrix, RowSpaceSolver};
use crate::minrank::Representation;

pub mod concat;
pub mod confusion;
pub mod protocol;
pub mod tournament;

pub use concat::{concat_codes, ConcatCode};
pub use confusion::{
    confusable_differences, confusion_graph, exact_ell, exact_ell_with, exact_linear_ell, linear_encoder_separates,
    ConfusionGraph, EllResult,
};
pub use protocol::{run_protocol, ProtocolRun, ReceiverTrace, Transcript};
pub use tournament::TournamentComposeCode;

/// A fixed-length bit string, written most significant bit first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BitString(pub Vec<bool>);

impl BitString {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn slice(&self, start: usize, len: usize) -> BitString {
        BitString(self.0[start..start + len].to_vec())
    }

    pub fn concat(parts: &[BitString]) -> BitString {
        BitString(parts.iter().flat_map(|p| p.0.iter().copied()).collect())
    }

    /// The integer with these bits, big-endian.
    pub fn to_biguint(&self) -> BigUint {
        let mut v = BigUint::default();
        for &b in &self.0 {
            v <<= 1u32;
            if b {
                v += 1u32;
            }
        }
        v
    }

    /// `value` as exactly `len` bits; `None` if it does not fit.
    pub fn from_biguint(value: &BigUint, len: usize) -> Option<BitString> {
        if value.bits() as usize > len {
            return None;
        }
        Some(BitString((0..len).map(|i| value.bit((len - 1 - i) as u64)).collect()))
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::InvalidArgument(format!("`{s}` is not a bit string"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(BitString)
    }
}

impl Serialize for BitString {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BitString {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A broadcast scheme for `n` receivers where receiver `i` wants bit `i`.
pub trait IndexCode {
    fn n(&self) -> usize;

    fn length_bits(&self) -> usize;

    /// Bits receiver `i` uses as side information, in the order `decode`
    /// expects their values.
    fn side_info(&self, i: usize) -> Vec<usize>;

    fn encode(&self, x: &[bool]) -> Result<BitString>;

    fn decode(&self, i: usize, codeword: &BitString, side: &[bool]) -> Result<bool>;
}

pub(crate) fn check_input(n: usize, x: &[bool]) -> Result<()> {
    if x.len() != n {
        return Err(Error::Dimension(format!("input has {} bits, code expects {n}", x.len())));
    }
    Ok(())
}

pub(crate) fn check_decode_args(code: &dyn IndexCode, i: usize, codeword: &BitString, side: &[bool]) -> Result<()> {
    if i >= code.n() {
        return Err(Error::InvalidArgument(format!("receiver {i} out of range")));
    }
    if codeword.len() != code.length_bits() {
        return Err(Error::Decode(format!(
            "codeword has {} bits, expected {}",
            codeword.len(),
            code.length_bits()
        )));
    }
    let want = code.side_info(i).len();
    if side.len() != want {
        return Err(Error::Decode(format!("receiver {i} needs {want} side bits, got {}", side.len())));
    }
    Ok(())
}

/// Bits needed for `rank` symbols over a field of order `q`: the bit length
/// of `q^rank - 1`.
pub fn packed_length(q: u32, rank: usize) -> usize {
    let top = BigUint::from(q).pow(rank as u32);
    (top - 1u32).bits() as usize
}

/// The linear code of a representing matrix `A`: broadcast the inner
/// products of `x` with a row basis of `A`, decode from `(Ax)_i` and the
/// side bits.
#[derive(Clone, Debug)]
pub struct LinearIndexCode {
    rep: Representation,
    basis: FFMatrix,
    /// row `i` of `A` in coordinates over `basis`
    coords: Vec<Vec<FieldElement>>,
    side: Vec<Vec<usize>>,
    length_bits: usize,
}

impl LinearIndexCode {
    pub fn new(g: &Graph, m: &FFMatrix) -> Result<Self> {
        let rep = Representation::new(g.clone(), m.clone())?;
        let basis = m.row_basis();
        let solver = RowSpaceSolver::new(&basis)?;
        let coords = (0..m.rows())
            .map(|i| solver.coordinates(m.row(i)).expect("every row lies in the row space"))
            .collect();
        let side = (0..g.n()).map(|i| g.out_neighbors(i)).collect();
        let length_bits = packed_length(m.field().order(), basis.rows());
        Ok(LinearIndexCode {
            rep,
            basis,
            coords,
            side,
            length_bits,
        })
    }

    pub fn field(&self) -> &FieldSpec {
        self.rep.field()
    }

    pub fn matrix(&self) -> &FFMatrix {
        self.rep.matrix()
    }

    pub fn graph(&self) -> &Graph {
        self.rep.graph()
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    /// Basis inner products `u_k . x`.
    pub fn symbols(&self, x: &[bool]) -> Result<Vec<FieldElement>> {
        check_input(self.n(), x)?;
        let xv: Vec<FieldElement> = x.iter().map(|&b| FieldElement(b as u32)).collect();
        self.basis.mat_vec(&xv)
    }

    fn pack(&self, symbols: &[FieldElement]) -> BitString {
        let q = self.field().order();
        let mut v = BigUint::default();
        for s in symbols {
            v *= q;
            v += s.0;
        }
        BitString::from_biguint(&v, self.length_bits).expect("packed value fits")
    }

    fn unpack(&self, codeword: &BitString) -> Result<Vec<FieldElement>> {
        let q = self.field().order();
        let mut v = codeword.to_biguint();
        let mut out = vec![FieldElement::ZERO; self.rank()];
        for slot in out.iter_mut().rev() {
            let digit = &v % q;
            *slot = FieldElement(digit.iter_u32_digits().next().unwrap_or(0));
            v /= q;
        }
        if v != BigUint::default() {
            return Err(Error::Decode("codeword exceeds the symbol range".into()));
        }
        Ok(out)
    }
}

impl IndexCode for LinearIndexCode {
    fn n(&self) -> usize {
        self.rep.graph().n()
    }

    fn length_bits(&self) -> usize {
        self.length_bits
    }

    fn side_info(&self, i: usize) -> Vec<usize> {
        self.side[i].clone()
    }

    fn encode(&self, x: &[bool]) -> Result<BitString> {
        Ok(self.pack(&self.symbols(x)?))
    }

    fn decode(&self, i: usize, codeword: &BitString, side: &[bool]) -> Result<bool> {
        check_decode_args(self, i, codeword, side)?;
        let f = self.field();
        let symbols = self.unpack(codeword)?;
        let a = self.matrix();
        let mut acc = f.dot(&self.coords[i], &symbols);
        for (&j, &b) in self.side[i].iter().zip(side) {
            if b {
                acc = f.sub(acc, a.get(i, j));
            }
        }
        let xi = f.mul(f.inv_nonzero(a.get(i, i)), acc);
        match xi.0 {
            0 => Ok(false),
            1 => Ok(true),
            v => Err(Error::Decode(format!("receiver {i} recovered non-binary symbol {v}"))),
        }
    }
}

pub fn code_from_matrix(g: &Graph, m: &FFMatrix) -> Result<LinearIndexCode> {
    LinearIndexCode::new(g, m)
}

/// All `2^n` words of length `n`, bit `j` of the counter as `x_j`.
pub fn all_words(n: usize) -> impl Iterator<Item = Vec<bool>> {
    (0u64..1 << n).map(move |w| (0..n).map(|j| w >> j & 1 == 1).collect())
}

/// Checks every receiver on every word (or the given words).
pub fn verify_code_on<I>(code: &dyn IndexCode, words: I) -> Result<usize>
where
    I: IntoIterator<Item = Vec<bool>>,
{
    let mut checked = 0;
    let sides: Vec<Vec<usize>> = (0..code.n()).map(|i| code.side_info(i)).collect();
    for x in words {
        let c = code.encode(&x)?;
        for (i, s) in sides.iter().enumerate() {
            let side: Vec<bool> = s.iter().map(|&j| x[j]).collect();
            let got = code.decode(i, &c, &side)?;
            if got != x[i] {
                return Err(Error::ProtocolFailure {
                    receiver: i,
                    got,
                    expected: x[i],
                });
            }
        }
        checked += 1;
    }
    Ok(checked)
}
