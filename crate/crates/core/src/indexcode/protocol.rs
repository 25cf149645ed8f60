//! One broadcast round: the sender encodes, every receiver decodes from the
//! codeword and its own side bits.

use serde::{Deserialize, Serialize};

use super::{BitString, IndexCode};
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReceiverTrace {
    pub receiver: usize,
    /// `(bit index, value)` pairs handed to the decoder
    pub side: Vec<(usize, bool)>,
    pub output: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub codeword: BitString,
    pub bits_sent: usize,
    pub receivers: Vec<ReceiverTrace>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProtocolRun {
    pub outputs: Vec<bool>,
    pub transcript: Option<Transcript>,
}

/// Runs `code` on `x` over side-information graph `g`. Fails if the code
/// reads a bit the receiver does not hold or if any receiver is wrong.
pub fn run_protocol(code: &dyn IndexCode, g: &Graph, x: &[bool], trace: bool) -> Result<ProtocolRun> {
    if code.n() != g.n() || x.len() != g.n() {
        return Err(Error::Dimension(format!(
            "code for {} receivers, graph on {}, input of {} bits",
            code.n(),
            g.n(),
            x.len()
        )));
    }
    let codeword = code.encode(x)?;
    let mut outputs = Vec::with_capacity(g.n());
    let mut receivers = Vec::new();
    for i in 0..g.n() {
        let idx = code.side_info(i);
        if let Some(&j) = idx.iter().find(|&&j| !g.has_edge(i, j)) {
            return Err(Error::InvalidArgument(format!("receiver {i} does not know bit {j}")));
        }
        let side: Vec<bool> = idx.iter().map(|&j| x[j]).collect();
        let out = code.decode(i, &codeword, &side)?;
        if out != x[i] {
            return Err(Error::ProtocolFailure {
                receiver: i,
                got: out,
                expected: x[i],
            });
        }
        if trace {
            receivers.push(ReceiverTrace {
                receiver: i,
                side: idx.into_iter().zip(side).collect(),
                output: out,
            });
        }
        outputs.push(out);
    }
    let transcript = trace.then(|| Transcript {
        bits_sent: codeword.len(),
        codeword,
        receivers,
    });
    Ok(ProtocolRun { outputs, transcript })
}
