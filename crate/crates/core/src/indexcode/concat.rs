//! Codes for a vertex partition, sent one after another.

use super::{check_decode_args, check_input, BitString, IndexCode};
use crate::error::{Error, Result};
use crate::graph::Graph;

pub struct ConcatCode {
    n: usize,
    parts: Vec<Part>,
    /// (part, local index) of every vertex
    place: Vec<(usize, usize)>,
}

struct Part {
    vertices: Vec<usize>,
    offset: usize,
    code: Box<dyn IndexCode + Send + Sync>,
}

impl std::fmt::Debug for ConcatCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ConcatCode")
            .field("n", &self.n)
            .field("parts", &self.parts.iter().map(|p| &p.vertices).collect::<Vec<_>>())
            .finish()
    }
}

/// Joins codes for the induced subgraphs on a partition of `g`'s vertices.
/// Each part code may only use side information that `g` grants.
pub fn concat_codes(g: &Graph, parts: Vec<(Vec<usize>, Box<dyn IndexCode + Send + Sync>)>) -> Result<ConcatCode> {
    let n = g.n();
    let mut place = vec![(usize::MAX, 0); n];
    for (pi, (vs, code)) in parts.iter().enumerate() {
        if code.n() != vs.len() {
            return Err(Error::Dimension(format!(
                "part {pi} has {} vertices but its code serves {}",
                vs.len(),
                code.n()
            )));
        }
        for (li, &v) in vs.iter().enumerate() {
            if v >= n || place[v].0 != usize::MAX {
                return Err(Error::NotPartition(format!("vertex {v} out of range or repeated")));
            }
            place[v] = (pi, li);
        }
    }
    if let Some(v) = place.iter().position(|p| p.0 == usize::MAX) {
        return Err(Error::NotPartition(format!("vertex {v} not covered")));
    }
    let mut offset = 0;
    let mut out = Vec::with_capacity(parts.len());
    for (vs, code) in parts {
        for (li, &v) in vs.iter().enumerate() {
            for j in code.side_info(li) {
                if !g.has_edge(v, vs[j]) {
                    return Err(Error::InvalidArgument(format!(
                        "part code lets vertex {v} use bit {} it does not know",
                        vs[j]
                    )));
                }
            }
        }
        let len = code.length_bits();
        out.push(Part {
            vertices: vs,
            offset,
            code,
        });
        offset += len;
    }
    Ok(ConcatCode { n, parts: out, place })
}

impl IndexCode for ConcatCode {
    fn n(&self) -> usize {
        self.n
    }

    fn length_bits(&self) -> usize {
        self.parts.iter().map(|p| p.code.length_bits()).sum()
    }

    fn side_info(&self, i: usize) -> Vec<usize> {
        let (pi, li) = self.place[i];
        let part = &self.parts[pi];
        part.code.side_info(li).into_iter().map(|j| part.vertices[j]).collect()
    }

    fn encode(&self, x: &[bool]) -> Result<BitString> {
        check_input(self.n, x)?;
        let words = self
            .parts
            .iter()
            .map(|p| {
                let local: Vec<bool> = p.vertices.iter().map(|&v| x[v]).collect();
                p.code.encode(&local)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BitString::concat(&words))
    }

    fn decode(&self, i: usize, codeword: &BitString, side: &[bool]) -> Result<bool> {
        check_decode_args(self, i, codeword, side)?;
        let (pi, li) = self.place[i];
        let part = &self.parts[pi];
        let segment = codeword.slice(part.offset, part.code.length_bits());
        part.code.decode(li, &segment, side)
    }
}
