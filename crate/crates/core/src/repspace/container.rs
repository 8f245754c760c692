//! Self-describing containers for complex matrices and vectors.
//!
//! Text form: a `dims:` header line listing tensor dimensions (for example
//! `dims: 4 4 2`), a `shape: rows cols` line, then one `re,im` pair per
//! line in column-major order. Floats use the shortest representation that
//! parses back to the same bits.
//!
//! Binary form: magic `HQPR`, format version (u32), number of dims (u32),
//! the dims (u64 each), rows and cols (u64), then `re`, `im` as
//! little-endian f64 pairs in column-major order.

use std::io::{Read, Write};

use crate::linalg::{CMatrix, C64};
use crate::{Error, Result};

use super::operator::HybridOperator;
use super::vector::{HybridDims, HybridVector};

const MAGIC: &[u8; 4] = b"HQPR";
const VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq)]
pub struct Container {
    pub dims: Vec<usize>,
    pub data: CMatrix,
}

impl Container {
    pub fn new(dims: Vec<usize>, data: CMatrix) -> Self {
        Container { dims, data }
    }

    pub fn from_operator(op: &HybridOperator) -> Self {
        let d = op.dims();
        Container::new(vec![d.n_q, d.n_p, 2], op.to_dense())
    }

    pub fn from_vector(v: &HybridVector) -> Self {
        let d = v.dims();
        let n = d.total();
        Container::new(vec![d.n_q, d.n_p, 2], CMatrix::from_column_slice(n, 1, v.amplitudes().as_slice()))
    }

    fn hybrid_dims(&self) -> Result<HybridDims> {
        match self.dims.as_slice() {
            [nq, np, 2] => Ok(HybridDims::new(*nq, *np)),
            other => Err(Error::Container(format!("expected dims `Nq Np 2`, got {other:?}"))),
        }
    }

    pub fn to_operator(&self) -> Result<HybridOperator> {
        HybridOperator::from_dense(self.hybrid_dims()?, self.data.clone())
    }

    pub fn to_vector(&self) -> Result<HybridVector> {
        if self.data.ncols() != 1 {
            return Err(Error::Container(format!("expected one column, got {}", self.data.ncols())));
        }
        HybridVector::new(self.hybrid_dims()?, self.data.column(0).into_owned())
    }

    /// A single-factor column vector (`dims: N`).
    pub fn to_factor_vector(&self) -> Result<crate::linalg::CVector> {
        if self.data.ncols() != 1 {
            return Err(Error::Container(format!("expected one column, got {}", self.data.ncols())));
        }
        Ok(self.data.column(0).into_owned())
    }

    pub fn write_text<W: Write>(&self, mut w: W) -> Result<()> {
        let dims: Vec<String> = self.dims.iter().map(usize::to_string).collect();
        writeln!(w, "dims: {}", dims.join(" "))?;
        writeln!(w, "shape: {} {}", self.data.nrows(), self.data.ncols())?;
        for z in self.data.iter() {
            writeln!(w, "{},{}", z.re, z.im)?;
        }
        Ok(())
    }

    pub fn read_text<R: Read>(mut r: R) -> Result<Self> {
        let mut text = String::new();
        r.read_to_string(&mut text)?;
        let mut lines = text.lines().enumerate();
        let header = |lines: &mut std::iter::Enumerate<std::str::Lines<'_>>, key: &str| -> Result<Vec<usize>> {
            let (n, line) = lines
                .next()
                .ok_or_else(|| Error::Container(format!("missing `{key}` header")))?;
            let rest = line
                .strip_prefix(key)
                .ok_or_else(|| Error::Container(format!("line {}: expected `{key}`", n + 1)))?;
            rest.split_whitespace()
                .map(|t| t.parse().map_err(|_| Error::Container(format!("line {}: bad integer `{t}`", n + 1))))
                .collect()
        };
        let dims = header(&mut lines, "dims:")?;
        let shape = header(&mut lines, "shape:")?;
        let [rows, cols] = shape[..] else {
            return Err(Error::Container("shape needs two integers".into()));
        };
        let mut values = Vec::with_capacity(rows * cols);
        for (n, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let (re, im) = line
                .split_once(',')
                .ok_or_else(|| Error::Container(format!("line {}: expected `re,im`", n + 1)))?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::Container(format!("line {}: bad number `{s}`", n + 1)))
            };
            values.push(C64::new(parse(re)?, parse(im)?));
        }
        if values.len() != rows * cols {
            return Err(Error::Container(format!("expected {} entries, found {}", rows * cols, values.len())));
        }
        Ok(Container::new(dims, CMatrix::from_column_slice(rows, cols, &values)))
    }

    pub fn write_binary<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(MAGIC)?;
        w.write_all(&VERSION.to_le_bytes())?;
        w.write_all(&(self.dims.len() as u32).to_le_bytes())?;
        for &d in &self.dims {
            w.write_all(&(d as u64).to_le_bytes())?;
        }
        w.write_all(&(self.data.nrows() as u64).to_le_bytes())?;
        w.write_all(&(self.data.ncols() as u64).to_le_bytes())?;
        for z in self.data.iter() {
            w.write_all(&z.re.to_le_bytes())?;
            w.write_all(&z.im.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn read_binary<R: Read>(mut r: R) -> Result<Self> {
        let mut magic = [0u8; 4];
        r.read_exact(&mut magic)?;
        if &magic != MAGIC {
            return Err(Error::Container("bad magic".into()));
        }
        let mut u32buf = [0u8; 4];
        let mut u64buf = [0u8; 8];
        r.read_exact(&mut u32buf)?;
        let version = u32::from_le_bytes(u32buf);
        if version != VERSION {
            return Err(Error::Container(format!("unsupported version {version}")));
        }
        r.read_exact(&mut u32buf)?;
        let ndims = u32::from_le_bytes(u32buf) as usize;
        let mut read_u64 = |r: &mut R| -> Result<usize> {
            r.read_exact(&mut u64buf)?;
            Ok(u64::from_le_bytes(u64buf) as usize)
        };
        let dims = (0..ndims).map(|_| read_u64(&mut r)).collect::<Result<Vec<_>>>()?;
        let rows = read_u64(&mut r)?;
        let cols = read_u64(&mut r)?;
        let mut values = Vec::with_capacity(rows * cols);
        let mut f = [0u8; 8];
        for _ in 0..rows * cols {
            r.read_exact(&mut f)?;
            let re = f64::from_le_bytes(f);
            r.read_exact(&mut f)?;
            let im = f64::from_le_bytes(f);
            values.push(C64::new(re, im));
        }
        Ok(Container::new(dims, CMatrix::from_column_slice(rows, cols, &values)))
    }
}
