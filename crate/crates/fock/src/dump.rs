//! Raw binary dump of a density matrix for debugging.
//!
//! Layout, all little-endian: `dim: u64`, `modes: u64`, `tail_mass: f64`, then
//! the entries row-major as `(re, im)` pairs of `f64`. Not a stable format.

use std::io::{Read, Write};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::{FockDensityMatrix, FockError, Result};

pub fn write_binary<W: Write>(r: &FockDensityMatrix, mut w: W) -> Result<()> {
    w.write_all(&(r.dim as u64).to_le_bytes())?;
    w.write_all(&(r.modes as u64).to_le_bytes())?;
    w.write_all(&r.tail_mass.to_le_bytes())?;
    let n = r.size();
    for i in 0..n {
        for j in 0..n {
            let z = r.entries[(i, j)];
            w.write_all(&z.re.to_le_bytes())?;
            w.write_all(&z.im.to_le_bytes())?;
        }
    }
    Ok(())
}

fn read_word<R: Read>(r: &mut R) -> Result<[u8; 8]> {
    let mut buf = [0u8; 8];
    r.read_exact(&mut buf)?;
    Ok(buf)
}

pub fn read_binary<R: Read>(mut r: R) -> Result<FockDensityMatrix> {
    let dim = u64::from_le_bytes(read_word(&mut r)?) as usize;
    let modes = u64::from_le_bytes(read_word(&mut r)?) as usize;
    if !(modes == 1 || modes == 2) || dim == 0 {
        return Err(FockError::Format(format!("dim {dim}, modes {modes}")));
    }
    let tail_mass = f64::from_le_bytes(read_word(&mut r)?);
    let n = dim.pow(modes as u32);
    let mut data = Vec::with_capacity(n * n);
    for _ in 0..n * n {
        let re = f64::from_le_bytes(read_word(&mut r)?);
        let im = f64::from_le_bytes(read_word(&mut r)?);
        data.push(Complex64::new(re, im));
    }
    Ok(FockDensityMatrix {
        dim,
        modes,
        entries: DMatrix::from_row_slice(n, n, &data),
        tail_mass,
    })
}
