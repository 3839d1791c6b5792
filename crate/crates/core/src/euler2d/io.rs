//! Field dumps: row-major CSV and a compact little-endian binary format.
//!
//! Binary layout: 8-byte magic `WLAB2D01`, `nx: u64`, `ny: u64`, `t: f64`,
//! then the `ρ`, `u`, `v`, `p` planes, each `nx·ny` `f64` values in
//! row-major order (`j·nx + i`).

use std::fmt::Write as _;
use std::io::{Read, Write};

use super::Field2D;
use crate::error::{IoError, Result, WenoError};
use crate::euler1d::gas::{EulerSystem, Gas, Primitive};

pub const MAGIC: &[u8; 8] = b"WLAB2D01";

pub fn fields_csv(field: &Field2D, gas: &Gas) -> String {
    let g = field.grid;
    let mut s = String::with_capacity(64 * g.len() + 16);
    s.push_str("x,y,rho,u,v,p\n");
    for j in 0..g.ny {
        for i in 0..g.nx {
            let w = gas.to_primitive(&field.data[g.at(i, j)]);
            let _ = writeln!(
                s,
                "{:.8e},{:.8e},{:.10e},{:.10e},{:.10e},{:.10e}",
                g.x(i),
                g.y(j),
                w.rho,
                w.u,
                w.v,
                w.p
            );
        }
    }
    s
}

pub fn write_binary(mut out: impl Write, field: &Field2D, gas: &Gas, t: f64) -> Result<()> {
    let g = field.grid;
    let prims = field.primitives(gas);
    let mut buf = Vec::with_capacity(32 + 32 * g.len());
    buf.extend_from_slice(MAGIC);
    buf.extend_from_slice(&(g.nx as u64).to_le_bytes());
    buf.extend_from_slice(&(g.ny as u64).to_le_bytes());
    buf.extend_from_slice(&t.to_le_bytes());
    let planes: [fn(&Primitive) -> f64; 4] = [|w| w.rho, |w| w.u, |w| w.v, |w| w.p];
    for plane in planes {
        for w in &prims {
            buf.extend_from_slice(&plane(w).to_le_bytes());
        }
    }
    out.write_all(&buf)?;
    Ok(())
}

/// Decoded binary dump.
#[derive(Debug, Clone, PartialEq)]
pub struct Dump {
    pub nx: usize,
    pub ny: usize,
    pub t: f64,
    pub rho: Vec<f64>,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    pub p: Vec<f64>,
}

fn corrupt(msg: impl Into<String>) -> WenoError {
    WenoError::Io(IoError(msg.into()))
}

pub fn read_binary(mut input: impl Read) -> Result<Dump> {
    let mut bytes = Vec::new();
    input.read_to_end(&mut bytes)?;
    if bytes.len() < 32 || &bytes[..8] != MAGIC {
        return Err(corrupt("not a field dump (bad magic)"));
    }
    let word = |k: usize| -> [u8; 8] { bytes[8 * k..8 * k + 8].try_into().unwrap() };
    let nx = u64::from_le_bytes(word(1)) as usize;
    let ny = u64::from_le_bytes(word(2)) as usize;
    let t = f64::from_le_bytes(word(3));
    let n = nx
        .checked_mul(ny)
        .filter(|n| bytes.len() == 32 + 32 * n)
        .ok_or_else(|| corrupt(format!("dump size does not match a {nx}×{ny} grid")))?;
    let plane = |k: usize| -> Vec<f64> { (0..n).map(|i| f64::from_le_bytes(word(4 + k * n + i))).collect() };
    Ok(Dump {
        nx,
        ny,
        t,
        rho: plane(0),
        u: plane(1),
        v: plane(2),
        p: plane(3),
    })
}
