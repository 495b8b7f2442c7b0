//! CSV and JSON artifacts.
//!
//! Floats are written in their shortest round-trip decimal form, so a file
//! read back reproduces the in-memory values bit for bit.

use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::jump::FamilyRow;
use crate::tensor::ProfileRow;

pub const PROFILE_HEADER: [&str; 8] = ["x1", "nu", "omega", "U0", "U1", "J_residual", "T01", "T11"];
pub const NONBARO_HEADER: [&str; 9] = ["x1", "n", "omega", "U0", "U1", "J_residual", "T01", "T11", "s"];
pub const FAMILY_HEADER: [&str; 6] = ["m", "nu_minus", "nu_plus", "c", "q1", "q0"];

/// Shortest decimal string that parses back to `x`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

fn io_err(e: impl std::fmt::Display) -> Error {
    Error::Config(format!("i/o: {e}"))
}

fn write_rows<W: Write, const N: usize>(out: W, header: &[&str], rows: impl Iterator<Item = [f64; N]>) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header).map_err(io_err)?;
    for row in rows {
        w.write_record(row.iter().map(|&x| fmt_f64(x))).map_err(io_err)?;
    }
    w.flush().map_err(io_err)
}

fn profile_fields(r: &ProfileRow) -> [f64; 8] {
    [r.x1, r.nu, r.omega, r.u0, r.u1, r.j_residual, r.t01, r.t11]
}

/// Profile table; with `s_star` the ν column is labelled `n` and a constant
/// `s` column is appended.
pub fn write_profile_csv<W: Write>(out: W, rows: &[ProfileRow], s_star: Option<f64>) -> Result<()> {
    match s_star {
        None => write_rows(out, &PROFILE_HEADER, rows.iter().map(profile_fields)),
        Some(s) => write_rows(
            out,
            &NONBARO_HEADER,
            rows.iter().map(|r| {
                let [a, b, c, d, e, f, g, h] = profile_fields(r);
                [a, b, c, d, e, f, g, h, s]
            }),
        ),
    }
}

pub fn write_family_csv<W: Write>(out: W, rows: &[FamilyRow]) -> Result<()> {
    write_rows(out, &FAMILY_HEADER, rows.iter().map(|r| [r.m, r.nu_minus, r.nu_plus, r.c, r.q1, r.q0]))
}

/// Profile table read back, with its entropy column if present.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileTable {
    pub rows: Vec<ProfileRow>,
    pub s_star: Option<f64>,
}

pub fn read_profile_csv<R: Read>(input: R) -> Result<ProfileTable> {
    let mut rd = csv::Reader::from_reader(input);
    let header: Vec<String> = rd.headers().map_err(io_err)?.iter().map(str::to_owned).collect();
    let nonbaro = if header == PROFILE_HEADER {
        false
    } else if header == NONBARO_HEADER {
        true
    } else {
        return Err(Error::Config(format!("unexpected profile header {header:?}")));
    };
    let mut rows = Vec::new();
    let mut s_star = None;
    for (line, rec) in rd.records().enumerate() {
        let rec = rec.map_err(io_err)?;
        let v = rec
            .iter()
            .map(|t| t.trim().parse::<f64>().map_err(|e| Error::Config(format!("row {}: {t:?}: {e}", line + 1))))
            .collect::<Result<Vec<f64>>>()?;
        if nonbaro {
            match s_star {
                None => s_star = Some(v[8]),
                Some(s) if s != v[8] => {
                    return Err(Error::InvalidProfile(format!("entropy column not constant at row {}", line + 1)));
                }
                _ => {}
            }
        }
        rows.push(ProfileRow { x1: v[0], nu: v[1], omega: v[2], u0: v[3], u1: v[4], j_residual: v[5], t01: v[6], t11: v[7] });
    }
    Ok(ProfileTable { rows, s_star })
}

pub fn read_family_csv<R: Read>(input: R) -> Result<Vec<FamilyRow>> {
    let mut rd = csv::Reader::from_reader(input);
    let header: Vec<String> = rd.headers().map_err(io_err)?.iter().map(str::to_owned).collect();
    if header != FAMILY_HEADER {
        return Err(Error::Config(format!("unexpected family header {header:?}")));
    }
    rd.records()
        .map(|rec| {
            let rec = rec.map_err(io_err)?;
            let v = rec.iter().map(|t| t.parse::<f64>().map_err(io_err)).collect::<Result<Vec<f64>>>()?;
            Ok(FamilyRow { m: v[0], nu_minus: v[1], nu_plus: v[2], c: v[3], q1: v[4], q0: v[5] })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shortest_round_trip() {
        for x in [0.1, 1.0 / 3.0, 1e-300, -2.5e17, 0.0, 0.6339745962155611] {
            assert_eq!(fmt_f64(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(fmt_f64(0.25), "0.25");
    }

    #[test]
    fn profile_round_trip() {
        let rows = vec![
            ProfileRow { x1: -1.25, nu: 0.7, omega: 1.0 / 7.0, u0: 1.0, u1: 0.0, j_residual: 3e-17, t01: 0.0, t11: 0.2375 },
            ProfileRow { x1: 0.5, nu: 0.9, omega: 0.2, u0: 1.1, u1: 0.3, j_residual: -1e-16, t01: 0.1, t11: 0.23750000000000004 },
        ];
        for s in [None, Some(-0.5)] {
            let mut buf = Vec::new();
            write_profile_csv(&mut buf, &rows, s).unwrap();
            let back = read_profile_csv(buf.as_slice()).unwrap();
            assert_eq!(back.rows, rows);
            assert_eq!(back.s_star, s);
        }
        let mut buf = Vec::new();
        write_profile_csv(&mut buf, &rows[..1], None).unwrap();
        assert!(String::from_utf8(buf).unwrap().starts_with("x1,nu,omega,U0,U1,J_residual,T01,T11\n"));
        assert!(read_profile_csv("a,b\n1,2\n".as_bytes()).is_err());
    }

    #[test]
    fn family_round_trip() {
        let rows = vec![FamilyRow { m: 0.01, nu_minus: 0.63, nu_plus: 2.36, c: 1.25, q1: 0.2376, q0: 0.0125 }];
        let mut buf = Vec::new();
        write_family_csv(&mut buf, &rows).unwrap();
        assert!(buf.starts_with(b"m,nu_minus,nu_plus,c,q1,q0\n"));
        assert_eq!(read_family_csv(buf.as_slice()).unwrap(), rows);
    }
}
