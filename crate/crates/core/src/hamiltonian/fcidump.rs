//! FCIDUMP reader.
//!
//! Header: a Fortran namelist `&FCI NORB=…, … &END` (or terminated by `/`),
//! possibly spanning several lines. Body: `value i j k l` records in
//! chemists' notation `(ij|kl)`, expanded over the eightfold real symmetry.
//! `i j 0 0` is one-body, `0 0 0 0` is the core energy, `i 0 0 0` orbital
//! energies are ignored.

use std::path::Path;

use num_complex::Complex;

use super::TwoBodyIntegrals;
use crate::error::{FockError, Result};

fn perr(line: usize, msg: impl Into<String>) -> FockError {
    FockError::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_value(tok: &str, line: usize) -> Result<f64> {
    tok.replace(['D', 'd'], "E")
        .parse::<f64>()
        .map_err(|_| perr(line, format!("bad number `{tok}`")))
}

fn parse_index(tok: &str, norb: usize, line: usize) -> Result<usize> {
    let v: usize = tok
        .parse()
        .map_err(|_| perr(line, format!("bad orbital index `{tok}`")))?;
    if v > norb {
        return Err(perr(line, format!("orbital index {v} exceeds NORB={norb}")));
    }
    Ok(v)
}

/// Parse FCIDUMP text. Spin orbitals are indexed `1..NORB` directly.
pub fn parse_fcidump(text: &str) -> Result<TwoBodyIntegrals> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let mut header = String::new();
    let mut header_end = 0;
    let mut started = false;
    for (no, raw) in lines.by_ref() {
        let l = raw.trim();
        if !started {
            if l.is_empty() {
                continue;
            }
            if !l.to_ascii_uppercase().starts_with("&FCI") {
                return Err(perr(no, "expected `&FCI` namelist header"));
            }
            started = true;
        }
        header.push(' ');
        header.push_str(l);
        let upper = l.to_ascii_uppercase();
        if upper.contains("&END") || upper.ends_with('/') || upper == "/" {
            header_end = no;
            break;
        }
    }
    if header_end == 0 {
        return Err(perr(
            text.lines().count().max(1),
            "unterminated namelist header",
        ));
    }
    let upper = header.to_ascii_uppercase();
    let norb_pos = upper
        .find("NORB")
        .ok_or_else(|| perr(header_end, "namelist lacks NORB"))?;
    let after = upper[norb_pos + 4..].trim_start();
    let after = after
        .strip_prefix('=')
        .ok_or_else(|| perr(header_end, "expected `=` after NORB"))?;
    let digits: String = after
        .trim_start()
        .chars()
        .take_while(|c| c.is_ascii_digit())
        .collect();
    let norb: usize = digits
        .parse()
        .map_err(|_| perr(header_end, "NORB is not an integer"))?;

    let zero = Complex::new(0.0, 0.0);
    let mut t = vec![zero; norb * norb];
    let mut v = vec![zero; norb.pow(4)];
    let mut core = 0.0;
    let m = norb * norb;
    for (no, raw) in lines {
        let l = raw.trim();
        if l.is_empty() {
            continue;
        }
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != 5 {
            return Err(perr(no, format!("expected 5 fields, found {}", toks.len())));
        }
        let x = parse_value(toks[0], no)?;
        let ix: Vec<usize> = toks[1..]
            .iter()
            .map(|t| parse_index(t, norb, no))
            .collect::<Result<_>>()?;
        match (ix[0], ix[1], ix[2], ix[3]) {
            (0, 0, 0, 0) => core += x,
            (_, 0, 0, 0) => {}
            (i, j, 0, 0) if i > 0 && j > 0 => {
                t[(i - 1) * norb + (j - 1)] = Complex::new(x, 0.0);
                t[(j - 1) * norb + (i - 1)] = Complex::new(x, 0.0);
            }
            (i, j, k, l) if i > 0 && j > 0 && k > 0 && l > 0 => {
                let (i, j, k, l) = (i - 1, j - 1, k - 1, l - 1);
                for (p, q, r, s) in [
                    (i, j, k, l),
                    (j, i, k, l),
                    (i, j, l, k),
                    (j, i, l, k),
                    (k, l, i, j),
                    (l, k, i, j),
                    (k, l, j, i),
                    (l, k, j, i),
                ] {
                    // (pq|rs) multiplies c*_p c*_r c_s c_q, i.e. V_{pr;qs}.
                    v[(p * norb + r) * m + (q * norb + s)] = Complex::new(x, 0.0);
                }
            }
            _ => return Err(perr(no, "malformed index pattern")),
        }
    }
    TwoBodyIntegrals::new(norb, t, v, core).map_err(|e| match e {
        FockError::OrbitalCount { .. } => perr(header_end, e.to_string()),
        other => other,
    })
}

pub fn read_fcidump(path: &Path) -> Result<TwoBodyIntegrals> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| perr(0, format!("cannot read {}: {e}", path.display())))?;
    parse_fcidump(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    const PAIR: &str = "&FCI NORB=2,NELEC=2,MS2=0,\n ORBSYM=1,1,\n ISYM=1,\n&END\n\
        0.5 1 1 2 2\n-1.0 1 2 0 0\n0.25 1 1 0 0\n0.75 0 0 0 0\n-0.3 1 0 0 0\n";

    #[test]
    fn reads_header_one_and_two_body() {
        let ints = parse_fcidump(PAIR).unwrap();
        assert_eq!(ints.n(), 2);
        assert_eq!(ints.core(), 0.75);
        assert_eq!(ints.t_at(0, 1), Complex::new(-1.0, 0.0));
        assert_eq!(ints.t_at(1, 0), Complex::new(-1.0, 0.0));
        assert_eq!(ints.t_at(0, 0), Complex::new(0.25, 0.0));
        // (11|22) → V_{12;12} and V_{21;21}.
        assert_eq!(ints.v_at(0, 1, 0, 1), Complex::new(0.5, 0.0));
        assert_eq!(ints.v_at(1, 0, 1, 0), Complex::new(0.5, 0.0));
        assert_eq!(ints.v_at(0, 0, 1, 1), Complex::new(0.0, 0.0));
        assert!(ints.is_repulsive());
    }

    #[test]
    fn slash_terminator_and_fortran_exponents() {
        let text = "&FCI NORB=1 /\n1.0D-01 1 1 0 0\n";
        let ints = parse_fcidump(text).unwrap();
        assert!((ints.t_at(0, 0).re - 0.1).abs() < 1e-15);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("garbage\n", 1),
            ("&FCI NORB=2\n&END\n1.0 1 1 0\n", 3),
            ("&FCI NORB=2 &END\n0.1 1 3 0 0\n", 2),
            ("&FCI NORB=2 &END\n\nx 1 1 0 0\n", 3),
            ("&FCI NELEC=2 &END\n", 1),
        ];
        for (text, line) in cases {
            match parse_fcidump(text) {
                Err(FockError::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }
}
