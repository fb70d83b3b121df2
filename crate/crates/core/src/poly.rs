//! Univariate polynomials over F_p as coefficient lists, lowest degree first.

use crate::error::{Error, Result};
use crate::fplinalg::{inv, mul, sub};

/// Largest degree accepted by [`is_irreducible`].
pub const MAX_IRREDUCIBILITY_DEGREE: usize = 8;

/// Drops trailing zero coefficients (after reducing mod `p`).
pub fn normalize(f: &[u32], p: u32) -> Vec<u32> {
    let mut g: Vec<u32> = f.iter().map(|c| c % p).collect();
    while g.last() == Some(&0) {
        g.pop();
    }
    g
}

pub fn degree(f: &[u32]) -> Option<usize> {
    f.iter().rposition(|&c| c != 0)
}

pub fn is_monic(f: &[u32], p: u32) -> bool {
    let g = normalize(f, p);
    g.len() >= 2 && *g.last().unwrap() == 1
}

/// Remainder of `f` modulo a nonzero `g`.
pub fn rem(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    let g = normalize(g, p);
    let dg = g.len().checked_sub(1).expect("division by zero polynomial");
    let lead_inv = inv(g[dg], p);
    let mut r = normalize(f, p);
    while r.len() > dg {
        let dr = r.len() - 1;
        let q = mul(r[dr], lead_inv, p);
        let shift = dr - dg;
        for (i, &gc) in g.iter().enumerate() {
            r[shift + i] = sub(r[shift + i], mul(q, gc, p), p);
        }
        r = normalize(&r, p);
    }
    r
}

/// Exhaustive search for a monic factor of degree `1..=deg/2`.
pub fn is_irreducible(f: &[u32], p: u32) -> Result<bool> {
    let f = normalize(f, p);
    if !is_monic(&f, p) {
        return Err(Error::NotMonic);
    }
    let n = f.len() - 1;
    if n > MAX_IRREDUCIBILITY_DEGREE {
        return Err(Error::Unsupported(format!(
            "irreducibility test limited to degree {MAX_IRREDUCIBILITY_DEGREE}, got {n}"
        )));
    }
    for k in 1..=n / 2 {
        let count = (p as u64).pow(k as u32);
        for t in 0..count {
            let mut g = vec![0u32; k + 1];
            let mut x = t;
            for c in g.iter_mut().take(k) {
                *c = (x % p as u64) as u32;
                x /= p as u64;
            }
            g[k] = 1;
            if rem(&f, &g, p).is_empty() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn remainder() {
        // x^3 mod (x^2 + x + 1) over F_2 = 1
        assert_eq!(rem(&[0, 0, 0, 1], &[1, 1, 1], 2), vec![1]);
        assert_eq!(rem(&[1, 2], &[0, 0, 1], 3), vec![1, 2]);
    }

    #[test]
    fn irreducibility() {
        assert!(is_irreducible(&[1, 1, 1], 2).unwrap());
        assert!(!is_irreducible(&[0, 0, 1], 2).unwrap());
        assert!(!is_irreducible(&[1, 0, 1], 2).unwrap()); // (x+1)^2
        assert!(is_irreducible(&[1, 1, 0, 1], 2).unwrap());
        assert!(!is_irreducible(&[1, 0, 0, 0, 1], 2).unwrap()); // (x+1)^4
        assert!(!is_irreducible(&[1, 0, 1, 0, 1], 2).unwrap()); // (x^2+x+1)^2
        assert!(is_irreducible(&[1, 0, 1], 3).unwrap());
        assert_eq!(is_irreducible(&[1, 1, 2], 3), Err(Error::NotMonic));
        assert!(is_irreducible(&[1; 10], 2).is_err());
    }
}
