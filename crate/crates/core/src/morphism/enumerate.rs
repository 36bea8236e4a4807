//! Brute-force enumeration of meadow homs between small finite meadows,
//! used to count hom-sets and to check uniqueness claims.

use super::hom::{check_lattice_map, hom_build, MeadowHom};
use crate::error::{Error, Result};
use crate::meadow::Meadow;
use crate::ring::{enumerate_ring_homs, RingHom};

/// Every meadow hom `src -> dst`: all lattice maps preserving order, meets,
/// top and bottom, times all ring homs per node, kept when the squares
/// commute.
pub fn enumerate_meadow_homs(src: &Meadow, dst: &Meadow) -> Result<Vec<MeadowHom>> {
    if !src.is_finite() || !dst.is_finite() {
        return Err(Error::InfiniteCarrier(
            "hom enumeration needs finite meadows".into(),
        ));
    }
    let (ns, nt) = (src.lattice().len(), dst.lattice().len());
    let mut out = Vec::new();
    let mut phi = vec![0usize; ns];
    loop {
        if check_lattice_map(src, dst, &phi).is_ok() {
            let choices = (0..ns)
                .map(|z| enumerate_ring_homs(src.ring_at(z), dst.ring_at(phi[z])))
                .collect::<Result<Vec<Vec<RingHom>>>>()?;
            if choices.iter().all(|c| !c.is_empty()) {
                let mut pick = vec![0usize; ns];
                loop {
                    let maps = pick
                        .iter()
                        .enumerate()
                        .map(|(z, &k)| choices[z][k].clone())
                        .collect();
                    if let Ok(f) = hom_build(src, dst, phi.clone(), maps) {
                        out.push(f);
                    }
                    if !advance(&mut pick, |z| choices[z].len()) {
                        break;
                    }
                }
            }
        }
        if !advance(&mut phi, |_| nt) {
            return Ok(out);
        }
    }
}

/// Odometer step with per-position radix; false once it wraps around.
fn advance(digits: &mut [usize], radix: impl Fn(usize) -> usize) -> bool {
    for pos in (0..digits.len()).rev() {
        digits[pos] += 1;
        if digits[pos] < radix(pos) {
            return true;
        }
        digits[pos] = 0;
    }
    false
}
