use crate::arrangement::Multiarrangement;
use crate::error::{Error, Result};

/// `m(H₀) ≥ Σ_{L ≠ H₀} m(L)`.
pub fn is_heavy(a: &Multiarrangement, h0: usize) -> Result<bool> {
    a.check_index(h0)?;
    let m0 = a.mult(h0);
    Ok(m0 >= a.total_multiplicity() - m0)
}

/// `H₀` is heavy in every localization `A_X`, `X = H₀ ∩ H`, with `|A_X| ≥ 3`.
pub fn is_locally_heavy(a: &Multiarrangement, h0: usize) -> Result<bool> {
    a.check_index(h0)?;
    let m0 = a.mult(h0);
    Ok(a.restriction_flats(h0)?.iter().all(|x| {
        x.members().len() < 3
            || m0 >= x.members().iter().filter(|&&i| i != h0).map(|&i| a.mult(i)).sum::<u64>()
    }))
}

/// Locally heavy hyperplanes, heaviest first (ties by index).
pub fn locally_heavy_hyperplanes(a: &Multiarrangement) -> Vec<usize> {
    let mut out: Vec<usize> = (0..a.len())
        .filter(|&i| is_locally_heavy(a, i).expect("index in range"))
        .collect();
    out.sort_by_key(|&i| (std::cmp::Reverse(a.mult(i)), i));
    out
}

/// `|A_X| = 2` for every codim-2 flat `X ⊂ H`.
pub fn is_generic_hyperplane(a: &Multiarrangement, h: usize) -> Result<bool> {
    if !a.is_simple() {
        return Err(Error::NotSimple);
    }
    Ok(a.restriction_flats(h)?.iter().all(|x| x.members().len() == 2))
}
