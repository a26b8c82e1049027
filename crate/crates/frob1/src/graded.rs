//! Degrees, exact rationals, permutations, and the Koszul sign rule.
//!
//! Everything downstream multiplies signs produced here into rational
//! coefficients, so signs are `i64` values in `{-1, +1}`, never booleans.

use crate::{Error, Result};
use num_bigint::BigInt;

/// Cohomological degree. Differentials raise it by one.
pub type Degree = i64;

/// Exact rational coefficient, always in lowest terms with positive
/// denominator (maintained by `num_rational`).
pub type Rat = num_rational::BigRational;

/// `num / den` as a [`Rat`].
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// The integer `n` as a [`Rat`].
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// A bijection of `{0, .., k-1}`, stored by images: slot `i` is sent to
/// `images[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(size: usize) -> Self {
        Permutation {
            images: (0..size).collect(),
        }
    }

    /// Builds a permutation from its image list, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &im in &images {
            if im >= images.len() || seen[im] {
                return Err(Error::Argument(format!(
                    "image list {images:?} is not a bijection"
                )));
            }
            seen[im] = true;
        }
        Ok(Permutation { images })
    }

    /// The transposition of slots `i` and `j` in `S_size`.
    pub fn transposition(size: usize, i: usize, j: usize) -> Self {
        let mut images: Vec<usize> = (0..size).collect();
        images.swap(i, j);
        Permutation { images }
    }

    /// The cycle sending slot `i` to `i + shift (mod size)`.
    pub fn rotation(size: usize, shift: usize) -> Self {
        Permutation {
            images: (0..size).map(|i| (i + shift) % size).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, slot: usize) -> usize {
        self.images[slot]
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.images.len()];
        for (i, &im) in self.images.iter().enumerate() {
            images[im] = i;
        }
        Permutation { images }
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        if self.size() != other.size() {
            return Err(Error::Argument(format!(
                "cannot compose permutations of sizes {} and {}",
                self.size(),
                other.size()
            )));
        }
        Ok(Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        })
    }

    /// Rearranges a tuple: the item at slot `i` lands at slot `image(i)`.
    pub fn apply_slice<T: Clone>(&self, items: &[T]) -> Result<Vec<T>> {
        if items.len() != self.size() {
            return Err(Error::Argument(format!(
                "permutation of size {} applied to {} items",
                self.size(),
                items.len()
            )));
        }
        let mut out = items.to_vec();
        for (i, &im) in self.images.iter().enumerate() {
            out[im] = items[i].clone();
        }
        Ok(out)
    }

    /// The sign character: `(-1)^(number of inversions)`.
    pub fn sign(&self) -> i64 {
        let mut sign = 1i64;
        for i in 0..self.images.len() {
            for j in (i + 1)..self.images.len() {
                if self.images[i] > self.images[j] {
                    sign = -sign;
                }
            }
        }
        sign
    }

    /// All of `S_size`, for exhaustive small sweeps.
    pub fn all(size: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut images: Vec<usize> = (0..size).collect();
        permute_rec(&mut images, 0, &mut out);
        out
    }
}

fn permute_rec(images: &mut Vec<usize>, k: usize, out: &mut Vec<Permutation>) {
    if k == images.len() {
        out.push(Permutation {
            images: images.clone(),
        });
        return;
    }
    for i in k..images.len() {
        images.swap(k, i);
        permute_rec(images, k + 1, out);
        images.swap(k, i);
    }
}

/// The sign accumulated when homogeneous tensor factors of the given
/// degrees are rearranged by `perm`: the product of `(-1)^(d_i * d_j)`
/// over inverted pairs, i.e. `-1` for every crossing of two odd factors.
pub fn koszul_sign(perm: &Permutation, degrees: &[Degree]) -> Result<i64> {
    if perm.size() != degrees.len() {
        return Err(Error::Argument(format!(
            "permutation of size {} against {} degrees",
            perm.size(),
            degrees.len()
        )));
    }
    let mut sign = 1i64;
    for i in 0..degrees.len() {
        for j in (i + 1)..degrees.len() {
            if perm.image(i) > perm.image(j) && degrees[i] % 2 != 0 && degrees[j] % 2 != 0 {
                sign = -sign;
            }
        }
    }
    Ok(sign)
}

/// Koszul sign of the permutation that rearranges a tagged sequence into
/// another order. `from` and `to` hold the same distinct tags; the returned
/// sign moves factor `from[i]` (of degree `degrees[i]`) to the slot where
/// its tag sits in `to`.
pub(crate) fn reorder_sign<T: PartialEq + std::fmt::Debug>(
    from: &[T],
    degrees: &[Degree],
    to: &[T],
) -> Result<i64> {
    if from.len() != to.len() || from.len() != degrees.len() {
        return Err(Error::Argument(
            "reorder_sign: mismatched sequence lengths".into(),
        ));
    }
    let mut images = Vec::with_capacity(from.len());
    for item in from {
        match to.iter().position(|t| t == item) {
            Some(pos) => images.push(pos),
            None => {
                return Err(Error::Argument(format!(
                    "reorder_sign: tag {item:?} missing from target order"
                )))
            }
        }
    }
    koszul_sign(&Permutation::from_images(images)?, degrees)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_plus_one() {
        let p = Permutation::identity(3);
        assert_eq!(koszul_sign(&p, &[1, 1, 0]).unwrap(), 1);
    }

    #[test]
    fn swapping_two_odd_factors_is_minus_one() {
        let p = Permutation::transposition(2, 0, 1);
        assert_eq!(koszul_sign(&p, &[1, 1]).unwrap(), -1);
        assert_eq!(koszul_sign(&p, &[1, 0]).unwrap(), 1);
        assert_eq!(koszul_sign(&p, &[0, 0]).unwrap(), 1);
    }

    // Oracle: decompose the 3-cycle (v1,v2,v3) -> (v2,v3,v1) into adjacent
    // transpositions and multiply the pairwise braiding signs.
    #[test]
    fn three_cycle_oracle() {
        // (v1,v2,v3) -> (v2,v1,v3) costs (-1)^(d1 d2), then
        // (v2,v1,v3) -> (v2,v3,v1) costs (-1)^(d1 d3).
        let degrees = [1i64, 1, 0];
        let expected = {
            let s1 = if degrees[0] % 2 != 0 && degrees[1] % 2 != 0 { -1 } else { 1 };
            let s2 = if degrees[0] % 2 != 0 && degrees[2] % 2 != 0 { -1 } else { 1 };
            s1 * s2
        };
        assert_eq!(expected, -1);
        // v1 ends in slot 2, v2 in slot 0, v3 in slot 1.
        let p = Permutation::from_images(vec![2, 0, 1]).unwrap();
        assert_eq!(koszul_sign(&p, &degrees).unwrap(), expected);
    }

    #[test]
    fn at_most_one_odd_degree_gives_plus_one() {
        for p in Permutation::all(4) {
            assert_eq!(koszul_sign(&p, &[0, 0, 1, 0]).unwrap(), 1);
            assert_eq!(koszul_sign(&p, &[0, 0, 0, 0]).unwrap(), 1);
        }
    }

    // koszul_sign(σ∘τ, d) == koszul_sign(σ, τ(d)) * koszul_sign(τ, d),
    // exhaustive on up to 5 slots with degrees in {0,1}.
    #[test]
    fn multiplicative_cocycle_exhaustive() {
        for size in 1..=5usize {
            let perms = Permutation::all(size);
            for mask in 0..(1u32 << size) {
                let degrees: Vec<Degree> =
                    (0..size).map(|i| ((mask >> i) & 1) as i64).collect();
                for sigma in &perms {
                    for tau in &perms {
                        let lhs =
                            koszul_sign(&sigma.compose(tau).unwrap(), &degrees).unwrap();
                        let tau_d = tau.apply_slice(&degrees).unwrap();
                        let rhs = koszul_sign(sigma, &tau_d).unwrap()
                            * koszul_sign(tau, &degrees).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn mismatched_lengths_error() {
        let p = Permutation::identity(2);
        assert!(koszul_sign(&p, &[0, 1, 0]).is_err());
    }

    #[test]
    fn bad_image_list_rejected() {
        assert!(Permutation::from_images(vec![0, 0]).is_err());
        assert!(Permutation::from_images(vec![0, 2]).is_err());
    }
}
