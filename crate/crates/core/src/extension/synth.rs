//! Synthesis of an extension with prescribed Livsic and characteristic
//! functions.

use nalgebra::ComplexField;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::inner::{divides, pseudo_hyperbolic, CharacteristicFn, ScalarInner};
use crate::numeric::{embed, identity, CMatrix};
use crate::operator::{b, canonical_extension, deficiency_data, PartialIsometrySystem};
use crate::scalar::{imag_unit, re, Real};

use super::data::{ext_char, ExtensionData};

/// Result of [`synthesize_extension`].
#[derive(Debug, Clone)]
pub struct Synthesis<T: Real> {
    /// The extension; its base is the model of Θ on C^{deg θ}.
    pub extension: ExtensionData<T>,
    /// The model `V_Φ` on C^{deg φ}, of which `extension.u()` is a canonical
    /// extension.
    pub model: PartialIsometrySystem<T>,
    /// Isometric embedding C^{deg θ} → C^{deg φ} of the Θ-model (first
    /// coordinates).
    pub embedding: CMatrix<T>,
}

/// Compressed shift on the model space of the disk Blaschke product with
/// zeros `alpha`, in the Takenaka–Malmquist orthonormal basis:
/// `S_jj = α_j`, `S_jk = √(1−|α_j|²)√(1−|α_k|²)·Π_{k<l<j}(−ᾱ_l)` for `j > k`,
/// zero above the diagonal. Leading blocks are the compressed shifts of the
/// leading sub-products.
pub fn tm_compressed_shift<T: Real>(alpha: &[Complex<T>]) -> CMatrix<T> {
    let m = alpha.len();
    let mut s = CMatrix::zeros(m, m);
    let d: Vec<T> = alpha
        .iter()
        .map(|a| (T::one() - a.modulus_squared()).max(T::zero()).sqrt())
        .collect();
    for j in 0..m {
        s[(j, j)] = alpha[j];
        let mut prod = Complex::new(T::one(), T::zero());
        for k in (0..j).rev() {
            s[(j, k)] = prod * re(d[j] * d[k]);
            prod *= -alpha[k].conj();
        }
    }
    s
}

/// Builds an extension `A` of a model of `B` with `Θ_B = theta` (up to a
/// unimodular constant) and `Φ[A;B] = phi`.
///
/// The disk images `b(zero)` are ordered as: the zero at `i` (origin) first,
/// the remaining zeros of `theta`, then the zeros of `phi` not matched by
/// `theta`. The compressed shift in the Takenaka–Malmquist basis for this
/// ordering is the Cayley partial isometry `V_Φ` of the model of Φ, and its
/// leading `deg θ` block is that of Θ. The canonical extension of `V_Φ` with
/// scalar parameter `u` is an extension of the leading block; `u` is chosen
/// so the constant of Φ[A;B] equals that of `phi`.
pub fn synthesize_extension<T: Real>(
    theta: &ScalarInner<T>,
    phi: &ScalarInner<T>,
    tol: T,
) -> Result<Synthesis<T>> {
    let i = imag_unit::<T>();
    let zero_tol = T::lit(1e-6);
    let at_i = |f: &ScalarInner<T>| {
        f.zeros()
            .iter()
            .position(|z| (*z - i).modulus() <= zero_tol)
    };
    let (Some(ti), Some(_)) = (at_i(theta), at_i(phi)) else {
        return Err(Error::MissingZeroAtI);
    };
    if theta
        .zeros()
        .iter()
        .chain(phi.zeros())
        .any(|z| z.im <= T::zero())
    {
        return Err(Error::InvalidInput(
            "zeros must lie in the upper half-plane".into(),
        ));
    }
    if !divides(theta, phi, zero_tol) {
        return Err(Error::NotDivisible);
    }
    // Zeros of phi left after removing a matched copy of each zero of theta.
    let mut used = vec![false; phi.degree()];
    for &a in theta.zeros() {
        let best = phi
            .zeros()
            .iter()
            .enumerate()
            .filter(|(k, _)| !used[*k])
            .map(|(k, &c)| (k, pseudo_hyperbolic(a, c)))
            .min_by(|x, y| x.1.partial_cmp(&y.1).unwrap_or(std::cmp::Ordering::Equal));
        match best {
            Some((k, _)) => used[k] = true,
            None => return Err(Error::NotDivisible),
        }
    }
    let mut alpha = vec![Complex::new(T::zero(), T::zero())];
    for (k, &a) in theta.zeros().iter().enumerate() {
        if k != ti {
            alpha.push(b(a)?);
        }
    }
    for (k, &c) in phi.zeros().iter().enumerate() {
        if !used[k] {
            alpha.push(b(c)?);
        }
    }
    let (d, m) = (theta.degree(), phi.degree());
    let s = tm_compressed_shift(&alpha);
    let model = deficiency_data(&s, tol)?;
    let base = deficiency_data(&s.view((0, 0), (d, d)).into_owned(), tol)?;
    if model.index() != 1 || base.index() != 1 {
        return Err(Error::Recovery(
            "model is not a partial isometry of index (1,1)".into(),
        ));
    }

    let build = |u: Complex<T>| -> Result<(ExtensionData<T>, Complex<T>)> {
        let param = CMatrix::from_element(1, 1, u);
        let ext = ExtensionData::new(canonical_extension(&model, &param)?, base.clone(), tol)?;
        let c = match ext_char(&ext)? {
            CharacteristicFn::Scalar(f) => f.constant(),
            CharacteristicFn::Matrix(_) => {
                return Err(Error::Recovery("unexpected matrix Φ".into()))
            }
        };
        Ok((ext, c))
    };
    let (_, c1) = build(Complex::new(T::one(), T::zero()))?;
    // Φ scales by conj(u): pick u with c1·conj(u) = constant(phi).
    let u = c1 * phi.constant().conj();
    let (extension, _) = build(u / re(u.modulus()))?;
    let embedding = embed(&identity::<T>(d), m, d);
    Ok(Synthesis {
        extension,
        model,
        embedding,
    })
}
