use rand::Rng;

use crate::linalg::Matrix;
use crate::quiver::{
    direct_sum, hom_space, kernel, quotient_module, random_representation, ModuleMap, QuiverAlgebra, Representation,
};

use super::periodic::PeriodicComplex;

fn random_hom<R: Rng + ?Sized>(
    alg: &QuiverAlgebra,
    source: &Representation,
    target: &Representation,
    rng: &mut R,
) -> ModuleMap {
    let f = alg.field();
    let mut acc = ModuleMap::zero(source, target);
    for b in hom_space(alg, source, target) {
        acc = acc.add(&b.scale(&f.random(rng)));
    }
    acc
}

/// Random `m`-periodic complex with components of vertex dimension at most `max_dim`.
///
/// For `m >= 2` the differentials are built in order: `d^i` factors through the quotient by
/// `Im d^{i-1}`, and the closing `d^{m-1}` also lands in `Ker d^0`, so `d^2 = 0` holds by
/// construction. For `m = 1` the single component is `A + B` with `d = [[0, 0], [h, 0]]`.
pub fn random_complex<R: Rng + ?Sized>(alg: &QuiverAlgebra, period: usize, max_dim: usize, rng: &mut R) -> PeriodicComplex {
    if period == 1 {
        let a = random_representation(alg, max_dim.div_ceil(2), rng);
        let b = random_representation(alg, max_dim / 2, rng);
        let h = random_hom(alg, &a, &b, rng);
        let sum = direct_sum(alg, &[&a, &b]);
        let d = ModuleMap::from_blocks(alg, &[&a, &b], &[&a, &b], &[vec![None, None], vec![Some(&h), None]]);
        return PeriodicComplex::new(alg, 1, vec![sum], vec![d]).expect("strictly lower block squares to zero");
    }
    let components: Vec<Representation> = (0..period).map(|_| random_representation(alg, max_dim, rng)).collect();
    let mut differentials: Vec<ModuleMap> = Vec::with_capacity(period);
    differentials.push(random_hom(alg, &components[0], &components[1], rng));
    for i in 1..period {
        let next = (i + 1) % period;
        let prev_image: Vec<Matrix> = differentials[i - 1].matrices().iter().map(Matrix::column_space_basis).collect();
        let prev_image = pad(prev_image, &components[i]);
        let (quot, proj) = quotient_module(alg, &components[i], &prev_image).expect("images are submodules");
        let d = if next == 0 {
            let (ker, inc) = kernel(alg, &components[0], &differentials[0]);
            inc.compose(&random_hom(alg, &quot, &ker, rng)).compose(&proj)
        } else {
            random_hom(alg, &quot, &components[next], rng).compose(&proj)
        };
        differentials.push(d);
    }
    PeriodicComplex::new(alg, period, components, differentials).expect("construction forces d^2 = 0")
}

fn pad(basis: Vec<Matrix>, ambient: &Representation) -> Vec<Matrix> {
    basis
        .into_iter()
        .enumerate()
        .map(|(v, b)| if b.cols() == 0 { Matrix::zeros(ambient.field(), ambient.dims()[v], 0) } else { b })
        .collect()
}
