use serde::Serialize;

use crate::complex::{cone, ChainMap, PeriodicComplex};
use crate::quiver::QuiverAlgebra;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(m: usize) -> Parity {
        if m % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// An element of `Z^n` (even period) or `F_2^n` (odd period), indexed by vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct K0Class {
    pub parity: Parity,
    pub vector: Vec<i64>,
}

impl K0Class {
    pub fn new(parity: Parity, vector: Vec<i64>) -> Self {
        let mut c = K0Class { parity, vector };
        c.normalize();
        c
    }

    pub fn zero(parity: Parity, n: usize) -> Self {
        K0Class { parity, vector: vec![0; n] }
    }

    fn normalize(&mut self) {
        if self.parity == Parity::Odd {
            for x in &mut self.vector {
                *x = x.rem_euclid(2);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.vector.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &K0Class) -> K0Class {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &K0Class) -> K0Class {
        self.combine(other, -1)
    }

    pub fn neg(&self) -> K0Class {
        K0Class::new(self.parity, self.vector.iter().map(|x| -x).collect())
    }

    /// `self + k * other`
    pub fn combine(&self, other: &K0Class, k: i64) -> K0Class {
        assert_eq!(self.parity, other.parity, "classes of different parity");
        let v = self.vector.iter().zip(&other.vector).map(|(a, b)| a + k * b).collect();
        K0Class::new(self.parity, v)
    }
}

/// Alternating (even `m`) or plain mod-2 (odd `m`) sum of the cohomology dimension vectors.
///
/// Only ranks are needed: `dim H^i_v = dim V^i_v - rank d^i_v - rank d^{i-1}_v`.
pub fn class_of(alg: &QuiverAlgebra, v: &PeriodicComplex) -> K0Class {
    let m = v.period();
    let parity = Parity::of(m);
    let n = alg.vertex_count();
    let ranks: Vec<Vec<usize>> = v.differentials().iter().map(|d| d.rank_vector()).collect();
    let mut vector = vec![0i64; n];
    for i in 0..m {
        let prev = (i + m - 1) % m;
        let sign = if parity == Parity::Even && i % 2 == 1 { -1 } else { 1 };
        for (vert, x) in vector.iter_mut().enumerate() {
            let h = v.components()[i].dims()[vert] - ranks[i][vert] - ranks[prev][vert];
            *x += sign * h as i64;
        }
    }
    K0Class::new(parity, vector)
}

/// Whether `[V] - [W] + [cone f]` vanishes for the triangle `V -> W -> cone f -> V[1]`.
/// Always true for a valid chain map; `false` also when `f` is not one.
pub fn check_triangle_additivity(alg: &QuiverAlgebra, v: &PeriodicComplex, w: &PeriodicComplex, f: &ChainMap) -> bool {
    match cone(alg, v, w, f) {
        Ok(c) => class_of(alg, v).sub(&class_of(alg, w)).add(&class_of(alg, &c.complex)).is_zero(),
        Err(_) => false,
    }
}
