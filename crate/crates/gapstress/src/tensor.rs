//! Symmetric 2x2 stress tensors with an explicit frame tag.
//!
//! All stresses are normalized so the background stress is the identity;
//! bipolar-local components use the ordered basis (e_zeta, e_theta).

use crate::geometry::{Frame, Vec2};

/// Basis a tensor's components refer to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrameTag {
    Cartesian,
    BipolarLocal,
}

/// Symmetric rank-2 tensor: c11, c22 on the diagonal, c12 the single
/// off-diagonal slot (symmetry holds by construction).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetricTensor2 {
    pub c11: f64,
    pub c12: f64,
    pub c22: f64,
    pub frame: FrameTag,
}

impl SymmetricTensor2 {
    pub fn new(c11: f64, c12: f64, c22: f64, frame: FrameTag) -> Self {
        Self { c11, c12, c22, frame }
    }

    pub fn identity(frame: FrameTag) -> Self {
        Self::new(1.0, 0.0, 1.0, frame)
    }

    pub fn zero(frame: FrameTag) -> Self {
        Self::new(0.0, 0.0, 0.0, frame)
    }

    /// Rank-one tensor coef * (v x v) for a direction v (need not be unit).
    pub fn rank_one(coef: f64, v: Vec2, frame: FrameTag) -> Self {
        Self::new(coef * v.x * v.x, coef * v.x * v.y, coef * v.y * v.y, frame)
    }

    pub fn trace(&self) -> f64 {
        self.c11 + self.c22
    }

    pub fn det(&self) -> f64 {
        self.c11 * self.c22 - self.c12 * self.c12
    }

    /// Frobenius norm, counting the off-diagonal slot twice.
    pub fn fro_norm(&self) -> f64 {
        (self.c11 * self.c11 + 2.0 * self.c12 * self.c12 + self.c22 * self.c22).sqrt()
    }

    /// Componentwise difference; both tensors must live in the same frame.
    pub fn sub(&self, other: &SymmetricTensor2) -> SymmetricTensor2 {
        assert_eq!(self.frame, other.frame, "frame mismatch in tensor subtraction");
        SymmetricTensor2::new(
            self.c11 - other.c11,
            self.c12 - other.c12,
            self.c22 - other.c22,
            self.frame,
        )
    }

    pub fn add(&self, other: &SymmetricTensor2) -> SymmetricTensor2 {
        assert_eq!(self.frame, other.frame, "frame mismatch in tensor addition");
        SymmetricTensor2::new(
            self.c11 + other.c11,
            self.c12 + other.c12,
            self.c22 + other.c22,
            self.frame,
        )
    }

    /// Tensor action on a vector (valid in the tensor's own frame).
    pub fn apply(&self, v: Vec2) -> Vec2 {
        Vec2::new(
            self.c11 * v.x + self.c12 * v.y,
            self.c12 * v.x + self.c22 * v.y,
        )
    }

    /// Congruence transform of bipolar-local components into the Cartesian
    /// frame: sigma_cart = Q sigma Q^T with Q = [e_zeta | e_theta]. Valid
    /// whether Q is a rotation or a reflection since Q is orthogonal.
    pub fn rotate_to_cartesian(&self, frame: &Frame) -> SymmetricTensor2 {
        assert_eq!(self.frame, FrameTag::BipolarLocal, "expected bipolar-local components");
        let (ez, et) = (frame.e_zeta, frame.e_theta);
        // Columns of Q act on the component matrix: sigma_cart_ij =
        // sum_ab Q_ia sigma_ab Q_jb.
        let q = [[ez.x, et.x], [ez.y, et.y]];
        let s = [[self.c11, self.c12], [self.c12, self.c22]];
        let mut out = [[0.0f64; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = 0.0;
                for a in 0..2 {
                    for b in 0..2 {
                        acc += q[i][a] * s[a][b] * q[j][b];
                    }
                }
                out[i][j] = acc;
            }
        }
        SymmetricTensor2::new(out[0][0], out[0][1], out[1][1], FrameTag::Cartesian)
    }
}
