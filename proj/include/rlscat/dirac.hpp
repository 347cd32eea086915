#pragma once

#include "rlscat/types.hpp"

namespace rls {

// Pauli and Dirac matrices in the standard representation:
//   alpha_s = [[0, sigma_s], [sigma_s, 0]],  beta = diag(I2, -I2).
const Matrix2& pauli(int s);
const Matrix4& alpha(int s);
const Matrix4& beta();

Matrix2 pauli_dot(const Vec3& v);
Matrix4 alpha_dot(const Vec3& v);

// Free Dirac symbol m*beta + alpha.k; eigenvalues -+sqrt(k^2+m^2), each twice.
Matrix4 dirac_symbol(const Vec3& k, double m);

// Channel eigenvectors g_n(k) of the free symbol, in the literal rational form
//   g_1 = col[(-k1+i k2)/(m+l3), k3/(m+l3), 0, 1],   l3 = sqrt(k^2+m^2),
//   g_2 = col[-k3/(m+l3), (-k1-i k2)/(m+l3), 1, 0],
// and g_3, g_4 with (m - l3) denominators.  Channels 3,4 require |k| > 0.
Spinor4 spinor(int n, const Vec3& k, double m);

// Unit-norm channel spinor; evaluated in a cancellation-free form so that the
// directional limit |k| -> 0 is reproduced for any nonzero k.
Spinor4 normalized_spinor(int n, const Vec3& k, double m);

double channel_energy(int n, const Vec3& k, double m);

// Orthonormal pair spanning one energy block: p=1 -> [g1,g2], p=2 -> [g3,g4].
SpinorPair frame(int p, const Vec3& k, double m);

}  // namespace rls
