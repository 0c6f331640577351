#pragma once

#include "jets.hpp"

namespace qb {

// exp(c * w) as a truncated series in the formal variable (integer exponents)
QSeries exp_series(const Rat& c, const Rat& trunc);

// Eisenstein series G_k = -B_k/2k + sum sigma_{k-1}(n) q^n
QSeries eisenstein_G(int k, const Rat& trunc);
// 1/12 - 2 sum_{m,r>=1} m q^(mr)  (= -2 G_2)
QSeries e2_series(const Rat& trunc);
// g_k = 2 G_k / (k-1)!, the w-normalized weight-k Eisenstein constant
QSeries g_hat_series(int k, const Rat& trunc);
// theta'(tau, 0) = sum nu (-1)^floor(nu) q^(nu^2/2)
QSeries theta_deriv0_series(const Rat& trunc);

// reinterpret a series in the elliptic variable as a rank-1 jet with constant
// q-series coefficients (integer exponents only)
JetForm wseries_to_jet(const QSeries& ws, int lo, int hi, const Rat& q_trunc);

// ---- rank-1 kernels in w-units ---------------------------------------------

JetForm theta_hat_jet(int hi, const Rat& q_trunc);     // w exp(-sum g_{2m} w^{2m}/(2m))
JetForm theta_hat_inv_jet(int hi, const Rat& q_trunc); // exact reciprocal
JetForm a_hat_jet(int hi, const Rat& q_trunc);         // 1/w - sum g_{2m} w^{2m-1}
JetForm e_hat_jet(int k, int hi, const Rat& q_trunc);  // 1/w^k + (-1)^k sum C(2m-1,k-1) g_{2m} w^{2m-k}
JetForm wp_hat_jet(int hi, const Rat& q_trunc);        // e_hat(2) - g_2

FourierForm theta_fourier(const Rat& q_trunc);
FourierForm a_hat_fourier(const Rat& q_trunc, int polar_hi);
FourierForm e2_hat_fourier(const Rat& q_trunc, int polar_hi);

// ---- torsion translates, argument w + 2 pi i (lambda tau + mu) ---------------
// normalized so 0 <= lambda < 1; exact jets over Puiseux q-series

JetForm theta_hat_translated(const Rat& lambda, const Rat& mu, int hi, const Rat& q_trunc);
JetForm a_hat_translated(const Rat& lambda, const Rat& mu, int hi, const Rat& q_trunc);
JetForm e2_hat_translated(const Rat& lambda, const Rat& mu, int hi, const Rat& q_trunc);

// value series Theta(tau, lambda tau + mu)
QSeries theta_hat_at(const Rat& lambda, const Rat& mu, const Rat& trunc);
// weight-1 Eisenstein-type series h_{u,v} = A(tau, u tau + v) + u, (u,v) not both integral
QSeries klein_h(const Rat& u, const Rat& v, const Rat& trunc);

// slash prefactors applied to an already-translated jet:
// phi|X = e(B(l+m,l+m)) q^B(l,l) prod_i exp(2 (lambda M)_i w_i) * (translated jet)
JetForm apply_slash_prefactors(JetForm translated, const LatticeShift& X, const RatMat& M);

} // namespace qb
