#pragma once

#include "jets.hpp"
#include "kernels.hpp"
#include "partition.hpp"

namespace qb {

// ---- Bloch-Okounkov n-point functions ---------------------------------------

// recursion side: symmetrized over all argument orders in the iterated-Laurent
// ring with distinguished first variable, then re-read as an honest Laurent jet
// on [-1, J]^n. Throws RecursionRankUnsupported for n > 3; mixed_deep_vanished
// reports whether every coefficient outside the honest box cancelled.
JetForm bo_npoint_recursive(int n, int J, const Rat& q_trunc, bool* mixed_deep_vanished = nullptr);

// bracket side: coefficient of w^l is the q-bracket of the corresponding product
// of shifted symmetric functions (box [-1, J]^n)
JetForm bo_npoint_bracket(int n, int J, const Rat& q_trunc);
// shifted variant with per-variable torsion offsets a_i
JetForm bo_npoint_bracket_shifted(const std::vector<Rat>& a, int J, const Rat& q_trunc);

// ---- moment-function kernels -------------------------------------------------

// set-partition kernel built from weight-2 Eisenstein translates (n <= 2)
JetForm s_npoint_kernel(int n, int J, const Rat& q_trunc);
// bracket side over moment functions (box [-2, J]^n)
JetForm s_npoint_bracket(int n, int J, const Rat& q_trunc);

// ---- double-moment kernels ----------------------------------------------------

// product kernel of theta ratios, rank 2n, box [-1, J]^(2n)
JetForm t_npoint_kernel(int n, int J, const Rat& q_trunc);
// bracket side of the rank-2 generating kernel
JetForm t_onepoint_bracket(int J, const Rat& q_trunc);

// ---- quasi-Jacobi contexts and Taylor coefficients ----------------------------

// A context packages the transformation family phi_{i,j}: each entry produces the
// slashed jet phi_{i,j} |_M X on demand.
struct QJContext {
    int rank = 1;
    int weight = 0;
    RatMat index;
    using Builder = std::function<JetForm(const LatticeShift&, int hi, const Rat& q_trunc)>;
    std::map<std::pair<int, IVec>, Builder> family;

    bool has(int i, const IVec& j) const { return family.count({i, j}) > 0; }
};

QJContext context_F1();    // 1/Theta, weight 1, index -1/2, true Jacobi
QJContext context_E2();    // E_2-kernel, weight 2, index 0, depth-1 family
QJContext context_Theta(); // Theta, weight -1, index 1/2

// phi || X = rho(-X) sum_j (phi_{0,j} | X) lambda^j
JetForm double_slash(const QJContext& ctx, const LatticeShift& X, int hi, const Rat& q_trunc);
// family member phi_{i,j} || X (needs entries (i, j + j'))
JetForm double_slash_member(const QJContext& ctx, int i, const IVec& j, const LatticeShift& X, int hi,
                            const Rat& q_trunc);

QSeries g_taylor(const QJContext& ctx, const LatticeShift& X, const IVec& l, const Rat& q_trunc);
// decorated coefficient with the B_M(w,w)^r factor and the order-s family layer
QSeries g_rs(const QJContext& ctx, const LatticeShift& X, const IVec& l, int r, int s, const Rat& q_trunc);
// modular combination of derivatives of decorated coefficients;
// use_e2_variant selects the (D_tau + e2)/half-integer-Pochhammer form
QSeries xi_comb(const QJContext& ctx, const LatticeShift& X, const IVec& l, bool use_e2_variant,
                const Rat& q_trunc);

} // namespace qb
