#pragma once

#include "qseries.hpp"

#include <functional>
#include <map>
#include <optional>
#include <vector>

namespace qb {

using IVec = std::vector<int>;
using RatMat = std::vector<std::vector<Rat>>; // symmetric index matrix

Rat bilinear(const RatMat& M, const std::vector<Rat>& x, const std::vector<Rat>& y);

// Translation datum X = (lambda | mu), one row per elliptic variable.
struct LatticeShift {
    std::vector<Rat> lambda;
    std::vector<Rat> mu;

    int rank() const { return (int)lambda.size(); }
    static LatticeShift zero(int rank) { return {std::vector<Rat>(rank, Rat(0)), std::vector<Rat>(rank, Rat(0))}; }
    LatticeShift operator+(const LatticeShift& o) const;
    LatticeShift operator-() const;
    bool is_integral() const;
    // right action by gamma in SL2(Z)
    LatticeShift acted(long long a, long long b, long long c, long long d) const;
};

// rho(X) = e(B(l,l) - B(l,m) + B(m,m))
CycQ rho_factor(const RatMat& M, const LatticeShift& X);
// zeta_{X,X'} = e(B(l',m) - B(l,m'))
CycQ zeta_factor(const RatMat& M, const LatticeShift& X, const LatticeShift& Xp);
// gamma in Gamma_X: X.gamma - X integral and rho(X - X.gamma) = zeta_{X, X.gamma - X}
bool gamma_X_member(const RatMat& M, const LatticeShift& X, long long a, long long b, long long c,
                    long long d);

// Truncated Laurent expansion in normalized elliptic variables w_i = 2*pi*i*z_i
// over q-series coefficients. Exponents are exact inside the per-variable window
// [lo_i, hi_i]; coefficients are valid below q_trunc.
class JetForm {
  public:
    JetForm(int rank, IVec lo, IVec hi, Rat q_trunc);
    static JetForm constant(int rank, const QSeries& c, const IVec& lo, const IVec& hi);

    int rank() const { return rank_; }
    const IVec& lo() const { return lo_; }
    const IVec& hi() const { return hi_; }
    const Rat& q_trunc() const { return q_trunc_; }
    const std::map<IVec, QSeries>& coeffs() const { return coeffs_; }

    int weight = 0;
    RatMat index; // empty means zero index
    bool jacobi_tagged = false;

    QSeries coeff(const IVec& l) const; // throws JetOrderExceeded outside the window
    void set(const IVec& l, QSeries s);
    void add_to(const IVec& l, const QSeries& s);

    JetForm operator-() const;
    friend JetForm operator+(const JetForm& a, const JetForm& b);
    friend JetForm operator-(const JetForm& a, const JetForm& b);
    friend JetForm operator*(const JetForm& a, const JetForm& b);
    JetForm operator*(const QSeries& s) const;
    JetForm operator*(const CycQ& c) const;

    // inverse of a jet of the form w^v * (unit); rank 1 only
    JetForm inverse() const;

    // d/dw_i (equals the classical D_{z_i} in normalized variables)
    JetForm derivative_w(int i) const;
    // q d/dq on every coefficient
    JetForm derivative_q() const;
    // multiply by w_i^k (shifts the window)
    JetForm shifted(int i, int k) const;
    // restrict to a smaller window / lower q-truncation
    JetForm windowed(const IVec& lo, const IVec& hi) const;
    JetForm q_truncated(const Rat& t) const;

    // multiply by exp(c * w_i)
    JetForm times_exp(int i, const Rat& c_num, const CycQ& unit = CycQ::one()) const;

    bool equal_on(const JetForm& o, const IVec& lo, const IVec& hi, const Rat& q_order) const;

    // declare as Jacobi data of the given weight/index; throws BadParam when the
    // index fails the integrality sanity check (2*B_M integral quadratic form)
    void tag_jacobi(int weight, RatMat index);

    std::string str(int max_terms = 16) const;

  private:
    int rank_;
    IVec lo_, hi_;
    Rat q_trunc_;
    std::map<IVec, QSeries> coeffs_;
};

// exact convolution of the stored terms of a and b, clipped to the given box.
// No window-collapse bookkeeping: the caller is responsible for materializing the
// operands far enough that every clipped coefficient is complete.
JetForm multiply_raw(const JetForm& a, const JetForm& b, const IVec& lo, const IVec& hi);

// copy the stored coefficients onto a caller-chosen box (clipping silently)
JetForm reboxed_window(const JetForm& src, const IVec& lo, const IVec& hi);

// embed a rank-1 jet along variable axis i of a rank-n jet
JetForm embed_axis(const JetForm& single, int axis, int rank, const IVec& lo, const IVec& hi);

// w_i -> -w_i
JetForm reflected(const JetForm& j, int axis);

// g(u) for a rank-1 jet g with lo >= 0, composed at u = s.w (integer coefficients,
// at least one nonzero); result materialized on the requested window
JetForm compose_linear(const JetForm& single, const IVec& s, const IVec& lo, const IVec& hi);

// (s.w)^(-k) expanded in the iterated-Laurent ring with distinguished first variable,
// materialized on the given window (lo[0] must reach the deep exponents)
JetForm iterated_inv_power(const IVec& s, int k, const IVec& lo, const IVec& hi, const Rat& q_trunc);

// zeta-monomial expansion over q-series within a symmetric window; optionally carries
// an exact single-variable polar jet for the q^0 elliptic part (used by the Weierstrass
// family kernels whose m = 0 term has unbounded zeta-support)
class FourierForm {
  public:
    FourierForm(int rank, Rat window, Rat q_trunc);

    int rank() const { return rank_; }
    const Rat& window() const { return window_; }
    const Rat& q_trunc() const { return q_trunc_; }
    const std::map<std::vector<Rat>, QSeries>& support() const { return sup_; }

    int weight = 0;
    RatMat index;
    std::string region = "|q| < |zeta_i| < 1";
    std::optional<JetForm> polar_jet; // rank 1 only
    // declared pole hyperplanes s.z in u tau + v, as (s, u, v)
    std::vector<std::tuple<IVec, Rat, Rat>> declared_poles;

    QSeries coeff(const std::vector<Rat>& r) const;
    void set(const std::vector<Rat>& r, QSeries s);
    void add_to(const std::vector<Rat>& r, const QSeries& s);

    friend FourierForm operator+(const FourierForm& a, const FourierForm& b);
    friend FourierForm operator*(const FourierForm& a, const FourierForm& b);
    FourierForm operator*(const QSeries& s) const;
    FourierForm operator*(const CycQ& c) const;

    // specialize zeta_i -> e(mu_i) q^(lambda_i) (evaluation at a torsion point);
    // rank drops to 0, returns the q-series
    QSeries specialize(const LatticeShift& X) const;

    std::string str(int max_terms = 16) const;

  private:
    int rank_;
    Rat window_;
    Rat q_trunc_;
    std::map<std::vector<Rat>, QSeries> sup_;
};

// slash action phi |_M X on Fourier data: exact monomial bookkeeping
// zeta^r q^s -> e(B(l+m,l+m)) e(r.mu) zeta^(r + 2 lambda M) q^(s + r.lambda + B(l,l));
// throws WindowOverflow if the shifted support leaves the window
FourierForm slash_X(const FourierForm& f, const LatticeShift& X, const RatMat& M);

// exact jet of a Fourier form: zeta^r -> prod exp(r_i w_i); pole_spec lists per-variable
// theta powers cleared before conversion and re-divided afterwards
JetForm fourier_to_jet(const FourierForm& f, const IVec& pole_spec, const IVec& lo, const IVec& hi);

} // namespace qb
