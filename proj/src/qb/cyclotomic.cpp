#include "cyclotomic.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace qb {

namespace {

// exact division of integer polynomials, remainder must vanish
std::vector<Int> poly_divide_exact(std::vector<Int> a, const std::vector<Int>& b) {
    std::vector<Int> q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Int(0));
    while (a.size() >= b.size() && !a.empty()) {
        while (!a.empty() && a.back() == 0) a.pop_back();
        if (a.size() < b.size()) break;
        Int c = a.back() / b.back();
        size_t shift = a.size() - b.size();
        q[shift] = c;
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    }
    for (const auto& r : a)
        if (r != 0) throw std::logic_error("non-exact polynomial division");
    return q;
}

std::mutex g_phi_mutex;

} // namespace

long long euler_phi(long long M) {
    long long result = M, m = M;
    for (long long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            result -= result / p;
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

const std::vector<Int>& cyclotomic_poly(long long M) {
    static std::map<long long, std::vector<Int>> cache;
    std::lock_guard<std::mutex> lock(g_phi_mutex);
    auto it = cache.find(M);
    if (it != cache.end()) return it->second;

    // Phi_M = (x^M - 1) / prod_{d | M, d < M} Phi_d
    std::function<std::vector<Int>(long long)> compute = [&](long long m) -> std::vector<Int> {
        auto hit = cache.find(m);
        if (hit != cache.end()) return hit->second;
        std::vector<Int> numer(m + 1, Int(0));
        numer[0] = -1;
        numer[m] = 1;
        for (long long d = 1; d < m; ++d) {
            if (m % d != 0) continue;
            auto phid = compute(d);
            numer = poly_divide_exact(std::move(numer), phid);
        }
        cache[m] = numer;
        return numer;
    };
    compute(M);
    return cache[M];
}

void CycQ::reduce_mod_cyclotomic(std::map<long long, Rat>& raw) const {
    const auto& phi = cyclotomic_poly(modulus_);
    long long deg = (long long)phi.size() - 1; // = euler_phi(modulus_)
    // reduce exponents mod M first
    std::map<long long, Rat> folded;
    for (auto& [e, c] : raw) {
        long long r = e % modulus_;
        if (r < 0) r += modulus_;
        folded[r] += c;
    }
    // long-divide by Phi_M from the top
    std::vector<Rat> dense(modulus_, Rat(0));
    for (auto& [e, c] : folded) dense[e] += c;
    for (long long e = modulus_ - 1; e >= deg; --e) {
        if (dense[e] == 0) continue;
        Rat c = dense[e]; // phi is monic
        for (long long i = 0; i <= deg; ++i) dense[e - deg + i] -= c * Rat(phi[i]);
    }
    raw.clear();
    for (long long e = 0; e < deg; ++e)
        if (dense[e] != 0) raw[e] = dense[e];
}

CycQ CycQ::root_of_unity(const Rat& a) {
    Rat b = mod1(a);
    long long q = to_ll(den(b));
    long long p = to_ll(num(b));
    CycQ r;
    r.modulus_ = q;
    std::map<long long, Rat> raw;
    raw[p] = Rat(1);
    r.reduce_mod_cyclotomic(raw);
    r.coeffs_ = std::move(raw);
    return r;
}

bool CycQ::is_rational() const {
    return coeffs_.empty() || (coeffs_.size() == 1 && coeffs_.begin()->first == 0);
}

Rat CycQ::rational_value() const {
    if (coeffs_.empty()) return Rat(0);
    if (!is_rational()) throw std::domain_error("cyclotomic value is not rational");
    return coeffs_.begin()->second;
}

CycQ CycQ::operator-() const {
    CycQ r(*this);
    for (auto& [e, c] : r.coeffs_) c = -c;
    return r;
}

void CycQ::align(CycQ& a, CycQ& b) {
    if (a.modulus_ == b.modulus_) return;
    long long m = std::lcm(a.modulus_, b.modulus_);
    a = a.embedded(m);
    b = b.embedded(m);
}

CycQ CycQ::embedded(long long new_modulus) const {
    if (new_modulus == modulus_) return *this;
    if (new_modulus % modulus_ != 0) throw std::invalid_argument("embedding requires divisible modulus");
    long long f = new_modulus / modulus_;
    CycQ r;
    r.modulus_ = new_modulus;
    std::map<long long, Rat> raw;
    for (auto& [e, c] : coeffs_) raw[e * f] += c;
    r.reduce_mod_cyclotomic(raw);
    r.coeffs_ = std::move(raw);
    return r;
}

CycQ& CycQ::operator+=(const CycQ& o) {
    CycQ b = o;
    align(*this, b);
    std::map<long long, Rat> raw = coeffs_;
    for (auto& [e, c] : b.coeffs_) {
        raw[e] += c;
        if (raw[e] == 0) raw.erase(e);
    }
    coeffs_ = std::move(raw);
    return *this;
}

CycQ& CycQ::operator-=(const CycQ& o) { return *this += -o; }

CycQ& CycQ::operator*=(const CycQ& o) {
    CycQ b = o;
    align(*this, b);
    std::map<long long, Rat> raw;
    for (auto& [e1, c1] : coeffs_)
        for (auto& [e2, c2] : b.coeffs_) raw[e1 + e2] += c1 * c2;
    reduce_mod_cyclotomic(raw);
    coeffs_ = std::move(raw);
    return *this;
}

CycQ& CycQ::operator*=(const Rat& r) {
    if (r == 0) {
        coeffs_.clear();
        return *this;
    }
    for (auto& [e, c] : coeffs_) c *= r;
    return *this;
}

CycQ CycQ::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero in Q(zeta)");
    if (is_rational()) {
        CycQ r;
        r.modulus_ = modulus_;
        r.coeffs_[0] = Rat(1) / coeffs_.begin()->second;
        return r;
    }
    // extended Euclid in Q[x] against Phi_M: u*self + v*Phi = gcd = const
    const auto& phi_int = cyclotomic_poly(modulus_);
    std::vector<Rat> r0(phi_int.size());
    for (size_t i = 0; i < phi_int.size(); ++i) r0[i] = Rat(phi_int[i]);
    std::vector<Rat> r1(to_ll(coeffs_.rbegin()->first) + 1, Rat(0));
    for (auto& [e, c] : coeffs_) r1[e] = c;
    std::vector<Rat> s0{Rat(0)}, s1{Rat(1)}; // coefficients of self

    auto trim = [](std::vector<Rat>& p) {
        while (!p.empty() && p.back() == 0) p.pop_back();
    };
    trim(r0);
    trim(r1);
    while (!r1.empty()) {
        // divide r0 by r1
        std::vector<Rat> q(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 0, Rat(0));
        std::vector<Rat> rem = r0;
        while (rem.size() >= r1.size() && !rem.empty()) {
            Rat c = rem.back() / r1.back();
            size_t shift = rem.size() - r1.size();
            q[shift] = c;
            for (size_t i = 0; i < r1.size(); ++i) rem[shift + i] -= c * r1[i];
            trim(rem);
        }
        // s_{k+1} = s_{k-1} - q * s_k
        std::vector<Rat> s2 = s0;
        s2.resize(std::max(s2.size(), q.size() + s1.size()), Rat(0));
        for (size_t i = 0; i < q.size(); ++i) {
            if (q[i] == 0) continue;
            for (size_t j = 0; j < s1.size(); ++j) s2[i + j] -= q[i] * s1[j];
        }
        trim(s2);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    // r0 = gcd (a nonzero constant since Phi_M is irreducible), s0 * self = r0 mod Phi
    if (r0.size() != 1) throw std::logic_error("cyclotomic gcd not constant");
    CycQ inv;
    inv.modulus_ = modulus_;
    std::map<long long, Rat> raw;
    for (size_t i = 0; i < s0.size(); ++i)
        if (s0[i] != 0) raw[(long long)i] = s0[i] / r0[0];
    inv.reduce_mod_cyclotomic(raw);
    inv.coeffs_ = std::move(raw);
    return inv;
}

bool CycQ::operator==(const CycQ& o) const {
    if (modulus_ == o.modulus_) return coeffs_ == o.coeffs_;
    CycQ a = *this, b = o;
    align(a, b);
    return a.coeffs_ == b.coeffs_;
}

bool CycQ::operator<(const CycQ& o) const {
    CycQ a = *this, b = o;
    align(a, b);
    return a.coeffs_ < b.coeffs_;
}

bool CycQ::try_reduce(long long new_modulus, CycQ& out) const {
    if (modulus_ % new_modulus != 0) return false;
    if (new_modulus == modulus_) {
        out = *this;
        return true;
    }
    // solve over the embedded power basis of Q(zeta_new) by Gaussian elimination
    long long dim_small = euler_phi(new_modulus);
    long long dim_big = euler_phi(modulus_);
    std::vector<std::vector<Rat>> cols(dim_small, std::vector<Rat>(dim_big, Rat(0)));
    for (long long j = 0; j < dim_small; ++j) {
        CycQ basis;
        basis.modulus_ = new_modulus;
        basis.coeffs_[j] = Rat(1);
        CycQ img = basis.embedded(modulus_);
        for (auto& [e, c] : img.coeffs_) cols[j][e] = c;
    }
    std::vector<Rat> rhs(dim_big, Rat(0));
    for (auto& [e, c] : coeffs_) rhs[e] = c;
    // augmented elimination
    std::vector<Rat> sol(dim_small, Rat(0));
    std::vector<long long> pivot_col;
    std::vector<std::vector<Rat>> m(dim_big, std::vector<Rat>(dim_small + 1));
    for (long long i = 0; i < dim_big; ++i) {
        for (long long j = 0; j < dim_small; ++j) m[i][j] = cols[j][i];
        m[i][dim_small] = rhs[i];
    }
    long long row = 0;
    std::vector<long long> where(dim_small, -1);
    for (long long col = 0; col < dim_small && row < dim_big; ++col) {
        long long sel = -1;
        for (long long i = row; i < dim_big; ++i)
            if (m[i][col] != 0) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        std::swap(m[sel], m[row]);
        Rat inv = Rat(1) / m[row][col];
        for (long long j = col; j <= dim_small; ++j) m[row][j] *= inv;
        for (long long i = 0; i < dim_big; ++i) {
            if (i == row || m[i][col] == 0) continue;
            Rat f = m[i][col];
            for (long long j = col; j <= dim_small; ++j) m[i][j] -= f * m[row][j];
        }
        where[col] = row;
        ++row;
    }
    for (long long col = 0; col < dim_small; ++col)
        if (where[col] >= 0) sol[col] = m[where[col]][dim_small];
    // consistency: rows with all-zero lhs must have zero rhs
    for (long long i = 0; i < dim_big; ++i) {
        bool zero = true;
        for (long long j = 0; j < dim_small; ++j)
            if (m[i][j] != 0) zero = false;
        if (zero && m[i][dim_small] != 0) return false;
    }
    CycQ r;
    r.modulus_ = new_modulus;
    for (long long j = 0; j < dim_small; ++j)
        if (sol[j] != 0) r.coeffs_[j] = sol[j];
    // verify exactly
    if (r.embedded(modulus_) != *this) return false;
    out = std::move(r);
    return true;
}

CycQ CycQ::reduced() const {
    if (is_rational()) {
        CycQ r;
        r.modulus_ = 1;
        if (!coeffs_.empty()) r.coeffs_[0] = coeffs_.begin()->second;
        return r;
    }
    for (long long d = 1; d < modulus_; ++d) {
        if (modulus_ % d != 0) continue;
        CycQ out;
        if (try_reduce(d, out)) return out;
    }
    return *this;
}

CycQ CycQ::conj() const {
    CycQ r;
    r.modulus_ = modulus_;
    std::map<long long, Rat> raw;
    for (auto& [e, c] : coeffs_) raw[e == 0 ? 0 : modulus_ - e] += c;
    r.reduce_mod_cyclotomic(raw);
    r.coeffs_ = std::move(raw);
    return r;
}

std::string CycQ::str() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [e, c] : coeffs_) {
        if (!first) os << " + ";
        first = false;
        os << rat_str(c);
        if (e > 0) os << "*z" << modulus_ << "^" << e;
    }
    return os.str();
}

} // namespace qb
