#include "rational.hpp"

#include <mutex>
#include <vector>

namespace qb {

const Rat& bernoulli(int n) {
    static std::vector<Rat> cache{Rat(1)};
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    while ((int)cache.size() <= n) {
        int m = (int)cache.size();
        // B_m = -1/(m+1) * sum_{j<m} binom(m+1, j) B_j
        Rat acc(0);
        for (int j = 0; j < m; ++j) acc += Rat(binomial(m + 1, j)) * cache[j];
        cache.push_back(-acc / Rat(m + 1));
    }
    return cache[n];
}

Int binomial(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    Int r = 1;
    for (long long i = 0; i < k; ++i) {
        r *= Int(n - i);
        r /= Int(i + 1);
    }
    return r;
}

Rat pochhammer(const Rat& x, int n) {
    Rat r(1);
    for (int i = 0; i < n; ++i) r *= x + Rat(i);
    return r;
}

Rat falling_factorial(const Rat& x, int n) {
    Rat r(1);
    for (int i = 0; i < n; ++i) r *= x - Rat(i);
    return r;
}

Int factorial(int n) {
    Int r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

} // namespace qb
