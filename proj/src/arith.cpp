#include "optmod/arith.hpp"

#include <cstdlib>
#include <string>
#include <tuple>

#include "optmod/errors.hpp"

namespace optmod::arith {

namespace {

constexpr std::int64_t kSieveLimit = 1'000'000;

const std::vector<std::int64_t>& prime_table()
{
    static const std::vector<std::int64_t> primes = [] {
        std::vector<bool> composite(kSieveLimit + 1, false);
        std::vector<std::int64_t> out;
        for (std::int64_t p = 2; p <= kSieveLimit; ++p) {
            if (composite[p])
                continue;
            out.push_back(p);
            for (std::int64_t q = p * p; q <= kSieveLimit; q += p)
                composite[q] = true;
        }
        return out;
    }();
    return primes;
}

std::int64_t mod_pos(std::int64_t a, std::int64_t m)
{
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

// Jacobi symbol for odd positive n.
int jacobi(std::int64_t a, std::int64_t n)
{
    a = mod_pos(a, n);
    int result = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            const std::int64_t r = n % 8;
            if (r == 3 || r == 5)
                result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3)
            result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

void require_positive(std::int64_t n, const char* what)
{
    if (n < 1)
        throw DomainError(std::string(what) + ": argument must be >= 1, got " + std::to_string(n));
}

}  // namespace

std::int64_t gcd(std::int64_t a, std::int64_t b)
{
    a = std::llabs(a);
    b = std::llabs(b);
    while (b != 0) {
        const std::int64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::vector<std::pair<std::int64_t, int>> factor(std::int64_t n)
{
    require_positive(n, "factor");
    std::vector<std::pair<std::int64_t, int>> out;
    for (const std::int64_t p : prime_table()) {
        if (p * p > n)
            break;
        if (n % p != 0)
            continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) {
        if (n > kSieveLimit * kSieveLimit)
            throw CapacityError("factor: cofactor " + std::to_string(n) + " beyond trial-division range");
        out.emplace_back(n, 1);
    }
    return out;
}

bool is_prime(std::int64_t n)
{
    if (n < 2)
        return false;
    const auto f = factor(n);
    return f.size() == 1 && f.front().second == 1;
}

void require_prime(std::int64_t n, const char* what)
{
    if (!is_prime(n))
        throw DomainError(std::string(what) + ": level " + std::to_string(n) + " is not prime");
}

int kronecker(std::int64_t a, std::int64_t n)
{
    if (n == 0)
        return (a == 1 || a == -1) ? 1 : 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0)
            result = -result;
    }
    int v2 = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++v2;
    }
    if (v2 > 0) {
        if (a % 2 == 0)
            return 0;
        const std::int64_t r = mod_pos(a, 8);
        if ((v2 % 2 == 1) && (r == 3 || r == 5))
            result = -result;
    }
    if (n == 1)
        return result;
    return result * jacobi(a, n);
}

int moebius(std::int64_t n)
{
    require_positive(n, "moebius");
    int mu = 1;
    for (const auto& [p, e] : factor(n)) {
        if (e > 1)
            return 0;
        mu = -mu;
    }
    return mu;
}

std::int64_t totient(std::int64_t n)
{
    require_positive(n, "totient");
    std::int64_t phi = n;
    for (const auto& [p, e] : factor(n))
        phi = phi / p * (p - 1);
    return phi;
}

std::int64_t index_gamma0(std::int64_t n)
{
    require_positive(n, "index_gamma0");
    std::int64_t idx = n;
    for (const auto& [p, e] : factor(n))
        idx = idx / p * (p + 1);
    return idx;
}

std::int64_t sigma1(std::int64_t n)
{
    require_positive(n, "sigma1");
    std::int64_t s = 1;
    for (const auto& [p, e] : factor(n)) {
        std::int64_t term = 1, pk = 1;
        for (int i = 0; i < e; ++i) {
            pk *= p;
            term += pk;
        }
        s *= term;
    }
    return s;
}

FundamentalDecomposition fundamental_decomposition(std::int64_t d)
{
    if (d >= 0 || !is_discriminant(d))
        throw DomainError("fundamental_decomposition: " + std::to_string(d) + " is not a negative discriminant");
    // Squarefree kernel of |d| with sign, then adjust at 2.
    std::int64_t core = -1;
    std::int64_t f = 1;
    for (const auto& [p, e] : factor(-d)) {
        for (int i = 0; i < e / 2; ++i)
            f *= p;
        if (e % 2 == 1)
            core *= p;
    }
    if (mod_pos(core, 4) != 1) {
        core *= 4;
        f /= 2;
    }
    return {core, f};
}

bool is_fundamental(std::int64_t d)
{
    if (d == 0 || d == 1 || !is_discriminant(d))
        return false;
    if (d > 0) {
        std::int64_t core = 1, f = 1;
        for (const auto& [p, e] : factor(d)) {
            for (int i = 0; i < e / 2; ++i)
                f *= p;
            if (e % 2 == 1)
                core *= p;
        }
        if (mod_pos(core, 4) != 1)
            f /= 2;
        return f == 1;
    }
    return fundamental_decomposition(d).conductor == 1;
}

std::int64_t d_prime(std::int64_t d, std::int64_t n)
{
    auto [d0, f] = fundamental_decomposition(d);
    if (n > 1)
        while (f % n == 0)
            f /= n;
    return f * f * d0;
}

std::int64_t sqrt_count(std::int64_t a, std::int64_t m)
{
    require_positive(m, "sqrt_count");
    const std::int64_t mod = 4 * m;
    const std::int64_t target = mod_pos(a, mod);
    std::int64_t count = 0;
    for (std::int64_t x = 0; x < 2 * m; ++x)
        if ((x * x) % mod == target)
            ++count;
    return count;
}

LevelConstants level_constants(std::int64_t n)
{
    require_prime(n, "level_constants");
    const Rational hur = make_rational(n + 1, 6);
    const Rational coh = make_rational(n - 1, 12);
    return {n,
            index_gamma0(n),
            hur.get_den().get_si(),
            hur.get_num().get_si(),
            coh.get_den().get_si(),
            coh.get_num().get_si()};
}

std::int64_t inverse_mod(std::int64_t n, std::int64_t m)
{
    require_positive(m, "inverse_mod");
    if (m == 1)
        return 0;
    // Extended Euclid on (n mod m, m).
    std::int64_t r0 = mod_pos(n, m), r1 = m;
    std::int64_t s0 = 1, s1 = 0;
    while (r1 != 0) {
        const std::int64_t q = r0 / r1;
        std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
        std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
    }
    if (r0 != 1)
        throw DomainError("inverse_mod: " + std::to_string(n) + " is not invertible mod " + std::to_string(m));
    return mod_pos(s0, m);
}

}  // namespace optmod::arith
