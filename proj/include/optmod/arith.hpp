#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "optmod/rational.hpp"

// Number-theoretic kernel: symbols, multiplicative functions, discriminant
// decompositions and the level constants that drive the integrality results.
namespace optmod::arith {

/// Prime factorization as (prime, exponent) pairs in increasing order.
/// Trial division against a sieved table of primes below 10^6.
std::vector<std::pair<std::int64_t, int>> factor(std::int64_t n);

bool is_prime(std::int64_t n);

/// Kronecker symbol (a/n), fully extended: n may be zero, negative or even.
/// (a/0) is 1 for a = +-1 and 0 otherwise.
int kronecker(std::int64_t a, std::int64_t n);

int moebius(std::int64_t n);
std::int64_t totient(std::int64_t n);

/// [SL2(Z) : Gamma0(n)] = n * prod_{p | n} (1 + 1/p).
std::int64_t index_gamma0(std::int64_t n);

std::int64_t sigma1(std::int64_t n);

struct Discriminant {
    std::int64_t value = 0;
    bool is_disc = true;

    static Discriminant of(std::int64_t d)
    {
        const std::int64_t r = ((d % 4) + 4) % 4;
        return {d, r == 0 || r == 1};
    }
};

inline bool is_discriminant(std::int64_t d)
{
    return Discriminant::of(d).is_disc;
}

bool is_fundamental(std::int64_t d);

struct FundamentalDecomposition {
    std::int64_t fundamental;  // D0
    std::int64_t conductor;    // f, with D = f^2 * D0
};

/// D = f^2 D0 with D0 the discriminant of Q(sqrt D). Requires D < 0.
FundamentalDecomposition fundamental_decomposition(std::int64_t d);

/// D' = (f')^2 D0 where f' is the conductor with every factor of N removed.
std::int64_t d_prime(std::int64_t d, std::int64_t n);

/// #{x in Z/2mZ : x^2 = a mod 4m}.
std::int64_t sqrt_count(std::int64_t a, std::int64_t m);

struct LevelConstants {
    std::int64_t level;
    std::int64_t iota;
    std::int64_t d_hur;  // den((N+1)/6)
    std::int64_t n_hur;  // num((N+1)/6)
    std::int64_t d_coh;  // den((N-1)/12)
    std::int64_t n_coh;  // num((N-1)/12)
};

LevelConstants level_constants(std::int64_t n);

/// Throws DomainError unless n is prime. `what` names the caller.
void require_prime(std::int64_t n, const char* what);

std::int64_t gcd(std::int64_t a, std::int64_t b);

/// Least nonnegative x with n*x = 1 mod m; 0 when m = 1. Throws
/// DomainError when gcd(n, m) != 1.
std::int64_t inverse_mod(std::int64_t n, std::int64_t m);

}  // namespace optmod::arith
