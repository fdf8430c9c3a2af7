#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "optmod/rational.hpp"

// Class-number engines: Hurwitz class numbers by reduced-form enumeration,
// generalized Hurwitz class numbers and Cohen-Eisenstein coefficients by
// closed formula, and a direct Gamma0(N)-orbit enumeration used as an
// independent oracle for the closed formula.
namespace optmod::classnum {

struct QuadForm {
    std::int64_t a = 0, b = 0, c = 0;

    std::int64_t discriminant() const { return b * b - 4 * a * c; }
    std::int64_t content() const;
    bool is_primitive() const { return content() == 1; }
    std::int64_t operator()(std::int64_t x, std::int64_t y) const
    {
        return a * x * x + b * x * y + c * y * y;
    }

    friend bool operator==(const QuadForm&, const QuadForm&) = default;
};

/// 2x2 integer matrix (p q; r s) acting on forms by Q|g (x,y) = Q(px+qy, rx+sy).
struct Mat2 {
    std::int64_t p = 1, q = 0, r = 0, s = 1;

    std::int64_t det() const { return p * s - q * r; }
    Mat2 operator*(const Mat2& o) const
    {
        return {p * o.p + q * o.r, p * o.q + q * o.s, r * o.p + s * o.r, r * o.q + s * o.s};
    }
    Mat2 inverse_unimodular() const { return {s, -q, -r, p}; }

    friend bool operator==(const Mat2&, const Mat2&) = default;
};

QuadForm act(const QuadForm& f, const Mat2& g);

/// Reduced positive-definite forms of discriminant D < 0: -a < b <= a <= c,
/// with b >= 0 whenever a == c. One per SL2(Z)-class.
std::vector<QuadForm> reduced_forms(std::int64_t d);

/// Automorphs of f in SL2(Z), including +-I.
std::vector<Mat2> automorphs(const QuadForm& f);

/// H(D): 0 for D > 0 or D = 2,3 mod 4; -1/12 at 0; weighted class count for D < 0.
Rational hurwitz(std::int64_t d);

/// Weighted count restricted to primitive classes; 0 off discriminants.
Rational hurwitz_primitive(std::int64_t d);

/// Generalized class number via 2H(D) - (1 - (D'/N)) H(D'), with the
/// constant -iota(N)/12 at D = 0. N must be prime (or 1, giving H).
Rational hurwitz_generalized(std::int64_t n, std::int64_t d);

/// Cohen-Eisenstein coefficient (1/2)(1 - (D'/N)) H(D'); (N-1)/24 at D = 0.
Rational cohen_coeff(std::int64_t n, std::int64_t d);

struct Orbit {
    QuadForm representative;  // leading coefficient divisible by N
    int stabilizer_order;     // #Gamma0(N)_Q, counting +-I: 2, 4 or 6
};

struct OrbitTable {
    std::int64_t level = 1;
    std::int64_t disc = 0;
    std::vector<Orbit> orbits;

    /// Sum over orbits of 1 / #(Gamma0(N)_Q / {+-I}).
    Rational weighted_count() const;
    std::size_t primitive_count() const;
    /// Orbits of [N a, b, c] with gcd(a, b, c) = 1. These are the classes the
    /// root-count formula enumerates; they include N times a primitive form
    /// of discriminant D / N^2.
    std::size_t level_primitive_count() const;
};

struct OracleLimits {
    std::int64_t max_abs_disc = 2000;
    std::int64_t max_level = 50;
};

/// Enumerates Gamma0(N)\Q_N(D) directly. Each SL2(Z)-class [Q] contributes
/// the orbits of Aut(Q) on the roots of Q in P^1(Z/N); each orbit yields an
/// explicit representative Q|g with N | A and its stabilizer in Gamma0(N),
/// which is re-verified element by element.
OrbitTable orbit_oracle(std::int64_t n, std::int64_t d, const OracleLimits& limits = {});

struct CountIdentity {
    bool holds = false;
    std::int64_t orbit_count = 0;         // level-primitive Gamma0(N)-orbits
    std::int64_t local_roots = 0;         // n_D(N)
    std::int64_t shifted_roots = 0;       // n_{D/N^2}(1), 0 if not integral
    std::int64_t level_one_classes = 0;   // primitive SL2(Z)-classes
    std::int64_t formula_count() const { return (local_roots + shifted_roots) * level_one_classes; }
};

/// Checks #Q^0_N(D)/Gamma0(N) = (n_D(N) + n_{D/N^2}(1)) * #Q^0_1(D)/SL2(Z)
/// using orbit_oracle for the left-hand side, where Q^0_N means gcd(A/N, B, C) = 1.
/// With gcd(A, B, C) = 1 instead the identity fails, e.g. N = 2, D = -12.
CountIdentity verify_count_identity(std::int64_t n, std::int64_t d, const OracleLimits& limits = {});

/// Process-wide memo of H(D) used by hurwitz(). Concurrent callers may
/// compute the same entry twice; the values agree, so either write wins.
namespace memo {
std::map<std::int64_t, Rational> snapshot();
/// Seeds entries, e.g. from a persistent cache. Existing keys are kept.
void seed(const std::map<std::int64_t, Rational>& entries);
void clear();
std::size_t size();
}  // namespace memo

}  // namespace optmod::classnum
