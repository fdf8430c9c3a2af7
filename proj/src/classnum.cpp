#include "optmod/classnum.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <string>
#include <unordered_map>

#include "optmod/arith.hpp"
#include "optmod/errors.hpp"

namespace optmod::classnum {

namespace {

struct MemoStore {
    mutable std::shared_mutex mutex;
    std::unordered_map<std::int64_t, Rational> values;
};

MemoStore& store()
{
    static MemoStore s;
    return s;
}

// Weighted count over reduced forms; weight 1/3 for (a,a,a), 1/2 for (a,0,a).
Rational count_reduced(std::int64_t d, bool primitive_only)
{
    Rational total = 0;
    for (const QuadForm& f : reduced_forms(d)) {
        if (primitive_only && !f.is_primitive())
            continue;
        if (f.a == f.b && f.a == f.c)
            total += Rational(1, 3);
        else if (f.b == 0 && f.a == f.c)
            total += Rational(1, 2);
        else
            total += 1;
    }
    return total;
}

std::int64_t mod_pos(std::int64_t a, std::int64_t m)
{
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

// Projective point of P^1(Z/N) in normal form: (x:1) -> x, (1:0) -> N.
std::int64_t projective_index(std::int64_t x, std::int64_t y, std::int64_t n)
{
    x = mod_pos(x, n);
    y = mod_pos(y, n);
    if (y == 0)
        return n;
    return mod_pos(x * arith::inverse_mod(y, n), n);
}

}  // namespace

std::int64_t QuadForm::content() const
{
    return arith::gcd(arith::gcd(a, b), c);
}

QuadForm act(const QuadForm& f, const Mat2& g)
{
    return {f(g.p, g.r),
            2 * f.a * g.p * g.q + f.b * (g.p * g.s + g.q * g.r) + 2 * f.c * g.r * g.s,
            f(g.q, g.s)};
}

std::vector<QuadForm> reduced_forms(std::int64_t d)
{
    if (d >= 0 || !arith::is_discriminant(d))
        throw DomainError("reduced_forms: " + std::to_string(d) + " is not a negative discriminant");
    std::vector<QuadForm> out;
    for (std::int64_t a = 1; 3 * a * a <= -d; ++a) {
        for (std::int64_t b = -a + 1; b <= a; ++b) {
            const std::int64_t num = b * b - d;
            if (num % (4 * a) != 0)
                continue;
            const std::int64_t c = num / (4 * a);
            if (c < a || (c == a && b < 0))
                continue;
            out.push_back({a, b, c});
        }
    }
    return out;
}

std::vector<Mat2> automorphs(const QuadForm& f)
{
    // Automorphs of reduced forms have entries in {-1, 0, 1}.
    std::vector<Mat2> out;
    for (std::int64_t p = -1; p <= 1; ++p)
        for (std::int64_t q = -1; q <= 1; ++q)
            for (std::int64_t r = -1; r <= 1; ++r)
                for (std::int64_t s = -1; s <= 1; ++s) {
                    const Mat2 g{p, q, r, s};
                    if (g.det() == 1 && act(f, g) == f)
                        out.push_back(g);
                }
    return out;
}

Rational hurwitz(std::int64_t d)
{
    if (d > 0 || !arith::is_discriminant(d))
        return 0;
    if (d == 0)
        return Rational(-1, 12);
    MemoStore& s = store();
    {
        std::shared_lock lock(s.mutex);
        if (auto it = s.values.find(d); it != s.values.end())
            return it->second;
    }
    Rational h = count_reduced(d, false);
    std::unique_lock lock(s.mutex);
    s.values.emplace(d, h);
    return h;
}

Rational hurwitz_primitive(std::int64_t d)
{
    if (d >= 0 || !arith::is_discriminant(d))
        return 0;
    return count_reduced(d, true);
}

Rational hurwitz_generalized(std::int64_t n, std::int64_t d)
{
    if (n == 1)
        return hurwitz(d);
    arith::require_prime(n, "hurwitz_generalized");
    if (d > 0 || !arith::is_discriminant(d))
        return 0;
    if (d == 0)
        return make_rational(-arith::index_gamma0(n), 12);
    const std::int64_t dp = arith::d_prime(d, n);
    return 2 * hurwitz(d) - (1 - arith::kronecker(dp, n)) * hurwitz(dp);
}

Rational cohen_coeff(std::int64_t n, std::int64_t d)
{
    arith::require_prime(n, "cohen_coeff");
    if (d > 0 || !arith::is_discriminant(d))
        return 0;
    if (d == 0)
        return make_rational(n - 1, 24);
    const std::int64_t dp = arith::d_prime(d, n);
    Rational out = (1 - arith::kronecker(dp, n)) * hurwitz(dp);
    return out / 2;
}

Rational OrbitTable::weighted_count() const
{
    Rational total = 0;
    for (const Orbit& o : orbits)
        total += make_rational(2, o.stabilizer_order);
    total.canonicalize();
    return total;
}

std::size_t OrbitTable::primitive_count() const
{
    return static_cast<std::size_t>(std::count_if(orbits.begin(), orbits.end(), [](const Orbit& o) {
        return o.representative.is_primitive();
    }));
}

std::size_t OrbitTable::level_primitive_count() const
{
    return static_cast<std::size_t>(std::count_if(orbits.begin(), orbits.end(), [this](const Orbit& o) {
        const QuadForm& q = o.representative;
        return std::gcd(std::gcd(q.a / level, q.b), q.c) == 1;
    }));
}

OrbitTable orbit_oracle(std::int64_t n, std::int64_t d, const OracleLimits& limits)
{
    arith::require_prime(n, "orbit_oracle");
    if (d >= 0 || !arith::is_discriminant(d))
        throw DomainError("orbit_oracle: " + std::to_string(d) + " is not a negative discriminant");
    if (-d > limits.max_abs_disc)
        throw CapacityError("orbit_oracle: |D| = " + std::to_string(-d) + " exceeds bound " +
                            std::to_string(limits.max_abs_disc));
    if (n > limits.max_level)
        throw CapacityError("orbit_oracle: level " + std::to_string(n) + " exceeds bound " +
                            std::to_string(limits.max_level));

    OrbitTable table{n, d, {}};
    for (const QuadForm& q : reduced_forms(d)) {
        const std::vector<Mat2> aut = automorphs(q);
        if (aut.size() != 2 && aut.size() != 4 && aut.size() != 6)
            throw InternalError("orbit_oracle: unexpected automorph count for reduced form");

        // Roots of q in P^1(Z/N), indexed 0..N (N stands for (1:0)).
        std::vector<bool> seen(static_cast<std::size_t>(n + 1), false);
        for (std::int64_t idx = 0; idx <= n; ++idx) {
            const std::int64_t x = idx == n ? 1 : idx;
            const std::int64_t y = idx == n ? 0 : 1;
            if (seen[idx] || mod_pos(q(x, y), n) != 0)
                continue;

            std::vector<std::int64_t> orbit;
            for (const Mat2& s : aut) {
                const std::int64_t img = projective_index(s.p * x + s.q * y, s.r * x + s.s * y, n);
                if (std::find(orbit.begin(), orbit.end(), img) == orbit.end())
                    orbit.push_back(img);
            }
            for (const std::int64_t j : orbit)
                seen[j] = true;
            const std::size_t orbit_size = orbit.size();

            // g has first column (x, y); q|g then has leading coefficient q(x, y) = 0 mod N.
            Mat2 g = idx == n ? Mat2{1, 0, 0, 1} : Mat2{x, -1, 1, 0};
            QuadForm rep = act(q, g);
            // Translate b into (-a, a] by a power of T.
            const std::int64_t two_a = 2 * rep.a;
            const std::int64_t b_target = mod_pos(rep.b + rep.a - 1, two_a) - (rep.a - 1);
            const std::int64_t k = (b_target - rep.b) / two_a;
            g = g * Mat2{1, k, 0, 1};
            rep = act(q, g);
            if (rep.a % n != 0 || rep.discriminant() != d)
                throw InternalError("orbit_oracle: representative outside Q_N(D)");

            // Stabilizer of rep in Gamma0(N): conjugates g^-1 s g of automorphs of q.
            int stab = 0;
            const Mat2 g_inv = g.inverse_unimodular();
            for (const Mat2& s : aut) {
                const Mat2 delta = g_inv * s * g;
                if (mod_pos(delta.r, n) == 0 && act(rep, delta) == rep)
                    ++stab;
            }
            if (static_cast<std::size_t>(stab) * orbit_size != aut.size())
                throw InternalError("orbit_oracle: orbit-stabilizer mismatch");
            table.orbits.push_back({rep, stab});
        }
    }
    return table;
}

CountIdentity verify_count_identity(std::int64_t n, std::int64_t d, const OracleLimits& limits)
{
    const OrbitTable table = orbit_oracle(n, d, limits);
    CountIdentity out;
    out.orbit_count = static_cast<std::int64_t>(table.level_primitive_count());
    out.local_roots = arith::sqrt_count(d, n);
    out.shifted_roots = (d % (n * n) == 0) ? arith::sqrt_count(d / (n * n), 1) : 0;
    for (const QuadForm& f : reduced_forms(d))
        if (f.is_primitive())
            ++out.level_one_classes;
    out.holds = out.orbit_count == out.formula_count();
    return out;
}

namespace memo {

std::map<std::int64_t, Rational> snapshot()
{
    MemoStore& s = store();
    std::shared_lock lock(s.mutex);
    return {s.values.begin(), s.values.end()};
}

void seed(const std::map<std::int64_t, Rational>& entries)
{
    MemoStore& s = store();
    std::unique_lock lock(s.mutex);
    for (const auto& [d, h] : entries)
        s.values.emplace(d, h);
}

void clear()
{
    MemoStore& s = store();
    std::unique_lock lock(s.mutex);
    s.values.clear();
}

std::size_t size()
{
    MemoStore& s = store();
    std::shared_lock lock(s.mutex);
    return s.values.size();
}

}  // namespace memo

}  // namespace optmod::classnum
