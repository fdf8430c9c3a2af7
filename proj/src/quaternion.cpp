#include "optmod/quaternion.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <string>

#include "optmod/arith.hpp"
#include "optmod/classnum.hpp"
#include "optmod/errors.hpp"

namespace optmod::quaternion {

namespace {

std::int64_t valuation(std::int64_t& x, std::int64_t p)
{
    std::int64_t v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

std::int64_t mod_pos(std::int64_t x, std::int64_t m)
{
    const std::int64_t r = x % m;
    return r < 0 ? r + m : r;
}

}  // namespace

int hilbert_symbol(std::int64_t a, std::int64_t b, std::int64_t p)
{
    if (a == 0 || b == 0)
        throw DomainError("hilbert_symbol: arguments must be nonzero");
    if (p == 0)
        return (a < 0 && b < 0) ? -1 : 1;
    if (!arith::is_prime(p))
        throw DomainError("hilbert_symbol: p must be prime or 0");
    std::int64_t u = a;
    std::int64_t v = b;
    const std::int64_t alpha = valuation(u, p);
    const std::int64_t beta = valuation(v, p);
    if (p == 2) {
        auto eps = [](std::int64_t x) { return mod_pos((mod_pos(x, 8) - 1) / 2, 2); };
        auto omega = [](std::int64_t x) {
            const std::int64_t r = mod_pos(x, 8);
            return (r * r - 1) / 8 % 2;
        };
        const std::int64_t e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u);
        return e % 2 == 0 ? 1 : -1;
    }
    int sign = ((alpha * beta) % 2 == 1 && (p - 1) / 2 % 2 == 1) ? -1 : 1;
    if (beta % 2 == 1)
        sign *= arith::kronecker(u, p);
    if (alpha % 2 == 1)
        sign *= arith::kronecker(v, p);
    return sign;
}

std::vector<std::int64_t> ramified_places(const QuaternionAlgebra& alg)
{
    std::vector<std::int64_t> places;
    if (hilbert_symbol(alg.a, alg.b, 0) == -1)
        places.push_back(0);
    std::vector<std::int64_t> primes{2};
    for (std::int64_t x : {alg.a, alg.b})
        for (const auto& [p, e] : arith::factor(x < 0 ? -x : x))
            primes.push_back(p);
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    for (std::int64_t p : primes)
        if (hilbert_symbol(alg.a, alg.b, p) == -1)
            places.push_back(p);
    return places;
}

QuaternionAlgebra ramified_algebra(std::int64_t n)
{
    arith::require_prime(n, "ramified_algebra");
    const std::vector<std::int64_t> want{0, n};
    auto accept = [&](QuaternionAlgebra alg) { return ramified_places(alg) == want; };
    QuaternionAlgebra alg;
    if (n == 2)
        alg = {-1, -1};
    else if (n % 4 == 3)
        alg = {-1, -n};
    else if (n % 8 == 5)
        alg = {-2, -n};
    else {
        for (std::int64_t q = 3; q < 10000; q += 4) {
            if (!arith::is_prime(q) || arith::kronecker(n, q) != -1)
                continue;
            if (accept({-q, -n}))
                return {-q, -n};
        }
        throw CapacityError("ramified_algebra: no auxiliary prime below 10000 for N = " + std::to_string(n));
    }
    if (!accept(alg))
        throw InternalError("ramified_algebra: Hilbert symbol check failed for N = " + std::to_string(n));
    return alg;
}

Quat mul(const QuaternionAlgebra& alg, const Quat& x, const Quat& y)
{
    const Rational a = alg.a;
    const Rational b = alg.b;
    return {x[0] * y[0] + a * x[1] * y[1] + b * x[2] * y[2] - a * b * x[3] * y[3],
            x[0] * y[1] + x[1] * y[0] - b * x[2] * y[3] + b * x[3] * y[2],
            x[0] * y[2] + x[2] * y[0] + a * x[1] * y[3] - a * x[3] * y[1],
            x[0] * y[3] + x[3] * y[0] + x[1] * y[2] - x[2] * y[1]};
}

Quat conj(const Quat& x) { return {x[0], -x[1], -x[2], -x[3]}; }

Rational nrd(const QuaternionAlgebra& alg, const Quat& x)
{
    const Rational a = alg.a;
    const Rational b = alg.b;
    return x[0] * x[0] - a * x[1] * x[1] - b * x[2] * x[2] + a * b * x[3] * x[3];
}

Rational trd(const Quat& x) { return 2 * x[0]; }

Rational pair(const QuaternionAlgebra& alg, const Quat& x, const Quat& y)
{
    const Rational a = alg.a;
    const Rational b = alg.b;
    return 2 * (x[0] * y[0] - a * x[1] * y[1] - b * x[2] * y[2] + a * b * x[3] * y[3]);
}

// ---------------------------------------------------------------- lattices

namespace {

using Row = std::array<Integer, 4>;

void row_sub(Row& target, const Row& src, const Integer& q)
{
    for (int c = 0; c < 4; ++c)
        target[c] -= q * src[c];
}

std::vector<Row> hermite_normal_form(std::vector<Row> m)
{
    std::size_t r = 0;
    for (int col = 0; col < 4 && r < m.size(); ++col) {
        while (true) {
            std::size_t best = m.size();
            for (std::size_t i = r; i < m.size(); ++i)
                if (m[i][col] != 0 && (best == m.size() || abs(m[i][col]) < abs(m[best][col])))
                    best = i;
            if (best == m.size())
                break;
            std::swap(m[r], m[best]);
            bool clean = true;
            for (std::size_t i = r + 1; i < m.size(); ++i) {
                if (m[i][col] == 0)
                    continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), m[i][col].get_mpz_t(), m[r][col].get_mpz_t());
                row_sub(m[i], m[r], q);
                if (m[i][col] != 0)
                    clean = false;
            }
            if (clean)
                break;
        }
        if (r >= m.size() || m[r][col] == 0)
            continue;
        if (m[r][col] < 0)
            for (auto& e : m[r])
                e = -e;
        for (std::size_t i = 0; i < r; ++i) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), m[i][col].get_mpz_t(), m[r][col].get_mpz_t());
            row_sub(m[i], m[r], q);
        }
        ++r;
    }
    m.resize(r);
    return m;
}

}  // namespace

Lattice Lattice::from_generators(const std::vector<Quat>& gens)
{
    Integer den = 1;
    for (const auto& g : gens)
        for (const auto& c : g)
            den = lcm(den, Integer(c.get_den()));
    std::vector<Row> rows;
    rows.reserve(gens.size());
    for (const auto& g : gens) {
        Row row;
        bool zero = true;
        for (int c = 0; c < 4; ++c) {
            Rational scaled = g[c] * den;
            row[c] = scaled.get_num();
            zero = zero && row[c] == 0;
        }
        if (!zero)
            rows.push_back(std::move(row));
    }
    rows = hermite_normal_form(std::move(rows));
    Integer content = den;
    for (const auto& row : rows)
        for (const auto& e : row)
            content = gcd(content, e);
    Lattice l;
    l.den_ = den / content;
    for (auto& row : rows) {
        for (auto& e : row)
            e /= content;
        Quat q;
        for (int c = 0; c < 4; ++c)
            q[c] = make_rational(row[c], l.den_);
        l.basis_.push_back(q);
    }
    l.rows_ = std::move(rows);
    return l;
}

bool Lattice::contains(const Quat& x) const
{
    Row v;
    for (int c = 0; c < 4; ++c) {
        Rational s = x[c] * den_;
        if (!is_integral(s))
            return false;
        v[c] = s.get_num();
    }
    for (const auto& row : rows_) {
        int pivot = 0;
        while (row[pivot] == 0)
            ++pivot;
        if (!mpz_divisible_p(v[pivot].get_mpz_t(), row[pivot].get_mpz_t()))
            return false;
        row_sub(v, row, v[pivot] / row[pivot]);
    }
    return std::all_of(v.begin(), v.end(), [](const Integer& e) { return e == 0; });
}

Lattice Lattice::conjugate() const
{
    std::vector<Quat> gens;
    for (const auto& b : basis_)
        gens.push_back(conj(b));
    return from_generators(gens);
}

Lattice Lattice::scaled(const Rational& s) const
{
    std::vector<Quat> gens;
    for (const auto& b : basis_)
        gens.push_back({b[0] * s, b[1] * s, b[2] * s, b[3] * s});
    return from_generators(gens);
}

Lattice product(const QuaternionAlgebra& alg, const Lattice& x, const Lattice& y)
{
    std::vector<Quat> gens;
    for (const auto& u : x.basis())
        for (const auto& v : y.basis())
            gens.push_back(mul(alg, u, v));
    return Lattice::from_generators(gens);
}

lattice::GramMatrix gram(const QuaternionAlgebra& alg, const Lattice& l, const Rational& scale)
{
    const auto& b = l.basis();
    lattice::GramMatrix g(b.size(), std::vector<std::int64_t>(b.size()));
    for (std::size_t i = 0; i < b.size(); ++i) {
        for (std::size_t j = i; j < b.size(); ++j) {
            const Rational v = pair(alg, b[i], b[j]) / scale;
            if (!is_integral(v))
                throw InternalError("gram: non-integral entry " + to_fraction_string(v));
            g[i][j] = g[j][i] = to_int64(v.get_num());
        }
    }
    return g;
}

// ------------------------------------------------------------------ orders

namespace {

Quat q(long x0, long x1, long x2, long x3, long den = 1)
{
    return {make_rational(x0, den), make_rational(x1, den), make_rational(x2, den), make_rational(x3, den)};
}

std::int64_t half_unit_count(const lattice::GramMatrix& g)
{
    const auto counts = lattice::theta_counts(g, 1);
    if (counts[1] % 2 != 0 || counts[1] == 0)
        throw InternalError("order has an odd or empty unit count");
    return counts[1] / 2;
}

}  // namespace

QuatOrder make_order(const QuaternionAlgebra& alg, const Lattice& l, std::int64_t n)
{
    if (l.rank() != 4)
        throw InternalError("make_order: lattice has rank " + std::to_string(l.rank()));
    if (!l.contains(q(1, 0, 0, 0)))
        throw InternalError("make_order: lattice does not contain 1");
    for (const auto& x : l.basis())
        for (const auto& y : l.basis())
            if (!l.contains(mul(alg, x, y)))
                throw InternalError("make_order: lattice is not closed under multiplication");
    QuatOrder o;
    o.algebra = alg;
    o.lattice = l;
    o.gram = gram(alg, l);
    const std::int64_t det = lattice::determinant(o.gram);
    if (det != n * n)
        throw InternalError("make_order: discriminant " + std::to_string(det) + " differs from N^2 = " +
                            std::to_string(n * n));
    o.w = half_unit_count(o.gram);
    return o;
}

QuatOrder maximal_order(const QuaternionAlgebra& alg, std::int64_t n)
{
    arith::require_prime(n, "maximal_order");
    std::vector<Quat> gens;
    if (n == 2) {
        gens = {q(1, 0, 0, 0), q(0, 1, 0, 0), q(0, 0, 1, 0), q(1, 1, 1, 1, 2)};
    } else if (n % 4 == 3) {
        gens = {q(1, 0, 1, 0, 2), q(0, 1, 0, 1, 2), q(0, 0, 1, 0), q(0, 0, 0, 1)};
    } else if (n % 8 == 5) {
        gens = {q(1, 0, 1, 1, 2), q(0, 1, 2, 1, 4), q(0, 0, 1, 0), q(0, 0, 0, 1)};
    } else {
        const std::int64_t p = -alg.a;
        std::int64_t c = 0;
        while (c < p && mod_pos(c * c % p * (n % p) + 1, p) != 0)
            ++c;
        if (c == p)
            throw InternalError("maximal_order: no square root of -1/N mod " + std::to_string(p));
        gens = {q(1, 1, 0, 0, 2), q(0, 0, 1, -1, 2), {0, make_rational(1, p), 0, make_rational(-c, p)},
                q(0, 0, 0, 1)};
    }
    return make_order(alg, Lattice::from_generators(gens), n);
}

std::vector<std::int64_t> IdealClassSet::weights() const
{
    std::vector<std::int64_t> w;
    for (const auto& c : classes)
        w.push_back(c.right_order.w);
    return w;
}

// --------------------------------------------------------- ideal classes

namespace {

// Left ideals of norm ell of the order o: R x + ell R with nrd(x) = 0 mod ell.
std::vector<Lattice> left_ideals_of_norm(const QuatOrder& o, std::int64_t ell)
{
    const auto& basis = o.lattice.basis();
    std::vector<Quat> ell_r;
    for (const auto& e : basis)
        ell_r.push_back({e[0] * ell, e[1] * ell, e[2] * ell, e[3] * ell});
    std::vector<Lattice> out;
    std::array<std::int64_t, 4> c{};
    const std::int64_t total = ell * ell * ell * ell;
    for (std::int64_t idx = 1; idx < total; ++idx) {
        std::int64_t t = idx;
        for (auto& ci : c) {
            ci = t % ell;
            t /= ell;
        }
        Quat x{0, 0, 0, 0};
        for (int i = 0; i < 4; ++i)
            for (int k = 0; k < 4; ++k)
                x[k] += basis[i][k] * c[i];
        const Rational nx = nrd(o.algebra, x);
        if (!mpz_divisible_ui_p(nx.get_num().get_mpz_t(), static_cast<unsigned long>(ell)))
            continue;
        std::vector<Quat> gens = ell_r;
        for (const auto& e : basis)
            gens.push_back(mul(o.algebra, e, x));
        Lattice k = Lattice::from_generators(gens);
        if (std::find(out.begin(), out.end(), k) == out.end())
            out.push_back(std::move(k));
    }
    if (out.size() != static_cast<std::size_t>(ell + 1))
        throw InternalError("found " + std::to_string(out.size()) + " left ideals of norm " + std::to_string(ell) +
                            ", expected " + std::to_string(ell + 1));
    return out;
}

std::vector<std::int64_t> ideal_theta(const QuaternionAlgebra& alg, const Lattice& i, const Integer& ni,
                                      std::int64_t prec)
{
    return lattice::theta_counts(gram(alg, i, Rational(ni)), prec);
}

std::mutex g_class_mutex;
std::map<std::int64_t, IdealClassSet> g_class_cache;

}  // namespace

bool equivalent(const QuaternionAlgebra& alg, const Lattice& i, const Integer& ni, const Lattice& j,
                const Integer& nj)
{
    const Lattice l = product(alg, i.conjugate(), j);
    const auto g = gram(alg, l, Rational(ni * nj));
    return lattice::theta_counts(g, 1)[1] > 0;
}

IdealClassSet ideal_classes(std::int64_t n, const ClassSearchLimits& limits)
{
    arith::require_prime(n, "ideal_classes");
    if (n > limits.max_level)
        throw CapacityError("ideal_classes: N = " + std::to_string(n) + " exceeds the supported bound " +
                            std::to_string(limits.max_level));
    {
        std::lock_guard<std::mutex> lock(g_class_mutex);
        auto it = g_class_cache.find(n);
        if (it != g_class_cache.end())
            return it->second;
    }

    IdealClassSet set;
    set.level = n;
    set.algebra = ramified_algebra(n);
    const QuaternionAlgebra& alg = set.algebra;
    const QuatOrder base = maximal_order(alg, n);
    set.classes.push_back({base.lattice, Integer(1), base});
    set.mass = make_rational(1, base.w);
    const Rational target = make_rational(n - 1, 12);
    const std::int64_t prec = 4 * n;
    std::vector<std::vector<std::int64_t>> thetas{ideal_theta(alg, base.lattice, 1, prec)};

    for (std::int64_t ell : {2, 3, 5}) {
        if (ell == n || set.mass == target)
            continue;
        std::deque<std::size_t> queue;
        for (std::size_t c = 0; c < set.classes.size(); ++c)
            queue.push_back(c);
        while (!queue.empty() && set.mass < target) {
            const IdealClass current = set.classes[queue.front()];
            queue.pop_front();
            for (const auto& k : left_ideals_of_norm(current.right_order, ell)) {
                Lattice j = product(alg, current.ideal, k);
                const Integer nj = current.norm * ell;
                const auto theta = ideal_theta(alg, j, nj, prec);
                bool known = false;
                for (std::size_t c = 0; c < set.classes.size() && !known; ++c)
                    known = thetas[c] == theta &&
                            equivalent(alg, set.classes[c].ideal, set.classes[c].norm, j, nj);
                if (known)
                    continue;
                const Lattice right = product(alg, j.conjugate(), j).scaled(Rational(1) / Rational(nj));
                QuatOrder order = make_order(alg, right, n);
                set.mass += make_rational(1, order.w);
                set.classes.push_back({std::move(j), nj, std::move(order)});
                thetas.push_back(theta);
                queue.push_back(set.classes.size() - 1);
                if (set.mass > target)
                    throw InternalError("ideal_classes: mass " + to_fraction_string(set.mass) + " exceeds " +
                                        to_fraction_string(target) + " at N = " + std::to_string(n));
                if (set.classes.size() > limits.max_classes)
                    throw CapacityError("ideal_classes: more than " + std::to_string(limits.max_classes) +
                                        " classes at N = " + std::to_string(n));
                if (set.mass == target)
                    break;
            }
        }
    }
    if (set.mass != target)
        throw CapacityError("ideal_classes: neighbour search stalled at mass " + to_fraction_string(set.mass) +
                            " for N = " + std::to_string(n));

    std::lock_guard<std::mutex> lock(g_class_mutex);
    g_class_cache.emplace(n, set);
    return set;
}

// ------------------------------------------------------------------ thetas

ThetaTable theta_trace_zero(const QuatOrder& order, std::int64_t prec)
{
    if (prec < 4)
        throw DomainError("theta_trace_zero: prec must be at least 4");
    std::vector<Quat> gens;
    for (const auto& e : order.lattice.basis()) {
        const Quat c = conj(e);
        gens.push_back({e[0] - c[0], e[1] - c[1], e[2] - c[2], e[3] - c[3]});
    }
    const Lattice s0 = Lattice::from_generators(gens);
    if (s0.rank() != 3)
        throw InternalError("theta_trace_zero: trace-zero lattice has rank " + std::to_string(s0.rank()));
    ThetaTable t;
    t.prec = prec;
    t.coeffs = lattice::theta_counts(gram(order.algebra, s0), prec);
    for (std::int64_t k = 0; k <= prec; ++k)
        if (t.coeffs[k] != 0 && k % 4 != 0 && k % 4 != 3)
            throw InternalError("theta_trace_zero: norm " + std::to_string(k) + " outside the plus-space support");
    return t;
}

std::vector<Rational> theta_xE(const IdealClassSet& set, std::int64_t prec)
{
    const auto lc = arith::level_constants(set.level);
    std::vector<Rational> out(static_cast<std::size_t>(prec) + 1, Rational(0));
    for (const auto& c : set.classes) {
        const ThetaTable t = theta_trace_zero(c.right_order, prec);
        const Rational weight = make_rational(lc.d_coh, 2 * c.right_order.w);
        for (std::int64_t k = 0; k <= prec; ++k)
            out[k] += weight * t.coeffs[k];
    }
    for (auto& v : out)
        v.canonicalize();
    return out;
}

jacobi::DiscSeries build_phiN(const IdealClassSet& set, std::int64_t dmax)
{
    const std::int64_t n = set.level;
    const auto lc = arith::level_constants(n);
    const auto xe = theta_xE(set, dmax);
    if (xe[0] != make_rational(lc.n_coh, 2))
        throw InternalError("build_phiN: theta(x_E) has constant term " + to_fraction_string(xe[0]));
    const ThetaTable base = theta_trace_zero(set.classes.front().right_order, dmax);
    jacobi::CoeffMap coeffs;
    for (std::int64_t d = 0; d >= -dmax; --d) {
        if (!arith::is_discriminant(d))
            continue;
        Rational v = xe[-d] - make_rational(lc.n_coh, 2) * base.coeffs[-d];
        v.canonicalize();
        if (!is_integral(v))
            throw InternalError("build_phiN: non-integral coefficient " + to_fraction_string(v) + " at D = " +
                                std::to_string(d));
        coeffs.emplace(d, v);
    }
    return jacobi::DiscSeries::from_coeffs(n, jacobi::SeriesKind::Cuspidal, dmax, std::move(coeffs));
}

jacobi::DiscSeries build_phiN(std::int64_t n, std::int64_t dmax)
{
    arith::require_prime(n, "build_phiN");
    if (dmax < 4)
        throw DomainError("build_phiN: dmax must be at least 4");
    if (arith::level_constants(n).n_coh == 1)
        return jacobi::DiscSeries(n, jacobi::SeriesKind::Cuspidal, dmax);
    return build_phiN(ideal_classes(n), dmax);
}

jacobi::CongruenceCertificate verify_lemma_congruence(std::int64_t n, std::int64_t dmax)
{
    const auto lc = arith::level_constants(n);
    const auto scoh = jacobi::build_SCoh(n, dmax);
    const auto lhs = jacobi::DiscSeries::from_function(n, jacobi::SeriesKind::Combination, dmax, [&](std::int64_t d) {
        return d == 0 ? Rational(0) : Rational(lc.d_coh) * scoh[d];
    });
    return jacobi::series_congruent(lhs, build_phiN(n, dmax), lc.n_coh);
}

}  // namespace optmod::quaternion
