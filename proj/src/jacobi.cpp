#include "optmod/jacobi.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "optmod/arith.hpp"
#include "optmod/classnum.hpp"
#include "optmod/errors.hpp"

namespace optmod::jacobi {

namespace {

constexpr std::array<std::pair<SeriesKind, const char*>, 6> kKindNames{{
    {SeriesKind::Hurwitz, "hurwitz"},
    {SeriesKind::CohenEisenstein, "cohen_eisenstein"},
    {SeriesKind::Rademacher, "rademacher"},
    {SeriesKind::Cuspidal, "cuspidal"},
    {SeriesKind::McKayThompson, "mckay_thompson"},
    {SeriesKind::Combination, "combination"},
}};

void require_dmax(std::int64_t dmax)
{
    if (dmax < 0)
        throw DomainError("series: dmax must be nonnegative, got " + std::to_string(dmax));
}

std::int64_t lcm(std::int64_t a, std::int64_t b)
{
    return a / arith::gcd(a, b) * b;
}

}  // namespace

std::string to_string(SeriesKind kind)
{
    for (const auto& [k, name] : kKindNames)
        if (k == kind)
            return name;
    throw InternalError("unknown series kind");
}

SeriesKind series_kind_from_string(const std::string& name)
{
    for (const auto& [k, n] : kKindNames)
        if (name == n)
            return k;
    throw InvalidInput("unknown series kind '" + name + "'");
}

DiscSeries::DiscSeries(std::int64_t level, SeriesKind kind, std::int64_t dmax)
    : level_(level), kind_(kind), dmax_(dmax)
{
    require_dmax(dmax);
    for (std::int64_t d = 0; d >= -dmax; --d)
        if (arith::is_discriminant(d))
            coeffs_.emplace(d, 0);
}

DiscSeries::DiscSeries(std::int64_t level, SeriesKind kind, std::int64_t dmax, CoeffMap coeffs)
    : level_(level), kind_(kind), dmax_(dmax), coeffs_(std::move(coeffs))
{
    check_invariants();
}

DiscSeries DiscSeries::from_function(std::int64_t level, SeriesKind kind, std::int64_t dmax,
                                     const std::function<Rational(std::int64_t)>& coeff)
{
    require_dmax(dmax);
    CoeffMap coeffs;
    for (std::int64_t d = 0; d >= -dmax; --d)
        if (arith::is_discriminant(d))
            coeffs.emplace(d, coeff(d));
    return DiscSeries(level, kind, dmax, std::move(coeffs));
}

DiscSeries DiscSeries::from_coeffs(std::int64_t level, SeriesKind kind, std::int64_t dmax, CoeffMap coeffs)
{
    require_dmax(dmax);
    return DiscSeries(level, kind, dmax, std::move(coeffs));
}

void DiscSeries::check_invariants() const
{
    std::size_t expected = 0;
    for (std::int64_t d = 0; d >= -dmax_; --d) {
        if (!arith::is_discriminant(d))
            continue;
        ++expected;
        if (!coeffs_.contains(d))
            throw InvalidInput("series: missing coefficient at D = " + std::to_string(d));
    }
    if (coeffs_.size() != expected)
        throw InvalidInput("series: coefficient keys are not exactly the discriminants in [-dmax, 0]");
    if (kind_ == SeriesKind::Cuspidal && coeffs_.at(0) != 0)
        throw InvalidInput("series: cuspidal series with nonzero constant term");
}

Rational DiscSeries::at(std::int64_t d) const
{
    if (d > 0 || !arith::is_discriminant(d))
        return 0;
    if (d < -dmax_)
        throw CapacityError("series: D = " + std::to_string(d) + " beyond dmax " + std::to_string(dmax_));
    return coeffs_.at(d);
}

const Rational& DiscSeries::operator[](std::int64_t d) const
{
    auto it = coeffs_.find(d);
    if (it == coeffs_.end())
        throw InvalidInput("series: no coefficient stored at D = " + std::to_string(d));
    return it->second;
}

bool DiscSeries::is_integral() const
{
    return !first_non_integral().has_value();
}

std::optional<std::int64_t> DiscSeries::first_non_integral() const
{
    for (const auto& [d, c] : coeffs_)
        if (!optmod::is_integral(c))
            return d;
    return std::nullopt;
}

DiscSeries DiscSeries::scaled(const Rational& factor) const
{
    CoeffMap out;
    for (const auto& [d, c] : coeffs_)
        out.emplace(d, Rational(c * factor));
    return DiscSeries(level_, kind_, dmax_, std::move(out));
}

DiscSeries DiscSeries::truncated(std::int64_t dmax) const
{
    if (dmax > dmax_)
        throw CapacityError("series: cannot extend dmax " + std::to_string(dmax_) + " to " + std::to_string(dmax));
    require_dmax(dmax);
    CoeffMap out;
    for (const auto& [d, c] : coeffs_)
        if (d >= -dmax)
            out.emplace(d, c);
    return DiscSeries(level_, kind_, dmax, std::move(out));
}

DiscSeries DiscSeries::with_kind(SeriesKind kind) const
{
    return DiscSeries(level_, kind, dmax_, coeffs_);
}

DiscSeries build_SH(std::int64_t n, std::int64_t dmax)
{
    if (n != 1)
        arith::require_prime(n, "build_SH");
    return DiscSeries::from_function(n, SeriesKind::Hurwitz, dmax,
                                     [n](std::int64_t d) { return classnum::hurwitz_generalized(n, d); });
}

DiscSeries build_SCoh(std::int64_t n, std::int64_t dmax)
{
    arith::require_prime(n, "build_SCoh");
    return DiscSeries::from_function(n, SeriesKind::CohenEisenstein, dmax,
                                     [n](std::int64_t d) { return classnum::cohen_coeff(n, d); });
}

DiscSeries build_SR(std::int64_t n, std::int64_t dmax)
{
    if (n != 1)
        arith::require_prime(n, "build_SR");
    // Moebius sum over divisors M of N of mu(N/M) (M / iota(M)) SH_M.
    std::vector<std::pair<Rational, std::int64_t>> weights;
    for (std::int64_t m = 1; m <= n; ++m) {
        if (n % m != 0)
            continue;
        const int mu = arith::moebius(n / m);
        if (mu == 0)
            continue;
        weights.emplace_back(make_rational(mu * m, arith::index_gamma0(m)), m);
    }
    const Rational scale = make_rational(12, arith::totient(n));
    return DiscSeries::from_function(n, SeriesKind::Rademacher, dmax, [&](std::int64_t d) {
        Rational total = 0;
        for (const auto& [w, m] : weights)
            total += w * classnum::hurwitz_generalized(m, d);
        return Rational(scale * total);
    });
}

DiscSeries series_combine(const std::vector<std::pair<Rational, DiscSeries>>& terms)
{
    if (terms.empty())
        throw InvalidInput("series_combine: empty combination");
    std::int64_t dmax = terms.front().second.dmax();
    std::int64_t level = 1;
    for (const auto& [c, s] : terms) {
        dmax = std::min(dmax, s.dmax());
        level = lcm(level, s.level());
    }
    CoeffMap out;
    for (std::int64_t d = 0; d >= -dmax; --d) {
        if (!arith::is_discriminant(d))
            continue;
        Rational total = 0;
        for (const auto& [c, s] : terms)
            total += c * s[d];
        out.emplace(d, total);
    }
    return DiscSeries::from_coeffs(level, SeriesKind::Combination, dmax, std::move(out));
}

CongruenceCertificate series_congruent(const DiscSeries& a, const DiscSeries& b, std::int64_t modulus)
{
    if (modulus < 1)
        throw DomainError("series_congruent: modulus must be positive");
    CongruenceCertificate cert;
    cert.modulus = modulus;
    cert.dmax = std::min(a.dmax(), b.dmax());
    for (std::int64_t d = 0; d >= -cert.dmax; --d) {
        if (!arith::is_discriminant(d))
            continue;
        const Rational diff = a[d] - b[d];
        if (!is_integral(diff)) {
            cert.witness = d;
            cert.reason = "difference " + to_fraction_string(diff) + " at D = " + std::to_string(d) +
                          " is not an integer";
            return cert;
        }
        if (!mpz_divisible_ui_p(diff.get_num().get_mpz_t(), static_cast<unsigned long>(modulus))) {
            cert.witness = d;
            cert.reason = "difference " + diff.get_num().get_str() + " at D = " + std::to_string(d) +
                          " is not divisible by " + std::to_string(modulus);
            return cert;
        }
    }
    cert.holds = true;
    return cert;
}

Rational QYExpansion::at(std::int64_t n, std::int64_t s) const
{
    auto it = terms.find({n, s});
    return it == terms.end() ? Rational(0) : it->second;
}

QYExpansion pack_qy(const DiscSeries& series, std::int64_t nmax)
{
    if (nmax < 0)
        throw DomainError("pack_qy: nmax must be nonnegative");
    if (series.dmax() < 4 * nmax)
        throw CapacityError("pack_qy: dmax " + std::to_string(series.dmax()) + " < 4 * nmax = " +
                            std::to_string(4 * nmax));
    QYExpansion out{nmax, {}};
    for (std::int64_t n = 0; n <= nmax; ++n)
        for (std::int64_t s = 0; s * s <= 4 * n; ++s) {
            const Rational& c = series[s * s - 4 * n];
            out.terms.emplace(std::make_pair(n, s), c);
            if (s != 0)
                out.terms.emplace(std::make_pair(n, -s), c);
        }
    return out;
}

QTable pack_plus_space(const DiscSeries& series)
{
    QTable out;
    for (const auto& [d, c] : series.coeffs())
        out.emplace(-d, c);
    return out;
}

DiscSeries series_from_plus_space(std::int64_t level, SeriesKind kind, std::int64_t dmax, const QTable& table)
{
    return DiscSeries::from_function(level, kind, dmax, [&](std::int64_t d) {
        auto it = table.find(-d);
        if (it == table.end())
            throw CapacityError("series_from_plus_space: table has no entry for n = " + std::to_string(-d));
        return it->second;
    });
}

ThetaExpansion theta_expansion(std::int64_t m, std::int64_t r, std::int64_t nmax)
{
    if (m < 1)
        throw DomainError("theta_expansion: index must be positive");
    ThetaExpansion out;
    out.m = m;
    out.r = ((r % (2 * m)) + 2 * m) % (2 * m);
    out.nmax = nmax;
    const std::int64_t bound = 4 * m * nmax;
    for (std::int64_t s = 0; s * s <= bound; ++s) {
        for (const std::int64_t t : {s, -s}) {
            if (((t - out.r) % (2 * m)) != 0)
                continue;
            out.terms[{t * t, t}] = 1;
        }
    }
    return out;
}

std::map<std::int64_t, std::int64_t> thetanull(std::int64_t m, std::int64_t r, std::int64_t nmax)
{
    std::map<std::int64_t, std::int64_t> out;
    for (const auto& [key, coeff] : theta_expansion(m, r, nmax).terms)
        out[key.first] += coeff;
    return out;
}

std::array<TdComponent, 2> build_t_d(std::int64_t d, std::int64_t nmax)
{
    if (d < 1)
        throw DomainError("build_t_d: d must be positive");
    std::array<TdComponent, 2> out;
    for (std::int64_t s = 0; s < 2; ++s) {
        TdComponent& c = out[s];
        c.s = s;
        c.antiholomorphic_scale = 4 * d * d;
        c.antiholomorphic = thetanull(d * d, s * d * d, nmax);
        c.holomorphic = theta_expansion(1, s * d, nmax);
    }
    return out;
}

nlohmann::json integer_to_json(const Integer& z)
{
    if (z.fits_slong_p())
        return static_cast<std::int64_t>(z.get_si());
    return z.get_str();
}

Integer integer_from_json(const nlohmann::json& j)
{
    if (j.is_number_integer())
        return Integer(static_cast<long>(j.get<std::int64_t>()));
    if (j.is_string())
        return Integer(j.get<std::string>());
    throw InvalidInput("expected integer in JSON, got " + j.dump());
}

nlohmann::json to_json(const DiscSeries& series)
{
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& [d, c] : series.coeffs())
        coeffs.push_back({d, integer_to_json(c.get_num()), integer_to_json(c.get_den())});
    return {{"level", series.level()},
            {"kind", to_string(series.kind())},
            {"dmax", series.dmax()},
            {"coeffs", std::move(coeffs)}};
}

DiscSeries series_from_json(const nlohmann::json& j)
{
    try {
        CoeffMap coeffs;
        for (const auto& row : j.at("coeffs")) {
            if (!row.is_array() || row.size() != 3)
                throw InvalidInput("series JSON: coefficient rows must be [D, num, den]");
            const Integer den = integer_from_json(row[2]);
            if (den <= 0)
                throw InvalidInput("series JSON: nonpositive denominator");
            coeffs.emplace(row[0].get<std::int64_t>(), make_rational(integer_from_json(row[1]), den));
        }
        return DiscSeries::from_coeffs(j.at("level").get<std::int64_t>(),
                                       series_kind_from_string(j.at("kind").get<std::string>()),
                                       j.at("dmax").get<std::int64_t>(), std::move(coeffs));
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("series JSON: ") + e.what());
    }
}

}  // namespace optmod::jacobi
