#include "optmod/lfun.hpp"

#include <cmath>
#include <mutex>
#include <numbers>

#include "optmod/arith.hpp"
#include "optmod/classnum.hpp"
#include "optmod/errors.hpp"

namespace optmod::lfun {

std::int64_t NewformTable::at(std::int64_t n) const
{
    if (n < 0 || n > prec)
        throw CapacityError("newform table has precision " + std::to_string(prec) + ", coefficient " +
                            std::to_string(n) + " requested");
    return a[static_cast<std::size_t>(n)];
}

namespace {

// prod_{n >= 1} (1 - x^n)^2 through x^len, by Euler's pentagonal theorem.
std::vector<std::int64_t> euler_squared(std::int64_t len)
{
    std::vector<std::pair<std::int64_t, std::int64_t>> pent{{0, 1}};
    for (std::int64_t k = 1; k * (3 * k - 1) / 2 <= len; ++k) {
        const std::int64_t sign = k % 2 == 0 ? 1 : -1;
        pent.emplace_back(k * (3 * k - 1) / 2, sign);
        if (k * (3 * k + 1) / 2 <= len)
            pent.emplace_back(k * (3 * k + 1) / 2, sign);
    }
    std::vector<std::int64_t> out(static_cast<std::size_t>(len) + 1, 0);
    for (const auto& [e1, s1] : pent)
        for (const auto& [e2, s2] : pent)
            if (e1 + e2 <= len)
                out[static_cast<std::size_t>(e1 + e2)] += s1 * s2;
    return out;
}

}  // namespace

NewformTable eta_newform_11(std::int64_t prec)
{
    if (prec < 2)
        throw DomainError("eta_newform_11: prec must be at least 2");
    const std::int64_t len = prec - 1;  // the product is multiplied by q
    const auto e1 = euler_squared(len);
    const auto e11 = euler_squared(len / 11);
    NewformTable t;
    t.prec = prec;
    t.a.assign(static_cast<std::size_t>(prec) + 1, 0);
    for (std::int64_t j = 0; j <= len / 11; ++j) {
        const std::int64_t c = e11[static_cast<std::size_t>(j)];
        if (c == 0)
            continue;
        for (std::int64_t i = 0; i + 11 * j <= len; ++i)
            t.a[static_cast<std::size_t>(i + 11 * j + 1)] += c * e1[static_cast<std::size_t>(i)];
    }
    return t;
}

std::int64_t truncation_bound(std::int64_t d)
{
    const double absd = static_cast<double>(d < 0 ? -d : d);
    return static_cast<std::int64_t>(std::ceil(12.0 * absd * std::sqrt(11.0)));
}

double twisted_sum(const NewformTable& table, std::int64_t d, std::int64_t terms)
{
    if (terms > table.prec)
        throw CapacityError("twisted_sum: needs " + std::to_string(terms) + " coefficients, table has " +
                            std::to_string(table.prec));
    const long double absd = static_cast<long double>(d < 0 ? -d : d);
    const long double rate = 2.0L * std::numbers::pi_v<long double> / (absd * std::sqrt(11.0L));
    long double sum = 0.0L;
    for (std::int64_t n = 1; n <= terms; ++n) {
        const std::int64_t an = table.a[static_cast<std::size_t>(n)];
        if (an == 0)
            continue;
        const int chi = arith::kronecker(d, n);
        if (chi == 0)
            continue;
        sum += static_cast<long double>(an * chi) / static_cast<long double>(n) *
               std::exp(-rate * static_cast<long double>(n));
    }
    return static_cast<double>(2.0L * sum);
}

double l_value_twist(const NewformTable& table, std::int64_t d)
{
    if (!arith::is_fundamental(d) || d >= 0)
        throw DomainError("l_value_twist: D must be a negative fundamental discriminant");
    if (arith::kronecker(d, 11) != -1)
        throw DomainError("l_value_twist: kronecker(D, 11) must be -1");
    return twisted_sum(table, d, truncation_bound(d));
}

std::string to_string(LStatus status)
{
    switch (status) {
    case LStatus::Nonzero:
        return "nonzero";
    case LStatus::Vanishing:
        return "vanishing";
    case LStatus::Inconclusive:
        break;
    }
    return "inconclusive";
}

double LValueCheck::drift() const { return std::fabs(value - doubled); }

namespace {

std::mutex g_table_mutex;
NewformTable g_table;

NewformTable shared_table(std::int64_t prec)
{
    std::lock_guard<std::mutex> lock(g_table_mutex);
    if (g_table.prec < prec)
        g_table = eta_newform_11(std::max<std::int64_t>(prec, 2 * g_table.prec));
    return g_table;
}

}  // namespace

LValueCheck check_l_value(std::int64_t d)
{
    LValueCheck c;
    c.terms = truncation_bound(d);
    const NewformTable table = shared_table(2 * c.terms);
    c.value = l_value_twist(table, d);
    c.doubled = twisted_sum(table, d, 2 * c.terms);
    if (c.drift() >= kConvergenceTolerance)
        c.status = LStatus::Inconclusive;
    else if (std::fabs(c.value) > kNonzeroThreshold)
        c.status = LStatus::Nonzero;
    else if (std::fabs(c.value) < kConvergenceTolerance)
        c.status = LStatus::Vanishing;
    else
        c.status = LStatus::Inconclusive;
    return c;
}

std::int64_t class_number(std::int64_t d)
{
    if (d >= 0 || !arith::is_fundamental(d))
        throw DomainError("class_number: D must be a negative fundamental discriminant");
    Rational h = classnum::hurwitz(d);
    if (d == -3)
        h *= 3;
    else if (d == -4)
        h *= 2;
    if (!is_integral(h))
        throw InternalError("class_number: non-integral h(" + std::to_string(d) + ")");
    return to_int64(h.get_num());
}

std::string to_string(Verdict verdict)
{
    return verdict == Verdict::FinitePredicted ? "FinitePredicted" : "NoPrediction";
}

std::pair<Integer, Integer> twisted_curve_11(std::int64_t d)
{
    const Integer dd = d;
    return {Integer(-13392) * dd * dd, Integer(-1080432) * dd * dd * dd};
}

TwistPrediction predict(std::int64_t n, std::int64_t d, std::int64_t p, bool with_lvalue)
{
    arith::require_prime(n, "predict");
    if (d >= 0)
        throw DomainError("predict: D = " + std::to_string(d) + " is not negative");
    if (!arith::is_fundamental(d))
        throw DomainError("predict: D = " + std::to_string(d) + " is not a fundamental discriminant");
    if (arith::kronecker(d, n) != -1)
        throw DomainError("predict: kronecker(" + std::to_string(d) + ", " + std::to_string(n) + ") is not -1");
    const auto lc = arith::level_constants(n);
    if (!arith::is_prime(p) || lc.n_coh % p != 0)
        throw DomainError("predict: p = " + std::to_string(p) + " is not a prime divisor of nCoh = " +
                          std::to_string(lc.n_coh));
    TwistPrediction t;
    t.level = n;
    t.d = d;
    t.p = p;
    t.hD = class_number(d);
    t.hD_mod_p = t.hD % p;
    t.criterion = t.hD_mod_p != 0;
    t.verdict = t.criterion ? Verdict::FinitePredicted : Verdict::NoPrediction;
    if (n == 11) {
        t.quotient_exhibited = true;
        t.curve = twisted_curve_11(d);
        if (with_lvalue)
            t.lvalue = check_l_value(d);
    }
    return t;
}

}  // namespace optmod::lfun
