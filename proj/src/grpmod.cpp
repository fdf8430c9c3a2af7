#include "optmod/grpmod.hpp"

#include <algorithm>
#include <string>

#include "optmod/arith.hpp"
#include "optmod/errors.hpp"
#include "optmod/version.hpp"

namespace optmod::grpmod {

using jacobi::SeriesKind;

VirtualModuleTable VirtualModuleTable::from_traces(std::int64_t n, std::int64_t base_c, DiscSeries trace_e,
                                                   DiscSeries trace_g)
{
    arith::require_prime(n, "VirtualModuleTable");
    if (base_c < 1)
        throw DomainError("VirtualModuleTable: base constant must be positive");
    if (trace_e.dmax() != trace_g.dmax())
        throw InvalidInput("VirtualModuleTable: trace series have different dmax");
    VirtualModuleTable t;
    t.n_ = n;
    t.base_c_ = base_c;
    t.trace_e_ = trace_e.with_kind(SeriesKind::McKayThompson);
    t.trace_g_ = trace_g.with_kind(SeriesKind::McKayThompson);
    for (const auto& [d, te] : t.trace_e_.coeffs()) {
        const Rational& tg = t.trace_g_[d];
        Rational nontrivial = (te - tg) / n;
        Rational trivial = tg + nontrivial;
        nontrivial.canonicalize();
        trivial.canonicalize();
        t.mult_nontrivial_.emplace(d, nontrivial);
        t.mult_trivial_.emplace(d, trivial);
    }
    return t;
}

std::vector<Rational> VirtualModuleTable::character_row(std::int64_t d) const
{
    std::vector<Rational> row(static_cast<std::size_t>(n_), trace_g_.at(d));
    row[0] = trace_e_.at(d);
    return row;
}

std::int64_t eisenstein_c(std::int64_t n)
{
    arith::require_prime(n, "eisenstein_c");
    if (n == 2)
        return 1;
    if (n == 3)
        return 2;
    if (n % 4 == 1)
        return (n * n - 1) / 24;
    return (n * n - 1) / 12;
}

std::int64_t copt(std::int64_t n)
{
    arith::require_prime(n, "copt");
    return arith::level_constants(n).n_hur;
}

std::int64_t genus_X0(std::int64_t n)
{
    arith::require_prime(n, "genus_X0");
    if (n <= 3)
        return 0;
    const std::int64_t nu2 = 1 + arith::kronecker(-4, n);
    const std::int64_t nu3 = 1 + arith::kronecker(-3, n);
    // 12 g = 12 + iota - 3 nu2 - 4 nu3 - 12 nu_oo / 2
    const std::int64_t twelve_g = 12 + arith::index_gamma0(n) - 3 * nu2 - 4 * nu3 - 12;
    if (twelve_g % 12 != 0 || twelve_g < 0)
        throw InternalError("genus_X0: non-integral genus at N = " + std::to_string(n));
    return twelve_g / 12;
}

std::int64_t rank_Lopt(std::int64_t n) { return (n - 1) * genus_X0(n); }

VirtualModuleTable build_eisenstein_module(std::int64_t n, std::int64_t dmax)
{
    const std::int64_t c = eisenstein_c(n);
    return VirtualModuleTable::from_traces(n, c, jacobi::build_SR(1, dmax).scaled(c),
                                           jacobi::build_SR(n, dmax).scaled(c));
}

VirtualModuleTable build_full_module(std::int64_t n, std::int64_t dmax, const DiscSeries& phi)
{
    arith::require_prime(n, "build_full_module");
    if (phi.level() != n)
        throw InvalidInput("build_full_module: cusp series has level " + std::to_string(phi.level()));
    if (phi.dmax() < dmax)
        throw CapacityError("build_full_module: cusp series only reaches dmax " + std::to_string(phi.dmax()));
    const auto lc = arith::level_constants(n);
    const std::int64_t n_tilde = arith::inverse_mod(n, lc.n_coh);
    const DiscSeries sr1 = jacobi::build_SR(1, dmax);
    const DiscSeries srn = jacobi::build_SR(n, dmax);
    const DiscSeries cusp = phi.truncated(dmax);
    const Rational cusp_factor = make_rational(lc.n_hur * n * n_tilde, lc.n_coh);
    const DiscSeries trace_g = jacobi::series_combine({{Rational(lc.n_hur), srn}, {cusp_factor, cusp}});
    if (auto d = trace_g.first_non_integral())
        throw InvalidInput("build_full_module: division by nCoh is inexact at D = " + std::to_string(*d));
    return VirtualModuleTable::from_traces(n, lc.n_hur, sr1.scaled(lc.n_hur), trace_g);
}

bool OptimalityCertificate::valid() const
{
    return std::all_of(checks.begin(), checks.end(), [](const NamedCheck& c) { return c.passed; });
}

const NamedCheck& OptimalityCertificate::check(const std::string& name) const
{
    for (const auto& c : checks)
        if (c.name == name)
            return c;
    throw InvalidInput("certificate has no check named " + name);
}

namespace {

NamedCheck integrality_check(const std::string& name, const DiscSeries& s)
{
    NamedCheck check{name, true, std::nullopt, ""};
    if (auto d = s.first_non_integral()) {
        check.passed = false;
        check.witness = d;
        check.detail = "coefficient " + to_fraction_string(s[*d]) + " at D = " + std::to_string(*d);
    }
    return check;
}

std::optional<std::pair<std::int64_t, std::int64_t>> find_coprime_pair(const DiscSeries& s)
{
    if (!s.is_integral())
        return std::nullopt;
    std::vector<std::pair<std::int64_t, Integer>> seen;
    for (const auto& [d1, v1] : s.coeffs()) {
        const Integer a1 = abs(v1.get_num());
        for (const auto& [d2, a2] : seen)
            if (gcd(a1, a2) == 1)
                return std::make_pair(d1, d2);
        if (a1 != 0)
            seen.emplace_back(d1, a1);
    }
    return std::nullopt;
}

}  // namespace

OptimalityCertificate certify(const VirtualModuleTable& table, std::int64_t c)
{
    if (c < 1)
        throw DomainError("certify: c must be positive");
    OptimalityCertificate cert;
    cert.level = table.level();
    cert.c = c;
    cert.dmax = table.dmax();
    const Rational scale = make_rational(c, table.base_c());
    const DiscSeries te = table.trace_e().scaled(scale);
    const DiscSeries tg = table.trace_g().scaled(scale);

    cert.checks.push_back(integrality_check("integrality_e", te));
    cert.checks.push_back(integrality_check("integrality_g", tg));

    const auto cong = jacobi::series_congruent(te, tg, table.level());
    cert.checks.push_back({"congruence_mod_N", cong.holds, cong.witness, cong.reason});

    NamedCheck constant{"constant_term", true, std::nullopt, ""};
    for (const auto* s : {&te, &tg}) {
        if ((*s)[0] != -c) {
            constant.passed = false;
            constant.witness = 0;
            constant.detail = "constant term " + to_fraction_string((*s)[0]) + " differs from " + std::to_string(-c);
        }
    }
    cert.checks.push_back(constant);

    cert.coprime_witness = find_coprime_pair(tg);
    cert.minimality = cert.coprime_witness ? Minimality::Certified : Minimality::Inconclusive;
    cert.note = te == tg.with_kind(te.kind()) ? "trace_g equals trace_e up to dmax; level N not witnessed"
                                               : "trace_g differs from trace_e; level N witnessed";
    return cert;
}

nlohmann::json to_json(const OptimalityCertificate& cert)
{
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : cert.checks) {
        nlohmann::json j{{"name", c.name}, {"passed", c.passed}};
        j["witness"] = c.witness ? nlohmann::json(*c.witness) : nlohmann::json(nullptr);
        if (!c.detail.empty())
            j["detail"] = c.detail;
        checks.push_back(j);
    }
    nlohmann::json out{{"level", cert.level},       {"c", cert.c},       {"dmax", cert.dmax},
                       {"checks", checks},          {"valid", cert.valid()},
                       {"minimality", cert.minimality == Minimality::Certified ? "certified" : "inconclusive"},
                       {"note", cert.note},         {"version", kVersion}};
    out["coprime_witness"] = cert.coprime_witness
                                 ? nlohmann::json::array({cert.coprime_witness->first, cert.coprime_witness->second})
                                 : nlohmann::json(nullptr);
    return out;
}

}  // namespace optmod::grpmod
