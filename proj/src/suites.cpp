#include "optmod/suites.hpp"

#include <functional>
#include <map>
#include <optional>

#include "optmod/arith.hpp"
#include "optmod/classnum.hpp"
#include "optmod/errors.hpp"
#include "optmod/grpmod.hpp"
#include "optmod/jacobi.hpp"
#include "optmod/quaternion.hpp"

namespace optmod::suites {

namespace {

using Witness = std::optional<std::string>;

std::string at_d(std::int64_t d) { return "D=" + std::to_string(d); }

struct Builder {
    std::string suite;
    std::int64_t level;
    std::int64_t dmax;
    std::vector<CheckOutcome> out;

    void add(const std::string& name, bool passed, const std::string& witness = "", const std::string& detail = "")
    {
        out.push_back({suite, name, level, dmax, passed, passed ? "" : witness, detail});
    }

    // First D in [-dmax, 0] (descending) where pred fails.
    void scan(const std::string& name, std::int64_t lo, const std::function<std::optional<std::string>(std::int64_t)>& pred)
    {
        for (std::int64_t d = 0; d >= -lo; --d) {
            if (!arith::is_discriminant(d))
                continue;
            if (auto why = pred(d)) {
                add(name, false, at_d(d), *why);
                return;
            }
        }
        add(name, true);
    }
};

std::vector<std::int64_t> proper_divisors(std::int64_t c)
{
    std::vector<std::int64_t> out;
    for (std::int64_t k = 1; k < c; ++k)
        if (c % k == 0)
            out.push_back(k);
    return out;
}

void lemma21(Builder& b)
{
    const std::int64_t n = b.level;
    b.scan("hurwitz-split", b.dmax, [n](std::int64_t d) -> Witness {
        const Rational lhs = classnum::hurwitz(d);
        const Rational rhs = classnum::cohen_coeff(n, d) + classnum::hurwitz_generalized(n, d) / 2;
        if (lhs == rhs)
            return std::nullopt;
        return "H = " + to_fraction_string(lhs) + " but HCoh + HN/2 = " + to_fraction_string(rhs);
    });
    b.scan("fundamental-values", b.dmax, [n](std::int64_t d) -> Witness {
        if (d == 0 || !arith::is_fundamental(d))
            return std::nullopt;
        const int chi = arith::kronecker(d, n);
        const Rational h = classnum::hurwitz(d);
        if (classnum::hurwitz_generalized(n, d) != (1 + chi) * h)
            return std::string("HN(D) differs from (1 + (D/N)) H(D)");
        if (classnum::cohen_coeff(n, d) != Rational(1 - chi) * h / 2)
            return std::string("HCoh(D) differs from (1 - (D/N)) H(D) / 2");
        return std::nullopt;
    });
}

void integrality(Builder& b)
{
    const auto lc = arith::level_constants(b.level);
    const std::int64_t n = b.level;
    b.scan("dHur-HN", b.dmax, [&](std::int64_t d) -> Witness {
        const Rational v = lc.d_hur * classnum::hurwitz_generalized(n, d);
        return d == 0 || is_integral(v) ? Witness{} : Witness{"dHur*HN = " + to_fraction_string(v)};
    });
    b.scan("dCoh-HCoh", b.dmax, [&](std::int64_t d) -> Witness {
        const Rational v = lc.d_coh * classnum::cohen_coeff(n, d);
        return d == 0 || is_integral(v) ? Witness{} : Witness{"dCoh*HCoh = " + to_fraction_string(v)};
    });
}

void count_identity(Builder& b)
{
    const std::int64_t n = b.level;
    b.scan("orbit-oracle", b.dmax, [n](std::int64_t d) -> Witness {
        if (d == 0)
            return std::nullopt;
        const Rational oracle = classnum::orbit_oracle(n, d).weighted_count();
        const Rational formula = classnum::hurwitz_generalized(n, d);
        if (oracle == formula)
            return std::nullopt;
        return "orbits give " + to_fraction_string(oracle) + ", formula gives " + to_fraction_string(formula);
    });
    b.scan("orbit-count", b.dmax, [n](std::int64_t d) -> Witness {
        if (d == 0)
            return std::nullopt;
        const auto c = classnum::verify_count_identity(n, d);
        if (c.holds)
            return std::nullopt;
        return "level-primitive orbits " + std::to_string(c.orbit_count) + " vs " + std::to_string(c.formula_count());
    });
}

void eisenstein_identities(Builder& b)
{
    const std::int64_t n = b.level;
    const auto lc = arith::level_constants(n);
    const std::int64_t c = grpmod::eisenstein_c(n);
    b.add("cEis-equals-nHur-nCoh", c == lc.n_hur * lc.n_coh, "N=" + std::to_string(n));
    const auto sr1 = jacobi::build_SR(1, b.dmax);
    const auto srn = jacobi::build_SR(n, b.dmax);
    const auto sh = jacobi::build_SH(n, b.dmax);
    const auto sc = jacobi::build_SCoh(n, b.dmax);
    const Integer a = (n + 1) * lc.d_hur * lc.n_coh;
    const Integer bb = (n - 1) * lc.d_coh * lc.n_hur;
    const Integer a1 = lc.d_hur * lc.n_coh;
    const Integer b1 = lc.d_coh * lc.n_hur;
    b.scan("c-SR1", b.dmax, [&](std::int64_t d) -> Witness {
        if (c * sr1[d] == a * sh[d] + bb * sc[d])
            return std::nullopt;
        return std::string("c SR1 differs from its Hurwitz/Cohen expansion");
    });
    b.scan("c-SRN", b.dmax, [&](std::int64_t d) -> Witness {
        if (c * srn[d] == a1 * sh[d] - b1 * sc[d])
            return std::nullopt;
        return std::string("c SRN differs from its Hurwitz/Cohen expansion");
    });
    b.scan("difference", b.dmax, [&](std::int64_t d) -> Witness {
        const Rational diff = c * (sr1[d] - srn[d]);
        if (diff != n * (a1 * sh[d] + b1 * sc[d]))
            return std::string("difference differs from N (dHur nCoh SH + dCoh nHur SCoh)");
        if (!is_integral(diff) || diff.get_num() % n != 0)
            return "difference " + to_fraction_string(diff) + " is not divisible by N";
        return std::nullopt;
    });
    b.scan("fundamental-coefficient", b.dmax, [&](std::int64_t d) -> Witness {
        if (d == 0 || !arith::is_fundamental(d))
            return std::nullopt;
        const int chi = arith::kronecker(d, n);
        const Rational h = classnum::hurwitz(d);
        const Rational expect = a1 * (1 + chi) * h - Rational(b1 * (1 - chi)) * h / 2;
        if (c * srn[d] == expect)
            return std::nullopt;
        return "c SRN(D) = " + to_fraction_string(c * srn[d]) + ", closed form " + to_fraction_string(expect);
    });
    b.add("SRN-constant-term", srn[0] == -1 && sr1[0] == -1, at_d(0), "SR constant term " + to_fraction_string(srn[0]));
    if (n == 3 && b.dmax >= 3)
        b.add("CEis3(-3)", c * srn[-3] == -1, at_d(-3), "value " + to_fraction_string(c * srn[-3]));
}

void add_certificate(Builder& b, const std::string& prefix, const grpmod::OptimalityCertificate& cert)
{
    for (const auto& ch : cert.checks)
        b.add(prefix + ":" + ch.name, ch.passed, ch.witness ? at_d(*ch.witness) : "", ch.detail);
    std::string detail = "none found";
    if (cert.coprime_witness)
        detail = "(" + std::to_string(cert.coprime_witness->first) + ", " + std::to_string(cert.coprime_witness->second) + ")";
    b.add(prefix + ":coprime-witness", cert.coprime_witness.has_value(), "c=" + std::to_string(cert.c) + " inconclusive",
          detail);
}

void add_divisor_failures(Builder& b, const std::string& prefix, const grpmod::VirtualModuleTable& table, std::int64_t c)
{
    for (std::int64_t k : proper_divisors(c)) {
        const auto cert = grpmod::certify(table, k);
        const auto& e = cert.check("integrality_e");
        const auto& g = cert.check("integrality_g");
        const bool failed = !e.passed || !g.passed;
        std::string detail = "integral at c=" + std::to_string(k);
        if (!g.passed)
            detail = "trace_g not integral at " + at_d(*g.witness);
        else if (!e.passed)
            detail = "trace_e not integral at " + at_d(*e.witness);
        b.add(prefix + ":divisor-" + std::to_string(k) + "-fails", failed, "c=" + std::to_string(k), detail);
    }
}

void mod_n(Builder& b)
{
    const std::int64_t c = grpmod::eisenstein_c(b.level);
    const auto table = grpmod::build_eisenstein_module(b.level, b.dmax);
    add_certificate(b, "eisenstein", grpmod::certify(table, c));
    add_divisor_failures(b, "eisenstein", table, c);
}

void mass_formula(Builder& b)
{
    const std::int64_t n = b.level;
    const auto lc = arith::level_constants(n);
    const auto set = quaternion::ideal_classes(n);
    const auto places = quaternion::ramified_places(set.algebra);
    b.add("ramification", places == std::vector<std::int64_t>{0, n}, "algebra");
    b.add("mass", set.mass == make_rational(n - 1, 12), "mass=" + to_fraction_string(set.mass));
    std::int64_t prod = 1;
    for (auto w : set.weights())
        prod *= w;
    b.add("product", prod == lc.d_coh, "prod=" + std::to_string(prod), "dCoh=" + std::to_string(lc.d_coh));
    const std::int64_t prec = std::max<std::int64_t>(4, b.dmax);
    const auto xe = quaternion::theta_xE(set, prec);
    b.add("xE-constant-term", xe[0] == make_rational(lc.n_coh, 2), "n=0", to_fraction_string(xe[0]));
    std::string leak;
    for (std::int64_t k = 1; k <= prec && leak.empty(); ++k)
        if (!is_integral(xe[k]))
            leak = "n=" + std::to_string(k);
    b.add("xE-integral", leak.empty(), leak);
    const auto phi = quaternion::build_phiN(set, prec);
    b.add("phi-integral", phi.is_integral(), phi.first_non_integral() ? at_d(*phi.first_non_integral()) : "");
    b.add("phi-constant-term", phi[0] == 0, at_d(0));
}

void lemma44(Builder& b)
{
    const auto cert = quaternion::verify_lemma_congruence(b.level, b.dmax);
    b.add("cusp-congruence", cert.holds, cert.witness ? at_d(*cert.witness) : "", cert.reason);
}

void thm_classification(Builder& b)
{
    const std::int64_t n = b.level;
    const auto lc = arith::level_constants(n);
    b.add("copt-equals-nHur", grpmod::copt(n) == lc.n_hur, "N=" + std::to_string(n));
    const auto phi = quaternion::build_phiN(n, b.dmax);
    const auto table = grpmod::build_full_module(n, b.dmax, phi);
    add_certificate(b, "full", grpmod::certify(table, lc.n_hur));
    add_divisor_failures(b, "full", table, lc.n_hur);
    b.scan("trace-mod-nHur", b.dmax, [&](std::int64_t d) -> Witness {
        if (d == 0)
            return std::nullopt;
        const Rational diff = table.trace_g()[d] - lc.d_hur * classnum::hurwitz_generalized(n, d);
        if (is_integral(diff) && diff.get_num() % lc.n_hur == 0)
            return std::nullopt;
        return "trace_g - dHur HN = " + to_fraction_string(diff);
    });
}

void corollary_rank(Builder& b)
{
    const std::int64_t n = b.level;
    const std::int64_t g = grpmod::genus_X0(n);
    const bool small = n == 2 || n == 3 || n == 5 || n == 7 || n == 13;
    b.add("genus-zero-levels", (g == 0) == small, "genus=" + std::to_string(g));
    b.add("rank", grpmod::rank_Lopt(n) == (n - 1) * g, "rank=" + std::to_string(grpmod::rank_Lopt(n)),
          "rank " + std::to_string(grpmod::rank_Lopt(n)) + " genus " + std::to_string(g));
    if (small) {
        const auto phi = quaternion::build_phiN(n, std::max<std::int64_t>(4, b.dmax));
        bool zero = true;
        for (const auto& [d, v] : phi.coeffs())
            zero = zero && v == 0;
        b.add("cusp-space-empty", zero, "phi nonzero");
    }
}

const std::map<std::string, std::function<void(Builder&)>>& registry()
{
    static const std::map<std::string, std::function<void(Builder&)>> r{
        {"lemma21", lemma21},
        {"integrality", integrality},
        {"count-identity", count_identity},
        {"eisenstein-identities", eisenstein_identities},
        {"mod-N", mod_n},
        {"mass-formula", mass_formula},
        {"lemma44", lemma44},
        {"thm-classification", thm_classification},
        {"corollary-rank", corollary_rank},
    };
    return r;
}

}  // namespace

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names{"lemma21",      "integrality",  "count-identity",
                                                "eisenstein-identities", "mod-N", "mass-formula",
                                                "lemma44",      "thm-classification", "corollary-rank"};
    return names;
}

std::string canonical_suite(const std::string& name)
{
    static const std::map<std::string, std::string> aliases{
        {"hurwitz-split", "lemma21"},       {"orbits", "count-identity"},
        {"eisenstein", "eisenstein-identities"}, {"thompson", "mod-N"},
        {"mass", "mass-formula"},           {"cusp-congruence", "lemma44"},
        {"classification", "thm-classification"}, {"rank", "corollary-rank"},
    };
    if (registry().count(name) != 0)
        return name;
    auto it = aliases.find(name);
    if (it != aliases.end())
        return it->second;
    throw InvalidInput("unknown check suite '" + name + "'");
}

std::vector<CheckOutcome> run(const std::string& suite, std::int64_t level, std::int64_t dmax)
{
    const std::string name = canonical_suite(suite);
    arith::require_prime(level, "verify");
    if (dmax < 4)
        throw DomainError("verify: dmax must be at least 4");
    Builder b{name, level, dmax, {}};
    registry().at(name)(b);
    return b.out;
}

}  // namespace optmod::suites
