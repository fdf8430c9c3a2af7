// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "optmod/arith.hpp"
#include "optmod/classnum.hpp"
#include "optmod/errors.hpp"
#include "optmod/grpmod.hpp"
#include "optmod/jacobi.hpp"
#include "optmod/lfun.hpp"
#include "optmod/quaternion.hpp"

using namespace optmod;

namespace {

struct Result {
    bool passed = true;
    std::string detail;

    void fail(const std::string& why)
    {
        if (passed)
            detail = why;
        passed = false;
    }
};

std::string str(const Rational& q) { return q.get_str(); }

std::vector<std::int64_t> primes_upto(std::int64_t hi, std::int64_t lo = 2)
{
    std::vector<std::int64_t> out;
    for (std::int64_t p = lo; p <= hi; ++p)
        if (arith::is_prime(p))
            out.push_back(p);
    return out;
}

bool is_disc(std::int64_t d) { return ((d % 4) + 4) % 4 == 0 || ((d % 4) + 4) % 4 == 1; }

Result orbit_oracle_equivalence()
{
    Result r;
    std::int64_t cells = 0;
    for (std::int64_t n : {2, 3, 5, 7, 11, 13})
        for (std::int64_t d = -1; d >= -200; --d) {
            if (!is_disc(d))
                continue;
            const Rational lhs = classnum::orbit_oracle(n, d).weighted_count();
            const Rational rhs = classnum::hurwitz_generalized(n, d);
            ++cells;
            if (lhs != rhs)
                r.fail("N=" + std::to_string(n) + " D=" + std::to_string(d) + ": " + str(lhs) + " vs " + str(rhs));
        }
    if (r.passed)
        r.detail = std::to_string(cells) + " (N, D) cells equal";
    return r;
}

Result hurwitz_split()
{
    Result r;
    for (std::int64_t n : primes_upto(31))
        for (std::int64_t d = 0; d >= -2000; --d) {
            const Rational lhs = classnum::hurwitz(d);
            const Rational rhs = classnum::cohen_coeff(n, d) + classnum::hurwitz_generalized(n, d) / 2;
            if (lhs != rhs)
                r.fail("N=" + std::to_string(n) + " D=" + std::to_string(d));
        }
    if (r.passed)
        r.detail = "11 primes, D in [-2000, 0]";
    return r;
}

Result integrality()
{
    Result r;
    std::int64_t failures = 0;
    for (std::int64_t n : primes_upto(31)) {
        const auto lc = arith::level_constants(n);
        // The lemma is about D < 0; the constant terms are fractional by design.
        for (std::int64_t d = -1; d >= -2000; --d) {
            const bool ok = is_integral(lc.d_hur * classnum::hurwitz_generalized(n, d)) &&
                            is_integral(lc.d_coh * classnum::cohen_coeff(n, d));
            if (!ok) {
                ++failures;
                r.fail("N=" + std::to_string(n) + " D=" + std::to_string(d));
            }
        }
    }
    if (r.passed)
        r.detail = "zero failures";
    else
        r.detail += " (" + std::to_string(failures) + " failures)";
    return r;
}

Result eisenstein_identities()
{
    Result r;
    const std::int64_t dmax = 2000;
    const auto sr1 = jacobi::build_SR(1, dmax);
    for (std::int64_t n : primes_upto(31)) {
        const auto lc = arith::level_constants(n);
        const std::int64_t c = grpmod::eisenstein_c(n);
        const auto srn = jacobi::build_SR(n, dmax);
        const auto sh = jacobi::build_SH(n, dmax);
        const auto sc = jacobi::build_SCoh(n, dmax);
        const Integer a1 = lc.d_hur * lc.n_coh;
        const Integer b1 = lc.d_coh * lc.n_hur;
        for (std::int64_t d = 0; d >= -dmax; --d) {
            if (!is_disc(d))
                continue;
            const std::string at = "N=" + std::to_string(n) + " D=" + std::to_string(d);
            if (c * sr1[d] != (n + 1) * a1 * sh[d] + (n - 1) * b1 * sc[d])
                r.fail("c SR1 at " + at);
            if (c * srn[d] != a1 * sh[d] - b1 * sc[d])
                r.fail("c SRN at " + at);
            const Rational diff = c * (sr1[d] - srn[d]);
            if (!is_integral(diff) || diff.get_num() % n != 0)
                r.fail("difference not 0 mod N at " + at);
        }
    }
    const Rational spot = grpmod::eisenstein_c(3) * jacobi::build_SR(3, 10)[-3];
    if (spot != -1)
        r.fail("CEis3(-3) = " + str(spot));
    if (r.passed)
        r.detail = "primes <= 31 to dmax 2000, CEis3(-3) = -1";
    return r;
}

Result sr_constant_term()
{
    Result r;
    for (std::int64_t n : primes_upto(100))
        if (jacobi::build_SR(n, 4)[0] != -1)
            r.fail("N=" + std::to_string(n));
    if (r.passed)
        r.detail = "25 primes";
    return r;
}

Result quaternion_pipeline()
{
    Result r;
    for (std::int64_t n : primes_upto(47, 11)) {
        const auto lc = arith::level_constants(n);
        const auto set = quaternion::ideal_classes(n);
        const std::string at = "N=" + std::to_string(n);
        if (set.mass != make_rational(n - 1, 12))
            r.fail(at + " mass " + str(set.mass));
        std::int64_t prod = 1;
        for (auto w : set.weights())
            prod *= w;
        if (prod != lc.d_coh)
            r.fail(at + " product " + std::to_string(prod));
        const auto xe = quaternion::theta_xE(set, 100);
        if (xe[0] != make_rational(lc.n_coh, 2))
            r.fail(at + " xE constant " + str(xe[0]));
        const auto phi = quaternion::build_phiN(set, 100);
        if (!phi.is_integral())
            r.fail(at + " phi not integral at D=" + std::to_string(*phi.first_non_integral()));
        if (phi[0] != 0)
            r.fail(at + " phi constant " + str(phi[0]));
    }
    if (r.passed)
        r.detail = "11 levels, mass/product/xE/phi";
    return r;
}

Result cusp_congruence()
{
    Result r;
    for (std::int64_t n : {11, 17, 19, 23}) {
        const auto cert = quaternion::verify_lemma_congruence(n, 500);
        if (!cert.holds)
            r.fail("N=" + std::to_string(n) + " D=" + (cert.witness ? std::to_string(*cert.witness) : "?") + " " +
                   cert.reason);
    }
    if (r.passed)
        r.detail = "N in {11, 17, 19, 23}, dmax 500";
    return r;
}

Result classification()
{
    Result r;
    for (std::int64_t n : {11, 17, 19, 23}) {
        const auto lc = arith::level_constants(n);
        const std::string at = "N=" + std::to_string(n);
        const auto table = grpmod::build_full_module(n, 500, quaternion::build_phiN(n, 500));
        const auto cert = grpmod::certify(table, lc.n_hur);
        if (!cert.valid())
            r.fail(at + " certificate invalid");
        if (!cert.coprime_witness)
            r.fail(at + " no coprime witness");
        for (std::int64_t k = 1; k < lc.n_hur; ++k) {
            if (lc.n_hur % k != 0)
                continue;
            const auto low = grpmod::certify(table, k);
            const auto& e = low.check("integrality_e");
            const auto& g = low.check("integrality_g");
            const bool named = (!g.passed && g.witness) || (!e.passed && e.witness);
            if (!named)
                r.fail(at + " c=" + std::to_string(k) + " not refuted");
        }
    }
    if (grpmod::copt(2) != 1 || grpmod::copt(5) != 1 || grpmod::copt(11) != 2 || grpmod::copt(23) != 4)
        r.fail("copt spot values");
    if (r.passed)
        r.detail = "certified at nHur, divisors refuted, copt(2,5,11,23) = 1,1,2,4";
    return r;
}

Result corollary_rank()
{
    Result r;
    if (grpmod::rank_Lopt(11) != 10)
        r.fail("rank(11) = " + std::to_string(grpmod::rank_Lopt(11)));
    if (grpmod::rank_Lopt(23) != 44)
        r.fail("rank(23) = " + std::to_string(grpmod::rank_Lopt(23)));
    if (grpmod::rank_Lopt(37) != 72)
        r.fail("rank(37) = " + std::to_string(grpmod::rank_Lopt(37)));
    if (grpmod::genus_X0(13) != 0)
        r.fail("genus(13) = " + std::to_string(grpmod::genus_X0(13)));
    if (r.passed)
        r.detail = "ranks 10, 44, 72; genus(13) = 0";
    return r;
}

Result predictor()
{
    Result r;
    std::int64_t checked = 0;
    for (std::int64_t d = -1; d > -300; --d) {
        if (!arith::is_fundamental(d) || arith::kronecker(d, 11) != -1)
            continue;
        const auto pred = lfun::predict(11, d, 5, true);
        if (!pred.criterion)
            continue;
        ++checked;
        const auto& lv = *pred.lvalue;
        if (lv.value <= lfun::kNonzeroThreshold || lv.drift() >= lfun::kConvergenceTolerance) {
            char buf[128];
            std::snprintf(buf, sizeof buf, "D=%lld L=%.3e drift=%.1e", static_cast<long long>(d), lv.value, lv.drift());
            r.fail(buf);
        }
    }
    const auto p47 = lfun::predict(11, -47, 5);
    if (p47.verdict != lfun::Verdict::NoPrediction || p47.hD != 5)
        r.fail("D=-47 not NoPrediction");
    if (r.passed)
        r.detail = std::to_string(checked) + " twists nonzero, D=-47 NoPrediction";
    return r;
}

struct Timed {
    Result result;
    double seconds = 0.0;
};

Timed timed(const std::function<Result()>& f)
{
    const auto t0 = std::chrono::steady_clock::now();
    Timed t;
    try {
        t.result = f();
    } catch (const std::exception& e) {
        t.result.fail(std::string("exception: ") + e.what());
    }
    t.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return t;
}

}  // namespace

int main()
{
    struct Criterion {
        int id;
        const char* name;
        double budget;  // seconds, 0 for none
        std::function<Result()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "orbit oracle equals generalized class number", 60, orbit_oracle_equivalence},
        {2, "H = HCoh + HN/2", 30, hurwitz_split},
        {3, "dHur HN and dCoh HCoh integral", 0, integrality},
        {4, "Eisenstein identities and CEis3(-3)", 0, eisenstein_identities},
        {5, "SR_N constant term -1", 0, sr_constant_term},
        {6, "quaternion mass, weights, xE and phi", 120, quaternion_pipeline},
        {7, "cusp form congruence", 0, cusp_congruence},
        {8, "classification certificates and copt", 0, classification},
        {9, "rank of the optimal lattice", 0, corollary_rank},
        {10, "class number criterion vs twisted L-value", 120, predictor},
    };
    bool all = true;
    bool substitutes = true;
    for (const auto& c : criteria) {
        const auto t = timed(c.run);
        const bool in_time = c.budget == 0 || t.seconds < c.budget;
        const bool ok = t.result.passed && in_time;
        all = all && ok;
        if (c.id == 4 || c.id == 7 || c.id == 8 || c.id == 10)
            substitutes = substitutes && ok;
        std::printf("%s %2d %-45s %7.2fs  %s%s\n", ok ? "PASS" : "FAIL", c.id, c.name, t.seconds,
                    t.result.detail.c_str(), in_time ? "" : " (over time budget)");
    }
    // The finiteness claim itself is an external implication; it is accepted
    // through the congruence certificates and the L-value correlation.
    std::printf("%s %2d %-45s %7s  %s\n", substitutes ? "PASS" : "FAIL", 11, "rank-0 claim via substitutes 4, 7, 8, 10", "",
                substitutes ? "all substitute criteria passed" : "a substitute criterion failed");
    all = all && substitutes;
    std::fflush(stdout);
    return all ? 0 : 1;
}
