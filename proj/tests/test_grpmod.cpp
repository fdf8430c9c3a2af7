#include <gtest/gtest.h>

#include "optmod/arith.hpp"
#include "optmod/classnum.hpp"
#include "optmod/errors.hpp"
#include "optmod/grpmod.hpp"
#include "optmod/quaternion.hpp"

using namespace optmod;
using namespace optmod::grpmod;

namespace {

// Classical genus of X0(p) by residue class of p mod 12.
std::int64_t genus_by_residue(std::int64_t p)
{
    switch (p % 12) {
    case 1:
        return (p - 13) / 12;
    case 5:
        return (p - 5) / 12;
    case 7:
        return (p - 7) / 12;
    default:
        return (p + 1) / 12;
    }
}

void expect_round_trip(const VirtualModuleTable& t)
{
    const std::int64_t n = t.level();
    for (const auto& [d, te] : t.trace_e().coeffs()) {
        const Rational& m0 = t.mult_trivial().at(d);
        const Rational& m1 = t.mult_nontrivial().at(d);
        ASSERT_EQ(te, m0 + (n - 1) * m1) << d;
        ASSERT_EQ(t.trace_g()[d], m0 - m1) << d;
    }
}

bool multiplicities_integral(const VirtualModuleTable& t)
{
    for (const auto& [d, v] : t.mult_trivial())
        if (!is_integral(v) || !is_integral(t.mult_nontrivial().at(d)))
            return false;
    return true;
}

}  // namespace

TEST(Constants, EisensteinAndOptimal)
{
    EXPECT_EQ(eisenstein_c(2), 1);
    EXPECT_EQ(eisenstein_c(3), 2);
    EXPECT_EQ(eisenstein_c(11), 10);
    EXPECT_EQ(eisenstein_c(13), 7);
    for (std::int64_t n = 2; n <= 200; ++n) {
        if (!arith::is_prime(n))
            continue;
        const auto lc = arith::level_constants(n);
        EXPECT_EQ(eisenstein_c(n), lc.n_hur * lc.n_coh) << n;
    }
    EXPECT_EQ(copt(11), 2);
    EXPECT_EQ(copt(2), 1);
    EXPECT_EQ(copt(5), 1);
    EXPECT_EQ(copt(23), 4);
    EXPECT_THROW(eisenstein_c(9), DomainError);
    EXPECT_THROW(copt(1), DomainError);
}

TEST(Constants, GenusAndRank)
{
    EXPECT_EQ(genus_X0(11), 1);
    EXPECT_EQ(rank_Lopt(11), 10);
    EXPECT_EQ(genus_X0(13), 0);
    EXPECT_EQ(genus_X0(23), 2);
    EXPECT_EQ(genus_X0(2), 0);
    EXPECT_EQ(genus_X0(3), 0);
    for (std::int64_t p = 5; p <= 500; ++p)
        if (arith::is_prime(p))
            EXPECT_EQ(genus_X0(p), genus_by_residue(p)) << p;
    EXPECT_THROW(genus_X0(25), DomainError);
}

TEST(EisensteinModule, SpecValues)
{
    const auto t3 = build_eisenstein_module(3, 50);
    EXPECT_EQ(t3.trace_g()[-3], -1);
    const auto t11 = build_eisenstein_module(11, 50);
    EXPECT_EQ(t11.trace_g()[-4], -6);
    for (std::int64_t n : {2, 3, 5, 7, 11, 13}) {
        const auto t = build_eisenstein_module(n, 50);
        EXPECT_EQ(t.trace_e()[0], -eisenstein_c(n));
        EXPECT_EQ(t.trace_g()[0], -eisenstein_c(n));
        expect_round_trip(t);
        EXPECT_TRUE(multiplicities_integral(t)) << n;
    }
    const auto row = t3.character_row(-3);
    ASSERT_EQ(row.size(), 3u);
    EXPECT_EQ(row[0], t3.trace_e()[-3]);
    EXPECT_EQ(row[1], -1);
    EXPECT_EQ(row[2], -1);
}

TEST(EisensteinModule, CertifiedAtCEisAndNotBelow)
{
    for (std::int64_t n = 2; n <= 31; ++n) {
        if (!arith::is_prime(n))
            continue;
        const auto t = build_eisenstein_module(n, 500);
        const std::int64_t c = eisenstein_c(n);
        const auto cert = certify(t, c);
        EXPECT_TRUE(cert.valid()) << n;
        EXPECT_EQ(cert.minimality, Minimality::Certified) << n;
        for (std::int64_t k = 1; k < c; ++k) {
            if (c % k != 0)
                continue;
            const auto low = certify(t, k);
            EXPECT_FALSE(low.check("integrality_g").passed && low.check("integrality_e").passed) << n << " " << k;
        }
    }
    const auto cert3 = certify(build_eisenstein_module(3, 100), 2);
    ASSERT_TRUE(cert3.coprime_witness.has_value());
    EXPECT_EQ(cert3.coprime_witness->first, -3);
    EXPECT_EQ(cert3.coprime_witness->second, 0);
}

TEST(EisensteinModule, PerturbedTablesFail)
{
    const auto t = build_eisenstein_module(11, 100);
    // Halving the traces breaks integrality at some named D.
    const auto half = VirtualModuleTable::from_traces(11, t.base_c(), t.trace_e().scaled(make_rational(1, 2)),
                                                      t.trace_g().scaled(make_rational(1, 2)));
    const auto cert = certify(half, t.base_c());
    EXPECT_FALSE(cert.valid());
    EXPECT_FALSE(cert.check("integrality_g").passed);
    EXPECT_TRUE(cert.check("integrality_g").witness.has_value());
    // Integer traces that break the congruence give fractional multiplicities.
    jacobi::CoeffMap bumped = t.trace_g().coeffs();
    bumped[-7] += 1;
    const auto off = VirtualModuleTable::from_traces(
        11, t.base_c(), t.trace_e(), jacobi::DiscSeries::from_coeffs(11, jacobi::SeriesKind::McKayThompson, 100, bumped));
    expect_round_trip(off);
    EXPECT_FALSE(multiplicities_integral(off));
    const auto offcert = certify(off, t.base_c());
    EXPECT_FALSE(offcert.check("congruence_mod_N").passed);
    EXPECT_EQ(*offcert.check("congruence_mod_N").witness, -7);
}

TEST(FullModule, LevelElevenExamples)
{
    const auto phi = quaternion::build_phiN(11, 500);
    const auto t = build_full_module(11, 500, phi);
    const auto lc = arith::level_constants(11);
    EXPECT_EQ(arith::inverse_mod(11, lc.n_coh), 1);
    EXPECT_EQ(t.trace_g()[0], -2);
    EXPECT_EQ(t.trace_e()[0], -2);
    for (const auto& [d, v] : t.trace_g().coeffs()) {
        if (d == 0)
            continue;
        const Rational diff = v - lc.d_hur * classnum::hurwitz_generalized(11, d);
        ASSERT_TRUE(is_integral(diff));
        ASSERT_EQ(diff.get_num() % 2, 0) << d;
    }
    expect_round_trip(t);
    EXPECT_TRUE(multiplicities_integral(t));
    const auto cert = certify(t, 2);
    EXPECT_TRUE(cert.valid());
    EXPECT_TRUE(cert.coprime_witness.has_value());
    const auto low = certify(t, 1);
    EXPECT_FALSE(low.valid());
    EXPECT_TRUE(low.check("integrality_g").witness.has_value() || low.check("integrality_e").witness.has_value());
}

TEST(FullModule, OppositeCuspSignIsNotIntegral)
{
    // With -N Ntilde / nCoh in front of phi_N the division is inexact.
    const std::int64_t n = 11;
    const auto lc = arith::level_constants(n);
    const auto phi = quaternion::build_phiN(n, 200);
    const auto flipped = jacobi::series_combine(
        {{Rational(lc.n_hur), jacobi::build_SR(n, 200)}, {make_rational(-lc.n_hur * n, lc.n_coh), phi}});
    EXPECT_FALSE(flipped.is_integral());
}

TEST(FullModule, Validation)
{
    const auto phi = quaternion::build_phiN(11, 100);
    EXPECT_THROW(build_full_module(17, 100, phi), InvalidInput);
    EXPECT_THROW(build_full_module(11, 200, phi), CapacityError);
    // A cusp series that breaks the congruence makes the division inexact.
    jacobi::CoeffMap bad = phi.coeffs();
    bad[-3] += 1;
    EXPECT_THROW(build_full_module(11, 100, jacobi::DiscSeries::from_coeffs(11, jacobi::SeriesKind::Cuspidal, 100, bad)),
                 InvalidInput);
}

TEST(Certificate, JsonCarriesChecksAndVersion)
{
    const auto cert = certify(build_eisenstein_module(5, 60), 1);
    const auto j = to_json(cert);
    EXPECT_EQ(j["level"], 5);
    EXPECT_EQ(j["dmax"], 60);
    EXPECT_EQ(j["checks"].size(), 4u);
    EXPECT_TRUE(j.contains("version"));
    EXPECT_TRUE(j["coprime_witness"].is_array());
    EXPECT_EQ(j["valid"], true);
    EXPECT_THROW(cert.check("nope"), InvalidInput);
}
