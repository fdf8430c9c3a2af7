#include <gtest/gtest.h>

#include "optmod/arith.hpp"
#include "optmod/classnum.hpp"
#include "optmod/errors.hpp"
#include "optmod/jacobi.hpp"

using namespace optmod;
using namespace optmod::jacobi;

TEST(DiscSeries, KeysAndLookup)
{
    const DiscSeries s = build_SH(1, 4);
    ASSERT_EQ(s.coeffs().size(), 3u);
    EXPECT_EQ(s[0], make_rational(-1, 12));
    EXPECT_EQ(s[-3], make_rational(1, 3));
    EXPECT_EQ(s[-4], make_rational(1, 2));
    EXPECT_EQ(s.at(5), 0);
    EXPECT_EQ(s.at(-2), 0);
    EXPECT_THROW(s.at(-7), CapacityError);
    EXPECT_THROW(s[-2], InvalidInput);
    EXPECT_FALSE(s.is_integral());
    EXPECT_EQ(*s.first_non_integral(), 0);
}

TEST(DiscSeries, InvariantsEnforced)
{
    CoeffMap missing{{0, 1}, {-3, 1}};
    EXPECT_THROW(DiscSeries::from_coeffs(1, SeriesKind::Combination, 4, missing), InvalidInput);
    CoeffMap stray{{0, 1}, {-3, 1}, {-4, 1}, {-2, 1}};
    EXPECT_THROW(DiscSeries::from_coeffs(1, SeriesKind::Combination, 4, stray), InvalidInput);
    CoeffMap cusp{{0, 1}, {-3, 1}, {-4, 1}};
    EXPECT_THROW(DiscSeries::from_coeffs(11, SeriesKind::Cuspidal, 4, cusp), InvalidInput);
    cusp[0] = 0;
    EXPECT_NO_THROW(DiscSeries::from_coeffs(11, SeriesKind::Cuspidal, 4, cusp));
}

TEST(Builders, SpecValues)
{
    const auto sh11 = build_SH(11, 8);
    EXPECT_EQ(sh11[-7], 2);
    EXPECT_EQ(sh11[-4], 0);
    EXPECT_EQ(sh11[0], -1);
    const auto sc = build_SCoh(11, 4);
    EXPECT_EQ(sc[0], make_rational(5, 12));
    EXPECT_EQ(sc[-3], make_rational(1, 3));
    EXPECT_EQ(sc[-4], make_rational(1, 2));
    const auto sr1 = build_SR(1, 4);
    EXPECT_EQ(sr1[0], -1);
    EXPECT_EQ(sr1[-3], 4);
    EXPECT_EQ(sr1[-4], 6);
    EXPECT_EQ(build_SR(3, 4)[-3], make_rational(-1, 2));
    EXPECT_THROW(build_SH(15, 8), DomainError);
    EXPECT_THROW(build_SCoh(1, 8), DomainError);
}

TEST(Builders, RademacherConstantTermAndPrimeForm)
{
    for (std::int64_t n = 2; n <= 100; ++n) {
        if (!arith::is_prime(n))
            continue;
        const auto sr = build_SR(n, n <= 31 ? 400 : 8);
        ASSERT_EQ(sr[0], -1) << n;
        if (n > 31)
            continue;
        // For N prime the Moebius sum collapses to 6/(N+1) SH_N - 12/(N-1) SCoh_N.
        const auto sh = build_SH(n, 400);
        const auto sc = build_SCoh(n, 400);
        for (const auto& [d, v] : sr.coeffs())
            ASSERT_EQ(v, make_rational(6, n + 1) * sh[d] - make_rational(12, n - 1) * sc[d]) << n << " " << d;
    }
}

TEST(Combine, LemmaAsSeriesIdentity)
{
    const auto diff = series_combine({{Rational(1), build_SH(1, 300)},
                                      {Rational(-1), build_SCoh(11, 300)},
                                      {make_rational(-1, 2), build_SH(11, 300)}});
    EXPECT_EQ(diff.kind(), SeriesKind::Combination);
    EXPECT_EQ(diff.level(), 11);
    for (const auto& [d, v] : diff.coeffs())
        ASSERT_EQ(v, 0) << d;
    const auto shorter = series_combine({{Rational(1), build_SH(1, 300)}, {Rational(1), build_SH(1, 40)}});
    EXPECT_EQ(shorter.dmax(), 40);
}

TEST(Congruence, Certificates)
{
    const auto x = build_SR(1, 200);
    EXPECT_TRUE(series_congruent(x, x, 7).holds);
    const auto cert = series_congruent(build_SR(1, 200).scaled(2), build_SR(3, 200).scaled(2), 3);
    EXPECT_TRUE(cert.holds) << cert.reason;
    EXPECT_EQ(cert.dmax, 200);
    // 4 - (-1/2) is not an integer at D = -3.
    const auto bad = series_congruent(build_SR(1, 50), build_SR(3, 50), 3);
    EXPECT_FALSE(bad.holds);
    EXPECT_EQ(*bad.witness, -3);
    // Integral difference that is not divisible.
    const auto bad2 = series_congruent(build_SR(1, 50), build_SR(1, 50).scaled(2), 5);
    EXPECT_FALSE(bad2.holds);
    EXPECT_EQ(*bad2.witness, 0);
    EXPECT_THROW(series_congruent(x, x, 0), DomainError);
}

TEST(Packing, QY)
{
    const auto sh = build_SH(1, 40);
    const auto qy = pack_qy(sh, 10);
    EXPECT_EQ(qy.at(1, 0), make_rational(1, 2));
    EXPECT_EQ(qy.at(1, 1), make_rational(1, 3));
    EXPECT_EQ(qy.at(0, 0), sh[0]);
    for (const auto& [key, v] : qy.terms) {
        const auto [n, s] = key;
        EXPECT_EQ(v, sh[s * s - 4 * n]);
        EXPECT_EQ(qy.at(n, -s), v);
    }
    EXPECT_THROW(pack_qy(sh, 11), CapacityError);
}

TEST(Packing, PlusSpaceRoundTrip)
{
    const auto sh = build_SH(1, 60);
    const auto table = pack_plus_space(sh);
    EXPECT_EQ(table.at(0), make_rational(-1, 12));
    EXPECT_EQ(table.at(3), make_rational(1, 3));
    EXPECT_EQ(table.at(4), make_rational(1, 2));
    for (const auto& [n, v] : table)
        EXPECT_TRUE(n % 4 == 0 || n % 4 == 3) << n;
    EXPECT_EQ(series_from_plus_space(1, SeriesKind::Hurwitz, 60, table), sh);
    const DiscSeries zero(5, SeriesKind::Combination, 20);
    for (const auto& [n, v] : pack_plus_space(zero))
        EXPECT_EQ(v, 0);
}

TEST(Theta, ExpansionsAndTd)
{
    const auto t10 = theta_expansion(1, 0, 9);
    for (const auto& [key, c] : t10.terms) {
        EXPECT_EQ(key.second % 2, 0);
        EXPECT_EQ(key.first, key.second * key.second);
        EXPECT_EQ(c, 1);
    }
    EXPECT_EQ(t10.terms.at({0, 0}), 1);
    const auto null11 = thetanull(1, 1, 9);
    EXPECT_EQ(null11, (std::map<std::int64_t, std::int64_t>{{1, 2}, {9, 2}, {25, 2}}));
    const auto t = build_t_d(1, 9);
    EXPECT_EQ(t[0].antiholomorphic, thetanull(1, 0, 9));
    EXPECT_EQ(t[0].holomorphic.terms, theta_expansion(1, 0, 9).terms);
    EXPECT_EQ(t[1].antiholomorphic, thetanull(1, 1, 9));
    EXPECT_EQ(t[1].holomorphic.terms, theta_expansion(1, 1, 9).terms);
    // theta_{m,r} and theta_{m,-r} swap s and -s.
    const auto a = theta_expansion(3, 2, 20);
    const auto b = theta_expansion(3, -2, 20);
    for (const auto& [key, c] : a.terms)
        EXPECT_EQ(b.terms.at({key.first, -key.second}), c);
}

TEST(Json, RoundTrip)
{
    const auto s = build_SCoh(11, 100).scaled(make_rational(7, 5));
    const auto j = to_json(s);
    EXPECT_EQ(j["coeffs"][0][0], 0);
    EXPECT_EQ(j["coeffs"][1][0], -3);
    EXPECT_EQ(series_from_json(j), s);
    EXPECT_EQ(series_from_json(nlohmann::json::parse(j.dump())), s);
    nlohmann::json broken = j;
    broken["coeffs"][0][2] = 0;
    EXPECT_THROW(series_from_json(broken), InvalidInput);
    EXPECT_THROW(series_from_json(nlohmann::json::object()), InvalidInput);
    const Integer big("123456789012345678901234567890");
    EXPECT_EQ(integer_from_json(integer_to_json(big)), big);
    EXPECT_EQ(series_kind_from_string(to_string(SeriesKind::McKayThompson)), SeriesKind::McKayThompson);
}
