#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "optmod/arith.hpp"
#include "optmod/classnum.hpp"
#include "optmod/errors.hpp"
#include "optmod/lfun.hpp"

using namespace optmod;
using namespace optmod::lfun;

namespace {

// a_p = p - #{(x, y) in F_p^2 : y^2 + y = x^3 - x^2}.
std::int64_t ap_by_point_count(std::int64_t p)
{
    std::int64_t affine = 0;
    for (std::int64_t x = 0; x < p; ++x)
        for (std::int64_t y = 0; y < p; ++y)
            affine += ((y * y + y - x * x * x + x * x) % p + p) % p == 0;
    return p - affine;
}

// h(D) by counting primitive reduced forms.
std::int64_t class_number_slow(std::int64_t d)
{
    std::int64_t h = 0;
    for (std::int64_t a = 1; 3 * a * a <= -d; ++a)
        for (std::int64_t b = -a + 1; b <= a; ++b) {
            if ((b * b - d) % (4 * a) != 0)
                continue;
            const std::int64_t c = (b * b - d) / (4 * a);
            if (c < a || (a == c && b < 0))
                continue;
            if (std::gcd(std::gcd(a, std::abs(b)), c) == 1)
                ++h;
        }
    return h;
}

}  // namespace

TEST(Newform, CoefficientsMatchPointCounts)
{
    const auto t = eta_newform_11(400);
    EXPECT_EQ(t.at(1), 1);
    EXPECT_EQ(t.at(2), -2);
    EXPECT_EQ(t.at(3), -1);
    EXPECT_EQ(t.at(4), 2);
    EXPECT_EQ(t.at(4), t.at(2) * t.at(2) - 2);
    for (std::int64_t p = 2; p <= 397; ++p) {
        if (!arith::is_prime(p))
            continue;
        if (p == 11) {
            EXPECT_EQ(t.at(11), 1);
            continue;
        }
        EXPECT_EQ(t.at(p), ap_by_point_count(p)) << p;
        if (p * p <= 400)
            EXPECT_EQ(t.at(p * p), t.at(p) * t.at(p) - p) << p;
    }
    for (std::int64_t m = 1; m <= 20; ++m)
        for (std::int64_t n = 1; n <= 20; ++n)
            if (std::gcd(m, n) == 1)
                EXPECT_EQ(t.at(m * n), t.at(m) * t.at(n)) << m << " " << n;
    EXPECT_THROW(t.at(401), CapacityError);
    EXPECT_THROW(eta_newform_11(1), DomainError);
}

TEST(LValue, SmallDiscriminants)
{
    for (std::int64_t d : {-3, -4}) {
        const auto c = check_l_value(d);
        EXPECT_GT(c.value, 1e-3) << d;
        EXPECT_LT(c.drift(), 1e-9) << d;
        EXPECT_EQ(c.status, LStatus::Nonzero);
    }
    EXPECT_EQ(truncation_bound(-3), static_cast<std::int64_t>(std::ceil(36 * std::sqrt(11.0))));
    const auto small = eta_newform_11(50);
    EXPECT_THROW(l_value_twist(small, -3), CapacityError);
    EXPECT_THROW(l_value_twist(eta_newform_11(200), -7), DomainError);
    EXPECT_THROW(l_value_twist(eta_newform_11(200), -12), DomainError);
}

TEST(Predict, SpecExamples)
{
    const auto p3 = predict(11, -3, 5);
    EXPECT_EQ(p3.verdict, Verdict::FinitePredicted);
    EXPECT_EQ(p3.hD, 1);
    ASSERT_TRUE(p3.curve.has_value());
    EXPECT_EQ(p3.curve->first, -120528);
    EXPECT_EQ(p3.curve->second, Integer(-1080432) * -27);
    EXPECT_TRUE(p3.quotient_exhibited);
    const auto p47 = predict(11, -47, 5);
    EXPECT_EQ(p47.hD, 5);
    EXPECT_EQ(p47.verdict, Verdict::NoPrediction);
    EXPECT_FALSE(p47.criterion);
    EXPECT_THROW(predict(11, -7, 5), DomainError);
    EXPECT_THROW(predict(11, -12, 5), DomainError);
    EXPECT_THROW(predict(11, -3, 3), DomainError);
    EXPECT_THROW(predict(11, 5, 5), DomainError);
    const auto general = predict(23, -3, 11);
    EXPECT_FALSE(general.curve.has_value());
    EXPECT_FALSE(general.quotient_exhibited);
    EXPECT_FALSE(general.lvalue.has_value());
    EXPECT_TRUE(predict(11, -4, 5, true).lvalue.has_value());
}

TEST(Predict, ClassNumbers)
{
    EXPECT_EQ(class_number(-3), 1);
    EXPECT_EQ(class_number(-4), 1);
    for (std::int64_t d = -3; d >= -400; --d)
        if (arith::is_fundamental(d))
            EXPECT_EQ(class_number(d), class_number_slow(d)) << d;
    // Hurwitz and class number criteria agree below -4.
    for (std::int64_t d = -7; d >= -300; --d)
        if (arith::is_fundamental(d))
            EXPECT_EQ(classnum::hurwitz(d), class_number(d)) << d;
}
