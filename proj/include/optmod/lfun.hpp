#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "optmod/rational.hpp"

// Class-number criterion for quadratic twists of optimal quotients of J0(N),
// with the explicit level-11 curve and a numerical twisted L-value.
namespace optmod::lfun {

struct NewformTable {
    std::int64_t level = 11;
    std::int64_t prec = 0;
    std::vector<std::int64_t> a;  // a[n] for 0 <= n <= prec, a[0] = 0

    std::int64_t at(std::int64_t n) const;
};

/// q prod (1 - q^n)^2 (1 - q^11n)^2 through q^prec.
NewformTable eta_newform_11(std::int64_t prec);

/// Truncation bound ceil(12 |D| sqrt 11).
std::int64_t truncation_bound(std::int64_t d);

/// 2 sum_{n <= terms} a_n (D/n) / n exp(-2 pi n / (|D| sqrt 11)).
double twisted_sum(const NewformTable& table, std::int64_t d, std::int64_t terms);

/// L(f x D, 1) using truncation_bound(D) terms.
double l_value_twist(const NewformTable& table, std::int64_t d);

enum class LStatus { Nonzero, Inconclusive, Vanishing };
std::string to_string(LStatus status);

struct LValueCheck {
    double value = 0.0;      // with T terms
    double doubled = 0.0;    // with 2T terms
    std::int64_t terms = 0;  // T
    LStatus status = LStatus::Inconclusive;

    double drift() const;
};

inline constexpr double kNonzeroThreshold = 1e-3;
inline constexpr double kConvergenceTolerance = 1e-9;

/// Evaluates at T and 2T on a shared, lazily extended table.
LValueCheck check_l_value(std::int64_t d);

/// h(D) for a negative fundamental discriminant.
std::int64_t class_number(std::int64_t d);

enum class Verdict { FinitePredicted, NoPrediction };
std::string to_string(Verdict verdict);

struct TwistPrediction {
    std::int64_t level = 0;
    std::int64_t d = 0;
    std::int64_t p = 0;
    std::int64_t hD = 0;
    std::int64_t hD_mod_p = 0;
    bool criterion = false;
    Verdict verdict = Verdict::NoPrediction;
    bool quotient_exhibited = false;
    std::optional<LValueCheck> lvalue;
    std::optional<std::pair<Integer, Integer>> curve;  // (a4, a6) of y^2 = x^3 + a4 x + a6
};

/// (-13392 D^2, -1080432 D^3).
std::pair<Integer, Integer> twisted_curve_11(std::int64_t d);

TwistPrediction predict(std::int64_t n, std::int64_t d, std::int64_t p, bool with_lvalue = false);

}  // namespace optmod::lfun
