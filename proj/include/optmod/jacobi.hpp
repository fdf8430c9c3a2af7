#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "optmod/rational.hpp"

// Exact series layer. An index-1 (mock) Jacobi form is determined by its
// coefficients C(D), D = s^2 - 4n, so it is stored as a table over the
// discriminants 0 >= D >= -dmax. Everything here is a finite truncation;
// identity certificates carry the dmax they were checked to.
namespace optmod::jacobi {

enum class SeriesKind { Hurwitz, CohenEisenstein, Rademacher, Cuspidal, McKayThompson, Combination };

std::string to_string(SeriesKind kind);
SeriesKind series_kind_from_string(const std::string& name);

using CoeffMap = std::map<std::int64_t, Rational, std::greater<>>;

class DiscSeries {
public:
    /// All-zero series over the discriminants in [-dmax, 0].
    DiscSeries(std::int64_t level, SeriesKind kind, std::int64_t dmax);

    /// Coefficients from a function of D; evaluated once per key.
    static DiscSeries from_function(std::int64_t level, SeriesKind kind, std::int64_t dmax,
                                    const std::function<Rational(std::int64_t)>& coeff);

    /// Takes an explicit table; keys must be exactly the discriminants in range.
    static DiscSeries from_coeffs(std::int64_t level, SeriesKind kind, std::int64_t dmax, CoeffMap coeffs);

    std::int64_t level() const { return level_; }
    SeriesKind kind() const { return kind_; }
    std::int64_t dmax() const { return dmax_; }
    const CoeffMap& coeffs() const { return coeffs_; }

    /// C(D); zero for positive D and non-discriminants, throws CapacityError
    /// below -dmax.
    Rational at(std::int64_t d) const;
    const Rational& operator[](std::int64_t d) const;

    bool is_integral() const;
    /// First D (descending) whose coefficient is not an integer.
    std::optional<std::int64_t> first_non_integral() const;

    DiscSeries scaled(const Rational& factor) const;
    DiscSeries truncated(std::int64_t dmax) const;
    DiscSeries with_kind(SeriesKind kind) const;

    friend bool operator==(const DiscSeries& a, const DiscSeries& b)
    {
        return a.level_ == b.level_ && a.kind_ == b.kind_ && a.dmax_ == b.dmax_ && a.coeffs_ == b.coeffs_;
    }

private:
    DiscSeries(std::int64_t level, SeriesKind kind, std::int64_t dmax, CoeffMap coeffs);
    void check_invariants() const;

    std::int64_t level_;
    SeriesKind kind_;
    std::int64_t dmax_;
    CoeffMap coeffs_;
};

/// Generalized Hurwitz class number generating function at level N (N prime or 1).
DiscSeries build_SH(std::int64_t n, std::int64_t dmax);
/// Cohen-Eisenstein series of prime level N.
DiscSeries build_SCoh(std::int64_t n, std::int64_t dmax);
/// The 1-optimal Eisenstein series (12/phi(N)) sum_{M|N} mu(N/M) (M/iota(M)) SH_M.
DiscSeries build_SR(std::int64_t n, std::int64_t dmax);

/// Coefficientwise sum of scalar multiples, truncated to the smallest dmax.
DiscSeries series_combine(const std::vector<std::pair<Rational, DiscSeries>>& terms);

struct CongruenceCertificate {
    bool holds = false;
    std::int64_t modulus = 1;
    std::int64_t dmax = 0;
    std::optional<std::int64_t> witness;  // first failing D
    std::string reason;                   // empty when holds
};

/// a = b mod M: every coefficient of a - b is an integer divisible by M.
CongruenceCertificate series_congruent(const DiscSeries& a, const DiscSeries& b, std::int64_t modulus);

/// Fourier expansion sum C(s^2 - 4n) q^n y^s, holomorphic part only
/// (terms with s^2 - 4n <= 0), keyed by (n, s).
struct QYExpansion {
    std::int64_t nmax = 0;
    std::map<std::pair<std::int64_t, std::int64_t>, Rational> terms;

    Rational at(std::int64_t n, std::int64_t s) const;
};

QYExpansion pack_qy(const DiscSeries& series, std::int64_t nmax);

/// Plus-space packing n -> C(-n), 0 <= n <= dmax, over n = 0, 3 mod 4.
using QTable = std::map<std::int64_t, Rational>;
QTable pack_plus_space(const DiscSeries& series);

/// Inverse of pack_plus_space: C(D) := table[-D].
DiscSeries series_from_plus_space(std::int64_t level, SeriesKind kind, std::int64_t dmax, const QTable& table);

/// theta_{m,r} = sum_{s = r mod 2m} q^{s^2/4m} y^s. Exponents of q are
/// stored multiplied by 4m, so a term is keyed (s^2, s).
struct ThetaExpansion {
    std::int64_t m = 1;
    std::int64_t r = 0;     // reduced into [0, 2m)
    std::int64_t nmax = 0;  // q-exponent bound before scaling
    std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> terms;

    std::int64_t exponent_scale() const { return 4 * m; }
};

ThetaExpansion theta_expansion(std::int64_t m, std::int64_t r, std::int64_t nmax);

/// theta_{m,r}(tau, 0), keyed by 4m * exponent.
std::map<std::int64_t, std::int64_t> thetanull(std::int64_t m, std::int64_t r, std::int64_t nmax);

/// One summand of t_d: conj(thetanull_{d^2, s d^2}) * theta_{1, s d}. Stored
/// as the formal factor pair; the conjugation is not modelled.
struct TdComponent {
    std::int64_t s = 0;
    std::int64_t antiholomorphic_scale = 4;  // exponent scale of the thetanull factor
    std::map<std::int64_t, std::int64_t> antiholomorphic;
    ThetaExpansion holomorphic;
};

std::array<TdComponent, 2> build_t_d(std::int64_t d, std::int64_t nmax);

/// JSON: {"level", "kind", "dmax", "coeffs": [[D, num, den], ...]} with D descending.
nlohmann::json to_json(const DiscSeries& series);
DiscSeries series_from_json(const nlohmann::json& j);

/// Integer as a JSON number when it fits in 64 bits, else as a decimal string.
nlohmann::json integer_to_json(const Integer& z);
Integer integer_from_json(const nlohmann::json& j);

}  // namespace optmod::jacobi
