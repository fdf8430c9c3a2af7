#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "optmod/jacobi.hpp"

// Z/NZ-module layer: trace tables of virtual graded modules, their character
// multiplicities, and Thompson-criterion certificates.
namespace optmod::grpmod {

using jacobi::CoeffMap;
using jacobi::DiscSeries;

class VirtualModuleTable {
public:
    /// base_c is the constant the traces were normalized to (trace[0] = -base_c).
    static VirtualModuleTable from_traces(std::int64_t n, std::int64_t base_c, DiscSeries trace_e, DiscSeries trace_g);

    std::int64_t level() const { return n_; }
    std::int64_t base_c() const { return base_c_; }
    std::int64_t dmax() const { return trace_e_.dmax(); }
    const DiscSeries& trace_e() const { return trace_e_; }
    const DiscSeries& trace_g() const { return trace_g_; }
    /// Rational until certified; integral tables have integer values here.
    const CoeffMap& mult_trivial() const { return mult_trivial_; }
    const CoeffMap& mult_nontrivial() const { return mult_nontrivial_; }

    /// tr(g^k | W_D) for k = 0..N-1.
    std::vector<Rational> character_row(std::int64_t d) const;

private:
    std::int64_t n_ = 0;
    std::int64_t base_c_ = 1;
    DiscSeries trace_e_{1, jacobi::SeriesKind::McKayThompson, 0};
    DiscSeries trace_g_{1, jacobi::SeriesKind::McKayThompson, 0};
    CoeffMap mult_trivial_;
    CoeffMap mult_nontrivial_;
};

std::int64_t eisenstein_c(std::int64_t n);
std::int64_t copt(std::int64_t n);
std::int64_t genus_X0(std::int64_t n);
std::int64_t rank_Lopt(std::int64_t n);

VirtualModuleTable build_eisenstein_module(std::int64_t n, std::int64_t dmax);
VirtualModuleTable build_full_module(std::int64_t n, std::int64_t dmax, const DiscSeries& phi);

struct NamedCheck {
    std::string name;
    bool passed = false;
    std::optional<std::int64_t> witness;
    std::string detail;
};

enum class Minimality { Certified, Inconclusive };

struct OptimalityCertificate {
    std::int64_t level = 0;
    std::int64_t c = 0;
    std::int64_t dmax = 0;
    std::vector<NamedCheck> checks;
    std::optional<std::pair<std::int64_t, std::int64_t>> coprime_witness;
    Minimality minimality = Minimality::Inconclusive;
    std::string note;

    bool valid() const;
    const NamedCheck& check(const std::string& name) const;
};

/// Runs the Thompson-criterion checks on the table's traces rescaled to
/// constant term -c.
OptimalityCertificate certify(const VirtualModuleTable& table, std::int64_t c);

nlohmann::json to_json(const OptimalityCertificate& cert);

}  // namespace optmod::grpmod
