#include <cstdio>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "optmod/arith.hpp"
#include "optmod/cache.hpp"
#include "optmod/classnum.hpp"
#include "optmod/errors.hpp"
#include "optmod/grpmod.hpp"
#include "optmod/jacobi.hpp"
#include "optmod/lfun.hpp"
#include "optmod/quaternion.hpp"
#include "optmod/suites.hpp"
#include "optmod/version.hpp"

using namespace optmod;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCapacity = 3;

json rational_json(const Rational& q)
{
    return json::array({jacobi::integer_to_json(q.get_num()), jacobi::integer_to_json(q.get_den())});
}

// Plain table: columns padded to the widest cell.
void print_table(std::ostream& os, const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows)
{
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c)
        width[c] = header[c].size();
    for (const auto& r : rows)
        for (std::size_t c = 0; c < r.size(); ++c)
            width[c] = std::max(width[c], r[c].size());
    auto line = [&](const std::vector<std::string>& r) {
        for (std::size_t c = 0; c < r.size(); ++c) {
            os << std::left << std::setw(static_cast<int>(width[c])) << r[c];
            os << (c + 1 < r.size() ? "  " : "\n");
        }
    };
    line(header);
    for (const auto& r : rows)
        line(r);
}

std::string csv_cell(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char ch : s)
        out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return out + "\"";
}

void print_csv(std::ostream& os, const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows)
{
    auto line = [&](const std::vector<std::string>& r) {
        for (std::size_t c = 0; c < r.size(); ++c)
            os << csv_cell(r[c]) << (c + 1 < r.size() ? "," : "\n");
    };
    line(header);
    for (const auto& r : rows)
        line(r);
}

void emit(const std::string& format, const std::vector<std::string>& header,
          const std::vector<std::vector<std::string>>& rows, const json& doc)
{
    if (format == "json")
        std::cout << doc.dump(2) << '\n';
    else if (format == "csv")
        print_csv(std::cout, header, rows);
    else
        print_table(std::cout, header, rows);
}

struct Options {
    std::string format = "table";
    std::int64_t level = 11;
    std::vector<std::int64_t> levels;
    std::int64_t dmin = -50;
    std::int64_t dmax = 0;
    std::int64_t bound = 100;
    std::int64_t prec = 40;
    std::int64_t p = 0;
    bool with_lvalue = false;
    std::string kind = "hurwitz";
    std::string module = "full";
    std::string element = "g";
    std::vector<std::string> checks;
    std::string cache_path;
    bool no_cache = false;
};

// ---------------------------------------------------------------- commands

int cmd_classnum(const Options& o)
{
    if (o.dmin > o.dmax || o.dmax > 0)
        throw InvalidInput("classnum: need dmin <= dmax <= 0");
    std::function<Rational(std::int64_t)> f;
    if (o.kind == "hurwitz")
        f = [](std::int64_t d) { return classnum::hurwitz(d); };
    else if (o.kind == "generalized")
        f = [&o](std::int64_t d) { return classnum::hurwitz_generalized(o.level, d); };
    else if (o.kind == "cohen")
        f = [&o](std::int64_t d) { return classnum::cohen_coeff(o.level, d); };
    else
        throw InvalidInput("classnum: unknown --kind " + o.kind);
    if (o.kind != "hurwitz")
        arith::require_prime(o.level, "classnum --level");

    std::vector<std::vector<std::string>> rows;
    json values = json::array();
    for (std::int64_t d = o.dmin; d <= o.dmax; ++d) {
        if (!arith::is_discriminant(d))
            continue;
        const Rational v = f(d);
        rows.push_back({std::to_string(d), to_fraction_string(v)});
        values.push_back({{"D", d}, {"value", rational_json(v)}});
    }
    json doc{{"kind", o.kind}, {"level", o.kind == "hurwitz" ? 1 : o.level}, {"values", values}};
    emit(o.format, {"D", "value"}, rows, doc);
    return kExitPass;
}

jacobi::DiscSeries select_series(const Options& o)
{
    const std::int64_t dmax = o.bound;
    if (dmax < 4)
        throw InvalidInput("series: --bound must be at least 4");
    const auto kind = jacobi::series_kind_from_string(o.kind);
    switch (kind) {
    case jacobi::SeriesKind::Hurwitz:
        return jacobi::build_SH(o.level, dmax);
    case jacobi::SeriesKind::CohenEisenstein:
        return jacobi::build_SCoh(o.level, dmax);
    case jacobi::SeriesKind::Rademacher:
        return jacobi::build_SR(o.level, dmax);
    case jacobi::SeriesKind::Cuspidal:
        return quaternion::build_phiN(o.level, dmax);
    case jacobi::SeriesKind::McKayThompson: {
        grpmod::VirtualModuleTable t = o.module == "eisenstein"
                                           ? grpmod::build_eisenstein_module(o.level, dmax)
                                           : grpmod::build_full_module(o.level, dmax, quaternion::build_phiN(o.level, dmax));
        return o.element == "e" ? t.trace_e() : t.trace_g();
    }
    case jacobi::SeriesKind::Combination:
        break;
    }
    throw InvalidInput("series: --kind " + o.kind + " cannot be dumped directly");
}

int cmd_series(const Options& o)
{
    if (o.module != "eisenstein" && o.module != "full")
        throw InvalidInput("series: --module must be eisenstein or full");
    if (o.element != "e" && o.element != "g")
        throw InvalidInput("series: --element must be e or g");
    const auto s = select_series(o);
    std::vector<std::vector<std::string>> rows;
    for (const auto& [d, v] : s.coeffs())
        rows.push_back({std::to_string(d), to_fraction_string(v)});
    emit(o.format, {"D", "coefficient"}, rows, jacobi::to_json(s));
    return kExitPass;
}

int cmd_verify(const Options& o)
{
    std::vector<std::string> checks = o.checks;
    if (checks.empty())
        checks = suites::suite_names();
    std::vector<std::int64_t> levels = o.levels.empty() ? std::vector<std::int64_t>{o.level} : o.levels;
    const std::int64_t dmax = o.bound;

    std::vector<suites::CheckOutcome> outcomes;
    for (const auto& check : checks) {
        const std::string name = suites::canonical_suite(check);
        for (std::int64_t n : levels) {
            auto part = suites::run(name, n, dmax);
            outcomes.insert(outcomes.end(), part.begin(), part.end());
        }
    }
    bool all = true;
    std::vector<std::vector<std::string>> rows;
    json arr = json::array();
    for (const auto& c : outcomes) {
        all = all && c.passed;
        rows.push_back({c.suite, std::to_string(c.level), std::to_string(c.dmax), c.name, c.passed ? "PASS" : "FAIL",
                        c.witness, c.detail});
        arr.push_back({{"suite", c.suite},
                       {"level", c.level},
                       {"dmax", c.dmax},
                       {"check", c.name},
                       {"passed", c.passed},
                       {"witness", c.witness},
                       {"detail", c.detail}});
    }
    json doc{{"version", kVersion}, {"passed", all}, {"results", arr}};
    emit(o.format, {"suite", "level", "dmax", "check", "status", "witness", "detail"}, rows, doc);
    return all ? kExitPass : kExitCheckFailed;
}

int cmd_supersingular(const Options& o, cache::Cache* store)
{
    if (o.prec < 4)
        throw InvalidInput("supersingular: --prec must be at least 4");
    const auto set = quaternion::ideal_classes(o.level);
    json classes = json::array();
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < set.classes.size(); ++i) {
        const auto& c = set.classes[i];
        std::optional<std::vector<std::int64_t>> theta;
        if (store)
            theta = store->theta(o.level, i, o.prec);
        if (!theta) {
            theta = quaternion::theta_trace_zero(c.right_order, o.prec).coeffs;
            if (store)
                store->put_theta(o.level, i, *theta);
        }
        std::ostringstream th;
        for (std::size_t k = 0; k < theta->size(); ++k)
            if ((*theta)[k] != 0)
                th << (th.tellp() > 0 ? " " : "") << (*theta)[k] << "q^" << k;
        rows.push_back({std::to_string(i), std::to_string(c.right_order.w), c.norm.get_str(), th.str()});
        classes.push_back({{"index", i},
                           {"w", c.right_order.w},
                           {"ideal_norm", jacobi::integer_to_json(c.norm)},
                           {"theta", *theta}});
    }
    json w = json::array();
    for (auto x : set.weights())
        w.push_back(x);
    json doc{{"level", set.level},
             {"algebra", {{"a", set.algebra.a}, {"b", set.algebra.b}}},
             {"ramified", quaternion::ramified_places(set.algebra)},
             {"class_count", set.classes.size()},
             {"w", w},
             {"mass", rational_json(set.mass)},
             {"prec", o.prec},
             {"classes", classes}};
    if (o.format == "json") {
        std::cout << doc.dump(2) << '\n';
    } else {
        std::cout << "algebra (" << set.algebra.a << ", " << set.algebra.b << "), " << set.classes.size()
                  << " classes, mass " << to_fraction_string(set.mass) << '\n';
        if (o.format == "csv")
            print_csv(std::cout, {"class", "w", "ideal_norm", "theta"}, rows);
        else
            print_table(std::cout, {"class", "w", "ideal_norm", "theta"}, rows);
    }
    return kExitPass;
}

int cmd_predict(const Options& o)
{
    if (o.dmin > o.dmax || o.dmax >= 0)
        throw InvalidInput("predict: need dmin <= dmax < 0");
    arith::require_prime(o.level, "predict --level");
    std::int64_t p = o.p;
    if (p == 0) {
        const auto lc = arith::level_constants(o.level);
        if (lc.n_coh == 1)
            throw InvalidInput("predict: nCoh = 1 at N = " + std::to_string(o.level) + ", no prime p available");
        p = arith::factor(lc.n_coh).front().first;
    }
    std::vector<std::vector<std::string>> rows;
    json arr = json::array();
    for (std::int64_t d = o.dmax; d >= o.dmin; --d) {
        if (!arith::is_fundamental(d) || arith::kronecker(d, o.level) != -1)
            continue;
        const auto t = lfun::predict(o.level, d, p, o.with_lvalue);
        std::string lv;
        if (t.lvalue) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.12f", t.lvalue->value);
            lv = buf;
        }
        const std::string a4 = t.curve ? t.curve->first.get_str() : "";
        const std::string a6 = t.curve ? t.curve->second.get_str() : "";
        rows.push_back({std::to_string(d), std::to_string(t.hD), std::to_string(t.hD_mod_p), lfun::to_string(t.verdict),
                        lv, a4, a6});
        json j{{"D", d},
               {"hD", t.hD},
               {"hD_mod_p", t.hD_mod_p},
               {"p", p},
               {"verdict", lfun::to_string(t.verdict)},
               {"quotient_exhibited", t.quotient_exhibited}};
        if (t.lvalue)
            j["lvalue"] = {{"value", t.lvalue->value},
                           {"terms", t.lvalue->terms},
                           {"drift", t.lvalue->drift()},
                           {"status", lfun::to_string(t.lvalue->status)}};
        if (t.curve)
            j["curve"] = {{"a4", jacobi::integer_to_json(t.curve->first)}, {"a6", jacobi::integer_to_json(t.curve->second)}};
        arr.push_back(j);
    }
    json doc{{"level", o.level}, {"p", p}, {"predictions", arr}};
    emit(o.format, {"D", "hD", "hD_mod_p", "verdict", "lvalue", "curve_a4", "curve_a6"}, rows, doc);
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Class numbers, optimal Z/NZ-modules and supersingular theta series"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);
    Options o;
    app.add_option("--cache", o.cache_path, "Cache file (overrides OPTMOD_CACHE)");
    app.add_flag("--no-cache", o.no_cache, "Ignore any cache");

    const std::vector<std::string> formats{"json", "csv", "table"};
    auto add_format = [&](CLI::App* sub, const std::string& def) {
        o.format = def;
        sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember(formats))->capture_default_str();
    };

    auto* classnum_cmd = app.add_subcommand("classnum", "Tables of H, HN and HCoh");
    classnum_cmd->add_option("--kind", o.kind, "hurwitz | generalized | cohen")->capture_default_str();
    classnum_cmd->add_option("--level", o.level, "Prime level N")->capture_default_str();
    classnum_cmd->add_option("--dmin", o.dmin, "Smallest discriminant")->capture_default_str();
    classnum_cmd->add_option("--dmax", o.dmax, "Largest discriminant (<= 0)")->capture_default_str();
    add_format(classnum_cmd, "table");

    auto* series_cmd = app.add_subcommand("series", "Dump a coefficient series");
    series_cmd->add_option("--kind", o.kind, "hurwitz | cohen_eisenstein | rademacher | cuspidal | mckay_thompson")
        ->capture_default_str();
    series_cmd->add_option("--level", o.level, "Level")->capture_default_str();
    series_cmd->add_option("--dmax", o.bound, "Coefficients for 0 >= D >= -dmax")->capture_default_str();
    series_cmd->add_option("--module", o.module, "eisenstein | full (mckay_thompson only)")->capture_default_str();
    series_cmd->add_option("--element", o.element, "e | g (mckay_thompson only)")->capture_default_str();

    auto* verify_cmd = app.add_subcommand("verify", "Run named check suites");
    verify_cmd->add_option("--check", o.checks, "Suite name, repeatable (default: all)");
    verify_cmd->add_option("--level", o.levels, "Prime level, repeatable")->delimiter(',');
    verify_cmd->add_option("--dmax", o.bound, "Discriminant bound")->capture_default_str();

    auto* ss_cmd = app.add_subcommand("supersingular", "Ideal classes and theta series of the maximal order");
    ss_cmd->add_option("--level", o.level, "Prime level N")->capture_default_str();
    ss_cmd->add_option("--prec", o.prec, "Theta precision")->capture_default_str();

    auto* predict_cmd = app.add_subcommand("predict", "Class-number criterion for quadratic twists");
    predict_cmd->add_option("--level", o.level, "Prime level N")->capture_default_str();
    predict_cmd->add_option("--dmin", o.dmin, "Smallest discriminant")->capture_default_str();
    predict_cmd->add_option("--dmax", o.dmax, "Largest discriminant (< 0)");
    predict_cmd->add_option("--p", o.p, "Prime divisor of nCoh (default: smallest)");
    predict_cmd->add_flag("--with-lvalue", o.with_lvalue, "Attach the numerical L-value (N = 11)");

    // Defaults differ per subcommand; set them before parsing.
    series_cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember(formats));
    verify_cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember(formats));
    ss_cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember(formats));
    predict_cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember(formats));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    if (predict_cmd->parsed()) {
        if (predict_cmd->count("--format") == 0)
            o.format = "csv";
        if (predict_cmd->count("--dmax") == 0)
            o.dmax = -1;
    }
    if (series_cmd->parsed() && series_cmd->count("--format") == 0)
        o.format = "json";
    if (ss_cmd->parsed() && ss_cmd->count("--format") == 0)
        o.format = "json";
    if (verify_cmd->parsed() && verify_cmd->count("--dmax") == 0)
        o.bound = 500;

    std::optional<cache::Cache> store;
    if (!o.no_cache) {
        std::optional<std::filesystem::path> path;
        if (!o.cache_path.empty())
            path = o.cache_path;
        else
            path = cache::Cache::path_from_env();
        if (path) {
            store.emplace(*path);
            store->load(std::cerr);
            store->seed_hurwitz_memo();
        }
    }

    int code = kExitPass;
    try {
        if (classnum_cmd->parsed())
            code = cmd_classnum(o);
        else if (series_cmd->parsed())
            code = cmd_series(o);
        else if (verify_cmd->parsed())
            code = cmd_verify(o);
        else if (ss_cmd->parsed())
            code = cmd_supersingular(o, store ? &*store : nullptr);
        else if (predict_cmd->parsed())
            code = cmd_predict(o);
    } catch (const CapacityError& e) {
        std::cerr << "capacity: " << e.what() << '\n';
        return kExitCapacity;
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitCheckFailed;
    }

    if (store) {
        store->absorb_hurwitz_memo();
        try {
            store->save();
        } catch (const std::exception& e) {
            std::cerr << "warning: could not write cache: " << e.what() << '\n';
        }
    }
    return code;
}
