#include "optmod/cache.hpp"

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "optmod/classnum.hpp"
#include "optmod/errors.hpp"
#include "optmod/version.hpp"

namespace optmod::cache {

using nlohmann::json;

namespace {

std::vector<std::string> split_key(const std::string& key)
{
    std::vector<std::string> parts;
    std::stringstream ss(key);
    std::string part;
    while (std::getline(ss, part, ':'))
        parts.push_back(part);
    return parts;
}

std::int64_t parse_int(const std::string& s)
{
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size())
        throw InvalidInput("trailing characters in '" + s + "'");
    return v;
}

// Shape check only: H(0) = -1/12, otherwise H(D) > 0 with denominator 1, 2 or 3.
bool plausible_hurwitz(std::int64_t d, const Rational& v)
{
    if (d > 0 || (d % 4 != 0 && d % 4 != -3))
        return false;
    if (d == 0)
        return v == make_rational(-1, 12);
    return v > 0 && (v.get_den() == 1 || v.get_den() == 2 || v.get_den() == 3);
}

}  // namespace

Cache::Cache(std::filesystem::path path) : path_(std::move(path)) {}

std::optional<std::filesystem::path> Cache::path_from_env()
{
    const char* env = std::getenv("OPTMOD_CACHE");
    if (env == nullptr || *env == '\0')
        return std::nullopt;
    return std::filesystem::path(env);
}

void Cache::load(std::ostream& warn)
{
    classnum_.clear();
    theta_.clear();
    std::ifstream in(path_);
    if (!in)
        return;
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        warn << "warning: cache " << path_.string() << " is not valid JSON; ignoring it\n";
        return;
    }
    if (!doc.is_object() || !doc.contains("version") || doc["version"] != kVersion) {
        warn << "warning: cache " << path_.string() << " has a different version; ignoring it\n";
        return;
    }
    if (!doc.contains("entries") || !doc["entries"].is_object()) {
        warn << "warning: cache " << path_.string() << " has no entries object; ignoring it\n";
        return;
    }
    for (const auto& [key, value] : doc["entries"].items()) {
        try {
            const auto parts = split_key(key);
            if (parts.size() != 3)
                throw InvalidInput("bad key");
            const std::int64_t level = parse_int(parts[1]);
            if (parts[0] == "classnum") {
                if (!value.is_array() || value.size() != 2)
                    throw InvalidInput("bad value");
                const Integer num(value[0].is_string() ? value[0].get<std::string>()
                                                       : std::to_string(value[0].get<std::int64_t>()));
                const Integer den(value[1].is_string() ? value[1].get<std::string>()
                                                       : std::to_string(value[1].get<std::int64_t>()));
                if (den <= 0)
                    throw InvalidInput("bad denominator");
                const std::int64_t d = parse_int(parts[2]);
                const Rational v = make_rational(num, den);
                if (level == 1 && !plausible_hurwitz(d, v))
                    throw InvalidInput("implausible value");
                classnum_[{level, d}] = v;
            } else if (parts[0] == "theta") {
                const std::int64_t index = parse_int(parts[2]);
                if (index < 0 || !value.is_array() || value.empty() || value[0] != 1)
                    throw InvalidInput("bad value");
                theta_[{level, static_cast<std::size_t>(index)}] = value.get<std::vector<std::int64_t>>();
            } else {
                throw InvalidInput("unknown entry kind");
            }
        } catch (const std::exception&) {
            warn << "warning: discarding corrupt cache entry '" << key << "'\n";
        }
    }
}

void Cache::save() const
{
    json entries = json::object();
    for (const auto& [key, value] : classnum_) {
        const std::string k = "classnum:" + std::to_string(key.first) + ":" + std::to_string(key.second);
        entries[k] = json::array({value.get_num().get_str(), value.get_den().get_str()});
    }
    for (const auto& [key, value] : theta_)
        entries["theta:" + std::to_string(key.first) + ":" + std::to_string(key.second)] = value;
    const json doc{{"version", kVersion}, {"entries", entries}};
    if (path_.has_parent_path())
        std::filesystem::create_directories(path_.parent_path());
    const auto tmp = path_.string() + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out)
            throw InvalidInput("cannot write cache file " + tmp);
        out << doc.dump() << '\n';
    }
    std::filesystem::rename(tmp, path_);
}

std::optional<Rational> Cache::classnum(std::int64_t level, std::int64_t d) const
{
    auto it = classnum_.find({level, d});
    if (it == classnum_.end())
        return std::nullopt;
    return it->second;
}

void Cache::put_classnum(std::int64_t level, std::int64_t d, const Rational& value) { classnum_[{level, d}] = value; }

std::optional<std::vector<std::int64_t>> Cache::theta(std::int64_t level, std::size_t index, std::int64_t prec) const
{
    auto it = theta_.find({level, index});
    if (it == theta_.end() || static_cast<std::int64_t>(it->second.size()) < prec + 1)
        return std::nullopt;
    return std::vector<std::int64_t>(it->second.begin(), it->second.begin() + prec + 1);
}

void Cache::put_theta(std::int64_t level, std::size_t index, const std::vector<std::int64_t>& coeffs)
{
    auto& slot = theta_[{level, index}];
    if (coeffs.size() > slot.size())
        slot = coeffs;
}

void Cache::seed_hurwitz_memo() const
{
    std::map<std::int64_t, Rational> entries;
    for (const auto& [key, value] : classnum_)
        if (key.first == 1)
            entries.emplace(key.second, value);
    classnum::memo::seed(entries);
}

void Cache::absorb_hurwitz_memo()
{
    for (const auto& [d, value] : classnum::memo::snapshot())
        classnum_[{1, d}] = value;
}

}  // namespace optmod::cache
