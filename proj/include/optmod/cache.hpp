#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "optmod/rational.hpp"

namespace optmod::cache {

/// Advisory on-disk cache: {"version": ..., "entries": {"classnum:N:D": [num, den],
/// "theta:N:i": [r(0), r(1), ...]}}. Entries never change results, only speed.
class Cache {
public:
    explicit Cache(std::filesystem::path path);

    /// Path from OPTMOD_CACHE, if set.
    static std::optional<std::filesystem::path> path_from_env();

    /// Missing file is not an error. A version mismatch or unreadable file
    /// empties the cache; malformed entries are skipped. Warnings go to `warn`.
    void load(std::ostream& warn);
    void save() const;

    std::optional<Rational> classnum(std::int64_t level, std::int64_t d) const;
    void put_classnum(std::int64_t level, std::int64_t d, const Rational& value);

    /// Cached theta table with at least prec + 1 coefficients, truncated to prec.
    std::optional<std::vector<std::int64_t>> theta(std::int64_t level, std::size_t index, std::int64_t prec) const;
    void put_theta(std::int64_t level, std::size_t index, const std::vector<std::int64_t>& coeffs);

    /// Moves Hurwitz class numbers between the cache and the in-process memo.
    void seed_hurwitz_memo() const;
    void absorb_hurwitz_memo();

    std::size_t size() const { return classnum_.size() + theta_.size(); }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
    std::map<std::pair<std::int64_t, std::int64_t>, Rational> classnum_;
    std::map<std::pair<std::int64_t, std::size_t>, std::vector<std::int64_t>> theta_;
};

}  // namespace optmod::cache
