#ifndef WHMF_CACHE_HPP
#define WHMF_CACHE_HPP

#include <unistd.h>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "whmf/qseries.hpp"

namespace whmf {

// FNV-1a 64-bit, the content key for cached expansions.
inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (const unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

// On-disk series cache, content-addressed by (canonical spec, prec). Lookup
// order for the directory: explicit argument, WHMF_CACHE_DIR, .whmf-cache/.
// A corrupt or unparseable entry is treated as a miss and overwritten.
class SeriesCache {
public:
    explicit SeriesCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    static SeriesCache resolve(const std::string& flag_dir) {
        if (!flag_dir.empty()) return SeriesCache(flag_dir);
        if (const char* env = std::getenv("WHMF_CACHE_DIR"); env && *env)
            return SeriesCache(env);
        return SeriesCache(".whmf-cache");
    }

    const std::filesystem::path& dir() const { return dir_; }

    std::filesystem::path path_for(const std::string& key) const {
        std::ostringstream name;
        name << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(key)
             << ".qs";
        return dir_ / name.str();
    }

    std::optional<QSeries> load(const std::string& key) const {
        std::ifstream in(path_for(key));
        if (!in) return std::nullopt;
        std::ostringstream buf;
        buf << in.rdbuf();
        try {
            return from_text(buf.str());
        } catch (const std::exception&) {
            return std::nullopt;  // corrupt entry: recompute and overwrite
        }
    }

    // Atomic publish: write a sibling temp file, then rename over the target.
    void store(const std::string& key, const QSeries& f) const {
        std::filesystem::create_directories(dir_);
        const std::filesystem::path target = path_for(key);
        std::filesystem::path tmp = target;
        tmp += ".tmp" + std::to_string(static_cast<unsigned long>(::getpid()));
        {
            std::ofstream out(tmp, std::ios::trunc);
            if (!out)
                throw std::runtime_error("cache: cannot write " + tmp.string());
            out << to_text(f);
        }
        std::filesystem::rename(tmp, target);
    }

private:
    std::filesystem::path dir_;
};

}  // namespace whmf

#endif
