#pragma once

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include "cmpoly/arith.hpp"

namespace cmpoly {

/// Process-wide knobs.  Defaults come from CMPOLY_CACHE_DIR and CMPOLY_JOBS.
struct Settings {
    std::string cache_dir;
    unsigned jobs = 1;
    double safety = 1.25;
    u64 seed = 0;
    bool validate_combos = false;
    bool verbose = false;
};

inline Settings& settings() {
    static Settings s = [] {
        Settings r;
        if (const char* d = std::getenv("CMPOLY_CACHE_DIR")) r.cache_dir = d;
        r.jobs = std::max(1u, std::thread::hardware_concurrency());
        if (const char* j = std::getenv("CMPOLY_JOBS")) {
            int v = std::atoi(j);
            if (v > 0) r.jobs = static_cast<unsigned>(v);
        }
        return r;
    }();
    return s;
}

inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

/// One text file per entry, `<kind>_<key>.txt`, plus a `.digest` sidecar.
class DiskCache {
public:
    explicit DiskCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    std::filesystem::path path(const std::string& kind, const std::string& key) const { return dir_ / (kind + "_" + key + ".txt"); }

    std::optional<std::string> load(const std::string& kind, const std::string& key) const {
        auto p = path(kind, key);
        std::ifstream in(p, std::ios::binary), dg(p.string() + ".digest");
        if (!in || !dg) return std::nullopt;
        std::stringstream ss;
        ss << in.rdbuf();
        std::string digest;
        dg >> digest;
        if (digest != hex64(fnv1a(ss.str()))) return std::nullopt;
        return ss.str();
    }

    void store(const std::string& kind, const std::string& key, const std::string& payload) const {
        std::filesystem::create_directories(dir_);
        auto p = path(kind, key);
        std::string tag = "." + hex64(fnv1a(payload + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()))));
        auto write = [&](const std::filesystem::path& target, const std::string& text) {
            std::filesystem::path tmp = target.string() + tag + ".tmp";
            {
                std::ofstream out(tmp, std::ios::binary);
                out << text;
            }
            std::filesystem::rename(tmp, target);
        };
        write(p, payload);
        write(p.string() + ".digest", hex64(fnv1a(payload)) + "\n");
    }

private:
    std::filesystem::path dir_;
};

/// Memoizes text-serializable values in memory and, when a cache directory
/// is configured, on disk.
template <class T>
class Memo {
public:
    using Encode = std::function<std::string(const T&)>;
    using Decode = std::function<T(const std::string&)>;

    Memo(std::string kind, Encode enc, Decode dec) : kind_(std::move(kind)), enc_(std::move(enc)), dec_(std::move(dec)) {}

    template <class Make>
    T get(const std::string& key, Make&& make) {
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = mem_.find(key);
            if (it != mem_.end()) return it->second;
        }
        const std::string& dir = settings().cache_dir;
        if (!dir.empty()) {
            if (auto text = DiskCache(dir).load(kind_, key)) {
                T v = dec_(*text);
                std::lock_guard<std::mutex> lock(mu_);
                return mem_.emplace(key, v).first->second;
            }
        }
        T v = make();
        if (!dir.empty()) DiskCache(dir).store(kind_, key, enc_(v));
        std::lock_guard<std::mutex> lock(mu_);
        return mem_.emplace(key, v).first->second;
    }

    void clear() {
        std::lock_guard<std::mutex> lock(mu_);
        mem_.clear();
    }

private:
    std::string kind_;
    Encode enc_;
    Decode dec_;
    std::mutex mu_;
    std::map<std::string, T> mem_;
};

}  // namespace cmpoly
