#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "cmpoly/cache.hpp"

using namespace cmpoly;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
    std::random_device rd;
    fs::path p = fs::temp_directory_path() / ("cmpoly-test-" + std::to_string(rd()));
    fs::remove_all(p);
    return p;
}

}  // namespace

TEST(DiskCache, RoundTrip) {
    fs::path dir = scratch_dir();
    DiskCache c(dir);
    EXPECT_FALSE(c.load("poly", "k").has_value());
    c.store("poly", "k", "line one\nline two\n");
    auto got = c.load("poly", "k");
    ASSERT_TRUE(got.has_value());
    EXPECT_EQ(*got, "line one\nline two\n");
    EXPECT_FALSE(c.load("poly", "other").has_value());
    fs::remove_all(dir);
}

TEST(DiskCache, CorruptedPayloadIsIgnored) {
    fs::path dir = scratch_dir();
    DiskCache c(dir);
    c.store("poly", "k", "12345\n");
    {
        std::ofstream out(c.path("poly", "k"), std::ios::binary);
        out << "12346\n";
    }
    EXPECT_FALSE(c.load("poly", "k").has_value());
    c.store("poly", "k", "12345\n");
    EXPECT_TRUE(c.load("poly", "k").has_value());
    fs::remove_all(dir);
}

TEST(Memo, ComputesOncePerKey) {
    std::string saved = settings().cache_dir;
    fs::path dir = scratch_dir();
    settings().cache_dir = dir.string();
    int calls = 0;
    auto enc = [](const int& v) { return std::to_string(v); };
    auto dec = [](const std::string& s) { return std::stoi(s); };
    {
        Memo<int> m("num", enc, dec);
        EXPECT_EQ(m.get("a", [&] { ++calls; return 41; }), 41);
        EXPECT_EQ(m.get("a", [&] { ++calls; return 0; }), 41);
        EXPECT_EQ(calls, 1);
    }
    {
        Memo<int> fresh("num", enc, dec);
        EXPECT_EQ(fresh.get("a", [&] { ++calls; return 0; }), 41);
        EXPECT_EQ(calls, 1);
    }
    settings().cache_dir = saved;
    fs::remove_all(dir);
}
