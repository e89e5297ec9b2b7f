#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "repro.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Acceptance matrix"};
    cmpoly::repro::Options opt;
    bool no_n24 = false;
    std::vector<std::string> known;
    std::string cache_dir;
    app.add_flag("--full", opt.full, "Include the long-running cases");
    app.add_flag("--no-n24", no_n24, "Skip the n = 24 partition polynomial");
    app.add_option("--known", known, "Check id whose failure does not fail the run");
    app.add_option("--cache-dir", cache_dir, "Directory for cached polynomials");
    CLI11_PARSE(app, argc, argv);
    opt.n24 = !no_n24;
    opt.known.insert(known.begin(), known.end());
    if (!cache_dir.empty()) cmpoly::settings().cache_dir = cache_dir;
    try {
        return cmpoly::repro::run_all(std::cout, opt).ok ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
