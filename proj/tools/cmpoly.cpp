#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cmpoly/partition.hpp"
#include "repro.hpp"

using namespace cmpoly;

namespace {

void report(const LiftStats& st, const std::string& what) {
    if (!settings().verbose) return;
    std::cerr << what << ": " << st.used.size() << " primes, " << st.rejected.size() << " rejected, height " << st.height << " of bound "
              << st.bound << "\n";
    for (auto& [p, why] : st.rejected) std::cerr << "  rejected " << p << ": " << why << "\n";
}

int run(int argc, char** argv) {
    CLI::App app{"Class polynomials for j, gamma, good modular functions and partitions"};
    app.require_subcommand(1);

    Settings& s = settings();
    app.add_option("--cache-dir", s.cache_dir, "Directory for cached polynomials");
    app.add_option("--jobs", s.jobs, "Worker threads for per-prime work")->check(CLI::PositiveNumber);
    app.add_option("--safety", s.safety, "Multiplier for heuristic height bounds")->check(CLI::Range(1.0, 100.0));
    app.add_option("--seed", s.seed, "Seed for randomized steps");
    app.add_flag("-v,--verbose", s.verbose, "Print prime statistics to stderr");

    i64 D = 0;
    u64 m = 0, n = 0, mod = 0;
    std::string specfile;
    bool check_oracle = false, full = false;

    auto* hilbert = app.add_subcommand("hilbert", "Hilbert class polynomial H_D(x)");
    hilbert->add_option("D", D)->required();
    auto* modpoly = app.add_subcommand("modpoly", "Classical modular polynomial Phi_m(X, Y)");
    modpoly->add_option("m", m)->required()->check(CLI::Range(2, 1000));
    modpoly->add_option("--mod", mod, "Reduce modulo this prime");
    auto* cgamma = app.add_subcommand("classpoly-gamma", "Class polynomial H_D(gamma; x)");
    cgamma->add_option("D", D)->required();
    auto* cgood = app.add_subcommand("classpoly-good", "Class polynomial of a good modular function");
    cgood->add_option("specfile", specfile)->required()->check(CLI::ExistingFile);
    cgood->add_option("D", D)->required();
    auto* cpart = app.add_subcommand("partition-poly", "Partition class polynomial H_n(x)");
    cpart->add_option("n", n)->required()->check(CLI::PositiveNumber);
    auto* cpn = app.add_subcommand("pn", "Partition number p(n) from the trace of H_n(x)");
    cpn->add_option("n", n)->required()->check(CLI::PositiveNumber);
    cpn->add_flag("--check-oracle", check_oracle, "Compare with the pentagonal recurrence");
    auto* verify = app.add_subcommand("verify-paper", "Run the reproduction checks and print a pass/fail matrix");
    verify->add_flag("--full", full, "Include the long-running cases");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc ? exit_code(ErrorKind::BadInput) : 0;
    }

    if (hilbert->parsed()) {
        require_discriminant(D);
        write_poly(std::cout, store::hilbert(D), "H_" + std::to_string(D));
    } else if (modpoly->parsed()) {
        LiftStats st;
        BiPoly phi = phi_lift(m, &st);
        if (m != 2) report(st, "Phi_" + std::to_string(m));
        if (mod) {
            if (!is_prime(mod) || mod >= (u64(1) << 62)) throw Error(ErrorKind::BadInput, "--mod must be a prime below 2^62");
            write_bipoly_mod(std::cout, BiPolyModP(phi, PrimeField(mod)), m);
        } else {
            write_bipoly(std::cout, phi, m);
        }
    } else if (cgamma->parsed()) {
        LiftStats st;
        RatPoly f = class_poly_gamma(D, &st);
        report(st, "H_D(gamma)");
        write_poly(std::cout, f, "Hgamma_" + std::to_string(D));
    } else if (cgood->parsed()) {
        std::ifstream in(specfile);
        GoodFunctionSpec spec = read_good_spec(in);
        LiftStats st;
        RatPoly f = class_poly_good(spec, D, &st);
        report(st, "H_D(F)");
        write_poly(std::cout, f, "HF_" + std::to_string(D));
    } else if (cpart->parsed()) {
        PartitionResult r = partition_poly(n);
        for (auto& [Du, st] : r.stats) report(st, "H_" + std::to_string(Du) + "(P)");
        write_poly(std::cout, r.poly, "Hpart_" + std::to_string(n));
    } else if (cpn->parsed()) {
        PartitionResult r = partition_poly(n);
        for (auto& [Du, st] : r.stats) report(st, "H_" + std::to_string(Du) + "(P)");
        std::cout << r.pn.get_str() << "\n";
        if (check_oracle) {
            BigInt want = pentagonal_pn(n);
            if (want != r.pn) {
                std::cerr << "oracle mismatch: pentagonal recurrence gives " << want.get_str() << "\n";
                return 1;
            }
            std::cerr << "oracle agrees\n";
        }
    } else if (verify->parsed()) {
        repro::Options opt;
        opt.full = full;
        return repro::run_all(std::cout, opt).ok ? 0 : 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const Error& e) {
        std::cerr << "error[" << kind_name(e.kind()) << "]: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error[internal]: " << e.what() << "\n";
        return 1;
    }
}
