#pragma once

#include <sstream>
#include <string>

#include "cmpoly/analytic.hpp"
#include "cmpoly/cache.hpp"
#include "cmpoly/polys.hpp"

namespace cmpoly::store {

inline const char* fn_name(analytic::Fn f) {
    switch (f) {
        case analytic::Fn::J: return "j";
        case analytic::Fn::Gamma: return "gamma";
        case analytic::Fn::P: return "P";
        case analytic::Fn::Fp: return "Fp";
        case analytic::Fn::AHat: return "Ahat";
        case analytic::Fn::B: return "B";
        case analytic::Fn::K: return "K";
    }
    return "?";
}

/// H_D(x), computed analytically once per process (and per cache directory).
inline RatPoly hilbert(i64 D) {
    static Memo<RatPoly> memo(
        "hilbert",
        [](const RatPoly& f) {
            std::ostringstream os;
            write_poly(os, f, "H");
            return os.str();
        },
        [](const std::string& s) {
            std::istringstream is(s);
            return read_poly(is);
        });
    return memo.get(std::to_string(D), [&] { return analytic::hilbert_analytic(D); });
}

inline BiPoly psi(analytic::Fn g) {
    static Memo<BiPoly> memo(
        "psi",
        [](const BiPoly& P) {
            std::ostringstream os;
            write_bipoly_general(os, P);
            return os.str();
        },
        [](const std::string& s) {
            std::istringstream is(s);
            return read_bipoly_general(is);
        });
    return memo.get(fn_name(g), [&] { return analytic::psi_polynomial(g); });
}

inline KQuadPoly kfield(analytic::Fn g, i64 D) {
    static Memo<KQuadPoly> memo(
        "kfield",
        [](const KQuadPoly& f) {
            std::ostringstream os;
            write_kpoly(os, f);
            return os.str();
        },
        [](const std::string& s) {
            std::istringstream is(s);
            return read_kpoly(is);
        });
    return memo.get(std::string(fn_name(g)) + "_" + std::to_string(D), [&] { return analytic::kfield_class_poly(g, D); });
}

}  // namespace cmpoly::store
