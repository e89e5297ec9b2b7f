#ifndef CMPOLY_ERRORS_HPP
#define CMPOLY_ERRORS_HPP

#include <cmath>
#include <stdexcept>
#include <string>

namespace cmpoly {

enum class ErrorKind { BadInput, SpecialDiscriminant, PrimePoolExhausted, RoundingFailure };

inline const char* kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::BadInput: return "bad input";
        case ErrorKind::SpecialDiscriminant: return "special discriminant";
        case ErrorKind::PrimePoolExhausted: return "prime pool exhausted";
        case ErrorKind::RoundingFailure: return "rounding failure";
    }
    return "error";
}

inline int exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::BadInput: return 2;
        case ErrorKind::SpecialDiscriminant: return 3;
        case ErrorKind::PrimePoolExhausted: return 4;
        case ErrorKind::RoundingFailure: return 5;
    }
    return 1;
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

// Thrown from per-prime work when a prime has to be discarded.
class PrimeRejected : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace cmpoly

#endif
