#pragma once

#include <stdexcept>
#include <string>

namespace sqz {

/// Raised for precondition violations and numerically undefined results.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A heralded outcome whose probability is below the resolvable cutoff.
class ZeroProbabilityError : public Error {
public:
    ZeroProbabilityError(const std::string &what, double probability)
        : Error(what), probability_(probability) {}

    double probability() const noexcept { return probability_; }

private:
    double probability_;
};

namespace detail {

inline void require(bool condition, const std::string &message) {
    if (!condition) {
        throw Error(message);
    }
}

}  // namespace detail
}  // namespace sqz
