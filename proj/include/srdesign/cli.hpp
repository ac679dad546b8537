#pragma once

// The srdesign command line: verify, build, lift, develop, extend, anomaly,
// admissibility and catalog. Exit codes: 0 verified or constructed, 1 verdict
// negative, 2 usage or input error.

#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "analysis.hpp"

namespace srd::cli {

inline constexpr int kOk = 0;
inline constexpr int kNegative = 1;
inline constexpr int kUsage = 2;

class InputError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Decimal integer or a product of powers such as "3*2^6*5^10".
BigInt parse_big(const std::string& text);

/// Runs one command; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, out, err);
}

}  // namespace srd::cli
