#pragma once

#include <stdexcept>

namespace citesim {

// Error categories map 1:1 onto CLI exit codes:
//   parameter_error -> 1 (validation), io_error -> 2, analysis_error -> 3.
struct parameter_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct analysis_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace citesim
