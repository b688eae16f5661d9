#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace burnside_lab {

/// Malformed group spec or cycle notation.
class parse_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A family/order combination outside what the builders support.
class unsupported_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A configured size limit was hit.
class guard_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An operation was called with arguments violating its contract.
class precondition_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Size limits shared by every pipeline stage.
struct Guards {
    std::size_t max_elements = 10000;
    std::size_t max_subgroups = 20000;
    /// log2 of the node budget of the unit enumeration.
    unsigned oracle_bits = 24;
};

}  // namespace burnside_lab
