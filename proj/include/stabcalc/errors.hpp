#pragma once

#include <stdexcept>
#include <string>

namespace stabcalc {

// Base class for every error the library raises on bad inputs or
// exceeded limits. Internal invariant violations use internal_error.
struct calc_error : std::runtime_error {
    explicit calc_error(const std::string& what) : std::runtime_error(what) {}
};

struct arithmetic_limit_error : calc_error {
    using calc_error::calc_error;
};

struct unresolved_relation_error : calc_error {
    using calc_error::calc_error;
};

struct substitution_error : calc_error {
    using calc_error::calc_error;
};

struct enumeration_limit_error : calc_error {
    using calc_error::calc_error;
};

struct arity_error : calc_error {
    using calc_error::calc_error;
};

struct domain_error : calc_error {
    using calc_error::calc_error;
};

struct precondition_error : calc_error {
    using calc_error::calc_error;
};

struct group_closure_error : calc_error {
    using calc_error::calc_error;
};

struct infeasible_error : calc_error {
    using calc_error::calc_error;
};

// Malformed expression text; carries the byte offset of the failure.
struct parse_error : calc_error {
    parse_error(const std::string& what, std::size_t position)
        : calc_error(what + " (at position " + std::to_string(position) + ")"),
          pos(position) {}
    std::size_t pos;
};

struct internal_error : calc_error {
    using calc_error::calc_error;
};

} // namespace stabcalc
