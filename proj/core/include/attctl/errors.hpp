#pragma once

#include <stdexcept>
#include <string>

namespace attctl {

/// Input violates an operation precondition (non-unit quaternion, bad range).
class invalid_input_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A matrix inverse or division was requested at/near a singular point
/// (error-quaternion scalar part below the configured guard).
class singularity_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A parameter set fails a feasibility inequality. `inequality()` names the
/// specific failed condition so callers and tests can assert on it.
class infeasibility_error : public std::runtime_error {
public:
    infeasibility_error(std::string inequality, const std::string& detail)
        : std::runtime_error("infeasible parameters: " + inequality + " — " + detail),
          inequality_(std::move(inequality)) {}
    const std::string& inequality() const noexcept { return inequality_; }

private:
    std::string inequality_;
};

/// The simulation produced a non-finite state.
class numeric_failure_error : public std::runtime_error {
public:
    numeric_failure_error(const std::string& what, double t_fail)
        : std::runtime_error(what), t_fail_(t_fail) {}
    double time_of_failure() const noexcept { return t_fail_; }

private:
    double t_fail_ = 0.0;
};

/// An API usage contract was broken (e.g. non-monotone supervision times).
class contract_violation_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Stored trace data disagrees with values recomputed from raw state columns.
class internal_consistency_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Scenario/trace file could not be parsed.
class parse_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace attctl
