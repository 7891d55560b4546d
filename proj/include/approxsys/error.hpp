#ifndef APPROXSYS_ERROR_HPP
#define APPROXSYS_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace approxsys {

enum class ErrorKind {
    parse,
    order,                 // requested order exceeds the system order
    symbolic_unsupported,  // callable step reached by the exact builder
    constant_step,         // f_i(., x) constant in y
    endomorphism,          // phi(U) not inside U
    no_fixpoint,           // phi(x0) != x0 where a fixpoint is required
    non_invertible,        // coordinate map with zero scale
    degenerate_scale,      // linear transform with a = 0
    configuration,         // missing codomains, reference evaluators, ...
    method_inapplicable,   // sup-norm method cannot be used on this input
    inapplicable,          // bound/check hypotheses not met
    domain,                // parameter outside the admissible domain
    parameter,             // catalog parameter error
    partition,             // invalid path partition
    marching,              // numeric engine produced a non-finite value
    format,                // unsupported output format
    grid,                  // invalid evaluation grid
    not_checkable,         // property cannot be decided for callable steps
    precondition,          // operation precondition failed (e.g. majorant not positive)
    usage,                 // command-line usage error
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

}  // namespace approxsys

#endif  // APPROXSYS_ERROR_HPP
