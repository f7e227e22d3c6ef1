#pragma once

#include <stdexcept>
#include <string>

namespace darboux {

/// A scalar argument is outside its admissible range (e.g. a slope <= 0).
class invalid_parameter_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A transformation chain violates the admissibility rules: rates not
/// strictly increasing or the cosh/sinh slot pattern broken.
class invalid_chain_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An evaluation hit a zero of a Wronskian or of a transformation function.
class pole_error : public std::runtime_error {
 public:
  pole_error(const std::string& what, double where)
      : std::runtime_error(what + " at x = " + std::to_string(where)),
        location_(where) {}

  double location() const noexcept { return location_; }

 private:
  double location_;
};

/// A prefix Wronskian changes sign on the working interval, so an
/// intermediate potential has a pole.
class singular_chain_error : public pole_error {
 public:
  using pole_error::pole_error;
};

/// The caller broke an API contract (e.g. supplied fewer derivatives than
/// the operator order requires).
class contract_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class index_error : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// The reduction-of-order integral would cross a zero of the reference
/// solution; pick a base point on the same side as the target.
class integration_path_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// k coincides with a pole of a Jost prefactor or of the Jost function.
class invalid_wavenumber_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A derived spectral model failed an internal consistency check.
class model_inconsistency_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adaptive quadrature did not converge within the refinement budget.
class accuracy_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical integration step encountered a non-finite value.
class integration_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace darboux
