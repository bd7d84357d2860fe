#include "pil/errors.hpp"

#include <sstream>

namespace pil {

namespace {

std::string describe_evaluation(double abscissa, double value) {
  std::ostringstream os;
  os.precision(17);
  os << "integrand is not finite at x = " << abscissa << " (value " << value << ")";
  return os.str();
}

std::string describe_singularity(double endpoint, double exponent) {
  std::ostringstream os;
  os.precision(6);
  os << "non-integrable singularity at endpoint " << endpoint
     << ": empirical local exponent " << exponent << " <= -1";
  return os.str();
}

}  // namespace

DomainEvaluationError::DomainEvaluationError(double abscissa, double value)
    : Error(describe_evaluation(abscissa, value)), abscissa_(abscissa), value_(value) {}

NonIntegrableSingularityError::NonIntegrableSingularityError(double endpoint, double exponent)
    : Error(describe_singularity(endpoint, exponent)), endpoint_(endpoint), exponent_(exponent) {}

}  // namespace pil
