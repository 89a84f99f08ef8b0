#include "dynsim/rng.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "dynsim/error.hpp"

namespace dynsim {

double Rng::normal(double mu, double sigma) {
  // Box-Muller; 1-u keeps the log argument in (0,1].
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
  return mu + sigma * r * std::cos(2.0 * std::numbers::pi * u2);
}

std::string Rng::serialize_state() const {
  std::ostringstream os;
  os << engine_;
  return os.str();
}

void Rng::deserialize_state(const std::string& text) {
  std::istringstream is(text);
  is >> engine_;
  if (is.fail()) throw InvalidInput("bad rng state string");
}

}  // namespace dynsim
