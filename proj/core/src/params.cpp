#include "solitonlab/params.hpp"

#include <cmath>
#include <sstream>

#include "solitonlab/errors.hpp"

namespace solitonlab {

void SolitonParams::validate() const {
  if (!(r0 > 0.0)) throw DomainError("soliton core radius r0 must be positive");
  if (!(omega0 >= 0.0)) throw DomainError("rest mass omega0 must be non-negative");
  if (!std::isfinite(g) || !std::isfinite(e)) throw DomainError("soliton charge and coupling must be finite");
}

std::vector<std::string> SolitonParams::regime_warnings() const {
  std::vector<std::string> out;
  if (omega0 * r0 > 0.1) {
    std::ostringstream os;
    os << "omega0*r0 = " << omega0 * r0 << " > 0.1: small-core approximation is poor";
    out.push_back(os.str());
  }
  return out;
}

double SolitonParams::quintic_coefficient() const {
  const double q = g / (4.0 * kPi);
  return 3.0 * r0 * r0 / (q * q * q * q);
}

FourVector contract_field(const ExternalPotential::Tensor& f, const FourVector& v) {
  const FourVector lo = lower(v);
  FourVector out;
  for (int mu = 0; mu < 4; ++mu) {
    double s = 0.0;
    for (int nu = 0; nu < 4; ++nu) s += f[mu][nu] * lo[nu];
    out[mu] = s;
  }
  return out;
}

}  // namespace solitonlab
