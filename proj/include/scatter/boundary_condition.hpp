#pragma once

#include <complex>
#include <variant>

namespace scatter {

using cdouble = std::complex<double>;

struct Dirichlet {};
struct Neumann {};
/// dv u + mu u on the boundary; mu is a real constant.
struct Impedance {
  double mu = 0.0;
};
/// Penetrable obstacle: interior wavenumber k sqrt(n), flux jump factor lambda.
struct Transmission {
  cdouble n = 1.0;
  double lambda = 1.0;
};

using BoundaryCondition = std::variant<Dirichlet, Neumann, Impedance, Transmission>;

void validate(const BoundaryCondition& bc);
bool is_transmission(const BoundaryCondition& bc);
const char* bc_name(const BoundaryCondition& bc);

}  // namespace scatter
