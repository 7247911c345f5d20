#pragma once

#include "pingpong/linalg.hpp"

namespace pingpong {

/// tr|rho0 - rho1|, in [0, 2].
double trace_distance(const ComplexMatrix& rho0, const ComplexMatrix& rho1);

/// Square-root fidelity tr sqrt(sqrt(rho0) rho1 sqrt(rho0)), symmetric in its
/// arguments. Eigenvalues below 1e-12 are treated as exact zeros so
/// rank-deficient inputs do not inflate the result.
double fidelity(const ComplexMatrix& rho0, const ComplexMatrix& rho1);

/// Helstrom bound for equiprobable states: (1 - tr|rho0 - rho1| / 2) / 2.
double min_error_probability(const ComplexMatrix& rho0, const ComplexMatrix& rho1);

/// Failure probability of optimal unambiguous discrimination of two
/// equiprobable states, equal to their fidelity.
double unambiguous_failure(const ComplexMatrix& rho0, const ComplexMatrix& rho1);

struct DiscriminationResult {
  double trace_distance = 0.0;
  double fidelity = 0.0;
  double qber = 0.0;   // minimum-error probability, in [0, 1/2]
  double qloss = 0.0;  // unambiguous-discrimination failure, in [0, 1]
};

/// All four figures of merit for one state pair.
DiscriminationResult discriminate(const ComplexMatrix& rho0, const ComplexMatrix& rho1);

}  // namespace pingpong
