#ifndef QMC_LATTICE_HPP
#define QMC_LATTICE_HPP

#include <cstddef>
#include <functional>

#include <Eigen/Dense>

#include "qmc/linalg.hpp"

namespace qmc {

/// Fincke-Pohst: calls `visit` for every nonzero integer vector x (up to sign)
/// with x^T G x <= bound. G must be positive definite. `visit` returns false to
/// stop early. Returns the number of vectors visited.
std::size_t fincke_pohst(Eigen::MatrixXd const& gram, double bound, std::function<bool(IntVec const&)> const& visit);

} // namespace qmc

#endif // QMC_LATTICE_HPP
