#pragma once

#include <Eigen/Dense>

namespace hydrostokes {

/// Matrix exponential by scaling and squaring with diagonal Padé
/// approximants of degree 3..13 (Higham's 2005 selection thresholds).
Eigen::MatrixXd expm(const Eigen::MatrixXd& a);

/// phi_1(t M) = (t M)^{-1} (e^{tM} - I), read off the top-right block of
/// exp([[tM, tI], [0, 0]]) divided by t. Requires t > 0; M may be singular.
Eigen::MatrixXd phi1(const Eigen::MatrixXd& m, double t);

}  // namespace hydrostokes
