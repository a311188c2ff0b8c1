#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>

#include "uwdg/basis1d.hpp"

namespace uwdg {

/// Short identifier of a 1D family instance, e.g. "A2L6" for Alpert degree 2 up to level 6.
std::string family_tag(const Basis1D& basis);

/// Process-wide memo of dense 1D matrices keyed by a descriptive string.
const Eigen::MatrixXd& cached_matrix(const std::string& key, const std::function<Eigen::MatrixXd()>& build);

/// Cached volume_matrix / jump_matrix.
const Eigen::MatrixXd& volume_cached(const Basis1D& test, const Basis1D& trial, int test_order, int trial_order = 0);
const Eigen::MatrixXd& jump_cached(const Basis1D& test, const Basis1D& trial, int trial_order, Side trial_side, int test_order);

}  // namespace uwdg
