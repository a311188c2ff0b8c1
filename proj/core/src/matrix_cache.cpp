#include "uwdg/matrix_cache.hpp"

#include <map>
#include <memory>
#include <mutex>

#include "uwdg/operators1d.hpp"

namespace uwdg {

std::string family_tag(const Basis1D& basis) {
  static const char* names[] = {"A", "L", "I", "H"};
  return names[static_cast<int>(basis.family())] + std::to_string(basis.degree()) + "L" + std::to_string(basis.max_level());
}

const Eigen::MatrixXd& cached_matrix(const std::string& key, const std::function<Eigen::MatrixXd()>& build) {
  static std::mutex mutex;
  static std::map<std::string, std::unique_ptr<Eigen::MatrixXd>> cache;
  {
    std::lock_guard lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
  }
  auto m = std::make_unique<Eigen::MatrixXd>(build());
  std::lock_guard lock(mutex);
  auto [it, inserted] = cache.emplace(key, std::move(m));
  return *it->second;
}

const Eigen::MatrixXd& volume_cached(const Basis1D& test, const Basis1D& trial, int test_order, int trial_order) {
  const std::string key = "V:" + family_tag(test) + ":" + family_tag(trial) + ":" + std::to_string(test_order) + ":" +
                          std::to_string(trial_order);
  return cached_matrix(key, [&] { return volume_matrix(test, trial, test_order, trial_order); });
}

const Eigen::MatrixXd& jump_cached(const Basis1D& test, const Basis1D& trial, int trial_order, Side trial_side, int test_order) {
  const std::string key = "J:" + family_tag(test) + ":" + family_tag(trial) + ":" + std::to_string(trial_order) +
                          (trial_side == Side::Plus ? "+" : "-") + std::to_string(test_order);
  return cached_matrix(key, [&] { return jump_matrix(test, trial, trial_order, trial_side, test_order); });
}

}  // namespace uwdg
