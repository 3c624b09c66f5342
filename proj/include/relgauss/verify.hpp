#pragma once

#include <random>
#include <string>
#include <vector>

#include "relgauss/fock.hpp"

namespace relgauss {

// A check passes when value <= threshold.
struct Check {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

struct SuiteOptions {
  unsigned long seed = 1;
  int N = -1;  // suite default when negative
};

struct SuiteReport {
  std::string suite;
  unsigned long seed = 0;
  int truncation = 0;
  std::vector<Check> checks;  // sorted by name
  bool passed() const;
};

const std::vector<std::string>& suite_names();  // coxeter, fock, wick, multiplier, amalgam
// name is one of suite_names() or "all"; throws std::invalid_argument otherwise.
SuiteReport run_suite(const std::string& name, const SuiteOptions& opt = {});

Check make_check(std::string name, double value, double threshold);

// Random right-modular half matrix level n -> level m.
Mat random_right_modular(const TruncatedFock& F, int n, int m, std::mt19937_64& gen);
Vec random_vector(int dim, std::mt19937_64& gen);

// Number of Dyck paths of length 2k.
long dyck_paths(int k);

}  // namespace relgauss
