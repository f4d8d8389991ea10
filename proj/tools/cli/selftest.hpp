#pragma once

#include <string>
#include <vector>

namespace condlab::cli {

struct SelftestCheck {
  std::string name;
  bool ok;
  std::string detail;
};

// Mutations for checking that the suite notices broken code.
struct SelftestOptions {
  bool flip_g_prime = false;   // sign flip of G' inside the radial density
  bool corrupt_bound = false;  // bound lowered by 10 in the validation check
};

std::vector<SelftestCheck> run_selftest(const SelftestOptions& options = {});

}  // namespace condlab::cli
