#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sigtree::cli {

struct RunConfig {
  std::string subcommand;
  std::vector<std::string> inputs;
  int depth = 5;
  int level = 2;
  double p = 1.0;
  double tol = 1e-9;
  std::uint64_t seed = 0;
  std::optional<std::string> output;  // file instead of stdout

  // subcommand specific
  std::size_t moves = 20;  // gen-treelike
  std::size_t dim = 2;     // gen-treelike, four-point --generate
  std::size_t generate = 0;  // four-point: number of generated points
  bool exact = false;        // four-point: rational arithmetic
  bool group = false;        // pvar: use the signature path at --depth
  bool time_column = false;  // CSV inputs carry a leading time column
  std::optional<std::string> form;  // integrate
};

/// Runs one command; writes JSON (or CSV for path outputs sent to a file)
/// and returns 0 on success, 2 on validation errors, 1 otherwise.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv with CLI11 and dispatches to run().
int main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace sigtree::cli
