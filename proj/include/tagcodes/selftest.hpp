#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "tagcodes/field.hpp"

namespace tagcodes {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SelftestOptions {
  std::optional<std::filesystem::path> out_dir;  // generator matrices are written here when set
  FieldSource source = default_field_source();
  // Called after each criterion with its wall time; never part of the transcript.
  std::function<void(const CriterionResult&, double seconds)> on_result;
};

inline constexpr int kCriterionCount = 11;

std::vector<CriterionResult> run_selftest(const SelftestOptions& options = {});

std::string format_result(const CriterionResult& r);

/// Prints the pass/fail table; returns 0 when every criterion passes, else 3.
int selftest(std::ostream& out, const SelftestOptions& options = {});

}  // namespace tagcodes
