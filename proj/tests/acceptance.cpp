// Runs the selftest criteria with their time limits, then a second selftest
// through the CLI, and compares transcripts and matrix files byte for byte.

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "tagcodes/selftest.hpp"

namespace fs = std::filesystem;
using namespace tagcodes;

namespace {

std::map<std::string, std::string> read_dir(const fs::path& dir) {
  std::map<std::string, std::string> files;
  if (!fs::exists(dir)) return files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::ifstream in(entry.path(), std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    files[entry.path().filename().string()] = buf.str();
  }
  return files;
}

std::string capture(const std::string& command, int& status) {
  std::string out;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf{};
  for (std::size_t n; (n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0;) out.append(buf.data(), n);
  status = pclose(pipe);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  const std::map<int, double> limits = {{1, 10.0}, {4, 60.0}, {6, 120.0}, {7, 60.0}};
  const fs::path work = fs::current_path() / "acceptance_work";
  fs::remove_all(work);
  const fs::path first_dir = work / "run1", second_dir = work / "run2";

  std::vector<std::pair<CriterionResult, double>> timed;
  SelftestOptions opt;
  opt.out_dir = first_dir;
  opt.on_result = [&](const CriterionResult& r, double seconds) { timed.emplace_back(r, seconds); };
  std::ostringstream first;
  selftest(first, opt);

  std::string second;
  std::string second_source;
  if (argc > 1) {
    int status = 0;
    second = capture(std::string(argv[1]) + " selftest --out " + second_dir.string(), status);
    second_source = "cli";
  } else {
    SelftestOptions again;
    again.out_dir = second_dir;
    std::ostringstream out;
    selftest(out, again);
    second = out.str();
    second_source = "in-process";
  }
  const bool same_transcript = first.str() == second;
  const auto files_a = read_dir(first_dir), files_b = read_dir(second_dir);
  const bool same_files = !files_a.empty() && files_a == files_b;

  int failures = 0;
  for (const auto& [r, seconds] : timed) {
    bool pass = r.pass;
    std::string note = r.detail;
    const auto limit = limits.find(r.id);
    if (limit != limits.end() && seconds >= limit->second) {
      pass = false;
      note += "; over the " + std::to_string(static_cast<int>(limit->second)) + " s limit";
    }
    if (r.id == kCriterionCount) {
      if (!same_transcript) note += "; transcripts differ between runs";
      if (!same_files) note += "; matrix files differ between runs";
      note += "; second run (" + second_source + ") matched " + std::to_string(files_b.size()) + " files";
      pass = pass && same_transcript && same_files;
    }
    failures += !pass;
    std::cout << "criterion " << std::setw(2) << r.id << " " << (pass ? "PASS" : "FAIL") << "  " << r.name << " ("
              << std::fixed << std::setprecision(3) << seconds << " s): " << note << "\n";
  }
  if (timed.size() != static_cast<std::size_t>(kCriterionCount)) {
    std::cout << "expected " << kCriterionCount << " criteria, ran " << timed.size() << "\n";
    ++failures;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
  return failures == 0 ? 0 : 1;
}
