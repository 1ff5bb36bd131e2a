#pragma once

#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "freefit/entanglement.hpp"
#include "freefit/errors.hpp"

namespace freefit {

// Spectrum files are plain text: one probability per line, blank lines and
// lines starting with '#' ignored. The parser renormalizes when the sum is
// within 1e-6 of one and rejects otherwise.
inline EntanglementSpectrum parse_spectrum(std::istream& in) {
  std::vector<double> probs;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ss(line.substr(first));
    double value = 0.0;
    ss >> value;
    std::string rest;
    if (ss.fail() || (ss >> rest && !rest.empty()))
      throw parse_error("line " + std::to_string(lineno) + ": expected a single number");
    if (!(value >= 0.0) || value > 1.0 + 1e-6)
      throw parse_error("line " + std::to_string(lineno) + ": probability outside [0, 1]");
    probs.push_back(value);
  }
  if (probs.empty()) throw parse_error("no spectrum entries found");

  double sum = 0.0;
  for (double p : probs) sum += p;
  if (std::abs(sum - 1.0) > 1e-6)
    throw parse_error("spectrum sums to " + std::to_string(sum) + ", outside the 1e-6 tolerance");
  for (double& p : probs) p /= sum;
  return spectrum_from_probabilities(std::move(probs));
}

inline EntanglementSpectrum read_spectrum_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open spectrum file: " + path);
  try {
    return parse_spectrum(in);
  } catch (const parse_error& e) {
    throw parse_error(path + ": " + e.what());
  }
}

inline void write_spectrum_file(const std::string& path, const EntanglementSpectrum& s,
                                const std::string& comment = {}) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open for writing: " + path);
  if (!comment.empty()) out << "# " << comment << "\n";
  char buf[64];
  for (double p : s.probs) {
    std::snprintf(buf, sizeof buf, "%.17g", p);
    out << buf << "\n";
  }
  if (!out) throw io_error("write failed: " + path);
}

}  // namespace freefit
