#pragma once

#include <string>
#include <vector>

#include "rangekit/core.hpp"

// Stable file formats for the CLI: JSON instance and solution files
// plus a one-line-per-point plain-text importer.

namespace rangekit {

// An instance as stored on disk: points in file order, not yet
// canonicalized.
struct InstanceFile {
  int dimension = 1;
  double alpha = 1.0;
  std::vector<std::vector<double>> points;
};

struct SolutionFile {
  std::string algorithm;
  double cost = 0.0;
  std::vector<double> ranges;  // original input-point order
  bool valid = false;
  bool has_t = false;
  double t = 0.0;
  std::vector<std::pair<std::string, double>> params;
  double elapsed_ms = 0.0;
};

// Canonical serialization: fixed key order, points in file order.
std::string serialize_instance(const InstanceFile& file);
InstanceFile parse_instance(const std::string& text);

std::string serialize_solution(const SolutionFile& file);
SolutionFile parse_solution(const std::string& text);

// Reads JSON, or the plain-text form whose first line is "dim n alpha"
// followed by one point per line.
InstanceFile read_instance_file(const std::string& path);
void write_instance_file(const std::string& path, const InstanceFile& file);

SolutionFile read_solution_file(const std::string& path);
void write_solution_file(const std::string& path, const SolutionFile& file);

// Maps a Solution on a canonicalized instance back to the original
// point order recorded by canonicalize().
SolutionFile solution_to_file(const Solution& sol, const Instance& inst);

}  // namespace rangekit
