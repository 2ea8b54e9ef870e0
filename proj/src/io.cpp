#include "rangekit/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace rangekit {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw BadParams("cannot open file: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw BadParams("cannot write file: " + path);
  out << text;
}

InstanceFile parse_instance_text(const std::string& text) {
  std::istringstream in(text);
  InstanceFile file;
  int n = 0;
  if (!(in >> file.dimension >> n >> file.alpha))
    throw BadParams("plain-text instance header must be: dim n alpha");
  file.points.assign(n, std::vector<double>(file.dimension, 0.0));
  for (auto& p : file.points)
    for (double& c : p)
      if (!(in >> c)) throw BadParams("plain-text instance has too few coordinates");
  return file;
}

}  // namespace

std::string serialize_instance(const InstanceFile& file) {
  ordered_json j;
  j["dimension"] = file.dimension;
  j["alpha"] = file.alpha;
  j["points"] = file.points;
  return j.dump();
}

InstanceFile parse_instance(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw BadParams(std::string("instance parse error: ") + e.what());
  }
  InstanceFile file;
  try {
    file.dimension = j.at("dimension").get<int>();
    file.alpha = j.at("alpha").get<double>();
    file.points = j.at("points").get<std::vector<std::vector<double>>>();
  } catch (const std::exception& e) {
    throw BadParams(std::string("instance field error: ") + e.what());
  }
  return file;
}

std::string serialize_solution(const SolutionFile& file) {
  ordered_json j;
  j["algorithm"] = file.algorithm;
  j["cost"] = file.cost;
  j["ranges"] = file.ranges;
  j["valid"] = file.valid;
  if (file.has_t)
    j["t"] = file.t;
  else
    j["t"] = nullptr;
  ordered_json params = ordered_json::object();
  for (const auto& [key, value] : file.params) params[key] = value;
  j["params"] = params;
  j["elapsed_ms"] = file.elapsed_ms;
  return j.dump();
}

SolutionFile parse_solution(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw BadParams(std::string("solution parse error: ") + e.what());
  }
  SolutionFile file;
  try {
    file.algorithm = j.at("algorithm").get<std::string>();
    file.cost = j.at("cost").get<double>();
    file.ranges = j.at("ranges").get<std::vector<double>>();
    file.valid = j.at("valid").get<bool>();
    if (!j.at("t").is_null()) {
      file.has_t = true;
      file.t = j.at("t").get<double>();
    }
    for (const auto& [key, value] : j.at("params").items())
      file.params.emplace_back(key, value.get<double>());
    file.elapsed_ms = j.at("elapsed_ms").get<double>();
  } catch (const std::exception& e) {
    throw BadParams(std::string("solution field error: ") + e.what());
  }
  return file;
}

InstanceFile read_instance_file(const std::string& path) {
  const std::string text = read_text(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return parse_instance(text);
  return parse_instance_text(text);
}

void write_instance_file(const std::string& path, const InstanceFile& file) {
  write_text(path, serialize_instance(file) + "\n");
}

SolutionFile read_solution_file(const std::string& path) {
  return parse_solution(read_text(path));
}

void write_solution_file(const std::string& path, const SolutionFile& file) {
  write_text(path, serialize_solution(file) + "\n");
}

SolutionFile solution_to_file(const Solution& sol, const Instance& inst) {
  SolutionFile file;
  file.algorithm = sol.algorithm;
  file.cost = sol.cost;
  file.ranges.assign(inst.size(), 0.0);
  for (int k = 0; k < inst.size(); ++k) file.ranges[inst.input_index[k]] = sol.ranges.ranges[k];
  file.valid = sol.valid;
  if (sol.t.has_value()) {
    file.has_t = true;
    file.t = *sol.t;
  }
  if (sol.fallback) file.params.emplace_back("fallback", 1.0);
  for (const auto& [key, value] : sol.params) file.params.emplace_back(key, value);
  file.elapsed_ms = sol.elapsed_ms;
  return file;
}

}  // namespace rangekit
