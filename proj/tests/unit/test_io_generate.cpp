#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "rangekit/generate.hpp"
#include "rangekit/io.hpp"

using namespace rangekit;

TEST_CASE("instance files round-trip byte-stably") {
  InstanceFile file;
  file.dimension = 2;
  file.alpha = 1.5;
  file.points = {{0.25, 1.0}, {3.0, -0.125}, {0.1, 0.2}};
  const std::string text = serialize_instance(file);
  const InstanceFile back = parse_instance(text);
  CHECK(back.dimension == file.dimension);
  CHECK(back.alpha == file.alpha);
  CHECK(back.points == file.points);
  CHECK(serialize_instance(back) == text);
}

TEST_CASE("solution files round-trip") {
  SolutionFile file;
  file.algorithm = "exact1d";
  file.cost = 5.0;
  file.ranges = {1, 2, 2};
  file.valid = true;
  file.has_t = false;
  file.params = {{"foo", 1.0}};
  file.elapsed_ms = 0.5;
  const std::string text = serialize_solution(file);
  const SolutionFile back = parse_solution(text);
  CHECK(back.algorithm == file.algorithm);
  CHECK(back.cost == file.cost);
  CHECK(back.ranges == file.ranges);
  CHECK(back.valid == file.valid);
  CHECK_FALSE(back.has_t);
  CHECK(serialize_solution(back) == text);

  file.has_t = true;
  file.t = 1.5;
  const SolutionFile with_t = parse_solution(serialize_solution(file));
  CHECK(with_t.has_t);
  CHECK(with_t.t == 1.5);
}

TEST_CASE("parse failures raise BadParams") {
  CHECK_THROWS_AS(parse_instance("not json"), BadParams);
  CHECK_THROWS_AS(parse_instance("{\"dimension\": 1}"), BadParams);
  CHECK_THROWS_AS(parse_solution("{}"), BadParams);
}

TEST_CASE("solution_to_file restores the original point order") {
  const Instance inst = canonicalize({{3}, {1}, {0}}, 1, 1.0);
  Solution sol;
  sol.algorithm = "exact1d";
  sol.cost = 5.0;
  sol.ranges.ranges = {10, 20, 30};  // canonical order 0,1,3
  sol.valid = true;
  const SolutionFile file = solution_to_file(sol, inst);
  // Input order was (3, 1, 0): the range of coordinate 3 comes first.
  CHECK(file.ranges == std::vector<double>{30, 20, 10});
}

TEST_CASE("generator is deterministic for a fixed seed") {
  const auto a = generate_points(PointDistribution::kUniform, 4, 2, 7);
  const auto b = generate_points(PointDistribution::kUniform, 4, 2, 7);
  CHECK(a == b);
  const auto c = generate_points(PointDistribution::kUniform, 4, 2, 8);
  CHECK(a != c);
}

TEST_CASE("generator shapes") {
  const auto one = generate_points(PointDistribution::kUniform, 1, 1, 5);
  CHECK(one.size() == 1);
  CHECK(one[0].size() == 1);

  const auto noisy = generate_points(PointDistribution::kCollinearNoise, 5, 2, 1);
  for (size_t i = 0; i < noisy.size(); ++i) {
    CHECK(std::abs(noisy[i][1]) <= 0.01);
    if (i > 0) CHECK(noisy[i - 1][0] <= noisy[i][0]);
  }

  const auto blobs = generate_points(PointDistribution::kClustered, 10, 3, 2);
  CHECK(blobs.size() == 10);
  for (const auto& p : blobs) CHECK(p.size() == 3);

  CHECK_THROWS_AS(generate_points(PointDistribution::kUniform, 0, 2, 1), BadParams);
  CHECK_THROWS_AS(parse_distribution("nope"), BadParams);
}

TEST_CASE("generated points canonicalize cleanly") {
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    const auto pts = generate_points(PointDistribution::kUniform, 12, 2, seed);
    const Instance inst = canonicalize(pts, 2, 1.0);
    CHECK(inst.size() == 12);
    const auto line = generate_points(PointDistribution::kCollinearNoise, 9, 1, seed);
    const Instance li = canonicalize(line, 1, 1.0);
    CHECK(li.size() == 9);
  }
}
