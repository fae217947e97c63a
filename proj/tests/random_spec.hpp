#pragma once

#include <random>

#include "spectradef/error.hpp"
#include "spectradef/model.hpp"

namespace testsupport {

using namespace spectradef;

/// Random valid spec with 1..4 generators per side. Rules are triangular
/// (each generator only involves generators of lower index) and candidates
/// with d^2 != 0 are rejected.
inline ModelSpec random_spec(std::mt19937& rng, int max_side = 4) {
  std::uniform_int_distribution<int> side(1, max_side);
  std::uniform_int_distribution<int> coin(0, 2);
  std::uniform_int_distribution<int> coeff(0, 3);
  const Scalar values[] = {Scalar(1), Scalar(-1), Scalar(0, 1), Scalar(2)};
  for (int attempt = 0; attempt < 100000; ++attempt) {
    ModelSpec s;
    s.name = "random";
    const int n = side(rng);
    const int m = side(rng);
    for (int a = 1; a <= n; ++a) s.holo_generators.push_back("z" + std::to_string(a));
    for (int a = 1; a <= m; ++a) s.antiholo_generators.push_back("w" + std::to_string(a));
    auto add = [&](const std::string& gen, std::vector<std::string> mono) {
      s.d_rules[gen].push_back({values[coeff(rng)], std::move(mono)});
    };
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < a; ++b) {
        for (int c = b + 1; c < a; ++c) {
          if (coin(rng) == 0) add(s.holo_generators[a], {s.holo_generators[b], s.holo_generators[c]});
        }
        for (int c = 0; c < std::min(a, m); ++c) {
          if (coin(rng) == 0 && coin(rng) == 0) add(s.holo_generators[a], {s.holo_generators[b], s.antiholo_generators[c]});
        }
      }
    }
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < std::min(a, n); ++b) {
        for (int c = 0; c < a; ++c) {
          if (coin(rng) == 0 && coin(rng) == 0) add(s.antiholo_generators[a], {s.holo_generators[b], s.antiholo_generators[c]});
        }
      }
      for (int b = 0; b < a; ++b) {
        for (int c = b + 1; c < a; ++c) {
          if (coin(rng) == 0) add(s.antiholo_generators[a], {s.antiholo_generators[b], s.antiholo_generators[c]});
        }
      }
    }
    try {
      build_model(s);
      return s;
    } catch (const Error&) {
      continue;
    }
  }
  throw std::runtime_error("random_spec: no valid candidate found");
}

}  // namespace testsupport
