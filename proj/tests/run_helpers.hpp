#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bla/sim.hpp"

namespace testutil {

// A run config over the default 8-nonce universe. Inputs are the distinct
// singletons {i:0}, or all {0:0} when distinct is false.
inline bla::RunConfig make_cfg(int n, std::vector<int> byz,
                               bla::AlgoKind algo,
                               const std::string& adversary,
                               std::uint64_t seed, bool distinct = true) {
  bla::RunConfig cfg;
  cfg.n = n;
  cfg.f = (n - 1) / 3;
  cfg.byzantine_ids = std::move(byz);
  cfg.algorithm = algo;
  for (int i = 0; i < n; ++i)
    cfg.inputs.push_back(
        bla::Element(std::vector<bla::Tag>{bla::Tag{distinct ? i : 0, 0}}));
  cfg.adversary = adversary;
  cfg.seed = seed;
  cfg.universe_size = 8;
  return cfg;
}

inline bla::Element input_of(int i) {
  return bla::Element(std::vector<bla::Tag>{bla::Tag{i, 0}});
}

inline bla::Element join_inputs(int lo, int hi) {
  std::vector<bla::Tag> tags;
  for (int i = lo; i < hi; ++i) tags.push_back(bla::Tag{i, 0});
  return bla::Element(std::move(tags));
}

}  // namespace testutil
