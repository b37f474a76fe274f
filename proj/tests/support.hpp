#pragma once

// Shared helpers for the unit and acceptance tests. The oracles here are
// written independently of the library code they check.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "posetbar/groth.hpp"
#include "posetbar/json_io.hpp"
#include "posetbar/rep.hpp"

#ifndef POSETBAR_FIXTURES
#define POSETBAR_FIXTURES "fixtures"
#endif

namespace testing_support {

using namespace posetbar;

inline std::string fixture(const std::string& name) { return std::string(POSETBAR_FIXTURES) + "/" + name; }

inline RepPtr load(const std::string& name, PosetPtr poset = nullptr) {
  return io::read_rep_file(fixture(name), std::move(poset));
}

// "110;011" (top row first) to a support on a grid.
inline Support cells(const FinitePoset& p, const std::string& rows) {
  const auto g = *p.grid_shape();
  Support s;
  std::size_t r = g.rows, c = 0;
  for (char ch : rows) {
    if (ch == ';') {
      --r;
      c = 0;
      continue;
    }
    if (ch == ' ') continue;
    if (ch == '1') s.push_back(static_cast<ElementId>((r - 1) * g.cols + c));
    ++c;
  }
  std::sort(s.begin(), s.end());
  return s;
}

// All connected convex subsets, by exhaustive search over subsets.
inline std::vector<Support> brute_force_intervals(const FinitePoset& p) {
  const std::size_t n = p.size();
  std::vector<Support> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    Support s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) s.push_back(static_cast<ElementId>(i));
    bool convex = true;
    for (auto a : s)
      for (auto b : s)
        for (std::size_t z = 0; z < n && convex; ++z)
          if (!(mask >> z & 1) && p.leq(a, static_cast<ElementId>(z)) && p.leq(static_cast<ElementId>(z), b))
            convex = false;
    if (!convex) continue;
    // connectivity through comparabilities inside s
    std::uint64_t seen = std::uint64_t{1} << s.front(), frontier = seen;
    while (frontier) {
      std::uint64_t next = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (!(frontier >> i & 1)) continue;
        for (std::size_t j = 0; j < n; ++j)
          if ((mask >> j & 1) && !(seen >> j & 1) &&
              (p.leq(static_cast<ElementId>(i), static_cast<ElementId>(j)) ||
               p.leq(static_cast<ElementId>(j), static_cast<ElementId>(i))))
            next |= std::uint64_t{1} << j;
      }
      seen |= next;
      frontier = next;
    }
    if (seen == mask) out.push_back(std::move(s));
  }
  return out;
}

struct Sampled {
  RepPtr module;                   // basis-scrambled, no recorded block structure
  std::vector<std::int64_t> mult;  // per catalog index
};

// Random direct sum of 1..max_summands interval modules in scrambled bases.
inline Sampled random_interval_decomposable(const Workspace& ws, std::mt19937_64& rng, std::size_t max_summands) {
  const auto n = ws.catalog().size();
  const auto count = 1 + rng() % max_summands;
  std::vector<std::int64_t> mult(n, 0);
  std::vector<RepPtr> parts;
  for (std::size_t k = 0; k < count; ++k) {
    const auto i = rng() % n;
    ++mult[i];
    parts.push_back(ws.interval_rep(i));
  }
  std::shuffle(parts.begin(), parts.end(), rng);
  auto sum = direct_sum(parts);
  return {share(random_basis_change(sum, rng())), std::move(mult)};
}

// A random module with no recorded block structure; total dimension at most cap.
inline RepPtr random_module(const Workspace& ws, std::mt19937_64& rng, std::size_t cap = 1000) {
  for (;;) {
    RandomShape shape{1 + rng() % 3, rng() % 4};
    auto m = random_rep(ws.poset(), ws.field(), shape, rng());
    if (m.total_dim() <= cap) return share(random_basis_change(m, rng()));
  }
}

}  // namespace testing_support
