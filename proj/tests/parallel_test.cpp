// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <atomic>
#include <cstdlib>
#include <stdexcept>

#include "nhlattice/errors.hpp"
#include "nhlattice/parallel.hpp"

using namespace nhlattice;

namespace {

struct ThreadsEnv {
  explicit ThreadsEnv(const char* value) {
    if (value) setenv("NH_LATTICE_THREADS", value, 1);
    else unsetenv("NH_LATTICE_THREADS");
  }
  ~ThreadsEnv() { unsetenv("NH_LATTICE_THREADS"); }
};

}  // namespace

TEST(ThreadCount, ReadsEnvironment) {
  {
    ThreadsEnv env("3");
    EXPECT_EQ(thread_count(), 3);
  }
  {
    ThreadsEnv env(nullptr);
    EXPECT_GE(thread_count(), 1);
  }
  for (const char* bad : {"0", "-2", "x", "4x", ""}) {
    ThreadsEnv env(bad);
    EXPECT_THROW(thread_count(), ValidationError) << "'" << bad << "'";
  }
}

TEST(ParallelFor, VisitsEveryIndexOnce) {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; }, 4);
  for (auto& h : hits) EXPECT_EQ(h.load(), 1);
  parallel_for(0, [](std::size_t) { FAIL(); }, 4);
}

TEST(ParallelFor, PropagatesExceptions) {
  EXPECT_THROW(parallel_for(
                   50, [](std::size_t i) { if (i == 17) throw std::runtime_error("boom"); }, 3),
               std::runtime_error);
}
