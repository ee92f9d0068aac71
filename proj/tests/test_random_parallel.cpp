#include <atomic>
#include <cstdlib>
#include <stdexcept>

#include <gtest/gtest.h>

#include "sofup/parallel.hpp"
#include "sofup/random.hpp"

using namespace sofup;

TEST(Stream, KeyedReproducibility) {
  Stream a(1, 2, 3), b(1, 2, 3), c(1, 3, 2);
  for (int i = 0; i < 100; ++i) {
    const double x = a.uniform();
    EXPECT_EQ(x, b.uniform());
    EXPECT_GE(x, 0.0);
    EXPECT_LT(x, 1.0);
  }
  EXPECT_NE(Stream(1, 2, 3).uniform(), c.uniform());
}

TEST(Stream, NormalMoments) {
  Stream s(42, 0, 0);
  const int N = 200000;
  double sum = 0, sq = 0;
  for (int i = 0; i < N; ++i) {
    const double x = s.normal();
    sum += x;
    sq += x * x;
  }
  EXPECT_NEAR(sum / N, 0.0, 0.01);
  EXPECT_NEAR(sq / N, 1.0, 0.02);
}

TEST(Stream, UnitVector) {
  Stream s(5, 1, 1);
  EXPECT_NEAR(s.unit_vector(7).norm(), 1.0, 1e-14);
  EXPECT_EQ(s.unit_vector(0).size(), 0);
}

TEST(ParallelFor, VisitsEveryIndexOnce) {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), 8, [&](std::size_t i) { hits[i]++; });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
}

TEST(ParallelFor, RethrowsLowestIndex) {
  try {
    parallel_for(100, 4, [](std::size_t i) {
      if (i == 17 || i == 60) throw std::runtime_error(std::to_string(i));
    });
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "17");
  }
}

TEST(ParallelFor, EnvironmentCap) {
  setenv("SOFUP_THREADS", "3", 1);
  EXPECT_EQ(default_threads(), 3u);
  unsetenv("SOFUP_THREADS");
  EXPECT_GE(default_threads(), 1u);
}
