#include <gtest/gtest.h>

#include "support/fuzz.hpp"

TEST(Fuzz, EngineMatchesBruteForceOnRandomNetworks) {
  int active = 0;
  for (std::uint64_t seed = 1; seed <= 1500; ++seed) {
    const auto c = hippo::test_support::fuzz_case(seed);
    ASSERT_LE(c.neurons, 16u);
    ASSERT_TRUE(c.bounds_ok) << "seed " << seed;
    ASSERT_TRUE(c.weights_equal) << "seed " << seed;
    active += c.plastic_activity;
  }
  // The generator has to exercise plasticity, not just silence.
  EXPECT_GT(active, 1000);
}
