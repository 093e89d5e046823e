#include <gtest/gtest.h>

#include <set>

#include "lgof/rng.hpp"

namespace {

// Random123 known-answer vectors for Philox4x32-10.
TEST(Philox, KnownAnswerZero) {
  const auto out = lgof::philox4x32_10({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(out, (lgof::PhiloxCounter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
}

TEST(Philox, KnownAnswerOnes) {
  const auto out = lgof::philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff});
  EXPECT_EQ(out, (lgof::PhiloxCounter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
}

TEST(Philox, KnownAnswerPi) {
  const auto out = lgof::philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0});
  EXPECT_EQ(out, (lgof::PhiloxCounter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(RngStream, SameSeedAndStreamRepeat) {
  lgof::RngStream a(42, 7), b(42, 7);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.next_u64(), b.next_u64());
  EXPECT_EQ(a.draws(), 1000u);
}

TEST(RngStream, StreamsDiffer) {
  lgof::RngStream a(42, 7), b(42, 8), c(43, 7);
  EXPECT_NE(a.next_u64(), b.next_u64());
  lgof::RngStream a2(42, 7);
  EXPECT_NE(a2.next_u64(), c.next_u64());
}

TEST(RngStream, UniformIsOpenUnitInterval) {
  lgof::RngStream s(1, 0);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = s.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 100000.0, 0.5, 0.005);
}

TEST(MixSeed, TagsSeparate) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t t = 0; t < 100; ++t) seen.insert(lgof::mix_seed(5, t));
  EXPECT_EQ(seen.size(), 100u);
  EXPECT_NE(lgof::mix_seed(5, std::string_view("a")), lgof::mix_seed(5, std::string_view("b")));
  EXPECT_EQ(lgof::mix_seed(5, std::string_view("C(0,1)")), lgof::mix_seed(5, std::string_view("C(0,1)")));
}

}  // namespace
