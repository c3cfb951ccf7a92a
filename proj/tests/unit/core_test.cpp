#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "cds/core/distribution.hpp"
#include "cds/core/rng.hpp"
#include "cds/core/text.hpp"
#include "cds/core/trace.hpp"
#include "cds/core/vocabulary.hpp"

using namespace cds;

TEST_CASE("vocabulary validates tokens and stops") {
  const auto v = Vocabulary::from_strings({"</s>", "a", "b"}, {"</s>"});
  CHECK(v.size() == 3);
  CHECK(v.id("b") == 2);
  CHECK(v.is_stop(0));
  CHECK_FALSE(v.is_stop(1));
  CHECK(v.eos() == 0);
  CHECK_THROWS_AS(v.token(3), std::out_of_range);
  CHECK_THROWS_AS(Vocabulary({"a", "a"}, {0}), std::invalid_argument);
  CHECK_THROWS_AS(Vocabulary({"a", "b"}, {}), std::invalid_argument);
  CHECK_THROWS_AS(Vocabulary({"a", "b"}, {2}), std::invalid_argument);
  CHECK_THROWS_AS(v.check({0, 5}), std::invalid_argument);
}

TEST_CASE("softmax with temperature") {
  const double zeros[] = {0.0, 0.0, 0.0};
  auto u = softmax_with_temperature(zeros, 1.0);
  for (std::size_t i = 0; i < 3; ++i) CHECK(u[i] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  const double two[] = {std::log(2.0), 0.0};
  auto t = softmax_with_temperature(two, 1.0);
  CHECK(t[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(t[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

  // Regression values from direct evaluation of exp(2 l) / sum.
  const double logits[] = {3.1, -0.4, 0.7};
  auto r = softmax_with_temperature(logits, 0.5);
  CHECK(r[0] == doctest::Approx(0.990941183327).epsilon(1e-11));
  CHECK(r[1] == doctest::Approx(0.000903621394).epsilon(1e-9));
  CHECK(r[2] == doctest::Approx(0.008155195279).epsilon(1e-10));

  const double bad[] = {1.0, std::numeric_limits<double>::infinity()};
  CHECK_THROWS_AS(softmax_with_temperature(bad, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(softmax_with_temperature(two, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(softmax_with_temperature(two, -1.0), std::invalid_argument);
}

TEST_CASE("softmax preserves argmax for every temperature") {
  Rng rng(3);
  for (int c = 0; c < 200; ++c) {
    std::vector<double> logits(7);
    for (auto& l : logits) l = rng.uniform() * 10.0 - 5.0;
    const TokenId expected = argmax(softmax_with_temperature(logits, 1.0));
    for (double temp : {0.05, 0.5, 2.0, 50.0}) CHECK(argmax(softmax_with_temperature(logits, temp)) == expected);
  }
}

TEST_CASE("entropy in nats") {
  CHECK(entropy(TokenDistribution::one_hot(5, 2)) == 0.0);
  CHECK(entropy(TokenDistribution::uniform(8)) == doctest::Approx(std::log(8.0)).epsilon(1e-14));
  CHECK(entropy(TokenDistribution({0.5, 0.25, 0.25})) == doctest::Approx(1.0397207708).epsilon(1e-10));
}

TEST_CASE("distribution invariants") {
  CHECK_THROWS_AS(TokenDistribution({0.5, 0.4}), std::invalid_argument);
  CHECK_THROWS_AS(TokenDistribution({1.5, -0.5}), std::invalid_argument);
  CHECK_THROWS_AS(TokenDistribution::normalized({0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(MixtureWeights({0.6, 0.6}), std::invalid_argument);
}

TEST_CASE("mix") {
  const TokenDistribution a({0.2, 0.3, 0.5});
  const TokenDistribution b({0.6, 0.1, 0.3});
  const TokenDistribution both[] = {a, b};
  CHECK(mix(both, MixtureWeights({1.0, 0.0})) == a);

  const TokenDistribution e[] = {TokenDistribution({1.0, 0.0}), TokenDistribution({0.0, 1.0})};
  const auto half = mix(e, MixtureWeights({0.5, 0.5}));
  CHECK(half[0] == 0.5);
  CHECK(half[1] == 0.5);

  // Pointwise average computed by hand.
  const auto m = mix(both, MixtureWeights({0.5, 0.5}));
  CHECK(m[0] == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(m[1] == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(m[2] == doctest::Approx(0.4).epsilon(1e-15));

  const TokenDistribution same[] = {a, a};
  for (double l : {0.0, 0.25, 0.5, 0.9}) {
    CHECK(entropy(mix(same, MixtureWeights({l, 1.0 - l}))) == doctest::Approx(entropy(a)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(mix(both, MixtureWeights({1.0})), std::invalid_argument);
  const TokenDistribution mismatched[] = {a, TokenDistribution({0.5, 0.5})};
  CHECK_THROWS_AS(mix(mismatched, MixtureWeights({0.5, 0.5})), std::invalid_argument);
}

TEST_CASE("argmax breaks ties toward the lowest id") {
  CHECK(argmax(TokenDistribution({0.1, 0.7, 0.2})) == 1);
  CHECK(argmax(TokenDistribution({0.5, 0.5})) == 0);
  Rng rng(11);
  for (int c = 0; c < 100; ++c) {
    std::vector<double> p(9);
    for (auto& x : p) x = rng.uniform();
    const auto d = TokenDistribution::normalized(p);
    std::size_t best = 0;
    for (std::size_t i = 1; i < d.size(); ++i) {
      if (d[i] > d[best]) best = i;
    }
    CHECK(argmax(d) == best);
  }
}

TEST_CASE("sample") {
  Rng rng(5);
  const auto one = TokenDistribution::one_hot(6, 4);
  for (int i = 0; i < 100; ++i) CHECK(sample(one, rng) == 4);
  CHECK(rng.draws() == 100);

  const auto u = TokenDistribution::uniform(4);
  std::vector<int> counts(4, 0);
  Rng r2(9);
  const int n = 100000;
  for (int i = 0; i < n; ++i) ++counts[sample(u, r2)];
  for (int c : counts) CHECK(std::abs(c / double(n) - 0.25) <= 0.01);

  Rng a(42), b(42);
  const TokenDistribution d({0.1, 0.2, 0.3, 0.4});
  for (int i = 0; i < 50; ++i) CHECK(sample(d, a) == sample(d, b));
}

TEST_CASE("sample frequencies pass a chi-square test") {
  const TokenDistribution d({0.05, 0.1, 0.15, 0.2, 0.1, 0.05, 0.3, 0.05});
  Rng rng(17);
  const int n = 100000;
  std::vector<double> counts(d.size(), 0.0);
  for (int i = 0; i < n; ++i) counts[sample(d, rng)] += 1.0;
  double chi2 = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double expected = d[i] * n;
    chi2 += (counts[i] - expected) * (counts[i] - expected) / expected;
  }
  // Critical value of chi-square with 7 degrees of freedom at alpha = 0.001.
  CHECK(chi2 < 24.322);
}

TEST_CASE("temperature reshapes distributions") {
  const TokenDistribution d({0.5, 0.3, 0.2, 0.0});
  CHECK(apply_temperature(d, 1.0) == d);
  const auto sharp = apply_temperature(d, 0.5);
  CHECK(sharp[0] == doctest::Approx(0.25 / 0.38).epsilon(1e-12));
  CHECK(sharp[3] == 0.0);
}

TEST_CASE("text helpers") {
  CHECK(normalize_whitespace("  a \t b\n") == "a b");
  CHECK(ascii_lower("McCartney") == "mccartney");
  const auto pieces = split_whitespace_with_offsets("ab  cd");
  REQUIRE(pieces.size() == 2);
  CHECK(pieces[1].begin == 4);
  CHECK(pieces[1].end == 6);
  CHECK(replace_all("{x}-{x}", "{x}", "y") == "y-y");
}

TEST_CASE("trace counts yes decisions") {
  GenerationTrace t;
  t.steps.push_back({0, DecisionLabel::Yes, true, ModelRole::Pretrained, 0.0, 1});
  t.steps.push_back({1, DecisionLabel::No, true, ModelRole::Aligned, 0.0, 2});
  CHECK(t.yes_decisions() == 1);
}
