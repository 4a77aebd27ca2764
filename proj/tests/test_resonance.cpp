#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nls/resonance.hpp"
#include "nls/rng.hpp"
#include "test_util.hpp"

using namespace nls;

TEST_CASE("phase function") {
  CHECK(phase({7, 7, 7, 7}) == 0.0);
  CHECK(phase({2, 1, 0, 1}) == 2.0);

  SUBCASE("symmetric under swapping k1 and k3") {
    Rng rng(1);
    for (int t = 0; t < 50; ++t) {
      const int k = rng.below(40), k1 = rng.below(40), k2 = rng.below(40), k3 = rng.below(40);
      CHECK(phase({k, k1, k2, k3}) == phase({k, k3, k2, k1}));
    }
  }
  SUBCASE("antisymmetric under swapping the pairs") {
    Rng rng(2);
    for (int t = 0; t < 50; ++t) {
      const int k = rng.below(40), k1 = rng.below(40), k2 = rng.below(40), k3 = rng.below(40);
      CHECK(phase({k, k1, k2, k3}) == -phase({k1, k, k3, k2}));
    }
  }
  SUBCASE("integer valued") {
    Rng rng(3);
    for (int t = 0; t < 50; ++t) {
      const double p = phase({rng.below(64), rng.below(64), rng.below(64), rng.below(64)});
      CHECK(p == std::round(p));
    }
  }
}

TEST_CASE("resonant set membership") {
  const ResonanceParams p{0.1, 0.1};

  SUBCASE("diagonal triples always resonate") {
    for (int k : {0, 3, 17, 50})
      for (double d : {0.1, 0.5, 0.9}) CHECK(in_resonant_set({k, k, k, k}, {d, 0.1}));
  }
  SUBCASE("low output frequency always resonates") {
    for (int k = 0; mu(k) <= 1.0 / p.delta; ++k) CHECK(in_resonant_set({k, 40, 3, 9}, p));
  }
  SUBCASE("well separated root is not resonant") {
    CHECK_FALSE(in_resonant_set({40, 10, 10, 10}, p));
  }
  SUBCASE("membership grows as delta shrinks") {
    Rng rng(4);
    for (int t = 0; t < 200; ++t) {
      const PhaseQuadruple q{rng.below(48), rng.below(48), rng.below(48), rng.below(48)};
      if (in_resonant_set(q, {0.9, 0.1})) CHECK(in_resonant_set(q, {0.3, 0.1}));
    }
  }
  SUBCASE("negative radicand falls back to the low-frequency clause") {
    // k1 small, k2 huge: radicand < 0
    const PhaseQuadruple q{2, 1, 40, 0};
    CHECK(radicand(q) < 0.0);
    CHECK(in_resonant_set(q, {0.9, 0.1}) == (mu(2) <= 1.0 / 0.9));
    CHECK(in_resonant_set(q, {0.3, 0.1}));  // mu_2 = sqrt(6) < 1/0.3
  }
}

TEST_CASE("disjointness audit") {
  SUBCASE("zero violations at K = 16, delta = 0.5") {
    const auto rep = audit_disjointness(16, {0.5, 0.1});
    CHECK(rep.violations.empty());
    CHECK(rep.pairs_in_hypothesis > 0);
  }
  SUBCASE("zero violations at K = 8, delta = 0.9") {
    const auto rep = audit_disjointness(8, {0.9, 0.1});
    CHECK(rep.violations.empty());
  }
  SUBCASE("close pairs are reported out of hypothesis") {
    const auto rep = audit_disjointness(16, {0.5, 0.1});
    for (int k = 0; k + 2 <= 16; ++k) {
      const bool found = std::find(rep.out_of_hypothesis.begin(), rep.out_of_hypothesis.end(),
                                   std::make_pair(k, k + 2)) != rep.out_of_hypothesis.end();
      CHECK(found);
    }
  }
  SUBCASE("exhaustive pair-by-pair oracle at K = 10") {
    // independent O(K^5) enumeration, straight from the set definition
    const ResonanceParams p{0.5, 0.1};
    const int K = 10;
    std::size_t oracle_violations = 0, oracle_pairs = 0;
    for (int k = 0; k <= K; ++k)
      for (int kp = k + 1; kp <= K; ++kp) {
        if (!(kp - k > 2 && std::min(mu(k), mu(kp)) > 2.0 / p.delta)) continue;
        ++oracle_pairs;
        for (int k1 = 0; k1 <= K; ++k1)
          for (int k2 = 0; k2 <= K; ++k2)
            for (int k3 = 0; k3 <= K; ++k3)
              if (in_resonant_set({k, k1, k2, k3}, p) && in_resonant_set({kp, k1, k2, k3}, p))
                ++oracle_violations;
      }
    const auto rep = audit_disjointness(K, p);
    CHECK(oracle_violations == rep.violations.size());
    CHECK(oracle_pairs == rep.pairs_in_hypothesis);
    CHECK(oracle_violations == 0);
  }
}

TEST_CASE("nonvanishing phase audit") {
  SUBCASE("zero violations at moderate size") {
    for (double d : {0.1, 0.5}) {
      const auto rep = audit_nonvanishing_phase(16, {d, 0.1});
      CHECK(rep.violations.empty());
      CHECK(rep.quadruples_checked + rep.resonant_skipped ==
            static_cast<std::size_t>(17) * 17 * 17 * 17);
    }
  }
  SUBCASE("diagonal quadruples are never audited") {
    // phi(k,k,k,k) = 0 but the quadruple is resonant for every delta
    for (int k : {0, 5, 16}) CHECK(in_resonant_set({k, k, k, k}, {0.99, 0.1}));
  }
}

TEST_CASE("nonresonant weights") {
  const ResonanceParams p{0.1, 0.1};

  SUBCASE("resonant quadruples are rejected") {
    CHECK_THROWS_AS(nonresonant_weight({5, 5, 5, 5}, 0.1, p), std::domain_error);
  }
  SUBCASE("positive, at most one, decreasing in the gap") {
    double prev = 1.0;
    for (int k = 13; k <= 60; k += 4) {
      const PhaseQuadruple q{k, 10, 10, 10};
      REQUIRE_FALSE(in_resonant_set(q, p));
      const double w = nonresonant_weight(q, 0.1, p);
      CHECK(w > 0.0);
      CHECK(w <= 1.0);
      CHECK(w < prev);
      prev = w;
    }
  }
  SUBCASE("summable over the output degree at eps = 0.1") {
    // bounded-sum form of the kernel's l^1 membership; constant frozen from a
    // direct scan over triples with k_i <= 64
    Rng rng(6);
    for (int t = 0; t < 24; ++t) {
      const PhaseQuadruple base{0, rng.below(65), rng.below(65), rng.below(65)};
      double sum = 0.0;
      for (int k = 0; k <= 64; ++k) {
        const PhaseQuadruple q{k, base.k1, base.k2, base.k3};
        if (!in_resonant_set(q, p)) sum += nonresonant_weight(q, 0.1, p);
      }
      CHECK(sum <= 8.0);
    }
  }
  SUBCASE("partial sums stabilize at eps = 0.5") {
    // at the default eps = 0.1 the tail between K = 32 and K = 64 still
    // carries 10-25% of the sum, and triples whose resonance root sits near
    // the first window edge concentrate their kernel mass there; the
    // stabilization window is checked at a clearly convergent exponent for
    // triples whose root lies well inside the window
    const ResonanceParams ph{0.5, 0.5};
    for (const auto& triple : {std::array<int, 3>{10, 10, 10}, {12, 3, 5}, {5, 16, 8}}) {
      double s32 = 0.0, s64 = 0.0;
      for (int k = 0; k <= 64; ++k) {
        const PhaseQuadruple q{k, triple[0], triple[1], triple[2]};
        if (in_resonant_set(q, ph)) continue;
        const double w = nonresonant_weight(q, 0.5, ph);
        if (k <= 32) s32 += w;
        s64 += w;
      }
      CHECK((s64 - s32) / s64 < 0.10);
    }
  }
  SUBCASE("record schema carries phase, membership and weight") {
    const auto rec = make_record({40, 10, 10, 10}, p);
    CHECK(rec.k == 40);
    CHECK_FALSE(rec.member);
    CHECK(rec.weight > 0.0);
    const auto res = make_record({5, 5, 5, 5}, p);
    CHECK(res.member);
    CHECK(res.weight == 0.0);
  }
}

TEST_CASE("convolution integral bound") {
  SUBCASE("coincident peaks are finite and match a direct oracle") {
    const double ratio = convolution_lemma_check(0.0, 0.0, 0.75, 0.75, 0.1);
    const double oracle = simpson(
        [](double t) { return std::pow(bracket(t), -1.5); }, -2e4, 2e4, 400000);
    CHECK(ratio == doctest::Approx(oracle).epsilon(2e-2));  // oracle truncates the tail
    CHECK(std::isfinite(ratio));
  }
  SUBCASE("gamma selection across the three exponent regimes") {
    CHECK(convolution_gamma(0.6, 0.8, 0.1) == doctest::Approx(0.4));
    CHECK(convolution_gamma(1.0, 1.0, 0.1) == doctest::Approx(0.9));
    CHECK(convolution_gamma(0.6, 1.2, 0.1) == doctest::Approx(0.6));
  }
  SUBCASE("separated peaks, beta > 1") {
    // the normalized ratio saturates at large separation; the quadrature
    // oracle puts it near 9.3 at separation 100, above the coincident value
    const double at100 = convolution_lemma_check(0.0, 100.0, 0.6, 1.2, 0.1);
    const double at0 = convolution_lemma_check(0.0, 0.0, 0.6, 1.2, 0.1);
    CHECK(at100 >= 8.0);
    CHECK(at100 <= 11.0);
    CHECK(at0 >= 3.0);
    CHECK(at0 <= 4.5);
  }
  SUBCASE("critical beta = 1 stays bounded across separations") {
    for (double sep : {0.0, 1.0, 10.0, 100.0, 1e3, 1e4}) {
      const double r = convolution_lemma_check(0.0, sep, 1.0, 1.0, 0.1);
      CHECK(r > 0.0);
      CHECK(r <= 20.0);
    }
  }
  SUBCASE("hypotheses enforced") {
    CHECK_THROWS_AS(convolution_lemma_check(0, 0, 1.2, 0.6, 0.1), std::invalid_argument);  // alpha > beta
    CHECK_THROWS_AS(convolution_lemma_check(0, 0, 0.3, 0.5, 0.1), std::invalid_argument);  // sum <= 1
    CHECK_THROWS_AS(convolution_lemma_check(0, 0, 0.6, 0.8, 0.0), std::invalid_argument);  // eps
  }
}

TEST_CASE("resonance table matches direct sums") {
  const ResonanceParams p{0.3, 0.1};
  const int K = 9;
  const auto table = build_resonance_table(K, p);
  Rng rng(12);
  for (int t = 0; t < 20; ++t) {
    const int k1 = rng.below(K + 1), k2 = rng.below(K + 1), k3 = rng.below(K + 1);
    double count = 0, w2 = 0, w4 = 0, w5 = 0;
    for (int k = 0; k <= K; ++k) {
      const PhaseQuadruple q{k, k1, k2, k3};
      if (in_resonant_set(q, p)) {
        count += 1.0;
        continue;
      }
      const double w = nonresonant_kernel(q, p.eps);
      w2 += w;
      if (k >= k1) w4 += w * std::pow(bracket(mu(k1)), -(0.75 - p.eps));
      if (k < k1) {
        const double r = radicand(q);
        const double gap = (r >= 0.0) ? mu(k) - std::sqrt(r) : mu(k);
        w5 += 1.0 / (bracket(gap) * std::pow(bracket(mu(k)), 0.75));
      }
    }
    const auto idx = table.triple_index(k1, k2, k3);
    CHECK(table.sigma_count[idx] == doctest::Approx(count));
    CHECK(table.nonres_kernel[idx] == doctest::Approx(w2).epsilon(1e-13));
    CHECK(table.kernel_k_ge_k1[idx] == doctest::Approx(w4).epsilon(1e-13));
    CHECK(table.kernel_k_lt_k1[idx] == doctest::Approx(w5).epsilon(1e-13));
  }
}
