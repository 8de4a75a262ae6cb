#include <doctest.h>

#include <cmath>

#include "padic/datagen.hpp"

using namespace padic;

TEST_SUITE("gen_uniform") {
  TEST_CASE("deterministic per seed and in range") {
    Params P(7, 3, 1, 6);
    DataMatrix a = gen_uniform(50, 6, P, 9);
    DataMatrix b = gen_uniform(50, 6, P, 9);
    DataMatrix c = gen_uniform(50, 6, P, 10);
    CHECK(a == b);
    CHECK(a != c);
    for (const auto& row : a) {
      for (Residue x : row) CHECK(x < P.pe);
    }
  }

  TEST_CASE("leading digit frequencies look uniform") {
    Params P(7, 5, 1, 1);
    DataMatrix Y = gen_uniform(100000, 1, P, 123);
    std::vector<std::uint64_t> counts(P.p, 0);
    for (const auto& row : Y) ++counts[row[0] % P.p];
    const double n = 100000.0;
    const double expect = n / double(P.p);
    const double sigma = std::sqrt(n * (1.0 / P.p) * (1.0 - 1.0 / P.p));
    for (std::uint64_t c : counts) {
      CHECK(std::abs(double(c) - expect) < 5.0 * sigma);
    }
  }
}

TEST_SUITE("gen_balls") {
  TEST_CASE("rate zero keeps every sample inside its ball") {
    Params P(7, 3, 1, 5);
    std::vector<ResidueVector> centers;
    BallOptions opts;
    opts.centers_out = &centers;
    LabeledDataset ds = gen_balls(3, 0, 200, P, 5, opts);
    REQUIRE(centers.size() == 3);
    const std::uint64_t p2 = P.p_pow[2];
    for (std::size_t i = 0; i < ds.Y.size(); ++i) {
      REQUIRE(ds.labels[i] >= 0);
      const ResidueVector& center = centers[std::size_t(ds.labels[i])];
      for (std::uint32_t d = 0; d < P.D; ++d) {
        CHECK(ds.Y[i][d] % p2 == center[d] % p2);
      }
    }
  }

  TEST_CASE("odd centres vanish modulo p") {
    Params P(5, 4, 1, 8);
    std::vector<ResidueVector> centers;
    BallOptions opts;
    opts.centers_out = &centers;
    gen_balls(6, 0, 1, P, 17, opts);
    for (std::size_t b = 0; b < centers.size(); ++b) {
      if (b % 2 == 0) continue;
      for (Residue x : centers[b]) CHECK(x % P.p == 0);
    }
  }

  TEST_CASE("anomaly count concentrates around the rate") {
    Params P(7, 5, 1, 10);
    LabeledDataset ds = gen_balls(10, 1, 10000, P, 42);
    std::size_t anomalies = 0;
    for (auto label : ds.labels) {
      if (label == kAnomalousLabel) ++anomalies;
    }
    CHECK(anomalies >= 50);
    CHECK(anomalies <= 160);
  }

  TEST_CASE("deterministic per seed") {
    Params P(3, 3, 1, 4);
    LabeledDataset a = gen_balls(4, 10, 100, P, 55);
    LabeledDataset b = gen_balls(4, 10, 100, P, 55);
    CHECK(a.Y == b.Y);
    CHECK(a.labels == b.labels);
  }

  TEST_CASE("needs a representable radius") {
    Params P(3, 1, 1, 4);
    CHECK_THROWS_AS(gen_balls(2, 0, 10, P, 1), ConfigError);
  }
}

TEST_SUITE("gen_affine") {
  TEST_CASE("zero-noise samples lie exactly in the affine image") {
    Params P(5, 3, 1, 6);
    std::vector<ResidueVector> basis;
    std::vector<ResidueVector> coords;
    AffineOptions opts;
    opts.zero_noise = true;
    opts.basis_out = &basis;
    opts.coords_out = &coords;
    LabeledDataset ds = gen_affine(2, 0, 50, P, 77, opts);
    REQUIRE(basis.size() == 3);
    REQUIRE(coords.size() == ds.Y.size());
    for (std::size_t i = 0; i < ds.Y.size(); ++i) {
      for (std::uint32_t d = 0; d < P.D; ++d) {
        // naive recomputation of B*w with the last coordinate pinned to 1
        u128 acc = basis[2][d];
        for (std::size_t j = 0; j < 2; ++j) acc += u128(coords[i][j]) * basis[j][d];
        CHECK(ds.Y[i][d] == Residue(acc % P.pe));
      }
    }
  }

  TEST_CASE("odd basis rows vanish modulo p") {
    Params P(3, 3, 1, 6);
    std::vector<ResidueVector> basis;
    AffineOptions opts;
    opts.basis_out = &basis;
    gen_affine(3, 0, 1, P, 13, opts);
    REQUIRE(basis.size() == 4);
    for (std::size_t j = 1; j < basis.size(); j += 2) {
      for (Residue x : basis[j]) CHECK(x % P.p == 0);
    }
  }

  TEST_CASE("anomaly count concentrates around the rate") {
    Params P(7, 5, 1, 10);
    LabeledDataset ds = gen_affine(4, 10, 10000, P, 21);
    std::size_t anomalies = 0;
    for (auto label : ds.labels) {
      if (label == kAnomalousLabel) ++anomalies;
    }
    CHECK(anomalies >= 800);
    CHECK(anomalies <= 1200);
  }

  TEST_CASE("subspace dimension must stay below D") {
    Params P(3, 3, 1, 4);
    CHECK_THROWS_AS(gen_affine(4, 0, 10, P, 1), ConfigError);
    CHECK_THROWS_AS(gen_affine(0, 0, 10, P, 1), ConfigError);
  }
}
