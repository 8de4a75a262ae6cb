#include <doctest.h>

#include "padic/ortho.hpp"
#include "padic/rng.hpp"

using namespace padic;

namespace {

ResidueVector random_vector(Rng& rng, std::uint32_t dims, std::uint64_t bound) {
  ResidueVector v(dims);
  for (auto& x : v) x = rng.below(bound);
  return v;
}

VectorSystem random_system(Rng& rng, std::size_t n, std::uint32_t dims, std::uint64_t bound) {
  VectorSystem xs(n);
  for (auto& v : xs) v = random_vector(rng, dims, bound);
  return xs;
}

Wide system_norm(const VectorSystem& xs, const Params& P) {
  Wide sum = 0;
  for (const auto& v : xs) sum += norm_q(v, P);
  return sum;
}

}  // namespace

TEST_SUITE("is_orthogonal") {
  TEST_CASE("unit axes versus the all-ones vector") {
    Params P(3, 1, 1, 2);
    ResidueVector v0{1, 0}, v1{0, 1}, v2{1, 1};
    CHECK(is_orthogonal(v0, v1, P));
    CHECK(is_orthogonal(v0, v2, P));
    CHECK(is_orthogonal(v1, v2, P));
    CHECK_FALSE(is_orthogonal(v2, v0, P));
    CHECK_FALSE(is_orthogonal(v2, v1, P));
    // v0 + v1 lands on v2 itself, so orthogonality is not closed under sums.
    CHECK_FALSE(is_orthogonal(v2, v2, P));
  }

  TEST_CASE("zero vector is orthogonal to everything") {
    Params P(5, 2, 1, 3);
    CHECK(is_orthogonal({0, 0, 0}, {4, 9, 1}, P));
  }

  TEST_CASE("matches a zero nearest component") {
    Params P(3, 2, 1, 4);
    Rng rng(31);
    for (int it = 0; it < 200; ++it) {
      ResidueVector v = random_vector(rng, 4, P.pe);
      ResidueVector x = random_vector(rng, 4, P.pe);
      CHECK(is_orthogonal(v, x, P) == (nearest_component(v, x, P) == 0));
    }
  }
}

TEST_SUITE("orthogonalize") {
  TEST_CASE("vector against itself collapses to zero") {
    Params P(7, 3, 1, 3);
    ResidueVector v{5, 14, 3};
    ResidueVector r = orthogonalize(v, {v}, P);
    CHECK(norm_q(r, P) == 0);
  }

  TEST_CASE("orthogonal vector passes through unchanged") {
    Params P(3, 2, 1, 4);
    Rng rng(17);
    int seen = 0;
    for (int it = 0; it < 300 && seen < 40; ++it) {
      ResidueVector v = random_vector(rng, 4, P.pe);
      VectorSystem xs = random_system(rng, 2, 4, P.pe);
      if (!is_orthogonal(v, xs[0], P) || !is_orthogonal(v, xs[1], P)) continue;
      ++seen;
      CHECK(orthogonalize(v, xs, P) == v);
    }
    CHECK(seen > 0);
  }

  TEST_CASE("norm never increases across a pass") {
    Params P(3, 3, 1, 5);
    Rng rng(23);
    for (int it = 0; it < 100; ++it) {
      ResidueVector v = random_vector(rng, 5, P.pe);
      VectorSystem xs = random_system(rng, 3, 5, P.pe);
      CHECK(norm_q(orthogonalize(v, xs, P), P) <= norm_q(v, P));
    }
  }

  TEST_CASE("reducing by one system entry can break orthogonality to another") {
    // An exhaustive search over p=2, E=2, D=3 exhibits the instability:
    // v orthogonal to x1, the x0-component update fires, and the result is
    // no longer orthogonal to x1.
    Params P(2, 2, 1, 3);
    bool found = false;
    for (Residue a = 0; a < 64 && !found; ++a) {
      for (Residue b = 0; b < 64 && !found; ++b) {
        for (Residue c = 0; c < 64 && !found; ++c) {
          ResidueVector v{a % 4, a / 4 % 4, a / 16};
          ResidueVector x0{b % 4, b / 4 % 4, b / 16};
          ResidueVector x1{c % 4, c / 4 % 4, c / 16};
          if (!is_orthogonal(v, x1, P)) continue;
          Residue c0 = nearest_component(v, x0, P);
          if (c0 == 0) continue;
          ResidueVector w = axpy_mod(v, c0, x0, P);
          if (is_orthogonal(w, x1, P)) continue;
          found = true;
          CHECK(orthogonalize(v, {x0}, P) == w);
        }
      }
    }
    CHECK(found);
  }
}

TEST_SUITE("iterated_orthogonalization") {
  TEST_CASE("an orthogonal system returns unchanged after one silent pass") {
    Params P(3, 1, 1, 3);
    VectorSystem xs{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    VectorSystem before = xs;
    OrthoStats stats = iterated_orthogonalization(xs, {}, P);
    CHECK(xs == before);
    CHECK(stats.pivot_visits == 3);
    CHECK_FALSE(stats.hit_threshold);
  }

  TEST_CASE("duplicate entries collapse") {
    Params P(5, 2, 1, 3);
    ResidueVector v{2, 7, 11};
    VectorSystem xs{v, v};
    iterated_orthogonalization(xs, {}, P);
    CHECK(xs[0] == v);
    CHECK(norm_q(xs[1], P) == 0);
  }

  TEST_CASE("terminates with an unbounded visit cap") {
    Params P(3, 2, 1, 4);
    Rng rng(41);
    for (int it = 0; it < 30; ++it) {
      VectorSystem xs = random_system(rng, 4, 4, P.pe);
      OrthoConfig cfg;
      cfg.t_io = kInfiniteThreshold;
      OrthoStats stats = iterated_orthogonalization(xs, cfg, P);
      CHECK_FALSE(stats.hit_threshold);
    }
  }

  TEST_CASE("silent exit leaves a pairwise orthogonal system") {
    Params P(3, 2, 1, 4);
    Rng rng(43);
    for (int it = 0; it < 20; ++it) {
      VectorSystem xs = random_system(rng, 4, 4, P.pe);
      OrthoStats stats = iterated_orthogonalization(xs, {}, P);
      REQUIRE_FALSE(stats.hit_threshold);
      for (std::size_t j = 0; j < xs.size(); ++j) {
        for (std::size_t k = 0; k < xs.size(); ++k) {
          if (j == k) continue;
          CHECK(nearest_component(xs[k], xs[j], P) == 0);
        }
      }
    }
  }

  TEST_CASE("total norm decreases exactly on updating visits") {
    Params P(2, 3, 1, 5);
    Rng rng(47);
    VectorSystem xs = random_system(rng, 5, 5, P.pe);
    Wide prev = system_norm(xs, P);
    VisitObserver obs = [&](const PivotVisit& visit, const VectorSystem& state) {
      Wide now = system_norm(state, P);
      if (visit.updated) {
        CHECK(now < prev);
      } else {
        CHECK(now == prev);
      }
      prev = now;
    };
    iterated_orthogonalization(xs, {}, P, &obs);
  }

  TEST_CASE("visit cap cuts the process short") {
    Params P(2, 3, 1, 5);
    Rng rng(53);
    VectorSystem xs = random_system(rng, 5, 5, P.pe);
    OrthoConfig cfg;
    cfg.t_io = 2;
    OrthoStats stats = iterated_orthogonalization(xs, cfg, P);
    CHECK(stats.pivot_visits == 2);
    CHECK(stats.hit_threshold);
  }
}
