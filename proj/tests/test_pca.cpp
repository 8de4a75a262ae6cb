#include <doctest.h>

#include "padic/datagen.hpp"
#include "padic/pca.hpp"
#include "padic/rng.hpp"

using namespace padic;

namespace {

ResidueVector random_vector(Rng& rng, std::uint32_t dims, std::uint64_t bound) {
  ResidueVector v(dims);
  for (auto& x : v) x = rng.below(bound);
  return v;
}

DataMatrix random_matrix(Rng& rng, std::size_t n, std::uint32_t dims, std::uint64_t bound) {
  DataMatrix Y(n);
  for (auto& row : Y) row = random_vector(rng, dims, bound);
  return Y;
}

Component make_component(std::vector<Residue> coeffs, ResidueVector basis, const Params& P) {
  Component c;
  c.coeff_norm = norm_q(coeffs, P);
  c.basis_norm = norm_q(basis, P);
  c.coeffs = std::move(coeffs);
  c.basis = std::move(basis);
  return c;
}

}  // namespace

TEST_SUITE("scores") {
  TEST_CASE("zero coefficients give the bottom score") {
    Params P(2, 2, 1, 1);
    Component zero = make_component({0}, {1}, P);
    Component unit = make_component({1}, {1}, P);
    CHECK(zero.coeff_norm * zero.basis_norm == 0);
    CHECK(unit.coeff_norm * unit.basis_norm == 4);
    CHECK(compare_scores(unit, zero) > 0);
  }

  TEST_CASE("scaling the basis by p divides the product by p^q") {
    Params P(3, 3, 2, 2);
    Component a = make_component({1, 2}, {1, 4}, P);
    Component b = make_component({1, 2}, {3, 12}, P);
    Wide pa = a.coeff_norm * a.basis_norm;
    Wide pb = b.coeff_norm * b.basis_norm;
    CHECK(pa == pb * Wide(9));  // p^q = 3^2
  }

  TEST_CASE("sort is stable and descending") {
    Params P(2, 3, 1, 2);
    FactorModel m;
    m.components.push_back(make_component({1, 0}, {2, 0}, P));   // score 4*2
    m.components.push_back(make_component({1, 1}, {1, 1}, P));   // score 8*8
    m.components.push_back(make_component({0, 1}, {0, 2}, P));   // score 4*2, ties with first
    sort_by_score_desc(m);
    CHECK(m.components[0].basis == ResidueVector{1, 1});
    CHECK(m.components[1].basis == ResidueVector{2, 0});
    CHECK(m.components[2].basis == ResidueVector{0, 2});
  }
}

TEST_SUITE("pca_body") {
  TEST_CASE("zero matrix never updates") {
    Params P(3, 2, 1, 3);
    DataMatrix Y(4, ResidueVector(3, 0));
    FactorModel m;
    CHECK_FALSE(pca_body(Y, m, {1, 2, 3}, P));
    CHECK(m.rank() == 0);
  }

  TEST_CASE("exact multiples of a unit axis collapse to zero") {
    Params P(5, 2, 1, 3);
    ResidueVector x{1, 0, 0};
    DataMatrix Y{{3, 0, 0}, {7, 0, 0}, {24, 0, 0}};
    FactorModel m;
    CHECK(pca_body(Y, m, x, P));
    CHECK(total_loss(Y, P) == 0);
    CHECK(m.rank() == 1);
    CHECK(m.components[0].coeffs == std::vector<Residue>{3, 7, 24});
  }

  TEST_CASE("zero pivot fails") {
    Params P(3, 2, 1, 2);
    DataMatrix Y{{1, 2}, {4, 5}};
    FactorModel m;
    CHECK_FALSE(pca_body(Y, m, {0, 0}, P));
  }

  TEST_CASE("loss strictly decreases on success") {
    Params P(3, 2, 1, 4);
    Rng rng(61);
    for (int it = 0; it < 50; ++it) {
      DataMatrix Y = random_matrix(rng, 5, 4, P.pe);
      ResidueVector x = random_vector(rng, 4, P.pe);
      Wide before = total_loss(Y, P);
      FactorModel m;
      if (pca_body(Y, m, x, P)) {
        CHECK(total_loss(Y, P) < before);
      } else {
        CHECK(total_loss(Y, P) == before);
      }
    }
  }
}

TEST_SUITE("nrpca") {
  TEST_CASE("zero matrix gives an empty model") {
    Params P(3, 2, 1, 3);
    DataMatrix Y(5, ResidueVector(3, 0));
    CHECK(nrpca(Y, 2, P).rank() == 0);
  }

  TEST_CASE("rank-1 data is absorbed by the first pivot") {
    Params P(5, 2, 1, 3);
    ResidueVector v{2, 10, 3};
    DataMatrix Y;
    for (Residue c = 1; c <= 3; ++c) {
      ResidueVector row(3);
      for (std::size_t d = 0; d < 3; ++d) row[d] = mul_mod_pe(c, v[d], P);
      Y.push_back(std::move(row));
    }
    FactorModel m = nrpca(Y, 2, P);
    CHECK(m.rank() == 1);
    CHECK(total_loss(Y, P) == 0);
  }

  TEST_CASE("zero budget is a no-op") {
    Params P(3, 2, 1, 2);
    DataMatrix Y{{1, 2}, {4, 5}};
    DataMatrix before = Y;
    CHECK(nrpca(Y, 0, P).rank() == 0);
    CHECK(Y == before);
  }

  TEST_CASE("budget above D is rejected") {
    Params P(3, 2, 1, 2);
    DataMatrix Y{{1, 2}};
    CHECK_THROWS_AS(nrpca(Y, 3, P), BudgetTooLarge);
    CHECK_THROWS_AS(nrpca(Y, 1, P, NrpcaOptions{5, false}), BudgetTooLarge);
  }

  TEST_CASE("over-provisioning keeps the top-scoring components") {
    Params P(3, 3, 1, 6);
    Rng rng(67);
    DataMatrix Y = random_matrix(rng, 8, 6, P.pe);
    DataMatrix Y2 = Y;
    FactorModel full = nrpca(Y, 4, P, NrpcaOptions{4, false});
    FactorModel popped = nrpca(Y2, 2, P, NrpcaOptions{4, false});
    REQUIRE(full.rank() >= popped.rank());
    CHECK(popped.rank() == 2);
    for (std::size_t k = 0; k < popped.rank(); ++k) {
      CHECK(popped.components[k].basis == full.components[k].basis);
    }
  }

  TEST_CASE("residual identity and budget invariants") {
    Params P(3, 2, 1, 5);
    Rng rng(71);
    for (int it = 0; it < 20; ++it) {
      DataMatrix Y = random_matrix(rng, 6, 5, P.pe);
      DataMatrix original = Y;
      FactorModel m = nrpca(Y, 3, P);
      CHECK(m.rank() <= 3);
      CHECK(residual(original, m, P) == Y);
      for (const Component& comp : m.components) {
        CHECK_FALSE(is_zero_vector(comp.coeffs));
      }
      for (std::size_t k = 0; k + 1 < m.rank(); ++k) {
        CHECK(compare_scores(m.components[k], m.components[k + 1]) >= 0);
      }
      for (std::size_t i = 0; i < Y.size(); ++i) {
        CHECK(norm_q(Y[i], P) <= norm_q(original[i], P));
      }
    }
  }
}

TEST_SUITE("rpca") {
  TEST_CASE("zero matrix gives an empty model") {
    Params P(3, 2, 1, 3);
    DataMatrix Y(4, ResidueVector(3, 0));
    CHECK(rpca(Y, 2, {}, P).rank() == 0);
  }

  TEST_CASE("already orthogonal rows pivot in norm order") {
    Params P(5, 2, 1, 3);
    DataMatrix Y{{0, 5, 0}, {1, 0, 0}, {0, 0, 10}};
    DataMatrix original = Y;
    FactorModel m = rpca(Y, 3, {}, P);
    REQUIRE(m.rank() >= 1);
    // the largest-norm row (a unit) must be the first pivot consumed
    CHECK(m.components[0].basis == ResidueVector{1, 0, 0});
    CHECK(residual(original, m, P) == Y);
  }

  TEST_CASE("compresses clustered data at least as well as nrpca, usually") {
    // On structureless uniform noise the pre-computation has nothing to find
    // and nrpca's greedy pivots tend to win; the comparison below uses data
    // with shared directions, where the ranking pays off.
    Params P(3, 3, 1, 6);
    int rpca_not_worse = 0;
    const int trials = 21;
    for (int s = 0; s < trials; ++s) {
      LabeledDataset ds = gen_balls(2, 0, 30, P, 9000 + s);
      DataMatrix Y = ds.Y;
      DataMatrix Y2 = ds.Y;
      FactorModel mn = nrpca(Y, 2, P);
      FactorModel mr = rpca(Y2, 2, {}, P);
      Wide nr = total_loss(residual(ds.Y, mn, P), P);
      Wide rr = total_loss(residual(ds.Y, mr, P), P);
      if (rr <= nr) ++rpca_not_worse;
    }
    CHECK(rpca_not_worse * 2 > trials);
  }
}

TEST_SUITE("residual") {
  TEST_CASE("empty model reproduces the input") {
    Params P(3, 2, 1, 3);
    DataMatrix Y{{1, 2, 3}, {4, 5, 6}};
    CHECK(residual(Y, FactorModel{}, P) == Y);
  }

  TEST_CASE("single component matches axpy") {
    Params P(5, 2, 1, 3);
    Rng rng(83);
    DataMatrix Y = random_matrix(rng, 4, 3, P.pe);
    FactorModel m;
    m.components.push_back(make_component({1, 2, 3, 4}, {7, 11, 13}, P));
    DataMatrix R = residual(Y, m, P);
    for (std::size_t i = 0; i < Y.size(); ++i) {
      CHECK(R[i] == axpy_mod(Y[i], m.components[0].coeffs[i], m.components[0].basis, P));
    }
  }

  TEST_CASE("sorting does not change the residual") {
    Params P(3, 2, 1, 4);
    Rng rng(89);
    DataMatrix Y = random_matrix(rng, 5, 4, P.pe);
    DataMatrix original = Y;
    FactorModel m = nrpca(Y, 3, P);
    DataMatrix before = residual(original, m, P);
    sort_by_score_desc(m);
    CHECK(residual(original, m, P) == before);
  }
}
