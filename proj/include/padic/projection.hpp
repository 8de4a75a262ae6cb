#pragma once

#include <cstdint>
#include <vector>

#include "padic/core.hpp"

namespace padic {

// Digit trie over N_{<p} encoding the 1-D projection loss landscape.
// Node 0 is the root; children of a node form a linked list in ascending
// digit order, and for p <= 8 each node additionally carries a direct
// child-index table. All weights are rescaled by p^{(E-1)q}: the root
// carries sum_d eps_hat[nu_d], every other node a non-positive correction.
class WeightedTrie {
 public:
  static constexpr std::uint32_t kDirectDigits = 8;

  struct Node {
    std::int64_t weight = 0;
    std::int32_t first_child = -1;
    std::int32_t next_sibling = -1;
    std::uint32_t digit = 0;
    std::int32_t kids[kDirectDigits] = {-1, -1, -1, -1, -1, -1, -1, -1};
  };

  void reset(std::uint64_t p) {
    direct_ = p <= kDirectDigits;
    nodes_.clear();
    nodes_.push_back(Node{});
  }
  std::int32_t root() const { return 0; }
  const Node& node(std::int32_t i) const { return nodes_[std::size_t(i)]; }
  std::size_t size() const { return nodes_.size(); }
  std::int64_t root_weight() const { return nodes_[0].weight; }

  std::int32_t find_child(std::int32_t n, std::uint32_t digit) const {
    if (direct_ && digit < kDirectDigits) return nodes_[std::size_t(n)].kids[digit];
    for (std::int32_t c = nodes_[std::size_t(n)].first_child; c >= 0;
         c = nodes_[std::size_t(c)].next_sibling) {
      if (nodes_[std::size_t(c)].digit == digit) return c;
      if (nodes_[std::size_t(c)].digit > digit) break;
    }
    return -1;
  }

  std::int32_t find_or_insert_child(std::int32_t n, std::uint32_t digit);
  void add_weight(std::int32_t n, std::int64_t delta) { nodes_[std::size_t(n)].weight += delta; }

 private:
  std::int32_t insert_linked(std::int32_t n, std::uint32_t digit);

  std::vector<Node> nodes_;
  bool direct_ = false;
};

void build_trie(const RatioData& rd, const Params& P, WeightedTrie& out);
WeightedTrie build_trie(const RatioData& rd, const Params& P);

struct ProjectionResult {
  Residue c_opt = 0;
  std::int64_t weight = 0;  // loss at c_opt, excluding dummy coordinates
};

struct DfsFrame {
  std::int32_t node;
  std::uint32_t depth;
  Residue c;
  std::int64_t w;
};

// Depth-first minimisation over leaves; the first minimal leaf in ascending
// digit order wins (strict improvement only).
ProjectionResult trie_dfs(const WeightedTrie& t, const Params& P,
                          std::vector<DfsFrame>* scratch = nullptr);

// Ratio data against one fixed target vector, with the per-coordinate unit
// inverses precomputed once so that projecting many rows is cheap.
class PivotContext {
 public:
  PivotContext(const ResidueVector& x, const Params& P);

  bool zero_pivot() const { return zero_pivot_; }
  // Fills rd and accumulates eps_hat[v(v0_d)] over dummy coordinates.
  void ratio_row(const ResidueVector& v0, const Params& P, RatioData& rd,
                 std::int64_t& dummy_norm) const;

 private:
  struct Coord {
    Residue inv = 0;         // inverse of the unit part of x_d mod p^{E-nu}
    std::uint32_t nu = 0;    // valuation of x_d
    bool active = false;     // x_d != 0
  };
  std::vector<Coord> coords_;
  bool zero_pivot_ = true;
};

struct ProjectionWorkspace {
  RatioData rd;
  WeightedTrie trie;
  std::vector<DfsFrame> stack;
};

struct ProjectionOutcome {
  Residue c = 0;
  std::int64_t path_weight = 0;
  std::int64_t dummy_norm = 0;
  // Norm of v0 - c * x, i.e. the minimum the projection achieves.
  std::int64_t residual_norm() const { return path_weight + dummy_norm; }
};

ProjectionOutcome project_onto(const ResidueVector& v0, const PivotContext& ctx,
                               const Params& P, ProjectionWorkspace& ws);

// ratio_valuation -> build_trie -> trie_dfs; c = 0 means v0 is already
// orthogonal to v1.
Residue nearest_component(const ResidueVector& v0, const ResidueVector& v1, const Params& P);
ProjectionOutcome project_onto(const ResidueVector& v0, const ResidueVector& v1, const Params& P);

// Enumeration oracle; rejects p^E above the guard.
struct BruteForceResult {
  Residue c = 0;
  Wide norm = 0;
};
BruteForceResult brute_force_component(const ResidueVector& v0, const ResidueVector& v1,
                                       const Params& P);

}  // namespace padic
