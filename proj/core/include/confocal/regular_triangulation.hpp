#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "confocal/predicates.hpp"
#include "confocal/weighted_point.hpp"

namespace confocal {

// Regular triangulation (dual of the power diagram) of weighted points in
// 3D. Built by incremental insertion with point location; predicates are
// exact via dynamic filtering, and cospherical degeneracies are resolved by
// symbolic perturbation of the weights in input-index order. The convex
// hull boundary is handled with a symbolic vertex at infinity. Sites whose
// power cell is empty are kept and reported as hidden.
//
// The structure requires a full-dimensional position set; callers must
// check full_dimensional() and fall back to a direct cell computation
// otherwise. After construction the triangulation is immutable and safe
// for concurrent read-only traversal.
class RegularTriangulation {
 public:
  static constexpr int kInf = -1;

  struct Cell {
    std::array<int, 4> v{kInf, kInf, kInf, kInf};
    std::array<int, 4> n{-1, -1, -1, -1};  // neighbor across face opposite v[i]
    bool alive = true;
    bool infinite = false;
  };

  enum class SiteStatus : char { Vertex, Hidden };

  RegularTriangulation(std::vector<WeightedPoint> sites, std::uint64_t seed);

  bool full_dimensional() const { return full_dim_; }
  bool all_positions_coincident() const { return coincident_; }

  const std::vector<WeightedPoint>& sites() const { return sites_; }
  const WeightedPoint& site(int i) const { return sites_[i]; }
  SiteStatus status(int i) const { return status_[i]; }
  bool hidden(int i) const { return status_[i] == SiteStatus::Hidden; }
  std::vector<int> hidden_sites() const;

  const std::vector<Cell>& cells() const { return cells_; }
  bool cell_alive(int c) const { return cells_[c].alive; }
  bool cell_infinite(int c) const { return cells_[c].infinite; }
  int inf_slot(int c) const;

  /// Cells incident to an active site.
  std::vector<int> incident_cells(int site) const;

  /// Active sites sharing a triangulation edge with `site`, ascending.
  std::vector<int> neighbor_sites(int site) const;

  /// Cells around the edge (i, j), cyclic, rotating positively around the
  /// directed axis p_j - p_i. Includes infinite cells.
  std::vector<int> ring_around_edge(int site_i, int site_j) const;

  /// Weighted circumcenter of a finite cell: the rational point with equal
  /// power distance to the four corner sites. Cached after first use; fill
  /// the cache with precompute_duals() before concurrent reads.
  const ExactPoint& dual_vertex(int c) const;
  void precompute_duals(int threads) const;

  /// Face of cell c opposite slot s, ordered so the omitted vertex lies on
  /// the positive side of the oriented face plane.
  std::array<int, 3> face_opposite(int c, int s) const;

  int slot_of(int c, int vertex) const;

  bool is_valid(bool check_power_property) const;

  struct BuildStats {
    std::size_t located_steps = 0;
    std::size_t conflict_tests = 0;
  };
  const BuildStats& build_stats() const { return stats_; }

 private:
  friend class TriangulationTester;

  bool conflict(int c, const WeightedPoint& q, std::vector<int>& memo_stamp,
                std::vector<bool>& memo_val, int epoch) const;
  int locate(const WeightedPoint& q) const;
  void insert_site(int idx);
  void bootstrap(const std::array<int, 4>& tetra);
  int new_cell(std::array<int, 4> v, bool infinite);
  void normalize_infinite(int c);

  std::vector<WeightedPoint> sites_;
  std::vector<SiteStatus> status_;
  std::vector<int> incident_cell_;
  std::vector<Cell> cells_;
  mutable std::vector<std::optional<ExactPoint>> dual_;
  mutable std::mt19937_64 walk_rng_;
  int hint_ = 0;
  bool full_dim_ = false;
  bool coincident_ = false;
  mutable BuildStats stats_;
};

/// Weighted circumcenter of four affinely independent weighted points.
/// Throws std::invalid_argument for a flat quadruple.
Vec3<Rational> weighted_circumcenter(const WeightedPoint& a, const WeightedPoint& b,
                                     const WeightedPoint& c, const WeightedPoint& d);

}  // namespace confocal
