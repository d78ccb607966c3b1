#include "confocal/regular_triangulation.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace confocal {

namespace {

// face_table[s] = vertex slots of the face opposite slot s, ordered so that
// for a positively oriented cell the omitted vertex v[s] lies on the
// positive side of the face.
constexpr std::array<std::array<int, 3>, 4> kFaceTable{{
    {1, 3, 2},
    {0, 2, 3},
    {0, 3, 1},
    {0, 1, 2},
}};

int permutation_parity(const std::array<int, 4>& p) {
  int inv = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (p[i] > p[j]) ++inv;
  return inv & 1;  // 0 even, 1 odd
}

// Exit slot when rotating around the directed edge (slot a -> slot b):
// the remaining slot e such that the permutation (a, b, e, f) is even.
int rotation_exit_slot(int a, int b) {
  std::array<int, 2> rest{};
  int k = 0;
  for (int s = 0; s < 4; ++s)
    if (s != a && s != b) rest[k++] = s;
  return permutation_parity({a, b, rest[0], rest[1]}) == 0 ? rest[0] : rest[1];
}

}  // namespace

Vec3<Rational> weighted_circumcenter(const WeightedPoint& a, const WeightedPoint& b,
                                     const WeightedPoint& c, const WeightedPoint& d) {
  // 2 (p_k - p_a) . x = h_k - h_a for k in {b, c, d}
  const Vec3<Rational> r1 = Rational(2) * (b.p - a.p);
  const Vec3<Rational> r2 = Rational(2) * (c.p - a.p);
  const Vec3<Rational> r3 = Rational(2) * (d.p - a.p);
  const Rational y1 = b.h - a.h, y2 = c.h - a.h, y3 = d.h - a.h;
  const Rational det = det3(r1, r2, r3);
  if (sign_of(det) == 0)
    throw std::invalid_argument("weighted_circumcenter: flat tetrahedron");
  const Rational dx = det3(Vec3<Rational>{y1, r1.y, r1.z}, Vec3<Rational>{y2, r2.y, r2.z},
                           Vec3<Rational>{y3, r3.y, r3.z});
  const Rational dy = det3(Vec3<Rational>{r1.x, y1, r1.z}, Vec3<Rational>{r2.x, y2, r2.z},
                           Vec3<Rational>{r3.x, y3, r3.z});
  const Rational dz = det3(Vec3<Rational>{r1.x, r1.y, y1}, Vec3<Rational>{r2.x, r2.y, y2},
                           Vec3<Rational>{r3.x, r3.y, y3});
  return Vec3<Rational>{dx / det, dy / det, dz / det};
}

RegularTriangulation::RegularTriangulation(std::vector<WeightedPoint> sites,
                                           std::uint64_t seed)
    : sites_(std::move(sites)), walk_rng_(seed) {
  const int n = static_cast<int>(sites_.size());
  status_.assign(n, SiteStatus::Hidden);
  incident_cell_.assign(n, -1);
  if (n == 0) return;

  // Greedy scan for four affinely independent positions.
  std::array<int, 4> boot{-1, -1, -1, -1};
  boot[0] = 0;
  for (int i = 1; i < n && boot[1] < 0; ++i)
    if (!(sites_[i].p == sites_[boot[0]].p)) boot[1] = i;
  coincident_ = boot[1] < 0;
  if (!coincident_) {
    for (int i = boot[1] + 1; i < n && boot[2] < 0; ++i) {
      const Vec3<Rational> c =
          cross(sites_[boot[1]].p - sites_[boot[0]].p, sites_[i].p - sites_[boot[0]].p);
      if (sign_of(norm2(c)) != 0) boot[2] = i;
    }
    if (boot[2] >= 0) {
      for (int i = boot[2] + 1; i < n && boot[3] < 0; ++i)
        if (orient3d(sites_[boot[0]], sites_[boot[1]], sites_[boot[2]], sites_[i]) !=
            Sign::Zero)
          boot[3] = i;
    }
  }
  if (boot[3] < 0) {
    full_dim_ = false;
    return;
  }
  full_dim_ = true;

  if (orient3d(sites_[boot[0]], sites_[boot[1]], sites_[boot[2]], sites_[boot[3]]) ==
      Sign::Negative)
    std::swap(boot[2], boot[3]);
  bootstrap(boot);

  std::vector<int> rest;
  rest.reserve(n - 4);
  for (int i = 0; i < n; ++i)
    if (i != boot[0] && i != boot[1] && i != boot[2] && i != boot[3]) rest.push_back(i);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  for (std::size_t i = rest.size(); i > 1; --i)
    std::swap(rest[i - 1], rest[rng() % i]);
  for (int idx : rest) insert_site(idx);

  dual_.clear();
  dual_.resize(cells_.size());
}

int RegularTriangulation::new_cell(std::array<int, 4> v, bool infinite) {
  Cell c;
  c.v = v;
  c.infinite = infinite;
  cells_.push_back(c);
  return static_cast<int>(cells_.size()) - 1;
}

int RegularTriangulation::slot_of(int c, int vertex) const {
  const auto& v = cells_[c].v;
  for (int s = 0; s < 4; ++s)
    if (v[s] == vertex) return s;
  throw std::logic_error("slot_of: vertex not in cell");
}

int RegularTriangulation::inf_slot(int c) const { return slot_of(c, kInf); }

std::array<int, 3> RegularTriangulation::face_opposite(int c, int s) const {
  const auto& v = cells_[c].v;
  return {v[kFaceTable[s][0]], v[kFaceTable[s][1]], v[kFaceTable[s][2]]};
}

void RegularTriangulation::bootstrap(const std::array<int, 4>& t) {
  const int fin = new_cell({t[0], t[1], t[2], t[3]}, false);
  std::array<int, 4> infc{};
  for (int s = 0; s < 4; ++s) {
    // reversed face + infinite vertex: finite face oriented outward
    const auto f = face_opposite(fin, s);
    infc[s] = new_cell({f[0], f[2], f[1], kInf}, true);
    cells_[fin].n[s] = infc[s];
    cells_[infc[s]].n[3] = fin;
  }
  for (int s = 0; s < 4; ++s)
    for (int u = 0; u < 4; ++u) {
      if (s == u) continue;
      // shared face of infc[s], infc[u]: all vertices but v[u] (and INF)
      cells_[infc[s]].n[slot_of(infc[s], cells_[fin].v[u])] = infc[u];
    }
  for (int s = 0; s < 4; ++s) {
    status_[t[s]] = SiteStatus::Vertex;
    incident_cell_[t[s]] = fin;
  }
  hint_ = fin;
}

bool RegularTriangulation::conflict(int c, const WeightedPoint& q,
                                    std::vector<int>& memo_stamp,
                                    std::vector<bool>& memo_val, int epoch) const {
  if (memo_stamp[c] == epoch) return memo_val[c];
  ++stats_.conflict_tests;
  bool result;
  const Cell& cell = cells_[c];
  if (!cell.infinite) {
    const std::array<const WeightedPoint*, 4> s{&sites_[cell.v[0]], &sites_[cell.v[1]],
                                                &sites_[cell.v[2]], &sites_[cell.v[3]]};
    result = power_conflict(s, q);
  } else {
    const int is = slot_of(c, kInf);
    const auto f = face_opposite(c, is);
    const Sign o = orient3d(sites_[f[0]], sites_[f[1]], sites_[f[2]], q);
    if (o == Sign::Positive) {
      result = true;
    } else if (o == Sign::Negative) {
      result = false;
    } else {
      // q on the hull face plane: same answer as the finite cell beneath
      result = conflict(cell.n[is], q, memo_stamp, memo_val, epoch);
    }
  }
  memo_stamp[c] = epoch;
  memo_val[c] = result;
  return result;
}

int RegularTriangulation::locate(const WeightedPoint& q) const {
  int c = hint_;
  if (c < 0 || c >= static_cast<int>(cells_.size()) || !cells_[c].alive) c = 0;
  const std::size_t cap = 256 + cells_.size();
  for (std::size_t step = 0; step < cap; ++step) {
    ++stats_.located_steps;
    const Cell& cell = cells_[c];
    if (cell.infinite) {
      const int is = slot_of(c, kInf);
      const auto f = face_opposite(c, is);
      if (orient3d(sites_[f[0]], sites_[f[1]], sites_[f[2]], q) == Sign::Positive)
        return c;  // strictly beyond this hull face
      c = cell.n[is];
      continue;
    }
    int candidates[4];
    int nc = 0;
    for (int s = 0; s < 4; ++s) {
      const auto f = face_opposite(c, s);
      if (orient3d(sites_[f[0]], sites_[f[1]], sites_[f[2]], q) == Sign::Negative)
        candidates[nc++] = s;
    }
    if (nc == 0) return c;
    const int pick = candidates[nc == 1 ? 0 : static_cast<int>(walk_rng_() % nc)];
    c = cell.n[pick];
  }
  // Pathological walk; fall back to a scan.
  for (int i = 0; i < static_cast<int>(cells_.size()); ++i) {
    const Cell& cell = cells_[i];
    if (!cell.alive) continue;
    if (cell.infinite) {
      const int is = slot_of(i, kInf);
      const auto f = face_opposite(i, is);
      if (orient3d(sites_[f[0]], sites_[f[1]], sites_[f[2]], q) == Sign::Positive) return i;
    } else {
      bool inside = true;
      for (int s = 0; s < 4 && inside; ++s) {
        const auto f = face_opposite(i, s);
        inside = orient3d(sites_[f[0]], sites_[f[1]], sites_[f[2]], q) != Sign::Negative;
      }
      if (inside) return i;
    }
  }
  throw std::logic_error("locate: no containing cell found");
}

void RegularTriangulation::insert_site(int idx) {
  const WeightedPoint& q = sites_[idx];
  static thread_local std::vector<int> memo_stamp;
  static thread_local std::vector<bool> memo_val;
  static thread_local int epoch = 0;
  memo_stamp.resize(cells_.size() + 8, -1);
  memo_val.resize(cells_.size() + 8, false);
  ++epoch;

  const int start = locate(q);
  if (!conflict(start, q, memo_stamp, memo_val, epoch)) {
    status_[idx] = SiteStatus::Hidden;
    return;
  }

  // Flood the conflict region.
  std::vector<int> region{start};
  std::vector<char> in_region(cells_.size(), 0);
  in_region[start] = 1;
  struct BFace {
    int inside, slot;
  };
  std::vector<BFace> boundary;
  for (std::size_t head = 0; head < region.size(); ++head) {
    const int c = region[head];
    for (int s = 0; s < 4; ++s) {
      const int nb = cells_[c].n[s];
      if (in_region[nb]) continue;
      if (conflict(nb, q, memo_stamp, memo_val, epoch)) {
        in_region[nb] = 1;
        region.push_back(nb);
      } else {
        boundary.push_back({c, s});
      }
    }
  }

  // Star the new vertex onto the cavity boundary.
  status_[idx] = SiteStatus::Vertex;
  std::map<std::pair<int, int>, std::pair<int, int>> open_faces;  // edge -> (cell, slot)
  std::vector<int> created;
  created.reserve(boundary.size());
  for (const BFace& bf : boundary) {
    const int outside = cells_[bf.inside].n[bf.slot];
    auto f = face_opposite(bf.inside, bf.slot);
    // f is oriented with v[slot] (cavity side, same side as q) positive.
    const bool inf = f[0] == kInf || f[1] == kInf || f[2] == kInf;
    const int nc = new_cell({f[0], f[1], f[2], idx}, inf);
    created.push_back(nc);
    // external adjacency
    int m = -1;
    for (int s = 0; s < 4; ++s)
      if (cells_[outside].n[s] == bf.inside) m = s;
    cells_[nc].n[3] = outside;
    cells_[outside].n[m] = nc;
    // internal faces keyed by the two face vertices other than idx
    for (int s = 0; s < 3; ++s) {
      int a = f[(s + 1) % 3], b = f[(s + 2) % 3];
      if (a > b) std::swap(a, b);
      auto [it, fresh] = open_faces.try_emplace({a, b}, std::pair<int, int>{nc, s});
      if (!fresh) {
        cells_[nc].n[s] = it->second.first;
        cells_[it->second.first].n[it->second.second] = nc;
      }
    }
  }

  // Retire the cavity and detect vertices whose whole star was destroyed.
  std::vector<int> cavity_vertices;
  for (int c : region) {
    for (int s = 0; s < 4; ++s)
      if (cells_[c].v[s] != kInf) cavity_vertices.push_back(cells_[c].v[s]);
    cells_[c].alive = false;
  }
  std::sort(cavity_vertices.begin(), cavity_vertices.end());
  cavity_vertices.erase(std::unique(cavity_vertices.begin(), cavity_vertices.end()),
                        cavity_vertices.end());
  std::vector<int> survivors;
  for (int c : created)
    for (int s = 0; s < 4; ++s)
      if (cells_[c].v[s] != kInf) survivors.push_back(cells_[c].v[s]);
  std::sort(survivors.begin(), survivors.end());
  for (int v : cavity_vertices)
    if (!std::binary_search(survivors.begin(), survivors.end(), v)) {
      status_[v] = SiteStatus::Hidden;
      incident_cell_[v] = -1;
    }

  for (int c : created) {
    if (cells_[c].infinite) normalize_infinite(c);
    for (int s = 0; s < 4; ++s) {
      const int v = cells_[c].v[s];
      if (v != kInf) incident_cell_[v] = c;
    }
  }
  hint_ = created.empty() ? hint_ : created.front();
}

void RegularTriangulation::normalize_infinite(int c) {
  const int is = slot_of(c, kInf);
  const auto f = face_opposite(c, is);
  const int nb = cells_[c].n[is];
  // neighbor across the finite face is finite; its far vertex is interior
  int far = -2;
  for (int s = 0; s < 4; ++s) {
    const int v = cells_[nb].v[s];
    if (v != f[0] && v != f[1] && v != f[2]) far = v;
  }
  if (far < 0) throw std::logic_error("normalize_infinite: bad neighbor");
  if (orient3d(sites_[f[0]], sites_[f[1]], sites_[f[2]], sites_[far]) == Sign::Positive) {
    // interior point on positive side: flip by swapping two finite slots
    int s0 = -1, s1 = -1;
    for (int s = 0; s < 4; ++s)
      if (cells_[c].v[s] != kInf) (s0 < 0 ? s0 : s1) = s;
    std::swap(cells_[c].v[s0], cells_[c].v[s1]);
    std::swap(cells_[c].n[s0], cells_[c].n[s1]);
  }
}

std::vector<int> RegularTriangulation::hidden_sites() const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(sites_.size()); ++i)
    if (status_[i] == SiteStatus::Hidden) out.push_back(i);
  return out;
}

std::vector<int> RegularTriangulation::incident_cells(int site) const {
  std::vector<int> out;
  if (incident_cell_[site] < 0) return out;
  std::vector<char> seen(cells_.size(), 0);
  out.push_back(incident_cell_[site]);
  seen[out[0]] = 1;
  for (std::size_t head = 0; head < out.size(); ++head) {
    const int c = out[head];
    const int slot = slot_of(c, site);
    for (int s = 0; s < 4; ++s) {
      if (s == slot) continue;
      const int nb = cells_[c].n[s];
      if (!seen[nb]) {
        seen[nb] = 1;
        bool has = false;
        for (int t = 0; t < 4; ++t) has = has || cells_[nb].v[t] == site;
        if (has) out.push_back(nb);
        else seen[nb] = 1;
      }
    }
  }
  return out;
}

std::vector<int> RegularTriangulation::neighbor_sites(int site) const {
  std::vector<int> out;
  for (int c : incident_cells(site))
    for (int s = 0; s < 4; ++s) {
      const int v = cells_[c].v[s];
      if (v != site && v != kInf) out.push_back(v);
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<int> RegularTriangulation::ring_around_edge(int site_i, int site_j) const {
  int start = -1;
  for (int c : incident_cells(site_i)) {
    for (int s = 0; s < 4; ++s)
      if (cells_[c].v[s] == site_j) start = c;
    if (start >= 0) break;
  }
  if (start < 0) throw std::invalid_argument("ring_around_edge: not an edge");
  std::vector<int> ring;
  int c = start;
  do {
    ring.push_back(c);
    const int a = slot_of(c, site_i);
    const int b = slot_of(c, site_j);
    c = cells_[c].n[rotation_exit_slot(a, b)];
  } while (c != start && ring.size() <= cells_.size());
  if (c != start) throw std::logic_error("ring_around_edge: ring did not close");
  return ring;
}

const ExactPoint& RegularTriangulation::dual_vertex(int c) const {
  if (cells_[c].infinite) throw std::invalid_argument("dual_vertex: infinite cell");
  if (dual_.size() != cells_.size()) dual_.resize(cells_.size());
  if (!dual_[c]) {
    const auto& v = cells_[c].v;
    dual_[c] = ExactPoint(weighted_circumcenter(sites_[v[0]], sites_[v[1]], sites_[v[2]],
                                                sites_[v[3]]));
  }
  return *dual_[c];
}

void RegularTriangulation::precompute_duals(int threads) const {
  if (dual_.size() != cells_.size()) dual_.resize(cells_.size());
  const int n = static_cast<int>(cells_.size());
  auto work = [&](int t, int nt) {
    for (int c = t; c < n; c += nt)
      if (cells_[c].alive && !cells_[c].infinite && !dual_[c]) {
        const auto& v = cells_[c].v;
        dual_[c] = ExactPoint(weighted_circumcenter(sites_[v[0]], sites_[v[1]],
                                                    sites_[v[2]], sites_[v[3]]));
      }
  };
  if (threads <= 1) {
    work(0, 1);
    return;
  }
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
  for (auto& th : pool) th.join();
}

bool RegularTriangulation::is_valid(bool check_power_property) const {
  if (!full_dim_) return false;
  for (int c = 0; c < static_cast<int>(cells_.size()); ++c) {
    const Cell& cell = cells_[c];
    if (!cell.alive) continue;
    for (int s = 0; s < 4; ++s) {
      const int nb = cell.n[s];
      if (nb < 0 || !cells_[nb].alive) return false;
      bool back = false;
      for (int t = 0; t < 4; ++t) back = back || cells_[nb].n[t] == c;
      if (!back) return false;
      // shared face must match as a vertex set
      auto f = face_opposite(c, s);
      for (int fv : f) {
        bool found = false;
        for (int t = 0; t < 4; ++t) found = found || cells_[nb].v[t] == fv;
        if (!found) return false;
      }
    }
    if (!cell.infinite) {
      if (orient3d(sites_[cell.v[0]], sites_[cell.v[1]], sites_[cell.v[2]],
                   sites_[cell.v[3]]) != Sign::Positive)
        return false;
    } else {
      const int is = slot_of(c, kInf);
      const auto f = face_opposite(c, is);
      const int nb = cell.n[is];
      if (cells_[nb].infinite) return false;
      int far = -2;
      for (int s = 0; s < 4; ++s) {
        const int v = cells_[nb].v[s];
        if (v != f[0] && v != f[1] && v != f[2]) far = v;
      }
      if (orient3d(sites_[f[0]], sites_[f[1]], sites_[f[2]], sites_[far]) !=
          Sign::Negative)
        return false;
    }
  }
  if (check_power_property) {
    for (int c = 0; c < static_cast<int>(cells_.size()); ++c) {
      const Cell& cell = cells_[c];
      if (!cell.alive || cell.infinite) continue;
      const std::array<const WeightedPoint*, 4> s{&sites_[cell.v[0]], &sites_[cell.v[1]],
                                                  &sites_[cell.v[2]], &sites_[cell.v[3]]};
      for (int i = 0; i < static_cast<int>(sites_.size()); ++i) {
        if (i == cell.v[0] || i == cell.v[1] || i == cell.v[2] || i == cell.v[3]) continue;
        if (power_conflict(s, sites_[i])) return false;
      }
    }
  }
  return true;
}

}  // namespace confocal
