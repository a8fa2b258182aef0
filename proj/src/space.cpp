#include "locind/space.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include "locind/errors.hpp"
#include "locind/matrix.hpp"

namespace locind {

bool FinitePointSpace::tuple_in_some_simplex(
    const std::vector<int>& tuple) const {
  std::vector<int> span(tuple);
  std::sort(span.begin(), span.end());
  span.erase(std::unique(span.begin(), span.end()), span.end());
  for (const auto& simplex : maximal_simplices) {
    if (std::includes(simplex.begin(), simplex.end(), span.begin(),
                      span.end()))
      return true;
  }
  return false;
}

BigRat FinitePointSpace::max_finite_distance() const {
  BigRat best(0);
  for (int i = 0; i < n_points; ++i)
    for (int j = i + 1; j < n_points; ++j)
      if (!pair_disconnected(i, j) && dist(i, j) > best) best = dist(i, j);
  return best;
}

BigRat FinitePointSpace::max_simplex_diameter() const {
  BigRat best(0);
  for (const auto& simplex : maximal_simplices)
    for (size_t a = 0; a < simplex.size(); ++a)
      for (size_t b = a + 1; b < simplex.size(); ++b) {
        int i = simplex[a], j = simplex[b];
        if (!pair_disconnected(i, j) && dist(i, j) > best) best = dist(i, j);
      }
  return best;
}

std::vector<BigRat> FinitePointSpace::distance_grid() const {
  std::set<BigRat> values;
  for (int i = 0; i < n_points; ++i)
    for (int j = i + 1; j < n_points; ++j)
      if (!pair_disconnected(i, j) && dist(i, j) != 0)
        values.insert(dist(i, j));
  std::vector<BigRat> grid(values.rbegin(), values.rend());
  if (grid.empty()) grid.push_back(BigRat(0));
  return grid;
}

void FinitePointSpace::validate() const {
  require(n_points > 0, "space must contain at least one point");
  require(metric_.size() == size_t(n_points) * n_points &&
              disconnected_.size() == metric_.size(),
          "metric table has wrong shape");
  for (int i = 0; i < n_points; ++i) {
    require(!pair_disconnected(i, i) && dist(i, i) == 0,
            "metric diagonal must be zero");
    for (int j = 0; j < n_points; ++j) {
      require(pair_disconnected(i, j) == pair_disconnected(j, i) &&
                  dist(i, j) == dist(j, i),
              "metric must be symmetric");
      require(pair_disconnected(i, j) || dist(i, j) >= 0,
              "distances must be nonnegative");
    }
  }
  for (const auto& simplex : maximal_simplices) {
    require(!simplex.empty(), "empty simplex");
    require(std::is_sorted(simplex.begin(), simplex.end()),
            "simplex vertices must be sorted");
    require(std::adjacent_find(simplex.begin(), simplex.end()) ==
                simplex.end(),
            "simplex vertices must be distinct");
    require(simplex.front() >= 0 && simplex.back() < n_points,
            "simplex vertex out of range");
  }
}

SpacePtr circle_space(int n) {
  require(n >= 3, "circle space needs at least 3 points, got " +
                      std::to_string(n));
  auto space = std::make_shared<FinitePointSpace>();
  space->n_points = n;
  space->label = "circle_" + std::to_string(n);
  space->unit = "pi";
  space->metric_.assign(size_t(n) * n, BigRat(0));
  space->disconnected_.assign(size_t(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int k = std::abs(i - j);
      int arc = std::min(k, n - k);
      // arc length along the unit circle, in units of pi: 2*arc/n
      BigRat d(2 * arc, n);
      d.canonicalize();
      space->metric_[size_t(i) * n + j] = d;
    }
  for (int i = 0; i < n; ++i) {
    std::vector<int> edge{i, (i + 1) % n};
    std::sort(edge.begin(), edge.end());
    space->maximal_simplices.push_back(edge);
  }
  std::sort(space->maximal_simplices.begin(), space->maximal_simplices.end());
  space->validate();
  return space;
}

SpacePtr simplicial_space(const std::vector<std::vector<int>>& maximal) {
  require(!maximal.empty(),
          "simplicial space needs at least one maximal simplex");
  std::set<int> vertex_set;
  std::vector<std::vector<int>> cleaned;
  for (const auto& raw : maximal) {
    require(!raw.empty(), "empty simplex in input");
    std::vector<int> simplex(raw);
    std::sort(simplex.begin(), simplex.end());
    simplex.erase(std::unique(simplex.begin(), simplex.end()), simplex.end());
    require(simplex.front() >= 0, "negative vertex index");
    vertex_set.insert(simplex.begin(), simplex.end());
    cleaned.push_back(std::move(simplex));
  }
  int n = *vertex_set.rbegin() + 1;
  require(int(vertex_set.size()) == n,
          "vertex indices must be contiguous starting at 0");

  // adjacency from the 1-skeleton
  std::vector<std::vector<int>> adjacency(n);
  for (const auto& simplex : cleaned)
    for (size_t a = 0; a < simplex.size(); ++a)
      for (size_t b = a + 1; b < simplex.size(); ++b) {
        adjacency[simplex[a]].push_back(simplex[b]);
        adjacency[simplex[b]].push_back(simplex[a]);
      }

  auto space = std::make_shared<FinitePointSpace>();
  space->n_points = n;
  space->label = "simplicial_" + std::to_string(n);
  space->unit = "1";
  space->metric_.assign(size_t(n) * n, BigRat(0));
  space->disconnected_.assign(size_t(n) * n, 1);

  // all-pairs hop distance by BFS from every vertex
  for (int start = 0; start < n; ++start) {
    std::vector<int> hops(n, -1);
    std::queue<int> frontier;
    hops[start] = 0;
    frontier.push(start);
    while (!frontier.empty()) {
      int v = frontier.front();
      frontier.pop();
      for (int w : adjacency[v])
        if (hops[w] < 0) {
          hops[w] = hops[v] + 1;
          frontier.push(w);
        }
    }
    for (int j = 0; j < n; ++j)
      if (hops[j] >= 0) {
        space->metric_[size_t(start) * n + j] = BigRat(hops[j]);
        space->disconnected_[size_t(start) * n + j] = 0;
      }
  }

  std::sort(cleaned.begin(), cleaned.end());
  cleaned.erase(std::unique(cleaned.begin(), cleaned.end()), cleaned.end());
  space->maximal_simplices = std::move(cleaned);
  space->validate();
  return space;
}

SpacePtr single_point_space() {
  auto space = std::make_shared<FinitePointSpace>();
  space->n_points = 1;
  space->label = "point";
  space->unit = "1";
  space->metric_.assign(1, BigRat(0));
  space->disconnected_.assign(1, 0);
  space->maximal_simplices = {{0}};
  space->validate();
  return space;
}

Radius tuple_support_radius(const FinitePointSpace& space,
                            const std::vector<int>& tuple) {
  require(!tuple.empty(), "support radius of an empty tuple is undefined");
  for (int v : tuple)
    require(v >= 0 && v < space.n_points,
            "tuple entry " + std::to_string(v) + " out of range");
  BigRat best(0);
  for (size_t a = 0; a < tuple.size(); ++a)
    for (size_t b = a + 1; b < tuple.size(); ++b) {
      if (space.pair_disconnected(tuple[a], tuple[b])) return Radius::inf();
      const BigRat& d = space.dist(tuple[a], tuple[b]);
      if (d > best) best = d;
    }
  return Radius::finite(best);
}

bool tuple_allowed(const FinitePointSpace& space, const std::vector<int>& tuple,
                   const Radius& eps) {
  if (eps.infinite) return true;
  Radius r = tuple_support_radius(space, tuple);
  if (!radius_le(r, eps)) return false;
  if (space.has_simplices() && tuple.size() > 1)
    return space.tuple_in_some_simplex(tuple);
  return true;
}

// ---------------------------------------------------------------------------
// Simplicial cohomology oracle
// ---------------------------------------------------------------------------

std::vector<int> simplicial_cohomology_ranks(const FinitePointSpace& space,
                                             int max_degree) {
  require(max_degree >= 0, "max_degree must be nonnegative");
  require(space.has_simplices(),
          "cohomology oracle needs a simplicial structure");

  // Full face lattice, grouped by dimension.  Maximal simplices are tiny
  // (edges/triangles/tetrahedra) so subset enumeration is cheap.
  std::vector<std::set<std::vector<int>>> faces(size_t(max_degree) + 2);
  for (const auto& simplex : space.maximal_simplices) {
    int m = int(simplex.size());
    for (unsigned mask = 1; mask < (1u << m); ++mask) {
      std::vector<int> face;
      for (int b = 0; b < m; ++b)
        if (mask & (1u << b)) face.push_back(simplex[b]);
      int dim = int(face.size()) - 1;
      if (dim <= max_degree + 1) faces[dim].insert(std::move(face));
    }
  }

  std::vector<std::map<std::vector<int>, int>> index(faces.size());
  for (size_t d = 0; d < faces.size(); ++d) {
    int pos = 0;
    for (const auto& face : faces[d]) index[d][face] = pos++;
  }

  // rank of the boundary map C_d -> C_{d-1}
  auto boundary_rank = [&](int d) -> int {
    if (d <= 0 || faces[d].empty()) return 0;
    Mat<Rat> bmat = Mat<Rat>::zero(int(faces[d - 1].size()),
                                   int(faces[d].size()));
    for (const auto& [face, col] : index[d]) {
      for (size_t drop = 0; drop < face.size(); ++drop) {
        std::vector<int> sub;
        for (size_t t = 0; t < face.size(); ++t)
          if (t != drop) sub.push_back(face[t]);
        int row = index[d - 1].at(sub);
        Rat sign = (drop % 2 == 0) ? Rat(1) : Rat(-1);
        bmat.at(row, col) = bmat.at(row, col) + sign;
      }
    }
    return bmat.rank_exact();
  };

  std::vector<int> ranks;
  for (int q = 0; q <= max_degree; ++q) {
    int dim_q = int(faces[q].size());
    int betti = dim_q - boundary_rank(q) - boundary_rank(q + 1);
    ranks.push_back(betti);
  }
  return ranks;
}

}  // namespace locind
