#include "smlab/cantor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "smlab/error.hpp"

namespace smlab::cantor {

namespace {

void require_depth(int depth, int max_depth) {
  if (depth < 0) fail(ErrorCode::ConfigInvalid, "depth must be >= 0");
  if (depth > max_depth) fail(ErrorCode::DepthTooLarge, "depth " + std::to_string(depth) + " exceeds " + std::to_string(max_depth));
}

/// Smallest j >= 0 with x, y disagreeing at +j or -j; -1 if equal.
int first_difference(Point x, Point y, int depth) {
  for (int j = 0; j <= depth; ++j)
    if (coordinate(x, j, depth) != coordinate(y, j, depth) || coordinate(x, -j, depth) != coordinate(y, -j, depth))
      return j;
  return -1;
}

std::uint32_t middle_bits(Point x, int half, int depth) {
  if (half < 0) return 0;
  return (x >> (depth - half)) & ((1u << (2 * half + 1)) - 1u);
}

bool is_choice_pair(const CantorWord& w, Point x, Point y, int depth) {
  if (middle_bits(x, w.half, depth) != w.bits || middle_bits(y, w.half, depth) != w.bits) return false;
  return first_difference(x, y, depth) == w.half + 1;
}

Point embed_word(const CantorWord& w, int depth) {
  return w.half < 0 ? 0u : static_cast<Point>(w.bits) << (depth - w.half);
}

}  // namespace

int num_points(int depth) {
  require_depth(depth, kMaxDepth);
  return 1 << (2 * depth + 1);
}

int coordinate(Point x, int c, int depth) {
  if (c < -depth || c > depth) fail(ErrorCode::OutOfWindow, "coordinate outside the window");
  return static_cast<int>((x >> (c + depth)) & 1u);
}

Point with_coordinate(Point x, int c, int v, int depth) {
  if (c < -depth || c > depth) fail(ErrorCode::OutOfWindow, "coordinate outside the window");
  const Point bit = 1u << (c + depth);
  return v ? (x | bit) : (x & ~bit);
}

std::vector<CantorWord> enumerate_words(int depth) {
  require_depth(depth, kMaxDepth);
  std::vector<CantorWord> out{CantorWord{}};
  for (int h = 0; h < depth; ++h)
    for (std::uint32_t b = 0; b < (1u << (2 * h + 1)); ++b) out.push_back({h, b});
  return out;
}

double ultrametric(Point x, Point y, int depth) {
  const int j = first_difference(x, y, depth);
  if (j < 0) return 0.0;
  if (j == 0) return 1.0;
  return std::ldexp(1.0, -(2 * j - 1));
}

void ChoiceMap::check() const {
  for (const auto& e : entries) {
    if (!is_choice_pair(e.word, e.x, e.y, depth)) fail(ErrorCode::ConfigInvalid, "choice pair does not extend its word");
    if (ultrametric(e.x, e.y, depth) != std::ldexp(1.0, -e.word.length()))
      fail(ErrorCode::ConfigInvalid, "choice pair at the wrong distance");
  }
}

ChoiceMap canonical_choice(int depth) {
  ChoiceMap tau{depth, {}};
  for (const auto& w : enumerate_words(depth)) {
    const Point x = embed_word(w, depth);
    tau.entries.push_back({w, x, with_coordinate(x, w.half + 1, 1, depth)});
  }
  return tau;
}

ChoiceMap random_choice(int depth, Rng& rng) {
  ChoiceMap tau{depth, {}};
  for (const auto& w : enumerate_words(depth)) {
    const int edge = w.half + 1;
    Point x = embed_word(w, depth);
    for (int c = -depth; c <= depth; ++c)
      if (std::abs(c) >= edge) x = with_coordinate(x, c, static_cast<int>(rng.uniform_int(0, 1)), depth);
    Point y = x;
    for (int c = -depth; c <= depth; ++c)
      if (std::abs(c) > edge && rng.uniform_int(0, 1)) y = with_coordinate(y, c, 1 - coordinate(y, c, depth), depth);
    // at least one of the two edge coordinates must flip
    const int side = edge == 0 ? 0 : static_cast<int>(rng.uniform_int(0, 2));
    if (side != 2) y = with_coordinate(y, edge, 1 - coordinate(y, edge, depth), depth);
    if (side != 1 && edge != 0) y = with_coordinate(y, -edge, 1 - coordinate(y, -edge, depth), depth);
    tau.entries.push_back({w, x, y});
  }
  tau.check();
  return tau;
}

CylinderFn coordinate_function(int j, int depth) {
  CylinderFn f{depth, std::vector<double>(static_cast<size_t>(num_points(depth)))};
  for (Point x = 0; x < f.table.size(); ++x) f.table[x] = coordinate(x, j, depth);
  return f;
}

CylinderFn random_cylinder(int depth, Rng& rng) {
  CylinderFn f{depth, std::vector<double>(static_cast<size_t>(num_points(depth)))};
  for (auto& v : f.table) v = rng.uniform(-1.0, 1.0);
  return f;
}

double cantor_commutator_norm(const CylinderFn& f, const ChoiceMap& tau) {
  if (f.depth != tau.depth) fail(ErrorCode::ShapeMismatch, "function and choice map have different depths");
  double best = 0.0;
  for (const auto& e : tau.entries)
    best = std::max(best, std::ldexp(std::abs(f(e.x) - f(e.y)), e.word.length()));
  return best;
}

double cantor_seminorm(const CylinderFn& f) {
  const int np = num_points(f.depth);
  double best = 0.0;
  for (Point x = 0; x < static_cast<Point>(np); ++x)
    for (Point y = x + 1; y < static_cast<Point>(np); ++y) {
      const int j = first_difference(x, y, f.depth);
      const int len = j == 0 ? 0 : 2 * j - 1;
      best = std::max(best, std::ldexp(std::abs(f(x) - f(y)), len));
    }
  return best;
}

std::vector<double> connes_sup_table(int depth) {
  require_depth(depth, kMaxExhaustiveDepth);
  const int np = num_points(depth);
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(static_cast<size_t>(np) * np, inf);
  auto at = [&](int a, int b) -> double& { return dist[static_cast<size_t>(a) * np + b]; };
  for (int a = 0; a < np; ++a) at(a, a) = 0.0;
  // Each admissible pair (x_w, y_w) yields |f(x_w) - f(y_w)| <= 2^-|w| for
  // some choice map, so the feasible set is cut out by these constraints.
  for (const auto& w : enumerate_words(depth)) {
    const double bound = std::ldexp(1.0, -w.length());
    for (int a = 0; a < np; ++a) {
      if (middle_bits(static_cast<Point>(a), w.half, depth) != w.bits) continue;
      for (int b = 0; b < np; ++b) {
        if (a == b || !is_choice_pair(w, static_cast<Point>(a), static_cast<Point>(b), depth)) continue;
        at(a, b) = std::min(at(a, b), bound);
      }
    }
  }
  for (int k = 0; k < np; ++k)
    for (int a = 0; a < np; ++a) {
      const double ak = at(a, k);
      if (ak == inf) continue;
      for (int b = 0; b < np; ++b) at(a, b) = std::min(at(a, b), ak + at(k, b));
    }
  return dist;
}

double connes_sup_over_choices(Point x, Point y, int depth) {
  require_depth(depth, kMaxExhaustiveDepth);
  const int np = num_points(depth);
  if (x >= static_cast<Point>(np) || y >= static_cast<Point>(np)) fail(ErrorCode::OutOfWindow, "point outside the window");
  // f = dist(y, .) is feasible and attains the bound on f(x) - f(y).
  return connes_sup_table(depth)[static_cast<size_t>(y) * np + x];
}

CylinderFn shift_cylinder(const CylinderFn& f, int k) {
  const int depth = f.depth;
  const int np = num_points(depth);
  // f must not depend on coordinates c with c + k outside the window
  for (int c = -depth; c <= depth; ++c) {
    if (c + k >= -depth && c + k <= depth) continue;
    for (Point z = 0; z < static_cast<Point>(np); ++z)
      if (f(z) != f(with_coordinate(z, c, 1 - coordinate(z, c, depth), depth)))
        fail(ErrorCode::OutOfWindow, "shift moves a dependence coordinate outside the window");
  }
  CylinderFn g{depth, std::vector<double>(static_cast<size_t>(np))};
  for (Point x = 0; x < static_cast<Point>(np); ++x) {
    Point z = 0;
    for (int c = -depth; c <= depth; ++c)
      if (c + k >= -depth && c + k <= depth) z = with_coordinate(z, c, coordinate(x, c + k, depth), depth);
    g.table[x] = f(z);
  }
  return g;
}

}  // namespace smlab::cantor
