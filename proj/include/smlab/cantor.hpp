#pragma once

// The bilateral shift on {0,1}^Z restricted to coordinates -depth..depth.
// A point is a bitmask: bit (c + depth) holds coordinate c.

#include <cstdint>
#include <vector>

#include "smlab/rng.hpp"

namespace smlab::cantor {

using Point = std::uint32_t;

/// Largest depth accepted by the table-based routines.
inline constexpr int kMaxDepth = 5;
/// Largest depth for the exhaustive Connes supremum.
inline constexpr int kMaxExhaustiveDepth = 3;

int num_points(int depth);
int coordinate(Point x, int c, int depth);
Point with_coordinate(Point x, int c, int v, int depth);

/// Middle word on coordinates -half..half; half = -1 is the empty word.
struct CantorWord {
  int half = -1;
  std::uint32_t bits = 0;  // bit (c + half) holds coordinate c
  int length() const { return half < 0 ? 0 : 2 * half + 1; }
};

/// The empty word and every word of length 2h+1 for h < depth, i.e. every
/// word admitting a pair that first disagrees inside the window.
std::vector<CantorWord> enumerate_words(int depth);

/// 2^-|w| for the longest common middle word w; 1 if x and y differ at 0.
double ultrametric(Point x, Point y, int depth);

struct ChoiceEntry {
  CantorWord word;
  Point x = 0, y = 0;
};

/// One pair (x_w, y_w) per word; both extend w and first disagree just past it.
struct ChoiceMap {
  int depth = 0;
  std::vector<ChoiceEntry> entries;
  /// Throws ConfigInvalid unless every pair extends its word at distance 2^-|w|.
  void check() const;
};

/// Pads with zeros and flips the coordinate +(h+1).
ChoiceMap canonical_choice(int depth);
ChoiceMap random_choice(int depth, Rng& rng);

struct CylinderFn {
  int depth = 0;
  std::vector<double> table;  // f(x) = table[x]
  double operator()(Point x) const { return table.at(x); }
};

CylinderFn coordinate_function(int j, int depth);
CylinderFn random_cylinder(int depth, Rng& rng);

/// ||[D, pi_tau(f)]|| = sup_w 2^|w| |f(x_w) - f(y_w)|.
double cantor_commutator_norm(const CylinderFn& f, const ChoiceMap& tau);

/// sup over all choice maps of ||[D, pi_tau(f)]||, scanning every admissible pair.
double cantor_seminorm(const CylinderFn& f);

/// sup |f(x) - f(y)| over cylinder f with sup_tau ||[D, pi_tau(f)]|| <= 1.
/// Enumerates every choice pair as a difference constraint and solves the
/// resulting system by Floyd-Warshall.
double connes_sup_over_choices(Point x, Point y, int depth);

/// The same supremum for every pair at once: entry y * num_points + x.
std::vector<double> connes_sup_table(int depth);

/// g = f o S^-k, i.e. g(x) = f(z) with z_c = x_{c+k}. Throws OutOfWindow if f
/// depends on a coordinate that the shift moves outside the window.
CylinderFn shift_cylinder(const CylinderFn& f, int k);

}  // namespace smlab::cantor
