#pragma once

#include <array>
#include <set>
#include <vector>

namespace qnk {

/// Arc counts on the boundary of one tet. corner[f][k] counts the arcs in face f
/// (opposite vertex f) cutting off the k-th remaining vertex in increasing order.
struct NormalCurveCounts {
  std::array<std::array<int, 3>, 4> corner{};
  int length() const;
};

/// Edge weights agree from both sides.
bool satisfies_matching(const NormalCurveCounts& c);
/// Number of closed curves realized by the nested arcs.
int curve_components(const NormalCurveCounts& c);

/// Lengths of connected closed normal curves with at most max_len arcs, found by
/// exhaustive search over arc-count vectors. max_len <= 20.
std::set<int> enumerate_normal_curve_lengths(int max_len);

/// All connected curves of exactly the given length.
std::vector<NormalCurveCounts> connected_normal_curves(int length);

}  // namespace qnk
