#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "qprep/words.hpp"

namespace qprep {

/// Reflected-binary (Gray) walk over all words of length m, plus the flip
/// schedule between consecutive words. Two descriptions of each flip are
/// kept:
///
///  * flip_positions[k-1] is the 1-based word character z_pos that changes
///    between words k-1 and k. This is what consumers that address qubits
///    by character position need.
///  * flip_masks / flip_indices describe the same flip on the word string
///    read as an m-digit binary numeral, leftmost character most
///    significant (the usual way such tables are printed): the mask is the
///    changed numeral bit, 1 << (m - pos), and the index counts that digit
///    from the least-significant end, m - pos + 1.
struct GrayPlan {
  int control_count = 0;                  // m
  std::vector<Word> words;                // 2^m words; words[k] has index k ^ (k >> 1)
  std::vector<std::uint64_t> gamma;       // word indices of the walk
  std::vector<std::uint64_t> flip_masks;  // 2^m - 1 entries, numeral frame
  std::vector<int> flip_indices;          // numeral digit positions, from the right
  std::vector<int> flip_positions;        // word character positions, from the left
  int closing_flip_position = 0;          // always m; pairs with the final ladder flip
};

inline GrayPlan gray_plan(int control_count) {
  if (control_count < 1 || control_count > 24)
    throw std::invalid_argument("control count must be in [1, 24]");
  const int m = control_count;
  const std::uint64_t count = std::uint64_t{1} << m;

  GrayPlan plan;
  plan.control_count = m;
  plan.words.reserve(count);
  plan.gamma.reserve(count);
  plan.flip_masks.reserve(count - 1);
  plan.flip_indices.reserve(count - 1);
  plan.flip_positions.reserve(count - 1);

  for (std::uint64_t k = 0; k < count; ++k) {
    const std::uint64_t g = k ^ (k >> 1);
    plan.gamma.push_back(g);
    plan.words.emplace_back(m, g);
    if (k == 0) continue;
    const std::uint64_t changed = g ^ plan.gamma[k - 1];  // exactly one bit
    const int pos = std::countr_zero(changed) + 1;
    plan.flip_positions.push_back(pos);
    plan.flip_masks.push_back(std::uint64_t{1} << (m - pos));
    plan.flip_indices.push_back(m - pos + 1);
  }
  // The walk ends one flip away from where it started; that flip (always
  // character m) closes the cycle.
  plan.closing_flip_position = std::countr_zero(plan.gamma.back() ^ plan.gamma.front()) + 1;
  return plan;
}

}  // namespace qprep
