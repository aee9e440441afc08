#ifndef CLM_STATS_HPP
#define CLM_STATS_HPP

#include <span>
#include <vector>

namespace clm {

/// sum |F - G| / sum (|F| + |G|); 0 when both sums vanish.
double smape(std::span<const double> f, std::span<const double> g);

/// 1-based ranks, ties receive the average of the ranks they span.
std::vector<double> average_ranks(std::span<const double> values);

/// Pearson correlation of average ranks. Throws DegenerateRanks for constant
/// input or fewer than two values.
double spearman(std::span<const double> a, std::span<const double> b);

}  // namespace clm

#endif  // CLM_STATS_HPP
