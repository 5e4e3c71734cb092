#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "roughtopo/rational.hpp"

namespace roughtopo {

/// One block of a RationalPartition: either the point {lo} or the open interval (lo, hi).
struct IntervalBlock {
    Rational lo;
    Rational hi;
    bool point = true;

    [[nodiscard]] std::string format() const
    {
        if (point) {
            return "{" + to_string(lo) + "}";
        }
        return "(" + to_string(lo) + "," + to_string(hi) + ")";
    }

    bool operator==(const IntervalBlock&) const = default;
};

/// Partition of [c0, cn] into {c0}, (c0,c1), {c1}, ..., {cn}.
/// Block 2k is the cut c_k, block 2k+1 the gap (c_k, c_{k+1}).
class RationalPartition {
public:
    explicit RationalPartition(std::vector<Rational> cuts) : cuts_(std::move(cuts))
    {
        if (cuts_.empty()) {
            throw PreconditionError("partition needs at least one cut");
        }
        for (std::size_t i = 1; i < cuts_.size(); ++i) {
            if (!(cuts_[i - 1] < cuts_[i])) {
                throw PreconditionError("cuts must be strictly increasing (" + to_string(cuts_[i - 1]) + " then "
                                        + to_string(cuts_[i]) + ")");
            }
        }
        if (cuts_.front() > 0) {
            throw PreconditionError("first cut must be at most 0");
        }
    }

    [[nodiscard]] const std::vector<Rational>& cuts() const { return cuts_; }
    [[nodiscard]] std::size_t block_count() const { return 2 * cuts_.size() - 1; }
    [[nodiscard]] const Rational& min() const { return cuts_.front(); }
    [[nodiscard]] const Rational& max() const { return cuts_.back(); }

    [[nodiscard]] IntervalBlock block(std::size_t i) const
    {
        if (i >= block_count()) {
            throw PreconditionError("block index out of range");
        }
        if (i % 2 == 0) {
            return {cuts_[i / 2], cuts_[i / 2], true};
        }
        return {cuts_[i / 2], cuts_[i / 2 + 1], false};
    }

    [[nodiscard]] bool is_cut(const Rational& x) const
    {
        return std::binary_search(cuts_.begin(), cuts_.end(), x);
    }

private:
    std::vector<Rational> cuts_;
};

/// Cuts 0, 1, ..., n.
inline RationalPartition build_partition_integer(std::int64_t n)
{
    if (n < 1) {
        throw PreconditionError("integer partition needs n >= 1");
    }
    std::vector<Rational> cuts;
    for (std::int64_t i = 0; i <= n; ++i) {
        cuts.emplace_back(i);
    }
    return RationalPartition(std::move(cuts));
}

/// Cuts as given, with 0 inserted when absent.
inline RationalPartition build_partition_sequence(std::vector<Rational> cuts)
{
    for (std::size_t i = 1; i < cuts.size(); ++i) {
        if (!(cuts[i - 1] < cuts[i])) {
            throw PreconditionError("sequence is not strictly increasing at " + to_string(cuts[i]));
        }
    }
    if (!std::binary_search(cuts.begin(), cuts.end(), Rational(0))) {
        cuts.insert(std::lower_bound(cuts.begin(), cuts.end(), Rational(0)), Rational(0));
    }
    return RationalPartition(std::move(cuts));
}

/// Block indices, ascending.
using BlockSet = std::vector<std::size_t>;

struct IntervalApproximation {
    BlockSet lower;
    BlockSet upper;
};

/// Approximations of the target [0, x] by the partition blocks.
inline IntervalApproximation interval_approximations(const RationalPartition& p, const Rational& x)
{
    if (x < p.min() || x > p.max()) {
        throw PreconditionError(to_string(x) + " is outside [" + to_string(p.min()) + ", " + to_string(p.max()) + "]");
    }
    IntervalApproximation r;
    if (x < 0) {
        return r;  // [0, x] is empty
    }
    for (std::size_t i = 0; i < p.block_count(); ++i) {
        const auto b = p.block(i);
        bool inside = false;
        bool meets = false;
        if (b.point) {
            inside = meets = b.lo >= 0 && b.lo <= x;
        } else {
            inside = b.lo >= 0 && b.hi <= x;
            meets = b.lo < x && b.hi > 0;
        }
        if (inside) {
            r.lower.push_back(i);
        }
        if (meets) {
            r.upper.push_back(i);
        }
    }
    return r;
}

enum class NumberKind { rough, exact };

inline std::string_view to_string(NumberKind k) { return k == NumberKind::rough ? "rough" : "exact"; }

struct NumberVerdict {
    Rational value;
    BlockSet lower;
    BlockSet upper;
    NumberKind verdict = NumberKind::exact;
};

inline NumberVerdict classify_number(const RationalPartition& p, const Rational& x)
{
    auto a = interval_approximations(p, x);
    const auto kind = a.lower == a.upper ? NumberKind::exact : NumberKind::rough;
    return {x, std::move(a.lower), std::move(a.upper), kind};
}

}  // namespace roughtopo
