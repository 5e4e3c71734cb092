#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace roughtopo {

/// Largest universe a SubsetMask can hold (one machine word).
inline constexpr std::size_t kMaxUniverse = 64;
/// Default cap for operations that enumerate a powerset.
inline constexpr std::size_t kMaxScan = 16;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A universe (or product universe) exceeds a size cap.
class CapacityError : public Error {
public:
    using Error::Error;
};

/// An operation was called with arguments outside its domain.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Effective powerset-scan cap. ROUGHTOPO_MAX_UNIVERSE may lower it, never raise it.
inline std::size_t scan_cap()
{
    std::size_t cap = kMaxScan;
    if (const char* env = std::getenv("ROUGHTOPO_MAX_UNIVERSE")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v < cap) {
            cap = v;
        }
    }
    return cap;
}

inline void require_scan(std::size_t n, std::string_view what)
{
    if (n > scan_cap()) {
        throw CapacityError(std::string(what) + ": universe of size " + std::to_string(n)
                            + " exceeds the powerset-scan cap of " + std::to_string(scan_cap()));
    }
}

/// A subset of a universe of `width` elements, stored as a bit-vector.
/// Bit i is element i. Only the low `width` bits may be set.
class SubsetMask {
public:
    using Bits = std::uint64_t;

    constexpr SubsetMask() = default;

    constexpr SubsetMask(Bits bits, std::size_t width)
        : bits_(bits), width_(static_cast<std::uint8_t>(width))
    {
        if (width > kMaxUniverse) {
            throw CapacityError("subset width exceeds 64");
        }
        if ((bits & ~full_bits(width)) != 0) {
            throw PreconditionError("subset has bits outside its universe");
        }
    }

    static constexpr SubsetMask empty(std::size_t width) { return {0, width}; }
    static constexpr SubsetMask full(std::size_t width) { return {full_bits(width), width}; }
    static constexpr SubsetMask singleton(std::size_t i, std::size_t width)
    {
        if (i >= width) {
            throw PreconditionError("element index outside universe");
        }
        return {Bits{1} << i, width};
    }

    static constexpr Bits full_bits(std::size_t width)
    {
        return width >= 64 ? ~Bits{0} : ((Bits{1} << width) - 1);
    }

    [[nodiscard]] constexpr Bits bits() const { return bits_; }
    [[nodiscard]] constexpr std::size_t width() const { return width_; }
    [[nodiscard]] constexpr std::size_t count() const { return static_cast<std::size_t>(std::popcount(bits_)); }
    [[nodiscard]] constexpr bool is_empty() const { return bits_ == 0; }
    [[nodiscard]] constexpr bool is_full() const { return bits_ == full_bits(width_); }
    [[nodiscard]] constexpr bool contains(std::size_t i) const { return i < width_ && ((bits_ >> i) & 1U) != 0; }

    [[nodiscard]] constexpr bool subset_of(SubsetMask o) const
    {
        same_universe(o);
        return (bits_ & ~o.bits_) == 0;
    }
    [[nodiscard]] constexpr bool meets(SubsetMask o) const
    {
        same_universe(o);
        return (bits_ & o.bits_) != 0;
    }

    [[nodiscard]] constexpr SubsetMask complement() const { return {~bits_ & full_bits(width_), width_}; }

    constexpr SubsetMask operator|(SubsetMask o) const { same_universe(o); return {bits_ | o.bits_, width_}; }
    constexpr SubsetMask operator&(SubsetMask o) const { same_universe(o); return {bits_ & o.bits_, width_}; }
    constexpr SubsetMask operator-(SubsetMask o) const { same_universe(o); return {bits_ & ~o.bits_, width_}; }
    constexpr SubsetMask& operator|=(SubsetMask o) { return *this = *this | o; }
    constexpr SubsetMask& operator&=(SubsetMask o) { return *this = *this & o; }

    constexpr bool operator==(const SubsetMask&) const = default;
    constexpr auto operator<=>(const SubsetMask& o) const
    {
        if (auto c = width_ <=> o.width_; c != 0) {
            return c;
        }
        return bits_ <=> o.bits_;
    }

    /// Element indices in ascending order.
    [[nodiscard]] std::vector<std::size_t> elements() const
    {
        std::vector<std::size_t> out;
        out.reserve(count());
        for (Bits b = bits_; b != 0; b &= b - 1) {
            out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
        }
        return out;
    }

private:
    constexpr void same_universe(SubsetMask o) const
    {
        if (o.width_ != width_) {
            throw PreconditionError("subsets belong to different universes");
        }
    }

    Bits bits_ = 0;
    std::uint8_t width_ = 0;
};

/// Calls fn(s) for every s ⊆ mask, in ascending bit-vector order.
template <class Fn>
void for_each_subset(SubsetMask mask, Fn&& fn)
{
    const auto m = mask.bits();
    SubsetMask::Bits s = 0;
    do {
        fn(SubsetMask(s, mask.width()));
        s = (s - m) & m;
    } while (s != 0);
}

/// Finite ordered list of distinct element names.
class Universe {
public:
    Universe() = default;

    explicit Universe(std::vector<std::string> labels) : labels_(std::move(labels))
    {
        if (labels_.size() > kMaxUniverse) {
            throw CapacityError("universe has " + std::to_string(labels_.size())
                                + " elements; at most 64 are supported");
        }
        for (std::size_t i = 0; i < labels_.size(); ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                if (labels_[i] == labels_[j]) {
                    throw PreconditionError("duplicate universe label '" + labels_[i] + "'");
                }
            }
        }
    }

    /// Universe with labels "0", "1", ..., "n-1".
    static Universe indexed(std::size_t n)
    {
        std::vector<std::string> labels;
        labels.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            labels.push_back(std::to_string(i));
        }
        return Universe(std::move(labels));
    }

    [[nodiscard]] std::size_t size() const { return labels_.size(); }
    [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }
    [[nodiscard]] const std::string& label(std::size_t i) const { return labels_.at(i); }

    [[nodiscard]] std::optional<std::size_t> find(std::string_view label) const
    {
        for (std::size_t i = 0; i < labels_.size(); ++i) {
            if (labels_[i] == label) {
                return i;
            }
        }
        return std::nullopt;
    }

    [[nodiscard]] std::size_t index(std::string_view label) const
    {
        if (auto i = find(label)) {
            return *i;
        }
        throw PreconditionError("'" + std::string(label) + "' is not an element of the universe");
    }

    [[nodiscard]] SubsetMask empty_set() const { return SubsetMask::empty(size()); }
    [[nodiscard]] SubsetMask full_set() const { return SubsetMask::full(size()); }
    [[nodiscard]] SubsetMask singleton(std::size_t i) const { return SubsetMask::singleton(i, size()); }
    [[nodiscard]] SubsetMask singleton(std::string_view label) const { return singleton(index(label)); }

    template <class Range>
    [[nodiscard]] SubsetMask subset(const Range& labels) const
    {
        SubsetMask m = empty_set();
        for (const auto& l : labels) {
            m |= singleton(std::string_view(l));
        }
        return m;
    }
    [[nodiscard]] SubsetMask subset(std::initializer_list<std::string_view> labels) const
    {
        SubsetMask m = empty_set();
        for (auto l : labels) {
            m |= singleton(l);
        }
        return m;
    }

    [[nodiscard]] std::vector<std::string> labels_of(SubsetMask m) const
    {
        check(m);
        std::vector<std::string> out;
        for (auto i : m.elements()) {
            out.push_back(labels_[i]);
        }
        return out;
    }

    /// "{a,b}" rendering, used in diagnostics.
    [[nodiscard]] std::string format(SubsetMask m) const
    {
        std::string s = "{";
        bool first = true;
        for (const auto& l : labels_of(m)) {
            if (!first) {
                s += ',';
            }
            s += l;
            first = false;
        }
        return s + "}";
    }

    void check(SubsetMask m) const
    {
        if (m.width() != size()) {
            throw PreconditionError("subset is over a universe of size " + std::to_string(m.width())
                                    + ", expected " + std::to_string(size()));
        }
    }

    bool operator==(const Universe&) const = default;

private:
    std::vector<std::string> labels_;
};

/// Canonically ordered (ascending bit-vector) family of distinct subsets of one universe.
class SetFamily {
public:
    SetFamily() = default;
    explicit SetFamily(std::size_t width) : width_(width) {}

    SetFamily(std::size_t width, std::vector<SubsetMask> members) : width_(width), members_(std::move(members))
    {
        for (const auto& m : members_) {
            if (m.width() != width_) {
                throw PreconditionError("family member over a different universe");
            }
        }
        std::sort(members_.begin(), members_.end());
        members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    }

    [[nodiscard]] std::size_t width() const { return width_; }
    [[nodiscard]] std::size_t size() const { return members_.size(); }
    [[nodiscard]] bool empty() const { return members_.empty(); }
    [[nodiscard]] const std::vector<SubsetMask>& members() const { return members_; }
    [[nodiscard]] auto begin() const { return members_.begin(); }
    [[nodiscard]] auto end() const { return members_.end(); }
    [[nodiscard]] const SubsetMask& operator[](std::size_t i) const { return members_[i]; }

    [[nodiscard]] bool contains(SubsetMask m) const
    {
        return std::binary_search(members_.begin(), members_.end(), m);
    }

    void insert(SubsetMask m)
    {
        if (m.width() != width_) {
            throw PreconditionError("family member over a different universe");
        }
        auto it = std::lower_bound(members_.begin(), members_.end(), m);
        if (it == members_.end() || *it != m) {
            members_.insert(it, m);
        }
    }

    /// {U − A : A ∈ family}.
    [[nodiscard]] SetFamily complements() const
    {
        std::vector<SubsetMask> out;
        out.reserve(members_.size());
        for (const auto& m : members_) {
            out.push_back(m.complement());
        }
        return {width_, std::move(out)};
    }

    /// True when every member of this family is in `o`.
    [[nodiscard]] bool subfamily_of(const SetFamily& o) const
    {
        return std::includes(o.members_.begin(), o.members_.end(), members_.begin(), members_.end());
    }

    bool operator==(const SetFamily&) const = default;

private:
    std::size_t width_ = 0;
    std::vector<SubsetMask> members_;
};

/// Closure of `seeds` under pairwise union; ∅ is not added unless present.
inline SetFamily union_closure(const SetFamily& seeds)
{
    std::vector<SubsetMask> acc;
    for (const auto& s : seeds) {
        const std::size_t n = acc.size();
        for (std::size_t i = 0; i < n; ++i) {
            acc.push_back(acc[i] | s);
        }
        acc.push_back(s);
        std::sort(acc.begin(), acc.end());
        acc.erase(std::unique(acc.begin(), acc.end()), acc.end());
    }
    return {seeds.width(), std::move(acc)};
}

/// Closure of `seeds` under pairwise intersection.
inline SetFamily intersection_closure(const SetFamily& seeds)
{
    std::vector<SubsetMask> acc;
    for (const auto& s : seeds) {
        const std::size_t n = acc.size();
        for (std::size_t i = 0; i < n; ++i) {
            acc.push_back(acc[i] & s);
        }
        acc.push_back(s);
        std::sort(acc.begin(), acc.end());
        acc.erase(std::unique(acc.begin(), acc.end()), acc.end());
    }
    return {seeds.width(), std::move(acc)};
}

/// Every subset of a universe of size n, ascending.
inline SetFamily powerset(std::size_t n)
{
    require_scan(n, "powerset");
    std::vector<SubsetMask> out;
    out.reserve(std::size_t{1} << n);
    for (SubsetMask::Bits b = 0; b < (SubsetMask::Bits{1} << n); ++b) {
        out.emplace_back(b, n);
    }
    return {n, std::move(out)};
}

/// All subsets A of an n-element universe with pred(A), ascending.
template <class Pred>
SetFamily scan_subsets(std::size_t n, Pred&& pred)
{
    require_scan(n, "powerset scan");
    std::vector<SubsetMask> out;
    for (SubsetMask::Bits b = 0; b < (SubsetMask::Bits{1} << n); ++b) {
        const SubsetMask a(b, n);
        if (pred(a)) {
            out.push_back(a);
        }
    }
    return {n, std::move(out)};
}

}  // namespace roughtopo
