#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "flowfoot/errors.hpp"

namespace flowfoot {

enum class MonoidTag { Counting, Keyset, MaxCap };

const char* tag_name(MonoidTag tag);

/// True when m + m = m holds for every value of the monoid.
bool tag_idempotent(MonoidTag tag);

// ---------------------------------------------------------------------------
// Extended naturals, N ∪ {∞}. Carrier of the Counting and MaxCap monoids.
// ---------------------------------------------------------------------------

class ExtNat {
public:
    static constexpr std::uint64_t kInfRaw = ~std::uint64_t{0};

    constexpr ExtNat() : raw_(0) {}
    constexpr explicit ExtNat(std::uint64_t v) : raw_(v) {}
    static constexpr ExtNat inf() { return ExtNat(kInfRaw); }

    constexpr bool is_inf() const { return raw_ == kInfRaw; }
    constexpr bool is_zero() const { return raw_ == 0; }
    std::uint64_t finite() const;  // throws if infinite
    constexpr std::uint64_t raw() const { return raw_; }

    friend constexpr bool operator==(ExtNat a, ExtNat b) { return a.raw_ == b.raw_; }
    friend constexpr bool operator!=(ExtNat a, ExtNat b) { return a.raw_ != b.raw_; }
    friend constexpr bool operator<(ExtNat a, ExtNat b) {
        if (a.is_inf()) return false;
        if (b.is_inf()) return true;
        return a.raw_ < b.raw_;
    }
    friend constexpr bool operator<=(ExtNat a, ExtNat b) { return a == b || a < b; }

    ExtNat plus(ExtNat o) const;       // ∞ absorbing, saturating
    ExtNat times(ExtNat o) const;      // 0·∞ = 0
    ExtNat max_with(ExtNat o) const { return *this < o ? o : *this; }
    ExtNat min_with(ExtNat o) const { return *this < o ? *this : o; }

    std::string str() const;

private:
    std::uint64_t raw_;
};

// ---------------------------------------------------------------------------
// Interval sets over the ordered carrier Z ∪ {-∞, +∞}. Carrier of the
// Keyset monoid.
//
// A Bound is a position on that order, extended with the two virtual limit
// points LowInt (just above -∞, below every integer) and HighInt (just below
// +∞, above every integer). The virtual points are not carrier elements; they
// only serve as interval endpoints, e.g. [LowInt, HighInt] denotes exactly Z.
// ---------------------------------------------------------------------------

enum class BoundKind : std::int8_t {
    NegInf = -2,
    LowInt = -1,
    Int = 0,
    HighInt = 1,
    PosInf = 2,
};

struct Bound {
    BoundKind kind = BoundKind::Int;
    std::int64_t k = 0;  // only meaningful for BoundKind::Int

    static Bound neg_inf() { return {BoundKind::NegInf, 0}; }
    static Bound low_int() { return {BoundKind::LowInt, 0}; }
    static Bound at(std::int64_t v) { return {BoundKind::Int, v}; }
    static Bound high_int() { return {BoundKind::HighInt, 0}; }
    static Bound pos_inf() { return {BoundKind::PosInf, 0}; }

    bool is_element() const { return kind != BoundKind::LowInt && kind != BoundKind::HighInt; }

    friend bool operator==(const Bound& a, const Bound& b) {
        return a.kind == b.kind && (a.kind != BoundKind::Int || a.k == b.k);
    }
    friend bool operator!=(const Bound& a, const Bound& b) { return !(a == b); }
    friend bool operator<(const Bound& a, const Bound& b) {
        if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
        return a.kind == BoundKind::Int && a.k < b.k;
    }
    friend bool operator<=(const Bound& a, const Bound& b) { return a == b || a < b; }

    std::string str() const;
};

struct Interval {
    Bound lo;
    Bound hi;

    friend bool operator==(const Interval& a, const Interval& b) {
        return a.lo == b.lo && a.hi == b.hi;
    }
};

/// Canonical set of carrier elements: sorted, disjoint, maximal closed
/// intervals. Two equal sets always have identical representations.
class IntervalSet {
public:
    IntervalSet() = default;

    static IntervalSet empty() { return IntervalSet(); }
    static IntervalSet all();                   // the whole carrier
    static IntervalSet integers();              // Z, both infinities excluded
    static IntervalSet all_except_neg_inf();    // λ_{-∞}'s parameter
    static IntervalSet above(std::int64_t k);   // (k, +∞], i.e. λ_k's parameter
    static IntervalSet closed(Bound lo, Bound hi);
    static IntervalSet singleton(Bound element);
    static IntervalSet from_intervals(std::vector<Interval> ivs);

    bool is_empty() const { return ivs_.empty(); }
    bool contains(Bound element) const;
    const std::vector<Interval>& intervals() const { return ivs_; }

    IntervalSet unite(const IntervalSet& o) const;
    IntervalSet intersect(const IntervalSet& o) const;
    bool subset_of(const IntervalSet& o) const;

    friend bool operator==(const IntervalSet& a, const IntervalSet& b) {
        return a.ivs_ == b.ivs_;
    }
    friend bool operator!=(const IntervalSet& a, const IntervalSet& b) { return !(a == b); }

    /// Explicit members among `universe` (used by the oracle).
    std::vector<Bound> members_in(const std::vector<Bound>& universe) const;

    std::string str() const;

private:
    void normalize();
    std::vector<Interval> ivs_;
};

// ---------------------------------------------------------------------------
// Flow values and the symbolic edge-function algebra.
// ---------------------------------------------------------------------------

struct FlowValue {
    MonoidTag tag = MonoidTag::Counting;
    ExtNat num;       // Counting / MaxCap payload
    IntervalSet set;  // Keyset payload

    static FlowValue counting(ExtNat n) { return {MonoidTag::Counting, n, {}}; }
    static FlowValue counting(std::uint64_t n) { return counting(ExtNat(n)); }
    static FlowValue keyset(IntervalSet s) { return {MonoidTag::Keyset, ExtNat(), std::move(s)}; }
    static FlowValue maxcap(ExtNat n) { return {MonoidTag::MaxCap, n, {}}; }
    static FlowValue maxcap(std::uint64_t n) { return maxcap(ExtNat(n)); }
    static FlowValue zero(MonoidTag tag) { return {tag, ExtNat(), {}}; }

    bool is_zero() const;

    friend bool operator==(const FlowValue& a, const FlowValue& b) {
        return a.tag == b.tag && a.num == b.num && a.set == b.set;
    }
    friend bool operator!=(const FlowValue& a, const FlowValue& b) { return !(a == b); }

    std::string str() const;
};

FlowValue mon_add(const FlowValue& a, const FlowValue& b);
bool mon_leq(const FlowValue& a, const FlowValue& b);

/// Symbolic edge function in canonical form. The form is determined by the
/// monoid: Counting uses Scale(k), Keyset uses Intersect(S), MaxCap uses
/// Cap(c). The family is closed under composition and pointwise sum.
struct EdgeFn {
    MonoidTag tag = MonoidTag::Counting;
    ExtNat param;     // Scale k / Cap c
    IntervalSet set;  // Intersect S

    static EdgeFn scale(ExtNat k) { return {MonoidTag::Counting, k, {}}; }
    static EdgeFn scale(std::uint64_t k) { return scale(ExtNat(k)); }
    static EdgeFn intersect(IntervalSet s) { return {MonoidTag::Keyset, ExtNat(), std::move(s)}; }
    static EdgeFn cap(ExtNat c) { return {MonoidTag::MaxCap, c, {}}; }
    static EdgeFn cap(std::uint64_t c) { return cap(ExtNat(c)); }

    static EdgeFn zero(MonoidTag tag);
    static EdgeFn identity(MonoidTag tag);
    /// λ_k of the keyset flow: keep keys strictly greater than k.
    static EdgeFn lambda_key(std::int64_t k) { return intersect(IntervalSet::above(k)); }
    /// λ_{-∞}: everything except -∞ passes.
    static EdgeFn lambda_neg_inf() { return intersect(IntervalSet::all_except_neg_inf()); }

    bool is_zero() const;
    bool is_identity() const;

    friend bool operator==(const EdgeFn& a, const EdgeFn& b) {
        return a.tag == b.tag && a.param == b.param && a.set == b.set;
    }
    friend bool operator!=(const EdgeFn& a, const EdgeFn& b) { return !(a == b); }

    std::string str() const;
};

struct FnClass {
    bool distributive = true;
    bool decreasing = false;
    bool idempotent_addition = false;
};

/// Derived exactly from the canonical form; never asserted by callers.
FnClass fn_class(const EdgeFn& f);

FlowValue fn_apply(const EdgeFn& f, const FlowValue& m);
/// Composition with f applied first: result(m) = g(f(m)).
EdgeFn fn_compose(const EdgeFn& f, const EdgeFn& g);
EdgeFn fn_sum(const EdgeFn& f, const EdgeFn& g);
/// Decides f(m) = g(m) for every m ≤ bound, in closed form.
bool fn_eq_below(const EdgeFn& f, const EdgeFn& g, const FlowValue& bound);
/// Pointwise f ≤ g, decided on canonical parameters.
bool fn_leq(const EdgeFn& f, const EdgeFn& g);

namespace detail {
void require_same_tag(MonoidTag a, MonoidTag b, const char* op);
}

}  // namespace flowfoot
