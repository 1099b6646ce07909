#include "flowfoot/monoid.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace flowfoot {

const char* tag_name(MonoidTag tag) {
    switch (tag) {
        case MonoidTag::Counting: return "counting";
        case MonoidTag::Keyset: return "keyset";
        case MonoidTag::MaxCap: return "maxcap";
    }
    return "?";
}

bool tag_idempotent(MonoidTag tag) { return tag != MonoidTag::Counting; }

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::TagMismatch: return "TagMismatch";
        case Errc::EdgeSourceOutside: return "EdgeSourceOutside";
        case Errc::InflowSourceInside: return "InflowSourceInside";
        case Errc::InflowTargetOutside: return "InflowTargetOutside";
        case Errc::NodeOutside: return "NodeOutside";
        case Errc::NonTermination: return "NonTermination";
        case Errc::NotAPath: return "NotAPath";
        case Errc::ExitNotBoundary: return "ExitNotBoundary";
        case Errc::CyclicGraph: return "CyclicGraph";
        case Errc::CyclicRestriction: return "CyclicRestriction";
        case Errc::RequiresIdempotent: return "RequiresIdempotent";
        case Errc::RequiresDecreasing: return "RequiresDecreasing";
        case Errc::NodeSetMismatch: return "NodeSetMismatch";
        case Errc::NoFootprintByDefinition: return "NoFootprintByDefinition";
        case Errc::OracleInfeasible: return "OracleInfeasible";
        case Errc::ParseError: return "ParseError";
        case Errc::PreconditionViolation: return "PreconditionViolation";
        case Errc::BadParams: return "BadParams";
    }
    return "?";
}

namespace detail {
void require_same_tag(MonoidTag a, MonoidTag b, const char* op) {
    if (a != b) {
        throw FlowError(Errc::TagMismatch,
                        std::string(op) + " over " + tag_name(a) + " and " + tag_name(b));
    }
}
}  // namespace detail

// --- ExtNat ----------------------------------------------------------------

std::uint64_t ExtNat::finite() const {
    if (is_inf()) throw FlowError(Errc::BadParams, "finite() on infinity");
    return raw_;
}

ExtNat ExtNat::plus(ExtNat o) const {
    if (is_inf() || o.is_inf()) return inf();
    std::uint64_t s = raw_ + o.raw_;
    if (s < raw_) return inf();  // saturate on overflow
    return ExtNat(s);
}

ExtNat ExtNat::times(ExtNat o) const {
    if (is_zero() || o.is_zero()) return ExtNat(0);
    if (is_inf() || o.is_inf()) return inf();
    if (raw_ > kInfRaw / o.raw_) return inf();
    return ExtNat(raw_ * o.raw_);
}

std::string ExtNat::str() const { return is_inf() ? "inf" : std::to_string(raw_); }

// --- Bound -----------------------------------------------------------------

std::string Bound::str() const {
    switch (kind) {
        case BoundKind::NegInf: return "-inf";
        case BoundKind::LowInt: return "-inf+";
        case BoundKind::Int: return std::to_string(k);
        case BoundKind::HighInt: return "inf-";
        case BoundKind::PosInf: return "inf";
    }
    return "?";
}

// --- IntervalSet -----------------------------------------------------------

namespace {

// True iff no carrier element lies strictly between hi and lo (hi < lo).
bool gap_empty(const Bound& hi, const Bound& lo) {
    switch (hi.kind) {
        case BoundKind::NegInf: return lo.kind == BoundKind::LowInt;
        case BoundKind::Int:
            return lo.kind == BoundKind::Int &&
                   hi.k != std::numeric_limits<std::int64_t>::max() && lo.k == hi.k + 1;
        case BoundKind::HighInt: return lo.kind == BoundKind::PosInf;
        default: return false;
    }
}

// Empty or degenerate interval check after lo/hi tightening.
bool interval_empty(const Interval& iv) {
    if (iv.hi < iv.lo) return true;
    if (iv.lo == iv.hi && !iv.lo.is_element()) return true;
    return false;
}

// Tighten virtual endpoints that cannot carry an element at the boundary:
// hi = LowInt means the interval reaches no integer, so it can contain at
// most -∞; lo = HighInt symmetrically.
Interval tighten(Interval iv) {
    if (iv.hi.kind == BoundKind::LowInt) iv.hi = Bound::neg_inf();
    if (iv.lo.kind == BoundKind::HighInt) iv.lo = Bound::pos_inf();
    return iv;
}

}  // namespace

IntervalSet IntervalSet::all() { return closed(Bound::neg_inf(), Bound::pos_inf()); }
IntervalSet IntervalSet::integers() { return closed(Bound::low_int(), Bound::high_int()); }
IntervalSet IntervalSet::all_except_neg_inf() {
    return closed(Bound::low_int(), Bound::pos_inf());
}
IntervalSet IntervalSet::above(std::int64_t k) {
    if (k == std::numeric_limits<std::int64_t>::max())
        return closed(Bound::pos_inf(), Bound::pos_inf());
    return closed(Bound::at(k + 1), Bound::pos_inf());
}
IntervalSet IntervalSet::closed(Bound lo, Bound hi) {
    return from_intervals({Interval{lo, hi}});
}
IntervalSet IntervalSet::singleton(Bound element) { return closed(element, element); }

IntervalSet IntervalSet::from_intervals(std::vector<Interval> ivs) {
    IntervalSet s;
    s.ivs_ = std::move(ivs);
    s.normalize();
    return s;
}

void IntervalSet::normalize() {
    std::vector<Interval> in;
    in.reserve(ivs_.size());
    for (const Interval& iv : ivs_) {
        Interval t = tighten(iv);
        if (!interval_empty(t)) in.push_back(t);
    }
    std::sort(in.begin(), in.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    ivs_.clear();
    for (const Interval& iv : in) {
        if (!ivs_.empty()) {
            Interval& last = ivs_.back();
            if (iv.lo <= last.hi || gap_empty(last.hi, iv.lo)) {
                if (last.hi < iv.hi) last.hi = iv.hi;
                continue;
            }
        }
        ivs_.push_back(iv);
    }
}

bool IntervalSet::contains(Bound element) const {
    for (const Interval& iv : ivs_) {
        if (iv.lo <= element && element <= iv.hi) return true;
        if (element < iv.lo) break;
    }
    return false;
}

IntervalSet IntervalSet::unite(const IntervalSet& o) const {
    std::vector<Interval> merged = ivs_;
    merged.insert(merged.end(), o.ivs_.begin(), o.ivs_.end());
    return from_intervals(std::move(merged));
}

IntervalSet IntervalSet::intersect(const IntervalSet& o) const {
    std::vector<Interval> out;
    std::size_t i = 0, j = 0;
    while (i < ivs_.size() && j < o.ivs_.size()) {
        const Interval& a = ivs_[i];
        const Interval& b = o.ivs_[j];
        Interval c{std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
        c = tighten(c);
        if (!interval_empty(c)) out.push_back(c);
        if (a.hi < b.hi)
            ++i;
        else
            ++j;
    }
    return from_intervals(std::move(out));
}

bool IntervalSet::subset_of(const IntervalSet& o) const { return intersect(o) == *this; }

std::vector<Bound> IntervalSet::members_in(const std::vector<Bound>& universe) const {
    std::vector<Bound> out;
    for (const Bound& e : universe)
        if (contains(e)) out.push_back(e);
    return out;
}

std::string IntervalSet::str() const {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < ivs_.size(); ++i) {
        if (i) os << ", ";
        os << "[" << ivs_[i].lo.str() << ", " << ivs_[i].hi.str() << "]";
    }
    os << "}";
    return os.str();
}

// --- FlowValue -------------------------------------------------------------

bool FlowValue::is_zero() const {
    return tag == MonoidTag::Keyset ? set.is_empty() : num.is_zero();
}

std::string FlowValue::str() const {
    return tag == MonoidTag::Keyset ? set.str() : num.str();
}

FlowValue mon_add(const FlowValue& a, const FlowValue& b) {
    detail::require_same_tag(a.tag, b.tag, "mon_add");
    switch (a.tag) {
        case MonoidTag::Counting: return FlowValue::counting(a.num.plus(b.num));
        case MonoidTag::Keyset: return FlowValue::keyset(a.set.unite(b.set));
        case MonoidTag::MaxCap: return FlowValue::maxcap(a.num.max_with(b.num));
    }
    throw FlowError(Errc::BadParams, "unreachable");
}

bool mon_leq(const FlowValue& a, const FlowValue& b) {
    detail::require_same_tag(a.tag, b.tag, "mon_leq");
    if (a.tag == MonoidTag::Keyset) return a.set.subset_of(b.set);
    return a.num <= b.num;
}

// --- EdgeFn ----------------------------------------------------------------

EdgeFn EdgeFn::zero(MonoidTag tag) {
    switch (tag) {
        case MonoidTag::Counting: return scale(ExtNat(0));
        case MonoidTag::Keyset: return intersect(IntervalSet::empty());
        case MonoidTag::MaxCap: return cap(ExtNat(0));
    }
    throw FlowError(Errc::BadParams, "unreachable");
}

EdgeFn EdgeFn::identity(MonoidTag tag) {
    switch (tag) {
        case MonoidTag::Counting: return scale(ExtNat(1));
        case MonoidTag::Keyset: return intersect(IntervalSet::all());
        case MonoidTag::MaxCap: return cap(ExtNat::inf());
    }
    throw FlowError(Errc::BadParams, "unreachable");
}

bool EdgeFn::is_zero() const { return *this == zero(tag); }
bool EdgeFn::is_identity() const { return *this == identity(tag); }

std::string EdgeFn::str() const {
    switch (tag) {
        case MonoidTag::Counting: return "scale(" + param.str() + ")";
        case MonoidTag::Keyset: return "intersect(" + set.str() + ")";
        case MonoidTag::MaxCap: return "cap(" + param.str() + ")";
    }
    return "?";
}

FnClass fn_class(const EdgeFn& f) {
    FnClass c;
    c.distributive = true;
    c.idempotent_addition = tag_idempotent(f.tag);
    c.decreasing = f.tag != MonoidTag::Counting || f.param <= ExtNat(1);
    return c;
}

FlowValue fn_apply(const EdgeFn& f, const FlowValue& m) {
    detail::require_same_tag(f.tag, m.tag, "fn_apply");
    switch (f.tag) {
        case MonoidTag::Counting: return FlowValue::counting(f.param.times(m.num));
        case MonoidTag::Keyset: return FlowValue::keyset(f.set.intersect(m.set));
        case MonoidTag::MaxCap: return FlowValue::maxcap(f.param.min_with(m.num));
    }
    throw FlowError(Errc::BadParams, "unreachable");
}

EdgeFn fn_compose(const EdgeFn& f, const EdgeFn& g) {
    detail::require_same_tag(f.tag, g.tag, "fn_compose");
    switch (f.tag) {
        case MonoidTag::Counting: return EdgeFn::scale(f.param.times(g.param));
        case MonoidTag::Keyset: return EdgeFn::intersect(f.set.intersect(g.set));
        case MonoidTag::MaxCap: return EdgeFn::cap(f.param.min_with(g.param));
    }
    throw FlowError(Errc::BadParams, "unreachable");
}

EdgeFn fn_sum(const EdgeFn& f, const EdgeFn& g) {
    detail::require_same_tag(f.tag, g.tag, "fn_sum");
    switch (f.tag) {
        case MonoidTag::Counting: return EdgeFn::scale(f.param.plus(g.param));
        case MonoidTag::Keyset: return EdgeFn::intersect(f.set.unite(g.set));
        case MonoidTag::MaxCap: return EdgeFn::cap(f.param.max_with(g.param));
    }
    throw FlowError(Errc::BadParams, "unreachable");
}

bool fn_eq_below(const EdgeFn& f, const EdgeFn& g, const FlowValue& bound) {
    detail::require_same_tag(f.tag, g.tag, "fn_eq_below");
    detail::require_same_tag(f.tag, bound.tag, "fn_eq_below");
    switch (f.tag) {
        case MonoidTag::Counting:
            // m = 1 ≤ bound separates distinct scales; the bound value itself
            // does not (1·∞ = 2·∞).
            return bound.num.is_zero() || f.param == g.param;
        case MonoidTag::Keyset:
            return f.set.intersect(bound.set) == g.set.intersect(bound.set);
        case MonoidTag::MaxCap:
            return f.param.min_with(bound.num) == g.param.min_with(bound.num);
    }
    throw FlowError(Errc::BadParams, "unreachable");
}

bool fn_leq(const EdgeFn& f, const EdgeFn& g) {
    detail::require_same_tag(f.tag, g.tag, "fn_leq");
    switch (f.tag) {
        case MonoidTag::Counting: return f.param <= g.param;
        case MonoidTag::Keyset: return f.set.subset_of(g.set);
        case MonoidTag::MaxCap: return f.param <= g.param;
    }
    throw FlowError(Errc::BadParams, "unreachable");
}

}  // namespace flowfoot
