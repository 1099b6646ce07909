#include <doctest.h>

#include <random>

#include "flowfoot/generate.hpp"
#include "flowfoot/monoid.hpp"

using namespace flowfoot;

TEST_CASE("extended naturals saturate at infinity") {
    CHECK(ExtNat(2).plus(ExtNat(3)) == ExtNat(5));
    CHECK(ExtNat::inf().plus(ExtNat(1)) == ExtNat::inf());
    CHECK(ExtNat(0).times(ExtNat::inf()) == ExtNat(0));
    CHECK(ExtNat(2).times(ExtNat::inf()) == ExtNat::inf());
    CHECK(ExtNat(3) < ExtNat::inf());
    CHECK_FALSE(ExtNat::inf() < ExtNat::inf());
}

TEST_CASE("interval sets normalize to canonical form") {
    // adjacent integer intervals merge
    IntervalSet a = IntervalSet::closed(Bound::at(1), Bound::at(3))
                        .unite(IntervalSet::closed(Bound::at(4), Bound::at(6)));
    CHECK(a == IntervalSet::closed(Bound::at(1), Bound::at(6)));
    // -inf is adjacent to the low virtual endpoint
    IntervalSet b = IntervalSet::singleton(Bound::neg_inf()).unite(IntervalSet::integers());
    CHECK(b == IntervalSet::closed(Bound::neg_inf(), Bound::high_int()));
    // the whole carrier
    CHECK(IntervalSet::integers()
              .unite(IntervalSet::singleton(Bound::neg_inf()))
              .unite(IntervalSet::singleton(Bound::pos_inf())) == IntervalSet::all());
}

TEST_CASE("interval set operations") {
    IntervalSet above3 = IntervalSet::above(3);
    CHECK(above3.contains(Bound::at(4)));
    CHECK(above3.contains(Bound::pos_inf()));
    CHECK_FALSE(above3.contains(Bound::at(3)));
    CHECK(above3.intersect(IntervalSet::above(6)) == IntervalSet::above(6));
    CHECK(IntervalSet::above(6).subset_of(above3));
    CHECK_FALSE(above3.subset_of(IntervalSet::above(6)));
    CHECK(above3.intersect(IntervalSet::empty()).is_empty());

    IntervalSet except_neg = IntervalSet::all_except_neg_inf();
    CHECK(except_neg.contains(Bound::at(-100)));
    CHECK(except_neg.contains(Bound::pos_inf()));
    CHECK_FALSE(except_neg.contains(Bound::neg_inf()));
}

TEST_CASE("members_in lists exactly the contained universe elements") {
    std::vector<Bound> universe{Bound::neg_inf(), Bound::at(0), Bound::at(1), Bound::at(5),
                                Bound::pos_inf()};
    std::vector<Bound> got = IntervalSet::above(0).members_in(universe);
    REQUIRE(got.size() == 3);
    CHECK(got[0] == Bound::at(1));
    CHECK(got[1] == Bound::at(5));
    CHECK(got[2] == Bound::pos_inf());
}

TEST_CASE("monoid addition per carrier") {
    CHECK(mon_add(FlowValue::counting(2), FlowValue::counting(3)) == FlowValue::counting(5));
    CHECK(mon_add(FlowValue::maxcap(2), FlowValue::maxcap(3)) == FlowValue::maxcap(3));
    CHECK(mon_add(FlowValue::keyset(IntervalSet::above(3)),
                  FlowValue::keyset(IntervalSet::above(6))) ==
          FlowValue::keyset(IntervalSet::above(3)));
    CHECK_THROWS_WITH_AS(mon_add(FlowValue::counting(1), FlowValue::maxcap(1)),
                         doctest::Contains("TagMismatch"), FlowError);
}

TEST_CASE("idempotence is a property of the monoid, not the values") {
    CHECK_FALSE(tag_idempotent(MonoidTag::Counting));
    CHECK(tag_idempotent(MonoidTag::Keyset));
    CHECK(tag_idempotent(MonoidTag::MaxCap));
    // counting fails m + m = m on any nonzero value
    CHECK(mon_add(FlowValue::counting(1), FlowValue::counting(1)) != FlowValue::counting(1));
}

TEST_CASE("induced order") {
    CHECK(mon_leq(FlowValue::counting(2), FlowValue::counting(5)));
    CHECK_FALSE(mon_leq(FlowValue::counting(5), FlowValue::counting(2)));
    CHECK(mon_leq(FlowValue::maxcap(2), FlowValue::maxcap(2)));
    CHECK(mon_leq(FlowValue::keyset(IntervalSet::above(6)),
                  FlowValue::keyset(IntervalSet::above(3))));
}

TEST_CASE("edge function application") {
    CHECK(fn_apply(EdgeFn::scale(2), FlowValue::counting(3)) == FlowValue::counting(6));
    CHECK(fn_apply(EdgeFn::cap(2), FlowValue::maxcap(5)) == FlowValue::maxcap(2));
    CHECK(fn_apply(EdgeFn::lambda_key(6), FlowValue::keyset(IntervalSet::above(3))) ==
          FlowValue::keyset(IntervalSet::above(6)));
    CHECK(fn_apply(EdgeFn::lambda_neg_inf(),
                   FlowValue::keyset(IntervalSet::singleton(Bound::neg_inf()))) ==
          FlowValue::keyset(IntervalSet::empty()));
}

TEST_CASE("composition collapses along a search path") {
    // keep keys > 6, then drop only -inf, then keep keys > 8
    EdgeFn f = fn_compose(fn_compose(EdgeFn::lambda_key(6), EdgeFn::lambda_neg_inf()),
                          EdgeFn::lambda_key(8));
    CHECK(f == EdgeFn::lambda_key(8));
    CHECK(fn_compose(EdgeFn::scale(2), EdgeFn::scale(3)) == EdgeFn::scale(6));
    CHECK(fn_compose(EdgeFn::cap(5), EdgeFn::cap(2)) == EdgeFn::cap(2));
}

TEST_CASE("identity and zero recognition") {
    CHECK(EdgeFn::identity(MonoidTag::Counting).is_identity());
    CHECK(EdgeFn::identity(MonoidTag::Keyset).is_identity());
    CHECK(EdgeFn::identity(MonoidTag::MaxCap).is_identity());
    CHECK(EdgeFn::zero(MonoidTag::Keyset).is_zero());
    CHECK(EdgeFn::scale(0).is_zero());
    CHECK(EdgeFn::cap(0).is_zero());
}

TEST_CASE("function classification from canonical form") {
    CHECK(fn_class(EdgeFn::scale(1)).decreasing);
    CHECK_FALSE(fn_class(EdgeFn::scale(2)).decreasing);
    CHECK(fn_class(EdgeFn::lambda_key(3)).decreasing);
    CHECK(fn_class(EdgeFn::cap(7)).decreasing);
    CHECK(fn_class(EdgeFn::scale(3)).distributive);
    CHECK_FALSE(fn_class(EdgeFn::scale(1)).idempotent_addition);
    CHECK(fn_class(EdgeFn::cap(1)).idempotent_addition);
}

TEST_CASE("pointwise sums stay in the family") {
    CHECK(fn_sum(EdgeFn::scale(1), EdgeFn::scale(2)) == EdgeFn::scale(3));
    CHECK(fn_sum(EdgeFn::cap(1), EdgeFn::cap(4)) == EdgeFn::cap(4));
    CHECK(fn_sum(EdgeFn::lambda_key(3), EdgeFn::lambda_key(6)) == EdgeFn::lambda_key(3));
}

TEST_CASE("bounded equality is decided exactly") {
    // everything agrees below the zero bound
    CHECK(fn_eq_below(EdgeFn::scale(1), EdgeFn::scale(7), FlowValue::counting(0)));
    // m = 1 <= bound already separates distinct scales
    CHECK_FALSE(fn_eq_below(EdgeFn::scale(1), EdgeFn::scale(2), FlowValue::counting(1)));
    CHECK_FALSE(fn_eq_below(EdgeFn::scale(1), EdgeFn::scale(2), FlowValue::counting(ExtNat::inf())));

    // caps agree below a bound iff they clip it identically
    CHECK(fn_eq_below(EdgeFn::cap(5), EdgeFn::cap(9), FlowValue::maxcap(4)));
    CHECK_FALSE(fn_eq_below(EdgeFn::cap(5), EdgeFn::cap(9), FlowValue::maxcap(7)));

    // intersections agree below a set iff they agree on that set
    FlowValue bound = FlowValue::keyset(IntervalSet::above(6));
    CHECK(fn_eq_below(EdgeFn::lambda_key(3), EdgeFn::lambda_key(6), bound));
    CHECK_FALSE(fn_eq_below(EdgeFn::lambda_key(6), EdgeFn::lambda_key(7), bound));
}

TEST_CASE("bounded equality matches brute force on random functions") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 2000; ++i) {
        MonoidTag tag = static_cast<MonoidTag>(i % 3);
        EdgeFn f = random_fn(tag, rng, false);
        EdgeFn g = random_fn(tag, rng, false);
        FlowValue bound = random_value(tag, rng, true);

        // enumerate every m below the bound
        bool expect = true;
        if (tag == MonoidTag::Keyset) {
            std::vector<Bound> universe{Bound::neg_inf(), Bound::at(0), Bound::at(1),
                                        Bound::at(2),    Bound::at(3), Bound::at(4),
                                        Bound::at(5),    Bound::at(6), Bound::at(7),
                                        Bound::pos_inf()};
            std::vector<Bound> members = bound.set.members_in(universe);
            for (std::uint64_t mask = 0; mask < (1u << members.size()); ++mask) {
                IntervalSet s;
                for (std::size_t b = 0; b < members.size(); ++b)
                    if (mask & (1u << b)) s = s.unite(IntervalSet::singleton(members[b]));
                FlowValue m = FlowValue::keyset(s);
                if (fn_apply(f, m) != fn_apply(g, m)) expect = false;
            }
        } else {
            for (std::uint64_t v = 0; v <= bound.num.raw(); ++v) {
                FlowValue m = tag == MonoidTag::Counting ? FlowValue::counting(v)
                                                         : FlowValue::maxcap(v);
                if (fn_apply(f, m) != fn_apply(g, m)) expect = false;
            }
        }
        CAPTURE(i);
        CHECK(fn_eq_below(f, g, bound) == expect);
    }
}

TEST_CASE("pointwise order on functions") {
    CHECK(fn_leq(EdgeFn::lambda_key(8), EdgeFn::lambda_key(6)));
    CHECK_FALSE(fn_leq(EdgeFn::lambda_key(6), EdgeFn::lambda_key(8)));
    CHECK(fn_leq(EdgeFn::cap(2), EdgeFn::cap(4)));
    CHECK(fn_leq(EdgeFn::zero(MonoidTag::Keyset), EdgeFn::lambda_neg_inf()));
}
