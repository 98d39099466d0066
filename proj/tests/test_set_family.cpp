#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "vcsum/errors.hpp"
#include "vcsum/random.hpp"
#include "vcsum/set_family.hpp"

using namespace vcsum;

namespace {
SetFamily fam(int n, std::vector<Mask> m) { return SetFamily(n, std::move(m)); }
}  // namespace

TEST_CASE("binom_sum values") {
    CHECK(binom_sum(4, 2) == 11);
    CHECK(binom_sum(10, 2) == 56);
    for (int n = 0; n < 12; ++n) CHECK(binom_sum(n, 0) == 1);
    CHECK(binom_sum(5, 9) == 32);  // clamps to 2^n
    CHECK(binom_sum(62, 62) == (std::uint64_t(1) << 62));
    CHECK(binomial(64, 32) == 1832624140942590534ULL);
}

TEST_CASE("binom_sum matches oracle and overflows loudly") {
    for (int n = 0; n <= 20; ++n)
        for (int d = 0; d <= n + 1; ++d) CHECK(binom_sum(n, d) == oracle::binom_sum(n, d));
    CHECK_THROWS_AS(binom_sum(80, 80), OverflowError);
    CHECK_THROWS_AS(binomial(200, 100), OverflowError);
    CHECK_THROWS_AS(binom_sum(4, -1), ParameterError);
}

TEST_CASE("pairwise_family examples") {
    CHECK(pairwise_family(fam(2, {0}), fam(2, {0}), SetOp::sym_diff) == fam(2, {0}));
    CHECK(pairwise_family(fam(2, {1, 2}), fam(2, {1, 2}), SetOp::sym_diff) == fam(2, {0, 3}));
    CHECK(pairwise_family(fam(2, {0, 1, 2}), fam(2, {0, 1, 2}), SetOp::sym_diff) == fam(2, {0, 1, 2, 3}));
}

TEST_CASE("pairwise_family errors") {
    CHECK_THROWS_AS(pairwise_family(fam(2, {0}), fam(3, {0}), SetOp::union_), DimensionError);
    CHECK_THROWS_AS(pairwise_family(SetFamily(2), fam(2, {0}), SetOp::union_), EmptyFamilyError);
}

TEST_CASE("pairwise_family properties, all families n <= 3 and seeded n = 4") {
    auto check = [](int n, const std::vector<Mask>& m) {
        const SetFamily a(n, m);
        const SetFamily sd = pairwise_family(a, a, SetOp::sym_diff);
        const SetFamily in = pairwise_family(a, a, SetOp::intersect);
        const SetFamily un = pairwise_family(a, a, SetOp::union_);
        CHECK(sd.contains(0));
        for (Mask s : a.members()) {
            CHECK(in.contains(s));
            CHECK(un.contains(s));
        }
        CHECK(sd == SetFamily(n, oracle::pairwise(m, m, 0)));
        CHECK(in == SetFamily(n, oracle::pairwise(m, m, 1)));
        CHECK(un == SetFamily(n, oracle::pairwise(m, m, 2)));
        // k_fold_sumset over F2 is the symmetric-difference family
        CHECK(decode_01(k_fold_sumset(embed_01(a, 2), 2)) == sd);
    };
    for (int n = 1; n <= 3; ++n)
        for (std::uint64_t idx = 1; idx < (std::uint64_t(1) << (1 << n)); ++idx)
            check(n, oracle::all_families_members(n, idx));
    Rng rng(5);
    for (int i = 0; i < 200; ++i) check(4, oracle::all_families_members(4, rng.between(1, 65535)));
}

TEST_CASE("pairwise_family is symmetric") {
    Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        const SetFamily a(4, oracle::all_families_members(4, rng.between(1, 65535)));
        const SetFamily b(4, oracle::all_families_members(4, rng.between(1, 65535)));
        for (SetOp op : {SetOp::sym_diff, SetOp::intersect, SetOp::union_})
            CHECK(pairwise_family(a, b, op) == pairwise_family(b, a, op));
    }
}

TEST_CASE("pairwise_family on a large ground set uses the sorted path") {
    const SetFamily a(40, {0, Mask(1) << 39, (Mask(1) << 39) | 1});
    CHECK(pairwise_family(a, a, SetOp::sym_diff) == SetFamily(40, {0, 1, Mask(1) << 39, (Mask(1) << 39) | 1}));
}

TEST_CASE("k_fold_sumset examples") {
    CHECK(k_fold_sumset(PointSet(5, 3, {0}), 4) == PointSet(5, 3, {0}));
    CHECK(k_fold_sumset(PointSet(3, 1, {0, 1}), 3) == PointSet(3, 1, {0, 1, 2}));
    // 00 and 11 in base 2: codes 0 and 3
    CHECK(k_fold_sumset(PointSet(2, 2, {0, 3}), 2) == PointSet(2, 2, {0, 3}));
    CHECK(k_fold_sumset(PointSet(3, 2, {1, 3}), 1) == PointSet(3, 2, {1, 3}));
    CHECK_THROWS_AS(k_fold_sumset(PointSet(3, 1, {0}), 0), ParameterError);
    CHECK_THROWS_AS(k_fold_sumset(PointSet(3, 1, {}), 2), EmptyFamilyError);
}

TEST_CASE("k_fold_sumset agrees with tuple enumeration") {
    Rng rng(3);
    for (std::uint32_t p : {2U, 3U, 5U})
        for (int trial = 0; trial < 30; ++trial) {
            const int n = 2;
            const std::uint64_t space = std::uint64_t(p) * p;
            auto pts = sample_distinct(rng, space, rng.between(1, std::min<std::uint64_t>(space, 5)));
            const PointSet a(p, n, pts);
            for (int k = 1; k <= 3; ++k) {
                std::set<PointCode> want;
                std::vector<std::size_t> idx(k, 0);
                for (;;) {
                    PointCode s = 0;
                    for (std::size_t i : idx) s = add_points(s, pts[i], p, n);
                    want.insert(s);
                    std::size_t j = 0;
                    while (j < idx.size() && ++idx[j] == pts.size()) idx[j++] = 0;
                    if (j == idx.size()) break;
                }
                CHECK(k_fold_sumset(a, k) == PointSet(p, n, {want.begin(), want.end()}));
            }
        }
}

TEST_CASE("embed_01 examples") {
    CHECK(embed_01(fam(3, {0}), 5) == PointSet(5, 3, {0}));
    CHECK(embed_01(fam(2, {1, 2}), 3) == PointSet(3, 2, {1, 3}));
    const SetFamily a = fam(4, {0, 3, 5, 15});
    CHECK(decode_01(embed_01(a, 2)) == a);
    CHECK(decode_01(embed_01(a, 7)) == a);
    CHECK_THROWS_AS(embed_01(a, 4), ParameterError);
    CHECK_THROWS_AS(decode_01(PointSet(3, 1, {2})), ParameterError);
}

TEST_CASE("generate_family") {
    CHECK(generate_family(2, FamilyKind::powerset()) == fam(2, {0, 1, 2, 3}));
    CHECK(generate_family(4, FamilyKind::lowweight(2)).size() == 11);
    CHECK(generate_family(4, FamilyKind::highweight(2)).size() == 11);
    for (int n = 0; n <= 10; ++n)
        for (int d = 0; d <= n; ++d) {
            CHECK(generate_family(n, FamilyKind::lowweight(d)).size() == binom_sum(n, d));
            CHECK(generate_family(n, FamilyKind::highweight(d)).size() == binom_sum(n, d));
        }
    CHECK_THROWS_AS(generate_family(3, FamilyKind::random(9, 1)), ParameterError);
    const SetFamily r = generate_family(5, FamilyKind::random(7, 99));
    CHECK(r.size() == 7);
    CHECK(r == generate_family(5, FamilyKind::random(7, 99)));
    CHECK(r != generate_family(5, FamilyKind::random(7, 100)));
}

TEST_CASE("generate_family random is byte-stable across builds") {
    // Frozen from the first run; mt19937_64 and Floyd sampling are fully specified.
    std::ostringstream out;
    write_family(out, generate_family(6, FamilyKind::random(5, 2024)));
    CHECK(out.str() == "n=6 p=2\n110110\n010001\n100101\n001111\n101111\n");
    Rng rng(42);
    CHECK(rng.next() == std::mt19937_64(42)());
}

TEST_CASE("sample_distinct") {
    Rng rng(1);
    for (int i = 0; i < 100; ++i) {
        const auto universe = rng.between(1, 50);
        const auto count = rng.between(0, universe);
        const auto v = sample_distinct(rng, universe, count);
        CHECK(v.size() == count);
        CHECK(std::is_sorted(v.begin(), v.end()));
        CHECK(std::adjacent_find(v.begin(), v.end()) == v.end());
        if (!v.empty()) CHECK(v.back() < universe);
    }
}

TEST_CASE("family text format round trip") {
    const std::string text = "# comment\nn=3 p=2\n\n000\n101\n010\n";
    std::istringstream in(text);
    const SetFamily a = read_family(in);
    CHECK(a == fam(3, {0, 2, 5}));
    std::ostringstream out;
    write_family(out, a);
    CHECK(out.str() == "n=3 p=2\n000\n010\n101\n");

    std::istringstream pin("n=2 p=3\n21\n02\n");
    const PointSet pts = read_point_set(pin);
    CHECK(pts == PointSet(3, 2, {2 + 3 * 1, 0 + 3 * 2}));
    std::ostringstream pout;
    write_point_set(pout, pts);
    CHECK(pout.str() == "n=2 p=3\n21\n02\n");
}

TEST_CASE("family text format errors carry line numbers") {
    auto line_of = [](const std::string& text) -> std::size_t {
        std::istringstream in(text);
        try {
            read_point_set(in);
        } catch (const ParseError& e) {
            return e.line();
        }
        return 0;
    };
    CHECK(line_of("n=2 p=2\n00\n012\n") == 3);
    CHECK(line_of("n=2 p=2\n00\n0x\n") == 3);
    CHECK(line_of("n=2 p=3\n03\n") == 2);
    CHECK(line_of("n=2\n") == 1);
    CHECK(line_of("") != 0);
    std::istringstream p3("n=1 p=3\n2\n");
    CHECK_THROWS_AS(read_family(p3), ParseError);
    std::istringstream comp("n=1 p=4\n1\n");
    CHECK_THROWS_AS(read_point_set(comp), Error);
}

TEST_CASE("set formatting") {
    CHECK(format_set(0) == "{}");
    CHECK(format_set(5) == "{1,3}");
    CHECK(parse_set("{1,3}", 3) == 5);
    CHECK(parse_set("1,3", 3) == 5);
    CHECK(parse_set("{}", 3) == 0);
    CHECK_THROWS_AS(parse_set("{4}", 3), Error);
    CHECK_THROWS_AS(parse_set("{0}", 3), Error);
}

TEST_CASE("point codec") {
    const std::vector<std::uint32_t> x{2, 0, 1};
    const PointCode c = encode_point(x, 3);
    CHECK(c == 2 + 0 * 3 + 1 * 9);
    CHECK(decode_point(c, 3, 3) == x);
    CHECK(add_points(c, c, 3, 3) == encode_point(std::vector<std::uint32_t>{1, 0, 2}, 3));
    CHECK(add_points(5, 3, 2, 3) == 6);
    CHECK_THROWS_AS(point_space_size(3, 40), ResourceError);
    CHECK_THROWS_AS(PointSet(6, 1, {0}), ParameterError);
    CHECK_THROWS_AS(PointSet(3, 1, {3}), ParameterError);
    CHECK_THROWS_AS(SetFamily(2, {4}), ParameterError);
}
