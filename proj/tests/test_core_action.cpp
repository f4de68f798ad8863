#include <doctest.h>

#include <algorithm>
#include <set>

#include "locdet/action.hpp"
#include "locdet/sampling.hpp"
#include "support/eval_oracle.hpp"

using namespace locdet;
using locdet::testing::Pt;
using locdet::testing::enumerate_points;
using locdet::testing::eval;
using locdet::testing::in_domain;

namespace {

const ActionPtr V2 = Action::parse("V2");
const ActionPtr QV = Action::parse("QV");
const ActionPtr H2 = Action::parse("H2");
const ActionPtr ROVER = Action::parse("ROVER");
const ActionPtr VV = Action::parse("prod(V2,V2)");

Domain dom(const ActionPtr& a, const std::string& t) { return Domain::parse(a, t); }
PartialMap pm(const ActionPtr& a, const std::string& t) { return PartialMap::parse(a, t); }

// Pointwise agreement of two maps on every point of the truncated support
// where either is defined.
bool maps_agree(const PartialMap& m1, const PartialMap& m2, int depth) {
    for (const auto& p : enumerate_points(m1.action, depth)) {
        bool in1 = in_domain(source_of(m1), p), in2 = in_domain(source_of(m2), p);
        if (in1 != in2) return false;
        if (in1 && !(eval(m1, p) == eval(m2, p))) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("domain text round trips") {
    for (const char* t : {"B:e", "B:0110"}) CHECK(dom(V2, t).text() == t);
    for (const char* t : {"T:e", "Pt:01", "T:10"}) CHECK(dom(QV, t).text() == t);
    for (const char* t : {"R:1,3", "P:2,5"}) CHECK(dom(H2, t).text() == t);
    CHECK(dom(VV, "(B:0xB:1)").text() == "(B:0xB:1)");
    CHECK(dom(VV, "(B:0xEMPTY)").text() == "EMPTY");
}

TEST_CASE("compose: inverse pair gives the identity on B:1") {
    PartialMap s = pm(V2, "sig 01->1"), t = pm(V2, "sig 1->01");
    PartialMap c = compose(s, t);
    CHECK(c.text() == "sig 1->1");
    CHECK(source_of(c).text() == "B:1");
    CHECK(is_identity_map(c));
}

TEST_CASE("compose: sig 0->e after sig e->00 equals sig e->0") {
    PartialMap c = compose(pm(V2, "sig 0->e"), pm(V2, "sig e->00"));
    CHECK(c.text() == "sig e->0");
    CHECK(maps_agree(c, pm(V2, "sig e->0"), 6));
}

TEST_CASE("compose: disjoint supports give Zero") {
    CHECK(compose(pm(V2, "sig 0->0"), pm(V2, "sig 1->1")).zero());
}

TEST_CASE("invert") {
    CHECK(invert(pm(V2, "sig 01->1")).text() == "sig 1->01");
    CHECK(invert(PartialMap::make_zero(V2)).zero());
    PartialMap b = pm(ROVER, "rov[b] e->e");
    CHECK(invert(b).text() == b.text());  // b is an involution
    CHECK(grig_is_identity(grig_multiply(b.g, b.g)));
}

TEST_CASE("restrict: Rover twist applies the section recursion") {
    PartialMap b = pm(ROVER, "rov[b] e->e");
    CHECK(restrict_map(b, dom(ROVER, "B:0")).text() == "rov[a] 0->0");
    CHECK(restrict_map(b, dom(ROVER, "B:1")).text() == "rov[c] 1->1");
    PartialMap d = pm(ROVER, "rov[d] e->e");
    CHECK(restrict_map(d, dom(ROVER, "B:0")).text() == "rov[1] 0->0");
    PartialMap idm = pm(V2, "sig e->e");
    CHECK(restrict_map(idm, dom(V2, "B:0110")).text() == "sig 0110->0110");
    PartialMap sh = pm(H2, "shift 1:3->7");
    CHECK(restrict_map(sh, dom(H2, "R:1,5")).text() == "shift 1:5->9");
    // pointwise check on offsets <= 30
    for (long k = 5; k <= 30; ++k) {
        Pt p{"", 1, k, {}};
        CHECK(*eval(sh, p) == *eval(restrict_map(sh, dom(H2, "R:1,5")), p));
    }
    CHECK(restrict_map(b, source_of(b)).text() == b.text());
}

TEST_CASE("intersect_domains") {
    CHECK(intersect_domains(dom(V2, "B:01"), dom(V2, "B:011")).text() == "B:011");
    CHECK(intersect_domains(dom(V2, "B:0"), dom(V2, "B:1")).empty());
    CHECK(intersect_domains(dom(VV, "(B:0xB:e)"), dom(VV, "(B:exB:1)")).text() == "(B:0xB:1)");
    CHECK(intersect_domains(dom(QV, "T:0"), dom(QV, "Pt:011")).text() == "Pt:011");
    CHECK(intersect_domains(dom(H2, "R:1,3"), dom(H2, "P:1,2")).empty());
    CHECK(intersect_domains(dom(H2, "R:1,3"), dom(H2, "P:1,9")).text() == "P:1,9");
}

TEST_CASE("translate") {
    CHECK(translate(pm(V2, "sig 0->11"), dom(V2, "B:01")).text() == "B:111");
    // derived: prefix rewrite on depth-6 strings
    for (const auto& p : enumerate_points(V2, 6)) {
        bool inside = in_domain(dom(V2, "B:01"), p);
        if (inside) CHECK(in_domain(dom(V2, "B:111"), *eval(pm(V2, "sig 0->11"), p)));
    }
    Domain d = dom(V2, "B:0110");
    CHECK(translate(identity_on(d), d) == d);
    CHECK(translate(pm(ROVER, "rov[a] e->e"), dom(ROVER, "B:0")).text() == "B:1");
}

TEST_CASE("maximal partitions") {
    auto mp = maximal_partition(dom(V2, "B:01"));
    REQUIRE(mp.size() == 2);
    CHECK(mp[0].text() == "B:010");
    CHECK(mp[1].text() == "B:011");
    auto mr = maximal_partition(dom(H2, "R:2,5"));
    REQUIRE(mr.size() == 2);
    CHECK(mr[0].text() == "P:2,5");
    CHECK(mr[1].text() == "R:2,6");
    auto mq = maximal_partition(dom(QV, "Pt:011"));
    REQUIRE(mq.size() == 1);
    CHECK(mq[0].text() == "Pt:011");
    auto mt = maximal_partition(dom(QV, "T:e"));
    REQUIRE(mt.size() == 3);  // T:0, T:1, Pt:e
    CHECK_THROWS(maximal_partition(dom(VV, "(B:0xB:1)")));
}

TEST_CASE("partition_difference") {
    auto d1 = partition_difference(dom(V2, "B:e"), dom(V2, "B:0"));
    REQUIRE(d1.size() == 1);
    CHECK(d1[0].text() == "B:1");

    auto d2 = partition_difference(dom(QV, "T:e"), dom(QV, "T:01"));
    std::set<std::string> got;
    for (const auto& d : d2) got.insert(d.text());
    CHECK(got == std::set<std::string>{"T:00", "T:1", "Pt:e", "Pt:0"});

    auto d3 = partition_difference(dom(H2, "R:1,2"), dom(H2, "R:1,5"));
    std::set<std::string> got3;
    for (const auto& d : d3) got3.insert(d.text());
    CHECK(got3 == std::set<std::string>{"P:1,2", "P:1,3", "P:1,4"});

    CHECK(partition_difference(dom(V2, "B:01"), dom(V2, "B:01")).empty());
    CHECK_THROWS(partition_difference(dom(V2, "B:0"), dom(V2, "B:1")));
}

TEST_CASE("depth_of") {
    CHECK(depth_of(dom(V2, "B:e"), dom(V2, "B:e")) == 1);
    CHECK(depth_of(dom(V2, "B:0110"), dom(V2, "B:e")) == 5);
    CHECK(depth_of(dom(H2, "P:1,7"), dom(H2, "R:1,4")) == 5);
    CHECK_THROWS(depth_of(dom(V2, "B:0"), dom(V2, "B:1")));
}

TEST_CASE("verify_cup") {
    CHECK(verify_cup(V2, 4).pass);
    CHECK(verify_cup(H2, 4).pass);
    CHECK(verify_cup(ROVER, 4).pass);
    CHECK(verify_cup(QV, 4).pass);
    auto rep = verify_cup(VV, 2);
    CHECK(!rep.pass);
    CHECK(!rep.witness.empty());
    // the spec's pair is a genuine counterexample
    Domain a = dom(VV, "(B:exB:0)"), b = dom(VV, "(B:1xB:e)");
    Domain inter = intersect_domains(a, b);
    CHECK(!inter.empty());
    CHECK(!is_subdomain(a, b));
    CHECK(!is_subdomain(b, a));
}

TEST_CASE("inverse semigroup laws on sampled triples") {
    for (const ActionPtr& a : {V2, QV, H2, ROVER, VV}) {
        Rng rng(42);
        for (int i = 0; i < 60; ++i) {
            PartialMap x = random_map(a, rng, 3), y = random_map(a, rng, 3), z = random_map(a, rng, 3);
            CHECK(compose(compose(x, y), z) == compose(x, compose(y, z)));
            CHECK(compose(x, compose(invert(x), x)) == x);
            PartialMap e1 = compose(x, invert(x)), e2 = compose(y, invert(y));
            CHECK(compose(e1, e2) == compose(e2, e1));  // idempotents commute
            if (!e1.zero()) CHECK(is_identity_map(e1));
            CHECK(compose(x, PartialMap::make_zero(a)).zero());
            CHECK(compose(PartialMap::make_zero(a), x).zero());
        }
    }
}

TEST_CASE("sampled composition agrees with pointwise evaluation") {
    for (const ActionPtr& a : {V2, QV, H2, ROVER}) {
        Rng rng(7);
        auto pts = enumerate_points(a, a->family == Family::Houghton ? 12 : 7);
        for (int i = 0; i < 40; ++i) {
            PartialMap x = random_map(a, rng, 2), y = random_map(a, rng, 2);
            PartialMap c = compose(x, y);
            for (const auto& p : pts) {
                auto step = eval(y, p);
                std::optional<Pt> two = step ? eval(x, *step) : std::nullopt;
                auto direct = eval(c, p);
                bool dir_in = in_domain(source_of(c), p);
                CHECK(dir_in == (step.has_value() && two.has_value()));
                if (dir_in) CHECK(*direct == *two);
            }
        }
    }
}

TEST_CASE("CUP properties on sampled nested pairs") {
    for (const ActionPtr& a : {V2, QV, H2, ROVER}) {
        Rng rng(11);
        for (int i = 0; i < 50; ++i) {
            Domain e = random_domain(a, rng, 3);
            auto part = random_split_partition(a, e, rng, (int)rng.pick(0, 4));
            Domain d = part[(size_t)rng.pick(0, (long)part.size() - 1)];
            auto diff = partition_difference(e, d);
            for (const auto& piece : diff) CHECK(intersect_domains(piece, d).empty());
            std::vector<Domain> all = diff;
            all.push_back(d);
            CHECK(pieces_pairwise_disjoint(all));
            CHECK(pieces_cover(e, all));
        }
    }
}

TEST_CASE("maximal partition is the coarsest proper partition") {
    for (const ActionPtr& a : {V2, QV, H2, ROVER}) {
        Rng rng(13);
        for (int i = 0; i < 40; ++i) {
            Domain d = random_domain(a, rng, 3);
            if (!has_proper_subdomain(d)) continue;
            auto proper = random_split_partition(a, d, rng, 1 + (int)rng.pick(0, 3));
            if (proper.size() == 1) continue;
            auto mp = maximal_partition(d);
            for (const auto& piece : proper) {
                bool inside_one = false;
                for (const auto& m : mp) inside_one = inside_one || is_subdomain(piece, m);
                CHECK(inside_one);
            }
        }
    }
}

TEST_CASE("no infinite ascent: chain length to the root is bounded") {
    for (const ActionPtr& a : {V2, QV, H2, ROVER}) {
        Rng rng(17);
        for (int i = 0; i < 40; ++i) {
            Domain d = random_domain(a, rng, 4);
            for (const auto& r : root_partition(a)) {
                if (!is_subdomain(d, r)) continue;
                int depth = depth_of(d, r);
                CHECK(depth >= 1);
                CHECK(depth <= 2 * 4 + 2);
            }
        }
    }
}

TEST_CASE("S-invariance of maximal partitions") {
    for (const ActionPtr& a : {V2, QV, H2, ROVER}) {
        Rng rng(19);
        for (int i = 0; i < 60; ++i) {
            PartialMap s = random_map(a, rng, 3);
            if (s.zero()) continue;
            Domain d1 = source_of(s);
            if (!has_proper_subdomain(d1)) continue;
            std::set<std::string> image_of_partition, partition_of_image;
            for (const auto& piece : maximal_partition(d1)) image_of_partition.insert(translate(s, piece).text());
            for (const auto& piece : maximal_partition(target_of(s))) partition_of_image.insert(piece.text());
            CHECK(image_of_partition == partition_of_image);
        }
    }
}

TEST_CASE("partition meet and restrict") {
    Partition p1{dom(V2, "B:e"), {dom(V2, "B:0"), dom(V2, "B:1")}};
    Partition same = meet(p1, p1);
    CHECK(same.pieces.size() == 2);
    Partition p2{dom(V2, "B:e"), {dom(V2, "B:00"), dom(V2, "B:01"), dom(V2, "B:1")}};
    Partition m = meet(trivial_partition(dom(V2, "B:e")), p2);
    CHECK(m.pieces.size() == 3);
    Partition r = restrict_partition(p2, dom(V2, "B:0"));
    REQUIRE(r.pieces.size() == 2);
    CHECK(r.pieces[0].text() == "B:00");
    CHECK(is_valid_partition(p2));
    Partition bad{dom(V2, "B:e"), {dom(V2, "B:00"), dom(V2, "B:1")}};
    CHECK(!is_valid_partition(bad));
}

TEST_CASE("regions canonicalize and compare") {
    Region r1 = canonical_region(V2, {dom(V2, "B:0"), dom(V2, "B:1")});
    REQUIRE(r1.size() == 1);
    CHECK(r1[0].text() == "B:e");
    Region r2 = canonical_region(V2, {dom(V2, "B:00"), dom(V2, "B:1")});
    CHECK(r2.size() == 2);
    CHECK(region_contains(r2, dom(V2, "B:001")));
    CHECK(!region_contains(r2, dom(V2, "B:01")));
    CHECK(regions_equal(canonical_region(V2, {dom(V2, "B:01"), dom(V2, "B:00"), dom(V2, "B:1")}), r1));
    // products: cross shape stays as grid cells
    Region rp = canonical_region(VV, {dom(VV, "(B:0xB:e)"), dom(VV, "(B:1xB:0)")});
    CHECK(region_contains(rp, dom(VV, "(B:00xB:1)")));
    CHECK(!region_contains(rp, dom(VV, "(B:1xB:1)")));
}

TEST_CASE("action parsing errors") {
    CHECK_THROWS(Action::parse("V1"));
    CHECK_THROWS(Action::parse("prod(ROVER,V2)"));
    CHECK_THROWS(Action::parse("H0"));
    CHECK(Action::parse("Qbar1")->name == "Qbar1");
    CHECK(Action::parse("prod(Qbar1,V2)")->name == "prod(Qbar1,V2)");
}

TEST_CASE("domain types and transversals") {
    CHECK(domain_type_count(V2) == 1);
    CHECK(domain_type_count(ROVER) == 1);
    CHECK(domain_type_count(QV) == 2);
    CHECK(domain_type_count(Action::parse("H3")) == 4);
    CHECK(domain_type_count(Action::parse("prod(Qbar1,V2)")) == 2);
    CHECK(domain_type_of(dom(QV, "Pt:0110")) == domain_type_of(dom(QV, "Pt:e")));
    CHECK(domain_type_of(dom(QV, "Pt:0110")) != domain_type_of(dom(QV, "T:e")));
    CHECK(type_transversal(QV, 0).text() == "Pt:e");
    CHECK(type_transversal(QV, 1).text() == "T:e");
    CHECK(type_transversal(H2, 2).text() == "R:2,1");
}
