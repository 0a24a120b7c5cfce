#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>

#include <sympg/mdd.hpp>

using namespace sympg;

namespace {

using Vec = std::vector<uint32_t>;
using VecSet = std::set<Vec>;

Vec random_vec(std::mt19937& rng, uint32_t width, uint32_t domain) {
    Vec v(width);
    for (auto& x : v) x = rng() % domain;
    return v;
}

MddSet build(NodeStore& st, uint32_t width, const VecSet& vs) {
    MddSet s(st, width);
    for (const auto& v : vs) s = set_insert(s, v);
    return s;
}

VecSet to_set(const MddSet& s) {
    VecSet out;
    for (auto& v : set_enumerate(s, SIZE_MAX)) out.insert(v);
    return out;
}

}  // namespace

TEST_CASE("insert basics") {
    NodeStore st;
    MddSet s(st, 2);
    REQUIRE(s.empty());
    REQUIRE(set_count(s) == 0);

    auto s1 = set_insert(s, {0, 1});
    REQUIRE(set_count(s1) == 1);
    REQUIRE(set_contains(s1, {0, 1}));
    REQUIRE(!set_contains(s1, {1, 0}));

    auto s2 = set_insert(s1, {0, 1});
    REQUIRE(s2.root == s1.root);  // idempotent

    REQUIRE_THROWS_AS(set_insert(s1, {0, 1, 2}), mdd_error);
}

TEST_CASE("canonicity: insertion order does not matter") {
    NodeStore st;
    MddSet a(st, 2);
    a = set_insert(a, {1, 0});
    a = set_insert(a, {0, 1});
    MddSet b(st, 2);
    b = set_insert(b, {0, 1});
    b = set_insert(b, {1, 0});
    REQUIRE(a.root == b.root);

    std::mt19937 rng(7);
    for (int iter = 0; iter < 50; ++iter) {
        std::vector<Vec> vs;
        for (int i = 0; i < 40; ++i) vs.push_back(random_vec(rng, 4, 3));
        MddSet x(st, 4), y(st, 4);
        for (const auto& v : vs) x = set_insert(x, v);
        std::shuffle(vs.begin(), vs.end(), rng);
        for (const auto& v : vs) y = set_insert(y, v);
        REQUIRE(x.root == y.root);
    }
}

TEST_CASE("combine against brute-force set oracle") {
    NodeStore st;
    std::mt19937 rng(11);
    for (int iter = 0; iter < 60; ++iter) {
        VecSet va, vb;
        for (int i = 0; i < 60; ++i) va.insert(random_vec(rng, 4, 3));
        for (int i = 0; i < 60; ++i) vb.insert(random_vec(rng, 4, 3));
        auto a = build(st, 4, va);
        auto b = build(st, 4, vb);

        VecSet u, n, d;
        std::set_union(va.begin(), va.end(), vb.begin(), vb.end(), std::inserter(u, u.end()));
        std::set_intersection(va.begin(), va.end(), vb.begin(), vb.end(), std::inserter(n, n.end()));
        std::set_difference(va.begin(), va.end(), vb.begin(), vb.end(), std::inserter(d, d.end()));

        REQUIRE(to_set(set_union(a, b)) == u);
        REQUIRE(to_set(set_intersect(a, b)) == n);
        REQUIRE(to_set(set_difference(a, b)) == d);
    }
}

TEST_CASE("boolean algebra laws via root equality") {
    NodeStore st;
    std::mt19937 rng(13);
    for (int iter = 0; iter < 40; ++iter) {
        VecSet va, vb, vc;
        for (int i = 0; i < 30; ++i) va.insert(random_vec(rng, 3, 3));
        for (int i = 0; i < 30; ++i) vb.insert(random_vec(rng, 3, 3));
        for (int i = 0; i < 30; ++i) vc.insert(random_vec(rng, 3, 3));
        auto a = build(st, 3, va), b = build(st, 3, vb), c = build(st, 3, vc);

        REQUIRE(set_union(a, b).root == set_union(b, a).root);
        REQUIRE(set_union(a, set_union(b, c)).root == set_union(set_union(a, b), c).root);
        REQUIRE(set_union(a, a).root == a.root);
        REQUIRE(set_intersect(a, set_union(b, c)).root ==
                set_union(set_intersect(a, b), set_intersect(a, c)).root);
        REQUIRE(set_difference(a, a).empty());
        REQUIRE(set_union(a, MddSet(st, 3)).root == a.root);
    }
}

TEST_CASE("count equals enumeration length") {
    NodeStore st;
    std::mt19937 rng(17);
    MddSet s(st, 5);
    VecSet mirror;
    for (int i = 0; i < 3000; ++i) {
        auto v = random_vec(rng, 5, 4);
        s = set_insert(s, v);
        mirror.insert(v);
    }
    REQUIRE(set_count(s) == big_uint(mirror.size()));
    auto all = set_enumerate(s, SIZE_MAX);
    REQUIRE(all.size() == mirror.size());
    REQUIRE(std::is_sorted(all.begin(), all.end()));
    REQUIRE(set_enumerate(s, 0).empty());
    REQUIRE(set_enumerate(s, 10).size() == 10);
}

TEST_CASE("enumerate sorts lexicographically") {
    NodeStore st;
    MddSet s(st, 2);
    s = set_insert(s, {1, 0});
    s = set_insert(s, {0, 1});
    auto out = set_enumerate(s, 10);
    REQUIRE(out == std::vector<Vec>{{0, 1}, {1, 0}});
}

TEST_CASE("relation insert stores interleaved old/new pairs") {
    NodeStore st;
    GroupRelation r(st, {1, 3});
    r = rel_insert(r, {0, 1}, {2, 2});
    // stored as <0,2,1,2>
    REQUIRE(st.contains(r.root, {0, 2, 1, 2}));
    auto r2 = rel_insert(r, {0, 1}, {2, 2});
    REQUIRE(r2.root == r.root);
    REQUIRE_THROWS_AS(rel_insert(r, {0}, {1, 2}), mdd_error);
}

TEST_CASE("rel_next hand-checked") {
    NodeStore st;
    GroupRelation r(st, {0});
    r = rel_insert(r, {0}, {1});

    MddSet s(st, 3);
    REQUIRE(rel_next(s, r).empty());

    s = set_insert(s, {0, 7, 9});
    auto img = rel_next(s, r);
    REQUIRE(to_set(img) == VecSet{{1, 7, 9}});

    MddSet t(st, 2);
    t = set_insert(t, {1, 7});
    auto pre = rel_prev(t, r);
    REQUIRE(to_set(pre) == VecSet{{0, 7}});
}

namespace {

// brute-force application of a short-vector relation over enumerated vectors
VecSet brute_next(const VecSet& s, const std::vector<uint32_t>& deps,
                  const std::set<std::pair<Vec, Vec>>& pairs) {
    VecSet out;
    for (const auto& v : s) {
        for (const auto& [o, n] : pairs) {
            bool match = true;
            for (size_t j = 0; j < deps.size(); ++j)
                if (v[deps[j]] != o[j]) { match = false; break; }
            if (!match) continue;
            Vec w = v;
            for (size_t j = 0; j < deps.size(); ++j) w[deps[j]] = n[j];
            out.insert(w);
        }
    }
    return out;
}

VecSet brute_prev(const VecSet& targets, uint32_t width, uint32_t domain,
                  const std::vector<uint32_t>& deps,
                  const std::set<std::pair<Vec, Vec>>& pairs) {
    // inverse image over the full domain universe
    VecSet out;
    Vec v(width, 0);
    while (true) {
        VecSet singleton{v};
        auto img = brute_next(singleton, deps, pairs);
        for (const auto& w : img)
            if (targets.count(w)) { out.insert(v); break; }
        size_t i = 0;
        for (; i < v.size(); ++i) {
            if (++v[i] < domain) break;
            v[i] = 0;
        }
        if (i == v.size()) break;
    }
    return out;
}

}  // namespace

TEST_CASE("rel_next and rel_prev against enumeration oracle") {
    std::mt19937 rng(23);
    for (int iter = 0; iter < 40; ++iter) {
        NodeStore st;
        uint32_t width = 4, domain = 3;
        std::vector<uint32_t> deps;
        for (uint32_t i = 0; i < width; ++i)
            if (rng() % 2) deps.push_back(i);
        if (deps.empty()) deps.push_back(rng() % width);

        GroupRelation r(st, deps);
        std::set<std::pair<Vec, Vec>> pairs;
        for (int i = 0; i < 12; ++i) {
            Vec o = random_vec(rng, uint32_t(deps.size()), domain);
            Vec n = random_vec(rng, uint32_t(deps.size()), domain);
            pairs.insert({o, n});
            r = rel_insert(r, o, n);
        }

        VecSet vs;
        for (int i = 0; i < 25; ++i) vs.insert(random_vec(rng, width, domain));
        auto s = build(st, width, vs);

        REQUIRE(to_set(rel_next(s, r)) == brute_next(vs, deps, pairs));
        REQUIRE(to_set(rel_prev(s, r)) == brute_prev(vs, width, domain, deps, pairs));
    }
}

TEST_CASE("rel_prev of rel_next covers the source when a transition exists") {
    std::mt19937 rng(29);
    NodeStore st;
    GroupRelation r(st, {0, 2});
    for (int i = 0; i < 8; ++i)
        r = rel_insert(r, random_vec(rng, 2, 3), random_vec(rng, 2, 3));
    for (int i = 0; i < 50; ++i) {
        Vec v = random_vec(rng, 3, 3);
        MddSet s(st, 3);
        s = set_insert(s, v);
        auto img = rel_next(s, r);
        if (img.empty()) continue;
        auto back = rel_prev(img, r);
        REQUIRE(set_contains(back, v));
    }
}

TEST_CASE("projection matches brute-force projection") {
    std::mt19937 rng(31);
    NodeStore st;
    for (int iter = 0; iter < 30; ++iter) {
        VecSet vs;
        for (int i = 0; i < 40; ++i) vs.insert(random_vec(rng, 5, 3));
        auto s = build(st, 5, vs);
        std::vector<uint32_t> deps;
        for (uint32_t i = 0; i < 5; ++i)
            if (rng() % 2) deps.push_back(i);
        if (deps.empty()) deps.push_back(0);
        uint32_t deps_id = st.intern_deps(deps);

        VecSet expect;
        for (const auto& v : vs) {
            Vec p;
            for (auto d : deps) p.push_back(v[d]);
            expect.insert(p);
        }
        REQUIRE(to_set(set_project(s, deps_id)) == expect);
    }
}

TEST_CASE("select0 restricts on the first slot") {
    NodeStore st;
    MddSet s(st, 2);
    s = set_insert(s, {0, 1});
    s = set_insert(s, {1, 2});
    s = set_insert(s, {1, 3});
    auto sel = set_select0(s, 1);
    REQUIRE(to_set(sel) == VecSet{{1, 2}, {1, 3}});
    REQUIRE(set_select0(s, 9).empty());
}

TEST_CASE("width-0 sets behave as booleans") {
    NodeStore st;
    MddSet empty(st, 0);
    auto unit = set_insert(empty, {});
    REQUIRE(unit.root == NodeStore::kTrue);
    REQUIRE(set_count(unit) == 1);
    REQUIRE(set_union(unit, empty).root == NodeStore::kTrue);
    REQUIRE(set_difference(unit, unit).empty());
}

TEST_CASE("dump_set prints sorted space-separated lines") {
    NodeStore st;
    MddSet s(st, 2);
    s = set_insert(s, {1, 0});
    s = set_insert(s, {0, 1});
    REQUIRE(dump_set(s) == "0 1\n1 0\n");
}
