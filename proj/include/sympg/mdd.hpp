#pragma once

// Multi-valued decision diagrams in list-of-children form.
//
// A node (slot, value, down, right) represents "slot == value, continue with
// down, or try the next value via right". Sibling chains are strictly ordered
// by value, no node has a FALSE down edge, and nodes are hash-consed, so two
// sets are equal iff their root ids are equal. Sets hold fixed-width integer
// vectors; relations hold interleaved old/new pairs over a subset of slots
// (short vectors) and copy all other slots implicitly on application.

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace sympg {

using big_uint = boost::multiprecision::cpp_int;

class mdd_error : public std::runtime_error {
public:
    explicit mdd_error(const std::string& what) : std::runtime_error(what) {}
};

struct MddNode {
    uint32_t slot;
    uint32_t value;
    uint32_t down;
    uint32_t right;

    bool operator==(const MddNode& o) const {
        return slot == o.slot && value == o.value && down == o.down && right == o.right;
    }
};

struct MddNodeHash {
    size_t operator()(const MddNode& n) const {
        uint64_t h = 0x9e3779b97f4a7c15ull;
        auto mix = [&h](uint64_t v) {
            h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        };
        mix((uint64_t(n.slot) << 32) | n.value);
        mix((uint64_t(n.down) << 32) | n.right);
        return size_t(h);
    }
};

class NodeStore {
public:
    static constexpr uint32_t kFalse = 0;
    static constexpr uint32_t kTrue = 1;

    NodeStore() {
        // ids 0 and 1 are the terminals; the arena entries are placeholders
        arena_.push_back({UINT32_MAX, 0, 0, 0});
        arena_.push_back({UINT32_MAX, 0, 0, 0});
    }

    NodeStore(const NodeStore&) = delete;
    NodeStore& operator=(const NodeStore&) = delete;

    const MddNode& node(uint32_t id) const { return arena_[id]; }
    bool terminal(uint32_t id) const { return id <= kTrue; }
    size_t arena_size() const { return arena_.size(); }

    // Hash-consing constructor; applies the down=FALSE reduction rule.
    uint32_t make(uint32_t slot, uint32_t value, uint32_t down, uint32_t right) {
        if (down == kFalse) return right;
        assert(right == kFalse || (arena_[right].slot == slot && arena_[right].value > value));
        MddNode n{slot, value, down, right};
        auto it = unique_.find(n);
        if (it != unique_.end()) return it->second;
        if (arena_.size() >= UINT32_MAX)
            throw mdd_error("node arena exhausted");
        uint32_t id = uint32_t(arena_.size());
        arena_.push_back(n);
        unique_.emplace(n, id);
        return id;
    }

    // --- vector insertion ---------------------------------------------------

    uint32_t insert_vector(uint32_t root, const std::vector<uint32_t>& v) {
        return insert_rec(root, v, 0);
    }

    bool contains(uint32_t root, const std::vector<uint32_t>& v) const {
        uint32_t n = root;
        for (size_t i = 0; i < v.size(); ++i) {
            while (n != kFalse && !terminal(n) && arena_[n].value < v[i]) n = arena_[n].right;
            if (n == kFalse || terminal(n) || arena_[n].value != v[i]) return false;
            n = arena_[n].down;
        }
        return n == kTrue;
    }

    // --- set algebra ----------------------------------------------------------

    uint32_t op_union(uint32_t a, uint32_t b) {
        if (a == b || b == kFalse) return a;
        if (a == kFalse) return b;
        if (a == kTrue) return kTrue;  // b == kTrue as well for equal widths
        if (a > b) std::swap(a, b);
        OpKey k{op_code(Op::Union), a, b};
        if (auto it = cache_.find(k); it != cache_.end()) return it->second;
        const MddNode na = arena_[a];
        const MddNode nb = arena_[b];
        uint32_t res;
        if (na.value < nb.value)
            res = make(na.slot, na.value, na.down, op_union(na.right, b));
        else if (na.value > nb.value)
            res = make(nb.slot, nb.value, nb.down, op_union(a, nb.right));
        else
            res = make(na.slot, na.value, op_union(na.down, nb.down), op_union(na.right, nb.right));
        cache_.emplace(k, res);
        return res;
    }

    uint32_t op_intersect(uint32_t a, uint32_t b) {
        if (a == b) return a;
        if (a == kFalse || b == kFalse) return kFalse;
        if (a == kTrue || b == kTrue) return kTrue;  // only when both terminal
        if (a > b) std::swap(a, b);
        OpKey k{op_code(Op::Intersect), a, b};
        if (auto it = cache_.find(k); it != cache_.end()) return it->second;
        const MddNode na = arena_[a];
        const MddNode nb = arena_[b];
        uint32_t res;
        if (na.value < nb.value)
            res = op_intersect(na.right, b);
        else if (na.value > nb.value)
            res = op_intersect(a, nb.right);
        else
            res = make(na.slot, na.value, op_intersect(na.down, nb.down),
                       op_intersect(na.right, nb.right));
        cache_.emplace(k, res);
        return res;
    }

    uint32_t op_difference(uint32_t a, uint32_t b) {
        if (a == b || a == kFalse) return kFalse;
        if (b == kFalse) return a;
        if (a == kTrue) return kFalse;  // b == kTrue
        OpKey k{op_code(Op::Difference), a, b};
        if (auto it = cache_.find(k); it != cache_.end()) return it->second;
        const MddNode na = arena_[a];
        const MddNode nb = arena_[b];
        uint32_t res;
        if (na.value < nb.value)
            res = make(na.slot, na.value, na.down, op_difference(na.right, b));
        else if (na.value > nb.value)
            res = op_difference(a, nb.right);
        else
            res = make(na.slot, na.value, op_difference(na.down, nb.down),
                       op_difference(na.right, nb.right));
        cache_.emplace(k, res);
        return res;
    }

    // --- counting and enumeration ----------------------------------------------

    big_uint count(uint32_t id) {
        if (id == kFalse) return 0;
        if (id == kTrue) return 1;
        auto it = count_cache_.find(id);
        if (it != count_cache_.end()) return it->second;
        big_uint c = count(arena_[id].down) + count(arena_[id].right);
        count_cache_.emplace(id, c);
        return c;
    }

    void enumerate(uint32_t root, size_t limit,
                   std::vector<std::vector<uint32_t>>& out) const {
        std::vector<uint32_t> prefix;
        enum_rec(root, limit, prefix, out);
    }

    // Number of distinct internal nodes reachable from root.
    uint64_t node_count(uint32_t root) const {
        if (terminal(root)) return 0;
        std::vector<uint32_t> stack{root};
        std::unordered_map<uint32_t, bool> seen;
        seen.emplace(root, true);
        uint64_t n = 0;
        while (!stack.empty()) {
            uint32_t id = stack.back();
            stack.pop_back();
            ++n;
            for (uint32_t next : {arena_[id].down, arena_[id].right}) {
                if (!terminal(next) && seen.emplace(next, true).second)
                    stack.push_back(next);
            }
        }
        return n;
    }

    // --- dependency-slot interning (for projections and relations) -------------

    uint32_t intern_deps(const std::vector<uint32_t>& deps) {
        for (size_t i = 1; i < deps.size(); ++i)
            if (deps[i - 1] >= deps[i]) throw mdd_error("dependency slots must be strictly increasing");
        auto it = deps_index_.find(deps);
        if (it != deps_index_.end()) return it->second;
        uint32_t id = uint32_t(deps_.size());
        if (id >= (1u << 24)) throw mdd_error("too many distinct dependency signatures");
        deps_.push_back(deps);
        deps_index_.emplace(deps, id);
        return id;
    }

    const std::vector<uint32_t>& deps(uint32_t deps_id) const { return deps_[deps_id]; }

    // Projection of a set onto the given slots; the result uses slot indices
    // 0..|deps|-1 in its own coordinate space.
    uint32_t project(uint32_t root, uint32_t deps_id) {
        return project_rec(root, deps_[deps_id], 0, deps_id);
    }

    // Restriction of a set to vectors whose slot-0 entry equals value.
    uint32_t select0(uint32_t root, uint32_t value) {
        if (terminal(root)) return kFalse;
        uint32_t n = root;
        while (n != kFalse && arena_[n].value < value) n = arena_[n].right;
        if (n == kFalse || arena_[n].value != value) return kFalse;
        return make(arena_[n].slot, value, arena_[n].down, kFalse);
    }

    // --- relational product -----------------------------------------------------

    // Relation vectors interleave old/new values over deps: level 2j holds the
    // old value of slot deps[j], level 2j+1 the new one.
    uint32_t rel_next(uint32_t set, uint32_t rel, uint32_t deps_id) {
        return next_rec(set, rel, deps_[deps_id], deps_id);
    }

    uint32_t rel_prev(uint32_t set, uint32_t rel, uint32_t deps_id) {
        return prev_rec(set, rel, deps_[deps_id], deps_id);
    }

private:
    enum class Op : uint8_t {
        Union = 1, Intersect, Difference, Project, Next, NextMap, Prev, PrevMatch
    };

    struct OpKey {
        uint32_t op;
        uint32_t a;
        uint32_t b;
        bool operator==(const OpKey& o) const { return op == o.op && a == o.a && b == o.b; }
    };
    struct OpKeyHash {
        size_t operator()(const OpKey& k) const {
            uint64_t h = k.op;
            h = h * 0x100000001b3ull ^ k.a;
            h = h * 0x100000001b3ull ^ k.b;
            h *= 0xc2b2ae3d27d4eb4full;
            return size_t(h ^ (h >> 29));
        }
    };

    static uint32_t op_code(Op op, uint32_t deps_id = 0) {
        return (uint32_t(op) << 24) | deps_id;
    }

    uint32_t insert_rec(uint32_t n, const std::vector<uint32_t>& v, size_t i) {
        if (i == v.size()) return kTrue;
        if (n == kFalse || arena_[n].value > v[i])
            return make(uint32_t(i), v[i], insert_rec(kFalse, v, i + 1), n);
        const MddNode nd = arena_[n];
        if (nd.value == v[i])
            return make(nd.slot, nd.value, insert_rec(nd.down, v, i + 1), nd.right);
        return make(nd.slot, nd.value, nd.down, insert_rec(nd.right, v, i));
    }

    void enum_rec(uint32_t n, size_t limit, std::vector<uint32_t>& prefix,
                  std::vector<std::vector<uint32_t>>& out) const {
        if (out.size() >= limit || n == kFalse) return;
        if (n == kTrue) {
            out.push_back(prefix);
            return;
        }
        const MddNode nd = arena_[n];
        prefix.push_back(nd.value);
        enum_rec(nd.down, limit, prefix, out);
        prefix.pop_back();
        enum_rec(nd.right, limit, prefix, out);
    }

    uint32_t project_rec(uint32_t n, const std::vector<uint32_t>& ds, size_t j,
                         uint32_t deps_id) {
        if (n == kFalse) return kFalse;
        if (j == ds.size()) return kTrue;  // reducedness: nonempty below here
        assert(n != kTrue);
        OpKey k{op_code(Op::Project, deps_id), n, 0};
        if (auto it = cache_.find(k); it != cache_.end()) return it->second;
        const MddNode nd = arena_[n];
        uint32_t res;
        if (nd.slot < ds[j]) {
            // dropped slot: merge the children of the whole sibling chain
            res = op_union(project_rec(nd.down, ds, j, deps_id),
                           project_rec(nd.right, ds, j, deps_id));
        } else {
            assert(nd.slot == ds[j]);
            res = make(uint32_t(j), nd.value, project_rec(nd.down, ds, j + 1, deps_id),
                       project_rec(nd.right, ds, j, deps_id));
        }
        cache_.emplace(k, res);
        return res;
    }

    uint32_t next_rec(uint32_t s, uint32_t r, const std::vector<uint32_t>& ds,
                      uint32_t deps_id) {
        if (s == kFalse || r == kFalse) return kFalse;
        if (r == kTrue) return s;  // remaining slots are copied unchanged
        assert(s != kTrue);
        OpKey k{op_code(Op::Next, deps_id), s, r};
        if (auto it = cache_.find(k); it != cache_.end()) return it->second;
        const MddNode sn = arena_[s];
        const MddNode rn = arena_[r];
        size_t j = rn.slot / 2;
        uint32_t res;
        if (sn.slot < ds[j]) {
            res = make(sn.slot, sn.value, next_rec(sn.down, r, ds, deps_id),
                       next_rec(sn.right, r, ds, deps_id));
        } else if (sn.value < rn.value) {
            res = next_rec(sn.right, r, ds, deps_id);
        } else if (sn.value > rn.value) {
            res = next_rec(s, rn.right, ds, deps_id);
        } else {
            // matched old value: fan out over the new values, then try other olds
            uint32_t mapped = next_map(sn.down, rn.down, ds, deps_id);
            res = op_union(mapped, next_rec(sn.right, rn.right, ds, deps_id));
        }
        cache_.emplace(k, res);
        return res;
    }

    // Builds the output chain over the relation's new values at level 2j+1.
    uint32_t next_map(uint32_t sdown, uint32_t rnew, const std::vector<uint32_t>& ds,
                      uint32_t deps_id) {
        if (rnew == kFalse) return kFalse;
        OpKey k{op_code(Op::NextMap, deps_id), sdown, rnew};
        if (auto it = cache_.find(k); it != cache_.end()) return it->second;
        const MddNode rn = arena_[rnew];
        size_t j = rn.slot / 2;
        uint32_t child = next_rec(sdown, rn.down, ds, deps_id);
        uint32_t res = make(ds[j], rn.value, child, next_map(sdown, rn.right, ds, deps_id));
        cache_.emplace(k, res);
        return res;
    }

    uint32_t prev_rec(uint32_t s, uint32_t r, const std::vector<uint32_t>& ds,
                      uint32_t deps_id) {
        if (s == kFalse || r == kFalse) return kFalse;
        if (r == kTrue) return s;  // suffix must coincide with the target suffix
        assert(s != kTrue);
        OpKey k{op_code(Op::Prev, deps_id), s, r};
        if (auto it = cache_.find(k); it != cache_.end()) return it->second;
        const MddNode sn = arena_[s];
        const MddNode rn = arena_[r];
        size_t j = rn.slot / 2;
        uint32_t res;
        if (sn.slot < ds[j]) {
            res = make(sn.slot, sn.value, prev_rec(sn.down, r, ds, deps_id),
                       prev_rec(sn.right, r, ds, deps_id));
        } else {
            // chain over the relation's old values, each matched against targets
            uint32_t down = prev_match(rn.down, s, ds, deps_id);
            res = make(ds[j], rn.value, down, prev_rec(s, rn.right, ds, deps_id));
        }
        cache_.emplace(k, res);
        return res;
    }

    // Intersects the relation's new-value chain with the target set's chain.
    uint32_t prev_match(uint32_t rnew, uint32_t schain, const std::vector<uint32_t>& ds,
                        uint32_t deps_id) {
        if (rnew == kFalse || schain == kFalse) return kFalse;
        OpKey k{op_code(Op::PrevMatch, deps_id), rnew, schain};
        if (auto it = cache_.find(k); it != cache_.end()) return it->second;
        const MddNode rn = arena_[rnew];
        const MddNode sn = arena_[schain];
        uint32_t res;
        if (rn.value < sn.value)
            res = prev_match(rn.right, schain, ds, deps_id);
        else if (rn.value > sn.value)
            res = prev_match(rnew, sn.right, ds, deps_id);
        else
            res = op_union(prev_rec(sn.down, rn.down, ds, deps_id),
                           prev_match(rn.right, sn.right, ds, deps_id));
        cache_.emplace(k, res);
        return res;
    }

    std::vector<MddNode> arena_;
    std::unordered_map<MddNode, uint32_t, MddNodeHash> unique_;
    std::unordered_map<OpKey, uint32_t, OpKeyHash> cache_;
    std::unordered_map<uint32_t, big_uint> count_cache_;
    std::vector<std::vector<uint32_t>> deps_;
    std::map<std::vector<uint32_t>, uint32_t> deps_index_;
};

// Value-semantics handle for a set of fixed-width vectors in one store.
struct MddSet {
    NodeStore* store = nullptr;
    uint32_t root = NodeStore::kFalse;
    uint32_t width = 0;

    MddSet() = default;
    MddSet(NodeStore& s, uint32_t w) : store(&s), root(NodeStore::kFalse), width(w) {}
    MddSet(NodeStore& s, uint32_t r, uint32_t w) : store(&s), root(r), width(w) {}

    bool empty() const { return root == NodeStore::kFalse; }
    bool operator==(const MddSet& o) const { return root == o.root && width == o.width; }
};

inline MddSet set_insert(const MddSet& s, const std::vector<uint32_t>& v) {
    if (v.size() != s.width)
        throw mdd_error("set_insert: vector width " + std::to_string(v.size()) +
                        " does not match set width " + std::to_string(s.width));
    return {*s.store, s.store->insert_vector(s.root, v), s.width};
}

inline bool set_contains(const MddSet& s, const std::vector<uint32_t>& v) {
    return v.size() == s.width && s.store->contains(s.root, v);
}

enum class SetOp { Union, Intersect, Difference };

inline MddSet set_combine(SetOp mode, const MddSet& a, const MddSet& b) {
    if (a.width != b.width)
        throw mdd_error("set_combine: width mismatch (" + std::to_string(a.width) +
                        " vs " + std::to_string(b.width) + ")");
    assert(a.store == b.store);
    uint32_t r;
    switch (mode) {
        case SetOp::Union: r = a.store->op_union(a.root, b.root); break;
        case SetOp::Intersect: r = a.store->op_intersect(a.root, b.root); break;
        default: r = a.store->op_difference(a.root, b.root); break;
    }
    return {*a.store, r, a.width};
}

inline MddSet set_union(const MddSet& a, const MddSet& b) { return set_combine(SetOp::Union, a, b); }
inline MddSet set_intersect(const MddSet& a, const MddSet& b) { return set_combine(SetOp::Intersect, a, b); }
inline MddSet set_difference(const MddSet& a, const MddSet& b) { return set_combine(SetOp::Difference, a, b); }

inline big_uint set_count(const MddSet& s) { return s.store->count(s.root); }

inline std::vector<std::vector<uint32_t>> set_enumerate(const MddSet& s, size_t limit) {
    std::vector<std::vector<uint32_t>> out;
    s.store->enumerate(s.root, limit, out);
    return out;
}

// Projection onto an increasing slot list; result lives in a width-|deps| space.
inline MddSet set_project(const MddSet& s, uint32_t deps_id) {
    const auto& ds = s.store->deps(deps_id);
    if (!ds.empty() && ds.back() >= s.width)
        throw mdd_error("set_project: slot out of range");
    return {*s.store, s.store->project(s.root, deps_id), uint32_t(ds.size())};
}

inline MddSet set_select0(const MddSet& s, uint32_t value) {
    return {*s.store, s.store->select0(s.root, value), s.width};
}

// Debug dump: one sorted vector per line, values space-separated.
inline std::string dump_set(const MddSet& s, size_t limit = SIZE_MAX) {
    std::ostringstream os;
    for (const auto& v : set_enumerate(s, limit)) {
        for (size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
        os << "\n";
    }
    return os.str();
}

// Relation over the dependent slots of one transition group.
struct GroupRelation {
    NodeStore* store = nullptr;
    std::vector<uint32_t> deps;
    uint32_t deps_id = 0;
    uint32_t root = NodeStore::kFalse;

    GroupRelation() = default;
    GroupRelation(NodeStore& s, std::vector<uint32_t> dep_slots)
        : store(&s), deps(std::move(dep_slots)), deps_id(s.intern_deps(deps)) {}
};

inline GroupRelation rel_insert(const GroupRelation& r, const std::vector<uint32_t>& oldv,
                                const std::vector<uint32_t>& newv) {
    if (oldv.size() != r.deps.size() || newv.size() != r.deps.size())
        throw mdd_error("rel_insert: short-vector length does not match dependency count");
    std::vector<uint32_t> interleaved(2 * r.deps.size());
    for (size_t j = 0; j < r.deps.size(); ++j) {
        interleaved[2 * j] = oldv[j];
        interleaved[2 * j + 1] = newv[j];
    }
    GroupRelation out = r;
    out.root = r.store->insert_vector(r.root, interleaved);
    return out;
}

inline MddSet rel_next(const MddSet& s, const GroupRelation& r) {
    if (!r.deps.empty() && r.deps.back() >= s.width)
        throw mdd_error("rel_next: set too narrow for relation");
    assert(s.store == r.store);
    return {*s.store, s.store->rel_next(s.root, r.root, r.deps_id), s.width};
}

inline MddSet rel_prev(const MddSet& s, const GroupRelation& r) {
    if (!r.deps.empty() && r.deps.back() >= s.width)
        throw mdd_error("rel_prev: set too narrow for relation");
    assert(s.store == r.store);
    return {*s.store, s.store->rel_prev(s.root, r.root, r.deps_id), s.width};
}

}  // namespace sympg
