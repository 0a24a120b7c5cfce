#pragma once

// Symbolic parity game solving: Zielonka's recursive algorithm over the
// partitioned relation. Attractors use the predecessor function, which
// applies the group relations in their fixed order and intersects with the
// current subgame. Subgames are vertex-set masks; relations are never
// rebuilt. The recursion runs on an explicit stack, so nesting depth is
// bounded by memory and not the platform stack.
//
// Games are totalized first: every stuck vertex gains an edge to a trap sink
// whose self-loop priority makes the stuck owner lose, which is exactly the
// finite-play rule.

#include <vector>

#include <sympg/explicit_game.hpp>
#include <sympg/game.hpp>

namespace sympg {

struct WinningSets {
    MddSet eloise;
    MddSet abelard;
};

// Union over groups of rel_prev, restricted to the game's vertex set by the
// caller where needed.
inline MddSet predecessors(const SymbolicParityGame& g, const MddSet& targets) {
    MddSet out(*g.store, g.layout.width());
    for (const auto& r : g.relations) out = set_union(out, rel_prev(targets, r));
    return out;
}

// --- totalization ------------------------------------------------------------------

// Adds two trap vertices families: an even-priority one that stuck Abelard
// vertices are routed to, an odd-priority one for stuck Eloise vertices.
// Traps self-loop. Routing uses one extra slot-0 group when stuckness is
// determined by the predicate variable (always the case for instantiated and
// imported games); other stuck states are routed through a full-width group.
inline SymbolicParityGame totalize(const SymbolicParityGame& game) {
    SymbolicParityGame g = game;
    NodeStore& store = *g.store;
    const uint32_t width = g.layout.width();

    MddSet has_succ(store, width);
    for (const auto& r : g.relations)
        has_succ = set_union(has_succ, set_intersect(rel_prev(g.vertices, r), g.vertices));
    MddSet stuck = set_difference(g.vertices, has_succ);

    uint32_t trap_even = uint32_t(g.vars.size());
    g.vars.push_back(VarInfo{"@trap0", kAbelard, 0, false});
    uint32_t trap_odd = uint32_t(g.vars.size());
    g.vars.push_back(VarInfo{"@trap1", kEloise, 1, false});

    GroupRelation route(store, {0});
    route = rel_insert(route, {trap_even}, {trap_even});
    route = rel_insert(route, {trap_odd}, {trap_odd});

    std::vector<uint32_t> full_slots(width);
    for (uint32_t i = 0; i < width; ++i) full_slots[i] = i;
    GroupRelation route_full(store, full_slots);
    bool need_full = false;

    for (uint32_t code = 0; code + 2 < g.vars.size(); ++code) {
        MddSet stuck_c = set_select0(stuck, code);
        if (stuck_c.empty()) continue;
        uint32_t trap = g.vars[code].owner == kAbelard ? trap_even : trap_odd;
        MddSet all_c = set_select0(g.vertices, code);
        if (stuck_c.root == all_c.root) {
            route = rel_insert(route, {code}, {trap});
        } else {
            auto vectors = set_enumerate(stuck_c, 1u << 20);
            if (set_count(stuck_c) > big_uint(1u << 20))
                throw resource_error("too many individually stuck states to totalize");
            for (auto v : vectors) {
                std::vector<uint32_t> t = v;
                t[0] = trap;
                route_full = rel_insert(route_full, v, t);
            }
            need_full = true;
        }
    }

    TransitionGroup tg;
    tg.id = int(g.groups.size() + 1);
    tg.eq = -1;
    tg.name = "@totalize";
    tg.deps = {0};
    g.groups.push_back(tg);
    g.relations.push_back(route);
    if (need_full) {
        TransitionGroup tf = tg;
        tf.id++;
        tf.name = "@totalize.full";
        tf.deps = full_slots;
        g.groups.push_back(tf);
        g.relations.push_back(route_full);
    }

    // materialize the trap vertices that are actually reachable
    MddSet traps = rel_next(stuck, route);
    if (need_full) traps = set_union(traps, rel_next(stuck, route_full));
    g.vertices = set_union(g.vertices, traps);
    auto register_trap = [&g, &traps](uint32_t code, int owner, int prio) {
        MddSet sel = set_select0(traps, code);
        if (sel.empty()) return;
        g.owned[owner] = set_union(g.owned[owner], sel);
        for (auto& [k, s] : g.by_priority)
            if (k == prio) {
                s = set_union(s, sel);
                return;
            }
        g.by_priority.emplace_back(prio, sel);
        std::sort(g.by_priority.begin(), g.by_priority.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
    };
    register_trap(trap_even, kAbelard, 0);
    register_trap(trap_odd, kEloise, 1);
    return g;
}

// --- attractor -----------------------------------------------------------------------

// Least fixpoint A containing targets with: player vertices that can step
// into A, and opponent vertices that cannot avoid A, within subgame U.
inline MddSet attractor(const SymbolicParityGame& g, int player, const MddSet& targets,
                        const MddSet& sub) {
    MddSet a = set_intersect(targets, sub);
    MddSet mine = set_intersect(g.owned[player], sub);
    MddSet theirs = set_intersect(g.owned[1 - player], sub);
    for (;;) {
        MddSet can_enter = set_intersect(mine, predecessors(g, a));
        MddSet escape = predecessors(g, set_difference(sub, a));
        MddSet forced = set_difference(theirs, escape);
        MddSet next = set_union(a, set_union(can_enter, forced));
        if (next.root == a.root) return a;
        a = next;
    }
}

// --- Zielonka --------------------------------------------------------------------------

inline WinningSets zielonka(const SymbolicParityGame& g) {
    const uint32_t width = g.layout.width();
    MddSet empty(*g.store, width);

    struct Frame {
        MddSet sub;
        int phase = 0;
        int player = 0;
        MddSet removed;  // A, then B
    };

    WinningSets result{empty, empty};
    std::vector<Frame> stack;
    stack.push_back(Frame{g.vertices, 0, 0, empty});

    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.sub.empty()) {
            result = WinningSets{empty, empty};
            stack.pop_back();
            continue;
        }
        if (f.phase == 0) {
            int d = -1;
            MddSet n = empty;
            for (const auto& [prio, s] : g.by_priority) {
                MddSet present = set_intersect(s, f.sub);
                if (!present.empty()) {
                    d = prio;
                    n = present;
                    break;
                }
            }
            f.player = d % 2 == 0 ? kEloise : kAbelard;
            f.removed = attractor(g, f.player, n, f.sub);
            f.phase = 1;
            stack.push_back(Frame{set_difference(f.sub, f.removed), 0, 0, empty});
            continue;
        }
        if (f.phase == 1) {
            MddSet w_opp = f.player == kEloise ? result.abelard : result.eloise;
            if (w_opp.empty()) {
                WinningSets r{empty, empty};
                (f.player == kEloise ? r.eloise : r.abelard) = f.sub;
                result = r;
                stack.pop_back();
                continue;
            }
            f.removed = attractor(g, 1 - f.player, w_opp, f.sub);
            f.phase = 2;
            stack.push_back(Frame{set_difference(f.sub, f.removed), 0, 0, empty});
            continue;
        }
        // phase 2: attractor B joins the opponent's region
        if (f.player == kEloise) result.abelard = set_union(result.abelard, f.removed);
        else result.eloise = set_union(result.eloise, f.removed);
        stack.pop_back();
    }
    return result;
}

inline int winner(const SymbolicParityGame& g, const WinningSets& w) {
    if (set_contains(w.eloise, g.initial)) return kEloise;
    if (set_contains(w.abelard, g.initial)) return kAbelard;
    throw std::logic_error("initial vertex in neither winning set");
}

// --- importing explicit games -------------------------------------------------------

// Width-1 symbolic form of an explicit game: one slot holding the vertex id,
// edges distributed round-robin over `num_groups` slot-0 relations.
inline SymbolicParityGame import_explicit(NodeStore& store, const ExplicitGame& e,
                                          int num_groups = 2) {
    SymbolicParityGame g;
    g.store = &store;
    g.layout.slot_names = {"Var"};
    g.layout.slot_sorts = {-1};
    g.layout.tables.resize(1);
    if (num_groups < 1) num_groups = 1;

    g.vertices = MddSet(store, 1);
    g.owned[0] = MddSet(store, 1);
    g.owned[1] = MddSet(store, 1);
    for (uint32_t id = 0; id < e.v.size(); ++id) {
        const ExVertex& u = e.v[id];
        g.vars.push_back(VarInfo{"v" + std::to_string(id), u.owner, u.priority, false});
        g.vertices = set_insert(g.vertices, {id});
        g.owned[u.owner] = set_insert(g.owned[u.owner], {id});
        bool found = false;
        for (auto& [k, s] : g.by_priority)
            if (k == u.priority) { s = set_insert(s, {id}); found = true; }
        if (!found) {
            MddSet s(store, 1);
            s = set_insert(s, {id});
            g.by_priority.emplace_back(u.priority, s);
        }
    }
    std::sort(g.by_priority.begin(), g.by_priority.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    for (int k = 0; k < num_groups; ++k) {
        TransitionGroup tg;
        tg.id = k + 1;
        tg.eq = -1;
        tg.name = "edges." + std::to_string(k + 1);
        tg.deps = {0};
        g.groups.push_back(tg);
        g.relations.emplace_back(store, std::vector<uint32_t>{0});
    }
    for (uint32_t id = 0; id < e.v.size(); ++id)
        for (uint32_t w : e.v[id].succ)
            g.relations[id % size_t(num_groups)] =
                rel_insert(g.relations[id % size_t(num_groups)], {id}, {w});

    g.initial = {e.initial};
    g.true_sink = UINT32_MAX;
    g.false_sink = UINT32_MAX;
    return g;
}

// --- explicit export -------------------------------------------------------------------

// PGSolver text for a symbolic game; ids follow enumeration order. Groups
// are filtered by the source equation where possible, sinks and imported
// vertices try every group.
inline ExplicitGame export_explicit(const SymbolicParityGame& g, size_t cap = 1u << 20) {
    if (set_count(g.vertices) > big_uint(cap))
        throw resource_error("explicit export cap exceeded");
    auto vectors = set_enumerate(g.vertices, cap);
    ExplicitGame out;
    out.v.resize(vectors.size());

    std::unordered_map<std::string, uint32_t> index;
    auto key = [](const std::vector<uint32_t>& v) {
        std::string k;
        for (auto x : v) {
            k.append(reinterpret_cast<const char*>(&x), sizeof(x));
        }
        return k;
    };
    for (uint32_t i = 0; i < vectors.size(); ++i) index.emplace(key(vectors[i]), i);

    for (uint32_t i = 0; i < vectors.size(); ++i) {
        const auto& v = vectors[i];
        const VarInfo& vi = g.vars[v[0]];
        ExVertex& u = out.v[i];
        u.priority = vi.priority;
        u.owner = vi.owner;
        u.label = g.decode_label(v);
        MddSet single(*g.store, g.layout.width());
        single = set_insert(single, v);
        for (size_t gi = 0; gi < g.relations.size(); ++gi) {
            if (g.groups[gi].eq >= 0 && g.groups[gi].eq != int(v[0])) continue;
            MddSet img = set_intersect(rel_next(single, g.relations[gi]), g.vertices);
            for (const auto& w : set_enumerate(img, cap)) u.succ.push_back(index.at(key(w)));
        }
        std::sort(u.succ.begin(), u.succ.end());
        u.succ.erase(std::unique(u.succ.begin(), u.succ.end()), u.succ.end());
    }
    out.initial = index.at(key(g.initial));
    return out;
}

}  // namespace sympg
